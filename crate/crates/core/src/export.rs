//! CSV and binary writers for paths, trajectories, residual reports and
//! ensemble statistics.
//!
//! CSV files are comma separated, numbers in `{:.16e}` (17 significant
//! digits), comment lines start with `#`.

use std::io::{self, BufRead, Read, Write};

use num_complex::Complex64;

use crate::diagnostics::EnsembleStats;
use crate::error::{Error, Result};
use crate::model::{Boundary, ScalarField, SpatialGrid};
use crate::noise::BrownianPath;
use crate::sim::Trajectory;
use crate::verify::ResidualReport;

/// `key: value` pairs written as leading `#` comment lines.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Header {
    entries: Vec<(String, String)>,
}

impl Header {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn write_to(&self, w: &mut impl Write) -> io::Result<()> {
        for (k, v) in &self.entries {
            writeln!(w, "# {k}: {v}")?;
        }
        Ok(())
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn row(w: &mut impl Write, cells: &[String]) -> io::Result<()> {
    writeln!(w, "{}", cells.join(","))
}

/// Columns `t,beta,int_beta`, one row per knot.
pub fn write_path_csv(w: &mut impl Write, header: &Header, p: &BrownianPath) -> Result<()> {
    header.write_to(w)?;
    writeln!(w, "t,beta,int_beta")?;
    for i in 0..=p.n_steps() {
        let q = p.point(i);
        row(w, &[num(q.t), num(q.beta), num(q.int_beta)])?;
    }
    Ok(())
}

/// Columns `t,x,re,im`, snapshot-major.
pub fn write_trajectory_csv(w: &mut impl Write, header: &Header, tr: &Trajectory) -> Result<()> {
    header.write_to(w)?;
    writeln!(w, "t,x,re,im")?;
    let g = tr.grid();
    for (t, f) in tr.times.iter().zip(&tr.fields) {
        for (i, v) in f.values().iter().enumerate() {
            row(w, &[num(*t), num(g.x(i)), num(v.re), num(v.im)])?;
        }
    }
    Ok(())
}

/// One row per refinement level, verdict and fit in the header.
pub fn write_residual_csv(w: &mut impl Write, header: &Header, r: &ResidualReport) -> Result<()> {
    header.write_to(w)?;
    writeln!(w, "# candidate: {}", r.label.name())?;
    writeln!(w, "# expected: {}", r.expected.name())?;
    writeln!(w, "# verdict: {}", r.verdict.name())?;
    writeln!(w, "# fitted_order: {}", num(r.fitted_order))?;
    writeln!(w, "# floor: {}", num(r.floor))?;
    writeln!(w, "# scale: {}", num(r.scale))?;
    writeln!(w, "# path_index: {}", r.path_index)?;
    writeln!(w, "dt,residual_l2,residual_sup")?;
    for l in &r.levels {
        row(w, &[num(l.dt), num(l.residual_l2), num(l.residual_sup)])?;
    }
    Ok(())
}

/// Columns `t,mean,var,M`, followed by `#` trailer lines with the slopes.
pub fn write_ensemble_csv(w: &mut impl Write, header: &Header, s: &EnsembleStats) -> Result<()> {
    header.write_to(w)?;
    writeln!(w, "# observable: {}", s.observable)?;
    writeln!(w, "t,mean,var,M")?;
    for j in 0..s.times.len() {
        row(
            w,
            &[
                num(s.times[j]),
                num(s.mean[j]),
                num(s.var[j]),
                s.n_paths.to_string(),
            ],
        )?;
    }
    writeln!(w, "# mean_slope: {}", num(s.mean_slope))?;
    writeln!(w, "# mean_slope_se: {}", num(s.mean_slope_se))?;
    writeln!(w, "# var_slope: {}", num(s.var_slope))?;
    writeln!(w, "# var_slope_se: {}", num(s.var_slope_se))?;
    writeln!(
        w,
        "# var_rate_band_95: {},{}",
        num(s.var_rate_band.0),
        num(s.var_rate_band.1)
    )?;
    Ok(())
}

/// Parsed CSV: header comments, column names and numeric rows.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CsvTable {
    pub comments: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn comment(&self, key: &str) -> Option<&str> {
        self.comments
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }
}

pub fn read_csv(r: impl BufRead) -> Result<CsvTable> {
    let mut out = CsvTable::default();
    for line in r.lines() {
        let line = line?;
        if let Some(c) = line.strip_prefix('#') {
            let c = c.trim();
            let (k, v) = c.split_once(':').unwrap_or((c, ""));
            out.comments
                .push((k.trim().to_string(), v.trim().to_string()));
        } else if line.trim().is_empty() {
            continue;
        } else if out.columns.is_empty() {
            out.columns = line.split(',').map(|s| s.trim().to_string()).collect();
        } else {
            let vals = line
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Io(format!("bad number `{s}`: {e}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            if vals.len() != out.columns.len() {
                return Err(Error::Io(format!(
                    "row has {} cells, header has {}",
                    vals.len(),
                    out.columns.len()
                )));
            }
            out.rows.push(vals);
        }
    }
    Ok(out)
}

const MAGIC: &[u8; 8] = b"SWTRAJ01";

/// Contents of a binary trajectory dump.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryDump {
    pub model_id: u32,
    pub grid: SpatialGrid,
    pub dt: f64,
    pub seed: u64,
    pub path_index: u64,
    pub times: Vec<f64>,
    pub fields: Vec<ScalarField>,
}

/// Little-endian layout: magic, model id (u32), grid (x_min, x_max f64,
/// n u64, boundary u8), dt f64, seed u64, path index u64, is_real u8,
/// snapshot count u64, then per snapshot `t` and `n` (re, im) pairs.
pub fn write_trajectory_bin(w: &mut impl Write, tr: &Trajectory) -> Result<()> {
    let g = tr.grid();
    let is_real = tr.fields.first().is_none_or(|f| f.is_real());
    w.write_all(MAGIC)?;
    w.write_all(&tr.model.kind.id().to_le_bytes())?;
    w.write_all(&g.x_min().to_le_bytes())?;
    w.write_all(&g.x_max().to_le_bytes())?;
    w.write_all(&(g.len() as u64).to_le_bytes())?;
    w.write_all(&[u8::from(g.is_periodic())])?;
    w.write_all(&tr.stepper.dt.to_le_bytes())?;
    w.write_all(&tr.seed.to_le_bytes())?;
    w.write_all(&tr.path_index.to_le_bytes())?;
    w.write_all(&[u8::from(is_real)])?;
    w.write_all(&(tr.times.len() as u64).to_le_bytes())?;
    for (t, f) in tr.times.iter().zip(&tr.fields) {
        w.write_all(&t.to_le_bytes())?;
        for v in f.values() {
            w.write_all(&v.re.to_le_bytes())?;
            w.write_all(&v.im.to_le_bytes())?;
        }
    }
    Ok(())
}

fn take<const N: usize>(r: &mut impl Read) -> Result<[u8; N]> {
    let mut b = [0u8; N];
    r.read_exact(&mut b)?;
    Ok(b)
}

fn take_f64(r: &mut impl Read) -> Result<f64> {
    Ok(f64::from_le_bytes(take(r)?))
}

fn take_u64(r: &mut impl Read) -> Result<u64> {
    Ok(u64::from_le_bytes(take(r)?))
}

pub fn read_trajectory_bin(r: &mut impl Read) -> Result<TrajectoryDump> {
    if &take::<8>(r)? != MAGIC {
        return Err(Error::Io("not a trajectory dump".into()));
    }
    let model_id = u32::from_le_bytes(take(r)?);
    let (x_min, x_max) = (take_f64(r)?, take_f64(r)?);
    let n = take_u64(r)? as usize;
    let boundary = if take::<1>(r)?[0] == 1 {
        Boundary::Periodic
    } else {
        Boundary::FarField
    };
    let grid = SpatialGrid::new(x_min, x_max, n, boundary)?;
    let dt = take_f64(r)?;
    let seed = take_u64(r)?;
    let path_index = take_u64(r)?;
    let is_real = take::<1>(r)?[0] == 1;
    let k = take_u64(r)? as usize;
    let mut times = Vec::with_capacity(k);
    let mut fields = Vec::with_capacity(k);
    for _ in 0..k {
        times.push(take_f64(r)?);
        let vals = (0..n)
            .map(|_| Ok(Complex64::new(take_f64(r)?, take_f64(r)?)))
            .collect::<Result<Vec<_>>>()?;
        let f = if is_real {
            let re: Vec<f64> = vals.iter().map(|v| v.re).collect();
            ScalarField::from_real(grid, &re)?
        } else {
            ScalarField::from_complex(grid, vals)?
        };
        fields.push(f);
    }
    Ok(TrajectoryDump {
        model_id,
        grid,
        dt,
        seed,
        path_index,
        times,
        fields,
    })
}
