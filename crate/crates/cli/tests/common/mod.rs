#![allow(dead_code)]

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use stochwave_core::export::{read_csv, CsvTable};

static COUNTER: AtomicUsize = AtomicUsize::new(0);

/// Fresh empty directory under the system temp dir.
pub fn scratch(tag: &str) -> PathBuf {
    let n = COUNTER.fetch_add(1, Ordering::SeqCst);
    let dir = std::env::temp_dir().join(format!("stochwave-{tag}-{}-{n}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Runs the CLI in-process with no seed in the environment.
pub fn run(args: &[&str]) -> i32 {
    let mut v = vec!["stochwave"];
    v.extend_from_slice(args);
    stochwave_cli::run(v, None)
}

pub fn run_env(args: &[&str], env_seed: &str) -> i32 {
    let mut v = vec!["stochwave"];
    v.extend_from_slice(args);
    stochwave_cli::run(v, Some(env_seed.to_string()))
}

pub fn write_config(dir: &Path, json: &str) -> PathBuf {
    let p = dir.join("config.json");
    std::fs::write(&p, json).unwrap();
    p
}

pub fn csv(path: &Path) -> CsvTable {
    read_csv(BufReader::new(File::open(path).unwrap())).unwrap()
}

/// Data lines of a CSV file (comments dropped).
pub fn data_rows(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

pub fn files(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    v.sort();
    v
}

/// Least-squares speed of the `level` crossing in `trajectory.csv`, using
/// snapshots at `t >= t_min`.
pub fn front_speed(path: &Path, x_min: f64, x_max: f64, n: usize, level: f64, t_min: f64) -> f64 {
    use stochwave_core::diagnostics::front_position;
    use stochwave_core::stats::ls_slope;
    use stochwave_core::{ScalarField, SpatialGrid};
    let grid = SpatialGrid::far_field(x_min, x_max, n).unwrap();
    let table = csv(path);
    let (t, re) = (table.column("t").unwrap(), table.column("re").unwrap());
    let (mut ts, mut xs) = (Vec::new(), Vec::new());
    for (k, chunk) in re.chunks(n).enumerate() {
        let time = t[k * n];
        if time >= t_min {
            let f = ScalarField::from_real(grid, chunk).unwrap();
            ts.push(time);
            xs.push(front_position(&f, level).unwrap());
        }
    }
    ls_slope(&ts, &xs)
}
