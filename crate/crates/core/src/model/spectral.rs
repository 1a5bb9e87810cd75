//! FFT helpers for periodic grids. Plans are cached per thread.

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

pub(crate) fn forward(buf: &mut [Complex64]) {
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()));
    fft.process(buf);
}

/// Normalised inverse transform.
pub(crate) fn inverse(buf: &mut [Complex64]) {
    let n = buf.len();
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n));
    fft.process(buf);
    let s = 1.0 / n as f64;
    buf.iter_mut().for_each(|v| *v *= s);
}

/// Angular wavenumbers in FFT order for `n` nodes on a period of `length`.
pub(crate) fn wavenumbers(n: usize, length: f64) -> Vec<f64> {
    let base = 2.0 * PI / length;
    (0..n)
        .map(|m| {
            let signed = if m <= (n - 1) / 2 {
                m as f64
            } else if n.is_multiple_of(2) && m == n / 2 {
                // Nyquist: callers decide how to treat it
                -(m as f64)
            } else {
                m as f64 - n as f64
            };
            base * signed
        })
        .collect()
}

pub(crate) fn is_nyquist(n: usize, m: usize) -> bool {
    n.is_multiple_of(2) && m == n / 2
}

/// Fourier symbol of d^order/dx^order, with the Nyquist mode dropped for odd
/// orders so real data stays real.
pub(crate) fn derivative_symbol(n: usize, length: f64, order: u8) -> Vec<Complex64> {
    wavenumbers(n, length)
        .into_iter()
        .enumerate()
        .map(|(m, k)| {
            if order % 2 == 1 && is_nyquist(n, m) {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(0.0, k).powu(order as u32)
            }
        })
        .collect()
}
