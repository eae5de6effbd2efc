//! Task payoffs: random access codes, two-setting steering, coherence transfer.

pub mod coherence;
pub mod qrac;
pub mod steering;

use crate::error::{Error, Result};
use crate::report::fmt_g12;

/// Bisection tolerance on the parameter.
pub const ROOT_TOL: f64 = 1e-12;

/// Root of a continuous `f` bracketed by `[lo, hi]`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::InvalidParameter(format!(
            "root not bracketed on [{lo}, {hi}]"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Evenly spaced grid `lo, lo+step, ..., hi` (inclusive, rounded to `steps` intervals).
pub fn grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..=steps)
        .map(|k| lo + (hi - lo) * k as f64 / steps as f64)
        .collect()
}

/// Two-column numeric table.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveTable {
    pub x_name: String,
    pub y_name: String,
    pub rows: Vec<(f64, f64)>,
}

impl CurveTable {
    pub fn sample(x_name: &str, y_name: &str, xs: &[f64], f: impl Fn(f64) -> f64) -> Self {
        Self {
            x_name: x_name.into(),
            y_name: y_name.into(),
            rows: xs.iter().map(|&x| (x, f(x))).collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{},{}\n", self.x_name, self.y_name);
        for (x, y) in &self.rows {
            out.push_str(&format!("{},{}\n", fmt_g12(*x), fmt_g12(*y)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt_two() {
        let root = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-13).unwrap();
        assert!((root - 2f64.sqrt()).abs() < 1e-12);
        assert!(bisect(|x| x * x + 1.0, 0.0, 1.0, 1e-9).is_err());
    }

    #[test]
    fn grid_is_inclusive() {
        let g = grid(0.0, 1.0, 1000);
        assert_eq!(g.len(), 1001);
        assert_eq!(g[1000], 1.0);
    }

    #[test]
    fn curve_csv() {
        let t = CurveTable::sample("x", "y", &[0.0, 0.5], |x| 2.0 * x);
        assert_eq!(t.to_csv(), "x,y\n0,0\n0.5,1\n");
    }
}
