//! Float sup-error of `(-1)^k s_{2k+1}` and `(-1)^k s_{2k}` against their
//! trigonometric limits.

use std::f64::consts::PI;

use serde::Serialize;

use crate::exec::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// `(-1)^k s_{2k+1} -> (2/√3) sin(πx/3)`
    Sine,
    /// `(-1)^k s_{2k} -> (2/√3) cos(πx/3)`
    Cosine,
    SineDerivative,
    CosineDerivative,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 4] = [
        SeriesKind::Sine,
        SeriesKind::Cosine,
        SeriesKind::SineDerivative,
        SeriesKind::CosineDerivative,
    ];

    fn degree(self, k: usize) -> usize {
        match self {
            SeriesKind::Sine | SeriesKind::SineDerivative => 2 * k + 1,
            SeriesKind::Cosine | SeriesKind::CosineDerivative => 2 * k,
        }
    }

    fn is_derivative(self) -> bool {
        matches!(
            self,
            SeriesKind::SineDerivative | SeriesKind::CosineDerivative
        )
    }

    pub fn limit(self, x: f64) -> f64 {
        let amp = 2.0 / 3f64.sqrt();
        let w = PI / 3.0;
        match self {
            SeriesKind::Sine => amp * (w * x).sin(),
            SeriesKind::Cosine => amp * (w * x).cos(),
            SeriesKind::SineDerivative => amp * w * (w * x).cos(),
            SeriesKind::CosineDerivative => -amp * w * (w * x).sin(),
        }
    }
}

/// `(s_d(x), s_d'(x))` in double precision via the `c_j` recurrence.
pub fn s_f64(d: usize, x: f64) -> (f64, f64) {
    let (mut c, mut dc) = if d.is_multiple_of(2) {
        (1.0, 0.0)
    } else {
        (x, 1.0)
    };
    let mut s = c;
    let mut ds = dc;
    let mut j = d % 2;
    while j < d {
        j += 2;
        let h = (j as f64 - 1.0) / 2.0;
        let q = x * x - h * h;
        let denom = ((j - 1) * j) as f64;
        let next = c * q / denom;
        dc = (dc * q + c * 2.0 * x) / denom;
        c = next;
        // s_j = c_j - s_{j-2}
        s = c - s;
        ds = dc - ds;
    }
    (s, ds)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub kind: SeriesKind,
    pub ks: Vec<usize>,
    pub sup_errors: Vec<f64>,
    pub interval: (f64, f64),
    pub step: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn float_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| lo + i as f64 * step).collect()
}

/// Sup-error over the grid for `k = 5, 10, ..., k_max`.
/// `pass` requires the last error to be within `tolerance`.
pub fn convergence_report(
    exec: Exec,
    kind: SeriesKind,
    k_max: usize,
    interval: (f64, f64),
    step: f64,
    tolerance: f64,
) -> ConvergenceReport {
    assert!(step > 0.0 && interval.0 <= interval.1);
    let grid = float_grid(interval.0, interval.1, step);
    let ks: Vec<usize> = (1..=k_max / 5).map(|i| 5 * i).collect();
    let sup_errors = exec.map(&ks, |&k| sup_error(kind, k, &grid));
    let pass = sup_errors.last().is_some_and(|&e| e <= tolerance);
    ConvergenceReport {
        kind,
        ks,
        sup_errors,
        interval,
        step,
        tolerance,
        pass,
    }
}

pub fn sup_error(kind: SeriesKind, k: usize, grid: &[f64]) -> f64 {
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    grid.iter()
        .map(|&x| {
            let (v, dv) = s_f64(kind.degree(k), x);
            let approx = sign * if kind.is_derivative() { dv } else { v };
            (approx - kind.limit(x)).abs()
        })
        .fold(0.0, f64::max)
}
