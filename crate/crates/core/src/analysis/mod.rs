//! Exact verification of the estimates on `c_d` and `s_d`, the escape
//! behaviour of `r_d`, and optimality of dynamical compression.
//!
//! Every inequality is decided in exact rational arithmetic on a finite
//! rational grid; only [`convergence`] uses floats, because its limit is
//! transcendental.

pub mod bounds;
pub mod compress;
pub mod convergence;
pub mod escape;

use serde::Serialize;

use crate::arith::ExactRational;

pub use bounds::{
    log_lower_bound, verify_cd_bounds, verify_monotonicity, verify_sigma_agreement,
    verify_sigma_agreement_with, verify_tail_growth, SigmaCheck, SigmaShift,
};
pub use compress::{
    compression_check, cubic_compressor, optimal_compression_search, rd_compression,
    up_to_target_reflection, RdCompression,
};
pub use convergence::{convergence_report, ConvergenceReport, SeriesKind};
pub use escape::{
    default_padic_samples, default_real_samples, escape_radius, padic_escape_check_rd,
    radius_below_prime, rd_preperiodic_set, real_escape_check_rd, Place,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    CdSup,
    CdSupInner,
    CdDeriv,
    CdDerivInner,
    TailGrowth,
    Monotone,
    RealEscape,
    PadicEscape,
}

impl LemmaId {
    /// Whether the checked inequality is strict.
    pub fn is_strict(self) -> bool {
        !matches!(
            self,
            LemmaId::CdSup | LemmaId::CdSupInner | LemmaId::TailGrowth
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::CdSup => "cd_sup",
            LemmaId::CdSupInner => "cd_sup_inner",
            LemmaId::CdDeriv => "cd_deriv",
            LemmaId::CdDerivInner => "cd_deriv_inner",
            LemmaId::TailGrowth => "tail_growth",
            LemmaId::Monotone => "monotone",
            LemmaId::RealEscape => "real_escape",
            LemmaId::PadicEscape => "padic_escape",
        }
    }
}

/// Outcome of an exact inequality check over a set of rational samples.
///
/// The margin at a sample is `bound - observed`; `worst_margin` is the
/// minimum over all samples.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub lemma: LemmaId,
    pub d: usize,
    pub grid: Vec<ExactRational>,
    pub worst_margin: ExactRational,
    pub worst_at: ExactRational,
    pub pass: bool,
}

impl BoundReport {
    /// Folds per-sample margins into a report. `margins` must be nonempty
    /// and aligned with `grid`.
    pub(crate) fn from_margins(
        lemma: LemmaId,
        d: usize,
        grid: Vec<ExactRational>,
        margins: Vec<ExactRational>,
    ) -> Self {
        assert_eq!(grid.len(), margins.len());
        let (idx, worst) = margins
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, m)| (i, m.clone()))
            .expect("nonempty grid");
        let zero = ExactRational::from_integer(0.into());
        let pass = if lemma.is_strict() {
            worst > zero
        } else {
            worst >= zero
        };
        BoundReport {
            lemma,
            d,
            worst_at: grid[idx].clone(),
            grid,
            worst_margin: worst,
            pass,
        }
    }

    pub fn record(&self) -> BoundRecord {
        BoundRecord {
            lemma: self.lemma.name(),
            d: self.d,
            grid: GridSummary {
                first: self
                    .grid
                    .first()
                    .map(ToString::to_string)
                    .unwrap_or_default(),
                last: self
                    .grid
                    .last()
                    .map(ToString::to_string)
                    .unwrap_or_default(),
                points: self.grid.len(),
            },
            worst_margin: self.worst_margin.to_string(),
            worst_at: self.worst_at.to_string(),
            pass: self.pass,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GridSummary {
    pub first: String,
    pub last: String,
    pub points: usize,
}

/// JSON form of a [`BoundReport`]; rationals are `"num/den"` strings.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct BoundRecord {
    pub lemma: &'static str,
    pub d: usize,
    pub grid: GridSummary,
    pub worst_margin: String,
    pub worst_at: String,
    pub pass: bool,
}

/// `start, start + step, ..., end` (inclusive when `end` is on the grid).
pub(crate) fn rational_grid(
    start: &ExactRational,
    end: &ExactRational,
    step: &ExactRational,
) -> Vec<ExactRational> {
    let mut out = Vec::new();
    let mut x = start.clone();
    while &x <= end {
        out.push(x.clone());
        x += step;
    }
    out
}
