//! Grid checks of the `c_d` bounds, the `s_d` tail estimate, strict
//! monotonicity, and agreement with `σ` on the central interval.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{rational_grid, BoundReport, LemmaId};
use crate::arith::{factorial, int, rat, ExactRational};
use crate::error::{arg_err, Result};
use crate::exec::Exec;
use crate::poly::{build_s, s_product_form, sigma};

/// Sign of the `3(d-1)/2` offset in the `σ` comparison.
///
/// For odd `d` the two conventions coincide (the offset is a multiple of 3
/// and `σ(m + 3) = -σ(m)` twice over is periodic). For even `d` only
/// [`SigmaShift::Minus`] matches `s_d`, since `δσ(x) = σ(x + 3/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaShift {
    /// `σ(m + 3(d-1)/2)`
    Plus,
    /// `σ(m - 3(d-1)/2)`
    Minus,
}

/// Result of comparing `s_d(m)` with `σ(m ± 3(d-1)/2)` on
/// `m = -(d+1)/2, ..., (d+1)/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaCheck {
    pub d: usize,
    pub shift: SigmaShift,
    pub points: usize,
    pub pass: bool,
    /// `(m, s_d(m), σ(...))` at the first disagreement.
    pub counterexample: Option<(String, String, i64)>,
}

/// Compares `s_d(m)` with `σ(m + 3(d-1)/2)`.
pub fn verify_sigma_agreement(d: usize) -> Result<SigmaCheck> {
    verify_sigma_agreement_with(d, SigmaShift::Plus)
}

pub fn verify_sigma_agreement_with(d: usize, convention: SigmaShift) -> Result<SigmaCheck> {
    if d == 0 {
        return Err(arg_err!("sigma agreement needs d >= 1"));
    }
    let s = s_product_form(d);
    let half = rat(d as i64 + 1, 2);
    let shift = match convention {
        SigmaShift::Plus => rat(3 * (d as i64 - 1), 2),
        SigmaShift::Minus => rat(-3 * (d as i64 - 1), 2),
    };
    let mut points = 0;
    let mut m = -half.clone();
    while m <= half {
        points += 1;
        let value = s.eval(&m);
        let arg = (&m + &shift).to_integer();
        let arg = i64::try_from(arg).expect("small argument");
        let expected = sigma(arg);
        if value != int(expected) {
            return Ok(SigmaCheck {
                d,
                shift: convention,
                points,
                pass: false,
                counterexample: Some((m.to_string(), value.to_string(), expected)),
            });
        }
        m += int(1);
    }
    Ok(SigmaCheck {
        d,
        shift: convention,
        points,
        pass: true,
        counterexample: None,
    })
}

/// A certified rational lower bound on `ln d`, accurate to about 2^-60.
///
/// Writes `d = 2^k r` with `1 <= r < 2` and sums the first terms of
/// `ln y = 2 Σ z^(2i+1)/(2i+1)`, `z = (y-1)/(y+1)`, for `y = 2` and `y = r`.
/// All omitted terms are positive, and the final rounding is downward.
pub fn log_lower_bound(d: u64) -> ExactRational {
    assert!(d >= 1);
    fn ln_series_lower(y: &ExactRational) -> ExactRational {
        let one = int(1);
        let z = (y - &one) / (y + &one);
        let z2 = &z * &z;
        let mut power = z.clone();
        let mut sum = ExactRational::zero();
        for i in 0..40 {
            sum += &power / int(2 * i + 1);
            power *= &z2;
        }
        sum * int(2)
    }
    let k = 63 - d.leading_zeros() as i64;
    let r = BigRational::new(BigInt::from(d), BigInt::one() << k);
    let exact_sum = ln_series_lower(&int(2)) * int(k) + ln_series_lower(&r);
    let scale: BigInt = BigInt::one() << 64;
    let floored = (exact_sum * BigRational::from_integer(scale.clone())).floor();
    floored / BigRational::from_integer(scale)
}

/// `c_d(x)` and `c_d'(x)` from the factored form.
///
/// With `x = a/m` every factor `2m (x + (d-1)/2 - i)` is the integer
/// `2a + m(d - 1 - 2i)`; the derivative follows from the product rule on
/// those integer factors.
pub fn cd_value_and_derivative(d: usize, x: &ExactRational) -> (ExactRational, ExactRational) {
    let a = x.numer();
    let m = x.denom();
    let two_a: BigInt = a * 2;
    let mut prod = BigInt::one();
    let mut dprod = BigInt::zero();
    for i in 0..d {
        let f: BigInt = &two_a + m * (d as i64 - 1 - 2 * i as i64);
        dprod = dprod * &f + &prod;
        prod *= f;
    }
    let two_m: BigInt = m * 2;
    let den = factorial(d as u64) * num_traits::pow(two_m.clone(), d);
    let value = BigRational::new(prod, den.clone());
    // d/dx = 2m d/du for u = 2m x
    let deriv = BigRational::new(dprod * two_m, den);
    (value, deriv)
}

fn check_unit_step(step: &ExactRational) -> Result<()> {
    if !step.is_positive() || !step.numer().is_one() {
        return Err(arg_err!("grid step must be 1/n, got {step}"));
    }
    Ok(())
}

/// Checks one of the four `c_d` / `c_d'` bounds on its interval.
///
/// `ln d` in the derivative bounds is replaced by [`log_lower_bound`], which
/// can only make the inequality harder to satisfy.
pub fn verify_cd_bounds(d: usize, which: LemmaId, step: &ExactRational) -> Result<BoundReport> {
    check_unit_step(step)?;
    let (inner, deriv) = match which {
        LemmaId::CdSup => (false, false),
        LemmaId::CdSupInner => (true, false),
        LemmaId::CdDeriv => (false, true),
        LemmaId::CdDerivInner => (true, true),
        other => return Err(arg_err!("{} is not a c_d bound", other.name())),
    };
    let min_d = if inner { 3 } else { 2 };
    if d < min_d {
        return Err(arg_err!("{} needs d >= {min_d}, got {d}", which.name()));
    }
    let di = d as i64;
    let half_width = if inner {
        rat(di - 3, 2)
    } else {
        rat(di - 1, 2)
    };
    let log_d = log_lower_bound(d as u64);
    let bound = match (inner, deriv) {
        (false, false) => rat(1, 4 * di),
        (true, false) => rat(1, 2 * di * (di - 1)),
        (false, true) => (&log_d + int(3)) / int(2 * di),
        (true, true) => (&log_d + int(3)) / int(di * (di - 1)),
    };
    let grid = rational_grid(&-half_width.clone(), &half_width, step);
    let margins = grid
        .iter()
        .map(|x| {
            let (v, dv) = cd_value_and_derivative(d, x);
            let observed = if deriv { dv.abs() } else { v.abs() };
            &bound - observed
        })
        .collect();
    Ok(BoundReport::from_margins(which, d, grid, margins))
}

/// `s_d(x) >= 3x` on `x ∈ ℤ + (d+1)/2`, `(d+7)/2 <= x <= cap`.
pub fn verify_tail_growth(d: usize, cap: &ExactRational) -> Result<BoundReport> {
    if d < 3 {
        return Err(arg_err!("tail growth needs d >= 3, got {d}"));
    }
    let start = rat(d as i64 + 7, 2);
    if cap < &start {
        return Err(arg_err!("cap {cap} below (d+7)/2 = {start}"));
    }
    let s = s_product_form(d);
    let grid = rational_grid(&start, cap, &int(1));
    let margins = grid.iter().map(|x| s.eval(x) - x * int(3)).collect();
    Ok(BoundReport::from_margins(
        LemmaId::TailGrowth,
        d,
        grid,
        margins,
    ))
}

/// Strict increase of `s_d` along the grid from `(d+3)/2` to `cap`, and
/// `s_d' > 0` at every grid point.
///
/// The margin at a point is the smaller of the forward increment and the
/// derivative there.
pub fn verify_monotonicity(
    d: usize,
    cap: &ExactRational,
    step: &ExactRational,
) -> Result<BoundReport> {
    if d == 0 {
        return Err(arg_err!("monotonicity needs d >= 1"));
    }
    check_unit_step(step)?;
    let start = rat(d as i64 + 3, 2);
    if cap <= &start {
        return Err(arg_err!("cap {cap} must exceed (d+3)/2 = {start}"));
    }
    let s = build_s(d);
    let ds = s.derivative();
    let grid = rational_grid(&start, cap, step);
    let values: Vec<ExactRational> = grid.iter().map(|x| s.eval(x)).collect();
    let margins = grid
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let slope = ds.eval_monomial(x);
            match values.get(i + 1) {
                Some(next) => (next - &values[i]).min(slope),
                None => slope,
            }
        })
        .collect();
    Ok(BoundReport::from_margins(
        LemmaId::Monotone,
        d,
        grid,
        margins,
    ))
}

/// Runs `verify_cd_bounds` for all four lemmas over `ds`.
pub fn cd_bounds_batch(exec: Exec, ds: &[usize], step: &ExactRational) -> Result<Vec<BoundReport>> {
    let jobs: Vec<(usize, LemmaId)> = ds
        .iter()
        .flat_map(|&d| {
            [
                LemmaId::CdSup,
                LemmaId::CdSupInner,
                LemmaId::CdDeriv,
                LemmaId::CdDerivInner,
            ]
            .into_iter()
            .map(move |l| (d, l))
        })
        .collect();
    exec.try_map(&jobs, |&(d, l)| verify_cd_bounds(d, l, step))
}
