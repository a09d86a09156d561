//! Escape of `r_d` at the real and p-adic places, its preperiodic set, and
//! the place-wise escape radii of `h_d`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::Signed;

use super::{BoundReport, LemmaId};
use crate::arith::{
    factorial_padic_abs, int, is_prime, padic_abs, prime_power, rat, to_i64_exact, ExactRational,
};
use crate::error::{arg_err, internal_err, Result};
use crate::poly::{build_r, PolyExact};

/// A place of ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl std::str::FromStr for Place {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "oo" => Ok(Place::Infinity),
            _ => {
                let p: u64 = s.parse().map_err(|_| arg_err!("bad place {s:?}"))?;
                if !is_prime(p) {
                    return Err(arg_err!("{p} is not prime"));
                }
                Ok(Place::Prime(p))
            }
        }
    }
}

/// `{d+7, d+7+1/2, ..., d+17} ∪ {0, -1/2, ..., -10}`.
pub fn default_real_samples(d: usize) -> Vec<ExactRational> {
    let lo = d as i64 + 7;
    let right = (0..=20).map(|k| int(lo) + rat(k, 2));
    let left = (0..=20).map(|k| rat(-k, 2));
    right.chain(left).collect()
}

/// `|r_d(x)| > |x|` at each sample; samples must lie in `x >= d+7` or `x <= 0`.
pub fn real_escape_check_rd(d: usize, samples: Option<Vec<ExactRational>>) -> Result<BoundReport> {
    let r = build_r(d)?;
    let samples = samples.unwrap_or_else(|| default_real_samples(d));
    if samples.is_empty() {
        return Err(arg_err!("no samples"));
    }
    let right = int(d as i64 + 7);
    let zero = int(0);
    if let Some(x) = samples.iter().find(|x| !(**x >= right || **x <= zero)) {
        return Err(arg_err!("sample {x} lies inside (0, d+7)"));
    }
    let margins = samples.iter().map(|x| r.eval(x).abs() - x.abs()).collect();
    Ok(BoundReport::from_margins(
        LemmaId::RealEscape,
        d,
        samples,
        margins,
    ))
}

/// `count` samples `a / p^k`, `k = 1..=4`, `a` running over nonzero
/// integers coprime to `p` in the order `1, -1, 2, -2, ...`.
pub fn default_padic_samples(p: u64, count: usize) -> Vec<ExactRational> {
    let per_k = count.div_ceil(4);
    let numerators: Vec<i64> = (1i64..)
        .flat_map(|a| [a, -a])
        .filter(|a| a.gcd(&(p as i64)) == 1)
        .take(per_k)
        .collect();
    let mut out = Vec::with_capacity(count);
    for k in 1..=4 {
        let pk = prime_power(p, k);
        for &a in &numerators {
            if out.len() == count {
                return out;
            }
            out.push(int(a) / &pk);
        }
    }
    out
}

/// `|r_d(x)|_p > |x|_p` for samples with `|x|_p > 1`.
pub fn padic_escape_check_rd(
    d: usize,
    p: u64,
    samples: Option<Vec<ExactRational>>,
) -> Result<BoundReport> {
    if !is_prime(p) {
        return Err(arg_err!("{p} is not prime"));
    }
    let r = build_r(d)?;
    let samples = samples.unwrap_or_else(|| default_padic_samples(p, 200));
    if samples.is_empty() {
        return Err(arg_err!("no samples"));
    }
    let one = int(1);
    let mut margins = Vec::with_capacity(samples.len());
    for x in &samples {
        let ax = padic_abs(x, p)?;
        if ax <= one {
            return Err(arg_err!("sample {x} has |x|_{p} = {ax} <= 1"));
        }
        margins.push(padic_abs(&r.eval(x), p)? - ax);
    }
    Ok(BoundReport::from_margins(
        LemmaId::PadicEscape,
        d,
        samples,
        margins,
    ))
}

/// Iterates `r_d` from every integer in `(0, d+7)` and returns the set of
/// starting points, each confirmed to have a finite orbit inside `[d+6]`.
pub fn rd_preperiodic_set(d: usize) -> Result<BTreeSet<i64>> {
    let r = build_r(d)?;
    let top = d as i64 + 6;
    let image = |i: i64| -> Result<i64> {
        let v = r.eval_int(i);
        to_i64_exact(&v).ok_or_else(|| internal_err!("r_{d}({i}) = {v} is not an integer"))
    };
    let table: Vec<i64> = (1..=top).map(image).collect::<Result<_>>()?;
    let mut out = BTreeSet::new();
    for start in 1..=top {
        let mut seen = BTreeSet::new();
        let mut x = start;
        while seen.insert(x) {
            if !(1..=top).contains(&x) {
                return Err(internal_err!(
                    "orbit of {start} under r_{d} left (0, d+7) at {x}"
                ));
            }
            x = table[(x - 1) as usize];
        }
        out.insert(start);
    }
    Ok(out)
}

/// `R_∞ = (d+7)/2` and `R_p = 1 + 3|d!|_p` for odd `d >= 3`.
pub fn escape_radius(d: usize, place: Place) -> Result<ExactRational> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(arg_err!("escape radius needs odd d >= 3, got {d}"));
    }
    match place {
        Place::Infinity => Ok(rat(d as i64 + 7, 2)),
        Place::Prime(p) => Ok(int(1) + int(3) * factorial_padic_abs(d as u64, p)?),
    }
}

/// Whether `R_p < p`, which forces p-integrality of periodic points.
pub fn radius_below_prime(d: usize, p: u64) -> Result<bool> {
    Ok(escape_radius(d, Place::Prime(p))? < int(p as i64))
}

/// Applies [`PolyExact::eval`] to `1..=m`, failing on non-integer values.
pub(crate) fn integer_values(f: &PolyExact, m: i64) -> Result<Vec<i64>> {
    (1..=m)
        .map(|i| {
            let v = f.eval_int(i);
            to_i64_exact(&v).ok_or_else(|| arg_err!("f({i}) = {v} is not an integer"))
        })
        .collect()
}
