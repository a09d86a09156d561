//! Dynamical compression `f([m]) ⊆ [m]` and the exhaustive optimality
//! search in degrees 2 and 3.

use super::escape::integer_values;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{int, rat, ExactRational};
use crate::error::{arg_err, Result};
use crate::exec::Exec;
use crate::poly::{build_r, PolyExact};

/// Largest `m` accepted by [`optimal_compression_search`].
pub const MAX_SEARCH_M: i64 = 30;

/// True iff `f(i) ∈ [m]` for all `i ∈ [m]`. `f` must be integer-valued there.
pub fn compression_check(f: &PolyExact, m: i64) -> Result<bool> {
    if m < 1 {
        return Err(arg_err!("m must be positive, got {m}"));
    }
    let values = integer_values(f, m)?;
    Ok(values.iter().all(|v| (1..=m).contains(v)))
}

/// Image of `[d+6]` under `r_d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RdCompression {
    pub d: usize,
    /// Size of the compressed interval, `d + 6`.
    pub m: i64,
    /// Claimed bound on the image: `d + 5` for even `d`, `d + 4` for odd `d`.
    pub target: i64,
    pub image_min: i64,
    pub image_max: i64,
    pub pass: bool,
}

/// Checks `r_d([d+6]) ⊆ [d+5]` (even `d`) or `[d+4]` (odd `d`).
pub fn rd_compression(d: usize) -> Result<RdCompression> {
    let r = build_r(d)?;
    let m = d as i64 + 6;
    let target = if d.is_multiple_of(2) { m - 1 } else { m - 2 };
    let values = integer_values(&r, m)?;
    let image_min = *values.iter().min().expect("m >= 1");
    let image_max = *values.iter().max().expect("m >= 1");
    Ok(RdCompression {
        d,
        m,
        target,
        image_min,
        image_max,
        pass: image_min >= 1 && image_max <= target,
    })
}

/// `C(x - 1, k)` as a polynomial.
fn shifted_binomial(k: usize) -> PolyExact {
    let mut p = PolyExact::constant(int(1));
    for i in 0..k {
        let factor = PolyExact::from_coeffs(vec![int(-1 - i as i64), int(1)]);
        p = (&p * &factor).scale(&rat(1, i as i64 + 1));
    }
    p
}

/// Forward differences `Δ^0 v(1), ..., Δ^n v(1)` of `n + 1` values.
fn leading_differences(values: &[i64]) -> Vec<i64> {
    let mut row = values.to_vec();
    let mut out = Vec::with_capacity(values.len());
    while !row.is_empty() {
        out.push(row[0]);
        row = row.windows(2).map(|w| w[1] - w[0]).collect();
    }
    out
}

/// Every integer-valued polynomial of exactly `degree` with `f([m]) ⊆ [m]`.
///
/// Such an `f` is fixed by its values at `1..=degree+1`, which must lie in
/// `[m]`, and every integer tuple interpolates to an integer-valued
/// polynomial. Each tuple is extended to `1..=m` with its difference table.
/// Results are ordered by their value tuple.
pub fn optimal_compression_search(exec: Exec, degree: usize, m: i64) -> Result<Vec<PolyExact>> {
    if !(2..=3).contains(&degree) {
        return Err(arg_err!("search supports degree 2 or 3, got {degree}"));
    }
    if m > MAX_SEARCH_M {
        return Err(arg_err!("m = {m} exceeds the search guard {MAX_SEARCH_M}"));
    }
    if m <= degree as i64 {
        return Err(arg_err!("m = {m} must exceed the degree {degree}"));
    }
    let firsts: Vec<i64> = (1..=m).collect();
    let per_first = exec.map(&firsts, |&v0| {
        let mut found: Vec<Vec<i64>> = Vec::new();
        let mut tuple = vec![v0; degree + 1];
        search_rest(&mut tuple, 1, m, degree, &mut found);
        found
    });
    let basis: Vec<PolyExact> = (0..=degree).map(shifted_binomial).collect();
    Ok(per_first
        .into_iter()
        .flatten()
        .map(|diffs| {
            let mut f = PolyExact::zero();
            for (k, dk) in diffs.iter().enumerate() {
                if *dk != 0 {
                    f = &f + &basis[k].scale(&int(*dk));
                }
            }
            f
        })
        .collect())
}

fn search_rest(tuple: &mut [i64], pos: usize, m: i64, degree: usize, found: &mut Vec<Vec<i64>>) {
    if pos == tuple.len() {
        let diffs = leading_differences(tuple);
        if diffs[degree] == 0 {
            return;
        }
        // extend the difference table to f(1..=m)
        let mut row = diffs.clone();
        for _ in 1..m {
            for k in 0..degree {
                row[k] += row[k + 1];
            }
            if !(1..=m).contains(&row[0]) {
                return;
            }
        }
        found.push(diffs);
        return;
    }
    for v in 1..=m {
        tuple[pos] = v;
        search_rest(tuple, pos + 1, m, degree, found);
    }
}

/// One representative per pair `{f, m + 1 - f}`: the member with positive
/// leading coefficient. Post-composing with `y -> m + 1 - y` maps solutions
/// of `f([m]) ⊆ [m]` to solutions and flips the leading sign.
pub fn up_to_target_reflection(solutions: Vec<PolyExact>) -> Vec<PolyExact> {
    solutions
        .into_iter()
        .filter(|f| f.leading_coeff() > ExactRational::zero())
        .collect()
}

/// `(x^3 - 18x^2 + 89x - 66)/6`, the degree-3 compressor of `[11]`.
pub fn cubic_compressor() -> PolyExact {
    PolyExact::from_coeffs(vec![int(-11), rat(89, 6), int(-3), rat(1, 6)])
}
