//! The limiting map `h_∞(x, y) = (y, -x + s_∞(y))`, `s_∞(y) = (2/√3) sin(πy/3)`.
//!
//! On the integer lattice `s_∞` takes the values of [`sigma`], so the exact
//! dynamics are pure integer arithmetic. Every lattice point is periodic.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::henon::LatticePoint;
use crate::error::{arg_err, Error, Result};
use crate::exec::Exec;
use crate::poly::sigma;

/// Period of a generic lattice point, indexed `[y mod 6][x mod 6]`.
pub const HINF_RESIDUE_TABLE: [[usize; 6]; 6] = [
    [4, 12, 20, 4, 20, 12],
    [12, 12, 20, 20, 20, 20],
    [20, 20, 20, 12, 12, 20],
    [4, 20, 12, 4, 12, 20],
    [20, 20, 12, 12, 20, 20],
    [12, 20, 20, 20, 20, 12],
];

/// The seventeen points whose period differs from the residue table.
pub const HINF_EXCEPTIONS: [(LatticePoint, usize); 17] = {
    const fn p(x: i64, y: i64, n: usize) -> (LatticePoint, usize) {
        (LatticePoint::new(x, y), n)
    }
    [
        p(0, 0, 1),
        p(2, 0, 5),
        p(2, 1, 5),
        p(1, 2, 5),
        p(0, 2, 5),
        p(-1, 1, 5),
        p(-2, 0, 5),
        p(-2, -1, 5),
        p(-1, -2, 5),
        p(0, -2, 5),
        p(1, -1, 5),
        p(1, 0, 6),
        p(1, 1, 6),
        p(0, 1, 6),
        p(-1, 0, 6),
        p(-1, -1, 6),
        p(0, -1, 6),
    ]
};

/// Longest possible period; used as a safety cap.
const MAX_PERIOD: usize = 20;

pub fn hinf_step_exact(p: LatticePoint) -> LatticePoint {
    LatticePoint::new(p.y, -p.x + sigma(p.y))
}

pub fn hinf_period(p: LatticePoint) -> usize {
    let mut q = hinf_step_exact(p);
    let mut n = 1;
    while q != p {
        q = hinf_step_exact(q);
        n += 1;
        assert!(n <= 4 * MAX_PERIOD, "h_∞ orbit of {p} failed to close");
    }
    n
}

/// Period predicted by the residue table and exception list.
pub fn predicted_period(p: LatticePoint) -> usize {
    HINF_EXCEPTIONS
        .iter()
        .find(|(q, _)| *q == p)
        .map(|&(_, n)| n)
        .unwrap_or(HINF_RESIDUE_TABLE[p.y.rem_euclid(6) as usize][p.x.rem_euclid(6) as usize])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodTable {
    pub range: i64,
    /// `[y mod 6][x mod 6]`, learned from non-exceptional points.
    pub table: [[usize; 6]; 6],
    /// Points whose period differs from their residue class, sorted.
    pub exceptions: Vec<(LatticePoint, usize)>,
    /// Number of points of each period.
    pub period_counts: BTreeMap<usize, usize>,
}

/// Computes every period on `[-M, M]²` and checks that the period is a
/// function of the residues mod 6 away from the seventeen exceptional points.
///
/// Any other disagreement, or a mismatch with [`HINF_RESIDUE_TABLE`], is a
/// [`Error::Contract`] violation.
pub fn hinf_period_table(m: i64, exec: Exec) -> Result<PeriodTable> {
    if m < 6 {
        return Err(arg_err!("period table needs M >= 6, got {m}"));
    }
    let rows: Vec<i64> = (-m..=m).collect();
    let periods = exec.map(&rows, |&y| {
        (-m..=m)
            .map(|x| {
                let p = LatticePoint::new(x, y);
                (p, hinf_period(p))
            })
            .collect::<Vec<_>>()
    });

    let known: BTreeMap<LatticePoint, usize> = HINF_EXCEPTIONS.iter().copied().collect();
    let mut table = [[0usize; 6]; 6];
    let mut exceptions = Vec::new();
    let mut period_counts = BTreeMap::new();
    for (p, n) in periods.into_iter().flatten() {
        *period_counts.entry(n).or_insert(0) += 1;
        if known.contains_key(&p) {
            exceptions.push((p, n));
            continue;
        }
        let cell = &mut table[p.y.rem_euclid(6) as usize][p.x.rem_euclid(6) as usize];
        if *cell == 0 {
            *cell = n;
        } else if *cell != n {
            return Err(Error::Contract(format!(
                "period of {p} is {n}, but its residue class has period {cell}"
            )));
        }
    }
    exceptions.sort();
    for &(p, n) in &exceptions {
        if known[&p] != n {
            return Err(Error::Contract(format!(
                "exceptional point {p} has period {n}, expected {}",
                known[&p]
            )));
        }
        if table[p.y.rem_euclid(6) as usize][p.x.rem_euclid(6) as usize] == n {
            return Err(Error::Contract(format!(
                "{p} is listed as exceptional but matches its residue class"
            )));
        }
    }
    if table != HINF_RESIDUE_TABLE {
        return Err(Error::Contract(format!(
            "computed residue table {table:?} differs from the reference table"
        )));
    }
    Ok(PeriodTable {
        range: m,
        table,
        exceptions,
        period_counts,
    })
}

/// `s_∞` in double precision. Exact at integers, where it equals `σ`.
pub fn s_inf(y: f64) -> f64 {
    if y.fract() == 0.0 && y.abs() < 2f64.powi(53) {
        return sigma(y as i64) as f64;
    }
    // Reduce first: sin(πy/3) loses accuracy for large |y|.
    let r = y.rem_euclid(6.0);
    (2.0 / 3f64.sqrt()) * (PI * r / 3.0).sin()
}

/// Iterates `h_∞` in double precision from `start` plus a uniform
/// perturbation in `[-epsilon, epsilon]²` drawn from a ChaCha stream.
///
/// Returns `iterations + 1` points, the perturbed start first.
pub fn hinf_orbit_float(
    start: (f64, f64),
    epsilon: f64,
    iterations: usize,
    seed: u64,
) -> Result<Vec<(f64, f64)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    orbit_with_rng(start, epsilon, iterations, &mut rng)
}

fn orbit_with_rng(
    start: (f64, f64),
    epsilon: f64,
    iterations: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(f64, f64)>> {
    if iterations == 0 {
        return Err(arg_err!("iterations must be at least 1"));
    }
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(arg_err!(
            "epsilon must be finite and non-negative, got {epsilon}"
        ));
    }
    let (mut x, mut y) = start;
    if epsilon > 0.0 {
        x += rng.random_range(-epsilon..=epsilon);
        y += rng.random_range(-epsilon..=epsilon);
    }
    let mut out = Vec::with_capacity(iterations + 1);
    out.push((x, y));
    for i in 0..iterations {
        (x, y) = (y, -x + s_inf(y));
        if !(x.is_finite() && y.is_finite()) {
            return Err(Error::Diverged(format!(
                "non-finite iterate at step {}",
                i + 1
            )));
        }
        out.push((x, y));
    }
    Ok(out)
}

/// One perturbed orbit of the atlas.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtlasOrbit {
    pub base: LatticePoint,
    pub period_class: usize,
    /// Every `stride`-th point of the trajectory.
    pub points: Vec<(f64, f64)>,
}

/// Runs a perturbed orbit from every integer point of `[-M, M]²`, keeping
/// every `stride`-th iterate. Each base point draws from its own ChaCha
/// stream, so output does not depend on scheduling.
pub fn perturbation_atlas(
    m: i64,
    epsilon: f64,
    iterations: usize,
    seed: u64,
    stride: usize,
    exec: Exec,
) -> Result<Vec<AtlasOrbit>> {
    if m < 0 {
        return Err(arg_err!("atlas box must be non-negative, got {m}"));
    }
    let stride = stride.max(1);
    let bases: Vec<LatticePoint> = (-m..=m)
        .flat_map(|x| (-m..=m).map(move |y| LatticePoint::new(x, y)))
        .collect();
    let indexed: Vec<(usize, LatticePoint)> = bases.into_iter().enumerate().collect();
    exec.try_map(&indexed, |&(i, base)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let orbit = orbit_with_rng(
            (base.x as f64, base.y as f64),
            epsilon,
            iterations,
            &mut rng,
        )?;
        Ok(AtlasOrbit {
            base,
            period_class: hinf_period(base),
            points: orbit.into_iter().step_by(stride).collect(),
        })
    })
}
