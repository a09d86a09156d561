//! Exhaustive periodic-point enumeration, cycle decomposition, and sweeps.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::henon::{periodic_radius, HenonMap, LatticePoint, Orientation, Outcome};
use crate::arith::{int, ExactRational};
use crate::error::{arg_err, Error, Result};
use crate::exec::Exec;
use crate::poly::s_product_form;

/// One cycle: its lexicographically least point and the points in orbit
/// order starting from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleRecord {
    pub representative: LatticePoint,
    pub length: usize,
    pub points: Vec<LatticePoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicReport {
    pub d: usize,
    pub c: i64,
    pub orientation: Orientation,
    pub total: usize,
    /// cycle length -> number of cycles of that length
    pub histogram: BTreeMap<usize, usize>,
    pub longest: usize,
    pub n_cycles: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PeriodicReport {
    pub fn d_mod_6(&self) -> usize {
        self.d % 6
    }
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub report: PeriodicReport,
    pub cycles: Vec<CycleRecord>,
}

/// Classifies every integer point in the box `max(|x|,|y|) <= (d+5)/2 + |c|`
/// and groups the periodic ones into cycles.
///
/// For the unshifted map, every point with sup-norm at most
/// [`periodic_radius`] must come out periodic; anything else is a
/// [`Error::Contract`] violation.
pub fn enumerate_periodic(map: &HenonMap, exec: Exec) -> Result<Enumeration> {
    let started = Instant::now();
    let b = map.search_box();
    let rows: Vec<i64> = (-b..=b).collect();
    let traced = exec.try_map(&rows, |&x| {
        (-b..=b)
            .map(|y| {
                let p = LatticePoint::new(x, y);
                map.trace(p).map(|(o, least)| (p, o, least))
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let guaranteed = if map.shift() == 0 {
        Some(periodic_radius(map.d())?)
    } else {
        None
    };
    let mut total = 0;
    let mut reps = Vec::new();
    for (p, outcome, least) in traced.into_iter().flatten() {
        match outcome {
            Outcome::Periodic(_) => {
                total += 1;
                if least == p {
                    reps.push(p);
                }
            }
            Outcome::Escapes(steps) => {
                if let Some(r) = guaranteed {
                    if p.sup_norm() <= r {
                        return Err(Error::Contract(format!(
                            "{p} with sup-norm <= {r} escapes h_{} after {steps} steps",
                            map.d()
                        )));
                    }
                }
            }
        }
    }

    let cycles: Vec<CycleRecord> = exec.try_map(&reps, |&rep| {
        map.cycle_from(rep).map(|points| CycleRecord {
            representative: rep,
            length: points.len(),
            points,
        })
    })?;
    let mut histogram = BTreeMap::new();
    for c in &cycles {
        *histogram.entry(c.length).or_insert(0) += 1;
    }
    let report = PeriodicReport {
        d: map.d(),
        c: map.shift(),
        orientation: map.orientation(),
        total,
        longest: cycles.iter().map(|c| c.length).max().unwrap_or(0),
        n_cycles: cycles.len(),
        histogram,
        elapsed: started.elapsed(),
    };
    Ok(Enumeration { report, cycles })
}

pub fn longest_cycle(d: usize, c: i64, exec: Exec) -> Result<usize> {
    let map = HenonMap::new(d, c, Orientation::Standard)?;
    Ok(enumerate_periodic(&map, exec)?.report.longest)
}

/// Interpolated periodic count and longest cycle for `(d, c)`, by `d mod 6`
/// and `c ∈ {-2, ..., 2}`. Returns `None` outside the tabulated shifts.
pub fn table_formula(d: usize, c: i64) -> Option<(i64, i64)> {
    let d = d as i64;
    if d % 2 == 0 || !(-2..=2).contains(&c) {
        return None;
    }
    let out = match (d % 6, c.abs(), c) {
        (1, 0, _) => ((3 * d * d - 8 * d + 56) / 3, (8 * d + 10) / 3),
        (1, 1, _) => (d * d + 2 * d + 4, (10 * d - 7) / 3),
        (1, 2, _) => (d * d - 6 * d + 18, (16 * d - 61) / 3),
        (3, 0, _) => (d * d + 8, 20),
        (3, 1, -1) => (d * d + 4 * d, 8 * d - 39),
        (3, 1, _) => (d * d + 4 * d + 1, 8 * d - 39),
        (3, 2, _) => (d * d - 4 * d + 7, 60),
        (5, 0, _) => ((3 * d * d - 8 * d + 40) / 3, 20),
        (5, 1, _) => (d * d - 2 * d + 29, (14 * d - 31) / 3),
        (5, 2, _) => ((3 * d * d - 22 * d + 161) / 3, (28 * d - 185) / 3),
        _ => return None,
    };
    Some(out)
}

/// Degree range over which the shift tables were fitted.
pub const TABLE_RANGE: std::ops::RangeInclusive<usize> = 15..=299;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub report: PeriodicReport,
    pub expected: Option<(i64, i64)>,
    /// `None` when no formula applies.
    pub matches: Option<bool>,
    pub in_table_range: bool,
}

impl SweepRow {
    /// A mismatch inside the fitted range; outside it mismatches are only flagged.
    pub fn is_failure(&self) -> bool {
        self.in_table_range && self.matches == Some(false)
    }
}

/// Enumerates every `(d, c)` pair (rows ordered by `d`, then `c`).
pub fn sweep(
    ds: &[usize],
    cs: &[i64],
    orientation: Orientation,
    exec: Exec,
) -> Result<Vec<SweepRow>> {
    if let Some(d) = ds.iter().find(|&&d| d < 3 || d % 2 == 0) {
        return Err(arg_err!("sweep needs odd d >= 3, got {d}"));
    }
    let jobs: Vec<(usize, i64)> = ds
        .iter()
        .flat_map(|&d| cs.iter().map(move |&c| (d, c)))
        .collect();
    exec.try_map(&jobs, |&(d, c)| {
        let map = HenonMap::new(d, c, orientation)?;
        let report = enumerate_periodic(&map, exec)?.report;
        let expected = table_formula(d, c);
        let matches = expected.map(|(n, l)| n == report.total as i64 && l == report.longest as i64);
        Ok(SweepRow {
            report,
            expected,
            matches,
            in_table_range: TABLE_RANGE.contains(&d),
        })
    })
}

/// Admissible `y` for the eight-step translation:
/// `-R+1 <= y <= R-7`, `y ≡ R-1 (mod 6)`, `R = (d+1)/2`.
pub fn eight_step_ys(d: usize) -> Vec<i64> {
    let r = (d as i64 + 1) / 2;
    (-r + 1..=r - 7)
        .filter(|y| (y - (r - 1)).rem_euclid(6) == 0)
        .collect()
}

/// Checks `h_d^8(R+1, y) = (R+1, y+6)` and that the intermediate points
/// follow the chain through `(y,-R-1)`, `(-R-1,-y-2)`, `(-y-2,R)`,
/// `(R,y+3)`, `(y+3,-R)`, `(-R,-y-4)`, `(-y-4,R+1)`.
///
/// The third iterate has second coordinate `R + 1 + s_d(-y-2) = R`, since
/// `y + 2 ≡ R - 5 (mod 6)` puts `s_d(y+2) = 1`.
pub fn verify_eight_step_translation(d: usize, y: i64) -> Result<bool> {
    if d % 6 != 1 {
        return Err(arg_err!(
            "eight-step translation needs d ≡ 1 mod 6, got {d}"
        ));
    }
    if !eight_step_ys(d).contains(&y) {
        return Err(arg_err!("y = {y} is not admissible for d = {d}"));
    }
    let map = HenonMap::standard(d)?;
    let r = (d as i64 + 1) / 2;
    let chain = [
        (y, -r - 1),
        (-r - 1, -y - 2),
        (-y - 2, r),
        (r, y + 3),
        (y + 3, -r),
        (-r, -y - 4),
        (-y - 4, r + 1),
        (r + 1, y + 6),
    ];
    let mut p = LatticePoint::new(r + 1, y);
    for expected in chain {
        p = map.step(p)?;
        if p != LatticePoint::from(expected) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of following escaped orbits past the threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EscapeAudit {
    pub checked: usize,
    pub violations: Vec<LatticePoint>,
}

/// For every `stride`-th escaping point of the search box, follows the orbit
/// exactly beyond the threshold until its sup-norm reaches 4× the threshold,
/// requiring the norm to increase strictly at every step.
pub fn audit_escapes(map: &HenonMap, stride: usize, exec: Exec) -> Result<EscapeAudit> {
    let b = map.search_box();
    let starts: Vec<LatticePoint> = (-b..=b)
        .flat_map(|x| (-b..=b).map(move |y| LatticePoint::new(x, y)))
        .step_by(stride.max(1))
        .collect();
    let s = s_product_form(map.d());
    let horizon = BigInt::from(4 * map.threshold());
    let threshold = BigInt::from(map.threshold());
    let c = int(map.shift());
    let results = exec.try_map(&starts, |&p| -> Result<Option<bool>> {
        let mut q = p;
        let Outcome::Escapes(steps) = map.classify(p)? else {
            return Ok(None);
        };
        for _ in 0..steps {
            q = map.step(q)?;
        }
        let (mut x, mut y) = (int(q.x), int(q.y));
        let norm = |x: &ExactRational, y: &ExactRational| x.abs().max(y.abs()).to_integer();
        let mut current = norm(&x, &y);
        if current < threshold {
            return Ok(Some(false));
        }
        for _ in 0..16 {
            if current >= horizon {
                return Ok(Some(true));
            }
            let sv = s.eval(&(&y + &c));
            (x, y) = match map.orientation() {
                Orientation::Standard => (y.clone(), sv - &x),
                Orientation::Swapped => (-y.clone(), &x + sv),
            };
            let next = norm(&x, &y);
            if next <= current {
                return Ok(Some(false));
            }
            current = next;
        }
        Ok(Some(current >= horizon))
    })?;
    let mut audit = EscapeAudit {
        checked: 0,
        violations: Vec::new(),
    };
    for (p, r) in starts.iter().zip(results) {
        match r {
            Some(true) => audit.checked += 1,
            Some(false) => {
                audit.checked += 1;
                audit.violations.push(*p);
            }
            None => {}
        }
    }
    Ok(audit)
}
