//! The integer lattice maps `h_{d,c}` and orbit classification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{arg_err, internal_err, Result};
use crate::poly::{build_sd_table, SdTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    /// `max(|x|, |y|)`
    #[inline]
    pub fn sup_norm(self) -> i64 {
        self.x.abs().max(self.y.abs())
    }
}

impl std::ops::Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> Self {
        LatticePoint::new(-self.x, -self.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        LatticePoint::new(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `(x, y) -> (y, -x + s_d(y + c))`
    #[default]
    Standard,
    /// `(x, y) -> (-y, x + s_d(y + c))`, the shifted form as printed.
    Swapped,
}

/// Result of following a forward orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    /// The orbit returned to its start after `period` steps.
    Periodic(usize),
    /// The orbit reached the escape threshold after `steps` steps.
    Escapes(usize),
}

impl Outcome {
    pub fn is_periodic(self) -> bool {
        matches!(self, Outcome::Periodic(_))
    }
}

/// `R` such that every integer point with `max(|x|,|y|) <= R` is periodic
/// under `h_d`, by `d mod 6`.
pub fn periodic_radius(d: usize) -> Result<i64> {
    check_odd(d)?;
    let half = (d as i64 + 1) / 2;
    Ok(match d % 6 {
        1 => half,
        3 => half - 2,
        _ => half - 3,
    })
}

fn check_odd(d: usize) -> Result<()> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(arg_err!("Henon maps need odd d >= 3, got {d}"));
    }
    Ok(())
}

/// `h_{d,c}` on `ℤ²`, with `s_d` tabulated over every argument a
/// non-escaped point can query.
#[derive(Debug, Clone)]
pub struct HenonMap {
    d: usize,
    shift: i64,
    orientation: Orientation,
    threshold: i64,
    table: SdTable,
}

impl HenonMap {
    pub fn new(d: usize, shift: i64, orientation: Orientation) -> Result<Self> {
        check_odd(d)?;
        if shift.abs() > 1 << 12 {
            return Err(arg_err!("shift {shift} out of range"));
        }
        let threshold = (d as i64 + 7) / 2 + shift.abs();
        let table = build_sd_table(d, threshold + shift.abs())?;
        Ok(HenonMap {
            d,
            shift,
            orientation,
            threshold,
            table,
        })
    }

    /// The plain map `h_d`.
    pub fn standard(d: usize) -> Result<Self> {
        Self::new(d, 0, Orientation::Standard)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Sup-norm at which an orbit is declared escaping: `(d+7)/2 + |c|`.
    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    /// Half-width of the box that contains every periodic point.
    pub fn search_box(&self) -> i64 {
        self.threshold - 1
    }

    pub fn table(&self) -> &SdTable {
        &self.table
    }

    #[inline]
    fn s(&self, arg: i64) -> Result<i64> {
        self.table
            .get(arg)
            .ok_or_else(|| internal_err!("s_{} queried at {arg}, outside the table", self.d))
    }

    #[inline]
    pub fn step(&self, p: LatticePoint) -> Result<LatticePoint> {
        let s = self.s(p.y + self.shift)?;
        Ok(match self.orientation {
            Orientation::Standard => LatticePoint::new(p.y, s - p.x),
            Orientation::Swapped => LatticePoint::new(-p.y, p.x + s),
        })
    }

    pub fn inverse_step(&self, p: LatticePoint) -> Result<LatticePoint> {
        Ok(match self.orientation {
            Orientation::Standard => LatticePoint::new(self.s(p.x + self.shift)? - p.y, p.x),
            Orientation::Swapped => LatticePoint::new(p.y - self.s(self.shift - p.x)?, -p.x),
        })
    }

    /// Steps after which a non-escaping orbit must have closed.
    pub fn iteration_cap(&self) -> usize {
        let side = (2 * self.threshold + 1) as usize;
        side * side + 1
    }

    pub fn classify(&self, p: LatticePoint) -> Result<Outcome> {
        self.trace(p).map(|(o, _)| o)
    }

    /// Classifies `p` and returns the lexicographically least orbit point
    /// seen (the cycle representative when periodic).
    pub(crate) fn trace(&self, start: LatticePoint) -> Result<(Outcome, LatticePoint)> {
        if start.sup_norm() >= self.threshold {
            return Ok((Outcome::Escapes(0), start));
        }
        let mut least = start;
        let mut q = start;
        for n in 1..=self.iteration_cap() {
            q = self.step(q)?;
            if q.sup_norm() >= self.threshold {
                return Ok((Outcome::Escapes(n), least));
            }
            if q == start {
                return Ok((Outcome::Periodic(n), least));
            }
            least = least.min(q);
        }
        Err(internal_err!(
            "orbit of {start} neither closed nor escaped within {} steps",
            self.iteration_cap()
        ))
    }

    /// The forward orbit of a periodic point, starting at `p`.
    pub fn cycle_from(&self, p: LatticePoint) -> Result<Vec<LatticePoint>> {
        let mut points = vec![p];
        let mut q = self.step(p)?;
        while q != p {
            if q.sup_norm() >= self.threshold || points.len() > self.iteration_cap() {
                return Err(internal_err!("{p} is not periodic"));
            }
            points.push(q);
            q = self.step(q)?;
        }
        Ok(points)
    }
}
