//! The integer-valued sine/cosine polynomial families.
//!
//! `c_d(x) = (1/d!) * prod_{i=0}^{d-1} (x + (d-1)/2 - i)` is the centred
//! binomial polynomial. Alternating sums of same-parity `c_j` give `s_d`,
//! and an affine change of variable turns `s_d` into the compressing
//! polynomial `r_d`.
//!
//! A [`PolyExact`] always carries its expanded monomial coefficients. Members
//! of the family additionally carry a [`ProductForm`] over the `c_j` basis,
//! which evaluates through integer products instead of the coefficient
//! expansion. The two must agree everywhere.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{int, rat, to_i64_exact, ExactRational};
use crate::error::{arg_err, internal_err, Result};

/// `sign * c_index` in a product-basis expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisTerm {
    pub sign: i8,
    pub index: usize,
}

/// `sum(sign * c_index(x - shift)) + linear[0] + linear[1] * x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductForm {
    pub terms: Vec<BasisTerm>,
    pub shift: ExactRational,
    pub linear: [ExactRational; 2],
}

impl ProductForm {
    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        let y = x - &self.shift;
        eval_basis_sum(&self.terms, &y) + &self.linear[0] + &self.linear[1] * x
    }
}

/// Evaluates `sum(sign * c_j(y))` over a common denominator.
///
/// With `y = a/n`, `c_j(y) = P_j / (j! (2n)^j)` where `P_j` is a product of
/// `j` integers. Each parity forms its own chain
/// `P_{j+2} = P_j (2a - n(j+1)) (2a + n(j+1))`.
fn eval_basis_sum(terms: &[BasisTerm], y: &ExactRational) -> ExactRational {
    let Some(top) = terms.iter().map(|t| t.index).max() else {
        return ExactRational::zero();
    };
    let a = y.numer();
    let n = y.denom();
    let two_a: BigInt = a * 2;
    let two_n: BigInt = n * 2;

    // scaled[j] = P_j for every j <= top
    let mut scaled: Vec<BigInt> = Vec::with_capacity(top + 1);
    for j in 0..=top {
        let p = match j {
            0 => BigInt::one(),
            1 => two_a.clone(),
            _ => {
                let k: BigInt = n * (j as i64 - 1);
                &scaled[j - 2] * (&two_a - &k) * (&two_a + &k)
            }
        };
        scaled.push(p);
    }

    // weight_j = top!/j! * (2n)^(top-j), built downward from j = top
    let mut weights = vec![BigInt::zero(); top + 1];
    let mut w = BigInt::one();
    for j in (0..=top).rev() {
        weights[j] = w.clone();
        w = w * BigInt::from(j) * &two_n;
    }
    let mut num = BigInt::zero();
    for t in terms {
        let term = &scaled[t.index] * &weights[t.index];
        if t.sign < 0 {
            num -= term;
        } else {
            num += term;
        }
    }
    let mut den = crate::arith::factorial(top as u64);
    den *= num_traits::pow(two_n, top);
    BigRational::new(num, den)
}

/// A univariate polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyExact {
    coeffs: Vec<ExactRational>,
    product: Option<ProductForm>,
}

impl PolyExact {
    /// Builds from ascending monomial coefficients.
    pub fn from_coeffs(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyExact {
            coeffs,
            product: None,
        }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::from_coeffs(Vec::new())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn identity() -> Self {
        Self::from_coeffs(vec![int(0), int(1)])
    }

    fn with_product(mut self, product: ProductForm) -> Self {
        self.product = Some(product);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ExactRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    pub fn leading_coeff(&self) -> ExactRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    pub fn product_form(&self) -> Option<&ProductForm> {
        self.product.as_ref()
    }

    /// Drops the product basis, leaving only the monomial form.
    pub fn monomial_only(&self) -> Self {
        Self::from_coeffs(self.coeffs.clone())
    }

    /// Exact value, through the product basis when present.
    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        match &self.product {
            Some(p) => p.eval(x),
            None => self.eval_monomial(x),
        }
    }

    /// Horner evaluation over integers: with `x = a/n` and `L` the common
    /// denominator of the coefficients, `f(x) L n^deg = sum N_k a^k n^(deg-k)`.
    pub fn eval_monomial(&self, x: &ExactRational) -> ExactRational {
        if self.coeffs.is_empty() {
            return ExactRational::zero();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let a = x.numer();
        let n = x.denom();
        let mut acc = BigInt::zero();
        let mut n_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            let scaled = c.numer() * (&lcm / c.denom());
            acc = acc * a + scaled * &n_pow;
            n_pow *= n;
        }
        // n_pow is now n^(deg+1) and acc = L n^deg f(x)
        BigRational::new(acc * n, lcm * n_pow)
    }

    pub fn eval_int(&self, x: i64) -> ExactRational {
        self.eval(&int(x))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * int(k as i64))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// `x -> self(x + h)` on the monomial coefficients.
    pub fn translate(&self, h: &ExactRational) -> Self {
        // repeated synthetic division by (x - (-h)) gives Taylor coefficients
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * h;
                c[j] += t;
            }
        }
        let mut out = Self::from_coeffs(c);
        if let Some(p) = &self.product {
            // f(x) = B(x - s) + l0 + l1 x  =>  f(x + h) = B(x - (s - h)) + (l0 + l1 h) + l1 x
            out.product = Some(ProductForm {
                terms: p.terms.clone(),
                shift: &p.shift - h,
                linear: [&p.linear[0] + &p.linear[1] * h, p.linear[1].clone()],
            });
        }
        out
    }

    pub fn scale(&self, k: &ExactRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// True iff every coefficient times `m` is an integer.
    pub fn coeffs_are_multiples_of_inverse(&self, m: &BigInt) -> bool {
        let m = BigRational::from_integer(m.clone());
        self.coeffs.iter().all(|c| (c * &m).is_integer())
    }
}

impl std::ops::Add for &PolyExact {
    type Output = PolyExact;
    fn add(self, rhs: &PolyExact) -> PolyExact {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyExact::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl std::ops::Sub for &PolyExact {
    type Output = PolyExact;
    fn sub(self, rhs: &PolyExact) -> PolyExact {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyExact::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl std::ops::Mul for &PolyExact {
    type Output = PolyExact;
    fn mul(self, rhs: &PolyExact) -> PolyExact {
        if self.is_zero() || rhs.is_zero() {
            return PolyExact::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyExact::from_coeffs(out)
    }
}

/// Prints e.g. `x^3/6 - 7x/6`.
impl fmt::Display for PolyExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let num = c.numer().abs();
            let den = c.denom();
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 || !num.is_one() {
                write!(f, "{num}")?;
            }
            write!(f, "{var}")?;
            if !den.is_one() {
                write!(f, "/{den}")?;
            }
        }
        Ok(())
    }
}

/// Monomial expansions of `c_0 ..= c_top`.
fn c_chain(top: usize) -> Vec<PolyExact> {
    let mut out: Vec<PolyExact> = Vec::with_capacity(top + 1);
    for j in 0..=top {
        let p = match j {
            0 => PolyExact::constant(int(1)),
            1 => PolyExact::identity(),
            _ => {
                // c_j = c_{j-2} * (x^2 - ((j-1)/2)^2) / ((j-1) j)
                let half = rat(j as i64 - 1, 2);
                let quad = PolyExact::from_coeffs(vec![-(&half * &half), int(0), int(1)]);
                (&out[j - 2] * &quad).scale(&rat(1, (j as i64 - 1) * j as i64))
            }
        };
        out.push(p);
    }
    out
}

fn with_basis(p: PolyExact, terms: Vec<BasisTerm>) -> PolyExact {
    p.with_product(ProductForm {
        terms,
        shift: int(0),
        linear: [int(0), int(0)],
    })
}

/// The centred binomial polynomial `c_d`.
pub fn build_c(d: usize) -> PolyExact {
    let chain = c_chain(d);
    let c = chain.into_iter().next_back().expect("chain is nonempty");
    with_basis(c, vec![BasisTerm { sign: 1, index: d }])
}

fn s_terms(d: usize) -> Vec<BasisTerm> {
    (d % 2..=d)
        .step_by(2)
        .map(|j| BasisTerm {
            sign: if ((d - j) / 2).is_multiple_of(2) {
                1
            } else {
                -1
            },
            index: j,
        })
        .collect()
}

/// Product-basis form of `s_d`, without building the monomial expansion.
pub fn s_product_form(d: usize) -> ProductForm {
    ProductForm {
        terms: s_terms(d),
        shift: int(0),
        linear: [int(0), int(0)],
    }
}

/// `s_d = sum_j (-1)^((d-j)/2) c_j` over `j ≡ d (mod 2)`.
pub fn build_s(d: usize) -> PolyExact {
    build_s_family(d).pop().expect("family is nonempty")
}

/// `s_d` for every degree `0 ..= top`, sharing one `c_j` chain.
pub fn build_s_family(top: usize) -> Vec<PolyExact> {
    // s_d = c_d - s_{d-2}
    let chain = c_chain(top);
    let mut mono: Vec<PolyExact> = Vec::with_capacity(top + 1);
    for (d, c) in chain.iter().enumerate() {
        let s = if d < 2 {
            c.monomial_only()
        } else {
            c - &mono[d - 2]
        };
        mono.push(s);
    }
    mono.into_iter()
        .enumerate()
        .map(|(d, p)| with_basis(p, s_terms(d)))
        .collect()
}

/// The compressing polynomial `r_d`, integer-valued on the integers.
pub fn build_r(d: usize) -> Result<PolyExact> {
    if d < 2 {
        return Err(arg_err!("r_d requires d >= 2, got {d}"));
    }
    let shift = int(3) + rat(d as i64 + 1, 2);
    let base = build_s(d).translate(&-shift);
    let extra = if d.is_multiple_of(2) {
        PolyExact::constant(int(2))
    } else {
        PolyExact::from_coeffs(vec![int(d as i64 + 6), int(-1)])
    };
    let mut r = &base.monomial_only() + &extra;
    let p = base.product.expect("translate keeps the product form");
    r.product = Some(ProductForm {
        terms: p.terms,
        shift: p.shift,
        linear: [&p.linear[0] + extra.coeff(0), &p.linear[1] + extra.coeff(1)],
    });
    Ok(r)
}

/// `δf(x) = f(x + 1/2) - f(x - 1/2)`.
///
/// The product form maps through `δ c_j = c_{j-1}`; the monomial form is
/// computed independently by translation.
pub fn central_difference(f: &PolyExact) -> PolyExact {
    let half = rat(1, 2);
    let mut out = &f.translate(&half).monomial_only() - &f.translate(&-half).monomial_only();
    if let Some(p) = &f.product {
        out.product = Some(ProductForm {
            terms: p
                .terms
                .iter()
                .filter(|t| t.index > 0)
                .map(|t| BasisTerm {
                    sign: t.sign,
                    index: t.index - 1,
                })
                .collect(),
            shift: p.shift.clone(),
            linear: [p.linear[1].clone(), int(0)],
        });
    }
    out
}

/// The 6-periodic sequence `0, 1, 1, 0, -1, -1` on all of ℤ.
pub fn sigma(m: i64) -> i64 {
    const VALUES: [i64; 6] = [0, 1, 1, 0, -1, -1];
    VALUES[m.rem_euclid(6) as usize]
}

/// Exact integer values of `s_d` on `[-bound, bound]` for odd `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdTable {
    d: usize,
    bound: i64,
    values: Vec<i64>,
}

impl SdTable {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    #[inline]
    pub fn get(&self, m: i64) -> Option<i64> {
        if m.abs() > self.bound {
            return None;
        }
        Some(self.values[(m + self.bound) as usize])
    }

    /// `(m, s_d(m))` pairs in increasing `m`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (i as i64 - self.bound, v))
    }
}

/// Tabulates `s_d` on `[-bound, bound]`, asserting integrality, odd
/// symmetry, and agreement with `σ(m + 3(d-1)/2)` on `|m| <= (d+1)/2`.
pub fn build_sd_table(d: usize, bound: i64) -> Result<SdTable> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(arg_err!("s_d table requires odd d >= 3, got {d}"));
    }
    let min_bound = (d as i64 + 5) / 2;
    if bound < min_bound {
        return Err(arg_err!("table bound {bound} below (d+5)/2 = {min_bound}"));
    }
    let s = build_s(d);
    let mut values = Vec::with_capacity(2 * bound as usize + 1);
    for m in -bound..=bound {
        let v = s.eval_int(m);
        let v = to_i64_exact(&v)
            .ok_or_else(|| internal_err!("s_{d}({m}) = {v} is not a machine integer"))?;
        values.push(v);
    }
    let table = SdTable { d, bound, values };
    let half = (d as i64 + 1) / 2;
    let offset = 3 * (d as i64 - 1) / 2;
    for (m, v) in table.iter() {
        if table.get(-m) != Some(-v) {
            return Err(internal_err!("s_{d} is not odd at m = {m}"));
        }
        if m.abs() <= half && v != sigma(m + offset) {
            return Err(internal_err!(
                "s_{d}({m}) = {v} disagrees with sigma({}) = {}",
                m + offset,
                sigma(m + offset)
            ));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorial;

    fn poly(c: &[(i64, i64)]) -> PolyExact {
        PolyExact::from_coeffs(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn c_examples() {
        assert_eq!(build_c(1).monomial_only(), PolyExact::identity());
        let c3 = build_c(3);
        assert_eq!(c3.monomial_only(), poly(&[(0, 1), (-1, 6), (0, 1), (1, 6)]));
        assert_eq!(c3.eval_int(2), int(1));
        let c2 = build_c(2);
        assert_eq!(c2.monomial_only(), poly(&[(-1, 8), (0, 1), (1, 2)]));
        assert_eq!(c2.eval(&rat(1, 2)), int(0));
        assert_eq!(build_c(0).monomial_only(), PolyExact::constant(int(1)));
    }

    #[test]
    fn s_examples() {
        assert_eq!(build_s(1).monomial_only(), PolyExact::identity());
        assert_eq!(
            build_s(3).monomial_only(),
            poly(&[(0, 1), (-7, 6), (0, 1), (1, 6)])
        );
        // x - x(x^2-1)/6 + x(x^2-1)(x^2-4)/120, expanded by hand
        let s5 = poly(&[(0, 1), (1, 1), (0, 1), (0, 1), (0, 1), (0, 1)]);
        let x3 = poly(&[(0, 1), (-1, 6), (0, 1), (1, 6)]);
        let x5 = poly(&[(0, 1), (4, 120), (0, 1), (-5, 120), (0, 1), (1, 120)]);
        let expected = &(&s5 - &x3) + &x5;
        assert_eq!(build_s(5).monomial_only(), expected);
        for m in -3i64..=3 {
            assert_eq!(build_s(5).eval_int(m), int(sigma(m + 6)));
        }
    }

    #[test]
    fn r_examples() {
        let r2 = build_r(2).unwrap();
        assert_eq!(r2.monomial_only(), poly(&[(11, 1), (-9, 2), (1, 2)]));
        assert_eq!(r2.eval_int(1), int(7));
        for d in (3..=15).step_by(2) {
            let r = build_r(d).unwrap();
            for i in 1..=(d as i64 + 6) {
                let v = r.eval_int(i);
                assert!(v >= int(1) && v <= int(d as i64 + 4), "r_{d}({i}) = {v}");
            }
        }
        assert!(build_r(1).is_err());
    }

    #[test]
    fn central_difference_examples() {
        assert!(central_difference(&PolyExact::constant(int(5))).is_zero());
        let sq = poly(&[(0, 1), (0, 1), (1, 1)]);
        assert_eq!(central_difference(&sq), poly(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn central_difference_lowers_s() {
        let fam = build_s_family(51);
        for d in 1..=50 {
            let delta = central_difference(&fam[d + 1]);
            assert_eq!(delta.coeffs(), fam[d].coeffs(), "d={d}");
            assert_eq!(
                delta.product_form().unwrap().terms,
                fam[d].product_form().unwrap().terms
            );
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(build_s(3).eval_int(2), int(-1));
        assert_eq!(build_s(1).eval_int(5), int(5));
        assert_eq!(build_s(7).eval_int(6), int(9));
    }

    #[test]
    fn both_forms_agree() {
        let pts: Vec<ExactRational> = (0..20).map(|k| rat(7 * k - 61, 1 + (k % 5) * 3)).collect();
        for d in 0..=25 {
            let s = build_s(d);
            for x in &pts {
                assert_eq!(s.eval(x), s.eval_monomial(x), "s_{d}({x})");
            }
        }
        for d in 2..=12 {
            let r = build_r(d).unwrap();
            for x in &pts {
                assert_eq!(r.eval(x), r.eval_monomial(x), "r_{d}({x})");
            }
        }
    }

    #[test]
    fn s_odd_has_only_odd_powers() {
        let fam = build_s_family(41);
        for d in (1..=41).step_by(2) {
            for (k, c) in fam[d].coeffs().iter().enumerate() {
                if k % 2 == 0 {
                    assert!(c.is_zero(), "s_{d} has x^{k}");
                }
            }
        }
    }

    #[test]
    fn leading_coefficient_and_denominators() {
        let fam = build_s_family(100);
        for (d, s) in fam.iter().enumerate().skip(1) {
            let fact = factorial(d as u64);
            assert_eq!(
                s.leading_coeff(),
                BigRational::new(BigInt::one(), fact.clone())
            );
            // even degrees carry the half-integer roots, so only odd d is integral over 1/d!
            if d % 2 == 1 {
                assert!(s.coeffs_are_multiples_of_inverse(&fact), "d={d}");
            }
        }
    }

    #[test]
    fn integer_valued_on_correct_coset() {
        for d in 1..=20usize {
            let s = build_s(d);
            let off = if d % 2 == 0 { rat(1, 2) } else { int(0) };
            for m in -(d as i64 + 5)..=(d as i64 + 5) {
                assert!(s.eval(&(int(m) + &off)).is_integer(), "s_{d}({m} + {off})");
            }
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!((sigma(0), sigma(1), sigma(2)), (0, 1, 1));
        assert_eq!(sigma(-1), -1);
        for k in -5..5 {
            assert_eq!(sigma(6 * k), 0);
            assert_eq!(sigma(k + 3), -sigma(k));
        }
    }

    #[test]
    fn sd_table_examples() {
        let t = build_sd_table(7, 8).unwrap();
        let got: Vec<i64> = (2..=6).map(|m| t.get(m).unwrap()).collect();
        assert_eq!(got, vec![-1, 0, 1, 2, 9]);
        assert_eq!(t.get(0), Some(0));
        assert_eq!(build_sd_table(3, 4).unwrap().get(2), Some(-1));
        assert_eq!(t.get(9), None);
        assert!(build_sd_table(8, 10).is_err());
        assert!(build_sd_table(7, 5).is_err());
    }

    #[test]
    fn display_format() {
        assert_eq!(build_s(3).to_string(), "x^3/6 - 7x/6");
        assert_eq!(build_r(2).unwrap().to_string(), "x^2/2 - 9x/2 + 11");
        assert_eq!(PolyExact::zero().to_string(), "0");
        assert_eq!(poly(&[(-1, 1), (0, 1), (-1, 1)]).to_string(), "-x^2 - 1");
    }
}
