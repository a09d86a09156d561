use henon_lattice::arith::{
    factorial, factorial_padic_abs, factorial_valuation, int, padic_abs, padic_valuation,
    parse_rational, primes_up_to, rat, ExactRational,
};
use std::sync::OnceLock;

use henon_lattice::poly::{build_c, build_s, build_s_family, central_difference, sigma};
use henon_lattice::PolyExact;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn nonzero_rational() -> impl Strategy<Value = ExactRational> {
    (-100_000i64..100_000, 1i64..100_000)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| rat(n, d))
}

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn s(d: usize) -> &'static PolyExact {
    static FAMILY: OnceLock<Vec<PolyExact>> = OnceLock::new();
    &FAMILY.get_or_init(|| build_s_family(61))[d]
}

proptest! {
    #[test]
    fn padic_abs_is_multiplicative(a in nonzero_rational(), b in nonzero_rational()) {
        for p in PRIMES {
            let lhs = padic_abs(&(&a * &b), p).unwrap();
            let rhs = padic_abs(&a, p).unwrap() * padic_abs(&b, p).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn padic_abs_is_ultrametric(a in nonzero_rational(), b in nonzero_rational()) {
        for p in PRIMES {
            let sum = padic_abs(&(&a + &b), p).unwrap();
            let max = padic_abs(&a, p).unwrap().max(padic_abs(&b, p).unwrap());
            prop_assert!(sum <= max);
        }
    }

    #[test]
    fn product_formula(n in 1i64..10_000, d in 1i64..10_000, neg in any::<bool>()) {
        let q = rat(if neg { -n } else { n }, d);
        let mut prod = q.abs();
        for p in primes_up_to(10_000) {
            if padic_valuation(&q, p).unwrap() != 0 {
                prod *= padic_abs(&q, p).unwrap();
            }
        }
        prop_assert!(prod.is_one());
    }

    #[test]
    fn rationals_parse_back(n in -10_000i64..10_000, d in 1i64..10_000) {
        let q = rat(n, d);
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn difference_of_s_is_previous_s(d in 1usize..40, n in -200i64..200, den in 1i64..50) {
        let x = rat(n, den);
        let half = rat(1, 2);
        let lhs = s(d + 1).eval(&(&x + &half)) - s(d + 1).eval(&(&x - &half));
        prop_assert_eq!(lhs, s(d).eval(&x));
    }

    #[test]
    fn product_and_monomial_forms_agree(d in 1usize..60, n in -500i64..500, den in 1i64..20) {
        let x = rat(n, den);
        prop_assert_eq!(s(d).eval(&x), s(d).eval_monomial(&x));
    }

    #[test]
    fn odd_s_is_integer_valued(k in 1usize..30, m in -300i64..300) {
        let v = s(2 * k + 1).eval_int(m);
        prop_assert!(v.is_integer());
    }
}

#[test]
fn legendre_matches_factorial() {
    for d in 1..=40u64 {
        let f = ExactRational::from_integer(factorial(d));
        for p in [2, 3, 5, 7, 11, 13, 17] {
            assert_eq!(
                padic_valuation(&f, p).unwrap(),
                factorial_valuation(d, p) as i64
            );
            assert_eq!(
                padic_abs(&f, p).unwrap(),
                factorial_padic_abs(d, p).unwrap()
            );
        }
    }
}

#[test]
fn central_difference_lowers_the_index() {
    for j in 1..=25 {
        let diff = central_difference(&build_c(j));
        for m in -10..=10 {
            let x = rat(m, 3);
            assert_eq!(diff.eval(&x), build_c(j - 1).eval(&x), "j={j}");
        }
    }
}

#[test]
fn odd_s_follows_sigma_near_the_origin() {
    for d in (1..=99).step_by(2) {
        let s = build_s(d);
        let half = (d as i64 + 1) / 2;
        let shift = 3 * (d as i64 - 1) / 2;
        for m in -half..=half {
            assert_eq!(s.eval_int(m), int(sigma(m - shift)), "d={d} m={m}");
        }
    }
}

#[test]
fn zero_has_no_valuation() {
    assert!(padic_valuation(&ExactRational::zero(), 3).is_err());
    assert!(padic_abs(&ExactRational::zero(), 3).unwrap().is_zero());
    assert!(padic_valuation(&int(12), 4).is_err());
}
