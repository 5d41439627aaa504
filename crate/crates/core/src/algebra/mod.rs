//! Exact arithmetic over ℚ, ℚ[y^±1], ℚ[y^±1, t^±1] and its fraction field.

mod bilaurent;
mod laurent;
mod ops;
mod parse;
mod ratfunc;
mod render;
mod unipoly;

pub use bilaurent::BiLaurent;
pub use laurent::LaurentPoly;
pub use parse::ParsePolyError;
pub use ratfunc::{RatFunc, RatFuncError};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored in lowest terms.
pub type BigRat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Sign of a rational as -1, 0 or 1.
pub fn sgn(q: &BigRat) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// κ(x) = (-1)^x (y^x - y^-x) / (y - y^-1).
pub fn kappa(x: i64) -> LaurentPoly {
    if x == 0 {
        return LaurentPoly::zero();
    }
    let n = x.abs();
    let parity = if n % 2 == 0 { 1 } else { -1 };
    let sign = if x > 0 { parity } else { -parity };
    let c = int(sign);
    LaurentPoly::from_terms((0..n).map(|j| (n - 1 - 2 * j, c.clone())))
}

/// (1/k)(y - y^-1)/(y^k - y^-k).
pub fn multicover_weight(k: i64) -> RatFunc {
    assert!(k >= 1);
    let num = BiLaurent::from_terms([((1, 0), int(1)), ((-1, 0), int(-1))]);
    let den = BiLaurent::from_terms([((k, 0), int(1)), ((-k, 0), int(-1))]);
    let w = RatFunc::new(num, den).expect("nonzero denominator");
    w.scale(&rat(1, k))
}

pub(crate) fn is_integer(q: &BigRat) -> bool {
    q.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(e: i64) -> LaurentPoly {
        LaurentPoly::monomial(int(1), e)
    }

    #[test]
    fn kappa_small_values() {
        assert!(kappa(0).is_zero());
        assert_eq!(kappa(1), LaurentPoly::constant(int(-1)));
        assert_eq!(kappa(2), &y(1) + &y(-1));
        assert_eq!(kappa(-3), &(&y(2) + &y(0)) + &y(-2));
        assert_eq!(kappa(3), -&kappa(-3));
    }

    #[test]
    fn kappa_matches_closed_form() {
        // (y - y^-1) κ(x) = (-1)^x (y^x - y^-x)
        let d = &y(1) - &y(-1);
        for x in -9i64..=9 {
            let s = if x.rem_euclid(2) == 0 { 1 } else { -1 };
            let rhs = (&y(x) - &y(-x)).scale(&int(s));
            assert_eq!(&d * &kappa(x), rhs, "x = {x}");
        }
    }

    #[test]
    fn multicover_weight_k2() {
        // (y - y^-1)/(y^2 - y^-2) / 2 = 1/(2(y + y^-1))
        let w = multicover_weight(2);
        let expect = RatFunc::new(
            BiLaurent::constant(int(1)),
            BiLaurent::from_terms([((1, 0), int(2)), ((-1, 0), int(2))]),
        )
        .unwrap();
        assert_eq!(w, expect);
        assert_eq!(multicover_weight(1), RatFunc::one());
    }
}
