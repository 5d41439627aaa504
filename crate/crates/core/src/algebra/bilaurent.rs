use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::ops::{add_into, add_maps, forward_ops, mul_maps};
use super::{parse, render, BigRat, LaurentPoly, ParsePolyError};

/// Exponent pair (y-exponent, t-exponent).
pub type Exp2 = (i64, i64);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub(crate) struct E2(pub i64, pub i64);

impl std::ops::Add for E2 {
    type Output = E2;
    fn add(self, o: E2) -> E2 {
        E2(self.0 + o.0, self.1 + o.1)
    }
}

/// Laurent polynomial in (y, t) with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiLaurent {
    terms: BTreeMap<E2, BigRat>,
}

impl BiLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn monomial(c: BigRat, exp: Exp2) -> Self {
        Self::from_terms([(exp, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp2, BigRat)>>(terms: I) -> Self {
        let mut map = BTreeMap::new();
        for ((a, b), c) in terms {
            add_into(&mut map, E2(a, b), &c);
        }
        BiLaurent { terms: map }
    }

    /// Terms in ascending (y-exponent, t-exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (Exp2, &BigRat)> + '_ {
        self.terms.iter().map(|(e, c)| ((e.0, e.1), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&E2(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: Exp2) -> BigRat {
        self.terms.get(&E2(exp.0, exp.1)).cloned().unwrap_or_else(BigRat::zero)
    }

    /// Lexicographically smallest term.
    pub fn min_term(&self) -> Option<(Exp2, &BigRat)> {
        self.terms.iter().next().map(|(e, c)| ((e.0, e.1), c))
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        BiLaurent { terms: add_maps(&self.terms, &o.terms, false) }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        BiLaurent { terms: add_maps(&self.terms, &o.terms, true) }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        BiLaurent { terms: mul_maps(&self.terms, &o.terms) }
    }

    pub fn neg_ref(&self) -> Self {
        BiLaurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn scale(&self, s: &BigRat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        BiLaurent { terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect() }
    }

    /// Multiply by c·y^a·t^b.
    pub fn mul_monomial(&self, c: &BigRat, (a, b): Exp2) -> Self {
        BiLaurent {
            terms: self.terms.iter().map(|(e, x)| (E2(e.0 + a, e.1 + b), x * c)).collect(),
        }
    }

    /// f(y, t) ↦ f(y^k, t^k).
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k >= 1, "substitute_power needs k >= 1");
        BiLaurent { terms: self.terms.iter().map(|(e, c)| (E2(k * e.0, k * e.1), c.clone())).collect() }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(super::is_integer)
    }

    /// The polynomial as an element of ℚ[y^±1] if no t appears.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        if self.terms.keys().any(|e| e.1 != 0) {
            return None;
        }
        Some(LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (e.0, c.clone()))))
    }
}

forward_ops!(BiLaurent);

impl From<LaurentPoly> for BiLaurent {
    fn from(p: LaurentPoly) -> Self {
        p.to_bilaurent()
    }
}

impl From<&LaurentPoly> for BiLaurent {
    fn from(p: &LaurentPoly) -> Self {
        p.to_bilaurent()
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::render_terms(self.terms.iter().map(|(e, c)| ((e.0, e.1), c))))
    }
}

impl FromStr for BiLaurent {
    type Err = ParsePolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_bilaurent(s)
    }
}
