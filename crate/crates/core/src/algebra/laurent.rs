use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::ops::{add_into, add_maps, forward_ops, mul_maps};
use super::{render, BiLaurent, BigRat};

/// Laurent polynomial in y with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigRat, exp: i64) -> Self {
        Self::from_terms([(exp, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRat)>>(terms: I) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            add_into(&mut map, e, &c);
        }
        LaurentPoly { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRat)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigRat {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        LaurentPoly { terms: add_maps(&self.terms, &o.terms, false) }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        LaurentPoly { terms: add_maps(&self.terms, &o.terms, true) }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        LaurentPoly { terms: mul_maps(&self.terms, &o.terms) }
    }

    pub fn neg_ref(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn scale(&self, s: &BigRat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect() }
    }

    /// Value at y = 1.
    pub fn eval_at_one(&self) -> BigRat {
        self.terms.values().fold(BigRat::zero(), |a, c| a + c)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(super::is_integer)
    }

    pub fn to_bilaurent(&self) -> BiLaurent {
        BiLaurent::from_terms(self.terms.iter().map(|(e, c)| ((*e, 0), c.clone())))
    }
}

forward_ops!(LaurentPoly);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::render_terms(self.terms.iter().map(|(e, c)| ((*e, 0), c))))
    }
}
