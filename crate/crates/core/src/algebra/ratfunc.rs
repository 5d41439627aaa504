use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use super::bilaurent::Exp2;
use super::ops::forward_ops;
use super::unipoly::UniPoly;
use super::{BiLaurent, BigRat, LaurentPoly, ParsePolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RatFuncError {
    #[error("division by the zero function")]
    ZeroDenominator,
}

/// Element of ℚ(y, t) stored as a normalized fraction of Laurent polynomials.
///
/// The denominator's lexicographically smallest term is always exactly `1`.
/// Common factors are cancelled when the denominator involves y only (the
/// case for every quantity built from κ and multicover weights); otherwise
/// equality still holds exactly through cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: BiLaurent,
    den: BiLaurent,
}

fn y_poly(terms: &[(i64, BigRat)], shift: i64) -> UniPoly {
    let top = terms.iter().map(|(e, _)| e - shift).max().unwrap_or(0);
    let mut c = vec![BigRat::zero(); (top + 1) as usize];
    for (e, x) in terms {
        c[(e - shift) as usize] = x.clone();
    }
    UniPoly::new(c)
}

fn from_y_poly(p: &UniPoly, shift: i64, t: i64) -> impl Iterator<Item = (Exp2, BigRat)> + '_ {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(move |(i, c)| ((i as i64 + shift, t), c.clone()))
}

/// Cancel the gcd when the denominator is a y-polynomial up to a monomial.
fn cancel_common(num: BiLaurent, den: BiLaurent) -> (BiLaurent, BiLaurent) {
    let tb = den.min_term().map(|((_, b), _)| b).unwrap_or(0);
    if den.len() < 2 || den.terms().any(|((_, b), _)| b != tb) {
        return (num, den);
    }
    let dterms: Vec<(i64, BigRat)> = den.terms().map(|((a, _), c)| (a, c.clone())).collect();
    let dshift = dterms[0].0;
    let dpoly = y_poly(&dterms, dshift);
    let mut groups: BTreeMap<i64, Vec<(i64, BigRat)>> = BTreeMap::new();
    for ((a, b), c) in num.terms() {
        groups.entry(b).or_default().push((a, c.clone()));
    }
    let mut polys = Vec::with_capacity(groups.len());
    let mut g = dpoly.clone();
    for (b, ts) in &groups {
        let shift = ts.iter().map(|(a, _)| *a).min().unwrap();
        let p = y_poly(ts, shift);
        if !g.is_constant() {
            g = UniPoly::gcd(&g, &p);
        }
        polys.push((*b, shift, p));
    }
    if g.is_constant() {
        return (num, den);
    }
    let (dq, _) = dpoly.div_rem(&g);
    let new_den = BiLaurent::from_terms(from_y_poly(&dq, dshift, tb).collect::<Vec<_>>());
    let mut nt = Vec::new();
    for (b, shift, p) in &polys {
        let (q, _) = p.div_rem(&g);
        nt.extend(from_y_poly(&q, *shift, *b));
    }
    (BiLaurent::from_terms(nt), new_den)
}

impl RatFunc {
    pub fn new(num: BiLaurent, den: BiLaurent) -> Result<Self, RatFuncError> {
        if den.is_zero() {
            return Err(RatFuncError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: BiLaurent, den: BiLaurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        let (num, den) = cancel_common(num, den);
        let ((a, b), c) = den.min_term().map(|(e, c)| (e, c.clone())).expect("nonzero");
        let inv = c.recip();
        RatFunc { num: num.mul_monomial(&inv, (-a, -b)), den: den.mul_monomial(&inv, (-a, -b)) }
    }

    pub fn zero() -> Self {
        RatFunc { num: BiLaurent::zero(), den: BiLaurent::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: BiLaurent::one(), den: BiLaurent::one() }
    }

    pub fn from_poly(p: BiLaurent) -> Self {
        RatFunc { num: p, den: BiLaurent::one() }
    }

    pub fn from_rat(c: BigRat) -> Self {
        Self::from_poly(BiLaurent::constant(c))
    }

    pub fn numer(&self) -> &BiLaurent {
        &self.num
    }

    pub fn denom(&self) -> &BiLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The underlying Laurent polynomial, if the denominator has cancelled.
    pub fn as_polynomial(&self) -> Option<&BiLaurent> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            return Self::normalized(&self.num + &o.num, self.den.clone());
        }
        Self::normalized(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::normalized(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn neg_ref(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, s: &BigRat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Self, RatFuncError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self, RatFuncError> {
        Ok(self.mul_ref(&o.recip()?))
    }

    /// f(y, t) ↦ f(y^k, t^k).
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::normalized(self.num.substitute_power(k), self.den.substitute_power(k))
    }
}

forward_ops!(RatFunc);

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for RatFunc {}

impl From<BiLaurent> for RatFunc {
    fn from(p: BiLaurent) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<&LaurentPoly> for RatFunc {
    fn from(p: &LaurentPoly) -> Self {
        RatFunc::from_poly(p.to_bilaurent())
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_poly(p.to_bilaurent())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl FromStr for RatFunc {
    type Err = ParsePolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('(') {
            if let Some((n, d)) = rest.split_once(")/(") {
                if let Some(d) = d.strip_suffix(')') {
                    let num: BiLaurent = n.parse()?;
                    let den: BiLaurent = d.parse()?;
                    return RatFunc::new(num, den).map_err(|e| ParsePolyError {
                        input: s.to_string(),
                        reason: e.to_string(),
                    });
                }
            }
        }
        Ok(RatFunc::from_poly(t.parse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn bl(s: &str) -> BiLaurent {
        s.parse().unwrap()
    }

    fn rf(n: &str, d: &str) -> RatFunc {
        RatFunc::new(bl(n), bl(d)).unwrap()
    }

    #[test]
    fn add_zero_is_identity() {
        let f = rf("y + t", "1 + y^2");
        assert_eq!(&f + &RatFunc::zero(), f);
    }

    #[test]
    fn multicover_factor_cancels() {
        let a = rf("y - y^-1", "y^2 - y^-2");
        let b = RatFunc::from_poly(bl("y^-1 + y"));
        let p = &a * &b;
        assert_eq!(p, RatFunc::one());
        assert!(p.as_polynomial().is_some_and(|q| q.is_one()));
    }

    #[test]
    fn equality_by_cross_multiplication() {
        assert_eq!(rf("1", "y + y^-1"), rf("y", "y^2 + 1"));
        assert_ne!(rf("1", "y + y^-1"), rf("1", "y^2 + 1"));
    }

    #[test]
    fn normal_form_is_canonical() {
        let a = rf("1", "y + y^-1");
        let b = rf("2*y^3", "2*y^4 + 2*y^2");
        assert_eq!(a.to_string(), b.to_string());
        assert_eq!(a.to_string(), "(y)/(1 + y^2)");
        let c = rf("y^2 - 1", "y - 1");
        assert_eq!(c.to_string(), "1 + y");
    }

    #[test]
    fn t_denominators_keep_exact_equality() {
        let a = rf("y + t", "1 + t");
        let b = rf("y^2 + y*t", "y + y*t");
        assert_eq!(a, b);
        assert_eq!(&a - &b, RatFunc::zero());
        assert!(RatFunc::new(bl("1"), BiLaurent::zero()).is_err());
        assert_eq!(rf("2", "4").as_polynomial(), Some(&BiLaurent::constant(crate::algebra::rat(1, 2))));
        assert_eq!(RatFunc::from_rat(int(3)).to_string(), "3");
    }

    #[test]
    fn parse_fraction_rendering() {
        let a = rf("1", "y + y^-1");
        let back: RatFunc = a.to_string().parse().unwrap();
        assert_eq!(back, a);
    }
}
