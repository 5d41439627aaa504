//! Dense univariate polynomials over ℚ, used only to cancel common factors in RatFunc.

use num_traits::Zero;

use super::BigRat;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct UniPoly(Vec<BigRat>);

impl UniPoly {
    pub fn new(mut c: Vec<BigRat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly(c)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn monic(&self) -> Self {
        match self.0.last() {
            None => self.clone(),
            Some(l) => {
                let inv = l.recip();
                UniPoly(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.0.clone();
        let dn = d.0.len();
        if r.len() < dn {
            return (UniPoly(vec![]), self.clone());
        }
        let lead_inv = d.0[dn - 1].recip();
        let mut q = vec![BigRat::zero(); r.len() - dn + 1];
        for i in (0..q.len()).rev() {
            let c = &r[i + dn - 1] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                r[i + j] -= &c * dc;
            }
            q[i] = c;
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        x.monic()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }
}
