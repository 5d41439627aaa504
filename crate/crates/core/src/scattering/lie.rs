//! Graded Lie algebras with the κ-bracket, truncated to be nilpotent.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{kappa, BigRat, RatFunc};
use crate::lattice::SkewForm;

pub type Grade = Vec<i64>;

/// Σ c_n z^n with finitely many nonzero c_n.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedLieElt {
    terms: BTreeMap<Grade, RatFunc>,
}

impl GradedLieElt {
    pub fn zero() -> Self {
        GradedLieElt::default()
    }

    pub fn monomial(grade: Grade, c: RatFunc) -> Self {
        let mut e = GradedLieElt::zero();
        e.add_term(grade, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Grade, RatFunc)>>(terms: I) -> Self {
        let mut e = GradedLieElt::zero();
        for (g, c) in terms {
            e.add_term(g, c);
        }
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Grade, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &[i64]) -> RatFunc {
        self.terms.get(g).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, g: Grade, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&g) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&g);
                }
            }
            None => {
                self.terms.insert(g, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut e = self.clone();
        for (g, c) in &o.terms {
            e.add_term(g.clone(), c.clone());
        }
        e
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigRat::from_integer((-1).into()))
    }

    pub fn scale(&self, s: &BigRat) -> Self {
        if s.is_zero() {
            return GradedLieElt::zero();
        }
        GradedLieElt { terms: self.terms.iter().map(|(g, c)| (g.clone(), c.scale(s))).collect() }
    }

    /// Terms whose grade satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&[i64]) -> bool) -> Self {
        GradedLieElt { terms: self.terms.iter().filter(|(g, _)| keep(g)).map(|(g, c)| (g.clone(), c.clone())).collect() }
    }

    /// Smallest total degree Σ n_i in the support.
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|g| g.iter().sum()).min()
    }
}

impl fmt::Display for GradedLieElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Grade> = self.terms.keys().collect();
        keys.sort_by_key(|g| (g.iter().sum::<i64>(), (*g).clone()));
        let parts: Vec<String> = keys
            .into_iter()
            .map(|g| {
                let e: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                format!("[{}] z^({})", self.terms[g], e.join(","))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// 𝔤 modulo grades of total degree above the bound.
    Degree(i64),
    /// 𝔥: only {0,1}-grades survive.
    ZeroOne,
}

/// The bracket [z^a, z^b] = κ(⟨a,b⟩) z^{a+b} on a truncated grading.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    form: SkewForm,
    trunc: Truncation,
}

impl LieAlgebra {
    pub fn truncated(form: SkewForm, bound: i64) -> Self {
        LieAlgebra { form, trunc: Truncation::Degree(bound) }
    }

    pub fn aux(eta: SkewForm) -> Self {
        LieAlgebra { form: eta, trunc: Truncation::ZeroOne }
    }

    pub fn form(&self) -> &SkewForm {
        &self.form
    }

    pub fn truncation(&self) -> &Truncation {
        &self.trunc
    }

    pub fn admits(&self, g: &[i64]) -> bool {
        match self.trunc {
            Truncation::Degree(d) => g.iter().all(|&x| x >= 0) && g.iter().sum::<i64>() <= d,
            Truncation::ZeroOne => g.iter().all(|&x| x == 0 || x == 1),
        }
    }

    /// Largest total degree a nonzero element can have.
    fn top_degree(&self) -> i64 {
        match self.trunc {
            Truncation::Degree(d) => d,
            Truncation::ZeroOne => self.form.dim() as i64,
        }
    }

    /// Drops the terms outside the truncation.
    pub fn project(&self, a: &GradedLieElt) -> GradedLieElt {
        a.filter(|g| self.admits(g))
    }

    pub fn bracket(&self, a: &GradedLieElt, b: &GradedLieElt) -> GradedLieElt {
        let mut out = GradedLieElt::zero();
        for (ga, ca) in a.terms() {
            for (gb, cb) in b.terms() {
                let g: Grade = ga.iter().zip(gb).map(|(x, y)| x + y).collect();
                if !self.admits(&g) {
                    continue;
                }
                let k = kappa(self.form.pair(ga, gb));
                if k.is_zero() {
                    continue;
                }
                out.add_term(g, &(ca * cb) * &RatFunc::from(&k));
            }
        }
        out
    }

    /// log(exp(a) exp(b)), via the Varadarajan recursion for the homogeneous pieces Z_n.
    pub fn bch(&self, a: &GradedLieElt, b: &GradedLieElt) -> GradedLieElt {
        let a = self.project(a);
        let b = self.project(b);
        let low = match (a.min_degree(), b.min_degree()) {
            (None, _) => return b,
            (_, None) => return a,
            (Some(x), Some(y)) => x.min(y).max(1),
        };
        let depth = (self.top_degree() / low).max(1) as usize;
        let s = a.add(&b);
        let d = a.sub(&b);
        let bern = bernoulli(depth);
        let half = BigRat::new(1.into(), 2.into());
        // z[n] for n ≥ 1; z[0] unused
        let mut z: Vec<GradedLieElt> = vec![GradedLieElt::zero(), s.clone()];
        for n in 1..depth {
            let mut acc = self.bracket(&d, &z[n]).scale(&half);
            // nested[q][m] = Σ over compositions k₁+…+k_q = m of [Z_k₁,[…,[Z_k_q, S]]]
            let mut nested: Vec<Vec<GradedLieElt>> = vec![vec![GradedLieElt::zero(); n + 1]];
            nested[0][0] = s.clone();
            let mut p = 1;
            while 2 * p <= n {
                while nested.len() <= 2 * p {
                    let q = nested.len();
                    let mut row = vec![GradedLieElt::zero(); n + 1];
                    for (m, slot) in row.iter_mut().enumerate().skip(q) {
                        let mut tot = GradedLieElt::zero();
                        for k in 1..=(m + 1 - q) {
                            let inner = &nested[q - 1][m - k];
                            if !inner.is_zero() && !z[k].is_zero() {
                                tot = tot.add(&self.bracket(&z[k], inner));
                            }
                        }
                        *slot = tot;
                    }
                    nested.push(row);
                }
                let k2p = &bern[2 * p] / factorial(2 * p);
                acc = acc.add(&nested[2 * p][n].scale(&k2p));
                p += 1;
            }
            z.push(acc.scale(&BigRat::new(1.into(), ((n + 1) as i64).into())));
        }
        z.iter().skip(1).fold(GradedLieElt::zero(), |x, y| x.add(y))
    }

    /// log(exp(ε_k φ_k) ⋯ exp(ε_1 φ_1)) for crossings listed in path order.
    pub fn path_ordered_product(&self, crossings: &[(GradedLieElt, i8)]) -> GradedLieElt {
        crossings.iter().fold(GradedLieElt::zero(), |acc, (phi, e)| {
            let step = if *e < 0 { phi.neg() } else { phi.clone() };
            self.bch(&step, &acc)
        })
    }
}

fn factorial(n: usize) -> BigRat {
    let mut f = BigRat::one();
    for k in 2..=n {
        f *= BigRat::from_integer((k as i64).into());
    }
    f
}

/// B_0..B_n with B_1 = −1/2.
fn bernoulli(n: usize) -> Vec<BigRat> {
    let mut b = vec![BigRat::one()];
    for m in 1..=n {
        let mut s = BigRat::zero();
        let mut binom = BigRat::one();
        for (k, bk) in b.iter().enumerate() {
            s += &binom * bk;
            binom = binom * BigRat::from_integer(((m + 1 - k) as i64).into()) / BigRat::from_integer(((k + 1) as i64).into());
        }
        b.push(-s / BigRat::from_integer(((m + 1) as i64).into()));
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn m(g: &[i64], c: i64) -> GradedLieElt {
        GradedLieElt::monomial(g.to_vec(), RatFunc::from_rat(int(c)))
    }

    fn kron(mm: i64, d: i64) -> LieAlgebra {
        LieAlgebra::truncated(SkewForm::new(vec![vec![0, mm], vec![-mm, 0]]).unwrap(), d)
    }

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli(10);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[6], rat(1, 42));
        assert_eq!(b[8], rat(-1, 30));
        assert_eq!(b[10], rat(5, 66));
        assert!(b[3].is_zero() && b[9].is_zero());
    }

    #[test]
    fn bracket_is_kappa() {
        let g = kron(2, 4);
        let c = g.bracket(&m(&[1, 0], 1), &m(&[0, 1], 1));
        assert_eq!(c.coeff(&[1, 1]), RatFunc::from(kappa(2)));
        assert!(g.bracket(&m(&[2, 1], 1), &m(&[2, 1], 3)).is_zero());
        assert!(g.bracket(&m(&[3, 0], 1), &m(&[1, 1], 1)).is_zero());
    }

    #[test]
    fn bch_commuting_and_head() {
        let g = kron(0, 5);
        let a = m(&[1, 0], 2);
        let b = m(&[0, 1], 3);
        assert_eq!(g.bch(&a, &b), a.add(&b));
        let g = kron(1, 2);
        let want = a.add(&b).add(&g.bracket(&a, &b).scale(&rat(1, 2)));
        assert_eq!(g.bch(&a, &b), want);
    }

    #[test]
    fn bch_degree_three() {
        let g = kron(3, 3);
        let x = m(&[1, 0], 1);
        let y = m(&[0, 1], 1);
        let xy = g.bracket(&x, &y);
        let want = x
            .add(&y)
            .add(&xy.scale(&rat(1, 2)))
            .add(&g.bracket(&x, &xy).scale(&rat(1, 12)))
            .sub(&g.bracket(&y, &xy).scale(&rat(1, 12)));
        assert_eq!(g.bch(&x, &y), want);
    }

    #[test]
    fn aux_mode() {
        let eta = SkewForm::new(vec![vec![0, 1, 2], vec![-1, 0, 1], vec![-2, -1, 0]]).unwrap();
        let h = LieAlgebra::aux(eta);
        let a = m(&[1, 0, 0], 1);
        let b = m(&[0, 1, 0], 1);
        let want = a.add(&b).add(&GradedLieElt::monomial(vec![1, 1, 0], RatFunc::from(kappa(1)).scale(&rat(1, 2))));
        assert_eq!(h.bch(&a, &b), want);
        assert!(h.bracket(&a, &a.add(&b)).filter(|g| g[0] > 1).is_zero());
    }

    #[test]
    fn inverse_pair_cancels() {
        let g = kron(2, 6);
        let phi = m(&[1, 0], 1).add(&m(&[1, 1], -2)).add(&m(&[2, 1], 5));
        assert!(g.path_ordered_product(&[(phi.clone(), 1), (phi.clone(), -1)]).is_zero());
        assert_eq!(g.path_ordered_product(&[(phi.clone(), -1)]), phi.neg());
    }
}
