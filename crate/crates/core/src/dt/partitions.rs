//! Unordered decompositions of a dimension vector into positive parts.

use num_bigint::BigInt;
use num_traits::One;

use crate::lattice::DimVec;

/// γ = Σ m_i γ_i with distinct γ_i, stored in nonincreasing lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    parts: Vec<(DimVec, usize)>,
}

impl Decomposition {
    pub fn from_flat(mut flat: Vec<DimVec>) -> Self {
        flat.sort_by(|a, b| b.cmp(a));
        let mut parts: Vec<(DimVec, usize)> = Vec::new();
        for g in flat {
            match parts.last_mut() {
                Some((h, m)) if *h == g => *m += 1,
                _ => parts.push((g, 1)),
            }
        }
        Decomposition { parts }
    }

    pub fn parts(&self) -> &[(DimVec, usize)] {
        &self.parts
    }

    /// Parts with repetition.
    pub fn flat(&self) -> Vec<DimVec> {
        self.parts.iter().flat_map(|(g, m)| std::iter::repeat_n(g.clone(), *m)).collect()
    }

    pub fn len(&self) -> usize {
        self.parts.iter().map(|(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// |Aut| = Π m_i!.
    pub fn aut_order(&self) -> BigInt {
        let mut a = BigInt::one();
        for (_, m) in &self.parts {
            for k in 2..=*m {
                a *= k;
            }
        }
        a
    }
}

impl std::fmt::Display for Decomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.flat().iter().map(|g| format!("({g})")).collect();
        write!(f, "{}", s.join(" + "))
    }
}

pub fn enumerate_decompositions(gamma: &DimVec) -> impl Iterator<Item = Decomposition> {
    enumerate_decompositions_with(gamma, |_| true)
}

/// Decompositions whose parts all satisfy `allowed`.
pub fn enumerate_decompositions_with<F: Fn(&DimVec) -> bool>(
    gamma: &DimVec,
    allowed: F,
) -> impl Iterator<Item = Decomposition> {
    let mut cands: Vec<DimVec> = gamma.sub_vectors().into_iter().filter(|g| allowed(g)).collect();
    cands.sort_by(|a, b| b.cmp(a));
    cands.dedup();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(&cands, 0, gamma, &mut cur, &mut out);
    out.into_iter()
}

fn rec(cands: &[DimVec], start: usize, rest: &DimVec, cur: &mut Vec<DimVec>, out: &mut Vec<Decomposition>) {
    if rest.entries().iter().all(|&x| x == 0) {
        out.push(Decomposition::from_flat(cur.clone()));
        return;
    }
    for (i, c) in cands.iter().enumerate().skip(start) {
        if c.le(rest) {
            cur.push(c.clone());
            rec(cands, i, &rest.sub(c), cur, out);
            cur.pop();
        }
    }
}
