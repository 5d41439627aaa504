//! Exact genericity predicates.

use num_traits::Zero;

use super::{Covector, DimVec, OmegaForm, SkewForm};
use crate::algebra::{sgn, BigRat};
use crate::trees::{proper_subsets, Mask};

/// θ(γ') ≠ 0 for every nonzero γ' ≤ γ not collinear with γ (and θ(γ) = 0).
pub fn is_gamma_generic(theta: &Covector, gamma: &DimVec) -> bool {
    if !theta.eval_dim(gamma).is_zero() {
        return false;
    }
    gamma
        .sub_vectors()
        .iter()
        .filter(|g| !g.is_collinear(gamma))
        .all(|g| !theta.eval_dim(g).is_zero())
}

/// (J,η)-genericity: α(e_J) = 0 and α(e_{J'}) ≠ 0 for every strict J' ⊂ J with η(e_J, e_{J'}) ≠ 0.
pub fn is_j_generic(eta: &SkewForm, alpha: &Covector, j: Mask) -> bool {
    alpha.eval_mask(j).is_zero()
        && proper_subsets(j).all(|s| eta.pair_masks(j, s) == 0 || !alpha.eval_mask(s).is_zero())
}

/// Values f(e_B) for all B ⊂ {0..n}, indexed by mask.
fn subset_sums<T: Clone + Zero + for<'a> std::ops::Add<&'a T, Output = T>>(v: &[T]) -> Vec<T> {
    let n = v.len();
    let mut out = vec![T::zero(); 1 << n];
    for b in 1usize..(1 << n) {
        let low = b.trailing_zeros() as usize;
        out[b] = out[b & (b - 1)].clone() + &v[low];
    }
    out
}

fn omega_rows(omega: &OmegaForm) -> Vec<Vec<BigRat>> {
    let n = omega.dim();
    (0..n).map(|i| (0..n).map(|j| omega.entry(i, j).clone()).collect()).collect()
}

/// Pairing tables p[A][B] = f(e_A, e_B) computed by subset sums.
fn pair_table<T: Clone + Zero + for<'a> std::ops::Add<&'a T, Output = T>>(rows: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = rows.len();
    // column sums: for each A, the covector ι_{e_A}
    let mut iota: Vec<Vec<T>> = vec![vec![T::zero(); n]; 1 << n];
    for a in 1usize..(1 << n) {
        let low = a.trailing_zeros() as usize;
        let prev = iota[a & (a - 1)].clone();
        iota[a] = prev.iter().zip(&rows[low]).map(|(x, y)| x.clone() + y).collect();
    }
    iota.iter().map(|row| subset_sums(row)).collect()
}

/// U^η: whenever η(n₁, n₂) ≠ 0 for {0,1}-vectors n₁, n₂, ω(n₁, n₂) is nonzero of the same sign.
pub fn in_u_eta(eta: &SkewForm, omega: &OmegaForm) -> bool {
    let pe = pair_table(eta.rows());
    let po = pair_table(&omega_rows(omega));
    let n = 1usize << eta.dim();
    (1..n).all(|a| (1..n).all(|b| pe[a][b] == 0 || (pe[a][b].signum() as i8) == sgn(&po[a][b])))
}

/// U_J: ω(e_{J₁}, e_{J₂}) ≠ 0 for all disjoint nonempty J₁, J₂ ⊂ J.
pub fn in_u_j(omega: &OmegaForm, j: Mask) -> bool {
    let po = pair_table(&omega_rows(omega));
    let j = j as usize;
    let mut a = j;
    while a != 0 {
        let rest = j & !a;
        let mut b = rest;
        while b != 0 {
            if po[a][b].is_zero() {
                return false;
            }
            b = (b - 1) & rest;
        }
        a = (a - 1) & j;
    }
    true
}

/// V^α: β(e_A) has the sign of α(e_A) whenever α(e_A) ≠ 0, for all nonempty A ⊂ J.
pub fn in_v_alpha(alpha: &Covector, beta: &Covector, j: Mask) -> bool {
    let sa = subset_sums(&alpha.0);
    let sb = subset_sums(&beta.0);
    let j = j as usize;
    let mut a = j;
    while a != 0 {
        let s = sgn(&sa[a]);
        if s != 0 && sgn(&sb[a]) != s {
            return false;
        }
        a = (a - 1) & j;
    }
    true
}
