//! Consistency around the joints met by the half-line α + t·ι_{e_I}ω.

use num_traits::Zero;
use thiserror::Error;

use super::lie::{GradedLieElt, LieAlgebra};
use crate::algebra::{int, sgn, BigRat, LaurentPoly, RatFunc};
use crate::flow::{flow_tree_map, FlowError, ScalarBracket};
use crate::lattice::{is_j_generic, sample_omega, AuxLattice, Covector, OmegaForm, SampleError, SampleParams};
use crate::trees::{mask_indices, Mask};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JointError {
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("two joints at the same parameter t = {0}")]
    TiedJoints(String),
    #[error("consistency failure at {}: {reason}", joint.map_or("the tail".to_string(), |j| format!("joint {j}")))]
    ConsistencyFailure { joint: Option<usize>, reason: String },
}

/// Deliberate damage for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corruption {
    /// Adds 1 to the wall value at α.
    ShiftInitialWall,
    /// Negates the incoming wall value of the first part at the first joint.
    FlipFirstJoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Joint {
    pub t: BigRat,
    pub parts: (Mask, Mask),
    /// Jump φ_{i−1,i} − φ_{i,i+1} of the wall value across the joint.
    pub jump: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointReport {
    pub omega: OmegaForm,
    pub joints: Vec<Joint>,
    /// A_I at α.
    pub wall_value: LaurentPoly,
}

fn fail(joint: Option<usize>, reason: impl Into<String>) -> JointError {
    JointError::ConsistencyFailure { joint, reason: reason.into() }
}

fn grade(m: Mask, r: usize) -> Vec<i64> {
    let mut g = vec![0; r];
    for i in mask_indices(m) {
        g[i] = 1;
    }
    g
}

pub fn check_joint_consistency(aux: &AuxLattice, params: &SampleParams) -> Result<JointReport, JointError> {
    check_joint_consistency_with(aux, params, None)
}

pub fn check_joint_consistency_with(
    aux: &AuxLattice,
    params: &SampleParams,
    corruption: Option<Corruption>,
) -> Result<JointReport, JointError> {
    let r = aux.r();
    let full = aux.full();
    let eta = &aux.eta;
    let omega = sample_omega(aux, params)?;
    let ctx = ScalarBracket { eta };
    let wall = |j: Mask, x: &Covector| flow_tree_map(eta, &ctx, j, x, &omega);
    let mut phi0 = wall(full, &aux.alpha)?;
    if corruption == Some(Corruption::ShiftInitialWall) {
        phi0 = &phi0 + &LaurentPoly::one();
    }
    if r < 2 {
        return Ok(JointReport { omega, joints: vec![], wall_value: phi0 });
    }

    let u = omega.iota(full);
    let point = |t: &BigRat| aux.alpha.add(&u.scale(t));
    let low = 1 as Mask;
    let mut found: Vec<(BigRat, Mask, Mask)> = Vec::new();
    let mut j1 = (full - 1) & full;
    while j1 != 0 {
        let j2 = full & !j1;
        if j1 & low != 0 && j2 != 0 && eta.pair_masks(j1, j2) != 0 {
            let t = -aux.alpha.eval_mask(j1) / omega.pair_masks(full, j1);
            if t > BigRat::zero() {
                found.push((t, j1, j2));
            }
        }
        j1 = (j1 - 1) & full;
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    if let Some(w) = found.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(JointError::TiedJoints(w[0].0.to_string()));
    }

    // wall values on the segments between consecutive joints; phi[k] lies beyond the last one
    let k = found.len();
    let mut phi = vec![phi0.clone()];
    for i in 0..k {
        let t = match found.get(i + 1) {
            Some(next) => (&found[i].0 + &next.0) / int(2),
            None => &found[i].0 + int(1),
        };
        phi.push(wall(full, &point(&t))?);
    }

    let h = LieAlgebra::aux(eta.clone());
    let elt = |m: Mask, c: &LaurentPoly| GradedLieElt::monomial(grade(m, r), RatFunc::from(c));
    let mut joints = Vec::new();
    for (i, (t, j1, j2)) in found.iter().enumerate() {
        let idx = Some(i + 1);
        let x = point(t);
        // no three-part split of I vanishes at x
        let zero: Vec<Mask> = (1..full).filter(|&m| m & full == m && x.eval_mask(m).is_zero()).collect();
        for &a in &zero {
            for &b in &zero {
                if a & b == 0 && (a | b) != full {
                    return Err(fail(idx, format!("triple split {a:b} {b:b} at t = {t}")));
                }
            }
        }
        if !is_j_generic(eta, &x, *j1) || !is_j_generic(eta, &x, *j2) {
            return Err(fail(idx, "joint point is not generic for its parts"));
        }
        let a1 = wall(*j1, &x)?;
        let mut a1v = elt(*j1, &a1);
        if corruption == Some(Corruption::FlipFirstJoint) && i == 0 {
            a1v = a1v.neg();
        }
        let a2v = elt(*j2, &wall(*j2, &x)?);
        let w = omega.pair_masks(*j1, *j2);
        let sw = sgn(&w) as i64;
        // coordinates (c₁, c₂) ↦ x + c₁ι_{e_J₁}ω + c₂ι_{e_J₂}ω; gradient of θ ↦ θ(e_K) in these coordinates
        let g1 = (0, -sw);
        let g2 = (sw, 0);
        let gi = (sw, -sw);
        let prev = elt(full, &phi[i]);
        let next = elt(full, &phi[i + 1]);
        let loop_walls: [((i64, i64), (i64, i64), &GradedLieElt); 6] = [
            ((1, 1), gi, &next),
            ((0, 1), g2, &a2v),
            ((-1, 0), g1, &a1v),
            ((-1, -1), gi, &prev),
            ((0, -1), g2, &a2v),
            ((1, 0), g1, &a1v),
        ];
        let crossings: Vec<(GradedLieElt, i8)> = loop_walls
            .iter()
            .map(|((d1, d2), (n1, n2), v)| {
                let vel: (i64, i64) = (-d2, *d1);
                ((*v).clone(), -((vel.0 * n1 + vel.1 * n2).signum() as i8))
            })
            .collect();
        let lp = h.path_ordered_product(&crossings);
        if !lp.is_zero() {
            return Err(fail(idx, format!("loop product around the joint is {lp}")));
        }
        joints.push(Joint { t: t.clone(), parts: (*j1, *j2), jump: &phi[i] - &phi[i + 1] });
    }

    if !phi[k].is_zero() {
        return Err(fail(None, format!("wall value beyond the last joint is {}", phi[k])));
    }
    let total = joints.iter().fold(LaurentPoly::zero(), |s, j| &s + &j.jump);
    if total != phi0 {
        return Err(fail(None, format!("jumps sum to {total}, wall value at alpha is {phi0}")));
    }
    Ok(JointReport { omega, joints, wall_value: phi0 })
}
