//! The discrete attractor flow on decorated trees and the flow tree formula.

mod map;
mod strategy;

pub use map::{flow_tree_map, AbelianBracket, BracketContext, ScalarBracket};
pub use strategy::{
    flow_tree_scalar, scalar_sum, BetaPerturbed, FlowStrategy, FlowTreeError, OmegaPerturbed, Perturbation,
    StrategyRegistry, UnknownStrategy,
};

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{kappa, sgn, LaurentPoly};
use crate::lattice::{Covector, OmegaForm, SkewForm};
use crate::trees::{DecoratedTree, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("form pairing vanishes at vertex {vertex}: the form is not in U_J")]
    DivisionByZeroPairing { vertex: VertexId },
    #[error("zero sign argument at vertex {vertex}: the perturbation is not generic")]
    ZeroSignArgument { vertex: VertexId },
}

/// Which child of each interior vertex plays v'. `false` is the canonical choice.
#[derive(Clone, Debug, Default)]
pub struct ChildLabeling(pub Vec<bool>);

impl ChildLabeling {
    pub fn canonical(t: &DecoratedTree) -> Self {
        ChildLabeling(vec![false; t.nodes().len()])
    }

    fn children(&self, t: &DecoratedTree, v: VertexId) -> Option<(VertexId, VertexId)> {
        let (a, b) = t.children(v)?;
        Some(if self.0.get(v).copied().unwrap_or(false) { (b, a) } else { (a, b) })
    }
}

/// θ_{T,v} at the root and at every interior vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowAssignment {
    pub root: Covector,
    values: Vec<Option<Covector>>,
}

impl FlowAssignment {
    pub fn at(&self, v: VertexId) -> Option<&Covector> {
        self.values.get(v).and_then(|x| x.as_ref())
    }

    /// θ at the parent of v (the root value for the child of the root).
    pub fn parent_of(&self, parents: &[Option<VertexId>], v: VertexId) -> &Covector {
        match parents[v] {
            None => &self.root,
            Some(p) => self.at(p).expect("parent is interior"),
        }
    }
}

/// ±1 or 0 per interior vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignTable(pub Vec<Option<i8>>);

impl SignTable {
    pub fn at(&self, v: VertexId) -> Option<i8> {
        self.0.get(v).copied().flatten()
    }
}

/// θ_v = θ_{p(v)} − θ_{p(v)}(e_{v'}) / ω(e_v, e_{v'}) · ι_{e_v}ω.
fn step(theta_p: &Covector, form: &OmegaForm, ev: u64, evp: u64, v: VertexId) -> Result<Covector, FlowError> {
    let den = form.pair_masks(ev, evp);
    if den.is_zero() {
        return Err(FlowError::DivisionByZeroPairing { vertex: v });
    }
    let num = theta_p.eval_mask(evp);
    if num.is_zero() {
        return Ok(theta_p.clone());
    }
    Ok(theta_p.sub_scaled(&(num / den), &form.iota(ev)))
}

pub fn run_flow(t: &DecoratedTree, alpha: &Covector, form: &OmegaForm) -> Result<FlowAssignment, FlowError> {
    run_flow_labeled(t, alpha, form, &ChildLabeling::canonical(t))
}

pub fn run_flow_labeled(
    t: &DecoratedTree,
    alpha: &Covector,
    form: &OmegaForm,
    lab: &ChildLabeling,
) -> Result<FlowAssignment, FlowError> {
    let mut values: Vec<Option<Covector>> = vec![None; t.nodes().len()];
    let mut stack: Vec<(VertexId, Covector)> = vec![(t.top(), alpha.clone())];
    while let Some((v, theta_p)) = stack.pop() {
        let Some((a, b)) = lab.children(t, v) else { continue };
        let theta = step(&theta_p, form, t.charge(v), t.charge(a), v)?;
        stack.push((a, theta.clone()));
        stack.push((b, theta.clone()));
        values[v] = Some(theta);
    }
    Ok(FlowAssignment { root: alpha.clone(), values })
}

pub fn epsilon_signs(t: &DecoratedTree, fa: &FlowAssignment, form: &OmegaForm) -> Result<SignTable, FlowError> {
    epsilon_signs_labeled(t, fa, form, &ChildLabeling::canonical(t))
}

/// ε_v = −(sgn θ_{p(v)}(e_{v'}) + sgn ω(e_{v'}, e_{v''})) / 2.
pub fn epsilon_signs_labeled(
    t: &DecoratedTree,
    fa: &FlowAssignment,
    form: &OmegaForm,
    lab: &ChildLabeling,
) -> Result<SignTable, FlowError> {
    let parents = t.parents();
    let mut out = vec![None; t.nodes().len()];
    for (v, _, _) in t.interior() {
        let (a, b) = lab.children(t, v).expect("interior");
        let s1 = sgn(&fa.parent_of(&parents, v).eval_mask(t.charge(a)));
        let s2 = sgn(&form.pair_masks(t.charge(a), t.charge(b)));
        if s1 == 0 || s2 == 0 {
            return Err(FlowError::ZeroSignArgument { vertex: v });
        }
        out[v] = Some(-(s1 + s2) / 2);
    }
    Ok(SignTable(out))
}

/// Π_v ε_v κ(η(e_{v'}, e_{v''})) for a given labeling.
pub fn tree_product(t: &DecoratedTree, signs: &SignTable, eta: &SkewForm, lab: &ChildLabeling) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for (v, _, _) in t.interior() {
        let (a, b) = lab.children(t, v).expect("interior");
        let e = signs.at(v).expect("sign for interior vertex");
        if e == 0 {
            return LaurentPoly::zero();
        }
        let k = kappa(eta.pair_masks(t.charge(a), t.charge(b)));
        p = &p * &k.scale(&crate::algebra::int(e as i64));
    }
    p
}

/// Does every interior vertex pair its children nontrivially under η?
pub fn all_pairings_nonzero(t: &DecoratedTree, eta: &SkewForm) -> bool {
    t.interior().all(|(_, a, b)| eta.pair_masks(t.charge(a), t.charge(b)) != 0)
}

/// The flow is defined and every ε argument is nonzero on this tree.
pub fn flow_nondegenerate(t: &DecoratedTree, init: &Covector, form: &OmegaForm) -> bool {
    let Ok(fa) = run_flow(t, init, form) else { return false };
    epsilon_signs(t, &fa, form).is_ok()
}

/// Compact per-tree contribution: a sign times Π κ(|η_v|), or zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum TreeTerm {
    Zero,
    Term { sign: i64, kappas: Vec<i64> },
}

/// Evaluates one tree of the scalar formula, stopping at the first vanishing factor.
pub(crate) fn evaluate_tree(
    t: &DecoratedTree,
    init: &Covector,
    form: &OmegaForm,
    eta: &SkewForm,
) -> Result<TreeTerm, FlowError> {
    let mut sign = 1i64;
    let mut kappas = Vec::new();
    for (_, a, b) in t.interior() {
        let e = eta.pair_masks(t.charge(a), t.charge(b));
        if e == 0 {
            return Ok(TreeTerm::Zero);
        }
        // κ is odd
        sign *= e.signum();
        kappas.push(e.abs());
    }
    let mut stack: Vec<(VertexId, Covector)> = vec![(t.top(), init.clone())];
    while let Some((v, theta_p)) = stack.pop() {
        let Some((a, b)) = t.children(v) else { continue };
        let s1 = sgn(&theta_p.eval_mask(t.charge(a)));
        let s2 = sgn(&form.pair_masks(t.charge(a), t.charge(b)));
        if s1 == 0 || s2 == 0 {
            return Err(FlowError::ZeroSignArgument { vertex: v });
        }
        let eps = -(s1 + s2) / 2;
        if eps == 0 {
            return Ok(TreeTerm::Zero);
        }
        sign *= eps as i64;
        let theta = step(&theta_p, form, t.charge(v), t.charge(a), v)?;
        stack.push((a, theta.clone()));
        stack.push((b, theta));
    }
    kappas.sort_unstable();
    Ok(TreeTerm::Term { sign, kappas })
}
