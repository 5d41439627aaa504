use rayon::prelude::*;

use super::{run_flow, FlowError};
use crate::algebra::{kappa, sgn, LaurentPoly};
use crate::lattice::{Covector, OmegaForm, SkewForm};
use crate::trees::{enumerate_trees, in_eta_class, DecoratedTree, Mask, VertexId};

/// A bilinear antisymmetric bracket on values graded by {0,1}-vectors e_J,
/// together with the inputs attached to e_1..e_r.
pub trait BracketContext: Sync {
    type Value: Clone + Send;

    fn input(&self, i: usize) -> Self::Value;
    fn zero(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn bracket(&self, a: &Self::Value, ga: Mask, b: &Self::Value, gb: Mask) -> Self::Value;

    /// True if the bracket of anything graded `ga` with anything graded `gb` is zero.
    fn vanishes(&self, _ga: Mask, _gb: Mask) -> bool {
        false
    }
}

/// [a, b] = κ(η(e_A, e_B))·ab on coefficients of z^{e_J}; every input is 1.
pub struct ScalarBracket<'a> {
    pub eta: &'a SkewForm,
}

impl BracketContext for ScalarBracket<'_> {
    type Value = LaurentPoly;

    fn input(&self, _i: usize) -> LaurentPoly {
        LaurentPoly::one()
    }
    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a + b
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        -a
    }
    fn bracket(&self, a: &LaurentPoly, ga: Mask, b: &LaurentPoly, gb: Mask) -> LaurentPoly {
        &(a * b) * &kappa(self.eta.pair_masks(ga, gb))
    }
    fn vanishes(&self, ga: Mask, gb: Mask) -> bool {
        self.eta.pair_masks(ga, gb) == 0
    }
}

/// The zero bracket.
pub struct AbelianBracket;

impl BracketContext for AbelianBracket {
    type Value = LaurentPoly;

    fn input(&self, _i: usize) -> LaurentPoly {
        LaurentPoly::one()
    }
    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a + b
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        -a
    }
    fn bracket(&self, _a: &LaurentPoly, _ga: Mask, _b: &LaurentPoly, _gb: Mask) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn vanishes(&self, _ga: Mask, _gb: Mask) -> bool {
        true
    }
}

fn tree_value<C: BracketContext>(
    ctx: &C,
    t: &DecoratedTree,
    alpha0: &Covector,
    form: &OmegaForm,
) -> Result<Option<C::Value>, FlowError> {
    if t.interior().any(|(_, a, b)| ctx.vanishes(t.charge(a), t.charge(b))) {
        return Ok(None);
    }
    let fa = run_flow(t, alpha0, form)?;
    let parents = t.parents();
    let mut eps = vec![0i8; t.nodes().len()];
    for (v, a, b) in t.interior() {
        let s1 = sgn(&fa.parent_of(&parents, v).eval_mask(t.charge(a)));
        let s2 = sgn(&form.pair_masks(t.charge(a), t.charge(b)));
        if s1 == 0 || s2 == 0 {
            return Err(FlowError::ZeroSignArgument { vertex: v });
        }
        eps[v] = -(s1 + s2) / 2;
        if eps[v] == 0 {
            return Ok(None);
        }
    }
    fn up<C: BracketContext>(ctx: &C, t: &DecoratedTree, eps: &[i8], v: VertexId) -> C::Value {
        match t.children(v) {
            None => match t.node(v) {
                crate::trees::Node::Leaf(i) => ctx.input(i),
                _ => unreachable!(),
            },
            Some((a, b)) => {
                let x = ctx.bracket(&up(ctx, t, eps, a), t.charge(a), &up(ctx, t, eps, b), t.charge(b));
                if eps[v] < 0 {
                    ctx.neg(&x)
                } else {
                    x
                }
            }
        }
    }
    Ok(Some(up(ctx, t, &eps, t.top())))
}

/// A_J^{α₀,ω} = Σ_{T ∈ 𝒯_J^η} A_{J,T}: brackets composed along each tree with ε coefficients.
pub fn flow_tree_map<C: BracketContext>(
    eta: &SkewForm,
    ctx: &C,
    j: Mask,
    alpha0: &Covector,
    form: &OmegaForm,
) -> Result<C::Value, FlowError> {
    let pair = |a: Mask, b: Mask| eta.pair_masks(a, b);
    let trees: Vec<DecoratedTree> = enumerate_trees(j).filter(|t| in_eta_class(t, pair)).collect();
    let vals: Result<Vec<Option<C::Value>>, FlowError> =
        trees.par_iter().map(|t| tree_value(ctx, t, alpha0, form)).collect();
    Ok(vals?.into_iter().flatten().fold(ctx.zero(), |acc, x| ctx.add(&acc, &x)))
}
