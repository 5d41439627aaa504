use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use super::{evaluate_tree, FlowError, TreeTerm};
use crate::algebra::{int, kappa, LaurentPoly};
use crate::lattice::{sample_beta, sample_omega, AuxLattice, Covector, OmegaForm, SampleError, SampleParams};
use crate::trees::{enumerate_trees, filter_eta, DecoratedTree};

/// Initial point and form of the flow after perturbation.
#[derive(Clone, Debug)]
pub struct Perturbation {
    pub initial: Covector,
    pub form: OmegaForm,
}

/// A way of making the flow generic. Every registered strategy computes the same F.
pub trait FlowStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn perturb(&self, aux: &AuxLattice, params: &SampleParams) -> Result<Perturbation, SampleError>;
}

/// Keep α, replace η by a small generic ω.
pub struct OmegaPerturbed;

impl FlowStrategy for OmegaPerturbed {
    fn name(&self) -> &'static str {
        "omega"
    }
    fn summary(&self) -> &'static str {
        "flow from alpha with a perturbed skew form"
    }
    fn perturb(&self, aux: &AuxLattice, params: &SampleParams) -> Result<Perturbation, SampleError> {
        let form = sample_omega(aux, params)?;
        Ok(Perturbation { initial: aux.alpha.clone(), form })
    }
}

/// Keep η, move α to a nearby generic β on the same wall.
pub struct BetaPerturbed;

impl FlowStrategy for BetaPerturbed {
    fn name(&self) -> &'static str {
        "beta"
    }
    fn summary(&self) -> &'static str {
        "flow from a perturbed initial point with the unperturbed form"
    }
    fn perturb(&self, aux: &AuxLattice, params: &SampleParams) -> Result<Perturbation, SampleError> {
        let initial = sample_beta(aux, params)?;
        Ok(Perturbation { initial, form: OmegaForm::from_skew(&aux.eta) })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown mode {name:?} (known: {known})")]
pub struct UnknownStrategy {
    pub name: String,
    pub known: String,
}

/// Name-keyed registry of flow strategies.
pub struct StrategyRegistry {
    entries: BTreeMap<&'static str, Box<dyn FlowStrategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry { entries: BTreeMap::new() }
    }

    pub fn register(&mut self, s: Box<dyn FlowStrategy>) {
        self.entries.insert(s.name(), s);
    }

    pub fn get(&self, name: &str) -> Result<&dyn FlowStrategy, UnknownStrategy> {
        self.entries.get(name).map(|b| b.as_ref()).ok_or_else(|| UnknownStrategy {
            name: name.to_string(),
            known: self.names().join(", "),
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn FlowStrategy> {
        self.entries.values().map(|b| b.as_ref())
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(OmegaPerturbed));
        r.register(Box::new(BetaPerturbed));
        r
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowTreeError {
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Flow(#[from] FlowError),
}

type Tally = BTreeMap<Vec<i64>, i64>;

fn tally(mut acc: Tally, term: TreeTerm) -> Tally {
    if let TreeTerm::Term { sign, kappas } = term {
        let e = acc.entry(kappas).or_insert(0);
        *e += sign;
    }
    acc
}

fn merge(mut a: Tally, b: Tally) -> Tally {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Σ_{T ∈ 𝒯^η} Π ε κ(η) for an already perturbed flow.
pub fn scalar_sum(aux: &AuxLattice, p: &Perturbation, parallel: bool) -> Result<LaurentPoly, FlowError> {
    let eta = &aux.eta;
    let trees = filter_eta(enumerate_trees(aux.full()), |a, b| eta.pair_masks(a, b));
    let eval = |t: DecoratedTree| evaluate_tree(&t, &p.initial, &p.form, eta);
    let counts = if parallel {
        trees
            .par_bridge()
            .map(eval)
            .try_fold(Tally::new, |acc, t| t.map(|t| tally(acc, t)))
            .try_reduce(Tally::new, |a, b| Ok(merge(a, b)))?
    } else {
        let mut acc = Tally::new();
        for t in trees {
            acc = tally(acc, eval(t)?);
        }
        acc
    };
    let mut f = LaurentPoly::zero();
    for (ks, c) in counts {
        if c == 0 {
            continue;
        }
        let prod = ks.iter().fold(LaurentPoly::one(), |acc, &k| &acc * &kappa(k));
        f = &f + &prod.scale(&int(c));
    }
    Ok(f)
}

/// The universal coefficient F_r^θ(γ₁..γ_r) by the flow tree formula.
pub fn flow_tree_scalar(
    aux: &AuxLattice,
    strategy: &dyn FlowStrategy,
    params: &SampleParams,
) -> Result<LaurentPoly, FlowTreeError> {
    let p = strategy.perturb(aux, params)?;
    Ok(scalar_sum(aux, &p, true)?)
}
