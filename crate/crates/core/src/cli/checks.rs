//! Property checks runnable from the command line, looked up by name.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{CliError, RunConfig};
use crate::dt::{assemble_dt, integer_from_rational, random_integer_table, rational_from_integer, AttractorTable, DtContext};
use crate::flow::{flow_tree_scalar, OmegaPerturbed, StrategyRegistry};
use crate::lattice::{random_instance, Covector, DimVec, Quiver, SampleParams};
use crate::scattering::{check_joint_consistency, dt_from_rank2, initial_from_table, reconstruct_rank2, JointError};

/// Numeric knobs shared by the check kinds; each kind reads the ones it needs.
#[derive(Clone, Debug)]
pub struct CheckParams {
    pub r: usize,
    pub trials: u32,
    pub m: i64,
    pub max_dim: i64,
    pub max_arrows: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass(String),
    /// Where the first failure happened.
    Fail(String),
}

pub trait CheckKind: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn run(&self, p: &CheckParams, cfg: &RunConfig) -> Result<CheckOutcome, CliError>;
}

pub struct CheckRegistry {
    kinds: BTreeMap<&'static str, Box<dyn CheckKind>>,
}

impl CheckRegistry {
    pub fn empty() -> Self {
        CheckRegistry { kinds: BTreeMap::new() }
    }

    pub fn register(&mut self, k: Box<dyn CheckKind>) {
        self.kinds.insert(k.name(), k);
    }

    pub fn get(&self, name: &str) -> Option<&dyn CheckKind> {
        self.kinds.get(name).map(|k| k.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.kinds.keys().copied().collect()
    }
}

impl Default for CheckRegistry {
    fn default() -> Self {
        let mut r = CheckRegistry::empty();
        r.register(Box::new(Perturbation));
        r.register(Box::new(Joints));
        r.register(Box::new(Multicover));
        r.register(Box::new(Oracle));
        r
    }
}

/// Instance seed for trial i, derived from the global seed.
fn trial_seed(cfg: &RunConfig, i: u32) -> u64 {
    cfg.seed.wrapping_mul(1_000_003).wrapping_add(i as u64)
}

/// Runs trials in parallel and reports the first failing one in trial order.
fn run_trials<F>(trials: u32, f: F) -> Result<Option<String>, CliError>
where
    F: Fn(u32) -> Result<Option<String>, CliError> + Sync,
{
    let results: Vec<Result<Option<String>, CliError>> = (0..trials).into_par_iter().map(&f).collect();
    for r in results {
        if let Some(locus) = r? {
            return Ok(Some(locus));
        }
    }
    Ok(None)
}

fn check_r(p: &CheckParams) -> Result<(), CliError> {
    if !(1..=6).contains(&p.r) {
        return Err(CliError::Input(format!("--r must be between 1 and 6, got {}", p.r)));
    }
    Ok(())
}

struct Perturbation;

impl CheckKind for Perturbation {
    fn name(&self) -> &'static str {
        "perturbation"
    }
    fn summary(&self) -> &'static str {
        "F agrees across 5 seeds and both perturbation modes"
    }
    fn run(&self, p: &CheckParams, cfg: &RunConfig) -> Result<CheckOutcome, CliError> {
        check_r(p)?;
        let reg = StrategyRegistry::default();
        let fail = run_trials(p.trials, |i| {
            let inst = random_instance(p.r, p.max_arrows, trial_seed(cfg, i));
            let mut first: Option<String> = None;
            for s in reg.iter() {
                for k in 0..5 {
                    let params = SampleParams { seed: cfg.seed.wrapping_add(k), budget: cfg.budget };
                    let v = flow_tree_scalar(&inst.aux, s, &params)?.to_string();
                    match &first {
                        None => first = Some(v),
                        Some(f) if *f != v => {
                            return Ok(Some(format!("trial={i} mode={} seed={}: {v} != {f}", s.name(), params.seed)))
                        }
                        _ => {}
                    }
                }
            }
            Ok(None)
        })?;
        Ok(match fail {
            None => CheckOutcome::Pass(format!("r={} trials={}", p.r, p.trials)),
            Some(l) => CheckOutcome::Fail(l),
        })
    }
}

struct Joints;

impl CheckKind for Joints {
    fn name(&self) -> &'static str {
        "joints"
    }
    fn summary(&self) -> &'static str {
        "wall values are consistent around every joint on the flow half-line"
    }
    fn run(&self, p: &CheckParams, cfg: &RunConfig) -> Result<CheckOutcome, CliError> {
        check_r(p)?;
        let fail = run_trials(p.trials, |i| {
            let inst = random_instance(p.r, p.max_arrows, trial_seed(cfg, i));
            let params = SampleParams { seed: cfg.seed.wrapping_add(i as u64), budget: cfg.budget };
            match check_joint_consistency(&inst.aux, &params) {
                Ok(_) => Ok(None),
                Err(e @ JointError::ConsistencyFailure { .. }) => Ok(Some(format!("trial={i}: {e}"))),
                Err(JointError::TiedJoints(t)) => Ok(Some(format!("trial={i}: tied joints at t={t}"))),
                Err(e) => Err(CliError::Genericity(format!("trial {i}: {e}"))),
            }
        })?;
        Ok(match fail {
            None => CheckOutcome::Pass(format!("r={} trials={}", p.r, p.trials)),
            Some(l) => CheckOutcome::Fail(l),
        })
    }
}

struct Multicover;

impl CheckKind for Multicover {
    fn name(&self) -> &'static str {
        "multicover"
    }
    fn summary(&self) -> &'static str {
        "integer to rational DT conversion round-trips on random tables"
    }
    fn run(&self, p: &CheckParams, cfg: &RunConfig) -> Result<CheckOutcome, CliError> {
        let bound = DimVec(vec![4, 4]);
        let fail = run_trials(p.trials, |i| {
            let t = random_integer_table(&bound, trial_seed(cfg, i));
            let back = integer_from_rational(&rational_from_integer(&t, &bound));
            Ok(match back {
                Ok(b) if b == t => None,
                Ok(_) => Some(format!("trial={i}: round trip changed the table")),
                Err(e) => Some(format!("trial={i}: {e}")),
            })
        })?;
        Ok(match fail {
            None => CheckOutcome::Pass(format!("trials={}", p.trials)),
            Some(l) => CheckOutcome::Fail(l),
        })
    }
}

struct Oracle;

impl CheckKind for Oracle {
    fn name(&self) -> &'static str {
        "oracle"
    }
    fn summary(&self) -> &'static str {
        "flow tree DT invariants of a Kronecker quiver match the rank-2 scattering diagram"
    }
    fn run(&self, p: &CheckParams, cfg: &RunConfig) -> Result<CheckOutcome, CliError> {
        if p.m < 0 || p.max_dim < 1 {
            return Err(CliError::Input("--m must be nonnegative and --max-dim positive".into()));
        }
        let table = AttractorTable::acyclic();
        let diag = reconstruct_rank2(p.m, &initial_from_table(&table, p.max_dim), p.max_dim);
        if !diag.loop_log().is_zero() {
            return Ok(CheckOutcome::Fail("reconstructed diagram is not consistent".into()));
        }
        let q = Quiver::kronecker(p.m as u64);
        let ctx = DtContext { strategy: &OmegaPerturbed, params: cfg.params(), cache: None };
        let mut cases = Vec::new();
        for a in 0..=p.max_dim {
            for b in 0..=(p.max_dim - a) {
                if a + b > 0 {
                    for s in [1, -1] {
                        cases.push((DimVec(vec![a, b]), Covector::from_ints(&[-s * b, s * a])));
                    }
                }
            }
        }
        let results: Vec<Result<Option<String>, CliError>> = cases
            .par_iter()
            .map(|(g, th)| {
                let want = dt_from_rank2(&diag, g, th).map_err(|e| CliError::Internal(e.to_string()))?;
                let got = assemble_dt(&q, g, th, &table, &ctx)?;
                Ok((got != want).then(|| format!("gamma={g} theta={th}: flow {got} oracle {want}")))
            })
            .collect();
        for r in results {
            if let Some(l) = r? {
                return Ok(CheckOutcome::Fail(l));
            }
        }
        Ok(CheckOutcome::Pass(format!("m={} max-dim={} classes={}", p.m, p.max_dim, cases.len() / 2)))
    }
}
