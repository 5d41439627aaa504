//! Seeded rejection samplers for generic perturbations.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use super::{in_u_eta, in_u_j, in_v_alpha, is_j_generic, AuxLattice, Covector, OmegaForm};
use crate::algebra::BigRat;
use crate::flow::{all_pairings_nonzero, flow_nondegenerate};
use crate::trees::{enumerate_trees, filter_eta};

pub const DEFAULT_BUDGET: u32 = 1000;

const DENOM_BITS: u32 = 16;
const K_START: u32 = 8;
const K_END: u32 = 256;
const OMEGA_STREAM: u64 = 1 << 40;
const BETA_STREAM: u64 = 2 << 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleParams {
    pub seed: u64,
    pub budget: u32,
}

impl SampleParams {
    pub fn seeded(seed: u64) -> Self {
        SampleParams { seed, ..Self::default() }
    }
}

impl Default for SampleParams {
    fn default() -> Self {
        SampleParams { seed: 0, budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SampleError {
    #[error("alpha is not (I,eta)-generic")]
    NotGenericAlpha,
    #[error("no generic perturbation found within {budget} attempts")]
    Timeout { budget: u32 },
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

fn dyadic(rng: &mut ChaCha8Rng) -> BigRat {
    let n: i64 = rng.gen_range(-(1i64 << DENOM_BITS)..=(1i64 << DENOM_BITS));
    BigRat::new(BigInt::from(n), BigInt::from(1i64 << DENOM_BITS))
}

fn pow2_inv(k: u32) -> BigRat {
    BigRat::new(BigInt::one(), BigInt::one() << k)
}

/// ω = η + 2^{−k} R with R random skew, certified to lie in U^η ∩ U_{I,α}.
pub fn sample_omega(aux: &AuxLattice, params: &SampleParams) -> Result<OmegaForm, SampleError> {
    let full = aux.full();
    if !is_j_generic(&aux.eta, &aux.alpha, full) {
        return Err(SampleError::NotGenericAlpha);
    }
    let r = aux.r();
    let eta = OmegaForm::from_skew(&aux.eta);
    for attempt in 0..params.budget {
        let mut rng = stream(params.seed, OMEGA_STREAM | attempt as u64);
        let mut rm = vec![vec![BigRat::zero(); r]; r];
        let mut bound = BigRat::zero();
        for i in 0..r {
            for j in i + 1..r {
                let x = dyadic(&mut rng);
                bound += x.abs() * BigRat::from_integer(2.into());
                rm[j][i] = -x.clone();
                rm[i][j] = x;
            }
        }
        let build = |k: u32| {
            let e = pow2_inv(k);
            let m = (0..r).map(|i| (0..r).map(|j| eta.entry(i, j) + &rm[i][j] * &e).collect()).collect();
            OmegaForm::new(m).expect("skew by construction")
        };
        // |R(n₁,n₂)| ≤ bound, so 2^{−k}·bound < 1 already forces U^η for integer η
        let omega = (K_START..K_END)
            .map(|k| (k, build(k)))
            .find(|(k, w)| &bound * pow2_inv(*k) < BigRat::one() || in_u_eta(&aux.eta, w))
            .map(|(_, w)| w);
        let Some(omega) = omega else { continue };
        if !in_u_j(&omega, full) {
            continue;
        }
        let ok = filter_eta(enumerate_trees(full), |a, b| aux.eta_pair(a, b))
            .par_bridge()
            .all(|t| flow_nondegenerate(&t, &aux.alpha, &omega));
        if ok {
            return Ok(omega);
        }
    }
    Err(SampleError::Timeout { budget: params.budget })
}

/// β ∈ e_I^⊥ near α, certified to lie in V^α ∩ V_{I,η}.
pub fn sample_beta(aux: &AuxLattice, params: &SampleParams) -> Result<Covector, SampleError> {
    let full = aux.full();
    if !is_j_generic(&aux.eta, &aux.alpha, full) {
        return Err(SampleError::NotGenericAlpha);
    }
    let r = aux.r();
    if r == 1 {
        return Ok(aux.alpha.clone());
    }
    let eta = OmegaForm::from_skew(&aux.eta);
    for attempt in 0..params.budget {
        let mut rng = stream(params.seed, BETA_STREAM | attempt as u64);
        let mut delta: Vec<BigRat> = (0..r - 1).map(|_| dyadic(&mut rng)).collect();
        let last = -delta.iter().fold(BigRat::zero(), |s, x| s + x);
        delta.push(last);
        let delta = Covector(delta);
        let beta = (K_START..K_END)
            .map(|k| aux.alpha.add(&delta.scale(&pow2_inv(k))))
            .find(|b| in_v_alpha(&aux.alpha, b, full));
        let Some(beta) = beta else { continue };
        if !is_j_generic(&aux.eta, &beta, full) {
            continue;
        }
        let ok = filter_eta(enumerate_trees(full), |a, b| aux.eta_pair(a, b))
            .filter(|t| all_pairings_nonzero(t, &aux.eta))
            .par_bridge()
            .all(|t| flow_nondegenerate(&t, &beta, &eta));
        if ok {
            return Ok(beta);
        }
    }
    Err(SampleError::Timeout { budget: params.budget })
}
