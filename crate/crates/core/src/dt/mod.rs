//! Rational DT invariants from attractor invariants.

mod cache;
mod multicover;
mod partitions;

pub use cache::{cache_key, FCache};
pub use multicover::{integer_from_rational, random_integer_table, rational_from_integer};
pub use partitions::{enumerate_decompositions, enumerate_decompositions_with, Decomposition};

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{BiLaurent, BigRat, ParsePolyError, RatFunc};
use crate::flow::{flow_tree_scalar, FlowStrategy, FlowTreeError};
use crate::lattice::{build_aux, is_gamma_generic, Covector, DimVec, LatticeError, Quiver, SampleParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DtError {
    #[error("theta is not a generic point of the wall of {0}")]
    NotGenericTheta(String),
    #[error("multicover inversion at {gamma} is not an integral Laurent polynomial: {value}")]
    NotPolynomial { gamma: String, value: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Flow(#[from] FlowTreeError),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl From<ParsePolyError> for DtError {
    fn from(e: ParsePolyError) -> Self {
        DtError::Parse { line: 0, msg: e.to_string() }
    }
}

/// Attractor invariants Ω*_γ, explicit entries over an optional acyclic default.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AttractorTable {
    pub entries: BTreeMap<DimVec, BiLaurent>,
    pub acyclic_default: bool,
}

impl AttractorTable {
    /// Ω*_γ = 1 for unit vectors and 0 otherwise.
    pub fn acyclic() -> Self {
        AttractorTable { entries: BTreeMap::new(), acyclic_default: true }
    }

    pub fn omega_star(&self, g: &DimVec) -> BiLaurent {
        if let Some(v) = self.entries.get(g) {
            return v.clone();
        }
        if self.acyclic_default && g.is_unit() {
            BiLaurent::one()
        } else {
            BiLaurent::zero()
        }
    }

    /// Nonzero Ω*_δ for 0 < δ ≤ bound.
    pub fn integer_table(&self, bound: &DimVec) -> BTreeMap<DimVec, BiLaurent> {
        let mut out = BTreeMap::new();
        if self.acyclic_default {
            for i in 0..bound.dim() {
                if bound.0[i] > 0 {
                    out.insert(DimVec::unit(bound.dim(), i), BiLaurent::one());
                }
            }
        }
        for (g, v) in &self.entries {
            if g.dim() == bound.dim() && g.le(bound) {
                if v.is_zero() {
                    out.remove(g);
                } else {
                    out.insert(g.clone(), v.clone());
                }
            }
        }
        out
    }

    /// Rational attractor invariants Ω̄*_δ for 0 < δ ≤ bound, zeros omitted.
    pub fn rational_table(&self, bound: &DimVec) -> BTreeMap<DimVec, RatFunc> {
        rational_from_integer(&self.integer_table(bound), bound)
    }

    /// Lines `gamma = 2,1 ; omega_star = <poly>` and `default acyclic`.
    pub fn parse(text: &str) -> Result<Self, DtError> {
        let mut t = AttractorTable::default();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| DtError::Parse { line: ln + 1, msg };
            if line.split_whitespace().collect::<Vec<_>>() == ["default", "acyclic"] {
                t.acyclic_default = true;
                continue;
            }
            let (lhs, rhs) = line.split_once(';').ok_or_else(|| err("expected `gamma = ... ; omega_star = ...`".into()))?;
            let g = lhs
                .trim()
                .strip_prefix("gamma")
                .and_then(|s| s.trim().strip_prefix('='))
                .ok_or_else(|| err("expected `gamma = <vector>`".into()))?;
            let v = rhs
                .trim()
                .strip_prefix("omega_star")
                .and_then(|s| s.trim().strip_prefix('='))
                .ok_or_else(|| err("expected `omega_star = <polynomial>`".into()))?;
            let g: DimVec = g.trim().parse().map_err(|e: LatticeError| err(e.to_string()))?;
            if !g.is_positive() {
                return Err(err(format!("class {g} is not positive")));
            }
            let v: BiLaurent = v.trim().parse().map_err(|e: ParsePolyError| err(e.to_string()))?;
            t.entries.insert(g, v);
        }
        Ok(t)
    }
}

/// Everything that selects how F is evaluated.
pub struct DtContext<'a> {
    pub strategy: &'a dyn FlowStrategy,
    pub params: SampleParams,
    pub cache: Option<&'a FCache>,
}

/// Ω̄_γ^θ = Σ over decompositions of F_r^θ(γ₁..γ_r) Π Ω̄*_{γ_i} / |Aut|.
pub fn assemble_dt(
    q: &Quiver,
    gamma: &DimVec,
    theta: &Covector,
    table: &AttractorTable,
    ctx: &DtContext<'_>,
) -> Result<RatFunc, DtError> {
    if gamma.dim() != q.vertex_count() || theta.dim() != q.vertex_count() {
        return Err(LatticeError::DimensionMismatch { expected: q.vertex_count(), got: gamma.dim() }.into());
    }
    if !gamma.is_positive() {
        return Err(LatticeError::NotPositive(gamma.to_string()).into());
    }
    if !is_gamma_generic(theta, gamma) {
        return Err(DtError::NotGenericTheta(gamma.to_string()));
    }
    let stars = table.rational_table(gamma);
    let decs: Vec<Decomposition> = enumerate_decompositions_with(gamma, |p| stars.contains_key(p)).collect();
    let terms: Result<Vec<RatFunc>, DtError> = decs
        .par_iter()
        .map(|d| {
            let parts = d.flat();
            let aux = build_aux(q, &parts, theta)?;
            let f = match ctx.cache {
                Some(c) => c.get_or_compute(&aux, || flow_tree_scalar(&aux, ctx.strategy, &ctx.params))?,
                None => flow_tree_scalar(&aux, ctx.strategy, &ctx.params)?,
            };
            if f.is_zero() {
                return Ok(RatFunc::zero());
            }
            let mut term = RatFunc::from(&f);
            for (g, m) in d.parts() {
                for _ in 0..*m {
                    term = &term * &stars[g];
                }
            }
            Ok(term.scale(&BigRat::from_integer(d.aut_order()).recip()))
        })
        .collect();
    Ok(terms?.iter().fold(RatFunc::zero(), |a, b| &a + b))
}

/// Ω̄^θ at every divisor class γ/k, then Ω_γ^θ by multicover inversion.
pub fn integer_dt(
    q: &Quiver,
    gamma: &DimVec,
    theta: &Covector,
    table: &AttractorTable,
    ctx: &DtContext<'_>,
) -> Result<(RatFunc, Result<BiLaurent, DtError>), DtError> {
    let g = gamma.gcd();
    let mut rational = BTreeMap::new();
    for k in (1..=g).filter(|k| g % k == 0) {
        let d = DimVec(gamma.0.iter().map(|x| x / k).collect());
        let v = assemble_dt(q, &d, theta, table, ctx)?;
        rational.insert(d, v);
    }
    let bar = rational[gamma].clone();
    let integral = integer_from_rational(&rational).map(|m| m.get(gamma).cloned().unwrap_or_default());
    Ok((bar, integral))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, kappa, rat};
    use crate::flow::{BetaPerturbed, OmegaPerturbed};

    fn dv(s: &str) -> DimVec {
        s.parse().unwrap()
    }

    fn run(m: u64, g: &str, th: &[i64]) -> RatFunc {
        let ctx = DtContext { strategy: &OmegaPerturbed, params: SampleParams::default(), cache: None };
        assemble_dt(&Quiver::kronecker(m), &dv(g), &Covector::from_ints(th), &AttractorTable::acyclic(), &ctx).unwrap()
    }

    #[test]
    fn a2_wall_crossing() {
        assert_eq!(run(1, "1,1", &[1, -1]), RatFunc::one());
        assert_eq!(run(1, "1,1", &[-1, 1]), RatFunc::zero());
    }

    #[test]
    fn kronecker2_one_one() {
        assert_eq!(run(2, "1,1", &[1, -1]), RatFunc::from(-&kappa(2)));
    }

    #[test]
    fn unit_class_is_attractor_value() {
        assert_eq!(run(2, "1,0", &[0, 1]), RatFunc::one());
        let t = AttractorTable::parse("gamma = 1,0 ; omega_star = y + t\n").unwrap();
        let ctx = DtContext { strategy: &BetaPerturbed, params: SampleParams::default(), cache: None };
        let v = assemble_dt(&Quiver::kronecker(2), &dv("1,0"), &Covector::from_ints(&[0, 1]), &t, &ctx).unwrap();
        assert_eq!(v.to_string(), "t + y");
    }

    #[test]
    fn non_generic_theta() {
        let ctx = DtContext { strategy: &OmegaPerturbed, params: SampleParams::default(), cache: None };
        let e = assemble_dt(&Quiver::kronecker(1), &dv("1,1"), &Covector::zero(2), &AttractorTable::acyclic(), &ctx);
        assert!(matches!(e, Err(DtError::NotGenericTheta(_))));
    }

    #[test]
    fn attractor_file_format() {
        let t = AttractorTable::parse("# data\ndefault acyclic\ngamma = 2,1 ; omega_star = -y^-1 + 1/2*t\n\n").unwrap();
        assert!(t.acyclic_default);
        assert_eq!(t.omega_star(&dv("2,1")), BiLaurent::from_terms([((-1, 0), int(-1)), ((0, 1), rat(1, 2))]));
        assert_eq!(t.omega_star(&dv("0,1")), BiLaurent::one());
        assert!(t.omega_star(&dv("1,1")).is_zero());
        assert!(AttractorTable::parse("gamma = 2,1").is_err());
        assert!(AttractorTable::parse("gamma = 2,x ; omega_star = 1").is_err());
        assert!(AttractorTable::parse("gamma = 0,0 ; omega_star = 1").is_err());
        assert!(AttractorTable::parse("gamma = 1,1 ; omega_star = y +").is_err());
    }

    #[test]
    fn dt_of_divisible_class() {
        let ctx = DtContext { strategy: &OmegaPerturbed, params: SampleParams::default(), cache: None };
        let (bar, int_) =
            integer_dt(&Quiver::kronecker(1), &dv("2,2"), &Covector::from_ints(&[1, -1]), &AttractorTable::acyclic(), &ctx)
                .unwrap();
        // A2 has no stable representation of class (2,2); Ω̄ is the multicover of Ω_(1,1) = 1
        assert_eq!(bar, crate::algebra::multicover_weight(2));
        assert!(int_.unwrap().is_zero());
    }
}
