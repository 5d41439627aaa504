//! Quivers, dimension vectors, skew forms, stability covectors and the
//! auxiliary lattice 𝒩 = ⊕ ℤe_i attached to a list of classes γ_i.

mod generic;
mod random;
mod sampler;

pub use random::{random_instance, RandomInstance};
pub use generic::{in_u_eta, in_u_j, in_v_alpha, is_gamma_generic, is_j_generic};
pub use sampler::{sample_beta, sample_omega, SampleError, SampleParams, DEFAULT_BUDGET};

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::BigRat;
use crate::trees::{mask_indices, Mask};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("theta does not vanish on the total class: theta(gamma) = {0}")]
    NotOnWall(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("class {0} is not a nonzero nonnegative dimension vector")]
    NotPositive(String),
    #[error("form is not skew-symmetric")]
    NotSkew,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A quiver given by its arrow counts a_ij (arrows i → j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    arrows: Vec<Vec<u64>>,
}

impl Quiver {
    pub fn new(arrows: Vec<Vec<u64>>) -> Self {
        let n = arrows.len();
        assert!(n > 0 && arrows.iter().all(|row| row.len() == n), "arrow matrix must be square and nonempty");
        Quiver { arrows }
    }

    /// Two vertices and m arrows 1 → 2; m = 1 is the A2 quiver.
    pub fn kronecker(m: u64) -> Self {
        Quiver::new(vec![vec![0, m], vec![0, 0]])
    }

    pub fn vertex_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self, i: usize, j: usize) -> u64 {
        self.arrows[i][j]
    }

    /// ⟨γ, γ'⟩ = Σ (a_ij − a_ji) γ_i γ'_j.
    pub fn euler_skew(&self) -> SkewForm {
        let n = self.vertex_count();
        let m = (0..n)
            .map(|i| (0..n).map(|j| self.arrows[i][j] as i64 - self.arrows[j][i] as i64).collect())
            .collect();
        SkewForm { m }
    }

    /// Parses `vertices <k>` and `arrow <i> <j> <count>` lines (1-based).
    pub fn parse(text: &str) -> Result<Self, LatticeError> {
        let mut arrows: Option<Vec<Vec<u64>>> = None;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| LatticeError::Parse { line: ln + 1, msg: msg.to_string() };
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["vertices", k] => {
                    if arrows.is_some() {
                        return Err(err("duplicate vertices statement"));
                    }
                    let k: usize = k.parse().map_err(|_| err("bad vertex count"))?;
                    if k == 0 {
                        return Err(err("vertex count must be positive"));
                    }
                    arrows = Some(vec![vec![0; k]; k]);
                }
                ["arrow", i, j, c] => {
                    let a = arrows.as_mut().ok_or_else(|| err("arrow before vertices"))?;
                    let k = a.len();
                    let idx = |s: &str| -> Result<usize, LatticeError> {
                        let v: usize = s.parse().map_err(|_| err("bad vertex index"))?;
                        if v == 0 || v > k {
                            return Err(err("vertex index out of range"));
                        }
                        Ok(v - 1)
                    };
                    let (i, j) = (idx(i)?, idx(j)?);
                    let c: u64 = c.parse().map_err(|_| err("bad arrow count"))?;
                    a[i][j] += c;
                }
                _ => return Err(err("expected `vertices <k>` or `arrow <i> <j> <count>`")),
            }
        }
        arrows.map(Quiver::new).ok_or(LatticeError::Parse { line: 0, msg: "missing vertices statement".into() })
    }
}

/// Integer skew-symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewForm {
    m: Vec<Vec<i64>>,
}

impl SkewForm {
    pub fn new(m: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = m.len();
        for i in 0..n {
            if m[i].len() != n {
                return Err(LatticeError::DimensionMismatch { expected: n, got: m[i].len() });
            }
            for j in 0..n {
                if m[i][j] != -m[j][i] {
                    return Err(LatticeError::NotSkew);
                }
            }
        }
        Ok(SkewForm { m })
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.m[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.m
    }

    pub fn pair(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                s += ai * self.m[i][j] * bj;
            }
        }
        s
    }

    /// Pairing of {0,1}-vectors e_A, e_B.
    pub fn pair_masks(&self, a: Mask, b: Mask) -> i64 {
        let mut s = 0;
        for i in mask_indices(a) {
            for j in mask_indices(b) {
                s += self.m[i][j];
            }
        }
        s
    }
}

/// Dimension vector γ ∈ ℤ^{Q₀}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVec(pub Vec<i64>);

impl DimVec {
    pub fn new(v: Vec<i64>) -> Self {
        DimVec(v)
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVec(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Membership in N⁺.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x >= 0) && self.0.iter().any(|&x| x > 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn gcd(&self) -> i64 {
        self.0.iter().fold(0, |g, &x| num_integer::gcd(g, x))
    }

    pub fn primitive(&self) -> DimVec {
        let g = self.gcd().max(1);
        DimVec(self.0.iter().map(|x| x / g).collect())
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().filter(|&&x| x != 0).count() == 1 && self.total() == 1 && self.is_positive()
    }

    pub fn add(&self, o: &DimVec) -> DimVec {
        DimVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &DimVec) -> DimVec {
        DimVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> DimVec {
        DimVec(self.0.iter().map(|a| k * a).collect())
    }

    /// Componentwise ≤.
    pub fn le(&self, o: &DimVec) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn is_collinear(&self, o: &DimVec) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.0[i] * o.0[j] == self.0[j] * o.0[i]))
    }

    /// If self = k·o for an integer k ≥ 1, returns k.
    pub fn multiple_of(&self, o: &DimVec) -> Option<i64> {
        let i = o.0.iter().position(|&x| x != 0)?;
        let k = self.0[i] / o.0[i];
        (k >= 1 && o.scale(k) == *self).then_some(k)
    }

    /// All nonzero δ with 0 ≤ δ ≤ self componentwise.
    pub fn sub_vectors(&self) -> Vec<DimVec> {
        let mut out = vec![vec![]];
        for &g in &self.0 {
            out = out.into_iter().flat_map(|v: Vec<i64>| (0..=g).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        out.into_iter().map(DimVec).filter(|d| d.0.iter().any(|&x| x != 0)).collect()
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for DimVec {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse::<i64>()).collect();
        v.map(DimVec).map_err(|_| LatticeError::Parse { line: 0, msg: format!("bad dimension vector {s:?}") })
    }
}

/// Covector with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Covector(pub Vec<BigRat>);

impl Covector {
    pub fn zero(n: usize) -> Self {
        Covector(vec![BigRat::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Covector(v.iter().map(|&x| crate::algebra::int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn eval(&self, g: &[i64]) -> BigRat {
        let mut s = BigRat::zero();
        for (c, &x) in self.0.iter().zip(g) {
            if x != 0 {
                s += c * BigRat::from_integer(x.into());
            }
        }
        s
    }

    pub fn eval_dim(&self, g: &DimVec) -> BigRat {
        self.eval(&g.0)
    }

    /// θ(e_J).
    pub fn eval_mask(&self, m: Mask) -> BigRat {
        mask_indices(m).fold(BigRat::zero(), |s, i| s + &self.0[i])
    }

    pub fn add(&self, o: &Covector) -> Covector {
        Covector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Covector) -> Covector {
        Covector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &BigRat) -> Covector {
        Covector(self.0.iter().map(|a| a * s).collect())
    }

    /// self − s·o
    pub fn sub_scaled(&self, s: &BigRat, o: &Covector) -> Covector {
        Covector(self.0.iter().zip(&o.0).map(|(a, b)| a - s * b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Covector {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: Result<Vec<BigRat>, _> = s.split(',').map(|x| x.trim().parse::<BigRat>()).collect();
        v.map(Covector).map_err(|_| LatticeError::Parse { line: 0, msg: format!("bad covector {s:?}") })
    }
}

/// Exact rational skew form ω on 𝒩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaForm {
    m: Vec<Vec<BigRat>>,
}

impl OmegaForm {
    pub fn new(m: Vec<Vec<BigRat>>) -> Result<Self, LatticeError> {
        let n = m.len();
        for i in 0..n {
            if m[i].len() != n {
                return Err(LatticeError::DimensionMismatch { expected: n, got: m[i].len() });
            }
            for j in 0..n {
                if m[i][j] != -&m[j][i] {
                    return Err(LatticeError::NotSkew);
                }
            }
        }
        Ok(OmegaForm { m })
    }

    pub fn from_skew(s: &SkewForm) -> Self {
        OmegaForm {
            m: s.rows().iter().map(|row| row.iter().map(|&x| crate::algebra::int(x)).collect()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRat {
        &self.m[i][j]
    }

    pub fn pair_masks(&self, a: Mask, b: Mask) -> BigRat {
        let mut s = BigRat::zero();
        for i in mask_indices(a) {
            for j in mask_indices(b) {
                s += &self.m[i][j];
            }
        }
        s
    }

    /// ι_{e_A}ω = ω(e_A, −).
    pub fn iota(&self, a: Mask) -> Covector {
        let n = self.dim();
        let mut v = vec![BigRat::zero(); n];
        for i in mask_indices(a) {
            for (j, x) in v.iter_mut().enumerate() {
                *x += &self.m[i][j];
            }
        }
        Covector(v)
    }
}

/// The auxiliary lattice of a list of classes γ₁..γ_r: η(e_i, e_j) = ⟨γ_i, γ_j⟩ and α = θ ∘ p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxLattice {
    pub gammas: Vec<DimVec>,
    pub eta: SkewForm,
    pub alpha: Covector,
}

impl AuxLattice {
    /// Direct construction; the classes are taken to be the unit vectors of ℤ^r.
    pub fn from_parts(eta: SkewForm, alpha: Covector) -> Result<Self, LatticeError> {
        let r = eta.dim();
        if alpha.dim() != r {
            return Err(LatticeError::DimensionMismatch { expected: r, got: alpha.dim() });
        }
        let total = alpha.0.iter().fold(BigRat::zero(), |s, x| s + x);
        if !total.is_zero() {
            return Err(LatticeError::NotOnWall(total.to_string()));
        }
        Ok(AuxLattice { gammas: (0..r).map(|i| DimVec::unit(r, i)).collect(), eta, alpha })
    }

    pub fn r(&self) -> usize {
        self.eta.dim()
    }

    pub fn full(&self) -> Mask {
        crate::trees::full_mask(self.r())
    }

    pub fn eta_pair(&self, a: Mask, b: Mask) -> i64 {
        self.eta.pair_masks(a, b)
    }

    /// Sign of α on every nonempty subset, in mask order.
    /// sgn α(e_A) for every nonempty A, indexed by mask − 1.
    pub fn alpha_signs(&self) -> Vec<i8> {
        (1..=self.full()).map(|m| crate::algebra::sgn(&self.alpha.eval_mask(m))).collect()
    }
}

pub fn build_aux(q: &Quiver, gammas: &[DimVec], theta: &Covector) -> Result<AuxLattice, LatticeError> {
    let n = q.vertex_count();
    if theta.dim() != n {
        return Err(LatticeError::DimensionMismatch { expected: n, got: theta.dim() });
    }
    for g in gammas {
        if g.dim() != n {
            return Err(LatticeError::DimensionMismatch { expected: n, got: g.dim() });
        }
        if !g.is_positive() {
            return Err(LatticeError::NotPositive(g.to_string()));
        }
    }
    let total = gammas.iter().fold(DimVec(vec![0; n]), |s, g| s.add(g));
    let th = theta.eval_dim(&total);
    if !th.is_zero() {
        return Err(LatticeError::NotOnWall(th.to_string()));
    }
    let form = q.euler_skew();
    let eta = SkewForm {
        m: gammas.iter().map(|a| gammas.iter().map(|b| form.pair(&a.0, &b.0)).collect()).collect(),
    };
    let alpha = Covector(gammas.iter().map(|g| theta.eval_dim(g)).collect());
    Ok(AuxLattice { gammas: gammas.to_vec(), eta, alpha })
}
