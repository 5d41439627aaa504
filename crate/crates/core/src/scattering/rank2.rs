//! Consistent rank-2 scattering diagrams, reconstructed order by order from initial data.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::lie::{GradedLieElt, LieAlgebra};
use super::ScatteringError;
use crate::algebra::{sgn, RatFunc};
use crate::dt::AttractorTable;
use crate::lattice::{Covector, DimVec, SkewForm};

pub type Dir = (i64, i64);

/// A half-line ℝ_{>0}·dir in θ-space carrying Σ_k c_k z^{k·class}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub dir: Dir,
    pub class: Dir,
    pub elt: GradedLieElt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Diagram {
    pub m: i64,
    pub bound: i64,
    /// Sorted counterclockwise by angle from the positive θ₁-axis.
    pub rays: Vec<Ray>,
}

fn primitive(a: i64, b: i64) -> Dir {
    let g = a.gcd(&b);
    (a / g, b / g)
}

/// Attractor-side half-line of n̄ = (a,b): the direction of ⟨n̄, −⟩ = m·(−b, a).
fn attractor_dir(m: i64, (a, b): Dir) -> Dir {
    let s = m.signum();
    (-s * b, s * a)
}

fn half(d: Dir) -> u8 {
    if d.1 > 0 || (d.1 == 0 && d.0 > 0) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: Dir, b: Dir) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&(a.0 * b.1 - a.1 * b.0)))
}

/// ε = −sgn of the rate of change of θ(n) along the path at the crossing.
fn crossing_sign(dir: Dir, n: Dir, ccw: bool) -> i8 {
    let v = if ccw { (-dir.1, dir.0) } else { (dir.1, -dir.0) };
    -((v.0 * n.0 + v.1 * n.1).signum() as i8)
}

/// Path-ordered log product along a route from (1,1) to (−1,−1); `ccw` selects the quadrant II route.
fn route_log(alg: &LieAlgebra, walls: &[(Dir, Dir, &GradedLieElt)], ccw: bool) -> GradedLieElt {
    let mut ws: Vec<&(Dir, Dir, &GradedLieElt)> = walls.iter().filter(|w| !w.2.is_zero()).collect();
    // walls lie in quadrants II and IV; swapping coordinates turns the clockwise route into a counterclockwise one
    let key = |d: Dir| if ccw { d } else { (d.1, d.0) };
    ws.sort_by(|x, y| angle_cmp(key(x.0), key(y.0)));
    let crossings: Vec<(GradedLieElt, i8)> =
        ws.iter().map(|(d, n, e)| ((*e).clone(), crossing_sign(*d, *n, ccw))).collect();
    alg.path_ordered_product(&crossings)
}

/// Ω̄* grouped by primitive class, total degree ≤ bound.
pub fn initial_from_table(table: &AttractorTable, bound: i64) -> BTreeMap<Dir, GradedLieElt> {
    let stars = table.rational_table(&DimVec(vec![bound, bound]));
    let mut out: BTreeMap<Dir, GradedLieElt> = BTreeMap::new();
    for (g, v) in stars {
        if g.total() > bound {
            continue;
        }
        let p = primitive(g.0[0], g.0[1]);
        out.entry(p).or_default().add_term(g.0.clone(), v);
    }
    out
}

/// The unique consistent diagram whose attractor-side rays carry `initial`.
pub fn reconstruct_rank2(m: i64, initial: &BTreeMap<Dir, GradedLieElt>, bound: i64) -> Rank2Diagram {
    reconstruct(m, initial, bound, None)
}

/// As `reconstruct_rank2`, applying each degree's corrections one class at a time in a seeded random order.
pub fn reconstruct_rank2_shuffled(m: i64, initial: &BTreeMap<Dir, GradedLieElt>, bound: i64, seed: u64) -> Rank2Diagram {
    reconstruct(m, initial, bound, Some(seed))
}

pub(crate) fn lie_algebra(m: i64, bound: i64) -> LieAlgebra {
    LieAlgebra::truncated(SkewForm::new(vec![vec![0, m], vec![-m, 0]]).expect("skew"), bound)
}

fn reconstruct(m: i64, initial: &BTreeMap<Dir, GradedLieElt>, bound: i64, shuffle: Option<u64>) -> Rank2Diagram {
    let alg = lie_algebra(m, bound);
    let initial: BTreeMap<Dir, GradedLieElt> = initial
        .iter()
        .map(|(k, v)| (*k, alg.project(v)))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    let mut rays = Vec::new();
    if m == 0 {
        for (n, e) in &initial {
            for d in [(-n.1, n.0), (n.1, -n.0)] {
                rays.push(Ray { dir: d, class: *n, elt: e.clone() });
            }
        }
    } else {
        // route A crosses the attractor sides, route B the opposite sides
        let ccw_a = m > 0;
        let a_walls: Vec<(Dir, Dir, &GradedLieElt)> = initial.iter().map(|(n, e)| (attractor_dir(m, *n), *n, e)).collect();
        let psi_a = route_log(&alg, &a_walls, ccw_a);
        let mut b_vals: BTreeMap<Dir, GradedLieElt> = BTreeMap::new();
        let mut rng = shuffle.map(ChaCha8Rng::seed_from_u64);
        for d in 1..=bound {
            let mismatch = |b_vals: &BTreeMap<Dir, GradedLieElt>| {
                let walls: Vec<(Dir, Dir, &GradedLieElt)> = b_vals
                    .iter()
                    .map(|(n, e)| {
                        let a = attractor_dir(m, *n);
                        ((-a.0, -a.1), *n, e)
                    })
                    .collect();
                let psi_b = route_log(&alg, &walls, !ccw_a);
                alg.bch(&psi_b.neg(), &psi_a).filter(|g| g.iter().sum::<i64>() == d)
            };
            let l = mismatch(&b_vals);
            let mut terms: Vec<(Vec<i64>, RatFunc)> = l.terms().map(|(g, c)| (g.clone(), c.clone())).collect();
            match rng.as_mut() {
                None => {
                    for (g, c) in terms {
                        b_vals.entry(primitive(g[0], g[1])).or_default().add_term(g, c);
                    }
                }
                Some(rng) => {
                    terms.shuffle(rng);
                    for (g, _) in terms {
                        // recompute: the remaining degree-d mismatch is unaffected by other classes
                        let c = mismatch(&b_vals).coeff(&g);
                        b_vals.entry(primitive(g[0], g[1])).or_default().add_term(g, c);
                    }
                }
            }
        }
        for (n, e) in &initial {
            rays.push(Ray { dir: attractor_dir(m, *n), class: *n, elt: e.clone() });
        }
        for (n, e) in b_vals {
            if !e.is_zero() {
                let a = attractor_dir(m, n);
                rays.push(Ray { dir: (-a.0, -a.1), class: n, elt: e });
            }
        }
    }
    rays.sort_by(|x, y| angle_cmp(x.dir, y.dir));
    Rank2Diagram { m, bound, rays }
}

impl Rank2Diagram {
    /// log of the product around a full counterclockwise loop; zero for a consistent diagram.
    pub fn loop_log(&self) -> GradedLieElt {
        let alg = lie_algebra(self.m, self.bound);
        let crossings: Vec<(GradedLieElt, i8)> =
            self.rays.iter().map(|r| (r.elt.clone(), crossing_sign(r.dir, r.class, true))).collect();
        alg.path_ordered_product(&crossings)
    }

    pub fn ray(&self, dir: Dir) -> Option<&Ray> {
        self.rays.iter().find(|r| r.dir == dir)
    }

    /// `ray a,b : <element>` per ray.
    pub fn render(&self) -> String {
        self.rays.iter().map(|r| format!("ray {},{} : {}\n", r.dir.0, r.dir.1, r.elt)).collect()
    }
}

/// Ω̄_γ^θ read off the ray through θ.
pub fn dt_from_rank2(diag: &Rank2Diagram, gamma: &DimVec, theta: &Covector) -> Result<RatFunc, ScatteringError> {
    if gamma.dim() != 2 || theta.dim() != 2 {
        return Err(ScatteringError::DimensionMismatch);
    }
    if !gamma.is_positive() {
        return Err(ScatteringError::NotOnWall(format!("class {gamma} is not positive")));
    }
    if gamma.total() > diag.bound {
        return Err(ScatteringError::DegreeExceeded { gamma: gamma.to_string(), bound: diag.bound });
    }
    if !theta.eval_dim(gamma).is_zero() || theta.is_zero() {
        return Err(ScatteringError::NotOnWall(format!("theta {theta} is not a nonzero point of the wall of {gamma}")));
    }
    let (a, b) = primitive(gamma.0[0], gamma.0[1]);
    // θ = λ(−b, a)
    let s = if a != 0 { sgn(&theta.0[1]) } else { -sgn(&theta.0[0]) } as i64;
    Ok(diag.ray((-s * b, s * a)).map(|r| r.elt.coeff(&gamma.0)).unwrap_or_else(RatFunc::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::kappa;

    fn acyclic(m: i64, d: i64) -> Rank2Diagram {
        reconstruct_rank2(m, &initial_from_table(&AttractorTable::acyclic(), d), d)
    }

    #[test]
    fn commuting_case_keeps_input() {
        let d = acyclic(0, 4);
        assert_eq!(d.rays.len(), 4);
        assert!(d.loop_log().is_zero());
    }

    #[test]
    fn a2_pentagon() {
        let d = acyclic(1, 2);
        assert_eq!(d.rays.len(), 5);
        let r = d.ray((1, -1)).unwrap();
        assert_eq!(r.class, (1, 1));
        assert_eq!(r.elt, GradedLieElt::monomial(vec![1, 1], RatFunc::one()));
        assert!(d.loop_log().is_zero());
        let d = acyclic(1, 6);
        assert_eq!(d.rays.len(), 5);
        assert!(d.loop_log().is_zero());
    }

    #[test]
    fn kronecker2() {
        let d = acyclic(2, 6);
        assert!(d.loop_log().is_zero());
        for dir in [(1, -1), (1, -2), (2, -1)] {
            assert!(d.ray(dir).is_some(), "{dir:?}");
        }
        assert_eq!(d.ray((1, -1)).unwrap().elt.coeff(&[1, 1]), RatFunc::from(-&kappa(2)));
    }

    #[test]
    fn shuffled_is_identical() {
        for m in [-2, 3] {
            let init = initial_from_table(&AttractorTable::acyclic(), 5);
            let a = reconstruct_rank2(m, &init, 5);
            let b = reconstruct_rank2_shuffled(m, &init, 5, 11);
            assert_eq!(a, b);
            assert!(a.loop_log().is_zero());
        }
    }

    #[test]
    fn read_off() {
        let d = acyclic(1, 3);
        let g = |s: &str| s.parse::<DimVec>().unwrap();
        assert_eq!(dt_from_rank2(&d, &g("1,1"), &Covector::from_ints(&[1, -1])).unwrap(), RatFunc::one());
        assert_eq!(dt_from_rank2(&d, &g("1,1"), &Covector::from_ints(&[-1, 1])).unwrap(), RatFunc::zero());
        assert_eq!(dt_from_rank2(&d, &g("1,0"), &Covector::from_ints(&[0, -3])).unwrap(), RatFunc::one());
        assert_eq!(dt_from_rank2(&d, &g("2,1"), &Covector::from_ints(&[1, -2])).unwrap(), RatFunc::zero());
        assert!(matches!(
            dt_from_rank2(&d, &g("2,2"), &Covector::from_ints(&[1, -1])),
            Err(ScatteringError::DegreeExceeded { .. })
        ));
        assert!(matches!(
            dt_from_rank2(&d, &g("1,1"), &Covector::from_ints(&[1, 1])),
            Err(ScatteringError::NotOnWall(_))
        ));
    }
}
