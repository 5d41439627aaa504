//! Seeded random quiver instances for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_aux, is_j_generic, AuxLattice, Covector, DimVec, Quiver};

/// A quiver on r vertices with up to `max_arrows` arrows per ordered pair, the unit classes, and a
/// θ on the wall of their sum that is generic for the full index set.
#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub quiver: Quiver,
    pub gammas: Vec<DimVec>,
    pub theta: Covector,
    pub aux: AuxLattice,
}

pub fn random_instance(r: usize, max_arrows: u64, seed: u64) -> RandomInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(3 << 40);
    let arrows: Vec<Vec<u64>> =
        (0..r).map(|i| (0..r).map(|j| if i == j { 0 } else { rng.gen_range(0..=max_arrows) }).collect()).collect();
    let quiver = Quiver::new(arrows);
    let gammas: Vec<DimVec> = (0..r).map(|i| DimVec::unit(r, i)).collect();
    loop {
        let mut th: Vec<i64> = (0..r.saturating_sub(1)).map(|_| rng.gen_range(-6..=6)).collect();
        th.push(-th.iter().sum::<i64>());
        let theta = Covector::from_ints(&th);
        let aux = build_aux(&quiver, &gammas, &theta).expect("unit classes");
        if is_j_generic(&aux.eta, &aux.alpha, aux.full()) {
            return RandomInstance { quiver, gammas, theta, aux };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_generic() {
        for seed in 0..20 {
            let a = random_instance(4, 2, seed);
            let b = random_instance(4, 2, seed);
            assert_eq!(a.aux, b.aux);
            assert!(is_j_generic(&a.aux.eta, &a.aux.alpha, a.aux.full()));
            assert!(a.aux.eta.rows().iter().flatten().all(|x| x.abs() <= 2));
        }
    }
}
