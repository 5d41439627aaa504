//! Ω̄_γ = Σ_{k | γ} (1/k)(y − y⁻¹)/(y^k − y^{−k}) Ω_{γ/k}(y^k, t^k) and its inverse.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DtError;
use crate::algebra::{int, multicover_weight, BiLaurent, RatFunc};
use crate::lattice::DimVec;

/// Ω̄ at every multiple kγ' ≤ bound of a class γ' in the table. Zeros are omitted.
pub fn rational_from_integer(table: &BTreeMap<DimVec, BiLaurent>, bound: &DimVec) -> BTreeMap<DimVec, RatFunc> {
    let mut out: BTreeMap<DimVec, RatFunc> = BTreeMap::new();
    for (g, v) in table {
        if v.is_zero() {
            continue;
        }
        let mut k = 1;
        while g.scale(k).le(bound) {
            let term = &multicover_weight(k) * &RatFunc::from(v.substitute_power(k));
            let e = out.entry(g.scale(k)).or_insert_with(RatFunc::zero);
            *e = &*e + &term;
            k += 1;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn divisors(g: &DimVec) -> Vec<(i64, DimVec)> {
    let n = g.gcd();
    (1..=n).filter(|k| n % k == 0).map(|k| (k, DimVec(g.0.iter().map(|x| x / k).collect()))).collect()
}

/// Möbius inversion of the multicover formula. Classes absent from the table have Ω̄ = 0.
pub fn integer_from_rational(table: &BTreeMap<DimVec, RatFunc>) -> Result<BTreeMap<DimVec, BiLaurent>, DtError> {
    let mut classes: BTreeSet<(i64, DimVec)> = BTreeSet::new();
    for g in table.keys() {
        for (_, d) in divisors(g) {
            classes.insert((d.total(), d));
        }
    }
    let mut omega: BTreeMap<DimVec, BiLaurent> = BTreeMap::new();
    for (_, g) in classes {
        let mut v = table.get(&g).cloned().unwrap_or_else(RatFunc::zero);
        for (k, d) in divisors(&g).into_iter().skip(1) {
            if let Some(o) = omega.get(&d) {
                v = &v - &(&multicover_weight(k) * &RatFunc::from(o.substitute_power(k)));
            }
        }
        let p = match v.as_polynomial() {
            Some(p) if p.is_integral() => p.clone(),
            _ => return Err(DtError::NotPolynomial { gamma: g.to_string(), value: v.to_string() }),
        };
        if !p.is_zero() {
            omega.insert(g, p);
        }
    }
    Ok(omega)
}

/// A seeded table of one to four classes δ ≤ bound with small integral Laurent polynomials.
pub fn random_integer_table(bound: &DimVec, seed: u64) -> BTreeMap<DimVec, BiLaurent> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(4 << 40);
    let classes = bound.sub_vectors();
    let mut out = BTreeMap::new();
    for _ in 0..rng.gen_range(1..=4) {
        let g = classes[rng.gen_range(0..classes.len())].clone();
        let terms: Vec<_> = (0..rng.gen_range(1..=3))
            .map(|_| ((rng.gen_range(-3..=3), rng.gen_range(0..=2)), int(rng.gen_range(-3..=3))))
            .collect();
        let p = BiLaurent::from_terms(terms);
        if !p.is_zero() {
            out.insert(g, p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn dv(s: &str) -> DimVec {
        s.parse().unwrap()
    }

    #[test]
    fn multiples_of_a_unit() {
        let t = BTreeMap::from([(dv("1,0"), BiLaurent::one())]);
        let r = rational_from_integer(&t, &dv("3,1"));
        assert_eq!(r.len(), 3);
        assert_eq!(r[&dv("2,0")], multicover_weight(2));
        assert_eq!(r[&dv("2,0")].to_string(), "(1/2*y)/(1 + y^2)");
        let back = integer_from_rational(&r).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn round_trip_with_t() {
        let t = BTreeMap::from([
            (dv("1,1"), BiLaurent::from_terms([((1, 1), int(-2)), ((-1, 0), int(3))])),
            (dv("2,2"), BiLaurent::from_terms([((0, 2), int(1))])),
            (dv("1,2"), BiLaurent::one()),
        ]);
        let r = rational_from_integer(&t, &dv("4,4"));
        assert_eq!(integer_from_rational(&r).unwrap(), t);
    }

    #[test]
    fn random_round_trips() {
        let b = dv("4,4");
        for seed in 0..10 {
            let t = random_integer_table(&b, seed);
            assert_eq!(integer_from_rational(&rational_from_integer(&t, &b)).unwrap(), t);
        }
    }

    #[test]
    fn not_polynomial() {
        // 1/(2(y + y⁻¹)) alone at (2,0): its inversion is not a Laurent polynomial
        let v = RatFunc::new(BiLaurent::from_terms([((1, 0), rat(1, 2))]), BiLaurent::from_terms([((0, 0), int(1)), ((2, 0), int(1))]))
            .unwrap();
        let r = BTreeMap::from([(dv("2,0"), v)]);
        assert!(matches!(integer_from_rational(&r), Err(DtError::NotPolynomial { .. })));
        let half = BTreeMap::from([(dv("1,0"), RatFunc::from_rat(rat(1, 2)))]);
        assert!(matches!(integer_from_rational(&half), Err(DtError::NotPolynomial { .. })));
        // Ω̄_(2,0) = 1 inverts to Ω_(2,0) = 1
        let one = BTreeMap::from([(dv("2,0"), RatFunc::one())]);
        assert_eq!(integer_from_rational(&one).unwrap()[&dv("2,0")], BiLaurent::one());
    }
}
