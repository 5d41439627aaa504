//! Memo table for F_r^θ keyed by (r, η, sign α), optionally persisted on disk.

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::sync::Mutex;

use sha2::{Digest, Sha256};

use crate::algebra::{BiLaurent, LaurentPoly};
use crate::lattice::AuxLattice;

/// F depends only on r, η and the signs of α(e_A) over nonempty A.
pub fn cache_key(aux: &AuxLattice) -> String {
    let rows: Vec<String> = aux
        .eta
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    let signs: String = aux
        .alpha_signs()
        .iter()
        .map(|s| match s {
            1 => '+',
            -1 => '-',
            _ => '0',
        })
        .collect();
    format!("r={};eta={};signs={}", aux.r(), rows.join("/"), signs)
}

#[derive(Debug, Default)]
pub struct FCache {
    mem: Mutex<HashMap<String, LaurentPoly>>,
    dir: Option<PathBuf>,
}

impl FCache {
    pub fn in_memory() -> Self {
        FCache::default()
    }

    /// Entries are also read from and written to `dir`.
    pub fn on_disk(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(FCache { mem: Mutex::default(), dir: Some(dir) })
    }

    pub fn len(&self) -> usize {
        self.mem.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        let h = hex::encode(Sha256::digest(key.as_bytes()));
        self.dir.as_ref().map(|d| d.join(format!("{h}.f")))
    }

    fn load(&self, key: &str) -> Option<LaurentPoly> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        let (k, v) = text.trim_end().split_once('\n')?;
        if k != key {
            return None;
        }
        v.parse::<BiLaurent>().ok()?.to_laurent()
    }

    fn store(&self, key: &str, v: &LaurentPoly) {
        let Some(path) = self.path(key) else { return };
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        // best effort: a failed write only costs a recomputation later
        if fs::write(&tmp, format!("{key}\n{v}\n")).is_ok() && fs::rename(&tmp, &path).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }

    pub fn get(&self, aux: &AuxLattice) -> Option<LaurentPoly> {
        let key = cache_key(aux);
        if let Some(v) = self.mem.lock().unwrap().get(&key) {
            return Some(v.clone());
        }
        let v = self.load(&key)?;
        self.mem.lock().unwrap().insert(key, v.clone());
        Some(v)
    }

    pub fn get_or_compute<E>(
        &self,
        aux: &AuxLattice,
        compute: impl FnOnce() -> Result<LaurentPoly, E>,
    ) -> Result<LaurentPoly, E> {
        if let Some(v) = self.get(aux) {
            return Ok(v);
        }
        let v = compute()?;
        let key = cache_key(aux);
        self.store(&key, &v);
        self.mem.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::kappa;
    use crate::lattice::{Covector, SkewForm};

    fn aux(m: i64, a: &[i64]) -> AuxLattice {
        AuxLattice::from_parts(SkewForm::new(vec![vec![0, m], vec![-m, 0]]).unwrap(), Covector::from_ints(a)).unwrap()
    }

    #[test]
    fn key_uses_signs_only() {
        assert_eq!(cache_key(&aux(2, &[1, -1])), cache_key(&aux(2, &[5, -5])));
        assert_ne!(cache_key(&aux(2, &[1, -1])), cache_key(&aux(2, &[-1, 1])));
        assert_eq!(cache_key(&aux(2, &[1, -1])), "r=2;eta=0,2/-2,0;signs=+-0");
    }

    #[test]
    fn memoizes() {
        let c = FCache::in_memory();
        let a = aux(3, &[1, -1]);
        let v = c.get_or_compute::<()>(&a, || Ok(kappa(3))).unwrap();
        let w = c.get_or_compute::<()>(&a, || panic!("recomputed")).unwrap();
        assert_eq!(v, w);
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn disk_round_trip_and_corruption() {
        let dir = std::env::temp_dir().join(format!("flowtree-cache-test-{}", std::process::id()));
        let a = aux(3, &[1, -1]);
        {
            let c = FCache::on_disk(&dir).unwrap();
            c.get_or_compute::<()>(&a, || Ok(kappa(3))).unwrap();
        }
        let c = FCache::on_disk(&dir).unwrap();
        assert_eq!(c.get(&a), Some(kappa(3)));
        let path = c.path(&cache_key(&a)).unwrap();
        fs::write(&path, "garbage").unwrap();
        let c = FCache::on_disk(&dir).unwrap();
        assert_eq!(c.get(&a), None);
        assert_eq!(c.get_or_compute::<()>(&a, || Ok(kappa(3))).unwrap(), kappa(3));
        let _ = fs::remove_dir_all(&dir);
    }
}
