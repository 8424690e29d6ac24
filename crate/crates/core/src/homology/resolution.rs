//! Minimal free resolutions by iterated kernels of minimal covers.
//!
//! The `i`-th syzygy `Ω_i` is stored as a k-basis of a subspace of the free
//! module `A^{β_{i-1}}`, whose coordinates are indexed `gen * n + s` for the
//! basis element `b_s` in the summand of generator `gen`.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::module::FModule;
use crate::ring::FiniteCommutativeAlgebra;
use crate::sparse::{sparse_kernel, SparseEchelon, SparseVec};

pub const MAX_RESOLUTION_LENGTH: usize = 24;
/// Largest free rank the engine is willing to build.
pub const MAX_FREE_RANK: usize = 1 << 22;

#[derive(Clone, Debug)]
pub struct FreeResolution {
    module: FModule,
    betti: Vec<usize>,
    syzygy_dims: Vec<usize>,
    augmentation: Vec<SparseVec>,
    /// `differentials[i][j]` is the image of the `j`-th basis element of
    /// `F_i` in `F_{i-1}`; entry 0 is empty.
    differentials: Vec<Vec<SparseVec>>,
}

/// `b_s · w` for `w` in a free module over `alg`.
pub fn free_mul_basis(alg: &FiniteCommutativeAlgebra, s: usize, w: &SparseVec) -> SparseVec {
    let n = alg.dim();
    let mut raw = Vec::new();
    for (idx, c) in w.iter() {
        let (g, t) = (idx / n, idx % n);
        for (u, d) in alg.mul_basis(s, t).iter() {
            raw.push((g * n + u, c * d));
        }
    }
    SparseVec::from_entries(raw)
}

impl FreeResolution {
    /// Minimal resolution prefix `F_N → … → F_0 → M`.
    pub fn compute(module: &FModule, length: usize) -> Result<Self> {
        if length > MAX_RESOLUTION_LENGTH {
            return Err(Error::CapExceeded {
                what: "resolution length",
                limit: MAX_RESOLUTION_LENGTH,
                got: length,
            });
        }
        let alg = module.algebra().clone();
        let n = alg.dim();
        let field = alg.field();
        let augmentation = module.minimal_generators();
        let mut betti = vec![augmentation.len()];
        let mut syzygy_dims = vec![module.dim()];
        let mut differentials = vec![Vec::new()];

        let images = (0..augmentation.len() * n)
            .map(|idx| module.act_basis(idx % n, &augmentation[idx / n]));
        let (_, mut omega) = sparse_kernel(field, images);

        for _ in 1..=length {
            syzygy_dims.push(omega.len());
            if omega.is_empty() {
                betti.push(0);
                differentials.push(Vec::new());
                continue;
            }
            let mut m_omega = SparseEchelon::new(field);
            for w in &omega {
                for &g in alg.generators() {
                    m_omega.insert(&free_mul_basis(&alg, g, w));
                }
            }
            let gens: Vec<SparseVec> = omega.into_iter().filter(|w| m_omega.insert(w)).collect();
            if gens.len() * n > MAX_FREE_RANK {
                return Err(Error::CapExceeded {
                    what: "free module rank in resolution",
                    limit: MAX_FREE_RANK,
                    got: gens.len() * n,
                });
            }
            betti.push(gens.len());
            let is_last = betti.len() == length + 1;
            omega = if is_last {
                Vec::new()
            } else {
                let images =
                    (0..gens.len() * n).map(|idx| free_mul_basis(&alg, idx % n, &gens[idx / n]));
                sparse_kernel(field, images).1
            };
            differentials.push(gens);
        }
        Ok(FreeResolution {
            module: module.clone(),
            betti,
            syzygy_dims,
            augmentation,
            differentials,
        })
    }

    pub fn module(&self) -> &FModule {
        &self.module
    }
    pub fn algebra(&self) -> &Arc<FiniteCommutativeAlgebra> {
        self.module.algebra()
    }
    pub fn length(&self) -> usize {
        self.betti.len() - 1
    }
    pub fn betti(&self) -> &[usize] {
        &self.betti
    }
    pub fn syzygy_dims(&self) -> &[usize] {
        &self.syzygy_dims
    }
    pub fn augmentation(&self) -> &[SparseVec] {
        &self.augmentation
    }
    /// Images of the basis of `F_i` in `F_{i-1}`, for `1 ≤ i ≤ length`.
    pub fn differential(&self, i: usize) -> &[SparseVec] {
        &self.differentials[i]
    }

    /// Truncation to a shorter prefix.
    pub fn truncate(&self, length: usize) -> FreeResolution {
        let keep = length.min(self.length()) + 1;
        FreeResolution {
            module: self.module.clone(),
            betti: self.betti[..keep].to_vec(),
            syzygy_dims: self.syzygy_dims[..keep].to_vec(),
            augmentation: self.augmentation.clone(),
            differentials: self.differentials[..keep].to_vec(),
        }
    }

    /// Re-checks `d∘d = 0`, `ε∘d_1 = 0` and minimality.
    pub fn verify(&self) -> Result<()> {
        let alg = self.algebra();
        let n = alg.dim();
        for i in 1..=self.length() {
            for (j, w) in self.differentials[i].iter().enumerate() {
                if w.iter().any(|(idx, _)| idx % n == 0) {
                    return Err(Error::InvariantViolation(format!(
                        "differential {i} is not minimal at generator {j}"
                    )));
                }
                let composed = if i == 1 {
                    let mut acc = SparseVec::zero();
                    for (idx, c) in w.iter() {
                        let img = self.module.act_basis(idx % n, &self.augmentation[idx / n]);
                        acc = acc.add_scaled(c, &img);
                    }
                    acc
                } else {
                    let prev = &self.differentials[i - 1];
                    let mut acc = SparseVec::zero();
                    for (idx, c) in w.iter() {
                        acc = acc.add_scaled(c, &free_mul_basis(alg, idx % n, &prev[idx / n]));
                    }
                    acc
                };
                if !composed.is_zero() {
                    return Err(Error::InvariantViolation(format!("d∘d ≠ 0 at step {i}")));
                }
            }
        }
        Ok(())
    }
}

/// Resolution prefixes shared between callers. Lookups may race; a racing
/// duplicate computation produces an identical value.
#[derive(Default)]
pub struct ResolutionCache {
    entries: RwLock<HashMap<u64, Vec<Arc<FreeResolution>>>>,
}

impl ResolutionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn resolve(&self, module: &FModule, length: usize) -> Result<Arc<FreeResolution>> {
        let mut h = DefaultHasher::new();
        module.hash(&mut h);
        let key = h.finish();
        if let Some(found) = self
            .entries
            .read()
            .expect("cache lock")
            .get(&key)
            .and_then(|v| {
                v.iter()
                    .find(|r| r.module() == module && r.length() >= length)
            })
        {
            return Ok(if found.length() == length {
                found.clone()
            } else {
                Arc::new(found.truncate(length))
            });
        }
        let res = Arc::new(FreeResolution::compute(module, length)?);
        let mut map = self.entries.write().expect("cache lock");
        let slot = map.entry(key).or_default();
        slot.retain(|r| !(r.module() == module && r.length() < length));
        slot.push(res.clone());
        Ok(res)
    }

    pub fn len(&self) -> usize {
        self.entries
            .read()
            .expect("cache lock")
            .values()
            .map(Vec::len)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `β_0 … β_N` of a module.
pub fn betti_numbers(module: &FModule, length: usize) -> Result<Vec<usize>> {
    Ok(FreeResolution::compute(module, length)?.betti().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn alg(field: Field, vars: usize, gens: &[&str]) -> Arc<FiniteCommutativeAlgebra> {
        let gens: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let ideal = FiniteCommutativeAlgebra::parse_monomials(vars, &gens).unwrap();
        Arc::new(FiniteCommutativeAlgebra::from_monomial_ideal(field, vars, &ideal).unwrap())
    }

    #[test]
    fn dual_numbers_periodic() {
        let a = alg(Field::Rational, 1, &["x1^2"]);
        let r = FreeResolution::compute(&FModule::residue_field(a), 8).unwrap();
        assert_eq!(r.betti(), &[1; 9]);
        r.verify().unwrap();
    }

    #[test]
    fn free_module_has_no_syzygies() {
        let a = alg(Field::Rational, 2, &["x1^2", "x2^2"]);
        let r = FreeResolution::compute(&FModule::free(a, 1).unwrap(), 4).unwrap();
        assert_eq!(r.betti(), &[1, 0, 0, 0, 0]);
    }

    #[test]
    fn m_squared_zero_doubles() {
        let a = alg(Field::Prime(32003), 2, &["x1^2", "x1*x2", "x2^2"]);
        let r = FreeResolution::compute(&FModule::residue_field(a), 10).unwrap();
        let expect: Vec<usize> = (0..=10).map(|i| 1 << i).collect();
        assert_eq!(r.betti(), &expect[..]);
        r.verify().unwrap();
    }

    #[test]
    fn complete_intersection_betti() {
        // k over k[x,y]/(x^2,y^2): Poincaré series 1/(1-t)^2, so β_i = i + 1
        let a = alg(Field::Rational, 2, &["x1^2", "x2^2"]);
        let r = FreeResolution::compute(&FModule::residue_field(a), 7).unwrap();
        let expect: Vec<usize> = (0..=7).map(|i| i + 1).collect();
        assert_eq!(r.betti(), &expect[..]);
        r.verify().unwrap();
    }

    #[test]
    fn cache_reuses_longer_prefixes() {
        let a = alg(Field::Rational, 1, &["x1^3"]);
        let k = FModule::residue_field(a);
        let cache = ResolutionCache::new();
        let long = cache.resolve(&k, 6).unwrap();
        let short = cache.resolve(&k, 3).unwrap();
        assert_eq!(short.betti(), &long.betti()[..4]);
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn length_cap() {
        let a = alg(Field::Rational, 1, &["x1^2"]);
        assert!(matches!(
            FreeResolution::compute(&FModule::residue_field(a), 25),
            Err(Error::CapExceeded { .. })
        ));
    }
}
