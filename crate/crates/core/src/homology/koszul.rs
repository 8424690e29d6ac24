//! The Koszul complex of an algebra on a minimal generating set of `m`, as a
//! complex, as a DG algebra, and through its homology algebra.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::ring::FiniteCommutativeAlgebra;
use crate::scalar::Scalar;
use crate::skew::{BasisElement, GradedSkewAlgebra};
use crate::sparse::{sparse_kernel, SparseEchelon, SparseVec};

/// Subsets of `{0..e}` as bitmasks, ordered by size and then by mask.
fn ordered_subsets(e: usize) -> Vec<u32> {
    let mut subsets: Vec<u32> = (0..1u32 << e).collect();
    subsets.sort_by_key(|&s| (s.count_ones(), s));
    subsets
}

fn subset_name(mask: u32) -> String {
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| format!("e{}", b + 1))
        .collect()
}

/// `(−1)^{#{(i, j) : i ∈ a, j ∈ b, i > j}}` for wedging `e_a ∧ e_b`.
fn wedge_sign(a: u32, b: u32) -> i64 {
    let mut inversions = 0;
    for i in 0..32 {
        if a >> i & 1 == 1 {
            inversions += (b & ((1u32 << i) - 1)).count_ones();
        }
    }
    if inversions % 2 == 1 {
        -1
    } else {
        1
    }
}

/// `K^A = A ⊗ Λ(e_1..e_e)` with `d e_k = x_k`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    algebra: FiniteCommutativeAlgebra,
    generators: Vec<usize>,
    subsets: Vec<u32>,
    position: Vec<usize>,
}

impl KoszulComplex {
    /// Requires the marked generators of `m` to be minimal.
    pub fn new(algebra: &FiniteCommutativeAlgebra) -> Result<Self> {
        let gens = algebra.generators().to_vec();
        let e = algebra.embedding_dim();
        if gens.len() != e {
            return Err(Error::KoszulGenerators(format!(
                "{} marked generators but m/m^2 has dimension {e}",
                gens.len()
            )));
        }
        let mut ech = SparseEchelon::new(algebra.field());
        for v in algebra.m_squared_basis() {
            ech.insert(&v);
        }
        if !gens
            .iter()
            .all(|&g| ech.insert(&SparseVec::unit(g, algebra.field())))
        {
            return Err(Error::KoszulGenerators(
                "generators do not span m/m^2".into(),
            ));
        }
        if e > 12 {
            return Err(Error::CapExceeded {
                what: "embedding dimension",
                limit: 12,
                got: e,
            });
        }
        let subsets = ordered_subsets(e);
        let mut position = vec![0; subsets.len()];
        for (k, &s) in subsets.iter().enumerate() {
            position[s as usize] = k;
        }
        Ok(KoszulComplex {
            algebra: algebra.clone(),
            generators: gens,
            subsets,
            position,
        })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Index of `b_s ⊗ e_mask` in the total basis.
    fn index(&self, mask: u32, s: usize) -> usize {
        self.position[mask as usize] * self.algebra.dim() + s
    }

    fn masks_of_degree(&self, j: usize) -> Vec<u32> {
        self.subsets
            .iter()
            .copied()
            .filter(|s| s.count_ones() as usize == j)
            .collect()
    }

    /// `d(b_s e_mask)` in the total basis.
    fn d_basis(&self, mask: u32, s: usize) -> SparseVec {
        let f = self.algebra.field();
        let mut raw = Vec::new();
        let mut seen = 0;
        for k in 0..self.rank() {
            if mask >> k & 1 == 0 {
                continue;
            }
            let sign = if seen % 2 == 1 { -1 } else { 1 };
            seen += 1;
            let rest = mask & !(1 << k);
            let prod = self.algebra.mul_basis(self.generators[k], s);
            let c = f.from_i64(sign);
            raw.extend(prod.iter().map(|(t, v)| (self.index(rest, *t), &c * v)));
        }
        SparseVec::from_entries(raw)
    }

    /// Basis indices of `K_j`.
    pub fn degree_indices(&self, j: usize) -> Vec<usize> {
        let n = self.algebra.dim();
        self.masks_of_degree(j)
            .into_iter()
            .flat_map(|m| (0..n).map(move |s| (m, s)))
            .map(|(m, s)| self.index(m, s))
            .collect()
    }

    fn d_columns(&self, j: usize) -> Vec<SparseVec> {
        let n = self.algebra.dim();
        self.masks_of_degree(j)
            .into_iter()
            .flat_map(|m| (0..n).map(move |s| (m, s)))
            .map(|(m, s)| self.d_basis(m, s))
            .collect()
    }

    /// `dim H_j(K^A)` for `0 ≤ j ≤ e`.
    pub fn homology_dims(&self) -> Vec<usize> {
        let f = self.algebra.field();
        let e = self.rank();
        let ranks: Vec<usize> = (0..=e + 1)
            .map(|j| {
                if j == 0 || j > e {
                    0
                } else {
                    crate::sparse::sparse_rank(f, self.d_columns(j))
                }
            })
            .collect();
        (0..=e)
            .map(|j| self.degree_indices(j).len() - ranks[j] - ranks[j + 1])
            .collect()
    }

    /// `K^A` as a DG algebra; degree 0 is all of `A`.
    pub fn dg_algebra(&self) -> Result<GradedSkewAlgebra> {
        let alg = &self.algebra;
        let n = alg.dim();
        let f = alg.field();
        let mut basis = Vec::with_capacity(self.subsets.len() * n);
        for &mask in &self.subsets {
            for s in 0..n {
                let name = match (s, mask) {
                    (_, 0) => alg.name(s).to_string(),
                    (0, _) => subset_name(mask),
                    _ => format!("{}*{}", alg.name(s), subset_name(mask)),
                };
                basis.push(BasisElement {
                    name,
                    degree: mask.count_ones(),
                });
            }
        }
        let total = basis.len();
        let mut table = vec![SparseVec::zero(); total * total];
        for &a in &self.subsets {
            for &b in &self.subsets {
                if a & b != 0 {
                    continue;
                }
                let sign = f.from_i64(wedge_sign(a, b));
                for s in 0..n {
                    for t in 0..n {
                        let prod = alg.mul_basis(s, t);
                        table[self.index(a, s) * total + self.index(b, t)] =
                            SparseVec::from_entries(
                                prod.iter()
                                    .map(|(u, c)| (self.index(a | b, *u), &sign * c))
                                    .collect(),
                            );
                    }
                }
            }
        }
        let differential = self
            .subsets
            .iter()
            .flat_map(|&m| (0..n).map(move |s| (m, s)))
            .map(|(m, s)| self.d_basis(m, s))
            .collect();
        GradedSkewAlgebra::from_table(f, basis, table, Some(differential))
    }

    /// `H(K^A) ≅ Tor^Q(A, k)` with the induced product, on chosen cycle
    /// representatives named `h<j>_<k>`.
    pub fn homology_algebra(&self) -> Result<GradedSkewAlgebra> {
        let f = self.algebra.field();
        let e = self.rank();
        let dg = self.dg_algebra()?;
        // per degree: indices, representatives, and the solve matrix [B | reps]
        struct Degree {
            indices: Vec<usize>,
            reps: Vec<SparseVec>,
            boundary_rank: usize,
            solver: DenseMatrix,
        }
        let mut degrees: Vec<Degree> = Vec::new();
        for j in 0..=e {
            let indices = self.degree_indices(j);
            let (_, cycles_local) = if j == 0 {
                (
                    0,
                    (0..indices.len()).map(|k| SparseVec::unit(k, f)).collect(),
                )
            } else {
                sparse_kernel(f, self.d_columns(j))
            };
            let mut ech = SparseEchelon::new(f);
            let mut boundaries = Vec::new();
            if j < e {
                for col in self.d_columns(j + 1) {
                    let local =
                        col.map_indices(|t| indices.iter().position(|&x| x == t).expect("degree"));
                    if ech.insert(&local) {
                        boundaries.push(local);
                    }
                }
            }
            let reps: Vec<SparseVec> = cycles_local.into_iter().filter(|z| ech.insert(z)).collect();
            let cols: Vec<Vec<Scalar>> = boundaries
                .iter()
                .chain(reps.iter())
                .map(|v| v.to_dense(indices.len(), f))
                .collect();
            let solver = DenseMatrix::from_columns(f, indices.len(), &cols)?;
            degrees.push(Degree {
                boundary_rank: boundaries.len(),
                indices,
                reps,
                solver,
            });
        }
        let mut basis = Vec::new();
        let mut global: Vec<(usize, usize)> = Vec::new();
        for (j, d) in degrees.iter().enumerate() {
            for k in 0..d.reps.len() {
                basis.push(BasisElement {
                    name: if j == 0 {
                        "1".into()
                    } else {
                        format!("h{j}_{}", k + 1)
                    },
                    degree: j as u32,
                });
                global.push((j, k));
            }
        }
        if degrees[0].reps.len() != 1 {
            return Err(Error::InvariantViolation(
                "H_0 of the Koszul complex is not k".into(),
            ));
        }
        let offset: Vec<usize> = degrees
            .iter()
            .scan(0, |acc, d| {
                let o = *acc;
                *acc += d.reps.len();
                Some(o)
            })
            .collect();
        let to_total = |j: usize, v: &SparseVec| v.map_indices(|k| degrees[j].indices[k]);
        let total_dim = basis.len();
        let mut table = vec![SparseVec::zero(); total_dim * total_dim];
        for (x, &(i, a)) in global.iter().enumerate() {
            for (y, &(j, b)) in global.iter().enumerate() {
                if i + j > e {
                    continue;
                }
                let prod = dg.mul(
                    &to_total(i, &degrees[i].reps[a]),
                    &to_total(j, &degrees[j].reps[b]),
                );
                if prod.is_zero() {
                    continue;
                }
                let deg = &degrees[i + j];
                let local: Vec<Scalar> = {
                    let mut v = vec![f.zero(); deg.indices.len()];
                    for (t, c) in prod.iter() {
                        let k = deg.indices.iter().position(|&z| z == *t).ok_or_else(|| {
                            Error::InvariantViolation("product left its degree".into())
                        })?;
                        v[k] = c.clone();
                    }
                    v
                };
                let coords = deg.solver.solve_linear(&local)?.ok_or_else(|| {
                    Error::InvariantViolation("product of cycles is not a cycle".into())
                })?;
                table[x * total_dim + y] = SparseVec::from_entries(
                    coords[deg.boundary_rank..]
                        .iter()
                        .enumerate()
                        .map(|(k, c)| (offset[i + j] + k, c.clone()))
                        .collect(),
                );
            }
        }
        GradedSkewAlgebra::from_table(f, basis, table, None)
    }
}

/// `dim H_j(K^A)` for `0 ≤ j ≤ e`.
pub fn koszul_homology(algebra: &FiniteCommutativeAlgebra) -> Result<Vec<usize>> {
    Ok(KoszulComplex::new(algebra)?.homology_dims())
}
