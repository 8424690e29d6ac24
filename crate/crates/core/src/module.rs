//! Finite-dimensional modules over a [`FiniteCommutativeAlgebra`].

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::ring::FiniteCommutativeAlgebra;
use crate::scalar::Field;
use crate::sparse::{SparseEchelon, SparseVec};

pub const MAX_MODULE_DIM: usize = 400;

/// A module given by the action of every algebra basis element.
///
/// `images[s][j]` is `b_s · e_j` in the module basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FModule {
    algebra: Arc<FiniteCommutativeAlgebra>,
    dim: usize,
    images: Vec<Vec<SparseVec>>,
}

impl FModule {
    /// Validating constructor from one `dim × dim` action matrix per basis
    /// element of the algebra.
    pub fn new(
        algebra: Arc<FiniteCommutativeAlgebra>,
        dim: usize,
        actions: &[DenseMatrix],
    ) -> Result<Self> {
        if actions.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                actions.len(),
                algebra.dim()
            )));
        }
        let mut images = Vec::with_capacity(actions.len());
        for a in actions {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "action matrix is {}x{}, module dimension is {dim}",
                    a.rows(),
                    a.cols()
                )));
            }
            if a.field() != algebra.field() {
                return Err(Error::FieldMismatch("module action".into()));
            }
            images.push(
                (0..dim)
                    .map(|j| SparseVec::from_dense(&a.column(j)))
                    .collect(),
            );
        }
        Self::from_images(algebra, dim, images)
    }

    pub(crate) fn from_images(
        algebra: Arc<FiniteCommutativeAlgebra>,
        dim: usize,
        images: Vec<Vec<SparseVec>>,
    ) -> Result<Self> {
        if dim > MAX_MODULE_DIM {
            return Err(Error::CapExceeded {
                what: "module dimension",
                limit: MAX_MODULE_DIM,
                got: dim,
            });
        }
        let m = FModule {
            algebra,
            dim,
            images,
        };
        m.validate()?;
        Ok(m)
    }

    /// Checks unit and multiplicativity. Testing `ρ(g)ρ(b) = ρ(g b)` for the
    /// generators `g` suffices: the elements `x` with `ρ(xy) = ρ(x)ρ(y)` for
    /// all `y` form a subspace containing 1 and closed under multiplication
    /// by generators.
    fn validate(&self) -> Result<()> {
        let f = self.field();
        for j in 0..self.dim {
            if self.images[0][j] != SparseVec::unit(j, f) {
                return Err(Error::InvalidModule(
                    "the unit does not act as the identity".into(),
                ));
            }
        }
        let alg = &self.algebra;
        for &g in alg.generators() {
            for s in 0..alg.dim() {
                let gs = alg.mul_basis(g, s);
                for j in 0..self.dim {
                    let lhs = self.act_basis(g, &self.images[s][j]);
                    let rhs = self.act(gs, &SparseVec::unit(j, f));
                    if lhs != rhs {
                        return Err(Error::InvalidModule(format!(
                            "action of {} * {} is not multiplicative",
                            alg.name(g),
                            alg.name(s)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<FiniteCommutativeAlgebra> {
        &self.algebra
    }
    pub fn field(&self) -> Field {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `b_s · v`.
    pub fn act_basis(&self, s: usize, v: &SparseVec) -> SparseVec {
        let mut raw = Vec::new();
        for (j, c) in v.iter() {
            for (t, d) in self.images[s][*j].iter() {
                raw.push((*t, c * d));
            }
        }
        SparseVec::from_entries(raw)
    }

    /// `a · v` for an algebra element `a`.
    pub fn act(&self, a: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut raw = Vec::new();
        for (s, c) in a.iter() {
            for (t, d) in self.act_basis(*s, v).iter() {
                raw.push((*t, c * d));
            }
        }
        SparseVec::from_entries(raw)
    }

    pub fn action_matrix(&self, s: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.field(), self.dim, self.dim);
        for (j, col) in self.images[s].iter().enumerate() {
            for (t, c) in col.iter() {
                m.set(*t, j, c.clone());
            }
        }
        m
    }

    /// The residue field `k = A/m`.
    pub fn residue_field(algebra: Arc<FiniteCommutativeAlgebra>) -> Self {
        let f = algebra.field();
        let images = (0..algebra.dim())
            .map(|s| {
                vec![if s == 0 {
                    SparseVec::unit(0, f)
                } else {
                    SparseVec::zero()
                }]
            })
            .collect();
        FModule {
            algebra,
            dim: 1,
            images,
        }
    }

    /// `A^r`, with basis `e_j ⊗ b_s` at index `j * n + s`.
    pub fn free(algebra: Arc<FiniteCommutativeAlgebra>, r: usize) -> Result<Self> {
        let n = algebra.dim();
        let images = (0..n)
            .map(|s| {
                (0..r * n)
                    .map(|idx| {
                        let (j, t) = (idx / n, idx % n);
                        algebra.mul_basis(s, t).map_indices(|u| j * n + u)
                    })
                    .collect()
            })
            .collect();
        Self::from_images(algebra, r * n, images)
    }

    /// The maximal ideal as a submodule of `A`.
    pub fn maximal_ideal(algebra: Arc<FiniteCommutativeAlgebra>) -> Result<Self> {
        let f = algebra.field();
        let a = Self::free(algebra.clone(), 1)?;
        let gens: Vec<SparseVec> = (1..algebra.dim()).map(|i| SparseVec::unit(i, f)).collect();
        a.submodule(&gens)
    }

    /// `A^rows / (columns of the presentation)`; `columns[c][r]` is the
    /// entry in row `r` of column `c`.
    pub fn cokernel(
        algebra: Arc<FiniteCommutativeAlgebra>,
        rows: usize,
        columns: &[Vec<SparseVec>],
    ) -> Result<Self> {
        let n = algebra.dim();
        let free = Self::free(algebra, rows)?;
        let mut rels = Vec::new();
        for col in columns {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "presentation column of length {}, expected {rows}",
                    col.len()
                )));
            }
            let mut raw = Vec::new();
            for (r, entry) in col.iter().enumerate() {
                raw.extend(entry.iter().map(|(s, c)| (r * n + s, c.clone())));
            }
            rels.push(SparseVec::from_entries(raw));
        }
        free.quotient(&rels)
    }

    /// Echelon basis of the submodule generated by `gens`.
    pub fn submodule_span(&self, gens: &[SparseVec]) -> SparseEchelon {
        let mut ech = SparseEchelon::new(self.field());
        let mut frontier: Vec<SparseVec> = gens.iter().filter(|v| ech.insert(v)).cloned().collect();
        while let Some(v) = frontier.pop() {
            for &g in self.algebra.generators() {
                let w = self.act_basis(g, &v);
                if ech.insert(&w) {
                    frontier.push(w);
                }
            }
        }
        ech.fully_reduce();
        ech
    }

    /// The submodule generated by `gens`, on the echelon basis.
    pub fn submodule(&self, gens: &[SparseVec]) -> Result<Self> {
        let ech = self.submodule_span(gens);
        let basis = ech.rows().to_vec();
        let images = (0..self.algebra.dim())
            .map(|s| {
                basis
                    .iter()
                    .map(|w| SparseVec::from_entries(ech.coordinates(&self.act_basis(s, w))))
                    .collect()
            })
            .collect();
        Self::from_images(self.algebra.clone(), basis.len(), images)
    }

    /// `M / N` where `N` is generated by `gens`. The quotient basis is the
    /// set of non-pivot coordinates of the submodule's echelon basis.
    pub fn quotient(&self, gens: &[SparseVec]) -> Result<Self> {
        let ech = self.submodule_span(gens);
        let keep: Vec<usize> = (0..self.dim).filter(|&i| !ech.is_pivot(i)).collect();
        let mut position = vec![usize::MAX; self.dim];
        for (k, &i) in keep.iter().enumerate() {
            position[i] = k;
        }
        let images = (0..self.algebra.dim())
            .map(|s| {
                keep.iter()
                    .map(|&i| {
                        let v = ech.reduce(&self.images[s][i]);
                        v.map_indices(|t| position[t])
                    })
                    .collect()
            })
            .collect();
        Self::from_images(self.algebra.clone(), keep.len(), images)
    }

    pub fn direct_sum(&self, other: &FModule) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| {
                a.iter()
                    .cloned()
                    .chain(b.iter().map(|v| v.map_indices(|t| t + self.dim)))
                    .collect()
            })
            .collect();
        Self::from_images(self.algebra.clone(), self.dim + other.dim, images)
    }

    /// `Hom_k(M, k)` with the transposed action.
    pub fn matlis_dual(&self) -> Self {
        let mut images = vec![vec![Vec::new(); self.dim]; self.algebra.dim()];
        for (s, cols) in self.images.iter().enumerate() {
            for (j, col) in cols.iter().enumerate() {
                for (t, c) in col.iter() {
                    images[s][*t].push((j, c.clone()));
                }
            }
        }
        FModule {
            algebra: self.algebra.clone(),
            dim: self.dim,
            images: images
                .into_iter()
                .map(|cols| cols.into_iter().map(SparseVec::from_entries).collect())
                .collect(),
        }
    }

    /// Echelon basis of `mM`.
    pub fn m_times(&self) -> SparseEchelon {
        let f = self.field();
        let mut ech = SparseEchelon::new(f);
        for &g in self.algebra.generators() {
            for j in 0..self.dim {
                ech.insert(&self.images[g][j]);
            }
        }
        ech
    }

    /// Basis vectors of `M` lifting a basis of `M/mM`, chosen greedily.
    pub fn minimal_generators(&self) -> Vec<SparseVec> {
        let f = self.field();
        let mut ech = self.m_times();
        (0..self.dim)
            .map(|j| SparseVec::unit(j, f))
            .filter(|v| ech.insert(v))
            .collect()
    }

    /// `μ(M) = dim M/mM`.
    pub fn num_generators(&self) -> usize {
        self.dim - self.m_times().rank()
    }

    /// Socle `(0 : m)` of the module, as a dimension.
    pub fn socle_dim(&self) -> usize {
        let f = self.field();
        let gens = self.algebra.generators();
        if self.dim == 0 {
            return 0;
        }
        let mut m = DenseMatrix::zeros(f, gens.len() * self.dim, self.dim);
        for (k, &g) in gens.iter().enumerate() {
            for j in 0..self.dim {
                for (t, c) in self.images[g][j].iter() {
                    m.set(k * self.dim + t, j, c.clone());
                }
            }
        }
        self.dim - m.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn alg(vars: usize, gens: &[&str]) -> Arc<FiniteCommutativeAlgebra> {
        let gens: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let ideal = FiniteCommutativeAlgebra::parse_monomials(vars, &gens).unwrap();
        Arc::new(
            FiniteCommutativeAlgebra::from_monomial_ideal(Field::Rational, vars, &ideal).unwrap(),
        )
    }

    #[test]
    fn residue_field_and_free() {
        let a = alg(2, &["x1^2", "x1*x2", "x2^2"]);
        let k = FModule::residue_field(a.clone());
        assert_eq!(k.num_generators(), 1);
        let f = FModule::free(a.clone(), 2).unwrap();
        assert_eq!(f.dim(), 6);
        assert_eq!(f.num_generators(), 2);
        assert_eq!(f.socle_dim(), 4);
    }

    #[test]
    fn maximal_ideal_of_m_squared_zero() {
        let a = alg(2, &["x1^2", "x1*x2", "x2^2"]);
        let m = FModule::maximal_ideal(a).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.num_generators(), 2);
    }

    #[test]
    fn cokernel_of_x_over_truncated_line() {
        // A/(x) over k[x]/(x^4) is the residue field
        let a = alg(1, &["x1^4"]);
        let x = SparseVec::unit(1, Field::Rational);
        let m = FModule::cokernel(a.clone(), 1, &[vec![x]]).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m, FModule::residue_field(a));
    }

    #[test]
    fn matlis_dual_of_algebra() {
        let a = alg(2, &["x1^2", "x1*x2", "x2^2"]);
        let d = FModule::free(a, 1).unwrap().matlis_dual();
        assert_eq!(d.dim(), 3);
        assert_eq!(d.num_generators(), 2);
        assert_eq!(d.matlis_dual().dim(), 3);
    }

    #[test]
    fn inconsistent_action_rejected() {
        // x acting by a non-nilpotent-compatible matrix on k[x]/(x^2)
        let a = alg(1, &["x1^2"]);
        let f = Field::Rational;
        let acts = vec![DenseMatrix::identity(f, 1), DenseMatrix::identity(f, 1)];
        assert!(matches!(
            FModule::new(a, 1, &acts),
            Err(Error::InvalidModule(_))
        ));
    }

    #[test]
    fn direct_sum_adds() {
        let a = alg(1, &["x1^3"]);
        let k = FModule::residue_field(a.clone());
        let s = k.direct_sum(&FModule::free(a, 1).unwrap()).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(s.num_generators(), 2);
    }
}
