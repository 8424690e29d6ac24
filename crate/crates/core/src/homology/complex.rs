//! Bounded complexes over a polynomial avatar (graded, degree-truncated) and
//! over a finite algebra, with quotients by regular elements and cones.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::poly::{Exponent, MultiPoly};
use crate::ring::FiniteCommutativeAlgebra;
use crate::scalar::{Field, Scalar};
use crate::sparse::SparseVec;

/// Complex of finite-dimensional vector spaces, `d_i : C_i → C_{i−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KComplex {
    field: Field,
    dims: Vec<usize>,
    /// `diffs[i - 1] = d_i` for `i ≥ 1`.
    diffs: Vec<DenseMatrix>,
}

impl KComplex {
    pub fn new(field: Field, dims: Vec<usize>, diffs: Vec<DenseMatrix>) -> Result<Self> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::DimensionMismatch(
                "one differential per positive degree".into(),
            ));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != dims[k] || d.cols() != dims[k + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "d_{} has the wrong shape",
                    k + 1
                )));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].mul(&diffs[k])?.is_zero() {
                return Err(Error::InvariantViolation(format!(
                    "d_{} ∘ d_{} ≠ 0",
                    k,
                    k + 1
                )));
            }
        }
        Ok(KComplex { field, dims, diffs })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, i: usize) -> Option<&DenseMatrix> {
        if i == 0 {
            None
        } else {
            self.diffs.get(i - 1)
        }
    }

    fn rank_of(&self, i: usize) -> usize {
        self.differential(i).map_or(0, DenseMatrix::rank)
    }

    pub fn homology_dims(&self) -> Vec<usize> {
        (0..self.dims.len())
            .map(|i| self.dims[i] - self.rank_of(i) - self.rank_of(i + 1))
            .collect()
    }

    /// Cycles of degree `i` as columns.
    fn cycles(&self, i: usize) -> Vec<Vec<Scalar>> {
        match self.differential(i) {
            None => (0..self.dims[i])
                .map(|k| {
                    let mut v = vec![self.field.zero(); self.dims[i]];
                    v[k] = self.field.one();
                    v
                })
                .collect(),
            Some(d) => d.rank_kernel().expect("one field").1,
        }
    }

    fn boundaries(&self, i: usize) -> Vec<Vec<Scalar>> {
        match self.differential(i + 1) {
            None => Vec::new(),
            Some(d) => (0..d.cols()).map(|c| d.column(c)).collect(),
        }
    }
}

/// Chain map `f_i : C_i → D_i` between vector-space complexes.
#[derive(Clone, Debug)]
pub struct KChainMap {
    pub source: KComplex,
    pub target: KComplex,
    pub maps: Vec<DenseMatrix>,
}

impl KChainMap {
    pub fn new(source: KComplex, target: KComplex, maps: Vec<DenseMatrix>) -> Result<Self> {
        let len = source.dims.len().max(target.dims.len());
        if maps.len() != len {
            return Err(Error::DimensionMismatch("one component per degree".into()));
        }
        let dim = |c: &KComplex, i: usize| c.dims.get(i).copied().unwrap_or(0);
        for (i, f) in maps.iter().enumerate() {
            if f.rows() != dim(&target, i) || f.cols() != dim(&source, i) {
                return Err(Error::DimensionMismatch(format!(
                    "f_{i} has the wrong shape"
                )));
            }
        }
        let map = KChainMap {
            source,
            target,
            maps,
        };
        for i in 1..len {
            let lhs = match map.target.differential(i) {
                Some(d) => d.mul(&map.maps[i])?,
                None => DenseMatrix::zeros(
                    map.source.field,
                    dim(&map.target, i - 1),
                    dim(&map.source, i),
                ),
            };
            let rhs = match map.source.differential(i) {
                Some(d) => map.maps[i - 1].mul(d)?,
                None => DenseMatrix::zeros(
                    map.source.field,
                    dim(&map.target, i - 1),
                    dim(&map.source, i),
                ),
            };
            if lhs != rhs {
                return Err(Error::InvariantViolation(format!(
                    "not a chain map in degree {i}"
                )));
            }
        }
        Ok(map)
    }

    /// Whether every induced map on homology is bijective, computed from
    /// ranks of `f(Z_i(C))` modulo `B_i(D)`.
    pub fn is_quasi_isomorphism(&self) -> bool {
        let f = self.source.field;
        let hs = self.source.homology_dims();
        let ht = self.target.homology_dims();
        for i in 0..self.maps.len() {
            let h_src = hs.get(i).copied().unwrap_or(0);
            let h_tgt = ht.get(i).copied().unwrap_or(0);
            if h_src != h_tgt {
                return false;
            }
            if h_src == 0 {
                continue;
            }
            let rows = self.target.dims[i];
            let boundaries = self.target.boundaries(i);
            let images: Vec<Vec<Scalar>> = self
                .source
                .cycles(i)
                .iter()
                .map(|z| self.maps[i].apply(z).expect("shape"))
                .collect();
            let base = DenseMatrix::from_columns(f, rows, &boundaries)
                .expect("shape")
                .rank();
            let all: Vec<Vec<Scalar>> = boundaries.into_iter().chain(images).collect();
            let with = DenseMatrix::from_columns(f, rows, &all)
                .expect("shape")
                .rank();
            if with - base != h_src {
                return false;
            }
        }
        true
    }

    /// `cone(f)_i = C_{i−1} ⊕ D_i` with `d = [[−d_C, 0], [f, d_D]]`.
    pub fn cone(&self) -> KComplex {
        let f = self.source.field;
        let len = self.maps.len() + 1;
        let dim = |c: &KComplex, i: usize| c.dims.get(i).copied().unwrap_or(0);
        let dims: Vec<usize> = (0..len)
            .map(|i| (if i == 0 { 0 } else { dim(&self.source, i - 1) }) + dim(&self.target, i))
            .collect();
        let mut diffs = Vec::new();
        for i in 1..len {
            let mut d = DenseMatrix::zeros(f, dims[i - 1], dims[i]);
            let (c_prev, c_cur) = (
                if i >= 2 { dim(&self.source, i - 2) } else { 0 },
                dim(&self.source, i - 1),
            );
            if let Some(dc) = (i >= 2).then(|| self.source.differential(i - 1)).flatten() {
                for r in 0..c_prev {
                    for c in 0..c_cur {
                        d.set(r, c, -dc.get(r, c));
                    }
                }
            }
            let fm = &self.maps[i - 1];
            for r in 0..fm.rows() {
                for c in 0..fm.cols() {
                    d.set(c_prev + r, c, fm.get(r, c).clone());
                }
            }
            if let Some(dd) = self.target.differential(i) {
                for r in 0..dd.rows() {
                    for c in 0..dd.cols() {
                        d.set(c_prev + r, c_cur + c, dd.get(r, c).clone());
                    }
                }
            }
            diffs.push(d);
        }
        KComplex::new(f, dims, diffs).expect("cone of a chain map is a complex")
    }
}

/// Matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(field: Field, nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![MultiPoly::zero(field, nvars); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged polynomial matrix".into()));
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: MultiPoly) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn mul(&self, other: &PolyMatrix, field: Field, nvars: usize) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("polynomial matrix product".into()));
        }
        let mut out = PolyMatrix::zeros(field, nvars, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = MultiPoly::zero(field, nvars);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(r, k).mul(other.get(k, c))?)?;
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }
}

/// Complex of graded free modules over `k[x_1..x_n]/(killed variables)`.
/// `shifts[i]` lists the generator degrees of `C_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyComplex {
    field: Field,
    nvars: usize,
    killed: Vec<usize>,
    shifts: Vec<Vec<u32>>,
    diffs: Vec<PolyMatrix>,
}

impl PolyComplex {
    pub fn new(
        field: Field,
        nvars: usize,
        shifts: Vec<Vec<u32>>,
        diffs: Vec<PolyMatrix>,
    ) -> Result<Self> {
        if diffs.len() + 1 != shifts.len().max(1) {
            return Err(Error::DimensionMismatch(
                "one differential per positive degree".into(),
            ));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows != shifts[k].len() || d.cols != shifts[k + 1].len() {
                return Err(Error::DimensionMismatch(format!(
                    "d_{} has the wrong shape",
                    k + 1
                )));
            }
            for r in 0..d.rows {
                for c in 0..d.cols {
                    let p = d.get(r, c);
                    if p.nvars() != nvars || p.field() != field {
                        return Err(Error::FieldMismatch("complex entry".into()));
                    }
                    let want = shifts[k + 1][c] as i64 - shifts[k][r] as i64;
                    if !p.is_zero() && p.homogeneous_degree().map(i64::from) != Some(want) {
                        return Err(Error::InvariantViolation(format!(
                            "entry ({r}, {c}) of d_{} is not homogeneous of degree {want}",
                            k + 1
                        )));
                    }
                }
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].mul(&diffs[k], field, nvars)?.is_zero() {
                return Err(Error::InvariantViolation(format!(
                    "d_{} ∘ d_{} ≠ 0",
                    k,
                    k + 1
                )));
            }
        }
        Ok(PolyComplex {
            field,
            nvars,
            killed: Vec::new(),
            shifts,
            diffs,
        })
    }

    pub fn zero(field: Field, nvars: usize) -> Self {
        PolyComplex {
            field,
            nvars,
            killed: Vec::new(),
            shifts: vec![Vec::new()],
            diffs: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn len(&self) -> usize {
        self.shifts.len()
    }
    pub fn is_empty(&self) -> bool {
        self.shifts.iter().all(Vec::is_empty)
    }
    pub fn shifts(&self) -> &[Vec<u32>] {
        &self.shifts
    }
    pub fn killed(&self) -> &[usize] {
        &self.killed
    }
    pub fn differential(&self, i: usize) -> Option<&PolyMatrix> {
        if i == 0 {
            None
        } else {
            self.diffs.get(i - 1)
        }
    }

    /// `C / x_var C`. The variable must act regularly on every term, which for
    /// free modules means it has not been killed already.
    pub fn quotient_by_variable(&self, var: usize) -> Result<PolyComplex> {
        if var >= self.nvars {
            return Err(Error::PreconditionViolated(format!(
                "no variable x{}",
                var + 1
            )));
        }
        if self.killed.contains(&var) {
            return Err(Error::NotRegular(format!(
                "x{} is zero on the terms of the complex",
                var + 1
            )));
        }
        let mut out = self.clone();
        out.killed.push(var);
        out.killed.sort_unstable();
        Ok(out)
    }

    fn monomials(&self, degree: i64) -> Vec<Exponent> {
        if degree < 0 {
            return Vec::new();
        }
        let live: Vec<usize> = (0..self.nvars)
            .filter(|v| !self.killed.contains(v))
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.nvars];
        fn rec(live: &[usize], k: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
            if k + 1 == live.len() {
                cur[live[k]] = left;
                out.push(cur.clone());
                cur[live[k]] = 0;
                return;
            }
            for a in (0..=left).rev() {
                cur[live[k]] = a;
                rec(live, k + 1, left - a, cur, out);
            }
            cur[live[k]] = 0;
        }
        if live.is_empty() {
            if degree == 0 {
                out.push(cur);
            }
            return out;
        }
        rec(&live, 0, degree as u32, &mut cur, &mut out);
        out
    }

    /// The degree-`t` strand as a complex of vector spaces.
    pub fn graded_piece(&self, t: u32) -> KComplex {
        let f = self.field;
        let bases: Vec<Vec<(usize, Exponent)>> = self
            .shifts
            .iter()
            .map(|sh| {
                sh.iter()
                    .enumerate()
                    .flat_map(|(g, &s)| {
                        self.monomials(t as i64 - s as i64)
                            .into_iter()
                            .map(move |m| (g, m))
                    })
                    .collect()
            })
            .collect();
        let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
        let mut diffs = Vec::new();
        for i in 1..self.shifts.len() {
            let d = &self.diffs[i - 1];
            let index: std::collections::HashMap<&(usize, Exponent), usize> = bases[i - 1]
                .iter()
                .enumerate()
                .map(|(k, b)| (b, k))
                .collect();
            let mut m = DenseMatrix::zeros(f, dims[i - 1], dims[i]);
            for (col, (g, mono)) in bases[i].iter().enumerate() {
                for r in 0..d.rows {
                    let p = d.get(r, *g).substitute_zero(&self.killed);
                    for (e, c) in p.terms() {
                        let prod: Exponent = e.iter().zip(mono).map(|(a, b)| a + b).collect();
                        if let Some(&row) = index.get(&(r, prod)) {
                            let cur = m.get(row, col) + c;
                            m.set(row, col, cur);
                        }
                    }
                }
            }
            diffs.push(m);
        }
        KComplex::new(f, dims, diffs).expect("strand of a complex")
    }

    /// Homology dimensions `[t][i]` of the strands `t = 0..=max_degree`.
    pub fn homology_table(&self, max_degree: u32) -> Vec<Vec<usize>> {
        (0..=max_degree)
            .map(|t| self.graded_piece(t).homology_dims())
            .collect()
    }
}

/// Chain map between polynomial complexes; `maps[i] : C_i → D_i`.
#[derive(Clone, Debug)]
pub struct PolyChainMap {
    pub source: PolyComplex,
    pub target: PolyComplex,
    pub maps: Vec<PolyMatrix>,
}

impl PolyChainMap {
    pub fn new(source: PolyComplex, target: PolyComplex, maps: Vec<PolyMatrix>) -> Result<Self> {
        if source.field != target.field
            || source.nvars != target.nvars
            || source.killed != target.killed
        {
            return Err(Error::PreconditionViolated(
                "complexes over different rings".into(),
            ));
        }
        let len = source.len().max(target.len());
        if maps.len() != len {
            return Err(Error::DimensionMismatch("one component per degree".into()));
        }
        let rank = |c: &PolyComplex, i: usize| c.shifts.get(i).map_or(0, Vec::len);
        let (f, n) = (source.field, source.nvars);
        for (i, m) in maps.iter().enumerate() {
            if m.rows != rank(&target, i) || m.cols != rank(&source, i) {
                return Err(Error::DimensionMismatch(format!(
                    "f_{i} has the wrong shape"
                )));
            }
        }
        for i in 1..len {
            let zero = PolyMatrix::zeros(f, n, rank(&target, i - 1), rank(&source, i));
            let lhs = match target.differential(i) {
                Some(d) => d.mul(&maps[i], f, n)?,
                None => zero.clone(),
            };
            let rhs = match source.differential(i) {
                Some(d) => maps[i - 1].mul(d, f, n)?,
                None => zero,
            };
            if lhs != rhs {
                return Err(Error::InvariantViolation(format!(
                    "not a chain map in degree {i}"
                )));
            }
        }
        Ok(PolyChainMap {
            source,
            target,
            maps,
        })
    }

    /// Restriction to the degree-`t` strands.
    pub fn graded_piece(&self, t: u32) -> KChainMap {
        let f = self.source.field;
        let src = self.source.graded_piece(t);
        let tgt = self.target.graded_piece(t);
        let len = self.maps.len();
        let pad = |c: &KComplex| {
            let mut dims = c.dims.clone();
            let mut diffs = c.diffs.clone();
            while dims.len() < len {
                diffs.push(DenseMatrix::zeros(f, *dims.last().unwrap_or(&0), 0));
                dims.push(0);
            }
            KComplex::new(f, dims, diffs).expect("padding keeps a complex")
        };
        let (src, tgt) = (pad(&src), pad(&tgt));
        // reuse the strand construction through a one-step complex per degree
        let maps = (0..len)
            .map(|i| {
                let m = &self.maps[i];
                let src_basis = self.strand_basis(&self.source, i, t);
                let tgt_basis = self.strand_basis(&self.target, i, t);
                let index: std::collections::HashMap<&(usize, Exponent), usize> =
                    tgt_basis.iter().enumerate().map(|(k, b)| (b, k)).collect();
                let mut out = DenseMatrix::zeros(f, tgt_basis.len(), src_basis.len());
                for (col, (g, mono)) in src_basis.iter().enumerate() {
                    for r in 0..m.rows {
                        let p = m.get(r, *g).substitute_zero(&self.source.killed);
                        for (e, c) in p.terms() {
                            let prod: Exponent = e.iter().zip(mono).map(|(a, b)| a + b).collect();
                            if let Some(&row) = index.get(&(r, prod)) {
                                let cur = out.get(row, col) + c;
                                out.set(row, col, cur);
                            }
                        }
                    }
                }
                out
            })
            .collect();
        KChainMap::new(src, tgt, maps).expect("strand of a chain map")
    }

    fn strand_basis(&self, c: &PolyComplex, i: usize, t: u32) -> Vec<(usize, Exponent)> {
        c.shifts
            .get(i)
            .map(|sh| {
                sh.iter()
                    .enumerate()
                    .flat_map(|(g, &s)| {
                        c.monomials(t as i64 - s as i64)
                            .into_iter()
                            .map(move |m| (g, m))
                    })
                    .collect()
            })
            .unwrap_or_default()
    }

    /// `cone(f)_i = C_{i−1} ⊕ D_i`.
    pub fn cone(&self) -> PolyComplex {
        let (f, n) = (self.source.field, self.source.nvars);
        let len = self.maps.len() + 1;
        let sh = |c: &PolyComplex, i: usize| c.shifts.get(i).cloned().unwrap_or_default();
        let shifts: Vec<Vec<u32>> = (0..len)
            .map(|i| {
                let mut s = if i == 0 {
                    Vec::new()
                } else {
                    sh(&self.source, i - 1)
                };
                s.extend(sh(&self.target, i));
                s
            })
            .collect();
        let mut diffs = Vec::new();
        for i in 1..len {
            let mut d = PolyMatrix::zeros(f, n, shifts[i - 1].len(), shifts[i].len());
            let c_prev = if i >= 2 {
                sh(&self.source, i - 2).len()
            } else {
                0
            };
            let c_cur = sh(&self.source, i - 1).len();
            if i >= 2 {
                if let Some(dc) = self.source.differential(i - 1) {
                    for r in 0..dc.rows {
                        for c in 0..dc.cols {
                            d.set(r, c, dc.get(r, c).neg());
                        }
                    }
                }
            }
            let fm = &self.maps[i - 1];
            for r in 0..fm.rows {
                for c in 0..fm.cols {
                    d.set(c_prev + r, c, fm.get(r, c).clone());
                }
            }
            if let Some(dd) = self.target.differential(i) {
                for r in 0..dd.rows {
                    for c in 0..dd.cols {
                        d.set(c_prev + r, c_cur + c, dd.get(r, c).clone());
                    }
                }
            }
            diffs.push(d);
        }
        let mut cone =
            PolyComplex::new(f, n, shifts, diffs).expect("cone of a chain map is a complex");
        cone.killed = self.source.killed.clone();
        cone
    }
}

/// Complex of free modules `A^{r_i}` over a finite algebra.
#[derive(Clone, Debug)]
pub struct AlgComplex {
    pub algebra: FiniteCommutativeAlgebra,
    pub ranks: Vec<usize>,
    /// `diffs[i-1][c][r]`: entry in row `r`, column `c` of `d_i`.
    pub diffs: Vec<Vec<Vec<SparseVec>>>,
}

impl AlgComplex {
    /// Underlying complex of vector spaces (basis `gen * n + s`).
    pub fn underlying(&self) -> KComplex {
        let alg = &self.algebra;
        let n = alg.dim();
        let f = alg.field();
        let dims: Vec<usize> = self.ranks.iter().map(|r| r * n).collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, cols)| {
                let mut m = DenseMatrix::zeros(f, dims[k], dims[k + 1]);
                for (c, col) in cols.iter().enumerate() {
                    for s in 0..n {
                        for (r, entry) in col.iter().enumerate() {
                            for (u, v) in alg.mul(entry, &SparseVec::unit(s, f)).iter() {
                                m.set(r * n + u, c * n + s, v.clone());
                            }
                        }
                    }
                }
                m
            })
            .collect();
        KComplex::new(f, dims, diffs).expect("complex over the algebra")
    }

    /// Fails unless multiplication by `x` is injective on `A`.
    pub fn check_regular(&self, x: &SparseVec) -> Result<()> {
        let alg = &self.algebra;
        let f = alg.field();
        let n = alg.dim();
        let mut m = DenseMatrix::zeros(f, n, n);
        for s in 0..n {
            for (u, v) in alg.mul(x, &SparseVec::unit(s, f)).iter() {
                m.set(*u, s, v.clone());
            }
        }
        if m.rank() < n {
            return Err(Error::NotRegular(format!(
                "{} is a zero divisor on the algebra",
                alg.format_element(x)
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum BoundedComplex {
    Poly(PolyComplex),
    Finite(AlgComplex),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub variable: usize,
    pub max_degree: u32,
    /// `[t][i]` homology dimensions of the strands of `C`.
    pub homology_before: Vec<Vec<usize>>,
    pub homology_after: Vec<Vec<usize>>,
    pub exact_before: bool,
    pub exact_after: bool,
    pub positive_acyclic_before: bool,
    pub positive_acyclic_after: bool,
    /// `exact_before ⇒ exact_after`.
    pub implication_holds: bool,
}

fn exact(table: &[Vec<usize>]) -> bool {
    table.iter().flatten().all(|&h| h == 0)
}

fn positive_acyclic(table: &[Vec<usize>]) -> bool {
    table.iter().all(|row| row.iter().skip(1).all(|&h| h == 0))
}

/// Compares the homology of `C` and `C/xC` on strands of internal degree
/// at most `max_degree`.
pub fn complex_quotient_check(
    c: &BoundedComplex,
    var: usize,
    max_degree: u32,
) -> Result<QuotientReport> {
    let poly = match c {
        BoundedComplex::Poly(p) => p,
        BoundedComplex::Finite(a) => {
            let f = a.algebra.field();
            let x = a
                .algebra
                .generators()
                .get(var)
                .map(|&g| SparseVec::unit(g, f))
                .ok_or_else(|| Error::PreconditionViolated(format!("no generator {var}")))?;
            a.check_regular(&x)?;
            return Err(Error::Unsupported(
                "regular elements of a finite algebra are units".into(),
            ));
        }
    };
    let quotient = poly.quotient_by_variable(var)?;
    let before = poly.homology_table(max_degree);
    let after = quotient.homology_table(max_degree);
    let (eb, ea) = (exact(&before), exact(&after));
    Ok(QuotientReport {
        variable: var,
        max_degree,
        exact_before: eb,
        exact_after: ea,
        positive_acyclic_before: positive_acyclic(&before),
        positive_acyclic_after: positive_acyclic(&after),
        implication_holds: !eb || ea,
        homology_before: before,
        homology_after: after,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub max_degree: u32,
    pub cone_exact: bool,
    pub quasi_isomorphism: bool,
    /// `cone_exact ⇔ quasi_isomorphism` on every strand.
    pub agrees: bool,
}

/// Checks `H(cone f) = 0 ⇔ f is a quasi-isomorphism`, strand by strand.
pub fn cone_check(f: &PolyChainMap, max_degree: u32) -> ConeReport {
    let cone = f.cone();
    let mut cone_exact = true;
    let mut quasi = true;
    let mut agrees = true;
    for t in 0..=max_degree {
        let e = cone.graded_piece(t).homology_dims().iter().all(|&h| h == 0);
        let q = f.graded_piece(t).is_quasi_isomorphism();
        cone_exact &= e;
        quasi &= q;
        agrees &= e == q;
    }
    ConeReport {
        max_degree,
        cone_exact,
        quasi_isomorphism: quasi,
        agrees,
    }
}

/// `K(f, g)`: `0 → Q(−2d) → Q(−d)^2 → Q`.
pub fn koszul_pair(f: &MultiPoly, g: &MultiPoly) -> Result<PolyComplex> {
    let d = f
        .homogeneous_degree()
        .filter(|&d| g.homogeneous_degree() == Some(d))
        .ok_or_else(|| Error::PreconditionViolated("K(f, g) needs forms of one degree".into()))?;
    let d1 = PolyMatrix::from_rows(vec![vec![f.clone(), g.clone()]])?;
    let d2 = PolyMatrix::from_rows(vec![vec![g.neg()], vec![f.clone()]])?;
    PolyComplex::new(
        f.field(),
        f.nvars(),
        vec![vec![0], vec![d, d], vec![2 * d]],
        vec![d1, d2],
    )
}

/// `K(f)`: `0 → Q(−d) → Q`.
pub fn koszul_single(f: &MultiPoly) -> Result<PolyComplex> {
    let d = f
        .homogeneous_degree()
        .ok_or_else(|| Error::PreconditionViolated("K(f) needs a form".into()))?;
    PolyComplex::new(
        f.field(),
        f.nvars(),
        vec![vec![0], vec![d]],
        vec![PolyMatrix::from_rows(vec![vec![f.clone()]])?],
    )
}

fn random_form<R: Rng>(field: Field, degree: u32, rng: &mut R) -> MultiPoly {
    let terms = (0..=degree)
        .map(|a| (vec![a, degree - a], field.from_i64(rng.gen_range(-3..=3))))
        .collect();
    MultiPoly::from_terms(field, 2, terms).expect("two variables")
}

/// A random pair of forms of one degree in two variables whose Koszul
/// complex is acyclic in positive degrees (a regular sequence).
fn random_regular_pair<R: Rng>(
    field: Field,
    degree: u32,
    rng: &mut R,
    max_degree: u32,
) -> Result<(MultiPoly, MultiPoly)> {
    for _ in 0..64 {
        let f = random_form(field, degree, rng);
        let g = random_form(field, degree, rng);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let k = koszul_pair(&f, &g)?;
        if positive_acyclic(&k.homology_table(max_degree)) {
            return Ok((f, g));
        }
    }
    Err(Error::InvariantViolation("no regular pair found".into()))
}

fn constant_matrix(field: Field, nvars: usize, m: &[Vec<Scalar>]) -> PolyMatrix {
    PolyMatrix::from_rows(
        m.iter()
            .map(|row| {
                row.iter()
                    .map(|c| MultiPoly::constant(field, nvars, c.clone()))
                    .collect()
            })
            .collect(),
    )
    .expect("rectangular")
}

/// The quasi-isomorphism `K(f, g) → K(f', g')` for `(f', g') = U (f, g)`:
/// `φ_0 = 1`, `φ_1 = (Uᵀ)^{-1}`, `φ_2 = 1/det U`.
pub fn seeded_quasi_isomorphism<R: Rng>(
    field: Field,
    degree: u32,
    rng: &mut R,
    max_degree: u32,
) -> Result<PolyChainMap> {
    let (f, g) = random_regular_pair(field, degree, rng, max_degree)?;
    let u = loop {
        let u: Vec<i64> = (0..4).map(|_| rng.gen_range(-3..=3)).collect();
        if u[0] * u[3] - u[1] * u[2] != 0
            && field.from_i64(u[0] * u[3] - u[1] * u[2]).inv().is_some()
        {
            break u;
        }
    };
    let s = |v: i64| field.from_i64(v);
    let fp = f.scale(&s(u[0])).add(&g.scale(&s(u[1])))?;
    let gp = f.scale(&s(u[2])).add(&g.scale(&s(u[3])))?;
    let det_inv = s(u[0] * u[3] - u[1] * u[2]).inv().expect("unit");
    // (Uᵀ)^{-1} = adj(Uᵀ)/det = [[u3, −u2], [−u1, u0]] / det
    let phi1 = vec![
        vec![&s(u[3]) * &det_inv, &s(-u[2]) * &det_inv],
        vec![&s(-u[1]) * &det_inv, &s(u[0]) * &det_inv],
    ];
    let source = koszul_pair(&f, &g)?;
    let target = koszul_pair(&fp, &gp)?;
    let maps = vec![
        constant_matrix(field, 2, &[vec![field.one()]]),
        constant_matrix(field, 2, &phi1),
        constant_matrix(field, 2, &[vec![det_inv.clone()]]),
    ];
    PolyChainMap::new(source, target, maps)
}

/// A chain map that is not a quasi-isomorphism: the inclusion
/// `K(f) → K(f, g)` or the zero endomorphism of `K(f, g)`.
pub fn seeded_non_quasi_isomorphism<R: Rng>(
    field: Field,
    degree: u32,
    rng: &mut R,
    max_degree: u32,
) -> Result<PolyChainMap> {
    let (f, g) = random_regular_pair(field, degree, rng, max_degree)?;
    let target = koszul_pair(&f, &g)?;
    if rng.gen_bool(0.5) {
        let source = koszul_single(&f)?;
        let maps = vec![
            constant_matrix(field, 2, &[vec![field.one()]]),
            constant_matrix(field, 2, &[vec![field.one()], vec![field.zero()]]),
            PolyMatrix::zeros(field, 2, 1, 0),
        ];
        PolyChainMap::new(source, target, maps)
    } else {
        let maps = vec![
            PolyMatrix::zeros(field, 2, 1, 1),
            PolyMatrix::zeros(field, 2, 2, 2),
            PolyMatrix::zeros(field, 2, 1, 1),
        ];
        PolyChainMap::new(target.clone(), target, maps)
    }
}
