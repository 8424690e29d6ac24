//! Dense exact matrices with deterministic elimination.
//!
//! Pivots are chosen column by column, taking the first row (top to bottom)
//! with a nonzero entry. Over `Q` the forward pass is fraction-free
//! (Bareiss) on an integer copy of the matrix; over `F_p` it is ordinary
//! elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::FieldMismatch(format!(
                "entry over {} in a matrix over {field}",
                bad.field()
            )));
        }
        Ok(DenseMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows.iter().flatten().map(|&v| field.from_i64(v)).collect();
        Self::new(field, r, c, entries)
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch("column length".into()));
            }
            for (i, v) in col.iter().enumerate() {
                if v.field() != field {
                    return Err(Error::FieldMismatch("column entry".into()));
                }
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }
    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch("matrix product".into()));
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = &out.entries[i * other.cols + j] + &(a * b);
                        out.entries[i * other.cols + j] = cur;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch("matrix sum".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(DenseMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Scalar) -> DenseMatrix {
        DenseMatrix {
            entries: self.entries.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// Stacks `blocks` vertically; all must share the column count.
    pub fn vstack(field: Field, cols: usize, blocks: &[&DenseMatrix]) -> Result<DenseMatrix> {
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch("vstack".into()));
            }
            entries.extend(b.entries.iter().cloned());
            rows += b.rows;
        }
        DenseMatrix::new(field, rows, cols, entries)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Exact rank together with a basis of the right kernel.
    pub fn rank_kernel(&self) -> Result<(usize, Vec<Vec<Scalar>>)> {
        self.check_tags()?;
        let ech = self.echelon();
        let kernel = ech.kernel_basis(self.field, self.cols);
        Ok((ech.pivots.len(), kernel))
    }

    /// One exact solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve_linear(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        self.check_tags()?;
        if b.iter().any(|x| x.field() != self.field) {
            return Err(Error::FieldMismatch("right-hand side".into()));
        }
        let mut aug = DenseMatrix::zeros(self.field, self.rows, self.cols + 1);
        for (r, rhs) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs.clone());
        }
        let ech = aug.echelon();
        if ech.pivots.iter().any(|&(_, c)| c == self.cols) {
            return Ok(None);
        }
        // particular solution: free variables 0, the augmented column plays the
        // role of "-1 times a free variable"
        let mut x = vec![self.field.zero(); self.cols + 1];
        x[self.cols] = -&self.field.one();
        ech.back_substitute(&mut x);
        x.truncate(self.cols);
        Ok(Some(x))
    }

    fn check_tags(&self) -> Result<()> {
        if self.entries.iter().any(|e| e.field() != self.field) {
            return Err(Error::FieldMismatch("mixed entries".into()));
        }
        Ok(())
    }

    fn echelon(&self) -> Echelon {
        match self.field {
            Field::Rational => bareiss(self),
            Field::Prime(_) => gauss(self),
        }
    }
}

/// Row echelon form: `rows[k]` holds pivot `pivots[k] = (row, col)`.
struct Echelon {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<(usize, usize)>,
}

impl Echelon {
    /// Given values for the non-pivot coordinates of `x`, fills the pivot
    /// coordinates so that every echelon row annihilates `x`.
    fn back_substitute(&self, x: &mut [Scalar]) {
        for (k, &(_, pc)) in self.pivots.iter().enumerate().rev() {
            let row = &self.rows[k];
            let mut acc = row[0].field().zero();
            for (j, xj) in x.iter().enumerate().skip(pc + 1) {
                if !row[j].is_zero() && !xj.is_zero() {
                    acc = &acc + &(&row[j] * xj);
                }
            }
            let inv = row[pc].inv().expect("pivot is nonzero");
            x[pc] = -&(&acc * &inv);
        }
    }

    fn kernel_basis(&self, field: Field, cols: usize) -> Vec<Vec<Scalar>> {
        let pivot_cols: Vec<usize> = self.pivots.iter().map(|&(_, c)| c).collect();
        (0..cols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|free| {
                let mut x = vec![field.zero(); cols];
                x[free] = field.one();
                self.back_substitute(&mut x);
                x
            })
            .collect()
    }
}

#[allow(clippy::needless_range_loop)]
fn gauss(m: &DenseMatrix) -> Echelon {
    let mut a: Vec<Vec<Scalar>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for j in c..m.cols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in r + 1..m.rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..m.cols {
                if !a[r][j].is_zero() {
                    a[i][j] = &a[i][j] - &(&f * &a[r][j]);
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

fn bareiss(m: &DenseMatrix) -> Echelon {
    // clear denominators row by row
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let lcm = row
                .iter()
                .filter_map(|s| s.as_rational())
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter()
                .map(|s| {
                    let q = s.as_rational().expect("rational entry");
                    q.numer() * (&lcm / q.denom())
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..m.rows {
            for j in c + 1..m.cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    a.truncate(r);
    let field = Field::Rational;
    let rows = a
        .into_iter()
        .map(|row| row.iter().map(|v| field.from_bigint(v)).collect())
        .collect();
    Echelon { rows, pivots }
}

/// Serializable view used by JSON emitters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixView {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl From<&DenseMatrix> for MatrixView {
    fn from(m: &DenseMatrix) -> Self {
        MatrixView {
            rows: m.rows,
            cols: m.cols,
            entries: (0..m.rows)
                .map(|r| m.row(r).iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn identity_has_full_rank() {
        let (rank, ker) = DenseMatrix::identity(q(), 2).rank_kernel().unwrap();
        assert_eq!(rank, 2);
        assert!(ker.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let (rank, ker) = DenseMatrix::zeros(q(), 3, 2).rank_kernel().unwrap();
        assert_eq!(rank, 0);
        assert_eq!(ker.len(), 2);
    }

    #[test]
    fn rank_one_kernel_by_hand() {
        // row-reducing [[1,2],[2,4]] leaves x + 2y = 0, so (2,-1) spans the kernel
        let m = DenseMatrix::from_i64(q(), &[vec![1, 2], vec![2, 4]]).unwrap();
        let (rank, ker) = m.rank_kernel().unwrap();
        assert_eq!(rank, 1);
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        let expected = [q().from_i64(2), q().from_i64(-1)];
        let ratio = &v[0] * &expected[0].inv().unwrap();
        assert_eq!(v[1], &expected[1] * &ratio);
    }

    #[test]
    fn mixed_fields_rejected() {
        let entries = vec![q().one(), Field::Prime(5).one()];
        assert!(matches!(
            DenseMatrix::new(q(), 1, 2, entries),
            Err(Error::FieldMismatch(_))
        ));
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let b = vec![q().from_i64(3), q().from_i64(-7)];
        let x = DenseMatrix::identity(q(), 2)
            .solve_linear(&b)
            .unwrap()
            .unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn solve_over_f5_substitutes_back() {
        let f5 = Field::Prime(5);
        let m = DenseMatrix::from_i64(f5, &[vec![1, 1]]).unwrap();
        let b = vec![f5.from_i64(3)];
        let x = m.solve_linear(&b).unwrap().unwrap();
        assert_eq!(m.apply(&x).unwrap(), b);
    }

    #[test]
    fn inconsistent_system() {
        let m = DenseMatrix::from_i64(q(), &[vec![0]]).unwrap();
        assert_eq!(m.solve_linear(&[q().one()]).unwrap(), None);
        assert!(matches!(
            m.solve_linear(&[q().one(), q().one()]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (1usize..6, 1usize..6)
            .prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(-3i64..4, r * c)))
    }

    proptest! {
        #[test]
        fn rank_plus_nullity((r, c, vals) in small_matrix(), prime in prop_oneof![Just(None), Just(Some(3u64)), Just(Some(7u64))]) {
            let field = prime.map_or(Field::Rational, Field::Prime);
            let m = DenseMatrix::new(field, r, c, vals.iter().map(|&v| field.from_i64(v)).collect()).unwrap();
            let (rank, ker) = m.rank_kernel().unwrap();
            prop_assert_eq!(rank + ker.len(), c);
            for v in &ker {
                prop_assert!(m.apply(v).unwrap().iter().all(Scalar::is_zero));
            }
            // independence of the kernel basis
            if !ker.is_empty() {
                let k = DenseMatrix::from_columns(field, c, &ker).unwrap();
                prop_assert_eq!(k.rank(), ker.len());
            }
        }

        #[test]
        fn solutions_substitute_back((r, c, vals) in small_matrix(), xs in proptest::collection::vec(-3i64..4, 6)) {
            let field = Field::Rational;
            let m = DenseMatrix::new(field, r, c, vals.iter().map(|&v| field.from_i64(v)).collect()).unwrap();
            let x: Vec<Scalar> = xs[..c].iter().map(|&v| field.from_i64(v)).collect();
            let b = m.apply(&x).unwrap();
            let sol = m.solve_linear(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.apply(&sol).unwrap(), b);
        }
    }
}
