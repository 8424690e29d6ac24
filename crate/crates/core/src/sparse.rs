//! Sparse vectors and incremental echelon bases.
//!
//! The resolution engine works in free modules whose dimension reaches the
//! hundreds of thousands, where only a handful of coordinates of any vector
//! are nonzero. Everything here keeps entries sorted by index with no
//! stored zeros.

use std::collections::HashMap;

use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec::default()
    }

    pub fn unit(index: usize, field: Field) -> Self {
        SparseVec {
            entries: vec![(index, field.one())],
        }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_entries(mut raw: Vec<(usize, Scalar)>) -> Self {
        raw.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(raw.len());
        for (i, v) in raw {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = &*acc + &v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec, field: Field) -> SparseVec {
        self.add_scaled(&field.one(), other)
    }

    /// Re-indexes every coordinate through `f`.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_entries(
            self.entries
                .iter()
                .map(|(i, v)| (f(*i), v.clone()))
                .collect(),
        )
    }
}

/// A growing basis kept in echelon form: every row has leading coefficient
/// one at a distinct pivot index, and rows only contain indices at or after
/// their pivot.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    field: Field,
    rows: Vec<SparseVec>,
    pivot_of: HashMap<usize, usize>,
}

impl SparseEchelon {
    pub fn new(field: Field) -> Self {
        SparseEchelon {
            field,
            rows: Vec::new(),
            pivot_of: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, index: usize) -> bool {
        self.pivot_of.contains_key(&index)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows
            .iter()
            .map(|r| r.leading().expect("nonzero row").0)
    }

    /// Eliminates every pivot coordinate from `v`.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut pos = 0;
        while pos < v.entries.len() {
            let (idx, c) = &v.entries[pos];
            match self.pivot_of.get(idx) {
                Some(&r) => {
                    let c = -c;
                    v = v.add_scaled(&c, &self.rows[r]);
                }
                None => pos += 1,
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        self.push_reduced(r)
    }

    fn push_reduced(&mut self, r: SparseVec) -> bool {
        let Some((idx, lead)) = r.leading().cloned() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero leading coefficient");
        self.pivot_of.insert(idx, self.rows.len());
        self.rows.push(r.scale(&inv));
        true
    }

    /// Back-substitutes so that each row is zero at every other pivot.
    pub fn fully_reduce(&mut self) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r].leading().unwrap().0));
        for &r in &order {
            let row = self.rows[r].clone();
            let (lead, one) = row.leading().cloned().unwrap();
            let rest = SparseVec {
                entries: row.entries[1..].to_vec(),
            };
            let reduced = self.reduce(&rest);
            let mut entries = vec![(lead, one)];
            entries.extend(reduced.entries);
            self.rows[r] = SparseVec { entries };
        }
    }

    /// Coordinates of `v` in the row basis, assuming `v` lies in the span and
    /// the echelon is fully reduced.
    pub fn coordinates(&self, v: &SparseVec) -> Vec<(usize, Scalar)> {
        v.iter()
            .filter_map(|(i, c)| self.pivot_of.get(i).map(|&r| (r, c.clone())))
            .collect()
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// Rank of the span of `vectors`.
pub fn sparse_rank<I: IntoIterator<Item = SparseVec>>(field: Field, vectors: I) -> usize {
    let mut ech = SparseEchelon::new(field);
    for v in vectors {
        ech.insert(&v);
    }
    ech.rank()
}

/// Kernel of the linear map sending source basis vector `j` to `images[j]`.
///
/// Returns the rank and a kernel basis; kernel vectors are expressed in the
/// source basis.
pub fn sparse_kernel<I: IntoIterator<Item = SparseVec>>(
    field: Field,
    images: I,
) -> (usize, Vec<SparseVec>) {
    let mut rows: Vec<(SparseVec, SparseVec)> = Vec::new();
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    let mut kernel = Vec::new();
    for (j, image) in images.into_iter().enumerate() {
        let mut v = image;
        let mut combo = SparseVec::unit(j, field);
        let mut pos = 0;
        while pos < v.entries.len() {
            let (idx, c) = &v.entries[pos];
            match pivot_of.get(idx) {
                Some(&r) => {
                    let c = -c;
                    v = v.add_scaled(&c, &rows[r].0);
                    combo = combo.add_scaled(&c, &rows[r].1);
                }
                None => pos += 1,
            }
        }
        match v.leading().cloned() {
            None => kernel.push(combo),
            Some((idx, lead)) => {
                let inv = lead.inv().expect("nonzero");
                pivot_of.insert(idx, rows.len());
                rows.push((v.scale(&inv), combo.scale(&inv)));
            }
        }
    }
    (rows.len(), kernel)
}
