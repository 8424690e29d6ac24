//! Finite graded strictly skew-commutative algebras, optionally with a
//! differential of degree −1.

mod classes;
mod dagger;

pub use classes::{build_class, classify, invariants, ClassInvariants, ClassKind, TorClass};
pub use dagger::{
    check_dagger, is_valid_witness, random_graded_conjugation, socle_image_dim, split_witness,
    DaggerWitness, SplitReport, WitnessView,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::sparse::{SparseEchelon, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: u32,
}

/// Basis element 0 is the unit. `table[i * n + j] = b_i · b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSkewAlgebra {
    field: Field,
    basis: Vec<BasisElement>,
    table: Vec<SparseVec>,
    differential: Option<Vec<SparseVec>>,
    provenance: Option<TorClass>,
}

fn sign(a: u32, b: u32) -> i64 {
    if a % 2 == 1 && b % 2 == 1 {
        -1
    } else {
        1
    }
}

impl GradedSkewAlgebra {
    /// Raw constructor: the full product table, checked only for shape.
    pub fn from_table(
        field: Field,
        basis: Vec<BasisElement>,
        table: Vec<SparseVec>,
        differential: Option<Vec<SparseVec>>,
    ) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra("empty basis".into()));
        }
        if table.len() != n * n {
            return Err(Error::InvalidAlgebra(
                "product table has the wrong size".into(),
            ));
        }
        if let Some(d) = &differential {
            if d.len() != n {
                return Err(Error::InvalidAlgebra(
                    "differential has the wrong size".into(),
                ));
            }
        }
        let all = table.iter().chain(differential.iter().flatten());
        for v in all {
            if v.max_index().is_some_and(|i| i >= n) {
                return Err(Error::InvalidAlgebra("basis index out of range".into()));
            }
            if v.iter().any(|(_, c)| c.field() != field) {
                return Err(Error::FieldMismatch("structure constant".into()));
            }
        }
        Ok(GradedSkewAlgebra {
            field,
            basis,
            table,
            differential,
            provenance: None,
        })
    }

    /// Builds the table from listed products `x · y = Σ coeff z`. The unit
    /// products and the skew companions `y · x = (−1)^{|x||y|} x · y` are
    /// filled in; every other product is zero.
    pub fn from_products(
        field: Field,
        basis: Vec<BasisElement>,
        products: &[(usize, usize, SparseVec)],
        differential: Option<Vec<SparseVec>>,
    ) -> Result<Self> {
        let n = basis.len();
        let mut table = vec![SparseVec::zero(); n * n];
        for j in 0..n {
            table[j] = SparseVec::unit(j, field);
            table[j * n] = SparseVec::unit(j, field);
        }
        let mut listed = vec![false; n * n];
        for (x, y, z) in products {
            let (x, y) = (*x, *y);
            if x >= n || y >= n {
                return Err(Error::InvalidAlgebra(
                    "product refers to an unknown basis element".into(),
                ));
            }
            if listed[x * n + y] {
                return Err(Error::InvalidAlgebra(format!(
                    "product {} * {} listed twice",
                    basis[x].name, basis[y].name
                )));
            }
            listed[x * n + y] = true;
            table[x * n + y] = z.clone();
            if x != y && !listed[y * n + x] {
                let s = field.from_i64(sign(basis[x].degree, basis[y].degree));
                table[y * n + x] = z.scale(&s);
            }
        }
        Self::from_table(field, basis, table, differential)
    }

    pub fn with_provenance(mut self, class: TorClass) -> Self {
        self.provenance = Some(class);
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }
    pub fn degree(&self, i: usize) -> u32 {
        self.basis[i].degree
    }
    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }
    pub fn provenance(&self) -> Option<&TorClass> {
        self.provenance.as_ref()
    }
    pub fn differential(&self) -> Option<&[SparseVec]> {
        self.differential.as_deref()
    }
    pub fn top_degree(&self) -> u32 {
        self.basis.iter().map(|b| b.degree).max().unwrap_or(0)
    }

    pub fn has_nonzero_differential(&self) -> bool {
        self.differential
            .as_ref()
            .is_some_and(|d| d.iter().any(|v| !v.is_zero()))
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut raw = Vec::new();
        for (i, c) in a.iter() {
            for (j, d) in b.iter() {
                let cd = c * d;
                for (t, e) in self.mul_basis(*i, *j).iter() {
                    raw.push((*t, &cd * e));
                }
            }
        }
        SparseVec::from_entries(raw)
    }

    pub fn apply_d(&self, v: &SparseVec) -> SparseVec {
        let Some(d) = &self.differential else {
            return SparseVec::zero();
        };
        let mut raw = Vec::new();
        for (i, c) in v.iter() {
            raw.extend(d[*i].iter().map(|(t, e)| (*t, c * e)));
        }
        SparseVec::from_entries(raw)
    }

    pub fn indices_of_degree(&self, deg: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == deg).collect()
    }

    /// Indices of the positive-degree basis elements, which span `S_+`.
    pub fn positive_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) > 0).collect()
    }

    /// Echelon basis of `(S_+)^2` restricted to degree `deg`.
    pub fn square_in_degree(&self, deg: u32) -> SparseEchelon {
        let pos = self.positive_indices();
        let mut ech = SparseEchelon::new(self.field);
        for &i in &pos {
            for &j in &pos {
                if self.degree(i) + self.degree(j) == deg {
                    ech.insert(self.mul_basis(i, j));
                }
            }
        }
        ech
    }

    pub fn square_dim(&self) -> usize {
        (1..=2 * self.top_degree())
            .map(|d| self.square_in_degree(d).rank())
            .sum()
    }

    /// Basis of `soc(S_+) ∩ S_deg = {s : S_+ · s = 0}` as kernel vectors.
    pub fn socle_in_degree(&self, deg: u32) -> Vec<SparseVec> {
        let cols = self.indices_of_degree(deg);
        if cols.is_empty() {
            return Vec::new();
        }
        let pos = self.positive_indices();
        let n = self.dim();
        // image of b_c under all left multiplications, stacked
        let images = cols.iter().map(|&c| {
            let mut raw = Vec::new();
            for (k, &i) in pos.iter().enumerate() {
                raw.extend(
                    self.mul_basis(i, c)
                        .iter()
                        .map(|(t, v)| (k * n + t, v.clone())),
                );
            }
            SparseVec::from_entries(raw)
        });
        let (_, kernel) = crate::sparse::sparse_kernel(self.field, images);
        kernel
            .into_iter()
            .map(|v| v.map_indices(|k| cols[k]))
            .collect()
    }

    /// Runs every axiom check and reports the first failure of each.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.dim();
        let f = self.field;
        let mut report = AxiomReport::default();
        let name = |i: usize| self.basis[i].name.as_str();

        let mut unit = None;
        if self.degree(0) != 0 {
            unit = Some(format!("{} has degree {}", name(0), self.degree(0)));
        }
        for j in 0..n {
            if unit.is_some() {
                break;
            }
            let bj = SparseVec::unit(j, f);
            if self.mul_basis(0, j) != &bj || self.mul_basis(j, 0) != &bj {
                unit = Some(format!("({}, {})", name(0), name(j)));
            }
        }
        report.push("unit", unit);

        let mut graded = None;
        'g: for i in 0..n {
            for j in 0..n {
                let want = self.degree(i) + self.degree(j);
                if self
                    .mul_basis(i, j)
                    .iter()
                    .any(|(t, _)| self.degree(*t) != want)
                {
                    graded = Some(format!("({}, {})", name(i), name(j)));
                    break 'g;
                }
            }
        }
        report.push("graded", graded);

        let mut skew = None;
        'sk: for i in 0..n {
            for j in i + 1..n {
                let s = f.from_i64(sign(self.degree(i), self.degree(j)));
                if self.mul_basis(i, j) != &self.mul_basis(j, i).scale(&s) {
                    skew = Some(format!("({}, {})", name(i), name(j)));
                    break 'sk;
                }
            }
        }
        report.push("skew_commutative", skew);

        let odd = (0..n)
            .find(|&i| self.degree(i) % 2 == 1 && !self.mul_basis(i, i).is_zero())
            .map(|i| format!("({}, {})", name(i), name(i)));
        report.push("odd_square_zero", odd);

        let mut assoc = None;
        'a: for i in 1..n {
            for j in 1..n {
                let ij = self.mul_basis(i, j);
                for l in 1..n {
                    let left = self.mul(ij, &SparseVec::unit(l, f));
                    let right = self.mul(&SparseVec::unit(i, f), self.mul_basis(j, l));
                    if left != right {
                        assoc = Some(format!("({}, {}, {})", name(i), name(j), name(l)));
                        break 'a;
                    }
                }
            }
        }
        report.push("associative", assoc);

        if let Some(d) = &self.differential {
            let deg = (0..n)
                .find(|&i| {
                    d[i].iter()
                        .any(|(t, _)| self.degree(*t) + 1 != self.degree(i))
                })
                .map(|i| name(i).to_string());
            report.push("differential_degree", deg);
            let dd = (0..n)
                .find(|&i| !self.apply_d(&d[i]).is_zero())
                .map(|i| name(i).to_string());
            report.push("d_squared_zero", dd);
            let mut leibniz = None;
            'l: for i in 0..n {
                for j in 0..n {
                    let lhs = self.apply_d(self.mul_basis(i, j));
                    let s = f.from_i64(if self.degree(i) % 2 == 1 { -1 } else { 1 });
                    let rhs = self
                        .mul(&d[i], &SparseVec::unit(j, f))
                        .add_scaled(&s, &self.mul(&SparseVec::unit(i, f), &d[j]));
                    if lhs != rhs {
                        leibniz = Some(format!("({}, {})", name(i), name(j)));
                        break 'l;
                    }
                }
            }
            report.push("leibniz", leibniz);
        }
        report
    }

    /// Rendering of an element such as `2*g1 + f3`.
    pub fn format_element(&self, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| {
                if c.is_one() {
                    self.basis[*i].name.clone()
                } else {
                    format!("{c}*{}", self.basis[*i].name)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Listed nonzero products `[x, y, z, coeff]` for `x` before `y`
    /// (both positive degree), in basis order.
    pub fn product_list(&self) -> Vec<(String, String, String, Scalar)> {
        let pos = self.positive_indices();
        let mut out = Vec::new();
        for &i in &pos {
            for &j in &pos {
                if j < i {
                    continue;
                }
                for (t, c) in self.mul_basis(i, j).iter() {
                    out.push((
                        self.name(i).to_string(),
                        self.name(j).to_string(),
                        self.name(*t).to_string(),
                        c.clone(),
                    ));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    fn push(&mut self, axiom: &'static str, witness: Option<String>) {
        self.checks.push(AxiomCheck {
            axiom,
            passed: witness.is_none(),
            witness,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failure(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom && !c.passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn exterior(field: Field, gens: usize) -> GradedSkewAlgebra {
        // basis: all subsets of {1..gens}, indexed by bitmask, ordered by mask
        let n = 1usize << gens;
        let basis = (0..n)
            .map(|mask| BasisElement {
                name: if mask == 0 {
                    "1".into()
                } else {
                    (0..gens)
                        .filter(|b| mask >> b & 1 == 1)
                        .map(|b| format!("e{}", b + 1))
                        .collect::<Vec<_>>()
                        .join("")
                },
                degree: (mask as u32).count_ones(),
            })
            .collect();
        let mut table = vec![SparseVec::zero(); n * n];
        for a in 0..n {
            for b in 0..n {
                if a & b != 0 {
                    continue;
                }
                // sign = (−1)^{number of pairs (i in a, j in b) with i > j}
                let mut inversions = 0;
                for i in 0..gens {
                    if a >> i & 1 == 1 {
                        inversions += (b & ((1 << i) - 1)).count_ones();
                    }
                }
                let s = if inversions % 2 == 1 { -1 } else { 1 };
                table[a * n + b] = SparseVec::from_entries(vec![(a | b, field.from_i64(s))]);
            }
        }
        GradedSkewAlgebra::from_table(field, basis, table, None).unwrap()
    }

    #[test]
    fn exterior_algebra_passes() {
        let e = exterior(Field::Rational, 2);
        assert!(e.check_axioms().all_passed());
        assert_eq!(e.square_dim(), 1);
    }

    #[test]
    fn broken_skew_symmetry_reports_pair() {
        let f = Field::Rational;
        let basis = vec![
            BasisElement {
                name: "1".into(),
                degree: 0,
            },
            BasisElement {
                name: "e1".into(),
                degree: 1,
            },
            BasisElement {
                name: "e2".into(),
                degree: 1,
            },
            BasisElement {
                name: "f".into(),
                degree: 2,
            },
        ];
        let mut alg =
            GradedSkewAlgebra::from_products(f, basis, &[(1, 2, SparseVec::unit(3, f))], None)
                .unwrap();
        // overwrite the companion so that e2 e1 = +f
        alg.table[2 * 4 + 1] = SparseVec::unit(3, f);
        let report = alg.check_axioms();
        let fail = report.failure("skew_commutative").unwrap();
        assert_eq!(fail.witness.as_deref(), Some("(e1, e2)"));
    }

    #[test]
    fn differential_checks() {
        // k[e]/(e^2) with |e| = 1, d e = 0 passes; d on a degree-0 element fails the degree check
        let f = Field::Rational;
        let basis = vec![
            BasisElement {
                name: "1".into(),
                degree: 0,
            },
            BasisElement {
                name: "e".into(),
                degree: 1,
            },
        ];
        let good = GradedSkewAlgebra::from_products(
            f,
            basis.clone(),
            &[],
            Some(vec![SparseVec::zero(); 2]),
        )
        .unwrap();
        assert!(good.check_axioms().all_passed());
        let bad = GradedSkewAlgebra::from_products(
            f,
            basis,
            &[],
            Some(vec![SparseVec::unit(1, f), SparseVec::zero()]),
        )
        .unwrap();
        let report = bad.check_axioms();
        assert!(report.failure("differential_degree").is_some());
    }

    #[test]
    fn socle_of_exterior_algebra_is_top() {
        let e = exterior(Field::Rational, 3);
        assert!(e.socle_in_degree(1).is_empty());
        assert!(e.socle_in_degree(2).is_empty());
        assert_eq!(e.socle_in_degree(3).len(), 1);
    }
}
