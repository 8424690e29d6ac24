//! Artinian local algebras given by a k-basis and structure constants.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::poly::{monomial_name, parse_power, Exponent};
use crate::scalar::{Field, Scalar};
use crate::sparse::{SparseEchelon, SparseVec};

pub const MAX_ALGEBRA_DIM: usize = 400;
pub const MAX_NILPOTENCY_BOUND: usize = 12;

/// `A = Q/I` as a finite table: `b_0 = 1`, the remaining basis elements
/// span the maximal ideal `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteCommutativeAlgebra {
    field: Field,
    names: Vec<String>,
    /// `table[i * n + j] = b_i * b_j` in basis coordinates.
    table: Vec<SparseVec>,
    generators: Vec<usize>,
    grading: Option<Vec<u32>>,
}

impl FiniteCommutativeAlgebra {
    /// Validating constructor. `generators` defaults to a greedy choice of
    /// basis elements independent modulo `m^2`.
    pub fn from_table(
        field: Field,
        names: Vec<String>,
        table: Vec<SparseVec>,
        generators: Option<Vec<usize>>,
        grading: Option<Vec<u32>>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra("empty basis".into()));
        }
        if n > MAX_ALGEBRA_DIM {
            return Err(Error::CapExceeded {
                what: "algebra dimension",
                limit: MAX_ALGEBRA_DIM,
                got: n,
            });
        }
        if table.len() != n * n {
            return Err(Error::InvalidAlgebra(format!(
                "structure table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        for v in &table {
            for (i, c) in v.iter() {
                if *i >= n {
                    return Err(Error::InvalidAlgebra(format!(
                        "basis index {i} out of range"
                    )));
                }
                if c.field() != field {
                    return Err(Error::FieldMismatch("structure constant".into()));
                }
            }
        }
        let mut alg = FiniteCommutativeAlgebra {
            field,
            names,
            table,
            generators: Vec::new(),
            grading,
        };
        alg.validate_structure()?;
        alg.generators = match generators {
            Some(g) => g,
            None => alg.greedy_generators(),
        };
        alg.validate_generators()?;
        alg.validate_grading()?;
        Ok(alg)
    }

    fn validate_structure(&self) -> Result<()> {
        let n = self.dim();
        let one = SparseVec::unit(0, self.field);
        for j in 0..n {
            let bj = SparseVec::unit(j, self.field);
            if self.mul_basis(0, j) != &bj || self.mul_basis(j, 0) != &bj {
                return Err(Error::InvalidAlgebra(format!(
                    "b_0 does not act as the unit on {}",
                    self.names[j]
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.mul_basis(i, j) != self.mul_basis(j, i) {
                    return Err(Error::InvalidAlgebra(format!(
                        "not commutative: {} * {}",
                        self.names[i], self.names[j]
                    )));
                }
                if i > 0 && j > 0 && self.mul_basis(i, j).get(0).is_some() {
                    return Err(Error::InvalidAlgebra(format!(
                        "{} * {} leaves the maximal ideal",
                        self.names[i], self.names[j]
                    )));
                }
            }
        }
        let _ = one;
        for i in 1..n {
            for j in 1..n {
                let bij = self.mul_basis(i, j).clone();
                for l in 1..n {
                    let left = self.mul_vec_basis(&bij, l);
                    let right = self.mul_basis_vec(i, self.mul_basis(j, l));
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "not associative on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[l]
                        )));
                    }
                }
            }
        }
        // m^n = 0
        let mut power: Vec<SparseVec> = (1..n).map(|i| SparseVec::unit(i, self.field)).collect();
        for _ in 0..n {
            if power.is_empty() {
                return Ok(());
            }
            let mut next = SparseEchelon::new(self.field);
            for p in &power {
                for g in 1..n {
                    next.insert(&self.mul_basis_vec(g, p));
                }
            }
            power = next.rows().to_vec();
        }
        if power.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra(
                "maximal ideal is not nilpotent".into(),
            ))
        }
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut ech = SparseEchelon::new(self.field);
        for v in self.m_squared_basis() {
            ech.insert(&v);
        }
        (1..self.dim())
            .filter(|&i| ech.insert(&SparseVec::unit(i, self.field)))
            .collect()
    }

    fn validate_generators(&self) -> Result<()> {
        let n = self.dim();
        if let Some(&g) = self.generators.iter().find(|&&g| g == 0 || g >= n) {
            return Err(Error::InvalidAlgebra(format!(
                "generator index {g} is not in m"
            )));
        }
        // ideal generated by G: span of all products of generators of length >= 1
        let mut span = SparseEchelon::new(self.field);
        let mut frontier: Vec<SparseVec> = Vec::new();
        for &g in &self.generators {
            let v = SparseVec::unit(g, self.field);
            if span.insert(&v) {
                frontier.push(v);
            }
        }
        while let Some(v) = frontier.pop() {
            for &g in &self.generators {
                let w = self.mul_basis_vec(g, &v);
                if span.insert(&w) {
                    frontier.push(w);
                }
            }
        }
        if span.rank() != n - 1 {
            return Err(Error::InvalidAlgebra(format!(
                "generators span an ideal of dimension {} inside m of dimension {}",
                span.rank(),
                n - 1
            )));
        }
        Ok(())
    }

    fn validate_grading(&self) -> Result<()> {
        let Some(deg) = &self.grading else {
            return Ok(());
        };
        let n = self.dim();
        if deg.len() != n {
            return Err(Error::InvalidAlgebra("grading length".into()));
        }
        if deg[0] != 0 || deg[1..].contains(&0) {
            return Err(Error::InvalidAlgebra(
                "grading must put 1 in degree 0 and m in positive degrees".into(),
            ));
        }
        for i in 0..n {
            for j in 0..n {
                if self
                    .mul_basis(i, j)
                    .iter()
                    .any(|(t, _)| deg[*t] != deg[i] + deg[j])
                {
                    return Err(Error::InvalidAlgebra(format!(
                        "{} * {} is not homogeneous",
                        self.names[i], self.names[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// `k[x_1..x_e]/I` for a monomial ideal `I` given by exponent vectors.
    pub fn from_monomial_ideal(field: Field, vars: usize, ideal: &[Exponent]) -> Result<Self> {
        if let Some(bad) = ideal.iter().find(|g| g.len() != vars) {
            return Err(Error::DimensionMismatch(format!(
                "ideal generator {bad:?} in {vars} variables"
            )));
        }
        // every variable needs a pure power in I
        let mut bounds = vec![0u32; vars];
        for (v, bound) in bounds.iter_mut().enumerate() {
            *bound = ideal
                .iter()
                .filter(|g| g.iter().enumerate().all(|(w, &p)| w == v || p == 0))
                .map(|g| g[v])
                .min()
                .ok_or(Error::NonArtinian(v + 1))?;
        }
        let divides = |g: &Exponent, e: &Exponent| g.iter().zip(e).all(|(a, b)| a <= b);
        // standard monomials inside the box bounded by the pure powers
        let mut standard: Vec<Exponent> = vec![vec![0; vars]];
        let mut cursor = 0;
        if ideal.iter().any(|g| g.iter().all(|&p| p == 0)) {
            standard.clear();
        }
        while cursor < standard.len() {
            let e = standard[cursor].clone();
            cursor += 1;
            for v in 0..vars {
                let mut f = e.clone();
                f[v] += 1;
                if f[v] >= bounds[v] || standard.contains(&f) {
                    continue;
                }
                if ideal.iter().any(|g| divides(g, &f)) {
                    continue;
                }
                standard.push(f);
                if standard.len() > MAX_ALGEBRA_DIM {
                    return Err(Error::CapExceeded {
                        what: "algebra dimension",
                        limit: MAX_ALGEBRA_DIM,
                        got: standard.len(),
                    });
                }
            }
        }
        if standard.is_empty() {
            return Err(Error::InvalidAlgebra("the ideal is the whole ring".into()));
        }
        let top = standard
            .iter()
            .map(|e| e.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0);
        if top + 1 > MAX_NILPOTENCY_BOUND {
            return Err(Error::CapExceeded {
                what: "nilpotency bound N with m^N inside I",
                limit: MAX_NILPOTENCY_BOUND,
                got: top + 1,
            });
        }
        // degree ascending, x1 before x2 within a degree
        standard.sort_by(|a, b| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let index: HashMap<&Exponent, usize> =
            standard.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let n = standard.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &standard {
            for b in &standard {
                let prod: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
                table.push(match index.get(&prod) {
                    Some(&t) => SparseVec::unit(t, field),
                    None => SparseVec::zero(),
                });
            }
        }
        let names = standard.iter().map(|e| monomial_name(e)).collect();
        let generators: Vec<usize> = (0..n)
            .filter(|&i| standard[i].iter().sum::<u32>() == 1)
            .collect();
        let grading = standard.iter().map(|e| e.iter().sum()).collect();
        Self::from_table(field, names, table, Some(generators), Some(grading))
    }

    /// Parses ideal generators written as `x1^2*x2`.
    pub fn parse_monomials(vars: usize, gens: &[String]) -> Result<Vec<Exponent>> {
        gens.iter()
            .map(|g| {
                let mut e = vec![0u32; vars];
                if g.trim() == "1" {
                    return Ok(e);
                }
                for factor in g.trim().split('*') {
                    let (idx, p) = parse_power(factor.trim())?;
                    if idx == 0 || idx > vars {
                        return Err(Error::Parse(format!("variable x{idx} outside x1..x{vars}")));
                    }
                    e[idx - 1] += p;
                }
                Ok(e)
            })
            .collect()
    }

    /// `S ⋉ k^r`: adjoins `r` socle elements killed by `m` and by each other.
    pub fn trivial_extension(&self, r: usize) -> Result<Self> {
        if r == 0 {
            return Ok(self.clone());
        }
        let n = self.dim();
        let total = n + r;
        let mut names = self.names.clone();
        for i in 1..=r {
            let mut name = format!("z{i}");
            while names.contains(&name) {
                name.push('\'');
            }
            names.push(name);
        }
        let mut table = vec![SparseVec::zero(); total * total];
        for i in 0..n {
            for j in 0..n {
                table[i * total + j] = self.mul_basis(i, j).clone();
            }
        }
        for z in n..total {
            let zv = SparseVec::unit(z, self.field);
            table[z] = zv.clone();
            table[z * total] = zv;
        }
        let mut generators = self.generators.clone();
        generators.extend(n..total);
        let grading = self.grading.as_ref().map(|g| {
            let mut g = g.clone();
            g.extend(std::iter::repeat_n(1, r));
            g
        });
        Self::from_table(self.field, names, table, Some(generators), grading)
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
    pub fn grading(&self) -> Option<&[u32]> {
        self.grading.as_deref()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    /// `b_i * v` for an element `v` in basis coordinates.
    pub fn mul_basis_vec(&self, i: usize, v: &SparseVec) -> SparseVec {
        let mut raw = Vec::new();
        for (j, c) in v.iter() {
            for (t, d) in self.mul_basis(i, *j).iter() {
                raw.push((*t, c * d));
            }
        }
        SparseVec::from_entries(raw)
    }

    fn mul_vec_basis(&self, v: &SparseVec, i: usize) -> SparseVec {
        self.mul_basis_vec(i, v)
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

    /// Matrix of `x -> b_i * x` on the whole algebra.
    pub fn left_mult_matrix(&self, i: usize) -> DenseMatrix {
        let n = self.dim();
        let mut m = DenseMatrix::zeros(self.field, n, n);
        for j in 0..n {
            for (t, c) in self.mul_basis(i, j).iter() {
                m.set(*t, j, c.clone());
            }
        }
        m
    }

    /// Basis (echelon rows) of `m^2`.
    pub fn m_squared_basis(&self) -> Vec<SparseVec> {
        let mut ech = SparseEchelon::new(self.field);
        for i in 1..self.dim() {
            for j in i..self.dim() {
                ech.insert(self.mul_basis(i, j));
            }
        }
        ech.rows().to_vec()
    }

    /// Embedding dimension `dim m/m^2`.
    pub fn embedding_dim(&self) -> usize {
        self.dim() - 1 - self.m_squared_basis().len()
    }

    /// Socle `(0 : m)` inside `m`, as a basis of vectors.
    pub fn socle(&self) -> Vec<SparseVec> {
        let n = self.dim();
        if n == 1 {
            return Vec::new();
        }
        // rows: for each generator g and each target t, the map x -> (g*x)_t on m
        let gens = &self.generators;
        let mut m = DenseMatrix::zeros(self.field, gens.len() * n, n - 1);
        for (k, &g) in gens.iter().enumerate() {
            for j in 1..n {
                for (t, c) in self.mul_basis(g, j).iter() {
                    m.set(k * n + t, j - 1, c.clone());
                }
            }
        }
        let (_, kernel) = m.rank_kernel().expect("single field");
        kernel
            .into_iter()
            .map(|v| SparseVec::from_dense(&v).map_indices(|i| i + 1))
            .collect()
    }

    /// Largest `s` with `m ≅ k^s ⊕ m'`, with `s` socle elements independent
    /// modulo `m^2` as witnesses.
    pub fn decompose_maximal_ideal(&self) -> (usize, Vec<SparseVec>) {
        let mut ech = SparseEchelon::new(self.field);
        for v in self.m_squared_basis() {
            ech.insert(&v);
        }
        let witnesses: Vec<SparseVec> =
            self.socle().into_iter().filter(|v| ech.insert(v)).collect();
        (witnesses.len(), witnesses)
    }

    /// Pretty form of an element, e.g. `2*x1 + z1`.
    pub fn format_element(&self, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| {
                if c.is_one() {
                    self.names[*i].clone()
                } else {
                    format!("{c}*{}", self.names[*i])
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Element from a `{name: coefficient}` list.
    pub fn element_from_terms(&self, terms: &[(String, Scalar)]) -> Result<SparseVec> {
        let mut raw = Vec::new();
        for (name, c) in terms {
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("unknown basis element {name:?}")))?;
            if c.field() != self.field {
                return Err(Error::FieldMismatch("element coefficient".into()));
            }
            raw.push((i, c.clone()));
        }
        Ok(SparseVec::from_entries(raw))
    }

    pub fn unit(&self) -> SparseVec {
        SparseVec::unit(0, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn mono(vars: usize, gens: &[&str]) -> FiniteCommutativeAlgebra {
        let gens: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let ideal = FiniteCommutativeAlgebra::parse_monomials(vars, &gens).unwrap();
        FiniteCommutativeAlgebra::from_monomial_ideal(q(), vars, &ideal).unwrap()
    }

    /// Brute force: every monomial with exponents below 12 not divisible by a generator.
    fn count_standard(vars: usize, ideal: &[Exponent]) -> usize {
        let mut count = 0;
        let total = 12usize.pow(vars as u32);
        for code in 0..total {
            let e: Vec<u32> = (0..vars)
                .map(|v| ((code / 12usize.pow(v as u32)) % 12) as u32)
                .collect();
            if !ideal.iter().any(|g| g.iter().zip(&e).all(|(a, b)| a <= b)) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn dual_numbers() {
        let a = mono(1, &["x1^2"]);
        assert_eq!(a.names(), &["1", "x1"]);
        assert!(a.mul_basis(1, 1).is_zero());
    }

    #[test]
    fn square_of_maximal_ideal_in_two_variables() {
        let a = mono(2, &["x1^2", "x1*x2", "x2^2"]);
        assert_eq!(a.dim(), 3);
        for i in 1..3 {
            for j in 1..3 {
                assert!(a.mul_basis(i, j).is_zero());
            }
        }
    }

    #[test]
    fn standard_monomials_match_brute_force() {
        let gens: Vec<String> = ["x1^2", "x1*x2^3", "x2^4"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let ideal = FiniteCommutativeAlgebra::parse_monomials(2, &gens).unwrap();
        let a = FiniteCommutativeAlgebra::from_monomial_ideal(q(), 2, &ideal).unwrap();
        assert_eq!(a.dim(), count_standard(2, &ideal));
        assert_eq!(a.dim(), 7);
        assert_eq!(
            a.names(),
            &["1", "x1", "x2", "x1*x2", "x2^2", "x1*x2^2", "x2^3"]
        );
        // x1 * x2^2 = x1*x2^2 and x2 * x1*x2^2 = x1*x2^3 = 0
        let x1 = a.index_of("x1").unwrap();
        let x2 = a.index_of("x2").unwrap();
        let y2 = a.index_of("x2^2").unwrap();
        let xy2 = a.index_of("x1*x2^2").unwrap();
        assert_eq!(a.mul_basis(x1, y2), &SparseVec::unit(xy2, q()));
        assert!(a.mul_basis(x2, xy2).is_zero());
    }

    #[test]
    fn non_artinian_and_caps() {
        let ideal = FiniteCommutativeAlgebra::parse_monomials(2, &["x1^2".into()]).unwrap();
        assert!(matches!(
            FiniteCommutativeAlgebra::from_monomial_ideal(q(), 2, &ideal),
            Err(Error::NonArtinian(2))
        ));
        let ideal = FiniteCommutativeAlgebra::parse_monomials(1, &["x1^13".into()]).unwrap();
        assert!(matches!(
            FiniteCommutativeAlgebra::from_monomial_ideal(q(), 1, &ideal),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn trivial_extension_of_k() {
        let k = mono(0, &[]);
        let a = k.trivial_extension(2).unwrap();
        assert_eq!(a.dim(), 3);
        assert!(a.m_squared_basis().is_empty());
        assert_eq!(a.decompose_maximal_ideal().0, 2);
    }

    #[test]
    fn trivial_extension_of_dual_numbers() {
        let s = mono(1, &["x1^2"]);
        let a = s.trivial_extension(2).unwrap();
        assert_eq!(a.dim(), 4);
        // by definition: x*z = 0, z*z = 0, x*x = 0
        for i in 1..4 {
            for j in 1..4 {
                assert!(a.mul_basis(i, j).is_zero());
            }
        }
        assert_eq!(a.decompose_maximal_ideal().0, 3);
        assert_eq!(s.trivial_extension(0).unwrap(), s);
    }

    #[test]
    fn decomposition_examples() {
        let k_x3 = mono(1, &["x1^3"]);
        assert_eq!(k_x3.decompose_maximal_ideal().0, 0);
        let m2 = mono(2, &["x1^2", "x1*x2", "x2^2"]);
        assert_eq!(m2.decompose_maximal_ideal().0, 2);
    }

    #[test]
    fn bad_tables_are_rejected() {
        // x*y = x but y*x = 0
        let names = vec!["1".to_string(), "x".into(), "y".into()];
        let n = 3;
        let mut table = vec![SparseVec::zero(); 9];
        for j in 0..n {
            table[j] = SparseVec::unit(j, q());
            table[j * n] = SparseVec::unit(j, q());
        }
        table[n + 2] = SparseVec::unit(1, q());
        let err = FiniteCommutativeAlgebra::from_table(q(), names, table, None, None).unwrap_err();
        assert!(matches!(err, Error::InvalidAlgebra(_)));
    }

    #[test]
    fn trivial_extension_keeps_socle() {
        let s = mono(2, &["x1^2", "x2^3", "x1*x2"]);
        for r in 1..3 {
            let a = s.trivial_extension(r).unwrap();
            let (s_count, _) = a.decompose_maximal_ideal();
            assert!(s_count >= r);
        }
    }
}
