//! Multiplication classes of codimension-three Tor algebras.

use std::fmt;

use serde::Serialize;

use super::{BasisElement, GradedSkewAlgebra};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::sparse::{sparse_rank, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    TE,
    B,
    G(usize),
    H(usize, usize),
    Trivial,
    Unclassified,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassKind::TE => f.write_str("TE"),
            ClassKind::B => f.write_str("B"),
            ClassKind::G(r) => write!(f, "G({r})"),
            ClassKind::H(p, q) => write!(f, "H({p},{q})"),
            ClassKind::Trivial => f.write_str("TRIVIAL"),
            ClassKind::Unclassified => f.write_str("UNCLASSIFIED"),
        }
    }
}

impl ClassKind {
    /// Parses `TE`, `B`, `G(r)`, `H(p,q)`, `TRIVIAL`.
    pub fn parse(text: &str) -> Result<ClassKind> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("unknown class tag {text:?}"));
        let args = |body: &str| -> Result<Vec<usize>> {
            body.strip_suffix(')')
                .ok_or_else(bad)?
                .split(',')
                .map(|x| x.parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        match t.as_str() {
            "TE" => Ok(ClassKind::TE),
            "B" => Ok(ClassKind::B),
            "TRIVIAL" => Ok(ClassKind::Trivial),
            _ => {
                if let Some(body) = t.strip_prefix("G(") {
                    match args(body)?[..] {
                        [r] => Ok(ClassKind::G(r)),
                        _ => Err(bad()),
                    }
                } else if let Some(body) = t.strip_prefix("H(") {
                    match args(body)?[..] {
                        [p, q] => Ok(ClassKind::H(p, q)),
                        _ => Err(bad()),
                    }
                } else {
                    Err(bad())
                }
            }
        }
    }

    /// `H(0,0)` and the trivial class describe the same algebra.
    pub fn same_class(&self, other: &ClassKind) -> bool {
        let norm = |k: &ClassKind| match k {
            ClassKind::H(0, 0) => ClassKind::Trivial,
            other => *other,
        };
        norm(self) == norm(other)
    }
}

impl Serialize for ClassKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A class together with `m = dim S_1` and the type `c = dim S_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TorClass {
    pub kind: ClassKind,
    pub m: usize,
    pub c: usize,
}

impl fmt::Display for TorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (m={}, c={})", self.kind, self.m, self.c)
    }
}

impl TorClass {
    /// The witness pair listed for this class, as basis names.
    pub fn canonical_witness(&self) -> Option<(String, String)> {
        let (m, c) = (self.m, self.c);
        let last_f = format!("f{}", m + c - 1);
        match self.kind {
            ClassKind::TE => Some(("g1".into(), "g2".into())),
            ClassKind::B => Some(("f3".into(), "g2".into())),
            ClassKind::G(_) => Some(("g2".into(), last_f)),
            ClassKind::H(p, _) if m >= 2 && p <= m - 2 => Some((format!("e{m}"), last_f)),
            ClassKind::H(_, q) if q < c => Some((format!("g{c}"), last_f)),
            _ => None,
        }
    }

    /// Whether the listed conditions predict that (†) holds.
    pub fn dagger_expected(&self) -> bool {
        match self.kind {
            ClassKind::TE | ClassKind::B | ClassKind::G(_) => true,
            ClassKind::H(p, q) => p + 2 <= self.m || q < self.c,
            ClassKind::Trivial => self.m + (self.m + self.c).saturating_sub(1) + self.c >= 2,
            ClassKind::Unclassified => false,
        }
    }
}

struct Layout {
    m: usize,
    c: usize,
}

impl Layout {
    fn e(&self, i: usize) -> usize {
        i
    }
    fn f(&self, i: usize) -> usize {
        self.m + i
    }
    fn g(&self, i: usize) -> usize {
        self.m + (self.m + self.c - 1) + i
    }
}

/// The algebra of the given class: basis `1; e_1..e_m; f_1..f_{m+c−1};
/// g_1..g_c` with the listed products and their skew companions.
///
/// The default bounds are `m ≥ 4` and `c ≥ 2`; `relax_bounds` lowers them
/// to the least values for which the listed products make sense.
pub fn build_class(
    kind: ClassKind,
    m: usize,
    c: usize,
    relax_bounds: bool,
) -> Result<GradedSkewAlgebra> {
    let bound = |msg: String| Err(Error::PreconditionViolated(msg));
    let (min_m, min_c) = if relax_bounds {
        match kind {
            ClassKind::TE => (3, 1),
            ClassKind::B => (2, 2),
            ClassKind::G(r) => (r, 1),
            ClassKind::H(p, _) => (p + 1, 1),
            _ => (1, 1),
        }
    } else {
        (4, 2)
    };
    if m < min_m {
        return bound(format!("{kind} needs m ≥ {min_m}, got {m}"));
    }
    if c < min_c {
        return bound(format!("{kind} needs c ≥ {min_c}, got {c}"));
    }
    let l = Layout { m, c };
    let nf = m + c - 1;
    let f = Field::Rational;
    let mut products: Vec<(usize, usize, usize)> = Vec::new();
    match kind {
        ClassKind::TE => {
            if m < 3 {
                return bound("TE needs e_3".into());
            }
            products.push((l.e(2), l.e(3), l.f(1)));
            products.push((l.e(3), l.e(1), l.f(2)));
            products.push((l.e(1), l.e(2), l.f(3)));
        }
        ClassKind::B => {
            if nf < 3 {
                return bound("B needs f_3".into());
            }
            products.push((l.e(1), l.e(2), l.f(3)));
            products.push((l.e(1), l.f(1), l.g(1)));
            products.push((l.e(2), l.f(2), l.g(1)));
        }
        ClassKind::G(r) => {
            if r < 2 || r > m {
                return bound(format!("G(r) needs 2 ≤ r ≤ m, got r = {r}"));
            }
            for i in 1..=r {
                products.push((l.e(i), l.f(i), l.g(1)));
            }
        }
        ClassKind::H(p, q) => {
            if p >= m {
                return bound(format!(
                    "H(p,q) needs p < m so that e_(p+1) exists, got p = {p}"
                ));
            }
            if q > c || p + q > nf {
                return bound(format!("H({p},{q}) is out of range for m = {m}, c = {c}"));
            }
            for i in 1..=p {
                products.push((l.e(i), l.e(p + 1), l.f(i)));
            }
            for j in 1..=q {
                products.push((l.e(p + 1), l.f(p + j), l.g(j)));
            }
        }
        ClassKind::Trivial => {}
        ClassKind::Unclassified => {
            return Err(Error::Unsupported(
                "cannot build an unclassified algebra".into(),
            ))
        }
    }
    let mut basis = vec![BasisElement {
        name: "1".into(),
        degree: 0,
    }];
    basis.extend((1..=m).map(|i| BasisElement {
        name: format!("e{i}"),
        degree: 1,
    }));
    basis.extend((1..=nf).map(|i| BasisElement {
        name: format!("f{i}"),
        degree: 2,
    }));
    basis.extend((1..=c).map(|i| BasisElement {
        name: format!("g{i}"),
        degree: 3,
    }));
    let products: Vec<_> = products
        .into_iter()
        .map(|(x, y, z)| (x, y, SparseVec::unit(z, f)))
        .collect();
    let alg = GradedSkewAlgebra::from_products(f, basis, &products, None)?;
    Ok(alg.with_provenance(TorClass { kind, m, c }))
}

/// Invariants used by [`classify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassInvariants {
    /// `dim S_1 · S_1`
    pub p: usize,
    /// `dim S_1 · S_2`
    pub q: usize,
    /// rank of `S_2 → Hom(S_1, S_3)`
    pub r: usize,
    /// rank of `S_1 → Hom(S_1, S_2)`
    pub t: usize,
    /// rank of `S_1 → Hom(S_2, S_3)`
    pub u: usize,
}

fn pairing_rank(alg: &GradedSkewAlgebra, left: &[usize], right: &[usize]) -> usize {
    let n = alg.dim();
    let vectors = left.iter().map(|&x| {
        let mut raw = Vec::new();
        for (k, &y) in right.iter().enumerate() {
            raw.extend(
                alg.mul_basis(x, y)
                    .iter()
                    .map(|(t, v)| (k * n + t, v.clone())),
            );
        }
        SparseVec::from_entries(raw)
    });
    sparse_rank(alg.field(), vectors)
}

pub fn invariants(alg: &GradedSkewAlgebra) -> ClassInvariants {
    let s1 = alg.indices_of_degree(1);
    let s2 = alg.indices_of_degree(2);
    let span = |a: &[usize], b: &[usize]| {
        sparse_rank(
            alg.field(),
            a.iter()
                .flat_map(|&x| b.iter().map(move |&y| alg.mul_basis(x, y).clone())),
        )
    };
    ClassInvariants {
        p: span(&s1, &s1),
        q: span(&s1, &s2),
        r: pairing_rank(alg, &s2, &s1),
        t: pairing_rank(alg, &s1, &s1),
        u: pairing_rank(alg, &s1, &s2),
    }
}

/// Identifies the class from basis-free invariants. Algebras outside the
/// codimension-three shape, or matching no pattern, are `Unclassified`.
pub fn classify(alg: &GradedSkewAlgebra) -> TorClass {
    let m = alg.indices_of_degree(1).len();
    let c = alg.indices_of_degree(3).len();
    let tag = |kind| TorClass { kind, m, c };
    let shape_ok =
        alg.indices_of_degree(0) == [0] && alg.top_degree() <= 3 && !alg.has_nonzero_differential();
    if !shape_ok {
        return tag(ClassKind::Unclassified);
    }
    if alg.square_dim() == 0 {
        return tag(ClassKind::Trivial);
    }
    let ClassInvariants { p, q, r, t, u } = invariants(alg);
    let kind = if (p, q, t) == (3, 0, 3) {
        ClassKind::TE
    } else if (p, q, r, t, u) == (1, 1, 2, 2, 2) {
        ClassKind::B
    } else if p == 0 && q == 1 && r >= 2 && u == r {
        ClassKind::G(r)
    } else if r == q && (q == 0 || u == 1) && t == if p == 0 { 0 } else { p + 1 } {
        ClassKind::H(p, q)
    } else {
        ClassKind::Unclassified
    };
    tag(kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_products_as_listed() {
        let b = build_class(ClassKind::B, 4, 2, false).unwrap();
        assert!(b.check_axioms().all_passed());
        let (e1, e2, f1, f2, f3, g1) = (1, 2, 5, 6, 7, 10);
        assert_eq!(b.name(f3), "f3");
        assert_eq!(b.name(g1), "g1");
        assert_eq!(b.mul_basis(e1, e2), &SparseVec::unit(f3, Field::Rational));
        assert_eq!(
            b.mul_basis(e2, e1),
            &SparseVec::unit(f3, Field::Rational).scale(&Field::Rational.from_i64(-1))
        );
        assert_eq!(b.mul_basis(e1, f1), &SparseVec::unit(g1, Field::Rational));
        assert_eq!(b.mul_basis(f2, e2), &SparseVec::unit(g1, Field::Rational));
        assert!(b.mul_basis(e1, f2).is_zero());
    }

    #[test]
    fn g2_products_as_listed() {
        let g = build_class(ClassKind::G(2), 4, 2, false).unwrap();
        let prods: Vec<_> = g
            .product_list()
            .into_iter()
            .map(|(x, y, z, _)| format!("{x}{y}={z}"))
            .collect();
        assert_eq!(prods, vec!["e1f1=g1", "e2f2=g1"]);
    }

    #[test]
    fn h00_is_trivial() {
        let h = build_class(ClassKind::H(0, 0), 4, 2, false).unwrap();
        assert_eq!(h.square_dim(), 0);
        assert_eq!(classify(&h).kind, ClassKind::Trivial);
        assert!(ClassKind::Trivial.same_class(&ClassKind::H(0, 0)));
    }

    #[test]
    fn bounds() {
        assert!(build_class(ClassKind::TE, 3, 2, false).is_err());
        assert!(build_class(ClassKind::TE, 3, 2, true).is_ok());
        assert!(build_class(ClassKind::G(1), 4, 2, false).is_err());
        assert!(build_class(ClassKind::H(4, 0), 4, 2, false).is_err());
        assert!(build_class(ClassKind::B, 4, 1, false).is_err());
    }

    #[test]
    fn tags_round_trip() {
        for k in [
            ClassKind::TE,
            ClassKind::B,
            ClassKind::G(3),
            ClassKind::H(1, 2),
            ClassKind::Trivial,
        ] {
            assert_eq!(ClassKind::parse(&k.to_string()).unwrap(), k);
        }
        assert!(ClassKind::parse("Q(1)").is_err());
    }

    #[test]
    fn classify_recovers_every_class() {
        for m in 4..=6 {
            for c in 2..=4 {
                let mut kinds = vec![ClassKind::TE, ClassKind::B];
                kinds.extend((2..=m).map(ClassKind::G));
                for p in 0..m {
                    for q in 0..=c {
                        if p + q < m + c {
                            kinds.push(ClassKind::H(p, q));
                        }
                    }
                }
                for kind in kinds {
                    let alg = build_class(kind, m, c, false).unwrap();
                    let got = classify(&alg);
                    assert!(
                        got.kind.same_class(&kind),
                        "{kind} m={m} c={c} classified as {}",
                        got.kind
                    );
                    assert_eq!((got.m, got.c), (m, c));
                }
            }
        }
    }

    #[test]
    fn exterior_algebra_on_three_generators_is_not_te() {
        let e = super::super::tests::exterior(Field::Rational, 3);
        assert_eq!(classify(&e).kind, ClassKind::Unclassified);
    }
}
