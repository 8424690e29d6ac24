//! Example families: rings, skew algebras and seeded module corpora.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg32;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::koszul::KoszulComplex;
use crate::homology::ResolutionCache;
use crate::hypersurface::{truncated_line, MAX_HYPERSURFACE_EXPONENT};
use crate::module::FModule;
use crate::ring::FiniteCommutativeAlgebra;
use crate::scalar::Field;
use crate::skew::{build_class, BasisElement, ClassKind, GradedSkewAlgebra};
use crate::sparse::SparseVec;

pub const MAX_GALLERY_VARS: usize = 4;
pub const MAX_GALLERY_POWER: u32 = 4;
pub const MAX_CORPUS: usize = 16;
/// Betti index used to keep only modules of infinite projective dimension.
pub const CORPUS_FILTER_INDEX: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExampleDescriptor {
    /// `k[x_1..x_e]/m^s`.
    PowerOfM { e: usize, s: u32 },
    /// `k[x_1..x_e]/(x_1^d, …, x_e^d)^s`.
    PowerOfRegseq { e: usize, d: u32, s: u32 },
    /// `S ⋉ k^r`.
    TrivialExt {
        base: Box<ExampleDescriptor>,
        r: usize,
    },
    /// Multiplication class of a codimension-three Tor algebra.
    Codim3Class {
        class: String,
        m: usize,
        c: usize,
        #[serde(default)]
        relax_bounds: bool,
    },
    /// Reduced Tor algebra of a Hilbert–Burch resolution, ranks `(1, r, r−1)`.
    DeterminantalAvatar { r: usize },
    /// `k[x]/(x^n)`.
    Hypersurface { n: usize },
    /// `k[x,y,z,w]/(xy, x²−y², xz, xw, yz, yw, z², zw, w²)`: multiplicity
    /// six, type three, `m = (x, y) ⊕ kz ⊕ kw`.
    HandTable,
}

#[derive(Clone, Debug)]
pub enum Instance {
    Ring {
        algebra: Arc<FiniteCommutativeAlgebra>,
        /// `Some(true)` for families known to be Golod.
        golod: Option<bool>,
    },
    Skew(GradedSkewAlgebra),
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub descriptor: ExampleDescriptor,
    pub note: String,
    pub instance: Instance,
}

impl Generated {
    pub fn ring(&self) -> Option<&Arc<FiniteCommutativeAlgebra>> {
        match &self.instance {
            Instance::Ring { algebra, .. } => Some(algebra),
            Instance::Skew(_) => None,
        }
    }

    pub fn skew(&self) -> Option<&GradedSkewAlgebra> {
        match &self.instance {
            Instance::Skew(s) => Some(s),
            Instance::Ring { .. } => None,
        }
    }
}

impl ExampleDescriptor {
    pub fn tag(&self) -> &'static str {
        match self {
            ExampleDescriptor::PowerOfM { .. } => "POWER_OF_M",
            ExampleDescriptor::PowerOfRegseq { .. } => "POWER_OF_REGSEQ",
            ExampleDescriptor::TrivialExt { .. } => "TRIVIAL_EXT",
            ExampleDescriptor::Codim3Class { .. } => "CODIM3_CLASS",
            ExampleDescriptor::DeterminantalAvatar { .. } => "DETERMINANTAL_AVATAR",
            ExampleDescriptor::Hypersurface { .. } => "HYPERSURFACE",
            ExampleDescriptor::HandTable => "HAND_TABLE",
        }
    }

    /// Short human-readable label, e.g. `POWER_OF_M(2,2)`.
    pub fn label(&self) -> String {
        match self {
            ExampleDescriptor::PowerOfM { e, s } => format!("POWER_OF_M({e},{s})"),
            ExampleDescriptor::PowerOfRegseq { e, d, s } => format!("POWER_OF_REGSEQ({e},{d},{s})"),
            ExampleDescriptor::TrivialExt { base, r } => {
                format!("TRIVIAL_EXT({},{r})", base.label())
            }
            ExampleDescriptor::Codim3Class { class, m, c, .. } => {
                format!("CODIM3_CLASS({class},{m},{c})")
            }
            ExampleDescriptor::DeterminantalAvatar { r } => format!("DETERMINANTAL_AVATAR({r})"),
            ExampleDescriptor::Hypersurface { n } => format!("HYPERSURFACE({n})"),
            ExampleDescriptor::HandTable => "HAND_TABLE".into(),
        }
    }

    fn note(&self) -> String {
        match self {
            ExampleDescriptor::PowerOfM { .. } => "power of the maximal ideal; Golod".into(),
            ExampleDescriptor::PowerOfRegseq { .. } => {
                "power of the ideal of a regular sequence of pure powers; Golod".into()
            }
            ExampleDescriptor::TrivialExt { .. } => "trivial extension; m splits off k^r".into(),
            ExampleDescriptor::Codim3Class { .. } => "codimension-three Tor algebra class".into(),
            ExampleDescriptor::DeterminantalAvatar { .. } => {
                "maximal minors of a generic r-1 by r matrix, reduced mod the variables".into()
            }
            ExampleDescriptor::Hypersurface { .. } => "Artinian hypersurface".into(),
            ExampleDescriptor::HandTable => {
                "hand-built table: multiplicity = embdim + 2, type 3, m has two k summands".into()
            }
        }
    }
}

fn bound(what: &'static str, limit: usize, got: usize) -> Result<()> {
    if got > limit {
        return Err(Error::CapExceeded { what, limit, got });
    }
    Ok(())
}

fn power_of_m_ideal(e: usize, s: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; e];
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k + 1 == cur.len() {
            cur[k] = left;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[k] = a;
            rec(k + 1, left - a, cur, out);
        }
    }
    rec(0, s, &mut cur, &mut out);
    out
}

fn hand_table(field: Field) -> Result<FiniteCommutativeAlgebra> {
    let names: Vec<String> = ["1", "x", "y", "z", "w", "x^2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let n = names.len();
    let mut table = vec![SparseVec::zero(); n * n];
    for i in 0..n {
        table[i] = SparseVec::unit(i, field);
        table[i * n] = SparseVec::unit(i, field);
    }
    // x·x = y·y = x^2; every other product of positive-degree elements is zero
    table[n + 1] = SparseVec::unit(5, field);
    table[2 * n + 2] = SparseVec::unit(5, field);
    FiniteCommutativeAlgebra::from_table(
        field,
        names,
        table,
        Some(vec![1, 2, 3, 4]),
        Some(vec![0, 1, 1, 1, 1, 2]),
    )
}

pub fn generate(field: Field, desc: &ExampleDescriptor) -> Result<Generated> {
    let ring = |a: FiniteCommutativeAlgebra, golod: Option<bool>| Instance::Ring {
        algebra: Arc::new(a),
        golod,
    };
    let instance = match desc {
        ExampleDescriptor::PowerOfM { e, s } => {
            bound("variables", MAX_GALLERY_VARS, *e)?;
            bound("power", MAX_GALLERY_POWER as usize, *s as usize)?;
            if *e == 0 || *s < 2 {
                return Err(Error::PreconditionViolated("need e ≥ 1 and s ≥ 2".into()));
            }
            ring(
                FiniteCommutativeAlgebra::from_monomial_ideal(
                    field,
                    *e,
                    &power_of_m_ideal(*e, *s),
                )?,
                Some(true),
            )
        }
        ExampleDescriptor::PowerOfRegseq { e, d, s } => {
            bound("variables", MAX_GALLERY_VARS, *e)?;
            bound("power", MAX_GALLERY_POWER as usize, *s as usize)?;
            bound("power", MAX_GALLERY_POWER as usize, *d as usize)?;
            if *e == 0 || *d == 0 || *s < 2 {
                return Err(Error::PreconditionViolated(
                    "need e, d ≥ 1 and s ≥ 2".into(),
                ));
            }
            let ideal: Vec<Vec<u32>> = power_of_m_ideal(*e, *s)
                .into_iter()
                .map(|m| m.into_iter().map(|a| a * d).collect())
                .collect();
            ring(
                FiniteCommutativeAlgebra::from_monomial_ideal(field, *e, &ideal)?,
                Some(true),
            )
        }
        ExampleDescriptor::TrivialExt { base, r } => {
            bound("trivial extension rank", MAX_GALLERY_VARS, *r)?;
            if *r == 0 {
                return Err(Error::PreconditionViolated("need r ≥ 1".into()));
            }
            let base = generate(field, base)?;
            let s = base.ring().ok_or_else(|| {
                Error::PreconditionViolated("trivial extension of a ring family".into())
            })?;
            ring(s.trivial_extension(*r)?, None)
        }
        ExampleDescriptor::Codim3Class {
            class,
            m,
            c,
            relax_bounds,
        } => {
            bound("class rank m", 6, *m)?;
            bound("class type c", 4, *c)?;
            let kind = ClassKind::parse(class)?;
            let alg = build_class(kind, *m, *c, *relax_bounds)?;
            if field != alg.field() {
                return Err(Error::FieldMismatch(
                    "class tables are built over the rationals".into(),
                ));
            }
            Instance::Skew(alg)
        }
        ExampleDescriptor::DeterminantalAvatar { r } => {
            if *r != 3 {
                return Err(Error::PreconditionViolated(
                    "the determinantal avatar is built for r = 3".into(),
                ));
            }
            let mut basis = vec![BasisElement {
                name: "1".into(),
                degree: 0,
            }];
            basis.extend((1..=*r).map(|i| BasisElement {
                name: format!("e{i}"),
                degree: 1,
            }));
            basis.extend((1..*r).map(|i| BasisElement {
                name: format!("f{i}"),
                degree: 2,
            }));
            Instance::Skew(GradedSkewAlgebra::from_products(field, basis, &[], None)?)
        }
        ExampleDescriptor::Hypersurface { n } => {
            bound("hypersurface exponent", MAX_HYPERSURFACE_EXPONENT, *n)?;
            if *n < 2 {
                return Err(Error::PreconditionViolated("need n ≥ 2".into()));
            }
            Instance::Ring {
                algebra: truncated_line(field, *n)?,
                golod: Some(true),
            }
        }
        ExampleDescriptor::HandTable => ring(hand_table(field)?, None),
    };
    Ok(Generated {
        descriptor: desc.clone(),
        note: desc.note(),
        instance,
    })
}

/// Every family with its smallest documented parameters, plus the instances
/// used throughout the test suites.
pub fn standard_gallery() -> Vec<ExampleDescriptor> {
    use ExampleDescriptor::*;
    let mut out = vec![
        PowerOfM { e: 2, s: 2 },
        PowerOfM { e: 3, s: 2 },
        PowerOfM { e: 2, s: 3 },
        PowerOfRegseq { e: 2, d: 2, s: 2 },
        TrivialExt {
            base: Box::new(Hypersurface { n: 2 }),
            r: 2,
        },
        TrivialExt {
            base: Box::new(Hypersurface { n: 3 }),
            r: 1,
        },
        DeterminantalAvatar { r: 3 },
        Hypersurface { n: 4 },
        HandTable,
    ];
    for m in 4..=5 {
        for c in 2..=3 {
            for class in ["TE", "B", "G(2)", "H(1,1)", "H(0,0)"] {
                out.push(Codim3Class {
                    class: class.into(),
                    m,
                    c,
                    relax_bounds: false,
                });
            }
        }
    }
    out
}

/// Rings whose Koszul homology algebra satisfies the two-socle-element
/// condition, with the witness degrees `(a, b)`.
pub fn dagger_degrees(algebra: &FiniteCommutativeAlgebra) -> Result<Option<(u32, u32)>> {
    let h = KoszulComplex::new(algebra)?.homology_algebra()?;
    Ok(crate::skew::check_dagger(&h)?.map(|w| (w.degree_u, w.degree_v)))
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub module: FModule,
}

fn random_element_of_m<R: Rng>(alg: &FiniteCommutativeAlgebra, rng: &mut R) -> SparseVec {
    let f = alg.field();
    SparseVec::from_entries(
        (1..alg.dim())
            .map(|i| (i, f.from_i64(rng.gen_range(-2..=2))))
            .filter(|(_, c)| !c.is_zero())
            .collect(),
    )
}

/// `k`, `m`, `A`, then seeded random cokernels `A^g / (columns in m)` with
/// `β_12 > 0`, up to `count` entries in total.
pub fn corpus(
    algebra: &Arc<FiniteCommutativeAlgebra>,
    seed: u64,
    count: usize,
    cache: &ResolutionCache,
) -> Result<Vec<CorpusEntry>> {
    bound("corpus size", MAX_CORPUS, count)?;
    let mut out = vec![
        CorpusEntry {
            label: "k".into(),
            module: FModule::residue_field(algebra.clone()),
        },
        CorpusEntry {
            label: "m".into(),
            module: FModule::maximal_ideal(algebra.clone())?,
        },
        CorpusEntry {
            label: "A".into(),
            module: FModule::free(algebra.clone(), 1)?,
        },
    ];
    out.truncate(count);
    let mut rng = Pcg32::seed_from_u64(seed);
    let mut attempt = 0;
    while out.len() < count && attempt < 8 * MAX_CORPUS {
        attempt += 1;
        let g = rng.gen_range(1..=2usize);
        let r = rng.gen_range(1..=3usize);
        let columns: Vec<Vec<SparseVec>> = (0..r)
            .map(|_| {
                (0..g)
                    .map(|_| random_element_of_m(algebra, &mut rng))
                    .collect()
            })
            .collect();
        let module = FModule::cokernel(algebra.clone(), g, &columns)?;
        if module.dim() == 0 || out.iter().any(|e| e.module == module) {
            continue;
        }
        let res = cache.resolve(&module, CORPUS_FILTER_INDEX)?;
        if res.betti()[CORPUS_FILTER_INDEX] == 0 {
            continue;
        }
        out.push(CorpusEntry {
            label: format!("coker#{attempt}"),
            module,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skew::check_dagger;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn power_of_m_2_2() {
        let g = generate(q(), &ExampleDescriptor::PowerOfM { e: 2, s: 2 }).unwrap();
        match &g.instance {
            Instance::Ring { algebra, golod } => {
                assert_eq!(algebra.dim(), 3);
                assert_eq!(*golod, Some(true));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn regseq_power_dimension() {
        // (x², y²)² = (x⁴, x²y², y⁴): 16 monomials below x⁴, y⁴ minus the 4 divisible by x²y²
        let g = generate(q(), &ExampleDescriptor::PowerOfRegseq { e: 2, d: 2, s: 2 }).unwrap();
        assert_eq!(g.ring().unwrap().dim(), 12);
    }

    #[test]
    fn determinantal_avatar() {
        let g = generate(q(), &ExampleDescriptor::DeterminantalAvatar { r: 3 }).unwrap();
        let s = g.skew().unwrap();
        assert_eq!(s.indices_of_degree(1).len(), 3);
        assert_eq!(s.indices_of_degree(2).len(), 2);
        assert_eq!(s.square_dim(), 0);
        assert!(check_dagger(s).unwrap().is_some());
    }

    #[test]
    fn trivial_extension_of_dual_numbers() {
        let g = generate(
            q(),
            &ExampleDescriptor::TrivialExt {
                base: Box::new(ExampleDescriptor::Hypersurface { n: 2 }),
                r: 2,
            },
        )
        .unwrap();
        let a = g.ring().unwrap();
        assert_eq!(a.dim(), 4);
        // brute force: every element of m is killed by m, so m is k^3 and
        // the decomposition count is the full embedding dimension
        assert_eq!(a.decompose_maximal_ideal().0, 3);
    }

    #[test]
    fn hand_table_shape() {
        let g = generate(q(), &ExampleDescriptor::HandTable).unwrap();
        let a = g.ring().unwrap();
        assert_eq!(a.dim(), 6);
        assert_eq!(a.embedding_dim(), 4);
        assert_eq!(a.socle().len(), 3);
        assert!(a.decompose_maximal_ideal().0 >= 2);
    }

    #[test]
    fn bounds_enforced() {
        assert!(generate(q(), &ExampleDescriptor::PowerOfM { e: 5, s: 2 }).is_err());
        assert!(generate(q(), &ExampleDescriptor::PowerOfM { e: 2, s: 5 }).is_err());
        assert!(generate(q(), &ExampleDescriptor::DeterminantalAvatar { r: 4 }).is_err());
        assert!(generate(q(), &ExampleDescriptor::Hypersurface { n: 9 }).is_err());
    }

    #[test]
    fn standard_gallery_generates() {
        for d in standard_gallery() {
            generate(q(), &d).unwrap_or_else(|e| panic!("{}: {e}", d.label()));
        }
    }

    #[test]
    fn descriptor_json_round_trip() {
        let d = ExampleDescriptor::TrivialExt {
            base: Box::new(ExampleDescriptor::Hypersurface { n: 2 }),
            r: 2,
        };
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"{"family":"TRIVIAL_EXT","base":{"family":"HYPERSURFACE","n":2},"r":2}"#
        );
        assert_eq!(serde_json::from_str::<ExampleDescriptor>(&s).unwrap(), d);
    }

    #[test]
    fn dagger_degrees_of_golod_rings() {
        let g = generate(q(), &ExampleDescriptor::PowerOfM { e: 2, s: 2 }).unwrap();
        assert_eq!(dagger_degrees(g.ring().unwrap()).unwrap(), Some((1, 1)));
        let h = generate(q(), &ExampleDescriptor::Hypersurface { n: 3 }).unwrap();
        assert_eq!(dagger_degrees(h.ring().unwrap()).unwrap(), None);
    }

    #[test]
    fn corpus_is_deterministic_and_contains_k() {
        let g = generate(q(), &ExampleDescriptor::PowerOfM { e: 2, s: 2 }).unwrap();
        let a = g.ring().unwrap();
        let cache = ResolutionCache::new();
        let c1 = corpus(a, 0, 6, &cache).unwrap();
        let c2 = corpus(a, 0, 6, &ResolutionCache::new()).unwrap();
        assert_eq!(c1.len(), 6);
        assert_eq!(c1[0].label, "k");
        let labels1: Vec<_> = c1.iter().map(|e| e.label.clone()).collect();
        let labels2: Vec<_> = c2.iter().map(|e| e.label.clone()).collect();
        assert_eq!(labels1, labels2);
        for e in &c1[3..] {
            assert!(cache.resolve(&e.module, 12).unwrap().betti()[12] > 0);
        }
    }
}
