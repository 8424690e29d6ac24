//! JSON specifications for rings, modules, skew algebras and matrix
//! factorizations.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gallery::{generate, ExampleDescriptor, Instance};
use crate::homology::complex::PolyMatrix;
use crate::hypersurface::MatrixFactorization;
use crate::module::FModule;
use crate::poly::{monomial_name, MultiPoly};
use crate::ring::FiniteCommutativeAlgebra;
use crate::scalar::{Field, Scalar};
use crate::skew::{build_class, BasisElement, ClassKind, GradedSkewAlgebra};
use crate::sparse::SparseVec;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field_of(v: &Value) -> Result<Field> {
    match v.get("field") {
        None => Ok(Field::Rational),
        Some(Value::String(s)) => Field::parse(s),
        Some(other) => Err(parse_err(format!("field must be a string, got {other}"))),
    }
}

fn scalar_of(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => field.parse_scalar(&n.to_string()),
        Value::String(s) => field.parse_scalar(s),
        other => Err(parse_err(format!("expected a coefficient, got {other}"))),
    }
}

fn usize_of(v: &Value, key: &str) -> Result<usize> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("missing or non-integer key {key:?}")))
}

fn str_of<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    v.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err(format!("missing or non-string key {key:?}")))
}

fn strings_of(v: &Value, key: &str) -> Result<Vec<String>> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err(format!("missing array {key:?}")))?
        .iter()
        .map(|s| {
            s.as_str()
                .map(str::to_string)
                .ok_or_else(|| parse_err(format!("{key:?} must hold strings")))
        })
        .collect()
}

/// A parsed ring together with whether its names are standard monomials of
/// a monomial quotient (so that polynomial strings can be read into it).
#[derive(Clone, Debug)]
pub struct RingInput {
    pub algebra: Arc<FiniteCommutativeAlgebra>,
    pub monomial_vars: Option<usize>,
}

/// `{"field", "kind": "monomial_quotient" | "table" | "trivial_extension", …}`
/// or a gallery descriptor `{"family": …}`.
pub fn parse_ring(v: &Value) -> Result<RingInput> {
    if v.get("family").is_some() {
        let desc: ExampleDescriptor = serde_json::from_value(v.clone())?;
        let g = generate(field_of(v)?, &desc)?;
        return match g.instance {
            Instance::Ring { algebra, .. } => Ok(RingInput {
                monomial_vars: None,
                algebra,
            }),
            Instance::Skew(_) => Err(parse_err(format!("{} is not a ring family", desc.tag()))),
        };
    }
    let field = field_of(v)?;
    match str_of(v, "kind")? {
        "monomial_quotient" => {
            let vars = usize_of(v, "vars")?;
            let ideal = FiniteCommutativeAlgebra::parse_monomials(vars, &strings_of(v, "ideal")?)?;
            Ok(RingInput {
                algebra: Arc::new(FiniteCommutativeAlgebra::from_monomial_ideal(
                    field, vars, &ideal,
                )?),
                monomial_vars: Some(vars),
            })
        }
        "table" => {
            let names = strings_of(v, "basis")?;
            let n = names.len();
            let index = |s: &str| -> Result<usize> {
                names
                    .iter()
                    .position(|x| x == s)
                    .ok_or_else(|| parse_err(format!("unknown basis name {s:?}")))
            };
            if names.first().map(String::as_str) != Some("1") {
                return Err(parse_err("the first basis element must be \"1\""));
            }
            let mut table = vec![SparseVec::zero(); n * n];
            for i in 0..n {
                table[i] = SparseVec::unit(i, field);
                table[i * n] = SparseVec::unit(i, field);
            }
            let t = v
                .get("table")
                .and_then(Value::as_object)
                .ok_or_else(|| parse_err("missing object \"table\""))?;
            for (a, row) in t {
                let row = row
                    .as_object()
                    .ok_or_else(|| parse_err("table rows are objects"))?;
                for (b, value) in row {
                    let terms = value.as_object().ok_or_else(|| {
                        parse_err("table entries are {name: coefficient} objects")
                    })?;
                    let mut entries = Vec::new();
                    for (c, coeff) in terms {
                        entries.push((index(c)?, scalar_of(field, coeff)?));
                    }
                    let prod = SparseVec::from_entries(entries);
                    let (i, j) = (index(a)?, index(b)?);
                    table[i * n + j] = prod.clone();
                    table[j * n + i] = prod;
                }
            }
            let generators = match v.get("generators") {
                None => None,
                Some(_) => Some(
                    strings_of(v, "generators")?
                        .iter()
                        .map(|g| index(g))
                        .collect::<Result<Vec<_>>>()?,
                ),
            };
            let grading = match v.get("grading") {
                None => None,
                Some(g) => Some(serde_json::from_value::<Vec<u32>>(g.clone())?),
            };
            Ok(RingInput {
                algebra: Arc::new(FiniteCommutativeAlgebra::from_table(
                    field, names, table, generators, grading,
                )?),
                monomial_vars: None,
            })
        }
        "trivial_extension" => {
            let base = parse_ring(v.get("base").ok_or_else(|| parse_err("missing \"base\""))?)?;
            let r = usize_of(v, "r")?;
            Ok(RingInput {
                algebra: Arc::new(base.algebra.trivial_extension(r)?),
                monomial_vars: None,
            })
        }
        other => Err(parse_err(format!("unknown ring kind {other:?}"))),
    }
}

/// Element given as `{"name": coeff}` or, over a monomial quotient, as a
/// polynomial string such as `"x1 - 2*x1*x2"`.
pub fn parse_element(ring: &RingInput, v: &Value) -> Result<SparseVec> {
    let alg = &ring.algebra;
    let field = alg.field();
    match v {
        Value::Object(terms) => {
            let mut entries = Vec::new();
            for (name, c) in terms {
                let i = alg
                    .index_of(name)
                    .ok_or_else(|| parse_err(format!("unknown basis name {name:?}")))?;
                entries.push((i, scalar_of(field, c)?));
            }
            Ok(SparseVec::from_entries(entries))
        }
        Value::String(s) => {
            if let Some(i) = alg.index_of(s.trim()) {
                return Ok(SparseVec::unit(i, field));
            }
            let vars = ring
                .monomial_vars
                .ok_or_else(|| parse_err(format!("{s:?} is not a basis name of a table ring")))?;
            let p = MultiPoly::parse(field, vars, s)?;
            let mut entries = Vec::new();
            for (e, c) in p.terms() {
                let name = if e.iter().all(|&a| a == 0) {
                    "1".to_string()
                } else {
                    monomial_name(e)
                };
                // monomials outside the basis lie in the ideal
                if let Some(i) = alg.index_of(&name) {
                    entries.push((i, c.clone()));
                }
            }
            Ok(SparseVec::from_entries(entries))
        }
        Value::Number(_) => Ok(SparseVec::from_entries(vec![(0, scalar_of(field, v)?)])),
        other => Err(parse_err(format!("cannot read an element from {other}"))),
    }
}

/// `"k" | "m" | "A" | "omega"`, `{"free": r}` or
/// `{"cokernel": {"rows": g, "columns": [[…], …]}}`.
pub fn parse_module(ring: &RingInput, v: &Value) -> Result<FModule> {
    let alg = ring.algebra.clone();
    match v {
        Value::String(s) => match s.as_str() {
            "k" => Ok(FModule::residue_field(alg)),
            "m" => FModule::maximal_ideal(alg),
            "A" => FModule::free(alg, 1),
            "omega" => Ok(FModule::free(alg, 1)?.matlis_dual()),
            other => Err(parse_err(format!("unknown module name {other:?}"))),
        },
        Value::Object(o) => {
            if let Some(r) = o.get("free") {
                let r = r
                    .as_u64()
                    .ok_or_else(|| parse_err("\"free\" takes a rank"))?;
                return FModule::free(alg, r as usize);
            }
            if let Some(d) = o.get("dual") {
                return Ok(parse_module(ring, d)?.matlis_dual());
            }
            let c = o.get("cokernel").ok_or_else(|| {
                parse_err("module objects are {\"free\"}, {\"dual\"} or {\"cokernel\"}")
            })?;
            let rows = usize_of(c, "rows")?;
            let columns = c
                .get("columns")
                .and_then(Value::as_array)
                .ok_or_else(|| parse_err("cokernel needs \"columns\""))?
                .iter()
                .map(|col| {
                    col.as_array()
                        .ok_or_else(|| parse_err("each column is an array"))?
                        .iter()
                        .map(|e| parse_element(ring, e))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            FModule::cokernel(alg, rows, &columns)
        }
        other => Err(parse_err(format!("cannot read a module from {other}"))),
    }
}

/// A ring spec with optional `"module"` and `"module2"` keys (default `k`).
pub fn parse_workload(v: &Value) -> Result<(RingInput, FModule, FModule)> {
    let ring = parse_ring(v)?;
    let k = json!("k");
    let m = parse_module(&ring, v.get("module").unwrap_or(&k))?;
    let n = parse_module(&ring, v.get("module2").unwrap_or(&k))?;
    Ok((ring, m, n))
}

/// `{"basis":[{"name","degree"}], "products":[["e1","e2","f3",coeff]],
/// "differential":[["x","y",coeff]]}`, a class `{"class","m","c"}`, or a
/// gallery descriptor for a skew family.
pub fn parse_skew(v: &Value) -> Result<GradedSkewAlgebra> {
    if let Some(class) = v.get("class").and_then(Value::as_str) {
        let relax = v
            .get("relax_bounds")
            .and_then(Value::as_bool)
            .unwrap_or(false);
        return build_class(
            ClassKind::parse(class)?,
            usize_of(v, "m")?,
            usize_of(v, "c")?,
            relax,
        );
    }
    if v.get("family").is_some() {
        let desc: ExampleDescriptor = serde_json::from_value(v.clone())?;
        return match generate(field_of(v)?, &desc)?.instance {
            Instance::Skew(s) => Ok(s),
            Instance::Ring { .. } => Err(parse_err(format!("{} is a ring family", desc.tag()))),
        };
    }
    let field = field_of(v)?;
    #[derive(serde::Deserialize)]
    struct B {
        name: String,
        degree: u32,
    }
    let listed: Vec<B> = serde_json::from_value(
        v.get("basis")
            .cloned()
            .ok_or_else(|| parse_err("missing \"basis\""))?,
    )?;
    let mut basis = Vec::new();
    if listed.first().map(|b| (b.name.as_str(), b.degree)) != Some(("1", 0)) {
        basis.push(BasisElement {
            name: "1".into(),
            degree: 0,
        });
    }
    basis.extend(listed.into_iter().map(|b| BasisElement {
        name: b.name,
        degree: b.degree,
    }));
    let index = |s: &Value| -> Result<usize> {
        let s = s
            .as_str()
            .ok_or_else(|| parse_err("basis references are strings"))?;
        basis
            .iter()
            .position(|b| b.name == s)
            .ok_or_else(|| parse_err(format!("unknown basis name {s:?}")))
    };
    let mut products = Vec::new();
    for p in v
        .get("products")
        .and_then(Value::as_array)
        .map(Vec::as_slice)
        .unwrap_or(&[])
    {
        let p = p
            .as_array()
            .ok_or_else(|| parse_err("products are [x, y, z, coeff] arrays"))?;
        if p.len() != 3 && p.len() != 4 {
            return Err(parse_err("products are [x, y, z, coeff] arrays"));
        }
        let c = match p.get(3) {
            Some(c) => scalar_of(field, c)?,
            None => field.one(),
        };
        products.push((
            index(&p[0])?,
            index(&p[1])?,
            SparseVec::from_entries(vec![(index(&p[2])?, c)]),
        ));
    }
    // merge repeated (x, y) pairs into one product
    let mut merged: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for (i, j, w) in products {
        let e = merged.entry((i, j)).or_insert_with(SparseVec::zero);
        *e = e.add(&w, field);
    }
    let products: Vec<(usize, usize, SparseVec)> =
        merged.into_iter().map(|((i, j), w)| (i, j, w)).collect();
    let differential = match v.get("differential") {
        None | Some(Value::Null) => None,
        Some(Value::Array(rows)) => {
            let mut d = vec![SparseVec::zero(); basis.len()];
            for r in rows {
                let r = r
                    .as_array()
                    .ok_or_else(|| parse_err("differential rows are [x, y, coeff]"))?;
                if r.len() != 3 {
                    return Err(parse_err("differential rows are [x, y, coeff]"));
                }
                let (i, j) = (index(&r[0])?, index(&r[1])?);
                d[i] = d[i].add(
                    &SparseVec::from_entries(vec![(j, scalar_of(field, &r[2])?)]),
                    field,
                );
            }
            Some(d)
        }
        Some(other) => return Err(parse_err(format!("bad differential {other}"))),
    };
    GradedSkewAlgebra::from_products(field, basis, &products, differential)
}

/// `{"field","vars","f","phi":[[…]],"psi":[[…]]}` with polynomial strings.
pub fn parse_mf(v: &Value) -> Result<MatrixFactorization> {
    let field = field_of(v)?;
    let vars = usize_of(v, "vars")?;
    let f = MultiPoly::parse(field, vars, str_of(v, "f")?)?;
    let matrix = |key: &str| -> Result<PolyMatrix> {
        let rows = v
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err(format!("missing matrix {key:?}")))?;
        let rows = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| parse_err(format!("{key:?} rows are arrays")))?
                    .iter()
                    .map(|e| match e {
                        Value::String(s) => MultiPoly::parse(field, vars, s),
                        Value::Number(_) => {
                            Ok(MultiPoly::constant(field, vars, scalar_of(field, e)?))
                        }
                        other => Err(parse_err(format!("bad matrix entry {other}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(rows)
    };
    MatrixFactorization::new(f, matrix("phi")?, matrix("psi")?)
}

#[derive(Serialize)]
struct TableSpec {
    field: String,
    kind: &'static str,
    basis: Vec<String>,
    generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grading: Option<Vec<u32>>,
    table: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>,
}

/// Table-kind ring spec; only nonzero products of positive basis elements
/// are listed.
pub fn ring_spec(alg: &FiniteCommutativeAlgebra) -> Value {
    let n = alg.dim();
    let mut table: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>> = BTreeMap::new();
    for i in 1..n {
        for j in i..n {
            let p = alg.mul_basis(i, j);
            if p.is_zero() {
                continue;
            }
            let terms = p
                .iter()
                .map(|(k, c)| (alg.name(*k).to_string(), c.to_string()))
                .collect();
            table
                .entry(alg.name(i).to_string())
                .or_default()
                .insert(alg.name(j).to_string(), terms);
        }
    }
    serde_json::to_value(TableSpec {
        field: alg.field().tag(),
        kind: "table",
        basis: alg.names().to_vec(),
        generators: alg
            .generators()
            .iter()
            .map(|&g| alg.name(g).to_string())
            .collect(),
        grading: alg.grading().map(<[u32]>::to_vec),
        table,
    })
    .expect("plain data")
}

#[derive(Serialize)]
struct SkewSpec {
    field: String,
    basis: Vec<Value>,
    products: Vec<(String, String, String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    differential: Option<Vec<(String, String, String)>>,
}

pub fn skew_spec(alg: &GradedSkewAlgebra) -> Value {
    let n = alg.dim();
    let mut products = Vec::new();
    for i in 1..n {
        for j in i..n {
            for (k, c) in alg.mul_basis(i, j).iter() {
                products.push((
                    alg.name(i).to_string(),
                    alg.name(j).to_string(),
                    alg.name(*k).to_string(),
                    c.to_string(),
                ));
            }
        }
    }
    let differential = alg.has_nonzero_differential().then(|| {
        (0..n)
            .flat_map(|i| {
                alg.apply_d(&SparseVec::unit(i, alg.field()))
                    .iter()
                    .map(|(k, c)| {
                        (
                            alg.name(i).to_string(),
                            alg.name(*k).to_string(),
                            c.to_string(),
                        )
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    });
    serde_json::to_value(SkewSpec {
        field: alg.field().tag(),
        basis: alg
            .basis()
            .iter()
            .map(|b| json!({"name": b.name, "degree": b.degree}))
            .collect(),
        products,
        differential,
    })
    .expect("plain data")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::ExampleDescriptor;

    #[test]
    fn monomial_ring_and_cokernel() {
        let v = json!({"field": "Q", "kind": "monomial_quotient", "vars": 2, "ideal": ["x1^2", "x1*x2", "x2^2"],
                       "module": {"cokernel": {"rows": 1, "columns": [["x1"]]}}});
        let (ring, m, n) = parse_workload(&v).unwrap();
        assert_eq!(ring.algebra.dim(), 3);
        assert_eq!(m.dim(), 2);
        assert_eq!(n.dim(), 1);
    }

    #[test]
    fn polynomial_strings_drop_ideal_monomials() {
        let v = json!({"kind": "monomial_quotient", "vars": 2, "ideal": ["x1^2", "x2^2"]});
        let ring = parse_ring(&v).unwrap();
        let e = parse_element(&ring, &json!("x1 + 3*x1^2 - x1*x2")).unwrap();
        assert_eq!(
            ring.algebra.format_element(&e),
            ring.algebra
                .format_element(&parse_element(&ring, &json!({"x1": 1, "x1*x2": -1})).unwrap())
        );
    }

    #[test]
    fn table_round_trip() {
        let g = generate(Field::Rational, &ExampleDescriptor::HandTable).unwrap();
        let a = g.ring().unwrap();
        let spec = ring_spec(a);
        let back = parse_ring(&spec).unwrap();
        assert_eq!(*back.algebra, **a);
    }

    #[test]
    fn trivial_extension_spec() {
        let v = json!({"kind": "trivial_extension", "r": 2,
                       "base": {"kind": "monomial_quotient", "vars": 1, "ideal": ["x1^2"]}});
        assert_eq!(parse_ring(&v).unwrap().algebra.dim(), 4);
    }

    #[test]
    fn skew_round_trip() {
        let s = build_class(ClassKind::TE, 4, 2, false).unwrap();
        let back = parse_skew(&skew_spec(&s)).unwrap();
        assert_eq!(back.dim(), s.dim());
        assert_eq!(back.product_list(), s.product_list());
    }

    #[test]
    fn skew_spec_inserts_unit() {
        let v = json!({"basis": [{"name": "e1", "degree": 1}, {"name": "e2", "degree": 1}, {"name": "f", "degree": 2}],
                       "products": [["e1", "e2", "f", 1]]});
        let s = parse_skew(&v).unwrap();
        assert_eq!(s.name(0), "1");
        assert!(s.check_axioms().all_passed());
    }

    #[test]
    fn class_and_family_specs() {
        assert!(parse_skew(&json!({"class": "G(2)", "m": 4, "c": 2})).is_ok());
        assert!(parse_skew(&json!({"family": "DETERMINANTAL_AVATAR", "r": 3})).is_ok());
        assert!(parse_ring(&json!({"family": "POWER_OF_M", "e": 2, "s": 2})).is_ok());
        assert!(parse_ring(&json!({"family": "DETERMINANTAL_AVATAR", "r": 3})).is_err());
    }

    #[test]
    fn mf_spec() {
        let v = json!({"field": "Q", "vars": 2, "f": "x1^2 + x2^2",
                       "phi": [["x1", "x2"], ["-x2", "x1"]], "psi": [["x1", "-x2"], ["x2", "x1"]]});
        assert!(parse_mf(&v).unwrap().validate(2).unwrap().valid);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            parse_ring(&json!({"kind": "cube"})),
            Err(Error::Parse(_))
        ));
        assert!(parse_ring(
            &json!({"field": "Fp:4", "kind": "monomial_quotient", "vars": 1, "ideal": ["x1^2"]})
        )
        .is_err());
        let ring = parse_ring(&json!({"kind": "monomial_quotient", "vars": 1, "ideal": ["x1^2"]}))
            .unwrap();
        assert!(parse_module(&ring, &json!("q")).is_err());
    }
}
