//! Multivariate polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Exponent, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        MultiPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> Self {
        Self::monomial(field, nvars, vec![0; nvars], c)
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(field, nvars, e, field.one())
    }

    pub fn monomial(field: Field, nvars: usize, exp: Exponent, c: Scalar) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        MultiPoly {
            field,
            nvars,
            terms,
        }
    }

    pub fn from_terms(field: Field, nvars: usize, terms: Vec<(Exponent, Scalar)>) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent of length {} in {nvars} variables",
                    e.len()
                )));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch("polynomial coefficient".into()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(acc) => {
                *acc = &*acc + &c;
                if acc.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
    pub fn coefficient(&self, e: &[u32]) -> Option<&Scalar> {
        self.terms.get(e)
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Total degree of each term, if all agree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max()
    }

    fn check(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch("polynomial arithmetic".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-&self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        let mut out = Self::zero(self.field, self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = Self::zero(self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = Self::one(self.field, self.nvars);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Sets the listed variables to zero, dropping vanished terms.
    pub fn substitute_zero(&self, vars: &[usize]) -> MultiPoly {
        let mut out = Self::zero(self.field, self.nvars);
        for (e, c) in &self.terms {
            if vars.iter().all(|&v| e[v] == 0) {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Parses sums of terms such as `3*x1^2*x2 - 1/2*x3 + 7`.
    pub fn parse(field: Field, nvars: usize, text: &str) -> Result<MultiPoly> {
        let mut out = Self::zero(field, nvars);
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut pieces = Vec::new();
        let mut cur = String::new();
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {text:?}")));
            }
            let mut coeff = field.from_i64(sign);
            let mut exp = vec![0u32; nvars];
            for factor in body.split('*') {
                if factor.starts_with('x') {
                    let (idx, power) = parse_power(factor)?;
                    if idx == 0 || idx > nvars {
                        return Err(Error::Parse(format!(
                            "variable {factor:?} outside x1..x{nvars}"
                        )));
                    }
                    exp[idx - 1] += power;
                } else {
                    coeff = &coeff * &field.parse_scalar(factor)?;
                }
            }
            out.add_term(exp, coeff);
        }
        Ok(out)
    }

    /// Terms sorted by graded-lexicographic order, largest first.
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &Scalar)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| grlex_cmp(b, a));
        terms
    }
}

/// Graded lexicographic comparison with `x1 > x2 > ...`.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Parses `x<i>` or `x<i>^<e>`.
pub fn parse_power(factor: &str) -> Result<(usize, u32)> {
    let bad = || Error::Parse(format!("bad monomial factor {factor:?}"));
    let body = factor.strip_prefix('x').ok_or_else(bad)?;
    let (idx, pow) = match body.split_once('^') {
        Some((i, p)) => (i, p.parse::<u32>().map_err(|_| bad())?),
        None => (body, 1),
    };
    Ok((idx.parse::<usize>().map_err(|_| bad())?, pow))
}

/// Renders an exponent vector as `x1^2*x3`, or `1` for the empty monomial.
pub fn monomial_name(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0)
        .map(|(i, &p)| {
            if p == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, p)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.sorted_terms() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, text),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = monomial_name(e);
            match (mono.as_str(), mag.as_str()) {
                ("1", m) => f.write_str(m)?,
                (mono, "1") => f.write_str(mono)?,
                (mono, m) => write!(f, "{m}*{mono}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn difference_of_squares() {
        let x = MultiPoly::var(q(), 2, 0);
        let y = MultiPoly::var(q(), 2, 1);
        let p = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        assert_eq!(p, MultiPoly::parse(q(), 2, "x1^2 - x2^2").unwrap());
        assert_eq!(p.to_string(), "x1^2 - x2^2");
    }

    #[test]
    fn substitute_zero_drops_terms() {
        let p = MultiPoly::parse(q(), 2, "x1^2 + x1*x2 + x2^2").unwrap();
        assert_eq!(
            p.substitute_zero(&[0]),
            MultiPoly::parse(q(), 2, "x2^2").unwrap()
        );
    }

    #[test]
    fn frobenius_over_f2() {
        // expand (x+y)^2 = x^2 + 2xy + y^2 and reduce 2 = 0
        let f2 = Field::Prime(2);
        let s = MultiPoly::parse(f2, 2, "x1 + x2").unwrap();
        assert_eq!(s.pow(2), MultiPoly::parse(f2, 2, "x1^2 + x2^2").unwrap());
    }

    #[test]
    fn parse_coefficients_and_errors() {
        let p = MultiPoly::parse(q(), 3, "-1/2*x3 + 3*x1^2*x2 + 7").unwrap();
        assert_eq!(p.to_string(), "3*x1^2*x2 - 1/2*x3 + 7");
        assert!(MultiPoly::parse(q(), 2, "x3").is_err());
        assert!(MultiPoly::parse(q(), 2, "x1 +").is_err());
    }

    #[test]
    fn mismatched_rings() {
        let a = MultiPoly::var(q(), 2, 0);
        let b = MultiPoly::var(q(), 3, 0);
        assert!(a.mul(&b).is_err());
        let c = MultiPoly::var(Field::Prime(3), 2, 0);
        assert!(matches!(a.add(&c), Err(Error::FieldMismatch(_))));
    }
}
