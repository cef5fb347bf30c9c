//! Kohnert polynomials: the generating function of `KD(D)` by row counts.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::Result;
use crate::poset::{kd_closure, KohnertPoset};
use crate::Limits;

/// Exponent vector: entry `r - 1` is the number of cells in row `r`, with
/// trailing zeros removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| match e {
                1 => format!("x{}", i + 1),
                _ => format!("x{}^{e}", i + 1),
            })
            .collect();
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join(" "))
        }
    }
}

pub fn monomial_of(d: &Diagram) -> Monomial {
    Monomial::new(d.row_counts().iter().map(|&n| n as u32).collect())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, u64>,
}

#[derive(Serialize, Deserialize)]
struct Term {
    exponents: Monomial,
    coefficient: u64,
}

impl Polynomial {
    pub fn new() -> Self {
        Polynomial::default()
    }

    pub fn add_term(&mut self, m: Monomial, coefficient: u64) {
        if coefficient > 0 {
            *self.terms.entry(m).or_insert(0) += coefficient;
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, u64)>>(terms: I) -> Self {
        let mut p = Polynomial::new();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient_sum(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.terms.values().all(|&c| c == 1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("terms serialize")
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(m, &c)| Term {
                exponents: m.clone(),
                coefficient: c,
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(d)?;
        Ok(Polynomial::from_terms(terms.into_iter().map(|t| (t.exponents, t.coefficient))))
    }
}

/// Terms in lexicographic order of exponent vectors, as
/// `c * x1^e1 x2^e2 ...` joined by ` + `. Unit coefficients are omitted.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(m, &c)| match c {
                1 => m.to_string(),
                _ => format!("{c} * {m}"),
            })
            .collect();
        f.write_str(&rendered.join(" + "))
    }
}

pub fn polynomial_of_poset(p: &KohnertPoset) -> Polynomial {
    Polynomial::from_terms(p.nodes().iter().map(|d| (monomial_of(d), 1)))
}

pub fn kohnert_polynomial(d0: &Diagram, limits: &Limits) -> Result<Polynomial> {
    Ok(polynomial_of_poset(&kd_closure(d0, limits)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(pairs: &[(u32, u32)]) -> Diagram {
        Diagram::from_pairs(pairs).unwrap()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn monomials() {
        assert_eq!(monomial_of(&d(&[(1, 3), (2, 1), (2, 2), (3, 2)])), m(&[1, 2, 1]));
        assert_eq!(monomial_of(&Diagram::new()), m(&[]));
        assert_eq!(monomial_of(&d(&[(1, 1), (1, 2), (1, 3)])), m(&[3]));
        assert_eq!(m(&[0, 1, 0, 0]).exponents(), &[0, 1]);
    }

    #[test]
    fn figure_two_polynomial() {
        let p = kohnert_polynomial(&d(&[(1, 3), (2, 1), (2, 2), (3, 2)]), &Limits::default()).unwrap();
        let expected = Polynomial::from_terms(
            [&[1, 2, 1][..], &[2, 1, 1], &[3, 0, 1], &[2, 2], &[3, 1]].map(|e| (m(e), 1)),
        );
        assert_eq!(p, expected);
        assert!(p.is_multiplicity_free());
        assert!(p.terms().all(|(mono, _)| mono.degree() == 4));
    }

    #[test]
    fn small_polynomials() {
        let p = kohnert_polynomial(&d(&[(1, 1)]), &Limits::default()).unwrap();
        assert_eq!(p.to_string(), "x1");
        let p = kohnert_polynomial(&d(&[(2, 1)]), &Limits::default()).unwrap();
        assert_eq!(p, Polynomial::from_terms([(m(&[0, 1]), 1), (m(&[1]), 1)]));
        assert_eq!(p.to_string(), "x2 + x1");
        let empty = kohnert_polynomial(&Diagram::new(), &Limits::default()).unwrap();
        assert_eq!(empty.to_string(), "1");
        assert!(empty.is_multiplicity_free());
    }

    #[test]
    fn rendering_and_json() {
        let p = Polynomial::from_terms([(m(&[2]), 2), (m(&[0, 1, 3]), 1)]);
        assert!(!p.is_multiplicity_free());
        assert_eq!(p.to_string(), "x2 x3^3 + 2 * x1^2");
        assert_eq!(Polynomial::new().to_string(), "0");
        let json = p.to_json();
        assert_eq!(json[0]["exponents"], serde_json::json!([0, 1, 3]));
        let back: Polynomial = serde_json::from_value(json).unwrap();
        assert_eq!(back, p);
    }
}
