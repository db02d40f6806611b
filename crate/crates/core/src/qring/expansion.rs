use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{FlagShape, PartitionTuple, QMonomial};
use crate::permutations::{permutation_to_tuple, Permutation};

/// A finitely supported map from basis keys to polynomials in `q`.
///
/// The q-polynomials are stored as maps from exponent vectors to integers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Expansion<K: Ord> {
    terms: BTreeMap<K, BTreeMap<Vec<usize>, BigInt>>,
}

pub type SchubertExpansion = Expansion<Permutation>;
pub type ProductExpansion = Expansion<PartitionTuple>;

impl<K: Ord + Clone> Expansion<K> {
    pub fn new() -> Self {
        Expansion { terms: BTreeMap::new() }
    }

    pub fn single(key: K, q: Vec<usize>, c: BigInt) -> Self {
        let mut e = Expansion::new();
        e.add_term(key, q, c);
        e
    }

    pub fn add_term(&mut self, key: K, q: Vec<usize>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let inner = self.terms.entry(key.clone()).or_default();
        let entry = inner.entry(q.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            inner.remove(&q);
            if inner.is_empty() {
                self.terms.remove(&key);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<K, BTreeMap<Vec<usize>, BigInt>> {
        &self.terms
    }

    /// Flat `(key, q-exponents, coefficient)` list.
    pub fn flat(&self) -> Vec<(K, Vec<usize>, BigInt)> {
        let mut out = Vec::new();
        for (k, inner) in &self.terms {
            for (q, c) in inner {
                out.push((k.clone(), q.clone(), c.clone()));
            }
        }
        out
    }

    pub fn coefficient(&self, key: &K, q: &[usize]) -> BigInt {
        self.terms.get(key).and_then(|m| m.get(q)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|m| m.values().all(|c| !c.is_negative()))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, q, c) in o.flat() {
            r.add_term(k, q, -c);
        }
        r
    }
}

fn q_string(q: &[usize]) -> String {
    QMonomial(q.to_vec()).to_string()
}

fn term_string(c: &BigInt, q: &[usize], key: &str, first: bool) -> String {
    let mut s = String::new();
    let neg = c.is_negative();
    if !first {
        s.push_str(if neg { " + -" } else { " + " });
    } else if neg {
        s.push('-');
    }
    let mag = c.abs();
    let qs = q_string(q);
    let mut factors = Vec::new();
    if !mag.is_one() {
        factors.push(mag.to_string());
    }
    if qs != "1" {
        factors.push(qs);
    }
    factors.push(key.to_string());
    s.push_str(&factors.join("*"));
    s
}

impl fmt::Display for SchubertExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, q, c)) in self.flat().iter().enumerate() {
            write!(f, "{}", term_string(c, q, &format!("s{}", w), i == 0))?;
        }
        Ok(())
    }
}

impl fmt::Display for ProductExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (t, q, c)) in self.flat().iter().enumerate() {
            write!(f, "{}", term_string(c, q, &format!("p{}", t), i == 0))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionRecord {
    pub permutation: Vec<usize>,
    pub tuple: Vec<Vec<usize>>,
    pub q: Vec<usize>,
    pub coefficient: String,
}

impl SchubertExpansion {
    /// JSON-ready records ordered by (degree, permutation).
    pub fn records(&self, shape: &FlagShape) -> Vec<ExpansionRecord> {
        let mut flat = self.flat();
        flat.sort_by_key(|(w, q, _)| {
            let qd: usize = q.iter().enumerate().map(|(l, e)| e * shape.q_degree(l + 1)).sum();
            (w.length() + qd, w.clone(), q.clone())
        });
        flat.into_iter()
            .map(|(w, q, c)| ExpansionRecord {
                tuple: permutation_to_tuple(shape, &w)
                    .map(|t| t.entries().iter().map(|p| p.parts().to_vec()).collect())
                    .unwrap_or_default(),
                permutation: w.one_line().to_vec(),
                q,
                coefficient: c.to_string(),
            })
            .collect()
    }

    pub fn from_records(recs: &[ExpansionRecord]) -> Option<Self> {
        let mut e = SchubertExpansion::new();
        for r in recs {
            let w = Permutation::new(r.permutation.clone()).ok()?;
            let c: BigInt = r.coefficient.parse().ok()?;
            e.add_term(w, r.q.clone(), c);
        }
        Some(e)
    }
}
