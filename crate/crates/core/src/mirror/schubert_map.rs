//! The Schubert map from rectangle Plücker symbols to the localized quantum cohomology ring.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::expr::{Laurent, Symbol};
use super::pluecker::ChartExpansion;
use super::quiver::{LadderQuiver, VertexKind};
use crate::combinatorics::{FlagShape, Partition, PartitionTuple};
use crate::error::{Error, Result};
use crate::permutations::tuple_to_permutation;
use crate::qring::engine::map_maybe_parallel;
use crate::qring::{ExpansionRecord, QPoly, QuantumRing};

/// `(mu_1, mu_2)` with `F(p^i_lambda) = sigma_{mu_1} / sigma_{mu_2}` for a rectangle `lambda`.
pub fn rectangle_image(shape: &FlagShape, i: usize, lam: &Partition) -> Result<(PartitionTuple, PartitionTuple)> {
    if i == 0 || i > shape.rho() {
        return Err(Error::Range(format!("level {} out of range", i)));
    }
    let (h, w) = (shape.r(i), shape.r(i - 1) - shape.r(i));
    if !lam.is_rectangle() || !lam.fits(h, w) {
        return Err(Error::Range(format!("p{}{} is not a rectangle of its box", i, lam)));
    }
    let empty = PartitionTuple::empty(shape);
    if lam.is_empty() {
        return Ok((empty.clone(), empty));
    }
    let rows = lam.height() + w - lam.width();
    let mut base: Vec<Partition> = (1..i).map(|l| Partition::rectangle(rows, shape.r(l - 1) - shape.r(l))).collect();
    base.resize(shape.rho(), Partition::empty());
    let mu2 = PartitionTuple::new(shape, base.clone())?;
    base[i - 1] = lam.clone();
    Ok((PartitionTuple::new(shape, base)?, mu2))
}

/// A class `numerator / prod sigma_mu` in the quantum cohomology ring localized at the
/// rectangular Schubert classes.
#[derive(Debug, Clone)]
pub struct LocalizedClass {
    pub numerator: QPoly,
    pub denominator: Vec<PartitionTuple>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizedJson {
    pub numerator: Vec<ExpansionRecord>,
    pub denominator: Vec<Vec<Vec<usize>>>,
}

impl LocalizedClass {
    pub fn is_zero(&self, ring: &QuantumRing) -> bool {
        ring.is_zero(&self.numerator)
    }

    pub fn render(&self, ring: &QuantumRing) -> Result<String> {
        let num = ring.schubert_expand(&self.numerator)?.to_string();
        if self.denominator.is_empty() {
            return Ok(num);
        }
        let den: Vec<String> = self.denominator.iter().map(|t| format!("s{}", t)).collect();
        Ok(format!("({}) / ({})", num, den.join("*")))
    }

    pub fn to_json(&self, ring: &QuantumRing) -> Result<LocalizedJson> {
        Ok(LocalizedJson {
            numerator: ring.schubert_expand(&self.numerator)?.records(ring.shape()),
            denominator: self
                .denominator
                .iter()
                .map(|t| t.entries().iter().map(|p| p.parts().to_vec()).collect())
                .collect(),
        })
    }
}

/// Applies the Schubert map, clearing denominators: each symbol `s` with image `A/B` contributes
/// `A^(-min e)` and `B^(max e)` to the common denominator.
pub struct SchubertMap<'a> {
    ring: &'a QuantumRing,
    classes: Mutex<HashMap<PartitionTuple, QPoly>>,
}

impl<'a> SchubertMap<'a> {
    pub fn new(ring: &'a QuantumRing) -> Self {
        SchubertMap { ring, classes: Mutex::new(HashMap::new()) }
    }

    fn class(&self, t: &PartitionTuple) -> Result<QPoly> {
        if let Some(c) = self.classes.lock().unwrap().get(t) {
            return Ok(c.clone());
        }
        let c = self.ring.quantum_schubert(&tuple_to_permutation(self.ring.shape(), t))?;
        self.classes.lock().unwrap().insert(t.clone(), c.clone());
        Ok(c)
    }

    fn power(&self, t: &PartitionTuple, e: usize) -> Result<QPoly> {
        let c = self.class(t)?;
        let mut r = QPoly::one();
        for _ in 0..e {
            r = self.ring.mul(&r, &c);
        }
        Ok(r)
    }

    pub fn apply(&self, x: &Laurent) -> Result<LocalizedClass> {
        let shape = self.ring.shape();
        let mut images: BTreeMap<Symbol, (PartitionTuple, PartitionTuple)> = BTreeMap::new();
        let mut range: BTreeMap<Symbol, (i32, i32)> = BTreeMap::new();
        for m in x.terms().keys() {
            for (s, e) in m.exps() {
                match s {
                    Symbol::Q(l) if *e < 0 || *l == 0 || *l > shape.rho() => {
                        return Err(Error::Range(format!("{}^{} has no image", s, e)));
                    }
                    Symbol::Q(_) => continue,
                    Symbol::Z(..) => return Err(Error::Range(format!("quiver variable {} has no image", s))),
                    Symbol::P(i, lam) => {
                        if !images.contains_key(s) {
                            images.insert(s.clone(), rectangle_image(shape, *i, lam)?);
                        }
                    }
                }
                let r = range.entry(s.clone()).or_insert((0, 0));
                r.0 = r.0.min(*e);
                r.1 = r.1.max(*e);
            }
        }
        let mut denominator = Vec::new();
        for (s, (a, b)) in &images {
            if a == b {
                continue;
            }
            let (lo, hi) = range[s];
            denominator.extend(std::iter::repeat_n(a.clone(), (-lo) as usize));
            denominator.extend(std::iter::repeat_n(b.clone(), hi as usize));
        }
        let one = PartitionTuple::empty(shape);
        denominator.retain(|t| *t != one);
        denominator.sort();
        let mut numerator = QPoly::zero();
        for (m, c) in x.terms() {
            let mut q = vec![0; shape.rho()];
            let mut t = QPoly::constant(c.clone());
            for (s, e) in m.exps() {
                if let Symbol::Q(l) = s {
                    q[l - 1] = *e as usize;
                }
            }
            t = self.ring.mul(&t, &self.ring.q_monomial(&q));
            for (s, (a, b)) in &images {
                if a == b {
                    continue;
                }
                let (lo, hi) = range[s];
                let e = m.exp(s);
                t = self.ring.mul(&t, &self.power(a, (e - lo) as usize)?);
                t = self.ring.mul(&t, &self.power(b, (hi - e) as usize)?);
            }
            numerator = numerator.add(&t);
        }
        Ok(LocalizedClass { numerator: self.ring.normal_form(&numerator), denominator })
    }
}

pub fn schubert_map(ring: &QuantumRing, x: &Laurent) -> Result<LocalizedClass> {
    SchubertMap::new(ring).apply(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalVerdict {
    Zero,
    Equal,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialReport {
    pub variable: String,
    pub partial: String,
    pub verdict: LocalVerdict,
    pub note: Option<String>,
}

/// `F(d W / d p)` for every variable `p` of the chart: `Zero` when the cleared numerator vanishes.
pub fn theorem_a_verify(ring: &QuantumRing, ce: &ChartExpansion) -> Result<Vec<PartialReport>> {
    let fmap = SchubertMap::new(ring);
    let vars = ce.chart.symbols();
    map_maybe_parallel(&vars, |v| {
        let d = ce.expr.partial(v);
        let r = ce.to_rectangles(&d)?;
        let mut note = None;
        for f in r.denominator().keys() {
            if fmap.apply(f)?.is_zero(ring) {
                note = Some(format!("denominator factor {} maps to zero", f));
            }
        }
        let verdict = if note.is_none() && fmap.apply(r.numerator())?.is_zero(ring) {
            LocalVerdict::Zero
        } else {
            LocalVerdict::Inconclusive
        };
        if verdict == LocalVerdict::Inconclusive && note.is_none() {
            note = Some("cleared numerator is nonzero".into());
        }
        Ok(PartialReport { variable: v.to_string(), partial: d.to_string(), verdict, note })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexReport {
    pub row: usize,
    pub col: usize,
    pub grassmannian: String,
    pub flag: String,
    pub verdict: LocalVerdict,
}

/// Compares `pi(F_Gr(label_Gr(v)))` with `F_Fl(label_Fl(v))` at every quiver vertex.
pub fn prop_commutes_verify(ring: &QuantumRing) -> Result<Vec<VertexReport>> {
    let quiver = LadderQuiver::build(ring.shape());
    let fmap = SchubertMap::new(ring);
    let vs: Vec<_> = quiver.vertices().iter().filter(|v| v.kind != VertexKind::Source).copied().collect();
    map_maybe_parallel(&vs, |v| {
        let (a, b) = quiver.grassmannian_label(v).expect("not the source");
        let label = quiver.flag_label(v);
        let fl = fmap.apply(label.as_laurent().expect("monomial label"))?;
        let g_num = ring.s_class(1, &a)?;
        let g_den = ring.s_class(1, &b)?;
        let mut den = QPoly::one();
        let mut degenerate = ring.is_zero(&g_den);
        for t in &fl.denominator {
            let c = fmap.class(t)?;
            degenerate |= ring.is_zero(&c);
            den = ring.mul(&den, &c);
        }
        let diff = ring.mul(&g_num, &den).sub(&ring.mul(&fl.numerator, &g_den));
        let verdict = if !degenerate && ring.is_zero(&diff) { LocalVerdict::Equal } else { LocalVerdict::Inconclusive };
        Ok(VertexReport {
            row: v.row,
            col: v.col,
            grassmannian: format!("s1{}/s1{}", a, b),
            flag: label.to_string(),
            verdict,
        })
    })
}

/// `q`-exponents and coefficient of a single-term class, for display checks.
pub fn single_term(ring: &QuantumRing, x: &QPoly) -> Result<Option<(Vec<usize>, Vec<usize>, BigInt)>> {
    let flat = ring.schubert_expand(x)?.flat();
    Ok(match flat.as_slice() {
        [(w, q, c)] => Some((w.one_line().to_vec(), q.clone(), c.clone())),
        _ => None,
    })
}
