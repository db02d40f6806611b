//! Normal forms, products and basis expansions in the quantum ring.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::expansion::{Expansion, ProductExpansion, SchubertExpansion};
use super::groebner::Groebner;
use super::poly::{Mono, QPoly, MAX_SIGMA};
use super::presentation::RingPresentation;
use crate::combinatorics::{FlagShape, Partition, PartitionTuple, SkewShape};
use crate::error::{Error, Result};
use crate::linalg::{integral, to_rational, Echelon};
use crate::permutations::{all_in_s, is_in_s, Permutation};
use crate::symfunc::{elementary_expansion, elementary_slice_size, schubert_polynomial};

pub const DEFAULT_BUDGET: usize = 20_000;

/// Classical parts of a family of ring elements in one degree, with the
/// elements' full normal forms, used to peel off q-adic layers.
struct LiftSlice<K> {
    keys: Vec<K>,
    nfs: Vec<QPoly>,
    echelon: Echelon,
}

pub struct QuantumRing {
    pres: RingPresentation,
    gb: Groebner,
    budget: usize,
    std_index: Vec<HashMap<Mono, usize>>,
    classes_by_length: Vec<Vec<Permutation>>,
    qsch: Mutex<HashMap<Permutation, QPoly>>,
    sclass: Mutex<HashMap<(usize, Partition), QPoly>>,
    schubert_slices: Mutex<HashMap<usize, Arc<LiftSlice<Permutation>>>>,
    product_slices: Mutex<HashMap<usize, Arc<LiftSlice<PartitionTuple>>>>,
}

impl std::fmt::Debug for QuantumRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QuantumRing({})", self.pres.shape())
    }
}

impl QuantumRing {
    pub fn new(shape: &FlagShape) -> Result<Self> {
        QuantumRing::with_budget(shape, DEFAULT_BUDGET)
    }

    pub fn with_budget(shape: &FlagShape, budget: usize) -> Result<Self> {
        let pres = RingPresentation::new(shape)?;
        let gb = Groebner::compute(pres.relations(), pres.sigma_weights(), pres.q_weights());
        if !gb.is_monic() {
            return Err(Error::Engine("Groebner basis has a non-unit leading coefficient".into()));
        }
        if gb.leads().iter().any(|m| !m.is_q_free()) {
            return Err(Error::Engine("a leading term involves q; the quotient is not q-flat in this order".into()));
        }
        let dim = shape.dimension();
        let mut classes_by_length = vec![Vec::new(); dim + 1];
        for w in all_in_s(shape) {
            classes_by_length[w.length()].push(w);
        }
        let std = standard_monomials(&gb, pres.sigma_weights(), dim + 1);
        let mut std_index = Vec::with_capacity(dim + 1);
        for d in 0..=dim {
            let list = std.get(d).cloned().unwrap_or_default();
            if list.len() != classes_by_length[d].len() {
                return Err(Error::Engine(format!(
                    "degree {}: {} standard monomials but {} Schubert classes",
                    d,
                    list.len(),
                    classes_by_length[d].len()
                )));
            }
            std_index.push(list.into_iter().enumerate().map(|(i, m)| (m, i)).collect());
        }
        if std.len() > dim + 1 && std[dim + 1..].iter().any(|v| !v.is_empty()) {
            return Err(Error::Engine("standard monomials above the top degree".into()));
        }
        Ok(QuantumRing {
            pres,
            gb,
            budget,
            std_index,
            classes_by_length,
            qsch: Mutex::new(HashMap::new()),
            sclass: Mutex::new(HashMap::new()),
            schubert_slices: Mutex::new(HashMap::new()),
            product_slices: Mutex::new(HashMap::new()),
        })
    }

    pub fn shape(&self) -> &FlagShape {
        self.pres.shape()
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.pres
    }

    pub fn groebner(&self) -> &Groebner {
        &self.gb
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn set_budget(&mut self, budget: usize) {
        self.budget = budget;
    }

    pub fn normal_form(&self, x: &QPoly) -> QPoly {
        let r = self.gb.reduce_full(x);
        debug_assert!(r.scale.is_one());
        r.poly
    }

    pub fn is_zero(&self, x: &QPoly) -> bool {
        self.normal_form(x).is_zero()
    }

    /// Product of two elements, reduced.
    pub fn mul(&self, x: &QPoly, y: &QPoly) -> QPoly {
        let (a, b) = if x.len() <= y.len() { (x, y) } else { (y, x) };
        // multiply the short factor term by term so intermediate sums stay reduced
        let mut acc = QPoly::zero();
        for (m, c) in a.terms() {
            let t = self.normal_form(&b.mul_mono(m).scale(c));
            acc = acc.add(&t);
        }
        acc
    }

    pub fn q_monomial(&self, exps: &[usize]) -> QPoly {
        QPoly::monomial(self.pres.q_mono(exps), BigInt::one())
    }

    pub fn quantum_elementary(&self, l: usize, a: isize) -> QPoly {
        if a < 0 {
            return QPoly::zero();
        }
        self.pres.quantum_elementary(l, a as usize)
    }

    /// The quantum Schubert polynomial of `w`, in normal form.
    pub fn quantum_schubert(&self, w: &Permutation) -> Result<QPoly> {
        let shape = self.shape();
        if !is_in_s(shape, w) {
            return Err(Error::NotInS(w.to_string()));
        }
        if let Some(p) = self.qsch.lock().unwrap().get(w) {
            return Ok(p.clone());
        }
        let n = shape.n();
        let d = w.length();
        let size = elementary_slice_size(n, d);
        if size > self.budget {
            return Err(Error::Budget { needed: size, budget: self.budget });
        }
        let exp = elementary_expansion(&schubert_polynomial(w), n, d)?;
        let mut acc = QPoly::zero();
        for (word, c) in exp {
            let mut term = QPoly::constant(c);
            for (jm1, &k) in word.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let j = jm1 + 1;
                let l = (1..=shape.rho() + 1).find(|&l| shape.r(l) <= j && j < shape.r(l - 1)).unwrap();
                term = term.mul(&self.quantum_elementary(l, k as isize));
                if term.is_zero() {
                    break;
                }
            }
            acc = acc.add(&term);
        }
        let nf = self.normal_form(&acc);
        self.qsch.lock().unwrap().insert(w.clone(), nf.clone());
        Ok(nf)
    }

    /// `det(e^q_{lambda'_i - mu'_j + j - i}(r_{phi_j}))` for `i, j = 1..t`, `t = phi.len()`.
    pub fn delta_determinant(&self, skew_outer: &Partition, skew_inner: &Partition, phi: &[usize]) -> QPoly {
        let t = phi.len();
        let lt = skew_outer.transpose();
        let mt = skew_inner.transpose();
        let mut m = vec![vec![QPoly::zero(); t]; t];
        for i in 1..=t {
            for j in 1..=t {
                let a = lt.part(i) as isize - mt.part(j) as isize + j as isize - i as isize;
                m[i - 1][j - 1] = self.normal_form(&self.quantum_elementary(phi[j - 1], a));
            }
        }
        self.determinant(&m)
    }

    /// `Delta` on a validated skew shape.
    pub fn delta(&self, skew: &SkewShape, phi: &[usize]) -> QPoly {
        self.delta_determinant(&skew.outer, &skew.inner, phi)
    }

    /// Determinant by Laplace expansion along columns, memoized on row subsets.
    pub fn determinant(&self, m: &[Vec<QPoly>]) -> QPoly {
        let t = m.len();
        if t == 0 {
            return QPoly::one();
        }
        assert!(t <= 24, "determinant too large");
        let mut memo: HashMap<(usize, u32), QPoly> = HashMap::new();
        self.minor(m, 0, (1u32 << t) - 1, &mut memo)
    }

    fn minor(&self, m: &[Vec<QPoly>], col: usize, rows: u32, memo: &mut HashMap<(usize, u32), QPoly>) -> QPoly {
        let t = m.len();
        if col == t {
            return QPoly::one();
        }
        if let Some(p) = memo.get(&(col, rows)) {
            return p.clone();
        }
        let mut acc = QPoly::zero();
        let mut sign = true;
        for r in 0..t {
            if rows & (1 << r) == 0 {
                continue;
            }
            if !m[r][col].is_zero() {
                let sub = self.minor(m, col + 1, rows & !(1 << r), memo);
                if !sub.is_zero() {
                    let term = self.mul(&m[r][col], &sub);
                    acc = if sign { acc.add(&term) } else { acc.sub(&term) };
                }
            }
            sign = !sign;
        }
        memo.insert((col, rows), acc.clone());
        acc
    }

    /// `s^i_lambda`, the determinant of quantum elementaries with flag `(i, ..., i)`.
    pub fn s_class(&self, i: usize, lambda: &Partition) -> Result<QPoly> {
        if i == 0 || i > self.shape().rho() {
            return Err(Error::Range(format!("level {} outside 1..={}", i, self.shape().rho())));
        }
        if lambda.height() > self.shape().r(i) {
            return Err(Error::Range(format!("{} has more than {} rows", lambda, self.shape().r(i))));
        }
        let key = (i, lambda.clone());
        if let Some(p) = self.sclass.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let p = self.delta_determinant(lambda, &Partition::empty(), &vec![i; lambda.width()]);
        self.sclass.lock().unwrap().insert(key, p.clone());
        Ok(p)
    }

    /// `prod_i s^i_{mu^i}`.
    pub fn product_class(&self, mu: &PartitionTuple) -> Result<QPoly> {
        let mut acc = QPoly::one();
        for (k, p) in mu.entries().iter().enumerate() {
            if !p.is_empty() {
                acc = self.mul(&acc, &self.s_class(k + 1, p)?);
            }
        }
        Ok(acc)
    }

    fn check_budget(&self, needed: usize) -> Result<()> {
        if needed > self.budget {
            Err(Error::Budget { needed, budget: self.budget })
        } else {
            Ok(())
        }
    }

    fn std_vector(&self, d: usize, p: &QPoly) -> Result<BTreeMap<usize, BigInt>> {
        let idx =
            self.std_index.get(d).ok_or_else(|| Error::Engine(format!("no standard monomials in degree {}", d)))?;
        let mut v = BTreeMap::new();
        for (m, c) in p.terms() {
            let k = idx
                .get(&m.sigma_part())
                .ok_or_else(|| Error::Engine("normal form has a non-standard monomial".into()))?;
            v.insert(*k, c.clone());
        }
        Ok(v)
    }

    fn schubert_slice(&self, d: usize) -> Result<Arc<LiftSlice<Permutation>>> {
        if let Some(s) = self.schubert_slices.lock().unwrap().get(&d) {
            return Ok(s.clone());
        }
        let keys = self.classes_by_length.get(d).cloned().unwrap_or_default();
        self.check_budget(keys.len())?;
        let nfs = map_maybe_parallel(&keys, |w| self.quantum_schubert(w))?;
        let s = Arc::new(self.build_slice(d, keys, nfs)?);
        self.schubert_slices.lock().unwrap().insert(d, s.clone());
        Ok(s)
    }

    fn product_slice(&self, d: usize) -> Result<Arc<LiftSlice<PartitionTuple>>> {
        if let Some(s) = self.product_slices.lock().unwrap().get(&d) {
            return Ok(s.clone());
        }
        let keys: Vec<PartitionTuple> =
            PartitionTuple::all(self.shape()).into_iter().filter(|t| t.size() == d).collect();
        self.check_budget(keys.len())?;
        let nfs = map_maybe_parallel(&keys, |t| self.product_class(t))?;
        let s = Arc::new(self.build_slice(d, keys, nfs)?);
        self.product_slices.lock().unwrap().insert(d, s.clone());
        Ok(s)
    }

    fn build_slice<K>(&self, d: usize, keys: Vec<K>, nfs: Vec<QPoly>) -> Result<LiftSlice<K>> {
        let mut echelon = Echelon::new();
        for nf in &nfs {
            let v = self.std_vector(d, &nf.q_free_part())?;
            if !echelon.insert(to_rational(&v)) {
                return Err(Error::Engine(format!("degree {}: classical parts are linearly dependent", d)));
            }
        }
        Ok(LiftSlice { keys, nfs, echelon })
    }

    fn lift<K: Ord + Clone>(
        &self,
        x: &QPoly,
        slice: impl Fn(usize) -> Result<Arc<LiftSlice<K>>>,
    ) -> Result<Expansion<K>> {
        let mut out = Expansion::new();
        let mut cur = self.normal_form(x);
        while !cur.is_zero() {
            let qmin = cur.terms().iter().map(|(m, _)| m.qdeg).min().unwrap();
            let mut groups: BTreeMap<(Vec<usize>, u16), Vec<(Mono, BigInt)>> = BTreeMap::new();
            for (m, c) in cur.terms() {
                if m.qdeg == qmin {
                    groups.entry((self.pres.q_exponents(m), m.sdeg)).or_default().push((m.sigma_part(), c.clone()));
                }
            }
            let mut sub = QPoly::zero();
            for ((qe, sdeg), terms) in groups {
                let d = sdeg as usize;
                let sl = slice(d)?;
                let v = self.std_vector(d, &QPoly::from_terms(terms))?;
                let sol = sl
                    .echelon
                    .solve(to_rational(&v))
                    .ok_or_else(|| Error::Engine(format!("degree {} layer is outside the basis span", d)))?;
                let sol = integral(&sol).ok_or_else(|| Error::Engine("non-integral basis coefficient".into()))?;
                let qm = self.pres.q_mono(&qe);
                for (k, c) in sol {
                    out.add_term(sl.keys[k].clone(), qe.clone(), c.clone());
                    sub = sub.add(&sl.nfs[k].mul_mono(&qm).scale(&c));
                }
            }
            let next = cur.sub(&sub);
            if next.terms().iter().any(|(m, _)| m.qdeg <= qmin) {
                return Err(Error::Engine("q-adic lifting did not clear the lowest layer".into()));
            }
            cur = next;
        }
        Ok(out)
    }

    /// The unique expansion in Schubert classes with coefficients in `Z[q]`.
    pub fn schubert_expand(&self, x: &QPoly) -> Result<SchubertExpansion> {
        self.lift(x, |d| self.schubert_slice(d))
    }

    /// The unique expansion in products `prod_i s^i_{mu^i}`.
    pub fn product_expand(&self, x: &QPoly) -> Result<ProductExpansion> {
        self.lift(x, |d| self.product_slice(d))
    }

    /// Rebuild a ring element from a Schubert expansion.
    pub fn from_schubert(&self, e: &SchubertExpansion) -> Result<QPoly> {
        let mut acc = QPoly::zero();
        for (w, q, c) in e.flat() {
            acc = acc.add(&self.quantum_schubert(&w)?.mul_mono(&self.pres.q_mono(&q)).scale(&c));
        }
        Ok(acc)
    }

    /// `sigma_u * sigma_v` expanded in Schubert classes.
    pub fn multiply_classes(&self, u: &Permutation, v: &Permutation) -> Result<SchubertExpansion> {
        let p = self.mul(&self.quantum_schubert(u)?, &self.quantum_schubert(v)?);
        self.schubert_expand(&p)
    }

    pub fn multiply(&self, x: &SchubertExpansion, y: &SchubertExpansion) -> Result<SchubertExpansion> {
        let p = self.mul(&self.from_schubert(x)?, &self.from_schubert(y)?);
        self.schubert_expand(&p)
    }

    pub fn num_classes(&self) -> usize {
        self.classes_by_length.iter().map(|v| v.len()).sum()
    }

    pub fn render(&self, p: &QPoly) -> String {
        self.pres.render(p)
    }
}

/// Classical standard monomials grouped by weighted degree, up to `max_deg`.
fn standard_monomials(gb: &Groebner, weights: &[u16], max_deg: usize) -> Vec<Vec<Mono>> {
    let mut out = vec![Vec::new(); max_deg + 1];
    let nv = weights.len();
    let mut cur = Mono::ONE;
    fn rec(
        v: usize,
        nv: usize,
        weights: &[u16],
        max_deg: usize,
        cur: &mut Mono,
        gb: &Groebner,
        out: &mut Vec<Vec<Mono>>,
    ) {
        if v == nv {
            out[cur.sdeg as usize].push(*cur);
            return;
        }
        loop {
            rec(v + 1, nv, weights, max_deg, cur, gb, out);
            if cur.sdeg as usize + weights[v] as usize > max_deg {
                break;
            }
            cur.s[v] += 1;
            cur.sdeg += weights[v];
            if !gb.is_standard(cur) {
                break;
            }
        }
        cur.sdeg -= cur.s[v] as u16 * weights[v];
        cur.s[v] = 0;
    }
    debug_assert!(nv <= MAX_SIGMA);
    rec(0, nv, weights, max_deg, &mut cur, gb, &mut out);
    for v in out.iter_mut() {
        v.sort();
    }
    out
}

#[cfg(feature = "parallel")]
pub(crate) fn map_maybe_parallel<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> Result<R> + Sync) -> Result<Vec<R>> {
    use rayon::prelude::*;
    items.par_iter().map(|x| f(x)).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_maybe_parallel<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> Result<R> + Sync) -> Result<Vec<R>> {
    items.iter().map(f).collect()
}

/// Zero test by dense linear algebra in one degree: is `x` a combination of
/// monomial multiples of the relations? Independent of the Groebner basis.
pub fn macaulay_is_zero(pres: &RingPresentation, x: &QPoly) -> Result<bool> {
    for d in x.degrees() {
        let comp = x.component(d);
        let d = d as usize;
        let mut index: HashMap<Mono, usize> = HashMap::new();
        let mut ech = Echelon::new();
        for g in pres.relations() {
            let gd = g.lead().map(|(m, _)| m.deg() as usize).unwrap_or(0);
            if gd > d {
                continue;
            }
            for m in weighted_monomials(pres, d - gd) {
                let row = g.mul_mono(&m);
                let mut v = BTreeMap::new();
                for (t, c) in row.terms() {
                    let len = index.len();
                    v.insert(*index.entry(*t).or_insert(len), c.clone());
                }
                ech.insert(to_rational(&v));
            }
        }
        let mut v = BTreeMap::new();
        for (t, c) in comp.terms() {
            match index.get(t) {
                Some(k) => {
                    v.insert(*k, c.clone());
                }
                None => return Ok(false),
            }
        }
        if !ech.contains(to_rational(&v)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All monomials in the sigma generators and q parameters of weighted degree `d`.
pub fn weighted_monomials(pres: &RingPresentation, d: usize) -> Vec<Mono> {
    let sw = pres.sigma_weights();
    let qw = pres.q_weights();
    let slots: Vec<(bool, usize, u16)> = sw
        .iter()
        .enumerate()
        .map(|(i, &w)| (false, i, w))
        .chain(qw.iter().enumerate().map(|(i, &w)| (true, i, w)))
        .collect();
    let mut out = Vec::new();
    fn rec(k: usize, left: usize, slots: &[(bool, usize, u16)], cur: &mut Mono, out: &mut Vec<Mono>) {
        if k == slots.len() {
            if left == 0 {
                out.push(*cur);
            }
            return;
        }
        let (is_q, i, w) = slots[k];
        let w = w as usize;
        let mut e = 0;
        while e * w <= left {
            if is_q {
                cur.q[i] = e as u8;
                cur.qdeg += (e * w) as u16;
            } else {
                cur.s[i] = e as u8;
                cur.sdeg += (e * w) as u16;
            }
            rec(k + 1, left - e * w, slots, cur, out);
            if is_q {
                cur.qdeg -= (e * w) as u16;
                cur.q[i] = 0;
            } else {
                cur.sdeg -= (e * w) as u16;
                cur.s[i] = 0;
            }
            e += 1;
        }
    }
    let mut cur = Mono::ONE;
    rec(0, d, &slots, &mut cur, &mut out);
    out
}

impl QuantumRing {
    /// The same zero test via dense linear algebra, for cross-checking.
    pub fn is_zero_dense(&self, x: &QPoly) -> Result<bool> {
        macaulay_is_zero(&self.pres, x)
    }

    /// Zero element of the expansion type, for convenience in callers.
    pub fn zero_expansion(&self) -> SchubertExpansion {
        SchubertExpansion::new()
    }

    /// Coefficient-wise `q^e * Sch^q_w` as an expansion.
    pub fn class_expansion(&self, w: &Permutation, q: Vec<usize>) -> SchubertExpansion {
        SchubertExpansion::single(w.clone(), q, BigInt::one())
    }

    /// True when `x` has no term of degree other than `d`.
    pub fn check_degree(&self, x: &QPoly, d: usize) -> bool {
        x.terms().iter().all(|(m, _)| m.deg() as usize == d) || x.is_zero()
    }

    pub fn zero() -> BigInt {
        BigInt::zero()
    }
}
