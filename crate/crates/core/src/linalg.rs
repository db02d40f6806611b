//! Exact sparse row reduction over the rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type SparseVec = BTreeMap<usize, BigRational>;

pub fn to_rational(v: &BTreeMap<usize, BigInt>) -> SparseVec {
    v.iter().map(|(k, c)| (*k, BigRational::from_integer(c.clone()))).collect()
}

/// Incrementally built echelon form that remembers how each pivot row was
/// obtained from the inserted vectors, so membership tests can also solve.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    inserted: usize,
}

fn axpy(dst: &mut SparseVec, a: &BigRational, src: &SparseVec) {
    for (k, c) in src {
        let e = dst.entry(*k).or_insert_with(BigRational::zero);
        *e += a * c;
        if e.is_zero() {
            dst.remove(k);
        }
    }
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted so far; they are labelled `0..inserted`.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduce `v` against the pivots; returns the remainder and the combination
    /// of inserted vectors that was subtracted.
    fn reduce(&self, mut v: SparseVec) -> (SparseVec, SparseVec) {
        let mut combo = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = v.range(cursor..).map(|(k, _)| *k).find(|k| self.rows.contains_key(k));
            let Some(k) = next else { break };
            let (row, rc) = &self.rows[&k];
            let a = v[&k].clone();
            axpy(&mut v, &-a.clone(), row);
            axpy(&mut combo, &a, rc);
            cursor = k + 1;
        }
        (v, combo)
    }

    /// Insert a vector; returns false if it was already in the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let label = self.inserted;
        self.inserted += 1;
        let (rem, combo) = self.reduce(v);
        let Some((&p, lead)) = rem.iter().next() else { return false };
        let inv = BigRational::one() / lead;
        let mut row = SparseVec::new();
        axpy(&mut row, &inv, &rem);
        let mut rc = SparseVec::new();
        rc.insert(label, inv.clone());
        axpy(&mut rc, &-inv, &combo);
        // keep older rows reduced at the new pivot so reduce() stays a single sweep
        let keys: Vec<usize> = self.rows.keys().copied().filter(|&k| k < p).collect();
        for k in keys {
            let entry = self.rows.get(&k).unwrap();
            if let Some(c) = entry.0.get(&p).cloned() {
                let (mut r0, mut c0) = self.rows.remove(&k).unwrap();
                axpy(&mut r0, &-c.clone(), &row);
                axpy(&mut c0, &-c, &rc);
                self.rows.insert(k, (r0, c0));
            }
        }
        self.rows.insert(p, (row, rc));
        true
    }

    /// Coefficients `x` with `v = sum x_i * inserted_i`, if `v` lies in the span.
    pub fn solve(&self, v: SparseVec) -> Option<SparseVec> {
        let (rem, combo) = self.reduce(v);
        if rem.is_empty() {
            Some(combo)
        } else {
            None
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// Convert a rational solution to integers, or `None` if some entry is fractional.
pub fn integral(v: &SparseVec) -> Option<BTreeMap<usize, BigInt>> {
    let mut out = BTreeMap::new();
    for (k, c) in v {
        if !c.is_integer() {
            return None;
        }
        out.insert(*k, c.to_integer());
    }
    Some(out)
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

pub fn to_mod(c: &BigInt) -> u64 {
    let r = c % BigInt::from(P);
    let r = if r < BigInt::zero() { r + BigInt::from(P) } else { r };
    r.try_into().unwrap()
}

/// Symmetric lift of a residue to `(-P/2, P/2]`.
pub fn from_mod(c: u64) -> BigInt {
    if c > P / 2 {
        BigInt::from(c) - BigInt::from(P)
    } else {
        BigInt::from(c)
    }
}

type ModVec = BTreeMap<usize, u64>;

fn axpy_mod(dst: &mut ModVec, a: u64, src: &ModVec) {
    for (k, c) in src {
        let e = dst.entry(*k).or_insert(0);
        *e = (*e + mulmod(a, *c)) % P;
        if *e == 0 {
            dst.remove(k);
        }
    }
}

/// Incremental echelon form over the field with `2^61 - 1` elements.
///
/// Rows are not back-reduced; each row remembers the reduction steps that
/// produced it, and `solve` unwinds them. Callers must verify lifted
/// solutions over the integers.
#[derive(Debug, Clone, Default)]
pub struct ModEchelon {
    pivots: BTreeMap<usize, usize>,
    rows: Vec<ModRow>,
    inserted: usize,
}

#[derive(Debug, Clone)]
struct ModRow {
    row: ModVec,
    label: usize,
    inv: u64,
    steps: Vec<(usize, u64)>,
}

impl ModEchelon {
    pub fn new() -> Self {
        ModEchelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminate pivots from `v`; returns the remainder and `(row, multiple)` steps.
    fn reduce(&self, mut v: ModVec) -> (ModVec, Vec<(usize, u64)>) {
        let mut steps = Vec::new();
        let mut cursor = 0usize;
        loop {
            let next = v.range(cursor..).map(|(k, _)| *k).find(|k| self.pivots.contains_key(k));
            let Some(k) = next else { break };
            let r = self.pivots[&k];
            let a = v[&k];
            axpy_mod(&mut v, P - a, &self.rows[r].row);
            steps.push((r, a));
            cursor = k + 1;
        }
        (v, steps)
    }

    pub fn insert(&mut self, v: &BTreeMap<usize, BigInt>) -> bool {
        let label = self.inserted;
        self.inserted += 1;
        let v: ModVec = v.iter().map(|(k, c)| (*k, to_mod(c))).filter(|(_, c)| *c != 0).collect();
        let (rem, steps) = self.reduce(v);
        let Some((&p, &lead)) = rem.iter().next() else { return false };
        let inv = powmod(lead, P - 2);
        let mut row = ModVec::new();
        axpy_mod(&mut row, inv, &rem);
        self.pivots.insert(p, self.rows.len());
        self.rows.push(ModRow { row, label, inv, steps });
        true
    }

    /// Residues of the solution, lifted symmetrically.
    pub fn solve(&self, v: &BTreeMap<usize, BigInt>) -> Option<BTreeMap<usize, BigInt>> {
        let v: ModVec = v.iter().map(|(k, c)| (*k, to_mod(c))).filter(|(_, c)| *c != 0).collect();
        let (rem, steps) = self.reduce(v);
        if !rem.is_empty() {
            return None;
        }
        // row_r = inv_r * (input_label - sum a * row_j), unwound newest first
        let mut t = vec![0u64; self.rows.len()];
        for (r, a) in steps {
            t[r] = (t[r] + a) % P;
        }
        let mut out = ModVec::new();
        for r in (0..self.rows.len()).rev() {
            if t[r] == 0 {
                continue;
            }
            let row = &self.rows[r];
            let s = mulmod(t[r], row.inv);
            let e = out.entry(row.label).or_insert(0);
            *e = (*e + s) % P;
            for &(j, a) in &row.steps {
                t[j] = (t[j] + P - mulmod(s, a)) % P;
            }
        }
        Some(out.into_iter().filter(|(_, c)| *c != 0).map(|(k, c)| (k, from_mod(c))).collect())
    }
}
