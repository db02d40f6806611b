//! Classical polynomials in `x_1, ..., x_m`: elementary and Schur polynomials,
//! divided differences, Schubert polynomials and expansion in elementary words.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::Partition;
use crate::error::{Error, Result};
use crate::linalg::{integral, to_rational, Echelon, ModEchelon};
use crate::permutations::Permutation;

/// Integer polynomial in a fixed number of variables `x_1..x_m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::monomial(nvars, vec![0; nvars], BigInt::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u8>, c: BigInt) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        MPoly::monomial(nvars, e, BigInt::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u8>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u8]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, e: Vec<u8>, c: BigInt) {
        let entry = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn scale(&self, k: &BigInt) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        if k.is_zero() {
            return r;
        }
        r.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        r
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u8> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum::<usize>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Swap `x_i` and `x_{i+1}`.
    pub fn swap(&self, i: usize) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f.swap(i - 1, i);
            r.terms.insert(f, c.clone());
        }
        r
    }

    /// Extend to more variables.
    pub fn widen(&self, nvars: usize) -> MPoly {
        let mut r = MPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f.resize(nvars, 0);
            r.terms.insert(f, c.clone());
        }
        r
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // graded lex: higher degree first, then lex with x_1 largest
        let mut keys: Vec<&Vec<u8>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: usize = a.iter().map(|&x| x as usize).sum();
            let db: usize = b.iter().map(|&x| x as usize).sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let mut factors = Vec::new();
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, x)),
                }
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if k > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            if factors.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `e_k(x_1, ..., x_j)` inside a ring with `nvars` variables.
pub fn elementary(nvars: usize, k: isize, j: usize) -> MPoly {
    if k == 0 {
        return MPoly::one(nvars);
    }
    if k < 0 || k as usize > j {
        return MPoly::zero(nvars);
    }
    let k = k as usize;
    let mut out = MPoly::zero(nvars);
    let mut chosen = Vec::with_capacity(k);
    fn rec(start: usize, j: usize, k: usize, nvars: usize, chosen: &mut Vec<usize>, out: &mut MPoly) {
        if chosen.len() == k {
            let mut e = vec![0u8; nvars];
            for &c in chosen.iter() {
                e[c] = 1;
            }
            out.terms.insert(e, BigInt::one());
            return;
        }
        for v in start..j {
            chosen.push(v);
            rec(v + 1, j, k, nvars, chosen, out);
            chosen.pop();
        }
    }
    rec(0, j, k, nvars, &mut chosen, &mut out);
    out
}

/// `(f - s_i f) / (x_i - x_{i+1})`.
pub fn divided_difference(i: usize, f: &MPoly) -> Result<MPoly> {
    let n = f.nvars();
    if i == 0 || i >= n {
        return Err(Error::Range(format!("divided difference index {} needs at least {} variables", i, i + 1)));
    }
    let num = f.sub(&f.swap(i));
    // divide term by term: group monomials by the pair (a, b) of exponents at i, i+1
    let mut out = MPoly::zero(n);
    let mut rest = num;
    while let Some((e, c)) = rest.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        // leading term in lex: x_i exponent is maximal, so x_i * q has its lead there
        let a = e[i - 1];
        if a == 0 {
            return Err(Error::Engine(format!("divided difference: nonzero remainder at {:?}", e)));
        }
        let mut qe = e.clone();
        qe[i - 1] -= 1;
        let q = MPoly::monomial(n, qe, c);
        let mut lin = MPoly::var(n, i);
        lin = lin.sub(&MPoly::var(n, i + 1));
        rest = rest.sub(&q.mul(&lin));
        out = out.add(&q);
    }
    Ok(out)
}

/// Schubert polynomial of `w` in `x_1..x_{n-1}`.
pub fn schubert_polynomial(w: &Permutation) -> MPoly {
    let n = w.n();
    let nv = n.saturating_sub(1).max(1);
    static CACHE: OnceLock<Mutex<HashMap<Permutation, MPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(w) {
        return p.clone();
    }
    // work in x_1..x_n so that the last divided difference is defined, then drop x_n
    let mut top = vec![0u8; n.max(2)];
    for i in 1..n {
        top[i - 1] = (n - i) as u8;
    }
    let mut f = MPoly::monomial(n.max(2), top, BigInt::one());
    let w0 = Permutation::new((1..=n).rev().collect()).unwrap();
    // apply the word of w^{-1} w_0 from the right end
    let v = w.inverse().compose(&w0);
    for &a in v.reduced_word().iter().rev() {
        f = divided_difference(a, &f).expect("staircase divided differences are exact");
    }
    let mut g = MPoly::zero(nv);
    for (e, c) in f.terms() {
        debug_assert!(e[nv..].iter().all(|&x| x == 0));
        g.terms.insert(e[..nv].to_vec(), c.clone());
    }
    let f = g;
    cache.lock().unwrap().insert(w.clone(), f.clone());
    f
}

/// Schur polynomial `s_lambda(x_1..x_r)` by the dual Jacobi-Trudi determinant.
pub fn schur(nvars: usize, lambda: &Partition, r: usize) -> MPoly {
    if lambda.height() > r {
        return MPoly::zero(nvars);
    }
    let t = lambda.transpose();
    let k = t.height();
    let mut m = Vec::with_capacity(k);
    for a in 1..=k {
        let mut row = Vec::with_capacity(k);
        for b in 1..=k {
            row.push(elementary(nvars, t.part(a) as isize + b as isize - a as isize, r));
        }
        m.push(row);
    }
    determinant(&m, nvars)
}

fn determinant(m: &[Vec<MPoly>], nvars: usize) -> MPoly {
    let k = m.len();
    if k == 0 {
        return MPoly::one(nvars);
    }
    // Laplace along the first column with memoized minors on row subsets
    let mut memo: HashMap<(usize, u32), MPoly> = HashMap::new();
    fn minor(m: &[Vec<MPoly>], col: usize, rows: u32, nvars: usize, memo: &mut HashMap<(usize, u32), MPoly>) -> MPoly {
        let k = m.len();
        if col == k {
            return MPoly::one(nvars);
        }
        if let Some(p) = memo.get(&(col, rows)) {
            return p.clone();
        }
        let mut acc = MPoly::zero(nvars);
        let mut sign = 1i32;
        for r in 0..k {
            if rows & (1 << r) == 0 {
                continue;
            }
            if !m[r][col].is_zero() {
                let sub = minor(m, col + 1, rows & !(1 << r), nvars, memo);
                let term = m[r][col].mul(&sub);
                acc = if sign > 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            sign = -sign;
        }
        memo.insert((col, rows), acc.clone());
        acc
    }
    minor(m, 0, (1u32 << k) - 1, nvars, &mut memo)
}

/// A word `(k_1, ..., k_{n-1})` with `0 <= k_j <= j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElemWord(pub Vec<usize>);

impl ElemWord {
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// `prod_j e_{k_j}(j)` in `nvars` variables.
    pub fn product(&self, nvars: usize) -> MPoly {
        let mut p = MPoly::one(nvars);
        for (j, &k) in self.0.iter().enumerate() {
            if k > 0 {
                p = p.mul(&elementary(nvars, k as isize, j + 1));
            }
        }
        p
    }

    /// Every word for `S_n` of the given weight.
    pub fn all(n: usize, weight: usize) -> Vec<ElemWord> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n.saturating_sub(1));
        fn rec(j: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<ElemWord>) {
            if j == n {
                if left == 0 {
                    out.push(ElemWord(cur.clone()));
                }
                return;
            }
            // the remaining positions j..n-1 can absorb at most sum of their bounds
            let cap: usize = (j..n).sum();
            if left > cap {
                return;
            }
            for k in 0..=j.min(left) {
                cur.push(k);
                rec(j + 1, n, left - k, cur, out);
                cur.pop();
            }
        }
        rec(1, n, weight, &mut cur, &mut out);
        out
    }
}

struct ElemSlice {
    n: usize,
    words: Vec<ElemWord>,
    index: HashMap<Vec<u8>, usize>,
    modular: ModEchelon,
    exact: OnceLock<Echelon>,
}

impl ElemSlice {
    fn columns(&self) -> impl Iterator<Item = BTreeMap<usize, BigInt>> + '_ {
        let nv = self.n.saturating_sub(1).max(1);
        self.words.iter().map(move |w| w.product(nv).terms().iter().map(|(e, c)| (self.index[e], c.clone())).collect())
    }

    fn exact(&self) -> &Echelon {
        self.exact.get_or_init(|| {
            let mut ech = Echelon::new();
            for col in self.columns() {
                ech.insert(to_rational(&col));
            }
            ech
        })
    }
}

fn elem_slice(n: usize, d: usize) -> Arc<ElemSlice> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<ElemSlice>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().unwrap().get(&(n, d)) {
        return s.clone();
    }
    let nv = n.saturating_sub(1).max(1);
    let words = ElemWord::all(n, d);
    let products: Vec<MPoly> = words.iter().map(|w| w.product(nv)).collect();
    // ascending lex order on exponents keeps fill-in low in practice
    let mut monos: Vec<&Vec<u8>> = products.iter().flat_map(|p| p.terms().keys()).collect();
    monos.sort_unstable();
    monos.dedup();
    let index: HashMap<Vec<u8>, usize> = monos.into_iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let mut modular = ModEchelon::new();
    for p in &products {
        let v: BTreeMap<usize, BigInt> = p.terms().iter().map(|(e, c)| (index[e], c.clone())).collect();
        modular.insert(&v);
    }
    let s = Arc::new(ElemSlice { n, words, index, modular, exact: OnceLock::new() });
    cache.lock().unwrap().insert((n, d), s.clone());
    s
}

/// Number of elementary words of weight `d` for `S_n`.
pub fn elementary_slice_size(n: usize, d: usize) -> usize {
    ElemWord::all(n, d).len()
}

/// The unique expansion `f = sum a_k e_{k_1}(1) ... e_{k_{n-1}}(n-1)` of a homogeneous `f`.
pub fn elementary_expansion(f: &MPoly, n: usize, d: usize) -> Result<BTreeMap<ElemWord, BigInt>> {
    if f.is_zero() {
        return Ok(BTreeMap::new());
    }
    if !f.is_homogeneous() || f.degree() != Some(d) {
        return Err(Error::Range(format!("expected a homogeneous polynomial of degree {}", d)));
    }
    let slice = elem_slice(n, d);
    let nv = n.saturating_sub(1).max(1);
    let mut v = BTreeMap::new();
    for (e, c) in f.terms() {
        let mut e = e.clone();
        e.resize(nv, 0);
        let k = slice
            .index
            .get(&e)
            .ok_or_else(|| Error::Engine(format!("monomial {:?} outside the elementary span", e)))?;
        v.insert(*k, c.clone());
    }
    // solve modulo a prime, then confirm over the integers
    if let Some(sol) = slice.modular.solve(&v) {
        let mut back = MPoly::zero(nv);
        for (k, c) in &sol {
            back = back.add(&slice.words[*k].product(nv).scale(c));
        }
        if back == f.widen(nv) {
            return Ok(sol.into_iter().map(|(k, c)| (slice.words[k].clone(), c)).collect());
        }
    }
    let sol = slice
        .exact()
        .solve(to_rational(&v))
        .ok_or_else(|| Error::Engine("polynomial outside the elementary span".into()))?;
    let sol = integral(&sol).ok_or_else(|| Error::Engine("non-integral elementary expansion".into()))?;
    Ok(sol.into_iter().map(|(k, c)| (slice.words[k].clone(), c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(nv: usize, e: &[u8]) -> MPoly {
        MPoly::monomial(nv, e.to_vec(), BigInt::one())
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        let mut out: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &out {
                for v in (1..=n).filter(|v| !p.contains(v)) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
            out = next;
        }
        out.into_iter().map(|p| Permutation::new(p).unwrap()).collect()
    }

    #[test]
    fn elementary_values() {
        assert_eq!(elementary(2, 1, 2).to_string(), "x1 + x2");
        assert!(elementary(2, 3, 2).is_zero());
        assert_eq!(elementary(3, 2, 3).to_string(), "x1*x2 + x1*x3 + x2*x3");
        for j in 1..5 {
            for k in 0..=j as isize {
                let lhs = elementary(5, k, j);
                let rhs = elementary(5, k, j - 1).add(&MPoly::var(5, j).mul(&elementary(5, k - 1, j - 1)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn divided_differences() {
        assert_eq!(divided_difference(1, &x(2, &[1, 0])).unwrap(), MPoly::one(2));
        assert!(divided_difference(1, &x(2, &[1, 1])).unwrap().is_zero());
        assert_eq!(divided_difference(2, &x(3, &[2, 1, 0])).unwrap(), x(3, &[2, 0, 0]));
    }

    #[test]
    fn braid_and_nilpotency_on_s4() {
        // apply to every monomial of degree <= 4 in three variables
        let mut polys = Vec::new();
        for a in 0..=3u8 {
            for b in 0..=2u8 {
                for c in 0..=1u8 {
                    polys.push(x(3, &[a, b, c]));
                }
            }
        }
        for f in &polys {
            for i in 1..3 {
                let g = divided_difference(i, f).unwrap();
                assert!(divided_difference(i, &g).unwrap().is_zero());
            }
            let lhs =
                divided_difference(1, &divided_difference(2, &divided_difference(1, f).unwrap()).unwrap()).unwrap();
            let rhs =
                divided_difference(2, &divided_difference(1, &divided_difference(2, f).unwrap()).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn schubert_values() {
        assert_eq!(schubert_polynomial(&Permutation::new(vec![2, 1]).unwrap()).to_string(), "x1");
        assert_eq!(schubert_polynomial(&Permutation::new(vec![3, 2, 1]).unwrap()).to_string(), "x1^2*x2");
        assert_eq!(schubert_polynomial(&Permutation::identity(4)), MPoly::one(3));
        for w in all_perms(4) {
            let s = schubert_polynomial(&w);
            assert!(s.is_homogeneous());
            assert_eq!(s.degree().unwrap_or(0), w.length());
            assert!(s.terms().values().all(|c| c.is_positive()));
        }
    }

    #[test]
    fn grassmannian_schubert_is_schur() {
        use crate::combinatorics::{FlagShape, PartitionTuple};
        use crate::permutations::tuple_to_permutation;
        let sh = FlagShape::parse("4;2").unwrap();
        for lam in Partition::all_in_box(2, 2) {
            let t = PartitionTuple::new(&sh, vec![lam.clone()]).unwrap();
            let w = tuple_to_permutation(&sh, &t);
            assert_eq!(schubert_polynomial(&w), schur(3, &lam, 2), "{}", lam);
        }
    }

    #[test]
    fn expansion_round_trip() {
        for w in all_perms(4) {
            let s = schubert_polynomial(&w);
            let exp = elementary_expansion(&s, 4, w.length()).unwrap();
            let mut back = MPoly::zero(3);
            for (word, c) in &exp {
                back = back.add(&word.product(3).scale(c));
            }
            assert_eq!(back, s);
        }
        // x1^2 = e_1(1) e_1(2) - e_2(2)
        let s = schubert_polynomial(&Permutation::new(vec![3, 1, 2]).unwrap());
        let exp = elementary_expansion(&s, 3, 2).unwrap();
        let want: BTreeMap<ElemWord, BigInt> =
            [(ElemWord(vec![1, 1]), BigInt::one()), (ElemWord(vec![0, 2]), -BigInt::one())].into_iter().collect();
        assert_eq!(exp, want);
    }
}
