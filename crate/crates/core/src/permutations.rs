//! Permutations with descents in a flag's steps, and their partition-tuple labels.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{FlagShape, Partition, PartitionTuple, SkewShape};
use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Range(format!("{:?} is not a permutation", one_line)));
            }
            seen[v] = true;
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// The simple transposition `s_i` in `S_n`.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v: Vec<usize> = (1..=n).collect();
        v.swap(i - 1, i);
        Permutation(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    /// `w(k)` for `k` counted from 1.
    pub fn at(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    /// `(self * other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.n(), other.n());
        Permutation(other.0.iter().map(|&k| self.0[k - 1]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    pub fn length(&self) -> usize {
        let mut count = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.0[i] > self.0[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.0[i - 1] > self.0[i]).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Some reduced word `a_1 ... a_l` with `self = s_{a_1} ... s_{a_l}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        // right-multiplying by s_i at a descent lowers the length by one
        let mut w = self.0.clone();
        let mut word = Vec::new();
        loop {
            match (1..w.len()).find(|&i| w[i - 1] > w[i]) {
                Some(i) => {
                    w.swap(i - 1, i);
                    word.push(i);
                }
                None => break,
            }
        }
        word.reverse();
        word
    }

    pub fn from_word(n: usize, word: &[usize]) -> Permutation {
        let mut w = Permutation::identity(n);
        for &a in word {
            w = w.compose(&Permutation::simple(n, a));
        }
        w
    }

    pub fn is_321_avoiding(&self) -> bool {
        // w avoids 321 iff no entry has both a larger entry before it and a smaller one after it
        let n = self.n();
        for j in 0..n {
            let before = self.0[..j].iter().any(|&x| x > self.0[j]);
            let after = self.0[j + 1..].iter().any(|&x| x < self.0[j]);
            if before && after {
                return false;
            }
        }
        true
    }

    /// Display with bars at the given positions, e.g. `[1245|37|68]`.
    pub fn display_with_bars(&self, bars: &[usize]) -> String {
        let mut s = String::from("[");
        for (i, v) in self.0.iter().enumerate() {
            s.push_str(&v.to_string());
            if bars.contains(&(i + 1)) && i + 1 < self.n() {
                s.push('|');
            }
        }
        s.push(']');
        s
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or(Error::Parse { pos: 0, msg: "permutation must be written as [a,b,...]".into() })?;
        let mut out = Vec::new();
        let mut pos = s.find('[').unwrap_or(0) + 1;
        for piece in inner.split([',', '|']) {
            let p = piece.trim();
            if !p.is_empty() {
                out.push(p.parse::<usize>().map_err(|e| Error::Parse {
                    pos: pos + (piece.len() - piece.trim_start().len()),
                    msg: format!("`{}`: {}", p, e),
                })?);
            }
            pos += piece.len() + 1;
        }
        Permutation::new(out)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", p.join(","))
    }
}

pub fn is_in_s(shape: &FlagShape, w: &Permutation) -> bool {
    w.n() == shape.n() && w.descents().iter().all(|d| shape.steps().contains(d))
}

/// `#{i <= p : w(i) <= q}`.
pub fn rank_function(w: &Permutation, p: usize, q: usize) -> usize {
    w.0[..p.min(w.n())].iter().filter(|&&v| v <= q).count()
}

/// The Grassmannian permutation in `S_n` with descent at `r` inside `S_m` for `mu`.
fn grassmannian(n: usize, m: usize, r: usize, mu: &Partition) -> Permutation {
    let mut v = Vec::with_capacity(n);
    for k in 1..=r {
        v.push(mu.part(r - k + 1) + k);
    }
    let mut rest: Vec<usize> = (1..=m).filter(|x| !v.contains(x)).collect();
    v.append(&mut rest);
    v.extend(m + 1..=n);
    Permutation(v)
}

pub fn tuple_to_permutation(shape: &FlagShape, mu: &PartitionTuple) -> Permutation {
    let n = shape.n();
    let mut w = Permutation::identity(n);
    for i in 1..=shape.rho() {
        let g = grassmannian(n, shape.r(i - 1), shape.r(i), mu.get(i));
        w = w.compose(&g);
    }
    w
}

pub fn permutation_to_tuple(shape: &FlagShape, w: &Permutation) -> Result<PartitionTuple> {
    if !is_in_s(shape, w) {
        return Err(Error::NotInS(w.to_string()));
    }
    let n = shape.n();
    let mut rest = w.clone();
    let mut entries = Vec::with_capacity(shape.rho());
    for i in 1..=shape.rho() {
        let m = shape.r(i - 1);
        let r = shape.r(i);
        // left factor: sort the first r values of the restriction to 1..m
        let mut top: Vec<usize> = rest.0[..r].to_vec();
        top.sort_unstable();
        let parts: Vec<usize> = (1..=r).rev().map(|k| top[k - 1] - k).collect();
        let mu = Partition::new(parts)?;
        let g = grassmannian(n, m, r, &mu);
        rest = g.inverse().compose(&rest);
        entries.push(mu);
    }
    if !rest.is_identity() {
        return Err(Error::NotInS(w.to_string()));
    }
    PartitionTuple::new(shape, entries)
}

/// The permutation read from a labeled skew shape, box `(row, col)` labeled
/// `r_base + col - row`, reading columns right to left and each column bottom to top.
pub fn skew_to_permutation(shape: &FlagShape, skew: &SkewShape, r_base: usize) -> Result<Permutation> {
    let n = shape.n();
    let mut word = Vec::new();
    for c in (1..=skew.outer.width()).rev() {
        for row in (1..=skew.outer.col(c)).rev() {
            if row <= skew.inner.col(c) {
                continue;
            }
            let label = (r_base + c) as isize - row as isize;
            if label < 1 || label as usize >= n {
                return Err(Error::Range(format!("label {} at ({},{}) outside 1..{}", label, row, c, n)));
            }
            word.push(label as usize);
        }
    }
    let w = Permutation::from_word(n, &word);
    if w.length() != word.len() {
        return Err(Error::Engine(format!("reading word {:?} is not reduced", word)));
    }
    Ok(w)
}

/// The longest element of `S(n; r)`.
pub fn longest_element(shape: &FlagShape) -> Permutation {
    let mut v = Vec::with_capacity(shape.n());
    for l in (1..=shape.rho() + 1).rev() {
        let hi = shape.n() - shape.r(l);
        let lo = shape.n() - shape.r(l - 1);
        v.extend(lo + 1..=hi);
    }
    Permutation(v)
}

fn parabolic_longest(shape: &FlagShape) -> Permutation {
    let mut v = Vec::with_capacity(shape.n());
    for l in (1..=shape.rho() + 1).rev() {
        let lo = shape.r(l);
        let hi = shape.r(l - 1);
        v.extend((lo + 1..=hi).rev());
    }
    Permutation(v)
}

/// `w^v = w_0 * w * w_0^r`.
pub fn dual(shape: &FlagShape, w: &Permutation) -> Permutation {
    let n = shape.n();
    let w0 = Permutation((1..=n).rev().collect());
    w0.compose(w).compose(&parabolic_longest(shape))
}

/// Every element of `S(n; r)`, via the tuple bijection.
pub fn all_in_s(shape: &FlagShape) -> Vec<Permutation> {
    let mut v: Vec<Permutation> = PartitionTuple::all(shape).iter().map(|t| tuple_to_permutation(shape, t)).collect();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{classify, hook_quotient_tuple, q_hook, Classification};

    fn shape(s: &str) -> FlagShape {
        FlagShape::parse(s).unwrap()
    }

    fn tuple(sh: &FlagShape, v: &[&[usize]]) -> PartitionTuple {
        PartitionTuple::new(sh, v.iter().map(|p| Partition::new(p.to_vec()).unwrap()).collect()).unwrap()
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &out {
                for v in 1..=n {
                    if !p.contains(&v) {
                        let mut q = p.clone();
                        q.push(v);
                        next.push(q);
                    }
                }
            }
            out = next;
        }
        out.into_iter().map(Permutation).collect()
    }

    #[test]
    fn tuples_to_permutations() {
        let s = shape("8;6,4,3");
        let w = tuple_to_permutation(&s, &tuple(&s, &[&[2, 1], &[2, 2, 1], &[1, 1, 1]]));
        assert_eq!(w.one_line(), &[3, 6, 8, 1, 2, 4, 5, 7]);
        assert_eq!(w.display_with_bars(s.steps()), "[368|1|24|57]");
        assert_eq!(w.length(), 11);
        let w = tuple_to_permutation(&s, &tuple(&s, &[&[1], &[2, 1], &[1, 1]]));
        assert_eq!(w.one_line(), &[1, 4, 7, 2, 3, 5, 6, 8]);
        let w = tuple_to_permutation(&s, &tuple(&s, &[&[2, 1], &[1, 1], &[]]));
        assert_eq!(w.one_line(), &[1, 2, 4, 6, 3, 8, 5, 7]);
        assert!(tuple_to_permutation(&s, &PartitionTuple::empty(&s)).is_identity());
    }

    #[test]
    fn membership_and_rank() {
        let s = shape("8;6,4,3");
        assert!(is_in_s(&s, &Permutation::new(vec![1, 2, 4, 5, 3, 7, 6, 8]).unwrap()));
        let f = shape("4;2,1");
        assert!(!is_in_s(&f, &Permutation::new(vec![1, 2, 4, 3]).unwrap()));
        let w = Permutation::new(vec![3, 6, 8, 1, 2, 4, 5, 7]).unwrap();
        assert_eq!(rank_function(&w, 3, 6), 2);
        assert_eq!(rank_function(&Permutation::new(vec![2, 1, 3]).unwrap(), 1, 1), 0);
        let in_s = all_perms(4).into_iter().filter(|w| is_in_s(&f, w)).count();
        assert_eq!(in_s, 12);
    }

    #[test]
    fn round_trip_exhaustive() {
        for sh in ["5;3,2,1", "4;2,1", "6;4,2,1", "5;3"] {
            let s = shape(sh);
            for t in PartitionTuple::all(&s) {
                let w = tuple_to_permutation(&s, &t);
                assert!(is_in_s(&s, &w));
                assert_eq!(w.length(), t.size());
                assert_eq!(permutation_to_tuple(&s, &w).unwrap(), t);
            }
        }
        let s = shape("5;3,2,1");
        let members: Vec<_> = all_perms(5).into_iter().filter(|w| is_in_s(&s, w)).collect();
        assert_eq!(members.len(), all_in_s(&s).len());
    }

    #[test]
    fn longest_and_dual() {
        let s = shape("5;3,2,1");
        let w0 = longest_element(&s);
        assert_eq!(w0.length(), s.dimension());
        assert!(dual(&s, &w0).is_identity());
        let f = shape("4;2,1");
        for w in all_in_s(&f) {
            let d = dual(&f, &w);
            assert!(is_in_s(&f, &d));
            assert_eq!(d.length() + w.length(), f.dimension());
            assert_eq!(dual(&f, &d), w);
        }
    }

    #[test]
    fn reading_words() {
        let s = shape("8;6,4,3");
        let lam = Partition::new(vec![3, 3, 2, 1]).unwrap();
        let skew = SkewShape::new(lam.clone(), q_hook(&s, 3).unwrap()).unwrap();
        let w = skew_to_permutation(&s, &skew, 6).unwrap();
        assert_eq!(w.one_line(), &[1, 2, 4, 6, 3, 8, 5, 7]);
        let empty = SkewShape::new(Partition::empty(), Partition::empty()).unwrap();
        assert!(skew_to_permutation(&s, &empty, 6).unwrap().is_identity());
        for w in all_perms(5) {
            assert_eq!(Permutation::from_word(5, &w.reduced_word()), w);
            assert_eq!(w.reduced_word().len(), w.length());
        }
    }

    #[test]
    fn hook_reading_matches_tuple() {
        for sh in ["4;2,1", "5;3,2", "5;4,2,1", "8;6,4,3"] {
            let s = shape(sh);
            for lam in Partition::all_in_box(s.r(1), s.n()) {
                if classify(&s, &lam).unwrap() != Classification::Compatible || lam.is_empty() {
                    continue;
                }
                let hook = q_hook(&s, lam.width()).unwrap();
                let skew = SkewShape::new(lam.clone(), hook).unwrap();
                let w = skew_to_permutation(&s, &skew, s.r(1)).unwrap();
                assert!(w.is_321_avoiding(), "{} {}", sh, lam);
                let t = hook_quotient_tuple(&s, &lam).unwrap();
                assert_eq!(w, tuple_to_permutation(&s, &t), "{} {}", sh, lam);
            }
        }
    }
}
