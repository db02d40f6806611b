//! Sparse polynomials in the sigma generators and q parameters.
//!
//! Monomials keep sigma exponents and q exponents in separate fixed slots so the
//! term order can be compared without knowing the ring layout. The order is:
//! sigma-weighted degree, then reverse lex on sigma, then q-weighted degree, then
//! reverse lex on q. Homogeneous elements therefore lead with their q-free part.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub const MAX_SIGMA: usize = 16;
pub const MAX_Q: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    pub s: [u8; MAX_SIGMA],
    pub q: [u8; MAX_Q],
    pub sdeg: u16,
    pub qdeg: u16,
}

impl Mono {
    pub const ONE: Mono = Mono { s: [0; MAX_SIGMA], q: [0; MAX_Q], sdeg: 0, qdeg: 0 };

    pub fn deg(&self) -> u16 {
        self.sdeg + self.qdeg
    }

    pub fn is_q_free(&self) -> bool {
        self.qdeg == 0 && self.q.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..MAX_SIGMA {
            r.s[i] += o.s[i];
        }
        for i in 0..MAX_Q {
            r.q[i] += o.q[i];
        }
        r.sdeg += o.sdeg;
        r.qdeg += o.qdeg;
        r
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.sdeg <= o.sdeg
            && self.qdeg <= o.qdeg
            && self.s.iter().zip(&o.s).all(|(a, b)| a <= b)
            && self.q.iter().zip(&o.q).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        let mut r = *o;
        for i in 0..MAX_SIGMA {
            r.s[i] -= self.s[i];
        }
        for i in 0..MAX_Q {
            r.q[i] -= self.q[i];
        }
        r.sdeg -= self.sdeg;
        r.qdeg -= self.qdeg;
        r
    }

    pub fn lcm(&self, o: &Mono, sw: &[u16], qw: &[u16]) -> Mono {
        let mut r = Mono::ONE;
        for i in 0..MAX_SIGMA {
            r.s[i] = self.s[i].max(o.s[i]);
            r.sdeg += r.s[i] as u16 * sw.get(i).copied().unwrap_or(0);
        }
        for i in 0..MAX_Q {
            r.q[i] = self.q[i].max(o.q[i]);
            r.qdeg += r.q[i] as u16 * qw.get(i).copied().unwrap_or(0);
        }
        r
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        self.s.iter().zip(&o.s).all(|(a, b)| *a == 0 || *b == 0)
            && self.q.iter().zip(&o.q).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn q_part(&self) -> Mono {
        Mono { s: [0; MAX_SIGMA], q: self.q, sdeg: 0, qdeg: self.qdeg }
    }

    pub fn sigma_part(&self) -> Mono {
        Mono { s: self.s, q: [0; MAX_Q], sdeg: self.sdeg, qdeg: 0 }
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.sdeg
            .cmp(&o.sdeg)
            .then_with(|| {
                for i in (0..MAX_SIGMA).rev() {
                    if self.s[i] != o.s[i] {
                        return o.s[i].cmp(&self.s[i]);
                    }
                }
                Ordering::Equal
            })
            .then_with(|| self.qdeg.cmp(&o.qdeg))
            .then_with(|| {
                for i in (0..MAX_Q).rev() {
                    if self.q[i] != o.q[i] {
                        return o.q[i].cmp(&self.q[i]);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Terms sorted by decreasing monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QPoly {
    terms: Vec<(Mono, BigInt)>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::monomial(Mono::ONE, BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        QPoly::monomial(Mono::ONE, c)
    }

    pub fn monomial(m: Mono, c: BigInt) -> Self {
        if c.is_zero() {
            QPoly::zero()
        } else {
            QPoly { terms: vec![(m, c)] }
        }
    }

    pub fn from_map(map: BTreeMap<Mono, BigInt>) -> Self {
        let mut terms: Vec<(Mono, BigInt)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        QPoly { terms }
    }

    pub fn from_terms(mut terms: Vec<(Mono, BigInt)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        QPoly { terms: out }
    }

    /// Terms already sorted in decreasing order with distinct monomials.
    pub fn from_sorted(terms: Vec<(Mono, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        QPoly { terms }
    }

    pub fn split_lead(mut self) -> ((Mono, BigInt), QPoly) {
        let first = self.terms.remove(0);
        (first, self)
    }

    pub fn terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, BigInt)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Mono, BigInt)> {
        self.terms.first()
    }

    /// Degrees present among the terms.
    pub fn degrees(&self) -> Vec<u16> {
        let mut d: Vec<u16> = self.terms.iter().map(|(m, _)| m.deg()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        self.lin(&BigInt::one(), o, &BigInt::one(), &Mono::ONE)
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        self.lin(&BigInt::one(), o, &-BigInt::one(), &Mono::ONE)
    }

    pub fn neg(&self) -> QPoly {
        QPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> QPoly {
        if k.is_zero() {
            return QPoly::zero();
        }
        QPoly { terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> QPoly {
        QPoly { terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    /// `a * self + b * m * o`, merged in one pass.
    pub fn lin(&self, a: &BigInt, o: &QPoly, b: &BigInt, m: &Mono) -> QPoly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let mut i = 0;
        let mut j = 0;
        let one = a.is_one();
        while i < self.terms.len() || j < o.terms.len() {
            let take = if i == self.terms.len() {
                Ordering::Less
            } else if j == o.terms.len() {
                Ordering::Greater
            } else {
                self.terms[i].0.cmp(&o.terms[j].0.mul(m))
            };
            match take {
                Ordering::Greater => {
                    let c = if one { self.terms[i].1.clone() } else { &self.terms[i].1 * a };
                    out.push((self.terms[i].0, c));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((o.terms[j].0.mul(m), &o.terms[j].1 * b));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if one { self.terms[i].1.clone() } else { &self.terms[i].1 * a };
                    let c = c + &o.terms[j].1 * b;
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        QPoly { terms: out }
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut acc: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (ms, cs) in &small.terms {
            for (mb, cb) in &big.terms {
                *acc.entry(ms.mul(mb)).or_insert_with(BigInt::zero) += cs * cb;
            }
        }
        QPoly::from_map(acc)
    }

    pub fn pow(&self, e: usize) -> QPoly {
        let mut r = QPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide by the content and make the leading coefficient positive.
    pub fn primitive(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut g = self.content();
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        QPoly { terms: self.terms.iter().map(|(m, c)| (*m, c / &g)).collect() }
    }

    /// Homogeneous component of total degree `d`.
    pub fn component(&self, d: u16) -> QPoly {
        QPoly { terms: self.terms.iter().filter(|(m, _)| m.deg() == d).cloned().collect() }
    }

    /// Set every q to zero.
    pub fn q_free_part(&self) -> QPoly {
        QPoly { terms: self.terms.iter().filter(|(m, _)| m.is_q_free()).cloned().collect() }
    }

    pub fn uses_sigma(&self, idx: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.s[idx] > 0)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            for (i, &e) in m.s.iter().enumerate() {
                if e > 0 {
                    factors.push(if e == 1 { format!("s{}", i) } else { format!("s{}^{}", i, e) });
                }
            }
            for (i, &e) in m.q.iter().enumerate() {
                if e > 0 {
                    factors.push(if e == 1 { format!("q{}", i + 1) } else { format!("q{}^{}", i + 1, e) });
                }
            }
            let neg = c.is_negative();
            let a = c.abs();
            if k > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            if factors.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", a, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
