//! Buchberger's algorithm for homogeneous ideals over the integers.
//!
//! Reduction is fraction-free: reducing `f` by `g` scales `f` by the leading
//! coefficient of `g` (divided by a gcd), and basis elements are kept primitive.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::poly::{Mono, QPoly};

#[derive(Debug, Clone)]
pub struct Groebner {
    basis: Vec<QPoly>,
    leads: Vec<Mono>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    deg: u16,
    lcm: Mono,
    i: usize,
    j: usize,
}

/// Result of reducing a polynomial: `scale * input = reduced + (ideal element)`.
pub struct Reduced {
    pub poly: QPoly,
    pub scale: BigInt,
}

impl Groebner {
    pub fn compute(gens: &[QPoly], sw: &[u16], qw: &[u16]) -> Groebner {
        let mut gb = Groebner { basis: Vec::new(), leads: Vec::new() };
        let mut pairs: BTreeSet<Pair> = BTreeSet::new();
        let mut queue: Vec<QPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.primitive()).collect();
        queue.sort_by_key(|g| g.lead().unwrap().0.deg());
        let mut qi = 0;
        loop {
            // next input generator or S-pair, lowest degree first
            let next_pair_deg = pairs.iter().next().map(|p| p.deg);
            let next_gen_deg = queue.get(qi).map(|g| g.lead().unwrap().0.deg());
            let h = match (next_gen_deg, next_pair_deg) {
                (None, None) => break,
                (Some(dg), Some(dp)) if dg <= dp => {
                    qi += 1;
                    queue[qi - 1].clone()
                }
                (Some(_), None) => {
                    qi += 1;
                    queue[qi - 1].clone()
                }
                _ => {
                    let p = *pairs.iter().next().unwrap();
                    pairs.remove(&p);
                    gb.spoly(p.i, p.j, &p.lcm)
                }
            };
            let r = gb.reduce_full(&h).poly;
            if r.is_zero() {
                continue;
            }
            let r = r.primitive();
            gb.insert(r, &mut pairs, sw, qw);
        }
        gb.interreduce();
        gb
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Mono) -> QPoly {
        let (mi, ci) = self.basis[i].lead().unwrap();
        let (mj, cj) = self.basis[j].lead().unwrap();
        let g = ci.gcd(cj);
        let ai = cj / &g;
        let aj = ci / &g;
        let ui = mi.quotient_of(lcm);
        let uj = mj.quotient_of(lcm);
        self.basis[i].mul_mono(&ui).lin(&ai, &self.basis[j], &-aj, &uj)
    }

    /// Gebauer-Moeller update.
    fn insert(&mut self, h: QPoly, pairs: &mut BTreeSet<Pair>, sw: &[u16], qw: &[u16]) {
        let t = self.basis.len();
        let lt = h.lead().unwrap().0;
        // drop old pairs whose lcm is divisible by lt and strictly bigger than both new lcms
        let stale: Vec<Pair> = pairs
            .iter()
            .filter(|p| {
                lt.divides(&p.lcm)
                    && p.lcm != lt.lcm(&self.leads[p.i], sw, qw)
                    && p.lcm != lt.lcm(&self.leads[p.j], sw, qw)
            })
            .copied()
            .collect();
        for p in stale {
            pairs.remove(&p);
        }
        let live: Vec<usize> = (0..t).filter(|&i| !self.basis[i].is_zero()).collect();
        let mut cands: Vec<(Mono, usize)> = live.iter().map(|&i| (lt.lcm(&self.leads[i], sw, qw), i)).collect();
        let mut keep: Vec<(Mono, usize, bool)> = Vec::new();
        cands.sort();
        for (k, &(l, i)) in cands.iter().enumerate() {
            // chain criterion among the new pairs
            let dominated =
                cands.iter().enumerate().any(|(k2, &(l2, _))| k2 != k && l2.divides(&l) && (l2 != l || k2 < k));
            if dominated {
                continue;
            }
            keep.push((l, i, self.leads[i].coprime(&lt)));
        }
        for (l, i, coprime) in keep {
            if !coprime {
                pairs.insert(Pair { deg: l.deg(), lcm: l, i, j: t });
            }
        }
        // old elements whose lead is now divisible by lt are redundant for future pairs
        self.basis.push(h);
        self.leads.push(lt);
    }

    /// Reduce every term of `f`.
    pub fn reduce_full(&self, f: &QPoly) -> Reduced {
        let mut scale = BigInt::one();
        let mut done: Vec<(Mono, BigInt)> = Vec::new();
        let mut rest = f.clone();
        while let Some((m, c)) = rest.lead().cloned() {
            match self.find_divisor(&m) {
                Some(k) => {
                    let (gm, gc) = self.basis[k].lead().unwrap();
                    let g = c.gcd(gc);
                    let mut a = gc / &g;
                    let mut b = &c / &g;
                    if a.is_negative() {
                        a = -a;
                        b = -b;
                    }
                    let u = gm.quotient_of(&m);
                    rest = rest.lin(&a, &self.basis[k], &-b, &u);
                    if !a.is_one() {
                        for t in done.iter_mut() {
                            t.1 *= &a;
                        }
                        scale *= &a;
                    }
                }
                None => {
                    let (first, tail) = rest.split_lead();
                    done.push(first);
                    rest = tail;
                }
            }
        }
        Reduced { poly: QPoly::from_sorted(done), scale }
    }

    fn find_divisor(&self, m: &Mono) -> Option<usize> {
        (0..self.basis.len()).find(|&k| !self.basis[k].is_zero() && self.leads[k].divides(m))
    }

    fn interreduce(&mut self) {
        // drop elements with a redundant lead, then tail-reduce the rest
        let n = self.basis.len();
        let mut alive = vec![true; n];
        for i in 0..n {
            for j in 0..n {
                if i != j
                    && alive[j]
                    && self.leads[j].divides(&self.leads[i])
                    && (self.leads[j] != self.leads[i] || j < i)
                {
                    alive[i] = false;
                    break;
                }
            }
        }
        let mut basis: Vec<QPoly> = Vec::new();
        let mut leads = Vec::new();
        for i in 0..n {
            if alive[i] {
                basis.push(self.basis[i].clone());
                leads.push(self.leads[i]);
            }
        }
        let mut order: Vec<usize> = (0..basis.len()).collect();
        order.sort_by(|&a, &b| leads[a].cmp(&leads[b]));
        self.basis = basis;
        self.leads = leads;
        for &i in &order {
            let f = self.basis[i].clone();
            let head = QPoly::monomial(f.lead().unwrap().0, f.lead().unwrap().1.clone());
            let tail = f.sub(&head);
            let others = Groebner {
                basis: self
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(k, p)| if k == i { QPoly::zero() } else { p.clone() })
                    .collect(),
                leads: self.leads.clone(),
            };
            let r = others.reduce_full(&tail);
            self.basis[i] = head.scale(&r.scale).add(&r.poly).primitive();
        }
        let mut idx: Vec<usize> = (0..self.basis.len()).collect();
        idx.sort_by(|&a, &b| self.leads[a].cmp(&self.leads[b]));
        self.basis = idx.iter().map(|&i| self.basis[i].clone()).collect();
        self.leads = idx.iter().map(|&i| self.leads[i]).collect();
    }

    pub fn basis(&self) -> &[QPoly] {
        &self.basis
    }

    pub fn leads(&self) -> &[Mono] {
        &self.leads
    }

    pub fn is_standard(&self, m: &Mono) -> bool {
        !self.leads.iter().any(|l| l.divides(m))
    }

    /// True when every leading coefficient is `+-1`, so reduction never rescales.
    pub fn is_monic(&self) -> bool {
        self.basis.iter().all(|g| g.lead().map(|(_, c)| c.abs().is_one()).unwrap_or(true))
    }

    pub fn max_degree(&self) -> u16 {
        self.leads.iter().map(|m| m.deg()).max().unwrap_or(0)
    }
}
