//! Generators, quantum elementary polynomials and relations of the quantum ring.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::One;

use super::poly::{Mono, QPoly, MAX_Q, MAX_SIGMA};
use crate::combinatorics::FlagShape;
use crate::error::{Error, Result};

/// The ring `Z[q][sigma]/I^q` before any normal form is computed.
///
/// The level-0 generators `sigma^0_m` are solved away using the first `n - r_1`
/// relations, each of which is linear in `sigma^0_a` with unit coefficient. The
/// remaining variables are `sigma^j_i` for `j = 1..rho`.
#[derive(Debug)]
pub struct RingPresentation {
    shape: FlagShape,
    /// `(level, i)` for each sigma slot.
    vars: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    sigma_weights: Vec<u16>,
    q_weights: Vec<u16>,
    sigma0: Vec<QPoly>,
    relations: Vec<QPoly>,
    eq_cache: Mutex<HashMap<(usize, usize), QPoly>>,
}

impl RingPresentation {
    pub fn new(shape: &FlagShape) -> Result<Self> {
        let rho = shape.rho();
        let mut vars = Vec::new();
        let mut offsets = vec![0; rho + 2];
        for j in 1..=rho {
            offsets[j] = vars.len();
            for i in 1..=shape.r(j) - shape.r(j + 1) {
                vars.push((j, i));
            }
        }
        offsets[rho + 1] = vars.len();
        if vars.len() > MAX_SIGMA || rho > MAX_Q {
            return Err(Error::Shape(format!(
                "{} needs {} generators and {} parameters; limits are {} and {}",
                shape,
                vars.len(),
                rho,
                MAX_SIGMA,
                MAX_Q
            )));
        }
        let sigma_weights = vars.iter().map(|&(_, i)| i as u16).collect();
        let q_weights = (1..=rho).map(|l| shape.q_degree(l) as u16).collect();
        let mut p = RingPresentation {
            shape: shape.clone(),
            vars,
            offsets,
            sigma_weights,
            q_weights,
            sigma0: Vec::new(),
            relations: Vec::new(),
            eq_cache: Mutex::new(HashMap::new()),
        };
        let n = shape.n();
        let top = n - shape.r(1);
        let mut sigma0 = vec![QPoly::one()];
        for a in 1..=top {
            let rest = p.level0(&sigma0, a, a);
            sigma0.push(rest.neg());
        }
        let relations = (top + 1..=n).map(|a| p.level0(&sigma0, a, top + 1)).collect();
        p.sigma0 = sigma0;
        p.relations = relations;
        Ok(p)
    }

    pub fn shape(&self) -> &FlagShape {
        &self.shape
    }

    pub fn num_sigma(&self) -> usize {
        self.vars.len()
    }

    pub fn sigma_weights(&self) -> &[u16] {
        &self.sigma_weights
    }

    pub fn q_weights(&self) -> &[u16] {
        &self.q_weights
    }

    /// The monomial `sigma^level_i`.
    pub fn sigma_mono(&self, level: usize, i: usize) -> Mono {
        let mut m = Mono::ONE;
        m.s[self.offsets[level] + i - 1] = 1;
        m.sdeg = i as u16;
        m
    }

    pub fn q_mono(&self, exps: &[usize]) -> Mono {
        let mut m = Mono::ONE;
        for (l, &e) in exps.iter().enumerate() {
            m.q[l] = e as u8;
            m.qdeg += e as u16 * self.q_weights[l];
        }
        m
    }

    pub fn q_exponents(&self, m: &Mono) -> Vec<usize> {
        (0..self.shape.rho()).map(|l| m.q[l] as usize).collect()
    }

    /// `sigma^level_i` as a polynomial; `sigma^0_i` is its eliminated expression.
    pub fn sigma(&self, level: usize, i: usize) -> QPoly {
        if i == 0 {
            return QPoly::one();
        }
        if level == 0 {
            return self.sigma0.get(i).cloned().unwrap_or_else(QPoly::zero);
        }
        if level > self.shape.rho() || i > self.shape.r(level) - self.shape.r(level + 1) {
            return QPoly::zero();
        }
        QPoly::monomial(self.sigma_mono(level, i), BigInt::one())
    }

    /// `e^q_a(r_0)` with the given values for `sigma^0_m`, `m < limit`.
    fn level0(&self, sigma0: &[QPoly], a: usize, limit: usize) -> QPoly {
        let mut acc = QPoly::zero();
        for m in 0..limit.min(a + 1).min(sigma0.len()) {
            acc = acc.add(&sigma0[m].mul(&self.quantum_elementary(1, a - m)));
        }
        acc.add(&self.q_correction(0, a))
    }

    fn q_correction(&self, l: usize, a: usize) -> QPoly {
        let shape = &self.shape;
        if l + 1 > shape.rho() {
            return QPoly::zero();
        }
        let drop = shape.r(l) - shape.r(l + 2);
        if a < drop {
            return QPoly::zero();
        }
        let mut e = vec![0; shape.rho()];
        e[l] = 1;
        let sign = if (shape.r(l) - shape.r(l + 1) + 1) % 2 == 0 { 1 } else { -1 };
        self.quantum_elementary(l + 2, a - drop).mul_mono(&self.q_mono(&e)).scale(&BigInt::from(sign))
    }

    /// The quantum elementary polynomial `e^q_a(r_l)` for `l = 0..=rho+1`.
    pub fn quantum_elementary(&self, l: usize, a: usize) -> QPoly {
        let shape = &self.shape;
        if a == 0 {
            return QPoly::one();
        }
        if l > shape.rho() || a > shape.r(l) {
            return QPoly::zero();
        }
        if let Some(p) = self.eq_cache.lock().unwrap().get(&(l, a)) {
            return p.clone();
        }
        let p = if l == 0 {
            if self.sigma0.is_empty() {
                return QPoly::zero();
            }
            self.level0(&self.sigma0, a, self.sigma0.len())
        } else {
            let mut acc = QPoly::zero();
            for m in 0..=(shape.r(l) - shape.r(l + 1)).min(a) {
                acc = acc.add(&self.sigma(l, m).mul(&self.quantum_elementary(l + 1, a - m)));
            }
            acc.add(&self.q_correction(l, a))
        };
        self.eq_cache.lock().unwrap().insert((l, a), p.clone());
        p
    }

    /// The relations left after eliminating level 0, of degrees `n - r_1 + 1 ..= n`.
    pub fn relations(&self) -> &[QPoly] {
        &self.relations
    }

    /// Render a polynomial with generator names `s[j,i]` and `q_l`.
    pub fn render(&self, p: &QPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in p.terms().iter().enumerate() {
            let mut factors = Vec::new();
            for (idx, &(j, i)) in self.vars.iter().enumerate() {
                match m.s[idx] {
                    0 => {}
                    1 => factors.push(format!("s{}_{}", j, i)),
                    e => factors.push(format!("s{}_{}^{}", j, i, e)),
                }
            }
            for l in 0..self.shape.rho() {
                match m.q[l] {
                    0 => {}
                    1 => factors.push(format!("q{}", l + 1)),
                    e => factors.push(format!("q{}^{}", l + 1, e)),
                }
            }
            let neg = c.sign() == num_bigint::Sign::Minus;
            let mag = if neg { -c } else { c.clone() };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&factors.join("*"));
            } else {
                out.push_str(&format!("{}*{}", mag, factors.join("*")));
            }
        }
        out
    }
}
