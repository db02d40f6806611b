//! Verifiers for the q-hook evaluation of `s^1_lambda` and the column expansion behind it.

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    classify, hook_quotient_tuple, q_hook, q_hook_monomial, remove_column, step_index, Classification, FlagShape,
    Partition,
};
use crate::error::{Error, Result};
use crate::permutations::tuple_to_permutation;
use crate::qring::engine::QuantumRing;
use crate::qring::{ExpansionRecord, QPoly, SchubertExpansion};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Match,
    Mismatch,
    Unconstrained,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expected {
    Value(SchubertExpansion),
    Unconstrained,
}

#[derive(Debug, Clone)]
pub struct TheoremBReport {
    pub shape: FlagShape,
    pub lambda: Partition,
    pub classification: Classification,
    pub expansion: SchubertExpansion,
    pub expected: Expected,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremBJson {
    pub shape: String,
    pub lambda: Vec<usize>,
    pub classification: String,
    pub expansion: Vec<ExpansionRecord>,
    pub expected: Option<Vec<ExpansionRecord>>,
    pub verdict: Verdict,
}

impl TheoremBReport {
    pub fn to_json(&self) -> TheoremBJson {
        TheoremBJson {
            shape: self.shape.to_string(),
            lambda: self.lambda.parts().to_vec(),
            classification: format!("{:?}", self.classification),
            expansion: self.expansion.records(&self.shape),
            expected: match &self.expected {
                Expected::Value(e) => Some(e.records(&self.shape)),
                Expected::Unconstrained => None,
            },
            verdict: self.verdict,
        }
    }
}

impl std::fmt::Display for TheoremBReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} s1{} = {}  [{:?}", self.shape, self.lambda, self.expansion, self.classification)?;
        match &self.expected {
            Expected::Value(e) => write!(f, ", expected {}] {:?}", e, self.verdict),
            Expected::Unconstrained => write!(f, "] {:?}", self.verdict),
        }
    }
}

fn check_box(shape: &FlagShape, lambda: &Partition) -> Result<()> {
    if !lambda.fits(shape.r(1), shape.n()) {
        return Err(Error::Range(format!("{} does not fit in {}x{}", lambda, shape.r(1), shape.n())));
    }
    Ok(())
}

/// The value the q-hook theorem predicts for `s^1_lambda`, if any.
pub fn theorem_b_expected(shape: &FlagShape, lambda: &Partition) -> Result<Expected> {
    match classify(shape, lambda)? {
        Classification::Compatible => {
            let w = tuple_to_permutation(shape, &hook_quotient_tuple(shape, lambda)?);
            let q = if lambda.is_empty() { vec![0; shape.rho()] } else { q_hook_monomial(shape, lambda.width())?.0 };
            Ok(Expected::Value(SchubertExpansion::single(w, q, BigInt::one())))
        }
        Classification::RectOnly => Ok(Expected::Value(SchubertExpansion::new())),
        Classification::Neither => Ok(Expected::Unconstrained),
    }
}

pub fn theorem_b_verify(ring: &QuantumRing, lambda: &Partition) -> Result<TheoremBReport> {
    let shape = ring.shape().clone();
    check_box(&shape, lambda)?;
    let classification = classify(&shape, lambda)?;
    let expansion = ring.schubert_expand(&ring.s_class(1, lambda)?)?;
    let expected = theorem_b_expected(&shape, lambda)?;
    let verdict = match &expected {
        Expected::Value(e) if *e == expansion => Verdict::Match,
        Expected::Value(_) => Verdict::Mismatch,
        Expected::Unconstrained => Verdict::Unconstrained,
    };
    Ok(TheoremBReport { shape, lambda: lambda.clone(), classification, expansion, expected, verdict })
}

/// Check `s^1_lambda = c q^e sigma_w` by a single zero test, without expanding.
pub fn s1_equals(ring: &QuantumRing, lambda: &Partition, expected: &SchubertExpansion) -> Result<bool> {
    let lhs = ring.s_class(1, lambda)?;
    Ok(ring.is_zero(&lhs.sub(&ring.from_schubert(expected)?)))
}

/// `Delta_{lambda/mu}` with the convention that it vanishes unless `mu` fits in `lambda`.
fn delta(ring: &QuantumRing, lambda: &Partition, mu: &Partition, phi: &[usize]) -> QPoly {
    if !lambda.contains(mu) {
        return QPoly::zero();
    }
    ring.delta_determinant(lambda, mu, phi)
}

/// `((I+1)^{extra}, I^{r_{I-1}-r_I}, ..., 1^{n-r_1})`.
fn flag_vector(shape: &FlagShape, big_i: usize, extra: usize) -> Vec<usize> {
    let mut phi = vec![big_i + 1; extra];
    for l in (1..=big_i).rev() {
        phi.extend(std::iter::repeat(l).take(shape.r(l - 1) - shape.r(l)));
    }
    phi
}

fn hook_or_empty(shape: &FlagShape, b: usize) -> Result<Partition> {
    if b == 0 {
        Ok(Partition::empty())
    } else {
        q_hook(shape, b)
    }
}

/// Both sides of the first-column expansion that drives the induction.
pub fn prop_expand_sides(ring: &QuantumRing, lambda: &Partition) -> Result<(QPoly, QPoly)> {
    let shape = ring.shape();
    check_box(shape, lambda)?;
    let b = lambda.width();
    if b == 0 {
        return Err(Error::Range("lambda must be nonempty".into()));
    }
    let n = shape.n();
    let big_i = step_index(shape, b)?;
    let bbar = b - (n - shape.r(big_i));
    let phi = flag_vector(shape, big_i, bbar);
    let psi = flag_vector(shape, big_i, bbar - 1);
    debug_assert_eq!(phi.len(), b);

    let mut q = vec![0; shape.rho()];
    for x in q.iter_mut().take(big_i) {
        *x = 1;
    }
    let rhs = ring.mul(&ring.q_monomial(&q), &delta(ring, lambda, &q_hook(shape, b)?, &phi));

    let inner = hook_or_empty(shape, b - 1)?;
    let lt = lambda.transpose();
    let mut lhs = QPoly::zero();
    for m in 1..=b {
        let a = lt.part(m) as isize - m as isize + 1;
        let e = ring.quantum_elementary(1, a);
        if e.is_zero() {
            continue;
        }
        let d = delta(ring, &remove_column(lambda, m)?, &inner, &psi);
        let term = ring.mul(&e, &d);
        lhs = if m % 2 == 1 { lhs.add(&term) } else { lhs.sub(&term) };
    }
    Ok((lhs, rhs))
}

pub fn prop_expand_verify(ring: &QuantumRing, lambda: &Partition) -> Result<bool> {
    let (lhs, rhs) = prop_expand_sides(ring, lambda)?;
    Ok(ring.is_zero(&lhs.sub(&rhs)))
}

/// `s^1_lambda = sum_m (-1)^{m-1} s^1_{1^{lambda'_m - m + 1}} s^1_{lambda^(m)}`.
pub fn column_expansion_verify(ring: &QuantumRing, lambda: &Partition) -> Result<bool> {
    let b = lambda.width();
    if b == 0 {
        return Ok(true);
    }
    let lt = lambda.transpose();
    let mut rhs = QPoly::zero();
    for m in 1..=b {
        let e = ring.quantum_elementary(1, lt.part(m) as isize - m as isize + 1);
        if e.is_zero() {
            continue;
        }
        let d = delta(ring, &remove_column(lambda, m)?, &Partition::empty(), &vec![1; b - 1]);
        let term = ring.mul(&e, &d);
        rhs = if m % 2 == 1 { rhs.add(&term) } else { rhs.sub(&term) };
    }
    Ok(ring.is_zero(&ring.s_class(1, lambda)?.sub(&rhs)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    /// Uses rayon when the `parallel` feature is on, and runs sequentially otherwise.
    Parallel,
}

pub fn sweep<T: Sync, R: Send>(mode: Mode, items: &[T], f: impl Fn(&T) -> Result<R> + Sync) -> Result<Vec<R>> {
    match mode {
        Mode::Sequential => items.iter().map(f).collect(),
        Mode::Parallel => crate::qring::engine::map_maybe_parallel(items, f),
    }
}

/// Every partition in the `r_1 x n` box, smallest first.
pub fn box_partitions(shape: &FlagShape) -> Vec<Partition> {
    Partition::all_in_box(shape.r(1), shape.n())
}

pub fn theorem_b_sweep(ring: &QuantumRing, lambdas: &[Partition], mode: Mode) -> Result<Vec<TheoremBReport>> {
    sweep(mode, lambdas, |l| theorem_b_verify(ring, l))
}

pub fn prop_expand_sweep(ring: &QuantumRing, lambdas: &[Partition], mode: Mode) -> Result<Vec<bool>> {
    sweep(mode, lambdas, |l| prop_expand_verify(ring, l))
}

/// `count` distinct nonempty partitions of the box, chosen reproducibly from `seed`.
pub fn sample_partitions(shape: &FlagShape, count: usize, seed: u64) -> Vec<Partition> {
    let all: Vec<Partition> = box_partitions(shape).into_iter().filter(|l| !l.is_empty()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pick: Vec<Partition> = all.choose_multiple(&mut rng, count.min(all.len())).cloned().collect();
    pick.sort();
    pick
}
