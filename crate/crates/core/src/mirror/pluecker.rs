//! The Plücker coordinate superpotential, cluster charts and three-term exchanges.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::expr::{Laurent, Monomial, RationalExpr, Symbol};
use super::quiver::LadderQuiver;
use crate::combinatorics::{FlagShape, Partition};
use crate::error::{Error, Result};
use crate::permutations::permutation_to_tuple;
use crate::qring::QuantumRing;

/// Partitions in the `b x (a - b)` box that are empty, maximally wide or maximally tall rectangles.
pub fn frozen_set(a: usize, b: usize) -> Vec<Partition> {
    let mut out = BTreeSet::new();
    out.insert(Partition::empty());
    for k in 1..=b {
        out.insert(Partition::rectangle(k, a - b));
    }
    for c in 1..=a - b {
        out.insert(Partition::rectangle(b, c));
    }
    out.into_iter().collect()
}

fn box_of(shape: &FlagShape, i: usize) -> (usize, usize) {
    (shape.r(i), shape.r(i - 1) - shape.r(i))
}

/// `sum_i sum_{lambda in M} G^i_lambda / p^i_lambda - sum_i r_{i+1} p^i_(1)`, where `G^i_lambda` is the
/// Schubert expansion of `s^i_(1) * s^i_lambda` with each `sigma_mu` replaced by `prod_j p^j_{mu^j}`
/// (`p^j_empty` omitted).
pub fn pluecker_superpotential(ring: &QuantumRing) -> Result<Laurent> {
    let shape = ring.shape();
    let box1 = Partition::new(vec![1])?;
    let mut w = Laurent::zero();
    for i in 1..=shape.rho() {
        let s1 = ring.s_class(i, &box1)?;
        for lam in frozen_set(shape.r(i - 1), shape.r(i)) {
            let f = ring.mul(&s1, &ring.s_class(i, &lam)?);
            let den = Monomial::var(Symbol::P(i, lam.clone()), -1);
            for (perm, q, c) in ring.schubert_expand(&f)?.flat() {
                let mut m = den.clone();
                for (l, e) in q.iter().enumerate() {
                    m = m.mul(&Monomial::var(Symbol::Q(l + 1), *e as i32));
                }
                for (j, mu) in permutation_to_tuple(shape, &perm)?.entries().iter().enumerate() {
                    if !mu.is_empty() {
                        m = m.mul(&Monomial::var(Symbol::P(j + 1, mu.clone()), 1));
                    }
                }
                w.add_term(m, c);
            }
        }
        let r_next = if i < shape.rho() { shape.r(i + 1) } else { 0 };
        w.add_term(Monomial::var(Symbol::P(i, box1.clone()), 1), -BigInt::from(r_next));
    }
    Ok(w)
}

/// A set of Plücker symbols per level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClusterChart {
    shape: FlagShape,
    levels: Vec<BTreeSet<Partition>>,
}

impl ClusterChart {
    pub fn rectangles(shape: &FlagShape) -> ClusterChart {
        let levels = (1..=shape.rho())
            .map(|i| {
                let (h, w) = box_of(shape, i);
                let mut s: BTreeSet<Partition> =
                    (1..=h).flat_map(|j| (1..=w).map(move |k| Partition::rectangle(j, k))).collect();
                s.insert(Partition::empty());
                s
            })
            .collect();
        ClusterChart { shape: shape.clone(), levels }
    }

    pub fn shape(&self) -> &FlagShape {
        &self.shape
    }

    pub fn level(&self, i: usize) -> &BTreeSet<Partition> {
        &self.levels[i - 1]
    }

    pub fn contains(&self, i: usize, lam: &Partition) -> bool {
        self.levels[i - 1].contains(lam)
    }

    pub fn is_frozen(&self, i: usize, lam: &Partition) -> bool {
        frozen_set(self.shape.r(i - 1), self.shape.r(i)).contains(lam)
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        self.levels.iter().enumerate().flat_map(|(i, s)| s.iter().map(move |l| Symbol::P(i + 1, l.clone()))).collect()
    }
}

/// `p_lambda p_mu = p_a p_b + p_c p_d` at one level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exchange {
    pub level: usize,
    pub lambda: Partition,
    pub mu: Partition,
    pub a: Partition,
    pub b: Partition,
    pub c: Partition,
    pub d: Partition,
}

impl Exchange {
    pub fn reversed(&self) -> Exchange {
        Exchange { lambda: self.mu.clone(), mu: self.lambda.clone(), ..self.clone() }
    }

    fn sym(&self, l: &Partition) -> Symbol {
        Symbol::P(self.level, l.clone())
    }

    /// The value of `p_lambda` in the chart containing `p_mu`.
    pub fn substitution(&self) -> (Symbol, RationalExpr) {
        let v = |l: &Partition| RationalExpr::var(self.sym(l));
        let top = v(&self.a).mul(&v(&self.b)).add(&v(&self.c).mul(&v(&self.d)));
        (self.sym(&self.lambda), top.div(&v(&self.mu)).expect("nonzero symbol"))
    }
}

#[cfg(test)]
/// The `b`-subset of `[a]` attached to a partition in the `b x (a - b)` box.
fn subset(lam: &Partition, b: usize) -> Vec<usize> {
    (1..=b).map(|i| lam.part(b + 1 - i) + i).collect()
}

fn from_subset(s: &[usize]) -> Partition {
    let b = s.len();
    Partition::new((1..=b).rev().map(|i| s[i - 1] - i).collect()).expect("increasing subset")
}

/// All three-term relations `D_{Sik} D_{Sjl} = D_{Sij} D_{Skl} + D_{Sil} D_{Sjk}` at level `i`.
pub fn three_term_relations(shape: &FlagShape, level: usize) -> Vec<Exchange> {
    let a = shape.r(level - 1);
    let b = shape.r(level);
    if b < 2 || a < b + 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let all: Vec<usize> = (1..=a).collect();
    for rest in combinations(&all, b - 2) {
        let free: Vec<usize> = all.iter().copied().filter(|x| !rest.contains(x)).collect();
        for quad in combinations(&free, 4) {
            let (i, j, k, l) = (quad[0], quad[1], quad[2], quad[3]);
            let p = |x: usize, y: usize| {
                let mut s = rest.clone();
                s.push(x);
                s.push(y);
                s.sort();
                from_subset(&s)
            };
            let rel = Exchange { level, lambda: p(i, k), mu: p(j, l), a: p(i, j), b: p(k, l), c: p(i, l), d: p(j, k) };
            out.push(rel.clone());
            out.push(rel.reversed());
        }
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (x, &v) in items.iter().enumerate() {
        for mut rest in combinations(&items[x + 1..], k - 1) {
            rest.insert(0, v);
            out.push(rest);
        }
    }
    out
}

/// Exchanges usable from `chart`: `lambda` mutable in the chart, `mu` outside, the rest inside.
pub fn available_exchanges(chart: &ClusterChart, level: usize) -> Vec<Exchange> {
    three_term_relations(chart.shape(), level).into_iter().filter(|e| check_exchange(chart, e).is_ok()).collect()
}

fn check_exchange(chart: &ClusterChart, e: &Exchange) -> Result<()> {
    let i = e.level;
    if i == 0 || i > chart.shape().rho() {
        return Err(Error::Range(format!("level {} out of range", i)));
    }
    if !chart.contains(i, &e.lambda) || chart.is_frozen(i, &e.lambda) {
        return Err(Error::Range(format!("p{}{} is not a mutable chart variable", i, e.lambda)));
    }
    if chart.contains(i, &e.mu) {
        return Err(Error::Range(format!("p{}{} is already in the chart", i, e.mu)));
    }
    for x in [&e.a, &e.b, &e.c, &e.d] {
        if !chart.contains(i, x) {
            return Err(Error::Range(format!("p{}{} is not in the chart", i, x)));
        }
    }
    let (h, w) = box_of(chart.shape(), i);
    let rels = three_term_relations(chart.shape(), i);
    let same = |r: &Exchange| {
        r.lambda == e.lambda
            && r.mu == e.mu
            && ([&r.a, &r.b] == [&e.a, &e.b]
                || [&r.a, &r.b] == [&e.b, &e.a]
                || [&r.a, &r.b] == [&e.c, &e.d]
                || [&r.a, &r.b] == [&e.d, &e.c])
    };
    if !e.mu.fits(h, w) || !rels.iter().any(same) {
        return Err(Error::Range("not a three-term Plücker relation".into()));
    }
    Ok(())
}

/// Replaces `p_lambda` by `p_mu`; returns the new chart and the rule rewriting `p_lambda`.
pub fn mutate(chart: &ClusterChart, e: &Exchange) -> Result<(ClusterChart, (Symbol, RationalExpr))> {
    check_exchange(chart, e)?;
    let mut next = chart.clone();
    next.levels[e.level - 1].remove(&e.lambda);
    next.levels[e.level - 1].insert(e.mu.clone());
    Ok((next, e.substitution()))
}

/// A superpotential written in the variables of one chart, with the rules that rewrite the
/// chart's non-rectangular variables back into rectangles (most recent first).
#[derive(Debug, Clone)]
pub struct ChartExpansion {
    pub chart: ClusterChart,
    pub expr: RationalExpr,
    pub back: Vec<(Symbol, RationalExpr)>,
}

impl ChartExpansion {
    pub fn rectangles(shape: &FlagShape) -> ChartExpansion {
        ChartExpansion {
            chart: ClusterChart::rectangles(shape),
            expr: LadderQuiver::build(shape).rectangles_chart_expansion().into(),
            back: Vec::new(),
        }
    }

    pub fn mutate(&self, e: &Exchange) -> Result<ChartExpansion> {
        let (chart, (sym, value)) = mutate(&self.chart, e)?;
        let mut back = vec![e.reversed().substitution()];
        back.extend(self.back.iter().cloned());
        Ok(ChartExpansion { chart, expr: self.expr.substitute(&sym, &value)?, back })
    }

    /// Rewrites an expression in this chart's variables into rectangle symbols.
    pub fn to_rectangles(&self, x: &RationalExpr) -> Result<RationalExpr> {
        let mut y = x.clone();
        for (s, v) in &self.back {
            y = y.substitute(s, v)?;
        }
        Ok(y)
    }
}

/// Sets every `p^i_empty` to 1.
pub fn normalize_empty(x: &RationalExpr, shape: &FlagShape) -> RationalExpr {
    let mut y = x.clone();
    for i in 1..=shape.rho() {
        y = y.substitute(&Symbol::P(i, Partition::empty()), &RationalExpr::one()).expect("1 is invertible");
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirror::expr::parse_expr;

    fn shape(s: &str) -> FlagShape {
        FlagShape::parse(s).unwrap()
    }

    fn e(s: &str) -> RationalExpr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn frozen_sets() {
        let m: Vec<String> = frozen_set(4, 2).iter().map(|p| p.to_string()).collect();
        assert_eq!(m, ["[]", "[1,1]", "[2]", "[2,2]"]);
        assert_eq!(frozen_set(2, 1).len(), 2);
        for a in 2..=8 {
            for b in 1..a {
                assert_eq!(frozen_set(a, b).len(), a);
            }
        }
    }

    #[test]
    fn subsets_round_trip() {
        for lam in Partition::all_in_box(3, 3) {
            assert_eq!(from_subset(&subset(&lam, 3)), lam);
        }
        assert_eq!(subset(&Partition::new(vec![1]).unwrap(), 2), vec![1, 3]);
    }

    #[test]
    fn grassmannian_exchange() {
        let sh = shape("4;2");
        let rels = three_term_relations(&sh, 1);
        assert_eq!(rels.len(), 2);
        let chart = ClusterChart::rectangles(&sh);
        let ex = available_exchanges(&chart, 1);
        assert_eq!(ex.len(), 1);
        let x = &ex[0];
        assert_eq!((x.lambda.to_string(), x.mu.to_string()), ("[1]".into(), "[2,1]".into()));
        let (_, (s, v)) = mutate(&chart, x).unwrap();
        assert_eq!(s, Symbol::p(1, &[1]));
        assert!(v.equals(&e("(p1[1,1]*p1[2] + p1[]*p1[2,2])/p1[2,1]")));
    }

    #[test]
    fn rectangles_chart_of_the_grassmannian() {
        let sh = shape("4;2");
        let rect: RationalExpr = LadderQuiver::build(&sh).rectangles_chart_expansion().into();
        let want = e("p1[1]/p1[] + p1[2]/p1[1] + p1[1,1]/p1[1] + p1[]*p1[2,2]/(p1[1]*p1[2]) \
                      + p1[]*p1[2,2]/(p1[1]*p1[1,1]) + q1*p1[1]/p1[2,2]");
        assert_eq!(rect, want);
        // The Marsh-Rietsch form, rewritten with the exchange relation, is the same function.
        let mr = e("p1[1]/p1[] + p1[2,1]/p1[2] + p1[2,1]/p1[1,1] + q1*p1[1]/p1[2,2]");
        let (_, value) = Exchange {
            level: 1,
            lambda: Partition::new(vec![2, 1]).unwrap(),
            mu: Partition::new(vec![1]).unwrap(),
            a: Partition::new(vec![1, 1]).unwrap(),
            b: Partition::new(vec![2]).unwrap(),
            c: Partition::empty(),
            d: Partition::new(vec![2, 2]).unwrap(),
        }
        .substitution();
        let back = mr.substitute(&Symbol::p(1, &[2, 1]), &value).unwrap();
        assert!(back.equals(&rect));
        assert_eq!(back.as_laurent().map(|l| l.len()), Some(6));
    }

    #[test]
    fn mutating_twice_is_the_identity() {
        let sh = shape("4;2,1");
        let start = ChartExpansion::rectangles(&sh);
        let x = available_exchanges(&start.chart, 1).remove(0);
        let once = start.mutate(&x).unwrap();
        assert!(once.chart.contains(1, &Partition::new(vec![2, 1]).unwrap()));
        let twice = once.mutate(&x.reversed()).unwrap();
        assert_eq!(twice.chart, start.chart);
        assert!(twice.expr.equals(&start.expr));
        assert!(once.to_rectangles(&once.expr).unwrap().equals(&start.expr));
    }

    #[test]
    fn chain_rule_after_one_mutation() {
        let sh = shape("4;2");
        let start = ChartExpansion::rectangles(&sh);
        let x = available_exchanges(&start.chart, 1).remove(0);
        let next = start.mutate(&x).unwrap();
        let (lam, value) = x.substitution();
        let at = |y: &RationalExpr| y.substitute(&lam, &value).unwrap();
        let d_lam = at(&start.expr.partial(&lam));
        for alpha in next.chart.symbols() {
            let lhs = next.expr.partial(&alpha);
            let rhs = value.partial(&alpha).mul(&d_lam).add(&at(&start.expr.partial(&alpha)));
            assert!(lhs.equals(&rhs), "{}", alpha);
        }
    }

    #[test]
    fn bad_exchanges_are_rejected() {
        let sh = shape("4;2");
        let chart = ClusterChart::rectangles(&sh);
        let x = available_exchanges(&chart, 1).remove(0);
        assert!(mutate(&chart, &x.reversed()).is_err());
        let frozen = Exchange { lambda: Partition::new(vec![2]).unwrap(), ..x.clone() };
        assert!(mutate(&chart, &frozen).is_err());
    }

    #[test]
    fn superpotentials_of_small_flags() {
        let ring = QuantumRing::new(&shape("4;2,1")).unwrap();
        let w = pluecker_superpotential(&ring).unwrap();
        let want = e("p1[1]/p1[] + (p1[2,1] + q1)/p1[2] + p1[2,1]/p1[1,1] + q1*p1[1]*p2[1]/p1[2,2] \
                      + p2[1]/p2[] + q2/p2[1]");
        assert_eq!(RationalExpr::from(w), want);
        let ring = QuantumRing::new(&shape("4;2")).unwrap();
        let w = pluecker_superpotential(&ring).unwrap();
        assert_eq!(RationalExpr::from(w), e("p1[1]/p1[] + p1[2,1]/p1[2] + p1[2,1]/p1[1,1] + q1*p1[1]/p1[2,2]"));
    }

    #[test]
    fn superpotential_of_a_three_step_flag() {
        let ring = QuantumRing::new(&shape("6;4,2,1")).unwrap();
        let w = pluecker_superpotential(&ring).unwrap();
        let want = e("p1[1]/p1[] + p1[2,1,1,1]/p1[1,1,1,1] + p1[2,1]/p1[2] + (p1[2,2,1] + q1*p1[1])/p1[2,2] \
                      + (p1[2,2,2,1] + q1*p1[1,1]*p2[1])/p1[2,2,2] + q1*p1[1,1,1]*p2[1,1]/p1[2,2,2,2] \
                      + p2[1]/p2[] + p2[2,1]/p2[1,1] + (p2[2,1] + q2)/p2[2] + q2*p2[1]*p3[1]/p2[2,2] \
                      + p3[1]/p3[] + q3/p3[1]");
        assert_eq!(RationalExpr::from(w.clone()), want);
        assert_eq!(w.len(), 15);
    }
}
