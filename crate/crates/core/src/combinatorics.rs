//! Partitions, flag shapes, q-hooks and the hook quotient tuple.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The data `(n; r_1 > ... > r_rho)` of a partial flag variety.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlagShape {
    n: usize,
    r: Vec<usize>,
}

impl FlagShape {
    pub fn new(n: usize, r: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape("n must be positive".into()));
        }
        if r.is_empty() {
            return Err(Error::Shape("need at least one step".into()));
        }
        for w in r.windows(2) {
            if w[0] <= w[1] {
                return Err(Error::Shape(format!("steps must decrease strictly: {:?}", r)));
            }
        }
        if r[0] >= n || *r.last().unwrap() == 0 {
            return Err(Error::Shape(format!("steps must lie in (0,{}): {:?}", n, r)));
        }
        Ok(FlagShape { n, r })
    }

    /// The Grassmannian of `r`-dimensional quotients of `n`-space, as a one-step flag.
    pub fn grassmannian(n: usize, r: usize) -> Result<Self> {
        FlagShape::new(n, vec![r])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rho(&self) -> usize {
        self.r.len()
    }

    pub fn steps(&self) -> &[usize] {
        &self.r
    }

    /// `r_l` with the conventions `r_0 = n` and `r_{rho+1} = 0`.
    pub fn r(&self, l: usize) -> usize {
        if l == 0 {
            self.n
        } else if l <= self.rho() {
            self.r[l - 1]
        } else {
            0
        }
    }

    /// Degree of `q_l`, which is `r_{l-1} - r_{l+1}`.
    pub fn q_degree(&self, l: usize) -> usize {
        self.r(l - 1) - self.r(l + 1)
    }

    /// Box `(rows, cols)` of the i-th Grassmannian factor: `r_i x (r_{i-1} - r_i)`.
    pub fn block(&self, i: usize) -> (usize, usize) {
        (self.r(i), self.r(i - 1) - self.r(i))
    }

    pub fn dimension(&self) -> usize {
        (1..=self.rho()).map(|i| self.r(i) * (self.r(i - 1) - self.r(i))).sum()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (head, tail) = s.split_once(';').ok_or(Error::Parse { pos: 0, msg: "expected `n;r1,r2,...`".into() })?;
        let n = head.trim().parse::<usize>().map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })?;
        let offset = head.len() + 1;
        let r = parse_list(tail, offset)?;
        FlagShape::new(n, r)
    }
}

impl fmt::Display for FlagShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.r.iter().map(|x| x.to_string()).collect();
        write!(f, "{};{}", self.n, r.join(","))
    }
}

fn parse_list(s: &str, offset: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut pos = offset;
    for piece in s.split(',') {
        let t = piece.trim();
        if t.is_empty() {
            pos += piece.len() + 1;
            continue;
        }
        let v = t.parse::<usize>().map_err(|e| Error::Parse {
            pos: pos + (piece.len() - piece.trim_start().len()),
            msg: format!("`{}`: {}", t, e),
        })?;
        out.push(v);
        pos += piece.len() + 1;
    }
    Ok(out)
}

/// A partition, stored as weakly decreasing parts without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Partition(format!("parts must weakly decrease: {:?}", parts)));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The rectangle with `rows` rows of length `cols`.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if rows == 0 || cols == 0 {
            Partition::empty()
        } else {
            Partition(vec![cols; rows])
        }
    }

    /// A single column of height `a`.
    pub fn column(a: usize) -> Self {
        Partition::rectangle(a, 1)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Part `i` counted from 1; zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn transpose(&self) -> Partition {
        let w = self.width();
        let mut t = Vec::with_capacity(w);
        for c in 1..=w {
            t.push(self.0.iter().filter(|&&p| p >= c).count());
        }
        Partition(t)
    }

    /// Column length `lambda'_c`, counted from 1.
    pub fn col(&self, c: usize) -> usize {
        if c == 0 {
            return 0;
        }
        self.0.iter().filter(|&&p| p >= c).count()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.height() <= self.height() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn fits(&self, rows: usize, cols: usize) -> bool {
        self.height() <= rows && self.width() <= cols
    }

    pub fn is_rectangle(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn from_transpose(cols: &[usize]) -> Result<Partition> {
        Partition::new(cols.to_vec()).map(|p| p.transpose())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or(Error::Parse { pos: 0, msg: "partition must be written as [a,b,...]".into() })?;
        let start = s.find('[').unwrap_or(0) + 1;
        Partition::new(parse_list(inner, start)?)
    }

    /// All partitions inside a `rows x cols` box, in reverse lexicographic order of parts.
    pub fn all_in_box(rows: usize, cols: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition::new(cur.clone()).unwrap());
            if cur.len() == rows {
                return;
            }
            for p in 1..=max {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        rec(rows, cols, &mut cur, &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", p.join(","))
    }
}

/// A tuple `(mu^1, ..., mu^rho)` with `mu^i` inside the `r_i x (r_{i-1} - r_i)` box.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionTuple(Vec<Partition>);

impl PartitionTuple {
    pub fn new(shape: &FlagShape, entries: Vec<Partition>) -> Result<Self> {
        if entries.len() != shape.rho() {
            return Err(Error::Partition(format!(
                "tuple has {} entries, shape has {} steps",
                entries.len(),
                shape.rho()
            )));
        }
        for (k, mu) in entries.iter().enumerate() {
            let (rows, cols) = shape.block(k + 1);
            if !mu.fits(rows, cols) {
                return Err(Error::Partition(format!("entry {} = {} does not fit in {}x{}", k + 1, mu, rows, cols)));
            }
        }
        Ok(PartitionTuple(entries))
    }

    pub fn empty(shape: &FlagShape) -> Self {
        PartitionTuple(vec![Partition::empty(); shape.rho()])
    }

    pub fn entries(&self) -> &[Partition] {
        &self.0
    }

    /// Entry `i`, counted from 1.
    pub fn get(&self, i: usize) -> &Partition {
        &self.0[i - 1]
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|p| p.size()).sum()
    }

    /// Every tuple for the shape.
    pub fn all(shape: &FlagShape) -> Vec<PartitionTuple> {
        let mut acc: Vec<Vec<Partition>> = vec![Vec::new()];
        for i in 1..=shape.rho() {
            let (rows, cols) = shape.block(i);
            let opts = Partition::all_in_box(rows, cols);
            let mut next = Vec::new();
            for a in &acc {
                for p in &opts {
                    let mut v = a.clone();
                    v.push(p.clone());
                    next.push(v);
                }
            }
            acc = next;
        }
        acc.into_iter().map(PartitionTuple).collect()
    }
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", p.join(","))
    }
}

/// A skew shape `outer / inner`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::Partition(format!("{} is not contained in {}", inner, outer)));
        }
        Ok(SkewShape { outer, inner })
    }

    /// Boxes `(row, col)` counted from 1.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.outer.height() {
            for j in self.inner.part(i) + 1..=self.outer.part(i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }
}

/// Exponent vector of a monomial in `q_1, ..., q_rho`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QMonomial(pub Vec<usize>);

impl QMonomial {
    pub fn one(rho: usize) -> Self {
        QMonomial(vec![0; rho])
    }

    pub fn degree(&self, shape: &FlagShape) -> usize {
        self.0.iter().enumerate().map(|(l, e)| e * shape.q_degree(l + 1)).sum()
    }

    pub fn mul(&self, other: &QMonomial) -> QMonomial {
        QMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `q_1 q_2 ... q_k`.
    pub fn prefix(rho: usize, k: usize) -> QMonomial {
        QMonomial((0..rho).map(|l| usize::from(l < k)).collect())
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (l, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("q{}", l + 1)),
                _ => parts.push(format!("q{}^{}", l + 1, e)),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Compatible,
    RectOnly,
    Neither,
}

fn check_b(shape: &FlagShape, b: usize) -> Result<()> {
    if b == 0 || b > shape.n() {
        return Err(Error::Range(format!("width {} outside (0,{}]", b, shape.n())));
    }
    Ok(())
}

/// The unique `I` with `n - r_I < b <= n - r_{I+1}`.
pub fn step_index(shape: &FlagShape, b: usize) -> Result<usize> {
    check_b(shape, b)?;
    let n = shape.n();
    (0..=shape.rho())
        .find(|&i| n - shape.r(i) < b && b <= n - shape.r(i + 1))
        .ok_or_else(|| Error::Range(format!("no step index for b={}", b)))
}

/// The q-hook `H_b`.
pub fn q_hook(shape: &FlagShape, b: usize) -> Result<Partition> {
    let i = step_index(shape, b)?;
    if i == 0 {
        return Ok(Partition::empty());
    }
    let n = shape.n();
    let tall = (b + shape.r(1)).saturating_sub(n);
    let arm = (b + shape.r(i)).saturating_sub(n);
    let arm_rows = (n - shape.r(i + 1)).saturating_sub(b);
    let mut parts = vec![b; tall];
    if arm > 0 {
        parts.extend(std::iter::repeat(arm).take(arm_rows));
    }
    Partition::new(parts)
}

/// The rectangle `R_b = (b^{b-n+r_1})`.
pub fn max_rectangle(shape: &FlagShape, b: usize) -> Result<Partition> {
    check_b(shape, b)?;
    let rows = (b + shape.r(1)).saturating_sub(shape.n());
    Ok(Partition::rectangle(rows, b))
}

/// The monomial `q^{H_b}`.
pub fn q_hook_monomial(shape: &FlagShape, b: usize) -> Result<QMonomial> {
    let big_i = step_index(shape, b)?;
    let rho = shape.rho();
    let mut e = vec![0; rho];
    for j in 1..big_i {
        for x in e.iter_mut().take(j) {
            *x += shape.r(j) - shape.r(j + 1);
        }
    }
    if big_i >= 1 {
        let extra = b - (shape.n() - shape.r(big_i));
        for x in e.iter_mut().take(big_i) {
            *x += extra;
        }
    }
    Ok(QMonomial(e))
}

fn check_lambda(shape: &FlagShape, lambda: &Partition) -> Result<()> {
    if !lambda.fits(shape.r(1), shape.n()) {
        return Err(Error::Range(format!("{} does not fit in {}x{}", lambda, shape.r(1), shape.n())));
    }
    Ok(())
}

pub fn classify(shape: &FlagShape, lambda: &Partition) -> Result<Classification> {
    check_lambda(shape, lambda)?;
    if lambda.is_empty() {
        return Ok(Classification::Compatible);
    }
    let b = lambda.width();
    if lambda.contains(&q_hook(shape, b)?) {
        Ok(Classification::Compatible)
    } else if lambda.contains(&max_rectangle(shape, b)?) {
        Ok(Classification::RectOnly)
    } else {
        Ok(Classification::Neither)
    }
}

/// The tuple read off `lambda / H_{lambda_1}` by column blocks.
pub fn hook_quotient_tuple(shape: &FlagShape, lambda: &Partition) -> Result<PartitionTuple> {
    if classify(shape, lambda)? != Classification::Compatible {
        return Err(Error::Incompatible(lambda.to_string()));
    }
    let rho = shape.rho();
    let mut entries = vec![Partition::empty(); rho];
    if lambda.is_empty() {
        return PartitionTuple::new(shape, entries);
    }
    let b = lambda.width();
    let big_i = step_index(shape, b)?;
    let hook = q_hook(shape, b)?;
    let n = shape.n();
    // column ranges (lo, hi), block l = 1..=I from the right
    let mut hi = b;
    let mut blocks = Vec::new();
    for l in 1..=big_i {
        let w = shape.r(l - 1) - shape.r(l);
        blocks.push((l, hi + 1 - w, hi));
        hi -= w;
    }
    let bbar = b - (n - shape.r(big_i));
    debug_assert_eq!(hi, bbar);
    if big_i < rho && bbar > 0 {
        blocks.push((big_i + 1, 1, bbar));
    }
    for (l, lo, hi) in blocks {
        let top = hook.col(lo);
        let mut parts = Vec::new();
        for row in top + 1..=lambda.height() {
            let len = lambda.part(row).min(hi).saturating_sub(lo - 1);
            parts.push(len);
        }
        entries[l - 1] = Partition::new(parts)?;
    }
    PartitionTuple::new(shape, entries)
}

/// `lambda^(m)`: drop column `m` and lengthen columns `1..m-1` by one.
pub fn remove_column(lambda: &Partition, m: usize) -> Result<Partition> {
    let b = lambda.width();
    if m == 0 || m > b {
        return Err(Error::Range(format!("column {} outside 1..={}", m, b)));
    }
    let t = lambda.transpose();
    let mut cols = Vec::with_capacity(b - 1);
    for i in 1..m {
        cols.push(t.part(i) + 1);
    }
    for i in m + 1..=b {
        cols.push(t.part(i));
    }
    Partition::from_transpose(&cols)
}
