//! Laurent polynomials and formal quotients in Plücker symbols, quiver variables and q.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::Partition;
use crate::error::{Error, Result};

/// A variable. `Q(l)` is `q_l`, `P(i, lambda)` is `p^i_lambda`, `Z(row, col)` a quiver variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Q(usize),
    P(usize, Partition),
    Z(usize, usize),
}

impl Symbol {
    pub fn p(level: usize, parts: &[usize]) -> Symbol {
        Symbol::P(level, Partition::new(parts.to_vec()).expect("partition"))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Q(l) => write!(f, "q{}", l),
            Symbol::P(i, l) => write!(f, "p{}{}", i, l),
            Symbol::Z(r, c) => write!(f, "z[{},{}]", r, c),
        }
    }
}

/// A Laurent monomial; exponents are nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(BTreeMap<Symbol, i32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(s: Symbol, e: i32) -> Self {
        let mut m = Monomial::one();
        m.bump(&s, e);
        m
    }

    pub fn exps(&self) -> &BTreeMap<Symbol, i32> {
        &self.0
    }

    pub fn exp(&self, s: &Symbol) -> i32 {
        self.0.get(s).copied().unwrap_or(0)
    }

    fn bump(&mut self, s: &Symbol, e: i32) {
        if e == 0 {
            return;
        }
        let v = self.0.entry(s.clone()).or_insert(0);
        *v += e;
        if *v == 0 {
            self.0.remove(s);
        }
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = self.clone();
        for (s, e) in &o.0 {
            m.bump(s, *e);
        }
        m
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|(s, e)| (s.clone(), -e)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Splits into the parts with positive and with negated negative exponents.
    pub fn split(&self) -> (Monomial, Monomial) {
        let pos = self.0.iter().filter(|(_, e)| **e > 0).map(|(s, e)| (s.clone(), *e)).collect();
        let neg = self.0.iter().filter(|(_, e)| **e < 0).map(|(s, e)| (s.clone(), -e)).collect();
        (Monomial(pos), Monomial(neg))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{}^{}", s, e) }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// An integer Laurent polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Laurent(BTreeMap<Monomial, BigInt>);

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Laurent::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        let mut l = Laurent::zero();
        l.add_term(m, c);
        l
    }

    pub fn var(s: Symbol) -> Self {
        Laurent::term(Monomial::var(s, 1), BigInt::one())
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(m.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (m, c) in &o.0 {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Laurent {
        Laurent(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut r = Laurent::zero();
        for (a, x) in &self.0 {
            for (b, y) in &o.0 {
                r.add_term(a.mul(b), x * y);
            }
        }
        r
    }

    pub fn mul_mono(&self, m: &Monomial) -> Laurent {
        Laurent(self.0.iter().map(|(a, c)| (a.mul(m), c.clone())).collect())
    }

    pub fn pow(&self, e: u32) -> Laurent {
        let mut r = Laurent::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn derivative(&self, s: &Symbol) -> Laurent {
        let mut r = Laurent::zero();
        for (m, c) in &self.0 {
            let e = m.exp(s);
            if e != 0 {
                r.add_term(m.mul(&Monomial::var(s.clone(), -1)), c * BigInt::from(e));
            }
        }
        r
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.0.keys().flat_map(|m| m.0.keys().cloned()).collect()
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        if self.0.len() == 1 {
            self.0.iter().next()
        } else {
            None
        }
    }

    /// Writes `self = u * m * f` with `u = +-1`, `m` a monomial and `f` having no monomial factor
    /// and a positive leading coefficient.
    fn normalize_factor(&self) -> (BigInt, Monomial, Laurent) {
        let mut low: BTreeMap<Symbol, i32> = BTreeMap::new();
        let mut first = true;
        for m in self.0.keys() {
            let syms: BTreeSet<&Symbol> = m.0.keys().chain(low.keys()).collect();
            let mut next = BTreeMap::new();
            for s in syms {
                let e = if first { m.exp(s) } else { m.exp(s).min(low.get(s).copied().unwrap_or(0)) };
                if e != 0 {
                    next.insert(s.clone(), e);
                }
            }
            low = next;
            first = false;
        }
        let g = Monomial(low);
        let f = self.mul_mono(&g.inv());
        let sign =
            if f.0.values().next_back().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
        let f = if sign.is_negative() { f.neg() } else { f };
        (sign, g, f)
    }
}

fn write_coef_term(out: &mut String, c: &BigInt, body: &str, first: bool) {
    if first {
        if c.is_negative() {
            out.push('-');
        }
    } else {
        out.push_str(if c.is_negative() { " - " } else { " + " });
    }
    let a = c.abs();
    if body == "1" {
        out.push_str(&a.to_string());
    } else if a.is_one() {
        out.push_str(body);
    } else {
        out.push_str(&format!("{}*{}", a, body));
    }
}

impl fmt::Display for Laurent {
    /// One fraction per term, e.g. `-2*q1*p1[1]/(p1[2]*p1[1,1])`, ordered by q-degree, then
    /// denominator, then numerator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(i32, Monomial, Monomial, &BigInt)> = self
            .0
            .iter()
            .map(|(m, c)| {
                let (num, den) = m.split();
                let qdeg = m.0.iter().filter(|(s, _)| matches!(s, Symbol::Q(_))).map(|(_, e)| e).sum();
                (qdeg, den, num, c)
            })
            .collect();
        terms.sort();
        let mut out = String::new();
        for (i, (_, den, num, c)) in terms.into_iter().enumerate() {
            write_coef_term(&mut out, c, &num.to_string(), i == 0);
            if den.0.len() > 1 || den.0.values().any(|e| *e > 1) {
                out.push_str(&format!("/({})", den));
            } else if !den.is_one() {
                out.push_str(&format!("/{}", den));
            }
        }
        write!(f, "{}", out)
    }
}

/// A Laurent numerator over a product of non-monomial polynomial factors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalExpr {
    num: Laurent,
    den: BTreeMap<Laurent, u32>,
}

impl From<Laurent> for RationalExpr {
    fn from(num: Laurent) -> Self {
        RationalExpr { num, den: BTreeMap::new() }
    }
}

impl RationalExpr {
    pub fn zero() -> Self {
        Laurent::zero().into()
    }

    pub fn one() -> Self {
        Laurent::one().into()
    }

    pub fn constant(c: i64) -> Self {
        Laurent::constant(BigInt::from(c)).into()
    }

    pub fn var(s: Symbol) -> Self {
        Laurent::var(s).into()
    }

    pub fn monomial(m: Monomial) -> Self {
        Laurent::term(m, BigInt::one()).into()
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<Laurent, u32> {
        &self.den
    }

    /// The Laurent polynomial, if there are no polynomial denominators.
    pub fn as_laurent(&self) -> Option<&Laurent> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut s = self.num.symbols();
        for f in self.den.keys() {
            s.extend(f.symbols());
        }
        s
    }

    fn times_factors(num: &Laurent, fs: &BTreeMap<Laurent, u32>) -> Laurent {
        let mut r = num.clone();
        for (f, e) in fs {
            r = r.mul(&f.pow(*e));
        }
        r
    }

    pub fn add(&self, o: &RationalExpr) -> RationalExpr {
        let mut den = self.den.clone();
        for (f, e) in &o.den {
            let v = den.entry(f.clone()).or_insert(0);
            *v = (*v).max(*e);
        }
        let missing = |own: &BTreeMap<Laurent, u32>| -> BTreeMap<Laurent, u32> {
            den.iter()
                .filter_map(|(f, e)| {
                    let k = e - own.get(f).copied().unwrap_or(0);
                    (k > 0).then(|| (f.clone(), k))
                })
                .collect()
        };
        let num =
            Self::times_factors(&self.num, &missing(&self.den)).add(&Self::times_factors(&o.num, &missing(&o.den)));
        RationalExpr { num, den }.tidy()
    }

    pub fn neg(&self) -> RationalExpr {
        RationalExpr { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RationalExpr) -> RationalExpr {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RationalExpr) -> RationalExpr {
        let mut den = self.den.clone();
        for (f, e) in &o.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        RationalExpr { num: self.num.mul(&o.num), den }.tidy()
    }

    /// Drops factors that divide the numerator exactly, one power at a time.
    fn tidy(mut self) -> RationalExpr {
        if self.num.is_zero() {
            return RationalExpr::zero();
        }
        let factors: Vec<Laurent> = self.den.keys().cloned().collect();
        for f in factors {
            while self.den.get(&f).copied().unwrap_or(0) > 0 {
                match exact_quotient(&self.num, &f) {
                    Some(q) => {
                        self.num = q;
                        let e = self.den.get_mut(&f).unwrap();
                        *e -= 1;
                        if *e == 0 {
                            self.den.remove(&f);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    pub fn inv(&self) -> Result<RationalExpr> {
        if self.num.is_zero() {
            return Err(Error::Range("division by zero expression".into()));
        }
        let num = Self::times_factors(&Laurent::one(), &self.den);
        if let Some((m, c)) = self.num.as_monomial() {
            if c.abs().is_one() {
                return Ok(RationalExpr::from(num.mul_mono(&m.inv()).mul(&Laurent::constant(c.clone()))));
            }
        }
        let (sign, g, f) = self.num.normalize_factor();
        let mut den = BTreeMap::new();
        if !(f.len() == 1 && f.as_monomial().is_some_and(|(m, _)| m.is_one())) {
            den.insert(f.clone(), 1);
        } else if !f.as_monomial().unwrap().1.is_one() {
            return Err(Error::Range(format!("cannot invert integer {} over Z", f)));
        }
        let num = num.mul_mono(&g.inv()).mul(&Laurent::constant(sign));
        Ok(RationalExpr { num, den })
    }

    pub fn div(&self, o: &RationalExpr) -> Result<RationalExpr> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<RationalExpr> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut r = RationalExpr::one();
        for _ in 0..e.unsigned_abs() {
            r = r.mul(&base);
        }
        Ok(r)
    }

    pub fn partial(&self, s: &Symbol) -> RationalExpr {
        let moving: Vec<(&Laurent, u32, Laurent)> =
            self.den.iter().map(|(f, e)| (f, *e, f.derivative(s))).filter(|(_, _, d)| !d.is_zero()).collect();
        let prod_except = |skip: Option<usize>| {
            let mut r = Laurent::one();
            for (k, (f, _, _)) in moving.iter().enumerate() {
                if Some(k) != skip {
                    r = r.mul(f);
                }
            }
            r
        };
        let mut num = self.num.derivative(s).mul(&prod_except(None));
        for (k, (_, e, d)) in moving.iter().enumerate() {
            let t = self.num.mul(d).mul(&prod_except(Some(k))).mul(&Laurent::constant(BigInt::from(*e)));
            num = num.sub(&t);
        }
        let mut den = self.den.clone();
        for (f, _, _) in &moving {
            *den.get_mut(*f).unwrap() += 1;
        }
        RationalExpr { num, den }.tidy()
    }

    /// Replaces every occurrence of `s` by `value`.
    pub fn substitute(&self, s: &Symbol, value: &RationalExpr) -> Result<RationalExpr> {
        let mut out = subst_laurent(&self.num, s, value)?;
        for (f, e) in &self.den {
            out = out.mul(&subst_laurent(f, s, value)?.pow(-(*e as i32))?);
        }
        Ok(out)
    }

    pub fn equals(&self, o: &RationalExpr) -> bool {
        self.sub(o).is_zero()
    }
}

fn subst_laurent(l: &Laurent, s: &Symbol, value: &RationalExpr) -> Result<RationalExpr> {
    if !l.symbols().contains(s) {
        return Ok(l.clone().into());
    }
    let mut powers: BTreeMap<i32, RationalExpr> = BTreeMap::new();
    let mut out = RationalExpr::zero();
    for (m, c) in l.terms() {
        let e = m.exp(s);
        if !powers.contains_key(&e) {
            powers.insert(e, value.pow(e)?);
        }
        let rest = m.mul(&Monomial::var(s.clone(), -e));
        let t = RationalExpr::from(Laurent::term(rest, c.clone())).mul(&powers[&e]);
        out = out.add(&t);
    }
    Ok(out)
}

/// `a / f` when `f` divides `a` exactly as Laurent polynomials, by division on leading terms.
fn exact_quotient(a: &Laurent, f: &Laurent) -> Option<Laurent> {
    let (lm, lc) = lead(f)?;
    let mut rem = a.clone();
    let mut q = Laurent::zero();
    // Each step removes the largest remaining term; the support of `rem` stays inside a finite
    // region of bounded degree, so a generous cap is enough to stop on non-divisibility.
    let cap = 4 * (a.len() + 1) * (f.len() + 1) + 64;
    for _ in 0..cap {
        let Some((m, c)) = lead(&rem) else {
            return Some(q);
        };
        if !(&c % &lc).is_zero() {
            return None;
        }
        let t = Laurent::term(m.mul(&lm.inv()), c / &lc);
        rem = rem.sub(&t.mul(f));
        q = q.add(&t);
        if !rem.is_zero() && !dominated(&rem, a, f) {
            return None;
        }
    }
    None
}

/// Leading term for lex order on exponent vectors, which is a group order on Laurent monomials.
fn lead(l: &Laurent) -> Option<(Monomial, BigInt)> {
    let lex = |a: &Monomial, b: &Monomial| {
        let syms: BTreeSet<&Symbol> = a.0.keys().chain(b.0.keys()).collect();
        syms.into_iter().map(|s| a.exp(s).cmp(&b.exp(s))).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    };
    l.terms().iter().max_by(|x, y| lex(x.0, y.0)).map(|(m, c)| (m.clone(), c.clone()))
}

/// A cheap guard: every symbol exponent in `rem` stays within the range reachable from `a` and `f`.
fn dominated(rem: &Laurent, a: &Laurent, f: &Laurent) -> bool {
    let range = |l: &Laurent, s: &Symbol| {
        let es: Vec<i32> = l.terms().keys().map(|m| m.exp(s)).collect();
        (*es.iter().min().unwrap_or(&0), *es.iter().max().unwrap_or(&0))
    };
    rem.symbols().iter().all(|s| {
        let (alo, ahi) = range(a, s);
        let (flo, fhi) = range(f, s);
        let (rlo, rhi) = range(rem, s);
        rlo >= alo.min(0) - (fhi - flo) - 1 && rhi <= ahi.max(0) + (fhi - flo) + 1
    })
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let fs: Vec<String> =
            self.den.iter().map(|(p, e)| if *e == 1 { format!("({})", p) } else { format!("({})^{}", p, e) }).collect();
        write!(f, "({})/({})", self.num, fs.join("*"))
    }
}

/// Parses expressions such as `p1[1]/p1[] + (p1[2,1] + q1)/p1[2] + q*z[2,2]^-1`.
pub fn parse_expr(s: &str) -> Result<RationalExpr> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| {
            self.pos = start;
            self.err("number out of range")
        })
    }

    fn sum(&mut self) -> Result<RationalExpr> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            neg = true;
        }
        let mut acc = self.product()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.product()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<RationalExpr> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    acc = acc.div(&d).map_err(|_| Error::Parse { pos: at, msg: "division by zero".into() })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RationalExpr> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let e = self.number()? as i32;
        base.pow(if neg { -e } else { e }).map_err(|_| Error::Parse { pos: at, msg: "negative power of zero".into() })
    }

    fn atom(&mut self) -> Result<RationalExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(RationalExpr::from(Laurent::constant(BigInt::from(self.number()?)))),
            Some(b'q') => {
                self.pos += 1;
                let l = if self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit()) { self.number()? } else { 1 };
                if l == 0 {
                    return Err(self.err("q index starts at 1"));
                }
                Ok(RationalExpr::var(Symbol::Q(l)))
            }
            Some(b'p') => {
                self.pos += 1;
                let i = self.number()?;
                self.expect(b'[')?;
                let mut parts = Vec::new();
                if self.peek() != Some(b']') {
                    loop {
                        parts.push(self.number()?);
                        if self.peek() == Some(b',') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                let at = self.pos;
                self.expect(b']')?;
                let lam = Partition::new(parts).map_err(|e| Error::Parse { pos: at, msg: e.to_string() })?;
                Ok(RationalExpr::var(Symbol::P(i, lam)))
            }
            Some(b'z') => {
                self.pos += 1;
                self.expect(b'[')?;
                let r = self.number()?;
                self.expect(b',')?;
                let c = self.number()?;
                self.expect(b']')?;
                Ok(RationalExpr::var(Symbol::Z(r, c)))
            }
            _ => Err(self.err("expected a symbol, number or `(`")),
        }
    }
}
