//! Sparse exact polynomials in `x₁..x_p, y₁..y_q` over Gaussian rationals.
//!
//! Variables are indexed `0..p` for the x-block and `p..p+q` for the y-block.
//! Monomials are ordered graded-lexicographically with `x₁ > x₂ > … > y_q`,
//! and every iteration, serialization and division step follows that order.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Sizes of the two coordinate blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Ambient {
    pub p: usize,
    pub q: usize,
}

impl Ambient {
    pub fn new(p: usize, q: usize) -> Self {
        Ambient { p, q }
    }

    pub fn nvars(&self) -> usize {
        self.p + self.q
    }

    pub fn x(&self, i: usize) -> usize {
        assert!(i < self.p, "x-index {i} out of range for p={}", self.p);
        i
    }

    pub fn y(&self, j: usize) -> usize {
        assert!(j < self.q, "y-index {j} out of range for q={}", self.q);
        self.p + j
    }

    pub fn block_len(&self, block: Block) -> usize {
        match block {
            Block::X => self.p,
            Block::Y => self.q,
        }
    }

    /// Variable indices belonging to `block`.
    pub fn block_vars(&self, block: Block) -> std::ops::Range<usize> {
        match block {
            Block::X => 0..self.p,
            Block::Y => self.p..self.p + self.q,
        }
    }

    pub fn check(&self, other: &Ambient) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(self.p, self.q, other.p, other.q))
        }
    }

    fn var_name(&self, v: usize) -> String {
        if v < self.p {
            format!("x{}", v + 1)
        } else {
            format!("y{}", v - self.p + 1)
        }
    }
}

/// One of the two coordinate blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    X,
    Y,
}

/// Exponent vector of length `p + q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[v] = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_in(&self, vars: std::ops::Range<usize>) -> u32 {
        self.0[vars].iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// All exponent vectors of total degree `d` supported on `vars`, in descending
/// graded-lex order, embedded in `nvars` slots.
pub fn monomials_of_degree(nvars: usize, vars: std::ops::Range<usize>, d: u32) -> Vec<Monomial> {
    fn rec(vars: &[usize], remaining: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        match vars {
            [] => {}
            [last] => {
                cur.0[*last] = remaining as u16;
                out.push(cur.clone());
                cur.0[*last] = 0;
            }
            [first, rest @ ..] => {
                for e in (0..=remaining).rev() {
                    cur.0[*first] = e as u16;
                    rec(rest, remaining - e, cur, out);
                }
                cur.0[*first] = 0;
            }
        }
    }
    let vars: Vec<usize> = vars.collect();
    let mut out = Vec::new();
    if vars.is_empty() {
        if d == 0 {
            out.push(Monomial::one(nvars));
        }
        return out;
    }
    rec(&vars, d, &mut Monomial::one(nvars), &mut out);
    out
}

pub(crate) fn accumulate<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ambient: Ambient,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(ambient: Ambient) -> Self {
        Polynomial {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ambient: Ambient, c: Scalar) -> Self {
        Polynomial::term(ambient, Monomial::one(ambient.nvars()), c)
    }

    pub fn one(ambient: Ambient) -> Self {
        Polynomial::constant(ambient, Scalar::from_int(1))
    }

    pub fn term(ambient: Ambient, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.0.len(), ambient.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ambient, terms }
    }

    pub fn from_terms(
        ambient: Ambient,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), ambient.nvars());
            accumulate(&mut map, m, c);
        }
        Polynomial {
            ambient,
            terms: map,
        }
    }

    /// The coordinate function with variable index `v`.
    pub fn var(ambient: Ambient, v: usize) -> Self {
        Polynomial::term(
            ambient,
            Monomial::var(ambient.nvars(), v),
            Scalar::from_int(1),
        )
    }

    pub fn x(ambient: Ambient, i: usize) -> Self {
        Polynomial::var(ambient, ambient.x(i))
    }

    pub fn y(ambient: Ambient, j: usize) -> Self {
        Polynomial::var(ambient, ambient.y(j))
    }

    /// `r² = Σ v²` over the variables of `block`.
    pub fn r2(ambient: Ambient, block: Block) -> Self {
        let n = ambient.nvars();
        Polynomial::from_terms(
            ambient,
            ambient.block_vars(block).map(|v| {
                let mut m = Monomial::one(n);
                m.0[v] = 2;
                (m, Scalar::from_int(1))
            }),
        )
    }

    /// `ρ = r²/2` over the variables of `block`.
    pub fn rho(ambient: Ambient, block: Block) -> Self {
        Polynomial::r2(ambient, block).scale(&Scalar::from_ratio(1, 2))
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Smallest monomial in graded-lex order.
    pub fn trailing_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// `Some(d)` when every term has degree `d` in the variables of `block`.
    pub fn block_degree(&self, block: Block) -> Option<u32> {
        let vars = self.ambient.block_vars(block);
        let mut degs = self.terms.keys().map(|m| m.degree_in(vars.clone()));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ambient);
        }
        Polynomial {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> Polynomial {
        self.scale(&Scalar::real(c.clone()))
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ambient.check(&other.ambient)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(Polynomial {
            ambient: self.ambient,
            terms,
        })
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ambient.check(&other.ambient)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), -c);
        }
        Ok(Polynomial {
            ambient: self.ambient,
            terms,
        })
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ambient.check(&other.ambient)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                accumulate(&mut terms, m1.mul(m2), c1 * c2);
            }
        }
        Ok(Polynomial {
            ambient: self.ambient,
            terms,
        })
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ambient);
        }
        Polynomial {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ambient);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `∂f/∂v`.
    pub fn derivative(&self, v: usize) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[v] -= 1;
            accumulate(&mut terms, m2, c * &Scalar::from_int(e as i64));
        }
        Polynomial {
            ambient: self.ambient,
            terms,
        }
    }

    /// Laplacian in the variables of `block`.
    pub fn laplacian(&self, block: Block) -> Polynomial {
        let mut terms = BTreeMap::new();
        for v in self.ambient.block_vars(block) {
            for (m, c) in &self.terms {
                let e = m.0[v];
                if e < 2 {
                    continue;
                }
                let mut m2 = m.clone();
                m2.0[v] -= 2;
                accumulate(
                    &mut terms,
                    m2,
                    c * &Scalar::from_int((e as i64) * (e as i64 - 1)),
                );
            }
        }
        Polynomial {
            ambient: self.ambient,
            terms,
        }
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Polynomial {
        Polynomial {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ambient.nvars());
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &point[v].pow(e as u32);
                }
            }
            total += &t;
        }
        total
    }

    /// Exact division: `Ok(Some(h))` with `self = g·h`, `Ok(None)` when `g` does not divide `self`.
    pub fn divide(&self, g: &Polynomial) -> Result<Option<Polynomial>> {
        self.ambient.check(&g.ambient)?;
        let (lm, lc) = match g.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Ok(None);
            }
            let qm = lm.quotient_of(m);
            let qc = c / &lc;
            rem = &rem - &g.mul_monomial(&qm, &qc);
            accumulate(&mut quot, qm, qc);
        }
        Ok(Some(Polynomial {
            ambient: self.ambient,
            terms: quot,
        }))
    }

    /// Deterministic text form: a header line, then one term per line in
    /// descending graded-lex order as `re+im·i | e₁ e₂ … e_{p+q}`.
    pub fn to_text(&self) -> String {
        let mut out = format!("polynomial p={} q={}\n", self.ambient.p, self.ambient.q);
        for (m, c) in self.terms.iter().rev() {
            out.push_str(&format!("{} | {}\n", c, fmt_exps(m)));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Polynomial> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let ambient = parse_header(header, "polynomial")?;
        let mut terms = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split('|').collect();
            if parts.len() != 2 {
                return Err(Error::Parse(format!("bad term line {line:?}")));
            }
            let c: Scalar = parts[0].parse()?;
            let m = parse_exps(parts[1], ambient.nvars())?;
            terms.push((m, c));
        }
        Ok(Polynomial::from_terms(ambient, terms))
    }
}

pub(crate) fn fmt_exps(m: &Monomial) -> String {
    m.0.iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub(crate) fn parse_exps(s: &str, nvars: usize) -> Result<Monomial> {
    let exps: Vec<u16> = s
        .split_whitespace()
        .map(|t| {
            t.parse::<u16>()
                .map_err(|_| Error::Parse(format!("bad exponent {t:?}")))
        })
        .collect::<Result<_>>()?;
    if exps.len() != nvars {
        return Err(Error::Parse(format!(
            "expected {nvars} exponents, got {}",
            exps.len()
        )));
    }
    Ok(Monomial::from_exps(&exps))
}

pub(crate) fn parse_header(line: &str, kind: &str) -> Result<Ambient> {
    let mut it = line.split_whitespace();
    if it.next() != Some(kind) {
        return Err(Error::Parse(format!(
            "expected header {kind:?}, got {line:?}"
        )));
    }
    let mut get = |key: &str| -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| Error::Parse(format!("missing {key}")))?;
        tok.strip_prefix(key)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad field {tok:?}")))
    };
    let p = get("p=")?;
    let q = get("q=")?;
    Ok(Ambient::new(p, q))
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let vars: Vec<String> =
                    m.0.iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(v, &e)| {
                            let name = self.ambient.var_name(v);
                            if e == 1 {
                                name
                            } else {
                                format!("{name}^{e}")
                            }
                        })
                        .collect();
                if vars.is_empty() {
                    format!("{c:?}")
                } else {
                    format!("{c:?}*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<'a> $tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                self.$try(rhs).expect("polynomial ambient mismatch")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        (&self).neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb() -> Ambient {
        Ambient::new(2, 2)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_exps(&[2, 0, 0, 0]);
        let b = Monomial::from_exps(&[1, 1, 0, 0]);
        let c = Monomial::from_exps(&[0, 0, 0, 3]);
        assert!(a > b);
        assert!(c > a);
        let ms = monomials_of_degree(4, 0..2, 2);
        assert_eq!(ms.len(), 3);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn divide_by_r2() {
        let r2 = Polynomial::r2(amb(), Block::X);
        let x1 = Polynomial::x(amb(), 0);
        assert_eq!((&r2 * &x1).divide(&r2).unwrap(), Some(x1.clone()));
        assert_eq!(x1.divide(&r2).unwrap(), None);
        assert_eq!(
            x1.divide(&Polynomial::zero(amb())),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn divide_by_rho_product() {
        let rr = &Polynomial::rho(amb(), Block::X) * &Polynomial::rho(amb(), Block::Y);
        let h = &Polynomial::x(amb(), 0).pow(2) - &Polynomial::x(amb(), 1).pow(2);
        let f = &rr * &h;
        let got = f.divide(&rr).unwrap().unwrap();
        assert_eq!(got, h);
        assert_eq!(&got * &rr, f);
    }

    #[test]
    fn ambient_mismatch() {
        let a = Polynomial::one(Ambient::new(2, 2));
        let b = Polynomial::one(Ambient::new(2, 1));
        assert!(matches!(a.try_add(&b), Err(Error::AmbientMismatch(..))));
    }

    #[test]
    fn laplacian_of_r2() {
        let r2 = Polynomial::r2(Ambient::new(3, 1), Block::X);
        assert_eq!(
            r2.laplacian(Block::X),
            Polynomial::constant(Ambient::new(3, 1), Scalar::from_int(6))
        );
        assert!(r2.laplacian(Block::Y).is_zero());
    }

    #[test]
    fn text_form_is_stable() {
        let p = &(&Polynomial::x(amb(), 0) * &Polynomial::y(amb(), 1))
            .scale(&Scalar::from_ratio(-3, 2))
            + &Polynomial::constant(amb(), Scalar::i());
        let text = p.to_text();
        assert_eq!(
            text,
            "polynomial p=2 q=2\n-3/2+0/1·i | 1 0 0 1\n0/1+1/1·i | 0 0 0 0\n"
        );
        assert_eq!(Polynomial::from_text(&text).unwrap(), p);
    }
}
