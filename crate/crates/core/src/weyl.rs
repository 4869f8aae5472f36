//! Normal-ordered polynomial-coefficient differential operators.
//!
//! A stored term `c · x^a ∂^b` means "differentiate by `∂^b`, then multiply by
//! `c·x^a`". Composition moves derivatives to the right with the Leibniz rule
//! `∂^b x^c = Σ_k C(b,k)·c!/(c−k)!·x^{c−k} ∂^{b−k}` (multi-index).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{
    accumulate, fmt_exps, parse_exps, parse_header, Ambient, Block, Monomial, Polynomial,
};
use crate::scalar::Scalar;

/// `(multiplier, derivative)` exponent pair of a normal-ordered term.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WeylKey {
    pub mult: Monomial,
    pub deriv: Monomial,
}

#[derive(Clone, PartialEq, Eq)]
pub struct WeylOperator {
    ambient: Ambient,
    terms: BTreeMap<WeylKey, Scalar>,
}

fn falling(n: u16, k: u16) -> i64 {
    (0..k).map(|i| (n - i) as i64).product()
}

fn binomial(n: u16, k: u16) -> i64 {
    falling(n, k) / falling(k, k)
}

impl WeylOperator {
    pub fn zero(ambient: Ambient) -> Self {
        WeylOperator {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(ambient: Ambient, c: Scalar) -> Self {
        let n = ambient.nvars();
        WeylOperator::from_terms(ambient, [(Monomial::one(n), Monomial::one(n), c)])
    }

    pub fn identity(ambient: Ambient) -> Self {
        WeylOperator::scalar(ambient, Scalar::from_int(1))
    }

    pub fn from_terms(
        ambient: Ambient,
        terms: impl IntoIterator<Item = (Monomial, Monomial, Scalar)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (mult, deriv, c) in terms {
            assert_eq!(mult.0.len(), ambient.nvars());
            assert_eq!(deriv.0.len(), ambient.nvars());
            accumulate(&mut map, WeylKey { mult, deriv }, c);
        }
        WeylOperator {
            ambient,
            terms: map,
        }
    }

    /// Multiplication by `f`.
    pub fn multiplication(f: &Polynomial) -> Self {
        let n = f.ambient().nvars();
        WeylOperator::from_terms(
            f.ambient(),
            f.terms()
                .map(|(m, c)| (m.clone(), Monomial::one(n), c.clone())),
        )
    }

    /// Multiplication by the coordinate `v`.
    pub fn coordinate(ambient: Ambient, v: usize) -> Self {
        WeylOperator::multiplication(&Polynomial::var(ambient, v))
    }

    /// `∂/∂v`.
    pub fn partial(ambient: Ambient, v: usize) -> Self {
        let n = ambient.nvars();
        WeylOperator::from_terms(
            ambient,
            [(Monomial::one(n), Monomial::var(n, v), Scalar::from_int(1))],
        )
    }

    /// Euler operator `Σ v ∂_v` over `block`.
    pub fn euler(ambient: Ambient, block: Block) -> Self {
        let n = ambient.nvars();
        WeylOperator::from_terms(
            ambient,
            ambient.block_vars(block).map(|v| {
                (
                    Monomial::var(n, v),
                    Monomial::var(n, v),
                    Scalar::from_int(1),
                )
            }),
        )
    }

    /// Laplacian `Σ ∂_v²` over `block`.
    pub fn laplacian(ambient: Ambient, block: Block) -> Self {
        let n = ambient.nvars();
        WeylOperator::from_terms(
            ambient,
            ambient.block_vars(block).map(|v| {
                let mut d = Monomial::one(n);
                d.0[v] = 2;
                (Monomial::one(n), d, Scalar::from_int(1))
            }),
        )
    }

    /// Multiplication by `r² = Σ v²` over `block`.
    pub fn radius_squared(ambient: Ambient, block: Block) -> Self {
        WeylOperator::multiplication(&Polynomial::r2(ambient, block))
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&WeylKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the operator is `c·id`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (k, c) = self.terms.iter().next()?;
                (k.mult.is_one() && k.deriv.is_one()).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> WeylOperator {
        if c.is_zero() {
            return WeylOperator::zero(self.ambient);
        }
        WeylOperator {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(k, a)| (k.clone(), a * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &WeylOperator) -> Result<WeylOperator> {
        self.ambient.check(&other.ambient)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            accumulate(&mut terms, k.clone(), c.clone());
        }
        Ok(WeylOperator {
            ambient: self.ambient,
            terms,
        })
    }

    pub fn try_sub(&self, other: &WeylOperator) -> Result<WeylOperator> {
        self.try_add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Normal-ordered `self ∘ other`.
    pub fn compose(&self, other: &WeylOperator) -> Result<WeylOperator> {
        self.ambient.check(&other.ambient)?;
        let n = self.ambient.nvars();
        let mut terms = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let base = ca * cb;
                // Per-variable Leibniz choices (k_v, weight).
                let choices: Vec<Vec<(u16, i64)>> = (0..n)
                    .map(|v| {
                        let b = ka.deriv.0[v];
                        let c = kb.mult.0[v];
                        (0..=b.min(c))
                            .map(|k| (k, binomial(b, k) * falling(c, k)))
                            .collect()
                    })
                    .collect();
                let mut idx = vec![0usize; n];
                loop {
                    let mut mult = ka.mult.mul(&kb.mult);
                    let mut deriv = ka.deriv.mul(&kb.deriv);
                    let mut w = 1i64;
                    for v in 0..n {
                        let (k, wv) = choices[v][idx[v]];
                        mult.0[v] -= k;
                        deriv.0[v] -= k;
                        w *= wv;
                    }
                    accumulate(
                        &mut terms,
                        WeylKey { mult, deriv },
                        &base * &Scalar::from_int(w),
                    );
                    // odometer
                    let mut v = 0;
                    while v < n {
                        idx[v] += 1;
                        if idx[v] < choices[v].len() {
                            break;
                        }
                        idx[v] = 0;
                        v += 1;
                    }
                    if v == n {
                        break;
                    }
                }
            }
        }
        Ok(WeylOperator {
            ambient: self.ambient,
            terms,
        })
    }

    /// `self ∘ other − other ∘ self`.
    pub fn commutator(&self, other: &WeylOperator) -> Result<WeylOperator> {
        self.compose(other)?.try_sub(&other.compose(self)?)
    }

    /// `self^k` under composition.
    pub fn pow(&self, k: u32) -> WeylOperator {
        let mut acc = WeylOperator::identity(self.ambient);
        for _ in 0..k {
            acc = acc.compose(self).expect("same ambient");
        }
        acc
    }

    /// Image of `f`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        self.ambient.check(&f.ambient())?;
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            for (m, a) in f.terms() {
                if !k.deriv.divides(m) {
                    continue;
                }
                let w: i64 =
                    m.0.iter()
                        .zip(&k.deriv.0)
                        .map(|(&e, &d)| falling(e, d))
                        .product();
                let target = k.deriv.quotient_of(m).mul(&k.mult);
                accumulate(&mut out, target, &(c * a) * &Scalar::from_int(w));
            }
        }
        Ok(Polynomial::from_terms(self.ambient, out))
    }

    /// Text form: header, then `re+im·i | mult exps | deriv exps` per line, descending key order.
    pub fn to_text(&self) -> String {
        let mut out = format!("weyl p={} q={}\n", self.ambient.p, self.ambient.q);
        for (k, c) in self.terms.iter().rev() {
            out.push_str(&format!(
                "{} | {} | {}\n",
                c,
                fmt_exps(&k.mult),
                fmt_exps(&k.deriv)
            ));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<WeylOperator> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let ambient = parse_header(header, "weyl")?;
        let mut terms = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split('|').collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("bad term line {line:?}")));
            }
            let c: Scalar = parts[0].parse()?;
            terms.push((
                parse_exps(parts[1], ambient.nvars())?,
                parse_exps(parts[2], ambient.nvars())?,
                c,
            ));
        }
        Ok(WeylOperator::from_terms(ambient, terms))
    }
}

impl fmt::Debug for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let name = |v: usize| {
            if v < self.ambient.p {
                format!("x{}", v + 1)
            } else {
                format!("y{}", v - self.ambient.p + 1)
            }
        };
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| {
                let mut s = format!("{c:?}");
                for (v, &e) in k.mult.0.iter().enumerate() {
                    if e > 0 {
                        s.push_str(&format!("*{}", name(v)));
                        if e > 1 {
                            s.push_str(&format!("^{e}"));
                        }
                    }
                }
                for (v, &e) in k.deriv.0.iter().enumerate() {
                    if e > 0 {
                        s.push_str(&format!("*d{}", name(v)));
                        if e > 1 {
                            s.push_str(&format!("^{e}"));
                        }
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! op_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a WeylOperator> for &'a WeylOperator {
            type Output = WeylOperator;
            fn $m(self, rhs: &WeylOperator) -> WeylOperator {
                let f: fn(&WeylOperator, &WeylOperator) -> Result<WeylOperator> = $body;
                f(self, rhs).expect("operator ambient mismatch")
            }
        }
        impl $tr<WeylOperator> for WeylOperator {
            type Output = WeylOperator;
            fn $m(self, rhs: WeylOperator) -> WeylOperator {
                (&self).$m(&rhs)
            }
        }
    };
}
op_binop!(Add, add, |a, b| a.try_add(b));
op_binop!(Sub, sub, |a, b| a.try_sub(b));
// `*` is composition.
op_binop!(Mul, mul, |a, b| a.compose(b));

impl Neg for &WeylOperator {
    type Output = WeylOperator;
    fn neg(self) -> WeylOperator {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Neg for WeylOperator {
    type Output = WeylOperator;
    fn neg(self) -> WeylOperator {
        (&self).neg()
    }
}
