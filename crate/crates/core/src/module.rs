//! Formal elements `Σ_α P_α·ψ_α` of the function space built on the
//! Bessel-type series `Ψ_α(u) = Σ (−1)ⁿuⁿ/(n!(α)ₙ)` evaluated at `u = ρ_xρ_y`,
//! `ρ = r²/2`.
//!
//! The representation is not canonical (`ρ_xρ_yψ_{α+2} = α(α+1)(ψ_{α+1} − ψ_α)`
//! relates different α), so equality is decided on truncated power series.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::harmonics::{dagger, HarmonicBasis};
use crate::poly::{parse_header, Ambient, Block, Monomial, Polynomial};
use crate::scalar::{int, Rational, Scalar};
use crate::weyl::WeylOperator;

/// `α ∈ {0, −1, −2, …}`, where `ψ_α` is undefined.
pub fn is_forbidden_alpha(alpha: &Rational) -> bool {
    alpha.is_integer() && !alpha.is_positive()
}

fn check_alpha(alpha: &Rational) -> Result<()> {
    if is_forbidden_alpha(alpha) {
        Err(Error::Domain(format!("ψ_α undefined at α = {alpha}")))
    } else {
        Ok(())
    }
}

/// `(x)ₙ = x(x+1)…(x+n−1)`.
pub fn rising(x: &Rational, n: u32) -> Rational {
    (0..n).fold(Rational::one(), |acc, t| acc * (x + int(t as i64)))
}

/// `x(x−1)…(x−n+1)`.
pub fn falling(x: &Rational, n: u32) -> Rational {
    (0..n).fold(Rational::one(), |acc, t| acc * (x - int(t as i64)))
}

/// Coefficients `c₀..c_n` of `Ψ_α(u)`.
pub fn psi_coefficients(alpha: &Rational, n: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut c = Rational::one();
    out.push(c.clone());
    for t in 0..n {
        // c_{t+1} = −c_t / ((t+1)(α+t))
        c = -c / (int(t as i64 + 1) * (alpha + int(t as i64)));
        out.push(c.clone());
    }
    out
}

/// `ρ_xρ_y`.
pub fn u_poly(a: Ambient) -> Polynomial {
    &Polynomial::rho(a, Block::X) * &Polynomial::rho(a, Block::Y)
}

#[derive(Clone, PartialEq, Eq)]
pub struct ModuleElement {
    ambient: Ambient,
    terms: BTreeMap<Rational, Polynomial>,
}

/// Outcome of the truncated-series zero test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroVerdict {
    pub is_zero: bool,
    /// The truncation degree used.
    pub n_star: u32,
    /// Whether the verdict is unchanged at `n_star + 4`.
    pub stable: bool,
}

impl ModuleElement {
    pub fn zero(ambient: Ambient) -> Self {
        ModuleElement {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn psi(ambient: Ambient, alpha: Rational) -> Result<Self> {
        Self::from_term(Polynomial::one(ambient), alpha)
    }

    /// `P·ψ_α`.
    pub fn from_term(p: Polynomial, alpha: Rational) -> Result<Self> {
        check_alpha(&alpha)?;
        let mut e = ModuleElement::zero(p.ambient());
        e.add_term(alpha, p);
        Ok(e)
    }

    pub fn from_terms(
        ambient: Ambient,
        terms: impl IntoIterator<Item = (Rational, Polynomial)>,
    ) -> Result<Self> {
        let mut e = ModuleElement::zero(ambient);
        for (alpha, p) in terms {
            ambient.check(&p.ambient())?;
            check_alpha(&alpha)?;
            e.add_term(alpha, p);
        }
        Ok(e)
    }

    fn add_term(&mut self, alpha: Rational, p: Polynomial) {
        debug_assert!(!is_forbidden_alpha(&alpha));
        if p.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(alpha.clone())
            .or_insert_with(|| Polynomial::zero(self.ambient));
        *slot = &*slot + &p;
        if slot.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &Rational) -> Option<&Polynomial> {
        self.terms.get(alpha)
    }

    pub fn num_alphas(&self) -> usize {
        self.terms.len()
    }

    /// No stored terms; a sufficient but not necessary condition for zero.
    pub fn is_trivially_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms
            .values()
            .filter_map(Polynomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> ModuleElement {
        let mut out = ModuleElement::zero(self.ambient);
        for (alpha, p) in &self.terms {
            out.add_term(alpha.clone(), p.scale(c));
        }
        out
    }

    pub fn try_add(&self, other: &ModuleElement) -> Result<ModuleElement> {
        self.ambient.check(&other.ambient)?;
        let mut out = self.clone();
        for (alpha, p) in &other.terms {
            out.add_term(alpha.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &ModuleElement) -> Result<ModuleElement> {
        self.try_add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Multiplication by a polynomial.
    pub fn mul_poly(&self, f: &Polynomial) -> Result<ModuleElement> {
        self.ambient.check(&f.ambient())?;
        let mut out = ModuleElement::zero(self.ambient);
        for (alpha, p) in &self.terms {
            out.add_term(alpha.clone(), p * f);
        }
        Ok(out)
    }

    /// `Q_n = Σ_α c_{α,n}·P_α`, truncated so that `deg(uⁿQ_n) ≤ n_max`.
    fn series_layers(&self, n_max: u32) -> Vec<Polynomial> {
        let layers = (n_max / 4) as usize + 1;
        let mut q = vec![Polynomial::zero(self.ambient); layers];
        for (alpha, p) in &self.terms {
            let cs = psi_coefficients(alpha, layers as u32 - 1);
            for (n, c) in cs.iter().enumerate() {
                let room = n_max - 4 * n as u32;
                q[n] = &q[n] + &p.truncate(room).scale_rational(c);
            }
        }
        q
    }

    /// The power series of the element truncated at total degree `n_max`.
    pub fn to_series(&self, n_max: u32) -> Polynomial {
        let q = self.series_layers(n_max);
        let u = u_poly(self.ambient);
        let mut acc = Polynomial::zero(self.ambient);
        for layer in q.iter().rev() {
            acc = (&(&acc * &u) + layer).truncate(n_max);
        }
        acc
    }

    fn series_vanishes(&self, n_max: u32, rng: &mut ChaCha8Rng) -> bool {
        if !self.to_series(n_max).is_zero() {
            return false;
        }
        // Independent evaluation: Σ_n u(z)ⁿ·Q_n(z) at random rational points.
        let q = self.series_layers(n_max);
        let u = u_poly(self.ambient);
        for _ in 0..3 {
            let z: Vec<Scalar> = (0..self.ambient.nvars())
                .map(|_| Scalar::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=7)))
                .collect();
            let uz = u.evaluate(&z);
            let mut acc = Scalar::zero();
            for layer in q.iter().rev() {
                acc = &(&acc * &uz) + &layer.evaluate(&z);
            }
            if !acc.is_zero() {
                return false;
            }
        }
        true
    }

    /// `N* = max deg P_α + 2·#α + 8`.
    pub fn n_star(&self) -> u32 {
        self.max_degree() + 2 * self.terms.len() as u32 + 8
    }

    pub fn zero_verdict(&self) -> ZeroVerdict {
        let n_star = self.n_star();
        if self.terms.is_empty() {
            return ZeroVerdict {
                is_zero: true,
                n_star,
                stable: true,
            };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let at = self.series_vanishes(n_star, &mut rng);
        let stable = if at {
            self.series_vanishes(n_star + 4, &mut rng)
        } else {
            true
        };
        ZeroVerdict {
            is_zero: at,
            n_star,
            stable,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zero_verdict().is_zero
    }

    /// Rewrites `(ρ_xρ_y·Q)ψ_α → (α−2)(α−1)Q·(ψ_{α−1} − ψ_{α−2})` while some
    /// `P_α` is divisible by `ρ_xρ_y` and `α − 2` is admissible, largest α first.
    pub fn simplify(&self) -> ModuleElement {
        let u = u_poly(self.ambient);
        let two = int(2);
        let mut cur = self.clone();
        loop {
            let hit = cur.terms.iter().rev().find_map(|(alpha, p)| {
                if is_forbidden_alpha(&(alpha - &two)) {
                    return None;
                }
                match p.divide(&u) {
                    Ok(Some(q)) => Some((alpha.clone(), q)),
                    _ => None,
                }
            });
            let Some((alpha, q)) = hit else {
                return cur;
            };
            let c = (&alpha - int(2)) * (&alpha - int(1));
            let qc = q.scale_rational(&c);
            cur.terms.remove(&alpha);
            cur.add_term(&alpha - int(1), qc.clone());
            cur.add_term(&alpha - int(2), -qc);
        }
    }

    /// Text form: header, then for each α a `psi num/den` line followed by its polynomial terms.
    pub fn to_text(&self) -> String {
        let mut out = format!("element p={} q={}\n", self.ambient.p, self.ambient.q);
        for (alpha, p) in &self.terms {
            out.push_str(&format!("psi {}/{}\n", alpha.numer(), alpha.denom()));
            for line in p.to_text().lines().skip(1) {
                out.push_str(line);
                out.push('\n');
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<ModuleElement> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let ambient = parse_header(header, "element")?;
        let poly_header = format!("polynomial p={} q={}\n", ambient.p, ambient.q);
        let mut blocks: Vec<(Rational, String)> = Vec::new();
        for line in lines {
            if let Some(a) = line.strip_prefix("psi ") {
                let alpha = a
                    .trim()
                    .parse::<Rational>()
                    .map_err(|_| Error::Parse(format!("bad α {a:?}")))?;
                blocks.push((alpha, poly_header.clone()));
            } else {
                let last = blocks
                    .last_mut()
                    .ok_or_else(|| Error::Parse("term before any psi line".into()))?;
                last.1.push_str(line);
                last.1.push('\n');
            }
        }
        let mut terms = Vec::new();
        for (alpha, body) in blocks {
            terms.push((alpha, Polynomial::from_text(&body)?));
        }
        ModuleElement::from_terms(ambient, terms)
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (alpha, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({p:?})·ψ[{alpha}]")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `∂_v` on `ℰ`: `∂(Pψ_α) = (∂P)ψ_α − P·v·ρ_other/α·ψ_{α+1}`.
fn partial_act(v: usize, f: &ModuleElement) -> ModuleElement {
    let a = f.ambient;
    let other = if v < a.p { Block::Y } else { Block::X };
    let factor = &Polynomial::var(a, v) * &Polynomial::rho(a, other);
    let mut out = ModuleElement::zero(a);
    for (alpha, p) in &f.terms {
        out.add_term(alpha.clone(), p.derivative(v));
        let c = -alpha.recip();
        out.add_term(alpha + int(1), (p * &factor).scale_rational(&c));
    }
    out
}

/// Action of an arbitrary operator through the ψ-chain rule.
pub fn weyl_act(op: &WeylOperator, f: &ModuleElement) -> Result<ModuleElement> {
    op.ambient().check(&f.ambient)?;
    let a = f.ambient;
    let mut by_deriv: BTreeMap<Monomial, Vec<(Monomial, Scalar)>> = BTreeMap::new();
    for (key, c) in op.terms() {
        by_deriv
            .entry(key.deriv.clone())
            .or_default()
            .push((key.mult.clone(), c.clone()));
    }
    let mut out = ModuleElement::zero(a);
    for (d, mults) in by_deriv {
        let mut g = f.clone();
        for (v, &e) in d.0.iter().enumerate() {
            for _ in 0..e {
                g = partial_act(v, &g);
            }
        }
        out = out.try_add(&g.mul_poly(&Polynomial::from_terms(a, mults))?)?;
    }
    Ok(out)
}

/// Index of a radial term `ρ_x^a ρ_y^b ψ_α`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RadialKey {
    pub a: u32,
    pub b: u32,
    pub alpha: Rational,
}

/// `Σ c·ρ_x^a ρ_y^b ψ_α`: the radial factor of elements `h₁h₂·(…)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RadialSum {
    terms: BTreeMap<RadialKey, Scalar>,
}

impl RadialSum {
    pub fn new() -> Self {
        RadialSum::default()
    }

    pub fn single(a: u32, b: u32, alpha: Rational, c: Scalar) -> Result<Self> {
        let mut s = RadialSum::new();
        s.push(a, b, alpha, c)?;
        Ok(s)
    }

    /// Adds `c·ρ_x^a ρ_y^b ψ_α`; zero coefficients are dropped before the α check.
    pub fn push(&mut self, a: u32, b: u32, alpha: Rational, c: Scalar) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        check_alpha(&alpha)?;
        let key = RadialKey { a, b, alpha };
        let slot = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RadialKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: u32, b: u32, alpha: &Rational) -> Scalar {
        self.terms
            .get(&RadialKey {
                a,
                b,
                alpha: alpha.clone(),
            })
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> RadialSum {
        let mut out = RadialSum::new();
        for (k, v) in &self.terms {
            out.push(k.a, k.b, k.alpha.clone(), v * c)
                .expect("admissible α");
        }
        out
    }

    pub fn add(&self, other: &RadialSum) -> RadialSum {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.push(k.a, k.b, k.alpha.clone(), v.clone())
                .expect("admissible α");
        }
        out
    }

    pub fn sub(&self, other: &RadialSum) -> RadialSum {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// `prefactor·Σ c·ρ_x^a ρ_y^b ψ_α`.
    pub fn to_element(&self, prefactor: &Polynomial) -> ModuleElement {
        let a = prefactor.ambient();
        let rx = Polynomial::rho(a, Block::X);
        let ry = Polynomial::rho(a, Block::Y);
        let mut out = ModuleElement::zero(a);
        for (k, c) in &self.terms {
            let p = &(&rx.pow(k.a) * &ry.pow(k.b)) * prefactor;
            out.add_term(k.alpha.clone(), p.scale(c));
        }
        out
    }

    /// Zero test of the radial factor alone. Since `ρ_x, ρ_y` are algebraically
    /// independent this is the same verdict as for `h₁h₂·(…)` with `h₁h₂ ≠ 0`.
    pub fn zero_verdict(&self) -> ZeroVerdict {
        self.to_element(&Polynomial::one(Ambient::new(1, 1)))
            .zero_verdict()
    }

    pub fn is_zero(&self) -> bool {
        self.zero_verdict().is_zero
    }

    /// Applies the ψ-recursion as in [`ModuleElement::simplify`], on radial indices.
    pub fn simplify(&self) -> RadialSum {
        let mut cur = self.clone();
        loop {
            let hit = cur
                .terms
                .iter()
                .rev()
                .find(|(k, _)| k.a >= 1 && k.b >= 1 && !is_forbidden_alpha(&(&k.alpha - int(2))))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((k, c)) = hit else {
                return cur;
            };
            cur.terms.remove(&k);
            let f = Scalar::real((&k.alpha - int(2)) * (&k.alpha - int(1)));
            let cf = &c * &f;
            cur.push(k.a - 1, k.b - 1, &k.alpha - int(1), cf.clone())
                .expect("admissible");
            cur.push(k.a - 1, k.b - 1, &k.alpha - int(2), -cf)
                .expect("admissible");
        }
    }
}

impl fmt::Debug for RadialSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut t = format!("{c:?}");
                for (name, e) in [("ρx", k.a), ("ρy", k.b)] {
                    match e {
                        0 => {}
                        1 => t.push_str(&format!("·{name}")),
                        _ => t.push_str(&format!("·{name}^{e}")),
                    }
                }
                format!("{t}·ψ[{}]", k.alpha)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sl2Op {
    H,
    Xplus,
    Xminus,
}

/// Shifted degrees `κ₊ = k + p/2`, `κ₋ = l + q/2`.
pub fn kappas(p: usize, q: usize, k: u32, l: u32) -> (Rational, Rational) {
    (
        int(k as i64) + Rational::new((p as i64).into(), 2.into()),
        int(l as i64) + Rational::new((q as i64).into(), 2.into()),
    )
}

/// Closed-form sl₂ action on `h₁h₂ρ_x^aρ_y^bψ_α`, as a radial sum.
pub fn sl2_closed_radial(
    which: Sl2Op,
    kp: &Rational,
    km: &Rational,
    a: u32,
    b: u32,
    alpha: &Rational,
) -> Result<RadialSum> {
    check_alpha(alpha)?;
    let (ai, bi) = (int(a as i64), int(b as i64));
    let mut out = RadialSum::new();
    let s = Scalar::real;
    match which {
        Sl2Op::H => {
            let c = -kp + km - int(2) * &ai + int(2) * &bi;
            out.push(a, b, alpha.clone(), s(c))?;
        }
        Sl2Op::Xplus => {
            if a > 0 {
                let c = -(&ai * (kp + &ai - int(1)));
                out.push(a - 1, b, alpha.clone(), s(c))?;
            }
            let c = (kp + int(2) * &ai - alpha) / alpha;
            out.push(a, b + 1, alpha + int(1), s(c))?;
        }
        Sl2Op::Xminus => {
            if b > 0 {
                let c = &bi * (km + &bi - int(1));
                out.push(a, b - 1, alpha.clone(), s(c))?;
            }
            let c = -((km + int(2) * &bi - alpha) / alpha);
            out.push(a + 1, b, alpha + int(1), s(c))?;
        }
    }
    Ok(out)
}

/// The closed form extended linearly over a radial sum (the K-type is fixed).
pub fn sl2_closed_on_sum(
    which: Sl2Op,
    kp: &Rational,
    km: &Rational,
    f: &RadialSum,
) -> Result<RadialSum> {
    let mut out = RadialSum::new();
    for (k, c) in f.terms() {
        out = out.add(&sl2_closed_radial(which, kp, km, k.a, k.b, &k.alpha)?.scale(c));
    }
    Ok(out)
}

/// Closed-form sl₂ action on `prefactor·ρ_x^aρ_y^bψ_α` with `prefactor = h₁h₂`,
/// `h₁ ∈ ℋ^k(ℝ^p)`, `h₂ ∈ ℋ^l(ℝ^q)`.
pub fn act_sl2_closed(
    which: Sl2Op,
    prefactor: &Polynomial,
    k: u32,
    l: u32,
    a: u32,
    b: u32,
    alpha: &Rational,
) -> Result<ModuleElement> {
    let amb = prefactor.ambient();
    let (kp, km) = kappas(amb.p, amb.q, k, l);
    Ok(sl2_closed_radial(which, &kp, &km, a, b, alpha)?.to_element(prefactor))
}

/// Radial coefficients of the four blocks of `(x_iy_j + ∂_{x_i}∂_{y_j})` on
/// `h₁h₂ρ_x^aρ_y^bψ_α`, named by the harmonic factor they multiply:
/// `mm ↔ (∂h₁)(∂h₂)`, `mp ↔ (∂h₁)(y_jh₂)†`, `pm ↔ (x_ih₁)†(∂h₂)`, `pp ↔ (x_ih₁)†(y_jh₂)†`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PCoefficients {
    pub mm: RadialSum,
    pub mp: RadialSum,
    pub pm: RadialSum,
    pub pp: RadialSum,
}

/// One of the four harmonic blocks of the p-action.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize,
)]
pub enum PBlock {
    /// `(∂_{x_i}h₁)(∂_{y_j}h₂)`
    MinusMinus,
    /// `(∂_{x_i}h₁)(y_jh₂)†`
    MinusPlus,
    /// `(x_ih₁)†(∂_{y_j}h₂)`
    PlusMinus,
    /// `(x_ih₁)†(y_jh₂)†`
    PlusPlus,
}

impl PBlock {
    pub const ALL: [PBlock; 4] = [
        PBlock::MinusMinus,
        PBlock::MinusPlus,
        PBlock::PlusMinus,
        PBlock::PlusPlus,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            PBlock::MinusMinus => "C--",
            PBlock::MinusPlus => "C-+",
            PBlock::PlusMinus => "C+-",
            PBlock::PlusPlus => "C++",
        }
    }
}

/// Radial coefficient of one block; `Inapplicable` when it divides by `κ₊ − 1` or `κ₋ − 1` = 0.
pub fn p_block(
    block: PBlock,
    kp: &Rational,
    km: &Rational,
    a: u32,
    b: u32,
    alpha: &Rational,
) -> Result<RadialSum> {
    check_alpha(alpha)?;
    let one = int(1);
    let (ai, bi) = (int(a as i64), int(b as i64));
    let kp1 = kp - &one;
    let km1 = km - &one;
    let needs_kp = matches!(block, PBlock::MinusMinus | PBlock::MinusPlus);
    let needs_km = matches!(block, PBlock::MinusMinus | PBlock::PlusMinus);
    if (needs_kp && kp1.is_zero()) || (needs_km && km1.is_zero()) {
        return Err(Error::Inapplicable(format!(
            "{} divides by κ−1 at (κ₊,κ₋)=({kp},{km})",
            block.label()
        )));
    }
    let s = Scalar::real;
    let mut out = RadialSum::new();
    match block {
        PBlock::MinusMinus => {
            let tail = kp + km + &ai + &bi - alpha - &one;
            if is_forbidden_alpha(&(alpha - &one)) {
                // α = 1: (α−1)ψ_{α−1} stands for (α−1)ψ_α − ρ_xρ_yψ_{α+1}/α.
                out.push(
                    a,
                    b,
                    alpha.clone(),
                    s((kp + &ai - alpha) * (km + &bi - alpha) / (&kp1 * &km1)),
                )?;
                out.push(
                    a + 1,
                    b + 1,
                    alpha + &one,
                    s(-(&tail / (alpha * &kp1 * &km1))),
                )?;
            } else {
                out.push(
                    a,
                    b,
                    alpha.clone(),
                    s((kp + &ai - alpha) * (km + &bi - alpha) / (&kp1 * &km1)),
                )?;
                out.push(
                    a,
                    b,
                    alpha - &one,
                    s((alpha - &one) * &tail / (&kp1 * &km1)),
                )?;
            }
        }
        PBlock::MinusPlus => {
            out.push(
                a + 1,
                b,
                alpha + &one,
                s(-((kp + &ai + &bi - alpha) / (alpha * &kp1))),
            )?;
            if b > 0 {
                out.push(a, b - 1, alpha.clone(), s(&bi * (kp + &ai - &one) / &kp1))?;
            }
        }
        PBlock::PlusMinus => {
            out.push(
                a,
                b + 1,
                alpha + &one,
                s(-((km + &ai + &bi - alpha) / (alpha * &km1))),
            )?;
            if a > 0 {
                out.push(a - 1, b, alpha.clone(), s(&ai * (km + &bi - &one) / &km1))?;
            }
        }
        PBlock::PlusPlus => {
            out.push(a, b, alpha + &one, s(-((&ai + &bi + &one - alpha) / alpha)))?;
            if a > 0 && b > 0 {
                out.push(a - 1, b - 1, alpha.clone(), s(&ai * &bi))?;
            }
        }
    }
    Ok(out)
}

pub fn p_coefficients(
    kp: &Rational,
    km: &Rational,
    a: u32,
    b: u32,
    alpha: &Rational,
) -> Result<PCoefficients> {
    Ok(PCoefficients {
        mm: p_block(PBlock::MinusMinus, kp, km, a, b, alpha)?,
        mp: p_block(PBlock::MinusPlus, kp, km, a, b, alpha)?,
        pm: p_block(PBlock::PlusMinus, kp, km, a, b, alpha)?,
        pp: p_block(PBlock::PlusPlus, kp, km, a, b, alpha)?,
    })
}

/// The four harmonic factors `∂_{x_i}h₁`, `(x_ih₁)†`, `∂_{y_j}h₂`, `(y_jh₂)†`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PFactors {
    pub dh1: Polynomial,
    pub xh1: Polynomial,
    pub dh2: Polynomial,
    pub yh2: Polynomial,
}

pub fn p_factors(
    i: usize,
    j: usize,
    h1: &Polynomial,
    h2: &Polynomial,
    k: u32,
    l: u32,
) -> Result<PFactors> {
    let a = h1.ambient();
    a.check(&h2.ambient())?;
    if i >= a.p || j >= a.q {
        return Err(Error::Config(format!("index ({i},{j}) out of range")));
    }
    Ok(PFactors {
        dh1: h1.derivative(a.x(i)),
        xh1: dagger(&(&Polynomial::x(a, i) * h1), Block::X, k + 1)?,
        dh2: h2.derivative(a.y(j)),
        yh2: dagger(&(&Polynomial::y(a, j) * h2), Block::Y, l + 1)?,
    })
}

/// Closed-form action of `−i·π(X⁻_{i,j}) = x_iy_j + ∂_{x_i}∂_{y_j}` on `h₁h₂ρ_x^aρ_y^bψ_α`.
#[allow(clippy::too_many_arguments)]
pub fn act_p_closed(
    i: usize,
    j: usize,
    h1: &Polynomial,
    h2: &Polynomial,
    k: u32,
    l: u32,
    a: u32,
    b: u32,
    alpha: &Rational,
) -> Result<ModuleElement> {
    let amb = h1.ambient();
    let (kp, km) = kappas(amb.p, amb.q, k, l);
    let c = p_coefficients(&kp, &km, a, b, alpha)?;
    let f = p_factors(i, j, h1, h2, k, l)?;
    let parts = [
        (&f.dh1 * &f.dh2, &c.mm),
        (&f.dh1 * &f.yh2, &c.mp),
        (&f.xh1 * &f.dh2, &c.pm),
        (&f.xh1 * &f.yh2, &c.pp),
    ];
    let mut out = ModuleElement::zero(amb);
    for (h, coeff) in parts {
        out = out.try_add(&coeff.to_element(&h))?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremalKind {
    Highest,
    Lowest,
}

/// `h₁h₂ρ_y^{μ}ψ_{κ₊}` (highest) or `h₁h₂ρ_x^{μ}ψ_{κ₋}` (lowest), with `h₁, h₂`
/// taken from the computed harmonic bases.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ExtremalSpec {
    pub kind: ExtremalKind,
    pub p: usize,
    pub q: usize,
    pub k: u32,
    pub l: u32,
    pub h1_index: usize,
    pub h2_index: usize,
    pub mu: u32,
}

impl ExtremalSpec {
    pub fn highest(p: usize, q: usize, k: u32, l: u32, mu: u32) -> Self {
        ExtremalSpec {
            kind: ExtremalKind::Highest,
            p,
            q,
            k,
            l,
            h1_index: 0,
            h2_index: 0,
            mu,
        }
    }

    pub fn lowest(p: usize, q: usize, k: u32, l: u32, mu: u32) -> Self {
        ExtremalSpec {
            kind: ExtremalKind::Lowest,
            ..ExtremalSpec::highest(p, q, k, l, mu)
        }
    }

    pub fn ambient(&self) -> Ambient {
        Ambient::new(self.p, self.q)
    }

    pub fn kappas(&self) -> (Rational, Rational) {
        kappas(self.p, self.q, self.k, self.l)
    }

    /// `λ = −κ₊ + κ₋ ± 2μ`.
    pub fn weight(&self) -> Rational {
        let (kp, km) = self.kappas();
        let two_mu = int(2 * self.mu as i64);
        match self.kind {
            ExtremalKind::Highest => -kp + km + two_mu,
            ExtremalKind::Lowest => -kp + km - two_mu,
        }
    }

    /// `ψ` index of the extremal vector: `κ₊` for highest, `κ₋` for lowest.
    pub fn alpha(&self) -> Rational {
        let (kp, km) = self.kappas();
        match self.kind {
            ExtremalKind::Highest => kp,
            ExtremalKind::Lowest => km,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 || self.q == 0 {
            return Err(Error::Config("p, q must be at least 1".into()));
        }
        let n1 = crate::harmonics::dim_harm(self.p, self.k);
        let n2 = crate::harmonics::dim_harm(self.q, self.l);
        if self.h1_index as u128 >= n1 || self.h2_index as u128 >= n2 {
            return Err(Error::Config(format!(
                "harmonic indices ({},{}) out of range: dim ℋ^{}(ℝ^{}) = {n1}, dim ℋ^{}(ℝ^{}) = {n2}",
                self.h1_index, self.h2_index, self.k, self.p, self.l, self.q
            )));
        }
        Ok(())
    }

    /// `h₁h₂`.
    pub fn prefactor(&self) -> Result<Polynomial> {
        self.validate()?;
        let a = self.ambient();
        let h1 = HarmonicBasis::new(a, Block::X, self.k).elements()[self.h1_index].clone();
        let h2 = HarmonicBasis::new(a, Block::Y, self.l).elements()[self.h2_index].clone();
        Ok(&h1 * &h2)
    }

    pub fn radial(&self) -> RadialSum {
        let (a, b) = match self.kind {
            ExtremalKind::Highest => (0, self.mu),
            ExtremalKind::Lowest => (self.mu, 0),
        };
        RadialSum::single(a, b, self.alpha(), Scalar::one()).expect("κ > 0")
    }
}

pub fn extremal_vector(spec: &ExtremalSpec) -> Result<ModuleElement> {
    Ok(spec.radial().to_element(&spec.prefactor()?))
}
