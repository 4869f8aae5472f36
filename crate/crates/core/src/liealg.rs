//! The Lie algebra o(p,q) as (p+q)×(p+q) matrices and its two realizations by
//! differential operators.
//!
//! Basis (indices 0-based here, printed 1-based; `ī = p + i`):
//! - `PlusXX(i,j)`: `E_{i,j} − E_{j,i}` for `i,j < p`,
//! - `PlusYY(i,j)`: `E_{ī,j̄} − E_{j̄,ī}` for `i,j < q`,
//! - `Minus(i,j)`:  `E_{i,j̄} + E_{j̄,i}` for `i < p, j < q`.
//!
//! Structure constants are never tabulated: brackets are matrix commutators and
//! arbitrary elements are expanded through the basis with the invariant form
//! `B(X,Y) = ½ tr(XY)`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Ambient, Block, Polynomial};
use crate::scalar::{Rational, Scalar};
use crate::weyl::WeylOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    PlusXX(usize, usize),
    PlusYY(usize, usize),
    Minus(usize, usize),
}

impl BasisLabel {
    pub fn validate(&self, p: usize, q: usize) -> Result<()> {
        let ok = match *self {
            BasisLabel::PlusXX(i, j) => i < p && j < p && i != j,
            BasisLabel::PlusYY(i, j) => i < q && j < q && i != j,
            BasisLabel::Minus(i, j) => i < p && j < q,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "basis label {self} invalid for (p,q)=({p},{q})"
            )))
        }
    }

    pub fn is_compact(&self) -> bool {
        !matches!(self, BasisLabel::Minus(..))
    }

    /// The standard basis: `PlusXX(i,j)`, `PlusYY(i,j)` with `i < j`, then all `Minus(i,j)`.
    pub fn basis(p: usize, q: usize) -> Vec<BasisLabel> {
        let mut out = Vec::new();
        for i in 0..p {
            for j in i + 1..p {
                out.push(BasisLabel::PlusXX(i, j));
            }
        }
        for i in 0..q {
            for j in i + 1..q {
                out.push(BasisLabel::PlusYY(i, j));
            }
        }
        for i in 0..p {
            for j in 0..q {
                out.push(BasisLabel::Minus(i, j));
            }
        }
        out
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisLabel::PlusXX(i, j) => write!(f, "X+[{},{}]", i + 1, j + 1),
            BasisLabel::PlusYY(i, j) => write!(f, "X+[{}',{}']", i + 1, j + 1),
            BasisLabel::Minus(i, j) => write!(f, "X-[{},{}']", i + 1, j + 1),
        }
    }
}

/// Parses the printed form, e.g. `X+[1,2]`, `X+[1',2']`, `X-[1,2']`.
impl std::str::FromStr for BasisLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad basis label {s:?}"));
        let s = s.trim();
        let (sign, rest) = s
            .strip_prefix("X+[")
            .map(|r| ('+', r))
            .or_else(|| s.strip_prefix("X-[").map(|r| ('-', r)))
            .ok_or_else(bad)?;
        let (a, b) = rest
            .strip_suffix(']')
            .and_then(|r| r.split_once(','))
            .ok_or_else(bad)?;
        let index = |t: &str| -> Result<(usize, bool)> {
            let (t, primed) = match t.trim().strip_suffix('\'') {
                Some(t) => (t, true),
                None => (t.trim(), false),
            };
            let n: usize = t.parse().map_err(|_| bad())?;
            n.checked_sub(1).map(|n| (n, primed)).ok_or_else(bad)
        };
        match (sign, index(a)?, index(b)?) {
            ('+', (i, false), (j, false)) => Ok(BasisLabel::PlusXX(i, j)),
            ('+', (i, true), (j, true)) => Ok(BasisLabel::PlusYY(i, j)),
            ('-', (i, false), (j, true)) => Ok(BasisLabel::Minus(i, j)),
            _ => Err(bad()),
        }
    }
}

/// Dense square matrix of scalars.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Scalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// `I_{p,q} = diag(1_p, −1_q)`.
    pub fn ipq(p: usize, q: usize) -> Self {
        let mut m = Matrix::identity(p + q);
        for j in p..p + q {
            m.set(j, j, Scalar::from_int(-1));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.n + c] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * n + c] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.n {
            t += self.get(i, i);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|c| format!("{:?}", self.get(r, c)))
                .collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// An element of the complexified o(p,q).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieElement {
    p: usize,
    q: usize,
    matrix: Matrix,
}

impl LieElement {
    /// Wraps a matrix after checking `ᵗX·I_{p,q} + I_{p,q}·X = 0`.
    pub fn from_matrix(p: usize, q: usize, matrix: Matrix) -> Result<Self> {
        if matrix.dim() != p + q {
            return Err(Error::Config(format!(
                "matrix of size {} does not fit (p,q)=({p},{q})",
                matrix.dim()
            )));
        }
        let e = LieElement { p, q, matrix };
        if !e.satisfies_membership() {
            return Err(Error::Domain("matrix is not in o(p,q)".into()));
        }
        Ok(e)
    }

    pub fn zero(p: usize, q: usize) -> Self {
        LieElement {
            p,
            q,
            matrix: Matrix::zeros(p + q),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn pq(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn satisfies_membership(&self) -> bool {
        let ipq = Matrix::ipq(self.p, self.q);
        self.matrix
            .transpose()
            .mul(&ipq)
            .add(&ipq.mul(&self.matrix))
            .is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> LieElement {
        LieElement {
            p: self.p,
            q: self.q,
            matrix: self.matrix.scale(c),
        }
    }

    pub fn add(&self, other: &LieElement) -> Result<LieElement> {
        check_pq(self, other)?;
        Ok(LieElement {
            p: self.p,
            q: self.q,
            matrix: self.matrix.add(&other.matrix),
        })
    }

    /// Coordinates in the standard basis, computed as `B(X, X_a) / B(X_a, X_a)`.
    pub fn expand(&self) -> Vec<(BasisLabel, Scalar)> {
        BasisLabel::basis(self.p, self.q)
            .into_iter()
            .filter_map(|label| {
                let xa = basis_element(label, self.p, self.q).expect("valid basis label");
                let c = &killing_half_trace(self, &xa) / &killing_half_trace(&xa, &xa);
                (!c.is_zero()).then_some((label, c))
            })
            .collect()
    }
}

fn check_pq(a: &LieElement, b: &LieElement) -> Result<()> {
    if a.p == b.p && a.q == b.q {
        Ok(())
    } else {
        Err(Error::AmbientMismatch(a.p, a.q, b.p, b.q))
    }
}

/// `B(X,Y) = ½ tr(XY)`.
pub fn killing_half_trace(x: &LieElement, y: &LieElement) -> Scalar {
    &x.matrix.mul(&y.matrix).trace() * &Scalar::from_ratio(1, 2)
}

pub fn basis_element(label: BasisLabel, p: usize, q: usize) -> Result<LieElement> {
    label.validate(p, q)?;
    let mut m = Matrix::zeros(p + q);
    let one = Scalar::one();
    let minus = Scalar::from_int(-1);
    match label {
        BasisLabel::PlusXX(i, j) => {
            m.set(i, j, one);
            m.set(j, i, minus);
        }
        BasisLabel::PlusYY(i, j) => {
            m.set(p + i, p + j, one);
            m.set(p + j, p + i, minus);
        }
        BasisLabel::Minus(i, j) => {
            m.set(i, p + j, one.clone());
            m.set(p + j, i, one);
        }
    }
    Ok(LieElement { p, q, matrix: m })
}

/// Matrix commutator `XY − YX`.
pub fn bracket(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    check_pq(x, y)?;
    Ok(LieElement {
        p: x.p,
        q: x.q,
        matrix: x.matrix.mul(&y.matrix).sub(&y.matrix.mul(&x.matrix)),
    })
}

fn rotation(a: Ambient, u: usize, v: usize) -> WeylOperator {
    // −u' ∂_v + v' ∂_u written for the generator with (i,j) = (v,u):
    // caller passes (i, j) and gets −x_j ∂_i + x_i ∂_j.
    let (i, j) = (u, v);
    &(&WeylOperator::coordinate(a, i) * &WeylOperator::partial(a, j))
        - &(&WeylOperator::coordinate(a, j) * &WeylOperator::partial(a, i))
}

/// The representation obtained by quantizing the moment map.
pub fn pi(label: BasisLabel, p: usize, q: usize) -> Result<WeylOperator> {
    label.validate(p, q)?;
    let a = Ambient::new(p, q);
    Ok(match label {
        BasisLabel::PlusXX(i, j) => rotation(a, a.x(i), a.x(j)),
        BasisLabel::PlusYY(i, j) => rotation(a, a.y(i), a.y(j)),
        BasisLabel::Minus(i, j) => {
            let xy = &WeylOperator::coordinate(a, a.x(i)) * &WeylOperator::coordinate(a, a.y(j));
            let dd = &WeylOperator::partial(a, a.x(i)) * &WeylOperator::partial(a, a.y(j));
            (&xy + &dd).scale(&Scalar::i())
        }
    })
}

/// The differentiated left-regular representation.
pub fn pi_sharp(label: BasisLabel, p: usize, q: usize) -> Result<WeylOperator> {
    label.validate(p, q)?;
    let a = Ambient::new(p, q);
    Ok(match label {
        BasisLabel::Minus(i, j) => {
            let t1 = &WeylOperator::coordinate(a, a.x(i)) * &WeylOperator::partial(a, a.y(j));
            let t2 = &WeylOperator::coordinate(a, a.y(j)) * &WeylOperator::partial(a, a.x(i));
            -(&t1 + &t2)
        }
        _ => pi(label, p, q)?,
    })
}

fn extend_linearly(
    x: &LieElement,
    rep: fn(BasisLabel, usize, usize) -> Result<WeylOperator>,
) -> Result<WeylOperator> {
    let (p, q) = x.pq();
    let mut acc = WeylOperator::zero(Ambient::new(p, q));
    for (label, c) in x.expand() {
        acc = &acc + &rep(label, p, q)?.scale(&c);
    }
    Ok(acc)
}

pub fn pi_element(x: &LieElement) -> Result<WeylOperator> {
    extend_linearly(x, pi)
}

pub fn pi_sharp_element(x: &LieElement) -> Result<WeylOperator> {
    extend_linearly(x, pi_sharp)
}

fn substitute_y_block(
    op: &WeylOperator,
    y_image: impl Fn(Ambient, usize) -> WeylOperator,
    dy_image: impl Fn(Ambient, usize) -> WeylOperator,
) -> WeylOperator {
    let a = op.ambient();
    let n = a.nvars();
    let mut acc = WeylOperator::zero(a);
    for (key, c) in op.terms() {
        let mut xmult = key.mult.clone();
        let mut xderiv = key.deriv.clone();
        for v in a.block_vars(Block::Y) {
            xmult.0[v] = 0;
            xderiv.0[v] = 0;
        }
        let mut term = WeylOperator::from_terms(a, [(xmult, xderiv, c.clone())]);
        for j in 0..a.q {
            let v = a.y(j);
            term = &term * &y_image(a, j).pow(key.mult.0[v] as u32);
        }
        for j in 0..a.q {
            let v = a.y(j);
            term = &term * &dy_image(a, j).pow(key.deriv.0[v] as u32);
        }
        debug_assert_eq!(term.ambient().nvars(), n);
        acc = &acc + &term;
    }
    acc
}

/// Partial Fourier transform in the y-block: `y_j ↦ i∂_{η_j}`, `∂_{y_j} ↦ i·η_j`,
/// with `η_j` reusing the `y_j` slots.
pub fn partial_fourier(op: &WeylOperator) -> WeylOperator {
    substitute_y_block(
        op,
        |a, j| WeylOperator::partial(a, a.y(j)).scale(&Scalar::i()),
        |a, j| WeylOperator::coordinate(a, a.y(j)).scale(&Scalar::i()),
    )
}

/// Inverse of [`partial_fourier`]: `η_j ↦ −i∂_{y_j}`, `∂_{η_j} ↦ −i·y_j`.
pub fn inverse_partial_fourier(op: &WeylOperator) -> WeylOperator {
    let minus_i = -Scalar::i();
    substitute_y_block(
        op,
        |a, j| WeylOperator::partial(a, a.y(j)).scale(&minus_i),
        |a, j| WeylOperator::coordinate(a, a.y(j)).scale(&minus_i),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub h: WeylOperator,
    pub x_plus: WeylOperator,
    pub x_minus: WeylOperator,
}

/// `H = −E_x − p/2 + E_y + q/2`, `X⁺ = −½(Δ_x + r_y²)`, `X⁻ = ½(r_x² + Δ_y)`.
pub fn sl2_triple(p: usize, q: usize) -> Sl2Triple {
    let a = Ambient::new(p, q);
    let half = Scalar::from_ratio(1, 2);
    let h = &(&WeylOperator::euler(a, Block::Y) - &WeylOperator::euler(a, Block::X))
        + &WeylOperator::scalar(a, Scalar::from_ratio(q as i64 - p as i64, 2));
    let x_plus = (&WeylOperator::laplacian(a, Block::X)
        + &WeylOperator::radius_squared(a, Block::Y))
        .scale(&-half.clone());
    let x_minus = (&WeylOperator::radius_squared(a, Block::X)
        + &WeylOperator::laplacian(a, Block::Y))
        .scale(&half);
    Sl2Triple { h, x_plus, x_minus }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasimirKind {
    /// Casimir of o(p,q) through `π`.
    G,
    /// Casimir of the compact part `k = o(p) ⊕ o(q)`.
    K,
    /// Casimir of the commuting sl₂.
    Sl2,
}

/// The Casimir built from its definition: a `B`-dual basis sum for `G`/`K`,
/// `H² + 2(X⁺X⁻ + X⁻X⁺)` for `Sl2`.
pub fn casimir_from_definition(kind: CasimirKind, p: usize, q: usize) -> WeylOperator {
    let a = Ambient::new(p, q);
    match kind {
        CasimirKind::G | CasimirKind::K => {
            let mut acc = WeylOperator::zero(a);
            for label in BasisLabel::basis(p, q) {
                if kind == CasimirKind::K && !label.is_compact() {
                    continue;
                }
                let xa = basis_element(label, p, q).expect("basis label");
                let norm = killing_half_trace(&xa, &xa);
                let op = pi(label, p, q).expect("basis label");
                acc = &acc + &(&op * &op).scale(&norm.inv());
            }
            acc
        }
        CasimirKind::Sl2 => {
            let t = sl2_triple(p, q);
            let anti = &(&t.x_plus * &t.x_minus) + &(&t.x_minus * &t.x_plus);
            &(&t.h * &t.h) + &anti.scale(&Scalar::from_int(2))
        }
    }
}

/// The Casimir as an explicit expression in `E_x, E_y, r², Δ`.
pub fn casimir_closed_form(kind: CasimirKind, p: usize, q: usize) -> WeylOperator {
    let a = Ambient::new(p, q);
    let (pi_, qi) = (p as i64, q as i64);
    let s = |n: i64| WeylOperator::scalar(a, Scalar::from_int(n));
    let ex = WeylOperator::euler(a, Block::X);
    let ey = WeylOperator::euler(a, Block::Y);
    let rx = WeylOperator::radius_squared(a, Block::X);
    let ry = WeylOperator::radius_squared(a, Block::Y);
    let lx = WeylOperator::laplacian(a, Block::X);
    let ly = WeylOperator::laplacian(a, Block::Y);
    match kind {
        CasimirKind::K => {
            &(&(&(&ex * &ex) + &(&s(pi_ - 2) * &ex)) - &(&rx * &lx))
                + &(&(&(&ey * &ey) + &(&s(qi - 2) * &ey)) - &(&ry * &ly))
        }
        CasimirKind::G | CasimirKind::Sl2 => {
            let d = &ex - &ey;
            let quartic = &(&(&rx * &ry) + &(&rx * &lx)) + &(&(&ry * &ly) + &(&lx * &ly));
            let common =
                &(&(&(&d * &d) + &(&s(pi_ - qi) * &d)) - &(&s(2) * &(&ex + &ey))) - &quartic;
            let constant = if kind == CasimirKind::G {
                Scalar::from_int(-pi_ * qi)
            } else {
                &Scalar::from_ratio((pi_ - qi) * (pi_ - qi), 4) - &Scalar::from_int(pi_ + qi)
            };
            &common + &WeylOperator::scalar(a, constant)
        }
    }
}

/// Casimir operator, returned only when the definition and the closed form agree.
pub fn casimir(kind: CasimirKind, p: usize, q: usize) -> Result<WeylOperator> {
    if p == 0 || q == 0 {
        return Err(Error::Config("casimir requires p, q >= 1".into()));
    }
    let def = casimir_from_definition(kind, p, q);
    let closed = casimir_closed_form(kind, p, q);
    if def != closed {
        return Err(Error::Verification(format!(
            "{kind:?} Casimir at (p,q)=({p},{q}): definition {def:?} != closed form {closed:?}"
        )));
    }
    if kind == CasimirKind::Sl2 {
        let t = sl2_triple(p, q);
        let two = Scalar::from_int(2);
        let four = Scalar::from_int(4);
        let h2 = &t.h * &t.h;
        let v1 = &(&h2 - &t.h.scale(&two)) + &(&t.x_plus * &t.x_minus).scale(&four);
        let v2 = &(&h2 + &t.h.scale(&two)) + &(&t.x_minus * &t.x_plus).scale(&four);
        if v1 != def || v2 != def {
            return Err(Error::Verification(
                "sl2 Casimir alternative forms disagree".into(),
            ));
        }
    }
    Ok(def)
}

/// The scalar `−¼(p+q)² + (p+q)` relating the o(p,q) and sl₂ Casimirs.
pub fn casimir_shift(p: usize, q: usize) -> Rational {
    let n = Rational::from_integer(((p + q) as i64).into());
    &n - &(&n * &n) / Rational::from_integer(4.into())
}

/// `μ(z) = (−x·ᵗy + y·ᵗx)·I_{p,q}` for `z = x + i·y`.
pub fn moment_map(x: &[Rational], y: &[Rational], p: usize, q: usize) -> Result<Matrix> {
    let n = p + q;
    if x.len() != n || y.len() != n {
        return Err(Error::Config(format!(
            "moment map expects vectors of length {n}, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    let mut m = Matrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            let v = &y[r] * &x[c] - &x[r] * &y[c];
            m.set(r, c, Scalar::real(v));
        }
    }
    Ok(m.mul(&Matrix::ipq(p, q)))
}

/// `π(X)` restricted to polynomials: convenience for callers that only need the image.
pub fn apply_pi(label: BasisLabel, f: &Polynomial) -> Result<Polynomial> {
    let a = f.ambient();
    pi(label, a.p, a.q)?.apply(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn label_text_roundtrip() {
        for l in BasisLabel::basis(3, 2) {
            assert_eq!(l.to_string().parse::<BasisLabel>().unwrap(), l);
        }
        for bad in ["X+[1,2']", "X-[1,2]", "X+[0,1]", "Y+[1,2]", "X+[1,2"] {
            assert!(bad.parse::<BasisLabel>().is_err(), "{bad}");
        }
    }

    #[test]
    fn basis_matrices() {
        let x = basis_element(BasisLabel::PlusXX(0, 1), 2, 2).unwrap();
        assert_eq!(*x.matrix().get(0, 1), Scalar::from_int(1));
        assert_eq!(*x.matrix().get(1, 0), Scalar::from_int(-1));
        let y = basis_element(BasisLabel::Minus(0, 0), 2, 2).unwrap();
        assert_eq!(*y.matrix().get(0, 2), Scalar::from_int(1));
        assert_eq!(*y.matrix().get(2, 0), Scalar::from_int(1));
        for (p, q) in [(1, 1), (2, 2), (3, 1), (2, 3)] {
            for l in BasisLabel::basis(p, q) {
                assert!(basis_element(l, p, q).unwrap().satisfies_membership());
            }
            assert_eq!(BasisLabel::basis(p, q).len(), (p + q) * (p + q - 1) / 2);
        }
    }

    #[test]
    fn invalid_labels() {
        assert!(basis_element(BasisLabel::PlusXX(1, 1), 2, 2).is_err());
        assert!(basis_element(BasisLabel::Minus(2, 0), 2, 2).is_err());
        assert!(pi(BasisLabel::PlusYY(0, 3), 2, 2).is_err());
    }

    #[test]
    fn bracket_of_rotations() {
        let x12 = basis_element(BasisLabel::PlusXX(0, 1), 3, 1).unwrap();
        let x23 = basis_element(BasisLabel::PlusXX(1, 2), 3, 1).unwrap();
        let x13 = basis_element(BasisLabel::PlusXX(0, 2), 3, 1).unwrap();
        assert_eq!(bracket(&x12, &x23).unwrap(), x13);
        assert!(bracket(&x12, &x12).unwrap().is_zero());
        let m = basis_element(BasisLabel::Minus(0, 0), 3, 1).unwrap();
        assert!(bracket(&m, &m).unwrap().is_zero());
    }

    #[test]
    fn pi_formulas() {
        let a = Ambient::new(2, 2);
        let expected = &(&WeylOperator::coordinate(a, 0) * &WeylOperator::partial(a, 1))
            - &(&WeylOperator::coordinate(a, 1) * &WeylOperator::partial(a, 0));
        assert_eq!(pi(BasisLabel::PlusXX(0, 1), 2, 2).unwrap(), expected);
        let m = pi(BasisLabel::Minus(0, 0), 2, 2).unwrap();
        let xy = &WeylOperator::coordinate(a, 0) * &WeylOperator::coordinate(a, 2);
        let dd = &WeylOperator::partial(a, 0) * &WeylOperator::partial(a, 2);
        assert_eq!(m, (&xy + &dd).scale(&Scalar::i()));
        let s = pi_sharp(BasisLabel::Minus(0, 0), 2, 2).unwrap();
        let t1 = &WeylOperator::coordinate(a, 0) * &WeylOperator::partial(a, 2);
        let t2 = &WeylOperator::coordinate(a, 2) * &WeylOperator::partial(a, 0);
        assert_eq!(s, -(&t1 + &t2));
        assert_eq!(
            pi_sharp(BasisLabel::PlusXX(0, 1), 2, 2).unwrap(),
            pi(BasisLabel::PlusXX(0, 1), 2, 2).unwrap()
        );
    }

    #[test]
    fn pi_respects_brackets_on_rotations() {
        let (p, q) = (3, 1);
        let l1 = BasisLabel::PlusXX(0, 1);
        let l2 = BasisLabel::PlusXX(1, 2);
        let lhs = pi(l1, p, q)
            .unwrap()
            .commutator(&pi(l2, p, q).unwrap())
            .unwrap();
        assert_eq!(lhs, pi(BasisLabel::PlusXX(0, 2), p, q).unwrap());
    }

    #[test]
    fn expansion_roundtrip() {
        let (p, q) = (2, 2);
        let mut x = LieElement::zero(p, q);
        for (k, l) in BasisLabel::basis(p, q).into_iter().enumerate() {
            x = x
                .add(
                    &basis_element(l, p, q)
                        .unwrap()
                        .scale(&Scalar::from_int(k as i64 - 2)),
                )
                .unwrap();
        }
        let mut back = LieElement::zero(p, q);
        for (l, c) in x.expand() {
            back = back
                .add(&basis_element(l, p, q).unwrap().scale(&c))
                .unwrap();
        }
        assert_eq!(back, x);
    }

    #[test]
    fn partial_fourier_examples() {
        let m = pi(BasisLabel::Minus(0, 0), 2, 2).unwrap();
        assert_eq!(
            partial_fourier(&m),
            pi_sharp(BasisLabel::Minus(0, 0), 2, 2).unwrap()
        );
        let k = pi(BasisLabel::PlusXX(0, 1), 2, 2).unwrap();
        assert_eq!(partial_fourier(&k), k);
        let y = pi(BasisLabel::PlusYY(0, 1), 2, 2).unwrap();
        assert_eq!(partial_fourier(&y), y);
        assert_eq!(inverse_partial_fourier(&partial_fourier(&m)), m);
    }

    #[test]
    fn sl2_relations() {
        for (p, q) in [(3, 3), (2, 4), (1, 1)] {
            let t = sl2_triple(p, q);
            let two = Scalar::from_int(2);
            assert_eq!(t.h.commutator(&t.x_plus).unwrap(), t.x_plus.scale(&two));
            assert_eq!(
                t.h.commutator(&t.x_minus).unwrap(),
                t.x_minus.scale(&-two.clone())
            );
            assert_eq!(t.x_plus.commutator(&t.x_minus).unwrap(), t.h);
        }
        let t = sl2_triple(2, 2);
        let m = pi(BasisLabel::Minus(0, 0), 2, 2).unwrap();
        assert!(m.commutator(&t.x_plus).unwrap().is_zero());
    }

    #[test]
    fn casimir_scalar_relation() {
        for (p, q) in [(3, 3), (2, 2), (2, 4)] {
            let g = casimir(CasimirKind::G, p, q).unwrap();
            let s = casimir(CasimirKind::Sl2, p, q).unwrap();
            let diff = (&g - &s).as_scalar().expect("scalar difference");
            assert_eq!(diff, Scalar::real(casimir_shift(p, q)));
        }
        assert!(casimir(CasimirKind::K, 2, 3).is_ok());
    }

    #[test]
    fn moment_map_values() {
        let e = |k: usize| {
            (0..4)
                .map(|i| if i == k { int(1) } else { int(0) })
                .collect::<Vec<_>>()
        };
        let zero = vec![int(0); 4];
        assert!(moment_map(&e(0), &zero, 2, 2).unwrap().is_zero());
        let m = moment_map(&e(0), &e(1), 2, 2).unwrap();
        let mut expected = Matrix::zeros(4);
        expected.set(1, 0, Scalar::from_int(1));
        expected.set(0, 1, Scalar::from_int(-1));
        assert_eq!(m, expected);
        assert!(moment_map(&e(0), &e(1)[..3], 2, 2).is_err());
        let _ = rat(1, 2);
    }
}
