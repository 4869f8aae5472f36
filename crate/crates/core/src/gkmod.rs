//! The modules `M±_m`: ladder formulas, the K-type lattice `Σ_m`, transition
//! patterns, connectivity, graded dimensions and growth invariants.
//!
//! Points of `Σ_m` are pairs `(κ₊, κ₋) = (k + p/2, l + q/2)` with
//! `κ₊ − κ₋ ∈ Λ_m = {−m, −m+2, …, m}`; the highest weight vector in the K-type
//! `(k, l)` is `h₁h₂ρ_y^{μ₋}ψ_{κ₊}` with `μ₋ = (κ₊ − κ₋ + m)/2`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use petgraph::algo::kosaraju_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harmonics::dim_harm;
use crate::module::{
    falling, kappas, p_block, rising, sl2_closed_on_sum, ExtremalKind, ExtremalSpec, PBlock,
    RadialSum, Sl2Op,
};
use crate::poly::{Ambient, Polynomial};
use crate::scalar::{int, Rational, Scalar};

fn binomial(n: u32, k: u32) -> Rational {
    let mut c = Rational::one();
    for t in 0..k {
        c = c * int((n - t) as i64) / int(t as i64 + 1);
    }
    c
}

/// `(X⁻)^ν` on a highest weight vector, or `(X⁺)^ν` on a lowest weight vector,
/// in closed form (radial factor only; the prefactor `h₁h₂` is untouched).
pub fn ladder_closed(spec: &ExtremalSpec, nu: u32) -> Result<RadialSum> {
    let (kp, km) = spec.kappas();
    let lambda = spec.weight();
    let mu = spec.mu;
    let mut out = RadialSum::new();
    for i in 0..=nu {
        let (top, alpha_base, mixed) = match spec.kind {
            ExtremalKind::Highest => (-&lambda + int(nu as i64 - 1), &kp, &km),
            ExtremalKind::Lowest => (&lambda + int(nu as i64 - 1), &km, &kp),
        };
        let mu_r = int(mu as i64);
        let c = binomial(nu, i)
            * falling(&top, i)
            * falling(&mu_r, nu - i)
            * falling(&(mixed + &mu_r - int(1)), nu - i)
            / rising(alpha_base, i);
        let exp = mu as i64 - nu as i64 + i as i64;
        if exp < 0 {
            if !c.is_zero() {
                return Err(Error::Verification(format!(
                    "ladder term i={i} has negative exponent {exp} with coefficient {c}"
                )));
            }
            continue;
        }
        let sign = if spec.kind == ExtremalKind::Lowest && nu % 2 == 1 {
            -c
        } else {
            c
        };
        let (a, b) = match spec.kind {
            ExtremalKind::Highest => (i, exp as u32),
            ExtremalKind::Lowest => (exp as u32, i),
        };
        out.push(a, b, alpha_base + int(i as i64), Scalar::real(sign))?;
    }
    Ok(out)
}

/// The same power computed by iterating the one-step closed sl₂ action.
pub fn ladder_iterated(spec: &ExtremalSpec, nu: u32) -> Result<RadialSum> {
    let (kp, km) = spec.kappas();
    let op = match spec.kind {
        ExtremalKind::Highest => Sl2Op::Xminus,
        ExtremalKind::Lowest => Sl2Op::Xplus,
    };
    let mut f = spec.radial();
    for _ in 0..nu {
        f = sl2_closed_on_sum(op, &kp, &km, &f)?;
    }
    Ok(f)
}

/// The constant `c` with `r = c·v`, or a verification error if `r` is not a multiple of `v`.
pub fn proportionality(r: &RadialSum, v: &RadialSum) -> Result<Scalar> {
    let one = Polynomial::one(Ambient::new(1, 1));
    let ve = v.to_element(&one);
    let re = r.to_element(&one);
    let deg = ve.max_degree().max(re.max_degree());
    let sv = ve.to_series(deg);
    let (m, cv) = sv
        .trailing_term()
        .map(|(m, c)| (m.clone(), c.clone()))
        .ok_or_else(|| Error::Verification("reference vector has zero series".into()))?;
    let c = &re.to_series(deg).coeff(&m) / &cv;
    let residual = r.sub(&v.scale(&c));
    let verdict = residual.zero_verdict();
    if verdict.is_zero && verdict.stable {
        Ok(c)
    } else {
        Err(Error::Verification(format!(
            "{r:?} is not a multiple of {v:?}"
        )))
    }
}

/// The scalar `c` with `(X⁺)ʲ(X⁻)ʲv⁺ = c·v⁺` for a highest weight vector.
pub fn ladder_identity(spec: &ExtremalSpec, j: u32) -> Result<Scalar> {
    if spec.kind != ExtremalKind::Highest {
        return Err(Error::Config(
            "ladder_identity needs a highest weight vector".into(),
        ));
    }
    let (kp, km) = spec.kappas();
    let v = spec.radial();
    let mut f = v.clone();
    for _ in 0..j {
        f = sl2_closed_on_sum(Sl2Op::Xminus, &kp, &km, &f)?;
    }
    for _ in 0..j {
        f = sl2_closed_on_sum(Sl2Op::Xplus, &kp, &km, &f)?;
    }
    proportionality(&f.simplify(), &v)
}

/// Parameter gates shared by the lattice operations.
pub fn check_gates(p: usize, q: usize, m: u32) -> Result<()> {
    if p == 0 || q == 0 {
        return Err(Error::Config("p and q must be at least 1".into()));
    }
    if (p + q) % 2 != 0 {
        return Err(Error::Config(format!(
            "p + q = {} is odd; M±_m is zero unless p ≡ q mod 2",
            p + q
        )));
    }
    if 2 * (m as usize + 3) > p + q {
        return Err(Error::Config(format!(
            "m + 3 ≤ (p+q)/2 fails for (p,q,m) = ({p},{q},{m})"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KType {
    pub k: u32,
    pub l: u32,
}

impl KType {
    pub fn kappas(&self, p: usize, q: usize) -> (Rational, Rational) {
        kappas(p, q, self.k, self.l)
    }

    /// `κ₊ − κ₋ = k − l + (p − q)/2`, an integer under the parity gate.
    pub fn weight_gap(&self, p: usize, q: usize) -> i64 {
        self.k as i64 - self.l as i64 + (p as i64 - q as i64) / 2
    }

    /// `κ₊ + κ₋ = k + l + (p + q)/2`.
    pub fn level(&self, p: usize, q: usize) -> u32 {
        self.k + self.l + ((p + q) / 2) as u32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CaseClass {
    /// Interior of the region: `0 < μ₋ < m`, `k, l > 0`.
    #[serde(rename = "i")]
    Interior,
    /// `μ₋ = 0`.
    #[serde(rename = "ii-a")]
    MuZero,
    /// `μ₋ = m` (only when `m > 0`).
    #[serde(rename = "ii-b")]
    MuMax,
    /// `0 < μ₋ < m` with `k = 0` or `l = 0`.
    #[serde(rename = "ii-c")]
    Edge,
}

impl CaseClass {
    pub fn label(&self) -> &'static str {
        match self {
            CaseClass::Interior => "i",
            CaseClass::MuZero => "ii-a",
            CaseClass::MuMax => "ii-b",
            CaseClass::Edge => "ii-c",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticePoint {
    pub ktype: KType,
    /// `2κ₊`, `2κ₋` as integers.
    pub two_kappa_plus: u32,
    pub two_kappa_minus: u32,
    pub mu_minus: u32,
    pub case: CaseClass,
}

impl LatticePoint {
    pub fn kappa_plus(&self) -> Rational {
        Rational::new(self.two_kappa_plus.into(), 2.into())
    }

    pub fn kappa_minus(&self) -> Rational {
        Rational::new(self.two_kappa_minus.into(), 2.into())
    }
}

fn classify(kt: KType, mu: u32, m: u32) -> CaseClass {
    if mu == 0 {
        CaseClass::MuZero
    } else if mu == m {
        CaseClass::MuMax
    } else if kt.k == 0 || kt.l == 0 {
        CaseClass::Edge
    } else {
        CaseClass::Interior
    }
}

/// Default window `max{m+p, m+q} + 12` on `κ₊ + κ₋`.
pub fn default_window(p: usize, q: usize, m: u32) -> u32 {
    m + p.max(q) as u32 + 12
}

#[derive(Debug, Clone, Serialize)]
pub struct KTypeLattice {
    pub p: usize,
    pub q: usize,
    pub m: u32,
    pub window: u32,
    pub points: Vec<LatticePoint>,
}

impl KTypeLattice {
    pub fn weights(&self) -> Vec<i64> {
        (0..=self.m).map(|t| 2 * t as i64 - self.m as i64).collect()
    }

    pub fn contains(&self, kt: KType) -> bool {
        self.index_of(kt).is_some()
    }

    pub fn index_of(&self, kt: KType) -> Option<usize> {
        self.points
            .binary_search_by(|pt| {
                order_key(pt.ktype, self.p, self.q).cmp(&order_key(kt, self.p, self.q))
            })
            .ok()
    }
}

fn order_key(kt: KType, p: usize, q: usize) -> (u32, u32) {
    (kt.level(p, q), kt.k)
}

/// Membership in `Σ_m` without a window.
pub fn in_support(kt: KType, p: usize, q: usize, m: u32) -> bool {
    let gap = kt.weight_gap(p, q);
    gap.abs() <= m as i64 && (gap + m as i64) % 2 == 0
}

/// `Σ_m ∩ {κ₊ + κ₋ ≤ window}`, sorted by level then `k`.
pub fn ktype_support(p: usize, q: usize, m: u32, window: Option<u32>) -> Result<KTypeLattice> {
    check_gates(p, q, m)?;
    let window = window.unwrap_or_else(|| default_window(p, q, m));
    let base = ((p + q) / 2) as u32;
    let mut points = Vec::new();
    for level in base..=window.max(base) {
        let s = level - base;
        for k in 0..=s {
            let kt = KType { k, l: s - k };
            if !in_support(kt, p, q, m) {
                continue;
            }
            let mu = ((kt.weight_gap(p, q) + m as i64) / 2) as u32;
            points.push(LatticePoint {
                ktype: kt,
                two_kappa_plus: 2 * k + p as u32,
                two_kappa_minus: 2 * (s - k) + q as u32,
                mu_minus: mu,
                case: classify(kt, mu, m),
            });
        }
    }
    if level_check_excluded_branch(p, q, m, &points) {
        return Err(Error::Verification(
            "a point with κ₊ + κ₋ ≤ m + 2 survived the parameter gate".into(),
        ));
    }
    Ok(KTypeLattice {
        p,
        q,
        m,
        window,
        points,
    })
}

/// The alternative solutions `μ₋ ∈ {−κ₋+1, …}` need `κ₊ + κ₋ ≤ m + 2`; under the
/// gate every point has `κ₊ + κ₋ ≥ (p+q)/2 ≥ m + 3`.
fn level_check_excluded_branch(p: usize, q: usize, m: u32, points: &[LatticePoint]) -> bool {
    points.iter().any(|pt| pt.ktype.level(p, q) <= m + 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Direction {
    NE,
    NW,
    SE,
    SW,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::NE, Direction::NW, Direction::SE, Direction::SW];

    /// The block of the p-action that moves in this direction.
    pub fn block(&self) -> PBlock {
        match self {
            Direction::NE => PBlock::PlusPlus,
            Direction::NW => PBlock::MinusPlus,
            Direction::SE => PBlock::PlusMinus,
            Direction::SW => PBlock::MinusMinus,
        }
    }

    /// `(Δk, Δl)`; east increases `κ₊`, north increases `κ₋`.
    pub fn delta(&self) -> (i64, i64) {
        match self {
            Direction::NE => (1, 1),
            Direction::NW => (-1, 1),
            Direction::SE => (1, -1),
            Direction::SW => (-1, -1),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Transition {
    pub direction: Direction,
    pub block: &'static str,
    pub target: Option<KType>,
    /// Simplified radial coefficient, or `None` when the closed form divides by zero.
    pub coefficient: Option<String>,
    pub coefficient_vanishes: bool,
    pub harmonic_factor_vanishes: bool,
    pub edge: bool,
}

/// Whether `∂_{x_i}h` (lowering) or `(x_ih)†` (raising) is nonzero for some
/// `i` and some `h ∈ ℋ^k(ℝⁿ)`: the image spans `ℋ^{k∓1}`.
fn harmonic_factor_nonzero(n: usize, k: u32, raise: bool) -> bool {
    if raise {
        dim_harm(n, k + 1) > 0
    } else {
        k >= 1 && dim_harm(n, k - 1) > 0
    }
}

/// The four transition records of `−iπ(X⁻_{i,j})` at a lattice point.
pub fn transition_pattern(
    point: &LatticePoint,
    p: usize,
    q: usize,
    m: u32,
) -> Result<[Transition; 4]> {
    if !in_support(point.ktype, p, q, m) {
        return Err(Error::Config(format!("{:?} is not in Σ_m", point.ktype)));
    }
    let kp = point.kappa_plus();
    let km = point.kappa_minus();
    let records = Direction::ALL.map(|dir| {
        let (dk, dl) = dir.delta();
        let raise_x = dk > 0;
        let raise_y = dl > 0;
        let harmonic_zero = !(harmonic_factor_nonzero(p, point.ktype.k, raise_x)
            && harmonic_factor_nonzero(q, point.ktype.l, raise_y));
        let coeff = p_block(dir.block(), &kp, &km, 0, point.mu_minus, &kp).map(|c| c.simplify());
        let (coefficient, vanishes) = match &coeff {
            Ok(c) => (Some(format!("{c:?}")), c.is_zero()),
            Err(_) => (None, false),
        };
        let target = {
            let k = point.ktype.k as i64 + dk;
            let l = point.ktype.l as i64 + dl;
            (k >= 0 && l >= 0).then(|| KType {
                k: k as u32,
                l: l as u32,
            })
        };
        let applicable = coeff.is_ok();
        // Inapplicable closed forms only occur where the harmonic factor is zero.
        let edge = applicable && !vanishes && !harmonic_zero && target.is_some();
        Transition {
            direction: dir,
            block: dir.block().label(),
            target,
            coefficient,
            coefficient_vanishes: vanishes,
            harmonic_factor_vanishes: harmonic_zero,
            edge,
        }
    });
    for r in &records {
        if r.coefficient.is_none() && !r.harmonic_factor_vanishes {
            return Err(Error::Verification(format!(
                "{} at {:?} is inapplicable but its harmonic factor is nonzero",
                r.block, point.ktype
            )));
        }
        if r.edge {
            let t = r.target.expect("edge has a target");
            if !in_support(t, p, q, m) {
                return Err(Error::Verification(format!(
                    "{:?} move from {:?} leaves Σ_m with a nonzero coefficient",
                    r.direction, point.ktype
                )));
            }
        }
    }
    Ok(records)
}

/// Coefficient-vanishing pattern predicted by the case analysis:
/// `C₋₊ = 0` iff `μ₋ = 0`, `C₊₋ = 0` iff `μ₋ = m`, the others never vanish.
pub fn expected_vanishing(point: &LatticePoint, m: u32) -> [bool; 4] {
    Direction::ALL.map(|d| match d.block() {
        PBlock::MinusPlus => point.mu_minus == 0,
        PBlock::PlusMinus => point.mu_minus == m,
        _ => false,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Connectivity {
    pub window: u32,
    pub num_points: usize,
    pub num_edges: usize,
    pub strongly_connected: bool,
    pub num_components: usize,
    /// BFS tree from the root along edges: `(child, parent)`.
    pub forward_tree: Vec<(KType, KType)>,
    /// BFS tree to the root along reversed edges: `(child, parent)`.
    pub backward_tree: Vec<(KType, KType)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IrreducibilityReport {
    pub p: usize,
    pub q: usize,
    pub m: u32,
    /// Verdict of the connectivity criterion.
    pub irreducible: bool,
    pub root: KType,
    pub connectivity: Connectivity,
    pub enlarged: Connectivity,
    pub window_invariant: bool,
}

fn bfs_tree(n: usize, adj: &[Vec<usize>], root: usize) -> Vec<(usize, usize)> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                out.push((w, v));
                queue.push_back(w);
            }
        }
    }
    out
}

/// Transition graph of the window and its connectivity certificate.
pub fn connectivity(p: usize, q: usize, m: u32, window: u32) -> Result<Connectivity> {
    let lattice = ktype_support(p, q, m, Some(window))?;
    let n = lattice.points.len();
    let mut graph: DiGraph<KType, Direction> = DiGraph::with_capacity(n, 4 * n);
    let nodes: Vec<NodeIndex> = lattice
        .points
        .iter()
        .map(|pt| graph.add_node(pt.ktype))
        .collect();
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for (idx, pt) in lattice.points.iter().enumerate() {
        for r in transition_pattern(pt, p, q, m)? {
            if !r.edge {
                continue;
            }
            if let Some(t) = lattice.index_of(r.target.expect("edge target")) {
                graph.add_edge(nodes[idx], nodes[t], r.direction);
                fwd[idx].push(t);
                bwd[t].push(idx);
            }
        }
    }
    let comps = kosaraju_scc(&graph);
    let kt = |i: usize| lattice.points[i].ktype;
    let pairs = |v: Vec<(usize, usize)>| {
        v.into_iter()
            .map(|(a, b)| (kt(a), kt(b)))
            .collect::<Vec<_>>()
    };
    let forward_tree = if n > 0 {
        pairs(bfs_tree(n, &fwd, 0))
    } else {
        Vec::new()
    };
    let backward_tree = if n > 0 {
        pairs(bfs_tree(n, &bwd, 0))
    } else {
        Vec::new()
    };
    let spans = n > 0 && forward_tree.len() == n - 1 && backward_tree.len() == n - 1;
    Ok(Connectivity {
        window,
        num_points: n,
        num_edges: graph.edge_count(),
        strongly_connected: comps.len() == 1 && spans,
        num_components: comps.len(),
        forward_tree,
        backward_tree,
    })
}

/// Strong connectivity of the K-type transition graph, checked at the window and
/// at the window enlarged by 4.
pub fn irreducible(
    p: usize,
    q: usize,
    m: u32,
    window: Option<u32>,
) -> Result<IrreducibilityReport> {
    check_gates(p, q, m)?;
    if p < 2 || q < 2 {
        return Err(Error::Config(
            "the irreducibility criterion needs p, q ≥ 2".into(),
        ));
    }
    let w = window.unwrap_or_else(|| default_window(p, q, m));
    let c = connectivity(p, q, m, w)?;
    let big = connectivity(p, q, m, w + 4)?;
    let lattice = ktype_support(p, q, m, Some(w))?;
    let root = lattice
        .points
        .first()
        .map(|pt| pt.ktype)
        .ok_or_else(|| Error::Verification("empty lattice window".into()))?;
    let window_invariant = c.strongly_connected == big.strongly_connected;
    Ok(IrreducibilityReport {
        p,
        q,
        m,
        irreducible: c.strongly_connected && big.strongly_connected,
        root,
        connectivity: c,
        enlarged: big,
        window_invariant,
    })
}

/// `dim(M_n/M_{n−1}) = Σ_{j=0}^m dim ℋ^{n+j}(ℝ^p)·dim ℋ^{n+m−j+(p−q)/2}(ℝ^q)` (`p ≥ q`, swapped otherwise).
pub fn graded_dim(p: usize, q: usize, m: u32, n: u32) -> u128 {
    let (p, q) = if p >= q { (p, q) } else { (q, p) };
    let shift = ((p - q) / 2) as u32;
    (0..=m)
        .map(|j| dim_harm(p, n + j) * dim_harm(q, n + m - j + shift))
        .sum()
}

/// Exact polynomial through `(x₀ + t, values[t])`, as coefficients in ascending powers of `x`.
pub fn interpolate(x0: u32, values: &[BigInt]) -> Vec<Rational> {
    // Newton forward differences, then expand the falling-factorial basis.
    let mut diffs: Vec<Rational> = values.iter().cloned().map(Rational::from_integer).collect();
    let mut newton = Vec::with_capacity(diffs.len());
    while !diffs.is_empty() {
        newton.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let mut coeffs = vec![Rational::zero(); values.len().max(1)];
    // basis_t(x) = C(x − x₀, t) = Π_{s<t} (x − x₀ − s)/(s+1)
    let mut basis = vec![Rational::one()];
    for (t, c) in newton.iter().enumerate() {
        for (d, b) in basis.iter().enumerate() {
            coeffs[d] += c * b;
        }
        let shift = int(x0 as i64 + t as i64);
        let mut next = vec![Rational::zero(); basis.len() + 1];
        for (d, b) in basis.iter().enumerate() {
            next[d + 1] += b;
            next[d] -= b * &shift;
        }
        let denom = int(t as i64 + 1);
        basis = next.into_iter().map(|b| b / &denom).collect();
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

pub fn eval_poly(coeffs: &[Rational], x: u32) -> Rational {
    let x = int(x as i64);
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * &x + c)
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, t| acc * BigInt::from(t))
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthTable {
    pub p: usize,
    pub q: usize,
    pub m: u32,
    pub values: Vec<(u32, String)>,
    /// Ascending coefficients of the fitted polynomial, as `num/den` strings.
    pub fitted: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GkInvariants {
    pub gk_dimension: u32,
    pub bernstein_degree: String,
    pub expected_gk_dimension: u32,
    pub expected_bernstein_degree: String,
    pub fitted_degree: u32,
    pub second_window_agrees: bool,
    pub extra_points_agree: bool,
    pub table: GrowthTable,
}

/// `4(m+1)(p+q−4)!/((p−2)!(q−2)!)`.
pub fn bernstein_formula(p: usize, q: usize, m: u32) -> Rational {
    Rational::new(
        BigInt::from(4 * (m + 1)) * factorial((p + q - 4) as u32),
        factorial(p as u32 - 2) * factorial(q as u32 - 2),
    )
}

/// GK dimension and Bernstein degree from an exact fit of the graded dimensions.
pub fn gk_invariants(p: usize, q: usize, m: u32) -> Result<GkInvariants> {
    check_gates(p, q, m)?;
    if p < 3 || q < 3 {
        return Err(Error::Config("growth invariants need p, q ≥ 3".into()));
    }
    let deg = (p + q - 4) as u32;
    let npts = deg + 2;
    let extra = 5;
    let dims = |range: std::ops::Range<u32>| -> Vec<BigInt> {
        range
            .map(|n| BigInt::from(graded_dim(p, q, m, n)))
            .collect()
    };
    // dim_harm(n, ·) is a polynomial in the degree for n ≥ 3, so the table is
    // polynomial from n = 0 on.
    let first = dims(0..npts);
    let fit = interpolate(0, &first);
    let extra_points_agree = (npts..npts + extra).all(|n| {
        eval_poly(&fit, n) == Rational::from_integer(BigInt::from(graded_dim(p, q, m, n)))
    });
    let start2 = npts + extra;
    let fit2 = interpolate(start2, &dims(start2..start2 + npts));
    let second_window_agrees = fit2 == fit;
    let fitted_degree = (fit.len() - 1) as u32;
    let lead = fit.last().cloned().unwrap_or_else(Rational::zero);
    let bdeg = lead * Rational::from_integer(factorial(fitted_degree));
    let expected = bernstein_formula(p, q, m);
    let inv = GkInvariants {
        gk_dimension: fitted_degree + 1,
        bernstein_degree: bdeg.to_string(),
        expected_gk_dimension: (p + q - 3) as u32,
        expected_bernstein_degree: expected.to_string(),
        fitted_degree,
        second_window_agrees,
        extra_points_agree,
        table: GrowthTable {
            p,
            q,
            m,
            values: (0..start2 + npts)
                .map(|n| (n, graded_dim(p, q, m, n).to_string()))
                .collect(),
            fitted: fit
                .iter()
                .map(|c| format!("{}/{}", c.numer(), c.denom()))
                .collect(),
        },
    };
    if fitted_degree != deg || !extra_points_agree || !second_window_agrees || bdeg != expected {
        return Err(Error::Verification(format!(
            "growth fit mismatch at (p,q,m)=({p},{q},{m}): degree {fitted_degree} (expected {deg}), \
             B-deg {} (expected {}), extra points {extra_points_agree}, second window {second_window_agrees}",
            inv.bernstein_degree, inv.expected_bernstein_degree
        )));
    }
    Ok(inv)
}

/// Weights `κ₊ − κ₋` realized by points of `Σ_m` on the line `κ₊ + κ₋ = j`.
pub fn weights_on_line(p: usize, q: usize, m: u32, j: u32) -> BTreeSet<i64> {
    let base = ((p + q) / 2) as u32;
    if j < base {
        return BTreeSet::new();
    }
    let s = j - base;
    (0..=s)
        .map(|k| KType { k, l: s - k })
        .filter(|kt| in_support(*kt, p, q, m))
        .map(|kt| kt.weight_gap(p, q))
        .collect()
}

/// Least `j` whose line realizes the full weight set `Λ_m`, checked against `max{m+p, m+q}`.
pub fn generating_threshold(p: usize, q: usize, m: u32, window: Option<u32>) -> Result<u32> {
    check_gates(p, q, m)?;
    let w = window.unwrap_or_else(|| default_window(p, q, m));
    let full: BTreeSet<i64> = (0..=m).map(|t| 2 * t as i64 - m as i64).collect();
    let c = (0..=w)
        .find(|&j| weights_on_line(p, q, m, j) == full)
        .ok_or_else(|| Error::Verification(format!("no line up to {w} realizes Λ_m")))?;
    let expected = m + p.max(q) as u32;
    if c != expected {
        return Err(Error::Verification(format!(
            "scanned threshold {c} differs from max{{m+p, m+q}} = {expected}"
        )));
    }
    Ok(c)
}

#[derive(Debug, Clone, Serialize)]
pub struct IsomorphismSample {
    pub ktype: KType,
    pub mu_minus: u32,
    pub mu_plus: u32,
    /// `(X⁻)^m v⁺ = down·v⁻`.
    pub down: String,
    /// `(X⁺)^m v⁻ = up·v⁺`.
    pub up: String,
    /// `(X⁺)^m (X⁻)^m v⁺ = round_trip·v⁺`.
    pub round_trip: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsomorphismReport {
    pub p: usize,
    pub q: usize,
    pub m: u32,
    pub samples: Vec<IsomorphismSample>,
    pub round_trip_constant: String,
}

/// Checks `(X⁻)^m v⁺ ∝ v⁻`, `(X⁺)^m v⁻ ∝ v⁺` with nonzero constants and that the
/// round-trip constant `(m!)²` does not depend on the K-type.
pub fn isomorphism_check(
    p: usize,
    q: usize,
    m: u32,
    samples: &[KType],
) -> Result<IsomorphismReport> {
    let mut out = Vec::new();
    let mut round: Option<Scalar> = None;
    for &kt in samples {
        if !in_support(kt, p, q, m) {
            return Err(Error::Config(format!("{kt:?} is not in Σ_m")));
        }
        let mu_minus = ((kt.weight_gap(p, q) + m as i64) / 2) as u32;
        let mu_plus = m - mu_minus;
        let hi = ExtremalSpec::highest(p, q, kt.k, kt.l, mu_minus);
        let lo = ExtremalSpec::lowest(p, q, kt.k, kt.l, mu_plus);
        let down = proportionality(&ladder_iterated(&hi, m)?.simplify(), &lo.radial())?;
        let up = proportionality(&ladder_iterated(&lo, m)?.simplify(), &hi.radial())?;
        let rt = ladder_identity(&hi, m)?;
        if down.is_zero() || up.is_zero() || rt.is_zero() {
            return Err(Error::Verification(format!(
                "zero isomorphism constant at {kt:?}"
            )));
        }
        if &down * &up != rt {
            return Err(Error::Verification(format!(
                "(X⁺)^m(X⁻)^m constant {rt:?} ≠ product of one-way constants at {kt:?}"
            )));
        }
        match &round {
            None => round = Some(rt.clone()),
            Some(r) if *r != rt => {
                return Err(Error::Verification(format!(
                    "round-trip constant depends on the K-type: {r:?} vs {rt:?} at {kt:?}"
                )))
            }
            _ => {}
        }
        out.push(IsomorphismSample {
            ktype: kt,
            mu_minus,
            mu_plus,
            down: format!("{down:?}"),
            up: format!("{up:?}"),
            round_trip: format!("{rt:?}"),
        });
    }
    Ok(IsomorphismReport {
        p,
        q,
        m,
        samples: out,
        round_trip_constant: round.map(|r| format!("{r:?}")).unwrap_or_default(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AnnihilationRecord {
    pub ktype: KType,
    pub mu_minus: u32,
    pub h_eigenvalue: String,
    pub raising_kills: bool,
    pub top_power_kills: bool,
    pub lower_powers_nonzero: bool,
}

impl AnnihilationRecord {
    pub fn passes(&self, m: u32) -> bool {
        self.h_eigenvalue == int(m as i64).to_string()
            && self.raising_kills
            && self.top_power_kills
            && self.lower_powers_nonzero
    }
}

/// The defining conditions of `M⁺_m` for the highest weight vector of one K-type,
/// evaluated with the closed sl₂ action.
pub fn annihilation(
    point: &LatticePoint,
    p: usize,
    q: usize,
    m: u32,
) -> Result<AnnihilationRecord> {
    let spec = ExtremalSpec::highest(p, q, point.ktype.k, point.ktype.l, point.mu_minus);
    let (kp, km) = spec.kappas();
    let v = spec.radial();
    let h = sl2_closed_on_sum(Sl2Op::H, &kp, &km, &v)?;
    let eig = proportionality(&h, &v)?;
    let raising_kills = sl2_closed_on_sum(Sl2Op::Xplus, &kp, &km, &v)?
        .simplify()
        .is_zero();
    let mut f = v;
    let mut lower_powers_nonzero = true;
    for _ in 0..m {
        f = sl2_closed_on_sum(Sl2Op::Xminus, &kp, &km, &f)?;
        lower_powers_nonzero &= !f.simplify().is_zero();
    }
    f = sl2_closed_on_sum(Sl2Op::Xminus, &kp, &km, &f)?;
    let top_power_kills = f.simplify().is_zero();
    Ok(AnnihilationRecord {
        ktype: point.ktype,
        mu_minus: point.mu_minus,
        h_eigenvalue: eig.re.to_string(),
        raising_kills,
        top_power_kills,
        lower_powers_nonzero,
    })
}

/// Collapses a lattice to `(level, k) → case` for compact comparisons.
pub fn case_map(lattice: &KTypeLattice) -> BTreeMap<(u32, u32), CaseClass> {
    lattice
        .points
        .iter()
        .map(|pt| ((pt.ktype.k, pt.ktype.l), pt.case))
        .collect()
}

/// `ν`-th ladder power as an integer-like check: closed form minus iteration is zero.
pub fn ladder_agrees(spec: &ExtremalSpec, nu: u32) -> Result<bool> {
    let closed = ladder_closed(spec, nu)?;
    let iter = ladder_iterated(spec, nu)?;
    let v = closed.sub(&iter).zero_verdict();
    Ok(v.is_zero && v.stable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn graded_dim_examples() {
        for n in 0..6u32 {
            assert_eq!(graded_dim(3, 3, 0, n), ((2 * n + 1) * (2 * n + 1)) as u128);
        }
        assert_eq!(graded_dim(4, 4, 1, 1), 72);
    }

    #[test]
    fn interpolation_recovers_square() {
        let vals: Vec<BigInt> = (3..7)
            .map(|n: i64| BigInt::from((2 * n + 1) * (2 * n + 1)))
            .collect();
        let c = interpolate(3, &vals);
        assert_eq!(c, vec![int(1), int(4), int(4)]);
    }

    #[test]
    fn small_invariants() {
        let g = gk_invariants(3, 3, 0).unwrap();
        assert_eq!((g.gk_dimension, g.bernstein_degree.as_str()), (3, "8"));
        let g = gk_invariants(4, 4, 1).unwrap();
        assert_eq!((g.gk_dimension, g.bernstein_degree.as_str()), (5, "48"));
    }

    #[test]
    fn thresholds() {
        assert_eq!(generating_threshold(14, 12, 4, None).unwrap(), 18);
        assert_eq!(generating_threshold(3, 3, 0, None).unwrap(), 3);
        assert_eq!(generating_threshold(4, 4, 1, None).unwrap(), 5);
    }

    #[test]
    fn gates() {
        assert!(ktype_support(3, 4, 0, None).is_err());
        assert!(ktype_support(3, 3, 1, None).is_err());
        assert!(ktype_support(4, 4, 1, None).is_ok());
    }

    #[test]
    fn figure_points() {
        let lat = ktype_support(14, 12, 4, None).unwrap();
        let has = |kp2: u32, km2: u32| {
            lat.points
                .iter()
                .any(|pt| pt.two_kappa_plus == kp2 && pt.two_kappa_minus == km2)
        };
        assert!(has(14, 14));
        assert!(has(16, 12));
        assert!(!has(14, 12));
        assert!(lat.points.iter().all(|pt| pt.mu_minus <= 4));
    }

    #[test]
    fn ladder_single_step() {
        let spec = ExtremalSpec::highest(4, 4, 1, 0, 1);
        assert!(ladder_agrees(&spec, 1).unwrap());
        assert!(ladder_agrees(&spec, 2).unwrap());
        let low = ExtremalSpec::lowest(4, 4, 0, 1, 1);
        assert!(ladder_agrees(&low, 2).unwrap());
    }

    #[test]
    fn ladder_identity_values() {
        // weight m = 2: κ₊ = κ₋ = 2, μ₋ = 1 at (p,q) = (4,4).
        let spec = ExtremalSpec::highest(4, 4, 0, 0, 1);
        assert_eq!(spec.weight(), int(2));
        assert_eq!(ladder_identity(&spec, 1).unwrap(), Scalar::from_int(2));
        assert_eq!(ladder_identity(&spec, 2).unwrap(), Scalar::from_int(4));
        assert_eq!(ladder_identity(&spec, 3).unwrap(), Scalar::from_int(0));
        let _ = rat(1, 2);
    }

    #[test]
    fn small_irreducible() {
        assert!(irreducible(3, 3, 0, None).unwrap().irreducible);
        assert!(irreducible(4, 4, 1, None).unwrap().irreducible);
    }

    #[test]
    fn isomorphism_constants() {
        let r = isomorphism_check(
            4,
            4,
            1,
            &[
                KType { k: 0, l: 1 },
                KType { k: 1, l: 0 },
                KType { k: 1, l: 2 },
            ],
        )
        .unwrap();
        assert_eq!(r.round_trip_constant, "1");
    }
}
