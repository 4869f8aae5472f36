//! Verification suites driven by the CLI and the acceptance tests.

use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gkmod::{
    annihilation, default_window, expected_vanishing, generating_threshold, gk_invariants,
    irreducible, isomorphism_check, ktype_support, ladder_agrees, ladder_identity,
    transition_pattern,
};
use crate::harmonics::{dagger, HarmonicBasis};
use crate::liealg::{
    basis_element, bracket, casimir, casimir_shift, inverse_partial_fourier, moment_map,
    partial_fourier, pi, pi_element, pi_sharp, pi_sharp_element, sl2_triple, BasisLabel,
    CasimirKind, Matrix,
};
use crate::module::{
    act_p_closed, act_sl2_closed, falling, psi_coefficients, rising, u_poly, weyl_act,
    ModuleElement, RadialSum, Sl2Op,
};
use crate::module::{extremal_vector, ExtremalSpec};
use crate::poly::{Ambient, Block, Polynomial};
use crate::report::{CheckRecord, Report, RunConfig, Suite};
use crate::scalar::{int, rat, Rational, Scalar};
use crate::weyl::WeylOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rep {
    Pi,
    PiSharp,
}

/// Ordered basis pairs where `[ρ(X), ρ(Y)] ≠ ρ([X,Y])`.
pub fn homomorphism_failures(p: usize, q: usize, rep: Rep) -> Vec<(BasisLabel, BasisLabel)> {
    let basis = BasisLabel::basis(p, q);
    let (on_label, on_element): (
        fn(BasisLabel, usize, usize) -> Result<WeylOperator>,
        fn(&_) -> Result<WeylOperator>,
    ) = match rep {
        Rep::Pi => (pi, pi_element),
        Rep::PiSharp => (pi_sharp, pi_sharp_element),
    };
    let ops: Vec<WeylOperator> = basis
        .iter()
        .map(|l| on_label(*l, p, q).expect("basis label"))
        .collect();
    let mats: Vec<_> = basis
        .iter()
        .map(|l| basis_element(*l, p, q).expect("basis label"))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|a| (0..basis.len()).map(move |b| (a, b)))
        .collect();
    pairs
        .into_par_iter()
        .filter(|&(a, b)| {
            let lhs = ops[a].commutator(&ops[b]).expect("same ambient");
            let br = bracket(&mats[a], &mats[b]).expect("same ambient");
            let rhs = on_element(&br).expect("bracket lies in the algebra");
            lhs != rhs
        })
        .map(|(a, b)| (basis[a], basis[b]))
        .collect()
}

/// Basis labels whose π-image fails to commute with one of `H, X⁺, X⁻`.
pub fn commutant_failures(p: usize, q: usize) -> Vec<(BasisLabel, &'static str)> {
    let t = sl2_triple(p, q);
    let named = [("H", &t.h), ("X+", &t.x_plus), ("X-", &t.x_minus)];
    BasisLabel::basis(p, q)
        .into_par_iter()
        .flat_map_iter(|l| {
            let op = pi(l, p, q).expect("basis label");
            named
                .iter()
                .filter(|(_, tt)| !op.commutator(tt).expect("same ambient").is_zero())
                .map(|(n, _)| (l, *n))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Labels where the partial Fourier image of `π(X)` differs from `π♯(X)`, or the inverse fails.
pub fn partial_fourier_failures(p: usize, q: usize) -> Vec<BasisLabel> {
    BasisLabel::basis(p, q)
        .into_iter()
        .filter(|l| {
            let a = pi(*l, p, q).expect("basis label");
            let b = partial_fourier(&a);
            b != pi_sharp(*l, p, q).expect("basis label") || inverse_partial_fourier(&b) != a
        })
        .collect()
}

/// `π(Ω_g) − π(Ω_sl₂)` as a scalar, or `None` if it is not scalar.
pub fn casimir_difference(p: usize, q: usize) -> Result<Option<Scalar>> {
    let g = casimir(CasimirKind::G, p, q)?;
    let s = casimir(CasimirKind::Sl2, p, q)?;
    Ok((&g - &s).as_scalar())
}

fn rational_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=4)))
        .collect()
}

/// Rational points of `O(p,q)`: a rotation in the first two coordinates (when
/// `p ≥ 2` or `q ≥ 2`) and a hyperbolic element `(5/4, 3/4)` in the `(1, p+1)` plane.
pub fn sample_group_elements(p: usize, q: usize) -> Vec<(String, Matrix)> {
    let n = p + q;
    let mut out = Vec::new();
    let plane = if p >= 2 {
        Some((0, 1))
    } else if q >= 2 {
        Some((p, p + 1))
    } else {
        None
    };
    if let Some((i, j)) = plane {
        let mut g = Matrix::identity(n);
        g.set(i, i, Scalar::from_ratio(3, 5));
        g.set(i, j, Scalar::from_ratio(-4, 5));
        g.set(j, i, Scalar::from_ratio(4, 5));
        g.set(j, j, Scalar::from_ratio(3, 5));
        out.push(("rotation".to_string(), g));
    }
    let mut h = Matrix::identity(n);
    h.set(0, 0, Scalar::from_ratio(5, 4));
    h.set(0, p, Scalar::from_ratio(3, 4));
    h.set(p, 0, Scalar::from_ratio(3, 4));
    h.set(p, p, Scalar::from_ratio(5, 4));
    out.push(("hyperbolic".to_string(), h));
    out
}

/// `μ(gz) = g μ(z) g⁻¹` with `g⁻¹ = I_{p,q}ᵗgI_{p,q}` for sampled `z` and `g`.
pub fn moment_map_equivariance(p: usize, q: usize, seed: u64, samples: usize) -> Result<bool> {
    let n = p + q;
    let ipq = Matrix::ipq(p, q);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (_, g) in sample_group_elements(p, q) {
        let ginv = ipq.mul(&g.transpose()).mul(&ipq);
        if g.mul(&ginv) != Matrix::identity(n) {
            return Err(Error::Verification(
                "sample group element is not in O(p,q)".into(),
            ));
        }
        for _ in 0..samples {
            let x = rational_vector(&mut rng, n);
            let y = rational_vector(&mut rng, n);
            let act = |v: &[Rational]| -> Vec<Rational> {
                (0..n)
                    .map(|r| (0..n).fold(Rational::zero(), |acc, c| acc + &g.get(r, c).re * &v[c]))
                    .collect()
            };
            let lhs = moment_map(&act(&x), &act(&y), p, q)?;
            let rhs = g.mul(&moment_map(&x, &y, p, q)?).mul(&ginv);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn poly_mul(a: &[Rational], b: &[Rational], deg: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); deg + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j <= deg {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_deriv(a: &[Rational]) -> Vec<Rational> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * int(i as i64))
        .collect()
}

fn truncated(a: &[Rational], deg: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = a.iter().take(deg + 1).cloned().collect();
    v.resize(deg + 1, Rational::zero());
    v
}

/// `uΨ″ + αΨ′ + Ψ ≡ 0` through degree `deg`.
pub fn psi_ode_holds(alpha: &Rational, deg: u32) -> bool {
    let d = deg as usize;
    let psi = psi_coefficients(alpha, deg + 2);
    let d1 = poly_deriv(&psi);
    let d2 = poly_deriv(&d1);
    let u = vec![Rational::zero(), Rational::one()];
    let lhs = poly_mul(&u, &d2, d);
    (0..=d).all(|n| {
        let v = &lhs[n] + alpha * &truncated(&d1, d)[n] + &psi[n];
        v.is_zero()
    })
}

/// `Ψ_α^{(n)} = (−1)ⁿ/(α)ₙ·Ψ_{α+n}` through degree `deg`.
pub fn psi_derivative_holds(alpha: &Rational, n: u32, deg: u32) -> bool {
    let mut d = psi_coefficients(alpha, deg + n);
    for _ in 0..n {
        d = poly_deriv(&d);
    }
    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
    let c = sign / rising(alpha, n);
    let rhs = psi_coefficients(&(alpha + int(n as i64)), deg);
    (0..=deg as usize).all(|t| d[t] == &c * &rhs[t])
}

/// `ρ_xρ_yψ_{α+2} − α(α+1)(ψ_{α+1} − ψ_α)` has zero series through degree `deg`.
pub fn psi_recursion_holds(alpha: &Rational, deg: u32) -> Result<bool> {
    let a = Ambient::new(2, 2);
    let c = alpha * (alpha + int(1));
    let f = ModuleElement::from_terms(
        a,
        [
            (alpha + int(2), u_poly(a)),
            (
                alpha + int(1),
                Polynomial::constant(a, Scalar::real(-c.clone())),
            ),
            (alpha.clone(), Polynomial::constant(a, Scalar::real(c))),
        ],
    )?;
    Ok(f.to_series(deg).is_zero())
}

#[derive(Debug, Clone)]
pub enum CorpusOp {
    Sl2(Sl2Op),
    P(usize, usize),
}

#[derive(Debug, Clone)]
pub struct CorpusItem {
    pub k: u32,
    pub l: u32,
    pub h1_index: usize,
    pub h2_index: usize,
    pub a: u32,
    pub b: u32,
    pub alpha: Rational,
    pub op: CorpusOp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusStatus {
    Agree,
    Disagree,
    Inapplicable,
}

#[derive(Debug, Clone)]
pub struct CorpusOutcome {
    pub item: CorpusItem,
    pub status: CorpusStatus,
    /// For agreements, whether the zero verdict was re-confirmed at `N* + 4`.
    pub stable: bool,
}

/// Deterministic random single-term elements `h₁h₂ρ_x^aρ_y^bψ_α` and operators.
pub fn corpus(p: usize, q: usize, count: usize, seed: u64) -> Vec<CorpusItem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((p as u64) << 32) ^ ((q as u64) << 40));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.gen_range(0..=2u32);
        let l = rng.gen_range(0..=2u32);
        let n1 = crate::harmonics::dim_harm(p, k) as usize;
        let n2 = crate::harmonics::dim_harm(q, l) as usize;
        if n1 == 0 || n2 == 0 {
            continue;
        }
        let (kp, km) = crate::module::kappas(p, q, k, l);
        let base = if rng.gen_bool(0.5) { kp } else { km };
        let alpha = base + int(rng.gen_range(-1..=2));
        if crate::module::is_forbidden_alpha(&alpha) {
            continue;
        }
        let op = match rng.gen_range(0..6) {
            0 => CorpusOp::Sl2(Sl2Op::H),
            1 => CorpusOp::Sl2(Sl2Op::Xplus),
            2 => CorpusOp::Sl2(Sl2Op::Xminus),
            _ => CorpusOp::P(rng.gen_range(0..p), rng.gen_range(0..q)),
        };
        out.push(CorpusItem {
            k,
            l,
            h1_index: rng.gen_range(0..n1),
            h2_index: rng.gen_range(0..n2),
            a: rng.gen_range(0..=1),
            b: rng.gen_range(0..=1),
            alpha,
            op,
        });
    }
    out
}

/// Compares each closed form with the generic action on the corpus.
pub fn closed_vs_generic(p: usize, q: usize, items: &[CorpusItem]) -> Result<Vec<CorpusOutcome>> {
    let amb = Ambient::new(p, q);
    let t = sl2_triple(p, q);
    let minus_i = -Scalar::i();
    items
        .par_iter()
        .map(|it| {
            let h1 = HarmonicBasis::new(amb, Block::X, it.k).elements()[it.h1_index].clone();
            let h2 = HarmonicBasis::new(amb, Block::Y, it.l).elements()[it.h2_index].clone();
            let pre = &h1 * &h2;
            let f =
                RadialSum::single(it.a, it.b, it.alpha.clone(), Scalar::one())?.to_element(&pre);
            let (op, closed) = match it.op {
                CorpusOp::Sl2(which) => {
                    let op = match which {
                        Sl2Op::H => t.h.clone(),
                        Sl2Op::Xplus => t.x_plus.clone(),
                        Sl2Op::Xminus => t.x_minus.clone(),
                    };
                    (
                        op,
                        act_sl2_closed(which, &pre, it.k, it.l, it.a, it.b, &it.alpha),
                    )
                }
                CorpusOp::P(i, j) => (
                    pi(BasisLabel::Minus(i, j), p, q)?.scale(&minus_i),
                    act_p_closed(i, j, &h1, &h2, it.k, it.l, it.a, it.b, &it.alpha),
                ),
            };
            // The generic action always applies; it is the fallback when the closed form does not.
            let generic = weyl_act(&op, &f)?;
            let (status, stable) = match closed {
                Err(Error::Inapplicable(_)) => (CorpusStatus::Inapplicable, true),
                Err(e) => return Err(e),
                Ok(c) => {
                    let v = generic.try_sub(&c)?.zero_verdict();
                    let status = if v.is_zero {
                        CorpusStatus::Agree
                    } else {
                        CorpusStatus::Disagree
                    };
                    (status, v.stable)
                }
            };
            Ok(CorpusOutcome {
                item: it.clone(),
                status,
                stable,
            })
        })
        .collect()
}

/// `x_ih = (x_ih)† + ρ_x/(κ₊−1)·∂_{x_i}h` for every basis `h` of `ℋ^k(ℝ^p)`.
pub fn dagger_split_holds(p: usize, k: u32) -> Result<bool> {
    let a = Ambient::new(p, 1);
    let (kp, _) = crate::module::kappas(p, 1, k, 0);
    let kp1 = kp - int(1);
    if kp1.is_zero() {
        return Err(Error::Inapplicable("κ₊ = 1".into()));
    }
    let rho = Polynomial::rho(a, Block::X);
    for h in HarmonicBasis::new(a, Block::X, k).elements() {
        for i in 0..p {
            let xh = &Polynomial::x(a, i) * h;
            let rhs = &dagger(&xh, Block::X, k + 1)?
                + &(&rho * &h.derivative(i)).scale_rational(&kp1.recip());
            if rhs != xh {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct Collector {
    checks: Vec<CheckRecord>,
}

impl Collector {
    fn run(&mut self, name: String, anchor: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let start = Instant::now();
        let mut rec = match f() {
            Ok((ok, details)) => CheckRecord::from_bool(name, anchor, ok, details),
            Err(e) => CheckRecord::from_error(name, anchor, &e),
        };
        rec.elapsed = start.elapsed();
        self.checks.push(rec);
    }
}

fn pq(p: usize, q: usize) -> String {
    format!("[{p},{q}]")
}

fn liealg_suite(cfg: &RunConfig, c: &mut Collector) {
    let (p, q) = (cfg.p, cfg.q);
    for (rep, tag) in [(Rep::Pi, "pi"), (Rep::PiSharp, "pi-sharp")] {
        c.run(
            format!("liealg.homomorphism.{tag}{}", pq(p, q)),
            &format!("{tag}-homomorphism"),
            || {
                let bad = homomorphism_failures(p, q, rep);
                let n = BasisLabel::basis(p, q).len();
                Ok((
                    bad.is_empty(),
                    format!("{} ordered pairs, {} failures {:?}", n * n, bad.len(), bad),
                ))
            },
        );
    }
    c.run(
        format!("liealg.commutant{}", pq(p, q)),
        "sl2-commutant",
        || {
            let bad = commutant_failures(p, q);
            Ok((bad.is_empty(), format!("failures {bad:?}")))
        },
    );
    c.run(
        format!("liealg.compact-agreement{}", pq(p, q)),
        "pi-sharp-on-k",
        || {
            let bad: Vec<BasisLabel> = BasisLabel::basis(p, q)
                .into_iter()
                .filter(|l| l.is_compact() && pi(*l, p, q).ok() != pi_sharp(*l, p, q).ok())
                .collect();
            Ok((bad.is_empty(), format!("failures {bad:?}")))
        },
    );
    c.run(
        format!("liealg.partial-fourier{}", pq(p, q)),
        "partial-fourier",
        || {
            let bad = partial_fourier_failures(p, q);
            Ok((bad.is_empty(), format!("failures {bad:?}")))
        },
    );
    for kind in [CasimirKind::G, CasimirKind::K, CasimirKind::Sl2] {
        c.run(
            format!("liealg.casimir.{kind:?}{}", pq(p, q)).to_lowercase(),
            "casimir-closed-form",
            || casimir(kind, p, q).map(|op| (true, format!("{} terms", op.num_terms()))),
        );
    }
    c.run(
        format!("liealg.casimir-difference{}", pq(p, q)),
        "casimir-relation",
        || {
            let want = Scalar::real(casimir_shift(p, q));
            Ok(match casimir_difference(p, q)? {
                Some(s) => (s == want, format!("difference {s:?}, expected {want:?}")),
                None => (false, "difference is not a scalar operator".into()),
            })
        },
    );
    c.run(
        format!("liealg.moment-map-equivariance{}", pq(p, q)),
        "moment-map",
        || {
            let ok = moment_map_equivariance(p, q, cfg.seed, 4)?;
            Ok((ok, "rotation and hyperbolic samples".into()))
        },
    );
}

fn sl2_suite(cfg: &RunConfig, c: &mut Collector) {
    let (p, q) = (cfg.p, cfg.q);
    let t = sl2_triple(p, q);
    let two = Scalar::from_int(2);
    c.run(format!("sl2.relations{}", pq(p, q)), "sl2-triple", || {
        let a = t.h.commutator(&t.x_plus)? == t.x_plus.scale(&two);
        let b = t.h.commutator(&t.x_minus)? == t.x_minus.scale(&-two.clone());
        let d = t.x_plus.commutator(&t.x_minus)? == t.h;
        Ok((a && b && d, format!("[H,X+]={a} [H,X-]={b} [X+,X-]={d}")))
    });
    c.run(
        format!("sl2.extremal-vectors{}", pq(p, q)),
        "extremal-vectors",
        || {
            let hi = extremal_vector(&ExtremalSpec::highest(p, q, 0, 0, 0))?;
            let lo = extremal_vector(&ExtremalSpec::lowest(p, q, 0, 0, 0))?;
            let lambda = ExtremalSpec::highest(p, q, 0, 0, 0).weight();
            let h_ok = weyl_act(&t.h, &hi)?
                .try_sub(&hi.scale(&Scalar::real(lambda)))?
                .is_zero();
            let up = weyl_act(&t.x_plus, &hi)?.is_zero();
            let down = weyl_act(&t.x_minus, &lo)?.is_zero();
            Ok((
                h_ok && up && down,
                format!("H={h_ok} X+v+=0:{up} X-v-=0:{down}"),
            ))
        },
    );
}

fn module_suite(cfg: &RunConfig, c: &mut Collector) {
    let (p, q) = (cfg.p, cfg.q);
    let depth = cfg.depth;
    for alpha in [rat(3, 2), int(2), rat(5, 2), int(3)] {
        let tag = alpha.to_string();
        c.run(format!("module.psi-ode[{tag}]"), "psi-ode", || {
            Ok((psi_ode_holds(&alpha, depth), format!("degree ≤ {depth}")))
        });
        c.run(
            format!("module.psi-derivative[{tag}]"),
            "psi-derivative",
            || {
                let ok = (1..=4).all(|n| psi_derivative_holds(&alpha, n, depth));
                Ok((ok, format!("n ≤ 4, degree ≤ {depth}")))
            },
        );
        c.run(
            format!("module.psi-recursion[{tag}]"),
            "psi-recursion",
            || {
                Ok((
                    psi_recursion_holds(&alpha, depth)?,
                    format!("degree ≤ {depth}"),
                ))
            },
        );
    }
    c.run(
        format!("module.closed-vs-generic{}", pq(p, q)),
        "closed-forms",
        || {
            let items = corpus(p, q, cfg.corpus, cfg.seed);
            let out = closed_vs_generic(p, q, &items)?;
            let agree = out
                .iter()
                .filter(|o| o.status == CorpusStatus::Agree)
                .count();
            let inap = out
                .iter()
                .filter(|o| o.status == CorpusStatus::Inapplicable)
                .count();
            let unstable = out
                .iter()
                .filter(|o| o.status == CorpusStatus::Agree && !o.stable)
                .count();
            let bad = out.len() - agree - inap;
            Ok((
                bad == 0 && unstable == 0,
                format!("{agree} agree, {inap} inapplicable, {bad} disagree, {unstable} unstable"),
            ))
        },
    );
    c.run(
        format!("module.simplify{}", pq(p, q)),
        "psi-recursion-rewrite",
        || {
            let a = Ambient::new(p, q);
            let mut ok = true;
            for (alpha, extra) in [(rat(7, 2), 1u32), (int(4), 2)] {
                let f =
                    ModuleElement::from_term(&u_poly(a).pow(extra) * &Polynomial::x(a, 0), alpha)?;
                let s = f.simplify();
                ok &= s.simplify() == s && f.try_sub(&s)?.is_zero();
            }
            Ok((ok, "idempotent and value-preserving".into()))
        },
    );
    if p >= 3 || p == 1 {
        c.run(format!("module.dagger-split[{p}]"), "dagger-split", || {
            let ok = (0..=2)
                .map(|k| dagger_split_holds(p, k))
                .collect::<Result<Vec<_>>>()?;
            Ok((ok.iter().all(|b| *b), "k ≤ 2".into()))
        });
    }
}

fn gkmod_suite(cfg: &RunConfig, c: &mut Collector) {
    let (p, q, m) = (cfg.p, cfg.q, cfg.m);
    let tag = format!("[{p},{q},{m}]");
    let w = cfg.window.unwrap_or_else(|| default_window(p, q, m));
    let lattice = match ktype_support(p, q, m, Some(w)) {
        Ok(l) => l,
        Err(e) => {
            c.checks.push(CheckRecord::from_error(
                format!("gkmod.lattice{tag}"),
                "ktype-support",
                &e,
            ));
            return;
        }
    };
    c.run(format!("gkmod.lattice{tag}"), "ktype-support", || {
        let ok = lattice.points.iter().all(|pt| pt.mu_minus <= m);
        Ok((
            ok,
            format!("{} points with κ₊+κ₋ ≤ {w}", lattice.points.len()),
        ))
    });
    // Sl₂ checks on the lowest levels of the window.
    let near: Vec<_> = lattice
        .points
        .iter()
        .filter(|pt| pt.ktype.level(p, q) <= m + p.max(q) as u32 + 2)
        .collect();
    c.run(
        format!("gkmod.annihilation{tag}"),
        "highest-weight-conditions",
        || {
            let recs = near
                .par_iter()
                .map(|pt| annihilation(pt, p, q, m))
                .collect::<Result<Vec<_>>>()?;
            let bad: Vec<_> = recs
                .iter()
                .filter(|r| !r.passes(m))
                .map(|r| r.ktype)
                .collect();
            Ok((
                bad.is_empty(),
                format!("{} K-types, failures {bad:?}", recs.len()),
            ))
        },
    );
    c.run(
        format!("gkmod.annihilation-generic{tag}"),
        "highest-weight-conditions",
        || {
            let t = sl2_triple(p, q);
            let mut n = 0;
            for pt in near.iter().filter(|pt| pt.ktype.k + pt.ktype.l <= 1) {
                let v = extremal_vector(&ExtremalSpec::highest(
                    p,
                    q,
                    pt.ktype.k,
                    pt.ktype.l,
                    pt.mu_minus,
                ))?;
                if !weyl_act(&t.x_plus, &v)?.is_zero() {
                    return Ok((false, format!("X+ v ≠ 0 at {:?}", pt.ktype)));
                }
                let mut f = v;
                for j in 1..=m + 1 {
                    f = weyl_act(&t.x_minus, &f)?;
                    let zero = f.is_zero();
                    if zero != (j == m + 1) {
                        return Ok((false, format!("(X-)^{j} v zero={zero} at {:?}", pt.ktype)));
                    }
                }
                n += 1;
            }
            Ok((true, format!("{n} K-types via the generic action")))
        },
    );
    c.run(format!("gkmod.ladder{tag}"), "ladder-closed-form", || {
        let mut n = 0;
        for pt in &near {
            let spec = ExtremalSpec::highest(p, q, pt.ktype.k, pt.ktype.l, pt.mu_minus);
            for nu in 0..=m + 1 {
                if !ladder_agrees(&spec, nu)? {
                    return Ok((false, format!("ν={nu} at {:?}", pt.ktype)));
                }
                n += 1;
            }
        }
        Ok((true, format!("{n} (K-type, ν) pairs")))
    });
    c.run(
        format!("gkmod.ladder-identity{tag}"),
        "ladder-identity",
        || {
            let mut details = Vec::new();
            for pt in near.iter().take(3) {
                let spec = ExtremalSpec::highest(p, q, pt.ktype.k, pt.ktype.l, pt.mu_minus);
                for j in 0..=m + 1 {
                    let got = ladder_identity(&spec, j)?;
                    let fact: Rational =
                        (1..=j).fold(Rational::one(), |acc, t| acc * int(t as i64));
                    let want = Scalar::real(fact * falling(&int(m as i64), j));
                    if got != want {
                        return Ok((
                            false,
                            format!("j={j} at {:?}: {got:?} vs {want:?}", pt.ktype),
                        ));
                    }
                    details.push(format!("{got:?}"));
                }
            }
            Ok((true, format!("constants {}", details.join(" "))))
        },
    );
    c.run(
        format!("gkmod.transition-pattern{tag}"),
        "transition-pattern",
        || {
            for pt in &lattice.points {
                let recs = transition_pattern(pt, p, q, m)?;
                let want = expected_vanishing(pt, m);
                for (r, w) in recs.iter().zip(want) {
                    if r.coefficient.is_some() && r.coefficient_vanishes != w {
                        return Ok((false, format!("{} at {:?}", r.block, pt.ktype)));
                    }
                }
            }
            Ok((true, format!("{} points", lattice.points.len())))
        },
    );
    if p >= 2 && q >= 2 {
        c.run(format!("gkmod.irreducible{tag}"), "irreducibility-criterion", || {
            let r = irreducible(p, q, m, Some(w))?;
            Ok((
                r.irreducible && r.window_invariant,
                format!(
                    "irreducible per the connectivity criterion: {} ({} points, {} edges; window {} and {})",
                    r.irreducible,
                    r.connectivity.num_points,
                    r.connectivity.num_edges,
                    r.connectivity.window,
                    r.enlarged.window
                ),
            ))
        });
    }
    c.run(
        format!("gkmod.threshold{tag}"),
        "generating-threshold",
        || {
            let a = generating_threshold(p, q, m, Some(w))?;
            let b = generating_threshold(p, q, m, Some(w + 4))?;
            Ok((a == b, format!("c = {a}")))
        },
    );
    if p >= 3 && q >= 3 {
        c.run(format!("gkmod.growth{tag}"), "gk-bernstein", || {
            let g = gk_invariants(p, q, m)?;
            Ok((
                true,
                format!("GK-dim {}, B-deg {}", g.gk_dimension, g.bernstein_degree),
            ))
        });
    }
    c.run(format!("gkmod.isomorphism{tag}"), "isomorphism", || {
        let samples: Vec<_> = lattice.points.iter().take(3).map(|pt| pt.ktype).collect();
        let r = isomorphism_check(p, q, m, &samples)?;
        Ok((
            true,
            format!(
                "round-trip constant {} over {} K-types",
                r.round_trip_constant,
                r.samples.len()
            ),
        ))
    });
}

/// Effective configuration as it appears in reports.
pub fn config_json(cfg: &RunConfig) -> serde_json::Value {
    let mut v = serde_json::to_value(cfg).expect("config serializes");
    if cfg.window.is_none() && (cfg.p + cfg.q) % 2 == 0 {
        v["window"] = serde_json::json!(default_window(cfg.p, cfg.q, cfg.m));
    }
    v
}

/// Runs the suites selected by `cfg`.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let mut c = Collector { checks: Vec::new() };
    let all = cfg.suite == Suite::All;
    if all || cfg.suite == Suite::Liealg {
        liealg_suite(cfg, &mut c);
    }
    if all || cfg.suite == Suite::Sl2 {
        sl2_suite(cfg, &mut c);
    }
    if all || cfg.suite == Suite::Module {
        module_suite(cfg, &mut c);
    }
    if all || cfg.suite == Suite::Gkmod {
        gkmod_suite(cfg, &mut c);
    }
    Ok(Report::new(config_json(cfg), c.checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn liealg_small() {
        assert!(homomorphism_failures(2, 2, Rep::Pi).is_empty());
        assert!(homomorphism_failures(2, 2, Rep::PiSharp).is_empty());
        assert!(commutant_failures(2, 2).is_empty());
        assert!(partial_fourier_failures(2, 2).is_empty());
        assert!(moment_map_equivariance(2, 2, 7, 2).unwrap());
        assert!(moment_map_equivariance(1, 1, 7, 2).unwrap());
    }

    #[test]
    fn psi_identities() {
        assert!(psi_ode_holds(&rat(3, 2), 12));
        assert!(psi_derivative_holds(&int(2), 3, 12));
        assert!(psi_recursion_holds(&rat(5, 2), 12).unwrap());
    }

    #[test]
    fn small_corpus_agrees() {
        let items = corpus(3, 3, 6, 1);
        let out = closed_vs_generic(3, 3, &items).unwrap();
        assert!(out
            .iter()
            .all(|o| o.status == CorpusStatus::Agree && o.stable));
    }

    #[test]
    fn dagger_split() {
        assert!(dagger_split_holds(3, 2).unwrap());
        assert!(dagger_split_holds(4, 1).unwrap());
    }
}
