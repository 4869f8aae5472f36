//! Acceptance criteria. Prints one line per criterion and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::One;
use opq_core::gkmod::{
    annihilation, bernstein_formula, expected_vanishing, generating_threshold, gk_invariants,
    irreducible, ktype_support, ladder_agrees, ladder_identity, transition_pattern, CaseClass,
};
use opq_core::harmonics::{dim_harm, dim_harm_factorial_form, harmonic_basis, kernel_rank};
use opq_core::liealg::{casimir_shift, sl2_triple};
use opq_core::module::{extremal_vector, falling, weyl_act, ExtremalSpec, PBlock};
use opq_core::scalar::{int, rat, Rational, Scalar};
use opq_core::verify::{
    casimir_difference, closed_vs_generic, commutant_failures, corpus, homomorphism_failures,
    partial_fourier_failures, psi_derivative_holds, psi_ode_holds, psi_recursion_holds,
    CorpusStatus, Rep,
};
use opq_core::Block;

type Outcome = Result<String, String>;

fn check(cond: bool, ok: String, bad: String) -> Outcome {
    if cond {
        Ok(ok)
    } else {
        Err(bad)
    }
}

const LIE_SET: [(usize, usize); 6] = [(1, 1), (2, 2), (1, 3), (3, 1), (2, 4), (3, 3)];

fn c1() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for (p, q) in LIE_SET {
        for rep in [Rep::Pi, Rep::PiSharp] {
            let bad = homomorphism_failures(p, q, rep);
            if !bad.is_empty() {
                return Err(format!("{rep:?} at ({p},{q}): {bad:?}"));
            }
        }
        let n = (p + q) * (p + q - 1) / 2;
        pairs += 2 * n * n;
    }
    let t = start.elapsed();
    check(
        t < Duration::from_secs(60),
        format!("{pairs} ordered pairs in {:.2}s", t.as_secs_f64()),
        format!("took {:.2}s", t.as_secs_f64()),
    )
}

fn c2() -> Outcome {
    for (p, q) in LIE_SET {
        let bad = commutant_failures(p, q);
        if !bad.is_empty() {
            return Err(format!("({p},{q}): {bad:?}"));
        }
    }
    Ok("H, X+, X- commute with every basis image".into())
}

fn c3() -> Outcome {
    let mut out = Vec::new();
    for (p, q) in [(2, 2), (3, 3), (2, 4)] {
        let want = Scalar::real(casimir_shift(p, q));
        match casimir_difference(p, q).map_err(|e| e.to_string())? {
            Some(s) if s == want => out.push(format!("({p},{q}) {s:?}")),
            other => return Err(format!("({p},{q}): got {other:?}, expected {want:?}")),
        }
    }
    Ok(out.join(", "))
}

fn c4() -> Outcome {
    for (p, q) in [(2, 2), (3, 3)] {
        let bad = partial_fourier_failures(p, q);
        if !bad.is_empty() {
            return Err(format!("({p},{q}): {bad:?}"));
        }
    }
    Ok("all basis labels at (2,2), (3,3)".into())
}

fn c5() -> Outcome {
    for alpha in [rat(3, 2), int(2), rat(5, 2), int(3)] {
        if !psi_ode_holds(&alpha, 12) {
            return Err(format!("ODE at α={alpha}"));
        }
        for n in 1..=4 {
            if !psi_derivative_holds(&alpha, n, 12) {
                return Err(format!("derivative n={n} at α={alpha}"));
            }
        }
        if !psi_recursion_holds(&alpha, 12).map_err(|e| e.to_string())? {
            return Err(format!("recursion at α={alpha}"));
        }
    }
    Ok("α ∈ {3/2, 2, 5/2, 3}, degree ≤ 12".into())
}

fn c6() -> Outcome {
    let mut out = Vec::new();
    for (p, q) in [(2, 2), (4, 2), (3, 3)] {
        let items = corpus(p, q, 300, 2024);
        let res = closed_vs_generic(p, q, &items).map_err(|e| e.to_string())?;
        let compared: Vec<_> = res
            .iter()
            .filter(|o| o.status != CorpusStatus::Inapplicable)
            .collect();
        if let Some(o) = compared
            .iter()
            .find(|o| o.status != CorpusStatus::Agree || !o.stable)
        {
            return Err(format!("({p},{q}): {:?}", o.item));
        }
        if compared.len() < 200 {
            return Err(format!("({p},{q}): only {} comparisons", compared.len()));
        }
        out.push(format!("({p},{q}) {}", compared.len()));
    }
    Ok(format!(
        "agreements re-confirmed at N*+4: {}",
        out.join(", ")
    ))
}

fn c7() -> Outcome {
    let mut total = 0;
    for (p, q, m) in [(3, 3, 0), (4, 4, 1), (4, 2, 0), (5, 3, 1)] {
        let lattice = ktype_support(p, q, m, None).map_err(|e| e.to_string())?;
        for pt in &lattice.points {
            let rec = annihilation(pt, p, q, m).map_err(|e| e.to_string())?;
            if !rec.passes(m) {
                return Err(format!("({p},{q},{m}) annihilation {rec:?}"));
            }
            let spec = ExtremalSpec::highest(p, q, pt.ktype.k, pt.ktype.l, pt.mu_minus);
            for nu in 0..=m + 1 {
                if !ladder_agrees(&spec, nu).map_err(|e| e.to_string())? {
                    return Err(format!("({p},{q},{m}) ladder ν={nu} at {:?}", pt.ktype));
                }
            }
            for j in 0..=m + 1 {
                let got = ladder_identity(&spec, j).map_err(|e| e.to_string())?;
                let fact: Rational = (1..=j).fold(Rational::one(), |a, t| a * int(t as i64));
                let want = Scalar::real(fact * falling(&int(m as i64), j));
                if got != want {
                    return Err(format!("({p},{q},{m}) j={j} at {:?}: {got:?}", pt.ktype));
                }
            }
            total += 1;
        }
        // The same conditions through the generic Weyl-algebra action on the lowest K-type.
        let pt = &lattice.points[0];
        let t = sl2_triple(p, q);
        let v = extremal_vector(&ExtremalSpec::highest(
            p,
            q,
            pt.ktype.k,
            pt.ktype.l,
            pt.mu_minus,
        ))
        .map_err(|e| e.to_string())?;
        let mut f = weyl_act(&t.x_plus, &v).map_err(|e| e.to_string())?;
        if !f.is_zero() {
            return Err(format!("({p},{q},{m}) generic X+ v ≠ 0"));
        }
        f = v;
        for j in 1..=m + 1 {
            f = weyl_act(&t.x_minus, &f).map_err(|e| e.to_string())?;
            if f.is_zero() != (j == m + 1) {
                return Err(format!("({p},{q},{m}) generic (X-)^{j}"));
            }
        }
    }
    Ok(format!(
        "{total} K-types, ladder ν ≤ m+1, constants j!(m)_j"
    ))
}

fn c8() -> Outcome {
    let (p, q, m) = (14, 12, 4);
    // Dots of the figure as (κ₊, κ₋), filled ones marked.
    let mut dots = BTreeSet::new();
    let mut filled = BTreeSet::new();
    for x in 7..=12 {
        dots.insert((x, x + 4));
        filled.insert((x, x + 4));
    }
    for x in 7..=13 {
        dots.insert((x, x + 2));
    }
    for x in 7..=14 {
        dots.insert((x, x));
    }
    for x in 8..=15 {
        dots.insert((x, x - 2));
    }
    for x in 10..=16 {
        dots.insert((x, x - 4));
        filled.insert((x, x - 4));
    }
    for d in [(7, 9), (7, 7), (8, 6)] {
        filled.insert(d);
    }
    let lattice = ktype_support(p, q, m, Some(28)).map_err(|e| e.to_string())?;
    let got: BTreeSet<(u32, u32)> = lattice
        .points
        .iter()
        .map(|pt| (pt.two_kappa_plus / 2, pt.two_kappa_minus / 2))
        .collect();
    if got != dots {
        return Err(format!(
            "point set differs: {:?}",
            got.symmetric_difference(&dots).collect::<Vec<_>>()
        ));
    }
    for pt in &lattice.points {
        let key = (pt.two_kappa_plus / 2, pt.two_kappa_minus / 2);
        if (pt.case != CaseClass::Interior) != filled.contains(&key) {
            return Err(format!("case {:?} at {key:?}", pt.case));
        }
        let recs = transition_pattern(pt, p, q, m).map_err(|e| e.to_string())?;
        let want = expected_vanishing(pt, m);
        for (r, w) in recs.iter().zip(want) {
            if r.coefficient_vanishes != w {
                return Err(format!("{} at {key:?}", r.block));
            }
            let zero = match r.direction.block() {
                PBlock::MinusPlus => pt.mu_minus == 0,
                PBlock::PlusMinus => pt.mu_minus == m,
                _ => false,
            };
            if r.coefficient_vanishes != zero {
                return Err(format!("{} at {key:?}", r.block));
            }
        }
    }
    let r = irreducible(p, q, m, None).map_err(|e| e.to_string())?;
    check(
        r.irreducible && r.window_invariant,
        format!("{} dots, case flags match, connected", dots.len()),
        "transition graph is not strongly connected".into(),
    )
}

fn valid_configs() -> Vec<(usize, usize, u32)> {
    let mut out = Vec::new();
    for p in 2..=14 {
        for q in 2..=14 {
            if (p + q) % 2 != 0 || p + q > 16 {
                continue;
            }
            for m in 0.. {
                if 2 * (m as usize + 3) > p + q {
                    break;
                }
                out.push((p, q, m));
            }
        }
    }
    out
}

fn c9() -> Outcome {
    let start = Instant::now();
    let configs = valid_configs();
    for &(p, q, m) in &configs {
        let r = irreducible(p, q, m, None).map_err(|e| e.to_string())?;
        if !(r.irreducible && r.window_invariant) {
            return Err(format!("({p},{q},{m}) not connected or window-dependent"));
        }
    }
    let t = start.elapsed();
    check(
        t < Duration::from_secs(300),
        format!(
            "{} configurations in {:.2}s",
            configs.len(),
            t.as_secs_f64()
        ),
        format!("took {:.2}s", t.as_secs_f64()),
    )
}

fn c10() -> Outcome {
    let mut out = Vec::new();
    for (p, q, m, want) in [
        (3, 3, 0, 8u64),
        (4, 4, 1, 48),
        (5, 5, 2, 240),
        (14, 12, 4, 12_932_920),
    ] {
        let g = gk_invariants(p, q, m).map_err(|e| e.to_string())?;
        if g.fitted_degree as usize != p + q - 4 || g.bernstein_degree != want.to_string() {
            return Err(format!(
                "({p},{q},{m}): degree {} B-deg {}",
                g.fitted_degree, g.bernstein_degree
            ));
        }
        out.push(format!("({p},{q},{m}) {}", g.bernstein_degree));
    }
    for (p, q) in [(4, 4), (5, 5), (6, 4)] {
        let base = gk_invariants(p, q, 0)
            .map_err(|e| e.to_string())?
            .bernstein_degree;
        for m in 1..=((p + q) / 2 - 3) as u32 {
            let b = gk_invariants(p, q, m)
                .map_err(|e| e.to_string())?
                .bernstein_degree;
            let ratio: Rational =
                b.parse::<Rational>().unwrap() / base.parse::<Rational>().unwrap();
            if ratio != int(m as i64 + 1)
                || bernstein_formula(p, q, m) != b.parse::<Rational>().unwrap()
            {
                return Err(format!("({p},{q}) ratio at m={m} is {ratio}"));
            }
        }
    }
    Ok(format!("{}; ratio m+1", out.join(", ")))
}

fn c11() -> Outcome {
    let configs = valid_configs();
    for &(p, q, m) in &configs {
        let c = generating_threshold(p, q, m, None).map_err(|e| e.to_string())?;
        let c4 = generating_threshold(p, q, m, Some(opq_core::gkmod::default_window(p, q, m) + 4))
            .map_err(|e| e.to_string())?;
        if c != m + p.max(q) as u32 || c4 != c {
            return Err(format!("({p},{q},{m}): c = {c}"));
        }
    }
    Ok(format!(
        "c = max(m+p, m+q) for {} configurations",
        configs.len()
    ))
}

fn c12() -> Outcome {
    for n in 1..=6 {
        for d in 0..=8 {
            let f = dim_harm(n, d);
            let k = kernel_rank(n, d) as u128;
            let b = harmonic_basis(n, d, Block::X).len() as u128;
            let fact = dim_harm_factorial_form(n, d).unwrap_or(f);
            if f != k || f != b || f != fact {
                return Err(format!(
                    "n={n} d={d}: formula {f}, kernel {k}, basis {b}, factorial {fact}"
                ));
            }
        }
    }
    Ok("n ≤ 6, d ≤ 8".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("homomorphism of π and π♯", c1),
        ("sl2 commutant", c2),
        ("Casimir relation", c3),
        ("partial Fourier transform", c4),
        ("ψ calculus", c5),
        ("closed forms vs generic action", c6),
        ("highest weight modules: annihilation and ladder", c7),
        ("K-type lattice for (14,12,4)", c8),
        ("irreducibility by connectivity", c9),
        ("GK dimension and Bernstein degree", c10),
        ("generating threshold", c11),
        ("harmonic dimensions", c12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(d) => println!("criterion {:>2} PASS {name}: {d} ({secs:.2}s)", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {d} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
