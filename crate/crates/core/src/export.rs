//! Lattice, growth and ladder exports in the CLI formats.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gkmod::{
    ktype_support, ladder_closed, ladder_identity, ladder_iterated, transition_pattern,
    GkInvariants, Transition,
};
use crate::module::{ExtremalKind, ExtremalSpec};
use crate::report::csv_field;
use crate::scalar::Rational;

#[derive(Debug, Clone, Serialize)]
pub struct LatticeRecord {
    pub kappa_plus: String,
    pub kappa_minus: String,
    pub k: u32,
    pub l: u32,
    pub mu_minus: u32,
    pub case: &'static str,
    pub transitions: Vec<Transition>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeExport {
    pub p: usize,
    pub q: usize,
    pub m: u32,
    pub window: u32,
    pub records: Vec<LatticeRecord>,
}

fn half(two_x: u32) -> String {
    Rational::new(two_x.into(), 2.into()).to_string()
}

pub fn lattice_export(p: usize, q: usize, m: u32, window: Option<u32>) -> Result<LatticeExport> {
    let lattice = ktype_support(p, q, m, window)?;
    let records = lattice
        .points
        .iter()
        .map(|pt| {
            Ok(LatticeRecord {
                kappa_plus: half(pt.two_kappa_plus),
                kappa_minus: half(pt.two_kappa_minus),
                k: pt.ktype.k,
                l: pt.ktype.l,
                mu_minus: pt.mu_minus,
                case: pt.case.label(),
                transitions: transition_pattern(pt, p, q, m)?.to_vec(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeExport {
        p,
        q,
        m,
        window: lattice.window,
        records,
    })
}

impl LatticeExport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lattice serializes") + "\n"
    }

    /// One row per point: coordinates, case, then per direction the coefficient and edge flag.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kappa_plus,kappa_minus,k,l,mu_minus,case");
        if let Some(r) = self.records.first() {
            for t in &r.transitions {
                out.push_str(&format!(",coeff_{:?},edge_{:?}", t.direction, t.direction));
            }
        }
        out.push('\n');
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{},{}",
                r.kappa_plus, r.kappa_minus, r.k, r.l, r.mu_minus, r.case
            ));
            for t in &r.transitions {
                let c = t.coefficient.as_deref().unwrap_or("inapplicable");
                out.push_str(&format!(",{},{}", csv_field(c), t.edge));
            }
            out.push('\n');
        }
        out
    }

    /// Static figure description in the `(κ₊, κ₋)` plane.
    pub fn to_figure(&self) -> String {
        let mut out = format!(
            "figure ktypes p={} q={} m={} window={}\n",
            self.p, self.q, self.m, self.window
        );
        out.push_str(&format!("axis kappa_plus={}\n", half(self.p as u32)));
        out.push_str(&format!("axis kappa_minus={}\n", half(self.q as u32)));
        for t in 0..=self.m {
            let w = 2 * t as i64 - self.m as i64;
            out.push_str(&format!("line kappa_plus-kappa_minus={w}\n"));
        }
        for r in &self.records {
            out.push_str(&format!(
                "point {} {} k={} l={} mu_minus={} case={}\n",
                r.kappa_plus, r.kappa_minus, r.k, r.l, r.mu_minus, r.case
            ));
        }
        out
    }
}

pub fn growth_csv(g: &GkInvariants) -> String {
    let mut out = String::from("n,dim\n");
    for (n, d) in &g.table.values {
        out.push_str(&format!("{n},{d}\n"));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct LadderExport {
    pub spec: ExtremalSpec,
    pub nu: u32,
    pub closed: String,
    pub iterated: String,
    pub agrees: bool,
    /// `(j, c_j)` with `(X⁺)ʲ(X⁻)ʲv = c_j·v`, for highest weight vectors and `j ≤ ν`.
    pub identity: Vec<(u32, String)>,
}

pub fn ladder_export(spec: &ExtremalSpec, nu: u32) -> Result<LadderExport> {
    spec.validate()?;
    let closed = ladder_closed(spec, nu)?;
    let iterated = ladder_iterated(spec, nu)?;
    let v = closed.sub(&iterated).zero_verdict();
    let identity = if spec.kind == ExtremalKind::Highest {
        (0..=nu)
            .map(|j| ladder_identity(spec, j).map(|c| (j, format!("{c:?}"))))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(LadderExport {
        spec: spec.clone(),
        nu,
        closed: format!("{closed:?}"),
        iterated: format!("{:?}", iterated.simplify()),
        agrees: v.is_zero && v.stable,
        identity,
    })
}

impl LadderExport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ladder serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let op = match self.spec.kind {
            ExtremalKind::Highest => "X-",
            ExtremalKind::Lowest => "X+",
        };
        let mut out = format!(
            "ladder p={} q={} k={} l={} mu={} nu={} ({op})^nu\n",
            self.spec.p, self.spec.q, self.spec.k, self.spec.l, self.spec.mu, self.nu
        );
        out.push_str(&format!("closed   {}\n", self.closed));
        out.push_str(&format!("iterated {}\n", self.iterated));
        out.push_str(&format!("agree {}\n", self.agrees));
        for (j, c) in &self.identity {
            out.push_str(&format!("up-down j={j} constant {c}\n"));
        }
        out
    }
}

pub fn parse_direction(s: &str) -> Result<ExtremalKind> {
    match s {
        "down" | "highest" => Ok(ExtremalKind::Highest),
        "up" | "lowest" => Ok(ExtremalKind::Lowest),
        other => Err(Error::Config(format!(
            "unknown direction {other:?}, expected down or up"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_line_at_m0() {
        let e = lattice_export(3, 3, 0, Some(10)).unwrap();
        assert!(e.records.iter().all(|r| r.kappa_plus == r.kappa_minus));
        let fig = e.to_figure();
        assert!(fig.contains("axis kappa_plus=3/2"));
        assert!(fig.contains("line kappa_plus-kappa_minus=0\n"));
        assert_eq!(e.to_csv().lines().count(), e.records.len() + 1);
    }

    #[test]
    fn ladder_text() {
        let e = ladder_export(&ExtremalSpec::highest(4, 4, 0, 0, 1), 1).unwrap();
        assert!(e.agrees);
        assert!(e.to_text().contains("up-down j=1 constant 2"));
        assert!(parse_direction("sideways").is_err());
    }
}
