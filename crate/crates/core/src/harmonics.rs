//! Harmonic polynomials `ℋ^d(ℝⁿ)` in one coordinate block.

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::poly::{monomials_of_degree, Ambient, Block, Monomial, Polynomial};
use crate::scalar::{int, Rational, Scalar};

/// `dim ℋ^d(ℝⁿ)`.
pub fn dim_harm(n: usize, d: u32) -> u128 {
    match n {
        0 => u128::from(d == 0),
        1 => u128::from(d <= 1),
        2 => {
            if d == 0 {
                1
            } else {
                2
            }
        }
        _ => {
            // (2d+n−2)·(d+1)(d+2)…(d+n−3)/(n−2)!
            let (n, d) = (n as u128, d as u128);
            let mut num = 2 * d + n - 2;
            let mut den = 1u128;
            for t in 1..=n - 3 {
                num *= d + t;
                den *= t;
            }
            den *= n - 2;
            num / den
        }
    }
}

/// `(d+n−3)!/(d!(n−2)!)·(2d+n−2)` for `n ≥ 3`, evaluated independently of [`dim_harm`].
pub fn dim_harm_factorial_form(n: usize, d: u32) -> Option<u128> {
    if n < 3 {
        return None;
    }
    let fact = |k: u128| (1..=k).product::<u128>();
    let (n, d) = (n as u128, d as u128);
    Some(fact(d + n - 3) * (2 * d + n - 2) / (fact(d) * fact(n - 2)))
}

fn check_block_degree(p: &Polynomial, block: Block, d: u32) -> Result<()> {
    let vars = p.ambient().block_vars(block);
    if p.terms().all(|(m, _)| m.degree_in(vars.clone()) == d) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "polynomial is not homogeneous of degree {d} in the {block:?} block"
        )))
    }
}

/// An exact basis of `ℋ^d` in the variables of one block.
///
/// Columns of the Laplacian matrix are the degree-`d` monomials in descending
/// graded-lex order; each basis element has coefficient 1 at one free monomial
/// and 0 at all the others, so coordinates are read off directly.
#[derive(Debug, Clone)]
pub struct HarmonicBasis {
    ambient: Ambient,
    block: Block,
    degree: u32,
    free: Vec<Monomial>,
    elements: Vec<Polynomial>,
}

impl HarmonicBasis {
    pub fn new(ambient: Ambient, block: Block, degree: u32) -> Self {
        let nv = ambient.nvars();
        let vars = ambient.block_vars(block);
        let cols = monomials_of_degree(nv, vars.clone(), degree);
        let col_of = |m: &Monomial| cols.iter().position(|c| c == m).expect("column monomial");
        let mut ech = Echelon::new(cols.len());
        if degree >= 2 {
            for b in monomials_of_degree(nv, vars.clone(), degree - 2) {
                let mut row = SparseVec::new();
                for v in vars.clone() {
                    let mut m = b.clone();
                    m.0[v] += 2;
                    let e = b.0[v] as i64;
                    row.insert(col_of(&m), int((e + 2) * (e + 1)));
                }
                ech.insert(row);
            }
        }
        let free: Vec<Monomial> = ech
            .free_columns()
            .into_iter()
            .map(|c| cols[c].clone())
            .collect();
        let elements = ech
            .kernel()
            .into_iter()
            .map(|v| {
                Polynomial::from_terms(
                    ambient,
                    v.into_iter()
                        .map(|(c, r)| (cols[c].clone(), Scalar::real(r))),
                )
            })
            .collect();
        HarmonicBasis {
            ambient,
            block,
            degree,
            free,
            elements,
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn block(&self) -> Block {
        self.block
    }

    pub fn n(&self) -> usize {
        self.ambient.block_len(self.block)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Coordinates of `h` in this basis; fails if `h` is not in the span.
    pub fn coordinates(&self, h: &Polynomial) -> Result<Vec<Scalar>> {
        self.ambient.check(&h.ambient())?;
        let coords: Vec<Scalar> = self.free.iter().map(|m| h.coeff(m)).collect();
        let mut back = Polynomial::zero(self.ambient);
        for (c, e) in coords.iter().zip(&self.elements) {
            back = &back + &e.scale(c);
        }
        if back != *h {
            return Err(Error::Domain(format!(
                "polynomial is not in ℋ^{} of the {:?} block",
                self.degree, self.block
            )));
        }
        Ok(coords)
    }
}

/// `ℋ^d(ℝⁿ)` realized in a standalone ambient of one block.
pub fn harmonic_basis(n: usize, d: u32, block: Block) -> HarmonicBasis {
    let ambient = match block {
        Block::X => Ambient::new(n, 0),
        Block::Y => Ambient::new(0, n),
    };
    HarmonicBasis::new(ambient, block, d)
}

/// `P† = P − r²ΔP / (4(d + n/2 − 2))` for `P` homogeneous of degree `d` in `block`.
pub fn dagger(p: &Polynomial, block: Block, d: u32) -> Result<Polynomial> {
    check_block_degree(p, block, d)?;
    let a = p.ambient();
    let n = a.block_len(block) as i64;
    // 4(d + n/2 − 2) = 4d + 2n − 8
    let denom = 4 * d as i64 + 2 * n - 8;
    let lap = p.laplacian(block);
    if lap.is_zero() {
        return Ok(p.clone());
    }
    if denom == 0 {
        return Err(Error::Domain(format!(
            "dagger undefined: d + n/2 − 2 = 0 at (n,d)=({n},{d})"
        )));
    }
    let corr =
        (&Polynomial::r2(a, block) * &lap).scale_rational(&Rational::new(1.into(), denom.into()));
    Ok(p - &corr)
}

/// Writes `P = Σ r^{2m}·h_m` with each `h_m` harmonic in `block`; returns the
/// nonzero `(h_m, m)` sorted by `m`.
pub fn decompose_into_harmonics(p: &Polynomial, block: Block) -> Result<Vec<(Polynomial, u32)>> {
    if p.is_zero() {
        return Ok(Vec::new());
    }
    let a = p.ambient();
    let vars = a.block_vars(block);
    let d = p
        .terms()
        .next()
        .map(|(m, _)| m.degree_in(vars.clone()))
        .unwrap_or(0);
    check_block_degree(p, block, d)?;
    let lap = p.laplacian(block);
    if lap.is_zero() {
        return Ok(vec![(p.clone(), 0)]);
    }
    let n = a.block_len(block) as i64;
    let r2 = Polynomial::r2(a, block);
    let mut h = p.clone();
    let mut out = Vec::new();
    for (t, m) in decompose_into_harmonics(&lap, block)? {
        // Δ(r^{2(m+1)} g) = 4(m+1)(d−2−m+n/2)·r^{2m} g for g harmonic of degree d−2−2m.
        let denom = 2 * (m as i64 + 1) * (2 * (d as i64 - 2 - m as i64) + n);
        let g = t.scale_rational(&Rational::new(1.into(), denom.into()));
        h = &h - &(&r2.pow(m + 1) * &g);
        out.push((g, m + 1));
    }
    debug_assert!(h.laplacian(block).is_zero());
    if !h.is_zero() {
        out.insert(0, (h, 0));
    }
    Ok(out)
}

/// Recombines a decomposition: `Σ r^{2m}·h_m`.
pub fn recompose(parts: &[(Polynomial, u32)], ambient: Ambient, block: Block) -> Polynomial {
    let r2 = Polynomial::r2(ambient, block);
    let mut acc = Polynomial::zero(ambient);
    for (h, m) in parts {
        acc = &acc + &(&r2.pow(*m) * h);
    }
    acc
}

/// Rank of the harmonic subspace computed from scratch, without the pivot
/// structure used by [`HarmonicBasis`]: number of monomials minus the rank of
/// the full Laplacian image.
pub fn kernel_rank(n: usize, d: u32) -> usize {
    let a = Ambient::new(n, 0);
    let cols = monomials_of_degree(n, 0..n, d);
    if d < 2 {
        return cols.len();
    }
    let rows_idx = monomials_of_degree(n, 0..n, d - 2);
    // Transposed matrix: one row per source monomial, listing its Laplacian image.
    let mut ech = Echelon::new(rows_idx.len());
    for c in &cols {
        let img = Polynomial::term(a, c.clone(), Scalar::one()).laplacian(Block::X);
        let mut row = SparseVec::new();
        for (m, v) in img.terms() {
            let r = rows_idx.iter().position(|x| x == m).expect("row monomial");
            row.insert(r, v.re.clone());
        }
        ech.insert(row);
    }
    cols.len() - ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn small_dimensions() {
        assert_eq!(dim_harm(3, 2), 5);
        assert_eq!(dim_harm(2, 3), 2);
        assert_eq!(dim_harm(5, 0), 1);
        assert_eq!(dim_harm(1, 1), 1);
        assert_eq!(dim_harm(1, 2), 0);
        assert_eq!(dim_harm(4, 2), 9);
        assert_eq!(kernel_rank(3, 2), 5);
        assert_eq!(kernel_rank(2, 3), 2);
    }

    #[test]
    fn degree_one_basis() {
        let b = harmonic_basis(3, 1, Block::X);
        let a = b.ambient();
        let mut got: Vec<Polynomial> = b.elements().to_vec();
        got.sort_by_key(|p| p.to_text());
        let mut want: Vec<Polynomial> = (0..3).map(|i| Polynomial::x(a, i)).collect();
        want.sort_by_key(|p| p.to_text());
        assert_eq!(got, want);
    }

    #[test]
    fn degree_two_plane_span() {
        let b = harmonic_basis(2, 2, Block::X);
        let a = b.ambient();
        let x1 = Polynomial::x(a, 0);
        let x2 = Polynomial::x(a, 1);
        let u = &(&x1 * &x1) - &(&x2 * &x2);
        let v = &x1 * &x2;
        assert_eq!(b.len(), 2);
        assert!(b.coordinates(&u).is_ok());
        assert!(b.coordinates(&v).is_ok());
        assert!(b.coordinates(&(&x1 * &x1)).is_err());
    }

    #[test]
    fn dagger_examples() {
        let a = Ambient::new(3, 0);
        let x1 = Polynomial::x(a, 0);
        let p = &x1 * &x1;
        let d = dagger(&p, Block::X, 2).unwrap();
        let want = &p - &Polynomial::r2(a, Block::X).scale_rational(&rat(1, 3));
        assert_eq!(d, want);
        assert!(d.laplacian(Block::X).is_zero());
        assert_eq!(dagger(&x1, Block::X, 1).unwrap(), x1);
        assert!(dagger(&x1, Block::X, 2).is_err());
        // n = 2, d = 1 with nonzero Laplacian cannot occur; n = 1, d = 2 has d + n/2 − 2 ≠ 0.
        let b = Ambient::new(2, 0);
        let z = Polynomial::x(b, 0);
        assert_eq!(dagger(&z, Block::X, 1).unwrap(), z);
    }

    #[test]
    fn cube_decomposition() {
        let a = Ambient::new(3, 0);
        let x1 = Polynomial::x(a, 0);
        let p = x1.pow(3);
        let parts = decompose_into_harmonics(&p, Block::X).unwrap();
        let degs: Vec<u32> = parts
            .iter()
            .map(|(h, _)| h.total_degree().unwrap())
            .collect();
        assert_eq!(degs, vec![3, 1]);
        assert_eq!(recompose(&parts, a, Block::X), p);
        let r2 = Polynomial::r2(a, Block::X);
        let parts = decompose_into_harmonics(&r2, Block::X).unwrap();
        assert_eq!(parts, vec![(Polynomial::one(a), 1)]);
    }
}
