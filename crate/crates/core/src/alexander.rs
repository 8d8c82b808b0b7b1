//! The crossing/region matrix `A(x)`, the Alexander polynomial as the gcd of
//! its maximal minors, and a Fox-calculus cross-check from the Wirtinger
//! presentation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::diagram::Handedness;
use crate::error::{Error, Result};
use crate::laurent::{IntPoly, LaurentMatrix, LaurentPoly};
use crate::presentation::{DehnPresentation, WirtingerPresentation};

/// Alexander polynomial `c_0 + c_1 x + ... + c_n x^n` normalized so that
/// `c_0 > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlexPoly {
    coeffs: Vec<BigInt>,
}

impl AlexPoly {
    pub fn one() -> Self {
        AlexPoly { coeffs: vec![BigInt::one()] }
    }

    /// Normalizes a nonzero polynomial: strips the `x`-power and makes the
    /// constant term positive.
    pub fn from_poly(p: &IntPoly) -> Option<Self> {
        if p.is_zero() {
            return None;
        }
        let q = p.shift_down(p.x_valuation());
        let mut coeffs = q.into_coeffs();
        if coeffs[0].is_negative() {
            coeffs.iter_mut().for_each(|c| *c = -&*c);
        }
        Some(AlexPoly { coeffs })
    }

    pub fn from_i64(c: &[i64]) -> Option<Self> {
        Self::from_poly(&IntPoly::from_i64(c))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    /// Whether `c_i = s c_{n-i}` for one global sign `s`.
    pub fn is_palindromic_up_to_sign(&self) -> bool {
        let n = self.coeffs.len();
        let fwd = (0..n).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i]);
        let neg = (0..n).all(|i| self.coeffs[i] == -&self.coeffs[n - 1 - i]);
        fwd || neg
    }

    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| i64::try_from(c).ok()).collect()
    }
}

impl fmt::Display for AlexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = LaurentPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            l.add_term(i as i64, c.clone());
        }
        write!(f, "{l}")
    }
}

/// `Δ(q)` as an exact integer.
pub fn evaluate(delta: &AlexPoly, q: &BigInt) -> BigInt {
    delta.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
}

fn term(c: i64, e: i64) -> LaurentPoly {
    LaurentPoly::monomial(BigInt::from(c), e)
}

/// The `v x (v+1)` matrix with rows indexed by crossings and columns by the
/// non-null regions `1..=v+1`. Row `c` gets `1` at `j`, `-1` at `m`, and
/// `-x^s`, `x^s` at `k`, `l`, with `s = 1` for left-handed and `s = -1` for
/// right-handed crossings. Repeated regions accumulate.
pub fn dehn_matrix(p: &DehnPresentation) -> LaurentMatrix {
    let mut a = LaurentMatrix::zeros(p.relations.len(), p.generator_count);
    for (row, r) in p.relations.iter().enumerate() {
        let s = r.handedness.twist();
        for (region, entry) in [(r.j, term(1, 0)), (r.k, term(-1, s)), (r.l, term(1, s)), (r.m, term(-1, 0))] {
            if region != 0 {
                a.add_to(row, region - 1, &entry);
            }
        }
    }
    a
}

/// [`dehn_matrix`] with every right-handed row multiplied by `x`, which gives
/// the classical Alexander matrix of the mirror diagram with the null column
/// removed. Only for comparison against classical tables.
pub fn dehn_matrix_classical(p: &DehnPresentation) -> LaurentMatrix {
    let mut a = dehn_matrix(p);
    for (row, r) in p.relations.iter().enumerate() {
        if r.handedness == Handedness::Right {
            a.scale_row(row, &term(1, 1));
        }
    }
    a
}

/// Normalized gcd of the maximal minors. The empty matrix gives `1`.
pub fn alexander_from_matrix(a: &LaurentMatrix) -> Result<AlexPoly> {
    if a.rows() == 0 || a.cols() == 0 {
        return Ok(AlexPoly::one());
    }
    let g = a.maximal_minor_gcd();
    AlexPoly::from_poly(&g)
        .ok_or_else(|| Error::DegenerateDiagram("every maximal minor of the matrix vanishes".into()))
}

/// Abelianized Fox Jacobian (relations x generators), every generator sent to `x`.
pub fn fox_matrix(w: &WirtingerPresentation) -> LaurentMatrix {
    let mut m = LaurentMatrix::zeros(w.relations.len(), w.generator_count);
    for (row, r) in w.relations.iter().enumerate() {
        let mut prefix = 0i64;
        for (g, e) in r.relator() {
            if e == 1 {
                m.add_to(row, g, &term(1, prefix));
            } else {
                m.add_to(row, g, &term(-1, prefix - 1));
            }
            prefix += e as i64;
        }
    }
    m
}

/// Alexander polynomial from the Wirtinger presentation: Fox Jacobian, one
/// column deleted, gcd of maximal minors.
pub fn fox_alexander(w: &WirtingerPresentation) -> Result<AlexPoly> {
    fox_alexander_dropping(w, 0, None)
}

/// Fox route with a chosen deleted column and optionally one relation removed.
pub fn fox_alexander_dropping(
    w: &WirtingerPresentation,
    column: usize,
    relation: Option<usize>,
) -> Result<AlexPoly> {
    if w.relations.is_empty() {
        return Ok(AlexPoly::one());
    }
    let mut m = fox_matrix(w).without_column(column);
    if let Some(r) = relation {
        m = m.without_row(r);
    }
    if m.cols() == 0 || m.rows() == 0 {
        return Ok(AlexPoly::one());
    }
    let g = m.maximal_minor_gcd();
    AlexPoly::from_poly(&g)
        .ok_or_else(|| Error::DegenerateDiagram("Fox matrix has no nonzero maximal minor".into()))
}
