//! Exact integer polynomial and Laurent polynomial arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense polynomial in `Z[x]`, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Largest `k` with `x^k` dividing the polynomial.
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn shift_down(&self, k: usize) -> Self {
        IntPoly::new(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: c }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i] += a;
        }
        for (i, b) in other.coeffs.iter().enumerate() {
            c[i] += b;
        }
        IntPoly::new(c)
    }

    pub fn neg(&self) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, with a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        IntPoly { coeffs: self.coeffs.iter().map(|c| c / &g).collect() }
    }

    /// Pseudo-remainder of `self` by `d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let t = r.leading().unwrap().clone();
            r = r.scale(&lc).sub(&d.scale(&t).shift_up(dr - dd));
        }
        r
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in `Z[x]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let lc = d.leading().unwrap();
        let mut r = self.clone();
        if r.is_zero() {
            return Some(Self::zero());
        }
        let dr = r.degree().unwrap();
        if dr < dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); dr - dd + 1];
        while let Some(deg) = r.degree() {
            if deg < dd {
                return None;
            }
            let (t, rem) = r.leading().unwrap().div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            q[deg - dd] = t.clone();
            r = r.sub(&d.scale(&t).shift_up(deg - dd));
        }
        Some(IntPoly::new(q))
    }

    /// Greatest common divisor in `Z[x]`, with a positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut f, mut g) = (self.primitive_part(), other.primitive_part());
        if f.degree() < g.degree() {
            std::mem::swap(&mut f, &mut g);
        }
        while !g.is_zero() {
            let r = f.pseudo_rem(&g);
            f = g;
            g = r.primitive_part();
        }
        f.primitive_part().scale(&c)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

/// Determinant of a square matrix over `Z[x]` by fraction-free (Bareiss)
/// elimination.
pub fn bareiss_det(mut m: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut sign_neg = false;
    let mut prev = IntPoly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign_neg = !sign_neg;
                }
                None => return IntPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = IntPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        det.neg()
    } else {
        det
    }
}

/// Laurent polynomial in `Z[x, x^-1]`, stored sparsely without zero terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        let entry = self.terms.entry(exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    /// Value at `x = 1`.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Dense coefficients of `x^-shift * self` where `shift` is the smallest
    /// exponent present (0 for the zero polynomial).
    pub fn to_int_poly(&self) -> (i64, IntPoly) {
        let Some(lo) = self.min_exp() else {
            return (0, IntPoly::zero());
        };
        let hi = self.max_exp().unwrap();
        let mut c = vec![BigInt::zero(); (hi - lo) as usize + 1];
        for (e, v) in self.terms() {
            c[(e - lo) as usize] = v.clone();
        }
        (lo, IntPoly::new(c))
    }

    /// Coefficients of `self * x^shift` as a polynomial; `shift` must clear
    /// every negative exponent.
    pub fn to_int_poly_with_shift(&self, shift: i64) -> IntPoly {
        let Some(lo) = self.min_exp() else {
            return IntPoly::zero();
        };
        assert!(lo + shift >= 0, "shift does not clear negative exponents");
        let hi = self.max_exp().unwrap();
        let mut c = vec![BigInt::zero(); (hi + shift) as usize + 1];
        for (e, v) in self.terms() {
            c[(e + shift) as usize] = v.clone();
        }
        IntPoly::new(c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !a.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match *e {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

/// Dense matrix of Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<LaurentPoly>>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix { rows, cols, entries: vec![vec![LaurentPoly::zero(); cols]; rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r][c]
    }

    pub fn add_to(&mut self, r: usize, c: usize, p: &LaurentPoly) {
        self.entries[r][c] = self.entries[r][c].add(p);
    }

    pub fn row(&self, r: usize) -> &[LaurentPoly] {
        &self.entries[r]
    }

    pub fn scale_row(&mut self, r: usize, by: &LaurentPoly) {
        for e in &mut self.entries[r] {
            *e = e.mul(by);
        }
    }

    pub fn without_column(&self, c: usize) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, e)| e.clone()).collect())
            .collect();
        LaurentMatrix { rows: self.rows, cols: self.cols - 1, entries }
    }

    pub fn without_row(&self, r: usize) -> Self {
        let entries =
            self.entries.iter().enumerate().filter(|&(i, _)| i != r).map(|(_, row)| row.clone()).collect();
        LaurentMatrix { rows: self.rows - 1, cols: self.cols, entries }
    }

    /// Determinant of a square submatrix given by row and column index lists,
    /// returned as a polynomial with all `x`-power factors removed (so it is
    /// defined up to the units `±x^k` only through its sign).
    fn minor_up_to_x(&self, rows: &[usize], cols: &[usize]) -> IntPoly {
        let m: Vec<Vec<IntPoly>> = rows
            .iter()
            .map(|&r| {
                let lo = cols.iter().filter_map(|&c| self.entries[r][c].min_exp()).min().unwrap_or(0);
                cols.iter().map(|&c| self.entries[r][c].to_int_poly_with_shift(-lo)).collect()
            })
            .collect();
        let det = bareiss_det(m);
        let v = det.x_valuation();
        det.shift_down(v)
    }

    /// Every maximal minor, each with its `x`-power factor stripped.
    pub fn maximal_minors(&self) -> Vec<IntPoly> {
        let k = self.rows.min(self.cols);
        let all_rows: Vec<usize> = (0..self.rows).collect();
        let all_cols: Vec<usize> = (0..self.cols).collect();
        if self.rows <= self.cols {
            combinations(self.cols, k).iter().map(|cs| self.minor_up_to_x(&all_rows, cs)).collect()
        } else {
            combinations(self.rows, k).iter().map(|rs| self.minor_up_to_x(rs, &all_cols)).collect()
        }
    }

    /// Gcd of all maximal minors in `Z[x, x^-1]`, as a polynomial with
    /// non-zero constant term and positive leading coefficient (zero if every
    /// minor vanishes).
    pub fn maximal_minor_gcd(&self) -> IntPoly {
        self.maximal_minors().iter().fold(IntPoly::zero(), |g, m| g.gcd(m))
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn gcd_examples() {
        // (x - 1)(x + 2) and (x - 1)(x - 3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[4, 6]).gcd(&p(&[6, 9])), p(&[2, 3]));
        assert_eq!(p(&[0, 0, 5]).gcd(&p(&[0, 10])), p(&[0, 5]));
        assert_eq!(IntPoly::zero().gcd(&p(&[-3, -6])), p(&[3, 6]));
    }

    #[test]
    fn bareiss_small() {
        let m = vec![vec![p(&[1]), p(&[0, 1])], vec![p(&[0, 1]), p(&[1])]];
        assert_eq!(bareiss_det(m), p(&[1, 0, -1]));
        let singular = vec![vec![p(&[1, 1]), p(&[2, 2])], vec![p(&[3]), p(&[6])]];
        assert!(bareiss_det(singular).is_zero());
        let needs_swap = vec![vec![p(&[0]), p(&[1])], vec![p(&[1]), p(&[0])]];
        assert_eq!(bareiss_det(needs_swap), p(&[-1]));
    }

    #[test]
    fn laurent_display() {
        let mut l = LaurentPoly::monomial(BigInt::from(-1), -1);
        l.add_term(0, BigInt::from(3));
        l.add_term(2, BigInt::from(1));
        assert_eq!(l.to_string(), "x^2 + 3 - x^-1");
        assert_eq!(l.to_int_poly(), (-1, p(&[-1, 3, 0, 1])));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-6i64..=6, 0..5).prop_map(|c| IntPoly::from_i64(&c))
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly()) {
            let g = a.gcd(&b);
            if !g.is_zero() {
                prop_assert!(a.div_exact(&g).is_some());
                prop_assert!(b.div_exact(&g).is_some());
            } else {
                prop_assert!(a.is_zero() && b.is_zero());
            }
        }

        #[test]
        fn gcd_of_products_contains_common_factor(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
            let g = a.mul(&c).gcd(&b.mul(&c));
            prop_assert!(g.div_exact(&c.primitive_part()).is_some());
        }

        #[test]
        fn div_exact_inverts_mul(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(a.mul(&b).div_exact(&b), Some(a));
        }
    }
}
