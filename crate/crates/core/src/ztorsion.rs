//! Exact integer linear algebra: Smith normal form with transforms, torsion
//! of cokernels after inverting `p`, and the invertible-module count of a
//! diagram at `q = p^nu`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::alexander::{alexander_from_matrix, dehn_matrix, evaluate};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::finitefield::is_prime;
use crate::laurent::LaurentMatrix;
use crate::presentation::dehn_presentation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows, which must all have length `cols`.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter("ragged matrix rows".into()));
        }
        Ok(IntMatrix { rows: rows.len(), cols, entries: rows })
    }

    /// Panics on ragged input.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let entries: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(entries, cols).expect("rows of equal length")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r][c]
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i][j] += a * &other.entries[k][j];
                }
            }
        }
        out
    }

    /// Determinant by fraction-free elimination. Square matrices only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if piv != k {
                a.swap(piv, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.entries.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.entries {
            r.swap(a, b);
        }
    }

    /// `row[dst] += k * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = &self.entries[src][c] * k;
            self.entries[dst][c] += v;
        }
    }

    /// `col[dst] += k * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in &mut self.entries {
            let v = &r[src] * k;
            r[dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for e in &mut self.entries[r] {
            *e = -&*e;
        }
    }
}

/// `U A V = diag(d_1, ..., d_r, 0, ...)` with `U`, `V` unimodular,
/// `d_i >= 1` and `d_i | d_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    divisors: Vec<BigInt>,
    u: IntMatrix,
    v: IntMatrix,
    rows: usize,
    cols: usize,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn u(&self) -> &IntMatrix {
        &self.u
    }

    pub fn v(&self) -> &IntMatrix {
        &self.v
    }

    pub fn diagonal(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (i, x) in self.divisors.iter().enumerate() {
            d.entries[i][i] = x.clone();
        }
        d
    }

    /// Recomputes `U A V` and checks it against the diagonal form, along with
    /// unimodularity and the divisibility chain.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let unimodular = |m: &IntMatrix| m.det().abs().is_one();
        let chain = self.divisors.iter().all(|d| d.is_positive())
            && self.divisors.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        chain && unimodular(&self.u) && unimodular(&self.v) && self.u.mul(a).mul(&self.v) == self.diagonal()
    }

    /// Product of the nonzero elementary divisors: the order of the torsion
    /// subgroup of the cokernel.
    pub fn torsion_order(&self) -> BigInt {
        self.divisors.iter().product()
    }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let e = &a.entries[i][j];
            if e.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.entries[bi][bj].abs() <= e.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Classical Smith normal form over big integers. Pivots are entries of
/// minimal absolute value; every operation is mirrored into `U` or `V`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let mut s = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    let mut t = 0;
    while t < s.rows.min(s.cols) {
        let Some((pi, pj)) = min_abs_entry(&s, t) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..s.rows {
                if s.entries[i][t].is_zero() {
                    continue;
                }
                let k = -s.entries[i][t].div_floor(&s.entries[t][t]);
                s.add_row(i, t, &k);
                u.add_row(i, t, &k);
                if !s.entries[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..s.cols {
                if s.entries[t][j].is_zero() {
                    continue;
                }
                let k = -s.entries[t][j].div_floor(&s.entries[t][t]);
                s.add_col(j, t, &k);
                v.add_col(j, t, &k);
                if !s.entries[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // Divisibility: fold any row holding a non-multiple into row t
                // and eliminate again.
                let bad = (t + 1..s.rows).find(|&i| {
                    (t + 1..s.cols).any(|j| !(&s.entries[i][j] % &s.entries[t][t]).is_zero())
                });
                match bad {
                    None => break,
                    Some(i) => {
                        let one = BigInt::one();
                        s.add_row(t, i, &one);
                        u.add_row(t, i, &one);
                    }
                }
            }
            // Move the smallest remaining entry of row/column t to the pivot.
            let mut best = (t, t);
            for i in t..s.rows {
                let e = &s.entries[i][t];
                if !e.is_zero() && e.abs() < s.entries[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..s.cols {
                let e = &s.entries[t][j];
                if !e.is_zero() && e.abs() < s.entries[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                s.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
            }
            if best.1 != t {
                s.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
            }
        }
        if s.entries[t][t].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let divisors = (0..t).map(|i| s.entries[i][i].clone()).collect();
    SmithDecomposition { divisors, u, v, rows: a.rows, cols: a.cols }
}

/// `n` with every factor of `p` removed (`0` stays `0`).
pub fn prime_to_p_part(n: &BigInt, p: u64) -> BigInt {
    let p = BigInt::from(p);
    let mut n = n.abs();
    if n.is_zero() {
        return n;
    }
    while (&n % &p).is_zero() {
        n /= &p;
    }
    n
}

/// Order of the torsion subgroup of `coker(A) ⊗ Z[1/p]`: the product of the
/// elementary divisors with all factors of `p` removed.
pub fn torsion_order_cokernel_p_inverted(a: &IntMatrix, p: u64) -> BigInt {
    let snf = smith_normal_form(a);
    snf.divisors().iter().map(|d| prime_to_p_part(d, p)).product()
}

/// Substitutes `x = q`, first multiplying every row by `q^-e` where `e` is its
/// lowest exponent. That scaling is a unit over `Z[1/p]`.
pub fn evaluate_matrix(a: &LaurentMatrix, q: &BigInt) -> IntMatrix {
    let mut out = IntMatrix::zeros(a.rows(), a.cols());
    for r in 0..a.rows() {
        let lo = a.row(r).iter().filter_map(|e| e.min_exp()).min().unwrap_or(0);
        for c in 0..a.cols() {
            let mut v = BigInt::zero();
            for (e, coeff) in a.get(r, c).terms() {
                v += coeff * Pow::pow(q, (e - lo) as u64);
            }
            out.entries[r][c] = v;
        }
    }
    out
}

/// Checks that `A(q)` composes to zero with the index map
/// `y -> (q^{I(j)} - 1)_j` of the two-term complex, exactly over `Q`.
pub fn complex_composes_to_zero(a: &LaurentMatrix, indices: &[i64], q: &BigInt) -> bool {
    let qr = BigRational::from_integer(q.clone());
    let col = |j: usize| -> BigRational {
        // column j is region j + 1
        let i = indices[j + 1];
        Pow::pow(&qr, i) - BigRational::one()
    };
    (0..a.rows()).all(|r| {
        let mut sum = BigRational::zero();
        for c in 0..a.cols() {
            for (e, coeff) in a.get(r, c).terms() {
                sum += BigRational::from_integer(coeff.clone()) * Pow::pow(&qr, e) * col(c);
            }
        }
        sum.is_zero()
    })
}

/// Result of [`count_invertible_modules`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleCount {
    pub q: BigInt,
    /// Signed value of the normalized Alexander polynomial at `q`.
    pub delta_q: BigInt,
    /// Order of the group of invertible modules.
    pub count: BigInt,
    /// When set, `count` is the prime-to-`p` part of the minor gcd rather
    /// than `|Δ(q)|`.
    pub p_divides_c0: bool,
    /// Nonzero elementary divisors of the integer form of `A(q)`.
    pub elementary_divisors: Vec<BigInt>,
}

impl ModuleCount {
    /// Number of classes already defined over `F_{p^level}`: the product of
    /// `gcd(d_i, p^level - 1)`. Reaches `count` once every prime-to-`p`
    /// divisor divides `p^level - 1`.
    pub fn count_at_level(&self, p: u64, level: u32) -> BigInt {
        let n = Pow::pow(&BigInt::from(p), level) - 1;
        self.elementary_divisors.iter().map(|d| d.gcd(&n)).product()
    }
}

pub fn count_invertible_modules(d: &Diagram, p: u64, nu: u32) -> Result<ModuleCount> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
    }
    if nu == 0 {
        return Err(Error::InvalidParameter("nu must be positive".into()));
    }
    let pres = dehn_presentation(d)?;
    let a = dehn_matrix(&pres);
    let delta = alexander_from_matrix(&a)?;
    let q = Pow::pow(&BigInt::from(p), nu);
    debug_assert!(complex_composes_to_zero(&a, &pres.indices, &q));
    let aq = evaluate_matrix(&a, &q);
    let snf = smith_normal_form(&aq);
    let count = snf.divisors().iter().map(|x| prime_to_p_part(x, p)).product();
    Ok(ModuleCount {
        delta_q: evaluate(&delta, &q),
        count,
        p_divides_c0: (delta.constant_term() % BigInt::from(p)).is_zero(),
        elementary_divisors: snf.divisors().to_vec(),
        q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{faces_with_null, mirror, parse_pd};
    use crate::presentation::dehn_presentation_with;
    use proptest::prelude::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
    const FIVE_TWO: &str = "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]";

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn snf_examples() {
        let s = smith_normal_form(&IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 6]]));
        assert_eq!(s.divisors(), ints(&[2, 6]).as_slice());
        let a = IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.divisors(), ints(&[2, 4]).as_slice());
        assert!(s.verify(&a));
        let z = IntMatrix::zeros(3, 2);
        let s = smith_normal_form(&z);
        assert_eq!(s.rank(), 0);
        assert!(s.verify(&z));
    }

    #[test]
    fn snf_needs_divisibility_fixup() {
        // diag(2, 3) is not in Smith form: the answer is diag(1, 6)
        let a = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.divisors(), ints(&[1, 6]).as_slice());
        assert!(s.verify(&a));
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(torsion_order_cokernel_p_inverted(&IntMatrix::from_i64_rows(&[vec![6]]), 2), 3.into());
        let a = IntMatrix::from_i64_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 35]]);
        assert_eq!(torsion_order_cokernel_p_inverted(&a, 3), 35.into());
    }

    #[test]
    fn trefoil_at_two() {
        let d = parse_pd(TREFOIL).unwrap();
        let p = dehn_presentation(&d).unwrap();
        let a = evaluate_matrix(&dehn_matrix(&p), &2.into());
        assert_eq!((a.rows(), a.cols()), (3, 4));
        assert_eq!(torsion_order_cokernel_p_inverted(&a, 2), 3.into());
    }

    #[test]
    fn counts_match_delta() {
        let cases: [(&str, u64, u32, i64, i64, bool); 5] = [
            (TREFOIL, 2, 1, 3, 3, false),
            (TREFOIL, 2, 2, 13, 13, false),
            (FIGURE_EIGHT, 2, 1, -1, 1, false),
            (FIVE_TWO, 2, 1, 4, 1, true),
            ("unknot", 5, 1, 1, 1, false),
        ];
        for (pd, p, nu, delta, count, flag) in cases {
            let r = count_invertible_modules(&parse_pd(pd).unwrap(), p, nu).unwrap();
            assert_eq!(r.delta_q, delta.into(), "{pd}");
            assert_eq!(r.count, count.into(), "{pd}");
            assert_eq!(r.p_divides_c0, flag, "{pd}");
        }
    }

    #[test]
    fn count_is_diagram_invariant() {
        for pd in [TREFOIL, FIGURE_EIGHT, FIVE_TWO] {
            let d = parse_pd(pd).unwrap();
            for (p, nu) in [(2, 1), (3, 1), (2, 2)] {
                let base = count_invertible_modules(&d, p, nu).unwrap().count;
                assert_eq!(count_invertible_modules(&mirror(&d), p, nu).unwrap().count, base);
                let q = BigInt::from(p).pow(nu);
                for f in 0..d.crossing_count() + 2 {
                    let pres = dehn_presentation_with(&d, faces_with_null(&d, f).unwrap()).unwrap();
                    let a = dehn_matrix(&pres);
                    assert!(complex_composes_to_zero(&a, &pres.indices, &q));
                    assert_eq!(torsion_order_cokernel_p_inverted(&evaluate_matrix(&a, &q), p), base);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let d = parse_pd(TREFOIL).unwrap();
        assert!(matches!(count_invertible_modules(&d, 4, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(count_invertible_modules(&d, 2, 0), Err(Error::InvalidParameter(_))));
    }

    proptest! {
        #[test]
        fn snf_recomposes(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-20i64..20, 25)) {
            let m: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect()).collect();
            let a = IntMatrix::from_i64_rows(&m);
            let s = smith_normal_form(&a);
            prop_assert!(s.verify(&a));
            if rows == cols {
                prop_assert_eq!(s.torsion_order() * if s.rank() == rows { 1 } else { 0 }, a.det().abs());
            }
        }
    }
}
