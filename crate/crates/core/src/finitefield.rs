//! Arithmetic in `F_{p^m}` with elements packed into a `u64`.
//!
//! An element `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` is stored as the integer
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`; this integer order is also the
//! deterministic element order used everywhere. Characteristic two gets a
//! bit-packed fast path.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest field size accepted without an explicit override.
pub const DEFAULT_FIELD_LIMIT: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FieldElem(pub u64);

// Dense polynomials over F_p, coefficients low-degree first, used only while
// choosing the modulus.
mod fp_poly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect();
        trim(&mut out);
        out
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let mut r = 1;
        let (mut b, mut e) = (a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    pub fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p);
        while r.len() > df {
            let shift = r.len() - 1 - df;
            let c = r[r.len() - 1] * lead_inv % p;
            for (i, &fc) in f.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * fc % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, f, p)
    }

    pub fn powmod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut base = rem(a, f, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &base, f, p);
            }
            base = mulmod(&base, &base, f, p);
            e >>= 1;
        }
        result
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's irreducibility test for a monic `f` of degree `m`.
    pub fn is_irreducible(f: &[u64], p: u64, m: u32, prime_divisors: &[u32]) -> bool {
        let x = vec![0, 1];
        // x^{p^k} mod f for k = 0..=m
        let mut frob = vec![rem(&x, f, p)];
        for _ in 0..m {
            let last = frob.last().unwrap().clone();
            frob.push(powmod(&last, p, f, p));
        }
        if sub(&frob[m as usize], &frob[0], p) != Vec::<u64>::new() {
            return false;
        }
        prime_divisors.iter().all(|&r| {
            let h = sub(&frob[(m / r) as usize], &frob[0], p);
            gcd(f, &h, p).len() == 1
        })
    }
}

/// An `F_p`-linear map of the field, stored for fast application.
#[derive(Debug, Clone)]
enum LinMap {
    /// One 256-entry XOR table per byte of the packed element.
    Binary(Vec<[u64; 256]>),
    /// Digit images of the basis `1, x, ..., x^{m-1}`.
    Odd(Vec<Vec<u64>>),
}

#[derive(Debug, Clone)]
enum Arith {
    Binary {
        /// Reduction tables for the bits above degree `m - 1`.
        reduce: Vec<[u64; 256]>,
    },
    Odd,
}

/// A finite field `F_p[x]/(f)` with `f` the lexicographically smallest monic
/// irreducible of degree `m` (coefficients compared from the constant term
/// up).
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u64,
    m: u32,
    size: u64,
    modulus: Vec<u64>,
    arith: Arith,
    /// `frob[e]` is `a -> a^{p^e}` for `e` in `0..m`.
    frob: Vec<LinMap>,
}

/// Field with the default size guard.
pub fn make_field(p: u64, m: u32) -> Result<FieldCtx> {
    FieldCtx::new(p, m, false)
}

impl FieldCtx {
    /// `allow_large` lifts the `p^m <= 2^20` guard (the packed form still
    /// needs `p^m < 2^63`).
    pub fn new(p: u64, m: u32, allow_large: bool) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
        }
        if m < 1 {
            return Err(Error::InvalidParameter("field degree must be at least 1".into()));
        }
        let size = (0..m).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&s| s < 1 << 63));
        let Some(size) = size else {
            return Err(Error::InvalidParameter(format!("F_{{{p}^{m}}} is too large to represent")));
        };
        if size > DEFAULT_FIELD_LIMIT && !allow_large {
            return Err(Error::BudgetExceeded(format!(
                "field of size {p}^{m} exceeds 2^20; raise the budget to allow it"
            )));
        }
        if p == 2 && m > 32 {
            return Err(Error::InvalidParameter("characteristic two fields are limited to degree 32".into()));
        }
        let modulus = Self::find_modulus(p, m);
        let arith = if p == 2 {
            let mbits = m as usize;
            // x^{m+i} mod f for i in 0..m-1, as bit masks
            let mut powers = Vec::with_capacity(mbits);
            let low: u64 = (0..mbits).filter(|&i| modulus[i] == 1).fold(0, |acc, i| acc | 1 << i);
            let mut cur = low; // x^m = low part of f
            for _ in 0..mbits.max(1) {
                powers.push(cur);
                let carry = cur >> (mbits - 1) & 1;
                cur = (cur << 1) & ((1u64 << mbits) - 1);
                if carry == 1 {
                    cur ^= low;
                }
            }
            let reduce = byte_tables(&powers);
            Arith::Binary { reduce }
        } else {
            Arith::Odd
        };
        let mut ctx = FieldCtx { p, m, size, modulus, arith, frob: Vec::new() };
        ctx.frob = ctx.build_frobenius_maps();
        Ok(ctx)
    }

    fn find_modulus(p: u64, m: u32) -> Vec<u64> {
        let divisors = prime_factors(m);
        if m == 1 {
            return vec![0, 1];
        }
        // skip the p^{m-1} candidates with c_0 = 0
        for n in p.pow(m - 1)..p.pow(m) {
            // c_0 is the most significant digit of n so that the scan is
            // lexicographic from the constant term up
            let mut f = vec![0u64; m as usize + 1];
            let mut r = n;
            for i in (0..m as usize).rev() {
                f[i] = r % p;
                r /= p;
            }
            f[m as usize] = 1;
            if fp_poly::is_irreducible(&f, p, m, &divisors) {
                return f;
            }
        }
        unreachable!("irreducible polynomials of every degree exist")
    }

    fn build_frobenius_maps(&self) -> Vec<LinMap> {
        let m = self.m as usize;
        let basis: Vec<FieldElem> = (0..m).map(|i| self.x_pow(i as u64)).collect();
        let mut images = basis.clone();
        let mut maps = Vec::with_capacity(m);
        for e in 0..m {
            if e > 0 {
                images = images.iter().map(|&b| self.pow(b, self.p)).collect();
            }
            maps.push(self.linmap(&images));
        }
        maps
    }

    fn linmap(&self, images: &[FieldElem]) -> LinMap {
        if self.p == 2 {
            LinMap::Binary(byte_tables(&images.iter().map(|e| e.0).collect::<Vec<_>>()))
        } else {
            LinMap::Odd(images.iter().map(|&e| self.coeffs(e)).collect())
        }
    }

    fn apply(&self, map: &LinMap, a: FieldElem) -> FieldElem {
        match map {
            LinMap::Binary(tables) => {
                let mut r = 0u64;
                let mut v = a.0;
                for t in tables {
                    r ^= t[(v & 0xff) as usize];
                    v >>= 8;
                }
                FieldElem(r)
            }
            LinMap::Odd(rows) => {
                let m = self.m as usize;
                let mut d = [0u64; 64];
                self.unpack(a.0, &mut d);
                let mut out = [0u64; 64];
                for (i, row) in rows.iter().enumerate() {
                    if d[i] == 0 {
                        continue;
                    }
                    for j in 0..m {
                        out[j] += d[i] * row[j];
                    }
                }
                for o in out.iter_mut().take(m) {
                    *o %= self.p;
                }
                FieldElem(self.pack(&out[..m]))
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Number of elements `p^m`.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Monic modulus, coefficients low-degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// The prime-field element `c mod p`.
    pub fn constant(&self, c: u64) -> FieldElem {
        FieldElem(c % self.p)
    }

    fn unpack(&self, mut v: u64, out: &mut [u64]) {
        for o in out.iter_mut().take(self.m as usize) {
            *o = v % self.p;
            v /= self.p;
        }
    }

    fn pack(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Coefficients `c_0..c_{m-1}` of an element.
    pub fn coeffs(&self, a: FieldElem) -> Vec<u64> {
        let mut d = vec![0u64; self.m as usize];
        self.unpack(a.0, &mut d);
        d
    }

    pub fn from_coeffs(&self, c: &[u64]) -> Result<FieldElem> {
        if c.len() > self.m as usize || c.iter().any(|&x| x >= self.p) {
            return Err(Error::InvalidParameter(format!("{c:?} is not an element of F_{}^{}", self.p, self.m)));
        }
        Ok(FieldElem(self.pack(c)))
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        a.0 < self.size
    }

    fn x_pow(&self, k: u64) -> FieldElem {
        let x = if self.m == 1 { FieldElem((self.p - self.modulus[0]) % self.p) } else { FieldElem(self.p) };
        self.pow(x, k)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if self.m == 1 {
            return FieldElem(((a.0 as u128 + b.0 as u128) % self.p as u128) as u64);
        }
        let (mut da, mut db) = ([0u64; 64], [0u64; 64]);
        self.unpack(a.0, &mut da);
        self.unpack(b.0, &mut db);
        for i in 0..self.m as usize {
            da[i] = (da[i] + db[i]) % self.p;
        }
        FieldElem(self.pack(&da[..self.m as usize]))
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.p == 2 {
            return a;
        }
        if self.m == 1 {
            return FieldElem((self.p - a.0) % self.p);
        }
        let mut d = [0u64; 64];
        self.unpack(a.0, &mut d);
        for x in d.iter_mut().take(self.m as usize) {
            *x = (self.p - *x) % self.p;
        }
        FieldElem(self.pack(&d[..self.m as usize]))
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    /// Multiplication by a prime-field scalar.
    pub fn scale(&self, c: u64, a: FieldElem) -> FieldElem {
        self.mul(self.constant(c), a)
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.arith {
            Arith::Binary { reduce } => {
                let (a, b) = (a.0, b.0);
                let mut prod = 0u64;
                for i in 0..self.m {
                    prod ^= (a << i) & (b >> i & 1).wrapping_neg();
                }
                let mbits = self.m;
                let mut high = prod >> mbits;
                let mut r = prod & ((1u64 << mbits) - 1);
                for t in reduce {
                    if high == 0 {
                        break;
                    }
                    r ^= t[(high & 0xff) as usize];
                    high >>= 8;
                }
                FieldElem(r)
            }
            Arith::Odd if self.m == 1 => FieldElem((a.0 as u128 * b.0 as u128 % self.p as u128) as u64),
            Arith::Odd => {
                let m = self.m as usize;
                let p = self.p;
                let (mut da, mut db) = ([0u64; 64], [0u64; 64]);
                self.unpack(a.0, &mut da);
                self.unpack(b.0, &mut db);
                let mut prod = [0u64; 128];
                for i in 0..m {
                    if da[i] == 0 {
                        continue;
                    }
                    for j in 0..m {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                for top in (m..2 * m - 1).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    prod[top] = 0;
                    // x^top = x^{top-m} * x^m and x^m = -(f_0 + ... + f_{m-1} x^{m-1})
                    for i in 0..m {
                        let t = c * self.modulus[i] % p;
                        prod[top - m + i] = (prod[top - m + i] + p - t) % p;
                    }
                }
                FieldElem(self.pack(&prod[..m]))
            }
        }
    }

    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut result = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.0 == 0 {
            None
        } else {
            Some(self.pow(a, self.size - 2))
        }
    }

    /// `a^{p^e}`, with `e` taken modulo `m` (negative `e` gives the inverse
    /// Frobenius).
    pub fn frob(&self, a: FieldElem, e: i64) -> FieldElem {
        let e = e.rem_euclid(self.m as i64) as usize;
        if e == 0 {
            return a;
        }
        self.apply(&self.frob[e], a)
    }

    /// `a^q` for `q` a power of the characteristic.
    pub fn frobenius(&self, a: FieldElem, q: u64) -> Result<FieldElem> {
        let mut e = 0i64;
        let mut r = q;
        while r > 1 && r.is_multiple_of(self.p) {
            r /= self.p;
            e += 1;
        }
        if r != 1 || q == 0 {
            return Err(Error::InvalidParameter(format!("{q} is not a power of {}", self.p)));
        }
        Ok(self.frob(a, e))
    }

    /// Every element in the deterministic order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.size).map(FieldElem)
    }

    /// All `p^m - 1` units in the deterministic order.
    pub fn units(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.size).map(FieldElem)
    }

    /// Multiplicative order of a unit.
    pub fn order(&self, a: FieldElem) -> u64 {
        let n = self.size - 1;
        let mut ord = n;
        for r in prime_factors_u64(n) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        ord
    }

    fn eval_prime_poly(&self, f: &[u64], t: FieldElem) -> FieldElem {
        f.iter().rev().fold(self.zero(), |acc, &c| self.add(self.mul(acc, t), self.constant(c)))
    }
}

fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// XOR tables for an `F_2`-linear map given by the images of the bits.
fn byte_tables(images: &[u64]) -> Vec<[u64; 256]> {
    let nbytes = images.len().div_ceil(8).max(1);
    (0..nbytes)
        .map(|b| {
            let mut t = [0u64; 256];
            for v in 1..256usize {
                let low = v.trailing_zeros() as usize;
                let bit = b * 8 + low;
                let img = images.get(bit).copied().unwrap_or(0);
                t[v] = t[v & (v - 1)] ^ img;
            }
            t
        })
        .collect()
}

/// A fixed ring embedding `F_{p^d} -> F_{p^M}` for `d | M`: `x` goes to the
/// smallest root of the smaller field's modulus.
#[derive(Debug, Clone)]
pub struct Embedding {
    from_degree: u32,
    to_degree: u32,
    /// Images of `1, x, ..., x^{d-1}`.
    basis: Vec<FieldElem>,
}

impl Embedding {
    pub fn new(from: &FieldCtx, to: &FieldCtx) -> Result<Self> {
        if from.p != to.p || !to.m.is_multiple_of(from.m) {
            return Err(Error::InvalidParameter(format!(
                "no embedding of F_{}^{} into F_{}^{}",
                from.p, from.m, to.p, to.m
            )));
        }
        let d = from.m as i64;
        let steps = to.m / from.m;
        let root = to
            .units()
            .map(|y| {
                // trace down to the subfield of degree d
                let mut t = to.zero();
                let mut cur = y;
                for _ in 0..steps {
                    t = to.add(t, cur);
                    cur = to.frob(cur, d);
                }
                t
            })
            .chain(std::iter::once(to.zero()))
            .find(|&t| to.eval_prime_poly(&from.modulus, t) == to.zero())
            .expect("an irreducible of degree d splits in any field of degree divisible by d");
        let smallest = (0..d).map(|i| to.frob(root, i)).min().unwrap();
        let mut basis = Vec::with_capacity(d as usize);
        let mut cur = to.one();
        for _ in 0..d {
            basis.push(cur);
            cur = to.mul(cur, smallest);
        }
        Ok(Embedding { from_degree: from.m, to_degree: to.m, basis })
    }

    pub fn apply(&self, from: &FieldCtx, to: &FieldCtx, a: FieldElem) -> FieldElem {
        debug_assert_eq!((from.m, to.m), (self.from_degree, self.to_degree));
        from.coeffs(a)
            .iter()
            .zip(&self.basis)
            .fold(to.zero(), |acc, (&c, &b)| if c == 0 { acc } else { to.add(acc, to.scale(c, b)) })
    }
}

/// One-shot embedding of a single element; build an [`Embedding`] to map
/// many elements.
pub fn embed(a: FieldElem, from: &FieldCtx, to: &FieldCtx) -> Result<FieldElem> {
    Ok(Embedding::new(from, to)?.apply(from, to, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn moduli() {
        assert_eq!(make_field(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
        let f = make_field(3, 2).unwrap();
        let m = f.modulus().to_vec();
        // exhaustive root check over F_3
        assert!((0..3u64).all(|t| !(m[0] + m[1] * t + t * t).is_multiple_of(3)));
        assert_eq!(m, vec![1, 0, 1]);
        // low-degree coefficients compare first: x^3 + x^2 + 1 before x^3 + x + 1
        assert_eq!(make_field(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn guard_and_validation() {
        assert!(matches!(make_field(4, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_field(2, 0), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_field(2, 21), Err(Error::BudgetExceeded(_))));
        assert!(FieldCtx::new(2, 21, true).is_ok());
    }

    #[test]
    fn unit_streams() {
        for (m, n) in [(1, 1), (2, 3), (3, 7)] {
            assert_eq!(make_field(2, m).unwrap().units().count(), n);
        }
    }

    #[test]
    fn axioms_small_fields() {
        for (p, m) in [(2, 1), (2, 4), (3, 2), (5, 2), (7, 1), (3, 3)] {
            let f = make_field(p, m).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.frob(a, m as i64), a);
                if a != f.zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for &b in els.iter().step_by(3) {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.frob(f.add(a, b), 1), f.add(f.frob(a, 1), f.frob(b, 1)));
                    assert_eq!(f.frob(f.mul(a, b), 1), f.mul(f.frob(a, 1), f.frob(b, 1)));
                    for &c in els.iter().step_by(5) {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_fixed_points() {
        for (p, m) in [(2, 6), (3, 4), (2, 4)] {
            let f = make_field(p, m).unwrap();
            for nu in 1..=m {
                let fixed = f.elements().filter(|&a| f.frob(a, nu as i64) == a).count() as u64;
                assert_eq!(fixed, p.pow(gcd(nu, m)));
            }
        }
    }

    #[test]
    fn frobenius_by_q_and_inverse() {
        let f = make_field(3, 4).unwrap();
        for a in f.elements().take(40) {
            assert_eq!(f.frobenius(a, 9).unwrap(), f.pow(a, 9));
            assert_eq!(f.frob(f.frob(a, 1), -1), a);
        }
        assert!(f.frobenius(f.one(), 6).is_err());
    }

    #[test]
    fn embeddings() {
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        let e = Embedding::new(&f4, &f16).unwrap();
        assert_eq!(e.apply(&f4, &f16, f4.one()), f16.one());
        for a in f4.units() {
            let b = e.apply(&f4, &f16, a);
            assert_eq!(3 % f16.order(b), 0);
        }
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(e.apply(&f4, &f16, f4.mul(a, b)), f16.mul(e.apply(&f4, &f16, a), e.apply(&f4, &f16, b)));
            }
            assert_eq!(e.apply(&f4, &f16, f4.frob(a, 1)), f16.frob(e.apply(&f4, &f16, a), 1));
        }
        assert!(Embedding::new(&f16, &f4).is_err());
        assert!(Embedding::new(&make_field(3, 1).unwrap(), &f4).is_err());
    }

    #[test]
    fn embedding_chain() {
        let f2 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        let f81 = make_field(3, 4).unwrap();
        let a = Embedding::new(&f2, &f9).unwrap();
        let b = Embedding::new(&f9, &f81).unwrap();
        let c = Embedding::new(&f2, &f81).unwrap();
        for x in f2.elements() {
            assert_eq!(b.apply(&f9, &f81, a.apply(&f2, &f9, x)), c.apply(&f2, &f81, x));
        }
        let d = Embedding::new(&f9, &f9).unwrap();
        for x in f9.elements() {
            let y = d.apply(&f9, &f9, x);
            assert_eq!(f9.frob(y, 1), d.apply(&f9, &f9, f9.frob(x, 1)));
        }
    }

    #[test]
    fn coefficient_round_trip() {
        let f = make_field(5, 3).unwrap();
        for a in f.elements().step_by(7) {
            assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
        }
        assert!(f.from_coeffs(&[5]).is_err());
    }
}
