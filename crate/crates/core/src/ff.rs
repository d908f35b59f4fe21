//! Finite-field arithmetic over GF(p^h) and linear algebra over the prime
//! subfield.
//!
//! Elements of GF(p^h) are polynomials of degree below `h` over F_p, reduced
//! modulo a monic irreducible. An element is encoded as the integer
//! `c_0 + c_1 p + ... + c_{h-1} p^{h-1}` of its coefficient vector, so the
//! encoding is stable across runs and doubles as the element's sort key.
//!
//! Fields of order at most 2^16 carry exp/log, inverse and negation tables;
//! larger fields fall back to polynomial arithmetic.

use crate::error::{Error, Result};

/// Encoded field element.
pub type Elem = u32;

const TABLE_LIMIT: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u64 = 1 << 10;
const FIELD_LIMIT: u64 = 1 << 31;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

/// Splits `q` as `p^h` if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut h = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        h += 1;
    }
    Some((p as u32, h))
}

/// The prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by extended Euclid; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        let a = a % self.p;
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let k = r0 / r1;
            (r0, r1) = (r1, r0 - k * r1);
            (t0, t1) = (t1, t0 - k * t1);
        }
        Some(self.reduce(t0))
    }
}

/// Polynomial helpers over F_p, coefficients little-endian.
mod poly {
    use super::PrimeField;

    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u32], m: &[u32], fp: &PrimeField) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = fp.inv(m[dm]).expect("nonzero leading coefficient");
        while r.len() > dm {
            let top = r.len() - 1;
            let k = fp.mul(r[top], lead_inv);
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = fp.sub(r[shift + i], fp.mul(k, mi));
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], fp: &PrimeField) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = fp.add(out[i + j], fp.mul(x, y));
            }
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[u32], b: &[u32], fp: &PrimeField) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| fp.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    /// Quotient and remainder of `a` by `b` (b nonzero).
    pub fn divmod(a: &[u32], b: &[u32], fp: &PrimeField) -> (Vec<u32>, Vec<u32>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = fp.inv(b[db]).expect("nonzero leading coefficient");
        let mut quot = vec![0u32; r.len().saturating_sub(db).max(1)];
        while r.len() > db {
            let top = r.len() - 1;
            let k = fp.mul(r[top], lead_inv);
            let shift = top - db;
            quot[shift] = k;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = fp.sub(r[shift + i], fp.mul(k, bi));
            }
            trim(&mut r);
        }
        trim(&mut quot);
        (quot, r)
    }

    /// Inverse of `a` modulo the irreducible `m` by extended Euclid.
    pub fn inv_mod(a: &[u32], m: &[u32], fp: &PrimeField) -> Option<Vec<u32>> {
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r1);
        if r1.is_empty() {
            return None;
        }
        let mut t0: Vec<u32> = Vec::new();
        let mut t1: Vec<u32> = vec![1];
        while !r1.is_empty() {
            let (k, r) = divmod(&r0, &r1, fp);
            let t = sub(&t0, &mul(&k, &t1, fp), fp);
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
        }
        // r0 is a nonzero constant gcd
        let c = fp.inv(r0[0])?;
        let mut out: Vec<u32> = t0.iter().map(|&x| fp.mul(x, c)).collect();
        out = rem(&out, m, fp);
        Some(out)
    }
}

#[derive(Debug, Clone)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    inv: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// The field GF(p^h).
#[derive(Debug, Clone)]
pub struct Field {
    base: PrimeField,
    h: u32,
    q: u32,
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    tables: Option<Tables>,
}

impl Field {
    /// Builds GF(p^h). Without an explicit modulus the monic irreducible
    /// whose lower coefficients encode to the smallest integer is used.
    pub fn new(p: u32, h: u32, modulus: Option<&[u32]>) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if h == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(h)
            .filter(|&q| q < FIELD_LIMIT)
            .ok_or(Error::FieldTooLarge { p, h })?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != h as usize + 1 || m[h as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::MalformedModulus { expected: h, p });
                }
                if !is_irreducible(m, &base) {
                    return Err(Error::ReducibleModulus(m.to_vec()));
                }
                m.to_vec()
            }
            None => lowest_irreducible(&base, h),
        };
        let mut pow_p = Vec::with_capacity(h as usize);
        let mut acc = 1u32;
        for _ in 0..h {
            pow_p.push(acc);
            acc = acc.wrapping_mul(p);
        }
        let mut field = Field {
            base,
            h,
            q: q as u32,
            modulus,
            pow_p,
            tables: None,
        };
        // Lagrange spot check on x (or 2 in a prime field).
        let probe = if h > 1 { p } else { 2 % p };
        if probe != 0 && field.pow(probe, q - 1) != 1 {
            return Err(Error::Internal("multiplicative group order check failed"));
        }
        if q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = (1..self.q)
            .find(|&g| factors.iter().all(|&f| self.pow_slow(g, order / f) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * (q - 1)];
        let mut log = vec![0u32; q];
        let mut x = 1u32;
        for i in 0..q - 1 {
            exp[i] = x;
            exp[i + q - 1] = x;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, generator);
        }
        let mut inv = vec![0u32; q];
        for a in 1..self.q {
            inv[a as usize] = self.inv_slow(a).expect("nonzero");
        }
        let neg: Vec<u32> = (0..self.q).map(|a| self.neg_slow(a)).collect();
        let add = (self.base.p != 2 && (q as u64) <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; q * q];
            for a in 0..self.q {
                for b in 0..self.q {
                    t[a as usize * q + b as usize] = self.add_slow(a, b);
                }
            }
            t
        });
        Tables {
            exp,
            log,
            inv,
            neg,
            add,
        }
    }

    pub fn p(&self) -> u32 {
        self.base.p
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn prime_field(&self) -> PrimeField {
        self.base
    }

    /// Monic modulus, little-endian coefficients (length h + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.q
    }

    /// Coefficient vector of `a`, least significant first.
    pub fn to_coeffs(&self, mut a: Elem) -> Vec<u32> {
        let p = self.base.p;
        (0..self.h)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Elem {
        coeffs
            .iter()
            .zip(&self.pow_p)
            .map(|(&c, &w)| (c % self.base.p) * w)
            .sum()
    }

    /// Embeds a prime-field residue.
    pub fn from_prime(&self, a: u32) -> Elem {
        a % self.base.p
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.base.p == 2 {
            return a ^ b;
        }
        match &self.tables {
            Some(Tables { add: Some(t), .. }) => t[a as usize * self.q as usize + b as usize],
            _ => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.neg[a as usize],
            None => self.neg_slow(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
                }
            }
            None => self.mul_slow(a, b),
        }
    }

    /// Inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.try_inv(a).expect("inverse of zero")
    }

    pub fn try_inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.inv[a as usize]),
            None => self.inv_slow(a),
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn add_slow(&self, mut a: Elem, mut b: Elem) -> Elem {
        let p = self.base.p;
        let mut out = 0;
        for &w in &self.pow_p {
            out += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
        }
        out
    }

    fn neg_slow(&self, mut a: Elem) -> Elem {
        let p = self.base.p;
        let mut out = 0;
        for &w in &self.pow_p {
            out += self.base.neg(a % p) * w;
            a /= p;
        }
        out
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let prod = poly::mul(&self.to_coeffs(a), &self.to_coeffs(b), &self.base);
        self.from_coeffs(&poly::rem(&prod, &self.modulus, &self.base))
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn inv_slow(&self, a: Elem) -> Option<Elem> {
        poly::inv_mod(&self.to_coeffs(a), &self.modulus, &self.base).map(|c| self.from_coeffs(&c))
    }
}

/// Exhaustive trial division by every monic polynomial of degree up to h/2.
fn is_irreducible(m: &[u32], fp: &PrimeField) -> bool {
    let h = m.len() - 1;
    let p = fp.p() as u64;
    for d in 1..=h / 2 {
        let count = p.pow(d as u32);
        for v in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = v;
            for _ in 0..d {
                g.push((x % p) as u32);
                x /= p;
            }
            g.push(1);
            if poly::rem(m, &g, fp).is_empty() {
                return false;
            }
        }
    }
    true
}

fn lowest_irreducible(fp: &PrimeField, h: u32) -> Vec<u32> {
    let p = fp.p() as u64;
    let count = p.pow(h);
    for v in 0..count {
        let mut m = Vec::with_capacity(h as usize + 1);
        let mut x = v;
        for _ in 0..h {
            m.push((x % p) as u32);
            x /= p;
        }
        m.push(1);
        if is_irreducible(&m, fp) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Dense matrix over F_p, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixModP {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl MatrixModP {
    pub fn new(field: PrimeField, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MalformedMatrix {
                rows,
                cols,
                len: entries.len(),
            });
        }
        if let Some(&value) = entries.iter().find(|&&e| e >= field.p()) {
            return Err(Error::NonCanonicalEntry {
                value,
                p: field.p(),
            });
        }
        Ok(Self {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    pub fn mul_vec(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(0, |acc, c| f.add(acc, f.mul(self.get(r, c), x[c])))
            })
            .collect()
    }

    /// Basis of the right null space. One vector per free column: that
    /// column set to 1, the other free columns 0, pivots solved from the
    /// reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let f = &self.field;
        let mut m = self.entries.clone();
        let cols = self.cols;
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..cols {
                    m.swap(pr * cols + c, row * cols + c);
                }
            }
            let inv = f.inv(m[row * cols + col]).expect("pivot is nonzero");
            for c in 0..cols {
                m[row * cols + c] = f.mul(m[row * cols + c], inv);
            }
            for r in 0..self.rows {
                let k = m[r * cols + col];
                if r == row || k == 0 {
                    continue;
                }
                for c in 0..cols {
                    let v = f.mul(k, m[row * cols + c]);
                    m[r * cols + c] = f.sub(m[r * cols + c], v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u32; cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m[r * cols + fc]);
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(prime_power(125), Some((5, 3)));
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn gf2_identity() {
        let f = Field::new(2, 1, None).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
    }

    #[test]
    fn lowest_moduli() {
        assert_eq!(Field::new(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::new(2, 3, None).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(2, 5, None).unwrap().modulus(), &[1, 0, 1, 0, 0, 1]);
        // x^2 + 1 is reducible mod 5 (2^2 = -1), x^2 + 2 is not
        assert_eq!(Field::new(5, 2, None).unwrap().modulus(), &[2, 0, 1]);
        assert_eq!(Field::new(7, 1, None).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(3, 0, None).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus(_))
        ));
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 1, 2])),
            Err(Error::MalformedModulus { .. })
        ));
        assert!(Field::new(2, 3, Some(&[1, 0, 1, 1])).is_ok());
    }

    #[test]
    fn gf125_lagrange() {
        let f = Field::new(5, 3, None).unwrap();
        assert_eq!(f.q(), 125);
        for x in 1..125 {
            assert_eq!(f.pow(x, 124), 1);
        }
    }

    #[test]
    fn gf32_inverse_table_exhaustive() {
        let f = Field::new(2, 5, None).unwrap();
        for x in 1..32 {
            let y = f.inv(x);
            assert_eq!(f.mul(x, y), 1, "x = {x}");
            // table path agrees with extended Euclid
            assert_eq!(Some(y), f.inv_slow(x));
        }
        assert_eq!(f.try_inv(0), None);
    }

    #[test]
    fn table_paths_agree_with_polynomial_arithmetic() {
        for (p, h) in [(3, 2), (5, 3), (7, 2), (2, 6)] {
            let f = Field::new(p, h, None).unwrap();
            for a in f.elements() {
                assert_eq!(f.neg(a), f.neg_slow(a));
                for b in f.elements().step_by(3) {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                    assert_eq!(f.add(a, b), f.add_slow(a, b));
                }
            }
        }
    }

    #[test]
    fn large_field_falls_back_to_polynomials() {
        // 3^11 = 177147 > table limit
        let f = Field::new(3, 11, None).unwrap();
        assert!(f.tables.is_none());
        for a in [1u32, 2, 5, 1000, 177146] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
        let (a, b) = (12345, 54321);
        assert_eq!(f.pow(f.add(a, b), 3), f.add(f.pow(a, 3), f.pow(b, 3)));
    }

    #[test]
    fn coefficient_encoding_roundtrip() {
        let f = Field::new(5, 3, None).unwrap();
        assert_eq!(f.to_coeffs(38), vec![3, 2, 1]);
        for a in f.elements() {
            assert_eq!(f.from_coeffs(&f.to_coeffs(a)), a);
        }
    }

    #[test]
    fn prime_field_ops() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.inv(3), Some(5));
        assert_eq!(f.inv(0), None);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.reduce(-1), 6);
        assert_eq!(f.pow(3, 6), 1);
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn nullspace_of_single_equation() {
        let f5 = PrimeField::new(5).unwrap();
        let m = MatrixModP::new(f5, 1, 2, vec![1, 1]).unwrap();
        assert_eq!(m.nullspace(), vec![vec![4, 1]]);
    }

    #[test]
    fn nullspace_without_equations() {
        let f3 = PrimeField::new(3).unwrap();
        let m = MatrixModP::new(f3, 0, 3, vec![]).unwrap();
        assert_eq!(m.nullspace(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn nullspace_rank_two_against_enumeration() {
        let f7 = PrimeField::new(7).unwrap();
        let m = MatrixModP::new(f7, 2, 4, vec![1, 2, 3, 4, 0, 1, 5, 6]).unwrap();
        let basis = m.nullspace();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
        let mut kernel = 0;
        for code in 0..7u32.pow(4) {
            let x: Vec<u32> = (0..4).map(|i| code / 7u32.pow(i) % 7).collect();
            if m.mul_vec(&x).iter().all(|&e| e == 0) {
                kernel += 1;
            }
        }
        assert_eq!(kernel, 49);
    }

    #[test]
    fn malformed_matrices() {
        let f = PrimeField::new(3).unwrap();
        assert!(matches!(
            MatrixModP::new(f, 2, 2, vec![0; 3]),
            Err(Error::MalformedMatrix { .. })
        ));
        assert!(matches!(
            MatrixModP::new(f, 1, 1, vec![3]),
            Err(Error::NonCanonicalEntry { .. })
        ));
    }
}
