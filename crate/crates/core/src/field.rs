//! Exact arithmetic in finite fields `F_{p^r}`.
//!
//! A [`Field`] is a cheap-to-clone handle on precomputed tables (Zech-style
//! log/exp tables and, for small orders, an addition table). Elements are
//! [`FieldElement`] values: the integer `c_0 + c_1 p + ... + c_{r-1} p^{r-1}`
//! encoding the fully reduced polynomial representative
//! `c_0 + c_1 X + ... + c_{r-1} X^{r-1}` modulo the field's defining
//! polynomial. Because the representative is unique, equality and hashing are
//! structural and the encoding doubles as the enumeration order.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Largest field order for which a full addition table is kept.
const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{r} exceeds the supported maximum {max}")]
    TooLarge { p: u64, r: u32, max: u64 },
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: u32 },
    #[error("modulus coefficient {0} is not reduced modulo p")]
    UnreducedCoefficient(u64),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("coefficient vector does not describe an element of F_{p}^{r}")]
    BadElement { p: u64, r: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
}

/// An element of some [`Field`]; only meaningful together with its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The integer encoding of the element (its index in enumeration order).
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Serialized field descriptor: `{"p": .., "r": .., "modulus": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub r: u32,
    pub modulus: Vec<u64>,
}

struct Tables {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    // exp has length 2(q-1) so that log a + log b never needs reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
    pow_p: Vec<u32>,
}

/// A finite field `F_{p^r}` with a fixed defining polynomial.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.p == other.t.p && self.t.r == other.t.r && self.t.modulus == other.t.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.t.p, self.t.r, self.t.modulus)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q = p^h` into `(p, h)`.
pub fn prime_power(q: u64) -> Result<(u64, u32), FieldError> {
    let ps = prime_divisors(q);
    if q < 2 || ps.len() != 1 {
        return Err(FieldError::NotPrimePower(q));
    }
    let p = ps[0];
    let mut h = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        h += 1;
    }
    Ok((p, h))
}

/// Dense polynomials over the prime field `F_p`, low-to-high, trimmed.
mod fp_poly {
    pub type Poly = Vec<u64>;

    pub fn trim(a: &mut Poly) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    pub fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
        let n = a.len().max(b.len());
        let mut out: Poly = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(a: &Poly, b: &Poly, p: u64) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo a nonzero `m`.
    pub fn rem(a: &Poly, m: &Poly, p: u64) -> Poly {
        let mut a = a.clone();
        trim(&mut a);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while a.len() > dm {
            let da = a.len() - 1;
            let c = a[da] * lead_inv % p;
            if c != 0 {
                for (i, &mi) in m.iter().enumerate() {
                    let k = da - dm + i;
                    a[k] = (a[k] + p - c * mi % p) % p;
                }
            }
            a.pop();
            trim(&mut a);
        }
        a
    }

    pub fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
        let mut a = a.clone();
        let mut b = b.clone();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn mul_mod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
        rem(&mul(a, b, p), m, p)
    }

    /// `x^(p^k) mod m`.
    pub fn x_pow_p_pow(k: u32, m: &Poly, p: u64) -> Poly {
        let mut acc = rem(&vec![0, 1], m, p);
        for _ in 0..k {
            acc = pow_poly_mod(&acc, p, m, p);
        }
        acc
    }

    pub fn pow_poly_mod(base: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
        let mut acc = rem(&vec![1], m, p);
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }

    /// Rabin's irreducibility test for a monic polynomial of degree >= 1.
    pub fn is_irreducible(m: &Poly, p: u64) -> bool {
        let r = (m.len() - 1) as u32;
        if r == 1 {
            return true;
        }
        let x = vec![0, 1];
        if sub(&x_pow_p_pow(r, m, p), &rem(&x, m, p), p) != Vec::<u64>::new() {
            return false;
        }
        for l in super::prime_divisors(r as u64) {
            let h = x_pow_p_pow(r / l as u32, m, p);
            let g = gcd(&sub(&h, &x, p), m, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

impl Field {
    /// Builds `F_{p^r}`. Without an explicit modulus, the monic irreducible
    /// polynomial whose low-to-high coefficient vector is lexicographically
    /// smallest is used (for `r = 1` that is `X`).
    pub fn new(p: u64, r: u32, modulus: Option<&[u64]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::CompositeCharacteristic(p));
        }
        if r == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u128).checked_pow(r).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(FieldError::TooLarge { p, r, max: MAX_FIELD_ORDER });
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != r as usize + 1 || m[r as usize] != 1 {
                    return Err(FieldError::BadModulus { expected: r });
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(FieldError::UnreducedCoefficient(c));
                }
                if !fp_poly::is_irreducible(&m.to_vec(), p) {
                    return Err(FieldError::ReducibleModulus(p));
                }
                m.to_vec()
            }
            None => smallest_irreducible(p, r),
        };
        Ok(Field { t: Arc::new(Tables::build(p, r, modulus)) })
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        Field::new(p, 1, None)
    }

    /// The field of order `q` with the canonical modulus.
    pub fn of_order(q: u64) -> Result<Field, FieldError> {
        let (p, r) = prime_power(q)?;
        Field::new(p, r, None)
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Field, FieldError> {
        Field::new(d.p, d.r, Some(&d.modulus))
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.t.p as u64,
            r: self.t.r,
            modulus: self.t.modulus.iter().map(|&c| c as u64).collect(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.t.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.t.r
    }

    pub fn order(&self) -> u64 {
        self.t.q as u64
    }

    pub fn modulus(&self) -> Vec<u64> {
        self.t.modulus.iter().map(|&c| c as u64).collect()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.t.p as i64;
        FieldElement(n.rem_euclid(p) as u32)
    }

    /// Element from its polynomial coefficients (low-to-high, at most `r`).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement, FieldError> {
        let p = self.t.p as u64;
        if coeffs.len() > self.t.r as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(FieldError::BadElement { p, r: self.t.r });
        }
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            v = v * p + c;
        }
        Ok(FieldElement(v as u32))
    }

    /// Element from its integer encoding.
    pub fn from_index(&self, index: u32) -> Option<FieldElement> {
        (index < self.t.q).then_some(FieldElement(index))
    }

    /// Coefficient vector of length `r`, low-to-high.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        let p = self.t.p;
        let mut v = a.0;
        (0..self.t.r)
            .map(|_| {
                let c = v % p;
                v /= p;
                c as u64
            })
            .collect()
    }

    /// The polynomial variable `X` (a root of the modulus).
    pub fn generator_x(&self) -> FieldElement {
        if self.t.r == 1 {
            FieldElement::ZERO
        } else {
            FieldElement(self.t.p)
        }
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.t.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let t = &*self.t;
        if t.r == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= t.p { s - t.p } else { s });
        }
        if let Some(tab) = &t.add {
            return FieldElement(tab[(a.0 * t.q + b.0) as usize]);
        }
        FieldElement(digit_add(a.0, b.0, t.p, t.r))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.t.neg[a.0 as usize])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.t;
        FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let t = &*self.t;
        let l = t.log[a.0 as usize];
        Ok(FieldElement(t.exp[((t.q - 1 - l) % (t.q - 1)) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.t;
        let m = (t.q - 1) as u64;
        let l = (t.log[a.0 as usize] as u64 * (e % m)) % m;
        FieldElement(t.exp[l as usize])
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.t.pow_p[a.0 as usize])
    }

    /// True iff `a` is a square; uses the Euler criterion for odd `p`.
    pub fn is_square(&self, a: FieldElement) -> bool {
        if a.is_zero() || self.t.p == 2 {
            return true;
        }
        self.pow(a, (self.order() - 1) / 2) == FieldElement::ONE
    }

    /// Smallest (in enumeration order) `ξ != 1` with `ξ^3 = 1`, if any.
    pub fn primitive_cube_root(&self) -> Option<FieldElement> {
        self.elements()
            .skip(2)
            .find(|&x| self.pow(x, 3) == FieldElement::ONE)
    }

    /// Elements of the subfield of order `p^h` (requires `h | r`), in enumeration order.
    pub fn subfield(&self, h: u32) -> Option<Vec<FieldElement>> {
        if h == 0 || !self.t.r.is_multiple_of(h) {
            return None;
        }
        let size = (self.t.p as u64).pow(h);
        Some(self.elements().filter(|&x| self.pow(x, size) == x).collect())
    }

    /// Human readable value: an integer for prime fields, otherwise the polynomial.
    pub fn display(&self, a: FieldElement) -> String {
        if self.t.r == 1 {
            return a.0.to_string();
        }
        let terms: Vec<String> = self
            .coeffs(a)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "X".to_string(),
                (1, c) => format!("{c}X"),
                (i, 1) => format!("X^{i}"),
                (i, c) => format!("{c}X^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

fn digit_add(mut a: u32, mut b: u32, p: u32, r: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    for _ in 0..r {
        let s = (a % p + b % p) % p;
        out += s * place;
        place *= p;
        a /= p;
        b /= p;
    }
    out
}

fn smallest_irreducible(p: u64, r: u32) -> Vec<u64> {
    if r == 1 {
        return vec![0, 1];
    }
    // Lexicographic on (c_0, c_1, ..., c_{r-1}): c_0 varies slowest.
    let total = p.pow(r);
    for code in 0..total {
        let mut digits = vec![0u64; r as usize];
        let mut v = code;
        for i in (0..r as usize).rev() {
            digits[i] = v % p;
            v /= p;
        }
        let mut m = digits;
        m.push(1);
        if m[0] != 0 && fp_poly::is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

impl Tables {
    fn build(p: u64, r: u32, modulus: Vec<u64>) -> Tables {
        let q = p.pow(r) as u32;
        let decode = |v: u32| -> Vec<u64> {
            let mut v = v as u64;
            let mut out = Vec::with_capacity(r as usize);
            for _ in 0..r {
                out.push(v % p);
                v /= p;
            }
            fp_poly::trim(&mut out);
            out
        };
        let encode = |c: &[u64]| -> u32 {
            let mut v = 0u64;
            for &x in c.iter().rev() {
                v = v * p + x;
            }
            v as u32
        };
        let slow_mul = |a: u32, b: u32| -> u32 {
            if r == 1 {
                return ((a as u64 * b as u64) % p) as u32;
            }
            encode(&fp_poly::mul_mod(&decode(a), &decode(b), &modulus, p))
        };
        let slow_pow = |a: u32, mut e: u64| -> u32 {
            let mut acc = 1u32;
            let mut b = a;
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, b);
                }
                b = slow_mul(b, b);
                e >>= 1;
            }
            acc
        };
        let order = (q - 1) as u64;
        let factors = prime_divisors(order);
        let g = (1..q)
            .find(|&g| {
                order == 1 || factors.iter().all(|&l| slow_pow(g, order / l) != 1)
            })
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * (q as usize - 1).max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..(q - 1) {
            exp[i as usize] = x;
            exp[(i + q - 1) as usize] = x;
            log[x as usize] = i;
            x = slow_mul(x, g);
        }
        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let c = decode(a);
                encode(&c.iter().map(|&x| (p - x) % p).collect::<Vec<_>>())
            })
            .collect();
        let (pi, ri) = (p as u32, r);
        let add = (r > 1 && q <= ADD_TABLE_LIMIT).then(|| {
            let mut tab = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    tab[(a * q + b) as usize] = digit_add(a, b, pi, ri);
                }
            }
            tab
        });
        let pow_p: Vec<u32> = (0..q).map(|a| if a == 0 { 0 } else { slow_pow(a, p) }).collect();
        Tables {
            p: pi,
            r,
            q,
            modulus: modulus.iter().map(|&c| c as u32).collect(),
            exp,
            log,
            neg,
            add,
            pow_p,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible(m: &[u64], p: u64) -> bool {
        // No monic factor of degree 1..=deg/2.
        let r = m.len() - 1;
        for d in 1..=r / 2 {
            for code in 0..p.pow(d as u32) {
                let mut f = Vec::new();
                let mut v = code;
                for _ in 0..d {
                    f.push(v % p);
                    v /= p;
                }
                f.push(1);
                if fp_poly::rem(&m.to_vec(), &f, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let f = Field::new(7, 1, None).unwrap();
        assert_eq!(f.modulus(), vec![0, 1]);
        assert_eq!(f.order(), 7);
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(Field::new(3, 2, None).unwrap().modulus(), vec![1, 0, 1]);
        assert_eq!(Field::new(2, 2, None).unwrap().modulus(), vec![1, 1, 1]);
        assert_eq!(Field::new(2, 3, None).unwrap().modulus(), vec![1, 0, 1, 1]);
        assert_eq!(Field::new(3, 3, None).unwrap().modulus(), vec![1, 0, 2, 1]);
    }

    #[test]
    fn rabin_matches_brute_force() {
        for &(p, r) in &[(2u64, 2u32), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 6)] {
            for code in 0..p.pow(r) {
                let mut m = Vec::new();
                let mut v = code;
                for _ in 0..r {
                    m.push(v % p);
                    v /= p;
                }
                m.push(1);
                assert_eq!(
                    fp_poly::is_irreducible(&m, p),
                    brute_irreducible(&m, p),
                    "p={p} m={m:?}"
                );
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), FieldError::CompositeCharacteristic(4));
        assert!(matches!(Field::new(2, 2, Some(&[1, 0, 1])), Err(FieldError::ReducibleModulus(2))));
        assert!(matches!(Field::new(2, 2, Some(&[1, 1])), Err(FieldError::BadModulus { .. })));
        assert!(matches!(Field::new(2, 21, None), Err(FieldError::TooLarge { .. })));
        assert!(matches!(Field::new(3, 0, None), Err(FieldError::ZeroDegree)));
    }

    #[test]
    fn inverses() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.inv(f.from_int(2)).unwrap(), f.from_int(4));
        assert_eq!(f.inv(f.one()).unwrap(), f.one());
        assert_eq!(f.inv(f.zero()), Err(FieldError::ZeroInverse));
        let f9 = Field::new(3, 2, None).unwrap();
        for a in f9.elements().skip(1) {
            assert_eq!(f9.mul(a, f9.inv(a).unwrap()), f9.one());
        }
    }

    #[test]
    fn squares() {
        let f7 = Field::prime(7).unwrap();
        assert!(f7.is_square(f7.from_int(-3)));
        let f5 = Field::prime(5).unwrap();
        assert!(!f5.is_square(f5.from_int(-3)));
        assert!(f5.is_square(f5.zero()));
        // Euler criterion against brute force.
        for f in [f5, f7, Field::new(3, 2, None).unwrap(), Field::new(2, 3, None).unwrap()] {
            let sq: Vec<_> = f.elements().map(|x| f.mul(x, x)).collect();
            for a in f.elements() {
                assert_eq!(f.is_square(a), sq.contains(&a));
            }
        }
    }

    #[test]
    fn cube_roots() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.primitive_cube_root(), Some(f7.from_int(2)));
        assert_eq!(Field::prime(5).unwrap().primitive_cube_root(), None);
        let f4 = Field::new(2, 2, None).unwrap();
        let w = f4.primitive_cube_root().unwrap();
        assert_eq!(w, f4.generator_x());
        assert_eq!(f4.pow(w, 3), f4.one());
        assert_ne!(w, f4.one());
        assert!(Field::new(3, 2, None).unwrap().primitive_cube_root().is_none());
    }

    #[test]
    fn lagrange_exhaustive() {
        for (p, r) in [(2, 1), (2, 7), (3, 4), (5, 3), (7, 2), (11, 1), (2, 5)] {
            let f = Field::new(p, r, None).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, f.order() - 1), f.one());
            }
        }
    }

    #[test]
    fn coefficients_roundtrip() {
        let f = Field::new(5, 3, None).unwrap();
        for a in f.elements() {
            let c = f.coeffs(a);
            assert_eq!(c.len(), 3);
            assert!(c.iter().all(|&x| x < 5));
            assert_eq!(f.from_coeffs(&c).unwrap(), a);
        }
        assert!(f.from_coeffs(&[5]).is_err());
    }

    #[test]
    fn subfields() {
        let f = Field::new(2, 6, None).unwrap();
        assert_eq!(f.subfield(2).unwrap().len(), 4);
        assert_eq!(f.subfield(3).unwrap().len(), 8);
        assert!(f.subfield(4).is_none());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(128).unwrap(), (2, 7));
        assert_eq!(prime_power(13).unwrap(), (13, 1));
        assert!(prime_power(12).is_err());
        assert!(prime_power(1).is_err());
    }
}
