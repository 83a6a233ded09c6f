//! Integer certificates for the root-of-unity constraints on a 4-net's
//! cross-ratio: the polynomials `f = (X^N - 1)/(X - 1)` and
//! `g = ((X - 1)^N - 1)/X`, their resultant, its prime divisors and the
//! `3^φ(N)` bound.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::field::prime_power;

/// Default trial-division limit for factoring resultants.
pub const DEFAULT_FACTOR_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("Euler's function is undefined at 0")]
    PhiOfZero,
    #[error("N = {0} must be even and at least 2")]
    OddExponent(u64),
    #[error("resultant of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("net order must be at least {min}, got {got}")]
    OrderTooSmall { min: u64, got: u64 },
    #[error("factorization incomplete below the trial-division cap {0}")]
    PartialFactorization(u64),
    #[error("the theorem requires characteristic different from 3")]
    CharacteristicThree,
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
}

/// Polynomial over the integers, coefficients low-to-high with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "IntPoly[{}]", c.join(", "))
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn monomial(c: i64, deg: usize) -> Self {
        let mut v = vec![BigInt::zero(); deg + 1];
        v[deg] = BigInt::from(c);
        IntPoly::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
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

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        (0..e).fold(IntPoly::from_i64s(&[1]), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        let dd = d.degree().expect("nonzero divisor");
        assert!(d.leading().is_some_and(One::is_one), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPoly::default(), self.clone());
        }
        let mut q = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let c = rem[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        (IntPoly::new(q), IntPoly::new(rem))
    }

    pub fn div_exact(&self, d: &IntPoly) -> Result<IntPoly, CyclotomicError> {
        let (q, r) = self.div_rem_monic(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(CyclotomicError::InexactDivision)
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

/// Euler's totient by trial-division factorization.
pub fn euler_phi(n: u64) -> Result<u64, CyclotomicError> {
    if n == 0 {
        return Err(CyclotomicError::PhiOfZero);
    }
    Ok(crate::field::prime_divisors(n).iter().fold(n, |acc, &p| acc / p * (p - 1)))
}

/// `(f, g, divided)`; when `6 | N` the common factor `X^2 - X + 1` is removed
/// from both and `divided` is set.
pub fn stipins_polynomials(n_exp: u64) -> Result<(IntPoly, IntPoly, bool), CyclotomicError> {
    if n_exp < 2 || n_exp % 2 == 1 {
        return Err(CyclotomicError::OddExponent(n_exp));
    }
    let n = n_exp as usize;
    let f = IntPoly::new(vec![BigInt::one(); n]);
    // (X-1)^N - 1 has zero constant term for even N.
    let full = IntPoly::from_i64s(&[-1, 1]).pow(n_exp as u32).sub(&IntPoly::from_i64s(&[1]));
    let g = full.div_exact(&IntPoly::from_i64s(&[0, 1]))?;
    if n_exp.is_multiple_of(6) {
        let h = IntPoly::from_i64s(&[1, -1, 1]);
        Ok((f.div_exact(&h)?, g.div_exact(&h)?, true))
    } else {
        Ok((f, g, false))
    }
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n): n shifted rows of
/// f's coefficients followed by m shifted rows of g's, highest degree first.
pub fn sylvester_matrix(f: &IntPoly, g: &IntPoly) -> Vec<Vec<BigInt>> {
    let m = f.degree().expect("nonzero");
    let n = g.degree().expect("nonzero");
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (p, count) in [(f, n), (g, m)] {
        let hi: Vec<BigInt> = p.coeffs().iter().rev().cloned().collect();
        for shift in 0..count {
            let mut row = vec![BigInt::zero(); size];
            for (j, c) in hi.iter().enumerate() {
                row[shift + j] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant by Bareiss fraction-free elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant via the Sylvester determinant.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt, CyclotomicError> {
    if f.is_zero() || g.is_zero() {
        return Err(CyclotomicError::ZeroPolynomial);
    }
    Ok(bareiss_determinant(sylvester_matrix(f, g)))
}

fn as_decimal<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn as_decimal_unsigned<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn as_decimal_list<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn as_optional_decimal<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// Trial-division factorization with a divisor cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub primes: Vec<BigUint>,
    /// Unfactored cofactor > 1 left when the cap was reached.
    pub cofactor: Option<BigUint>,
}

pub fn factor_trial(n: &BigUint, cap: u64) -> Factorization {
    let mut m = n.clone();
    let mut primes = Vec::new();
    if m.is_zero() {
        return Factorization { primes, cofactor: None };
    }
    let mut d: u64 = 2;
    loop {
        if let Some(small) = m.to_u64() {
            return finish_u64(small, d, cap, primes);
        }
        if d > cap {
            return Factorization { primes, cofactor: Some(m) };
        }
        if (&m % d).is_zero() {
            primes.push(BigUint::from(d));
            while (&m % d).is_zero() {
                m /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
}

fn finish_u64(mut m: u64, mut d: u64, cap: u64, mut primes: Vec<BigUint>) -> Factorization {
    while m > 1 {
        if (d as u128) * (d as u128) > m as u128 {
            primes.push(BigUint::from(m));
            return Factorization { primes, cofactor: None };
        }
        if d > cap {
            return Factorization { primes, cofactor: Some(BigUint::from(m)) };
        }
        if m.is_multiple_of(d) {
            primes.push(BigUint::from(d));
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    Factorization { primes, cofactor: None }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: u64,
    #[serde(rename = "N")]
    pub exponent: u64,
    pub divided_by_eq9: bool,
    #[serde(serialize_with = "as_decimal")]
    pub resultant: BigInt,
    #[serde(serialize_with = "as_decimal_unsigned")]
    pub abs_resultant: BigUint,
    #[serde(serialize_with = "as_decimal_list")]
    pub prime_divisors: Vec<BigUint>,
    pub complete_factorization: bool,
    #[serde(serialize_with = "as_optional_decimal")]
    pub unfactored_cofactor: Option<BigUint>,
    pub phi: u64,
    #[serde(serialize_with = "as_decimal_unsigned")]
    pub bound: BigUint,
    pub verdict: bool,
}

/// Resultant certificate for nets of order `n`.
pub fn bound_report(n: u64, cap: u64, strict: bool) -> Result<BoundReport, CyclotomicError> {
    if n < 2 {
        return Err(CyclotomicError::OrderTooSmall { min: 2, got: n });
    }
    let exponent = n * (n - 1);
    let (f, g, divided) = stipins_polynomials(exponent)?;
    let res = resultant(&f, &g)?;
    let abs = res.magnitude().clone();
    let fac = factor_trial(&abs, cap);
    if strict && fac.cofactor.is_some() {
        return Err(CyclotomicError::PartialFactorization(cap));
    }
    let phi = euler_phi(exponent)?;
    let bound = BigUint::from(3u32).pow(phi as u32);
    let verdict = fac.primes.iter().all(|p| p <= &bound);
    Ok(BoundReport {
        n,
        exponent,
        divided_by_eq9: divided,
        resultant: res,
        abs_resultant: abs,
        prime_divisors: fac.primes,
        complete_factorization: fac.cofactor.is_none(),
        unfactored_cofactor: fac.cofactor,
        phi,
        bound,
        verdict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GcdVerdict {
    /// No 4-net of this order embeds in `PG(2, q)`.
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdCertificate {
    pub n: u64,
    pub q: u64,
    pub p: u64,
    pub gcd: u64,
    pub verdict: GcdVerdict,
}

/// Refutes 4-nets of order `n` in `PG(2, q)` when `gcd(n(n-1), q-1) <= 2`, `p != 3`.
pub fn gcd_certificate(n: u64, q: u64) -> Result<GcdCertificate, CyclotomicError> {
    if n < 3 {
        return Err(CyclotomicError::OrderTooSmall { min: 3, got: n });
    }
    let (p, _) = prime_power(q)?;
    if p == 3 {
        return Err(CyclotomicError::CharacteristicThree);
    }
    let gcd = (n * (n - 1)).gcd(&(q - 1));
    let verdict = if gcd <= 2 { GcdVerdict::Refuted } else { GcdVerdict::Inconclusive };
    Ok(GcdCertificate { n, q, p, gcd, verdict })
}

/// Sign of a big integer as -1, 0 or 1.
pub fn signum(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
