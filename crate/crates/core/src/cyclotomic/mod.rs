//! Exact arithmetic in cyclotomic fields ℚ(ζ_N).
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` reduced
//! modulo the cyclotomic polynomial Φ_N, so two elements of the same
//! conductor are equal iff their coefficient vectors are equal. Mixed
//! conductor operations lift both operands to the lcm of the conductors.

mod literal;
pub(crate) mod poly;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use literal::{parse_literal, LiteralError};

/// Exact rational number.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CyclotomicError {
    #[error("conductor must be a positive integer")]
    ZeroConductor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {from} does not divide {to}")]
    IncompatibleConductor { from: u32, to: u32 },
}

/// The N-th cyclotomic polynomial Φ_N with integer coefficients,
/// lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicPolynomial {
    conductor: u32,
    coefficients: Vec<BigInt>,
}

impl CyclotomicPolynomial {
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// φ(N), the degree of Φ_N.
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }
}

/// Positive divisors of `n` in ascending order.
pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn x_pow_minus_one(n: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    p
}

/// Computes Φ_N by exact division of x^N − 1 by Φ_d for every proper divisor d.
pub fn cyclotomic_polynomial(n: u32) -> Result<CyclotomicPolynomial, CyclotomicError> {
    if n == 0 {
        return Err(CyclotomicError::ZeroConductor);
    }
    let mut known: BTreeMap<u32, Vec<BigInt>> = BTreeMap::new();
    let divs = divisors(n);
    for &d in &divs {
        let mut p = x_pow_minus_one(d);
        for &e in divs.iter().take_while(|&&e| e < d) {
            if d % e == 0 {
                p = poly::exact_div_monic(&p, &known[&e]).expect("cyclotomic factor divides x^d - 1");
            }
        }
        known.insert(d, p);
    }
    Ok(CyclotomicPolynomial { conductor: n, coefficients: known.remove(&n).expect("n divides itself") })
}

/// An element of ℚ(ζ_N) in reduced power-basis form.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicPolynomial>,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    fn field(n: u32) -> Result<Arc<CyclotomicPolynomial>, CyclotomicError> {
        cyclotomic_polynomial(n).map(Arc::new)
    }

    /// Builds the canonical element from an unreduced coefficient buffer
    /// indexed by exponent.
    fn from_buffer(field: Arc<CyclotomicPolynomial>, mut buf: Vec<Rational>) -> Self {
        poly::reduce_monic(&mut buf, &field.coefficients);
        CyclotomicNumber { field, coeffs: buf }
    }

    /// Accumulates integer numerators over a common denominator, so long
    /// term lists (character sums) avoid a gcd per addition.
    fn from_terms_in(field: Arc<CyclotomicPolynomial>, terms: &[(Rational, i64)]) -> Self {
        let n = field.conductor as i64;
        let mut den = BigInt::one();
        for (c, _) in terms {
            if !c.denom().is_one() && !(&den % c.denom()).is_zero() {
                den = den.lcm(c.denom());
            }
        }
        let mut buf = vec![BigInt::zero(); n as usize];
        for (c, e) in terms {
            if c.is_zero() {
                continue;
            }
            let slot = &mut buf[e.rem_euclid(n) as usize];
            if c.denom() == &den {
                *slot += c.numer();
            } else {
                *slot += c.numer() * (&den / c.denom());
            }
        }
        poly::reduce_monic_int(&mut buf, &field.coefficients);
        let coeffs = buf
            .into_iter()
            .map(|x| if den.is_one() { Rational::from_integer(x) } else { Rational::new(x, den.clone()) })
            .collect();
        CyclotomicNumber { field, coeffs }
    }

    /// Canonical representative of Σ c·ζ_N^e. Exponents are taken mod N.
    pub fn make(n: u32, terms: &[(Rational, i64)]) -> Result<Self, CyclotomicError> {
        Ok(Self::from_terms_in(Self::field(n)?, terms))
    }

    /// Σ c·ζ_N^e in the field of `self` (exponents mod N); avoids
    /// recomputing Φ_N in tight loops.
    pub fn same_field(&self, terms: &[(Rational, i64)]) -> Self {
        Self::from_terms_in(self.field.clone(), terms)
    }

    /// `(1/den)·Σ c·ζ_N^e` for integer `c`, in the field of `self`.
    pub(crate) fn same_field_integral<'a>(&self, den: &BigInt, terms: impl Iterator<Item = (&'a BigInt, i64)>) -> Self {
        let n = self.field.conductor as i64;
        let mut buf = vec![BigInt::zero(); n as usize];
        for (c, e) in terms {
            buf[e.rem_euclid(n) as usize] += c;
        }
        poly::reduce_monic_int(&mut buf, &self.field.coefficients);
        let coeffs = buf.into_iter().map(|x| Rational::new(x, den.clone())).collect();
        CyclotomicNumber { field: self.field.clone(), coeffs }
    }

    pub fn zero(n: u32) -> Result<Self, CyclotomicError> {
        Self::make(n, &[])
    }

    pub fn one(n: u32) -> Result<Self, CyclotomicError> {
        Self::make(n, &[(Rational::one(), 0)])
    }

    /// ζ_N^k.
    pub fn zeta(n: u32, k: i64) -> Result<Self, CyclotomicError> {
        Self::make(n, &[(Rational::one(), k)])
    }

    /// A rational number, stored at conductor 1.
    pub fn from_rational(q: Rational) -> Self {
        let field = Self::field(1).expect("conductor 1");
        CyclotomicNumber { field, coeffs: vec![q] }
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(k.into()))
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    /// Power-basis coefficients, exactly φ(N) of them.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn polynomial(&self) -> &CyclotomicPolynomial {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value, if every non-constant coefficient vanishes.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Same element represented at conductor `l` via ζ_N = ζ_L^{L/N}.
    pub fn lift(&self, l: u32) -> Result<Self, CyclotomicError> {
        if l == 0 {
            return Err(CyclotomicError::ZeroConductor);
        }
        if !l.is_multiple_of(self.conductor()) {
            return Err(CyclotomicError::IncompatibleConductor { from: self.conductor(), to: l });
        }
        if l == self.conductor() {
            return Ok(self.clone());
        }
        Ok(self.lift_into(&Self::field(l)?))
    }

    fn lift_into(&self, target: &Arc<CyclotomicPolynomial>) -> Self {
        if Arc::ptr_eq(target, &self.field) || target.conductor == self.conductor() {
            return CyclotomicNumber { field: target.clone(), coeffs: self.coeffs.clone() };
        }
        let step = (target.conductor / self.conductor()) as usize;
        let mut buf = vec![Rational::zero(); target.conductor as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            buf[k * step] = c.clone();
        }
        Self::from_buffer(target.clone(), buf)
    }

    /// Lifts both operands to a common field, reusing an existing field
    /// polynomial when one conductor divides the other.
    fn align(a: &Self, b: &Self) -> (Arc<CyclotomicPolynomial>, Self, Self) {
        let (na, nb) = (a.conductor(), b.conductor());
        let field = if na == nb || nb % na == 0 {
            b.field.clone()
        } else if na % nb == 0 {
            a.field.clone()
        } else {
            Self::field(na.lcm(&nb)).expect("lcm of positive conductors")
        };
        let a2 = a.lift_into(&field);
        let b2 = b.lift_into(&field);
        (field, a2, b2)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CyclotomicNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplies by ζ_N^k without leaving the current field.
    pub fn mul_zeta_power(&self, k: i64) -> Self {
        let n = self.conductor() as i64;
        let mut buf = vec![Rational::zero(); n as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            buf[(e as i64 + k).rem_euclid(n) as usize] += c;
        }
        Self::from_buffer(self.field.clone(), buf)
    }

    /// Multiplicative inverse `Π_{σ≠1} σ(a) / N(a)`, the product running over
    /// the nontrivial automorphisms ζ ↦ ζ^k, gcd(k, N) = 1.
    pub fn inv(&self) -> Result<Self, CyclotomicError> {
        if self.is_zero() {
            return Err(CyclotomicError::DivisionByZero);
        }
        let n = self.conductor();
        let modulus = &self.field.coefficients;
        let (a, den) = poly::to_integral(&self.coeffs);
        let mut cofactor = vec![BigInt::zero(); a.len()];
        cofactor[0] = BigInt::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                let mut buf = vec![BigInt::zero(); n as usize];
                for (e, c) in a.iter().enumerate() {
                    buf[e * k as usize % n as usize] = c.clone();
                }
                poly::reduce_monic_int(&mut buf, modulus);
                cofactor = poly::mul_reduce_int(&cofactor, &buf, modulus);
            }
        }
        let norm = poly::mul_reduce_int(&a, &cofactor, modulus);
        debug_assert!(norm[1..].iter().all(Zero::is_zero), "the norm is fixed by every automorphism");
        let coeffs = cofactor.into_iter().map(|c| Rational::new(c * &den, norm[0].clone())).collect();
        Ok(CyclotomicNumber { field: self.field.clone(), coeffs })
    }

    /// Image under the automorphism ζ ↦ ζ^k. `k` must be coprime to N.
    pub fn galois(&self, k: u32) -> Self {
        let n = self.conductor() as usize;
        debug_assert_eq!((k as usize).gcd(&n), 1);
        let mut buf = vec![Rational::zero(); n];
        for (e, c) in self.coeffs.iter().enumerate() {
            buf[e * k as usize % n] = c.clone();
        }
        Self::from_buffer(self.field.clone(), buf)
    }

    /// Complex conjugation, the automorphism ζ ↦ ζ^{N−1}.
    pub fn conjugate(&self) -> Self {
        let n = self.conductor();
        if n <= 2 {
            return self.clone();
        }
        self.galois(n - 1)
    }

    /// Renders the element in the literal grammar with `z = ζ_N`.
    pub fn to_literal(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            match (k, mag.is_one()) {
                (0, _) => write!(out, "{mag}").unwrap(),
                (1, true) => out.push('z'),
                (_, true) => write!(out, "z^{k}").unwrap(),
                (_, false) => write!(out, "{mag}*z^{k}").unwrap(),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = Self::align(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [N={}]", self.to_literal(), self.conductor())
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn add(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        if self.conductor() == rhs.conductor() {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
            return CyclotomicNumber { field: self.field.clone(), coeffs };
        }
        let (_, a, b) = CyclotomicNumber::align(self, rhs);
        &a + &b
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn sub(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn mul(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
        if self.conductor() != rhs.conductor() {
            let (_, a, b) = CyclotomicNumber::align(self, rhs);
            return &a * &b;
        }
        let (a, da) = poly::to_integral(&self.coeffs);
        let (b, db) = poly::to_integral(&rhs.coeffs);
        let den = da * db;
        let coeffs = poly::mul_reduce_int(&a, &b, &self.field.coefficients)
            .into_iter()
            .map(|c| Rational::new(c, den.clone()))
            .collect();
        CyclotomicNumber { field: self.field.clone(), coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}
