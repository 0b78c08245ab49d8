//! Dense univariate polynomials over ℤ and ℚ, lowest degree first.
//!
//! Only the handful of operations the cyclotomic field needs: exact division
//! by monic integer polynomials and reduction modulo a monic modulus. The
//! extended Euclidean algorithm over ℚ[x] is kept for tests.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) fn trim_int(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

#[cfg(test)]
pub(crate) fn trim_rat(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

#[cfg(test)]
pub(crate) fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_int(&mut out);
    out
}

/// Divides `num` by the monic polynomial `den`, returning `None` when the
/// division leaves a remainder.
pub(crate) fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    debug_assert!(den.last().is_some_and(One::is_one));
    let mut rem: Vec<BigInt> = num.to_vec();
    trim_int(&mut rem);
    if rem.len() < den.len() {
        return if rem.is_empty() { Some(Vec::new()) } else { None };
    }
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for top in (dd..rem.len()).rev() {
        let c = core::mem::take(&mut rem[top]);
        if c.is_zero() {
            continue;
        }
        for (i, d) in den[..dd].iter().enumerate() {
            rem[top - dd + i] -= &c * d;
        }
        quot[top - dd] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim_int(&mut quot);
    Some(quot)
}

/// Integer numerators over the lcm of the denominators.
pub(crate) fn to_integral(p: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    use num_integer::Integer;
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

/// Integer version of [`reduce_monic`].
pub(crate) fn reduce_monic_int(buf: &mut Vec<BigInt>, modulus: &[BigInt]) {
    let d = modulus.len() - 1;
    if buf.len() > d {
        for top in (d..buf.len()).rev() {
            let c = core::mem::take(&mut buf[top]);
            if c.is_zero() {
                continue;
            }
            for (i, m) in modulus[..d].iter().enumerate() {
                if !m.is_zero() {
                    buf[top - d + i] -= &c * m;
                }
            }
        }
    }
    buf.resize(d, BigInt::zero());
}

/// `a·b mod modulus` for integer polynomials of length `deg(modulus)`.
pub(crate) fn mul_reduce_int(a: &[BigInt], b: &[BigInt], modulus: &[BigInt]) -> Vec<BigInt> {
    let d = modulus.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let mut buf = vec![BigInt::zero(); 2 * d - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                buf[i + j] += x * y;
            }
        }
    }
    reduce_monic_int(&mut buf, modulus);
    buf
}

/// Reduces `buf` modulo the monic integer polynomial `modulus` in place and
/// truncates it to `deg(modulus)` coefficients.
pub(crate) fn reduce_monic(buf: &mut Vec<BigRational>, modulus: &[BigInt]) {
    let d = modulus.len() - 1;
    if buf.len() > d {
        for top in (d..buf.len()).rev() {
            let c = core::mem::take(&mut buf[top]);
            if c.is_zero() {
                continue;
            }
            for (i, m) in modulus[..d].iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                buf[top - d + i] -= &c * BigRational::from_integer(m.clone());
            }
        }
    }
    buf.resize(d, BigRational::zero());
}

#[cfg(test)]
fn sub_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(x - y);
    }
    trim_rat(&mut out);
    out
}

#[cfg(test)]
fn mul_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_rat(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero and trimmed.
#[cfg(test)]
fn divrem_rat(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim_rat(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for top in (db..rem.len()).rev() {
        let c = core::mem::take(&mut rem[top]);
        if c.is_zero() {
            continue;
        }
        let q = c * &lead_inv;
        for (i, y) in b[..db].iter().enumerate() {
            rem[top - db + i] -= &q * y;
        }
        quot[top - db] = q;
    }
    trim_rat(&mut quot);
    trim_rat(&mut rem);
    (quot, rem)
}

/// Inverse of `a` modulo `modulus` in ℚ[x], if `gcd(a, modulus) = 1`.
/// Kept as an independent check on the norm-based inverse.
#[cfg(test)]
pub(crate) fn inverse_mod(a: &[BigRational], modulus: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = modulus.to_vec();
    let mut r1 = a.to_vec();
    trim_rat(&mut r0);
    trim_rat(&mut r1);
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem_rat(&r0, &r1);
        let s = sub_rat(&s0, &mul_rat(&q, &s1));
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let mut inv: Vec<BigRational> = s0.into_iter().map(|x| x * &c).collect();
    let (_, rem) = divrem_rat(&inv, modulus);
    inv = rem;
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rats(c: &[i64]) -> Vec<BigRational> {
        c.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn exact_division() {
        // (x^2 - 1) / (x - 1) = x + 1
        assert_eq!(exact_div_monic(&ints(&[-1, 0, 1]), &ints(&[-1, 1])), Some(ints(&[1, 1])));
        assert_eq!(exact_div_monic(&ints(&[1, 0, 1]), &ints(&[-1, 1])), None);
    }

    #[test]
    fn inverse_modulo_x2_plus_1() {
        // (1 + x)^{-1} = (1 - x)/2 mod x^2 + 1
        let inv = inverse_mod(&rats(&[1, 1]), &rats(&[1, 0, 1])).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(inv, vec![half.clone(), -half]);
    }

    #[test]
    fn non_coprime_has_no_inverse() {
        assert!(inverse_mod(&rats(&[-1, 1]), &rats(&[-1, 0, 1])).is_none());
    }
}
