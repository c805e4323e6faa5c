//! Real quadratic fields: fundamental unit via the continued fraction of
//! `sqrt(d)` or `(1 + sqrt(d))/2`, narrow class number via cycles of
//! reduced indefinite forms, wide class number and group structure.

use crate::arith::{factorize, isqrt_i64, squarefree_kernel};
use crate::genus::two_rank_discriminant;
use crate::imagquad::{AbelianGroupStructure, QuadraticForm};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashSet;

/// The field `Q(sqrt(d))` for squarefree `d > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealQuadraticField {
    pub d: u64,
    pub disc: i64,
}

impl RealQuadraticField {
    pub fn new(d: u64) -> Result<Self> {
        Ok(Self {
            d,
            disc: fundamental_discriminant_real(d)?,
        })
    }
}

/// Fundamental discriminant of `Q(sqrt(d))`, `d` squarefree and `> 1`.
pub fn fundamental_discriminant_real(d: u64) -> Result<i64> {
    if d <= 1 || d > i64::MAX as u64 / 4 {
        return Err(Error::BadRadicand(d as i64));
    }
    let (_, s) = squarefree_kernel(d as i128);
    if s != d as u128 {
        return Err(Error::NotSquarefree(d as i64));
    }
    Ok(if d % 4 == 1 { d as i64 } else { 4 * d as i64 })
}

/// The unit `(a + b sqrt(d)) / den` with `den` 1 or 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticUnit {
    pub a: BigInt,
    pub b: BigInt,
    pub den: u8,
    pub d: u64,
}

impl QuadraticUnit {
    /// Norm of the unit, +1 or -1.
    pub fn norm(&self) -> i8 {
        let den2 = BigInt::from(self.den as i64 * self.den as i64);
        let n = (&self.a * &self.a - BigInt::from(self.d) * &self.b * &self.b) / den2;
        if n == BigInt::one() {
            1
        } else {
            debug_assert_eq!(n, -BigInt::one());
            -1
        }
    }

    /// Product of two units of the same field, renormalized to den 1 or 2.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let d = BigInt::from(self.d);
        let a = &self.a * &other.a + &d * &self.b * &other.b;
        let b = &self.a * &other.b + &self.b * &other.a;
        let den = (self.den * other.den) as i64;
        normalize_unit(a, b, den, self.d)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QuadraticUnit {
            a: BigInt::one(),
            b: BigInt::zero(),
            den: 1,
            d: self.d,
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl std::fmt::Display for QuadraticUnit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        } else {
            write!(f, "({} + {}*sqrt({}))/2", self.a, self.b, self.d)
        }
    }
}

fn normalize_unit(mut a: BigInt, mut b: BigInt, den: i64, d: u64) -> QuadraticUnit {
    let mut den = BigInt::from(den);
    // Clear common factors of a, b and den down to den in {1, 2}.
    loop {
        let g = a.clone().gcd_big(&b).gcd_big(&den);
        if g <= BigInt::one() {
            break;
        }
        a = a / &g;
        b = b / &g;
        den = den / &g;
    }
    let two = BigInt::from(2);
    while den.clone() % &two == BigInt::zero() && den > two {
        // Must divide out: a and b share the factor or the value is not an
        // algebraic integer; callers only produce genuine units.
        assert!(
            (a.clone() % &two).is_zero() && (b.clone() % &two).is_zero(),
            "unit denominator does not normalize"
        );
        a = a / &two;
        b = b / &two;
        den = den / &two;
    }
    let den_u = if den == BigInt::one() {
        1u8
    } else {
        assert_eq!(den, two, "unit denominator does not normalize");
        assert_eq!(d % 4, 1);
        2u8
    };
    QuadraticUnit { a, b, den: den_u, d }
}

trait GcdBig {
    fn gcd_big(self, other: &BigInt) -> BigInt;
}
impl GcdBig for BigInt {
    fn gcd_big(self, other: &BigInt) -> BigInt {
        num_integer::Integer::gcd(&self, other)
    }
}

/// One step of the continued fraction state `(P + sqrt(d)) / Q`.
fn cf_step(d: u64, s: u64, p: u64, q: u64) -> (u64, u64, u64) {
    let a = (p + s) / q;
    let p2 = a * q - p;
    let q2 = (d - p2 * p2) / q;
    (a, p2, q2)
}

/// Continued fraction period length of `sqrt(d)` (d != 1 mod 4) or
/// `(1 + sqrt(d))/2` (d = 1 mod 4); the unit norm is `(-1)^period`.
fn cf_period(d: u64) -> u64 {
    let s = isqrt_i64(d as i64) as u64;
    let (p0, q0) = if d % 4 == 1 { (1, 2) } else { (0, 1) };
    let (_, mut p, mut q) = cf_step(d, s, p0, q0);
    let (p1, q1) = (p, q);
    let mut len = 0u64;
    loop {
        let (_, p2, q2) = cf_step(d, s, p, q);
        len += 1;
        p = p2;
        q = q2;
        if (p, q) == (p1, q1) {
            return len;
        }
    }
}

/// Norm of the fundamental unit, computed from the period parity alone.
pub fn unit_norm(d: u64) -> Result<i8> {
    fundamental_discriminant_real(d)?;
    Ok(if cf_period(d) % 2 == 1 { -1 } else { 1 })
}

/// Fundamental unit `epsilon > 1` of the maximal order of `Q(sqrt(d))`.
///
/// The continued fraction of `(1 + sqrt(d))/2` (or `sqrt(d)`) becomes
/// purely periodic after one step; accumulating the convergent matrix of
/// one period starting there yields `epsilon` exactly.
pub fn fundamental_unit(d: u64) -> Result<QuadraticUnit> {
    fundamental_discriminant_real(d)?;
    let s = isqrt_i64(d as i64) as u64;
    let (p0, q0) = if d % 4 == 1 { (1, 2) } else { (0, 1) };
    let (_, p1, q1) = cf_step(d, s, p0, q0);
    // Convergent matrix of the periodic block a_1, a_2, ...: the product
    // of [[a_i, 1], [1, 0]] over one period.
    let (mut m00, mut m01) = (BigInt::one(), BigInt::zero());
    let (mut m10, mut m11) = (BigInt::zero(), BigInt::one());
    let (mut p, mut q) = (p1, q1);
    loop {
        let (a, p2, q2) = cf_step(d, s, p, q);
        let a = BigInt::from(a);
        let n00 = &m00 * &a + &m01;
        let n10 = &m10 * &a + &m11;
        m01 = std::mem::replace(&mut m00, n00);
        m11 = std::mem::replace(&mut m10, n10);
        p = p2;
        q = q2;
        if (p, q) == (p1, q1) {
            break;
        }
    }
    // epsilon = q' * (P1 + sqrt(d))/Q1 + q'' with [q', q''] the bottom row.
    let (qp, qpp) = (m10, m11);
    let a = &qp * BigInt::from(p1) + &qpp * BigInt::from(q1);
    let b = qp;
    let unit = normalize_unit(a, b, q1 as i64, d);
    assert!(unit.a.is_positive() && unit.b.is_positive());
    debug_assert_eq!(unit.norm() as i64, if cf_period(d) % 2 == 1 { -1 } else { 1 });
    Ok(unit)
}

/// Reduced indefinite form test: `0 < b < sqrt(D)` and
/// `sqrt(D) - b < 2|a| < sqrt(D) + b`, with exact integer comparisons.
pub fn is_reduced_indefinite(f: &QuadraticForm, disc: i64) -> bool {
    let (a, b) = (f.a as i128, f.b as i128);
    let dd = disc as i128;
    if b <= 0 || b * b >= dd {
        return false;
    }
    let t = 2 * a.abs();
    // sqrt(D) - b < t  <=>  sqrt(D) < t + b  <=>  D < (t+b)^2
    // t < sqrt(D) + b  <=>  t - b < sqrt(D)  <=>  t <= b or (t-b)^2 < D
    dd < (t + b) * (t + b) && (t <= b || (t - b) * (t - b) < dd)
}

/// All reduced indefinite forms of fundamental discriminant `D > 0`.
pub fn reduced_indefinite_forms(disc: i64) -> Result<Vec<QuadraticForm>> {
    if disc <= 0 || !crate::imagquad::is_fundamental_discriminant(disc) {
        return Err(Error::NotFundamental(disc));
    }
    let s = isqrt_i64(disc);
    let mut out = Vec::new();
    let mut b = if disc % 2 == 0 { 2 } else { 1 };
    while b <= s {
        let m = ((disc - b * b) / 4) as u128; // = |a c|
        if m > 0 {
            for div in factorize(m).divisors() {
                let a = div as i64;
                // Window check on 2|a|.
                let f = QuadraticForm { a, b, c: -((m / div) as i64) };
                if is_reduced_indefinite(&f, disc) {
                    out.push(f);
                    out.push(QuadraticForm { a: -f.a, b, c: -f.c });
                }
            }
        }
        b += 2;
    }
    debug_assert!(out.iter().all(|f| f.discriminant() == disc));
    out.sort_unstable();
    Ok(out)
}

/// Reduction step on indefinite forms: `rho(a,b,c) = (c, r, (r^2-D)/(4c))`
/// with `r = -b mod 2|c|` taken in the reduced window.
pub fn rho_indefinite(f: &QuadraticForm, disc: i64) -> QuadraticForm {
    let s = isqrt_i64(disc);
    let c = f.c;
    let t = 2 * c.abs();
    // Unique r = -b (mod 2|c|) in [s + 1 - 2|c|, s].
    let r = s - (s + f.b).rem_euclid(t);
    let c2 = ((r as i128 * r as i128 - disc as i128) / (4 * c as i128)) as i64;
    QuadraticForm { a: c, b: r, c: c2 }
}

/// Narrow class number: the number of cycles of reduced indefinite forms.
pub fn narrow_class_number(disc: i64) -> Result<u64> {
    let forms = reduced_indefinite_forms(disc)?;
    let all: HashSet<QuadraticForm> = forms.iter().copied().collect();
    let mut seen: HashSet<QuadraticForm> = HashSet::new();
    let mut cycles = 0u64;
    for f in &forms {
        if seen.contains(f) {
            continue;
        }
        cycles += 1;
        let mut g = *f;
        loop {
            let inserted = seen.insert(g);
            assert!(inserted, "rho walked into a different cycle");
            g = rho_indefinite(&g, disc);
            assert!(all.contains(&g), "rho left the reduced set");
            if g == *f {
                break;
            }
        }
    }
    Ok(cycles)
}

/// Wide class number `h` of `Q(sqrt(d))`: `h+` when the fundamental unit
/// has norm -1, else `h+ / 2`.
pub fn class_number_real(d: u64) -> Result<u64> {
    let disc = fundamental_discriminant_real(d)?;
    let narrow = narrow_class_number(disc)?;
    if unit_norm(d)? == -1 {
        Ok(narrow)
    } else {
        assert!(narrow % 2 == 0, "norm +1 forces an even narrow class number");
        Ok(narrow / 2)
    }
}

/// Class-group structure of `Q(sqrt(d))`, pinned down by the order `h`
/// together with the genus 2-rank: the odd part must be squarefree (hence
/// cyclic) and the 2-part must be determined by order and rank alone.
pub fn class_group_real(d: u64) -> Result<AbelianGroupStructure> {
    let disc = fundamental_discriminant_real(d)?;
    let h = class_number_real(d)?;
    let r2 = two_rank_discriminant(disc).r2;
    let f = factorize(h as u128);
    let v2 = f.factors.iter().find(|&&(p, _)| p == 2).map_or(0, |&(_, e)| e);
    let odd_squarefree = f.factors.iter().all(|&(p, e)| p == 2 || e == 1);
    let odd: u64 = (h >> v2) as u64;
    if v2 == 0 {
        assert_eq!(r2, 0, "genus rank contradicts odd class number");
        if !odd_squarefree {
            return Err(Error::UnresolvedStructure { order: h, rank: 0 });
        }
        return Ok(AbelianGroupStructure::cyclic(odd));
    }
    assert!(r2 >= 1 && r2 <= v2, "genus rank incompatible with h = {h}");
    // Partitions of v2 into r2 parts: unique exactly when r2 = 1, r2 = v2,
    // or v2 = r2 + 1.
    if !odd_squarefree || (r2 >= 2 && v2 >= r2 + 2) {
        return Err(Error::UnresolvedStructure { order: h, rank: r2 });
    }
    let mut divisors = vec![2u64; r2 as usize];
    *divisors.last_mut().unwrap() = (1u64 << (v2 - r2 + 1)) * odd;
    let g = AbelianGroupStructure {
        elementary_divisors: divisors,
    };
    assert!(g.is_valid() && g.order() == h);
    Ok(g)
}
