//! Imaginary bicyclic biquadratic fields `K = Q(sqrt(-x), sqrt(-y))`:
//! Kuroda's class number formula and exact computation of the unit index
//! `q(K) = [E_K : E_K1 E_K2 E_K3]`.

use crate::arith::{kronecker, rational_square_root, squarefree_kernel};
use crate::imagquad::class_number_imag;
use crate::realquad::{class_number_real, fundamental_unit, unit_norm, QuadraticUnit};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Canonical presentation of `Q(sqrt(-x), sqrt(-y))`: the unordered pair
/// of imaginary radicands with `x < y`, plus the real radicand `d_xy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiquadraticField {
    pub x: u64,
    pub y: u64,
    pub d_xy: u64,
}

impl BiquadraticField {
    /// Build from two squarefree positive imaginary radicands.
    pub fn new(x: u64, y: u64) -> Result<Self> {
        if x == 0 || y == 0 {
            return Err(Error::BadRadicand(0));
        }
        for z in [x, y] {
            if squarefree_kernel(z as i128).1 != z as u128 {
                return Err(Error::NotSquarefree(z as i64));
            }
        }
        if x == y {
            return Err(Error::Degenerate(-(x as i64), -(y as i64)));
        }
        let (_, d) = squarefree_kernel((x as i128) * (y as i128));
        Ok(Self {
            x: x.min(y),
            y: x.max(y),
            d_xy: d as u64,
        })
    }
}

impl std::fmt::Display for BiquadraticField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Q(sqrt(-{}), sqrt(-{}))", self.x, self.y)
    }
}

/// Canonicalize a field given by two radicands of arbitrary sign: replace
/// a real generator by the third (imaginary) quadratic subfield's radicand.
pub fn normalize_field(r1: i64, r2: i64) -> Result<BiquadraticField> {
    if r1 == 0 || r2 == 0 {
        return Err(Error::BadRadicand(0));
    }
    let (s1, k1) = squarefree_kernel(r1 as i128);
    let (s2, k2) = squarefree_kernel(r2 as i128);
    let (k1, k2) = (k1 as u64, k2 as u64);
    if s1 > 0 && s2 > 0 {
        return Err(Error::NotImaginary);
    }
    if (s1, k1) == (s2, k2) || k1 == 1 && k2 == 1 {
        return Err(Error::Degenerate(r1, r2));
    }
    let (x, other_kernel, other_sign) = if s1 < 0 { (k1, k2, s2) } else { (k2, k1, s1) };
    let y = if other_sign < 0 {
        other_kernel
    } else {
        // Q(sqrt(-x), sqrt(m)) = Q(sqrt(-x), sqrt(-xm)).
        squarefree_kernel((x as i128) * (other_kernel as i128)).1 as u64
    };
    if x == y {
        return Err(Error::Degenerate(r1, r2));
    }
    BiquadraticField::new(x, y)
}

/// The Kuroda decomposition `h_K = q h_1 h_2 h_3 / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KurodaData {
    pub h1: u64,
    pub h2: u64,
    pub h3: u64,
    pub q: u8,
    pub h_k: u64,
}

/// Class number of `K` via Kuroda's formula. `h1` belongs to `Q(sqrt(-x))`
/// with the smaller radicand of the canonical pair.
pub fn kuroda_hk(field: &BiquadraticField) -> Result<KurodaData> {
    let h1 = class_number_imag(field.x)?;
    let h2 = class_number_imag(field.y)?;
    let h3 = class_number_real(field.d_xy)?;
    let q = unit_index_q(field)?;
    let numerator = q as u64 * h1 * h2 * h3;
    assert_eq!(numerator % 2, 0, "Kuroda numerator must be even");
    let h_k = numerator / 2;
    assert_eq!(h_k % h3, 0, "h3 must divide hK");
    Ok(KurodaData { h1, h2, h3, q, h_k })
}

/// Is `alpha = a + b sqrt(d)` a square in `Q(sqrt(d))`?
///
/// Writing `alpha = (u + v sqrt(d))^2` forces `u^2 + d v^2 = a` and
/// `2uv = b`, so the norm `a^2 - d b^2 = (u^2 - d v^2)^2` must be a
/// rational square `s^2`, and `(a + s)/2` or `(a - s)/2` must be the
/// rational square `u^2`.
pub fn is_square_in_real_quadratic(a: &BigRational, b: &BigRational, d: u64) -> bool {
    let dq = BigRational::from(BigInt::from(d));
    if b.is_zero() {
        return rational_square_root(a).is_some()
            || rational_square_root(&(a / &dq)).is_some();
    }
    let norm = a * a - &dq * b * b;
    let Some(s) = rational_square_root(&norm) else {
        return false;
    };
    let two = BigRational::from(BigInt::from(2));
    for t in [(a + &s) / &two, (a - &s) / &two] {
        if let Some(u) = rational_square_root(&t) {
            if u.is_zero() {
                continue;
            }
            let v = b / (&two * &u);
            if &u * &u + &dq * &v * &v == *a {
                return true;
            }
        }
    }
    false
}

/// The Kuroda unit index `q(K)`, 1 or 2.
///
/// `q = 2` exactly when `zeta * eps` is a square in `K` for some root of
/// unity `zeta` of `K`, with `eps` the fundamental unit of the real
/// subfield `K3 = Q(sqrt(d_xy))`. For an element of `K3`, squareness in
/// `K = K3(sqrt(-x))` means squareness in `K3` of the element itself or of
/// `-x` times it. The extra roots of unity contribute rational multipliers
/// only: `zeta = i` (present when 1 is a radicand) leads to `2 eps`, and
/// the sixth roots (present when 3 is a radicand) reduce to multipliers
/// already covered. The lone exception is `Q(i, sqrt(-2)) = Q(zeta_8)`,
/// where `zeta_8 eps` is a square without any rational multiplier
/// witnessing it; there `q = 2` unconditionally.
pub fn unit_index_q(field: &BiquadraticField) -> Result<u8> {
    if (field.x, field.y) == (1, 2) {
        return Ok(2);
    }
    // A totally real square is totally positive; candidates c * eps have
    // norm c^2 * N(eps), so N(eps) = -1 rules all of them out at once.
    if unit_norm(field.d_xy)? == -1 {
        return Ok(1);
    }
    let eps = fundamental_unit(field.d_xy)?;
    Ok(if any_multiple_is_square(field, &eps) { 2 } else { 1 })
}

fn any_multiple_is_square(field: &BiquadraticField, eps: &QuadraticUnit) -> bool {
    let den = BigInt::from(eps.den as i64);
    let a = BigRational::new(eps.a.clone(), den.clone());
    let b = BigRational::new(eps.b.clone(), den);
    let mut multipliers: Vec<i64> = vec![1, -1, field.x as i64, -(field.x as i64)];
    if field.x == 1 {
        multipliers.extend([2, -2]);
    }
    if field.x == 3 || field.y == 3 {
        multipliers.extend([3, -3]);
    }
    multipliers.iter().any(|&c| {
        let cq = BigRational::from(BigInt::from(c));
        is_square_in_real_quadratic(&(&a * &cq), &(&b * &cq), field.d_xy)
    })
}

/// The classification of imaginary bicyclic biquadratic fields with odd
/// class number, as a case tag 1 through 7:
/// 1. `{q1, p1 q1}` with `(p1|q1) = (q1|p1) = -1`
/// 2. `{1, p1}` or `{2, 2 p1}` with `p1 = 5 (mod 8)`
/// 3. `{q1, 2 q1}` with `q1 = 3 (mod 8)`
/// 4. `{1, 2}`
/// 5. `{1, q1}`
/// 6. `{2, q1}`
/// 7. `{q1, q2}`
/// for primes `p1 = 1 (mod 4)` and `q1, q2 = 3 (mod 4)`.
pub fn classify_odd_family(field: &BiquadraticField) -> Option<u8> {
    let (x, y) = (field.x, field.y);
    let p1mod4 = |n: u64| crate::arith::is_prime(n as u128) && n % 4 == 1;
    let p3mod4 = |n: u64| crate::arith::is_prime(n as u128) && n % 4 == 3;
    if (x, y) == (1, 2) {
        return Some(4);
    }
    if x == 1 && p3mod4(y) {
        return Some(5);
    }
    if x == 2 && p3mod4(y) {
        return Some(6);
    }
    if p3mod4(x) && p3mod4(y) {
        return Some(7);
    }
    if x == 1 && p1mod4(y) && y % 8 == 5 {
        return Some(2);
    }
    if x == 2 && y % 2 == 0 && p1mod4(y / 2) && (y / 2) % 8 == 5 {
        return Some(2);
    }
    if p3mod4(x) && y == 2 * x && x % 8 == 3 {
        return Some(3);
    }
    // {q1, p1 q1} in either role, with both Legendre symbols -1.
    for (u, v) in [(x, y), (y, x)] {
        if p3mod4(u) && v % u == 0 {
            let p = v / u;
            if p1mod4(p) && kronecker(p as i64, u) == -1 && kronecker(u as i64, p) == -1 {
                return Some(1);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn normalize_examples() {
        let f = normalize_field(-15, -23).unwrap();
        assert_eq!((f.x, f.y, f.d_xy), (15, 23, 345));
        let g = normalize_field(-15, 23).unwrap();
        assert_eq!((g.x, g.y, g.d_xy), (15, 345, 23));
        assert_eq!(normalize_field(6, 10), Err(Error::NotImaginary));
        assert_eq!(normalize_field(-3, -12), Err(Error::Degenerate(-3, -12)));
        assert_eq!(normalize_field(-1, 4), Err(Error::Degenerate(-1, 4)));
    }

    #[test]
    fn kuroda_examples() {
        let k = kuroda_hk(&BiquadraticField::new(15, 23).unwrap()).unwrap();
        assert_eq!((k.h1, k.h2, k.h3, k.q, k.h_k), (2, 3, 2, 1, 6));
        let k = kuroda_hk(&BiquadraticField::new(1, 71).unwrap()).unwrap();
        assert_eq!((k.h1, k.h2, k.h3, k.q, k.h_k), (1, 7, 1, 2, 7));
        // h1 always belongs to the smaller canonical radicand: here
        // h(-31) = 3 and h(-155) = 4.
        let k = kuroda_hk(&BiquadraticField::new(31, 155).unwrap()).unwrap();
        assert_eq!((k.h1, k.h2, k.h3, k.q, k.h_k), (3, 4, 1, 1, 6));
    }

    #[test]
    fn unit_index_examples() {
        assert_eq!(unit_index_q(&BiquadraticField::new(1, 71).unwrap()).unwrap(), 2);
        assert_eq!(unit_index_q(&BiquadraticField::new(5, 23).unwrap()).unwrap(), 1);
        assert_eq!(unit_index_q(&BiquadraticField::new(1, 2).unwrap()).unwrap(), 2);
        // Q(zeta_12): h = 1 with trivial subfield class numbers forces q = 2,
        // witnessed by 2 eps = (1 + sqrt(3))^2.
        assert_eq!(unit_index_q(&BiquadraticField::new(1, 3).unwrap()).unwrap(), 2);
    }

    #[test]
    fn square_criterion() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        // (1 + sqrt(3))^2 = 4 + 2 sqrt(3).
        assert!(is_square_in_real_quadratic(&q(4, 1), &q(2, 1), 3));
        assert!(!is_square_in_real_quadratic(&q(4, 1), &q(1, 1), 3));
        // ((1 + sqrt(5))/2)^2 = (3 + sqrt(5))/2.
        assert!(is_square_in_real_quadratic(&q(3, 2), &q(1, 2), 5));
        // Rational cases: 9/4 is a square, 5 = sqrt(5)^2 is a square in Q(sqrt 5).
        assert!(is_square_in_real_quadratic(&q(9, 4), &BigRational::zero(), 5));
        assert!(is_square_in_real_quadratic(&q(5, 1), &BigRational::zero(), 5));
        assert!(!is_square_in_real_quadratic(&q(3, 1), &BigRational::zero(), 5));
        // Negative elements are never squares.
        assert!(!is_square_in_real_quadratic(&(-q(4, 1)), &(-q(2, 1)), 3));
        let one = BigRational::one();
        assert!(is_square_in_real_quadratic(&one, &BigRational::zero(), 7));
    }

    #[test]
    fn presentation_independence() {
        // Q(sqrt(-15), sqrt(-23)) has subfield radicands -15, -23, +345;
        // any two of them present the same field and normalize to the
        // canonical imaginary pair.
        let canonical = BiquadraticField::new(15, 23).unwrap();
        for (r1, r2) in [(-15i64, -23i64), (-15, 345), (345, -23)] {
            assert_eq!(normalize_field(r1, r2).unwrap(), canonical);
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_odd_family(&BiquadraticField::new(1, 2).unwrap()), Some(4));
        assert_eq!(classify_odd_family(&BiquadraticField::new(1, 5).unwrap()), Some(2));
        assert_eq!(classify_odd_family(&BiquadraticField::new(15, 23).unwrap()), None);
        assert_eq!(classify_odd_family(&BiquadraticField::new(1, 71).unwrap()), Some(5));
        assert_eq!(classify_odd_family(&BiquadraticField::new(3, 6).unwrap()), Some(3));
        // {q1, p1 q1} = {3, 15}: both (5|3) and (3|5) are -1.
        assert_eq!(classify_odd_family(&BiquadraticField::new(3, 15).unwrap()), Some(1));
        // {7, 21}: 21/7 = 3 is not 1 mod 4, so no case matches.
        assert_eq!(classify_odd_family(&BiquadraticField::new(7, 21).unwrap()), None);
        // {11, 55}: right shape but (5|11) = +1, so case 1 fails.
        assert_eq!(classify_odd_family(&BiquadraticField::new(11, 55).unwrap()), None);
    }
}
