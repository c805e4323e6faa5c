//! Genus theory: the 2-rank of quadratic class groups from the prime
//! factorization of the discriminant, and the divisibility criteria on the
//! radicand used as enumeration prefilters.

use crate::arith::factorize;

/// The 2-rank data of a quadratic field of fundamental discriminant `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusProfile {
    /// Number of distinct primes dividing `D`.
    pub t: u32,
    /// Some odd prime `p = 3 (mod 4)` divides `D`.
    pub has_3mod4_prime: bool,
    pub is_real: bool,
    /// 2-rank of the class group.
    pub r2: u32,
}

/// Genus 2-rank for a fundamental discriminant of either sign: `t - 2` for
/// a real field whose discriminant has a prime divisor `3 (mod 4)`, and
/// `t - 1` otherwise.
pub fn two_rank_discriminant(disc: i64) -> GenusProfile {
    debug_assert!(crate::imagquad::is_fundamental_discriminant(disc));
    let f = factorize(disc.unsigned_abs() as u128);
    let t = f.omega();
    let has_3mod4_prime = f.factors.iter().any(|&(p, _)| p % 4 == 3);
    let is_real = disc > 0;
    let r2 = if is_real && has_3mod4_prime {
        t - 2
    } else {
        t - 1
    };
    GenusProfile {
        t,
        has_3mod4_prime,
        is_real,
        r2,
    }
}

/// Sufficient condition for `2^s | h(Q(sqrt(-z)))`: `z` has at least `s+1`
/// distinct prime divisors, or exactly `s` of them with `z = 1 (mod 4)`.
pub fn imag_divisibility(z: u64, s: u32) -> bool {
    let w = factorize(z as u128).omega();
    w >= s + 1 || (w == s && z % 4 == 1)
}

/// Sufficient condition for `2^s | h(Q(sqrt(z)))`: `z` has at least `s+2`
/// distinct prime divisors, or exactly `s+1` of them with `z = 3 (mod 4)`
/// or with no prime divisor `3 (mod 4)`.
pub fn real_divisibility(z: u64, s: u32) -> bool {
    let f = factorize(z as u128);
    let w = f.omega();
    if w >= s + 2 {
        return true;
    }
    w == s + 1 && (z % 4 == 3 || f.factors.iter().all(|&(p, _)| p % 4 != 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imagquad::fundamental_discriminant_imag;
    use crate::realquad::fundamental_discriminant_real;

    #[test]
    fn two_rank_examples() {
        let p = two_rank_discriminant(fundamental_discriminant_imag(14).unwrap());
        assert_eq!((p.t, p.r2, p.is_real), (2, 1, false));
        let p = two_rank_discriminant(fundamental_discriminant_real(115).unwrap());
        assert_eq!((p.t, p.has_3mod4_prime, p.r2), (3, true, 1));
        let p = two_rank_discriminant(fundamental_discriminant_imag(93).unwrap());
        assert_eq!((p.t, p.r2), (3, 2));
    }

    #[test]
    fn imag_divisibility_examples() {
        assert!(imag_divisibility(14, 1));
        assert!(imag_divisibility(5, 1));
        assert!(!imag_divisibility(3, 1));
    }

    #[test]
    fn real_divisibility_examples() {
        assert!(real_divisibility(105, 1));
        assert!(real_divisibility(15, 1));
        assert!(real_divisibility(65, 1));
        assert!(!real_divisibility(5, 1));
    }
}
