//! Exact integer and rational utilities: factorization, squarefree kernels,
//! perfect-square tests, Kronecker symbols.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: u128,
    /// (prime, exponent) pairs with strictly increasing primes.
    pub factors: Vec<(u128, u32)>,
}

impl Factorization {
    /// Number of distinct prime divisors.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// All positive divisors, unsorted order not guaranteed.
    pub fn divisors(&self) -> Vec<u128> {
        let mut out = vec![1u128];
        for &(p, e) in &self.factors {
            let prev = out.clone();
            let mut pk = 1u128;
            for _ in 0..e {
                pk *= p;
                out.extend(prev.iter().map(|d| d * pk));
            }
        }
        out
    }
}

/// Factor `n >= 1` by trial division up to 10^5 followed by Pollard rho on
/// any remaining cofactor.
pub fn factorize(n: u128) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut factors: Vec<(u128, u32)> = Vec::new();
    let mut m = n;
    for p in std::iter::once(2u128).chain((3..100_000u128).step_by(2)) {
        if p * p > m {
            break;
        }
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if m > 1 {
        let mut rest = Vec::new();
        split(m, &mut rest);
        rest.sort_unstable();
        let mut i = 0;
        while i < rest.len() {
            let p = rest[i];
            let mut e = 0;
            while i < rest.len() && rest[i] == p {
                e += 1;
                i += 1;
            }
            factors.push((p, e));
        }
    }
    factors.sort_unstable();
    Factorization { n, factors }
}

/// Distinct prime divisor count of `n >= 1`.
pub fn omega(n: u128) -> u32 {
    factorize(n).omega()
}

fn split(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split(d, out);
    split(n / d, out);
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return a * b % m;
    }
    // Double-and-add; only reached for moduli above 64 bits.
    let mut result = 0u128;
    let mut a = a % m;
    let mut b = b;
    while b > 0 {
        if b & 1 == 1 {
            result = (result + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    result
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the 128-bit range used here (the first
/// thirteen prime bases are a proven witness set far beyond 10^24).
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u128) -> u128 {
    debug_assert!(n > 1 && !is_prime(n));
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u128;
    loop {
        let f = |x: u128| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u128;
        let mut y = 2u128;
        let mut d = 1u128;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u128(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Write `n = sign * s * k^2` with `s` squarefree; returns `(sign, s)`.
pub fn squarefree_kernel(n: i128) -> (i8, u128) {
    assert!(n != 0, "squarefree_kernel requires n != 0");
    let sign = if n < 0 { -1 } else { 1 };
    let f = factorize(n.unsigned_abs());
    let mut s = 1u128;
    for (p, e) in f.factors {
        if e % 2 == 1 {
            s *= p;
        }
    }
    (sign, s)
}

/// Integer square root of `n` (largest `r` with `r^2 <= n`).
pub fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u128;
    while r > 0 && r * r > n {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |s| s <= n) {
        r += 1;
    }
    r
}

pub fn isqrt_i64(n: i64) -> i64 {
    assert!(n >= 0);
    isqrt_u128(n as u128) as i64
}

/// Exact perfect-square test for nonnegative integers.
pub fn exact_sqrt(n: u128) -> Option<u128> {
    let r = isqrt_u128(n);
    (r * r == n).then_some(r)
}

/// Nonnegative square root of a rational, if it is a rational square.
pub fn rational_square_root(q: &BigRational) -> Option<BigRational> {
    if q.is_zero() {
        return Some(BigRational::zero());
    }
    if q.is_negative() {
        return None;
    }
    let num = big_exact_sqrt(q.numer())?;
    let den = big_exact_sqrt(q.denom())?;
    Some(BigRational::new(num, den))
}

fn big_exact_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Kronecker symbol (a|n) for odd positive n (Jacobi symbol suffices here).
pub fn kronecker(mut a: i64, mut n: u64) -> i8 {
    assert!(n % 2 == 1 && n > 0, "kronecker implemented for odd n > 0");
    a = a.rem_euclid(n as i64);
    let mut num = a as u64;
    let mut sign = 1i8;
    while num != 0 {
        while num % 2 == 0 {
            num /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut num, &mut n);
        if num % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        num %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}
