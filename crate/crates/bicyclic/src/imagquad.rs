//! Imaginary quadratic fields: class numbers and class-group structure via
//! reduced positive-definite binary quadratic forms and Gauss composition.

use crate::arith::{factorize, gcd_u128, isqrt_i64, squarefree_kernel};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// The field `Q(sqrt(-z))` for squarefree `z >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImaginaryQuadraticField {
    pub z: u64,
    pub d: i64,
}

impl ImaginaryQuadraticField {
    pub fn new(z: u64) -> Result<Self> {
        Ok(Self {
            z,
            d: fundamental_discriminant_imag(z)?,
        })
    }
}

/// An integral binary quadratic form `a x^2 + b xy + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadraticForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// Reduced in the positive-definite sense: `|b| <= a <= c`, with
    /// `b >= 0` when `|b| = a` or `a = c`.
    pub fn is_reduced_definite(&self) -> bool {
        self.a > 0
            && self.b.abs() <= self.a
            && self.a <= self.c
            && (self.b >= 0 || (self.b.abs() < self.a && self.a < self.c))
    }
}

/// Finite abelian group given by its elementary divisor chain
/// `d_1 | d_2 | ... | d_r` with every `d_i >= 2`; the empty chain is the
/// trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize, PartialOrd, Ord)]
pub struct AbelianGroupStructure {
    pub elementary_divisors: Vec<u64>,
}

impl AbelianGroupStructure {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            Self {
                elementary_divisors: vec![n],
            }
        }
    }

    pub fn order(&self) -> u64 {
        self.elementary_divisors.iter().product()
    }

    /// Number of elementary divisors divisible by `p`.
    pub fn p_rank(&self, p: u64) -> u32 {
        self.elementary_divisors
            .iter()
            .filter(|d| *d % p == 0)
            .count() as u32
    }

    pub fn is_valid(&self) -> bool {
        self.elementary_divisors.iter().all(|&d| d >= 2)
            && self
                .elementary_divisors
                .windows(2)
                .all(|w| w[1] % w[0] == 0)
    }
}

impl std::fmt::Display for AbelianGroupStructure {
    /// Renders "1", "Z/12", "Z/2xZ/6".
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.elementary_divisors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .elementary_divisors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Fundamental discriminant of `Q(sqrt(-z))`.
pub fn fundamental_discriminant_imag(z: u64) -> Result<i64> {
    if z == 0 || z > i64::MAX as u64 / 4 {
        return Err(Error::BadRadicand(z as i64));
    }
    let (_, s) = squarefree_kernel(z as i128);
    if s != z as u128 {
        return Err(Error::NotSquarefree(z as i64));
    }
    Ok(if z % 4 == 3 { -(z as i64) } else { -4 * (z as i64) })
}

/// Checks that `d` is a fundamental discriminant (either sign).
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree_kernel(d as i128) == (if d < 0 { -1 } else { 1 }, d.unsigned_abs() as u128),
        0 => {
            let m = d / 4;
            let r = m.rem_euclid(4);
            (r == 2 || r == 3)
                && squarefree_kernel(m as i128)
                    == (if m < 0 { -1 } else { 1 }, m.unsigned_abs() as u128)
        }
        _ => false,
    }
}

/// All reduced positive-definite forms of fundamental discriminant `d < 0`,
/// sorted. Their count is the class number.
pub fn reduced_forms(d: i64) -> Result<Vec<QuadraticForm>> {
    if d >= 0 || !is_fundamental_discriminant(d) {
        return Err(Error::NotFundamental(d));
    }
    let mut out = Vec::new();
    // |b| <= a <= c implies 3 b^2 <= 3 a^2 <= |d| + b^2 ... b^2 <= |d|/3.
    let bmax = isqrt_i64(-d / 3);
    let parity = d.rem_euclid(2);
    let mut b = parity;
    while b <= bmax {
        let n = (b * b - d) / 4; // = a*c
        // Divisors a of n in [max(b,1), sqrt(n)].
        let amin = b.max(1);
        let mut a = amin;
        while a * a <= n {
            if n % a == 0 {
                let c = n / a;
                // b and -b, subject to the reduction tie-break rules.
                out.push(QuadraticForm { a, b, c });
                if b != 0 && b != a && a != c {
                    out.push(QuadraticForm { a, b: -b, c });
                }
            }
            a += 1;
        }
        b += 2;
    }
    debug_assert!(out.iter().all(|f| f.is_reduced_definite() && f.discriminant() == d));
    out.sort_unstable();
    Ok(out)
}

/// Class number of `Q(sqrt(-z))`.
pub fn class_number_imag(z: u64) -> Result<u64> {
    let d = fundamental_discriminant_imag(z)?;
    Ok(reduced_forms(d)?.len() as u64)
}

/// Reduce a positive-definite form to its canonical representative.
pub fn reduce_definite(mut f: QuadraticForm) -> QuadraticForm {
    debug_assert!(f.a > 0 && f.discriminant() < 0);
    loop {
        // Normalize b into (-a, a].
        if f.b > f.a || f.b <= -f.a {
            let k = (f.a - f.b).div_euclid(2 * f.a); // b + 2ka in (-a, a]
            let b2 = f.b + 2 * k * f.a;
            let c2 = f.c + k * (f.b + k * f.a);
            f = QuadraticForm { a: f.a, b: b2, c: c2 };
        }
        if f.a > f.c {
            f = QuadraticForm { a: f.c, b: -f.b, c: f.a };
            continue;
        }
        break;
    }
    if f.b < 0 && (f.b == -f.a || f.a == f.c) {
        f = QuadraticForm { a: f.a, b: -f.b, c: f.c };
    }
    debug_assert!(f.is_reduced_definite());
    f
}

fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        let s = if a < 0 { -1 } else { 1 };
        return (a.abs(), s, 0);
    }
    let (g, x, y) = xgcd(b, a % b);
    (g, y, x - (a / b) * y)
}

/// Gauss composition of two forms of the same discriminant, returned
/// reduced. Computed as the product of the corresponding ideals
/// `[a, (-b + sqrt(D))/2]`, put in Hermite normal form.
pub fn compose(f: &QuadraticForm, g: &QuadraticForm) -> Result<QuadraticForm> {
    let d = f.discriminant();
    if d != g.discriminant() {
        return Err(Error::DiscriminantMismatch(d, g.discriminant()));
    }
    let (a1, b1) = (f.a as i128, f.b as i128);
    let (a2, b2) = (g.a as i128, g.b as i128);
    let dd = d as i128;
    // Generators of the product module, written as (x + y*sqrt(D))/2.
    let gens: [(i128, i128); 4] = [
        (2 * a1 * a2, 0),
        (-a1 * b2, a1),
        (-a2 * b1, a2),
        ((b1 * b2 + dd) / 2, -(b1 + b2) / 2),
    ];
    // Second HNF basis vector (px, e): gcd of the y-parts with a matching
    // integer combination of the x-parts.
    let (mut px, mut e) = (0i128, 0i128);
    for &(x, y) in &gens {
        let (g2, u, v) = xgcd(e, y);
        px = u * px + v * x;
        e = g2;
    }
    debug_assert!(e > 0);
    // Eliminate the y-parts; the remaining pure-x content is the first
    // basis vector (l, 0).
    let mut l = 0u128;
    for &(x, y) in &gens {
        let x2 = x - (y / e) * px;
        l = gcd_u128(l, x2.unsigned_abs());
    }
    let l = l as i128;
    // The lattice equals e * [a3, (-b3 + sqrt(D))/2] with a3 = a1*a2/e^2.
    debug_assert_eq!(l * e, 2 * a1 * a2, "product ideal norm mismatch");
    let a3 = l / (2 * e);
    // Pick the representative of px mod l divisible by e.
    px = px.rem_euclid(l);
    let step = l.rem_euclid(e);
    let (gg, inv, _) = xgcd(step, e);
    debug_assert_eq!(px.rem_euclid(gg), 0, "no lattice basis with e | px");
    let k = ((-px / gg).rem_euclid(e / gg) * inv.rem_euclid(e / gg)).rem_euclid(e / gg);
    let b3 = -((px + k * l) / e);
    debug_assert_eq!((b3 * b3 - dd).rem_euclid(4 * a3), 0);
    let mut b = b3.rem_euclid(2 * a3);
    if b > a3 {
        b -= 2 * a3;
    }
    let c = (b * b - dd) / (4 * a3);
    Ok(reduce_definite(QuadraticForm {
        a: a3 as i64,
        b: b as i64,
        c: c as i64,
    }))
}

/// Principal (identity) form of discriminant `d < 0`.
pub fn principal_form(d: i64) -> QuadraticForm {
    let b = d.rem_euclid(2);
    QuadraticForm {
        a: 1,
        b,
        c: (b * b - d) / 4,
    }
}

/// Elementary divisors of the form class group of `Q(sqrt(-z))`, derived
/// from the orders of all elements under composition.
pub fn class_group_imag(z: u64) -> Result<AbelianGroupStructure> {
    let d = fundamental_discriminant_imag(z)?;
    let forms = reduced_forms(d)?;
    let h = forms.len() as u64;
    let id = principal_form(d);
    // Order of each class by repeated composition.
    let mut orders = Vec::with_capacity(forms.len());
    for f in &forms {
        let mut acc = *f;
        let mut ord = 1u64;
        while acc != id {
            acc = compose(&acc, f)?;
            ord += 1;
            debug_assert!(ord <= h);
        }
        orders.push(ord);
    }
    Ok(structure_from_orders(h, &orders))
}

/// Reconstruct the elementary divisors of a finite abelian group of order
/// `n` from the multiset of element orders.
fn structure_from_orders(n: u64, orders: &[u64]) -> AbelianGroupStructure {
    assert_eq!(orders.len() as u64, n);
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for (p, vmax) in factorize(n as u128)
        .factors
        .iter()
        .map(|&(p, e)| (p as u64, e))
    {
        // count[i] = number of elements killed by p^i; the conjugate
        // partition of the cyclic p-factor exponents falls out of the
        // successive quotients.
        let mut counts = vec![0u64; vmax as usize + 1];
        for &o in orders {
            let mut pe = 0u32;
            let mut m = o;
            while m % p == 0 {
                m /= p;
                pe += 1;
            }
            for (i, c) in counts.iter_mut().enumerate() {
                if pe <= i as u32 {
                    *c += 1;
                }
            }
        }
        let mut partition: Vec<u32> = Vec::new(); // lambda_j, largest first
        let mut prev_rank = u32::MAX;
        for i in 1..=vmax as usize {
            assert_eq!(counts[i] % counts[i - 1], 0, "p-group counting failed");
            let q = counts[i] / counts[i - 1];
            let mut rank = 0u32;
            let mut qq = q;
            while qq > 1 {
                assert_eq!(qq % p, 0, "p-group counting failed");
                qq /= p;
                rank += 1;
            }
            assert!(rank <= prev_rank);
            prev_rank = rank;
            for j in 0..rank as usize {
                if partition.len() <= j {
                    partition.push(0);
                }
                partition[j] += 1;
            }
        }
        per_prime.push((p, partition));
    }
    let rank = per_prime
        .iter()
        .map(|(_, parts)| parts.len())
        .max()
        .unwrap_or(0);
    // Align partitions largest-first and multiply across primes.
    let mut divisors = vec![1u64; rank];
    for (p, parts) in &per_prime {
        for (j, &e) in parts.iter().enumerate() {
            divisors[j] *= p.pow(e);
        }
    }
    divisors.reverse(); // ascending chain d_1 | d_2 | ...
    let g = AbelianGroupStructure {
        elementary_divisors: divisors,
    };
    assert!(g.is_valid());
    assert_eq!(g.order(), n);
    g
}
