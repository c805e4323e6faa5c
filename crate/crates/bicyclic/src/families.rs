//! Factorization-pattern families of imaginary bicyclic biquadratic fields.
//!
//! For class numbers 4, 6 and 7 every field falls into one of finitely many
//! families described by the shapes of the two imaginary radicands (products
//! of a prime 2, primes `p = 1 (mod 4)` and primes `q = 3 (mod 4)`) together
//! with a short list of admissible `(h1, h2, h3, q)` tuples. This module
//! encodes those families and matches computed fields against them.

use crate::arith::factorize;
use crate::biquad::KurodaData;

/// A symbolic prime in a radicand pattern. The index distinguishes primes of
/// the same congruence class within one family row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    /// A prime `p = 1 (mod 4)`.
    P(u8),
    /// A prime `q = 3 (mod 4)`.
    Q(u8),
    /// The prime 2.
    Two,
}

impl Atom {
    fn admits(self, prime: u64) -> bool {
        match self {
            Atom::P(_) => prime % 4 == 1,
            Atom::Q(_) => prime % 4 == 3,
            Atom::Two => prime == 2,
        }
    }
}

/// One family: the two radicand shapes in listed order and the admissible
/// `(h1, h2, h3, q)` tuples, where `h1` belongs to the first shape.
#[derive(Debug, Clone, Copy)]
pub struct FamilyRow {
    pub table: u8,
    pub row: u8,
    pub first: &'static [Atom],
    pub second: &'static [Atom],
    pub tuples: &'static [[u64; 4]],
}

const P1: Atom = Atom::P(1);
const P2: Atom = Atom::P(2);
const Q1: Atom = Atom::Q(1);
const Q2: Atom = Atom::Q(2);
const Q3: Atom = Atom::Q(3);
const TWO: Atom = Atom::Two;

macro_rules! rows {
    ($table:expr; $( $row:expr , [$($a:expr)*] , [$($b:expr)*] , [$($t:expr),+] );+ $(;)?) => {
        &[ $( FamilyRow {
            table: $table,
            row: $row,
            first: &[$($a),*],
            second: &[$($b),*],
            tuples: &[$($t),+],
        } ),+ ]
    };
}

/// Class number 4, one prime dividing the real radicand.
pub const TABLE1: &[FamilyRow] = rows![1;
    1, [P1 P2 Q1], [P2 Q1], [[4, 2, 1, 1]];
    2, [TWO P1 P2], [TWO P2], [[4, 2, 1, 1]];
    3, [TWO P1 Q1], [TWO Q1], [[4, 2, 1, 1]];
    4, [P1 P2], [P1], [[4, 2, 1, 1]];
    5, [P1 Q1], [Q1], [[4, 1, 1, 2], [8, 1, 1, 1]];
    6, [TWO P1], [TWO], [[4, 1, 1, 2], [8, 1, 1, 1]];
    7, [P1], [], [[4, 1, 1, 2], [8, 1, 1, 1]];
    8, [TWO P1 Q1], [TWO P1], [[4, 2, 1, 1]];
    9, [TWO Q1 Q2], [TWO Q2], [[4, 2, 1, 1]];
    10, [P1 Q1], [P1], [[2, 2, 1, 2], [4, 2, 1, 1], [2, 4, 1, 1]];
    11, [Q1 Q2], [Q1], [[4, 1, 1, 2], [8, 1, 1, 1]];
    12, [TWO Q1], [TWO], [[4, 1, 1, 2], [8, 1, 1, 1]];
    13, [TWO P1 Q1], [P1 Q1], [[4, 2, 1, 1]];
    14, [TWO P1], [P1], [[2, 2, 1, 2], [4, 2, 1, 1], [2, 4, 1, 1]];
    15, [TWO Q1], [Q1], [[4, 1, 1, 2], [8, 1, 1, 1]];
];

/// Class number 4, two primes dividing the real radicand.
pub const TABLE2: &[FamilyRow] = rows![2;
    1, [P1 P2 Q1], [Q1], [[4, 1, 2, 1]];
    2, [TWO P1 P2], [TWO], [[4, 1, 2, 1]];
    3, [P1 P2], [], [[4, 1, 2, 1]];
    4, [P1 Q1], [P2 Q1], [[2, 2, 2, 1]];
    5, [TWO P1], [TWO P2], [[2, 2, 2, 1]];
    6, [P1], [P2], [[2, 2, 2, 1]];
    7, [Q1 Q2 Q3], [Q1], [[4, 1, 1, 2], [8, 1, 1, 1]];
    8, [TWO Q1 Q2], [TWO], [[4, 1, 1, 2], [8, 1, 1, 1]];
    9, [Q1 Q2], [], [[4, 1, 1, 2], [8, 1, 1, 1]];
    10, [P1 Q1], [P1 Q2], [[2, 2, 1, 2], [2, 4, 1, 1]];
    11, [TWO Q1], [TWO Q2], [[2, 2, 1, 2], [2, 4, 1, 1]];
    12, [TWO P1 Q1], [TWO], [[4, 1, 2, 1]];
    13, [P1 Q1], [], [[2, 1, 2, 2], [4, 1, 2, 1], [2, 1, 4, 1]];
    14, [TWO P1], [TWO Q1], [[2, 2, 2, 1]];
    15, [P1], [Q1], [[2, 1, 2, 2], [4, 1, 2, 1], [2, 1, 4, 1]];
    16, [TWO P1 Q1], [Q1], [[4, 1, 2, 1]];
    17, [TWO P1], [], [[2, 1, 2, 2], [4, 1, 2, 1], [2, 1, 4, 1]];
    18, [TWO Q1], [P1 Q1], [[2, 2, 2, 1]];
    19, [P1], [TWO], [[2, 1, 2, 2], [4, 1, 2, 1], [2, 1, 4, 1]];
    20, [TWO P1 Q1], [P1], [[4, 2, 1, 1]];
    21, [TWO Q1 Q2], [Q1], [[4, 1, 1, 2], [8, 1, 1, 1]];
    22, [TWO Q1], [], [[4, 1, 1, 2], [8, 1, 1, 1]];
    23, [P1 Q1], [TWO P1], [[2, 2, 1, 2], [4, 2, 1, 1], [2, 4, 1, 1]];
    24, [Q1 Q2], [TWO Q1], [[4, 2, 1, 1]];
];

/// Class number 4, three primes dividing the real radicand.
pub const TABLE3: &[FamilyRow] = rows![3;
    1, [P1 Q1], [Q2], [[2, 1, 2, 2], [4, 1, 2, 1], [2, 1, 4, 1]];
    2, [TWO P1 Q1], [], [[4, 1, 2, 1]];
    3, [P1 Q1], [TWO], [[2, 1, 2, 2], [4, 1, 2, 1], [2, 1, 4, 1]];
    4, [TWO P1], [Q1], [[2, 1, 2, 2], [4, 1, 2, 1], [2, 1, 4, 1]];
    5, [TWO Q1], [P1], [[2, 2, 2, 1]];
    6, [TWO Q1 Q2], [], [[4, 1, 2, 1]];
    7, [Q1 Q2], [TWO], [[4, 1, 2, 1]];
    8, [TWO Q1], [Q2], [[2, 1, 2, 2], [4, 1, 2, 1], [2, 1, 4, 1]];
];

/// Class number 6, one prime dividing the real radicand.
pub const TABLE4: &[FamilyRow] = rows![4;
    1, [P1 Q1], [Q1],
        [[2, 3, 1, 2], [2, 1, 3, 2], [6, 1, 1, 2], [4, 3, 1, 1], [4, 1, 3, 1], [12, 1, 1, 1]];
    2, [TWO P1], [TWO], [[2, 1, 3, 2], [6, 1, 1, 2], [4, 1, 3, 1], [12, 1, 1, 1]];
    3, [P1], [], [[2, 1, 3, 2], [6, 1, 1, 2], [4, 1, 3, 1], [12, 1, 1, 1]];
    4, [P1 Q1], [P1], [[6, 2, 1, 1], [2, 6, 1, 1], [2, 2, 3, 1]];
    5, [Q1 Q2], [Q1], [[4, 3, 1, 1], [4, 1, 3, 1], [12, 1, 1, 1]];
    6, [TWO Q1], [TWO], [[2, 1, 3, 2], [6, 1, 1, 2], [4, 1, 3, 1], [12, 1, 1, 1]];
    7, [TWO P1], [P1], [[6, 2, 1, 1], [2, 6, 1, 1]];
    8, [TWO Q1], [Q1], [[2, 3, 1, 2], [6, 1, 1, 2], [4, 3, 1, 1], [12, 1, 1, 1]];
];

/// Class number 6, two primes dividing the real radicand.
pub const TABLE5: &[FamilyRow] = rows![5;
    1, [Q1 Q2 Q3], [Q1], [[4, 1, 3, 1], [4, 3, 1, 1], [12, 1, 1, 1]];
    2, [TWO Q1 Q2], [TWO], [[4, 1, 3, 1], [12, 1, 1, 1]];
    3, [Q1 Q2], [], [[4, 1, 3, 1], [12, 1, 1, 1]];
    4, [P1 Q1], [P1 Q2], [[2, 6, 1, 1], [2, 2, 3, 1]];
    5, [TWO Q1], [TWO Q2], [[2, 2, 3, 1], [6, 2, 1, 1]];
    6, [P1 Q1], [], [[6, 1, 2, 1], [2, 1, 6, 1]];
    7, [P1], [Q1], [[6, 1, 2, 1], [2, 1, 6, 1], [2, 3, 2, 1]];
    8, [TWO P1], [], [[6, 1, 2, 1], [2, 1, 6, 1]];
    9, [P1], [TWO], [[6, 1, 2, 1], [2, 1, 6, 1]];
    10, [TWO Q1 Q2], [Q1], [[4, 3, 1, 1], [4, 1, 3, 1], [12, 1, 1, 1]];
    11, [TWO Q1], [], [[2, 1, 3, 2], [6, 1, 1, 2], [4, 1, 3, 1], [12, 1, 1, 1]];
    12, [P1 Q1], [TWO P1], [[6, 2, 1, 1], [2, 6, 1, 1], [2, 2, 3, 1]];
];

/// Class number 6, three primes dividing the real radicand.
pub const TABLE6: &[FamilyRow] = rows![6;
    1, [P1 Q1], [Q2], [[2, 3, 2, 1], [6, 1, 2, 1], [2, 1, 6, 1]];
    2, [P1 Q1], [TWO], [[6, 1, 2, 1], [2, 1, 6, 1]];
    3, [TWO P1], [Q1], [[6, 1, 2, 1], [2, 1, 6, 1], [2, 3, 2, 1]];
    4, [TWO Q1], [Q2], [[2, 3, 2, 1], [6, 1, 2, 1], [2, 1, 6, 1]];
];

/// Class number 7 families.
pub const TABLE7: &[FamilyRow] = rows![7;
    1, [Q1], [P1 Q1], [[1, 2, 7, 1], [7, 2, 1, 1], [1, 14, 1, 1]];
    2, [], [P1], [[1, 2, 7, 1], [1, 14, 1, 1]];
    3, [TWO], [TWO P1], [[1, 2, 7, 1], [1, 14, 1, 1]];
    4, [Q1], [TWO Q1], [[7, 2, 1, 1], [1, 14, 1, 1]];
    5, [], [Q1], [[1, 1, 7, 2], [1, 7, 1, 2]];
    6, [TWO], [Q1], [[1, 1, 7, 2], [1, 7, 1, 2]];
    7, [Q1], [Q2], [[1, 1, 7, 2], [1, 7, 1, 2]];
];

fn pattern_product(pattern: &[Atom], assignment: &[(Atom, u64)]) -> u64 {
    pattern
        .iter()
        .map(|a| {
            assignment
                .iter()
                .find(|(atom, _)| atom == a)
                .map(|&(_, p)| p)
                .unwrap_or(1)
        })
        .product()
}

/// Do the radicands `(a, b)` fit the row's shapes `(first, second)` under a
/// consistent assignment of distinct primes to atoms?
fn shapes_match(row: &FamilyRow, a: u64, b: u64) -> bool {
    let mut atoms: Vec<Atom> = Vec::new();
    for atom in row.first.iter().chain(row.second) {
        if !atoms.contains(atom) {
            atoms.push(*atom);
        }
    }
    let mut primes: Vec<u64> = factorize(a as u128)
        .factors
        .iter()
        .chain(&factorize(b as u128).factors)
        .map(|&(p, _)| p as u64)
        .collect();
    primes.sort_unstable();
    primes.dedup();
    if primes.len() != atoms.len() {
        return false;
    }
    fn assign(
        atoms: &[Atom],
        primes: &[u64],
        used: &mut Vec<(Atom, u64)>,
        row: &FamilyRow,
        a: u64,
        b: u64,
    ) -> bool {
        if used.len() == atoms.len() {
            return pattern_product(row.first, used) == a && pattern_product(row.second, used) == b;
        }
        let atom = atoms[used.len()];
        for &p in primes {
            if atom.admits(p) && !used.iter().any(|&(_, q)| q == p) {
                used.push((atom, p));
                if assign(atoms, primes, used, row, a, b) {
                    return true;
                }
                used.pop();
            }
        }
        false
    }
    assign(&atoms, &primes, &mut Vec::new(), row, a, b)
}

/// Match the field `Q(sqrt(-x), sqrt(-y))` with computed invariants against
/// a family row: shapes in either orientation and tuple membership.
pub fn row_matches(row: &FamilyRow, x: u64, y: u64, data: &KurodaData) -> bool {
    let tuple_ok = |ha: u64, hb: u64| {
        row.tuples
            .contains(&[ha, hb, data.h3, data.q as u64])
    };
    (shapes_match(row, x, y) && tuple_ok(data.h1, data.h2))
        || (shapes_match(row, y, x) && tuple_ok(data.h2, data.h1))
}

/// Locate the family of an imaginary bicyclic biquadratic field with class
/// number 4, 6 or 7, given its radicands in canonical order and its Kuroda
/// invariants. Returns `(table, row)` or `None` if no family fits.
pub fn classify_family(x: u64, y: u64, data: &KurodaData) -> Option<(u8, u8)> {
    let tables: &[&[FamilyRow]] = match data.h_k {
        4 => &[TABLE1, TABLE2, TABLE3],
        6 => &[TABLE4, TABLE5, TABLE6],
        7 => &[TABLE7],
        _ => return None,
    };
    for table in tables {
        for row in *table {
            if row_matches(row, x, y, data) {
                return Some((row.table, row.row));
            }
        }
    }
    None
}
