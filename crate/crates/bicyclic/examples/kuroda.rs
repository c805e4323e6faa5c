//! Kuroda's class number formula for imaginary bicyclic biquadratic fields:
//! h_K = q(K) h1 h2 h3 / 2 with the unit index q(K) in {1, 2}.

use bicyclic::biquad::{kuroda_hk, normalize_field};

fn main() {
    // The field can be given by any two of its three quadratic subfields;
    // normalization recovers the canonical pair of imaginary radicands.
    for (r1, r2) in [(-15, -23), (-15, 23), (-1, -71), (-31, -155), (-1, -2)] {
        let field = normalize_field(r1, r2).unwrap();
        let k = kuroda_hk(&field).unwrap();
        println!(
            "({r1}, {r2}) -> {field}: (h1, h2, h3, q) = ({}, {}, {}, {}), h_K = {}",
            k.h1, k.h2, k.h3, k.q, k.h_k
        );
    }
}
