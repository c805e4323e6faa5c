//! Fundamental units of real quadratic fields from the continued fraction
//! expansion of sqrt(d), with the narrow and wide class numbers.

use bicyclic::realquad::{class_number_real, fundamental_unit, narrow_class_number};
use bicyclic::realquad::fundamental_discriminant_real;

fn main() {
    for d in [2, 5, 13, 94, 115, 235, 421] {
        let u = fundamental_unit(d).unwrap();
        let h = class_number_real(d).unwrap();
        let h_plus = narrow_class_number(fundamental_discriminant_real(d).unwrap()).unwrap();
        println!(
            "Q(sqrt({d})): unit {u}, norm {}, h = {h}, narrow h = {h_plus}",
            u.norm()
        );
    }
}
