//! Genus theory: the 2-rank of a quadratic class group is read off the
//! prime factorization of the fundamental discriminant.

use bicyclic::genus::two_rank_discriminant;
use bicyclic::imagquad::{class_group_imag, fundamental_discriminant_imag};
use bicyclic::realquad::{class_number_real, fundamental_discriminant_real};

fn main() {
    for z in [14, 93, 231, 3235] {
        let profile = two_rank_discriminant(fundamental_discriminant_imag(z).unwrap());
        let group = class_group_imag(z).unwrap();
        println!(
            "Q(sqrt(-{z})): t = {}, 2-rank {} -> class group {group}",
            profile.t, profile.r2
        );
        assert_eq!(group.p_rank(2), profile.r2);
    }
    for d in [115, 235, 1155] {
        let profile = two_rank_discriminant(fundamental_discriminant_real(d).unwrap());
        let h = class_number_real(d).unwrap();
        println!("Q(sqrt({d})): 2-rank {}, h = {h}", profile.r2);
        assert_eq!(h % (1 << profile.r2), 0);
    }
}
