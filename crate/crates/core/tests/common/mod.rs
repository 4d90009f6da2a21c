#![allow(dead_code)]

use e8jacobi_core::ansatz::enumerate_monomials;
use e8jacobi_core::graded_ring::{parse_poly, BiDegree, Poly, Rational, AB, LOWER_AB};
use e8jacobi_core::graded_ring::Alphabet;
use num_bigint::BigInt;
use rand::Rng;

pub fn ab(s: &str) -> Poly {
    parse_poly(&LOWER_AB, s).unwrap()
}

pub fn upper(s: &str) -> Poly {
    parse_poly(&AB, s).unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Bidegrees over `ab` with a handful of monomials each.
pub const LOWER_TARGETS: &[(i32, i32)] = &[
    (-8, 2), (0, 1), (4, 1), (-6, 2), (-12, 3), (-2, 2), (-16, 4), (-4, 2), (6, 1), (-10, 3),
];

/// Bidegrees over `AB`.
pub const UPPER_TARGETS: &[(i32, i32)] = &[(4, 1), (8, 2), (10, 2), (12, 3), (16, 5), (8, 1), (12, 4)];

/// Random nonzero homogeneous polynomial at `target`, or zero when the
/// target has no monomials.
pub fn random_poly(rng: &mut impl Rng, alphabet: &'static Alphabet, target: (i32, i32)) -> Poly {
    let monos = enumerate_monomials(alphabet, BiDegree::new(target.0, target.1));
    let mut terms = Vec::new();
    for m in monos {
        if rng.gen_bool(0.6) || terms.is_empty() {
            let mut n = rng.gen_range(-9i64..=9);
            if n == 0 {
                n = 1;
            }
            terms.push((m, q(n, rng.gen_range(1i64..=4))));
        }
    }
    Poly::from_terms(alphabet, terms).unwrap()
}
