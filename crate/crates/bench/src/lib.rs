//! Shared fixtures for the pipeline benchmarks.

use einstein_randers::{IdealBasis, MonomialOrder, Polynomial, Rational, Ring, UnivariatePoly};

/// The two saturated ideal bases the solve pipeline hands to Buchberger.
pub fn saturated_basis(space: einstein_randers::Space) -> IdealBasis {
    let system = einstein_randers::derive_einstein_system(space);
    let (_, order) = space.system_ring();
    let basis = IdealBasis::new(system, order).expect("nonempty system");
    einstein_randers::saturate(&basis, &[space.fiber_param(), "x1", "x2"]).expect("fresh z")
}

/// The printed degree-8 elimination polynomial for e6-a4.
pub fn elimination_a4() -> UnivariatePoly {
    let coeffs: [i64; 9] = [
        142129,
        -1183780,
        74376100,
        -491681700,
        9948352750,
        -48116787500,
        94104102500,
        -82709987500,
        27263765625,
    ];
    UnivariatePoly::from_i64(&coeffs)
}

/// The twisted-cubic ideal, a small Gröbner workload.
pub fn twisted_cubic() -> IdealBasis {
    let ring = Ring::new(["x", "y", "z"]).expect("valid ring");
    let order = MonomialOrder::lex_default(&ring);
    let gens = vec![
        Polynomial::parse(&ring, "x^2 - y").expect("parses"),
        Polynomial::parse(&ring, "x^3 - z").expect("parses"),
    ];
    IdealBasis::new(gens, order).expect("nonempty")
}

pub fn eps(digits: i64) -> Rational {
    Rational::new(1, 10).unwrap().pow(digits).unwrap()
}
