//! Exact computation of the invariant Einstein metrics on two exceptional
//! coset spaces and of the Einstein-Randers metrics built from their
//! navigation data.
//!
//! The pipeline is algebraic end to end: the block Ricci components are
//! evaluated in exact rational arithmetic, the Einstein condition becomes a
//! polynomial system, a lexicographic Gröbner basis of the saturated ideal
//! yields a degree-8 elimination polynomial, Sturm-sequence bisection
//! certifies its real roots, and back-substitution through the shape
//! polynomials produces solution tuples with rigorous error bounds. A thin
//! evaluation layer then builds the non-Riemannian Randers metrics from
//! `(h, W)` navigation data.
//!
//! Modules:
//! - [`rational`]: arbitrary-precision exact rationals.
//! - [`polyring`]: sparse multivariate polynomials, lex orders, division.
//! - [`groebner`]: Buchberger, saturation, elimination, shape extraction.
//! - [`realroots`]: Sturm chains, root isolation and certified refinement.
//! - [`einstein`]: the two spaces, Ricci evaluation, the solve pipeline.
//! - [`randers`]: navigation-data evaluation and admissibility.

pub mod einstein;
pub mod groebner;
pub mod polyring;
pub mod randers;
pub mod rational;
pub mod realroots;

pub use einstein::{
    derive_einstein_system, ricci_components, solve_space, solve_space_detailed, verify_solution,
    EinsteinError, MetricParams, RicciComponents, ResidualReport, SolutionTuple, SolvePipeline,
    Space,
};
pub use groebner::{
    buchberger, buchberger_with_budget, elimination_polynomial, s_polynomial, saturate,
    shape_extract, GroebnerBasis, GroebnerError, IdealBasis, DEFAULT_PAIR_BUDGET,
};
pub use polyring::{
    format_polynomial, normal_form, parse_ideal_source, Monomial, MonomialOrder, ParseError,
    PolyError, Polynomial, Ring,
};
pub use randers::{
    block_inner, einstein_randers_family, eval_randers, is_riemannian, NavigationData,
    RandersError, RandersEvaluation, RandersFamily, TangentVector,
};
pub use rational::{ArithmeticError, Rational};
pub use realroots::{
    count_real_roots, isolate_roots, refine_root, sturm_sequence, RootBox, RootError,
    UnivariatePoly,
};
