//! The two coset spaces, their exact Ricci components, the derived Einstein
//! polynomial systems, and the end-to-end solve pipeline.
//!
//! The block Ricci formulas are transcribed coefficient tables; everything
//! downstream (system derivation, saturation, Gröbner elimination, root
//! isolation, back-substitution, verification) is computed, not transcribed.

use std::fmt;

use thiserror::Error;

use crate::groebner::{
    buchberger_with_budget, elimination_polynomial, saturate, shape_extract, GroebnerBasis,
    GroebnerError, IdealBasis, DEFAULT_PAIR_BUDGET,
};
use crate::polyring::{Monomial, MonomialOrder, PolyError, Polynomial, Ring};
use crate::rational::Rational;
use crate::realroots::{
    interval_horner, isolate_roots, refine_root, RootBox, RootError, UnivariatePoly,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EinsteinError {
    #[error("metric parameter `{0}` must be positive")]
    NonPositiveParameter(String),
    #[error("scaling factor must be positive")]
    NonPositiveScale,
    #[error("refinement tolerance must be positive")]
    BadEpsilon,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("could not certify the sign of `{0}` after repeated refinement")]
    PositivityUndecided(String),
}

/// Which coset space the computation runs on.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Space {
    E6A4,
    E6A1,
}

impl Space {
    pub const ALL: [Space; 2] = [Space::E6A4, Space::E6A1];

    /// CLI-facing identifier.
    pub fn key(self) -> &'static str {
        match self {
            Space::E6A4 => "e6-a4",
            Space::E6A1 => "e6-a1",
        }
    }

    pub fn from_key(key: &str) -> Option<Self> {
        match key {
            "e6-a4" => Some(Space::E6A4),
            "e6-a1" => Some(Space::E6A1),
            _ => None,
        }
    }

    /// Tangent-space blocks as `(label, dimension)`.
    pub fn blocks(self) -> [(&'static str, u32); 4] {
        match self {
            Space::E6A4 => [("h0", 1), ("A1", 3), ("m1", 40), ("m2", 10)],
            Space::E6A1 => [("h0", 1), ("A4", 24), ("m1", 40), ("m2", 10)],
        }
    }

    pub fn tangent_dim(self) -> u32 {
        self.blocks().iter().map(|&(_, d)| d).sum()
    }

    /// Metric parameter names, aligned with [`Self::blocks`].
    pub fn parameter_names(self) -> [&'static str; 4] {
        match self {
            Space::E6A4 => ["u0", "u2", "x1", "x2"],
            Space::E6A1 => ["u0", "u1", "x1", "x2"],
        }
    }

    /// Name of the fiber-block coefficient (`u2` or `u1`).
    pub fn fiber_param(self) -> &'static str {
        self.parameter_names()[1]
    }

    /// Number of positive Einstein solutions in the normalized slice.
    pub fn expected_solutions(self) -> usize {
        match self {
            Space::E6A4 => 4,
            Space::E6A1 => 2,
        }
    }

    /// The ring `Q[u, x1, x2]` of the derived system with its lex order.
    pub fn system_ring(self) -> (Ring, MonomialOrder) {
        let ring = Ring::new([self.fiber_param(), "x1", "x2"]).expect("valid ring");
        let order = MonomialOrder::lex_default(&ring);
        (ring, order)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// Positive block coefficients `(u0, u, x1, x2)` of an invariant metric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricParams {
    space: Space,
    values: [Rational; 4],
}

impl MetricParams {
    pub fn new(space: Space, values: [Rational; 4]) -> Result<Self, EinsteinError> {
        for (name, v) in space.parameter_names().iter().zip(&values) {
            if !v.is_positive() {
                return Err(EinsteinError::NonPositiveParameter((*name).to_string()));
            }
        }
        Ok(MetricParams { space, values })
    }

    /// Parameters in the `u0 = 1` normalization.
    pub fn with_unit_u0(
        space: Space,
        fiber: Rational,
        x1: Rational,
        x2: Rational,
    ) -> Result<Self, EinsteinError> {
        Self::new(space, [Rational::one(), fiber, x1, x2])
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn values(&self) -> &[Rational; 4] {
        &self.values
    }

    pub fn u0(&self) -> &Rational {
        &self.values[0]
    }

    pub fn fiber(&self) -> &Rational {
        &self.values[1]
    }

    pub fn x1(&self) -> &Rational {
        &self.values[2]
    }

    pub fn x2(&self) -> &Rational {
        &self.values[3]
    }

    /// All four coefficients scaled by `t > 0`.
    pub fn scaled(&self, t: &Rational) -> Result<Self, EinsteinError> {
        if !t.is_positive() {
            return Err(EinsteinError::NonPositiveScale);
        }
        Ok(MetricParams {
            space: self.space,
            values: [
                &self.values[0] * t,
                &self.values[1] * t,
                &self.values[2] * t,
                &self.values[3] * t,
            ],
        })
    }
}

/// The four block Ricci scalars of a metric, in block order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RicciComponents {
    space: Space,
    values: [Rational; 4],
}

impl RicciComponents {
    pub fn space(&self) -> Space {
        self.space
    }

    pub fn values(&self) -> &[Rational; 4] {
        &self.values
    }

    pub fn r_h0(&self) -> &Rational {
        &self.values[0]
    }

    pub fn r_fiber(&self) -> &Rational {
        &self.values[1]
    }

    pub fn r_m1(&self) -> &Rational {
        &self.values[2]
    }

    pub fn r_m2(&self) -> &Rational {
        &self.values[3]
    }

    /// `max_{i,j} |r_i - r_j|`; zero exactly on Einstein metrics.
    pub fn max_pairwise_difference(&self) -> Rational {
        let mut min = self.values[0].clone();
        let mut max = self.values[0].clone();
        for v in &self.values[1..] {
            if *v < min {
                min = v.clone();
            }
            if *v > max {
                max = v.clone();
            }
        }
        max - min
    }
}

/// One block-Ricci formula term: `coeff * u0^e0 * u^e1 * x1^e2 * x2^e3`
/// with integer (possibly negative) exponents.
#[derive(Clone, Copy)]
struct LaurentTerm {
    num: i64,
    den: i64,
    exps: [i64; 4],
}

const fn lt(num: i64, den: i64, exps: [i64; 4]) -> LaurentTerm {
    LaurentTerm { num, den, exps }
}

const R_H0: [LaurentTerm; 2] = [lt(1, 8, [1, 0, -2, 0]), lt(1, 8, [1, 0, 0, -2])];

const E6A4_FIBER: [LaurentTerm; 2] = [lt(1, 24, [0, -1, 0, 0]), lt(5, 24, [0, 1, -2, 0])];
const E6A4_M1: [LaurentTerm; 4] = [
    lt(1, 2, [0, 0, -1, 0]),
    lt(-1, 16, [0, 0, -2, 1]),
    lt(-1, 160, [1, 0, -2, 0]),
    lt(-1, 32, [0, 1, -2, 0]),
];
const E6A4_M2: [LaurentTerm; 3] = [
    lt(1, 4, [0, 0, 0, -1]),
    lt(1, 8, [0, 0, -2, 1]),
    lt(-1, 40, [1, 0, 0, -2]),
];

const E6A1_FIBER: [LaurentTerm; 3] = [
    lt(5, 48, [0, -1, 0, 0]),
    lt(1, 8, [0, 1, -2, 0]),
    lt(1, 48, [0, 1, 0, -2]),
];
const E6A1_M1: [LaurentTerm; 4] = [
    lt(1, 2, [0, 0, -1, 0]),
    lt(-1, 16, [0, 0, -2, 1]),
    lt(-1, 160, [1, 0, -2, 0]),
    lt(-3, 20, [0, 1, -2, 0]),
];
const E6A1_M2: [LaurentTerm; 4] = [
    lt(1, 4, [0, 0, 0, -1]),
    lt(1, 8, [0, 0, -2, 1]),
    lt(-1, 40, [1, 0, 0, -2]),
    lt(-1, 10, [0, 1, 0, -2]),
];

fn block_formula(space: Space, block: usize) -> &'static [LaurentTerm] {
    match (space, block) {
        (_, 0) => &R_H0,
        (Space::E6A4, 1) => &E6A4_FIBER,
        (Space::E6A4, 2) => &E6A4_M1,
        (Space::E6A4, 3) => &E6A4_M2,
        (Space::E6A1, 1) => &E6A1_FIBER,
        (Space::E6A1, 2) => &E6A1_M1,
        (Space::E6A1, 3) => &E6A1_M2,
        _ => unreachable!("block index out of range"),
    }
}

fn eval_laurent(terms: &[LaurentTerm], params: &[Rational; 4]) -> Rational {
    let mut acc = Rational::zero();
    for t in terms {
        let mut v = Rational::new(t.num, t.den).expect("nonzero denominator");
        for (p, &e) in params.iter().zip(&t.exps) {
            if e != 0 {
                v = v * p.pow(e).expect("positive parameter");
            }
        }
        acc = acc + v;
    }
    acc
}

/// Exact block Ricci components of the metric described by `params`.
///
/// Every term of every formula has total degree −1 in the parameters, so
/// `ricci_components(t·p) = (1/t)·ricci_components(p)` exactly.
pub fn ricci_components(params: &MetricParams) -> RicciComponents {
    let space = params.space;
    let values = std::array::from_fn(|i| eval_laurent(block_formula(space, i), &params.values));
    RicciComponents { space, values }
}

/// Derives the three Einstein equations `r_h0 = r_block` at `u0 = 1`,
/// cleared of denominators and scaled to integer content 1.
///
/// Output lives in `Q[u, x1, x2]` (fiber coefficient first) and reproduces
/// the reference generator systems sign for sign.
pub fn derive_einstein_system(space: Space) -> Vec<Polynomial> {
    let (ring, _) = space.system_ring();
    (1..4)
        .map(|block| {
            let mut diff: Vec<(Rational, [i64; 3])> = Vec::new();
            for t in block_formula(space, 0) {
                diff.push(substitute_u0(t, 1));
            }
            for t in block_formula(space, block) {
                diff.push(substitute_u0(t, -1));
            }
            clear_denominators(&ring, &diff)
        })
        .collect()
}

/// Sets `u0 = 1` and applies `sign`, keeping the `(u, x1, x2)` exponents.
fn substitute_u0(t: &LaurentTerm, sign: i64) -> (Rational, [i64; 3]) {
    let coeff = Rational::new(sign * t.num, t.den).expect("nonzero denominator");
    (coeff, [t.exps[1], t.exps[2], t.exps[3]])
}

/// Multiplies a Laurent-term sum by the least common denominator (numeric and
/// monomial) and normalizes to integer content 1, preserving sign.
fn clear_denominators(ring: &Ring, terms: &[(Rational, [i64; 3])]) -> Polynomial {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::One;

    let mut den_lcm = BigInt::one();
    for (c, _) in terms {
        den_lcm = den_lcm.lcm(c.denominator());
    }
    let mut shift = [0i64; 3];
    for (_, exps) in terms {
        for (s, &e) in shift.iter_mut().zip(exps) {
            *s = (*s).max(-e);
        }
    }
    let poly = Polynomial::from_terms(
        ring,
        terms.iter().map(|(c, exps)| {
            let mono = Monomial::from_exps(
                exps.iter()
                    .zip(&shift)
                    .map(|(&e, &s)| u32::try_from(e + s).expect("cleared exponent"))
                    .collect(),
            );
            (mono, c * Rational::from_integer(den_lcm.clone()))
        }),
    );
    poly.integer_primitive()
}

/// One positive Einstein solution in the `u0 = 1` slice, with certified
/// per-parameter error bounds and the common Ricci value.
#[derive(Clone, Debug)]
pub struct SolutionTuple {
    pub params: MetricParams,
    /// Error bounds aligned with the parameters; `u0` is exact.
    pub param_errors: [Rational; 4],
    /// The common Ricci component value `K` at the rational estimate.
    pub einstein_constant: Rational,
    /// The certified enclosure of the `x2` coordinate.
    pub x2_box: RootBox,
}

impl SolutionTuple {
    pub fn space(&self) -> Space {
        self.params.space()
    }
}

/// Everything the pipeline produced on the way to the solutions.
#[derive(Clone, Debug)]
pub struct SolvePipeline {
    pub space: Space,
    pub system: Vec<Polynomial>,
    pub groebner: GroebnerBasis,
    pub elimination: UnivariatePoly,
    pub isolated: Vec<RootBox>,
    pub refined: Vec<RootBox>,
    pub solutions: Vec<SolutionTuple>,
    pub used_shape_fallback: bool,
}

/// Runs the full pipeline with the default Gröbner budget.
pub fn solve_space(space: Space, eps: &Rational) -> Result<Vec<SolutionTuple>, EinsteinError> {
    Ok(solve_space_detailed(space, eps, DEFAULT_PAIR_BUDGET)?.solutions)
}

/// derive → saturate → Gröbner → eliminate → isolate → refine →
/// back-substitute → positivity filter.
pub fn solve_space_detailed(
    space: Space,
    eps: &Rational,
    budget: usize,
) -> Result<SolvePipeline, EinsteinError> {
    if !eps.is_positive() {
        return Err(EinsteinError::BadEpsilon);
    }
    let system = derive_einstein_system(space);
    let (_, order) = space.system_ring();
    let basis = IdealBasis::new(system.clone(), order)?;
    let saturated = saturate(&basis, &[space.fiber_param(), "x1", "x2"])?;
    let gb = buchberger_with_budget(&saturated, budget)?;

    let elim_poly = elimination_polynomial(&gb, "x2")?;
    let x2_idx = gb.ring().var_index("x2").expect("x2 in ring");
    let elimination = UnivariatePoly::from_polynomial(&elim_poly, x2_idx)?;
    let elimination = elimination.squarefree_part()?;

    let isolated = isolate_roots(&elimination)?;

    let fiber = space.fiber_param();
    let shape = shape_extract(&gb, &[fiber, "x1"], "x2");
    let (dependents, used_shape_fallback) = match shape {
        Ok(map) => {
            let u = map[fiber].univariate_coeffs(x2_idx)?;
            let x1 = map["x1"].univariate_coeffs(x2_idx)?;
            (DependentSource::Shape { u, x1 }, false)
        }
        Err(GroebnerError::ShapeFailure(..)) => (DependentSource::Triangular, true),
        Err(e) => return Err(e.into()),
    };

    let mut solutions = Vec::new();
    let mut refined_boxes = Vec::with_capacity(isolated.len());
    for root in &isolated {
        let refined = refine_root(&elimination, root, eps)?;
        match &dependents {
            DependentSource::Shape { u, x1 } => {
                if let Some(tuple) = shape_solution(space, &elimination, &refined, u, x1, eps)? {
                    solutions.push(tuple);
                }
            }
            DependentSource::Triangular => {
                solutions.extend(triangular_solutions(space, &gb, &elimination, &refined, eps)?);
            }
        }
        refined_boxes.push(refined);
    }

    solutions.sort_by(|a, b| {
        a.params
            .x2()
            .cmp(b.params.x2())
            .then_with(|| a.params.x1().cmp(b.params.x1()))
            .then_with(|| a.params.fiber().cmp(b.params.fiber()))
    });
    solutions.dedup_by(|a, b| a.params == b.params);

    Ok(SolvePipeline {
        space,
        system,
        groebner: gb,
        elimination,
        isolated,
        refined: refined_boxes,
        solutions,
        used_shape_fallback,
    })
}

enum DependentSource {
    Shape {
        u: Vec<Rational>,
        x1: Vec<Rational>,
    },
    Triangular,
}

fn horner(coeffs: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Back-substitutes through the shape polynomials with interval propagation.
/// The root is refined further until every parameter's sign is certified and
/// every propagated error bound is at most `eps`; the shape polynomials can
/// amplify the root error by their derivative magnitude.
fn shape_solution(
    space: Space,
    elimination: &UnivariatePoly,
    refined: &RootBox,
    u_coeffs: &[Rational],
    x1_coeffs: &[Rational],
    eps: &Rational,
) -> Result<Option<SolutionTuple>, EinsteinError> {
    let half = Rational::new(1, 2).unwrap();
    let mut root = refined.clone();
    let mut shrink = eps.clone();
    for _ in 0..256 {
        let u_enc = interval_horner(u_coeffs, &root.lower, &root.upper);
        let x1_enc = interval_horner(x1_coeffs, &root.lower, &root.upper);
        let x2_enc = (root.lower.clone(), root.upper.clone());
        let signs = [sign_of(&u_enc), sign_of(&x1_enc), sign_of(&x2_enc)];
        if signs.iter().all(Option::is_some) {
            if signs.contains(&Some(-1)) {
                return Ok(None);
            }
            let u_est = horner(u_coeffs, &root.value_estimate);
            let x1_est = horner(x1_coeffs, &root.value_estimate);
            let param_errors = [
                Rational::zero(),
                enclosure_radius(&u_enc, &u_est),
                enclosure_radius(&x1_enc, &x1_est),
                root.error_bound.clone(),
            ];
            if param_errors.iter().all(|e| e <= eps) {
                let params = MetricParams::with_unit_u0(
                    space,
                    u_est.clone(),
                    x1_est.clone(),
                    root.value_estimate.clone(),
                )?;
                let einstein_constant = ricci_components(&params).r_h0().clone();
                return Ok(Some(SolutionTuple {
                    params,
                    param_errors,
                    einstein_constant,
                    x2_box: root,
                }));
            }
        }
        shrink = shrink * &half;
        root = refine_root(elimination, &root, &shrink)?;
    }
    Err(EinsteinError::PositivityUndecided(
        "back-substituted parameter".to_string(),
    ))
}

fn sign_of(enc: &(Rational, Rational)) -> Option<i32> {
    if enc.0.is_positive() {
        Some(1)
    } else if enc.1.is_negative() {
        Some(-1)
    } else {
        None
    }
}

fn enclosure_radius(enc: &(Rational, Rational), estimate: &Rational) -> Rational {
    (&enc.1 - estimate).max((estimate - &enc.0).abs()).abs()
}

/// Fallback for bases not in shape position: solve the triangular lex chain
/// numerically root by root, then screen candidates against the z-free basis
/// elements.
///
/// When the root box pins an exact rational root of the elimination
/// polynomial, the fiber is solved by exact substitution and the resulting
/// boxes are certified. Otherwise the dependent-variable error bounds are
/// first-order sensitivity estimates obtained by re-solving at the box
/// endpoints, not rigorous enclosures; the shape path is the certified one.
fn triangular_solutions(
    space: Space,
    gb: &GroebnerBasis,
    elimination: &UnivariatePoly,
    x2_root: &RootBox,
    eps: &Rational,
) -> Result<Vec<SolutionTuple>, EinsteinError> {
    let ring = gb.ring();
    let fiber = space.fiber_param();
    let u_idx = ring.var_index(fiber).expect("fiber var");
    let x1_idx = ring.var_index("x1").expect("x1 var");
    let x2_idx = ring.var_index("x2").expect("x2 var");
    let z_idx = ring.var_index("z").expect("saturation var");

    // Residual screen for candidate tuples; the true solutions of the refined
    // root sit many orders of magnitude below spurious branch crossings.
    let screen: Rational = "1e-6".parse().expect("literal");

    let simplest = Rational::simplest_in(&x2_root.lower, &x2_root.upper);
    let exact_x2 = elimination.eval(&simplest).is_zero();
    let (x2_val, x2_err) = if exact_x2 {
        (simplest, Rational::zero())
    } else {
        (x2_root.value_estimate.clone(), x2_root.error_bound.clone())
    };

    let x1_vars = [x1_idx, x2_idx];
    let x1_mid = stage_roots(gb, &x1_vars, x1_idx, &[(x2_idx, &x2_val)], eps)?;
    let (x1_at_lo, x1_at_hi) = if exact_x2 {
        (None, None)
    } else {
        (
            Some(stage_roots(gb, &x1_vars, x1_idx, &[(x2_idx, &x2_root.lower)], eps)?),
            Some(stage_roots(gb, &x1_vars, x1_idx, &[(x2_idx, &x2_root.upper)], eps)?),
        )
    };

    let crude = x2_root.width();
    let mut tuples = Vec::new();
    for xb in &x1_mid {
        let x1_est = xb.value_estimate.clone();
        if !x1_est.is_positive() {
            continue;
        }
        let x1_err = if exact_x2 {
            xb.error_bound.clone()
        } else {
            sensitivity_bound(xb, [x1_at_lo.as_deref(), x1_at_hi.as_deref()], &crude)
        };

        let u_vars = [u_idx, x1_idx, x2_idx];
        let u_mid = stage_roots(
            gb,
            &u_vars,
            u_idx,
            &[(x2_idx, &x2_val), (x1_idx, &x1_est)],
            eps,
        )?;
        let x1_lo = &x1_est - &x1_err;
        let x1_hi = &x1_est + &x1_err;
        let corner_lo = stage_roots(
            gb,
            &u_vars,
            u_idx,
            &[(x2_idx, if exact_x2 { &x2_val } else { &x2_root.lower }), (x1_idx, &x1_lo)],
            eps,
        )?;
        let corner_hi = stage_roots(
            gb,
            &u_vars,
            u_idx,
            &[(x2_idx, if exact_x2 { &x2_val } else { &x2_root.upper }), (x1_idx, &x1_hi)],
            eps,
        )?;

        for ub in &u_mid {
            let u_est = ub.value_estimate.clone();
            if !u_est.is_positive() {
                continue;
            }
            let u_err = sensitivity_bound(ub, [Some(&corner_lo[..]), Some(&corner_hi[..])], &crude);

            let Ok(params) =
                MetricParams::with_unit_u0(space, u_est.clone(), x1_est.clone(), x2_val.clone())
            else {
                continue;
            };
            let mut point = vec![Rational::zero(); ring.num_vars()];
            point[u_idx] = u_est.clone();
            point[x1_idx] = x1_est.clone();
            point[x2_idx] = x2_val.clone();
            let point_ok = gb
                .elements
                .iter()
                .filter(|el| el.degree_in(z_idx) == 0)
                .all(|el| el.eval(&point).abs() <= screen);
            if !point_ok {
                continue;
            }
            let einstein_constant = ricci_components(&params).r_h0().clone();
            let mut x2_box = x2_root.clone();
            x2_box.value_estimate = x2_val.clone();
            tuples.push(SolutionTuple {
                params,
                param_errors: [Rational::zero(), u_err.clone(), x1_err.clone(), x2_err.clone()],
                einstein_constant,
                x2_box,
            });
        }
    }
    Ok(tuples)
}

/// Positive real roots of the first basis element supported on `allowed`
/// with positive degree in `target`, after substituting `assignments`.
fn stage_roots(
    gb: &GroebnerBasis,
    allowed: &[usize],
    target: usize,
    assignments: &[(usize, &Rational)],
    eps: &Rational,
) -> Result<Vec<RootBox>, EinsteinError> {
    let supported = |p: &Polynomial| {
        p.vars_present()
            .iter()
            .enumerate()
            .all(|(i, &present)| !present || allowed.contains(&i))
    };
    for el in &gb.elements {
        if !supported(el) || el.degree_in(target) == 0 {
            continue;
        }
        let mut sub = el.clone();
        for (v, val) in assignments {
            sub = sub.substitute(*v, val);
        }
        if sub.is_zero() {
            // The element vanishes identically on this fiber; try the next.
            continue;
        }
        let uni = UnivariatePoly::from_polynomial(&sub, target)?;
        if uni.degree().unwrap_or(0) == 0 {
            continue;
        }
        let uni = uni.squarefree_part()?;
        let mut out = Vec::new();
        for b in isolate_roots(&uni)? {
            out.push(refine_root(&uni, &b, eps)?);
        }
        return Ok(out);
    }
    Ok(Vec::new())
}

/// First-order error bound: distance to the nearest root of each perturbed
/// solve plus that root's own box radius; falls back to `crude` when a
/// perturbed solve lost the root.
fn sensitivity_bound(
    mid: &RootBox,
    perturbed: [Option<&[RootBox]>; 2],
    crude: &Rational,
) -> Rational {
    let mut bound = mid.error_bound.clone();
    for set in perturbed.into_iter().flatten() {
        let nearest = set.iter().min_by(|a, b| {
            (&a.value_estimate - &mid.value_estimate)
                .abs()
                .cmp(&(&b.value_estimate - &mid.value_estimate).abs())
        });
        match nearest {
            Some(n) => {
                let drift = (&n.value_estimate - &mid.value_estimate).abs() + &n.error_bound;
                bound = bound.max(drift);
            }
            None => bound = bound.max(crude.clone()),
        }
    }
    bound
}

/// The residual report of [`verify_solution`].
#[derive(Clone, Debug)]
pub struct ResidualReport {
    pub components: RicciComponents,
    pub max_residual: Rational,
    pub einstein_constant: Rational,
    pub tol: Rational,
    pub pass: bool,
}

/// Evaluates the Einstein condition exactly at a rational parameter point.
pub fn verify_solution(params: &MetricParams, tol: &Rational) -> ResidualReport {
    let components = ricci_components(params);
    let max_residual = components.max_pairwise_difference();
    let einstein_constant = components.r_h0().clone();
    let pass = max_residual <= *tol;
    ResidualReport {
        components,
        max_residual,
        einstein_constant,
        tol: tol.clone(),
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::format_polynomial;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn all_ones(space: Space) -> MetricParams {
        MetricParams::new(
            space,
            [Rational::one(), Rational::one(), Rational::one(), Rational::one()],
        )
        .unwrap()
    }

    #[test]
    fn space_descriptors() {
        assert_eq!(Space::E6A4.tangent_dim(), 54);
        assert_eq!(Space::E6A1.tangent_dim(), 75);
        assert_eq!(Space::E6A4.blocks()[1], ("A1", 3));
        assert_eq!(Space::E6A1.blocks()[1], ("A4", 24));
        assert_eq!(Space::from_key("e6-a4"), Some(Space::E6A4));
        assert_eq!(Space::from_key("e8"), None);
    }

    #[test]
    fn ricci_at_all_ones() {
        let ricci = ricci_components(&all_ones(Space::E6A4));
        assert_eq!(ricci.values(), &[r(1, 4), r(1, 4), r(2, 5), r(7, 20)]);
        assert_eq!(ricci.max_pairwise_difference(), r(3, 20));

        let ricci = ricci_components(&all_ones(Space::E6A1));
        assert_eq!(ricci.values(), &[r(1, 4), r(1, 4), r(9, 32), r(1, 4)]);
    }

    #[test]
    fn ricci_scales_inverse_linearly() {
        let p = all_ones(Space::E6A4);
        let doubled = p.scaled(&r(2, 1)).unwrap();
        let base = ricci_components(&p);
        let scaled = ricci_components(&doubled);
        for (a, b) in base.values().iter().zip(scaled.values()) {
            assert_eq!(&(a * r(1, 2)), b);
        }
    }

    #[test]
    fn nonpositive_parameters_rejected() {
        assert!(matches!(
            MetricParams::with_unit_u0(Space::E6A4, r(-1, 2), r(1, 1), r(1, 1)),
            Err(EinsteinError::NonPositiveParameter(_))
        ));
        assert!(MetricParams::with_unit_u0(Space::E6A4, Rational::zero(), r(1, 1), r(1, 1)).is_err());
    }

    #[test]
    fn derived_systems_match_the_printed_generators() {
        let (ring, ord) = Space::E6A4.system_ring();
        let system = derive_einstein_system(Space::E6A4);
        let expected = [
            "-x1^2*x2^2 - 5*x2^2*u2^2 + 3*x1^2*u2 + 3*x2^2*u2",
            "-80*x1*x2^2 + 10*x2^3 + 20*x1^2 + 21*x2^2 + 5*x2^2*u2",
            "-10*x1^2*x2 - 5*x2^3 + 6*x1^2 + 5*x2^2",
        ];
        for (f, want) in system.iter().zip(expected) {
            assert_eq!(f, &Polynomial::parse(&ring, want).unwrap());
        }
        // Canonical rendering is pinned for the golden CLI output.
        assert_eq!(
            format_polynomial(&system[0], &ord),
            "-5*u2^2*x2^2 + 3*u2*x1^2 + 3*u2*x2^2 - x1^2*x2^2"
        );

        let (ring, _) = Space::E6A1.system_ring();
        let system = derive_einstein_system(Space::E6A1);
        let expected = [
            "-5*x1^2*x2^2 - 6*x2^2*u1^2 - x1^2*u1^2 + 6*x1^2*u1 + 6*x2^2*u1",
            "-80*x1*x2^2 + 10*x2^3 + 20*x1^2 + 21*x2^2 + 24*x2^2*u1",
            "-10*x1^2*x2 - 5*x2^3 + 6*x1^2 + 5*x2^2 + 4*x1^2*u1",
        ];
        for (f, want) in system.iter().zip(expected) {
            assert_eq!(f, &Polynomial::parse(&ring, want).unwrap());
        }
    }

    // Independent expansion oracle: multiplying the Ricci differences by the
    // known least common denominators must reproduce the derived system.
    #[test]
    fn derivation_cross_check_by_fixed_multipliers() {
        for space in Space::ALL {
            let (ring, _) = space.system_ring();
            let system = derive_einstein_system(space);
            // Laurent difference terms at u0 = 1, transcribed independently
            // of clear_denominators: multiplier exponents per equation.
            let lcds: [(i64, [i64; 3]); 3] = match space {
                Space::E6A4 => [(24, [1, 2, 2]), (160, [0, 2, 2]), (40, [0, 2, 2])],
                Space::E6A1 => [(48, [1, 2, 2]), (160, [0, 2, 2]), (40, [0, 2, 2])],
            };
            for (eq, (num, mexp)) in (1..4).zip(lcds) {
                let mut expanded = Polynomial::zero(&ring);
                let mut push = |t: &LaurentTerm, sign: i64| {
                    let (c, exps) = substitute_u0(t, sign);
                    let shifted: Vec<u32> = exps
                        .iter()
                        .zip(&mexp)
                        .map(|(&e, &s)| u32::try_from(e + s).unwrap())
                        .collect();
                    let term = Polynomial::from_terms(
                        &ring,
                        [(
                            Monomial::from_exps(shifted),
                            c * Rational::from(num),
                        )],
                    );
                    expanded = expanded.clone() + term;
                };
                for t in block_formula(space, 0) {
                    push(t, 1);
                }
                for t in block_formula(space, eq) {
                    push(t, -1);
                }
                assert_eq!(expanded, system[eq - 1], "equation {eq} on {space}");
            }
        }
    }

    #[test]
    fn reference_tuples_nearly_satisfy_the_einstein_condition() {
        // The printed decimals carry numerical error well above their last
        // digit; exact evaluation puts the first tuple's residual near 2.7e-6.
        let params = MetricParams::with_unit_u0(
            Space::E6A4,
            "0.1141930615".parse().unwrap(),
            "1.200678505".parse().unwrap(),
            "0.6513015810".parse().unwrap(),
        )
        .unwrap();
        let report = verify_solution(&params, &"1e-5".parse().unwrap());
        assert!(report.pass);
        assert!(report.max_residual > "1e-7".parse().unwrap());
        // K ~ 0.3814 at the first tuple.
        assert_eq!(report.einstein_constant.to_decimal(4), "0.3814");

        // Second tuple passes at 1e-6.
        let params = MetricParams::with_unit_u0(
            Space::E6A4,
            "1.746579387".parse().unwrap(),
            "0.9798479028".parse().unwrap(),
            "0.6770950751".parse().unwrap(),
        )
        .unwrap();
        assert!(verify_solution(&params, &"1e-6".parse().unwrap()).pass);
    }

    #[test]
    fn triangular_fallback_on_a_non_shape_basis() {
        use crate::groebner::{buchberger, IdealBasis};
        // u2 is pinned, x1 is quadratic (shape fails), x2 = 1/2 exactly.
        let ring = Ring::new(["z", "u2", "x1", "x2"]).unwrap();
        let ord = MonomialOrder::lex(&ring, &["z", "u2", "x1", "x2"]).unwrap();
        let gens = vec![
            Polynomial::parse(&ring, "u2 - 1").unwrap(),
            Polynomial::parse(&ring, "x1^2 - 2").unwrap(),
            Polynomial::parse(&ring, "2*x2 - 1").unwrap(),
            Polynomial::parse(&ring, "z*u2*x1*x2 - 1").unwrap(),
        ];
        let gb = buchberger(&IdealBasis::new(gens, ord).unwrap()).unwrap();
        assert!(matches!(
            shape_extract(&gb, &["u2", "x1"], "x2"),
            Err(GroebnerError::ShapeFailure(..))
        ));

        let elim = elimination_polynomial(&gb, "x2").unwrap();
        let x2_idx = gb.ring().var_index("x2").unwrap();
        let elim = UnivariatePoly::from_polynomial(&elim, x2_idx).unwrap();
        let boxes = isolate_roots(&elim).unwrap();
        assert_eq!(boxes.len(), 1);
        let eps: Rational = "1e-12".parse().unwrap();
        let refined = refine_root(&elim, &boxes[0], &eps).unwrap();
        let tuples =
            triangular_solutions(Space::E6A4, &gb, &elim, &refined, &eps).unwrap();
        assert_eq!(tuples.len(), 1);
        let t = &tuples[0];
        // Exact rational root detected: x2 = 1/2 exactly, error zero.
        assert_eq!(t.params.x2(), &r(1, 2));
        assert!(t.param_errors[3].is_zero());
        // x1 is the positive sqrt(2), certified to eps.
        let x1 = t.params.x1();
        assert!((x1 * x1 - Rational::from(2)).abs() < "1e-11".parse().unwrap());
        assert!(t.param_errors[2] <= eps);
        // u2 = 1 up to the stage tolerance.
        assert!((t.params.fiber() - &Rational::one()).abs() <= "1e-11".parse().unwrap());
    }

    #[test]
    fn all_ones_fails_verification_with_exact_residual() {
        let report = verify_solution(&all_ones(Space::E6A4), &"1e-8".parse().unwrap());
        assert!(!report.pass);
        assert_eq!(report.max_residual, r(3, 20));
    }

    proptest! {
        // Degree(-1) homogeneity, exact in rational arithmetic.
        #[test]
        fn homogeneity(
            un in 1i64..40, ud in 1i64..40,
            xn in 1i64..40, xd in 1i64..40,
            yn in 1i64..40, yd in 1i64..40,
            tn in 1i64..100, td in 1i64..10,
        ) {
            for space in Space::ALL {
                let p = MetricParams::with_unit_u0(space, r(un, ud), r(xn, xd), r(yn, yd)).unwrap();
                let t = r(tn, td);
                let scaled = p.scaled(&t).unwrap();
                let base = ricci_components(&p);
                let after = ricci_components(&scaled);
                let tinv = t.recip().unwrap();
                for (a, b) in base.values().iter().zip(after.values()) {
                    prop_assert_eq!(&(a * &tinv), b);
                }
            }
        }
    }
}
