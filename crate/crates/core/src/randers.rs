//! Einstein-Randers metrics from navigation data `(h, W)` on the solved
//! spaces.
//!
//! `h` is an invariant Einstein metric (a solution tuple) and `W = w0·e` is
//! supported on the one-dimensional `h0` block, the invariant direction the
//! construction uses. Admissibility demands `λ = 1 − h(W,W) > 0`; the
//! resulting metric is Riemannian exactly when `w0 = 0`.
//!
//! The defining expression takes one square root, so evaluation returns a
//! midpoint value together with a certified error bound derived from a
//! 30-digit rational enclosure of the root.
//!
//! The Killing property of the invariant extension of `W` follows from
//! `W ∈ h0 ⊂ h` and the Ad(H)-invariance of the metric; it is an assumption
//! of this module, not something it re-checks numerically (doing so would
//! need explicit structure constants for the ambient group).

use thiserror::Error;

use crate::einstein::{MetricParams, SolutionTuple, Space};
use crate::rational::Rational;

/// Internal precision of the square-root enclosure, in decimal digits.
pub const SQRT_DIGITS: u32 = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RandersError {
    #[error("navigation data is inadmissible: 1 - h(W,W) = {lambda} is not positive")]
    Inadmissible { lambda: Rational },
    #[error("block `{block}` expects {expected} components, got {got}")]
    DimensionMismatch {
        block: &'static str,
        expected: u32,
        got: usize,
    },
    #[error("tangent vector does not belong to the metric's space")]
    SpaceMismatch,
    #[error("solution index {index} out of range ({count} solutions)")]
    BadSolutionIndex { index: usize, count: usize },
}

/// A tangent vector grouped by the four metric blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentVector {
    space: Space,
    blocks: [Vec<Rational>; 4],
}

impl TangentVector {
    pub fn new(space: Space, blocks: [Vec<Rational>; 4]) -> Result<Self, RandersError> {
        for ((label, dim), values) in space.blocks().iter().zip(&blocks) {
            if values.len() != *dim as usize {
                return Err(RandersError::DimensionMismatch {
                    block: label,
                    expected: *dim,
                    got: values.len(),
                });
            }
        }
        Ok(TangentVector { space, blocks })
    }

    pub fn zero(space: Space) -> Self {
        let blocks = space.blocks().map(|(_, d)| vec![Rational::zero(); d as usize]);
        TangentVector { space, blocks }
    }

    /// The unit vector spanning the one-dimensional `h0` block.
    pub fn unit_h0(space: Space) -> Self {
        let mut v = Self::zero(space);
        v.blocks[0][0] = Rational::one();
        v
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn blocks(&self) -> &[Vec<Rational>; 4] {
        &self.blocks
    }

    pub fn set_component(&mut self, block: usize, index: usize, value: Rational) {
        self.blocks[block][index] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(Rational::is_zero)
    }

    pub fn negated(&self) -> Self {
        TangentVector {
            space: self.space,
            blocks: self
                .blocks
                .clone()
                .map(|b| b.into_iter().map(|c| -c).collect()),
        }
    }

    pub fn scaled(&self, t: &Rational) -> Self {
        TangentVector {
            space: self.space,
            blocks: self
                .blocks
                .clone()
                .map(|b| b.into_iter().map(|c| c * t).collect()),
        }
    }

    pub fn add(&self, other: &TangentVector) -> Result<Self, RandersError> {
        if self.space != other.space {
            return Err(RandersError::SpaceMismatch);
        }
        let mut out = self.clone();
        for (a, b) in out.blocks.iter_mut().zip(&other.blocks) {
            for (x, y) in a.iter_mut().zip(b) {
                *x = &*x + y;
            }
        }
        Ok(out)
    }
}

/// `h(y, z)`: the block-weighted inner product with weights
/// `(u0, u, x1, x2)` on `(h0, fiber, m1, m2)`.
pub fn block_inner(
    h: &MetricParams,
    y: &TangentVector,
    z: &TangentVector,
) -> Result<Rational, RandersError> {
    if y.space() != h.space() || z.space() != h.space() {
        return Err(RandersError::SpaceMismatch);
    }
    let mut acc = Rational::zero();
    for ((coeff, yb), zb) in h.values().iter().zip(&y.blocks).zip(&z.blocks) {
        let mut dot = Rational::zero();
        for (a, b) in yb.iter().zip(zb) {
            dot = dot + a * b;
        }
        acc = acc + coeff * &dot;
    }
    Ok(acc)
}

/// Navigation data: an Einstein metric `h` plus `W = w0·e` along `h0`,
/// admissible when `λ = 1 − u0·w0² > 0`.
#[derive(Clone, Debug)]
pub struct NavigationData {
    h: MetricParams,
    w0: Rational,
    lambda: Rational,
}

impl NavigationData {
    pub fn new(h: MetricParams, w0: Rational) -> Result<Self, RandersError> {
        let lambda = Rational::one() - h.u0() * &(&w0 * &w0);
        if !lambda.is_positive() {
            return Err(RandersError::Inadmissible { lambda });
        }
        Ok(NavigationData { h, w0, lambda })
    }

    pub fn space(&self) -> Space {
        self.h.space()
    }

    pub fn h(&self) -> &MetricParams {
        &self.h
    }

    pub fn w0(&self) -> &Rational {
        &self.w0
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn w_vector(&self) -> TangentVector {
        TangentVector::unit_h0(self.space()).scaled(&self.w0)
    }
}

/// One evaluation of `F = α + β`; `f_value = alpha_part + beta_part` holds
/// exactly and `|F_true − f_value| ≤ error_bound`.
#[derive(Clone, Debug)]
pub struct RandersEvaluation {
    pub f_value: Rational,
    pub alpha_part: Rational,
    pub beta_part: Rational,
    pub error_bound: Rational,
}

/// The navigation formula
/// `F(y) = (sqrt(h(W,y)^2 + h(y,y)·λ) − h(W,y)) / λ`.
pub fn eval_randers(
    nav: &NavigationData,
    y: &TangentVector,
) -> Result<RandersEvaluation, RandersError> {
    let w = nav.w_vector();
    let h_wy = block_inner(&nav.h, &w, y)?;
    let h_yy = block_inner(&nav.h, y, y)?;
    let lambda = nav.lambda();
    let disc = &h_wy * &h_wy + &h_yy * lambda;
    let (lo, hi) = disc
        .sqrt_enclosure(SQRT_DIGITS)
        .expect("discriminant is nonnegative");
    let half = Rational::new(1, 2).unwrap();
    let sqrt_mid = (&lo + &hi) * &half;
    let alpha_part = sqrt_mid.checked_div(lambda).expect("lambda positive");
    let beta_part = (-&h_wy).checked_div(lambda).expect("lambda positive");
    let error_bound = ((hi - lo) * half).checked_div(lambda).expect("lambda positive");
    Ok(RandersEvaluation {
        f_value: &alpha_part + &beta_part,
        alpha_part,
        beta_part,
        error_bound,
    })
}

/// A Randers metric is Riemannian iff it is reversible iff `W = 0`.
pub fn is_riemannian(nav: &NavigationData) -> bool {
    nav.w0.is_zero()
}

/// One member of the Einstein-Randers family over a stored solution.
///
/// The navigation vector is a Killing field of `h`, so the Randers metric
/// inherits the Einstein constant of `h` unchanged.
#[derive(Clone, Debug)]
pub struct RandersFamily {
    pub nav: NavigationData,
    pub einstein_constant: Rational,
    pub riemannian: bool,
}

/// Builds admissible navigation data over `solutions[index]` with `W = w0·e`.
pub fn einstein_randers_family(
    space: Space,
    solutions: &[SolutionTuple],
    index: usize,
    w0: Rational,
) -> Result<RandersFamily, RandersError> {
    let sol = solutions.get(index).ok_or(RandersError::BadSolutionIndex {
        index,
        count: solutions.len(),
    })?;
    if sol.space() != space {
        return Err(RandersError::SpaceMismatch);
    }
    let riemannian = w0.is_zero();
    let nav = NavigationData::new(sol.params.clone(), w0)?;
    Ok(RandersFamily {
        nav,
        einstein_constant: sol.einstein_constant.clone(),
        riemannian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::einstein::ricci_components;
    use crate::realroots::RootBox;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn ones(space: Space) -> MetricParams {
        MetricParams::new(
            space,
            [Rational::one(), Rational::one(), Rational::one(), Rational::one()],
        )
        .unwrap()
    }

    fn unit_m1(space: Space) -> TangentVector {
        let mut v = TangentVector::zero(space);
        v.set_component(2, 0, Rational::one());
        v
    }

    #[test]
    fn block_inner_examples() {
        let space = Space::E6A4;
        let y = unit_m1(space);
        assert_eq!(block_inner(&ones(space), &y, &y).unwrap(), Rational::one());

        let h = MetricParams::new(
            space,
            [Rational::one(), Rational::one(), r(2, 1), Rational::one()],
        )
        .unwrap();
        assert_eq!(block_inner(&h, &y, &y).unwrap(), r(2, 1));

        let z = TangentVector::unit_h0(space);
        assert_eq!(block_inner(&h, &y, &z).unwrap(), Rational::zero());

        let bad = TangentVector::new(space, [vec![Rational::one()], vec![], vec![], vec![]]);
        assert!(matches!(
            bad,
            Err(RandersError::DimensionMismatch { block: "A1", .. })
        ));
    }

    #[test]
    fn riemannian_limit_is_the_norm_of_h() {
        let nav = NavigationData::new(ones(Space::E6A4), Rational::zero()).unwrap();
        let mut y = unit_m1(Space::E6A4);
        y.set_component(3, 2, r(3, 2));
        let eval = eval_randers(&nav, &y).unwrap();
        // h(y,y) = 1 + 9/4 = 13/4; F should be sqrt(13)/2 up to the bound.
        let f2 = &eval.f_value * &eval.f_value;
        assert!((f2 - r(13, 4)).abs() < r(1, 1_000_000_000_000));
        assert!(eval.beta_part.is_zero());
        assert!(is_riemannian(&nav));
    }

    #[test]
    fn h0_direction_values_are_exact() {
        // u0 = 1, w0 = 1/2, y the h0 unit vector: λ = 3/4, h(W,y) = 1/2,
        // h(y,y) = 1, discriminant = 1, so F(y) = 2/3 and F(-y) = 2.
        let nav = NavigationData::new(ones(Space::E6A4), r(1, 2)).unwrap();
        assert_eq!(nav.lambda(), &r(3, 4));
        let y = TangentVector::unit_h0(Space::E6A4);
        let fwd = eval_randers(&nav, &y).unwrap();
        assert_eq!(fwd.f_value, r(2, 3));
        assert_eq!(fwd.alpha_part, r(4, 3));
        assert_eq!(fwd.beta_part, r(-2, 3));
        assert!(fwd.error_bound.is_zero());
        let bwd = eval_randers(&nav, &y.negated()).unwrap();
        assert_eq!(bwd.f_value, r(2, 1));
        // Reversibility defect identity: F(y) + F(-y) = 2·sqrt(D)/λ.
        assert_eq!(&fwd.f_value + &bwd.f_value, r(8, 3));
        assert!(!is_riemannian(&nav));
    }

    #[test]
    fn reversibility_is_exactly_w0_zero() {
        let nav = NavigationData::new(ones(Space::E6A4), r(1, 1_000_000_000)).unwrap();
        assert!(!is_riemannian(&nav));
        let nav = NavigationData::new(ones(Space::E6A4), Rational::zero()).unwrap();
        assert!(is_riemannian(&nav));
    }

    #[test]
    fn admissibility_boundary() {
        assert!(NavigationData::new(ones(Space::E6A1), r(999, 1000)).is_ok());
        assert!(matches!(
            NavigationData::new(ones(Space::E6A1), Rational::one()),
            Err(RandersError::Inadmissible { .. })
        ));
        assert!(matches!(
            NavigationData::new(ones(Space::E6A1), r(-3, 2)),
            Err(RandersError::Inadmissible { .. })
        ));
    }

    fn fake_solution(space: Space, u: &str, x1: &str, x2: &str) -> SolutionTuple {
        let params = MetricParams::with_unit_u0(
            space,
            u.parse().unwrap(),
            x1.parse().unwrap(),
            x2.parse().unwrap(),
        )
        .unwrap();
        let einstein_constant = ricci_components(&params).r_h0().clone();
        let x2v: Rational = x2.parse().unwrap();
        SolutionTuple {
            params,
            param_errors: std::array::from_fn(|_| Rational::zero()),
            einstein_constant,
            x2_box: RootBox {
                lower: &x2v - &r(1, 1_000_000),
                upper: &x2v + &r(1, 1_000_000),
                value_estimate: x2v,
                error_bound: r(1, 1_000_000),
            },
        }
    }

    #[test]
    fn family_construction() {
        let sols = vec![fake_solution(
            Space::E6A4,
            "0.1141921855785546",
            "1.2006785414378759",
            "0.6513015810198581",
        )];
        let fam = einstein_randers_family(Space::E6A4, &sols, 0, r(1, 2)).unwrap();
        assert!(!fam.riemannian);
        assert_eq!(fam.einstein_constant.to_decimal(4), "0.3814");

        let fam = einstein_randers_family(Space::E6A4, &sols, 0, Rational::zero()).unwrap();
        assert!(fam.riemannian);

        assert!(matches!(
            einstein_randers_family(Space::E6A4, &sols, 0, Rational::one()),
            Err(RandersError::Inadmissible { .. })
        ));
        assert!(matches!(
            einstein_randers_family(Space::E6A4, &sols, 5, r(1, 2)),
            Err(RandersError::BadSolutionIndex { .. })
        ));
        assert!(matches!(
            einstein_randers_family(Space::E6A1, &sols, 0, r(1, 2)),
            Err(RandersError::SpaceMismatch)
        ));
    }

    fn arb_vector(space: Space) -> impl Strategy<Value = TangentVector> {
        let dims: Vec<usize> = space.blocks().iter().map(|&(_, d)| d as usize).collect();
        let total: usize = dims.iter().sum();
        prop::collection::vec((-9i64..=9, 1i64..=9), total).prop_map(move |entries| {
            let mut v = TangentVector::zero(space);
            let mut it = entries.into_iter();
            for (b, &dim) in dims.iter().enumerate() {
                for i in 0..dim {
                    let (n, d) = it.next().unwrap();
                    v.set_component(b, i, r(n, d));
                }
            }
            v
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn randers_norm_properties(
            y in arb_vector(Space::E6A4),
            z in arb_vector(Space::E6A4),
            w_num in -9i64..=9,
            t_num in 1i64..=30, t_den in 1i64..=10,
        ) {
            let tol = r(1, 1_000_000_000_000);
            let nav = NavigationData::new(ones(Space::E6A4), r(w_num, 10)).unwrap();
            let fy = eval_randers(&nav, &y).unwrap();

            // Positivity away from the origin.
            if !y.is_zero() {
                prop_assert!(fy.f_value.is_positive());
            }
            // F = α + β and α ≥ |β|.
            prop_assert_eq!(&fy.f_value, &(&fy.alpha_part + &fy.beta_part));
            prop_assert!(fy.alpha_part >= fy.beta_part.abs());

            // Positive homogeneity.
            let t = r(t_num, t_den);
            let fty = eval_randers(&nav, &y.scaled(&t)).unwrap();
            prop_assert!((&fty.f_value - &(&fy.f_value * &t)).abs() <= tol);

            // Reversibility defect identity.
            let fny = eval_randers(&nav, &y.negated()).unwrap();
            let w = nav.w_vector();
            let h_wy = block_inner(nav.h(), &w, &y).unwrap();
            let h_yy = block_inner(nav.h(), &y, &y).unwrap();
            let disc = &h_wy * &h_wy + &h_yy * nav.lambda();
            let (lo, hi) = disc.sqrt_enclosure(SQRT_DIGITS).unwrap();
            let rhs = (lo + hi).checked_div(nav.lambda()).unwrap();
            prop_assert!((&fy.f_value + &fny.f_value - rhs).abs() <= tol);

            // Triangle inequality.
            let sum = y.add(&z).unwrap();
            let fsum = eval_randers(&nav, &sum).unwrap();
            let bound = &fy.f_value + &eval_randers(&nav, &z).unwrap().f_value;
            prop_assert!(fsum.f_value <= bound + tol.clone());

            // w0 = 0 reduces exactly to the Riemannian norm.
            let riem = NavigationData::new(ones(Space::E6A4), Rational::zero()).unwrap();
            let fr = eval_randers(&riem, &y).unwrap();
            let (slo, shi) = h_yy.sqrt_enclosure(SQRT_DIGITS).unwrap();
            prop_assert!(fr.f_value >= slo - tol.clone() && fr.f_value <= shi + tol.clone());
        }
    }
}
