//! Certified real-root isolation and refinement for univariate
//! integer-coefficient polynomials via Sturm sequences and interval bisection.
//!
//! All arithmetic is exact; every returned box carries rational endpoints
//! with a strict sign change, so the enclosure is a proof.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::polyring::{PolyError, Polynomial};
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial must be squarefree; take the squarefree part first")]
    NotSquarefree,
    #[error("interval endpoint is a root; perturb the endpoint")]
    EndpointIsRoot,
    #[error("interval is empty or reversed")]
    EmptyInterval,
    #[error("box does not bracket a sign change")]
    InvalidBox,
    #[error("refinement tolerance must be positive")]
    BadEpsilon,
}

/// Dense univariate polynomial with integer coefficients, ascending degree.
#[derive(Clone, PartialEq, Eq)]
pub struct UnivariatePoly {
    coeffs: Vec<BigInt>,
}

impl UnivariatePoly {
    /// Trims trailing zeros; an all-zero input yields the zero polynomial.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Extracts a univariate polynomial from a multivariate one, clearing
    /// denominators and normalizing to content 1 with positive lead.
    pub fn from_polynomial(p: &Polynomial, var: usize) -> Result<Self, RootError> {
        let coeffs = p.univariate_coeffs(var)?;
        Ok(Self::from_rational_coeffs(&coeffs))
    }

    /// Scales rational coefficients to primitive integers with positive lead.
    pub fn from_rational_coeffs(coeffs: &[Rational]) -> Self {
        let mut p = Self::positive_scaled(coeffs);
        if !p.is_zero() && p.leading().is_negative() {
            p = p.negated();
        }
        p
    }

    /// Scales by a positive rational only, preserving every coefficient sign.
    /// This is the normalization Sturm chains require.
    fn positive_scaled(coeffs: &[Rational]) -> Self {
        let mut den_lcm = BigInt::one();
        for c in coeffs {
            den_lcm = den_lcm.lcm(c.denominator());
        }
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numerator() * (&den_lcm / c.denominator()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if content.is_zero() {
            return UnivariatePoly { coeffs: vec![] };
        }
        Self::new(ints.into_iter().map(|c| c / &content).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("zero polynomial has no lead")
    }

    fn negated(&self) -> Self {
        UnivariatePoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UnivariatePoly { coeffs: vec![] };
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> i32 {
        self.eval(x).signum()
    }

    /// Interval Horner: a rigorous enclosure of `p([lo, hi])`.
    pub fn eval_interval(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let coeffs: Vec<Rational> = self
            .coeffs
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        interval_horner(&coeffs, lo, hi)
    }

    /// `1 + max |a_i| / |a_n|`: every real root lies strictly inside
    /// `(-bound, bound)`.
    pub fn cauchy_bound(&self) -> Rational {
        let lead = Rational::from_integer(self.leading().abs());
        let mut max = Rational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = Rational::from_integer(c.abs())
                .checked_div(&lead)
                .expect("nonzero lead");
            if q > max {
                max = q;
            }
        }
        Rational::one() + max
    }

    /// `p / gcd(p, p')`: same distinct real roots, all simple.
    pub fn squarefree_part(&self) -> Result<Self, RootError> {
        if self.is_zero() {
            return Err(RootError::ZeroPolynomial);
        }
        if self.coeffs.len() <= 2 {
            return Ok(self.clone());
        }
        let a = self.to_rational_vec();
        let b = self.derivative().to_rational_vec();
        let g = rat_gcd(a.clone(), b);
        if g.len() <= 1 {
            return Ok(self.clone());
        }
        let (q, r) = rat_divrem(&a, &g);
        debug_assert!(r.iter().all(Rational::is_zero));
        Ok(Self::from_rational_coeffs(&q))
    }

    fn to_rational_vec(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect()
    }

    /// Canonical text rendering with descending powers of `var`.
    pub fn format_with_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let unit = mag.is_one();
            match i {
                0 => out.push_str(&mag.to_string()),
                1 if unit => out.push_str(var),
                1 => {
                    out.push_str(&format!("{mag}*{var}"));
                }
                _ if unit => out.push_str(&format!("{var}^{i}")),
                _ => out.push_str(&format!("{mag}*{var}^{i}")),
            }
        }
        out
    }
}

impl fmt::Debug for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnivariatePoly{:?}", self.coeffs)
    }
}

/// Rigorous interval Horner over exact rationals, coefficients ascending.
pub(crate) fn interval_horner(
    coeffs: &[Rational],
    lo: &Rational,
    hi: &Rational,
) -> (Rational, Rational) {
    debug_assert!(lo <= hi);
    let mut acc_lo = Rational::zero();
    let mut acc_hi = Rational::zero();
    for c in coeffs.iter().rev() {
        let products = [
            &acc_lo * lo,
            &acc_lo * hi,
            &acc_hi * lo,
            &acc_hi * hi,
        ];
        let mut new_lo = products[0].clone();
        let mut new_hi = products[0].clone();
        for p in &products[1..] {
            if *p < new_lo {
                new_lo = p.clone();
            }
            if *p > new_hi {
                new_hi = p.clone();
            }
        }
        acc_lo = new_lo + c;
        acc_hi = new_hi + c;
    }
    (acc_lo, acc_hi)
}

/// An isolating interval `(lower, upper]` for exactly one real root, with a
/// midpoint estimate and its radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBox {
    pub lower: Rational,
    pub upper: Rational,
    pub value_estimate: Rational,
    pub error_bound: Rational,
}

impl RootBox {
    fn from_bounds(lower: Rational, upper: Rational) -> Self {
        let half = Rational::new(1, 2).unwrap();
        let value_estimate = (&lower + &upper) * &half;
        let error_bound = (&upper - &lower) * &half;
        RootBox {
            lower,
            upper,
            value_estimate,
            error_bound,
        }
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower < x && x <= &self.upper
    }
}

/// The signed-remainder Sturm chain `p, p', -rem(...)`, each element rescaled
/// by a positive rational to primitive integer coefficients.
///
/// The chain ends in a nonzero constant exactly when `p` is squarefree;
/// otherwise it terminates early at a nonconstant gcd.
pub fn sturm_sequence(p: &UnivariatePoly) -> Vec<UnivariatePoly> {
    assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
    // Scaling is always by a positive rational: the chain's signs are load-bearing.
    let mut chain = vec![UnivariatePoly::positive_scaled(&p.to_rational_vec())];
    let dp = p.derivative();
    if dp.is_zero() {
        return chain;
    }
    chain.push(UnivariatePoly::positive_scaled(&dp.to_rational_vec()));
    loop {
        let a = chain[chain.len() - 2].to_rational_vec();
        let b = chain[chain.len() - 1].to_rational_vec();
        let (_, mut r) = rat_divrem(&a, &b);
        while r.last().is_some_and(Rational::is_zero) {
            r.pop();
        }
        if r.is_empty() {
            return chain;
        }
        for c in &mut r {
            *c = -&*c;
        }
        chain.push(UnivariatePoly::positive_scaled(&r));
    }
}

fn is_squarefree_chain(chain: &[UnivariatePoly]) -> bool {
    chain
        .last()
        .is_some_and(|last| last.degree() == Some(0))
        || chain.len() == 1 && chain[0].degree() == Some(0)
}

/// Sign variations of the chain at `x` (zero evaluations are skipped).
fn sign_variations(chain: &[UnivariatePoly], x: &Rational) -> usize {
    let mut prev = 0i32;
    let mut variations = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            variations += 1;
        }
        prev = s;
    }
    variations
}

/// Exact number of distinct real roots of squarefree `p` in `(a, b]`.
pub fn count_real_roots(
    p: &UnivariatePoly,
    a: &Rational,
    b: &Rational,
) -> Result<usize, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if a >= b {
        return Err(RootError::EmptyInterval);
    }
    let chain = sturm_sequence(p);
    if !is_squarefree_chain(&chain) {
        return Err(RootError::NotSquarefree);
    }
    if p.sign_at(a) == 0 || p.sign_at(b) == 0 {
        return Err(RootError::EndpointIsRoot);
    }
    Ok(sign_variations(&chain, a) - sign_variations(&chain, b))
}

/// Disjoint isolating boxes, one per real root, sorted ascending. The initial
/// interval comes from the Cauchy bound.
pub fn isolate_roots(p: &UnivariatePoly) -> Result<Vec<RootBox>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let chain = sturm_sequence(p);
    if !is_squarefree_chain(&chain) {
        return Err(RootError::NotSquarefree);
    }
    if p.degree() == Some(0) {
        return Ok(vec![]);
    }
    let bound = p.cauchy_bound();
    let mut boxes = Vec::new();
    split(p, &chain, &(-&bound), &bound, &mut boxes);
    Ok(boxes)
}

fn split(
    p: &UnivariatePoly,
    chain: &[UnivariatePoly],
    a: &Rational,
    b: &Rational,
    out: &mut Vec<RootBox>,
) {
    let count = sign_variations(chain, a) - sign_variations(chain, b);
    match count {
        0 => {}
        1 => out.push(RootBox::from_bounds(a.clone(), b.clone())),
        _ => {
            let half = Rational::new(1, 2).unwrap();
            let mid = (a + b) * &half;
            if p.sign_at(&mid) == 0 {
                // Exact rational root at the midpoint: carve out a symmetric
                // box around it that isolates it, then recurse outside.
                let mut delta = (b - a) * Rational::new(1, 4).unwrap();
                loop {
                    let lo = &mid - &delta;
                    let hi = &mid + &delta;
                    if p.sign_at(&lo) != 0
                        && p.sign_at(&hi) != 0
                        && sign_variations(chain, &lo) - sign_variations(chain, &hi) == 1
                    {
                        split(p, chain, a, &lo, out);
                        out.push(RootBox {
                            lower: lo,
                            upper: hi.clone(),
                            value_estimate: mid.clone(),
                            error_bound: delta.clone(),
                        });
                        split(p, chain, &hi, b, out);
                        return;
                    }
                    delta = delta * &half;
                }
            }
            split(p, chain, a, &mid, out);
            split(p, chain, &mid, b, out);
        }
    }
}

/// Shrinks an isolating box until its width is at most `2*eps`. Bisection
/// guarantees progress; a dyadically rounded Newton step from the midpoint
/// accelerates the bracket when it lands inside it. The output box is nested
/// in the input and keeps exact rational endpoints with a strict sign change.
pub fn refine_root(
    p: &UnivariatePoly,
    root: &RootBox,
    eps: &Rational,
) -> Result<RootBox, RootError> {
    if !eps.is_positive() {
        return Err(RootError::BadEpsilon);
    }
    let mut lo = root.lower.clone();
    let mut hi = root.upper.clone();
    let sign_lo = p.sign_at(&lo);
    if sign_lo == 0 || p.sign_at(&hi) == 0 || sign_lo == p.sign_at(&hi) {
        return Err(RootError::InvalidBox);
    }
    let derivative = p.derivative();
    let half = Rational::new(1, 2).unwrap();
    let two_eps = eps + eps;
    while &hi - &lo > two_eps {
        let width = &hi - &lo;
        let mid = (&lo + &hi) * &half;
        let s = p.sign_at(&mid);
        if s == 0 {
            return Ok(exact_root_box(&lo, &hi, mid, eps));
        }
        if s == sign_lo {
            lo = mid.clone();
        } else {
            hi = mid.clone();
        }
        // Newton from the midpoint, rounded to a dyadic so coefficients stay
        // small; only accepted when it stays strictly inside the bracket.
        if let Some(candidate) = newton_step_dyadic(p, &derivative, &mid, &width) {
            if candidate > lo && candidate < hi {
                let sc = p.sign_at(&candidate);
                if sc == 0 {
                    return Ok(exact_root_box(&lo, &hi, candidate, eps));
                }
                if sc == sign_lo {
                    lo = candidate;
                } else {
                    hi = candidate;
                }
            }
        }
    }
    Ok(RootBox::from_bounds(lo, hi))
}

/// Pins a sign-changing box of radius at most `eps` around an exact root.
fn exact_root_box(lo: &Rational, hi: &Rational, root: Rational, eps: &Rational) -> RootBox {
    let gap = (&root - lo).min(hi - &root) * Rational::new(1, 2).unwrap();
    let delta = eps.clone().min(gap);
    RootBox {
        lower: &root - &delta,
        upper: &root + &delta,
        value_estimate: root,
        error_bound: delta,
    }
}

/// One Newton iterate from `at`, rounded onto a dyadic grid a quadratic
/// factor finer than the current bracket width.
fn newton_step_dyadic(
    p: &UnivariatePoly,
    derivative: &UnivariatePoly,
    at: &Rational,
    width: &Rational,
) -> Option<Rational> {
    let slope = derivative.eval(at);
    if slope.is_zero() {
        return None;
    }
    let step = p.eval(at).checked_div(&slope).expect("nonzero slope");
    let target = at - &step;
    // Grid spacing ~ width^2/16 keeps the rounding below the Newton error.
    let grid = width * width * Rational::new(1, 16).unwrap();
    if !grid.is_positive() {
        return Some(target);
    }
    let inv = grid.recip().expect("positive grid");
    let bits = inv
        .numerator()
        .bits()
        .saturating_sub(inv.denominator().bits())
        + 2;
    let scale = Rational::from_integer(BigInt::one() << (bits.min(1 << 20) as usize));
    let rounded = (&target * &scale + Rational::new(1, 2).unwrap()).floor_int();
    Some(
        Rational::from_integer(rounded)
            .checked_div(&scale)
            .expect("positive scale"),
    )
}

/// Rational-coefficient division: returns `(quotient, remainder)` with
/// `deg r < deg b`. Coefficients ascending; `b` must be nonzero.
fn rat_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let deg_b = b.len() - 1;
    debug_assert!(!b[deg_b].is_zero());
    let mut rem: Vec<Rational> = a.to_vec();
    if a.len() < b.len() {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); a.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let lead = rem[k + deg_b].clone();
        if lead.is_zero() {
            continue;
        }
        let q = lead.checked_div(&b[deg_b]).expect("nonzero divisor lead");
        for (i, bc) in b.iter().enumerate() {
            rem[k + i] = &rem[k + i] - &(&q * bc);
        }
        quot[k] = q;
    }
    rem.truncate(deg_b.max(1));
    (quot, rem)
}

/// Monic gcd over the rationals.
fn rat_gcd(mut a: Vec<Rational>, mut b: Vec<Rational>) -> Vec<Rational> {
    let trim = |v: &mut Vec<Rational>| {
        while v.last().is_some_and(Rational::is_zero) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, mut r) = rat_divrem(&a, &b);
        trim(&mut r);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        let inv = lead.recip().expect("nonzero lead");
        for c in &mut a {
            *c = &*c * &inv;
        }
    }
    a
}
