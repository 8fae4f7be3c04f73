//! Sparse multivariate polynomials over [`Rational`] with monomial orderings.
//!
//! This is the substrate for the Gröbner-basis machinery: polynomials are
//! stored as a map from exponent vectors to nonzero coefficients, and every
//! ordering-sensitive operation takes the [`MonomialOrder`] explicitly.

mod parse;

pub use parse::{format_polynomial, parse_ideal_source, ParseError};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("divisor set must be nonempty")]
    EmptyDivisors,
    #[error("divisor set contains a zero polynomial")]
    ZeroDivisor,
    #[error("ring must declare at least one variable")]
    EmptyRing,
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("order precedence must be a permutation of the ring variables")]
    InvalidOrder,
    #[error("polynomial is not univariate in the requested variable")]
    NotUnivariate,
    #[error("exponent out of range")]
    ExponentOverflow,
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric())
}

/// A polynomial ring: an ordered list of named variables.
///
/// Rings compare by variable-list content, so two independently built rings
/// over the same names are interchangeable.
#[derive(Clone)]
pub struct Ring {
    inner: Arc<Vec<String>>,
}

impl Ring {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(vars: I) -> Result<Self, PolyError> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(PolyError::EmptyRing);
        }
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(PolyError::InvalidVariable(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Ring {
            inner: Arc::new(vars),
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.inner
    }

    pub fn num_vars(&self) -> usize {
        self.inner.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.inner.iter().position(|v| v == name)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring[{}]", self.inner.join(", "))
    }
}

/// An exponent vector; one entry per ring variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial {
            exps: vec![0; num_vars],
        }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn var(num_vars: usize, index: usize, exp: u32) -> Self {
        let mut exps = vec![0; num_vars];
        exps[index] = exp;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise quotient, `None` when `other` does not divide `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// True when the supports are disjoint (leading monomials coprime).
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial{:?}", self.exps)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderKind {
    Lex,
}

/// A monomial order: currently pure lexicographic with an explicit variable
/// precedence (highest first).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl MonomialOrder {
    /// Lex order with the ring's declaration order as precedence.
    pub fn lex_default(ring: &Ring) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            precedence: (0..ring.num_vars()).collect(),
        }
    }

    /// Lex order with precedence given by variable names, highest first.
    pub fn lex(ring: &Ring, names_desc: &[&str]) -> Result<Self, PolyError> {
        if names_desc.len() != ring.num_vars() {
            return Err(PolyError::InvalidOrder);
        }
        let mut precedence = Vec::with_capacity(names_desc.len());
        for name in names_desc {
            let idx = ring
                .var_index(name)
                .ok_or_else(|| PolyError::UnknownVariable((*name).to_string()))?;
            if precedence.contains(&idx) {
                return Err(PolyError::InvalidOrder);
            }
            precedence.push(idx);
        }
        Ok(MonomialOrder {
            kind: OrderKind::Lex,
            precedence,
        })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    /// Variable indices, highest precedence first.
    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    /// The lex-minimal variable of this order.
    pub fn lowest_var(&self) -> usize {
        *self.precedence.last().expect("order over empty ring")
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &v in &self.precedence {
            match a.exp(v).cmp(&b.exp(v)) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    pub fn describe(&self, ring: &Ring) -> String {
        let names: Vec<&str> = self
            .precedence
            .iter()
            .map(|&i| ring.vars()[i].as_str())
            .collect();
        format!("lex {}", names.join(" > "))
    }
}

/// A sparse multivariate polynomial; invariant: no stored zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.num_vars()), c);
        }
        p
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn variable(ring: &Ring, index: usize) -> Self {
        let mut p = Self::zero(ring);
        p.terms.insert(
            Monomial::var(ring.num_vars(), index, 1),
            Rational::one(),
        );
        p
    }

    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.exps().len(), ring.num_vars(), "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    /// Parses the canonical text format; see the crate-level format notes.
    pub fn parse(ring: &Ring, src: &str) -> Result<Self, ParseError> {
        parse::parse_polynomial(ring, src)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    /// Which variables actually occur.
    pub fn vars_present(&self) -> Vec<bool> {
        let mut present = vec![false; self.ring.num_vars()];
        for m in self.terms.keys() {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    present[i] = true;
                }
            }
        }
        present
    }

    /// The single variable occurring in this polynomial, if exactly one does.
    pub fn single_variable(&self) -> Option<usize> {
        let present = self.vars_present();
        let mut it = present.iter().enumerate().filter(|(_, &p)| p);
        match (it.next(), it.next()) {
            (Some((v, _)), None) => Some(v),
            _ => None,
        }
    }

    /// Dense ascending coefficients of a polynomial involving only `var`.
    pub fn univariate_coeffs(&self, var: usize) -> Result<Vec<Rational>, PolyError> {
        let present = self.vars_present();
        for (i, &p) in present.iter().enumerate() {
            if p && i != var {
                return Err(PolyError::NotUnivariate);
            }
        }
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in &self.terms {
            coeffs[m.exp(var) as usize] = c.clone();
        }
        Ok(coeffs)
    }

    pub fn checked_add(&self, rhs: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.ring != rhs.ring {
            return Err(PolyError::RingMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.ring != rhs.ring {
            return Err(PolyError::RingMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.ring != rhs.ring {
            return Err(PolyError::RingMismatch);
        }
        let mut out = Polynomial::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// Multiplies by the single term `coeff * mono`.
    pub fn mul_term(&self, mono: &Monomial, coeff: &Rational) -> Polynomial {
        if coeff.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c * coeff))
                .collect(),
        }
    }

    /// The maximal term under `ord`. Errors on the zero polynomial.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(&Monomial, &Rational), PolyError> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| ord.cmp(a, b))
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Terms in descending order under `ord`.
    pub fn terms_desc(&self, ord: &MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| ord.cmp(b, a));
        v
    }

    /// Exact evaluation at a full point (one value per ring variable).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.num_vars());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t * point[i].pow(e as i64).expect("positive exponent");
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes an exact value for one variable.
    pub fn substitute(&self, var: usize, value: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let mut exps = m.exps().to_vec();
            exps[var] = 0;
            let factor = value.pow(e as i64).expect("positive exponent");
            out.add_term(Monomial::from_exps(exps), c * &factor);
        }
        out
    }

    /// Scales so all coefficients are integers with content 1, preserving sign.
    pub fn integer_primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denominator());
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numerator() * (&den_lcm / c.denominator());
            content = content.gcd(&scaled);
        }
        debug_assert!(content.is_positive());
        let factor = Rational::new(den_lcm, content).expect("nonzero content");
        self.scale(&factor)
    }

    /// Divides by the leading coefficient under `ord`.
    pub fn monic(&self, ord: &MonomialOrder) -> Result<Polynomial, PolyError> {
        let (_, lc) = self.leading_term(ord)?;
        let inv = lc.recip().expect("leading coefficient nonzero");
        Ok(self.scale(&inv))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ord = MonomialOrder::lex_default(&self.ring);
        write!(f, "{}", format_polynomial(self, &ord))
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("ring mismatch")
            }
        }
        impl std::ops::$trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect("ring mismatch")
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

/// Working representation for division: terms sorted descending under the
/// active order.
pub(crate) struct SortedPoly {
    pub terms: Vec<(Monomial, Rational)>,
}

impl SortedPoly {
    pub fn from_polynomial(p: &Polynomial, ord: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Rational)> =
            p.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|(a, _), (b, _)| ord.cmp(b, a));
        SortedPoly { terms }
    }

    pub fn into_polynomial(self, ring: &Ring) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: self.terms.into_iter().collect(),
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    /// `self - factor * shift * other`, merging in descending order.
    pub fn sub_scaled(
        &self,
        other: &SortedPoly,
        shift: &Monomial,
        factor: &Rational,
        ord: &MonomialOrder,
    ) -> SortedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(m, c)| (m.mul(shift), -(c * factor)))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, _)), Some((mb, _))) => match ord.cmp(ma, mb) {
                    Ordering::Greater => {
                        let (m, c) = a.next().unwrap();
                        out.push((m.clone(), c.clone()));
                    }
                    Ordering::Less => {
                        out.push(b.next().unwrap());
                    }
                    Ordering::Equal => {
                        let (m, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let c = ca + &cb;
                        if !c.is_zero() {
                            out.push((m.clone(), c));
                        }
                    }
                },
                (Some(_), None) => {
                    let (m, c) = a.next().unwrap();
                    out.push((m.clone(), c.clone()));
                }
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        SortedPoly { terms: out }
    }
}

/// Remainder of `p` on division by `divisors` under `ord`.
///
/// No monomial of the result is divisible by any divisor's leading monomial,
/// and `p - normal_form(p)` lies in the ideal generated by the divisors.
/// Deterministic: at each step the first divisor (in slice order) whose
/// leading monomial divides the current lead is used.
pub fn normal_form(
    p: &Polynomial,
    divisors: &[Polynomial],
    ord: &MonomialOrder,
) -> Result<Polynomial, PolyError> {
    if divisors.is_empty() {
        return Err(PolyError::EmptyDivisors);
    }
    for d in divisors {
        if d.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        if d.ring() != p.ring() {
            return Err(PolyError::RingMismatch);
        }
    }
    let sorted: Vec<SortedPoly> = divisors
        .iter()
        .map(|d| SortedPoly::from_polynomial(d, ord))
        .collect();
    let work = SortedPoly::from_polynomial(p, ord);
    Ok(reduce_sorted(work, &sorted, ord).into_polynomial(p.ring()))
}

/// Core division loop shared with the Gröbner machinery.
pub(crate) fn reduce_sorted(
    mut work: SortedPoly,
    divisors: &[SortedPoly],
    ord: &MonomialOrder,
) -> SortedPoly {
    let mut remainder: Vec<(Monomial, Rational)> = Vec::new();
    'outer: while let Some((lm, lc)) = work.leading() {
        for d in divisors {
            let (dm, dc) = d.leading().expect("zero divisor");
            if let Some(shift) = lm.try_div(dm) {
                let factor = lc.checked_div(dc).expect("leading coefficient nonzero");
                work = work.sub_scaled(d, &shift, &factor, ord);
                continue 'outer;
            }
        }
        // Lead is irreducible: move it to the remainder.
        let (m, c) = work.terms.remove(0);
        remainder.push((m, c));
    }
    SortedPoly { terms: remainder }
}
