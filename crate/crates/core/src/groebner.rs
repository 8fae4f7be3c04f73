//! Buchberger's algorithm with reduced-basis output, ideal saturation via an
//! auxiliary variable, and lexicographic elimination.
//!
//! The computation is fully deterministic: the normal pair-selection strategy
//! (minimal lcm of leading monomials, ties by index) together with the fixed
//! divisor order in reduction makes identical inputs produce identical
//! output sequences.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::polyring::{
    normal_form, Monomial, MonomialOrder, PolyError, Polynomial, Ring,
};
use crate::polyring::SortedPoly;
use crate::rational::Rational;

/// Default cap on S-pair reductions; a guard against pathological input.
pub const DEFAULT_PAIR_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("ideal basis must contain at least one nonzero generator")]
    EmptyBasis,
    #[error("S-polynomial requires nonzero inputs")]
    ZeroInput,
    #[error("pair-reduction budget of {budget} exhausted after {pairs} reductions")]
    BudgetExceeded { pairs: usize, budget: usize },
    #[error("saturation variable `{0}` already occurs in the ring")]
    VariableCollision(String),
    #[error("saturation requires a nonempty set of variables")]
    EmptyVariableSet,
    #[error("operation requires a reduced Gröbner basis")]
    NotReduced,
    #[error("variable `{0}` is not the lex-minimal variable of the order")]
    KeepNotMinimal(String),
    #[error("the ideal is trivial (contains a nonzero constant)")]
    TrivialIdeal,
    #[error("no Gröbner-basis element is univariate in `{0}`; the ideal is not zero-dimensional or has unexpected shape")]
    NoUnivariateElement(String),
    #[error("no basis element of the form {0} - p({1}): shape position fails")]
    ShapeFailure(String, String),
}

/// A finite generating set of an ideal together with the monomial order the
/// downstream computation will use.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    generators: Vec<Polynomial>,
    ring: Ring,
    order: MonomialOrder,
}

impl IdealBasis {
    /// Drops zero generators and exact duplicates. Errors when nothing is left
    /// or when the generators live in different rings.
    pub fn new(
        generators: Vec<Polynomial>,
        order: MonomialOrder,
    ) -> Result<Self, GroebnerError> {
        let mut kept: Vec<Polynomial> = Vec::new();
        let mut ring: Option<Ring> = None;
        for g in generators {
            match &ring {
                Some(r) if r != g.ring() => return Err(PolyError::RingMismatch.into()),
                None => ring = Some(g.ring().clone()),
                _ => {}
            }
            if g.is_zero() || kept.contains(&g) {
                continue;
            }
            kept.push(g);
        }
        let ring = ring.ok_or(GroebnerError::EmptyBasis)?;
        if kept.is_empty() {
            return Err(GroebnerError::EmptyBasis);
        }
        Ok(IdealBasis {
            generators: kept,
            ring,
            order,
        })
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }
}

/// The output of [`buchberger`]: when `reduced` is set, elements are monic,
/// pairwise tail-reduced and sorted by descending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub elements: Vec<Polynomial>,
    pub order: MonomialOrder,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        self.elements[0].ring()
    }
}

/// S(f, g) = (lcm/LT(f))·f − (lcm/LT(g))·g for the leading-monomial lcm.
pub fn s_polynomial(
    f: &Polynomial,
    g: &Polynomial,
    ord: &MonomialOrder,
) -> Result<Polynomial, GroebnerError> {
    if f.is_zero() || g.is_zero() {
        return Err(GroebnerError::ZeroInput);
    }
    if f.ring() != g.ring() {
        return Err(PolyError::RingMismatch.into());
    }
    let (fm, fc) = f.leading_term(ord)?;
    let (gm, gc) = g.leading_term(ord)?;
    let lcm = fm.lcm(gm);
    let left = f.mul_term(
        &lcm.try_div(fm).expect("lcm divisible by lm"),
        &fc.recip().expect("nonzero leading coefficient"),
    );
    let right = g.mul_term(
        &lcm.try_div(gm).expect("lcm divisible by lm"),
        &gc.recip().expect("nonzero leading coefficient"),
    );
    Ok(left.checked_sub(&right)?)
}

/// Reduced Gröbner basis via Buchberger's algorithm with the default budget.
pub fn buchberger(basis: &IdealBasis) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with_budget(basis, DEFAULT_PAIR_BUDGET)
}

/// Buchberger's algorithm with an explicit cap on S-pair reductions.
///
/// Pair selection follows the normal strategy (minimal leading-monomial lcm
/// under the order, ties broken by generator indices); the coprime-lead and
/// chain criteria skip pairs; every intermediate remainder is rescaled to
/// integer content 1 to keep coefficients small.
pub fn buchberger_with_budget(
    basis: &IdealBasis,
    budget: usize,
) -> Result<GroebnerBasis, GroebnerError> {
    let ord = basis.order();
    let ring = basis.ring();

    let mut gens: Vec<Polynomial> = basis
        .generators()
        .iter()
        .map(|g| g.integer_primitive())
        .collect();
    let mut sorted: Vec<SortedPoly> = gens
        .iter()
        .map(|g| SortedPoly::from_polynomial(g, ord))
        .collect();
    let mut leads: Vec<Monomial> = gens
        .iter()
        .map(|g| g.leading_term(ord).expect("nonzero generator").0.clone())
        .collect();

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..gens.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut treated: HashSet<(usize, usize)> = HashSet::new();
    let mut reductions = 0usize;

    while !pairs.is_empty() {
        // Normal selection: minimal lcm, then smallest indices.
        let mut best = 0;
        let mut best_lcm = leads[pairs[0].0].lcm(&leads[pairs[0].1]);
        for (k, &(i, j)) in pairs.iter().enumerate().skip(1) {
            let lcm = leads[i].lcm(&leads[j]);
            match ord.cmp(&lcm, &best_lcm) {
                std::cmp::Ordering::Less => {
                    best = k;
                    best_lcm = lcm;
                }
                std::cmp::Ordering::Equal if (i, j) < pairs[best] => {
                    best = k;
                    best_lcm = lcm;
                }
                _ => {}
            }
        }
        let (i, j) = pairs.swap_remove(best);
        treated.insert((i, j));

        if leads[i].coprime(&leads[j]) {
            continue;
        }
        let lcm = leads[i].lcm(&leads[j]);
        let chain_skip = (0..gens.len()).any(|k| {
            k != i
                && k != j
                && leads[k].divides(&lcm)
                && treated.contains(&pair_key(i, k))
                && treated.contains(&pair_key(j, k))
        });
        if chain_skip {
            continue;
        }

        reductions += 1;
        if reductions > budget {
            return Err(GroebnerError::BudgetExceeded {
                pairs: reductions,
                budget,
            });
        }

        let s = s_polynomial(&gens[i], &gens[j], ord)?;
        if s.is_zero() {
            continue;
        }
        let work = SortedPoly::from_polynomial(&s, ord);
        let remainder = crate::polyring::reduce_sorted(work, &sorted, ord)
            .into_polynomial(ring)
            .integer_primitive();
        if remainder.is_zero() {
            continue;
        }
        let t = gens.len();
        leads.push(remainder.leading_term(ord).expect("nonzero").0.clone());
        sorted.push(SortedPoly::from_polynomial(&remainder, ord));
        gens.push(remainder);
        for k in 0..t {
            pairs.push((k, t));
        }
    }

    Ok(reduce_basis(gens, ord))
}

fn pair_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Minimalizes, tail-reduces, normalizes to monic and sorts the basis.
fn reduce_basis(gens: Vec<Polynomial>, ord: &MonomialOrder) -> GroebnerBasis {
    let leads: Vec<Monomial> = gens
        .iter()
        .map(|g| g.leading_term(ord).expect("nonzero").0.clone())
        .collect();

    // Minimal subset: drop any element whose lead is divisible by the lead of
    // another kept element (first occurrence wins on equal leads).
    let mut keep = vec![true; gens.len()];
    for i in 0..gens.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..gens.len() {
            if i == j || !keep[j] {
                continue;
            }
            if leads[j].divides(&leads[i]) && (leads[j] != leads[i] || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Polynomial> = gens
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // Tail-reduce each element against the others; the lead survives because
    // no other lead divides it.
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let element = if others.is_empty() {
            minimal[i].clone()
        } else {
            normal_form(&minimal[i], &others, ord).expect("valid divisors")
        };
        reduced.push(element.monic(ord).expect("nonzero element"));
    }

    reduced.sort_by(|a, b| {
        let la = a.leading_term(ord).expect("nonzero").0;
        let lb = b.leading_term(ord).expect("nonzero").0;
        ord.cmp(lb, la)
    });

    GroebnerBasis {
        elements: reduced,
        order: ord.clone(),
        reduced: true,
    }
}

/// Extends the ring by a fresh variable `z` of highest precedence and appends
/// the generator `z·(product of vars) − 1`, excluding zeros of the named
/// coordinates from the variety.
pub fn saturate(basis: &IdealBasis, vars: &[&str]) -> Result<IdealBasis, GroebnerError> {
    if vars.is_empty() {
        return Err(GroebnerError::EmptyVariableSet);
    }
    let ring = basis.ring();
    if ring.var_index("z").is_some() {
        return Err(GroebnerError::VariableCollision("z".to_string()));
    }
    let mut var_indices = Vec::with_capacity(vars.len());
    for v in vars {
        let idx = ring
            .var_index(v)
            .ok_or_else(|| PolyError::UnknownVariable((*v).to_string()))?;
        if var_indices.contains(&idx) {
            return Err(PolyError::DuplicateVariable((*v).to_string()).into());
        }
        var_indices.push(idx);
    }

    let mut names = vec!["z".to_string()];
    names.extend(ring.vars().iter().cloned());
    let new_ring = Ring::new(names)?;

    // z gets strictly highest precedence; the old precedence follows.
    let mut precedence_names: Vec<&str> = vec!["z"];
    for &old in basis.order().precedence() {
        precedence_names.push(ring.vars()[old].as_str());
    }
    let new_order = MonomialOrder::lex(&new_ring, &precedence_names)?;

    let lift = |p: &Polynomial| -> Polynomial {
        Polynomial::from_terms(
            &new_ring,
            p.terms().map(|(m, c)| {
                let mut exps = vec![0u32];
                exps.extend_from_slice(m.exps());
                (Monomial::from_exps(exps), c.clone())
            }),
        )
    };

    let mut generators: Vec<Polynomial> = basis.generators().iter().map(&lift).collect();
    let mut sat_exps = vec![0u32; new_ring.num_vars()];
    sat_exps[0] = 1;
    for &idx in &var_indices {
        sat_exps[idx + 1] = 1;
    }
    let sat = Polynomial::from_terms(
        &new_ring,
        [
            (Monomial::from_exps(sat_exps), Rational::one()),
            (Monomial::one(new_ring.num_vars()), Rational::from(-1)),
        ],
    );
    generators.push(sat);

    IdealBasis::new(generators, new_order)
}

/// The unique element of a reduced lex basis involving only `keep`, rescaled
/// to integer content 1 with a positive leading coefficient.
pub fn elimination_polynomial(
    gb: &GroebnerBasis,
    keep: &str,
) -> Result<Polynomial, GroebnerError> {
    if !gb.reduced {
        return Err(GroebnerError::NotReduced);
    }
    let ring = gb.ring();
    let keep_idx = ring
        .var_index(keep)
        .ok_or_else(|| PolyError::UnknownVariable(keep.to_string()))?;
    if gb.order.lowest_var() != keep_idx {
        return Err(GroebnerError::KeepNotMinimal(keep.to_string()));
    }
    let mut found: Option<&Polynomial> = None;
    for el in &gb.elements {
        if el.is_constant() {
            return Err(GroebnerError::TrivialIdeal);
        }
        if el.single_variable() == Some(keep_idx) {
            // A reduced basis holds at most one univariate element per variable.
            debug_assert!(found.is_none());
            found = Some(el);
        }
    }
    let el = found.ok_or_else(|| GroebnerError::NoUnivariateElement(keep.to_string()))?;
    let mut out = el.integer_primitive();
    let (_, lc) = out.leading_term(&gb.order)?;
    if lc.is_negative() {
        out = out.neg();
    }
    Ok(out)
}

/// For each dependent variable `v`, finds the basis element `v − p_v(base)`
/// and returns the map `v → p_v`. Errors with [`GroebnerError::ShapeFailure`]
/// when the basis is not in shape position over `base`.
pub fn shape_extract(
    gb: &GroebnerBasis,
    dependents: &[&str],
    base: &str,
) -> Result<BTreeMap<String, Polynomial>, GroebnerError> {
    if !gb.reduced {
        return Err(GroebnerError::NotReduced);
    }
    let ring = gb.ring();
    let base_idx = ring
        .var_index(base)
        .ok_or_else(|| PolyError::UnknownVariable(base.to_string()))?;
    if gb.order.lowest_var() != base_idx {
        return Err(GroebnerError::KeepNotMinimal(base.to_string()));
    }

    let mut map = BTreeMap::new();
    for dep in dependents {
        let dep_idx = ring
            .var_index(dep)
            .ok_or_else(|| PolyError::UnknownVariable((*dep).to_string()))?;
        let want = Monomial::var(ring.num_vars(), dep_idx, 1);
        let mut extracted: Option<Polynomial> = None;
        for el in &gb.elements {
            let (lm, _) = el.leading_term(&gb.order)?;
            if *lm != want {
                continue;
            }
            // Element is monic: v + tail. Shape position needs tail in `base` only.
            let tail = el.checked_sub(&Polynomial::variable(ring, dep_idx))?;
            let tail_ok = tail
                .vars_present()
                .iter()
                .enumerate()
                .all(|(i, &p)| !p || i == base_idx);
            if tail_ok {
                extracted = Some(tail.neg());
            }
            break;
        }
        let p_v = extracted.ok_or_else(|| {
            GroebnerError::ShapeFailure((*dep).to_string(), base.to_string())
        })?;
        map.insert((*dep).to_string(), p_v);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::normal_form;

    fn parse_all(ring: &Ring, srcs: &[&str]) -> Vec<Polynomial> {
        srcs.iter().map(|s| Polynomial::parse(ring, s).unwrap()).collect()
    }

    /// Test-local reducer, deliberately written differently from the library
    /// path: scans every term (not just the lead) for a reducible monomial.
    fn naive_reduce(p: &Polynomial, gens: &[Polynomial], ord: &MonomialOrder) -> Polynomial {
        let mut r = p.clone();
        'outer: loop {
            let terms: Vec<(Monomial, Rational)> =
                r.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
            for (m, c) in &terms {
                for g in gens {
                    let (gm, gc) = g.leading_term(ord).unwrap();
                    if let Some(q) = m.try_div(gm) {
                        let factor = c.checked_div(gc).unwrap();
                        r = r.checked_sub(&g.mul_term(&q, &factor)).unwrap();
                        continue 'outer;
                    }
                }
            }
            return r;
        }
    }

    fn is_groebner(elements: &[Polynomial], ord: &MonomialOrder) -> bool {
        for i in 0..elements.len() {
            for j in (i + 1)..elements.len() {
                let s = s_polynomial(&elements[i], &elements[j], ord).unwrap();
                if !naive_reduce(&s, elements, ord).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn s_polynomial_examples() {
        let ring = Ring::new(["x", "y", "z"]).unwrap();
        let ord = MonomialOrder::lex_default(&ring);
        let f = Polynomial::parse(&ring, "x^2 - y").unwrap();
        let g = Polynomial::parse(&ring, "x*y - z").unwrap();
        let s = s_polynomial(&f, &g, &ord).unwrap();
        assert_eq!(s, Polynomial::parse(&ring, "x*z - y^2").unwrap());

        assert!(s_polynomial(&f, &f, &ord).unwrap().is_zero());

        // Coprime leading monomials: S reduces to zero modulo {f, g}.
        let a = Polynomial::parse(&ring, "x^2").unwrap();
        let b = Polynomial::parse(&ring, "y^2").unwrap();
        let s = s_polynomial(&a, &b, &ord).unwrap();
        assert!(naive_reduce(&s, &[a.clone(), b.clone()], &ord).is_zero());

        let zero = Polynomial::zero(&ring);
        assert_eq!(
            s_polynomial(&zero, &f, &ord),
            Err(GroebnerError::ZeroInput)
        );
    }

    #[test]
    fn twisted_cubic_basis() {
        let ring = Ring::new(["x", "y", "z"]).unwrap();
        let ord = MonomialOrder::lex_default(&ring);
        let f1 = Polynomial::parse(&ring, "x^2 - y").unwrap();
        let f2 = Polynomial::parse(&ring, "x^3 - z").unwrap();
        let basis = IdealBasis::new(vec![f1.clone(), f2.clone()], ord.clone()).unwrap();
        let gb = buchberger(&basis).unwrap();

        let expected = parse_all(&ring, &["x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2"]);
        assert_eq!(gb.elements, expected);
        assert!(gb.reduced);

        // Independent closure check: every pairwise S-polynomial reduces to 0.
        assert!(is_groebner(&gb.elements, &ord));

        // Ideal membership witnesses for each claimed element, written as
        // explicit combinations of the input generators.
        let x = Polynomial::variable(&ring, 0);
        let y = Polynomial::variable(&ring, 1);
        let z = Polynomial::variable(&ring, 2);
        let e2 = f2.clone() - x.clone() * f1.clone();
        assert_eq!(e2, expected[1]);
        let e3 = y.clone() * f1.clone() - x.clone() * e2.clone();
        assert_eq!(e3, expected[2]);
        let e4 = z.clone() * e2 - y * e3;
        assert_eq!(e4, expected[3]);
        // And every original generator reduces to zero modulo the output.
        for f in [&f1, &f2] {
            assert!(naive_reduce(f, &gb.elements, &ord).is_zero());
        }
    }

    #[test]
    fn single_and_duplicate_generators() {
        let ring = Ring::new(["x", "y"]).unwrap();
        let ord = MonomialOrder::lex_default(&ring);
        let x = Polynomial::parse(&ring, "x").unwrap();
        let gb = buchberger(&IdealBasis::new(vec![x.clone()], ord.clone()).unwrap()).unwrap();
        assert_eq!(gb.elements, vec![x]);

        let f = Polynomial::parse(&ring, "x^2 - y").unwrap();
        let gb = buchberger(
            &IdealBasis::new(vec![f.clone(), f.clone()], ord.clone()).unwrap(),
        )
        .unwrap();
        assert_eq!(gb.elements, vec![f]);

        assert!(matches!(
            IdealBasis::new(vec![Polynomial::zero(&ring)], ord),
            Err(GroebnerError::EmptyBasis)
        ));
    }

    #[test]
    fn determinism() {
        let ring = Ring::new(["x", "y", "z"]).unwrap();
        let ord = MonomialOrder::lex_default(&ring);
        let gens = parse_all(
            &ring,
            &["x^2 + y^2 + z^2 - 1", "x^2 - y + z^2", "x - z"],
        );
        let basis = IdealBasis::new(gens, ord).unwrap();
        let a = buchberger(&basis).unwrap();
        let b = buchberger(&basis).unwrap();
        assert_eq!(a.elements, b.elements);
        assert!(is_groebner(&a.elements, &a.order));
    }

    #[test]
    fn budget_guard() {
        let ring = Ring::new(["x", "y", "z"]).unwrap();
        let ord = MonomialOrder::lex_default(&ring);
        let gens = parse_all(&ring, &["x^2 + y^2 + z^2 - 1", "x^2 - y + z^2", "x - z"]);
        let basis = IdealBasis::new(gens, ord).unwrap();
        assert!(matches!(
            buchberger_with_budget(&basis, 1),
            Err(GroebnerError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn saturation_layout() {
        let ring = Ring::new(["u2", "x1", "x2"]).unwrap();
        let ord = MonomialOrder::lex(&ring, &["u2", "x1", "x2"]).unwrap();
        let gens = parse_all(&ring, &["u2*x1 - 1", "x2 - u2"]);
        let basis = IdealBasis::new(gens, ord).unwrap();
        let sat = saturate(&basis, &["x1", "x2", "u2"]).unwrap();

        assert_eq!(sat.ring().vars(), &["z", "u2", "x1", "x2"]);
        assert_eq!(sat.order().describe(sat.ring()), "lex z > u2 > x1 > x2");
        let last = sat.generators().last().unwrap();
        assert_eq!(
            last,
            &Polynomial::parse(sat.ring(), "z*u2*x1*x2 - 1").unwrap()
        );

        assert!(matches!(
            saturate(&basis, &[]),
            Err(GroebnerError::EmptyVariableSet)
        ));
        let zring = Ring::new(["z", "w"]).unwrap();
        let zord = MonomialOrder::lex_default(&zring);
        let zbasis =
            IdealBasis::new(vec![Polynomial::parse(&zring, "z - w").unwrap()], zord).unwrap();
        assert!(matches!(
            saturate(&zbasis, &["w"]),
            Err(GroebnerError::VariableCollision(v)) if v == "z"
        ));
    }

    #[test]
    fn elimination_examples() {
        let ring = Ring::new(["x"]).unwrap();
        let ord = MonomialOrder::lex_default(&ring);
        let basis =
            IdealBasis::new(vec![Polynomial::parse(&ring, "x - 1").unwrap()], ord).unwrap();
        let gb = buchberger(&basis).unwrap();
        let p = elimination_polynomial(&gb, "x").unwrap();
        assert_eq!(p, Polynomial::parse(&ring, "x - 1").unwrap());

        // Positive-dimensional shape: no univariate element in the last var.
        let ring = Ring::new(["x", "y"]).unwrap();
        let ord = MonomialOrder::lex_default(&ring);
        let basis =
            IdealBasis::new(vec![Polynomial::parse(&ring, "x*y - 1").unwrap()], ord).unwrap();
        let gb = buchberger(&basis).unwrap();
        assert_eq!(
            elimination_polynomial(&gb, "y"),
            Err(GroebnerError::NoUnivariateElement("y".to_string()))
        );
        // `keep` must be the lex-minimal variable.
        assert_eq!(
            elimination_polynomial(&gb, "x"),
            Err(GroebnerError::KeepNotMinimal("x".to_string()))
        );
    }

    #[test]
    fn elimination_normalizes_content_and_sign() {
        let ring = Ring::new(["x", "y"]).unwrap();
        let ord = MonomialOrder::lex_default(&ring);
        // GB will contain a y-univariate element; force fractional monic form.
        let gens = parse_all(&ring, &["x - y", "3*y^2 - 6"]);
        let basis = IdealBasis::new(gens, ord).unwrap();
        let gb = buchberger(&basis).unwrap();
        let p = elimination_polynomial(&gb, "y").unwrap();
        assert_eq!(p, Polynomial::parse(&ring, "y^2 - 2").unwrap());
    }

    #[test]
    fn shape_extraction() {
        let ring = Ring::new(["x", "y"]).unwrap();
        let ord = MonomialOrder::lex_default(&ring);
        let gens = parse_all(&ring, &["x^2 - y", "x - y"]);
        let basis = IdealBasis::new(gens, ord.clone()).unwrap();
        let gb = buchberger(&basis).unwrap();
        let map = shape_extract(&gb, &["x"], "y").unwrap();
        assert_eq!(map["x"], Polynomial::parse(&ring, "y").unwrap());
        // The base polynomial y^2 - y is also in the basis.
        assert!(gb
            .elements
            .contains(&Polynomial::parse(&ring, "y^2 - y").unwrap()));

        // Not zero-dimensional: x^2 - y^2 has no element linear in x.
        let gens = parse_all(&ring, &["x^2 - y^2"]);
        let basis = IdealBasis::new(gens, ord).unwrap();
        let gb = buchberger(&basis).unwrap();
        assert_eq!(
            shape_extract(&gb, &["x"], "y"),
            Err(GroebnerError::ShapeFailure("x".to_string(), "y".to_string()))
        );
    }

    #[test]
    fn groebner_basis_invariants_on_random_small_ideals() {
        // A light version of the acceptance-scale sweep: deterministic seeds.
        use rand::rngs::StdRng;
        use rand::{RngExt, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        let ring = Ring::new(["x", "y", "z"]).unwrap();
        let ord = MonomialOrder::lex_default(&ring);
        for _ in 0..10 {
            let mut gens = Vec::new();
            for _ in 0..rng.random_range(1..=3) {
                let mut p = Polynomial::zero(&ring);
                for _ in 0..rng.random_range(1..=3) {
                    let exps = vec![
                        rng.random_range(0..3u32),
                        rng.random_range(0..3u32),
                        rng.random_range(0..2u32),
                    ];
                    let c = Rational::from(rng.random_range(-4i64..=4));
                    p = p + Polynomial::from_terms(&ring, [(Monomial::from_exps(exps), c)]);
                }
                if !p.is_zero() {
                    gens.push(p);
                }
            }
            if gens.is_empty() {
                continue;
            }
            let basis = IdealBasis::new(gens.clone(), ord.clone()).unwrap();
            let gb = buchberger(&basis).unwrap();
            assert!(is_groebner(&gb.elements, &ord));
            for g in basis.generators() {
                assert!(
                    normal_form(g, &gb.elements, &ord).unwrap().is_zero(),
                    "generator must reduce to zero modulo the basis"
                );
            }
        }
    }
}
