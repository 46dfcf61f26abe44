//! Homogeneous polynomials over `F_p`, normal forms and generic forms.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::groebner::GroebnerBasis;
use crate::monomial::{format_monomial, monomials_of_degree, parse_monomial, standard_monomials, Monomial};

/// A sparse polynomial: nonzero terms, monomials strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, FieldElement)>,
}

/// One term in the JSON form `[coeff, [e1, ..., ek]]`.
pub type JsonTerm = (u64, Vec<u32>);

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn monomial(m: Monomial, c: FieldElement) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Polynomial::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(m, c)] }
    }

    /// Builds a homogeneous polynomial from arbitrary terms: like monomials are
    /// combined, zeros dropped and the result sorted.
    pub fn from_terms(field: &PrimeField, nvars: usize, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> Result<Self> {
        let mut acc: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        let mut degree = None;
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: m.nvars() });
            }
            match degree {
                None => degree = Some(m.degree()),
                Some(d) if d != m.degree() => return Err(Error::NotHomogeneous),
                _ => {}
            }
            let slot = acc.entry(m).or_insert(FieldElement::ZERO);
            *slot = field.add(*slot, field.element(c.value()));
        }
        Ok(Self::from_map(nvars, acc))
    }

    /// Terms in a descending `BTreeMap`-drained order.
    fn from_map(nvars: usize, map: BTreeMap<Monomial, FieldElement>) -> Self {
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { nvars, terms }
    }

    /// Trusted constructor: terms must already be sorted, nonzero, same arity.
    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<(Monomial, FieldElement)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// The common degree of all terms; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// The initial term.
    pub fn leading(&self) -> Result<(&Monomial, FieldElement)> {
        self.terms.first().map(|(m, c)| (m, *c)).ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(k) => self.terms[k].1,
            Err(_) => FieldElement::ZERO,
        }
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|(m, _)| m)
    }

    fn check_arity(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, field: &PrimeField, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        Ok(self.axpy(field, FieldElement::ONE, other))
    }

    pub fn sub(&self, field: &PrimeField, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        Ok(self.axpy(field, field.neg(FieldElement::ONE), other))
    }

    /// `self + c * other`, by merging the two sorted term lists.
    pub(crate) fn axpy(&self, field: &PrimeField, c: FieldElement, other: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                    std::cmp::Ordering::Greater => {
                        out.push((ma.clone(), *ca));
                        a.next();
                    }
                    std::cmp::Ordering::Less => {
                        out.push((mb.clone(), field.mul(c, *cb)));
                        b.next();
                    }
                    std::cmp::Ordering::Equal => {
                        let s = field.add(*ca, field.mul(c, *cb));
                        if !s.is_zero() {
                            out.push((ma.clone(), s));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((ma, ca)), None) => {
                    out.push((ma.clone(), *ca));
                    a.next();
                }
                (None, Some((mb, cb))) => {
                    out.push((mb.clone(), field.mul(c, *cb)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { nvars: self.nvars, terms: out }
    }

    pub fn scale(&self, field: &PrimeField, c: FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), field.mul(*a, c))).collect();
        Polynomial { nvars: self.nvars, terms }
    }

    pub fn neg(&self, field: &PrimeField) -> Polynomial {
        self.scale(field, field.neg(FieldElement::ONE))
    }

    /// Multiplies every term by `m`; the order is preserved because grevlex is
    /// a monomial order.
    pub fn mul_monomial(&self, m: &Monomial) -> Result<Polynomial> {
        if m.nvars() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: m.nvars() });
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| Ok((t.try_mul(m)?, *c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { nvars: self.nvars, terms })
    }

    pub(crate) fn mul_var(&self, var: usize) -> Polynomial {
        let terms = self.terms.iter().map(|(t, c)| (t.mul_var(var, 1), *c)).collect();
        Polynomial { nvars: self.nvars, terms }
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self, field: &PrimeField) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(field, field.inv(*c).expect("nonzero leading coefficient")),
        }
    }

    /// Sets the last variable to zero and drops it.
    pub fn drop_last_variable(&self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(self.nvars - 1) == 0)
            .map(|(m, c)| (m.drop_last(), *c))
            .collect();
        Polynomial { nvars: self.nvars - 1, terms }
    }

    /// Adds a trailing variable that does not occur.
    pub fn lift(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.extend_with(0), *c)).collect();
        Polynomial { nvars: self.nvars + 1, terms }
    }

    /// Text form `c1*m1 + c2*m2`; a unit monomial prints as the bare coefficient
    /// and a coefficient of one is omitted.
    pub fn format(&self, with_z: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| match (m.is_one(), c.value()) {
                (true, _) => c.to_string(),
                (false, 1) => format_monomial(m, with_z),
                (false, _) => format!("{}*{}", c, format_monomial(m, with_z)),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the text form. A term without a coefficient has coefficient one.
    pub fn parse(field: &PrimeField, s: &str, nvars: usize, with_z: bool) -> Result<Polynomial> {
        let s = s.trim();
        if s == "0" {
            return Ok(Polynomial::zero(nvars));
        }
        let mut terms = Vec::new();
        for raw in s.split('+') {
            let raw = raw.trim();
            let (coeff, mono) = match raw.split_once('*') {
                Some((c, rest)) if c.trim().chars().all(|ch| ch.is_ascii_digit()) => (c.trim(), rest),
                _ if raw.chars().all(|ch| ch.is_ascii_digit()) => (raw, "1"),
                _ => ("1", raw),
            };
            let c = coeff.parse::<u64>().map_err(|_| Error::Parse(format!("bad coefficient in '{raw}'")))?;
            terms.push((parse_monomial(mono, nvars, with_z)?, field.element(c)));
        }
        Polynomial::from_terms(field, nvars, terms)
    }

    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .map(|(m, c)| (c.value(), m.exponents().iter().map(|&e| e as u32).collect()))
            .collect()
    }

    pub fn from_json_terms(field: &PrimeField, nvars: usize, terms: &[JsonTerm]) -> Result<Polynomial> {
        let terms = terms
            .iter()
            .map(|(c, e)| Ok((Monomial::try_from_exponents(e)?, field.element(*c))))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(field, nvars, terms)
    }
}

/// JSON wrapper so polynomials embed in serde structures as arrays of terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolynomialJson(pub Vec<JsonTerm>);

impl From<&Polynomial> for PolynomialJson {
    fn from(p: &Polynomial) -> Self {
        PolynomialJson(p.to_json_terms())
    }
}

/// Full reduction of `f` by a list of monic polynomials: the result has no
/// monomial divisible by any leading monomial of `basis`. The largest
/// reducible monomial is always reduced first.
pub fn reduce_fully(field: &PrimeField, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let leads: Vec<&Monomial> = basis.iter().map(|g| g.leading_monomial().expect("nonzero basis element")).collect();
    let mut pending: BTreeMap<Monomial, FieldElement> = f.terms.iter().cloned().collect();
    let mut out = Vec::new();
    while let Some((m, c)) = pending.pop_last() {
        if c.is_zero() {
            continue;
        }
        let reducer = leads.iter().position(|l| l.divides_unchecked(&m));
        match reducer {
            None => out.push((m, c)),
            Some(k) => {
                let g = &basis[k];
                debug_assert_eq!(g.terms[0].1, FieldElement::ONE);
                let q = m.div(leads[k]).expect("divisor");
                let minus_c = field.neg(c);
                for (t, a) in &g.terms[1..] {
                    let slot = pending.entry(t.mul(&q)).or_insert(FieldElement::ZERO);
                    *slot = field.add(*slot, field.mul(minus_c, *a));
                }
            }
        }
    }
    Polynomial::from_sorted_terms(f.nvars, out)
}

/// The normal form of `f` modulo a reduced Gröbner basis.
pub fn normal_form(f: &Polynomial, g: &GroebnerBasis) -> Polynomial {
    reduce_fully(g.field(), f, g.elements())
}

/// A dense form of degree `d`: every monomial of degree `d` gets a nonzero
/// random coefficient.
pub fn random_generic_form<R: Rng + ?Sized>(field: &PrimeField, nvars: usize, d: u32, rng: &mut R) -> Polynomial {
    let terms = monomials_of_degree(nvars, d).into_iter().map(|m| (m, field.random_nonzero(rng))).collect();
    Polynomial::from_sorted_terms(nvars, terms)
}

/// A generic form supported exactly on the degree-`d` standard monomials of `g`.
pub fn reduced_generic_form<R: Rng + ?Sized>(g: &GroebnerBasis, d: u32, rng: &mut R) -> Result<Polynomial> {
    let support = standard_monomials(&g.initial_ideal(), d);
    if support.is_empty() {
        return Err(Error::NoStandardMonomials(d));
    }
    let field = g.field();
    let terms = support.into_iter().map(|m| (m, field.random_nonzero(rng))).collect();
    Ok(Polynomial::from_sorted_terms(g.nvars(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::seeded_generator;
    use crate::groebner::buchberger;
    use proptest::prelude::*;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    fn p(s: &str, nvars: usize) -> Polynomial {
        Polynomial::parse(&f(), s, nvars, false).unwrap()
    }

    #[test]
    fn leading_examples() {
        let a = p("x1 + x2", 2);
        assert_eq!(a.leading().unwrap(), (&Monomial::var(2, 0), FieldElement::ONE));
        let b = p("3*x2^2 + 5*x1*x3", 3);
        assert_eq!(b.leading().unwrap().0, &Monomial::new(vec![0, 2, 0]));
        assert_eq!(b.leading().unwrap().1, f().element(3));
        assert!(matches!(Polynomial::zero(2).leading(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn arithmetic_identities() {
        let a = p("2*x1^2 + 7*x1*x2 + x2^2", 2);
        let z = Polynomial::zero(2);
        assert_eq!(a.add(&f(), &z).unwrap(), a);
        assert!(a.sub(&f(), &a).unwrap().is_zero());
        assert!(a.add(&f(), &Polynomial::zero(3)).is_err());
        let x2 = Monomial::var(2, 1);
        assert_eq!(a.mul_monomial(&x2).unwrap(), p("2*x1^2*x2 + 7*x1*x2^2 + x2^3", 2));
    }

    #[test]
    fn constructors_validate() {
        assert!(matches!(Polynomial::parse(&f(), "x1 + x2^2", 2, false), Err(Error::NotHomogeneous)));
        let a = p("x1 + 2*x1 + x2", 2);
        assert_eq!(a.coefficient(&Monomial::var(2, 0)), f().element(3));
        assert_eq!(p("x1 + 2147483646*x1", 2), Polynomial::zero(2));
    }

    #[test]
    fn text_and_json_round_trip() {
        let a = Polynomial::parse(&f(), "5*x1^2*z + 3*x2^3 + x1*x2*z", 3, true).unwrap();
        let s = a.format(true);
        assert_eq!(s, "3*x2^3 + 5*x1^2*z + x1*x2*z");
        assert_eq!(Polynomial::parse(&f(), &s, 3, true).unwrap(), a);
        let j = serde_json::to_string(&PolynomialJson::from(&a)).unwrap();
        assert_eq!(j, "[[3,[0,3,0]],[5,[2,0,1]],[1,[1,1,1]]]");
        let back: PolynomialJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Polynomial::from_json_terms(&f(), 3, &back.0).unwrap(), a);
    }

    #[test]
    fn generic_forms_are_dense_and_deterministic() {
        let a = random_generic_form(&f(), 2, 1, &mut seeded_generator(1));
        assert_eq!(a.len(), 2);
        let b = random_generic_form(&f(), 3, 2, &mut seeded_generator(1));
        assert_eq!(b.len(), 6);
        assert!(b.terms().iter().all(|(_, c)| !c.is_zero()));
        assert_eq!(b, random_generic_form(&f(), 3, 2, &mut seeded_generator(1)));
    }

    #[test]
    fn reduced_generic_form_support() {
        let field = f();
        let empty = GroebnerBasis::empty(field, 2);
        let a = reduced_generic_form(&empty, 3, &mut seeded_generator(5)).unwrap();
        assert_eq!(a.monomials().cloned().collect::<Vec<_>>(), monomials_of_degree(2, 3));

        let mut rng = seeded_generator(9);
        let gens = vec![random_generic_form(&field, 2, 2, &mut rng), random_generic_form(&field, 2, 2, &mut rng)];
        let gb = buchberger(&field, 2, &gens);
        assert!(matches!(reduced_generic_form(&gb, 3, &mut rng), Err(Error::NoStandardMonomials(3))));
        let g = reduced_generic_form(&gb, 2, &mut rng).unwrap();
        let expect = standard_monomials(&gb.initial_ideal(), 2);
        assert_eq!(g.monomials().cloned().collect::<Vec<_>>(), expect);
    }

    fn small_basis(seed: u64) -> GroebnerBasis {
        let field = f();
        let mut rng = seeded_generator(seed);
        let gens = vec![random_generic_form(&field, 3, 2, &mut rng), random_generic_form(&field, 3, 3, &mut rng)];
        buchberger(&field, 3, &gens)
    }

    #[test]
    fn ideal_members_reduce_to_zero() {
        let field = f();
        let gb = small_basis(3);
        let mut rng = seeded_generator(4);
        for g in gb.elements() {
            assert!(normal_form(g, &gb).is_zero());
        }
        // an explicit combination m1*g1 + c*m2*g2 of degree 4
        let e = gb.elements();
        let g1 = e.iter().find(|g| g.degree() == Some(2)).unwrap();
        let g2 = e.iter().find(|g| g.degree() == Some(3)).unwrap();
        let h = g1
            .mul_monomial(&Monomial::new(vec![1, 0, 1]))
            .unwrap()
            .axpy(&field, field.random_nonzero(&mut rng), &g2.mul_monomial(&Monomial::var(3, 2)).unwrap());
        assert!(normal_form(&h, &gb).is_zero());
    }

    #[test]
    fn normal_form_is_fully_reduced() {
        let gb = small_basis(11);
        let lead = gb.initial_ideal();
        let mut rng = seeded_generator(12);
        for d in 2..6 {
            let h = random_generic_form(&f(), 3, d, &mut rng);
            let r = normal_form(&h, &gb);
            assert!(r.monomials().all(|m| !lead.contains(m)));
            assert!(r.is_zero() || r.degree() == Some(d));
            assert_eq!(normal_form(&r, &gb), r);
        }
    }

    fn poly_strategy(nvars: usize, d: u32) -> impl Strategy<Value = Polynomial> {
        let ms = monomials_of_degree(nvars, d);
        proptest::collection::vec(proptest::option::of(1u64..1000), ms.len()).prop_map(move |cs| {
            let terms: Vec<_> = ms.iter().cloned().zip(cs).filter_map(|(m, c)| c.map(|c| (m, f().element(c)))).collect();
            Polynomial::from_sorted_terms(nvars, terms)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn addition_is_associative(a in poly_strategy(3, 3), b in poly_strategy(3, 3), c in poly_strategy(3, 3)) {
            let fl = f();
            let l = a.add(&fl, &b).unwrap().add(&fl, &c).unwrap();
            let r = a.add(&fl, &b.add(&fl, &c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn leading_is_maximal(a in poly_strategy(3, 4)) {
            if let Ok((lm, _)) = a.leading() {
                prop_assert!(a.monomials().all(|m| m <= lm));
            }
        }

        #[test]
        fn normal_form_is_linear(a in poly_strategy(3, 4), b in poly_strategy(3, 4), seed in 0u64..4) {
            let fl = f();
            let gb = small_basis(seed);
            let lhs = normal_form(&a.add(&fl, &b).unwrap(), &gb);
            let rhs = normal_form(&a, &gb).add(&fl, &normal_form(&b, &gb)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
