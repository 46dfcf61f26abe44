//! Monomials under the graded reverse lexicographic order, monomial ideals,
//! standard monomials and the almost-reverse-lexicographic test.
//!
//! Variables are ordered `x1 > x2 > ... > xn`; when a ring carries the extra
//! variable `z` it is stored as the last (smallest) coordinate.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A monomial as a dense exponent vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    /// Builds a monomial from wide exponents, rejecting anything above `u16::MAX`.
    pub fn try_from_exponents(exps: &[u32]) -> Result<Self> {
        let exps = exps
            .iter()
            .map(|&e| u16::try_from(e).map_err(|_| Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial::new(exps))
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], degree: 0 }
    }

    /// The variable with index `var` (0-based).
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::var_pow(nvars, var, 1)
    }

    pub fn var_pow(nvars: usize, var: usize, e: u16) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = e;
        Monomial::new(exps)
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u16 {
        self.exps[var]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Product of two monomials. Exponent overflow is a hard error.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.try_mul(other).expect("monomial exponent overflow")
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        check_arity(self, other)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exps, degree: self.degree + other.degree })
    }

    /// `self * var^e`.
    pub fn mul_var(&self, var: usize, e: u16) -> Monomial {
        let mut exps = self.exps.clone();
        exps[var] = exps[var].checked_add(e).expect("monomial exponent overflow");
        Monomial { exps, degree: self.degree + e as u32 }
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides_unchecked(self) {
            return None;
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { exps, degree: self.degree - other.degree })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Does `self` divide `other`? Arity is checked.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        check_arity(self, other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Appends a trailing variable with exponent `e` (lifts `R` into `R[z]`).
    pub fn extend_with(&self, e: u16) -> Monomial {
        let mut exps = self.exps.clone();
        exps.push(e);
        Monomial { exps, degree: self.degree + e as u32 }
    }

    /// Drops the last coordinate, which must be zero when `strict`.
    pub fn drop_last(&self) -> Monomial {
        let mut exps = self.exps.clone();
        exps.pop();
        Monomial::new(exps)
    }
}

fn check_arity(a: &Monomial, b: &Monomial) -> Result<()> {
    if a.nvars() != b.nvars() {
        return Err(Error::ArityMismatch { expected: a.nvars(), found: b.nvars() });
    }
    Ok(())
}

/// Graded reverse lexicographic comparison.
pub fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    check_arity(a, b)?;
    Ok(grevlex(a, b))
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree.cmp(&b.degree) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for (x, y) in a.exps.iter().zip(&b.exps).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        grevlex(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_monomial(self, false))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_monomial(self, false))
    }
}

fn var_name(i: usize, nvars: usize, with_z: bool) -> String {
    if with_z && i + 1 == nvars {
        "z".to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// Renders `x1^2*x2*z^3`; `1` for the unit monomial.
pub fn format_monomial(m: &Monomial, with_z: bool) -> String {
    let parts: Vec<String> = m
        .exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let name = var_name(i, m.nvars(), with_z);
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Parses the grammar produced by [`format_monomial`]. Repeated factors are
/// multiplied together.
pub fn parse_monomial(s: &str, nvars: usize, with_z: bool) -> Result<Monomial> {
    let s = s.trim();
    let mut exps = vec![0u32; nvars];
    if s == "1" {
        return Ok(Monomial::one(nvars));
    }
    if s.is_empty() {
        return Err(Error::Parse("empty monomial".into()));
    }
    for factor in s.split('*') {
        let factor = factor.trim();
        let (name, e) = match factor.split_once('^') {
            Some((n, e)) => {
                let e = e.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?;
                (n.trim(), e)
            }
            None => (factor, 1),
        };
        let idx = if name == "z" {
            if !with_z {
                return Err(Error::Parse("variable z is not in this ring".into()));
            }
            nvars - 1
        } else {
            let k = name
                .strip_prefix('x')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
            let limit = if with_z { nvars - 1 } else { nvars };
            if k > limit {
                return Err(Error::Parse(format!("variable '{name}' is out of range")));
            }
            k - 1
        };
        exps[idx] += e;
    }
    Monomial::try_from_exponents(&exps)
}

/// All monomials of degree `d` in `nvars` variables, strictly decreasing.
///
/// Generated directly in order: the last exponent ascends slowest, so this is
/// colex on the reversed exponent vector.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    let mut exps = vec![0u16; nvars];
    fill_from_last(&mut exps, nvars - 1, d, &mut out);
    out
}

fn fill_from_last(exps: &mut Vec<u16>, var: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if var == 0 {
        exps[0] = remaining as u16;
        out.push(Monomial::new(exps.clone()));
        return;
    }
    for e in 0..=remaining {
        exps[var] = e as u16;
        fill_from_last(exps, var - 1, remaining - e, out);
    }
    exps[var] = 0;
}

/// A monomial ideal given by its minimal generators, sorted decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, generators: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides_unchecked(m))
    }

    /// Sum with additional monomials, re-minimalized.
    pub fn with(&self, extra: impl IntoIterator<Item = Monomial>) -> MonomialIdeal {
        let mut all = self.generators.clone();
        all.extend(extra);
        minimal_generators(self.nvars, all)
    }

    /// The degree-`d` monomials of the ideal, decreasing.
    pub fn degree_part(&self, d: u32) -> Vec<Monomial> {
        monomials_of_degree(self.nvars, d).into_iter().filter(|m| self.contains(m)).collect()
    }

    /// Minimal generators of degree `d`.
    pub fn generators_of_degree(&self, d: u32) -> impl Iterator<Item = &Monomial> {
        self.generators.iter().filter(move |g| g.degree() == d)
    }

    pub fn max_generator_degree(&self) -> Option<u32> {
        self.generators.iter().map(Monomial::degree).max()
    }

    /// Generators as text, by increasing degree and decreasing within a degree.
    pub fn format(&self, with_z: bool) -> Vec<String> {
        let mut gens: Vec<&Monomial> = self.generators.iter().collect();
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        gens.into_iter().map(|m| format_monomial(m, with_z)).collect()
    }
}

/// Removes every monomial divisible by another; sorts decreasing. Idempotent
/// and insensitive to input order.
pub fn minimal_generators(nvars: usize, ms: impl IntoIterator<Item = Monomial>) -> MonomialIdeal {
    let mut ms: Vec<Monomial> = ms.into_iter().collect();
    // ascending degree first, so any divisor is seen before its multiples
    ms.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    ms.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for m in ms {
        debug_assert_eq!(m.nvars(), nvars);
        if !kept.iter().any(|k| k.divides_unchecked(&m)) {
            kept.push(m);
        }
    }
    kept.sort_by(|a, b| b.cmp(a));
    MonomialIdeal { nvars, generators: kept }
}

/// Degree-`d` monomials outside `ideal`, decreasing.
pub fn standard_monomials(ideal: &MonomialIdeal, d: u32) -> Vec<Monomial> {
    monomials_of_degree(ideal.nvars, d).into_iter().filter(|m| !ideal.contains(m)).collect()
}

/// Outcome of the almost-reverse-lexicographic test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArlReport {
    pub ok: bool,
    /// First `(generator, larger same-degree monomial outside the ideal)`.
    pub witness: Option<(Monomial, Monomial)>,
}

/// Checks that every monomial of a generator's degree that is larger than the
/// generator lies in the ideal.
pub fn is_almost_reverse_lex(ideal: &MonomialIdeal) -> ArlReport {
    for g in &ideal.generators {
        // monomials_of_degree is decreasing, so everything before g is larger
        for m in monomials_of_degree(ideal.nvars, g.degree()) {
            if &m == g {
                break;
            }
            if !ideal.contains(&m) {
                return ArlReport { ok: false, witness: Some((g.clone(), m)) };
            }
        }
    }
    ArlReport { ok: true, witness: None }
}

/// Bounds of a selection from an ordered list, 1-based as in `S^[a,b]`
/// (`s_a..=s_b`) and `S^(a,b]` (`s_{a+1}..=s_b`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceBounds {
    Closed(usize, usize),
    OpenClosed(usize, usize),
}

/// An ordered run of monomials cut out of a decreasing list.
#[derive(Clone, Debug)]
pub struct MonomialSlice<'a> {
    pub base: &'a [Monomial],
    pub bounds: SliceBounds,
}

impl<'a> MonomialSlice<'a> {
    pub fn new(base: &'a [Monomial], bounds: SliceBounds) -> Self {
        MonomialSlice { base, bounds }
    }

    /// The `a` largest elements.
    pub fn largest(base: &'a [Monomial], a: usize) -> Self {
        MonomialSlice { base, bounds: SliceBounds::OpenClosed(0, a) }
    }

    pub fn select(&self) -> Result<&'a [Monomial]> {
        let len = self.base.len();
        let (lo, hi) = match self.bounds {
            SliceBounds::Closed(a, b) => {
                if a < 1 || a > b || b > len {
                    return Err(Error::BoundsError(format!("[{a},{b}] in a list of {len}")));
                }
                (a - 1, b)
            }
            SliceBounds::OpenClosed(a, b) => {
                if a > b || b > len {
                    return Err(Error::BoundsError(format!("({a},{b}] in a list of {len}")));
                }
                (a, b)
            }
        };
        Ok(&self.base[lo..hi])
    }
}

/// Shorthand for `MonomialSlice::new(base, bounds).select()`.
pub fn slice(base: &[Monomial], bounds: SliceBounds) -> Result<&[Monomial]> {
    MonomialSlice::new(base, bounds).select()
}
