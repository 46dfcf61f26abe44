//! Structure of generic complete intersections: Hilbert data, the tables of
//! standard monomials, the Stanley/Lefschetz/`B~^e` properties, and closed-form
//! predictions of the initial ideal after adding one more generic form.
//!
//! Rings: `R = K[x1..xn]` and `S = R[z]`, with `z` the last coordinate of `S`.
//! Tables hold the standard monomials `B_k` of `J`, the image of `I` under
//! `z -> 0`, as monomials of `R`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{derive_seed, seeded_generator, PrimeField};
use crate::groebner::{generic_degree_cap, ggv_extend_traced, ExtensionTrace, GroebnerBasis};
use crate::monomial::{
    format_monomial, is_almost_reverse_lex, minimal_generators, slice, standard_monomials, Monomial,
    MonomialIdeal, SliceBounds,
};
use crate::polynomial::{normal_form, random_generic_form, reduced_generic_form, Polynomial};
use crate::report::{Check, Report};

/// Retries allowed after the first attempt when an instance looks special.
pub const MAX_RETRIES: u32 = 3;

/// Coefficients of `prod (1 - z^d_i) / (1 - z)^n`, truncated at the first
/// non-positive coefficient, for degrees `0..=through`.
pub fn froberg_series(n: usize, degrees: &[u32], through: u32) -> Vec<u64> {
    let len = through as usize + 1;
    let mut num = vec![0i128; len];
    num[0] = 1;
    for &d in degrees {
        for k in (d as usize..len).rev() {
            num[k] -= num[k - d as usize];
        }
    }
    // multiply by 1/(1-z) n times
    for _ in 0..n {
        for k in 1..len {
            num[k] += num[k - 1];
        }
    }
    let mut out = Vec::with_capacity(len);
    let mut alive = true;
    for c in num {
        alive &= c > 0;
        out.push(if alive { c as u64 } else { 0 });
    }
    out
}

/// Numerical data of a square generic ideal with degrees `d_1..d_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub n: usize,
    pub degrees: Vec<u32>,
    pub a: Vec<u64>,
    pub delta: u32,
    pub delta_star: u32,
    pub sigma: u32,
    pub mu: u32,
}

impl HilbertData {
    /// `a_k`, zero outside `0..=delta`.
    pub fn a(&self, k: i64) -> u64 {
        if k < 0 {
            return 0;
        }
        self.a.get(k as usize).copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

/// Hilbert data for `n` forms in `n` variables.
///
/// `delta_star` is computed with the largest degree playing the role of `d_n`,
/// i.e. for the degrees in increasing order.
pub fn hilbert_data(n: usize, degrees: &[u32]) -> Result<HilbertData> {
    if n == 0 || degrees.len() != n {
        return Err(Error::InvalidInput(format!("need exactly n = {n} degrees, got {}", degrees.len())));
    }
    if degrees.contains(&0) {
        return Err(Error::InvalidInput("degrees must be positive".into()));
    }
    let sum: u32 = degrees.iter().sum();
    let delta = sum - n as u32;
    let mut a = vec![1u64];
    for &d in degrees {
        let mut next = vec![0u64; a.len() + d as usize - 1];
        for (k, &c) in a.iter().enumerate() {
            for t in 0..d as usize {
                next[k + t] += c;
            }
        }
        a = next;
    }
    let max = *degrees.iter().max().unwrap();
    let delta_star = sum - max - (n as u32 - 1);
    let sigma = delta_star.min(delta / 2);
    let mu = delta - 2 * sigma;
    let h = HilbertData { n, degrees: degrees.to_vec(), a, delta, delta_star, sigma, mu };
    check_hilbert_invariants(&h).map_err(Error::InvariantViolation)?;
    Ok(h)
}

fn check_hilbert_invariants(h: &HilbertData) -> std::result::Result<(), String> {
    let a = &h.a;
    let delta = h.delta as usize;
    if a.len() != delta + 1 {
        return Err(format!("series has length {}, expected {}", a.len(), delta + 1));
    }
    if (0..=delta).any(|k| a[k] != a[delta - k]) {
        return Err("series is not symmetric".into());
    }
    let (s, m) = (h.sigma as usize, h.mu as usize);
    let up = (0..s).all(|k| a[k] < a[k + 1]);
    let flat = (s..s + m).all(|k| a[k] == a[k + 1]);
    let down = (s + m..delta).all(|k| a[k] > a[k + 1]);
    if !(a[0] > 0 && up && flat && down) {
        return Err(format!("series {a:?} is not unimodal with sigma = {s}, mu = {m}"));
    }
    let product: u64 = h.degrees.iter().map(|&d| d as u64).product();
    if a.iter().sum::<u64>() != product {
        return Err("coefficients do not sum to the product of the degrees".into());
    }
    let fr = froberg_series(h.n, &h.degrees, h.delta);
    if &fr != a {
        return Err("product expansion disagrees with the series quotient".into());
    }
    Ok(())
}

/// The standard monomials `B_0, B_1, ...` of a zero-dimensional monomial ideal
/// of `R`, each in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasisTable {
    n: usize,
    b: Vec<Vec<Monomial>>,
}

impl StandardBasisTable {
    /// Enumerates `B_k` until the first empty degree. `ideal` may live in `S`,
    /// in which case its generators must be free of `z`.
    pub fn from_initial_ideal(ideal: &MonomialIdeal, with_z: bool) -> Result<Self> {
        let j = if with_z {
            let last = ideal.nvars() - 1;
            if let Some(m) = ideal.generators().iter().find(|m| m.exponent(last) > 0) {
                return Err(Error::InvariantViolation(format!("generator {} involves z", format_monomial(m, true))));
            }
            minimal_generators(last, ideal.generators().iter().map(Monomial::drop_last))
        } else {
            ideal.clone()
        };
        let n = j.nvars();
        // a zero-dimensional ideal needs a pure power of every variable
        let zero_dim = (0..n).all(|v| j.generators().iter().any(|m| m.exponent(v) == m.degree() as u16));
        if !zero_dim {
            return Err(Error::InvalidInput("ideal is not zero-dimensional".into()));
        }
        let mut b = Vec::new();
        for k in 0.. {
            let level = standard_monomials(&j, k);
            if level.is_empty() {
                break;
            }
            b.push(level);
        }
        Ok(StandardBasisTable { n, b })
    }

    /// Number of variables of `R`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The top degree with standard monomials.
    pub fn delta(&self) -> u32 {
        self.b.len() as u32 - 1
    }

    /// `B_k`; empty for `k` beyond the top degree.
    pub fn b(&self, k: u32) -> &[Monomial] {
        self.b.get(k as usize).map_or(&[], Vec::as_slice)
    }

    /// `a_k = |B_k|`, zero for negative or large `k`.
    pub fn a(&self, k: i64) -> u64 {
        if k < 0 {
            0
        } else {
            self.b(k as u32).len() as u64
        }
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.b.iter().map(|l| l.len() as u64).collect()
    }

    /// All standard monomials.
    pub fn all(&self) -> impl Iterator<Item = &Monomial> {
        self.b.iter().flatten()
    }

    /// `E_i = B_i, zB_{i-1}, ..., z^i B_0` as monomials of `S`, decreasing.
    pub fn e_level(&self, i: u32) -> Vec<Monomial> {
        self.e_groups(i).into_iter().flat_map(|(_, ms)| ms).collect()
    }

    /// The groups `(k, z^{i-k} B_k)` of `E_i`, for `k = i, i-1, ..., 0`.
    pub fn e_groups(&self, i: u32) -> Vec<(u32, Vec<Monomial>)> {
        (0..=i).rev().map(|k| (k, self.b(k).iter().map(|m| m.extend_with((i - k) as u16)).collect())).collect()
    }

    /// `z^e * B_k` as monomials of `S`.
    pub fn lifted(&self, k: u32, e: u32) -> Vec<Monomial> {
        self.b(k).iter().map(|m| m.extend_with(e as u16)).collect()
    }
}

/// `B~^e`: monomials of `K[x1..x_{n-1}]` whose product with `x_n^e` is standard.
pub fn b_tilde(table: &StandardBasisTable, e: u32) -> BTreeSet<Monomial> {
    let last = table.n() - 1;
    table.all().filter(|m| m.exponent(last) as u32 == e).map(Monomial::drop_last).collect()
}

/// Parameters of one random instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSpec {
    /// Number of `x` variables.
    pub n: usize,
    pub degrees: Vec<u32>,
    /// Degree of the additional form `g`, if any. Requires `with_z`.
    pub extra: Option<u32>,
    pub with_z: bool,
    pub prime: u64,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(n: usize, degrees: &[u32]) -> Self {
        InstanceSpec { n, degrees: degrees.to_vec(), extra: None, with_z: false, prime: crate::field::DEFAULT_PRIME, seed: 0 }
    }

    pub fn with_z(mut self) -> Self {
        self.with_z = true;
        self
    }

    pub fn extra(mut self, d: u32) -> Self {
        self.extra = Some(d);
        self.with_z = true;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Number of variables of the ambient ring.
    pub fn nvars(&self) -> usize {
        self.n + usize::from(self.with_z)
    }

    pub fn label(&self) -> String {
        let mut s = format!("n={} d={:?}", self.n, self.degrees);
        if let Some(d) = self.extra {
            s.push_str(&format!(" g={d}"));
        }
        if self.with_z {
            s.push_str(" +z");
        }
        s
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidInput("need at least one variable".into()));
        }
        if self.degrees.is_empty() || self.degrees.contains(&0) {
            return Err(Error::InvalidInput("degrees must be a nonempty list of positive integers".into()));
        }
        if self.degrees.len() > self.n {
            return Err(Error::InvalidInput(format!("{} forms in {} variables; at most n forms are supported", self.degrees.len(), self.n)));
        }
        if self.extra.is_some() && !self.with_z {
            return Err(Error::InvalidInput("an extra form needs the variable z".into()));
        }
        if self.extra == Some(0) {
            return Err(Error::InvalidInput("the extra degree must be positive".into()));
        }
        PrimeField::new(self.prime)?;
        Ok(())
    }

    pub fn is_square(&self) -> bool {
        self.degrees.len() == self.n
    }
}

/// The extension of a generic instance by `g`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub d: u32,
    pub g: Polynomial,
    pub cap: u32,
    pub basis: GroebnerBasis,
    pub trace: ExtensionTrace,
}

impl Extension {
    pub fn initial_ideal(&self) -> MonomialIdeal {
        self.basis.initial_ideal()
    }
}

/// A generic ideal built one form at a time, with its checks passed.
#[derive(Clone, Debug)]
pub struct GenericInstance {
    pub spec: InstanceSpec,
    pub field: PrimeField,
    /// Seed actually used (derived from `spec.seed` on retries).
    pub used_seed: u64,
    pub retries: u32,
    pub forms: Vec<Polynomial>,
    /// Initial ideal after each form.
    pub stages: Vec<MonomialIdeal>,
    pub basis: GroebnerBasis,
    /// Present for square instances.
    pub hilbert: Option<HilbertData>,
    pub table: Option<StandardBasisTable>,
    pub extension: Option<Extension>,
    /// Why earlier attempts were rejected.
    pub rejected: Vec<String>,
}

impl GenericInstance {
    pub fn nvars(&self) -> usize {
        self.spec.nvars()
    }

    pub fn hilbert(&self) -> Result<&HilbertData> {
        self.hilbert.as_ref().ok_or_else(|| Error::InvalidInput("instance is not square".into()))
    }

    pub fn table(&self) -> Result<&StandardBasisTable> {
        self.table.as_ref().ok_or_else(|| Error::InvalidInput("instance is not square".into()))
    }

    pub fn extension(&self) -> Result<&Extension> {
        self.extension.as_ref().ok_or_else(|| Error::InvalidInput("instance has no extra form".into()))
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        self.basis.initial_ideal()
    }

    pub fn report(&self) -> Report {
        Report::new(self.spec.label(), self.used_seed, self.retries)
    }
}

/// Builds a generic instance, retrying with derived seeds when a check that
/// holds for generic coefficients fails.
pub fn build_generic_ideal(spec: &InstanceSpec) -> Result<GenericInstance> {
    spec.validate()?;
    let mut rejected = Vec::new();
    for attempt in 0..=MAX_RETRIES {
        let seed = derive_seed(spec.seed, attempt as u64);
        match try_build(spec, seed)? {
            Ok(mut inst) => {
                inst.retries = attempt;
                inst.rejected = rejected;
                return Ok(inst);
            }
            Err(reason) => rejected.push(reason),
        }
    }
    Err(Error::GenericityFailure { attempts: MAX_RETRIES + 1, reason: rejected.join("; ") })
}

/// One attempt. The outer error is a hard failure, the inner one a genericity
/// rejection.
fn try_build(spec: &InstanceSpec, seed: u64) -> Result<std::result::Result<GenericInstance, String>> {
    let field = PrimeField::new(spec.prime)?;
    let nvars = spec.nvars();
    let mut rng = seeded_generator(seed);
    let forms: Vec<Polynomial> = spec.degrees.iter().map(|&d| random_generic_form(&field, nvars, d, &mut rng)).collect();

    let mut basis = GroebnerBasis::empty(field, nvars);
    let mut stages = Vec::new();
    for (k, f) in forms.iter().enumerate() {
        let reduced = normal_form(f, &basis);
        let cap = generic_degree_cap(&spec.degrees[..k]);
        let (next, trace) = ggv_extend_traced(&basis, &reduced, cap)?;
        if trace.total_dependent() > 0 {
            return Ok(Err(format!("form {} is a zero divisor (seed {seed})", k + 1)));
        }
        basis = next;
        stages.push(basis.initial_ideal());
    }

    let inn = basis.initial_ideal();
    if spec.with_z && inn.generators().iter().any(|m| m.exponent(nvars - 1) > 0) {
        return Ok(Err(format!("initial ideal involves z (seed {seed})")));
    }

    let (hilbert, table) = if spec.is_square() {
        let h = hilbert_data(spec.n, &spec.degrees)?;
        let t = StandardBasisTable::from_initial_ideal(&inn, spec.with_z)?;
        if t.sizes() != h.a {
            return Ok(Err(format!("Hilbert function {:?} differs from {:?} (seed {seed})", t.sizes(), h.a)));
        }
        (Some(h), Some(t))
    } else {
        (None, None)
    };

    let extension = match spec.extra {
        None => None,
        Some(d) => {
            let g = reduced_generic_form(&basis, d, &mut rng)?;
            let cap = generic_degree_cap(&spec.degrees);
            let (b, trace) = ggv_extend_traced(&basis, &g, cap)?;
            if trace.total_dependent() > 0 {
                return Ok(Err(format!("g is a zero divisor (seed {seed})")));
            }
            Some(Extension { d, g, cap, basis: b, trace })
        }
    };

    Ok(Ok(GenericInstance {
        spec: spec.clone(),
        field,
        used_seed: seed,
        retries: 0,
        forms,
        stages,
        basis,
        hilbert,
        table,
        extension,
        rejected: Vec::new(),
    }))
}

fn fmt_set<'a>(ms: impl IntoIterator<Item = &'a Monomial>, with_z: bool) -> String {
    let v: Vec<String> = ms.into_iter().map(|m| format_monomial(m, with_z)).collect();
    format!("{{{}}}", v.join(", "))
}

fn as_set(ms: &[Monomial]) -> BTreeSet<Monomial> {
    ms.iter().cloned().collect()
}

/// `x_n^r * ms`.
fn times_last(ms: &[Monomial], r: u32) -> BTreeSet<Monomial> {
    ms.iter().map(|m| m.mul_var(m.nvars() - 1, r as u16)).collect()
}

/// `B_{delta-i} = x_n^{delta-2i} B_i` for `0 <= i <= delta/2`.
pub fn check_stanley(table: &StandardBasisTable) -> Vec<Check> {
    let delta = table.delta();
    (0..=delta / 2)
        .map(|i| {
            let lhs = as_set(table.b(delta - i));
            let rhs = times_last(table.b(i), delta - 2 * i);
            let name = format!("stanley i={i}");
            if lhs == rhs {
                Check::pass(name)
            } else {
                Check::fail(name, format!("B_{} = {} but x_n^{}B_{} = {}", delta - i, fmt_set(&lhs, false), delta - 2 * i, i, fmt_set(&rhs, false)))
            }
        })
        .collect()
}

/// Multiplication by `x_n^r` from degree `j` to `j + r` matches the smallest
/// monomials on the larger side.
pub fn check_lefschetz(table: &StandardBasisTable, j: u32, r: u32) -> Check {
    let (bj, bjr) = (table.b(j), table.b(j + r));
    let name = format!("lefschetz j={j} r={r}");
    let (lhs, rhs) = if bj.len() <= bjr.len() {
        (as_set(&bjr[bjr.len() - bj.len()..]), times_last(bj, r))
    } else {
        (as_set(bjr), times_last(&bj[bj.len() - bjr.len()..], r))
    };
    if lhs == rhs {
        Check::pass(name)
    } else {
        Check::fail(name, format!("{} vs {}", fmt_set(&lhs, false), fmt_set(&rhs, false)))
    }
}

/// Every `(j, r)` with `j + r <= delta`.
pub fn check_lefschetz_all(table: &StandardBasisTable) -> Vec<Check> {
    let delta = table.delta();
    (0..=delta).flat_map(|j| (0..=delta - j).map(move |r| (j, r))).map(|(j, r)| check_lefschetz(table, j, r)).collect()
}

/// The `B~^e` structure: `B~^0 = ... = B~^mu`, the pairs
/// `B~^{delta-2l-1} = B~^{delta-2l}`, and `B~^{delta-2l} = {m in B~^0 : deg m <= l}`
/// for `0 <= l < sigma`.
pub fn check_b_tilde_structure(table: &StandardBasisTable, h: &HilbertData) -> Vec<Check> {
    let mut out = Vec::new();
    let base = b_tilde(table, 0);
    for e in 1..=h.mu {
        let name = format!("b_tilde {e} = b_tilde 0");
        let be = b_tilde(table, e);
        out.push(if be == base { Check::pass(name) } else { Check::fail(name, fmt_set(&be, false)) });
    }
    for l in 0..h.sigma {
        let top = b_tilde(table, h.delta - 2 * l);
        let below = b_tilde(table, h.delta - 2 * l - 1);
        let name = format!("b_tilde {} = b_tilde {}", h.delta - 2 * l - 1, h.delta - 2 * l);
        out.push(if top == below { Check::pass(name) } else { Check::fail(name, fmt_set(&below, false)) });
        let expect: BTreeSet<Monomial> = base.iter().filter(|m| m.degree() <= l).cloned().collect();
        let name = format!("b_tilde {} = degree <= {l} part", h.delta - 2 * l);
        out.push(if top == expect { Check::pass(name) } else { Check::fail(name, fmt_set(&top, false)) });
    }
    out
}

/// `|B_k| = a_k` for every `k`, and nothing above `delta`.
pub fn check_hilbert_match(table: &StandardBasisTable, h: &HilbertData) -> Check {
    if table.sizes() == h.a {
        Check::pass("hilbert")
    } else {
        Check::fail("hilbert", format!("{:?} vs {:?}", table.sizes(), h.a))
    }
}

/// Prediction of `in(I, g)` for `d >= delta`:
/// `in(I)` together with `z^{d+2i-delta} B_{delta-i}` for `i = 0..=delta`.
pub fn predict_initial_large_d(in_i: &MonomialIdeal, table: &StandardBasisTable, d: u32) -> Result<MonomialIdeal> {
    let delta = table.delta();
    if d < delta {
        return Err(Error::DegreeTooSmall { d, delta });
    }
    let extra = (0..=delta).flat_map(|i| table.lifted(delta - i, d + 2 * i - delta));
    Ok(in_i.with(extra))
}

/// `i* = floor((delta - d) / 2)`.
pub fn i_star(delta: u32, d: u32) -> u32 {
    delta.saturating_sub(d) / 2
}

/// Prediction of `in(I, g)` for `max(d_i) <= d < delta`, valid if the small
/// matrices are all nonsingular (proved for `d >= delta - 2`).
pub fn predict_initial_small_d(in_i: &MonomialIdeal, table: &StandardBasisTable, h: &HilbertData, d: u32) -> Result<MonomialIdeal> {
    let delta = table.delta();
    if d < h.max_degree() {
        return Err(Error::DegreeOrderViolation { d, max: h.max_degree() });
    }
    if d >= delta {
        return Err(Error::InvalidInput(format!("d = {d} is not below delta = {delta}")));
    }
    let a = |k: u32| table.a(k as i64) as usize;
    let istar = i_star(delta, d);
    let odd = (delta - d) % 2 == 1;
    let mut extra: Vec<Monomial> = Vec::new();
    let lift = |ms: &[Monomial], e: u32| ms.iter().map(|m| m.extend_with(e as u16)).collect::<Vec<_>>();

    // the a_j largest of B_{d+j}
    let lead_top = if odd { istar } else { istar.saturating_sub(1) };
    let lead_count = if odd || istar > 0 { lead_top + 1 } else { 0 };
    for j in 0..lead_count {
        extra.extend(lift(slice(table.b(d + j), SliceBounds::OpenClosed(0, a(j)))?, 0));
    }
    // the first degree where every z-free monomial is a leading term
    extra.extend(lift(table.b(d + istar + u32::from(odd)), 0));
    // the rest of B_{d+istar-t}, shifted by z^{2t} (even) or z^{2t+1} (odd)
    let (t0, shift) = if odd { (0, 1) } else { (1, 0) };
    for t in t0..=istar {
        let k = d + istar - t;
        let rest = slice(table.b(k), SliceBounds::OpenClosed(a(istar - t), a(k)))?;
        extra.extend(lift(rest, 2 * t + shift));
    }
    // all of B_j for j < d, shifted by z^{delta+d-2j}
    for j in 0..d {
        extra.extend(lift(table.b(j), delta + d - 2 * j));
    }
    Ok(in_i.with(extra))
}

/// Standard monomials of a predicted ideal of `S`, degrees `0..=through`.
pub fn standard_table_of_extension(prediction: &MonomialIdeal, through: u32) -> Vec<Vec<Monomial>> {
    (0..=through).map(|t| standard_monomials(prediction, t)).collect()
}

/// The standard monomials of `(I, g)` by the recursions that accompany the
/// predictions, degrees `0..=through`, each sorted decreasing.
pub fn extension_standard_recursion(table: &StandardBasisTable, d: u32, through: u32) -> Vec<Vec<Monomial>> {
    let delta = table.delta();
    let a = |k: u32| table.a(k as i64) as usize;
    let shift = |ms: &[Monomial], e: u32| -> Vec<Monomial> { ms.iter().map(|m| m.mul_var(m.nvars() - 1, e as u16)).collect() };
    let mut bt: Vec<Vec<Monomial>> = Vec::new();
    for t in 0..=through {
        let level: Vec<Monomial> = if t < d {
            table.e_level(t)
        } else if t >= delta + d {
            Vec::new()
        } else if d >= delta {
            let k = t - d;
            shift(&bt[(delta - k - 1) as usize], d + 2 * k + 1 - delta)
        } else {
            let istar = i_star(delta, d);
            let j = t - d;
            if j <= istar {
                let head = &table.b(t)[a(j)..a(t)];
                let mut v: Vec<Monomial> = head.iter().map(|m| m.extend_with(0)).collect();
                v.extend(shift(&bt[t as usize - 1], 1));
                v
            } else if (delta - d).is_multiple_of(2) {
                let m = j - istar;
                shift(&bt[(d + istar - 1 - m) as usize], 2 * m + 1)
            } else {
                let m = j - istar;
                shift(&bt[(d + istar - m) as usize], 2 * m)
            }
        };
        let mut level = level;
        level.sort_by(|x, y| y.cmp(x));
        bt.push(level);
    }
    bt
}

/// Compares enumerated and recursive standard monomials degree by degree.
pub fn check_extension_recursion(prediction: &MonomialIdeal, table: &StandardBasisTable, d: u32) -> Check {
    let through = table.delta() + d;
    let enumerated = standard_table_of_extension(prediction, through);
    let recursive = extension_standard_recursion(table, d, through);
    for (t, (e, r)) in enumerated.iter().zip(&recursive).enumerate() {
        if e != r {
            return Check::fail("standard recursion", format!("degree {t}: {} vs {}", fmt_set(e, true), fmt_set(r, true)));
        }
    }
    Check::pass("standard recursion")
}

/// Whether `d_i >= sum_{j<i} d_j - i - 1` for every `i` (1-based).
pub fn satisfies_partial_hypothesis(degrees: &[u32]) -> bool {
    let mut sum = 0i64;
    for (k, &d) in degrees.iter().enumerate() {
        let i = k as i64 + 1;
        if (d as i64) < sum - i - 1 {
            return false;
        }
        sum += d as i64;
    }
    true
}

/// Builds a generic ideal with the given degrees (in order) and checks that
/// each intermediate initial ideal is almost reverse lexicographic.
pub fn check_ms_partial(n: usize, degrees: &[u32], seed: u64) -> Result<Report> {
    if !satisfies_partial_hypothesis(degrees) {
        return Err(Error::HypothesisViolation(format!("degrees {degrees:?} violate d_i >= sum_(j<i) d_j - i - 1")));
    }
    let inst = build_generic_ideal(&InstanceSpec::new(n, degrees).seed(seed))?;
    let mut report = inst.report();
    report.extend(check_arl_stages(&inst));
    Ok(report)
}

/// Whether the initial ideal after each form is almost reverse lexicographic.
pub fn check_arl_stages(inst: &GenericInstance) -> Vec<Check> {
    let with_z = inst.spec.with_z;
    inst.stages
        .iter()
        .enumerate()
        .map(|(k, stage)| {
            let name = format!("arl after {} forms", k + 1);
            match is_almost_reverse_lex(stage).witness {
                None => Check::pass(name),
                Some((g, m)) => Check::fail(name, format!("{} misses larger {}", format_monomial(&g, with_z), format_monomial(&m, with_z))),
            }
        })
        .collect()
}

/// Prediction of `in(I, g)` by whichever formula applies to `d`, and whether it
/// is conjectural.
pub fn predict_initial(inst: &GenericInstance) -> Result<(MonomialIdeal, bool)> {
    let d = inst.extension()?.d;
    let table = inst.table()?;
    let h = inst.hilbert()?;
    let inn = inst.initial_ideal();
    if d >= table.delta() {
        Ok((predict_initial_large_d(&inn, table, d)?, false))
    } else {
        let p = predict_initial_small_d(&inn, table, h, d)?;
        Ok((p, d + 2 < table.delta()))
    }
}
