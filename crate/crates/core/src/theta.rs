//! Multiplication matrices of a form `g` on the standard monomials of a
//! square generic ideal, their blocks, and the square `Theta_i` selections.
//!
//! Row `m` of `M_i` holds the coefficients of `NF(m * g)` on the standard
//! monomials `E_{i+d}`; rows are labeled by `E_i`. Both label lists are in
//! decreasing order, which groups them as `B_i, zB_{i-1}, ..., z^i B_0`.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::generic::{i_star, GenericInstance, HilbertData, StandardBasisTable};
use crate::groebner::{GroebnerBasis, ProductRows};
use crate::linalg::DenseMatrix;
use crate::monomial::{format_monomial, Monomial};
use crate::polynomial::Polynomial;
use crate::report::{Check, Report};

/// `M_i` with its labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultMatrix {
    pub i: u32,
    pub d: u32,
    /// `E_i`, decreasing.
    pub rows: Vec<Monomial>,
    /// `E_{i+d}`, decreasing.
    pub cols: Vec<Monomial>,
    pub matrix: DenseMatrix,
    /// `a_0, ..., a_delta` of the table the labels come from.
    sizes: Vec<u64>,
}

/// Where the block `Gamma_{j,k}` sits inside `M_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockRef {
    pub j: u32,
    pub k: u32,
    pub rows: Range<usize>,
    pub cols: Range<usize>,
}

impl MultMatrix {
    fn a(&self, k: i64) -> usize {
        if k < 0 {
            0
        } else {
            self.sizes.get(k as usize).copied().unwrap_or(0) as usize
        }
    }

    pub fn delta(&self) -> u32 {
        self.sizes.len() as u32 - 1
    }

    /// Rows `z^{i-j} B_j`.
    pub fn row_group(&self, j: u32) -> Range<usize> {
        let start: usize = (j + 1..=self.i).map(|k| self.a(k as i64)).sum();
        start..start + if j <= self.i { self.a(j as i64) } else { 0 }
    }

    /// Columns `z^{d+i-k} B_k`.
    pub fn col_group(&self, k: u32) -> Range<usize> {
        let top = self.i + self.d;
        let start: usize = (k + 1..=top).map(|t| self.a(t as i64)).sum();
        start..start + if k <= top { self.a(k as i64) } else { 0 }
    }

    pub fn block_ref(&self, j: u32, k: u32) -> Result<BlockRef> {
        if j > self.i || k > self.i + self.d {
            return Err(Error::BoundsError(format!("block ({j}, {k}) outside M_{} (j <= {}, k <= {})", self.i, self.i, self.i + self.d)));
        }
        Ok(BlockRef { j, k, rows: self.row_group(j), cols: self.col_group(k) })
    }

    /// The entries of `Gamma_{j,k}`.
    pub fn gamma_block(&self, j: u32, k: u32) -> Result<(DenseMatrix, BlockRef)> {
        let b = self.block_ref(j, k)?;
        let rows: Vec<usize> = b.rows.clone().collect();
        let cols: Vec<usize> = b.cols.clone().collect();
        Ok((self.matrix.select(&rows, &cols), b))
    }

    /// Every block, in row-major order; together they tile the matrix.
    pub fn blocks(&self) -> Vec<BlockRef> {
        (0..=self.i)
            .rev()
            .flat_map(|j| (0..=self.i + self.d).rev().map(move |k| (j, k)))
            .map(|(j, k)| self.block_ref(j, k).unwrap())
            .collect()
    }

    pub fn row_index(&self, m: &Monomial) -> Option<usize> {
        self.rows.iter().position(|r| r == m)
    }

    pub fn col_index(&self, m: &Monomial) -> Option<usize> {
        self.cols.iter().position(|c| c == m)
    }

    /// TSV block: a header line `M_<i>` followed by the column labels, then one
    /// line per row.
    pub fn write_tsv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        let header: Vec<String> = self.cols.iter().map(|c| format_monomial(c, true)).collect();
        writeln!(w, "M_{}\t{}", self.i, header.join("\t"))?;
        for (r, label) in self.rows.iter().enumerate() {
            let vals: Vec<String> = self.matrix.row(r).iter().map(|v| v.value().to_string()).collect();
            writeln!(w, "{}\t{}", format_monomial(label, true), vals.join("\t"))?;
        }
        Ok(())
    }
}

/// `M_0, ..., M_through` for `g`, which must be reduced modulo `basis`.
pub fn build_all(basis: &GroebnerBasis, table: &StandardBasisTable, g: &Polynomial, through: u32) -> Result<Vec<MultMatrix>> {
    let d = g.degree().ok_or(Error::ZeroPolynomial)?;
    if !g.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let field = *basis.field();
    let mut rows = ProductRows::new(basis, g)?;
    let mut out = Vec::new();
    for i in 0..=through {
        if i > 0 {
            rows.advance();
        }
        let labels = table.e_level(i);
        let cols = table.e_level(i + d);
        let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(c, m)| (m, c)).collect();
        let mut matrix = DenseMatrix::zeros(labels.len(), cols.len());
        for (r, m) in labels.iter().enumerate() {
            let row = rows.row(m).ok_or_else(|| Error::InvariantViolation(format!("no row for {}", format_monomial(m, true))))?;
            for (mono, c) in row.terms() {
                let col = *index
                    .get(mono)
                    .ok_or_else(|| Error::InvariantViolation(format!("{} is not standard", format_monomial(mono, true))))?;
                matrix.set(r, col, *c);
            }
        }
        let rank = matrix.rank(&field);
        if rank < labels.len() {
            return Err(Error::RankDeficiency { i, rank, rows: labels.len() });
        }
        out.push(MultMatrix { i, d, rows: labels, cols, matrix, sizes: table.sizes() });
    }
    Ok(out)
}

/// `M_i` alone.
pub fn build_mi(basis: &GroebnerBasis, table: &StandardBasisTable, g: &Polynomial, i: u32) -> Result<MultMatrix> {
    Ok(build_all(basis, table, g, i)?.pop().expect("at least one matrix"))
}

/// The coefficients of `g` grouped by `z^{d-k} B_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GVector {
    pub d: u32,
    /// `v_k`, one entry per monomial of `B_k`.
    pub v: BTreeMap<u32, Vec<FieldElement>>,
    /// `c_k`, the last entry of `v_k`.
    pub c: BTreeMap<u32, FieldElement>,
}

impl GVector {
    pub fn from_form(g: &Polynomial, table: &StandardBasisTable) -> Result<Self> {
        let d = g.degree().ok_or(Error::ZeroPolynomial)?;
        let mut v = BTreeMap::new();
        let mut c = BTreeMap::new();
        let mut seen = 0;
        for k in 0..=d {
            let group = table.lifted(k, d - k);
            if group.is_empty() {
                continue;
            }
            let coeffs: Vec<FieldElement> = group.iter().map(|m| g.coefficient(m)).collect();
            seen += coeffs.iter().filter(|x| !x.is_zero()).count();
            c.insert(k, *coeffs.last().unwrap());
            v.insert(k, coeffs);
        }
        if seen != g.len() {
            return Err(Error::NotReduced("g has terms outside E_d".into()));
        }
        Ok(GVector { d, v, c })
    }

    /// `sum_k v_k . z^{d-k} B_k`.
    pub fn reconstruct(&self, field: &PrimeField, table: &StandardBasisTable) -> Result<Polynomial> {
        let nvars = table.n() + 1;
        let terms = self.v.iter().flat_map(|(&k, coeffs)| table.lifted(k, self.d - k).into_iter().zip(coeffs.iter().copied()));
        Polynomial::from_terms(field, nvars, terms)
    }

    pub fn c(&self, k: u32) -> Option<FieldElement> {
        self.c.get(&k).copied()
    }
}

/// The monomial carrying `c_t`: the smallest element of `z^{d-t} B_t`.
pub fn c_monomial(table: &StandardBasisTable, d: u32, t: u32) -> Option<Monomial> {
    table.b(t).last().map(|m| m.extend_with((d - t) as u16))
}

/// `g` with `c_t` replaced by `c_t + 1`.
pub fn perturb_c(field: &PrimeField, g: &Polynomial, table: &StandardBasisTable, t: u32) -> Result<Polynomial> {
    let d = g.degree().ok_or(Error::ZeroPolynomial)?;
    let m = c_monomial(table, d, t).ok_or_else(|| Error::BoundsError(format!("B_{t} is empty")))?;
    g.add(field, &Polynomial::monomial(m, FieldElement::ONE))
}

fn diff(field: &PrimeField, a: &DenseMatrix, b: &DenseMatrix, r: usize, c: usize) -> FieldElement {
    field.sub(b.get(r, c), a.get(r, c))
}

/// For one block, the entries that changed and whether the expected diagonal
/// changed by exactly one.
fn block_perturbation(field: &PrimeField, before: &MultMatrix, after: &MultMatrix, j: u32, k: u32) -> std::result::Result<(), String> {
    let b = before.block_ref(j, k).map_err(|e| e.to_string())?;
    let (nj, nk) = (b.rows.len(), b.cols.len());
    let one = FieldElement::ONE;
    let at = |r: usize, c: usize| diff(field, &before.matrix, &after.matrix, b.rows.start + r, b.cols.start + c);
    if nj <= nk {
        // the last nj columns carry c_{k-j} on their diagonal and nowhere else
        for r in 0..nj {
            for c in 0..nk {
                let expected = if c == nk - nj + r { one } else { FieldElement::ZERO };
                if at(r, c) != expected {
                    return Err(format!("entry ({r}, {c}) changed by {} (expected {})", at(r, c).value(), expected.value()));
                }
            }
        }
    }
    if nj >= nk {
        for s in 0..nk {
            let r = nj - nk + s;
            if at(r, s) != one {
                return Err(format!("diagonal entry ({r}, {s}) changed by {}", at(r, s).value()));
            }
        }
    }
    Ok(())
}

/// Perturbation test of the block structure for every `0 <= j <= i <= through`
/// and `j <= k <= min(delta, j + d)`: adding one to `c_{k-j}` moves the
/// expected diagonal of `Gamma_{j,k}` by exactly one, and when
/// `|B_j| <= |B_k|` moves nothing else in the block.
pub fn check_block_structure(basis: &GroebnerBasis, table: &StandardBasisTable, g: &Polynomial, through: u32) -> Result<Vec<Check>> {
    let field = *basis.field();
    let d = g.degree().ok_or(Error::ZeroPolynomial)?;
    let delta = table.delta();
    let base = build_all(basis, table, g, through)?;
    let mut out = Vec::new();
    for t in 0..=d.min(delta) {
        let gt = perturb_c(&field, g, table, t)?;
        let moved = build_all(basis, table, &gt, through)?;
        for (before, after) in base.iter().zip(&moved) {
            for j in 0..=before.i {
                let k = j + t;
                if k > delta {
                    continue;
                }
                let name = format!("block i={} j={j} k={k}", before.i);
                out.push(Check::from_result(name, block_perturbation(&field, before, after, j, k)));
            }
        }
    }
    Ok(out)
}

/// `Gamma_{j,k} = 0` whenever `k > d + j`.
pub fn check_zero_blocks(m: &MultMatrix) -> Vec<Check> {
    let mut out = Vec::new();
    for j in 0..=m.i {
        for k in j + m.d + 1..=m.i + m.d {
            let (blk, _) = m.gamma_block(j, k).unwrap();
            let name = format!("zero block i={} j={j} k={k}", m.i);
            out.push(if blk.is_zero() { Check::pass(name) } else { Check::fail(name, "nonzero entry") });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Large,
    Medium,
    Small,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Large => "large",
            Regime::Medium => "medium",
            Regime::Small => "small",
        }
    }

    /// The regime of `Theta_i` for extra degree `d`.
    pub fn of(i: u32, d: u32, delta: u32) -> Regime {
        if i + d >= delta {
            Regime::Large
        } else if i <= i_star(delta, d) {
            Regime::Small
        } else {
            Regime::Medium
        }
    }
}

/// A square choice of columns of `M_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSelection {
    pub i: u32,
    pub regime: Regime,
    /// Column indices into `M_i`, in increasing order.
    pub cols: Vec<usize>,
}

impl ThetaSelection {
    pub fn is_square(&self, m: &MultMatrix) -> bool {
        self.cols.len() == m.rows.len()
    }

    pub fn labels<'a>(&self, m: &'a MultMatrix) -> Vec<&'a Monomial> {
        self.cols.iter().map(|&c| &m.cols[c]).collect()
    }

    pub fn submatrix(&self, m: &MultMatrix) -> DenseMatrix {
        let rows: Vec<usize> = (0..m.rows.len()).collect();
        m.matrix.select(&rows, &self.cols)
    }

    /// Rows that vanish on the selected columns.
    pub fn zero_rows<'a>(&self, m: &'a MultMatrix) -> Vec<&'a Monomial> {
        let sub = self.submatrix(m);
        (0..sub.rows).filter(|&r| sub.is_zero_row(r)).map(|r| &m.rows[r]).collect()
    }
}

fn regime_error(i: u32, regime: Regime) -> Error {
    Error::RegimeError { i, regime: regime.name().into() }
}

/// The leftmost `|E_i|` columns, for `delta - d <= i <= delta`.
pub fn theta_large(m: &MultMatrix) -> Result<ThetaSelection> {
    if m.i + m.d < m.delta() || m.i > m.delta() {
        return Err(regime_error(m.i, Regime::Large));
    }
    Ok(ThetaSelection { i: m.i, regime: Regime::Large, cols: (0..m.rows.len()).collect() })
}

/// For `j = i, ..., 0`, the `a_j` largest columns of `z^{i-j} B_{d+j}`, for
/// `i <= i*`. Requires `d` to be at least every generator degree.
pub fn theta_small(m: &MultMatrix, h: &HilbertData) -> Result<ThetaSelection> {
    if m.d < h.max_degree() {
        return Err(Error::DegreeOrderViolation { d: m.d, max: h.max_degree() });
    }
    theta_small_unchecked(m)
}

/// [`theta_small`] without the degree-order requirement.
pub fn theta_small_unchecked(m: &MultMatrix) -> Result<ThetaSelection> {
    let delta = m.delta();
    if m.i + m.d >= delta || m.i > i_star(delta, m.d) {
        return Err(regime_error(m.i, Regime::Small));
    }
    let mut cols = Vec::new();
    for j in (0..=m.i).rev() {
        let g = m.col_group(m.d + j);
        let take = m.a(j as i64);
        if take > g.len() {
            return Err(Error::BoundsError(format!("a_{j} = {take} exceeds a_{} = {}", m.d + j, g.len())));
        }
        cols.extend(g.start..g.start + take);
    }
    Ok(ThetaSelection { i: m.i, regime: Regime::Small, cols })
}

/// All of `z^{i-j} B_{d+j}` for `L <= j <= i` and the `a_j` largest for
/// `j < L`, where `L = delta - d - i`, for `i* < i < delta - d`.
pub fn theta_medium(m: &MultMatrix, h: &HilbertData) -> Result<ThetaSelection> {
    if m.d < h.max_degree() {
        return Err(Error::DegreeOrderViolation { d: m.d, max: h.max_degree() });
    }
    let delta = m.delta();
    if m.i + m.d >= delta || m.i <= i_star(delta, m.d) {
        return Err(regime_error(m.i, Regime::Medium));
    }
    let l = delta - m.d - m.i;
    let mut cols = Vec::new();
    for j in (0..=m.i).rev() {
        let g = m.col_group(m.d + j);
        let take = if j >= l { g.len() } else { m.a(j as i64).min(g.len()) };
        cols.extend(g.start..g.start + take);
    }
    Ok(ThetaSelection { i: m.i, regime: Regime::Medium, cols })
}

/// The selection for whichever regime `i` falls in.
pub fn theta_for(m: &MultMatrix, h: &HilbertData) -> Result<ThetaSelection> {
    match Regime::of(m.i, m.d, m.delta()) {
        Regime::Large => theta_large(m),
        Regime::Small => theta_small(m, h),
        Regime::Medium => theta_medium(m, h),
    }
}

pub fn is_nonsingular(sel: &ThetaSelection, m: &MultMatrix, field: &PrimeField) -> bool {
    sel.is_square(m) && sel.submatrix(m).is_nonsingular(field)
}

/// The block triangular form of a medium selection: rows `z^{i-j}B_j` with
/// `j >= L` against the full column groups (`lambda`), the remaining rows
/// against the same columns (`lower_left`, zero), and the remaining rows
/// against the partial columns (`bottom_right`, a copy of `Theta_{L-1}`).
#[derive(Clone, Debug)]
pub struct MediumBlocks {
    pub l: u32,
    pub lambda: DenseMatrix,
    pub omega: DenseMatrix,
    pub lower_left: DenseMatrix,
    pub bottom_right: DenseMatrix,
}

pub fn medium_blocks(m: &MultMatrix, sel: &ThetaSelection) -> Result<MediumBlocks> {
    if sel.regime != Regime::Medium {
        return Err(regime_error(sel.i, Regime::Medium));
    }
    let l = m.delta() - m.d - m.i;
    let split_row = m.row_group(l).end;
    let full_end = m.col_group(m.d + l).end;
    let (full, partial): (Vec<usize>, Vec<usize>) = sel.cols.iter().partition(|&&c| c < full_end);
    let top: Vec<usize> = (0..split_row).collect();
    let bottom: Vec<usize> = (split_row..m.rows.len()).collect();
    Ok(MediumBlocks {
        l,
        lambda: m.matrix.select(&top, &full),
        omega: m.matrix.select(&top, &partial),
        lower_left: m.matrix.select(&bottom, &full),
        bottom_right: m.matrix.select(&bottom, &partial),
    })
}

/// A factor of the term the diagonal selection contributes to a determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ProfileKey {
    /// `c_k`.
    C(u32),
    /// The leading coefficient of `g`.
    Lead,
    /// Entries the selection scheme does not pin down.
    Unresolved,
}

/// Multiset of coefficients along the diagonal selection used to show
/// `det Theta_i` is a nonzero polynomial. The multiplicities add up to `|E_i|`.
///
/// A monomial `x_n^e m` of `B` with `x_n` not dividing `m` belongs to the
/// string of `m`; strings starting in degree `l` have length `delta - 2l + 1`,
/// and there are `a_l - a_{l-1}` of them.
pub fn selected_term_profile(i: u32, h: &HilbertData, d: u32, regime: Regime) -> Result<BTreeMap<ProfileKey, u64>> {
    let delta = h.delta;
    if Regime::of(i, d, delta) != regime || i > delta {
        return Err(regime_error(i, regime));
    }
    let starts = |l: u32| h.a(l as i64) - h.a(l as i64 - 1);
    let mut out: BTreeMap<ProfileKey, u64> = BTreeMap::new();
    let mut add = |k: ProfileKey, n: u64| {
        if n > 0 {
            *out.entry(k).or_insert(0) += n;
        }
    };
    match regime {
        Regime::Large => {
            for l in 0..=delta / 2 {
                let count = (i.min(delta - l) + 1).saturating_sub(l) as u64;
                add(ProfileKey::C(delta.saturating_sub(i + l)), starts(l) * count);
            }
        }
        Regime::Medium => {
            let big_l = delta - d - i;
            for l in 0..=delta / 2 {
                let count = (i.min(delta - l) + 1).saturating_sub(l.max(big_l)) as u64;
                let key = if l <= big_l { d } else { d.saturating_sub(l - big_l) };
                add(ProfileKey::C(key), starts(l) * count);
            }
            for (k, n) in small_profile(big_l - 1, h, d) {
                add(k, n);
            }
        }
        Regime::Small => {
            for (k, n) in small_profile(i, h, d) {
                add(k, n);
            }
        }
    }
    Ok(out)
}

fn small_profile(i: u32, h: &HilbertData, d: u32) -> Vec<(ProfileKey, u64)> {
    (0..=i)
        .map(|j| {
            let (aj, adj) = (h.a(j as i64), h.a((d + j) as i64));
            let key = if aj == adj {
                ProfileKey::C(d)
            } else if j == 0 {
                ProfileKey::Lead
            } else {
                ProfileKey::Unresolved
            };
            (key, aj)
        })
        .collect()
}

/// One row of the evidence table for the conjectural regimes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub i: u32,
    pub regime: Regime,
    pub size: usize,
    pub nonsingular: bool,
    pub seed: u64,
}

fn extension_parts(inst: &GenericInstance) -> Result<(&GroebnerBasis, &StandardBasisTable, &Polynomial, u32)> {
    let ext = inst.extension()?;
    Ok((&inst.basis, inst.table()?, &ext.g, ext.d))
}

/// `Theta_i` is nonsingular for every `delta - d <= i <= delta`.
pub fn verify_corollary_range(inst: &GenericInstance) -> Result<Report> {
    let (basis, table, g, d) = extension_parts(inst)?;
    let delta = table.delta();
    let mut report = inst.report();
    let ms = build_all(basis, table, g, delta)?;
    for m in &ms[delta.saturating_sub(d) as usize..] {
        let sel = theta_large(m)?;
        let name = format!("theta_{} large nonsingular", m.i);
        report.push(if is_nonsingular(&sel, m, &inst.field) {
            Check::pass(name)
        } else {
            Check::fail(name, format!("rank {} < {}", sel.submatrix(m).rank(&inst.field), m.rows.len()))
        });
    }
    Ok(report)
}

/// Nonsingularity of every small and medium `Theta_i` (`0 <= i < delta - d`).
/// The report is marked conjectural; its checks record the outcome.
pub fn verify_conjectures(inst: &GenericInstance) -> Result<(Report, Vec<Evidence>)> {
    let (basis, table, g, d) = extension_parts(inst)?;
    let h = inst.hilbert()?;
    if d < h.max_degree() {
        return Err(Error::DegreeOrderViolation { d, max: h.max_degree() });
    }
    let delta = table.delta();
    let mut report = inst.report();
    report.conjectural = true;
    let mut evidence = Vec::new();
    if d >= delta {
        return Ok((report, evidence));
    }
    let ms = build_all(basis, table, g, delta - d - 1)?;
    for m in &ms {
        let sel = theta_for(m, h)?;
        let ok = is_nonsingular(&sel, m, &inst.field);
        let name = format!("theta_{} {} nonsingular", m.i, sel.regime.name());
        report.push(if ok {
            Check::pass(name)
        } else {
            let zero: Vec<String> = sel.zero_rows(m).into_iter().map(|r| format_monomial(r, true)).collect();
            Check::fail(name, format!("singular; zero rows: [{}]", zero.join(", ")))
        });
        evidence.push(Evidence { i: m.i, regime: sel.regime, size: sel.cols.len(), nonsingular: ok, seed: inst.used_seed });
    }
    Ok((report, evidence))
}

/// Pivot columns of `M_i` as labels; these are the leading monomials the
/// extension finds in degree `i + d`.
pub fn pivot_labels(m: &MultMatrix, field: &PrimeField) -> Vec<Monomial> {
    m.matrix.pivot_columns(field).into_iter().map(|c| m.cols[c].clone()).collect()
}
