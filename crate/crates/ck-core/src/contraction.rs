//! Gamma-tables, predicted Levi-Maltsev decompositions for every family, and
//! brute-force verification of the decompositions by span computations over
//! flattened matrices.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{CkError, Result};
use crate::groups::GroupKind;
use crate::matrix::PMatrix;
use crate::pimenov::{IotaMonomial, JMonomial, JValuation, JValue, PimenovElement};
use crate::qlinalg::QMatrix;
use crate::rootsys::{cw_basis, scaled_cw_matrix, CWElement, RootLabel};
use crate::scalar::Cyclotomic;

/// Linear coordinates for matrices over the Pimenov algebra: one Cyclotomic
/// coefficient per (entry, iota-monomial) pair. Linear and injective on the
/// span of the matrices it was built from.
pub struct FlattenContext {
    rows: usize,
    cols: usize,
    monomials: Vec<IotaMonomial>,
    index: BTreeMap<IotaMonomial, usize>,
}

impl FlattenContext {
    /// Collect every iota-monomial appearing in the given matrices.
    pub fn new(mats: &[&PMatrix]) -> Self {
        let first = mats.first().expect("at least one matrix");
        let (rows, cols) = (first.rows(), first.cols());
        let mut index = BTreeMap::new();
        index.insert(IotaMonomial::unit(), 0usize);
        for m in mats {
            for e in m.entries() {
                for (mono, _) in e.terms() {
                    let next = index.len();
                    index.entry(mono.clone()).or_insert(next);
                }
            }
        }
        let mut monomials = vec![IotaMonomial::unit(); index.len()];
        for (mono, &i) in &index {
            monomials[i] = mono.clone();
        }
        FlattenContext { rows, cols, monomials, index }
    }

    pub fn width(&self) -> usize {
        self.rows * self.cols * self.monomials.len()
    }

    /// Flatten; monomials outside the context would break injectivity, so a
    /// commutator of context matrices (whose monomials multiply into new
    /// ones) extends over a context built from everything involved.
    pub fn flatten(&self, m: &PMatrix) -> Result<Vec<Cyclotomic>> {
        let nm = self.monomials.len();
        let mut out = vec![Cyclotomic::zero(); self.width()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                for (mono, coef) in m[(r, c)].terms() {
                    let Some(&mi) = self.index.get(mono) else {
                        return Err(CkError::IndexOutOfRange(format!(
                            "monomial {mono} outside flatten context"
                        )));
                    };
                    out[(r * self.cols + c) * nm + mi] = coef.clone();
                }
            }
        }
        Ok(out)
    }
}

/// A row-reduced span of flattened matrices supporting membership tests.
pub struct FlatSpan {
    rref: QMatrix,
    pivots: Vec<usize>,
}

impl FlatSpan {
    pub fn new(vectors: Vec<Vec<Cyclotomic>>, width: usize) -> Self {
        let m = if vectors.is_empty() {
            QMatrix::zero(0, width)
        } else {
            QMatrix::from_rows(vectors)
        };
        let (rref, pivots) = m.rref();
        FlatSpan { rref, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce a vector against the span; zero remainder means membership.
    pub fn contains(&self, v: &[Cyclotomic]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn reduce(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let mut w = v.to_vec();
        for (row, &pc) in self.pivots.iter().enumerate() {
            if !w[pc].is_zero() {
                let f = w[pc].clone();
                for c in 0..w.len() {
                    let sub = &f * &self.rref[(row, c)];
                    w[c] -= sub;
                }
            }
        }
        w
    }

    /// Coordinates of a member vector in the rref basis (None if outside).
    pub fn coordinates(&self, v: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
        let mut w = v.to_vec();
        let mut coords = vec![Cyclotomic::zero(); self.dim()];
        for (row, &pc) in self.pivots.iter().enumerate() {
            if !w[pc].is_zero() {
                let f = w[pc].clone();
                coords[row] = f.clone();
                for c in 0..w.len() {
                    let sub = &f * &self.rref[(row, c)];
                    w[c] -= sub;
                }
            }
        }
        w.iter().all(|x| x.is_zero()).then_some(coords)
    }
}

/// Expresses vectors in the coordinates of a fixed independent spanning set,
/// by tracking the row transform alongside the reduction.
pub struct BasisSolver {
    span: FlatSpan,
    /// rref rows = transform * original rows
    transform: QMatrix,
}

impl BasisSolver {
    /// `vectors` must be linearly independent.
    pub fn new(vectors: Vec<Vec<Cyclotomic>>, width: usize) -> Self {
        let n = vectors.len();
        let a = QMatrix::from_rows(vectors);
        let aug = a.hstack(&QMatrix::identity(n));
        let (r, pivots_aug) = aug.rref();
        let pivots: Vec<usize> = pivots_aug.into_iter().filter(|&c| c < width).collect();
        assert_eq!(pivots.len(), n, "BasisSolver requires independent vectors");
        let rref = QMatrix::from_fn(n, width, |i, j| r[(i, j)].clone());
        let transform = QMatrix::from_fn(n, n, |i, j| r[(i, width + j)].clone());
        BasisSolver { span: FlatSpan { rref, pivots }, transform }
    }

    /// Coordinates of `v` in the original spanning set; None when outside.
    pub fn coordinates(&self, v: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
        let cr = self.span.coordinates(v)?;
        // v = cr . R = cr . (C . A) => coords in A-rows = cr . C
        let n = self.transform.rows();
        let mut out = vec![Cyclotomic::zero(); n];
        for (i, ci) in cr.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (item, j) in out.iter_mut().zip(0..n) {
                *item += ci * &self.transform[(i, j)];
            }
        }
        Some(out)
    }
}

/// One cell of a Gamma-table.
#[derive(Clone, Debug)]
pub struct GammaCell {
    pub row: usize,
    pub col: usize,
    pub labels: Vec<RootLabel>,
    pub monomial: JMonomial,
    pub value: PimenovElement,
}

/// The triangular contraction bookkeeping table of a family.
#[derive(Clone, Debug)]
pub struct GammaTable {
    pub kind: GroupKind,
    pub rank: usize,
    pub diagonal: Vec<String>,
    pub cells: Vec<GammaCell>,
}

impl GammaTable {
    pub fn cell(&self, row: usize, col: usize) -> Option<&GammaCell> {
        self.cells.iter().find(|c| c.row == row && c.col == col)
    }

    /// ASCII rendering in the layout of the tables in the source material.
    pub fn ascii(&self) -> String {
        let mut s = String::new();
        let ncols = self.cells.iter().map(|c| c.col).max().unwrap_or(0);
        for (i, diag) in self.diagonal.iter().enumerate() {
            let row = i + self.row_offset();
            let mut line = String::new();
            let _ = write!(line, "{:>8} |", "");
            for _ in 0..i {
                let _ = write!(line, "{:>12}", "");
            }
            let _ = write!(line, "{diag:>12}");
            for col in row + 1..=ncols {
                match self.cell(row, col) {
                    Some(c) => {
                        let shown = if c.value.is_zero() {
                            "0".to_string()
                        } else {
                            c.monomial.to_string()
                        };
                        let _ = write!(line, "{shown:>12}");
                    }
                    None => {
                        let _ = write!(line, "{:>12}", "");
                    }
                }
            }
            s.push_str(line.trim_end());
            s.push('\n');
        }
        s
    }

    fn row_offset(&self) -> usize {
        match self.kind {
            GroupKind::UUnitary | GroupKind::SuSpecial | GroupKind::ASl => 0,
            _ => 1,
        }
    }
}

/// Build the Gamma-table of the family at the given rank and valuation.
pub fn gamma_table(kind: GroupKind, rank: usize, v: &JValuation) -> Result<GammaTable> {
    let mut cells = Vec::new();
    let mut diagonal = Vec::new();
    match kind {
        GroupKind::BSoOdd => {
            let n = 2 * rank;
            for k in 1..=rank {
                diagonal.push(format!("H{k}"));
            }
            for r in 1..=rank {
                for s in r + 1..=rank {
                    let mono = JMonomial::square_range(2 * r, 2 * s - 2);
                    cells.push(GammaCell {
                        row: r,
                        col: s,
                        labels: pair_labels(r, s),
                        value: mono.eval(v)?,
                        monomial: mono,
                    });
                }
                let mono = JMonomial::square_range(2 * r, n);
                cells.push(GammaCell {
                    row: r,
                    col: rank + 1,
                    labels: vec![
                        RootLabel::Short { sign: 1, k: r },
                        RootLabel::Short { sign: -1, k: r },
                    ],
                    value: mono.eval(v)?,
                    monomial: mono,
                });
            }
        }
        GroupKind::DSoEven => {
            for k in 1..=rank {
                diagonal.push(format!("H{k}"));
            }
            for r in 1..=rank {
                for s in r + 1..=rank {
                    let mono = JMonomial::square_range(2 * r, 2 * s - 2);
                    cells.push(GammaCell {
                        row: r,
                        col: s,
                        labels: pair_labels(r, s),
                        value: mono.eval(v)?,
                        monomial: mono,
                    });
                }
            }
        }
        GroupKind::UUnitary | GroupKind::SuSpecial | GroupKind::ASl => {
            if kind == GroupKind::UUnitary {
                for k in 0..=rank {
                    diagonal.push(format!("H{k}"));
                }
            } else {
                for k in 1..=rank {
                    diagonal.push(format!("H~{k}"));
                }
            }
            for mu in 0..rank {
                for nu in mu + 1..=rank {
                    let mono = JMonomial::square_range(mu + 1, nu);
                    cells.push(GammaCell {
                        row: mu,
                        col: nu,
                        labels: vec![RootLabel::Diff { a: mu, b: nu }, RootLabel::Diff { a: nu, b: mu }],
                        value: mono.eval(v)?,
                        monomial: mono,
                    });
                }
            }
        }
        GroupKind::CSp => {
            for k in 1..=rank {
                diagonal.push(format!("M{k}"));
            }
            for k in 1..=rank {
                for m in k + 1..=rank {
                    let mono = JMonomial::square_range(k + 1, m);
                    cells.push(GammaCell {
                        row: k,
                        col: m,
                        labels: pair_labels(k, m),
                        value: mono.eval(v)?,
                        monomial: mono,
                    });
                }
            }
        }
    }
    Ok(GammaTable { kind, rank, diagonal, cells })
}

fn pair_labels(r: usize, s: usize) -> Vec<RootLabel> {
    let mut out = Vec::with_capacity(4);
    for sr in [1i8, -1] {
        for ss in [1i8, -1] {
            out.push(RootLabel::Pair { sr, r, ss, s });
        }
    }
    out
}

/// A contraction: which parameter indices take nilpotent values, plus the
/// residual valuation of the remaining indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionSpec {
    pub kind: GroupKind,
    pub rank: usize,
    pub valuation: JValuation,
}

impl ContractionSpec {
    /// Validate the theorem hypotheses: so families contract only over even
    /// parameter indices; sp over indices >= 2; the orthogonal families take
    /// no imaginary values.
    pub fn new(kind: GroupKind, rank: usize, valuation: JValuation) -> Result<Self> {
        let expected = kind.param_count(rank);
        if valuation.arity() != expected {
            return Err(CkError::LengthMismatch { expected, got: valuation.arity() });
        }
        let nil = valuation.nilpotent_indices();
        match kind {
            GroupKind::BSoOdd | GroupKind::DSoEven => {
                if let Some(&k) = nil.iter().find(|&&k| k % 2 != 0) {
                    return Err(CkError::InadmissibleSpec(format!(
                        "orthogonal contractions act on even parameter indices only, got iota_{k}"
                    )));
                }
                if valuation.values().iter().any(|j| *j == JValue::Imag) {
                    return Err(CkError::InadmissibleSpec(
                        "orthogonal parameters take values 1 or iota only".into(),
                    ));
                }
            }
            GroupKind::CSp => {
                if nil.contains(&1) {
                    return Err(CkError::InadmissibleSpec(
                        "symplectic contractions require index >= 2".into(),
                    ));
                }
            }
            _ => {}
        }
        Ok(ContractionSpec { kind, rank, valuation })
    }

    pub fn nilpotent_indices(&self) -> Vec<usize> {
        self.valuation.nilpotent_indices()
    }
}

/// One semisimple block of the predicted decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// rendered name, e.g. "so(3;j3,j4)" or "H1" or "M2"
    pub label: String,
    /// Cartan indices contained in the block
    pub cartan: Vec<usize>,
    /// root labels contained in the block
    pub roots: Vec<RootLabel>,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.cartan.len() + self.roots.len()
    }
}

/// Predicted Levi-Maltsev data: radical labels and semisimple blocks.
#[derive(Clone, Debug)]
pub struct LeviMaltsev {
    pub spec: ContractionSpec,
    pub radical: Vec<RootLabel>,
    pub blocks: Vec<Block>,
}

impl LeviMaltsev {
    pub fn radical_dim(&self) -> usize {
        self.radical.len()
    }

    pub fn semisimple_dim(&self) -> usize {
        self.blocks.iter().map(Block::dim).sum()
    }
}

fn param_list(lo: usize, hi: usize) -> String {
    if lo > hi {
        return String::new();
    }
    (lo..=hi).map(|l| format!("j{l}")).collect::<Vec<_>>().join(",")
}

/// The theorem-level decomposition for a contraction spec: the radical is
/// spanned by the zero-cell generators, the blocks follow the direct-sum
/// formulas of the family's theorem.
pub fn predicted_decomposition(spec: &ContractionSpec) -> Result<LeviMaltsev> {
    let kind = spec.kind;
    let rank = spec.rank;
    let v = &spec.valuation;
    let table = gamma_table(kind, rank, v)?;
    let radical: Vec<RootLabel> = table
        .cells
        .iter()
        .filter(|c| c.value.is_zero())
        .flat_map(|c| c.labels.iter().copied())
        .collect();
    let nil = spec.nilpotent_indices();
    let mut blocks = Vec::new();
    match kind {
        GroupKind::BSoOdd | GroupKind::DSoEven => {
            // contraction indices 2k_1 < ... < 2k_p partition Cartan indices
            let ks: Vec<usize> = nil.iter().map(|&i| i / 2).collect();
            let mut bounds = vec![0usize];
            bounds.extend(ks.iter().copied());
            bounds.push(rank);
            for w in 0..bounds.len() - 1 {
                let (lo, hi) = (bounds[w] + 1, bounds[w + 1]);
                if lo > hi {
                    continue;
                }
                let cartan: Vec<usize> = (lo..=hi).collect();
                let mut roots = Vec::new();
                for r in lo..=hi {
                    for s in r + 1..=hi {
                        roots.extend(pair_labels(r, s));
                    }
                }
                let last = w + 1 == bounds.len() - 1;
                let label;
                if kind == GroupKind::BSoOdd && last {
                    // last block keeps the short roots: so(2(m - k_p) + 1)
                    for k in lo..=hi {
                        roots.push(RootLabel::Short { sign: 1, k });
                        roots.push(RootLabel::Short { sign: -1, k });
                    }
                    label = format!("so({};{})", 2 * (hi - lo + 1) + 1, param_list(2 * lo - 1, 2 * rank));
                } else if lo == hi {
                    label = format!("H{lo}(j{})", 2 * lo - 1);
                } else {
                    label = format!("so({};{})", 2 * (hi - lo + 1), param_list(2 * lo - 1, 2 * hi - 1));
                }
                blocks.push(Block { label, cartan, roots });
            }
        }
        GroupKind::UUnitary | GroupKind::SuSpecial | GroupKind::ASl => {
            // indices k_1 < ... < k_m in 1..n split the 0-based diagonal range
            let mut bounds = vec![0usize];
            bounds.extend(nil.iter().copied());
            bounds.push(rank + 1);
            for w in 0..bounds.len() - 1 {
                let (lo, hi) = (bounds[w], bounds[w + 1] - 1); // 0-based inclusive
                if lo > hi {
                    continue;
                }
                let cartan: Vec<usize> = (lo..=hi).collect();
                let mut roots = Vec::new();
                for a in lo..=hi {
                    for b in lo..=hi {
                        if a != b {
                            roots.push(RootLabel::Diff { a, b });
                        }
                    }
                }
                let sz = hi - lo + 1;
                let last = w + 1 == bounds.len() - 1;
                let label = if kind == GroupKind::SuSpecial && last {
                    format!("su({};{})", sz, param_list(lo + 1, rank))
                } else if sz == 1 {
                    format!("H{lo}")
                } else {
                    format!("u({};{})", sz, param_list(lo + 1, hi))
                };
                blocks.push(Block { label, cartan, roots });
            }
        }
        GroupKind::CSp => {
            // indices k_1 < ... < k_m in 2..n partition 1..n
            let mut bounds = vec![1usize];
            bounds.extend(nil.iter().copied());
            bounds.push(rank + 1);
            for w in 0..bounds.len() - 1 {
                let (lo, hi) = (bounds[w], bounds[w + 1] - 1);
                if lo > hi {
                    continue;
                }
                let cartan: Vec<usize> = (lo..=hi).collect();
                let mut roots = Vec::new();
                for k in lo..=hi {
                    roots.push(RootLabel::Long { sign: 1, k });
                    roots.push(RootLabel::Long { sign: -1, k });
                    for m in k + 1..=hi {
                        roots.extend(pair_labels(k, m));
                    }
                }
                let sz = hi - lo + 1;
                let label = if sz == 1 {
                    format!("M{lo}")
                } else {
                    format!("sp({};{})", sz, param_list(lo + 1, hi))
                };
                blocks.push(Block { label, cartan, roots });
            }
        }
    }
    Ok(LeviMaltsev { spec: spec.clone(), radical, blocks })
}

/// Per-check outcome for a decomposition verification.
#[derive(Clone, Debug, serde::Serialize)]
pub struct DecompCheck {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct DecompReport {
    pub kind: String,
    pub rank: usize,
    pub valuation: String,
    pub radical_dim: usize,
    pub radical_abelian: bool,
    pub block_labels: Vec<String>,
    pub checks: Vec<DecompCheck>,
}

impl DecompReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct AlgebraData {
    basis: Vec<CWElement>,
    mats: Vec<PMatrix>,
    flat: Vec<Vec<Cyclotomic>>,
    ctx: FlattenContext,
}

fn algebra_data(kind: GroupKind, rank: usize, v: &JValuation) -> Result<AlgebraData> {
    let basis = cw_basis(kind, rank);
    let mats: Vec<PMatrix> =
        basis.iter().map(|el| scaled_cw_matrix(kind, el, rank, v)).collect::<Result<_>>()?;
    // commutators stay inside the algebra span, and products of basis
    // monomials can only produce monomials of products of entries; build the
    // context from all pairwise products to be safe.
    let mut all: Vec<PMatrix> = mats.clone();
    for i in 0..mats.len() {
        for j in 0..mats.len() {
            if i < j {
                all.push(mats[i].commutator(&mats[j])?);
            }
        }
    }
    let refs: Vec<&PMatrix> = all.iter().collect();
    let ctx = FlattenContext::new(&refs);
    let flat: Vec<Vec<Cyclotomic>> = mats.iter().map(|m| ctx.flatten(m)).collect::<Result<_>>()?;
    Ok(AlgebraData { basis, mats, flat, ctx })
}

/// Exact verification of a predicted decomposition:
/// (i)   [T, T] inside span T,
/// (ii)  [M, T] inside span T,
/// (iii) [M, M] inside span M,
/// (iv)  span T and span M intersect trivially and fill the algebra,
/// (v)   the lower central series of T terminates,
/// (vi)  (iota-free residual only) the Killing form of the contracted
///       algebra restricted to the derived part [M, M] is nondegenerate.
///       The reductive blocks carry central directions (every H in a
///       degenerate block, the trace direction of every u block), so the
///       meaningful semisimplicity witness lives on the derived subalgebra.
pub fn verify_decomposition(spec: &ContractionSpec) -> Result<DecompReport> {
    let kind = spec.kind;
    let rank = spec.rank;
    let v = &spec.valuation;
    let pred = predicted_decomposition(spec)?;
    let data = algebra_data(kind, rank, v)?;
    let dim_l = data.basis.len();

    let idx_of = |el: &CWElement| data.basis.iter().position(|b| b == el).expect("basis element");
    let t_idx: Vec<usize> =
        pred.radical.iter().map(|lab| idx_of(&CWElement::Root(*lab))).collect();
    let m_idx: Vec<usize> = (0..dim_l).filter(|i| !t_idx.contains(i)).collect();

    let t_span = FlatSpan::new(t_idx.iter().map(|&i| data.flat[i].clone()).collect(), data.ctx.width());
    let m_span = FlatSpan::new(m_idx.iter().map(|&i| data.flat[i].clone()).collect(), data.ctx.width());

    let mut checks = Vec::new();
    let mut radical_abelian = true;

    // (i) [T, T] in span T
    let mut ok = true;
    let mut detail = String::new();
    for &i in &t_idx {
        for &j in &t_idx {
            if i >= j {
                continue;
            }
            let c = data.mats[i].commutator(&data.mats[j])?;
            if !c.is_zero() {
                radical_abelian = false;
            }
            if !t_span.contains(&data.ctx.flatten(&c)?) {
                ok = false;
                detail = format!("[{}, {}] escapes T", data.basis[i], data.basis[j]);
            }
        }
    }
    checks.push(DecompCheck { name: "radical_closed".into(), passed: ok, details: detail });

    // (ii) [M, T] in span T
    let mut ok = true;
    let mut detail = String::new();
    for &i in &m_idx {
        for &j in &t_idx {
            let c = data.mats[i].commutator(&data.mats[j])?;
            if !t_span.contains(&data.ctx.flatten(&c)?) {
                ok = false;
                detail = format!("[{}, {}] escapes T", data.basis[i], data.basis[j]);
            }
        }
    }
    checks.push(DecompCheck { name: "radical_ideal".into(), passed: ok, details: detail });

    // (iii) [M, M] in span M
    let mut ok = true;
    let mut detail = String::new();
    let mut m_der_vecs = Vec::new();
    for &i in &m_idx {
        for &j in &m_idx {
            if i >= j {
                continue;
            }
            let c = data.mats[i].commutator(&data.mats[j])?;
            let f = data.ctx.flatten(&c)?;
            if !m_span.contains(&f) {
                ok = false;
                detail = format!("[{}, {}] escapes M", data.basis[i], data.basis[j]);
            }
            if !c.is_zero() {
                m_der_vecs.push(f);
            }
        }
    }
    checks.push(DecompCheck { name: "levi_subalgebra".into(), passed: ok, details: detail });

    // (iv) complementarity
    let dims_ok = t_span.dim() == t_idx.len()
        && m_span.dim() == m_idx.len()
        && t_span.dim() + m_span.dim() == dim_l;
    let all_span = FlatSpan::new(data.flat.clone(), data.ctx.width());
    let full = all_span.dim() == dim_l;
    checks.push(DecompCheck {
        name: "complementary".into(),
        passed: dims_ok && full,
        details: format!("dim T = {}, dim M = {}, dim L = {}", t_span.dim(), m_span.dim(), dim_l),
    });

    // (v) lower central series of T: T_(k+1) = [T_(k), T] reaches 0
    let mut current: Vec<PMatrix> = t_idx.iter().map(|&i| data.mats[i].clone()).collect();
    let mut steps = 0usize;
    let mut nilpotent = t_idx.is_empty();
    while steps <= t_idx.len() {
        let mut next_vecs = Vec::new();
        let mut next_mats = Vec::new();
        for a in &current {
            for &j in &t_idx {
                let c = a.commutator(&data.mats[j])?;
                if !c.is_zero() {
                    let f = data.ctx.flatten(&c)?;
                    let probe = FlatSpan::new(next_vecs.clone(), data.ctx.width());
                    if !probe.contains(&f) {
                        next_vecs.push(f);
                        next_mats.push(c);
                    }
                }
            }
        }
        if next_mats.is_empty() {
            nilpotent = true;
            break;
        }
        current = next_mats;
        steps += 1;
    }
    checks.push(DecompCheck {
        name: "radical_nilpotent".into(),
        passed: nilpotent,
        details: format!("lower central series vanished after {steps} steps"),
    });

    // (vi) Killing witness on [M, M] for iota-free residuals
    let residual_iota_free = spec.valuation.nilpotent_indices() == spec.nilpotent_indices();
    if residual_iota_free && dims_ok && full {
        // structure constants in the original basis coordinates
        let solver = BasisSolver::new(data.flat.clone(), data.ctx.width());
        let mut ad = Vec::with_capacity(dim_l);
        let mut coords_ok = true;
        for i in 0..dim_l {
            let mut mat = QMatrix::zero(dim_l, dim_l);
            for j in 0..dim_l {
                let c = data.mats[i].commutator(&data.mats[j])?;
                match solver.coordinates(&data.ctx.flatten(&c)?) {
                    Some(co) => {
                        for (k, val) in co.into_iter().enumerate() {
                            mat[(k, j)] = val;
                        }
                    }
                    None => coords_ok = false,
                }
            }
            ad.push(mat);
        }
        // independent basis of [M, M], as coordinates in the algebra basis
        let mut picked = FlatSpan::new(Vec::new(), data.ctx.width());
        let mut der_coords: Vec<Vec<Cyclotomic>> = Vec::new();
        let mut der_vectors: Vec<Vec<Cyclotomic>> = Vec::new();
        for vec in &m_der_vecs {
            if !picked.contains(vec) {
                if let Some(co) = solver.coordinates(vec) {
                    der_coords.push(co);
                }
                der_vectors.push(vec.clone());
                picked = FlatSpan::new(der_vectors.clone(), data.ctx.width());
            }
        }
        let dd = der_coords.len();
        let ad_of = |co: &[Cyclotomic]| {
            let mut acc = QMatrix::zero(dim_l, dim_l);
            for (i, c) in co.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&ad[i].scale(c)).unwrap();
                }
            }
            acc
        };
        let ad_der: Vec<QMatrix> = der_coords.iter().map(|co| ad_of(co)).collect();
        let mut killing = QMatrix::zero(dd, dd);
        for a in 0..dd {
            for b in a..dd {
                let t = ad_der[a].mul(&ad_der[b]).unwrap().trace();
                killing[(a, b)] = t.clone();
                killing[(b, a)] = t;
            }
        }
        let nondeg = killing.rank() == dd;
        checks.push(DecompCheck {
            name: "killing_semisimple_witness".into(),
            passed: coords_ok && nondeg,
            details: format!("rank {} on derived part of dim {}", killing.rank(), dd),
        });
    }

    // block structure: block dims fill M, cross-block roots commute
    let block_dim_sum: usize = pred.blocks.iter().map(Block::dim).sum();
    let mut cross_ok = true;
    for (bi, b1) in pred.blocks.iter().enumerate() {
        for b2 in pred.blocks.iter().skip(bi + 1) {
            for l1 in &b1.roots {
                for l2 in &b2.roots {
                    let m1 = &data.mats[idx_of(&CWElement::Root(*l1))];
                    let m2 = &data.mats[idx_of(&CWElement::Root(*l2))];
                    if !m1.commutator(m2)?.is_zero() {
                        cross_ok = false;
                    }
                }
            }
        }
    }
    checks.push(DecompCheck {
        name: "block_structure".into(),
        passed: block_dim_sum == m_idx.len() && cross_ok,
        details: format!("blocks fill dim {block_dim_sum} of {}", m_idx.len()),
    });

    Ok(DecompReport {
        kind: kind.name().to_string(),
        rank,
        valuation: v.render(),
        radical_dim: pred.radical.len(),
        radical_abelian,
        block_labels: pred.blocks.iter().map(|b| b.label.clone()).collect(),
        checks,
    })
}

/// Block of an ordered contraction partition.
#[derive(Clone, Debug)]
pub struct OrderedBlock {
    /// zero cells newly produced by this contraction step
    pub cells: Vec<(usize, usize)>,
    pub labels: Vec<RootLabel>,
    /// the block span is an ideal of the full radical
    pub is_ideal: bool,
    /// the block span is a subalgebra
    pub is_subalgebra: bool,
    /// brackets with all earlier blocks vanish
    pub commutes_with_earlier: bool,
}

/// The nested radical structure induced by a sequence of one-dimensional
/// contractions, with sub-ideal rank tests on every block.
pub fn radical_block_structure(
    kind: GroupKind,
    rank: usize,
    order: &[usize],
) -> Result<Vec<OrderedBlock>> {
    let params = kind.param_count(rank);
    let mk_val = |idx: &[usize]| {
        JValuation::new(
            (1..=params)
                .map(|k| if idx.contains(&k) { JValue::Iota } else { JValue::One })
                .collect(),
        )
    };
    let full_val = mk_val(order);
    let _ = ContractionSpec::new(kind, rank, full_val.clone())?;
    let data = algebra_data(kind, rank, &full_val)?;
    let idx_of = |el: &CWElement| data.basis.iter().position(|b| b == el).expect("basis element");

    // radical of the full contraction
    let full_table = gamma_table(kind, rank, &full_val)?;
    let radical_labels: Vec<RootLabel> = full_table
        .cells
        .iter()
        .filter(|c| c.value.is_zero())
        .flat_map(|c| c.labels.iter().copied())
        .collect();
    let t_idx: Vec<usize> =
        radical_labels.iter().map(|l| idx_of(&CWElement::Root(*l))).collect();

    let mut seen_cells: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();
    let mut earlier_idx: Vec<usize> = Vec::new();
    for step in 1..=order.len() {
        let val = mk_val(&order[..step]);
        let table = gamma_table(kind, rank, &val)?;
        let mut cells = Vec::new();
        let mut labels = Vec::new();
        for c in &table.cells {
            if c.value.is_zero() && !seen_cells.contains(&(c.row, c.col)) {
                seen_cells.push((c.row, c.col));
                cells.push((c.row, c.col));
                labels.extend(c.labels.iter().copied());
            }
        }
        let b_idx: Vec<usize> = labels.iter().map(|l| idx_of(&CWElement::Root(*l))).collect();
        let b_span =
            FlatSpan::new(b_idx.iter().map(|&i| data.flat[i].clone()).collect(), data.ctx.width());
        // ideal of T: [T, B] inside span B
        let mut is_ideal = true;
        for &i in &t_idx {
            for &j in &b_idx {
                let c = data.mats[i].commutator(&data.mats[j])?;
                if !b_span.contains(&data.ctx.flatten(&c)?) {
                    is_ideal = false;
                }
            }
        }
        let mut is_subalgebra = true;
        for &i in &b_idx {
            for &j in &b_idx {
                let c = data.mats[i].commutator(&data.mats[j])?;
                if !b_span.contains(&data.ctx.flatten(&c)?) {
                    is_subalgebra = false;
                }
            }
        }
        let mut commutes = true;
        for &i in &earlier_idx {
            for &j in &b_idx {
                if !data.mats[i].commutator(&data.mats[j])?.is_zero() {
                    commutes = false;
                }
            }
        }
        earlier_idx.extend(b_idx.iter().copied());
        blocks.push(OrderedBlock {
            cells,
            labels,
            is_ideal,
            is_subalgebra,
            commutes_with_earlier: commutes,
        });
    }
    Ok(blocks)
}

/// All admissible contraction valuations of a family at a rank: nilpotent
/// index subsets allowed by the theorems, residual values 1 (orthogonal) or
/// {1, i} (unitary/symplectic), capped to keep enumeration finite.
pub fn admissible_valuations(kind: GroupKind, rank: usize, residual_imag: bool) -> Vec<JValuation> {
    let params = kind.param_count(rank);
    let candidate_nil: Vec<usize> = match kind {
        GroupKind::BSoOdd | GroupKind::DSoEven => (1..=params).filter(|k| k % 2 == 0).collect(),
        GroupKind::CSp => (2..=params).collect(),
        _ => (1..=params).collect(),
    };
    let mut out = Vec::new();
    for mask in 1u32..(1 << candidate_nil.len()) {
        let nil: Vec<usize> = candidate_nil
            .iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &k)| k)
            .collect();
        let residual: Vec<usize> = (1..=params).filter(|k| !nil.contains(k)).collect();
        let residual_choices = if residual_imag && !matches!(kind, GroupKind::BSoOdd | GroupKind::DSoEven)
        {
            1u32 << residual.len().min(12)
        } else {
            1
        };
        for rmask in 0..residual_choices {
            let mut values = vec![JValue::One; params];
            for &k in &nil {
                values[k - 1] = JValue::Iota;
            }
            for (b, &k) in residual.iter().enumerate() {
                if rmask & (1 << b) != 0 {
                    values[k - 1] = JValue::Imag;
                }
            }
            out.push(JValuation::new(values));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vals(kind: GroupKind, rank: usize, nil: &[usize]) -> JValuation {
        let params = kind.param_count(rank);
        JValuation::new(
            (1..=params)
                .map(|k| if nil.contains(&k) { JValue::Iota } else { JValue::One })
                .collect(),
        )
    }

    #[test]
    fn flatten_linear_and_zero() {
        let v = vals(GroupKind::BSoOdd, 2, &[2]);
        let data = algebra_data(GroupKind::BSoOdd, 2, &v).unwrap();
        let zero = PMatrix::zero(5, 5, v.arity());
        assert!(data.ctx.flatten(&zero).unwrap().iter().all(|x| x.is_zero()));
        let a = &data.mats[0];
        let b = &data.mats[1];
        let lin = a.scale_scalar(&Cyclotomic::from_int(3)).add(&b.scale_scalar(&Cyclotomic::from_int(-2))).unwrap();
        let fa = data.ctx.flatten(a).unwrap();
        let fb = data.ctx.flatten(b).unwrap();
        let fl = data.ctx.flatten(&lin).unwrap();
        for i in 0..fl.len() {
            let expect = &fa[i].scale(&crate::scalar::rat_int(3)) - &fb[i].scale(&crate::scalar::rat_int(2));
            assert_eq!(fl[i], expect);
        }
    }

    #[test]
    fn gamma5_iota2_cells() {
        // Gamma_5(iota_2): (1,2) = 0, (1,3) = 0, (2,3) = j4^2
        let v = vals(GroupKind::BSoOdd, 2, &[2]);
        let t = gamma_table(GroupKind::BSoOdd, 2, &v).unwrap();
        assert!(t.cell(1, 2).unwrap().value.is_zero());
        assert!(t.cell(1, 3).unwrap().value.is_zero());
        assert!(t.cell(2, 3).unwrap().value.is_one());
        assert_eq!(t.cell(2, 3).unwrap().monomial.to_string(), "j4^2");
    }

    #[test]
    fn gamma5_iota4_cells() {
        let v = vals(GroupKind::BSoOdd, 2, &[4]);
        let t = gamma_table(GroupKind::BSoOdd, 2, &v).unwrap();
        assert!(t.cell(1, 2).unwrap().value.is_one());
        assert!(t.cell(1, 3).unwrap().value.is_zero());
        assert!(t.cell(2, 3).unwrap().value.is_zero());
    }

    #[test]
    fn gamma2_unitary_single_cell() {
        let v = vals(GroupKind::UUnitary, 1, &[]);
        let t = gamma_table(GroupKind::UUnitary, 1, &v).unwrap();
        assert_eq!(t.cells.len(), 1);
        assert_eq!(t.cell(0, 1).unwrap().monomial.to_string(), "j1^2");
    }

    #[test]
    fn so5_iota2_decomposition() {
        let spec = ContractionSpec::new(GroupKind::BSoOdd, 2, vals(GroupKind::BSoOdd, 2, &[2])).unwrap();
        let d = predicted_decomposition(&spec).unwrap();
        // T_6 = {E_{+-e1 +- e2}, E_{+-e1}}
        assert_eq!(d.radical.len(), 6);
        assert!(d.radical.contains(&RootLabel::Short { sign: 1, k: 1 }));
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.blocks[0].label, "H1(j1)");
        assert_eq!(d.blocks[1].label, "so(3;j3,j4)");
        let rep = verify_decomposition(&spec).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.radical_abelian);
    }

    #[test]
    fn so5_iota4_decomposition() {
        let spec = ContractionSpec::new(GroupKind::BSoOdd, 2, vals(GroupKind::BSoOdd, 2, &[4])).unwrap();
        let d = predicted_decomposition(&spec).unwrap();
        assert_eq!(d.radical.len(), 4); // T_4 = {E_{+-e1}, E_{+-e2}}
        assert!(d.radical.iter().all(|l| matches!(l, RootLabel::Short { .. })));
        assert_eq!(d.blocks.len(), 1);
        assert!(d.blocks[0].label.starts_with("so(4;"));
        assert!(verify_decomposition(&spec).unwrap().passed());
    }

    #[test]
    fn so5_double_contraction_radical_not_abelian() {
        let spec = ContractionSpec::new(GroupKind::BSoOdd, 2, vals(GroupKind::BSoOdd, 2, &[2, 4])).unwrap();
        let rep = verify_decomposition(&spec).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.radical_dim, 8);
        assert!(!rep.radical_abelian); // T_8 nilpotent but not commutative
    }

    #[test]
    fn odd_index_so_contraction_rejected() {
        let err = ContractionSpec::new(GroupKind::BSoOdd, 2, vals(GroupKind::BSoOdd, 2, &[1]));
        assert!(err.is_err());
    }

    #[test]
    fn u3_contractions_match_paper() {
        // u(3; iota_1): T_4 semidirect (H0 + u2(j2))
        let spec = ContractionSpec::new(GroupKind::UUnitary, 2, vals(GroupKind::UUnitary, 2, &[1])).unwrap();
        let d = predicted_decomposition(&spec).unwrap();
        assert_eq!(d.radical.len(), 4);
        assert_eq!(d.blocks[0].label, "H0");
        assert_eq!(d.blocks[1].label, "u(2;j2)");
        assert!(verify_decomposition(&spec).unwrap().passed());
        // dimension formula 2 k1 (n - k1 + 1)
        assert_eq!(d.radical.len(), 2 * 1 * (2 - 1 + 1));
    }

    #[test]
    fn u_dim_formula_holds() {
        for rank in 1..=4usize {
            for k1 in 1..=rank {
                let spec =
                    ContractionSpec::new(GroupKind::UUnitary, rank, vals(GroupKind::UUnitary, rank, &[k1]))
                        .unwrap();
                let d = predicted_decomposition(&spec).unwrap();
                assert_eq!(d.radical.len(), 2 * k1 * (rank - k1 + 1), "rank {rank}, k1 {k1}");
            }
        }
    }

    #[test]
    fn sp_single_contraction() {
        // sp(n; iota_{k1}) = T ix (sp(k1-1) + sp(n-k1+1))
        let spec = ContractionSpec::new(GroupKind::CSp, 3, vals(GroupKind::CSp, 3, &[2])).unwrap();
        let d = predicted_decomposition(&spec).unwrap();
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.blocks[0].label, "M1");
        assert!(d.blocks[1].label.starts_with("sp(2;"));
        assert!(verify_decomposition(&spec).unwrap().passed());
    }

    #[test]
    fn sp_index_one_rejected() {
        assert!(ContractionSpec::new(GroupKind::CSp, 3, vals(GroupKind::CSp, 3, &[1])).is_err());
    }

    #[test]
    fn so5_ordered_contractions() {
        // order (2 then 4): T_8 = T_6 ix T_2 with T_6 an ideal
        let blocks = radical_block_structure(GroupKind::BSoOdd, 2, &[2, 4]).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].labels.len(), 6);
        assert_eq!(blocks[0].cells, vec![(1, 2), (1, 3)]);
        assert!(blocks[0].is_ideal);
        assert!(blocks[0].is_subalgebra);
        assert!(blocks[1].is_subalgebra);
        assert!(!blocks[1].commutes_with_earlier); // genuinely semidirect
        // order (4 then 2): T_8 = T_4 (ideal) with complement T~_4
        let blocks = radical_block_structure(GroupKind::BSoOdd, 2, &[4, 2]).unwrap();
        assert_eq!(blocks[0].labels.len(), 4);
        assert_eq!(blocks[0].cells, vec![(1, 3), (2, 3)]);
        assert!(blocks[0].is_ideal);
        assert!(blocks[1].is_subalgebra);
        assert_eq!(blocks[1].cells, vec![(1, 2)]);
    }

    #[test]
    fn single_contraction_single_block() {
        let blocks = radical_block_structure(GroupKind::BSoOdd, 2, &[2]).unwrap();
        assert_eq!(blocks.len(), 1);
        assert!(blocks[0].is_ideal && blocks[0].is_subalgebra && blocks[0].commutes_with_earlier);
    }
}
