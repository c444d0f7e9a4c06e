//! Cartan subalgebras, root systems, root-vector matrices and machine
//! verification of the closed-form Cartan-Weyl commutators for all four
//! families. `predicted_commutator` implements the closed forms; the
//! verification path multiplies explicit matrices and demands exact equality.

use std::fmt;

use crate::error::{CkError, Result};
use crate::groups::{so_generator, u_generator_x, GroupKind};
use crate::matrix::PMatrix;
use crate::pimenov::{JValuation, PimenovElement};
use crate::scalar::Cyclotomic;

pub type Sign = i8;

/// Canonical root labels.
///
/// * `Short` : +-e_k (odd orthogonal family), 1-based k.
/// * `Pair`  : sr*e_r + ss*e_s with r < s (orthogonal and symplectic), 1-based.
/// * `Diff`  : e_a - e_b, a != b (unitary families), 0-based.
/// * `Long`  : +-2e_k (symplectic), 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum RootLabel {
    Short { sign: Sign, k: usize },
    Pair { sr: Sign, r: usize, ss: Sign, s: usize },
    Diff { a: usize, b: usize },
    Long { sign: Sign, k: usize },
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn sg(s: Sign) -> char {
            if s > 0 {
                '+'
            } else {
                '-'
            }
        }
        match self {
            RootLabel::Short { sign, k } => write!(f, "{}e{}", sg(*sign), k),
            RootLabel::Pair { sr, r, ss, s } => write!(f, "{}e{}{}e{}", sg(*sr), r, sg(*ss), s),
            RootLabel::Diff { a, b } => write!(f, "e{a}-e{b}"),
            RootLabel::Long { sign, k } => write!(f, "{}2e{}", sg(*sign), k),
        }
    }
}

/// Basis element of the Cartan-Weyl presentation: a Cartan generator H_k
/// (1-based for so/sp and su, 0-based for u) or a root vector.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum CWElement {
    Cartan(usize),
    Root(RootLabel),
}

impl fmt::Display for CWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CWElement::Cartan(k) => write!(f, "H{k}"),
            CWElement::Root(r) => write!(f, "E[{r}]"),
        }
    }
}

/// Cartan basis with labels.
#[derive(Clone, Debug)]
pub struct CartanBasis {
    pub kind: GroupKind,
    pub elements: Vec<(String, PMatrix)>,
}

fn so_n_of_rank(kind: GroupKind, rank: usize) -> usize {
    match kind {
        GroupKind::BSoOdd => 2 * rank,      // so(2*rank + 1), matrix size 2*rank+1, n = 2*rank
        GroupKind::DSoEven => 2 * rank - 1, // so(2*rank), n = 2*rank - 1
        _ => unreachable!(),
    }
}

/// Cartan basis element H_k for each family.
pub fn cartan_element(kind: GroupKind, k: usize, rank: usize, v: &JValuation) -> Result<PMatrix> {
    match kind {
        GroupKind::BSoOdd | GroupKind::DSoEven => {
            let n = so_n_of_rank(kind, rank);
            if k == 0 || k > rank {
                return Err(CkError::IndexOutOfRange(format!("H_{k} for rank {rank}")));
            }
            // H_k = -i X_{2k-2, 2k-1}
            Ok(so_generator(2 * k - 2, 2 * k - 1, n, v)?.scale_scalar(&-Cyclotomic::i()))
        }
        GroupKind::UUnitary => {
            if k > rank {
                return Err(CkError::IndexOutOfRange(format!("H_{k} for rank {rank}")));
            }
            Ok(PMatrix::unit(rank + 1, rank + 1, v.arity(), k, k))
        }
        GroupKind::SuSpecial | GroupKind::ASl => {
            if k == 0 || k > rank {
                return Err(CkError::IndexOutOfRange(format!("H~_{k} for rank {rank}")));
            }
            let a = PMatrix::unit(rank + 1, rank + 1, v.arity(), k - 1, k - 1);
            let b = PMatrix::unit(rank + 1, rank + 1, v.arity(), k, k);
            a.sub(&b)
        }
        GroupKind::CSp => {
            if k == 0 || k > rank {
                return Err(CkError::IndexOutOfRange(format!("H_{k} for rank {rank}")));
            }
            let dim = 2 * rank;
            let a = PMatrix::unit(dim, dim, v.arity(), k - 1, k - 1);
            let b = PMatrix::unit(dim, dim, v.arity(), k - 1 + rank, k - 1 + rank);
            a.sub(&b)
        }
    }
}

pub fn cartan_basis(kind: GroupKind, rank: usize, v: &JValuation) -> Result<CartanBasis> {
    let idx: Vec<usize> = match kind {
        GroupKind::UUnitary => (0..=rank).collect(),
        _ => (1..=rank).collect(),
    };
    let mut elements = Vec::new();
    for k in idx {
        elements.push((format!("H{k}"), cartan_element(kind, k, rank, v)?));
    }
    Ok(CartanBasis { kind, elements })
}

/// Complete root system of the family at the given rank.
pub fn root_system(kind: GroupKind, rank: usize) -> Vec<RootLabel> {
    let mut out = Vec::new();
    match kind {
        GroupKind::BSoOdd => {
            for r in 1..=rank {
                for s in r + 1..=rank {
                    for sr in [1i8, -1] {
                        for ss in [1i8, -1] {
                            out.push(RootLabel::Pair { sr, r, ss, s });
                        }
                    }
                }
            }
            for k in 1..=rank {
                for sign in [1i8, -1] {
                    out.push(RootLabel::Short { sign, k });
                }
            }
        }
        GroupKind::DSoEven => {
            for r in 1..=rank {
                for s in r + 1..=rank {
                    for sr in [1i8, -1] {
                        for ss in [1i8, -1] {
                            out.push(RootLabel::Pair { sr, r, ss, s });
                        }
                    }
                }
            }
        }
        GroupKind::UUnitary | GroupKind::SuSpecial | GroupKind::ASl => {
            for a in 0..=rank {
                for b in 0..=rank {
                    if a != b {
                        out.push(RootLabel::Diff { a, b });
                    }
                }
            }
        }
        GroupKind::CSp => {
            for r in 1..=rank {
                for s in r + 1..=rank {
                    for sr in [1i8, -1] {
                        for ss in [1i8, -1] {
                            out.push(RootLabel::Pair { sr, r, ss, s });
                        }
                    }
                }
            }
            for k in 1..=rank {
                for sign in [1i8, -1] {
                    out.push(RootLabel::Long { sign, k });
                }
            }
        }
    }
    out
}

/// The closed-form root-vector matrix for a label under a valuation.
pub fn root_vector(kind: GroupKind, label: &RootLabel, rank: usize, v: &JValuation) -> Result<PMatrix> {
    match (kind, label) {
        (GroupKind::BSoOdd, RootLabel::Short { sign, k }) => {
            let n = so_n_of_rank(kind, rank);
            // E_{+-e_k} = -X_{2k-2,n} +- i j_{2k-1} X_{2k-1,n}
            let a = so_generator(2 * k - 2, n, n, v)?.neg();
            let b = so_generator(2 * k - 1, n, n, v)?
                .scale(&v.eval(2 * k - 1)?)?
                .scale_scalar(&Cyclotomic::i().scale(&crate::scalar::rat_int(*sign as i64)));
            a.add(&b)
        }
        (GroupKind::BSoOdd | GroupKind::DSoEven, RootLabel::Pair { sr, r, ss, s }) => {
            let n = so_n_of_rank(kind, rank);
            if !(*r < *s && *s <= rank) {
                return Err(CkError::InvalidLabel);
            }
            so_pair_vector(*sr, *r, *ss, *s, n, v)
        }
        (GroupKind::UUnitary | GroupKind::SuSpecial | GroupKind::ASl, RootLabel::Diff { a, b }) => {
            if *a > rank || *b > rank || a == b {
                return Err(CkError::InvalidLabel);
            }
            // E_{e_mu - e_nu} = A*_{mu nu} prod_{l=mu+1}^{nu} j_l^2 (mu < nu),
            // E_{e_nu - e_mu} = A*_{nu mu}; both are the transformed X_{ab}.
            u_generator_x(*a, *b, rank, v)
        }
        (GroupKind::CSp, RootLabel::Long { sign, k }) => {
            if *k == 0 || *k > rank {
                return Err(CkError::InvalidLabel);
            }
            let dim = 2 * rank;
            let (r, c) = if *sign > 0 { (k - 1, k - 1 + rank) } else { (k - 1 + rank, k - 1) };
            Ok(PMatrix::unit(dim, dim, v.arity(), r, c))
        }
        (GroupKind::CSp, RootLabel::Pair { sr, r, ss, s }) => {
            if !(*r < *s && *s <= rank) {
                return Err(CkError::InvalidLabel);
            }
            sp_pair_vector(*sr, *r, *ss, *s, rank, v)
        }
        _ => Err(CkError::InvalidLabel),
    }
}

/// so-family E_{sr e_r + ss e_s}, r < s, per the four-term closed form.
fn so_pair_vector(sr: Sign, r: usize, ss: Sign, s: usize, n: usize, v: &JValuation) -> Result<PMatrix> {
    let j2r1 = v.eval(2 * r - 1)?;
    let j2s1 = v.eval(2 * s - 1)?;
    let i = Cyclotomic::i();
    let sgn = |x: Sign| Cyclotomic::from_int(x as i64);
    // -j_{2s-1} X_{2r-2,2s-2} +- i X_{2r-2,2s-1}
    let t1 = so_generator(2 * r - 2, 2 * s - 2, n, v)?.scale(&j2s1)?.neg();
    let t2 = so_generator(2 * r - 2, 2 * s - 1, n, v)?.scale_scalar(&(&i * &sgn(ss)));
    if sr > 0 {
        // +- j_{2r-1} X_{2r-1,2s-1} + i j_{2r-1} j_{2s-1} X_{2r-1,2s-2}
        let t3 = so_generator(2 * r - 1, 2 * s - 1, n, v)?.scale(&j2r1)?.scale_scalar(&sgn(ss));
        let t4 = so_generator(2 * r - 1, 2 * s - 2, n, v)?
            .scale(&j2r1.mul(&j2s1)?)?
            .scale_scalar(&i);
        t1.add(&t2)?.add(&t3)?.add(&t4)
    } else {
        // -+ j_{2r-1} X_{2r-1,2s-1} - i j_{2r-1} j_{2s-1} X_{2r-1,2s-2}
        let t3 = so_generator(2 * r - 1, 2 * s - 1, n, v)?
            .scale(&j2r1)?
            .scale_scalar(&sgn(ss))
            .neg();
        let t4 = so_generator(2 * r - 1, 2 * s - 2, n, v)?
            .scale(&j2r1.mul(&j2s1)?)?
            .scale_scalar(&i)
            .neg();
        t1.add(&t2)?.add(&t3)?.add(&t4)
    }
}

/// sp-family E for +-e_k +- e_m, k < m, in the (k, k+n) pairing.
fn sp_pair_vector(sk: Sign, k: usize, sm: Sign, m: usize, rank: usize, v: &JValuation) -> Result<PMatrix> {
    let dim = 2 * rank;
    let arity = v.arity();
    let e = |a: usize, b: usize| PMatrix::unit(dim, dim, arity, a - 1, b - 1);
    let pr = v.jprod2(k + 1, m)?;
    let m_ = m + rank;
    let k_ = k + rank;
    match (sk > 0, sm > 0) {
        (true, false) => e(k, m).scale(&pr)?.sub(&e(m_, k_)),
        (false, true) => e(m, k).sub(&e(k_, m_).scale(&pr)?),
        (false, false) => e(k_, m).scale(&pr)?.add(&e(m_, k)),
        (true, true) => e(k, m_).scale(&pr)?.add(&e(m, k_)),
    }
}

/// Matrix of any Cartan-Weyl basis element.
pub fn cw_matrix(kind: GroupKind, el: &CWElement, rank: usize, v: &JValuation) -> Result<PMatrix> {
    match el {
        CWElement::Cartan(k) => cartan_element(kind, *k, rank, v),
        CWElement::Root(lab) => root_vector(kind, lab, rank, v),
    }
}

/// First-power interval weight under which the rescaled root vectors stay
/// linearly independent for every valuation while keeping the closed-form
/// structure constants (odd orthogonal parameters must remain 1, which the
/// contraction theorems require anyway).
pub fn root_weight(kind: GroupKind, lab: &RootLabel, rank: usize, v: &JValuation) -> Result<PimenovElement> {
    let mut w = PimenovElement::one(v.arity());
    match (kind, lab) {
        (GroupKind::BSoOdd | GroupKind::DSoEven, RootLabel::Pair { r, s, .. }) => {
            let mut l = 2 * r;
            while l <= 2 * s - 2 {
                w = w.mul(&v.eval(l)?)?;
                l += 2;
            }
        }
        (GroupKind::BSoOdd, RootLabel::Short { k, .. }) => {
            let n = so_n_of_rank(kind, rank);
            let mut l = 2 * k;
            while l <= n {
                w = w.mul(&v.eval(l)?)?;
                l += 2;
            }
        }
        (GroupKind::UUnitary | GroupKind::SuSpecial | GroupKind::ASl, RootLabel::Diff { a, b }) => {
            let (lo, hi) = (a.min(b), a.max(b));
            w = v.jprod(lo + 1, *hi)?;
        }
        (GroupKind::CSp, RootLabel::Pair { r, s, .. }) => {
            w = v.jprod(r + 1, *s)?;
        }
        (GroupKind::CSp, RootLabel::Long { .. }) => {}
        _ => return Err(CkError::InvalidLabel),
    }
    Ok(w)
}

/// Faithful realization of a Cartan-Weyl basis element, used by the
/// contraction verifier. Every basis element owns a matrix entry with a
/// first-power j-monomial coefficient, so the family stays linearly
/// independent after any admissible contraction, and the structure constants
/// coincide with the closed forms (the interval weights are multiplicative).
///
/// For the orthogonal and symplectic families this is `root_weight * E`;
/// for the unitary families the symmetric first-power scaling
/// E~_{ab} = (prod_{l=min+1}^{max} j_l) e_{ab} is built directly, because the
/// paper's upper root vectors carry squared products that would triple up.
pub fn scaled_cw_matrix(kind: GroupKind, el: &CWElement, rank: usize, v: &JValuation) -> Result<PMatrix> {
    match el {
        CWElement::Cartan(k) => cartan_element(kind, *k, rank, v),
        CWElement::Root(lab) => match (kind, lab) {
            (GroupKind::UUnitary | GroupKind::SuSpecial | GroupKind::ASl, RootLabel::Diff { a, b }) => {
                let w = root_weight(kind, lab, rank, v)?;
                Ok(PMatrix::unit(rank + 1, rank + 1, v.arity(), *a, *b).scale(&w)?)
            }
            _ => {
                let w = root_weight(kind, lab, rank, v)?;
                root_vector(kind, lab, rank, v)?.scale(&w)
            }
        },
    }
}

/// Closed-form commutator as a formal combination of basis elements with
/// Pimenov coefficients; both matrix realizations assemble from this.
pub fn predicted_combination(
    kind: GroupKind,
    x: &CWElement,
    y: &CWElement,
    rank: usize,
    v: &JValuation,
) -> Result<Vec<(PimenovElement, CWElement)>> {
    Ok(predict(kind, x, y, rank, v)?.terms)
}

/// Full Cartan-Weyl basis (Cartan elements then roots).
pub fn cw_basis(kind: GroupKind, rank: usize) -> Vec<CWElement> {
    let mut out: Vec<CWElement> = match kind {
        GroupKind::UUnitary => (0..=rank).map(CWElement::Cartan).collect(),
        _ => (1..=rank).map(CWElement::Cartan).collect(),
    };
    out.extend(root_system(kind, rank).into_iter().map(CWElement::Root));
    out
}

struct Combo {
    terms: Vec<(PimenovElement, CWElement)>,
}

impl Combo {
    fn zero() -> Self {
        Combo { terms: Vec::new() }
    }

    fn single(c: PimenovElement, el: CWElement) -> Self {
        Combo { terms: vec![(c, el)] }
    }

    fn neg(mut self) -> Self {
        for (c, _) in self.terms.iter_mut() {
            *c = c.neg();
        }
        self
    }

    fn to_matrix(&self, kind: GroupKind, rank: usize, v: &JValuation) -> Result<PMatrix> {
        let dim = kind.matrix_dim(rank);
        let mut acc = PMatrix::zero(dim, dim, v.arity());
        for (c, el) in &self.terms {
            acc = acc.add(&cw_matrix(kind, el, rank, v)?.scale(c)?)?;
        }
        Ok(acc)
    }
}

/// The right-hand side of the closed-form Cartan-Weyl commutator [x, y],
/// assembled from root vectors and Cartan elements with the stated
/// j-product coefficients; the zero matrix when no case matches.
pub fn predicted_commutator(
    kind: GroupKind,
    x: &CWElement,
    y: &CWElement,
    rank: usize,
    v: &JValuation,
) -> Result<PMatrix> {
    predict(kind, x, y, rank, v)?.to_matrix(kind, rank, v)
}

fn predict(kind: GroupKind, x: &CWElement, y: &CWElement, rank: usize, v: &JValuation) -> Result<Combo> {
    match kind {
        GroupKind::BSoOdd | GroupKind::DSoEven => predict_so(kind, x, y, rank, v),
        GroupKind::UUnitary => predict_u(x, y, v, false),
        GroupKind::SuSpecial | GroupKind::ASl => predict_u(x, y, v, true),
        GroupKind::CSp => predict_sp(x, y, v),
    }
}

fn one(v: &JValuation) -> PimenovElement {
    PimenovElement::one(v.arity())
}

fn int(v: &JValuation, n: i64) -> PimenovElement {
    PimenovElement::scalar(v.arity(), Cyclotomic::from_int(n))
}

fn predict_so(
    kind: GroupKind,
    x: &CWElement,
    y: &CWElement,
    rank: usize,
    v: &JValuation,
) -> Result<Combo> {
    use CWElement::*;
    use RootLabel::*;
    let n = so_n_of_rank(kind, rank);
    Ok(match (x, y) {
        (Cartan(_), Cartan(_)) => Combo::zero(),
        (Cartan(k), Root(Short { sign, k: l })) => {
            if k == l {
                // [H_k, E_{+-e_k}] = +- j_{2k-1} E_{+-e_k}
                let c = v.eval(2 * k - 1)?.scale(&Cyclotomic::from_int(*sign as i64));
                Combo::single(c, *y)
            } else {
                Combo::zero()
            }
        }
        (Cartan(k), Root(Pair { sr, r, ss, s })) => {
            if k == r {
                let c = v.eval(2 * r - 1)?.scale(&Cyclotomic::from_int(*sr as i64));
                Combo::single(c, *y)
            } else if k == s {
                let c = v.eval(2 * s - 1)?.scale(&Cyclotomic::from_int(*ss as i64));
                Combo::single(c, *y)
            } else {
                Combo::zero()
            }
        }
        (Root(_), Cartan(_)) => predict_so(kind, y, x, rank, v)?.neg(),
        (Root(Short { sign: s1, k: k1 }), Root(Short { sign: s2, k: k2 })) => {
            if k1 == k2 {
                if *s1 == -*s2 {
                    // [E_{+-e_k}, E_{-+e_k}] = -+ 2 j_{2k-1} (prod_{l=2k}^{n} j_l^2) H_k
                    let c = v
                        .eval(2 * k1 - 1)?
                        .mul(&v.jprod2(2 * k1, n)?)?
                        .scale(&Cyclotomic::from_int(-2 * *s1 as i64));
                    Combo::single(c, Cartan(*k1))
                } else {
                    Combo::zero()
                }
            } else if k1 < k2 {
                // [E_{+-e_r}, E_{+-e_s}] = -j_{2s-1} (prod_{l=2s}^n j_l^2) E_{+-e_r +-e_s}
                let c = v.eval(2 * k2 - 1)?.mul(&v.jprod2(2 * k2, n)?)?.neg();
                Combo::single(c, Root(Pair { sr: *s1, r: *k1, ss: *s2, s: *k2 }))
            } else {
                predict_so(kind, y, x, rank, v)?.neg()
            }
        }
        (Root(Short { .. }), Root(Pair { .. })) => predict_so(kind, y, x, rank, v)?.neg(),
        (Root(Pair { sr, r, ss, s }), Root(Short { sign, k })) => {
            if k == s && *sign == -*ss {
                // [E_{+-e_r +-e_s}, E_{-+e_s}] = 2 j_{2s-1} E_{+-e_r}
                let c = v.eval(2 * s - 1)?.scale(&Cyclotomic::from_int(2));
                Combo::single(c, Root(Short { sign: *sr, k: *r }))
            } else if k == r && *sign == -*sr {
                // [E_{+-e_r +-e_s}, E_{-+e_r}] =
                //    -2 j_{2s-1} (prod_{l=2r-1}^{2s-2} j_l^2) E_{+-e_s}
                let c = v
                    .eval(2 * s - 1)?
                    .mul(&v.jprod2(2 * r - 1, 2 * s - 2)?)?
                    .scale(&Cyclotomic::from_int(-2));
                Combo::single(c, Root(Short { sign: *ss, k: *s }))
            } else {
                Combo::zero()
            }
        }
        (Root(Pair { sr: a1, r: r1, ss: b1, s: s1 }), Root(Pair { sr: a2, r: r2, ss: b2, s: s2 })) => {
            if r1 == r2 && s1 == s2 {
                if *a1 == -*a2 && *b1 == -*b2 {
                    if *a1 > 0 {
                        // [E_{e_r +- e_s}, E_{-e_r -+ e_s}] =
                        //   -4 j_{2r-1} j_{2s-1} (prod_{l=2r}^{2s-2}) (j_{2s-1} H_r +- j_{2r-1} H_s)
                        let base = v
                            .eval(2 * r1 - 1)?
                            .mul(&v.eval(2 * s1 - 1)?)?
                            .mul(&v.jprod2(2 * r1, 2 * s1 - 2)?)?
                            .scale(&Cyclotomic::from_int(-4));
                        let ch = base.mul(&v.eval(2 * s1 - 1)?)?;
                        let cs = base
                            .mul(&v.eval(2 * r1 - 1)?)?
                            .scale(&Cyclotomic::from_int(*b1 as i64));
                        Combo { terms: vec![(ch, Cartan(*r1)), (cs, Cartan(*s1))] }
                    } else {
                        predict_so(kind, y, x, rank, v)?.neg()
                    }
                } else {
                    Combo::zero()
                }
            } else {
                // at most one shared index; need opposite signs there
                let (c_idx, c1, c2, o1, so1, o2, so2) = match share(*r1, *s1, *a1, *b1, *r2, *s2, *a2, *b2) {
                    Some(t) => t,
                    None => return Ok(Combo::zero()),
                };
                if c1 != -c2 {
                    return Ok(Combo::zero());
                }
                // paper case [E_{+-e_r +- e_s}, E_{-+e_s +- e_m}] with
                // r = o1, s = c_idx, m = o2; order cases on (r, s, m)
                let (r_, s_, m_) = (o1, c_idx, o2);
                let res = mk_pair(so1, o1, so2, o2);
                if r_ < s_ && s_ < m_ {
                    let c = v.eval(2 * s_ - 1)?.scale(&Cyclotomic::from_int(2));
                    Combo::single(c, Root(res))
                } else if r_ < m_ && m_ < s_ {
                    let c = v
                        .eval(2 * m_ - 1)?
                        .mul(&v.jprod2(2 * m_, 2 * s_ - 1)?)?
                        .scale(&Cyclotomic::from_int(-2));
                    Combo::single(c, Root(res))
                } else if s_ < r_ && r_ < m_ {
                    let c = v
                        .eval(2 * r_ - 1)?
                        .mul(&v.jprod2(2 * s_ - 1, 2 * r_ - 2)?)?
                        .scale(&Cyclotomic::from_int(-2));
                    Combo::single(c, Root(res))
                } else {
                    predict_so(kind, y, x, rank, v)?.neg()
                }
            }
        }
        _ => return Err(CkError::InvalidLabel),
    })
}

/// Shared-index bookkeeping for a pair of Pair labels: returns
/// (common index, its sign in x, its sign in y, other index of x, its sign,
/// other index of y, its sign) when exactly one index is shared.
#[allow(clippy::too_many_arguments)]
fn share(
    r1: usize,
    s1: usize,
    a1: Sign,
    b1: Sign,
    r2: usize,
    s2: usize,
    a2: Sign,
    b2: Sign,
) -> Option<(usize, Sign, Sign, usize, Sign, usize, Sign)> {
    let x = [(r1, a1), (s1, b1)];
    let y = [(r2, a2), (s2, b2)];
    for (xi, &(ix, sx)) in x.iter().enumerate() {
        for (yi, &(iy, sy)) in y.iter().enumerate() {
            if ix == iy {
                let (ox, sox) = x[1 - xi];
                let (oy, soy) = y[1 - yi];
                if ox == oy {
                    return None; // both shared: handled elsewhere
                }
                return Some((ix, sx, sy, ox, sox, oy, soy));
            }
        }
    }
    None
}

fn mk_pair(sa: Sign, ia: usize, sb: Sign, ib: usize) -> RootLabel {
    if ia < ib {
        RootLabel::Pair { sr: sa, r: ia, ss: sb, s: ib }
    } else {
        RootLabel::Pair { sr: sb, r: ib, ss: sa, s: ia }
    }
}

fn predict_u(x: &CWElement, y: &CWElement, v: &JValuation, special: bool) -> Result<Combo> {
    use CWElement::*;
    use RootLabel::*;
    Ok(match (x, y) {
        (Cartan(_), Cartan(_)) => Combo::zero(),
        (Cartan(k), Root(Diff { a, b })) => {
            let cf: i64 = if special {
                // H~_k = A_{k-1,k-1} - A_{kk}
                i64::from(*a == k - 1) - i64::from(*b == k - 1) - i64::from(*a == *k)
                    + i64::from(*b == *k)
            } else {
                i64::from(a == k) - i64::from(b == k)
            };
            if cf == 0 {
                Combo::zero()
            } else {
                Combo::single(int(v, cf), *y)
            }
        }
        (Root(_), Cartan(_)) => predict_u(y, x, v, special)?.neg(),
        (Root(Diff { a: k, b: m }), Root(Diff { a: p, b: q })) => {
            if m == p && q == k {
                // [E_{e_k - e_m}, E_{e_m - e_k}] = (prod_{l=min+1}^{max} j_l^2) (H_k - H_m)
                let (lo, hi) = (k.min(m), k.max(m));
                let pr = v.jprod2(lo + 1, *hi)?;
                if special {
                    // sum_{r=lo+1}^{hi} H~_r = H_lo - H_hi
                    let sgn = if k == lo { 1 } else { -1 };
                    let c = pr.scale(&Cyclotomic::from_int(sgn));
                    Combo { terms: (lo + 1..=*hi).map(|r| (c.clone(), Cartan(r))).collect() }
                } else {
                    Combo {
                        terms: vec![(pr.clone(), Cartan(*k)), (pr.neg(), Cartan(*m))],
                    }
                }
            } else if m == p {
                // [E_{e_k - e_m}, E_{e_m - e_q}] with k != q
                let c = if m > k && m > q {
                    v.jprod2(1 + *k.max(q), *m)?
                } else if m < k && m < q {
                    v.jprod2(m + 1, *k.min(q))?
                } else {
                    one(v)
                };
                Combo::single(c, Root(Diff { a: *k, b: *q }))
            } else if q == k {
                predict_u(y, x, v, special)?.neg()
            } else {
                Combo::zero()
            }
        }
        _ => return Err(CkError::InvalidLabel),
    })
}

fn predict_sp(x: &CWElement, y: &CWElement, v: &JValuation) -> Result<Combo> {
    use CWElement::*;
    use RootLabel::*;
    Ok(match (x, y) {
        (Cartan(_), Cartan(_)) => Combo::zero(),
        (Cartan(k), Root(Long { sign, k: l })) => {
            if k == l {
                Combo::single(int(v, 2 * *sign as i64), *y)
            } else {
                Combo::zero()
            }
        }
        (Cartan(k), Root(Pair { sr, r, ss, s })) => {
            if k == r {
                Combo::single(int(v, *sr as i64), *y)
            } else if k == s {
                Combo::single(int(v, *ss as i64), *y)
            } else {
                Combo::zero()
            }
        }
        (Root(_), Cartan(_)) => predict_sp(y, x, v)?.neg(),
        (Root(Long { sign: s1, k: k1 }), Root(Long { sign: s2, k: k2 })) => {
            if k1 == k2 && *s1 == -*s2 {
                // [E_{2e_k}, E_{-2e_k}] = H_k
                Combo::single(int(v, *s1 as i64), Cartan(*k1))
            } else {
                Combo::zero()
            }
        }
        (Root(Long { .. }), Root(Pair { .. })) => predict_sp(y, x, v)?.neg(),
        (Root(Pair { sr, r, ss, s }), Root(Long { sign, k })) => {
            // [E_{-e_k +- e_m}, E_{2e_k}] = +- E_{e_k +- e_m} and the -2e twin
            if k == r && *sign == -*sr {
                Combo::single(int(v, *ss as i64), Root(Pair { sr: -*sr, r: *r, ss: *ss, s: *s }))
            } else if k == s && *sign == -*ss {
                Combo::single(int(v, *sr as i64), Root(Pair { sr: *sr, r: *r, ss: -*ss, s: *s }))
            } else {
                Combo::zero()
            }
        }
        (Root(Pair { sr: a1, r: r1, ss: b1, s: s1 }), Root(Pair { sr: a2, r: r2, ss: b2, s: s2 })) => {
            if r1 == r2 && s1 == s2 {
                let pr = v.jprod2(1 + *r1, *s1)?;
                if *a1 == -*a2 && *b1 == -*b2 {
                    // [E_{e_k +- e_m}, E_{-e_k -+ e_m}] = (prod)(H_k +- H_m)
                    if *a1 > 0 {
                        Combo {
                            terms: vec![
                                (pr.clone(), Cartan(*r1)),
                                (pr.scale(&Cyclotomic::from_int(*b1 as i64)), Cartan(*s1)),
                            ],
                        }
                    } else {
                        predict_sp(y, x, v)?.neg()
                    }
                } else if *a1 == -*a2 && *b1 == *b2 {
                    // [E_{e_k +- e_m}, E_{-e_k +- e_m}] = -2 (prod) E_{+-2e_m}
                    if *a1 > 0 {
                        Combo::single(
                            pr.scale(&Cyclotomic::from_int(-2)),
                            Root(Long { sign: *b1, k: *s1 }),
                        )
                    } else {
                        predict_sp(y, x, v)?.neg()
                    }
                } else if *a1 == *a2 && *b1 == -*b2 {
                    if *b1 > 0 {
                        Combo::single(
                            pr.scale(&Cyclotomic::from_int(-2)),
                            Root(Long { sign: *a1, k: *r1 }),
                        )
                    } else {
                        predict_sp(y, x, v)?.neg()
                    }
                } else {
                    Combo::zero()
                }
            } else {
                let (c_idx, c1, c2, o1, so1, o2, so2) = match share(*r1, *s1, *a1, *b1, *r2, *s2, *a2, *b2) {
                    Some(t) => t,
                    None => return Ok(Combo::zero()),
                };
                if c1 != -c2 {
                    return Ok(Combo::zero());
                }
                // paper case [E_{e_k +- e_m}, E_{-e_k +- e_p}]: requires the
                // shared index to carry + in the first argument.
                if c1 > 0 {
                    let (k_, m_, p_) = (c_idx, o1, o2);
                    let mut cf = if k_ < m_ && k_ < p_ {
                        v.jprod2(k_ + 1, m_.min(p_))?.neg()
                    } else if k_ > m_ && k_ > p_ {
                        v.jprod2(1 + m_.max(p_), k_)?.neg()
                    } else {
                        int(v, -1)
                    };
                    // "the sign minus of the combination +e_m, -e_p is
                    // changed for the sign plus"
                    if so1 > 0 && so2 < 0 {
                        cf = cf.neg();
                    }
                    Combo::single(cf, Root(mk_pair(so1, o1, so2, o2)))
                } else {
                    predict_sp(y, x, v)?.neg()
                }
            }
        }
        _ => return Err(CkError::InvalidLabel),
    })
}

/// One mismatch found by `verify_cartan_weyl`.
#[derive(Clone, Debug)]
pub struct CwMismatch {
    pub x: String,
    pub y: String,
    pub computed: String,
    pub predicted: String,
}

#[derive(Clone, Debug)]
pub struct CwReport {
    pub kind: GroupKind,
    pub rank: usize,
    pub valuation: String,
    pub pairs_checked: usize,
    pub mismatches: Vec<CwMismatch>,
}

impl CwReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Brute-force verification: for every ordered pair of Cartan-Weyl basis
/// elements, the matrix commutator must equal the closed form exactly.
pub fn verify_cartan_weyl(kind: GroupKind, rank: usize, v: &JValuation) -> Result<CwReport> {
    let basis = cw_basis(kind, rank);
    let mats: Vec<PMatrix> =
        basis.iter().map(|el| cw_matrix(kind, el, rank, v)).collect::<Result<_>>()?;
    let mut mismatches = Vec::new();
    let mut pairs = 0usize;
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            pairs += 1;
            let lhs = mats[i].commutator(&mats[j])?;
            let rhs = predicted_commutator(kind, x, y, rank, v)?;
            if lhs != rhs {
                mismatches.push(CwMismatch {
                    x: x.to_string(),
                    y: y.to_string(),
                    computed: format!("{lhs:?}"),
                    predicted: format!("{rhs:?}"),
                });
            }
        }
    }
    Ok(CwReport { kind, rank, valuation: v.render(), pairs_checked: pairs, mismatches })
}

/// Simple roots as integer vectors in the e-basis.
pub fn simple_roots(kind: GroupKind, rank: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    match kind {
        GroupKind::ASl | GroupKind::UUnitary | GroupKind::SuSpecial => {
            // e_{k-1} - e_k in an (rank+1)-dim ambient
            for k in 1..=rank {
                let mut v = vec![0i64; rank + 1];
                v[k - 1] = 1;
                v[k] = -1;
                out.push(v);
            }
        }
        GroupKind::BSoOdd => {
            for k in 1..rank {
                let mut v = vec![0i64; rank];
                v[k - 1] = 1;
                v[k] = -1;
                out.push(v);
            }
            let mut v = vec![0i64; rank];
            v[rank - 1] = 1;
            out.push(v);
        }
        GroupKind::CSp => {
            for k in 1..rank {
                let mut v = vec![0i64; rank];
                v[k - 1] = 1;
                v[k] = -1;
                out.push(v);
            }
            let mut v = vec![0i64; rank];
            v[rank - 1] = 2;
            out.push(v);
        }
        GroupKind::DSoEven => {
            for k in 1..rank {
                let mut v = vec![0i64; rank];
                v[k - 1] = 1;
                v[k] = -1;
                out.push(v);
            }
            let mut v = vec![0i64; rank];
            v[rank - 2] = 1;
            v[rank - 1] = 1;
            out.push(v);
        }
    }
    out
}

/// Cartan matrix A_{km} = 2 <a_k, a_m> / <a_k, a_k> from the simple roots.
pub fn cartan_matrix(kind: GroupKind, rank: usize) -> Vec<Vec<i64>> {
    let roots = simple_roots(kind, rank);
    let ip = |u: &[i64], w: &[i64]| -> i64 { u.iter().zip(w).map(|(a, b)| a * b).sum() };
    roots
        .iter()
        .map(|rk| {
            roots
                .iter()
                .map(|rm| {
                    let num = 2 * ip(rk, rm);
                    let den = ip(rk, rk);
                    debug_assert_eq!(num % den, 0);
                    num / den
                })
                .collect()
        })
        .collect()
}

/// Integer determinant by Bareiss elimination.
pub fn int_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let q = crate::qlinalg::QMatrix::from_fn(n, n, |r, c| Cyclotomic::from_int(m[r][c]));
    let d = q.det();
    debug_assert!(d.is_rational());
    let r = &d.a;
    debug_assert!(num_traits::One::is_one(r.denom()));
    use num_traits::ToPrimitive;
    r.numer().to_i64().expect("determinant fits i64")
}

/// Verify properties 1-5 of classical Cartan matrices.
pub fn cartan_matrix_properties_hold(a: &[Vec<i64>]) -> bool {
    let n = a.len();
    for k in 0..n {
        if a[k][k] != 2 {
            return false;
        }
        for m in 0..n {
            if k != m {
                if !(-4..=0).contains(&a[k][m]) {
                    return false;
                }
                if a[k][m] * a[m][k] >= 4 {
                    return false;
                }
                if (a[k][m] == 0) != (a[m][k] == 0) {
                    return false;
                }
            }
        }
    }
    int_det(a) > 0
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct DynkinDiagram {
    pub family: String,
    pub rank: usize,
    /// node weights, proportional to <a_k, a_k>
    pub weights: Vec<i64>,
    /// edges (k, m, multiplicity) with 0-based node indices
    pub edges: Vec<(usize, usize, i64)>,
}

pub fn dynkin_diagram(kind: GroupKind, rank: usize) -> DynkinDiagram {
    let roots = simple_roots(kind, rank);
    let ip = |u: &[i64], w: &[i64]| -> i64 { u.iter().zip(w).map(|(a, b)| a * b).sum() };
    let a = cartan_matrix(kind, rank);
    let weights: Vec<i64> = roots.iter().map(|r| ip(r, r)).collect();
    let mut edges = Vec::new();
    for k in 0..roots.len() {
        for m in k + 1..roots.len() {
            let mult = a[k][m] * a[m][k];
            if mult > 0 {
                edges.push((k, m, mult));
            }
        }
    }
    DynkinDiagram {
        family: kind.name().to_string(),
        rank,
        weights,
        edges,
    }
}

impl DynkinDiagram {
    /// Chain rendering; the D-family fork is listed explicitly.
    pub fn ascii(&self) -> String {
        let mut s = String::new();
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                let mult = self
                    .edges
                    .iter()
                    .find(|(a, b, _)| (*a == i - 1 && *b == i) || (*a == i && *b == i - 1))
                    .map(|(_, _, m)| *m)
                    .unwrap_or(0);
                s.push_str(match mult {
                    0 => "   ",
                    1 => "---",
                    2 => "===",
                    _ => "≡≡≡",
                });
            }
            s.push_str(&format!("({w})"));
        }
        let forks: Vec<String> = self
            .edges
            .iter()
            .filter(|(a, b, _)| *b != *a + 1)
            .map(|(a, b, m)| format!("fork {a}-{b} x{m}"))
            .collect();
        if !forks.is_empty() {
            s.push_str(&format!("  [{}]", forks.join(", ")));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pimenov::JValue;

    fn vals(list: &[JValue]) -> JValuation {
        JValuation::new(list.to_vec())
    }

    #[test]
    fn cartan_elements_commute() {
        for (kind, rank, params) in [
            (GroupKind::BSoOdd, 2usize, 4usize),
            (GroupKind::DSoEven, 2, 3),
            (GroupKind::UUnitary, 2, 2),
            (GroupKind::SuSpecial, 2, 2),
            (GroupKind::CSp, 3, 3),
        ] {
            let v = JValuation::ones(params);
            let basis = cartan_basis(kind, rank, &v).unwrap();
            for (_, a) in &basis.elements {
                for (_, b) in &basis.elements {
                    assert!(a.commutator(b).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn sp_cartan_h1_pattern() {
        // H_1 = e_11 - e_33 - wait: (k, k+n) pairing -> diag(1, 0, -1, 0) at rank 2
        let v = JValuation::ones(2);
        let h1 = cartan_element(GroupKind::CSp, 1, 2, &v).unwrap();
        assert!(h1[(0, 0)].is_one());
        assert_eq!(h1[(2, 2)], PimenovElement::one(2).neg());
        assert!(h1[(1, 1)].is_zero());
    }

    #[test]
    fn root_counts() {
        // B family rank 2: 8 roots; A rank 1: 2 roots; C rank 2: 8 roots incl long
        assert_eq!(root_system(GroupKind::BSoOdd, 2).len(), 8);
        assert_eq!(root_system(GroupKind::ASl, 1).len(), 2);
        let c2 = root_system(GroupKind::CSp, 2);
        assert_eq!(c2.len(), 8);
        assert_eq!(
            c2.iter().filter(|l| matches!(l, RootLabel::Long { .. })).count(),
            4
        );
        // cardinality equals dim - rank for each family
        for (kind, rank, dim) in [
            (GroupKind::BSoOdd, 3usize, 21usize), // so(7)
            (GroupKind::DSoEven, 3, 15),          // so(6)
            (GroupKind::CSp, 3, 21),              // sp(3)
            (GroupKind::SuSpecial, 3, 15),        // su(4)
        ] {
            assert_eq!(root_system(kind, rank).len(), dim - rank, "{kind:?}");
        }
    }

    #[test]
    fn so5_key_commutators() {
        // so(5): [E_{e1}, E_{-e1}] = -2 j2^2 j4^2 H_1 (j1 = j3 = 1)
        let v = JValuation::ones(4);
        let kind = GroupKind::BSoOdd;
        let e_p = root_vector(kind, &RootLabel::Short { sign: 1, k: 1 }, 2, &v).unwrap();
        let e_m = root_vector(kind, &RootLabel::Short { sign: -1, k: 1 }, 2, &v).unwrap();
        let h1 = cartan_element(kind, 1, 2, &v).unwrap();
        assert_eq!(
            e_p.commutator(&e_m).unwrap(),
            h1.scale_scalar(&Cyclotomic::from_int(-2))
        );
        // contracted: j2 = iota -> [E_{e1-e2}, E_{e2-e1}] = -4 iota2^2 (H1 - H2) = 0
        let v = vals(&[JValue::One, JValue::Iota, JValue::One, JValue::One]);
        let a = root_vector(kind, &RootLabel::Pair { sr: 1, r: 1, ss: -1, s: 2 }, 2, &v).unwrap();
        let b = root_vector(kind, &RootLabel::Pair { sr: -1, r: 1, ss: 1, s: 2 }, 2, &v).unwrap();
        assert!(a.commutator(&b).unwrap().is_zero());
    }

    #[test]
    fn verify_cw_small_cases() {
        let cases: Vec<(GroupKind, usize, JValuation)> = vec![
            (GroupKind::BSoOdd, 1, JValuation::ones(2)),
            (GroupKind::BSoOdd, 2, JValuation::ones(4)),
            (GroupKind::BSoOdd, 2, vals(&[JValue::One, JValue::Iota, JValue::One, JValue::Iota])),
            (GroupKind::DSoEven, 2, JValuation::ones(3)),
            (GroupKind::DSoEven, 2, vals(&[JValue::One, JValue::Iota, JValue::One])),
            (GroupKind::UUnitary, 2, vals(&[JValue::Imag, JValue::Iota])),
            (GroupKind::SuSpecial, 2, vals(&[JValue::Iota, JValue::Imag])),
            (GroupKind::CSp, 2, vals(&[JValue::One, JValue::Iota])),
            (GroupKind::CSp, 3, vals(&[JValue::One, JValue::Iota, JValue::One])),
        ];
        for (kind, rank, v) in cases {
            let rep = verify_cartan_weyl(kind, rank, &v).unwrap();
            assert!(
                rep.passed(),
                "{kind:?} rank {rank} at {}: {} mismatches, first: {:?}",
                rep.valuation,
                rep.mismatches.len(),
                rep.mismatches.first()
            );
        }
    }

    #[test]
    fn u2_with_imaginary_j_matches_closed_form() {
        // [E_{e0-e1}, E_{e1-e0}] = j1^2 (H0 - H1) with j1 = i gives -(H0 - H1)
        let v = vals(&[JValue::Imag]);
        let kind = GroupKind::UUnitary;
        let a = root_vector(kind, &RootLabel::Diff { a: 0, b: 1 }, 1, &v).unwrap();
        let b = root_vector(kind, &RootLabel::Diff { a: 1, b: 0 }, 1, &v).unwrap();
        let h0 = cartan_element(kind, 0, 1, &v).unwrap();
        let h1 = cartan_element(kind, 1, 1, &v).unwrap();
        let expected = h0.sub(&h1).unwrap().scale_scalar(&Cyclotomic::from_int(-1));
        assert_eq!(a.commutator(&b).unwrap(), expected);
    }

    #[test]
    fn sp_long_roots_independent_of_valuation() {
        let v = vals(&[JValue::Iota, JValue::Iota]);
        let e = root_vector(GroupKind::CSp, &RootLabel::Long { sign: 1, k: 1 }, 2, &v).unwrap();
        assert!(e[(0, 2)].is_one());
    }

    #[test]
    fn cartan_matrices_match_classical_tables() {
        assert_eq!(cartan_matrix(GroupKind::ASl, 2), vec![vec![2, -1], vec![-1, 2]]);
        let b2 = cartan_matrix(GroupKind::BSoOdd, 2);
        assert_eq!(b2[0][1] * b2[1][0], 2);
        let c3 = cartan_matrix(GroupKind::CSp, 3);
        assert_eq!(c3[1][2], -2);
        assert_eq!(c3[2][1], -1);
        let d4 = cartan_matrix(GroupKind::DSoEven, 4);
        assert_eq!(d4[1][3], -1); // fork
        assert_eq!(d4[2][3], 0);
        for kind in [GroupKind::ASl, GroupKind::BSoOdd, GroupKind::CSp, GroupKind::DSoEven] {
            for rank in 2..=6 {
                let a = cartan_matrix(kind, rank);
                assert!(cartan_matrix_properties_hold(&a), "{kind:?} rank {rank}");
            }
        }
    }

    #[test]
    fn root_space_property_all_families() {
        // [H, E_alpha] = alpha(H) E_alpha: diagonal action, verified by the
        // closed-form match in verify_cartan_weyl; spot-check eigenvalue read-off
        let v = vals(&[JValue::One, JValue::Iota, JValue::One]);
        let kind = GroupKind::CSp;
        let h2 = cartan_element(kind, 2, 3, &v).unwrap();
        let lab = RootLabel::Pair { sr: 1, r: 2, ss: -1, s: 3 };
        let e = root_vector(kind, &lab, 3, &v).unwrap();
        assert_eq!(h2.commutator(&e).unwrap(), e);
    }

    #[test]
    fn dynkin_diagram_shapes() {
        let d = dynkin_diagram(GroupKind::DSoEven, 4);
        assert_eq!(d.edges.len(), 3);
        assert!(d.edges.iter().any(|(a, b, _)| *b != a + 1));
        let b = dynkin_diagram(GroupKind::BSoOdd, 3);
        assert_eq!(b.weights, vec![2, 2, 1]);
        assert!(!b.ascii().is_empty());
    }
}
