//! Dense matrices over the Pimenov algebra. All Lie-algebra generators, group
//! elements and flattening sources live here.

use std::fmt;

use crate::error::{CkError, Result};
use crate::pimenov::{JValuation, PimenovElement};
use crate::scalar::{Cyclotomic, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct PMatrix {
    rows: usize,
    cols: usize,
    arity: usize,
    data: Vec<PimenovElement>,
}

impl PMatrix {
    pub fn zero(rows: usize, cols: usize, arity: usize) -> Self {
        PMatrix { rows, cols, arity, data: vec![PimenovElement::zero(arity); rows * cols] }
    }

    pub fn identity(n: usize, arity: usize) -> Self {
        let mut m = Self::zero(n, n, arity);
        for i in 0..n {
            m[(i, i)] = PimenovElement::one(arity);
        }
        m
    }

    /// Matrix unit e_{rc} (single 1 entry).
    pub fn unit(rows: usize, cols: usize, arity: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zero(rows, cols, arity);
        m[(r, c)] = PimenovElement::one(arity);
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        arity: usize,
        mut f: impl FnMut(usize, usize) -> PimenovElement,
    ) -> Self {
        let mut m = Self::zero(rows, cols, arity);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = &PimenovElement> {
        self.data.iter()
    }

    pub fn add(&self, other: &PMatrix) -> Result<PMatrix> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.add(b)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PMatrix) -> Result<PMatrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PMatrix {
        PMatrix {
            rows: self.rows,
            cols: self.cols,
            arity: self.arity,
            data: self.data.iter().map(|x| x.neg()).collect(),
        }
    }

    fn check_shape(&self, other: &PMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CkError::ShapeMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        if self.arity != other.arity {
            return Err(CkError::ArityMismatch(self.arity, other.arity));
        }
        Ok(())
    }

    pub fn mul(&self, other: &PMatrix) -> Result<PMatrix> {
        if self.cols != other.rows {
            return Err(CkError::ShapeMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        if self.arity != other.arity {
            return Err(CkError::ArityMismatch(self.arity, other.arity));
        }
        let mut out = PMatrix::zero(self.rows, other.cols, self.arity);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b)?;
                    out[(r, c)] = out[(r, c)].add(&prod)?;
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &PMatrix) -> Result<PMatrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn transpose(&self) -> PMatrix {
        PMatrix::from_fn(self.cols, self.rows, self.arity, |r, c| self[(c, r)].clone())
    }

    pub fn conj_transpose(&self) -> PMatrix {
        PMatrix::from_fn(self.cols, self.rows, self.arity, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, k: &PimenovElement) -> Result<PMatrix> {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = x.mul(k)?;
        }
        Ok(out)
    }

    pub fn scale_scalar(&self, k: &Cyclotomic) -> PMatrix {
        PMatrix {
            rows: self.rows,
            cols: self.cols,
            arity: self.arity,
            data: self.data.iter().map(|x| x.scale(k)).collect(),
        }
    }

    pub fn trace(&self) -> Result<PimenovElement> {
        let mut t = PimenovElement::zero(self.arity);
        for i in 0..self.rows.min(self.cols) {
            t = t.add(&self[(i, i)])?;
        }
        Ok(t)
    }

    /// Exponential of a nilpotent matrix: the series terminates exactly.
    /// Matrices over D_n that vanish modulo the nilradical and are nilpotent
    /// as field matrices satisfy M^(rows*(arity+1)) = 0, which bounds the loop.
    pub fn exp_nilpotent(&self) -> Result<PMatrix> {
        if self.rows != self.cols {
            return Err(CkError::ShapeMismatch(self.rows, self.cols, self.cols, self.rows));
        }
        let bound = self.rows * (self.arity + 1) + 1;
        let mut acc = PMatrix::identity(self.rows, self.arity);
        let mut pw = PMatrix::identity(self.rows, self.arity);
        let mut fact = Rational::from_integer(1.into());
        for k in 1..=bound {
            pw = pw.mul(self)?;
            if pw.is_zero() {
                return Ok(acc);
            }
            fact *= Rational::from_integer(k.into());
            let term = pw.scale_scalar(&Cyclotomic::from_rational(fact.recip()));
            acc = acc.add(&term)?;
        }
        Err(CkError::NotNilpotent)
    }

    /// A(j) * A(j)^t = A(j)^t * A(j) = I, the j-orthogonality relations.
    pub fn is_j_orthogonal(&self) -> Result<bool> {
        if self.rows != self.cols {
            return Ok(false);
        }
        let id = PMatrix::identity(self.rows, self.arity);
        let t = self.transpose();
        Ok(self.mul(&t)? == id && t.mul(self)? == id)
    }

    /// Widen the Pimenov arity (embed D_m into D_n for m <= n).
    pub fn with_arity(&self, arity: usize) -> PMatrix {
        assert!(arity >= self.arity);
        PMatrix::from_fn(self.rows, self.cols, arity, |r, c| {
            let src = &self[(r, c)];
            PimenovElement::from_terms(
                arity,
                src.terms().map(|(m, coef)| (m.clone(), coef.clone())).collect(),
            )
        })
    }
}

/// Lift a scalar matrix into Pimenov matrices of the requested arity.
pub fn lift_qmatrix(m: &crate::qlinalg::QMatrix, arity: usize) -> PMatrix {
    PMatrix::from_fn(m.rows(), m.cols(), arity, |r, c| {
        PimenovElement::scalar(arity, m[(r, c)].clone())
    })
}

/// Anti-diagonal matrix C0 with (C0)_{ik} = delta_{i,k'}, k' = N+1-k.
pub fn antidiag_identity(n: usize, arity: usize) -> PMatrix {
    PMatrix::from_fn(n, n, arity, |r, c| {
        if r + c == n - 1 {
            PimenovElement::one(arity)
        } else {
            PimenovElement::zero(arity)
        }
    })
}

/// Checks T^t C0 T = C0 where C0 is the split anti-diagonal symplectic form
/// with entries epsilon_i delta_{i,i'}, epsilon_i = +1 for i <= n, -1 after.
///
/// The source text describes C0 with a plain Kronecker delta (a diagonal
/// matrix), which is symmetric and cannot be a symplectic form; the standard
/// anti-block form is used instead.
pub fn check_symplectic(t: &PMatrix) -> Result<bool> {
    if t.rows() != t.cols() || t.rows() % 2 != 0 {
        return Ok(false);
    }
    let c0 = symplectic_form_antidiag(t.rows() / 2, t.arity());
    let lhs = t.transpose().mul(&c0)?.mul(t)?;
    Ok(lhs == c0)
}

/// C0 = sum_k eps_k e_{k,k'} with k' = 2n+1-k, eps = +1 (k <= n), -1 (k > n).
pub fn symplectic_form_antidiag(n: usize, arity: usize) -> PMatrix {
    let dim = 2 * n;
    PMatrix::from_fn(dim, dim, arity, |r, c| {
        if r + c == dim - 1 {
            if r < n {
                PimenovElement::one(arity)
            } else {
                PimenovElement::one(arity).neg()
            }
        } else {
            PimenovElement::zero(arity)
        }
    })
}

/// Diagonal Cayley-Klein form diag(1, j_1^2, j_1^2 j_2^2, ...) of Eq-type
/// quadratic forms; every orthogonal/unitary family generator G satisfies
/// G^t F + F G = 0 (resp. conjugate-transposed) against it.
pub fn ck_diagonal_form(n_plus_1: usize, v: &JValuation) -> Result<PMatrix> {
    let arity = v.arity();
    let mut m = PMatrix::zero(n_plus_1, n_plus_1, arity);
    for k in 0..n_plus_1 {
        m[(k, k)] = v.jprod2(1, k)?;
    }
    Ok(m)
}

/// j-dependent invariant form for the sp family in the (k, k+n) pairing:
/// F = sum_k c_k (e_{k,k+n} - e_{k+n,k}), c_k = prod_{l=2}^{k} j_l^2.
pub fn sp_pairing_form(n: usize, v: &JValuation) -> Result<PMatrix> {
    let arity = v.arity();
    let mut m = PMatrix::zero(2 * n, 2 * n, arity);
    for k in 1..=n {
        let c = v.jprod2(2, k)?;
        m[(k - 1, k - 1 + n)] = c.clone();
        m[(k - 1 + n, k - 1)] = c.neg();
    }
    Ok(m)
}

impl std::ops::Index<(usize, usize)> for PMatrix {
    type Output = PimenovElement;
    fn index(&self, (r, c): (usize, usize)) -> &PimenovElement {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut PimenovElement {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for PMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pimenov::JValue;

    #[test]
    fn commutator_with_self_is_zero() {
        let m = PMatrix::from_fn(3, 3, 1, |r, c| {
            PimenovElement::scalar(1, Cyclotomic::from_int((r * 3 + c) as i64))
        });
        assert!(m.commutator(&m).unwrap().is_zero());
    }

    #[test]
    fn transpose_involution() {
        let m = PMatrix::from_fn(2, 3, 1, |r, c| {
            PimenovElement::scalar(1, Cyclotomic::from_int((r + 2 * c) as i64))
        });
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = PMatrix::zero(4, 4, 0);
        assert_eq!(z.exp_nilpotent().unwrap(), PMatrix::identity(4, 0));
    }

    #[test]
    fn exp_single_strict_upper_entry() {
        let mut m = PMatrix::zero(3, 3, 0);
        m[(0, 2)] = PimenovElement::scalar(0, Cyclotomic::from_int(5));
        let e = m.exp_nilpotent().unwrap();
        let expected = PMatrix::identity(3, 0).add(&m).unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn exp_rejects_non_nilpotent() {
        let m = PMatrix::identity(2, 0);
        assert_eq!(m.exp_nilpotent(), Err(CkError::NotNilpotent));
    }

    #[test]
    fn identity_is_orthogonal_and_symplectic() {
        assert!(PMatrix::identity(4, 0).is_j_orthogonal().unwrap());
        assert!(check_symplectic(&PMatrix::identity(4, 0)).unwrap());
    }

    #[test]
    fn scaled_identity_is_not_symplectic() {
        let mut m = PMatrix::identity(4, 0);
        m[(0, 0)] = PimenovElement::scalar(0, Cyclotomic::from_int(2));
        assert!(!check_symplectic(&m).unwrap());
    }

    #[test]
    fn ck_form_diagonal_weights() {
        let v = JValuation::new(vec![JValue::Iota, JValue::One]);
        let f = ck_diagonal_form(3, &v).unwrap();
        assert!(f[(0, 0)].is_one());
        assert!(f[(2, 2)].is_zero()); // contains iota_1^2 = 0
    }
}
