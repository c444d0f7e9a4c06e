//! Generators and defining conditions for the unitary, orthogonal and
//! symplectic Cayley-Klein families, the symplectic-basis change matrices
//! D_sigma / B_sigma, and the worked Galilei matrices.

use crate::error::{CkError, Result};
use crate::matrix::{antidiag_identity, PMatrix};
use crate::pimenov::{interval_product, JValuation, PimenovElement};
use crate::scalar::Cyclotomic;

/// The classical families. `rank` conventions: objects have dimension
/// n+1 (A, U, SU), 2n+1 (B = so-odd), 2n (C = sp and D = so-even).
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum GroupKind {
    ASl,
    BSoOdd,
    CSp,
    DSoEven,
    UUnitary,
    SuSpecial,
}

impl GroupKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "sl" | "a" | "A" => GroupKind::ASl,
            "so-odd" | "b" | "B" => GroupKind::BSoOdd,
            "sp" | "c" | "C" => GroupKind::CSp,
            "so-even" | "d" | "D" => GroupKind::DSoEven,
            "u" => GroupKind::UUnitary,
            "su" => GroupKind::SuSpecial,
            other => Err(CkError::Parse(format!("unknown group kind {other:?}")))?,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            GroupKind::ASl => "sl",
            GroupKind::BSoOdd => "so-odd",
            GroupKind::CSp => "sp",
            GroupKind::DSoEven => "so-even",
            GroupKind::UUnitary => "u",
            GroupKind::SuSpecial => "su",
        }
    }

    /// Matrix size of the defining representation at the given rank.
    pub fn matrix_dim(&self, rank: usize) -> usize {
        match self {
            GroupKind::ASl | GroupKind::UUnitary | GroupKind::SuSpecial => rank + 1,
            GroupKind::BSoOdd => 2 * rank + 1,
            GroupKind::CSp | GroupKind::DSoEven => 2 * rank,
        }
    }

    /// Number of Cayley-Klein parameters j_k at the given rank.
    pub fn param_count(&self, rank: usize) -> usize {
        match self {
            GroupKind::ASl | GroupKind::UUnitary | GroupKind::SuSpecial => rank,
            GroupKind::BSoOdd => 2 * rank,
            GroupKind::DSoEven => 2 * rank - 1,
            GroupKind::CSp => rank,
        }
    }
}

/// A labelled family of generator matrices under one valuation.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub kind: GroupKind,
    pub rank: usize,
    pub valuation: JValuation,
    pub generators: Vec<(String, PMatrix)>,
}

/// Orthogonal generator X_{mu nu} of so(n+1; j): (X)_{nu mu} = 1 and
/// (X)_{mu nu} = -prod_{m=mu+1}^{nu} j_m^2, indices 0-based, mu < nu <= n.
pub fn so_generator(mu: usize, nu: usize, n: usize, v: &JValuation) -> Result<PMatrix> {
    if mu >= nu || nu > n {
        return Err(CkError::IndexOutOfRange(format!("so generator ({mu},{nu}) for n={n}")));
    }
    let arity = v.arity();
    let mut m = PMatrix::zero(n + 1, n + 1, arity);
    m[(nu, mu)] = PimenovElement::one(arity);
    m[(mu, nu)] = v.jprod2(mu + 1, nu)?.neg();
    Ok(m)
}

/// Unitary generator X_{km} of u(n+1; j) under the mapping of the defining
/// transformation: X_{kk} = e_kk, X_{nu mu} = e_{nu mu} (mu < nu) and
/// X_{mu nu} = (prod_{l=mu+1}^{nu} j_l^2) e_{mu nu}.
pub fn u_generator_x(k: usize, m: usize, n: usize, v: &JValuation) -> Result<PMatrix> {
    if k > n || m > n {
        return Err(CkError::IndexOutOfRange(format!("u generator ({k},{m}) for n={n}")));
    }
    let arity = v.arity();
    let mut out = PMatrix::zero(n + 1, n + 1, arity);
    if k <= m {
        out[(k, m)] = if k == m { PimenovElement::one(arity) } else { v.jprod2(k + 1, m)? };
    } else {
        out[(k, m)] = PimenovElement::one(arity);
    }
    Ok(out)
}

fn half() -> Cyclotomic {
    Cyclotomic::from_ratio(1, 2)
}

fn half_i() -> Cyclotomic {
    Cyclotomic::i().scale(&crate::scalar::rat(1, 2))
}

/// Q_{mu nu}(j) = (i/2)(X_{nu mu} + X_{mu nu}), mu < nu.
pub fn u_generator_q(mu: usize, nu: usize, n: usize, v: &JValuation) -> Result<PMatrix> {
    let x_nm = u_generator_x(nu, mu, n, v)?;
    let x_mn = u_generator_x(mu, nu, n, v)?;
    Ok(x_nm.add(&x_mn)?.scale_scalar(&half_i()))
}

/// L_{mu nu}(j) = (1/2)(X_{nu mu} - X_{mu nu}), mu < nu.
pub fn u_generator_l(mu: usize, nu: usize, n: usize, v: &JValuation) -> Result<PMatrix> {
    let x_nm = u_generator_x(nu, mu, n, v)?;
    let x_mn = u_generator_x(mu, nu, n, v)?;
    Ok(x_nm.sub(&x_mn)?.scale_scalar(&half()))
}

/// P_k = (i/2)(X_{k-1,k-1} - X_{kk}); independent of the valuation.
pub fn u_generator_p(k: usize, n: usize, v: &JValuation) -> Result<PMatrix> {
    if k == 0 || k > n {
        return Err(CkError::IndexOutOfRange(format!("P_{k} for n={n}")));
    }
    let a = u_generator_x(k - 1, k - 1, n, v)?;
    let b = u_generator_x(k, k, n, v)?;
    Ok(a.sub(&b)?.scale_scalar(&half_i()))
}

/// The Hermitian generator set {Q_{mu nu}, L_{mu nu}, P_k} of su(n+1; j);
/// (n+1)^2 - 1 independent generators.
pub fn u_generators(n: usize, v: &JValuation) -> Result<GeneratorSet> {
    let mut generators = Vec::new();
    for mu in 0..n {
        for nu in mu + 1..=n {
            generators.push((format!("Q_{mu}{nu}"), u_generator_q(mu, nu, n, v)?));
            generators.push((format!("L_{mu}{nu}"), u_generator_l(mu, nu, n, v)?));
        }
    }
    for k in 1..=n {
        generators.push((format!("P_{k}"), u_generator_p(k, n, v)?));
    }
    Ok(GeneratorSet { kind: GroupKind::SuSpecial, rank: n, valuation: v.clone(), generators })
}

/// Chevalley basis of sp(n; j) in the pairing k' = 2n+1-k:
/// H_i, X_i^+ = j_i(e_{i,i+1} - e_{(i+1)',i'}), X_i^- likewise, and the long
/// pair X_n^{+-} = j_n e_{n,n+-1-ish} at the middle.
pub fn sp_chevalley_basis(n: usize, v: &JValuation) -> Result<GeneratorSet> {
    if n < 1 {
        return Err(CkError::IndexOutOfRange("sp rank must be >= 1".into()));
    }
    let arity = v.arity();
    let dim = 2 * n;
    let prime = |i: usize| 2 * n + 1 - i; // 1-based
    let e = |a: usize, b: usize| PMatrix::unit(dim, dim, arity, a - 1, b - 1);
    let mut generators = Vec::new();
    for i in 1..=n {
        let h = if i < n {
            e(i, i)
                .sub(&e(prime(i), prime(i)))?
                .sub(&e(i + 1, i + 1))?
                .add(&e(prime(i + 1), prime(i + 1)))?
        } else {
            e(n, n).sub(&e(prime(n), prime(n)))?
        };
        generators.push((format!("H_{i}"), h));
    }
    for i in 1..=n {
        let ji = v.eval(i)?;
        let (xp, xm) = if i < n {
            (
                e(i, i + 1).sub(&e(prime(i + 1), prime(i)))?.scale(&ji)?,
                e(i + 1, i).sub(&e(prime(i), prime(i + 1)))?.scale(&ji)?,
            )
        } else {
            (e(n, n + 1).scale(&ji)?, e(n + 1, n).scale(&ji)?)
        };
        generators.push((format!("X_{i}+"), xp));
        generators.push((format!("X_{i}-"), xm));
    }
    Ok(GeneratorSet { kind: GroupKind::CSp, rank: n, valuation: v.clone(), generators })
}

/// The unitary solution D of D^t C0 D = I from which all symplectic bases
/// derive; contains 1/sqrt2 entries.
pub fn symplectic_d_matrix_base(n_dim: usize, arity: usize) -> PMatrix {
    let n = n_dim / 2;
    let inv_s2 = Cyclotomic::sqrt2().inv().unwrap();
    let mut m = PMatrix::zero(n_dim, n_dim, arity);
    let one = PimenovElement::scalar(arity, inv_s2.clone());
    let i_s = PimenovElement::scalar(arity, &Cyclotomic::i() * &inv_s2);
    if n_dim % 2 == 0 {
        for k in 0..n {
            m[(k, k)] = one.clone();
            m[(k, n_dim - 1 - k)] = i_s.neg(); // -i * Ctilde0 block
            m[(n + k, n - 1 - k)] = one.clone(); // Ctilde0 block
            m[(n + k, n + k)] = i_s.clone();
        }
    } else {
        for k in 0..n {
            m[(k, k)] = one.clone();
            m[(k, n_dim - 1 - k)] = i_s.neg();
            m[(n + 1 + k, n - 1 - k)] = one.clone();
            m[(n + 1 + k, n + 1 + k)] = i_s.clone();
        }
        m[(n, n)] = PimenovElement::one(arity);
    }
    m
}

/// D_sigma = D V_sigma with (V_sigma)_{ik} = delta_{sigma_i, k}.
pub fn symplectic_d_matrix(n_dim: usize, sigma: &[usize], arity: usize) -> Result<PMatrix> {
    let v_sigma = permutation_matrix(n_dim, sigma, arity)?;
    symplectic_d_matrix_base(n_dim, arity).mul(&v_sigma)
}

/// Exact inverse of D_sigma via D^{-1} = D^t C0 (from D^t C0 D = I).
pub fn symplectic_d_matrix_inv(n_dim: usize, sigma: &[usize], arity: usize) -> Result<PMatrix> {
    let d = symplectic_d_matrix_base(n_dim, arity);
    let d_inv = d.transpose().mul(&antidiag_identity(n_dim, arity))?;
    let v_sigma = permutation_matrix(n_dim, sigma, arity)?;
    v_sigma.transpose().mul(&d_inv)
}

pub fn permutation_matrix(n: usize, sigma: &[usize], arity: usize) -> Result<PMatrix> {
    if sigma.len() != n {
        return Err(CkError::InvalidPermutation(n));
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s == 0 || s > n || seen[s - 1] {
            return Err(CkError::InvalidPermutation(n));
        }
        seen[s - 1] = true;
    }
    let mut m = PMatrix::zero(n, n, arity);
    for (i, &s) in sigma.iter().enumerate() {
        m[(i, s - 1)] = PimenovElement::one(arity);
    }
    Ok(m)
}

/// B_sigma(j) = D_sigma A(j) D_sigma^{-1}. The input must satisfy the
/// j-orthogonality relations; the output then preserves C0.
pub fn symplectic_basis_conjugate(a: &PMatrix, sigma: &[usize], v: &JValuation) -> Result<PMatrix> {
    if !a.is_j_orthogonal()? {
        return Err(CkError::NotOrthogonal);
    }
    let n_dim = a.rows();
    let d = symplectic_d_matrix(n_dim, sigma, v.arity())?;
    let d_inv = symplectic_d_matrix_inv(n_dim, sigma, v.arity())?;
    d.mul(a)?.mul(&d_inv)
}

/// The Cartesian-basis Galilei-type matrix A(iota) of SO(3; j) built from
/// three free parameters, with a_{31} = -a_{13} + a_{12} a_{23} forced by
/// j-orthogonality.
pub fn galilei_a_matrix(
    a12: &Cyclotomic,
    a13: &Cyclotomic,
    a23: &Cyclotomic,
    v: &JValuation,
) -> Result<PMatrix> {
    let arity = v.arity();
    let s = |c: &Cyclotomic| PimenovElement::scalar(arity, c.clone());
    let mut bare = vec![vec![PimenovElement::zero(arity); 3]; 3];
    bare[0][0] = PimenovElement::one(arity);
    bare[1][1] = PimenovElement::one(arity);
    bare[2][2] = PimenovElement::one(arity);
    bare[0][1] = s(a12);
    bare[1][0] = s(&-a12.clone());
    bare[0][2] = s(a13);
    bare[1][2] = s(a23);
    bare[2][1] = s(&-a23.clone());
    bare[2][0] = s(&(&(a12 * a23) - a13));
    let mut m = PMatrix::zero(3, 3, arity);
    for r in 0..3 {
        for c in 0..3 {
            m[(r, c)] = interval_product(r + 1, c + 1, v)?.mul(&bare[r][c])?;
        }
    }
    Ok(m)
}

/// The b / b-tilde parameters of B_sigma expressed through the bare entries
/// of A, for the 3x3 case (n = 1, middle index 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BSigmaParams {
    pub b11: PimenovElement,
    pub bt11: PimenovElement,
    pub b31: PimenovElement,
    pub bt31: PimenovElement,
    pub b12: PimenovElement,
    pub bt12: PimenovElement,
    pub b21: PimenovElement,
    pub bt21: PimenovElement,
    pub b22: PimenovElement,
}

/// Extract the B_sigma parameters from the bare entries of a 3x3 matrix.
/// `bare[r][c]` are the complex parameters before interval-product scaling.
pub fn bsigma_params_from_bare(bare: &[Vec<PimenovElement>], sigma: &[usize]) -> Result<BSigmaParams> {
    if sigma.len() != 3 {
        return Err(CkError::InvalidPermutation(3));
    }
    let s = |i: usize| sigma[i - 1] - 1; // 0-based lookup
    let arity = bare[0][0].arity();
    let inv_s2 = PimenovElement::scalar(arity, Cyclotomic::sqrt2().inv().unwrap());
    let hlf = PimenovElement::scalar(arity, Cyclotomic::from_ratio(1, 2));
    Ok(BSigmaParams {
        b22: bare[s(2)][s(2)].clone(),
        b21: bare[s(2)][s(1)].mul(&inv_s2)?,
        b12: bare[s(1)][s(2)].mul(&inv_s2)?,
        bt12: bare[s(3)][s(2)].mul(&inv_s2)?,
        bt21: bare[s(2)][s(3)].mul(&inv_s2)?,
        b11: bare[s(1)][s(1)].add(&bare[s(3)][s(3)])?.mul(&hlf)?,
        bt11: bare[s(1)][s(3)].sub(&bare[s(3)][s(1)])?.mul(&hlf)?,
        b31: bare[s(1)][s(1)].sub(&bare[s(3)][s(3)])?.mul(&hlf)?,
        bt31: bare[s(1)][s(3)].add(&bare[s(3)][s(1)])?.mul(&hlf)?,
    })
}

/// Assemble the displayed 3x3 B_sigma(j) pattern from extracted parameters:
/// row/column order (k = 1, middle = 2, k' = 3), entries carrying interval
/// products (sigma_a, sigma_b).
pub fn bsigma_pattern(p: &BSigmaParams, sigma: &[usize], v: &JValuation) -> Result<PMatrix> {
    let arity = v.arity();
    let iv = |a: usize, b: usize| interval_product(sigma[a - 1], sigma[b - 1], v);
    let i = PimenovElement::scalar(arity, Cyclotomic::i());
    let mut m = PMatrix::zero(3, 3, arity);
    let i13 = iv(1, 3)?;
    let i12 = iv(1, 2)?;
    let i23 = iv(2, 3)?;
    let it11 = i.mul(&i13)?.mul(&p.bt11)?;
    let it31 = i.mul(&i13)?.mul(&p.bt31)?;
    let it12 = i.mul(&i23)?.mul(&p.bt12)?;
    let it21 = i.mul(&i23)?.mul(&p.bt21)?;
    m[(0, 0)] = p.b11.add(&it11)?;
    m[(2, 2)] = p.b11.sub(&it11)?;
    m[(0, 2)] = p.b31.sub(&it31)?;
    m[(2, 0)] = p.b31.add(&it31)?;
    m[(0, 1)] = i12.mul(&p.b12)?.sub(&it12)?;
    m[(2, 1)] = i12.mul(&p.b12)?.add(&it12)?;
    m[(1, 0)] = i12.mul(&p.b21)?.add(&it21)?;
    m[(1, 2)] = i12.mul(&p.b21)?.sub(&it21)?;
    m[(1, 1)] = p.b22.clone();
    Ok(m)
}

/// Flattened index lambda = nu + mu(n-1) - mu(mu-1)/2 for 0 <= mu < nu <= n;
/// bijective onto 1..n(n+1)/2.
pub fn lambda_index(mu: usize, nu: usize, n: usize) -> Result<usize> {
    if mu >= nu || nu > n {
        return Err(CkError::IndexOutOfRange(format!("lambda index ({mu},{nu}) for n={n}")));
    }
    Ok(nu + mu * (n - 1) - mu * (mu.saturating_sub(1)) / 2)
}

/// General element Z(r, s, w, j) of su(n+1; j): the linear combination of
/// the Q, L, P generators with the lambda indexing of the coefficient lists.
pub fn general_element(
    r: &[Cyclotomic],
    s: &[Cyclotomic],
    w: &[Cyclotomic],
    n: usize,
    v: &JValuation,
) -> Result<PMatrix> {
    let pairs = n * (n + 1) / 2;
    if r.len() != pairs {
        return Err(CkError::LengthMismatch { expected: pairs, got: r.len() });
    }
    if s.len() != pairs {
        return Err(CkError::LengthMismatch { expected: pairs, got: s.len() });
    }
    if w.len() != n {
        return Err(CkError::LengthMismatch { expected: n, got: w.len() });
    }
    let mut z = PMatrix::zero(n + 1, n + 1, v.arity());
    for mu in 0..n {
        for nu in mu + 1..=n {
            let lam = lambda_index(mu, nu, n)?;
            let q = u_generator_q(mu, nu, n, v)?.scale_scalar(&r[lam - 1]);
            let l = u_generator_l(mu, nu, n, v)?.scale_scalar(&s[lam - 1]);
            z = z.add(&q)?.add(&l)?;
        }
    }
    for k in 1..=n {
        let p = u_generator_p(k, n, v)?.scale_scalar(&w[k - 1]);
        z = z.add(&p)?;
    }
    Ok(z)
}

/// Hermitian Cayley-Klein quadratic form |z0|^2 + sum_k |z_k|^2 prod j_m^2.
pub fn ck_quadratic_form(z: &[PimenovElement], v: &JValuation) -> Result<PimenovElement> {
    let arity = v.arity();
    let mut acc = PimenovElement::zero(arity);
    for (k, zk) in z.iter().enumerate() {
        let w = v.jprod2(1, k)?;
        acc = acc.add(&zk.mul(&zk.conj())?.mul(&w)?)?;
    }
    Ok(acc)
}

/// Sorted nilpotent parameter indices: the fibering data of the space.
pub fn fiber_structure(v: &JValuation) -> Vec<usize> {
    v.nilpotent_indices()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pimenov::JValue;

    #[test]
    fn so_generator_classical() {
        let v = JValuation::ones(2);
        let x01 = so_generator(0, 1, 2, &v).unwrap();
        assert!(x01[(1, 0)].is_one());
        assert_eq!(x01[(0, 1)], PimenovElement::one(2).neg());
    }

    #[test]
    fn so_generator_contracted_entry_vanishes() {
        // X_{0,2} with j_2 = iota_2: (0,2) entry carries j_1^2 j_2^2 -> 0
        let v = JValuation::new(vec![JValue::One, JValue::Iota]);
        let x02 = so_generator(0, 2, 2, &v).unwrap();
        assert!(x02[(0, 2)].is_zero());
        assert!(x02[(2, 0)].is_one());
    }

    #[test]
    fn u_commutators_classical_delta_pattern() {
        // [X_km, X_pq] = delta_mp X_kq - delta_kq X_pm for all j = 1, n <= 3
        for n in 1..=3usize {
            let v = JValuation::ones(n);
            for k in 0..=n {
                for m in 0..=n {
                    for p in 0..=n {
                        for q in 0..=n {
                            let lhs = u_generator_x(k, m, n, &v)
                                .unwrap()
                                .commutator(&u_generator_x(p, q, n, &v).unwrap())
                                .unwrap();
                            let mut rhs = PMatrix::zero(n + 1, n + 1, n);
                            if m == p {
                                rhs = rhs.add(&u_generator_x(k, q, n, &v).unwrap()).unwrap();
                            }
                            if k == q {
                                rhs = rhs.sub(&u_generator_x(p, m, n, &v).unwrap()).unwrap();
                            }
                            assert_eq!(lhs, rhs, "[X_{k}{m}, X_{p}{q}] at n={n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn p_generator_independent_of_valuation() {
        let v1 = JValuation::ones(2);
        let v2 = JValuation::new(vec![JValue::Iota, JValue::Imag]);
        let p1 = u_generator_p(1, 2, &v1).unwrap();
        let p2 = u_generator_p(1, 2, &v2).unwrap();
        // same scalar content, different arity bookkeeping
        assert_eq!(p1.with_arity(2), p2.with_arity(2));
    }

    #[test]
    fn q_generator_contracted_upper_entry_vanishes() {
        let v = JValuation::new(vec![JValue::Iota, JValue::One]);
        let q01 = u_generator_q(0, 1, 2, &v).unwrap();
        assert!(q01[(0, 1)].is_zero()); // carried iota_1^2
        assert!(!q01[(1, 0)].is_zero());
    }

    #[test]
    fn d_matrix_solves_defining_equation() {
        for n_dim in [2usize, 3, 4, 5, 6] {
            let d = symplectic_d_matrix_base(n_dim, 0);
            let c0 = antidiag_identity(n_dim, 0);
            let lhs = d.transpose().mul(&c0).unwrap().mul(&d).unwrap();
            assert_eq!(lhs, PMatrix::identity(n_dim, 0), "N={n_dim}");
        }
    }

    #[test]
    fn d_sigma_all_permutations_n3() {
        let perms: [[usize; 3]; 6] =
            [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];
        let c0 = antidiag_identity(3, 0);
        for sigma in perms {
            let d = symplectic_d_matrix(3, &sigma, 0).unwrap();
            let lhs = d.transpose().mul(&c0).unwrap().mul(&d).unwrap();
            assert_eq!(lhs, PMatrix::identity(3, 0));
            let dinv = symplectic_d_matrix_inv(3, &sigma, 0).unwrap();
            assert_eq!(d.mul(&dinv).unwrap(), PMatrix::identity(3, 0));
        }
    }

    #[test]
    fn galilei_matrix_is_j_orthogonal() {
        let v = JValuation::new(vec![JValue::Iota, JValue::Iota]);
        let a = galilei_a_matrix(
            &Cyclotomic::from_int(3),
            &Cyclotomic::from_ratio(1, 2),
            &Cyclotomic::from_int(-2),
            &v,
        )
        .unwrap();
        assert!(a.is_j_orthogonal().unwrap());
    }

    #[test]
    fn galilei_closure_identity_required() {
        // with a_{31} = 0 and a12 a23 != a13 the matrix is not j-orthogonal
        let v = JValuation::new(vec![JValue::Iota, JValue::Iota]);
        let arity = 2;
        let mut m = galilei_a_matrix(
            &Cyclotomic::from_int(3),
            &Cyclotomic::from_ratio(1, 2),
            &Cyclotomic::from_int(-2),
            &v,
        )
        .unwrap();
        m[(2, 0)] = PimenovElement::zero(arity);
        assert!(!m.is_j_orthogonal().unwrap());
    }

    #[test]
    fn lambda_index_examples_and_bijectivity() {
        assert_eq!(lambda_index(0, 1, 2).unwrap(), 1);
        assert_eq!(lambda_index(1, 2, 2).unwrap(), 3);
        assert!(lambda_index(1, 1, 2).is_err());
        for n in 1..=10usize {
            let mut seen = std::collections::BTreeSet::new();
            for mu in 0..n {
                for nu in mu + 1..=n {
                    let lam = lambda_index(mu, nu, n).unwrap();
                    assert!((1..=n * (n + 1) / 2).contains(&lam));
                    assert!(seen.insert(lam), "collision at ({mu},{nu}) n={n}");
                }
            }
            assert_eq!(seen.len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn general_element_basics() {
        let n = 2;
        let v = JValuation::ones(n);
        let zeros = vec![Cyclotomic::zero(); 3];
        let wzero = vec![Cyclotomic::zero(); 2];
        let z = general_element(&zeros, &zeros, &wzero, n, &v).unwrap();
        assert!(z.is_zero());
        let mut r = zeros.clone();
        r[0] = Cyclotomic::one();
        let z = general_element(&r, &zeros, &wzero, n, &v).unwrap();
        assert_eq!(z, u_generator_q(0, 1, n, &v).unwrap());
        // traceless for the special-unitary family
        let r = vec![Cyclotomic::from_int(2), Cyclotomic::i(), Cyclotomic::from_int(-1)];
        let s = vec![Cyclotomic::from_int(1); 3];
        let w = vec![Cyclotomic::from_int(4), Cyclotomic::from_int(-7)];
        let z = general_element(&r, &s, &w, n, &v).unwrap();
        assert!(z.trace().unwrap().is_zero());
    }

    #[test]
    fn exp_of_contracted_so3_element_is_orthogonal() {
        // maximal contraction: the Cartesian-basis algebra element
        // Z_{kp} = (k,p) z_{kp} with z antisymmetric is nilpotent, and its
        // exponential must satisfy the j-orthogonality relations.
        let v = JValuation::new(vec![JValue::Iota, JValue::Iota]);
        let z_bare = [[0i64, 3, -1], [-3, 0, 2], [1, -2, 0]];
        let mut z = PMatrix::zero(3, 3, 2);
        for r in 0..3 {
            for c in 0..3 {
                let w = interval_product(r + 1, c + 1, &v).unwrap();
                z[(r, c)] = w.scale(&Cyclotomic::from_int(z_bare[r][c]));
            }
        }
        let g = z.exp_nilpotent().unwrap();
        assert!(g.is_j_orthogonal().unwrap());
    }

    #[test]
    fn quadratic_form_galilean_split() {
        // j2 = iota_2, n = 4: fiber index list [2]
        let v = JValuation::new(vec![
            JValue::One,
            JValue::Iota,
            JValue::One,
            JValue::One,
        ]);
        assert_eq!(fiber_structure(&v), vec![2]);
        let z: Vec<PimenovElement> = (0..5)
            .map(|k| PimenovElement::scalar(4, Cyclotomic::from_int(k as i64 + 1)))
            .collect();
        let q = ck_quadratic_form(&z, &v).unwrap();
        // weights: 1, j1^2 = 1, then iota_2^2 = 0 for k >= 2
        assert_eq!(q, PimenovElement::scalar(4, Cyclotomic::from_int(1 + 4)));
    }

    #[test]
    fn chevalley_basis_has_expected_h1_pattern() {
        let v = JValuation::ones(2);
        let set = sp_chevalley_basis(2, &v).unwrap();
        let h1 = &set.generators.iter().find(|(l, _)| l == "H_1").unwrap().1;
        // e_11 - e_44 - e_22 + e_33 in 1-based labels (prime(1) = 4, prime(2) = 3)
        assert!(h1[(0, 0)].is_one());
        assert_eq!(h1[(3, 3)], PimenovElement::one(2).neg());
        assert_eq!(h1[(1, 1)], PimenovElement::one(2).neg());
        assert!(h1[(2, 2)].is_one());
    }
}
