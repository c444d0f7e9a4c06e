//! Pimenov algebra D_n(iota; C): commutative nilpotent generators iota_k with
//! iota_k^2 = 0 and iota_k iota_m = iota_m iota_k != 0, over Q(i, sqrt2).
//!
//! Also hosts the j-parameter machinery: valuations j_k in {1, i, iota_k},
//! formal j-monomials with non-negative exponents, and the interval products
//! (mu, nu) used by the orthogonal family.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{CkError, Result};
use crate::scalar::{Cyclotomic, Rational};

/// Product iota_{k1}...iota_{kp} with strictly increasing 1-based indices.
/// The empty product is the algebra unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct IotaMonomial(Vec<u16>);

impl IotaMonomial {
    pub fn unit() -> Self {
        IotaMonomial(Vec::new())
    }

    pub fn single(k: u16) -> Self {
        IotaMonomial(vec![k])
    }

    pub fn from_indices(mut idx: Vec<u16>) -> Result<Self> {
        idx.sort_unstable();
        for w in idx.windows(2) {
            if w[0] == w[1] {
                return Err(CkError::Parse("repeated iota index".into()));
            }
        }
        Ok(IotaMonomial(idx))
    }

    pub fn indices(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Merge two monomials; `None` encodes the product vanishing by iota^2 = 0.
    pub fn mul(&self, other: &IotaMonomial) -> Option<IotaMonomial> {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Some(IotaMonomial(out))
    }
}

impl fmt::Display for IotaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for k in &self.0 {
            write!(f, "I{k}")?;
        }
        Ok(())
    }
}

/// Element of D_n(iota; Q(i,sqrt2)): a finite sum of iota-monomials with
/// nonzero coefficients. Two elements are equal iff all coefficients agree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PimenovElement {
    arity: usize,
    terms: BTreeMap<IotaMonomial, Cyclotomic>,
}

impl PimenovElement {
    pub fn zero(arity: usize) -> Self {
        PimenovElement { arity, terms: BTreeMap::new() }
    }

    pub fn scalar(arity: usize, c: Cyclotomic) -> Self {
        let mut e = Self::zero(arity);
        if !c.is_zero() {
            e.terms.insert(IotaMonomial::unit(), c);
        }
        e
    }

    pub fn one(arity: usize) -> Self {
        Self::scalar(arity, Cyclotomic::one())
    }

    pub fn iota(arity: usize, k: u16) -> Result<Self> {
        if k == 0 || k as usize > arity {
            return Err(CkError::IndexOutOfRange(format!("iota_{k} with arity {arity}")));
        }
        let mut e = Self::zero(arity);
        e.terms.insert(IotaMonomial::single(k), Cyclotomic::one());
        Ok(e)
    }

    pub fn from_terms(arity: usize, terms: Vec<(IotaMonomial, Cyclotomic)>) -> Self {
        let mut e = Self::zero(arity);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IotaMonomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&IotaMonomial::unit()).is_some_and(|c| c.is_one())
    }

    pub fn coefficient(&self, m: &IotaMonomial) -> Cyclotomic {
        self.terms.get(m).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    /// Coefficient of the unit monomial.
    pub fn unit_part(&self) -> Cyclotomic {
        self.coefficient(&IotaMonomial::unit())
    }

    /// The element minus its unit part; always nilpotent.
    pub fn nilpotent_part(&self) -> PimenovElement {
        let mut e = self.clone();
        e.terms.remove(&IotaMonomial::unit());
        e
    }

    fn add_term(&mut self, m: IotaMonomial, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_arity(&self, other: &PimenovElement) -> Result<()> {
        if self.arity != other.arity {
            return Err(CkError::ArityMismatch(self.arity, other.arity));
        }
        Ok(())
    }

    pub fn add(&self, other: &PimenovElement) -> Result<PimenovElement> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PimenovElement) -> Result<PimenovElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PimenovElement {
        PimenovElement {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &PimenovElement) -> Result<PimenovElement> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.arity);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(m) = m1.mul(m2) {
                    out.add_term(m, c1 * c2);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Cyclotomic) -> PimenovElement {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        PimenovElement {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rational) -> PimenovElement {
        self.scale(&Cyclotomic::from_rational(r.clone()))
    }

    /// Exact inverse by a finite Neumann series. The nilpotent part N of
    /// x/d0 satisfies N^(arity+1) = 0, so the series terminates.
    pub fn inv(&self) -> Result<PimenovElement> {
        let d0 = self.unit_part();
        if d0.is_zero() {
            return Err(CkError::NotInvertible);
        }
        let d0_inv = d0.inv()?;
        let n = self.nilpotent_part().scale(&d0_inv); // x/d0 = 1 + n
        let mut acc = Self::one(self.arity);
        let mut pw = Self::one(self.arity);
        for k in 1..=self.arity {
            pw = pw.mul(&n)?.neg(); // (-n)^k
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw)?;
            let _ = k;
        }
        Ok(acc.scale(&d0_inv))
    }

    pub fn conj(&self) -> PimenovElement {
        PimenovElement {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Result<PimenovElement> {
        let mut acc = Self::one(self.arity);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Parse the grammar rendered by `Display`, e.g. "1 + (1+i)*I1 - 2*I1I2".
    pub fn parse(arity: usize, input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(CkError::Parse("empty pimenov element".into()));
        }
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let mut out = Self::zero(arity);
        let mut first = true;
        while pos < bytes.len() {
            let mut sign = 1i64;
            match bytes[pos] {
                b'+' => pos += 1,
                b'-' => {
                    sign = -1;
                    pos += 1;
                }
                _ if first => {}
                _ => return Err(CkError::Parse(format!("expected sign at {pos} in {input:?}"))),
            }
            first = false;
            // coefficient: parenthesised cyclotomic, or bare rational, or implicit 1
            let mut coeff = Cyclotomic::one();
            if pos < bytes.len() && bytes[pos] == b'(' {
                let close = s[pos..]
                    .find(')')
                    .ok_or_else(|| CkError::Parse("unbalanced paren".into()))?
                    + pos;
                coeff = Cyclotomic::parse(&s[pos + 1..close])?;
                pos = close + 1;
                if pos < bytes.len() && bytes[pos] == b'*' {
                    pos += 1;
                }
            } else {
                let start = pos;
                while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
                    pos += 1;
                }
                if pos > start {
                    coeff = Cyclotomic::from_rational(crate::scalar::parse_rational(&s[start..pos])?);
                    if pos < bytes.len() && bytes[pos] == b'*' {
                        pos += 1;
                    }
                }
            }
            // monomial: sequence of I<k>
            let mut idx = Vec::new();
            while pos < bytes.len() && bytes[pos] == b'I' {
                pos += 1;
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(CkError::Parse("missing iota index".into()));
                }
                let k: u16 = s[start..pos]
                    .parse()
                    .map_err(|_| CkError::Parse("bad iota index".into()))?;
                idx.push(k);
            }
            if sign < 0 {
                coeff = -coeff;
            }
            out.add_term(IotaMonomial::from_indices(idx)?, coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for PimenovElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let body = if m.is_unit() {
                format!("({c})")
            } else if c.is_one() {
                format!("{m}")
            } else {
                format!("({c})*{m}")
            };
            if first {
                write!(f, "{body}")?;
                first = false;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for PimenovElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Value taken by one Cayley-Klein parameter.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum JValue {
    One,
    Imag,
    Iota,
}

/// Assignment of every parameter j_1..j_n to 1, i or iota_k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JValuation {
    values: Vec<JValue>,
}

impl JValuation {
    pub fn new(values: Vec<JValue>) -> Self {
        JValuation { values }
    }

    pub fn ones(n: usize) -> Self {
        JValuation { values: vec![JValue::One; n] }
    }

    /// Parse the CLI syntax "1,iota,1,i" (positional by index).
    pub fn parse(s: &str) -> Result<Self> {
        let mut values = Vec::new();
        for tok in s.split(',') {
            match tok.trim() {
                "1" => values.push(JValue::One),
                "i" => values.push(JValue::Imag),
                "iota" | "I" => values.push(JValue::Iota),
                other => return Err(CkError::Parse(format!("bad j value {other:?}"))),
            }
        }
        Ok(JValuation { values })
    }

    pub fn render(&self) -> String {
        self.values
            .iter()
            .map(|v| match v {
                JValue::One => "1",
                JValue::Imag => "i",
                JValue::Iota => "iota",
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn arity(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, k: usize) -> Result<JValue> {
        if k == 0 || k > self.values.len() {
            return Err(CkError::IndexOutOfRange(format!("j_{k} with {} parameters", self.values.len())));
        }
        Ok(self.values[k - 1])
    }

    /// j_k as an element of the Pimenov algebra (1-based index).
    pub fn eval(&self, k: usize) -> Result<PimenovElement> {
        let n = self.arity();
        Ok(match self.value(k)? {
            JValue::One => PimenovElement::one(n),
            JValue::Imag => PimenovElement::scalar(n, Cyclotomic::i()),
            JValue::Iota => PimenovElement::iota(n, k as u16)?,
        })
    }

    /// j_k^e; an iota value with e >= 2 collapses to zero.
    pub fn eval_pow(&self, k: usize, e: u32) -> Result<PimenovElement> {
        let n = self.arity();
        if e == 0 {
            return Ok(PimenovElement::one(n));
        }
        Ok(match self.value(k)? {
            JValue::One => PimenovElement::one(n),
            JValue::Imag => {
                let c = Cyclotomic::i().pow(e);
                PimenovElement::scalar(n, c)
            }
            JValue::Iota => {
                if e >= 2 {
                    PimenovElement::zero(n)
                } else {
                    PimenovElement::iota(n, k as u16)?
                }
            }
        })
    }

    /// Product of j_l^2 over l in [lo, hi]; the usual contraction coefficient.
    pub fn jprod2(&self, lo: usize, hi: usize) -> Result<PimenovElement> {
        let mut acc = PimenovElement::one(self.arity());
        if lo > hi {
            return Ok(acc);
        }
        for l in lo..=hi {
            acc = acc.mul(&self.eval_pow(l, 2)?)?;
        }
        Ok(acc)
    }

    /// Product of j_l (first power) over l in [lo, hi].
    pub fn jprod(&self, lo: usize, hi: usize) -> Result<PimenovElement> {
        let mut acc = PimenovElement::one(self.arity());
        if lo > hi {
            return Ok(acc);
        }
        for l in lo..=hi {
            acc = acc.mul(&self.eval(l)?)?;
        }
        Ok(acc)
    }

    /// Indices carrying a nilpotent value, sorted.
    pub fn nilpotent_indices(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| (*v == JValue::Iota).then_some(i + 1))
            .collect()
    }

    pub fn values(&self) -> &[JValue] {
        &self.values
    }
}

/// Formal product prod_k j_k^{e_k} with non-negative exponents. Evaluated
/// late against a valuation; formal division is deliberately unrepresentable.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct JMonomial {
    exps: BTreeMap<usize, u32>,
}

impl JMonomial {
    pub fn one() -> Self {
        JMonomial::default()
    }

    pub fn from_pairs(pairs: &[(usize, u32)]) -> Self {
        let mut m = JMonomial::default();
        for &(k, e) in pairs {
            if e > 0 {
                *m.exps.entry(k).or_insert(0) += e;
            }
        }
        m
    }

    /// prod_{l=lo}^{hi} j_l^2 (empty when lo > hi)
    pub fn square_range(lo: usize, hi: usize) -> Self {
        let mut m = JMonomial::default();
        if lo <= hi {
            for l in lo..=hi {
                m.exps.insert(l, 2);
            }
        }
        m
    }

    pub fn mul(&self, other: &JMonomial) -> JMonomial {
        let mut out = self.clone();
        for (&k, &e) in &other.exps {
            *out.exps.entry(k).or_insert(0) += e;
        }
        out
    }

    pub fn exponents(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|(&k, &e)| (k, e))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn eval(&self, v: &JValuation) -> Result<PimenovElement> {
        let mut acc = PimenovElement::one(v.arity());
        for (&k, &e) in &self.exps {
            acc = acc.mul(&v.eval_pow(k, e)?)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for JMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&k, &e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "j{k}")?;
            } else {
                write!(f, "j{k}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Interval product (mu, nu) = prod_{l=min}^{max-1} j_l with (mu, mu) = 1.
pub fn interval_product(mu: usize, nu: usize, v: &JValuation) -> Result<PimenovElement> {
    if mu == 0 || nu == 0 {
        return Err(CkError::IndexOutOfRange("interval product indices are 1-based".into()));
    }
    let (lo, hi) = (mu.min(nu), mu.max(nu));
    if lo == hi {
        return Ok(PimenovElement::one(v.arity()));
    }
    v.jprod(lo, hi - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;
    use proptest::prelude::*;

    fn i1(arity: usize) -> PimenovElement {
        PimenovElement::iota(arity, 1).unwrap()
    }

    fn i2(arity: usize) -> PimenovElement {
        PimenovElement::iota(arity, 2).unwrap()
    }

    #[test]
    fn iota_squares_to_zero() {
        let x = i1(2);
        assert!(x.mul(&x).unwrap().is_zero());
    }

    #[test]
    fn distinct_iotas_multiply_nonzero() {
        let p = i1(2).mul(&i2(2)).unwrap();
        assert!(!p.is_zero());
        assert_eq!(p.coefficient(&IotaMonomial::from_indices(vec![1, 2]).unwrap()), Cyclotomic::one());
    }

    #[test]
    fn binomial_with_nilpotent() {
        let x = PimenovElement::one(1).add(&i1(1)).unwrap();
        let sq = x.mul(&x).unwrap();
        let expected = PimenovElement::from_terms(
            1,
            vec![
                (IotaMonomial::unit(), Cyclotomic::one()),
                (IotaMonomial::single(1), Cyclotomic::from_int(2)),
            ],
        );
        assert_eq!(sq, expected);
    }

    #[test]
    fn inv_one_plus_iota() {
        let x = PimenovElement::one(1).add(&i1(1)).unwrap();
        let inv = x.inv().unwrap();
        let expected = PimenovElement::one(1).sub(&i1(1)).unwrap();
        assert_eq!(inv, expected);
        assert!(x.mul(&inv).unwrap().is_one());
    }

    #[test]
    fn inv_scalar_two() {
        let two = PimenovElement::scalar(1, Cyclotomic::from_int(2));
        assert_eq!(two.inv().unwrap(), PimenovElement::scalar(1, Cyclotomic::from_ratio(1, 2)));
    }

    #[test]
    fn inv_of_pure_iota_fails() {
        assert_eq!(i1(1).inv(), Err(CkError::NotInvertible));
    }

    #[test]
    fn conj_examples() {
        let x = i1(1).scale(&Cyclotomic::i());
        assert_eq!(x.conj(), i1(1).scale(&-Cyclotomic::i()));
        let y = PimenovElement::one(2)
            .add(&i1(2).mul(&i2(2)).unwrap())
            .unwrap();
        assert_eq!(y.conj(), y);
    }

    #[test]
    fn jmono_eval_examples() {
        // j2^2 j4^2 with j2 = iota_2 -> 0
        let v = JValuation::new(vec![JValue::One, JValue::Iota, JValue::One, JValue::One]);
        let m = JMonomial::from_pairs(&[(2, 2), (4, 2)]);
        assert!(m.eval(&v).unwrap().is_zero());
        // j1^2 with j1 = i -> -1
        let v = JValuation::new(vec![JValue::Imag]);
        let m = JMonomial::from_pairs(&[(1, 2)]);
        assert_eq!(m.eval(&v).unwrap(), PimenovElement::scalar(1, Cyclotomic::from_int(-1)));
        // empty monomial -> 1
        assert!(JMonomial::one().eval(&v).unwrap().is_one());
    }

    #[test]
    fn interval_product_examples() {
        let all_ones = JValuation::ones(3);
        assert!(interval_product(1, 3, &all_ones).unwrap().is_one());
        let v = JValuation::new(vec![JValue::Iota, JValue::Iota, JValue::One]);
        let p = interval_product(1, 3, &v).unwrap();
        assert_eq!(p, i1(3).mul(&i2(3)).unwrap());
        assert!(interval_product(2, 2, &v).unwrap().is_one());
    }

    #[test]
    fn interval_product_symmetric() {
        let v = JValuation::new(vec![JValue::Iota, JValue::One, JValue::Iota, JValue::One]);
        for mu in 1..=5 {
            for nu in 1..=5 {
                assert_eq!(
                    interval_product(mu, nu, &v).unwrap(),
                    interval_product(nu, mu, &v).unwrap()
                );
            }
        }
    }

    #[test]
    fn nilpotency_of_augmentation_ideal() {
        // any element with zero unit part in D_n satisfies x^(n+1) = 0
        let n = 3;
        let x = i1(n)
            .add(&i2(n).scale(&Cyclotomic::from_int(5))).unwrap()
            .add(&PimenovElement::iota(n, 3).unwrap().scale(&Cyclotomic::i())).unwrap()
            .add(&i1(n).mul(&i2(n)).unwrap().scale(&Cyclotomic::from_ratio(2, 7))).unwrap();
        assert!(x.pow(n as u32 + 1).unwrap().is_zero());
    }

    #[test]
    fn parse_display_roundtrip() {
        let x = PimenovElement::from_terms(
            3,
            vec![
                (IotaMonomial::unit(), Cyclotomic::new(rat_int(1), rat_int(-1), rat_int(0), rat_int(0))),
                (IotaMonomial::single(2), Cyclotomic::from_ratio(3, 4)),
                (IotaMonomial::from_indices(vec![1, 3]).unwrap(), -Cyclotomic::i()),
            ],
        );
        let s = x.to_string();
        assert_eq!(PimenovElement::parse(3, &s).unwrap(), x);
    }

    fn arb_pim(arity: usize) -> impl Strategy<Value = PimenovElement> {
        let monos: Vec<IotaMonomial> = {
            let mut v = vec![IotaMonomial::unit()];
            for mask in 1u32..(1 << arity) {
                let idx: Vec<u16> =
                    (0..arity as u16).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
                v.push(IotaMonomial::from_indices(idx).unwrap());
            }
            v
        };
        proptest::collection::vec(-4i64..=4, monos.len()).prop_map(move |coeffs| {
            PimenovElement::from_terms(
                arity,
                monos
                    .iter()
                    .cloned()
                    .zip(coeffs.into_iter().map(Cyclotomic::from_int))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn mul_commutative_associative(x in arb_pim(3), y in arb_pim(3), z in arb_pim(3)) {
            prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
            prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        }

        #[test]
        fn inverse_roundtrip(x in arb_pim(3)) {
            if !x.unit_part().is_zero() {
                prop_assert!(x.mul(&x.inv().unwrap()).unwrap().is_one());
            }
        }

        #[test]
        fn jmono_eval_multiplicative(e1 in proptest::collection::vec(0u32..3, 3),
                                     e2 in proptest::collection::vec(0u32..3, 3)) {
            let v = JValuation::new(vec![JValue::Iota, JValue::Imag, JValue::One]);
            let m1 = JMonomial::from_pairs(&[(1, e1[0]), (2, e1[1]), (3, e1[2])]);
            let m2 = JMonomial::from_pairs(&[(1, e2[0]), (2, e2[1]), (3, e2[2])]);
            let lhs = m1.mul(&m2).eval(&v).unwrap();
            let rhs = m1.eval(&v).unwrap().mul(&m2.eval(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
