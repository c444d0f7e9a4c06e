//! Exact ground field Q(i, sqrt(2)).
//!
//! Elements are stored on the fixed basis {1, i, sqrt2, i*sqrt2} with
//! arbitrary-precision rational coordinates, so equality is componentwise and
//! every field operation is exact.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CkError, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from(BigInt::from(n))
}

/// Element a + b*i + c*sqrt2 + d*i*sqrt2 of Q(i, sqrt2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Cyclotomic {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Cyclotomic { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn i() -> Self {
        Cyclotomic::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    pub fn sqrt2() -> Self {
        Cyclotomic::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    pub fn from_rational(a: Rational) -> Self {
        Cyclotomic { a, b: Rational::zero(), c: Rational::zero(), d: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// True when the element lies in Q (no i or sqrt2 component).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// Complex conjugation: negates the coefficients of i and i*sqrt2.
    pub fn conj(&self) -> Self {
        Cyclotomic::new(self.a.clone(), -self.b.clone(), self.c.clone(), -self.d.clone())
    }

    /// Galois conjugate sending sqrt2 to -sqrt2.
    pub fn conj_sqrt2(&self) -> Self {
        Cyclotomic::new(self.a.clone(), self.b.clone(), -self.c.clone(), -self.d.clone())
    }

    /// Exact multiplicative inverse.
    ///
    /// x * conj(x) lies in Q(sqrt2); a further sqrt2-conjugation lands in Q,
    /// which reduces inversion to one rational division.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(CkError::DivisionByZero);
        }
        let n1 = self.clone() * self.conj(); // in Q(sqrt2), real and positive
        let n2 = n1.clone() * n1.conj_sqrt2(); // in Q
        debug_assert!(n2.is_rational() && !n2.a.is_zero());
        let scale = n2.a.recip();
        let mut out = self.conj() * n1.conj_sqrt2();
        out.a *= &scale;
        out.b *= &scale;
        out.c *= &scale;
        out.d *= &scale;
        Ok(out)
    }

    pub fn div(&self, rhs: &Cyclotomic) -> Result<Self> {
        Ok(self.clone() * rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic::new(&self.a * r, &self.b * r, &self.c * r, &self.d * r)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Cyclotomic::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Parse the grammar rendered by `Display`: signed sum of terms
    /// `p/q`, `p/q*i`, `p/q*s2`, `p/q*i*s2`, `i`, `s2`, `i*s2`.
    pub fn parse(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(CkError::Parse("empty scalar".into()));
        }
        let mut out = Cyclotomic::zero();
        let bytes = s.as_bytes();
        let mut pos = 0usize;
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
                _ => return Err(CkError::Parse(format!("expected sign at byte {pos} in {input:?}"))),
            }
            first = false;
            let start = pos;
            while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                pos += 1;
            }
            let term = &s[start..pos];
            if term.is_empty() {
                return Err(CkError::Parse(format!("empty term in {input:?}")));
            }
            let (coeff, unit) = split_term(term)?;
            let coeff = coeff * Rational::from(BigInt::from(sign));
            match unit {
                Unit::One => out.a += coeff,
                Unit::I => out.b += coeff,
                Unit::S2 => out.c += coeff,
                Unit::IS2 => out.d += coeff,
            }
        }
        Ok(out)
    }
}

enum Unit {
    One,
    I,
    S2,
    IS2,
}

fn split_term(term: &str) -> Result<(Rational, Unit)> {
    let (num_part, unit) = if let Some(rest) = term.strip_suffix("i*s2") {
        (rest.strip_suffix('*').unwrap_or(rest), Unit::IS2)
    } else if let Some(rest) = term.strip_suffix("s2") {
        (rest.strip_suffix('*').unwrap_or(rest), Unit::S2)
    } else if let Some(rest) = term.strip_suffix('i') {
        (rest.strip_suffix('*').unwrap_or(rest), Unit::I)
    } else {
        (term, Unit::One)
    };
    if num_part.is_empty() {
        return Ok((Rational::one(), unit));
    }
    let r = parse_rational(num_part)?;
    Ok((r, unit))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let mk = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>().map_err(|_| CkError::Parse(format!("bad integer {t:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = mk(d)?;
            if den.is_zero() {
                return Err(CkError::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(mk(n)?, den))
        }
        None => Ok(BigRational::from(mk(s)?)),
    }
}

pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut push = |r: &Rational, unit: &str| {
            if r.is_zero() {
                return;
            }
            let mag = r.abs();
            let body = if unit.is_empty() {
                render_rational(&mag)
            } else if mag.is_one() {
                unit.to_string()
            } else {
                format!("{}*{}", render_rational(&mag), unit)
            };
            if r.is_negative() {
                if parts.is_empty() {
                    parts.push(format!("-{body}"));
                } else {
                    parts.push(format!("- {body}"));
                }
            } else if parts.is_empty() {
                parts.push(body);
            } else {
                parts.push(format!("+ {body}"));
            }
        };
        push(&self.a, "");
        push(&self.b, "i");
        push(&self.c, "s2");
        push(&self.d, "i*s2");
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        Cyclotomic::new(self.a + rhs.a, self.b + rhs.b, self.c + rhs.c, self.d + rhs.d)
    }
}

impl AddAssign for Cyclotomic {
    fn add_assign(&mut self, rhs: Cyclotomic) {
        self.a += rhs.a;
        self.b += rhs.b;
        self.c += rhs.c;
        self.d += rhs.d;
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        Cyclotomic::new(self.a - rhs.a, self.b - rhs.b, self.c - rhs.c, self.d - rhs.d)
    }
}

impl SubAssign for Cyclotomic {
    fn sub_assign(&mut self, rhs: Cyclotomic) {
        self.a -= rhs.a;
        self.b -= rhs.b;
        self.c -= rhs.c;
        self.d -= rhs.d;
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::new(&self.a + &rhs.a, &self.b + &rhs.b, &self.c + &rhs.c, &self.d + &rhs.d)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::new(&self.a - &rhs.a, &self.b - &rhs.b, &self.c - &rhs.c, &self.d - &rhs.d)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::new(-self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        // i^2 = -1, sqrt2^2 = 2, (i*sqrt2)^2 = -2
        let two = rat_int(2);
        let a = &self.a * &rhs.a - &self.b * &rhs.b + (&self.c * &rhs.c - &self.d * &rhs.d) * &two;
        let b = &self.a * &rhs.b + &self.b * &rhs.a + (&self.c * &rhs.d + &self.d * &rhs.c) * &two;
        let c = &self.a * &rhs.c + &self.c * &rhs.a - &self.b * &rhs.d - &self.d * &rhs.b;
        let d = &self.a * &rhs.d + &self.d * &rhs.a + &self.b * &rhs.c + &self.c * &rhs.b;
        Cyclotomic::new(a, b, c, d)
    }
}

impl MulAssign for Cyclotomic {
    fn mul_assign(&mut self, rhs: Cyclotomic) {
        *self = &*self * &rhs;
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Cyclotomic::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(a: i64, b: i64, cc: i64, d: i64) -> Cyclotomic {
        Cyclotomic::new(rat_int(a), rat_int(b), rat_int(cc), rat_int(d))
    }

    #[test]
    fn one_plus_i_times_one_minus_i() {
        assert_eq!(c(1, 1, 0, 0) * c(1, -1, 0, 0), c(2, 0, 0, 0));
    }

    #[test]
    fn half_sqrt2_squared() {
        let h = Cyclotomic::new(rat_int(0), rat_int(0), rat(1, 2), rat_int(0));
        assert_eq!(h.clone() * h, Cyclotomic::from_rational(rat(1, 2)));
    }

    #[test]
    fn additive_identity() {
        let x = c(3, -2, 5, 7);
        assert_eq!(Cyclotomic::zero() + x.clone(), x);
    }

    #[test]
    fn inv_of_i() {
        assert_eq!(Cyclotomic::i().inv().unwrap(), c(0, -1, 0, 0));
    }

    #[test]
    fn inv_of_sqrt2() {
        let expected = Cyclotomic::new(rat_int(0), rat_int(0), rat(1, 2), rat_int(0));
        assert_eq!(Cyclotomic::sqrt2().inv().unwrap(), expected);
    }

    /// Independent oracle: solve (1+sqrt2)x = 1 as a 4x4 rational linear
    /// system over the basis {1, i, sqrt2, i*sqrt2} by direct elimination.
    fn inv_by_linear_system(x: &Cyclotomic) -> Cyclotomic {
        // Multiplication by x sends basis vector e_k to the column below.
        let cols = [
            x.clone(),
            &Cyclotomic::i() * x,
            &Cyclotomic::sqrt2() * x,
            &(&Cyclotomic::i() * &Cyclotomic::sqrt2()) * x,
        ];
        let mut m: Vec<Vec<Rational>> = Vec::new();
        for r in 0..4 {
            let mut row = Vec::with_capacity(5);
            for col in cols.iter() {
                let v = [&col.a, &col.b, &col.c, &col.d][r].clone();
                row.push(v);
            }
            row.push(if r == 0 { Rational::one() } else { Rational::zero() });
            m.push(row);
        }
        // Gauss-Jordan on the 4x5 augmented system.
        for p in 0..4 {
            let piv = (p..4).find(|&r| !m[r][p].is_zero()).expect("singular");
            m.swap(p, piv);
            let inv = m[p][p].recip();
            for j in 0..5 {
                m[p][j] = &m[p][j] * &inv;
            }
            for r in 0..4 {
                if r != p && !m[r][p].is_zero() {
                    let f = m[r][p].clone();
                    for j in 0..5 {
                        m[r][j] = &m[r][j] - &(&f * &m[p][j]);
                    }
                }
            }
        }
        Cyclotomic::new(m[0][4].clone(), m[1][4].clone(), m[2][4].clone(), m[3][4].clone())
    }

    #[test]
    fn inv_of_one_plus_sqrt2() {
        let x = c(1, 0, 1, 0);
        let oracle = inv_by_linear_system(&x);
        assert_eq!(oracle, c(-1, 0, 1, 0), "oracle pins the frozen value -1 + sqrt2");
        assert_eq!(x.inv().unwrap(), oracle);
    }

    #[test]
    fn inv_of_zero_errors() {
        assert_eq!(Cyclotomic::zero().inv(), Err(CkError::DivisionByZero));
    }

    #[test]
    fn conj_basics() {
        assert_eq!(Cyclotomic::i().conj(), c(0, -1, 0, 0));
        let x = c(1, 2, 3, 4);
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn display_and_parse_roundtrip_samples() {
        for x in [
            c(0, 0, 0, 0),
            c(1, 0, 0, 0),
            c(-1, 2, 0, -3),
            Cyclotomic::new(rat(1, 2), rat(-3, 4), rat_int(0), rat(7, 5)),
        ] {
            let s = x.to_string();
            assert_eq!(Cyclotomic::parse(&s).unwrap(), x, "roundtrip of {s}");
        }
        assert_eq!(Cyclotomic::parse("1/2 + i - 3*s2").unwrap(),
                   Cyclotomic::new(rat(1, 2), rat_int(1), rat_int(-3), rat_int(0)));
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_cyc() -> impl Strategy<Value = Cyclotomic> {
        (arb_rat(), arb_rat(), arb_rat(), arb_rat()).prop_map(|(a, b, c, d)| Cyclotomic::new(a, b, c, d))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_cyc(), y in arb_cyc(), z in arb_cyc()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(y.clone() + z.clone()), (&x * &y) + (&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
        }

        #[test]
        fn inverse_multiplies_to_one(x in arb_cyc()) {
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), Cyclotomic::one());
            }
        }

        #[test]
        fn conj_is_ring_automorphism(x in arb_cyc(), y in arb_cyc()) {
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            prop_assert_eq!((x.clone() + y.clone()).conj(), x.conj() + y.conj());
        }

        #[test]
        fn parse_roundtrip(x in arb_cyc()) {
            prop_assert_eq!(Cyclotomic::parse(&x.to_string()).unwrap(), x);
        }
    }
}
