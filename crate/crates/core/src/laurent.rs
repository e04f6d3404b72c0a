//! Exact arithmetic in `Z[A^-1, A]`, its reduced quotients `Z[A^-1, A] / (A^-n - A^n)`,
//! and Jones polynomials written in `s = t^(1/2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, SkeinError};

/// A Laurent polynomial in one variable with arbitrary-precision integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is ring equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// The variable `A`.
    pub fn a() -> Self {
        Self::monomial(1, 1)
    }

    /// `A^k`.
    pub fn a_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    /// The trivial loop value `-A^2 - A^-2`.
    pub fn delta() -> Self {
        Self::from_pairs([(2, -1), (-2, -1)])
    }

    /// `(-A)^k`, a single term `(-1)^k A^k`.
    pub fn unit_power(k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(sign, k)
    }

    pub fn from_pairs<C: Into<BigInt>>(pairs: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Apply `f` to every exponent, merging coefficients that collide.
    pub fn map_exponents(&self, f: impl Fn(i64) -> i64) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(f(*e), c.clone());
        }
        out
    }

    /// Exact division in the Laurent ring. `divisor` must have a unit leading coefficient;
    /// returns `None` when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let (dmax, dlead) = divisor.terms.iter().next_back()?;
        if !(dlead.is_one() || (-dlead).is_one()) {
            return None;
        }
        let dmin = divisor.min_exp()?;
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let floor = self.min_exp().unwrap_or(0);
        while let Some(top) = rem.max_exp() {
            if top - dmax < floor - dmin {
                return None;
            }
            let c = rem.coeff(top) * dlead;
            let step = LaurentPoly::monomial(c, top - dmax);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str, exp_fmt: impl Fn(i64) -> Option<String>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match exp_fmt(*e) {
                None => write!(f, "{abs}")?,
                Some(pow) => {
                    if !abs.is_one() {
                        write!(f, "{abs}")?;
                    }
                    write!(f, "{var}{pow}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    /// Decreasing exponent order, e.g. `-A^4 + 2 - A^-4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "A", |e| match e {
            0 => None,
            1 => Some(String::new()),
            e => Some(format!("^{e}")),
        })
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

/// Serialized as `[[exp, coeff], ...]` in increasing exponent order. Coefficients that fit
/// in an `i64` are JSON numbers, larger ones are decimal strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, serde_json::Value)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let v = match c.to_i64() {
                    Some(x) => serde_json::Value::from(x),
                    None => serde_json::Value::from(c.to_string()),
                };
                (*e, v)
            })
            .collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(i64, serde_json::Value)> = Vec::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, v) in pairs {
            let c: BigInt = match &v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom(format!("non-integral coefficient {n}")))?,
                serde_json::Value::String(s) => s.parse().map_err(D::Error::custom)?,
                other => return Err(D::Error::custom(format!("bad coefficient {other}"))),
            };
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// An element of `R_n = Z[A^-1, A] / (A^-n - A^n)`.
///
/// Since `A` is a unit the ideal equals `(A^2n - 1)`, so for `n > 0` exponents are kept as
/// residues in `0..2n`. For `n = 0` nothing is reduced.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ReducedScalar {
    modulus: u64,
    poly: LaurentPoly,
}

impl ReducedScalar {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn one(n: u64) -> Self {
        reduce_mod(&LaurentPoly::one(), n)
    }

    /// Ring map `R_n -> R_m`, defined when `m | n` (every `m` divides 0).
    pub fn project(&self, m: u64) -> Result<Self> {
        if !divides(m, self.modulus) {
            return Err(SkeinError::NotADivisor { n: self.modulus, m });
        }
        Ok(reduce_mod(&self.poly, m))
    }
}

impl fmt::Display for ReducedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "{}", self.poly)
        } else {
            write!(f, "{} (mod A^{} - 1)", self.poly, 2 * self.modulus)
        }
    }
}

impl<'a> Add<&'a ReducedScalar> for &'a ReducedScalar {
    type Output = ReducedScalar;
    fn add(self, rhs: &ReducedScalar) -> ReducedScalar {
        assert_eq!(self.modulus, rhs.modulus, "reduced scalars live in different rings");
        reduce_mod(&(&self.poly + &rhs.poly), self.modulus)
    }
}

impl<'a> Sub<&'a ReducedScalar> for &'a ReducedScalar {
    type Output = ReducedScalar;
    fn sub(self, rhs: &ReducedScalar) -> ReducedScalar {
        assert_eq!(self.modulus, rhs.modulus, "reduced scalars live in different rings");
        reduce_mod(&(&self.poly - &rhs.poly), self.modulus)
    }
}

impl<'a> Mul<&'a ReducedScalar> for &'a ReducedScalar {
    type Output = ReducedScalar;
    fn mul(self, rhs: &ReducedScalar) -> ReducedScalar {
        assert_eq!(self.modulus, rhs.modulus, "reduced scalars live in different rings");
        reduce_mod(&(&self.poly * &rhs.poly), self.modulus)
    }
}

/// `m | n` with the convention that everything divides 0.
pub fn divides(m: u64, n: u64) -> bool {
    if m == 0 {
        n == 0
    } else {
        n.is_multiple_of(m)
    }
}

/// Image of `p` in `R_n`.
pub fn reduce_mod(p: &LaurentPoly, n: u64) -> ReducedScalar {
    let poly = if n == 0 {
        p.clone()
    } else {
        let period = 2 * n as i64;
        p.map_exponents(|e| e.rem_euclid(period))
    };
    ReducedScalar { modulus: n, poly }
}

/// A Jones polynomial, stored in the variable `s = t^(1/2)`.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JonesPoly(LaurentPoly);

impl JonesPoly {
    /// Wrap a polynomial whose variable is `s = t^(1/2)`.
    pub fn from_s(p: LaurentPoly) -> Self {
        Self(p)
    }

    pub fn one() -> Self {
        Self(LaurentPoly::one())
    }

    pub fn as_s(&self) -> &LaurentPoly {
        &self.0
    }

    /// Build from `(exponent of t, coeff)` pairs with integral `t`-exponents.
    pub fn from_t_pairs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        Self(LaurentPoly::from_pairs(pairs.into_iter().map(|(e, c)| (2 * e, c))))
    }

    /// Display in `t`, writing odd powers of `s` as half-integral powers of `t`.
    pub fn display_t(&self) -> String {
        struct T<'a>(&'a LaurentPoly);
        impl fmt::Display for T<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, "t", |e| match e {
                    0 => None,
                    2 => Some(String::new()),
                    e if e % 2 == 0 => Some(format!("^{}", e / 2)),
                    e => Some(format!("^({e}/2)")),
                })
            }
        }
        T(&self.0).to_string()
    }
}

impl fmt::Display for JonesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(f, "s", |e| match e {
            0 => None,
            1 => Some(String::new()),
            e => Some(format!("^{e}")),
        })
    }
}

/// Substitute `t^(1/2) = A^-2`: each term `c A^e` becomes `c s^(-e/2)`.
pub fn substitute_jones_var(p: &LaurentPoly) -> Result<JonesPoly> {
    let mut out = LaurentPoly::zero();
    for (e, c) in p.terms() {
        if e.rem_euclid(2) != 0 {
            return Err(SkeinError::NonIntegralHalfPower { exponent: e });
        }
        out.add_term(-e / 2, c.clone());
    }
    Ok(JonesPoly(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn difference_of_squares() {
        let p = lp(&[(1, 1), (-1, 1)]);
        let q = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(&p * &q, lp(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn unit_powers() {
        assert_eq!(LaurentPoly::unit_power(-3), lp(&[(-3, -1)]));
        assert_eq!(LaurentPoly::unit_power(4), lp(&[(4, 1)]));
        assert_eq!(LaurentPoly::unit_power(0), LaurentPoly::one());
    }

    #[test]
    fn delta_squared() {
        let d = LaurentPoly::delta();
        assert_eq!(&d * &d, lp(&[(4, 1), (0, 2), (-4, 1)]));
        assert_eq!((&d * &d).to_string(), "A^4 + 2 + A^-4");
        assert_eq!((-(&d * &d)).to_string(), "-A^4 - 2 - A^-4");
        assert_eq!(lp(&[(4, -1), (0, 2), (-4, -1)]).to_string(), "-A^4 + 2 - A^-4");
        assert_eq!(lp(&[(1, 3), (-1, -1)]).to_string(), "3A - A^-1");
    }

    #[test]
    fn reduction_examples() {
        assert!(reduce_mod(&lp(&[(-3, 1), (3, -1)]), 3).is_zero());
        assert_eq!(reduce_mod(&lp(&[(7, 1)]), 3).poly(), &lp(&[(1, 1)]));
        let p = lp(&[(-9, 4), (5, -2)]);
        assert_eq!(reduce_mod(&p, 0).poly(), &p);
    }

    #[test]
    fn projection_examples() {
        let x = reduce_mod(&lp(&[(5, 1)]), 6);
        assert_eq!(x.project(3).unwrap().poly(), &lp(&[(5, 1)]));
        let y = reduce_mod(&lp(&[(4, 1)]), 4);
        assert!(y.project(2).unwrap().poly().is_one());
        assert!(matches!(x.project(4), Err(SkeinError::NotADivisor { n: 6, m: 4 })));
        // everything divides 0
        let z = reduce_mod(&lp(&[(11, 1)]), 0);
        assert_eq!(z.project(5).unwrap().poly(), &lp(&[(1, 1)]));
        assert!(reduce_mod(&lp(&[(1, 1)]), 2).project(0).is_err());
    }

    #[test]
    fn jones_substitution() {
        let j = substitute_jones_var(&LaurentPoly::delta()).unwrap();
        assert_eq!(j.as_s(), &lp(&[(-1, -1), (1, -1)]));
        assert_eq!(j.display_t(), "-t^(1/2) - t^(-1/2)");
        let j = substitute_jones_var(&lp(&[(4, 1)])).unwrap();
        assert_eq!(j, JonesPoly::from_t_pairs([(-1, 1)]));
        assert!(matches!(
            substitute_jones_var(&lp(&[(3, 1)])),
            Err(SkeinError::NonIntegralHalfPower { exponent: 3 })
        ));
        assert_eq!(JonesPoly::from_t_pairs([(-4, -1), (-3, 1), (-1, 1)]).display_t(), "t^-1 + t^-3 - t^-4");
    }

    #[test]
    fn exact_division() {
        let d = LaurentPoly::delta();
        let p = lp(&[(7, 3), (-2, 5), (0, -1)]);
        assert_eq!((&p * &d).div_exact(&d), Some(p));
        assert_eq!(LaurentPoly::one().div_exact(&d), None);
        assert_eq!(LaurentPoly::zero().div_exact(&d), Some(LaurentPoly::zero()));
    }

    #[test]
    fn big_coefficients_roundtrip_json() {
        let big = LaurentPoly::delta().pow(40);
        let s = serde_json::to_string(&big).unwrap();
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, big);
        assert_eq!(serde_json::to_string(&lp(&[(2, -1), (-2, -1)])).unwrap(), "[[-2,-1],[2,-1]]");
    }

    fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-12i64..12, -5i64..6), 0..6).prop_map(LaurentPoly::from_pairs)
    }

    proptest! {
        #[test]
        fn ring_axioms(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn reduction_is_multiplicative(p in poly_strategy(), q in poly_strategy(), n in 0u64..7) {
            let lhs = reduce_mod(&(&p * &q), n);
            let rhs = &reduce_mod(&p, n) * &reduce_mod(&q, n);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn projection_commutes_with_reduction(p in poly_strategy(), m in 1u64..5, k in 0u64..4) {
            let n = m * k;
            prop_assert_eq!(reduce_mod(&p, n).project(m).unwrap(), reduce_mod(&p, m));
        }
    }
}
