//! Laurent polynomials in `q` with integer coefficients.
//!
//! Besides ring arithmetic this module carries the `q`-adic predicates used
//! to test membership in `A` (rational functions regular at `q = 0`,
//! restricted here to Laurent polynomials), the total order in which
//! `f > g` iff the lowest-order coefficient of `f - g` is positive, and the
//! symmetric `q`-integers, factorials and binomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};

/// An integer-coefficient Laurent polynomial in `q`.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `q^e`.
    pub fn monomial(e: i64) -> Self {
        Self::term(BigInt::one(), e)
    }

    /// `c * q^e`.
    pub fn term(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(c.into(), e);
        p
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, 0)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(c.into(), e);
        }
        p
    }

    fn add_term(&mut self, c: BigInt, e: i64) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Smallest exponent with a nonzero coefficient; `None` stands for
    /// `+infinity` (the zero polynomial).
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Largest exponent with a nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(k, c)| (k + e, c.clone())).collect() }
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Membership in `A`: no negative powers of `q`.
    pub fn in_a(&self) -> bool {
        self.in_qn_a(0)
    }

    /// Membership in `c + qA`.
    pub fn in_c_plus_qa(&self, c: i64) -> bool {
        (self - &LaurentPoly::constant(c)).in_qn_a(1)
    }

    /// Membership in `q^nshift A`, i.e. valuation at least `nshift`.
    pub fn in_qn_a(&self, nshift: i64) -> bool {
        self.valuation().is_none_or(|v| v >= nshift)
    }

    /// Sign under the total order: positive iff the coefficient at the
    /// valuation exponent is positive.
    pub fn positive(&self) -> Result<bool> {
        match self.coeffs.values().next() {
            Some(c) => Ok(c.is_positive()),
            None => domain("the zero polynomial is neither positive nor negative"),
        }
    }

    /// Total order: `self > other` iff `self - other` is positive.
    pub fn q_cmp(&self, other: &Self) -> Ordering {
        let diff = self - other;
        match diff.coeffs.values().next() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.q_cmp(other)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
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

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(c.clone(), *e);
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(-c, *e);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ca * cb, ea + eb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

/// Symmetric q-integer `[m] = (q^m - q^-m)/(q - q^-1)`.
///
/// For `m >= 0` this is `q^(m-1) + q^(m-3) + ... + q^(1-m)`; negative
/// arguments follow `[-m] = -[m]`.
pub fn q_int(m: i64) -> LaurentPoly {
    if m < 0 {
        return -q_int(-m);
    }
    LaurentPoly::from_terms((0..m).map(|j| (m - 1 - 2 * j, 1)))
}

/// `[m]! = [1][2]...[m]`.
pub fn q_factorial(m: u32) -> LaurentPoly {
    (1..=i64::from(m)).map(q_int).product()
}

/// Gaussian binomial `[l]! / ([m]! [l-m]!)`, computed with the Pascal rule
/// `[l, m] = q^m [l-1, m] + q^(m-l) [l-1, m-1]`.
pub fn q_binomial(l: i64, m: i64) -> Result<LaurentPoly> {
    if l < 0 || m < 0 || m > l {
        return domain(format!("q-binomial needs 0 <= m <= l, got l={l}, m={m}"));
    }
    let mut row = vec![LaurentPoly::one()];
    for top in 1..=l {
        let mut next = Vec::with_capacity(row.len() + 1);
        for bottom in 0..=top {
            let mut entry = LaurentPoly::zero();
            if bottom < top {
                entry += &row[bottom as usize].shift(bottom);
            }
            if bottom > 0 {
                entry += &row[bottom as usize - 1].shift(bottom - top);
            }
            next.push(entry);
        }
        row = next;
    }
    Ok(row.swap_remove(m as usize))
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponents, e.g. `-q^-2 + 3 + q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.coeffs.iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let unit = mag.is_one();
            match *e {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("q")?,
                1 => write!(f, "{mag}*q")?,
                _ if unit => write!(f, "q^{e}")?,
                _ => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the canonical rendering produced by `Display`; whitespace
    /// around operators is optional.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        // Split into signed terms, keeping a '-' that follows '^' as part of
        // the exponent.
        let mut terms = Vec::new();
        let mut current = String::new();
        let mut prev = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !current.is_empty() && prev != Some('^') {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
            prev = Some(ch);
        }
        terms.push(current);

        let mut out = LaurentPoly::zero();
        for raw in terms {
            let bad = || Error::Parse(format!("bad term {raw:?} in {s:?}"));
            let (sign, body) = match raw.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, raw.strip_prefix('+').unwrap_or(&raw)),
            };
            let (coef, mono) = match body.split_once('*') {
                Some((c, m)) => (Some(c), Some(m)),
                None if body.starts_with('q') => (None, Some(body)),
                None => (Some(body), None),
            };
            let c: BigInt = match coef {
                Some(c) => c.parse().map_err(|_| bad())?,
                None => BigInt::one(),
            };
            let e: i64 = match mono {
                None => 0,
                Some("q") => 1,
                Some(m) => m.strip_prefix("q^").and_then(|x| x.parse().ok()).ok_or_else(bad)?,
            };
            out.add_term(c * sign, e);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn q_int_small_values() {
        assert!(q_int(0).is_zero());
        assert_eq!(q_int(1), LaurentPoly::one());
        assert_eq!(q_int(2), p("q^-1 + q"));
        assert_eq!(q_int(-2), p("-q^-1 - q"));
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binomial(2, 1).unwrap(), q_int(2));
        assert_eq!(q_binomial(4, 2).unwrap(), p("q^-4 + q^-2 + 2 + q^2 + q^4"));
        assert_eq!(q_binomial(5, 0).unwrap(), LaurentPoly::one());
        assert!(matches!(q_binomial(2, 3), Err(Error::Domain(_))));
        assert!(q_binomial(2, -1).is_err());
    }

    #[test]
    fn q_binomial_is_factorial_quotient() {
        // [l]! == [m]! [l-m]! [l, m]
        for l in 0..9u32 {
            for m in 0..=l {
                let lhs = q_factorial(l);
                let rhs = &(&q_factorial(m) * &q_factorial(l - m)) * &q_binomial(l.into(), m.into()).unwrap();
                assert_eq!(lhs, rhs, "l={l} m={m}");
            }
        }
    }

    #[test]
    fn valuation_cases() {
        assert_eq!(p("1 + q^2").valuation(), Some(0));
        assert_eq!(LaurentPoly::monomial(-3).valuation(), Some(-3));
        assert_eq!(LaurentPoly::zero().valuation(), None);
    }

    #[test]
    fn ring_a_predicates() {
        assert!(p("1 + q^2").in_c_plus_qa(1));
        assert!(!p("1 + q^2").in_c_plus_qa(0));
        let x = &LaurentPoly::monomial(-1) * &q_int(2);
        assert_eq!(x, p("q^-2 + 1"));
        assert!(!x.in_a());
        assert!(q_int(3).in_qn_a(1 - 3));
        assert!(!q_int(3).in_qn_a(2 - 3));
        assert!(LaurentPoly::zero().in_qn_a(1_000));
    }

    #[test]
    fn positivity() {
        assert!(p("q^-1 - q").positive().unwrap());
        assert!(!p("-1 + q^5").positive().unwrap());
        for m in 1..10 {
            assert!(q_int(m).positive().unwrap());
        }
        assert!(LaurentPoly::zero().positive().is_err());
        assert!(p("q") < p("1"));
        assert!(p("q^-3") > p("1000"));
    }

    #[test]
    fn rendering() {
        assert_eq!((&LaurentPoly::monomial(1) * &q_int(2)).to_string(), "1 + q^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("-3*q^-2 + q - 2*q^4").to_string(), "-3*q^-2 + q - 2*q^4");
        assert_eq!(p("2*q").coeff(1), BigInt::from(2));
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let b = q_binomial(40, 20).unwrap();
        let expected: BigInt = "137846528820".parse().unwrap();
        assert_eq!(b.eval_at_one(), expected);
        let sq = &b * &b;
        assert_eq!(sq.eval_at_one(), &expected * &expected);
    }
}
