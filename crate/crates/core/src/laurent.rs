//! Exact Laurent polynomials in one variable `x` over arbitrary-precision
//! integers, truncated power series in a second variable `t` whose
//! coefficients are such polynomials, and the q-factorial style products
//! that every face-count formula is built from.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("division by x^{power} is not exact: lowest exponent is {lowest}")]
    InexactDivision { power: i64, lowest: i64 },
    #[error("series denominator must have constant term 1, found {0}")]
    NonUnitDenominator(String),
}

/// A Laurent polynomial `sum c_e x^e` with finitely many nonzero terms.
///
/// Zero coefficients are never stored, so derived equality is equality of
/// polynomials.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// Builds `sum_k coeffs[k] x^(lowest + k)`.
    pub fn from_coeffs<C: Into<BigInt>>(lowest: i64, coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(k, c)| (lowest + k as i64, c.into())),
        )
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn lowest_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Divides by `x^power`, failing unless the quotient is a genuine
    /// polynomial (no negative exponents).
    pub fn div_x_pow(&self, power: i64) -> Result<Self, LaurentError> {
        match self.lowest_exponent() {
            Some(lowest) if lowest < power => Err(LaurentError::InexactDivision { power, lowest }),
            _ => Ok(self.shift(-power)),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Substitutes an integer for `x`. Negative exponents require `x = ±1`.
    pub fn eval(&self, at: &BigInt) -> Option<BigInt> {
        let mut acc = BigInt::zero();
        for (e, c) in self.terms() {
            if e < 0 {
                if at.abs() != BigInt::one() {
                    return None;
                }
                acc += c * at.pow(e.unsigned_abs() as u32);
            } else {
                acc += c * at.pow(e as u32);
            }
        }
        Some(acc)
    }

    /// Sum of all coefficients, i.e. the value at `x = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }
}

/// `p * q`, exact.
pub fn poly_mul(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
    for (ea, ca) in &p.terms {
        for (eb, cb) in &q.terms {
            *out.entry(ea + eb).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    LaurentPoly { terms: out }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        poly_mul(self, rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        poly_mul(&self, &rhs)
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

impl Add for &LaurentPoly {
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

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
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

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| acc * p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{e}")?,
                _ => write!(f, "{mag}x^{e}")?,
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

/// `(x0 + 1)^i - 1`.
fn shifted_power_minus_one(x0: &LaurentPoly, i: u32) -> LaurentPoly {
    (x0 + &LaurentPoly::one()).pow(i) - LaurentPoly::one()
}

/// `pi_k(x0) = prod_{i=1..k} ((x0 + 1)^i - 1)`.
pub fn pi(k: u32, x0: &LaurentPoly) -> LaurentPoly {
    (1..=k).map(|i| shifted_power_minus_one(x0, i)).product()
}

/// `[n]_{x+1}! = prod_{i=1..n} (1 + (x+1) + ... + (x+1)^(i-1))`.
pub fn q_factorial_shifted(n: u32) -> LaurentPoly {
    let y = LaurentPoly::x() + LaurentPoly::one();
    let mut out = LaurentPoly::one();
    let mut q_int = LaurentPoly::zero();
    let mut y_pow = LaurentPoly::one();
    for _ in 0..n {
        q_int += &y_pow;
        y_pow = &y_pow * &y;
        out = &out * &q_int;
    }
    out
}

/// A power series in `t` truncated after `t^order`, with Laurent
/// polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<LaurentPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![LaurentPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = LaurentPoly::one();
        s
    }

    /// `c * t^power`, truncated.
    pub fn monomial(order: usize, power: usize, c: LaurentPoly) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Builds a series from its first coefficients; missing coefficients
    /// are zero and extra ones are dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = LaurentPoly>) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `[t^k]`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> LaurentPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    /// Re-truncates at a lower (or equal) order.
    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(order, self.coeffs.iter().cloned())
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
                .collect(),
        }
    }

    /// Multiplies every coefficient by a polynomial in `x`.
    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `t^k`, dropping what falls past the order.
    pub fn shift_t(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        for i in (0..=order).take_while(|i| i + k <= order) {
            out.coeffs[i + k] = self.coeffs[i].clone();
        }
        out
    }

    /// Substitutes `t -> c * t`.
    pub fn rescale_t(&self, c: &LaurentPoly) -> Self {
        let mut power = LaurentPoly::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &power);
            power = &power * c;
        }
        Self { coeffs: out }
    }
}

/// Expands `numer * t^numer_power / (denom_const + denom_linear * t)` up to
/// `t^order`. The denominator's constant term must be exactly 1.
pub fn series_expand_rational(
    numer: &LaurentPoly,
    numer_power: usize,
    denom_const: &LaurentPoly,
    denom_linear: &LaurentPoly,
    order: usize,
) -> Result<TruncatedSeries, LaurentError> {
    if *denom_const != LaurentPoly::one() {
        return Err(LaurentError::NonUnitDenominator(denom_const.to_string()));
    }
    let ratio = -denom_linear;
    let mut out = TruncatedSeries::zero(order);
    let mut term = numer.clone();
    for k in numer_power..=order {
        out.coeffs[k] = term.clone();
        term = &term * &ratio;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(lowest: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(lowest, c.iter().copied())
    }

    #[test]
    fn mul_identity_and_shift() {
        assert_eq!(poly_mul(&p(0, &[1, 1]), &LaurentPoly::one()), p(0, &[1, 1]));
        assert_eq!(
            poly_mul(&p(-1, &[1, 2, 1]), &LaurentPoly::x()),
            p(0, &[1, 2, 1])
        );
    }

    #[test]
    fn mul_table_rows() {
        // (1+x)^4 times the primitive CRY_3 polynomial gives x * f^(4).
        let lhs = p(0, &[1, 4, 6, 4, 1]);
        let rhs = p(0, &[1, 4, 4, 1]);
        assert_eq!(poly_mul(&lhs, &rhs), p(0, &[1, 8, 26, 45, 45, 26, 8, 1]));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = p(0, &[1, 1]);
        let b = p(0, &[-1, -1]);
        assert!((&a + &b).is_zero());
        assert_eq!(p(0, &[0, 0, 3, 0]), LaurentPoly::monomial(2, 3));
        assert_eq!((&a - &a).degree(), None);
    }

    #[test]
    fn pi_values() {
        let x = LaurentPoly::x();
        assert_eq!(pi(0, &x), LaurentPoly::one());
        // x * (x^2 + 2x)
        assert_eq!(pi(2, &x), p(2, &[2, 1]));
        assert_eq!(pi(3, &LaurentPoly::one()), LaurentPoly::constant(21));
    }

    #[test]
    fn pi_at_one_is_product_of_mersenne_numbers() {
        let one = LaurentPoly::one();
        let mut expect = BigInt::one();
        for k in 0..=10u32 {
            if k > 0 {
                expect *= (BigInt::one() << k) - 1;
            }
            assert_eq!(pi(k, &one), LaurentPoly::constant(expect.clone()), "k={k}");
        }
    }

    #[test]
    fn q_factorial() {
        assert_eq!(q_factorial_shifted(0), LaurentPoly::one());
        assert_eq!(q_factorial_shifted(3), p(0, &[6, 9, 5, 1]));
        assert_eq!(q_factorial_shifted(3).coefficient_sum(), BigInt::from(21));
    }

    #[test]
    fn exact_division() {
        assert_eq!(
            p(3, &[1, 4, 4, 1]).div_x_pow(3).unwrap(),
            p(0, &[1, 4, 4, 1])
        );
        assert_eq!(
            p(1, &[1]).div_x_pow(2),
            Err(LaurentError::InexactDivision {
                power: 2,
                lowest: 1
            })
        );
    }

    #[test]
    fn geometric_expansions() {
        let one = LaurentPoly::one();
        let s = series_expand_rational(&one, 0, &one, &LaurentPoly::zero(), 3).unwrap();
        assert_eq!(s, TruncatedSeries::one(3));

        let s = series_expand_rational(&one, 0, &one, &LaurentPoly::x(), 2).unwrap();
        assert_eq!(s.coeffs(), &[one.clone(), p(1, &[-1]), p(2, &[1])]);

        // ((1+x)^2 - 1 - x) / x = x + 1
        let c = (p(0, &[1, 1]).pow(2) - p(0, &[1, 1])).div_x_pow(1).unwrap();
        assert_eq!(c, p(0, &[1, 1]));
        let s = series_expand_rational(&one, 0, &one, &c, 2).unwrap();
        assert_eq!(s.coeffs(), &[one.clone(), -&c, c.pow(2)]);

        assert!(series_expand_rational(&one, 0, &LaurentPoly::constant(2), &c, 2).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(-1, &[1, 2, 1]).to_string(), "x^-1 + 2 + x");
        assert_eq!(p(0, &[0, -3, 0, 1]).to_string(), "-3x + x^3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (-3i64..3, prop::collection::vec(-50i64..50, 0..6)).prop_map(|(lo, c)| p(lo, &c))
    }

    fn arb_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(arb_poly(), order + 1)
            .prop_map(move |c| TruncatedSeries::from_coeffs(order, c))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn degrees_add(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
            prop_assert_eq!(
                prod.lowest_exponent(),
                Some(a.lowest_exponent().unwrap() + b.lowest_exponent().unwrap())
            );
        }

        #[test]
        fn truncation_is_consistent(a in arb_series(9), b in arb_series(9), n in 0usize..5) {
            let short = a.truncate(n).mul(&b.truncate(n));
            let long = a.truncate(n + 5).mul(&b.truncate(n + 5));
            prop_assert_eq!(short, long.truncate(n));
        }
    }
}
