//! Exact arithmetic in the real field Q(√2, √5).
//!
//! Every element is stored in the fixed basis {1, √2, √5, √10}, so two
//! elements are equal exactly when their four rational coordinates are equal.
//! The sign of a nonzero element is decided by evaluating it on shrinking
//! enclosures of the three square roots until the enclosure excludes zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ArithmeticError;

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Three-way sign of a real number.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_f64(x: f64) -> Sign {
        if x > 0.0 {
            Sign::Positive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Negative => -1.0,
            Sign::Zero => 0.0,
            Sign::Positive => 1.0,
        }
    }
}

/// Names of the basis elements, in storage order.
pub const BASIS: [&str; 4] = ["1", "√2", "√5", "√10"];

/// An element a + b√2 + c√5 + d√10 of Q(√2, √5).
///
/// Stored as four integer numerators over one positive common denominator in
/// lowest terms. Machine integers are used while everything fits in `i64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small([i64; 4], i64),
    Big([BigInt; 4], BigInt),
}

impl Default for FieldElement {
    fn default() -> Self {
        FieldElement(Repr::Small([0; 4], 1))
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Canonical element from i128 numerators and a nonzero denominator;
/// `None` if an intermediate does not fit.
fn from_i128(num: [i128; 4], den: i128) -> FieldElement {
    let sign: i128 = if den < 0 { -1 } else { 1 };
    let mut g = den.unsigned_abs();
    for n in &num {
        g = gcd_u128(g, n.unsigned_abs());
    }
    if num.iter().all(|&n| n == 0) {
        return FieldElement::zero();
    }
    let g = g as i128;
    let d = sign * (den / g);
    let reduced = num.map(|n| sign * (n / g));
    let small = reduced.iter().all(|n| i64::try_from(*n).is_ok()) && i64::try_from(d).is_ok();
    if small {
        FieldElement(Repr::Small(reduced.map(|n| n as i64), d as i64))
    } else {
        FieldElement(Repr::Big(reduced.map(BigInt::from), BigInt::from(d)))
    }
}

fn from_big(num: [BigInt; 4], den: BigInt) -> FieldElement {
    if num.iter().all(Zero::is_zero) {
        return FieldElement::zero();
    }
    let mut g = den.abs();
    for n in &num {
        g = g.gcd(n);
    }
    let neg = den.is_negative();
    let fix = |x: &BigInt| {
        let q = x / &g;
        if neg {
            -q
        } else {
            q
        }
    };
    let reduced = [0, 1, 2, 3].map(|i| fix(&num[i]));
    let d = fix(&den);
    let small: Option<Vec<i64>> = reduced.iter().map(|n| n.to_i64()).collect();
    match (small, d.to_i64()) {
        (Some(v), Some(d)) => FieldElement(Repr::Small([v[0], v[1], v[2], v[3]], d)),
        _ => FieldElement(Repr::Big(reduced, d)),
    }
}

impl FieldElement {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        let parts = [a, b, c, d];
        let den = parts
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = [0, 1, 2, 3].map(|i| parts[i].numer() * (&den / parts[i].denom()));
        from_big(num, den)
    }

    /// Builds an element from four `(numerator, denominator)` pairs.
    pub fn from_ratios(parts: [(i64, i64); 4]) -> Self {
        let [a, b, c, d] = parts.map(|(n, d)| rat(n, d));
        Self::new(a, b, c, d)
    }

    pub fn from_integer(n: i64) -> Self {
        FieldElement(Repr::Small([n, 0, 0, 0], 1))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::new(q, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn sqrt2() -> Self {
        FieldElement(Repr::Small([0, 1, 0, 0], 1))
    }

    pub fn sqrt5() -> Self {
        FieldElement(Repr::Small([0, 0, 1, 0], 1))
    }

    pub fn sqrt10() -> Self {
        FieldElement(Repr::Small([0, 0, 0, 1], 1))
    }

    /// The golden ratio (1 + √5)/2.
    pub fn golden_ratio() -> Self {
        FieldElement(Repr::Small([1, 0, 1, 0], 2))
    }

    /// The four rational coordinates.
    pub fn coeffs(&self) -> [Rational; 4] {
        let (num, den) = self.integer_coefficients();
        num.map(|n| Rational::new(n, den.clone()))
    }

    pub fn a(&self) -> Rational {
        self.coeff(0)
    }

    pub fn b(&self) -> Rational {
        self.coeff(1)
    }

    pub fn c(&self) -> Rational {
        self.coeff(2)
    }

    pub fn d(&self) -> Rational {
        self.coeff(3)
    }

    fn coeff(&self, i: usize) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => rat(n[i], *d),
            Repr::Big(n, d) => Rational::new(n[i].clone(), d.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => n.iter().all(|&x| x == 0),
            Repr::Big(n, _) => n.iter().all(Zero::is_zero),
        }
    }

    pub fn is_rational(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => n[1..].iter().all(|&x| x == 0),
            Repr::Big(n, _) => n[1..].iter().all(Zero::is_zero),
        }
    }

    /// Returns the rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeff(0))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let (num, den) = self.integer_coefficients();
        from_big(num.map(|n| n * q.numer()), den * q.denom())
    }

    fn map_signs(&self, signs: [i64; 4]) -> Self {
        match &self.0 {
            Repr::Small(n, d) => FieldElement(Repr::Small(
                [
                    n[0] * signs[0],
                    n[1] * signs[1],
                    n[2] * signs[2],
                    n[3] * signs[3],
                ],
                *d,
            )),
            Repr::Big(n, d) => {
                FieldElement(Repr::Big([0, 1, 2, 3].map(|i| &n[i] * signs[i]), d.clone()))
            }
        }
    }

    /// Field automorphism fixing √5 and sending √2 to -√2.
    pub fn conj_sqrt2(&self) -> Self {
        self.map_signs([1, -1, 1, -1])
    }

    /// Field automorphism fixing √2 and sending √5 to -√5 (and so √10 to -√10).
    pub fn conj_sqrt5(&self) -> Self {
        self.map_signs([1, 1, -1, -1])
    }

    /// Product of the element with its three nontrivial Galois conjugates.
    pub fn norm(&self) -> Rational {
        let (_, n) = self.norm_and_cofactor();
        n
    }

    fn norm_and_cofactor(&self) -> (FieldElement, Rational) {
        let s2 = self.conj_sqrt2();
        let s5 = self.conj_sqrt5();
        let s10 = s2.conj_sqrt5();
        let cofactor = &(&s2 * &s5) * &s10;
        let n = self * &cofactor;
        debug_assert!(n.is_rational(), "Galois norm must be rational: {n:?}");
        (cofactor, n.coeff(0))
    }

    pub fn inverse(&self) -> Result<Self, ArithmeticError> {
        if self.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        let (cofactor, n) = self.norm_and_cofactor();
        Ok(cofactor.scale(&n.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithmeticError> {
        Ok(self * &other.inverse()?)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Componentwise evaluation in double precision.
    pub fn to_f64(&self) -> f64 {
        let roots = [1.0, std::f64::consts::SQRT_2, 5f64.sqrt(), 10f64.sqrt()];
        match &self.0 {
            Repr::Small(n, d) => {
                let v: f64 = n.iter().zip(roots).map(|(&x, r)| x as f64 * r).sum();
                v / *d as f64
            }
            Repr::Big(..) => self
                .coeffs()
                .iter()
                .zip(roots)
                .map(|(q, r)| q.to_f64().unwrap_or(f64::NAN) * r)
                .sum(),
        }
    }

    /// Exact sign.
    pub fn sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        if let Some(s) = self.sign_from_f64() {
            return s;
        }
        let mut bits = 64u32;
        loop {
            if let Some(s) = self.sign_at_precision(bits) {
                return s;
            }
            bits *= 2;
        }
    }

    /// Double-precision evaluation with a conservative rounding bound.
    fn sign_from_f64(&self) -> Option<Sign> {
        let Repr::Small(n, _) = &self.0 else {
            return None;
        };
        let roots = [1.0, std::f64::consts::SQRT_2, 5f64.sqrt(), 10f64.sqrt()];
        let mut value = 0.0;
        let mut magnitude = 0.0;
        for (&x, r) in n.iter().zip(roots) {
            let t = x as f64 * r;
            value += t;
            magnitude += t.abs();
        }
        let slack = magnitude * 1e-13;
        if value > slack {
            Some(Sign::Positive)
        } else if value < -slack {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    /// Interval evaluation with the square roots enclosed to `bits` binary
    /// digits. Returns `None` when the enclosure still contains zero.
    pub fn sign_at_precision(&self, bits: u32) -> Option<Sign> {
        let (ints, _) = self.integer_coefficients();
        let scale = BigInt::one() << bits;
        let lo_roots = [2u32, 5, 10].map(|r| (BigInt::from(r) << (2 * bits)).sqrt());
        let mut lo = &ints[0] * &scale;
        let mut hi = lo.clone();
        for (k, root_lo) in ints[1..].iter().zip(lo_roots.iter()) {
            let root_hi = root_lo + 1u32;
            if k.is_negative() {
                lo += k * &root_hi;
                hi += k * root_lo;
            } else {
                lo += k * root_lo;
                hi += k * &root_hi;
            }
        }
        if lo.is_positive() {
            Some(Sign::Positive)
        } else if hi.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    /// Integer coordinates over the common (positive) denominator.
    pub fn integer_coefficients(&self) -> ([BigInt; 4], BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (n.map(BigInt::from), BigInt::from(*d)),
            Repr::Big(n, d) => (n.clone(), d.clone()),
        }
    }

    pub fn abs(&self) -> Self {
        match self.sign() {
            Sign::Negative => -self,
            _ => self.clone(),
        }
    }

    /// Exact order comparison.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    /// Coordinates as `"p/q"` strings (or `"p"` for integers).
    pub fn to_basis_strings(&self) -> [String; 4] {
        self.coeffs().map(|q| q.to_string())
    }

    pub fn from_basis_strings<S: AsRef<str>>(parts: &[S]) -> Result<Self, ArithmeticError> {
        if parts.len() != 4 {
            return Err(ArithmeticError::Parse(format!(
                "expected 4 basis coefficients, got {}",
                parts.len()
            )));
        }
        let mut coeffs: [Rational; 4] = Default::default();
        for (slot, p) in coeffs.iter_mut().zip(parts) {
            *slot = Rational::from_str(p.as_ref().trim())
                .map_err(|e| ArithmeticError::Parse(format!("{:?}: {e}", p.as_ref())))?;
        }
        let [a, b, c, d] = coeffs;
        Ok(FieldElement::new(a, b, c, d))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (q, name) in self.coeffs().iter().zip(BASIS) {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if name == "1" {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{name}")?;
            } else if mag.is_integer() {
                write!(f, "{mag}{name}")?;
            } else {
                write!(f, "({mag}){name}")?;
            }
        }
        Ok(())
    }
}

fn widen(x: &FieldElement) -> Option<([i128; 4], i128)> {
    match &x.0 {
        Repr::Small(n, d) => Some((n.map(i128::from), i128::from(*d))),
        Repr::Big(..) => None,
    }
}

fn add_small(x: &FieldElement, y: &FieldElement, sign: i128) -> Option<FieldElement> {
    let (a, da) = widen(x)?;
    let (b, db) = widen(y)?;
    if da == db {
        let n = [0, 1, 2, 3].map(|i| a[i] + sign * b[i]);
        return Some(from_i128(n, da));
    }
    let mut n = [0i128; 4];
    for i in 0..4 {
        n[i] = a[i]
            .checked_mul(db)?
            .checked_add(sign * b[i].checked_mul(da)?)?;
    }
    Some(from_i128(n, da.checked_mul(db)?))
}

fn add_big(x: &FieldElement, y: &FieldElement, sign: i64) -> FieldElement {
    let (a, da) = x.integer_coefficients();
    let (b, db) = y.integer_coefficients();
    let n = [0, 1, 2, 3].map(|i| &a[i] * &db + &b[i] * &da * sign);
    from_big(n, da * db)
}

/// Structure constants: (i, j) ↦ (k, factor) with e_i e_j = factor·e_k.
const TABLE: [[(usize, i64); 4]; 4] = [
    [(0, 1), (1, 1), (2, 1), (3, 1)],
    [(1, 1), (0, 2), (3, 1), (2, 2)],
    [(2, 1), (3, 1), (0, 5), (1, 5)],
    [(3, 1), (2, 2), (1, 5), (0, 10)],
];

fn mul_small(x: &FieldElement, y: &FieldElement) -> Option<FieldElement> {
    let (a, da) = widen(x)?;
    let (b, db) = widen(y)?;
    let mut n = [0i128; 4];
    for i in 0..4 {
        if a[i] == 0 {
            continue;
        }
        for j in 0..4 {
            if b[j] == 0 {
                continue;
            }
            let (k, f) = TABLE[i][j];
            let t = a[i].checked_mul(b[j])?.checked_mul(f as i128)?;
            n[k] = n[k].checked_add(t)?;
        }
    }
    Some(from_i128(n, da.checked_mul(db)?))
}

fn mul_big(x: &FieldElement, y: &FieldElement) -> FieldElement {
    let (a, da) = x.integer_coefficients();
    let (b, db) = y.integer_coefficients();
    let mut n: [BigInt; 4] = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            let (k, f) = TABLE[i][j];
            n[k] += &a[i] * &b[j] * f;
        }
    }
    from_big(n, da * db)
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        add_small(self, o, 1).unwrap_or_else(|| add_big(self, o, 1))
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        add_small(self, o, -1).unwrap_or_else(|| add_big(self, o, -1))
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        mul_small(self, o).unwrap_or_else(|| mul_big(self, o))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.map_signs([-1; 4])
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, o: FieldElement) -> FieldElement {
        &self + &o
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, o: FieldElement) -> FieldElement {
        &self - &o
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, o: FieldElement) -> FieldElement {
        &self * &o
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(parts: [(i64, i64); 4]) -> FieldElement {
        FieldElement::from_ratios(parts)
    }

    #[test]
    fn basis_addition_and_inverse() {
        let one = FieldElement::one();
        let s2 = FieldElement::sqrt2();
        assert_eq!(&one + &s2, fe([(1, 1), (1, 1), (0, 1), (0, 1)]));
        assert_eq!(&s2 + &FieldElement::zero(), s2);
        let x = fe([(0, 1), (1, 1), (1, 1), (0, 1)]);
        assert!((&x + &-&x).is_zero());
    }

    #[test]
    fn multiplication_relations() {
        assert_eq!(
            &FieldElement::sqrt2() * &FieldElement::sqrt5(),
            FieldElement::sqrt10()
        );
        let x = &FieldElement::sqrt2() + &FieldElement::sqrt5();
        assert_eq!(x.square(), fe([(7, 1), (0, 1), (0, 1), (2, 1)]));
        let tau = FieldElement::golden_ratio();
        assert_eq!(tau.square(), fe([(3, 2), (0, 1), (1, 2), (0, 1)]));
        assert_eq!(tau.square(), &tau + &FieldElement::one());
        assert_eq!(
            &FieldElement::sqrt10() * &FieldElement::sqrt10(),
            FieldElement::from_integer(10)
        );
        assert_eq!(
            &FieldElement::sqrt5() * &FieldElement::sqrt10(),
            FieldElement::sqrt2().scale(&rat(5, 1))
        );
    }

    #[test]
    fn inverses() {
        assert_eq!(
            FieldElement::from_integer(2).inverse().unwrap(),
            fe([(1, 2), (0, 1), (0, 1), (0, 1)])
        );
        let x = fe([(1, 1), (1, 1), (0, 1), (0, 1)]);
        assert_eq!(x.inverse().unwrap(), fe([(-1, 1), (1, 1), (0, 1), (0, 1)]));
        let tau = FieldElement::golden_ratio();
        assert_eq!(tau.inverse().unwrap(), &tau - &FieldElement::one());
        assert_eq!(
            FieldElement::zero().inverse(),
            Err(ArithmeticError::DivisionByZero)
        );
    }

    #[test]
    fn signs() {
        assert_eq!(FieldElement::zero().sign(), Sign::Zero);
        let x = fe([(0, 1), (1, 1), (1, 1), (-1, 1)]);
        assert_eq!(x.sign(), Sign::Positive);
        let r = fe([(40, 1), (12, 1), (-8, 1), (-12, 1)]);
        assert_eq!(r.sign(), Sign::Positive);
        assert!((r.to_f64() - 1.1348).abs() < 1e-3);
        assert_eq!((-&r).sign(), Sign::Negative);
    }

    #[test]
    fn interval_refinement_separates_tiny_values() {
        // (√2 - 1)^40 is about 5e-16: invisible to f64 after expansion.
        let base = fe([(-1, 1), (1, 1), (0, 1), (0, 1)]);
        let mut p = FieldElement::one();
        for _ in 0..40 {
            p = &p * &base;
        }
        assert_eq!(p.sign_from_f64(), None);
        assert_eq!(p.sign_at_precision(64), None);
        assert_eq!(p.sign(), Sign::Positive);
        assert_eq!((-&p).sign(), Sign::Negative);
    }

    #[test]
    fn display_and_parse() {
        let x = fe([(3, 2), (-1, 1), (0, 1), (2, 3)]);
        assert_eq!(x.to_string(), "3/2 - √2 + (2/3)√10");
        let parts = x.to_basis_strings();
        assert_eq!(parts, ["3/2", "-1", "0", "2/3"].map(String::from));
        assert_eq!(FieldElement::from_basis_strings(&parts).unwrap(), x);
    }
}
