//! Scalar backends shared by every geometric routine.
//!
//! [`FieldElement`] gives exact results; `f64` is the fast floating-point
//! backend whose comparisons use a global tolerance (see
//! [`set_float_tolerance`]).

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::algebraic::{FieldElement, Sign};
use crate::error::ArithmeticError;

pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-9;

static FLOAT_TOLERANCE_BITS: AtomicU64 = AtomicU64::new(DEFAULT_FLOAT_TOLERANCE.to_bits());

pub fn float_tolerance() -> f64 {
    f64::from_bits(FLOAT_TOLERANCE_BITS.load(AtomicOrdering::Relaxed))
}

/// Sets the tolerance used by the float backend for sign tests and dedup.
pub fn set_float_tolerance(eps: f64) {
    assert!(eps > 0.0 && eps < 1e-3, "tolerance out of range: {eps}");
    FLOAT_TOLERANCE_BITS.store(eps.to_bits(), AtomicOrdering::Relaxed);
}

pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    /// Hashable bucket used for tolerant deduplication.
    type Key: Hash + Eq + Clone + Debug + Send + Sync;

    const EXACT: bool;
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn sqrt2() -> Self;
    fn sqrt5() -> Self;

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ArithmeticError>;

    fn sign(&self) -> Sign;
    fn to_f64(&self) -> f64;

    /// `(cos(πn/d), sin(πn/d))`, or `None` when the values are not
    /// representable in this backend.
    fn cos_sin_pi(num: i64, den: i64) -> Option<(Self, Self)>;

    /// Image under √5 ↦ -√5 when the backend tracks it.
    fn conj_sqrt5(&self) -> Option<Self>;

    /// Total order used for canonical sorting.
    fn cmp_value(&self, o: &Self) -> Ordering;

    /// Primary bucket first, then buckets of values within tolerance.
    fn keys(&self) -> Vec<Self::Key>;

    /// True when three rows in R⁴ are linearly independent, given their
    /// generalized cross product.
    fn independent_rows(rows: &[[Self; 4]; 3], cross: &[Self; 4]) -> bool;

    /// Rational coordinates over {1, √2, √5, √10} when the value is exact.
    fn basis_strings(&self) -> Option<[String; 4]>;

    fn is_zero(&self) -> bool {
        self.sign() == Sign::Zero
    }

    fn approx_eq(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn div(&self, o: &Self) -> Result<Self, ArithmeticError> {
        Ok(self.mul(&o.inv()?))
    }
}

fn reduce(num: i64, den: i64) -> (i64, i64) {
    let g = num_integer::gcd(num, den).max(1);
    let (n, d) = (num / g, den / g);
    if d < 0 {
        (-n, -d)
    } else {
        (n, d)
    }
}

impl Scalar for FieldElement {
    type Key = FieldElement;

    const EXACT: bool = true;
    const NAME: &'static str = "exact";

    fn zero() -> Self {
        FieldElement::zero()
    }
    fn one() -> Self {
        FieldElement::one()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        FieldElement::from_ratios([(num, den), (0, 1), (0, 1), (0, 1)])
    }
    fn sqrt2() -> Self {
        FieldElement::sqrt2()
    }
    fn sqrt5() -> Self {
        FieldElement::sqrt5()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, ArithmeticError> {
        self.inverse()
    }
    fn sign(&self) -> Sign {
        FieldElement::sign(self)
    }
    fn to_f64(&self) -> f64 {
        FieldElement::to_f64(self)
    }

    fn cos_sin_pi(num: i64, den: i64) -> Option<(Self, Self)> {
        // Multiples of π/4 are the only angles with both values in the field.
        let (n, d) = reduce(num, den);
        if !matches!(d, 1 | 2 | 4) {
            return None;
        }
        let eighth = (n * (4 / d)).rem_euclid(8);
        let h = FieldElement::from_ratios([(0, 1), (1, 2), (0, 1), (0, 1)]);
        let one = FieldElement::one();
        let zero = FieldElement::zero();
        let (c, s) = match eighth {
            0 => (one, zero),
            1 => (h.clone(), h),
            2 => (zero, one),
            3 => (-&h, h),
            4 => (-&one, zero),
            5 => (-&h, -&h),
            6 => (zero, -&one),
            _ => (h.clone(), -&h),
        };
        Some((c, s))
    }

    fn conj_sqrt5(&self) -> Option<Self> {
        Some(FieldElement::conj_sqrt5(self))
    }

    fn cmp_value(&self, o: &Self) -> Ordering {
        FieldElement::cmp_value(self, o)
    }

    fn keys(&self) -> Vec<Self::Key> {
        vec![self.clone()]
    }

    fn independent_rows(_rows: &[[Self; 4]; 3], cross: &[Self; 4]) -> bool {
        cross.iter().any(|c| !c.is_zero())
    }

    fn basis_strings(&self) -> Option<[String; 4]> {
        Some(self.to_basis_strings())
    }

    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }

    fn approx_eq(&self, o: &Self) -> bool {
        self == o
    }
}

/// Dedup grid spacing relative to the tolerance.
const GRID_FACTOR: f64 = 100.0;

impl Scalar for f64 {
    type Key = i64;

    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn sqrt2() -> Self {
        std::f64::consts::SQRT_2
    }
    fn sqrt5() -> Self {
        5f64.sqrt()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, ArithmeticError> {
        if Scalar::is_zero(self) {
            Err(ArithmeticError::DivisionByZero)
        } else {
            Ok(1.0 / self)
        }
    }
    fn sign(&self) -> Sign {
        let eps = float_tolerance();
        if *self > eps {
            Sign::Positive
        } else if *self < -eps {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
    fn to_f64(&self) -> f64 {
        *self
    }

    fn cos_sin_pi(num: i64, den: i64) -> Option<(Self, Self)> {
        let (n, d) = reduce(num, den);
        // Reduce to [0, 2) first so that exact quarter turns come out exact.
        let n = n.rem_euclid(2 * d);
        match (n * 2) % d {
            0 => {
                let quarter = (n * 2 / d) as u8;
                let (c, s) = match quarter {
                    0 => (1.0, 0.0),
                    1 => (0.0, 1.0),
                    2 => (-1.0, 0.0),
                    3 => (0.0, -1.0),
                    q => {
                        let t = std::f64::consts::FRAC_PI_2 * q as f64;
                        (t.cos(), t.sin())
                    }
                };
                Some((c, s))
            }
            _ => {
                let t = std::f64::consts::PI * n as f64 / d as f64;
                Some((t.cos(), t.sin()))
            }
        }
    }

    fn conj_sqrt5(&self) -> Option<Self> {
        None
    }

    fn cmp_value(&self, o: &Self) -> Ordering {
        let r = |v: f64| (v * 1e12).round() as i64;
        r(*self).cmp(&r(*o))
    }

    fn keys(&self) -> Vec<i64> {
        let grid = float_tolerance() * GRID_FACTOR;
        let t = self / grid;
        let k = t.floor();
        let frac = t - k;
        let k = k as i64;
        let margin = 1.0 / GRID_FACTOR;
        let mut out = vec![k];
        if frac < margin {
            out.push(k - 1);
        }
        if frac > 1.0 - margin {
            out.push(k + 1);
        }
        out
    }

    fn independent_rows(rows: &[[Self; 4]; 3], _cross: &[Self; 4]) -> bool {
        let m = nalgebra::Matrix3x4::from_fn(|i, j| rows[i][j]);
        let sv = m.singular_values();
        let max = sv.max();
        max > 0.0 && sv.min() / max > 1e-8
    }

    fn basis_strings(&self) -> Option<[String; 4]> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_trig_table() {
        let (c, s) = <FieldElement as Scalar>::cos_sin_pi(1, 4).unwrap();
        assert_eq!(c, s);
        assert_eq!(
            c.square(),
            FieldElement::from_ratios([(1, 2), (0, 1), (0, 1), (0, 1)])
        );
        let (c, s) = <FieldElement as Scalar>::cos_sin_pi(6, 4).unwrap();
        assert!(c.is_zero());
        assert_eq!(s, FieldElement::from_integer(-1));
        assert!(<FieldElement as Scalar>::cos_sin_pi(1, 3).is_none());
        assert!(<FieldElement as Scalar>::cos_sin_pi(2, 6).is_none());
        assert!(<FieldElement as Scalar>::cos_sin_pi(2, 8).is_some());
    }

    #[test]
    fn float_trig_quarter_turns_are_exact() {
        assert_eq!(f64::cos_sin_pi(1, 2), Some((0.0, 1.0)));
        assert_eq!(f64::cos_sin_pi(3, 1), Some((-1.0, 0.0)));
        let (c, s) = f64::cos_sin_pi(1, 3).unwrap();
        assert!((c - 0.5).abs() < 1e-15 && (s - 0.75f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn float_keys_cover_neighbours() {
        let x = 0.5f64;
        let y = 0.5 + 1e-12;
        let kx = x.keys();
        let ky = y.keys();
        assert!(ky.iter().any(|k| kx[0] == *k) || kx.iter().any(|k| ky[0] == *k));
    }

    #[test]
    fn float_rank_threshold() {
        let rows = [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 1.0, 1e-12, 0.0],
        ];
        assert!(!f64::independent_rows(&rows, &[0.0; 4]));
        let rows = [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 1.0, 1e-3, 0.0],
        ];
        assert!(f64::independent_rows(&rows, &[0.0; 4]));
    }
}
