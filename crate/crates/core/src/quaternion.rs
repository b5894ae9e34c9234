//! Quaternions over a [`Scalar`] backend.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::algebraic::{FieldElement, Sign};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Quaternion<S> {
    pub w: S,
    pub x: S,
    pub y: S,
    pub z: S,
}

pub type ExactQuaternion = Quaternion<FieldElement>;
pub type FloatQuaternion = Quaternion<f64>;

impl<S: Scalar> Quaternion<S> {
    pub fn new(w: S, x: S, y: S, z: S) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn from_array([w, x, y, z]: [S; 4]) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn to_array(&self) -> [S; 4] {
        [
            self.w.clone(),
            self.x.clone(),
            self.y.clone(),
            self.z.clone(),
        ]
    }

    pub fn coords(&self) -> [&S; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    pub fn one() -> Self {
        Self::new(S::one(), S::zero(), S::zero(), S::zero())
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero(), S::zero(), S::zero())
    }

    pub fn i() -> Self {
        Self::new(S::zero(), S::one(), S::zero(), S::zero())
    }

    pub fn j() -> Self {
        Self::new(S::zero(), S::zero(), S::one(), S::zero())
    }

    pub fn k() -> Self {
        Self::new(S::zero(), S::zero(), S::zero(), S::one())
    }

    pub fn from_ratios(parts: [(i64, i64); 4]) -> Self {
        let [w, x, y, z] = parts.map(|(n, d)| S::from_ratio(n, d));
        Self::new(w, x, y, z)
    }

    /// `cos(πn/d) + sin(πn/d)·k`, if representable in the backend.
    pub fn k_rotation(num: i64, den: i64) -> Option<Self> {
        let (c, s) = S::cos_sin_pi(num, den)?;
        Some(Self::new(c, S::zero(), S::zero(), s))
    }

    /// `cos(πn/d)·i + sin(πn/d)·j`, if representable in the backend.
    pub fn ij_rotation(num: i64, den: i64) -> Option<Self> {
        let (c, s) = S::cos_sin_pi(num, den)?;
        Some(Self::new(S::zero(), c, s, S::zero()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a1, b1, c1, d1) = (&self.w, &self.x, &self.y, &self.z);
        let (a2, b2, c2, d2) = (&o.w, &o.x, &o.y, &o.z);
        let w = a1
            .mul(a2)
            .sub(&b1.mul(b2))
            .sub(&c1.mul(c2))
            .sub(&d1.mul(d2));
        let x = a1
            .mul(b2)
            .add(&b1.mul(a2))
            .add(&c1.mul(d2))
            .sub(&d1.mul(c2));
        let y = a1
            .mul(c2)
            .sub(&b1.mul(d2))
            .add(&c1.mul(a2))
            .add(&d1.mul(b2));
        let z = a1
            .mul(d2)
            .add(&b1.mul(c2))
            .sub(&c1.mul(b2))
            .add(&d1.mul(a2));
        Self::new(w, x, y, z)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.w.clone(), self.x.neg(), self.y.neg(), self.z.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.w.neg(), self.x.neg(), self.y.neg(), self.z.neg())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            self.w.add(&o.w),
            self.x.add(&o.x),
            self.y.add(&o.y),
            self.z.add(&o.z),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(
            self.w.sub(&o.w),
            self.x.sub(&o.x),
            self.y.sub(&o.y),
            self.z.sub(&o.z),
        )
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.w.mul(s), self.x.mul(s), self.y.mul(s), self.z.mul(s))
    }

    pub fn dot(&self, o: &Self) -> S {
        self.w
            .mul(&o.w)
            .add(&self.x.mul(&o.x))
            .add(&self.y.mul(&o.y))
            .add(&self.z.mul(&o.z))
    }

    pub fn norm_sq(&self) -> S {
        self.dot(self)
    }

    /// Cosine of the geodesic distance from 1 to a unit quaternion.
    pub fn geodesic_cos(&self) -> S {
        self.w.clone()
    }

    /// Inverse of a unit quaternion.
    pub fn unit_inverse(&self) -> Self {
        self.conj()
    }

    pub fn is_unit(&self) -> bool {
        self.norm_sq().approx_eq(&S::one())
    }

    pub fn approx_eq(&self, o: &Self) -> bool {
        self.coords()
            .iter()
            .zip(o.coords())
            .all(|(a, b)| a.approx_eq(b))
    }

    pub fn is_one(&self) -> bool {
        self.approx_eq(&Self::one())
    }

    /// Sign of the first coordinate that is not zero.
    pub fn leading_sign(&self) -> Sign {
        self.coords()
            .iter()
            .map(|c| c.sign())
            .find(|s| *s != Sign::Zero)
            .unwrap_or(Sign::Zero)
    }

    /// Representative of `{q, -q}` whose first nonzero coordinate is positive.
    pub fn canonical_sign(&self) -> Self {
        if self.leading_sign() == Sign::Negative {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn cmp_lex(&self, o: &Self) -> Ordering {
        self.coords()
            .iter()
            .zip(o.coords())
            .map(|(a, b)| a.cmp_value(b))
            .find(|c| *c != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    }

    pub fn to_f64(&self) -> Quaternion<f64> {
        Quaternion::new(
            self.w.to_f64(),
            self.x.to_f64(),
            self.y.to_f64(),
            self.z.to_f64(),
        )
    }

    pub fn map_coords(&self, f: impl Fn(&S) -> S) -> Self {
        Self::new(f(&self.w), f(&self.x), f(&self.y), f(&self.z))
    }

    /// Candidate lookup keys; the first entry is the primary key.
    pub fn keys(&self) -> Vec<[S::Key; 4]> {
        let ks = self.coords().map(|c| c.keys());
        let mut out = Vec::new();
        for a in &ks[0] {
            for b in &ks[1] {
                for c in &ks[2] {
                    for d in &ks[3] {
                        out.push([a.clone(), b.clone(), c.clone(), d.clone()]);
                    }
                }
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Debug for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:?}, {:?}, {:?}, {:?})",
            self.w, self.x, self.y, self.z
        )
    }
}

impl fmt::Display for Quaternion<FieldElement> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; {}; {}; {}]", self.w, self.x, self.y, self.z)
    }
}

impl fmt::Display for Quaternion<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:.12}; {:.12}; {:.12}; {:.12}]",
            self.w, self.x, self.y, self.z
        )
    }
}

/// Insertion-ordered set of quaternions with tolerant lookup in the float
/// backend and exact lookup in the exact one.
#[derive(Clone, Debug)]
pub struct QuatSet<S: Scalar> {
    items: Vec<Quaternion<S>>,
    index: HashMap<[S::Key; 4], usize>,
}

impl<S: Scalar> Default for QuatSet<S> {
    fn default() -> Self {
        QuatSet {
            items: Vec::new(),
            index: HashMap::new(),
        }
    }
}

impl<S: Scalar> QuatSet<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn position(&self, q: &Quaternion<S>) -> Option<usize> {
        for key in q.keys() {
            if let Some(&i) = self.index.get(&key) {
                if self.items[i].approx_eq(q) {
                    return Some(i);
                }
            }
        }
        None
    }

    pub fn contains(&self, q: &Quaternion<S>) -> bool {
        self.position(q).is_some()
    }

    /// Inserts `q` unless an equal element is present; returns its index and
    /// whether it was new.
    pub fn insert(&mut self, q: Quaternion<S>) -> (usize, bool) {
        if let Some(i) = self.position(&q) {
            return (i, false);
        }
        let i = self.items.len();
        let key = q.keys().swap_remove(0);
        self.index.insert(key, i);
        self.items.push(q);
        (i, true)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Quaternion<S>] {
        &self.items
    }

    pub fn into_sorted(mut self) -> Vec<Quaternion<S>> {
        self.items.sort_by(|a, b| a.cmp_lex(b));
        self.items
    }
}

impl<S: Scalar> FromIterator<Quaternion<S>> for QuatSet<S> {
    fn from_iter<I: IntoIterator<Item = Quaternion<S>>>(iter: I) -> Self {
        let mut set = QuatSet::new();
        for q in iter {
            set.insert(q);
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = ExactQuaternion;

    fn half_tau_element() -> Q {
        // ((τ-1) + τi + j)/2
        Q::new(
            FieldElement::from_ratios([(-1, 4), (0, 1), (1, 4), (0, 1)]),
            FieldElement::from_ratios([(1, 4), (0, 1), (1, 4), (0, 1)]),
            FieldElement::from_ratios([(1, 2), (0, 1), (0, 1), (0, 1)]),
            FieldElement::zero(),
        )
    }

    #[test]
    fn hamilton_relations() {
        assert_eq!(Q::i().mul(&Q::j()), Q::k());
        assert_eq!(Q::j().mul(&Q::k()), Q::i());
        assert_eq!(Q::k().mul(&Q::i()), Q::j());
        assert_eq!(Q::i().mul(&Q::i()), Q::one().neg());
        let q = half_tau_element();
        assert_eq!(q.mul(&Q::one()), q);
    }

    #[test]
    fn icosian_element_is_unit() {
        let p = half_tau_element();
        assert_eq!(p.mul(&p.conj()), Q::one());
        assert!(p.is_unit());
    }

    #[test]
    fn geodesic_cosines() {
        let q = Q::from_ratios([(1, 2); 4]);
        assert_eq!(
            q.geodesic_cos(),
            FieldElement::from_ratios([(1, 2), (0, 1), (0, 1), (0, 1)])
        );
        let r = Q::k_rotation(1, 4).unwrap();
        let s = Q::new(
            r.w.clone(),
            r.w.clone(),
            FieldElement::zero(),
            FieldElement::zero(),
        );
        assert_eq!(
            Q::one().dot(&s).square(),
            FieldElement::from_ratios([(1, 2), (0, 1), (0, 1), (0, 1)])
        );
        assert_eq!(Q::i().conj(), Q::i().neg());
    }

    #[test]
    fn canonical_sign_identifies_antipodes() {
        let q = Q::from_ratios([(0, 1), (-1, 2), (1, 2), (1, 2)]).add(&Q::zero());
        assert_eq!(q.canonical_sign(), q.neg().canonical_sign());
        assert_eq!(q.canonical_sign().canonical_sign(), q.canonical_sign());
        assert_ne!(q.canonical_sign(), q);
    }

    #[test]
    fn float_set_dedups_near_duplicates() {
        let mut set: QuatSet<f64> = QuatSet::new();
        set.insert(Quaternion::new(0.5, 0.5, 0.5, 0.5));
        let (_, fresh) = set.insert(Quaternion::new(0.5 + 1e-12, 0.5, 0.5 - 1e-12, 0.5));
        assert!(!fresh);
        let (_, fresh) = set.insert(Quaternion::new(0.5, -0.5, 0.5, 0.5));
        assert!(fresh);
        assert_eq!(set.len(), 2);
    }
}
