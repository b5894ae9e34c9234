//! Finite subgroups of the unit quaternions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GroupError;
use crate::quaternion::{QuatSet, Quaternion};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BinaryLabel {
    /// Cyclic group of the given order on the k-axis.
    C(u32),
    /// Binary dihedral group of order 4n.
    D(u32),
    T,
    O,
    I,
    IDagger,
}

impl fmt::Display for BinaryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryLabel::C(k) => write!(f, "C{k}"),
            BinaryLabel::D(n) => write!(f, "D{n}"),
            BinaryLabel::T => write!(f, "T"),
            BinaryLabel::O => write!(f, "O"),
            BinaryLabel::I => write!(f, "I"),
            BinaryLabel::IDagger => write!(f, "I†"),
        }
    }
}

impl BinaryLabel {
    pub fn order(&self) -> usize {
        match *self {
            BinaryLabel::C(k) => k as usize,
            BinaryLabel::D(n) => 4 * n as usize,
            BinaryLabel::T => 24,
            BinaryLabel::O => 48,
            BinaryLabel::I | BinaryLabel::IDagger => 120,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BinaryGroup<S: Scalar> {
    label: BinaryLabel,
    elements: Vec<Quaternion<S>>,
    set: QuatSet<S>,
}

fn unsupported(label: BinaryLabel) -> GroupError {
    GroupError::UnsupportedExact(label.to_string())
}

fn cyclic_elements<S: Scalar>(k: u32) -> Option<Vec<Quaternion<S>>> {
    (0..k as i64)
        .map(|j| Quaternion::k_rotation(2 * j, k as i64))
        .collect()
}

fn dihedral_elements<S: Scalar>(n: u32) -> Option<Vec<Quaternion<S>>> {
    let mut out = cyclic_elements(2 * n)?;
    for j in 0..2 * n as i64 {
        out.push(Quaternion::ij_rotation(j, n as i64)?);
    }
    Some(out)
}

fn tetrahedral_elements<S: Scalar>() -> Vec<Quaternion<S>> {
    let mut out = dihedral_elements(2).expect("quarter turns are always representable");
    for bits in 0..16u32 {
        let c = |b: u32| S::from_ratio(if bits & (1 << b) == 0 { 1 } else { -1 }, 2);
        out.push(Quaternion::new(c(0), c(1), c(2), c(3)));
    }
    out
}

fn octahedral_elements<S: Scalar>() -> Vec<Quaternion<S>> {
    let mut out = tetrahedral_elements();
    let h = S::sqrt2().mul(&S::from_ratio(1, 2));
    for a in 0..4 {
        for b in a + 1..4 {
            for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut c = [S::zero(), S::zero(), S::zero(), S::zero()];
                c[a] = h.mul(&S::from_ratio(sa, 1));
                c[b] = h.mul(&S::from_ratio(sb, 1));
                out.push(Quaternion::from_array(c));
            }
        }
    }
    out
}

/// Coset representatives of the tetrahedral group in the icosians, built from
/// `root5` (either √5 or -√5).
pub fn icosian_coset_representatives<S: Scalar>(root5: &S) -> Vec<Quaternion<S>> {
    let half = S::from_ratio(1, 2);
    let tau = half.mul(&S::one().add(root5));
    let tm1 = tau.sub(&S::one());
    let one = S::one();
    let raw = [
        [tm1.clone(), tau.clone(), one.clone(), S::zero()],
        [tau.neg(), one.clone(), tm1.clone(), S::zero()],
        [tau.neg(), one.neg(), tm1.neg(), S::zero()],
        [tm1.clone(), tau.neg(), one.neg(), S::zero()],
    ];
    let mut reps = vec![Quaternion::one()];
    reps.extend(
        raw.into_iter()
            .map(|c| Quaternion::from_array(c).scale(&half)),
    );
    reps
}

fn icosian_elements<S: Scalar>(root5: &S) -> Vec<Quaternion<S>> {
    let t = tetrahedral_elements::<S>();
    let mut out = Vec::with_capacity(120);
    for g in icosian_coset_representatives(root5) {
        out.extend(t.iter().map(|x| g.mul(x)));
    }
    out
}

impl<S: Scalar> BinaryGroup<S> {
    pub fn build(label: BinaryLabel) -> Result<Self, GroupError> {
        let elements = match label {
            BinaryLabel::C(0) | BinaryLabel::D(0) => {
                return Err(GroupError::invalid(
                    label.to_string(),
                    "order must be positive",
                ))
            }
            BinaryLabel::C(k) => cyclic_elements(k).ok_or_else(|| unsupported(label))?,
            BinaryLabel::D(n) => dihedral_elements(n).ok_or_else(|| unsupported(label))?,
            BinaryLabel::T => tetrahedral_elements(),
            BinaryLabel::O => octahedral_elements(),
            BinaryLabel::I => icosian_elements(&S::sqrt5()),
            BinaryLabel::IDagger => icosian_elements(&S::sqrt5().neg()),
        };
        Ok(Self::from_elements(label, elements))
    }

    pub fn from_elements(label: BinaryLabel, elements: Vec<Quaternion<S>>) -> Self {
        let set: QuatSet<S> = elements.into_iter().collect();
        let elements = set.clone().into_sorted();
        let set = elements.iter().cloned().collect();
        BinaryGroup {
            label,
            elements,
            set,
        }
    }

    pub fn label(&self) -> BinaryLabel {
        self.label
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Quaternion<S>] {
        &self.elements
    }

    pub fn contains(&self, q: &Quaternion<S>) -> bool {
        self.set.contains(q)
    }

    /// Index of `q` in [`elements`](Self::elements).
    pub fn index_of(&self, q: &Quaternion<S>) -> Option<usize> {
        self.set.position(q)
    }

    /// Checks identity, closure and inverses.
    pub fn is_closed(&self) -> bool {
        if !self.contains(&Quaternion::one()) {
            return false;
        }
        self.elements.iter().all(|a| {
            self.contains(&a.conj()) && self.elements.iter().all(|b| self.contains(&a.mul(b)))
        })
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.elements.iter().all(|q| other.contains(q))
    }

    /// A small generating set, chosen greedily.
    pub fn generators(&self) -> Vec<Quaternion<S>> {
        let mut gens = Vec::new();
        let mut span: QuatSet<S> = std::iter::once(Quaternion::one()).collect();
        for g in &self.elements {
            if span.contains(g) {
                continue;
            }
            gens.push(g.clone());
            span = closure(&gens);
            if span.len() == self.order() {
                break;
            }
        }
        gens
    }

    pub fn intersection_size(&self, other: &Self) -> usize {
        self.elements.iter().filter(|q| other.contains(q)).count()
    }

    /// Image under √5 ↦ -√5, applied coordinatewise.
    pub fn sqrt5_conjugate(&self) -> Option<Self> {
        let label = match self.label {
            BinaryLabel::I => BinaryLabel::IDagger,
            BinaryLabel::IDagger => BinaryLabel::I,
            other => other,
        };
        let elements = self
            .elements
            .iter()
            .map(|q| sqrt5_flip(q))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_elements(label, elements))
    }
}

/// Image of a quaternion under √5 ↦ -√5 (exact backend only).
pub fn sqrt5_flip<S: Scalar>(q: &Quaternion<S>) -> Option<Quaternion<S>> {
    Some(Quaternion::new(
        q.w.conj_sqrt5()?,
        q.x.conj_sqrt5()?,
        q.y.conj_sqrt5()?,
        q.z.conj_sqrt5()?,
    ))
}

/// Closure of a set of unit quaternions under multiplication.
pub fn closure<S: Scalar>(gens: &[Quaternion<S>]) -> QuatSet<S> {
    let mut set: QuatSet<S> = std::iter::once(Quaternion::one()).collect();
    let mut frontier = vec![Quaternion::one()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul(g);
            if set.insert(y.clone()).1 {
                frontier.push(y);
            }
        }
    }
    set
}

/// True when `h` is a normal subgroup of `g`.
pub fn normal_in<S: Scalar>(h: &BinaryGroup<S>, g: &BinaryGroup<S>) -> Result<bool, GroupError> {
    if !h.is_subset_of(g) {
        return Err(GroupError::NotASubgroup(format!(
            "{} in {}",
            h.label, g.label
        )));
    }
    Ok(g.generators().iter().all(|x| {
        let xi = x.conj();
        h.elements().iter().all(|y| h.contains(&x.mul(y).mul(&xi)))
    }))
}

/// Left cosets `xH` of `h` in `g`, in order of their first element.
pub fn cosets<S: Scalar>(
    g: &BinaryGroup<S>,
    h: &BinaryGroup<S>,
) -> Result<Vec<Vec<Quaternion<S>>>, GroupError> {
    let index = coset_index(g, h)?;
    let count = index.iter().copied().max().map_or(0, |m| m + 1);
    let mut out = vec![Vec::new(); count];
    for (q, &c) in g.elements().iter().zip(&index) {
        out[c].push(q.clone());
    }
    Ok(out)
}

/// For each element of `g` (in sorted order), the number of its left coset
/// modulo `h`. Cosets are numbered in order of first appearance.
pub fn coset_index<S: Scalar>(
    g: &BinaryGroup<S>,
    h: &BinaryGroup<S>,
) -> Result<Vec<usize>, GroupError> {
    if !h.is_subset_of(g) {
        return Err(GroupError::NotASubgroup(format!(
            "{} in {}",
            h.label, g.label
        )));
    }
    let mut index = vec![usize::MAX; g.order()];
    let mut next = 0;
    for (i, x) in g.elements().iter().enumerate() {
        if index[i] != usize::MAX {
            continue;
        }
        for y in h.elements() {
            let j = g
                .index_of(&x.mul(y))
                .ok_or_else(|| GroupError::NotASubgroup(format!("{} not closed", g.label)))?;
            index[j] = next;
        }
        next += 1;
    }
    Ok(index)
}
