//! Finite subgroups of O(4) from their Du Val family data.
//!
//! A preserving isometry is stored as a pair `(a, b)` acting by `q ↦ a q b̄`;
//! a reversing one acts by `q ↦ a q̄ b`. Pairs are taken up to a common sign.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::binary_groups::{
    closure, coset_index, icosian_coset_representatives, normal_in, BinaryGroup, BinaryLabel,
};
use crate::error::{GroupError, SpecParseError};
use crate::linalg::rank;
use crate::quaternion::Quaternion;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Preserving,
    Reversing,
}

#[derive(Clone, PartialEq)]
pub struct Isometry<S: Scalar> {
    chirality: Chirality,
    a: Quaternion<S>,
    b: Quaternion<S>,
}

impl<S: Scalar> Isometry<S> {
    pub fn new(chirality: Chirality, a: Quaternion<S>, b: Quaternion<S>) -> Self {
        let (a, b) = if a.leading_sign() == crate::algebraic::Sign::Negative {
            (a.neg(), b.neg())
        } else {
            (a, b)
        };
        Isometry { chirality, a, b }
    }

    pub fn preserving(a: Quaternion<S>, b: Quaternion<S>) -> Self {
        Self::new(Chirality::Preserving, a, b)
    }

    pub fn reversing(a: Quaternion<S>, b: Quaternion<S>) -> Self {
        Self::new(Chirality::Reversing, a, b)
    }

    pub fn identity() -> Self {
        Self::preserving(Quaternion::one(), Quaternion::one())
    }

    pub fn chirality(&self) -> Chirality {
        self.chirality
    }

    pub fn is_preserving(&self) -> bool {
        self.chirality == Chirality::Preserving
    }

    pub fn pair(&self) -> (&Quaternion<S>, &Quaternion<S>) {
        (&self.a, &self.b)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        use Chirality::*;
        let (a, b, c, d) = (&self.a, &self.b, &other.a, &other.b);
        match (self.chirality, other.chirality) {
            (Preserving, Preserving) => Self::preserving(a.mul(c), b.mul(d)),
            (Preserving, Reversing) => Self::reversing(a.mul(c), d.mul(&b.conj())),
            (Reversing, Preserving) => Self::reversing(a.mul(d), c.conj().mul(b)),
            (Reversing, Reversing) => Self::preserving(a.mul(&d.conj()), b.conj().mul(c)),
        }
    }

    pub fn inverse(&self) -> Self {
        match self.chirality {
            Chirality::Preserving => Self::preserving(self.a.conj(), self.b.conj()),
            Chirality::Reversing => Self::reversing(self.b.clone(), self.a.clone()),
        }
    }

    pub fn apply(&self, q: &Quaternion<S>) -> Quaternion<S> {
        match self.chirality {
            Chirality::Preserving => self.a.mul(q).mul(&self.b.conj()),
            Chirality::Reversing => self.a.mul(&q.conj()).mul(&self.b),
        }
    }

    pub fn image_of_one(&self) -> Quaternion<S> {
        match self.chirality {
            Chirality::Preserving => self.a.mul(&self.b.conj()),
            Chirality::Reversing => self.a.mul(&self.b),
        }
    }

    /// Matrix in the basis 1, i, j, k; entry `[row][col]`.
    pub fn matrix(&self) -> [[S; 4]; 4] {
        let basis = [
            Quaternion::one(),
            Quaternion::i(),
            Quaternion::j(),
            Quaternion::k(),
        ];
        let cols = basis.map(|e| self.apply(&e).to_array());
        std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone()))
    }

    pub fn trace(&self) -> S {
        let m = self.matrix();
        m[0][0].add(&m[1][1]).add(&m[2][2]).add(&m[3][3])
    }

    pub fn approx_eq(&self, o: &Self) -> bool {
        self.chirality == o.chirality && self.a.approx_eq(&o.a) && self.b.approx_eq(&o.b)
    }

    fn keys(&self) -> Vec<IsoKey<S>> {
        let ka = self.a.keys();
        let kb = self.b.keys();
        let mut out = Vec::with_capacity(ka.len() * kb.len());
        for x in &ka {
            for y in &kb {
                out.push((self.chirality, x.clone(), y.clone()));
            }
        }
        out
    }

    pub fn cmp_canonical(&self, o: &Self) -> std::cmp::Ordering {
        self.chirality
            .cmp(&o.chirality)
            .then_with(|| self.a.cmp_lex(&o.a))
            .then_with(|| self.b.cmp_lex(&o.b))
    }

    pub fn to_f64(&self) -> Isometry<f64> {
        Isometry::new(self.chirality, self.a.to_f64(), self.b.to_f64())
    }
}

impl<S: Scalar> fmt::Debug for Isometry<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.chirality {
            Chirality::Preserving => "P",
            Chirality::Reversing => "R",
        };
        write!(f, "{tag}({:?}, {:?})", self.a, self.b)
    }
}

type IsoKey<S> = (Chirality, [<S as Scalar>::Key; 4], [<S as Scalar>::Key; 4]);

#[derive(Clone, Debug)]
pub struct IsometrySet<S: Scalar> {
    items: Vec<Isometry<S>>,
    index: HashMap<IsoKey<S>, usize>,
}

impl<S: Scalar> Default for IsometrySet<S> {
    fn default() -> Self {
        IsometrySet {
            items: Vec::new(),
            index: HashMap::new(),
        }
    }
}

impl<S: Scalar> IsometrySet<S> {
    pub fn position(&self, g: &Isometry<S>) -> Option<usize> {
        g.keys().into_iter().find_map(|k| {
            self.index
                .get(&k)
                .copied()
                .filter(|&i| self.items[i].approx_eq(g))
        })
    }

    pub fn contains(&self, g: &Isometry<S>) -> bool {
        self.position(g).is_some()
    }

    pub fn insert(&mut self, g: Isometry<S>) -> bool {
        if self.contains(&g) {
            return false;
        }
        let key = g.keys().swap_remove(0);
        self.index.insert(key, self.items.len());
        self.items.push(g);
        true
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Isometry<S>] {
        &self.items
    }
}

impl<S: Scalar> FromIterator<Isometry<S>> for IsometrySet<S> {
    fn from_iter<I: IntoIterator<Item = Isometry<S>>>(iter: I) -> Self {
        let mut set = IsometrySet::default();
        for g in iter {
            set.insert(g);
        }
        set
    }
}

/// Guard against runaway closures caused by bad input.
const MAX_GROUP_ORDER: usize = 1 << 20;

/// Closure of a set of isometries under composition.
pub fn isometry_closure<S: Scalar>(gens: &[Isometry<S>]) -> Option<IsometrySet<S>> {
    let mut set: IsometrySet<S> = std::iter::once(Isometry::identity()).collect();
    let mut frontier = vec![Isometry::identity()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.compose(g);
            if set.insert(y.clone()) {
                if set.len() > MAX_GROUP_ORDER {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    Some(set)
}

// ---------------------------------------------------------------------------
// Family registry and group specifications

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
}

pub const PARAM_NAMES: [&str; 6] = ["m", "n", "r", "s", "h", "k"];

impl Params {
    pub fn get(&self, name: &str) -> Option<i64> {
        match name {
            "m" => self.m,
            "n" => self.n,
            "r" => self.r,
            "s" => self.s,
            "h" => self.h,
            "k" => self.k,
            _ => None,
        }
    }

    pub fn slot(&mut self, name: &str) -> Option<&mut Option<i64>> {
        match name {
            "m" => Some(&mut self.m),
            "n" => Some(&mut self.n),
            "r" => Some(&mut self.r),
            "s" => Some(&mut self.s),
            "h" => Some(&mut self.h),
            "k" => Some(&mut self.k),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        PARAM_NAMES.iter().all(|p| self.get(p).is_none())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyInfo {
    pub id: &'static str,
    /// Part of the classification table the family comes from (1 to 4).
    pub part: u8,
    pub params: &'static [&'static str],
    pub reversing: bool,
    pub fibering: bool,
}

const fn fam(
    id: &'static str,
    part: u8,
    params: &'static [&'static str],
    fibering: bool,
) -> FamilyInfo {
    FamilyInfo {
        id,
        part,
        params,
        reversing: part >= 3,
        fibering,
    }
}

const MNRS: &[&str] = &["m", "n", "r", "s"];
const MN: &[&str] = &["m", "n"];
const M: &[&str] = &["m"];
const N: &[&str] = &["n"];
const NONE: &[&str] = &[];

pub static FAMILIES: &[FamilyInfo] = &[
    fam("1", 1, MNRS, true),
    fam("2", 1, MN, true),
    fam("3", 1, MN, true),
    fam("4", 1, MN, true),
    fam("5", 1, M, true),
    fam("6", 1, M, true),
    fam("7", 1, M, true),
    fam("8", 1, M, true),
    fam("9", 1, M, true),
    fam("10", 1, MN, true),
    fam("11", 1, MNRS, true),
    fam("11a", 1, MN, true),
    fam("12", 1, MN, true),
    fam("13", 1, MN, true),
    fam("14", 1, M, true),
    fam("15", 1, M, true),
    fam("16", 1, M, true),
    fam("17", 1, M, true),
    fam("18", 1, M, true),
    fam("19", 1, M, true),
    fam("20", 1, NONE, false),
    fam("21", 1, NONE, false),
    fam("22", 1, NONE, false),
    fam("23", 1, NONE, false),
    fam("24", 1, NONE, false),
    fam("25", 1, NONE, false),
    fam("26", 1, NONE, false),
    fam("27", 1, NONE, false),
    fam("28", 1, NONE, false),
    fam("29", 1, NONE, false),
    fam("30", 1, NONE, false),
    fam("31", 1, NONE, false),
    fam("32", 1, NONE, false),
    fam("1'", 2, MNRS, true),
    fam("11'", 2, MNRS, true),
    fam("11a'", 2, MN, true),
    fam("21'", 2, NONE, false),
    fam("26'", 2, NONE, false),
    fam("26''", 2, NONE, false),
    fam("31'", 2, NONE, false),
    fam("32'", 2, NONE, false),
    fam("33", 3, &["n", "r", "s", "h"], true),
    fam("34", 3, N, true),
    fam("35", 3, &["n", "r", "s", "h", "k"], true),
    fam("35a", 3, N, true),
    fam("36", 3, &["n", "r", "s", "h", "k"], true),
    fam("37", 3, N, true),
    fam("38", 3, N, true),
    fam("39", 3, NONE, false),
    fam("40", 3, NONE, false),
    fam("41", 3, NONE, false),
    fam("42", 3, NONE, false),
    fam("43", 3, NONE, false),
    fam("44", 3, NONE, false),
    fam("45", 3, NONE, false),
    fam("46", 3, NONE, false),
    fam("47", 3, NONE, false),
    fam("48", 3, NONE, false),
    fam("49", 3, NONE, false),
    fam("50", 3, NONE, false),
    fam("51", 3, NONE, false),
    fam("35ap", 4, N, true),
    fam("35am", 4, N, true),
    fam("39p", 4, NONE, false),
    fam("39m", 4, NONE, false),
    fam("40p", 4, NONE, false),
    fam("40m", 4, NONE, false),
    fam("44p", 4, NONE, false),
    fam("44m", 4, NONE, false),
    fam("44pm", 4, NONE, false),
    fam("44mp", 4, NONE, false),
    fam("49p", 4, NONE, false),
    fam("49m", 4, NONE, false),
    fam("51p", 4, NONE, false),
    fam("51m", 4, NONE, false),
];

pub fn family_info(id: &str) -> Option<&'static FamilyInfo> {
    FAMILIES.iter().find(|f| f.id == id)
}

/// A Du Val family together with its parameters, e.g.
/// `duval:33(n=2,r=4,s=1,h=0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: String,
    #[serde(default, skip_serializing_if = "Params::is_empty")]
    pub params: Params,
}

impl GroupSpec {
    pub fn new(family: &str) -> Self {
        GroupSpec {
            family: normalize_family_id(family),
            params: Params::default(),
        }
    }

    pub fn with(mut self, name: &str, value: i64) -> Self {
        if let Some(slot) = self.params.slot(name) {
            *slot = Some(value);
        }
        self
    }

    pub fn info(&self) -> Option<&'static FamilyInfo> {
        family_info(&self.family)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "duval:{}", self.family)?;
        let set: Vec<String> = PARAM_NAMES
            .iter()
            .filter_map(|p| self.params.get(p).map(|v| format!("{p}={v}")))
            .collect();
        if !set.is_empty() {
            write!(f, "({})", set.join(","))?;
        }
        Ok(())
    }
}

pub fn normalize_family_id(id: &str) -> String {
    id.trim()
        .replace('″', "''")
        .replace('′', "'")
        .replace('"', "''")
        .to_ascii_lowercase()
}

impl FromStr for GroupSpec {
    type Err = SpecParseError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |position: usize, message: &str| SpecParseError {
            position,
            message: message.to_string(),
        };
        let chars: Vec<(usize, char)> = input.char_indices().collect();
        let at = |i: usize| chars.get(i).map_or(input.len(), |c| c.0);
        let prefix = "duval:";
        let mut i = 0;
        if input.to_ascii_lowercase().starts_with(prefix) {
            i = prefix.len();
        }
        let start = i;
        while i < chars.len() && !matches!(chars[i].1, '(' | ' ') {
            let c = chars[i].1;
            if !(c.is_ascii_alphanumeric() || matches!(c, '\'' | '′' | '″' | '"')) {
                return Err(err(at(i), "unexpected character in family id"));
            }
            i += 1;
        }
        if i == start {
            return Err(err(at(i), "missing family id"));
        }
        let raw: String = chars[start..i].iter().map(|c| c.1).collect();
        let family = normalize_family_id(&raw);
        if family_info(&family).is_none() {
            return Err(err(at(start), &format!("unknown family {raw:?}")));
        }
        let mut spec = GroupSpec {
            family,
            params: Params::default(),
        };
        if i == chars.len() {
            return Ok(spec);
        }
        if chars[i].1 != '(' {
            return Err(err(at(i), "expected '('"));
        }
        i += 1;
        loop {
            while i < chars.len() && chars[i].1 == ' ' {
                i += 1;
            }
            let name_pos = i;
            let name: String = chars
                .get(i)
                .map(|c| c.1.to_string())
                .ok_or_else(|| err(at(i), "expected parameter name"))?;
            let slot = spec.params.slot(&name).ok_or_else(|| {
                err(
                    at(name_pos),
                    "unknown parameter (expected one of m,n,r,s,h,k)",
                )
            })?;
            if slot.is_some() {
                return Err(err(at(name_pos), "duplicate parameter"));
            }
            i += 1;
            if chars.get(i).map(|c| c.1) != Some('=') {
                return Err(err(at(i), "expected '='"));
            }
            i += 1;
            let num_start = i;
            if chars.get(i).map(|c| c.1) == Some('-') {
                i += 1;
            }
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[num_start..i].iter().map(|c| c.1).collect();
            let value: i64 = text
                .parse()
                .map_err(|_| err(at(num_start), "expected an integer"))?;
            *slot = Some(value);
            while i < chars.len() && chars[i].1 == ' ' {
                i += 1;
            }
            match chars.get(i).map(|c| c.1) {
                Some(',') => i += 1,
                Some(')') => {
                    i += 1;
                    break;
                }
                _ => return Err(err(at(i), "expected ',' or ')'")),
            }
        }
        if i != chars.len() {
            return Err(err(at(i), "trailing characters"));
        }
        Ok(spec)
    }
}

// ---------------------------------------------------------------------------
// Goursat data

/// `(L/l; R/r; φ)` with φ given on a set of coset representatives
/// that generate `L` modulo `l`.
#[derive(Clone, Debug)]
pub struct GoursatDatum<S: Scalar> {
    pub big_l: BinaryGroup<S>,
    pub small_l: BinaryGroup<S>,
    pub big_r: BinaryGroup<S>,
    pub small_r: BinaryGroup<S>,
    pub phi: Vec<(Quaternion<S>, Quaternion<S>)>,
}

impl<S: Scalar> GoursatDatum<S> {
    /// Generators of the fibered product in `L × R`.
    pub fn pair_generators(&self) -> Vec<(Quaternion<S>, Quaternion<S>)> {
        let mut out = Vec::new();
        for x in self.small_l.generators() {
            out.push((x, Quaternion::one()));
        }
        for y in self.small_r.generators() {
            out.push((Quaternion::one(), y));
        }
        out.extend(self.phi.iter().cloned());
        out
    }

    /// `|R|·|l|/2`.
    pub fn expected_order(&self) -> usize {
        self.big_r.order() * self.small_l.order() / 2
    }
}

#[derive(Clone, Debug)]
pub struct Construction<S: Scalar> {
    pub datum: GoursatDatum<S>,
    /// `(a, b)` of an orientation-reversing element `q ↦ a q̄ b`.
    pub extension: Option<(Quaternion<S>, Quaternion<S>)>,
}

fn need(spec: &GroupSpec, name: &str) -> Result<i64, GroupError> {
    spec.params
        .get(name)
        .ok_or_else(|| GroupError::invalid(&spec.family, format!("missing parameter {name}")))
}

fn positive(spec: &GroupSpec, name: &str) -> Result<u32, GroupError> {
    let v = need(spec, name)?;
    if v < 1 {
        return Err(GroupError::invalid(
            &spec.family,
            format!("{name} must be at least 1"),
        ));
    }
    u32::try_from(v).map_err(|_| GroupError::invalid(&spec.family, format!("{name} too large")))
}

fn odd(spec: &GroupSpec, name: &str) -> Result<u32, GroupError> {
    let v = positive(spec, name)?;
    if v % 2 == 0 {
        return Err(GroupError::invalid(
            &spec.family,
            format!("{name} must be odd"),
        ));
    }
    Ok(v)
}

fn in_range(spec: &GroupSpec, name: &str, r: i64) -> Result<i64, GroupError> {
    let v = need(spec, name)?;
    if !(0..r).contains(&v) {
        return Err(GroupError::invalid(
            &spec.family,
            format!("need 0 <= {name} < r"),
        ));
    }
    Ok(v)
}

fn coprime_s(spec: &GroupSpec, r: i64) -> Result<i64, GroupError> {
    let s = in_range(spec, "s", r)?;
    if s.gcd(&r) != 1 {
        return Err(GroupError::invalid(&spec.family, "gcd(s, r) must be 1"));
    }
    Ok(s)
}

fn congruence(spec: &GroupSpec, ok: bool, what: &str) -> Result<(), GroupError> {
    if ok {
        Ok(())
    } else {
        Err(GroupError::invalid(
            &spec.family,
            format!("violates {what}"),
        ))
    }
}

struct Kit<S: Scalar> {
    cache: HashMap<BinaryLabel, BinaryGroup<S>>,
}

impl<S: Scalar> Kit<S> {
    fn group(&mut self, label: BinaryLabel) -> Result<BinaryGroup<S>, GroupError> {
        if let Some(g) = self.cache.get(&label) {
            return Ok(g.clone());
        }
        let g = BinaryGroup::build(label)?;
        self.cache.insert(label, g.clone());
        Ok(g)
    }
}

fn krot<S: Scalar>(num: i64, den: i64) -> Result<Quaternion<S>, GroupError> {
    Quaternion::k_rotation(num, den)
        .ok_or_else(|| GroupError::UnsupportedExact(format!("rotation by {num}π/{den}")))
}

/// `(i + j)/√2`, an element of O outside T.
pub fn t_prime<S: Scalar>() -> Quaternion<S> {
    let h = S::sqrt2().mul(&S::from_ratio(1, 2));
    Quaternion::new(S::zero(), h.clone(), h, S::zero())
}

fn omega<S: Scalar>() -> Quaternion<S> {
    Quaternion::from_ratios([(1, 2); 4])
}

fn octa<S: Scalar>() -> Quaternion<S> {
    let h = S::sqrt2().mul(&S::from_ratio(1, 2));
    Quaternion::new(h.clone(), h, S::zero(), S::zero())
}

fn identity_phi<S: Scalar>(g: &BinaryGroup<S>) -> Vec<(Quaternion<S>, Quaternion<S>)> {
    g.generators().into_iter().map(|x| (x.clone(), x)).collect()
}

/// The automorphism of O that is the identity on T and negates the rest.
fn xi_phi<S: Scalar>(
    o: &BinaryGroup<S>,
    t: &BinaryGroup<S>,
) -> Vec<(Quaternion<S>, Quaternion<S>)> {
    o.generators()
        .into_iter()
        .map(|x| {
            let y = if t.contains(&x) { x.clone() } else { x.neg() };
            (x, y)
        })
        .collect()
}

/// Pairs `(g†, g)` generating the graph of √5-conjugation from I† to I.
fn dagger_phi<S: Scalar>(t: &BinaryGroup<S>) -> Vec<(Quaternion<S>, Quaternion<S>)> {
    let mut out = identity_phi(t);
    let plus = icosian_coset_representatives(&S::sqrt5());
    let minus = icosian_coset_representatives(&S::sqrt5().neg());
    out.push((minus[1].clone(), plus[1].clone()));
    out
}

/// Builds the Goursat datum and extension for a family.
/// Builds a datum from the labels of L, l, R, r and the generators of φ.
type DatumBuilder<'a, S> = dyn FnMut(
        BinaryLabel,
        BinaryLabel,
        BinaryLabel,
        BinaryLabel,
        Vec<(Quaternion<S>, Quaternion<S>)>,
    ) -> Result<GoursatDatum<S>, GroupError>
    + 'a;

pub fn construction<S: Scalar>(spec: &GroupSpec) -> Result<Construction<S>, GroupError> {
    use BinaryLabel::*;
    let f = spec.family.as_str();
    let info = family_info(f).ok_or_else(|| GroupError::UnknownFamily(f.to_string()))?;
    for p in PARAM_NAMES {
        if spec.params.get(p).is_some() && !info.params.contains(&p) {
            return Err(GroupError::invalid(f, format!("unexpected parameter {p}")));
        }
    }
    let mut kit = Kit::<S> {
        cache: HashMap::new(),
    };
    let one = Quaternion::<S>::one;
    let i = Quaternion::<S>::i;
    let mut datum = |bl: BinaryLabel,
                     sl: BinaryLabel,
                     br: BinaryLabel,
                     sr: BinaryLabel,
                     phi: Vec<(Quaternion<S>, Quaternion<S>)>|
     -> Result<GoursatDatum<S>, GroupError> {
        Ok(GoursatDatum {
            big_l: kit.group(bl)?,
            small_l: kit.group(sl)?,
            big_r: kit.group(br)?,
            small_r: kit.group(sr)?,
            phi,
        })
    };
    let t = BinaryGroup::<S>::build(T)?;
    let o = BinaryGroup::<S>::build(O)?;

    // Preserving families first; reversing ones reuse them below.
    let so4 = |kit_datum: &mut DatumBuilder<'_, S>,
               id: &str,
               spec: &GroupSpec|
     -> Result<GoursatDatum<S>, GroupError> {
        match id {
            "1" | "1'" => {
                let primed = id == "1'";
                let (m, n) = if primed {
                    (odd(spec, "m")?, odd(spec, "n")?)
                } else {
                    (positive(spec, "m")?, positive(spec, "n")?)
                };
                let r = positive(spec, "r")?;
                let s = lift_s(coprime_s(spec, r as i64)?, r as i64, primed);
                let (sl, sr) = if primed {
                    (C(m), C(n))
                } else {
                    (C(2 * m), C(2 * n))
                };
                kit_datum(
                    C(2 * m * r),
                    sl,
                    C(2 * n * r),
                    sr,
                    vec![(krot(1, (m * r) as i64)?, krot(s, (n * r) as i64)?)],
                )
            }
            "2" => {
                let (m, n) = (positive(spec, "m")?, positive(spec, "n")?);
                kit_datum(C(2 * m), C(2 * m), D(n), D(n), vec![])
            }
            "3" => {
                let (m, n) = (positive(spec, "m")?, positive(spec, "n")?);
                kit_datum(
                    C(4 * m),
                    C(2 * m),
                    D(n),
                    C(2 * n),
                    vec![(krot(1, 2 * m as i64)?, i())],
                )
            }
            "4" => {
                let (m, n) = (positive(spec, "m")?, positive(spec, "n")?);
                kit_datum(
                    C(4 * m),
                    C(2 * m),
                    D(2 * n),
                    D(n),
                    vec![(krot(1, 2 * m as i64)?, krot(1, 2 * n as i64)?)],
                )
            }
            "5" => {
                let m = positive(spec, "m")?;
                kit_datum(C(2 * m), C(2 * m), T, T, vec![])
            }
            "6" => {
                let m = positive(spec, "m")?;
                kit_datum(
                    C(6 * m),
                    C(2 * m),
                    T,
                    D(2),
                    vec![(krot(1, 3 * m as i64)?, omega())],
                )
            }
            "7" => {
                let m = positive(spec, "m")?;
                kit_datum(C(2 * m), C(2 * m), O, O, vec![])
            }
            "8" => {
                let m = positive(spec, "m")?;
                kit_datum(
                    C(4 * m),
                    C(2 * m),
                    O,
                    T,
                    vec![(krot(1, 2 * m as i64)?, octa())],
                )
            }
            "9" => {
                let m = positive(spec, "m")?;
                kit_datum(C(2 * m), C(2 * m), I, I, vec![])
            }
            "10" => {
                let (m, n) = (positive(spec, "m")?, positive(spec, "n")?);
                kit_datum(D(m), D(m), D(n), D(n), vec![])
            }
            "11" | "11'" => {
                let primed = id == "11'";
                let (m, n) = if primed {
                    (odd(spec, "m")?, odd(spec, "n")?)
                } else {
                    (positive(spec, "m")?, positive(spec, "n")?)
                };
                let r = positive(spec, "r")?;
                let s = lift_s(coprime_s(spec, r as i64)?, r as i64, primed);
                let (sl, sr) = if primed {
                    (C(m), C(n))
                } else {
                    (C(2 * m), C(2 * n))
                };
                kit_datum(
                    D(m * r),
                    sl,
                    D(n * r),
                    sr,
                    vec![
                        (krot(1, (m * r) as i64)?, krot(s, (n * r) as i64)?),
                        (i(), i()),
                    ],
                )
            }
            "11a" | "11a'" => {
                let primed = id == "11a'";
                let (m, n) = if primed {
                    (odd(spec, "m")?, odd(spec, "n")?)
                } else {
                    (positive(spec, "m")?, positive(spec, "n")?)
                };
                let (sl, sr) = if primed {
                    (C(m), C(n))
                } else {
                    (C(2 * m), C(2 * n))
                };
                kit_datum(
                    D(2 * m),
                    sl,
                    D(2 * n),
                    sr,
                    vec![(krot(1, 2 * m as i64)?, i()), (i(), krot(1, 2 * n as i64)?)],
                )
            }
            "12" => {
                let (m, n) = (positive(spec, "m")?, positive(spec, "n")?);
                kit_datum(
                    D(2 * m),
                    D(m),
                    D(2 * n),
                    D(n),
                    vec![
                        (krot(1, 2 * m as i64)?, krot(1, 2 * n as i64)?),
                        (i(), one()),
                    ],
                )
            }
            "13" => {
                let (m, n) = (positive(spec, "m")?, positive(spec, "n")?);
                kit_datum(
                    D(2 * m),
                    D(m),
                    D(n),
                    C(2 * n),
                    vec![(krot(1, 2 * m as i64)?, i()), (i(), one())],
                )
            }
            "14" => {
                let m = positive(spec, "m")?;
                kit_datum(D(m), D(m), T, T, vec![])
            }
            "15" => {
                let m = positive(spec, "m")?;
                kit_datum(D(m), D(m), O, O, vec![])
            }
            "16" => {
                let m = positive(spec, "m")?;
                kit_datum(D(m), C(2 * m), O, T, vec![(i(), t_prime())])
            }
            "17" => {
                let m = positive(spec, "m")?;
                kit_datum(
                    D(2 * m),
                    D(m),
                    O,
                    T,
                    vec![(krot(1, 2 * m as i64)?, t_prime()), (i(), one())],
                )
            }
            "18" => {
                let m = positive(spec, "m")?;
                kit_datum(
                    D(3 * m),
                    C(2 * m),
                    O,
                    D(2),
                    vec![(krot(1, 3 * m as i64)?, omega()), (i(), t_prime())],
                )
            }
            "19" => {
                let m = positive(spec, "m")?;
                kit_datum(D(m), D(m), I, I, vec![])
            }
            "20" => kit_datum(T, T, T, T, vec![]),
            "21" => kit_datum(T, C(2), T, C(2), identity_phi(&t)),
            "22" => kit_datum(T, D(2), T, D(2), identity_phi(&t)),
            "23" => kit_datum(T, T, O, O, vec![]),
            "24" => kit_datum(T, T, I, I, vec![]),
            "25" => kit_datum(O, O, O, O, vec![]),
            "26" => kit_datum(O, C(2), O, C(2), identity_phi(&o)),
            "27" => kit_datum(O, D(2), O, D(2), identity_phi(&o)),
            "28" => kit_datum(O, T, O, T, identity_phi(&o)),
            "29" => kit_datum(O, O, I, I, vec![]),
            "30" => kit_datum(I, I, I, I, vec![]),
            "31" => {
                let ico = BinaryGroup::<S>::build(I)?;
                kit_datum(I, C(2), I, C(2), identity_phi(&ico))
            }
            "32" => kit_datum(IDagger, C(2), I, C(2), dagger_phi(&t)),
            "21'" => kit_datum(T, C(1), T, C(1), identity_phi(&t)),
            "26'" => kit_datum(O, C(1), O, C(1), identity_phi(&o)),
            "26''" => kit_datum(O, C(1), O, C(1), xi_phi(&o, &t)),
            "31'" => {
                let ico = BinaryGroup::<S>::build(I)?;
                kit_datum(I, C(1), I, C(1), identity_phi(&ico))
            }
            "32'" => kit_datum(IDagger, C(1), I, C(1), dagger_phi(&t)),
            other => Err(GroupError::UnknownFamily(other.to_string())),
        }
    };

    if info.part <= 2 {
        let d = so4(&mut datum, f, spec)?;
        return Ok(Construction {
            datum: d,
            extension: None,
        });
    }

    let tp = t_prime::<S>;
    let (base, ext): (GoursatDatum<S>, (Quaternion<S>, Quaternion<S>)) = match f {
        "33" => {
            let n = positive(spec, "n")?;
            let r = positive(spec, "r")?;
            reversing_basics(spec, n, r)?;
            let (ri, s) = (r as i64, coprime_s(spec, r as i64)?);
            let h = in_range(spec, "h", ri)?;
            congruence(spec, (s * s - 1).rem_euclid(ri) == 0, "s^2 = 1 (mod r)")?;
            congruence(
                spec,
                (h * (s - 1)).rem_euclid(ri) == 0,
                "h(s-1) = 0 (mod r)",
            )?;
            let nr = (n * r) as i64;
            let d = datum(
                C(n * r),
                C(n),
                C(n * r),
                C(n),
                vec![(krot(2, nr)?, krot(2 * s, nr)?)],
            )?;
            (d, (krot(2 * h, nr)?, one()))
        }
        "35" | "36" => {
            let n = positive(spec, "n")?;
            let r = positive(spec, "r")?;
            reversing_basics(spec, n, r)?;
            let (ri, s) = (r as i64, coprime_s(spec, r as i64)?);
            let h = in_range(spec, "h", ri)?;
            let k = in_range(spec, "k", ri)?;
            congruence(spec, (h - k).rem_euclid(2) == 0, "h = k (mod 2)")?;
            let two_r = 2 * ri;
            if f == "35" {
                congruence(spec, (s * s - 1).rem_euclid(ri) == 0, "s^2 = 1 (mod r)")?;
                congruence(
                    spec,
                    ((h - k) * (s - 1)).rem_euclid(two_r) == 0,
                    "(h-k)(s-1) = 0 (mod 2r)",
                )?;
                congruence(
                    spec,
                    ((h + k) * (s + 1)).rem_euclid(two_r) == 0,
                    "(h+k)(s+1) = 0 (mod 2r)",
                )?;
            } else {
                congruence(spec, (s * s + 1).rem_euclid(ri) == 0, "s^2 + 1 = 0 (mod r)")?;
                congruence(
                    spec,
                    (h + k - s * (h - k)).rem_euclid(two_r) == 0,
                    "h+k = s(h-k) (mod 2r)",
                )?;
                congruence(
                    spec,
                    (k - h - s * (k + h)).rem_euclid(two_r) == 0,
                    "k-h = s(k+h) (mod 2r)",
                )?;
            }
            let nr = (n * r) as i64;
            let half = n * r / 2;
            let d = datum(
                D(half),
                C(n),
                D(half),
                C(n),
                vec![(krot(2, nr)?, krot(2 * s, nr)?), (i(), i())],
            )?;
            let a = krot(h, nr)?;
            let a = if f == "36" { i().mul(&a) } else { a };
            (d, (a, krot(k, nr)?))
        }
        "34" => {
            let n = positive(spec, "n")?;
            (datum(D(n), D(n), D(n), D(n), vec![])?, (one(), one()))
        }
        "35a" | "35ap" | "35am" => {
            let n = if f == "35a" {
                positive(spec, "n")?
            } else {
                odd(spec, "n")?
            };
            let small = if f == "35a" { C(2 * n) } else { C(n) };
            let d = datum(
                D(2 * n),
                small,
                D(2 * n),
                small,
                vec![(krot(1, 2 * n as i64)?, i()), (i(), krot(1, 2 * n as i64)?)],
            )?;
            let b = if f == "35am" { one().neg() } else { one() };
            (d, (one(), b))
        }
        "37" | "38" => {
            let n = positive(spec, "n")?;
            let g = krot(1, 2 * n as i64)?;
            let d = datum(
                D(2 * n),
                D(n),
                D(2 * n),
                D(n),
                vec![(g.clone(), g.clone()), (i(), i())],
            )?;
            let b = if f == "38" { g } else { one() };
            (d, (one(), b))
        }
        _ => {
            let (preserving, a, b): (&str, Quaternion<S>, Quaternion<S>) = match f {
                "39" => ("21", one(), one()),
                "40" => ("21", tp(), tp().conj()),
                "41" => ("22", one(), one()),
                "42" => ("22", tp(), tp()),
                "43" => ("20", one(), one()),
                "44" => ("26", one(), one()),
                "45" => ("28", one(), one()),
                "46" => ("28", one(), tp()),
                "47" => ("27", one(), one()),
                "48" => ("25", one(), one()),
                "49" => ("31", one(), one()),
                "50" => ("30", one(), one()),
                "51" => ("32", tp(), tp().conj()),
                "39p" => ("21'", one(), one()),
                "39m" => ("21'", one(), one().neg()),
                "40p" => ("21'", tp(), tp().conj()),
                "40m" => ("21'", tp(), tp().conj().neg()),
                "44p" => ("26'", one(), one()),
                "44m" => ("26'", one(), one().neg()),
                "44pm" => ("26''", one(), one()),
                "44mp" => ("26''", one(), one().neg()),
                "49p" => ("31'", one(), one()),
                "49m" => ("31'", one(), one().neg()),
                "51p" => ("32'", tp(), tp().conj()),
                "51m" => ("32'", tp(), tp().conj().neg()),
                other => return Err(GroupError::UnknownFamily(other.to_string())),
            };
            (so4(&mut datum, preserving, spec)?, (a, b))
        }
    };
    Ok(Construction {
        datum: base,
        extension: Some(ext),
    })
}

/// In the families without the central element the quotient is cyclic of
/// order 2r, so an even `s` (possible only for odd `r`) is replaced by the
/// odd representative `s + r` of the same class mod r.
fn lift_s(s: i64, r: i64, primed: bool) -> i64 {
    if primed && s % 2 == 0 {
        s + r
    } else {
        s
    }
}

fn reversing_basics(spec: &GroupSpec, n: u32, r: u32) -> Result<(), GroupError> {
    congruence(spec, (n as u64 * r as u64).is_multiple_of(2), "rn even")
}

// ---------------------------------------------------------------------------
// Isometry groups

#[derive(Clone, Debug)]
pub struct IsometryGroup<S: Scalar> {
    spec: GroupSpec,
    elements: Vec<Isometry<S>>,
    set: IsometrySet<S>,
    generators: Vec<Isometry<S>>,
    preserving_order: usize,
}

impl<S: Scalar> IsometryGroup<S> {
    /// Group generated by `gens`; `None` if the closure does not terminate
    /// within the size guard.
    pub fn generated_by(spec: GroupSpec, gens: Vec<Isometry<S>>) -> Option<Self> {
        let set = isometry_closure(&gens)?;
        Some(Self::from_set(spec, set, gens))
    }

    fn from_set(spec: GroupSpec, set: IsometrySet<S>, generators: Vec<Isometry<S>>) -> Self {
        let mut elements = set.items().to_vec();
        elements.sort_by(|a, b| a.cmp_canonical(b));
        let preserving_order = elements.iter().filter(|g| g.is_preserving()).count();
        let set = elements.iter().cloned().collect();
        IsometryGroup {
            spec,
            elements,
            set,
            generators,
            preserving_order,
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn preserving_order(&self) -> usize {
        self.preserving_order
    }

    pub fn has_reversing(&self) -> bool {
        self.preserving_order < self.elements.len()
    }

    pub fn elements(&self) -> &[Isometry<S>] {
        &self.elements
    }

    pub fn generators(&self) -> &[Isometry<S>] {
        &self.generators
    }

    pub fn contains(&self, g: &Isometry<S>) -> bool {
        self.set.contains(g)
    }

    /// Full check of the group axioms on the element set.
    pub fn is_closed(&self) -> bool {
        self.contains(&Isometry::identity())
            && self.elements.iter().all(|x| {
                self.contains(&x.inverse())
                    && self.elements.iter().all(|y| self.contains(&x.compose(y)))
            })
    }

    /// Closure check against the generators only, which suffices because
    /// the element set is generated by them.
    pub fn is_closed_under_generators(&self) -> bool {
        self.elements
            .iter()
            .all(|x| self.generators.iter().all(|g| self.contains(&x.compose(g))))
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    /// Subgroup of `other` that is invariant under conjugation by its
    /// generators.
    pub fn is_normal_in(&self, other: &Self) -> bool {
        self.is_subgroup_of(other)
            && other.generators.iter().all(|g| {
                let gi = g.inverse();
                self.elements
                    .iter()
                    .all(|h| self.contains(&g.compose(h).compose(&gi)))
            })
    }

    pub fn preserving_subgroup(&self) -> Self {
        let set: IsometrySet<S> = self
            .elements
            .iter()
            .filter(|g| g.is_preserving())
            .cloned()
            .collect();
        let gens = set.items().to_vec();
        Self::from_set(self.spec.clone(), set, gens)
    }

    /// `{ c g c⁻¹ : g ∈ G }`.
    pub fn conjugate_by(&self, c: &Isometry<S>) -> Self {
        let ci = c.inverse();
        let conj = |g: &Isometry<S>| c.compose(g).compose(&ci);
        let set: IsometrySet<S> = self.elements.iter().map(conj).collect();
        let gens = self.generators.iter().map(conj).collect();
        Self::from_set(self.spec.clone(), set, gens)
    }

    /// True if some unit vector is fixed by every element, decided by the
    /// rank of the stacked matrices `M_g - Id` over the generators.
    pub fn fixes_a_point(&self) -> bool {
        let mut rows = Vec::new();
        for g in &self.generators {
            let m = g.matrix();
            for (r, row) in m.iter().enumerate() {
                rows.push(
                    (0..4)
                        .map(|c| {
                            if r == c {
                                row[c].sub(&S::one())
                            } else {
                                row[c].clone()
                            }
                        })
                        .collect::<Vec<_>>(),
                );
            }
        }
        rows.is_empty() || rank(rows) < 4
    }

    /// Traces of all elements as floats, sorted.
    pub fn sorted_traces(&self) -> Vec<f64> {
        let mut t: Vec<f64> = self.elements.iter().map(|g| g.trace().to_f64()).collect();
        t.sort_by(f64::total_cmp);
        t
    }
}

fn datum_generators<S: Scalar>(d: &GoursatDatum<S>) -> Vec<Isometry<S>> {
    d.pair_generators()
        .into_iter()
        .map(|(a, b)| Isometry::preserving(a, b))
        .collect()
}

/// Builds the group and checks its order against `|R|·|l|/2`
/// (doubled for the orientation-reversing families).
pub fn instantiate<S: Scalar>(spec: &GroupSpec) -> Result<IsometryGroup<S>, GroupError> {
    let c = construction::<S>(spec)?;
    let mut gens = datum_generators(&c.datum);
    let preserving = isometry_closure(&gens)
        .ok_or_else(|| GroupError::invalid(&spec.family, "closure does not terminate"))?;
    let expected = c.datum.expected_order();
    if preserving.len() != expected {
        return Err(GroupError::invalid(
            &spec.family,
            format!(
                "orientation-preserving part has order {} instead of {expected}",
                preserving.len()
            ),
        ));
    }
    let set = match &c.extension {
        None => preserving,
        Some((a, b)) => {
            gens.push(Isometry::reversing(a.clone(), b.clone()));
            let full = isometry_closure(&gens)
                .ok_or_else(|| GroupError::invalid(&spec.family, "closure does not terminate"))?;
            if full.len() != 2 * expected {
                return Err(GroupError::invalid(
                    &spec.family,
                    format!(
                        "extending element generates order {} instead of {}",
                        full.len(),
                        2 * expected
                    ),
                ));
            }
            full
        }
    };
    Ok(IsometryGroup::from_set(spec.clone(), set, gens))
}

// ---------------------------------------------------------------------------
// Validation

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Independent check of a Goursat datum: normality, the coset map of φ,
/// and the fibered product compared with `group` when supplied.
pub fn validate<S: Scalar>(
    datum: &GoursatDatum<S>,
    group: Option<&IsometryGroup<S>>,
) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let l_normal = normal_in(&datum.small_l, &datum.big_l);
    rep.push(
        "l normal in L",
        matches!(l_normal, Ok(true)),
        format!("{} in {}", datum.small_l.label(), datum.big_l.label()),
    );
    let r_normal = normal_in(&datum.small_r, &datum.big_r);
    rep.push(
        "r normal in R",
        matches!(r_normal, Ok(true)),
        format!("{} in {}", datum.small_r.label(), datum.big_r.label()),
    );
    let ql = datum.big_l.order() / datum.small_l.order().max(1);
    let qr = datum.big_r.order() / datum.small_r.order().max(1);
    rep.push("|L/l| = |R/r|", ql == qr, format!("{ql} vs {qr}"));
    if !(matches!(l_normal, Ok(true)) && matches!(r_normal, Ok(true))) {
        return rep;
    }
    let (Ok(lc), Ok(rc)) = (
        coset_index(&datum.big_l, &datum.small_l),
        coset_index(&datum.big_r, &datum.small_r),
    ) else {
        rep.push("cosets", false, "coset enumeration failed");
        return rep;
    };
    // Extend φ along products of generators, recording the image coset of
    // each L-coset, and flag any coset that receives two images.
    let gens: Vec<(Quaternion<S>, Quaternion<S>)> = datum
        .phi
        .iter()
        .cloned()
        .chain(
            datum
                .small_l
                .generators()
                .into_iter()
                .map(|x| (x, Quaternion::one())),
        )
        .collect();
    let mut image: Vec<Option<usize>> = vec![None; ql];
    let mut well_defined = true;
    let mut in_r = true;
    let mut frontier = vec![(Quaternion::<S>::one(), Quaternion::<S>::one())];
    let mut seen = vec![false; datum.big_l.order()];
    if let Some(p) = datum.big_l.index_of(&Quaternion::one()) {
        seen[p] = true;
    }
    while let Some((x, y)) = frontier.pop() {
        let (Some(xi), Some(yi)) = (datum.big_l.index_of(&x), datum.big_r.index_of(&y)) else {
            in_r = false;
            break;
        };
        match image[lc[xi]] {
            None => image[lc[xi]] = Some(rc[yi]),
            Some(c) if c != rc[yi] => well_defined = false,
            _ => {}
        }
        for (g, h) in &gens {
            let nx = x.mul(g);
            if let Some(p) = datum.big_l.index_of(&nx) {
                if !seen[p] {
                    seen[p] = true;
                    frontier.push((nx, y.mul(h)));
                }
            } else {
                in_r = false;
            }
        }
    }
    rep.push("phi maps into L x R", in_r, "");
    rep.push("phi well defined on cosets", well_defined, "");
    let covered = image.iter().all(|c| c.is_some());
    rep.push("phi generators span L/l", covered, format!("{ql} cosets"));
    let mut hit = vec![0usize; qr];
    for c in image.iter().flatten() {
        if *c < qr {
            hit[*c] += 1;
        }
    }
    let injective = hit.iter().all(|&h| h <= 1);
    let surjective = hit.iter().all(|&h| h >= 1);
    rep.push("phi injective (kernel is l)", injective, "");
    rep.push("phi surjective", surjective, "");
    if !(in_r && well_defined && covered && injective && surjective) {
        return rep;
    }
    // Fibered product: all (x, y) with y in the image coset of x.
    let mut r_by_coset: Vec<Vec<&Quaternion<S>>> = vec![Vec::new(); qr];
    for (y, &c) in datum.big_r.elements().iter().zip(&rc) {
        r_by_coset[c].push(y);
    }
    let mut product = IsometrySet::default();
    let mut has_central = false;
    let minus = Quaternion::<S>::one().neg();
    for (x, &c) in datum.big_l.elements().iter().zip(&lc) {
        let target = image[c].expect("covered");
        for y in &r_by_coset[target] {
            if x.approx_eq(&minus) && y.approx_eq(&minus) {
                has_central = true;
            }
            product.insert(Isometry::preserving(x.clone(), (*y).clone()));
        }
    }
    rep.push(
        "(-1,-1) in fibered product",
        has_central,
        "needed for the order formula |R||l|/2",
    );
    let expected = datum.expected_order();
    rep.push(
        "order formula",
        product.len() == expected,
        format!("{} vs {expected}", product.len()),
    );
    if let Some(g) = group {
        let pres = g.preserving_subgroup();
        let same =
            pres.order() == product.len() && product.items().iter().all(|x| pres.contains(x));
        rep.push(
            "fibered product matches instantiated group",
            same,
            format!("{} vs {}", product.len(), pres.order()),
        );
    }
    rep
}

/// Instantiates `spec` and runs [`validate`] on its datum, adding closure
/// and coset checks for the orientation-reversing part.
pub fn validate_spec<S: Scalar>(spec: &GroupSpec) -> Result<ValidationReport, GroupError> {
    let c = construction::<S>(spec)?;
    let group = instantiate::<S>(spec).ok();
    let mut rep = validate(&c.datum, group.as_ref());
    match &group {
        Some(g) => {
            rep.push(
                "closed",
                g.is_closed_under_generators(),
                format!("order {}", g.order()),
            );
            if c.extension.is_some() {
                rep.push(
                    "reversing part is one coset",
                    g.order() == 2 * g.preserving_order(),
                    format!("{} of {}", g.order() - g.preserving_order(), g.order()),
                );
            }
        }
        None => rep.push("instantiation", false, "closure or order check failed"),
    }
    Ok(rep)
}

/// Subgroup of S³ generated by the given elements, wrapped as a binary group.
pub fn generated_binary_group<S: Scalar>(
    label: BinaryLabel,
    gens: &[Quaternion<S>],
) -> BinaryGroup<S> {
    BinaryGroup::from_elements(label, closure(gens).into_sorted())
}
