//! Diameter tables: expected closed forms, computed bounds and their
//! comparison.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebraic::{FieldElement, Sign};
use crate::error::GroupError;
use crate::goursat::{instantiate, t_prime, GroupSpec, Isometry, IsometryGroup};
use crate::hypercube;
use crate::orbit_cell::{
    cell_statistics, orbit_of_one, prefundamental_domain, BoundJson, CellKind, DiameterBound,
    FaceReport, NumberJson, Orbit, SphericalCell,
};
use crate::quaternion::Quaternion;
use crate::scalar::Scalar;
use crate::sphere2::{self, O3Diameter, O3_GROUPS};

/// Agreement required between a computed bound and its closed form.
pub const MATCH_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendChoice {
    /// Exact when the group is representable, float otherwise.
    Auto,
    Exact,
    Float,
}

impl FromStr for BackendChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "auto" => Ok(BackendChoice::Auto),
            "exact" => Ok(BackendChoice::Exact),
            "float" => Ok(BackendChoice::Float),
            other => Err(format!(
                "unknown backend {other:?} (expected exact, float or auto)"
            )),
        }
    }
}

/// Closed-form diameters appearing in the tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClosedForm {
    Pi,
    HalfPi,
    ThirdPi,
    QuarterPi,
    /// arccos(1/4)
    ArccosQuarter,
    /// arccos(√5/4)
    ArccosSqrt5Quarter,
    /// arccos((√2+1)/(2√2))
    TruncatedCube,
    /// arccos((3√2+√10)/8)
    Dodecahedral,
    /// arccos((3+√5)/(4√2)), the same number as `Dodecahedral`
    Reflection50,
    /// arccos(1/√(40+12√2−8√5−12√10))
    Group29,
    /// arccos(cos(π/2L)/√2)
    Prism(u32),
    /// ½ arccos(1/√3)
    HalfOctahedral,
    /// ½ arccos(tan(3π/10)/√3)
    HalfIcosahedral,
    O3(O3Diameter),
}

fn fe(parts: [(i64, i64); 4]) -> FieldElement {
    FieldElement::from_ratios(parts)
}

impl ClosedForm {
    pub fn expression(&self) -> String {
        match self {
            ClosedForm::Pi => "π".into(),
            ClosedForm::HalfPi => "π/2".into(),
            ClosedForm::ThirdPi => "π/3".into(),
            ClosedForm::QuarterPi => "π/4".into(),
            ClosedForm::ArccosQuarter => "arccos(1/4)".into(),
            ClosedForm::ArccosSqrt5Quarter => "arccos(√5/4)".into(),
            ClosedForm::TruncatedCube => "arccos((√2+1)/(2√2))".into(),
            ClosedForm::Dodecahedral => "arccos((3√2+√10)/8)".into(),
            ClosedForm::Reflection50 => "arccos((3+√5)/(4√2))".into(),
            ClosedForm::Group29 => "arccos(1/√(40+12√2−8√5−12√10))".into(),
            ClosedForm::Prism(l) => format!("arccos(cos(π/{})/√2)", 2 * l),
            ClosedForm::HalfOctahedral => "½·arccos(1/√3)".into(),
            ClosedForm::HalfIcosahedral => "½·arccos(tan(3π/10)/√3)".into(),
            ClosedForm::O3(d) => d.expression().into(),
        }
    }

    pub fn radians(&self) -> f64 {
        use std::f64::consts::PI;
        match self {
            ClosedForm::HalfOctahedral => 0.5 * O3Diameter::ArccosInvSqrt3.radians(),
            ClosedForm::HalfIcosahedral => 0.5 * O3Diameter::Icosahedral.radians(),
            ClosedForm::O3(d) => d.radians(),
            ClosedForm::Prism(l) => ((PI / (2.0 * *l as f64)).cos() / 2f64.sqrt()).acos(),
            _ => self.exact().expect("field value").radians,
        }
    }

    /// Squared cosine and cosine sign in Q(√2, √5), when available.
    pub fn exact(&self) -> Option<DiameterBound<FieldElement>> {
        let pos = |x: FieldElement| Some(DiameterBound::new(x, Sign::Positive));
        match self {
            ClosedForm::Pi => Some(DiameterBound::pi()),
            ClosedForm::HalfPi => Some(DiameterBound::half_pi()),
            ClosedForm::ThirdPi => pos(fe([(1, 4), (0, 1), (0, 1), (0, 1)])),
            ClosedForm::QuarterPi => pos(fe([(1, 2), (0, 1), (0, 1), (0, 1)])),
            ClosedForm::ArccosQuarter => pos(fe([(1, 16), (0, 1), (0, 1), (0, 1)])),
            ClosedForm::ArccosSqrt5Quarter => pos(fe([(5, 16), (0, 1), (0, 1), (0, 1)])),
            ClosedForm::TruncatedCube => {
                // ((√2+1)/(2√2))² = (3+2√2)/8
                pos(fe([(3, 8), (1, 4), (0, 1), (0, 1)]))
            }
            ClosedForm::Dodecahedral => {
                let c = fe([(0, 1), (3, 8), (0, 1), (1, 8)]);
                pos(c.square())
            }
            ClosedForm::Reflection50 => {
                let num = fe([(3, 1), (0, 1), (1, 1), (0, 1)]);
                pos(num
                    .square()
                    .checked_div(&FieldElement::from_integer(32))
                    .ok()?)
            }
            ClosedForm::Group29 => {
                let r = FieldElement::from_ratios([(40, 1), (12, 1), (-8, 1), (-12, 1)]);
                pos(r.inverse().ok()?)
            }
            ClosedForm::Prism(l) => {
                // cos²(π/2L)/2 = (1 + cos(π/L))/4
                let (c, _) = <FieldElement as Scalar>::cos_sin_pi(1, *l as i64)?;
                let v = (&c + &FieldElement::one())
                    .scale(&num_rational::BigRational::new(1.into(), 4.into()));
                Some(DiameterBound::new(
                    v.clone(),
                    if v.is_zero() {
                        Sign::Zero
                    } else {
                        Sign::Positive
                    },
                ))
            }
            _ => None,
        }
    }

    /// Closed forms with a field value, for recognizing computed bounds.
    pub fn catalog() -> [ClosedForm; 10] {
        [
            ClosedForm::Pi,
            ClosedForm::HalfPi,
            ClosedForm::ThirdPi,
            ClosedForm::QuarterPi,
            ClosedForm::ArccosQuarter,
            ClosedForm::ArccosSqrt5Quarter,
            ClosedForm::TruncatedCube,
            ClosedForm::Dodecahedral,
            ClosedForm::Group29,
            ClosedForm::Prism(1),
        ]
    }

    pub fn recognize(bound: &DiameterBound<FieldElement>) -> Option<ClosedForm> {
        Self::catalog()
            .into_iter()
            .find(|c| c.exact().is_some_and(|e| e.same_value(bound)))
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.expression())
    }
}

/// Everything computed for one group.
#[derive(Clone, Debug, Serialize)]
pub struct Computation {
    pub spec: String,
    pub backend: &'static str,
    /// Exact was requested but the group needs the float backend.
    pub fell_back: bool,
    pub order: usize,
    pub orbit_size: usize,
    pub stabilizer: usize,
    /// (distance, number of orbit points) per layer.
    pub layers: Vec<(f64, usize)>,
    pub kind: CellKind,
    pub vertices: usize,
    pub faces: FaceReport,
    pub bound: BoundJson,
    pub expression: Option<String>,
    #[serde(skip)]
    pub exact: Option<DiameterBound<FieldElement>>,
}

pub struct Analysis<S: Scalar> {
    pub group: IsometryGroup<S>,
    pub orbit: Orbit<S>,
    pub cell: SphericalCell<S>,
}

pub fn analyze<S: Scalar>(spec: &GroupSpec) -> Result<Analysis<S>, GroupError> {
    let group = instantiate::<S>(spec)?;
    let orbit = orbit_of_one(&group);
    let cell = prefundamental_domain(&orbit);
    Ok(Analysis { group, orbit, cell })
}

fn summarize<S: Scalar>(a: &Analysis<S>, fell_back: bool) -> Computation {
    Computation {
        spec: a.group.spec().to_string(),
        backend: S::NAME,
        fell_back,
        order: a.group.order(),
        orbit_size: a.orbit.len(),
        stabilizer: a.orbit.stabilizer,
        layers: a
            .orbit
            .layers
            .iter()
            .map(|l| (l.radians, l.members.len()))
            .collect(),
        kind: a.cell.kind,
        vertices: a.cell.vertices.len(),
        faces: cell_statistics(&a.cell),
        bound: BoundJson::of(&a.cell.bound),
        expression: None,
        exact: None,
    }
}

pub fn compute(spec: &GroupSpec, backend: BackendChoice) -> Result<Computation, GroupError> {
    if backend != BackendChoice::Float {
        match analyze::<FieldElement>(spec) {
            Ok(a) => {
                let mut c = summarize(&a, false);
                c.expression = ClosedForm::recognize(&a.cell.bound).map(|f| f.expression());
                c.exact = Some(a.cell.bound);
                return Ok(c);
            }
            Err(GroupError::UnsupportedExact(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let a = analyze::<f64>(spec)?;
    Ok(summarize(&a, backend == BackendChoice::Exact))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    Fib,
    NonfibRational,
    NonfibIrrational,
    Reflection,
    O3,
    Inclusions,
}

impl TableKind {
    pub const ALL: [TableKind; 6] = [
        TableKind::Fib,
        TableKind::NonfibRational,
        TableKind::NonfibIrrational,
        TableKind::Reflection,
        TableKind::O3,
        TableKind::Inclusions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableKind::Fib => "fib",
            TableKind::NonfibRational => "nonfib-rational",
            TableKind::NonfibIrrational => "nonfib-irrational",
            TableKind::Reflection => "reflection",
            TableKind::O3 => "o3",
            TableKind::Inclusions => "inclusions",
        }
    }
}

impl FromStr for TableKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s.trim())
            .ok_or_else(|| {
                let names: Vec<&str> = Self::ALL.iter().map(|t| t.name()).collect();
                format!("unknown table {s:?} (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum Status {
    Match,
    Mismatch(String),
    Skipped(String),
}

impl Status {
    pub fn is_mismatch(&self) -> bool {
        matches!(self, Status::Mismatch(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::Mismatch(_) => "mismatch",
            Status::Skipped(_) => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub row: String,
    pub spec: Option<String>,
    pub expected: String,
    pub expected_radians: Option<f64>,
    pub backend: Option<String>,
    pub radians: Option<f64>,
    pub cos2: Option<NumberJson>,
    pub cos_sign: Option<Sign>,
    /// Float backend value, as an independent check of the exact one.
    pub float_radians: Option<f64>,
    pub detail: Option<String>,
    pub note: Option<String>,
    pub status: Status,
}

impl TableRow {
    fn new(row: impl Into<String>, expected: impl Into<String>) -> Self {
        TableRow {
            row: row.into(),
            spec: None,
            expected: expected.into(),
            expected_radians: None,
            backend: None,
            radians: None,
            cos2: None,
            cos_sign: None,
            float_radians: None,
            detail: None,
            note: None,
            status: Status::Match,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub kind: TableKind,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|r| r.status.is_mismatch()).count()
    }
}

struct DiameterRowDef {
    spec: &'static str,
    expected: ClosedForm,
    printed: Option<&'static str>,
    note: Option<&'static str>,
}

const fn row(spec: &'static str, expected: ClosedForm) -> DiameterRowDef {
    DiameterRowDef {
        spec,
        expected,
        printed: None,
        note: None,
    }
}

const fn erratum(
    spec: &'static str,
    expected: ClosedForm,
    printed: &'static str,
    note: &'static str,
) -> DiameterRowDef {
    DiameterRowDef {
        spec,
        expected,
        printed: Some(printed),
        note: Some(note),
    }
}

const CONTAINS_MINUS_ONE: &str =
    "contains the antipodal map, so its diameter is at most π/2; the cell bound is π/2";

fn rational_rows() -> Vec<DiameterRowDef> {
    use ClosedForm::*;
    vec![
        row("21'", Pi),
        row("26'", Pi),
        row("31'", Pi),
        row("39p", Pi),
        erratum("40", HalfPi, "π", CONTAINS_MINUS_ONE),
        row("40p", Pi),
        erratum("44", HalfPi, "π", CONTAINS_MINUS_ONE),
        row("44p", Pi),
        row("49p", Pi),
        row("21", HalfPi),
        row("26", HalfPi),
        row("26''", HalfPi),
        row("31", HalfPi),
        row("39", HalfPi),
        row("39m", HalfPi),
        row("40m", HalfPi),
        row("44m", HalfPi),
        row("44pm", HalfPi),
        row("44mp", HalfPi),
        row("49", HalfPi),
        row("49m", HalfPi),
        row("22", ThirdPi),
        row("27", ThirdPi),
        row("41", ThirdPi),
        row("42", ThirdPi),
        row("47", ThirdPi),
        row("20", QuarterPi),
        row("28", QuarterPi),
        row("43", QuarterPi),
        row("45", QuarterPi),
    ]
}

fn irrational_rows() -> Vec<DiameterRowDef> {
    use ClosedForm::*;
    vec![
        row("32'", ArccosQuarter),
        row("51p", ArccosQuarter),
        row("32", ArccosSqrt5Quarter),
        row("51", ArccosSqrt5Quarter),
        row("51m", ArccosSqrt5Quarter),
        row("23", TruncatedCube),
        row("25", TruncatedCube),
        row("46", TruncatedCube),
        row("48", TruncatedCube),
        row("24", Dodecahedral),
        row("30", Dodecahedral),
        row("50", Dodecahedral),
        erratum(
            "29",
            Group29,
            "arccos((√40+12√2−8√5−12√10)^(-1))",
            "the square root covers the whole sum",
        ),
    ]
}

fn reflection_rows() -> Vec<DiameterRowDef> {
    use ClosedForm::*;
    vec![
        row("40p", Pi),
        row("44p", Pi),
        row("49p", Pi),
        row("44mp", HalfPi),
        row("44", HalfPi),
        row("49", HalfPi),
        row("47", ThirdPi),
        row("42", ThirdPi),
        erratum(
            "51p",
            ArccosQuarter,
            "π/4",
            "the cell of 1 has a vertex at distance arccos(1/4) > π/4, as in the irrational table",
        ),
        row("45", QuarterPi),
        row("50", Reflection50),
    ]
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= MATCH_TOLERANCE
}

/// Compares a computed exact bound (if any) and the float oracle with the
/// closed form.
fn diameter_row(def: &DiameterRowDef, backend: BackendChoice) -> TableRow {
    let spec = GroupSpec::new(def.spec);
    let mut row = TableRow::new(format!("#{}", def.spec), def.expected.expression());
    row.spec = Some(spec.to_string());
    row.expected_radians = Some(def.expected.radians());
    row.note = def
        .note
        .map(|n| format!("printed {}; {n}", def.printed.unwrap_or("")));
    fill_computed(&mut row, &spec, def.expected, backend);
    row
}

fn fill_computed(
    row: &mut TableRow,
    spec: &GroupSpec,
    expected: ClosedForm,
    backend: BackendChoice,
) {
    let main = match compute(spec, backend) {
        Ok(c) => c,
        Err(e) => {
            row.status = Status::Mismatch(e.to_string());
            return;
        }
    };
    row.backend = Some(main.backend.to_string());
    row.radians = Some(main.bound.radians);
    row.cos2 = Some(main.bound.cos2.clone());
    row.cos_sign = Some(main.bound.cos_sign);
    let float = if main.backend == f64::NAME {
        Ok(main.bound.radians)
    } else {
        analyze::<f64>(spec).map(|a| a.cell.bound.radians)
    };
    row.float_radians = float.as_ref().ok().copied();
    let target = expected.radians();
    let mut problems = Vec::new();
    if !close(main.bound.radians, target) {
        problems.push(format!(
            "computed {} rad, expected {target}",
            main.bound.radians
        ));
    }
    match float {
        Ok(f) if !close(f, target) => problems.push(format!("float backend gives {f} rad")),
        Err(e) => problems.push(format!("float backend failed: {e}")),
        _ => {}
    }
    if let (Some(got), Some(want)) = (&main.exact, expected.exact()) {
        if !got.same_value(&want) {
            problems.push("exact cos² differs from the closed form".to_string());
        }
    }
    if !problems.is_empty() {
        row.status = Status::Mismatch(problems.join("; "));
    }
}

fn fib_rows(backend: BackendChoice) -> Vec<TableRow> {
    let mut rows = Vec::new();
    for family in ["10", "34"] {
        let mut all_above = true;
        for l in 1..=6u32 {
            let spec = if family == "10" {
                GroupSpec::new("10").with("m", l as i64).with("n", l as i64)
            } else {
                GroupSpec::new("34").with("n", l as i64)
            };
            let expected = ClosedForm::Prism(l);
            let mut row = TableRow::new(format!("#{family} L={l}"), expected.expression());
            row.spec = Some(spec.to_string());
            row.expected_radians = Some(expected.radians());
            fill_computed(&mut row, &spec, expected, backend);
            all_above &= row.radians.is_some_and(|r| r > std::f64::consts::FRAC_PI_4);
            rows.push(row);
        }
        let limit = sphere2::fibering_diameter(family, Some(1_000_000)).unwrap_or(f64::NAN);
        let mut row = TableRow::new(format!("#{family}"), "π/4");
        row.expected_radians = Some(std::f64::consts::FRAC_PI_4);
        row.radians = Some(limit);
        row.detail = Some("limit L → ∞ of arccos(cos(π/2L)/√2); every tested L lies above".into());
        if !close(limit, std::f64::consts::FRAC_PI_4) || !all_above {
            row.status = Status::Mismatch("bounds do not decrease to π/4 from above".into());
        }
        rows.push(row);
    }
    for (family, expected) in [
        ("15", ClosedForm::HalfOctahedral),
        ("19", ClosedForm::HalfIcosahedral),
    ] {
        let mut row = TableRow::new(format!("#{family}"), expected.expression());
        row.expected_radians = Some(expected.radians());
        match sphere2::fibering_diameter(family, None) {
            Ok(v) => {
                row.radians = Some(v);
                // Every member of the family lies in the limit group, so its
                // cell bound cannot be smaller.
                let spec = GroupSpec::new(family).with("m", 2);
                row.spec = Some(spec.to_string());
                let member = compute(&spec, BackendChoice::Float).map(|c| c.bound.radians);
                row.detail = Some(match &member {
                    Ok(m) => format!(
                        "quotient of S²(½) by the finite part; the m=2 member gives {}",
                        fmt_rad(*m)
                    ),
                    Err(e) => format!("m=2 member failed: {e}"),
                });
                if !close(v, expected.radians()) {
                    row.status = Status::Mismatch(format!("reduction gives {v}"));
                } else if !member.is_ok_and(|m| m >= v - MATCH_TOLERANCE) {
                    row.status = Status::Mismatch("family member has a smaller bound".into());
                }
            }
            Err(e) => row.status = Status::Mismatch(e.to_string()),
        }
        rows.push(row);
    }
    rows
}

fn o3_rows() -> Vec<TableRow> {
    O3_GROUPS
        .iter()
        .map(|e| {
            let parity = match e.parity {
                sphere2::Parity::Any => String::new(),
                p => format!(
                    " (n {})",
                    serde_json::to_value(p)
                        .ok()
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default()
                ),
            };
            let mut row = TableRow::new(
                format!("{}{} {}", e.label, parity, e.orbifold),
                e.diameter.expression(),
            );
            row.expected_radians = Some(e.diameter.radians());
            match e.diameter.triangle() {
                Some([a, b, c]) => match sphere2::sides_from_angles(a, b, c) {
                    Ok(t) => {
                        row.radians = Some(t.sides[0]);
                        row.detail = Some(format!(
                            "side opposite π/2 in the triangle (π/2, π/3, π/{})",
                            (std::f64::consts::PI / c).round()
                        ));
                        if (t.sides[0] - e.diameter.radians()).abs() > 1e-12 {
                            row.status = Status::Mismatch(format!("triangle gives {}", t.sides[0]));
                        }
                    }
                    Err(err) => row.status = Status::Mismatch(err.to_string()),
                },
                None => {
                    row.radians = Some(e.diameter.radians());
                    row.status = Status::Skipped("value taken from the registry".into());
                }
            }
            row
        })
        .collect()
}

struct InclusionDef {
    sub: &'static str,
    sup: &'static str,
    normal: bool,
    index: usize,
    /// Conjugate the subgroup by P(t′, 1) first.
    conjugate: bool,
    note: Option<&'static str>,
}

const fn incl(sub: &'static str, sup: &'static str, normal: bool, index: usize) -> InclusionDef {
    InclusionDef {
        sub,
        sup,
        normal,
        index,
        conjugate: false,
        note: None,
    }
}

fn inclusion_defs() -> Vec<InclusionDef> {
    vec![
        incl("21'", "26'", true, 2),
        incl("21'", "39p", true, 2),
        incl("21", "40", true, 2),
        incl("21'", "40p", true, 2),
        incl("26", "44", true, 2),
        incl("26'", "44p", true, 2),
        incl("31'", "49p", true, 2),
        incl("21'", "21", true, 2),
        incl("21", "26", true, 2),
        incl("26'", "26", true, 2),
        incl("26''", "26", true, 2),
        InclusionDef {
            note: Some("printed as 21′ ⊲ 26′ in the row of 26″"),
            ..incl("21'", "26''", true, 2)
        },
        incl("31'", "31", true, 2),
        incl("21", "39", true, 2),
        incl("21'", "39m", true, 2),
        incl("21'", "40m", true, 2),
        incl("26'", "44m", true, 2),
        incl("26''", "44pm", true, 2),
        incl("26''", "44mp", true, 2),
        incl("31", "49", true, 2),
        incl("31'", "49m", true, 2),
        incl("21", "22", false, 4),
        incl("26", "27", false, 4),
        incl("22", "27", true, 2),
        incl("22", "41", true, 2),
        incl("22", "42", true, 2),
        incl("27", "47", true, 2),
        incl("26", "47", false, 8),
        incl("22", "20", false, 3),
        incl("27", "28", false, 3),
        incl("20", "28", true, 2),
        incl("20", "43", true, 2),
        incl("28", "45", true, 2),
        incl("32'", "51p", true, 2),
        incl("32'", "32", true, 2),
        incl("32", "51", true, 2),
        InclusionDef {
            note: Some("printed as 32 ⊲ 51m; the orientation-preserving subgroup of 51m is 32′"),
            ..incl("32'", "51m", true, 2)
        },
        incl("20", "23", true, 2),
        incl("23", "25", true, 2),
        incl("28", "25", true, 2),
        incl("28", "46", true, 2),
        incl("25", "48", true, 2),
        incl("20", "24", false, 5),
        incl("31", "30", false, 60),
        InclusionDef {
            conjugate: true,
            note: Some("conjugated by g = P(t′, 1), t′ = (i+j)/√2"),
            ..incl("32", "30", false, 60)
        },
        incl("30", "50", true, 2),
        incl("24", "29", true, 2),
    ]
}

type Cache = Mutex<BTreeMap<String, std::sync::Arc<Analysis<FieldElement>>>>;

fn cached(cache: &Cache, id: &str) -> Result<std::sync::Arc<Analysis<FieldElement>>, GroupError> {
    if let Some(a) = cache.lock().expect("cache lock").get(id) {
        return Ok(a.clone());
    }
    let a = std::sync::Arc::new(analyze::<FieldElement>(&GroupSpec::new(id))?);
    cache
        .lock()
        .expect("cache lock")
        .insert(id.to_string(), a.clone());
    Ok(a)
}

fn inclusion_row(def: &InclusionDef, cache: &Cache) -> TableRow {
    let symbol = if def.normal { "⊲" } else { "⊂" };
    let mut row = TableRow::new(
        format!("#{} {symbol} #{}", def.sub, def.sup),
        format!("index {}", def.index),
    );
    row.note = def.note.map(String::from);
    row.backend = Some(FieldElement::NAME.to_string());
    let (sub, sup) = match (cached(cache, def.sub), cached(cache, def.sup)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            row.status = Status::Mismatch(e.to_string());
            return row;
        }
    };
    let group = if def.conjugate {
        sub.group
            .conjugate_by(&Isometry::preserving(t_prime(), Quaternion::one()))
    } else {
        sub.group.clone()
    };
    let contained = group.is_subgroup_of(&sup.group);
    let index = sup.group.order() / group.order().max(1);
    let exact_index = sup.group.order() % group.order().max(1) == 0;
    let normal = contained && group.is_normal_in(&sup.group);
    let monotone = sup.cell.bound.cmp_distance(&sub.cell.bound) != std::cmp::Ordering::Greater;
    row.detail = Some(format!(
        "contained={contained} index={index} normal={normal} bound {} ≤ {}",
        fmt_rad(sup.cell.bound.radians),
        fmt_rad(sub.cell.bound.radians)
    ));
    let mut problems = Vec::new();
    if !contained {
        problems.push("not contained".to_string());
    }
    if !exact_index || index != def.index {
        problems.push(format!("index {index}"));
    }
    if def.normal && !normal {
        problems.push("not normal".into());
    }
    if !monotone {
        problems.push("larger group has a larger bound".into());
    }
    if !problems.is_empty() {
        row.status = Status::Mismatch(problems.join("; "));
    }
    row
}

fn fmt_rad(x: f64) -> String {
    format!("{x:.12}")
}

/// Computes one table; rows are evaluated in parallel and returned in
/// fixed order.
pub fn build_table(kind: TableKind, backend: BackendChoice) -> Table {
    let rows = match kind {
        TableKind::Fib => fib_rows(backend),
        TableKind::NonfibRational => rational_rows()
            .par_iter()
            .map(|d| diameter_row(d, backend))
            .collect(),
        TableKind::NonfibIrrational => irrational_rows()
            .par_iter()
            .map(|d| diameter_row(d, backend))
            .collect(),
        TableKind::Reflection => reflection_rows()
            .par_iter()
            .map(|d| diameter_row(d, backend))
            .collect(),
        TableKind::O3 => o3_rows(),
        TableKind::Inclusions => {
            let cache = Cache::default();
            inclusion_defs()
                .par_iter()
                .map(|d| inclusion_row(d, &cache))
                .collect()
        }
    };
    Table { kind, rows }
}

/// Cell bound for the cubical tessellation of Sⁿ compared with
/// arccos(1/√(n+1)). For n = 3 the symmetry group is the reflection group
/// #47, which goes through the quaternion pipeline as well.
pub fn hypercube_check(n: usize, backend: BackendChoice) -> TableRow {
    let expected = (1.0 / ((n + 1) as f64).sqrt()).acos();
    let mut row = TableRow::new(format!("cube S^{n}"), format!("arccos(1/√{})", n + 1));
    row.expected_radians = Some(expected);
    row.backend = Some(f64::NAME.to_string());
    let generic = match hypercube::hypercube_cell(n) {
        Ok(c) => c,
        Err(e) => {
            row.status = Status::Mismatch(e.to_string());
            return row;
        }
    };
    row.radians = Some(generic.radians);
    row.detail = Some(format!(
        "orbit {} points, {} cell vertices",
        generic.orbit_size, generic.vertices
    ));
    let mut problems = Vec::new();
    if !close(generic.radians, expected) {
        problems.push(format!("generic cell gives {}", generic.radians));
    }
    if n == 3 {
        let spec = GroupSpec::new("47");
        row.spec = Some(spec.to_string());
        match compute(&spec, backend) {
            Ok(c) => {
                row.backend = Some(c.backend.to_string());
                row.float_radians = Some(generic.radians);
                row.radians = Some(c.bound.radians);
                row.cos2 = Some(c.bound.cos2.clone());
                row.cos_sign = Some(c.bound.cos_sign);
                if !close(c.bound.radians, expected) {
                    problems.push(format!("#47 gives {}", c.bound.radians));
                }
                if let Some(e) = &c.exact {
                    if !e.same_value(&ClosedForm::ThirdPi.exact().expect("field value")) {
                        problems.push("#47 exact bound is not π/3".into());
                    }
                }
            }
            Err(e) => problems.push(e.to_string()),
        }
    }
    if !problems.is_empty() {
        row.status = Status::Mismatch(problems.join("; "));
    }
    row
}

const COLUMNS: [&str; 9] = [
    "row",
    "expected",
    "expected_radians",
    "radians",
    "float_radians",
    "backend",
    "status",
    "detail",
    "note",
];

fn cells(r: &TableRow) -> [String; 9] {
    let opt = |x: Option<f64>| x.map(fmt_rad).unwrap_or_default();
    let reason = match &r.status {
        Status::Match => String::new(),
        Status::Mismatch(s) | Status::Skipped(s) => s.clone(),
    };
    let detail = [r.detail.clone().unwrap_or_default(), reason]
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join("; ");
    [
        r.row.clone(),
        r.expected.clone(),
        opt(r.expected_radians),
        opt(r.radians),
        opt(r.float_radians),
        r.backend.clone().unwrap_or_default(),
        r.status.label().to_string(),
        detail,
        r.note.clone().unwrap_or_default(),
    ]
}

pub fn render_text(t: &Table) -> String {
    let mut out = format!("table {}\n", t.kind.name());
    for r in &t.rows {
        let c = cells(r);
        out.push_str(&format!(
            "{:<9} {:<18} expected {:<36} got {:<16}",
            c[6], c[0], c[1], c[3]
        ));
        if !c[4].is_empty() {
            out.push_str(&format!(" float {}", c[4]));
        }
        if !c[7].is_empty() {
            out.push_str(&format!("  [{}]", c[7]));
        }
        if !c[8].is_empty() {
            out.push_str(&format!("  note: {}", c[8]));
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "{} rows, {} mismatches\n",
        t.rows.len(),
        t.mismatches()
    ));
    out
}

pub fn render_markdown(t: &Table) -> String {
    let mut out = format!("| {} |\n", COLUMNS.join(" | "));
    out.push_str(&format!("|{}\n", "---|".repeat(COLUMNS.len())));
    for r in &t.rows {
        let c = cells(r).map(|s| s.replace('|', "\\|"));
        out.push_str(&format!("| {} |\n", c.join(" | ")));
    }
    out
}

pub fn render_csv(t: &Table) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS)?;
    for r in &t.rows {
        w.write_record(cells(r))?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
