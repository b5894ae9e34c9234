//! Quotients of the 2-sphere: finite O(3) groups, spherical triangles and
//! the reductions used for infinite and fibering groups.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::GeometryError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SphericalTriangle {
    /// Vertex angles.
    pub angles: [f64; 3],
    /// `sides[i]` is opposite `angles[i]`.
    pub sides: [f64; 3],
}

/// Solves a spherical triangle from its angles with the dual law of cosines
/// `cos a = (cos A + cos B cos C) / (sin B sin C)`.
pub fn sides_from_angles(a: f64, b: f64, c: f64) -> Result<SphericalTriangle, GeometryError> {
    let angles = [a, b, c];
    if angles.iter().any(|x| !(*x > 0.0 && *x < PI)) {
        return Err(GeometryError::InvalidTriangle(format!(
            "angles must lie in (0, π): {angles:?}"
        )));
    }
    if a + b + c <= PI {
        return Err(GeometryError::InvalidTriangle(format!(
            "angle sum {} does not exceed π",
            a + b + c
        )));
    }
    let side = |x: f64, y: f64, z: f64| {
        ((x.cos() + y.cos() * z.cos()) / (y.sin() * z.sin()))
            .clamp(-1.0, 1.0)
            .acos()
    };
    let sides = [side(a, b, c), side(b, c, a), side(c, a, b)];
    if sides.iter().any(|s| !(*s > 0.0 && *s < PI)) {
        return Err(GeometryError::InvalidTriangle(format!(
            "no triangle with angles {angles:?}"
        )));
    }
    Ok(SphericalTriangle { angles, sides })
}

/// The distinct diameters of S²/K for finite K ⊂ O(3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum O3Diameter {
    Pi,
    HalfPi,
    /// arccos(1/3)
    ArccosThird,
    /// arccos(1/√3)
    ArccosInvSqrt3,
    /// arccos(tan(3π/10)/√3)
    Icosahedral,
}

impl O3Diameter {
    pub fn radians(self) -> f64 {
        match self {
            O3Diameter::Pi => PI,
            O3Diameter::HalfPi => PI / 2.0,
            O3Diameter::ArccosThird => (1.0f64 / 3.0).acos(),
            O3Diameter::ArccosInvSqrt3 => (1.0 / 3f64.sqrt()).acos(),
            O3Diameter::Icosahedral => ((0.3 * PI).tan() / 3f64.sqrt()).acos(),
        }
    }

    pub fn expression(self) -> &'static str {
        match self {
            O3Diameter::Pi => "π",
            O3Diameter::HalfPi => "π/2",
            O3Diameter::ArccosThird => "arccos(1/3)",
            O3Diameter::ArccosInvSqrt3 => "arccos(1/√3)",
            O3Diameter::Icosahedral => "arccos(tan(3π/10)/√3)",
        }
    }

    /// Angles of a spherical triangle whose side opposite the first angle
    /// realizes this diameter.
    pub fn triangle(self) -> Option<[f64; 3]> {
        match self {
            O3Diameter::ArccosThird => Some([PI / 2.0, PI / 3.0, PI / 3.0]),
            O3Diameter::ArccosInvSqrt3 => Some([PI / 2.0, PI / 3.0, PI / 4.0]),
            O3Diameter::Icosahedral => Some([PI / 2.0, PI / 3.0, PI / 5.0]),
            _ => None,
        }
    }
}

/// Schoenflies family of a finite subgroup of O(3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum O3Label {
    /// Cₙ
    C,
    /// S_N with N = 2n (Cₙⁱ when n is odd)
    S,
    /// Cₙʰ
    Ch,
    /// Cₙᵛ
    Cv,
    /// Dₙ
    D,
    /// Dₙʰ
    Dh,
    /// Dₙᵈ
    Dd,
    T,
    Td,
    Th,
    O,
    Oh,
    I,
    Ih,
}

impl O3Label {
    pub fn takes_n(self) -> bool {
        use O3Label::*;
        matches!(self, C | S | Ch | Cv | D | Dh | Dd)
    }

    fn min_n(self) -> u32 {
        use O3Label::*;
        match self {
            D | Dh | Dd => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for O3Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            O3Label::C => "C",
            O3Label::S => "S",
            O3Label::Ch => "Ch",
            O3Label::Cv => "Cv",
            O3Label::D => "D",
            O3Label::Dh => "Dh",
            O3Label::Dd => "Dd",
            O3Label::T => "T",
            O3Label::Td => "Td",
            O3Label::Th => "Th",
            O3Label::O => "O",
            O3Label::Oh => "Oh",
            O3Label::I => "I",
            O3Label::Ih => "Ih",
        };
        f.write_str(s)
    }
}

impl FromStr for O3Label {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use O3Label::*;
        Ok(match s.trim() {
            "C" => C,
            "S" | "Ci" => S,
            "Ch" => Ch,
            "Cv" => Cv,
            "D" => D,
            "Dh" => Dh,
            "Dd" => Dd,
            "T" => T,
            "Td" => Td,
            "Th" => Th,
            "O" => O,
            "Oh" => Oh,
            "I" => I,
            "Ih" => Ih,
            other => return Err(GeometryError::UnknownLabel(other.to_string())),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Any,
    Odd,
    Even,
}

impl Parity {
    fn admits(self, n: u32) -> bool {
        match self {
            Parity::Any => true,
            Parity::Odd => n % 2 == 1,
            Parity::Even => n.is_multiple_of(2),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct O3GroupEntry {
    pub label: O3Label,
    pub parity: Parity,
    /// Conway's orbifold notation.
    pub orbifold: &'static str,
    pub diameter: O3Diameter,
}

const fn row(
    label: O3Label,
    parity: Parity,
    orbifold: &'static str,
    diameter: O3Diameter,
) -> O3GroupEntry {
    O3GroupEntry {
        label,
        parity,
        orbifold,
        diameter,
    }
}

pub static O3_GROUPS: &[O3GroupEntry] = {
    use O3Diameter::*;
    use O3Label::*;
    use Parity::*;
    &[
        row(C, Any, "nn", Pi),
        row(S, Odd, "n×", HalfPi),
        row(S, Even, "n×", HalfPi),
        row(Ch, Odd, "n*", HalfPi),
        row(Ch, Even, "n*", HalfPi),
        row(Cv, Odd, "*nn", Pi),
        row(Cv, Even, "*nn", Pi),
        row(D, Odd, "22n", HalfPi),
        row(D, Even, "22n", HalfPi),
        row(Dh, Odd, "*22n", HalfPi),
        row(Dh, Even, "*22n", HalfPi),
        row(Dd, Odd, "2*n", HalfPi),
        row(Dd, Even, "2*n", HalfPi),
        row(T, Any, "332", ArccosThird),
        row(Td, Any, "*332", ArccosThird),
        row(Th, Any, "3*2", ArccosInvSqrt3),
        row(O, Any, "432", ArccosInvSqrt3),
        row(Oh, Any, "*432", ArccosInvSqrt3),
        row(I, Any, "532", Icosahedral),
        row(Ih, Any, "*532", Icosahedral),
    ]
};

pub fn o3_entry(label: O3Label, n: Option<u32>) -> Result<&'static O3GroupEntry, GeometryError> {
    let n = match (label.takes_n(), n) {
        (true, Some(n)) if n >= label.min_n() => n,
        (true, _) => {
            return Err(GeometryError::Domain(format!(
                "{label} needs n ≥ {}",
                label.min_n()
            )))
        }
        (false, _) => 0,
    };
    O3_GROUPS
        .iter()
        .find(|e| e.label == label && e.parity.admits(n))
        .ok_or_else(|| GeometryError::UnknownLabel(label.to_string()))
}

/// Diameter of S²/K, with the irrational values recomputed from their
/// triangles and checked against the closed form.
pub fn o3_diameter(label: O3Label, n: Option<u32>) -> Result<f64, GeometryError> {
    let d = o3_entry(label, n)?.diameter;
    let value = d.radians();
    if let Some([a, b, c]) = d.triangle() {
        let side = sides_from_angles(a, b, c)?.sides[0];
        if (side - value).abs() > 1e-12 {
            return Err(GeometryError::Domain(format!(
                "triangle side {side} disagrees with {} = {value}",
                d.expression()
            )));
        }
    }
    Ok(value)
}

/// Diameter of S³/G when the identity component of G is the circle
/// T_{k,m}: (z, w) ↦ (e^{ikθ} z, e^{imθ} w), and G/G₀ acts on
/// S³/G₀ = S²(½) as `finite` (the trivial group when `None`).
pub fn cohom2_diameter(
    k: u64,
    m: u64,
    finite: Option<(O3Label, Option<u32>)>,
) -> Result<f64, GeometryError> {
    if num_integer::gcd(k, m) != 1 {
        return Err(GeometryError::NotCoprime { k, m });
    }
    if k != m {
        return Ok(PI / 2.0);
    }
    let (label, n) = finite.unwrap_or((O3Label::C, Some(1)));
    Ok(0.5 * o3_diameter(label, n)?)
}

/// Lower bound for the maximal fibering families 10, 15, 19 and 34;
/// `l` is lcm(m, n) for family 10 and n for family 34.
pub fn fibering_diameter(family: &str, l: Option<u32>) -> Result<f64, GeometryError> {
    let prism = |l: Option<u32>| match l {
        Some(l) if l >= 1 => Ok(((PI / (2.0 * l as f64)).cos() / 2f64.sqrt()).acos()),
        _ => Err(GeometryError::Domain(format!(
            "family {family} needs L ≥ 1"
        ))),
    };
    match family {
        "10" | "34" => prism(l),
        "15" => Ok(0.5 * o3_diameter(O3Label::Oh, None)?),
        "19" => Ok(0.5 * o3_diameter(O3Label::Ih, None)?),
        other => Err(GeometryError::Domain(format!(
            "no fibering formula for family {other}"
        ))),
    }
}
