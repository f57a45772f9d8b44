//! Classification of a point into the sign regions cut out by the three
//! sidelines.
//!
//! The open regions are labelled by the sign pattern of the barycentric
//! coordinates `(u, v, w)`: `(+,+,+)` is the interior, `(-,+,+)`, `(+,-,+)`,
//! `(+,+,-)` lie across one sideline, and `(+,-,-)`, `(-,+,-)`, `(-,-,+)` are
//! the vertical-angle regions at the vertices. The regions across one sideline
//! are taken closed (minus the two vertices on that sideline), which makes
//! every non-vertex point land in exactly one label.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geom::{barycentric, BaryCoords, Point2, Triangle, Vertex};

/// Default absolute threshold below which a normalized coordinate is zero.
pub const DEFAULT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: f64, eps: f64) -> Sign {
        if x.abs() <= eps {
            Sign::Zero
        } else if x > 0.0 {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignTriple(pub [Sign; 3]);

impl SignTriple {
    pub fn get(&self, v: Vertex) -> Sign {
        self.0[v.index()]
    }

    pub fn count(&self, s: Sign) -> usize {
        self.0.iter().filter(|&&x| x == s).count()
    }
}

impl fmt::Display for SignTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0.map(Sign::symbol);
        write!(f, "({a},{b},{c})")
    }
}

pub fn sign_pattern(bc: &BaryCoords, eps: f64) -> SignTriple {
    SignTriple(bc.as_array().map(|x| Sign::of(x, eps)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Region {
    #[serde(rename = "lambda0")]
    Lambda0,
    #[serde(rename = "mu1")]
    Mu1,
    #[serde(rename = "mu2")]
    Mu2,
    #[serde(rename = "mu3")]
    Mu3,
    #[serde(rename = "mu4")]
    Mu4,
    #[serde(rename = "mu5")]
    Mu5,
    #[serde(rename = "mu6")]
    Mu6,
    #[serde(rename = "vertexA")]
    VertexA,
    #[serde(rename = "vertexB")]
    VertexB,
    #[serde(rename = "vertexC")]
    VertexC,
}

impl Region {
    pub const ALL: [Region; 10] = [
        Region::Lambda0,
        Region::Mu1,
        Region::Mu2,
        Region::Mu3,
        Region::Mu4,
        Region::Mu5,
        Region::Mu6,
        Region::VertexA,
        Region::VertexB,
        Region::VertexC,
    ];

    /// Regions with a two-dimensional interior (everything but the vertices).
    pub const AREAL: [Region; 7] = [
        Region::Lambda0,
        Region::Mu1,
        Region::Mu2,
        Region::Mu3,
        Region::Mu4,
        Region::Mu5,
        Region::Mu6,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Region::Lambda0 => "lambda0",
            Region::Mu1 => "mu1",
            Region::Mu2 => "mu2",
            Region::Mu3 => "mu3",
            Region::Mu4 => "mu4",
            Region::Mu5 => "mu5",
            Region::Mu6 => "mu6",
            Region::VertexA => "vertexA",
            Region::VertexB => "vertexB",
            Region::VertexC => "vertexC",
        }
    }

    pub fn vertex(self) -> Option<Vertex> {
        match self {
            Region::VertexA => Some(Vertex::A),
            Region::VertexB => Some(Vertex::B),
            Region::VertexC => Some(Vertex::C),
            _ => None,
        }
    }

    pub fn at_vertex(v: Vertex) -> Region {
        match v {
            Vertex::A => Region::VertexA,
            Vertex::B => Region::VertexB,
            Vertex::C => Region::VertexC,
        }
    }

    /// Sign pattern of the open region this label is built from. For the
    /// areal labels this is also the sign pattern of the bisector terms in the
    /// signed inequality.
    pub fn open_pattern(self) -> Option<SignTriple> {
        use Sign::{Neg as N, Pos as P};
        let p = match self {
            Region::Lambda0 => [P, P, P],
            Region::Mu1 => [N, P, P],
            Region::Mu2 => [P, N, P],
            Region::Mu3 => [P, P, N],
            Region::Mu4 => [P, N, N],
            Region::Mu5 => [N, P, N],
            Region::Mu6 => [N, N, P],
            _ => return None,
        };
        Some(SignTriple(p))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Region {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        Region::ALL
            .into_iter()
            .find(|r| r.label() == s)
            .ok_or_else(|| GeomError::Domain(format!("unknown region label {s:?}")))
    }
}

/// Maps a sign pattern to its region label.
///
/// A single zero (point on a sideline or its extension) is flipped to the sign
/// that leaves exactly one negative entry, which picks the unique closed
/// region among `mu1..mu3` containing the point.
pub fn region_of_pattern(p: SignTriple) -> Region {
    use Sign::*;
    match p.0 {
        [Pos, Pos, Pos] => Region::Lambda0,
        [Neg, Pos, Pos] => Region::Mu1,
        [Pos, Neg, Pos] => Region::Mu2,
        [Pos, Pos, Neg] => Region::Mu3,
        [Pos, Neg, Neg] => Region::Mu4,
        [Neg, Pos, Neg] => Region::Mu5,
        [Neg, Neg, Pos] => Region::Mu6,
        _ => match p.count(Zero) {
            1 => flip_single_zero(p),
            2 => {
                let v = Vertex::ALL
                    .into_iter()
                    .find(|&v| p.get(v) != Zero)
                    .expect("exactly one nonzero entry");
                Region::at_vertex(v)
            }
            // (-,-,-) and (0,0,0) cannot come from coordinates summing to one.
            _ => unreachable!("sign pattern {p} is impossible for normalized coordinates"),
        },
    }
}

fn flip_single_zero(p: SignTriple) -> Region {
    let mut flipped = p.0;
    let zero = flipped.iter().position(|&s| s == Sign::Zero).unwrap();
    flipped[zero] = if p.count(Sign::Neg) == 0 {
        Sign::Neg
    } else {
        Sign::Pos
    };
    // (0,-,-) cannot occur on a sideline since the two nonzero coordinates
    // sum to one; if rounding ever produces it, it lands in the adjacent
    // vertical-angle region.
    region_of_pattern(SignTriple(flipped))
}

pub fn classify(t: &Triangle, m: Point2, eps: f64) -> Result<Region> {
    if !m.is_finite() {
        return Err(GeomError::NonFinite);
    }
    Ok(region_of_pattern(sign_pattern(&barycentric(t, m), eps)))
}
