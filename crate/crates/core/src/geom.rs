//! Plane primitives: points, validated triangles, barycentric coordinates and
//! point-to-vertex / point-to-sideline distances.
//!
//! All sign decisions downstream (regions, signed distances, signed bisectors)
//! are read off the three sub-areas computed here, so there is exactly one
//! place where a point is placed on one side of a sideline or the other.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Triangles with `|signed area| <= DEGENERACY_FACTOR * diameter^2` are rejected.
pub const DEGENERACY_FACTOR: f64 = 1e-12;

/// A point counts as coinciding with a vertex when it is within
/// `COINCIDENCE_FACTOR * diameter` of it.
pub const COINCIDENCE_FACTOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Self) -> Self {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Self) -> Self {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Self {
        Point2::new(self.x * k, self.y * k)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Point2::new(x, y)
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

/// Half the cross product `(q - p) x (r - p)`; positive iff `p, q, r` turn
/// counterclockwise.
pub fn signed_area(p: Point2, q: Point2, r: Point2) -> f64 {
    (q - p).cross(r - p) / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    A,
    B,
    C,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A, Vertex::B, Vertex::C];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The two other vertices in cyclic order (B, C for A; C, A for B; A, B for C).
    pub fn others(self) -> (Vertex, Vertex) {
        match self {
            Vertex::A => (Vertex::B, Vertex::C),
            Vertex::B => (Vertex::C, Vertex::A),
            Vertex::C => (Vertex::A, Vertex::B),
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Vertex::A => "A",
            Vertex::B => "B",
            Vertex::C => "C",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Counterclockwise,
    Clockwise,
}

/// A non-degenerate triangle `ABC`.
///
/// Side lengths follow the usual convention: `a = |BC|`, `b = |CA|`, `c = |AB|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    vertices: [Point2; 3],
    sides: [f64; 3],
    area: f64,
    diameter: f64,
}

impl Triangle {
    pub fn new(a: Point2, b: Point2, c: Point2) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let sides = [b.distance(c), c.distance(a), a.distance(b)];
        let diameter = sides.iter().copied().fold(0.0, f64::max);
        let area = signed_area(a, b, c);
        let threshold = DEGENERACY_FACTOR * diameter * diameter;
        // side lengths that round onto a line are as unusable as a flat triangle
        let [sa, sb, sc] = sides;
        if area.abs() <= threshold || sa >= sb + sc || sb >= sc + sa || sc >= sa + sb {
            return Err(GeomError::DegenerateTriangle { area, threshold });
        }
        Ok(Self {
            vertices: [a, b, c],
            sides,
            area,
            diameter,
        })
    }

    pub fn from_coords(coords: [[f64; 2]; 3]) -> Result<Self> {
        Self::new(coords[0].into(), coords[1].into(), coords[2].into())
    }

    pub fn vertices(&self) -> [Point2; 3] {
        self.vertices
    }

    pub fn vertex(&self, v: Vertex) -> Point2 {
        self.vertices[v.index()]
    }

    /// Length of the side opposite `v`.
    pub fn side(&self, v: Vertex) -> f64 {
        self.sides[v.index()]
    }

    /// `[a, b, c]`.
    pub fn sides(&self) -> [f64; 3] {
        self.sides
    }

    pub fn signed_area(&self) -> f64 {
        self.area
    }

    pub fn orientation(&self) -> Orientation {
        if self.area > 0.0 {
            Orientation::Counterclockwise
        } else {
            Orientation::Clockwise
        }
    }

    /// Longest side length.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn coincidence_radius(&self) -> f64 {
        COINCIDENCE_FACTOR * self.diameter
    }

    /// The vertex `m` coincides with, if any, under the coincidence radius.
    pub fn coincident_vertex(&self, m: Point2) -> Option<Vertex> {
        let radius = self.coincidence_radius();
        Vertex::ALL
            .into_iter()
            .find(|&v| m.distance(self.vertex(v)) <= radius)
    }

    pub fn centroid(&self) -> Point2 {
        let [a, b, c] = self.vertices;
        Point2::new((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0)
    }

    /// Point with the given normalized barycentric coordinates.
    pub fn point_at(&self, bc: BaryCoords) -> Point2 {
        let [a, b, c] = self.vertices;
        Point2::new(
            bc.u * a.x + bc.v * b.x + bc.w * c.x,
            bc.u * a.y + bc.v * b.y + bc.w * c.y,
        )
    }

    /// Twice the signed sub-areas `(M,B,C)`, `(M,C,A)`, `(M,A,B)`.
    ///
    /// Every sub-area is formed from the two rays leaving `m`, the same cross
    /// product the apex angles at `m` are built from.
    pub(crate) fn sub_area_doubles(&self, m: Point2) -> [f64; 3] {
        let [a, b, c] = self.vertices;
        let (ra, rb, rc) = (a - m, b - m, c - m);
        [rb.cross(rc), rc.cross(ra), ra.cross(rb)]
    }
}

/// Normalized barycentric coordinates: `M = u A + v B + w C`, `u + v + w = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaryCoords {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl BaryCoords {
    pub const fn new(u: f64, v: f64, w: f64) -> Self {
        Self { u, v, w }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.u, self.v, self.w]
    }

    pub fn get(&self, v: Vertex) -> f64 {
        self.as_array()[v.index()]
    }

    pub fn sum(&self) -> f64 {
        self.u + self.v + self.w
    }
}

/// Signed-area ratios `area(M,B,C)/area(A,B,C)` and cyclic analogues.
pub fn barycentric(t: &Triangle, m: Point2) -> BaryCoords {
    let twice = 2.0 * t.signed_area();
    let [su, sv, sw] = t.sub_area_doubles(m);
    BaryCoords::new(su / twice, sv / twice, sw / twice)
}

/// `(R_A, R_B, R_C)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceTriple {
    pub r_a: f64,
    pub r_b: f64,
    pub r_c: f64,
}

impl DistanceTriple {
    pub fn as_array(&self) -> [f64; 3] {
        [self.r_a, self.r_b, self.r_c]
    }

    pub fn get(&self, v: Vertex) -> f64 {
        self.as_array()[v.index()]
    }

    pub fn sum(&self) -> f64 {
        self.r_a + self.r_b + self.r_c
    }
}

pub fn vertex_distances(t: &Triangle, m: Point2) -> DistanceTriple {
    let [a, b, c] = t.vertices();
    DistanceTriple {
        r_a: m.distance(a),
        r_b: m.distance(b),
        r_c: m.distance(c),
    }
}

/// Signed distances to the sidelines, positive on the side of the opposite
/// vertex: `d_a` for line BC, `d_b` for CA, `d_c` for AB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignedDistanceTriple {
    pub d_a: f64,
    pub d_b: f64,
    pub d_c: f64,
}

impl SignedDistanceTriple {
    pub fn as_array(&self) -> [f64; 3] {
        [self.d_a, self.d_b, self.d_c]
    }

    /// Unsigned distances `(r_a, r_b, r_c)` to the sidelines.
    pub fn unsigned(&self) -> [f64; 3] {
        self.as_array().map(f64::abs)
    }
}

pub fn signed_distances(t: &Triangle, m: Point2) -> SignedDistanceTriple {
    // Multiplying by the orientation sign keeps sign(d') == sign(bary) exactly.
    let orient = t.signed_area().signum();
    let [su, sv, sw] = t.sub_area_doubles(m);
    let [a, b, c] = t.sides();
    SignedDistanceTriple {
        d_a: orient * su / a,
        d_b: orient * sv / b,
        d_c: orient * sw / c,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit() -> Triangle {
        Triangle::from_coords([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap()
    }

    #[test]
    fn signed_area_examples() {
        let o = Point2::new(0.0, 0.0);
        let x = Point2::new(1.0, 0.0);
        let y = Point2::new(0.0, 1.0);
        assert_eq!(signed_area(o, x, y), 0.5);
        assert_eq!(signed_area(o, x, Point2::new(2.0, 0.0)), 0.0);
        assert_eq!(signed_area(o, y, x), -0.5);
    }

    #[test]
    fn rejects_degenerate_and_non_finite() {
        let err = Triangle::from_coords([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]).unwrap_err();
        assert!(matches!(err, GeomError::DegenerateTriangle { .. }));
        let err = Triangle::from_coords([[0.0, 0.0], [1.0, 1e-13], [2.0, 0.0]]).unwrap_err();
        assert!(matches!(err, GeomError::DegenerateTriangle { .. }));
        let err = Triangle::from_coords([[0.0, f64::NAN], [1.0, 0.0], [0.0, 1.0]]).unwrap_err();
        assert_eq!(err, GeomError::NonFinite);
    }

    #[test]
    fn orientation_and_sides() {
        let t = unit();
        assert_eq!(t.orientation(), Orientation::Counterclockwise);
        assert_relative_eq!(t.side(Vertex::A), 2f64.sqrt());
        assert_eq!(t.side(Vertex::B), 1.0);
        assert_eq!(t.side(Vertex::C), 1.0);
        let cw = Triangle::from_coords([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(cw.orientation(), Orientation::Clockwise);
    }

    #[test]
    fn barycentric_examples() {
        let t = unit();
        assert_eq!(barycentric(&t, Point2::new(0.25, 0.25)), BaryCoords::new(0.5, 0.25, 0.25));
        assert_eq!(barycentric(&t, Point2::new(2.0, 2.0)), BaryCoords::new(-3.0, 2.0, 2.0));
        assert_eq!(barycentric(&t, Point2::new(0.0, 0.0)), BaryCoords::new(1.0, 0.0, 0.0));
    }

    #[test]
    fn barycentric_is_orientation_independent() {
        let cw = Triangle::from_coords([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]).unwrap();
        let bc = barycentric(&cw, Point2::new(2.0, 2.0));
        assert_eq!(bc, BaryCoords::new(-3.0, 2.0, 2.0));
    }

    #[test]
    fn vertex_distance_examples() {
        let t = unit();
        let d = vertex_distances(&t, Point2::new(1.0, 1.0));
        assert_relative_eq!(d.r_a, 2f64.sqrt());
        assert_eq!((d.r_b, d.r_c), (1.0, 1.0));

        let d = vertex_distances(&t, t.vertex(Vertex::B));
        assert_eq!(d.r_b, 0.0);
        assert_eq!(d.r_a, t.side(Vertex::C));
        assert_eq!(d.r_c, t.side(Vertex::A));
    }

    #[test]
    fn equilateral_circumcenter_distances() {
        let pts = [0.0f64, 1.0, 2.0].map(|k| {
            let th = std::f64::consts::FRAC_PI_2 + k * 2.0 * std::f64::consts::PI / 3.0;
            [th.cos(), th.sin()]
        });
        let t = Triangle::from_coords(pts).unwrap();
        let d = vertex_distances(&t, Point2::new(0.0, 0.0));
        for r in d.as_array() {
            assert_relative_eq!(r, 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn signed_distance_examples() {
        let t = unit();
        let d = signed_distances(&t, Point2::new(0.25, 0.25));
        assert_relative_eq!(d.d_a, 0.353_553_390_593_273_7, epsilon = 1e-15);
        assert_eq!(d.d_b, 0.25);
        assert_eq!(d.d_c, 0.25);

        let d = signed_distances(&t, Point2::new(1.0, 1.0));
        assert_relative_eq!(d.d_a, -std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);

        let d = signed_distances(&t, Point2::new(0.5, 0.5));
        assert_eq!(d.d_a, 0.0);
    }

    #[test]
    fn coincident_vertex_detection() {
        let t = unit();
        assert_eq!(t.coincident_vertex(Point2::new(0.0, 1.0)), Some(Vertex::C));
        assert_eq!(t.coincident_vertex(Point2::new(1e-13, 0.0)), Some(Vertex::A));
        assert_eq!(t.coincident_vertex(Point2::new(1e-9, 0.0)), None);
    }
}
