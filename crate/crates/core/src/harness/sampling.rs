//! Seeded triangle and point samplers.
//!
//! Points are built in barycentric space with the target sign pattern, so
//! thin regions of near-degenerate triangles are hit as often as fat ones.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::geom::{barycentric, BaryCoords, Point2, Triangle, Vertex, DEGENERACY_FACTOR};
use crate::regions::{classify, sign_pattern, Region, Sign};

/// Bounded retries for every rejection loop in this module.
const MAX_TRIES: usize = 256;

/// Near-vertex band, as multiples of the triangle diameter.
pub const NEAR_VERTEX_BAND: (f64, f64) = (1e-10, 1e-6);

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TriangleShape {
    Random,
    NearDegenerate,
    EquilateralPerturbed { perturbation: f64 },
    /// Per sample: half random, a quarter near-degenerate, a quarter
    /// equilateral with perturbation 0.1.
    #[default]
    Mixed,
}

/// Sampling target: one of the areal regions, a sideline (segment or
/// extension), or the band around a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stratum {
    Lambda0,
    Mu1,
    Mu2,
    Mu3,
    Mu4,
    Mu5,
    Mu6,
    Sideline,
    NearVertex,
}

impl Stratum {
    pub const ALL: [Stratum; 9] = [
        Stratum::Lambda0,
        Stratum::Mu1,
        Stratum::Mu2,
        Stratum::Mu3,
        Stratum::Mu4,
        Stratum::Mu5,
        Stratum::Mu6,
        Stratum::Sideline,
        Stratum::NearVertex,
    ];

    pub fn region(self) -> Option<Region> {
        Some(match self {
            Stratum::Lambda0 => Region::Lambda0,
            Stratum::Mu1 => Region::Mu1,
            Stratum::Mu2 => Region::Mu2,
            Stratum::Mu3 => Region::Mu3,
            Stratum::Mu4 => Region::Mu4,
            Stratum::Mu5 => Region::Mu5,
            Stratum::Mu6 => Region::Mu6,
            Stratum::Sideline | Stratum::NearVertex => return None,
        })
    }

    pub fn from_region(r: Region) -> Option<Stratum> {
        Stratum::ALL.into_iter().find(|s| s.region() == Some(r))
    }

    pub fn label(self) -> &'static str {
        match self {
            Stratum::Lambda0 => "lambda0",
            Stratum::Mu1 => "mu1",
            Stratum::Mu2 => "mu2",
            Stratum::Mu3 => "mu3",
            Stratum::Mu4 => "mu4",
            Stratum::Mu5 => "mu5",
            Stratum::Mu6 => "mu6",
            Stratum::Sideline => "sideline",
            Stratum::NearVertex => "near-vertex",
        }
    }
}

fn log_uniform<R: Rng + ?Sized>(rng: &mut R, lo_exp: f64, hi_exp: f64) -> f64 {
    10f64.powf(rng.gen_range(lo_exp..hi_exp))
}

fn box_point<R: Rng + ?Sized>(rng: &mut R, center: Point2, half: f64) -> Point2 {
    Point2::new(
        center.x + half * rng.gen_range(-1.0..1.0),
        center.y + half * rng.gen_range(-1.0..1.0),
    )
}

/// Random placement: a length scale spanning four decades and a center a few
/// scales away from the origin.
fn placement<R: Rng + ?Sized>(rng: &mut R) -> (Point2, f64) {
    let scale = log_uniform(rng, -2.0, 2.0);
    let center = box_point(rng, Point2::new(0.0, 0.0), 5.0 * scale);
    (center, scale)
}

pub fn equilateral(center: Point2, circumradius: f64, rotation: f64) -> Triangle {
    let pts = [0.0, 1.0, 2.0].map(|k: f64| {
        let th = rotation + k * TAU / 3.0;
        Point2::new(center.x + circumradius * th.cos(), center.y + circumradius * th.sin())
    });
    Triangle::new(pts[0], pts[1], pts[2]).expect("equilateral triangle is non-degenerate")
}

pub fn sample_triangle<R: Rng + ?Sized>(rng: &mut R, shape: TriangleShape) -> Triangle {
    match shape {
        TriangleShape::Random => random_triangle(rng),
        TriangleShape::NearDegenerate => near_degenerate_triangle(rng),
        TriangleShape::EquilateralPerturbed { perturbation } => {
            perturbed_equilateral(rng, perturbation)
        }
        TriangleShape::Mixed => {
            let pick: f64 = rng.gen();
            if pick < 0.5 {
                random_triangle(rng)
            } else if pick < 0.75 {
                near_degenerate_triangle(rng)
            } else {
                perturbed_equilateral(rng, 0.1)
            }
        }
    }
}

fn random_triangle<R: Rng + ?Sized>(rng: &mut R) -> Triangle {
    let (center, scale) = placement(rng);
    for _ in 0..MAX_TRIES {
        let [a, b, c] = [(); 3].map(|_| box_point(rng, center, scale));
        if let Ok(t) = Triangle::new(a, b, c) {
            // keep "random" clear of the near-degenerate family
            if t.signed_area().abs() >= 1e-3 * t.diameter() * t.diameter() {
                return t;
            }
        }
    }
    equilateral(center, scale, 0.0)
}

fn near_degenerate_triangle<R: Rng + ?Sized>(rng: &mut R) -> Triangle {
    let (center, scale) = placement(rng);
    for _ in 0..MAX_TRIES {
        let a = box_point(rng, center, scale);
        let b = box_point(rng, center, scale);
        let ab = b - a;
        let len = ab.norm();
        if len < 0.25 * scale {
            continue;
        }
        // foot of C along AB (possibly beyond an endpoint), then a small
        // normal offset giving area / diameter^2 in [1e-10, 1e-4]
        let along: f64 = rng.gen_range(-0.5..1.5);
        let foot = a + ab * along;
        let diam = len * (along.max(1.0) - along.min(0.0));
        let ratio = log_uniform(rng, -10.0, -4.0);
        let height = 2.0 * ratio * diam * diam / len;
        let side = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let normal = Point2::new(-ab.y, ab.x) * (side * height / len);
        let c = foot + normal;
        if let Ok(t) = Triangle::new(a, b, c) {
            let floor = 10.0 * DEGENERACY_FACTOR * t.diameter() * t.diameter();
            if t.signed_area().abs() >= floor {
                return t;
            }
        }
    }
    random_triangle(rng)
}

fn perturbed_equilateral<R: Rng + ?Sized>(rng: &mut R, perturbation: f64) -> Triangle {
    let (center, scale) = placement(rng);
    let rotation = rng.gen_range(0.0..TAU);
    let base = equilateral(center, scale, rotation);
    if perturbation == 0.0 {
        return base;
    }
    for _ in 0..MAX_TRIES {
        let [a, b, c] = base.vertices().map(|p| box_point(rng, p, perturbation * scale));
        if let Ok(t) = Triangle::new(a, b, c) {
            return t;
        }
    }
    base
}

/// Positive proportions summing to one; log-uniform so that points close to
/// the bounding sidelines show up regularly.
fn proportions<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| log_uniform(rng, -6.0, 0.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// Normalized barycentric coordinates with the open sign pattern of `region`.
fn bary_for_region<R: Rng + ?Sized>(rng: &mut R, region: Region) -> BaryCoords {
    let pattern = region.open_pattern().expect("areal region");
    let mut coords = [0.0; 3];
    let mut negative_total = 0.0;
    for v in Vertex::ALL {
        if pattern.get(v) == Sign::Neg {
            let x = -log_uniform(rng, -4.0, 1.3);
            coords[v.index()] = x;
            negative_total += x;
        }
    }
    let positives: Vec<Vertex> = Vertex::ALL
        .into_iter()
        .filter(|&v| pattern.get(v) == Sign::Pos)
        .collect();
    let budget = 1.0 - negative_total;
    for (v, share) in positives.iter().zip(proportions(rng, positives.len())) {
        coords[v.index()] = budget * share;
    }
    BaryCoords::new(coords[0], coords[1], coords[2])
}

/// A point of `t` in the target stratum, or `None` if rounding kept
/// defeating the construction (possible only for extremely thin triangles).
pub fn sample_point<R: Rng + ?Sized>(
    rng: &mut R,
    t: &Triangle,
    target: Stratum,
    eps: f64,
) -> Option<Point2> {
    for _ in 0..MAX_TRIES {
        let m = match target {
            Stratum::Sideline => sideline_point(rng, t),
            Stratum::NearVertex => near_vertex_point(rng, t),
            _ => t.point_at(bary_for_region(rng, target.region().unwrap())),
        };
        if accepts(t, m, target, eps) {
            return Some(m);
        }
    }
    None
}

fn sideline_point<R: Rng + ?Sized>(rng: &mut R, t: &Triangle) -> Point2 {
    let v = Vertex::ALL[rng.gen_range(0..3)];
    let (p, q) = v.others();
    let s: f64 = rng.gen_range(-3.0..4.0);
    let mut coords = [0.0; 3];
    coords[p.index()] = s;
    coords[q.index()] = 1.0 - s;
    t.point_at(BaryCoords::new(coords[0], coords[1], coords[2]))
}

fn near_vertex_point<R: Rng + ?Sized>(rng: &mut R, t: &Triangle) -> Point2 {
    let v = Vertex::ALL[rng.gen_range(0..3)];
    let r = t.diameter() * log_uniform(rng, NEAR_VERTEX_BAND.0.log10(), NEAR_VERTEX_BAND.1.log10());
    let th = rng.gen_range(-PI..PI);
    t.vertex(v) + Point2::new(th.cos(), th.sin()) * r
}

fn accepts(t: &Triangle, m: Point2, target: Stratum, eps: f64) -> bool {
    if !m.is_finite() {
        return false;
    }
    match target {
        Stratum::Sideline => {
            let p = sign_pattern(&barycentric(t, m), eps);
            p.count(Sign::Zero) == 1 && t.coincident_vertex(m).is_none()
        }
        Stratum::NearVertex => {
            let radius = NEAR_VERTEX_BAND.1 * t.diameter();
            let near = Vertex::ALL.into_iter().any(|v| {
                let d = m.distance(t.vertex(v));
                d > 0.0 && d <= radius
            });
            near && t.coincident_vertex(m).is_none()
        }
        _ => {
            let region = target.region();
            let open = sign_pattern(&barycentric(t, m), eps);
            region.and_then(Region::open_pattern) == Some(open)
                && classify(t, m, eps).ok() == region
                && t.coincident_vertex(m).is_none()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::DEFAULT_EPS;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn same_seed_same_triangle() {
        for shape in [
            TriangleShape::Random,
            TriangleShape::NearDegenerate,
            TriangleShape::Mixed,
            TriangleShape::EquilateralPerturbed { perturbation: 0.2 },
        ] {
            let t1 = sample_triangle(&mut ChaCha8Rng::seed_from_u64(9), shape);
            let t2 = sample_triangle(&mut ChaCha8Rng::seed_from_u64(9), shape);
            assert_eq!(t1, t2);
        }
    }

    #[test]
    fn zero_perturbation_is_equilateral() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let t = sample_triangle(&mut rng, TriangleShape::EquilateralPerturbed { perturbation: 0.0 });
            let [a, b, c] = t.sides();
            assert!((a - b).abs() <= 1e-12 * a && (b - c).abs() <= 1e-12 * a, "{t:?}");
        }
    }

    #[test]
    fn sampled_triangles_satisfy_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for shape in [TriangleShape::Random, TriangleShape::NearDegenerate, TriangleShape::Mixed] {
            for _ in 0..10_000 {
                let t = sample_triangle(&mut rng, shape);
                let [a, b, c] = t.sides();
                assert!(a > 0.0 && b > 0.0 && c > 0.0);
                assert!(a < b + c && b < c + a && c < a + b);
                let floor = 10.0 * DEGENERACY_FACTOR * t.diameter() * t.diameter();
                assert!(t.signed_area().abs() >= floor);
            }
        }
    }

    #[test]
    fn stratified_points_hit_their_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for target in Stratum::ALL {
            for _ in 0..500 {
                let t = sample_triangle(&mut rng, TriangleShape::Mixed);
                let Some(m) = sample_point(&mut rng, &t, target, DEFAULT_EPS) else {
                    continue;
                };
                let bc = barycentric(&t, m);
                let p = sign_pattern(&bc, DEFAULT_EPS);
                match target {
                    Stratum::Sideline => assert_eq!(p.count(Sign::Zero), 1),
                    Stratum::NearVertex => {
                        let d = Vertex::ALL
                            .into_iter()
                            .map(|v| m.distance(t.vertex(v)))
                            .fold(f64::INFINITY, f64::min);
                        assert!(d > 0.0 && d <= 1e-6 * t.diameter());
                    }
                    _ => {
                        assert_eq!(classify(&t, m, DEFAULT_EPS).unwrap(), target.region().unwrap());
                        assert_eq!(Some(p), target.region().unwrap().open_pattern());
                    }
                }
            }
        }
    }
}
