//! Slack evaluators for the Barrow / Erdős–Mordell family.
//!
//! Every evaluator returns `lhs - rhs`; the inequalities claim this is
//! non-negative. The geometric reports all share `lhs = R_A + R_B + R_C`
//! (minus the vanishing distance at a vertex) and a right-hand side that is a
//! weighted sum over the three sides, recorded term by term so the sign of
//! every bisector factor can be audited.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bisectors::{bisector_length, signed_bisectors, BisectorTriple};
use crate::error::{GeomError, Result};
use crate::geom::{signed_distances, vertex_distances, DistanceTriple, Point2, Triangle, Vertex};
use crate::regions::{classify, Region};

/// Default violation / tightness tolerance, relative to `R_A + R_B + R_C`.
pub const DEFAULT_TOL_FACTOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StatementKind {
    /// `α + β + γ = π`, all cosine terms subtracted.
    S1,
    /// `α = β + γ`, the `α` term added back.
    S2,
    /// `α = β + γ`, only the `α` term subtracted.
    S3,
}

impl StatementKind {
    pub const ALL: [StatementKind; 3] = [StatementKind::S1, StatementKind::S2, StatementKind::S3];

    pub fn alpha(self, beta: f64, gamma: f64) -> f64 {
        match self {
            StatementKind::S1 => PI - beta - gamma,
            StatementKind::S2 | StatementKind::S3 => beta + gamma,
        }
    }
}

fn check_nonneg(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(GeomError::Domain(format!("{name} must be finite and >= 0, got {x}")))
    }
}

fn check_weights(p: f64, q: f64, r: f64) -> Result<()> {
    check_nonneg("p", p)?;
    check_nonneg("q", q)?;
    check_nonneg("r", r)
}

/// `p + q + r` minus the three-cosine right-hand side for the chosen angle
/// relation.
pub fn stmt_slack(kind: StatementKind, p: f64, q: f64, r: f64, beta: f64, gamma: f64) -> Result<f64> {
    check_weights(p, q, r)?;
    check_nonneg("beta", beta)?;
    check_nonneg("gamma", gamma)?;
    if beta + gamma > PI {
        return Err(GeomError::Domain(format!(
            "beta + gamma = {} exceeds pi",
            beta + gamma
        )));
    }
    let alpha = kind.alpha(beta, gamma);
    let qr = 2.0 * (q * r).sqrt() * alpha.cos();
    let pr = 2.0 * (p * r).sqrt() * beta.cos();
    let pq = 2.0 * (p * q).sqrt() * gamma.cos();
    let rhs = match kind {
        StatementKind::S1 => qr + pr + pq,
        StatementKind::S2 => -qr + pr + pq,
        StatementKind::S3 => qr - pr - pq,
    };
    Ok(p + q + r - rhs)
}

/// Absolute differences between direct expressions and their sum-of-squares
/// (or discriminant) rewrites. All four vanish identically.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct IdentityResiduals {
    /// `p+q+r+2√(qr)cosα−2√(pr)cosβ−2√(pq)cosγ` vs its two-square form.
    pub remark1: f64,
    /// Three-square form with the `−4√(qr)cosα` correction, used when `cos α <= 0`.
    pub case1: f64,
    /// Three-square form with the `+4√(pr)cosβ` correction, used when `cos α > 0`.
    pub case2: f64,
    /// Discriminant of the quadratic in `√p` vs `−4(√r sinβ − √q sinγ)^2`.
    pub discriminant: f64,
}

impl IdentityResiduals {
    pub fn max(&self) -> f64 {
        self.remark1
            .max(self.case1)
            .max(self.case2)
            .max(self.discriminant)
    }
}

/// Residuals of the square-completion identities at `(p, q, r)` with
/// `γ = α − β`.
pub fn identity_residuals(p: f64, q: f64, r: f64, beta: f64, alpha: f64) -> Result<IdentityResiduals> {
    check_weights(p, q, r)?;
    check_nonneg("beta", beta)?;
    if !(alpha.is_finite() && (0.0..=PI).contains(&alpha)) {
        return Err(GeomError::Domain(format!("alpha must lie in [0, pi], got {alpha}")));
    }
    if beta > alpha {
        return Err(GeomError::Domain(format!(
            "beta = {beta} exceeds alpha = {alpha}, gamma would be negative"
        )));
    }
    let gamma = alpha - beta;
    let (sp, sq, sr) = (p.sqrt(), q.sqrt(), r.sqrt());
    let (ca, sa) = (alpha.cos(), alpha.sin());
    let (cb, sb) = (beta.cos(), beta.sin());
    let (cg, sg) = (gamma.cos(), gamma.sin());
    let sum = p + q + r;

    let direct_s2 = sum + 2.0 * sq * sr * ca - 2.0 * sp * sr * cb - 2.0 * sp * sq * cg;
    let squares_s2 = (sr - sp * cb + sq * ca).powi(2) + (sp * sb - sq * sa).powi(2);
    let remark1 = (direct_s2 - squares_s2).abs();

    let direct_s3 = sum - 2.0 * sq * sr * ca + 2.0 * sp * sr * cb + 2.0 * sp * sq * cg;
    let (case1, case2) = if ca <= 0.0 {
        let form = (sr + sp * cb + sq * ca).powi(2) + (sp * sb + sq * sa).powi(2) - 4.0 * sq * sr * ca;
        ((direct_s3 - form).abs(), 0.0)
    } else {
        let form = (sr - sp * cb - sq * ca).powi(2) + (sp * sb + sq * sa).powi(2) + 4.0 * sp * sr * cb;
        (0.0, (direct_s3 - form).abs())
    };

    let quarter = (sr * cb + sq * cg).powi(2) - (q + r + 2.0 * sq * sr * ca);
    let closed = -4.0 * (sr * sb - sq * sg).powi(2);
    let discriminant = (4.0 * quarter - closed).abs();

    Ok(IdentityResiduals {
        remark1,
        case1,
        case2,
        discriminant,
    })
}

/// Per-side weights `t + 1/t`, each `>= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightTriple {
    pub w_a: f64,
    pub w_b: f64,
    pub w_c: f64,
}

impl WeightTriple {
    pub fn as_array(&self) -> [f64; 3] {
        [self.w_a, self.w_b, self.w_c]
    }
}

fn ratio_weight(x: f64, y: f64) -> f64 {
    (x / y).sqrt() + (y / x).sqrt()
}

/// `w_a = √(R_C/R_B) + √(R_B/R_C)` and cyclic analogues.
pub fn lu_weights(r: &DistanceTriple) -> Result<WeightTriple> {
    for v in Vertex::ALL {
        if r.get(v) <= 0.0 {
            return Err(GeomError::VertexCoincidence(v));
        }
    }
    Ok(WeightTriple {
        w_a: ratio_weight(r.r_c, r.r_b),
        w_b: ratio_weight(r.r_c, r.r_a),
        w_c: ratio_weight(r.r_a, r.r_b),
    })
}

/// Side-ratio weights `(c/b + b/c, c/a + a/c, a/b + b/a)`.
pub fn side_weights(t: &Triangle) -> WeightTriple {
    let [a, b, c] = t.sides();
    WeightTriple {
        w_a: c / b + b / c,
        w_b: c / a + a / c,
        w_c: a / b + b / a,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InequalityId {
    /// `ΣR ≥ 2Σℓ`, interior points.
    #[serde(rename = "barrow")]
    Barrow1,
    /// `ΣR ≥ 2Σr`, interior points.
    #[serde(rename = "erdos-mordell")]
    ErdosMordell2,
    /// Side-ratio weighted signed distances, anywhere in the plane.
    #[serde(rename = "dergiades")]
    Dergiades3,
    /// Distance-ratio weighted bisectors, interior points.
    #[serde(rename = "lu")]
    LuWeighted13,
    /// Distance-ratio weighted signed bisectors, anywhere but the vertices.
    #[serde(rename = "signed-barrow")]
    SignedBarrow30,
    #[serde(rename = "vertex-a")]
    VertexA14,
    #[serde(rename = "vertex-b")]
    VertexB15,
    #[serde(rename = "vertex-c")]
    VertexC16,
}

impl InequalityId {
    pub const ALL: [InequalityId; 8] = [
        InequalityId::Barrow1,
        InequalityId::ErdosMordell2,
        InequalityId::Dergiades3,
        InequalityId::LuWeighted13,
        InequalityId::SignedBarrow30,
        InequalityId::VertexA14,
        InequalityId::VertexB15,
        InequalityId::VertexC16,
    ];

    pub fn label(self) -> &'static str {
        match self {
            InequalityId::Barrow1 => "barrow",
            InequalityId::ErdosMordell2 => "erdos-mordell",
            InequalityId::Dergiades3 => "dergiades",
            InequalityId::LuWeighted13 => "lu",
            InequalityId::SignedBarrow30 => "signed-barrow",
            InequalityId::VertexA14 => "vertex-a",
            InequalityId::VertexB15 => "vertex-b",
            InequalityId::VertexC16 => "vertex-c",
        }
    }

    pub fn at_vertex(v: Vertex) -> Self {
        match v {
            Vertex::A => InequalityId::VertexA14,
            Vertex::B => InequalityId::VertexB15,
            Vertex::C => InequalityId::VertexC16,
        }
    }

    /// Only defined on the interior of the triangle.
    pub fn interior_only(self) -> bool {
        matches!(
            self,
            InequalityId::Barrow1 | InequalityId::ErdosMordell2 | InequalityId::LuWeighted13
        )
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for InequalityId {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        InequalityId::ALL
            .into_iter()
            .find(|id| id.label() == s)
            .ok_or_else(|| GeomError::Domain(format!("unknown inequality {s:?}")))
    }
}

/// One side's contribution `weight * value` to a right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Term {
    pub side: Side,
    pub weight: f64,
    pub value: f64,
    pub contribution: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
}

impl From<Vertex> for Side {
    fn from(v: Vertex) -> Self {
        match v {
            Vertex::A => Side::A,
            Vertex::B => Side::B,
            Vertex::C => Side::C,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub inequality: InequalityId,
    pub region: Region,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    /// `R_A + R_B + R_C`, the length scale tolerances are taken against.
    #[serde(skip)]
    pub scale: f64,
    pub terms: Vec<Term>,
}

impl InequalityReport {
    fn from_terms(
        inequality: InequalityId,
        region: Region,
        lhs: f64,
        scale: f64,
        terms: Vec<Term>,
    ) -> Self {
        let rhs = terms.iter().map(|t| t.contribution).sum::<f64>();
        Self {
            inequality,
            region,
            lhs,
            rhs,
            slack: lhs - rhs,
            scale,
            terms,
        }
    }

    /// `slack / (R_A + R_B + R_C)`; zero when the scale vanishes.
    pub fn relative_slack(&self) -> f64 {
        if self.scale > 0.0 {
            self.slack / self.scale
        } else {
            self.slack
        }
    }

    pub fn violates(&self, tol_factor: f64) -> bool {
        self.slack < -tol_factor * self.scale
    }

    pub fn is_tight(&self, tol_factor: f64) -> bool {
        self.slack.abs() <= tol_factor * self.scale
    }
}

fn weighted_terms(weights: [f64; 3], values: [f64; 3]) -> Vec<Term> {
    Vertex::ALL
        .into_iter()
        .map(|v| {
            let (weight, value) = (weights[v.index()], values[v.index()]);
            Term {
                side: v.into(),
                weight,
                value,
                contribution: weight * value,
            }
        })
        .collect()
}

/// Side-ratio weighted signed distances; valid for every point in the plane.
pub fn dergiades_report(t: &Triangle, m: Point2, eps: f64) -> Result<InequalityReport> {
    let region = classify(t, m, eps)?;
    let r = vertex_distances(t, m);
    let d = signed_distances(t, m);
    let terms = weighted_terms(side_weights(t).as_array(), d.as_array());
    Ok(InequalityReport::from_terms(
        InequalityId::Dergiades3,
        region,
        r.sum(),
        r.sum(),
        terms,
    ))
}

fn require_interior(t: &Triangle, m: Point2, eps: f64) -> Result<Region> {
    let region = classify(t, m, eps)?;
    if region != Region::Lambda0 {
        return Err(GeomError::OutsideInterior(region));
    }
    if let Some(v) = t.coincident_vertex(m) {
        return Err(GeomError::VertexCoincidence(v));
    }
    Ok(region)
}

/// Barrow (bisectors) and Erdős–Mordell (sideline distances) with weight 2,
/// for interior points.
pub fn classic_reports(t: &Triangle, m: Point2, eps: f64) -> Result<(InequalityReport, InequalityReport)> {
    let region = require_interior(t, m, eps)?;
    let r = vertex_distances(t, m);
    let l = interior_bisectors(t, m, eps)?;
    let dist = signed_distances(t, m).unsigned();
    let barrow = InequalityReport::from_terms(
        InequalityId::Barrow1,
        region,
        r.sum(),
        r.sum(),
        weighted_terms([2.0; 3], l.as_array()),
    );
    let em = InequalityReport::from_terms(
        InequalityId::ErdosMordell2,
        region,
        r.sum(),
        r.sum(),
        weighted_terms([2.0; 3], dist),
    );
    Ok((barrow, em))
}

fn interior_bisectors(t: &Triangle, m: Point2, eps: f64) -> Result<BisectorTriple> {
    crate::bisectors::bisectors(t, m, eps)
}

/// Distance-ratio weighted (unsigned) bisectors, for interior points.
pub fn lu_report(t: &Triangle, m: Point2, eps: f64) -> Result<InequalityReport> {
    let region = require_interior(t, m, eps)?;
    let r = vertex_distances(t, m);
    let l = interior_bisectors(t, m, eps)?;
    let terms = weighted_terms(lu_weights(&r)?.as_array(), l.as_array());
    Ok(InequalityReport::from_terms(
        InequalityId::LuWeighted13,
        region,
        r.sum(),
        r.sum(),
        terms,
    ))
}

/// Distance-ratio weighted signed bisectors, for any non-vertex point.
pub fn signed_barrow_report(t: &Triangle, m: Point2, eps: f64) -> Result<InequalityReport> {
    let region = classify(t, m, eps)?;
    let lp = signed_bisectors(t, m, eps)?;
    let r = vertex_distances(t, m);
    let terms = weighted_terms(lu_weights(&r)?.as_array(), lp.as_array());
    Ok(InequalityReport::from_terms(
        InequalityId::SignedBarrow30,
        region,
        r.sum(),
        r.sum(),
        terms,
    ))
}

/// Two-distance inequality at (or within the coincidence radius of) vertex
/// `v`: the sum of the other two distances against the one bisector that
/// stays defined there.
pub fn vertex_report(t: &Triangle, m: Point2, v: Vertex) -> Result<InequalityReport> {
    let (p, q) = v.others();
    let r = vertex_distances(t, m);
    let (rp, rq) = (r.get(p), r.get(q));
    let l = bisector_length(m, t.vertex(p), t.vertex(q))?;
    let weight = ratio_weight(rq, rp);
    let term = Term {
        side: v.into(),
        weight,
        value: l,
        contribution: weight * l,
    };
    Ok(InequalityReport::from_terms(
        InequalityId::at_vertex(v),
        Region::at_vertex(v),
        rp + rq,
        r.sum(),
        vec![term],
    ))
}

/// Dispatches on the region of `m`: weighted interior inequality inside the
/// triangle, the signed inequality everywhere else, and the two-distance
/// inequality at a vertex.
pub fn evaluate(t: &Triangle, m: Point2, eps: f64) -> Result<InequalityReport> {
    let region = classify(t, m, eps)?;
    let vertex = region.vertex().or_else(|| t.coincident_vertex(m));
    match (vertex, region) {
        (Some(v), _) => vertex_report(t, m, v),
        (None, Region::Lambda0) => lu_report(t, m, eps),
        (None, _) => signed_barrow_report(t, m, eps),
    }
}
