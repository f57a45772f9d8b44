//! Apex angles at `M`, lengths of the internal bisectors of those angles, and
//! their signed versions.
//!
//! For `M` off the line `BC` the bisector of `∠BMC` has length
//!
//! ```text
//! l = 2 R_B R_C / (R_B + R_C) * cos(α/2)
//!   = sqrt(R_B R_C) / (R_B + R_C) * sqrt((R_B + R_C)^2 - |BC|^2)
//! ```
//!
//! and on the line it degenerates to `0` on the closed segment `[BC]` and to
//! `2 R_B R_C / (R_B + R_C)` elsewhere on the line (the continuous limit).

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geom::{barycentric, Point2, Triangle, Vertex, COINCIDENCE_FACTOR};
use crate::regions::{sign_pattern, Sign};

/// Relative agreement demanded of the two closed forms.
pub const FORM_AGREEMENT: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApexAngles {
    /// `∠BMC`
    pub alpha: f64,
    /// `∠CMA`
    pub beta: f64,
    /// `∠AMB`
    pub gamma: f64,
}

impl ApexAngles {
    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }
}

/// Angle between the rays `m -> p` and `m -> q`, in `[0, π]`.
fn ray_angle(m: Point2, p: Point2, q: Point2) -> f64 {
    let (vp, vq) = (p - m, q - m);
    vp.cross(vq).abs().atan2(vp.dot(vq))
}

pub fn apex_angles(t: &Triangle, m: Point2) -> Result<ApexAngles> {
    if let Some(v) = t.coincident_vertex(m) {
        return Err(GeomError::VertexCoincidence(v));
    }
    let [a, b, c] = t.vertices();
    Ok(ApexAngles {
        alpha: ray_angle(m, b, c),
        beta: ray_angle(m, c, a),
        gamma: ray_angle(m, a, b),
    })
}

/// Both closed forms of the bisector length, evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectorForms {
    pub r_b: f64,
    pub r_c: f64,
    /// `2 R_B R_C / (R_B + R_C) * cos(α/2)`
    pub cosine: f64,
    /// `sqrt(R_B R_C) / (R_B + R_C) * sqrt((R_B + R_C)^2 - |BC|^2)`
    pub radical: f64,
    /// `M` lies exactly on the line `BC`.
    pub collinear: bool,
    /// `M` lies on the closed segment `[BC]` (only meaningful when collinear).
    pub between: bool,
}

impl BisectorForms {
    pub fn compute(m: Point2, b: Point2, c: Point2) -> Self {
        let (vb, vc) = (b - m, c - m);
        let (r_b, r_c) = (vb.norm(), vc.norm());
        let cross = vb.cross(vc).abs();
        let dot = vb.dot(vc);
        let harmonic = 2.0 * r_b * r_c / (r_b + r_c);

        // cos(α/2). Near α = π use sin of half the supplementary angle, which
        // atan2 resolves to full relative precision.
        let half_cos = if dot < 0.0 {
            (cross.atan2(-dot) / 2.0).sin()
        } else {
            (cross.atan2(dot) / 2.0).cos()
        };
        let cosine = harmonic * half_cos;

        // (R_B + R_C)^2 - |BC|^2 = 2 (R_B R_C + vb·vc) by the law of cosines;
        // for obtuse apex angles rewrite as 2 cross^2 / (R_B R_C - vb·vc).
        let rr = r_b * r_c;
        let excess = if dot < 0.0 {
            2.0 * cross * cross / (rr - dot)
        } else {
            2.0 * (rr + dot)
        };
        let radical = rr.sqrt() / (r_b + r_c) * excess.sqrt();

        Self {
            r_b,
            r_c,
            cosine,
            radical,
            collinear: cross == 0.0,
            between: dot <= 0.0,
        }
    }

    /// Value on the line through `B` and `C`.
    pub fn collinear_value(&self) -> f64 {
        if self.between {
            0.0
        } else {
            2.0 * self.r_b * self.r_c / (self.r_b + self.r_c)
        }
    }

    pub fn relative_disagreement(&self) -> f64 {
        let scale = self.cosine.abs().max(self.radical.abs());
        if scale == 0.0 {
            0.0
        } else {
            (self.cosine - self.radical).abs() / scale
        }
    }
}

/// Length of the bisector of `∠BMC` from `m`.
pub fn bisector_length(m: Point2, b: Point2, c: Point2) -> Result<f64> {
    let radius = COINCIDENCE_FACTOR * b.distance(c);
    if m.distance(b) <= radius {
        return Err(GeomError::VertexCoincidence(Vertex::B));
    }
    if m.distance(c) <= radius {
        return Err(GeomError::VertexCoincidence(Vertex::C));
    }
    let forms = BisectorForms::compute(m, b, c);
    Ok(length_from_forms(&forms, forms.collinear))
}

fn length_from_forms(forms: &BisectorForms, on_line: bool) -> f64 {
    if on_line {
        return forms.collinear_value();
    }
    debug_assert!(
        forms.relative_disagreement() <= FORM_AGREEMENT,
        "bisector closed forms disagree: {forms:?}"
    );
    forms.cosine
}

/// Foot `A'` of the bisector of `∠BMC` on `BC`, from the angle-bisector
/// theorem `|BA'| : |A'C| = |MB| : |MC|`.
pub fn bisector_foot(m: Point2, b: Point2, c: Point2) -> Result<Point2> {
    let radius = COINCIDENCE_FACTOR * b.distance(c);
    let (r_b, r_c) = (m.distance(b), m.distance(c));
    if r_b <= radius {
        return Err(GeomError::VertexCoincidence(Vertex::B));
    }
    if r_c <= radius {
        return Err(GeomError::VertexCoincidence(Vertex::C));
    }
    if (b - m).cross(c - m) == 0.0 {
        return Err(GeomError::CollinearInput);
    }
    Ok((b * r_c + c * r_b) * (1.0 / (r_b + r_c)))
}

/// Unsigned bisector lengths `(l_a, l_b, l_c)` of `∠BMC`, `∠CMA`, `∠AMB`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BisectorTriple {
    pub l_a: f64,
    pub l_b: f64,
    pub l_c: f64,
}

impl BisectorTriple {
    pub fn as_array(&self) -> [f64; 3] {
        [self.l_a, self.l_b, self.l_c]
    }
}

/// Signed bisector lengths `(l'_a, l'_b, l'_c)`: positive when `M` is on the
/// same side of the sideline as the opposite vertex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignedBisectorTriple {
    pub lp_a: f64,
    pub lp_b: f64,
    pub lp_c: f64,
}

impl SignedBisectorTriple {
    pub fn as_array(&self) -> [f64; 3] {
        [self.lp_a, self.lp_b, self.lp_c]
    }

    pub fn unsigned(&self) -> BisectorTriple {
        BisectorTriple {
            l_a: self.lp_a.abs(),
            l_b: self.lp_b.abs(),
            l_c: self.lp_c.abs(),
        }
    }
}

/// Signed bisectors at `m`, with signs read off the barycentric coordinates.
///
/// A coordinate within `eps` of zero puts `m` on that sideline, where the
/// collinear value applies and the sign is taken non-negative.
pub fn signed_bisectors(t: &Triangle, m: Point2, eps: f64) -> Result<SignedBisectorTriple> {
    if !m.is_finite() {
        return Err(GeomError::NonFinite);
    }
    if let Some(v) = t.coincident_vertex(m) {
        return Err(GeomError::VertexCoincidence(v));
    }
    let pattern = sign_pattern(&barycentric(t, m), eps);
    if pattern.count(Sign::Zero) >= 2 {
        let v = Vertex::ALL
            .into_iter()
            .find(|&v| pattern.get(v) != Sign::Zero)
            .unwrap_or(Vertex::A);
        return Err(GeomError::VertexCoincidence(v));
    }

    let signed = Vertex::ALL.map(|v| {
        let (p, q) = v.others();
        let forms = BisectorForms::compute(m, t.vertex(p), t.vertex(q));
        match pattern.get(v) {
            Sign::Zero => {
                // On the sideline: between the vertices iff the other two
                // coordinates are both positive.
                let on_segment = pattern.get(p) == Sign::Pos && pattern.get(q) == Sign::Pos;
                if on_segment {
                    0.0
                } else {
                    2.0 * forms.r_b * forms.r_c / (forms.r_b + forms.r_c)
                }
            }
            Sign::Pos => length_from_forms(&forms, forms.collinear),
            Sign::Neg => -length_from_forms(&forms, forms.collinear),
        }
    });
    Ok(SignedBisectorTriple {
        lp_a: signed[0],
        lp_b: signed[1],
        lp_c: signed[2],
    })
}

/// Unsigned bisector lengths at a non-vertex point.
pub fn bisectors(t: &Triangle, m: Point2, eps: f64) -> Result<BisectorTriple> {
    signed_bisectors(t, m, eps).map(|s| s.unsigned())
}
