use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bisectors::signed_bisectors;
use crate::error::{GeomError, Result};
use crate::geom::{vertex_distances, Point2, Triangle};
use crate::inequalities::evaluate;
use crate::regions::Region;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl BBox {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        let b = Self { x0, y0, x1, y1 };
        if ![x0, y0, x1, y1].iter().all(|v| v.is_finite()) || !(x1 > x0 && y1 > y0) {
            return Err(GeomError::Domain(format!("empty or non-finite bounding box {b:?}")));
        }
        Ok(b)
    }

    /// Bounding box of the triangle, grown by `margin` times its diameter on
    /// every side.
    pub fn around(t: &Triangle, margin: f64) -> Self {
        let pts = t.vertices();
        let pad = margin * t.diameter();
        let fold = |f: fn(f64, f64) -> f64, init: f64, get: fn(&Point2) -> f64| {
            pts.iter().map(get).fold(init, f)
        };
        Self {
            x0: fold(f64::min, f64::INFINITY, |p| p.x) - pad,
            y0: fold(f64::min, f64::INFINITY, |p| p.y) - pad,
            x1: fold(f64::max, f64::NEG_INFINITY, |p| p.x) + pad,
            y1: fold(f64::max, f64::NEG_INFINITY, |p| p.y) + pad,
        }
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }
}

/// One cell of a scan, evaluated at the cell center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub x: f64,
    pub y: f64,
    pub region: Region,
    pub r_a: f64,
    pub r_b: f64,
    pub r_c: f64,
    pub lp_a: f64,
    pub lp_b: f64,
    pub lp_c: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanGrid {
    pub bbox: BBox,
    pub resolution: usize,
    /// Row-major, `y` ascending in the outer loop and `x` in the inner one.
    pub rows: Vec<ScanRow>,
}

pub fn cell_center(bbox: &BBox, resolution: usize, i: usize, j: usize) -> Point2 {
    let n = resolution as f64;
    Point2::new(
        bbox.x0 + (i as f64 + 0.5) * bbox.width() / n,
        bbox.y0 + (j as f64 + 0.5) * bbox.height() / n,
    )
}

fn scan_cell(t: &Triangle, m: Point2, eps: f64) -> Result<ScanRow> {
    let report = evaluate(t, m, eps)?;
    let r = vertex_distances(t, m);
    let lp = match report.region.vertex() {
        // only the bisector opposite the vertex survives; the other two
        // vanish in the limit
        Some(v) => {
            let mut lp = [0.0; 3];
            lp[v.index()] = report.terms[0].value;
            lp
        }
        None => signed_bisectors(t, m, eps)?.as_array(),
    };
    Ok(ScanRow {
        x: m.x,
        y: m.y,
        region: report.region,
        r_a: r.r_a,
        r_b: r.r_b,
        r_c: r.r_c,
        lp_a: lp[0],
        lp_b: lp[1],
        lp_c: lp[2],
        lhs: report.lhs,
        rhs: report.rhs,
        slack: report.slack,
    })
}

/// Evaluates the dispatched inequality at every cell center of a
/// `resolution x resolution` grid.
pub fn grid_scan(t: &Triangle, bbox: BBox, resolution: usize, eps: f64) -> Result<ScanGrid> {
    if resolution < 2 {
        return Err(GeomError::Domain(format!("resolution must be >= 2, got {resolution}")));
    }
    BBox::new(bbox.x0, bbox.y0, bbox.x1, bbox.y1)?;
    let rows = (0..resolution * resolution)
        .into_par_iter()
        .map(|k| scan_cell(t, cell_center(&bbox, resolution, k % resolution, k / resolution), eps))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanGrid {
        bbox,
        resolution,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::DEFAULT_EPS;

    fn unit() -> Triangle {
        Triangle::from_coords([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap()
    }

    #[test]
    fn row_count_and_order() {
        let bbox = BBox::new(-1.0, -1.0, 2.0, 2.0).unwrap();
        let g = grid_scan(&unit(), bbox, 4, DEFAULT_EPS).unwrap();
        assert_eq!(g.rows.len(), 16);
        assert_eq!((g.rows[0].x, g.rows[0].y), (-0.625, -0.625));
        assert_eq!((g.rows[1].x, g.rows[1].y), (0.125, -0.625));
        assert_eq!((g.rows[4].x, g.rows[4].y), (-0.625, 0.125));
    }

    #[test]
    fn vertex_on_cell_center() {
        // 2x2 grid over [-1,1]^2 has centers at (±0.5, ±0.5); shift so that A
        // sits exactly on one of them.
        let t = Triangle::from_coords([[-0.5, -0.5], [1.5, -0.5], [-0.5, 1.5]]).unwrap();
        let bbox = BBox::new(-1.0, -1.0, 1.0, 1.0).unwrap();
        let g = grid_scan(&t, bbox, 2, DEFAULT_EPS).unwrap();
        let row = g.rows[0];
        assert_eq!(row.region, Region::VertexA);
        assert_eq!(row.r_a, 0.0);
        assert_eq!((row.lp_b, row.lp_c), (0.0, 0.0));
        assert!(row.lp_a > 0.0 && row.slack >= 0.0);
    }

    #[test]
    fn rejects_bad_grids() {
        let bbox = BBox { x0: 0.0, y0: 0.0, x1: 1.0, y1: 1.0 };
        assert!(grid_scan(&unit(), bbox, 1, DEFAULT_EPS).is_err());
        let flat = BBox { x0: 0.0, y0: 0.0, x1: 0.0, y1: 1.0 };
        assert!(grid_scan(&unit(), flat, 8, DEFAULT_EPS).is_err());
    }

    #[test]
    fn slack_non_negative_over_grid() {
        let t = unit();
        let g = grid_scan(&t, BBox::around(&t, 1.0), 64, DEFAULT_EPS).unwrap();
        for row in &g.rows {
            let tol = 1e-9 * (row.r_a + row.r_b + row.r_c);
            assert!(row.slack >= -tol, "{row:?}");
        }
    }
}
