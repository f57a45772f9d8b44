//! Static SVG maps of a scan: region fill, optional slack heatmap, triangle
//! outline and vertex markers.

use std::fmt::Write;

use barrow_core::harness::ScanGrid;
use barrow_core::{Region, Triangle, Vertex};

/// Fill color of every region. The vertex entries color the vertex markers.
pub const PALETTE: [(Region, &str); 10] = [
    (Region::Lambda0, "#f5f5f5"),
    (Region::Mu1, "#e41a1c"),
    (Region::Mu2, "#377eb8"),
    (Region::Mu3, "#4daf4a"),
    (Region::Mu4, "#984ea3"),
    (Region::Mu5, "#ff7f00"),
    (Region::Mu6, "#a65628"),
    (Region::VertexA, "#000000"),
    (Region::VertexB, "#404040"),
    (Region::VertexC, "#808080"),
];

/// Heatmap ramp endpoints, from the smallest to the largest observed slack.
pub const RAMP: [[u8; 3]; 2] = [[0x0d, 0x08, 0x87], [0xf0, 0xf9, 0x21]];

pub fn color(region: Region) -> &'static str {
    PALETTE.iter().find(|(r, _)| *r == region).map(|(_, c)| *c).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    /// Width in pixels; the height follows the bounding box aspect ratio.
    pub width: u32,
    pub heatmap: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self {
            width: 512,
            heatmap: false,
        }
    }
}

fn ramp(t: f64) -> String {
    let [lo, hi] = RAMP;
    let ch = |k: usize| (lo[k] as f64 + t * (hi[k] as f64 - lo[k] as f64)).round() as u8;
    format!("#{:02x}{:02x}{:02x}", ch(0), ch(1), ch(2))
}

pub fn render(t: &Triangle, grid: &ScanGrid, opts: SvgOptions) -> String {
    let b = grid.bbox;
    let n = grid.resolution;
    let width = opts.width as f64;
    let height = (width * b.height() / b.width()).round().max(1.0);
    let (cw, ch) = (width / n as f64, height / n as f64);
    let to_px = |x: f64, y: f64| {
        (
            (x - b.x0) / b.width() * width,
            (b.y1 - y) / b.height() * height,
        )
    };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        width, height, width, height
    );
    let _ = writeln!(
        s,
        "<desc>bbox {} {} {} {}, resolution {}</desc>",
        b.x0, b.y0, b.x1, b.y1, n
    );

    // runs of equal region along each grid row become one rect
    let _ = writeln!(s, r#"<g id="regions" shape-rendering="crispEdges">"#);
    for j in 0..n {
        let row = &grid.rows[j * n..(j + 1) * n];
        let y = (n - 1 - j) as f64 * ch;
        let mut i = 0;
        while i < n {
            let region = row[i].region;
            let start = i;
            while i < n && row[i].region == region {
                i += 1;
            }
            let _ = writeln!(
                s,
                r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{}"/>"#,
                start as f64 * cw,
                y,
                (i - start) as f64 * cw,
                ch,
                color(region)
            );
        }
    }
    let _ = writeln!(s, "</g>");

    if opts.heatmap {
        let (lo, hi) = grid
            .rows
            .iter()
            .map(|r| r.slack)
            .filter(|v| v.is_finite())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        let span = if hi > lo { hi - lo } else { 1.0 };
        let _ = writeln!(
            s,
            r#"<g id="slack" opacity="0.6" shape-rendering="crispEdges"><desc>slack {lo} .. {hi}</desc>"#
        );
        for (k, r) in grid.rows.iter().enumerate() {
            let (i, j) = (k % n, k / n);
            let fill = if r.slack.is_finite() {
                ramp((r.slack - lo) / span)
            } else {
                "none".to_string()
            };
            let _ = writeln!(
                s,
                r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{}"/>"#,
                i as f64 * cw,
                (n - 1 - j) as f64 * ch,
                cw,
                ch,
                fill
            );
        }
        let _ = writeln!(s, "</g>");
    }

    let pts: Vec<(f64, f64)> = t.vertices().iter().map(|p| to_px(p.x, p.y)).collect();
    let _ = writeln!(
        s,
        r##"<polygon points="{:.3},{:.3} {:.3},{:.3} {:.3},{:.3}" fill="none" stroke="#000000" stroke-width="1.5"/>"##,
        pts[0].0, pts[0].1, pts[1].0, pts[1].1, pts[2].0, pts[2].1
    );
    for (v, (x, y)) in Vertex::ALL.iter().zip(&pts) {
        let _ = writeln!(
            s,
            r##"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="{}"/><text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="12">{v}</text>"##,
            color(Region::at_vertex(*v)),
            x + 6.0,
            y - 6.0
        );
    }
    let _ = writeln!(s, "</svg>");
    s
}
