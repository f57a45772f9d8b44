//! Value parsers for the coordinate-list flags.

use barrow_core::harness::{RegionMix, Stratum, TriangleShape};
use barrow_core::{InequalityId, Region};

fn numbers(s: &str, n: usize, what: &str) -> Result<Vec<f64>, String> {
    let vals = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid number {p:?} in {what}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if vals.len() != n {
        return Err(format!("{what} needs {n} comma-separated numbers, got {}", vals.len()));
    }
    if let Some(v) = vals.iter().find(|v| !v.is_finite()) {
        return Err(format!("{what} contains a non-finite value {v}"));
    }
    Ok(vals)
}

/// `"x,y"`
pub fn point(s: &str) -> Result<[f64; 2], String> {
    let v = numbers(s, 2, "point")?;
    Ok([v[0], v[1]])
}

/// `"ax,ay;bx,by;cx,cy"`
pub fn triangle(s: &str) -> Result<[[f64; 2]; 3], String> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != 3 {
        return Err(format!(
            "triangle needs three ';'-separated points, got {}",
            parts.len()
        ));
    }
    Ok([point(parts[0])?, point(parts[1])?, point(parts[2])?])
}

/// `"x0,y0,x1,y1"`
pub fn bbox(s: &str) -> Result<[f64; 4], String> {
    let v = numbers(s, 4, "bbox")?;
    if !(v[2] > v[0] && v[3] > v[1]) {
        return Err(format!("bbox {s:?} is empty; expected x0 < x1 and y0 < y1"));
    }
    Ok([v[0], v[1], v[2], v[3]])
}

pub fn inequality(s: &str) -> Result<InequalityId, String> {
    s.parse::<InequalityId>().map_err(|e| e.to_string())
}

pub fn region(s: &str) -> Result<Region, String> {
    s.parse::<Region>().map_err(|e| e.to_string())
}

pub fn shape(s: &str, perturbation: f64) -> Result<TriangleShape, String> {
    match s {
        "random" => Ok(TriangleShape::Random),
        "near-degenerate" => Ok(TriangleShape::NearDegenerate),
        "equilateral-perturbed" => Ok(TriangleShape::EquilateralPerturbed { perturbation }),
        "mixed" => Ok(TriangleShape::Mixed),
        _ => Err(format!(
            "unknown shape {s:?}; expected random, near-degenerate, equilateral-perturbed or mixed"
        )),
    }
}

/// `"lambda0=0.5,mu1=0.5"`; strata not listed get weight 0.
pub fn region_mix(s: &str) -> Result<RegionMix, String> {
    let mut w = [0.0; 9];
    for part in s.split(',') {
        let (name, weight) = part
            .split_once('=')
            .ok_or_else(|| format!("expected stratum=weight, got {part:?}"))?;
        let idx = Stratum::ALL
            .iter()
            .position(|st| st.label() == name.trim())
            .ok_or_else(|| {
                let names: Vec<_> = Stratum::ALL.iter().map(|s| s.label()).collect();
                format!("unknown stratum {name:?}; expected one of {}", names.join(", "))
            })?;
        w[idx] = weight
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("invalid weight {weight:?}"))?;
    }
    Ok(RegionMix(w))
}
