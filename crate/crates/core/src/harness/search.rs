//! Multi-start Nelder–Mead search for the smallest slack of an inequality
//! over the position of `M`.

use serde::Serialize;

use super::fuzz::sample_rng;
use super::sampling::{sample_point, Stratum};
use crate::error::{GeomError, Result};
use crate::geom::{Point2, Triangle};
use crate::inequalities::{
    classic_reports, dergiades_report, lu_report, signed_barrow_report, InequalityId,
};
use crate::regions::{classify, Region, DEFAULT_EPS};

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    pub starts: usize,
    pub seed: u64,
    /// Regions the starting points are drawn from, cycled over the starts.
    /// `None` picks the interior for interior-only inequalities and every
    /// areal region otherwise.
    pub start_regions: Option<Vec<Region>>,
    pub max_iter: usize,
    /// Stop once the simplex is smaller than this multiple of the diameter.
    pub step_tol_factor: f64,
    /// Initial simplex edge, as a multiple of the diameter.
    pub initial_step_factor: f64,
    pub eps: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            starts: 16,
            seed: 0,
            start_regions: None,
            max_iter: 500,
            step_tol_factor: 1e-10,
            initial_step_factor: 0.05,
            eps: DEFAULT_EPS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchResult {
    pub point: [f64; 2],
    pub slack: f64,
    #[serde(skip)]
    pub region: Region,
    #[serde(skip)]
    pub evaluations: usize,
}

/// Slack of `id` at `m`, `+inf` outside the inequality's domain.
pub fn slack_at(t: &Triangle, id: InequalityId, m: Point2, eps: f64) -> f64 {
    let slack = match id {
        InequalityId::Barrow1 => classic_reports(t, m, eps).map(|(b, _)| b.slack),
        InequalityId::ErdosMordell2 => classic_reports(t, m, eps).map(|(_, e)| e.slack),
        InequalityId::LuWeighted13 => lu_report(t, m, eps).map(|r| r.slack),
        InequalityId::Dergiades3 => dergiades_report(t, m, eps).map(|r| r.slack),
        InequalityId::SignedBarrow30 => signed_barrow_report(t, m, eps).map(|r| r.slack),
        InequalityId::VertexA14 | InequalityId::VertexB15 | InequalityId::VertexC16 => {
            Err(GeomError::Domain("vertex inequalities have no search domain".into()))
        }
    };
    slack.unwrap_or(f64::INFINITY)
}

#[derive(Debug, Clone, Copy)]
struct Minimum {
    x: [f64; 2],
    f: f64,
    evaluations: usize,
}

/// Nelder–Mead on the plane with standard coefficients (reflection 1,
/// expansion 2, contraction 1/2, shrink 1/2). Non-finite objective values
/// are treated as `+inf`.
fn nelder_mead<F: Fn([f64; 2]) -> f64>(
    f: &F,
    x0: [f64; 2],
    step: f64,
    xtol: f64,
    max_iter: usize,
) -> Minimum {
    let eval = |x: [f64; 2]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut simplex = [x0, [x0[0] + step, x0[1]], [x0[0], x0[1] + step]];
    let mut values = simplex.map(eval);
    let mut evaluations = 3;

    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];

    for _ in 0..max_iter {
        let mut order = [0, 1, 2];
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = order.map(|i| simplex[i]);
        values = order.map(|i| values[i]);

        let size = simplex[1..]
            .iter()
            .map(|p| (p[0] - simplex[0][0]).hypot(p[1] - simplex[0][1]))
            .fold(0.0, f64::max);
        if size <= xtol {
            break;
        }

        let centroid = lerp(simplex[0], simplex[1], 0.5);
        let worst = simplex[2];
        let reflected = lerp(centroid, worst, -1.0);
        let fr = eval(reflected);
        evaluations += 1;

        if fr < values[0] {
            let expanded = lerp(centroid, worst, -2.0);
            let fe = eval(expanded);
            evaluations += 1;
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
            continue;
        }
        if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
            continue;
        }
        let (contracted, outside) = if fr < values[2] {
            (lerp(centroid, reflected, 0.5), true)
        } else {
            (lerp(centroid, worst, 0.5), false)
        };
        let fc = eval(contracted);
        evaluations += 1;
        let accept = if outside { fc <= fr } else { fc < values[2] };
        if accept {
            simplex[2] = contracted;
            values[2] = fc;
            continue;
        }
        for k in 1..3 {
            simplex[k] = lerp(simplex[0], simplex[k], 0.5);
            values[k] = eval(simplex[k]);
        }
        evaluations += 2;
    }

    let best = (0..3).min_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap();
    Minimum {
        x: simplex[best],
        f: values[best],
        evaluations,
    }
}

/// Smallest slack of `id` found from `options.starts` seeded starting points.
pub fn tightness_search(t: &Triangle, id: InequalityId, options: &SearchOptions) -> Result<SearchResult> {
    if matches!(
        id,
        InequalityId::VertexA14 | InequalityId::VertexB15 | InequalityId::VertexC16
    ) {
        return Err(GeomError::Domain(format!(
            "{id} holds only at a vertex; there is nothing to search"
        )));
    }
    if options.starts == 0 {
        return Err(GeomError::Domain("at least one start is required".into()));
    }
    let regions = match &options.start_regions {
        Some(r) if !r.is_empty() => r.clone(),
        Some(_) => return Err(GeomError::Domain("empty start region list".into())),
        None if id.interior_only() => vec![Region::Lambda0],
        None => Region::AREAL.to_vec(),
    };
    let strata = regions
        .iter()
        .map(|&r| {
            Stratum::from_region(r)
                .ok_or_else(|| GeomError::Domain(format!("cannot start a search at {r}")))
        })
        .collect::<Result<Vec<_>>>()?;

    let diameter = t.diameter();
    let objective = |x: [f64; 2]| slack_at(t, id, Point2::from(x), options.eps);
    let mut best: Option<Minimum> = None;
    let mut evaluations = 0;

    for k in 0..options.starts {
        let stratum = strata[k % strata.len()];
        let mut rng = sample_rng(options.seed, k as u64);
        let Some(start) = sample_point(&mut rng, t, stratum, options.eps) else {
            continue;
        };
        let found = nelder_mead(
            &objective,
            start.into(),
            options.initial_step_factor * diameter,
            options.step_tol_factor * diameter,
            options.max_iter,
        );
        evaluations += found.evaluations;
        if best.is_none_or(|b| found.f < b.f) {
            best = Some(found);
        }
    }

    let best = best
        .filter(|b| b.f.is_finite())
        .ok_or_else(|| GeomError::Domain("no start reached the inequality's domain".into()))?;
    let point = Point2::from(best.x);
    Ok(SearchResult {
        point: best.x,
        slack: best.f,
        region: classify(t, point, options.eps)?,
        evaluations,
    })
}
