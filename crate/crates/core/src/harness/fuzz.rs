use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::sampling::{sample_point, sample_triangle, Stratum, TriangleShape};
use crate::error::{GeomError, Result};
use crate::geom::{Point2, Triangle};
use crate::inequalities::{classic_reports, dergiades_report, evaluate, InequalityId, DEFAULT_TOL_FACTOR};
use crate::regions::{Region, DEFAULT_EPS};

/// Counterexamples kept verbatim in a report.
pub const MAX_RECORDED_VIOLATIONS: usize = 64;

/// Sampling weights over the strata, in `Stratum::ALL` order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionMix(pub [f64; 9]);

impl Default for RegionMix {
    fn default() -> Self {
        RegionMix([1.0 / 9.0; 9])
    }
}

impl RegionMix {
    /// All mass on one stratum.
    pub fn only(s: Stratum) -> Self {
        let mut w = [0.0; 9];
        w[Stratum::ALL.iter().position(|&x| x == s).unwrap()] = 1.0;
        RegionMix(w)
    }

    pub fn validate(&self) -> Result<()> {
        if self.0.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(GeomError::Domain("region mix weights must be >= 0".into()));
        }
        let total: f64 = self.0.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(GeomError::Domain(format!(
                "region mix weights sum to {total}, expected 1"
            )));
        }
        Ok(())
    }

    fn pick<R: Rng + ?Sized>(&self, rng: &mut R) -> Stratum {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for (s, w) in Stratum::ALL.iter().zip(self.0) {
            acc += w;
            if w > 0.0 && u < acc {
                return *s;
            }
        }
        // rounding left u above the running total: last stratum with mass
        Stratum::ALL
            .iter()
            .zip(self.0)
            .rev()
            .find(|(_, w)| *w > 0.0)
            .map(|(s, _)| *s)
            .unwrap_or(Stratum::Lambda0)
    }
}

impl Serialize for RegionMix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<&str, f64> = Stratum::ALL
            .iter()
            .zip(self.0)
            .map(|(s, w)| (s.label(), w))
            .collect();
        map.serialize(ser)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FuzzConfig {
    pub n: usize,
    pub seed: u64,
    pub tol_factor: f64,
    pub eps: f64,
    pub region_mix: RegionMix,
    pub triangle_shape: TriangleShape,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            n: 100_000,
            seed: 42,
            tol_factor: DEFAULT_TOL_FACTOR,
            eps: DEFAULT_EPS,
            region_mix: RegionMix::default(),
            triangle_shape: TriangleShape::Mixed,
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(GeomError::Domain("sample count must be >= 1".into()));
        }
        if !(self.tol_factor.is_finite() && self.tol_factor >= 0.0) {
            return Err(GeomError::Domain("tolerance factor must be >= 0".into()));
        }
        if !(self.eps.is_finite() && self.eps >= 0.0) {
            return Err(GeomError::Domain("eps must be >= 0".into()));
        }
        self.region_mix.validate()
    }
}

/// One (triangle, point) pair of the fuzz corpus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusSample {
    pub index: usize,
    pub stratum: Stratum,
    pub triangle: Triangle,
    pub point: Point2,
}

/// Random stream for sample `index`: the seed selects the key, the index the
/// stream, so samples never depend on evaluation order.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn corpus_sample(config: &FuzzConfig, index: usize) -> CorpusSample {
    let mut rng = sample_rng(config.seed, index as u64);
    let stratum = config.region_mix.pick(&mut rng);
    let shapes = [config.triangle_shape, TriangleShape::Random];
    for shape in shapes.iter().flat_map(|&s| std::iter::repeat_n(s, 8)) {
        let triangle = sample_triangle(&mut rng, shape);
        if let Some(point) = sample_point(&mut rng, &triangle, stratum, config.eps) {
            return CorpusSample {
                index,
                stratum,
                triangle,
                point,
            };
        }
    }
    unreachable!("stratum {stratum:?} could not be sampled on 16 triangles")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub index: usize,
    pub stratum: Stratum,
    pub inequality: InequalityId,
    pub region: Region,
    pub triangle: [[f64; 2]; 3],
    pub point: [f64; 2],
    pub slack: f64,
    /// `R_A + R_B + R_C`
    pub scale: f64,
    pub relative_slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlackStats {
    pub inequality: InequalityId,
    pub region: Region,
    pub samples: usize,
    pub min_relative_slack: f64,
    pub argmin: Witness,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleError {
    pub index: usize,
    pub triangle: [[f64; 2]; 3],
    pub point: [f64; 2],
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub samples: usize,
    pub tol_factor: f64,
    pub eps: f64,
    pub passed: bool,
    pub violation_count: usize,
    pub error_count: usize,
    pub strata: BTreeMap<&'static str, usize>,
    pub stats: Vec<SlackStats>,
    pub violations: Vec<Witness>,
    pub errors: Vec<SampleError>,
}

struct Outcome {
    stratum: Stratum,
    witnesses: Vec<Witness>,
    error: Option<SampleError>,
}

fn check(config: &FuzzConfig, index: usize) -> Outcome {
    let s = corpus_sample(config, index);
    let triangle = s.triangle.vertices().map(<[f64; 2]>::from);
    let point: [f64; 2] = s.point.into();
    let run = || -> Result<Vec<_>> {
        let main = evaluate(&s.triangle, s.point, config.eps)?;
        let mut reports = vec![dergiades_report(&s.triangle, s.point, config.eps)?];
        if main.region == Region::Lambda0 {
            let (barrow, em) = classic_reports(&s.triangle, s.point, config.eps)?;
            reports.push(barrow);
            reports.push(em);
        }
        reports.insert(0, main);
        Ok(reports)
    };
    match run() {
        Ok(reports) => Outcome {
            stratum: s.stratum,
            witnesses: reports
                .into_iter()
                .map(|r| Witness {
                    index,
                    stratum: s.stratum,
                    inequality: r.inequality,
                    region: r.region,
                    triangle,
                    point,
                    slack: r.slack,
                    scale: r.scale,
                    relative_slack: r.relative_slack(),
                })
                .collect(),
            error: None,
        },
        Err(e) => Outcome {
            stratum: s.stratum,
            witnesses: Vec::new(),
            error: Some(SampleError {
                index,
                triangle,
                point,
                message: e.to_string(),
            }),
        },
    }
}

/// Runs the corpus on the current rayon pool. The report depends only on the
/// configuration.
pub fn fuzz(config: &FuzzConfig) -> Result<FuzzReport> {
    config.validate()?;
    let outcomes: Vec<Outcome> = (0..config.n)
        .into_par_iter()
        .map(|i| check(config, i))
        .collect();
    Ok(merge(config, outcomes))
}

/// [`fuzz`] on a dedicated pool of `workers` threads.
pub fn fuzz_with_workers(config: &FuzzConfig, workers: usize) -> Result<FuzzReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| GeomError::Domain(format!("cannot build worker pool: {e}")))?;
    pool.install(|| fuzz(config))
}

fn merge(config: &FuzzConfig, outcomes: Vec<Outcome>) -> FuzzReport {
    let mut strata = BTreeMap::new();
    let mut stats: BTreeMap<(InequalityId, Region), SlackStats> = BTreeMap::new();
    let mut violations = Vec::new();
    let mut violation_count = 0;
    let mut errors = Vec::new();

    // index order, so ties in the minima resolve to the first sample
    for outcome in outcomes {
        *strata.entry(outcome.stratum.label()).or_insert(0) += 1;
        if let Some(e) = outcome.error {
            errors.push(e);
            continue;
        }
        for w in outcome.witnesses {
            let violated = w.slack < -config.tol_factor * w.scale;
            let entry = stats
                .entry((w.inequality, w.region))
                .or_insert_with(|| SlackStats {
                    inequality: w.inequality,
                    region: w.region,
                    samples: 0,
                    min_relative_slack: f64::INFINITY,
                    argmin: w.clone(),
                    violations: 0,
                });
            entry.samples += 1;
            if w.relative_slack < entry.min_relative_slack {
                entry.min_relative_slack = w.relative_slack;
                entry.argmin = w.clone();
            }
            if violated {
                entry.violations += 1;
                violation_count += 1;
                if violations.len() < MAX_RECORDED_VIOLATIONS {
                    violations.push(w);
                }
            }
        }
    }

    FuzzReport {
        seed: config.seed,
        samples: config.n,
        tol_factor: config.tol_factor,
        eps: config.eps,
        passed: violation_count == 0 && errors.is_empty(),
        violation_count,
        error_count: errors.len(),
        strata,
        stats: stats.into_values().collect(),
        violations,
        errors,
    }
}
