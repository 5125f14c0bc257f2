//! Grid sweeps of the Gaussian rate functions and extraction of the Pareto
//! frontier and convex hull of the sampled rate pairs.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{
    an_rates_unchecked, pure_rates_unchecked, time_sharing_rates, AnParams, ChannelParams, TsParams,
};
use crate::strategy::{PureStrategy, RatePair, PROFILES};

/// Pareto dominance and duplicate-merge tolerance.
pub const DOMINANCE_TOL: f64 = 1e-12;

/// Default number of grid points per continuous parameter (step 0.025).
pub const DEFAULT_GRID: usize = 41;

/// Default cap on the number of rate evaluations in one sweep.
pub const DEFAULT_EVAL_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Pure,
    Ts,
    An,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Pure, Scheme::Ts, Scheme::An];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Pure => "pure",
            Scheme::Ts => "ts",
            Scheme::An => "an",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pure" => Ok(Scheme::Pure),
            "ts" => Ok(Scheme::Ts),
            "an" => Ok(Scheme::An),
            _ => Err(Error::domain(format!("unknown scheme `{s}`, expected pure, ts or an"))),
        }
    }
}

/// Grid resolution per swept parameter. A fixed beta removes that axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub rho: usize,
    pub beta: usize,
    pub lambda: usize,
    pub beta1: Option<f64>,
    pub beta2: Option<f64>,
    pub eval_cap: u128,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            rho: DEFAULT_GRID,
            beta: DEFAULT_GRID,
            lambda: DEFAULT_GRID,
            beta1: None,
            beta2: None,
            eval_cap: DEFAULT_EVAL_CAP,
        }
    }
}

impl GridSpec {
    pub fn uniform(n: usize) -> Self {
        GridSpec {
            rho: n,
            beta: n,
            lambda: n,
            ..GridSpec::default()
        }
    }
}

/// Parameter values actually swept, one axis per parameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridAxes {
    pub rho1: Vec<f64>,
    pub beta1: Vec<f64>,
    pub beta2: Vec<f64>,
    pub lambda1: Vec<f64>,
    pub lambda2: Vec<f64>,
}

fn linspace(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

/// Parameters that produced one sampled rate pair. Unused fields are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ParamRecord {
    pub rho1: Option<f64>,
    pub beta1: Option<f64>,
    pub beta2: Option<f64>,
    pub lambda1: Option<f64>,
    pub lambda2: Option<f64>,
    pub s1: Option<PureStrategy>,
    pub s2: Option<PureStrategy>,
}

/// One grid point: axis indices (meaning depends on the scheme) and rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionPoint {
    idx: [u16; 4],
    pub rates: RatePair,
}

#[derive(Debug, Clone)]
pub struct RegionSample {
    pub scheme: Scheme,
    pub channel: ChannelParams,
    pub axes: GridAxes,
    /// Every evaluated grid point in grid order.
    pub points: Vec<RegionPoint>,
    /// Per point: its rate pair is Pareto-maximal.
    pub on_frontier: Vec<bool>,
    /// Distinct Pareto-maximal rate pairs, sorted by increasing `r1`.
    pub frontier: Vec<RatePair>,
    /// Counterclockwise hull vertices of the points plus the axis anchors,
    /// starting at the origin.
    pub hull: Vec<RatePair>,
}

impl RegionSample {
    pub fn params(&self, p: &RegionPoint) -> ParamRecord {
        let [i, j, k, l] = p.idx.map(usize::from);
        match self.scheme {
            Scheme::Pure => ParamRecord {
                s1: Some(PROFILES[i].0),
                s2: Some(PROFILES[i].1),
                beta1: Some(1.0),
                beta2: Some(1.0),
                ..ParamRecord::default()
            },
            Scheme::Ts => ParamRecord {
                rho1: Some(self.axes.rho1[i]),
                beta1: Some(self.axes.beta1[j]),
                beta2: Some(self.axes.beta2[k]),
                ..ParamRecord::default()
            },
            Scheme::An => ParamRecord {
                beta1: Some(self.axes.beta1[i]),
                beta2: Some(self.axes.beta2[j]),
                lambda1: Some(self.axes.lambda1[k]),
                lambda2: Some(self.axes.lambda2[l]),
                ..ParamRecord::default()
            },
        }
    }

    pub fn max_rates(&self) -> RatePair {
        self.points.iter().fold(RatePair::default(), |m, p| {
            RatePair::new(m.r1.max(p.rates.r1), m.r2.max(p.rates.r2))
        })
    }
}

fn axis_for(fixed: Option<f64>, n: usize, name: &str) -> Result<Vec<f64>> {
    match fixed {
        Some(b) if (0.0..=1.0).contains(&b) => Ok(vec![b]),
        Some(b) => Err(Error::domain(format!("{name} must lie in [0, 1], got {b}"))),
        None => Ok(linspace(n)),
    }
}

fn check_resolution(name: &str, n: usize) -> Result<()> {
    if !(2..=u16::MAX as usize).contains(&n) {
        return Err(Error::domain(format!(
            "{name} grid resolution must be between 2 and {}, got {n}",
            u16::MAX
        )));
    }
    Ok(())
}

/// Evaluates `scheme` over its parameter grid and extracts frontier and hull.
///
/// The pure scheme has exactly four points and ignores `grid`. Output order
/// is the row-major grid order regardless of internal parallelism.
pub fn sweep_region(ch: &ChannelParams, scheme: Scheme, grid: &GridSpec) -> Result<RegionSample> {
    ch.validate()?;
    let empty = || GridAxes {
        rho1: vec![],
        beta1: vec![],
        beta2: vec![],
        lambda1: vec![],
        lambda2: vec![],
    };
    let (axes, dims) = match scheme {
        Scheme::Pure => (empty(), [4, 1, 1, 1]),
        Scheme::Ts => {
            check_resolution("rho", grid.rho)?;
            if grid.beta1.is_none() || grid.beta2.is_none() {
                check_resolution("beta", grid.beta)?;
            }
            let axes = GridAxes {
                rho1: linspace(grid.rho),
                beta1: axis_for(grid.beta1, grid.beta, "beta1")?,
                beta2: axis_for(grid.beta2, grid.beta, "beta2")?,
                ..empty()
            };
            let dims = [axes.rho1.len(), axes.beta1.len(), axes.beta2.len(), 1];
            (axes, dims)
        }
        Scheme::An => {
            check_resolution("lambda", grid.lambda)?;
            if grid.beta1.is_none() || grid.beta2.is_none() {
                check_resolution("beta", grid.beta)?;
            }
            let axes = GridAxes {
                beta1: axis_for(grid.beta1, grid.beta, "beta1")?,
                beta2: axis_for(grid.beta2, grid.beta, "beta2")?,
                lambda1: linspace(grid.lambda),
                lambda2: linspace(grid.lambda),
                ..empty()
            };
            let dims = [
                axes.beta1.len(),
                axes.beta2.len(),
                axes.lambda1.len(),
                axes.lambda2.len(),
            ];
            (axes, dims)
        }
    };
    let total: u128 = dims.iter().map(|&d| d as u128).product();
    if total > grid.eval_cap {
        return Err(Error::Resource {
            what: "region sweep",
            requested: total,
            cap: grid.eval_cap,
        });
    }

    let points: Vec<RegionPoint> = (0..total as usize)
        .into_par_iter()
        .map(|flat| {
            let mut rem = flat;
            let mut idx = [0u16; 4];
            for d in (0..4).rev() {
                idx[d] = (rem % dims[d]) as u16;
                rem /= dims[d];
            }
            let [i, j, k, l] = idx.map(usize::from);
            let rates = match scheme {
                Scheme::Pure => pure_rates_unchecked(ch, PROFILES[i].0, PROFILES[i].1),
                Scheme::Ts => {
                    let ts = TsParams {
                        rho1: axes.rho1[i],
                        beta1: axes.beta1[j],
                        beta2: axes.beta2[k],
                    };
                    time_sharing_rates(ch, &ts).expect("grid parameters are in range")
                }
                Scheme::An => {
                    let an = AnParams {
                        beta1: axes.beta1[i],
                        beta2: axes.beta2[j],
                        lambda1: axes.lambda1[k],
                        lambda2: axes.lambda2[l],
                    };
                    an_rates_unchecked(ch, &an)
                }
            };
            RegionPoint { idx, rates }
        })
        .collect();

    let rates: Vec<RatePair> = points.iter().map(|p| p.rates).collect();
    let (reps, rep_of) = dedup(&rates);
    let rep_front = pareto_flags(&reps);
    let on_frontier = rep_of.iter().map(|&r| rep_front[r]).collect();
    let mut frontier: Vec<RatePair> = reps
        .iter()
        .zip(&rep_front)
        .filter(|(_, &f)| f)
        .map(|(p, _)| *p)
        .collect();
    frontier.sort_by(cmp_pair);
    let hull = region_hull(&reps);

    Ok(RegionSample {
        scheme,
        channel: *ch,
        axes,
        points,
        on_frontier,
        frontier,
        hull,
    })
}

fn cmp_pair(a: &RatePair, b: &RatePair) -> Ordering {
    a.r1.total_cmp(&b.r1).then(a.r2.total_cmp(&b.r2))
}

/// Merges rate pairs within [`DOMINANCE_TOL`] of the preceding distinct pair
/// in `(r1, r2)` order. Returns the representatives and, per input point,
/// the index of its representative.
pub fn dedup(points: &[RatePair]) -> (Vec<RatePair>, Vec<usize>) {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| cmp_pair(&points[a], &points[b]).then(a.cmp(&b)));
    let mut reps: Vec<RatePair> = Vec::new();
    let mut rep_of = vec![0usize; points.len()];
    for &i in &order {
        let p = points[i];
        let merge = reps
            .last()
            .is_some_and(|r| (r.r1 - p.r1).abs() <= DOMINANCE_TOL && (r.r2 - p.r2).abs() <= DOMINANCE_TOL);
        if !merge {
            reps.push(p);
        }
        rep_of[i] = reps.len() - 1;
    }
    (reps, rep_of)
}

/// Flags the points not dominated by any other point.
///
/// `q` dominates `p` when `q ≥ p − tol` componentwise and `q` beats `p` by
/// more than `tol` in at least one coordinate.
pub fn pareto_flags(points: &[RatePair]) -> Vec<bool> {
    let tol = DOMINANCE_TOL;
    let n = points.len();
    // Dominated via r1: some q has q.r1 > p.r1 + tol and q.r2 ≥ p.r2 − tol.
    let by_r1 = sorted_suffix_max(points, |p| p.r1, |p| p.r2);
    // Dominated via r2: some q has q.r2 > p.r2 + tol and q.r1 ≥ p.r1 − tol.
    let by_r2 = sorted_suffix_max(points, |p| p.r2, |p| p.r1);
    (0..n)
        .map(|i| {
            let p = points[i];
            let d1 = by_r1.max_above(p.r1 + tol).is_some_and(|m| m >= p.r2 - tol);
            let d2 = by_r2.max_above(p.r2 + tol).is_some_and(|m| m >= p.r1 - tol);
            !(d1 || d2)
        })
        .collect()
}

struct SuffixMax {
    keys: Vec<f64>,
    suffix: Vec<f64>,
}

impl SuffixMax {
    /// Largest value among entries whose key is strictly greater than `k`.
    fn max_above(&self, k: f64) -> Option<f64> {
        let pos = self.keys.partition_point(|&x| x <= k);
        self.suffix.get(pos).copied()
    }
}

fn sorted_suffix_max(points: &[RatePair], key: impl Fn(&RatePair) -> f64, val: impl Fn(&RatePair) -> f64) -> SuffixMax {
    let mut kv: Vec<(f64, f64)> = points.iter().map(|p| (key(p), val(p))).collect();
    kv.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut suffix = vec![f64::NEG_INFINITY; kv.len()];
    let mut m = f64::NEG_INFINITY;
    for i in (0..kv.len()).rev() {
        m = m.max(kv[i].1);
        suffix[i] = m;
    }
    SuffixMax {
        keys: kv.into_iter().map(|(k, _)| k).collect(),
        suffix,
    }
}

fn cross(o: RatePair, a: RatePair, b: RatePair) -> f64 {
    (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1)
}

/// Convex hull (monotone chain), counterclockwise from the lowest-leftmost
/// point, collinear points dropped.
pub fn convex_hull(points: &[RatePair]) -> Vec<RatePair> {
    let mut pts = points.to_vec();
    pts.sort_by(cmp_pair);
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<RatePair> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<RatePair> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Hull of the time-shared achievable region: the points together with the
/// origin and both axis intercepts at the maximal single-user rates.
pub fn region_hull(points: &[RatePair]) -> Vec<RatePair> {
    let max1 = points.iter().map(|p| p.r1).fold(0.0, f64::max);
    let max2 = points.iter().map(|p| p.r2).fold(0.0, f64::max);
    let mut aug = points.to_vec();
    aug.extend([
        RatePair::new(0.0, 0.0),
        RatePair::new(max1, 0.0),
        RatePair::new(0.0, max2),
    ]);
    convex_hull(&aug)
}

/// Support function `max_v ⟨d, v⟩` of a vertex list.
pub fn support(hull: &[RatePair], d: (f64, f64)) -> f64 {
    hull.iter()
        .map(|v| d.0 * v.r1 + d.1 * v.r2)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `n` unit directions evenly spaced around the circle.
pub fn directions(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect()
}

/// Whether hull `outer` contains hull `inner`, judged by comparing support
/// functions along `n_dirs` directions with additive slack.
pub fn hull_contains(outer: &[RatePair], inner: &[RatePair], n_dirs: usize, slack: f64) -> bool {
    directions(n_dirs)
        .into_iter()
        .all(|d| support(outer, d) >= support(inner, d) - slack)
}

/// Whether `p` lies inside or on the counterclockwise polygon `hull`.
pub fn point_in_hull(hull: &[RatePair], p: RatePair, slack: f64) -> bool {
    match hull.len() {
        0 => false,
        1 => (hull[0].r1 - p.r1).abs() <= slack && (hull[0].r2 - p.r2).abs() <= slack,
        n => (0..n).all(|i| {
            let a = hull[i];
            let b = hull[(i + 1) % n];
            let len = ((b.r1 - a.r1).powi(2) + (b.r2 - a.r2).powi(2)).sqrt();
            len == 0.0 || cross(a, b, p) / len >= -slack
        }),
    }
}
