//! Shared helpers for the integration and acceptance tests: seeded
//! generators, and oracles that recompute quantities without going through
//! the library's own routines.

#![allow(dead_code)]

use std::collections::HashMap;

use keyrate::dm_bound::{Alphabets, DmChannel};
use keyrate::{FactoredPmf, PureStrategy, RatePair};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random probability vector; sometimes sparse so zero cells get exercised.
pub fn simplex(r: &mut impl Rng, n: usize) -> Vec<f64> {
    loop {
        let w: Vec<f64> = (0..n)
            .map(|_| {
                if r.gen_bool(0.15) {
                    0.0
                } else {
                    -r.gen::<f64>().max(1e-300).ln()
                }
            })
            .collect();
        let s: f64 = w.iter().sum();
        if s > 0.0 {
            return w.into_iter().map(|x| x / s).collect();
        }
    }
}

/// `rows` stacked random probability vectors of length `width`.
pub fn stochastic(r: &mut impl Rng, rows: usize, width: usize) -> Vec<f64> {
    (0..rows).flat_map(|_| simplex(r, width)).collect()
}

/// Sparse joint distribution keyed by outcome tuples.
#[derive(Debug, Clone, Default)]
pub struct Dist {
    pub cells: HashMap<Vec<usize>, f64>,
}

impl Dist {
    pub fn add(&mut self, key: Vec<usize>, p: f64) {
        if p > 0.0 {
            *self.cells.entry(key).or_insert(0.0) += p;
        }
    }

    /// Entropy in bits of the coordinates `vars`.
    pub fn h(&self, vars: &[usize]) -> f64 {
        let mut m: HashMap<Vec<usize>, f64> = HashMap::new();
        for (k, &p) in &self.cells {
            *m.entry(vars.iter().map(|&v| k[v]).collect()).or_insert(0.0) += p;
        }
        m.values().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum()
    }

    /// I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C).
    pub fn mi(&self, a: &[usize], b: &[usize], c: &[usize]) -> f64 {
        let cat = |xs: &[&[usize]]| xs.concat();
        self.h(&cat(&[a, c])) + self.h(&cat(&[b, c])) - self.h(&cat(&[a, b, c])) - self.h(c)
    }
}

pub fn pos(x: f64) -> f64 {
    x.max(0.0)
}

/// Random channel with binary inputs and outputs.
pub fn binary_channel(r: &mut impl Rng) -> DmChannel {
    DmChannel {
        x1: 2,
        x2: 2,
        y1: 2,
        y2: 2,
        p_x1: simplex(r, 2),
        p_x2: simplex(r, 2),
        p_y_given_x: stochastic(r, 4, 4),
    }
}

/// Joint of (X1, X2, Y1, Y2) built straight from the channel tables.
pub fn channel_dist(ch: &DmChannel) -> Dist {
    let mut d = Dist::default();
    for x1 in 0..ch.x1 {
        for x2 in 0..ch.x2 {
            for y1 in 0..ch.y1 {
                for y2 in 0..ch.y2 {
                    let w = ch.p_y_given_x[((x1 * ch.x2 + x2) * ch.y1 + y1) * ch.y2 + y2];
                    d.add(vec![x1, x2, y1, y2], ch.p_x1[x1] * ch.p_x2[x2] * w);
                }
            }
        }
    }
    d
}

/// The four pure-strategy bounds written out term by term.
pub fn pure_bound_oracle(ch: &DmChannel, s1: PureStrategy, s2: PureStrategy) -> RatePair {
    use PureStrategy::{Bw, Fw};
    let d = channel_dist(ch);
    let (x1, x2, y1, y2) = (0, 1, 2, 3);
    let g1 = d.mi(&[x1], &[y1], &[]);
    let g2 = d.mi(&[x2], &[y2], &[]);
    match (s1, s2) {
        (Fw, Fw) => RatePair::new(
            pos(g1 - d.mi(&[x1], &[y2, x2], &[])),
            pos(g2 - d.mi(&[x2], &[y1, x1], &[])),
        ),
        (Fw, Bw) => RatePair::new(pos(g1 - d.mi(&[x1], &[y2], &[])), pos(g2 - d.mi(&[y2], &[y1, x1], &[]))),
        (Bw, Fw) => RatePair::new(pos(g1 - d.mi(&[y1], &[y2, x2], &[])), pos(g2 - d.mi(&[x2], &[y1], &[]))),
        (Bw, Bw) => RatePair::new(pos(g1 - d.mi(&[y1], &[y2], &[])), pos(g2 - d.mi(&[y2], &[y1], &[]))),
    }
}

/// Raw tables of a factored distribution, kept so the oracle can rebuild
/// the joint independently.
#[derive(Debug, Clone)]
pub struct RawFactored {
    pub a: Alphabets,
    pub p_v1f: Vec<f64>,
    pub p_v2f: Vec<f64>,
    pub x1_v1f: Vec<f64>,
    pub x2_v2f: Vec<f64>,
    pub y_x: Vec<f64>,
    pub v1b_y1: Vec<f64>,
    pub v2b_y2: Vec<f64>,
}

impl RawFactored {
    pub fn random(r: &mut impl Rng, a: Alphabets) -> Self {
        RawFactored {
            a,
            p_v1f: simplex(r, a.v1f),
            p_v2f: simplex(r, a.v2f),
            x1_v1f: stochastic(r, a.v1f, a.x1),
            x2_v2f: stochastic(r, a.v2f, a.x2),
            y_x: stochastic(r, a.x1 * a.x2, a.y1 * a.y2),
            v1b_y1: stochastic(r, a.y1, a.v1b),
            v2b_y2: stochastic(r, a.y2, a.v2b),
        }
    }

    pub fn pmf(&self) -> FactoredPmf {
        FactoredPmf::new(
            self.a,
            self.p_v1f.clone(),
            self.p_v2f.clone(),
            self.x1_v1f.clone(),
            self.x2_v2f.clone(),
            self.y_x.clone(),
            self.v1b_y1.clone(),
            self.v2b_y2.clone(),
        )
        .expect("random tables are valid")
    }

    /// Joint over (V1f, V2f, X1, X2, Y1, Y2, V1b, V2b).
    pub fn dist(&self) -> Dist {
        let a = self.a;
        let mut d = Dist::default();
        for v1f in 0..a.v1f {
            for v2f in 0..a.v2f {
                for x1 in 0..a.x1 {
                    for x2 in 0..a.x2 {
                        let pre = self.p_v1f[v1f]
                            * self.p_v2f[v2f]
                            * self.x1_v1f[v1f * a.x1 + x1]
                            * self.x2_v2f[v2f * a.x2 + x2];
                        for y1 in 0..a.y1 {
                            for y2 in 0..a.y2 {
                                let py = self.y_x[((x1 * a.x2 + x2) * a.y1 + y1) * a.y2 + y2];
                                for v1b in 0..a.v1b {
                                    for v2b in 0..a.v2b {
                                        let p =
                                            pre * py * self.v1b_y1[y1 * a.v1b + v1b] * self.v2b_y2[y2 * a.v2b + v2b];
                                        d.add(vec![v1f, v2f, x1, x2, y1, y2, v1b, v2b], p);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        d
    }
}

pub fn binary_alphabets(v1b: usize, v2b: usize) -> Alphabets {
    Alphabets {
        v1f: 2,
        v2f: 2,
        x1: 2,
        x2: 2,
        y1: 2,
        y2: 2,
        v1b,
        v2b,
    }
}

/// Forward-only rates of a factored joint, term by term.
pub fn forward_oracle(d: &Dist) -> RatePair {
    let (v1f, v2f, y1, y2) = (0, 1, 4, 5);
    RatePair::new(
        pos(d.mi(&[v1f], &[y1], &[]) - d.mi(&[v1f], &[y2], &[v2f])),
        pos(d.mi(&[v2f], &[y2], &[]) - d.mi(&[v2f], &[y1], &[v1f])),
    )
}

/// Pure-strategy Gaussian rates in log-ratio form.
pub fn gaussian_pure_oracle(a1: f64, a2: f64, p1: f64, p2: f64, s: (PureStrategy, PureStrategy)) -> RatePair {
    use PureStrategy::{Bw, Fw};
    let h = |num: f64, den: f64| 0.5 * (num / den).log2();
    let (x1, x2) = (a1 * a1, a2 * a2);
    let g1 = |n: f64, d: f64| h((1.0 + x1 * p2 + p1) * d, (1.0 + x1 * p2) * (d + n));
    let g2 = |n: f64, d: f64| h((1.0 + x2 * p1 + p2) * d, (1.0 + x2 * p1) * (d + n));
    let bb_n = (a2 * p1 + a1 * p2).powi(2);
    let bb_d = 1.0 + (1.0 + x2) * p1 + (1.0 + x1) * p2 + (1.0 - a1 * a2).powi(2) * p1 * p2;
    let (r1, r2) = match s {
        (Fw, Fw) => (g1(x2 * p1, 1.0), g2(x1 * p2, 1.0)),
        (Fw, Bw) => (
            g1(x2 * p1, 1.0 + p2),
            g2(x2 * p1 + x1 * p2 * p2 + x1 * x2 * p1 * p2, 1.0 + p2 + x1 * p2),
        ),
        (Bw, Fw) => (
            g1(x1 * p2 + x2 * p1 * p1 + x1 * x2 * p1 * p2, 1.0 + p1 + x2 * p1),
            g2(x1 * p2, 1.0 + p1),
        ),
        (Bw, Bw) => (g1(bb_n, bb_d), g2(bb_n, bb_d)),
    };
    RatePair::new(pos(r1), pos(r2))
}

pub fn close(a: RatePair, b: RatePair, tol: f64) -> bool {
    (a.r1 - b.r1).abs() <= tol && (a.r2 - b.r2).abs() <= tol
}
