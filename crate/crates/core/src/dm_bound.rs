//! Inner bound on the secret-key rate region of a discrete memoryless
//! interference channel with a public feedback channel.
//!
//! The bound is evaluated on a factored joint distribution
//!
//! ```text
//! p(v1f) p(v2f) p(x1|v1f) p(x2|v2f) p(y1,y2|x1,x2) p(v1b|y1) p(v2b|y2)
//! ```
//!
//! where `V1f, V2f` carry the forward (wiretap-coded) keys and `V1b, V2b`
//! the backward (public-channel) keys. An absent auxiliary is a size-1
//! alphabet, so pure strategies are substitutions into the same evaluator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::info_math::{pos_part, JointPmf};
use crate::strategy::{PureStrategy, RatePair};

pub const V1F: &str = "v1f";
pub const V2F: &str = "v2f";
pub const X1: &str = "x1";
pub const X2: &str = "x2";
pub const Y1: &str = "y1";
pub const Y2: &str = "y2";
pub const V1B: &str = "v1b";
pub const V2B: &str = "v2b";

/// Variable order of the expanded joint.
pub const VARIABLES: [&str; 8] = [V1F, V2F, X1, X2, Y1, Y2, V1B, V2B];

/// Default cap on the number of entries of an expanded joint table.
pub const DEFAULT_JOINT_CAP: u128 = 10_000_000;

const ROW_TOL: f64 = 1e-12;
const JOINT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Alphabets {
    pub v1f: usize,
    pub v2f: usize,
    pub x1: usize,
    pub x2: usize,
    pub y1: usize,
    pub y2: usize,
    pub v1b: usize,
    pub v2b: usize,
}

impl Alphabets {
    fn as_array(&self) -> [usize; 8] {
        [
            self.v1f, self.v2f, self.x1, self.x2, self.y1, self.y2, self.v1b, self.v2b,
        ]
    }

    /// Number of entries of the expanded joint, computed without overflow.
    pub fn joint_len(&self) -> u128 {
        self.as_array().iter().map(|&s| s as u128).product()
    }
}

/// Factored joint distribution over `(V1f, V2f, X1, X2, Y1, Y2, V1b, V2b)`.
///
/// Conditional tables are flat and row-major with the conditioning variables
/// first, e.g. `p_y_given_x[((x1 * |X2| + x2) * |Y1| + y1) * |Y2| + y2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredPmf {
    alphabets: Alphabets,
    p_v1f: Vec<f64>,
    p_v2f: Vec<f64>,
    p_x1_given_v1f: Vec<f64>,
    p_x2_given_v2f: Vec<f64>,
    p_y_given_x: Vec<f64>,
    p_v1b_given_y1: Vec<f64>,
    p_v2b_given_y2: Vec<f64>,
}

/// Checks that `table` is a stack of `rows` probability vectors of length `width`.
fn check_rows(name: &str, table: &[f64], rows: usize, width: usize, row_label: impl Fn(usize) -> String) -> Result<()> {
    if table.len() != rows * width {
        return Err(Error::domain(format!(
            "{name} has {} entries, expected {}",
            table.len(),
            rows * width
        )));
    }
    for r in 0..rows {
        let row = &table[r * width..(r + 1) * width];
        if let Some(p) = row
            .iter()
            .find(|p| !(p.is_finite() && (0.0..=1.0 + ROW_TOL).contains(*p)))
        {
            return Err(Error::domain(format!(
                "{name}{} has entry {p} outside [0, 1]",
                row_label(r)
            )));
        }
        let s: f64 = row.iter().sum();
        if (s - 1.0).abs() > ROW_TOL {
            return Err(Error::domain(format!("{name}{} sums to {s}, not 1", row_label(r))));
        }
    }
    Ok(())
}

impl FactoredPmf {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        alphabets: Alphabets,
        p_v1f: Vec<f64>,
        p_v2f: Vec<f64>,
        p_x1_given_v1f: Vec<f64>,
        p_x2_given_v2f: Vec<f64>,
        p_y_given_x: Vec<f64>,
        p_v1b_given_y1: Vec<f64>,
        p_v2b_given_y2: Vec<f64>,
    ) -> Result<Self> {
        let a = alphabets;
        if let Some(i) = a.as_array().iter().position(|&s| s == 0) {
            return Err(Error::domain(format!("alphabet `{}` is empty", VARIABLES[i])));
        }
        let one = |_| String::new();
        let idx1 = |r: usize| format!("[{r}]");
        let (ny1, ny2) = (a.y1, a.y2);
        let nx2 = a.x2;
        check_rows("p_v1f", &p_v1f, 1, a.v1f, one)?;
        check_rows("p_v2f", &p_v2f, 1, a.v2f, one)?;
        check_rows("p_x1_given_v1f", &p_x1_given_v1f, a.v1f, a.x1, idx1)?;
        check_rows("p_x2_given_v2f", &p_x2_given_v2f, a.v2f, a.x2, idx1)?;
        check_rows("p_y_given_x", &p_y_given_x, a.x1 * a.x2, ny1 * ny2, |r| {
            format!("[{}][{}]", r / nx2, r % nx2)
        })?;
        check_rows("p_v1b_given_y1", &p_v1b_given_y1, a.y1, a.v1b, idx1)?;
        check_rows("p_v2b_given_y2", &p_v2b_given_y2, a.y2, a.v2b, idx1)?;
        Ok(FactoredPmf {
            alphabets,
            p_v1f,
            p_v2f,
            p_x1_given_v1f,
            p_x2_given_v2f,
            p_y_given_x,
            p_v1b_given_y1,
            p_v2b_given_y2,
        })
    }

    pub fn alphabets(&self) -> Alphabets {
        self.alphabets
    }

    pub fn p_y_given_x(&self) -> &[f64] {
        &self.p_y_given_x
    }

    /// True when both backward auxiliaries are absent (size-1 alphabets), in
    /// which case the bound reduces to the interference-channel secrecy region.
    pub fn forward_only(&self) -> bool {
        self.alphabets.v1b == 1 && self.alphabets.v2b == 1
    }

    /// Same distribution with the channel law replaced.
    pub fn with_channel(&self, p_y_given_x: Vec<f64>) -> Result<Self> {
        let mut f = self.clone();
        f.p_y_given_x = p_y_given_x;
        let a = f.alphabets;
        check_rows("p_y_given_x", &f.p_y_given_x, a.x1 * a.x2, a.y1 * a.y2, |r| {
            format!("[{}][{}]", r / a.x2, r % a.x2)
        })?;
        Ok(f)
    }

    /// Marginal law of `X1`.
    pub fn p_x1(&self) -> Vec<f64> {
        input_marginal(&self.p_v1f, &self.p_x1_given_v1f, self.alphabets.x1)
    }

    /// Marginal law of `X2`.
    pub fn p_x2(&self) -> Vec<f64> {
        input_marginal(&self.p_v2f, &self.p_x2_given_v2f, self.alphabets.x2)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: FactoredPmfFile =
            serde_json::from_str(text).map_err(|e| Error::domain(format!("malformed FactoredPmf JSON: {e}")))?;
        file.into_pmf()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&FactoredPmfFile::from_pmf(self)).expect("FactoredPmf serializes")
    }
}

fn input_marginal(p_v: &[f64], p_x_given_v: &[f64], nx: usize) -> Vec<f64> {
    let mut out = vec![0.0; nx];
    for (v, &pv) in p_v.iter().enumerate() {
        for (x, o) in out.iter_mut().enumerate() {
            *o += pv * p_x_given_v[v * nx + x];
        }
    }
    out
}

/// Materializes the dense joint over [`VARIABLES`], refusing tables larger than `cap` entries.
pub fn expand_joint_capped(f: &FactoredPmf, cap: u128) -> Result<JointPmf> {
    let a = f.alphabets;
    let requested = a.joint_len();
    if requested > cap {
        return Err(Error::Resource {
            what: "expanded joint distribution",
            requested,
            cap,
        });
    }
    let mut probs = Vec::with_capacity(requested as usize);
    for v1f in 0..a.v1f {
        let p0 = f.p_v1f[v1f];
        for v2f in 0..a.v2f {
            let p1 = p0 * f.p_v2f[v2f];
            for x1 in 0..a.x1 {
                let p2 = p1 * f.p_x1_given_v1f[v1f * a.x1 + x1];
                for x2 in 0..a.x2 {
                    let p3 = p2 * f.p_x2_given_v2f[v2f * a.x2 + x2];
                    let row = (x1 * a.x2 + x2) * a.y1 * a.y2;
                    for y1 in 0..a.y1 {
                        for y2 in 0..a.y2 {
                            let p4 = p3 * f.p_y_given_x[row + y1 * a.y2 + y2];
                            for v1b in 0..a.v1b {
                                let p5 = p4 * f.p_v1b_given_y1[y1 * a.v1b + v1b];
                                for v2b in 0..a.v2b {
                                    probs.push(p5 * f.p_v2b_given_y2[y2 * a.v2b + v2b]);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > JOINT_TOL {
        return Err(Error::domain(format!("expanded joint sums to {total}")));
    }
    Ok(JointPmf::from_parts_unchecked(
        VARIABLES.iter().map(|s| s.to_string()).collect(),
        a.as_array().to_vec(),
        probs,
    ))
}

pub fn expand_joint(f: &FactoredPmf) -> Result<JointPmf> {
    expand_joint_capped(f, DEFAULT_JOINT_CAP)
}

/// Every mutual-information term of the inner bound, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InnerBoundTerms {
    /// `I(V1f; Y1)`
    pub fwd1_gain: f64,
    /// `I(V1f; Y2 | V2f)`
    pub fwd1_leak: f64,
    /// `I(V1b; X1 | V1f)`
    pub bwd1_gain: f64,
    /// `I(V1b; Y2, V2f | V1f)`
    pub bwd1_leak: f64,
    /// `I(V2f; Y2)`
    pub fwd2_gain: f64,
    /// `I(V2f; Y1 | V1f)`, see [`forward_leak_2`]
    pub fwd2_leak: f64,
    /// `I(V2b; X2 | V2f)`
    pub bwd2_gain: f64,
    /// `I(V2b; Y1, V1f | V2f)`
    pub bwd2_leak: f64,
}

impl InnerBoundTerms {
    pub fn rates(&self) -> RatePair {
        RatePair::new(
            pos_part(self.fwd1_gain - self.fwd1_leak) + pos_part(self.bwd1_gain - self.bwd1_leak),
            pos_part(self.fwd2_gain - self.fwd2_leak) + pos_part(self.bwd2_gain - self.bwd2_leak),
        )
    }

    /// Forward-phase contributions only.
    pub fn forward_rates(&self) -> RatePair {
        RatePair::new(
            pos_part(self.fwd1_gain - self.fwd1_leak),
            pos_part(self.fwd2_gain - self.fwd2_leak),
        )
    }
}

/// Forward leakage of pair 2's key to user 1.
///
/// The printed bound is typographically ambiguous here; this reads it as the
/// conditional `I(V2f; Y1 | V1f)`, the mirror image of pair 1's term. The
/// unconditioned alternative would be `I(V2f; Y1, V1f)`.
pub fn forward_leak_2(joint: &JointPmf) -> Result<f64> {
    joint.mutual_information(&[V2F], &[Y1], &[V1F])
}

pub fn inner_bound_terms_of(joint: &JointPmf) -> Result<InnerBoundTerms> {
    Ok(InnerBoundTerms {
        fwd1_gain: joint.mutual_information(&[V1F], &[Y1], &[])?,
        fwd1_leak: joint.mutual_information(&[V1F], &[Y2], &[V2F])?,
        bwd1_gain: joint.mutual_information(&[V1B], &[X1], &[V1F])?,
        bwd1_leak: joint.mutual_information(&[V1B], &[Y2, V2F], &[V1F])?,
        fwd2_gain: joint.mutual_information(&[V2F], &[Y2], &[])?,
        fwd2_leak: forward_leak_2(joint)?,
        bwd2_gain: joint.mutual_information(&[V2B], &[X2], &[V2F])?,
        bwd2_leak: joint.mutual_information(&[V2B], &[Y1, V1F], &[V2F])?,
    })
}

pub fn inner_bound_terms(f: &FactoredPmf) -> Result<InnerBoundTerms> {
    inner_bound_terms_of(&expand_joint(f)?)
}

/// Achievable key-rate pair of the inner bound for one factored distribution.
pub fn theorem1_bounds(f: &FactoredPmf) -> Result<RatePair> {
    Ok(inner_bound_terms(f)?.rates())
}

/// Pure-strategy bounds computed directly from the channel inputs and outputs.
///
/// Only the `(X1, X2, Y1, Y2)` marginal of `f` is used; the auxiliaries are
/// ignored. FW leaks `I(Xi; Yj, Xj)` when the other pair also plays FW and
/// `I(Xi; Yj)` otherwise; BW leaks `I(Yi; Yj, Xj)` or `I(Yi; Yj)` likewise.
pub fn pure_strategy_dm_bounds(f: &FactoredPmf, s1: PureStrategy, s2: PureStrategy) -> Result<RatePair> {
    let joint = expand_joint(f)?.marginalize(&[X1, X2, Y1, Y2])?;
    let r1 = pure_term(&joint, X1, Y1, X2, Y2, s1, s2)?;
    let r2 = pure_term(&joint, X2, Y2, X1, Y1, s2, s1)?;
    Ok(RatePair::new(r1, r2))
}

fn pure_term(
    joint: &JointPmf,
    x_own: &str,
    y_own: &str,
    x_other: &str,
    y_other: &str,
    own: PureStrategy,
    other: PureStrategy,
) -> Result<f64> {
    let gain = joint.mutual_information(&[x_own], &[y_own], &[])?;
    let secret = match own {
        PureStrategy::Fw => x_own,
        PureStrategy::Bw => y_own,
    };
    let leak = match other {
        PureStrategy::Fw => joint.mutual_information(&[secret], &[y_other, x_other], &[])?,
        PureStrategy::Bw => joint.mutual_information(&[secret], &[y_other], &[])?,
    };
    Ok(pos_part(gain - leak))
}

/// A discrete memoryless interference channel with fixed input laws.
#[derive(Debug, Clone, PartialEq)]
pub struct DmChannel {
    pub x1: usize,
    pub x2: usize,
    pub y1: usize,
    pub y2: usize,
    pub p_x1: Vec<f64>,
    pub p_x2: Vec<f64>,
    /// Row-major `[x1][x2][y1][y2]`.
    pub p_y_given_x: Vec<f64>,
}

fn identity(n: usize) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    m
}

impl DmChannel {
    /// Factored distribution realizing the pure profile `(s1, s2)`:
    /// FW sets `Vif = Xi` and leaves `Vib` absent; BW leaves `Vif` absent and sets `Vib = Yi`.
    pub fn factored_for_profile(&self, s1: PureStrategy, s2: PureStrategy) -> Result<FactoredPmf> {
        let fwd = |s: PureStrategy, nx: usize, px: &[f64]| match s {
            PureStrategy::Fw => (nx, px.to_vec(), identity(nx)),
            PureStrategy::Bw => (1, vec![1.0], px.to_vec()),
        };
        let bwd = |s: PureStrategy, ny: usize| match s {
            PureStrategy::Fw => (1, vec![1.0; ny]),
            PureStrategy::Bw => (ny, identity(ny)),
        };
        let (v1f, p_v1f, p_x1_given_v1f) = fwd(s1, self.x1, &self.p_x1);
        let (v2f, p_v2f, p_x2_given_v2f) = fwd(s2, self.x2, &self.p_x2);
        let (v1b, p_v1b_given_y1) = bwd(s1, self.y1);
        let (v2b, p_v2b_given_y2) = bwd(s2, self.y2);
        FactoredPmf::new(
            Alphabets {
                v1f,
                v2f,
                x1: self.x1,
                x2: self.x2,
                y1: self.y1,
                y2: self.y2,
                v1b,
                v2b,
            },
            p_v1f,
            p_v2f,
            p_x1_given_v1f,
            p_x2_given_v2f,
            self.p_y_given_x.clone(),
            p_v1b_given_y1,
            p_v2b_given_y2,
        )
    }
}

/// On-disk JSON layout of a [`FactoredPmf`]; tables are nested arrays in the
/// index order given by their names, e.g. `p_y_given_x[x1][x2][y1][y2]`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactoredPmfFile {
    alphabets: Alphabets,
    p_v1f: Vec<f64>,
    p_v2f: Vec<f64>,
    p_x1_given_v1f: Vec<Vec<f64>>,
    p_x2_given_v2f: Vec<Vec<f64>>,
    p_y_given_x: Vec<Vec<Vec<Vec<f64>>>>,
    p_v1b_given_y1: Vec<Vec<f64>>,
    p_v2b_given_y2: Vec<Vec<f64>>,
}

fn flatten2(name: &str, t: Vec<Vec<f64>>, rows: usize, cols: usize) -> Result<Vec<f64>> {
    if t.len() != rows {
        return Err(Error::domain(format!("{name} has {} rows, expected {rows}", t.len())));
    }
    let mut out = Vec::with_capacity(rows * cols);
    for (i, row) in t.into_iter().enumerate() {
        if row.len() != cols {
            return Err(Error::domain(format!(
                "{name}[{i}] has {} entries, expected {cols}",
                row.len()
            )));
        }
        out.extend(row);
    }
    Ok(out)
}

fn chunk2(flat: &[f64], cols: usize) -> Vec<Vec<f64>> {
    flat.chunks(cols).map(<[f64]>::to_vec).collect()
}

impl FactoredPmfFile {
    fn into_pmf(self) -> Result<FactoredPmf> {
        let a = self.alphabets;
        if a.joint_len() > DEFAULT_JOINT_CAP {
            return Err(Error::Resource {
                what: "expanded joint distribution",
                requested: a.joint_len(),
                cap: DEFAULT_JOINT_CAP,
            });
        }
        let check1 = |name: &str, v: &Vec<f64>, n: usize| {
            if v.len() == n {
                Ok(())
            } else {
                Err(Error::domain(format!("{name} has {} entries, expected {n}", v.len())))
            }
        };
        check1("p_v1f", &self.p_v1f, a.v1f)?;
        check1("p_v2f", &self.p_v2f, a.v2f)?;
        if self.p_y_given_x.len() != a.x1 {
            return Err(Error::domain(format!(
                "p_y_given_x has {} rows, expected {}",
                self.p_y_given_x.len(),
                a.x1
            )));
        }
        let mut p_y = Vec::with_capacity(a.x1 * a.x2 * a.y1 * a.y2);
        for (i, block) in self.p_y_given_x.into_iter().enumerate() {
            if block.len() != a.x2 {
                return Err(Error::domain(format!(
                    "p_y_given_x[{i}] has {} rows, expected {}",
                    block.len(),
                    a.x2
                )));
            }
            for (j, t) in block.into_iter().enumerate() {
                p_y.extend(flatten2(&format!("p_y_given_x[{i}][{j}]"), t, a.y1, a.y2)?);
            }
        }
        FactoredPmf::new(
            a,
            self.p_v1f,
            self.p_v2f,
            flatten2("p_x1_given_v1f", self.p_x1_given_v1f, a.v1f, a.x1)?,
            flatten2("p_x2_given_v2f", self.p_x2_given_v2f, a.v2f, a.x2)?,
            p_y,
            flatten2("p_v1b_given_y1", self.p_v1b_given_y1, a.y1, a.v1b)?,
            flatten2("p_v2b_given_y2", self.p_v2b_given_y2, a.y2, a.v2b)?,
        )
    }

    fn from_pmf(f: &FactoredPmf) -> Self {
        let a = f.alphabets;
        let p_y_given_x = f
            .p_y_given_x
            .chunks(a.x2 * a.y1 * a.y2)
            .map(|blk| blk.chunks(a.y1 * a.y2).map(|t| chunk2(t, a.y2)).collect())
            .collect();
        FactoredPmfFile {
            alphabets: a,
            p_v1f: f.p_v1f.clone(),
            p_v2f: f.p_v2f.clone(),
            p_x1_given_v1f: chunk2(&f.p_x1_given_v1f, a.x1),
            p_x2_given_v2f: chunk2(&f.p_x2_given_v2f, a.x2),
            p_y_given_x,
            p_v1b_given_y1: chunk2(&f.p_v1b_given_y1, a.v1b),
            p_v2b_given_y2: chunk2(&f.p_v2b_given_y2, a.v2b),
        }
    }
}
