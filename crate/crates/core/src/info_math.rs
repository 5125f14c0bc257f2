//! Scalar capacity function, positive-part clamp, and exact entropy and
//! mutual information on dense finite joint distributions.
//!
//! All logarithms are base 2, so every quantity is in bits.

use crate::error::{Error, Result};

/// Tolerance on the total mass of a [`JointPmf`].
pub const MASS_TOL: f64 = 1e-12;

/// Most negative mutual information accepted as rounding noise before clamping.
const NEG_MI_SLACK: f64 = -1e-10;

/// Gaussian capacity `½·log₂(1 + x)`.
pub fn capacity(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain(format!(
            "capacity argument must be finite and nonnegative, got {x}"
        )));
    }
    Ok(cap(x))
}

/// Unchecked [`capacity`] for closed-form rate expressions whose arguments are
/// nonnegative by construction.
#[inline]
pub(crate) fn cap(x: f64) -> f64 {
    debug_assert!(x >= 0.0 && x.is_finite(), "capacity argument {x}");
    0.5 * x.ln_1p() / std::f64::consts::LN_2
}

/// `[x]⁺ = max(x, 0)`.
#[inline]
pub fn pos_part(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// Dense joint probability table over named finite-alphabet variables.
///
/// Entries are stored row-major: the last variable varies fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    names: Vec<String>,
    sizes: Vec<usize>,
    probs: Vec<f64>,
}

impl JointPmf {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        sizes: Vec<usize>,
        probs: Vec<f64>,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != sizes.len() {
            return Err(Error::domain(format!(
                "{} variable names but {} alphabet sizes",
                names.len(),
                sizes.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::domain(format!("duplicate variable label `{n}`")));
            }
        }
        if let Some(i) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::domain(format!("variable `{}` has an empty alphabet", names[i])));
        }
        let expected: usize = sizes.iter().product();
        if probs.len() != expected {
            return Err(Error::domain(format!(
                "table has {} entries, alphabets require {expected}",
                probs.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return Err(Error::domain(format!("negative or non-finite probability {p}")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::domain(format!("probabilities sum to {total}, not 1")));
        }
        Ok(JointPmf { names, sizes, probs })
    }

    /// Builds a table without checking the mass; used by code that produces
    /// tables from already validated factors and checks the looser tolerance itself.
    pub(crate) fn from_parts_unchecked(names: Vec<String>, sizes: Vec<usize>, probs: Vec<f64>) -> Self {
        JointPmf { names, sizes, probs }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probability at a full multi-index (one symbol per variable).
    pub fn prob(&self, index: &[usize]) -> f64 {
        assert_eq!(index.len(), self.sizes.len());
        let flat = index.iter().zip(&self.sizes).fold(0usize, |acc, (&i, &s)| {
            assert!(i < s, "symbol {i} out of range {s}");
            acc * s + i
        });
        self.probs[flat]
    }

    fn position(&self, label: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == label)
            .ok_or_else(|| Error::domain(format!("unknown variable label `{label}`")))
    }

    fn positions(&self, labels: &[&str]) -> Result<Vec<usize>> {
        let mut pos = labels.iter().map(|l| self.position(l)).collect::<Result<Vec<_>>>()?;
        pos.sort_unstable();
        pos.dedup();
        Ok(pos)
    }

    /// Sums out every variable not in `keep`. The kept variables retain their
    /// original relative order.
    pub fn marginalize(&self, keep: &[&str]) -> Result<JointPmf> {
        if keep.is_empty() {
            return Err(Error::domain("marginalize needs at least one variable to keep"));
        }
        let pos = self.positions(keep)?;
        let probs = self.marginal_table(&pos);
        Ok(JointPmf {
            names: pos.iter().map(|&i| self.names[i].clone()).collect(),
            sizes: pos.iter().map(|&i| self.sizes[i]).collect(),
            probs,
        })
    }

    /// Marginal table over the (sorted) variable positions `pos`.
    fn marginal_table(&self, pos: &[usize]) -> Vec<f64> {
        let out_len: usize = pos.iter().map(|&i| self.sizes[i]).product();
        if pos.len() == self.sizes.len() {
            return self.probs.clone();
        }
        // Stride of each source variable inside the output table; zero when summed out.
        let mut out_stride = vec![0usize; self.sizes.len()];
        let mut s = 1;
        for &i in pos.iter().rev() {
            out_stride[i] = s;
            s *= self.sizes[i];
        }
        let mut out = vec![0.0; out_len];
        let mut digits = vec![0usize; self.sizes.len()];
        let mut target = 0usize;
        for &p in &self.probs {
            out[target] += p;
            // odometer increment, last variable fastest
            for v in (0..digits.len()).rev() {
                digits[v] += 1;
                target += out_stride[v];
                if digits[v] < self.sizes[v] {
                    break;
                }
                target -= out_stride[v] * digits[v];
                digits[v] = 0;
            }
        }
        out
    }

    fn entropy_at(&self, pos: &[usize]) -> f64 {
        if pos.is_empty() {
            return 0.0;
        }
        self.marginal_table(pos)
            .into_iter()
            .filter(|&p| p > 0.0)
            .map(|p| -p * p.log2())
            .sum()
    }

    /// Joint entropy `H(vars)` in bits; the empty set has entropy 0.
    pub fn entropy(&self, vars: &[&str]) -> Result<f64> {
        let pos = self.positions(vars)?;
        // a lone cell of mass 1 + ε would give -0.0 or a tiny negative
        Ok(self.entropy_at(&pos).max(0.0))
    }

    /// Conditional mutual information `I(A; B | C)` in bits.
    ///
    /// `a` and `b` must be nonempty; `c` may be empty. The three sets must be
    /// pairwise disjoint.
    pub fn mutual_information(&self, a: &[&str], b: &[&str], c: &[&str]) -> Result<f64> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::domain("mutual information needs nonempty A and B"));
        }
        let pa = self.positions(a)?;
        let pb = self.positions(b)?;
        let pc = self.positions(c)?;
        let overlaps = |x: &[usize], y: &[usize]| x.iter().any(|i| y.contains(i));
        if overlaps(&pa, &pb) || overlaps(&pa, &pc) || overlaps(&pb, &pc) {
            return Err(Error::domain(format!(
                "variable sets {a:?}, {b:?}, {c:?} are not pairwise disjoint"
            )));
        }
        let union = |sets: &[&[usize]]| {
            let mut v: Vec<usize> = sets.iter().flat_map(|s| s.iter().copied()).collect();
            v.sort_unstable();
            v
        };
        let mi = self.entropy_at(&union(&[&pa, &pc])) + self.entropy_at(&union(&[&pb, &pc]))
            - self.entropy_at(&union(&[&pa, &pb, &pc]))
            - self.entropy_at(&pc);
        assert!(
            mi >= NEG_MI_SLACK,
            "mutual information {mi} is negative beyond rounding"
        );
        Ok(pos_part(mi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor_pmf() -> JointPmf {
        // X, Z iid uniform bits, Y = X xor Z; order (x, y, z)
        let mut probs = vec![0.0; 8];
        for x in 0..2 {
            for z in 0..2 {
                probs[x * 4 + (x ^ z) * 2 + z] = 0.25;
            }
        }
        JointPmf::new(["x", "y", "z"], vec![2, 2, 2], probs).unwrap()
    }

    /// Plain H(·) straight from a list of probabilities.
    fn h(ps: &[f64]) -> f64 {
        ps.iter().filter(|&&p| p > 0.0).map(|p| -p * p.log2()).sum()
    }

    #[test]
    fn capacity_values() {
        assert_eq!(capacity(0.0).unwrap(), 0.0);
        assert!((capacity(1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((capacity(3.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(capacity(-1e-3).is_err());
        assert!(capacity(f64::NAN).is_err());
        assert!(capacity(f64::INFINITY).is_err());
    }

    #[test]
    fn capacity_small_argument_is_accurate() {
        let x = 1e-12;
        let expected = 0.5 * x / std::f64::consts::LN_2;
        assert!((capacity(x).unwrap() / expected - 1.0).abs() < 1e-9);
    }

    #[test]
    fn capacity_increasing_and_concave() {
        let xs: Vec<f64> = (0..400).map(|i| i as f64 * 0.25).collect();
        let c: Vec<f64> = xs.iter().map(|&x| capacity(x).unwrap()).collect();
        for w in c.windows(3) {
            assert!(w[1] > w[0]);
            assert!(w[2] - 2.0 * w[1] + w[0] < 0.0);
        }
    }

    #[test]
    fn pos_part_values() {
        assert_eq!(pos_part(-0.3), 0.0);
        assert_eq!(pos_part(0.0), 0.0);
        assert_eq!(pos_part(0.7), 0.7);
        for x in [-2.5, -1e-9, 0.0, 3.25] {
            assert_eq!(pos_part(x) + pos_part(-x), f64::abs(x));
        }
    }

    #[test]
    fn marginalize_examples() {
        let u = JointPmf::new(["a", "b"], vec![2, 2], vec![0.25; 4]).unwrap();
        let m = u.marginalize(&["a"]).unwrap();
        assert_eq!(m.probs(), &[0.5, 0.5]);

        let diag = JointPmf::new(["x", "y"], vec![2, 2], vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert_eq!(diag.marginalize(&["y"]).unwrap().probs(), &[0.5, 0.5]);
        assert_eq!(diag.marginalize(&["x", "y"]).unwrap(), diag);
        assert_eq!(diag.marginalize(&["y", "x"]).unwrap(), diag);

        assert!(diag.marginalize(&["w"]).is_err());
        assert!(diag.marginalize(&[]).is_err());
    }

    #[test]
    fn marginalize_middle_variable() {
        let p = xor_pmf();
        let xz = p.marginalize(&["x", "z"]).unwrap();
        assert_eq!(xz.probs(), &[0.25; 4]);
        let y = p.marginalize(&["y"]).unwrap();
        assert_eq!(y.probs(), &[0.5, 0.5]);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(JointPmf::new(["a"], vec![2], vec![0.5, 0.6]).is_err());
        assert!(JointPmf::new(["a"], vec![2], vec![1.5, -0.5]).is_err());
        assert!(JointPmf::new(["a"], vec![3], vec![0.5, 0.5]).is_err());
        assert!(JointPmf::new(["a", "a"], vec![1, 1], vec![1.0]).is_err());
        assert!(JointPmf::new(["a"], vec![0], vec![]).is_err());
    }

    #[test]
    fn mi_examples() {
        let ind = JointPmf::new(["x", "y"], vec![2, 2], vec![0.25; 4]).unwrap();
        assert!(ind.mutual_information(&["x"], &["y"], &[]).unwrap().abs() < 1e-15);

        let same = JointPmf::new(["x", "y"], vec![2, 2], vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!((same.mutual_information(&["x"], &["y"], &[]).unwrap() - 1.0).abs() < 1e-15);

        let p = xor_pmf();
        let i_xy = p.mutual_information(&["x"], &["y"], &[]).unwrap();
        let i_xy_z = p.mutual_information(&["x"], &["y"], &["z"]).unwrap();
        // hand-coded entropies: H(X)=H(Y)=1, H(X,Y)=2; H(X,Z)=H(Y,Z)=2, H(X,Y,Z)=2, H(Z)=1
        let oracle_xy = h(&[0.5, 0.5]) + h(&[0.5, 0.5]) - h(&[0.25; 4]);
        let oracle_xy_z = h(&[0.25; 4]) + h(&[0.25; 4]) - h(&[0.25; 4]) - h(&[0.5, 0.5]);
        assert!((i_xy - oracle_xy).abs() < 1e-15);
        assert!((i_xy_z - oracle_xy_z).abs() < 1e-15);
        assert!(i_xy.abs() < 1e-15);
        assert!((i_xy_z - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mi_errors() {
        let p = xor_pmf();
        assert!(p.mutual_information(&["x"], &["x"], &[]).is_err());
        assert!(p.mutual_information(&["x"], &["y"], &["x"]).is_err());
        assert!(p.mutual_information(&[], &["y"], &[]).is_err());
        assert!(p.mutual_information(&["x"], &["q"], &[]).is_err());
    }
}
