//! Closed-form key rates on the Gaussian interference channel
//!
//! ```text
//! Y1 = X1 + a1·X2 + N1,    Y2 = a2·X1 + X2 + N2,    N1, N2 ~ N(0, 1)
//! ```
//!
//! in the weak-interference regime `a1², a2² ≤ 1`. Powers are linear SNRs.
//! Every rate is a gain term minus a leakage term, both written as `C(·)`
//! of an explicit ratio; the unclamped difference is the *margin* and the
//! rate is its positive part.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::info_math::{cap, pos_part};
use crate::strategy::{PureStrategy, RatePair};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    /// Cross gain of BS2 into receiver 1.
    pub alpha1: f64,
    /// Cross gain of BS1 into receiver 2.
    pub alpha2: f64,
    /// Power constraint of BS1.
    pub p1: f64,
    /// Power constraint of BS2.
    pub p2: f64,
}

impl ChannelParams {
    pub fn new(alpha1: f64, alpha2: f64, p1: f64, p2: f64) -> Result<Self> {
        let ch = ChannelParams { alpha1, alpha2, p1, p2 };
        ch.validate()?;
        Ok(ch)
    }

    /// Symmetric channel `a1 = a2 = alpha`, `P1 = P2 = p`.
    pub fn symmetric(alpha: f64, p: f64) -> Result<Self> {
        Self::new(alpha, alpha, p, p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("p1", self.p1), ("p2", self.p2)] {
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::domain(format!("{name} must be finite and > 0, got {p}")));
            }
        }
        for (name, a) in [("alpha1", self.alpha1), ("alpha2", self.alpha2)] {
            if !(a.is_finite() && a * a <= 1.0) {
                return Err(Error::domain(format!(
                    "{name}² must lie in [0, 1] (weak interference), got {name} = {a}"
                )));
            }
        }
        Ok(())
    }

    /// Same gains with powers scaled to `beta1·P1`, `beta2·P2`.
    fn scaled(&self, beta1: f64, beta2: f64) -> Powers {
        Powers {
            a1: self.alpha1,
            a2: self.alpha2,
            q1: beta1 * self.p1,
            q2: beta2 * self.p2,
        }
    }

    /// The channel with the two pairs' roles exchanged.
    pub fn swapped(&self) -> ChannelParams {
        ChannelParams {
            alpha1: self.alpha2,
            alpha2: self.alpha1,
            p1: self.p2,
            p2: self.p1,
        }
    }
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must lie in [0, 1], got {v}")))
    }
}

/// Effective gains and transmit powers (powers may be zero).
#[derive(Debug, Clone, Copy)]
struct Powers {
    a1: f64,
    a2: f64,
    q1: f64,
    q2: f64,
}

/// Time-sharing parameters: slot fraction of slot 1 and power control.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TsParams {
    pub rho1: f64,
    pub beta1: f64,
    pub beta2: f64,
}

impl TsParams {
    pub fn new(rho1: f64, beta1: f64, beta2: f64) -> Result<Self> {
        let ts = TsParams { rho1, beta1, beta2 };
        ts.validate()?;
        Ok(ts)
    }

    pub fn validate(&self) -> Result<()> {
        check_unit("rho1", self.rho1)?;
        check_unit("beta1", self.beta1)?;
        check_unit("beta2", self.beta2)
    }

    pub fn rho2(&self) -> f64 {
        1.0 - self.rho1
    }
}

/// Artificial-noise parameters: power control `beta` and the fraction
/// `lambda` of each BS's power spent on noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnParams {
    pub beta1: f64,
    pub beta2: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

impl AnParams {
    pub fn new(beta1: f64, beta2: f64, lambda1: f64, lambda2: f64) -> Result<Self> {
        let an = AnParams {
            beta1,
            beta2,
            lambda1,
            lambda2,
        };
        an.validate()?;
        Ok(an)
    }

    pub fn validate(&self) -> Result<()> {
        check_unit("beta1", self.beta1)?;
        check_unit("beta2", self.beta2)?;
        check_unit("lambda1", self.lambda1)?;
        check_unit("lambda2", self.lambda2)
    }
}

/// Unclamped secrecy margins `(gain − leakage)` of both pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Margins {
    pub m1: f64,
    pub m2: f64,
}

impl Margins {
    pub fn rates(&self) -> RatePair {
        RatePair::new(pos_part(self.m1), pos_part(self.m2))
    }
}

/// Leakage ratio shared by both pairs when both play BW.
fn bwbw_leak(p: &Powers) -> f64 {
    let num = (p.a2 * p.q1 + p.a1 * p.q2).powi(2);
    let den = 1.0 + (1.0 + p.a2 * p.a2) * p.q1 + (1.0 + p.a1 * p.a1) * p.q2 + (1.0 - p.a1 * p.a2).powi(2) * p.q1 * p.q2;
    num / den
}

fn pure_margins_at(p: &Powers, s1: PureStrategy, s2: PureStrategy) -> Margins {
    use PureStrategy::{Bw, Fw};
    let (a1s, a2s, q1, q2) = (p.a1 * p.a1, p.a2 * p.a2, p.q1, p.q2);
    let gain1 = cap(q1 / (1.0 + a1s * q2));
    let gain2 = cap(q2 / (1.0 + a2s * q1));
    let (leak1, leak2) = match (s1, s2) {
        (Fw, Fw) => (a2s * q1, a1s * q2),
        (Fw, Bw) => (
            a2s * q1 / (1.0 + q2),
            (a2s * q1 + a1s * q2 * q2 + a1s * a2s * q1 * q2) / (1.0 + q2 + a1s * q2),
        ),
        (Bw, Fw) => (
            (a1s * q2 + a2s * q1 * q1 + a1s * a2s * q1 * q2) / (1.0 + q1 + a2s * q1),
            a1s * q2 / (1.0 + q1),
        ),
        (Bw, Bw) => {
            let l = bwbw_leak(p);
            (l, l)
        }
    };
    Margins {
        m1: gain1 - cap(leak1),
        m2: gain2 - cap(leak2),
    }
}

/// Pure-strategy key rates with full power.
pub fn pure_rates(ch: &ChannelParams, s1: PureStrategy, s2: PureStrategy) -> Result<RatePair> {
    pure_rates_with_power(ch, 1.0, 1.0, s1, s2)
}

/// Pure-strategy key rates with BSi transmitting at `beta_i·P_i`.
pub fn pure_rates_with_power(
    ch: &ChannelParams,
    beta1: f64,
    beta2: f64,
    s1: PureStrategy,
    s2: PureStrategy,
) -> Result<RatePair> {
    Ok(pure_margins(ch, beta1, beta2, s1, s2)?.rates())
}

/// Unclamped pure-strategy margins with BSi transmitting at `beta_i·P_i`.
pub fn pure_margins(ch: &ChannelParams, beta1: f64, beta2: f64, s1: PureStrategy, s2: PureStrategy) -> Result<Margins> {
    ch.validate()?;
    check_unit("beta1", beta1)?;
    check_unit("beta2", beta2)?;
    Ok(pure_margins_at(&ch.scaled(beta1, beta2), s1, s2))
}

/// Time-sharing key rates: in slot 1 (fraction `rho1`) pair 1 keys forward
/// while pair 2 keys backward, and the roles swap in slot 2.
pub fn time_sharing_rates(ch: &ChannelParams, ts: &TsParams) -> Result<RatePair> {
    ch.validate()?;
    ts.validate()?;
    let p = ch.scaled(ts.beta1, ts.beta2);
    let (a1s, a2s, q1, q2) = (p.a1 * p.a1, p.a2 * p.a2, p.q1, p.q2);
    let (rho1, rho2) = (ts.rho1, ts.rho2());

    let gain1 = cap(q1 / (1.0 + a1s * q2));
    let r1_slot1 = pos_part(gain1 - cap(a2s * q1 / (1.0 + q2)));
    let r1_slot2 = pos_part(gain1 - cap((a1s * q2 + a2s * q1 * q1 + a1s * a2s * q1 * q2) / (1.0 + q1 + a2s * q1)));

    let gain2 = cap(q2 / (1.0 + a2s * q1));
    let r2_slot2 = pos_part(gain2 - cap(a1s * q2 / (1.0 + q1)));
    let r2_slot1 = pos_part(gain2 - cap((a2s * q1 + a1s * q2 * q2 + a1s * a2s * q1 * q2) / (1.0 + q2 + a1s * q2)));

    Ok(RatePair::new(
        rho1 * r1_slot1 + rho2 * r1_slot2,
        rho2 * r2_slot2 + rho1 * r2_slot1,
    ))
}

/// Forward (`a`) and backward (`b`) margins of each pair under artificial noise.
///
/// The key rate of pair i is `[a_i]⁺ + [b_i]⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnTerms {
    pub a1: f64,
    pub b1: f64,
    pub a2: f64,
    pub b2: f64,
}

impl AnTerms {
    pub fn rates(&self) -> RatePair {
        RatePair::new(
            pos_part(self.a1) + pos_part(self.b1),
            pos_part(self.a2) + pos_part(self.b2),
        )
    }
}

fn an_terms_at(p: &Powers, l1: f64, l2: f64) -> AnTerms {
    let (a1s, a2s, q1, q2) = (p.a1 * p.a1, p.a2 * p.a2, p.q1, p.q2);
    let cross = (1.0 - p.a1 * p.a2).powi(2) * l1 * l2 * q1 * q2;

    let fwd1 = cap((1.0 - l1) * q1 / (1.0 + a1s * q2 + l1 * q1))
        - cap((1.0 - l1) * a2s * q1 / (1.0 + a2s * l1 * q1 + l2 * q2));
    let bwd1 = cap((cross + a1s * l2 * q2 + l1 * q1) / (1.0 + a2s * l1 * q1 + l2 * q2)) - cap(a1s * q2);

    let fwd2 = cap((1.0 - l2) * q2 / (1.0 + a2s * q1 + l2 * q2))
        - cap((1.0 - l2) * a1s * q2 / (1.0 + a1s * l2 * q2 + l1 * q1));
    let bwd2 = cap((cross + a2s * l1 * q1 + l2 * q2) / (1.0 + a1s * l2 * q2 + l1 * q1)) - cap(a2s * q1);

    AnTerms {
        a1: fwd1,
        b1: bwd1,
        a2: fwd2,
        b2: bwd2,
    }
}

pub fn artificial_noise_terms(ch: &ChannelParams, an: &AnParams) -> Result<AnTerms> {
    ch.validate()?;
    an.validate()?;
    Ok(an_terms_at(&ch.scaled(an.beta1, an.beta2), an.lambda1, an.lambda2))
}

/// Artificial-noise key rates: BSi spends `lambda_i·beta_i·P_i` on noise,
/// which also seeds the backward key, and the rest on the forward key.
pub fn artificial_noise_rates(ch: &ChannelParams, an: &AnParams) -> Result<RatePair> {
    Ok(artificial_noise_terms(ch, an)?.rates())
}

// Unchecked evaluators for sweeps over already validated grids.
pub(crate) fn pure_rates_unchecked(ch: &ChannelParams, s1: PureStrategy, s2: PureStrategy) -> RatePair {
    pure_margins_at(&ch.scaled(1.0, 1.0), s1, s2).rates()
}

pub(crate) fn an_rates_unchecked(ch: &ChannelParams, an: &AnParams) -> RatePair {
    an_terms_at(&ch.scaled(an.beta1, an.beta2), an.lambda1, an.lambda2).rates()
}
