//! Non-cooperative games between the two BS-user pairs.
//!
//! * Γ1: 2×2 game over {FW, BW} with the pure-strategy key rates as payoffs.
//! * Γ2: continuous game over the artificial-noise fractions `λ1, λ2 ∈ [0, 1]`
//!   at full power.
//!
//! Payoffs are compared on the unclamped secrecy margin (gain − leakage).
//! The key rate is the positive part of the margin, so both orderings agree
//! whenever either compared rate is positive; when both rates are zero the
//! margin breaks the tie in favour of the strategy closer to a positive rate.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{artificial_noise_terms, pure_margins, AnParams, ChannelParams, Margins};
use crate::strategy::{profile_label, Player, Profile, PureStrategy, RatePair, PROFILES};

/// Default payoff tolerance for equilibrium tests.
pub const DEFAULT_NE_TOL: f64 = 1e-9;

/// Relative tolerance of the closed-form equilibrium conditions.
const CONDITION_RTOL: f64 = 1e-12;

/// Tolerance for grid best responses.
pub const BEST_RESPONSE_TOL: f64 = 1e-9;

/// Smallest grid accepted by [`best_response_lambda`].
pub const MIN_BR_GRID: usize = 11;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixGame {
    pub channel: ChannelParams,
    pub beta1: f64,
    pub beta2: f64,
    /// Key rates indexed `[s1][s2]` (FW = 0, BW = 1).
    pub payoffs: [[RatePair; 2]; 2],
    /// Unclamped margins indexed like `payoffs`.
    pub margins: [[Margins; 2]; 2],
}

impl MatrixGame {
    pub fn rates(&self, p: Profile) -> RatePair {
        self.payoffs[p.0.index()][p.1.index()]
    }

    pub fn margin(&self, p: Profile, player: Player) -> f64 {
        let m = self.margins[p.0.index()][p.1.index()];
        match player {
            Player::One => m.m1,
            Player::Two => m.m2,
        }
    }

    /// All four cells carry the same payoff pair (within `tol`).
    pub fn all_tie(&self, tol: f64) -> bool {
        let first = self.margins[0][0];
        self.margins
            .iter()
            .flatten()
            .all(|m| (m.m1 - first.m1).abs() <= tol && (m.m2 - first.m2).abs() <= tol)
    }
}

/// Γ1 with BSi transmitting at `beta_i·P_i`.
pub fn build_gamma1(ch: &ChannelParams, beta1: f64, beta2: f64) -> Result<MatrixGame> {
    let mut payoffs = [[RatePair::default(); 2]; 2];
    let mut margins = [[Margins { m1: 0.0, m2: 0.0 }; 2]; 2];
    for (s1, s2) in PROFILES {
        let m = pure_margins(ch, beta1, beta2, s1, s2)?;
        margins[s1.index()][s2.index()] = m;
        payoffs[s1.index()][s2.index()] = m.rates();
    }
    Ok(MatrixGame {
        channel: *ch,
        beta1,
        beta2,
        payoffs,
        margins,
    })
}

/// Weak-inequality pure Nash equilibria of a 2×2 game given by a utility
/// lookup, in [`PROFILES`] order.
fn enumerate_ne(utility: impl Fn(Profile, Player) -> f64, tol: f64) -> Vec<Profile> {
    PROFILES
        .into_iter()
        .filter(|&(s1, s2)| {
            let u1 = utility((s1, s2), Player::One);
            let u2 = utility((s1, s2), Player::Two);
            u1 >= utility((s1.flip(), s2), Player::One) - tol && u2 >= utility((s1, s2.flip()), Player::Two) - tol
        })
        .collect()
}

/// Pure Nash equilibria of Γ1: no player gains more than `tol` of secrecy
/// margin by a unilateral deviation.
pub fn pure_ne(g: &MatrixGame, tol: f64) -> Vec<Profile> {
    enumerate_ne(|p, pl| g.margin(p, pl), tol)
}

/// Pure Nash equilibria judged on the clamped key rates alone. Every
/// profile where a player's rate is zero either way counts as a tie.
pub fn pure_ne_clamped(g: &MatrixGame, tol: f64) -> Vec<Profile> {
    enumerate_ne(|p, pl| g.rates(p).get(pl), tol)
}

/// Leakage `Λ1(α1, α2)` of the (BW,BW) profile at equal powers `P1 = P2 = p`.
pub fn lambda_big(alpha1: f64, alpha2: f64, p: f64) -> f64 {
    let num = p * p * (alpha1 + alpha2).powi(2);
    let den = 1.0 + (1.0 + alpha2 * alpha2) * p + (1.0 + alpha1 * alpha1) * p + (1.0 - alpha1 * alpha2).powi(2) * p * p;
    num / den
}

fn le(x: f64, y: f64) -> bool {
    x <= y + CONDITION_RTOL * x.abs().max(y.abs())
}

/// Classification of the equilibrium set over the equal-power square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalyticClass {
    /// `α1 = α2 ≠ 0`, `P > ½`: (FW,FW), (FW,BW) and (BW,FW).
    DiagThreeNe,
    /// `α1 > α2`, `P > ½`: (FW,BW) only.
    FwbwUnique,
    /// `α1 < α2`, `P > ½`: (BW,FW) only.
    BwfwUnique,
    /// `P ≤ ½`; the high-SNR trichotomy does not apply.
    LowSnrOther,
    /// `α1 = α2 = 0`: no interference, every profile ties.
    Degenerate,
    /// Unequal powers or power control; only raw conditions are reported.
    NotClassified,
}

impl AnalyticClass {
    pub fn as_str(self) -> &'static str {
        match self {
            AnalyticClass::DiagThreeNe => "diag_three_ne",
            AnalyticClass::FwbwUnique => "fwbw_unique",
            AnalyticClass::BwfwUnique => "bwfw_unique",
            AnalyticClass::LowSnrOther => "low_snr_other",
            AnalyticClass::Degenerate => "degenerate",
            AnalyticClass::NotClassified => "not_classified",
        }
    }

    /// Equilibrium set implied by the class, when it pins one down.
    pub fn predicted(self) -> Option<Vec<Profile>> {
        use PureStrategy::{Bw, Fw};
        match self {
            AnalyticClass::DiagThreeNe => Some(vec![(Fw, Fw), (Fw, Bw), (Bw, Fw)]),
            AnalyticClass::FwbwUnique => Some(vec![(Fw, Bw)]),
            AnalyticClass::BwfwUnique => Some(vec![(Bw, Fw)]),
            AnalyticClass::Degenerate => Some(PROFILES.to_vec()),
            AnalyticClass::LowSnrOther | AnalyticClass::NotClassified => None,
        }
    }
}

/// Closed-form equilibrium conditions of Γ1 at effective powers
/// `Q1 = β1·P1`, `Q2 = β2·P2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticConditions {
    /// `α2²·Q1 − α1²·Q2`; (FW,FW) is an equilibrium iff this vanishes.
    pub fwfw_gap: f64,
    /// (BW,BW) leakage ratio; equals `Λ1` at equal powers.
    pub lambda1: f64,
    /// `α2²·Q1 / (1 + Q2)`: what pair 1 leaks playing FW against BW.
    pub fw_vs_bw_leak_1: f64,
    /// `α1²·Q2 / (1 + Q1)`: what pair 2 leaks playing FW against BW.
    pub fw_vs_bw_leak_2: f64,
    pub fwfw_ne: bool,
    pub fwbw_ne: bool,
    pub bwfw_ne: bool,
    pub bwbw_ne: bool,
    pub class: AnalyticClass,
}

impl AnalyticConditions {
    pub fn equilibria(&self) -> Vec<Profile> {
        let flags = [self.fwfw_ne, self.fwbw_ne, self.bwfw_ne, self.bwbw_ne];
        PROFILES
            .into_iter()
            .zip(flags)
            .filter_map(|(p, f)| f.then_some(p))
            .collect()
    }
}

/// Evaluates the closed-form equilibrium conditions.
///
/// Each profile's test compares the leakage ratios that decide a unilateral
/// deviation. At equal powers and full power these are
/// `Λ1 ≤ min(α1², α2²)·P/(1+P)` for (BW,BW) and
/// `α2²·P/(1+P) ≤ Λ1, α2 ≤ α1` for (FW,BW). The high-SNR classification is
/// only produced for `β1 = β2 = 1`, `P1 = P2`.
pub fn analytic_ne_conditions(ch: &ChannelParams, beta1: f64, beta2: f64) -> Result<AnalyticConditions> {
    ch.validate()?;
    for (name, b) in [("beta1", beta1), ("beta2", beta2)] {
        if !(0.0..=1.0).contains(&b) {
            return Err(Error::domain(format!("{name} must lie in [0, 1], got {b}")));
        }
    }
    let (a1, a2) = (ch.alpha1, ch.alpha2);
    let (q1, q2) = (beta1 * ch.p1, beta2 * ch.p2);
    let (x1, x2) = (a1 * a1 * q2, a2 * a2 * q1);

    let num = (a2 * q1 + a1 * q2).powi(2);
    let den = 1.0 + (1.0 + a2 * a2) * q1 + (1.0 + a1 * a1) * q2 + (1.0 - a1 * a2).powi(2) * q1 * q2;
    let lam = num / den;
    let leak1 = x2 / (1.0 + q2);
    let leak2 = x1 / (1.0 + q1);

    let fwfw_ne = (x2 - x1).abs() <= CONDITION_RTOL * x1.max(x2);
    let bwbw_ne = le(lam, leak1) && le(lam, leak2);
    let fwbw_ne = le(leak1, lam) && le(x2, x1);
    let bwfw_ne = le(leak2, lam) && le(x1, x2);

    let equal_power = beta1 == 1.0 && beta2 == 1.0 && ch.p1 == ch.p2;
    let class = if !equal_power {
        AnalyticClass::NotClassified
    } else if a1 == 0.0 && a2 == 0.0 {
        AnalyticClass::Degenerate
    } else if ch.p1 <= 0.5 {
        AnalyticClass::LowSnrOther
    } else if a1.abs() == a2.abs() {
        AnalyticClass::DiagThreeNe
    } else if a1.abs() > a2.abs() {
        AnalyticClass::FwbwUnique
    } else {
        AnalyticClass::BwfwUnique
    };

    Ok(AnalyticConditions {
        fwfw_gap: x2 - x1,
        lambda1: lam,
        fw_vs_bw_leak_1: leak1,
        fw_vs_bw_leak_2: leak2,
        fwfw_ne,
        fwbw_ne,
        bwfw_ne,
        bwbw_ne,
        class,
    })
}

/// Equilibria of Γ1 found by enumeration next to the closed-form analysis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeReport {
    pub equilibria: Vec<Profile>,
    pub tie_tolerance: f64,
    pub analytic_class: AnalyticClass,
    pub conditions: AnalyticConditions,
    /// Enumeration agrees with the closed-form conditions, and with the
    /// classification wherever it predicts a set.
    pub agree: bool,
    /// Every cell of the game has the same unclamped margin pair.
    pub all_tie: bool,
}

impl NeReport {
    pub fn contains(&self, p: Profile) -> bool {
        self.equilibria.contains(&p)
    }

    pub fn labels(&self) -> Vec<String> {
        self.equilibria.iter().map(|&p| profile_label(p)).collect()
    }
}

pub fn ne_report(ch: &ChannelParams, beta1: f64, beta2: f64, tol: f64) -> Result<NeReport> {
    let g = build_gamma1(ch, beta1, beta2)?;
    let equilibria = pure_ne(&g, tol);
    let conditions = analytic_ne_conditions(ch, beta1, beta2)?;
    let class = conditions.class;
    let agree = conditions.equilibria() == equilibria && class.predicted().is_none_or(|pred| pred == equilibria);
    Ok(NeReport {
        equilibria,
        tie_tolerance: tol,
        analytic_class: class,
        conditions,
        agree,
        all_tie: g.all_tie(tol),
    })
}

/// Γ2 payoffs: artificial-noise key rates at full power.
pub fn gamma2_payoffs(ch: &ChannelParams, lambda1: f64, lambda2: f64) -> Result<RatePair> {
    Ok(artificial_noise_terms(ch, &AnParams::new(1.0, 1.0, lambda1, lambda2)?)?.rates())
}

/// Player `player`'s Γ2 payoff with its own fraction `own` against `other`.
fn gamma2_payoff_of(ch: &ChannelParams, player: Player, own: f64, other: f64) -> Result<f64> {
    let (l1, l2) = match player {
        Player::One => (own, other),
        Player::Two => (other, own),
    };
    Ok(gamma2_payoffs(ch, l1, l2)?.get(player))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BestResponse {
    /// Grid values of the player's own `λ` within tolerance of the maximum.
    pub argmax: Vec<f64>,
    pub max_payoff: f64,
    /// Best payoff over the endpoints `λ ∈ {0, 1}`.
    pub endpoint_payoff: f64,
    /// Some endpoint attains the grid maximum within tolerance.
    pub endpoint_attains: bool,
}

/// Grid best response of `player` in Γ2 to the opponent's `lambda_other`.
pub fn best_response_lambda(
    ch: &ChannelParams,
    player: Player,
    lambda_other: f64,
    grid_n: usize,
) -> Result<BestResponse> {
    if grid_n < MIN_BR_GRID {
        return Err(Error::domain(format!(
            "best-response grid needs at least {MIN_BR_GRID} points, got {grid_n}"
        )));
    }
    ch.validate()?;
    let grid: Vec<f64> = (0..grid_n).map(|i| i as f64 / (grid_n - 1) as f64).collect();
    let values = grid
        .iter()
        .map(|&l| gamma2_payoff_of(ch, player, l, lambda_other))
        .collect::<Result<Vec<f64>>>()?;
    let max_payoff = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let argmax = grid
        .iter()
        .zip(&values)
        .filter(|(_, &v)| v >= max_payoff - BEST_RESPONSE_TOL)
        .map(|(&l, _)| l)
        .collect();
    let endpoint_payoff = values[0].max(values[grid_n - 1]);
    Ok(BestResponse {
        argmax,
        max_payoff,
        endpoint_payoff,
        endpoint_attains: endpoint_payoff >= max_payoff - BEST_RESPONSE_TOL,
    })
}

fn lambda_of(s: PureStrategy) -> f64 {
    match s {
        PureStrategy::Fw => 0.0,
        PureStrategy::Bw => 1.0,
    }
}

/// Margin of the active term of a player's Γ2 payoff at a corner: the
/// forward margin when its `λ = 0`, the backward margin when `λ = 1`.
/// The inactive term is never positive there.
fn gamma2_corner_margin(ch: &ChannelParams, p: Profile, player: Player) -> Result<f64> {
    let t = artificial_noise_terms(ch, &AnParams::new(1.0, 1.0, lambda_of(p.0), lambda_of(p.1))?)?;
    Ok(match (player, p) {
        (Player::One, (PureStrategy::Fw, _)) => t.a1,
        (Player::One, (PureStrategy::Bw, _)) => t.b1,
        (Player::Two, (_, PureStrategy::Fw)) => t.a2,
        (Player::Two, (_, PureStrategy::Bw)) => t.b2,
    })
}

/// Equilibria of Γ2 restricted to `λ ∈ {0, 1}²`, reported as the
/// corresponding pure profiles (`λ = 0` ↔ FW, `λ = 1` ↔ BW).
pub fn gamma2_corner_ne(ch: &ChannelParams, tol: f64) -> Result<Vec<Profile>> {
    let mut table = [[0.0f64; 2]; 4];
    for (k, p) in PROFILES.into_iter().enumerate() {
        table[k] = [
            gamma2_corner_margin(ch, p, Player::One)?,
            gamma2_corner_margin(ch, p, Player::Two)?,
        ];
    }
    let idx = |p: Profile| p.0.index() * 2 + p.1.index();
    Ok(enumerate_ne(
        |p, pl| table[idx(p)][if pl == Player::One { 0 } else { 1 }],
        tol,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeCell {
    pub alpha1: f64,
    pub alpha2: f64,
    pub report: NeReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeMap {
    pub p: f64,
    pub grid_n: usize,
    /// Row-major: `alpha1` index outer, `alpha2` index inner.
    pub cells: Vec<NeCell>,
}

impl NeMap {
    pub fn cell(&self, i: usize, j: usize) -> &NeCell {
        &self.cells[i * self.grid_n + j]
    }

    pub fn disagreements(&self) -> usize {
        self.cells.iter().filter(|c| !c.report.agree).count()
    }
}

/// Equilibrium map of Γ1 over `(α1, α2) ∈ [0, 1]²` at `P1 = P2 = p`, full power.
pub fn ne_map(p: f64, grid_n: usize) -> Result<NeMap> {
    ne_map_with_tol(p, grid_n, DEFAULT_NE_TOL)
}

pub fn ne_map_with_tol(p: f64, grid_n: usize, tol: f64) -> Result<NeMap> {
    if grid_n < 3 {
        return Err(Error::domain(format!(
            "NE map grid needs at least 3 points, got {grid_n}"
        )));
    }
    ChannelParams::symmetric(0.0, p)?;
    let step = |i: usize| i as f64 / (grid_n - 1) as f64;
    let cells = (0..grid_n * grid_n)
        .into_par_iter()
        .map(|k| {
            let (alpha1, alpha2) = (step(k / grid_n), step(k % grid_n));
            let ch = ChannelParams::new(alpha1, alpha2, p, p)?;
            Ok(NeCell {
                alpha1,
                alpha2,
                report: ne_report(&ch, 1.0, 1.0, tol)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NeMap { p, grid_n, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use PureStrategy::{Bw, Fw};

    fn ne_of(a1: f64, a2: f64, p: f64) -> Vec<Profile> {
        let ch = ChannelParams::new(a1, a2, p, p).unwrap();
        pure_ne(&build_gamma1(&ch, 1.0, 1.0).unwrap(), DEFAULT_NE_TOL)
    }

    #[test]
    fn gamma1_without_interference() {
        let ch = ChannelParams::symmetric(0.0, 1.0).unwrap();
        let g = build_gamma1(&ch, 1.0, 1.0).unwrap();
        for p in PROFILES {
            let r = g.rates(p);
            assert!((r.r1 - 0.5).abs() < 1e-15 && (r.r2 - 0.5).abs() < 1e-15);
        }
        assert!(g.all_tie(1e-12));
        assert_eq!(pure_ne(&g, DEFAULT_NE_TOL), PROFILES.to_vec());
    }

    #[test]
    fn gamma1_symmetry_and_zero_power() {
        let ch = ChannelParams::symmetric(0.4, 3.0).unwrap();
        let g = build_gamma1(&ch, 1.0, 1.0).unwrap();
        for (s1, s2) in PROFILES {
            assert!((g.rates((s1, s2)).r1 - g.rates((s2, s1)).r2).abs() < 1e-15);
        }
        let g0 = build_gamma1(&ch, 0.0, 1.0).unwrap();
        for p in PROFILES {
            assert_eq!(g0.rates(p).r1, 0.0);
        }
    }

    #[test]
    fn three_way_split_examples() {
        assert_eq!(ne_of(0.5, 0.5, 1.0), vec![(Fw, Fw), (Fw, Bw), (Bw, Fw)]);
        assert_eq!(ne_of(0.6, 0.3, 1.0), vec![(Fw, Bw)]);
        assert_eq!(ne_of(0.3, 0.6, 1.0), vec![(Bw, Fw)]);
    }

    #[test]
    fn clamped_rule_admits_zero_rate_ties() {
        // near (1, 1) at P = 1 every rate is zero, so clamped payoffs all tie
        let ch = ChannelParams::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let g = build_gamma1(&ch, 1.0, 1.0).unwrap();
        assert_eq!(pure_ne_clamped(&g, DEFAULT_NE_TOL).len(), 4);
        assert_eq!(pure_ne(&g, DEFAULT_NE_TOL).len(), 3);
    }

    #[test]
    fn lambda_big_values() {
        assert_eq!(lambda_big(0.0, 0.0, 3.0), 0.0);
        assert!((lambda_big(1.0, 1.0, 1.0) - 0.8).abs() < 1e-15);
        assert!((lambda_big(1.0, 1.0, 0.4) - 0.64 / 2.6).abs() < 1e-15);
        assert_eq!(lambda_big(0.3, 0.8, 2.0), lambda_big(0.8, 0.3, 2.0));
    }

    #[test]
    fn analytic_examples() {
        let c = analytic_ne_conditions(&ChannelParams::symmetric(0.5, 1.0).unwrap(), 1.0, 1.0).unwrap();
        assert!(c.fwfw_ne);
        assert_eq!(c.class, AnalyticClass::DiagThreeNe);

        let c = analytic_ne_conditions(&ChannelParams::symmetric(1.0, 1.0).unwrap(), 1.0, 1.0).unwrap();
        assert!((c.lambda1 - 0.8).abs() < 1e-15);
        assert!(!c.bwbw_ne);

        let c = analytic_ne_conditions(&ChannelParams::symmetric(1.0, 0.4).unwrap(), 1.0, 1.0).unwrap();
        assert!((c.lambda1 - 0.246_153_846_153_846_15).abs() < 1e-12);
        assert!((c.fw_vs_bw_leak_1 - 0.4 / 1.4).abs() < 1e-15);
        assert!(c.bwbw_ne);
        assert_eq!(c.class, AnalyticClass::LowSnrOther);

        let c = analytic_ne_conditions(&ChannelParams::new(0.5, 0.5, 1.0, 2.0).unwrap(), 1.0, 1.0).unwrap();
        assert_eq!(c.class, AnalyticClass::NotClassified);
    }

    #[test]
    fn low_snr_bwbw_is_equilibrium() {
        assert!(ne_of(1.0, 1.0, 0.4).contains(&(Bw, Bw)));
    }

    #[test]
    fn gamma2_corners_match_gamma1() {
        let ch = ChannelParams::new(0.35, 0.8, 4.0, 9.0).unwrap();
        let g = build_gamma1(&ch, 1.0, 1.0).unwrap();
        for (s1, s2) in PROFILES {
            let r = gamma2_payoffs(&ch, lambda_of(s1), lambda_of(s2)).unwrap();
            let p = g.rates((s1, s2));
            assert!((r.r1 - p.r1).abs() < 1e-12 && (r.r2 - p.r2).abs() < 1e-12);
            for pl in [Player::One, Player::Two] {
                let m = gamma2_corner_margin(&ch, (s1, s2), pl).unwrap();
                assert!((m - g.margin((s1, s2), pl)).abs() < 1e-12);
            }
        }
        assert_eq!(
            gamma2_corner_ne(&ch, DEFAULT_NE_TOL).unwrap(),
            pure_ne(&g, DEFAULT_NE_TOL)
        );
    }

    #[test]
    fn best_response_endpoints() {
        let ch = ChannelParams::symmetric(0.5, 1.0).unwrap();
        let br = best_response_lambda(&ch, Player::One, 0.0, 1001).unwrap();
        assert!(br.endpoint_attains);
        assert!(br.argmax.iter().any(|&l| l == 0.0 || l == 1.0));

        let free = ChannelParams::symmetric(0.0, 2.0).unwrap();
        for other in [0.0, 0.3, 1.0] {
            let br = best_response_lambda(&free, Player::Two, other, 101).unwrap();
            assert!(br.endpoint_attains);
        }
        assert!(best_response_lambda(&ch, Player::One, 0.0, 10).is_err());
    }

    #[test]
    fn small_ne_map() {
        let m = ne_map(1.0, 3).unwrap();
        assert_eq!(m.cells.len(), 9);
        assert_eq!(m.disagreements(), 0);
        assert_eq!(m.cell(0, 0).report.analytic_class, AnalyticClass::Degenerate);
        assert!(m.cell(0, 0).report.all_tie);
        assert_eq!(m.cell(0, 2).report.equilibria, vec![(Bw, Fw)]);
        assert_eq!(m.cell(2, 1).report.equilibria, vec![(Fw, Bw)]);
        assert!(ne_map(1.0, 2).is_err());
    }
}
