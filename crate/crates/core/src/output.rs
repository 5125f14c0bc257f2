//! CSV and JSON layouts of region samples and equilibrium maps.

use std::io::{self, Write};

use serde::Serialize;

use crate::game::NeMap;
use crate::region::{ParamRecord, RegionSample};
use crate::strategy::{PureStrategy, RatePair, PROFILES};

pub const REGION_HEADER: &str = "scheme,rho1,beta1,beta2,lambda1,lambda2,s1,s2,r1,r2,on_frontier";
pub const HULL_HEADER: &str = "r1,r2";
pub const NE_MAP_HEADER: &str = "alpha1,alpha2,ne_fwfw,ne_fwbw,ne_bwfw,ne_bwbw,analytic_class,agree";

/// Formats `x` with 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&exp) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding can carry into a new leading digit, e.g. 9.99…→10.0
    let digits = s.chars().filter(char::is_ascii_digit).collect::<String>();
    if digits.trim_start_matches('0').len() > 12 && decimals > 0 {
        let d = decimals - 1;
        return format!("{x:.d$}");
    }
    s
}

fn opt(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}

fn opt_s(s: Option<PureStrategy>) -> &'static str {
    s.map(PureStrategy::as_str).unwrap_or("")
}

fn region_row(
    w: &mut (impl Write + ?Sized),
    scheme: &str,
    rec: &ParamRecord,
    r: RatePair,
    front: bool,
) -> io::Result<()> {
    writeln!(
        w,
        "{scheme},{},{},{},{},{},{},{},{},{},{}",
        opt(rec.rho1),
        opt(rec.beta1),
        opt(rec.beta2),
        opt(rec.lambda1),
        opt(rec.lambda2),
        opt_s(rec.s1),
        opt_s(rec.s2),
        sig12(r.r1),
        sig12(r.r2),
        u8::from(front)
    )
}

/// One row per evaluated point; `frontier_only` keeps the Pareto-maximal rows.
pub fn write_region_csv(w: &mut (impl Write + ?Sized), s: &RegionSample, frontier_only: bool) -> io::Result<()> {
    writeln!(w, "{REGION_HEADER}")?;
    for (p, &front) in s.points.iter().zip(&s.on_frontier) {
        if frontier_only && !front {
            continue;
        }
        region_row(w, s.scheme.as_str(), &s.params(p), p.rates, front)?;
    }
    Ok(())
}

pub fn write_hull_csv(w: &mut (impl Write + ?Sized), hull: &[RatePair]) -> io::Result<()> {
    writeln!(w, "{HULL_HEADER}")?;
    for v in hull {
        writeln!(w, "{},{}", sig12(v.r1), sig12(v.r2))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct PointJson {
    #[serde(flatten)]
    params: ParamRecord,
    r1: f64,
    r2: f64,
    on_frontier: bool,
}

#[derive(Serialize)]
struct RegionJson<'a> {
    scheme: &'a str,
    channel: &'a crate::gaussian::ChannelParams,
    points: Vec<PointJson>,
    frontier: &'a [RatePair],
    hull: &'a [RatePair],
}

pub fn write_region_json(w: &mut (impl Write + ?Sized), s: &RegionSample) -> io::Result<()> {
    let doc = RegionJson {
        scheme: s.scheme.as_str(),
        channel: &s.channel,
        points: s
            .points
            .iter()
            .zip(&s.on_frontier)
            .map(|(p, &f)| PointJson {
                params: s.params(p),
                r1: p.rates.r1,
                r2: p.rates.r2,
                on_frontier: f,
            })
            .collect(),
        frontier: &s.frontier,
        hull: &s.hull,
    };
    serde_json::to_writer_pretty(&mut *w, &doc)?;
    writeln!(w)
}

pub fn write_ne_map_csv(w: &mut (impl Write + ?Sized), map: &NeMap) -> io::Result<()> {
    writeln!(w, "{NE_MAP_HEADER}")?;
    for c in &map.cells {
        let flags: Vec<&str> = PROFILES
            .iter()
            .map(|&p| if c.report.contains(p) { "1" } else { "0" })
            .collect();
        writeln!(
            w,
            "{},{},{},{},{}",
            sig12(c.alpha1),
            sig12(c.alpha2),
            flags.join(","),
            c.report.analytic_class.as_str(),
            u8::from(c.report.agree)
        )?;
    }
    Ok(())
}

pub fn write_ne_map_json(w: &mut (impl Write + ?Sized), map: &NeMap) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, map)?;
    writeln!(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(0.5), "0.500000000000");
        assert_eq!(sig12(3.329105741375897), "3.32910574138");
        assert_eq!(sig12(1.0), "1.00000000000");
        assert_eq!(sig12(0.025), "0.0250000000000");
        assert_eq!(sig12(9.9999999999999), "10.0000000000");
        assert_eq!(sig12(1e-7), "1.00000000000e-7");
    }
}
