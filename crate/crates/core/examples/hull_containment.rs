//! Compares the region hulls of the three schemes along 64 directions.
//!
//!     cargo run --release --example hull_containment [grid]

use keyrate::region::{directions, hull_contains, support, sweep_region, GridSpec, RegionSample, Scheme};
use keyrate::{pure_rates, ChannelParams, PureStrategy::*};

fn shortfall(outer: &RegionSample, inner: &RegionSample) -> f64 {
    directions(64)
        .into_iter()
        .map(|d| support(&inner.hull, d) - support(&outer.hull, d))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn main() -> keyrate::Result<()> {
    let n = std::env::args().nth(1).map_or(21, |g| g.parse().expect("grid size"));
    let ch = ChannelParams::symmetric(0.2, 100.0)?;
    let grid = GridSpec::uniform(n);
    let [pure, ts, an] = Scheme::ALL.map(|s| sweep_region(&ch, s, &grid));
    let (pure, ts, an) = (pure?, ts?, an?);
    for (name, outer, inner) in [
        ("AN ⊇ TS", &an, &ts),
        ("AN ⊇ pure", &an, &pure),
        ("TS ⊇ pure", &ts, &pure),
    ] {
        println!(
            "{name:<10} {:<5}  worst shortfall {:+.3e}",
            hull_contains(&outer.hull, &inner.hull, 64, 1e-9),
            shortfall(outer, inner)
        );
    }
    let (ff, bb) = (pure_rates(&ch, Fw, Fw)?, pure_rates(&ch, Bw, Bw)?);
    println!("(FW,FW) {ff} vs (BW,BW) {bb}");
    Ok(())
}
