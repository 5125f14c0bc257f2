//! Inner bound for a discrete memoryless channel, and the four pure
//! strategies obtained by substitution.
//!
//!     cargo run --example dm_bound [FACTORED_PMF.json]

use keyrate::dm_bound::{inner_bound_terms, DmChannel};
use keyrate::{pure_strategy_dm_bounds, strategy::profile_label, theorem1_bounds, FactoredPmf, PROFILES};

fn main() -> keyrate::Result<()> {
    if let Some(path) = std::env::args().nth(1) {
        let text = std::fs::read_to_string(&path).map_err(|source| keyrate::Error::Io { path, source })?;
        let f = FactoredPmf::from_json(&text)?;
        let t = inner_bound_terms(&f)?;
        println!("{t:#?}");
        println!("rates {}  forward only: {}", t.rates(), f.forward_only());
        return Ok(());
    }

    // binary inputs; each output is its own input flipped w.p. 0.1, and the
    // other pair's input leaks in w.p. 0.2
    let mut w = vec![0.0; 16];
    for x1 in 0..2 {
        for x2 in 0..2 {
            for (e1, p1) in [(0, 0.9), (1, 0.1)] {
                for (e2, p2) in [(0, 0.8), (1, 0.2)] {
                    let y1 = x1 ^ e1;
                    let y2 = if e2 == 1 { x1 } else { x2 ^ e1 };
                    w[(x1 * 2 + x2) * 4 + y1 * 2 + y2] += p1 * p2;
                }
            }
        }
    }
    let ch = DmChannel {
        x1: 2,
        x2: 2,
        y1: 2,
        y2: 2,
        p_x1: vec![0.5, 0.5],
        p_x2: vec![0.5, 0.5],
        p_y_given_x: w,
    };
    println!("{:>8}  {:>22}  {:>22}", "profile", "substituted bound", "direct bound");
    for (s1, s2) in PROFILES {
        let f = ch.factored_for_profile(s1, s2)?;
        let sub = theorem1_bounds(&f)?;
        let direct = pure_strategy_dm_bounds(&f, s1, s2)?;
        println!(
            "{:>8}  ({:.6}, {:.6})  ({:.6}, {:.6})",
            profile_label((s1, s2)),
            sub.r1,
            sub.r2,
            direct.r1,
            direct.r2
        );
    }
    Ok(())
}
