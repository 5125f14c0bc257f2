//! The 2x2 strategy game at one channel: payoffs, equilibria and the
//! closed-form conditions.
//!
//!     cargo run --example game_analysis [a1 a2 P]

use keyrate::game::{analytic_ne_conditions, ne_report};
use keyrate::strategy::profile_label;
use keyrate::{build_gamma1, ChannelParams, PROFILES};

fn main() -> keyrate::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let (a1, a2, p) = match args[..] {
        [a1, a2, p] => (a1, a2, p),
        _ => (0.6, 0.3, 1.0),
    };
    let ch = ChannelParams::new(a1, a2, p, p)?;
    let g = build_gamma1(&ch, 1.0, 1.0)?;
    for prof in PROFILES {
        let m = g.margins[prof.0.index()][prof.1.index()];
        println!(
            "{:>8}  rates {}  margins ({:+.5}, {:+.5})",
            profile_label(prof),
            g.rates(prof),
            m.m1,
            m.m2
        );
    }
    let rep = ne_report(&ch, 1.0, 1.0, 1e-9)?;
    let cond = analytic_ne_conditions(&ch, 1.0, 1.0)?;
    println!("equilibria {:?}", rep.labels());
    println!(
        "class {}  Lambda1 {:.6}  agree {}",
        cond.class.as_str(),
        cond.lambda1,
        rep.agree
    );
    Ok(())
}
