//! Rate regions of the three Gaussian schemes at one channel.
//!
//!     cargo run --release --example region_sweep [a1 a2 p1 p2 [grid]]

use keyrate::region::{sweep_region, GridSpec, Scheme};
use keyrate::ChannelParams;

fn main() -> keyrate::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let [a1, a2, p1, p2] = match args.get(..4) {
        Some(v) => [v[0], v[1], v[2], v[3]],
        None => [0.2, 0.2, 100.0, 100.0],
    };
    let n = args.get(4).map_or(21, |&g| g as usize);
    let ch = ChannelParams::new(a1, a2, p1, p2)?;
    println!("channel {ch:?}, {n} points per axis");
    for scheme in Scheme::ALL {
        let s = sweep_region(&ch, scheme, &GridSpec::uniform(n))?;
        let m = s.max_rates();
        println!(
            "{scheme:>4}: {:>7} points, {:>4} on the frontier, max r1 {:.4}, max r2 {:.4}",
            s.points.len(),
            s.frontier.len(),
            m.r1,
            m.r2
        );
        let best_sum = s
            .frontier
            .iter()
            .max_by(|a, b| (a.r1 + a.r2).total_cmp(&(b.r1 + b.r2)))
            .unwrap();
        println!("      best sum rate {:.4} at {best_sum}", best_sum.r1 + best_sum.r2);
    }
    Ok(())
}
