//! Best responses in the artificial-noise game: each pair's payoff as a
//! function of its own noise fraction peaks at an endpoint.
//!
//!     cargo run --example best_response [a1 a2 P]

use keyrate::game::{best_response_lambda, gamma2_corner_ne, gamma2_payoffs};
use keyrate::{ChannelParams, Player};

fn main() -> keyrate::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let (a1, a2, p) = match args[..] {
        [a1, a2, p] => (a1, a2, p),
        _ => (0.5, 0.4, 10.0),
    };
    let ch = ChannelParams::new(a1, a2, p, p)?;
    for lo in [0.0, 0.5, 1.0] {
        let curve: Vec<String> = (0..=10)
            .map(|k| {
                format!(
                    "{:.3}",
                    gamma2_payoffs(&ch, k as f64 / 10.0, lo)
                        .map(|r| r.r1)
                        .unwrap_or(f64::NAN)
                )
            })
            .collect();
        let br = best_response_lambda(&ch, Player::One, lo, 1001)?;
        println!("lambda2 = {lo}: R1 over lambda1 = 0, 0.1, .., 1: {}", curve.join(" "));
        println!(
            "    best lambda1 {:?}, endpoint attains max: {}",
            br.argmax, br.endpoint_attains
        );
    }
    println!("equilibria on the corners: {:?}", gamma2_corner_ne(&ch, 1e-9)?);
    Ok(())
}
