//! Equilibrium classes of the 2x2 game over the (a1, a2) square, drawn as
//! text. `F` marks (FW,BW) alone, `B` (BW,FW) alone, `3` the three-NE diagonal.
//!
//!     cargo run --example ne_map [P [grid]]

use keyrate::game::{ne_map, AnalyticClass};

fn main() -> keyrate::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: f64 = args.next().map_or(1.0, |s| s.parse().expect("P"));
    let n: usize = args.next().map_or(21, |s| s.parse().expect("grid"));
    let map = ne_map(p, n)?;
    println!("a2 ↑, a1 →   (P = {p})");
    for j in (0..n).rev() {
        let row: String = (0..n)
            .map(|i| match map.cell(i, j).report.analytic_class {
                AnalyticClass::FwbwUnique => 'F',
                AnalyticClass::BwfwUnique => 'B',
                AnalyticClass::DiagThreeNe => '3',
                AnalyticClass::Degenerate => '0',
                _ => '?',
            })
            .collect();
        println!("{row}");
    }
    println!("disagreements with enumeration: {}", map.disagreements());
    Ok(())
}
