//! Entropies and conditional mutual information on a small joint law.
//!
//!     cargo run --example info_measures

use keyrate::{capacity, JointPmf};

fn main() -> keyrate::Result<()> {
    // Z = X xor Y with X, Y fair and independent
    let mut probs = vec![0.0; 8];
    for x in 0..2 {
        for y in 0..2 {
            probs[x * 4 + y * 2 + (x ^ y)] = 0.25;
        }
    }
    let j = JointPmf::new(vec!["X", "Y", "Z"], vec![2, 2, 2], probs)?;
    println!("H(X,Y,Z)  = {:.6}", j.entropy(&["X", "Y", "Z"])?);
    println!("I(X;Z)    = {:.6}", j.mutual_information(&["X"], &["Z"], &[])?);
    println!("I(X;Z|Y)  = {:.6}", j.mutual_information(&["X"], &["Z"], &["Y"])?);
    println!("I(X;Y,Z)  = {:.6}", j.mutual_information(&["X"], &["Y", "Z"], &[])?);
    for snr in [0.0, 1.0, 100.0] {
        println!("C({snr}) = {:.6}", capacity(snr)?);
    }
    Ok(())
}
