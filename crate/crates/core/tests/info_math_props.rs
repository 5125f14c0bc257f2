mod common;

use common::{simplex, Dist};
use keyrate::{capacity, JointPmf};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random joint over three labelled variables plus the matching oracle.
fn joint3(seed: u64, sizes: [usize; 3]) -> (JointPmf, Dist) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let len: usize = sizes.iter().product();
    let probs = simplex(&mut r, len);
    let mut d = Dist::default();
    for (flat, &p) in probs.iter().enumerate() {
        let key = vec![
            flat / (sizes[1] * sizes[2]),
            flat / sizes[2] % sizes[1],
            flat % sizes[2],
        ];
        d.add(key, p);
    }
    (JointPmf::new(vec!["A", "B", "C"], sizes.to_vec(), probs).unwrap(), d)
}

fn sizes() -> impl Strategy<Value = [usize; 3]> {
    [1usize..=4, 1usize..=4, 1usize..=3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn chain_rule(seed in any::<u64>(), sz in sizes()) {
        let (j, _) = joint3(seed, sz);
        let lhs = j.mutual_information(&["A"], &["B", "C"], &[]).unwrap();
        let rhs = j.mutual_information(&["A"], &["B"], &[]).unwrap()
            + j.mutual_information(&["A"], &["C"], &["B"]).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn symmetric_and_nonnegative(seed in any::<u64>(), sz in sizes()) {
        let (j, _) = joint3(seed, sz);
        let ab = j.mutual_information(&["A"], &["B"], &["C"]).unwrap();
        let ba = j.mutual_information(&["B"], &["A"], &["C"]).unwrap();
        prop_assert!(ab >= 0.0);
        prop_assert!((ab - ba).abs() < 1e-10);
    }

    #[test]
    fn matches_oracle(seed in any::<u64>(), sz in sizes()) {
        let (j, d) = joint3(seed, sz);
        prop_assert!((j.entropy(&["A", "C"]).unwrap() - d.h(&[0, 2])).abs() < 1e-10);
        let got = j.mutual_information(&["A", "C"], &["B"], &[]).unwrap();
        prop_assert!((got - d.mi(&[0, 2], &[1], &[])).abs() < 1e-10);
    }

    #[test]
    fn entropy_bounded_by_alphabet(seed in any::<u64>(), sz in sizes()) {
        let (j, _) = joint3(seed, sz);
        let h = j.entropy(&["A", "B"]).unwrap();
        prop_assert!(h >= 0.0);
        prop_assert!(h <= ((sz[0] * sz[1]) as f64).log2() + 1e-12);
    }

    #[test]
    fn marginal_keeps_mass(seed in any::<u64>(), sz in sizes()) {
        let (j, _) = joint3(seed, sz);
        let m = j.marginalize(&["C", "A"]).unwrap();
        prop_assert_eq!(m.names(), &["A".to_string(), "C".to_string()][..]);
        prop_assert!((m.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn capacity_monotone(x in 0.0f64..1e6, dx in 0.0f64..1e3) {
        prop_assert!(capacity(x + dx).unwrap() >= capacity(x).unwrap());
    }
}

#[test]
fn product_distribution_has_no_information() {
    let pa = [0.2, 0.8];
    let pb = [0.1, 0.6, 0.3];
    let probs: Vec<f64> = pa.iter().flat_map(|a| pb.iter().map(move |b| a * b)).collect();
    let j = JointPmf::new(vec!["A", "B"], vec![2, 3], probs).unwrap();
    assert!(j.mutual_information(&["A"], &["B"], &[]).unwrap().abs() < 1e-12);
}
