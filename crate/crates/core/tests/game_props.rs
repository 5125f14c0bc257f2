use keyrate::game::{analytic_ne_conditions, ne_map, ne_report, pure_ne};
use keyrate::{build_gamma1, ChannelParams};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn swapping_pairs_flips_equilibria(a1 in 0.0f64..=1.0, a2 in 0.0f64..=1.0, p in 0.01f64..100.0, q in 0.01f64..100.0) {
        let ch = ChannelParams::new(a1, a2, p, q).unwrap();
        let ne = pure_ne(&build_gamma1(&ch, 1.0, 1.0).unwrap(), 1e-9);
        let mut mirrored: Vec<_> = pure_ne(&build_gamma1(&ch.swapped(), 1.0, 1.0).unwrap(), 1e-9)
            .into_iter()
            .map(|(s1, s2)| (s2, s1))
            .collect();
        mirrored.sort_by_key(|&(s1, s2)| (s1.index(), s2.index()));
        prop_assert_eq!(ne, mirrored);
    }

    #[test]
    fn equilibria_exist_and_match_conditions(a1 in 0.0f64..=1.0, a2 in 0.0f64..=1.0, p in 0.6f64..100.0) {
        let ch = ChannelParams::new(a1, a2, p, p).unwrap();
        let rep = ne_report(&ch, 1.0, 1.0, 1e-9).unwrap();
        prop_assert!(!rep.equilibria.is_empty());
        prop_assert_eq!(&rep.equilibria, &analytic_ne_conditions(&ch, 1.0, 1.0).unwrap().equilibria());
        prop_assert!(rep.agree);
    }
}

#[test]
fn map_is_mirror_symmetric() {
    let n = 31;
    let map = ne_map(2.0, n).unwrap();
    for i in 0..n {
        for j in 0..n {
            let a = &map.cell(i, j).report.equilibria;
            let mut b: Vec<_> = map
                .cell(j, i)
                .report
                .equilibria
                .iter()
                .map(|&(s1, s2)| (s2, s1))
                .collect();
            b.sort_by_key(|&(s1, s2)| (s1.index(), s2.index()));
            assert_eq!(a, &b, "cell ({i}, {j})");
        }
    }
}
