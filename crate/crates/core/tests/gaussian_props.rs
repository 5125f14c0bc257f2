mod common;

use common::{close, gaussian_pure_oracle};
use keyrate::gaussian::{
    artificial_noise_rates, pure_rates, pure_rates_with_power, time_sharing_rates, AnParams, ChannelParams, TsParams,
};
use keyrate::PROFILES;
use proptest::prelude::*;

fn channel() -> impl Strategy<Value = ChannelParams> {
    (0.0f64..=1.0, 0.0f64..=1.0, -2.0f64..4.0, -2.0f64..4.0)
        .prop_map(|(a1, a2, l1, l2)| ChannelParams::new(a1, a2, 10f64.powf(l1), 10f64.powf(l2)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn pure_matches_oracle(ch in channel()) {
        for s in PROFILES {
            let got = pure_rates(&ch, s.0, s.1).unwrap();
            let want = gaussian_pure_oracle(ch.alpha1, ch.alpha2, ch.p1, ch.p2, s);
            prop_assert!(close(got, want, 1e-10), "{:?} {:?}: {} vs {}", ch, s, got, want);
        }
    }

    #[test]
    fn power_control_is_scaled_power(ch in channel(), b1 in 0.01f64..=1.0, b2 in 0.01f64..=1.0) {
        let scaled = ChannelParams::new(ch.alpha1, ch.alpha2, b1 * ch.p1, b2 * ch.p2).unwrap();
        for (s1, s2) in PROFILES {
            let a = pure_rates_with_power(&ch, b1, b2, s1, s2).unwrap();
            let b = pure_rates(&scaled, s1, s2).unwrap();
            prop_assert!(close(a, b, 1e-12));
        }
    }

    #[test]
    fn swapping_pairs_swaps_rates(ch in channel()) {
        for (s1, s2) in PROFILES {
            let a = pure_rates(&ch, s1, s2).unwrap();
            let b = pure_rates(&ch.swapped(), s2, s1).unwrap();
            prop_assert!((a.r1 - b.r2).abs() < 1e-12 && (a.r2 - b.r1).abs() < 1e-12);
        }
    }

    #[test]
    fn time_sharing_is_affine_in_rho(ch in channel(), rho in 0.0f64..=1.0, b1 in 0.0f64..=1.0, b2 in 0.0f64..=1.0) {
        let at = |r: f64| time_sharing_rates(&ch, &TsParams::new(r, b1, b2).unwrap()).unwrap();
        let (lo, hi, mid) = (at(0.0), at(1.0), at(rho));
        prop_assert!((mid.r1 - (rho * hi.r1 + (1.0 - rho) * lo.r1)).abs() < 1e-10);
        prop_assert!((mid.r2 - (rho * hi.r2 + (1.0 - rho) * lo.r2)).abs() < 1e-10);
    }

    #[test]
    fn artificial_noise_is_finite_and_nonnegative(
        ch in channel(), b1 in 0.0f64..=1.0, b2 in 0.0f64..=1.0, l1 in 0.0f64..=1.0, l2 in 0.0f64..=1.0,
    ) {
        let r = artificial_noise_rates(&ch, &AnParams::new(b1, b2, l1, l2).unwrap()).unwrap();
        prop_assert!(r.r1.is_finite() && r.r2.is_finite());
        prop_assert!(r.r1 >= 0.0 && r.r2 >= 0.0);
    }

    #[test]
    fn silent_partner_gives_wiretap_free_rate(ch in channel()) {
        // with BS2 silent and no noise, pair 1 sees a clean point-to-point link
        let r = artificial_noise_rates(&ch, &AnParams::new(1.0, 0.0, 0.0, 0.0).unwrap()).unwrap();
        let wiretap = 0.5 * (1.0 + ch.p1).log2() - 0.5 * (1.0 + ch.alpha2 * ch.alpha2 * ch.p1).log2();
        prop_assert!((r.r1 - wiretap.max(0.0)).abs() < 1e-10);
    }
}
