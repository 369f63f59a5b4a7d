mod common;

use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;
use systole_core::bigfloat::BigFloat;
use systole_core::bounds::{
    bracket_from_power_traces, f_value_exact, hyp_bracket_for, scale_metric, shift_constants, KcType, MetricState,
    ShiftContext,
};
use systole_core::exact::{char_poly, newton_power_traces, IntegerMatrix};
use systole_core::spectral::{translation_length, SpectralData, DEFAULT_BITS};

/// Relative slack for comparisons between f64 quantities derived from the
/// certified magnitudes.
const SLACK: f64 = 1e-9;

fn spectrum(m: &IntegerMatrix) -> SpectralData {
    translation_length(m, DEFAULT_BITS).unwrap()
}

fn power_sum(sd: &SpectralData, beta: f64) -> f64 {
    sd.magnitudes.iter().map(|a| a.powf(beta)).sum()
}

fn le(a: f64, b: f64) -> bool {
    a <= b + SLACK * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn brackets_contain_length(m in common::semisimple_matrix(2..=6, 20)) {
        let sd = spectrum(&m);
        let hyp = hyp_bracket_for(&sd).unwrap();
        prop_assert!(hyp.lower <= hyp.upper);
        prop_assert!(hyp.contains(sd.length, sd.length_error), "{:?} vs {}", hyp, sd.length);
        let cp = char_poly(&m);
        if cp.trace().abs() >= 1.into() {
            let pt = bracket_from_power_traces(&newton_power_traces(&cp)).unwrap();
            prop_assert!(pt.contains(sd.length, sd.length_error), "{:?} vs {}", pt, sd.length);
            // |tr x| <= tr x_h, so the power-trace lower end never beats the other one
            prop_assert!(pt.lower <= hyp.lower + 1e-12);
        }
    }

    #[test]
    fn trace_dominated_by_hyperbolic_trace(m in common::semisimple_matrix(2..=6, 20)) {
        let sd = spectrum(&m);
        let tr = char_poly(&m).trace().abs().to_f64().unwrap();
        prop_assert!(tr <= sd.hyp_trace + sd.hyp_trace_error());
    }

    #[test]
    fn power_sums_at_least_n(m in common::semisimple_matrix(2..=6, 20)) {
        let sd = spectrum(&m);
        let n = sd.n as f64;
        for beta in [-2.0, -1.0, 1.0, 2.0] {
            prop_assert!(le(n, power_sum(&sd, beta)), "beta = {}", beta);
        }
    }

    #[test]
    fn arccosh_chain(m in common::semisimple_matrix(2..=6, 20)) {
        let sd = spectrum(&m);
        let n = sd.n as f64;
        let tr = char_poly(&m).trace().abs().to_f64().unwrap();
        let first = (tr / n).max(1.0).acosh();
        let second = (sd.hyp_trace / n).max(1.0).acosh();
        let third = sd.log_magnitudes.iter().map(|l| l * l).sum::<f64>().sqrt();
        prop_assert!(le(first, second) && le(second, third), "{} {} {}", first, second, third);
    }

    #[test]
    fn log_norm_bounded_by_power_sums(m in common::semisimple_matrix(2..=6, 20)) {
        let sd = spectrum(&m);
        let n = sd.n as f64;
        let lhs = sd.log_magnitudes.iter().map(|l| l * l).sum::<f64>().sqrt();
        for beta in [0.5, 1.0, 2.0] {
            let y = (power_sum(&sd, beta) / n).powf(n - 1.0);
            let rhs = n.sqrt() / beta * y.max(1.0).acosh();
            prop_assert!(le(lhs, rhs), "beta = {}: {} > {}", beta, lhs, rhs);
        }
    }

    #[test]
    fn maclaurin_step(m in common::semisimple_matrix(2..=6, 20)) {
        let sd = spectrum(&m);
        let n = sd.n as f64;
        for beta in [0.5, 1.0, 2.0] {
            let pos = power_sum(&sd, beta) / n;
            let neg = (power_sum(&sd, -beta) / n).powf(1.0 / (n - 1.0));
            prop_assert!(le(neg, pos) && le(1.0, neg), "beta = {}: {} {}", beta, pos, neg);
        }
    }

    #[test]
    fn hyperbolic_trace_bounded_by_power_traces(m in common::semisimple_matrix(2..=6, 20)) {
        let cp = char_poly(&m);
        prop_assume!(cp.trace().abs() >= 1.into());
        let sd = spectrum(&m);
        let f = 2.0 * sd.n as f64 * newton_power_traces(&cp).abs_sum().to_f64().unwrap();
        prop_assert!(sd.hyp_trace <= f);
    }

    #[test]
    fn scale_round_trip(c1 in 0.01f64..10.0, c2 in -10.0f64..10.0, alpha in 0.01f64..100.0, dim in 1u32..20) {
        let (a, b) = shift_constants(c1, c2, ShiftContext::Scale { alpha, dim });
        let (c, d) = shift_constants(a, b, ShiftContext::Scale { alpha: 1.0 / alpha, dim });
        prop_assert!((c - c1).abs() < 1e-12 && (d - c2).abs() < 1e-12);
    }

    #[test]
    fn scaled_constants_track_scaled_metric(
        c1 in 0.01f64..10.0, c2 in -10.0f64..10.0, alpha in 0.01f64..100.0, dim in 1u32..20, vol in 1.0f64..1e6,
    ) {
        let s = scale_metric(MetricState { sys: 1.0, vol, dim }, alpha);
        let (a, b) = shift_constants(c1, c2, ShiftContext::Scale { alpha, dim });
        let lhs = a * s.vol.ln() - b;
        let rhs = alpha.sqrt() * (c1 * vol.ln() - c2);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
    }
}

#[test]
fn f_increases_once_new_factor_exceeds_one() {
    // m! / (2 pi)^(m + 1) first exceeds 1 at m = 17
    for r in 1..100u32 {
        let ratio = f_value_exact(KcType::A(r + 1)).div(&f_value_exact(KcType::A(r)));
        let grows = ratio.cmp_pow10(0) == std::cmp::Ordering::Greater;
        assert_eq!(grows, r + 1 >= 17, "rank {r}");
    }
    for family in ["B", "C", "D"] {
        let lo = if family == "D" { 3 } else { 1 };
        let min = (lo..=100)
            .map(|r| f_value_exact(KcType::new(family, Some(r)).unwrap()))
            .min_by(|a, b| a.to_f64().total_cmp(&b.to_f64()))
            .unwrap();
        let bound = KcType::new(family, Some(lo)).unwrap().table_lower_bound();
        assert!(min.cmp_pow10(bound.log10().round() as i32) != std::cmp::Ordering::Less, "{family}");
    }
    assert!(BigFloat::from_u64(1).cmp_pow10(0) == std::cmp::Ordering::Equal);
}
