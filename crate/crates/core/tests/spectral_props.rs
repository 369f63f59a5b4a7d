mod common;

use num_traits::ToPrimitive;
use proptest::prelude::*;
use systole_core::exact::char_poly;
use systole_core::spectral::{classify, translation_length, ElementClass, DEFAULT_BITS};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn length_of_inverse(m in common::semisimple_matrix(2..=5, 20)) {
        let a = translation_length(&m, DEFAULT_BITS).unwrap();
        let b = translation_length(&m.adjugate(), DEFAULT_BITS).unwrap();
        prop_assert!((a.length - b.length).abs() <= 2.0 * a.length_error.max(b.length_error));
    }

    #[test]
    fn length_of_powers(m in common::semisimple_matrix(2..=4, 10)) {
        let base = translation_length(&m, DEFAULT_BITS).unwrap();
        for q in [2u32, 3] {
            let p = translation_length(&m.pow(q), DEFAULT_BITS).unwrap();
            let tol = 10.0 * (p.length_error + q as f64 * base.length_error);
            prop_assert!((p.length - q as f64 * base.length).abs() <= tol, "q = {}: {} vs {}", q, p.length, base.length);
        }
    }

    #[test]
    fn spectral_consistency(m in common::semisimple_matrix(2..=6, 20)) {
        let sd = translation_length(&m, DEFAULT_BITS).unwrap();
        let n = sd.n as f64;
        let log_sum: f64 = sd.log_magnitudes.iter().sum();
        let tol = n * (sd.error_radius + 4.0 * f64::EPSILON) * sd.magnitudes.iter().fold(1.0f64, |a, &b| a.max(b));
        prop_assert!(log_sum.abs() <= tol.max(1e-12), "sum of logs {}", log_sum);
        prop_assert!(sd.hyp_trace >= n - sd.hyp_trace_error());
        let magnitude_sum: f64 = sd.magnitudes.iter().sum();
        prop_assert!((magnitude_sum - sd.hyp_trace).abs() <= sd.hyp_trace_error());
        let from_logs = (2.0 * sd.log_magnitudes.iter().map(|l| l * l).sum::<f64>()).sqrt();
        prop_assert!((from_logs - sd.length).abs() <= 1e-12 * (1.0 + sd.length));
        prop_assert!(sd.magnitudes.windows(2).all(|w| w[0] >= w[1]));
        let class = classify(&m);
        prop_assert_eq!(class == ElementClass::PositiveLength, sd.length > 0.0);
    }

    #[test]
    fn closed_form_n2(m in common::semisimple_matrix(2..=2, 1000)) {
        let tr = char_poly(&m).trace().to_f64().unwrap().abs();
        prop_assume!(tr > 2.0);
        let sd = translation_length(&m, DEFAULT_BITS).unwrap();
        let expected = 2.0 * ((tr + (tr * tr - 4.0).sqrt()) / 2.0).ln();
        prop_assert!((sd.length - expected).abs() < 1e-9);
    }
}
