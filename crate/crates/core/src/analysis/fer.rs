use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::polar::{PolarCodeSpec, ReliabilityProfile};
use crate::scheme::{Scheme, Variant};
use crate::sim::format_sig;

/// `∏_{i∈I} (1 - Q_i)`, the GA probability that SC decodes every info bit.
pub fn success_probability(profile: &ReliabilityProfile, info_set: &[usize]) -> f64 {
    info_set
        .iter()
        .map(|&i| (-profile.q_values()[i]).ln_1p())
        .sum::<f64>()
        .exp()
}

/// SC frame error rate `1 - ∏_{i∈I}(1 - Q_i)`.
pub fn predict_fer_sc(profile: &ReliabilityProfile, info_set: &[usize]) -> f64 {
    let log_success: f64 = info_set
        .iter()
        .map(|&i| (-profile.q_values()[i]).ln_1p())
        .sum();
    (-log_success.exp_m1()).clamp(0.0, 1.0)
}

/// Frame error rate of the concatenation: the frame fails if the prefix
/// fails, or the prefix succeeds and the main code fails:
/// `(1 - P₂) + P₂·(1 - P₁)`.
pub fn predict_fer_scheme(
    main_profile: &ReliabilityProfile,
    main_info: &[usize],
    prefix_profile: &ReliabilityProfile,
    prefix_info: &[usize],
) -> f64 {
    let main_success = success_probability(main_profile, main_info);
    let prefix_success = success_probability(prefix_profile, prefix_info);
    ((1.0 - prefix_success) + prefix_success * (1.0 - main_success)).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FerPrediction {
    pub ebno_db: f64,
    pub fer: f64,
    /// `∏_{I₁}(1 - Q_i)`.
    pub main_success: f64,
    /// `∏_{I₂}(1 - Q_i)`; 1 without a prefix code.
    pub prefix_success: f64,
}

fn profile_at(code: &PolarCodeSpec, ebno_db: f64, rate: f64) -> ReliabilityProfile {
    ReliabilityProfile::evaluate(code.mother_length(), code.code_length(), ebno_db, rate)
}

/// GA prediction for each Eb/N0 of `ebnos`, with the scheme's fixed
/// information sets and the noise level of its overall rate.
///
/// The prefix code sees the soft-Manchester combination, whose mean is twice
/// the channel mean; 1b2b likewise. 4b6b outputs are not Gaussian and are
/// rejected.
pub fn predict_scheme_curve(scheme: &Scheme, ebnos: &[f64]) -> Result<Vec<FerPrediction>> {
    let rate = scheme.overall_rate();
    let main_rate = match scheme.variant() {
        Variant::Proposed | Variant::Plain => rate,
        Variant::Manchester => 2.0 * rate,
        Variant::FourBSixB => {
            return Err(Error::param("no GA prediction for the 4b6b baseline"));
        }
    };
    Ok(ebnos
        .iter()
        .map(|&ebno_db| {
            let main = profile_at(scheme.main_code(), ebno_db, main_rate);
            let main_success = success_probability(&main, scheme.main_code().info_set());
            let prefix_success = scheme.prefix_code().map_or(1.0, |p| {
                success_probability(&profile_at(p, ebno_db, 2.0 * rate), p.info_set())
            });
            let fer = match scheme.prefix_code() {
                Some(p) => predict_fer_scheme(
                    &main,
                    scheme.main_code().info_set(),
                    &profile_at(p, ebno_db, 2.0 * rate),
                    p.info_set(),
                ),
                None => predict_fer_sc(&main, scheme.main_code().info_set()),
            };
            FerPrediction {
                ebno_db,
                fer,
                main_success,
                prefix_success,
            }
        })
        .collect())
}

/// CSV with columns `ebno_db,fer_predicted`.
pub fn predictions_to_csv(points: &[FerPrediction]) -> String {
    let mut out = String::from("ebno_db,fer_predicted\n");
    for p in points {
        let _ = writeln!(out, "{},{}", format_sig(p.ebno_db), format_sig(p.fer));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn profile_from_q(q: Vec<f64>) -> ReliabilityProfile {
        // Invert Q = ½·erfc(√c/2) numerically to get consistent means.
        let means = q
            .iter()
            .map(|&target| {
                let (mut lo, mut hi) = (0.0f64, 4000.0f64);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if 0.5 * libm::erfc(mid.sqrt() / 2.0) > target {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect();
        ReliabilityProfile::from_means(means)
    }

    #[test]
    fn trivial_cases() {
        let perfect = ReliabilityProfile::from_means(vec![f64::INFINITY; 4]);
        assert_eq!(predict_fer_sc(&perfect, &[0, 1, 2, 3]), 0.0);
        let coin = ReliabilityProfile::from_means(vec![0.0]);
        assert_eq!(predict_fer_sc(&coin, &[0]), 0.5);
    }

    #[test]
    fn scheme_formula_reductions_and_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let perfect = ReliabilityProfile::from_means(vec![f64::INFINITY; 8]);
        for _ in 0..200 {
            let q1: Vec<f64> = (0..16).map(|_| rng.gen_range(0.0..0.2)).collect();
            let q2: Vec<f64> = (0..8).map(|_| rng.gen_range(0.0..0.2)).collect();
            let main = profile_from_q(q1);
            let prefix = profile_from_q(q2);
            let i1: Vec<usize> = (0..16).filter(|_| rng.gen_bool(0.5)).collect();
            let i2: Vec<usize> = (0..8).filter(|_| rng.gen_bool(0.5)).collect();

            let fer1 = predict_fer_sc(&main, &i1);
            let fer2 = predict_fer_sc(&prefix, &i2);
            let combined = predict_fer_scheme(&main, &i1, &prefix, &i2);
            assert_relative_eq!(combined, 1.0 - (1.0 - fer1) * (1.0 - fer2), epsilon = 1e-12);
            assert!(combined >= fer1 - 1e-15 && combined >= fer2 - 1e-15);
            assert!((0.0..=1.0).contains(&combined));

            assert_relative_eq!(
                predict_fer_scheme(&main, &i1, &perfect, &[0, 1]),
                fer1,
                epsilon = 1e-15
            );
            let perfect16 = ReliabilityProfile::from_means(vec![f64::INFINITY; 16]);
            assert_relative_eq!(
                predict_fer_scheme(&perfect16, &i1, &prefix, &i2),
                fer2,
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn curve_is_monotone_and_in_range() {
        let scheme = Scheme::design(Variant::Proposed, 64, 32, Some(16), 2.5).unwrap();
        let ebnos: Vec<f64> = (0..=12).map(|i| i as f64 * 0.5).collect();
        let curve = predict_scheme_curve(&scheme, &ebnos).unwrap();
        assert!(curve.windows(2).all(|w| w[1].fer <= w[0].fer));
        assert!(curve.iter().all(|p| (0.0..=1.0).contains(&p.fer)));
        let csv = predictions_to_csv(&curve);
        assert!(csv.starts_with("ebno_db,fer_predicted\n0,"));
        assert_eq!(csv.lines().count(), 14);

        let four = Scheme::design(Variant::FourBSixB, 64, 32, None, 2.5).unwrap();
        assert!(predict_scheme_curve(&four, &ebnos).is_err());
    }
}
