//! Cross-cutting generator properties: determinism, forward-model
//! consistency, noise calibration, and distributional convergence.

use lws_core::ChannelParams;
use lws_dsp::{detrend_linear, fft_magnitude, spectral_peak};
use lws_sim::{
    apply_noise, simulate_breathing, simulate_occupancy, simulate_straight_pass, BreathingClass,
    BreathingConfig, CurvedPassConfig, NoiseConfig, OccupancyConfig, ScenarioConfig,
    StraightPassConfig,
};

fn channel() -> ChannelParams {
    ChannelParams::new(1e-4, 2.0, 1.0).unwrap()
}

fn noisy(snr_db: f64) -> NoiseConfig {
    NoiseConfig {
        ambient_dc_v: 0.05,
        awgn_snr_db: Some(snr_db),
    }
}

fn all_scenarios(seed: u64) -> Vec<ScenarioConfig> {
    vec![
        ScenarioConfig::StraightPass(StraightPassConfig {
            speed_mps: 18.0,
            initial_range_m: 90.0,
            lateral_offset_m: 4.0,
            channel: channel(),
            duration_s: 4.0,
            sample_rate_hz: 100.0,
            noise: noisy(15.0),
            seed,
        }),
        ScenarioConfig::CurvedPass(CurvedPassConfig {
            angular_speed_rad_s: 0.04,
            initial_beta_rad: 1.2,
            radius_m: 120.0,
            channel: channel(),
            duration_s: 12.0,
            sample_rate_hz: 100.0,
            noise: noisy(20.0),
            seed,
        }),
        ScenarioConfig::Breathing(BreathingConfig {
            class_label: BreathingClass::Kussmaul,
            rate_bpm: 30.0,
            depth: 2.0,
            baseline_distance_m: 1.0,
            channel: channel(),
            duration_s: 45.0,
            sample_rate_hz: 10.0,
            noise: noisy(25.0),
            seed,
        }),
        ScenarioConfig::Occupancy(OccupancyConfig {
            occupant_count: 3,
            crossing_prob_per_slot: 0.4,
            blockage_attenuation: 0.1,
            slot_duration_s: 1.0,
            n_slots: 500,
            baseline_power_w: 1e-4,
            noise: noisy(30.0),
            seed,
        }),
    ]
}

#[test]
fn every_generator_is_bit_deterministic_and_seed_sensitive() {
    for cfg in all_scenarios(0xABCD) {
        let a = cfg.simulate().unwrap();
        let b = cfg.simulate().unwrap();
        assert!(
            a.values()
                .iter()
                .zip(b.values())
                .all(|(x, y)| x.to_bits() == y.to_bits()),
            "{}: same config+seed must be bit-identical",
            cfg.kind()
        );
    }
    for (cfg_a, cfg_b) in all_scenarios(1).into_iter().zip(all_scenarios(2)) {
        let a = cfg_a.simulate().unwrap();
        let b = cfg_b.simulate().unwrap();
        assert!(
            a.values().iter().zip(b.values()).any(|(x, y)| x != y),
            "{}: different seeds should differ somewhere",
            cfg_a.kind()
        );
    }
}

#[test]
fn all_generated_voltages_are_finite_and_nonnegative_without_noise() {
    for mut cfg in all_scenarios(77) {
        match &mut cfg {
            ScenarioConfig::StraightPass(c) => c.noise = NoiseConfig::none(),
            ScenarioConfig::CurvedPass(c) => c.noise = NoiseConfig::none(),
            ScenarioConfig::Breathing(c) => c.noise = NoiseConfig::none(),
            ScenarioConfig::Occupancy(c) => c.noise = NoiseConfig::none(),
        }
        let series = cfg.simulate().unwrap();
        assert!(
            series.values().iter().all(|v| v.is_finite() && *v >= 0.0),
            "{}: clean voltages must stay at or above the dark level",
            cfg.kind()
        );
    }
}

/// Re-deriving the along-road range from noiseless powers and differencing
/// it must reproduce the configured speed at every interior sample.
#[test]
fn straight_pass_power_series_encodes_the_speed_exactly() {
    let cfg = StraightPassConfig {
        speed_mps: 23.5,
        initial_range_m: 140.0,
        lateral_offset_m: 6.0,
        channel: channel(),
        duration_s: 5.0,
        sample_rate_hz: 100.0,
        noise: NoiseConfig::none(),
        seed: 0,
    };
    let series = simulate_straight_pass(&cfg).unwrap();
    let d = cfg.lateral_offset_m;
    let dt = 1.0 / cfg.sample_rate_hz;
    let ranges: Vec<f64> = series
        .values()
        .iter()
        .map(|&v| {
            let dist = cfg.channel.distance_from_power(v).unwrap();
            (dist * dist - d * d).max(0.0).sqrt()
        })
        .collect();
    for (i, w) in ranges.windows(2).enumerate() {
        let speed = (w[0] - w[1]) / dt;
        assert!(
            (speed - cfg.speed_mps).abs() <= 1e-9 * cfg.speed_mps,
            "sample {i}: derived speed {speed} m/s"
        );
    }
}

/// The additive noise really is calibrated to the requested SNR: at 20 dB
/// on a unit-variance signal its sample variance is 0.01 within 10%.
#[test]
fn awgn_variance_matches_requested_snr() {
    let n = 100_000;
    let clean_values: Vec<f64> = (0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
    let clean = lws_core::TimeSeries::new(100.0, 0.0, clean_values).unwrap();
    let noise = NoiseConfig {
        ambient_dc_v: 0.0,
        awgn_snr_db: Some(20.0),
    };
    let out = apply_noise(&clean, &noise, 0x5EED).unwrap();
    let added: Vec<f64> = out
        .values()
        .iter()
        .zip(clean.values())
        .map(|(a, b)| a - b)
        .collect();
    let mean = added.iter().sum::<f64>() / n as f64;
    let var = added.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
    assert!(
        (var - 0.01).abs() < 0.001,
        "added-noise variance {var}, wanted 0.01 +/- 10%"
    );
}

/// The slot-power histogram converges to the analytic binomial mixture.
#[test]
fn occupancy_histogram_converges_to_the_binomial_mixture() {
    let cfg = OccupancyConfig {
        occupant_count: 4,
        crossing_prob_per_slot: 0.3,
        blockage_attenuation: 0.1,
        slot_duration_s: 1.0,
        n_slots: 10_000,
        baseline_power_w: 1e-4,
        noise: NoiseConfig::none(),
        seed: 0xC0DE,
    };
    let series = simulate_occupancy(&cfg).unwrap();

    // Map each slot back to its blocker count k via the attenuation ladder.
    let n = cfg.occupant_count as usize;
    let mut counts = vec![0usize; n + 1];
    for &v in series.values() {
        let k = (v / cfg.baseline_power_w).ln() / cfg.blockage_attenuation.ln();
        counts[k.round() as usize] += 1;
    }

    // Binomial(4, 0.3) pmf, built up iteratively.
    let (p, q) = (cfg.crossing_prob_per_slot, 1.0 - cfg.crossing_prob_per_slot);
    let mut pmf = vec![0.0; n + 1];
    for (k, slot) in pmf.iter_mut().enumerate() {
        let mut binom = 1.0;
        for j in 0..k {
            binom *= (n - j) as f64 / (j + 1) as f64;
        }
        *slot = binom * p.powi(k as i32) * q.powi((n - k) as i32);
    }

    // Kolmogorov-Smirnov distance over the discrete support.
    let total = series.len() as f64;
    let mut ks: f64 = 0.0;
    let mut emp_cdf = 0.0;
    let mut ana_cdf = 0.0;
    for k in 0..=n {
        emp_cdf += counts[k] as f64 / total;
        ana_cdf += pmf[k];
        ks = ks.max((emp_cdf - ana_cdf).abs());
    }
    assert!(ks < 0.02, "KS distance {ks} at 10^4 slots");
}

/// A 15 bpm subject shows its rate as the dominant spectral component at
/// 0.25 Hz, within one bin of the padded transform.
#[test]
fn eupnea_spectrum_peaks_at_the_breathing_rate() {
    let cfg = BreathingConfig {
        class_label: BreathingClass::Eupnea,
        rate_bpm: 15.0,
        depth: 1.0,
        baseline_distance_m: 1.0,
        channel: channel(),
        duration_s: 60.0,
        sample_rate_hz: 10.0,
        noise: NoiseConfig::none(),
        seed: 21,
    };
    let series = simulate_breathing(&cfg).unwrap();
    let detrended = detrend_linear(&series).unwrap();
    let nfft = (8 * detrended.len()).next_power_of_two();
    let spectrum = fft_magnitude(&detrended, Some(nfft)).unwrap();
    let peak = spectral_peak(&spectrum, 0.05, 1.0).unwrap();
    assert!(
        (peak.freq_hz - 0.25).abs() <= spectrum.freq_resolution_hz(),
        "breathing peak at {} Hz, expected 0.25 Hz within one bin",
        peak.freq_hz
    );
}

/// A flatlined fault has no in-band structure: its entire spectrum is
/// rounding noise, orders of magnitude below any breathing signature.
#[test]
fn flatline_fault_has_no_spectral_content() {
    let mut cfg = BreathingConfig {
        class_label: BreathingClass::Faulty,
        rate_bpm: 0.0,
        depth: 0.0,
        baseline_distance_m: 1.0,
        channel: channel(),
        duration_s: 60.0,
        sample_rate_hz: 10.0,
        noise: NoiseConfig::none(),
        seed: 0,
    };
    // Find a seed whose fault variant is the flatline (deterministic scan).
    let baseline_v = channel().power_at(1.0).unwrap();
    let mut found = false;
    for seed in 0..10 {
        cfg.seed = seed;
        let series = simulate_breathing(&cfg).unwrap();
        let v = series.values();
        if !(v.iter().all(|&x| x == v[0]) && (v[0] - baseline_v).abs() < 1e-18) {
            continue;
        }
        found = true;
        let spectrum = fft_magnitude(&series, None).unwrap();
        let worst = spectrum.magnitudes().iter().cloned().fold(0.0, f64::max);
        let scale = series.len() as f64 * baseline_v;
        assert!(
            worst < 1e-9 * scale,
            "flatline spectrum should be rounding noise, got {worst}"
        );
        break;
    }
    assert!(found, "no flatline variant among the first 10 seeds");
}

/// Breathing depth scales the voltage swing: hyperpnea at depth 2 swings
/// about twice as far as eupnea at depth 1 from the same baseline.
#[test]
fn depth_scales_the_voltage_swing() {
    let base = BreathingConfig {
        class_label: BreathingClass::Eupnea,
        rate_bpm: 15.0,
        depth: 1.0,
        baseline_distance_m: 1.0,
        channel: channel(),
        duration_s: 60.0,
        sample_rate_hz: 10.0,
        noise: NoiseConfig::none(),
        seed: 3,
    };
    let mut deep = base.clone();
    deep.class_label = BreathingClass::Hyperpnea;
    deep.depth = 2.0;
    let swing = |cfg: &BreathingConfig| {
        let s = simulate_breathing(cfg).unwrap();
        let max = s.values().iter().cloned().fold(f64::MIN, f64::max);
        let min = s.values().iter().cloned().fold(f64::MAX, f64::min);
        max - min
    };
    let ratio = swing(&deep) / swing(&base);
    assert!(
        (ratio - 2.0).abs() < 0.05,
        "depth-2 swing should be about twice depth-1, got ratio {ratio}"
    );
}
