//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::f64::consts::SQRT_2;
use std::process::Command;

use quanta_core::analysis::{
    chsh, degree_of_correlation, lhv_bound_bruteforce, no_signaling_audit, phase_grid,
    run_length_statistics, AuditMode, ChshMode, ChshSettings,
};
use quanta_core::experiments::sampling::StreamKey;
use quanta_core::experiments::{
    bin_impacts, build_measurement_state, default_screen_grid, double_slit_intensity,
    fringe_visibility, lone_photon, measurement_report, rto_joint, run_encounter_delayed_choice,
    run_mach_zehnder, run_single_photon_collapse, sample_impacts, sample_mach_zehnder, sample_rto,
    subsystem_interference_probe, MzConfig, RtoConfig, SlitGeometry, Slits, WavePacketEnvelope, D1,
    D2, DETECTOR, DETECTORS, PHOTON,
};
use quanta_core::optics::PhaseSetting;
use quanta_core::oracles::{
    huygens_integral_oracle, lhv_enumeration_oracle, mach_zehnder_oracle, rto_oracle,
};
use quanta_core::qcore::DensityOperator;
use quanta_lab::stats::{cell_probabilities, chi_square_gof};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn deg(d: f64) -> PhaseSetting {
    PhaseSetting::from_degrees(d).expect("finite angle")
}

fn mz_p(phi1: f64, phi2: f64, bs2: bool) -> [f64; 2] {
    let t = run_mach_zehnder(&MzConfig::new(deg(phi1), deg(phi2), bs2))
        .unwrap()
        .analytic;
    [t.get(DETECTORS, D1).unwrap(), t.get(DETECTORS, D2).unwrap()]
}

fn rto(a: f64, b: f64) -> RtoConfig {
    RtoConfig::new(deg(a), deg(b))
}

/// `n` phases evenly spaced on [0°, 360°).
fn phases(n: usize) -> Vec<f64> {
    (0..n).map(|k| 360.0 * k as f64 / n as f64).collect()
}

const MC_TRIALS: u64 = 100_000;

fn superposition_table() -> Outcome {
    for (d, want) in [(0.0, 1.0), (90.0, 0.5), (180.0, 0.0)] {
        let p = mz_p(d, 0.0, true)[0];
        ensure((p - want).abs() < 1e-12, || {
            format!("simple P(D1) at {d}° = {p}")
        })?;
    }
    for d in [0.0, 45.0, 90.0, 135.0, 180.0] {
        let j = rto_joint(&rto(0.0, d)).unwrap();
        for m in j.marginal_a().iter().chain(&j.marginal_b()) {
            ensure((m - 0.5).abs() < 1e-12, || {
                format!("entangled marginal at {d}° = {m}")
            })?;
        }
    }
    for (d, want) in [(0.0, 1.0), (90.0, 0.0), (180.0, -1.0)] {
        let c = rto_joint(&rto(0.0, d)).unwrap().correlation();
        ensure((c - want).abs() < 1e-12, || {
            format!("correlation at {d}° = {c}")
        })?;
    }
    let mut notes = Vec::new();
    for (d, table_value) in [(45.0f64, 0.8536), (135.0, 0.1464)] {
        let law = (d.to_radians() / 2.0).cos().powi(2);
        let simple = mz_p(d, 0.0, true)[0];
        let same = rto_joint(&rto(0.0, d)).unwrap().p_same();
        ensure(
            (simple - law).abs() < 1e-12 && (same - law).abs() < 1e-12,
            || format!("{d}°: simple {simple}, same {same}, cos² law {law}"),
        )?;
        ensure((law - table_value).abs() < 5e-5, || {
            format!("{d}°: cos² law {law} vs {table_value}")
        })?;
        notes.push(format!("{d}° → {simple:.4}"));
    }
    Ok(format!(
        "45°/135° rows follow the cos² law ({}), not 71%/29%",
        notes.join(", ")
    ))
}

fn interference_curve() -> Outcome {
    let sigma = (0.25 / MC_TRIALS as f64).sqrt();
    let mut worst_oracle: f64 = 0.0;
    let mut worst_z: f64 = 0.0;
    for (k, d) in phases(64).into_iter().enumerate() {
        let main = mz_p(d, 0.0, true);
        let oracle = mach_zehnder_oracle(d.to_radians(), 0.0, true);
        let diff = (main[0] - oracle[0]).abs().max((main[1] - oracle[1]).abs());
        worst_oracle = worst_oracle.max(diff);
        ensure(diff < 1e-10, || format!("oracle mismatch {diff} at {d}°"))?;
        let run = sample_mach_zehnder(
            &MzConfig::new(deg(d), deg(0.0), true),
            MC_TRIALS,
            1000 + k as u64,
        )
        .unwrap();
        let f = run.frequency(None, D1).unwrap_or(0.0);
        worst_z = worst_z.max((f - main[0]).abs() / sigma);
        ensure((f - main[0]).abs() < 4.0 * sigma, || {
            format!("MC P(D1) {f} vs {} at {d}°", main[0])
        })?;
    }
    Ok(format!(
        "oracle max |Δ| = {worst_oracle:.1e}; MC worst deviation {worst_z:.2}σ (σ = {sigma:.4})"
    ))
}

fn correlation_curve() -> Outcome {
    let mut worst_oracle: f64 = 0.0;
    for d in phases(64) {
        let c = rto_joint(&rto(0.0, d)).unwrap().correlation();
        let o = rto_oracle(0.0, d.to_radians());
        let oc = o[0][0] + o[1][1] - o[0][1] - o[1][0];
        let diff = (c - oc).abs().max((c - d.to_radians().cos()).abs());
        worst_oracle = worst_oracle.max(diff);
        ensure(diff < 1e-10, || format!("C({d}°) = {c}, oracle {oc}"))?;
    }
    let mut worst_z: f64 = 0.0;
    for (k, d) in phases(16).into_iter().enumerate() {
        let config = rto(0.0, d);
        let c = rto_joint(&config).unwrap().correlation();
        let s = degree_of_correlation(
            sample_rto(&config, MC_TRIALS, 2000 + k as u64)
                .unwrap()
                .trials(),
        )
        .unwrap();
        let sigma = ((1.0 - c * c).max(0.0) / MC_TRIALS as f64).sqrt();
        let dev = (s.degree_of_correlation - c).abs();
        if sigma > 0.0 {
            worst_z = worst_z.max(dev / sigma);
        }
        ensure(dev <= 4.0 * sigma + 1e-12, || {
            format!("sampled C {} vs {c} at {d}°", s.degree_of_correlation)
        })?;
    }
    Ok(format!(
        "oracle max |Δ| = {worst_oracle:.1e}; sampled worst deviation {worst_z:.2}σ"
    ))
}

fn no_signaling() -> Outcome {
    let grid = phase_grid(32);
    let analytic = no_signaling_audit(&grid, &grid, AuditMode::Analytic).unwrap();
    ensure(
        analytic.points == 1024 && analytic.max_deviation < 1e-12,
        || {
            format!(
                "analytic deviation {} over {} points",
                analytic.max_deviation, analytic.points
            )
        },
    )?;
    let coarse = phase_grid(4);
    let sampled = no_signaling_audit(
        &coarse,
        &coarse,
        AuditMode::Sampled {
            trials_per_point: MC_TRIALS,
            seed: 3000,
        },
    )
    .unwrap();
    let sigma = (0.25 / MC_TRIALS as f64).sqrt();
    ensure(
        sampled.points == 16 && sampled.max_deviation < 4.0 * sigma,
        || {
            format!(
                "sampled deviation {} ≥ 4σ = {}",
                sampled.max_deviation,
                4.0 * sigma
            )
        },
    )?;
    Ok(format!(
        "analytic {:.1e} over 32×32; sampled {:.2}σ over 16 points",
        analytic.max_deviation,
        sampled.max_deviation / sigma
    ))
}

fn chsh_criterion() -> Outcome {
    let tsirelson = 2.0 * SQRT_2;
    let analytic = chsh(&ChshSettings::optimal(), ChshMode::Analytic).unwrap();
    ensure((analytic.s - tsirelson).abs() < 1e-9, || {
        format!("analytic S = {}", analytic.s)
    })?;
    let brute = lhv_bound_bruteforce();
    let (oracle, count) = lhv_enumeration_oracle();
    ensure(brute == 2.0 && oracle == 2.0 && count == 16, || {
        format!("LHV bound {brute}, oracle {oracle} over {count}")
    })?;
    let sampled = chsh(
        &ChshSettings::optimal(),
        ChshMode::Sampled {
            trials_per_pair: MC_TRIALS,
            seed: 4000,
        },
    )
    .unwrap();
    ensure((sampled.s - tsirelson).abs() <= 0.05, || {
        format!("sampled S = {}", sampled.s)
    })?;
    let key = StreamKey::new(4001, 0);
    let mut max_s: f64 = 0.0;
    for i in 0..1000 {
        let mut rng = key.trial(i);
        let mut angle = || rng.uniform() * 360.0;
        let s = ChshSettings::from_degrees(angle(), angle(), angle(), angle()).unwrap();
        let r = chsh(&s, ChshMode::Analytic).unwrap();
        max_s = max_s.max(r.s.abs());
    }
    ensure(max_s <= tsirelson + 1e-9, || {
        format!("random quadruple reached |S| = {max_s}")
    })?;
    Ok(format!(
        "S = {:.12}; sampled S = {:.4}; LHV bound {brute}; max |S| over 1000 random quadruples {max_s:.6}",
        analytic.s, sampled.s
    ))
}

fn measurement_state() -> Outcome {
    let r = measurement_report(16).unwrap();
    for rho in [&r.reduced_photon, &r.reduced_detector] {
        let half = DensityOperator::maximally_mixed(rho.subsystems().to_vec()).unwrap();
        let diff = rho.matrix().max_abs_diff(half.matrix());
        ensure(diff < 1e-12, || {
            format!("reduced operator differs from I/2 by {diff}")
        })?;
    }
    for p in [r.purity_photon, r.purity_detector] {
        ensure((p - 0.5).abs() < 1e-10, || format!("purity {p}"))?;
    }
    let state = build_measurement_state();
    for d in phases(16) {
        for sub in [PHOTON, DETECTOR] {
            let m = subsystem_interference_probe(&state, sub, deg(d)).unwrap();
            ensure(
                (m[0] - 0.5).abs() < 1e-12 && (m[1] - 0.5).abs() < 1e-12,
                || format!("probe of subsystem {sub} at {d}° = {m:?}"),
            )?;
        }
    }
    // The same probe does see a lone superposed photon.
    let lone = subsystem_interference_probe(&lone_photon(), 0, deg(0.0)).unwrap();
    ensure((lone[0] - 1.0).abs() < 1e-12, || {
        format!("lone-photon probe {lone:?}")
    })?;
    Ok("reduced operators = I/2, purities 0.5, probe flat at 16 phases".into())
}

fn encounter_delayed_choice() -> Outcome {
    let edc = |d: f64, r: f64| {
        let run =
            run_encounter_delayed_choice(deg(d), WavePacketEnvelope::from_fraction(r).unwrap())
                .unwrap();
        [run.p_d1(), run.p_d2()]
    };
    let mut worst: f64 = 0.0;
    for d in phases(16) {
        for (r, bs2) in [(0.0, true), (1.0, false)] {
            let e = edc(d, r);
            let m = mz_p(d, 0.0, bs2);
            let diff = (e[0] - m[0]).abs().max((e[1] - m[1]).abs());
            worst = worst.max(diff);
            ensure(diff < 1e-12, || {
                format!("endpoint r={r} at {d}°: {e:?} vs {m:?}")
            })?;
        }
        for k in 0..16 {
            let r = k as f64 / 15.0;
            let want = r / 2.0 + (1.0 - r) * (d.to_radians() / 2.0).cos().powi(2);
            let got = edc(d, r)[0];
            worst = worst.max((got - want).abs());
            ensure((got - want).abs() < 1e-12, || {
                format!("r={r}, {d}°: {got} vs {want}")
            })?;
        }
    }
    Ok(format!("16 phases × 16 delays, max |Δ| = {worst:.1e}"))
}

fn collapse() -> Outcome {
    let run = run_single_photon_collapse(MC_TRIALS, 5000).unwrap();
    let one_click = run.result.trials().iter().all(|t| t.outcomes.len() == 1);
    ensure(run.anomalies == 0 && one_click, || {
        format!("{} trials without exactly one click", run.anomalies)
    })?;
    ensure(run.result.trials().len() as u64 == MC_TRIALS, || {
        "trial count".into()
    })?;
    ensure(run.unclicked_vacuum_deviation < 1e-12, || {
        format!(
            "unclicked mode deviates from vacuum by {}",
            run.unclicked_vacuum_deviation
        )
    })?;
    let sigma = (0.25 / MC_TRIALS as f64).sqrt();
    let f = run.clicks_d1 as f64 / MC_TRIALS as f64;
    ensure((f - 0.5).abs() < 4.0 * sigma, || format!("D1 fraction {f}"))?;
    Ok(format!(
        "0 anomalies; D1 fraction {f:.4} ({:.2}σ)",
        (f - 0.5).abs() / sigma
    ))
}

fn randomness_runs() -> Outcome {
    let fair = MzConfig::new(deg(0.0), deg(0.0), false);
    let run = sample_mach_zehnder(&fair, 1 << 20, 6000).unwrap();
    let outcomes: Vec<bool> = run.trials().iter().map(|t| t.outcomes == [D1]).collect();
    let r = run_length_statistics(&outcomes, 10).unwrap();
    ensure(r.expected_fraction == 2f64.powi(-10), || {
        "expected fraction".into()
    })?;
    ensure(r.z_score.abs() < 4.0, || {
        format!(
            "10-run fraction {} is {:.2}σ off",
            r.observed_fraction, r.z_score
        )
    })?;
    ensure(r.p_value > 0.001, || {
        format!("chi-square p-value {}", r.p_value)
    })?;
    Ok(format!(
        "fraction {:.6} vs {:.6} ({:+.2}σ); χ² = {:.3}, p = {:.3}",
        r.observed_fraction, r.expected_fraction, r.z_score, r.chi_square, r.p_value
    ))
}

fn double_slit() -> Outcome {
    let g = SlitGeometry::default();
    let grid = default_screen_grid(&g, 601).unwrap();
    let mut worst_rel: f64 = 0.0;
    for slits in [Slits::One, Slits::Two] {
        let main = double_slit_intensity(&grid, slits, &g).unwrap();
        let oracle = huygens_integral_oracle(&g, slits, &grid, 400).unwrap();
        let peak = main.iter().cloned().fold(0.0, f64::max);
        for ((m, o), x) in main.iter().zip(&oracle).zip(&grid) {
            if *m > 0.01 * peak {
                let rel = (m - o).abs() / m;
                worst_rel = worst_rel.max(rel);
                ensure(rel < 0.01, || {
                    format!("{slits:?} at x = {x}: relative error {rel}")
                })?;
            }
        }
    }
    let v = fringe_visibility(&g);
    ensure((v - 1.0).abs() < 1e-6, || format!("visibility {v}"))?;

    let intensity = double_slit_intensity(&grid, Slits::Two, &g).unwrap();
    let cells = cell_probabilities(&grid, &g, Slits::Two);
    let gof_for = |seed: u64| {
        let impacts = sample_impacts(&grid, &intensity, 10_000, seed).unwrap();
        chi_square_gof(&bin_impacts(&grid, &impacts), &cells, 0.99).unwrap()
    };
    let gof = gof_for(0);
    ensure(gof.passed, || {
        format!(
            "χ² = {} > {} (dof {})",
            gof.chi_square, gof.critical_value, gof.dof
        )
    })?;
    // A correct sampler is rejected about 1% of the time; 100 seeds with at
    // most 5 rejections bounds that rate.
    let rejected = (1..=100).filter(|&s| !gof_for(s).passed).count();
    ensure(rejected <= 5, || {
        format!("{rejected} of 100 seeds rejected at 99%")
    })?;

    let single = SlitGeometry::for_wavelength(500e-9).unwrap();
    ensure(single.slit_width < single.wavelength, || {
        "single slit is not narrower than λ".into()
    })?;
    let fine = default_screen_grid(&single, 4001).unwrap();
    let i1 = double_slit_intensity(&fine, Slits::One, &single).unwrap();
    let peak = i1.iter().cloned().fold(0.0, f64::max);
    let min = i1.iter().cloned().fold(f64::INFINITY, f64::min);
    ensure(min > 0.1 * peak, || {
        format!("single-slit minimum {min} vs peak {peak}")
    })?;
    Ok(format!(
        "Huygens max relative error {worst_rel:.1e}; visibility {v}; impacts χ² = {:.1} ≤ {:.1} (dof {}), {rejected}/100 seeds rejected; single-slit min/peak {:.3}",
        gof.chi_square,
        gof.critical_value,
        gof.dof,
        min / peak
    ))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_quanta");
    let invocations: &[&[&str]] = &[
        &["mz", "--sweep", "--trials", "2000"],
        &[
            "mz",
            "--phi1-deg",
            "30",
            "--trials",
            "500",
            "--format",
            "json",
        ],
        &["delayed-choice", "--phi-deg", "45", "--trials", "2000"],
        &["edc", "--phi-deg", "60", "--format", "json"],
        &["rto", "--sweep", "--trials", "2000"],
        &[
            "rto",
            "--phia-deg",
            "10",
            "--phib-deg",
            "70",
            "--trials",
            "300",
            "--format",
            "json",
        ],
        &["chsh", "--trials", "5000"],
        &["measure", "--format", "json"],
        &["collapse", "--trials", "3000"],
        &["double-slit", "--impacts", "3000", "--format", "json"],
        &["runs", "--trials", "65536", "--k", "6"],
    ];
    for args in invocations {
        let out = || {
            Command::new(bin)
                .args(*args)
                .args(["--seed", "99"])
                .env("SOURCE_DATE_EPOCH", "1700000000")
                .output()
                .expect("spawn quanta")
        };
        let (a, b) = (out(), out());
        ensure(a.status.success() && b.status.success(), || {
            format!("{args:?} failed")
        })?;
        ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || {
            format!("{args:?} output differs between runs")
        })?;
    }
    Ok(format!("{} invocations byte-identical", invocations.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Superposition vs entanglement table", superposition_table),
        ("Single-photon interference curve", interference_curve),
        ("Pair correlation curve", correlation_curve),
        ("No-signaling", no_signaling),
        ("CHSH", chsh_criterion),
        ("Measurement state", measurement_state),
        ("Encounter-delayed-choice", encounter_delayed_choice),
        ("Single-photon collapse", collapse),
        ("Randomness runs", randomness_runs),
        ("Double slit", double_slit),
        ("Determinism", determinism),
    ];
    let results: Vec<(usize, &str, Outcome)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .enumerate()
            .map(|(i, (name, f))| {
                s.spawn(move || {
                    let outcome =
                        std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                    (i + 1, *name, outcome)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread"))
            .collect()
    });
    let mut failed = 0;
    for (n, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS {n:>2} {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {n:>2} {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
