//! Acceptance battery: every criterion runs at its stated configuration with
//! exact (zero-tolerance) equality and prints one pass/fail line. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines live.

use cherednik::report::CheckReport;
use cherednik::scalar::{rat, rint, rone};
use cherednik::suites::{determinism_probe, module_from_alias, run_suite, SuiteConfig};
use std::time::{Duration, Instant};

fn base_cfg() -> SuiteConfig {
    SuiteConfig::default()
}

fn run_criterion(
    n: u32,
    label: &str,
    bound: Duration,
    f: impl FnOnce() -> Vec<CheckReport>,
) -> Vec<CheckReport> {
    let t0 = Instant::now();
    let reports = f();
    let elapsed = t0.elapsed();
    let ok = reports.iter().all(|r| r.satisfied());
    println!(
        "criterion {n:2} [{}] {label} ({:.1}s)",
        if ok { "pass" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    for r in &reports {
        assert!(r.satisfied(), "criterion {n} failed:\n{}", r.to_text());
    }
    assert!(
        elapsed <= bound,
        "criterion {n} exceeded its {:.0}s budget: {:.1}s",
        bound.as_secs_f64(),
        elapsed.as_secs_f64()
    );
    reports
}

fn entry_passes(reports: &[CheckReport], fragment: &str) -> bool {
    let mut seen = false;
    for r in reports {
        for c in &r.checks {
            if c.name.contains(fragment) {
                seen = true;
                if c.failure_count != 0 || c.instances == 0 {
                    return false;
                }
            }
        }
    }
    seen
}

#[test]
fn acceptance_battery() {
    let battery_start = Instant::now();

    run_criterion(
        1,
        "Hecke suites, gl and sl, shifts {0,-m,3/2}",
        Duration::from_secs(30),
        || {
            let combos = [
                (2usize, 2usize, "natural:2"),
                (2, 3, "natural:2"),
                (3, 2, "natural2:3"),
            ];
            combos
                .iter()
                .map(|(m, nn, alias)| {
                    let cfg = SuiteConfig {
                        m: *m,
                        nn: *nn,
                        module: Some(module_from_alias(alias).unwrap()),
                        ..base_cfg()
                    };
                    run_suite("hecke_shift", &cfg).unwrap()
                })
                .collect()
        },
    );

    run_criterion(
        2,
        "Dunkl rational relations, N in {2,3}, degree <= 5",
        Duration::from_secs(60),
        || {
            [2, 3]
                .iter()
                .map(|nn| {
                    let cfg = SuiteConfig {
                        nn: *nn,
                        degree: 5,
                        ..base_cfg()
                    };
                    run_suite("dunkl_rational", &cfg).unwrap()
                })
                .collect()
        },
    );

    run_criterion(
        3,
        "trigonometric relations + embedding, window [-3,3]",
        Duration::from_secs(120),
        || {
            let mut out = Vec::new();
            for nn in [2, 3] {
                let cfg = SuiteConfig {
                    nn,
                    window: (-3, 3),
                    degree: 5,
                    ..base_cfg()
                };
                out.push(run_suite("dunkl_trig", &cfg).unwrap());
                out.push(run_suite("embedding", &cfg).unwrap());
            }
            out
        },
    );

    run_criterion(
        4,
        "classical Yang-Baxter, m in {1,2,3}",
        Duration::from_secs(10),
        || {
            let cfg = SuiteConfig { m: 3, ..base_cfg() };
            vec![run_suite("cybe", &cfg).unwrap()]
        },
    );

    run_criterion(
        5,
        "affine bracket Jacobi + representation property",
        Duration::from_secs(60),
        || {
            let cfg = SuiteConfig {
                m: 3,
                samples: 120,
                ..base_cfg()
            };
            vec![run_suite("affine_structure", &cfg).unwrap()]
        },
    );

    run_criterion(
        6,
        "Cherednik operators on W (ast_prop15), (m,N)=(2,2)",
        Duration::from_secs(300),
        || {
            let cfg = SuiteConfig {
                m: 2,
                nn: 2,
                window: (-2, 2),
                depth: 2,
                samples: 240,
                ..base_cfg()
            };
            vec![run_suite("ast_prop15", &cfg).unwrap()]
        },
    );

    run_criterion(
        7,
        "D/R/T commutator lemmas and the eps-family (ast_lemmas3)",
        Duration::from_secs(300),
        || {
            let cfg = SuiteConfig {
                m: 2,
                nn: 2,
                samples: 120,
                ..base_cfg()
            };
            vec![run_suite("ast_lemmas3", &cfg).unwrap()]
        },
    );

    let sec32 = run_criterion(
        8,
        "negative-mode commutator and J-element formulas",
        Duration::from_secs(300),
        || {
            let cfg = SuiteConfig {
                m: 2,
                nn: 2,
                samples: 160,
                ..base_cfg()
            };
            vec![
                run_suite("ast_commutator_j", &cfg).unwrap(),
                run_suite("ast_j_element", &cfg).unwrap(),
            ]
        },
    );
    assert!(
        entry_passes(&sec32, "wrong level kappa-m+1 produces witness"),
        "criterion 8 negative control missing"
    );

    let qw = run_criterion(
        9,
        "qW preservation at level kappa-m",
        Duration::from_secs(300),
        || {
            let cfg = SuiteConfig {
                m: 2,
                nn: 2,
                depth: 2,
                samples: 120,
                ..base_cfg()
            };
            vec![run_suite("prop15_qw", &cfg).unwrap()]
        },
    );
    assert!(
        entry_passes(&qw, "wrong level kappa-m+1 produces witness"),
        "criterion 9 negative control missing"
    );

    let t125 = run_criterion(
        10,
        "finite coinvariant equivalence (thm125), three sizes",
        Duration::from_secs(120),
        || {
            let combos = [
                (1usize, 1usize, "onedim:1:2", "onedim:1:-1"),
                (2, 1, "natural:2", "onedim:1:-1"),
                (2, 2, "natural:2", "natural:2"),
            ];
            combos
                .iter()
                .map(|(m, n, ua, va)| {
                    let cfg = SuiteConfig {
                        m: *m,
                        n: *n,
                        nn: 2,
                        module: Some(module_from_alias(ua).unwrap()),
                        module2: Some(module_from_alias(va).unwrap()),
                        ..base_cfg()
                    };
                    run_suite("thm125", &cfg).unwrap()
                })
                .collect()
        },
    );
    assert!(
        entry_passes(&t125, "dimension identity"),
        "criterion 10 dimension identity missing"
    );
    assert!(
        entry_passes(
            &t125,
            "summation-bound misreading (+1 shift) fails equivariance"
        ),
        "criterion 10 bound-resolution oracle missing"
    );

    let t17 = run_criterion(
        11,
        "affine coinvariant equivalence (thm17), (m,N) in {(2,1),(2,2)}",
        Duration::from_secs(300),
        || {
            [1usize, 2]
                .iter()
                .map(|nn| {
                    let cfg = SuiteConfig {
                        m: 2,
                        nn: *nn,
                        kappas: vec![rint(1), rat(5, 2)],
                        window: (-2, 2),
                        depth: 2,
                        samples: 150,
                        ..base_cfg()
                    };
                    run_suite("thm17", &cfg).unwrap()
                })
                .collect()
        },
    );

    run_criterion(
        12,
        "reducer soundness, two-strategy agreement, determinism",
        Duration::from_secs(120),
        || {
            // the two-strategy/idempotence entries must be present and green in
            // the criterion 9-11 suites
            assert!(
                entry_passes(&qw, "nf_affine two-strategy agreement + idempotence"),
                "nf_affine agreement missing in criterion 9"
            );
            assert!(
                entry_passes(&qw, "nf_affine soundness on theta(q)-images"),
                "nf_affine soundness missing in criterion 9"
            );
            assert!(
                entry_passes(&t125, "nf_finite two-strategy agreement + idempotence"),
                "nf_finite agreement missing in criterion 10"
            );
            assert!(
                entry_passes(&t17, "nf_affine two-strategy agreement + idempotence"),
                "nf_affine agreement missing in criterion 11"
            );
            // reports are bit-identical across repeated runs
            let cfg = SuiteConfig {
                kappas: vec![rone()],
                samples: 30,
                window: (-1, 1),
                depth: 1,
                ..base_cfg()
            };
            assert!(determinism_probe("dunkl_rational", &cfg).unwrap());
            assert!(determinism_probe("prop15_qw", &cfg).unwrap());
            assert!(determinism_probe("thm17", &cfg).unwrap());
            vec![]
        },
    );

    let total = battery_start.elapsed();
    println!("whole battery: {:.1}s", total.as_secs_f64());
    assert!(
        total <= Duration::from_secs(900),
        "battery exceeded 15 minutes: {:.1}s",
        total.as_secs_f64()
    );
}
