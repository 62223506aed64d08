//! Acceptance suite: each criterion runs exhaustively at its stated
//! tolerance and prints one pass/fail line.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use skewpbw_cli::runner::{run, CommandKind, RunConfig};
use skewpbw_cli::{load_default, Corpus};
use skewpbw_core::endo::{build_derivation, build_endomorphism, identity_map, MapFamily};
use skewpbw_core::finring::{
    self, build_trunc_st, build_trunc_t2, build_ut2, build_ut2_equal_diag, build_zn,
    DEFAULT_RING_CAP,
};
use skewpbw_core::ringprops::{
    classify, compatibility, is_baer, is_quasi_baer, recheck_witness, Predicate, RingScan,
    Witness,
};
use skewpbw_core::skewpbw::{Extension, ProbeBudget, ProbeOutcome, ProbeProperty};
use skewpbw_core::spectop::{
    pm_checks_on_synthetic, retract_exists, spectra, topo_properties, zariski_axioms,
    RetractOutcome,
};

const CAP: usize = DEFAULT_RING_CAP;

fn criterion(number: u32, description: &str, limit: Duration, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) if elapsed <= limit => {
            println!(
                "PASS criterion {number}: {description} ({:.2?} of {:.0?} budget)",
                elapsed, limit
            );
        }
        Ok(()) => {
            println!(
                "FAIL criterion {number}: {description} (time {:.2?} exceeds {:.0?})",
                elapsed, limit
            );
            panic!("criterion {number} exceeded its time budget");
        }
        Err(e) => {
            println!("FAIL criterion {number}: {description}");
            std::panic::resume_unwind(e);
        }
    }
}

fn extension_by_name(corpus: &Corpus, name: &str) -> Extension {
    corpus
        .extensions
        .iter()
        .find(|e| e.name == name)
        .unwrap_or_else(|| panic!("extension {name} in corpus"))
        .extension
        .clone()
        .unwrap_or_else(|e| panic!("extension {name} builds: {e}"))
}

#[test]
fn criterion_1_triangular_family_classification() {
    criterion(
        1,
        "triangular family: sigma-semicommutative, not reduced, not rigid, Abelian",
        Duration::from_secs(10),
        || {
            let ring = Arc::new(build_ut2_equal_diag(5).unwrap());
            let id = identity_map(&ring);
            let neg =
                build_endomorphism(&ring, finring::ut2eq_negate_b_images(5), "negate_b").unwrap();
            let kill =
                build_endomorphism(&ring, finring::ut2eq_kill_b_images(5), "kill_b").unwrap();
            let family = MapFamily::new(&ring, vec![id, neg, kill], None).unwrap();
            let report = classify(&ring, Some(&family), CAP).unwrap();

            assert!(report.holds(Predicate::SigmaSemicommutative));
            assert!(report.holds(Predicate::Abelian));

            // reduced fails with the strictly upper-triangular unit witness
            let reduced = report.verdict(Predicate::Reduced);
            assert_eq!(reduced.witness(), Some(&Witness::Nilpotent { a: 1 }));
            assert_eq!(ring.label(1), "[0 1; 0 0]");

            // rigidity fails; the reported witness re-checks, and so does
            // the textbook composite witness a·(kill_b∘negate_b)(a) = 0
            let rigid = report.verdict(Predicate::SigmaRigid);
            let reported = rigid.witness().expect("not rigid");
            assert!(recheck_witness(&ring, Some(&family), reported));
            let textbook = Witness::SigmaRigid {
                a: 1,
                alpha: vec![0, 1, 1],
                label: "negate_b∘kill_b".into(),
            };
            assert!(recheck_witness(&ring, Some(&family), &textbook));
        },
    );
}

#[test]
fn criterion_2_ut2_sigma_semicommutative_but_not_semicommutative() {
    criterion(
        2,
        "ut2(5): sigma-semicommutative without semicommutative; phi breaks it",
        Duration::from_secs(10),
        || {
            let ring = Arc::new(build_ut2(5).unwrap());
            let sigma =
                build_endomorphism(&ring, finring::ut2_kill_all_but_a_images(5), "kill_all_but_a")
                    .unwrap();
            let family = MapFamily::new(&ring, vec![sigma.clone()], None).unwrap();
            let report = classify(&ring, Some(&family), CAP).unwrap();

            assert!(report.holds(Predicate::SigmaSemicommutative));
            assert!(!report.holds(Predicate::Abelian));
            let semi = report.verdict(Predicate::Semicommutative);
            let reported = semi.witness().expect("ut2 is not semicommutative");
            assert!(recheck_witness(&ring, None, reported));

            // the textbook matrix triple E11, E11+E12+E22, E22 re-verifies
            let e11 = 25u16;
            let mid = 31u16;
            let e22 = 1u16;
            assert_eq!(ring.label(e11), "[1 0; 0 0]");
            assert_eq!(ring.label(mid), "[1 1; 0 1]");
            assert_eq!(ring.label(e22), "[0 0; 0 1]");
            let textbook = Witness::Semicommutative { a: e11, b: e22, r: mid };
            assert!(recheck_witness(&ring, None, &textbook));

            // adding phi = kill_all_but_c destroys sigma-semicommutativity
            let phi = build_endomorphism(
                &ring,
                finring::ut2_kill_all_but_c_images(5),
                "kill_all_but_c",
            )
            .unwrap();
            let family2 = MapFamily::new(&ring, vec![sigma, phi], None).unwrap();
            let report2 = classify(&ring, Some(&family2), CAP).unwrap();
            let v = report2.verdict(Predicate::SigmaSemicommutative);
            let reported = v.witness().expect("phi breaks it");
            assert!(recheck_witness(&ring, Some(&family2), reported));

            // the paper's phi-witness: E11·E22 = 0 but E11·(1 1;0 0)·phi(E22) != 0
            let textbook_phi = Witness::SigmaSemicommutative {
                a: e11,
                b: e22,
                r: 30, // (1 1; 0 0)
                alpha: vec![0, 1],
                label: "kill_all_but_c".into(),
            };
            assert!(recheck_witness(&ring, Some(&family2), &textbook_phi));
        },
    );
}

#[test]
fn criterion_3_swap_on_truncated_quotient() {
    criterion(
        3,
        "trunc_st(2,3)+swap: semicommutative, not sigma-semicommutative; probe finds s·x·t",
        Duration::from_secs(10),
        || {
            let ring = Arc::new(build_trunc_st(2, 3).unwrap());
            let swap =
                build_endomorphism(&ring, finring::trunc_st_swap_images(2, 3), "swap").unwrap();
            let id = identity_map(&ring);
            let family = MapFamily::new(&ring, vec![swap, id], None).unwrap();
            let report = classify(&ring, Some(&family), CAP).unwrap();

            assert!(report.holds(Predicate::Semicommutative));
            let v = report.verdict(Predicate::SigmaSemicommutative);
            match v.witness().expect("swap breaks sigma-semicommutativity") {
                Witness::SigmaSemicommutative { a, b, .. } => {
                    assert_eq!(ring.label(*a), "s");
                    assert_eq!(ring.label(*b), "t");
                }
                other => panic!("unexpected witness {other:?}"),
            }

            // the degree-1 probe on the n = 1 extension produces exactly
            // s·x·t = s^2·x != 0
            let corpus = load_default();
            let ext = extension_by_name(&corpus, "ext_trunc_st_swap");
            let budget = ProbeBudget { degree: 1, ..ProbeBudget::default() };
            let out = ext.probe(ProbeProperty::Semicommutative, &budget);
            let ProbeOutcome::Counterexample(w) = out else {
                panic!("probe must find the counterexample");
            };
            let part = |name: &str| {
                w.parts
                    .iter()
                    .find(|(n, _)| *n == name)
                    .map(|(_, p)| p.clone())
                    .unwrap()
            };
            let (f, h, g) = (part("f"), part("h"), part("g"));
            let s = 2u16;
            let t = 8u16;
            assert_eq!(f, ext.constant(s));
            assert_eq!(h, ext.generator(0));
            assert_eq!(g, ext.constant(t));
            // s·x·t = s^2 x, nonzero
            let product = ext
                .multiply(&ext.multiply(&f, &h).unwrap(), &g)
                .unwrap();
            let s_squared_x = ext.monomial(&[1], ring.mul(s, s)).unwrap();
            assert_eq!(product, s_squared_x);
            assert!(!product.is_zero());
            assert!(ext.multiply(&f, &g).unwrap().is_zero());
        },
    );
}

#[test]
fn criterion_4_theorem_audit_zero_violations() {
    criterion(
        4,
        "theorem audit T1-T10 over the bundled corpus: zero violations",
        Duration::from_secs(60),
        || {
            let corpus = load_default();
            let cfg = RunConfig::default().merged_with_corpus(&corpus);
            let report = run(&corpus, CommandKind::Audit, &cfg);
            let audit = report.audit.expect("audit report present");
            assert_eq!(audit.theorems.len(), 10);
            for t in &audit.theorems {
                assert!(
                    t.violations.is_empty(),
                    "{} violated: {:?}",
                    t.id,
                    t.violations
                );
            }
            // the headline theorems must actually be exercised
            for id in ["T1", "T2", "T3", "T8", "T9", "T10"] {
                let t = audit.theorems.iter().find(|t| t.id == id).unwrap();
                assert!(!t.vacuous, "{id} must not be vacuous on the bundled corpus");
                assert!(t.tested > 0);
            }
            assert_eq!(report.status, "ok");
        },
    );
}

#[test]
fn criterion_5_multiplication_oracle_agreement() {
    criterion(
        5,
        "rewriting engine equals the closed-form oracle for all |alpha| <= 4",
        Duration::from_secs(30),
        || {
            let corpus = load_default();
            let mut extensions_checked = 0;
            for entry in &corpus.extensions {
                let ext = entry.extension.as_ref().expect("bundled extensions build");
                let cap = ext.degree_cap().min(4);
                let n = ext.n();
                let mut alpha = vec![0u32; n];
                let mut mismatches = 0u64;
                'outer: loop {
                    if alpha.iter().sum::<u32>() <= cap {
                        let mono = ext.monomial(&alpha, ext.ring().one()).unwrap();
                        for r in ext.ring().elements() {
                            let engine = ext.multiply(&mono, &ext.constant(r)).unwrap();
                            let oracle = ext.monomial_action_oracle(&alpha, r).unwrap();
                            if engine != oracle {
                                mismatches += 1;
                            }
                        }
                    }
                    let mut i = 0;
                    loop {
                        if i == n {
                            break 'outer;
                        }
                        alpha[i] += 1;
                        if alpha[i] <= cap {
                            break;
                        }
                        alpha[i] = 0;
                        i += 1;
                    }
                }
                assert_eq!(mismatches, 0, "oracle mismatches on {}", entry.name);
                extensions_checked += 1;
            }
            assert_eq!(extensions_checked, 5);
        },
    );
}

#[test]
fn criterion_6_compatibility_counterexample_and_probes() {
    criterion(
        6,
        "delta-compatibility fails at (t, t); reduced probes behave per base ring",
        Duration::from_secs(10),
        || {
            let ring = Arc::new(build_trunc_t2(2).unwrap());
            let id = identity_map(&ring);
            let d =
                build_derivation(&ring, finring::trunc_t2_derivation_images(2), &id, "d_dt")
                    .unwrap();
            let family =
                MapFamily::new(&ring, vec![identity_map(&ring)], Some(vec![d])).unwrap();
            let scan = RingScan::new(&ring);
            let compat = compatibility(&scan, &family);
            match compat.delta.witness().expect("delta-compatibility fails") {
                Witness::DeltaCompatible { a, b, .. } => {
                    assert_eq!(ring.label(*a), "t");
                    assert_eq!(ring.label(*b), "t");
                }
                other => panic!("unexpected witness {other:?}"),
            }

            // the extension over it still builds
            let corpus = load_default();
            let ext_t2 = extension_by_name(&corpus, "ext_trunc_t2_deriv");
            assert!(ext_t2.is_derivation_type());

            // probe(reduced, d = 2) on gf4+frobenius stays silent
            let ext_gf4 = extension_by_name(&corpus, "ext_gf4_frobenius");
            let budget = ProbeBudget { degree: 2, ..ProbeBudget::default() };
            let out = ext_gf4.probe(ProbeProperty::Reduced, &budget);
            let ProbeOutcome::NoneFound(manifest) = out else {
                panic!("gf4 extension has no bounded nilpotents");
            };
            assert!(manifest.candidates > 0);

            // while the truncated bases report exact square-zero witnesses
            for name in ["ext_trunc_st_swap", "ext_trunc_t2_deriv"] {
                let ext = extension_by_name(&corpus, name);
                let out = ext.probe(ProbeProperty::Reduced, &budget);
                let ProbeOutcome::Counterexample(w) = out else {
                    panic!("{name} must expose a nilpotent");
                };
                let f = &w.parts[0].1;
                assert!(!f.is_zero());
                assert!(ext.multiply(f, f).unwrap().is_zero());
            }
        },
    );
}

#[test]
fn criterion_7_baer_lattice_checks() {
    criterion(
        7,
        "Baer verdicts: zn6 true, zn12 quasi-Baer false at ann((2)), ut2eq5 nilradical witness",
        Duration::from_secs(10),
        || {
            let z6 = Arc::new(build_zn(6).unwrap());
            assert!(is_baer(&RingScan::new(&z6)).holds());

            let z12 = Arc::new(build_zn(12).unwrap());
            let v = is_quasi_baer(&RingScan::new(&z12), CAP).unwrap();
            match v.witness().expect("zn12 is not quasi-Baer") {
                Witness::QuasiBaerAnnihilator { ideal, annihilator } => {
                    assert_eq!(*ideal, vec![0, 2, 4, 6, 8, 10]); // the ideal (2)
                    assert_eq!(*annihilator, vec![0, 6]);
                }
                other => panic!("unexpected witness {other:?}"),
            }
            assert!(recheck_witness(&z12, None, v.witness().unwrap()));

            let eq = Arc::new(build_ut2_equal_diag(5).unwrap());
            let v = is_baer(&RingScan::new(&eq));
            match v.witness().expect("ut2eq5 is not Baer") {
                Witness::BaerAnnihilator { generators, annihilator } => {
                    assert_eq!(*generators, vec![1]); // the matrix (0 1; 0 0)
                    assert_eq!(*annihilator, vec![0, 1, 2, 3, 4]); // the nilradical
                }
                other => panic!("unexpected witness {other:?}"),
            }
            assert!(recheck_witness(&eq, None, v.witness().unwrap()));
        },
    );
}

#[test]
fn criterion_8_spectra_and_synthetic_topology() {
    criterion(
        8,
        "finite spectra are degenerate with Zariski identities; synthetic posets behave",
        Duration::from_secs(5),
        || {
            let corpus = load_default();
            for entry in &corpus.rings {
                let ring = entry.ring.as_ref().expect("bundled rings build");
                let bundle = spectra(ring, CAP).unwrap();
                assert!(bundle.spec_equals_max(), "Spec != Max on {}", entry.name);
                let axioms = zariski_axioms(ring, CAP).unwrap();
                assert!(axioms.is_ok(), "Zariski identities fail on {}", entry.name);
            }

            let vee = corpus
                .spaces
                .iter()
                .find(|s| s.name == "vee")
                .unwrap()
                .space
                .as_ref()
                .unwrap();
            let pm = pm_checks_on_synthetic(vee);
            assert!(pm.pm.is_err());
            assert!(matches!(
                retract_exists(&vee.topology, 10_000),
                RetractOutcome::NotFound { .. }
            ));

            let sierpinski = corpus
                .spaces
                .iter()
                .find(|s| s.name == "sierpinski")
                .unwrap()
                .space
                .as_ref()
                .unwrap();
            let report = topo_properties(&sierpinski.topology);
            assert!(report.t0.is_ok());
            assert!(report.t1.is_err());
            match retract_exists(&sierpinski.topology, 10_000) {
                RetractOutcome::Found { map } => assert_eq!(map, vec![1, 1]), // constant onto m
                other => panic!("expected the constant retraction, got {other:?}"),
            }
        },
    );
}

#[test]
fn criterion_9_deterministic_reports_across_worker_counts() {
    criterion(
        9,
        "run(all) emits byte-identical JSON for --jobs 1 and --jobs 8",
        Duration::from_secs(600),
        || {
            let corpus = load_default();
            let base = RunConfig::default().merged_with_corpus(&corpus);
            let cfg1 = RunConfig { jobs: 1, ..base.clone() };
            let cfg8 = RunConfig { jobs: 8, ..base };
            let r1 = run(&corpus, CommandKind::All, &cfg1).to_json_string();
            let r8 = run(&corpus, CommandKind::All, &cfg8).to_json_string();
            assert_eq!(r1.len(), r8.len());
            assert!(r1 == r8, "reports differ between worker counts");
        },
    );
}
