//! Cross-module invariants over the whole fixture corpus: witness
//! soundness, radical chains, prime-maximal degeneracy, and agreement of
//! the two multiplication routes.

use std::sync::Arc;

use skewpbw_core::endo::{
    build_derivation, build_endomorphism, identity_map, zero_derivation, MapFamily,
};
use skewpbw_core::finring::{
    self, build_gf, build_trunc_st, build_trunc_t2, build_ut2, build_ut2_equal_diag, build_zn,
    enumerate_ideals, special_ideals, verify_ring_axioms, FiniteRing, IdealKind, RingSpec,
    SpecialIdealKind, DEFAULT_RING_CAP,
};
use skewpbw_core::ringprops::{classify, recheck_witness, Verdict};
use skewpbw_core::skewpbw::{build_extension, Extension, SkewPbwData};

fn corpus_rings() -> Vec<Arc<FiniteRing>> {
    vec![
        Arc::new(build_zn(4).unwrap()),
        Arc::new(build_zn(6).unwrap()),
        Arc::new(build_zn(12).unwrap()),
        Arc::new(build_gf(4).unwrap()),
        Arc::new(build_ut2(5).unwrap()),
        Arc::new(build_ut2_equal_diag(5).unwrap()),
        Arc::new(build_trunc_st(2, 3).unwrap()),
        Arc::new(build_trunc_t2(2).unwrap()),
    ]
}

fn corpus_families() -> Vec<(String, Arc<FiniteRing>, MapFamily)> {
    let mut out = Vec::new();

    let gf4 = Arc::new(build_gf(4).unwrap());
    let frob = build_endomorphism(&gf4, finring::frobenius_images(&gf4), "frobenius").unwrap();
    out.push((
        "gf4+frobenius".to_string(),
        Arc::clone(&gf4),
        MapFamily::new(&gf4, vec![frob], None).unwrap(),
    ));

    let ut2 = Arc::new(build_ut2(5).unwrap());
    let sigma =
        build_endomorphism(&ut2, finring::ut2_kill_all_but_a_images(5), "kill_all_but_a").unwrap();
    out.push((
        "ut2_5+sigma".to_string(),
        Arc::clone(&ut2),
        MapFamily::new(&ut2, vec![sigma], None).unwrap(),
    ));

    let ut2b = Arc::new(build_ut2(5).unwrap());
    let sigma2 =
        build_endomorphism(&ut2b, finring::ut2_kill_all_but_a_images(5), "kill_all_but_a").unwrap();
    let phi =
        build_endomorphism(&ut2b, finring::ut2_kill_all_but_c_images(5), "kill_all_but_c").unwrap();
    out.push((
        "ut2_5+sigma+phi".to_string(),
        Arc::clone(&ut2b),
        MapFamily::new(&ut2b, vec![sigma2, phi], None).unwrap(),
    ));

    let eq = Arc::new(build_ut2_equal_diag(5).unwrap());
    let id = identity_map(&eq);
    let neg = build_endomorphism(&eq, finring::ut2eq_negate_b_images(5), "negate_b").unwrap();
    let kill = build_endomorphism(&eq, finring::ut2eq_kill_b_images(5), "kill_b").unwrap();
    out.push((
        "ut2eq_5+three".to_string(),
        Arc::clone(&eq),
        MapFamily::new(&eq, vec![id, neg, kill], None).unwrap(),
    ));

    let st = Arc::new(build_trunc_st(2, 3).unwrap());
    let swap = build_endomorphism(&st, finring::trunc_st_swap_images(2, 3), "swap").unwrap();
    let id = identity_map(&st);
    out.push((
        "trunc_st+swap".to_string(),
        Arc::clone(&st),
        MapFamily::new(&st, vec![swap, id], None).unwrap(),
    ));

    let t2 = Arc::new(build_trunc_t2(2).unwrap());
    let idt = identity_map(&t2);
    let d = build_derivation(&t2, finring::trunc_t2_derivation_images(2), &idt, "d_dt").unwrap();
    out.push((
        "trunc_t2+deriv".to_string(),
        Arc::clone(&t2),
        MapFamily::new(&t2, vec![identity_map(&t2)], Some(vec![d])).unwrap(),
    ));

    out
}

fn corpus_extensions() -> Vec<Extension> {
    let gf4 = Arc::new(build_gf(4).unwrap());
    let frob = build_endomorphism(&gf4, finring::frobenius_images(&gf4), "frobenius").unwrap();
    let e1 = build_extension(SkewPbwData {
        name: "gf4_frob".into(),
        ring: Arc::clone(&gf4),
        sigmas: vec![frob],
        deltas: vec![zero_derivation(&gf4)],
        d: vec![],
        r_consts: vec![],
        degree_cap: 6,
    })
    .unwrap();

    let st = Arc::new(build_trunc_st(2, 3).unwrap());
    let swap = build_endomorphism(&st, finring::trunc_st_swap_images(2, 3), "swap").unwrap();
    let e2 = build_extension(SkewPbwData {
        name: "trunc_st_swap".into(),
        ring: Arc::clone(&st),
        sigmas: vec![swap],
        deltas: vec![zero_derivation(&st)],
        d: vec![],
        r_consts: vec![],
        degree_cap: 6,
    })
    .unwrap();

    let gf4b = Arc::new(build_gf(4).unwrap());
    let e3 = build_extension(SkewPbwData {
        name: "weyl_gf4".into(),
        ring: Arc::clone(&gf4b),
        sigmas: vec![identity_map(&gf4b), identity_map(&gf4b)],
        deltas: vec![zero_derivation(&gf4b), zero_derivation(&gf4b)],
        d: vec![gf4b.one()],
        r_consts: vec![vec![gf4b.one(), 0, 0]],
        degree_cap: 6,
    })
    .unwrap();

    let t2 = Arc::new(build_trunc_t2(2).unwrap());
    let idt = identity_map(&t2);
    let d = build_derivation(&t2, finring::trunc_t2_derivation_images(2), &idt, "d_dt").unwrap();
    let e4 = build_extension(SkewPbwData {
        name: "t2_deriv".into(),
        ring: Arc::clone(&t2),
        sigmas: vec![identity_map(&t2)],
        deltas: vec![d],
        d: vec![],
        r_consts: vec![],
        degree_cap: 6,
    })
    .unwrap();

    vec![e1, e2, e3, e4]
}

#[test]
fn every_corpus_ring_passes_the_axiom_battery() {
    for spec in [
        RingSpec::Zn { n: 4 },
        RingSpec::Zn { n: 6 },
        RingSpec::Zn { n: 12 },
        RingSpec::Gf { q: 4 },
        RingSpec::Gf { q: 8 },
        RingSpec::Gf { q: 9 },
        RingSpec::Ut2 { n: 2 },
        RingSpec::Ut2 { n: 5 },
        RingSpec::Ut2EqualDiag { n: 5 },
        RingSpec::TruncSt { p: 2, k: 3 },
        RingSpec::TruncT2 { p: 2 },
        RingSpec::Product(
            Box::new(RingSpec::Zn { n: 2 }),
            Box::new(RingSpec::Gf { q: 4 }),
        ),
    ] {
        let ring = finring::build_ring(&spec).unwrap();
        assert!(verify_ring_axioms(&ring).all_pass(), "{} fails axioms", ring.name());
    }
}

#[test]
fn ideal_sizes_divide_the_ring_order() {
    for ring in corpus_rings() {
        for kind in [IdealKind::Left, IdealKind::Right, IdealKind::TwoSided] {
            for ideal in enumerate_ideals(&ring, kind, DEFAULT_RING_CAP).unwrap() {
                assert_eq!(
                    ring.order() % ideal.size(),
                    0,
                    "Lagrange fails on {} ({:?})",
                    ring.name(),
                    kind
                );
            }
        }
    }
}

#[test]
fn primes_equal_maximals_on_finite_rings() {
    for ring in corpus_rings() {
        let primes = special_ideals(&ring, SpecialIdealKind::Prime, DEFAULT_RING_CAP).unwrap();
        let maximals = special_ideals(&ring, SpecialIdealKind::Maximal, DEFAULT_RING_CAP).unwrap();
        let p: std::collections::BTreeSet<_> = primes.iter().map(|i| i.members()).collect();
        let m: std::collections::BTreeSet<_> = maximals.iter().map(|i| i.members()).collect();
        assert_eq!(p, m, "on {}", ring.name());
    }
}

#[test]
fn every_failing_verdict_has_a_sound_witness() {
    // bare rings
    for ring in corpus_rings() {
        let report = classify(&ring, None, DEFAULT_RING_CAP).unwrap();
        for (p, v) in &report.verdicts {
            if let Verdict::Fails(w) = v {
                assert!(
                    recheck_witness(&ring, None, w),
                    "unsound witness for {} on {}: {:?}",
                    p.name(),
                    ring.name(),
                    w
                );
            }
        }
    }
    // family fixtures
    for (name, ring, family) in corpus_families() {
        let report = classify(&ring, Some(&family), DEFAULT_RING_CAP).unwrap();
        for (p, v) in &report.verdicts {
            if let Verdict::Fails(w) = v {
                assert!(
                    recheck_witness(&ring, Some(&family), w),
                    "unsound witness for {} on {}: {:?}",
                    p.name(),
                    name,
                    w
                );
            }
        }
    }
}

#[test]
fn oracle_and_rewriting_agree_on_all_corpus_extensions() {
    for ext in corpus_extensions() {
        let cap = ext.degree_cap().min(4);
        let n = ext.n();
        // enumerate alpha with |alpha| <= cap via a bounded odometer
        let mut alpha = vec![0u32; n];
        loop {
            if alpha.iter().sum::<u32>() <= cap {
                let mono = ext.monomial(&alpha, ext.ring().one()).unwrap();
                for r in ext.ring().elements() {
                    let engine = ext.multiply(&mono, &ext.constant(r)).unwrap();
                    let oracle = ext.monomial_action_oracle(&alpha, r).unwrap();
                    assert_eq!(engine, oracle, "mismatch on {} at {:?}", ext.name(), alpha);
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    return;
                }
                alpha[i] += 1;
                if alpha[i] <= cap {
                    break;
                }
                alpha[i] = 0;
                i += 1;
            }
        }
    }
}
