//! Batch pipelines: classification, theorem audit, extension checks and
//! probes, and topology. Items are independent and processed in parallel
//! with a static index partition, then merged in corpus order, so the
//! report bytes never depend on the worker count.

use std::sync::Mutex;

use serde_json::json;

use skewpbw_core::finring::DEFAULT_RING_CAP;
use skewpbw_core::ringprops::{audit_theorems, classify, sigma_semicommutative, Fixture, RingScan};
use skewpbw_core::skewpbw::{ProbeBudget, ProbeOutcome, ProbeProperty};
use skewpbw_core::spectop::{
    pm_checks_on_bundle, pm_checks_on_synthetic, retract_exists, spectra, topo_properties,
    zariski_axioms, PmWitness, RetractOutcome,
};

use crate::corpus::Corpus;
use crate::report::{
    audit_to_json, probe_to_json, verdict_to_json, ItemJson, RunReport, VerdictJson,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Classify,
    Audit,
    Pbw,
    Topo,
    All,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub ring_cap: usize,
    pub probe_degree: u32,
    pub probe_support: usize,
    pub probe_budget: u64,
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            ring_cap: DEFAULT_RING_CAP,
            probe_degree: 2,
            probe_support: 2,
            probe_budget: 10_000_000,
            jobs: 1,
        }
    }
}

impl RunConfig {
    /// Corpus-file config fills anything the flags left unset.
    pub fn merged_with_corpus(mut self, corpus: &Corpus) -> Self {
        let c = &corpus.config;
        if let Some(seed) = c.seed {
            self.seed = seed;
        }
        if let Some(cap) = c.ring_cap {
            self.ring_cap = cap;
        }
        if let Some(d) = c.probe_degree {
            self.probe_degree = d;
        }
        if let Some(s) = c.probe_support {
            self.probe_support = s;
        }
        if let Some(b) = c.probe_budget {
            self.probe_budget = b;
        }
        self
    }
}

enum JobSpec {
    ClassifyRing(usize),
    ClassifyFamily(usize),
    Pbw(usize),
    TopoRing(usize),
    TopoSpace(usize),
}

/// Run one command over a resolved corpus.
pub fn run(corpus: &Corpus, command: CommandKind, cfg: &RunConfig) -> RunReport {
    let mut jobs: Vec<JobSpec> = Vec::new();
    let classify_on = matches!(command, CommandKind::Classify | CommandKind::All);
    let pbw_on = matches!(command, CommandKind::Pbw | CommandKind::All);
    let topo_on = matches!(command, CommandKind::Topo | CommandKind::All);
    let audit_on = matches!(command, CommandKind::Audit | CommandKind::All);

    if classify_on {
        for i in 0..corpus.rings.len() {
            jobs.push(JobSpec::ClassifyRing(i));
        }
        for i in 0..corpus.families.len() {
            jobs.push(JobSpec::ClassifyFamily(i));
        }
    }
    if pbw_on {
        for i in 0..corpus.extensions.len() {
            jobs.push(JobSpec::Pbw(i));
        }
    }
    if topo_on {
        for i in 0..corpus.rings.len() {
            jobs.push(JobSpec::TopoRing(i));
        }
        for i in 0..corpus.spaces.len() {
            jobs.push(JobSpec::TopoSpace(i));
        }
    }

    let items = parallel_items(corpus, cfg, &jobs);

    let audit = if audit_on {
        Some(run_audit(corpus, cfg))
    } else {
        None
    };

    let audit_violations: usize = audit
        .as_ref()
        .map(|a| a.theorems.iter().map(|t| t.violations.len()).sum())
        .unwrap_or(0);
    let item_violations: usize = items.iter().map(|i| i.violations.len()).sum();
    let item_errors = items.iter().filter(|i| i.error.is_some()).count();

    let status = if audit_violations + item_violations + item_errors == 0 {
        "ok"
    } else {
        "violation"
    };

    RunReport { items, audit, status: status.to_string() }
}

fn parallel_items(corpus: &Corpus, cfg: &RunConfig, jobs: &[JobSpec]) -> Vec<ItemJson> {
    let eval = |spec: &JobSpec| -> ItemJson {
        match spec {
            JobSpec::ClassifyRing(i) => classify_ring_item(corpus, cfg, *i),
            JobSpec::ClassifyFamily(i) => classify_family_item(corpus, cfg, *i),
            JobSpec::Pbw(i) => pbw_item(corpus, cfg, *i),
            JobSpec::TopoRing(i) => topo_ring_item(corpus, cfg, *i),
            JobSpec::TopoSpace(i) => topo_space_item(corpus, *i),
        }
    };

    let workers = cfg.jobs.max(1);
    if workers == 1 {
        return jobs.iter().map(eval).collect();
    }

    let slots: Mutex<Vec<Option<ItemJson>>> = Mutex::new((0..jobs.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for w in 0..workers {
            let slots = &slots;
            let eval = &eval;
            scope.spawn(move || {
                let mut k = w;
                while k < jobs.len() {
                    let item = eval(&jobs[k]);
                    slots.lock().expect("no poisoning")[k] = Some(item);
                    k += workers;
                }
            });
        }
    });
    slots
        .into_inner()
        .expect("threads joined")
        .into_iter()
        .map(|s| s.expect("every slot filled"))
        .collect()
}

fn classification_verdicts(
    item: &mut ItemJson,
    ring: &std::sync::Arc<skewpbw_core::FiniteRing>,
    family: Option<&skewpbw_core::MapFamily>,
    cap: usize,
) {
    match classify(ring, family, cap) {
        Ok(report) => {
            for (p, v) in &report.verdicts {
                item.verdicts.insert(p.name().to_string(), verdict_to_json(ring, v));
            }
        }
        Err(e) => {
            item.error = Some(e.to_string());
        }
    }
}

fn classify_ring_item(corpus: &Corpus, cfg: &RunConfig, idx: usize) -> ItemJson {
    let entry = &corpus.rings[idx];
    let mut item = ItemJson::new(entry.name.clone(), "classification");
    match &entry.ring {
        Err(e) => item.error = Some(e.clone()),
        Ok(ring) => {
            item.notes.push(format!("ring {} of order {}", ring.name(), ring.order()));
            classification_verdicts(&mut item, ring, None, cfg.ring_cap);
        }
    }
    item
}

fn classify_family_item(corpus: &Corpus, cfg: &RunConfig, idx: usize) -> ItemJson {
    let entry = &corpus.families[idx];
    let mut item = ItemJson::new(entry.name.clone(), "classification");
    match &entry.family {
        Err(e) => item.error = Some(e.clone()),
        Ok((ring, family)) => {
            let maps: Vec<&str> = family.sigmas().iter().map(|s| s.name()).collect();
            item.notes.push(format!(
                "ring {} with sigma = [{}]",
                entry.ring_name,
                maps.join(", ")
            ));
            classification_verdicts(&mut item, ring, Some(family), cfg.ring_cap);
        }
    }
    item
}

fn pair_budget(cfg: &RunConfig) -> ProbeBudget {
    ProbeBudget {
        degree: cfg.probe_degree,
        support: cfg.probe_support,
        exhaustive_limit: 600,
        sample_count: 200,
        max_products: cfg.probe_budget,
        seed: cfg.seed,
    }
}

fn linear_budget(cfg: &RunConfig) -> ProbeBudget {
    ProbeBudget {
        degree: cfg.probe_degree,
        support: cfg.probe_support,
        exhaustive_limit: 100_000,
        sample_count: 1_000,
        max_products: cfg.probe_budget,
        seed: cfg.seed,
    }
}

fn pbw_item(corpus: &Corpus, cfg: &RunConfig, idx: usize) -> ItemJson {
    let entry = &corpus.extensions[idx];
    let mut item = ItemJson::new(entry.name.clone(), "extension");
    let ext = match &entry.extension {
        Err(e) => {
            item.error = Some(e.clone());
            return item;
        }
        Ok(ext) => ext,
    };
    let ring = ext.ring();
    item.notes.push(format!(
        "{} generators over {} (order {}), degree cap {}",
        ext.n(),
        ring.name(),
        ring.order(),
        ext.degree_cap()
    ));

    item.verdicts
        .insert("quasi_commutative".into(), VerdictJson::plain(ext.is_quasi_commutative()));
    item.verdicts.insert("bijective".into(), VerdictJson::plain(ext.is_bijective()));
    item.verdicts
        .insert("derivation_type".into(), VerdictJson::plain(ext.is_derivation_type()));
    item.verdicts
        .insert("endomorphism_type".into(), VerdictJson::plain(ext.is_endomorphism_type()));

    // differential test of the two multiplication routes
    let oracle_cap = ext.degree_cap().min(4);
    let mut mismatch = None;
    'oracle: for alpha in all_alphas(ext.n(), oracle_cap) {
        let mono = ext
            .monomial(&alpha, ring.one())
            .expect("within cap");
        for r in ring.elements() {
            let engine = ext.multiply(&mono, &ext.constant(r));
            let oracle = ext.monomial_action_oracle(&alpha, r);
            match (engine, oracle) {
                (Ok(a), Ok(b)) if a == b => {}
                (a, b) => {
                    mismatch = Some(format!(
                        "alpha {:?}, r = {}: engine {:?} vs oracle {:?}",
                        alpha,
                        ring.label(r),
                        a.map(|p| ext.format_poly(&p)),
                        b.map(|p| ext.format_poly(&p)),
                    ));
                    break 'oracle;
                }
            }
        }
    }
    match mismatch {
        None => {
            item.verdicts.insert(
                "oracle_agreement".into(),
                VerdictJson::plain(true)
                    .with_note(format!("all |alpha| <= {oracle_cap}, all coefficients")),
            );
        }
        Some(detail) => {
            item.verdicts.insert("oracle_agreement".into(), VerdictJson {
                value: json!(false),
                witness: Some(json!({ "text": detail })),
                manifest: None,
                note: None,
            });
            item.violations.push(format!("multiplication oracle mismatch: engine bug"));
        }
    }

    // lift hypotheses
    let lift_ok = match ext.lift_maps(20_000) {
        Ok(_) => {
            item.verdicts.insert("lift_maps".into(), VerdictJson::plain(true));
            true
        }
        Err(e) => {
            item.verdicts.insert("lift_maps".into(), VerdictJson {
                value: json!(false),
                witness: Some(json!({ "text": e.to_string() })),
                manifest: None,
                note: Some("the sigma/delta families do not lift".to_string()),
            });
            false
        }
    };

    // ring-level facts needed for the transfer checks
    let family = ext.family();
    let scan = RingScan::new(ring);
    let r_sigma_semicommutative = sigma_semicommutative(&scan, &family).verdict.holds();
    let r_baer = skewpbw_core::ringprops::is_baer(&scan).holds();

    // probes
    for &prop in ProbeProperty::all() {
        let budget = match prop {
            ProbeProperty::Reduced | ProbeProperty::Abelian => linear_budget(cfg),
            _ => pair_budget(cfg),
        };
        let outcome = ext.probe(prop, &budget);
        item.verdicts
            .insert(format!("probe_{}", prop.name()), probe_to_json(ext, &outcome));
    }

    // transfer consistency: over a sigma-semicommutative Baer base with
    // lift hypotheses the probe must stay silent; over a base that is not
    // sigma-semicommutative the converse direction is exact at degree 1
    let transfer = if r_sigma_semicommutative && r_baer && lift_ok {
        let out = ext.probe(ProbeProperty::SigmaBarSemicommutative, &pair_budget(cfg));
        match out {
            ProbeOutcome::NoneFound(_) => VerdictJson::plain(true)
                .with_note("hypotheses hold and no counterexample appeared".to_string()),
            ProbeOutcome::Counterexample(w) => {
                item.violations
                    .push(format!("transfer theorem violated on {}: {}", entry.name, w.detail));
                VerdictJson { value: json!(false), witness: Some(json!({"text": w.detail})), manifest: None, note: None }
            }
        }
    } else if !r_sigma_semicommutative {
        let budget = ProbeBudget { degree: 1, ..pair_budget(cfg) };
        let out = ext.probe(ProbeProperty::SigmaBarSemicommutative, &budget);
        match out {
            ProbeOutcome::Counterexample(_) => VerdictJson::plain(true).with_note(
                "base not sigma-semicommutative: converse direction produced its counterexample"
                    .to_string(),
            ),
            ProbeOutcome::NoneFound(_) => {
                item.violations.push(format!(
                    "converse transfer direction failed on {}: base is not sigma-semicommutative yet no degree-1 counterexample",
                    entry.name
                ));
                VerdictJson::plain(false)
            }
        }
    } else {
        VerdictJson::not_applicable("transfer hypotheses not satisfied")
    };
    item.verdicts.insert("sigma_bar_transfer".into(), transfer);

    // idempotent transparency over sigma-semicommutative bases
    let transparency = if r_sigma_semicommutative {
        match ext.check_idempotent_transparency(&linear_budget(cfg)) {
            Ok(()) => VerdictJson::plain(true),
            Err(detail) => {
                item.violations
                    .push(format!("idempotent transparency violated: {detail}"));
                VerdictJson {
                    value: json!(false),
                    witness: Some(json!({ "text": detail })),
                    manifest: None,
                    note: None,
                }
            }
        }
    } else {
        VerdictJson::not_applicable("base ring is not sigma-semicommutative")
    };
    item.verdicts.insert("idempotent_transparency".into(), transparency);

    item
}

fn all_alphas(n: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    loop {
        if current.iter().sum::<u32>() <= cap {
            out.push(current.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            current[i] += 1;
            if current[i] <= cap {
                break;
            }
            current[i] = 0;
            i += 1;
        }
    }
}

fn pm_to_json(result: &Result<(), PmWitness>, labels: &[String], degenerate: bool) -> VerdictJson {
    let mut v = match result {
        Ok(()) => VerdictJson::plain(true),
        Err(w) => VerdictJson {
            value: json!(false),
            witness: Some(json!({
                "text": format!(
                    "{} lies below {} maximal points",
                    labels.get(w.point).cloned().unwrap_or_else(|| w.point.to_string()),
                    w.count
                ),
                "point": w.point,
                "count": w.count,
            })),
            manifest: None,
            note: None,
        },
    };
    if degenerate {
        v = v.with_note("degenerate: finite ring (every prime is maximal)".to_string());
    }
    v
}

fn topo_ring_item(corpus: &Corpus, cfg: &RunConfig, idx: usize) -> ItemJson {
    let entry = &corpus.rings[idx];
    let mut item = ItemJson::new(format!("spec_{}", entry.name), "spectrum");
    let ring = match &entry.ring {
        Err(e) => {
            item.error = Some(e.clone());
            return item;
        }
        Ok(r) => r,
    };
    let bundle = match spectra(ring, cfg.ring_cap) {
        Ok(b) => b,
        Err(e) => {
            item.error = Some(e.to_string());
            return item;
        }
    };
    item.notes.push(format!(
        "{} prime ideal(s); SSpec {}, JSpec {}, Max {}",
        bundle.primes.len(),
        bundle.strongly_prime.count(),
        bundle.j_prime.count(),
        bundle.maximal.count()
    ));

    let spec_eq_max = bundle.spec_equals_max();
    item.verdicts.insert(
        "spec_equals_max".into(),
        VerdictJson::plain(spec_eq_max)
            .with_note("degenerate: finite ring (every prime is maximal)".to_string()),
    );
    if !spec_eq_max {
        item.violations
            .push("a finite ring produced a non-maximal prime ideal".to_string());
    }

    match zariski_axioms(ring, cfg.ring_cap) {
        Ok(Ok(())) => {
            item.verdicts.insert("zariski_axioms".into(), VerdictJson::plain(true));
        }
        Ok(Err(detail)) => {
            item.verdicts.insert("zariski_axioms".into(), VerdictJson {
                value: json!(false),
                witness: Some(json!({ "text": detail })),
                manifest: None,
                note: None,
            });
            item.violations.push("Zariski open-set identities failed".to_string());
        }
        Err(e) => {
            item.error = Some(e.to_string());
            return item;
        }
    }

    let labels: Vec<String> = bundle.primes.iter().map(|p| p.describe()).collect();
    let pm = pm_checks_on_bundle(&bundle);
    for (name, result) in
        [("pm", &pm.pm), ("weakly_pm", &pm.weakly_pm), ("j_pm", &pm.j_pm)]
    {
        let v = pm_to_json(result, &labels, true);
        if result.is_err() {
            item.violations
                .push(format!("{name} failed on a finite ring, contradicting Spec = Max"));
        }
        item.verdicts.insert(name.to_string(), v);
    }

    item.verdicts.insert(
        "o_topology_matches_subspace".into(),
        VerdictJson::plain(bundle.o_agrees_with_subspace)
            .with_note("recorded per instance, not asserted".to_string()),
    );
    item.verdicts.insert(
        "d_topology_matches_subspace".into(),
        VerdictJson::plain(bundle.d_agrees_with_subspace)
            .with_note("recorded per instance, not asserted".to_string()),
    );

    let report = topo_properties(&bundle.zariski);
    item.verdicts.insert("t0".into(), VerdictJson::plain(report.t0.is_ok()));
    item.verdicts.insert("t1".into(), VerdictJson::plain(report.t1.is_ok()));
    item.verdicts.insert("normal".into(), VerdictJson::plain(report.normal.is_ok()));
    item.verdicts.insert(
        "compact".into(),
        VerdictJson::plain(true).with_note("finite space".to_string()),
    );

    item
}

fn topo_space_item(corpus: &Corpus, idx: usize) -> ItemJson {
    let entry = &corpus.spaces[idx];
    let mut item = ItemJson::new(entry.name.clone(), "space");
    let space = match &entry.space {
        Err(e) => {
            item.error = Some(e.clone());
            return item;
        }
        Ok(s) => s,
    };
    let t = &space.topology;
    let labels: Vec<String> = (0..t.len()).map(|p| t.label(p).to_string()).collect();
    item.notes.push(format!("{} points, {} open sets", t.len(), t.opens().len()));

    let report = topo_properties(t);
    let witness_points = |pts: &[usize]| -> String {
        pts.iter().map(|&p| labels[p].clone()).collect::<Vec<_>>().join(",")
    };
    item.verdicts.insert("t0".into(), match &report.t0 {
        Ok(()) => VerdictJson::plain(true),
        Err((x, y)) => VerdictJson {
            value: json!(false),
            witness: Some(json!({"text": format!("{} and {} are topologically indistinguishable", labels[*x], labels[*y])})),
            manifest: None,
            note: None,
        },
    });
    item.verdicts.insert("t1".into(), match &report.t1 {
        Ok(()) => VerdictJson::plain(true),
        Err(x) => VerdictJson {
            value: json!(false),
            witness: Some(json!({"text": format!("point {} is not closed", labels[*x])})),
            manifest: None,
            note: None,
        },
    });
    item.verdicts.insert("normal".into(), match &report.normal {
        Ok(()) => VerdictJson::plain(true),
        Err((c1, c2)) => VerdictJson {
            value: json!(false),
            witness: Some(json!({"text": format!(
                "closed sets {{{}}} and {{{}}} admit no disjoint open neighborhoods",
                witness_points(c1),
                witness_points(c2)
            )})),
            manifest: None,
            note: None,
        },
    });
    item.verdicts.insert("hausdorff_on_max".into(), match &report.hausdorff_on_max {
        Ok(()) => VerdictJson::plain(true),
        Err((x, y)) => VerdictJson {
            value: json!(false),
            witness: Some(json!({"text": format!(
                "maximal points {} and {} not separated in the subspace",
                labels[*x], labels[*y]
            )})),
            manifest: None,
            note: None,
        },
    });
    item.verdicts.insert(
        "compact".into(),
        VerdictJson::plain(true).with_note("finite space".to_string()),
    );

    let pm = pm_checks_on_synthetic(space);
    item.verdicts.insert("pm".into(), pm_to_json(&pm.pm, &labels, false));
    item.verdicts.insert("weakly_pm".into(), pm_to_json(&pm.weakly_pm, &labels, false));
    item.verdicts.insert("j_pm".into(), pm_to_json(&pm.j_pm, &labels, false));

    let retract = retract_exists(t, 1_000_000);
    let retract_found = matches!(retract, RetractOutcome::Found { .. });
    item.verdicts.insert("retract_exists".into(), match &retract {
        RetractOutcome::Found { map } => {
            let desc: Vec<String> = map
                .iter()
                .enumerate()
                .map(|(p, &m)| format!("{}→{}", labels[p], labels[m]))
                .collect();
            VerdictJson::plain(true).with_note(format!("retraction: {}", desc.join(", ")))
        }
        RetractOutcome::NotFound { candidates } => VerdictJson::plain(false)
            .with_note(format!("exhausted all {candidates} candidate maps")),
        RetractOutcome::Inconclusive { candidates, budget } => VerdictJson {
            value: json!("inconclusive"),
            witness: None,
            manifest: Some(json!({"candidates": candidates.to_string(), "budget": budget})),
            note: Some("candidate space exceeds the budget".to_string()),
        },
    });

    // consistency directions from the propositions: a retraction forces
    // pm-style uniqueness, and normality forces Hausdorff Max
    if retract_found {
        let ok = pm.pm.is_ok();
        item.verdicts.insert(
            "retract_implies_pm".into(),
            VerdictJson::plain(ok),
        );
        if !ok {
            item.violations
                .push("retraction exists but a point lies under several maximal points".into());
        }
    } else {
        item.verdicts.insert(
            "retract_implies_pm".into(),
            VerdictJson::not_applicable("no retraction found"),
        );
    }
    if report.normal.is_ok() {
        let ok = report.hausdorff_on_max.is_ok();
        item.verdicts
            .insert("normal_implies_max_hausdorff".into(), VerdictJson::plain(ok));
        if !ok {
            item.violations
                .push("normal space with non-Hausdorff maximal subspace".into());
        }
    } else {
        item.verdicts.insert(
            "normal_implies_max_hausdorff".into(),
            VerdictJson::not_applicable("space is not normal"),
        );
    }

    item
}

fn run_audit(corpus: &Corpus, cfg: &RunConfig) -> crate::report::AuditJson {
    let mut fixtures: Vec<Fixture> = Vec::new();
    for f in &corpus.families {
        if let Ok((ring, family)) = &f.family {
            fixtures.push(Fixture {
                name: f.name.clone(),
                ring: ring.clone(),
                family: Some(family.clone()),
            });
        }
    }
    // rings not referenced by any family still feed the family-free theorems
    for r in &corpus.rings {
        if corpus.families.iter().any(|f| f.ring_name == r.name) {
            continue;
        }
        if let Ok(ring) = &r.ring {
            fixtures.push(Fixture { name: r.name.clone(), ring: ring.clone(), family: None });
        }
    }
    let audit = audit_theorems(&fixtures, cfg.ring_cap, cfg.seed);
    audit_to_json(&audit)
}

/// Convenience used by tests: does a report carry the given predicate
/// verdict for the named item?
pub fn item_verdict<'a>(
    report: &'a RunReport,
    item: &str,
    verdict: &str,
) -> Option<&'a VerdictJson> {
    report
        .items
        .iter()
        .find(|i| i.name == item)
        .and_then(|i| i.verdicts.get(verdict))
}

