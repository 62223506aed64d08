//! Zariski-style spectra of finite rings and synthetic finite posets, with
//! the point-set topology decided exactly: separation axioms, normality,
//! pm-style uniqueness of maximal specializations, and retractions onto
//! the maximal points.
//!
//! Finite rings make the spectrum degenerate (every prime ideal is
//! maximal), so synthetic specialization posets are first-class spectra
//! here: their opens are the down-sets, which is exactly the shape of
//! W(I)-topologies under the inclusion order.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::Bitset;
use crate::finring::{
    enumerate_ideals, ideal_product_set, ideal_sum_set, quotient_ring, radicals, special_ideals,
    FiniteRing, Ideal, IdealKind, RingError, SpecialIdealKind,
};

/// Largest synthetic poset we will enumerate down-sets for.
pub const MAX_POSET_POINTS: usize = 20;

// ---------------------------------------------------------------------------
// Finite topologies
// ---------------------------------------------------------------------------

/// A finite topological space: labelled points, the complete open-set
/// family (deduplicated, sorted), the distinguished maximal points, and
/// the specialization preorder `leq[p] = {q : p <= q}`.
#[derive(Clone, Debug)]
pub struct FiniteTopology {
    labels: Vec<String>,
    opens: Vec<Bitset>,
    max: Bitset,
    leq: Vec<Bitset>,
}

impl FiniteTopology {
    fn new(labels: Vec<String>, mut opens: Vec<Bitset>, max: Bitset, leq: Vec<Bitset>) -> Self {
        opens.sort();
        opens.dedup();
        FiniteTopology { labels, opens, max, leq }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn opens(&self) -> &[Bitset] {
        &self.opens
    }

    pub fn max(&self) -> &Bitset {
        &self.max
    }

    pub fn leq(&self) -> &[Bitset] {
        &self.leq
    }

    pub fn is_open(&self, set: &Bitset) -> bool {
        self.opens.binary_search(set).is_ok()
    }

    /// Complements of the opens.
    pub fn closed_sets(&self) -> Vec<Bitset> {
        self.opens.iter().map(|o| o.complement()).collect()
    }

    /// Distinct opens of the subspace induced on `subset`, in the subset's
    /// own index space (position within the subset's sorted point list).
    pub fn subspace_opens(&self, subset: &Bitset) -> Vec<Bitset> {
        let points: Vec<usize> = subset.iter().collect();
        let mut out: Vec<Bitset> = self
            .opens
            .iter()
            .map(|o| {
                let mut s = Bitset::empty(points.len());
                for (new_idx, &p) in points.iter().enumerate() {
                    if o.contains(p) {
                        s.insert(new_idx);
                    }
                }
                s
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Verify the open family axioms directly (used by tests): contains
    /// the empty set and the full set, closed under pairwise union and
    /// intersection.
    pub fn verify_open_family(&self) -> Result<(), String> {
        let n = self.len();
        if !self.is_open(&Bitset::empty(n)) {
            return Err("empty set is not open".to_string());
        }
        if !self.is_open(&Bitset::full(n)) {
            return Err("full set is not open".to_string());
        }
        for a in &self.opens {
            for b in &self.opens {
                if !self.is_open(&a.union(b)) {
                    return Err(format!("union of {:?} and {:?} not open", a.to_indices(), b.to_indices()));
                }
                if !self.is_open(&a.intersection(b)) {
                    return Err(format!(
                        "intersection of {:?} and {:?} not open",
                        a.to_indices(),
                        b.to_indices()
                    ));
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Ring spectra
// ---------------------------------------------------------------------------

/// Spec/SSpec/JSpec/Max of a finite ring with the Zariski topology on Spec
/// and the O/D topologies on the sub-spectra, plus the comparison of the
/// latter against the plain subspace topologies.
#[derive(Clone, Debug)]
pub struct SpectrumBundle {
    pub ring: Arc<FiniteRing>,
    pub primes: Vec<Ideal>,
    pub maximal: Bitset,
    pub strongly_prime: Bitset,
    pub j_prime: Bitset,
    pub zariski: FiniteTopology,
    pub sspec_topology: FiniteTopology,
    pub jspec_topology: FiniteTopology,
    /// Whether the O(I) family equals the subspace topology that SSpec
    /// inherits from Spec, and likewise for D(I) on JSpec.
    pub o_agrees_with_subspace: bool,
    pub d_agrees_with_subspace: bool,
}

impl SpectrumBundle {
    pub fn spec_equals_max(&self) -> bool {
        (0..self.primes.len()).all(|i| self.maximal.contains(i))
    }
}

fn restricted_topology(
    primes: &[Ideal],
    subset: &Bitset,
    two_sided: &[Ideal],
    maximal: &Bitset,
) -> FiniteTopology {
    let points: Vec<usize> = subset.iter().collect();
    let labels: Vec<String> = points.iter().map(|&i| primes[i].describe()).collect();
    let mut opens = Vec::new();
    for ideal in two_sided {
        let mut o = Bitset::empty(points.len());
        for (new_idx, &p) in points.iter().enumerate() {
            if !ideal.members().is_subset(primes[p].members()) {
                o.insert(new_idx);
            }
        }
        opens.push(o);
    }
    let mut leq = Vec::with_capacity(points.len());
    for &p in &points {
        let mut up = Bitset::empty(points.len());
        for (new_idx, &q) in points.iter().enumerate() {
            if primes[p].members().is_subset(primes[q].members()) {
                up.insert(new_idx);
            }
        }
        leq.push(up);
    }
    let mut max = Bitset::empty(points.len());
    for (new_idx, &p) in points.iter().enumerate() {
        if maximal.contains(p) {
            max.insert(new_idx);
        }
    }
    FiniteTopology::new(labels, opens, max, leq)
}

/// Compute the spectra of a finite ring exactly.
pub fn spectra(ring: &Arc<FiniteRing>, cap: usize) -> Result<SpectrumBundle, RingError> {
    let primes = special_ideals(ring, SpecialIdealKind::Prime, cap)?;
    let two_sided = enumerate_ideals(ring, IdealKind::TwoSided, cap)?;
    let n = primes.len();

    let mut maximal = Bitset::empty(n);
    let mut strongly_prime = Bitset::empty(n);
    let mut j_prime = Bitset::empty(n);
    for (i, p) in primes.iter().enumerate() {
        let is_max = !primes
            .iter()
            .any(|q| q.members() != p.members() && p.members().is_subset(q.members()));
        if is_max {
            maximal.insert(i);
        }
        let quot = Arc::new(quotient_ring(ring, p)?);
        let rad = radicals(&quot, cap)?;
        if rad.upper_nilradical.is_zero() {
            strongly_prime.insert(i);
        }
        if rad.jacobson.is_zero() {
            j_prime.insert(i);
        }
    }

    let zariski = restricted_topology(&primes, &Bitset::full(n), &two_sided, &maximal);
    let sspec_topology = restricted_topology(&primes, &strongly_prime, &two_sided, &maximal);
    let jspec_topology = restricted_topology(&primes, &j_prime, &two_sided, &maximal);

    let o_agrees = {
        let sub = zariski.subspace_opens(&strongly_prime);
        sub == sspec_topology.opens
    };
    let d_agrees = {
        let sub = zariski.subspace_opens(&j_prime);
        sub == jspec_topology.opens
    };

    Ok(SpectrumBundle {
        ring: Arc::clone(ring),
        primes,
        maximal,
        strongly_prime,
        j_prime,
        zariski,
        sspec_topology,
        jspec_topology,
        o_agrees_with_subspace: o_agrees,
        d_agrees_with_subspace: d_agrees,
    })
}

/// The Zariski open-set identities on a finite ring, checked over every
/// pair of two-sided ideals: W(I)∩W(J) = W(I·J) and W(I)∪W(J) = W(I+J).
pub fn zariski_axioms(ring: &Arc<FiniteRing>, cap: usize) -> Result<Result<(), String>, RingError> {
    let primes = special_ideals(ring, SpecialIdealKind::Prime, cap)?;
    let two_sided = enumerate_ideals(ring, IdealKind::TwoSided, cap)?;
    let w = |set: &Bitset| -> Bitset {
        let mut out = Bitset::empty(primes.len());
        for (i, p) in primes.iter().enumerate() {
            if !set.is_subset(p.members()) {
                out.insert(i);
            }
        }
        out
    };
    for a in &two_sided {
        for b in &two_sided {
            let prod = ideal_product_set(ring, a.members(), b.members());
            if w(a.members()).intersection(&w(b.members())) != w(&prod) {
                return Ok(Err(format!(
                    "W({}) ∩ W({}) ≠ W(product)",
                    a.describe(),
                    b.describe()
                )));
            }
            let sum = ideal_sum_set(ring, a.members(), b.members());
            if w(a.members()).union(&w(b.members())) != w(&sum) {
                return Ok(Err(format!(
                    "W({}) ∪ W({}) ≠ W(sum)",
                    a.describe(),
                    b.describe()
                )));
            }
        }
    }
    Ok(Ok(()))
}

// ---------------------------------------------------------------------------
// Synthetic poset spectra
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PosetError {
    TooLarge { points: usize, cap: usize },
    UnknownNode { name: String },
    DuplicateNode { name: String },
    NotAPoset { a: String, b: String },
}

impl fmt::Display for PosetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetError::TooLarge { points, cap } => {
                write!(f, "poset has {points} points, cap is {cap}")
            }
            PosetError::UnknownNode { name } => write!(f, "unknown node {name}"),
            PosetError::DuplicateNode { name } => write!(f, "duplicate node {name}"),
            PosetError::NotAPoset { a, b } => {
                write!(f, "relation is not antisymmetric: {a} <= {b} <= {a}")
            }
        }
    }
}

impl core::error::Error for PosetError {}

/// A synthetic finite spectrum: the Alexandrov topology of a poset (opens
/// are the down-sets), with tagged maximal / strongly-prime / J-prime
/// point sets.
#[derive(Clone, Debug)]
pub struct SyntheticSpace {
    pub topology: FiniteTopology,
    pub sspec: Bitset,
    pub jspec: Bitset,
}

/// Build a synthetic spectrum from nodes, cover relations a < b, maximal
/// tags and optional sub-spectrum tags (defaulting to all points).
pub fn synthetic_space(
    nodes: &[String],
    covers: &[(String, String)],
    max_tags: &[String],
    sspec_tags: Option<&[String]>,
    jspec_tags: Option<&[String]>,
) -> Result<SyntheticSpace, PosetError> {
    let n = nodes.len();
    if n > MAX_POSET_POINTS {
        return Err(PosetError::TooLarge { points: n, cap: MAX_POSET_POINTS });
    }
    let index_of = |name: &str| -> Result<usize, PosetError> {
        nodes
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| PosetError::UnknownNode { name: name.to_string() })
    };
    for (i, name) in nodes.iter().enumerate() {
        if nodes[(i + 1)..].contains(name) {
            return Err(PosetError::DuplicateNode { name: name.clone() });
        }
    }

    // reflexive-transitive closure of the cover relation
    let mut leq: Vec<Bitset> = (0..n).map(|i| Bitset::singleton(n, i)).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (a, b) in covers {
        edges.push((index_of(a)?, index_of(b)?));
    }
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in &edges {
            let merged = leq[a].union(&leq[b]);
            if merged != leq[a] {
                leq[a] = merged;
                changed = true;
            }
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if leq[a].contains(b) && leq[b].contains(a) {
                return Err(PosetError::NotAPoset { a: nodes[a].clone(), b: nodes[b].clone() });
            }
        }
    }

    let mut max = Bitset::empty(n);
    for name in max_tags {
        max.insert(index_of(name)?);
    }
    let tag_set = |tags: Option<&[String]>| -> Result<Bitset, PosetError> {
        match tags {
            None => Ok(Bitset::full(n)),
            Some(ts) => {
                let mut s = Bitset::empty(n);
                for t in ts {
                    s.insert(index_of(t)?);
                }
                Ok(s)
            }
        }
    };
    let sspec = tag_set(sspec_tags)?;
    let jspec = tag_set(jspec_tags)?;

    // opens are the down-sets: S open iff p in S implies down(p) within S
    let mut down: Vec<Bitset> = (0..n).map(|_| Bitset::empty(n)).collect();
    for p in 0..n {
        for q in 0..n {
            if leq[q].contains(p) {
                down[p].insert(q);
            }
        }
    }
    let mut opens = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let mut s = Bitset::empty(n);
        for p in 0..n {
            if mask >> p & 1 == 1 {
                s.insert(p);
            }
        }
        let is_down = s.iter().all(|p| down[p].is_subset(&s));
        if is_down {
            opens.push(s);
        }
    }

    let labels = nodes.to_vec();
    Ok(SyntheticSpace { topology: FiniteTopology::new(labels, opens, max, leq), sspec, jspec })
}

// ---------------------------------------------------------------------------
// Topological predicates
// ---------------------------------------------------------------------------

/// Separation verdicts; witnesses are point indices (or closed-set pairs
/// for normality).
#[derive(Clone, Debug)]
pub struct TopoReport {
    pub t0: Result<(), (usize, usize)>,
    pub t1: Result<(), usize>,
    pub normal: Result<(), (Vec<usize>, Vec<usize>)>,
    pub hausdorff_on_max: Result<(), (usize, usize)>,
    /// Finite spaces are compact; reported for completeness.
    pub compact: bool,
}

pub fn topo_properties(t: &FiniteTopology) -> TopoReport {
    let n = t.len();

    let mut t0 = Ok(());
    'outer_t0: for x in 0..n {
        for y in (x + 1)..n {
            let separated = t
                .opens()
                .iter()
                .any(|o| o.contains(x) != o.contains(y));
            if !separated {
                t0 = Err((x, y));
                break 'outer_t0;
            }
        }
    }

    let mut t1 = Ok(());
    for x in 0..n {
        let complement = Bitset::singleton(n, x).complement();
        if !t.is_open(&complement) {
            t1 = Err(x);
            break;
        }
    }

    let closed = t.closed_sets();
    let mut normal = Ok(());
    'outer_norm: for c1 in &closed {
        for c2 in &closed {
            if !c1.is_disjoint(c2) {
                continue;
            }
            let separated = t.opens().iter().any(|u1| {
                c1.is_subset(u1)
                    && t.opens().iter().any(|u2| c2.is_subset(u2) && u1.is_disjoint(u2))
            });
            if !separated {
                normal = Err((c1.to_indices(), c2.to_indices()));
                break 'outer_norm;
            }
        }
    }

    let sub_opens = t.subspace_opens(t.max());
    let max_points: Vec<usize> = t.max().iter().collect();
    let mut hausdorff = Ok(());
    'outer_h: for i in 0..max_points.len() {
        for j in (i + 1)..max_points.len() {
            let separated = sub_opens.iter().any(|u1| {
                u1.contains(i)
                    && !u1.contains(j)
                    && sub_opens
                        .iter()
                        .any(|u2| u2.contains(j) && !u2.contains(i) && u1.is_disjoint(u2))
            });
            if !separated {
                hausdorff = Err((max_points[i], max_points[j]));
                break 'outer_h;
            }
        }
    }

    TopoReport { t0, t1, normal, hausdorff_on_max: hausdorff, compact: true }
}

/// pm-style uniqueness: every point of `subset` lies below exactly one
/// maximal point. The witness carries the offending point and its count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmWitness {
    pub point: usize,
    pub count: usize,
}

pub fn pm_uniqueness(leq: &[Bitset], max: &Bitset, subset: &Bitset) -> Result<(), PmWitness> {
    for p in subset.iter() {
        let count = leq[p].intersection(max).count();
        if count != 1 {
            return Err(PmWitness { point: p, count });
        }
    }
    Ok(())
}

/// The three pm flavours of a ring spectrum.
#[derive(Clone, Debug)]
pub struct PmReport {
    pub pm: Result<(), PmWitness>,
    pub weakly_pm: Result<(), PmWitness>,
    pub j_pm: Result<(), PmWitness>,
}

pub fn pm_checks_on_bundle(bundle: &SpectrumBundle) -> PmReport {
    let n = bundle.primes.len();
    PmReport {
        pm: pm_uniqueness(bundle.zariski.leq(), &bundle.maximal, &Bitset::full(n)),
        weakly_pm: pm_uniqueness(bundle.zariski.leq(), &bundle.maximal, &bundle.strongly_prime),
        j_pm: pm_uniqueness(bundle.zariski.leq(), &bundle.maximal, &bundle.j_prime),
    }
}

pub fn pm_checks_on_synthetic(space: &SyntheticSpace) -> PmReport {
    let t = &space.topology;
    let n = t.len();
    PmReport {
        pm: pm_uniqueness(t.leq(), t.max(), &Bitset::full(n)),
        weakly_pm: pm_uniqueness(t.leq(), t.max(), &space.sspec),
        j_pm: pm_uniqueness(t.leq(), t.max(), &space.jspec),
    }
}

// ---------------------------------------------------------------------------
// Retractions onto the maximal points
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RetractOutcome {
    /// A continuous retraction exists; the map sends point p to map[p].
    Found { map: Vec<usize> },
    /// Exhaustive search over all candidates found none.
    NotFound { candidates: u64 },
    /// The candidate space exceeds the budget.
    Inconclusive { candidates: u128, budget: u64 },
}

/// Exhaustive search for a continuous retraction onto the maximal points
/// (fixing them pointwise), checking continuity against the subspace opens
/// of Max.
pub fn retract_exists(t: &FiniteTopology, budget: u64) -> RetractOutcome {
    let n = t.len();
    let max_points: Vec<usize> = t.max().iter().collect();
    let free_points: Vec<usize> = (0..n).filter(|p| !t.max().contains(*p)).collect();
    if max_points.is_empty() {
        return RetractOutcome::NotFound { candidates: 0 };
    }

    let count = (max_points.len() as u128).checked_pow(free_points.len() as u32);
    match count {
        Some(c) if c <= budget as u128 => {}
        Some(c) => return RetractOutcome::Inconclusive { candidates: c, budget },
        None => return RetractOutcome::Inconclusive { candidates: u128::MAX, budget },
    }

    // subspace opens of Max pulled back to full-space point sets
    let sub_opens: Vec<Bitset> = {
        let relative = t.subspace_opens(t.max());
        relative
            .iter()
            .map(|rel| {
                let mut s = Bitset::empty(n);
                for (new_idx, &p) in max_points.iter().enumerate() {
                    if rel.contains(new_idx) {
                        s.insert(p);
                    }
                }
                s
            })
            .collect()
    };

    let mut assignment = vec![0usize; free_points.len()];
    let mut tried = 0u64;
    loop {
        tried += 1;
        let mut map = vec![0usize; n];
        for &m in &max_points {
            map[m] = m;
        }
        for (k, &p) in free_points.iter().enumerate() {
            map[p] = max_points[assignment[k]];
        }
        // continuity: the preimage of every subspace open must be open
        let continuous = sub_opens.iter().all(|v| {
            let mut pre = Bitset::empty(n);
            for p in 0..n {
                if v.contains(map[p]) {
                    pre.insert(p);
                }
            }
            t.is_open(&pre)
        });
        if continuous {
            return RetractOutcome::Found { map };
        }
        // next assignment
        let mut k = free_points.len();
        loop {
            if k == 0 {
                return RetractOutcome::NotFound { candidates: tried };
            }
            k -= 1;
            assignment[k] += 1;
            if assignment[k] < max_points.len() {
                break;
            }
            assignment[k] = 0;
        }
    }
}
