//! Ring endomorphisms and sigma-derivations as verified element maps, plus
//! the finite closures of map families that the universally quantified
//! predicates range over.
//!
//! A map is just an image array over the element indices; all laws are
//! checked exhaustively at construction. Non-unital and non-injective
//! endomorphisms are admitted as first-class citizens (the triangular
//! examples need them); the extension builder rejects them later where
//! injectivity is actually required.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::finring::{Elem, FiniteRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapRole {
    Endomorphism,
    Derivation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapError {
    LengthMismatch { expected: usize, got: usize },
    ImageOutOfRange { at: Elem, image: usize },
    NotAdditive { a: Elem, b: Elem },
    NotMultiplicative { a: Elem, b: Elem },
    DerivationLaw { a: Elem, b: Elem },
    SigmaNotEndomorphism,
    RingMismatch,
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::LengthMismatch { expected, got } => {
                write!(f, "image array has {got} entries, expected {expected}")
            }
            MapError::ImageOutOfRange { at, image } => {
                write!(f, "image of element {at} is {image}, out of range")
            }
            MapError::NotAdditive { a, b } => {
                write!(f, "additivity fails at ({a}, {b})")
            }
            MapError::NotMultiplicative { a, b } => {
                write!(f, "multiplicativity fails at ({a}, {b})")
            }
            MapError::DerivationLaw { a, b } => {
                write!(f, "sigma-derivation law fails at ({a}, {b})")
            }
            MapError::SigmaNotEndomorphism => {
                write!(f, "paired sigma is not an endomorphism")
            }
            MapError::RingMismatch => write!(f, "maps live on different rings"),
        }
    }
}

impl core::error::Error for MapError {}

/// A verified additive map on a finite ring, either a ring endomorphism or
/// a sigma-derivation. Equality of maps is extensional (image arrays).
#[derive(Clone)]
pub struct RingMap {
    domain: Arc<FiniteRing>,
    codomain: Arc<FiniteRing>,
    images: Vec<Elem>,
    role: MapRole,
    name: String,
    additive: bool,
    multiplicative: bool,
    unital: bool,
    injective: bool,
}

impl fmt::Debug for RingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingMap({} on {})", self.name, self.domain.name())
    }
}

impl PartialEq for RingMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && self.role == other.role
    }
}

impl Eq for RingMap {}

fn compute_flags(ring: &FiniteRing, images: &[Elem]) -> (bool, bool, bool, bool) {
    let additive = ring.elements().all(|a| {
        ring.elements().all(|b| {
            images[ring.add(a, b) as usize] == ring.add(images[a as usize], images[b as usize])
        })
    });
    let multiplicative = ring.elements().all(|a| {
        ring.elements().all(|b| {
            images[ring.mul(a, b) as usize] == ring.mul(images[a as usize], images[b as usize])
        })
    });
    let unital = images[ring.one() as usize] == ring.one();
    let injective = {
        let mut seen = vec![false; ring.order()];
        let mut inj = true;
        for &im in images {
            if seen[im as usize] {
                inj = false;
                break;
            }
            seen[im as usize] = true;
        }
        inj
    };
    (additive, multiplicative, unital, injective)
}

fn check_images(ring: &FiniteRing, images: &[Elem]) -> Result<(), MapError> {
    if images.len() != ring.order() {
        return Err(MapError::LengthMismatch { expected: ring.order(), got: images.len() });
    }
    for (at, &im) in images.iter().enumerate() {
        if im as usize >= ring.order() {
            return Err(MapError::ImageOutOfRange { at: at as Elem, image: im as usize });
        }
    }
    Ok(())
}

/// Validate an endomorphism: additive and multiplicative on all pairs.
/// The rejection carries the first witness pair in scan order.
pub fn build_endomorphism(
    ring: &Arc<FiniteRing>,
    images: Vec<Elem>,
    name: impl Into<String>,
) -> Result<RingMap, MapError> {
    check_images(ring, &images)?;
    for a in ring.elements() {
        for b in ring.elements() {
            if images[ring.add(a, b) as usize]
                != ring.add(images[a as usize], images[b as usize])
            {
                return Err(MapError::NotAdditive { a, b });
            }
        }
    }
    for a in ring.elements() {
        for b in ring.elements() {
            if images[ring.mul(a, b) as usize]
                != ring.mul(images[a as usize], images[b as usize])
            {
                return Err(MapError::NotMultiplicative { a, b });
            }
        }
    }
    let (additive, multiplicative, unital, injective) = compute_flags(ring, &images);
    Ok(RingMap {
        domain: Arc::clone(ring),
        codomain: Arc::clone(ring),
        images,
        role: MapRole::Endomorphism,
        name: name.into(),
        additive,
        multiplicative,
        unital,
        injective,
    })
}

/// Validate a sigma-derivation: additive, and d(ab) = s(a)d(b) + d(a)b.
pub fn build_derivation(
    ring: &Arc<FiniteRing>,
    images: Vec<Elem>,
    sigma: &RingMap,
    name: impl Into<String>,
) -> Result<RingMap, MapError> {
    check_images(ring, &images)?;
    if sigma.role != MapRole::Endomorphism || !sigma.multiplicative || !sigma.additive {
        return Err(MapError::SigmaNotEndomorphism);
    }
    if sigma.domain.as_ref() != ring.as_ref() {
        return Err(MapError::RingMismatch);
    }
    for a in ring.elements() {
        for b in ring.elements() {
            if images[ring.add(a, b) as usize]
                != ring.add(images[a as usize], images[b as usize])
            {
                return Err(MapError::NotAdditive { a, b });
            }
        }
    }
    for a in ring.elements() {
        for b in ring.elements() {
            let lhs = images[ring.mul(a, b) as usize];
            let rhs = ring.add(
                ring.mul(sigma.apply(a), images[b as usize]),
                ring.mul(images[a as usize], b),
            );
            if lhs != rhs {
                return Err(MapError::DerivationLaw { a, b });
            }
        }
    }
    let (additive, multiplicative, unital, injective) = compute_flags(ring, &images);
    Ok(RingMap {
        domain: Arc::clone(ring),
        codomain: Arc::clone(ring),
        images,
        role: MapRole::Derivation,
        name: name.into(),
        additive,
        multiplicative,
        unital,
        injective,
    })
}

pub fn identity_map(ring: &Arc<FiniteRing>) -> RingMap {
    let images: Vec<Elem> = ring.elements().collect();
    build_endomorphism(ring, images, "id").expect("identity is an endomorphism")
}

/// The zero map, which is a sigma-derivation for every sigma.
pub fn zero_derivation(ring: &Arc<FiniteRing>) -> RingMap {
    let images = vec![ring.zero(); ring.order()];
    let id = identity_map(ring);
    build_derivation(ring, images, &id, "zero").expect("zero map is a derivation")
}

impl RingMap {
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.domain
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn role(&self) -> MapRole {
        self.role
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.images[a as usize]
    }

    pub fn is_additive(&self) -> bool {
        self.additive
    }

    pub fn is_multiplicative(&self) -> bool {
        self.multiplicative
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|&im| im == self.domain.zero())
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        for &im in &self.images {
            seen[im as usize] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

/// `compose(f, g) = f after g`; flags are recomputed from the composite.
pub fn compose(f: &RingMap, g: &RingMap) -> Result<RingMap, MapError> {
    if f.domain.as_ref() != g.codomain.as_ref() {
        return Err(MapError::RingMismatch);
    }
    let images: Vec<Elem> = g.images.iter().map(|&x| f.images[x as usize]).collect();
    let (additive, multiplicative, unital, injective) = compute_flags(&g.domain, &images);
    let role = if multiplicative { MapRole::Endomorphism } else { f.role };
    Ok(RingMap {
        domain: Arc::clone(&g.domain),
        codomain: Arc::clone(&f.codomain),
        images,
        role,
        name: format!("{}∘{}", f.name, g.name),
        additive,
        multiplicative,
        unital,
        injective,
    })
}

// ---------------------------------------------------------------------------
// Families and closures
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyError {
    Empty,
    CountMismatch { sigmas: usize, deltas: usize },
    WrongRing { index: usize },
    NotEndomorphism { index: usize },
    NotDerivation { index: usize },
    PairingLawFails { index: usize, a: Elem, b: Elem },
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::Empty => write!(f, "family must contain at least one map"),
            FamilyError::CountMismatch { sigmas, deltas } => {
                write!(f, "{sigmas} endomorphisms but {deltas} derivations")
            }
            FamilyError::WrongRing { index } => {
                write!(f, "map {index} lives on a different ring")
            }
            FamilyError::NotEndomorphism { index } => {
                write!(f, "sigma_{} is not an endomorphism", index + 1)
            }
            FamilyError::NotDerivation { index } => {
                write!(f, "delta_{} is not a derivation", index + 1)
            }
            FamilyError::PairingLawFails { index, a, b } => {
                write!(
                    f,
                    "delta_{} does not satisfy the sigma_{}-derivation law at ({a}, {b})",
                    index + 1,
                    index + 1
                )
            }
        }
    }
}

impl core::error::Error for FamilyError {}

/// A family (sigma_1..sigma_n, delta_1..delta_n) over one ring, with each
/// delta_i re-validated against its paired sigma_i.
#[derive(Clone, Debug)]
pub struct MapFamily {
    ring: Arc<FiniteRing>,
    sigmas: Vec<RingMap>,
    deltas: Vec<RingMap>,
}

impl MapFamily {
    /// Missing deltas default to the zero derivation.
    pub fn new(
        ring: &Arc<FiniteRing>,
        sigmas: Vec<RingMap>,
        deltas: Option<Vec<RingMap>>,
    ) -> Result<MapFamily, FamilyError> {
        if sigmas.is_empty() {
            return Err(FamilyError::Empty);
        }
        let deltas = match deltas {
            Some(d) => d,
            None => sigmas.iter().map(|_| zero_derivation(ring)).collect(),
        };
        if deltas.len() != sigmas.len() {
            return Err(FamilyError::CountMismatch { sigmas: sigmas.len(), deltas: deltas.len() });
        }
        for (i, s) in sigmas.iter().enumerate() {
            if s.ring().as_ref() != ring.as_ref() {
                return Err(FamilyError::WrongRing { index: i });
            }
            if !s.is_additive() || !s.is_multiplicative() {
                return Err(FamilyError::NotEndomorphism { index: i });
            }
        }
        for (i, d) in deltas.iter().enumerate() {
            if d.ring().as_ref() != ring.as_ref() {
                return Err(FamilyError::WrongRing { index: i });
            }
            if !d.is_additive() {
                return Err(FamilyError::NotDerivation { index: i });
            }
            // re-check the pairing law against sigma_i
            for a in ring.elements() {
                for b in ring.elements() {
                    let lhs = d.apply(ring.mul(a, b));
                    let rhs = ring.add(
                        ring.mul(sigmas[i].apply(a), d.apply(b)),
                        ring.mul(d.apply(a), b),
                    );
                    if lhs != rhs {
                        return Err(FamilyError::PairingLawFails { index: i, a, b });
                    }
                }
            }
        }
        Ok(MapFamily { ring: Arc::clone(ring), sigmas, deltas })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.sigmas.len()
    }

    pub fn sigmas(&self) -> &[RingMap] {
        &self.sigmas
    }

    pub fn deltas(&self) -> &[RingMap] {
        &self.deltas
    }

    pub fn all_sigmas_injective(&self) -> bool {
        self.sigmas.iter().all(|s| s.is_injective())
    }

    pub fn all_sigmas_unital(&self) -> bool {
        self.sigmas.iter().all(|s| s.is_unital())
    }

    pub fn all_deltas_zero(&self) -> bool {
        self.deltas.iter().all(|d| d.is_zero())
    }

    /// Apply the ordered composite sigma^alpha = sigma_1^{a_1} o ... o
    /// sigma_n^{a_n} to a single element (rightmost factor first).
    pub fn apply_sigma_alpha(&self, alpha: &[u32], x: Elem) -> Elem {
        debug_assert_eq!(alpha.len(), self.n());
        let mut v = x;
        for i in (0..self.n()).rev() {
            for _ in 0..alpha[i] {
                v = self.sigmas[i].apply(v);
            }
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureKind {
    SigmaAlpha,
    DeltaBeta,
    MixedWords,
}

/// One composite map in a closure; `alpha` is the representative exponent
/// vector for the ordered kinds (None for word closures).
#[derive(Clone, Debug)]
pub struct ClosureMember {
    pub images: Vec<Elem>,
    pub alpha: Option<Vec<u32>>,
    pub label: String,
}

impl ClosureMember {
    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im as usize)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        for &im in &self.images {
            if seen[im as usize] {
                return false;
            }
            seen[im as usize] = true;
        }
        true
    }
}

/// The exact, deduplicated set of composites a definition quantifies over.
#[derive(Clone, Debug)]
pub struct MapClosure {
    pub kind: ClosureKind,
    pub includes_identity: bool,
    pub members: Vec<ClosureMember>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureCapExceeded {
    pub cap: usize,
}

impl fmt::Display for ClosureCapExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "word closure exceeds the cap of {} members", self.cap)
    }
}

impl core::error::Error for ClosureCapExceeded {}

/// One distinct power of a map: the least exponent realizing it, and the
/// least positive exponent when one exists (for the identity these differ
/// when the power sequence cycles back through it).
struct PowerEntry {
    images: Vec<Elem>,
    min_exp: u32,
    min_pos_exp: Option<u32>,
}

/// Distinct powers of one map. Powers of a map on a finite ring are
/// eventually periodic, so the walk stops at the first repeated image
/// array, by which point every distinct power and every least positive
/// exponent has been seen.
fn distinct_powers(ring: &FiniteRing, map: &RingMap) -> Vec<PowerEntry> {
    let id: Vec<Elem> = ring.elements().collect();
    let mut out = vec![PowerEntry { images: id, min_exp: 0, min_pos_exp: None }];
    let mut current: Vec<Elem> = ring.elements().collect();
    let mut exp = 0u32;
    loop {
        current = current.iter().map(|&x| map.apply(x)).collect();
        exp += 1;
        if let Some(entry) = out.iter_mut().find(|e| e.images == current) {
            if entry.min_pos_exp.is_none() {
                entry.min_pos_exp = Some(exp);
            }
            return out;
        }
        out.push(PowerEntry {
            images: current.clone(),
            min_exp: exp,
            min_pos_exp: Some(exp),
        });
    }
}

fn compose_label(names: &[&str], alpha: &[u32]) -> String {
    let parts: Vec<String> = alpha
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(i, &a)| {
            if a == 1 {
                names[i].to_string()
            } else {
                format!("{}^{}", names[i], a)
            }
        })
        .collect();
    if parts.is_empty() {
        "id".to_string()
    } else {
        parts.join("∘")
    }
}

/// All ordered composites m_1^{a_1} o ... o m_n^{a_n} of a list of maps,
/// deduplicated extensionally. With `include_identity` the zero exponent
/// vector is admitted; otherwise only alpha != 0 (though the identity map
/// may still appear as a nontrivial power).
fn ordered_closure(
    ring: &FiniteRing,
    maps: &[RingMap],
    include_identity: bool,
) -> Vec<ClosureMember> {
    let names: Vec<&str> = maps.iter().map(|m| m.name()).collect();
    let powers: Vec<Vec<PowerEntry>> = maps.iter().map(|m| distinct_powers(ring, m)).collect();

    let mut members: Vec<ClosureMember> = Vec::new();
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();

    // Iterate power choices in lexicographic order over the distinct power
    // lists; the representative alpha of a member is the first exponent
    // vector that realizes its image array.
    let mut choice = vec![0usize; maps.len()];
    loop {
        let mut alpha: Vec<u32> =
            choice.iter().enumerate().map(|(i, &c)| powers[i][c].min_exp).collect();
        if alpha.iter().all(|&a| a == 0) && !include_identity {
            // The minimal exponents are all zero, so this is the identity
            // choice; it still realizes some alpha != 0 when any coordinate
            // can reach its power with a positive exponent.
            match choice
                .iter()
                .enumerate()
                .find_map(|(i, &c)| powers[i][c].min_pos_exp.map(|e| (i, e)))
            {
                Some((i, e)) => alpha[i] = e,
                None => {
                    if !advance(&mut choice, &powers) {
                        return members;
                    }
                    continue;
                }
            }
        }
        // composite applies the rightmost factor first
        let mut images: Vec<Elem> = ring.elements().collect();
        for i in (0..maps.len()).rev() {
            let p = &powers[i][choice[i]].images;
            images = images.iter().map(|&x| p[x as usize]).collect();
        }
        if seen.insert(images.clone()) {
            let label = compose_label(&names, &alpha);
            members.push(ClosureMember { images, alpha: Some(alpha), label });
        }
        if !advance(&mut choice, &powers) {
            return members;
        }
    }
}

fn advance(choice: &mut [usize], powers: &[Vec<PowerEntry>]) -> bool {
    let mut i = choice.len();
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        choice[i] += 1;
        if choice[i] < powers[i].len() {
            return true;
        }
        choice[i] = 0;
    }
}

/// The set {sigma^alpha} for alpha in N^n (or N^n minus zero).
pub fn sigma_closure(family: &MapFamily, include_identity: bool) -> MapClosure {
    MapClosure {
        kind: ClosureKind::SigmaAlpha,
        includes_identity: include_identity,
        members: ordered_closure(family.ring(), family.sigmas(), include_identity),
    }
}

/// The set {delta^beta} for beta in N^n (or N^n minus zero).
pub fn delta_closure(family: &MapFamily, include_identity: bool) -> MapClosure {
    MapClosure {
        kind: ClosureKind::DeltaBeta,
        includes_identity: include_identity,
        members: ordered_closure(family.ring(), family.deltas(), include_identity),
    }
}

/// All words in the sigmas and deltas (the composition monoid they
/// generate), capped. This is the stronger reading used by the annihilator
/// proposition's proof; the ordered closures above are the default.
pub fn mixed_word_closure(
    family: &MapFamily,
    cap: usize,
) -> Result<MapClosure, ClosureCapExceeded> {
    let ring = family.ring();
    let mut generators: Vec<(&RingMap, String)> = Vec::new();
    for s in family.sigmas() {
        generators.push((s, s.name().to_string()));
    }
    for d in family.deltas() {
        generators.push((d, d.name().to_string()));
    }

    let id: Vec<Elem> = ring.elements().collect();
    let mut members = vec![ClosureMember {
        images: id.clone(),
        alpha: None,
        label: "id".to_string(),
    }];
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    seen.insert(id);

    let mut frontier = 0usize;
    while frontier < members.len() {
        let base = members[frontier].clone();
        for (g, gname) in &generators {
            let images: Vec<Elem> = base.images.iter().map(|&x| g.apply(x)).collect();
            if seen.insert(images.clone()) {
                let label = if base.is_identity() {
                    gname.clone()
                } else {
                    format!("{}∘{}", gname, base.label)
                };
                members.push(ClosureMember { images, alpha: None, label });
                if members.len() > cap {
                    return Err(ClosureCapExceeded { cap });
                }
            }
        }
        frontier += 1;
    }
    Ok(MapClosure { kind: ClosureKind::MixedWords, includes_identity: true, members })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{
        build_gf, build_trunc_st, build_trunc_t2, build_ut2, build_ut2_equal_diag,
        frobenius_images, trunc_st_swap_images, trunc_t2_derivation_images,
        ut2_kill_all_but_a_images, ut2eq_kill_b_images, ut2eq_negate_b_images,
    };

    #[test]
    fn ut2_sigma_is_non_unital_non_injective() {
        let r = Arc::new(build_ut2(5).unwrap());
        let sigma =
            build_endomorphism(&r, ut2_kill_all_but_a_images(5), "kill_all_but_a").unwrap();
        assert!(sigma.is_additive() && sigma.is_multiplicative());
        assert!(!sigma.is_unital());
        assert!(!sigma.is_injective());
    }

    #[test]
    fn swap_is_a_unital_automorphism() {
        let r = Arc::new(build_trunc_st(2, 3).unwrap());
        let swap = build_endomorphism(&r, trunc_st_swap_images(2, 3), "swap").unwrap();
        assert!(swap.is_unital());
        assert!(swap.is_injective());
        assert!(swap.is_surjective());
        // involution
        let sq = compose(&swap, &swap).unwrap();
        assert!(sq.is_identity());
    }

    #[test]
    fn trunc_t2_derivation_validates() {
        let r = Arc::new(build_trunc_t2(2).unwrap());
        let id = identity_map(&r);
        let d = build_derivation(&r, trunc_t2_derivation_images(2), &id, "d_dt").unwrap();
        // delta(t) = 1 where t has index 2
        assert_eq!(d.apply(2), r.one());
        assert_eq!(d.apply(r.one()), r.zero());
    }

    #[test]
    fn bad_derivation_rejected_with_witness() {
        // On Z2[s,t]/(st,..), delta(s)=1 with sigma = id violates the law at
        // a pair involving s and t.
        let r = Arc::new(build_trunc_st(2, 3).unwrap());
        let id = identity_map(&r);
        let mut images = vec![r.zero(); r.order()];
        for x in r.elements() {
            let s_digit = (x as usize / 2) % 2;
            images[x as usize] = if s_digit == 1 { r.one() } else { r.zero() };
        }
        let err = build_derivation(&r, images, &id, "bad").unwrap_err();
        assert!(matches!(err, MapError::DerivationLaw { .. }));
    }

    #[test]
    fn compose_matches_example() {
        let r = Arc::new(build_ut2_equal_diag(5).unwrap());
        let neg = build_endomorphism(&r, ut2eq_negate_b_images(5), "negate_b").unwrap();
        let kill = build_endomorphism(&r, ut2eq_kill_b_images(5), "kill_b").unwrap();
        // negate after kill equals kill, and kill after negate too
        let c = compose(&neg, &kill).unwrap();
        assert_eq!(c.images(), kill.images());
        let c2 = compose(&kill, &neg).unwrap();
        assert_eq!(c2.images(), kill.images());
    }

    #[test]
    fn singleton_identity_closure() {
        let r = Arc::new(build_gf(4).unwrap());
        let fam = MapFamily::new(&r, vec![identity_map(&r)], None).unwrap();
        let c = sigma_closure(&fam, false);
        assert_eq!(c.members.len(), 1);
        assert!(c.members[0].is_identity());
    }

    #[test]
    fn swap_closure_contains_identity() {
        let r = Arc::new(build_trunc_st(2, 3).unwrap());
        let swap = build_endomorphism(&r, trunc_st_swap_images(2, 3), "swap").unwrap();
        let fam = MapFamily::new(&r, vec![swap], None).unwrap();
        let c = sigma_closure(&fam, false);
        // swap^2 = id, so the closure over alpha != 0 is {swap, id}
        assert_eq!(c.members.len(), 2);
        assert!(c.members.iter().any(|m| m.is_identity()));
    }

    #[test]
    fn three_map_closure_from_triangular_example() {
        let r = Arc::new(build_ut2_equal_diag(5).unwrap());
        let id = identity_map(&r);
        let neg = build_endomorphism(&r, ut2eq_negate_b_images(5), "negate_b").unwrap();
        let kill = build_endomorphism(&r, ut2eq_kill_b_images(5), "kill_b").unwrap();
        let fam = MapFamily::new(&r, vec![id, neg, kill], None).unwrap();
        let c = sigma_closure(&fam, false);
        // sigma_2^2 = id, sigma_3^2 = sigma_3, sigma_2 sigma_3 = sigma_3:
        // exactly {id, negate_b, kill_b}
        assert_eq!(c.members.len(), 3);
        let c_with_id = sigma_closure(&fam, true);
        assert_eq!(c_with_id.members.len(), 3);
    }

    #[test]
    fn closure_members_are_endomorphisms() {
        let r = Arc::new(build_ut2_equal_diag(5).unwrap());
        let id = identity_map(&r);
        let neg = build_endomorphism(&r, ut2eq_negate_b_images(5), "negate_b").unwrap();
        let kill = build_endomorphism(&r, ut2eq_kill_b_images(5), "kill_b").unwrap();
        let fam = MapFamily::new(&r, vec![id, neg, kill], None).unwrap();
        for m in sigma_closure(&fam, true).members {
            build_endomorphism(&r, m.images.clone(), m.label.clone())
                .expect("closure member must re-verify as an endomorphism");
        }
    }

    #[test]
    fn injective_family_gives_injective_members() {
        let r = Arc::new(build_gf(4).unwrap());
        let frob = build_endomorphism(&r, frobenius_images(&r), "frobenius").unwrap();
        assert!(frob.is_injective());
        let fam = MapFamily::new(&r, vec![frob], None).unwrap();
        for m in sigma_closure(&fam, true).members {
            assert!(m.is_injective());
        }
    }

    #[test]
    fn closure_is_idempotent() {
        let r = Arc::new(build_trunc_st(2, 3).unwrap());
        let swap = build_endomorphism(&r, trunc_st_swap_images(2, 3), "swap").unwrap();
        let fam = MapFamily::new(&r, vec![swap], None).unwrap();
        let c = sigma_closure(&fam, true);
        let as_family = MapFamily::new(
            &r,
            c.members
                .iter()
                .map(|m| build_endomorphism(&r, m.images.clone(), m.label.clone()).unwrap())
                .collect(),
            None,
        )
        .unwrap();
        let c2 = sigma_closure(&as_family, true);
        assert_eq!(c.members.len(), c2.members.len());
    }

    #[test]
    fn closure_size_bound_for_commuting_family() {
        let r = Arc::new(build_ut2_equal_diag(5).unwrap());
        let id = identity_map(&r);
        let neg = build_endomorphism(&r, ut2eq_negate_b_images(5), "negate_b").unwrap();
        let kill = build_endomorphism(&r, ut2eq_kill_b_images(5), "kill_b").unwrap();
        // the family commutes pairwise
        let maps = [&id, &neg, &kill];
        for a in maps {
            for b in maps {
                assert_eq!(compose(a, b).unwrap().images(), compose(b, a).unwrap().images());
            }
        }
        let fam = MapFamily::new(&r, vec![id, neg, kill], None).unwrap();
        let bound: usize = fam
            .sigmas()
            .iter()
            .map(|s| distinct_powers(&r, s).len())
            .product();
        assert!(sigma_closure(&fam, true).members.len() <= bound);
    }

    #[test]
    fn delta_closure_of_square_zero_derivation() {
        let r = Arc::new(build_trunc_t2(2).unwrap());
        let id = identity_map(&r);
        let d = build_derivation(&r, trunc_t2_derivation_images(2), &id, "d_dt").unwrap();
        let fam = MapFamily::new(&r, vec![id], Some(vec![d])).unwrap();
        let c = delta_closure(&fam, true);
        // d^2 = 0 on Z2[t]/(t^2): members are {id, d, zero}
        assert_eq!(c.members.len(), 3);
    }

    #[test]
    fn mixed_words_on_t2() {
        let r = Arc::new(build_trunc_t2(2).unwrap());
        let id = identity_map(&r);
        let d = build_derivation(&r, trunc_t2_derivation_images(2), &id, "d_dt").unwrap();
        let fam = MapFamily::new(&r, vec![id], Some(vec![d])).unwrap();
        let c = mixed_word_closure(&fam, 64).unwrap();
        assert_eq!(c.members.len(), 3); // id, d, zero
        assert!(mixed_word_closure(&fam, 1).is_err());
    }
}
