//! Skew PBW extensions over finite coefficient rings: validated
//! construction, exact degree-capped multiplication by rewriting, an
//! independent closed-form multiplication oracle, lifting of the sigma and
//! delta families to the extension, and bounded-degree probes of
//! extension-level properties.
//!
//! Elements are polynomials in normal form: finitely supported maps from
//! multi-indices to nonzero coefficients of the base ring, representing
//! left-coefficient combinations of the standard monomials
//! x_1^{a_1}..x_n^{a_n}. The rewriting engine pushes coefficients left
//! through generators via x_i r = sigma_i(r) x_i + delta_i(r) and reorders
//! generators via x_j x_i = d_{ij} x_i x_j + lower terms. Any intermediate
//! monomial above the degree cap aborts with an overflow error; nothing is
//! ever silently truncated.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::endo::{sigma_closure, MapFamily, RingMap};
use crate::finring::{Elem, FiniteRing};
use crate::rng::SplitMix64;

// ---------------------------------------------------------------------------
// Multi-indices and polynomials
// ---------------------------------------------------------------------------

/// Exponent vector of a standard monomial. Ordered by total degree, then
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex {
    exps: Vec<u32>,
}

impl MultiIndex {
    pub fn zero(n: usize) -> MultiIndex {
        MultiIndex { exps: vec![0; n] }
    }

    pub fn unit(n: usize, i: usize) -> MultiIndex {
        let mut exps = vec![0; n];
        exps[i] = 1;
        MultiIndex { exps }
    }

    pub fn new(exps: Vec<u32>) -> MultiIndex {
        MultiIndex { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn plus_unit(&self, i: usize) -> MultiIndex {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        MultiIndex { exps }
    }

    fn minus_unit(&self, i: usize) -> MultiIndex {
        let mut exps = self.exps.clone();
        debug_assert!(exps[i] > 0);
        exps[i] -= 1;
        MultiIndex { exps }
    }

    fn max_nonzero(&self) -> Option<usize> {
        (0..self.exps.len()).rev().find(|&i| self.exps[i] > 0)
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

/// An element of the extension in canonical normal form: support holds
/// strictly nonzero coefficients only, so a polynomial is zero iff its
/// support is empty (left-freeness of the monomial basis).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<MultiIndex, Elem>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, Elem)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn coeff(&self, m: &MultiIndex) -> Option<Elem> {
        self.terms.get(m).copied()
    }

    /// Coefficient of the constant monomial, zero index if absent.
    pub fn constant_coeff(&self, n: usize, zero: Elem) -> Elem {
        self.terms.get(&MultiIndex::zero(n)).copied().unwrap_or(zero)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeOverflow {
    pub degree: u32,
    pub cap: u32,
}

impl fmt::Display for DegreeOverflow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "monomial of degree {} exceeds the cap {}", self.degree, self.cap)
    }
}

impl core::error::Error for DegreeOverflow {}

// ---------------------------------------------------------------------------
// Extension data and validation
// ---------------------------------------------------------------------------

/// Raw defining data: n generators over R, sigma_i / delta_i per generator,
/// and for each pair i < j the reordering constants of
/// x_j x_i = d_{ij} x_i x_j + sum_l r_l x_l + r_0.
#[derive(Clone, Debug)]
pub struct SkewPbwData {
    pub name: String,
    pub ring: Arc<FiniteRing>,
    pub sigmas: Vec<RingMap>,
    pub deltas: Vec<RingMap>,
    /// d_{ij} for 0 <= i < j < n, in pair order (0,1), (0,2), .., (1,2), ..
    pub d: Vec<Elem>,
    /// r^{(ij)} vectors of length n+1 (index 0 is the constant slot).
    pub r_consts: Vec<Vec<Elem>>,
    pub degree_cap: u32,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionError {
    NoGenerators,
    FamilyShape { sigmas: usize, deltas: usize },
    WrongRing { index: usize },
    SigmaNotEndomorphism { index: usize },
    SigmaNotInjective { index: usize },
    SigmaNotUnital { index: usize },
    DerivationLaw { index: usize, a: Elem, b: Elem },
    PairTableShape { expected: usize, got: usize, table: &'static str },
    RVectorShape { i: usize, j: usize, expected: usize, got: usize },
    ZeroD { i: usize, j: usize },
    CapTooSmall { cap: u32 },
    Associativity { case: String, lhs: String, rhs: String },
    Overflow(DegreeOverflow),
}

impl fmt::Display for ExtensionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionError::NoGenerators => write!(f, "extension needs at least one generator"),
            ExtensionError::FamilyShape { sigmas, deltas } => {
                write!(f, "{sigmas} sigmas but {deltas} deltas")
            }
            ExtensionError::WrongRing { index } => {
                write!(f, "map {index} lives on a different ring")
            }
            ExtensionError::SigmaNotEndomorphism { index } => {
                write!(f, "sigma_{} is not a ring endomorphism", index + 1)
            }
            ExtensionError::SigmaNotInjective { index } => {
                write!(f, "sigma_{} is not injective", index + 1)
            }
            ExtensionError::SigmaNotUnital { index } => {
                write!(f, "sigma_{} does not fix 1", index + 1)
            }
            ExtensionError::DerivationLaw { index, a, b } => {
                write!(f, "delta_{} violates the derivation law at ({a}, {b})", index + 1)
            }
            ExtensionError::PairTableShape { expected, got, table } => {
                write!(f, "{table} table has {got} entries, expected {expected}")
            }
            ExtensionError::RVectorShape { i, j, expected, got } => {
                write!(
                    f,
                    "r vector for pair ({}, {}) has {got} entries, expected {expected}",
                    i + 1,
                    j + 1
                )
            }
            ExtensionError::ZeroD { i, j } => {
                write!(f, "d_{{{},{}}} must be nonzero", i + 1, j + 1)
            }
            ExtensionError::CapTooSmall { cap } => {
                write!(f, "degree cap {cap} is below 3, too small for the associativity probe")
            }
            ExtensionError::Associativity { case, lhs, rhs } => {
                write!(f, "associativity probe failed at {case}: {lhs} vs {rhs}")
            }
            ExtensionError::Overflow(o) => write!(f, "overflow during validation: {o}"),
        }
    }
}

impl core::error::Error for ExtensionError {}

impl From<DegreeOverflow> for ExtensionError {
    fn from(o: DegreeOverflow) -> Self {
        ExtensionError::Overflow(o)
    }
}

/// A validated skew PBW extension with its derived classification flags.
#[derive(Clone, Debug)]
pub struct Extension {
    data: SkewPbwData,
    quasi_commutative: bool,
    bijective: bool,
    derivation_type: bool,
    endomorphism_type: bool,
}

/// Validate the data and run the generator-triple associativity probe.
///
/// Associativity of the rewriting system is not assumed from the data:
/// arbitrary (sigma, delta, d, r) constants need not give an associative
/// algebra, so (x_k x_j) x_i vs x_k (x_j x_i), (x_j x_i) r vs x_j (x_i r)
/// and (x_i r) s vs x_i (rs) are all compared in normal form before an
/// `Extension` is handed out.
pub fn build_extension(data: SkewPbwData) -> Result<Extension, ExtensionError> {
    let n = data.sigmas.len();
    if n == 0 {
        return Err(ExtensionError::NoGenerators);
    }
    if data.deltas.len() != n {
        return Err(ExtensionError::FamilyShape { sigmas: n, deltas: data.deltas.len() });
    }
    if data.degree_cap < 3 {
        return Err(ExtensionError::CapTooSmall { cap: data.degree_cap });
    }
    let ring = &data.ring;
    for (i, s) in data.sigmas.iter().enumerate() {
        if s.ring().as_ref() != ring.as_ref() {
            return Err(ExtensionError::WrongRing { index: i });
        }
        if !s.is_additive() || !s.is_multiplicative() {
            return Err(ExtensionError::SigmaNotEndomorphism { index: i });
        }
        if !s.is_injective() {
            return Err(ExtensionError::SigmaNotInjective { index: i });
        }
        if !s.is_unital() {
            return Err(ExtensionError::SigmaNotUnital { index: i });
        }
    }
    for (i, d) in data.deltas.iter().enumerate() {
        if d.ring().as_ref() != ring.as_ref() {
            return Err(ExtensionError::WrongRing { index: i });
        }
        for a in ring.elements() {
            for b in ring.elements() {
                let lhs = d.apply(ring.mul(a, b));
                let rhs = ring.add(
                    ring.mul(data.sigmas[i].apply(a), d.apply(b)),
                    ring.mul(d.apply(a), b),
                );
                if lhs != rhs {
                    return Err(ExtensionError::DerivationLaw { index: i, a, b });
                }
            }
        }
    }
    let pairs = n * (n - 1) / 2;
    if data.d.len() != pairs {
        return Err(ExtensionError::PairTableShape { expected: pairs, got: data.d.len(), table: "d" });
    }
    if data.r_consts.len() != pairs {
        return Err(ExtensionError::PairTableShape {
            expected: pairs,
            got: data.r_consts.len(),
            table: "r",
        });
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let p = pair_index(n, i, j);
            if data.d[p] == ring.zero() {
                return Err(ExtensionError::ZeroD { i, j });
            }
            if data.r_consts[p].len() != n + 1 {
                return Err(ExtensionError::RVectorShape {
                    i,
                    j,
                    expected: n + 1,
                    got: data.r_consts[p].len(),
                });
            }
        }
    }

    let derivation_type = data.sigmas.iter().all(|s| s.is_identity());
    let endomorphism_type = data.deltas.iter().all(|d| d.is_zero());
    let quasi_commutative = endomorphism_type
        && data.r_consts.iter().all(|v| v.iter().all(|&r| r == ring.zero()));
    let bijective = data.sigmas.iter().all(|s| s.is_surjective())
        && data.d.iter().all(|&d| ring.is_unit(d));

    let ext = Extension { data, quasi_commutative, bijective, derivation_type, endomorphism_type };

    ext.associativity_probe()?;
    Ok(ext)
}

impl Extension {
    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.data.ring
    }

    pub fn n(&self) -> usize {
        self.data.sigmas.len()
    }

    pub fn degree_cap(&self) -> u32 {
        self.data.degree_cap
    }

    pub fn sigma(&self, i: usize) -> &RingMap {
        &self.data.sigmas[i]
    }

    pub fn delta(&self, i: usize) -> &RingMap {
        &self.data.deltas[i]
    }

    pub fn d_const(&self, i: usize, j: usize) -> Elem {
        self.data.d[pair_index(self.n(), i, j)]
    }

    pub fn r_vector(&self, i: usize, j: usize) -> &[Elem] {
        &self.data.r_consts[pair_index(self.n(), i, j)]
    }

    pub fn is_quasi_commutative(&self) -> bool {
        self.quasi_commutative
    }

    pub fn is_bijective(&self) -> bool {
        self.bijective
    }

    pub fn is_derivation_type(&self) -> bool {
        self.derivation_type
    }

    pub fn is_endomorphism_type(&self) -> bool {
        self.endomorphism_type
    }

    /// The sigma/delta family of the extension, for predicate checks on R.
    pub fn family(&self) -> MapFamily {
        MapFamily::new(&self.data.ring, self.data.sigmas.clone(), Some(self.data.deltas.clone()))
            .expect("extension data was validated")
    }

    // -- constructors for elements ------------------------------------------

    pub fn constant(&self, r: Elem) -> Polynomial {
        let mut p = Polynomial::zero();
        if r != self.data.ring.zero() {
            p.terms.insert(MultiIndex::zero(self.n()), r);
        }
        p
    }

    pub fn one_poly(&self) -> Polynomial {
        self.constant(self.data.ring.one())
    }

    pub fn generator(&self, i: usize) -> Polynomial {
        let mut p = Polynomial::zero();
        p.terms.insert(MultiIndex::unit(self.n(), i), self.data.ring.one());
        p
    }

    pub fn monomial(&self, exps: &[u32], coeff: Elem) -> Result<Polynomial, DegreeOverflow> {
        let m = MultiIndex::new(exps.to_vec());
        self.check_degree(&m)?;
        let mut p = Polynomial::zero();
        if coeff != self.data.ring.zero() {
            p.terms.insert(m, coeff);
        }
        Ok(p)
    }

    fn check_degree(&self, m: &MultiIndex) -> Result<(), DegreeOverflow> {
        let d = m.degree();
        if d > self.data.degree_cap {
            Err(DegreeOverflow { degree: d, cap: self.data.degree_cap })
        } else {
            Ok(())
        }
    }

    // -- additive structure --------------------------------------------------

    fn insert_term(&self, p: &mut Polynomial, m: MultiIndex, c: Elem) {
        if c == self.data.ring.zero() {
            return;
        }
        let ring = &self.data.ring;
        match p.terms.get_mut(&m) {
            Some(existing) => {
                let sum = ring.add(*existing, c);
                if sum == ring.zero() {
                    p.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                p.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut out = f.clone();
        for (m, c) in g.terms() {
            self.insert_term(&mut out, m.clone(), c);
        }
        out
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        let ring = &self.data.ring;
        Polynomial {
            terms: f.terms.iter().map(|(m, &c)| (m.clone(), ring.neg(c))).collect(),
        }
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.add(f, &self.neg(g))
    }

    /// Left module action r·f.
    pub fn scale_left(&self, r: Elem, f: &Polynomial) -> Polynomial {
        let ring = &self.data.ring;
        let mut out = Polynomial::zero();
        for (m, c) in f.terms() {
            self.insert_term(&mut out, m.clone(), ring.mul(r, c));
        }
        out
    }

    // -- rewriting engine -----------------------------------------------------

    /// x^alpha · b in normal form, by peeling the last generator through
    /// x_i r = sigma_i(r) x_i + delta_i(r).
    fn push_coeff(&self, alpha: &MultiIndex, b: Elem) -> Result<Polynomial, DegreeOverflow> {
        let ring = &self.data.ring;
        if b == ring.zero() {
            return Ok(Polynomial::zero());
        }
        let Some(i) = alpha.max_nonzero() else {
            return Ok(self.constant(b));
        };
        let alpha_prev = alpha.minus_unit(i);
        let p1 = self.push_coeff(&alpha_prev, self.data.sigmas[i].apply(b))?;
        let mut out = Polynomial::zero();
        for (m, c) in p1.terms() {
            // monomials of p1 stay componentwise below alpha_prev, so the
            // appended x_i lands in standard position
            debug_assert!(m.exps().iter().skip(i + 1).all(|&e| e == 0));
            let shifted = m.plus_unit(i);
            self.check_degree(&shifted)?;
            self.insert_term(&mut out, shifted, c);
        }
        let p2 = self.push_coeff(&alpha_prev, self.data.deltas[i].apply(b))?;
        Ok(self.add(&out, &p2))
    }

    /// x^gamma · x_k in normal form. Direct exponent increment when gamma
    /// has no generator above x_k; otherwise one reordering step through
    /// x_j x_k = d_{kj} x_k x_j + sum_l r_l x_l with j the top generator.
    fn mon_times_generator(
        &self,
        gamma: &MultiIndex,
        k: usize,
    ) -> Result<Polynomial, DegreeOverflow> {
        let ring = &self.data.ring;
        let above = gamma.exps().iter().enumerate().any(|(j, &e)| j > k && e > 0);
        if !above {
            let m = gamma.plus_unit(k);
            self.check_degree(&m)?;
            let mut p = Polynomial::zero();
            p.terms.insert(m, ring.one());
            return Ok(p);
        }
        let j = gamma.max_nonzero().expect("nonzero entry above k exists");
        debug_assert!(j > k);
        let rest = gamma.minus_unit(j);
        let pair = pair_index(self.n(), k, j);

        // d-term: x^rest · d_{kj} · x_k · x_j
        let mut out = Polynomial::zero();
        let pd = self.push_coeff(&rest, self.data.d[pair])?;
        let pd = self.times_generator(&pd, k)?;
        let pd = self.times_generator(&pd, j)?;
        out = self.add(&out, &pd);

        // lower terms: x^rest · r_l · x_l (r_0 is the constant slot)
        for (slot, &rl) in self.data.r_consts[pair].iter().enumerate() {
            if rl == ring.zero() {
                continue;
            }
            let pr = self.push_coeff(&rest, rl)?;
            let piece = if slot == 0 { pr } else { self.times_generator(&pr, slot - 1)? };
            out = self.add(&out, &piece);
        }
        Ok(out)
    }

    fn times_generator(&self, f: &Polynomial, k: usize) -> Result<Polynomial, DegreeOverflow> {
        let mut out = Polynomial::zero();
        for (m, c) in f.terms() {
            let p = self.mon_times_generator(m, k)?;
            let scaled = self.scale_left(c, &p);
            out = self.add(&out, &scaled);
        }
        Ok(out)
    }

    /// Exact product in normal form. Aborts with an overflow error if any
    /// intermediate or final monomial exceeds the degree cap.
    pub fn multiply(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, DegreeOverflow> {
        let mut out = Polynomial::zero();
        for (alpha, a) in f.terms() {
            for (beta, b) in g.terms() {
                // a·x^alpha·b·x^beta: push b through x^alpha, scale by a,
                // then append x^beta one generator at a time in order
                let mut p = self.push_coeff(alpha, b)?;
                p = self.scale_left(a, &p);
                for (k, &e) in beta.exps().iter().enumerate() {
                    for _ in 0..e {
                        p = self.times_generator(&p, k)?;
                    }
                }
                out = self.add(&out, &p);
            }
        }
        Ok(out)
    }

    /// Product of a list, associated to the left.
    pub fn multiply_all(&self, fs: &[&Polynomial]) -> Result<Polynomial, DegreeOverflow> {
        let mut acc = self.one_poly();
        for f in fs {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    // -- closed-form oracle ---------------------------------------------------

    /// x_i^m · c in one variable by the closed formula
    /// x^m c = sum_{j=1..m} x^{m-j} delta(sigma^{j-1}(c)) x^{j-1} + sigma^m(c) x^m,
    /// recursing only through the formula itself.
    fn oracle_single(&self, i: usize, m: u32, c: Elem) -> Polynomial {
        let ring = &self.data.ring;
        if c == ring.zero() {
            return Polynomial::zero();
        }
        let sigma = &self.data.sigmas[i];
        let delta = &self.data.deltas[i];

        let mut out = Polynomial::zero();
        let mut top = c;
        for _ in 0..m {
            top = sigma.apply(top);
        }
        let mut mon = MultiIndex::zero(self.n());
        mon.exps[i] = m;
        self.insert_term(&mut out, mon, top);

        let mut s_pow = c;
        for j in 1..=m {
            // s_pow = sigma^{j-1}(c)
            let dval = delta.apply(s_pow);
            if dval != ring.zero() {
                let mid = self.oracle_single(i, m - j, dval);
                for (mu, cc) in mid.terms() {
                    let mut shifted = mu.clone();
                    shifted.exps[i] += j - 1;
                    self.insert_term(&mut out, shifted, cc);
                }
            }
            s_pow = sigma.apply(s_pow);
        }
        out
    }

    /// x^alpha · r by the nested closed formula, computed independently of
    /// the rewriting engine; used purely for differential testing.
    pub fn monomial_action_oracle(
        &self,
        alpha: &[u32],
        r: Elem,
    ) -> Result<Polynomial, DegreeOverflow> {
        let m = MultiIndex::new(alpha.to_vec());
        self.check_degree(&m)?;
        Ok(self.oracle_rec(alpha, r))
    }

    fn oracle_rec(&self, alpha: &[u32], r: Elem) -> Polynomial {
        let ring = &self.data.ring;
        let n = self.n();
        if r == ring.zero() {
            return Polynomial::zero();
        }
        if alpha.iter().all(|&a| a == 0) {
            return self.constant(r);
        }

        // c_i = sigma_{i+1}^{a_{i+1}}( ... sigma_n^{a_n}(r) ... )
        let mut cvals = vec![ring.zero(); n];
        cvals[n - 1] = r;
        for i in (0..n.saturating_sub(1)).rev() {
            let mut v = cvals[i + 1];
            for _ in 0..alpha[i + 1] {
                v = self.data.sigmas[i + 1].apply(v);
            }
            cvals[i] = v;
        }

        let mut out = Polynomial::zero();

        // sigma term: sigma^alpha(r) x^alpha
        let mut top = cvals[0];
        for _ in 0..alpha[0] {
            top = self.data.sigmas[0].apply(top);
        }
        self.insert_term(&mut out, MultiIndex::new(alpha.to_vec()), top);

        // delta blocks per variable
        for i in 0..n {
            let mut s_pow = cvals[i];
            for j in 1..=alpha[i] {
                // s_pow = sigma_i^{j-1}(c_i)
                let dval = self.data.deltas[i].apply(s_pow);
                s_pow = self.data.sigmas[i].apply(s_pow);
                if dval == ring.zero() {
                    continue;
                }
                // middle block x_i^{a_i - j} dval, then shift by x_i^{j-1}
                let mid = self.oracle_single(i, alpha[i] - j, dval);
                for (mu, c_mid) in mid.terms() {
                    let exp_i = mu.exps()[i] + (j - 1);
                    // prefix x_1^{a_1}..x_{i-1}^{a_{i-1}} · c_mid, a strictly
                    // smaller instance of the same formula
                    let mut prefix_alpha = vec![0u32; n];
                    prefix_alpha[..i].copy_from_slice(&alpha[..i]);
                    let pre = self.oracle_rec(&prefix_alpha, c_mid);
                    for (gamma, c_pre) in pre.terms() {
                        let mut exps = gamma.exps().to_vec();
                        debug_assert!(exps[i..].iter().all(|&e| e == 0));
                        exps[i] = exp_i;
                        exps[(i + 1)..n].copy_from_slice(&alpha[(i + 1)..n]);
                        self.insert_term(&mut out, MultiIndex::new(exps), c_pre);
                    }
                }
            }
        }
        out
    }

    // -- associativity probe ----------------------------------------------------

    fn associativity_probe(&self) -> Result<(), ExtensionError> {
        let ring = &self.data.ring;
        let n = self.n();
        let gens: Vec<Polynomial> = (0..n).map(|i| self.generator(i)).collect();

        for k in 0..n {
            for j in 0..n {
                for i in 0..n {
                    let left = self.multiply(&self.multiply(&gens[k], &gens[j])?, &gens[i])?;
                    let right = self.multiply(&gens[k], &self.multiply(&gens[j], &gens[i])?)?;
                    if left != right {
                        return Err(ExtensionError::Associativity {
                            case: format!("(x{}·x{})·x{}", k + 1, j + 1, i + 1),
                            lhs: self.format_poly(&left),
                            rhs: self.format_poly(&right),
                        });
                    }
                }
            }
        }
        for j in 0..n {
            for i in 0..n {
                for r in ring.elements() {
                    let c = self.constant(r);
                    let left = self.multiply(&self.multiply(&gens[j], &gens[i])?, &c)?;
                    let right = self.multiply(&gens[j], &self.multiply(&gens[i], &c)?)?;
                    if left != right {
                        return Err(ExtensionError::Associativity {
                            case: format!("(x{}·x{})·{}", j + 1, i + 1, ring.label(r)),
                            lhs: self.format_poly(&left),
                            rhs: self.format_poly(&right),
                        });
                    }
                }
            }
        }
        for i in 0..n {
            for r in ring.elements() {
                for s in ring.elements() {
                    let cr = self.constant(r);
                    let cs = self.constant(s);
                    let left = self.multiply(&self.multiply(&gens[i], &cr)?, &cs)?;
                    let right = self.multiply(&gens[i], &self.constant(ring.mul(r, s)))?;
                    if left != right {
                        return Err(ExtensionError::Associativity {
                            case: format!("(x{}·{})·{}", i + 1, ring.label(r), ring.label(s)),
                            lhs: self.format_poly(&left),
                            rhs: self.format_poly(&right),
                        });
                    }
                    let _ = cs;
                }
            }
        }
        Ok(())
    }

    // -- display -------------------------------------------------------------

    pub fn format_poly(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let ring = &self.data.ring;
        let mut parts = Vec::new();
        for (m, c) in f.terms() {
            let mon = self.format_monomial(m);
            let lab = ring.label(c);
            let part = if m.is_zero() {
                lab.to_string()
            } else if c == ring.one() {
                mon
            } else if lab.contains('+') {
                format!("({lab})·{mon}")
            } else {
                format!("{lab}·{mon}")
            };
            parts.push(part);
        }
        parts.join(" + ")
    }

    fn format_monomial(&self, m: &MultiIndex) -> String {
        if m.is_zero() {
            return "1".to_string();
        }
        let n = self.n();
        let mut parts = Vec::new();
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let var = if n == 1 { "x".to_string() } else { format!("x{}", i + 1) };
            parts.push(if e == 1 { var } else { format!("{var}^{e}") });
        }
        parts.join("·")
    }
}

// ---------------------------------------------------------------------------
// Lifting sigma and delta to the extension
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftError {
    SigmaDeltaCommute { i: usize, j: usize, at: Elem },
    DeltaDeltaCommute { i: usize, j: usize, at: Elem },
    DeltaOnD { k: usize, i: usize, j: usize },
    DeltaOnR { k: usize, i: usize, j: usize, slot: usize },
    /// The lifted maps failed their sample validation; this signals a bug
    /// in the engine, not bad input data.
    PostValidation { detail: String },
    Overflow(DegreeOverflow),
}

impl fmt::Display for LiftError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftError::SigmaDeltaCommute { i, j, at } => write!(
                f,
                "sigma_{}∘delta_{} != delta_{}∘sigma_{} at element {at}",
                i + 1,
                j + 1,
                j + 1,
                i + 1
            ),
            LiftError::DeltaDeltaCommute { i, j, at } => write!(
                f,
                "delta_{}∘delta_{} != delta_{}∘delta_{} at element {at}",
                i + 1,
                j + 1,
                j + 1,
                i + 1
            ),
            LiftError::DeltaOnD { k, i, j } => write!(
                f,
                "delta_{} does not kill d_{{{},{}}}",
                k + 1,
                i + 1,
                j + 1
            ),
            LiftError::DeltaOnR { k, i, j, slot } => write!(
                f,
                "delta_{} does not kill r_{}^{{({},{})}}",
                k + 1,
                slot,
                i + 1,
                j + 1
            ),
            LiftError::PostValidation { detail } => {
                write!(f, "lifted maps failed sample validation: {detail}")
            }
            LiftError::Overflow(o) => write!(f, "overflow during lift validation: {o}"),
        }
    }
}

impl core::error::Error for LiftError {}

impl From<DegreeOverflow> for LiftError {
    fn from(o: DegreeOverflow) -> Self {
        LiftError::Overflow(o)
    }
}

/// Coefficient-wise lifts of the sigma and delta families to the extension.
#[derive(Debug)]
pub struct LiftedMaps<'a> {
    ext: &'a Extension,
}

impl LiftedMaps<'_> {
    /// sigma_bar_k applied coefficient-wise; restricted to constants it is
    /// exactly sigma_k.
    pub fn sigma_bar(&self, k: usize, f: &Polynomial) -> Polynomial {
        let sigma = &self.ext.data.sigmas[k];
        let mut out = Polynomial::zero();
        for (m, c) in f.terms() {
            self.ext.insert_term(&mut out, m.clone(), sigma.apply(c));
        }
        out
    }

    pub fn delta_bar(&self, k: usize, f: &Polynomial) -> Polynomial {
        let delta = &self.ext.data.deltas[k];
        let mut out = Polynomial::zero();
        for (m, c) in f.terms() {
            self.ext.insert_term(&mut out, m.clone(), delta.apply(c));
        }
        out
    }

    /// Apply an arbitrary coefficient map (e.g. a closure member).
    pub fn apply_coefficientwise(
        &self,
        images: &[Elem],
        f: &Polynomial,
    ) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in f.terms() {
            self.ext.insert_term(&mut out, m.clone(), images[c as usize]);
        }
        out
    }
}

impl Extension {
    /// Verify the lifting hypotheses exhaustively on R (sigma_i delta_j =
    /// delta_j sigma_i, delta_i delta_j = delta_j delta_i, and the deltas
    /// kill every d and r constant), then hand out the coefficient-wise
    /// lifts after validating them on a bounded sample of products.
    pub fn lift_maps(&self, sample_budget: u64) -> Result<LiftedMaps<'_>, LiftError> {
        let ring = &self.data.ring;
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                for a in ring.elements() {
                    let sd = self.data.sigmas[i].apply(self.data.deltas[j].apply(a));
                    let ds = self.data.deltas[j].apply(self.data.sigmas[i].apply(a));
                    if sd != ds {
                        return Err(LiftError::SigmaDeltaCommute { i, j, at: a });
                    }
                }
                if i < j {
                    for a in ring.elements() {
                        let dd = self.data.deltas[i].apply(self.data.deltas[j].apply(a));
                        let dd2 = self.data.deltas[j].apply(self.data.deltas[i].apply(a));
                        if dd != dd2 {
                            return Err(LiftError::DeltaDeltaCommute { i, j, at: a });
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let p = pair_index(n, i, j);
                for k in 0..n {
                    if self.data.deltas[k].apply(self.data.d[p]) != ring.zero() {
                        return Err(LiftError::DeltaOnD { k, i, j });
                    }
                    for (slot, &rl) in self.data.r_consts[p].iter().enumerate() {
                        if self.data.deltas[k].apply(rl) != ring.zero() {
                            return Err(LiftError::DeltaOnR { k, i, j, slot });
                        }
                    }
                }
            }
        }

        let lifted = LiftedMaps { ext: self };
        self.validate_lift(&lifted, sample_budget)?;
        Ok(lifted)
    }

    /// Sample check that each sigma_bar is multiplicative and unital and
    /// each delta_bar satisfies the sigma_bar-derivation law: exhaustive
    /// over single-term pairs of monomial degree <= 2 (budget capped),
    /// plus a handful of seeded two-term pairs. Additivity holds by
    /// construction for coefficient-wise maps.
    fn validate_lift(&self, lifted: &LiftedMaps<'_>, budget: u64) -> Result<(), LiftError> {
        let ring = &self.data.ring;
        let n = self.n();
        let max_deg = 2u32.min(self.data.degree_cap.saturating_sub(1));
        let monomials = monomials_up_to(n, max_deg);

        let mut spent = 0u64;
        let mut singles: Vec<Polynomial> = Vec::new();
        'build: for m in &monomials {
            for c in ring.elements() {
                if c == ring.zero() {
                    continue;
                }
                singles.push(self.monomial(m.exps(), c).expect("degree within cap"));
                if singles.len() as u64 * singles.len() as u64 > budget {
                    break 'build;
                }
            }
        }

        let check_pair = |f: &Polynomial, g: &Polynomial| -> Result<(), LiftError> {
            let fg = self.multiply(f, g)?;
            for k in 0..n {
                let lhs = lifted.sigma_bar(k, &fg);
                let rhs = self.multiply(&lifted.sigma_bar(k, f), &lifted.sigma_bar(k, g))?;
                if lhs != rhs {
                    return Err(LiftError::PostValidation {
                        detail: format!(
                            "sigma_bar_{} not multiplicative on ({}, {})",
                            k + 1,
                            self.format_poly(f),
                            self.format_poly(g)
                        ),
                    });
                }
                let dl = lifted.delta_bar(k, &fg);
                let dr = self.add(
                    &self.multiply(&lifted.sigma_bar(k, f), &lifted.delta_bar(k, g))?,
                    &self.multiply(&lifted.delta_bar(k, f), g)?,
                );
                if dl != dr {
                    return Err(LiftError::PostValidation {
                        detail: format!(
                            "delta_bar_{} breaks the derivation law on ({}, {})",
                            k + 1,
                            self.format_poly(f),
                            self.format_poly(g)
                        ),
                    });
                }
            }
            Ok(())
        };

        for f in &singles {
            for g in &singles {
                if spent >= budget {
                    break;
                }
                check_pair(f, g)?;
                spent += 1;
            }
        }

        // seeded multi-term pairs
        let mut rng = SplitMix64::new(0x5eed);
        for _ in 0..32 {
            if singles.len() < 2 {
                break;
            }
            let pick = |rng: &mut SplitMix64| {
                let i = rng.below(singles.len() as u64) as usize;
                let j = rng.below(singles.len() as u64) as usize;
                // sum of two sampled single terms
                self.add(&singles[i], &singles[j])
            };
            let f = pick(&mut rng);
            let g = pick(&mut rng);
            check_pair(&f, &g)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Bounded probes of extension-level properties
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeProperty {
    Semicommutative,
    Reduced,
    Abelian,
    SigmaBarSemicommutative,
    Sa1,
    Sqa1,
    SigmaSkewArmendariz,
    SkewArmendariz,
    BoundedBaer,
}

impl ProbeProperty {
    pub fn name(self) -> &'static str {
        match self {
            ProbeProperty::Semicommutative => "semicommutative",
            ProbeProperty::Reduced => "reduced",
            ProbeProperty::Abelian => "abelian",
            ProbeProperty::SigmaBarSemicommutative => "sigma_bar_semicommutative",
            ProbeProperty::Sa1 => "sa1",
            ProbeProperty::Sqa1 => "sqa1",
            ProbeProperty::SigmaSkewArmendariz => "sigma_skew_armendariz",
            ProbeProperty::SkewArmendariz => "skew_armendariz",
            ProbeProperty::BoundedBaer => "bounded_baer",
        }
    }

    pub fn all() -> &'static [ProbeProperty] {
        &[
            ProbeProperty::Semicommutative,
            ProbeProperty::Reduced,
            ProbeProperty::Abelian,
            ProbeProperty::SigmaBarSemicommutative,
            ProbeProperty::Sa1,
            ProbeProperty::Sqa1,
            ProbeProperty::SigmaSkewArmendariz,
            ProbeProperty::SkewArmendariz,
            ProbeProperty::BoundedBaer,
        ]
    }
}

/// Search budget. Candidates are enumerated exhaustively when the count
/// stays below `exhaustive_limit`, otherwise `sample_count` candidates are
/// drawn from the seeded stream. `max_products` bounds the total number of
/// engine multiplications.
#[derive(Clone, Debug)]
pub struct ProbeBudget {
    pub degree: u32,
    pub support: usize,
    pub exhaustive_limit: u64,
    pub sample_count: u64,
    pub max_products: u64,
    pub seed: u64,
}

impl Default for ProbeBudget {
    fn default() -> Self {
        ProbeBudget {
            degree: 2,
            support: 2,
            exhaustive_limit: 100_000,
            sample_count: 2_000,
            max_products: 10_000_000,
            seed: 0,
        }
    }
}

/// A definitive counterexample: every part re-checks exactly against the
/// engine (the witness polynomials, the closure label if any, and the
/// violated identity described in `detail`).
#[derive(Clone, Debug)]
pub struct ProbeWitness {
    pub property: ProbeProperty,
    pub parts: Vec<(&'static str, Polynomial)>,
    pub map_label: Option<String>,
    pub detail: String,
}

/// Exact description of the space a none_found verdict covered.
#[derive(Clone, Debug)]
pub struct SearchManifest {
    pub property: ProbeProperty,
    pub degree: u32,
    pub support: usize,
    pub mode: String,
    pub candidates: u64,
    pub products: u64,
    pub skipped_overflow: u64,
    pub notes: Vec<String>,
}

/// Probes are semi-decision procedures: the extension is infinite, so
/// `NoneFound` is explicitly inconclusive and carries the covered space.
#[derive(Clone, Debug)]
pub enum ProbeOutcome {
    Counterexample(ProbeWitness),
    NoneFound(SearchManifest),
}

impl ProbeOutcome {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, ProbeOutcome::Counterexample(_))
    }
}

fn monomials_up_to(n: usize, degree: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    loop {
        if current.iter().sum::<u32>() <= degree {
            out.push(MultiIndex::new(current.clone()));
        }
        // odometer bounded per-coordinate by `degree`
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            current[i] += 1;
            if current[i] <= degree {
                break;
            }
            current[i] = 0;
            i += 1;
        }
    }
}

fn combinations(m: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..size).collect();
    if size == 0 || size > m {
        return out;
    }
    loop {
        out.push(idx.clone());
        // next combination in lexicographic order
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + m - size {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

struct CandidateSpace {
    candidates: Vec<Polynomial>,
    mode: String,
}

fn build_candidates(ext: &Extension, budget: &ProbeBudget) -> CandidateSpace {
    let ring = ext.ring();
    let q = ring.order() as u64;
    let monomials = monomials_up_to(ext.n(), budget.degree.min(ext.degree_cap()));
    let m = monomials.len();

    let mut total: u64 = 0;
    for size in 1..=budget.support.min(m) {
        let combos = combinations(m, size).len() as u64;
        total = total.saturating_add(combos.saturating_mul((q - 1).saturating_pow(size as u32)));
    }

    if total <= budget.exhaustive_limit {
        let mut out = Vec::with_capacity(total as usize);
        for size in 1..=budget.support.min(m) {
            for combo in combinations(m, size) {
                // odometer over nonzero coefficients, first slot slowest
                let mut coeffs = vec![1 as Elem; size];
                loop {
                    let mut p = Polynomial::zero();
                    for (slot, &mi) in combo.iter().enumerate() {
                        p.terms.insert(monomials[mi].clone(), coeffs[slot]);
                    }
                    out.push(p);
                    let mut slot = size;
                    loop {
                        if slot == 0 {
                            break;
                        }
                        slot -= 1;
                        coeffs[slot] += 1;
                        if (coeffs[slot] as u64) < q {
                            break;
                        }
                        coeffs[slot] = 1;
                        if slot == 0 {
                            slot = usize::MAX;
                            break;
                        }
                    }
                    if slot == usize::MAX {
                        break;
                    }
                }
            }
        }
        CandidateSpace { candidates: out, mode: format!("exhaustive ({} candidates)", total) }
    } else {
        let mut rng = SplitMix64::new(budget.seed);
        let mut out = Vec::with_capacity(budget.sample_count as usize);
        for _ in 0..budget.sample_count {
            let size = 1 + rng.below(budget.support.min(m) as u64) as usize;
            let mut chosen = Vec::new();
            while chosen.len() < size {
                let mi = rng.below(m as u64) as usize;
                if !chosen.contains(&mi) {
                    chosen.push(mi);
                }
            }
            let mut p = Polynomial::zero();
            for &mi in &chosen {
                let c = 1 + rng.below(q - 1) as Elem;
                p.terms.insert(monomials[mi].clone(), c);
            }
            out.push(p);
        }
        CandidateSpace {
            candidates: out,
            mode: format!(
                "seeded sample ({} of {} candidates, seed {})",
                budget.sample_count, total, budget.seed
            ),
        }
    }
}

/// Single-term elements c·x^mu spanning the bounded slice of A; testing a
/// linear condition against all of them is equivalent to testing it
/// against every polynomial in the slice.
fn single_terms(ext: &Extension, degree: u32) -> Vec<Polynomial> {
    let ring = ext.ring();
    let mut out = Vec::new();
    for m in monomials_up_to(ext.n(), degree.min(ext.degree_cap())) {
        for c in ring.elements() {
            if c == ring.zero() {
                continue;
            }
            out.push(ext.monomial(m.exps(), c).expect("degree within cap"));
        }
    }
    out
}

struct ProbeRun<'a> {
    ext: &'a Extension,
    products: u64,
    skipped: u64,
    max_products: u64,
    exhausted: bool,
}

impl<'a> ProbeRun<'a> {
    fn mul(&mut self, f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
        if self.products >= self.max_products {
            self.exhausted = true;
            return None;
        }
        self.products += 1;
        match self.ext.multiply(f, g) {
            Ok(p) => Some(p),
            Err(_) => {
                self.skipped += 1;
                None
            }
        }
    }
}

impl Extension {
    /// Search for a counterexample to `property` within the budget.
    pub fn probe(&self, property: ProbeProperty, budget: &ProbeBudget) -> ProbeOutcome {
        let space = build_candidates(self, budget);
        let singles = single_terms(self, budget.degree);
        let mut run = ProbeRun {
            ext: self,
            products: 0,
            skipped: 0,
            max_products: budget.max_products,
            exhausted: false,
        };
        let mut notes: Vec<String> = Vec::new();

        let witness = match property {
            ProbeProperty::Reduced => self.probe_reduced(&space, &mut run),
            ProbeProperty::Semicommutative => {
                self.probe_semicommutative(&space, &singles, &mut run)
            }
            ProbeProperty::Abelian => self.probe_abelian(&space, &singles, &mut run),
            ProbeProperty::SigmaBarSemicommutative => {
                self.probe_sigma_bar_semicommutative(&space, &singles, &mut run)
            }
            ProbeProperty::Sa1 => self.probe_sa1(&space, &mut run),
            ProbeProperty::Sqa1 => self.probe_sqa1(&space, &singles, &mut run, &mut notes),
            ProbeProperty::SigmaSkewArmendariz => self.probe_sigma_skew_armendariz(&space, &mut run),
            ProbeProperty::SkewArmendariz => self.probe_skew_armendariz(&space, &mut run),
            ProbeProperty::BoundedBaer => self.probe_bounded_baer(&space, &mut run, &mut notes),
        };

        match witness {
            Some(w) => ProbeOutcome::Counterexample(w),
            None => {
                if run.exhausted {
                    notes.push(format!(
                        "product budget of {} exhausted; coverage is partial",
                        budget.max_products
                    ));
                }
                ProbeOutcome::NoneFound(SearchManifest {
                    property,
                    degree: budget.degree,
                    support: budget.support,
                    mode: space.mode,
                    candidates: space.candidates.len() as u64,
                    products: run.products,
                    skipped_overflow: run.skipped,
                    notes,
                })
            }
        }
    }

    fn probe_reduced(&self, space: &CandidateSpace, run: &mut ProbeRun) -> Option<ProbeWitness> {
        for f in &space.candidates {
            let sq = run.mul(f, f)?;
            if sq.is_zero() {
                return Some(ProbeWitness {
                    property: ProbeProperty::Reduced,
                    parts: vec![("f", f.clone())],
                    map_label: None,
                    detail: format!("f = {} is nonzero with f² = 0", self.format_poly(f)),
                });
            }
        }
        None
    }

    fn probe_semicommutative(
        &self,
        space: &CandidateSpace,
        singles: &[Polynomial],
        run: &mut ProbeRun,
    ) -> Option<ProbeWitness> {
        for f in &space.candidates {
            for g in &space.candidates {
                let fg = match run.mul(f, g) {
                    Some(p) => p,
                    None => {
                        if run.exhausted {
                            return None;
                        }
                        continue;
                    }
                };
                if !fg.is_zero() {
                    continue;
                }
                for h in singles {
                    let fh = match run.mul(f, h) {
                        Some(p) => p,
                        None => {
                            if run.exhausted {
                                return None;
                            }
                            continue;
                        }
                    };
                    let fhg = match run.mul(&fh, g) {
                        Some(p) => p,
                        None => {
                            if run.exhausted {
                                return None;
                            }
                            continue;
                        }
                    };
                    if !fhg.is_zero() {
                        return Some(ProbeWitness {
                            property: ProbeProperty::Semicommutative,
                            parts: vec![("f", f.clone()), ("h", h.clone()), ("g", g.clone())],
                            map_label: None,
                            detail: format!(
                                "f·g = 0 but f·h·g = {} ≠ 0 for f = {}, h = {}, g = {}",
                                self.format_poly(&fhg),
                                self.format_poly(f),
                                self.format_poly(h),
                                self.format_poly(g)
                            ),
                        });
                    }
                }
            }
        }
        None
    }

    fn probe_abelian(
        &self,
        space: &CandidateSpace,
        singles: &[Polynomial],
        run: &mut ProbeRun,
    ) -> Option<ProbeWitness> {
        for f in &space.candidates {
            let sq = run.mul(f, f)?;
            if sq != *f {
                continue;
            }
            for h in singles {
                let fh = match run.mul(f, h) {
                    Some(p) => p,
                    None => {
                        if run.exhausted {
                            return None;
                        }
                        continue;
                    }
                };
                let hf = match run.mul(h, f) {
                    Some(p) => p,
                    None => {
                        if run.exhausted {
                            return None;
                        }
                        continue;
                    }
                };
                if fh != hf {
                    return Some(ProbeWitness {
                        property: ProbeProperty::Abelian,
                        parts: vec![("e", f.clone()), ("h", h.clone())],
                        map_label: None,
                        detail: format!(
                            "idempotent e = {} does not commute with h = {}",
                            self.format_poly(f),
                            self.format_poly(h)
                        ),
                    });
                }
            }
        }
        None
    }

    fn probe_sigma_bar_semicommutative(
        &self,
        space: &CandidateSpace,
        singles: &[Polynomial],
        run: &mut ProbeRun,
    ) -> Option<ProbeWitness> {
        let family = self.family();
        let closure = sigma_closure(&family, false);
        let lifted = LiftedMaps { ext: self };
        for f in &space.candidates {
            for g in &space.candidates {
                let fg = match run.mul(f, g) {
                    Some(p) => p,
                    None => {
                        if run.exhausted {
                            return None;
                        }
                        continue;
                    }
                };
                if !fg.is_zero() {
                    continue;
                }
                for m in &closure.members {
                    let g_bar = lifted.apply_coefficientwise(&m.images, g);
                    for h in singles {
                        let fh = match run.mul(f, h) {
                            Some(p) => p,
                            None => {
                                if run.exhausted {
                                    return None;
                                }
                                continue;
                            }
                        };
                        let fhg = match run.mul(&fh, &g_bar) {
                            Some(p) => p,
                            None => {
                                if run.exhausted {
                                    return None;
                                }
                                continue;
                            }
                        };
                        if !fhg.is_zero() {
                            return Some(ProbeWitness {
                                property: ProbeProperty::SigmaBarSemicommutative,
                                parts: vec![
                                    ("f", f.clone()),
                                    ("h", h.clone()),
                                    ("g", g.clone()),
                                ],
                                map_label: Some(m.label.clone()),
                                detail: format!(
                                    "f·g = 0 but f·h·{}(g) = {} ≠ 0 for f = {}, h = {}, g = {}",
                                    m.label,
                                    self.format_poly(&fhg),
                                    self.format_poly(f),
                                    self.format_poly(h),
                                    self.format_poly(g)
                                ),
                            });
                        }
                    }
                }
            }
        }
        None
    }

    fn probe_sa1(&self, space: &CandidateSpace, run: &mut ProbeRun) -> Option<ProbeWitness> {
        let ring = self.ring();
        for f in &space.candidates {
            for g in &space.candidates {
                let fg = match run.mul(f, g) {
                    Some(p) => p,
                    None => {
                        if run.exhausted {
                            return None;
                        }
                        continue;
                    }
                };
                if !fg.is_zero() {
                    continue;
                }
                for (_, a) in f.terms() {
                    for (_, b) in g.terms() {
                        if ring.mul(a, b) != ring.zero() {
                            return Some(ProbeWitness {
                                property: ProbeProperty::Sa1,
                                parts: vec![("f", f.clone()), ("g", g.clone())],
                                map_label: None,
                                detail: format!(
                                    "f·g = 0 but coefficients ({})·({}) ≠ 0 for f = {}, g = {}",
                                    ring.label(a),
                                    ring.label(b),
                                    self.format_poly(f),
                                    self.format_poly(g)
                                ),
                            });
                        }
                    }
                }
            }
        }
        None
    }

    /// SQA1's hypothesis quantifies over all of A (f·A·g = 0), which a
    /// bounded search cannot certify, so candidates violating only the
    /// bounded relativization are tallied in the manifest instead of being
    /// reported as definitive counterexamples.
    fn probe_sqa1(
        &self,
        space: &CandidateSpace,
        singles: &[Polynomial],
        run: &mut ProbeRun,
        notes: &mut Vec<String>,
    ) -> Option<ProbeWitness> {
        let ring = self.ring();
        let mut bounded_candidates = 0u64;
        for f in &space.candidates {
            'pair: for g in &space.candidates {
                for h in singles {
                    let fh = match run.mul(f, h) {
                        Some(p) => p,
                        None => {
                            if run.exhausted {
                                return None;
                            }
                            continue 'pair;
                        }
                    };
                    let fhg = match run.mul(&fh, g) {
                        Some(p) => p,
                        None => {
                            if run.exhausted {
                                return None;
                            }
                            continue 'pair;
                        }
                    };
                    if !fhg.is_zero() {
                        continue 'pair;
                    }
                }
                // bounded hypothesis holds; check the conclusion a_i R b_j = 0
                let violated = f.terms().any(|(_, a)| {
                    g.terms().any(|(_, b)| {
                        ring.elements().any(|r| {
                            ring.mul(ring.mul(a, r), b) != ring.zero()
                        })
                    })
                });
                if violated {
                    bounded_candidates += 1;
                }
            }
        }
        if bounded_candidates > 0 {
            notes.push(format!(
                "{bounded_candidates} pair(s) violate SQA1 under the bounded hypothesis check only; not definitive because f·A·g = 0 cannot be certified by finite search"
            ));
        }
        None
    }

    fn probe_sigma_skew_armendariz(
        &self,
        space: &CandidateSpace,
        run: &mut ProbeRun,
    ) -> Option<ProbeWitness> {
        let ring = self.ring();
        let family = self.family();
        for f in &space.candidates {
            for g in &space.candidates {
                let fg = match run.mul(f, g) {
                    Some(p) => p,
                    None => {
                        if run.exhausted {
                            return None;
                        }
                        continue;
                    }
                };
                if !fg.is_zero() {
                    continue;
                }
                for (alpha, a) in f.terms() {
                    for (_, b) in g.terms() {
                        let phi_b = family.apply_sigma_alpha(alpha.exps(), b);
                        if ring.mul(a, phi_b) != ring.zero() {
                            return Some(ProbeWitness {
                                property: ProbeProperty::SigmaSkewArmendariz,
                                parts: vec![("f", f.clone()), ("g", g.clone())],
                                map_label: Some(format!("sigma^{:?}", alpha.exps())),
                                detail: format!(
                                    "f·g = 0 but ({})·sigma^{:?}({}) ≠ 0 for f = {}, g = {}",
                                    ring.label(a),
                                    alpha.exps(),
                                    ring.label(b),
                                    self.format_poly(f),
                                    self.format_poly(g)
                                ),
                            });
                        }
                    }
                }
            }
        }
        None
    }

    fn probe_skew_armendariz(
        &self,
        space: &CandidateSpace,
        run: &mut ProbeRun,
    ) -> Option<ProbeWitness> {
        let ring = self.ring();
        for f in &space.candidates {
            let a0 = f.constant_coeff(self.n(), ring.zero());
            if a0 == ring.zero() {
                continue;
            }
            for g in &space.candidates {
                let fg = match run.mul(f, g) {
                    Some(p) => p,
                    None => {
                        if run.exhausted {
                            return None;
                        }
                        continue;
                    }
                };
                if !fg.is_zero() {
                    continue;
                }
                for (_, b) in g.terms() {
                    if ring.mul(a0, b) != ring.zero() {
                        return Some(ProbeWitness {
                            property: ProbeProperty::SkewArmendariz,
                            parts: vec![("f", f.clone()), ("g", g.clone())],
                            map_label: None,
                            detail: format!(
                                "f·g = 0 but a_0·b = ({})·({}) ≠ 0 for f = {}, g = {}",
                                ring.label(a0),
                                ring.label(b),
                                self.format_poly(f),
                                self.format_poly(g)
                            ),
                        });
                    }
                }
            }
        }
        None
    }

    /// Left annihilators l_A(H) of bounded sets H = {h0}: a definitive
    /// counterexample refutes l_A(H) = Ae for every idempotent e of R,
    /// via either e·H ≠ 0 (so e is in Ae but not in the annihilator) or a
    /// slice element g with g·H = 0 and g·e ≠ g (in the annihilator but
    /// not in Ae).
    fn probe_bounded_baer(
        &self,
        space: &CandidateSpace,
        run: &mut ProbeRun,
        notes: &mut Vec<String>,
    ) -> Option<ProbeWitness> {
        let ring = self.ring();
        let idempotents: Vec<Elem> =
            ring.idempotents().iter().map(|e| e as Elem).collect();
        for h0 in &space.candidates {
            let mut refutations: Vec<String> = Vec::new();
            let mut all_refuted = true;
            let mut example_g: Option<Polynomial> = None;
            for &e in &idempotents {
                let e_poly = self.constant(e);
                let eh = match run.mul(&e_poly, h0) {
                    Some(p) => p,
                    None => {
                        if run.exhausted {
                            return None;
                        }
                        all_refuted = false;
                        break;
                    }
                };
                if !eh.is_zero() {
                    refutations.push(format!(
                        "e = {}: e·h ≠ 0 so e lies outside l_A(H)",
                        ring.label(e)
                    ));
                    continue;
                }
                // need g in the slice with g·h = 0 and g·e != g
                let mut found = None;
                for g in &space.candidates {
                    let gh = match run.mul(g, h0) {
                        Some(p) => p,
                        None => {
                            if run.exhausted {
                                return None;
                            }
                            continue;
                        }
                    };
                    if !gh.is_zero() {
                        continue;
                    }
                    let ge = match run.mul(g, &e_poly) {
                        Some(p) => p,
                        None => {
                            if run.exhausted {
                                return None;
                            }
                            continue;
                        }
                    };
                    if ge != *g {
                        found = Some(g.clone());
                        break;
                    }
                }
                match found {
                    Some(g) => {
                        refutations.push(format!(
                            "e = {}: g = {} annihilates H but g·e ≠ g",
                            ring.label(e),
                            self.format_poly(&g)
                        ));
                        example_g = Some(g);
                    }
                    None => {
                        all_refuted = false;
                        break;
                    }
                }
            }
            if all_refuted && !idempotents.is_empty() {
                let mut parts = vec![("h", h0.clone())];
                if let Some(g) = example_g {
                    parts.push(("g", g));
                }
                return Some(ProbeWitness {
                    property: ProbeProperty::BoundedBaer,
                    parts,
                    map_label: None,
                    detail: format!(
                        "l_A({{{}}}) is Ae for no idempotent e of R: {}",
                        self.format_poly(h0),
                        refutations.join("; ")
                    ),
                });
            }
        }
        notes.push("every probed annihilator matched some idempotent of R".to_string());
        None
    }

    /// Idempotent transparency of the extension over a
    /// sigma-semicommutative base: delta_i(e) = 0, x^alpha e = e x^alpha
    /// up to degree 3, and f e = e f across the bounded slice. Returns the
    /// first violation description.
    pub fn check_idempotent_transparency(&self, budget: &ProbeBudget) -> Result<(), String> {
        let ring = self.ring();
        for e in ring.idempotents().iter() {
            let e = e as Elem;
            for (i, d) in self.data.deltas.iter().enumerate() {
                if d.apply(e) != ring.zero() {
                    return Err(format!(
                        "delta_{}({}) ≠ 0",
                        i + 1,
                        ring.label(e)
                    ));
                }
            }
            let e_poly = self.constant(e);
            for m in monomials_up_to(self.n(), 3.min(self.degree_cap())) {
                let mono = self.monomial(m.exps(), ring.one()).expect("degree within cap");
                let xe = self.multiply(&mono, &e_poly).map_err(|o| o.to_string())?;
                let ex = self.multiply(&e_poly, &mono).map_err(|o| o.to_string())?;
                if xe != ex {
                    return Err(format!(
                        "x^{:?}·{} ≠ {}·x^{:?}",
                        m.exps(),
                        ring.label(e),
                        ring.label(e),
                        m.exps()
                    ));
                }
            }
            for f in build_candidates(self, budget).candidates {
                let fe = self.multiply(&f, &e_poly).map_err(|o| o.to_string())?;
                let ef = self.multiply(&e_poly, &f).map_err(|o| o.to_string())?;
                if fe != ef {
                    return Err(format!(
                        "f·{} ≠ {}·f for f = {}",
                        ring.label(e),
                        ring.label(e),
                        self.format_poly(&f)
                    ));
                }
            }
        }
        Ok(())
    }
}
