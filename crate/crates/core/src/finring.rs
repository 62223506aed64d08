//! Finite unital rings given by operation tables, and their structural
//! inventory: idempotents, nilpotents, annihilators, ideal lattices,
//! radicals and quotients.
//!
//! Elements are plain indices `0..q` into the addition/multiplication
//! tables. All constructors verify the ring axioms before returning, so a
//! `FiniteRing` in hand is always a genuine unital ring.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::Bitset;

/// Element index into a ring's tables.
pub type Elem = u16;

/// Hard ceiling on table-ring order; anything larger is a construction error.
pub const MAX_ORDER: usize = u16::MAX as usize;

/// Default cap for lattice enumeration; configurable per call.
pub const DEFAULT_RING_CAP: usize = 512;

// ---------------------------------------------------------------------------
// Ring specification and errors
// ---------------------------------------------------------------------------

/// Recipe for one of the built-in ring families, or raw tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    /// Integers modulo `n`.
    Zn { n: usize },
    /// Galois field of order `q` for `q` in {4, 8, 9}.
    Gf { q: usize },
    /// Upper-triangular 2x2 matrices `(a b; 0 c)` over `Z_n`.
    Ut2 { n: usize },
    /// Upper-triangular 2x2 matrices with equal diagonal `(a b; 0 a)` over `Z_n`.
    Ut2EqualDiag { n: usize },
    /// `Z_p[s,t] / (st, s^k, t^k)`.
    TruncSt { p: usize, k: usize },
    /// `Z_p[t] / (t^2)`.
    TruncT2 { p: usize },
    /// Direct product of two rings.
    Product(Box<RingSpec>, Box<RingSpec>),
    /// Raw row-major tables.
    Raw {
        name: String,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
        labels: Option<Vec<String>>,
    },
}

/// Named ring axioms checked by [`verify_ring_axioms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    OneNotZero,
    AddCommutative,
    AddAssociative,
    AddZero,
    AddInverse,
    MulAssociative,
    MulIdentity,
    DistributiveLeft,
    DistributiveRight,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::OneNotZero => "one_not_zero",
            Axiom::AddCommutative => "add_commutative",
            Axiom::AddAssociative => "add_associative",
            Axiom::AddZero => "add_zero",
            Axiom::AddInverse => "add_inverse",
            Axiom::MulAssociative => "mul_associative",
            Axiom::MulIdentity => "mul_identity",
            Axiom::DistributiveLeft => "distributive_left",
            Axiom::DistributiveRight => "distributive_right",
        }
    }
}

/// One axiom check: `witness` is the first failing triple in scan order.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub witness: Option<[Elem; 3]>,
}

/// Outcome of [`verify_ring_axioms`]; `commutative_multiplication` is
/// informational and not part of the pass/fail verdict.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
    pub commutative_multiplication: bool,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.witness.is_some())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingError {
    OrderTooSmall { order: usize },
    OrderTooLarge { order: usize },
    TableShape { table: &'static str, expected: usize, got: usize },
    EntryOutOfRange { table: &'static str, row: usize, col: usize, value: usize },
    IdentityOutOfRange { which: &'static str, value: usize },
    LabelCount { expected: usize, got: usize },
    UnsupportedField { q: usize },
    Axiom { axiom: Axiom, witness: [Elem; 3] },
    CapExceeded { order: usize, cap: usize },
    EmptySet,
    NotTwoSided,
    ImproperIdeal,
    NotAnIdeal { kind: IdealKind, witness: (Elem, Elem) },
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::OrderTooSmall { order } => {
                write!(f, "ring order {order} is below 2")
            }
            RingError::OrderTooLarge { order } => {
                write!(f, "ring order {order} exceeds the table limit {MAX_ORDER}")
            }
            RingError::TableShape { table, expected, got } => {
                write!(f, "{table} table has {got} entries, expected {expected}")
            }
            RingError::EntryOutOfRange { table, row, col, value } => {
                write!(f, "{table}[{row}][{col}] = {value} is out of range")
            }
            RingError::IdentityOutOfRange { which, value } => {
                write!(f, "{which} index {value} is out of range")
            }
            RingError::LabelCount { expected, got } => {
                write!(f, "{got} labels given for {expected} elements")
            }
            RingError::UnsupportedField { q } => {
                write!(f, "no built-in field of order {q} (supported: 4, 8, 9)")
            }
            RingError::Axiom { axiom, witness } => {
                write!(
                    f,
                    "axiom {} fails at ({}, {}, {})",
                    axiom.name(),
                    witness[0],
                    witness[1],
                    witness[2]
                )
            }
            RingError::CapExceeded { order, cap } => {
                write!(f, "ring order {order} exceeds the enumeration cap {cap}")
            }
            RingError::EmptySet => write!(f, "element set must be nonempty"),
            RingError::NotTwoSided => write!(f, "ideal is not two-sided"),
            RingError::ImproperIdeal => write!(f, "ideal is the whole ring"),
            RingError::NotAnIdeal { kind, witness } => {
                write!(
                    f,
                    "set is not a {} ideal, witness ({}, {})",
                    kind.name(),
                    witness.0,
                    witness.1
                )
            }
        }
    }
}

impl core::error::Error for RingError {}

// ---------------------------------------------------------------------------
// FiniteRing
// ---------------------------------------------------------------------------

/// A finite unital ring as verified addition/multiplication tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRing {
    name: String,
    order: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    one: Elem,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, order {})", self.name, self.order)
    }
}

impl FiniteRing {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order as Elem).map(|i| i)
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a as usize]
    }

    pub fn labels_of(&self, set: &Bitset) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Additive order of 1 (the characteristic).
    pub fn characteristic(&self) -> usize {
        let mut acc = self.one;
        let mut k = 1usize;
        while acc != self.zero {
            acc = self.add(acc, self.one);
            k += 1;
        }
        k
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_idempotent(&self, a: Elem) -> bool {
        self.mul(a, a) == a
    }

    /// Two-sided invertibility.
    pub fn is_unit(&self, a: Elem) -> bool {
        self.elements()
            .any(|u| self.mul(a, u) == self.one && self.mul(u, a) == self.one)
    }

    /// Squaring iteration with cycle detection: `a` is nilpotent iff the
    /// sequence a, a^2, a^4, ... reaches zero.
    pub fn is_nilpotent(&self, a: Elem) -> bool {
        let mut seen = Bitset::empty(self.order);
        let mut x = a;
        loop {
            if x == self.zero {
                return true;
            }
            if seen.contains(x as usize) {
                return false;
            }
            seen.insert(x as usize);
            x = self.mul(x, x);
        }
    }

    pub fn idempotents(&self) -> Bitset {
        let mut set = Bitset::empty(self.order);
        for a in self.elements() {
            if self.is_idempotent(a) {
                set.insert(a as usize);
            }
        }
        set
    }

    pub fn nilpotents(&self) -> Bitset {
        let mut set = Bitset::empty(self.order);
        for a in self.elements() {
            if self.is_nilpotent(a) {
                set.insert(a as usize);
            }
        }
        set
    }

    /// Left ideal {r*a : r} as a set; additively closed by distributivity.
    pub fn row_set_left(&self, a: Elem) -> Bitset {
        let mut set = Bitset::empty(self.order);
        for r in self.elements() {
            set.insert(self.mul(r, a) as usize);
        }
        set
    }

    /// Right ideal {a*r : r} as a set.
    pub fn row_set_right(&self, a: Elem) -> Bitset {
        let mut set = Bitset::empty(self.order);
        for r in self.elements() {
            set.insert(self.mul(a, r) as usize);
        }
        set
    }
}

// ---------------------------------------------------------------------------
// Axiom verification
// ---------------------------------------------------------------------------

struct RawTables<'a> {
    order: usize,
    add: &'a [Elem],
    mul: &'a [Elem],
    zero: Elem,
    one: Elem,
}

impl RawTables<'_> {
    #[inline]
    fn a(&self, x: Elem, y: Elem) -> Elem {
        self.add[x as usize * self.order + y as usize]
    }

    #[inline]
    fn m(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x as usize * self.order + y as usize]
    }
}

fn axiom_checks(t: &RawTables<'_>) -> AxiomReport {
    let q = t.order as Elem;
    let mut checks = Vec::new();

    let one_not_zero = if t.one == t.zero { Some([t.one, t.zero, 0]) } else { None };
    checks.push(AxiomCheck { axiom: Axiom::OneNotZero, witness: one_not_zero });

    let mut w = None;
    'comm: for a in 0..q {
        for b in 0..q {
            if t.a(a, b) != t.a(b, a) {
                w = Some([a, b, 0]);
                break 'comm;
            }
        }
    }
    checks.push(AxiomCheck { axiom: Axiom::AddCommutative, witness: w });

    let mut w = None;
    'assoc_a: for a in 0..q {
        for b in 0..q {
            let ab = t.a(a, b);
            for c in 0..q {
                if t.a(ab, c) != t.a(a, t.a(b, c)) {
                    w = Some([a, b, c]);
                    break 'assoc_a;
                }
            }
        }
    }
    checks.push(AxiomCheck { axiom: Axiom::AddAssociative, witness: w });

    let w = (0..q).find(|&a| t.a(a, t.zero) != a).map(|a| [a, t.zero, 0]);
    checks.push(AxiomCheck { axiom: Axiom::AddZero, witness: w });

    let w = (0..q)
        .find(|&a| !(0..q).any(|b| t.a(a, b) == t.zero))
        .map(|a| [a, 0, 0]);
    checks.push(AxiomCheck { axiom: Axiom::AddInverse, witness: w });

    let mut w = None;
    'assoc_m: for a in 0..q {
        for b in 0..q {
            let ab = t.m(a, b);
            for c in 0..q {
                if t.m(ab, c) != t.m(a, t.m(b, c)) {
                    w = Some([a, b, c]);
                    break 'assoc_m;
                }
            }
        }
    }
    checks.push(AxiomCheck { axiom: Axiom::MulAssociative, witness: w });

    let w = (0..q)
        .find(|&a| t.m(a, t.one) != a || t.m(t.one, a) != a)
        .map(|a| [a, t.one, 0]);
    checks.push(AxiomCheck { axiom: Axiom::MulIdentity, witness: w });

    let mut w = None;
    'dist_l: for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                if t.m(a, t.a(b, c)) != t.a(t.m(a, b), t.m(a, c)) {
                    w = Some([a, b, c]);
                    break 'dist_l;
                }
            }
        }
    }
    checks.push(AxiomCheck { axiom: Axiom::DistributiveLeft, witness: w });

    let mut w = None;
    'dist_r: for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                if t.m(t.a(a, b), c) != t.a(t.m(a, c), t.m(b, c)) {
                    w = Some([a, b, c]);
                    break 'dist_r;
                }
            }
        }
    }
    checks.push(AxiomCheck { axiom: Axiom::DistributiveRight, witness: w });

    let commutative = (0..q).all(|a| (0..q).all(|b| t.m(a, b) == t.m(b, a)));

    AxiomReport { checks, commutative_multiplication: commutative }
}

/// Re-run the full axiom battery on an already-constructed ring.
pub fn verify_ring_axioms(ring: &FiniteRing) -> AxiomReport {
    axiom_checks(&RawTables {
        order: ring.order,
        add: &ring.add,
        mul: &ring.mul,
        zero: ring.zero,
        one: ring.one,
    })
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

fn assemble(
    name: String,
    order: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    zero: Elem,
    one: Elem,
    labels: Vec<String>,
) -> Result<FiniteRing, RingError> {
    if order < 2 {
        return Err(RingError::OrderTooSmall { order });
    }
    if order > MAX_ORDER {
        return Err(RingError::OrderTooLarge { order });
    }
    debug_assert_eq!(add.len(), order * order);
    debug_assert_eq!(mul.len(), order * order);
    debug_assert_eq!(labels.len(), order);

    let report = axiom_checks(&RawTables { order, add: &add, mul: &mul, zero, one });
    if let Some(fail) = report.first_failure() {
        return Err(RingError::Axiom { axiom: fail.axiom, witness: fail.witness.unwrap() });
    }

    let mut neg = vec![0 as Elem; order];
    for a in 0..order {
        neg[a] = (0..order as Elem)
            .find(|&b| add[a * order + b as usize] == zero)
            .expect("inverse exists after axiom check");
    }

    Ok(FiniteRing { name, order, add, mul, neg, zero, one, labels })
}

/// Build and verify one of the supported rings.
pub fn build_ring(spec: &RingSpec) -> Result<FiniteRing, RingError> {
    match spec {
        RingSpec::Zn { n } => build_zn(*n),
        RingSpec::Gf { q } => build_gf(*q),
        RingSpec::Ut2 { n } => build_ut2(*n),
        RingSpec::Ut2EqualDiag { n } => build_ut2_equal_diag(*n),
        RingSpec::TruncSt { p, k } => build_trunc_st(*p, *k),
        RingSpec::TruncT2 { p } => build_trunc_t2(*p),
        RingSpec::Product(a, b) => {
            let ra = build_ring(a)?;
            let rb = build_ring(b)?;
            product_ring(&ra, &rb)
        }
        RingSpec::Raw { name, add, mul, zero, one, labels } => {
            build_raw(name, add, mul, *zero, *one, labels.as_deref())
        }
    }
}

pub fn build_zn(n: usize) -> Result<FiniteRing, RingError> {
    if n < 2 {
        return Err(RingError::OrderTooSmall { order: n });
    }
    if n > MAX_ORDER {
        return Err(RingError::OrderTooLarge { order: n });
    }
    let mut add = vec![0 as Elem; n * n];
    let mut mul = vec![0 as Elem; n * n];
    for a in 0..n {
        for b in 0..n {
            add[a * n + b] = ((a + b) % n) as Elem;
            mul[a * n + b] = ((a * b) % n) as Elem;
        }
    }
    let labels = (0..n).map(|a| a.to_string()).collect();
    assemble(format!("Z{n}"), n, add, mul, 0, 1, labels)
}

/// Coefficient vectors for the supported fields: (p, m, reduction of x^m).
fn gf_params(q: usize) -> Option<(usize, usize, [usize; 3])> {
    match q {
        // GF(4) = F2[x]/(x^2 + x + 1), x^2 = x + 1
        4 => Some((2, 2, [1, 1, 0])),
        // GF(8) = F2[x]/(x^3 + x + 1), x^3 = x + 1
        8 => Some((2, 3, [1, 1, 0])),
        // GF(9) = F3[x]/(x^2 + 1), x^2 = 2
        9 => Some((3, 2, [2, 0, 0])),
        _ => None,
    }
}

fn gf_digits(idx: usize, p: usize, m: usize) -> Vec<usize> {
    let mut v = Vec::with_capacity(m);
    let mut x = idx;
    for _ in 0..m {
        v.push(x % p);
        x /= p;
    }
    v
}

fn gf_index(digits: &[usize], p: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn gf_poly_label(digits: &[usize]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in digits.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let var = match i {
            0 => String::new(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        };
        let part = match (c, i) {
            (_, 0) => format!("{c}"),
            (1, _) => var,
            _ => format!("{c}{var}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

pub fn build_gf(q: usize) -> Result<FiniteRing, RingError> {
    let (p, m, red) = gf_params(q).ok_or(RingError::UnsupportedField { q })?;
    let mut add = vec![0 as Elem; q * q];
    let mut mul = vec![0 as Elem; q * q];
    for a in 0..q {
        let da = gf_digits(a, p, m);
        for b in 0..q {
            let db = gf_digits(b, p, m);
            let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = gf_index(&sum, p) as Elem;

            // Polynomial product, then reduce x^m = red from the top down.
            let mut prod = vec![0usize; 2 * m - 1];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            for deg in (m..2 * m - 1).rev() {
                let c = prod[deg];
                if c != 0 {
                    prod[deg] = 0;
                    for (i, &r) in red.iter().take(m).enumerate() {
                        prod[deg - m + i] = (prod[deg - m + i] + c * r) % p;
                    }
                }
            }
            mul[a * q + b] = gf_index(&prod[..m], p) as Elem;
        }
    }
    let labels = (0..q).map(|a| gf_poly_label(&gf_digits(a, p, m))).collect();
    assemble(format!("GF{q}"), q, add, mul, 0, 1, labels)
}

fn ut2_index(n: usize, a: usize, b: usize, c: usize) -> usize {
    (a * n + b) * n + c
}

pub fn build_ut2(n: usize) -> Result<FiniteRing, RingError> {
    if n < 2 {
        return Err(RingError::OrderTooSmall { order: n });
    }
    let q = n * n * n;
    if q > MAX_ORDER {
        return Err(RingError::OrderTooLarge { order: q });
    }
    let mut add = vec![0 as Elem; q * q];
    let mut mul = vec![0 as Elem; q * q];
    let mut labels = vec![String::new(); q];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let i = ut2_index(n, a, b, c);
                labels[i] = format!("[{a} {b}; 0 {c}]");
                for x in 0..n {
                    for y in 0..n {
                        for z in 0..n {
                            let j = ut2_index(n, x, y, z);
                            add[i * q + j] =
                                ut2_index(n, (a + x) % n, (b + y) % n, (c + z) % n) as Elem;
                            mul[i * q + j] =
                                ut2_index(n, (a * x) % n, (a * y + b * z) % n, (c * z) % n)
                                    as Elem;
                        }
                    }
                }
            }
        }
    }
    let one = ut2_index(n, 1, 0, 1) as Elem;
    assemble(format!("UT2(Z{n})"), q, add, mul, 0, one, labels)
}

fn ut2eq_index(n: usize, a: usize, b: usize) -> usize {
    a * n + b
}

pub fn build_ut2_equal_diag(n: usize) -> Result<FiniteRing, RingError> {
    if n < 2 {
        return Err(RingError::OrderTooSmall { order: n });
    }
    let q = n * n;
    if q > MAX_ORDER {
        return Err(RingError::OrderTooLarge { order: q });
    }
    let mut add = vec![0 as Elem; q * q];
    let mut mul = vec![0 as Elem; q * q];
    let mut labels = vec![String::new(); q];
    for a in 0..n {
        for b in 0..n {
            let i = ut2eq_index(n, a, b);
            labels[i] = format!("[{a} {b}; 0 {a}]");
            for x in 0..n {
                for y in 0..n {
                    let j = ut2eq_index(n, x, y);
                    add[i * q + j] = ut2eq_index(n, (a + x) % n, (b + y) % n) as Elem;
                    mul[i * q + j] = ut2eq_index(n, (a * x) % n, (a * y + b * x) % n) as Elem;
                }
            }
        }
    }
    let one = ut2eq_index(n, 1, 0) as Elem;
    assemble(format!("UT2eq(Z{n})"), q, add, mul, 0, one, labels)
}

// trunc_st basis order: position 0 is 1, positions 1..k are s^1..s^{k-1},
// positions k..2k-1 are t^1..t^{k-1}; index = sum of digit * p^position.

fn trunc_digits(idx: usize, p: usize, positions: usize) -> Vec<usize> {
    let mut v = Vec::with_capacity(positions);
    let mut x = idx;
    for _ in 0..positions {
        v.push(x % p);
        x /= p;
    }
    v
}

fn trunc_index(digits: &[usize], p: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn trunc_label(digits: &[usize], k: usize) -> String {
    let mut parts = Vec::new();
    let render = |c: usize, var: &str, e: usize| -> String {
        let v = match e {
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        if c == 1 {
            v
        } else {
            format!("{c}{v}")
        }
    };
    if digits[0] != 0 {
        parts.push(format!("{}", digits[0]));
    }
    for e in 1..k {
        if digits[e] != 0 {
            parts.push(render(digits[e], "s", e));
        }
    }
    for e in 1..k {
        if digits[k - 1 + e] != 0 {
            parts.push(render(digits[k - 1 + e], "t", e));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

pub fn build_trunc_st(p: usize, k: usize) -> Result<FiniteRing, RingError> {
    if p < 2 || k < 2 {
        return Err(RingError::OrderTooSmall { order: p.min(k) });
    }
    let positions = 2 * k - 1;
    let q = p.checked_pow(positions as u32).filter(|&q| q <= MAX_ORDER).ok_or(
        RingError::OrderTooLarge { order: usize::MAX },
    )?;
    let mut add = vec![0 as Elem; q * q];
    let mut mul = vec![0 as Elem; q * q];
    let mut labels = vec![String::new(); q];
    for a in 0..q {
        let da = trunc_digits(a, p, positions);
        labels[a] = trunc_label(&da, k);
        for b in 0..q {
            let db = trunc_digits(b, p, positions);
            let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = trunc_index(&sum, p) as Elem;

            // st = 0 kills every cross term; s^k = t^k = 0 truncates.
            let mut prod = vec![0usize; positions];
            let coeff = |d: &[usize], var: usize, e: usize| -> usize {
                // var 0 = s, var 1 = t; exponent 0 is the shared constant.
                if e == 0 {
                    d[0]
                } else if var == 0 {
                    d[e]
                } else {
                    d[k - 1 + e]
                }
            };
            for var in 0..2 {
                for e in 0..k {
                    let mut acc = 0usize;
                    for i in 0..=e {
                        acc += coeff(&da, var, i) * coeff(&db, var, e - i);
                    }
                    // e = 0 would double-count the constant between vars.
                    if e == 0 {
                        if var == 0 {
                            prod[0] = acc % p;
                        }
                    } else if var == 0 {
                        prod[e] = acc % p;
                    } else {
                        prod[k - 1 + e] = acc % p;
                    }
                }
            }
            mul[a * q + b] = trunc_index(&prod, p) as Elem;
        }
    }
    assemble(format!("Z{p}[s,t]/(st,s^{k},t^{k})"), q, add, mul, 0, 1, labels)
}

pub fn build_trunc_t2(p: usize) -> Result<FiniteRing, RingError> {
    if p < 2 {
        return Err(RingError::OrderTooSmall { order: p });
    }
    let q = p * p;
    if q > MAX_ORDER {
        return Err(RingError::OrderTooLarge { order: q });
    }
    let mut add = vec![0 as Elem; q * q];
    let mut mul = vec![0 as Elem; q * q];
    let mut labels = vec![String::new(); q];
    for a0 in 0..p {
        for a1 in 0..p {
            let i = a1 * p + a0;
            labels[i] = match (a0, a1) {
                (0, 0) => "0".to_string(),
                (c, 0) => format!("{c}"),
                (0, 1) => "t".to_string(),
                (0, b) => format!("{b}t"),
                (c, 1) => format!("{c}+t"),
                (c, b) => format!("{c}+{b}t"),
            };
            for b0 in 0..p {
                for b1 in 0..p {
                    let j = b1 * p + b0;
                    add[i * q + j] = (((a1 + b1) % p) * p + (a0 + b0) % p) as Elem;
                    mul[i * q + j] =
                        (((a0 * b1 + a1 * b0) % p) * p + (a0 * b0) % p) as Elem;
                }
            }
        }
    }
    assemble(format!("Z{p}[t]/(t^2)"), q, add, mul, 0, 1, labels)
}

pub fn product_ring(ra: &FiniteRing, rb: &FiniteRing) -> Result<FiniteRing, RingError> {
    let qa = ra.order;
    let qb = rb.order;
    let q = qa.checked_mul(qb).filter(|&q| q <= MAX_ORDER).ok_or(
        RingError::OrderTooLarge { order: usize::MAX },
    )?;
    let mut add = vec![0 as Elem; q * q];
    let mut mul = vec![0 as Elem; q * q];
    let mut labels = vec![String::new(); q];
    for a1 in 0..qa {
        for a2 in 0..qb {
            let i = a1 * qb + a2;
            labels[i] = format!("({},{})", ra.labels[a1], rb.labels[a2]);
            for b1 in 0..qa {
                for b2 in 0..qb {
                    let j = b1 * qb + b2;
                    add[i * q + j] = (ra.add(a1 as Elem, b1 as Elem) as usize * qb
                        + rb.add(a2 as Elem, b2 as Elem) as usize)
                        as Elem;
                    mul[i * q + j] = (ra.mul(a1 as Elem, b1 as Elem) as usize * qb
                        + rb.mul(a2 as Elem, b2 as Elem) as usize)
                        as Elem;
                }
            }
        }
    }
    let zero = (ra.zero as usize * qb + rb.zero as usize) as Elem;
    let one = (ra.one as usize * qb + rb.one as usize) as Elem;
    assemble(format!("{}x{}", ra.name, rb.name), q, add, mul, zero, one, labels)
}

pub fn build_raw(
    name: &str,
    add: &[usize],
    mul: &[usize],
    zero: usize,
    one: usize,
    labels: Option<&[String]>,
) -> Result<FiniteRing, RingError> {
    // Infer the order from the table sizes.
    let q = {
        let mut q = 0usize;
        while q * q < add.len() {
            q += 1;
        }
        q
    };
    if q < 2 {
        return Err(RingError::OrderTooSmall { order: q });
    }
    if q > MAX_ORDER {
        return Err(RingError::OrderTooLarge { order: q });
    }
    if add.len() != q * q {
        return Err(RingError::TableShape { table: "add", expected: q * q, got: add.len() });
    }
    if mul.len() != q * q {
        return Err(RingError::TableShape { table: "mul", expected: q * q, got: mul.len() });
    }
    for (idx, &v) in add.iter().enumerate() {
        if v >= q {
            return Err(RingError::EntryOutOfRange {
                table: "add",
                row: idx / q,
                col: idx % q,
                value: v,
            });
        }
    }
    for (idx, &v) in mul.iter().enumerate() {
        if v >= q {
            return Err(RingError::EntryOutOfRange {
                table: "mul",
                row: idx / q,
                col: idx % q,
                value: v,
            });
        }
    }
    if zero >= q {
        return Err(RingError::IdentityOutOfRange { which: "zero", value: zero });
    }
    if one >= q {
        return Err(RingError::IdentityOutOfRange { which: "one", value: one });
    }
    let labels = match labels {
        Some(ls) => {
            if ls.len() != q {
                return Err(RingError::LabelCount { expected: q, got: ls.len() });
            }
            ls.to_vec()
        }
        None => (0..q).map(|i| i.to_string()).collect(),
    };
    assemble(
        name.to_string(),
        q,
        add.iter().map(|&v| v as Elem).collect(),
        mul.iter().map(|&v| v as Elem).collect(),
        zero as Elem,
        one as Elem,
        labels,
    )
}

// ---------------------------------------------------------------------------
// Companion endomorphism / derivation image tables
//
// These match the element encodings fixed by the constructors above.
// ---------------------------------------------------------------------------

/// `x -> x^p` where `p` is the ring characteristic.
pub fn frobenius_images(ring: &FiniteRing) -> Vec<Elem> {
    let p = ring.characteristic();
    ring.elements()
        .map(|a| {
            let mut acc = ring.one();
            for _ in 0..p {
                acc = ring.mul(acc, a);
            }
            acc
        })
        .collect()
}

/// UT2: `(a b; 0 c) -> (a 0; 0 0)`.
pub fn ut2_kill_all_but_a_images(n: usize) -> Vec<Elem> {
    let mut v = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for _b in 0..n {
            for _c in 0..n {
                v.push(ut2_index(n, a, 0, 0) as Elem);
            }
        }
    }
    v
}

/// UT2: `(a b; 0 c) -> (0 0; 0 c)`.
pub fn ut2_kill_all_but_c_images(n: usize) -> Vec<Elem> {
    let mut v = Vec::with_capacity(n * n * n);
    for _a in 0..n {
        for _b in 0..n {
            for c in 0..n {
                v.push(ut2_index(n, 0, 0, c) as Elem);
            }
        }
    }
    v
}

/// UT2 equal diagonal: `(a b; 0 a) -> (a -b; 0 a)`.
pub fn ut2eq_negate_b_images(n: usize) -> Vec<Elem> {
    let mut v = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            v.push(ut2eq_index(n, a, (n - b) % n) as Elem);
        }
    }
    v
}

/// UT2 equal diagonal: `(a b; 0 a) -> (a 0; 0 a)`.
pub fn ut2eq_kill_b_images(n: usize) -> Vec<Elem> {
    let mut v = Vec::with_capacity(n * n);
    for a in 0..n {
        for _b in 0..n {
            v.push(ut2eq_index(n, a, 0) as Elem);
        }
    }
    v
}

/// trunc_st: the automorphism exchanging s and t.
pub fn trunc_st_swap_images(p: usize, k: usize) -> Vec<Elem> {
    let positions = 2 * k - 1;
    let q = p.pow(positions as u32);
    let mut v = Vec::with_capacity(q);
    for idx in 0..q {
        let d = trunc_digits(idx, p, positions);
        let mut out = vec![0usize; positions];
        out[0] = d[0];
        for e in 1..k {
            out[k - 1 + e] = d[e];
            out[e] = d[k - 1 + e];
        }
        v.push(trunc_index(&out, p) as Elem);
    }
    v
}

/// trunc_t2: the derivation d/dt, `a + bt -> b`.
pub fn trunc_t2_derivation_images(p: usize) -> Vec<Elem> {
    // index scheme is a1*p + a0 for a0 + a1*t
    let mut out = vec![0 as Elem; p * p];
    for a1 in 0..p {
        for a0 in 0..p {
            out[a1 * p + a0] = a1 as Elem;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Ideals
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum IdealKind {
    Left,
    Right,
    TwoSided,
}

impl IdealKind {
    pub fn name(self) -> &'static str {
        match self {
            IdealKind::Left => "left",
            IdealKind::Right => "right",
            IdealKind::TwoSided => "two-sided",
        }
    }
}

/// A verified (one- or two-sided) ideal of a finite ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Arc<FiniteRing>,
    members: Bitset,
    kind: IdealKind,
}

impl Ideal {
    /// Validate the additive-subgroup and multiplicative-closure invariants.
    pub fn new(ring: Arc<FiniteRing>, members: Bitset, kind: IdealKind) -> Result<Ideal, RingError> {
        if !members.contains(ring.zero() as usize) {
            return Err(RingError::NotAnIdeal { kind, witness: (ring.zero(), ring.zero()) });
        }
        for a in members.iter() {
            for b in members.iter() {
                let s = ring.add(a as Elem, b as Elem);
                if !members.contains(s as usize) {
                    return Err(RingError::NotAnIdeal { kind, witness: (a as Elem, b as Elem) });
                }
            }
            let neg = ring.neg(a as Elem);
            if !members.contains(neg as usize) {
                return Err(RingError::NotAnIdeal { kind, witness: (a as Elem, neg) });
            }
        }
        let check_right = matches!(kind, IdealKind::Right | IdealKind::TwoSided);
        let check_left = matches!(kind, IdealKind::Left | IdealKind::TwoSided);
        for a in members.iter() {
            for r in ring.elements() {
                if check_right && !members.contains(ring.mul(a as Elem, r) as usize) {
                    return Err(RingError::NotAnIdeal { kind, witness: (a as Elem, r) });
                }
                if check_left && !members.contains(ring.mul(r, a as Elem) as usize) {
                    return Err(RingError::NotAnIdeal { kind, witness: (r, a as Elem) });
                }
            }
        }
        Ok(Ideal { ring, members, kind })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn members(&self) -> &Bitset {
        &self.members
    }

    pub fn kind(&self) -> IdealKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.members.count()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.contains(a as usize)
    }

    pub fn is_proper(&self) -> bool {
        self.size() < self.ring.order()
    }

    pub fn is_zero(&self) -> bool {
        self.size() == 1
    }

    /// Short display such as `{0,6}`, capped for big sets.
    pub fn describe(&self) -> String {
        let idx = self.members.to_indices();
        if idx.len() > 12 {
            format!("({} elements)", idx.len())
        } else {
            let parts: Vec<String> =
                idx.iter().map(|&i| self.ring.label(i as Elem).to_string()).collect();
            format!("{{{}}}", parts.join(","))
        }
    }
}

/// Close a subset under addition (and hence negation, by finiteness).
pub fn additive_closure(ring: &FiniteRing, seed: &Bitset) -> Bitset {
    let mut set = seed.clone();
    set.insert(ring.zero() as usize);
    let mut frontier: Vec<usize> = set.iter().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        let current: Vec<usize> = set.iter().collect();
        for &a in &frontier {
            for &b in &current {
                let s = ring.add(a as Elem, b as Elem) as usize;
                if !set.contains(s) {
                    set.insert(s);
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    set
}

/// Principal ideal generated by `a`, as a member set.
pub fn principal_ideal_set(ring: &FiniteRing, a: Elem, kind: IdealKind) -> Bitset {
    match kind {
        IdealKind::Right => ring.row_set_right(a),
        IdealKind::Left => ring.row_set_left(a),
        IdealKind::TwoSided => {
            let mut seed = Bitset::empty(ring.order());
            for r in ring.elements() {
                for s in ring.elements() {
                    seed.insert(ring.mul(ring.mul(r, a), s) as usize);
                }
            }
            additive_closure(ring, &seed)
        }
    }
}

/// Sum of two ideals of the same kind (pairwise sums; both inputs are
/// additively closed so the result already is).
pub fn ideal_sum_set(ring: &FiniteRing, a: &Bitset, b: &Bitset) -> Bitset {
    let mut out = Bitset::empty(ring.order());
    for x in a.iter() {
        for y in b.iter() {
            out.insert(ring.add(x as Elem, y as Elem) as usize);
        }
    }
    out
}

/// Product ideal I*J for two-sided ideals: additive span of pairwise products.
pub fn ideal_product_set(ring: &FiniteRing, a: &Bitset, b: &Bitset) -> Bitset {
    let mut seed = Bitset::empty(ring.order());
    for x in a.iter() {
        for y in b.iter() {
            seed.insert(ring.mul(x as Elem, y as Elem) as usize);
        }
    }
    additive_closure(ring, &seed)
}

/// Complete list of ideals of the given kind, as the sum-closure of the
/// principal ideals. Order is deterministic: principal ideals by generator
/// index, then sums in discovery order.
pub fn enumerate_ideals(
    ring: &Arc<FiniteRing>,
    kind: IdealKind,
    cap: usize,
) -> Result<Vec<Ideal>, RingError> {
    if ring.order() > cap {
        return Err(RingError::CapExceeded { order: ring.order(), cap });
    }
    let mut list: Vec<Bitset> = Vec::new();
    let mut seen: BTreeSet<Bitset> = BTreeSet::new();
    for a in ring.elements() {
        let set = principal_ideal_set(ring, a, kind);
        if seen.insert(set.clone()) {
            list.push(set);
        }
    }
    let mut i = 0;
    while i < list.len() {
        for j in 0..i {
            let sum = ideal_sum_set(ring, &list[i], &list[j]);
            if seen.insert(sum.clone()) {
                list.push(sum);
            }
        }
        i += 1;
    }
    list.into_iter()
        .map(|set| Ideal::new(Arc::clone(ring), set, kind))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Annihilator of a nonempty set on the requested side.
///
/// Right: `{x : s x = 0 for all s in S}` (a right ideal).
/// Left: `{x : x s = 0 for all s in S}` (a left ideal).
pub fn annihilator(
    ring: &Arc<FiniteRing>,
    side: Side,
    set: &Bitset,
) -> Result<Ideal, RingError> {
    if set.is_empty() {
        return Err(RingError::EmptySet);
    }
    let mut members = Bitset::empty(ring.order());
    for x in ring.elements() {
        let ok = set.iter().all(|s| match side {
            Side::Right => ring.mul(s as Elem, x) == ring.zero(),
            Side::Left => ring.mul(x, s as Elem) == ring.zero(),
        });
        if ok {
            members.insert(x as usize);
        }
    }
    let kind = match side {
        Side::Right => IdealKind::Right,
        Side::Left => IdealKind::Left,
    };
    Ideal::new(Arc::clone(ring), members, kind)
}

// ---------------------------------------------------------------------------
// Special ideals, radicals, quotients
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialIdealKind {
    Prime,
    Maximal,
    MaximalRight,
    StronglyPrime,
    JPrime,
}

/// Element-criterion primality: for all a, b not in P some a r b escapes P.
/// Valid for unital rings.
pub fn is_prime_ideal(ring: &FiniteRing, p: &Bitset) -> bool {
    if p.count() == ring.order() {
        return false;
    }
    for a in ring.elements() {
        if p.contains(a as usize) {
            continue;
        }
        for b in ring.elements() {
            if p.contains(b as usize) {
                continue;
            }
            let escapes = ring
                .elements()
                .any(|r| !p.contains(ring.mul(ring.mul(a, r), b) as usize));
            if !escapes {
                return false;
            }
        }
    }
    true
}

fn maximal_among(ideals: &[Ideal]) -> Vec<Ideal> {
    let proper: Vec<&Ideal> = ideals.iter().filter(|i| i.is_proper()).collect();
    proper
        .iter()
        .filter(|i| {
            !proper.iter().any(|j| {
                j.members() != i.members() && i.members().is_subset(j.members())
            })
        })
        .map(|i| (*i).clone())
        .collect()
}

pub fn special_ideals(
    ring: &Arc<FiniteRing>,
    kind: SpecialIdealKind,
    cap: usize,
) -> Result<Vec<Ideal>, RingError> {
    match kind {
        SpecialIdealKind::MaximalRight => {
            let right = enumerate_ideals(ring, IdealKind::Right, cap)?;
            Ok(maximal_among(&right))
        }
        SpecialIdealKind::Maximal => {
            let two = enumerate_ideals(ring, IdealKind::TwoSided, cap)?;
            Ok(maximal_among(&two))
        }
        SpecialIdealKind::Prime => {
            let two = enumerate_ideals(ring, IdealKind::TwoSided, cap)?;
            Ok(two
                .into_iter()
                .filter(|i| is_prime_ideal(ring, i.members()))
                .collect())
        }
        SpecialIdealKind::StronglyPrime => {
            let primes = special_ideals(ring, SpecialIdealKind::Prime, cap)?;
            let mut out = Vec::new();
            for p in primes {
                let quot = Arc::new(quotient_ring(ring, &p)?);
                let rad = radicals(&quot, cap)?;
                if rad.upper_nilradical.is_zero() {
                    out.push(p);
                }
            }
            Ok(out)
        }
        SpecialIdealKind::JPrime => {
            let primes = special_ideals(ring, SpecialIdealKind::Prime, cap)?;
            let mut out = Vec::new();
            for p in primes {
                let quot = Arc::new(quotient_ring(ring, &p)?);
                let rad = radicals(&quot, cap)?;
                if rad.jacobson.is_zero() {
                    out.push(p);
                }
            }
            Ok(out)
        }
    }
}

/// The four nilpotence-flavoured sets of a finite ring.
#[derive(Clone, Debug)]
pub struct RadicalSet {
    /// N(R), the set of nilpotent elements (not an ideal in general).
    pub nilpotents: Bitset,
    /// N_*(R), the intersection of the prime ideals.
    pub prime_radical: Ideal,
    /// N^*(R), the sum of the nil two-sided ideals.
    pub upper_nilradical: Ideal,
    /// J(R), the intersection of the maximal right ideals.
    pub jacobson: Ideal,
}

pub fn radicals(ring: &Arc<FiniteRing>, cap: usize) -> Result<RadicalSet, RingError> {
    let nilpotents = ring.nilpotents();

    let two_sided = enumerate_ideals(ring, IdealKind::TwoSided, cap)?;

    let mut prime_members = Bitset::full(ring.order());
    for i in &two_sided {
        if is_prime_ideal(ring, i.members()) {
            prime_members.intersect_with(i.members());
        }
    }
    let prime_radical = Ideal::new(Arc::clone(ring), prime_members, IdealKind::TwoSided)?;

    let mut upper = Bitset::singleton(ring.order(), ring.zero() as usize);
    for i in &two_sided {
        if i.members().is_subset(&nilpotents) {
            upper = ideal_sum_set(ring, &upper, i.members());
        }
    }
    let upper_nilradical = Ideal::new(Arc::clone(ring), upper, IdealKind::TwoSided)?;

    let max_right = special_ideals(ring, SpecialIdealKind::MaximalRight, cap)?;
    let mut j = Bitset::full(ring.order());
    for i in &max_right {
        j.intersect_with(i.members());
    }
    let jacobson = Ideal::new(Arc::clone(ring), j, IdealKind::TwoSided)?;

    Ok(RadicalSet { nilpotents, prime_radical, upper_nilradical, jacobson })
}

/// Coset ring R/I for a proper two-sided ideal, with re-verified axioms.
pub fn quotient_ring(ring: &Arc<FiniteRing>, ideal: &Ideal) -> Result<FiniteRing, RingError> {
    if ideal.kind() != IdealKind::TwoSided {
        return Err(RingError::NotTwoSided);
    }
    if !ideal.is_proper() {
        return Err(RingError::ImproperIdeal);
    }
    let q = ring.order();
    let mut rep = vec![Elem::MAX; q];
    let mut reps: Vec<Elem> = Vec::new();
    for x in ring.elements() {
        if rep[x as usize] != Elem::MAX {
            continue;
        }
        // coset x + I; the least element found becomes the representative
        let mut coset: Vec<Elem> = ideal.members().iter().map(|i| ring.add(x, i as Elem)).collect();
        coset.sort_unstable();
        let r = coset[0];
        for y in coset {
            rep[y as usize] = r;
        }
        if !reps.contains(&r) {
            reps.push(r);
        }
    }
    reps.sort_unstable();
    let index_of = |e: Elem| reps.iter().position(|&r| r == rep[e as usize]).unwrap();

    let nq = reps.len();
    let mut add = vec![0 as Elem; nq * nq];
    let mut mul = vec![0 as Elem; nq * nq];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            add[i * nq + j] = index_of(ring.add(a, b)) as Elem;
            mul[i * nq + j] = index_of(ring.mul(a, b)) as Elem;
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", ring.label(r))).collect();
    let zero = index_of(ring.zero()) as Elem;
    let one = index_of(ring.one()) as Elem;
    assemble(
        format!("{}/{}", ring.name(), ideal.describe()),
        nq,
        add,
        mul,
        zero,
        one,
        labels,
    )
}
