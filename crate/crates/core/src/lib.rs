//! Exhaustive decision procedures for finite unital rings, families of
//! endomorphisms and derivations over them, skew PBW extensions with
//! degree-capped exact arithmetic, and the Zariski-style spectra of finite
//! rings and finite posets.
//!
//! Everything in this crate is pure and deterministic: rings and maps are
//! immutable after validation, every classifier either proves a predicate by
//! exhausting its quantifiers or returns a witness that re-checks against
//! the definition, and bounded searches report exactly the space they
//! covered.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bitset;
pub mod endo;
pub mod finring;
pub mod ringprops;
pub mod rng;
pub mod skewpbw;
pub mod spectop;

pub use bitset::Bitset;
pub use endo::{MapClosure, MapFamily, RingMap};
pub use finring::{Elem, FiniteRing, Ideal, IdealKind, RingError, RingSpec};
