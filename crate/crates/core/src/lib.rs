//! `hncurves`: exact symbolic computation of Hochschild-style invariants for
//! projective curves with nodal or cuspidal singularities.
//!
//! The crate is organized as a small tower:
//!
//! * [`poly`], [`order`], [`free`] — exact rational polynomial arithmetic,
//!   monomial and module term orders, free-module elements;
//! * [`matrix`] — dense exact linear algebra over Q;
//! * [`groebner`], [`modules`] — Buchberger's algorithm with cofactor
//!   tracking, syzygies by block elimination, quotient dimensions;
//! * [`complex`] — chain complexes, homology presentations, induced maps;
//! * [`oracle`] — an independent truncated-degree linear-algebra check;
//! * [`dgmodel`] — the explicit differential graded models for plane-curve
//!   singularity charts and their wedge powers;
//! * [`tables`] — curve-level dimension tables assembled from local data;
//! * [`spectral`] — bigraded spectral-sequence pages, rank bookkeeping with
//!   provenance, filtration charts;
//! * [`verify`] — the self-check suite used by the `verify` CLI verb.

pub mod complex;
pub mod dgmodel;
pub mod error;
pub mod free;
pub mod groebner;
pub mod matrix;
pub mod modules;
pub mod oracle;
pub mod order;
pub mod poly;
pub mod ring;
pub mod spectral;
pub mod tables;
pub mod verify;

pub use error::{EngineError, Result};
