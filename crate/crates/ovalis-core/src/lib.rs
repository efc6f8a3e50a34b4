//! Combinatorial engine for the topology of real algebraic curves on real
//! del Pezzo surfaces of degree 1 and 2.
//!
//! The crate models *real schemes*: topological types of arrangements of
//! disjoint circles (ovals, plus at most one pseudo-line) on the real point
//! sets `⊔k S²` (degree 2) and `RP² ⊔ ⊔k S²` (degree 1).  On top of the
//! scheme model it provides
//!
//! * exhaustive enumeration of schemes by oval count and surface,
//! * the known prohibition criteria (Harnack-type bounds, nest
//!   obstructions, an Euler-characteristic estimate, parity of
//!   pseudo-lines) with replayable witnesses,
//! * a catalog of published realization results with validation,
//! * an encoder/searcher/checker pipeline for trigonal curve graphs on
//!   Hirzebruch surfaces,
//! * double-cover lifts (plane with quartic, cone with sextic-like data)
//!   and quadric-degeneration gluing.

pub mod catalog;
pub mod cover;
pub mod enumerate;
pub mod glue;
pub mod nest;
pub mod notation;
pub mod obstruct;
pub mod scheme;
pub mod trigonal;
