//! Monodromy of the hypergeometric and Picard-Fuchs equations attached to
//! the Fermat simple elliptic singularities E6, E7, E8, with machine-checked
//! certification that the associated modular groups are Gamma(3), Gamma(4),
//! and Gamma(6).
//!
//! The pipeline, bottom to top:
//!
//! - [`scalars`]: big rationals, cyclotomic fields Q(zeta_N), configurable-
//!   precision complex arithmetic, and recognition of numeric values as
//!   exact algebraic numbers.
//! - [`matgroup`]: 2x2 matrices over pluggable scalars, finite-group closure
//!   by breadth-first products, group fingerprints.
//! - [`hyperg`]: local monodromies and connection matrices of the Gauss
//!   hypergeometric equation in both the resonant (logarithmic) and the
//!   non-resonant regime, plus arbitrary-precision Gamma, digamma and 2F1.
//! - [`pf`]: the E6/E7/E8 case catalog, the covering substitution x = C s^l,
//!   normalization to period bases, and exact recognition of the invariant
//!   and twisted monodromy generators.
//! - [`sl2z`]: congruence-subgroup arithmetic, bounded word search for
//!   membership certificates, relation checking, and the final verdicts.
//! - [`numcheck`]: independent numerical verification by transporting
//!   fundamental matrices along explicit loops with an embedded
//!   Runge-Kutta-Fehlberg 7(8) pair.
//! - [`report`]: the end-to-end pipeline driver and JSON/text reporting used
//!   by the `gammaw` binary.
//!
//! Run `cargo run --example full_verdict` for the complete certification, or
//! see the other examples for the individual capabilities.

pub mod hyperg;
pub mod matgroup;
pub mod numcheck;
pub mod pf;
pub mod report;
pub mod scalars;
pub mod sl2z;
