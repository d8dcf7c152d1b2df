//! An exact computational laboratory for finite unital rings.
//!
//! Everything here is table-driven: a ring is a pair of Cayley tables over
//! element indices, so units, ideals, radicals, localizations, spectra and
//! sheaf sections are all computed by finite, exhaustive — and therefore
//! checkable — searches. No floating point, no approximation: every reported
//! isomorphism carries an explicit bijective homomorphism and every
//! classification predicate is decided by running its definition.
//!
//! Module map:
//!
//! * [`ring`] — finite rings as Cayley tables, constructors, homomorphisms.
//! * [`ideals`] — ideal enumeration, Jacobson radical, quotients, simple
//!   modules, quasi-nilpotence and the classification predicates built on it.
//! * [`module`] — finite left modules, module homs, module localization.
//! * [`localization`] — commutative fraction rings, saturation, prime ideals.
//! * [`spectrum`] — the space of saturated invertibility loci ("full
//!   spectrum"): points, topology, closed loci, gluing, affinity.
//! * [`sheaf`] — structure and module sheaves as inverse limits, stalks,
//!   sheaf-condition verification, the comparison with the prime spectrum.
//! * [`morphism`] — spectral maps of ring homs, localness at stalks,
//!   round-tripping a hom through its induced morphism.
//! * [`rewrite`] — presentation-based localization of arbitrary finite rings:
//!   free polynomials over a ring with formal inverses, bounded rewriting,
//!   invertibility witnesses.
//! * [`graded`] — twisted Laurent rings, crossed-product recognition, and the
//!   degree-zero correspondence for homogeneous invertibility loci.
//! * [`corpus`] — the canonical test corpus of small rings.
//! * [`specfile`] — the JSON ring-description format used by the CLI.
//! * [`acceptance`] — the runnable acceptance checks (`corpus run`).
//! * [`cli`] — the command-line front end.

pub mod acceptance;
pub mod cli;
pub mod corpus;
pub mod graded;
pub mod ideals;
pub mod localization;
pub mod module;
pub mod morphism;
pub mod rewrite;
pub mod ring;
pub mod sheaf;
pub mod specfile;
pub mod spectrum;

pub use ring::{Elem, FiniteRing, RingError, RingHom};
