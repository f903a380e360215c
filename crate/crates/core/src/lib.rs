//! Exact invariant bookkeeping for plumbed 3-manifolds, Seifert fibered
//! singularity links, Lefschetz fibrations and Fintushel–Stern knot surgery.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactmat`]: integer Smith normal form, determinants, inertia.
//! * [`plumbing`]: plumbing trees, blow-up/blow-down moves, boundary homology.
//! * [`seifert`]: Seifert invariants of star plumbings and open books.
//! * [`mcg`]: Dehn twist words acting on first homology.
//! * [`laurent`], [`knots`]: Laurent polynomials, Seifert matrices, Alexander polynomials.
//! * [`smooth4`]: invariant records of closed 4-manifolds and their fillings.
//! * [`report`]: end-to-end reports combining all of the above.
//! * [`citations`]: the keys every cited (not computed) fact points to.

pub mod bigjson;
pub mod citations;
pub mod exactmat;
pub mod knots;
pub mod laurent;
pub mod mcg;
pub mod plumbing;
pub mod report;
pub mod seifert;
pub mod smooth4;
