//! Test support for `langlift`: reference deciders implemented by different
//! means than the library (so agreement is evidence, not tautology), seeded
//! random generators for machines and algebra elements, and a reusable
//! law-checking harness.

pub mod gen;
pub mod gramref;
pub mod laws;
pub mod nfaref;
pub mod stackref;
