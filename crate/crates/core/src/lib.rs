//! Exact convex geometry for Bézout-type inequalities: polytopes, mixed
//! volumes, mixed discriminants, relative inradii, BKK bounds and a seeded
//! harness that checks the inequalities on random instances.

pub mod discriminant;
pub mod geometry;
pub mod harness;
pub mod inradius;
pub mod linalg;
pub mod lp;
pub mod mixed_volume;
pub mod multilinear;
pub mod newton;
pub mod rational;
pub mod report;

pub use rational::Rational;
pub use report::InequalityReport;
