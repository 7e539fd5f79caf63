//! Workbench for the finitely presented group `SE2(l)`.
//!
//! The crate provides free-group word arithmetic ([`words`]), exact
//! cyclotomic integer arithmetic ([`cyclo`]), the generator for the
//! `SE2(l)` presentation and its derived relator families
//! ([`presentation`]), a Knuth-Bendix string-rewriting engine
//! ([`rewrite`]), integer Smith normal form and abelian invariants
//! ([`abelian`]), a normalized bar-complex calculus over finitely
//! generated abelian groups ([`bar`]), and the verification pipelines
//! that certify the homological vanishing results ([`verify`]).

pub mod abelian;
pub mod bar;
pub mod cyclo;
pub mod io;
pub mod presentation;
pub mod rewrite;
pub mod verify;
pub mod words;

pub use cyclo::PrimeContext;
pub use presentation::Presentation;
pub use words::{Alphabet, Word};
