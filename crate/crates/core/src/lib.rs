//! Energy accounting for copying one bit of information onto a thermally
//! noisy two-level medium.
//!
//! A reversible copier acts on a source qubit and a medium qubit ([`copier`]);
//! with a thermally occupied medium the copy behaves as a binary symmetric
//! channel whose error rate is the upper-level population ([`channel`],
//! [`thermo`]). Protecting the payload against those errors costs redundancy,
//! and the total energy delivered to the media per useful copied bit has a
//! closed form with infimum ln(4)/beta at vanishing level splitting
//! ([`energy`]). Every closed form is cross-checked by dense density-matrix
//! simulation ([`matrix`]) and by seeded Monte Carlo sampling ([`mc`]); the
//! [`cli`] module exposes the whole pipeline as a command-line tool.

pub mod channel;
pub mod cli;
pub mod copier;
pub mod energy;
mod error;
pub mod matrix;
pub mod mc;
pub mod thermo;

pub use error::{Error, Result};
