//! Exact computations with Drinfeld associators, infinitesimal braids and
//! solutions of the Kashiwara-Vergne equations, over the rationals.

pub mod associators;
pub mod braids;
pub mod drinfeld_kohno;
pub mod error;
pub mod free_lie;
pub mod kv;
pub mod linalg;
pub mod rational;
pub mod series;
pub mod tangential;
pub mod traces;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use free_lie::{eval_lie, group_mul, universal_cbh, GradedLie, GradedLieOracle, LieElement};
pub use rational::Rational;
pub use series::{CommSeries, NCSeries, UniSeries};
pub use word::Word;
