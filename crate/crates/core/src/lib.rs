//! Feedback capacity bounds for discrete memoryless two-user multiple
//! access channels.
//!
//! The crate evaluates the Cover–Leung inner bound and cut-set outer bounds,
//! decides when independent or dependent output feedback can raise a single
//! user's rate, and ships brute-force oracles for checking all of it.

pub mod channel;
pub mod checkers;
pub mod error;
pub mod families;
pub mod info;
pub mod io;
pub mod optimize;
pub mod oracle;
pub mod regions;
pub mod report;

pub use channel::{Axis, ConditionalPmf, ErasureSpec, JointDist, Mac, Pmf, User, Violation};
pub use error::{Error, Result};
pub use info::Bits;
