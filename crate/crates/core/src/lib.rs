pub mod config;
pub mod emit;
pub mod error;
pub mod exact;
pub mod invariants;
pub mod moduli;
pub mod ode;
pub mod output;
pub mod radial;
pub mod rep_core;
pub mod special_fn;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
pub use invariants::BlockLabel;
