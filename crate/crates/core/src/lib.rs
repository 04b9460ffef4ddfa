//! Local and global invariants of Drinfeld F_q[T]-modules over F_q(t).

pub mod drinfeld;
pub mod elliptic;
pub mod error;
pub mod funcfield;
pub mod globalmu;
pub mod linalg;
pub mod localdyn;
pub mod localfield;
pub mod tate;

pub use error::{Error, Result};
