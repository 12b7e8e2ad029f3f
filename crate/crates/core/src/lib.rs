pub mod error;
pub mod linalg;

pub use error::{Error, Result};
pub mod torus;
pub mod appell_humbert;
pub mod family;
pub mod semiabelian;
pub mod serde_util;
pub mod tate_pairing;
pub mod oracles;
pub mod random;
pub mod document;
pub mod cli;
