pub mod error;
pub mod exec;
pub mod certify;
pub mod cycstruct;
pub mod decomp;
pub mod ffield;
pub mod families;
pub mod fpoly;
pub mod linalg;
pub mod numtheory;
pub mod spcode;

pub use error::{Error, Result};
