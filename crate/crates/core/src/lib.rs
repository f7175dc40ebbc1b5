pub mod abelian;
pub mod components;
pub mod covers;
pub mod error;
pub mod ff_poly;
pub mod proj_line;
pub mod glued_scheme;
pub mod mumford;

pub use error::{Error, Result};
pub use ff_poly::PrimeField;
pub use glued_scheme::GluedScheme;
pub use mumford::{ClassReport, Layer, MumfordDivisor, Verdict, Witness};
