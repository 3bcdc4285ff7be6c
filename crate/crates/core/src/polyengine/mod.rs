//! Exact-coefficient construction of the deformed Hermite families.

pub mod families;
mod poly;
mod series;
mod weighted;

pub use families::{
    classical_hermite, construct, g_m, generating_function, recursion, recursion_y, recursion_z,
    rodrigues, route_constant, Admissibility, FamilyTag, Route,
};
pub use poly::Poly;
pub use series::TSeries;
pub use weighted::{Envelope, WeightedFunction};
