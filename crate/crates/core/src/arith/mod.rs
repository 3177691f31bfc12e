//! Exact arithmetic in Q[x, y, z] and Q(x, y, z).

pub mod factor;
pub mod gcd;
pub mod kernel;
pub mod linalg;
pub mod modp;
pub mod mono;
pub mod mpoly;
pub mod partial;
pub mod ratfun;
pub mod upoly;
pub mod zassenhaus;

pub use gcd::{gcd, lcm};
pub use mono::{Mono, Var};
pub use mpoly::{rat, rat2, MPoly, Rat};
pub use ratfun::RatFun;
