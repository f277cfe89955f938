//! Exact arithmetic over Q and Q[x].

pub mod linalg;
pub(crate) mod modp;
pub mod poly;
pub mod rat;
pub mod ratfun;
pub mod resultant;
pub mod roots;

pub use poly::{poly_gcd, squarefree_decomposition, Poly};
pub use rat::Rat;
pub use ratfun::{partial_split, RatFun};
pub use resultant::poly_resultant;
pub use roots::{integer_roots, rational_roots};
