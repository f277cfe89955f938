//! Rational-solution engines for scalar equations and first-order systems.

pub mod matrix;
pub mod oracle;
pub mod scalar;
pub mod space;
pub mod system;

pub use scalar::{
    degree_bound, first_order_solvable_by_decomposition, solve_first_order, solve_first_order_with,
    solve_scalar, universal_denominator, ScalarDiffEq,
};
pub use matrix::MatrixRF;
pub use oracle::{brute_force_oracle, oracle_denominator};
pub use space::{Obstruction, Solution, SolutionSpace, SolValue, Status};
pub use system::{eliminate, solve_system, solve_system_param, Elimination};

/// Default cap on the certified numerator degree.
pub const DEFAULT_DEGREE_CAP: usize = 200;

/// Environment variable overriding [`DEFAULT_DEGREE_CAP`].
pub const DEGREE_CAP_ENV: &str = "DIFFALG_DEGREE_CAP";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Solves whose certified degree bound exceeds this fail with
    /// `Error::BoundExceeded` instead of building a huge system.
    pub degree_cap: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { degree_cap: DEFAULT_DEGREE_CAP }
    }
}

impl SolverConfig {
    /// Default config, with the cap taken from `DIFFALG_DEGREE_CAP` when set
    /// to a valid number.
    pub fn from_env() -> Self {
        let cap = std::env::var(DEGREE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_DEGREE_CAP);
        SolverConfig { degree_cap: cap }
    }
}
