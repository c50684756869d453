//! Positive definite functions on finite groups and the duality they induce.
//!
//! The crate builds Cayley representations and states of a finite group,
//! decides whether `Q_p = [[1, p(a), p(x)], [p(a)‾, 1, p(b)], [p(x)‾, p(b)‾, 1]]`
//! is positive semidefinite for every state `p`, checks the eigenstate
//! inequalities that follow from it, and recovers a group's multiplication
//! from its states alone.
//!
//! Numerical code is generic over [`scalar::Real`] (`f32` or `f64`); the
//! aliases below fix `f64`.

pub mod cayley;
pub mod duality;
pub mod group;
pub mod inequalities;
pub mod linalg;
pub mod positivity;
pub mod scalar;
pub mod state;

pub use cayley::{all_eigenpairs_of_a, two_block_eigenvector, EigenPair, PermutationRep};
pub use duality::{
    dual_group, mult_table_morphism, reconstruct_abelian, reconstruct_blurred, semidirect_case_check,
    verify_morphism, xword_scan, BlurredTable, CharacterOracle, DualError, NMorphism, StateOracle,
};
pub use group::{find_isomorphism, parse_gtab, write_gtab, FiniteGroup, GroupError, StandardGroup};
pub use inequalities::{coord_nash_gap, nash_gap, run_suite, sharp_nash_gap, PathConfig, SuiteReport};
pub use linalg::CMatrix;
pub use positivity::{block_oracle, Analyzer, BlockQ, Certificate, PositivityConfig, Triple, Verdict};
pub use scalar::Real;
pub use state::{characters, Character, State};

pub type Complex64 = num_complex::Complex<f64>;
pub type CMatrix64 = CMatrix<f64>;
pub type State64 = State<f64>;
pub type Character64 = Character<f64>;
pub type EigenPair64 = EigenPair<f64>;
pub type Analyzer64 = Analyzer<f64>;
pub type PathConfig64<'r> = PathConfig<'r, f64>;
