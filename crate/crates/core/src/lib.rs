//! Exact computation of the degree of the Dieudonné determinant for square
//! matrices over skew polynomial rings `k[x; α, δ]`, with applications to
//! kernels of endomorphisms of `G_a^n` and to linear differential and
//! q-difference systems.

pub mod endo;
pub mod error;
mod expr;
pub mod field;
pub mod matrix;
pub mod ode;
pub mod ore;
pub mod sample;
pub mod selftest;
pub mod wire;

pub use error::{Error, Result};
pub use field::{fe_arith, AlphaKind, BaseField, DeltaKind, Field, FieldElement, FieldKind, FieldOp};
pub use ore::{left_divmod, poly_add, poly_degree, poly_mul, OrePoly, OreRing, PolyDegree};
pub use matrix::{
    commutative_oracle, deg_det, invert, mat_mul, quotient_dim_oracle, row_echelon, DegDet,
    DegDetValue, EchelonResult, OracleCaps, OracleValue, OreMatrix, Pivot, RowOp,
};
pub use endo::{evaluate_t_poly, kernel_rank, t_module_rank, KernelRankReport, TModuleRankReport};
pub use ode::{assemble_system, companion_system, solution_dimension, OdeDimReport, TwistKind};
