//! Exact construction of W(E8)-invariant weak Jacobi forms as polynomials
//! in the meromorphic generators `E4, E6, a_i, b_j`.

pub mod graded_ring;
pub mod ansatz;
pub mod constructor;
pub mod linear_solver;
