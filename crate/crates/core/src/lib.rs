//! Exact computation in the algebra of braids and ties `E_n(u)`: the
//! `T_w E_I` basis and its multiplication, the relative traces and the
//! Markov trace, and the link invariants built from them.

pub mod algebra;
pub mod braidio;
pub mod hecke;
pub mod invariants;
pub mod par;
pub mod partitions;
pub mod permutations;
pub mod relations;
pub mod report;
pub mod sampling;
pub mod scalars;
pub mod trace;

/// Hard upper bound on the number of strands of any stored object.
pub const MAX_N: usize = 16;

/// Default level guard for algebra constructors; `Bell(n)·n!` grows fast.
pub const DEFAULT_LEVEL_GUARD: usize = 8;
