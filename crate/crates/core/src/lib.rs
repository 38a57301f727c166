//! Simulation and exact-analysis primitives for the longest increasing
//! subsequence (LIS) of heavy-tailed random walks.
//!
//! The crate is organised around one central trick: for a walk whose step
//! magnitudes live in an ordered space where any finite set of magnitudes is
//! dominated by its largest member, the order between two partial sums is
//! decided entirely by the sign of the largest-magnitude step between them.
//! That makes partial-sum comparisons O(1) after an O(n log n) range-argmax
//! precomputation, so LIS statistics of very long walks become cheap.
//!
//! Modules:
//! - [`order`]: the ultra-fat-tailed ordered space itself (formal integer
//!   combinations of real generators, compared lexicographically from the
//!   largest generator down).
//! - [`rng`]: splittable deterministic random streams.
//! - [`rmq`]: sparse-table range argmax with O(1) queries.
//! - [`walk`]: walk samplers (ultra-fat, symmetric stable, Gaussian) and the
//!   O(1) partial-sum comparator.
//! - [`lis`]: patience-sorting LIS engine, trajectories, first passage,
//!   split recursion, and the greedy subsequence construction.
//! - [`exact`]: exact small-n distributions by enumeration, tail sums, and
//!   stochastic-domination checks in rational arithmetic.
//! - [`numerics`]: quadrature, root solvers, and the two exponent-bound
//!   constants.

pub mod exact;
pub mod lis;
pub mod numerics;
pub mod order;
pub mod rmq;
pub mod rng;
pub mod walk;

pub use order::{GeneratorId, UltraElement};
pub use walk::{PartialSumOrder, RealWalkSample, WalkSample};
