//! Twisted loop algebra: truncated Laurent loops, the affine symmetry
//! algebra with its order-four grading, and loop-valued connections.

mod laurent;
mod lie;
mod twisted;

pub use laurent::{Coeff, Loop, OLoop, QLoop};
pub use lie::{embed_minus_one, embed_plus_one, GradedComponent, LieElement};
pub use twisted::{
    assemble_extended, residual_stats, zero_curvature_residual, LieForm, TwistedLoop,
};
