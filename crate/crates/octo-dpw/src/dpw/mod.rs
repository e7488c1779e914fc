//! The loop-group pipeline: potential -> frame -> factorization -> surface.

mod birkhoff;
mod frame;
mod integrate;
mod iwasawa;
mod potential;
mod roundtrip;
mod surface;

pub use birkhoff::{birkhoff_factorize, solve_minus_plus, BirkhoffFactors};
pub use frame::GroupLoop;
pub(crate) use frame::{lin_comb as frame_lin_comb, maurer_cartan_component as frame_maurer_cartan};
pub use integrate::{
    basepoint_node, frame_invariant_defect, integrate_frame, INTEGRATION_BUDGET, MAX_DEPTH,
};
pub use iwasawa::{factor_plus_unitary, factor_unitary_plus, iwasawa_factorize, IwasawaFactors};
pub use potential::{PolyCoeff, PotentialSpec, PotentialTerm};
pub use roundtrip::{roundtrip, ReintegrationReport, RoundTrip};
pub use surface::{dpw_run, extract_sheet, DpwRun, SurfaceSheet};
