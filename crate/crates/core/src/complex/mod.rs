//! The secondary cochain complex `C^n((A,B,ε);M)`, its ordinary counterpart,
//! cohomology, and the comparison maps.

mod cochain;
mod cohomology;
mod delta;
pub(crate) mod expand;
mod phi;
pub mod tensor;

pub use cochain::{Cochain, Complex, Flavor, DEFAULT_MAX_BASIS};
pub use cohomology::{coboundary_preimage, is_cocycle, CohomologySpace};
pub use delta::{ordinary_delta, secondary_delta};
pub use phi::{chi, phi_induced, phi_restriction, PhiInduced};
pub use tensor::{pair_count, pair_position, TensorIndex, TensorShape};
