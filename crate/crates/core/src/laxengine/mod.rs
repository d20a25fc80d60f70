//! Construction of the operators `σ̂_ba` and of the Lax and R matrices.

mod rtensor;
mod sigma;

pub use rtensor::{assemble_r, check_weightless, opposite_r, RKind, RTensor};
pub use sigma::{
    admissible_intermediates, closed_form_sigma, construction_step, extend_sigma, indrel,
    init_simple_sigma, pair_label, Provenance, SigmaSet,
};
