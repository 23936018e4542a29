//! Modules for H_k^ext: parameters, matrices, calibrated construction,
//! relation checks, intertwiners, weight-space structure and rank two.

pub mod intertwiner;
pub mod laurent;
pub mod matrix;
pub mod module;
pub mod params;
pub mod rank2;
pub mod relations;
pub mod structure;

pub use intertwiner::{intertwiner, tau_square_check, tau_square_scalar, tau_weight_check};
pub use laurent::{parse_laurent, Laurent};
pub use matrix::SMat;
pub use module::{build_calibrated, z_p_of_gamma, CalibratedModule, Module, Normalization};
pub use params::{FieldParams, HeckeParams};
pub use rank2::{
    rank2_characters, rank2_induced, Rank2Character, Rank2Class, Rank2Family, Rank2Tag,
};
pub use relations::{
    verify_relations, verify_relations_with, RelationCheck, RelationReport, Status,
};
pub use structure::{
    central_scalar_check, is_irreducible, weight_spaces, GenericModule, WeightSpace,
};
