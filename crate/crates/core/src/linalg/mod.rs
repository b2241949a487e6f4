//! Integer linear algebra: exact matrices, Smith normal form, abelian groups.

mod abelian;
mod matrix;
mod snf;

pub use abelian::{
    abelianization, abelianized_map, relator_matrix, verify_map_abelianized, AbelianCoordinates,
    AbelianInvariants, MapCheck,
};
pub use matrix::IntMatrix;
pub use snf::{invariant_factors, smith_normal_form, SmithForm};
