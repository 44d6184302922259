//! Superselection sector calculus on nets of matrix algebras.

pub mod algebra;
pub mod endo;
pub mod equivariance;
pub mod family;
pub mod net;
pub mod pfa;

pub use algebra::{bicommutant, commutant, MatrixAlg};
pub use endo::{
    check_endomorphism, check_localized, check_perp_commutativity_sectors, check_transportable, diamond, diamond_in,
    diamond_mor, diamond_mor_in, inner_intertwiner, Endo, Intertwiner, LocalizedEndo, PerpSectorReport,
    TransportReport, Unitary,
};
pub use equivariance::{
    check_action_laws, check_equivariance, check_symmetry_implementation, diamond_covariance, find_covariance,
    g_act_sector, verify_covariance, Covariance, CovarianceFamily, EquivarianceReport, NotFound, SectorGroupData,
};
pub use family::{FamilyJson, SectorJson};
pub use net::{check_haag_duality, check_perp_commutativity, HaagReport, LocalKind, MatrixNet, NetJson};
pub use pfa::{pfa_structure_map, qubit_family, validate_theorem_3_11, SectorAlgebra, TheoremReport};

use crate::report::ValidationReport;

#[derive(Debug, Clone, thiserror::Error)]
pub enum SectorError {
    #[error("matrix of dimension {got}, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("not a *-algebra: {0}")]
    NotAlgebra(String),
    #[error("unknown region {0:?}")]
    UnknownRegion(String),
    #[error("malformed net: {0}")]
    BadNet(String),
    #[error("net has no symmetry data")]
    NoSymmetry,
    #[error("matrix is not a multiple of a unitary")]
    NotUnitary,
    #[error("element outside the global algebra")]
    OutsideGlobal,
    #[error("{0} is not a *-endomorphism ({} violations)", .1.violations.len())]
    NotEndomorphism(String, ValidationReport),
    #[error("{0} is not localized in its region ({} violations)", .1.violations.len())]
    NotLocalized(String, ValidationReport),
    #[error("not an intertwiner: {0}")]
    NotIntertwiner(String),
    #[error("intertwiner outside the bicommutant of {0}")]
    NotInBicommutant(String),
    #[error("no common region for {0} and {1}")]
    NoCommonRegion(String, String),
    #[error("intertwiners do not compose")]
    NotComposable,
    #[error("argument {index} ({sector}) is not localized in the source {region}")]
    LocalizationMismatch { index: usize, sector: String, region: String },
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("json: {0}")]
    Json(String),
}
