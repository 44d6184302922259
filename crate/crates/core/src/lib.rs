//! Exact finite models for orthogonal categories, prefactorization operads,
//! causal geometry of Minkowski double cones and superselection sectors.

pub mod campaign;
pub mod configspace;
pub mod gaussian;
pub mod linalg;
pub mod matrix;
pub mod minkowski;
pub mod operad;
pub mod orthogonal;
pub mod rational;
pub mod report;
pub mod sectors;

pub use gaussian::GaussQ;
pub use matrix::Matrix;
pub use orthogonal::{FiniteGroup, GroupAction, MorId, ObjId, OrthCategory, OrthFunctor};
pub use rational::Q;
pub use report::{Check, ValidationReport, Violation};
