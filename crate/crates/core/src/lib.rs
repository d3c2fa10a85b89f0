// tolerance checks are written as !(x < tol) so that NaN fails them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gamma;
pub mod quadrature;
pub mod elliptic;
pub mod hypergeo;
pub mod linalg;
pub mod recurrence;
pub mod carlitz;
pub mod operators;
pub mod spectral;
pub mod cli;
