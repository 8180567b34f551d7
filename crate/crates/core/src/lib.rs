//! Exact computations for surgeries on `S²×S²` along links: link diagrams,
//! Alexander polynomials, finite group tables, intersection forms, and the
//! resulting manifold names.

pub mod alexander;
pub mod corpus;
pub mod forms;
pub mod groups;
pub mod laurent;
pub mod linkdiag;
pub mod surgery;
