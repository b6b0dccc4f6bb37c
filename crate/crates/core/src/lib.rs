//! The real N-qubit Pauli group (N ≤ 4) as points of PG(2N−1, 2), with the
//! symplectic polar space of commutation, the quadric of symmetric elements
//! and the ovoids of Q⁺(7,2).

pub mod error;
pub mod gf2;
pub mod oracle;
pub mod pauli;
pub mod polar;

pub use error::{GeomError, Result};
pub use gf2::{BinVec, Flat, Line, PointSet};
pub use pauli::{Class, GeometryContext, Letter, PauliWord};
pub mod atlas;
pub mod config;
pub mod verify;
