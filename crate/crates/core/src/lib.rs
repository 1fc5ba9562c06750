//! Generalised friezes on the cluster category of type `A_n`.
//!
//! A dissection of the `(n+3)`-gon is a rigid object `R` of the cluster
//! category. This crate computes the frieze it determines in two
//! independent ways: by propagating integers across the pieces of the
//! dissection ([`bhj`]), and as the modified Caldero-Chapoton map
//! `ρ_R(c) = Σ_e χ(Gr_e(Gc))` built from string modules ([`gmodule`],
//! [`grassmann`], [`ccmap`]). The [`verify`] module sweeps all
//! dissections of small polygons and checks that the two agree, along with
//! the mesh and extension identities.

pub mod bhj;
pub mod ccmap;
pub mod cluster;
pub mod error;
pub mod field;
pub mod frieze;
pub mod gmodule;
pub mod grassmann;
pub mod polygon;
pub mod verify;

pub use error::{Error, Result};
