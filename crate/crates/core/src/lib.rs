//! Kirillov-Reshetikhin crystals `B^{k,1}` of affine type `D_n^(1)`.
//!
//! The crate models the KR crystal on single columns, with the classical
//! operators coming from the tensor product rule and the `0`-arrows from the
//! filling and dropping maps. On top of that it provides tensor products,
//! crystal graph generation and classical decomposition, and an exact
//! Laurent-polynomial engine for the prepolarization norm formulas and their
//! `q`-adic conditions. The [`verify`] module bundles the checkable claims
//! into reproducible reports.

pub mod crystal;
pub mod error;
pub mod graph;
pub mod kr;
pub mod laurent;
pub mod tableau;
pub mod tensor;
pub mod verify;
pub mod weight;

pub use crystal::Crystal;
pub use error::{Error, Result};
pub use kr::{KnCrystal, KrCrystal};
pub use laurent::LaurentPoly;
pub use tableau::{Column, Letter};
pub use tensor::TensorCrystal;
pub use weight::Weight;
