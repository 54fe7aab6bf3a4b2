//! Berenstein-Zelevinsky data of finite and affine type A with their
//! crystal structures.

pub mod bz_affine;
pub mod bz_fin;
pub mod crystal_graph;
pub mod error;
pub mod kind;
pub mod lusztig;
pub mod roots_maya;
pub mod tableaux_psi;

pub use bz_fin::{BzDatum, Norm, Outcome, Scalars, StringReport, VerifyReport, Violation};
pub use error::{Error, Result};
pub use kind::{format_word, parse_word, Kind};
pub use lusztig::{CrystalMeta, IndexMeta, LusztigDatum};
pub use roots_maya::{AffineRootData, Interval, MayaFin, MayaZ};
pub use tableaux_psi::{m_component, m_component_naive, psi, psi_inverse, star_coordinates, KTableau};
pub use bz_affine::{AffineBz, AffineKey, ElementaryB, ExtInt, TensorPair};
pub use crystal_graph::{bfs, CrystalElement, CrystalGraph, WeightCensus};
