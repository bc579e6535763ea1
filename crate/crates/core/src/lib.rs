//! Finite residue rings of complete discrete valuation rings, the
//! homomorphisms between them, and the Krasner-type bounds that decide when
//! such a homomorphism lifts to the rings themselves.

pub mod error;
pub mod resfield;
pub mod valuation;
pub mod witt;
pub mod dvr;
pub mod ramification;
pub mod homlift;
pub mod serial;

pub use dvr::{Dvr, DvrElem, DvrSpec, ResElem, ResidueRing, Rn, WittCoeff};
pub use error::{Error, Result};
pub use homlift::{DvrHom, ResidueHom};
pub use resfield::{Field, FieldEmbedding, FieldSpec, FqElem};
pub use valuation::{DvrVal, ValQ};
pub use witt::{Witt, WittElem, WittRing};
