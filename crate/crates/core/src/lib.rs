//! Linear extensions and canonical embeddings of τ-like partial orders, for τ
//! one of ω, ω*, ω+ω* and ζ, together with the coding gadgets that recover
//! finite-union bounds, false stages and the range of an injective function
//! from any such extension.

pub mod embed;
pub mod error;
pub mod gadgets;
pub mod harness;
pub mod linearize;
pub mod order;
pub mod stream;

pub use error::{Error, Result};
pub use order::{CanonicalPoint, FinitePoset, Id, LinearOrder, OrderKind};
pub use stream::{Side, StreamPoset};
