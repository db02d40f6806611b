//! The quantum cohomology ring of a partial flag variety.

pub mod engine;
pub mod expansion;
pub mod groebner;
pub mod poly;
pub mod presentation;

pub use engine::QuantumRing;
pub use expansion::{Expansion, ExpansionRecord, ProductExpansion, SchubertExpansion};
pub use poly::{Mono, QPoly};
pub use presentation::RingPresentation;
