//! Ladder quivers, the EHX and Plücker superpotentials, cluster charts and the Schubert map.

pub mod expr;

pub use expr::{parse_expr, Laurent, Monomial, RationalExpr, Symbol};
pub mod quiver;

pub use quiver::{LadderQuiver, Vertex, VertexKind};
pub mod pluecker;

pub use pluecker::{
    available_exchanges, frozen_set, mutate, normalize_empty, pluecker_superpotential, three_term_relations,
    ChartExpansion, ClusterChart, Exchange,
};
pub mod schubert_map;

pub use schubert_map::{
    prop_commutes_verify, rectangle_image, schubert_map, theorem_a_verify, LocalVerdict, LocalizedClass, PartialReport,
    SchubertMap, VertexReport,
};
