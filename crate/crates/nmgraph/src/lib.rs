//! Mixed graphs whose arcs and edges carry type labels, together with the
//! algorithms this project revolves around: completeness via special
//! 2-paths, label-preserving homomorphisms and the derived chromatic and
//! clique numbers, planarity with combinatorial embeddings, extremal
//! clique search, and a structural audit of concrete planar witnesses
//! against the `3p^2 + p + 1` order bound (`p = 2n + m`).

pub mod error;
pub mod graph;
pub mod hom;
pub mod io;
pub mod planarity;
pub mod search;
pub mod seeing;
pub mod structure;

pub use error::{Error, ParseError, Result};
pub use graph::{order_bound, order_bound_p, reverse_type, AdjLabel, LabelKind, NMGraph, Params, VertexSet, MAX_ORDER};
pub use io::{parse_nmg, write_nmg};
pub use seeing::{is_nm_complete_by_identification, is_nm_complete_by_seeing, non_seeing_pairs, sees, Completeness, SeeWitness};
