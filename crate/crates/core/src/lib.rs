//! Parsing, canonicalization and conservation-law checking of particle
//! reaction statements such as
//!
//! ```text
//! E+ E- --> W- < QUARK QUARKBAR > W+ < TAU+ NUTAU + MU+ NUMU + E+ NUE > ;
//! ```
//!
//! ```
//! use reacproc::{canonicalize, parse_reaction, render_reaction, OrderingMode, Tables};
//!
//! let tables = Tables::bundled();
//! let r = parse_reaction("E+ E- --> MU- MU+ ;").unwrap();
//! let c = canonicalize(&r, OrderingMode::Dict, &tables.dictionary);
//! assert_eq!(render_reaction(&c), "e+ e- --> mu+ mu- ;");
//! ```

pub mod batch;
pub mod canon;
pub mod conservation;
pub mod lexer;
pub mod model;
pub mod parser;
pub mod render;
pub mod tables;

pub use canon::{canonicalize, compare_names, OrderingMode};
pub use conservation::{check_all_laws, Law, Relation, Status, Verdict};
pub use model::{FinalState, GroupNode, ParticleNode, Reaction, Sign};
pub use parser::{parse_reaction, ParseError};
pub use render::render_reaction;
pub use tables::{Component, Dictionary, PropertyTable, QuantumVector, Tables};
