//! A knowledge base of social commonsense: contexts, roles, the players that
//! fill them, and the events, norms, goals and desires attached at each level.
//!
//! The usual pipeline is parse, load, saturate, then query or validate:
//!
//! ```
//! use sck_core::{engine, parser, model::SortMode};
//!
//! let text = "role teacher.\nrole staff.\nplayer Lucy.\n\
//!             instance_context u : University.\n\
//!             play(Lucy, teacher, u, [0,9]).\nisAR(teacher, staff).";
//! let statements = parser::parse_document(text, SortMode::Strict).into_result().unwrap();
//! let mut kb = parser::statements_to_kb(&statements, SortMode::Strict).unwrap();
//! engine::saturate(&mut kb, &Default::default()).unwrap();
//! let fact = parser::parse_fact("hasR(University, staff)").unwrap();
//! assert!(kb.contains(&fact));
//! ```

pub mod engine;
pub mod model;
pub mod parser;
pub mod rules;
pub mod validate;
