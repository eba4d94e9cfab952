//! File formats, construction recipes and the construction catalog behind
//! the `dsrg` command-line tool.

pub mod catalog;
pub mod formats;
pub mod recipe;

pub use catalog::{CatalogEntry, CatalogError};
pub use formats::{parse_graph, render, Format, GraphFile, ParseError};
pub use recipe::Recipe;
