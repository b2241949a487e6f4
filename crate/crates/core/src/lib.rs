pub mod alexander;
pub mod catalog;
pub mod constructions;
pub mod coset;
pub mod error;
pub mod homology;
pub mod kervaire;
pub mod linalg;
pub mod map;
pub mod parse;
pub mod presentation;
pub mod tietze;
pub mod word;

pub use error::Error;
pub use map::GroupMap;
pub use parse::{parse_presentation, parse_presentation_any, parse_word};
pub use presentation::Presentation;
pub use word::{Generator, Letter, Word};
