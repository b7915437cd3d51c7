//! Special transformations on words of positive group presentations.
//!
//! The crate manipulates words over `S ∪ S⁻¹` for a positive presentation
//! `(S, R)` using five kinds of local moves: removing or inserting a trivial
//! pair, applying a relation to a positive or negative factor, and the two
//! reversing moves that turn `v⁻¹v′` into `uu′⁻¹` (or `vv′⁻¹` into `u⁻¹u′`).
//!
//! Around these it provides subword reversing and fractions, a positive monoid
//! toolkit (equivalence classes, divisors, lcms, coset heads), Cayley graph
//! fragments with traced words, a bounded derivation search, and for
//! right-angled presentations the elimination of insertion steps from a
//! derivation by means of augmented (indexed) words.
//!
//! ```
//! use artin_special::{Presentation, reversing};
//!
//! let p = Presentation::parse("gens: a b\nrel: aba = bab\n").unwrap();
//! let w = p.parse_word("Ba").unwrap();
//! let r = reversing::right_reverse(&p, &w, 100).unwrap();
//! assert_eq!(p.render(r.word()), "abAB");
//! ```

pub mod cayley;
pub mod cli;
pub mod monoid;
pub mod presentation;
pub mod raag;
pub mod reversing;
pub mod rewrite;
pub mod search;
pub mod trace;
pub mod word;
pub mod worked;

pub use presentation::{
    artin_presentation, validate, Classification, CoxeterEntry, CoxeterMatrix, Orientation,
    ParseError, Presentation, PresentationError, Relation,
};
pub use rewrite::{Derivation, Step, StepKind};
pub use word::{Gen, Letter, PositiveWord, Sign, Word};
