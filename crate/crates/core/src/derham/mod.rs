//! Weight-graded monomial algebras, Kähler forms and de Rham complexes.

mod forms;
mod presentation;

pub use forms::{de_rham_complex, form_basis, kahler_forms, DeRham, Form, KahlerForms, StupidSequence};
pub use presentation::{parse_monomial, AlgebraPresentation, Generator, Monomial};
