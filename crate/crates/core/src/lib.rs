//! Finite projective planes, k-nets and the algebraic obstructions that rule
//! out 5-nets realized in PG(2, q).

pub mod constructions;
pub mod cyclotomic;
pub mod field;
pub mod forms;
pub mod io;
pub mod net;
pub mod plane;
pub mod search;

use thiserror::Error;

pub use field::{Field, FieldElement};
pub use net::{DualKNet, KNet};
pub use plane::{ProjLine, ProjPoint};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] field::FieldError),
    #[error(transparent)]
    Geometry(#[from] plane::GeometryError),
    #[error(transparent)]
    Form(#[from] forms::FormError),
    #[error(transparent)]
    Net(#[from] net::NetError),
    #[error(transparent)]
    Construction(#[from] constructions::ConstructionError),
    #[error(transparent)]
    Cyclotomic(#[from] cyclotomic::CyclotomicError),
    #[error(transparent)]
    Format(#[from] io::FormatError),
    #[error(transparent)]
    Search(#[from] search::SearchError),
}
