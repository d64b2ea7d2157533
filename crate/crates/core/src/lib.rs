pub mod analysis;
pub mod bounds;
pub mod cli;
pub mod expr;
pub mod form;
pub mod gf;
pub mod projgeom;
pub mod search;
pub mod verify;
