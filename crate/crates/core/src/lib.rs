//! Battleship on a lattice: sink a translated ship of known shape with as
//! few misses as possible.
//!
//! The crate covers lattice-set geometry ([`lattice`]), the game model and
//! position-set calculus ([`game`]), shooting strategies ([`strategy`]), an
//! exact minimax solver for the worst-case miss count ([`solver`]), seeded
//! shape generators and file formats ([`gen`], [`io`]) and a batch
//! evaluation harness ([`eval`]).

pub mod eval;
pub mod game;
pub mod gen;
pub mod io;
pub mod lattice;
pub mod point;
pub mod rows;
pub mod shape;
pub mod solver;
pub mod strategy;

pub use point::{Direction, LatticePoint};
pub use shape::{Shape, ShapeError};
