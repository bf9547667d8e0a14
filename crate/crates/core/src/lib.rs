//! Convolutional codes over finite fields: arithmetic, sliding matrices,
//! MDP verification, field-size bounds, and constructive search.

pub mod gf;
pub mod gfmatrix;
pub mod code;
pub mod verify;
pub mod bounds;
pub mod explore;
pub mod repro;
