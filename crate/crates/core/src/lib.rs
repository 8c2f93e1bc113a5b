pub mod construct;
pub mod field;
pub mod matrix;
pub mod quiver;
pub mod classify;
pub mod rep;
pub mod io;
pub mod cli;
pub mod random;
