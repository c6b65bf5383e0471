//! Support library for the `flp` binary: profile file I/O and the
//! mechanism-by-property result matrix.

pub mod io;
pub mod table;
