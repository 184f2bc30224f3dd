//! Library side of the `bowtie` command: corpus generation and the
//! verification driver, kept separate from argument parsing so the
//! integration tests can call them directly.

pub mod corpus;
pub mod verify;
