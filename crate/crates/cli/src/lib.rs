//! Command implementations behind the `hmstab` binary.

pub mod commands;
pub mod corpus;
pub mod verify;
