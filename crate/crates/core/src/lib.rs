//! Finite k-graphs, LiMaR-splits and Kumjian-Pask verification.

pub mod cli;
pub mod kp;
pub mod limar;
pub mod skeleton;

#[cfg(test)]
mod fixtures;
