//! Exact verification toolkit for products of self-similar sets with overlaps.

pub mod ifs;
pub mod numerics;
pub mod product;
pub mod region;
pub mod decompose;
pub mod cli;
