pub mod algebra;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod geometry;
pub mod statement;
pub mod tiling;
pub mod corpus;
pub mod construct;
pub mod replay;
pub mod selftest;
pub mod io;
