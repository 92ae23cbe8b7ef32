pub mod bdtriple;
pub mod centralizer;
pub mod chevalley;
pub mod cli;
pub mod galois;
pub mod linalg;
pub mod rmatrix;
pub mod rootsys;
pub mod scalars;
pub mod tensor;
