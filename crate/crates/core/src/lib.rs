pub mod algebra;
pub mod scalars;
pub mod coxeter;
pub mod opalg;
pub mod spin;
pub mod monodromy;
