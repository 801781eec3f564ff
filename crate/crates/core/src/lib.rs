pub mod algebra;
pub mod functionals;
pub mod operators;
pub mod sheffer;
pub mod families;
pub mod numcheck;
pub mod cli;
