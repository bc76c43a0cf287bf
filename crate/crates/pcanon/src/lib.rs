//! p-canonical bases of Hecke algebras and antispherical modules, computed through
//! a localised matrix model of the diagrammatic Hecke category.

pub mod arith;
pub mod coxeter;
pub mod hecke;
pub mod intersection;
pub mod localisation;
pub mod main_alg;
pub mod runner;
pub mod stdcat;

