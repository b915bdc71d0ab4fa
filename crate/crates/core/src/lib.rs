//! Exact-arithmetic tests of the cyclotomic-integer obstruction for
//! candidate subfactor principal graphs.
//!
//! The pipeline builds the Haagerup series graphs (or any connected
//! bipartite graph), derives the minimal polynomial of the squared
//! Perron–Frobenius eigenvalue, and certifies Galois-group facts from
//! irreducibility witnesses and discriminant factorizations.

pub mod cli;
pub mod galois;
pub mod graphs;
pub mod numthy;
pub mod polyring;
