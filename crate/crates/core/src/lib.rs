//! Exact computation of polynomial identities for comodule algebras over the
//! Taft algebras `H_{n²}` and the Hopf algebras `E(n)`.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactnum`]: rationals and cyclotomic fields `Q(ζ_n)`;
//! - [`commpoly`]: sparse commutative polynomials in `t`-variables and structure parameters;
//! - [`ncalg`]: presented noncommutative algebras with confluent rewriting;
//! - [`hopf`]: Hopf structures on presented algebras (Taft algebras, `E(n)`);
//! - [`comodule`]: Galois objects `A_{a,c}` and `A(a, c, d)` with their coactions;
//! - [`identities`]: the free comodule algebra `T(X_H)`, the universal map `μ`,
//!   the identity catalog and the distinguishing procedure.

pub mod error;
pub mod exactnum;
pub mod commpoly;
pub mod comodule;
pub mod expr;
pub mod hopf;
pub mod identities;
pub mod linalg;
pub mod ncalg;

pub use error::{Error, Result};
