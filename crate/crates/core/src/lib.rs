//! Exact computations on two families of smooth plane curves in characteristic 2:
//!
//! * `Z * prod_{a in F_q} (X + aY + a^2 Z) + lambda Y^(q+1) = 0` (degree q + 1), and
//! * `(X^2+XZ)^2 + (X^2+XZ)(Y^2+YZ) + (Y^2+YZ)^2 + lambda Z^4 = 0` (a quartic).
//!
//! The crate builds these curves over GF(2^n), finds their Galois points,
//! computes automorphism groups as subgroups of PGL(3), identifies them
//! (PGL(2, F_q) and S_4 respectively), and computes p-ranks two independent ways.
//! All arithmetic is exact.

pub mod autgroup;
pub mod curves;
pub mod error;
pub mod families;
pub mod form;
pub mod galois;
pub mod gf2e;
pub mod json;
pub mod linalg;
pub mod prank;
pub mod projgeom;
pub mod upoly;

pub use autgroup::{AutGroup, LineAction};
pub use curves::PlaneCurve;
pub use error::{Error, Result};
pub use galois::{PointGaloisGroup, RamProfile};
pub use gf2e::{FieldCtx, FieldElem};
pub use prank::PrankReport;
pub use projgeom::{LineMap, ProjLine, ProjMap, ProjPoint};
