//! Exact graded linear algebra for the cohomology of the twisted
//! differentials `d_f^(p) α = f dα - (k - p) df ∧ α` attached to a
//! quasi-homogeneous polynomial `f`.

pub mod groebner;
pub mod linalg;
pub mod polyalg;
pub mod forms;
pub mod cohomology;
pub mod spectral;
pub mod checks;
