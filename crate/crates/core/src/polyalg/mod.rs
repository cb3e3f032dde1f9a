//! Exact and certified polynomial algebra over Z, Q and F_q.

mod bivar;
pub mod factor;
pub mod fp;
mod intpoly;
mod ratpoly;
pub mod resultant;
pub mod roots;
pub mod sturm;

pub use bivar::BivarIntPoly;
pub use factor::{minimal_factor_at_root, minimality_check, IrreducibilityWitness, Minimality};
pub use fp::{factor_degrees_mod_p, primes_up_to, FpPoly};
pub use intpoly::IntPoly;
pub use ratpoly::RatPoly;
pub use resultant::{discriminant, resultant, resultant_in_beta};
pub use roots::{isolate_roots, RootBox, RootBoxSummary};
pub use sturm::{count_real_roots, squarefree_decomposition, squarefree_part, sturm_count};
