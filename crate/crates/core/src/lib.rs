//! Certified essential self-adjointness decisions for Euler-type radial
//! operators, by exact localization of indicial roots relative to
//! Re z = −1/2.

pub mod bigfloat;
pub mod config;
pub mod error;
pub mod esa;
pub mod exact;
pub mod frobenius;
pub mod indicial;
pub mod roots;
pub mod stability;

pub use config::Config;
pub use error::{Error, Result};
pub use esa::{
    esa_decide_radial, esa_decide_radial_with, esa_region_full, esa_region_full_with, esa_region_radial,
    esa_region_radial_with, gamma_threshold, EsaRegion, EsaVerdict, Threshold, Verdict,
};
pub use exact::{AlgebraicReal, Poly, Rational};
pub use frobenius::{classify_resonance, eval_0f3, ode_residual, select_fundamental_system, BasisSelection, CaseTag};
pub use indicial::{build_indicial, EulerParams, IndicialSpec};
pub use roots::{certified_roots, CertifiedRoot, OrderedRootSet};
pub use stability::{halfplane_count, hurwitz_assemble, HalfPlaneCount, HurwitzData};
