//! Exact covolumes and mixed covolumes of convex regions in rational cones, and
//! Samuel / mixed multiplicities of monomial ideals in toric local rings.

pub mod error;
pub mod linalg;
mod dd;
pub mod polytope;
pub mod cone;
pub mod region;
pub mod fit;
pub mod mixed;
pub mod semigroup;
pub mod ideal;
pub mod multiplicity;
pub mod verify;
pub mod problem;

pub use error::{Error, Result};
pub use linalg::{Point, Rational};
pub use polytope::{Halfspace, Polytope};
pub use cone::Cone;
pub use fit::PolynomialFit;
pub use mixed::{check_af_covolume, covol_polynomial_fit, mixed_covolume, InequalityReport};
pub use region::ConvexRegion;
pub use semigroup::{LatticePoint, ToricSemigroup};
pub use ideal::MonomialIdeal;
pub use multiplicity::{
    colength, hilbert_samuel, mixed_multiplicity, samuel_multiplicity, HilbertSamuelTable, Limits,
    MultiplicityTable,
};
pub use verify::{
    random_instance, verify_additivity, verify_af, verify_bk, verify_polynomiality, Check, Instance,
    InstanceSpec, VerificationReport,
};
pub use problem::ProblemFile;
