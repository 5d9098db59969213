//! Exact computations on the cohomology lattices of rational symplectic
//! 4-manifolds: Cremona reduction, exceptional-class enumeration,
//! symplectic-cone membership, Gromov-width formulas, and width-gap
//! certificates for cohomologous forms on 6-dimensional products.
//!
//! Every computation is exact. Scalars are arbitrary-precision rationals,
//! square roots stay symbolic, and comparisons against roots are decided by
//! squaring. No floating point enters any decision path.

pub mod cone;
pub mod cremona;
pub mod error;
pub mod exceptional;
pub mod lattice;
pub mod num;
pub mod sixfold;
pub mod width;

pub use cone::{kpm_membership, liliu_membership, ConeStatus, ConeVerdict};
pub use cremona::{
    cremona_step, is_reduced, is_symplectic_candidate, reduce, ReduceOutcome, ReductionStep,
    ReductionTrace,
};
pub use error::Error;
pub use exceptional::{
    enumerate_exceptional, is_exceptional, violator_degree_bound, ExceptionalSet,
};
pub use lattice::{
    area, c1_eval, canonical_class, pair, HomologyClass, ManifoldDescriptor, PeriodVector,
};
pub use num::{ExactReal, Rational, SqrtGap};
pub use sixfold::{
    extend_and_transport, verify_certificate, verify_isometry, width_gap_certificate,
    CertificateOutcome, ChernDifference, Isometry, ProductClass, ProductTopology, Refusal,
    WidthGapCertificate,
};
pub use width::{
    d_prime, deform_tail, gromov_width, product_upper_bound, projected_blowup_classes,
    simple_type_exempt, uniruled_upper_bound, UpperBoundResult, WidthResult, WidthWitness,
};
