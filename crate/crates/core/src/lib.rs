//! Exact computer algebra for finite-dimensional representations over prime
//! fields, together with a constructive engine that builds and verifies
//! triangulated structure on stable categories.
//!
//! The crate is organized bottom-up:
//!
//! * [`field`] and [`mat`]: arithmetic in F_p (p prime, p < 2^31) and dense
//!   matrices with exact Gauss-Jordan elimination, kernels, and affine solvers.
//! * [`poly`]: univariate polynomials over F_p with full factorization
//!   (squarefree, distinct-degree, equal-degree splitting), used by the
//!   endomorphism-splitting module decomposition.
//! * [`algebra`], [`hom`], [`decomp`], [`resolution`]: associative algebras by
//!   structure constants, their finite-dimensional left modules, hom spaces of
//!   intertwiners, kernels/cokernels/images, direct sums, decomposition into
//!   indecomposables with certificates, additive-closure membership, and first
//!   extension groups via projective presentations.
//! * [`backend`] and [`extension`]: two concrete additive categories with
//!   suspension/loop structure (module categories with zero shift; stable
//!   categories with invertible shift), the five-term extension calculus on
//!   them, completions, the octahedron on extensions, and the gluing checks.
//! * [`triple`], [`stable`], [`tri`]: relative homological algebra for a
//!   subcategory pair (ambient, Z, D): relative injectives and projectives,
//!   the Frobenius condition, stable hom spaces, the induced shift and its
//!   quasi-inverse, cones, rotation, fill-ins, the octahedral construction,
//!   and the mutation-pair criterion.
//! * [`verify`]: machine verification suites that exercise every axiom on a
//!   declared inventory and emit deterministic, replayable reports.
//! * [`workspace`]: the on-disk JSON description of fields, algebras, modules,
//!   inventories, and backends consumed by the CLI and the test suites.
//!
//! Everything is exact: no floats, no tolerance thresholds. All randomized
//! searches are seeded and budgeted, and report `Inconclusive` rather than
//! guessing when a budget is exhausted.

pub mod algebra;
pub mod backend;
pub mod decomp;
pub mod extension;
pub mod field;
pub mod hom;
pub mod mat;
pub mod poly;
pub mod resolution;
pub mod triple;
pub mod stable;
pub mod tri;
pub mod verify;

pub use field::Fp;
pub use mat::Matrix;
