//! Machine verification of the triangle axioms and the supporting theory.
//!
//! Three suites, one per layer of the construction:
//!
//! * [`verify_pseudotriangulation`] checks the ambient axioms a backend
//!   promises: completion and rotation of both conflation classes, square
//!   fills, both octahedra, the gluing conditions, the two factorization
//!   conditions, and hom-exactness.
//! * [`verify_tr_suite`] checks TR1 through TR4 on the stable category of
//!   a Frobenius triple, together with well-definedness and the
//!   quasi-inverse property of the induced suspension.
//! * [`verify_frobenius_theory`] checks the structural statements the
//!   construction rests on: composites detecting epics and monics, split
//!   extensions, monotonicity and invariance along enlargements of the
//!   distinguished subcategory, minimality of the relative injectives, and
//!   the mutation-pair equivalence.
//!
//! Every check reports pass, fail, or inconclusive.  A failure carries a
//! self-contained witness, the morphism matrices that break one named
//! identity, and keeps the underlying [`Violation`] so the failure can be
//! re-checked bit-exactly through [`replay`], [`replay_stable`], or
//! [`replay_theory`].  Inconclusive outcomes record how many instances
//! exhausted the search budget.  Reports are deterministic for a fixed
//! backend seed and budget, and are returned sorted by check id.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::Module;
use crate::backend::{
    biproduct, coeff_vectors, derive_seed, quot_map_matrix, seed_tag, Backend, Budget, HomSpace,
    Mor, SearchOutcome,
};
use crate::decomp::{self, IsoCheck};
use crate::extension::{self, Extension, ExtensionError};
use crate::field::Fp;
use crate::mat::{self, Matrix};
use crate::stable::{
    check_frobenius, mutation_pair_check, MutationReport, StableCategory, StableError,
};
use crate::tri::{self, Triangle, TriError};
use crate::triple::{
    conflation_family, relatively_injective_flags, relatively_projective_flags, AddOutcome,
    FrobeniusTriple, SubcategorySpec, TripleError,
};

// ----- reports --------------------------------------------------------------

/// Outcome of one named check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

/// A morphism inside a failure witness: its label within the violated
/// identity and the matrix entries, row by row.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixData {
    pub label: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u32>>,
}

/// An object inside a failure witness.
#[derive(Debug, Clone, Serialize)]
pub struct ObjectData {
    pub label: String,
    pub dim: usize,
}

/// Self-contained description of one failed check instance.
#[derive(Debug, Clone, Serialize)]
pub struct FailWitness {
    /// The identity that failed, phrased as the property being checked.
    pub identity: String,
    pub objects: Vec<ObjectData>,
    pub morphisms: Vec<MatrixData>,
}

/// Result of a single named check over all its instances.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub status: CheckStatus,
    pub detail: String,
    /// Instances examined.
    pub instances: u64,
    /// Instances that exhausted the search budget.
    pub exhausted: u64,
    pub budget_enumeration: u64,
    pub budget_samples: u32,
    pub witness: Option<FailWitness>,
    /// The violation behind the witness, kept for in-process replay.
    #[serde(skip)]
    pub violation: Option<Violation>,
}

/// A deliberate defect injected into the axiom suite, used to demonstrate
/// that the checks detect a broken structure and produce a replayable
/// witness rather than passing vacuously.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Flip the sign of the connecting map wherever a generator converts
    /// between the left and right conflation classes.
    PsiSignFlip,
    /// Drop the negation on the third map of rotated classes.
    RotationSignDrop,
}

/// Failure modes of the verification suites themselves, as opposed to the
/// verdicts they report.
#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Stable(#[from] StableError),
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    Tri(#[from] TriError),
    #[error("the triple is not Frobenius; the triangle suite does not apply")]
    NotFrobenius,
}

// ----- violations and replay ------------------------------------------------

/// A relation between plain morphisms over a backend.  The documented
/// morphism order of each variant is the order stored in the violation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendRelation {
    /// `[f, g, h]` is not a right conflation class.
    RightClass,
    /// `[e, f, g]` is not a left conflation class.
    LeftClass,
    /// `[lhs, rhs]` are not equal morphisms.
    Identity,
    /// `[a, b, f1, g1, h1, f2, g2, h2]`: no fill for the commuting square.
    FillRight,
    /// `[b, c, e1, f1, g1, e2, f2, g2]`: no fill for the commuting square.
    FillLeft,
    /// `[f, g, h, l, m, n, l2, m2, n2]`: no octahedron completion.
    Octahedron,
    /// `[e1, f1, g1, e2, f2, g2, e3, f3, g3]`: no dual completion.
    OctahedronDual,
    /// `[e, f, g, g2, h2]`: the two classes on `f` do not glue.
    GlueRight,
    /// `[f, g, h, e2, f2]`: the two classes on `f` do not glue.
    GlueLeft,
    /// `[g, h2, g2, c]`: `c` kills both legs but has no factorization.
    FactorEnd,
    /// `[e2, f2, f, a]`: `a` kills both legs but has no factorization.
    FactorStart,
    /// `[f, g, h]` with a probe object: the contravariant hom sequence is
    /// not exact.
    ExactRight,
    /// `[e, f, g]` with a probe object: the covariant hom sequence is not
    /// exact.
    ExactLeft,
    /// `[m, e]`: the composite is suspension-epic but `e` is not.
    SigmaEpic,
    /// `[m, e]`: the composite is cosuspension-monic but `m` is not.
    OmegaMonic,
    /// `[e, f, g, h]` does not validate as an extension.
    InvalidExtension,
}

impl BackendRelation {
    fn labels(self) -> &'static [&'static str] {
        match self {
            BackendRelation::RightClass => &["f", "g", "h"],
            BackendRelation::LeftClass => &["e", "f", "g"],
            BackendRelation::Identity => &["lhs", "rhs"],
            BackendRelation::FillRight => &["a", "b", "f1", "g1", "h1", "f2", "g2", "h2"],
            BackendRelation::FillLeft => &["b", "c", "e1", "f1", "g1", "e2", "f2", "g2"],
            BackendRelation::Octahedron => &["f", "g", "h", "l", "m", "n", "l2", "m2", "n2"],
            BackendRelation::OctahedronDual => {
                &["e1", "f1", "g1", "e2", "f2", "g2", "e3", "f3", "g3"]
            }
            BackendRelation::GlueRight => &["e", "f", "g", "g2", "h2"],
            BackendRelation::GlueLeft => &["f", "g", "h", "e2", "f2"],
            BackendRelation::FactorEnd => &["g", "h2", "g2", "c"],
            BackendRelation::FactorStart => &["e2", "f2", "f", "a"],
            BackendRelation::ExactRight => &["f", "g", "h"],
            BackendRelation::ExactLeft => &["e", "f", "g"],
            BackendRelation::SigmaEpic | BackendRelation::OmegaMonic => &["m", "e"],
            BackendRelation::InvalidExtension => &["e", "f", "g", "h"],
        }
    }
}

/// A relation checked inside a stable category.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StableRelation {
    /// `[f, g, q]` does not form a distinguished triangle.
    Distinguished,
    /// `[lhs, rhs]` are not stably equal.
    StableIdentity,
    /// `[c]` is not a stable isomorphism.
    StableIso,
    /// `[f]` has no cone.
    Cone,
    /// `[f]`'s standard triangle does not rotate.
    Rotation,
    /// `[f]` has no suspension lift for the stored seed tag.
    Suspension,
    /// `[f]` has no cosuspension lift.
    Cosuspension,
    /// `[f1, f2, x, y]`: the commuting square has no cone fill.
    StableFill,
    /// `[l, m2]`: the composable pair admits no octahedron.
    StableOctahedron,
    /// The comparison morphism for the stored object is missing; tag `0`
    /// names the unit, `1` the counit.
    Comparison,
}

impl StableRelation {
    fn labels(self) -> &'static [&'static str] {
        match self {
            StableRelation::Distinguished => &["f", "g", "q"],
            StableRelation::StableIdentity => &["lhs", "rhs"],
            StableRelation::StableIso => &["c"],
            StableRelation::Cone
            | StableRelation::Rotation
            | StableRelation::Suspension
            | StableRelation::Cosuspension => &["f"],
            StableRelation::StableFill => &["f1", "f2", "x", "y"],
            StableRelation::StableOctahedron => &["l", "m2"],
            StableRelation::Comparison => &[],
        }
    }
}

/// A structural statement about one triple or one enlargement chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoryRelation {
    /// Enlarging the distinguished subcategory lost the Frobenius property.
    Monotone,
    /// The relative injectives changed under enlargement.
    Invariance,
    /// The relative injectives fail minimality.
    Minimal,
    /// The two sides of the mutation-pair equivalence disagree, or the
    /// distinguished subcategory is not the forced one.
    Mutation,
}

/// A reproducible counterexample: which relation failed, together with the
/// exact data that fails it.
#[derive(Debug, Clone)]
pub enum Violation {
    Backend {
        relation: BackendRelation,
        mors: Vec<Mor>,
        objs: Vec<Arc<Module>>,
    },
    Stable {
        relation: StableRelation,
        mors: Vec<Mor>,
        objs: Vec<Arc<Module>>,
        /// Relation-specific discriminant: the lift seed for
        /// [`StableRelation::Suspension`], unit versus counit for
        /// [`StableRelation::Comparison`], zero otherwise.
        tag: u64,
    },
    Theory {
        relation: TheoryRelation,
        triple: Box<FrobeniusTriple>,
        enlarged: Option<SubcategorySpec>,
    },
}

impl Violation {
    fn backend_rel(relation: BackendRelation, mors: Vec<Mor>) -> Violation {
        Violation::Backend {
            relation,
            mors,
            objs: Vec::new(),
        }
    }

    fn backend_probe(relation: BackendRelation, mors: Vec<Mor>, probe: Arc<Module>) -> Violation {
        Violation::Backend {
            relation,
            mors,
            objs: vec![probe],
        }
    }

    fn stable_rel(relation: StableRelation, mors: Vec<Mor>) -> Violation {
        Violation::Stable {
            relation,
            mors,
            objs: Vec::new(),
            tag: 0,
        }
    }

    fn stable_tagged(
        relation: StableRelation,
        mors: Vec<Mor>,
        objs: Vec<Arc<Module>>,
        tag: u64,
    ) -> Violation {
        Violation::Stable {
            relation,
            mors,
            objs,
            tag,
        }
    }

    fn theory_rel(
        relation: TheoryRelation,
        triple: FrobeniusTriple,
        enlarged: Option<SubcategorySpec>,
    ) -> Violation {
        Violation::Theory {
            relation,
            triple: Box::new(triple),
            enlarged,
        }
    }
}

/// Re-checks a backend-level violation against a backend.  `Some(true)`
/// means the violation reproduces; `None` means the violation belongs to a
/// different level.
pub fn replay(backend: &Backend, violation: &Violation) -> Option<bool> {
    let Violation::Backend {
        relation,
        mors,
        objs,
    } = violation
    else {
        return None;
    };
    let m = |i: usize| &mors[i];
    Some(match relation {
        BackendRelation::RightClass => {
            matches!(backend.in_right(m(0), m(1), m(2)), SearchOutcome::Absent)
        }
        BackendRelation::LeftClass => {
            matches!(backend.in_left(m(0), m(1), m(2)), SearchOutcome::Absent)
        }
        BackendRelation::Identity => !backend.mor_eq(m(0), m(1)),
        BackendRelation::FillRight => backend
            .fill_right(m(0), m(1), (m(2), m(3), m(4)), (m(5), m(6), m(7)))
            .is_none(),
        BackendRelation::FillLeft => backend
            .fill_left(m(0), m(1), (m(2), m(3), m(4)), (m(5), m(6), m(7)))
            .is_none(),
        BackendRelation::Octahedron => matches!(
            backend.octahedron(m(0), m(1), m(2), m(3), m(4), m(5), m(6), m(7), m(8)),
            SearchOutcome::Absent
        ),
        BackendRelation::OctahedronDual => matches!(
            backend.octahedron_dual(m(0), m(1), m(2), m(3), m(4), m(5), m(6), m(7), m(8)),
            SearchOutcome::Absent
        ),
        BackendRelation::GlueRight => matches!(
            extension::gluing_right(backend, m(0), m(1), m(2), m(3), m(4)),
            SearchOutcome::Absent
        ),
        BackendRelation::GlueLeft => matches!(
            extension::gluing_left(backend, m(0), m(1), m(2), m(3), m(4)),
            SearchOutcome::Absent
        ),
        BackendRelation::FactorEnd => {
            backend.is_null(&m(1).after(m(3)))
                && backend.is_null(&m(3).after(m(0)))
                && backend.ac1_factor(m(0), m(1), m(2), m(3)).is_none()
        }
        BackendRelation::FactorStart => {
            backend.is_null(&m(3).after(m(0)))
                && backend.is_null(&m(2).after(m(3)))
                && backend.ac2_factor(m(0), m(1), m(2), m(3)).is_none()
        }
        BackendRelation::ExactRight => {
            !extension::right_hom_exact(backend, m(0), m(1), m(2), &objs[0])
        }
        BackendRelation::ExactLeft => {
            !extension::left_hom_exact(backend, m(0), m(1), m(2), &objs[0])
        }
        BackendRelation::SigmaEpic => {
            backend.is_sigma_epic(&m(1).after(m(0))) && !backend.is_sigma_epic(m(1))
        }
        BackendRelation::OmegaMonic => {
            backend.is_omega_monic(&m(1).after(m(0))) && !backend.is_omega_monic(m(0))
        }
        BackendRelation::InvalidExtension => Extension::validated(
            backend,
            m(0).clone(),
            m(1).clone(),
            m(2).clone(),
            m(3).clone(),
        )
        .is_err(),
    })
}

/// Re-checks a stable-level violation against a stable category.
pub fn replay_stable(sc: &StableCategory, violation: &Violation) -> Option<bool> {
    let Violation::Stable {
        relation,
        mors,
        objs,
        tag,
    } = violation
    else {
        return None;
    };
    Some(match relation {
        StableRelation::Distinguished => {
            let t = Triangle::new(mors[0].clone(), mors[1].clone(), mors[2].clone());
            matches!(tri::is_distinguished(sc, &t), Ok(SearchOutcome::Absent))
        }
        StableRelation::StableIdentity => !sc.stable_eq(&mors[0], &mors[1]),
        StableRelation::StableIso => !sc.is_stable_iso(&mors[0]),
        StableRelation::Cone => tri::cone(sc, &mors[0]).is_err(),
        StableRelation::Rotation => match tri::cone(sc, &mors[0]) {
            Ok(cd) => tri::rotate(sc, cd.standard()).is_err(),
            Err(_) => true,
        },
        StableRelation::Suspension => sc.suspension_morphism_seeded(&mors[0], *tag).is_err(),
        StableRelation::Cosuspension => sc.cosuspension_morphism(&mors[0]).is_err(),
        StableRelation::StableFill => {
            match (tri::cone(sc, &mors[0]), tri::cone(sc, &mors[1])) {
                (Ok(c1), Ok(c2)) => {
                    tri::fill_in(sc, c1.standard(), c2.standard(), &mors[2], &mors[3]).is_err()
                }
                _ => true,
            }
        }
        StableRelation::StableOctahedron => {
            let f = mors[1].after(&mors[0]);
            match (
                tri::cone(sc, &mors[0]),
                tri::cone(sc, &mors[1]),
                tri::cone(sc, &f),
            ) {
                (Ok(tl), Ok(tl2), Ok(tf)) => {
                    tri::octahedron_stable(sc, tl.standard(), tl2.standard(), tf.standard())
                        .is_err()
                }
                _ => true,
            }
        }
        StableRelation::Comparison => {
            let x = &objs[0];
            if *tag == 0 {
                sc.unit(x).is_err()
            } else {
                sc.counit(x).is_err()
            }
        }
    })
}

/// Re-checks a theory-level violation by re-running the statement it
/// belongs to on the captured triple or chain.
pub fn replay_theory(violation: &Violation) -> Option<bool> {
    let Violation::Theory {
        relation,
        triple,
        enlarged,
    } = violation
    else {
        return None;
    };
    let verdict = match relation {
        TheoryRelation::Monotone => enlarged.as_ref().and_then(|spec| {
            let chain = TheoryChain {
                base: (**triple).clone(),
                enlarged: spec.clone(),
            };
            monotone_holds(&chain).ok().flatten()
        }),
        TheoryRelation::Invariance => enlarged.as_ref().and_then(|spec| {
            let chain = TheoryChain {
                base: (**triple).clone(),
                enlarged: spec.clone(),
            };
            invariance_holds(&chain).ok().flatten()
        }),
        TheoryRelation::Minimal => minimal_holds(triple).ok().flatten(),
        TheoryRelation::Mutation => mutation_claim_holds(triple).ok().flatten(),
    };
    Some(verdict == Some(false))
}

/// Builds the serializable witness for a violation under a named identity.
pub fn witness_of(identity: &str, violation: &Violation) -> FailWitness {
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    match violation {
        Violation::Backend {
            relation,
            mors,
            objs,
        } => {
            for (label, m) in relation.labels().iter().zip(mors) {
                morphisms.push(matrix_data(label, m));
            }
            for o in objs {
                objects.push(ObjectData {
                    label: "probe".to_string(),
                    dim: o.dim(),
                });
            }
        }
        Violation::Stable {
            relation,
            mors,
            objs,
            ..
        } => {
            for (label, m) in relation.labels().iter().zip(mors) {
                morphisms.push(matrix_data(label, m));
            }
            for o in objs {
                objects.push(ObjectData {
                    label: "object".to_string(),
                    dim: o.dim(),
                });
            }
        }
        Violation::Theory {
            triple, enlarged, ..
        } => {
            for (i, m) in triple.z().inventory().iter().enumerate() {
                objects.push(ObjectData {
                    label: format!("Z{i}"),
                    dim: m.dim(),
                });
            }
            for (i, m) in triple.d().inventory().iter().enumerate() {
                objects.push(ObjectData {
                    label: format!("D{i}"),
                    dim: m.dim(),
                });
            }
            if let Some(spec) = enlarged {
                for (i, m) in spec.inventory().iter().enumerate() {
                    objects.push(ObjectData {
                        label: format!("D'{i}"),
                        dim: m.dim(),
                    });
                }
            }
        }
    }
    FailWitness {
        identity: identity.to_string(),
        objects,
        morphisms,
    }
}

fn matrix_data(label: &str, m: &Mor) -> MatrixData {
    let map = m.map();
    let entries = (0..map.rows())
        .map(|r| (0..map.cols()).map(|c| map.at(r, c)).collect())
        .collect();
    MatrixData {
        label: label.to_string(),
        rows: map.rows(),
        cols: map.cols(),
        entries,
    }
}

// ----- check accumulator ----------------------------------------------------

struct Check {
    id: &'static str,
    instances: u64,
    exhausted: u64,
    failure: Option<(String, Violation)>,
}

impl Check {
    fn new(id: &'static str) -> Check {
        Check {
            id,
            instances: 0,
            exhausted: 0,
            failure: None,
        }
    }

    fn pass(&mut self) {
        self.instances += 1;
    }

    fn exhaust(&mut self) {
        self.instances += 1;
        self.exhausted += 1;
    }

    fn fail(&mut self, identity: &str, violation: Violation) {
        self.instances += 1;
        if self.failure.is_none() {
            self.failure = Some((identity.to_string(), violation));
        }
    }

    /// Folds a search outcome into the tally: found passes, absent fails
    /// with the violation, exhaustion is recorded as inconclusive.
    fn search<T>(
        &mut self,
        out: &SearchOutcome<T>,
        identity: &str,
        violation: impl FnOnce() -> Violation,
    ) {
        match out {
            SearchOutcome::Found(_) => self.pass(),
            SearchOutcome::Absent => self.fail(identity, violation()),
            SearchOutcome::Exhausted => self.exhaust(),
        }
    }

    fn into_report(self, budget: Budget) -> CheckReport {
        let (status, detail, witness, violation) = match self.failure {
            Some((identity, v)) => {
                let w = witness_of(&identity, &v);
                (
                    CheckStatus::Fail,
                    format!("violated: {identity}"),
                    Some(w),
                    Some(v),
                )
            }
            None if self.exhausted > 0 => (
                CheckStatus::Inconclusive,
                format!(
                    "{} of {} instances exhausted the search budget",
                    self.exhausted, self.instances
                ),
                None,
                None,
            ),
            None => (
                CheckStatus::Pass,
                format!("{} instances checked", self.instances),
                None,
                None,
            ),
        };
        CheckReport {
            id: self.id.to_string(),
            status,
            detail,
            instances: self.instances,
            exhausted: self.exhausted,
            budget_enumeration: budget.enumeration,
            budget_samples: budget.samples,
            witness,
            violation,
        }
    }
}

// ----- sweeps ---------------------------------------------------------------

/// Representatives of every class of `space` when the class count fits the
/// enumeration budget, otherwise the basis plus seeded representatives.
fn space_classes(backend: &Backend, space: &Arc<HomSpace>, tag: &str) -> Vec<Mor> {
    let budget = backend.budget();
    match space.class_count() {
        Some(count) if count <= budget.enumeration => space.iter_classes().collect(),
        _ => {
            let mut reps: Vec<Mor> = (0..space.dim()).map(|i| space.basis_mor(i)).collect();
            let field = backend.field();
            for s in 0..budget.samples {
                let coords = Matrix::seeded_random(
                    field,
                    space.dim(),
                    1,
                    derive_seed(backend.seed(), seed_tag(tag) ^ u64::from(s)),
                );
                reps.push(space.rep_from_coords(&coords));
            }
            reps
        }
    }
}

/// All morphisms the suite quantifies over: class representatives for each
/// ordered pair of inventory objects, plus the identities.
fn sweep(backend: &Backend, inventory: &[Arc<Module>]) -> Vec<Mor> {
    let mut pool = Vec::new();
    for a in inventory {
        for b in inventory {
            let h = backend.hom(a, b);
            pool.extend(space_classes(backend, &h, "verify-sweep"));
        }
    }
    for m in inventory {
        pool.push(Mor::identity(m));
    }
    pool
}

/// Hom-space basis elements for each ordered pair, plus the identities.
fn basis_sweep(backend: &Backend, inventory: &[Arc<Module>]) -> Vec<Mor> {
    let mut pool = Vec::new();
    for a in inventory {
        for b in inventory {
            let h = backend.hom(a, b);
            for i in 0..h.dim() {
                pool.push(h.basis_mor(i));
            }
        }
    }
    for m in inventory {
        pool.push(Mor::identity(m));
    }
    pool
}

fn is_inconclusive_ext(e: &ExtensionError) -> bool {
    matches!(e, ExtensionError::Inconclusive { .. })
}

fn is_inconclusive_stable(e: &StableError) -> bool {
    matches!(e, StableError::Inconclusive { .. })
        || matches!(e, StableError::Extension(inner) if is_inconclusive_ext(inner))
}

fn is_inconclusive_tri(e: &TriError) -> bool {
    match e {
        TriError::Inconclusive { .. } => true,
        TriError::Stable(inner) => is_inconclusive_stable(inner),
        TriError::Extension(inner) => is_inconclusive_ext(inner),
        _ => false,
    }
}

// ----- the ambient axiom suite ----------------------------------------------

/// Runs the ambient axiom suite over every morphism the budget allows
/// between inventory objects, optionally with an injected [`Fault`].
/// Returns one report per check, sorted by id.
pub fn verify_pseudotriangulation(
    backend: &Backend,
    inventory: &[Arc<Module>],
    fault: Option<Fault>,
) -> Vec<CheckReport> {
    let budget = backend.budget();
    let flip = fault == Some(Fault::PsiSignFlip);
    let drop_sign = fault == Some(Fault::RotationSignDrop);
    let zero = backend.zero_obj();

    let pool = sweep(backend, inventory);
    let basis_pool = basis_sweep(backend, inventory);
    let right_triples: Vec<(Mor, Mor, Mor)> = basis_pool
        .iter()
        .map(|f| {
            let (g, h) = backend.complete_right(f);
            (f.clone(), g, h)
        })
        .collect();
    let left_triples: Vec<(Mor, Mor, Mor)> = basis_pool
        .iter()
        .map(|q| {
            let (e, f) = backend.complete_left(q);
            (e, f, q.clone())
        })
        .collect();

    let mut rtr1_id = Check::new("RTR1-identity");
    for x in inventory {
        let f = Mor::identity(x);
        let g = Mor::zero(x, &zero);
        let h = Mor::zero(&zero, &backend.shift_obj(x));
        let out = backend.in_right(&f, &g, &h);
        rtr1_id.search(&out, "the identity belongs to a right class with zero cone", || {
            Violation::backend_rel(BackendRelation::RightClass, vec![f.clone(), g.clone(), h.clone()])
        });
    }

    let mut rtr1_c = Check::new("RTR1-complete");
    for f in &pool {
        let (g, h) = backend.complete_right(f);
        let out = backend.in_right(f, &g, &h);
        rtr1_c.search(&out, "every morphism completes to a right class", || {
            Violation::backend_rel(BackendRelation::RightClass, vec![f.clone(), g.clone(), h.clone()])
        });
    }

    let mut rtr2 = Check::new("RTR2-rotate");
    for f in &pool {
        let (g, h) = backend.complete_right(f);
        let sf = backend.shift_mor(f);
        let third = if drop_sign { sf } else { sf.neg() };
        let out = backend.in_right(&g, &h, &third);
        rtr2.search(
            &out,
            "rotating a right class gives a right class ending in the negated shift",
            || {
                Violation::backend_rel(
                    BackendRelation::RightClass,
                    vec![g.clone(), h.clone(), third.clone()],
                )
            },
        );
    }

    let mut ltr1_id = Check::new("LTR1-identity");
    for x in inventory {
        let e = Mor::zero(&backend.coshift_obj(x), &zero);
        let f = Mor::zero(&zero, x);
        let g = Mor::identity(x);
        let out = backend.in_left(&e, &f, &g);
        ltr1_id.search(&out, "the identity belongs to a left class with zero fiber", || {
            Violation::backend_rel(BackendRelation::LeftClass, vec![e.clone(), f.clone(), g.clone()])
        });
    }

    let mut ltr1_c = Check::new("LTR1-complete");
    for g in &pool {
        let (e, f) = backend.complete_left(g);
        let out = backend.in_left(&e, &f, g);
        ltr1_c.search(&out, "every morphism completes to a left class", || {
            Violation::backend_rel(BackendRelation::LeftClass, vec![e.clone(), f.clone(), g.clone()])
        });
    }

    let mut ltr2 = Check::new("LTR2-rotate");
    for g in &pool {
        let (e, f) = backend.complete_left(g);
        let og = backend.coshift_mor(g);
        let first = if drop_sign { og } else { og.neg() };
        let out = backend.in_left(&first, &e, &f);
        ltr2.search(
            &out,
            "rotating a left class gives a left class starting in the negated coshift",
            || {
                Violation::backend_rel(
                    BackendRelation::LeftClass,
                    vec![first.clone(), e.clone(), f.clone()],
                )
            },
        );
    }

    let mut rtr3 = Check::new("RTR3-fill");
    for t1 in &right_triples {
        for t2 in &right_triples {
            let ha = backend.hom(t1.0.src(), t2.0.src());
            let a_reps = space_classes(backend, &ha, "verify-rtr3");
            let hb = backend.hom(t1.0.tgt(), t2.0.tgt());
            let hq = backend.hom(t1.0.src(), t2.0.tgt());
            let rows = quot_map_matrix(&hb, &hq, |b| b.after(&t1.0));
            for a in &a_reps {
                let rhs = hq.coords(&t2.0.after(a));
                let Some(sol) = mat::solve_affine(&rows, &rhs).expect("hom shapes agree") else {
                    continue;
                };
                let b = hb.rep_from_coords(&sol.particular);
                match backend.fill_right(a, &b, (&t1.0, &t1.1, &t1.2), (&t2.0, &t2.1, &t2.2)) {
                    Some(c) => {
                        let lhs1 = c.after(&t1.1);
                        let rhs1 = t2.1.after(&b);
                        if !backend.mor_eq(&lhs1, &rhs1) {
                            rtr3.fail(
                                "the fill commutes with the cone maps",
                                Violation::backend_rel(BackendRelation::Identity, vec![lhs1, rhs1]),
                            );
                            continue;
                        }
                        let lhs2 = t2.2.after(&c);
                        let rhs2 = backend.shift_mor(a).after(&t1.2);
                        if !backend.mor_eq(&lhs2, &rhs2) {
                            rtr3.fail(
                                "the fill commutes with the connecting maps",
                                Violation::backend_rel(BackendRelation::Identity, vec![lhs2, rhs2]),
                            );
                        } else {
                            rtr3.pass();
                        }
                    }
                    None => rtr3.fail(
                        "every commuting square extends to the cones",
                        Violation::backend_rel(
                            BackendRelation::FillRight,
                            vec![
                                a.clone(),
                                b.clone(),
                                t1.0.clone(),
                                t1.1.clone(),
                                t1.2.clone(),
                                t2.0.clone(),
                                t2.1.clone(),
                                t2.2.clone(),
                            ],
                        ),
                    ),
                }
            }
        }
    }

    let mut ltr3 = Check::new("LTR3-fill");
    for t1 in &left_triples {
        for t2 in &left_triples {
            let hc = backend.hom(t1.2.tgt(), t2.2.tgt());
            let c_reps = space_classes(backend, &hc, "verify-ltr3");
            let hb = backend.hom(t1.2.src(), t2.2.src());
            let hq = backend.hom(t1.2.src(), t2.2.tgt());
            let rows = quot_map_matrix(&hb, &hq, |b| t2.2.after(b));
            for c in &c_reps {
                let rhs = hq.coords(&c.after(&t1.2));
                let Some(sol) = mat::solve_affine(&rows, &rhs).expect("hom shapes agree") else {
                    continue;
                };
                let b = hb.rep_from_coords(&sol.particular);
                match backend.fill_left(&b, c, (&t1.0, &t1.1, &t1.2), (&t2.0, &t2.1, &t2.2)) {
                    Some(a) => {
                        let lhs1 = t2.1.after(&a);
                        let rhs1 = b.after(&t1.1);
                        if !backend.mor_eq(&lhs1, &rhs1) {
                            ltr3.fail(
                                "the fill commutes with the fiber maps",
                                Violation::backend_rel(BackendRelation::Identity, vec![lhs1, rhs1]),
                            );
                            continue;
                        }
                        let lhs2 = a.after(&t1.0);
                        let rhs2 = t2.0.after(&backend.coshift_mor(c));
                        if !backend.mor_eq(&lhs2, &rhs2) {
                            ltr3.fail(
                                "the fill commutes with the connecting maps",
                                Violation::backend_rel(BackendRelation::Identity, vec![lhs2, rhs2]),
                            );
                        } else {
                            ltr3.pass();
                        }
                    }
                    None => ltr3.fail(
                        "every commuting square extends to the fibers",
                        Violation::backend_rel(
                            BackendRelation::FillLeft,
                            vec![
                                b.clone(),
                                c.clone(),
                                t1.0.clone(),
                                t1.1.clone(),
                                t1.2.clone(),
                                t2.0.clone(),
                                t2.1.clone(),
                                t2.2.clone(),
                            ],
                        ),
                    ),
                }
            }
        }
    }

    let mut rtr4 = Check::new("RTR4-octahedron");
    for l in &basis_pool {
        for m2 in &basis_pool {
            if l.tgt() != m2.src() || !backend.is_sigma_epic(m2) {
                continue;
            }
            let f = m2.after(l);
            let (g, h) = backend.complete_right(&f);
            let (m, n) = backend.complete_right(l);
            let (e, l2) = backend.complete_left(m2);
            let p = backend.psi(m2.tgt(), &e);
            let n2 = if flip { p } else { p.neg() };
            match backend.in_right(&l2, m2, &n2) {
                SearchOutcome::Found(_) => {}
                SearchOutcome::Absent => {
                    rtr4.fail(
                        "the epic leg forms a right class with the converted connecting map",
                        Violation::backend_rel(
                            BackendRelation::RightClass,
                            vec![l2.clone(), m2.clone(), n2.clone()],
                        ),
                    );
                    continue;
                }
                SearchOutcome::Exhausted => {
                    rtr4.exhaust();
                    continue;
                }
            }
            match backend.octahedron(&f, &g, &h, l, &m, &n, &l2, m2, &n2) {
                SearchOutcome::Found((g2, h2)) => {
                    let pairs = [
                        (h2.after(&g), n2.clone(), "the new connecting composes"),
                        (h.after(&g2), n.clone(), "the old connecting factors"),
                        (g2.after(&m), g.after(m2), "the middle square commutes"),
                    ];
                    let mut ok = true;
                    for (lhs, rhs, name) in pairs {
                        if !backend.mor_eq(&lhs, &rhs) {
                            rtr4.fail(
                                name,
                                Violation::backend_rel(BackendRelation::Identity, vec![lhs, rhs]),
                            );
                            ok = false;
                            break;
                        }
                    }
                    if !ok {
                        continue;
                    }
                    let mix = backend
                        .shift_mor(l)
                        .after(&h)
                        .add(&backend.shift_mor(&l2).after(&h2));
                    if !backend.is_null(&mix) {
                        let z = Mor::zero(mix.src(), mix.tgt());
                        rtr4.fail(
                            "the two shifted connecting maps cancel",
                            Violation::backend_rel(BackendRelation::Identity, vec![mix, z]),
                        );
                        continue;
                    }
                    let base = backend.in_right(&m.after(&l2), &g2, &h2);
                    rtr4.search(&base, "the composite column is a right class", || {
                        Violation::backend_rel(
                            BackendRelation::RightClass,
                            vec![m.after(&l2), g2.clone(), h2.clone()],
                        )
                    });
                }
                SearchOutcome::Absent => rtr4.fail(
                    "composable pairs admit octahedron completions",
                    Violation::backend_rel(
                        BackendRelation::Octahedron,
                        vec![
                            f.clone(),
                            g.clone(),
                            h.clone(),
                            l.clone(),
                            m.clone(),
                            n.clone(),
                            l2.clone(),
                            m2.clone(),
                            n2.clone(),
                        ],
                    ),
                ),
                SearchOutcome::Exhausted => rtr4.exhaust(),
            }
        }
    }

    let mut ltr4 = Check::new("LTR4-octahedron");
    for f3 in &basis_pool {
        for g2 in &basis_pool {
            if f3.tgt() != g2.src() || !backend.is_omega_monic(f3) {
                continue;
            }
            let g1 = g2.after(f3);
            let (e1, f1) = backend.complete_left(&g1);
            let (e2, f2) = backend.complete_left(g2);
            let (g3, h3) = backend.complete_right(f3);
            let p = backend.psi_inv(f3.src(), &h3);
            let e3 = if flip { p } else { p.neg() };
            match backend.in_left(&e3, f3, &g3) {
                SearchOutcome::Found(_) => {}
                SearchOutcome::Absent => {
                    ltr4.fail(
                        "the monic leg forms a left class with the converted connecting map",
                        Violation::backend_rel(
                            BackendRelation::LeftClass,
                            vec![e3.clone(), f3.clone(), g3.clone()],
                        ),
                    );
                    continue;
                }
                SearchOutcome::Exhausted => {
                    ltr4.exhaust();
                    continue;
                }
            }
            match backend.octahedron_dual(&e1, &f1, &g1, &e2, &f2, g2, &e3, f3, &g3) {
                SearchOutcome::Found((fd, ed)) => {
                    let pairs = [
                        (f1.after(&ed), e3.clone(), "the new connecting composes"),
                        (fd.after(&e1), e2.clone(), "the old connecting factors"),
                        (f2.after(&fd), f3.after(&f1), "the middle square commutes"),
                    ];
                    let mut ok = true;
                    for (lhs, rhs, name) in pairs {
                        if !backend.mor_eq(&lhs, &rhs) {
                            ltr4.fail(
                                name,
                                Violation::backend_rel(BackendRelation::Identity, vec![lhs, rhs]),
                            );
                            ok = false;
                            break;
                        }
                    }
                    if !ok {
                        continue;
                    }
                    let mix = e1
                        .after(&backend.coshift_mor(g2))
                        .add(&ed.after(&backend.coshift_mor(&g3)));
                    if !backend.is_null(&mix) {
                        let z = Mor::zero(mix.src(), mix.tgt());
                        ltr4.fail(
                            "the two coshifted connecting maps cancel",
                            Violation::backend_rel(BackendRelation::Identity, vec![mix, z]),
                        );
                        continue;
                    }
                    let base = backend.in_left(&ed, &fd, &g3.after(&f2));
                    ltr4.search(&base, "the composite column is a left class", || {
                        Violation::backend_rel(
                            BackendRelation::LeftClass,
                            vec![ed.clone(), fd.clone(), g3.after(&f2)],
                        )
                    });
                }
                SearchOutcome::Absent => ltr4.fail(
                    "composable pairs admit dual octahedron completions",
                    Violation::backend_rel(
                        BackendRelation::OctahedronDual,
                        vec![
                            e1.clone(),
                            f1.clone(),
                            g1.clone(),
                            e2.clone(),
                            f2.clone(),
                            g2.clone(),
                            e3.clone(),
                            f3.clone(),
                            g3.clone(),
                        ],
                    ),
                ),
                SearchOutcome::Exhausted => ltr4.exhaust(),
            }
        }
    }

    let mut g1c = Check::new("G1-glue");
    for g in &pool {
        if !backend.is_sigma_epic(g) {
            continue;
        }
        let (e, f) = backend.complete_left(g);
        let (g2, h2) = backend.complete_right(&f);
        let e_used = if flip { e.neg() } else { e.clone() };
        match extension::gluing_right(backend, &e_used, &f, g, &g2, &h2) {
            SearchOutcome::Found(c) => {
                let lhs = c.after(&g2);
                if backend.mor_eq(&lhs, g) {
                    g1c.pass();
                } else {
                    g1c.fail(
                        "the glue isomorphism relates the two completions",
                        Violation::backend_rel(BackendRelation::Identity, vec![lhs, g.clone()]),
                    );
                }
            }
            SearchOutcome::Absent => g1c.fail(
                "left and right completions of one inflation glue",
                Violation::backend_rel(
                    BackendRelation::GlueRight,
                    vec![e_used.clone(), f.clone(), g.clone(), g2.clone(), h2.clone()],
                ),
            ),
            SearchOutcome::Exhausted => g1c.exhaust(),
        }
    }

    let mut g2c = Check::new("G2-glue");
    for f in &pool {
        if !backend.is_omega_monic(f) {
            continue;
        }
        let (g, h) = backend.complete_right(f);
        let (e2, f2) = backend.complete_left(&g);
        let e_used = if flip { e2.neg() } else { e2.clone() };
        match extension::gluing_left(backend, f, &g, &h, &e_used, &f2) {
            SearchOutcome::Found(a) => {
                let lhs = f2.after(&a);
                if backend.mor_eq(&lhs, f) {
                    g2c.pass();
                } else {
                    g2c.fail(
                        "the glue isomorphism relates the two completions",
                        Violation::backend_rel(BackendRelation::Identity, vec![lhs, f.clone()]),
                    );
                }
            }
            SearchOutcome::Absent => g2c.fail(
                "right and left completions of one deflation glue",
                Violation::backend_rel(
                    BackendRelation::GlueLeft,
                    vec![f.clone(), g.clone(), h.clone(), e_used.clone(), f2.clone()],
                ),
            ),
            SearchOutcome::Exhausted => g2c.exhaust(),
        }
    }

    let mut ext_pool: Vec<Extension> = Vec::new();
    for f in &basis_pool {
        if backend.is_omega_monic(f) {
            if let Ok(x) = extension::make_from_monic(backend, f) {
                ext_pool.push(x);
            }
        }
    }
    for g in &basis_pool {
        if backend.is_sigma_epic(g) {
            if let Ok(x) = extension::make_from_epic(backend, g) {
                ext_pool.push(x);
            }
        }
    }
    for a in inventory {
        for b in inventory {
            let bp = biproduct(a, b);
            let e = Mor::zero(&backend.coshift_obj(b), a);
            let h = Mor::zero(b, &backend.shift_obj(a));
            if let Ok(x) =
                Extension::validated(backend, e, bp.inj_a.clone(), bp.proj_b.clone(), h)
            {
                ext_pool.push(x);
            }
        }
    }

    let mut ac1 = Check::new("AC1-factor");
    for src in &ext_pool {
        for tgt in &ext_pool {
            let hs = backend.hom(src.end(), tgt.end());
            let c_reps = space_classes(backend, &hs, "verify-ac1");
            for c in &c_reps {
                if !backend.is_null(&tgt.h().after(c)) || !backend.is_null(&c.after(src.g())) {
                    continue;
                }
                match backend.ac1_factor(src.g(), tgt.h(), tgt.g(), c) {
                    Some(c2) => {
                        let lhs = tgt.g().after(&c2);
                        if backend.mor_eq(&lhs, c) {
                            ac1.pass();
                        } else {
                            ac1.fail(
                                "the factorization recovers the morphism",
                                Violation::backend_rel(
                                    BackendRelation::Identity,
                                    vec![lhs, c.clone()],
                                ),
                            );
                        }
                    }
                    None => ac1.fail(
                        "morphisms killing both legs factor through the deflation",
                        Violation::backend_rel(
                            BackendRelation::FactorEnd,
                            vec![src.g().clone(), tgt.h().clone(), tgt.g().clone(), c.clone()],
                        ),
                    ),
                }
            }
        }
    }

    let mut ac2 = Check::new("AC2-factor");
    for src in &ext_pool {
        for tgt in &ext_pool {
            let hs = backend.hom(src.start(), tgt.start());
            let a_reps = space_classes(backend, &hs, "verify-ac2");
            for a in &a_reps {
                if !backend.is_null(&a.after(src.e())) || !backend.is_null(&tgt.f().after(a)) {
                    continue;
                }
                match backend.ac2_factor(src.e(), src.f(), tgt.f(), a) {
                    Some(a2) => {
                        let lhs = a2.after(src.f());
                        if backend.mor_eq(&lhs, a) {
                            ac2.pass();
                        } else {
                            ac2.fail(
                                "the factorization recovers the morphism",
                                Violation::backend_rel(
                                    BackendRelation::Identity,
                                    vec![lhs, a.clone()],
                                ),
                            );
                        }
                    }
                    None => ac2.fail(
                        "morphisms killing both legs factor through the inflation",
                        Violation::backend_rel(
                            BackendRelation::FactorStart,
                            vec![src.e().clone(), src.f().clone(), tgt.f().clone(), a.clone()],
                        ),
                    ),
                }
            }
        }
    }

    let mut exact_r = Check::new("EXACT-right");
    for t in &right_triples {
        for probe in inventory {
            if extension::right_hom_exact(backend, &t.0, &t.1, &t.2, probe) {
                exact_r.pass();
            } else {
                exact_r.fail(
                    "contravariant hom sequences of right classes are exact",
                    Violation::backend_probe(
                        BackendRelation::ExactRight,
                        vec![t.0.clone(), t.1.clone(), t.2.clone()],
                        Arc::clone(probe),
                    ),
                );
            }
        }
    }

    let mut exact_l = Check::new("EXACT-left");
    for t in &left_triples {
        for probe in inventory {
            if extension::left_hom_exact(backend, &t.0, &t.1, &t.2, probe) {
                exact_l.pass();
            } else {
                exact_l.fail(
                    "covariant hom sequences of left classes are exact",
                    Violation::backend_probe(
                        BackendRelation::ExactLeft,
                        vec![t.0.clone(), t.1.clone(), t.2.clone()],
                        Arc::clone(probe),
                    ),
                );
            }
        }
    }

    let mut reports: Vec<CheckReport> = vec![
        rtr1_id, rtr1_c, rtr2, ltr1_id, ltr1_c, ltr2, rtr3, ltr3, rtr4, ltr4, g1c, g2c, ac1, ac2,
        exact_r, exact_l,
    ]
    .into_iter()
    .map(|c| c.into_report(budget))
    .collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    reports
}

// ----- the triangulated suite -----------------------------------------------

fn decide(
    sc: &StableCategory,
    chk: &mut Check,
    t: &Triangle,
    identity: &str,
) -> Result<(), VerifyError> {
    match tri::is_distinguished(sc, t) {
        Ok(out) => {
            chk.search(&out, identity, || {
                Violation::stable_rel(
                    StableRelation::Distinguished,
                    vec![t.f().clone(), t.g().clone(), t.q().clone()],
                )
            });
            Ok(())
        }
        Err(e) if is_inconclusive_tri(&e) => {
            chk.exhaust();
            Ok(())
        }
        Err(e) => Err(e.into()),
    }
}

fn run_oct(sc: &StableCategory, chk: &mut Check, l: &Mor, m2: &Mor, f: &Mor) {
    let cones = (tri::cone(sc, l), tri::cone(sc, m2), tri::cone(sc, f));
    let (t_l, t_l2, t_f) = match cones {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
            if is_inconclusive_tri(&e) {
                chk.exhaust();
            } else {
                chk.fail(
                    "cones exist for all three legs",
                    Violation::stable_rel(StableRelation::StableOctahedron, vec![l.clone(), m2.clone()]),
                );
            }
            return;
        }
    };
    match tri::octahedron_stable(sc, t_l.standard(), t_l2.standard(), t_f.standard()) {
        Ok(_) => chk.pass(),
        Err(e) if is_inconclusive_tri(&e) => chk.exhaust(),
        Err(_) => chk.fail(
            "composable pairs admit octahedra",
            Violation::stable_rel(StableRelation::StableOctahedron, vec![l.clone(), m2.clone()]),
        ),
    }
}

fn column_segment(field: Fp, w: &Matrix, start: usize, len: usize) -> Matrix {
    let mut out = Matrix::zeros(field, len, 1);
    for r in 0..len {
        out.set(r, 0, w.at(start + r, 0));
    }
    out
}

/// Runs the triangulated-category suite on the stable category of a
/// Frobenius triple: TR1 through TR4, well-definedness of the suspension,
/// and the quasi-inverse property.  Returns reports sorted by id, or
/// [`VerifyError::NotFrobenius`] when the suite does not apply.
pub fn verify_tr_suite(sc: &StableCategory) -> Result<Vec<CheckReport>, VerifyError> {
    let frob = sc.frobenius_report()?;
    if !frob.is_frobenius {
        return Err(VerifyError::NotFrobenius);
    }
    let backend = sc.backend();
    let budget = backend.budget();
    let field = backend.field();
    let zero = backend.zero_obj();
    let inventory = sc.triple().z().inventory();

    let mut sbasis: Vec<Mor> = Vec::new();
    for a in inventory {
        for b in inventory {
            let s = sc.stable_hom_space(a, b);
            for i in 0..s.dim() {
                sbasis.push(s.basis_mor(i));
            }
        }
    }
    let mut with_ids = sbasis.clone();
    for m in inventory {
        with_ids.push(Mor::identity(m));
    }

    let mut tr1_id = Check::new("TR1-identity");
    for x in inventory {
        match sc.suspension_object(x) {
            Ok(sx) => {
                let t = Triangle::new(
                    Mor::identity(x),
                    Mor::zero(x, &zero),
                    Mor::zero(&zero, &sx),
                );
                decide(sc, &mut tr1_id, &t, "the identity triangle is distinguished")?;
            }
            Err(e) if is_inconclusive_stable(&e) => tr1_id.exhaust(),
            Err(e) => return Err(e.into()),
        }
    }

    let mut tr1_cone = Check::new("TR1-cone");
    let mut cones: Vec<(Mor, tri::ConeData)> = Vec::new();
    for f in &with_ids {
        match tri::cone(sc, f) {
            Ok(cd) => {
                decide(
                    sc,
                    &mut tr1_cone,
                    cd.triangle(),
                    "standard triangles are distinguished",
                )?;
                cones.push((f.clone(), cd));
            }
            Err(e) if is_inconclusive_tri(&e) => tr1_cone.exhaust(),
            Err(_) => tr1_cone.fail(
                "every morphism has a cone",
                Violation::stable_rel(StableRelation::Cone, vec![f.clone()]),
            ),
        }
    }

    let mut tr2 = Check::new("TR2-rotation");
    for (f, cd) in &cones {
        match tri::rotate(sc, cd.standard()) {
            Ok(r) => {
                let sf = match sc.suspension_morphism(f) {
                    Ok(m) => m,
                    Err(e) if is_inconclusive_stable(&e) => {
                        tr2.exhaust();
                        continue;
                    }
                    Err(e) => return Err(e.into()),
                };
                let expected = sf.neg();
                if !sc.stable_eq(r.triangle().q(), &expected) {
                    tr2.fail(
                        "the rotated third map is the negated suspension",
                        Violation::stable_rel(
                            StableRelation::StableIdentity,
                            vec![r.triangle().q().clone(), expected],
                        ),
                    );
                    continue;
                }
                decide(sc, &mut tr2, r.triangle(), "rotations are distinguished")?;
            }
            Err(e) if is_inconclusive_tri(&e) => tr2.exhaust(),
            Err(_) => tr2.fail(
                "every standard triangle rotates",
                Violation::stable_rel(StableRelation::Rotation, vec![f.clone()]),
            ),
        }
    }

    let mut tr3 = Check::new("TR3-fill");
    for (f1, cd1) in &cones {
        for (f2, cd2) in &cones {
            let sx = sc.stable_hom_space(f1.src(), f2.src());
            let sy = sc.stable_hom_space(f1.tgt(), f2.tgt());
            let sq = sc.stable_hom_space(f1.src(), f2.tgt());
            let dx = sx.dim();
            let dy = sy.dim();
            let mut cols: Vec<Vec<u32>> = Vec::new();
            for i in 0..dx {
                let xi = sx.basis_mor(i);
                cols.push(sq.coords(&f2.after(&xi)).neg().entries().to_vec());
            }
            for j in 0..dy {
                let yj = sy.basis_mor(j);
                cols.push(sq.coords(&yj.after(f1)).entries().to_vec());
            }
            let sys = Matrix::from_cols(field, sq.dim(), &cols);
            let kernel = sys.rref().kernel;
            let kdim = kernel.cols();
            let enumerable = u64::from(field.p())
                .checked_pow(kdim as u32)
                .is_some_and(|count| count <= budget.enumeration);
            let candidates: Vec<Matrix> = if kdim == 0 {
                vec![Matrix::zeros(field, dx + dy, 1)]
            } else if enumerable {
                coeff_vectors(field.p(), kdim)
                    .map(|cv| kernel.mul(&Matrix::from_cols(field, kdim, &[cv])))
                    .collect()
            } else {
                (0..budget.samples)
                    .map(|s| {
                        kernel.mul(&Matrix::seeded_random(
                            field,
                            kdim,
                            1,
                            derive_seed(sc.seed(), seed_tag("verify-tr3") ^ u64::from(s)),
                        ))
                    })
                    .collect()
            };
            for w in &candidates {
                let x = sx.rep_from_coords(&column_segment(field, w, 0, dx));
                let y = sy.rep_from_coords(&column_segment(field, w, dx, dy));
                match tri::fill_in(sc, cd1.standard(), cd2.standard(), &x, &y) {
                    Ok(_) => tr3.pass(),
                    Err(e) if is_inconclusive_tri(&e) => tr3.exhaust(),
                    Err(_) => tr3.fail(
                        "stably commuting squares extend to cone fills",
                        Violation::stable_rel(
                            StableRelation::StableFill,
                            vec![f1.clone(), f2.clone(), x.clone(), y.clone()],
                        ),
                    ),
                }
            }
        }
    }

    let mut tr4 = Check::new("TR4-octahedron");
    for u in inventory {
        for v in inventory {
            let bp = biproduct(u, v);
            run_oct(sc, &mut tr4, &bp.inj_a, &bp.proj_a, &Mor::identity(u));
        }
    }
    for l in &with_ids {
        for m2 in &with_ids {
            if l.tgt() != m2.src() {
                continue;
            }
            let f = m2.after(l);
            run_oct(sc, &mut tr4, l, m2, &f);
        }
    }

    let mut swd = Check::new("S-well-defined");
    for f in &sbasis {
        let mut reps: Vec<Mor> = Vec::new();
        let mut outcome = None;
        for i in 0..32u64 {
            let seed = derive_seed(sc.seed(), seed_tag("verify-lift") ^ i) | 1;
            match sc.suspension_morphism_seeded(f, seed) {
                Ok(m) => reps.push(m),
                Err(e) if is_inconclusive_stable(&e) => {
                    outcome = Some(None);
                    break;
                }
                Err(_) => {
                    outcome = Some(Some(seed));
                    break;
                }
            }
        }
        match outcome {
            Some(None) => {
                swd.exhaust();
                continue;
            }
            Some(Some(seed)) => {
                swd.fail(
                    "suspension lifts exist for every seed",
                    Violation::stable_tagged(
                        StableRelation::Suspension,
                        vec![f.clone()],
                        Vec::new(),
                        seed,
                    ),
                );
                continue;
            }
            None => {}
        }
        let base = &reps[0];
        if let Some(bad) = reps.iter().skip(1).find(|m| !sc.stable_eq(base, m)) {
            swd.fail(
                "all suspension lifts agree stably",
                Violation::stable_rel(
                    StableRelation::StableIdentity,
                    vec![base.clone(), bad.clone()],
                ),
            );
        } else {
            swd.pass();
        }
    }

    let mut sqi = Check::new("S-quasi-inverse");
    for x in inventory {
        for (tag, name) in [(0u64, "unit"), (1u64, "counit")] {
            let built = if tag == 0 { sc.unit(x) } else { sc.counit(x) };
            match built {
                Ok(c) => {
                    if sc.is_stable_iso(&c) {
                        sqi.pass();
                    } else {
                        let identity = if tag == 0 {
                            "the unit is a stable isomorphism"
                        } else {
                            "the counit is a stable isomorphism"
                        };
                        sqi.fail(
                            identity,
                            Violation::stable_rel(StableRelation::StableIso, vec![c.clone()]),
                        );
                    }
                }
                Err(e) if is_inconclusive_stable(&e) => sqi.exhaust(),
                Err(_) => {
                    let identity = if tag == 0 {
                        "the unit comparison exists"
                    } else {
                        "the counit comparison exists"
                    };
                    let _ = name;
                    sqi.fail(
                        identity,
                        Violation::stable_tagged(
                            StableRelation::Comparison,
                            Vec::new(),
                            vec![Arc::clone(x)],
                            tag,
                        ),
                    );
                }
            }
        }
    }
    for f in &sbasis {
        let built = (|| -> Result<(Mor, Mor), StableError> {
            let ux = sc.unit(f.src())?;
            let uy = sc.unit(f.tgt())?;
            let sstar = sc.cosuspension_morphism(f)?;
            let ssf = sc.suspension_morphism(&sstar)?;
            Ok((uy.after(f), ssf.after(&ux)))
        })();
        match built {
            Ok((lhs, rhs)) => {
                if sc.stable_eq(&lhs, &rhs) {
                    sqi.pass();
                } else {
                    sqi.fail(
                        "the unit square commutes",
                        Violation::stable_rel(StableRelation::StableIdentity, vec![lhs, rhs]),
                    );
                }
            }
            Err(e) if is_inconclusive_stable(&e) => sqi.exhaust(),
            Err(_) => sqi.fail(
                "cosuspension lifts exist",
                Violation::stable_rel(StableRelation::Cosuspension, vec![f.clone()]),
            ),
        }
        let built = (|| -> Result<(Mor, Mor), StableError> {
            let cx = sc.counit(f.src())?;
            let cy = sc.counit(f.tgt())?;
            let sf = sc.suspension_morphism(f)?;
            let s_star_sf = sc.cosuspension_morphism(&sf)?;
            Ok((f.after(&cx), cy.after(&s_star_sf)))
        })();
        match built {
            Ok((lhs, rhs)) => {
                if sc.stable_eq(&lhs, &rhs) {
                    sqi.pass();
                } else {
                    sqi.fail(
                        "the counit square commutes",
                        Violation::stable_rel(StableRelation::StableIdentity, vec![lhs, rhs]),
                    );
                }
            }
            Err(e) if is_inconclusive_stable(&e) => sqi.exhaust(),
            Err(_) => sqi.fail(
                "suspension lifts exist",
                Violation::stable_rel(StableRelation::Suspension, vec![f.clone()]),
            ),
        }
    }

    let mut reports: Vec<CheckReport> = vec![tr1_id, tr1_cone, tr2, tr3, tr4, swd, sqi]
        .into_iter()
        .map(|c| c.into_report(budget))
        .collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(reports)
}

// ----- the structural theory suite ------------------------------------------

/// A stored enlargement of the distinguished subcategory inside the same
/// ambient inventory, used by the monotonicity and invariance checks.
#[derive(Debug, Clone)]
pub struct TheoryChain {
    pub base: FrobeniusTriple,
    pub enlarged: SubcategorySpec,
}

/// Whether every module of `from` is isomorphic to some module of `into`.
/// `None` when an isomorphism test was inconclusive.
fn covered(from: &[&Arc<Module>], into: &[&Arc<Module>], seed: u64) -> Option<bool> {
    for m in from {
        let mut hit = false;
        let mut unknown = false;
        for n in into {
            match decomp::module_iso(m, n, seed) {
                IsoCheck::Isomorphic(_) => {
                    hit = true;
                    break;
                }
                IsoCheck::Unknown => unknown = true,
                IsoCheck::NotIsomorphic => {}
            }
        }
        if !hit {
            if unknown {
                return None;
            }
            return Some(false);
        }
    }
    Some(true)
}

/// Whether the flagged entries on both sides present the same subcategory
/// up to isomorphism.
fn flag_sets_match(
    left: &[Arc<Module>],
    left_flags: &[bool],
    right: &[Arc<Module>],
    right_flags: &[bool],
    seed: u64,
) -> Option<bool> {
    let lsel: Vec<&Arc<Module>> = left
        .iter()
        .zip(left_flags)
        .filter(|(_, keep)| **keep)
        .map(|(m, _)| m)
        .collect();
    let rsel: Vec<&Arc<Module>> = right
        .iter()
        .zip(right_flags)
        .filter(|(_, keep)| **keep)
        .map(|(m, _)| m)
        .collect();
    Some(covered(&lsel, &rsel, seed)? && covered(&rsel, &lsel, seed)?)
}

/// Evaluates monotonicity for one chain: if the base triple is Frobenius,
/// the enlarged one must be as well.  `None` when undecided within budget.
fn monotone_holds(chain: &TheoryChain) -> Result<Option<bool>, VerifyError> {
    let backend = chain.base.backend();
    let seed = backend.seed();
    let base_d: Vec<&Arc<Module>> = chain.base.d().inventory().iter().collect();
    let enlarged_inv: Vec<&Arc<Module>> = chain.enlarged.inventory().iter().collect();
    match covered(&base_d, &enlarged_inv, derive_seed(seed, seed_tag("verify-chain"))) {
        Some(true) => {}
        Some(false) => return Ok(Some(false)),
        None => return Ok(None),
    }
    let enlarged_triple = FrobeniusTriple::new(
        backend.clone(),
        chain.base.z().clone(),
        chain.enlarged.clone(),
        seed,
    )?;
    let rb = check_frobenius(&chain.base)?;
    let re = check_frobenius(&enlarged_triple)?;
    if rb.inconclusive || re.inconclusive {
        return Ok(None);
    }
    Ok(Some(!rb.is_frobenius || re.is_frobenius))
}

/// Evaluates invariance for one chain: with enough injectives the relative
/// injectives are unchanged by enlargement, and dually with enough
/// projectives.
fn invariance_holds(chain: &TheoryChain) -> Result<Option<bool>, VerifyError> {
    let backend = chain.base.backend();
    let seed = backend.seed();
    let rb = check_frobenius(&chain.base)?;
    if rb.inconclusive {
        return Ok(None);
    }
    if !rb.enough_injectives && !rb.enough_projectives {
        return Ok(Some(true));
    }
    let fam = conflation_family(&chain.base, seed)?;
    if fam.inconclusive {
        return Ok(None);
    }
    let mut agree = true;
    if rb.enough_injectives {
        let base_flags =
            relatively_injective_flags(backend, &fam.conflations, chain.base.d().inventory());
        let enl_flags =
            relatively_injective_flags(backend, &fam.conflations, chain.enlarged.inventory());
        match flag_sets_match(
            chain.base.d().inventory(),
            &base_flags,
            chain.enlarged.inventory(),
            &enl_flags,
            derive_seed(seed, seed_tag("verify-inv")),
        ) {
            Some(ok) => agree &= ok,
            None => return Ok(None),
        }
    }
    if rb.enough_projectives {
        let base_flags =
            relatively_projective_flags(backend, &fam.conflations, chain.base.d().inventory());
        let enl_flags =
            relatively_projective_flags(backend, &fam.conflations, chain.enlarged.inventory());
        match flag_sets_match(
            chain.base.d().inventory(),
            &base_flags,
            chain.enlarged.inventory(),
            &enl_flags,
            derive_seed(seed, seed_tag("verify-inv-p")),
        ) {
            Some(ok) => agree &= ok,
            None => return Ok(None),
        }
    }
    Ok(Some(agree))
}

/// Evaluates minimality for one triple: when it is Frobenius, the relative
/// injectives lie inside the distinguished subcategory and themselves form
/// a Frobenius triple.
fn minimal_holds(triple: &FrobeniusTriple) -> Result<Option<bool>, VerifyError> {
    let backend = triple.backend();
    let seed = backend.seed();
    let rep = check_frobenius(triple)?;
    if rep.inconclusive {
        return Ok(None);
    }
    if !rep.is_frobenius {
        return Ok(Some(true));
    }
    let z_inv = triple.z().inventory();
    let minimal: Vec<Arc<Module>> = rep
        .minimal_injective_indices
        .iter()
        .map(|&i| Arc::clone(&z_inv[i]))
        .collect();
    for (k, m) in minimal.iter().enumerate() {
        match triple
            .d()
            .contains(backend, m, derive_seed(seed, seed_tag("verify-min") ^ k as u64))
        {
            AddOutcome::Inside { .. } => {}
            AddOutcome::Outside { .. } => return Ok(Some(false)),
            AddOutcome::Unknown => return Ok(None),
        }
    }
    let d_min = SubcategorySpec::new(backend, "minimal-injectives", minimal, seed)?;
    let trip_min = FrobeniusTriple::new(backend.clone(), triple.z().clone(), d_min, seed)?;
    let rmin = check_frobenius(&trip_min)?;
    if rmin.inconclusive {
        return Ok(None);
    }
    Ok(Some(rmin.is_frobenius))
}

/// Evaluates the mutation-pair equivalence for one triple over a
/// triangulated backend.  The equivalence is asserted for extension-closed
/// inventories; a triple whose inventory is not closed is outside its
/// scope and evaluates as vacuously true.
fn mutation_claim_holds(triple: &FrobeniusTriple) -> Result<Option<bool>, VerifyError> {
    let rep = mutation_pair_check(triple)?;
    if rep.inconclusive {
        return Ok(None);
    }
    if !rep.frobenius.closed {
        return Ok(Some(true));
    }
    Ok(Some(
        rep.sides_agree && rep.subcategory_is_forced != Some(false),
    ))
}

/// Runs the structural suite over stored triples and enlargement chains.
/// Returns one report per check, sorted by id.
pub fn verify_frobenius_theory(
    triples: &[FrobeniusTriple],
    chains: &[TheoryChain],
) -> Result<Vec<CheckReport>, VerifyError> {
    let budget = triples
        .first()
        .map(|t| t.backend().budget())
        .or_else(|| chains.first().map(|c| c.base.backend().budget()))
        .unwrap_or_default();

    let mut spl_epi = Check::new("SPL-sigma-epic");
    let mut spl_mono = Check::new("SPL-omega-monic");
    for triple in triples {
        let backend = triple.backend();
        let pool = basis_sweep(backend, triple.z().inventory());
        for m in &pool {
            for e in &pool {
                if m.tgt() != e.src() {
                    continue;
                }
                let comp = e.after(m);
                if backend.is_sigma_epic(&comp) && !backend.is_sigma_epic(e) {
                    spl_epi.fail(
                        "a suspension-epic composite forces the outer leg",
                        Violation::backend_rel(
                            BackendRelation::SigmaEpic,
                            vec![m.clone(), e.clone()],
                        ),
                    );
                } else {
                    spl_epi.pass();
                }
                if backend.is_omega_monic(&comp) && !backend.is_omega_monic(m) {
                    spl_mono.fail(
                        "a cosuspension-monic composite forces the inner leg",
                        Violation::backend_rel(
                            BackendRelation::OmegaMonic,
                            vec![m.clone(), e.clone()],
                        ),
                    );
                } else {
                    spl_mono.pass();
                }
            }
        }
    }

    let mut spl_ext = Check::new("SPL-extension");
    for triple in triples {
        let backend = triple.backend();
        let inv = triple.z().inventory();
        for a in inv {
            for b in inv {
                let bp = biproduct(a, b);
                let e = Mor::zero(&backend.coshift_obj(b), a);
                let h = Mor::zero(b, &backend.shift_obj(a));
                match Extension::validated(
                    backend,
                    e.clone(),
                    bp.inj_a.clone(),
                    bp.proj_b.clone(),
                    h.clone(),
                ) {
                    Ok(_) => spl_ext.pass(),
                    Err(err) if is_inconclusive_ext(&err) => spl_ext.exhaust(),
                    Err(_) => spl_ext.fail(
                        "split data forms an extension",
                        Violation::backend_rel(
                            BackendRelation::InvalidExtension,
                            vec![e, bp.inj_a.clone(), bp.proj_b.clone(), h],
                        ),
                    ),
                }
            }
        }
    }

    let mut frob_mono = Check::new("FROB-monotone");
    for chain in chains {
        match monotone_holds(chain)? {
            Some(true) => frob_mono.pass(),
            Some(false) => frob_mono.fail(
                "enlargement preserves the Frobenius property",
                Violation::theory_rel(
                    TheoryRelation::Monotone,
                    chain.base.clone(),
                    Some(chain.enlarged.clone()),
                ),
            ),
            None => frob_mono.exhaust(),
        }
    }

    let mut frob_inv = Check::new("FROB-invariance");
    for chain in chains {
        match invariance_holds(chain)? {
            Some(true) => frob_inv.pass(),
            Some(false) => frob_inv.fail(
                "relative injectives are unchanged by enlargement",
                Violation::theory_rel(
                    TheoryRelation::Invariance,
                    chain.base.clone(),
                    Some(chain.enlarged.clone()),
                ),
            ),
            None => frob_inv.exhaust(),
        }
    }

    let mut frob_min = Check::new("FROB-minimal");
    for triple in triples {
        match minimal_holds(triple)? {
            Some(true) => frob_min.pass(),
            Some(false) => frob_min.fail(
                "the relative injectives are the minimum distinguished choice",
                Violation::theory_rel(TheoryRelation::Minimal, triple.clone(), None),
            ),
            None => frob_min.exhaust(),
        }
    }

    let mut mut_claim = Check::new("MUT-claim");
    for triple in triples {
        if triple.backend().stable_data().is_none() {
            continue;
        }
        match mutation_claim_holds(triple)? {
            Some(true) => mut_claim.pass(),
            Some(false) => mut_claim.fail(
                "the two sides of the mutation-pair equivalence agree",
                Violation::theory_rel(TheoryRelation::Mutation, triple.clone(), None),
            ),
            None => mut_claim.exhaust(),
        }
    }

    let mut reports: Vec<CheckReport> = vec![
        spl_epi, spl_mono, spl_ext, frob_mono, frob_inv, frob_min, mut_claim,
    ]
    .into_iter()
    .map(|c| c.into_report(budget))
    .collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(reports)
}

// ----- the exhaustive mutation scan -----------------------------------------

/// One `(Z, D)` pair of the exhaustive sub-inventory scan.
#[derive(Debug)]
pub struct ScanEntry {
    /// Indices into the scanned inventory forming the ambient subcategory.
    pub z_indices: Vec<usize>,
    /// Indices into the scanned inventory forming the distinguished part,
    /// always a subset of `z_indices`.
    pub d_indices: Vec<usize>,
    pub report: MutationReport,
    /// Whether the ambient subcategory is extension closed; only closed
    /// pairs are in scope for the equivalence.
    pub extension_closed: bool,
    /// Both hom-vanishing conditions plus the Frobenius property hold.
    pub qualifies: bool,
    /// The two independently evaluated sides agree.
    pub agrees: bool,
    /// The triangle suite over the quotient, for qualifying pairs.
    pub suite: Option<Vec<CheckReport>>,
}

/// Outcome of scanning every sub-inventory pair.
#[derive(Debug)]
pub struct ScanReport {
    pub entries: Vec<ScanEntry>,
    pub pairs: usize,
    /// Extension-closed pairs whose two sides disagree.
    pub disagreements: usize,
    pub qualifying: usize,
    /// Every qualifying pair passed the full triangle suite.
    pub all_qualifying_pass: bool,
    pub inconclusive: bool,
}

/// Scans every pair of sub-inventories `(Z, D)` with `D ⊆ Z` over a
/// triangulated backend: runs the mutation-pair check on each pair and,
/// for pairs satisfying the construction-side conditions, the full
/// triangle suite over the resulting stable category.
pub fn mutation_scan(
    backend: &Backend,
    inventory: &[Arc<Module>],
) -> Result<ScanReport, VerifyError> {
    let seed = backend.seed();
    let n = inventory.len();
    let mut entries = Vec::new();
    let mut disagreements = 0usize;
    let mut qualifying = 0usize;
    let mut all_qualifying_pass = true;
    let mut inconclusive = false;
    for zmask in 0u32..(1 << n) {
        let z_indices: Vec<usize> = (0..n).filter(|i| zmask & (1 << i) != 0).collect();
        let mut dmasks: Vec<u32> = Vec::new();
        let mut dm = zmask;
        loop {
            dmasks.push(dm);
            if dm == 0 {
                break;
            }
            dm = (dm - 1) & zmask;
        }
        dmasks.sort_unstable();
        for dmask in dmasks {
            let d_indices: Vec<usize> = (0..n).filter(|i| dmask & (1 << i) != 0).collect();
            let z_mods: Vec<Arc<Module>> = z_indices
                .iter()
                .map(|&i| Arc::clone(&inventory[i]))
                .collect();
            let d_mods: Vec<Arc<Module>> = d_indices
                .iter()
                .map(|&i| Arc::clone(&inventory[i]))
                .collect();
            let z = SubcategorySpec::new(backend, format!("Z[{zmask:03b}]"), z_mods, seed)?;
            let d = SubcategorySpec::new(backend, format!("D[{dmask:03b}]"), d_mods, seed)?;
            let triple = FrobeniusTriple::new(backend.clone(), z, d, seed)?;
            let report = mutation_pair_check(&triple)?;
            inconclusive |= report.inconclusive;
            let extension_closed = report.frobenius.closed && !report.inconclusive;
            let qualifies = report.construction_side;
            let agrees = report.sides_agree;
            if extension_closed && !agrees {
                disagreements += 1;
            }
            let suite = if qualifies {
                qualifying += 1;
                let sc = StableCategory::new(triple.clone())?;
                let checks = verify_tr_suite(&sc)?;
                if !checks.iter().all(|c| c.status == CheckStatus::Pass) {
                    all_qualifying_pass = false;
                }
                Some(checks)
            } else {
                None
            };
            entries.push(ScanEntry {
                z_indices: z_indices.clone(),
                d_indices,
                report,
                extension_closed,
                qualifies,
                agrees,
                suite,
            });
        }
    }
    let pairs = entries.len();
    Ok(ScanReport {
        entries,
        pairs,
        disagreements,
        qualifying,
        all_qualifying_pass,
        inconclusive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::stable::{jordan_module, StableData};

    fn abelian_backend(p: u64, n: usize) -> (Backend, Vec<Arc<Module>>) {
        let algebra = Algebra::truncated_polynomial(p, n).expect("algebra");
        let field = algebra.field();
        let backend = Backend::abelian(Arc::new(algebra)).with_seed(7);
        let inventory = (1..=n)
            .map(|k| Arc::new(jordan_module(field, n, k)))
            .collect();
        (backend, inventory)
    }

    fn stable_backend(p: u64, n: usize) -> (Backend, Vec<Arc<Module>>) {
        let data = StableData::truncated(p, n, 7, Budget::default()).expect("stable data");
        let field = data.field();
        let backend = Backend::stable(Arc::clone(&data)).with_seed(7);
        let inventory = (1..n)
            .map(|k| Arc::new(jordan_module(field, n, k)))
            .collect();
        (backend, inventory)
    }

    fn assert_all_pass(reports: &[CheckReport]) {
        for r in reports {
            assert_eq!(r.status, CheckStatus::Pass, "{}: {}", r.id, r.detail);
        }
    }

    #[test]
    fn abelian_axiom_suite_passes() {
        let (backend, inventory) = abelian_backend(2, 2);
        let reports = verify_pseudotriangulation(&backend, &inventory, None);
        assert_eq!(reports.len(), 16);
        let ids: Vec<&str> = reports.iter().map(|r| r.id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        assert_eq!(ids, sorted);
        assert_all_pass(&reports);
    }

    #[test]
    fn stable_axiom_suite_passes() {
        let (backend, inventory) = stable_backend(3, 3);
        let reports = verify_pseudotriangulation(&backend, &inventory, None);
        assert_eq!(reports.len(), 16);
        assert_all_pass(&reports);
    }

    #[test]
    fn rotation_fault_is_detected_and_replays() {
        let (backend, inventory) = stable_backend(3, 3);
        let reports =
            verify_pseudotriangulation(&backend, &inventory, Some(Fault::RotationSignDrop));
        let bad = reports
            .iter()
            .find(|r| r.id == "RTR2-rotate")
            .expect("report present");
        assert_eq!(bad.status, CheckStatus::Fail);
        assert!(bad.witness.is_some());
        let violation = bad.violation.as_ref().expect("violation retained");
        assert_eq!(replay(&backend, violation), Some(true));
    }

    #[test]
    fn connecting_fault_is_detected_and_replays() {
        let (backend, inventory) = stable_backend(3, 3);
        let reports = verify_pseudotriangulation(&backend, &inventory, Some(Fault::PsiSignFlip));
        let failing: Vec<&CheckReport> = reports
            .iter()
            .filter(|r| r.status == CheckStatus::Fail)
            .collect();
        assert!(!failing.is_empty(), "the sign fault must be detected");
        let witnessed = failing
            .iter()
            .find(|r| r.violation.is_some())
            .expect("witnessed failure");
        assert_eq!(
            replay(&backend, witnessed.violation.as_ref().expect("violation")),
            Some(true)
        );
    }

    #[test]
    fn tr_suite_passes_on_small_quotient() {
        let data = StableData::truncated(2, 2, 7, Budget::default()).expect("data");
        let reports = verify_tr_suite(data.category()).expect("suite");
        assert_eq!(reports.len(), 7);
        let ids: Vec<&str> = reports.iter().map(|r| r.id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        assert_eq!(ids, sorted);
        assert_all_pass(&reports);
    }

    #[test]
    fn theory_suite_passes_on_abelian_triple() {
        let (backend, inventory) = abelian_backend(2, 2);
        let seed = backend.seed();
        let z = SubcategorySpec::new(&backend, "all", inventory.clone(), seed).expect("z");
        let d = SubcategorySpec::new(&backend, "regular", vec![Arc::clone(&inventory[1])], seed)
            .expect("d");
        let triple = FrobeniusTriple::new(backend.clone(), z.clone(), d, seed).expect("triple");
        let chain = TheoryChain {
            base: triple.clone(),
            enlarged: z,
        };
        let reports = verify_frobenius_theory(&[triple], &[chain]).expect("theory");
        assert_eq!(reports.len(), 7);
        assert_all_pass(&reports);
    }

    #[test]
    fn scan_qualifies_exactly_the_stable_inventories() {
        let data = StableData::truncated(2, 3, 7, Budget::default()).expect("data");
        let field = data.field();
        let backend = Backend::stable(Arc::clone(&data)).with_seed(7);
        let inventory: Vec<Arc<Module>> = (1..3)
            .map(|k| Arc::new(jordan_module(field, 3, k)))
            .collect();
        let scan = mutation_scan(&backend, &inventory).expect("scan");
        assert_eq!(scan.pairs, 9);
        assert_eq!(scan.disagreements, 0);
        assert!(scan.all_qualifying_pass);
        assert!(!scan.inconclusive);
        let qualifying: Vec<&ScanEntry> =
            scan.entries.iter().filter(|e| e.qualifies).collect();
        assert_eq!(qualifying.len(), 2);
        assert!(qualifying.iter().all(|e| e.d_indices.is_empty()));
        let sizes: Vec<usize> = qualifying.iter().map(|e| e.z_indices.len()).collect();
        assert_eq!(sizes, vec![0, 2]);
    }

    #[test]
    fn reports_serialize_deterministically() {
        let (backend, inventory) = abelian_backend(2, 2);
        let first = verify_pseudotriangulation(&backend, &inventory, None);
        let second = verify_pseudotriangulation(&backend, &inventory, None);
        let to_json = |reports: &[CheckReport]| {
            serde_json::to_string(&serde_json::to_value(reports).expect("value")).expect("json")
        };
        assert_eq!(to_json(&first), to_json(&second));
    }
}
