//! Subcategory inventories and the relative homological layer of a triple
//! (ambient category, Z, D).
//!
//! A subcategory is presented by an inventory: a finite list of pairwise
//! non-isomorphic indecomposable objects; the subcategory is its additive
//! closure.  This module decides membership (backend-aware: summands that
//! are zero objects of the backend are discarded before matching), builds
//! the finite conflation family used by every relative test, checks
//! extension-closure, computes relative injectives and projectives, and
//! evaluates the direct-summand condition in both of its readings.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::Module;
use crate::backend::{derive_seed, quot_map_matrix, seed_tag, Backend, Mor};
use crate::decomp::{self, Certainty, IsoCheck};
use crate::extension::{self, Extension, ExtensionError};
use crate::resolution;

/// Why an inventory or triple failed validation.
#[derive(Debug, Error)]
pub enum TripleError {
    #[error("inventory {label:?} entry {index} is decomposable")]
    Decomposable { label: String, index: usize },
    #[error("inventory {label:?} entry {index} is a zero object of the backend")]
    ZeroObject { label: String, index: usize },
    #[error("inventory {label:?} entries {first} and {second} are isomorphic")]
    Duplicate {
        label: String,
        first: usize,
        second: usize,
    },
    #[error("D inventory entry {index} does not lie in Z")]
    NotInsideZ { index: usize },
    #[error("search budget exhausted during {stage}")]
    Inconclusive { stage: &'static str },
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

/// A finite inventory presenting an additively closed subcategory.
#[derive(Debug, Clone)]
pub struct SubcategorySpec {
    label: String,
    inventory: Vec<Arc<Module>>,
}

/// Membership of an object in the additive closure of an inventory.
#[derive(Debug, Clone)]
pub enum AddOutcome {
    /// Inside, with the multiplicity of each inventory entry.
    Inside { mult: Vec<usize> },
    /// Outside, witnessed by an indecomposable summand matching no entry.
    Outside { witness: Arc<Module> },
    /// Decomposition or matching ran out of budget.
    Unknown,
}

impl AddOutcome {
    pub fn is_inside(&self) -> bool {
        matches!(self, AddOutcome::Inside { .. })
    }
}

impl SubcategorySpec {
    /// Validates an inventory over a backend: entries must be nonzero
    /// objects, indecomposable, and pairwise non-isomorphic.  An empty
    /// inventory presents the zero subcategory.
    pub fn new(
        backend: &Backend,
        label: impl Into<String>,
        inventory: Vec<Arc<Module>>,
        seed: u64,
    ) -> Result<SubcategorySpec, TripleError> {
        let label = label.into();
        for (i, m) in inventory.iter().enumerate() {
            if backend.is_zero_obj(m) {
                return Err(TripleError::ZeroObject {
                    label,
                    index: i,
                });
            }
            let dec = decomp::decompose(m, derive_seed(seed, seed_tag("inv") ^ i as u64), 64);
            if dec.summands.len() != 1 {
                return Err(TripleError::Decomposable { label, index: i });
            }
            if dec.summands[0].certainty == Certainty::Inconclusive {
                return Err(TripleError::Inconclusive {
                    stage: "inventory indecomposability",
                });
            }
        }
        for i in 0..inventory.len() {
            for j in (i + 1)..inventory.len() {
                match decomp::module_iso(&inventory[i], &inventory[j], derive_seed(seed, 91)) {
                    IsoCheck::Isomorphic(_) => {
                        return Err(TripleError::Duplicate {
                            label,
                            first: i,
                            second: j,
                        })
                    }
                    IsoCheck::NotIsomorphic => {}
                    IsoCheck::Unknown => {
                        return Err(TripleError::Inconclusive {
                            stage: "inventory distinctness",
                        })
                    }
                }
            }
        }
        Ok(SubcategorySpec { label, inventory })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn inventory(&self) -> &[Arc<Module>] {
        &self.inventory
    }

    pub fn len(&self) -> usize {
        self.inventory.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inventory.is_empty()
    }

    /// Backend-aware additive membership: decompose, drop summands that
    /// are zero objects of the backend, match the rest against the
    /// inventory up to module isomorphism.
    pub fn contains(&self, backend: &Backend, x: &Arc<Module>, seed: u64) -> AddOutcome {
        let mut mult = vec![0usize; self.inventory.len()];
        if backend.is_zero_obj(x) {
            return AddOutcome::Inside { mult };
        }
        let dec = decomp::decompose(x, seed, 64);
        'summand: for s in &dec.summands {
            if s.certainty == Certainty::Inconclusive {
                return AddOutcome::Unknown;
            }
            let part = Arc::clone(&s.module);
            if backend.is_zero_obj(&part) {
                continue;
            }
            for (i, inv) in self.inventory.iter().enumerate() {
                match decomp::module_iso(&part, inv, derive_seed(seed, 17 ^ i as u64)) {
                    IsoCheck::Isomorphic(_) => {
                        mult[i] += 1;
                        continue 'summand;
                    }
                    IsoCheck::NotIsomorphic => {}
                    IsoCheck::Unknown => return AddOutcome::Unknown,
                }
            }
            return AddOutcome::Outside { witness: part };
        }
        AddOutcome::Inside { mult }
    }
}

impl fmt::Display for SubcategorySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{} objects]", self.label, self.inventory.len())
    }
}

/// A triple (ambient backend, Z, D) with D a full subcategory of Z.
#[derive(Debug, Clone)]
pub struct FrobeniusTriple {
    backend: Backend,
    z: SubcategorySpec,
    d: SubcategorySpec,
}

impl FrobeniusTriple {
    /// Validates that every D-inventory entry is (isomorphic to) a
    /// Z-inventory entry, so D is a full subcategory of Z closed under the
    /// same additive operations.
    pub fn new(
        backend: Backend,
        z: SubcategorySpec,
        d: SubcategorySpec,
        seed: u64,
    ) -> Result<FrobeniusTriple, TripleError> {
        for (i, dm) in d.inventory().iter().enumerate() {
            let hit = z.inventory().iter().any(|zm| {
                matches!(
                    decomp::module_iso(dm, zm, derive_seed(seed, 23)),
                    IsoCheck::Isomorphic(_)
                )
            });
            if !hit {
                return Err(TripleError::NotInsideZ { index: i });
            }
        }
        Ok(FrobeniusTriple { backend, z, d })
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn z(&self) -> &SubcategorySpec {
        &self.z
    }

    pub fn d(&self) -> &SubcategorySpec {
        &self.d
    }
}

/// One extension whose middle escapes the additive closure of Z.
#[derive(Debug, Clone)]
pub struct ClosureFailure {
    pub start: Arc<Module>,
    pub end: Arc<Module>,
    pub middle: Arc<Module>,
    /// The indecomposable summand of the middle matching no Z entry.
    pub witness: Arc<Module>,
}

/// The finite conflation family generated from the inventory, together
/// with any extension-closure violations found while generating it.
///
/// Completeness assumption (surfaced in reports): relative injectivity and
/// projectivity are tested against extensions whose end terms are inventory
/// objects.  Every extension between additive combinations is a direct sum
/// of such, so at desk scale the family is a faithful proxy.
#[derive(Debug, Clone)]
pub struct FamilyReport {
    pub conflations: Vec<Extension>,
    pub failures: Vec<ClosureFailure>,
    /// True when some membership or realization test ran out of budget.
    pub inconclusive: bool,
}

impl FamilyReport {
    pub fn is_closed(&self) -> bool {
        self.failures.is_empty() && !self.inconclusive
    }
}

/// Generates every extension (up to the classifying datum) between ordered
/// pairs of Z-inventory objects and checks each middle for membership in
/// add(Z).  Abelian backends realize first-extension classes by pushout;
/// triangulated backends realize each classifying class through the stored
/// presentation pullback.
pub fn conflation_family(
    triple: &FrobeniusTriple,
    seed: u64,
) -> Result<FamilyReport, TripleError> {
    let backend = triple.backend();
    let z = triple.z();
    let mut conflations = Vec::new();
    let mut failures = Vec::new();
    let mut inconclusive = false;
    for (zi, zend) in z.inventory().iter().enumerate() {
        for (xi, xstart) in z.inventory().iter().enumerate() {
            let pair_seed = derive_seed(seed, seed_tag("fam") ^ ((zi * 97 + xi) as u64));
            let pairs: Vec<(Mor, Mor)> = if backend.is_abelian() {
                let algebra = backend.algebra();
                let ext = resolution::ext1(&algebra, zend, xstart);
                let classes = ext.all_classes(backend.budget().enumeration);
                match classes {
                    Some(reps) => reps
                        .iter()
                        .map(|phi| {
                            let r = ext.realize(phi);
                            let mid = Arc::new(r.middle.clone());
                            (
                                Mor::new(Arc::clone(xstart), Arc::clone(&mid), r.incl),
                                Mor::new(mid, Arc::clone(zend), r.proj),
                            )
                        })
                        .collect(),
                    None => {
                        inconclusive = true;
                        continue;
                    }
                }
            } else {
                let data = backend.stable_data().expect("non-abelian backend");
                let classes = backend.hom(zend, &backend.shift_obj(xstart));
                if classes.class_count().is_none_or(|c| {
                    c > backend.budget().enumeration
                }) {
                    inconclusive = true;
                    continue;
                }
                classes
                    .iter_classes()
                    .map(|h| data.realize_class(xstart, zend, &h))
                    .collect()
            };
            for (f, g) in pairs {
                let middle = Arc::clone(f.tgt());
                match z.contains(backend, &middle, pair_seed) {
                    AddOutcome::Inside { .. } => {
                        conflations.push(extension::complete_pair(backend, &f, &g)?);
                    }
                    AddOutcome::Outside { witness } => failures.push(ClosureFailure {
                        start: Arc::clone(xstart),
                        end: Arc::clone(zend),
                        middle,
                        witness,
                    }),
                    AddOutcome::Unknown => inconclusive = true,
                }
            }
        }
    }
    Ok(FamilyReport {
        conflations,
        failures,
        inconclusive,
    })
}

/// Extension-closure of Z: every extension between Z objects has middle in
/// add(Z).  Returns the family report whose failure list is the evidence.
pub fn is_extension_closed(
    triple: &FrobeniusTriple,
    seed: u64,
) -> Result<FamilyReport, TripleError> {
    conflation_family(triple, seed)
}

/// Relative injectivity of each object of `candidates` against the
/// inflations of the family: `I` passes iff `Hom(Y, I) → Hom(X, I)` is
/// surjective for every conflation `X → Y → Z` in the family.
pub fn relatively_injective_flags(
    backend: &Backend,
    family: &[Extension],
    candidates: &[Arc<Module>],
) -> Vec<bool> {
    candidates
        .iter()
        .map(|i| {
            family.iter().all(|ext| {
                let hy = backend.hom(ext.mid(), i);
                let hx = backend.hom(ext.start(), i);
                let m = quot_map_matrix(&hy, &hx, |t| t.after(ext.f()));
                m.rank() == hx.dim()
            })
        })
        .collect()
}

/// Relative projectivity, dual: `P` passes iff `Hom(P, Y) → Hom(P, Z)` is
/// surjective for every conflation in the family.
pub fn relatively_projective_flags(
    backend: &Backend,
    family: &[Extension],
    candidates: &[Arc<Module>],
) -> Vec<bool> {
    candidates
        .iter()
        .map(|p| {
            family.iter().all(|ext| {
                let hy = backend.hom(p, ext.mid());
                let hz = backend.hom(p, ext.end());
                let m = quot_map_matrix(&hy, &hz, |t| ext.g().after(t));
                m.rank() == hz.dim()
            })
        })
        .collect()
}

/// Relative injectives and projectives of a triple, with the cross-check
/// that the relative injectives of D are exactly the absolute ones (those
/// of the full Z test) that happen to lie in D.
#[derive(Debug, Clone)]
pub struct RelativesReport {
    /// Flag per D-inventory entry: relatively injective.
    pub inj: Vec<bool>,
    /// Flag per D-inventory entry: relatively projective.
    pub proj: Vec<bool>,
    /// Flag per Z-inventory entry: injective relative to the same family
    /// (the D := Z reading).
    pub ambient_inj: Vec<bool>,
    /// Flag per Z-inventory entry: projective relative to the same family.
    pub ambient_proj: Vec<bool>,
    /// Cross-check: the D flags agree with (ambient flag) ∧ (lies in D).
    pub restriction_consistent: bool,
}

pub fn relatives(
    triple: &FrobeniusTriple,
    family: &[Extension],
    seed: u64,
) -> RelativesReport {
    let backend = triple.backend();
    let inj = relatively_injective_flags(backend, family, triple.d().inventory());
    let proj = relatively_projective_flags(backend, family, triple.d().inventory());
    let ambient_inj = relatively_injective_flags(backend, family, triple.z().inventory());
    let ambient_proj = relatively_projective_flags(backend, family, triple.z().inventory());
    let mut consistent = true;
    for (di, dm) in triple.d().inventory().iter().enumerate() {
        // Find the Z entry isomorphic to this D entry (exists by triple
        // validation) and compare flags.
        let zi = triple
            .z()
            .inventory()
            .iter()
            .position(|zm| {
                matches!(
                    decomp::module_iso(dm, zm, derive_seed(seed, 29)),
                    IsoCheck::Isomorphic(_)
                )
            })
            .expect("D lies in Z by construction");
        if inj[di] != ambient_inj[zi] || proj[di] != ambient_proj[zi] {
            consistent = false;
        }
    }
    RelativesReport {
        inj,
        proj,
        ambient_inj,
        ambient_proj,
        restriction_consistent: consistent,
    }
}

/// The direct-summand condition, evaluated in both readings on inventory
/// sums up to pairs.  The hypothesis quantifies over decompositions
/// `D ≅ Z1 ⊕ Z2` of a D object with both halves in Z; the intended reading
/// concludes membership in D, the literal reading membership in Z (which
/// restates the hypothesis).  Both verdicts are reported side by side.
#[derive(Debug, Clone)]
pub struct SummandReport {
    pub intended_holds: bool,
    pub literal_holds: bool,
    /// Number of (object, partition) pairs examined.
    pub checked: usize,
    /// A decomposition violating the intended reading, if any: the D
    /// object and the half that escapes D.
    pub intended_witness: Option<(Arc<Module>, Arc<Module>)>,
}

pub fn summand_condition(triple: &FrobeniusTriple, seed: u64) -> SummandReport {
    let backend = triple.backend();
    let d_inv = triple.d().inventory();
    // D objects to probe: every single entry and every unordered pair sum.
    let mut probes: Vec<Arc<Module>> = d_inv.to_vec();
    for i in 0..d_inv.len() {
        for j in i..d_inv.len() {
            probes.push(Arc::new(d_inv[i].direct_sum(&d_inv[j])));
        }
    }
    let mut checked = 0usize;
    let mut intended_holds = true;
    let literal_holds = true;
    let mut intended_witness = None;
    for probe in &probes {
        let dec = decomp::decompose(probe, derive_seed(seed, seed_tag("ds")), 64);
        let parts: Vec<Arc<Module>> = dec
            .summands
            .iter()
            .map(|s| Arc::clone(&s.module))
            .collect();
        let n = parts.len();
        // Each bitmask splits the indecomposable summands into Z1 and Z2.
        for mask in 0..(1u32 << n) {
            let field = backend.field();
            let adim = backend.algebra().dim();
            let (mut z1, mut z2) = (Vec::new(), Vec::new());
            for (idx, p) in parts.iter().enumerate() {
                if mask & (1 << idx) != 0 {
                    z1.push(Arc::clone(p));
                } else {
                    z2.push(Arc::clone(p));
                }
            }
            let m1 = Arc::new(Module::direct_sum_of(field, adim, &z1));
            let m2 = Arc::new(Module::direct_sum_of(field, adim, &z2));
            let in_z = |m: &Arc<Module>| {
                triple
                    .z()
                    .contains(backend, m, derive_seed(seed, mask as u64))
                    .is_inside()
            };
            if !(in_z(&m1) && in_z(&m2)) {
                continue;
            }
            checked += 1;
            // The literal reading concludes exactly what the filter above
            // already established, so it holds on every checked pair.
            let in_d = |m: &Arc<Module>| {
                triple
                    .d()
                    .contains(backend, m, derive_seed(seed, mask as u64 ^ 0xd))
                    .is_inside()
            };
            if !in_d(&m1) {
                intended_holds = false;
                intended_witness.get_or_insert((Arc::clone(probe), Arc::clone(&m1)));
            }
            if !in_d(&m2) {
                intended_holds = false;
                intended_witness.get_or_insert((Arc::clone(probe), Arc::clone(&m2)));
            }
        }
    }
    SummandReport {
        intended_holds,
        literal_holds,
        checked,
        intended_witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::mat::Matrix;

    fn setup() -> (Backend, Arc<Module>, Arc<Module>) {
        let a = Arc::new(Algebra::truncated_polynomial(2, 2).expect("valid"));
        let f = a.field();
        let k = Arc::new(Module::new(
            f,
            1,
            vec![Matrix::identity(f, 1), Matrix::zeros(f, 1, 1)],
        ));
        let r = Arc::new(a.regular_module());
        (Backend::abelian(a), k, r)
    }

    fn triple_all(b: &Backend, k: &Arc<Module>, r: &Arc<Module>) -> FrobeniusTriple {
        let z = SubcategorySpec::new(
            b,
            "Z",
            vec![Arc::clone(k), Arc::clone(r)],
            7,
        )
        .expect("valid inventory");
        let d = SubcategorySpec::new(b, "D", vec![Arc::clone(k), Arc::clone(r)], 7)
            .expect("valid inventory");
        FrobeniusTriple::new(b.clone(), z, d, 7).expect("D inside Z")
    }

    #[test]
    fn inventory_validation_rejects_decomposables_and_duplicates() {
        let (b, k, r) = setup();
        let sum = Arc::new(k.direct_sum(&r));
        assert!(matches!(
            SubcategorySpec::new(&b, "bad", vec![sum], 7),
            Err(TripleError::Decomposable { .. })
        ));
        assert!(matches!(
            SubcategorySpec::new(&b, "dup", vec![Arc::clone(&k), Arc::clone(&k)], 7),
            Err(TripleError::Duplicate { .. })
        ));
        let zero = Arc::new(Module::zero(b.field(), 2));
        assert!(matches!(
            SubcategorySpec::new(&b, "zero", vec![zero], 7),
            Err(TripleError::ZeroObject { .. })
        ));
    }

    #[test]
    fn membership_counts_multiplicities() {
        let (b, k, r) = setup();
        let spec = SubcategorySpec::new(&b, "Z", vec![Arc::clone(&k), Arc::clone(&r)], 7)
            .expect("valid");
        let x = Arc::new(k.direct_sum(&r).direct_sum(&k));
        match spec.contains(&b, &x, 7) {
            AddOutcome::Inside { mult } => assert_eq!(mult, vec![2, 1]),
            other => panic!("expected membership, got {other:?}"),
        }
        let only_r = SubcategorySpec::new(&b, "R", vec![Arc::clone(&r)], 7).expect("valid");
        match only_r.contains(&b, &k, 7) {
            AddOutcome::Outside { witness } => assert_eq!(witness.dim(), 1),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn simple_socle_inventory_is_not_extension_closed() {
        let (b, k, r) = setup();
        let z = SubcategorySpec::new(&b, "addK", vec![Arc::clone(&k)], 7).expect("valid");
        let d = SubcategorySpec::new(&b, "D", vec![Arc::clone(&k)], 7).expect("valid");
        let triple = FrobeniusTriple::new(b.clone(), z, d, 7).expect("valid");
        let report = is_extension_closed(&triple, 7).expect("family generates");
        assert!(!report.is_closed());
        // The witness middle is the regular module.
        let failure = &report.failures[0];
        assert_eq!(failure.middle.dim(), r.dim());
    }

    #[test]
    fn regular_inventory_is_extension_closed() {
        let (b, _k, r) = setup();
        let z = SubcategorySpec::new(&b, "addR", vec![Arc::clone(&r)], 7).expect("valid");
        let d = SubcategorySpec::new(&b, "D", vec![Arc::clone(&r)], 7).expect("valid");
        let triple = FrobeniusTriple::new(b.clone(), z, d, 7).expect("valid");
        let report = is_extension_closed(&triple, 7).expect("family generates");
        assert!(report.is_closed());
        assert!(!report.conflations.is_empty());
    }

    #[test]
    fn regular_module_is_the_relative_injective_of_the_full_triple() {
        let (b, k, r) = setup();
        let triple = triple_all(&b, &k, &r);
        let family = conflation_family(&triple, 7).expect("family generates");
        assert!(family.is_closed());
        let rel = relatives(&triple, &family.conflations, 7);
        // D inventory is [K, R]: K fails, R passes, on both sides.
        assert_eq!(rel.inj, vec![false, true]);
        assert_eq!(rel.proj, vec![false, true]);
        assert!(rel.restriction_consistent);
    }

    #[test]
    fn summand_condition_reports_both_readings() {
        let (b, k, r) = setup();
        let triple = triple_all(&b, &k, &r);
        let report = summand_condition(&triple, 7);
        assert!(report.intended_holds);
        assert!(report.literal_holds);
        assert!(report.checked > 0);
        assert!(report.intended_witness.is_none());
    }

    #[test]
    fn summand_condition_detects_escaping_halves() {
        let (b, k, r) = setup();
        // Z = everything, D = add(R ⊕ K)? Use D = {R} but probe R ⊕ R:
        // halves stay in D, so build the failing case with D missing K:
        // probe sums are D objects only, so take Z = {K, R}, D = {R}.
        // R decomposes only as R ⊕ 0, both halves in D: holds.  The
        // interesting failure needs a decomposable D entry, which inventory
        // validation forbids; so the intended reading holding is the
        // expected outcome here.
        let z = SubcategorySpec::new(&b, "Z", vec![Arc::clone(&k), Arc::clone(&r)], 7)
            .expect("valid");
        let d = SubcategorySpec::new(&b, "D", vec![Arc::clone(&r)], 7).expect("valid");
        let triple = FrobeniusTriple::new(b.clone(), z, d, 7).expect("valid");
        let report = summand_condition(&triple, 7);
        assert!(report.intended_holds);
    }
}
