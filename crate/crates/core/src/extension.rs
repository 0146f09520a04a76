//! The five-term extension calculus over a backend.
//!
//! An extension is a diagram `ΩC → A → B → C → ΣA` whose middle three maps
//! lie in the backend's right class, whose first three lie in the left
//! class, and whose outer legs are tied together by the comparison
//! bijection: `h = -psi(e)`.  On the abelian backend this reduces to short
//! exact sequences with zero outer legs; on the triangulated backend the
//! right class is the distinguished triangles.
//!
//! This module provides validated construction (from a monic-side or an
//! epic-side map, and split extensions on biproducts), the morphism test,
//! the octahedron operation on extensions together with its dual, the
//! hom-exactness consequences, and the two gluing checks.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::Module;
use crate::backend::{
    biproduct, quot_map_matrix, Backend, Biproduct, Mor, SearchOutcome,
};
use crate::hom;
use crate::mat::{self, Matrix};

/// Why an extension could not be built or validated.
#[derive(Debug, Error)]
pub enum ExtensionError {
    #[error("the middle three maps do not lie in the right class")]
    NotRightClass,
    #[error("the first three maps do not lie in the left class")]
    NotLeftClass,
    #[error("the shift leg is not minus psi of the loop leg")]
    SignMismatch,
    #[error("endpoint shapes do not chain into a five-term diagram")]
    Shape,
    #[error("not Σ-epic: a cokernel witness of dimension {witness_dim} remains")]
    NotSigmaEpic { witness_dim: usize },
    #[error("not Ω-monic: a kernel witness of dimension {witness_dim} remains")]
    NotOmegaMonic { witness_dim: usize },
    #[error("octahedron hypothesis violated: the factorization does not compose to f")]
    OctahedronHypothesis,
    #[error("octahedron identity {name} failed to validate")]
    OctahedronIdentity { name: &'static str },
    #[error("no completion found at stage {stage}")]
    NoCompletion { stage: &'static str },
    #[error("search budget exhausted at stage {stage}")]
    Inconclusive { stage: &'static str },
}

/// A validated five-term extension `ΩC → A → B → C → ΣA`.
#[derive(Debug, Clone)]
pub struct Extension {
    e: Mor,
    f: Mor,
    g: Mor,
    h: Mor,
}

impl Extension {
    /// Validates the five-term data against a backend and wraps it.
    pub fn validated(
        backend: &Backend,
        e: Mor,
        f: Mor,
        g: Mor,
        h: Mor,
    ) -> Result<Extension, ExtensionError> {
        if e.tgt() != f.src() || f.tgt() != g.src() || g.tgt() != h.src() {
            return Err(ExtensionError::Shape);
        }
        if e.src() != &backend.coshift_obj(g.tgt()) || h.tgt() != &backend.shift_obj(f.src()) {
            return Err(ExtensionError::Shape);
        }
        if !backend.mor_eq(&h, &backend.psi(g.tgt(), &e).neg()) {
            return Err(ExtensionError::SignMismatch);
        }
        match backend.in_right(&f, &g, &h) {
            SearchOutcome::Found(_) => {}
            SearchOutcome::Absent => return Err(ExtensionError::NotRightClass),
            SearchOutcome::Exhausted => {
                return Err(ExtensionError::Inconclusive { stage: "right class" })
            }
        }
        match backend.in_left(&e, &f, &g) {
            SearchOutcome::Found(_) => {}
            SearchOutcome::Absent => return Err(ExtensionError::NotLeftClass),
            SearchOutcome::Exhausted => {
                return Err(ExtensionError::Inconclusive { stage: "left class" })
            }
        }
        Ok(Extension { e, f, g, h })
    }

    pub fn e(&self) -> &Mor {
        &self.e
    }

    pub fn f(&self) -> &Mor {
        &self.f
    }

    pub fn g(&self) -> &Mor {
        &self.g
    }

    pub fn h(&self) -> &Mor {
        &self.h
    }

    /// Start object `A`.
    pub fn start(&self) -> &Arc<Module> {
        self.f.src()
    }

    /// Middle object `B`.
    pub fn mid(&self) -> &Arc<Module> {
        self.f.tgt()
    }

    /// End object `C`.
    pub fn end(&self) -> &Arc<Module> {
        self.g.tgt()
    }
}

/// Builds the extension completing an Ω-monic map `f` on the right.  The
/// error carries the dimension of the kernel witness when `f` fails the
/// monic side.
pub fn make_from_monic(backend: &Backend, f: &Mor) -> Result<Extension, ExtensionError> {
    if !backend.is_omega_monic(f) {
        let (ker, _incl) = hom::kernel(f.src(), f.tgt(), f.map());
        return Err(ExtensionError::NotOmegaMonic {
            witness_dim: ker.dim(),
        });
    }
    let (g, h) = backend.complete_right(f);
    let e = backend.psi_inv(f.src(), &h).neg();
    Extension::validated(backend, e, f.clone(), g, h)
}

/// Builds the extension completing a Σ-epic map `g` on the left.  The
/// returned extension keeps the input `g` unchanged.  The error carries the
/// dimension of the cokernel witness when `g` fails the epic side.
pub fn make_from_epic(backend: &Backend, g: &Mor) -> Result<Extension, ExtensionError> {
    if !backend.is_sigma_epic(g) {
        let (coker, _proj) = hom::cokernel(g.src(), g.tgt(), g.map());
        return Err(ExtensionError::NotSigmaEpic {
            witness_dim: coker.dim(),
        });
    }
    let (e, f) = backend.complete_left(g);
    let h = backend.psi(g.tgt(), &e).neg();
    Extension::validated(backend, e, f, g.clone(), h)
}

/// The split extension `ΩB → A → A ⊕ B → B → ΣA` with zero outer legs.
pub fn split_extension(backend: &Backend, a: &Arc<Module>, b: &Arc<Module>) -> Extension {
    let bp = biproduct(a, b);
    split_on(backend, &bp)
}

/// Split extension on an already-built biproduct.
pub fn split_on(backend: &Backend, bp: &Biproduct) -> Extension {
    let a = bp.inj_a.src();
    let b = bp.proj_b.tgt();
    let e = Mor::zero(&backend.coshift_obj(b), a);
    let h = Mor::zero(b, &backend.shift_obj(a));
    Extension::validated(backend, e, bp.inj_a.clone(), bp.proj_b.clone(), h)
        .expect("split extensions always validate")
}

/// Whether `(a, b, c)` is a morphism of extensions: all four squares (the
/// loop-leg square, the two middle squares, and the shift-leg square) must
/// commute up to backend equality.
pub fn is_morphism(
    backend: &Backend,
    src: &Extension,
    tgt: &Extension,
    a: &Mor,
    b: &Mor,
    c: &Mor,
) -> bool {
    let f_square = backend.mor_eq(&b.after(src.f()), &tgt.f().after(a));
    let g_square = backend.mor_eq(&c.after(src.g()), &tgt.g().after(b));
    let h_square = backend.mor_eq(
        &backend.shift_mor(a).after(src.h()),
        &tgt.h().after(c),
    );
    let e_square = backend.mor_eq(
        &a.after(src.e()),
        &tgt.e().after(&backend.coshift_mor(c)),
    );
    f_square && g_square && h_square && e_square
}

/// Output of the octahedron on extensions.
#[derive(Debug, Clone)]
pub struct Octahedron {
    /// `g2 : B' → C` with `g2 ∘ m = g ∘ m2` and `h ∘ g2 = n`.
    pub g2: Mor,
    /// `h2 : C → ΣA'` with `h2 ∘ g = n2` and `Σl ∘ h + Σl2 ∘ h2 = 0`.
    pub h2: Mor,
    /// The induced extension on `A' → B' → C` with maps `(m ∘ l2, g2, h2)`.
    pub out: Extension,
}

/// The octahedron operation on extensions.  Inputs: `ext_f` on `A → B → C`,
/// `ext_l` on `A → M → B'`, `ext_l2` on `A' → M → B`, with the hypothesis
/// that the composite `m2 ∘ l` equals `f`.  Produces `(g2, h2)` satisfying
/// the four octahedron identities and the induced extension on
/// `A' → B' → C`, every identity re-validated.
pub fn octahedron_ext(
    backend: &Backend,
    ext_f: &Extension,
    ext_l: &Extension,
    ext_l2: &Extension,
) -> Result<Octahedron, ExtensionError> {
    let (f, g, h) = (ext_f.f(), ext_f.g(), ext_f.h());
    let (l, m, n) = (ext_l.f(), ext_l.g(), ext_l.h());
    let (l2, m2, n2) = (ext_l2.f(), ext_l2.g(), ext_l2.h());
    if !backend.mor_eq(&m2.after(l), f) {
        return Err(ExtensionError::OctahedronHypothesis);
    }
    let (g2, h2) = match backend.octahedron(f, g, h, l, m, n, l2, m2, n2) {
        SearchOutcome::Found(pair) => pair,
        SearchOutcome::Absent => return Err(ExtensionError::NoCompletion { stage: "octahedron" }),
        SearchOutcome::Exhausted => {
            return Err(ExtensionError::Inconclusive { stage: "octahedron" })
        }
    };
    if !backend.mor_eq(&h2.after(g), n2) {
        return Err(ExtensionError::OctahedronIdentity { name: "h2 ∘ g = n2" });
    }
    if !backend.mor_eq(&h.after(&g2), n) {
        return Err(ExtensionError::OctahedronIdentity { name: "h ∘ g2 = n" });
    }
    if !backend.mor_eq(&g2.after(m), &g.after(m2)) {
        return Err(ExtensionError::OctahedronIdentity {
            name: "g2 ∘ m = g ∘ m2",
        });
    }
    let sl = backend.shift_mor(l);
    let sl2 = backend.shift_mor(l2);
    if !backend.is_null(&sl.after(h).add(&sl2.after(&h2))) {
        return Err(ExtensionError::OctahedronIdentity {
            name: "Σl ∘ h + Σl2 ∘ h2 = 0",
        });
    }
    let f_out = m.after(l2);
    let e_out = backend.psi_inv(l2.src(), &h2).neg();
    let out = Extension::validated(backend, e_out, f_out, g2.clone(), h2.clone())?;
    Ok(Octahedron { g2, h2, out })
}

/// Output of the dual octahedron on extensions.
#[derive(Debug, Clone)]
pub struct OctahedronDual {
    /// `fd : A1 → A2` with `f2 ∘ fd = f3 ∘ f1` and `fd ∘ e1 = e2`.
    pub fd: Mor,
    /// `ed : ΩC3 → A1` with `f1 ∘ ed = e3` and `e1 ∘ Ωg2 + ed ∘ Ωg3 = 0`.
    pub ed: Mor,
    /// The induced extension on `A1 → A2 → C3` with maps `(fd, g3 ∘ f2)`.
    pub out: Extension,
}

/// The dual octahedron.  Inputs: `d1` on `A1 → B1 → C`, `d2` on
/// `A2 → Mmid → C`, `d3` on `B1 → Mmid → C3`, with the hypothesis that the
/// composite `g2 ∘ f3` equals `g1`.  Produces `(fd, ed)` satisfying the
/// dual identities and the induced extension on `A1 → A2 → C3`.
pub fn octahedron_ext_dual(
    backend: &Backend,
    d1: &Extension,
    d2: &Extension,
    d3: &Extension,
) -> Result<OctahedronDual, ExtensionError> {
    let (e1, f1, g1) = (d1.e(), d1.f(), d1.g());
    let (e2, f2, g2) = (d2.e(), d2.f(), d2.g());
    let (e3, f3, g3) = (d3.e(), d3.f(), d3.g());
    if !backend.mor_eq(&g2.after(f3), g1) {
        return Err(ExtensionError::OctahedronHypothesis);
    }
    let (fd, ed) = match backend.octahedron_dual(e1, f1, g1, e2, f2, g2, e3, f3, g3) {
        SearchOutcome::Found(pair) => pair,
        SearchOutcome::Absent => {
            return Err(ExtensionError::NoCompletion {
                stage: "dual octahedron",
            })
        }
        SearchOutcome::Exhausted => {
            return Err(ExtensionError::Inconclusive {
                stage: "dual octahedron",
            })
        }
    };
    if !backend.mor_eq(&f1.after(&ed), e3) {
        return Err(ExtensionError::OctahedronIdentity { name: "f1 ∘ ed = e3" });
    }
    if !backend.mor_eq(&fd.after(e1), e2) {
        return Err(ExtensionError::OctahedronIdentity { name: "fd ∘ e1 = e2" });
    }
    if !backend.mor_eq(&f2.after(&fd), &f3.after(f1)) {
        return Err(ExtensionError::OctahedronIdentity {
            name: "f2 ∘ fd = f3 ∘ f1",
        });
    }
    let og2 = backend.coshift_mor(g2);
    let og3 = backend.coshift_mor(g3);
    if !backend.is_null(&e1.after(&og2).add(&ed.after(&og3))) {
        return Err(ExtensionError::OctahedronIdentity {
            name: "e1 ∘ Ωg2 + ed ∘ Ωg3 = 0",
        });
    }
    let g_out = g3.after(f2);
    let h_out = backend.psi(g3.tgt(), &ed).neg();
    let out = Extension::validated(backend, ed.clone(), fd.clone(), g_out, h_out)?;
    Ok(OctahedronDual { fd, ed, out })
}

/// Completes a composable pair `f : X → Y`, `g : Y → Z` with `g ∘ f = 0` to
/// a validated extension with exactly these two middle maps.  The shift leg
/// is transported from the backend's own completion of `f` through a
/// comparison isomorphism; when no isomorphism exists the pair does not
/// underlie an extension.
pub fn complete_pair(backend: &Backend, f: &Mor, g: &Mor) -> Result<Extension, ExtensionError> {
    if !backend.is_null(&g.after(f)) {
        return Err(ExtensionError::NoCompletion {
            stage: "pair does not compose to zero",
        });
    }
    let (g0, h0) = backend.complete_right(f);
    let space = backend.hom(g0.tgt(), g.tgt());
    let rows = quot_map_matrix(&space, &backend.hom(g0.src(), g.tgt()), |c| c.after(&g0));
    let rhs = backend.hom(g0.src(), g.tgt()).coords(g);
    let sol = match mat::solve_affine(&rows, &rhs) {
        Ok(Some(s)) => s,
        _ => {
            return Err(ExtensionError::NoCompletion {
                stage: "pair comparison",
            })
        }
    };
    let c = match backend.iso_in_affine(&space, &sol, "pair") {
        SearchOutcome::Found(c) => c,
        SearchOutcome::Absent => {
            return Err(ExtensionError::NoCompletion {
                stage: "pair comparison",
            })
        }
        SearchOutcome::Exhausted => {
            return Err(ExtensionError::Inconclusive {
                stage: "pair comparison",
            })
        }
    };
    let c_inv = backend.invert(&c).expect("comparison is an isomorphism");
    let h = h0.after(&c_inv);
    let e = backend.psi_inv(f.src(), &h).neg();
    Extension::validated(backend, e, f.clone(), g.clone(), h)
}

/// Exactness of `im(m1) = ker(m2)` for two composable quotient-coordinate
/// matrices.
fn exact_at(m1: &Matrix, m2: &Matrix) -> bool {
    if !m2.mul(m1).is_zero() {
        return false;
    }
    let im = m1.column_space_basis();
    let ker = m2.rref().kernel;
    mat::columns_contained(&im, &ker) && mat::columns_contained(&ker, &im)
}

/// Contravariant hom-exactness against a right-class object `(f, g, h)`:
/// the sequence `Hom(ΣA, E) → Hom(C, E) → Hom(B, E) → Hom(A, E)` is exact
/// at both middle spots, for the probe object `probe`.
pub fn right_hom_exact(
    backend: &Backend,
    f: &Mor,
    g: &Mor,
    h: &Mor,
    probe: &Arc<Module>,
) -> bool {
    let h_sa = backend.hom(h.tgt(), probe);
    let h_c = backend.hom(g.tgt(), probe);
    let h_b = backend.hom(f.tgt(), probe);
    let h_a = backend.hom(f.src(), probe);
    let m1 = quot_map_matrix(&h_sa, &h_c, |x| x.after(h));
    let m2 = quot_map_matrix(&h_c, &h_b, |x| x.after(g));
    let m3 = quot_map_matrix(&h_b, &h_a, |x| x.after(f));
    exact_at(&m1, &m2) && exact_at(&m2, &m3)
}

/// Covariant hom-exactness against a left-class object `(e, f, g)`: the
/// sequence `Hom(E, ΩC) → Hom(E, A) → Hom(E, B) → Hom(E, C)` is exact at
/// both middle spots.
pub fn left_hom_exact(
    backend: &Backend,
    e: &Mor,
    f: &Mor,
    g: &Mor,
    probe: &Arc<Module>,
) -> bool {
    let h_oc = backend.hom(probe, e.src());
    let h_a = backend.hom(probe, f.src());
    let h_b = backend.hom(probe, f.tgt());
    let h_c = backend.hom(probe, g.tgt());
    let m1 = quot_map_matrix(&h_oc, &h_a, |x| e.after(x));
    let m2 = quot_map_matrix(&h_a, &h_b, |x| f.after(x));
    let m3 = quot_map_matrix(&h_b, &h_c, |x| g.after(x));
    exact_at(&m1, &m2) && exact_at(&m2, &m3)
}

/// First gluing check: `g` Σ-epic, `(e, f, g)` in the left class and
/// `(f, g2, h2)` in the right class over the same `f`.  Searches for an
/// isomorphism `c : C' → C` with `c ∘ g2 = g` and `-psi(e) ∘ c = h2`.
pub fn gluing_right(
    backend: &Backend,
    e: &Mor,
    f: &Mor,
    g: &Mor,
    g2: &Mor,
    h2: &Mor,
) -> SearchOutcome<Mor> {
    assert_eq!(g.src(), f.tgt(), "gluing_right: g must follow f");
    assert_eq!(g2.src(), f.tgt(), "gluing_right: g2 must follow f");
    let space = backend.hom(g2.tgt(), g.tgt());
    let rows_a = quot_map_matrix(&space, &backend.hom(g2.src(), g.tgt()), |c| c.after(g2));
    let rhs_a = backend.hom(g2.src(), g.tgt()).coords(g);
    let target = backend.psi(g.tgt(), e).neg();
    let rows_b = quot_map_matrix(&space, &backend.hom(g2.tgt(), target.tgt()), |c| {
        target.after(c)
    });
    let rhs_b = backend.hom(g2.tgt(), target.tgt()).coords(h2);
    let sol = match mat::solve_affine(&rows_a.vstack(&rows_b), &rhs_a.vstack(&rhs_b)) {
        Ok(Some(s)) => s,
        _ => return SearchOutcome::Absent,
    };
    backend.iso_in_affine(&space, &sol, "glue-right")
}

/// Second gluing check: `f` Ω-monic, `(f, g, h)` in the right class and
/// `(e2, f2, g)` in the left class over the same `g`.  Searches for an
/// isomorphism `a : A → A'` with `f2 ∘ a = f` and `-a ∘ psi_inv(h) = e2`.
pub fn gluing_left(
    backend: &Backend,
    f: &Mor,
    g: &Mor,
    h: &Mor,
    e2: &Mor,
    f2: &Mor,
) -> SearchOutcome<Mor> {
    assert_eq!(g.src(), f.tgt(), "gluing_left: g must follow f");
    assert_eq!(f2.tgt(), g.src(), "gluing_left: f2 must land in g's source");
    let space = backend.hom(f.src(), f2.src());
    let rows_a = quot_map_matrix(&space, &backend.hom(f.src(), f2.tgt()), |a| f2.after(a));
    let rhs_a = backend.hom(f.src(), f2.tgt()).coords(f);
    let target = backend.psi_inv(f.src(), h).neg();
    let rows_b = quot_map_matrix(&space, &backend.hom(target.src(), f2.src()), |a| {
        a.after(&target)
    });
    let rhs_b = backend.hom(target.src(), f2.src()).coords(e2);
    let sol = match mat::solve_affine(&rows_a.vstack(&rows_b), &rhs_a.vstack(&rhs_b)) {
        Ok(Some(s)) => s,
        _ => return SearchOutcome::Absent,
    };
    backend.iso_in_affine(&space, &sol, "glue-left")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    fn setup() -> (Backend, Arc<Module>, Arc<Module>, Mor) {
        let a = Arc::new(Algebra::truncated_polynomial(2, 2).expect("valid"));
        let f = a.field();
        let k = Arc::new(Module::new(
            f,
            1,
            vec![Matrix::identity(f, 1), Matrix::zeros(f, 1, 1)],
        ));
        let r = Arc::new(a.regular_module());
        let incl = Mor::new(
            Arc::clone(&k),
            Arc::clone(&r),
            Matrix::from_rows(f, 2, 1, &[0, 1]),
        );
        (Backend::abelian(a), k, r, incl)
    }

    #[test]
    fn monic_side_completion_is_a_short_exact_sequence() {
        let (b, k, _r, incl) = setup();
        let ext = make_from_monic(&b, &incl).expect("socle inclusion extends");
        assert!(ext.e().is_zero_map());
        assert!(ext.h().is_zero_map());
        assert_eq!(ext.end().dim(), 1);
        // The zero map K -> R is not a monomorphism; the witness is the
        // full kernel.
        let zero = Mor::zero(&k, ext.mid());
        match make_from_monic(&b, &zero) {
            Err(ExtensionError::NotOmegaMonic { witness_dim }) => assert_eq!(witness_dim, 1),
            other => panic!("expected kernel witness, got {other:?}"),
        }
    }

    #[test]
    fn epic_side_completion_keeps_the_input_map() {
        let (b, k, r, incl) = setup();
        let ext0 = make_from_monic(&b, &incl).expect("valid");
        let proj = ext0.g().clone();
        let ext = make_from_epic(&b, &proj).expect("projection extends");
        assert_eq!(ext.g().map(), proj.map());
        assert_eq!(ext.start().dim(), 1);
        // A non-surjection carries a cokernel witness.
        let zero = Mor::zero(&r, &k);
        match make_from_epic(&b, &zero) {
            Err(ExtensionError::NotSigmaEpic { witness_dim }) => assert_eq!(witness_dim, 1),
            other => panic!("expected cokernel witness, got {other:?}"),
        }
    }

    #[test]
    fn split_extension_validates_with_zero_legs() {
        let (b, k, r, _incl) = setup();
        let ext = split_extension(&b, &k, &r);
        assert_eq!(ext.mid().dim(), 3);
        assert!(ext.e().is_zero_map());
        assert!(ext.h().is_zero_map());
    }

    #[test]
    fn morphism_test_accepts_identity_and_rejects_broken_squares() {
        let (b, _k, _r, incl) = setup();
        let ext = make_from_monic(&b, &incl).expect("valid");
        let ida = Mor::identity(ext.start());
        let idb = Mor::identity(ext.mid());
        let idc = Mor::identity(ext.end());
        assert!(is_morphism(&b, &ext, &ext, &ida, &idb, &idc));
        let broken = Mor::zero(ext.end(), ext.end());
        assert!(!is_morphism(&b, &ext, &ext, &ida, &idb, &broken));
    }

    #[test]
    fn octahedron_on_a_factored_inclusion() {
        let (b, _k, r, incl) = setup();
        let ext_f = make_from_monic(&b, &incl).expect("valid");
        let ext_l = make_from_monic(&b, &incl).expect("valid");
        let ext_l2 = make_from_epic(&b, &Mor::identity(&r)).expect("valid");
        let oct = octahedron_ext(&b, &ext_f, &ext_l, &ext_l2).expect("octahedron fills");
        assert!(b.is_iso(&oct.g2));
        assert!(oct.h2.is_zero_map());
        assert!(oct.out.start().is_zero_dim());
        assert!(oct.out.f().is_zero_map());
    }

    #[test]
    fn hom_exactness_against_both_inventory_objects() {
        let (b, k, r, incl) = setup();
        let ext = make_from_monic(&b, &incl).expect("valid");
        for probe in [&k, &r] {
            assert!(right_hom_exact(&b, ext.f(), ext.g(), ext.h(), probe));
            assert!(left_hom_exact(&b, ext.e(), ext.f(), ext.g(), probe));
        }
        // Corrupting the middle map breaks exactness against K.
        let zero_g = Mor::zero(ext.mid(), ext.end());
        assert!(!right_hom_exact(&b, ext.f(), &zero_g, ext.h(), &k));
    }

    #[test]
    fn complete_pair_recovers_the_extension_on_given_maps() {
        let (b, _k, _r, incl) = setup();
        let ext0 = make_from_monic(&b, &incl).expect("valid");
        let ext = complete_pair(&b, ext0.f(), ext0.g()).expect("pair completes");
        assert_eq!(ext.f().map(), ext0.f().map());
        assert_eq!(ext.g().map(), ext0.g().map());
        // A non-composing pair is rejected.
        let bad = complete_pair(&b, ext0.f(), &Mor::identity(ext0.mid()));
        assert!(bad.is_err());
    }

    #[test]
    fn gluing_checks_find_comparison_isomorphisms() {
        let (b, _k, _r, incl) = setup();
        let ext = make_from_monic(&b, &incl).expect("valid");
        let (g2, h2) = b.complete_right(ext.f());
        let c = gluing_right(&b, ext.e(), ext.f(), ext.g(), &g2, &h2)
            .found()
            .expect("first gluing check fills");
        assert!(b.is_iso(&c));
        let (e2, f2) = b.complete_left(ext.g());
        let a = gluing_left(&b, ext.f(), ext.g(), ext.h(), &e2, &f2)
            .found()
            .expect("second gluing check fills");
        assert!(b.is_iso(&a));
    }
}
