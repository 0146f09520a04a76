//! Ambient-category backends for the triangulation machinery.
//!
//! Every construction in this crate runs over a [`Backend`], which answers
//! hom-space questions and provides the small set of categorical operations
//! the axioms talk about: completion of a morphism to a right or left
//! candidate triangle, fill-in of a commuting square, the octahedron
//! operation and its dual, the comparison bijection `psi` between shifted
//! hom-spaces, and the two factorization conditions used by the gluing
//! checks.
//!
//! Two backends exist.  The abelian backend is a module category with both
//! shifts identically zero; its right class is "cokernel sequences" and its
//! left class is "kernel sequences".  The triangulated backend wraps a
//! completed stable-category construction (see [`crate::stable`]) and
//! answers the same questions through genuine shift functors and
//! distinguished-triangle membership.  Code written against [`Backend`] runs
//! unchanged over either.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::algebra::{Algebra, Module};
use crate::field::Fp;
use crate::hom;
use crate::mat::{self, Matrix};
use crate::stable::StableData;

/// Outcome of a bounded search: a witness, a certified absence (the whole
/// candidate space was scanned), or an exhausted budget (sampling found
/// nothing, but the space was too large to scan).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    Absent,
    Exhausted,
}

impl<T> SearchOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Search budgets shared by every enumeration in the crate.  `enumeration`
/// caps the size of a candidate space that will be scanned exhaustively;
/// larger spaces fall back to `samples` seeded draws plus every basis
/// element, and report exhaustion instead of absence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub enumeration: u64,
    pub samples: u32,
    /// Cap on the total dimension of candidate targets when searching for
    /// an injective or projective presentation.
    pub presentation_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration: 1 << 16,
            samples: 256,
            presentation_dim: 48,
        }
    }
}

/// Deterministic seed derivation: one base seed plus a context tag yields
/// independent streams for unrelated searches (splitmix64 avalanche).
pub fn derive_seed(base: u64, tag: u64) -> u64 {
    let mut z = base ^ tag.wrapping_mul(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Tag built from a short ASCII label, for readable call sites.
pub fn seed_tag(label: &str) -> u64 {
    label
        .bytes()
        .fold(0xcbf29ce484222325u64, |h, b| {
            (h ^ b as u64).wrapping_mul(0x100000001b3)
        })
}

/// A morphism between two modules, stored as a target-dim by source-dim
/// matrix acting on column vectors.  Equality derived here is entry-exact;
/// backend-level equality (which may quotient by a null subspace) lives on
/// [`Backend::mor_eq`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mor {
    src: Arc<Module>,
    tgt: Arc<Module>,
    map: Matrix,
}

impl Mor {
    pub fn new(src: Arc<Module>, tgt: Arc<Module>, map: Matrix) -> Mor {
        assert_eq!(map.rows(), tgt.dim(), "morphism rows must match target");
        assert_eq!(map.cols(), src.dim(), "morphism cols must match source");
        debug_assert!(
            hom::is_module_map(&src, &tgt, &map),
            "matrix must intertwine the module actions"
        );
        Mor { src, tgt, map }
    }

    pub fn identity(m: &Arc<Module>) -> Mor {
        Mor {
            src: Arc::clone(m),
            tgt: Arc::clone(m),
            map: Matrix::identity(m.field(), m.dim()),
        }
    }

    pub fn zero(src: &Arc<Module>, tgt: &Arc<Module>) -> Mor {
        Mor {
            src: Arc::clone(src),
            tgt: Arc::clone(tgt),
            map: Matrix::zeros(src.field(), tgt.dim(), src.dim()),
        }
    }

    pub fn src(&self) -> &Arc<Module> {
        &self.src
    }

    pub fn tgt(&self) -> &Arc<Module> {
        &self.tgt
    }

    pub fn map(&self) -> &Matrix {
        &self.map
    }

    /// `self` after `first`: the composite `self ∘ first`.
    pub fn after(&self, first: &Mor) -> Mor {
        assert_eq!(
            self.src.dim(),
            first.tgt.dim(),
            "composition endpoint mismatch"
        );
        Mor {
            src: Arc::clone(&first.src),
            tgt: Arc::clone(&self.tgt),
            map: self.map.mul(&first.map),
        }
    }

    pub fn add(&self, other: &Mor) -> Mor {
        assert_eq!(self.src, other.src, "sum endpoint mismatch");
        assert_eq!(self.tgt, other.tgt, "sum endpoint mismatch");
        Mor {
            src: Arc::clone(&self.src),
            tgt: Arc::clone(&self.tgt),
            map: self.map.add(&other.map),
        }
    }

    pub fn sub(&self, other: &Mor) -> Mor {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mor {
        Mor {
            src: Arc::clone(&self.src),
            tgt: Arc::clone(&self.tgt),
            map: self.map.neg(),
        }
    }

    pub fn scale(&self, c: u32) -> Mor {
        Mor {
            src: Arc::clone(&self.src),
            tgt: Arc::clone(&self.tgt),
            map: self.map.scale(c),
        }
    }

    pub fn is_zero_map(&self) -> bool {
        self.map.is_zero()
    }

    /// Row-major flattening of the underlying matrix, the coordinate
    /// convention used by [`HomSpace`].
    pub fn flat(&self) -> Vec<u32> {
        self.map.entries().to_vec()
    }
}

impl fmt::Display for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}x{} map {}->{} dim]",
            self.map.rows(),
            self.map.cols(),
            self.src.dim(),
            self.tgt.dim()
        )
    }
}

/// A biproduct `a ⊕ b` with its injections and projections.
#[derive(Debug, Clone)]
pub struct Biproduct {
    pub sum: Arc<Module>,
    pub inj_a: Mor,
    pub inj_b: Mor,
    pub proj_a: Mor,
    pub proj_b: Mor,
}

/// Builds `a ⊕ b` with the standard block injections and projections.
pub fn biproduct(a: &Arc<Module>, b: &Arc<Module>) -> Biproduct {
    let f = a.field();
    let sum = Arc::new(a.direct_sum(b));
    let ia = Matrix::identity(f, a.dim()).vstack(&Matrix::zeros(f, b.dim(), a.dim()));
    let ib = Matrix::zeros(f, a.dim(), b.dim()).vstack(&Matrix::identity(f, b.dim()));
    let pa = Matrix::identity(f, a.dim()).hstack(&Matrix::zeros(f, a.dim(), b.dim()));
    let pb = Matrix::zeros(f, b.dim(), a.dim()).hstack(&Matrix::identity(f, b.dim()));
    Biproduct {
        inj_a: Mor::new(Arc::clone(a), Arc::clone(&sum), ia),
        inj_b: Mor::new(Arc::clone(b), Arc::clone(&sum), ib),
        proj_a: Mor::new(Arc::clone(&sum), Arc::clone(a), pa),
        proj_b: Mor::new(Arc::clone(&sum), Arc::clone(b), pb),
        sum,
    }
}

/// The map `A ⊕ B → C` with blocks `f : A → C` and `g : B → C`.
pub fn from_pair(sum: &Biproduct, f: &Mor, g: &Mor) -> Mor {
    assert_eq!(f.tgt(), g.tgt(), "pair target mismatch");
    Mor::new(
        Arc::clone(&sum.sum),
        Arc::clone(f.tgt()),
        f.map().hstack(g.map()),
    )
}

/// The map `A → B ⊕ C` with blocks `f : A → B` and `g : A → C`.
pub fn into_pair(sum: &Biproduct, f: &Mor, g: &Mor) -> Mor {
    assert_eq!(f.src(), g.src(), "pair source mismatch");
    Mor::new(
        Arc::clone(f.src()),
        Arc::clone(&sum.sum),
        f.map().vstack(g.map()),
    )
}

/// A hom-space presented by a full basis together with a distinguished null
/// subspace, with coordinates on the quotient.  The abelian backend uses an
/// empty null subspace (so the quotient is the hom-space itself); the
/// triangulated backend passes the subspace of morphisms factoring through
/// relative injectives.
#[derive(Debug, Clone)]
pub struct HomSpace {
    src: Arc<Module>,
    tgt: Arc<Module>,
    field: Fp,
    full: Vec<Matrix>,
    null: Vec<Matrix>,
    /// Indices into `full` whose classes form a basis of the quotient.
    picks: Vec<usize>,
    /// Columns: flattened null basis, then flattened picked representatives.
    /// Full column rank; coordinates are read off the tail of the unique
    /// solution.
    frame: Matrix,
}

impl HomSpace {
    /// Builds the quotient presentation.  `null_raw` may be redundant or
    /// dependent; it is reduced first.  Every null element must lie in the
    /// span of `full`.
    pub fn build(
        src: Arc<Module>,
        tgt: Arc<Module>,
        full: Vec<Matrix>,
        null_raw: &[Matrix],
    ) -> HomSpace {
        let field = src.field();
        let flat_len = src.dim() * tgt.dim();
        let flatten = |m: &Matrix| m.entries().to_vec();
        let mut null_cols = Matrix::zeros(field, flat_len, 0);
        for n in null_raw {
            let v = Matrix::from_cols(field, flat_len, &[flatten(n)]);
            if !mat::columns_contained(&null_cols, &v) {
                null_cols = null_cols.hstack(&v);
            }
        }
        let null: Vec<Matrix> = (0..null_cols.cols())
            .map(|j| unflatten(field, tgt.dim(), src.dim(), &null_cols.col(j)))
            .collect();
        let mut aug = null_cols.clone();
        for m in &full {
            aug = aug.hstack(&Matrix::from_cols(field, flat_len, &[flatten(m)]));
        }
        let r = aug.rref();
        let picks: Vec<usize> = r
            .pivots
            .iter()
            .filter(|&&c| c >= null.len())
            .map(|&c| c - null.len())
            .collect();
        let mut frame = null_cols;
        for &i in &picks {
            frame = frame.hstack(&Matrix::from_cols(field, flat_len, &[flatten(&full[i])]));
        }
        HomSpace {
            src,
            tgt,
            field,
            full,
            null,
            picks,
            frame,
        }
    }

    pub fn src(&self) -> &Arc<Module> {
        &self.src
    }

    pub fn tgt(&self) -> &Arc<Module> {
        &self.tgt
    }

    /// Dimension of the ambient hom-space.
    pub fn full_dim(&self) -> usize {
        self.full.len()
    }

    /// Dimension of the quotient by the null subspace.
    pub fn dim(&self) -> usize {
        self.picks.len()
    }

    pub fn null_dim(&self) -> usize {
        self.null.len()
    }

    pub fn full_basis(&self) -> impl Iterator<Item = Mor> + '_ {
        self.full.iter().map(move |m| {
            Mor::new(Arc::clone(&self.src), Arc::clone(&self.tgt), m.clone())
        })
    }

    /// The `i`-th quotient basis class, as its picked representative.
    pub fn basis_mor(&self, i: usize) -> Mor {
        Mor::new(
            Arc::clone(&self.src),
            Arc::clone(&self.tgt),
            self.full[self.picks[i]].clone(),
        )
    }

    /// Quotient coordinates of a morphism, as a `dim x 1` column.  Panics if
    /// the morphism does not lie in the span of the declared basis (which
    /// would mean it is not a morphism of this hom-space at all).
    pub fn coords(&self, m: &Mor) -> Matrix {
        assert_eq!(&self.src, m.src(), "coords: source mismatch");
        assert_eq!(&self.tgt, m.tgt(), "coords: target mismatch");
        let v = Matrix::from_cols(self.field, self.frame.rows(), &[m.flat()]);
        if self.frame.cols() == 0 {
            assert!(v.is_zero(), "morphism outside the declared hom-space");
            return Matrix::zeros(self.field, 0, 1);
        }
        let sol = mat::solve_affine(&self.frame, &v)
            .expect("frame and vector share field and height")
            .expect("morphism outside the declared hom-space");
        sol.particular.row_block(self.null.len(), self.picks.len())
    }

    /// The picked representative with the given quotient coordinates.
    pub fn rep_from_coords(&self, c: &Matrix) -> Mor {
        assert_eq!(c.rows(), self.dim(), "coordinate length mismatch");
        let mut acc = Matrix::zeros(self.field, self.tgt.dim(), self.src.dim());
        for (i, &pick) in self.picks.iter().enumerate() {
            acc = acc.add(&self.full[pick].scale(c.at(i, 0)));
        }
        Mor::new(Arc::clone(&self.src), Arc::clone(&self.tgt), acc)
    }

    pub fn is_null(&self, m: &Mor) -> bool {
        self.coords(m).is_zero()
    }

    pub fn eq(&self, a: &Mor, b: &Mor) -> bool {
        self.is_null(&a.sub(b))
    }

    pub fn zero(&self) -> Mor {
        Mor::zero(&self.src, &self.tgt)
    }

    /// Number of quotient classes, or `None` on overflow past `u64`.
    pub fn class_count(&self) -> Option<u64> {
        (self.field.p() as u64).checked_pow(self.dim() as u32)
    }

    /// All quotient classes by picked representative, in lexicographic
    /// coordinate order.  Callers gate on [`Self::class_count`].
    pub fn iter_classes(&self) -> impl Iterator<Item = Mor> + '_ {
        coeff_vectors(self.field.p(), self.dim())
            .map(move |c| self.rep_from_coords(&Matrix::from_cols(self.field, c.len(), &[c])))
    }
}

fn unflatten(field: Fp, rows: usize, cols: usize, flat: &[u32]) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, flat[r * cols + c]);
        }
    }
    m
}

/// All coefficient vectors of the given length over `F_p`, lexicographically
/// with the last coordinate fastest.
pub fn coeff_vectors(p: u32, len: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).checked_pow(len as u32).unwrap_or(u64::MAX);
    (0..total).map(move |mut n| {
        let mut v = vec![0u32; len];
        for slot in v.iter_mut().rev() {
            *slot = (n % p as u64) as u32;
            n /= p as u64;
        }
        v
    })
}

/// Matrix of a linear map between two hom-space quotients, columns indexed
/// by the source quotient basis.  `l` must send null classes to null
/// classes; the matrix is computed on representatives.
pub fn quot_map_matrix(from: &HomSpace, to: &HomSpace, l: impl Fn(&Mor) -> Mor) -> Matrix {
    let field = from.field;
    let mut cols = Matrix::zeros(field, to.dim(), 0);
    for i in 0..from.dim() {
        cols = cols.hstack(&to.coords(&l(&from.basis_mor(i))));
    }
    cols
}

/// The two ambient categories the machinery runs over.
#[derive(Clone)]
enum BackendKind {
    Abelian(Arc<Algebra>),
    Stable(Arc<StableData>),
}

/// A cache keyed by the structure keys of a source and target module pair.
pub(crate) type PairCache<T> = RwLock<BTreeMap<(Vec<u32>, Vec<u32>), Arc<T>>>;

/// An ambient category: hom-spaces with a null quotient, shift data, right
/// and left candidate-triangle classes, completions, fill-ins, octahedra,
/// and the comparison bijection `psi`.
#[derive(Clone)]
pub struct Backend {
    kind: BackendKind,
    budget: Budget,
    seed: u64,
    homs: Arc<PairCache<HomSpace>>,
    zero: Arc<Module>,
}

impl fmt::Debug for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.kind {
            BackendKind::Abelian(_) => "abelian",
            BackendKind::Stable(_) => "stable",
        };
        write!(f, "Backend({kind}, p={})", self.field().p())
    }
}

impl Backend {
    /// The module category of `algebra`, with both shifts zero.
    pub fn abelian(algebra: Arc<Algebra>) -> Backend {
        let zero = Arc::new(Module::zero(algebra.field(), algebra.dim()));
        Backend {
            kind: BackendKind::Abelian(algebra),
            budget: Budget::default(),
            seed: 0,
            homs: Arc::new(RwLock::new(BTreeMap::new())),
            zero,
        }
    }

    /// The triangulated backend wrapping a completed stable-category
    /// construction.
    pub fn stable(data: Arc<StableData>) -> Backend {
        let zero = Arc::new(Module::zero(data.field(), data.algebra_dim()));
        Backend {
            kind: BackendKind::Stable(data),
            budget: Budget::default(),
            seed: 0,
            homs: Arc::new(RwLock::new(BTreeMap::new())),
            zero,
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Backend {
        self.budget = budget;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Backend {
        self.seed = seed;
        self
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self.kind, BackendKind::Abelian(_))
    }

    pub fn field(&self) -> Fp {
        match &self.kind {
            BackendKind::Abelian(a) => a.field(),
            BackendKind::Stable(d) => d.field(),
        }
    }

    /// The underlying algebra of the module category this backend presents
    /// objects in (for the triangulated backend, the base algebra).
    pub fn algebra(&self) -> Arc<Algebra> {
        match &self.kind {
            BackendKind::Abelian(a) => Arc::clone(a),
            BackendKind::Stable(d) => d.algebra(),
        }
    }

    pub fn stable_data(&self) -> Option<&Arc<StableData>> {
        match &self.kind {
            BackendKind::Stable(d) => Some(d),
            BackendKind::Abelian(_) => None,
        }
    }

    pub fn zero_obj(&self) -> Arc<Module> {
        Arc::clone(&self.zero)
    }

    /// Whether an object is a zero object of the backend: zero-dimensional
    /// in the abelian case, null identity in the triangulated case.
    pub fn is_zero_obj(&self, m: &Arc<Module>) -> bool {
        match &self.kind {
            BackendKind::Abelian(_) => m.is_zero_dim(),
            BackendKind::Stable(_) => {
                m.is_zero_dim() || self.hom(m, m).is_null(&Mor::identity(m))
            }
        }
    }

    /// The hom-space from `a` to `b` with this backend's null quotient,
    /// cached per endpoint pair.
    pub fn hom(&self, a: &Arc<Module>, b: &Arc<Module>) -> Arc<HomSpace> {
        let key = (a.key(), b.key());
        if let Some(h) = self.homs.read().expect("hom cache lock").get(&key) {
            return Arc::clone(h);
        }
        let full = hom::hom_space(a, b);
        let null = match &self.kind {
            BackendKind::Abelian(_) => Vec::new(),
            BackendKind::Stable(d) => d.null_basis(a, b),
        };
        let built = Arc::new(HomSpace::build(
            Arc::clone(a),
            Arc::clone(b),
            full,
            &null,
        ));
        self.homs
            .write()
            .expect("hom cache lock")
            .insert(key, Arc::clone(&built));
        built
    }

    pub fn mor_eq(&self, a: &Mor, b: &Mor) -> bool {
        self.hom(a.src(), a.tgt()).eq(a, b)
    }

    pub fn is_null(&self, a: &Mor) -> bool {
        self.hom(a.src(), a.tgt()).is_null(a)
    }

    /// Two-sided inverse up to the backend's equality, if one exists.
    pub fn invert(&self, c: &Mor) -> Option<Mor> {
        let bwd = self.hom(c.tgt(), c.src());
        let id_t = Mor::identity(c.tgt());
        let id_s = Mor::identity(c.src());
        // d such that c ∘ d = id on the target.
        let post = quot_map_matrix(&bwd, &self.hom(c.tgt(), c.tgt()), |d| c.after(d));
        let rhs = self.hom(c.tgt(), c.tgt()).coords(&id_t);
        let right = mat::solve_affine(&post, &rhs).expect("shape ok")?;
        // d such that d ∘ c = id on the source.
        let pre = quot_map_matrix(&bwd, &self.hom(c.src(), c.src()), |d| d.after(c));
        let rhs2 = self.hom(c.src(), c.src()).coords(&id_s);
        mat::solve_affine(&pre, &rhs2).expect("shape ok")?;
        // Left and right inverses agree whenever both exist, so returning
        // the right inverse is canonical.
        Some(bwd.rep_from_coords(&right.particular))
    }

    pub fn is_iso(&self, c: &Mor) -> bool {
        self.invert(c).is_some()
    }

    /// A factorisation `t ∘ a = target` through the left leg `a : A → B`,
    /// up to the backend's equality, if one exists.  The canonical
    /// (particular) solution is returned so repeated calls agree.
    pub fn solve_through_left(&self, a: &Mor, target: &Mor) -> Option<Mor> {
        self.solve_through_left_seeded(a, target, 0)
    }

    /// Seeded variant of [`Backend::solve_through_left`]: seed `0` gives the
    /// particular solution, other seeds a deterministic coset element.
    pub fn solve_through_left_seeded(
        &self,
        a: &Mor,
        target: &Mor,
        seed: u64,
    ) -> Option<Mor> {
        assert_eq!(a.src(), target.src(), "solve_through_left: source mismatch");
        let space = self.hom(a.tgt(), target.tgt());
        let out = self.hom(a.src(), target.tgt());
        let sys = quot_map_matrix(&space, &out, |t| t.after(a));
        let rhs = out.coords(target);
        let sol = mat::solve_affine(&sys, &rhs).expect("shape ok")?;
        Some(space.rep_from_coords(&seeded_solution(&sol, seed)))
    }

    /// A factorisation `a ∘ t = target` through the right leg `a : B → C`,
    /// up to the backend's equality, if one exists.
    pub fn solve_through_right(&self, a: &Mor, target: &Mor) -> Option<Mor> {
        assert_eq!(a.tgt(), target.tgt(), "solve_through_right: target mismatch");
        let space = self.hom(target.src(), a.src());
        let out = self.hom(target.src(), a.tgt());
        let sys = quot_map_matrix(&space, &out, |t| a.after(t));
        let rhs = out.coords(target);
        let sol = mat::solve_affine(&sys, &rhs).expect("shape ok")?;
        Some(space.rep_from_coords(&sol.particular))
    }

    /// The shift of an object (`Σ`); the zero module on the abelian side.
    pub fn shift_obj(&self, a: &Arc<Module>) -> Arc<Module> {
        match &self.kind {
            BackendKind::Abelian(_) => self.zero_obj(),
            BackendKind::Stable(d) => d.shift_obj(a),
        }
    }

    /// The coshift of an object (`Ω`); the zero module on the abelian side.
    pub fn coshift_obj(&self, a: &Arc<Module>) -> Arc<Module> {
        match &self.kind {
            BackendKind::Abelian(_) => self.zero_obj(),
            BackendKind::Stable(d) => d.coshift_obj(a),
        }
    }

    pub fn shift_mor(&self, f: &Mor) -> Mor {
        match &self.kind {
            BackendKind::Abelian(_) => Mor::zero(&self.zero_obj(), &self.zero_obj()),
            BackendKind::Stable(d) => d.shift_mor(f),
        }
    }

    pub fn coshift_mor(&self, f: &Mor) -> Mor {
        match &self.kind {
            BackendKind::Abelian(_) => Mor::zero(&self.zero_obj(), &self.zero_obj()),
            BackendKind::Stable(d) => d.coshift_mor(f),
        }
    }

    /// The comparison bijection `psi : Hom(Ω a, b) → Hom(a, Σ b)`.  The
    /// source object `a` is passed explicitly because `Ω a` does not
    /// determine it on the abelian side.
    pub fn psi(&self, a: &Arc<Module>, e: &Mor) -> Mor {
        assert_eq!(e.src(), &self.coshift_obj(a), "psi: source must be Ω a");
        match &self.kind {
            BackendKind::Abelian(_) => Mor::zero(a, &self.zero_obj()),
            BackendKind::Stable(d) => d.psi(a, e),
        }
    }

    /// Inverse comparison `psi⁻¹ : Hom(a, Σ b) → Hom(Ω a, b)`.  The target
    /// object `b` is passed explicitly for the same reason.
    pub fn psi_inv(&self, b: &Arc<Module>, h: &Mor) -> Mor {
        assert_eq!(h.tgt(), &self.shift_obj(b), "psi_inv: target must be Σ b");
        match &self.kind {
            BackendKind::Abelian(_) => Mor::zero(&self.zero_obj(), b),
            BackendKind::Stable(d) => d.psi_inv(b, h),
        }
    }

    /// Whether postcomposition `Hom(-, t) ∘ f` hits every class killed by
    /// the shift; on the abelian side this is surjectivity, on the
    /// triangulated side every morphism qualifies.
    pub fn is_sigma_epic(&self, f: &Mor) -> bool {
        match &self.kind {
            BackendKind::Abelian(_) => f.map().rank() == f.tgt().dim(),
            BackendKind::Stable(_) => true,
        }
    }

    pub fn is_omega_monic(&self, f: &Mor) -> bool {
        match &self.kind {
            BackendKind::Abelian(_) => f.map().rank() == f.src().dim(),
            BackendKind::Stable(_) => true,
        }
    }

    /// Membership of `(f, g, h)` in the right class: cokernel sequences on
    /// the abelian side, distinguished triangles on the triangulated side.
    /// The witness is a comparison isomorphism onto the backend's own
    /// completion of `f` (the identity in the abelian case).
    pub fn in_right(&self, f: &Mor, g: &Mor, h: &Mor) -> SearchOutcome<Mor> {
        assert_eq!(g.src(), f.tgt(), "in_right: g must follow f");
        assert_eq!(h.src(), g.tgt(), "in_right: h must follow g");
        assert_eq!(
            h.tgt(),
            &self.shift_obj(f.src()),
            "in_right: h must land in the shift of the start"
        );
        match &self.kind {
            BackendKind::Abelian(_) => {
                if self.abelian_is_cokernel_seq(f, g) {
                    SearchOutcome::Found(Mor::identity(g.tgt()))
                } else {
                    SearchOutcome::Absent
                }
            }
            BackendKind::Stable(d) => d.in_right(self, f, g, h),
        }
    }

    /// Membership of `(e, f, g)` in the left class: kernel sequences on the
    /// abelian side; on the triangulated side decided through the
    /// translation onto the right class one shift down.
    pub fn in_left(&self, e: &Mor, f: &Mor, g: &Mor) -> SearchOutcome<Mor> {
        assert_eq!(f.src(), e.tgt(), "in_left: f must follow e");
        assert_eq!(g.src(), f.tgt(), "in_left: g must follow f");
        assert_eq!(
            e.src(),
            &self.coshift_obj(g.tgt()),
            "in_left: e must start at the coshift of the end"
        );
        match &self.kind {
            BackendKind::Abelian(_) => {
                if self.abelian_is_kernel_seq(f, g) {
                    SearchOutcome::Found(Mor::identity(f.src()))
                } else {
                    SearchOutcome::Absent
                }
            }
            BackendKind::Stable(_) => {
                // (e, f, g) lies in the left class iff (e, f, psi(Ω g))
                // lies in the right class one shift down.
                let og = self.coshift_mor(g);
                let h = self.psi(g.src(), &og);
                self.in_right(e, f, &h)
            }
        }
    }

    /// Completes `f` on the right: returns `(g, h)` with `(f, g, h)` in the
    /// right class.  Cokernel with zero shift-leg on the abelian side; cone
    /// of the stable construction on the triangulated side.
    pub fn complete_right(&self, f: &Mor) -> (Mor, Mor) {
        match &self.kind {
            BackendKind::Abelian(_) => {
                let (coker, proj) = hom::cokernel(f.src(), f.tgt(), f.map());
                let c = Arc::new(coker);
                let g = Mor::new(Arc::clone(f.tgt()), Arc::clone(&c), proj);
                let h = Mor::zero(&c, &self.zero_obj());
                (g, h)
            }
            BackendKind::Stable(d) => d.complete_right(f),
        }
    }

    /// Completes `g` on the left: returns `(e, f)` with `(e, f, g)` in the
    /// left class.
    pub fn complete_left(&self, g: &Mor) -> (Mor, Mor) {
        match &self.kind {
            BackendKind::Abelian(_) => {
                let (ker, incl) = hom::kernel(g.src(), g.tgt(), g.map());
                let k = Arc::new(ker);
                let f = Mor::new(Arc::clone(&k), Arc::clone(g.src()), incl);
                let e = Mor::zero(&self.zero_obj(), &k);
                (e, f)
            }
            BackendKind::Stable(d) => d.complete_left(self, g),
        }
    }

    /// Fill-in on the right: given right-class objects `(f, g, h)` and
    /// `(f2, g2, h2)` and a commuting square `b ∘ f = f2 ∘ a`, produces `c`
    /// with `c ∘ g = g2 ∘ b` and `Σa ∘ h = h2 ∘ c`.  `None` means the
    /// search space was scanned without a hit, which on valid inputs would
    /// be an axiom violation.
    pub fn fill_right(
        &self,
        a: &Mor,
        b: &Mor,
        t1: (&Mor, &Mor, &Mor),
        t2: (&Mor, &Mor, &Mor),
    ) -> Option<Mor> {
        self.fill_right_seeded(a, b, t1, t2, self.seed)
    }

    /// Seeded variant of [`Self::fill_right`]: when the fill-in is not
    /// unique the seed selects among valid fills, exercising
    /// well-definedness checks downstream.
    pub fn fill_right_seeded(
        &self,
        a: &Mor,
        b: &Mor,
        t1: (&Mor, &Mor, &Mor),
        t2: (&Mor, &Mor, &Mor),
        seed: u64,
    ) -> Option<Mor> {
        let (_f, g, h) = t1;
        let (_f2, g2, h2) = t2;
        match &self.kind {
            BackendKind::Abelian(_) => {
                // g is epic for right-class objects, so the fill is the
                // unique linear solution of c ∘ g = g2 ∘ b.
                let rhs = g2.after(b);
                let sol = mat::solve_left(g.map(), rhs.map()).ok()??;
                Some(Mor::new(
                    Arc::clone(g.tgt()),
                    Arc::clone(g2.tgt()),
                    sol.particular,
                ))
            }
            BackendKind::Stable(_) => {
                // Solve the two stable conditions jointly in quotient
                // coordinates on Hom(C, C').
                let hc = self.hom(g.tgt(), g2.tgt());
                let rows_a = quot_map_matrix(&hc, &self.hom(g.src(), g2.tgt()), |c| c.after(g));
                let rhs_a = self.hom(g.src(), g2.tgt()).coords(&g2.after(b));
                let rows_b = quot_map_matrix(&hc, &self.hom(g.tgt(), h2.tgt()), |c| h2.after(c));
                let rhs_b = self.hom(g.tgt(), h2.tgt()).coords(&self.shift_mor(a).after(h));
                let sys = rows_a.vstack(&rows_b);
                let rhs = rhs_a.vstack(&rhs_b);
                let sol = mat::solve_affine(&sys, &rhs).expect("shape ok")?;
                Some(hc.rep_from_coords(&seeded_solution(&sol, seed)))
            }
        }
    }

    /// Fill-in on the left: given left-class objects `(e, f, g)` and
    /// `(e2, f2, g2)` and a commuting square `g2 ∘ b = c ∘ g`, produces `a`
    /// with `f2 ∘ a = b ∘ f` and `a ∘ e = e2 ∘ Ωc`.
    pub fn fill_left(
        &self,
        b: &Mor,
        c: &Mor,
        t1: (&Mor, &Mor, &Mor),
        t2: (&Mor, &Mor, &Mor),
    ) -> Option<Mor> {
        let (e, f, _g) = t1;
        let (e2, f2, _g2) = t2;
        match &self.kind {
            BackendKind::Abelian(_) => {
                // f2 is monic for left-class objects: unique solution.
                let rhs = b.after(f);
                let sol = mat::solve_affine(f2.map(), rhs.map()).ok()??;
                Some(Mor::new(
                    Arc::clone(f.src()),
                    Arc::clone(f2.src()),
                    sol.particular,
                ))
            }
            BackendKind::Stable(_) => {
                let ha = self.hom(f.src(), f2.src());
                let rows_a = quot_map_matrix(&ha, &self.hom(f.src(), f2.tgt()), |a| f2.after(a));
                let rhs_a = self.hom(f.src(), f2.tgt()).coords(&b.after(f));
                let rows_b = quot_map_matrix(&ha, &self.hom(e.src(), f2.src()), |a| a.after(e));
                let rhs_b = self
                    .hom(e.src(), f2.src())
                    .coords(&e2.after(&self.coshift_mor(c)));
                let sys = rows_a.vstack(&rows_b);
                let rhs = rhs_a.vstack(&rhs_b);
                let sol = mat::solve_affine(&sys, &rhs).expect("shape ok")?;
                Some(ha.rep_from_coords(&seeded_solution(&sol, self.seed)))
            }
        }
    }

    /// The octahedron operation on right-class data.  Inputs: `(f, g, h)`
    /// on `A → B → C`, `(l, m, n)` on `A → M → B'`, `(l2, m2, n2)` on
    /// `A' → M → B`, with `m2 ∘ l = f` exactly.  Output `(g2, h2)` with
    ///   `h2 ∘ g = n2`, `h ∘ g2 = n`, `g2 ∘ m = g ∘ m2`,
    ///   `Σl ∘ h + Σl2 ∘ h2 = 0`,
    /// and `(m ∘ l2, g2, h2)` in the right class.
    #[allow(clippy::too_many_arguments)]
    pub fn octahedron(
        &self,
        f: &Mor,
        g: &Mor,
        h: &Mor,
        l: &Mor,
        m: &Mor,
        n: &Mor,
        l2: &Mor,
        m2: &Mor,
        n2: &Mor,
    ) -> SearchOutcome<(Mor, Mor)> {
        debug_assert!(
            self.mor_eq(&m2.after(l), f),
            "octahedron: hypothesis m2 ∘ l = f must hold"
        );
        match &self.kind {
            BackendKind::Abelian(_) => {
                // m is epic, so g2 is the unique solution of g2 ∘ m = g ∘ m2;
                // all shift legs vanish.
                let rhs = g.after(m2);
                let sol = match mat::solve_left(m.map(), rhs.map()) {
                    Ok(Some(s)) => s,
                    _ => return SearchOutcome::Absent,
                };
                let g2 = Mor::new(Arc::clone(m.tgt()), Arc::clone(g.tgt()), sol.particular);
                let h2 = Mor::zero(g.tgt(), &self.zero_obj());
                SearchOutcome::Found((g2, h2))
            }
            BackendKind::Stable(_) => self.octahedron_stable_search(f, g, h, l, m, n, l2, m2, n2),
        }
    }

    /// The dual octahedron on left-class data.  Inputs: `(e1, f1, g1)` on
    /// `A1 → B1 → C`, `(e2, f2, g2)` on `A2 → Mmid → C`, `(e3, f3, g3)` on
    /// `B1 → Mmid → C3`, with `g2 ∘ f3 = g1` exactly.  Output
    /// `(fd, ed)` with
    ///   `f1 ∘ ed = e3`, `fd ∘ e1 = e2`, `f2 ∘ fd = f3 ∘ f1`,
    ///   `e1 ∘ Ωg2 + ed ∘ Ωg3 = 0`,
    /// and `(ed, fd, g3 ∘ f2)` in the left class.
    #[allow(clippy::too_many_arguments)]
    pub fn octahedron_dual(
        &self,
        e1: &Mor,
        f1: &Mor,
        g1: &Mor,
        e2: &Mor,
        f2: &Mor,
        g2: &Mor,
        e3: &Mor,
        f3: &Mor,
        g3: &Mor,
    ) -> SearchOutcome<(Mor, Mor)> {
        debug_assert!(
            self.mor_eq(&g2.after(f3), g1),
            "octahedron_dual: hypothesis g2 ∘ f3 = g1 must hold"
        );
        match &self.kind {
            BackendKind::Abelian(_) => {
                // f2 is monic: fd is the unique solution of f2 ∘ fd = f3 ∘ f1.
                let rhs = f3.after(f1);
                let sol = match mat::solve_affine(f2.map(), rhs.map()) {
                    Ok(Some(s)) => s,
                    _ => return SearchOutcome::Absent,
                };
                let fd = Mor::new(Arc::clone(f1.src()), Arc::clone(f2.src()), sol.particular);
                let ed = Mor::zero(&self.zero_obj(), f1.src());
                SearchOutcome::Found((fd, ed))
            }
            BackendKind::Stable(_) => {
                self.octahedron_dual_stable_search(e1, f1, g1, e2, f2, g2, e3, f3, g3)
            }
        }
    }

    /// First factorization condition: extensions `(f, g, h)` (with start
    /// data) and `(f2, g2, h2)`, and `c` between their end objects with
    /// `h2 ∘ c = 0` and `c ∘ g = 0`; produces `c2` with `g2 ∘ c2 = c`.
    pub fn ac1_factor(
        &self,
        g: &Mor,
        h2: &Mor,
        g2: &Mor,
        c: &Mor,
    ) -> Option<Mor> {
        if !self.is_null(&h2.after(c)) || !self.is_null(&c.after(g)) {
            return None;
        }
        match &self.kind {
            BackendKind::Abelian(_) => {
                // c ∘ g = 0 with g epic forces c = 0 in the abelian case.
                if !c.is_zero_map() {
                    return None;
                }
                Some(Mor::zero(c.src(), g2.src()))
            }
            BackendKind::Stable(_) => {
                let hc = self.hom(c.src(), g2.src());
                let sys = quot_map_matrix(&hc, &self.hom(c.src(), g2.tgt()), |x| g2.after(x));
                let rhs = self.hom(c.src(), g2.tgt()).coords(c);
                let sol = mat::solve_affine(&sys, &rhs).expect("shape ok")?;
                Some(hc.rep_from_coords(&sol.particular))
            }
        }
    }

    /// Second factorization condition, dual to the first: extensions with
    /// maps `(e2, f2)` and `(e, f)`, and `a` between their start objects
    /// with `a ∘ e2 = 0` and `f ∘ a = 0`; produces `a2` with `a2 ∘ f2 = a`.
    pub fn ac2_factor(
        &self,
        e2: &Mor,
        f2: &Mor,
        f: &Mor,
        a: &Mor,
    ) -> Option<Mor> {
        if !self.is_null(&a.after(e2)) || !self.is_null(&f.after(a)) {
            return None;
        }
        match &self.kind {
            BackendKind::Abelian(_) => {
                if !a.is_zero_map() {
                    return None;
                }
                Some(Mor::zero(f2.tgt(), a.tgt()))
            }
            BackendKind::Stable(_) => {
                let hc = self.hom(f2.tgt(), a.tgt());
                let sys = quot_map_matrix(&hc, &self.hom(f2.src(), a.tgt()), |x| x.after(f2));
                let rhs = self.hom(f2.src(), a.tgt()).coords(a);
                let sol = mat::solve_affine(&sys, &rhs).expect("shape ok")?;
                Some(hc.rep_from_coords(&sol.particular))
            }
        }
    }

    /// Scans an affine solution space inside a hom-space quotient for an
    /// isomorphism.  Exhaustive below the enumeration budget; seeded
    /// sampling (plus the particular solution) above it.
    pub fn iso_in_affine(
        &self,
        space: &HomSpace,
        sol: &mat::AffineSolution,
        tag: &str,
    ) -> SearchOutcome<Mor> {
        let p = self.field().p();
        let k = sol.kernel.cols();
        let count = (p as u64).checked_pow(k as u32);
        if count.is_some_and(|c| c <= self.budget.enumeration) {
            for coeffs in coeff_vectors(p, k) {
                let cand = space.rep_from_coords(&apply_offsets(sol, &coeffs));
                if self.is_iso(&cand) {
                    return SearchOutcome::Found(cand);
                }
            }
            SearchOutcome::Absent
        } else {
            let cand = space.rep_from_coords(&sol.particular.clone());
            if self.is_iso(&cand) {
                return SearchOutcome::Found(cand);
            }
            for i in 0..self.budget.samples as u64 {
                let s = derive_seed(self.seed, seed_tag(tag) ^ i);
                let cand = space.rep_from_coords(&random_offset(sol, s));
                if self.is_iso(&cand) {
                    return SearchOutcome::Found(cand);
                }
            }
            SearchOutcome::Exhausted
        }
    }

    fn abelian_is_cokernel_seq(&self, f: &Mor, g: &Mor) -> bool {
        if g.map().rank() != g.tgt().dim() {
            return false;
        }
        self.abelian_middle_exact(f, g)
    }

    fn abelian_is_kernel_seq(&self, f: &Mor, g: &Mor) -> bool {
        if f.map().rank() != f.src().dim() {
            return false;
        }
        self.abelian_middle_exact(f, g)
    }

    fn abelian_middle_exact(&self, f: &Mor, g: &Mor) -> bool {
        if !g.after(f).is_zero_map() {
            return false;
        }
        let ker = g.map().rref().kernel;
        let im = f.map().column_space_basis();
        mat::columns_contained(&im, &ker) && mat::columns_contained(&ker, &im)
    }

    #[allow(clippy::too_many_arguments)]
    fn octahedron_stable_search(
        &self,
        _f: &Mor,
        g: &Mor,
        h: &Mor,
        l: &Mor,
        m: &Mor,
        n: &Mor,
        l2: &Mor,
        m2: &Mor,
        n2: &Mor,
    ) -> SearchOutcome<(Mor, Mor)> {
        let f2 = m.after(l2);
        // System for g2 in Hom(B', C): h ∘ g2 = n and g2 ∘ m = g ∘ m2.
        let hg = self.hom(m.tgt(), g.tgt());
        let rows_a = quot_map_matrix(&hg, &self.hom(m.tgt(), h.tgt()), |x| h.after(x));
        let rhs_a = self.hom(m.tgt(), h.tgt()).coords(n);
        let rows_b = quot_map_matrix(&hg, &self.hom(m.src(), g.tgt()), |x| x.after(m));
        let rhs_b = self.hom(m.src(), g.tgt()).coords(&g.after(m2));
        let sol_g = match mat::solve_affine(&rows_a.vstack(&rows_b), &rhs_a.vstack(&rhs_b)) {
            Ok(Some(s)) => s,
            _ => return SearchOutcome::Absent,
        };
        // System for h2 in Hom(C, ΣA'): h2 ∘ g = n2 and Σl2 ∘ h2 = -Σl ∘ h.
        let sh = self.shift_obj(l2.src());
        let hh = self.hom(g.tgt(), &sh);
        let sl2 = self.shift_mor(l2);
        let sl = self.shift_mor(l);
        let rows_c = quot_map_matrix(&hh, &self.hom(g.src(), &sh), |x| x.after(g));
        let rhs_c = self.hom(g.src(), &sh).coords(n2);
        let rows_d = quot_map_matrix(&hh, &self.hom(g.tgt(), sl2.tgt()), |x| sl2.after(x));
        let rhs_d = self
            .hom(g.tgt(), sl2.tgt())
            .coords(&sl.after(h).neg());
        let sol_h = match mat::solve_affine(&rows_c.vstack(&rows_d), &rhs_c.vstack(&rhs_d)) {
            Ok(Some(s)) => s,
            _ => return SearchOutcome::Absent,
        };
        // Scan the product of the two affine solution spaces for a pair
        // whose candidate sequence lands in the right class.
        let p = self.field().p();
        let kg = sol_g.kernel.cols();
        let kh = sol_h.kernel.cols();
        let count = (p as u64).checked_pow((kg + kh) as u32);
        let within = count.is_some_and(|c| c <= self.budget.enumeration);
        if within {
            for coeffs in coeff_vectors(p, kg + kh) {
                let g2 = hg.rep_from_coords(&apply_offsets(&sol_g, &coeffs[..kg]));
                let h2 = hh.rep_from_coords(&apply_offsets(&sol_h, &coeffs[kg..]));
                if self.in_right(&f2, &g2, &h2).is_found() {
                    return SearchOutcome::Found((g2, h2));
                }
            }
            SearchOutcome::Absent
        } else {
            for i in 0..self.budget.samples as u64 {
                let s = derive_seed(self.seed, seed_tag("oct") ^ i);
                let g2 = hg.rep_from_coords(&random_offset(&sol_g, s));
                let h2 = hh.rep_from_coords(&random_offset(&sol_h, s ^ 0x5a5a));
                if self.in_right(&f2, &g2, &h2).is_found() {
                    return SearchOutcome::Found((g2, h2));
                }
            }
            SearchOutcome::Exhausted
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn octahedron_dual_stable_search(
        &self,
        e1: &Mor,
        f1: &Mor,
        _g1: &Mor,
        e2: &Mor,
        f2: &Mor,
        g2: &Mor,
        e3: &Mor,
        f3: &Mor,
        g3: &Mor,
    ) -> SearchOutcome<(Mor, Mor)> {
        let fd_seq = g3.after(f2);
        // System for fd in Hom(A1, A2): fd ∘ e1 = e2 and f2 ∘ fd = f3 ∘ f1.
        let hf = self.hom(f1.src(), f2.src());
        let rows_a = quot_map_matrix(&hf, &self.hom(e1.src(), f2.src()), |x| x.after(e1));
        let rhs_a = self.hom(e1.src(), f2.src()).coords(e2);
        let rows_b = quot_map_matrix(&hf, &self.hom(f1.src(), f2.tgt()), |x| f2.after(x));
        let rhs_b = self.hom(f1.src(), f2.tgt()).coords(&f3.after(f1));
        let sol_f = match mat::solve_affine(&rows_a.vstack(&rows_b), &rhs_a.vstack(&rhs_b)) {
            Ok(Some(s)) => s,
            _ => return SearchOutcome::Absent,
        };
        // System for ed in Hom(ΩC3, A1): f1 ∘ ed = e3 and
        // ed ∘ Ωg3 = -e1 ∘ Ωg2.
        let oc3 = self.coshift_obj(g3.tgt());
        let he = self.hom(&oc3, f1.src());
        let og3 = self.coshift_mor(g3);
        let og2 = self.coshift_mor(g2);
        let rows_c = quot_map_matrix(&he, &self.hom(&oc3, f1.tgt()), |x| f1.after(x));
        let rhs_c = self.hom(&oc3, f1.tgt()).coords(e3);
        let rows_d = quot_map_matrix(&he, &self.hom(og3.src(), f1.src()), |x| x.after(&og3));
        let rhs_d = self
            .hom(og3.src(), f1.src())
            .coords(&e1.after(&og2).neg());
        let sol_e = match mat::solve_affine(&rows_c.vstack(&rows_d), &rhs_c.vstack(&rhs_d)) {
            Ok(Some(s)) => s,
            _ => return SearchOutcome::Absent,
        };
        let p = self.field().p();
        let kf = sol_f.kernel.cols();
        let ke = sol_e.kernel.cols();
        let count = (p as u64).checked_pow((kf + ke) as u32);
        let within = count.is_some_and(|c| c <= self.budget.enumeration);
        if within {
            for coeffs in coeff_vectors(p, kf + ke) {
                let fd = hf.rep_from_coords(&apply_offsets(&sol_f, &coeffs[..kf]));
                let ed = he.rep_from_coords(&apply_offsets(&sol_e, &coeffs[kf..]));
                if self.in_left(&ed, &fd, &fd_seq).is_found() {
                    return SearchOutcome::Found((fd, ed));
                }
            }
            SearchOutcome::Absent
        } else {
            for i in 0..self.budget.samples as u64 {
                let s = derive_seed(self.seed, seed_tag("octd") ^ i);
                let fd = hf.rep_from_coords(&random_offset(&sol_f, s));
                let ed = he.rep_from_coords(&random_offset(&sol_e, s ^ 0xa5a5));
                if self.in_left(&ed, &fd, &fd_seq).is_found() {
                    return SearchOutcome::Found((fd, ed));
                }
            }
            SearchOutcome::Exhausted
        }
    }
}

/// Particular solution shifted by the kernel combination with the given
/// coefficients.
fn apply_offsets(sol: &mat::AffineSolution, coeffs: &[u32]) -> Matrix {
    let mut acc = sol.particular.clone();
    for (j, &c) in coeffs.iter().enumerate() {
        let col = Matrix::from_cols(acc.field(), sol.kernel.rows(), &[sol.kernel.col(j)]);
        acc = acc.add(&col.scale(c));
    }
    acc
}

/// Particular solution shifted by a seeded random kernel combination.
fn random_offset(sol: &mat::AffineSolution, seed: u64) -> Matrix {
    let k = sol.kernel.cols();
    let r = Matrix::seeded_random(sol.particular.field(), k, 1, seed);
    let coeffs: Vec<u32> = (0..k).map(|j| r.at(j, 0)).collect();
    apply_offsets(sol, &coeffs)
}

/// Seed-selected element of an affine solution space: seed zero picks the
/// particular solution, other seeds shift by a random kernel combination.
fn seeded_solution(sol: &mat::AffineSolution, seed: u64) -> Matrix {
    if seed == 0 || sol.kernel.cols() == 0 {
        sol.particular.clone()
    } else {
        random_offset(sol, seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    fn a2() -> Arc<Algebra> {
        Arc::new(Algebra::truncated_polynomial(2, 2).expect("valid"))
    }

    /// The simple module over F_2[x]/(x^2): x acts by zero.
    fn simple(a: &Algebra) -> Arc<Module> {
        let f = a.field();
        Arc::new(Module::new(
            f,
            1,
            vec![Matrix::identity(f, 1), Matrix::zeros(f, 1, 1)],
        ))
    }

    fn regular(a: &Algebra) -> Arc<Module> {
        Arc::new(a.regular_module())
    }

    /// The socle inclusion K -> R over F_2[x]/(x^2).
    fn socle_incl(k: &Arc<Module>, r: &Arc<Module>) -> Mor {
        let f = k.field();
        Mor::new(
            Arc::clone(k),
            Arc::clone(r),
            Matrix::from_rows(f, 2, 1, &[0, 1]),
        )
    }

    #[test]
    fn quotient_coordinates_with_declared_null_space() {
        let a = a2();
        let r = regular(&a);
        let full = hom::hom_space(&r, &r);
        assert_eq!(full.len(), 2);
        // Declare the nilpotent endomorphism (multiplication by x) null.
        let x_mult = a.left_mult_matrix(1);
        let h = HomSpace::build(Arc::clone(&r), Arc::clone(&r), full, std::slice::from_ref(&x_mult));
        assert_eq!(h.full_dim(), 2);
        assert_eq!(h.dim(), 1);
        let id = Mor::identity(&r);
        let x_mor = Mor::new(Arc::clone(&r), Arc::clone(&r), x_mult);
        assert!(h.is_null(&x_mor));
        assert!(!h.is_null(&id));
        assert!(h.eq(&id, &id.add(&x_mor)));
        let c = h.coords(&id);
        let rep = h.rep_from_coords(&c);
        assert!(h.eq(&rep, &id));
        assert_eq!(h.class_count(), Some(2));
        assert_eq!(h.iter_classes().count(), 2);
    }

    #[test]
    fn abelian_right_class_is_cokernel_sequences() {
        let a = a2();
        let b = Backend::abelian(Arc::clone(&a));
        let k = simple(&a);
        let r = regular(&a);
        let incl = socle_incl(&k, &r);
        let (g, h) = b.complete_right(&incl);
        assert_eq!(g.tgt().dim(), 1);
        assert!(b.in_right(&incl, &g, &h).is_found());
        // The zero map to the cokernel fails membership.
        let zg = Mor::zero(&r, g.tgt());
        assert_eq!(b.in_right(&incl, &zg, &h), SearchOutcome::Absent);
        // Completion on the left recovers the kernel sequence.
        let (e, f) = b.complete_left(&g);
        assert!(b.in_left(&e, &f, &g).is_found());
        assert_eq!(f.src().dim(), 1);
    }

    #[test]
    fn abelian_fill_in_on_matching_sequences() {
        let a = a2();
        let b = Backend::abelian(Arc::clone(&a));
        let k = simple(&a);
        let r = regular(&a);
        let incl = socle_incl(&k, &r);
        let (g, h) = b.complete_right(&incl);
        let id_k = Mor::identity(&k);
        let id_r = Mor::identity(&r);
        let c = b
            .fill_right(&id_k, &id_r, (&incl, &g, &h), (&incl, &g, &h))
            .expect("fill exists");
        assert!(b.mor_eq(&c, &Mor::identity(g.tgt())));
        let (e, f) = b.complete_left(&g);
        let a_fill = b
            .fill_left(&id_r, &c, (&e, &f, &g), (&e, &f, &g))
            .expect("fill exists");
        assert!(b.mor_eq(&a_fill, &Mor::identity(f.src())));
    }

    #[test]
    fn abelian_octahedron_on_factored_inclusion() {
        let a = a2();
        let b = Backend::abelian(Arc::clone(&a));
        let k = simple(&a);
        let r = regular(&a);
        let zero = b.zero_obj();
        // f = socle inclusion K -> R, factored as (id_R) ∘ f through M = R.
        let incl = socle_incl(&k, &r);
        let (g, h) = b.complete_right(&incl);
        // (l, m, n) on K -> R -> K: the same sequence again.
        let (m, n) = b.complete_right(&incl);
        assert!(n.is_zero_map());
        // (l2, m2, n2) on 0 -> R -> R: l2 = 0, m2 = id.
        let l2 = Mor::zero(&zero, &r);
        let m2 = Mor::identity(&r);
        let n2 = Mor::zero(&r, &zero);
        let out = b.octahedron(&incl, &g, &h, &incl, &m, &n, &l2, &m2, &n2);
        let (g2, h2) = out.found().expect("octahedron fills");
        // g2 : K -> K satisfies g2 ∘ m = g ∘ m2 = g, and m = g, so g2 = id.
        assert!(b.mor_eq(&g2, &Mor::identity(g.tgt())));
        assert!(h2.is_zero_map());
    }

    #[test]
    fn abelian_factorization_conditions_degenerate_to_zero() {
        let a = a2();
        let b = Backend::abelian(Arc::clone(&a));
        let k = simple(&a);
        let r = regular(&a);
        let incl = socle_incl(&k, &r);
        let (g, h) = b.complete_right(&incl);
        let c = Mor::zero(g.tgt(), g.tgt());
        let c2 = b.ac1_factor(&g, &h, &g, &c).expect("zero factors");
        assert!(c2.is_zero_map());
        let (e, f) = b.complete_left(&g);
        let z = Mor::zero(f.src(), f.src());
        let a2_fill = b.ac2_factor(&e, &f, &f, &z).expect("zero factors");
        assert!(a2_fill.is_zero_map());
    }

    #[test]
    fn invert_detects_isomorphisms() {
        let a = a2();
        let b = Backend::abelian(Arc::clone(&a));
        let r = regular(&a);
        let f = a.field();
        // 1 + x is a unit in F_2[x]/(x^2).
        let unit = Matrix::identity(f, 2).add(&a.left_mult_matrix(1));
        let u = Mor::new(Arc::clone(&r), Arc::clone(&r), unit);
        let inv = b.invert(&u).expect("unit is invertible");
        assert!(b.mor_eq(&inv.after(&u), &Mor::identity(&r)));
        let x_mor = Mor::new(Arc::clone(&r), Arc::clone(&r), a.left_mult_matrix(1));
        assert!(b.invert(&x_mor).is_none());
    }

    #[test]
    fn biproduct_identities() {
        let a = a2();
        let k = simple(&a);
        let r = regular(&a);
        let bp = biproduct(&k, &r);
        assert_eq!(bp.sum.dim(), 3);
        let id_k = bp.proj_a.after(&bp.inj_a);
        assert!(id_k.map().is_identity());
        let z = bp.proj_b.after(&bp.inj_a);
        assert!(z.is_zero_map());
        let assembled = bp
            .inj_a
            .after(&bp.proj_a)
            .add(&bp.inj_b.after(&bp.proj_b));
        assert!(assembled.map().is_identity());
    }

    #[test]
    fn seed_derivation_is_stable() {
        // Pinned so that seeded searches stay reproducible across runs.
        assert_eq!(derive_seed(7, seed_tag("oct")), derive_seed(7, seed_tag("oct")));
        assert_ne!(derive_seed(7, seed_tag("oct")), derive_seed(8, seed_tag("oct")));
        assert_ne!(derive_seed(7, seed_tag("oct")), derive_seed(7, seed_tag("octd")));
    }
}
