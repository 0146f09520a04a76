//! Free presentations and first extension groups.
//!
//! For a module Z we build a surjection from a free module, eps: A^k -> Z,
//! by greedily choosing generators and then pruning to an inclusion-minimal
//! set. The kernel inclusion kappa: K -> A^k is the syzygy. Ext^1(Z, X) is
//! then computed as the cokernel of restriction along kappa,
//! Hom(A^k, X) -> Hom(K, X), and a class phi: K -> X is realized as an actual
//! short exact sequence 0 -> X -> E -> Z -> 0 by the pushout
//! E = coker([-phi; kappa]: K -> X + A^k).

use crate::algebra::{Algebra, Module};
use crate::hom::{cokernel, hom_space, is_module_map, kernel};
use crate::mat::{columns_contained, solve_left, Matrix};

/// A two-term free presentation K -> A^k -> Z.
#[derive(Debug, Clone)]
pub struct FreePresentation {
    /// The free module A^k.
    pub free: Module,
    /// Surjection free -> Z.
    pub eps: Matrix,
    /// The syzygy module K = ker(eps).
    pub syzygy: Module,
    /// Inclusion K -> free.
    pub kappa: Matrix,
}

/// Submodule generated by the given vectors: span of (action of b_i)(v).
fn generated_span(m: &Module, gens: &[Vec<u32>]) -> Matrix {
    let f = m.field();
    let mut cols = Matrix::zeros(f, m.dim(), 0);
    for g in gens {
        let v = Matrix::from_cols(f, m.dim(), std::slice::from_ref(g));
        for a in m.actions() {
            cols = cols.hstack(&a.mul(&v));
        }
    }
    cols.column_space_basis()
}

/// Inclusion-minimal generating set, chosen greedily from the standard basis
/// and then pruned. Deterministic.
pub fn generators(m: &Module) -> Vec<Vec<u32>> {
    let f = m.field();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut span = Matrix::zeros(f, m.dim(), 0);
    for r in 0..m.dim() {
        if span.cols() == m.dim() {
            break;
        }
        let mut e = vec![0u32; m.dim()];
        e[r] = 1;
        let ev = Matrix::from_cols(f, m.dim(), &[e.clone()]);
        if !columns_contained(&span, &ev) {
            gens.push(e);
            span = generated_span(m, &gens);
        }
    }
    // Prune: drop any generator the others already produce.
    let mut i = 0;
    while i < gens.len() {
        let mut rest = gens.clone();
        rest.remove(i);
        if generated_span(m, &rest).cols() == m.dim() {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    gens
}

/// Builds eps: A^k -> Z on the chosen generators and takes its kernel.
pub fn free_presentation(a: &Algebra, z: &Module) -> FreePresentation {
    let f = a.field();
    let gens = generators(z);
    let k = gens.len();
    let reg = a.regular_module();
    let mut free = Module::zero(f, a.dim());
    for _ in 0..k {
        free = free.direct_sum(&reg);
    }
    // Column (j * n + i) of eps is (action of b_i) applied to generator j.
    let n = a.dim();
    let mut eps = Matrix::zeros(f, z.dim(), n * k);
    for (j, g) in gens.iter().enumerate() {
        let gv = Matrix::from_cols(f, z.dim(), std::slice::from_ref(g));
        for i in 0..n {
            let col = z.action(i).mul(&gv);
            for r in 0..z.dim() {
                eps.set(r, j * n + i, col.at(r, 0));
            }
        }
    }
    debug_assert!(is_module_map(&free, z, &eps));
    debug_assert_eq!(eps.rank(), z.dim(), "eps must be surjective");
    let (syzygy, kappa) = kernel(&free, z, &eps);
    FreePresentation { free, eps, syzygy, kappa }
}

/// A realized extension 0 -> X -> middle -> Z -> 0.
#[derive(Debug, Clone)]
pub struct Realized {
    pub middle: Module,
    /// X -> middle, injective.
    pub incl: Matrix,
    /// middle -> Z, surjective.
    pub proj: Matrix,
}

/// Ext^1(Z, X) together with enough context to realize classes.
#[derive(Debug, Clone)]
pub struct Ext1 {
    pub pres: FreePresentation,
    x: Module,
    z: Module,
    /// Matrices K -> X representing a basis of Ext^1(Z, X).
    pub class_reps: Vec<Matrix>,
}

impl Ext1 {
    pub fn dim(&self) -> usize {
        self.class_reps.len()
    }

    /// Pushout realization of a class given by a module map phi: K -> X.
    pub fn realize(&self, phi: &Matrix) -> Realized {
        let f = self.x.field();
        assert!(
            is_module_map(&self.pres.syzygy, &self.x, phi),
            "class representative must be a module map"
        );
        let g = phi.neg().vstack(&self.pres.kappa);
        let sum = self.x.direct_sum(&self.pres.free);
        let (middle, proj_to_middle) = cokernel(&self.pres.syzygy, &sum, &g);
        // X -> X + free -> middle.
        let top = Matrix::identity(f, self.x.dim())
            .vstack(&Matrix::zeros(f, self.pres.free.dim(), self.x.dim()));
        let incl = proj_to_middle.mul(&top);
        // middle -> Z induced by [0 | eps], which kills the image of g.
        let rhs = Matrix::zeros(f, self.z.dim(), self.x.dim()).hstack(&self.pres.eps);
        let proj = solve_left(&proj_to_middle, &rhs)
            .expect("same field and shape")
            .expect("[0 | eps] kills the pushout relations")
            .particular;
        debug_assert!(is_module_map(&self.x, &middle, &incl));
        debug_assert!(is_module_map(&middle, &self.z, &proj));
        Realized { middle, incl, proj }
    }

    /// The zero class, realized as the split extension.
    pub fn realize_zero(&self) -> Realized {
        let zero = Matrix::zeros(self.x.field(), self.x.dim(), self.pres.syzygy.dim());
        self.realize(&zero)
    }

    /// Every class representative (the zero class included), or `None`
    /// when the class count exceeds `limit`.
    pub fn all_classes(&self, limit: u64) -> Option<Vec<Matrix>> {
        let f = self.x.field();
        let p = u64::from(f.p());
        let d = self.class_reps.len() as u32;
        let total = p.checked_pow(d).filter(|&t| t <= limit)?;
        let mut out = Vec::with_capacity(total as usize);
        let zero = Matrix::zeros(f, self.x.dim(), self.pres.syzygy.dim());
        for idx in 0..total {
            let mut phi = zero.clone();
            let mut rest = idx;
            for rep in &self.class_reps {
                let c = (rest % p) as u32;
                rest /= p;
                if c != 0 {
                    phi = phi.add(&rep.scale(c));
                }
            }
            out.push(phi);
        }
        Some(out)
    }
}

/// Computes Ext^1(Z, X) from a free presentation of Z.
pub fn ext1(a: &Algebra, z: &Module, x: &Module) -> Ext1 {
    let f = a.field();
    let pres = free_presentation(a, z);
    let hom_k: Vec<Matrix> = hom_space(&pres.syzygy, x);
    let h = hom_k.len();
    if h == 0 {
        return Ext1 { pres, x: x.clone(), z: z.clone(), class_reps: Vec::new() };
    }
    // Coordinates of T |-> T kappa, for T in a basis of Hom(free, X),
    // expressed in the hom_k basis.
    let hom_free = hom_space(&pres.free, x);
    let vec_of = |t: &Matrix| -> Vec<u32> { t.entries().to_vec() };
    let basis_mat = Matrix::from_cols(
        f,
        x.dim() * pres.syzygy.dim(),
        &hom_k.iter().map(vec_of).collect::<Vec<_>>(),
    );
    let mut image_coords = Matrix::zeros(f, h, 0);
    for t in &hom_free {
        let restricted = t.mul(&pres.kappa);
        let target = Matrix::from_cols(
            f,
            x.dim() * pres.syzygy.dim(),
            std::slice::from_ref(&vec_of(&restricted)),
        );
        let coords = crate::mat::solve_affine(&basis_mat, &target)
            .expect("same field and shape")
            .expect("restriction lies in Hom(K, X)")
            .particular;
        image_coords = image_coords.hstack(&coords);
    }
    let image_basis = image_coords.column_space_basis();
    // Coset representatives: standard basis vectors of F^h outside the pivot
    // span of the image, read off from the rref of [image | id].
    let aug = image_basis.hstack(&Matrix::identity(f, h));
    let pivots = aug.rref().pivots;
    let class_reps: Vec<Matrix> = pivots
        .iter()
        .filter(|&&c| c >= image_basis.cols())
        .map(|&c| hom_k[c - image_basis.cols()].clone())
        .collect();
    debug_assert_eq!(class_reps.len(), h - image_basis.cols());
    Ext1 { pres, x: x.clone(), z: z.clone(), class_reps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{decompose, module_iso, DEFAULT_PROBE_BUDGET};

    fn a2_setup() -> (Algebra, Module, Module) {
        let a = Algebra::truncated_polynomial(2, 2).unwrap();
        let f = a.field();
        let k = Module::new(f, 1, vec![Matrix::identity(f, 1), Matrix::zeros(f, 1, 1)]);
        let r = a.regular_module();
        (a, k, r)
    }

    #[test]
    fn presentation_of_the_simple_module() {
        let (a, k, _) = a2_setup();
        let pres = free_presentation(&a, &k);
        assert_eq!(pres.free.dim(), 2); // one generator, so A itself
        assert_eq!(pres.syzygy.dim(), 1); // rad A = xA
        assert!(is_module_map(&pres.syzygy, &pres.free, &pres.kappa));
        assert!(pres.eps.mul(&pres.kappa).is_zero());
    }

    #[test]
    fn free_module_has_trivial_syzygy() {
        let (a, _, r) = a2_setup();
        let pres = free_presentation(&a, &r);
        assert_eq!(pres.syzygy.dim(), 0);
        assert_eq!(ext1(&a, &r, &r).dim(), 0);
        assert_eq!(ext1(&a, &r, &a.regular_module()).dim(), 0);
    }

    /// Oracle: over F_2[x]/(x^2), Ext^1(K, K) is one-dimensional and the
    /// nonzero class is realized by the regular module in the middle.
    #[test]
    fn ext_of_simple_by_simple() {
        let (a, k, r) = a2_setup();
        let e = ext1(&a, &k, &k);
        assert_eq!(e.dim(), 1);
        let nonzero = e.realize(&e.class_reps[0]);
        assert_eq!(nonzero.middle.dim(), 2);
        assert!(module_iso(&nonzero.middle, &r, 1).is_iso());
        // Exactness of the realized sequence.
        assert_eq!(nonzero.incl.rank(), 1);
        assert_eq!(nonzero.proj.rank(), 1);
        assert!(nonzero.proj.mul(&nonzero.incl).is_zero());
        // The zero class splits.
        let split = e.realize_zero();
        let dec = decompose(&split.middle, 1, DEFAULT_PROBE_BUDGET);
        assert_eq!(dec.dims(), vec![1, 1]);
    }

    /// Injectivity of the regular module over a self-injective algebra shows
    /// up as vanishing Ext into it.
    #[test]
    fn ext_into_injective_vanishes() {
        let (a, k, r) = a2_setup();
        assert_eq!(ext1(&a, &k, &r).dim(), 0);
    }

    #[test]
    fn generators_are_minimal_for_sums() {
        let (a, k, r) = a2_setup();
        let m = r.direct_sum(&k).direct_sum(&r);
        let gens = generators(&m);
        assert_eq!(gens.len(), 3);
        assert_eq!(generated_span(&m, &gens).cols(), m.dim());
        let _ = a;
    }
}
