//! Hom spaces, kernels, cokernels, and images of module maps.
//!
//! A module map f: M -> N is a raw tgt.dim x src.dim matrix T satisfying the
//! intertwiner equations T rho^M_i = rho^N_i T for every algebra basis
//! element. `hom_space` computes a basis of all such T by vectorizing the
//! equations into one big linear system; kernels and cokernels restrict or
//! quotient the actions along the corresponding subspaces, which are
//! automatically invariant.

use crate::algebra::Module;
use crate::mat::{solve_affine, Matrix};

/// Basis of the space of module maps M -> N, as tgt.dim x src.dim matrices.
/// Deterministic: basis vectors come from the elimination kernel in order.
pub fn hom_space(src: &Module, tgt: &Module) -> Vec<Matrix> {
    let f = src.field();
    assert_eq!(f, tgt.field(), "modules over different fields");
    assert_eq!(src.actions().len(), tgt.actions().len(), "different algebras");
    let (dm, dn) = (src.dim(), tgt.dim());
    let unknowns = dn * dm;
    if unknowns == 0 {
        // Hom to or from the zero module is zero; a unique empty-shaped map.
        return Vec::new();
    }
    // One block of dn*dm equations per action: (T A_i - B_i T)[r][c] = 0,
    // with unknown T[r][k] entering via A_i[k][c] and T[k][c] via -B_i[r][k].
    let na = src.actions().len();
    let mut sys = Matrix::zeros(f, na * unknowns, unknowns);
    for i in 0..na {
        let a = src.action(i);
        let b = tgt.action(i);
        for r in 0..dn {
            for c in 0..dm {
                let eq = i * unknowns + r * dm + c;
                for k in 0..dm {
                    let idx = r * dm + k;
                    let v = f.add(sys.at(eq, idx), a.at(k, c));
                    sys.set(eq, idx, v);
                }
                for k in 0..dn {
                    let idx = k * dm + c;
                    let v = f.sub(sys.at(eq, idx), b.at(r, k));
                    sys.set(eq, idx, v);
                }
            }
        }
    }
    let kernel = sys.rref().kernel;
    (0..kernel.cols())
        .map(|j| {
            let mut t = Matrix::zeros(f, dn, dm);
            for r in 0..dn {
                for c in 0..dm {
                    t.set(r, c, kernel.at(r * dm + c, j));
                }
            }
            t
        })
        .collect()
}

pub fn dim_hom(src: &Module, tgt: &Module) -> usize {
    if src.dim() == 0 || tgt.dim() == 0 {
        0
    } else {
        hom_space(src, tgt).len()
    }
}

/// True when `f` satisfies the intertwiner equations for these modules.
pub fn is_module_map(src: &Module, tgt: &Module, f: &Matrix) -> bool {
    if f.rows() != tgt.dim() || f.cols() != src.dim() {
        return false;
    }
    src.actions()
        .iter()
        .zip(tgt.actions())
        .all(|(a, b)| f.mul(a) == b.mul(f))
}

/// Kernel of f: M -> N as a module with its inclusion into M.
pub fn kernel(src: &Module, _tgt: &Module, f: &Matrix) -> (Module, Matrix) {
    let field = src.field();
    let incl = f.rref().kernel; // src.dim x k, independent columns
    let k = incl.cols();
    let actions = src
        .actions()
        .iter()
        .map(|a| {
            // a maps the kernel into itself; express a*incl in the incl basis.
            let sol = solve_affine(&incl, &a.mul(&incl))
                .expect("same field and shape")
                .expect("kernel of a module map is a submodule");
            sol.particular
        })
        .collect();
    (Module::new(field, k, actions), incl)
}

/// Cokernel of f: M -> N as a module with the projection N -> coker.
pub fn cokernel(_src: &Module, tgt: &Module, f: &Matrix) -> (Module, Matrix) {
    let field = tgt.field();
    let image = f.column_space_basis(); // tgt.dim x r
    let comp = image.complement_to_basis(); // tgt.dim x (d - r)
    let d = tgt.dim();
    let r = image.cols();
    let change = image.hstack(&comp);
    let inv = change.inverse().expect("basis change is invertible");
    let proj = inv.row_block(r, d - r); // (d - r) x d
    let actions = tgt
        .actions()
        .iter()
        .map(|b| proj.mul(b).mul(&comp))
        .collect();
    let coker = Module::new(field, d - r, actions);
    debug_assert!(
        tgt.actions()
            .iter()
            .zip(coker.actions())
            .all(|(b, q)| proj.mul(b) == q.mul(&proj)),
        "image of a module map is a submodule"
    );
    (coker, proj)
}

/// Image of f: M -> N as a module with its inclusion into N.
pub fn image(_src: &Module, tgt: &Module, f: &Matrix) -> (Module, Matrix) {
    let field = tgt.field();
    let incl = f.column_space_basis();
    let actions = tgt
        .actions()
        .iter()
        .map(|b| {
            let sol = solve_affine(&incl, &b.mul(&incl))
                .expect("same field and shape")
                .expect("image of a module map is a submodule");
            sol.particular
        })
        .collect();
    (Module::new(field, incl.cols(), actions), incl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    /// F_2[x]/(x^2) with its two indecomposables: the simple K (x acts by 0)
    /// and the regular R.
    fn a2_modules() -> (Algebra, Module, Module) {
        let a = Algebra::truncated_polynomial(2, 2).unwrap();
        let f = a.field();
        let k = Module::new(f, 1, vec![Matrix::identity(f, 1), Matrix::zeros(f, 1, 1)]);
        a.validate_module(&k).unwrap();
        let r = a.regular_module();
        (a, k, r)
    }

    /// Oracle: hom dimensions over F_2[x]/(x^2), checkable by hand.
    #[test]
    fn hom_dimensions_match_hand_computation() {
        let (_, k, r) = a2_modules();
        assert_eq!(dim_hom(&r, &r), 2); // a*id + b*(mult by x)
        assert_eq!(dim_hom(&k, &r), 1); // socle inclusion
        assert_eq!(dim_hom(&r, &k), 1); // top projection
        assert_eq!(dim_hom(&k, &k), 1);
        for t in hom_space(&k, &r) {
            assert!(is_module_map(&k, &r, &t));
        }
    }

    #[test]
    fn kernel_and_cokernel_of_socle_inclusion() {
        let (a, k, r) = a2_modules();
        let incl = &hom_space(&k, &r)[0];
        let (ker, ker_incl) = kernel(&k, &r, incl);
        assert_eq!(ker.dim(), 0);
        assert_eq!(ker_incl.cols(), 0);
        let (coker, proj) = cokernel(&k, &r, incl);
        a.validate_module(&coker).unwrap();
        // R / soc(R) is the simple module again: 1-dimensional, x acts by 0.
        assert_eq!(coker.dim(), 1);
        assert!(coker.action(1).is_zero());
        assert!(proj.mul(incl).is_zero());
    }

    #[test]
    fn rank_nullity_through_modules() {
        let (a, k, r) = a2_modules();
        let top = &hom_space(&r, &k)[0];
        let (ker, incl) = kernel(&r, &k, top);
        a.validate_module(&ker).unwrap();
        assert_eq!(ker.dim() + top.rank(), r.dim());
        let (im, im_incl) = image(&r, &k, top);
        a.validate_module(&im).unwrap();
        assert_eq!(im.dim(), 1);
        assert!(is_module_map(&ker, &r, &incl));
        assert!(is_module_map(&im, &k, &im_incl));
    }

    #[test]
    fn hom_with_zero_module_is_empty() {
        let (a, _, r) = a2_modules();
        let z = Module::zero(a.field(), a.dim());
        assert_eq!(dim_hom(&z, &r), 0);
        assert_eq!(dim_hom(&r, &z), 0);
    }
}
