//! Direct-sum decomposition, isomorphism testing, and additive-closure
//! membership.
//!
//! The splitter is a small exact MeatAxe variant. To split a module it probes
//! endomorphisms (basis elements of End first, then seeded random
//! combinations); an endomorphism whose minimal polynomial has at least two
//! distinct irreducible factors yields a primary decomposition into kernel
//! summands. When probing stalls, the module is either certified
//! indecomposable by exhausting End for proper idempotents (a module is
//! decomposable iff End contains one), or reported `Inconclusive` when End is
//! too large to exhaust. The engine never returns a wrong decomposition: every
//! split is an exact change of basis, and uncertainty is only ever about
//! whether a reported leaf could split further.
//!
//! All randomness flows from an explicit seed, so results are reproducible.

use crate::algebra::Module;
use crate::hom::{hom_space, is_module_map};
use crate::mat::{solve_affine, Matrix};
use crate::poly::{factor, minimal_polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// How sure the engine is that a reported leaf is indecomposable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Certainty {
    Certified,
    Inconclusive,
}

/// Largest search space we are willing to enumerate exhaustively.
const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

/// Default number of random endomorphism probes before falling back to
/// exhaustive idempotent search.
pub const DEFAULT_PROBE_BUDGET: usize = 64;

#[derive(Debug, Clone)]
pub struct Summand {
    pub module: Arc<Module>,
    /// root.dim x summand.dim, a split monomorphism into the original module.
    pub inclusion: Matrix,
    /// summand.dim x root.dim, with projection * inclusion = id.
    pub projection: Matrix,
    pub certainty: Certainty,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Worst certainty over all summands.
    pub certainty: Certainty,
}

impl Decomposition {
    /// Checks the biproduct identities against the original module.
    pub fn validate(&self, root: &Module) -> bool {
        let f = root.field();
        let mut sum = Matrix::zeros(f, root.dim(), root.dim());
        for s in &self.summands {
            sum = sum.add(&s.inclusion.mul(&s.projection));
            if !is_module_map(&s.module, root, &s.inclusion) {
                return false;
            }
            if !s.projection.mul(&s.inclusion).is_identity() {
                return false;
            }
        }
        for (i, a) in self.summands.iter().enumerate() {
            for (j, b) in self.summands.iter().enumerate() {
                if i != j && !a.projection.mul(&b.inclusion).is_zero() {
                    return false;
                }
            }
        }
        sum.is_identity() || root.dim() == 0
    }

    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.module.dim()).collect()
    }
}

/// Splits `m` into (conjecturally) indecomposable summands.
pub fn decompose(m: &Module, seed: u64, probe_budget: usize) -> Decomposition {
    let id = Matrix::identity(m.field(), m.dim());
    let mut summands = Vec::new();
    split_rec(
        Arc::new(m.clone()),
        id.clone(),
        id,
        seed,
        probe_budget,
        &mut summands,
    );
    // Deterministic report order: by dimension, then by action entries.
    summands.sort_by(|a, b| {
        (a.module.dim(), a.module.key(), a.inclusion.entries().to_vec()).cmp(&(
            b.module.dim(),
            b.module.key(),
            b.inclusion.entries().to_vec(),
        ))
    });
    let certainty = summands
        .iter()
        .map(|s| s.certainty)
        .max()
        .unwrap_or(Certainty::Certified);
    Decomposition { summands, certainty }
}

fn split_rec(
    m: Arc<Module>,
    incl: Matrix,
    proj: Matrix,
    seed: u64,
    probe_budget: usize,
    out: &mut Vec<Summand>,
) {
    if m.dim() == 0 {
        return;
    }
    let end = hom_space(&m, &m);
    if end.len() == 1 {
        // End = F_p, local, so certainly indecomposable.
        out.push(Summand {
            module: m,
            inclusion: incl,
            projection: proj,
            certainty: Certainty::Certified,
        });
        return;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (m.dim() as u64).wrapping_mul(0x9e37));
    for probe in 0..probe_budget {
        let phi = if probe < end.len() {
            end[probe].clone()
        } else {
            random_combination(&end, &mut rng)
        };
        if let Some(blocks) = primary_split(&phi, &mut rng) {
            recurse_blocks(&m, &incl, &proj, blocks, seed, probe_budget, out);
            return;
        }
    }
    // Probing stalled. Settle the question exhaustively if feasible.
    let space = (m.field().p() as u64).checked_pow(end.len() as u32);
    match space {
        Some(n) if n <= EXHAUSTIVE_LIMIT => {
            if let Some(e) = find_idempotent(&m, &end) {
                let one_minus = Matrix::identity(m.field(), m.dim()).sub(&e);
                let blocks = vec![e.rref().kernel, one_minus.rref().kernel];
                recurse_blocks(&m, &incl, &proj, blocks, seed, probe_budget, out);
            } else {
                out.push(Summand {
                    module: m,
                    inclusion: incl,
                    projection: proj,
                    certainty: Certainty::Certified,
                });
            }
        }
        _ => out.push(Summand {
            module: m,
            inclusion: incl,
            projection: proj,
            certainty: Certainty::Inconclusive,
        }),
    }
}

fn random_combination(basis: &[Matrix], rng: &mut impl Rng) -> Matrix {
    let f = basis[0].field();
    let mut acc = Matrix::zeros(f, basis[0].rows(), basis[0].cols());
    for b in basis {
        let c = rng.gen_range(0..f.p());
        if c != 0 {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// If the minimal polynomial of `phi` has two or more distinct irreducible
/// factors f_i^{a_i}, returns the primary-component bases ker f_i(phi)^{a_i}.
fn primary_split(phi: &Matrix, rng: &mut impl Rng) -> Option<Vec<Matrix>> {
    let mp = minimal_polynomial(phi);
    let factors = factor(&mp, rng).ok()?;
    if factors.len() < 2 {
        return None;
    }
    let blocks: Vec<Matrix> = factors
        .iter()
        .map(|(g, mult)| {
            let mut power = g.clone();
            for _ in 1..*mult {
                power = power.mul(g);
            }
            power.eval_matrix(phi).rref().kernel
        })
        .collect();
    debug_assert_eq!(
        blocks.iter().map(Matrix::cols).sum::<usize>(),
        phi.rows(),
        "primary components must fill the space"
    );
    Some(blocks)
}

/// Restricts m to each block subspace and recurses, threading the inclusion
/// and projection back to the root module.
fn recurse_blocks(
    m: &Module,
    incl: &Matrix,
    proj: &Matrix,
    blocks: Vec<Matrix>,
    seed: u64,
    probe_budget: usize,
    out: &mut Vec<Summand>,
) {
    let f = m.field();
    let blocks: Vec<Matrix> = blocks.into_iter().filter(|b| b.cols() > 0).collect();
    let mut change = Matrix::zeros(f, m.dim(), 0);
    for b in &blocks {
        change = change.hstack(b);
    }
    let inv = change.inverse().expect("blocks form a basis");
    let mut offset = 0;
    for (k, b) in blocks.iter().enumerate() {
        let d = b.cols();
        let rows = inv.row_block(offset, d);
        offset += d;
        let actions = m
            .actions()
            .iter()
            .map(|a| {
                solve_affine(b, &a.mul(b))
                    .expect("same field and shape")
                    .expect("primary component is a submodule")
                    .particular
            })
            .collect();
        let sub = Module::new(f, d, actions);
        split_rec(
            Arc::new(sub),
            incl.mul(b),
            rows.mul(proj),
            seed.wrapping_add(0x517c_c1b7 * (k as u64 + 1)),
            probe_budget,
            out,
        );
    }
}

/// Exhaustively searches End(M) (given by `basis`) for a proper idempotent.
fn find_idempotent(m: &Module, basis: &[Matrix]) -> Option<Matrix> {
    let f = m.field();
    let p = f.p() as u64;
    let e = basis.len() as u32;
    let total = p.pow(e);
    let id = Matrix::identity(f, m.dim());
    for counter in 0..total {
        let mut c = counter;
        let mut phi = Matrix::zeros(f, m.dim(), m.dim());
        for b in basis {
            let digit = (c % p) as u32;
            c /= p;
            if digit != 0 {
                phi = phi.add(&b.scale(digit));
            }
        }
        if phi.is_zero() || phi == id {
            continue;
        }
        if phi.mul(&phi) == phi {
            return Some(phi);
        }
    }
    None
}

/// Outcome of an isomorphism test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoCheck {
    /// An invertible intertwiner witnessing the isomorphism.
    Isomorphic(Matrix),
    NotIsomorphic,
    /// The invertibility search was not exhaustive and found nothing.
    Unknown,
}

impl IsoCheck {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoCheck::Isomorphic(_))
    }
}

/// Tests M = N by searching Hom(M, N) for an invertible element: cheap
/// invariants first, then basis elements, seeded random combinations, and an
/// exhaustive sweep when the hom space is small enough.
pub fn module_iso(m: &Module, n: &Module, seed: u64) -> IsoCheck {
    if m.dim() != n.dim() {
        return IsoCheck::NotIsomorphic;
    }
    if m.dim() == 0 {
        return IsoCheck::Isomorphic(Matrix::zeros(m.field(), 0, 0));
    }
    let fwd = hom_space(m, n);
    if fwd.is_empty() || hom_space(n, m).len() != fwd.len() {
        return IsoCheck::NotIsomorphic;
    }
    for t in &fwd {
        if t.is_invertible() {
            return IsoCheck::Isomorphic(t.clone());
        }
    }
    let f = m.field();
    let p = f.p() as u64;
    let total = p.checked_pow(fwd.len() as u32);
    if let Some(total) = total.filter(|&t| t <= EXHAUSTIVE_LIMIT) {
        for counter in 0..total {
            let mut c = counter;
            let mut phi = Matrix::zeros(f, n.dim(), m.dim());
            for b in &fwd {
                let digit = (c % p) as u32;
                c /= p;
                if digit != 0 {
                    phi = phi.add(&b.scale(digit));
                }
            }
            if phi.is_invertible() {
                return IsoCheck::Isomorphic(phi);
            }
        }
        return IsoCheck::NotIsomorphic;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..128 {
        let phi = random_combination(&fwd, &mut rng);
        if phi.is_invertible() {
            return IsoCheck::Isomorphic(phi);
        }
    }
    IsoCheck::Unknown
}

/// Outcome of an additive-closure membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AddMembership {
    /// Indices into the pool, one per summand of the tested module.
    Inside(Vec<usize>),
    /// A summand dimension that matches nothing in the pool.
    Outside(usize),
    Unknown,
}

impl AddMembership {
    pub fn is_inside(&self) -> bool {
        matches!(self, AddMembership::Inside(_))
    }
}

/// Tests whether `x` lies in add(pool), where `pool` lists indecomposables.
/// Decomposes x and matches each summand against the pool up to isomorphism.
pub fn in_add(x: &Module, pool: &[Arc<Module>], seed: u64) -> AddMembership {
    let dec = decompose(x, seed, DEFAULT_PROBE_BUDGET);
    let mut matched = Vec::new();
    let mut uncertain = dec.certainty == Certainty::Inconclusive;
    'summands: for s in &dec.summands {
        for (i, cand) in pool.iter().enumerate() {
            match module_iso(&s.module, cand, seed) {
                IsoCheck::Isomorphic(_) => {
                    matched.push(i);
                    continue 'summands;
                }
                IsoCheck::NotIsomorphic => {}
                IsoCheck::Unknown => uncertain = true,
            }
        }
        return if uncertain {
            AddMembership::Unknown
        } else {
            AddMembership::Outside(s.module.dim())
        };
    }
    if uncertain {
        // A leaf that might split further could still leave add(pool).
        AddMembership::Unknown
    } else {
        AddMembership::Inside(matched)
    }
}

/// Reduces a list of modules to a pool of pairwise non-isomorphic
/// indecomposable summands, in deterministic order.
pub fn indecomposable_pool(mods: &[Arc<Module>], seed: u64) -> Vec<Arc<Module>> {
    let mut pool: Vec<Arc<Module>> = Vec::new();
    for m in mods {
        let dec = decompose(m, seed, DEFAULT_PROBE_BUDGET);
        for s in dec.summands {
            let known = pool.iter().any(|p| module_iso(p, &s.module, seed).is_iso());
            if !known {
                pool.push(s.module);
            }
        }
    }
    pool.sort_by_key(|m| (m.dim(), m.key()));
    pool
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    /// F_2[x]/(x^4) and its indecomposables M_i = F_2[x]/(x^i), x acting as
    /// the nilpotent Jordan block J_i.
    fn a4_setup() -> (Algebra, Vec<Module>) {
        let a = Algebra::truncated_polynomial(2, 4).unwrap();
        let f = a.field();
        let mods: Vec<Module> = (1..=4)
            .map(|i| {
                let mut x = Matrix::zeros(f, i, i);
                for r in 1..i {
                    x.set(r, r - 1, 1);
                }
                // The basis element x^j acts as the j-th power of the block.
                let mut acts = vec![Matrix::identity(f, i)];
                let mut cur = Matrix::identity(f, i);
                for _ in 1..4 {
                    cur = cur.mul(&x);
                    acts.push(cur.clone());
                }
                let m = Module::new(f, i, acts);
                a.validate_module(&m).unwrap();
                m
            })
            .collect();
        (a, mods)
    }

    #[test]
    fn regular_module_is_certified_indecomposable() {
        let (a, mods) = a4_setup();
        let reg = a.regular_module();
        let dec = decompose(&reg, 1, DEFAULT_PROBE_BUDGET);
        assert_eq!(dec.dims(), vec![4]);
        assert_eq!(dec.certainty, Certainty::Certified);
        assert!(dec.validate(&reg));
        // And it is the same module as M_4 up to isomorphism.
        assert!(module_iso(&reg, &mods[3], 1).is_iso());
    }

    #[test]
    fn mixed_sum_splits_into_parts() {
        let (a, mods) = a4_setup();
        let s = mods[0].direct_sum(&mods[1]).direct_sum(&mods[2]);
        a.validate_module(&s).unwrap();
        let dec = decompose(&s, 5, DEFAULT_PROBE_BUDGET);
        assert_eq!(dec.dims(), vec![1, 2, 3]);
        assert_eq!(dec.certainty, Certainty::Certified);
        assert!(dec.validate(&s));
        for (sm, expect) in dec.summands.iter().zip([&mods[0], &mods[1], &mods[2]]) {
            assert!(module_iso(&sm.module, expect, 7).is_iso());
        }
    }

    #[test]
    fn isotypic_square_splits() {
        let (_, mods) = a4_setup();
        let s = mods[1].direct_sum(&mods[1]);
        let dec = decompose(&s, 3, DEFAULT_PROBE_BUDGET);
        assert_eq!(dec.dims(), vec![2, 2]);
        assert!(dec.validate(&s));
        assert!(module_iso(&dec.summands[0].module, &mods[1], 1).is_iso());
    }

    #[test]
    fn conjugated_module_is_isomorphic_but_not_equal() {
        let a = Algebra::truncated_polynomial(2, 2).unwrap();
        let f = a.field();
        let down = Module::new(
            f,
            2,
            vec![Matrix::identity(f, 2), Matrix::from_rows(f, 2, 2, &[0, 0, 1, 0])],
        );
        let up = Module::new(
            f,
            2,
            vec![Matrix::identity(f, 2), Matrix::from_rows(f, 2, 2, &[0, 1, 0, 0])],
        );
        a.validate_module(&down).unwrap();
        a.validate_module(&up).unwrap();
        assert_ne!(down, up);
        let IsoCheck::Isomorphic(t) = module_iso(&down, &up, 1) else {
            panic!("expected an isomorphism");
        };
        assert!(t.is_invertible());
        assert!(is_module_map(&down, &up, &t));
    }

    #[test]
    fn dual_of_self_injective_algebra_is_the_regular_module() {
        let a = Algebra::truncated_polynomial(2, 4).unwrap();
        assert!(module_iso(&a.regular_module(), &a.dual_regular_module(), 1).is_iso());
    }

    #[test]
    fn add_membership_distinguishes() {
        let (_, mods) = a4_setup();
        let pool: Vec<Arc<Module>> =
            mods[..2].iter().map(|m| Arc::new(m.clone())).collect();
        let inside = mods[0].direct_sum(&mods[1]).direct_sum(&mods[0]);
        assert!(matches!(in_add(&inside, &pool, 1), AddMembership::Inside(v) if v.len() == 3));
        assert_eq!(in_add(&mods[2], &pool, 1), AddMembership::Outside(3));
    }

    #[test]
    fn pool_deduplicates_up_to_iso() {
        let (a, mods) = a4_setup();
        let items = vec![
            Arc::new(mods[1].direct_sum(&mods[0])),
            Arc::new(mods[1].clone()),
            Arc::new(a.regular_module()),
        ];
        let pool = indecomposable_pool(&items, 1);
        assert_eq!(pool.iter().map(|m| m.dim()).collect::<Vec<_>>(), vec![1, 2, 4]);
    }
}
