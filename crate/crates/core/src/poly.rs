//! Univariate polynomials over F_p, with seeded factorization.
//!
//! The decomposition engine splits a module by factoring minimal polynomials
//! of endomorphisms, so this module provides exactly that pipeline:
//! arithmetic and gcd, squarefree decomposition (handling the char-p case
//! where f' = 0), distinct-degree splitting, Cantor-Zassenhaus equal-degree
//! splitting driven by a caller-supplied RNG, and Krylov-style minimal
//! polynomials of matrices.
//!
//! Coefficients are stored little-endian with no trailing zeros; the zero
//! polynomial has an empty coefficient vector.

use crate::field::Fp;
use crate::mat::{solve_affine, Matrix};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("equal-degree splitting made no progress within the attempt budget")]
    SplitStalled,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    field: Fp,
    /// coeffs[i] is the coefficient of x^i; empty means zero.
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(field: Fp) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Fp) -> Self {
        Poly { field, coeffs: vec![1] }
    }

    pub fn x(field: Fp) -> Self {
        Poly { field, coeffs: vec![0, 1] }
    }

    pub fn constant(field: Fp, c: u64) -> Self {
        Poly::from_coeffs(field, &[field.reduce(c)])
    }

    /// Little-endian coefficients, reduced and trimmed.
    pub fn from_coeffs(field: Fp, coeffs: &[u32]) -> Self {
        let mut c: Vec<u32> = coeffs.iter().map(|&x| field.reduce(x as u64)).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { field, coeffs: c }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c: Vec<u32> = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::from_coeffs(f, &c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let f = self.field;
        let c: Vec<u32> = self.coeffs.iter().map(|&x| f.neg(x)).collect();
        Poly { field: f, coeffs: c }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut c = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, &c)
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.field;
        let co: Vec<u32> = self.coeffs.iter().map(|&x| f.mul(x, c)).collect();
        Poly::from_coeffs(f, &co)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("leading coefficient is nonzero");
        self.scale(inv)
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        let f = self.field;
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let d = divisor.degree().unwrap();
        let lead_inv = f.inv(divisor.leading()).expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1 - d;
            let c = f.mul(*rem.last().unwrap(), lead_inv);
            if c != 0 {
                quot[k] = c;
                for (j, &b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = f.sub(rem[k + j], f.mul(c, b));
                }
            }
            rem.pop();
        }
        Ok((Poly::from_coeffs(f, &quot), Poly::from_coeffs(f, &rem)))
    }

    pub fn rem(&self, modulus: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divmod(modulus)?.1)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("modulus is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let g = self.gcd(other);
        let (q, r) = self.mul(other).divmod(&g).expect("gcd is nonzero");
        debug_assert!(r.is_zero());
        q.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        if self.coeffs.len() <= 1 {
            return Poly::zero(f);
        }
        let c: Vec<u32> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(f.reduce(i as u64), a))
            .collect();
        Poly::from_coeffs(f, &c)
    }

    /// self^e mod modulus, by square and multiply.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Result<Poly, PolyError> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            base = base.mul(&base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Evaluates at the matrix `m`: sum coeffs[i] * m^i.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(m.field(), n, n);
        let mut power = Matrix::identity(m.field(), n);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&power.scale(c));
            }
            if i + 1 < self.coeffs.len() {
                power = power.mul(m);
            }
        }
        acc
    }
}

/// p-th root of f(x) = g(x^p): over F_p the Frobenius fixes coefficients, so
/// the root just gathers the coefficients at indices divisible by p.
fn pth_root(f: &Poly) -> Poly {
    let p = f.field().p() as usize;
    let c: Vec<u32> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(i, _)| i % p == 0)
        .map(|(_, &x)| x)
        .collect();
    Poly::from_coeffs(f.field(), &c)
}

/// Squarefree decomposition of a monic polynomial: pairs (g, m) with g monic
/// squarefree, pairwise coprime, and f = prod g^m.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let p = f.field().p() as usize;
    let mut out: Vec<(Poly, usize)> = Vec::new();
    let f = f.monic();
    if f.degree() == Some(0) {
        return out;
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = u^p with u = pth_root(f).
        for (g, m) in squarefree_decomposition(&pth_root(&f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&deriv);
    let mut w = f.divmod(&c).expect("gcd is nonzero").0;
    let mut i = 1usize;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.divmod(&y).expect("gcd is nonzero").0;
        if fac.degree().is_some_and(|d| d > 0) {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.divmod(&w).expect("gcd is nonzero").0;
        i += 1;
    }
    if c.degree().is_some_and(|d| d > 0) {
        for (g, m) in squarefree_decomposition(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree splitting of a monic squarefree polynomial: pairs (g, d)
/// where g is the product of all irreducible factors of degree d.
pub fn distinct_degree_split(f: &Poly) -> Result<Vec<(Poly, usize)>, PolyError> {
    let field = f.field();
    let p = field.p() as u64;
    let mut out = Vec::new();
    let mut rest = f.monic();
    // h tracks x^(p^d) mod f, advanced by one Frobenius power per round.
    let mut h = Poly::x(field).rem(f)?;
    let mut d = 0usize;
    while rest.degree().is_some_and(|deg| deg > 0) {
        d += 1;
        if rest.degree().unwrap() < 2 * d {
            // What is left is a single irreducible factor.
            out.push((rest.clone(), rest.degree().unwrap()));
            break;
        }
        h = h.pow_mod(p, f)?;
        let g = rest.gcd(&h.sub(&Poly::x(field)));
        if g.degree().is_some_and(|deg| deg > 0) {
            out.push((g.clone(), d));
            rest = rest.divmod(&g)?.0;
        }
    }
    Ok(out)
}

/// Norm map r * r^p * ... * r^(p^(d-1)) mod f, used to reduce the huge
/// Cantor-Zassenhaus exponent (p^d - 1)/2 to the small exponent (p - 1)/2.
fn norm_mod(r: &Poly, d: usize, f: &Poly) -> Result<Poly, PolyError> {
    let p = f.field().p() as u64;
    let mut acc = r.rem(f)?;
    let mut frob = r.rem(f)?;
    for _ in 1..d {
        frob = frob.pow_mod(p, f)?;
        acc = acc.mul(&frob).rem(f)?;
    }
    Ok(acc)
}

/// Trace map r + r^2 + r^4 + ... + r^(2^(d-1)) mod f, the char-2 splitter.
fn trace_mod(r: &Poly, d: usize, f: &Poly) -> Result<Poly, PolyError> {
    let mut acc = r.rem(f)?;
    let mut sq = r.rem(f)?;
    for _ in 1..d {
        sq = sq.mul(&sq).rem(f)?;
        acc = acc.add(&sq);
    }
    Ok(acc)
}

const EDF_ATTEMPTS: usize = 256;

/// Cantor-Zassenhaus equal-degree splitting: f is monic squarefree with all
/// irreducible factors of degree d. Randomness comes only from `rng`, so the
/// full factorization is deterministic for a fixed seed.
pub fn equal_degree_split(
    f: &Poly,
    d: usize,
    rng: &mut impl Rng,
) -> Result<Vec<Poly>, PolyError> {
    let field = f.field();
    let deg = f.degree().expect("nonzero by construction");
    if deg == d {
        return Ok(vec![f.monic()]);
    }
    for _ in 0..EDF_ATTEMPTS {
        let coeffs: Vec<u32> = (0..deg).map(|_| rng.gen_range(0..field.p())).collect();
        let r = Poly::from_coeffs(field, &coeffs);
        if r.degree().is_none_or(|dd| dd < 1) {
            continue;
        }
        let candidate = if field.p() == 2 {
            trace_mod(&r, d, f)?
        } else {
            let n = norm_mod(&r, d, f)?;
            let s = n.pow_mod((field.p() as u64 - 1) / 2, f)?;
            s.sub(&Poly::one(field))
        };
        let g = f.gcd(&candidate);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < deg {
            let h = f.divmod(&g)?.0;
            let mut out = equal_degree_split(&g, d, rng)?;
            out.extend(equal_degree_split(&h, d, rng)?);
            return Ok(out);
        }
    }
    Err(PolyError::SplitStalled)
}

/// Full factorization into monic irreducibles with multiplicities, sorted
/// by (degree, coefficients) for deterministic output.
pub fn factor(f: &Poly, rng: &mut impl Rng) -> Result<Vec<(Poly, usize)>, PolyError> {
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree_split(&g)? {
            for irr in equal_degree_split(&h, d, rng)? {
                out.push((irr, m));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Minimal polynomial of a square matrix: stack vec(M^0), vec(M^1), ... as
/// columns and stop at the first linear dependence; its coefficients read off
/// the monic minimal polynomial.
pub fn minimal_polynomial(m: &Matrix) -> Poly {
    let f = m.field();
    let n = m.rows();
    assert_eq!(n, m.cols(), "minimal polynomial needs a square matrix");
    if n == 0 {
        return Poly::one(f);
    }
    let vec_of = |mm: &Matrix| -> Matrix {
        let mut v = Matrix::zeros(f, n * n, 1);
        for i in 0..n {
            for j in 0..n {
                v.set(i * n + j, 0, mm.at(i, j));
            }
        }
        v
    };
    let mut power = Matrix::identity(f, n);
    let mut basis = vec_of(&power);
    loop {
        power = power.mul(m);
        let target = vec_of(&power);
        if let Some(sol) = solve_affine(&basis, &target).expect("same field and shape") {
            // M^k = sum_i c_i M^i, so minpoly = x^k - sum c_i x^i.
            let k = basis.cols();
            let mut coeffs: Vec<u32> = (0..k).map(|i| f.neg(sol.particular.at(i, 0))).collect();
            coeffs.push(1);
            return Poly::from_coeffs(f, &coeffs);
        }
        basis = basis.hstack(&target);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn divmod_reconstructs() {
        let f = fp(5);
        let a = Poly::from_coeffs(f, &[1, 0, 3, 4, 2]);
        let b = Poly::from_coeffs(f, &[2, 1, 1]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(b.mul(&q).add(&r), a);
        assert!(r.degree() < b.degree());
        assert_eq!(a.divmod(&Poly::zero(f)), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = fp(3);
        let shared = Poly::from_coeffs(f, &[1, 1]); // x + 1
        let a = shared.mul(&Poly::from_coeffs(f, &[2, 0, 1]));
        let b = shared.mul(&Poly::from_coeffs(f, &[1, 2]));
        let g = a.gcd(&b);
        assert!(a.rem(&g).unwrap().is_zero());
        assert!(b.rem(&g).unwrap().is_zero());
        assert!(g.rem(&shared).unwrap().is_zero());
    }

    /// Oracle: x^p - x splits into exactly the p linear factors x - c.
    #[test]
    fn factor_splits_x_p_minus_x() {
        for p in [2u64, 3, 5] {
            let f = fp(p);
            let mut coeffs = vec![0u32; p as usize + 1];
            coeffs[1] = f.neg(1);
            coeffs[p as usize] = 1;
            let poly = Poly::from_coeffs(f, &coeffs);
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let factors = factor(&poly, &mut rng).unwrap();
            assert_eq!(factors.len(), p as usize);
            for (g, m) in &factors {
                assert_eq!(*m, 1);
                assert_eq!(g.degree(), Some(1));
            }
            // Reassemble and compare.
            let mut prod = Poly::one(f);
            for (g, m) in &factors {
                for _ in 0..*m {
                    prod = prod.mul(g);
                }
            }
            assert_eq!(prod, poly);
        }
    }

    #[test]
    fn factor_handles_char_p_powers() {
        // (x + 1)^2 = x^2 + 1 over F_2: derivative vanishes, p-th root path.
        let f = fp(2);
        let poly = Poly::from_coeffs(f, &[1, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let factors = factor(&poly, &mut rng).unwrap();
        assert_eq!(factors, vec![(Poly::from_coeffs(f, &[1, 1]), 2)]);
    }

    #[test]
    fn factor_finds_irreducible_quadratic() {
        // x^2 + 1 over F_3 is irreducible (-1 is not a square mod 3).
        let f = fp(3);
        let poly = Poly::from_coeffs(f, &[1, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let factors = factor(&poly, &mut rng).unwrap();
        assert_eq!(factors, vec![(poly, 1)]);
    }

    #[test]
    fn factor_mixed_multiplicities() {
        // x^2 (x + 1)^3 over F_5, reassembled after factoring.
        let f = fp(5);
        let x = Poly::x(f);
        let xp1 = Poly::from_coeffs(f, &[1, 1]);
        let poly = x.mul(&x).mul(&xp1).mul(&xp1).mul(&xp1);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let factors = factor(&poly, &mut rng).unwrap();
        assert_eq!(factors, vec![(x, 2), (xp1, 3)]);
    }

    #[test]
    fn minimal_polynomial_oracles() {
        let f = fp(3);
        // Zero matrix: x. Identity: x - 1. Nilpotent Jordan block J_3: x^3.
        let z = Matrix::zeros(f, 2, 2);
        assert_eq!(minimal_polynomial(&z), Poly::x(f));
        let id = Matrix::identity(f, 3);
        assert_eq!(minimal_polynomial(&id), Poly::from_coeffs(f, &[2, 1]));
        let j = Matrix::from_rows(f, 3, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]);
        assert_eq!(minimal_polynomial(&j), Poly::from_coeffs(f, &[0, 0, 0, 1]));
        // Companion matrix of x^2 + x + 2 over F_3 has that minimal polynomial.
        let c = Matrix::from_rows(f, 2, 2, &[0, 1, 1, 2]);
        let mp = minimal_polynomial(&c);
        assert!(mp.eval_matrix(&c).is_zero());
        assert_eq!(mp.degree(), Some(2));
    }
}
