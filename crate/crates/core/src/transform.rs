//! Basis changes, the structure-matrix transformation law, isomorphism
//! checks against an explicit witness, and seeded random basis changes.
//!
//! Convention: a transition matrix `T` sends the basis row `e` to `e' = e T`,
//! so column `i` of `T` holds the old coordinates of `e'_i`. With this
//! convention changing by `S` and then by `T` equals changing by `S T`.

use num_bigint::BigInt;

use crate::algebra::Algebra;
use crate::exactlin::{compound_star, index_pairs, invert, Matrix, Rational};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    t: Matrix,
}

impl TransitionMatrix {
    pub fn new(t: Matrix) -> Result<Self, Error> {
        if !t.is_square() {
            return Err(Error::DimensionMismatch("transition matrix must be square".into()));
        }
        invert(&t)?;
        Ok(TransitionMatrix { t })
    }

    pub fn identity(d: usize) -> Self {
        TransitionMatrix {
            t: Matrix::identity(d),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.t
    }

    pub fn into_matrix(self) -> Matrix {
        self.t
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    pub fn inverse(&self) -> TransitionMatrix {
        TransitionMatrix {
            t: invert(&self.t).expect("invertible by construction"),
        }
    }

    /// `self` followed by `next`: the matrix product `self * next`.
    pub fn then(&self, next: &TransitionMatrix) -> TransitionMatrix {
        TransitionMatrix {
            t: self.t.mul(&next.t).expect("same size"),
        }
    }
}

/// Structure constants of `a` in the basis `e T`, by multilinear expansion
/// of every new basis bracket.
pub fn change_basis_multilinear(a: &Algebra, t: &TransitionMatrix) -> Result<Algebra, Error> {
    a.in_basis(&t.t)
}

/// For `d = n + 2`: the structure matrix with columns indexed by omitted
/// pairs `(i, j)` in lexicographic order.
pub fn pair_structure_matrix(a: &Algebra) -> Result<Matrix, Error> {
    let d = a.dim();
    if d != a.arity() + 2 {
        return Err(Error::DimensionMismatch(format!(
            "pair-indexed structure matrix needs dim = arity + 2, got dim {d}, arity {}",
            a.arity()
        )));
    }
    let cols: Vec<Vec<Rational>> = index_pairs(d)
        .iter()
        .map(|&(i, j)| {
            let idx: Vec<usize> = (0..d).filter(|&m| m != i && m != j).collect();
            a.bracket_basis(&idx)
        })
        .collect();
    Ok(Matrix::from_columns(d, &cols))
}

/// The same change of basis computed through complementary minors:
/// `B' = T^{-1} B T_*`. Each new bracket of all-but-`(k, l)` expands by
/// Cauchy-Binet into the old brackets weighted by the minors of `T`, which
/// is `B T_*` in old coordinates; `T^{-1}` rewrites it in the new basis.
/// The transposed inverse reading fails the agreement test with the
/// multilinear path for non-symmetric `T`, so it is not used.
pub fn change_basis_matrix(a: &Algebra, t: &TransitionMatrix) -> Result<Algebra, Error> {
    let n = a.arity();
    let d = a.dim();
    if d != n + 2 || t.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "matrix path needs dim = arity + 2 = {} and a matching transition matrix",
            n + 2
        )));
    }
    let b = pair_structure_matrix(a)?;
    let star = compound_star(&t.t, n)?;
    let nb = invert(&t.t)?.mul(&b)?.mul(&star)?;
    let mut out = Algebra::abelian(n, d)?;
    for (col, &(i, j)) in index_pairs(d).iter().enumerate() {
        let idx: Vec<usize> = (0..d).filter(|&m| m != i && m != j).collect();
        out.set_bracket(&idx, nb.column(col))?;
    }
    Ok(out)
}

/// True iff rewriting `a2` in the basis given by `t` reproduces `a1`.
pub fn verify_isomorphism(a1: &Algebra, a2: &Algebra, t: &TransitionMatrix) -> Result<bool, Error> {
    if a1.arity() != a2.arity() || a1.dim() != a2.dim() || t.dim() != a1.dim() {
        return Err(Error::DimensionMismatch(
            "isomorphism check needs equal arity and dimension".into(),
        ));
    }
    Ok(&change_basis_multilinear(a2, t)? == a1)
}

/// 64-bit linear congruential generator (Knuth's MMIX constants); the high
/// bits are used for output.
#[derive(Clone, Debug)]
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed ^ 0x9E37_79B9_7F4A_7C15)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0
    }

    /// Uniform-ish integer in `[-bound, bound]`.
    pub fn next_in(&mut self, bound: u64) -> i64 {
        let span = 2 * bound + 1;
        ((self.next_u64() >> 33) % span) as i64 - bound as i64
    }
}

/// Deterministic invertible integer matrix with entries in
/// `[-entry_bound, entry_bound]`; singular draws are discarded and redrawn
/// from the same stream.
pub fn random_basis_change(dim: usize, seed: u64, entry_bound: u64) -> TransitionMatrix {
    assert!(entry_bound >= 1, "entry_bound must be at least 1");
    let mut rng = Lcg::new(seed);
    loop {
        let entries: Vec<Rational> = (0..dim * dim)
            .map(|_| Rational::from_integer(BigInt::from(rng.next_in(entry_bound))))
            .collect();
        let m = Matrix::from_vec(dim, dim, entries).expect("dim*dim entries");
        if let Ok(t) = TransitionMatrix::new(m) {
            return t;
        }
    }
}
