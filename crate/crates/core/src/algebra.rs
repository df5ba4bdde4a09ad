//! n-Lie algebras by structure constants.
//!
//! Brackets are stored only on strictly ascending index combinations
//! (0-based internally); every other ordering is recovered with the sign of
//! the sorting permutation, so antisymmetry holds by construction.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactlin::{self, is_zero_vec, kernel_basis, span_basis, unit, Matrix, Rational};
use crate::exec::par_map;
use crate::transform::TransitionMatrix;
use crate::Error;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra {
    arity: usize,
    dim: usize,
    table: BTreeMap<Vec<usize>, Vec<Rational>>,
}

/// All strictly ascending `k`-subsets of `0..d` in lexicographic order.
pub fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            if d - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= d {
        rec(0, d, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Sign of the permutation sorting `idx` (distinct entries assumed).
pub fn sort_sign(idx: &[usize]) -> i32 {
    let mut s = 1;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] > idx[j] {
                s = -s;
            }
        }
    }
    s
}

fn add_scaled(acc: &mut [Rational], v: &[Rational], c: &Rational) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

impl Algebra {
    /// The abelian algebra. Dimensions below the arity are allowed (they
    /// arise as cores after splitting off a central part) but can hold no
    /// brackets.
    pub fn abelian(arity: usize, dim: usize) -> Result<Self, Error> {
        if arity < 2 {
            return Err(Error::UnsupportedArity(arity));
        }
        Ok(Algebra {
            arity,
            dim,
            table: BTreeMap::new(),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero brackets keyed by ascending 0-based index combinations.
    pub fn table(&self) -> &BTreeMap<Vec<usize>, Vec<Rational>> {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_empty()
    }

    /// Sets `[e_{i_1}, ..., e_{i_n}] = value` for distinct 0-based indices in
    /// any order; the stored ascending entry absorbs the permutation sign.
    pub fn set_bracket(&mut self, indices: &[usize], value: Vec<Rational>) -> Result<(), Error> {
        if indices.len() != self.arity || value.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "bracket needs {} indices and a vector of length {}",
                self.arity, self.dim
            )));
        }
        if indices.iter().any(|&i| i >= self.dim) {
            return Err(Error::DimensionMismatch("basis index out of range".into()));
        }
        let mut key = indices.to_vec();
        key.sort_unstable();
        if key.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidAlgebra("repeated index in a bracket".into()));
        }
        let value = if sort_sign(indices) < 0 {
            value.into_iter().map(|x| -x).collect()
        } else {
            value
        };
        if is_zero_vec(&value) {
            self.table.remove(&key);
        } else {
            self.table.insert(key, value);
        }
        Ok(())
    }

    /// Bracket of basis vectors with the given 0-based indices.
    pub fn bracket_basis(&self, idx: &[usize]) -> Vec<Rational> {
        let mut key = idx.to_vec();
        key.sort_unstable();
        if key.windows(2).any(|w| w[0] == w[1]) {
            return vec![Rational::zero(); self.dim];
        }
        match self.table.get(&key) {
            None => vec![Rational::zero(); self.dim],
            Some(v) if sort_sign(idx) < 0 => v.iter().map(|x| -x).collect(),
            Some(v) => v.clone(),
        }
    }

    /// Full multilinear expansion of `[x_1, ..., x_n]`.
    pub fn bracket_eval(&self, args: &[Vec<Rational>]) -> Result<Vec<Rational>, Error> {
        if args.len() != self.arity || args.iter().any(|a| a.len() != self.dim) {
            return Err(Error::DimensionMismatch(format!(
                "bracket takes {} vectors of length {}",
                self.arity, self.dim
            )));
        }
        let mut out = vec![Rational::zero(); self.dim];
        if self.table.is_empty() {
            return Ok(out);
        }
        let support: Vec<Vec<usize>> = args
            .iter()
            .map(|a| (0..self.dim).filter(|&i| !a[i].is_zero()).collect())
            .collect();
        let mut idx = Vec::with_capacity(self.arity);
        self.expand(args, &support, &mut idx, Rational::one(), &mut out);
        Ok(out)
    }

    fn expand(
        &self,
        args: &[Vec<Rational>],
        support: &[Vec<usize>],
        idx: &mut Vec<usize>,
        coef: Rational,
        out: &mut [Rational],
    ) {
        let p = idx.len();
        if p == self.arity {
            let mut key = idx.clone();
            key.sort_unstable();
            if let Some(v) = self.table.get(&key) {
                let c = if sort_sign(idx) < 0 { -coef } else { coef };
                add_scaled(out, v, &c);
            }
            return;
        }
        for &i in &support[p] {
            if idx.contains(&i) {
                continue;
            }
            idx.push(i);
            self.expand(args, support, idx, &coef * &args[p][i], out);
            idx.pop();
        }
    }

    /// The `d x C(d, n)` matrix whose columns are the brackets of the
    /// ascending basis combinations in lexicographic order.
    pub fn structure_matrix(&self) -> Matrix {
        let cols: Vec<Vec<Rational>> = combinations(self.dim, self.arity)
            .iter()
            .map(|c| self.bracket_basis(c))
            .collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Matrix of `y -> [x_1, ..., x_{n-1}, y]`.
    pub fn left_multiplication(&self, xs: &[Vec<Rational>]) -> Result<Matrix, Error> {
        if xs.len() + 1 != self.arity {
            return Err(Error::DimensionMismatch(format!(
                "left multiplication takes {} vectors",
                self.arity - 1
            )));
        }
        let mut cols = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let mut args = xs.to_vec();
            args.push(unit(self.dim, j));
            cols.push(self.bracket_eval(&args)?);
        }
        Ok(Matrix::from_columns(self.dim, &cols))
    }

    /// The same algebra written in the basis whose i-th vector is column i
    /// of `p`: `e'_i = sum_m p[m][i] e_m`.
    pub fn in_basis(&self, p: &Matrix) -> Result<Algebra, Error> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "basis change must be {0}x{0}",
                self.dim
            )));
        }
        let inv = exactlin::invert(p)?;
        let cols = p.columns();
        let combos = combinations(self.dim, self.arity);
        let vals = par_map(&combos, |c| {
            let args: Vec<Vec<Rational>> = c.iter().map(|&i| cols[i].clone()).collect();
            let v = self.bracket_eval(&args).expect("shapes checked");
            inv.mul_vec(&v)
        });
        let mut out = Algebra::abelian(self.arity, self.dim)?;
        for (c, v) in combos.into_iter().zip(vals) {
            if !is_zero_vec(&v) {
                out.table.insert(c, v);
            }
        }
        Ok(out)
    }

    /// Restriction to the first `k` basis vectors. Every bracket among them
    /// must land in their span.
    pub fn leading_subalgebra(&self, k: usize) -> Result<Algebra, Error> {
        let mut out = Algebra::abelian(self.arity, k)?;
        for (key, v) in &self.table {
            if key.iter().all(|&i| i < k) {
                if v[k..].iter().any(|x| !x.is_zero()) {
                    return Err(Error::InvalidAlgebra(
                        "leading block is not closed under the bracket".into(),
                    ));
                }
                out.table.insert(key.clone(), v[..k].to_vec());
            }
        }
        Ok(out)
    }
}

/// One violated instance of the generalized Jacobi identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub residual: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub violations: Vec<JacobiViolation>,
}

impl JacobiReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn jacobi_residual(a: &Algebra, x: &[usize], y: &[usize]) -> Vec<Rational> {
    let d = a.dim;
    let ys: Vec<Vec<Rational>> = y.iter().map(|&i| unit(d, i)).collect();
    let with_first = |v: Vec<Rational>| {
        let mut args = vec![v];
        args.extend(ys.iter().cloned());
        a.bracket_eval(&args).expect("shapes")
    };
    let mut res = with_first(a.bracket_basis(x));
    for p in 0..x.len() {
        let inner = with_first(unit(d, x[p]));
        if is_zero_vec(&inner) {
            continue;
        }
        let mut args: Vec<Vec<Rational>> = x.iter().map(|&i| unit(d, i)).collect();
        args[p] = inner;
        let t = a.bracket_eval(&args).expect("shapes");
        for (r, v) in res.iter_mut().zip(t) {
            *r -= v;
        }
    }
    res
}

/// Checks the generalized Jacobi identity on all basis instances. The
/// y-tuples run over strictly ascending combinations only: a repeated y
/// index kills both sides, and reordering y only flips a common sign.
pub fn check_jacobi(a: &Algebra) -> JacobiReport {
    let n = a.arity;
    let xs = combinations(a.dim, n);
    let ys = combinations(a.dim, n - 1);
    let per_x = par_map(&xs, |x| {
        ys.iter()
            .filter_map(|y| {
                let r = jacobi_residual(a, x, y);
                (!is_zero_vec(&r)).then(|| JacobiViolation {
                    x: x.clone(),
                    y: y.clone(),
                    residual: r,
                })
            })
            .collect::<Vec<_>>()
    });
    JacobiReport {
        violations: per_x.into_iter().flatten().collect(),
    }
}

/// A linear subspace with a canonical (reduced row echelon) basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Self {
        Subspace {
            ambient_dim,
            basis: span_basis(ambient_dim, vectors),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut all = self.basis.clone();
        all.push(v.to_vec());
        span_basis(self.ambient_dim, &all).len() == self.basis.len()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &all)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.basis.is_empty() || other.basis.is_empty() {
            return Subspace::span(self.ambient_dim, &[]);
        }
        // Solve sum a_i u_i - sum b_j w_j = 0 and keep sum a_i u_i.
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()));
        let m = Matrix::from_columns(self.ambient_dim, &cols);
        let vecs: Vec<Vec<Rational>> = kernel_basis(&m)
            .iter()
            .map(|k| {
                let mut v = vec![Rational::zero(); self.ambient_dim];
                for (i, u) in self.basis.iter().enumerate() {
                    add_scaled(&mut v, u, &k[i]);
                }
                v
            })
            .collect();
        Subspace::span(self.ambient_dim, &vecs)
    }
}

/// The derived algebra: the span of all brackets.
pub fn derived_subalgebra(a: &Algebra) -> Subspace {
    let vals: Vec<Vec<Rational>> = a.table.values().cloned().collect();
    Subspace::span(a.dim, &vals)
}

/// `x` is central iff `[x, e_{y_1}, ..., e_{y_{n-1}}] = 0` for every
/// ascending tuple `y`.
pub fn center(a: &Algebra) -> Subspace {
    let d = a.dim;
    if a.is_abelian() {
        let all: Vec<Vec<Rational>> = (0..d).map(|i| unit(d, i)).collect();
        return Subspace::span(d, &all);
    }
    let ys = combinations(d, a.arity - 1);
    let blocks = par_map(&ys, |y| {
        let cols: Vec<Vec<Rational>> = (0..d)
            .map(|j| {
                let mut idx = vec![j];
                idx.extend_from_slice(y);
                a.bracket_basis(&idx)
            })
            .collect();
        Matrix::from_columns(d, &cols).to_rows()
    });
    let rows: Vec<Vec<Rational>> = blocks.into_iter().flatten().collect();
    let m = Matrix::from_rows(rows).expect("equal rows");
    Subspace::span(d, &kernel_basis(&m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace {
    pub dim: usize,
    pub basis: Vec<Matrix>,
}

/// Coefficient rows of the derivation condition on one basis combination.
/// Unknown `k * d + j` is the entry `D[k][j]` (so `D e_j = sum_k D[k][j] e_k`).
fn derivation_rows(a: &Algebra, x: &[usize]) -> Vec<Vec<Rational>> {
    let d = a.dim;
    let mut eq = vec![vec![Rational::zero(); d * d]; d];
    let b = a.bracket_basis(x);
    for (j, bj) in b.iter().enumerate() {
        if bj.is_zero() {
            continue;
        }
        for (k, row) in eq.iter_mut().enumerate() {
            row[k * d + j] += bj;
        }
    }
    for (pos, &j) in x.iter().enumerate() {
        for k in 0..d {
            let mut idx = x.to_vec();
            idx[pos] = k;
            let r = a.bracket_basis(&idx);
            for (m, rm) in r.iter().enumerate() {
                if !rm.is_zero() {
                    eq[m][k * d + j] -= rm;
                }
            }
        }
    }
    eq
}

/// Der(A): all `D` with `D[x_1..x_n] = sum_i [x_1, .., D x_i, .., x_n]`.
pub fn derivation_algebra(a: &Algebra) -> DerivationSpace {
    let d = a.dim;
    let xs = combinations(d, a.arity);
    let blocks = par_map(&xs, |x| derivation_rows(a, x));
    let rows: Vec<Vec<Rational>> = blocks.into_iter().flatten().collect();
    let basis: Vec<Vec<Rational>> = if rows.is_empty() {
        (0..d * d).map(|i| unit(d * d, i)).collect()
    } else {
        kernel_basis(&Matrix::from_rows(rows).expect("equal rows"))
    };
    let basis: Vec<Matrix> = basis
        .into_iter()
        .map(|v| Matrix::from_vec(d, d, v).expect("d*d entries"))
        .collect();
    DerivationSpace {
        dim: basis.len(),
        basis,
    }
}

pub fn check_derivation(a: &Algebra, dmat: &Matrix) -> Result<bool, Error> {
    let d = a.dim;
    if dmat.rows() != d || dmat.cols() != d {
        return Err(Error::DimensionMismatch(format!("derivation must be {d}x{d}")));
    }
    let cols = dmat.columns();
    for x in combinations(d, a.arity) {
        let mut res = dmat.mul_vec(&a.bracket_basis(&x));
        for p in 0..x.len() {
            let mut args: Vec<Vec<Rational>> = x.iter().map(|&i| unit(d, i)).collect();
            args[p] = cols[x[p]].clone();
            let t = a.bracket_eval(&args)?;
            for (r, v) in res.iter_mut().zip(t) {
                *r -= v;
            }
        }
        if !is_zero_vec(&res) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Extends `base` greedily by vectors from `candidates` (in order) that
/// enlarge the span, until it has `target` vectors.
pub(crate) fn extend_greedy(
    dim: usize,
    base: &[Vec<Rational>],
    candidates: impl IntoIterator<Item = Vec<Rational>>,
    target: usize,
) -> Vec<Vec<Rational>> {
    let mut out = base.to_vec();
    let mut r = span_basis(dim, &out).len();
    for c in candidates {
        if r >= target {
            break;
        }
        let mut trial = out.clone();
        trial.push(c.clone());
        let r2 = span_basis(dim, &trial).len();
        if r2 > r {
            out.push(c);
            r = r2;
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct CentralSplit {
    pub core: Algebra,
    pub central_dim: usize,
    /// Columns: a basis of the core followed by a basis of the central part.
    pub change: TransitionMatrix,
}

/// Splits off a maximal central abelian direct summand: with `U = Z ∩ A¹`,
/// a complement `C` of `U` in `Z` and a complement `B ⊇ A¹` of `C`,
/// `A = B ⊕ C`. Complements are chosen greedily in ascending order.
pub fn strip_central_summand(a: &Algebra) -> Result<CentralSplit, Error> {
    if !check_jacobi(a).is_valid() {
        return Err(Error::InvalidAlgebra("generalized Jacobi identity fails".into()));
    }
    split_central(a)
}

/// [`strip_central_summand`] for an algebra already known to be valid.
pub(crate) fn split_central(a: &Algebra) -> Result<CentralSplit, Error> {
    let d = a.dim;
    let z = center(a);
    let der = derived_subalgebra(a);
    let u = z.intersection(&der);
    let zc = extend_greedy(d, u.basis(), z.basis().iter().cloned(), z.dim());
    let c: Vec<Vec<Rational>> = zc[u.dim()..].to_vec();
    let mut seed = der.basis().to_vec();
    seed.extend(c.iter().cloned());
    let full = extend_greedy(d, &seed, (0..d).map(|i| unit(d, i)), d);
    let mut b: Vec<Vec<Rational>> = der.basis().to_vec();
    b.extend(full[der.dim() + c.len()..].iter().cloned());
    let k = b.len();
    let mut cols = b;
    cols.extend(c.iter().cloned());
    let p = Matrix::from_columns(d, &cols);
    let change = TransitionMatrix::new(p)?;
    let core = a.in_basis(change.matrix())?.leading_subalgebra(k)?;
    Ok(CentralSplit {
        core,
        central_dim: c.len(),
        change,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn b1(n: usize) -> Algebra {
        let mut a = Algebra::abelian(n, n + 2).unwrap();
        let idx: Vec<usize> = (1..=n).collect();
        a.set_bracket(&idx, unit(n + 2, 0)).unwrap();
        a
    }

    // Independent Jacobi oracle over every ordered y-tuple, repeats included.
    fn jacobi_full_tuples(a: &Algebra) -> bool {
        let d = a.dim();
        let n = a.arity();
        let mut ys = vec![vec![]];
        for _ in 0..n - 1 {
            ys = ys
                .into_iter()
                .flat_map(|y: Vec<usize>| {
                    (0..d).map(move |i| {
                        let mut z = y.clone();
                        z.push(i);
                        z
                    })
                })
                .collect();
        }
        for x in combinations(d, n) {
            for y in &ys {
                let yv: Vec<Vec<Rational>> = y.iter().map(|&i| unit(d, i)).collect();
                let br = |v: Vec<Rational>| {
                    let mut args = vec![v];
                    args.extend(yv.iter().cloned());
                    a.bracket_eval(&args).unwrap()
                };
                let lhs = br(a.bracket_basis(&x));
                let mut rhs = vec![rat(0); d];
                for p in 0..n {
                    let mut args: Vec<Vec<Rational>> = x.iter().map(|&i| unit(d, i)).collect();
                    args[p] = br(unit(d, x[p]));
                    let t = a.bracket_eval(&args).unwrap();
                    for (r, v) in rhs.iter_mut().zip(t) {
                        *r += v;
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn combinations_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn bracket_signs() {
        let a = b1(3);
        let e = |i| unit(5, i);
        assert_eq!(a.bracket_eval(&[e(1), e(2), e(3)]).unwrap(), e(0));
        let neg: Vec<Rational> = e(0).iter().map(|x| -x).collect();
        assert_eq!(a.bracket_eval(&[e(2), e(1), e(3)]).unwrap(), neg);
        assert!(is_zero_vec(&a.bracket_eval(&[e(1), e(1), e(3)]).unwrap()));
        let v = vec![rat(1), rat(2), rat(0), rat(3), rat(0)];
        assert!(is_zero_vec(&a.bracket_eval(&[v.clone(), v, e(2)]).unwrap()));
        assert!(a.bracket_eval(&[e(1), e(2)]).is_err());
    }

    #[test]
    fn set_bracket_absorbs_sign() {
        let mut a = Algebra::abelian(3, 5).unwrap();
        a.set_bracket(&[2, 1, 3], unit(5, 0)).unwrap();
        assert_eq!(a.table().get(&vec![1, 2, 3]).unwrap()[0], rat(-1));
        assert!(a.set_bracket(&[1, 1, 3], unit(5, 0)).is_err());
    }

    #[test]
    fn jacobi_examples() {
        assert!(check_jacobi(&Algebra::abelian(3, 5).unwrap()).is_valid());
        assert!(check_jacobi(&b1(3)).is_valid());
        let mut bad = b1(3);
        bad.set_bracket(&[0, 1, 4], unit(5, 1)).unwrap();
        let rep = check_jacobi(&bad);
        assert!(!rep.is_valid());
        assert!(!jacobi_full_tuples(&bad));
        assert!(jacobi_full_tuples(&b1(3)));
    }

    #[test]
    fn derived_and_center_of_b1() {
        let a = b1(3);
        assert_eq!(derived_subalgebra(&a).dim(), 1);
        let z = center(&a);
        assert_eq!(z, Subspace::span(5, &[unit(5, 0), unit(5, 4)]));
        assert_eq!(center(&Algebra::abelian(3, 5).unwrap()).dim(), 5);
        assert_eq!(derived_subalgebra(&Algebra::abelian(3, 5).unwrap()).dim(), 0);
    }

    #[test]
    fn subspace_ops() {
        let u = Subspace::span(3, &[unit(3, 0), unit(3, 1)]);
        let w = Subspace::span(3, &[vec![rat(1), rat(1), rat(1)], unit(3, 2)]);
        let i = u.intersection(&w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[rat(1), rat(1), rat(0)]));
        assert_eq!(u.sum(&w).dim(), 3);
    }

    #[test]
    fn derivations() {
        let ab = Algebra::abelian(3, 4).unwrap();
        assert_eq!(derivation_algebra(&ab).dim, 16);
        let a = b1(3);
        let der = derivation_algebra(&a);
        for dm in &der.basis {
            assert!(check_derivation(&a, dm).unwrap());
        }
        assert!(check_derivation(&a, &Matrix::zeros(5, 5)).unwrap());
        assert!(!check_derivation(&a, &Matrix::identity(5)).unwrap());
        assert!(check_derivation(&a, &Matrix::identity(4)).is_err());
        let ad = a.left_multiplication(&[unit(5, 1), unit(5, 2)]).unwrap();
        assert!(check_derivation(&a, &ad).unwrap());
    }

    #[test]
    fn strip_b1_and_abelian() {
        let s = strip_central_summand(&b1(3)).unwrap();
        assert_eq!(s.central_dim, 1);
        assert_eq!(s.core.dim(), 4);
        let s = strip_central_summand(&Algebra::abelian(3, 5).unwrap()).unwrap();
        assert_eq!(s.central_dim, 5);
        assert_eq!(s.core.dim(), 0);
    }

    #[test]
    fn strip_rejects_invalid() {
        let mut bad = b1(3);
        bad.set_bracket(&[0, 1, 4], unit(5, 1)).unwrap();
        assert!(matches!(strip_central_summand(&bad), Err(Error::InvalidAlgebra(_))));
    }
}
