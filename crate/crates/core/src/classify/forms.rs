//! dim A^1 = r >= 3 in dimension m = n + 1.
//!
//! With `[e_1 .. ê_i .. e_m] = sum_k b_{k,i} e_k`, the matrix
//! `beta_{k,i} = (-1)^i b_{k,i}` (0-based `i`) is a symmetric form on
//! covectors, and a basis change `P` acts as
//! `beta' = det P * P^{-1} beta P^{-T}`. The class of `d_r` has
//! `beta = diag(1, -1, 1, ..)` on the first `r` covectors, so normalizing
//! means finding a covector frame `Q` with `Q^T beta Q = det Q * E`; then
//! `P = Q^{-T}`. Hyperbolic pairs come from small integer isotropic
//! covectors found by search.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{lin, scaled, Outcome, Step};
use crate::algebra::Algebra;
use crate::catalog::{rational_root, ClassLabel};
use crate::exactlin::{determinant, dot, invert, kernel_basis, rank, solve, unit, Matrix, Rational};

/// Search budget in candidate evaluations, and the largest entry height.
const BUDGET: usize = 4_000_000;
const MAX_HEIGHT: i64 = 6;

pub(crate) fn omit_form(a: &Algebra) -> Matrix {
    let m = a.dim();
    let mut beta = Matrix::zeros(m, m);
    for i in 0..m {
        let idx: Vec<usize> = (0..m).filter(|&j| j != i).collect();
        let b = a.bracket_basis(&idx);
        for (k, x) in b.into_iter().enumerate() {
            beta.set(k, i, if i % 2 == 0 { x } else { -x });
        }
    }
    beta
}

fn to_i128(x: &BigInt) -> Option<i128> {
    x.to_i128()
}

/// `g` scaled to an integer matrix with entries divided by their gcd.
fn integer_gram(g: &Matrix) -> Option<Vec<Vec<i128>>> {
    let mut l = BigInt::one();
    for x in g.entries() {
        l = num_integer::lcm(l, x.denom().clone());
    }
    let ints: Vec<BigInt> = g
        .entries()
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let mut gg = BigInt::zero();
    for x in &ints {
        gg = num_integer::gcd(gg, x.clone());
    }
    if gg.is_zero() {
        gg = BigInt::one();
    }
    let s = g.cols();
    let mut out = vec![vec![0i128; s]; s];
    for i in 0..s {
        for j in 0..s {
            out[i][j] = to_i128(&(&ints[i * s + j] / &gg))?;
        }
    }
    Some(out)
}

struct Search<'a> {
    g: &'a [Vec<i128>],
    s: usize,
    budget: usize,
}

impl Search<'_> {
    fn apply(&self, x: &[i64]) -> Option<Vec<i128>> {
        let mut out = vec![0i128; self.s];
        for (i, row) in self.g.iter().enumerate() {
            let mut acc: i128 = 0;
            for (gij, &xj) in row.iter().zip(x) {
                acc = acc.checked_add(gij.checked_mul(xj as i128)?)?;
            }
            out[i] = acc;
        }
        Some(out)
    }

    fn pair(x: &[i64], gy: &[i128]) -> Option<i128> {
        let mut acc: i128 = 0;
        for (&a, b) in x.iter().zip(gy) {
            acc = acc.checked_add(b.checked_mul(a as i128)?)?;
        }
        Some(acc)
    }

    /// Depth-first search for `want` mutually orthogonal isotropic vectors
    /// whose images under `g` are independent.
    fn frame(&mut self, found: &mut Vec<(Vec<i64>, Vec<i128>)>, want: usize) -> bool {
        if found.len() == want {
            return true;
        }
        for h in 1..=MAX_HEIGHT {
            let mut x = vec![-h; self.s];
            loop {
                if self.budget == 0 {
                    return false;
                }
                self.budget -= 1;
                if self.candidate_ok(&x, h, found) {
                    let gx = self.apply(&x).expect("checked in candidate_ok");
                    found.push((x.clone(), gx));
                    if self.frame(found, want) {
                        return true;
                    }
                    found.pop();
                }
                if !next_in_box(&mut x, h) {
                    break;
                }
            }
        }
        false
    }

    fn candidate_ok(&self, x: &[i64], h: i64, found: &[(Vec<i64>, Vec<i128>)]) -> bool {
        // one representative per line, exact shell h
        let Some(first) = x.iter().find(|v| **v != 0) else {
            return false;
        };
        if *first < 0 || x.iter().all(|v| v.abs() < h) {
            return false;
        }
        let Some(gx) = self.apply(x) else {
            return false;
        };
        if Search::pair(x, &gx) != Some(0) {
            return false;
        }
        for (y, _) in found {
            if Search::pair(y, &gx) != Some(0) {
                return false;
            }
        }
        let rows: Vec<Vec<Rational>> = found
            .iter()
            .map(|(_, gy)| gy.clone())
            .chain(std::iter::once(gx))
            .map(|v| v.into_iter().map(|t| Rational::from_integer(BigInt::from(t))).collect())
            .collect();
        rank(&Matrix::from_rows(rows).expect("equal lengths")) == found.len() + 1
    }
}

fn next_in_box(x: &mut [i64], h: i64) -> bool {
    for v in x.iter_mut().rev() {
        if *v < h {
            *v += 1;
            return true;
        }
        *v = -h;
    }
    false
}

/// Columns: a `beta`-orthogonal basis of the nondegenerate part, each
/// scaled so its value is a squarefree integer.
fn diagonal_lattice(beta: &Matrix) -> Matrix {
    let m = beta.rows();
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    let mut cands: Vec<Vec<Rational>> = (0..m).map(|i| unit(m, i)).collect();
    for i in 0..m {
        for j in i + 1..m {
            cands.push(lin(&Rational::one(), &unit(m, i), &Rational::one(), &unit(m, j)));
        }
    }
    let rk = rank(beta);
    let mut pool = cands.clone();
    while cols.len() < rk {
        // project the pool orthogonally to the chosen columns
        let Some(pos) = pool.iter().position(|v| !bil(beta, v, v).is_zero()) else {
            break;
        };
        let v = pool.remove(pos);
        let val = bil(beta, &v, &v);
        let q = super::arith::squarefree_part(&val)
            .and_then(|sf| rational_root(&(&val / Rational::from_integer(sf)), 2))
            .unwrap_or_else(Rational::one);
        pool = pool
            .into_iter()
            .map(|w| {
                let c = -(bil(beta, &w, &v) / &val);
                lin(&Rational::one(), &w, &c, &v)
            })
            .collect();
        cols.push(scaled(&(Rational::one() / q), &v));
    }
    Matrix::from_columns(m, &cols)
}

fn bil(beta: &Matrix, x: &[Rational], y: &[Rational]) -> Rational {
    dot(x, &beta.mul_vec(y))
}

/// Normalizes to `d_r`. Covectors are searched as `probe * xi` for small
/// integer `xi`; `probe` defaults to the identity. A caller that knows a
/// better lattice (a quotient presented through its parent) passes it in.
pub(crate) fn normalize_dr(a: &Algebra, r: usize, probe: Option<&Matrix>) -> Result<Outcome, crate::Error> {
    let m = a.dim();
    let beta = omit_form(a);
    if beta != beta.transpose() {
        return Ok(Outcome::unresolved("bracket form is not symmetric"));
    }
    if rank(&beta) != r {
        return Ok(Outcome::unresolved("bracket form rank differs from dim A^1"));
    }
    let id = Matrix::identity(m);
    let p = r / 2;
    let diag = diagonal_lattice(&beta);
    let lattices: Vec<&Matrix> = match probe {
        Some(pr) => vec![pr, &id, &diag],
        None => vec![&id, &diag],
    };
    let mut hit = None;
    for probe in lattices {
        let gram = probe.transpose().mul(&beta)?.mul(probe)?;
        let Some(gi) = integer_gram(&gram) else {
            continue;
        };
        let mut search = Search {
            g: &gi,
            s: probe.cols(),
            budget: BUDGET,
        };
        let mut found = Vec::new();
        if search.frame(&mut found, p) {
            hit = Some((probe, found));
            break;
        }
    }
    let Some((probe, found)) = hit else {
        return Ok(Outcome::Family {
            label: ClassLabel::LemD { r },
            reason: format!("no isotropic frame of size {p} among small covectors"),
        });
    };
    let vs: Vec<Vec<Rational>> = found
        .iter()
        .map(|(xi, _)| {
            let q: Vec<Rational> = xi.iter().map(|&t| Rational::from_integer(BigInt::from(t))).collect();
            probe.mul_vec(&q)
        })
        .collect();
    // dual vectors: beta(v_a, w_b) = delta_ab
    let rows: Vec<Vec<Rational>> = vs.iter().map(|v| beta.mul_vec(v)).collect();
    let cm = Matrix::from_rows(rows.clone())?;
    let mut ws = Vec::with_capacity(p);
    for b in 0..p {
        let rhs: Vec<Rational> = (0..p).map(|a| if a == b { Rational::one() } else { Rational::zero() }).collect();
        let Some(w) = solve(&cm, &rhs) else {
            return Ok(Outcome::unresolved("isotropic frame has no dual"));
        };
        ws.push(w);
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let ws: Vec<Vec<Rational>> = (0..p)
        .map(|b| {
            let mut w = ws[b].clone();
            for (a, v) in vs.iter().enumerate() {
                let c = -(&half * bil(&beta, &ws[b], &ws[a]));
                w = lin(&Rational::one(), &w, &c, v);
            }
            w
        })
        .collect();
    let mut single = None;
    if r % 2 == 1 {
        let mut cons = rows;
        cons.extend(ws.iter().map(|w| beta.mul_vec(w)));
        let ker = kernel_basis(&Matrix::from_rows(cons)?);
        single = ker.into_iter().find(|u| !bil(&beta, u, u).is_zero());
        if single.is_none() {
            return Ok(Outcome::unresolved("no anisotropic vector orthogonal to the pairs"));
        }
    }
    let radical = kernel_basis(&beta);
    // frame for pair scale nu and singleton scale s: values nu * E, with
    // nu = mu0 s^2 when a singleton is present
    let build = |nu: &Rational, s: &Rational, flip: bool| -> Matrix {
        let mut cols = Vec::with_capacity(m);
        for (v, w) in vs.iter().zip(&ws) {
            cols.push(lin(nu, v, &half, w));
            cols.push(lin(nu, v, &-&half, w));
        }
        if let Some(u) = &single {
            cols.push(scaled(s, u));
        }
        cols.extend(radical.iter().cloned());
        if flip {
            cols[1] = scaled(&-Rational::one(), &cols[1]);
        }
        Matrix::from_columns(m, &cols)
    };
    let one = Rational::one();
    let mu0 = single.as_ref().map(|u| bil(&beta, u, u)).unwrap_or_else(|| one.clone());
    // det build(nu, s) = nu^p s d0, and the frame needs det = nu
    let d0 = determinant(&build(&one, &one, false))?;
    if d0.is_zero() {
        return Ok(Outcome::unresolved("frame is singular"));
    }
    let q = if r < m {
        // rescale one radical covector
        let mut q = build(&mu0, &one, false);
        let k = &mu0 / (mu0.pow(p as i32) * &d0);
        for i in 0..m {
            let x = q.get(i, m - 1) * &k;
            q.set(i, m - 1, x);
        }
        q
    } else if single.is_some() {
        // nu = mu0 s^2 gives s^(2p-1) = 1 / (mu0^(p-1) d0)
        let target = one.clone() / (mu0.pow(p as i32 - 1) * &d0);
        match rational_root(&target, (2 * p - 1) as u32) {
            Some(s) => build(&(&mu0 * &s * &s), &s, false),
            None => {
                return Ok(Outcome::Family {
                    label: ClassLabel::LemD { r },
                    reason: format!("frame scaling needs a root of order {} of {target}", 2 * p - 1),
                })
            }
        }
    } else {
        // nu^(p-1) = +-1 / d0, the sign absorbed by flipping one column
        let plus = rational_root(&(one.clone() / &d0), (p - 1) as u32);
        let minus = rational_root(&(-one.clone() / &d0), (p - 1) as u32);
        match (plus, minus) {
            (Some(nu), _) => build(&nu, &one, false),
            (None, Some(nu)) => build(&nu, &one, true),
            _ => {
                return Ok(Outcome::Family {
                    label: ClassLabel::LemD { r },
                    reason: format!("frame scaling needs a root of order {} of +-1/{d0}", p - 1),
                })
            }
        }
    };
    let pm = invert(&q)?.transpose();
    let steps = vec![
        Step::note(format!(
            "bracket form of rank {r}; {p} isotropic covectors found with entries up to {}",
            found
                .iter()
                .flat_map(|(x, _)| x.iter().map(|t| t.abs()))
                .max()
                .unwrap_or(0)
        )),
        Step::with(format!("basis dual to the normalized covector frame for d_{r}"), &pm),
    ];
    Ok(Outcome::Exact {
        label: ClassLabel::LemD { r },
        p: pm,
        steps,
    })
}
