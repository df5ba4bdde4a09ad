//! dim A^1 = 1 in any dimension, and dim A^1 = 2 in dimension n + 1.

use num_traits::{One, Zero};

use super::{complete_basis, coords, is_zero, lin, scaled, Outcome, Step};
use crate::algebra::{center, combinations, extend_greedy, Algebra, Subspace};
use crate::catalog::{rational_root, ClassLabel};
use crate::exactlin::{determinant, rank, unit, Matrix, Rational};

/// `A^1 = F v`. If `v` is central: `e_1 = [K]` for a basis tuple `K` with
/// nonzero bracket and `e_2, ..., e_{n+1} = K`; otherwise `e_1 = v` and
/// `e_2, ..., e_n` a tuple with `[v, e_2, ..., e_n] = v`. The rest of the basis
/// comes from the center.
pub(crate) fn rank_one(a: &Algebra, v: &[Rational], central: ClassLabel, other: ClassLabel) -> Outcome {
    let d = a.dim();
    let n = a.arity();
    let z = center(a);
    let (label, mut cols) = if z.contains(v) {
        let Some((key, val)) = a.table().iter().next() else {
            return Outcome::unresolved("no nonzero bracket");
        };
        let mut cols = vec![val.clone()];
        cols.extend(key.iter().map(|&i| unit(d, i)));
        (central, cols)
    } else {
        let found = combinations(d, n - 1).into_iter().find_map(|y| {
            let mut args = vec![v.to_vec()];
            args.extend(y.iter().map(|&i| unit(d, i)));
            let w = a.bracket_eval(&args).expect("arity matches");
            (!is_zero(&w)).then_some((y, w))
        });
        let Some((y, w)) = found else {
            return Outcome::unresolved("derived line is not central but no bracket moves it");
        };
        let c = coords(d, &[v.to_vec()], &w).expect("bracket lies in A^1")[0].clone();
        let mut cols = vec![v.to_vec(), scaled(&(Rational::one() / c), &unit(d, y[0]))];
        cols.extend(y[1..].iter().map(|&i| unit(d, i)));
        (other, cols)
    };
    let k = cols.len();
    cols = extend_greedy(d, &cols, z.basis().iter().cloned(), d);
    if cols.len() < d || rank(&Matrix::from_columns(d, &cols)) < d {
        return Outcome::unresolved("center does not complete the adapted basis");
    }
    Outcome::Exact {
        label,
        p: Matrix::from_columns(d, &cols),
        steps: vec![Step::note(format!(
            "dim A^1 = 1; adapted tuple of {k} vectors, completed from Z"
        ))],
    }
}

/// A vector of `{x, y, x + y}` that is not an eigenvector of `s` (2x2, in
/// the basis `x, y`), as coordinates.
pub(crate) fn non_eigenvector(s: &Matrix) -> Option<Vec<Rational>> {
    let cands = [
        vec![Rational::one(), Rational::zero()],
        vec![Rational::zero(), Rational::one()],
        vec![Rational::one(), Rational::one()],
    ];
    cands.into_iter().find(|v| {
        let sv = s.mul_vec(v);
        !(&v[0] * &sv[1] - &v[1] * &sv[0]).is_zero()
    })
}

/// Matrix of `v -> [v, args...]` on the span of `dbasis`, in that basis.
pub(crate) fn ad_on(a: &Algebra, dbasis: &[Vec<Rational>], args: &[Vec<Rational>]) -> Option<Matrix> {
    let d = a.dim();
    let cols: Option<Vec<Vec<Rational>>> = dbasis
        .iter()
        .map(|v| {
            let mut xs = vec![v.clone()];
            xs.extend(args.iter().cloned());
            coords(d, dbasis, &a.bracket_eval(&xs).expect("arity matches"))
        })
        .collect();
    Some(Matrix::from_columns(dbasis.len(), &cols?))
}

/// In D coordinates: vector -> A coordinates.
pub(crate) fn from_coords(dbasis: &[Vec<Rational>], c: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dbasis[0].len()];
    for (b, x) in dbasis.iter().zip(c) {
        out = lin(&Rational::one(), &out, x, b);
    }
    out
}

/// dim A^1 = 2 in dimension n + 1. With a complement `X` of `D = A^1`, the
/// only data is the map `S v = [v, X]` on `D`, defined up to scale.
pub(crate) fn lemma_c(a: &Algebra, der: &Subspace) -> Outcome {
    let d = a.dim();
    let n = a.arity();
    let dv = der.basis().to_vec();
    let full = complete_basis(d, &dv);
    let mut comp: Vec<Vec<Rational>> = full[2..].to_vec();
    for y in combinations(comp.len(), n - 2) {
        let mut args = dv.clone();
        args.extend(y.iter().map(|&i| comp[i].clone()));
        if !is_zero(&a.bracket_eval(&args).expect("arity matches")) {
            return Outcome::unresolved("[A^1, A^1, ...] is nonzero");
        }
    }
    let Some(s) = ad_on(a, &dv, &comp) else {
        return Outcome::unresolved("[A^1, X] leaves A^1");
    };
    let tr = s.get(0, 0) + s.get(1, 1);
    let det = determinant(&s).expect("square");
    let scalar = s.get(0, 1).is_zero() && s.get(1, 0).is_zero() && s.get(0, 0) == s.get(1, 1);
    let mut steps = vec![Step::note(format!("S = [., X] on A^1 has trace {tr}, det {det}"))];
    let (label, scale, sp) = if scalar {
        let lam = s.get(0, 0).clone();
        let inv = Rational::one() / &lam;
        (ClassLabel::LemC3, inv.clone(), s.scale(&inv))
    } else if !tr.is_zero() {
        let inv = Rational::one() / &tr;
        let alpha = -&det / (&tr * &tr);
        steps.push(Step::note(format!("S / tr S has characteristic polynomial x^2 - x - {alpha}")));
        (ClassLabel::LemC2 { alpha }, inv.clone(), s.scale(&inv))
    } else {
        let delta = -&det;
        match rational_root(&delta, 2) {
            Some(g) => {
                let inv = Rational::one() / &g;
                (ClassLabel::LemC1, inv.clone(), s.scale(&inv))
            }
            None => {
                return Outcome::Family {
                    label: ClassLabel::LemC1,
                    reason: format!("traceless S with S^2 = {delta}: normalizing needs sqrt({delta})"),
                }
            }
        }
    };
    comp[0] = scaled(&scale, &comp[0]);
    let (e1, e2) = if scalar {
        (dv[0].clone(), dv[1].clone())
    } else {
        let Some(c) = non_eigenvector(&sp) else {
            return Outcome::unresolved("no cyclic vector for S");
        };
        (from_coords(&dv, &c), from_coords(&dv, &sp.mul_vec(&c)))
    };
    let mut cols = vec![e1, e2];
    cols.extend(comp);
    let p = Matrix::from_columns(d, &cols);
    if determinant(&p).map(|x| x.is_zero()).unwrap_or(true) {
        return Outcome::unresolved("adapted basis is singular");
    }
    steps.push(Step::with(format!("adapted basis for {label}"), &p));
    Outcome::Exact { label, p, steps }
}
