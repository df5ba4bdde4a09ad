//! dimension n + 2 without a central line in A^1: c2 / c4 / c6 for
//! dim A^1 = 2 and d5 / d6 / d7 for dim A^1 = 3 with `[A^1, A^1, ...] = 0`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::arith::{cube_free_scale, squarefree_part};
use super::lowrank::{ad_on, from_coords, non_eigenvector};
use super::{complete_basis, is_zero, lin, scaled, Outcome, Step};
use crate::algebra::{combinations, Algebra, Subspace};
use crate::catalog::{rational_root, ClassLabel};
use crate::exactlin::{determinant, invert, kernel_basis, rank, solve, Matrix, Rational};

fn vec4(m: &Matrix) -> Vec<Rational> {
    m.entries().to_vec()
}

fn mat2(v: &[Rational]) -> Matrix {
    Matrix::from_vec(2, 2, v.to_vec()).expect("4 entries")
}

fn proportional(x: &Matrix, t: &Matrix) -> Option<Rational> {
    let (i, ti) = t.entries().iter().enumerate().find(|(_, v)| !v.is_zero())?;
    let lam = &x.entries()[i] / ti;
    (t.scale(&lam) == *x && !lam.is_zero()).then_some(lam)
}

/// `D = A^1` of dimension 2 with no central line. For a complement
/// `c_1..c_n` the maps `[., C without c_j]` on `D` span a plane `L`
/// containing the identity; the traceless line of `L` squares to `kappa I`,
/// and `kappa` up to squares picks c2 (0), c4 (square) or c6.
pub(crate) fn c_two(a: &Algebra, der: &Subspace) -> Outcome {
    let d = a.dim();
    let n = a.arity();
    let dv = der.basis().to_vec();
    let c0: Vec<Vec<Rational>> = complete_basis(d, &dv)[2..].to_vec();
    for y in combinations(n, n - 2) {
        let mut args = dv.clone();
        args.extend(y.iter().map(|&i| c0[i].clone()));
        if !is_zero(&a.bracket_eval(&args).expect("arity matches")) {
            return Outcome::unresolved("[A^1, A^1, ...] is nonzero");
        }
    }
    let omit = |cs: &[Vec<Rational>], j: usize| -> Vec<Vec<Rational>> {
        cs.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, c)| c.clone()).collect()
    };
    let mut fcols = Vec::with_capacity(n);
    for j in 0..n {
        let Some(mj) = ad_on(a, &dv, &omit(&c0, j)) else {
            return Outcome::unresolved("[A^1, ...] leaves A^1");
        };
        let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
        fcols.push(vec4(&mj.scale(&sign)));
    }
    let phi = Matrix::from_columns(4, &fcols);
    if rank(&phi) != 2 {
        return Outcome::unresolved("ad maps of the complement do not span a plane");
    }
    let id = Matrix::identity(2);
    let Some(g_id) = solve(&phi, &vec4(&id)) else {
        return Outcome::unresolved("identity is not an ad map of the complement");
    };
    let Some(nm) = fcols.iter().map(|c| mat2(c)).find(|m| proportional(m, &id).is_none() && !m.is_zero()) else {
        return Outcome::unresolved("no non-scalar ad map");
    };
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let tr = nm.get(0, 0) + nm.get(1, 1);
    let s0 = nm.sub(&id.scale(&(&half * &tr))).expect("2x2");
    let kappa = -determinant(&s0).expect("square");
    let mut steps = vec![Step::note(format!("traceless ad map squares to {kappa}"))];
    let (label, t) = if kappa.is_zero() {
        (ClassLabel::C2, s0)
    } else if let Some(g) = rational_root(&kappa, 2) {
        (ClassLabel::C4, s0.scale(&(Rational::one() / g)))
    } else {
        let four = Rational::from_integer(BigInt::from(4));
        let Some(mm) = squarefree_part(&(&four * &kappa)) else {
            return Outcome::unresolved("could not reduce kappa modulo squares");
        };
        let mr = Rational::from_integer(mm);
        let Some(q) = rational_root(&(&four * &kappa / &mr), 2) else {
            return Outcome::unresolved("kappa modulo squares is inconsistent");
        };
        let alpha = (&mr - Rational::one()) / &four;
        steps.push(Step::note(format!("alpha + 1/4 = {kappa} up to squares gives alpha = {alpha}")));
        let t = s0.scale(&(Rational::one() / q)).add(&id.scale(&half)).expect("2x2");
        (ClassLabel::C6 { alpha }, t)
    };
    let Some(g_t) = solve(&phi, &vec4(&t)) else {
        return Outcome::unresolved("target map is not in the ad plane");
    };
    let ker = kernel_basis(&phi);
    let mut rows = vec![g_id];
    rows.extend(ker);
    rows.push(g_t);
    let gm = match Matrix::from_rows(rows).map(|m| invert(&m)) {
        Ok(Ok(g)) => g,
        _ => return Outcome::unresolved("covector frame of the complement is singular"),
    };
    let mut cs: Vec<Vec<Rational>> = (0..n)
        .map(|k| {
            let mut v = vec![Rational::zero(); d];
            for (j, cj) in c0.iter().enumerate() {
                v = lin(&Rational::one(), &v, gm.get(j, k), cj);
            }
            v
        })
        .collect();
    let x = ad_on(a, &dv, &omit(&cs, n - 1)).expect("checked above");
    let y = ad_on(a, &dv, &omit(&cs, 0)).expect("checked above");
    let (Some(lx), Some(ly)) = (proportional(&x, &t), proportional(&y, &id)) else {
        return Outcome::unresolved("complement maps are not the expected multiples");
    };
    cs[0] = scaled(&(Rational::one() / lx), &cs[0]);
    cs[n - 1] = scaled(&(Rational::one() / ly), &cs[n - 1]);
    let (e1, e2) = if label == ClassLabel::C2 {
        let Some(c) = [vec![Rational::zero(), Rational::one()], vec![Rational::one(), Rational::zero()]]
            .into_iter()
            .find(|c| !is_zero(&t.mul_vec(c)))
        else {
            return Outcome::unresolved("nilpotent map is zero");
        };
        (from_coords(&dv, &t.mul_vec(&c)), from_coords(&dv, &c))
    } else {
        let Some(c) = non_eigenvector(&t) else {
            return Outcome::unresolved("no cyclic vector");
        };
        (from_coords(&dv, &c), from_coords(&dv, &t.mul_vec(&c)))
    };
    let v0 = a.bracket_eval(&cs).expect("arity matches");
    cs[0] = lin(&Rational::one(), &cs[0], &-Rational::one(), &v0);
    let mut cols = vec![e1, e2];
    cols.extend(cs);
    let p = Matrix::from_columns(d, &cols);
    steps.push(Step::with(format!("adapted basis for {label}"), &p));
    Outcome::Exact { label, p, steps }
}

/// `D = A^1` of dimension 3 with `[D, D, ...] = 0`: everything is the map
/// `M = [., W]` on `D` for the wedge `W` of a complement, up to scale.
pub(crate) fn d_single_map(a: &Algebra, der: &Subspace) -> Outcome {
    let d = a.dim();
    let dv = der.basis().to_vec();
    let mut cs: Vec<Vec<Rational>> = complete_basis(d, &dv)[3..].to_vec();
    let Some(m) = ad_on(a, &dv, &cs) else {
        return Outcome::unresolved("[A^1, W] leaves A^1");
    };
    let id = Matrix::identity(3);
    let m2 = m.mul(&m).expect("3x3");
    let powers = Matrix::from_rows(vec![id.entries().to_vec(), m.entries().to_vec(), m2.entries().to_vec()])
        .expect("9 entries");
    if let Some(lam) = proportional(&m, &id) {
        cs[0] = scaled(&(Rational::one() / lam), &cs[0]);
        let mut cols = dv;
        cols.extend(cs);
        let p = Matrix::from_columns(d, &cols);
        return Outcome::Exact {
            label: ClassLabel::D6,
            p: p.clone(),
            steps: vec![Step::with("scalar map on A^1", &p)],
        };
    }
    if rank(&powers) < 3 {
        return Outcome::unresolved("map on A^1 is derogatory but not scalar");
    }
    // x^3 - u x^2 - t x - s
    let u = m.get(0, 0) + m.get(1, 1) + m.get(2, 2);
    let minor = |i: usize, j: usize| m.get(i, i) * m.get(j, j) - m.get(i, j) * m.get(j, i);
    let t = -(minor(0, 1) + minor(0, 2) + minor(1, 2));
    let s = determinant(&m).expect("square");
    let mut steps = vec![Step::note(format!(
        "map on A^1 has characteristic polynomial x^3 - ({u}) x^2 - ({t}) x - ({s})"
    ))];
    let one = Rational::one();
    let two = &one + &one;
    let mut chosen = None;
    if !t.is_zero() {
        if let Some(rho) = rational_root(&(-&one / &t), 2) {
            for r in [rho.clone(), -rho] {
                let beta = -(&r * &r * &r * &s);
                if &r * &u == &two + &beta && !beta.is_zero() && !beta.is_one() {
                    chosen = Some((ClassLabel::D5 { beta }, r));
                    break;
                }
            }
        }
    }
    let (label, r) = chosen.unwrap_or_else(|| {
        let r = cube_free_scale(&s);
        let l = ClassLabel::D7 {
            s: &r * &r * &r * &s,
            t: &r * &r * &t,
            u: &r * &u,
        };
        (l, r)
    });
    let mp = m.scale(&r);
    cs[0] = scaled(&r, &cs[0]);
    let Some(v) = (0..8i64).find_map(|c| {
        let c = Rational::from_integer(BigInt::from(c));
        let v = vec![one.clone(), c.clone(), &c * &c];
        let mv = mp.mul_vec(&v);
        let m2v = mp.mul_vec(&mv);
        let k = Matrix::from_columns(3, &[v.clone(), mv, m2v]);
        (!determinant(&k).expect("square").is_zero()).then_some(v)
    }) else {
        return Outcome::unresolved("no cyclic vector among the probes");
    };
    let mv = mp.mul_vec(&v);
    let m2v = mp.mul_vec(&mv);
    let mut cols = vec![from_coords(&dv, &v), from_coords(&dv, &mv), from_coords(&dv, &m2v)];
    cols.extend(cs);
    let p = Matrix::from_columns(d, &cols);
    steps.push(Step::with(format!("companion basis for {label}"), &p));
    Outcome::Exact { label, p, steps }
}
