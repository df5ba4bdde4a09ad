//! Classes that are extensions of an (n+1)-dimensional class by an ideal
//! line `l = F z`: c1, d1, r1 (z central) and d2, d3 (z not central).
//!
//! The quotient `A / l` is brought to the quotient table of the target
//! class, the block of quotient indices whose brackets vanish is rotated so
//! that only the last of them picks up `z`, and the remaining freedom
//! `e_1 = g z`, `e_{j+1} = l_j + c_j z` is an affine linear system.

use num_traits::{One, Zero};

use super::{coords, lin, normalize_np1, scaled, Outcome, Step};
use crate::algebra::{combinations, extend_greedy, Algebra};
use crate::catalog::{canonical, ClassLabel};
use crate::exactlin::{determinant, invert, kernel_basis, solve, unit, Matrix, Rational};

/// The quotient by the line spanned by `cols[0]`, in the basis
/// `cols[1..]`.
fn quotient(a: &Algebra, cols: &[Vec<Rational>]) -> Result<Algebra, crate::Error> {
    let d = a.dim();
    let n = a.arity();
    let full = Matrix::from_columns(d, cols);
    let inv = invert(&full)?;
    let mut q = Algebra::abelian(n, d - 1)?;
    for idx in combinations(d - 1, n) {
        let args: Vec<Vec<Rational>> = idx.iter().map(|&i| cols[i + 1].clone()).collect();
        let v = inv.mul_vec(&a.bracket_eval(&args)?);
        q.set_bracket(&idx, v[1..].to_vec())?;
    }
    Ok(q)
}

fn lift_label(q: &ClassLabel) -> Option<ClassLabel> {
    Some(match q {
        ClassLabel::LemB1 => ClassLabel::C1,
        ClassLabel::LemC1 => ClassLabel::D1,
        ClassLabel::LemC2 { alpha } => ClassLabel::D2 { alpha: alpha.clone() },
        ClassLabel::LemC3 => ClassLabel::D3,
        ClassLabel::LemD { r } => ClassLabel::R1 { r: r + 1 },
        _ => return None,
    })
}

fn central_kind(l: &ClassLabel) -> bool {
    matches!(l, ClassLabel::C1 | ClassLabel::D1 | ClassLabel::R1 { .. })
}

pub(crate) fn normalize(a: &Algebra, z: &[Rational], central: bool) -> Result<Outcome, crate::Error> {
    let d = a.dim();
    let n = a.arity();
    let m = d - 1;
    let base = extend_greedy(d, &[z.to_vec()], (0..d).map(|i| unit(d, i)), d);
    let q = quotient(a, &base)?;
    // quotient covectors are parent covectors restricted to base[1..]
    let probe = Matrix::from_columns(d, &base[1..]).transpose();
    let (qlabel, p_in) = match normalize_np1(&q, Some(&probe))? {
        Outcome::Exact { label, p, .. } => (label, p),
        Outcome::Family { label, reason } => {
            return Ok(match lift_label(&label) {
                Some(l) => Outcome::Family {
                    label: l,
                    reason: format!("quotient by the ideal line: {reason}"),
                },
                None => Outcome::unresolved(format!("quotient {label} has no extension class")),
            })
        }
        u => return Ok(u),
    };
    let Some(label) = lift_label(&qlabel) else {
        return Ok(Outcome::unresolved(format!("quotient {qlabel} has no extension class")));
    };
    if central_kind(&label) != central {
        return Ok(Outcome::unresolved(format!(
            "quotient {qlabel} needs a {} line",
            if central { "non-central" } else { "central" }
        )));
    }
    let mut steps = vec![Step::note(format!("quotient by the ideal line is {qlabel}"))];
    // the target quotient table and the change bringing q onto it
    let can = canonical(n, &label)?;
    let cbase: Vec<Vec<Rational>> = (0..d).map(|i| unit(d, i)).collect();
    let tq = quotient(&can, &cbase)?;
    let p_t = match normalize_np1(&tq, None)? {
        Outcome::Exact { p, .. } => p,
        _ => return Ok(Outcome::unresolved("target quotient does not normalize")),
    };
    let pq = p_in.mul(&invert(&p_t)?)?;
    if q.in_basis(&pq)? != tq {
        return Ok(Outcome::unresolved("quotient did not reach the target table"));
    }
    let bq = Matrix::from_columns(d, &base[1..]);
    let mut ls: Vec<Vec<Rational>> = (0..m).map(|j| bq.mul_vec(&pq.column(j))).collect();

    // block J: quotient indices whose omit-one bracket vanishes, expected
    // to be a tail s..m
    let vanish: Vec<bool> = (0..m)
        .map(|j| {
            let idx: Vec<usize> = (0..m).filter(|&i| i != j).collect();
            tq.bracket_basis(&idx).iter().all(Zero::is_zero)
        })
        .collect();
    let s = vanish.iter().position(|&v| v).unwrap_or(m);
    if vanish[s..].iter().any(|v| !v) || s == m {
        return Ok(Outcome::unresolved("vanishing quotient brackets are not a tail block"));
    }
    let frame = |ls: &[Vec<Rational>]| {
        let mut cols = vec![z.to_vec()];
        cols.extend(ls.iter().cloned());
        invert(&Matrix::from_columns(d, &cols))
    };
    let jlen = m - s;
    if jlen >= 2 {
        let inv = frame(&ls)?;
        let zcoef = |args: Vec<Vec<Rational>>| inv.mul_vec(&a.bracket_eval(&args).expect("arity"))[0].clone();
        let mut rows = Vec::new();
        for y in combinations(jlen, jlen - 2) {
            let row: Vec<Rational> = (0..jlen)
                .map(|i| {
                    let mut args: Vec<Vec<Rational>> = ls[..s].to_vec();
                    args.push(ls[s + i].clone());
                    args.extend(y.iter().map(|&t| ls[s + t].clone()));
                    zcoef(args)
                })
                .collect();
            rows.push(row);
        }
        let ker = kernel_basis(&Matrix::from_rows(rows)?);
        if ker.len() != 1 {
            return Ok(Outcome::unresolved("block form does not single out a line"));
        }
        let g = ker[0].clone();
        let mut blk = extend_greedy(jlen, &[g], (0..jlen).map(|i| unit(jlen, i)), jlen);
        blk.rotate_left(1);
        let bm = Matrix::from_columns(jlen, &blk);
        let det = determinant(&bm)?;
        blk[0] = scaled(&(Rational::one() / det), &blk[0]);
        let old = ls[s..].to_vec();
        for (k, col) in blk.iter().enumerate() {
            let mut v = vec![Rational::zero(); d];
            for (i, x) in col.iter().enumerate() {
                v = lin(&Rational::one(), &v, x, &old[i]);
            }
            ls[s + k] = v;
        }
        steps.push(Step::note(format!("rotated the block of {jlen} vanishing quotient directions")));
    }

    // residual of the brackets not involving e_1, affine in (c, g)
    let inv = frame(&ls)?;
    let targets: Vec<Rational> = (0..m)
        .map(|j| {
            let idx: Vec<usize> = (1..d).filter(|&i| i != j + 1).collect();
            can.bracket_basis(&idx)[0].clone()
        })
        .collect();
    let residual = |x: &[Rational]| -> Vec<Rational> {
        let (c, g) = (&x[..m], &x[m]);
        (0..m)
            .map(|j| {
                let args: Vec<Vec<Rational>> = (0..m)
                    .filter(|&i| i != j)
                    .map(|i| lin(&Rational::one(), &ls[i], &c[i], z))
                    .collect();
                let w = inv.mul_vec(&a.bracket_eval(&args).expect("arity"));
                let mut r = w[0].clone();
                for i in 0..m {
                    r -= &w[i + 1] * &c[i];
                }
                r - g * &targets[j]
            })
            .collect()
    };
    let zero = vec![Rational::zero(); m + 1];
    let r0 = residual(&zero);
    let cols: Vec<Vec<Rational>> = (0..=m)
        .map(|k| {
            let rk = residual(&unit(m + 1, k));
            rk.iter().zip(&r0).map(|(p, q)| p - q).collect()
        })
        .collect();
    let mm = Matrix::from_columns(m, &cols);
    let rhs: Vec<Rational> = r0.iter().map(|v| -v).collect();
    let Some(mut x) = solve(&mm, &rhs) else {
        return Ok(Outcome::unresolved("lift system has no solution"));
    };
    if x[m].is_zero() {
        match kernel_basis(&mm).into_iter().find(|k| !k[m].is_zero()) {
            Some(k) => x = lin(&Rational::one(), &x, &Rational::one(), &k),
            None => return Ok(Outcome::unresolved("lift system forces e_1 = 0")),
        }
    }
    let mut pcols = vec![scaled(&x[m], z)];
    for (i, l) in ls.iter().enumerate() {
        pcols.push(lin(&Rational::one(), l, &x[i], z));
    }
    let p = Matrix::from_columns(d, &pcols);
    if coords(d, &pcols, z).is_none() {
        return Ok(Outcome::unresolved("lifted basis is singular"));
    }
    steps.push(Step::with(format!("lifted basis for {label}"), &p));
    Ok(Outcome::Exact { label, p, steps })
}
