//! Classification of (n+1)- and (n+2)-dimensional n-Lie algebras back to a
//! canonical class.
//!
//! Every normalizer produces a basis change `P` with `a.in_basis(P)` equal to
//! the canonical table; the reported witness is `P^{-1}` and is checked with
//! [`verify_isomorphism`] before a verdict is marked exact.

mod arith;
mod extension;
mod forms;
mod lowrank;
mod split;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use crate::algebra::{
    center, check_jacobi, derivation_algebra, derived_subalgebra, extend_greedy, split_central, Algebra, Subspace,
};
use crate::catalog::{canonical, ClassLabel};
use crate::exactlin::{invert, solve, unit, Matrix, Rational};
use crate::exec::par_map;
use crate::transform::{verify_isomorphism, TransitionMatrix};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvariantSignature {
    pub arity: usize,
    pub dim: usize,
    pub dim_derived: usize,
    pub dim_center: usize,
    pub dim_center_in_derived: usize,
    pub dim_der_algebra: usize,
    pub central_summand_dim: usize,
}

impl InvariantSignature {
    pub fn as_tuple(&self) -> (usize, usize, usize, usize, usize, usize, usize) {
        (
            self.arity,
            self.dim,
            self.dim_derived,
            self.dim_center,
            self.dim_center_in_derived,
            self.dim_der_algebra,
            self.central_summand_dim,
        )
    }
}

impl fmt::Display for InvariantSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_tuple())
    }
}

pub fn invariant_signature(a: &Algebra) -> Result<InvariantSignature, Error> {
    if !check_jacobi(a).is_valid() {
        return Err(Error::InvalidAlgebra("generalized Jacobi identity fails".into()));
    }
    Ok(signature_unchecked(a))
}

fn signature_unchecked(a: &Algebra) -> InvariantSignature {
    let der = derived_subalgebra(a);
    let z = center(a);
    InvariantSignature {
        arity: a.arity(),
        dim: a.dim(),
        dim_derived: der.dim(),
        dim_center: z.dim(),
        dim_center_in_derived: z.intersection(&der).dim(),
        dim_der_algebra: derivation_algebra(a).dim,
        central_summand_dim: split_central(a).map(|s| s.central_dim).unwrap_or(0),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Exact,
    /// The family is known but a normalization needs an irrational root.
    FamilyOnly,
    /// No branch reached a canonical table; the labels whose signatures
    /// match the input.
    Unresolved(Vec<ClassLabel>),
}

/// One recorded normalization stage. `change` is the basis change applied
/// at this stage, relative to the previous stage.
#[derive(Clone, Debug)]
pub struct Step {
    pub note: String,
    pub change: Option<TransitionMatrix>,
}

impl Step {
    fn note(s: impl Into<String>) -> Self {
        Step {
            note: s.into(),
            change: None,
        }
    }

    fn with(s: impl Into<String>, m: &Matrix) -> Self {
        Step {
            note: s.into(),
            change: TransitionMatrix::new(m.clone()).ok(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    /// `None` only for unresolved inputs.
    pub label: Option<ClassLabel>,
    /// Satisfies `verify_isomorphism(input, canonical(label), witness)`.
    pub witness: Option<TransitionMatrix>,
    pub status: Status,
    pub steps: Vec<Step>,
}

impl Verdict {
    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }
}

/// What a normalizer reached.
pub(crate) enum Outcome {
    Exact {
        label: ClassLabel,
        p: Matrix,
        steps: Vec<Step>,
    },
    Family {
        label: ClassLabel,
        reason: String,
    },
    Unresolved {
        reason: String,
    },
}

impl Outcome {
    fn unresolved(reason: impl Into<String>) -> Self {
        Outcome::Unresolved {
            reason: reason.into(),
        }
    }
}

/// Dispatches on the dimension: `n + 1` or `n + 2`.
pub fn classify(a: &Algebra) -> Result<Verdict, Error> {
    let n = a.arity();
    if a.dim() == n + 1 {
        classify_np1(a)
    } else if a.dim() == n + 2 {
        classify_np2(a)
    } else {
        Err(Error::DimensionMismatch(format!(
            "classification covers dim arity+1 or arity+2, got dim {} for arity {n}",
            a.dim()
        )))
    }
}

/// Classifies independent algebras in parallel.
pub fn classify_many(algs: &[Algebra]) -> Vec<Result<Verdict, Error>> {
    par_map(algs, classify)
}

fn precheck(a: &Algebra, codim: usize) -> Result<(), Error> {
    let n = a.arity();
    if a.dim() != n + codim {
        return Err(Error::DimensionMismatch(format!(
            "expected dim {} for arity {n}, got {}",
            n + codim,
            a.dim()
        )));
    }
    if n < 3 {
        return Err(Error::UnsupportedArity(n));
    }
    let rep = check_jacobi(a);
    if !rep.is_valid() {
        return Err(Error::InvalidAlgebra(format!(
            "generalized Jacobi identity fails in {} instances",
            rep.violations.len()
        )));
    }
    Ok(())
}

pub fn classify_np1(a: &Algebra) -> Result<Verdict, Error> {
    precheck(a, 1)?;
    let out = normalize_np1(a, None)?;
    finish(a, out, |c| normalize_np1(c, None))
}

pub fn classify_np2(a: &Algebra) -> Result<Verdict, Error> {
    precheck(a, 2)?;
    let out = normalize_np2(a)?;
    finish(a, out, normalize_np2)
}

/// Normalizer for dimension `n + 1`. `probe` is passed to the form search
/// (see [`forms::normalize_dr`]).
pub(crate) fn normalize_np1(a: &Algebra, probe: Option<&Matrix>) -> Result<Outcome, Error> {
    let der = derived_subalgebra(a);
    let k = der.dim();
    Ok(match k {
        0 => Outcome::Exact {
            label: ClassLabel::LemA,
            p: Matrix::identity(a.dim()),
            steps: vec![Step::note("dim A^1 = 0: abelian")],
        },
        1 => lowrank::rank_one(a, &der.basis()[0], ClassLabel::LemB1, ClassLabel::LemB2),
        2 => lowrank::lemma_c(a, &der),
        _ => forms::normalize_dr(a, k, probe)?,
    })
}

pub(crate) fn normalize_np2(a: &Algebra) -> Result<Outcome, Error> {
    let n = a.arity();
    let der = derived_subalgebra(a);
    let k = der.dim();
    if k == 0 {
        return Ok(Outcome::Exact {
            label: ClassLabel::A,
            p: Matrix::identity(a.dim()),
            steps: vec![Step::note("dim A^1 = 0: abelian")],
        });
    }
    if k == 1 {
        return Ok(lowrank::rank_one(a, &der.basis()[0], ClassLabel::B1, ClassLabel::B2));
    }
    if k > n + 1 {
        return Err(Error::ArityBoundViolated {
            derived: k,
            bound: n + 1,
        });
    }
    let split = split_central(a)?;
    if split.central_dim > 0 {
        return central_summand(a, &split);
    }
    let z = center(a);
    let zl = z.intersection(&der);
    let mut note = vec![Step::note(format!(
        "dim A^1 = {k}, dim Z = {}, dim Z∩A^1 = {}, no central summand",
        z.dim(),
        zl.dim()
    ))];
    let out = if zl.dim() == 1 {
        extension::normalize(a, &zl.basis()[0], true)?
    } else if zl.dim() > 0 {
        Outcome::unresolved("Z∩A^1 has dimension > 1")
    } else if k == 2 {
        split::c_two(a, &der)
    } else if k == 3 {
        let dd = double_derived(a, &der);
        match dd.dim() {
            0 => split::d_single_map(a, &der),
            1 => extension::normalize(a, &dd.basis()[0], false)?,
            _ => Outcome::unresolved("[A^1, A^1, A, ...] has dimension > 1"),
        }
    } else {
        Outcome::unresolved("dim A^1 >= 4 without a central line in A^1")
    };
    Ok(prepend(&mut note, out))
}

fn prepend(pre: &mut Vec<Step>, out: Outcome) -> Outcome {
    match out {
        Outcome::Exact { label, p, steps } => {
            pre.extend(steps);
            Outcome::Exact {
                label,
                p,
                steps: std::mem::take(pre),
            }
        }
        other => other,
    }
}

/// `A = core ⊕ F` with the core of dimension `n + 1`.
fn central_summand(a: &Algebra, split: &crate::algebra::CentralSplit) -> Result<Outcome, Error> {
    let n = a.arity();
    if split.core.dim() != n + 1 {
        return Ok(Outcome::unresolved("central summand leaves a core of unexpected size"));
    }
    let lift = |l: ClassLabel| match l {
        ClassLabel::LemC1 => Some(ClassLabel::C3),
        ClassLabel::LemC2 { alpha } => Some(ClassLabel::C5 { alpha }),
        ClassLabel::LemC3 => Some(ClassLabel::C7),
        ClassLabel::LemD { r: 3 } => Some(ClassLabel::D4),
        ClassLabel::LemD { r } => Some(ClassLabel::R2 { r }),
        _ => None,
    };
    let mut steps = vec![Step::with(
        format!("split off a central summand of dimension {}", split.central_dim),
        split.change.matrix(),
    )];
    // original covectors restricted to the core span keep the input lattice
    let cm = split.change.matrix();
    let core_cols: Vec<Vec<Rational>> = (0..n + 1).map(|j| cm.column(j)).collect();
    let probe = Matrix::from_columns(a.dim(), &core_cols).transpose();
    Ok(match normalize_np1(&split.core, Some(&probe))? {
        Outcome::Exact { label, p, steps: s } => match lift(label.clone()) {
            Some(l) => {
                let d = a.dim();
                let mut blk = Matrix::identity(d);
                for i in 0..n + 1 {
                    for j in 0..n + 1 {
                        blk.set(i, j, p.get(i, j).clone());
                    }
                }
                steps.push(Step::note(format!("core is {label}")));
                steps.extend(s);
                Outcome::Exact {
                    label: l,
                    p: split.change.matrix().mul(&blk)?,
                    steps,
                }
            }
            None => Outcome::unresolved(format!("core {label} has no central-summand class")),
        },
        Outcome::Family { label, reason } => match lift(label.clone()) {
            Some(l) => Outcome::Family { label: l, reason },
            None => Outcome::unresolved(format!("core {label} has no central-summand class")),
        },
        u => u,
    })
}

/// `[A^1, A^1, A, ..., A]`.
pub(crate) fn double_derived(a: &Algebra, der: &Subspace) -> Subspace {
    let d = a.dim();
    let n = a.arity();
    let b = der.basis();
    let mut vals = Vec::new();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            for y in crate::algebra::combinations(d, n - 2) {
                let mut args = vec![b[i].clone(), b[j].clone()];
                args.extend(y.iter().map(|&m| unit(d, m)));
                vals.push(a.bracket_eval(&args).expect("arity matches"));
            }
        }
    }
    Subspace::span(d, &vals)
}

/// Coordinates of `v` in the basis `cols`, if `v` lies in their span.
pub(crate) fn coords(dim: usize, cols: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    solve(&Matrix::from_columns(dim, cols), v)
}

/// `basis` extended to a basis of the whole space by standard vectors.
pub(crate) fn complete_basis(dim: usize, basis: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    extend_greedy(dim, basis, (0..dim).map(|i| unit(dim, i)), dim)
}

pub(crate) fn lin(a: &Rational, x: &[Rational], b: &Rational, y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(p, q)| a * p + b * q).collect()
}

pub(crate) fn scaled(c: &Rational, x: &[Rational]) -> Vec<Rational> {
    x.iter().map(|v| c * v).collect()
}

fn finish(
    a: &Algebra,
    out: Outcome,
    renorm: impl Fn(&Algebra) -> Result<Outcome, Error>,
) -> Result<Verdict, Error> {
    let n = a.arity();
    match out {
        Outcome::Exact {
            label,
            mut p,
            mut steps,
        } => {
            let can = canonical(n, &label)?;
            let reached = a.in_basis(&p)?;
            if reached != can {
                // Bring the canonical table to the same normal form and
                // compose with the inverse of that change.
                if let Ok(Outcome::Exact { label: l2, p: pt, .. }) = renorm(&can) {
                    if l2 == label && can.in_basis(&pt)? == reached {
                        let back = invert(&pt)?;
                        steps.push(Step::with("undo the canonical table's normal form", &back));
                        p = p.mul(&back)?;
                    }
                }
            }
            let witness = TransitionMatrix::new(invert(&p)?)?;
            if verify_isomorphism(a, &can, &witness)? {
                steps.push(Step::with(format!("reached canonical {label}"), &p));
                Ok(Verdict {
                    label: Some(label),
                    witness: Some(witness),
                    status: Status::Exact,
                    steps,
                })
            } else {
                steps.push(Step::note(format!(
                    "normalization for {label} did not reach the canonical table"
                )));
                Ok(unresolved(a, steps))
            }
        }
        Outcome::Family { label, reason } => Ok(Verdict {
            label: Some(label),
            witness: None,
            status: Status::FamilyOnly,
            steps: vec![Step::note(reason)],
        }),
        Outcome::Unresolved { reason } => Ok(unresolved(a, vec![Step::note(reason)])),
    }
}

type SampleTable = Vec<(ClassLabel, InvariantSignature)>;

fn sample_signatures(n: usize) -> SampleTable {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, SampleTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(t) = cache.lock().expect("cache lock").get(&n) {
        return t.clone();
    }
    let labels = ClassLabel::samples(n);
    let sigs = par_map(&labels, |l| signature_unchecked(&canonical(n, l).expect("valid sample")));
    let table: SampleTable = labels.into_iter().zip(sigs).collect();
    cache.lock().expect("cache lock").insert(n, table.clone());
    table
}

fn unresolved(a: &Algebra, mut steps: Vec<Step>) -> Verdict {
    let sig = signature_unchecked(a);
    let candidates: Vec<ClassLabel> = sample_signatures(a.arity())
        .into_iter()
        .filter(|(_, s)| *s == sig)
        .map(|(l, _)| l)
        .collect();
    steps.push(Step::note(format!("signature {sig}")));
    Verdict {
        label: None,
        witness: None,
        status: Status::Unresolved(candidates),
        steps,
    }
}

pub(crate) fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Signature comparison helper used by reports: the labels of
/// `signature_table`-style samples whose signature equals `a`'s.
pub fn signature_matches(a: &Algebra) -> Result<Vec<ClassLabel>, Error> {
    let sig = invariant_signature(a)?;
    Ok(sample_signatures(a.arity())
        .into_iter()
        .filter(|(_, s)| *s == sig)
        .map(|(l, _)| l)
        .collect())
}

#[cfg(test)]
mod tests;
