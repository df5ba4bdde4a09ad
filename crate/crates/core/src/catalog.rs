//! Canonical multiplication tables of every (n+1)- and (n+2)-dimensional
//! class, for any arity n >= 3, plus the parameter equivalence for d7.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::Algebra;
use crate::classify::{invariant_signature, InvariantSignature};
use crate::exactlin::{rat, Rational};
use crate::Error;

/// A canonical class with its parameters. `Lem*` variants live in dimension
/// n+1, the others in dimension n+2.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassLabel {
    LemA,
    LemB1,
    LemB2,
    LemC1,
    LemC2 { alpha: Rational },
    LemC3,
    LemD { r: usize },
    A,
    B1,
    B2,
    C1,
    C2,
    C3,
    C4,
    C5 { alpha: Rational },
    C6 { alpha: Rational },
    C7,
    D1,
    D2 { alpha: Rational },
    D3,
    D4,
    D5 { beta: Rational },
    D6,
    D7 { s: Rational, t: Rational, u: Rational },
    R1 { r: usize },
    R2 { r: usize },
}

impl ClassLabel {
    /// Dimension of the class minus the arity (1 or 2).
    pub fn codim(&self) -> usize {
        use ClassLabel::*;
        match self {
            LemA | LemB1 | LemB2 | LemC1 | LemC2 { .. } | LemC3 | LemD { .. } => 1,
            _ => 2,
        }
    }

    pub fn family(&self) -> &'static str {
        use ClassLabel::*;
        match self {
            LemA => "lem-a",
            LemB1 => "lem-b1",
            LemB2 => "lem-b2",
            LemC1 => "lem-c1",
            LemC2 { .. } => "lem-c2",
            LemC3 => "lem-c3",
            LemD { .. } => "lem-d",
            A => "a",
            B1 => "b1",
            B2 => "b2",
            C1 => "c1",
            C2 => "c2",
            C3 => "c3",
            C4 => "c4",
            C5 { .. } => "c5",
            C6 { .. } => "c6",
            C7 => "c7",
            D1 => "d1",
            D2 { .. } => "d2",
            D3 => "d3",
            D4 => "d4",
            D5 { .. } => "d5",
            D6 => "d6",
            D7 { .. } => "d7",
            R1 { .. } => "r1",
            R2 { .. } => "r2",
        }
    }

    pub fn is_parametric(&self) -> bool {
        use ClassLabel::*;
        matches!(
            self,
            LemC2 { .. } | C5 { .. } | C6 { .. } | D2 { .. } | D5 { .. } | D7 { .. }
        )
    }

    /// Parameters as (name, value) pairs, for reports.
    pub fn params(&self) -> Vec<(&'static str, String)> {
        use ClassLabel::*;
        match self {
            LemC2 { alpha } | C5 { alpha } | C6 { alpha } | D2 { alpha } => {
                vec![("alpha", alpha.to_string())]
            }
            D5 { beta } => vec![("beta", beta.to_string())],
            D7 { s, t, u } => vec![("s", s.to_string()), ("t", t.to_string()), ("u", u.to_string())],
            LemD { r } | R1 { r } | R2 { r } => vec![("r", r.to_string())],
            _ => Vec::new(),
        }
    }

    /// Checks the parameter constraints for arity `n`.
    pub fn validate(&self, n: usize) -> Result<(), Error> {
        use ClassLabel::*;
        if n < 3 {
            return Err(Error::UnsupportedArity(n));
        }
        let bad = |m: String| Err(Error::InvalidParameter(m));
        match self {
            LemC2 { alpha } | C5 { alpha } | C6 { alpha } | D2 { alpha } if alpha.is_zero() => {
                bad(format!("{}: alpha must be nonzero", self.family()))
            }
            D5 { beta } if beta.is_zero() || beta.is_one() => bad("d5: beta must not be 0 or 1".into()),
            D7 { s, .. } if s.is_zero() => bad("d7: s must be nonzero".into()),
            LemD { r } if *r < 3 || *r > n + 1 => bad(format!("lem-d: need 3 <= r <= {}", n + 1)),
            R1 { r } | R2 { r } if *r < 4 || *r > n + 1 => {
                bad(format!("{}: need 4 <= r <= {}", self.family(), n + 1))
            }
            _ => Ok(()),
        }
    }

    /// Builds a label from a family name and optional parameters; missing
    /// parameters are an error for parametric families.
    pub fn from_parts(
        name: &str,
        alpha: Option<Rational>,
        beta: Option<Rational>,
        stu: Option<(Rational, Rational, Rational)>,
        r: Option<usize>,
    ) -> Result<Self, Error> {
        use ClassLabel::*;
        let need = |what: &str| Error::InvalidParameter(format!("{name} needs {what}"));
        let al = || alpha.clone().ok_or_else(|| need("alpha"));
        let rr = || r.ok_or_else(|| need("r"));
        Ok(match name {
            "lem-a" => LemA,
            "lem-b1" => LemB1,
            "lem-b2" => LemB2,
            "lem-c1" => LemC1,
            "lem-c2" => LemC2 { alpha: al()? },
            "lem-c3" => LemC3,
            "lem-d" => LemD { r: rr()? },
            "a" => A,
            "b1" => B1,
            "b2" => B2,
            "c1" => C1,
            "c2" => C2,
            "c3" => C3,
            "c4" => C4,
            "c5" => C5 { alpha: al()? },
            "c6" => C6 { alpha: al()? },
            "c7" => C7,
            "d1" => D1,
            "d2" => D2 { alpha: al()? },
            "d3" => D3,
            "d4" => D4,
            "d5" => D5 {
                beta: beta.ok_or_else(|| need("beta"))?,
            },
            "d6" => D6,
            "d7" => {
                let (s, t, u) = stu.ok_or_else(|| need("s, t, u"))?;
                D7 { s, t, u }
            }
            "r1" => R1 { r: rr()? },
            "r2" => R2 { r: rr()? },
            _ => return Err(Error::InvalidParameter(format!("unknown class {name:?}"))),
        })
    }

    /// Every class for arity `n` with one sample value per parameter:
    /// alpha = 1, beta = 2, (s, t, u) = (1, 1, 1), and every allowed r.
    pub fn samples(n: usize) -> Vec<ClassLabel> {
        use ClassLabel::*;
        let one = rat(1);
        let mut v = vec![
            LemA,
            LemB1,
            LemB2,
            LemC1,
            LemC2 { alpha: one.clone() },
            LemC3,
        ];
        v.extend((3..=n + 1).map(|r| LemD { r }));
        v.extend(Self::theorem_samples(n));
        v
    }

    /// The (n+2)-dimensional part of [`ClassLabel::samples`].
    pub fn theorem_samples(n: usize) -> Vec<ClassLabel> {
        use ClassLabel::*;
        let one = rat(1);
        let mut v = vec![
            A,
            B1,
            B2,
            C1,
            C2,
            C3,
            C4,
            C5 { alpha: one.clone() },
            C6 { alpha: one.clone() },
            C7,
            D1,
            D2 { alpha: one.clone() },
            D3,
            D4,
            D5 { beta: rat(2) },
            D6,
            D7 {
                s: one.clone(),
                t: one.clone(),
                u: one,
            },
        ];
        v.extend((4..=n + 1).map(|r| R1 { r }));
        v.extend((4..=n + 1).map(|r| R2 { r }));
        v
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.params();
        if p.is_empty() {
            write!(f, "{}", self.family())
        } else {
            let inner: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "{}({})", self.family(), inner.join(", "))
        }
    }
}

/// 1-based inclusive range, as the tables are usually written.
fn span(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

fn with(head: &[usize], tail: Vec<usize>) -> Vec<usize> {
    let mut v = head.to_vec();
    v.extend(tail);
    v
}

fn without(a: usize, b: usize, skip: usize) -> Vec<usize> {
    (a..=b).filter(|&i| i != skip).collect()
}

type Entry = (Vec<usize>, Vec<(usize, Rational)>);

fn build(n: usize, d: usize, entries: Vec<Entry>) -> Result<Algebra, Error> {
    let mut a = Algebra::abelian(n, d)?;
    for (idx, coeffs) in entries {
        let mut v = vec![Rational::zero(); d];
        for (k, c) in coeffs {
            v[k - 1] += c;
        }
        let idx0: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        a.set_bracket(&idx0, v)?;
    }
    Ok(a)
}

/// The canonical multiplication table of `label` for arity `n`; unlisted
/// brackets are zero.
pub fn canonical(n: usize, label: &ClassLabel) -> Result<Algebra, Error> {
    use ClassLabel::*;
    label.validate(n)?;
    let one = || rat(1);
    let e = |k: usize| vec![(k, rat(1))];
    let m = n + 1;
    let p = n + 2;
    let entries: Vec<Entry> = match label {
        LemA | A => Vec::new(),
        LemB1 => vec![(span(2, m), e(1))],
        LemB2 => vec![(span(1, n), e(1))],
        LemC1 => vec![(span(2, m), e(1)), (with(&[1], span(3, m)), e(2))],
        LemC2 { alpha } => vec![
            (span(2, m), vec![(1, alpha.clone()), (2, one())]),
            (with(&[1], span(3, m)), e(2)),
        ],
        LemC3 => vec![(with(&[1], span(3, m)), e(1)), (span(2, m), e(2))],
        LemD { r } => (1..=*r).map(|i| (without(1, m, i), e(i))).collect(),
        B1 => vec![(span(2, m), e(1))],
        B2 => vec![(span(1, n), e(1))],
        C1 => vec![(span(2, m), e(1)), (span(3, p), e(2))],
        C2 => vec![
            (span(2, m), e(1)),
            (with(&[2], span(4, p)), e(2)),
            (with(&[1], span(4, p)), e(1)),
        ],
        C3 => vec![(span(2, m), e(1)), (with(&[1], span(3, m)), e(2))],
        C4 => vec![
            (span(2, m), e(1)),
            (with(&[1], span(3, m)), e(2)),
            (with(&[2], span(4, p)), e(2)),
            (with(&[1], span(4, p)), e(1)),
        ],
        C5 { alpha } => vec![
            (span(2, m), vec![(1, alpha.clone()), (2, one())]),
            (with(&[1], span(3, m)), e(2)),
        ],
        C6 { alpha } => vec![
            (span(2, m), vec![(1, alpha.clone()), (2, one())]),
            (with(&[1], span(3, m)), e(2)),
            (with(&[2], span(4, p)), e(2)),
            (with(&[1], span(4, p)), e(1)),
        ],
        C7 => vec![(with(&[1], span(3, m)), e(1)), (span(2, m), e(2))],
        D1 => vec![
            (span(2, m), e(1)),
            (with(&[2], span(4, p)), vec![(2, rat(-1))]),
            (span(3, p), e(3)),
        ],
        D2 { alpha } => vec![
            (span(2, m), e(1)),
            (span(3, p), vec![(3, one()), (2, alpha.clone())]),
            (with(&[2], span(4, p)), e(3)),
            (with(&[1], span(4, p)), e(1)),
        ],
        D3 => vec![
            (span(2, m), e(1)),
            (span(3, p), e(3)),
            (with(&[2], span(4, p)), e(2)),
            (with(&[1], span(4, p)), vec![(1, rat(2))]),
        ],
        D4 => vec![
            (span(2, m), e(1)),
            (with(&[1], span(3, m)), e(2)),
            (with(&[1, 2], span(4, m)), e(3)),
        ],
        D5 { beta } => vec![
            (with(&[1], span(4, p)), e(1)),
            (with(&[2], span(4, p)), e(3)),
            (
                with(&[3], span(4, p)),
                vec![(2, beta.clone()), (3, one() + beta)],
            ),
        ],
        D6 => (1..=3).map(|k| (with(&[k], span(4, p)), e(k))).collect(),
        D7 { s, t, u } => vec![
            (with(&[1], span(4, p)), e(2)),
            (with(&[2], span(4, p)), e(3)),
            (
                with(&[3], span(4, p)),
                vec![(1, s.clone()), (2, t.clone()), (3, u.clone())],
            ),
        ],
        R1 { r } => {
            let mut v = vec![(span(2, m), e(1))];
            v.extend((2..=*r).map(|i| (without(2, p, i), e(i))));
            v
        }
        R2 { r } => (1..=*r).map(|i| (without(1, m, i), e(i))).collect(),
    };
    build(n, n + label.codim(), entries)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum D7Equivalence {
    /// `(s, t, u) = (r^3 s', r^2 t', r u')` with this `r`.
    Equivalent(Rational),
    NotEquivalent,
    /// Equivalence would need an irrational cube root of `s / s'`.
    Indeterminate,
}

/// Exact rational `k`-th root, if there is one.
pub fn rational_root(x: &Rational, k: u32) -> Option<Rational> {
    if x.is_zero() {
        return Some(Rational::zero());
    }
    if x.is_negative() {
        if k.is_multiple_of(2) {
            return None;
        }
        return rational_root(&-x, k).map(|r| -r);
    }
    let root = |b: &BigInt| {
        let r = b.nth_root(k);
        (num_traits::pow(r.clone(), k as usize) == *b).then_some(r)
    };
    Some(Rational::new(root(x.numer())?, root(x.denom())?))
}

/// Decides whether the d7 parameter triples `p` and `q` are related by
/// `s = r^3 s', t = r^2 t', u = r u'` for a nonzero rational `r`.
///
/// `r` comes from `u / u'` when `u' != 0`, otherwise from `t / t'`, otherwise
/// from a cube root of `s / s'`. In the `t` case `r^2 = t/t'` together with
/// `r^3 = s/s'` forces `r = (s/s') / (t/t')`, so a definite answer exists even
/// when `t/t'` is not a rational square; only the pure cube-root case can be
/// indeterminate.
pub fn d7_equivalent(
    p: (&Rational, &Rational, &Rational),
    q: (&Rational, &Rational, &Rational),
) -> Result<D7Equivalence, Error> {
    let (s, t, u) = p;
    let (s2, t2, u2) = q;
    if s.is_zero() || s2.is_zero() {
        return Err(Error::InvalidParameter("d7 requires s != 0".into()));
    }
    let check = |r: &Rational| {
        !r.is_zero() && *s == r * r * r * s2 && *t == r * r * t2 && *u == r * u2
    };
    let verdict = |r: Rational| {
        if check(&r) {
            D7Equivalence::Equivalent(r)
        } else {
            D7Equivalence::NotEquivalent
        }
    };
    if !u2.is_zero() {
        return Ok(verdict(u / u2));
    }
    if !u.is_zero() {
        return Ok(D7Equivalence::NotEquivalent);
    }
    if !t2.is_zero() {
        let q2 = t / t2;
        if q2.is_zero() {
            return Ok(D7Equivalence::NotEquivalent);
        }
        return Ok(match rational_root(&q2, 2) {
            Some(r) => {
                if check(&r) {
                    D7Equivalence::Equivalent(r)
                } else {
                    verdict(-r)
                }
            }
            None => D7Equivalence::NotEquivalent,
        });
    }
    if !t.is_zero() {
        return Ok(D7Equivalence::NotEquivalent);
    }
    Ok(match rational_root(&(s / s2), 3) {
        Some(r) => verdict(r),
        None => D7Equivalence::Indeterminate,
    })
}

/// Invariant signatures of [`ClassLabel::samples`] for `n` in 3..=5.
pub fn signature_table(n: usize) -> Result<BTreeMap<ClassLabel, InvariantSignature>, Error> {
    if !(3..=5).contains(&n) {
        return Err(Error::UnsupportedArity(n));
    }
    ClassLabel::samples(n)
        .into_iter()
        .map(|l| {
            let a = canonical(n, &l)?;
            Ok((l, invariant_signature(&a)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_jacobi, derived_subalgebra};
    use crate::exactlin::{ratio, unit};

    #[test]
    fn b1_table() {
        let a = canonical(3, &ClassLabel::B1).unwrap();
        assert_eq!(a.dim(), 5);
        assert_eq!(a.table().len(), 1);
        assert_eq!(a.bracket_basis(&[1, 2, 3]), unit(5, 0));
    }

    #[test]
    fn d7_table() {
        let l = ClassLabel::D7 {
            s: rat(1),
            t: rat(0),
            u: rat(0),
        };
        let a = canonical(3, &l).unwrap();
        assert_eq!(a.table().len(), 3);
        assert_eq!(a.bracket_basis(&[0, 3, 4]), unit(5, 1));
        assert_eq!(a.bracket_basis(&[1, 3, 4]), unit(5, 2));
        assert_eq!(a.bracket_basis(&[2, 3, 4]), unit(5, 0));
    }

    #[test]
    fn c2_table_n4() {
        let a = canonical(4, &ClassLabel::C2).unwrap();
        assert_eq!(a.dim(), 6);
        assert_eq!(a.table().len(), 3);
        assert_eq!(a.bracket_basis(&[1, 2, 3, 4]), unit(6, 0));
        assert_eq!(a.bracket_basis(&[1, 3, 4, 5]), unit(6, 1));
        assert_eq!(a.bracket_basis(&[0, 3, 4, 5]), unit(6, 0));
    }

    #[test]
    fn parameter_constraints() {
        use ClassLabel::*;
        assert!(canonical(3, &C5 { alpha: rat(0) }).is_err());
        assert!(canonical(3, &D5 { beta: rat(1) }).is_err());
        assert!(canonical(3, &D7 { s: rat(0), t: rat(1), u: rat(1) }).is_err());
        assert!(canonical(3, &R1 { r: 5 }).is_err());
        assert!(canonical(3, &LemD { r: 2 }).is_err());
        assert!(matches!(canonical(2, &A), Err(Error::UnsupportedArity(2))));
    }

    #[test]
    fn all_samples_are_valid_with_header_dims() {
        for n in 3..=4 {
            for l in ClassLabel::samples(n) {
                let a = canonical(n, &l).unwrap();
                assert!(check_jacobi(&a).is_valid(), "{l} n={n}");
                let k = derived_subalgebra(&a).dim();
                let want = match &l {
                    ClassLabel::LemA | ClassLabel::A => 0,
                    ClassLabel::LemB1 | ClassLabel::LemB2 | ClassLabel::B1 | ClassLabel::B2 => 1,
                    ClassLabel::LemD { r } | ClassLabel::R1 { r } | ClassLabel::R2 { r } => *r,
                    x if x.family().starts_with("lem-c") || x.family().starts_with('c') => 2,
                    _ => 3,
                };
                assert_eq!(k, want, "{l} n={n}");
            }
        }
    }

    #[test]
    fn roots() {
        assert_eq!(rational_root(&ratio(8, 27), 3), Some(ratio(2, 3)));
        assert_eq!(rational_root(&ratio(-8, 27), 3), Some(ratio(-2, 3)));
        assert_eq!(rational_root(&rat(2), 3), None);
        assert_eq!(rational_root(&rat(-4), 2), None);
        assert_eq!(rational_root(&ratio(9, 4), 2), Some(ratio(3, 2)));
    }

    #[test]
    fn d7_examples() {
        let t = |a: i64, b: i64, c: i64| (rat(a), rat(b), rat(c));
        let eq = |p: &(Rational, Rational, Rational), q: &(Rational, Rational, Rational)| {
            d7_equivalent((&p.0, &p.1, &p.2), (&q.0, &q.1, &q.2)).unwrap()
        };
        assert_eq!(eq(&t(8, 4, 2), &t(1, 1, 1)), D7Equivalence::Equivalent(rat(2)));
        assert_eq!(eq(&t(1, 1, 1), &t(1, 1, -1)), D7Equivalence::NotEquivalent);
        assert_eq!(eq(&t(2, 0, 0), &t(1, 0, 0)), D7Equivalence::Indeterminate);
        assert_eq!(eq(&t(-1, 1, 0), &t(1, 1, 0)), D7Equivalence::Equivalent(rat(-1)));
        assert!(d7_equivalent((&rat(0), &rat(0), &rat(0)), (&rat(1), &rat(0), &rat(0))).is_err());
    }

    #[test]
    fn d7_reflexive_symmetric_multiplicative() {
        let vals = [rat(-2), rat(-1), ratio(1, 2), rat(1), rat(3)];
        let mut triples = Vec::new();
        for s in &vals {
            for t in [rat(0), rat(1), rat(-2)] {
                for u in [rat(0), rat(2)] {
                    triples.push((s.clone(), t.clone(), u));
                }
            }
        }
        let eq = |p: &(Rational, Rational, Rational), q: &(Rational, Rational, Rational)| {
            d7_equivalent((&p.0, &p.1, &p.2), (&q.0, &q.1, &q.2)).unwrap()
        };
        for p in &triples {
            assert_eq!(eq(p, p), D7Equivalence::Equivalent(rat(1)));
            for q in &triples {
                let a = eq(p, q);
                let b = eq(q, p);
                match (&a, &b) {
                    (D7Equivalence::Equivalent(r1), D7Equivalence::Equivalent(r2)) => {
                        assert_eq!(r1 * r2, rat(1))
                    }
                    _ => assert_eq!(std::mem::discriminant(&a), std::mem::discriminant(&b)),
                }
            }
        }
        // Chained witnesses multiply.
        let p = (rat(1), rat(1), rat(1));
        let q = (rat(8), rat(4), rat(2));
        let w = (rat(-216), rat(36), rat(-6));
        let (D7Equivalence::Equivalent(r1), D7Equivalence::Equivalent(r2)) = (eq(&w, &q), eq(&q, &p)) else {
            panic!("expected equivalences");
        };
        assert_eq!(eq(&w, &p), D7Equivalence::Equivalent(r1 * r2));
    }

    #[test]
    fn signature_table_entries() {
        let tab = signature_table(3).unwrap();
        let ab = &tab[&ClassLabel::A];
        assert_eq!(ab.as_tuple(), (3, 5, 0, 5, 0, 25, 5));
        // Both have a 2-dimensional center; only b1 has its derived line central.
        assert_eq!(tab[&ClassLabel::B1].dim_center, tab[&ClassLabel::B2].dim_center);
        assert_ne!(
            tab[&ClassLabel::B1].dim_center_in_derived,
            tab[&ClassLabel::B2].dim_center_in_derived
        );
        assert!(signature_table(6).is_err());
    }

    #[test]
    fn names_round_trip() {
        for l in ClassLabel::samples(4) {
            let alpha = l.params().iter().find(|p| p.0 == "alpha").map(|_| rat(1));
            let beta = l.params().iter().find(|p| p.0 == "beta").map(|_| rat(2));
            let stu = (l.family() == "d7").then(|| (rat(1), rat(1), rat(1)));
            let r = match &l {
                ClassLabel::LemD { r } | ClassLabel::R1 { r } | ClassLabel::R2 { r } => Some(*r),
                _ => None,
            };
            assert_eq!(ClassLabel::from_parts(l.family(), alpha, beta, stu, r).unwrap(), l);
        }
        assert!(ClassLabel::from_parts("zz", None, None, None, None).is_err());
        assert!(ClassLabel::from_parts("c5", None, None, None, None).is_err());
    }
}
