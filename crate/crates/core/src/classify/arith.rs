//! Small number-theoretic helpers for parameter representatives.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactlin::Rational;

/// Trial division stops here; a cofactor above the cube of the bound may
/// hide repeated large primes and is then reported as not fully factored.
const TRIAL_BOUND: u64 = 1_000_000;

/// Prime powers of `m` found by trial division up to `cbrt(m)`, and the
/// cofactor. All prime factors of the cofactor exceed `cbrt(m)`, so it is
/// `1`, `p`, `p q` or `p^2`. `None` if the bound was hit first.
fn factor(m: &BigUint) -> Option<(Vec<(u64, u32)>, BigUint)> {
    let mut rest = m.clone();
    let mut out = Vec::new();
    let limit = m.cbrt() + BigUint::one();
    let mut p: u64 = 2;
    while BigUint::from(p) <= limit {
        if p > TRIAL_BOUND {
            return None;
        }
        let bp = BigUint::from(p);
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        if rest.is_one() {
            break;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    Some((out, rest))
}

fn squarefree_uint(m: &BigUint) -> Option<BigUint> {
    let (fs, rest) = factor(m)?;
    let mut out = BigUint::one();
    for (p, e) in fs {
        if e % 2 == 1 {
            out *= BigUint::from(p);
        }
    }
    let s = rest.sqrt();
    if &s * &s != rest {
        out *= rest;
    }
    Some(out)
}

/// The squarefree integer `m` with `x = m q^2` for a rational `q`.
pub(crate) fn squarefree_part(x: &Rational) -> Option<BigInt> {
    if x.is_zero() {
        return None;
    }
    let prod = (x.numer() * x.denom()).abs().to_biguint()?;
    let m = squarefree_uint(&prod)?;
    let sign = if x.is_negative() { Sign::Minus } else { Sign::Plus };
    Some(BigInt::from_biguint(sign, m))
}

/// Exponent adjustment `-floor(e/3)` for every prime with `|e| >= 3`.
fn cube_shift(m: &BigUint) -> Option<Vec<(u64, i64)>> {
    let (fs, _) = factor(m)?;
    Some(
        fs.into_iter()
            .filter(|&(_, e)| e >= 3)
            .map(|(p, e)| (p, (e / 3) as i64))
            .collect(),
    )
}

/// A nonzero `r` making `r^3 s` a positive cube-free integer. Falls back to
/// clearing the denominator only when trial division gives up.
pub(crate) fn cube_free_scale(s: &Rational) -> Rational {
    let num = s.numer().abs().to_biguint().expect("nonnegative");
    let den = s.denom().to_biguint().expect("positive");
    let mut r = Rational::one();
    // r^3 s must be an integer: multiply by the denominator first.
    r *= Rational::from_integer(BigInt::from_biguint(Sign::Plus, den.clone()));
    if let Some(shift) = cube_shift(&(&num * &den * &den)) {
        for (p, q) in shift {
            let pp = BigInt::from(p).pow(q.to_u32().expect("small exponent"));
            r /= Rational::from_integer(pp);
        }
    }
    if s.is_negative() {
        r = -r;
    }
    r
}
