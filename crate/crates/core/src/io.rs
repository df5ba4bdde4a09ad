//! Algebra and matrix documents.
//!
//! Algebras are stored as `{"format":"nlie/1","arity":n,"dim":d,"field":"Q",
//! "brackets":[{"indices":[..],"coeffs":{"k":"p/q"}}]}` with 1-based indices;
//! matrices as `{"format":"nlie-matrix/1","rows":r,"cols":c,"entries":[[..]]}`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::{sort_sign, Algebra};
use crate::exactlin::{parse_rational, Matrix, Rational};
use crate::Error;

pub const ALGEBRA_FORMAT: &str = "nlie/1";
pub const MATRIX_FORMAT: &str = "nlie-matrix/1";

/// Strict parsing accepts only what [`serialize_algebra`] writes. Lenient
/// parsing also takes unreduced rationals and unsorted index tuples, fixing
/// the sign of the bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ParseMode {
    #[default]
    Strict,
    Lenient,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    format: String,
    arity: usize,
    dim: usize,
    field: String,
    brackets: Vec<BracketDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketDoc {
    indices: Vec<usize>,
    coeffs: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    format: String,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

/// Coefficients in basis order, written as a JSON object.
struct Coeffs<'a>(&'a [Rational]);

impl Serialize for Coeffs<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let nz: Vec<(usize, &Rational)> = self.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        let mut map = s.serialize_map(Some(nz.len()))?;
        for (k, x) in nz {
            map.serialize_entry(&(k + 1).to_string(), &x.to_string())?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct BracketOut<'a> {
    indices: Vec<usize>,
    coeffs: Coeffs<'a>,
}

#[derive(Serialize)]
struct AlgebraOut<'a> {
    format: &'static str,
    arity: usize,
    dim: usize,
    field: &'static str,
    brackets: Vec<BracketOut<'a>>,
}

#[derive(Serialize)]
struct MatrixOut {
    format: &'static str,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

fn json_error(e: serde_json::Error) -> Error {
    use serde_json::error::Category;
    match e.classify() {
        Category::Data => Error::Schema(e.to_string()),
        _ => Error::Parse {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        },
    }
}

fn schema(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::Schema(format!("{field}: {msg}"))
}

fn rational(s: &str, mode: ParseMode, field: &str) -> Result<Rational, Error> {
    let strict = mode == ParseMode::Strict;
    let x = parse_rational(s, strict).map_err(|m| schema(field, m))?;
    if strict && x.to_string() != s {
        return Err(schema(field, "rational not canonical"));
    }
    Ok(x)
}

pub fn parse_algebra(text: &str, mode: ParseMode) -> Result<Algebra, Error> {
    let doc: AlgebraDoc = serde_json::from_str(text).map_err(json_error)?;
    if doc.format != ALGEBRA_FORMAT {
        return Err(schema("format", format!("expected {ALGEBRA_FORMAT:?}, got {:?}", doc.format)));
    }
    if doc.field != "Q" {
        return Err(schema("field", format!("only \"Q\" is supported, got {:?}", doc.field)));
    }
    let (n, d) = (doc.arity, doc.dim);
    if n < 2 || d < n {
        return Err(schema("arity", format!("need 2 <= arity <= dim, got arity {n}, dim {d}")));
    }
    let mut a = Algebra::abelian(n, d)?;
    let mut seen = BTreeSet::new();
    for (b, br) in doc.brackets.iter().enumerate() {
        let f = format!("brackets[{b}]");
        if br.indices.len() != n {
            return Err(schema(&format!("{f}.indices"), format!("expected {n} indices")));
        }
        if let Some(&i) = br.indices.iter().find(|&&i| i == 0 || i > d) {
            return Err(schema(&format!("{f}.indices"), format!("index {i} outside 1..={d}")));
        }
        let ascending = br.indices.windows(2).all(|w| w[0] < w[1]);
        let mut key: Vec<usize> = br.indices.iter().map(|i| i - 1).collect();
        key.sort_unstable();
        let repeated = key.windows(2).any(|w| w[0] == w[1]);
        if !ascending && (mode == ParseMode::Strict || repeated) {
            return Err(schema(&format!("{f}.indices"), "indices not ascending"));
        }
        if !seen.insert(key.clone()) {
            return Err(schema(&format!("{f}.indices"), "duplicate index tuple"));
        }
        let mut v = vec![Rational::zero(); d];
        for (k, s) in &br.coeffs {
            let cf = format!("{f}.coeffs[{k:?}]");
            let idx: usize = k.parse().map_err(|_| schema(&cf, "key is not a basis index"))?;
            if idx == 0 || idx > d || (mode == ParseMode::Strict && idx.to_string() != *k) {
                return Err(schema(&cf, format!("key is not a basis index in 1..={d}")));
            }
            let x = rational(s, mode, &cf)?;
            if mode == ParseMode::Strict && x.is_zero() {
                return Err(schema(&cf, "zero coefficient"));
            }
            if !v[idx - 1].is_zero() {
                return Err(schema(&cf, "duplicate key"));
            }
            v[idx - 1] = x;
        }
        if sort_sign(&br.indices) < 0 {
            v = v.into_iter().map(|x| -x).collect();
        }
        a.set_bracket(&key, v)?;
    }
    Ok(a)
}

/// Pretty-printed, brackets and coefficients in ascending basis order.
pub fn serialize_algebra(a: &Algebra) -> String {
    let doc = AlgebraOut {
        format: ALGEBRA_FORMAT,
        arity: a.arity(),
        dim: a.dim(),
        field: "Q",
        brackets: a
            .table()
            .iter()
            .map(|(k, v)| BracketOut {
                indices: k.iter().map(|i| i + 1).collect(),
                coeffs: Coeffs(v),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn parse_matrix(text: &str, mode: ParseMode) -> Result<Matrix, Error> {
    let doc: MatrixDoc = serde_json::from_str(text).map_err(json_error)?;
    if doc.format != MATRIX_FORMAT {
        return Err(schema("format", format!("expected {MATRIX_FORMAT:?}, got {:?}", doc.format)));
    }
    if doc.entries.len() != doc.rows {
        return Err(schema("entries", format!("expected {} rows", doc.rows)));
    }
    let mut vals = Vec::with_capacity(doc.rows * doc.cols);
    for (i, row) in doc.entries.iter().enumerate() {
        if row.len() != doc.cols {
            return Err(schema(&format!("entries[{i}]"), format!("expected {} columns", doc.cols)));
        }
        for (j, s) in row.iter().enumerate() {
            vals.push(rational(s, mode, &format!("entries[{i}][{j}]"))?);
        }
    }
    Matrix::from_vec(doc.rows, doc.cols, vals)
}

pub fn serialize_matrix(m: &Matrix) -> String {
    let doc = MatrixOut {
        format: MATRIX_FORMAT,
        rows: m.rows(),
        cols: m.cols(),
        entries: m
            .to_rows()
            .into_iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{canonical, ClassLabel};
    use crate::exactlin::{rat, ratio};

    fn doc(brackets: &str) -> String {
        format!(r#"{{"format":"nlie/1","arity":3,"dim":5,"field":"Q","brackets":[{brackets}]}}"#)
    }

    #[test]
    fn round_trip_all_classes() {
        for n in 3..=5 {
            for l in ClassLabel::samples(n) {
                let a = canonical(n, &l).unwrap();
                let s = serialize_algebra(&a);
                assert_eq!(parse_algebra(&s, ParseMode::Strict).unwrap(), a, "{l}");
            }
        }
    }

    #[test]
    fn spec_example_parses() {
        let a = parse_algebra(&doc(r#"{"indices":[2,3,4],"coeffs":{"1":"1"}}"#), ParseMode::Strict).unwrap();
        assert_eq!(a, canonical(3, &ClassLabel::B1).unwrap());
    }

    #[test]
    fn non_ascending_indices() {
        let text = doc(r#"{"indices":[2,1,3],"coeffs":{"1":"1"}}"#);
        let e = parse_algebra(&text, ParseMode::Strict).unwrap_err();
        assert!(matches!(&e, Error::Schema(m) if m.contains("indices not ascending")), "{e}");
        // lenient: [e2, e1, e3] = e1 means [e1, e2, e3] = -e1
        let a = parse_algebra(&text, ParseMode::Lenient).unwrap();
        assert_eq!(a.bracket_basis(&[0, 1, 2])[0], rat(-1));
    }

    #[test]
    fn unreduced_rational() {
        let text = doc(r#"{"indices":[1,2,3],"coeffs":{"4":"2/4"}}"#);
        let e = parse_algebra(&text, ParseMode::Strict).unwrap_err();
        assert!(matches!(&e, Error::Schema(m) if m.contains("rational not reduced")), "{e}");
        let a = parse_algebra(&text, ParseMode::Lenient).unwrap();
        assert_eq!(a.bracket_basis(&[0, 1, 2])[3], ratio(1, 2));
    }

    #[test]
    fn duplicate_tuples_rejected_in_both_modes() {
        let text = doc(r#"{"indices":[1,2,3],"coeffs":{"4":"1"}},{"indices":[2,1,3],"coeffs":{"4":"1"}}"#);
        assert!(matches!(parse_algebra(&text, ParseMode::Lenient), Err(Error::Schema(_))));
        let text = doc(r#"{"indices":[1,2,3],"coeffs":{"4":"1"}},{"indices":[1,2,3],"coeffs":{"5":"1"}}"#);
        assert!(matches!(parse_algebra(&text, ParseMode::Strict), Err(Error::Schema(_))));
    }

    #[test]
    fn syntax_error_has_position() {
        let e = parse_algebra("{\n  \"format\": \"nlie/1\",\n  oops\n}", ParseMode::Strict).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
    }

    #[test]
    fn wrong_fields() {
        let bad_format = r#"{"format":"nlie/2","arity":3,"dim":5,"field":"Q","brackets":[]}"#;
        assert!(matches!(parse_algebra(bad_format, ParseMode::Strict), Err(Error::Schema(m)) if m.starts_with("format")));
        let missing = r#"{"format":"nlie/1","arity":3,"field":"Q","brackets":[]}"#;
        assert!(matches!(parse_algebra(missing, ParseMode::Strict), Err(Error::Schema(m)) if m.contains("dim")));
        let range = doc(r#"{"indices":[1,2,3],"coeffs":{"6":"1"}}"#);
        assert!(matches!(parse_algebra(&range, ParseMode::Strict), Err(Error::Schema(_))));
    }

    #[test]
    fn matrix_round_trip() {
        let m = Matrix::from_rows(vec![vec![rat(1), ratio(-2, 3)], vec![rat(0), rat(5)]]).unwrap();
        let s = serialize_matrix(&m);
        assert_eq!(parse_matrix(&s, ParseMode::Strict).unwrap(), m);
        let bad = r#"{"format":"nlie-matrix/1","rows":2,"cols":2,"entries":[["1","0"]]}"#;
        assert!(matches!(parse_matrix(bad, ParseMode::Strict), Err(Error::Schema(_))));
    }

    #[test]
    fn serialization_is_deterministic() {
        let a = canonical(4, &ClassLabel::D7 { s: rat(2), t: ratio(1, 3), u: rat(-1) }).unwrap();
        assert_eq!(serialize_algebra(&a), serialize_algebra(&a.clone()));
        assert!(serialize_algebra(&a).contains("\"1/3\""));
    }

    mod props {
        use super::*;
        use crate::transform::{change_basis_multilinear, random_basis_change};
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn round_trip_after_basis_change(i in 0usize..20, seed in 0u64..10_000) {
                let labels = ClassLabel::theorem_samples(3);
                let can = canonical(3, &labels[i % labels.len()]).unwrap();
                let a = change_basis_multilinear(&can, &random_basis_change(5, seed, 3)).unwrap();
                prop_assert_eq!(parse_algebra(&serialize_algebra(&a), ParseMode::Strict).unwrap(), a);
            }
        }
    }
}
