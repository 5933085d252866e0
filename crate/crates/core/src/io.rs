//! JSON formats for matrices and representations, and a canonical writer
//! with fixed float formatting so that identical data gives identical bytes.
//!
//! A complex matrix is a row-major list of `[re, im]` pairs; nested rows
//! (`[[[re, im], ...], ...]`) are accepted on input. A surface
//! representation file looks like
//!
//! ```json
//! {"descriptor": {"family": "SL", "n": 2}, "genus": 1,
//!  "A": [[[1, 0], [0, 0], [0, 0], [1, 0]]],
//!  "B": [[[1, 0], [0, 0], [0, 0], [1, 0]]]}
//! ```
//!
//! with an optional `"tol"` for the relator check.

use std::io;

use nalgebra::Complex;
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupElement};
use crate::rep::{FreeRep, Representation, SurfaceRep};
use crate::scalar::{lit, to_f64, CMat, Real};

/// Compact JSON with every float written as `{:.16e}` (17 significant
/// digits, exact round trip for `f64`). Non-finite floats become `null`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CanonicalFormatter;

impl Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serializes with [`CanonicalFormatter`].
pub fn to_canonical_string<S: Serialize + ?Sized>(value: &S) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json writes UTF-8"))
}

/// Row-major `[[re, im], ...]`.
pub fn matrix_to_json<T: Real>(m: &CMat<T>) -> Value {
    let mut out = Vec::with_capacity(m.len());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            out.push(serde_json::json!([to_f64(z.re), to_f64(z.im)]));
        }
    }
    Value::Array(out)
}

fn complex_from_json<T: Real>(v: &Value) -> Result<Complex<T>> {
    let pair = v.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::Parse(format!("expected [re, im], got {v}")))?;
    let num = |x: &Value| x.as_f64().ok_or_else(|| Error::Parse(format!("expected a number, got {x}")));
    Ok(Complex::new(lit(num(&pair[0])?), lit(num(&pair[1])?)))
}

/// Reads an `n × n` matrix, flat or as nested rows.
pub fn matrix_from_json<T: Real>(v: &Value, n: usize) -> Result<CMat<T>> {
    let items = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array".into()))?;
    // nested rows have an array where a flat entry has its real part
    let nested = items.first().and_then(Value::as_array).and_then(|e| e.first()).is_some_and(Value::is_array);
    let mut flat: Vec<&Value> = Vec::with_capacity(n * n);
    for item in items {
        match (nested, item.as_array()) {
            (true, Some(row)) if row.len() == n => flat.extend(row),
            (true, _) => return Err(Error::Parse(format!("expected a row of {n} entries, got {item}"))),
            (false, _) => flat.push(item),
        }
    }
    if flat.len() != n * n {
        return Err(Error::Parse(format!("expected {} entries for a {n}x{n} matrix, got {}", n * n, flat.len())));
    }
    let entries = flat.into_iter().map(complex_from_json).collect::<Result<Vec<_>>>()?;
    Ok(CMat::from_row_slice(n, n, &entries))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RepFile {
    descriptor: GroupDescriptor,
    genus: usize,
    #[serde(rename = "A")]
    a: Vec<Value>,
    #[serde(rename = "B")]
    b: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tol: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FreeRepFile {
    descriptor: GroupDescriptor,
    rank: usize,
    #[serde(rename = "C")]
    c: Vec<Value>,
}

fn elements<T: Real>(desc: GroupDescriptor, items: &[Value]) -> Result<Vec<GroupElement<T>>> {
    let n = desc.ambient_dim();
    items.iter().map(|v| GroupElement::new(desc, matrix_from_json(v, n)?)).collect()
}

/// The JSON form of a surface representation.
pub fn rep_to_json<T: Real>(rep: &SurfaceRep<T>) -> Value {
    let file = RepFile {
        descriptor: rep.descriptor(),
        genus: rep.genus(),
        a: rep.a().iter().map(|x| matrix_to_json(x.matrix())).collect(),
        b: rep.b().iter().map(|x| matrix_to_json(x.matrix())).collect(),
        tol: (to_f64(rep.tol()) != to_f64(T::relator_tol())).then(|| to_f64(rep.tol())),
    };
    serde_json::to_value(file).expect("plain data serializes")
}

pub fn rep_to_string<T: Real>(rep: &SurfaceRep<T>) -> Result<String> {
    to_canonical_string(&rep_to_json(rep))
}

/// Parses a representation without checking the relator, so that callers
/// can report the residual. Element shapes, determinants and the genus are
/// still checked.
pub fn rep_from_str_unvalidated<T: Real>(s: &str) -> Result<SurfaceRep<T>> {
    let file: RepFile = serde_json::from_str(s)?;
    if file.a.len() != file.genus {
        return Err(Error::GenusMismatch { expected: file.genus, found: file.a.len() });
    }
    if file.b.len() != file.genus {
        return Err(Error::GenusMismatch { expected: file.genus, found: file.b.len() });
    }
    let rep = SurfaceRep::unvalidated(file.descriptor, elements(file.descriptor, &file.a)?, elements(file.descriptor, &file.b)?)?;
    Ok(match file.tol {
        Some(t) => rep.set_tol(lit(t)),
        None => rep,
    })
}

/// Parses a representation and checks the relator.
pub fn rep_from_str<T: Real>(s: &str) -> Result<SurfaceRep<T>> {
    let rep = rep_from_str_unvalidated(s)?;
    rep.validate()?;
    Ok(rep)
}

pub fn free_rep_to_json<T: Real>(rep: &FreeRep<T>) -> Value {
    let file = FreeRepFile {
        descriptor: rep.descriptor(),
        rank: rep.rank(),
        c: rep.images_c().iter().map(|x| matrix_to_json(x.matrix())).collect(),
    };
    serde_json::to_value(file).expect("plain data serializes")
}

pub fn free_rep_from_str<T: Real>(s: &str) -> Result<FreeRep<T>> {
    let file: FreeRepFile = serde_json::from_str(s)?;
    if file.c.len() != file.rank {
        return Err(Error::GenusMismatch { expected: file.rank, found: file.c.len() });
    }
    FreeRep::new(file.descriptor, elements(file.descriptor, &file.c)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;
    use crate::rep::random_good_schottky;

    #[test]
    fn canonical_floats() {
        let s = to_canonical_string(&serde_json::json!({"x": 0.1, "y": -2.0, "z": 3, "w": [1e-300]})).unwrap();
        assert_eq!(s, r#"{"w":[1.0000000000000000e-300],"x":1.0000000000000001e-1,"y":-2.0000000000000000e0,"z":3}"#);
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["x"].as_f64(), Some(0.1));
    }

    #[test]
    fn rep_round_trip_is_bit_exact() {
        let d = GroupDescriptor::new(Family::Sl, 3).unwrap();
        let rep = random_good_schottky::<f64>(d, 2, true, 4).unwrap();
        let s = rep_to_string(&rep).unwrap();
        let back: SurfaceRep<f64> = rep_from_str(&s).unwrap();
        assert_eq!(back, rep);
        assert_eq!(rep_to_string(&back).unwrap(), s);
    }

    #[test]
    fn nested_rows_accepted() {
        let s = r#"{"descriptor": {"family": "PSL", "n": 2}, "genus": 1,
            "A": [[[[0, 1], [0, 0]], [[0, 0], [0, -1]]]],
            "B": [[[0, 0], [1, 0], [-1, 0], [0, 0]]]}"#;
        let rep: SurfaceRep<f64> = rep_from_str(s).unwrap();
        assert_eq!(rep.a()[0].matrix()[(1, 1)], Complex::new(0.0, -1.0));
        assert_eq!(rep.b()[0].matrix()[(1, 0)], Complex::new(-1.0, 0.0));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(rep_from_str::<f64>("{"), Err(Error::Json(_))));
        let bad_genus = r#"{"descriptor": {"family": "SL", "n": 2}, "genus": 2,
            "A": [[[1, 0], [0, 0], [0, 0], [1, 0]]], "B": [[[1, 0], [0, 0], [0, 0], [1, 0]]]}"#;
        assert!(matches!(rep_from_str::<f64>(bad_genus), Err(Error::GenusMismatch { .. })));
        let bad_family = r#"{"descriptor": {"family": "SO", "n": 2}, "genus": 1, "A": [], "B": []}"#;
        assert!(rep_from_str::<f64>(bad_family).is_err());
        let short = r#"{"descriptor": {"family": "SL", "n": 2}, "genus": 1,
            "A": [[[1, 0], [0, 0], [1, 0]]], "B": [[[1, 0], [0, 0], [0, 0], [1, 0]]]}"#;
        assert!(matches!(rep_from_str::<f64>(short), Err(Error::Parse(_))));
    }

    #[test]
    fn broken_relator_loads_unvalidated() {
        let s = r#"{"descriptor": {"family": "SL", "n": 2}, "genus": 1,
            "A": [[[2, 0], [0, 0], [0, 0], [0.5, 0]]], "B": [[[1, 0], [1, 0], [0, 0], [1, 0]]]}"#;
        let rep: SurfaceRep<f64> = rep_from_str_unvalidated(s).unwrap();
        assert!(rep.relator_residual() > 1.0);
        assert!(matches!(rep_from_str::<f64>(s), Err(Error::RelatorViolated { .. })));
    }

    #[test]
    fn free_rep_round_trip() {
        let d = GroupDescriptor::new(Family::Gl, 2).unwrap();
        let rep = FreeRep::new(d, vec![crate::group::random_unitary::<f64>(d, 1)]).unwrap();
        let s = to_canonical_string(&free_rep_to_json(&rep)).unwrap();
        assert_eq!(free_rep_from_str::<f64>(&s).unwrap(), rep);
    }
}
