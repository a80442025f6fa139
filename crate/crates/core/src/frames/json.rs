//! Frame files: `{"m":..,"n":..,"field":"real"|"complex","columns":[[[re,im],..],..]}`.
//!
//! Numbers are written with 17 significant digits, which round-trips any
//! `f64` exactly.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use super::{FieldTag, Frame};
use crate::error::{Error, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFrame {
    m: usize,
    n: usize,
    field: String,
    columns: Vec<Vec<[f64; 2]>>,
}

pub fn to_json_string(f: &Frame) -> String {
    let mut out = String::new();
    write!(
        out,
        "{{\"m\":{},\"n\":{},\"field\":\"{}\",\"columns\":[",
        f.m(),
        f.n(),
        f.field().as_str()
    )
    .expect("writing to a String cannot fail");
    for (j, col) in f.columns().enumerate() {
        out.push_str(if j == 0 { "\n[" } else { ",\n[" });
        for (i, z) in col.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "[{:.16e},{:.16e}]", z.re, z.im).expect("writing to a String cannot fail");
        }
        out.push(']');
    }
    out.push_str("\n]}\n");
    out
}

pub fn from_json_str(s: &str) -> Result<Frame> {
    let raw: RawFrame = serde_json::from_str(s)?;
    let field: FieldTag = raw.field.parse()?;
    if raw.columns.len() != raw.n {
        return Err(Error::Format(format!(
            "declared n = {} but found {} columns",
            raw.n,
            raw.columns.len()
        )));
    }
    if let Some(j) = raw.columns.iter().position(|c| c.len() != raw.m) {
        return Err(Error::Format(format!(
            "column {j} has {} entries, expected m = {}",
            raw.columns[j].len(),
            raw.m
        )));
    }
    let entries = raw
        .columns
        .into_iter()
        .flatten()
        .map(|[re, im]| Complex64::new(re, im))
        .collect();
    Frame::new(raw.m, raw.n, entries, field).map_err(|e| Error::Format(e.to_string()))
}

pub fn write_json(f: &Frame, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_json_string(f))?;
    Ok(())
}

pub fn read_json(path: impl AsRef<Path>) -> Result<Frame> {
    from_json_str(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::simplex_frame;

    #[test]
    fn round_trip_is_exact() {
        let f = simplex_frame(4).unwrap();
        let back = from_json_str(&to_json_string(&f)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn real_frames_keep_their_tag() {
        let f = Frame::from_columns(vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)],
        ])
        .unwrap();
        let s = to_json_string(&f);
        assert!(s.starts_with("{\"m\":2,\"n\":2,\"field\":\"real\""));
        assert_eq!(from_json_str(&s).unwrap(), f);
    }

    #[test]
    fn rejects_malformed_input() {
        let bad = [
            r#"{"m":1,"n":2,"field":"real","columns":[[[1,0]]]}"#,
            r#"{"m":2,"n":1,"field":"real","columns":[[[1,0]]]}"#,
            r#"{"m":1,"n":1,"field":"quaternion","columns":[[[1,0]]]}"#,
            r#"{"m":1,"n":1,"field":"real","columns":[[[0.5,0]]]}"#,
            r#"{"m":1,"n":1,"field":"real","columns":[[[0,1]]]}"#,
            r#"{"m":1,"n":1,"field":"real","columns":[[[1,0]]],"extra":3}"#,
            r#"not json"#,
        ];
        for s in bad {
            assert!(from_json_str(s).is_err(), "{s}");
        }
        assert!(from_json_str(r#"{"m":1,"n":1,"field":"complex","columns":[[[0,1]]]}"#).is_ok());
    }
}
