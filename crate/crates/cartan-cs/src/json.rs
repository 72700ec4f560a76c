//! Shared JSON encodings: complex scalars as `[re, im]`, matrices as
//! row-major lists of such pairs.

use serde_json::{json, Value};

use crate::{Error, Result, C64};

pub fn complex(c: C64) -> Value {
    json!([c.re, c.im])
}

pub fn parse_complex(v: &Value) -> Result<C64> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::InvalidIndex(format!("expected [re, im], got {v}")))?;
    let re = pair[0].as_f64();
    let im = pair[1].as_f64();
    match (re, im) {
        (Some(re), Some(im)) => Ok(C64::new(re, im)),
        _ => Err(Error::InvalidIndex(format!("non-numeric pair {v}"))),
    }
}

pub fn matrix<'a>(entries_row_major: impl IntoIterator<Item = &'a C64>) -> Value {
    Value::Array(entries_row_major.into_iter().map(|c| complex(*c)).collect())
}

pub fn parse_matrix(v: &Value, len: usize) -> Result<Vec<C64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::InvalidIndex("matrix must be a JSON array".into()))?;
    if arr.len() != len {
        return Err(Error::InvalidIndex(format!(
            "matrix has {} entries, expected {len}",
            arr.len()
        )));
    }
    arr.iter().map(parse_complex).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let m = [C64::new(1.0, -2.0), C64::new(0.5, 0.0)];
        let v = matrix(m.iter());
        assert_eq!(v.to_string(), "[[1.0,-2.0],[0.5,0.0]]");
        assert_eq!(parse_matrix(&v, 2).unwrap(), m.to_vec());
        assert!(parse_matrix(&v, 3).is_err());
        assert!(parse_complex(&json!([1.0])).is_err());
    }
}
