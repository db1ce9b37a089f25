//! JSON state files: `{"m": int, "n": int, "matrix": [[[re, im], ...], ...]}`,
//! row-major, every number written with 17 significant digits.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde_json::Value;

use super::{validate, BipartiteDims, DensityMatrix};
use crate::linalg::ComplexMatrix;
use crate::numfmt::sig17;
use crate::{Error, Result};

/// Renders a matrix in the state-file layout. `origin`, when given, is added
/// as an extra `"origin"` field (used for dumps of rearranged matrices).
pub fn matrix_to_json(dims: BipartiteDims, origin: Option<&str>, mat: &ComplexMatrix) -> String {
    let mut out = String::new();
    out.push_str(&format!("{{\"m\": {}, \"n\": {}, ", dims.m(), dims.n()));
    if let Some(origin) = origin {
        out.push_str(&format!("\"origin\": \"{origin}\", "));
    }
    out.push_str("\"matrix\": [\n");
    for i in 0..mat.rows() {
        let row: Vec<String> = (0..mat.cols())
            .map(|j| {
                let z = mat.get(i, j);
                format!("[{}, {}]", sig17(z.re), sig17(z.im))
            })
            .collect();
        out.push_str("  [");
        out.push_str(&row.join(", "));
        out.push(']');
        if i + 1 < mat.rows() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("]}\n");
    out
}

pub fn state_to_json(state: &DensityMatrix) -> String {
    matrix_to_json(state.dims(), None, state.matrix())
}

fn dimension(doc: &Value, key: &str) -> Result<usize> {
    doc.get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| Error::Parse(format!("missing or non-integer field \"{key}\"")))
}

fn number(v: &Value, i: usize, j: usize, part: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::Parse(format!("entry ({i}, {j}): {part} part is not a number")))
}

/// Parses and validates a state document.
pub fn parse_state(text: &str) -> Result<DensityMatrix> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let dims = BipartiteDims::new(dimension(&doc, "m")?, dimension(&doc, "n")?)?;
    let rows = doc
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing array field \"matrix\"".into()))?;
    let ncols = rows.first().and_then(Value::as_array).map_or(0, Vec::len);
    let mut entries = Vec::with_capacity(rows.len() * ncols);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("row {i} is not an array")))?;
        if row.len() != ncols {
            return Err(Error::Parse(format!(
                "row {i} has {} entries, expected {ncols}",
                row.len()
            )));
        }
        for (j, z) in row.iter().enumerate() {
            match z.as_array().map(Vec::as_slice) {
                Some([re, im]) => {
                    entries.push(Complex64::new(number(re, i, j, "real")?, number(im, i, j, "imaginary")?))
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "entry ({i}, {j}) must be a [re, im] pair"
                    )))
                }
            }
        }
    }
    let mat = ComplexMatrix::from_row_major(rows.len(), ncols, entries)?;
    validate(mat, dims)
}

pub fn load_state(path: impl AsRef<Path>) -> Result<DensityMatrix> {
    parse_state(&fs::read_to_string(path)?)
}

pub fn save_state(state: &DensityMatrix, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, state_to_json(state))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{isotropic, random_density};

    #[test]
    fn save_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mixed.json");
        let rho = isotropic(0.25).unwrap();
        save_state(&rho, &path).unwrap();
        assert_eq!(load_state(&path).unwrap(), rho);

        let rho = random_density(BipartiteDims::new(2, 3).unwrap(), 6, 11).unwrap();
        save_state(&rho, &path).unwrap();
        let back = load_state(&path).unwrap();
        assert_eq!(back.matrix().row_major(), rho.matrix().row_major());
        assert_eq!(back.dims(), rho.dims());
    }

    #[test]
    fn bad_trace_names_trace() {
        let text = r#"{"m": 2, "n": 2, "matrix": [
            [[0.225, 0], [0, 0], [0, 0], [0, 0]],
            [[0, 0], [0.225, 0], [0, 0], [0, 0]],
            [[0, 0], [0, 0], [0.225, 0], [0, 0]],
            [[0, 0], [0, 0], [0, 0], [0.225, 0]]]}"#;
        let err = parse_state(text).unwrap_err();
        assert!(err.to_string().contains("trace"), "{err}");
    }

    #[test]
    fn parse_errors_carry_coordinates() {
        let text = r#"{"m": 2, "n": 2, "matrix": [[[1, 0], [0]], [[0, 0], [0, 0]]]}"#;
        let err = parse_state(text).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
        assert!(err.to_string().contains("(0, 1)"), "{err}");
        assert!(parse_state("{\"m\": 2}").is_err());
        assert!(parse_state("not json").is_err());
    }

    #[test]
    fn writer_layout() {
        let rho = isotropic(0.25).unwrap();
        let text = state_to_json(&rho);
        assert!(text.starts_with("{\"m\": 2, \"n\": 2, \"matrix\": [\n  [[2.5000000000000000e-1, 0.0000000000000000e0], "));
        assert!(text.ends_with("]]\n]}\n"));
    }
}
