//! JSON interchange format for QUBO instances.
//!
//! The on-disk shape is `{"n": int, "offset": float, "terms": [[i, j, value], ...]}`
//! with `i ≤ j`; terms are written in ascending `(i, j)` order so files are
//! byte-stable for a given problem.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{QuboError, QuboProblem, Result};

#[derive(Serialize, Deserialize)]
struct QuboFile {
    n: usize,
    offset: f64,
    terms: Vec<(usize, usize, f64)>,
}

/// Serialise a problem to the JSON interchange form.
pub fn to_json(problem: &QuboProblem) -> String {
    let file = QuboFile {
        n: problem.n(),
        offset: problem.offset(),
        terms: problem.terms().collect(),
    };
    serde_json::to_string_pretty(&file).expect("qubo serialisation cannot fail")
}

/// Parse a problem from the JSON interchange form.
pub fn from_json(text: &str) -> Result<QuboProblem> {
    let file: QuboFile =
        serde_json::from_str(text).map_err(|e| QuboError::Format(e.to_string()))?;
    for &(i, j, _) in &file.terms {
        if i > j {
            return Err(QuboError::Format(format!(
                "term ({i}, {j}) violates i <= j"
            )));
        }
    }
    QuboProblem::from_terms(file.n, file.terms, file.offset)
}

pub fn save(problem: &QuboProblem, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_json(problem))?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<QuboProblem> {
    from_json(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random_qubo;

    #[test]
    fn round_trip_preserves_problem() {
        let p = random_qubo(8, -10.0, 10.0, 17).unwrap();
        let back = from_json(&to_json(&p)).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn format_shape_is_stable() {
        let p = QuboProblem::from_terms(2, [(0, 1, 4.0), (0, 0, -1.0)], 0.5).unwrap();
        let text = to_json(&p);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["offset"], 0.5);
        assert_eq!(v["terms"][0][0], 0);
        assert_eq!(v["terms"][0][1], 0);
        assert_eq!(v["terms"][0][2], -1.0);
    }

    #[test]
    fn rejects_lower_triangular_terms() {
        assert!(from_json(r#"{"n": 2, "offset": 0.0, "terms": [[1, 0, 1.0]]}"#).is_err());
    }

    #[test]
    fn rejects_garbage() {
        assert!(from_json("not json").is_err());
    }
}
