//! Problem-file parsing and validation. Input is a single JSON document
//! with string-encoded exact scalars ("p/q" over Q, "a/b+c/d i" over Qi);
//! indices are 1-based. Parse-level validation mirrors the library's type
//! invariants and anchors every complaint to the offending key.

use serde::Deserialize;

use dirac_core::algebra::LieAlgebra;
use dirac_core::curvature::CurvatureModel;
use dirac_core::double::DoubleSubspace;
use dirac_core::isotropic::IsotropicPair;
use dirac_core::matrix::Matrix;
use dirac_core::parabolic::Grading;
use dirac_core::scalar::{Field, GaussianRational, Rational};
use dirac_core::subspace::Subspace;

use crate::Failure;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: String,
    pub dim: usize,
    #[serde(default)]
    pub basis_names: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<TensorEntry>,
    pub p: Vec<Vec<String>>,
    #[serde(default)]
    pub curvature: Option<Vec<TensorEntry>>,
    #[serde(default, rename = "D")]
    pub d: Option<Vec<Vec<String>>>,
    #[serde(default, rename = "E")]
    pub e: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub eps: Option<Vec<FormEntry>>,
    #[serde(default)]
    pub grading: Option<GradingFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormEntry {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingFile {
    pub l: usize,
    pub parts: Vec<Vec<Vec<String>>>,
}

/// A fully validated problem over one concrete field.
pub struct TypedProblem<K: Field> {
    pub dim: usize,
    pub basis_names: Option<Vec<String>>,
    pub algebra: LieAlgebra<K>,
    pub p: Subspace<K>,
    pub curvature: Option<CurvatureModel<K>>,
    pub d: Option<DoubleSubspace<K>>,
    /// Built from the E/eps blocks, with the form carried from the user's
    /// listed basis of E to the canonical one.
    pub pair: Option<IsotropicPair<K>>,
    pub grading: Option<Grading<K>>,
}

pub enum Problem {
    Q(TypedProblem<Rational>),
    Qi(TypedProblem<GaussianRational>),
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: format!("invalid problem file: {}", message.into()),
    }
}

pub fn load(path: &str) -> Result<Problem, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: 1,
        message: format!("cannot read {path}: {e}"),
    })?;
    let file: ProblemFile = serde_json::from_str(&text).map_err(|e| Failure {
        code: 1,
        message: format!("{path}: JSON error at line {}, column {}: {e}", e.line(), e.column()),
    })?;
    match file.field.as_str() {
        "Q" => Ok(Problem::Q(build_typed::<Rational>(&file)?)),
        "Qi" => Ok(Problem::Qi(build_typed::<GaussianRational>(&file)?)),
        other => Err(invalid(format!(
            "field: expected \"Q\" or \"Qi\", got {other:?}"
        ))),
    }
}

fn parse_scalar<K: Field>(text: &str, at: &str) -> Result<K, Failure> {
    K::parse(text).map_err(|_| invalid(format!("{at}: cannot parse scalar {text:?} over {}", K::NAME)))
}

fn parse_vector<K: Field>(coords: &[String], dim: usize, at: &str) -> Result<Vec<K>, Failure> {
    if coords.len() != dim {
        return Err(invalid(format!(
            "{at}: expected {dim} coordinates, got {}",
            coords.len()
        )));
    }
    coords
        .iter()
        .enumerate()
        .map(|(idx, c)| parse_scalar(c, &format!("{at}[{idx}]")))
        .collect()
}

fn parse_tensor<K: Field>(
    entries: &[TensorEntry],
    dim: usize,
    key: &str,
) -> Result<Vec<(usize, usize, Vec<K>)>, Failure> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for (idx, entry) in entries.iter().enumerate() {
        let at = format!("{key}[{idx}]");
        if entry.i == 0 || entry.i > dim || entry.j == 0 || entry.j > dim {
            return Err(invalid(format!(
                "{at}: indices must lie in 1..={dim}, got ({}, {})",
                entry.i, entry.j
            )));
        }
        let coeffs: Vec<K> = parse_vector(&entry.coeffs, dim, &format!("{at}.coeffs"))?;
        let (i, j) = (entry.i - 1, entry.j - 1);
        if i == j && coeffs.iter().any(|c| !c.is_zero()) {
            return Err(invalid(format!(
                "{at}: antisymmetry forces the ({}, {}) entry to vanish",
                entry.i, entry.j
            )));
        }
        if !seen.insert((i, j)) {
            return Err(invalid(format!(
                "{at}: duplicate entry for pair ({}, {})",
                entry.i, entry.j
            )));
        }
        out.push((i, j, coeffs));
    }
    // Mirrored pairs must be exact negatives; reduce to i < j form.
    let mut reduced: Vec<(usize, usize, Vec<K>)> = Vec::new();
    for (idx, (i, j, coeffs)) in out.iter().enumerate() {
        if i == j {
            continue;
        }
        if let Some(mirror_pos) = out.iter().position(|(mi, mj, _)| (mi, mj) == (j, i)) {
            let mirror = &out[mirror_pos].2;
            let consistent = coeffs
                .iter()
                .zip(mirror)
                .all(|(a, b)| (a.clone() + b.clone()).is_zero());
            if !consistent {
                return Err(invalid(format!(
                    "{key}[{idx}]: entry ({}, {}) is not the negative of its mirror ({}, {})",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                )));
            }
            if i > j {
                continue; // the mirrored copy carries the data
            }
        }
        if i < j {
            reduced.push((*i, *j, coeffs.clone()));
        } else {
            reduced.push((*j, *i, coeffs.iter().map(|c| -c.clone()).collect()));
        }
    }
    Ok(reduced)
}

fn parse_subspace<K: Field>(rows: &[Vec<String>], dim: usize, key: &str) -> Result<Subspace<K>, Failure> {
    let mut vectors = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        vectors.push(parse_vector(row, dim, &format!("{key}[{idx}]"))?);
    }
    Subspace::span(dim, &vectors).map_err(|e| invalid(format!("{key}: {e}")))
}

fn build_typed<K: Field>(file: &ProblemFile) -> Result<TypedProblem<K>, Failure> {
    let dim = file.dim;
    if dim == 0 {
        return Err(invalid("dim must be positive"));
    }
    if let Some(names) = &file.basis_names {
        if names.len() != dim {
            return Err(invalid(format!(
                "basis_names: expected {dim} labels, got {}",
                names.len()
            )));
        }
    }

    let brackets = parse_tensor::<K>(&file.brackets, dim, "brackets")?;
    let algebra = LieAlgebra::from_brackets(dim, &brackets, file.basis_names.clone())
        .map_err(|e| invalid(format!("brackets: {e}")))?;

    let p = parse_subspace::<K>(&file.p, dim, "p")?;

    let curvature = match &file.curvature {
        None => None,
        Some(entries) => {
            let entries = parse_tensor::<K>(entries, dim, "curvature")?;
            Some(
                CurvatureModel::from_entries(algebra.clone(), p.clone(), &entries)
                    .map_err(|e| invalid(format!("curvature: {e}")))?,
            )
        }
    };

    let d = match &file.d {
        None => None,
        Some(rows) => {
            let sub = parse_subspace::<K>(rows, 2 * dim, "D")?;
            Some(DoubleSubspace::from_subspace(sub).map_err(|e| invalid(format!("D: {e}")))?)
        }
    };

    let pair = match (&file.e, &file.eps) {
        (None, None) => None,
        (None, Some(_)) => {
            return Err(invalid("eps requires an E block"));
        }
        (Some(e_rows), eps_entries) => {
            Some(build_pair::<K>(e_rows, eps_entries.as_deref(), dim)?)
        }
    };

    let grading = match &file.grading {
        None => None,
        Some(g) => {
            if g.parts.len() != 2 * g.l + 1 {
                return Err(invalid(format!(
                    "grading.parts: expected {} parts for l = {}, got {}",
                    2 * g.l + 1,
                    g.l,
                    g.parts.len()
                )));
            }
            let mut parts = Vec::new();
            for (idx, rows) in g.parts.iter().enumerate() {
                parts.push(parse_subspace::<K>(rows, dim, &format!("grading.parts[{idx}]"))?);
            }
            Some(Grading::new(g.l, parts).map_err(|e| invalid(format!("grading: {e}")))?)
        }
    };

    Ok(TypedProblem {
        dim,
        basis_names: file.basis_names.clone(),
        algebra,
        p,
        curvature,
        d,
        pair,
        grading,
    })
}

/// Builds the (E, ε) pair. The form entries refer to the user's listed
/// basis of E (which must therefore be independent); the form is carried
/// to the canonical basis by the congruence transform.
fn build_pair<K: Field>(
    e_rows: &[Vec<String>],
    eps_entries: Option<&[FormEntry]>,
    dim: usize,
) -> Result<IsotropicPair<K>, Failure> {
    let mut user_rows = Vec::new();
    for (idx, row) in e_rows.iter().enumerate() {
        user_rows.push(parse_vector::<K>(row, dim, &format!("E[{idx}]"))?);
    }
    let e = Subspace::span(dim, &user_rows).map_err(|e| invalid(format!("E: {e}")))?;
    let k = e.dim();
    if k != user_rows.len() {
        return Err(invalid(format!(
            "E: the {} listed vectors are dependent (rank {k}); eps would be ambiguous",
            user_rows.len()
        )));
    }

    let mut eps_user = Matrix::<K>::zeros(k, k);
    if let Some(entries) = eps_entries {
        let mut seen = std::collections::HashSet::new();
        for (idx, entry) in entries.iter().enumerate() {
            let at = format!("eps[{idx}]");
            if entry.i == 0 || entry.i > k || entry.j == 0 || entry.j > k {
                return Err(invalid(format!(
                    "{at}: indices must lie in 1..={k}, got ({}, {})",
                    entry.i, entry.j
                )));
            }
            if entry.i == entry.j {
                return Err(invalid(format!(
                    "{at}: diagonal entries of an alternating form vanish"
                )));
            }
            if !seen.insert((entry.i.min(entry.j), entry.i.max(entry.j))) {
                return Err(invalid(format!(
                    "{at}: duplicate entry for pair ({}, {})",
                    entry.i, entry.j
                )));
            }
            let value: K = parse_scalar(&entry.value, &format!("{at}.value"))?;
            eps_user[(entry.i - 1, entry.j - 1)] = value.clone();
            eps_user[(entry.j - 1, entry.i - 1)] = -value;
        }
    }

    // Express the canonical rows over the user rows and transport the form.
    let user_t = Matrix::from_fn(dim, k, |r, c| user_rows[c][r].clone());
    let mut transform = Matrix::<K>::zeros(k, k);
    for (a, canon) in e.basis_rows().iter().enumerate() {
        let coords = user_t
            .solve(canon)
            .expect("canonical rows lie in the span of the user rows");
        for (b, c) in coords.into_iter().enumerate() {
            transform[(a, b)] = c;
        }
    }
    let eps_canonical = transform.mul(&eps_user).mul(&transform.transpose());
    IsotropicPair::new(e, eps_canonical).map_err(|e| invalid(format!("eps: {e}")))
}

/// Scalar extension of a whole problem to ℚ(i), used when a
/// generalized-complex question is asked of a rational problem.
pub fn complexify_problem(p: &TypedProblem<Rational>) -> TypedProblem<GaussianRational> {
    use dirac_core::algebra::complexify_subspace;
    let complexify_matrix = |m: &Matrix<Rational>| -> Matrix<GaussianRational> {
        m.map(|x| GaussianRational::from_real(x.clone()))
    };
    TypedProblem {
        dim: p.dim,
        basis_names: p.basis_names.clone(),
        algebra: p.algebra.complexify(),
        p: complexify_subspace(&p.p),
        curvature: p.curvature.as_ref().map(CurvatureModel::complexify),
        d: p.d.as_ref().map(|d| {
            DoubleSubspace::from_subspace(complexify_subspace(d.subspace()))
                .expect("even ambient dimension")
        }),
        pair: p.pair.as_ref().map(|pair| {
            IsotropicPair::new(
                complexify_subspace(pair.e()),
                complexify_matrix(pair.eps()),
            )
            .expect("antisymmetry is preserved by scalar extension")
        }),
        grading: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load_inline(doc: serde_json::Value) -> Result<Problem, Failure> {
        let dir = std::env::temp_dir().join("diracalg-problem-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(format!("case-{}.json", rand_name(&doc)));
        std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
        load(path.to_str().unwrap())
    }

    fn rand_name(doc: &serde_json::Value) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        doc.to_string().hash(&mut h);
        h.finish()
    }

    #[test]
    fn duplicate_bracket_entries_are_rejected() {
        let err = load_inline(serde_json::json!({
            "field": "Q", "dim": 2, "p": [],
            "brackets": [
                {"i": 1, "j": 2, "coeffs": ["0", "1"]},
                {"i": 1, "j": 2, "coeffs": ["0", "1"]}
            ]
        }))
        .err()
        .unwrap();
        assert!(err.message.contains("duplicate entry"), "{}", err.message);
    }

    #[test]
    fn eps_indices_are_checked_against_e() {
        let err = load_inline(serde_json::json!({
            "field": "Q", "dim": 2, "p": [],
            "E": [["1", "0"]],
            "eps": [{"i": 1, "j": 2, "value": "1"}]
        }))
        .err()
        .unwrap();
        assert!(err.message.contains("1..=1"), "{}", err.message);

        let err = load_inline(serde_json::json!({
            "field": "Q", "dim": 2, "p": [],
            "eps": [{"i": 1, "j": 2, "value": "1"}]
        }))
        .err()
        .unwrap();
        assert!(err.message.contains("requires an E block"), "{}", err.message);
    }

    #[test]
    fn dependent_e_rows_are_rejected() {
        let err = load_inline(serde_json::json!({
            "field": "Q", "dim": 2, "p": [],
            "E": [["1", "0"], ["2", "0"]]
        }))
        .err()
        .unwrap();
        assert!(err.message.contains("dependent"), "{}", err.message);
    }

    #[test]
    fn eps_transport_to_the_canonical_basis_is_a_congruence() {
        // E listed over a skewed basis: u1 = e1 + e2, u2 = e2, with
        // eps(u1, u2) = 1. Canonical rows are e1 and e2, and
        // eps(e1, e2) = eps(u1 - u2, u2) = 1.
        let problem = load_inline(serde_json::json!({
            "field": "Q", "dim": 2, "p": [],
            "E": [["1", "1"], ["0", "1"]],
            "eps": [{"i": 1, "j": 2, "value": "1"}]
        }))
        .unwrap();
        let Problem::Q(tp) = problem else {
            panic!("field Q")
        };
        let pair = tp.pair.unwrap();
        assert_eq!(pair.eps()[(0, 1)], dirac_core::scalar::rat(1, 1));
    }

    #[test]
    fn mixed_gaussian_scalars_parse_in_qi_files() {
        let problem = load_inline(serde_json::json!({
            "field": "Qi", "dim": 2, "p": [],
            "E": [["1", "0"], ["0", "1"]],
            "eps": [{"i": 1, "j": 2, "value": "1/2 + 3/4 i"}]
        }))
        .unwrap();
        let Problem::Qi(tp) = problem else {
            panic!("field Qi")
        };
        let pair = tp.pair.unwrap();
        assert_eq!(pair.eps()[(0, 1)], dirac_core::scalar::gauss(1, 2, 3, 4));
    }
}
