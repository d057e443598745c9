//! Text rendering of vectors, forms and subspaces over the algebra basis.
//! Basis labels default to e1..en; dual labels carry a star.

use dirac_core::algebra::Vector;
use dirac_core::double::{DiracVerdict, DoubleElement, DoubleSubspace};
use dirac_core::matrix::Matrix;
use dirac_core::scalar::Field;
use dirac_core::subspace::Subspace;

pub struct Namer {
    names: Vec<String>,
}

impl Namer {
    pub fn new(dim: usize, names: Option<&[String]>) -> Self {
        let names = match names {
            Some(list) => list.to_vec(),
            None => (1..=dim).map(|i| format!("e{i}")).collect(),
        };
        Self { names }
    }

    pub fn vector_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    fn term<K: Field>(coeff: &K, label: &str, first: bool) -> Option<String> {
        if coeff.is_zero() {
            return None;
        }
        let one = K::one();
        let minus_one = -K::one();
        let body = if *coeff == one {
            label.to_string()
        } else if *coeff == minus_one {
            format!("-{label}")
        } else {
            // Parenthesize sums like 1+i so the sign stays attached.
            let shown = coeff.to_string();
            if shown[1..].contains(['+', '-']) {
                format!("({shown}){label}")
            } else {
                format!("{shown}{label}")
            }
        };
        Some(if first {
            body
        } else if let Some(stripped) = body.strip_prefix('-') {
            format!(" - {stripped}")
        } else {
            format!(" + {body}")
        })
    }

    fn linear_combo<K: Field>(&self, coords: &[K], dual_offset: Option<usize>) -> String {
        let mut out = String::new();
        for (i, c) in coords.iter().enumerate() {
            let label = match dual_offset {
                Some(n) if i >= n => format!("{}*", self.names[i - n]),
                _ => self.names[i].to_string(),
            };
            if let Some(term) = Self::term(c, &label, out.is_empty()) {
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }

    pub fn vector<K: Field>(&self, v: &Vector<K>) -> String {
        self.linear_combo(&v.0, None)
    }

    pub fn double_element<K: Field>(&self, x: &DoubleElement<K>) -> String {
        self.linear_combo(&x.coords(), Some(x.algebra_dim()))
    }

    pub fn subspace<K: Field>(&self, s: &Subspace<K>) -> String {
        let rows: Vec<String> = s
            .basis_rows()
            .iter()
            .map(|r| self.linear_combo(r, None))
            .collect();
        format!("span{{ {} }}", rows.join(", "))
    }

    pub fn double_subspace<K: Field>(&self, d: &DoubleSubspace<K>) -> String {
        let rows: Vec<String> = d
            .basis_elements()
            .iter()
            .map(|x| self.double_element(x))
            .collect();
        format!("span{{ {} }}", rows.join(", "))
    }

    /// Nonzero upper-triangle entries of an alternating form over the
    /// given E-basis rows, e.g. "eps(e2, e3) = -1".
    pub fn form<K: Field>(&self, eps: &Matrix<K>, e: &Subspace<K>) -> String {
        let rows = e.basis_rows();
        let mut parts = Vec::new();
        for a in 0..eps.rows() {
            for b in (a + 1)..eps.cols() {
                if !eps[(a, b)].is_zero() {
                    parts.push(format!(
                        "eps({}, {}) = {}",
                        self.linear_combo(&rows[a], None),
                        self.linear_combo(&rows[b], None),
                        eps[(a, b)]
                    ));
                }
            }
        }
        if parts.is_empty() {
            "eps = 0".to_string()
        } else {
            parts.join(", ")
        }
    }

    pub fn dirac_verdict<K: Field>(&self, v: &DiracVerdict<K>) -> String {
        match v {
            DiracVerdict::Yes => "yes".to_string(),
            DiracVerdict::NotIsotropic { i, j, value } => format!(
                "no: the pairing of basis rows {} and {} is {value}, not zero",
                i + 1,
                j + 1
            ),
            DiracVerdict::NotMaximal { dim, expected } => {
                format!("no: dimension {dim}, maximal isotropic needs {expected}")
            }
            DiracVerdict::NotClosed { i, j, escape } => format!(
                "no: bracket of basis rows {} and {} escapes with value {}",
                i + 1,
                j + 1,
                self.double_element(escape)
            ),
        }
    }
}
