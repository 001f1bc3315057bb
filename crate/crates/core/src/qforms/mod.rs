//! Quadratic forms over Q and Q(sqrt 5).
//!
//! A [`Form`] is a non-singular symmetric Gram matrix tagged with its ground field; a
//! [`DiagForm`] is the diagonal shorthand `<a1, ..., an>`. Entries are stored as
//! [`K5Elem`] in both cases, and Q-forms are required to have rational entries.

mod diagonalize;
mod invariants;
mod isotropy;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{K5Elem, Rat};
use crate::linalg::Matrix;

pub use diagonalize::{diagonalize, diagonalize_in_order};
pub use invariants::{det_class, same_square_class, signature_at};
pub use isotropy::{represents_zero_k5, represents_zero_q, three_squares_representable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    Q,
    K5,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Q => write!(f, "Q"),
            FieldTag::K5 => write!(f, "K5"),
        }
    }
}

impl std::str::FromStr for FieldTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" | "q" => Ok(FieldTag::Q),
            "K5" | "k5" => Ok(FieldTag::K5),
            _ => Err(Error::parse(s, "field must be Q or K5")),
        }
    }
}

fn check_entry(field: FieldTag, x: &K5Elem) -> Result<()> {
    if field == FieldTag::Q && !x.is_rational() {
        return Err(Error::FieldMismatch {
            expected: "Q".into(),
            found: x.to_string(),
        });
    }
    Ok(())
}

pub(crate) fn same_field(a: FieldTag, b: FieldTag) -> Result<FieldTag> {
    if a != b {
        return Err(Error::FieldMismatch {
            expected: a.to_string(),
            found: b.to_string(),
        });
    }
    Ok(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.plus + self.minus
    }

    pub fn is_definite(&self) -> bool {
        self.plus == 0 || self.minus == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.plus, self.minus)
    }
}

/// Non-singular quadratic form given by its symmetric Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Form {
    field: FieldTag,
    gram: Matrix<K5Elem>,
}

impl Form {
    pub fn new(field: FieldTag, gram: Matrix<K5Elem>) -> Result<Self> {
        if gram.rows() == 0 {
            return Err(Error::InvalidArgument("form of dimension 0".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        for x in gram.entries() {
            check_entry(field, x)?;
        }
        if gram.determinant()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Form { field, gram })
    }

    pub fn from_rational(gram: &Matrix<Rat>) -> Result<Self> {
        Form::new(FieldTag::Q, gram.map(|x| K5Elem::from_rat(x.clone())))
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn gram(&self) -> &Matrix<K5Elem> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn determinant(&self) -> K5Elem {
        self.gram.determinant().expect("square")
    }

    /// The diagonal entries when the Gram matrix is already diagonal.
    pub fn as_diagonal(&self) -> Option<DiagForm> {
        self.gram.is_diagonal().then(|| DiagForm {
            field: self.field,
            entries: self.gram.diagonal_entries(),
        })
    }

    /// `F(v) = v^t F v`.
    pub fn evaluate(&self, v: &[K5Elem]) -> K5Elem {
        let n = self.dim();
        let mut acc = K5Elem::zero();
        for i in 0..n {
            for j in 0..n {
                acc = &acc + &(&(&v[i] * &self.gram[(i, j)]) * &v[j]);
            }
        }
        acc
    }

    pub fn orthogonal_sum(&self, other: &Form) -> Result<Form> {
        let field = same_field(self.field, other.field)?;
        Ok(Form {
            field,
            gram: self.gram.block_diag(&other.gram),
        })
    }
}

/// Diagonal form `<a1, ..., an>` with nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagForm {
    field: FieldTag,
    entries: Vec<K5Elem>,
}

impl DiagForm {
    pub fn new(field: FieldTag, entries: Vec<K5Elem>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("form of dimension 0".into()));
        }
        for x in &entries {
            if x.is_zero() {
                return Err(Error::Singular);
            }
            check_entry(field, x)?;
        }
        Ok(DiagForm { field, entries })
    }

    pub fn rational(entries: &[i64]) -> Result<Self> {
        DiagForm::new(
            FieldTag::Q,
            entries.iter().map(|&x| K5Elem::from_int(x)).collect(),
        )
    }

    /// Parses comma-separated entries such as `1,1,1,-7` or `1,1,1,1,-phi`.
    pub fn parse(field: FieldTag, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for tok in text.split(',') {
            let x: K5Elem = tok.parse().map_err(|e| match e {
                Error::Parse { reason, .. } => Error::parse(tok.trim(), reason),
                other => other,
            })?;
            if x.is_zero() {
                return Err(Error::parse(
                    tok.trim(),
                    "zero entry makes the form singular",
                ));
            }
            if field == FieldTag::Q && !x.is_rational() {
                return Err(Error::parse(
                    tok.trim(),
                    "irrational entry in a form over Q",
                ));
            }
            entries.push(x);
        }
        DiagForm::new(field, entries)
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn entries(&self) -> &[K5Elem] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Entries as rationals; `None` unless the form is over Q.
    pub fn rational_entries(&self) -> Option<Vec<Rat>> {
        self.entries
            .iter()
            .map(|x| x.as_rational().cloned())
            .collect()
    }

    pub fn to_form(&self) -> Form {
        Form {
            field: self.field,
            gram: Matrix::diagonal(&self.entries),
        }
    }

    pub fn determinant(&self) -> K5Elem {
        self.entries.iter().fold(K5Elem::one(), |acc, x| &acc * x)
    }

    pub fn orthogonal_sum(&self, other: &DiagForm) -> Result<DiagForm> {
        let field = same_field(self.field, other.field)?;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(DiagForm { field, entries })
    }

    /// Reinterprets a Q-form as a form over Q(sqrt 5).
    pub fn extend_to_k5(&self) -> DiagForm {
        DiagForm {
            field: FieldTag::K5,
            entries: self.entries.clone(),
        }
    }
}

impl From<&DiagForm> for Form {
    fn from(d: &DiagForm) -> Form {
        d.to_form()
    }
}

impl fmt::Display for DiagForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

/// Orthogonal sum of two forms over the same field.
pub fn orthogonal_sum(f: &Form, g: &Form) -> Result<Form> {
    f.orthogonal_sum(g)
}
