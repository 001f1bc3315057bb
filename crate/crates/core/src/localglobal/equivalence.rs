use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Embedding, K5Elem};
use crate::localglobal::{hasse_k5, hasse_q, PlaceK5, PlaceQ, RamSet};
use crate::qforms::{
    self, det_class, same_square_class, signature_at, DiagForm, FieldTag, Form, Signature,
};

/// The first invariant on which two forms disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Invariant {
    Dimension,
    Signature(Embedding),
    Determinant,
    Hasse,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::Dimension => write!(f, "dimension"),
            Invariant::Signature(e) => write!(f, "signature at {e}"),
            Invariant::Determinant => write!(f, "determinant class"),
            Invariant::Hasse => write!(f, "hasse invariant"),
        }
    }
}

/// Complete set of rational-equivalence invariants of a nondegenerate form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormInvariants {
    pub field: FieldTag,
    pub dim: usize,
    pub signatures: Vec<(Embedding, Signature)>,
    pub det_class: K5Elem,
    pub hasse: Vec<String>,
}

enum Hasse {
    Q(RamSet<PlaceQ>),
    K5(RamSet<PlaceK5>),
}

impl Hasse {
    fn names(&self) -> Vec<String> {
        match self {
            Hasse::Q(s) => s.iter().map(|p| p.to_string()).collect(),
            Hasse::K5(s) => s.iter().map(|p| p.to_string()).collect(),
        }
    }
}

fn embeddings(field: FieldTag) -> &'static [Embedding] {
    match field {
        FieldTag::Q => &[Embedding::Identity],
        FieldTag::K5 => &Embedding::ALL,
    }
}

fn diagonal_of(f: &Form) -> Result<DiagForm> {
    match f.as_diagonal() {
        Some(d) => Ok(d),
        None => Ok(qforms::diagonalize(f)?.0),
    }
}

fn hasse_of(f: &Form) -> Result<Hasse> {
    let d = diagonal_of(f)?;
    Ok(match f.field() {
        FieldTag::Q => Hasse::Q(hasse_q(&d)?),
        FieldTag::K5 => Hasse::K5(hasse_k5(&d)?),
    })
}

pub fn invariants(f: &Form) -> Result<FormInvariants> {
    let signatures = embeddings(f.field())
        .iter()
        .map(|&e| Ok((e, signature_at(f, e)?)))
        .collect::<Result<_>>()?;
    Ok(FormInvariants {
        field: f.field(),
        dim: f.dim(),
        signatures,
        det_class: det_class(f)?,
        hasse: hasse_of(f)?.names(),
    })
}

/// Weak Hasse-Minkowski over a number field: two forms are equivalent iff dimension,
/// signatures at every real place, determinant square class and Hasse invariants agree.
/// Returns the first differing invariant, or `None` when the forms are equivalent.
pub fn compare_forms(f: &Form, g: &Form) -> Result<Option<Invariant>> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch {
            expected: f.field().to_string(),
            found: g.field().to_string(),
        });
    }
    if f.dim() != g.dim() {
        return Ok(Some(Invariant::Dimension));
    }
    for &e in embeddings(f.field()) {
        if signature_at(f, e)? != signature_at(g, e)? {
            return Ok(Some(Invariant::Signature(e)));
        }
    }
    if !same_square_class(&f.determinant(), &g.determinant(), f.field())? {
        return Ok(Some(Invariant::Determinant));
    }
    let same = match (hasse_of(f)?, hasse_of(g)?) {
        (Hasse::Q(a), Hasse::Q(b)) => a == b,
        (Hasse::K5(a), Hasse::K5(b)) => a == b,
        _ => unreachable!("fields already agree"),
    };
    Ok(if same { None } else { Some(Invariant::Hasse) })
}

pub fn equivalent(f: &Form, g: &Form) -> Result<bool> {
    Ok(compare_forms(f, g)?.is_none())
}

fn require(f: &Form, field: FieldTag) -> Result<()> {
    if f.field() != field {
        return Err(Error::FieldMismatch {
            expected: field.to_string(),
            found: f.field().to_string(),
        });
    }
    Ok(())
}

/// Rational equivalence of two forms over Q.
pub fn equivalent_q(f: &Form, g: &Form) -> Result<bool> {
    require(f, FieldTag::Q)?;
    require(g, FieldTag::Q)?;
    equivalent(f, g)
}

/// Equivalence over Q(sqrt 5).
pub fn equivalent_k5(f: &Form, g: &Form) -> Result<bool> {
    require(f, FieldTag::K5)?;
    require(g, FieldTag::K5)?;
    equivalent(f, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: &[i64]) -> Form {
        DiagForm::rational(e).unwrap().to_form()
    }

    fn k(s: &str) -> Form {
        DiagForm::parse(FieldTag::K5, s).unwrap().to_form()
    }

    #[test]
    fn rational_examples() {
        for d in [2i64, 3, 7, 23, 30] {
            assert!(
                equivalent_q(&q(&[d, d, d, d, 1, 1, -1]), &q(&[1, 1, 1, 1, 1, 1, -1])).unwrap()
            );
        }
        assert!(equivalent_q(&q(&[1, 1]), &q(&[2, 2])).unwrap());
        assert!(equivalent_q(&q(&[1, 1]), &q(&[5, 5])).unwrap());
        assert!(!equivalent_q(&q(&[1, 1]), &q(&[3, 3])).unwrap());
        assert_eq!(
            compare_forms(&q(&[1, 1]), &q(&[3, 3])).unwrap(),
            Some(Invariant::Hasse)
        );
        assert_eq!(
            compare_forms(&q(&[1, 1]), &q(&[1, 2])).unwrap(),
            Some(Invariant::Determinant)
        );
        assert_eq!(
            compare_forms(&q(&[1, 1]), &q(&[1, -1])).unwrap(),
            Some(Invariant::Signature(Embedding::Identity))
        );
        assert_eq!(
            compare_forms(&q(&[1, 1]), &q(&[1, 1, 1])).unwrap(),
            Some(Invariant::Dimension)
        );
    }

    #[test]
    fn field_mismatch_is_an_error() {
        assert!(matches!(
            compare_forms(&q(&[1]), &k("1")),
            Err(Error::FieldMismatch { .. })
        ));
        assert!(equivalent_q(&k("1"), &k("1")).is_err());
        assert!(equivalent_k5(&q(&[1]), &q(&[1])).is_err());
    }

    #[test]
    fn golden_field_examples() {
        // phi is negative under tau
        assert_eq!(
            compare_forms(&k("1,1"), &k("phi,phi")).unwrap(),
            Some(Invariant::Signature(Embedding::Tau))
        );
        assert!(equivalent_k5(&k("1,5"), &k("1,1")).unwrap());
        assert!(!equivalent_k5(&k("1,1,1,1,-phi"), &k("1,1,1,1,-1")).unwrap());
        assert_eq!(
            compare_forms(&k("1,-1"), &k("1,1")).unwrap(),
            Some(Invariant::Signature(Embedding::Identity))
        );
        assert_eq!(
            compare_forms(&k("1,3-2*s5"), &k("1,1")).unwrap(),
            Some(Invariant::Signature(Embedding::Identity))
        );
        assert_eq!(
            compare_forms(&k("-1,phi"), &k("-1,1")).unwrap(),
            Some(Invariant::Signature(Embedding::Tau))
        );
    }

    #[test]
    fn invariants_report() {
        let inv = invariants(&q(&[-1, -1, -1])).unwrap();
        assert_eq!(inv.dim, 3);
        assert_eq!(inv.hasse, vec!["real", "2"]);
        assert_eq!(
            inv.signatures,
            vec![(Embedding::Identity, Signature { plus: 0, minus: 3 })]
        );
        assert_eq!(inv.det_class, K5Elem::from_int(-1));
    }
}
