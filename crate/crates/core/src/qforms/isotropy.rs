use crate::error::{Error, Result};
use crate::exact::{rat, Embedding, Rat};
use crate::localglobal::{hasse_product_q, hilbert_q, is_local_square_q, relevant_places_q};
use crate::qforms::invariants::{is_k5_square, signature_of_entries};
use crate::qforms::{DiagForm, FieldTag};

/// `d` is a sum of three integer squares iff it is not of the form `4^t (8k + 7)`.
pub fn three_squares_representable(d: u64) -> Result<bool> {
    if d < 1 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    let mut m = d;
    while m.is_multiple_of(4) {
        m /= 4;
    }
    Ok(m % 8 != 7)
}

/// Rational isotropy of a diagonal form by Hasse-Minkowski: isotropic over Q iff
/// isotropic at the real place and at every prime dividing `2 * prod(a_i)`.
///
/// Local criteria with `e_v = prod_{i<j} (a_i, a_j)_v` and `d = prod a_i`:
/// rank 3 is isotropic iff `(-1, -d)_v = e_v`; rank 4 iff `d` is not a local
/// square or `e_v = (-1, -1)_v`; rank >= 5 is always locally isotropic at finite places.
pub fn represents_zero_q(d: &DiagForm) -> Result<bool> {
    if d.field() != FieldTag::Q {
        return Err(Error::FieldMismatch {
            expected: "Q".into(),
            found: d.field().to_string(),
        });
    }
    let a = d.rational_entries().expect("Q-form has rational entries");
    let n = a.len();
    if n == 1 {
        return Ok(false);
    }
    if signature_of_entries(d.entries(), Embedding::Identity).is_definite() {
        return Ok(false);
    }
    if n == 2 {
        return Ok(rat::is_rational_square(&-(&a[0] * &a[1])));
    }
    if n >= 5 {
        return Ok(true);
    }
    let det: Rat = a.iter().product();
    let minus_one = rat::rat(-1);
    for place in relevant_places_q(&a)? {
        let eps = hasse_product_q(&a, place)?;
        let locally_isotropic = if n == 3 {
            hilbert_q(&minus_one, &-det.clone(), place)? == eps
        } else {
            !is_local_square_q(&det, place)? || eps == hilbert_q(&minus_one, &minus_one, place)?
        };
        if !locally_isotropic {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Isotropy over Q(sqrt 5), decided only where no local analysis is needed: a form that
/// is definite at some real embedding is anisotropic, rank >= 5 forms indefinite at both
/// embeddings are isotropic, and binary forms are checked directly. Other ternary and
/// quaternary forms return [`Error::Undecided`].
pub fn represents_zero_k5(d: &DiagForm) -> Result<bool> {
    if d.field() != FieldTag::K5 {
        return Err(Error::FieldMismatch {
            expected: "K5".into(),
            found: d.field().to_string(),
        });
    }
    let n = d.dim();
    if n == 1 {
        return Ok(false);
    }
    if Embedding::ALL
        .iter()
        .any(|&e| signature_of_entries(d.entries(), e).is_definite())
    {
        return Ok(false);
    }
    if n == 2 {
        let e = d.entries();
        return Ok(is_k5_square(&-(&e[0] * &e[1])));
    }
    if n >= 5 {
        return Ok(true);
    }
    Err(Error::Undecided)
}
