use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, rat, Embedding, K5Elem, Rat};
use crate::qforms::{diagonalize, FieldTag, Form, Signature};

/// Counts of positive and negative entries of a diagonalization, with signs read off under `e`.
pub fn signature_at(f: &Form, e: Embedding) -> Result<Signature> {
    if f.field() == FieldTag::Q && e == Embedding::Tau {
        return Err(Error::InvalidArgument(
            "tau is not an embedding of Q".into(),
        ));
    }
    let (d, _) = diagonalize(f)?;
    Ok(signature_of_entries(d.entries(), e))
}

pub(crate) fn signature_of_entries(entries: &[K5Elem], e: Embedding) -> Signature {
    let plus = entries.iter().filter(|x| x.sign_at(e) > 0).count();
    Signature {
        plus,
        minus: entries.len() - plus,
    }
}

/// Representative of the determinant's square class.
///
/// Over Q this is the unique squarefree integer in the class. Over Q(sqrt 5) the
/// determinant is scaled to an algebraic integer and square factors of its rational
/// content are removed; compare classes with [`same_square_class`].
pub fn det_class(f: &Form) -> Result<K5Elem> {
    class_representative(&f.determinant(), f.field())
}

pub(crate) fn class_representative(x: &K5Elem, field: FieldTag) -> Result<K5Elem> {
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    match field {
        FieldTag::Q => {
            let r = x.as_rational().ok_or_else(|| Error::FieldMismatch {
                expected: "Q".into(),
                found: x.to_string(),
            })?;
            Ok(K5Elem::from_bigint(rat::squarefree_class(r)?))
        }
        FieldTag::K5 => {
            let (c0, c1) = x.phi_coords();
            let m = rat::lcm_denominators([&c0, &c1]);
            let m2 = Rat::from_integer(&m * &m);
            let (n0, n1) = ((&c0 * &m2).to_integer(), (&c1 * &m2).to_integer());
            let content = n0.gcd(&n1);
            let sq = largest_square_divisor(&content)?;
            let s2 = &sq * &sq;
            Ok(K5Elem::from_phi_coords(
                Rat::from_integer(n0 / &s2),
                Rat::from_integer(n1 / &s2),
            ))
        }
    }
}

fn largest_square_divisor(n: &BigInt) -> Result<BigInt> {
    let mut s = BigInt::one();
    for (p, e) in int::factor(n.magnitude())? {
        s *= BigInt::from(p).pow(e / 2);
    }
    Ok(s)
}

/// True iff `a*b` is a square in the field.
pub fn same_square_class(a: &K5Elem, b: &K5Elem, field: FieldTag) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let x = a * b;
    match field {
        FieldTag::Q => {
            let (ra, rb) = match (a.as_rational(), b.as_rational()) {
                (Some(ra), Some(rb)) => (ra, rb),
                _ => {
                    return Err(Error::FieldMismatch {
                        expected: "Q".into(),
                        found: x.to_string(),
                    })
                }
            };
            Ok(rat::squarefree_class(ra)? == rat::squarefree_class(rb)?)
        }
        FieldTag::K5 => Ok(is_k5_square(&x)),
    }
}

/// Whether `x = xa + xb sqrt5` equals `(c + d sqrt5)^2` for rationals `c, d`:
/// `c^2 + 5d^2 = xa` and `2cd = xb`.
pub(crate) fn is_k5_square(x: &K5Elem) -> bool {
    if x.is_zero() {
        return true;
    }
    if x.b.is_zero() {
        // d = 0 gives xa = c^2; c = 0 gives xa = 5 d^2
        return rat::is_rational_square(&x.a) || rat::is_rational_square(&(&x.a / rat::rat(5)));
    }
    // c != 0 here. With C = c^2: 4C^2 - 4 xa C + 5 xb^2 = 0, so C = (xa ± sqrt(N(x)))/2
    let Some(root) = rat::rational_sqrt(&x.norm()) else {
        return false;
    };
    let two = rat::rat(2);
    [(&x.a + &root) / &two, (&x.a - &root) / &two]
        .iter()
        .any(|c2| {
            if !c2.is_positive() {
                return false;
            }
            match rat::rational_sqrt(c2) {
                Some(c) => {
                    let d = &x.b / (&two * &c);
                    &c * &c + rat::rat(5) * &d * &d == x.a
                }
                None => false,
            }
        })
}
