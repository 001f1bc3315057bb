use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{int, Embedding, K5Elem, PrimeIdeal};
use crate::localglobal::{PlaceK5, RamSet};
use crate::qforms::{DiagForm, FieldTag};

/// Whether a unit at `q` reduces to a square in the residue field.
pub fn residue_square(x: &K5Elem, q: &PrimeIdeal) -> Result<bool> {
    Ok(q.reduce(x)?.is_square())
}

/// Hilbert symbol over Q(sqrt 5) at a real place or a non-dyadic prime, where it equals
/// the tame symbol: the quadratic character of `(-1)^(ab) a^b / b^a` (with `a, b` the
/// valuations) in the residue field.
pub fn hilbert_k5(a: &K5Elem, b: &K5Elem, place: &PlaceK5) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let real = |e: Embedding| {
        if a.sign_at(e) < 0 && b.sign_at(e) < 0 {
            -1
        } else {
            1
        }
    };
    match place {
        PlaceK5::RealIdentity => Ok(real(Embedding::Identity)),
        PlaceK5::RealTau => Ok(real(Embedding::Tau)),
        PlaceK5::Dyadic => Err(Error::DyadicPlace),
        PlaceK5::Prime(q) => {
            let alpha = q.valuation(a)?;
            let beta = q.valuation(b)?;
            let mut w = a.pow(beta).expect("nonzero") * b.pow(-alpha).expect("nonzero");
            if (alpha * beta).rem_euclid(2) == 1 {
                w = -w;
            }
            Ok(if residue_square(&w, q)? { 1 } else { -1 })
        }
    }
}

/// Both real places followed by every prime above an odd rational prime dividing the norm
/// of a numerator or a denominator of some entry. The dyadic place is not listed.
pub fn relevant_places_k5(entries: &[K5Elem]) -> Result<Vec<PlaceK5>> {
    let mut rational_primes = Vec::new();
    for x in entries {
        if x.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let (n, m) = PrimeIdeal::integral_parts(x);
        rational_primes.extend(int::prime_divisors(&n.norm().abs())?);
        rational_primes.extend(int::prime_divisors(&m)?);
    }
    rational_primes.sort_unstable();
    rational_primes.dedup();
    let mut out = vec![PlaceK5::RealIdentity, PlaceK5::RealTau];
    for p in rational_primes.into_iter().filter(|&p| p != 2) {
        out.extend(PrimeIdeal::above(p)?.into_iter().map(PlaceK5::Prime));
    }
    Ok(out)
}

/// `prod_{i<j} (a_i, a_j)_v` at a non-dyadic place.
pub fn hasse_product_k5(entries: &[K5Elem], place: &PlaceK5) -> Result<i8> {
    let mut s = 1i8;
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            s *= hilbert_k5(&entries[i], &entries[j], place)?;
        }
    }
    Ok(s)
}

/// Places of Q(sqrt 5) where the Hasse invariant is nontrivial. The dyadic place is
/// included exactly when the other places have odd count, by Hilbert reciprocity.
pub fn hasse_k5(d: &DiagForm) -> Result<RamSet<PlaceK5>> {
    if d.field() != FieldTag::K5 {
        return Err(Error::FieldMismatch {
            expected: "K5".into(),
            found: d.field().to_string(),
        });
    }
    let entries = d.entries();
    let mut out = RamSet::new();
    for place in relevant_places_k5(entries)? {
        if hasse_product_k5(entries, &place)? == -1 {
            out.insert(place);
        }
    }
    if out.len() % 2 == 1 {
        out.insert(PlaceK5::Dyadic);
    }
    Ok(out)
}
