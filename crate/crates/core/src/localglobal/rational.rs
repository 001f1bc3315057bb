use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::int::{self, pow_mod};
use crate::exact::rat::{self, Rat};
use crate::localglobal::{PlaceQ, RamSet};
use crate::qforms::{DiagForm, FieldTag};

/// Legendre symbol by Euler's criterion.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8> {
    if p == 2 || !int::is_prime_u64(p) {
        return Err(Error::NotPrime(format!("{p} (odd prime required)")));
    }
    let r = int::big_mod(a, p);
    Ok(match pow_mod(r, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    })
}

fn check_place(place: PlaceQ) -> Result<()> {
    match place {
        PlaceQ::Prime(p) if !int::is_prime_u64(p) => Err(Error::NotPrime(p.to_string())),
        _ => Ok(()),
    }
}

/// Hilbert symbol `(a, b)_v` over Q: +1 iff `z^2 = a x^2 + b y^2` has a nontrivial
/// solution in the completion at `v`.
pub fn hilbert_q(a: &Rat, b: &Rat, place: PlaceQ) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    check_place(place)?;
    let p = match place {
        PlaceQ::Real => {
            return Ok(if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            })
        }
        PlaceQ::Prime(p) => p,
    };
    // n/d and n*d share a square class
    let (alpha, u) = int::split_valuation(&rat::integral_representative(a), p);
    let (beta, v) = int::split_valuation(&rat::integral_representative(b), p);
    let (alpha, beta) = (alpha as u64 % 2, beta as u64 % 2);

    if p == 2 {
        let eps = |x: &BigInt| -> u64 {
            if x.mod_floor(&BigInt::from(4)) == BigInt::from(1) {
                0
            } else {
                1
            }
        };
        let omega = |x: &BigInt| -> u64 {
            let r = x
                .mod_floor(&BigInt::from(8))
                .to_u64()
                .expect("residue mod 8");
            if r == 1 || r == 7 {
                0
            } else {
                1
            }
        };
        let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
        return Ok(if e % 2 == 0 { 1 } else { -1 });
    }

    let mut s: i8 = if alpha * beta * ((p - 1) / 2) % 2 == 1 {
        -1
    } else {
        1
    };
    if beta == 1 {
        s *= legendre(&u, p)?;
    }
    if alpha == 1 {
        s *= legendre(&v, p)?;
    }
    Ok(s)
}

/// Whether `a` is a square in the completion at `place`.
pub fn is_local_square_q(a: &Rat, place: PlaceQ) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    check_place(place)?;
    match place {
        PlaceQ::Real => Ok(a.is_positive()),
        PlaceQ::Prime(p) => {
            let (v, u) = int::split_valuation(&rat::integral_representative(a), p);
            if v % 2 == 1 {
                return Ok(false);
            }
            if p == 2 {
                Ok(u.mod_floor(&BigInt::from(8)) == BigInt::from(1))
            } else {
                Ok(legendre(&u, p)? == 1)
            }
        }
    }
}

/// The real place, 2, and every prime dividing a numerator or denominator of `entries`.
/// All other Hilbert symbols of pairs of entries are trivially +1.
pub fn relevant_places_q(entries: &[Rat]) -> Result<Vec<PlaceQ>> {
    let mut primes = vec![2u64];
    for x in entries {
        if x.is_zero() {
            return Err(Error::ZeroArgument);
        }
        primes.extend(int::prime_divisors(x.numer())?);
        primes.extend(int::prime_divisors(x.denom())?);
    }
    primes.sort_unstable();
    primes.dedup();
    let mut out = vec![PlaceQ::Real];
    out.extend(primes.into_iter().map(PlaceQ::Prime));
    Ok(out)
}

/// `prod_{i<j} (a_i, a_j)_v`.
pub fn hasse_product_q(entries: &[Rat], place: PlaceQ) -> Result<i8> {
    let mut s = 1i8;
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            s *= hilbert_q(&entries[i], &entries[j], place)?;
        }
    }
    Ok(s)
}

/// Places where the Hasse invariant `prod_{i<j} (a_i, a_j)` is nontrivial.
pub fn hasse_q(d: &DiagForm) -> Result<RamSet<PlaceQ>> {
    if d.field() != FieldTag::Q {
        return Err(Error::FieldMismatch {
            expected: "Q".into(),
            found: d.field().to_string(),
        });
    }
    let entries = d.rational_entries().expect("Q-form has rational entries");
    let mut out = RamSet::new();
    for place in relevant_places_q(&entries)? {
        if hasse_product_q(&entries, place)? == -1 {
            out.insert(place);
        }
    }
    Ok(out)
}
