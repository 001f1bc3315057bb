use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::int;

/// Exact rational number in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_rational_square(r: &Rat) -> bool {
    !r.is_negative() && int::is_perfect_square(r.numer()) && int::is_perfect_square(r.denom())
}

pub fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    Some(Rat::new(
        int::exact_sqrt(r.numer())?,
        int::exact_sqrt(r.denom())?,
    ))
}

/// The squarefree integer representing the class of `r` in Q*/Q*^2.
pub fn squarefree_class(r: &Rat) -> Result<BigInt> {
    if r.is_zero() {
        return Err(Error::ZeroArgument);
    }
    int::squarefree_part(&(r.numer() * r.denom()))
}

/// Integer in the same square class: `n * d` for `r = n/d`.
pub fn integral_representative(r: &Rat) -> BigInt {
    r.numer() * r.denom()
}

pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
