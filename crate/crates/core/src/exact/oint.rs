//! The ring of integers Z[phi] of Q(sqrt 5), in the basis `1, phi`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::k5::{Embedding, K5Elem};
use crate::exact::rat::Rat;

/// `x + y*phi` with `phi^2 = phi + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OInt {
    pub x: BigInt,
    pub y: BigInt,
}

impl OInt {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        OInt {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn zero() -> Self {
        OInt::new(0, 0)
    }

    pub fn one() -> Self {
        OInt::new(1, 0)
    }

    pub fn phi() -> Self {
        OInt::new(0, 1)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        OInt::new(n, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Galois conjugate: `tau(phi) = 1 - phi`.
    pub fn tau(&self) -> Self {
        OInt {
            x: &self.x + &self.y,
            y: -&self.y,
        }
    }

    /// `x^2 + xy - y^2`, the product with the conjugate.
    pub fn norm(&self) -> BigInt {
        &self.x * &self.x + &self.x * &self.y - &self.y * &self.y
    }

    pub fn to_k5(&self) -> K5Elem {
        K5Elem::from_phi_coords(
            Rat::from_integer(self.x.clone()),
            Rat::from_integer(self.y.clone()),
        )
    }

    /// Inverse of [`OInt::to_k5`]; `None` when the element is not integral.
    pub fn from_k5(v: &K5Elem) -> Option<Self> {
        let (c0, c1) = v.phi_coords();
        (c0.is_integer() && c1.is_integer()).then(|| OInt {
            x: c0.to_integer(),
            y: c1.to_integer(),
        })
    }

    pub fn sign_at(&self, e: Embedding) -> i8 {
        self.to_k5().sign_at(e)
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    /// `phi^k` for any integer `k`.
    pub fn phi_pow(k: i64) -> Self {
        let base = if k >= 0 {
            OInt::phi()
        } else {
            OInt::new(-1, 1)
        };
        let mut acc = OInt::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Exact quotient when `other` divides `self` in Z[phi].
    pub fn div_exact(&self, other: &OInt) -> Option<OInt> {
        if other.is_zero() {
            return None;
        }
        let n = other.norm();
        let num = self * &other.tau();
        let (qx, rx) = num.x.div_rem(&n);
        let (qy, ry) = num.y.div_rem(&n);
        (rx.is_zero() && ry.is_zero()).then_some(OInt { x: qx, y: qy })
    }

    pub fn divides(&self, other: &OInt) -> bool {
        other.div_exact(self).is_some()
    }

    /// `trace(v^2) = v^2 + tau(v)^2 = 2x^2 + 2xy + 3y^2`, a size measure on associates.
    pub fn trace_of_square(&self) -> BigInt {
        BigInt::from(2) * &self.x * &self.x
            + BigInt::from(2) * &self.x * &self.y
            + BigInt::from(3) * &self.y * &self.y
    }
}

/// Associate `t = u*v` with `t < 0` and `tau(t) > 0`, where `u = ±phi^k` has the smallest
/// `|k|` (ties resolved toward positive `k`).
pub fn normalize_generator(v: &OInt) -> Option<OInt> {
    if v.is_zero() {
        return None;
    }
    let mut k = 0i64;
    loop {
        for exp in if k == 0 { vec![0] } else { vec![k, -k] } {
            let u = OInt::phi_pow(exp);
            for sign in [1i64, -1] {
                let t = &(&u * v) * &OInt::from_int(sign);
                if t.sign_at(Embedding::Identity) < 0 && t.sign_at(Embedding::Tau) > 0 {
                    return Some(t);
                }
            }
        }
        k += 1;
    }
}

/// Canonical generator of the ideal `(v)`: among the normalized associates `t*phi^(2k)`
/// keep those in Z[sqrt 5] (even `y`), then minimize `trace(t^2)`, then prefer the
/// larger value under the identity embedding.
pub fn canonical_generator(v: &OInt) -> Option<OInt> {
    let mut t = normalize_generator(v)?;
    let up = OInt::phi_pow(2);
    let down = OInt::phi_pow(-2);
    loop {
        let a = &t * &up;
        if a.trace_of_square() < t.trace_of_square() {
            t = a;
            continue;
        }
        let b = &t * &down;
        if b.trace_of_square() < t.trace_of_square() {
            t = b;
            continue;
        }
        break;
    }
    let mut best: Option<OInt> = None;
    for k in -3..=3i64 {
        let c = &t * &OInt::phi_pow(2 * k);
        if c.y.is_odd() {
            continue;
        }
        best = Some(match best {
            None => c,
            Some(b) => {
                let (hc, hb) = (c.trace_of_square(), b.trace_of_square());
                if hc < hb || (hc == hb && (&c - &b).sign_at(Embedding::Identity) > 0) {
                    c
                } else {
                    b
                }
            }
        });
    }
    best
}

impl<'b> Add<&'b OInt> for &OInt {
    type Output = OInt;
    fn add(self, rhs: &'b OInt) -> OInt {
        OInt {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl<'b> Sub<&'b OInt> for &OInt {
    type Output = OInt;
    fn sub(self, rhs: &'b OInt) -> OInt {
        OInt {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        }
    }
}

impl<'b> Mul<&'b OInt> for &OInt {
    type Output = OInt;
    fn mul(self, rhs: &'b OInt) -> OInt {
        let yy = &self.y * &rhs.y;
        OInt {
            x: &self.x * &rhs.x + &yy,
            y: &self.x * &rhs.y + &self.y * &rhs.x + yy,
        }
    }
}

impl Mul for OInt {
    type Output = OInt;
    fn mul(self, rhs: OInt) -> OInt {
        &self * &rhs
    }
}

impl Neg for &OInt {
    type Output = OInt;
    fn neg(self) -> OInt {
        OInt {
            x: -&self.x,
            y: -&self.y,
        }
    }
}

impl Neg for OInt {
    type Output = OInt;
    fn neg(self) -> OInt {
        -&self
    }
}

/// Prints in `a+b*s5` syntax so OInts read back through the K5 parser.
impl fmt::Display for OInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_k5())
    }
}
