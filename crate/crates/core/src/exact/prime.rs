//! Prime ideals of Z[phi]: splitting of rational primes, valuations and residue maps.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::int::{self, inv_mod, mul_mod};
use crate::exact::k5::K5Elem;
use crate::exact::oint::{canonical_generator, OInt};
use crate::exact::rat::{self, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitType {
    Ramified,
    Split(OInt),
    Inert,
}

/// How a rational prime decomposes in Q(sqrt 5). For split primes the returned element
/// generates the prime on which `phi` reduces to the smaller root of `x^2 - x - 1`.
pub fn split_rational_prime(p: u64) -> Result<SplitType> {
    if !int::is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(match p % 5 {
        0 => SplitType::Ramified,
        1 | 4 => SplitType::Split(PrimeIdeal::split_prime(p, golden_roots(p)[0]).generator),
        _ => SplitType::Inert,
    })
}

/// Roots of `x^2 - x - 1` mod `p`, ascending. Empty for inert `p`.
pub fn golden_roots(p: u64) -> Vec<u64> {
    if p == 2 {
        return Vec::new();
    }
    if p == 5 {
        return vec![3];
    }
    match int::sqrt_mod(5, p) {
        None => Vec::new(),
        Some(s) => {
            let half = inv_mod(2, p);
            let mut r = vec![mul_mod(1 + s, half, p), mul_mod((1 + p - s) % p, half, p)];
            r.sort_unstable();
            r.dedup();
            r
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PrimeKind {
    /// Residue field F_p, `phi` maps to `root`.
    Split { root: u64 },
    /// The prime `(sqrt 5)` above 5; residue field F_5 with `phi -> 3`.
    Ramified,
    /// `p` stays prime; residue field F_{p^2} = F_p[phi].
    Inert,
}

/// A nonzero prime ideal of Z[phi], identified by the rational prime below and, for split
/// primes, the image of `phi` in the residue field. The generator is the canonical one.
#[derive(Debug, Clone)]
pub struct PrimeIdeal {
    pub p: u64,
    pub kind: PrimeKind,
    pub generator: OInt,
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.kind == other.kind
    }
}

impl Eq for PrimeIdeal {}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimeIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p, self.kind).cmp(&(other.p, other.kind))
    }
}

impl std::hash::Hash for PrimeIdeal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.kind.hash(state);
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator)
    }
}

impl PrimeIdeal {
    fn split_prime(p: u64, root: u64) -> PrimeIdeal {
        // The ideal is the lattice {x + y phi : x + y*root = 0 mod p}. Its shortest vector
        // under x^2 + x'^2 = 2x^2 + 2xy + 3y^2 has |norm| < 2p by Minkowski, so norm ±p.
        let q = |v: &(BigInt, BigInt)| {
            BigInt::from(2) * &v.0 * &v.0
                + BigInt::from(2) * &v.0 * &v.1
                + BigInt::from(3) * &v.1 * &v.1
        };
        let b = |u: &(BigInt, BigInt), v: &(BigInt, BigInt)| {
            BigInt::from(2) * &u.0 * &v.0
                + &u.0 * &v.1
                + &u.1 * &v.0
                + BigInt::from(3) * &u.1 * &v.1
        };
        let mut u = (BigInt::from(p), BigInt::from(0));
        let mut v = (BigInt::from(p - root % p), BigInt::from(1));
        if q(&u) > q(&v) {
            std::mem::swap(&mut u, &mut v);
        }
        loop {
            let qu = q(&u);
            // nearest integer to B(u, v) / Q(u)
            let m = (BigInt::from(2) * b(&u, &v) + &qu).div_floor(&(BigInt::from(2) * &qu));
            v = (&v.0 - &m * &u.0, &v.1 - &m * &u.1);
            if q(&v) >= qu {
                break;
            }
            std::mem::swap(&mut u, &mut v);
        }
        let cand = OInt::new(u.0, u.1);
        assert_eq!(
            cand.norm().abs(),
            BigInt::from(p),
            "Z[phi] is a PID: the shortest ideal vector generates it"
        );
        let generator = canonical_generator(&cand).expect("nonzero");
        PrimeIdeal {
            p,
            kind: PrimeKind::Split { root },
            generator,
        }
    }

    /// All primes of Z[phi] above the rational prime `p`, ordered by residue root.
    pub fn above(p: u64) -> Result<Vec<PrimeIdeal>> {
        Ok(match split_rational_prime(p)? {
            SplitType::Ramified => vec![PrimeIdeal {
                p,
                kind: PrimeKind::Ramified,
                generator: canonical_generator(&OInt::new(-1, 2)).expect("nonzero"),
            }],
            SplitType::Inert => vec![PrimeIdeal {
                p,
                kind: PrimeKind::Inert,
                generator: canonical_generator(&OInt::from_int(p)).expect("nonzero"),
            }],
            SplitType::Split(_) => golden_roots(p)
                .into_iter()
                .map(|r| PrimeIdeal::split_prime(p, r))
                .collect(),
        })
    }

    /// The prime ideal generated by `pi`, which must generate a prime.
    pub fn from_generator(pi: &OInt) -> Result<PrimeIdeal> {
        let n = pi.norm().abs();
        let bad = || Error::NotPrime(pi.to_string());
        let n64 = n.to_u64().ok_or_else(bad)?;
        if int::is_prime_u64(n64) {
            let primes = PrimeIdeal::above(n64)?;
            return primes.into_iter().find(|q| q.contains(pi)).ok_or_else(bad);
        }
        let r = (n64 as f64).sqrt().round() as u64;
        if r * r == n64
            && int::is_prime_u64(r)
            && matches!(split_rational_prime(r)?, SplitType::Inert)
        {
            return Ok(PrimeIdeal::above(r)?.remove(0));
        }
        Err(bad())
    }

    pub fn residue_field_size(&self) -> u64 {
        match self.kind {
            PrimeKind::Inert => self.p * self.p,
            _ => self.p,
        }
    }

    fn root(&self) -> Option<u64> {
        match self.kind {
            PrimeKind::Split { root } => Some(root),
            PrimeKind::Ramified => Some(3),
            PrimeKind::Inert => None,
        }
    }

    /// Membership of an algebraic integer in this ideal.
    pub fn contains(&self, v: &OInt) -> bool {
        let p = self.p;
        let x = int::big_mod(&v.x, p);
        let y = int::big_mod(&v.y, p);
        match self.root() {
            Some(r) => (x + mul_mod(y, r, p)).is_multiple_of(p),
            None => x == 0 && y == 0,
        }
    }

    /// Valuation of a nonzero algebraic integer.
    pub fn valuation_oint(&self, v: &OInt) -> Result<u32> {
        if v.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let mut k = 0;
        let mut cur = v.clone();
        while self.contains(&cur) {
            cur = cur
                .div_exact(&self.generator)
                .expect("member of the ideal is divisible by its generator");
            k += 1;
        }
        Ok(k)
    }

    /// Splits `v = N / m` with `N` in Z[phi] and `m` a positive integer.
    pub fn integral_parts(v: &K5Elem) -> (OInt, BigInt) {
        let (c0, c1) = v.phi_coords();
        let m = rat::lcm_denominators([&c0, &c1]);
        let mr = Rat::from_integer(m.clone());
        let n = OInt::new((&c0 * &mr).to_integer(), (&c1 * &mr).to_integer());
        (n, m)
    }

    pub fn valuation(&self, v: &K5Elem) -> Result<i64> {
        if v.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let (n, m) = Self::integral_parts(v);
        Ok(self.valuation_oint(&n)? as i64 - self.valuation_oint(&OInt::from_int(m))? as i64)
    }

    /// Image of a unit at this prime in the residue field.
    pub fn reduce(&self, v: &K5Elem) -> Result<Residue> {
        if v.is_zero() {
            return Err(Error::NotUnit(v.to_string()));
        }
        let (mut n, m) = Self::integral_parts(v);
        let mut m = OInt::from_int(m);
        let k = self.valuation_oint(&m)?;
        if self.valuation_oint(&n)? != k {
            return Err(Error::NotUnit(v.to_string()));
        }
        for _ in 0..k {
            n = n.div_exact(&self.generator).expect("valuation checked");
            m = m.div_exact(&self.generator).expect("valuation checked");
        }
        let num = self.reduce_integral(&n);
        let den = self.reduce_integral(&m);
        Ok(num.mul(&den.inv()))
    }

    fn reduce_integral(&self, v: &OInt) -> Residue {
        let p = self.p;
        let x = int::big_mod(&v.x, p);
        let y = int::big_mod(&v.y, p);
        match self.root() {
            Some(r) => Residue {
                p,
                degree: 1,
                c0: (x + mul_mod(y, r, p)) % p,
                c1: 0,
            },
            None => Residue {
                p,
                degree: 2,
                c0: x,
                c1: y,
            },
        }
    }
}

/// Element `c0 + c1*phi` of the residue field F_p (degree 1, `c1 = 0`) or F_p[phi] (degree 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Residue {
    pub p: u64,
    pub degree: u8,
    pub c0: u64,
    pub c1: u64,
}

impl Residue {
    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    pub fn one(p: u64, degree: u8) -> Residue {
        Residue {
            p,
            degree,
            c0: 1 % p,
            c1: 0,
        }
    }

    pub fn mul(&self, o: &Residue) -> Residue {
        let p = self.p;
        if self.degree == 1 {
            return Residue {
                c0: mul_mod(self.c0, o.c0, p),
                ..*self
            };
        }
        // phi^2 = phi + 1
        let yy = mul_mod(self.c1, o.c1, p);
        let c0 = (mul_mod(self.c0, o.c0, p) + yy) % p;
        let c1 = (mul_mod(self.c0, o.c1, p) + mul_mod(self.c1, o.c0, p) + yy) % p;
        Residue { c0, c1, ..*self }
    }

    pub fn pow(&self, mut e: u128) -> Residue {
        let mut acc = Residue::one(self.p, self.degree);
        let mut b = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    pub fn field_size(&self) -> u128 {
        (self.p as u128).pow(self.degree as u32)
    }

    /// Inverse of a nonzero element via `x^(q-2)`.
    pub fn inv(&self) -> Residue {
        self.pow(self.field_size() - 2)
    }

    /// Euler criterion in a field of odd order.
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let r = self.pow((self.field_size() - 1) / 2);
        r.c0 == 1 && r.c1 == 0
    }
}

/// Whether `v` is a p-adic unit at every prime above `p`.
pub fn is_unit_above(v: &K5Elem, p: u64) -> Result<bool> {
    Ok(PrimeIdeal::above(p)?
        .iter()
        .all(|q| q.valuation(v).map(|x| x == 0).unwrap_or(false)))
}
