//! Integer helpers: primality, bounded factorization, modular powers, squarefree parts.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default factoring effort bound.
pub const DEFAULT_PRIME_BOUND: u64 = 1_000_000;

/// Environment variable that overrides [`DEFAULT_PRIME_BOUND`].
pub const PRIME_BOUND_ENV: &str = "FORMHASSE_PRIME_BOUND";

/// Factoring effort bound (trial division up to `min(bound, 2^14)`, rho budget `4 * bound`),
/// read once from `FORMHASSE_PRIME_BOUND`.
pub fn prime_bound() -> u64 {
    static BOUND: OnceLock<u64> = OnceLock::new();
    *BOUND.get_or_init(|| {
        std::env::var(PRIME_BOUND_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .filter(|&b| b >= 2)
            .unwrap_or(DEFAULT_PRIME_BOUND)
    })
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse of `a` mod prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

/// Reduces a signed big integer into `[0, m)`.
pub fn big_mod(a: &BigInt, m: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0u32);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_probable_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor of composite `n`
/// or `None` when the iteration budget runs out.
fn pollard_brent(n: &BigUint, budget: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    let mut spent = 0u64;
    for c in 1u32..20 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const M: u64 = 128;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..M.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += M;
                spent += M;
            }
            r *= 2;
            if spent > budget {
                return None;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

/// Trial division stops here even for larger bounds; Pollard rho is far cheaper beyond it.
const TRIAL_CUTOFF: u64 = 1 << 14;

/// Factors `n > 0` into `(prime, exponent)` pairs in ascending order, using trial
/// division by small primes, then Miller-Rabin and Pollard rho (with an iteration budget
/// scaled by `bound`) for the cofactor.
pub fn factor_with_bound(n: &BigUint, bound: u64) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut rest = n.clone();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
        Some(entry) => entry.1 += 1,
        None => out.push((p, 1)),
    };

    let trial = bound.min(TRIAL_CUTOFF);
    let mut d = 2u64;
    while d <= trial {
        if let Some(small) = rest.to_u64() {
            if d.saturating_mul(d) > small {
                break;
            }
            while small_rem(&rest, d) == 0 {
                rest /= d;
                push(d, &mut out);
            }
        } else {
            while small_rem(&rest, d) == 0 {
                rest /= d;
                push(d, &mut out);
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }

    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        let below_square = m
            .to_u128()
            .map(|v| v < (trial as u128) * (trial as u128))
            .unwrap_or(false);
        if below_square || is_probable_prime_big(&m) {
            let p = m
                .to_u64()
                .ok_or_else(|| Error::Factorization(n.to_string()))?;
            push(p, &mut out);
            continue;
        }
        let budget = bound.saturating_mul(4).max(1 << 16);
        match pollard_brent(&m, budget) {
            Some(f) => {
                let g = &m / &f;
                stack.push(f);
                stack.push(g);
            }
            None => return Err(Error::Factorization(n.to_string())),
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn small_rem(n: &BigUint, d: u64) -> u64 {
    (n % d).to_u64().unwrap_or(0)
}

/// Factors with the configured [`prime_bound`].
pub fn factor(n: &BigUint) -> Result<Vec<(u64, u32)>> {
    factor_with_bound(n, prime_bound())
}

/// Distinct primes dividing `|n|`, for nonzero `n`.
pub fn prime_divisors(n: &BigInt) -> Result<Vec<u64>> {
    Ok(factor(n.magnitude())?.into_iter().map(|(p, _)| p).collect())
}

/// p-adic valuation of a nonzero integer together with the cofactor.
pub fn split_valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let p_big = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    while !m.is_zero() && (&m % &p_big).is_zero() {
        m /= &p_big;
        v += 1;
    }
    (v, m)
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Square root of a perfect square, `None` otherwise.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Signed squarefree part of a nonzero integer: `n = sf * k^2` with `sf` squarefree.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut sf = BigInt::one();
    for (p, e) in factor(n.magnitude())? {
        if e % 2 == 1 {
            sf *= p;
        }
    }
    if n.sign() == Sign::Minus {
        sf = -sf;
    }
    Ok(sf)
}

pub fn is_squarefree_u64(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut d = 2u64;
    let mut m = n;
    while d * d <= m {
        if m.is_multiple_of(d * d) {
            return false;
        }
        if m.is_multiple_of(d) {
            m /= d;
        }
        d += 1;
    }
    true
}

/// Primes up to `limit` by sieve.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Square root of a quadratic residue `a` mod odd prime `p` (Tonelli-Shanks).
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}
