use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{golden_roots, int, OInt, PrimeIdeal, PrimeKind};
use crate::localglobal::legendre;

/// A rational prime `q` in the set together with a prime of Z[phi] above it modulo which
/// `phi` is a square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSetPEntry {
    pub q: u64,
    pub pi: OInt,
    /// Image of `phi` in the residue field Z[phi]/(pi) = F_q.
    pub root: u64,
}

impl PrimeSetPEntry {
    pub fn prime(&self) -> PrimeIdeal {
        PrimeIdeal::from_generator(&self.pi).expect("entry generators are prime")
    }
}

impl Serialize for PrimeSetPEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PrimeSetPEntry", 4)?;
        st.serialize_field("q", &self.q.to_string())?;
        st.serialize_field("pi", &self.pi.to_k5().to_string())?;
        st.serialize_field(
            "pi_phi_basis",
            &[self.pi.x.to_string(), self.pi.y.to_string()],
        )?;
        st.serialize_field("phi_mod_pi", &self.root.to_string())?;
        st.end()
    }
}

/// Roots `r` of `r^2 = r + 1 mod q` (images of `phi` at the primes above a split `q`) at
/// which `phi` is a quadratic residue.
fn square_roots_of_phi(q: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for r in golden_roots(q) {
        if legendre(&r.into(), q)? == 1 {
            out.push(r);
        }
    }
    Ok(out)
}

/// Whether `q` is unramified in Q(sqrt phi) and some prime above it there has degree 1:
/// `q` splits in Q(sqrt 5) and `phi` is a square modulo a prime above `q`.
pub fn in_prime_set_p(q: u64) -> Result<bool> {
    if !int::is_prime_u64(q) {
        return Err(Error::NotPrime(q.to_string()));
    }
    // 2 and 5 divide the discriminant -400 of x^4 - x^2 - 1
    if q == 2 || q == 5 || matches!(q % 5, 2 | 3) {
        return Ok(false);
    }
    Ok(!square_roots_of_phi(q)?.is_empty())
}

/// Members of the set up to `limit`, ascending, each with the prime above it at which
/// `phi` is a square (the one with the smaller residue root when both qualify).
pub fn prime_set_p_entries(limit: u64) -> Result<Vec<PrimeSetPEntry>> {
    if limit < 2 {
        return Err(Error::InvalidArgument("limit must be at least 2".into()));
    }
    let mut out = Vec::new();
    for q in int::primes_up_to(limit) {
        if !in_prime_set_p(q)? {
            continue;
        }
        let root = square_roots_of_phi(q)?[0];
        let prime = PrimeIdeal::above(q)?
            .into_iter()
            .find(|p| p.kind == PrimeKind::Split { root })
            .expect("split prime with this root");
        out.push(PrimeSetPEntry {
            q,
            pi: prime.generator,
            root,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{normalize_generator, rat, Embedding, K5Elem, Rat};
    use crate::linalg::Matrix;

    /// Discriminant of a monic polynomial as `Res(f, f') * (-1)^(n(n-1)/2)`, with the
    /// resultant from the Sylvester matrix. `coeffs` are highest degree first.
    fn discriminant(coeffs: &[i64]) -> Rat {
        let n = coeffs.len() - 1;
        let deriv: Vec<i64> = coeffs[..n]
            .iter()
            .enumerate()
            .map(|(i, &c)| c * (n - i) as i64)
            .collect();
        let size = 2 * n - 1;
        let m = Matrix::from_fn(size, size, |i, j| {
            let (row, shift) = if i < n - 1 {
                (coeffs, i)
            } else {
                (&deriv[..], i - (n - 1))
            };
            match j.checked_sub(shift) {
                Some(k) if k < row.len() => rat(row[k]),
                _ => rat(0),
            }
        });
        let res = m.determinant().unwrap();
        if (n * (n - 1) / 2) % 2 == 1 {
            -res
        } else {
            res
        }
    }

    fn quartic_roots_mod(q: u64) -> usize {
        (0..q)
            .filter(|&x| {
                let x2 = x * x % q;
                (x2 * x2 % q + q * 2 - x2 - 1).is_multiple_of(q)
            })
            .count()
    }

    #[test]
    fn discriminant_oracle() {
        assert_eq!(discriminant(&[1, 0, -1, 0, -1]), rat(-400));
        // sanity: x^2 - x - 1 has discriminant 5
        assert_eq!(discriminant(&[1, -1, -1]), rat(5));
    }

    #[test]
    fn membership_matches_root_counting() {
        for q in int::primes_up_to(500) {
            if q == 2 || q == 5 {
                assert!(!in_prime_set_p(q).unwrap());
                continue;
            }
            assert_eq!(
                in_prime_set_p(q).unwrap(),
                quartic_roots_mod(q) >= 1,
                "q = {q}"
            );
        }
        assert!(in_prime_set_p(11).unwrap());
        assert!(in_prime_set_p(19).unwrap());
        assert!(!in_prime_set_p(3).unwrap());
        assert!(in_prime_set_p(15).is_err());
    }

    #[test]
    fn entries() {
        let e20 = prime_set_p_entries(20).unwrap();
        assert_eq!(e20.iter().map(|e| e.q).collect::<Vec<_>>(), vec![11, 19]);
        assert_eq!(e20[0].pi, OInt::new(5, -4));
        assert_eq!(e20[1].pi, OInt::new(1, -4));
        assert_eq!(e20[1].pi.to_k5(), "-1-2*s5".parse::<K5Elem>().unwrap());
        assert!(prime_set_p_entries(10).unwrap().is_empty());
        let e100 = prime_set_p_entries(100).unwrap();
        assert_eq!(&e100[..2], &e20[..]);
        for e in &e100 {
            assert_eq!(normalize_generator(&e.pi).as_ref(), Some(&e.pi));
            assert_eq!(e.pi.norm().magnitude().to_string(), e.q.to_string());
            assert!(e.pi.sign_at(Embedding::Identity) < 0);
            assert!(e.prime().reduce(&K5Elem::phi()).unwrap().is_square());
        }
        assert!(prime_set_p_entries(1).is_err());
    }

    #[test]
    fn json_entry() {
        let e = &prime_set_p_entries(11).unwrap()[0];
        let v = serde_json::to_value(e).unwrap();
        assert_eq!(v["q"], "11");
        assert_eq!(v["pi"], "3-2*s5");
        assert_eq!(v["phi_mod_pi"], "4");
    }
}
