use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{int, rat, Rat};
use crate::qforms::{represents_zero_q, DiagForm};

/// Commensurability invariants of `SO_0(<1,a,b,c>; Z)` as a Kleinian group: the invariant
/// trace field `Q(sqrt(abc))`, the quaternion algebra `(-ac, -bc)` over it, and whether
/// the group is cocompact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KleinianClass {
    /// Squarefree part of `abc`.
    pub field_disc: BigInt,
    pub symbol: (Rat, Rat),
    pub cocompact: bool,
}

impl Serialize for KleinianClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("KleinianClass", 3)?;
        st.serialize_field("field_disc", &self.field_disc.to_string())?;
        st.serialize_field(
            "symbol",
            &[self.symbol.0.to_string(), self.symbol.1.to_string()],
        )?;
        st.serialize_field("cocompact", &self.cocompact)?;
        st.end()
    }
}

/// Classifies `<1,a,b,c>` with `a < 0 < b, c`. The group is cocompact iff the form is
/// anisotropic over Q.
pub fn classify_kleinian(a: i64, b: i64, c: i64) -> Result<KleinianClass> {
    if a >= 0 || b <= 0 || c <= 0 {
        return Err(Error::InvalidArgument(format!(
            "need a < 0 < b, c; got a={a}, b={b}, c={c}"
        )));
    }
    let abc = BigInt::from(a) * BigInt::from(b) * BigInt::from(c);
    let field_disc = int::squarefree_part(&abc)?;
    let symbol = (rat(-a) * rat(c), rat(-b) * rat(c));
    let cocompact = !represents_zero_q(&DiagForm::rational(&[1, a, b, c])?)?;
    Ok(KleinianClass {
        field_disc,
        symbol,
        cocompact,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Commensurability {
    /// Different invariant trace fields, or one cocompact and one not.
    Incommensurable,
    /// Same field: deciding would need quaternion algebras over the imaginary quadratic field.
    Indeterminate,
}

pub fn commensurability(x: &KleinianClass, y: &KleinianClass) -> Commensurability {
    if x.field_disc != y.field_disc || x.cocompact != y.cocompact {
        Commensurability::Incommensurable
    } else {
        Commensurability::Indeterminate
    }
}

/// For primes `d = 7 mod 8`, the groups of `<1,1,1,-d>` are cocompact with pairwise
/// distinct trace fields `Q(sqrt -d)`, hence pairwise incommensurable.
pub fn incommensurable_family_check(ds: &[u64]) -> Result<bool> {
    let mut classes = Vec::with_capacity(ds.len());
    for &d in ds {
        if !int::is_prime_u64(d) {
            return Err(Error::NotPrime(d.to_string()));
        }
        if d % 8 != 7 {
            return Err(Error::InvalidArgument(format!("{d} is not 7 mod 8")));
        }
        let di =
            i64::try_from(d).map_err(|_| Error::InvalidArgument(format!("{d} is too large")))?;
        classes.push(classify_kleinian(-di, 1, 1)?);
    }
    let all_cocompact = classes.iter().all(|k| k.cocompact);
    let distinct = classes.iter().enumerate().all(|(i, x)| {
        classes[i + 1..]
            .iter()
            .all(|y| commensurability(x, y) == Commensurability::Incommensurable)
    });
    Ok(all_cocompact && distinct)
}
