//! Named quadratic forms whose integral orthogonal groups are the arithmetic groups under
//! study, with cocompactness, commensurability and prime-set invariants.

mod kleinian;
mod primeset;
mod verify;

use crate::error::{Error, Result};
use crate::exact::{int, normalize_generator, Embedding, K5Elem, OInt, PrimeIdeal};
use crate::qforms::{signature_at, DiagForm, FieldTag, Signature};

pub use kleinian::{
    classify_kleinian, commensurability, incommensurable_family_check, Commensurability,
    KleinianClass,
};
pub use primeset::{in_prime_set_p, prime_set_p_entries, PrimeSetPEntry};
pub use verify::{verify_all, verify_paper, CheckItem, Report, SECTIONS};

/// Order of the Weyl group of E6, `2^7 * 3^4 * 5`.
pub const E6_WEYL_ORDER: u64 = 51840;

fn squarefree_param(d: u64) -> Result<i64> {
    if d == 0 || !int::is_squarefree_u64(d) {
        return Err(Error::InvalidArgument(format!(
            "{d} is not a positive squarefree integer"
        )));
    }
    i64::try_from(d).map_err(|_| Error::InvalidArgument(format!("{d} is too large")))
}

/// `<d,1,1,-1>`, commensurable with a Bianchi group.
pub fn p_d_bianchi(d: u64) -> Result<DiagForm> {
    let d = squarefree_param(d)?;
    DiagForm::rational(&[d, 1, 1, -1])
}

/// `<d,d,d,d,1,1,-1>`.
pub fn q_d_7(d: u64) -> Result<DiagForm> {
    let d = squarefree_param(d)?;
    DiagForm::rational(&[d, d, d, d, 1, 1, -1])
}

/// `<1,1,1,-d>`, cocompact exactly when `d` is not a sum of three squares.
pub fn p_d_cc(d: u64) -> Result<DiagForm> {
    let d = squarefree_param(d)?;
    DiagForm::rational(&[1, 1, 1, -d])
}

/// `<d,1,1,1,-d> = <d> ⊕ p_d`.
pub fn q_d_5(d: u64) -> Result<DiagForm> {
    let d = squarefree_param(d)?;
    DiagForm::rational(&[d, 1, 1, 1, -d])
}

/// `<1,...,1,-1>` with `n` positive entries.
pub fn f_n(n: usize) -> Result<DiagForm> {
    if n == 0 {
        return Err(Error::InvalidArgument("f_n needs n >= 1".into()));
    }
    let mut e = vec![1i64; n];
    e.push(-1);
    DiagForm::rational(&e)
}

pub fn form_24cell() -> DiagForm {
    f_n(4).expect("n >= 1")
}

/// `<1,1,1,1,-phi>` over Q(sqrt 5).
pub fn form_120cell() -> DiagForm {
    DiagForm::new(
        FieldTag::K5,
        vec![
            K5Elem::one(),
            K5Elem::one(),
            K5Elem::one(),
            K5Elem::one(),
            -K5Elem::phi(),
        ],
    )
    .expect("nonzero entries")
}

pub fn form_6dim() -> DiagForm {
    f_n(6).expect("n >= 1")
}

/// `<1,1,1,-1-2 sqrt5>`; `-1-2 sqrt5` generates a prime of norm 19.
pub fn form_swd() -> DiagForm {
    let pi = K5Elem::new(crate::exact::rat(-1), crate::exact::rat(-2));
    DiagForm::new(
        FieldTag::K5,
        vec![K5Elem::one(), K5Elem::one(), K5Elem::one(), pi],
    )
    .expect("nonzero entries")
}

fn check_prime_generator(pi: &OInt) -> Result<()> {
    if normalize_generator(pi).as_ref() != Some(pi) {
        return Err(Error::InvalidArgument(format!(
            "{pi} is not normalized (need pi < 0 < tau(pi))"
        )));
    }
    PrimeIdeal::from_generator(pi)?;
    Ok(())
}

/// `<1,1,1,pi>` for a normalized prime generator `pi`.
pub fn p_pi(pi: &OInt) -> Result<DiagForm> {
    check_prime_generator(pi)?;
    DiagForm::new(
        FieldTag::K5,
        vec![K5Elem::one(), K5Elem::one(), K5Elem::one(), pi.to_k5()],
    )
}

/// `<-pi*phi> ⊕ p_pi`; signature (4,1) at the identity and (5,0) at tau.
pub fn q_pi(pi: &OInt) -> Result<DiagForm> {
    check_prime_generator(pi)?;
    let pik = pi.to_k5();
    let first = -(&pik * &K5Elem::phi());
    let q = DiagForm::new(
        FieldTag::K5,
        vec![first, K5Elem::one(), K5Elem::one(), K5Elem::one(), pik],
    )?;
    let f = q.to_form();
    assert_eq!(
        signature_at(&f, Embedding::Identity)?,
        Signature { plus: 4, minus: 1 }
    );
    assert_eq!(
        signature_at(&f, Embedding::Tau)?,
        Signature { plus: 5, minus: 0 }
    );
    Ok(q)
}

/// Constructor lookup by name; `parameter` is an integer for the `d`/`n` families and an
/// element of Z[phi] for `p_pi`/`q_pi`.
pub fn family(name: &str, parameter: Option<&str>) -> Result<DiagForm> {
    let need = || Error::InvalidArgument(format!("family {name} needs a parameter"));
    let int_param = || -> Result<u64> {
        let s = parameter.ok_or_else(need)?;
        s.trim()
            .parse()
            .map_err(|_| Error::parse(s, "expected a positive integer"))
    };
    let pi_param = || -> Result<OInt> {
        let s = parameter.ok_or_else(need)?;
        let v: K5Elem = s.parse()?;
        OInt::from_k5(&v).ok_or_else(|| Error::parse(s, "not an algebraic integer"))
    };
    match name {
        "p_d_bianchi" => p_d_bianchi(int_param()?),
        "q_d_7" => q_d_7(int_param()?),
        "p_d_cc" => p_d_cc(int_param()?),
        "q_d_5" => q_d_5(int_param()?),
        "f_n" => f_n(int_param()? as usize),
        "form_24cell" => Ok(form_24cell()),
        "form_120cell" => Ok(form_120cell()),
        "form_6dim" => Ok(form_6dim()),
        "form_swd" => Ok(form_swd()),
        "p_pi" => p_pi(&pi_param()?),
        "q_pi" => q_pi(&pi_param()?),
        _ => Err(Error::InvalidArgument(format!("unknown family {name}"))),
    }
}
