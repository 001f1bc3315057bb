//! Explicit equivalence certificates and the isometries they transport.

mod search;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{K5Elem, OInt};
use crate::linalg::Matrix;
use crate::qforms::{DiagForm, FieldTag, Form};

pub use search::{find_witness, DEFAULT_BOUND};

/// `d = w^2 + x^2 + y^2 + z^2` with `w >= x >= y >= z >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FourSquares {
    pub w: u64,
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl FourSquares {
    pub fn sum(&self) -> u64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Lexicographically largest ordered four-square decomposition, by descent from the
/// largest admissible `w`.
pub fn four_squares(d: u64) -> Result<FourSquares> {
    if d < 1 {
        return Err(Error::InvalidArgument("four_squares needs d >= 1".into()));
    }
    for w in (0..=isqrt(d)).rev() {
        let r1 = d - w * w;
        for x in (0..=isqrt(r1).min(w)).rev() {
            let r2 = r1 - x * x;
            for y in (0..=isqrt(r2).min(x)).rev() {
                let r3 = r2 - y * y;
                let z = isqrt(r3);
                if z * z == r3 && z <= y {
                    return Ok(FourSquares { w, x, y, z });
                }
            }
        }
    }
    unreachable!("Lagrange: every positive integer is a sum of four squares")
}

/// Right-multiplication matrix of the quaternion `w + xi + yj + zij`; `B * B^t = d * I`.
pub fn quaternion_block(q: &FourSquares) -> [[i64; 4]; 4] {
    let (w, x, y, z) = (q.w as i64, q.x as i64, q.y as i64, q.z as i64);
    [[w, x, y, z], [-x, w, -z, y], [-y, z, w, -x], [-z, -y, x, w]]
}

/// An invertible `p` with `p^t * source * p = target`, checked on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    p: Matrix<K5Elem>,
    source: Form,
    target: Form,
}

impl Witness {
    pub fn new(p: Matrix<K5Elem>, source: Form, target: Form) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch {
                expected: source.field().to_string(),
                found: target.field().to_string(),
            });
        }
        let n = source.dim();
        if target.dim() != n || p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch(n, p.rows().max(target.dim())));
        }
        if source.field() == FieldTag::Q && p.entries().any(|x| !x.is_rational()) {
            return Err(Error::FieldMismatch {
                expected: "Q".into(),
                found: "K5".into(),
            });
        }
        if p.determinant()?.is_zero() || source.gram().congruence(&p)? != *target.gram() {
            return Err(Error::WitnessCheck);
        }
        Ok(Witness { p, source, target })
    }

    pub fn identity(f: &Form) -> Self {
        Witness {
            p: Matrix::identity(f.dim()),
            source: f.clone(),
            target: f.clone(),
        }
    }

    pub fn p(&self) -> &Matrix<K5Elem> {
        &self.p
    }

    pub fn source(&self) -> &Form {
        &self.source
    }

    pub fn target(&self) -> &Form {
        &self.target
    }

    pub fn determinant(&self) -> K5Elem {
        self.p.determinant().expect("square")
    }

    /// JSON with every exact value as a string.
    pub fn to_json(&self) -> Value {
        json!({
            "field": self.source.field().to_string(),
            "source": matrix_strings(self.source.gram()),
            "target": matrix_strings(self.target.gram()),
            "p": matrix_strings(&self.p),
            "det": self.determinant().to_string(),
        })
    }
}

pub fn matrix_strings(m: &Matrix<K5Elem>) -> Vec<Vec<String>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.to_string()).collect())
        .collect()
}

/// The witness `p = A^t` between `f = <1,1,1,1,1,1,-1>` and `<d,d,d,d,1,1,-1>`, where `A`
/// is the quaternion block of a four-square decomposition of `d` padded with `I_3`, so
/// that `A f A^t = <d,d,d,d,1,1,-1>`.
pub fn build_ad(d: u64) -> Result<Witness> {
    let q = four_squares(d)?;
    let b = quaternion_block(&q);
    let a = Matrix::from_fn(7, 7, |i, j| match (i < 4, j < 4) {
        (true, true) => K5Elem::from_int(b[i][j]),
        (false, false) if i == j => K5Elem::one(),
        _ => K5Elem::zero(),
    });
    let f = DiagForm::rational(&[1, 1, 1, 1, 1, 1, -1])?.to_form();
    let di = d as i64;
    let qd = DiagForm::rational(&[di, di, di, di, 1, 1, -1])?.to_form();
    Witness::new(a.transpose(), f, qd)
}

/// Identity of size `n` with `m` written into the diagonal block starting at `offset`.
pub fn embed_block(m: &Matrix<K5Elem>, n: usize, offset: usize) -> Result<Matrix<K5Elem>> {
    if !m.is_square() {
        return Err(Error::InvalidArgument("block must be square".into()));
    }
    let k = m.rows();
    if offset + k > n {
        return Err(Error::InvalidArgument(format!(
            "block of size {k} at offset {offset} does not fit in dimension {n}"
        )));
    }
    let mut out = Matrix::identity(n);
    for i in 0..k {
        for j in 0..k {
            out[(offset + i, offset + j)] = m[(i, j)].clone();
        }
    }
    Ok(out)
}

pub fn preserves(m: &Matrix<K5Elem>, f: &Form) -> Result<bool> {
    Ok(f.gram().congruence(m)? == *f.gram())
}

/// [`embed_block`] for an isometry `m` of `block_form`, checking that the result is an
/// isometry of `target`.
pub fn embed_isometry(
    m: &Matrix<K5Elem>,
    block_form: &Form,
    target: &Form,
    offset: usize,
) -> Result<Matrix<K5Elem>> {
    if !preserves(m, block_form)? {
        return Err(Error::NotIsometry);
    }
    let out = embed_block(m, target.dim(), offset)?;
    if !preserves(&out, target)? {
        return Err(Error::NotIsometry);
    }
    Ok(out)
}

/// Result of transporting an isometry of a witness's target back to its source.
#[derive(Debug, Clone, PartialEq)]
pub struct Conjugated {
    pub matrix: Matrix<K5Elem>,
    pub det: K5Elem,
    /// All entries lie in Z (over Q) or Z[phi] (over Q(sqrt 5)).
    pub integral: bool,
}

/// `p m p^-1` for `m` preserving the target; the result preserves the source.
pub fn conjugate_isometry(wit: &Witness, m: &Matrix<K5Elem>) -> Result<Conjugated> {
    if !preserves(m, wit.target())? {
        return Err(Error::NotIsometry);
    }
    let x = wit.p.mul(m)?.mul(&wit.p.inverse()?)?;
    if !preserves(&x, wit.source())? {
        return Err(Error::WitnessCheck);
    }
    let integral = x.entries().all(|e| OInt::from_k5(e).is_some());
    let det = x.determinant()?;
    Ok(Conjugated {
        matrix: x,
        det,
        integral,
    })
}

/// Reflection `x -> x - 2 B(x, v) / B(v, v) v` in the hyperplane orthogonal to an
/// anisotropic `v`.
pub fn reflection(f: &Form, v: &[K5Elem]) -> Result<Matrix<K5Elem>> {
    let n = f.dim();
    if v.len() != n {
        return Err(Error::DimensionMismatch(n, v.len()));
    }
    let qv = f.evaluate(v);
    if qv.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let g = f.gram();
    let gv: Vec<K5Elem> = (0..n)
        .map(|j| (0..n).fold(K5Elem::zero(), |acc, k| acc + &g[(j, k)] * &v[k]))
        .collect();
    let c = K5Elem::from_int(2).div_checked(&qv).expect("nonzero");
    Ok(Matrix::from_fn(n, n, |i, j| {
        let delta = if i == j {
            K5Elem::one()
        } else {
            K5Elem::zero()
        };
        delta - &c * &v[i] * &gv[j]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_four_squares(d: u64) -> FourSquares {
        let mut best = None;
        let r = isqrt(d);
        for w in 0..=r {
            for x in 0..=w {
                for y in 0..=x {
                    for z in 0..=y {
                        if w * w + x * x + y * y + z * z == d {
                            let t = (w, x, y, z);
                            if best.is_none_or(|b| t > b) {
                                best = Some(t);
                            }
                        }
                    }
                }
            }
        }
        let (w, x, y, z) = best.unwrap();
        FourSquares { w, x, y, z }
    }

    #[test]
    fn four_squares_examples() {
        assert_eq!(
            four_squares(1).unwrap(),
            FourSquares {
                w: 1,
                x: 0,
                y: 0,
                z: 0
            }
        );
        assert_eq!(
            four_squares(7).unwrap(),
            FourSquares {
                w: 2,
                x: 1,
                y: 1,
                z: 1
            }
        );
        assert_eq!(
            four_squares(3).unwrap(),
            FourSquares {
                w: 1,
                x: 1,
                y: 1,
                z: 0
            }
        );
        assert!(four_squares(0).is_err());
        for d in 1..400 {
            assert_eq!(four_squares(d).unwrap(), brute_four_squares(d), "d = {d}");
        }
    }

    #[test]
    fn quaternion_block_is_scaled_orthogonal() {
        for d in 1..60 {
            let b = quaternion_block(&four_squares(d).unwrap());
            for i in 0..4 {
                for j in 0..4 {
                    let dot: i64 = (0..4).map(|k| b[i][k] * b[j][k]).sum();
                    assert_eq!(dot, if i == j { d as i64 } else { 0 });
                }
            }
        }
        let id = quaternion_block(&FourSquares {
            w: 1,
            x: 0,
            y: 0,
            z: 0,
        });
        assert_eq!(id, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
    }

    #[test]
    fn ad_witnesses() {
        let w1 = build_ad(1).unwrap();
        assert_eq!(*w1.p(), Matrix::identity(7));
        let w7 = build_ad(7).unwrap();
        assert_eq!(w7.determinant(), K5Elem::from_int(49));
        assert_eq!(w7.to_json()["p"][0][0], "2");
    }

    #[test]
    fn witness_constructor_rejects_bad_certificates() {
        let f = DiagForm::rational(&[1, 1]).unwrap().to_form();
        let g = DiagForm::rational(&[1, 2]).unwrap().to_form();
        assert_eq!(
            Witness::new(Matrix::identity(2), f.clone(), g),
            Err(Error::WitnessCheck)
        );
        let two = DiagForm::rational(&[2, 2]).unwrap().to_form();
        let p = Matrix::from_rows(vec![
            vec![K5Elem::from_int(1), K5Elem::from_int(1)],
            vec![K5Elem::from_int(-1), K5Elem::from_int(1)],
        ])
        .unwrap();
        assert!(Witness::new(p, f, two).is_ok());
    }

    #[test]
    fn embedding_blocks() {
        assert_eq!(
            embed_block(&Matrix::identity(4), 7, 3).unwrap(),
            Matrix::identity(7)
        );
        assert!(embed_block(&Matrix::identity(4), 7, 4).is_err());
        let j = DiagForm::rational(&[1, 1, 1, -1]).unwrap().to_form();
        let v: Vec<K5Elem> = [1, 1, 1, 0].iter().map(|&x| K5Elem::from_int(x)).collect();
        let m = reflection(&j, &v).unwrap();
        for a in [2i64, 7, -3] {
            let target = DiagForm::rational(&[a, 1, 1, 1, -1]).unwrap().to_form();
            let e = embed_isometry(&m, &j, &target, 1).unwrap();
            assert!(preserves(&e, &target).unwrap());
        }
        let ddd = DiagForm::rational(&[7, 7, 7, 7, 1, 1, -1])
            .unwrap()
            .to_form();
        let p7 = DiagForm::rational(&[7, 1, 1, -1]).unwrap().to_form();
        let w: Vec<K5Elem> = [0, 1, 1, 1].iter().map(|&x| K5Elem::from_int(x)).collect();
        let r = reflection(&p7, &w).unwrap();
        assert!(embed_isometry(&r, &p7, &ddd, 3).is_ok());
        let not_iso = Matrix::diagonal(&[
            K5Elem::from_int(2),
            K5Elem::one(),
            K5Elem::one(),
            K5Elem::one(),
        ]);
        assert_eq!(
            embed_isometry(&not_iso, &p7, &ddd, 3),
            Err(Error::NotIsometry)
        );
    }

    #[test]
    fn reflections_over_golden_field() {
        let q = DiagForm::parse(FieldTag::K5, "1,1,1,1,-phi")
            .unwrap()
            .to_form();
        let v: Vec<K5Elem> = ["1", "0", "0", "0", "1"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let s = reflection(&q, &v).unwrap();
        assert!(preserves(&s, &q).unwrap());
        assert_eq!(s.mul(&s).unwrap(), Matrix::identity(5));
        assert_eq!(s.determinant().unwrap(), K5Elem::from_int(-1));
    }

    #[test]
    fn conjugation_through_identity_is_trivial() {
        let f = DiagForm::rational(&[1, 1, -1]).unwrap().to_form();
        let m = reflection(&f, &[K5Elem::from_int(1), K5Elem::zero(), K5Elem::zero()]).unwrap();
        let c = conjugate_isometry(&Witness::identity(&f), &m).unwrap();
        assert_eq!(c.matrix, m);
        assert!(c.integral);
        assert_eq!(c.det, K5Elem::from_int(-1));
    }
}
