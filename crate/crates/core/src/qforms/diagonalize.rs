use crate::error::{Error, Result};
use crate::exact::{FieldElem, K5Elem};
use crate::linalg::Matrix;
use crate::qforms::{DiagForm, Form};

/// Symmetric Gaussian elimination by congruence. Returns `(d, t)` with
/// `t^t * gram * t = diag(d)` exactly.
///
/// A zero pivot at position `i` is repaired by adding variable `j` (the smallest `j > i`
/// with `gram[i][j] != 0`) into variable `i`; if that also cancels, `j` is subtracted.
pub fn diagonalize(f: &Form) -> Result<(DiagForm, Matrix<K5Elem>)> {
    let order: Vec<usize> = (0..f.dim()).collect();
    diagonalize_in_order(f, &order)
}

/// Diagonalizes after permuting variables by `order` (a permutation of `0..n`); the
/// returned transform still applies to the original Gram matrix.
pub fn diagonalize_in_order(f: &Form, order: &[usize]) -> Result<(DiagForm, Matrix<K5Elem>)> {
    let n = f.dim();
    let mut seen = vec![false; n];
    if order.len() != n
        || order
            .iter()
            .any(|&i| i >= n || std::mem::replace(&mut seen[i], true))
    {
        return Err(Error::InvalidArgument(
            "order must be a permutation of the variables".into(),
        ));
    }
    let mut a = f.gram().permuted(order);
    let mut t = Matrix::<K5Elem>::identity(n);

    for i in 0..n {
        if a[(i, i)].is_zero() {
            let j = (i + 1..n)
                .find(|&j| !a[(i, j)].is_zero())
                .ok_or(Error::Singular)?;
            add_multiple(&mut a, &mut t, j, i, &K5Elem::one());
            if a[(i, i)].is_zero() {
                // a_jj = -2 a_ij: the difference has pivot -4 a_ij instead
                add_multiple(&mut a, &mut t, j, i, &K5Elem::from_int(-2));
            }
        }
        let pivot_inv = a[(i, i)].inv().expect("nonzero pivot");
        for k in i + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let m = (&a[(i, k)] * &pivot_inv).neg();
            add_multiple(&mut a, &mut t, i, k, &m);
        }
    }

    // undo the permutation: rows of t are indexed by permuted variables
    let mut t_orig = Matrix::<K5Elem>::zeros(n, n);
    for (i, &oi) in order.iter().enumerate() {
        for c in 0..n {
            t_orig[(oi, c)] = t[(i, c)].clone();
        }
    }
    let d = DiagForm::new(f.field(), a.diagonal_entries())?;
    debug_assert!(f
        .gram()
        .congruence(&t_orig)
        .map(|m| m == Matrix::diagonal(d.entries()))
        .unwrap_or(false));
    Ok((d, t_orig))
}

/// Variable substitution `x_dst += c * x_src`: column and row `dst` of `a` gain `c` times
/// column and row `src`; the same column operation is recorded in `t`.
fn add_multiple(
    a: &mut Matrix<K5Elem>,
    t: &mut Matrix<K5Elem>,
    src: usize,
    dst: usize,
    c: &K5Elem,
) {
    let n = a.rows();
    for r in 0..n {
        let v = &a[(r, dst)] + &(c * &a[(r, src)]);
        a[(r, dst)] = v;
    }
    for col in 0..n {
        let v = &a[(dst, col)] + &(c * &a[(src, col)]);
        a[(dst, col)] = v;
    }
    for r in 0..n {
        let v = &t[(r, dst)] + &(c * &t[(r, src)]);
        t[(r, dst)] = v;
    }
}
