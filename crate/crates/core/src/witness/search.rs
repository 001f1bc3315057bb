//! Represent-and-split search for rational witnesses between diagonal forms over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, K5Elem, Rat};
use crate::linalg::Matrix;
use crate::localglobal::equivalent_q;
use crate::qforms::{DiagForm, FieldTag};
use crate::witness::Witness;

pub const DEFAULT_BOUND: u64 = 12;

/// Denominators searched first, with numerators up to `bound * den`. Larger
/// denominators up to `bound` follow with numerators up to `bound`.
const DENOMINATORS: [i64; 3] = [1, 2, 3];
/// Representing vectors tried per level before the level is declared exhausted. Witt
/// cancellation makes the first one succeed whenever the bound is large enough.
const CANDIDATES_PER_LEVEL: usize = 8;

/// A `p` with `p^t F p = diag(Q)`, or `None` when the forms are inequivalent or no small
/// vector represents some required value. Small means free coordinates of absolute value
/// at most `bound` on the grids with denominators 1, 2, 3, then numerator and denominator
/// at most `bound`.
///
/// Both forms are first rescaled to squarefree integer entries. Column `k` of `p`
/// represents `Q[k]` on the orthogonal complement of the earlier columns; only the last
/// free coordinate of each vector is solved for, exactly.
pub fn find_witness(f: &DiagForm, q: &DiagForm, bound: u64) -> Result<Option<Witness>> {
    for d in [f, q] {
        if d.field() != FieldTag::Q {
            return Err(Error::FieldMismatch {
                expected: "Q".into(),
                found: d.field().to_string(),
            });
        }
    }
    if f.dim() != q.dim() {
        return Err(Error::DimensionMismatch(f.dim(), q.dim()));
    }
    if f == q {
        return Ok(Some(Witness::identity(&f.to_form())));
    }
    if !equivalent_q(&f.to_form(), &q.to_form())? {
        return Ok(None);
    }
    let (fe, fs) = squarefree_scaling(f)?;
    let (qe, qs) = squarefree_scaling(q)?;
    let Some(p) = split(&fe, &qe, bound as i64)? else {
        return Ok(None);
    };
    // f = D f' D and q = E q' E, so D^-1 p' E carries f to q
    let p = Matrix::from_fn(p.rows(), p.cols(), |i, j| {
        K5Elem::from_rat(&p[(i, j)] / &fs[i] * &qs[j])
    });
    Witness::new(p, f.to_form(), q.to_form()).map(Some)
}

/// Squarefree integers `e_i` and rationals `c_i` with `d_i = c_i^2 e_i`.
fn squarefree_scaling(d: &DiagForm) -> Result<(Vec<Rat>, Vec<Rat>)> {
    let mut e = Vec::with_capacity(d.dim());
    let mut c = Vec::with_capacity(d.dim());
    for x in d.rational_entries().expect("Q-form") {
        let s = Rat::from_integer(rat::squarefree_class(&x)?);
        c.push(rat::rational_sqrt(&(&x / &s)).expect("same square class"));
        e.push(s);
    }
    Ok((e, c))
}

/// `p` over Q with `p^t diag(f) p = diag(q)`.
fn split(f: &[Rat], q: &[Rat], bound: i64) -> Result<Option<Matrix<Rat>>> {
    let n = f.len();
    let mut cols = Vec::with_capacity(n);
    if !extend(f, q, bound, &mut cols)? {
        return Ok(None);
    }
    Ok(Some(Matrix::from_fn(n, n, |i, c| cols[c][i].clone())))
}

/// Appends columns `v` with `f(v) = q[k]`, orthogonal to the earlier ones, backtracking
/// over a few candidates per column.
fn extend(f: &[Rat], q: &[Rat], bound: i64, cols: &mut Vec<Vec<Rat>>) -> Result<bool> {
    let k = cols.len();
    if k == f.len() {
        return Ok(true);
    }
    let mut tried = 0;
    let mut done = false;
    let snapshot = cols.clone();
    for_each_representation(f, &snapshot, &q[k], bound, &mut |v| {
        tried += 1;
        cols.push(v.to_vec());
        if extend(f, q, bound, cols)? {
            done = true;
            return Ok(true);
        }
        cols.pop();
        Ok(tried >= CANDIDATES_PER_LEVEL)
    })?;
    Ok(done)
}

/// Basis of the `f`-orthogonal complement of `cols`, one vector per free ambient
/// coordinate; each basis vector is 1 at its own free coordinate and 0 at the others.
fn complement(f: &[Rat], cols: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = f.len();
    let mut rows: Vec<Vec<Rat>> = cols
        .iter()
        .map(|v| (0..n).map(|i| &f[i] * &v[i]).collect())
        .collect();
    let mut pivots = Vec::new();
    for c in 0..n {
        let r = pivots.len();
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        let pivot: Vec<Rat> = rows[r].iter().map(|x| x * &inv).collect();
        for row in rows.iter_mut() {
            if !row[c].is_zero() {
                let m = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &m * y;
                }
            }
        }
        rows[r] = pivot;
        pivots.push(c);
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|c| {
            let mut b = vec![Rat::zero(); n];
            b[c] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                b[p] = -rows[r][c].clone();
            }
            b
        })
        .collect()
}

fn to_i128(x: &Rat) -> Result<i128> {
    x.to_integer().to_i128().ok_or_else(|| {
        Error::InvalidArgument("form coefficients too large for the witness search".into())
    })
}

/// Calls `visit` on vectors `v` orthogonal to `cols` with `f(v) = target`. The free
/// coordinates of the complement run through denominators, then sup-norm shells, then
/// lexicographic order; the last one is solved exactly from a quadratic equation. Stops
/// when `visit` returns true.
fn for_each_representation(
    f: &[Rat],
    cols: &[Vec<Rat>],
    target: &Rat,
    bound: i64,
    visit: &mut dyn FnMut(&[Rat]) -> Result<bool>,
) -> Result<()> {
    let basis = complement(f, cols);
    let s = basis.len();
    let m = s - 1;
    let gram: Vec<Vec<Rat>> = basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| (0..f.len()).map(|i| &f[i] * &a[i] * &b[i]).sum())
                .collect()
        })
        .collect();
    // scale to integers: G' = l G, t' = l target
    let l = Rat::from_integer(rat::lcm_denominators(gram.iter().flatten().chain([target])));
    let g = gram
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| to_i128(&(x * &l)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let t = to_i128(&(target * &l))?;
    let mut emit = |a: &[i64], den: i64| -> Result<bool> {
        for x in solve_last(&g, t, a, den).into_iter().flatten() {
            let mut v = vec![Rat::zero(); f.len()];
            for (c, b) in basis.iter().enumerate() {
                let coef = if c < m {
                    rat::rat_frac(a[c], den)
                } else {
                    x.clone()
                };
                if coef.is_zero() {
                    continue;
                }
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += &coef * bi;
                }
            }
            if visit(&v)? {
                return Ok(true);
            }
        }
        Ok(false)
    };

    let grids = DENOMINATORS
        .iter()
        .map(|&den| (den, bound * den))
        .chain((4..=bound).map(|den| (den, bound)));
    for (den, radius) in grids {
        let radius = if m == 0 { 0 } else { radius };
        for r in 0..=radius {
            let mut a = vec![-r; m];
            if r == 0 {
                if den == 1 && emit(&a, den)? {
                    return Ok(());
                }
                continue;
            }
            loop {
                // a/den with a common factor of a and den was visited on a coarser grid
                let fresh = den == 1 || a.iter().fold(den, |g, &ai| g.gcd(&ai)) == 1;
                if fresh && a.iter().any(|x| x.abs() == r) && emit(&a, den)? {
                    return Ok(());
                }
                if !advance(&mut a, r) {
                    break;
                }
            }
        }
    }
    Ok(())
}

fn advance(a: &mut [i64], r: i64) -> bool {
    for i in (0..a.len()).rev() {
        if a[i] < r {
            a[i] += 1;
            return true;
        }
        a[i] = -r;
    }
    false
}

/// With the first free coordinates `a_i / den`, the rational values `x` of the last one
/// with `g(a/den, x) = t`, larger root first. Writing `X = den x` this is
/// `A X^2 + 2 B X + C = 0`.
fn solve_last(g: &[Vec<i128>], t: i128, a: &[i64], den: i64) -> Option<Vec<Rat>> {
    let l = a.len();
    let big_a = g[l][l];
    let mut big_b: i128 = 0;
    let mut c: i128 = 0;
    for (i, &ai) in a.iter().enumerate() {
        let ai = ai as i128;
        big_b = big_b.checked_add(ai.checked_mul(g[i][l])?)?;
        for (j, &aj) in a.iter().enumerate() {
            c = c.checked_add(ai.checked_mul(aj as i128)?.checked_mul(g[i][j])?)?;
        }
    }
    let den = den as i128;
    c = c.checked_sub(t.checked_mul(den * den)?)?;
    let frac = |n: i128, d: i128| Rat::new(BigInt::from(n), BigInt::from(d) * BigInt::from(den));
    if big_a == 0 {
        return (big_b != 0).then(|| vec![frac(-c, 2 * big_b)]);
    }
    let disc = big_b
        .checked_mul(big_b)?
        .checked_sub(big_a.checked_mul(c)?)?;
    if disc < 0 {
        return None;
    }
    let d = isqrt_exact(disc)?;
    let mut roots = vec![frac(-big_b + d, big_a), frac(-big_b - d, big_a)];
    roots.sort_by(|x, y| y.cmp(x));
    roots.dedup();
    Some(roots)
}

fn isqrt_exact(n: i128) -> Option<i128> {
    let mut r = (n as f64).sqrt() as i128;
    while r > 0 && r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    (r * r == n).then_some(r)
}
