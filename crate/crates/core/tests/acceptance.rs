//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use formhasse::arithgroups::{
    classify_kleinian, f_n, form_120cell, in_prime_set_p, prime_set_p_entries, q_d_5, q_d_7, q_pi,
};
use formhasse::exact::{normalize_generator, rat, Embedding, K5Elem, OInt};
use formhasse::linalg::Matrix;
use formhasse::localglobal::{
    equivalent_k5, equivalent_q, hasse_k5, hasse_q, hilbert_k5, hilbert_q, relevant_places_k5,
    relevant_places_q, residue_square, PlaceQ,
};
use formhasse::qforms::{
    det_class, diagonalize_in_order, same_square_class, signature_at, three_squares_representable,
    FieldTag, Form,
};
use formhasse::witness::{build_ad, conjugate_isometry, find_witness};
use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{q7_generators, random_word};

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: formhasse::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || {
        format!("took {:.2} s, limit {} s", t.as_secs_f64(), limit.as_secs())
    })
}

fn squarefree(d: u64) -> bool {
    (2..)
        .take_while(|k| k * k <= d)
        .all(|k| !d.is_multiple_of(k * k))
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|k| k * k <= n)
            .all(|k| !n.is_multiple_of(k))
}

fn int_matrix(m: &Matrix<K5Elem>) -> bool {
    m.entries()
        .all(|e| e.as_rational().is_some_and(|r| r.is_integer()))
}

fn build_ad_witnesses() -> Outcome {
    let start = Instant::now();
    let f = lib(f_n(6))?.to_form();
    let mut n = 0;
    for d in (1..=300u64).filter(|&d| squarefree(d)) {
        let a = lib(build_ad(d))?.p().transpose();
        ensure(int_matrix(&a), || format!("d={d}: A is not integral"))?;
        let afat = lib(lib(a.mul(f.gram()))?.mul(&a.transpose()))?;
        ensure(afat == *lib(q_d_7(d))?.to_form().gram(), || {
            format!("d={d}: A F A^t != Q_d")
        })?;
        let det = lib(a.determinant())?;
        ensure(det == K5Elem::from_int((d * d) as i64), || {
            format!("d={d}: det A = {det}")
        })?;
        n += 1;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!(
        "{n} values of d, {:.2} s",
        start.elapsed().as_secs_f64()
    ))
}

fn seven_dim_invariants() -> Outcome {
    let start = Instant::now();
    let f = lib(f_n(6))?.to_form();
    let minus_one = K5Elem::from_int(-1);
    let mut n = 0;
    for d in (1..=300u64).filter(|&d| squarefree(d)) {
        let q = lib(q_d_7(d))?;
        ensure(lib(equivalent_q(&q.to_form(), &f))?, || {
            format!("d={d}: not equivalent")
        })?;
        let dc = lib(det_class(&q.to_form()))?;
        ensure(
            lib(same_square_class(&dc, &minus_one, FieldTag::Q))?,
            || format!("d={d}: det class {dc}"),
        )?;
        let h = lib(hasse_q(&q))?;
        ensure(h.is_empty(), || format!("d={d}: hasse set {h}"))?;
        n += 1;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!(
        "{n} values of d, {:.2} s",
        start.elapsed().as_secs_f64()
    ))
}

fn five_dim_family() -> Outcome {
    let start = Instant::now();
    let f = lib(f_n(4))?;
    let (mut equiv, mut witnesses) = (0, 0);
    for d in (7..=1000u64).step_by(8).filter(|&d| is_prime(d)) {
        let q = lib(q_d_5(d))?;
        ensure(lib(equivalent_q(&q.to_form(), &f.to_form()))?, || {
            format!("d={d}: not equivalent")
        })?;
        equiv += 1;
        if d <= 100 {
            let w = lib(find_witness(&f, &q, 12))?
                .ok_or_else(|| format!("d={d}: no witness at bound 12"))?;
            let p = w.p();
            let ptfp = lib(lib(p.transpose().mul(f.to_form().gram()))?.mul(p))?;
            ensure(ptfp == *q.to_form().gram(), || {
                format!("d={d}: witness does not verify")
            })?;
            witnesses += 1;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{equiv} primes equivalent, {witnesses} witnesses verified, {:.2} s",
        start.elapsed().as_secs_f64()
    ))
}

fn three_squares() -> Outcome {
    let start = Instant::now();
    const N: u64 = 10_000;
    let mut sums = vec![false; N as usize + 1];
    for x in 0..=100u64 {
        for y in x..=100 {
            for z in y..=100 {
                let s = x * x + y * y + z * z;
                if s <= N {
                    sums[s as usize] = true;
                }
            }
        }
    }
    for d in 1..=N {
        let got = lib(three_squares_representable(d))?;
        ensure(got == sums[d as usize], || format!("d={d}: got {got}"))?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "{N} values, {:.2} s",
        start.elapsed().as_secs_f64()
    ))
}

fn cocompactness() -> Outcome {
    let mut cocompact = 0;
    for d in (1..=2000u64).filter(|&d| squarefree(d)) {
        let mut m = d;
        while m % 4 == 0 {
            m /= 4;
        }
        let expected = m % 8 == 7;
        let c = lib(classify_kleinian(-(d as i64), 1, 1))?;
        ensure(c.cocompact == expected, || {
            format!("d={d}: cocompact={}", c.cocompact)
        })?;
        cocompact += usize::from(expected);
    }
    Ok(format!("{cocompact} cocompact among squarefree d <= 2000"))
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    let x = rng.gen_range(1..=bound);
    if rng.gen() {
        -x
    } else {
        x
    }
}

fn reciprocity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut places = 0;
    for _ in 0..500 {
        let (a, b) = (
            rat(nonzero(&mut rng, 10_000)),
            rat(nonzero(&mut rng, 10_000)),
        );
        let vs = lib(relevant_places_q(&[a.clone(), b.clone()]))?;
        places += vs.len();
        let mut prod = 1;
        for v in vs {
            prod *= lib(hilbert_q(&a, &b, v))?;
        }
        ensure(prod == 1, || format!("({a}, {b}): product {prod}"))?;
    }
    Ok(format!("500 pairs, {places} places"))
}

/// `(a, b)_p` for odd `p` from a primitive solution of `z^2 = a x^2 + b y^2` mod `p^3`,
/// after removing square factors `p^2` from `a` and `b`.
fn hilbert_by_search(a: i64, b: i64, p: i64) -> i8 {
    let strip = |mut x: i64| {
        while x % (p * p) == 0 {
            x /= p * p;
        }
        x
    };
    let (a, b) = (strip(a), strip(b));
    let m = p * p * p;
    let squares: HashSet<i64> = (0..m).map(|z| z * z % m).collect();
    let is_sq = |v: i64| squares.contains(&v.rem_euclid(m));
    // x a unit (scaled to 1), or x divisible by p and y a unit (scaled to 1)
    let found = (0..m).any(|y| is_sq(a + b * y * y))
        || (0..m).step_by(p as usize).any(|x| is_sq(a * x * x + b));
    if found {
        1
    } else {
        -1
    }
}

fn odd_place_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut minus = 0;
    for _ in 0..100 {
        let p = *[3i64, 5, 7, 11, 13].choose(&mut rng).unwrap();
        let mut draw = || nonzero(&mut rng, 2000) * p.pow(rng.gen_range(0..=2));
        let (a, b) = (draw(), draw());
        let got = lib(hilbert_q(&rat(a), &rat(b), PlaceQ::Prime(p as u64)))?;
        let want = hilbert_by_search(a, b, p);
        ensure(got == want, || {
            format!("({a}, {b})_{p}: got {got}, search {want}")
        })?;
        minus += usize::from(got == -1);
    }
    Ok(format!("100 cases, {minus} with symbol -1"))
}

fn random_gram(rng: &mut ChaCha8Rng, field: FieldTag, n: usize) -> Form {
    loop {
        let mut entry = || match field {
            FieldTag::Q => K5Elem::from_int(rng.gen_range(-3..=3)),
            FieldTag::K5 => K5Elem::new(rat(rng.gen_range(-3..=3)), rat(rng.gen_range(-1..=1))),
        };
        let mut g = Matrix::<K5Elem>::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let e = entry();
                g[(i, j)] = e.clone();
                g[(j, i)] = e;
            }
        }
        if !g.determinant().expect("square").is_zero() {
            return Form::new(field, g).expect("symmetric");
        }
    }
}

fn diagonalization_orders() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for field in [FieldTag::Q, FieldTag::K5] {
        let embeddings: &[Embedding] = match field {
            FieldTag::Q => &[Embedding::Identity],
            FieldTag::K5 => &[Embedding::Identity, Embedding::Tau],
        };
        for case in 0..200 {
            let n = rng.gen_range(1..=6);
            let f = random_gram(&mut rng, field, n);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let identity: Vec<usize> = (0..n).collect();
            let (d1, t1) = lib(diagonalize_in_order(&f, &identity))?;
            let (d2, t2) = lib(diagonalize_in_order(&f, &order))?;
            for (d, t) in [(&d1, &t1), (&d2, &t2)] {
                let ttgt = lib(lib(t.transpose().mul(f.gram()))?.mul(t))?;
                ensure(ttgt == *d.to_form().gram(), || {
                    format!("{field} case {case}: t^t G t is not the diagonal")
                })?;
            }
            let (c1, c2) = (
                lib(det_class(&d1.to_form()))?,
                lib(det_class(&d2.to_form()))?,
            );
            ensure(lib(same_square_class(&c1, &c2, field))?, || {
                format!("{field} case {case}: det classes {c1} vs {c2}")
            })?;
            for &e in embeddings {
                let (s1, s2) = (
                    lib(signature_at(&d1.to_form(), e))?,
                    lib(signature_at(&d2.to_form(), e))?,
                );
                ensure(s1 == s2, || {
                    format!("{field} case {case}: signatures differ at {e:?}")
                })?;
            }
            let same = match field {
                FieldTag::Q => lib(hasse_q(&d1))? == lib(hasse_q(&d2))?,
                FieldTag::K5 => lib(hasse_k5(&d1))? == lib(hasse_k5(&d2))?,
            };
            ensure(same, || {
                format!("{field} case {case}: ramification sets differ")
            })?;
        }
    }
    Ok("200 forms over each field".into())
}

fn generator_normalization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..500 {
        let v = loop {
            let v = OInt::new(
                rng.gen_range(-10_000i64..=10_000),
                rng.gen_range(-10_000i64..=10_000),
            );
            if !v.is_zero() {
                break v;
            }
        };
        let t = normalize_generator(&v).ok_or("no output for a nonzero input")?;
        ensure(
            t.sign_at(Embedding::Identity) < 0 && t.sign_at(Embedding::Tau) > 0,
            || format!("{v} -> {t}: signs"),
        )?;
        let u = t
            .div_exact(&v)
            .ok_or_else(|| format!("{v} -> {t}: not a multiple"))?;
        ensure(u.norm().abs().is_one(), || {
            format!("{v} -> {t}: quotient {u} is not a unit")
        })?;
    }
    Ok("500 elements".into())
}

fn golden_prime_suite() -> Outcome {
    let start = Instant::now();
    let entries: Vec<_> = lib(prime_set_p_entries(200))?
        .into_iter()
        .take(10)
        .collect();
    ensure(entries.len() == 10, || {
        format!("only {} members below 200", entries.len())
    })?;
    let qs: Vec<u64> = entries.iter().map(|e| e.q).collect();
    ensure(qs.contains(&11) && qs.contains(&19), || {
        format!("first members {qs:?}")
    })?;
    let phi = K5Elem::phi();
    let reference = form_120cell().to_form();
    for e in &entries {
        let (q, r) = (e.q as u128, e.root as u128);
        ensure((r * r) % q == (r + 1) % q, || {
            format!("q={q}: {r} is not a root of x^2 - x - 1")
        })?;
        let mut euler = 1u128;
        for _ in 0..(q - 1) / 2 {
            euler = euler * r % q;
        }
        ensure(euler == 1, || {
            format!("q={q}: {r} is not a quadratic residue")
        })?;
        ensure(lib(residue_square(&phi, &e.prime()))?, || {
            format!("q={q}: phi is not a square mod pi")
        })?;

        let pi = e.pi.to_k5();
        for v in lib(relevant_places_k5(&[phi.clone(), pi.clone()]))? {
            ensure(lib(hilbert_k5(&phi, &pi, &v))? == 1, || {
                format!("q={q}: (phi, pi) = -1 at {v}")
            })?;
        }
        let qpi = lib(q_pi(&e.pi))?;
        let h = lib(hasse_k5(&qpi))?;
        ensure(h.is_empty(), || format!("q={q}: hasse set {h}"))?;
        ensure(lib(equivalent_k5(&qpi.to_form(), &reference))?, || {
            format!("q={q}: q_pi not equivalent")
        })?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "q in {qs:?}, {:.2} s",
        start.elapsed().as_secs_f64()
    ))
}

fn prime_set_membership() -> Outcome {
    let has_root = |q: u64| {
        (0..q).any(|x| (x * x % q * x % q * x % q + 2 * q - x * x % q - 1).is_multiple_of(q))
    };
    for q in (3..500u64).filter(|&q| is_prime(q) && q != 5) {
        let got = lib(in_prime_set_p(q))?;
        ensure(got == has_root(q), || format!("q={q}: membership {got}"))?;
    }
    let members = (2..1000u64)
        .filter(|&q| is_prime(q))
        .map(in_prime_set_p)
        .filter(|r| matches!(r, Ok(true)))
        .count();
    ensure(members >= 20, || {
        format!("only {members} members below 1000")
    })?;
    Ok(format!("{members} members below 1000"))
}

fn conjugation() -> Outcome {
    let wit = lib(build_ad(7))?;
    let gens = q7_generators();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let f = wit.source().gram();
    for k in 0..20 {
        let m = random_word(&mut rng, &gens);
        ensure(int_matrix(&m), || format!("word {k} is not integral"))?;
        let c = lib(conjugate_isometry(&wit, &m))?;
        let ctfc = lib(lib(c.matrix.transpose().mul(f))?.mul(&c.matrix))?;
        ensure(ctfc == *f, || {
            format!("word {k}: conjugate does not preserve F")
        })?;
        ensure(
            c.det.as_rational().is_some_and(|d| d.abs() == rat(1)),
            || format!("word {k}: det {}", c.det),
        )?;
    }
    Ok("20 isometries".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 12] = [
        (
            "quaternion witness A_d for squarefree d <= 300",
            build_ad_witnesses,
        ),
        (
            "<d,d,d,d,1,1,-1> ~ <1^6,-1>, det class -1, trivial Hasse",
            seven_dim_invariants,
        ),
        (
            "<d,1,1,1,-d> ~ <1^4,-1> for primes d = 7 mod 8, witnesses for d <= 100",
            five_dim_family,
        ),
        (
            "three-squares criterion vs exhaustive search, d <= 10^4",
            three_squares,
        ),
        (
            "cocompactness of <1,1,1,-d> for squarefree d <= 2000",
            cocompactness,
        ),
        ("Hilbert reciprocity over Q, 500 random pairs", reciprocity),
        (
            "odd-place Hilbert symbol vs mod p^3 solution search",
            odd_place_oracle,
        ),
        (
            "invariants independent of diagonalization order",
            diagonalization_orders,
        ),
        (
            "generator normalization signs and associates",
            generator_normalization,
        ),
        (
            "first ten golden primes: phi square, (phi, pi) trivial, q_pi ~ <1,1,1,1,-phi>",
            golden_prime_suite,
        ),
        (
            "golden prime set vs roots of x^4 - x^2 - 1",
            prime_set_membership,
        ),
        ("conjugated Q_7 isometries preserve F", conjugation),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:2} PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
