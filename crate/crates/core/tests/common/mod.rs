use formhasse::exact::K5Elem;
use formhasse::linalg::Matrix;
use formhasse::qforms::DiagForm;
use formhasse::witness::{preserves, reflection};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Integral isometries of `<7,7,7,7,1,1,-1>`: three reflections, sign changes, and swaps
/// inside the blocks of equal coefficients.
pub fn q7_generators() -> Vec<Matrix<K5Elem>> {
    let q7 = DiagForm::rational(&[7, 7, 7, 7, 1, 1, -1])
        .unwrap()
        .to_form();
    let mut gens = Vec::new();
    for v in [
        [0, 0, 0, 0, 1, 1, 1],
        [1, 0, 0, 0, 0, 1, 3],
        [1, 1, 0, 0, 0, 0, 4],
    ] {
        let v: Vec<K5Elem> = v.iter().map(|&x| K5Elem::from_int(x)).collect();
        gens.push(reflection(&q7, &v).unwrap());
    }
    for i in 0..7 {
        gens.push(Matrix::from_fn(7, 7, |r, c| {
            if r != c {
                K5Elem::zero()
            } else if r == i {
                K5Elem::from_int(-1)
            } else {
                K5Elem::one()
            }
        }));
    }
    for (a, b) in [(0, 1), (1, 2), (2, 3), (4, 5)] {
        let mut order: Vec<usize> = (0..7).collect();
        order.swap(a, b);
        gens.push(Matrix::from_fn(7, 7, |r, c| {
            if order[r] == c {
                K5Elem::one()
            } else {
                K5Elem::zero()
            }
        }));
    }
    for g in &gens {
        assert!(preserves(g, &q7).unwrap());
    }
    gens
}

pub fn random_word(rng: &mut ChaCha8Rng, gens: &[Matrix<K5Elem>]) -> Matrix<K5Elem> {
    let len = rng.gen_range(1..=6);
    let mut m = Matrix::identity(7);
    for _ in 0..len {
        m = m.mul(gens.choose(rng).unwrap()).unwrap();
    }
    m
}
