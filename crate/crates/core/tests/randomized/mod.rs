//! Seeded generators for randomized monads and ideals.
#![allow(dead_code, clippy::needless_range_loop)]

use instanton::groebner::Ideal;
use instanton::linalg::PolyMatrix;
use instanton::monad::MonadDatum;
use instanton::{Monomial, Polynomial, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type P = Polynomial<Rational>;

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn linear_form(rng: &mut ChaCha8Rng, range: i64) -> P {
    P::from_terms((0..4).map(|i| (Monomial::var(i), q(rng.gen_range(-range..=range)))))
}

/// Integer matrix with determinant ±1 and its inverse, as products of
/// elementary row operations.
pub fn unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut inv = u.clone();
    for _ in 0..steps {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let c = rng.gen_range(-2..=2);
        // row_i += c row_j on u; col_j -= c col_i on the inverse
        for k in 0..n {
            u[i][k] += c * u[j][k];
        }
        for row in inv.iter_mut() {
            row[j] -= c * row[i];
        }
    }
    (u, inv)
}

fn const_times(m: &[Vec<i64>], v: &[P]) -> Vec<P> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(P::zero(), |acc, (c, p)| &acc + &p.scale(&q(*c))))
        .collect()
}

/// A verified monad with a = c = 1: β = β0·U⁻¹, α = U·α0 where β0 = (x1..x4, 0..)
/// and α0 starts with S·(x1..x4)ᵀ for a nonzero skew S.
pub fn random_monad(rng: &mut ChaCha8Rng, b: usize) -> MonadDatum<Rational> {
    assert!(b >= 4);
    let vars: Vec<P> = (0..4).map(P::var).collect();
    let skew = loop {
        let mut s = vec![vec![0i64; 4]; 4];
        for i in 0..4 {
            for j in i + 1..4 {
                let v = rng.gen_range(-3..=3);
                s[i][j] = v;
                s[j][i] = -v;
            }
        }
        if s.iter().flatten().any(|&v| v != 0) {
            break s;
        }
    };
    let mut alpha0 = const_times(&skew, &vars);
    for _ in 4..b {
        alpha0.push(linear_form(rng, 3));
    }
    let mut beta0 = vars.clone();
    beta0.resize(b, P::zero());
    let (u, uinv) = unimodular(rng, b, 3 * b);
    let alpha = const_times(&u, &alpha0);
    // β0·U⁻¹ = (U⁻ᵀ β0ᵀ)ᵀ
    let uinv_t: Vec<Vec<i64>> = (0..b).map(|j| (0..b).map(|i| uinv[i][j]).collect()).collect();
    let beta = const_times(&uinv_t, &beta0);
    MonadDatum::new(
        1,
        b,
        1,
        PolyMatrix::from_entries(b, 1, alpha).unwrap(),
        PolyMatrix::from_entries(1, b, beta).unwrap(),
        (),
    )
    .unwrap()
}

/// A homogeneous form of degree `deg` with a few random terms.
pub fn random_form(rng: &mut ChaCha8Rng, deg: i64, terms: usize) -> P {
    let basis = Monomial::of_degree(deg);
    let mut p = P::zero();
    for _ in 0..terms {
        let m = basis[rng.gen_range(0..basis.len())];
        p.add_term(m, q(rng.gen_range(-4..=4)));
    }
    p
}

pub fn random_ideal(rng: &mut ChaCha8Rng) -> Ideal<Rational> {
    let count = rng.gen_range(2..=4);
    let gens = (0..count)
        .map(|_| {
            let deg = rng.gen_range(1..=3);
            let terms = rng.gen_range(1..=3);
            random_form(rng, deg, terms)
        })
        .collect();
    Ideal::new(gens).unwrap()
}
