#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use netforge::cyclotomic::IntPoly;

/// Seed for randomized tests: `NETFORGE_SEED` if set, else a fixed default.
pub fn seed() -> u64 {
    std::env::var("NETFORGE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed_2024)
}

/// Proptest configuration with `cases` cases driven by [`seed`].
pub fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(seed()),
        failure_persistence: None,
        ..Default::default()
    }
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            let factor = &m[r][c] / &piv;
            for k in c..n {
                let t = &factor * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    d
}

/// `Res(f, g) = ∏ g(θ)` over the roots of monic `f`, computed as
/// `det g(C_f)` for the companion matrix `C_f`, over the rationals.
pub fn root_product_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let n = f.degree().expect("nonzero f");
    assert!(f.leading() == Some(&BigInt::one()), "f must be monic");
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let mut comp = vec![vec![BigRational::zero(); n]; n];
    for i in 1..n {
        comp[i][i - 1] = BigRational::one();
    }
    for i in 0..n {
        comp[i][n - 1] = -q(&f.coeffs()[i]);
    }
    let identity: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    let mut acc = vec![vec![BigRational::zero(); n]; n];
    for c in g.coeffs().iter().rev() {
        acc = mat_mul(&acc, &comp);
        for i in 0..n {
            for j in 0..n {
                acc[i][j] += &identity[i][j] * q(c);
            }
        }
    }
    let d = det(acc);
    assert!(d.is_integer());
    d.to_integer()
}
