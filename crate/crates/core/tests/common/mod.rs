#![allow(dead_code)]

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qred::classical::{
    bh5, borel_sl2, borel_sl3, f_algebra, ghat, gl_algebra, heisenberg, parabolic_from_roots, so_algebra, sp_algebra,
    sp_heisenberg, sp_k_heisenberg,
};
use qred::exactlin::{rat, ratio};
use qred::formulas::{RootSubset, Series};
use qred::{LieAlgebra, Rat, RatMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    if rng.gen_bool(0.2) {
        ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=3))
    } else {
        rat(rng.gen_range(-bound..=bound))
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> RatMatrix {
    let data = (0..rows * cols).map(|_| small_rat(rng, bound)).collect();
    RatMatrix::from_flat(rows, cols, data).unwrap()
}

pub fn random_alternating<R: Rng>(rng: &mut R, n: usize, bound: i64) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = small_rat(rng, bound);
            m.set(j, i, -&x);
            m.set(i, j, x);
        }
    }
    m
}

/// Unimodular upper-triangular change of basis.
fn random_unipotent<R: Rng>(rng: &mut R, n: usize) -> RatMatrix {
    let mut p = RatMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            p.set(i, j, rat(rng.gen_range(-2..=2)));
        }
    }
    p
}

/// Matrices with interesting Jordan structure: conjugates of block-diagonal
/// matrices built from Jordan blocks and rotation blocks (irrational
/// eigenvalues), mixed with plain random matrices.
pub fn random_jordan_test_matrix<R: Rng>(rng: &mut R, n: usize) -> RatMatrix {
    if rng.gen_bool(0.25) {
        return random_matrix(rng, n, n, 3);
    }
    let mut m = RatMatrix::zeros(n, n);
    let mut i = 0;
    while i < n {
        let rest = n - i;
        if rest >= 2 && rng.gen_bool(0.3) {
            // companion block of t^2 - d with d not a square
            let d = [2, 3, 5, -1][rng.gen_range(0..4)];
            m.set(i, i + 1, rat(1));
            m.set(i + 1, i, rat(d));
            if rest >= 4 && rng.gen_bool(0.4) {
                // repeat it with a coupling, giving a non-semisimple part
                m.set(i + 2, i + 3, rat(1));
                m.set(i + 3, i + 2, rat(d));
                m.set(i, i + 2, rat(1));
                m.set(i + 1, i + 3, rat(1));
                i += 4;
            } else {
                i += 2;
            }
        } else {
            let len = rng.gen_range(1..=rest.min(3));
            let lambda = rat(rng.gen_range(-2..=2));
            for k in 0..len {
                m.set(i + k, i + k, lambda.clone());
                if k + 1 < len {
                    m.set(i + k, i + k + 1, rat(1));
                }
            }
            i += len;
        }
    }
    let p = random_unipotent(rng, n);
    let q = random_unipotent(rng, n).transpose();
    let g = &p * &q;
    &(&g * &m) * &g.inverse().unwrap()
}

/// Independent brute-force check of antisymmetry and the Jacobi identity on
/// a dense table `c[i][j][k]`.
pub fn is_lie_table(c: &[Vec<Vec<Rat>>]) -> bool {
    let n = c.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if c[i][j][k] != -&c[j][i][k] {
                    return false;
                }
            }
        }
    }
    let br = |x: &[Rat], y: &[Rat]| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); n];
        for i in 0..n {
            for j in 0..n {
                if x[i].is_zero() || y[j].is_zero() {
                    continue;
                }
                for k in 0..n {
                    out[k] += &x[i] * &y[j] * &c[i][j][k];
                }
            }
        }
        out
    };
    let e = |i: usize| -> Vec<Rat> { (0..n).map(|k| if k == i { rat(1) } else { rat(0) }).collect() };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let a = br(&e(i), &br(&e(j), &e(k)));
                let b = br(&e(j), &br(&e(k), &e(i)));
                let d = br(&e(k), &br(&e(i), &e(j)));
                if (0..n).any(|t| !(&a[t] + &b[t] + &d[t]).is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn dense_table(alg: &LieAlgebra) -> Vec<Vec<Vec<Rat>>> {
    let n = alg.dim();
    let mut c = vec![vec![vec![Rat::zero(); n]; n]; n];
    for (i, j, v) in alg.table() {
        for (k, x) in v {
            c[i][j][k] = x.clone();
            c[j][i][k] = -x;
        }
    }
    c
}

/// Table entries `(i, j, v)` for `i < j` read back from a dense table.
pub fn upper_table(c: &[Vec<Vec<Rat>>]) -> Vec<(usize, usize, Vec<(usize, Rat)>)> {
    let n = c.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v: Vec<(usize, Rat)> = (0..n).filter(|&k| !c[i][j][k].is_zero()).map(|k| (k, c[i][j][k].clone())).collect();
            if !v.is_empty() {
                out.push((i, j, v));
            }
        }
    }
    out
}

/// Perturbs one structure constant `c_ij^k` (keeping antisymmetry). Returns
/// the mutated table only when the independent check says it is no longer
/// a Lie algebra.
pub fn mutate_table<R: Rng>(rng: &mut R, base: &LieAlgebra) -> Option<Vec<Vec<Vec<Rat>>>> {
    let n = base.dim();
    let mut c = dense_table(base);
    let i = rng.gen_range(0..n);
    let j = (i + rng.gen_range(1..n)) % n;
    let k = rng.gen_range(0..n);
    let mut delta = small_rat(rng, 3);
    if delta.is_zero() {
        delta = rat(1);
    }
    c[i][j][k] += &delta;
    c[j][i][k] -= &delta;
    (!is_lie_table(&c)).then_some(c)
}

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Every algebra the library constructs, at desk scale.
pub fn constructed_algebras() -> Vec<(String, LieAlgebra)> {
    let mut out: Vec<(String, LieAlgebra)> = Vec::new();
    for q in 3..=9 {
        out.push((format!("so({q})"), so_algebra(q).unwrap()));
    }
    for n in 1..=4 {
        out.push((format!("sp({})", 2 * n), sp_algebra(2 * n).unwrap()));
    }
    for n in 1..=4 {
        out.push((format!("gl({n})"), gl_algebra(n).unwrap()));
    }
    for e in 1..=3 {
        out.push((format!("heisenberg({e})"), heisenberg(e).unwrap()));
    }
    for r in 1..=2 {
        out.push((format!("sp_heisenberg({r})"), sp_heisenberg(r).unwrap()));
        out.push((format!("sp_k_heisenberg({r})"), sp_k_heisenberg(r).unwrap()));
    }
    out.push(("borel_sl2".into(), borel_sl2().unwrap()));
    out.push(("f_algebra".into(), f_algebra().unwrap()));
    out.push(("bh5".into(), bh5().unwrap()));
    out.push(("borel_sl3".into(), borel_sl3().unwrap()));
    out.push(("ghat".into(), ghat().unwrap()));
    for (series, n) in [(Series::B, 3), (Series::D, 4)] {
        for roots in RootSubset::all(series, n) {
            let (_, alg) = parabolic_from_roots(&roots).unwrap();
            out.push((format!("p{roots} in so({})", roots.q()), alg));
        }
    }
    out
}
