//! Independent oracles shared by the acceptance and property tests.
#![allow(dead_code)]

use cpmackey::linalg::{smith_normal_form, solve_linear};
use cpmackey::{FGModule, GroundRing, Mat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed;

/// `MACKEY_SEED` if set and numeric, otherwise the fixed default.
pub fn seed() -> u64 {
    std::env::var("MACKEY_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ salt)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Mat {
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
    Mat::from_rows(&data, cols)
}

type Wide = Vec<Vec<i128>>;

fn wide(m: &Mat) -> Wide {
    m.to_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect()
}

fn wide_mul(a: &Wide, b: &Wide, inner: usize, cols: usize) -> Wide {
    a.iter().map(|r| (0..cols).map(|j| (0..inner).map(|k| r[k] * b[k][j]).sum()).collect()).collect()
}

/// Determinant by fraction-free elimination in 128-bit arithmetic.
fn wide_det(m: &Wide) -> i128 {
    let n = m.len();
    let mut a = m.clone();
    let (mut sign, mut prev) = (1i128, 1i128);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else { return 0 };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

/// Every postcondition of the Smith form, checked by re-multiplication in 128-bit arithmetic.
pub fn snf_violations(m: &Mat) -> Vec<String> {
    let s = smith_normal_form(m);
    let (r, c) = (m.rows(), m.cols());
    let mut out = Vec::new();
    let umv = wide_mul(&wide_mul(&wide(&s.u), &wide(m), r, c), &wide(&s.v), c, c);
    if umv != wide(&s.d) {
        out.push("u m v != d".into());
    }
    if wide_mul(&wide(&s.u), &wide(&s.u_inv), r, r) != wide(&Mat::identity(r)) {
        out.push("u u_inv != 1".into());
    }
    if wide_det(&wide(&s.u)).abs() != 1 || wide_det(&wide(&s.v)).abs() != 1 {
        out.push("u or v not unimodular".into());
    }
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j && s.d[(i, j)] != 0 {
                out.push(format!("off-diagonal entry at ({i},{j})"));
            }
        }
    }
    let diag = s.diagonal();
    if diag.iter().any(|&x| x < 0) {
        out.push("negative diagonal entry".into());
    }
    let nonzero = diag.iter().take_while(|&&x| x != 0).count();
    if diag[nonzero..].iter().any(|&x| x != 0) || nonzero != s.rank {
        out.push("zeros not trailing or rank wrong".into());
    }
    for w in diag[..nonzero].windows(2) {
        if w[1] % w[0] != 0 {
            out.push(format!("{} does not divide {}", w[0], w[1]));
        }
    }
    out
}

fn box_points(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut pts = vec![vec![]];
    for _ in 0..n {
        pts = pts.into_iter().flat_map(|p| (lo..=hi).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    pts
}

/// Brute-force solution of `a x = b`: all of `R^n` for a finite ring, the box
/// `[-bound, bound]^n` over the integers.
pub fn exhaustive_solution(a: &Mat, b: &[i64], ring: GroundRing, bound: i64) -> Option<Vec<i64>> {
    let pts = match ring {
        GroundRing::Integers => box_points(a.cols(), -bound, bound),
        r => box_points(a.cols(), 0, r.modulus() - 1),
    };
    pts.into_iter().find(|x| a.mul_vec(x).iter().zip(b).all(|(l, r)| ring.reduce(*l) == ring.reduce(*r)))
}

/// Agreement of `solve_linear` with exhaustive search on one system.
pub fn solve_agrees(a: &Mat, b: &[i64], ring: GroundRing) -> Result<(), String> {
    let got = solve_linear(a, b, ring).map_err(|e| e.to_string())?;
    let brute = exhaustive_solution(a, b, ring, 12);
    match (&got, &brute) {
        (Some(x), _) => {
            let ok = a.mul_vec(x).iter().zip(b).all(|(l, r)| ring.reduce(*l) == ring.reduce(*r));
            if ok {
                Ok(())
            } else {
                Err(format!("returned {x:?} is not a solution"))
            }
        }
        (None, Some(y)) => Err(format!("no solution reported, but {y:?} solves it")),
        (None, None) => Ok(()),
    }
}

/// A random tiny system; half of them are solvable by construction.
pub fn random_system(rng: &mut ChaCha8Rng, ring: GroundRing) -> (Mat, Vec<i64>) {
    let (r, c) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
    let a = random_matrix(rng, r, c, 3).map(|x| ring.reduce(x));
    let b = if rng.gen_bool(0.5) {
        let x: Vec<i64> = (0..c).map(|_| rng.gen_range(-3..=3)).collect();
        a.mul_vec(&x)
    } else {
        (0..r).map(|_| rng.gen_range(-6..=6)).collect()
    };
    (a, b.into_iter().map(|x| ring.reduce(x)).collect())
}

/// `|Hom(M, N)|` for finite modules by enumerating generator images in `N`.
pub fn hom_count(m: &FGModule, n: &FGModule) -> usize {
    let cn = n.canonical();
    let elems: Vec<Vec<i64>> = cn
        .invariants
        .iter()
        .fold(vec![vec![]], |acc, &d| {
            acc.into_iter().flat_map(|p| (0..d).map(move |x| [p.clone(), vec![x]].concat())).collect()
        })
        .into_iter()
        .map(|z| cn.incl.mul_vec(&z))
        .collect();
    let mut count = 0;
    let mut idx = vec![0usize; m.gens];
    loop {
        let images: Vec<&Vec<i64>> = idx.iter().map(|&i| &elems[i]).collect();
        let respects = (0..m.rels.cols()).all(|k| {
            let mut v = vec![0i64; n.gens];
            for (j, img) in images.iter().enumerate() {
                for (t, x) in img.iter().enumerate() {
                    v[t] += m.rels[(j, k)] * x;
                }
            }
            n.is_zero(&v)
        });
        count += usize::from(respects);
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return count;
            }
            idx[pos] += 1;
            if idx[pos] < elems.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
