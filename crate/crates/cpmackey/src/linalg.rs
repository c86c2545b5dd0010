//! Smith normal form, linear solving, kernels and lattices over the ground rings.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ring::{inv_mod, GroundRing};

/// `u * m * v == d`, with `u_inv = u^{-1}`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: Mat,
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    pub rank: usize,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)]).collect()
    }
}

/// Smith normal form over the integers.
///
/// Pivot: smallest nonzero absolute value in the active block, ties to the first
/// entry in row-major order. The diagonal is nonnegative and forms a divisibility chain.
pub fn smith_normal_form(m: &Mat) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = Mat::identity(rows);
    let mut u_inv = Mat::identity(rows);
    let mut v = Mat::identity(cols);
    let mut rank = 0;

    for k in 0..rows.min(cols) {
        loop {
            let mut pivot: Option<(usize, usize, i64)> = None;
            for i in k..rows {
                for j in k..cols {
                    let x = a[(i, j)].abs();
                    if x != 0 && pivot.is_none_or(|(_, _, best)| x < best) {
                        pivot = Some((i, j, x));
                    }
                }
            }
            let Some((pi, pj, _)) = pivot else {
                return Snf { d: a, u, u_inv, v, rank };
            };
            if pi != k {
                a.swap_rows(pi, k);
                u.swap_rows(pi, k);
                u_inv.swap_cols(pi, k);
            }
            if pj != k {
                a.swap_cols(pj, k);
                v.swap_cols(pj, k);
            }
            let piv = a[(k, k)];
            let mut clean = true;
            for i in k + 1..rows {
                let q = nearest_quotient(a[(i, k)], piv);
                if q != 0 {
                    a.add_row(i, k, -q);
                    u.add_row(i, k, -q);
                    u_inv.add_col(k, i, q);
                }
                if a[(i, k)] != 0 {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                let q = nearest_quotient(a[(k, j)], piv);
                if q != 0 {
                    a.add_col(j, k, -q);
                    v.add_col(j, k, -q);
                }
                if a[(k, j)] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| a[(i, j)] % piv != 0));
            if let Some(i) = bad {
                a.add_row(k, i, 1);
                u.add_row(k, i, 1);
                u_inv.add_col(i, k, -1);
                continue;
            }
            break;
        }
        if a[(k, k)] < 0 {
            a.negate_row(k);
            u.negate_row(k);
            u_inv.negate_col(k);
        }
        rank = k + 1;
    }
    reduce_transforms(&mut u, &mut u_inv, &mut v, rank);
    Snf { d: a, u, u_inv, v, rank }
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// Rounded `<x, y> / <y, y>`, the multiple of `y` to subtract from `x`.
fn gauss_quotient(x: &[i64], y: &[i64]) -> i64 {
    let (num, den) = (dot(x, y), dot(y, y));
    if den == 0 {
        return 0;
    }
    let q = (2 * num + den).div_euclid(2 * den);
    i64::try_from(q).expect("Smith transform reduction overflow")
}

/// Pairwise size reduction of the transforms, which leaves `u m v` unchanged:
/// columns of `v` past the rank span the kernel of `m`, rows of `u` past the rank
/// annihilate `m v`, and either may be added to any other column (row).
/// Each step strictly lowers a squared norm, so the passes terminate.
fn reduce_transforms(u: &mut Mat, u_inv: &mut Mat, v: &mut Mat, rank: usize) {
    loop {
        let mut changed = false;
        for j in rank..v.cols() {
            for i in 0..v.cols() {
                if i == j {
                    continue;
                }
                let (x, y) = (v.col(i), v.col(j));
                let q = gauss_quotient(&x, &y);
                if q != 0 {
                    let reduced: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a - q * b).collect();
                    if dot(&reduced, &reduced) < dot(&x, &x) {
                        v.add_col(i, j, -q);
                        changed = true;
                    }
                }
            }
        }
        for j in rank..u.rows() {
            for i in 0..u.rows() {
                if i == j {
                    continue;
                }
                let (x, y) = (u.row(i), u.row(j));
                let q = gauss_quotient(&x, &y);
                if q != 0 {
                    let reduced: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a - q * b).collect();
                    if dot(&reduced, &reduced) < dot(&x, &x) {
                        u.add_row(i, j, -q);
                        u_inv.add_col(j, i, q);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// `x / d` rounded to the nearest integer, so the remainder has absolute value at most `|d| / 2`.
fn nearest_quotient(x: i64, d: i64) -> i64 {
    let (q, r) = (x.div_euclid(d), x.rem_euclid(d));
    if 2 * r > d.abs() {
        q + d.signum()
    } else {
        q
    }
}

fn check_dims(a: &Mat, b: &[i64]) -> Result<()> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has length {}",
            a.rows(),
            b.len()
        )));
    }
    Ok(())
}

fn solve_integers(a: &Mat, b: &[i64]) -> Option<Vec<i64>> {
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b);
    let mut y = vec![0i64; a.cols()];
    for (i, &ci) in c.iter().enumerate() {
        if i < snf.rank {
            let d = snf.d[(i, i)];
            if ci % d != 0 {
                return None;
            }
            y[i] = ci / d;
        } else if ci != 0 {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Row-reduced echelon form modulo a prime; returns pivot columns.
pub fn rref_mod(a: &mut Mat, q: i64) -> Vec<usize> {
    let (rows, cols) = (a.rows(), a.cols());
    *a = a.map(|x| x.rem_euclid(q));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[(i, c)] != 0) else { continue };
        a.swap_rows(pr, r);
        let inv = inv_mod(a[(r, c)], q).expect("nonzero element of a prime field");
        for j in 0..cols {
            a[(r, j)] = (a[(r, j)] * inv).rem_euclid(q);
        }
        for i in 0..rows {
            if i != r && a[(i, c)] != 0 {
                let f = a[(i, c)];
                for j in 0..cols {
                    a[(i, j)] = (a[(i, j)] - f * a[(r, j)]).rem_euclid(q);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn solve_field(a: &Mat, b: &[i64], q: i64) -> Option<Vec<i64>> {
    let mut aug = a.hstack(&Mat::column(b));
    let pivots = rref_mod(&mut aug, q);
    if pivots.last() == Some(&a.cols()) {
        return None;
    }
    let mut x = vec![0i64; a.cols()];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[(r, a.cols())];
    }
    Some(x)
}

/// Solve `a x = b` over the ring; `Ok(None)` when no solution exists.
pub fn solve_linear(a: &Mat, b: &[i64], ring: GroundRing) -> Result<Option<Vec<i64>>> {
    check_dims(a, b)?;
    Ok(match ring {
        GroundRing::Integers => solve_integers(a, b),
        GroundRing::PrimeField(q) => solve_field(a, b, q),
        GroundRing::ModRing(n) => {
            let lifted = a.hstack(&Mat::scalar(a.rows(), n));
            solve_integers(&lifted, b).map(|x| x[..a.cols()].iter().map(|v| v.rem_euclid(n)).collect())
        }
    })
}

/// Basis (as columns) of the integer lattice spanned by the columns of `g`.
pub fn lattice_basis(g: &Mat) -> Mat {
    let snf = smith_normal_form(g);
    let cols: Vec<Vec<i64>> =
        (0..snf.rank).map(|i| snf.u_inv.col(i).iter().map(|x| x * snf.d[(i, i)]).collect()).collect();
    Mat::from_cols(&cols, g.rows())
}

/// Columns generating `{x : a x = 0}` over the ring.
///
/// Over the integers this is a lattice basis of the (saturated) kernel. Over a prime
/// field it is a nullspace basis with entries in `0..q`. Over `Z/n` it is a basis of
/// the integer lattice `{x : a x = 0 mod n}`, which contains `n Z^cols`.
pub fn kernel(a: &Mat, ring: GroundRing) -> Mat {
    match ring {
        GroundRing::Integers => {
            let snf = smith_normal_form(a);
            let idx: Vec<usize> = (snf.rank..a.cols()).collect();
            snf.v.select_cols(&idx)
        }
        GroundRing::PrimeField(q) => {
            let mut r = a.clone();
            let pivots = rref_mod(&mut r, q);
            let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
            let cols: Vec<Vec<i64>> = free
                .iter()
                .map(|&f| {
                    let mut x = vec![0i64; a.cols()];
                    x[f] = 1;
                    for (row, &pc) in pivots.iter().enumerate() {
                        x[pc] = (-r[(row, f)]).rem_euclid(q);
                    }
                    x
                })
                .collect();
            Mat::from_cols(&cols, a.cols())
        }
        GroundRing::ModRing(n) => {
            let lifted = a.hstack(&Mat::scalar(a.rows(), n));
            let k = kernel(&lifted, GroundRing::Integers);
            let proj = k.block(0, 0, a.cols(), k.cols());
            lattice_basis(&proj)
        }
    }
}

/// Rank of a matrix over a prime field.
pub fn rank_mod(a: &Mat, q: i64) -> usize {
    let mut r = a.clone();
    rref_mod(&mut r, q).len()
}

/// Smith form over a prime field: pivots scaled to 1, all matrices reduced mod `q`.
pub fn smith_normal_form_mod(m: &Mat, q: i64) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.map(|x| x.rem_euclid(q));
    let mut u = Mat::identity(rows);
    let mut u_inv = Mat::identity(rows);
    let mut v = Mat::identity(cols);
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let found = (k..rows).flat_map(|i| (k..cols).map(move |j| (i, j))).find(|&(i, j)| a[(i, j)] != 0);
        let Some((pi, pj)) = found else { break };
        a.swap_rows(pi, k);
        u.swap_rows(pi, k);
        u_inv.swap_cols(pi, k);
        a.swap_cols(pj, k);
        v.swap_cols(pj, k);
        let inv = inv_mod(a[(k, k)], q).expect("nonzero pivot in a prime field");
        let piv = a[(k, k)];
        // row k *= inv; U row k *= inv; U^{-1} col k *= piv
        for j in 0..cols {
            a[(k, j)] = (a[(k, j)] * inv).rem_euclid(q);
        }
        for j in 0..rows {
            u[(k, j)] = (u[(k, j)] * inv).rem_euclid(q);
            u_inv[(j, k)] = (u_inv[(j, k)] * piv).rem_euclid(q);
        }
        for i in k + 1..rows {
            let f = a[(i, k)];
            if f != 0 {
                a.add_row(i, k, -f);
                u.add_row(i, k, -f);
                u_inv.add_col(k, i, f);
                reduce_row(&mut a, i, q);
                reduce_row(&mut u, i, q);
                reduce_col(&mut u_inv, k, q);
            }
        }
        for j in k + 1..cols {
            let f = a[(k, j)];
            if f != 0 {
                a.add_col(j, k, -f);
                v.add_col(j, k, -f);
                reduce_col(&mut a, j, q);
                reduce_col(&mut v, j, q);
            }
        }
        rank = k + 1;
    }
    Snf { d: a, u, u_inv, v, rank }
}

fn reduce_row(m: &mut Mat, i: usize, q: i64) {
    for j in 0..m.cols() {
        m[(i, j)] = m[(i, j)].rem_euclid(q);
    }
}

fn reduce_col(m: &mut Mat, j: usize, q: i64) {
    for i in 0..m.rows() {
        m[(i, j)] = m[(i, j)].rem_euclid(q);
    }
}

/// Basis of the submodule `span(gens) + m Z^g` of `Z^g`, `m` the ring modulus.
///
/// Integers: a lattice basis. `Z/n`: a full-rank lattice basis. Prime field: a basis of
/// the image in `F_q^g`, entries in `0..q`.
pub fn span_basis(ring: GroundRing, g: usize, gens: &Mat) -> Mat {
    debug_assert_eq!(gens.rows(), g);
    match ring {
        GroundRing::Integers => lattice_basis(gens),
        GroundRing::ModRing(n) => lattice_basis(&gens.hstack(&Mat::scalar(g, n))),
        GroundRing::PrimeField(q) => {
            let mut r = gens.transpose();
            let piv = rref_mod(&mut r, q);
            let rows: Vec<usize> = (0..piv.len()).collect();
            r.select_rows(&rows).transpose()
        }
    }
}

/// Basis (in the sense of `span_basis`) of `{x : f x in span(target)}`, where `target`
/// is a basis of a submodule containing `m Z^rows`.
pub fn preimage(ring: GroundRing, f: &Mat, target: &Mat) -> Mat {
    let a = f.cols();
    let big = f.hstack(&target.scale(-1));
    let k = match ring {
        GroundRing::PrimeField(_) => kernel(&big, ring),
        _ => kernel(&big, GroundRing::Integers),
    };
    let proj = k.block(0, 0, a, k.cols());
    span_basis(ring, a, &proj)
}

/// Coordinates of `v` in a basis produced by `span_basis`/`preimage`.
pub fn coords(ring: GroundRing, basis: &Mat, v: &[i64]) -> Option<Vec<i64>> {
    match ring {
        GroundRing::PrimeField(q) => solve_field(basis, v, q),
        _ => solve_integers(basis, v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_small_example() {
        let m = Mat::from_rows(&[vec![2, 4], vec![6, 8]], 2);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal(), vec![2, 4]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), Mat::identity(2));
    }

    #[test]
    fn snf_identity_and_zero() {
        let s = smith_normal_form(&Mat::identity(3));
        assert_eq!(s.d, Mat::identity(3));
        assert_eq!(s.u, Mat::identity(3));
        assert_eq!(s.v, Mat::identity(3));
        let z = smith_normal_form(&Mat::zeros(2, 3));
        assert!(z.d.is_zero());
        assert_eq!(z.rank, 0);
    }

    #[test]
    fn solve_examples() {
        let a = Mat::from_rows(&[vec![2]], 1);
        assert_eq!(solve_linear(&a, &[1], GroundRing::Integers).unwrap(), None);
        assert_eq!(solve_linear(&a, &[1], GroundRing::PrimeField(5)).unwrap(), Some(vec![3]));
        let id = Mat::identity(3);
        assert_eq!(solve_linear(&id, &[4, -1, 7], GroundRing::Integers).unwrap(), Some(vec![4, -1, 7]));
        assert!(solve_linear(&id, &[1, 2], GroundRing::Integers).is_err());
        let x = solve_linear(&Mat::from_rows(&[vec![4]], 1), &[2], GroundRing::ModRing(6)).unwrap().unwrap();
        assert_eq!((4 * x[0]).rem_euclid(6), 2);
    }

    #[test]
    fn kernels() {
        let a = Mat::from_rows(&[vec![1, 1, 0]], 3);
        let k = kernel(&a, GroundRing::Integers);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        let kq = kernel(&Mat::from_rows(&[vec![2, 4]], 2), GroundRing::PrimeField(7));
        assert_eq!(kq.cols(), 1);
        let kn = kernel(&Mat::from_rows(&[vec![2]], 1), GroundRing::ModRing(4));
        assert_eq!(kn.map(i64::abs), Mat::from_rows(&[vec![2]], 1));
    }
}
