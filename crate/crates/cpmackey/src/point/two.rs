//! Product rules for p = 2 on monomials
//! `U(e, x) = eps^e xi^x`, `K(m) = eps^{-m} kappa`, `T(k, m) = eps^{-m} t(iota^k)`.

use super::{Gen, Terms};
use crate::error::Result;
use crate::rog::ROGElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mono {
    /// `e, x >= 0`.
    U(i64, i64),
    /// `m >= 0`.
    K(i64),
    /// `k >= 2`, `m >= 0`; `m > 0` forces `k` odd.
    T(i64, i64),
}

fn degree(m: i64, n: i64) -> ROGElement {
    ROGElement { p: 2, coeffs: vec![m, n - m] }
}

fn to_mono(a: &ROGElement, g: Gen) -> Mono {
    let (m, n) = a.dims();
    match g {
        Gen::One => Mono::U(0, 0),
        Gen::Eps => Mono::U(n, 0),
        Gen::Xi => Mono::U(0, -m / 2),
        Gen::EpsXi => Mono::U(n, -m / 2),
        Gen::Kappa => Mono::K(0),
        Gen::EpsInvKappa => Mono::K(-n),
        Gen::Tr => Mono::T(m, 0),
        Gen::EpsInvTr => Mono::T(m, -n),
        Gen::Mu | Gen::Nu | Gen::Iota => unreachable!("{g:?} is not a p = 2 top generator"),
    }
}

fn from_mono(x: Mono) -> (ROGElement, Gen) {
    match x {
        Mono::U(0, 0) => (degree(0, 0), Gen::One),
        Mono::U(e, 0) => (degree(0, e), Gen::Eps),
        Mono::U(0, x) => (degree(-2 * x, 0), Gen::Xi),
        Mono::U(e, x) => (degree(-2 * x, e), Gen::EpsXi),
        Mono::K(0) => (degree(0, 0), Gen::Kappa),
        Mono::K(m) => (degree(0, -m), Gen::EpsInvKappa),
        Mono::T(k, 0) => (degree(k, 0), Gen::Tr),
        Mono::T(k, m) => (degree(k, -m), Gen::EpsInvTr),
    }
}

/// `t(iota^j)` in the top basis: `2 - kappa` at j = 0, `2 xi^{-j/2}` for even j < 0,
/// zero for odd j <= 1.
fn tr_of_iota(j: i64) -> Vec<(Mono, i64)> {
    match j {
        j if j >= 2 => vec![(Mono::T(j, 0), 1)],
        0 => vec![(Mono::U(0, 0), 2), (Mono::K(0), -1)],
        j if j < 0 && j % 2 == 0 => vec![(Mono::U(0, -j / 2), 2)],
        _ => vec![],
    }
}

fn rank(x: Mono) -> u8 {
    match x {
        Mono::U(..) => 0,
        Mono::K(_) => 1,
        Mono::T(..) => 2,
    }
}

fn mono_product(a: Mono, b: Mono) -> Vec<(Mono, i64)> {
    let (a, b) = if rank(a) <= rank(b) { (a, b) } else { (b, a) };
    match (a, b) {
        (Mono::U(e1, x1), Mono::U(e2, x2)) => vec![(Mono::U(e1 + e2, x1 + x2), 1)],
        // xi kappa = 0 since r is injective on R and kills kappa
        (Mono::U(_, x), Mono::K(_)) if x > 0 => vec![],
        (Mono::U(e, _), Mono::K(m)) if e <= m => vec![(Mono::K(m - e), 1)],
        // kappa acts by 2 on <k>
        (Mono::U(e, _), Mono::K(m)) => vec![(Mono::U(e - m, 0), 2)],
        // Frobenius: r(eps^e xi^x) = 0 for e > 0, iota^{-2x} otherwise
        (Mono::U(e, x), Mono::T(k, 0)) => {
            if e > 0 {
                vec![]
            } else {
                tr_of_iota(k - 2 * x)
            }
        }
        // unique divisibility by eps, and xi lowering k by two while k - 2x >= 3
        (Mono::U(e, x), Mono::T(k, m)) => {
            let k2 = k - 2 * x;
            if k2 < 3 || e > m {
                vec![]
            } else {
                vec![(Mono::T(k2, m - e), 1)]
            }
        }
        (Mono::K(m1), Mono::K(m2)) => vec![(Mono::K(m1 + m2), 2)],
        (Mono::K(_), Mono::T(..)) => vec![],
        // Frobenius: r t(iota^k) = (1 + (-1)^k) iota^k; divided classes multiply to 0
        // by unique divisibility since t(iota^j) t(iota^k) = 0 when j + k is odd
        (Mono::T(j, 0), Mono::T(k, 0)) => {
            let c = if k % 2 == 0 { 2 } else { 0 };
            tr_of_iota(j + k).into_iter().map(|(x, v)| (x, v * c)).collect()
        }
        (Mono::T(..), Mono::T(..)) => vec![],
        _ => unreachable!("ordered by rank"),
    }
}

pub(super) fn product(a: &ROGElement, g: Gen, b: &ROGElement, h: Gen) -> Result<Terms> {
    if g == Gen::Iota && h == Gen::Iota {
        return Ok(vec![((a + b, Gen::Iota), 1)]);
    }
    let terms = mono_product(to_mono(a, g), to_mono(b, h));
    Ok(terms.into_iter().map(|(x, v)| (from_mono(x), v)).collect())
}

/// Coefficient of `iota^m` in the restriction of a top generator.
pub(super) fn restriction(a: &ROGElement, g: Gen) -> i64 {
    let (m, _) = a.dims();
    match g {
        Gen::One | Gen::Xi => 1,
        Gen::Tr if m % 2 == 0 => 2,
        _ => 0,
    }
}

pub(super) fn transfer(a: &ROGElement) -> Terms {
    tr_of_iota(a.dims().0).into_iter().map(|(x, v)| (from_mono(x), v)).collect()
}
