//! Product rules for p odd on the canonical generators, indexed by their degrees.
//!
//! `EpsXi` at alpha is `eps_{n lambda_1} xi_{alpha - n lambda_1}` with `2n = |alpha|`;
//! `Nu` at alpha is `mu_theta` times the class at `a_0 + (sum a_j) lambda_1`, where
//! `theta` is the difference. The integer twist `d` is `d_lift`.

use super::{Gen, Terms};
use crate::error::{Error, Result};
use crate::ring::inv_mod;
use crate::rog::ROGElement;

fn d(a: &ROGElement) -> i64 {
    a.d_lift()
}

fn d_modp(a: &ROGElement) -> i64 {
    a.d_lift_mod().expect("p odd")
}

fn lambda1(p: i64, n: i64) -> ROGElement {
    ROGElement::lambda(p, 1).scale(n)
}

/// `t(iota_g)`: a basis element on the positive axis, `p xi_g` on the negative axis.
fn tr_of_iota(g: &ROGElement) -> Terms {
    let (m, n) = g.dims();
    debug_assert_eq!(n, 0);
    if m >= 0 {
        vec![((g.clone(), Gen::Tr), 1)]
    } else {
        vec![((g.clone(), Gen::Xi), g.p)]
    }
}

/// The coefficient `c` with `r(x) = c iota`.
pub(super) fn restriction(a: &ROGElement, g: Gen) -> i64 {
    match g {
        Gen::Mu => d(a),
        Gen::Tr => a.p,
        Gen::Xi => 1,
        _ => 0,
    }
}

pub(super) fn transfer(a: &ROGElement) -> Terms {
    tr_of_iota(a)
}

fn rank(g: Gen) -> u8 {
    match g {
        Gen::Tr => 0,
        Gen::Mu => 1,
        Gen::Eps => 2,
        Gen::EpsInvKappa => 3,
        Gen::Xi => 4,
        Gen::EpsXi => 5,
        Gen::Nu => 6,
        _ => 7,
    }
}

/// `kappa_g = p mu_g - d(g) t(iota_g)`.
fn kappa(g: &ROGElement) -> Terms {
    vec![((g.clone(), Gen::Mu), g.p), ((g.clone(), Gen::Tr), -d(g))]
}

/// `xi_a` acting on a fourth-quadrant class: `xi_a = d(theta)^{-1} mu_theta xi_{lambda_1 - 2}^j`
/// on p-torsion, with `theta = a - j (lambda_1 - 2)`.
fn xi_on_nu(a: &ROGElement) -> i64 {
    let p = a.p;
    let j = -a.dims().0 / 2;
    let theta = a - &(&lambda1(p, 1) - &ROGElement::trivial(p, 2)).scale(j);
    inv_mod(d_modp(&theta), p).expect("d prime to p")
}

pub(super) fn product(a: &ROGElement, g: Gen, b: &ROGElement, h: Gen) -> Result<Terms> {
    let p = a.p;
    let c = a + b;
    if g == Gen::Iota && h == Gen::Iota {
        return Ok(vec![((c, Gen::Iota), 1)]);
    }
    let ((a, g), (b, h)) = if rank(g) <= rank(h) { ((a, g), (b, h)) } else { ((b, h), (a, g)) };
    let one = |k: Gen| vec![((c.clone(), k), 1)];
    let scaled = |k: Gen, v: i64| vec![((c.clone(), k), v)];
    let (cm, cn) = c.dims();
    Ok(match (g, h) {
        // Frobenius: t(iota_a) y = t(iota_a r(y))
        (Gen::Tr, _) => {
            let r = restriction(b, h);
            if r == 0 {
                return Ok(vec![]);
            }
            tr_of_iota(&c).into_iter().map(|(k, v)| (k, v * r)).collect()
        }
        (Gen::Mu, Gen::Mu) => {
            let num = d(a) as i128 * d(b) as i128 - d(&c) as i128;
            debug_assert_eq!(num % p as i128, 0);
            let coeff = i64::try_from(num / p as i128).expect("mu coefficient overflow");
            vec![((c.clone(), Gen::Mu), 1), ((c.clone(), Gen::Tr), coeff)]
        }
        (Gen::Mu, Gen::Eps | Gen::EpsInvKappa | Gen::Nu) => one(h),
        (Gen::Mu, Gen::Xi) => scaled(Gen::Xi, d(a)),
        (Gen::Mu, Gen::EpsXi) => scaled(Gen::EpsXi, d_modp(a)),
        (Gen::Eps, Gen::Eps) => one(Gen::Eps),
        (Gen::Eps, Gen::EpsInvKappa) => match cn {
            0 => kappa(&c),
            n if n > 0 => scaled(Gen::Eps, p),
            _ => one(Gen::EpsInvKappa),
        },
        // eps_a xi_b = d(a - n lambda_1) eps_{n lambda_1} xi_{c - n lambda_1}, 2n = |a|
        (Gen::Eps, Gen::Xi | Gen::EpsXi) => scaled(Gen::EpsXi, d_modp(&(a - &lambda1(p, a.dims().1 / 2)))),
        // unique divisibility by eps inside the fourth quadrant
        (Gen::Eps, Gen::Nu) => {
            if cn < 0 {
                one(Gen::Nu)
            } else {
                vec![]
            }
        }
        (Gen::EpsInvKappa, Gen::EpsInvKappa) => scaled(Gen::EpsInvKappa, p),
        // kappa xi = 0 and kappa x = 0 on fourth-quadrant classes
        (Gen::EpsInvKappa, Gen::Xi | Gen::EpsXi | Gen::Nu) => vec![],
        (Gen::Xi, Gen::Xi) => one(Gen::Xi),
        (Gen::Xi, Gen::EpsXi) => one(Gen::EpsXi),
        (Gen::Xi, Gen::Nu) => {
            if cm >= 3 {
                scaled(Gen::Nu, xi_on_nu(a))
            } else {
                vec![]
            }
        }
        (Gen::EpsXi, Gen::EpsXi) => one(Gen::EpsXi),
        (Gen::EpsXi, Gen::Nu) => {
            let n = a.dims().1 / 2;
            if cm >= 3 && cn < 0 {
                scaled(Gen::Nu, xi_on_nu(&(a - &lambda1(p, n))))
            } else {
                vec![]
            }
        }
        // target degrees are Zero by the additive table
        (Gen::Nu, Gen::Nu) => vec![],
        (g, h) => {
            return Err(Error::Unsupported(format!("no product rule for {g:?} in {a} times {h:?} in {b}")));
        }
    })
}
