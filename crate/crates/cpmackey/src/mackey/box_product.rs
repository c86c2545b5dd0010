//! Box product by explicit presentation, and Dress pairings.

use super::{trace_matrix, MackeyFunctor};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::module::{is_zero_map, maps_relations, FGModule};

/// `M box N`. Top generators: `M(.) (x) N(.)` (index `i * b + j`) followed by
/// `M(o) (x) N(o)`; bottom: `M(o) (x) N(o)` with the diagonal action.
pub fn box_product(m: &MackeyFunctor, n: &MackeyFunctor) -> Result<MackeyFunctor> {
    if m.ring != n.ring || m.p != n.p {
        return Err(Error::InvalidArgument("box product of functors over different rings or primes".into()));
    }
    let (a, b) = (m.top.gens, n.top.gens);
    let (c, e) = (m.bottom.gens, n.bottom.gens);
    let (ab, ce) = (a * b, c * e);
    let top_tensor = m.top.tensor(&n.top);
    let bottom = m.bottom.tensor(&n.bottom);

    let mut rels = top_tensor.rels.vstack(&Mat::zeros(ce, top_tensor.rels.cols()));
    rels = rels.hstack(&Mat::zeros(ab, bottom.rels.cols()).vstack(&bottom.rels));
    // x (x) t y - r x (x) y
    let f1 = Mat::identity(a).kron(&n.t).vstack(&m.r.kron(&Mat::identity(e)).scale(-1));
    // t w (x) z - w (x) r z
    let f2 = m.t.kron(&Mat::identity(b)).vstack(&Mat::identity(c).kron(&n.r).scale(-1));
    // g w (x) g y - w (x) y
    let sigma = m.sigma.kron(&n.sigma);
    let f3 = Mat::zeros(ab, ce).vstack(&sigma.sub(&Mat::identity(ce)));
    rels = rels.hstack(&f1).hstack(&f2).hstack(&f3);

    let top = FGModule::new(m.ring, ab + ce, rels)?;
    let t = Mat::zeros(ab, ce).vstack(&Mat::identity(ce));
    let r = m.r.kron(&n.r).hstack(&trace_matrix(&sigma, m.p));
    MackeyFunctor::new(m.p, top, bottom, r, t, sigma)
}

/// Levelwise bilinear maps `M(.) (x) N(.) -> P(.)` and `M(o) (x) N(o) -> P(o)`,
/// as matrices on tensor generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DressPairing {
    pub theta_top: Mat,
    pub theta_bottom: Mat,
}

pub const PAIRING_WELL_DEFINED: &str = "well-defined";
pub const RESTRICTION_SQUARE: &str = "restriction square";
pub const FROBENIUS_LEFT: &str = "Frobenius t-left";
pub const FROBENIUS_RIGHT: &str = "Frobenius t-right";
pub const EQUIVARIANCE: &str = "equivariance";

/// Names of violated pairing conditions; empty means the pairing induces `M box N -> P`.
pub fn dress_check(m: &MackeyFunctor, n: &MackeyFunctor, pr: &MackeyFunctor, d: &DressPairing) -> Result<Vec<String>> {
    let (a, b) = (m.top.gens, n.top.gens);
    let (c, e) = (m.bottom.gens, n.bottom.gens);
    if d.theta_top.rows() != pr.top.gens || d.theta_top.cols() != a * b {
        return Err(Error::DimensionMismatch(format!(
            "top pairing is {}x{}, expected {}x{}",
            d.theta_top.rows(),
            d.theta_top.cols(),
            pr.top.gens,
            a * b
        )));
    }
    if d.theta_bottom.rows() != pr.bottom.gens || d.theta_bottom.cols() != c * e {
        return Err(Error::DimensionMismatch(format!(
            "bottom pairing is {}x{}, expected {}x{}",
            d.theta_bottom.rows(),
            d.theta_bottom.cols(),
            pr.bottom.gens,
            c * e
        )));
    }
    let mut out = Vec::new();
    let wd = maps_relations(&m.top.tensor(&n.top), &pr.top, &d.theta_top)
        && maps_relations(&m.bottom.tensor(&n.bottom), &pr.bottom, &d.theta_bottom);
    if !wd {
        out.push(PAIRING_WELL_DEFINED.to_string());
    }
    let lhs = pr.r.mul(&d.theta_top);
    let rhs = d.theta_bottom.mul(&m.r.kron(&n.r));
    if !is_zero_map(&pr.bottom, &lhs.sub(&rhs)) {
        out.push(RESTRICTION_SQUARE.to_string());
    }
    let lhs = d.theta_top.mul(&m.t.kron(&Mat::identity(b)));
    let rhs = pr.t.mul(&d.theta_bottom).mul(&Mat::identity(c).kron(&n.r));
    if !is_zero_map(&pr.top, &lhs.sub(&rhs)) {
        out.push(FROBENIUS_LEFT.to_string());
    }
    let lhs = d.theta_top.mul(&Mat::identity(a).kron(&n.t));
    let rhs = pr.t.mul(&d.theta_bottom).mul(&m.r.kron(&Mat::identity(e)));
    if !is_zero_map(&pr.top, &lhs.sub(&rhs)) {
        out.push(FROBENIUS_RIGHT.to_string());
    }
    let lhs = d.theta_bottom.mul(&m.sigma.kron(&n.sigma));
    let rhs = pr.sigma.mul(&d.theta_bottom);
    if !is_zero_map(&pr.bottom, &lhs.sub(&rhs)) {
        out.push(EQUIVARIANCE.to_string());
    }
    Ok(out)
}

/// The universal pairing `M, N -> M box N`.
pub fn pairing_from_box(m: &MackeyFunctor, n: &MackeyFunctor) -> Result<(MackeyFunctor, DressPairing)> {
    let bx = box_product(m, n)?;
    let ab = m.top.gens * n.top.gens;
    let ce = m.bottom.gens * n.bottom.gens;
    let theta_top = Mat::identity(ab).vstack(&Mat::zeros(ce, ab));
    Ok((bx, DressPairing { theta_top, theta_bottom: Mat::identity(ce) }))
}

/// The unit pairing `A, M -> M`: `1 (x) x -> x`, `tau (x) x -> t r x`, `iota (x) y -> y`.
pub fn unit_pairing(m: &MackeyFunctor) -> DressPairing {
    let tr = m.t.mul(&m.r);
    DressPairing { theta_top: Mat::identity(m.top.gens).hstack(&tr), theta_bottom: Mat::identity(m.bottom.gens) }
}

#[cfg(test)]
mod tests {
    use super::super::{standard, CpModule, StandardName};
    use super::*;
    use crate::ring::GroundRing;

    #[test]
    fn box_is_valid_and_bottom_is_tensor() {
        let z = GroundRing::Integers;
        let r = standard(&StandardName::R(CpModule::trivial(z)), z, 3).unwrap();
        let o = standard(&StandardName::FreeOnOrbit, z, 3).unwrap();
        let b = box_product(&r, &o).unwrap();
        assert!(b.is_valid(), "{:?}", b.validate());
        assert_eq!(b.bottom.gens, 3);
        assert_eq!(b.sigma, r.sigma.kron(&o.sigma));
    }

    #[test]
    fn unit_and_zero_pairings() {
        let z = GroundRing::Integers;
        let a = standard(&StandardName::A, z, 3).unwrap();
        let l = standard(&StandardName::L(CpModule::trivial(z)), z, 3).unwrap();
        assert!(dress_check(&a, &l, &l, &unit_pairing(&l)).unwrap().is_empty());
        let zero = DressPairing { theta_top: Mat::zeros(1, 2), theta_bottom: Mat::zeros(1, 1) };
        assert!(dress_check(&a, &l, &l, &zero).unwrap().is_empty());
    }

    #[test]
    fn perturbed_unit_pairing_fails_frobenius() {
        let z = GroundRing::Integers;
        let a = standard(&StandardName::A, z, 3).unwrap();
        let mut d = unit_pairing(&a);
        // negate the image of tau (x) x
        for i in 0..2 {
            for j in 2..4 {
                d.theta_top[(i, j)] = -d.theta_top[(i, j)];
            }
        }
        let v = dress_check(&a, &a, &a, &d).unwrap();
        assert!(v.contains(&FROBENIUS_LEFT.to_string()), "{v:?}");
    }

    #[test]
    fn universal_pairing_is_a_dress_pairing() {
        let z = GroundRing::Integers;
        let a = standard(&StandardName::ATwisted(2), z, 5).unwrap();
        let r = standard(&StandardName::R(CpModule::trivial(z)), z, 5).unwrap();
        let (bx, d) = pairing_from_box(&a, &r).unwrap();
        assert!(dress_check(&a, &r, &bx, &d).unwrap().is_empty());
    }
}
