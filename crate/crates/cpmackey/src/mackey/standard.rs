//! The standard Mackey functors: Burnside, twisted Burnside, brackets, the adjoints
//! L and R of the underlying-module functor, their sign variants and orbit shifts.

use super::{block_permutation, shift_of_module, trace_matrix, MackeyFunctor};
use crate::error::{Error, Result};
use crate::linalg::coords;
use crate::matrix::Mat;
use crate::module::{reduce_mat, FGModule, ModuleMap};
use crate::ring::GroundRing;
use serde::{Deserialize, Serialize};

/// A module with an action of the generator of `C_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpModule {
    pub module: FGModule,
    pub sigma: Mat,
}

impl CpModule {
    pub fn trivial(ring: GroundRing) -> Self {
        CpModule { module: FGModule::free(ring, 1), sigma: Mat::identity(1) }
    }

    pub fn with_trivial_action(module: FGModule) -> Self {
        let n = module.gens;
        CpModule { module, sigma: Mat::identity(n) }
    }

    /// The ring with the sign action (meaningful for p = 2).
    pub fn sign(ring: GroundRing) -> Self {
        CpModule { module: FGModule::free(ring, 1), sigma: reduce_mat(ring, &Mat::scalar(1, -1)) }
    }

    /// `k^p` with the cyclic permutation action.
    pub fn permutation(ring: GroundRing, p: i64) -> Self {
        CpModule { module: FGModule::free(ring, p as usize), sigma: block_permutation(1, p as usize) }
    }

    /// `B^{(+)p}` with the action permuting the summands.
    pub fn induced(&self, p: i64) -> Self {
        let shifted = shift_of_module(&self.module, p);
        CpModule { module: shifted.bottom, sigma: shifted.sigma }
    }

    pub fn tensor(&self, o: &CpModule) -> Self {
        CpModule { module: self.module.tensor(&o.module), sigma: self.sigma.kron(&o.sigma) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StandardName {
    /// The Burnside functor.
    A,
    /// Twisted Burnside functor `A_<d>`.
    ATwisted(i64),
    /// `<C>`: `C` on top, zero at the bottom.
    Bracket(FGModule),
    /// Left adjoint `L(B) = (B/G, B, proj, trace)`.
    L(CpModule),
    /// Right adjoint `R(B) = (B^G, B, trace, incl)`.
    R(CpModule),
    LMinus,
    RMinus,
    /// The free functor on the free orbit, `A_o`.
    FreeOnOrbit,
    /// The orbit shift `M_o`.
    Shift(Box<MackeyFunctor>),
}

/// Build a standard functor in its displayed basis.
pub fn standard(name: &StandardName, ring: GroundRing, p: i64) -> Result<MackeyFunctor> {
    match name {
        StandardName::A => Ok(twisted(1, ring, p)),
        StandardName::ATwisted(d) => Ok(twisted(*d, ring, p)),
        StandardName::Bracket(c) => {
            if c.ring != ring {
                return Err(Error::InvalidRing("bracket module over a different ring".into()));
            }
            Ok(MackeyFunctor {
                ring,
                p,
                top: c.clone(),
                bottom: FGModule::zero(ring),
                r: Mat::zeros(0, c.gens),
                t: Mat::zeros(c.gens, 0),
                sigma: Mat::zeros(0, 0),
            })
        }
        StandardName::L(b) => left_adjoint(b, p),
        StandardName::R(b) => right_adjoint(b, p),
        StandardName::LMinus | StandardName::RMinus => {
            if p != 2 {
                return Err(Error::InvalidArgument("L_- and R_- exist only for p = 2".into()));
            }
            if !ring.no_p_torsion(2) {
                return Err(Error::InvalidArgument(format!("L_- and R_- need a ring without 2-torsion, got {ring}")));
            }
            let sign = CpModule::sign(ring);
            if matches!(name, StandardName::LMinus) {
                left_adjoint(&sign, p)
            } else {
                right_adjoint(&sign, p)
            }
        }
        StandardName::FreeOnOrbit => Ok(shift_of_module(&FGModule::free(ring, 1), p)),
        StandardName::Shift(m) => {
            if m.ring != ring || m.p != p {
                return Err(Error::InvalidArgument("shift of a functor over a different ring or prime".into()));
            }
            Ok(m.shift())
        }
    }
}

/// `A_<d>`: top basis `(mu, tau)`, `r(mu) = d iota`, `r(tau) = p iota`, `t(iota) = tau`.
fn twisted(d: i64, ring: GroundRing, p: i64) -> MackeyFunctor {
    MackeyFunctor::new(
        p,
        FGModule::free(ring, 2),
        FGModule::free(ring, 1),
        Mat::from_rows(&[vec![d, p]], 2),
        Mat::from_rows(&[vec![0], vec![1]], 1),
        Mat::identity(1),
    )
    .expect("twisted Burnside shapes")
}

/// The transposed orientation `t = (d, p)^T`, `r = (0, 1)`; isomorphic to `A_<d^{-1}>`.
pub fn twisted_transposed(d: i64, ring: GroundRing, p: i64) -> MackeyFunctor {
    MackeyFunctor::new(
        p,
        FGModule::free(ring, 2),
        FGModule::free(ring, 1),
        Mat::from_rows(&[vec![0, 1]], 2),
        Mat::from_rows(&[vec![d], vec![p]], 1),
        Mat::identity(1),
    )
    .expect("twisted Burnside shapes")
}

fn left_adjoint(b: &CpModule, p: i64) -> Result<MackeyFunctor> {
    let n = b.module.gens;
    let ring = b.module.ring;
    let coinv = FGModule::new(ring, n, b.module.rels.hstack(&b.sigma.sub(&Mat::identity(n))))?;
    MackeyFunctor::new(p, coinv, b.module.clone(), trace_matrix(&b.sigma, p), Mat::identity(n), b.sigma.clone())
}

fn right_adjoint(b: &CpModule, p: i64) -> Result<MackeyFunctor> {
    let n = b.module.gens;
    let ring = b.module.ring;
    let diff = ModuleMap::new(b.module.clone(), b.module.clone(), b.sigma.sub(&Mat::identity(n)))?;
    let (fixed, incl) = diff.kernel();
    let tr = trace_matrix(&b.sigma, p);
    let cols: Vec<Vec<i64>> =
        (0..n).map(|j| coords(ring, &incl, &tr.col(j)).expect("trace lands in the fixed points")).collect();
    let t = Mat::from_cols(&cols, fixed.gens);
    MackeyFunctor::new(p, fixed, b.module.clone(), incl, t, b.sigma.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_functors_validate() {
        for ring in [GroundRing::Integers, GroundRing::PrimeField(7)] {
            for p in [2, 3, 5] {
                let k = CpModule::trivial(ring);
                let names = vec![
                    StandardName::A,
                    StandardName::ATwisted(2),
                    StandardName::Bracket(FGModule::free(ring, 1)),
                    StandardName::L(k.clone()),
                    StandardName::R(k.clone()),
                    StandardName::L(CpModule::permutation(ring, p)),
                    StandardName::R(CpModule::permutation(ring, p)),
                    StandardName::FreeOnOrbit,
                ];
                for n in names {
                    let m = standard(&n, ring, p).unwrap();
                    assert!(m.is_valid(), "{n:?} p={p} {ring}: {:?}", m.validate());
                }
                if p == 2 {
                    for n in [StandardName::LMinus, StandardName::RMinus] {
                        assert!(standard(&n, ring, p).unwrap().is_valid());
                    }
                } else {
                    assert!(standard(&StandardName::LMinus, ring, p).is_err());
                }
            }
        }
    }

    #[test]
    fn small_diagrams() {
        let z = GroundRing::Integers;
        let r = standard(&StandardName::R(CpModule::trivial(z)), z, 5).unwrap();
        assert_eq!(r.t, Mat::from_rows(&[vec![5]], 1));
        assert_eq!(r.r, Mat::identity(1));
        let l = standard(&StandardName::L(CpModule::trivial(z)), z, 5).unwrap();
        assert_eq!(l.r, Mat::from_rows(&[vec![5]], 1));
        let rm = standard(&StandardName::RMinus, z, 2).unwrap();
        assert!(rm.top.is_zero_module());
        let lm = standard(&StandardName::LMinus, z, 2).unwrap();
        assert_eq!(lm.top.invariants(), vec![2]);
        assert!(standard(&StandardName::Bracket(FGModule::zero(z)), z, 3).unwrap().is_zero());
    }

    #[test]
    fn broken_trace_relation_is_reported() {
        let z = GroundRing::Integers;
        let mut l = standard(&StandardName::L(CpModule::trivial(z)), z, 3).unwrap();
        l.r = Mat::identity(1);
        assert_eq!(l.validate(), vec![super::super::TRACE_RELATION.to_string()]);
    }
}
