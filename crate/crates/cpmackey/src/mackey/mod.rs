//! Mackey functors for the cyclic group of prime order, as two-level diagrams.
//!
//! Column convention throughout: `r` is a `bottom.gens x top.gens` matrix,
//! `t` is `top.gens x bottom.gens`, `sigma` acts on the bottom generators.

mod box_product;
mod iso;
mod standard;
pub mod table;

pub use box_product::{box_product, dress_check, pairing_from_box, unit_pairing, DressPairing};
pub use box_product::{EQUIVARIANCE, FROBENIUS_LEFT, FROBENIUS_RIGHT, PAIRING_WELL_DEFINED, RESTRICTION_SQUARE};
pub use iso::{
    hom_lattice, iso, iso_invariants, iso_with_seed, stabilized_functor, stabilized_witness, twisted_criterion,
    twisted_iso, IsoResult, MackeyMorphism, TwistedWitness,
};
pub use standard::{standard, twisted_transposed, CpModule, StandardName};

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::module::{is_zero_map, maps_relations, reduce_mat, FGModule};
use crate::ring::GroundRing;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MackeyFunctor {
    pub ring: GroundRing,
    pub p: i64,
    pub top: FGModule,
    pub bottom: FGModule,
    pub r: Mat,
    pub t: Mat,
    pub sigma: Mat,
}

/// Names of the invariants checked by `validate`.
pub const WELL_DEFINED: &str = "well-defined maps";
pub const SIGMA_ORDER: &str = "sigma has order p";
pub const RESTRICTION_INVARIANT: &str = "restriction lands in fixed points";
pub const TRANSFER_INVARIANT: &str = "transfer kills sigma - 1";
pub const TRACE_RELATION: &str = "trace relation";

impl MackeyFunctor {
    pub fn new(p: i64, top: FGModule, bottom: FGModule, r: Mat, t: Mat, sigma: Mat) -> Result<Self> {
        if top.ring != bottom.ring {
            return Err(Error::InvalidRing("levels over different rings".into()));
        }
        let shapes = [
            (r.rows(), r.cols(), bottom.gens, top.gens, "r"),
            (t.rows(), t.cols(), top.gens, bottom.gens, "t"),
            (sigma.rows(), sigma.cols(), bottom.gens, bottom.gens, "sigma"),
        ];
        for (rr, rc, er, ec, name) in shapes {
            if (rr, rc) != (er, ec) {
                return Err(Error::DimensionMismatch(format!("{name} is {rr}x{rc}, expected {er}x{ec}")));
            }
        }
        let ring = top.ring;
        Ok(MackeyFunctor {
            ring,
            p,
            r: reduce_mat(ring, &r),
            t: reduce_mat(ring, &t),
            sigma: reduce_mat(ring, &sigma),
            top,
            bottom,
        })
    }

    pub fn zero(ring: GroundRing, p: i64) -> Self {
        let z = FGModule::zero(ring);
        MackeyFunctor {
            ring,
            p,
            top: z.clone(),
            bottom: z,
            r: Mat::zeros(0, 0),
            t: Mat::zeros(0, 0),
            sigma: Mat::zeros(0, 0),
        }
    }

    /// `sum_{i<p} sigma^i` on the bottom generators.
    pub fn trace(&self) -> Mat {
        trace_matrix(&self.sigma, self.p)
    }

    /// Names of violated invariants; empty means the diagram is a Mackey functor.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let wd = maps_relations(&self.top, &self.bottom, &self.r)
            && maps_relations(&self.bottom, &self.top, &self.t)
            && maps_relations(&self.bottom, &self.bottom, &self.sigma);
        if !wd {
            out.push(WELL_DEFINED.to_string());
        }
        let n = self.bottom.gens;
        let sp = self.sigma.pow(self.p as u32);
        if !is_zero_map(&self.bottom, &sp.sub(&Mat::identity(n))) {
            out.push(SIGMA_ORDER.to_string());
        }
        if !is_zero_map(&self.bottom, &self.sigma.mul(&self.r).sub(&self.r)) {
            out.push(RESTRICTION_INVARIANT.to_string());
        }
        if !is_zero_map(&self.top, &self.t.mul(&self.sigma).sub(&self.t)) {
            out.push(TRANSFER_INVARIANT.to_string());
        }
        if !is_zero_map(&self.bottom, &self.r.mul(&self.t).sub(&self.trace())) {
            out.push(TRACE_RELATION.to_string());
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.top.is_zero_module() && self.bottom.is_zero_module()
    }

    pub fn direct_sum(&self, o: &MackeyFunctor) -> MackeyFunctor {
        assert_eq!((self.ring, self.p), (o.ring, o.p), "direct sum of incompatible functors");
        MackeyFunctor {
            ring: self.ring,
            p: self.p,
            top: self.top.direct_sum(&o.top),
            bottom: self.bottom.direct_sum(&o.bottom),
            r: self.r.block_diag(&o.r),
            t: self.t.block_diag(&o.t),
            sigma: self.sigma.block_diag(&o.sigma),
        }
    }

    /// Isomorphic functor whose levels are presented in canonical cyclic form.
    pub fn canonical_form(&self) -> (MackeyFunctor, Canonicalization) {
        let ct = self.top.canonical();
        let cb = self.bottom.canonical();
        let top = FGModule::cyclic_sum(self.ring, &ct.invariants);
        let bottom = FGModule::cyclic_sum(self.ring, &cb.invariants);
        let r = cb.proj.mul(&self.r).mul(&ct.incl);
        let t = ct.proj.mul(&self.t).mul(&cb.incl);
        let sigma = cb.proj.mul(&self.sigma).mul(&cb.incl);
        let m = MackeyFunctor {
            ring: self.ring,
            p: self.p,
            r: reduce_mat(self.ring, &r),
            t: reduce_mat(self.ring, &t),
            sigma: reduce_mat(self.ring, &sigma),
            top,
            bottom,
        };
        let c = Canonicalization { top_proj: ct.proj, top_incl: ct.incl, bottom_proj: cb.proj, bottom_incl: cb.incl };
        (m, c)
    }

    /// Short label of the level invariants, e.g. `Z+Z | Z`.
    pub fn describe(&self) -> String {
        format!("{} | {}", self.top.describe(), self.bottom.describe())
    }

    /// The shifted functor `M_o`: `(M(o), M(o)^p)` with fold, diagonal and cyclic permutation.
    pub fn shift(&self) -> MackeyFunctor {
        shift_of_module(&self.bottom, self.p)
    }
}

/// Coordinate changes between a functor and its canonical form.
#[derive(Clone, Debug)]
pub struct Canonicalization {
    pub top_proj: Mat,
    pub top_incl: Mat,
    pub bottom_proj: Mat,
    pub bottom_incl: Mat,
}

pub(crate) fn trace_matrix(sigma: &Mat, p: i64) -> Mat {
    let n = sigma.rows();
    let mut acc = Mat::zeros(n, n);
    let mut pw = Mat::identity(n);
    for _ in 0..p {
        acc = acc.add(&pw);
        pw = pw.mul(sigma);
    }
    acc
}

/// Cyclic permutation of `p` blocks of size `n`: block `i` goes to block `i + 1`.
pub(crate) fn block_permutation(n: usize, p: usize) -> Mat {
    let mut m = Mat::zeros(n * p, n * p);
    for i in 0..p {
        let j = (i + 1) % p;
        for k in 0..n {
            m[(j * n + k, i * n + k)] = 1;
        }
    }
    m
}

pub(crate) fn shift_of_module(b: &FGModule, p: i64) -> MackeyFunctor {
    let n = b.gens;
    let pu = p as usize;
    let mut bottom = FGModule::zero(b.ring);
    for _ in 0..pu {
        bottom = bottom.direct_sum(b);
    }
    let mut fold = Mat::zeros(n, n * pu);
    let mut diag = Mat::zeros(n * pu, n);
    for i in 0..pu {
        fold.set_block(0, i * n, &Mat::identity(n));
        diag.set_block(i * n, 0, &Mat::identity(n));
    }
    MackeyFunctor { ring: b.ring, p, top: b.clone(), bottom, r: diag, t: fold, sigma: block_permutation(n, pu) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_of_permutation() {
        let s = block_permutation(1, 3);
        assert_eq!(trace_matrix(&s, 3), Mat::from_rows(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]], 3));
        assert_eq!(s.pow(3), Mat::identity(3));
    }
}
