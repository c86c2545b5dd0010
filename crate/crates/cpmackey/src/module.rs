//! Finitely presented modules over a ground ring, maps between them, and Hom.
//!
//! A module with `gens` generators and relation columns `rels` is
//! `Z^gens / (span(rels) + m Z^gens)` where `m` is the ring modulus.

use crate::error::{Error, Result};
use crate::linalg::{coords, preimage, smith_normal_form, smith_normal_form_mod, span_basis, Snf};
use crate::matrix::Mat;
use crate::ring::{gcd, GroundRing};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FGModule {
    pub ring: GroundRing,
    pub gens: usize,
    /// `gens x k`, columns are relations.
    pub rels: Mat,
}

/// Canonical decomposition `M = (+) Z/invariants[i]` with `0` meaning a free summand.
///
/// `proj` (`k x gens`) sends original coordinates to canonical ones; `incl`
/// (`gens x k`) sends canonical generators back. `proj * incl = I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub invariants: Vec<i64>,
    pub proj: Mat,
    pub incl: Mat,
}

impl Canonical {
    /// Reduce canonical coordinates into `0..d_i` (free coordinates untouched).
    pub fn reduce(&self, y: &[i64]) -> Vec<i64> {
        y.iter().zip(&self.invariants).map(|(&x, &d)| if d == 0 { x } else { x.rem_euclid(d) }).collect()
    }
}

fn ring_snf(ring: GroundRing, a: &Mat) -> Snf {
    match ring {
        GroundRing::Integers => smith_normal_form(a),
        GroundRing::ModRing(n) => smith_normal_form(&a.hstack(&Mat::scalar(a.rows(), n))),
        GroundRing::PrimeField(q) => smith_normal_form_mod(a, q),
    }
}

impl FGModule {
    pub fn new(ring: GroundRing, gens: usize, rels: Mat) -> Result<Self> {
        if rels.rows() != gens {
            return Err(Error::DimensionMismatch(format!(
                "relation matrix has {} rows for {} generators",
                rels.rows(),
                gens
            )));
        }
        Ok(FGModule { ring, gens, rels: reduce_mat(ring, &rels) })
    }

    pub fn free(ring: GroundRing, gens: usize) -> Self {
        FGModule { ring, gens, rels: Mat::zeros(gens, 0) }
    }

    pub fn zero(ring: GroundRing) -> Self {
        FGModule::free(ring, 0)
    }

    /// `(+) Z/orders[i]` with `0` for a free summand.
    pub fn cyclic_sum(ring: GroundRing, orders: &[i64]) -> Self {
        let cols: Vec<Vec<i64>> = orders
            .iter()
            .enumerate()
            .filter(|(_, &o)| o != 0)
            .map(|(i, &o)| {
                let mut c = vec![0; orders.len()];
                c[i] = o;
                c
            })
            .collect();
        FGModule { ring, gens: orders.len(), rels: reduce_mat(ring, &Mat::from_cols(&cols, orders.len())) }
    }

    pub fn canonical(&self) -> Canonical {
        let snf = ring_snf(self.ring, &self.rels);
        let m = match self.ring {
            GroundRing::PrimeField(q) => q,
            _ => self.ring.modulus(),
        };
        let mut invariants = Vec::new();
        let mut keep = Vec::new();
        for i in 0..self.gens {
            let d = if i < snf.rank { snf.d[(i, i)] } else { m };
            if d != 1 {
                invariants.push(d);
                keep.push(i);
            }
        }
        let proj = snf.u.select_rows(&keep);
        let incl = snf.u_inv.select_cols(&keep);
        let (proj, incl) = match self.ring {
            GroundRing::PrimeField(q) => (proj.map(|x| x.rem_euclid(q)), incl.map(|x| x.rem_euclid(q))),
            _ => (proj, incl),
        };
        Canonical { invariants, proj, incl }
    }

    /// Canonical invariants: `[d_1, ..., d_k]` with `d_i | d_{i+1}`, free summands last as `0`.
    pub fn invariants(&self) -> Vec<i64> {
        self.canonical().invariants
    }

    pub fn is_zero_module(&self) -> bool {
        self.invariants().is_empty()
    }

    /// Rank over a field (number of invariants).
    pub fn dimension(&self) -> usize {
        self.invariants().len()
    }

    /// Order of the module, `None` if infinite.
    pub fn order(&self) -> Option<i64> {
        let inv = self.invariants();
        if inv.contains(&0) {
            None
        } else {
            Some(inv.iter().product())
        }
    }

    pub fn relation_basis(&self) -> Mat {
        span_basis(self.ring, self.gens, &self.rels)
    }

    /// Whether the coordinate vector `v` represents zero.
    pub fn is_zero(&self, v: &[i64]) -> bool {
        coords(self.ring, &self.relation_basis(), v).is_some()
    }

    pub fn equal(&self, a: &[i64], b: &[i64]) -> bool {
        let d: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero(&d)
    }

    /// Isomorphism of abstract modules (equality of canonical invariants).
    pub fn isomorphic(&self, other: &FGModule) -> bool {
        self.ring == other.ring && self.invariants() == other.invariants()
    }

    /// Subquotient `(span(sub) + L) / (L + span(extra))` with inclusion matrix into `self`.
    pub fn subquotient(&self, sub: &Mat, extra: &Mat) -> (FGModule, Mat) {
        let basis = span_basis(self.ring, self.gens, &sub.hstack(&self.rels));
        self.subquotient_of_basis(basis, extra)
    }

    fn subquotient_of_basis(&self, basis: Mat, extra: &Mat) -> (FGModule, Mat) {
        let mut gens = self.rels.hstack(extra);
        if let GroundRing::ModRing(n) = self.ring {
            gens = gens.hstack(&Mat::scalar(self.gens, n));
        }
        let rel_cols: Vec<Vec<i64>> = (0..gens.cols())
            .map(|j| coords(self.ring, &basis, &gens.col(j)).expect("relation outside the submodule it presents"))
            .collect();
        let rels = Mat::from_cols(&rel_cols, basis.cols());
        let module = FGModule { ring: self.ring, gens: basis.cols(), rels: reduce_mat(self.ring, &rels) };
        (module, basis)
    }

    pub fn direct_sum(&self, other: &FGModule) -> FGModule {
        assert_eq!(self.ring, other.ring, "direct sum over different rings");
        FGModule { ring: self.ring, gens: self.gens + other.gens, rels: self.rels.block_diag(&other.rels) }
    }

    /// Tensor product over the ring; generator `(i, j)` has index `i * other.gens + j`.
    pub fn tensor(&self, other: &FGModule) -> FGModule {
        assert_eq!(self.ring, other.ring, "tensor over different rings");
        let left = self.rels.kron(&Mat::identity(other.gens));
        let right = Mat::identity(self.gens).kron(&other.rels);
        FGModule { ring: self.ring, gens: self.gens * other.gens, rels: left.hstack(&right) }
    }

    /// Hom into another module; generator maps are expressed in original coordinates.
    pub fn hom_space(&self, other: &FGModule) -> Result<HomSpace> {
        hom_space(self, other)
    }

    pub fn describe(&self) -> String {
        describe_invariants(self.ring, &self.invariants())
    }
}

pub fn describe_invariants(ring: GroundRing, inv: &[i64]) -> String {
    if inv.is_empty() {
        return "0".to_string();
    }
    let parts: Vec<String> = inv
        .iter()
        .map(|&d| match (d, ring) {
            (0, _) => "Z".to_string(),
            (q, GroundRing::PrimeField(f)) if q == f => format!("F{f}"),
            (d, _) => format!("Z/{d}"),
        })
        .collect();
    parts.join("+")
}

impl fmt::Display for FGModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

pub(crate) fn reduce_mat(ring: GroundRing, m: &Mat) -> Mat {
    match ring {
        GroundRing::Integers => m.clone(),
        _ => m.map(|x| ring.reduce(x)),
    }
}

/// A module map given on generators: `matrix` is `target.gens x source.gens`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleMap {
    pub source: FGModule,
    pub target: FGModule,
    pub matrix: Mat,
}

impl ModuleMap {
    pub fn new(source: FGModule, target: FGModule, matrix: Mat) -> Result<Self> {
        if matrix.rows() != target.gens || matrix.cols() != source.gens {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{} but modules have {} -> {} generators",
                matrix.rows(),
                matrix.cols(),
                source.gens,
                target.gens
            )));
        }
        let matrix = reduce_mat(target.ring, &matrix);
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn identity(m: &FGModule) -> Self {
        ModuleMap { source: m.clone(), target: m.clone(), matrix: Mat::identity(m.gens) }
    }

    pub fn zero(source: &FGModule, target: &FGModule) -> Self {
        ModuleMap { source: source.clone(), target: target.clone(), matrix: Mat::zeros(target.gens, source.gens) }
    }

    /// Every relation of the source lands in the relations of the target.
    pub fn is_well_defined(&self) -> bool {
        maps_relations(&self.source, &self.target, &self.matrix)
    }

    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        assert_eq!(first.target.gens, self.source.gens, "composition shape mismatch");
        ModuleMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: reduce_mat(self.target.ring, &self.matrix.mul(&first.matrix)),
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_map(&self.target, &self.matrix)
    }

    pub fn equals(&self, other: &ModuleMap) -> bool {
        self.matrix.rows() == other.matrix.rows()
            && self.matrix.cols() == other.matrix.cols()
            && is_zero_map(&self.target, &self.matrix.sub(&other.matrix))
    }

    /// Kernel as a module together with its inclusion matrix into the source.
    pub fn kernel(&self) -> (FGModule, Mat) {
        let k = preimage(self.source.ring, &self.matrix, &self.target.relation_basis());
        self.source.subquotient_of_basis(k, &Mat::zeros(self.source.gens, 0))
    }

    pub fn cokernel(&self) -> FGModule {
        FGModule {
            ring: self.target.ring,
            gens: self.target.gens,
            rels: self.target.rels.hstack(&reduce_mat(self.target.ring, &self.matrix)),
        }
    }

    pub fn image(&self) -> FGModule {
        self.target.subquotient(&self.matrix, &Mat::zeros(self.target.gens, 0)).0
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_zero_module()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_zero_module()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Matrix in canonical coordinates of source and target.
    pub fn canonical_matrix(&self) -> Mat {
        let cs = self.source.canonical();
        let ct = self.target.canonical();
        let m = ct.proj.mul(&self.matrix).mul(&cs.incl);
        let cols: Vec<Vec<i64>> = (0..m.cols()).map(|j| ct.reduce(&m.col(j))).collect();
        Mat::from_cols(&cols, ct.invariants.len())
    }
}

pub(crate) fn is_zero_map(target: &FGModule, matrix: &Mat) -> bool {
    if matrix.is_zero() {
        return true;
    }
    let basis = target.relation_basis();
    (0..matrix.cols()).all(|j| coords(target.ring, &basis, &matrix.col(j)).is_some())
}

pub(crate) fn maps_relations(source: &FGModule, target: &FGModule, matrix: &Mat) -> bool {
    is_zero_map(target, &matrix.mul(&source.rels))
}

/// Hom(M, N) as a module with generator maps in original coordinates.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub module: FGModule,
    pub maps: Vec<Mat>,
}

impl HomSpace {
    /// The map `sum c_k maps[k]`.
    pub fn combine(&self, c: &[i64]) -> Mat {
        let mut out = Mat::zeros(self.maps.first().map_or(0, |m| m.rows()), self.maps.first().map_or(0, |m| m.cols()));
        for (k, m) in self.maps.iter().enumerate() {
            if c[k] != 0 {
                out = out.add(&m.scale(c[k]));
            }
        }
        out
    }
}

/// Hom between cyclic summands: `(order, generator image)` of `Hom(Z/a, Z/b)`, `None` if zero.
fn cyclic_hom(a: i64, b: i64) -> Option<(i64, i64)> {
    match (a, b) {
        (0, 0) => Some((0, 1)),
        (0, b) => Some((b, 1)),
        (_, 0) => None,
        (a, b) => {
            let g = gcd(a, b);
            if g == 1 {
                None
            } else {
                Some((g, b / g))
            }
        }
    }
}

pub fn hom_space(m: &FGModule, n: &FGModule) -> Result<HomSpace> {
    if m.ring != n.ring {
        return Err(Error::InvalidRing(format!("Hom between modules over {} and {}", m.ring, n.ring)));
    }
    let cm = m.canonical();
    let cn = n.canonical();
    let mut orders = Vec::new();
    let mut maps = Vec::new();
    for (i, &a) in cm.invariants.iter().enumerate() {
        for (j, &b) in cn.invariants.iter().enumerate() {
            if let Some((ord, g)) = cyclic_hom(a, b) {
                let mut e = Mat::zeros(cn.invariants.len(), cm.invariants.len());
                e[(j, i)] = g;
                orders.push(ord);
                maps.push(reduce_mat(n.ring, &cn.incl.mul(&e).mul(&cm.proj)));
            }
        }
    }
    Ok(HomSpace { module: FGModule::cyclic_sum(m.ring, &orders), maps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_of_z2_plus_z3() {
        let m = FGModule::cyclic_sum(GroundRing::Integers, &[2, 3]);
        assert_eq!(m.invariants(), vec![6]);
        let f = FGModule::cyclic_sum(GroundRing::Integers, &[0, 4]);
        assert_eq!(f.invariants(), vec![4, 0]);
    }

    #[test]
    fn field_and_mod_ring_canonical() {
        let f7 = GroundRing::PrimeField(7);
        let m = FGModule::new(f7, 3, Mat::from_rows(&[vec![1], vec![2], vec![3]], 1)).unwrap();
        assert_eq!(m.invariants(), vec![7, 7]);
        let z6 = GroundRing::ModRing(6);
        let n = FGModule::new(z6, 1, Mat::from_rows(&[vec![4]], 1)).unwrap();
        assert_eq!(n.invariants(), vec![2]);
    }

    #[test]
    fn hom_examples() {
        let z = GroundRing::Integers;
        let k = FGModule::free(z, 1);
        assert_eq!(hom_space(&k, &k).unwrap().module.invariants(), vec![0]);
        let z2 = FGModule::cyclic_sum(z, &[2]);
        assert!(hom_space(&z2, &k).unwrap().module.is_zero_module());
        let z4 = FGModule::cyclic_sum(z, &[4]);
        let h = hom_space(&z4, &z2).unwrap();
        assert_eq!(h.module.invariants(), vec![2]);
    }

    #[test]
    fn kernel_and_cokernel_of_multiplication() {
        let z = GroundRing::Integers;
        let z4 = FGModule::cyclic_sum(z, &[4]);
        let f = ModuleMap::new(z4.clone(), z4.clone(), Mat::from_rows(&[vec![2]], 1)).unwrap();
        assert!(f.is_well_defined());
        assert_eq!(f.kernel().0.invariants(), vec![2]);
        assert_eq!(f.cokernel().invariants(), vec![2]);
        assert_eq!(f.image().invariants(), vec![2]);
    }
}
