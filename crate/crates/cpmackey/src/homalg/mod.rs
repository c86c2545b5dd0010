//! Homological algebra over group rings `k[pi]` for finite `pi`: resolutions, Ext with
//! cup products, the Eilenberg E_2 page, and the collapse analysis for BO(2).
//!
//! Modules are free over the ground ring; group elements act on column vectors.

mod ext;
mod resolution;
mod spectral;
#[cfg(test)]
mod tests;

pub use ext::{ext, ext_group, CupProducts, ExtClass, ExtGroup, GradedCoefficients};
pub use resolution::{
    kernel_resolution, periodic_resolution, projective_resolution, rel_injective_resolution, tensor_of_resolutions,
    Resolution, ResolutionKind,
};
pub use spectral::{
    bo2_page, collapse_report, eilenberg_e2, BigradedPage, Certificate, CollapseReport, LeibnizData, TrigradedPage,
};

use crate::error::{Error, Result};
use crate::linalg::kernel;
use crate::matrix::Mat;
use crate::module::FGModule;
use crate::ring::GroundRing;
use serde::Serialize;
use std::collections::VecDeque;

/// Reduce entries into the ring's standard range (no-op over the integers).
pub(crate) fn red(ring: GroundRing, m: &Mat) -> Mat {
    match ring {
        GroundRing::Integers => m.clone(),
        _ => m.map(|x| ring.reduce(x)),
    }
}

/// A finite group by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    pub name: String,
    pub table: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
    /// `Some(n)` when the group is cyclic of order n with generator `generators[0]`.
    pub cyclic_order: Option<usize>,
}

impl FiniteGroup {
    /// Validates identity, associativity and inverses.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self> {
        let n = table.len();
        let bad = |m: &str| Err(Error::InvalidArgument(format!("{name}: {m}")));
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("table must be square with entries in range");
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return bad("element 0 must be the identity");
        }
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == 0) {
                return bad("missing inverse");
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad("not associative");
                    }
                }
            }
        }
        let g = FiniteGroup { name: name.to_string(), table, generators, cyclic_order: None };
        if g.closure(&g.generators).len() != n {
            return bad("generators do not generate");
        }
        Ok(g)
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let generators = if n > 1 { vec![1] } else { vec![] };
        FiniteGroup { name: format!("Z/{n}"), table, generators, cyclic_order: Some(n) }
    }

    /// `G x H` with `(g, h)` at index `g |H| + h`.
    pub fn product(&self, o: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order(), o.order());
        let table = (0..n * m)
            .map(|x| (0..n * m).map(|y| self.mul(x / m, y / m) * m + o.mul(x % m, y % m)).collect())
            .collect();
        let mut generators: Vec<usize> = self.generators.iter().map(|&g| g * m).collect();
        generators.extend(o.generators.iter().copied());
        FiniteGroup { name: format!("{} x {}", self.name, o.name), table, generators, cyclic_order: None }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).expect("validated group")
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut out = vec![0];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out
    }

    /// `k[pi]` is semisimple iff k is a field of characteristic prime to `|pi|`.
    pub fn semisimple_over(&self, ring: GroundRing) -> bool {
        matches!(ring, GroundRing::PrimeField(q) if self.order() as i64 % q != 0)
    }
}

/// A left `k[pi]`-module, free of finite rank over k, with the matrix of every element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupRingModule {
    pub ring: GroundRing,
    pub group: FiniteGroup,
    pub module: FGModule,
    pub action: Vec<Mat>,
}

impl GroupRingModule {
    /// Extends generator matrices to all elements and checks them against the table.
    pub fn new(ring: GroundRing, group: FiniteGroup, dim: usize, gen_action: &[Mat]) -> Result<Self> {
        if gen_action.len() != group.generators.len() {
            return Err(Error::DimensionMismatch("one matrix per generator".into()));
        }
        let mut action: Vec<Option<Mat>> = vec![None; group.order()];
        action[0] = Some(Mat::identity(dim));
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&g, m) in group.generators.iter().zip(gen_action) {
                if m.rows() != dim || m.cols() != dim {
                    return Err(Error::DimensionMismatch(format!("action matrices must be {dim} x {dim}")));
                }
                let y = group.mul(g, x);
                let my = red(ring, &m.mul(action[x].as_ref().expect("visited")));
                match &action[y] {
                    None => {
                        action[y] = Some(my);
                        queue.push_back(y);
                    }
                    Some(prev) if *prev != my => {
                        return Err(Error::InvalidArgument("action violates the group relations".into()))
                    }
                    _ => {}
                }
            }
        }
        let action: Vec<Mat> = action.into_iter().map(|m| m.expect("generators generate")).collect();
        let out = GroupRingModule { ring, module: FGModule::free(ring, dim), group, action };
        out.validate()?;
        Ok(out)
    }

    fn from_all(ring: GroundRing, group: FiniteGroup, action: Vec<Mat>) -> Self {
        let dim = action[0].rows();
        GroupRingModule { ring, module: FGModule::free(ring, dim), group, action }
    }

    /// Homomorphism property on the whole table, which also gives invertibility.
    pub fn validate(&self) -> Result<()> {
        let n = self.group.order();
        for a in 0..n {
            for b in 0..n {
                if red(self.ring, &self.action[a].mul(&self.action[b])) != self.action[self.group.mul(a, b)] {
                    return Err(Error::InvalidArgument(format!("action not multiplicative at ({a}, {b})")));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.module.gens
    }

    pub fn trivial(ring: GroundRing, group: &FiniteGroup) -> Self {
        GroupRingModule::from_all(ring, group.clone(), vec![Mat::identity(1); group.order()])
    }

    /// The rank-one module on which a generator of a cyclic group of even order acts by -1.
    pub fn sign(ring: GroundRing, group: &FiniteGroup) -> Result<Self> {
        match group.cyclic_order {
            Some(n) if n % 2 == 0 => {
                let action = (0..n).map(|g| Mat::scalar(1, ring.reduce(if g % 2 == 0 { 1 } else { -1 }))).collect();
                Ok(GroupRingModule::from_all(ring, group.clone(), action))
            }
            _ => Err(Error::Unsupported("the sign module needs a cyclic group of even order".into())),
        }
    }

    /// `k[pi]^r` with basis `g e_i` at index `i |pi| + g`.
    pub fn free(ring: GroundRing, group: &FiniteGroup, r: usize) -> Self {
        let n = group.order();
        let action = (0..n)
            .map(|h| {
                let mut m = Mat::zeros(r * n, r * n);
                for i in 0..r {
                    for g in 0..n {
                        m[(i * n + group.mul(h, g), i * n + g)] = 1;
                    }
                }
                m
            })
            .collect();
        GroupRingModule::from_all(ring, group.clone(), action)
    }

    pub fn zero(ring: GroundRing, group: &FiniteGroup) -> Self {
        GroupRingModule::from_all(ring, group.clone(), vec![Mat::zeros(0, 0); group.order()])
    }

    /// `Hom_k(M, k)` with `g` acting by `rho(g^{-1})^T`.
    pub fn dual(&self) -> Self {
        let action = (0..self.group.order()).map(|g| self.action[self.group.inverse(g)].transpose()).collect();
        GroupRingModule::from_all(self.ring, self.group.clone(), action)
    }

    /// `M (x) N` with the diagonal action.
    pub fn tensor(&self, o: &GroupRingModule) -> Result<Self> {
        if self.group != o.group || self.ring != o.ring {
            return Err(Error::InvalidArgument("tensor over different groups or rings".into()));
        }
        let action = self.action.iter().zip(&o.action).map(|(a, b)| red(self.ring, &a.kron(b))).collect();
        Ok(GroupRingModule::from_all(self.ring, self.group.clone(), action))
    }

    /// `M (x) N` over `G x H`.
    pub fn external_tensor(&self, o: &GroupRingModule) -> Self {
        let g = self.group.product(&o.group);
        let m = o.group.order();
        let action = (0..g.order()).map(|x| red(self.ring, &self.action[x / m].kron(&o.action[x % m]))).collect();
        GroupRingModule::from_all(self.ring, g, action)
    }

    /// Basis of the fixed points, as columns.
    pub fn fixed_points(&self) -> Mat {
        let d = self.dim();
        let mut stacked = Mat::zeros(0, d);
        for &g in &self.group.generators {
            stacked = stacked.vstack(&self.action[g].sub(&Mat::identity(d)));
        }
        if stacked.rows() == 0 {
            return Mat::identity(d);
        }
        kernel(&red(self.ring, &stacked), self.ring)
    }

    /// `Hom_{k[pi]}(M, N)` as a module, via the commutation equations `f rho_M(g) = rho_N(g) f`.
    pub fn hom(&self, n: &GroupRingModule) -> Result<FGModule> {
        let f = self.dual().tensor(n)?;
        Ok(FGModule::free(self.ring, f.fixed_points().cols()))
    }
}
