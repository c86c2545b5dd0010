//! Ext over `k[pi]` from a projective resolution, and cup products on
//! `Ext^*(k, N^*)` for a graded coefficient ring `N^*` from a lifted diagonal.

use super::resolution::{homology, projective_resolution, tensor_complex, Resolution, ResolutionKind, TensorComplex};
use super::{red, FiniteGroup, GroupRingModule};
use crate::error::{Error, Result};
use crate::linalg::{coords, solve_linear};
use crate::matrix::Mat;
use crate::module::{Canonical, FGModule};
use crate::ring::GroundRing;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Cochain differential `delta^n : Hom(P_n, N) -> Hom(P_{n+1}, N)`, with
/// `Hom(P_n, N) = N^{rank P_n}` laid out generator by generator.
pub(crate) fn cochain_differential(res: &Resolution, n: usize, coeff: &GroupRingModule) -> Mat {
    let dn = coeff.dim();
    let (src, tgt) = (&res.terms[n], &res.terms[n + 1]);
    let d = &res.differentials[n];
    let mut out = Mat::zeros(tgt.rank * dn, src.rank * dn);
    for (j, &b) in tgt.gen_index.iter().enumerate() {
        for (row, &(i, g)) in src.orbit.iter().enumerate() {
            let c = d[(row, b)];
            if c != 0 {
                let blk = out.block(j * dn, i * dn, dn, dn).add(&coeff.action[g].scale(c));
                out.set_block(j * dn, i * dn, &blk);
            }
        }
    }
    red(coeff.ring, &out)
}

/// `Ext^s` as a subquotient of the cochains, with the cocycle basis and canonical form.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    pub s: usize,
    pub module: FGModule,
    /// Columns span the cocycles (together with nothing else): `module` generators.
    pub cocycles: Mat,
    pub canonical: Canonical,
}

impl ExtGroup {
    pub fn invariants(&self) -> &[i64] {
        &self.canonical.invariants
    }

    pub fn is_zero(&self) -> bool {
        self.canonical.invariants.is_empty()
    }

    /// Canonical coordinates of a cocycle, or `None` if it is not a cocycle.
    pub fn class_of(&self, ring: GroundRing, cochain: &[i64]) -> Option<Vec<i64>> {
        let v: Vec<i64> = cochain.iter().map(|&x| ring.reduce(x)).collect();
        let y = coords(ring, &self.cocycles, &v)?;
        Some(self.canonical.reduce(&self.canonical.proj.mul_vec(&y)))
    }

    /// A cocycle representing canonical coordinates `z`.
    pub fn representative(&self, ring: GroundRing, z: &[i64]) -> Vec<i64> {
        let y = self.canonical.incl.mul_vec(z);
        self.cocycles.mul_vec(&y).into_iter().map(|x| ring.reduce(x)).collect()
    }
}

/// `Ext^s_{k[pi]}(M, N)` from a projective resolution of `M` of length at least `s + 1`.
pub fn ext_group(res: &Resolution, coeff: &GroupRingModule, s: usize) -> Result<ExtGroup> {
    if res.kind != ResolutionKind::Projective {
        return Err(Error::InvalidArgument("Ext needs a projective resolution".into()));
    }
    if res.resolved.group != coeff.group || res.resolved.ring != coeff.ring {
        return Err(Error::InvalidArgument("resolution and coefficients over different rings".into()));
    }
    let ring = coeff.ring;
    let dn = coeff.dim();
    if s > res.length() {
        return if res.finite {
            Ok(zero_group(ring, s))
        } else {
            Err(Error::InvalidArgument(format!("resolution too short for Ext^{s}")))
        };
    }
    if s == res.length() && !res.finite {
        return Err(Error::InvalidArgument(format!("resolution too short for Ext^{s}")));
    }
    let dim = res.terms[s].rank * dn;
    let incoming = if s == 0 { Mat::zeros(dim, 0) } else { cochain_differential(res, s - 1, coeff) };
    let outgoing = if s < res.length() { cochain_differential(res, s, coeff) } else { Mat::zeros(0, dim) };
    let (module, cocycles) = homology(ring, &incoming, &outgoing, dim);
    let canonical = module.canonical();
    Ok(ExtGroup { s, module, cocycles, canonical })
}

fn zero_group(ring: GroundRing, s: usize) -> ExtGroup {
    let module = FGModule::zero(ring);
    let canonical = module.canonical();
    ExtGroup { s, module, cocycles: Mat::zeros(0, 0), canonical }
}

/// `Ext^s_{k[pi]}(M, N)`. Over a field of characteristic prime to `|pi|` this is Hom
/// in degree 0 and zero above; otherwise it is computed from a projective resolution.
pub fn ext(m: &GroupRingModule, n: &GroupRingModule, s: usize) -> Result<FGModule> {
    if m.group.semisimple_over(m.ring) {
        return if s == 0 { m.hom(n) } else { Ok(FGModule::zero(m.ring)) };
    }
    let res = projective_resolution(m, s + 1)?;
    Ok(ext_group(&res, n, s)?.module)
}

/// A graded commutative coefficient ring `N^*` of `k[pi]`-modules with multiplication
/// maps `N^a (x) N^b -> N^{a+b}`.
#[derive(Clone, Debug)]
pub struct GradedCoefficients {
    pub ring: GroundRing,
    pub group: FiniteGroup,
    pub modules: Vec<GroupRingModule>,
    pub mult: BTreeMap<(usize, usize), Mat>,
}

impl GradedCoefficients {
    pub fn new(modules: Vec<GroupRingModule>, mult: BTreeMap<(usize, usize), Mat>) -> Result<Self> {
        let first = modules.first().ok_or_else(|| Error::InvalidArgument("no coefficient modules".into()))?;
        let (ring, group) = (first.ring, first.group.clone());
        for (&(a, b), m) in &mult {
            if a + b >= modules.len() {
                continue;
            }
            let (x, y, z) = (&modules[a], &modules[b], &modules[a + b]);
            if m.rows() != z.dim() || m.cols() != x.dim() * y.dim() {
                return Err(Error::DimensionMismatch(format!("multiplication N^{a} x N^{b}")));
            }
            let xy = x.tensor(y)?;
            for g in 0..group.order() {
                if red(ring, &m.mul(&xy.action[g])) != red(ring, &z.action[g].mul(m)) {
                    return Err(Error::InvalidArgument(format!("multiplication N^{a} x N^{b} not equivariant")));
                }
            }
        }
        Ok(GradedCoefficients { ring, group, modules, mult })
    }

    /// `Z[x]` (or `F_q[x]`), `|x| = 2`, with the generator of `Z/2` acting by `-1` on `x`:
    /// `N^t` is trivial for `t = 0 mod 4`, the sign module for `t = 2 mod 4`, zero for `t` odd.
    pub fn sign_polynomial(ring: GroundRing, tmax: usize) -> Self {
        let group = FiniteGroup::cyclic(2);
        let modules: Vec<GroupRingModule> = (0..=tmax)
            .map(|t| match t % 4 {
                0 => GroupRingModule::trivial(ring, &group),
                2 => GroupRingModule::sign(ring, &group).expect("order two"),
                _ => GroupRingModule::zero(ring, &group),
            })
            .collect();
        let mut mult = BTreeMap::new();
        for a in 0..=tmax {
            for b in 0..=tmax - a {
                let (x, y, z) = (modules[a].dim(), modules[b].dim(), modules[a + b].dim());
                let m = if x * y * z == 1 { Mat::identity(1) } else { Mat::zeros(z, x * y) };
                mult.insert((a, b), m);
            }
        }
        GradedCoefficients::new(modules, mult).expect("sign polynomial ring is equivariant")
    }

    /// A single module in degree 0, with no products beyond the unit.
    pub fn concentrated(n: GroupRingModule) -> Self {
        GradedCoefficients { ring: n.ring, group: n.group.clone(), modules: vec![n], mult: BTreeMap::new() }
    }

    pub fn tmax(&self) -> usize {
        self.modules.len() - 1
    }
}

/// A class in `Ext^s(k, N^t)` by canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ExtClass {
    pub s: usize,
    pub t: usize,
    pub coords: Vec<i64>,
    pub invariants: Vec<i64>,
}

impl ExtClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    fn reduced(&self, coords: Vec<i64>) -> ExtClass {
        let coords =
            coords.into_iter().zip(&self.invariants).map(|(x, &d)| if d == 0 { x } else { x.rem_euclid(d) }).collect();
        ExtClass { coords, ..self.clone() }
    }

    pub fn add(&self, o: &ExtClass) -> Result<ExtClass> {
        if (self.s, self.t) != (o.s, o.t) {
            return Err(Error::InvalidArgument("adding classes of different bidegrees".into()));
        }
        Ok(self.reduced(self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, c: i64) -> ExtClass {
        self.reduced(self.coords.iter().map(|a| a * c).collect())
    }

    /// Total degree `s + t`.
    pub fn degree(&self) -> usize {
        self.s + self.t
    }
}

impl fmt::Display for ExtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]@({},{})",
            self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
            self.s,
            self.t
        )
    }
}

/// The bigraded ring `Ext^s(k, N^t)` for `s <= smax` with products computed from an
/// equivariant diagonal approximation `P -> P (x) P` of a resolution of `k`.
pub struct CupProducts {
    pub coeffs: GradedCoefficients,
    pub smax: usize,
    pub res: Resolution,
    tensor: TensorComplex,
    /// `diag[n] : P_n -> (P (x) P)_n`, equivariant.
    diag: Vec<Mat>,
    groups: BTreeMap<(usize, usize), ExtGroup>,
}

impl CupProducts {
    /// `perturb` adds a boundary to each lifted diagonal; products must not change.
    pub fn new(coeffs: GradedCoefficients, smax: usize, perturb: bool) -> Result<Self> {
        let ring = coeffs.ring;
        let k = GroupRingModule::trivial(ring, &coeffs.group);
        let res = projective_resolution(&k, smax + 2)?;
        if res.finite {
            return Err(Error::Unsupported("the trivial module has a finite resolution; use ext() instead".into()));
        }
        let tensor = tensor_complex(&res, &res, false, smax + 1)?;
        let diag = lift_diagonal(&res, &tensor, smax, perturb)?;
        let mut groups = BTreeMap::new();
        for s in 0..=smax {
            for (t, n) in coeffs.modules.iter().enumerate() {
                groups.insert((s, t), ext_group(&res, n, s)?);
            }
        }
        Ok(CupProducts { coeffs, smax, res, tensor, diag, groups })
    }

    pub fn ring(&self) -> GroundRing {
        self.coeffs.ring
    }

    pub fn group(&self, s: usize, t: usize) -> Option<&ExtGroup> {
        self.groups.get(&(s, t))
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = (&(usize, usize), &ExtGroup)> {
        self.groups.iter()
    }

    pub fn zero(&self, s: usize, t: usize) -> Result<ExtClass> {
        let g = self.lookup(s, t)?;
        Ok(ExtClass { s, t, coords: vec![0; g.invariants().len()], invariants: g.invariants().to_vec() })
    }

    /// The `i`-th canonical generator of `Ext^s(k, N^t)`.
    pub fn generator(&self, s: usize, t: usize, i: usize) -> Result<ExtClass> {
        let mut z = self.zero(s, t)?;
        if i >= z.coords.len() {
            return Err(Error::InvalidArgument(format!("Ext^({s},{t}) has {} generators", z.coords.len())));
        }
        z.coords[i] = 1;
        Ok(z)
    }

    /// The unit: the class of the augmentation in `Ext^0(k, N^0)`.
    pub fn unit(&self) -> Result<ExtClass> {
        let g = self.lookup(0, 0)?;
        let t0 = &self.res.terms[0];
        let cochain: Vec<i64> = t0.gen_index.iter().map(|&b| self.res.augmentation[(0, b)]).collect();
        if self.coeffs.modules[0].dim() != 1 {
            return Err(Error::Unsupported("the unit needs N^0 of rank one".into()));
        }
        let coords = g
            .class_of(self.ring(), &cochain)
            .ok_or_else(|| Error::Inconsistent("augmentation is not a cocycle".into()))?;
        Ok(ExtClass { s: 0, t: 0, coords, invariants: g.invariants().to_vec() })
    }

    fn lookup(&self, s: usize, t: usize) -> Result<&ExtGroup> {
        self.groups
            .get(&(s, t))
            .ok_or_else(|| Error::InvalidArgument(format!("bidegree ({s},{t}) outside the computed range")))
    }

    /// Cup product; `None` if the product lands outside the computed range.
    pub fn product(&self, x: &ExtClass, y: &ExtClass) -> Result<Option<ExtClass>> {
        let (s, t) = (x.s + y.s, x.t + y.t);
        if s > self.smax || t > self.coeffs.tmax() {
            return Ok(None);
        }
        let ring = self.ring();
        let (gx, gy, gz) = (self.lookup(x.s, x.t)?, self.lookup(y.s, y.t)?, self.lookup(s, t)?);
        let f = gx.representative(ring, &x.coords);
        let g = gy.representative(ring, &y.coords);
        let (n1, n2, n3) = (&self.coeffs.modules[x.t], &self.coeffs.modules[y.t], &self.coeffs.modules[t]);
        let (d1, d2, d3) = (n1.dim(), n2.dim(), n3.dim());
        let mu = match self.coeffs.mult.get(&(x.t, y.t)) {
            Some(m) => m.clone(),
            None if x.t == 0 && y.t == 0 && self.coeffs.modules.len() == 1 && d1 * d2 * d3 == 1 => Mat::identity(1),
            None => return Err(Error::Unsupported(format!("no multiplication N^{} x N^{}", x.t, y.t))),
        };
        let sign = if (x.t * y.s).is_multiple_of(2) { 1 } else { -1 };
        let off = self.tensor.block_offset(s, x.s).expect("block exists");
        let (p1, p2) = (&self.res.terms[x.s], &self.res.terms[y.s]);
        let mut h = vec![0i64; self.res.terms[s].rank * d3];
        for (kk, &b) in self.res.terms[s].gen_index.iter().enumerate() {
            for (b1, &(i, g1)) in p1.orbit.iter().enumerate() {
                for (b2, &(j, g2)) in p2.orbit.iter().enumerate() {
                    let c = self.diag[s][(off + b1 * p2.dim() + b2, b)];
                    if c == 0 {
                        continue;
                    }
                    let v1 = n1.action[g1].mul_vec(&f[i * d1..(i + 1) * d1]);
                    let v2 = n2.action[g2].mul_vec(&g[j * d2..(j + 1) * d2]);
                    let w = mu.mul_vec(&Mat::column(&v1).kron(&Mat::column(&v2)).col(0));
                    for (r, wr) in w.into_iter().enumerate() {
                        h[kk * d3 + r] += sign * c * wr;
                    }
                }
            }
        }
        let coords = gz
            .class_of(ring, &h)
            .ok_or_else(|| Error::Inconsistent(format!("product of {x} and {y} is not a cocycle")))?;
        Ok(Some(ExtClass { s, t, coords, invariants: gz.invariants().to_vec() }))
    }
}

/// Lifts `eps (x) eps` and the differentials to an equivariant chain map `P -> P (x) P`.
fn lift_diagonal(res: &Resolution, tc: &TensorComplex, smax: usize, perturb: bool) -> Result<Vec<Mat>> {
    let ring = res.resolved.ring;
    let mut diag: Vec<Mat> = Vec::new();
    let eps2 = res.augmentation.kron(&res.augmentation);
    for n in 0..=smax {
        let term = &res.terms[n];
        let mut images = Vec::new();
        for &b in &term.gen_index {
            let (a, rhs) = if n == 0 {
                (&eps2, res.augmentation.col(b))
            } else {
                let de = res.differentials[n - 1].col(b);
                (&tc.diffs[n - 1], diag[n - 1].mul_vec(&de))
            };
            let mut x = solve_linear(a, &rhs.iter().map(|&v| ring.reduce(v)).collect::<Vec<_>>(), ring)?
                .ok_or_else(|| Error::Inconsistent(format!("diagonal does not lift in degree {n}")))?;
            if perturb && tc.dims[n + 1] > 0 {
                let bump = tc.diffs[n].col(tc.dims[n + 1] - 1);
                x = x.iter().zip(bump).map(|(u, v)| u + v).collect();
            }
            images.push(x);
        }
        let mut m = Mat::zeros(tc.dims[n], term.dim());
        for (col, &(i, g)) in term.orbit.iter().enumerate() {
            let v = tc.action[n][g].mul_vec(&images[i]);
            for (r, x) in v.into_iter().enumerate() {
                m[(r, col)] = x;
            }
        }
        diag.push(red(ring, &m));
    }
    Ok(diag)
}
