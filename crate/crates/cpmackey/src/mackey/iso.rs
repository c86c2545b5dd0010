//! Morphisms of Mackey functors, isomorphism search and twisted Burnside witnesses.

use super::{standard, MackeyFunctor, StandardName};
use crate::error::{Error, Result};
use crate::linalg::{preimage, solve_linear};
use crate::matrix::Mat;
use crate::module::{hom_space, is_zero_map, maps_relations, FGModule, ModuleMap};
use crate::ring::{ext_gcd, GroundRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Levelwise matrices of a natural transformation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MackeyMorphism {
    pub top: Mat,
    pub bottom: Mat,
}

impl MackeyMorphism {
    /// Whether the levelwise maps are well defined and commute with r, t and sigma.
    pub fn is_morphism(&self, m: &MackeyFunctor, n: &MackeyFunctor) -> bool {
        let shapes_ok = self.top.rows() == n.top.gens
            && self.top.cols() == m.top.gens
            && self.bottom.rows() == n.bottom.gens
            && self.bottom.cols() == m.bottom.gens;
        shapes_ok
            && maps_relations(&m.top, &n.top, &self.top)
            && maps_relations(&m.bottom, &n.bottom, &self.bottom)
            && is_zero_map(&n.bottom, &self.bottom.mul(&m.sigma).sub(&n.sigma.mul(&self.bottom)))
            && is_zero_map(&n.bottom, &self.bottom.mul(&m.r).sub(&n.r.mul(&self.top)))
            && is_zero_map(&n.top, &self.top.mul(&m.t).sub(&n.t.mul(&self.bottom)))
    }

    /// Iso test for a morphism between functors with isomorphic levels.
    fn surjective_levels(&self, m: &MackeyFunctor, n: &MackeyFunctor) -> bool {
        let top = ModuleMap { source: m.top.clone(), target: n.top.clone(), matrix: self.top.clone() };
        let bottom = ModuleMap { source: m.bottom.clone(), target: n.bottom.clone(), matrix: self.bottom.clone() };
        top.is_surjective() && bottom.is_surjective()
    }

    pub fn is_iso(&self, m: &MackeyFunctor, n: &MackeyFunctor) -> bool {
        let top = ModuleMap { source: m.top.clone(), target: n.top.clone(), matrix: self.top.clone() };
        let bottom = ModuleMap { source: m.bottom.clone(), target: n.bottom.clone(), matrix: self.bottom.clone() };
        self.is_morphism(m, n) && top.is_iso() && bottom.is_iso()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsoResult {
    Found(MackeyMorphism),
    NotIsomorphic(String),
    Inconclusive(String),
}

impl IsoResult {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoResult::Found(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoResult::Found(_) => "found",
            IsoResult::NotIsomorphic(_) => "none",
            IsoResult::Inconclusive(_) => "inconclusive",
        }
    }
}

/// Largest number of Hom generators for which the witness search runs.
const MAX_UNKNOWNS_FIELD: usize = 1200;
const MAX_UNKNOWNS_INTEGRAL: usize = 120;
const SEARCH_BUDGET: usize = 4000;
const DEFAULT_SEED: u64 = 0x5eed;

/// Generators of the module of natural transformations `M -> N`, as morphisms between
/// the canonical forms, together with those forms.
pub fn hom_lattice(
    m: &MackeyFunctor,
    n: &MackeyFunctor,
) -> Result<(MackeyFunctor, MackeyFunctor, Vec<MackeyMorphism>)> {
    hom_lattice_capped(m, n, usize::MAX)
}

fn hom_lattice_capped(
    m: &MackeyFunctor,
    n: &MackeyFunctor,
    cap: usize,
) -> Result<(MackeyFunctor, MackeyFunctor, Vec<MackeyMorphism>)> {
    if m.ring != n.ring || m.p != n.p {
        return Err(Error::InvalidArgument("morphisms between functors over different rings or primes".into()));
    }
    let (mc, _) = m.canonical_form();
    let (nc, _) = n.canonical_form();
    let ht = hom_space(&mc.top, &nc.top)?;
    let hb = hom_space(&mc.bottom, &nc.bottom)?;
    let (kt, kb) = (ht.maps.len(), hb.maps.len());
    if kt + kb > cap {
        return Err(Error::Unsupported(format!("{} Hom generators exceed the search cap {cap}", kt + kb)));
    }
    let (a, c) = (mc.top.gens, mc.bottom.gens);
    let (b, e) = (nc.top.gens, nc.bottom.gens);
    let rows = e * c + e * a + b * c;
    let mut sys = Mat::zeros(rows, kt + kb);
    let put = |sys: &mut Mat, col: usize, c1: &Mat, c2: &Mat, c3: &Mat| {
        let mut row = 0;
        for blk in [c1, c2, c3] {
            for j in 0..blk.cols() {
                for i in 0..blk.rows() {
                    sys[(row, col)] = blk[(i, j)];
                    row += 1;
                }
            }
        }
    };
    for (k, h) in ht.maps.iter().enumerate() {
        put(&mut sys, k, &Mat::zeros(e, c), &nc.r.mul(h).scale(-1), &h.mul(&mc.t));
    }
    for (k, g) in hb.maps.iter().enumerate() {
        let c1 = g.mul(&mc.sigma).sub(&nc.sigma.mul(g));
        put(&mut sys, kt + k, &c1, &g.mul(&mc.r), &nc.t.mul(g).scale(-1));
    }
    let rb = nc.bottom.relation_basis();
    let rt = nc.top.relation_basis();
    let mut target = Mat::zeros(0, 0);
    for _ in 0..c + a {
        target = target.block_diag(&rb);
    }
    for _ in 0..c {
        target = target.block_diag(&rt);
    }
    let sol = preimage(m.ring, &sys, &target);
    let mut out = Vec::new();
    let mut vecs: Vec<Vec<i64>> = (0..sol.cols()).map(|j| sol.col(j)).collect();
    if !m.ring.is_field() {
        size_reduce(&mut vecs);
    }
    for v in vecs {
        let f = MackeyMorphism { top: combine(&ht.maps, &v[..kt], b, a), bottom: combine(&hb.maps, &v[kt..], e, c) };
        let f = MackeyMorphism {
            top: crate::module::reduce_mat(m.ring, &f.top),
            bottom: crate::module::reduce_mat(m.ring, &f.bottom),
        };
        if !(is_zero_map(&nc.top, &f.top) && is_zero_map(&nc.bottom, &f.bottom)) {
            out.push(f);
        }
    }
    Ok((mc, nc, out))
}

fn combine(maps: &[Mat], c: &[i64], rows: usize, cols: usize) -> Mat {
    let mut out = Mat::zeros(rows, cols);
    for (k, m) in maps.iter().enumerate() {
        if c[k] != 0 {
            out = out.add(&m.scale(c[k]));
        }
    }
    out
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// Pairwise size reduction of a lattice basis; shortens vectors for the witness search.
fn size_reduce(vecs: &mut [Vec<i64>]) {
    for _ in 0..50 {
        let mut changed = false;
        for i in 0..vecs.len() {
            for j in 0..vecs.len() {
                if i == j {
                    continue;
                }
                let nj = dot(&vecs[j], &vecs[j]);
                if nj == 0 {
                    continue;
                }
                let num = dot(&vecs[i], &vecs[j]);
                let k = ((2 * num + nj).div_euclid(2 * nj)) as i64;
                if k != 0 {
                    let cand: Vec<i64> = vecs[i].iter().zip(&vecs[j]).map(|(&x, &y)| x - k * y).collect();
                    if dot(&cand, &cand) < dot(&vecs[i], &vecs[i]) {
                        vecs[i] = cand;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Invariants that any isomorphism preserves, as `(name, invariants)` pairs.
pub fn iso_invariants(m: &MackeyFunctor) -> Vec<(&'static str, Vec<i64>)> {
    let r = ModuleMap { source: m.top.clone(), target: m.bottom.clone(), matrix: m.r.clone() };
    let t = ModuleMap { source: m.bottom.clone(), target: m.top.clone(), matrix: m.t.clone() };
    let s = ModuleMap {
        source: m.bottom.clone(),
        target: m.bottom.clone(),
        matrix: m.sigma.sub(&Mat::identity(m.bottom.gens)),
    };
    let tr = t.compose(&r);
    vec![
        ("top", m.top.invariants()),
        ("bottom", m.bottom.invariants()),
        ("coker r", r.cokernel().invariants()),
        ("coker t", t.cokernel().invariants()),
        ("ker r", r.kernel().0.invariants()),
        ("ker t", t.kernel().0.invariants()),
        ("coinvariants", s.cokernel().invariants()),
        ("fixed points", s.kernel().0.invariants()),
        ("coker tr", tr.cokernel().invariants()),
    ]
}

pub fn iso(m: &MackeyFunctor, n: &MackeyFunctor) -> IsoResult {
    iso_with_seed(m, n, DEFAULT_SEED)
}

/// Isomorphism search: invariant comparison, then a witness search in the Hom lattice.
///
/// A morphism between functors with isomorphic levels that is surjective on both
/// levels is an isomorphism (finitely generated modules are Hopfian).
pub fn iso_with_seed(m: &MackeyFunctor, n: &MackeyFunctor, seed: u64) -> IsoResult {
    if m.ring != n.ring || m.p != n.p {
        return IsoResult::NotIsomorphic("different ring or prime".into());
    }
    for ((name, a), (_, b)) in iso_invariants(m).into_iter().zip(iso_invariants(n)) {
        if a != b {
            return IsoResult::NotIsomorphic(format!("{name}: {a:?} vs {b:?}"));
        }
    }
    let cap = if m.ring.is_field() { MAX_UNKNOWNS_FIELD } else { MAX_UNKNOWNS_INTEGRAL };
    let (mc, nc, gens) = match hom_lattice_capped(m, n, cap) {
        Ok(x) => x,
        Err(e) => return IsoResult::Inconclusive(format!("invariants agree; {e}")),
    };
    let (cm, cn) = (m.canonical_form().1, n.canonical_form().1);
    let lift = |f: &MackeyMorphism| MackeyMorphism {
        top: crate::module::reduce_mat(m.ring, &cn.top_incl.mul(&f.top).mul(&cm.top_proj)),
        bottom: crate::module::reduce_mat(m.ring, &cn.bottom_incl.mul(&f.bottom).mul(&cm.bottom_proj)),
    };
    if mc.is_zero() {
        return IsoResult::Found(MackeyMorphism {
            top: Mat::zeros(n.top.gens, m.top.gens),
            bottom: Mat::zeros(n.bottom.gens, m.bottom.gens),
        });
    }
    let k = gens.len();
    let tried = std::cell::Cell::new(0usize);
    let check = |coef: &[i64]| -> Option<MackeyMorphism> {
        tried.set(tried.get() + 1);
        let mut top = Mat::zeros(nc.top.gens, mc.top.gens);
        let mut bottom = Mat::zeros(nc.bottom.gens, mc.bottom.gens);
        for (i, &c) in coef.iter().enumerate() {
            if c != 0 {
                top = top.add(&gens[i].top.scale(c));
                bottom = bottom.add(&gens[i].bottom.scale(c));
            }
        }
        let f = MackeyMorphism { top, bottom };
        f.surjective_levels(&mc, &nc).then_some(f)
    };
    let coeffs: &[i64] = &[1, -1, 2, -2, 3, -3];
    for i in 0..k {
        let mut v = vec![0; k];
        v[i] = 1;
        if let Some(f) = check(&v) {
            return IsoResult::Found(lift(&f));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            for &a in &coeffs[..2] {
                for &b in coeffs {
                    let mut v = vec![0; k];
                    v[i] = a;
                    v[j] = b;
                    if let Some(f) = check(&v) {
                        return IsoResult::Found(lift(&f));
                    }
                }
            }
            if tried.get() > SEARCH_BUDGET / 2 {
                break;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = match m.ring {
        GroundRing::PrimeField(q) => q - 1,
        _ => 3,
    };
    while tried.get() < SEARCH_BUDGET {
        let v: Vec<i64> = (0..k).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Some(f) = check(&v) {
            return IsoResult::Found(lift(&f));
        }
    }
    IsoResult::Inconclusive(format!("invariants agree; no witness among {} candidates", tried.get()))
}

/// Witness for `A_<d1> = A_<d2>`: the top map `mu1 -> u mu2 + x tau2`, `tau1 -> tau2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedWitness {
    pub u: i64,
    pub x: i64,
    /// `[[u, x], [0, 1]]`, acting on row vectors of top coordinates.
    pub matrix: Mat,
}

impl TwistedWitness {
    /// The morphism `A_<d1> -> A_<d2>` in column convention.
    pub fn morphism(&self) -> MackeyMorphism {
        MackeyMorphism { top: self.matrix.transpose(), bottom: Mat::identity(1) }
    }
}

/// The criterion `d1 = u d2 + p x` with `u = +-1`, over the integers.
pub fn twisted_criterion(d1: i64, d2: i64, p: i64) -> bool {
    (d1 - d2) % p == 0 || (d1 + d2) % p == 0
}

/// Search units `u` and solve `p x = d1 - u d2`.
pub fn twisted_iso(d1: i64, d2: i64, ring: GroundRing, p: i64) -> Option<TwistedWitness> {
    let pm = Mat::from_rows(&[vec![p]], 1);
    for u in ring.units() {
        let rhs = ring.reduce(d1 - u * d2);
        if let Ok(Some(x)) = solve_linear(&pm, &[rhs], ring) {
            let x = x[0];
            return Some(TwistedWitness { u, x, matrix: Mat::from_rows(&[vec![u, x], vec![0, 1]], 2) });
        }
    }
    None
}

/// The determinant-one matrix `X` with `X (d2, p, 0)^T = (d1, p, 0)^T` and
/// `(0 1 0) X = (0 1 0)`, for `d1, d2` prime to `p`.
///
/// The last column is `(-(b1 + b2 - b1 b2 p), 0, a1 d2)` where `a_i d_i + b_i p = 1`.
pub fn stabilized_witness(d1: i64, d2: i64, p: i64) -> Result<Mat> {
    let (g1, a1, b1) = ext_gcd(d1, p);
    let (g2, a2, b2) = ext_gcd(d2, p);
    if g1 != 1 || g2 != 1 {
        return Err(Error::InvalidArgument(format!("{d1} and {d2} must be prime to {p}")));
    }
    Ok(Mat::from_rows(&[vec![d1 * a2, d1 * b2, -(b1 + b2 - b1 * b2 * p)], vec![0, 1, 0], vec![p, -d2, a1 * d2]], 3))
}

/// `A_<d> (+) <k>` over the integers, used to check stabilized witnesses.
pub fn stabilized_functor(d: i64, p: i64) -> MackeyFunctor {
    let z = GroundRing::Integers;
    let a = standard(&StandardName::ATwisted(d), z, p).expect("twisted Burnside");
    let k = standard(&StandardName::Bracket(FGModule::free(z, 1)), z, p).expect("bracket");
    a.direct_sum(&k)
}

#[cfg(test)]
mod tests {
    use super::super::{box_product, standard::twisted_transposed, CpModule};
    use super::*;

    fn std(n: StandardName, ring: GroundRing, p: i64) -> MackeyFunctor {
        standard(&n, ring, p).unwrap()
    }

    #[test]
    fn twisted_examples() {
        let z = GroundRing::Integers;
        let w = twisted_iso(4, 4, z, 3).unwrap();
        assert_eq!(w.matrix, Mat::identity(2));
        let w = twisted_iso(1, 4, z, 3).unwrap();
        assert_eq!((w.u, w.x), (1, -1));
        assert!(twisted_iso(1, 2, z, 5).is_none());
        let a1 = std(StandardName::ATwisted(1), z, 3);
        let a4 = std(StandardName::ATwisted(4), z, 3);
        assert!(w.morphism().is_iso(&a1, &a4));
    }

    #[test]
    fn stabilized_example_has_det_one() {
        let x = stabilized_witness(1, 2, 3).unwrap();
        assert_eq!(x.det(), 1);
        let f = MackeyMorphism { top: x.transpose(), bottom: Mat::identity(1) };
        assert!(f.is_iso(&stabilized_functor(1, 3), &stabilized_functor(2, 3)));
    }

    #[test]
    fn iso_self_and_mismatch() {
        let z = GroundRing::Integers;
        let l = std(StandardName::L(CpModule::trivial(z)), z, 3);
        assert!(iso(&l, &l).is_found());
        let br = std(StandardName::Bracket(FGModule::free(z, 1)), z, 3);
        assert!(matches!(iso(&br, &l), IsoResult::NotIsomorphic(_)));
    }

    #[test]
    fn twisted_box_over_f7() {
        let f7 = GroundRing::PrimeField(7);
        let b = box_product(&std(StandardName::ATwisted(2), f7, 5), &std(StandardName::ATwisted(3), f7, 5)).unwrap();
        let r = iso(&b, &std(StandardName::ATwisted(6), f7, 5));
        assert!(r.is_found(), "{r:?}");
        if let IsoResult::Found(f) = r {
            assert!(f.is_iso(&b, &std(StandardName::ATwisted(6), f7, 5)));
        }
    }

    #[test]
    fn transposed_orientation_is_inverse_twist() {
        let z = GroundRing::Integers;
        let tr = twisted_transposed(2, z, 7);
        assert!(tr.is_valid());
        assert!(iso(&tr, &std(StandardName::ATwisted(4), z, 7)).is_found());
        assert!(!iso(&tr, &std(StandardName::ATwisted(2), z, 7)).is_found());
    }
}
