//! Free resolutions over `k[pi]`: periodic ones for cyclic groups, a kernel-based
//! fallback for any finite group, duals, and tensor products of resolutions.

use super::{red, FiniteGroup, GroupRingModule};
use crate::error::{Error, Result};
use crate::linalg::{coords, kernel, span_basis};
use crate::matrix::Mat;
use crate::module::FGModule;
use crate::ring::GroundRing;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ResolutionKind {
    Projective,
    RelativelyInjective,
}

/// A free `k[pi]`-module with an orbit basis: basis vector `b` is `g e_i` for
/// `orbit[b] = (i, g)`, and `gen_index[i]` is the position of `e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeTerm {
    pub module: GroupRingModule,
    pub rank: usize,
    pub orbit: Vec<(usize, usize)>,
    pub gen_index: Vec<usize>,
}

impl FreeTerm {
    pub fn standard(ring: GroundRing, group: &FiniteGroup, r: usize) -> Self {
        let n = group.order();
        FreeTerm {
            module: GroupRingModule::free(ring, group, r),
            rank: r,
            orbit: (0..r * n).map(|b| (b / n, b % n)).collect(),
            gen_index: (0..r).map(|i| i * n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.orbit.len()
    }

    /// The equivariant map sending `e_i` to `images[i]` in a module with the given action.
    fn extend(&self, images: &[Vec<i64>], target: &GroupRingModule) -> Mat {
        let mut m = Mat::zeros(target.dim(), self.dim());
        for (b, &(i, g)) in self.orbit.iter().enumerate() {
            let v = target.action[g].mul_vec(&images[i]);
            for (r, x) in v.into_iter().enumerate() {
                m[(r, b)] = x;
            }
        }
        red(target.ring, &m)
    }
}

/// Projective kind: `... -> P_1 -> P_0 -> M`, `differentials[n - 1] = d_n : P_n -> P_{n-1}`,
/// `augmentation : P_0 -> M`. Relatively injective kind: `M -> I^0 -> I^1 -> ...`,
/// `differentials[n] : I^n -> I^{n+1}`, `augmentation : M -> I^0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub kind: ResolutionKind,
    pub resolved: GroupRingModule,
    pub terms: Vec<FreeTerm>,
    pub differentials: Vec<Mat>,
    pub augmentation: Mat,
    /// The last differential (or the augmentation) is injective: all later terms vanish.
    pub finite: bool,
}

/// `ker(outgoing) / im(incoming)` on `k^dim`, with the cocycle basis of the kernel.
pub(crate) fn homology(ring: GroundRing, incoming: &Mat, outgoing: &Mat, dim: usize) -> (FGModule, Mat) {
    let ker = if outgoing.rows() == 0 { Mat::identity(dim) } else { kernel(&red(ring, outgoing), ring) };
    FGModule::free(ring, dim).subquotient(&ker, &red(ring, incoming))
}

fn equivariant(a: &GroupRingModule, b: &GroupRingModule, f: &Mat) -> bool {
    a.group.generators.iter().all(|&g| red(a.ring, &f.mul(&a.action[g])) == red(a.ring, &b.action[g].mul(f)))
}

impl Resolution {
    /// Index of the last term.
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.rank).collect()
    }

    /// Equivariance, `d^2 = 0`, and exactness at every term below the last.
    pub fn check(&self) -> Result<()> {
        let ring = self.resolved.ring;
        let m = &self.resolved;
        let fail = |what: String| Err(Error::Inconsistent(format!("resolution of {}: {what}", m.group.name)));
        let (aug_src, aug_tgt) = match self.kind {
            ResolutionKind::Projective => (&self.terms[0].module, m),
            ResolutionKind::RelativelyInjective => (m, &self.terms[0].module),
        };
        if !equivariant(aug_src, aug_tgt, &self.augmentation) {
            return fail("augmentation not equivariant".into());
        }
        for (k, d) in self.differentials.iter().enumerate() {
            let (src, tgt) = match self.kind {
                ResolutionKind::Projective => (&self.terms[k + 1], &self.terms[k]),
                ResolutionKind::RelativelyInjective => (&self.terms[k], &self.terms[k + 1]),
            };
            if !equivariant(&src.module, &tgt.module, d) {
                return fail(format!("differential {k} not equivariant"));
            }
        }
        // the maps in order of position: the zero map at M, the augmentation, then the differentials
        let mut maps: Vec<Mat> = vec![match self.kind {
            ResolutionKind::Projective => Mat::zeros(0, m.dim()),
            ResolutionKind::RelativelyInjective => Mat::zeros(m.dim(), 0),
        }];
        maps.push(self.augmentation.clone());
        maps.extend(self.differentials.iter().cloned());
        let mut dims = vec![m.dim()];
        dims.extend(self.terms.iter().map(|t| t.dim()));
        // projective: position i has outgoing maps[i] and incoming maps[i + 1];
        // injective: position i has incoming maps[i] and outgoing maps[i + 1]
        for i in 0..dims.len() - 1 {
            let (inc, out) = match self.kind {
                ResolutionKind::Projective => (&maps[i + 1], &maps[i]),
                ResolutionKind::RelativelyInjective => (&maps[i], &maps[i + 1]),
            };
            if !red(ring, &out.mul(inc)).is_zero() {
                return fail(format!("composite at position {i} is nonzero"));
            }
            if !homology(ring, inc, out, dims[i]).0.is_zero_module() {
                return fail(format!("not exact at position {i}"));
            }
        }
        Ok(())
    }
}

/// Right multiplication by `a` on `k[C_n]`, extended equivariantly.
fn right_mult(term: &FreeTerm, target: &FreeTerm, a: &[i64]) -> Mat {
    term.extend(&[a.to_vec()], &target.module)
}

/// The periodic resolution of a rank-one module on which a generator of a cyclic group
/// acts by `s = +-1`: differentials alternate between `g - s` and `sum s^i g^i`.
pub fn periodic_resolution(m: &GroupRingModule, length: usize) -> Result<Resolution> {
    let ring = m.ring;
    let Some(n) = m.group.cyclic_order else {
        return Err(Error::Unsupported("periodic resolutions need a cyclic group".into()));
    };
    if m.dim() != 1 || n < 2 {
        return Err(Error::Unsupported("periodic resolutions resolve rank-one modules of nontrivial groups".into()));
    }
    let s = m.action[1][(0, 0)];
    let s = if ring.reduce(s - 1) == 0 {
        1
    } else if ring.reduce(s + 1) == 0 && n % 2 == 0 {
        -1
    } else {
        return Err(Error::Unsupported("the generator must act by 1 or -1".into()));
    };
    let term = FreeTerm::standard(ring, &m.group, 1);
    let augmentation = red(ring, &Mat::from_rows(&[(0..n).map(|g| if g % 2 == 1 { s } else { 1 }).collect()], n));
    let mut minus = vec![0i64; n];
    minus[1] = 1;
    minus[0] = -s;
    let norm: Vec<i64> = (0..n).map(|i| if i % 2 == 1 { s } else { 1 }).collect();
    let differentials =
        (1..=length).map(|k| right_mult(&term, &term, if k % 2 == 1 { &minus } else { &norm })).collect();
    Ok(Resolution {
        kind: ResolutionKind::Projective,
        resolved: m.clone(),
        terms: vec![term; length + 1],
        differentials,
        augmentation,
        finite: false,
    })
}

/// Generators, as a `k[pi]`-module, of the submodule with k-basis `ker` of `src`.
fn module_generators(src: &GroupRingModule, ker: &Mat) -> Vec<Vec<i64>> {
    let ring = src.ring;
    let dim = src.dim();
    let mut span = Mat::zeros(dim, 0);
    let mut gens = Vec::new();
    for j in 0..ker.cols() {
        let v = ker.col(j);
        let basis = span_basis(ring, dim, &span);
        if span.cols() > 0 && coords(ring, &basis, &v).is_some() {
            continue;
        }
        for a in &src.action {
            span = span.hstack(&Mat::column(&a.mul_vec(&v)));
        }
        gens.push(v);
    }
    gens
}

/// A free resolution built by covering kernels with orbit generators; works for every
/// finite group, ending early when a kernel vanishes.
pub fn kernel_resolution(m: &GroupRingModule, length: usize) -> Result<Resolution> {
    let ring = m.ring;
    let group = &m.group;
    let p0 = FreeTerm::standard(ring, group, m.dim());
    let unit: Vec<Vec<i64>> = (0..m.dim()).map(|i| (0..m.dim()).map(|j| (i == j) as i64).collect()).collect();
    let augmentation = p0.extend(&unit, m);
    let mut terms = vec![p0];
    let mut differentials = Vec::new();
    let mut current = augmentation.clone();
    let mut finite = false;
    for _ in 0..=length {
        let src = terms.last().expect("nonempty");
        let ker = kernel(&current, ring);
        if ker.cols() == 0 {
            finite = true;
            break;
        }
        if terms.len() > length {
            break;
        }
        let gens = module_generators(&src.module, &ker);
        let next = FreeTerm::standard(ring, group, gens.len());
        let d = next.extend(&gens, &src.module);
        current = d.clone();
        differentials.push(d);
        terms.push(next);
    }
    Ok(Resolution { kind: ResolutionKind::Projective, resolved: m.clone(), terms, differentials, augmentation, finite })
}

/// A projective resolution of length at most `length`: the module itself when it is
/// free, the periodic resolution when it applies, the kernel-based one otherwise.
pub fn projective_resolution(m: &GroupRingModule, length: usize) -> Result<Resolution> {
    let n = m.group.order();
    if m.dim().is_multiple_of(n) && *m == GroupRingModule::free(m.ring, &m.group, m.dim() / n) {
        let t = FreeTerm::standard(m.ring, &m.group, m.dim() / n);
        return Ok(Resolution {
            kind: ResolutionKind::Projective,
            resolved: m.clone(),
            terms: vec![t],
            differentials: vec![],
            augmentation: Mat::identity(m.dim()),
            finite: true,
        });
    }
    if m.dim() == 1 && n >= 2 && m.group.cyclic_order.is_some() {
        if let Ok(r) = periodic_resolution(m, length) {
            return Ok(r);
        }
    }
    kernel_resolution(m, length)
}

/// Dualizes a projective resolution of `Hom_k(M, k)`; the terms are free, hence
/// relatively injective.
pub fn rel_injective_resolution(m: &GroupRingModule, length: usize) -> Result<Resolution> {
    let p = projective_resolution(&m.dual(), length)?;
    let terms = p.terms.iter().map(|t| FreeTerm { module: t.module.dual(), ..t.clone() }).collect();
    Ok(Resolution {
        kind: ResolutionKind::RelativelyInjective,
        resolved: m.clone(),
        terms,
        differentials: p.differentials.iter().map(Mat::transpose).collect(),
        augmentation: p.augmentation.transpose(),
        finite: p.finite,
    })
}

/// Total complex of two projective resolutions, with blocks `P_a (x) Q_b` in order of `a`.
pub(crate) struct TensorComplex {
    /// `(a, b, offset)` per degree.
    pub blocks: Vec<Vec<(usize, usize, usize)>>,
    pub dims: Vec<usize>,
    /// `diffs[n - 1] : T_n -> T_{n-1}`.
    pub diffs: Vec<Mat>,
    /// Action of each group element on each `T_n`.
    pub action: Vec<Vec<Mat>>,
}

impl TensorComplex {
    pub fn block_offset(&self, n: usize, a: usize) -> Option<usize> {
        self.blocks[n].iter().find(|&&(x, _, _)| x == a).map(|&(_, _, o)| o)
    }
}

/// `external`: over `G x H`, element `(g, h)` at index `g |H| + h`; otherwise the diagonal
/// action of a common group.
pub(crate) fn tensor_complex(p: &Resolution, q: &Resolution, external: bool, len: usize) -> Result<TensorComplex> {
    if p.kind != ResolutionKind::Projective || q.kind != ResolutionKind::Projective {
        return Err(Error::Unsupported("tensor complexes of projective resolutions only".into()));
    }
    if len > p.length() || len > q.length() {
        return Err(Error::InvalidArgument(format!("tensor complex of length {len} needs longer resolutions")));
    }
    let ring = p.resolved.ring;
    let mut blocks = Vec::new();
    let mut dims = Vec::new();
    for n in 0..=len {
        let mut off = 0;
        let mut row = Vec::new();
        for a in 0..=n {
            row.push((a, n - a, off));
            off += p.terms[a].dim() * q.terms[n - a].dim();
        }
        blocks.push(row);
        dims.push(off);
    }
    let elements =
        if external { p.resolved.group.order() * q.resolved.group.order() } else { p.resolved.group.order() };
    let m = q.resolved.group.order();
    let action = (0..=len)
        .map(|n| {
            (0..elements)
                .map(|x| {
                    let (g, h) = if external { (x / m, x % m) } else { (x, x) };
                    let mut out = Mat::zeros(dims[n], dims[n]);
                    for &(a, b, off) in &blocks[n] {
                        out.set_block(off, off, &p.terms[a].module.action[g].kron(&q.terms[b].module.action[h]));
                    }
                    out
                })
                .collect()
        })
        .collect();
    let mut diffs = Vec::new();
    for n in 1..=len {
        let mut d = Mat::zeros(dims[n - 1], dims[n]);
        for &(a, b, off) in &blocks[n] {
            if a >= 1 {
                let tgt = blocks[n - 1].iter().find(|x| x.0 == a - 1).expect("block").2;
                d.set_block(tgt, off, &p.differentials[a - 1].kron(&Mat::identity(q.terms[b].dim())));
            }
            if b >= 1 {
                let tgt = blocks[n - 1].iter().find(|x| x.0 == a).expect("block").2;
                let sign = if a % 2 == 0 { 1 } else { -1 };
                d.set_block(tgt, off, &Mat::identity(p.terms[a].dim()).kron(&q.differentials[b - 1]).scale(sign));
            }
        }
        diffs.push(red(ring, &d));
    }
    Ok(TensorComplex { blocks, dims, diffs, action })
}

/// The external tensor product of two projective resolutions: a free resolution of
/// `M (x) N` over `k[G x H]` whose degree-n term has rank `sum_{a+b=n} rank P_a rank Q_b`.
pub fn tensor_of_resolutions(p: &Resolution, q: &Resolution) -> Result<Resolution> {
    let len = p.length().min(q.length());
    let tc = tensor_complex(p, q, true, len)?;
    let ring = p.resolved.ring;
    let group = p.resolved.group.product(&q.resolved.group);
    let hm = q.resolved.group.order();
    let mut terms = Vec::new();
    for n in 0..=len {
        let mut orbit = vec![(0, 0); tc.dims[n]];
        let mut gen_index = Vec::new();
        let mut gen_off = 0;
        for &(a, b, off) in &tc.blocks[n] {
            let (pa, qb) = (&p.terms[a], &q.terms[b]);
            for (x, &(i, g)) in pa.orbit.iter().enumerate() {
                for (y, &(j, h)) in qb.orbit.iter().enumerate() {
                    orbit[off + x * qb.dim() + y] = (gen_off + i * qb.rank + j, g * hm + h);
                }
            }
            for &xi in &pa.gen_index {
                for &yj in &qb.gen_index {
                    gen_index.push(off + xi * qb.dim() + yj);
                }
            }
            gen_off += pa.rank * qb.rank;
        }
        let module = GroupRingModule {
            ring,
            group: group.clone(),
            module: FGModule::free(ring, tc.dims[n]),
            action: tc.action[n].clone(),
        };
        terms.push(FreeTerm { module, rank: gen_off, orbit, gen_index });
    }
    Ok(Resolution {
        kind: ResolutionKind::Projective,
        resolved: p.resolved.external_tensor(&q.resolved),
        terms,
        differentials: tc.diffs,
        augmentation: red(ring, &p.augmentation.kron(&q.augmentation)),
        finite: p.finite && q.finite,
    })
}
