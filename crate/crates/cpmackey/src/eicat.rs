//! Finite EI-categories given by composition tables, functors to modules, natural
//! transformations, and the fundamental category of `B_{C_p} Z/2` with the coefficient
//! systems used for `B_{C_p} O(2)`.

use crate::error::{Error, Result};
use crate::homalg::red;
use crate::linalg::{kernel, rank_mod};
use crate::matrix::Mat;
use crate::module::FGModule;
use crate::point::{restrict, GradedClass, Level};
use crate::projspace::{bo2_factorization, bo2_member, mono_degree, mono_name, CPClass, CPRing, Mono};
use crate::ring::GroundRing;
use crate::rog::ROGElement;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// `compose[g][f] = Some(g o f)` when `target(f) = source(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteEICategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub compose: Vec<Vec<Option<usize>>>,
    pub identities: Vec<usize>,
}

impl FiniteEICategory {
    /// Checks sources and targets of composites, unit laws, associativity and the EI property.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        compose: Vec<Vec<Option<usize>>>,
        identities: Vec<usize>,
    ) -> Result<Self> {
        let c = FiniteEICategory { objects, morphisms, compose, identities };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        let n = self.morphisms.len();
        if self.compose.len() != n
            || self.compose.iter().any(|r| r.len() != n)
            || self.identities.len() != self.objects.len()
        {
            return bad("composition table has the wrong shape".into());
        }
        for (o, &id) in self.identities.iter().enumerate() {
            if self.morphisms[id].source != o || self.morphisms[id].target != o {
                return bad(format!("identity of object {o} is not an endomorphism of it"));
            }
        }
        for g in 0..n {
            for f in 0..n {
                let (mf, mg) = (&self.morphisms[f], &self.morphisms[g]);
                match self.compose[g][f] {
                    Some(h) if mf.target == mg.source => {
                        let mh = &self.morphisms[h];
                        if mh.source != mf.source || mh.target != mg.target {
                            return bad(format!("{} o {} has the wrong endpoints", mg.name, mf.name));
                        }
                    }
                    None if mf.target != mg.source => {}
                    _ => return bad(format!("composability of {} o {} is wrong", mg.name, mf.name)),
                }
            }
        }
        for f in 0..n {
            let m = &self.morphisms[f];
            if self.compose[f][self.identities[m.source]] != Some(f)
                || self.compose[self.identities[m.target]][f] != Some(f)
            {
                return bad(format!("unit law fails at {}", m.name));
            }
        }
        for f in 0..n {
            for g in 0..n {
                for h in 0..n {
                    if let (Some(gf), Some(hg)) = (self.compose[g][f], self.compose[h][g]) {
                        if self.compose[h][gf] != self.compose[hg][f] {
                            return bad("composition is not associative".into());
                        }
                    }
                }
            }
        }
        for f in 0..n {
            let m = &self.morphisms[f];
            if m.source == m.target {
                let id = self.identities[m.source];
                if !(0..n).any(|g| self.compose[g][f] == Some(id)) {
                    return bad(format!("endomorphism {} is not invertible", m.name));
                }
            }
        }
        Ok(())
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| self.morphisms[f].source == x && self.morphisms[f].target == y).collect()
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// An object receiving a morphism from every object.
    pub fn weakly_terminal(&self) -> Option<usize> {
        (0..self.objects.len()).find(|&y| (0..self.objects.len()).all(|x| !self.hom(x, y).is_empty()))
    }
}

/// Object indices of the fundamental category of `B_{C_p} Z/2`.
pub const TOP: usize = 0;
pub const BOTTOM: usize = 1;

/// Two objects `(•,x0)` and `(○,x0)`; `End(•) = {1, kappa}`, `End(○) = C_p x Z/2` as pairs
/// `(g, e)`, and two morphisms `a_0, a_1 : ○ -> •` with `kappa o a_e = a_{e+1}` and
/// `a_e o (g, e') = a_{e+e'}`.
// Composition is a table indexed by morphism numbers.
#[allow(clippy::needless_range_loop)]
pub fn build_pi_bz2(p: i64) -> Result<FiniteEICategory> {
    if p < 3 || !crate::ring::is_prime(p) {
        return Err(Error::InvalidArgument("the fundamental category is built for odd primes".into()));
    }
    let pu = p as usize;
    let end_bot = |g: usize, e: usize| 2 + g * 2 + e;
    let arrow = |e: usize| 2 + 2 * pu + e;
    let mut morphisms = vec![
        Morphism { name: "id_top".into(), source: TOP, target: TOP },
        Morphism { name: "kappa".into(), source: TOP, target: TOP },
    ];
    for g in 0..pu {
        for e in 0..2 {
            morphisms.push(Morphism { name: format!("g{g}t{e}"), source: BOTTOM, target: BOTTOM });
        }
    }
    for e in 0..2 {
        morphisms.push(Morphism { name: format!("a{e}"), source: BOTTOM, target: TOP });
    }
    let n = morphisms.len();
    let mut compose = vec![vec![None; n]; n];
    for x in 0..2 {
        for y in 0..2 {
            compose[y][x] = Some((x + y) % 2);
        }
    }
    for g in 0..pu {
        for e in 0..2 {
            for g2 in 0..pu {
                for e2 in 0..2 {
                    compose[end_bot(g, e)][end_bot(g2, e2)] = Some(end_bot((g + g2) % pu, (e + e2) % 2));
                }
            }
            for a in 0..2 {
                compose[arrow(a)][end_bot(g, e)] = Some(arrow((a + e) % 2));
            }
        }
    }
    for k in 0..2 {
        for a in 0..2 {
            compose[k][arrow(a)] = Some(arrow((a + k) % 2));
        }
    }
    FiniteEICategory::new(vec!["(•,x0)".into(), "(○,x0)".into()], morphisms, compose, vec![0, end_bot(0, 0)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// A functor to free modules; `action[f]` maps `F(source f) -> F(target f)` when
/// covariant and `F(target f) -> F(source f)` when contravariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EIFunctor {
    pub ring: GroundRing,
    pub direction: Variance,
    pub values: Vec<FGModule>,
    pub action: Vec<Mat>,
}

impl EIFunctor {
    pub fn new(
        cat: &FiniteEICategory,
        ring: GroundRing,
        direction: Variance,
        dims: &[usize],
        action: Vec<Mat>,
    ) -> Result<Self> {
        let f = EIFunctor {
            ring,
            direction,
            values: dims.iter().map(|&d| FGModule::free(ring, d)).collect(),
            action: action.iter().map(|m| red(ring, m)).collect(),
        };
        f.validate(cat)?;
        Ok(f)
    }

    pub fn dim(&self, x: usize) -> usize {
        self.values[x].gens
    }

    fn endpoints(&self, cat: &FiniteEICategory, f: usize) -> (usize, usize) {
        let m = &cat.morphisms[f];
        match self.direction {
            Variance::Covariant => (m.source, m.target),
            Variance::Contravariant => (m.target, m.source),
        }
    }

    /// Shapes, identities and functoriality on the whole composition table.
    pub fn validate(&self, cat: &FiniteEICategory) -> Result<()> {
        if self.values.len() != cat.objects.len() || self.action.len() != cat.morphisms.len() {
            return Err(Error::DimensionMismatch("one value per object and one matrix per morphism".into()));
        }
        for f in 0..cat.morphisms.len() {
            let (s, t) = self.endpoints(cat, f);
            if self.action[f].rows() != self.dim(t) || self.action[f].cols() != self.dim(s) {
                return Err(Error::DimensionMismatch(format!("matrix of {}", cat.morphisms[f].name)));
            }
        }
        for (x, &id) in cat.identities.iter().enumerate() {
            if self.action[id] != Mat::identity(self.dim(x)) {
                return Err(Error::InvalidArgument(format!(
                    "identity of {} is not sent to the identity",
                    cat.objects[x]
                )));
            }
        }
        for g in 0..cat.morphisms.len() {
            for f in 0..cat.morphisms.len() {
                let Some(gf) = cat.compose[g][f] else { continue };
                let expect = match self.direction {
                    Variance::Covariant => self.action[g].mul(&self.action[f]),
                    Variance::Contravariant => self.action[f].mul(&self.action[g]),
                };
                if red(self.ring, &expect) != self.action[gf] {
                    return Err(Error::InvalidArgument(format!(
                        "not functorial at {} o {}",
                        cat.morphisms[g].name, cat.morphisms[f].name
                    )));
                }
            }
        }
        Ok(())
    }

    /// The constant functor at the ground ring.
    pub fn constant(cat: &FiniteEICategory, ring: GroundRing, direction: Variance) -> Self {
        EIFunctor {
            ring,
            direction,
            values: vec![FGModule::free(ring, 1); cat.objects.len()],
            action: vec![Mat::identity(1); cat.morphisms.len()],
        }
    }

    /// `k Pi(-, y)` (contravariant) with basis `Pi(x, y)` in morphism order.
    pub fn representable(cat: &FiniteEICategory, ring: GroundRing, y: usize) -> Self {
        let homs: Vec<Vec<usize>> = (0..cat.objects.len()).map(|x| cat.hom(x, y)).collect();
        let action = cat
            .morphisms
            .iter()
            .enumerate()
            .map(|(f, m)| {
                // h in Pi(target f, y) goes to h o f in Pi(source f, y)
                let mut mat = Mat::zeros(homs[m.source].len(), homs[m.target].len());
                for (c, &h) in homs[m.target].iter().enumerate() {
                    let hf = cat.compose[h][f].expect("composable");
                    let r = homs[m.source].iter().position(|&x| x == hf).expect("in hom set");
                    mat[(r, c)] = 1;
                }
                mat
            })
            .collect();
        EIFunctor {
            ring,
            direction: Variance::Contravariant,
            values: homs.iter().map(|h| FGModule::free(ring, h.len())).collect(),
            action,
        }
    }

    /// The image of `F` under a change of basis `P_x` at each object: `P F(f) P^{-1}`.
    pub fn conjugate(&self, cat: &FiniteEICategory, change: &[Mat], inverse: &[Mat]) -> Result<Self> {
        let action = (0..cat.morphisms.len())
            .map(|f| {
                let (s, t) = self.endpoints(cat, f);
                change[t].mul(&self.action[f]).mul(&inverse[s])
            })
            .collect();
        let dims: Vec<usize> = (0..self.values.len()).map(|x| self.dim(x)).collect();
        EIFunctor::new(cat, self.ring, self.direction, &dims, action)
    }

    /// The subfunctor on coordinates `[from, to)` at each object, when those blocks are preserved.
    pub fn block(&self, cat: &FiniteEICategory, ranges: &[(usize, usize)]) -> Result<Self> {
        let mut action = Vec::new();
        for f in 0..cat.morphisms.len() {
            let (s, t) = self.endpoints(cat, f);
            let m = &self.action[f];
            let ((s0, s1), (t0, t1)) = (ranges[s], ranges[t]);
            for r in 0..m.rows() {
                for c in s0..s1 {
                    if !(t0..t1).contains(&r) && self.ring.reduce(m[(r, c)]) != 0 {
                        return Err(Error::InvalidArgument("the block is not a subfunctor".into()));
                    }
                }
            }
            action.push(m.block(t0, s0, t1 - t0, s1 - s0));
        }
        let dims: Vec<usize> = ranges.iter().map(|(a, b)| b - a).collect();
        EIFunctor::new(cat, self.ring, self.direction, &dims, action)
    }

    pub fn direct_sum(&self, cat: &FiniteEICategory, o: &EIFunctor) -> Result<Self> {
        let dims: Vec<usize> = (0..self.values.len()).map(|x| self.dim(x) + o.dim(x)).collect();
        let action = self.action.iter().zip(&o.action).map(|(a, b)| a.block_diag(b)).collect();
        EIFunctor::new(cat, self.ring, self.direction, &dims, action)
    }
}

/// Natural transformations `F -> G`: the module and a basis, each basis vector being the
/// concatenation over objects of the row-major component matrices.
#[derive(Clone, Debug, Serialize)]
pub struct NatTrans {
    pub module: FGModule,
    pub basis: Mat,
    offsets: Vec<usize>,
    shapes: Vec<(usize, usize)>,
}

impl NatTrans {
    /// Component at object `x` of the basis vector `i`.
    pub fn component(&self, i: usize, x: usize) -> Mat {
        let (r, c) = self.shapes[x];
        let v = self.basis.col(i);
        let rows: Vec<Vec<i64>> =
            (0..r).map(|a| v[self.offsets[x] + a * c..self.offsets[x] + (a + 1) * c].to_vec()).collect();
        Mat::from_rows(&rows, c)
    }
}

/// Solves the naturality equations `G(f) eta = eta F(f)` over all morphisms.
pub fn functor_hom(cat: &FiniteEICategory, f: &EIFunctor, g: &EIFunctor) -> Result<NatTrans> {
    if f.direction != g.direction || f.ring != g.ring {
        return Err(Error::InvalidArgument(
            "natural transformations need functors of the same variance and ring".into(),
        ));
    }
    let ring = f.ring;
    let shapes: Vec<(usize, usize)> = (0..cat.objects.len()).map(|x| (g.dim(x), f.dim(x))).collect();
    let mut offsets = Vec::new();
    let mut total = 0;
    for &(r, c) in &shapes {
        offsets.push(total);
        total += r * c;
    }
    let idx = |x: usize, r: usize, c: usize| offsets[x] + r * shapes[x].1 + c;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for m in 0..cat.morphisms.len() {
        let (s, t) = f.endpoints(cat, m);
        let (fm, gm) = (&f.action[m], &g.action[m]);
        // G(m) eta_s - eta_t F(m) = 0, an equation per entry of a dim G(t) x dim F(s) matrix
        for r in 0..g.dim(t) {
            for c in 0..f.dim(s) {
                let mut row = vec![0i64; total];
                for k in 0..g.dim(s) {
                    row[idx(s, k, c)] += gm[(r, k)];
                }
                for k in 0..f.dim(t) {
                    row[idx(t, r, k)] -= fm[(k, c)];
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let basis =
        if rows.is_empty() { Mat::identity(total) } else { kernel(&red(ring, &Mat::from_rows(&rows, total)), ring) };
    Ok(NatTrans { module: FGModule::free(ring, basis.cols()), basis, offsets, shapes })
}

/// `k Pi(-, •)` split by `[[1, 1], [1, -1]]` at both objects into the constant functor
/// and the sign functor.
#[derive(Clone, Debug, Serialize)]
pub struct SplitRepresentable {
    pub representable: EIFunctor,
    pub change_of_basis: Mat,
    pub constant: EIFunctor,
    pub sign: EIFunctor,
    /// The idempotent endomorphism of the representable projecting onto the constant summand.
    pub constant_projection: Vec<Mat>,
}

pub fn split_representable(q: i64, p: i64) -> Result<SplitRepresentable> {
    if q == 2 {
        return Err(Error::Hypothesis("splitting the representable needs q != 2".into()));
    }
    let ring = GroundRing::prime_field(q)?;
    let cat = build_pi_bz2(p)?;
    let rep = EIFunctor::representable(&cat, ring, TOP);
    if rep.dim(TOP) != 2 || rep.dim(BOTTOM) != 2 {
        return Err(Error::Inconsistent("the representable should have rank two at both objects".into()));
    }
    let change = red(ring, &Mat::from_rows(&[vec![1, 1], vec![1, -1]], 2));
    let half = ring.inverse(2).expect("q odd");
    let inverse = red(ring, &change.scale(half));
    let conj = rep.conjugate(&cat, &[change.clone(), change.clone()], &[inverse.clone(), inverse.clone()])?;
    let constant = conj.block(&cat, &[(0, 1), (0, 1)])?;
    let sign = conj.block(&cat, &[(1, 2), (1, 2)])?;
    if constant != EIFunctor::constant(&cat, ring, Variance::Contravariant) {
        return Err(Error::Inconsistent("the first summand is not the constant functor".into()));
    }
    if conj != constant.direct_sum(&cat, &sign)? {
        return Err(Error::Inconsistent("the summands do not reassemble the representable".into()));
    }
    let e = red(ring, &inverse.mul(&Mat::from_rows(&[vec![1, 0], vec![0, 0]], 2)).mul(&change));
    Ok(SplitRepresentable {
        representable: rep,
        change_of_basis: change,
        constant,
        sign,
        constant_projection: vec![e.clone(), e],
    })
}

/// A basis vector of `H^alpha(CP(U_C))` at one level: coefficient class times monomial.
#[derive(Clone, Debug)]
pub struct CellBasisElement {
    pub monomial: Mono,
    pub coefficient: GradedClass,
}

/// `H^{V+t}(f; A)` over `Pi`, with the bases used at each object.
#[derive(Clone, Debug)]
pub struct CoefficientSystem {
    pub category: FiniteEICategory,
    pub functor: EIFunctor,
    pub degree: ROGElement,
    pub top_basis: Vec<CellBasisElement>,
    pub bottom_basis: Vec<CellBasisElement>,
}

/// Monomials whose shifted point cohomology can be nonzero in degree `alpha`: both
/// dimensions of `alpha - deg(D_j C^n)` bounded below by the degree window.
fn candidate_monomials(p: i64, alpha: &ROGElement) -> Vec<Mono> {
    let (a, b) = alpha.dims();
    let bound = (a.abs() + b.abs() + 2 * p + 4) as u32;
    let mut out = Vec::new();
    for n in 0..=bound {
        for j in 0..p as u32 {
            if j + p as u32 * n <= bound * p as u32 {
                out.push((j, n));
            }
        }
    }
    out
}

fn level_basis(ring: GroundRing, p: i64, alpha: &ROGElement, level: Level) -> Result<Vec<CellBasisElement>> {
    let mut out = Vec::new();
    for m in candidate_monomials(p, alpha) {
        let shifted = alpha - &mono_degree(p, m);
        for c in GradedClass::degree_basis(ring, &shifted, level) {
            out.push(CellBasisElement { monomial: m, coefficient: c });
        }
    }
    Ok(out)
}

/// Coordinates of a class supported on one monomial in a basis of single-term classes.
fn coordinates(basis: &[CellBasisElement], m: Mono, c: &GradedClass) -> Result<Vec<i64>> {
    let mut v = vec![0; basis.len()];
    for (key, &x) in &c.terms {
        let i = basis
            .iter()
            .position(|b| b.monomial == m && b.coefficient.terms.contains_key(key))
            .ok_or_else(|| Error::Inconsistent(format!("class outside the basis at {}", mono_name(m))))?;
        let unit = basis[i].coefficient.terms[key];
        v[i] = c.ring.reduce(x * c.ring.inverse(unit).expect("basis coefficient is a unit"));
    }
    Ok(v)
}

/// The coefficient system of the fibration `B_{C_p} O(2) -> B_{C_p} Z/2` in degree `alpha`
/// over `F_q`: the two levels of the free module on the Schubert cells, restriction
/// downward, `kappa` by `(-1)^{j+n}` on `D_j C^n`, and trivial action of `C_p`.
pub fn coefficient_system_h(p: i64, q: i64, alpha: &ROGElement) -> Result<CoefficientSystem> {
    if p == 2 || q == 2 || p == q || !crate::ring::is_prime(p) || !crate::ring::is_prime(q) {
        return Err(Error::Hypothesis("the coefficient system needs distinct odd primes".into()));
    }
    if alpha.p != p {
        return Err(Error::InvalidArgument("degree for a different prime".into()));
    }
    let ring = GroundRing::prime_field(q)?;
    let cat = build_pi_bz2(p)?;
    let top_basis = level_basis(ring, p, alpha, Level::Top)?;
    let bottom_basis = level_basis(ring, p, alpha, Level::Bottom)?;
    let (dt, db) = (top_basis.len(), bottom_basis.len());
    let sign = |m: Mono| if (m.0 + m.1).is_multiple_of(2) { 1 } else { -1 };
    let kappa_top = Mat::diag(&top_basis.iter().map(|b| sign(b.monomial)).collect::<Vec<_>>());
    let tau_bottom = Mat::diag(&bottom_basis.iter().map(|b| sign(b.monomial)).collect::<Vec<_>>());
    let mut res = Mat::zeros(db, dt);
    for (c, b) in top_basis.iter().enumerate() {
        let v = coordinates(&bottom_basis, b.monomial, &restrict(&b.coefficient)?)?;
        for (r, x) in v.into_iter().enumerate() {
            res[(r, c)] = x;
        }
    }
    let action = cat
        .morphisms
        .iter()
        .map(|m| match (m.source, m.target, m.name.as_str()) {
            (TOP, TOP, "kappa") => kappa_top.clone(),
            (TOP, TOP, _) => Mat::identity(dt),
            (BOTTOM, BOTTOM, name) => {
                if name.ends_with('1') {
                    tau_bottom.clone()
                } else {
                    Mat::identity(db)
                }
            }
            (_, _, "a0") => res.clone(),
            _ => res.mul(&kappa_top),
        })
        .collect();
    let functor = EIFunctor::new(&cat, ring, Variance::Contravariant, &[dt, db], action)?;
    Ok(CoefficientSystem { category: cat, functor, degree: alpha.clone(), top_basis, bottom_basis })
}

/// Per-degree outcome of the fixed-point comparison.
#[derive(Clone, Debug, Serialize)]
pub struct Bo2DegreeReport {
    pub degree: Vec<i64>,
    pub dims: (i64, i64),
    pub fixed_rank: usize,
    pub member_rank: usize,
    pub basis: Vec<String>,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Bo2Report {
    pub p: i64,
    pub q: i64,
    pub max_dim: i64,
    pub degrees: Vec<Bo2DegreeReport>,
    pub monomials: Vec<String>,
    pub factorization_failures: Vec<String>,
    pub pass: bool,
}

/// `Hom(k, H^alpha(f; A))` as a subspace of the top value: evaluate each natural
/// transformation at the weakly terminal object.
pub fn fixed_points(sys: &CoefficientSystem) -> Result<Mat> {
    let cat = &sys.category;
    let k = EIFunctor::constant(cat, sys.functor.ring, Variance::Contravariant);
    let nat = functor_hom(cat, &k, &sys.functor)?;
    let y = cat.weakly_terminal().ok_or_else(|| Error::Inconsistent("no weakly terminal object".into()))?;
    let cols: Vec<Vec<i64>> = (0..nat.basis.cols()).map(|i| nat.component(i, y).col(0)).collect();
    Ok(Mat::from_cols(&cols, sys.functor.dim(y)))
}

/// Fixed points against the `j + n` even span in one degree, with the even monomials
/// that occur there.
pub fn bo2_degree(p: i64, q: i64, alpha: &ROGElement) -> Result<(Bo2DegreeReport, Vec<Mono>)> {
    let sys = coefficient_system_h(p, q, alpha)?;
    let fixed = fixed_points(&sys)?;
    let n = sys.top_basis.len();
    let members: Vec<usize> = (0..n)
        .filter(|&i| {
            bo2_member(&CPClass::term(sys.top_basis[i].coefficient.clone(), sys.top_basis[i].monomial).expect("term"))
        })
        .collect();
    let member_mat =
        Mat::from_cols(&members.iter().map(|&i| (0..n).map(|r| (r == i) as i64).collect()).collect::<Vec<_>>(), n);
    let fr = rank_mod(&fixed, q);
    let mr = rank_mod(&member_mat, q);
    let joint = rank_mod(&fixed.hstack(&member_mat), q);
    let report = Bo2DegreeReport {
        degree: alpha.coeffs.clone(),
        dims: alpha.dims(),
        fixed_rank: fr,
        member_rank: mr,
        basis: members
            .iter()
            .map(|&i| {
                let e = &sys.top_basis[i];
                format!("{}*{}", e.coefficient, mono_name(e.monomial))
            })
            .collect(),
        agrees: fr == mr && joint == fr,
    };
    Ok((report, members.iter().map(|&i| sys.top_basis[i].monomial).collect()))
}

/// Compares the fixed points with the span of the `j + n` even basis elements in every
/// degree with `|dims| <= max_dim`, and factors each even monomial that occurs over
/// the generator list, checking the factorization with the product solver.
pub fn bo2_check(p: i64, q: i64, max_dim: i64) -> Result<Bo2Report> {
    let ring = GroundRing::prime_field(q)?;
    let mut degrees = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for alpha in crate::point::degrees_in_box(p, &degree_ranges(p, max_dim)) {
        let (a, b) = alpha.dims();
        if a.abs() > max_dim || b.abs() > max_dim {
            continue;
        }
        let (report, members) = bo2_degree(p, q, &alpha)?;
        seen.extend(members);
        degrees.push(report);
    }
    let cp = CPRing::new(ring, p)?;
    let mut failures = Vec::new();
    for &m in &seen {
        let ok = match bo2_factorization(p, m) {
            None => false,
            Some(factors) => {
                let mut acc = CPClass::one(ring, p);
                for f in factors {
                    acc = cp.product(&acc, &cp.monomial(f)?)?;
                }
                acc == cp.monomial(m)?
            }
        };
        if !ok {
            failures.push(mono_name(m));
        }
    }
    let pass = degrees.iter().all(|d| d.agrees) && failures.is_empty();
    Ok(Bo2Report {
        p,
        q,
        max_dim,
        degrees,
        monomials: seen.iter().map(|&m| mono_name(m)).collect(),
        factorization_failures: failures,
        pass,
    })
}

/// Coefficient ranges covering every degree with `|dims| <= max_dim` (p odd: `a_0` and
/// the `lambda` coefficients, whose sum times two plus `a_0` is the total dimension).
fn degree_ranges(p: i64, max_dim: i64) -> Vec<(i64, i64)> {
    let len = crate::rog::rog_len(p);
    let mut r = vec![(-max_dim, max_dim)];
    let lam = if len > 2 { (-max_dim / 2 - 1, max_dim / 2 + 1) } else { (-max_dim, max_dim) };
    r.extend(std::iter::repeat_n(lam, len - 1));
    r
}
