//! Cohomology of the projective space on a complete complex universe: the free module
//! on `D_j C^n` over the point ring, the comparison maps `rho^*` and `ihat_N^*`, and
//! products solved from those images over a field in which p is invertible.

use crate::error::{Error, Result};
use crate::free::{omega, TrivialCellClass};
use crate::linalg::{rank_mod, solve_linear};
use crate::matrix::Mat;
use crate::point::{multiply, restrict, transfer, Gen, GradedClass, Level};
use crate::ring::GroundRing;
use crate::rog::ROGElement;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

/// `(j, n)` for `D_j C^n`, `0 <= j < p`.
pub type Mono = (u32, u32);

/// Degree of `D_j C^n`: `omega_j + n omega_p`.
pub fn mono_degree(p: i64, (j, n): Mono) -> ROGElement {
    &omega(p, j as i64) + &omega(p, p).scale(n as i64)
}

pub fn mono_name((j, n): Mono) -> String {
    let d = if j == 0 { String::new() } else { format!("D{j}") };
    let c = match n {
        0 => String::new(),
        1 => "C".to_string(),
        n => format!("C^{n}"),
    };
    match (d.is_empty(), c.is_empty()) {
        (true, true) => "1".to_string(),
        _ => d + &c,
    }
}

/// A class `sum c_{j,n} D_j C^n` with top-level point-cohomology coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPClass {
    pub ring: GroundRing,
    pub p: i64,
    pub terms: BTreeMap<Mono, GradedClass>,
}

impl CPClass {
    pub fn zero(ring: GroundRing, p: i64) -> Self {
        CPClass { ring, p, terms: BTreeMap::new() }
    }

    /// `c D_j C^n`; `c` must be a top-level class.
    pub fn term(c: GradedClass, m: Mono) -> Result<Self> {
        if c.level != Level::Top {
            return Err(Error::InvalidArgument("coefficients live at the top level".into()));
        }
        if m.0 as i64 >= c.p {
            return Err(Error::InvalidArgument(format!("D_{} needs j < p = {}", m.0, c.p)));
        }
        let mut x = CPClass::zero(c.ring, c.p);
        if !c.is_zero() {
            x.terms.insert(m, c);
        }
        Ok(x)
    }

    pub fn monomial(ring: GroundRing, p: i64, m: Mono) -> Result<Self> {
        CPClass::term(GradedClass::one(ring, p), m)
    }

    pub fn one(ring: GroundRing, p: i64) -> Self {
        CPClass::monomial(ring, p, (0, 0)).expect("unit")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &CPClass) -> Result<CPClass> {
        if self.ring != o.ring || self.p != o.p {
            return Err(Error::InvalidArgument("classes over different rings or primes".into()));
        }
        let mut out = self.clone();
        for (m, c) in &o.terms {
            let s = match out.terms.get(m) {
                Some(d) => d.add(c)?,
                None => c.clone(),
            };
            if s.is_zero() {
                out.terms.remove(m);
            } else {
                out.terms.insert(*m, s);
            }
        }
        Ok(out)
    }

    pub fn scale_by(&self, c: &GradedClass) -> Result<CPClass> {
        let mut out = CPClass::zero(self.ring, self.p);
        for (m, d) in &self.terms {
            out = out.add(&CPClass::term(multiply(c, d)?, *m)?)?;
        }
        Ok(out)
    }

    /// Total degrees carried by the terms.
    pub fn degrees(&self) -> Vec<ROGElement> {
        let mut out: Vec<ROGElement> = Vec::new();
        for (m, c) in &self.terms {
            for a in c.degrees() {
                let d = &a + &mono_degree(self.p, *m);
                if !out.contains(&d) {
                    out.push(d);
                }
            }
        }
        out.sort();
        out
    }

    /// Terms as `(monomial, coefficient)` strings.
    pub fn named_terms(&self) -> Vec<(String, String)> {
        self.terms.iter().map(|(m, c)| (mono_name(*m), c.to_string())).collect()
    }
}

impl fmt::Display for CPClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| match (c.to_string().as_str(), *m) {
                ("1", m) => mono_name(m),
                (s, (0, 0)) => s.to_string(),
                (s, m) => format!("({s}){}", mono_name(m)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The class `iota_delta` at the bottom.
fn iota(ring: GroundRing, delta: &ROGElement) -> Result<GradedClass> {
    GradedClass::basis(ring, delta, Gen::Iota)
}

/// `rho^*`: `c D_j C^n` goes to `r(c) z^{j+pn}`, with the bottom coefficient moved into
/// degree `alpha - 2(j + pn)` by the unit `iota`.
pub fn rho_star(x: &CPClass) -> Result<TrivialCellClass> {
    let mut out = TrivialCellClass::zero(x.ring, x.p, Level::Bottom);
    for (&(j, n), c) in &x.terms {
        let e = j as i64 + x.p * n as i64;
        let shift = &mono_degree(x.p, (j, n)) - &ROGElement::trivial(x.p, 2 * e);
        let r = multiply(&restrict(c)?, &iota(x.ring, &shift)?)?;
        out = out.add(&TrivialCellClass::monomial(r, e as u32))?;
    }
    Ok(out)
}

/// `d(alpha)` as an integer; for p = 2 it never enters a nonempty product.
fn twist(a: &ROGElement) -> i64 {
    a.d_lift()
}

/// `d_{N,j}`: zero below the diagonal, one on it, and a product of twists
/// `d(lambda_{|i-N|} - lambda_{|i-j|})` over `i < j` above it, indices folded mod p.
pub fn d_nj(p: i64, n: i64, j: i64) -> i64 {
    use std::cmp::Ordering::*;
    match n.cmp(&j) {
        Less => 0,
        Equal => 1,
        Greater => (0..j)
            .map(|i| twist(&(&ROGElement::lambda(p, (i - n).abs()) - &ROGElement::lambda(p, (i - j).abs()))))
            .product(),
    }
}

/// `eps_alpha` for an actual representation with no fixed part (`1` at alpha = 0).
fn eps(ring: GroundRing, alpha: &ROGElement) -> Result<GradedClass> {
    if alpha.is_zero() {
        Ok(GradedClass::one(ring, alpha.p))
    } else {
        GradedClass::basis(ring, alpha, Gen::Eps)
    }
}

/// Canonical representative of a top class modulo the image of transfer, over a field:
/// in each degree the transfer image is at most a line, and its leading coordinate is
/// cleared.
pub fn bracket(c: &GradedClass) -> Result<GradedClass> {
    let GroundRing::PrimeField(q) = c.ring else {
        return Err(Error::Unsupported("bracket reduction needs a prime field".into()));
    };
    if c.level != Level::Top {
        return Err(Error::InvalidArgument("bracket reduction applies to top classes".into()));
    }
    let mut out = c.clone();
    for a in c.degrees() {
        let Ok(b) = iota(c.ring, &a) else { continue };
        let w = transfer(&b)?;
        let Some((key, &lead)) = w.terms.iter().next() else { continue };
        let Some(&v) = out.terms.get(key) else { continue };
        let k = v * crate::ring::inv_mod(lead, q).expect("nonzero mod q") % q;
        out = out.sub(&w.scale(k))?;
    }
    Ok(out)
}

fn bracket_all(x: &TrivialCellClass) -> Result<TrivialCellClass> {
    x.map(bracket, Level::Top)
}

/// `ihat_N^*`: `c D_j C^n` goes to `[c d_{N,j} eps_{omega_j + n omega_{p-1}}] z_N^n`.
pub fn ihat_star(n_fixed: i64, x: &CPClass) -> Result<TrivialCellClass> {
    let p = x.p;
    if !(0..p).contains(&n_fixed) {
        return Err(Error::InvalidArgument(format!("fixed component {n_fixed} out of range for p = {p}")));
    }
    let mut out = TrivialCellClass::zero(x.ring, p, Level::Top);
    for (&(j, n), c) in &x.terms {
        let d = d_nj(p, n_fixed, j as i64);
        if x.ring.reduce(d) == 0 {
            continue;
        }
        let e = eps(x.ring, &(&omega(p, j as i64) + &omega(p, p - 1).scale(n as i64)))?;
        let v = bracket(&multiply(c, &e)?.scale(d))?;
        out = out.add(&TrivialCellClass::monomial(v, n))?;
    }
    Ok(out)
}

/// Key of a coordinate in the image of `rho^* (+) ihat^*`: target (0 for `rho^*`,
/// `N + 1` for `ihat_N^*`), power of `z`, and point basis element.
type ImageKey = (u32, u32, ROGElement, Gen);

fn flatten(tag: u32, x: &TrivialCellClass, out: &mut BTreeMap<ImageKey, i64>) {
    for (&e, c) in &x.coeffs {
        for ((a, g), &v) in &c.terms {
            *out.entry((tag, e, a.clone(), *g)).or_insert(0) += v;
        }
    }
}

/// Images of a class under `rho^*` and every `ihat_N^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Images {
    pub rho: TrivialCellClass,
    pub ihat: Vec<TrivialCellClass>,
}

impl Images {
    pub fn of(x: &CPClass) -> Result<Images> {
        Ok(Images { rho: rho_star(x)?, ihat: (0..x.p).map(|n| ihat_star(n, x)).collect::<Result<_>>()? })
    }

    pub fn multiply(&self, o: &Images) -> Result<Images> {
        Ok(Images {
            rho: self.rho.multiply(&o.rho)?,
            ihat: self.ihat.iter().zip(&o.ihat).map(|(a, b)| bracket_all(&a.multiply(b)?)).collect::<Result<_>>()?,
        })
    }

    fn coordinates(&self) -> BTreeMap<ImageKey, i64> {
        let mut out = BTreeMap::new();
        flatten(0, &self.rho, &mut out);
        for (n, x) in self.ihat.iter().enumerate() {
            flatten(n as u32 + 1, x, &mut out);
        }
        out
    }
}

/// Multiplication on `H^*(CP(U))` over `F_q`, q != p, with monomial products cached.
#[derive(Debug)]
pub struct CPRing {
    pub ring: GroundRing,
    pub p: i64,
    cache: Mutex<BTreeMap<(Mono, Mono), CPClass>>,
}

/// Diagnostics of one monomial product: system size and rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveInfo {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
}

impl CPRing {
    pub fn new(ring: GroundRing, p: i64) -> Result<Self> {
        let GroundRing::PrimeField(q) = ring else {
            return Err(Error::Hypothesis("products are solved over a prime field".into()));
        };
        if q == p || !crate::ring::is_prime(p) {
            return Err(Error::Hypothesis(format!("need a prime p invertible in F_{q}, got p = {p}")));
        }
        Ok(CPRing { ring, p, cache: Mutex::new(BTreeMap::new()) })
    }

    pub fn monomial(&self, m: Mono) -> Result<CPClass> {
        CPClass::monomial(self.ring, self.p, m)
    }

    /// `D_j C^n * D_k C^m` with the system diagnostics.
    pub fn solve_monomials(&self, a: Mono, b: Mono) -> Result<(CPClass, SolveInfo)> {
        let (p, ring) = (self.p, self.ring);
        let beta = &mono_degree(p, a) + &mono_degree(p, b);
        let s0 = a.1 + b.1;
        let jk = a.0 + b.0;
        let mut slots: Vec<Mono> = (0..p as u32).map(|l| (l, s0)).collect();
        if jk as i64 >= p {
            slots.extend((0..=jk - p as u32).map(|l| (l, s0 + 1)));
        }
        let mut unknowns: Vec<(Mono, GradedClass)> = Vec::new();
        for m in slots {
            let gamma = &beta - &mono_degree(p, m);
            for c in GradedClass::degree_basis(ring, &gamma, Level::Top) {
                unknowns.push((m, c));
            }
        }
        let target = Images::of(&self.monomial(a)?)?.multiply(&Images::of(&self.monomial(b)?)?)?.coordinates();
        let columns: Vec<BTreeMap<ImageKey, i64>> = unknowns
            .iter()
            .map(|(m, c)| Ok(Images::of(&CPClass::term(c.clone(), *m)?)?.coordinates()))
            .collect::<Result<_>>()?;
        let mut keys: Vec<&ImageKey> = target.keys().chain(columns.iter().flat_map(|c| c.keys())).collect();
        keys.sort();
        keys.dedup();
        let mut mat = Mat::zeros(keys.len(), unknowns.len());
        for (col, img) in columns.iter().enumerate() {
            for (row, k) in keys.iter().enumerate() {
                mat[(row, col)] = ring.reduce(img.get(*k).copied().unwrap_or(0));
            }
        }
        let rhs: Vec<i64> = keys.iter().map(|k| ring.reduce(target.get(*k).copied().unwrap_or(0))).collect();
        let info = SolveInfo { unknowns: unknowns.len(), equations: keys.len(), rank: rank_mod(&mat, ring.modulus()) };
        let what = format!("{} * {} over {ring}, p = {p}", mono_name(a), mono_name(b));
        let sol =
            solve_linear(&mat, &rhs, ring)?.ok_or_else(|| Error::Inconsistent(format!("no solution for {what}")))?;
        if info.rank < info.unknowns {
            return Err(Error::Inconsistent(format!(
                "{what} is underdetermined: rank {} < {}",
                info.rank, info.unknowns
            )));
        }
        let mut out = CPClass::zero(ring, p);
        for ((m, c), v) in unknowns.iter().zip(sol) {
            out = out.add(&CPClass::term(c.scale(v), *m)?)?;
        }
        Ok((out, info))
    }

    fn monomial_product(&self, a: Mono, b: Mono) -> Result<CPClass> {
        let key = if a <= b { (a, b) } else { (b, a) };
        if let Some(x) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(x.clone());
        }
        let (x, _) = self.solve_monomials(key.0, key.1)?;
        self.cache.lock().expect("cache lock").insert(key, x.clone());
        Ok(x)
    }

    /// Product of two classes. The degrees `omega_j` are complex, so the monomials
    /// commute strictly with every point class.
    pub fn product(&self, x: &CPClass, y: &CPClass) -> Result<CPClass> {
        let mut out = CPClass::zero(self.ring, self.p);
        for (a, c) in &x.terms {
            for (b, d) in &y.terms {
                let coeff = multiply(c, d)?;
                if coeff.is_zero() {
                    continue;
                }
                out = out.add(&self.monomial_product(*a, *b)?.scale_by(&coeff)?)?;
            }
        }
        Ok(out)
    }
}

/// Membership in the invariant subalgebra: every monomial has `j + n` even.
pub fn bo2_member(x: &CPClass) -> bool {
    x.terms.keys().all(|&(j, n)| (j + n) % 2 == 0)
}

/// The generators `D_2, D_4, ..., D_{p-1}, D_1 C, D_3 C, ..., D_{p-2} C, C^2` as monomials.
pub fn bo2_generator_monomials(p: i64) -> Vec<Mono> {
    let p = p as u32;
    let mut out: Vec<Mono> = (2..p).step_by(2).map(|j| (j, 0)).collect();
    out.extend((1..p.saturating_sub(1)).step_by(2).map(|j| (j, 1)));
    out.push((0, 2));
    out
}

pub fn bo2_generators(ring: GroundRing, p: i64) -> Result<Vec<CPClass>> {
    bo2_generator_monomials(p).into_iter().map(|m| CPClass::monomial(ring, p, m)).collect()
}

/// Writes a member monomial as a product of generators: `D_j (C^2)^{n/2}` for j even,
/// `(D_j C)(C^2)^{(n-1)/2}` for j odd; `None` for non-members.
pub fn bo2_factorization(p: i64, (j, n): Mono) -> Option<Vec<Mono>> {
    if (j + n) % 2 != 0 || j as i64 >= p {
        return None;
    }
    let mut out = Vec::new();
    let mut rest = n;
    if j % 2 == 1 {
        out.push((j, 1));
        rest -= 1;
    } else if j > 0 {
        out.push((j, 0));
    }
    out.extend(std::iter::repeat_n((0, 2), rest as usize / 2));
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const F7: GroundRing = GroundRing::PrimeField(7);

    fn deg(p: i64, c: &[i64]) -> ROGElement {
        ROGElement::new(p, c.to_vec()).unwrap()
    }

    #[test]
    fn names_and_degrees() {
        assert_eq!(mono_name((0, 0)), "1");
        assert_eq!(mono_name((1, 2)), "D1C^2");
        assert_eq!(mono_degree(3, (1, 1)).dims(), (2, 8));
        assert_eq!(mono_degree(2, (1, 0)), deg(2, &[0, 2]));
    }

    #[test]
    fn d_nj_cases() {
        for p in [3, 5, 7] {
            for j in 0..p {
                assert_eq!(d_nj(p, j, j), 1);
                for n in 0..j {
                    assert_eq!(d_nj(p, n, j), 0);
                }
            }
        }
        assert_eq!(d_nj(5, 2, 1), 2);
        assert_eq!(d_nj(5, 2, 1), (&ROGElement::lambda(5, 2) - &ROGElement::lambda(5, 1)).d_lift());
    }

    #[test]
    fn rho_examples() {
        let x = CPClass::monomial(F7, 3, (2, 0)).unwrap();
        let r = rho_star(&x).unwrap();
        assert_eq!(r.coeffs.keys().copied().collect::<Vec<_>>(), vec![2]);
        assert!(rho_star(&CPClass::one(F7, 3)).unwrap().coeffs[&0] == restrict(&GradedClass::one(F7, 3)).unwrap());
        // xi_alpha D1C goes to iota_alpha z^{1+p}
        let a = deg(3, &[-2, 1]);
        let xi = GradedClass::basis(F7, &a, Gen::Xi).unwrap();
        let r = rho_star(&CPClass::term(xi, (1, 1)).unwrap()).unwrap();
        assert_eq!(r.coeffs.keys().copied().collect::<Vec<_>>(), vec![4]);
        assert_eq!(r.coeffs[&4].terms.values().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn ihat_examples() {
        let one = CPClass::one(F7, 3);
        assert_eq!(ihat_star(0, &one).unwrap().coeffs[&0], GradedClass::one(F7, 3));
        assert!(ihat_star(0, &CPClass::monomial(F7, 3, (1, 0)).unwrap()).unwrap().is_zero());
        let d1 = ihat_star(1, &CPClass::monomial(F7, 3, (1, 0)).unwrap()).unwrap();
        assert_eq!(d1.coeffs[&0], GradedClass::basis(F7, &ROGElement::lambda(3, 1), Gen::Eps).unwrap());
    }

    #[test]
    fn bracket_kills_transfers() {
        let t = transfer(&iota(F7, &ROGElement::zero(3)).unwrap()).unwrap();
        assert!(bracket(&t).unwrap().is_zero());
        let one = GradedClass::one(F7, 3);
        assert_eq!(bracket(&one).unwrap(), one);
        assert!(bracket(&GradedClass::one(GroundRing::Integers, 3)).is_err());
    }

    #[test]
    fn p2_relation() {
        for q in [3, 5, 7, 11] {
            let ring = GroundRing::PrimeField(q);
            let cp = CPRing::new(ring, 2).unwrap();
            let d1 = cp.monomial((1, 0)).unwrap();
            let sq = cp.product(&d1, &d1).unwrap();
            let e2 = GradedClass::basis(ring, &deg(2, &[0, 2]), Gen::Eps).unwrap();
            let xi = GradedClass::basis(ring, &deg(2, &[-2, 2]), Gen::Xi).unwrap();
            let expect = CPClass::term(e2, (1, 0)).unwrap().add(&CPClass::term(xi, (0, 1)).unwrap()).unwrap();
            assert_eq!(sq, expect, "q = {q}");
        }
    }

    #[test]
    fn unit_and_hypotheses() {
        let cp = CPRing::new(F7, 3).unwrap();
        for m in [(0, 0), (1, 0), (2, 1), (0, 2)] {
            let x = cp.monomial(m).unwrap();
            assert_eq!(cp.product(&x, &CPClass::one(F7, 3)).unwrap(), x);
        }
        assert!(CPRing::new(GroundRing::PrimeField(3), 3).is_err());
        assert!(CPRing::new(GroundRing::Integers, 3).is_err());
    }

    fn monomials(p: i64, nmax: u32) -> Vec<Mono> {
        (0..=nmax).flat_map(|n| (0..p as u32).map(move |j| (j, n))).collect()
    }

    #[test]
    fn image_oracle_p3() {
        let cp = CPRing::new(F7, 3).unwrap();
        for a in monomials(3, 3) {
            for b in monomials(3, 3) {
                if a.1 + b.1 > 3 {
                    continue;
                }
                let (xy, info) = cp.solve_monomials(a, b).unwrap();
                assert_eq!(info.rank, info.unknowns);
                let lhs = Images::of(&xy).unwrap();
                let rhs = Images::of(&cp.monomial(a).unwrap())
                    .unwrap()
                    .multiply(&Images::of(&cp.monomial(b).unwrap()).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "{} * {}", mono_name(a), mono_name(b));
            }
        }
    }

    #[test]
    fn associative_and_commutative() {
        for (ring, p) in [(F7, 3), (GroundRing::PrimeField(3), 5), (GroundRing::PrimeField(11), 2)] {
            let cp = CPRing::new(ring, p).unwrap();
            let ms = monomials(p, 1);
            for &a in &ms {
                for &b in &ms {
                    let (x, y) = (cp.monomial(a).unwrap(), cp.monomial(b).unwrap());
                    let xy = cp.solve_monomials(a, b).unwrap().0;
                    assert_eq!(xy, cp.solve_monomials(b, a).unwrap().0);
                    for &c in ms.iter().take(p as usize) {
                        let z = cp.monomial(c).unwrap();
                        let l = cp.product(&cp.product(&x, &y).unwrap(), &z).unwrap();
                        let r = cp.product(&x, &cp.product(&y, &z).unwrap()).unwrap();
                        assert_eq!(l, r, "p={p}: {} {} {}", mono_name(a), mono_name(b), mono_name(c));
                    }
                }
            }
        }
    }

    #[test]
    fn c_is_polynomial_and_d_times_c_is_basis() {
        let cp = CPRing::new(F7, 5).unwrap();
        for j in 0..5 {
            for n in 0..3 {
                assert_eq!(cp.solve_monomials((j, 0), (0, n)).unwrap().0, cp.monomial((j, n)).unwrap());
            }
        }
    }

    #[test]
    fn bo2_rules() {
        assert_eq!(bo2_generator_monomials(3), vec![(2, 0), (1, 1), (0, 2)]);
        assert_eq!(bo2_generator_monomials(5), vec![(2, 0), (4, 0), (1, 1), (3, 1), (0, 2)]);
        let m = |j, n| CPClass::monomial(F7, 3, (j, n)).unwrap();
        assert!(bo2_member(&m(1, 1)));
        assert!(!bo2_member(&m(1, 0)));
        assert!(bo2_member(&CPClass::one(F7, 3)));
        assert_eq!(bo2_factorization(3, (1, 3)), Some(vec![(1, 1), (0, 2)]));
        assert_eq!(bo2_factorization(3, (0, 0)), Some(vec![]));
        assert_eq!(bo2_factorization(3, (2, 1)), None);
    }

    #[test]
    fn parity_span_is_not_closed() {
        // D1 D2 = xi C + eps D2 mixes parities: the coefficient eps lies in a degree
        // with |gamma| = 2, and the action that fixes coefficients is not multiplicative
        let cp = CPRing::new(F7, 3).unwrap();
        let x = cp.product(&cp.monomial((2, 0)).unwrap(), &cp.monomial((1, 1)).unwrap()).unwrap();
        assert!(!bo2_member(&x));
        assert_eq!(x.terms.keys().copied().collect::<Vec<_>>(), vec![(0, 2), (2, 1)]);
        // with the sign (-1)^{|gamma|/2} on coefficients the action is the scalar
        // (-1)^{|alpha|/2} on each degree, hence multiplicative
        for a in monomials(3, 1) {
            for b in monomials(3, 1) {
                let xy = cp.solve_monomials(a, b).unwrap().0;
                let total = (&mono_degree(3, a) + &mono_degree(3, b)).dims().1 / 2;
                for (m, c) in &xy.terms {
                    for g in c.degrees() {
                        assert_eq!((g.dims().1 / 2 + (m.0 + m.1) as i64 - total).rem_euclid(2), 0);
                    }
                }
            }
        }
    }
}
