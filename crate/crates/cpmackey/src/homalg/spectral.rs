//! The Eilenberg E_2 page `Ext^u(H_v, N^t)` and a collapse analysis: bidegree
//! exclusion, Leibniz deductions from product relations, and explicit certificates.

use super::ext::{ext, CupProducts, ExtClass, GradedCoefficients};
use super::GroupRingModule;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::module::{describe_invariants, FGModule};
use crate::ring::GroundRing;
use serde::Serialize;
use std::collections::BTreeMap;

/// `(t, u, v) -> Ext^u(H_v, N^t)`.
#[derive(Clone, Debug, Serialize)]
pub struct TrigradedPage {
    pub ring: GroundRing,
    pub entries: BTreeMap<(usize, usize, usize), FGModule>,
}

/// `(s, t) -> E_2^{s,t}`, `s` the Ext degree and `t` the coefficient degree.
#[derive(Clone, Debug, Serialize)]
pub struct BigradedPage {
    pub ring: GroundRing,
    pub smax: usize,
    pub tmax: usize,
    pub entries: BTreeMap<(usize, usize), FGModule>,
}

/// E_2 of the Eilenberg spectral sequence for the homology `H_v` of the universal cover,
/// as `k[pi]`-modules, with coefficients `N^*`, for `u <= umax`.
pub fn eilenberg_e2(
    hstar: &[(usize, GroupRingModule)],
    coeffs: &GradedCoefficients,
    umax: usize,
) -> Result<TrigradedPage> {
    let mut entries = BTreeMap::new();
    for (v, h) in hstar {
        for (t, n) in coeffs.modules.iter().enumerate() {
            for u in 0..=umax {
                entries.insert((t, u, *v), ext(h, n, u)?);
            }
        }
    }
    Ok(TrigradedPage { ring: coeffs.ring, entries })
}

impl TrigradedPage {
    /// The bigraded page when the homology is concentrated in `v = 0`.
    pub fn bigraded(&self) -> Result<BigradedPage> {
        if self.entries.keys().any(|&(_, _, v)| v != 0) {
            return Err(Error::Unsupported("the bigraded page needs homology concentrated in degree 0".into()));
        }
        let entries: BTreeMap<(usize, usize), FGModule> =
            self.entries.iter().map(|(&(t, u, _), m)| ((u, t), m.clone())).collect();
        let smax = entries.keys().map(|k| k.0).max().unwrap_or(0);
        let tmax = entries.keys().map(|k| k.1).max().unwrap_or(0);
        Ok(BigradedPage { ring: self.ring, smax, tmax, entries })
    }
}

impl BigradedPage {
    pub fn get(&self, s: usize, t: usize) -> FGModule {
        self.entries.get(&(s, t)).cloned().unwrap_or_else(|| FGModule::zero(self.ring))
    }

    /// Nonzero entries of total degree `n`.
    pub fn total_degree(&self, n: usize) -> Vec<((usize, usize), FGModule)> {
        (0..=n)
            .map(|s| (s, n - s))
            .filter(|&(s, t)| s <= self.smax && t <= self.tmax)
            .map(|k| (k, self.get(k.0, k.1)))
            .filter(|(_, m)| !m.is_zero_module())
            .collect()
    }

    /// Whether total degree `n` lies fully inside the computed range.
    pub fn covers(&self, n: usize) -> bool {
        n <= self.smax && n <= self.tmax
    }

    /// Rank over a field of the abutment in degree `n`, assuming collapse.
    pub fn total_dimension(&self, n: usize) -> Result<usize> {
        if !self.ring.is_field() {
            return Err(Error::Unsupported("dimensions of the abutment need a field".into()));
        }
        if !self.covers(n) {
            return Err(Error::InvalidArgument(format!("degree {n} outside the computed range")));
        }
        Ok(self.total_degree(n).iter().map(|(_, m)| m.dimension()).sum())
    }

    /// One line per `t`, highest first; each cell is the group's short name.
    pub fn grid(&self) -> String {
        let cells: BTreeMap<(usize, usize), String> = self
            .entries
            .iter()
            .map(|(&k, m)| {
                (k, if m.is_zero_module() { ".".to_string() } else { describe_invariants(self.ring, &m.invariants()) })
            })
            .collect();
        let width = cells.values().map(|c| c.len()).max().unwrap_or(1);
        let mut out = String::new();
        for t in (0..=self.tmax).rev() {
            out.push_str(&format!("{t:>3} |"));
            for s in 0..=self.smax {
                let c = cells.get(&(s, t)).map(String::as_str).unwrap_or(".");
                out.push_str(&format!(" {c:>width$}"));
            }
            out.push('\n');
        }
        out.push_str("    +");
        for s in 0..=self.smax {
            out.push_str(&format!(" {s:>width$}"));
        }
        out.push('\n');
        out
    }
}

/// The E_2 page for BO(2) through the fibration `CP^infty -> BO(2) -> B Z/2`, and the
/// cup product structure that computes it.
pub fn bo2_page(ring: GroundRing, smax: usize, tmax: usize) -> Result<(BigradedPage, CupProducts)> {
    let coeffs = GradedCoefficients::sign_polynomial(ring, tmax);
    let k = GroupRingModule::trivial(ring, &coeffs.group);
    let page = eilenberg_e2(&[(0, k)], &coeffs, smax)?.bigraded()?;
    let cup = CupProducts::new(coeffs, smax, false)?;
    Ok((page, cup))
}

/// Named algebra generators of E_2 and linear relations among monomials in them;
/// a relation `sum c_i m_i = 0` lists `(c_i, m_i)` with `m_i` a list of generator indices.
#[derive(Clone, Debug, Serialize)]
pub struct LeibnizData {
    pub names: Vec<String>,
    pub generators: Vec<ExtClass>,
    pub relations: Vec<Vec<(i64, Vec<usize>)>>,
}

impl LeibnizData {
    /// `p1` at (0,4), `alpha` at (2,0), `beta` at (1,2), and the relations
    /// `2 alpha = 0`, `2 beta = 0`, `beta^2 = p1 alpha`, keeping those that are nonzero.
    pub fn bo2(cup: &CupProducts) -> Result<Self> {
        let mut names = Vec::new();
        let mut generators = Vec::new();
        for (name, s, t) in [("p1", 0, 4), ("alpha", 2, 0), ("beta", 1, 2)] {
            if cup.group(s, t).is_some_and(|g| g.invariants().len() == 1) {
                names.push(name.to_string());
                generators.push(cup.generator(s, t, 0)?);
            }
        }
        let idx = |n: &str| names.iter().position(|x| x == n);
        let mut relations = Vec::new();
        if let (Some(p), Some(a), Some(b)) = (idx("p1"), idx("alpha"), idx("beta")) {
            relations.push(vec![(2, vec![a])]);
            relations.push(vec![(2, vec![b])]);
            relations.push(vec![(1, vec![b, b]), (-1, vec![p, a])]);
        }
        Ok(LeibnizData { names, generators, relations })
    }

    /// Evaluates a monomial; `None` when it leaves the computed range.
    pub fn monomial(&self, cup: &CupProducts, m: &[usize]) -> Result<Option<ExtClass>> {
        let mut acc = unit(cup)?;
        for &i in m {
            match cup.product(&acc, &self.generators[i])? {
                Some(x) => acc = x,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    /// Each relation with whether it holds in E_2 (`None` when out of range).
    pub fn check_relations(&self, cup: &CupProducts) -> Result<Vec<(String, Option<bool>)>> {
        let mut out = Vec::new();
        for rel in &self.relations {
            out.push((self.relation_name(rel), self.evaluate(cup, rel, &|_: usize| None)?.map(|c| c.is_zero())));
        }
        Ok(out)
    }

    fn relation_name(&self, rel: &[(i64, Vec<usize>)]) -> String {
        rel.iter()
            .map(|(c, m)| {
                let mono = m.iter().map(|&i| self.names[i].as_str()).collect::<Vec<_>>().join("*");
                format!("{c}*{mono}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
            + " = 0"
    }

    /// `sum c_i m_i` with `d` applied by the Leibniz rule when `diff` gives the value
    /// of `d` on generators (`None` meaning zero); without any `Some`, the plain value.
    fn evaluate(
        &self,
        cup: &CupProducts,
        rel: &[(i64, Vec<usize>)],
        diff: &dyn Fn(usize) -> Option<ExtClass>,
    ) -> Result<Option<ExtClass>> {
        let differentiate = (0..self.generators.len()).any(|i| diff(i).is_some());
        let mut total: Option<ExtClass> = None;
        for (c, m) in rel {
            let term = if differentiate { self.leibniz(cup, m, diff)? } else { self.monomial(cup, m)?.map(Some) };
            let Some(term) = term else { return Ok(None) };
            let Some(term) = term else { continue };
            let term = term.scale(*c);
            total = Some(match total {
                None => term,
                Some(t) => t.add(&term)?,
            });
        }
        Ok(total)
    }

    /// `d(g_1 ... g_k) = sum_i (-1)^{|g_1| + ... + |g_{i-1}|} g_1 ... d(g_i) ... g_k`.
    /// Outer `None`: out of range; inner `None`: every term vanishes identically.
    fn leibniz(
        &self,
        cup: &CupProducts,
        m: &[usize],
        diff: &dyn Fn(usize) -> Option<ExtClass>,
    ) -> Result<Option<Option<ExtClass>>> {
        let mut total: Option<ExtClass> = None;
        let mut deg = 0;
        for (pos, &gi) in m.iter().enumerate() {
            if let Some(dg) = diff(gi) {
                let mut acc = unit(cup)?;
                for (q, &gj) in m.iter().enumerate() {
                    let factor = if q == pos { dg.clone() } else { self.generators[gj].clone() };
                    match cup.product(&acc, &factor)? {
                        Some(x) => acc = x,
                        None => return Ok(None),
                    }
                }
                let term = if deg % 2 == 0 { acc } else { acc.scale(-1) };
                total = Some(match total {
                    None => term,
                    Some(t) => t.add(&term)?,
                });
            }
            deg += self.generators[gi].degree();
        }
        Ok(Some(total))
    }
}

fn unit(cup: &CupProducts) -> Result<ExtClass> {
    cup.unit()
}

/// A fact about the abutment used to kill a differential.
#[derive(Clone, Debug, Serialize)]
pub enum Certificate {
    /// The abutment is nonzero in this total degree.
    NonzeroCohomology { degree: usize, statement: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct CollapseReport {
    pub generated: bool,
    pub relations_hold: bool,
    /// Every `d_r` on a generator with a nonzero target, as `d_r(name): (s,t) -> (s',t')`.
    pub candidates: Vec<String>,
    pub excluded_by_leibniz: Vec<String>,
    pub certified: Vec<(String, String)>,
    pub residual: Vec<String>,
    /// Differentials whose target lies outside the computed range.
    pub unchecked: Vec<String>,
    pub collapses: bool,
}

#[derive(Clone, Debug)]
struct Candidate {
    gen: usize,
    r: usize,
    target: (usize, usize),
    label: String,
}

/// Every nonzero entry of the page is spanned by monomials in the generators.
fn generated_by(page: &BigradedPage, cup: &CupProducts, data: &LeibnizData) -> Result<bool> {
    let mut spans: BTreeMap<(usize, usize), Vec<Vec<i64>>> = BTreeMap::new();
    let mut frontier = vec![unit(cup)?];
    let mut seen = std::collections::BTreeSet::new();
    while let Some(x) = frontier.pop() {
        if !seen.insert(x.clone()) {
            continue;
        }
        spans.entry((x.s, x.t)).or_default().push(x.coords.clone());
        for g in &data.generators {
            if let Some(y) = cup.product(&x, g)? {
                if !y.is_zero() {
                    frontier.push(y);
                }
            }
        }
    }
    for (&(s, t), m) in &page.entries {
        if m.is_zero_module() || s > cup.smax || t > cup.coeffs.tmax() {
            continue;
        }
        let inv = m.invariants();
        let vecs = spans.get(&(s, t)).cloned().unwrap_or_default();
        let rels = Mat::diag(&inv).hstack(&Mat::from_cols(&vecs, inv.len()));
        if !FGModule::new(page.ring, inv.len(), rels)?.is_zero_module() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All elements of a finite canonical group.
fn elements(inv: &[i64]) -> Option<Vec<Vec<i64>>> {
    let mut out = vec![vec![]];
    for &d in inv {
        if d == 0 {
            return None;
        }
        out = out.into_iter().flat_map(|v| (0..d).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    Some(out)
}

const ASSIGNMENT_CAP: usize = 4096;

/// Decides which differentials `d_r`, `2 <= r <= rmax`, on the generators can be nonzero.
///
/// Base-row generators (`t = 0`) are permanent cycles. When every candidate below `r`
/// is excluded, `E_r = E_2` and `d_r` is a derivation determined by the generators, so
/// a candidate that vanishes in every assignment consistent with the relations is
/// excluded. A `NonzeroCohomology` certificate in degree n kills `d_r(x)` when `E_2` in
/// total degree n is a single group of prime order generated by `x` and nothing can
/// hit degree n.
pub fn collapse_report(
    page: &BigradedPage,
    cup: &CupProducts,
    data: &LeibnizData,
    certificates: &[Certificate],
    rmax: usize,
) -> Result<CollapseReport> {
    let generated = generated_by(page, cup, data)?;
    let relations_hold = data.check_relations(cup)?.iter().all(|(_, ok)| ok.unwrap_or(true));
    let mut candidates = Vec::new();
    let mut unchecked = Vec::new();
    for (gi, g) in data.generators.iter().enumerate() {
        if g.t == 0 {
            continue;
        }
        for r in 2..=rmax.min(g.t + 1) {
            let target = (g.s + r, g.t + 1 - r);
            let label = format!("d{r}({}): ({},{}) -> ({},{})", data.names[gi], g.s, g.t, target.0, target.1);
            if target.0 > page.smax || target.0 > cup.smax {
                unchecked.push(label);
            } else if !page.get(target.0, target.1).is_zero_module() {
                candidates.push(Candidate { gen: gi, r, target, label });
            }
        }
    }
    let mut excluded = Vec::new();
    let sound = generated && relations_hold;
    let mut all_lower_excluded = true;
    for r in 2..=rmax {
        let at_r: Vec<&Candidate> = candidates.iter().filter(|c| c.r == r).collect();
        if at_r.is_empty() {
            continue;
        }
        if sound && all_lower_excluded {
            for c in leibniz_exclusions(cup, data, &at_r)? {
                excluded.push(c.label.clone());
            }
        }
        if at_r.iter().any(|c| !excluded.contains(&c.label)) {
            all_lower_excluded = false;
        }
    }
    let mut residual: Vec<&Candidate> = candidates.iter().filter(|c| !excluded.contains(&c.label)).collect();
    let mut certified = Vec::new();
    for cert in certificates {
        let Certificate::NonzeroCohomology { degree, statement } = cert;
        let entries = page.total_degree(*degree);
        let incoming = residual.iter().any(|c| c.target.0 + c.target.1 == *degree);
        if incoming || entries.len() != 1 || !page.covers(*degree) {
            continue;
        }
        let ((s, t), m) = &entries[0];
        let inv = m.invariants();
        if inv.len() != 1 || !crate::ring::is_prime(inv[0]) {
            continue;
        }
        let killed: Vec<String> = residual
            .iter()
            .filter(|c| {
                let g = &data.generators[c.gen];
                (g.s, g.t) == (*s, *t) && !g.is_zero()
            })
            .map(|c| c.label.clone())
            .collect();
        for k in killed {
            certified.push((k, statement.clone()));
        }
    }
    residual.retain(|c| !certified.iter().any(|(k, _)| *k == c.label));
    let residual: Vec<String> = residual.iter().map(|c| c.label.clone()).collect();
    Ok(CollapseReport {
        generated,
        relations_hold,
        candidates: candidates.iter().map(|c| c.label.clone()).collect(),
        excluded_by_leibniz: excluded,
        certified,
        collapses: sound && residual.is_empty() && unchecked.is_empty(),
        residual,
        unchecked,
    })
}

fn leibniz_exclusions<'a>(cup: &CupProducts, data: &LeibnizData, at_r: &[&'a Candidate]) -> Result<Vec<&'a Candidate>> {
    let mut choices = Vec::new();
    for c in at_r {
        let g =
            cup.group(c.target.0, c.target.1).ok_or_else(|| Error::InvalidArgument("target out of range".into()))?;
        let Some(els) = elements(g.invariants()) else { return Ok(vec![]) };
        choices.push((els, g.invariants().to_vec()));
    }
    let total: usize = choices.iter().map(|(e, _)| e.len()).product();
    if total > ASSIGNMENT_CAP {
        return Ok(vec![]);
    }
    let mut consistent: Vec<Vec<Vec<i64>>> = Vec::new();
    for mut code in 0..total {
        let mut assignment = Vec::new();
        for (els, _) in &choices {
            assignment.push(els[code % els.len()].clone());
            code /= els.len();
        }
        let diff = |gi: usize| -> Option<ExtClass> {
            at_r.iter().position(|c| c.gen == gi).map(|k| ExtClass {
                s: at_r[k].target.0,
                t: at_r[k].target.1,
                coords: assignment[k].clone(),
                invariants: choices[k].1.clone(),
            })
        };
        let mut ok = true;
        for rel in &data.relations {
            if let Some(v) = data.evaluate(cup, rel, &diff)? {
                if !v.is_zero() {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            consistent.push(assignment);
        }
    }
    Ok(at_r
        .iter()
        .enumerate()
        .filter(|(k, _)| consistent.iter().all(|a| a[*k].iter().all(|&x| x == 0)))
        .map(|(_, c)| *c)
        .collect())
}
