//! The RO(C_p)-graded cohomology of a point with Burnside coefficients: an additive
//! lookup table and a normal-form algebra on canonical generators.
//!
//! A degree is an actual `ROGElement`; `dims(alpha) = (|alpha^G|, |alpha|)`. Each degree
//! carries an ordered top basis of generator kinds (`Gen`) with additive orders (0 for
//! free, `p` for torsion) and at most one bottom generator `iota`.

mod axioms;
mod odd;
mod two;

pub use axioms::{check_axioms, AxiomReport};

use crate::error::{Error, Result};
use crate::mackey::{standard, CpModule, MackeyFunctor, StandardName};
use crate::matrix::Mat;
use crate::module::FGModule;
use crate::ring::GroundRing;
use crate::rog::{BurnsideUnit, ROGElement};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Isomorphism type of `H^alpha(S^0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PointType {
    A,
    ATwisted(i64),
    R,
    L,
    RMinus,
    LMinus,
    BracketK,
    BracketKModP,
    Zero,
    NotARepresentation,
}

impl PointType {
    /// Grid label; `p` names the torsion bracket.
    pub fn label(&self, p: i64) -> String {
        match self {
            PointType::A => "A".into(),
            PointType::ATwisted(d) => format!("A<{d}>"),
            PointType::R => "R".into(),
            PointType::L => "L".into(),
            PointType::RMinus => "R_-".into(),
            PointType::LMinus => "L_-".into(),
            PointType::BracketK => "<k>".into(),
            PointType::BracketKModP => format!("<k/{p}>"),
            PointType::Zero => ".".into(),
            PointType::NotARepresentation => " ".into(),
        }
    }
}

/// Generator kinds. The degree fixes every exponent, so `(alpha, Gen)` names a basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Gen {
    /// p = 2 unit at (0,0).
    One,
    /// p = 2 `kappa = 2 - t(r(1))` at (0,0).
    Kappa,
    /// p odd `mu_alpha` at (0,0); `mu_0 = 1`.
    Mu,
    /// `t(iota_alpha)` at (2m, 0).
    Tr,
    /// `eps_alpha` at (0, n > 0).
    Eps,
    /// `eps^{-1} kappa` at (0, n < 0).
    EpsInvKappa,
    /// `xi_alpha` at (-2m, 0), m >= 1.
    Xi,
    /// `eps xi` at (-2m, n), torsion.
    EpsXi,
    /// p = 2 `eps^{-m} t(iota^k)` at (k, -m), torsion.
    EpsInvTr,
    /// p odd fourth-quadrant class `mu_theta eps^{-a} xi^{-b} nu_{3 - 2 lambda_1}`, torsion.
    Nu,
    /// Bottom generator `iota_alpha` at (m, 0).
    Iota,
}

impl Gen {
    pub fn is_bottom(self) -> bool {
        self == Gen::Iota
    }
}

/// Additive data of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointDegreeData {
    pub alpha: ROGElement,
    pub dims: (i64, i64),
    pub mackey_type: PointType,
    pub label: String,
    pub top_basis: Vec<String>,
    pub bottom_basis: Vec<String>,
}

/// Type at a dimension pair; at (0,0) with p odd the twist is unknown and reported as 1.
pub fn type_at_dims(p: i64, m: i64, n: i64) -> PointType {
    if p == 2 {
        return match (m, n) {
            (0, 0) => PointType::A,
            (m, 0) if m < 0 && m % 2 == 0 => PointType::R,
            (m, 0) if m <= 1 => PointType::RMinus,
            (m, 0) if m % 2 == 0 => PointType::L,
            (_, 0) => PointType::LMinus,
            (0, _) => PointType::BracketK,
            (m, n) if m <= -2 && m % 2 == 0 && n >= 1 => PointType::BracketKModP,
            (m, n) if m >= 3 && m % 2 == 1 && n <= -1 => PointType::BracketKModP,
            _ => PointType::Zero,
        };
    }
    if (m - n).rem_euclid(2) != 0 {
        return PointType::NotARepresentation;
    }
    match (m, n) {
        (0, 0) => PointType::ATwisted(1),
        (m, 0) if m < 0 => PointType::R,
        (_, 0) => PointType::L,
        (0, _) => PointType::BracketK,
        (m, n) if m <= -2 && m % 2 == 0 && n >= 2 => PointType::BracketKModP,
        (m, n) if m >= 3 && m % 2 == 1 && n <= -1 => PointType::BracketKModP,
        _ => PointType::Zero,
    }
}

/// Grid label at a dimension pair, with the (0,0) entry for p odd printed as `A<d>`.
pub fn grid_label(p: i64, m: i64, n: i64) -> String {
    match type_at_dims(p, m, n) {
        PointType::ATwisted(_) => "A<d>".into(),
        t => t.label(p),
    }
}

pub fn point_type(alpha: &ROGElement) -> PointType {
    let (m, n) = alpha.dims();
    match type_at_dims(alpha.p, m, n) {
        PointType::ATwisted(_) => PointType::ATwisted(alpha.d_modp().expect("p odd")),
        t => t,
    }
}

/// Top generators with their additive orders.
pub fn top_gens(alpha: &ROGElement) -> Vec<(Gen, i64)> {
    let p = alpha.p;
    let (m, n) = alpha.dims();
    match (point_type(alpha), p) {
        (PointType::A, _) => vec![(Gen::One, 0), (Gen::Kappa, 0)],
        (PointType::ATwisted(_), _) => vec![(Gen::Mu, 0), (Gen::Tr, 0)],
        (PointType::R, _) => vec![(Gen::Xi, 0)],
        (PointType::L, _) => vec![(Gen::Tr, 0)],
        (PointType::LMinus, _) => vec![(Gen::Tr, 2)],
        (PointType::BracketK, _) if n > 0 => vec![(Gen::Eps, 0)],
        (PointType::BracketK, _) => vec![(Gen::EpsInvKappa, 0)],
        (PointType::BracketKModP, _) if m < 0 => vec![(Gen::EpsXi, p)],
        (PointType::BracketKModP, 2) => vec![(Gen::EpsInvTr, 2)],
        (PointType::BracketKModP, _) => vec![(Gen::Nu, p)],
        _ => vec![],
    }
}

/// Whether the bottom level is nonzero, and the sign by which the generator acts.
pub fn bottom_sign(alpha: &ROGElement) -> Option<i64> {
    let (m, n) = alpha.dims();
    if n != 0 {
        return None;
    }
    Some(if alpha.p == 2 && m.rem_euclid(2) == 1 { -1 } else { 1 })
}

/// Printable name of a basis element.
pub fn gen_name(alpha: &ROGElement, g: Gen) -> String {
    let (m, n) = alpha.dims();
    if alpha.p == 2 {
        return match g {
            Gen::One => "1".into(),
            Gen::Kappa => "kappa".into(),
            Gen::Tr => format!("t(iota^{m})"),
            Gen::Eps => format!("eps^{n}"),
            Gen::EpsInvKappa => format!("eps^{n}kappa"),
            Gen::Xi => format!("xi^{}", -m / 2),
            Gen::EpsXi => format!("eps^{n}xi^{}", -m / 2),
            Gen::EpsInvTr => format!("eps^{n}t(iota^{m})"),
            Gen::Iota => format!("iota^{m}"),
            Gen::Mu | Gen::Nu => format!("{g:?}[{alpha}]"),
        };
    }
    match g {
        Gen::Mu if alpha.is_zero() => "1".into(),
        Gen::Mu => format!("mu[{alpha}]"),
        Gen::Tr => format!("t(iota[{alpha}])"),
        Gen::Eps => format!("eps[{alpha}]"),
        Gen::EpsInvKappa => format!("eps^-1kappa[{alpha}]"),
        Gen::Xi => format!("xi[{alpha}]"),
        Gen::EpsXi => {
            let e = ROGElement::lambda(alpha.p, 1).scale(n / 2);
            format!("eps[{e}]xi[{}]", alpha - &e)
        }
        Gen::Nu => format!("nu[{alpha}]"),
        Gen::Iota => format!("iota[{alpha}]"),
        Gen::One | Gen::Kappa | Gen::EpsInvTr => format!("{g:?}[{alpha}]"),
    }
}

pub fn additive(alpha: &ROGElement) -> PointDegreeData {
    let t = point_type(alpha);
    PointDegreeData {
        alpha: alpha.clone(),
        dims: alpha.dims(),
        mackey_type: t,
        label: t.label(alpha.p),
        top_basis: top_gens(alpha).into_iter().map(|(g, _)| gen_name(alpha, g)).collect(),
        bottom_basis: bottom_sign(alpha).map(|_| gen_name(alpha, Gen::Iota)).into_iter().collect(),
    }
}

/// Which level of the Mackey functor a class lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Level {
    /// `H(C_p/C_p)`.
    Top,
    /// `H(C_p/e)`.
    Bottom,
}

/// A (possibly inhomogeneous) class, in normal form: nonzero reduced coefficients only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedClass {
    pub ring: GroundRing,
    pub p: i64,
    pub level: Level,
    pub terms: BTreeMap<(ROGElement, Gen), i64>,
}

pub(crate) type Terms = Vec<((ROGElement, Gen), i64)>;

/// Additive order of a basis element, or `None` when it is not one.
pub fn gen_order(alpha: &ROGElement, g: Gen) -> Option<i64> {
    if g == Gen::Iota {
        return bottom_sign(alpha).map(|_| 0);
    }
    top_gens(alpha).into_iter().find(|&(h, _)| h == g).map(|(_, o)| o)
}

impl GradedClass {
    pub fn zero(ring: GroundRing, p: i64, level: Level) -> Self {
        GradedClass { ring, p, level, terms: BTreeMap::new() }
    }

    /// A single basis element; errors when `g` is not a generator in degree `alpha`.
    pub fn basis(ring: GroundRing, alpha: &ROGElement, g: Gen) -> Result<Self> {
        if gen_order(alpha, g).is_none() {
            return Err(Error::InvalidArgument(format!("{g:?} is not a generator in degree {alpha}")));
        }
        let level = if g.is_bottom() { Level::Bottom } else { Level::Top };
        let mut c = GradedClass::zero(ring, alpha.p, level);
        c.push(alpha, g, 1)?;
        Ok(c)
    }

    /// The unit at the top level.
    pub fn one(ring: GroundRing, p: i64) -> Self {
        let g = if p == 2 { Gen::One } else { Gen::Mu };
        GradedClass::basis(ring, &ROGElement::zero(p), g).expect("unit generator")
    }

    /// Every basis element of a degree at a level.
    pub fn degree_basis(ring: GroundRing, alpha: &ROGElement, level: Level) -> Vec<GradedClass> {
        let gens: Vec<Gen> = match level {
            Level::Top => top_gens(alpha).into_iter().map(|(g, _)| g).collect(),
            Level::Bottom => bottom_sign(alpha).map(|_| Gen::Iota).into_iter().collect(),
        };
        gens.into_iter().filter_map(|g| GradedClass::basis(ring, alpha, g).ok()).filter(|c| !c.is_zero()).collect()
    }

    fn push(&mut self, alpha: &ROGElement, g: Gen, c: i64) -> Result<()> {
        let Some(ord) = gen_order(alpha, g) else {
            if point_type(alpha) == PointType::Zero || (g.is_bottom() && bottom_sign(alpha).is_none()) {
                return Ok(());
            }
            return Err(Error::Unsupported(format!(
                "{g:?} produced in degree {alpha} of type {}",
                point_type(alpha).label(self.p)
            )));
        };
        let key = (alpha.clone(), g);
        let cur = self.terms.get(&key).copied().unwrap_or(0);
        let v = self.ring.reduce_order(self.ring.reduce(cur + c), ord);
        if v == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compatible(&self, o: &GradedClass) -> Result<()> {
        if self.ring != o.ring || self.p != o.p || self.level != o.level {
            return Err(Error::InvalidArgument("classes over different rings, primes or levels".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &GradedClass) -> Result<GradedClass> {
        self.check_compatible(o)?;
        let mut c = self.clone();
        for ((a, g), &v) in &o.terms {
            c.push(a, *g, v)?;
        }
        Ok(c)
    }

    pub fn scale(&self, k: i64) -> GradedClass {
        let mut c = GradedClass::zero(self.ring, self.p, self.level);
        for ((a, g), &v) in &self.terms {
            c.push(a, *g, v.checked_mul(k).expect("coefficient overflow")).expect("same basis");
        }
        c
    }

    pub fn sub(&self, o: &GradedClass) -> Result<GradedClass> {
        self.add(&o.scale(-1))
    }

    /// The degrees carrying nonzero terms.
    pub fn degrees(&self) -> Vec<ROGElement> {
        let mut d: Vec<ROGElement> = self.terms.keys().map(|(a, _)| a.clone()).collect();
        d.dedup();
        d
    }

    /// Terms as `(degree, generator name, coefficient)`.
    pub fn named_terms(&self) -> Vec<(String, String, i64)> {
        self.terms.iter().map(|((a, g), &v)| (a.to_string(), gen_name(a, *g), v)).collect()
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, g), &v)| if v == 1 { gen_name(a, *g) } else { format!("{v}*{}", gen_name(a, *g)) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn product_terms(a: &ROGElement, g: Gen, b: &ROGElement, h: Gen) -> Result<Terms> {
    if a.p == 2 {
        two::product(a, g, b, h)
    } else {
        odd::product(a, g, b, h)
    }
}

/// Product of two classes at the same level, bilinearly from the generator rules.
pub fn multiply(x: &GradedClass, y: &GradedClass) -> Result<GradedClass> {
    x.check_compatible(y)?;
    let mut out = GradedClass::zero(x.ring, x.p, x.level);
    for ((a, g), &u) in &x.terms {
        for ((b, h), &v) in &y.terms {
            let c = u.checked_mul(v).expect("coefficient overflow");
            for ((e, k), w) in product_terms(a, *g, b, *h)? {
                out.push(&e, k, w.checked_mul(c).expect("coefficient overflow"))?;
            }
        }
    }
    Ok(out)
}

/// Restriction of a top class to the bottom level.
pub fn restrict(x: &GradedClass) -> Result<GradedClass> {
    if x.level != Level::Top {
        return Err(Error::InvalidArgument("restrict expects a top-level class".into()));
    }
    let mut out = GradedClass::zero(x.ring, x.p, Level::Bottom);
    for ((a, g), &v) in &x.terms {
        let c = if x.p == 2 { two::restriction(a, *g) } else { odd::restriction(a, *g) };
        if c != 0 {
            out.push(a, Gen::Iota, c * v)?;
        }
    }
    Ok(out)
}

/// Transfer of a bottom class to the top level.
pub fn transfer(y: &GradedClass) -> Result<GradedClass> {
    if y.level != Level::Bottom {
        return Err(Error::InvalidArgument("transfer expects a bottom-level class".into()));
    }
    let mut out = GradedClass::zero(y.ring, y.p, Level::Top);
    for ((a, _), &v) in &y.terms {
        let terms = if y.p == 2 { two::transfer(a) } else { odd::transfer(a) };
        for ((e, k), w) in terms {
            out.push(&e, k, w * v)?;
        }
    }
    Ok(out)
}

/// Action of a Burnside unit `sign (1 - tau)^e`: at the top `tau = t r`, at the bottom
/// the unit acts through its restriction.
pub fn act_unit(u: BurnsideUnit, x: &GradedClass) -> Result<GradedClass> {
    let s = u.sign as i64;
    match x.level {
        Level::Bottom => Ok(x.scale(u.restriction_to_bottom())),
        Level::Top if u.tau => x.sub(&transfer(&restrict(x)?)?).map(|c| c.scale(s)),
        Level::Top => Ok(x.scale(s)),
    }
}

/// The change to the alternative basis `(kappa_alpha, sigma_alpha)` at a (0,0) degree, p odd.
pub fn kappa_sigma(ring: GroundRing, alpha: &ROGElement) -> Result<(GradedClass, GradedClass)> {
    if alpha.p == 2 || alpha.dims() != (0, 0) {
        return Err(Error::InvalidArgument("kappa/sigma basis needs p odd and dimension (0,0)".into()));
    }
    let mu = GradedClass::basis(ring, alpha, Gen::Mu)?;
    let tr = GradedClass::basis(ring, alpha, Gen::Tr)?;
    let d = alpha.d_lift();
    let kappa = mu.scale(alpha.p).sub(&tr.scale(d))?;
    let sigma = mu.scale((-alpha).d_lift()).add(&tr.scale(alpha.b_coeff()?))?;
    Ok((kappa, sigma))
}

/// Coordinates of a homogeneous class in the degree basis.
fn coordinates(x: &GradedClass, alpha: &ROGElement, gens: &[Gen]) -> Vec<i64> {
    gens.iter().map(|g| x.terms.get(&(alpha.clone(), *g)).copied().unwrap_or(0)).collect()
}

/// The Mackey functor `H^alpha(S^0)` assembled from the basis, restriction and transfer.
pub fn point_functor(ring: GroundRing, alpha: &ROGElement) -> Result<MackeyFunctor> {
    let p = alpha.p;
    let tg = top_gens(alpha);
    let top_orders: Vec<i64> = tg.iter().map(|&(_, o)| o).collect();
    let top = FGModule::cyclic_sum(ring, &top_orders);
    let gens: Vec<Gen> = tg.iter().map(|&(g, _)| g).collect();
    let Some(sign) = bottom_sign(alpha) else {
        return MackeyFunctor::new(
            p,
            top,
            FGModule::zero(ring),
            Mat::zeros(0, gens.len()),
            Mat::zeros(gens.len(), 0),
            Mat::zeros(0, 0),
        );
    };
    let mut r = Mat::zeros(1, gens.len());
    for (j, &g) in gens.iter().enumerate() {
        let img = restrict(&GradedClass::basis(ring, alpha, g)?)?;
        r[(0, j)] = coordinates(&img, alpha, &[Gen::Iota])[0];
    }
    let tr = transfer(&GradedClass::basis(ring, alpha, Gen::Iota)?)?;
    let t = Mat::column(&coordinates(&tr, alpha, &gens));
    MackeyFunctor::new(p, top, FGModule::free(ring, 1), r, t, Mat::scalar(1, sign))
}

/// The standard functor named by a point type.
pub fn standard_of_type(t: PointType, ring: GroundRing, p: i64) -> Result<MackeyFunctor> {
    let k = CpModule::trivial(ring);
    let name = match t {
        PointType::A => StandardName::A,
        PointType::ATwisted(d) => StandardName::ATwisted(d),
        PointType::R => StandardName::R(k),
        PointType::L => StandardName::L(k),
        PointType::RMinus => StandardName::RMinus,
        PointType::LMinus => StandardName::LMinus,
        PointType::BracketK => StandardName::Bracket(FGModule::free(ring, 1)),
        PointType::BracketKModP => StandardName::Bracket(FGModule::cyclic_sum(ring, &[p])),
        PointType::Zero | PointType::NotARepresentation => return Ok(MackeyFunctor::zero(ring, p)),
    };
    standard(&name, ring, p)
}

/// Degrees `a_0 + sum a_j lambda_j` (or `a_0 + a_1 zeta`) with coefficients in the given
/// per-coordinate ranges.
pub fn degrees_in_box(p: i64, ranges: &[(i64, i64)]) -> Vec<ROGElement> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in ranges {
        out = out.into_iter().flat_map(|v: Vec<i64>| (lo..=hi).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out.into_iter().map(|c| ROGElement::new(p, c).expect("valid degree")).collect()
}

/// The degree set used by the multiplicative checks: p = 2 and 3 take coefficients in
/// [-3, 3]; larger p take `a_0` in [-3, 3] and the lambda coefficients in [-1, 1].
pub fn check_degrees(p: i64) -> Vec<ROGElement> {
    let ranges: Vec<(i64, i64)> = match p {
        2 | 3 => vec![(-3, 3); 2],
        _ => {
            let mut r = vec![(-3, 3)];
            r.extend(std::iter::repeat_n((-1, 1), crate::rog::rog_len(p) - 1));
            r
        }
    };
    degrees_in_box(p, &ranges).into_iter().filter(|a| in_window(a, 8)).collect()
}

pub fn in_window(a: &ROGElement, n: i64) -> bool {
    let (x, y) = a.dims();
    x.abs() <= n && y.abs() <= n
}

#[cfg(test)]
mod tests;
