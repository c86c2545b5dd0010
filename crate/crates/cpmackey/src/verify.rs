//! Named verification suites. Each suite recomputes a family of published statements
//! and reports one claim per checked statement, in a fixed order.

use crate::eicat::bo2_check;
use crate::error::{Error, Result};
use crate::free::{check_freeness, omega, schubert_cells, Bullet, Cell, CellComplex};
use crate::homalg::{bo2_page, collapse_report, Certificate, LeibnizData};
use crate::mackey::table::verify_table;
use crate::mackey::{
    stabilized_functor, stabilized_witness, standard, twisted_criterion, twisted_iso, MackeyMorphism, StandardName,
};
use crate::point::{
    check_axioms, kappa_sigma, multiply, point_type, restrict, type_at_dims, Gen, GradedClass, PointType,
};
use crate::projspace::{bo2_generator_monomials, mono_name, CPClass, CPRing, Images, Mono};
use crate::ring::{gcd, GroundRing};
use crate::rog::ROGElement;
use crate::Mat;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Suite {
    MackeyTable,
    PointRing,
    Freeness,
    Cpv,
    Bo2,
    Ext,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::MackeyTable, Suite::PointRing, Suite::Freeness, Suite::Cpv, Suite::Bo2, Suite::Ext];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MackeyTable => "mackey-table",
            Suite::PointRing => "point-ring",
            Suite::Freeness => "freeness",
            Suite::Cpv => "cpv",
            Suite::Bo2 => "bo2",
            Suite::Ext => "ext",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

/// One checked statement. `tag` names the family of results the claim instantiates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub tag: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Claim {
    fn new(tag: &str, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Claim { tag: tag.into(), name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub inputs: BTreeMap<String, String>,
    pub claims: Vec<Claim>,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: Suite, inputs: &[(&str, String)], claims: Vec<Claim>) -> Self {
        let pass = !claims.is_empty() && claims.iter().all(|c| c.pass);
        SuiteReport {
            suite: suite.name().into(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            claims,
            pass,
        }
    }

    pub fn failures(&self) -> Vec<&Claim> {
        self.claims.iter().filter(|c| !c.pass).collect()
    }
}

/// Suite parameters; unset fields take the per-suite defaults of `run_suite`.
#[derive(Clone, Debug, Default)]
pub struct SuiteParams {
    pub p: Option<i64>,
    pub q: Option<i64>,
    pub ring: Option<GroundRing>,
    pub max_dim: Option<i64>,
}

/// Defaults: mackey-table p=3 over Z; point-ring p=2 over Z; freeness p=3; cpv p=3,
/// q=7; bo2 p=3, q=7, |dims| <= 12; ext over Z.
pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<SuiteReport> {
    let p = params.p;
    let ring = params.ring;
    match suite {
        Suite::MackeyTable => mackey_table(ring.unwrap_or(GroundRing::Integers), p.unwrap_or(3)),
        Suite::PointRing => point_ring(ring.unwrap_or(GroundRing::Integers), p.unwrap_or(2)),
        Suite::Freeness => freeness(p.unwrap_or(3)),
        Suite::Cpv => cpv(p.unwrap_or(3), params.q.unwrap_or(7), params.max_dim.unwrap_or(3)),
        Suite::Bo2 => bo2(p.unwrap_or(3), params.q.unwrap_or(7), params.max_dim.unwrap_or(12)),
        Suite::Ext => ext(ring.unwrap_or(GroundRing::Integers)),
    }
}

fn check_prime(p: i64) -> Result<()> {
    if !crate::ring::is_prime(p) {
        return Err(Error::InvalidArgument(format!("p = {p} is not prime")));
    }
    Ok(())
}

const TABLE: &str = "box-product table";
const TWISTED: &str = "twisted Burnside isomorphism criterion";
const STABLE: &str = "stabilized twisted Burnside isomorphism";

/// Every cell of the multiplication table; over Z with p odd also the twisted
/// Burnside criterion and its stabilized witnesses for `1 <= d1, d2 <= 20`.
pub fn mackey_table(ring: GroundRing, p: i64) -> Result<SuiteReport> {
    check_prime(p)?;
    let mut claims: Vec<Claim> = verify_table(ring, p)?
        .into_iter()
        .map(|c| {
            let name = format!("{}[{}] box {}[{}]", c.row, c.c, c.col, c.d);
            Claim::new(TABLE, name, c.pass, format!("expected {}; computed {}; {}", c.expected, c.computed, c.result))
        })
        .collect();
    if ring == GroundRing::Integers && p != 2 {
        claims.extend(twisted_burnside(p, 20)?);
    }
    Ok(SuiteReport::new(Suite::MackeyTable, &[("p", p.to_string()), ("ring", ring.to_string())], claims))
}

/// `A<d1> = A<d2>` exactly when `d1 = +-d2 mod p`, and `A<d1> + <k> = A<d2> + <k>`
/// through a determinant-one witness when both are prime to `p`.
pub fn twisted_burnside(p: i64, dmax: i64) -> Result<Vec<Claim>> {
    let z = GroundRing::Integers;
    let (mut disagree, mut bad_witness, mut pairs, mut prime_pairs) = (Vec::new(), Vec::new(), 0, 0);
    for d1 in 1..=dmax {
        for d2 in 1..=dmax {
            pairs += 1;
            let found = twisted_iso(d1, d2, z, p);
            let witness_ok = found.as_ref().is_none_or(|w| {
                let (a1, a2) =
                    (standard(&StandardName::ATwisted(d1), z, p), standard(&StandardName::ATwisted(d2), z, p));
                matches!((a1, a2), (Ok(a1), Ok(a2)) if w.morphism().is_iso(&a1, &a2))
            });
            if found.is_some() != twisted_criterion(d1, d2, p) || !witness_ok {
                disagree.push(format!("({d1},{d2})"));
            }
            if gcd(d1, p) == 1 && gcd(d2, p) == 1 {
                prime_pairs += 1;
                let x = stabilized_witness(d1, d2, p)?;
                let m = MackeyMorphism { top: x.transpose(), bottom: Mat::identity(1) };
                let (s1, s2) = (stabilized_functor(d1, p), stabilized_functor(d2, p));
                if x.det() != 1 || !m.is_iso(&s1, &s2) {
                    bad_witness.push(format!("({d1},{d2})"));
                }
            }
        }
    }
    Ok(vec![
        Claim::new(
            TWISTED,
            format!("p={p}: twisted_iso agrees with d1 = u d2 + p x for 1 <= d1,d2 <= {dmax}"),
            disagree.is_empty(),
            format!("{pairs} pairs; disagreements: [{}]", disagree.join(", ")),
        ),
        Claim::new(
            STABLE,
            format!("p={p}: stabilized 3x3 witness has determinant 1 and is an isomorphism"),
            bad_witness.is_empty(),
            format!("{prime_pairs} pairs prime to p; failures: [{}]", bad_witness.join(", ")),
        ),
    ])
}

const AXIOMS: &str = "Green functor axioms";
const PRODUCTS: &str = "products of canonical generators";

fn eq_claim(tag: &str, name: &str, lhs: Result<GradedClass>, rhs: Result<GradedClass>) -> Claim {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => Claim::new(tag, name, l == r, format!("{l} vs {r}")),
        (l, r) => Claim::new(tag, name, false, format!("error: {:?} / {:?}", l.err(), r.err())),
    }
}

/// A degree with the given dimensions: `m + (n - m) zeta` for p = 2, `m + ((n - m) / 2) lambda_1` for p odd.
pub fn degree_at_dims(p: i64, m: i64, n: i64) -> Result<ROGElement> {
    if p != 2 && (n - m) % 2 != 0 {
        return Err(Error::InvalidArgument(format!("no degree of C_{p} has dimensions ({m},{n})")));
    }
    let mut c = vec![0; crate::rog::rog_len(p)];
    c[0] = m;
    c[1] = if p == 2 { n - m } else { (n - m) / 2 };
    ROGElement::new(p, c)
}

/// The axiom sweep plus the named identities among canonical generators.
pub fn point_ring(ring: GroundRing, p: i64) -> Result<SuiteReport> {
    check_prime(p)?;
    let rep = check_axioms(ring, p)?;
    let mut claims = vec![Claim::new(
        AXIOMS,
        "unit, associativity, graded commutativity, Frobenius, restriction multiplicative",
        rep.ok(),
        format!(
            "{} generators; unit {}, assoc {}, comm {}, frobenius {}, restriction {}; failures: [{}]",
            rep.generators,
            rep.unit,
            rep.associativity,
            rep.commutativity,
            rep.frobenius,
            rep.restriction_multiplicative,
            rep.failures.join("; ")
        ),
    )];
    let b = |a: &ROGElement, g: Gen| GradedClass::basis(ring, a, g);
    let one = GradedClass::one(ring, p);
    let zero = ROGElement::zero(p);
    if p == 2 {
        let kappa = b(&zero, Gen::Kappa)?;
        claims.push(eq_claim(PRODUCTS, "kappa^2 = 2 kappa", multiply(&kappa, &kappa), Ok(kappa.scale(2))));
        let eps = b(&degree_at_dims(2, 0, 1)?, Gen::Eps)?;
        let eik = b(&degree_at_dims(2, 0, -1)?, Gen::EpsInvKappa)?;
        claims.push(eq_claim(PRODUCTS, "eps (eps^-1 kappa) = kappa", multiply(&eps, &eik), Ok(kappa)));
    } else {
        let (kappa, _) = kappa_sigma(ring, &zero)?;
        claims.push(eq_claim(PRODUCTS, &format!("kappa^2 = {p} kappa"), multiply(&kappa, &kappa), Ok(kappa.scale(p))));
    }
    let step = if p == 2 { 1 } else { 2 };
    let iota = b(&degree_at_dims(p, step, 0)?, Gen::Iota)?;
    let iota_inv = b(&degree_at_dims(p, -step, 0)?, Gen::Iota)?;
    claims.push(eq_claim(PRODUCTS, "iota iota^-1 = r(1)", multiply(&iota, &iota_inv), restrict(&one)));
    let xi_deg = degree_at_dims(p, -2, 0)?;
    let xi = b(&xi_deg, Gen::Xi)?;
    claims.push(eq_claim(PRODUCTS, "r(xi) = iota^-2", restrict(&xi), b(&xi_deg, Gen::Iota)));
    if p == 5 {
        claims.extend(mu_coefficients(ring)?);
    }
    Ok(SuiteReport::new(Suite::PointRing, &[("p", p.to_string()), ("ring", ring.to_string())], claims))
}

/// `mu_a mu_b = mu_{a+b} + c t(iota_{a+b})` with `c = (d(a) d(b) - d(a+b)) / p`, for
/// degrees `lambda_i - lambda_j` of `C_5` and their sums.
fn mu_coefficients(ring: GroundRing) -> Result<Vec<Claim>> {
    let p = 5;
    let l = |k| ROGElement::lambda(p, k);
    let diffs = [&l(2) - &l(1), &l(1) - &l(2), ROGElement::zero(p)];
    let mut out = Vec::new();
    for a in &diffs {
        for c in &diffs {
            let s = a + c;
            let coeff = (a.d_lift() * c.d_lift() - s.d_lift()) / p;
            let lhs = multiply(&GradedClass::basis(ring, a, Gen::Mu)?, &GradedClass::basis(ring, c, Gen::Mu)?);
            let rhs = GradedClass::basis(ring, &s, Gen::Mu)?.add(&GradedClass::basis(ring, &s, Gen::Tr)?.scale(coeff));
            out.push(eq_claim(PRODUCTS, &format!("mu_({a}) mu_({c}) = mu + {coeff} t(iota)"), lhs, rhs));
        }
    }
    Ok(out)
}

const FREENESS: &str = "freeness criterion for even cell complexes";

/// The ordering violation: a trivial cell of dimension 2 followed by a cell with
/// `|V| = 4` and `|V^G| = 0`.
pub fn ordering_violation(p: i64) -> CellComplex {
    CellComplex {
        ring: GroundRing::Integers,
        p,
        cells: vec![Cell::fixed(ROGElement::trivial(p, 2), 0), Cell::fixed(ROGElement::lambda(p, 1).scale(2), 1)],
    }
}

pub fn freeness(p: i64) -> Result<SuiteReport> {
    check_prime(p)?;
    let count = 3 * p;
    let cells = schubert_cells(GroundRing::Integers, p, count)?;
    let schubert = check_freeness(&cells);
    let mut claims = vec![Claim::new(
        FREENESS,
        format!("Schubert cells of CP(U) with {count} cells satisfy the hypotheses"),
        schubert.is_ok(),
        schubert.err().map(|v| format!("{}: {}", v.bullet, v.detail)).unwrap_or_default(),
    )];
    let viol = check_freeness(&ordering_violation(p));
    claims.push(Claim::new(
        FREENESS,
        "ordering violation is rejected by the dimension-ordering hypothesis",
        matches!(&viol, Err(v) if v.bullet == Bullet::DimensionOrdering),
        match &viol {
            Ok(()) => "accepted".to_string(),
            Err(v) => format!("{}: {}", v.bullet, v.detail),
        },
    ));
    let wrong: Vec<String> = (0..count)
        .filter(|&n| omega(p, n).dims() != (2 * (n / p), 2 * n))
        .map(|n| format!("N={n}: {:?}", omega(p, n).dims()))
        .collect();
    claims.push(Claim::new(
        FREENESS,
        format!("dims(omega_N) = (2 floor(N/p), 2N) for N < {count}"),
        wrong.is_empty(),
        wrong.join("; "),
    ));
    Ok(SuiteReport::new(Suite::Freeness, &[("p", p.to_string())], claims))
}

const CPV: &str = "cohomology of CP(U_C) is free on D_j C^n";
const MONO: &str = "restriction and fixed-point maps are jointly injective";

/// For p = 2 the relation `D1^2 = eps^2 D1 + xi C`. For every p, the solved products of
/// monomials with total C-exponent at most `nmax` match the images under `rho^*` and
/// every `ihat_N^*`, and each product system has a unique solution.
pub fn cpv(p: i64, q: i64, nmax: i64) -> Result<SuiteReport> {
    check_prime(p)?;
    let ring = GroundRing::prime_field(q)?;
    let cp = CPRing::new(ring, p)?;
    let mut claims = Vec::new();
    if p == 2 {
        let d1 = cp.monomial((1, 0))?;
        let sq = cp.product(&d1, &d1)?;
        let e2 = GradedClass::basis(ring, &degree_at_dims(2, 0, 2)?, Gen::Eps)?;
        let xi = GradedClass::basis(ring, &degree_at_dims(2, -2, 0)?, Gen::Xi)?;
        let expect = CPClass::term(e2, (1, 0))?.add(&CPClass::term(xi, (0, 1))?)?;
        claims.push(Claim::new(CPV, "D1^2 = eps^2 D1 + xi C", sq == expect, format!("{sq}")));
    }
    let nmax = u32::try_from(nmax).map_err(|_| Error::InvalidArgument("max degree must be nonnegative".into()))?;
    let monos: Vec<Mono> = (0..=nmax).flat_map(|n| (0..p as u32).map(move |j| (j, n))).collect();
    let (mut bad, mut underdetermined, mut count) = (Vec::new(), Vec::new(), 0);
    for (i, &a) in monos.iter().enumerate() {
        for &b in &monos[i..] {
            if a.1 + b.1 > nmax {
                continue;
            }
            count += 1;
            let (xy, info) = cp.solve_monomials(a, b)?;
            if info.rank != info.unknowns {
                underdetermined.push(format!("{} {}", mono_name(a), mono_name(b)));
            }
            let lhs = Images::of(&xy)?;
            let rhs = Images::of(&cp.monomial(a)?)?.multiply(&Images::of(&cp.monomial(b)?)?)?;
            if lhs != rhs {
                bad.push(format!("{} {}", mono_name(a), mono_name(b)));
            }
        }
    }
    claims.push(Claim::new(
        MONO,
        format!("images of {count} solved products equal products of images"),
        bad.is_empty(),
        format!("failures: [{}]", bad.join(", ")),
    ));
    claims.push(Claim::new(
        MONO,
        format!("all {count} product systems are uniquely solvable"),
        underdetermined.is_empty(),
        format!("underdetermined: [{}]", underdetermined.join(", ")),
    ));
    let inputs = [("p", p.to_string()), ("q", q.to_string()), ("max_degree", nmax.to_string())];
    Ok(SuiteReport::new(Suite::Cpv, &inputs, claims))
}

const BO2: &str = "cohomology of B_{C_p}O(2) with F_q coefficients";

/// The generator list `D_j` (j even), `D_j C` (j odd), `C^2`, listed independently of
/// the solver, and the fixed-point comparison of `bo2_check`.
pub fn bo2(p: i64, q: i64, max_dim: i64) -> Result<SuiteReport> {
    if p == q {
        return Err(Error::Hypothesis("q must differ from p".into()));
    }
    let mut expected: Vec<Mono> = (2..p as u32).step_by(2).map(|j| (j, 0)).collect();
    expected.extend((1..p as u32).step_by(2).map(|j| (j, 1)));
    expected.push((0, 2));
    let listed = bo2_generator_monomials(p);
    let names = |v: &[Mono]| v.iter().map(|&m| mono_name(m)).collect::<Vec<_>>().join(", ");
    let mut claims = vec![Claim::new(
        BO2,
        "generator list",
        listed == expected,
        format!("[{}] vs [{}]", names(&listed), names(&expected)),
    )];
    let rep = bo2_check(p, q, max_dim)?;
    let disagree: Vec<String> = rep
        .degrees
        .iter()
        .filter(|d| !d.agrees)
        .map(|d| format!("{:?}: {} vs {}", d.dims, d.fixed_rank, d.member_rank))
        .collect();
    claims.push(Claim::new(
        BO2,
        format!("fixed points equal the j + n even span in {} degrees with |dims| <= {max_dim}", rep.degrees.len()),
        disagree.is_empty(),
        disagree.join("; "),
    ));
    claims.push(Claim::new(
        BO2,
        format!("all {} even monomials factor over the generator list", rep.monomials.len()),
        rep.factorization_failures.is_empty(),
        rep.factorization_failures.join("; "),
    ));
    let inputs = [("p", p.to_string()), ("q", q.to_string()), ("max_dim", max_dim.to_string())];
    Ok(SuiteReport::new(Suite::Bo2, &inputs, claims))
}

const EXT: &str = "Ext over Z[Z/2] with coefficients in Z[x]";
const BO2_NONEQ: &str = "cohomology of BO(2)";

/// Integral E_2 of BO(2), read off the printed chart: `Z` at the origin, `Z/2` at
/// `(s, t)` with `t = 0 mod 4`, s even and positive or `t = 2 mod 4`, s odd.
pub fn expected_bo2_entry(s: usize, t: usize) -> Vec<i64> {
    if t % 2 == 1 {
        return vec![];
    }
    match (s, t % 4) {
        (0, 0) => vec![0],
        (s, 0) if s % 2 == 0 => vec![2],
        (s, 2) if s % 2 == 1 => vec![2],
        _ => vec![],
    }
}

/// Over Z the chart for `s, t <= 10`, the ring relations and the collapse argument;
/// over `F_q` with q odd, `H^n(BO(2)) = F_q` exactly for `n = 0 mod 4`, `n <= 20`.
pub fn ext(ring: GroundRing) -> Result<SuiteReport> {
    let mut claims = Vec::new();
    match ring {
        GroundRing::Integers => {
            let (page, _) = bo2_page(ring, 10, 10)?;
            let mut bad = Vec::new();
            for s in 0..=10 {
                for t in 0..=10 {
                    let got = page.get(s, t).invariants().to_vec();
                    if got != expected_bo2_entry(s, t) {
                        bad.push(format!("({s},{t}): {got:?}"));
                    }
                }
            }
            claims.push(Claim::new(EXT, "E_2 chart for s, t <= 10", bad.is_empty(), bad.join("; ")));
            let (page, cup) = bo2_page(ring, 8, 8)?;
            let data = LeibnizData::bo2(&cup)?;
            for (name, ok) in data.check_relations(&cup)? {
                claims.push(Claim::new(EXT, format!("relation {name}"), ok == Some(true), format!("{ok:?}")));
            }
            let cert = Certificate::NonzeroCohomology { degree: 3, statement: "H^3(BO(2); Z) != 0".into() };
            let rep = collapse_report(&page, &cup, &data, &[cert], 5)?;
            claims.push(Claim::new(
                BO2_NONEQ,
                "the spectral sequence collapses at E_2",
                rep.collapses,
                format!(
                    "candidates [{}]; excluded by Leibniz [{}]; certified [{}]; residual [{}]",
                    rep.candidates.join(", "),
                    rep.excluded_by_leibniz.join(", "),
                    rep.certified.iter().map(|(a, b)| format!("{a} by {b}")).collect::<Vec<_>>().join(", "),
                    rep.residual.join(", ")
                ),
            ));
        }
        GroundRing::PrimeField(q) if q != 2 => {
            let (page, cup) = bo2_page(ring, 20, 20)?;
            let data = LeibnizData::bo2(&cup)?;
            let rep = collapse_report(&page, &cup, &data, &[], 5)?;
            claims.push(Claim::new(
                BO2_NONEQ,
                "the spectral sequence collapses at E_2",
                rep.collapses,
                rep.residual.join(", "),
            ));
            let mut bad = Vec::new();
            for n in 0..=20 {
                let dim = page.total_dimension(n)?;
                if dim != usize::from(n % 4 == 0) {
                    bad.push(format!("H^{n} has dimension {dim}"));
                }
            }
            claims.push(Claim::new(
                BO2_NONEQ,
                "H^n = F_q for n = 0 mod 4 and 0 otherwise, n <= 20",
                bad.is_empty(),
                bad.join("; "),
            ));
        }
        other => return Err(Error::Unsupported(format!("the ext suite runs over Z or F_q with q odd, not {other}"))),
    }
    Ok(SuiteReport::new(Suite::Ext, &[("ring", ring.to_string())], claims))
}

/// The additive grid for `|m|, |n| <= range` as rows of labels, top row `n = range`.
pub fn point_grid(p: i64, range: i64) -> Vec<(i64, Vec<String>)> {
    (-range..=range).rev().map(|n| (n, (-range..=range).map(|m| crate::point::grid_label(p, m, n)).collect())).collect()
}

/// Checks that the lookup type agrees with the type of the assembled functor in each
/// representable degree of the window.
pub fn point_grid_consistent(p: i64, range: i64) -> Vec<String> {
    let mut bad = Vec::new();
    for m in -range..=range {
        for n in -range..=range {
            let t = type_at_dims(p, m, n);
            if t == PointType::NotARepresentation {
                continue;
            }
            match degree_at_dims(p, m, n) {
                Ok(a) if point_type(&a) == t || matches!(t, PointType::ATwisted(_)) => {}
                _ => bad.push(format!("({m},{n})")),
            }
        }
    }
    bad
}
