//! Equivariant cell complexes, the even-cell freeness criterion, Schubert cells of
//! complex projective space on a complete universe, and free modules over the point.

use crate::error::{Error, Result};
use crate::mackey::MackeyFunctor;
use crate::point::{multiply, point_functor, GradedClass, Level};
use crate::ring::GroundRing;
use crate::rog::ROGElement;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// `D(V)` with `V` an honest representation, or `C_p x D^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitType {
    FixedCell(ROGElement),
    FreeCell(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub orbit_type: OrbitType,
    pub filtration_index: i64,
}

impl Cell {
    pub fn fixed(v: ROGElement, filtration_index: i64) -> Self {
        Cell { orbit_type: OrbitType::FixedCell(v), filtration_index }
    }

    pub fn free(n: i64, filtration_index: i64) -> Self {
        Cell { orbit_type: OrbitType::FreeCell(n), filtration_index }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplex {
    pub ring: GroundRing,
    pub p: i64,
    pub cells: Vec<Cell>,
}

/// Hypotheses of the freeness criterion, plus well-formedness of the cells themselves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Bullet {
    /// A cell that is not `D(V)` for an honest `V` or `C_p x D^n` with `n >= 0`.
    CellStructure,
    /// Each filtration is finite: indices must be nondecreasing along the list.
    FiniteFiltrations,
    /// All cells have even dimension.
    EvenCells,
    /// `|V| > |W|` forces `|V^G| >= |W^G|` for `D(W)` in an earlier filtration.
    DimensionOrdering,
    /// Finitely many cells below each dimension.
    FinitelyManyCells,
}

impl fmt::Display for Bullet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Bullet::CellStructure => "cell structure",
            Bullet::FiniteFiltrations => "finite filtrations",
            Bullet::EvenCells => "even cells",
            Bullet::DimensionOrdering => "dimension ordering",
            Bullet::FinitelyManyCells => "finitely many cells per dimension",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessViolation {
    pub bullet: Bullet,
    pub detail: String,
}

/// `Ok` when every hypothesis holds, otherwise the first violated one.
///
/// A finite list of cells makes the finiteness bullets automatic once the filtration
/// indices are nondecreasing. The ordering bullet concerns pairs of fixed cells only.
pub fn check_freeness(x: &CellComplex) -> std::result::Result<(), FreenessViolation> {
    let fail = |bullet, detail: String| Err(FreenessViolation { bullet, detail });
    for (i, c) in x.cells.iter().enumerate() {
        match &c.orbit_type {
            OrbitType::FixedCell(v) if v.p != x.p || !v.is_honest() => {
                return fail(
                    Bullet::CellStructure,
                    format!("cell {i}: D({v}) needs an honest representation of C_{}", x.p),
                );
            }
            OrbitType::FreeCell(n) if *n < 0 => {
                return fail(Bullet::CellStructure, format!("cell {i}: free cell of negative dimension {n}"));
            }
            _ => {}
        }
    }
    for (i, w) in x.cells.windows(2).enumerate() {
        if w[1].filtration_index < w[0].filtration_index {
            return fail(Bullet::FiniteFiltrations, format!("cell {} has filtration index below cell {i}", i + 1));
        }
    }
    for (i, c) in x.cells.iter().enumerate() {
        let even = match &c.orbit_type {
            OrbitType::FixedCell(v) => {
                let (a, b) = v.dims();
                a % 2 == 0 && b % 2 == 0
            }
            OrbitType::FreeCell(n) => n % 2 == 0,
        };
        if !even {
            return fail(Bullet::EvenCells, format!("cell {i} has odd dimension"));
        }
    }
    for (j, later) in x.cells.iter().enumerate() {
        let OrbitType::FixedCell(v) = &later.orbit_type else { continue };
        for (i, earlier) in x.cells.iter().enumerate() {
            let OrbitType::FixedCell(w) = &earlier.orbit_type else { continue };
            if earlier.filtration_index >= later.filtration_index {
                continue;
            }
            let ((vg, vd), (wg, wd)) = (v.dims(), w.dims());
            if vd > wd && vg < wg {
                return fail(
                    Bullet::DimensionOrdering,
                    format!("cell {j} = D({v}) has |V| = {vd} > {wd} = |W| but |V^G| = {vg} < {wg} = |W^G| for cell {i} = D({w})"),
                );
            }
        }
    }
    Ok(())
}

/// The cell `omega_N = phi^{-N}(1 + phi + ... + phi^{N-1})` in real form.
pub fn omega(p: i64, n: i64) -> ROGElement {
    let mut acc = ROGElement::zero(p);
    for i in 0..n {
        acc = &acc + &ROGElement::lambda(p, i - n);
    }
    acc
}

/// Cells `D(omega_0), ..., D(omega_{count-1})` of `CP(U_C)`, one per filtration.
pub fn schubert_cells(ring: GroundRing, p: i64, count: i64) -> Result<CellComplex> {
    if count < 1 {
        return Err(Error::InvalidArgument("schubert_cells needs at least one cell".into()));
    }
    Ok(CellComplex { ring, p, cells: (0..count).map(|n| Cell::fixed(omega(p, n), n)).collect() })
}

/// `H^alpha(X_+)` as the direct sum of shifted point cohomology over the cells.
pub fn free_module_degree(x: &CellComplex, alpha: &ROGElement) -> Result<MackeyFunctor> {
    check_freeness(x).map_err(|v| Error::Hypothesis(format!("freeness fails ({}): {}", v.bullet, v.detail)))?;
    let mut acc = MackeyFunctor::zero(x.ring, x.p);
    for c in &x.cells {
        let summand = match &c.orbit_type {
            OrbitType::FixedCell(v) => point_functor(x.ring, &(alpha - v))?,
            OrbitType::FreeCell(n) => point_functor(x.ring, &(alpha - &ROGElement::trivial(x.p, *n)))?.shift(),
        };
        acc = acc.direct_sum(&summand);
    }
    Ok(acc)
}

/// A class of `Y_+ (x) H(pt)` for a trivial even complex `Y` with one cell per even
/// dimension: a polynomial in `z` (degree 2) with point-cohomology coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialCellClass {
    pub ring: GroundRing,
    pub p: i64,
    pub level: Level,
    pub coeffs: BTreeMap<u32, GradedClass>,
}

impl TrivialCellClass {
    pub fn zero(ring: GroundRing, p: i64, level: Level) -> Self {
        TrivialCellClass { ring, p, level, coeffs: BTreeMap::new() }
    }

    /// `c z^k`.
    pub fn monomial(c: GradedClass, k: u32) -> Self {
        let mut x = TrivialCellClass::zero(c.ring, c.p, c.level);
        if !c.is_zero() {
            x.coeffs.insert(k, c);
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &TrivialCellClass) -> Result<TrivialCellClass> {
        let mut out = self.clone();
        for (k, c) in &o.coeffs {
            let s = match out.coeffs.get(k) {
                Some(d) => d.add(c)?,
                None => c.clone(),
            };
            if s.is_zero() {
                out.coeffs.remove(k);
            } else {
                out.coeffs.insert(*k, s);
            }
        }
        Ok(out)
    }

    /// Coefficientwise image under a map of point classes.
    pub fn map<F: Fn(&GradedClass) -> Result<GradedClass>>(&self, f: F, level: Level) -> Result<TrivialCellClass> {
        let mut out = TrivialCellClass::zero(self.ring, self.p, level);
        for (k, c) in &self.coeffs {
            out = out.add(&TrivialCellClass::monomial(f(c)?, *k))?;
        }
        Ok(out)
    }

    /// `z` has even trivial degree, so it commutes with every point class.
    pub fn multiply(&self, o: &TrivialCellClass) -> Result<TrivialCellClass> {
        let mut out = TrivialCellClass::zero(self.ring, self.p, self.level);
        for (a, c) in &self.coeffs {
            for (b, d) in &o.coeffs {
                out = out.add(&TrivialCellClass::monomial(multiply(c, d)?, a + b))?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TrivialCellClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(k, c)| format!("({c})z^{k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{iso, standard, StandardName};
    use crate::module::FGModule;

    const Z: GroundRing = GroundRing::Integers;

    #[test]
    fn omega_dimensions() {
        for p in [2, 3, 5, 7] {
            for n in 0..3 * p {
                assert_eq!(omega(p, n).dims(), (2 * (n / p), 2 * n), "p={p} N={n}");
            }
        }
        assert!(omega(3, 0).is_zero());
        assert_eq!(omega(3, 1), ROGElement::lambda(3, 1));
        assert_eq!(omega(3, 3).dims(), (2, 6));
    }

    #[test]
    fn schubert_cells_are_free() {
        for p in [2, 3, 5] {
            assert_eq!(check_freeness(&schubert_cells(Z, p, 3 * p).unwrap()), Ok(()));
        }
        assert_eq!(check_freeness(&schubert_cells(Z, 3, 9).unwrap()), Ok(()));
    }

    #[test]
    fn ordering_violation_is_named() {
        let x = CellComplex {
            ring: Z,
            p: 3,
            cells: vec![Cell::fixed(ROGElement::trivial(3, 2), 0), Cell::fixed(ROGElement::lambda(3, 1).scale(2), 1)],
        };
        assert_eq!(check_freeness(&x).unwrap_err().bullet, Bullet::DimensionOrdering);
        let same = CellComplex {
            cells: x.cells.iter().map(|c| Cell { filtration_index: 0, ..c.clone() }).collect(),
            ..x.clone()
        };
        assert_eq!(check_freeness(&same), Ok(()));
    }

    #[test]
    fn other_bullets() {
        let one = CellComplex { ring: Z, p: 3, cells: vec![Cell::free(0, 0)] };
        assert_eq!(check_freeness(&one), Ok(()));
        let odd = CellComplex { ring: Z, p: 3, cells: vec![Cell::free(1, 0)] };
        assert_eq!(check_freeness(&odd).unwrap_err().bullet, Bullet::EvenCells);
        let odd_fixed = CellComplex { ring: Z, p: 3, cells: vec![Cell::fixed(ROGElement::trivial(3, 1), 0)] };
        assert_eq!(check_freeness(&odd_fixed).unwrap_err().bullet, Bullet::EvenCells);
        let bad = CellComplex { ring: Z, p: 3, cells: vec![Cell::free(0, 1), Cell::free(2, 0)] };
        assert_eq!(check_freeness(&bad).unwrap_err().bullet, Bullet::FiniteFiltrations);
        let virt = CellComplex { ring: Z, p: 3, cells: vec![Cell::fixed(ROGElement::trivial(3, -2), 0)] };
        assert_eq!(check_freeness(&virt).unwrap_err().bullet, Bullet::CellStructure);
        let trivial = CellComplex {
            ring: Z,
            p: 5,
            cells: (0..4).map(|n| Cell::fixed(ROGElement::trivial(5, 2 * n), n)).collect(),
        };
        assert_eq!(check_freeness(&trivial), Ok(()));
    }

    #[test]
    fn degree_examples() {
        let x = schubert_cells(Z, 3, 9).unwrap();
        let m = free_module_degree(&x, &ROGElement::new(3, vec![-1, 0]).unwrap()).unwrap();
        assert!(m.is_zero());
        let m = free_module_degree(&x, &ROGElement::zero(3)).unwrap();
        let k = standard(&StandardName::Bracket(FGModule::free(Z, 1)), Z, 3).unwrap();
        let expect = standard(&StandardName::A, Z, 3).unwrap().direct_sum(&k).direct_sum(&k);
        assert!(iso(&m, &expect).is_found());
        let single = CellComplex { ring: Z, p: 3, cells: vec![Cell::fixed(ROGElement::lambda(3, 1), 0)] };
        let m = free_module_degree(&single, &ROGElement::lambda(3, 1)).unwrap();
        assert!(iso(&m, &standard(&StandardName::ATwisted(1), Z, 3).unwrap()).is_found());
    }

    #[test]
    fn bottom_level_counts_cells() {
        for p in [2, 3, 5] {
            let x = schubert_cells(Z, p, 2 * p).unwrap();
            for a0 in -4..=4 {
                for t in -6..=12 {
                    let mut c = vec![0; crate::rog::rog_len(p)];
                    c[0] = a0;
                    c[1] = t;
                    let a = ROGElement::new(p, c).unwrap();
                    let m = free_module_degree(&x, &a).unwrap();
                    let n = a.dims().1;
                    let expect = (0..2 * p).filter(|&k| 2 * k == n).count();
                    assert_eq!(m.bottom.dimension(), expect, "p={p} {a}");
                }
            }
        }
    }

    #[test]
    fn additive_over_concatenation() {
        let x = schubert_cells(Z, 3, 4).unwrap();
        let y = CellComplex { cells: x.cells[..2].to_vec(), ..x.clone() };
        let w = CellComplex { cells: x.cells[2..].to_vec(), ..x.clone() };
        let a = ROGElement::new(3, vec![2, 1]).unwrap();
        let whole = free_module_degree(&x, &a).unwrap();
        let parts = free_module_degree(&y, &a).unwrap().direct_sum(&free_module_degree(&w, &a).unwrap());
        assert_eq!(whole, parts);
    }
}
