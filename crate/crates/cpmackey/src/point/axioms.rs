//! Exhaustive checks of the Green-functor axioms on canonical generators.

use super::{
    act_unit, check_degrees, in_window, multiply, point_type, restrict, transfer, GradedClass, Level, PointType,
};
use crate::error::Result;
use crate::ring::GroundRing;
use crate::rog::comm_unit;
use serde::Serialize;

/// Counts of checked instances and the first few failures of each axiom.
#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub generators: usize,
    pub unit: usize,
    pub associativity: usize,
    pub commutativity: usize,
    pub frobenius: usize,
    pub restriction_multiplicative: usize,
    pub fourth_quadrant_pairs: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 20 {
            self.failures.push(msg);
        }
    }
}

fn degree_of(x: &GradedClass) -> crate::rog::ROGElement {
    x.degrees().into_iter().next().expect("homogeneous basis element")
}

/// Check unit, associativity, graded commutativity, Frobenius reciprocity and
/// multiplicativity of restriction on all generators of `check_degrees(p)`, restricting
/// products to total dimensions in `[-8, 8]^2`.
pub fn check_axioms(ring: GroundRing, p: i64) -> Result<AxiomReport> {
    let degrees = check_degrees(p);
    let top: Vec<GradedClass> = degrees.iter().flat_map(|a| GradedClass::degree_basis(ring, a, Level::Top)).collect();
    let bottom: Vec<GradedClass> =
        degrees.iter().flat_map(|a| GradedClass::degree_basis(ring, a, Level::Bottom)).collect();
    let mut rep = AxiomReport { generators: top.len() + bottom.len(), ..Default::default() };
    let one = GradedClass::one(ring, p);
    let one_bottom = restrict(&one)?;

    for (level, gens, unit) in [(Level::Top, &top, &one), (Level::Bottom, &bottom, &one_bottom)] {
        let degs: Vec<_> = gens.iter().map(degree_of).collect();
        for x in gens.iter() {
            rep.unit += 1;
            if multiply(unit, x)? != *x || multiply(x, unit)? != *x {
                rep.fail(format!("{level:?} unit fails on {x}"));
            }
        }
        for (i, x) in gens.iter().enumerate() {
            for (j, y) in gens.iter().enumerate() {
                let ab = &degs[i] + &degs[j];
                if !in_window(&ab, 8) {
                    continue;
                }
                let xy = multiply(x, y)?;
                let yx = multiply(y, x)?;
                rep.commutativity += 1;
                if yx != act_unit(comm_unit(&degs[i], &degs[j]), &xy)? {
                    rep.fail(format!("{level:?} commutativity: {x} * {y} = {xy}, reversed {yx}"));
                }
                if level == Level::Top {
                    rep.restriction_multiplicative += 1;
                    if restrict(&xy)? != multiply(&restrict(x)?, &restrict(y)?)? {
                        rep.fail(format!("restriction not multiplicative on {x} * {y}"));
                    }
                    if p != 2
                        && [x, y]
                            .iter()
                            .all(|c| point_type(&degree_of(c)) == PointType::BracketKModP && degree_of(c).dims().0 > 0)
                    {
                        rep.fourth_quadrant_pairs += 1;
                        if point_type(&ab) != PointType::Zero {
                            rep.fail(format!("fourth-quadrant pair {x}, {y} lands in a nonzero degree {ab}"));
                        }
                    }
                }
                for (k, z) in gens.iter().enumerate() {
                    if !in_window(&(&ab + &degs[k]), 8) {
                        continue;
                    }
                    rep.associativity += 1;
                    let l = multiply(&xy, z)?;
                    let r = multiply(x, &multiply(y, z)?)?;
                    if l != r {
                        rep.fail(format!("{level:?} associativity: ({x} * {y}) * {z} = {l}, other = {r}"));
                    }
                }
            }
        }
    }

    let bdegs: Vec<_> = bottom.iter().map(degree_of).collect();
    for (w, bd) in bottom.iter().zip(&bdegs) {
        for x in &top {
            if !in_window(&(bd + &degree_of(x)), 8) {
                continue;
            }
            rep.frobenius += 1;
            let lhs = multiply(&transfer(w)?, x)?;
            let rhs = transfer(&multiply(w, &restrict(x)?)?)?;
            if lhs != rhs {
                rep.fail(format!("Frobenius: t({w}) * {x} = {lhs}, t({w} * r({x})) = {rhs}"));
            }
        }
    }
    Ok(rep)
}
