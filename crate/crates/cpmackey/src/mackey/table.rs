//! The box-product multiplication table of the standard functors.

use super::{box_product, iso, standard, CpModule, IsoResult, MackeyFunctor, StandardName};
use crate::error::Result;
use crate::matrix::Mat;
use crate::module::FGModule;
use crate::ring::{gcd, GroundRing};
use serde::Serialize;

/// Row and column labels, in table order.
pub const TABLE_LABELS: [&str; 6] = ["A_o", "A<d>", "<X>", "L(B)", "R", "R_-"];

/// Twist parameters used for the `A<c>`/`A<d>` rows and columns: `{1, 2}` filtered to
/// integers prime to `p`, with `3` standing in for `2` when `p = 2`.
pub fn twist_parameters(p: i64) -> Vec<i64> {
    [1, 2, 3].into_iter().filter(|&d| gcd(d, p) == 1).take(2).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TableCell {
    pub row: String,
    pub col: String,
    pub c: i64,
    pub d: i64,
    pub expected: String,
    pub computed: String,
    pub result: String,
    pub pass: bool,
}

fn entry(label: &str, twist: i64, ring: GroundRing, p: i64) -> Result<Option<MackeyFunctor>> {
    let k = CpModule::trivial(ring);
    let name = match label {
        "A_o" => StandardName::FreeOnOrbit,
        "A<d>" => StandardName::ATwisted(twist),
        "<X>" => StandardName::Bracket(FGModule::free(ring, 1)),
        "L(B)" => StandardName::L(k),
        "R" => StandardName::R(k),
        "R_-" if p == 2 => StandardName::RMinus,
        "R_-" => return Ok(None),
        other => panic!("unknown table label {other}"),
    };
    standard(&name, ring, p).map(Some)
}

/// The table entry for `row box col`, with X = B = k.
fn expected(row: &str, col: &str, c: i64, d: i64, ring: GroundRing, p: i64) -> Result<(String, MackeyFunctor)> {
    let k = CpModule::trivial(ring);
    let bracket = |m: FGModule| standard(&StandardName::Bracket(m), ring, p);
    let zero = || Ok::<_, crate::Error>(("<0>".to_string(), MackeyFunctor::zero(ring, p)));
    let a_o = || standard(&StandardName::FreeOnOrbit, ring, p);
    let l = || standard(&StandardName::L(k.clone()), ring, p);
    let r = || standard(&StandardName::R(k.clone()), ring, p);
    let rm = || standard(&StandardName::RMinus, ring, p);
    let lm = || standard(&StandardName::LMinus, ring, p);
    let l_perm = || standard(&StandardName::L(k.induced(p)), ring, p);
    let x_mod_p = || bracket(FGModule::new(ring, 1, Mat::from_rows(&[vec![p]], 1))?);
    Ok(match (row, col) {
        ("A_o", "A_o") => ("A_(oxo)".into(), a_o()?.shift()),
        ("A_o", "L(B)") | ("L(B)", "A_o") => ("L(B^p)".into(), l_perm()?),
        ("A_o", "<X>") | ("<X>", "A_o") => zero()?,
        ("A_o", _) | (_, "A_o") => ("A_o".into(), a_o()?),
        ("A<d>", "A<d>") => (format!("A<{}>", c * d), standard(&StandardName::ATwisted(c * d), ring, p)?),
        ("A<d>", other) => (other.to_string(), entry(other, d, ring, p)?.expect("entry exists")),
        (other, "A<d>") => (other.to_string(), entry(other, c, ring, p)?.expect("entry exists")),
        ("<X>", "<X>") => ("<X(x)X>".into(), bracket(FGModule::free(ring, 1).tensor(&FGModule::free(ring, 1)))?),
        ("<X>", "R") | ("R", "<X>") => ("<X/p>".into(), x_mod_p()?),
        ("<X>", _) | (_, "<X>") => zero()?,
        ("L(B)", "L(B)") => ("L(B(x)B)".into(), standard(&StandardName::L(k.tensor(&k)), ring, p)?),
        ("L(B)", "R_-") | ("R_-", "L(B)") => ("L(B(x)k_-)".into(), lm()?),
        ("L(B)", _) | (_, "L(B)") => ("L(B)".into(), l()?),
        ("R", "R") => ("R".into(), r()?),
        ("R", "R_-") | ("R_-", "R") => ("R_-".into(), rm()?),
        ("R_-", "R_-") => ("L".into(), l()?),
        (a, b) => panic!("no table entry for {a} box {b}"),
    })
}

fn uses_twist(label: &str) -> bool {
    label == "A<d>"
}

/// Check every cell of the table by computing the box product and searching for an
/// isomorphism with the listed entry. Over a field a witness is required; over other
/// rings an inconclusive search with agreeing invariants also passes.
pub fn verify_table(ring: GroundRing, p: i64) -> Result<Vec<TableCell>> {
    let twists = twist_parameters(p);
    let mut out = Vec::new();
    for row in TABLE_LABELS {
        for col in TABLE_LABELS {
            let cs: Vec<i64> = if uses_twist(row) { twists.clone() } else { vec![1] };
            let ds: Vec<i64> = if uses_twist(col) { twists.clone() } else { vec![1] };
            for &c in &cs {
                for &d in &ds {
                    let (Some(m), Some(n)) = (entry(row, c, ring, p)?, entry(col, d, ring, p)?) else {
                        out.push(TableCell {
                            row: row.into(),
                            col: col.into(),
                            c,
                            d,
                            expected: "n/a".into(),
                            computed: "n/a".into(),
                            result: "not applicable for odd p".into(),
                            pass: true,
                        });
                        continue;
                    };
                    let bx = box_product(&m, &n)?;
                    let (label, exp) = expected(row, col, c, d, ring, p)?;
                    let res = iso(&bx, &exp);
                    let pass = bx.is_valid()
                        && match &res {
                            IsoResult::Found(f) => f.is_iso(&bx, &exp),
                            IsoResult::Inconclusive(_) => !ring.is_field(),
                            IsoResult::NotIsomorphic(_) => false,
                        };
                    out.push(TableCell {
                        row: row.into(),
                        col: col.into(),
                        c,
                        d,
                        expected: format!("{label} [{}]", exp.describe()),
                        computed: bx.canonical_form().0.describe(),
                        result: res.label().into(),
                        pass,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_p3_over_f7() {
        let cells = verify_table(GroundRing::PrimeField(7), 3).unwrap();
        for c in &cells {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn table_p2_over_z() {
        let cells = verify_table(GroundRing::Integers, 2).unwrap();
        for c in &cells {
            assert!(c.pass, "{c:?}");
        }
    }
}
