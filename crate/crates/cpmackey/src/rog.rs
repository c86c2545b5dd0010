//! The grading group RO(C_p), dimension functions, the twist d and commutation units.

use crate::error::{Error, Result};
use crate::ring::{inv_mod, is_prime};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// `coeffs[0]` counts the trivial representation; for p odd `coeffs[j]` counts
/// `lambda_j` (1 <= j <= (p-1)/2), for p = 2 `coeffs[1]` counts the sign representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ROGElement {
    pub p: i64,
    pub coeffs: Vec<i64>,
}

pub fn rog_len(p: i64) -> usize {
    if p == 2 {
        2
    } else {
        1 + ((p - 1) / 2) as usize
    }
}

/// Representative of `k mod p` in `1..=(p-1)/2` up to sign; `0` when `p | k`.
pub fn fold(k: i64, p: i64) -> i64 {
    let r = k.rem_euclid(p);
    r.min(p - r) % p
}

impl ROGElement {
    pub fn new(p: i64, coeffs: Vec<i64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if coeffs.len() != rog_len(p) {
            return Err(Error::DimensionMismatch(format!(
                "RO(C_{p}) element needs {} coefficients, got {}",
                rog_len(p),
                coeffs.len()
            )));
        }
        Ok(ROGElement { p, coeffs })
    }

    pub fn zero(p: i64) -> Self {
        ROGElement { p, coeffs: vec![0; rog_len(p)] }
    }

    /// `n` copies of the trivial representation.
    pub fn trivial(p: i64, n: i64) -> Self {
        let mut e = ROGElement::zero(p);
        e.coeffs[0] = n;
        e
    }

    /// For p odd, `lambda_j` with the index folded (`lambda_k = lambda_{p-k}`); `lambda_0 = 2`.
    /// For p = 2, the realification of the sign character, `2 zeta` (and `2` when k is even).
    pub fn lambda(p: i64, k: i64) -> Self {
        let mut e = ROGElement::zero(p);
        if p == 2 {
            if k.rem_euclid(2) == 1 {
                e.coeffs[1] = 2;
            } else {
                e.coeffs[0] = 2;
            }
            return e;
        }
        match fold(k, p) {
            0 => e.coeffs[0] = 2,
            j => e.coeffs[j as usize] = 1,
        }
        e
    }

    /// The sign representation (p = 2 only).
    pub fn zeta() -> Self {
        ROGElement { p: 2, coeffs: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `(|alpha^G|, |alpha|)`.
    pub fn dims(&self) -> (i64, i64) {
        let a0 = self.coeffs[0];
        if self.p == 2 {
            (a0, a0 + self.coeffs[1])
        } else {
            (a0, a0 + 2 * self.coeffs[1..].iter().sum::<i64>())
        }
    }

    /// Honest (actual) representation: all coefficients nonnegative.
    pub fn is_honest(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, n: i64) -> Self {
        ROGElement { p: self.p, coeffs: self.coeffs.iter().map(|c| c * n).collect() }
    }

    /// The twist in `F_p^x / {+-1}`, reported as the representative in `1..=(p-1)/2`.
    pub fn d_modp(&self) -> Result<i64> {
        if self.p == 2 {
            return Err(Error::InvalidArgument("the twist d is only defined for odd p".into()));
        }
        let x = self.d_lift_mod()?;
        Ok(x.min(self.p - x))
    }

    /// Integer lift: `j^{a_j}` for `a_j >= 0`, `inv(j)^{-a_j}` otherwise, with `inv(j)` in `1..p`.
    pub fn d_lift(&self) -> i64 {
        if self.p == 2 {
            return 1;
        }
        let mut acc: i128 = 1;
        for (j, &a) in self.coeffs.iter().enumerate().skip(1) {
            let base = if a >= 0 { j as i128 } else { inv_mod(j as i64, self.p).expect("j prime to p") as i128 };
            for _ in 0..a.unsigned_abs() {
                acc = acc.checked_mul(base).expect("d lift overflow");
            }
        }
        i64::try_from(acc).expect("d lift overflow")
    }

    /// `d_lift` reduced into `1..p`.
    pub fn d_lift_mod(&self) -> Result<i64> {
        if self.p == 2 {
            return Err(Error::InvalidArgument("the twist d is only defined for odd p".into()));
        }
        let mut acc = 1i64;
        for (j, &a) in self.coeffs.iter().enumerate().skip(1) {
            let base = if a >= 0 { j as i64 } else { inv_mod(j as i64, self.p).expect("j prime to p") };
            for _ in 0..a.unsigned_abs() {
                acc = acc * base % self.p;
            }
        }
        Ok(acc)
    }

    /// `(1 - d(-alpha) d(alpha)) / p` for alpha of dimension (0,0).
    pub fn b_coeff(&self) -> Result<i64> {
        if self.p == 2 {
            return Err(Error::InvalidArgument("b is only defined for odd p".into()));
        }
        if self.dims() != (0, 0) {
            return Err(Error::InvalidArgument(format!("b needs dimension (0,0), got {:?}", self.dims())));
        }
        let prod = (-self).d_lift() as i128 * self.d_lift() as i128;
        let num = 1 - prod;
        debug_assert_eq!(num % self.p as i128, 0);
        Ok(i64::try_from(num / self.p as i128).expect("b overflow"))
    }
}

impl Add for &ROGElement {
    type Output = ROGElement;
    fn add(self, o: &ROGElement) -> ROGElement {
        assert_eq!(self.p, o.p, "adding degrees for different primes");
        ROGElement { p: self.p, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ROGElement {
    type Output = ROGElement;
    fn sub(self, o: &ROGElement) -> ROGElement {
        assert_eq!(self.p, o.p, "subtracting degrees for different primes");
        ROGElement { p: self.p, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &ROGElement {
    type Output = ROGElement;
    fn neg(self) -> ROGElement {
        self.scale(-1)
    }
}

impl fmt::Display for ROGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sym = match (i, self.p) {
                (0, _) => String::new(),
                (_, 2) => "z".to_string(),
                (j, _) => format!("l{j}"),
            };
            parts.push(match (c, sym.is_empty()) {
                (c, true) => c.to_string(),
                (1, false) => sym,
                (-1, false) => format!("-{sym}"),
                (c, false) => format!("{c}{sym}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+").replace("+-", "-"))
        }
    }
}

/// Units of the Burnside ring `A(C_p/C_p)`: `sign * (1 - tau)^{tau}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BurnsideUnit {
    pub sign: i8,
    pub tau: bool,
}

impl BurnsideUnit {
    pub const ONE: BurnsideUnit = BurnsideUnit { sign: 1, tau: false };

    pub fn compose(self, o: BurnsideUnit) -> BurnsideUnit {
        BurnsideUnit { sign: self.sign * o.sign, tau: self.tau ^ o.tau }
    }

    /// Image under restriction: `r(1 - tau) = 1 - p`, which is `-1` for p = 2.
    pub fn restriction_to_bottom(self) -> i64 {
        let s = self.sign as i64;
        if self.tau {
            -s
        } else {
            s
        }
    }
}

impl fmt::Display for BurnsideUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "-" } else { "+" };
        if self.tau {
            write!(f, "{s}(1-t)")
        } else {
            write!(f, "{s}1")
        }
    }
}

/// The unit by which the switch map acts on `H^alpha * H^beta`.
pub fn comm_unit(a: &ROGElement, b: &ROGElement) -> BurnsideUnit {
    assert_eq!(a.p, b.p, "commutation unit for different primes");
    let sign = if (a.coeffs[0] * b.coeffs[0]).rem_euclid(2) == 1 { -1 } else { 1 };
    let tau = a.p == 2 && (a.coeffs[1] * b.coeffs[1]).rem_euclid(2) == 1;
    BurnsideUnit { sign, tau }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(p: i64, c: &[i64]) -> ROGElement {
        ROGElement::new(p, c.to_vec()).unwrap()
    }

    #[test]
    fn dims_examples() {
        assert_eq!(ROGElement::lambda(3, 1).dims(), (0, 2));
        assert_eq!(ROGElement::zero(5).dims(), (0, 0));
        assert_eq!(e(2, &[1, -1]).dims(), (1, 0));
    }

    #[test]
    fn twist_examples() {
        assert_eq!(e(5, &[0, 0, 1]).d_modp().unwrap(), 2);
        assert_eq!(ROGElement::zero(5).d_modp().unwrap(), 1);
        assert_eq!(e(5, &[0, -1, 1]).d_modp().unwrap(), 2);
        assert_eq!(e(5, &[0, 0, -1]).d_lift(), 3);
        assert_eq!(e(5, &[0, -1, 1]).d_lift(), 2);
        assert!(e(2, &[0, 1]).d_modp().is_err());
    }

    #[test]
    fn b_examples() {
        assert_eq!(ROGElement::zero(3).b_coeff().unwrap(), 0);
        assert_eq!(e(5, &[0, -1, 1]).b_coeff().unwrap(), -1);
        assert!(e(5, &[1, 0, 0]).b_coeff().is_err());
    }

    #[test]
    fn comm_unit_examples() {
        let z = ROGElement::zeta();
        assert_eq!(comm_unit(&z, &z), BurnsideUnit { sign: 1, tau: true });
        assert_eq!(comm_unit(&ROGElement::zero(3), &e(3, &[3, 1])), BurnsideUnit::ONE);
        let one = ROGElement::trivial(3, 1);
        assert_eq!(comm_unit(&one, &one), BurnsideUnit { sign: -1, tau: false });
    }

    #[test]
    fn burnside_unit_group() {
        let t = BurnsideUnit { sign: 1, tau: true };
        assert_eq!(t.compose(t), BurnsideUnit::ONE);
        assert_eq!(t.restriction_to_bottom(), -1);
        assert_eq!(BurnsideUnit { sign: -1, tau: true }.restriction_to_bottom(), 1);
    }

    #[test]
    fn fold_identifies_conjugates() {
        assert_eq!(fold(4, 5), 1);
        assert_eq!(fold(3, 5), 2);
        assert_eq!(fold(5, 5), 0);
        assert_eq!(ROGElement::lambda(5, 4), ROGElement::lambda(5, 1));
    }
}
