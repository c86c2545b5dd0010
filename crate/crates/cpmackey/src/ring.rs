//! Ground rings: the integers, prime fields and integers modulo n.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroundRing {
    Integers,
    PrimeField(i64),
    ModRing(i64),
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Extended Euclid: returns (g, x, y) with a*x + b*y = g >= 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of `a` modulo `m`, if it exists, as a representative in `0..m`.
pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    if g == 1 {
        Some(x.rem_euclid(m))
    } else {
        None
    }
}

impl GroundRing {
    pub fn prime_field(q: i64) -> Result<Self> {
        if is_prime(q) {
            Ok(GroundRing::PrimeField(q))
        } else {
            Err(Error::InvalidRing(format!("{q} is not prime")))
        }
    }

    pub fn mod_ring(n: i64) -> Result<Self> {
        if n >= 2 {
            Ok(GroundRing::ModRing(n))
        } else {
            Err(Error::InvalidRing(format!("modulus {n} must be at least 2")))
        }
    }

    /// Additive order of 1; zero for the integers.
    pub fn modulus(&self) -> i64 {
        match *self {
            GroundRing::Integers => 0,
            GroundRing::PrimeField(q) => q,
            GroundRing::ModRing(n) => n,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, GroundRing::PrimeField(_))
    }

    pub fn reduce(&self, x: i64) -> i64 {
        match self.modulus() {
            0 => x,
            n => x.rem_euclid(n),
        }
    }

    /// Reduce modulo the additive order `ord` intersected with the ring modulus.
    pub fn reduce_order(&self, x: i64, ord: i64) -> i64 {
        let m = gcd(self.modulus(), ord);
        if m == 0 {
            x
        } else {
            x.rem_euclid(m)
        }
    }

    /// Effective additive order of an element of order `ord` (0 = infinite).
    pub fn effective_order(&self, ord: i64) -> i64 {
        gcd(self.modulus(), ord)
    }

    pub fn is_unit(&self, x: i64) -> bool {
        match self.modulus() {
            0 => x == 1 || x == -1,
            n => gcd(x.rem_euclid(n), n) == 1,
        }
    }

    pub fn inverse(&self, x: i64) -> Option<i64> {
        match self.modulus() {
            0 => match x {
                1 => Some(1),
                -1 => Some(-1),
                _ => None,
            },
            n => inv_mod(x, n),
        }
    }

    /// Units of the ring in a fixed order; the integers give `[1, -1]`.
    pub fn units(&self) -> Vec<i64> {
        match self.modulus() {
            0 => vec![1, -1],
            n => (1..n).filter(|&x| gcd(x, n) == 1).collect(),
        }
    }

    /// Whether `p` is invertible in the ring.
    pub fn p_invertible(&self, p: i64) -> bool {
        match self.modulus() {
            0 => false,
            n => gcd(p, n) == 1,
        }
    }

    /// Whether the ring has no nonzero elements of additive order `p`.
    pub fn no_p_torsion(&self, p: i64) -> bool {
        match self.modulus() {
            0 => true,
            n => n % p != 0,
        }
    }
}

impl fmt::Display for GroundRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundRing::Integers => write!(f, "Z"),
            GroundRing::PrimeField(q) => write!(f, "F{q}"),
            GroundRing::ModRing(n) => write!(f, "Z/{n}"),
        }
    }
}

impl FromStr for GroundRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z" || s == "ZZ" {
            return Ok(GroundRing::Integers);
        }
        let parse = |t: &str| t.parse::<i64>().map_err(|_| Error::InvalidRing(format!("cannot parse ring '{s}'")));
        if let Some(rest) = s.strip_prefix("Z/") {
            return GroundRing::mod_ring(parse(rest)?);
        }
        if let Some(rest) = s.strip_prefix("GF").or_else(|| s.strip_prefix('F')) {
            return GroundRing::prime_field(parse(rest)?);
        }
        Err(Error::InvalidRing(format!("cannot parse ring '{s}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["Z", "F7", "Z/6"] {
            assert_eq!(s.parse::<GroundRing>().unwrap().to_string(), s);
        }
        assert!("F6".parse::<GroundRing>().is_err());
        assert!("Z/1".parse::<GroundRing>().is_err());
    }

    #[test]
    fn torsion_predicates() {
        let f7 = GroundRing::PrimeField(7);
        assert!(f7.p_invertible(3));
        assert!(!f7.p_invertible(7));
        assert!(GroundRing::Integers.no_p_torsion(5));
        assert!(!GroundRing::ModRing(10).no_p_torsion(5));
    }

    #[test]
    fn ext_gcd_identity() {
        for a in -20..20 {
            for b in -20..20 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(g, gcd(a, b));
            }
        }
    }
}
