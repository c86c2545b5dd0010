use super::*;
use crate::mackey::{iso, IsoResult};
use crate::rog::comm_unit;

const Z: GroundRing = GroundRing::Integers;

fn deg(p: i64, c: &[i64]) -> ROGElement {
    ROGElement::new(p, c.to_vec()).unwrap()
}

fn b(alpha: &ROGElement, g: Gen) -> GradedClass {
    GradedClass::basis(Z, alpha, g).unwrap()
}

/// A degree with the given dimensions: `m + n' zeta` for p = 2, `m + k lambda_1` for p odd.
fn at_dims(p: i64, m: i64, n: i64) -> ROGElement {
    let mut c = vec![0; crate::rog::rog_len(p)];
    c[0] = m;
    c[1] = if p == 2 { n - m } else { (n - m) / 2 };
    deg(p, &c)
}

#[test]
fn additive_examples() {
    let d = additive(&deg(2, &[0, -1]));
    assert_eq!(d.mackey_type, PointType::BracketK);
    assert_eq!(d.top_basis, vec!["eps^-1kappa".to_string()]);
    assert!(d.bottom_basis.is_empty());

    let a = &ROGElement::lambda(3, 1) - &ROGElement::trivial(3, 2);
    let d = additive(&a);
    assert_eq!(d.dims, (-2, 0));
    assert_eq!(d.mackey_type, PointType::R);
    assert_eq!(d.top_basis, vec![format!("xi[{a}]")]);

    assert_eq!(additive(&ROGElement::zero(2)).mackey_type, PointType::A);
    assert_eq!(additive(&ROGElement::zero(5)).mackey_type, PointType::ATwisted(1));
    assert_eq!(additive(&deg(5, &[0, -1, 1])).mackey_type, PointType::ATwisted(2));
    assert_eq!(type_at_dims(3, 1, 0), PointType::NotARepresentation);
}

#[test]
fn basis_sizes_match_types() {
    for p in [2, 3, 5] {
        for m in -10..=10 {
            for n in -10..=10 {
                if type_at_dims(p, m, n) == PointType::NotARepresentation {
                    continue;
                }
                let a = at_dims(p, m, n);
                let f = point_functor(Z, &a).unwrap();
                let s = standard_of_type(point_type(&a), Z, p).unwrap();
                assert_eq!(f.top.gens, s.top.canonical().invariants.len(), "{p} {a}");
                assert_eq!(f.bottom.gens, s.bottom.gens, "{p} {a}");
            }
        }
    }
}

#[test]
fn assembled_functors_match_standard() {
    for ring in [Z, GroundRing::PrimeField(7)] {
        for p in [2, 3, 5] {
            for m in -10..=10 {
                for n in -10..=10 {
                    if type_at_dims(p, m, n) == PointType::NotARepresentation {
                        continue;
                    }
                    let a = at_dims(p, m, n);
                    let f = point_functor(ring, &a).unwrap();
                    assert!(f.is_valid(), "{p} {a}: {:?}", f.validate());
                    let s = standard_of_type(point_type(&a), ring, p).unwrap();
                    match iso(&f, &s) {
                        IsoResult::Found(w) => assert!(w.is_iso(&f, &s)),
                        other => panic!("{ring} p={p} {a}: {}", other.label()),
                    }
                }
            }
        }
    }
}

#[test]
fn twisted_degrees_for_p5() {
    for c in degrees_in_box(5, &[(0, 0), (-2, 2), (-2, 2)]) {
        if c.dims() != (0, 0) {
            continue;
        }
        let f = point_functor(Z, &c).unwrap();
        let s = standard_of_type(point_type(&c), Z, 5).unwrap();
        assert!(iso(&f, &s).is_found(), "{c}");
    }
}

#[test]
fn p2_identities() {
    let zero = ROGElement::zero(2);
    let kappa = b(&zero, Gen::Kappa);
    assert_eq!(multiply(&kappa, &kappa).unwrap(), kappa.scale(2));
    let eps = b(&deg(2, &[0, 1]), Gen::Eps);
    let eik = b(&deg(2, &[0, -1]), Gen::EpsInvKappa);
    assert_eq!(multiply(&eps, &eik).unwrap(), kappa);
    let one = GradedClass::one(Z, 2);
    assert_eq!(multiply(&one, &eik).unwrap(), eik);
    let xi = b(&deg(2, &[-2, 2]), Gen::Xi);
    let iota_m2 = GradedClass::basis(Z, &deg(2, &[-2, 2]), Gen::Iota).unwrap();
    assert_eq!(restrict(&xi).unwrap(), iota_m2);
    assert!(restrict(&kappa).unwrap().is_zero());
    let iota = GradedClass::basis(Z, &deg(2, &[1, -1]), Gen::Iota).unwrap();
    let iota_inv = GradedClass::basis(Z, &deg(2, &[-1, 1]), Gen::Iota).unwrap();
    assert_eq!(multiply(&iota, &iota_inv).unwrap(), restrict(&one).unwrap());
    // the target of xi * eps^-1 t(iota^3) has dimensions (1, -1), which is zero
    let e3 = b(&deg(2, &[3, -4]), Gen::EpsInvTr);
    assert_eq!(point_type(&deg(2, &[1, -2])), PointType::Zero);
    assert!(multiply(&xi, &e3).unwrap().is_zero());
    let e5 = b(&deg(2, &[5, -6]), Gen::EpsInvTr);
    assert_eq!(multiply(&xi, &e5).unwrap(), e3);
    // t(iota^0) = 2 - kappa
    let t0 = transfer(&restrict(&one).unwrap()).unwrap();
    assert_eq!(t0, one.scale(2).sub(&kappa).unwrap());
    assert_eq!(gen_name(&deg(2, &[3, -4]), Gen::EpsInvTr), "eps^-1t(iota^3)");
}

#[test]
fn p5_mu_coefficient() {
    let a = deg(5, &[0, -1, 1]);
    let na = -&a;
    assert_eq!((a.d_lift(), na.d_lift()), (2, 3));
    let prod = multiply(&b(&a, Gen::Mu), &b(&na, Gen::Mu)).unwrap();
    let zero = ROGElement::zero(5);
    let expect = GradedClass::one(Z, 5).add(&b(&zero, Gen::Tr)).unwrap();
    assert_eq!(prod, expect);
    assert_eq!(gen_name(&zero, Gen::Mu), "1");
}

#[test]
fn kappa_squares_to_p_kappa() {
    for p in [3, 5, 7] {
        let zero = ROGElement::zero(p);
        let (k, s) = kappa_sigma(Z, &zero).unwrap();
        assert_eq!(multiply(&k, &k).unwrap(), k.scale(p));
        assert!(restrict(&k).unwrap().is_zero());
        assert_eq!(restrict(&s).unwrap(), GradedClass::basis(Z, &zero, Gen::Iota).unwrap());
    }
    let a = deg(5, &[0, 1, -1]);
    let (k, s) = kappa_sigma(Z, &a).unwrap();
    assert!(restrict(&k).unwrap().is_zero());
    assert_eq!(restrict(&s).unwrap(), GradedClass::basis(Z, &a, Gen::Iota).unwrap());
}

#[test]
fn axioms_hold() {
    for (ring, p) in [(Z, 2), (Z, 3), (Z, 5), (GroundRing::PrimeField(7), 3), (GroundRing::ModRing(4), 2)] {
        let rep = check_axioms(ring, p).unwrap();
        assert!(rep.ok(), "{ring} p={p}: {:#?}", rep.failures);
        assert!(rep.associativity > 500, "{rep:?}");
        if p != 2 && ring == Z {
            assert!(rep.fourth_quadrant_pairs > 0);
        }
    }
}

#[test]
fn commutation_unit_is_not_trivially_one() {
    // eps * eps: the unit 1 - tau acts through tau = 0 on <k>
    let z = deg(2, &[0, 1]);
    let u = comm_unit(&z, &z);
    assert!(u.tau);
    let e = b(&z, Gen::Eps);
    let sq = multiply(&e, &e).unwrap();
    assert_eq!(act_unit(u, &sq).unwrap(), sq);
    // on A it is the nontrivial involution 1 - tau
    let one = GradedClass::one(Z, 2);
    assert_ne!(act_unit(u, &one).unwrap(), one);
}

/// Independent oracle for the bottom ring: iota_alpha as a Laurent monomial in the
/// generators `iota_{lambda_j - lambda_1}` (j >= 2) and `iota_{2 - lambda_1}`.
fn exponents(a: &ROGElement) -> Vec<i64> {
    let mut e = vec![a.coeffs[0] / 2];
    e.extend(a.coeffs.iter().skip(2));
    e
}

#[test]
fn bottom_ring_is_laurent() {
    for p in [3, 5, 7] {
        let degs: Vec<ROGElement> =
            degrees_in_box(p, &vec![(-2, 2); crate::rog::rog_len(p)]).into_iter().filter(|a| a.dims().1 == 0).collect();
        for a in &degs {
            for c in &degs {
                let x = GradedClass::basis(Z, a, Gen::Iota).unwrap();
                let y = GradedClass::basis(Z, c, Gen::Iota).unwrap();
                let prod = multiply(&x, &y).unwrap();
                let (key, v) = prod.terms.iter().next().unwrap();
                assert_eq!(*v, 1);
                let e: Vec<i64> = exponents(a).iter().zip(exponents(c)).map(|(u, w)| u + w).collect();
                assert_eq!(exponents(&key.0), e);
            }
        }
    }
}

#[test]
fn mixed_levels_rejected() {
    let one = GradedClass::one(Z, 3);
    let r = restrict(&one).unwrap();
    assert!(multiply(&one, &r).is_err());
    assert!(GradedClass::basis(Z, &deg(3, &[1, -1]), Gen::Eps).is_err());
}
