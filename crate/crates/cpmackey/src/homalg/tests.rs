use super::*;
use crate::matrix::Mat;
use crate::ring::GroundRing;

const Z: GroundRing = GroundRing::Integers;

fn f(q: i64) -> GroundRing {
    GroundRing::PrimeField(q)
}

/// Group cohomology of `Z/n` with a rank-one coefficient module on which the generator
/// acts by `s`, from the standard periodic complex: `H^0 = fixed points`, then
/// alternately `ker(N_s)/im(g - s)` and `ker(g - s)/im(N_s)`.
fn cyclic_oracle(n: i64, s: i64, deg: usize) -> Vec<i64> {
    // on Z: g - s acts by 1 - s, N_s by sum_i s^i
    let minus = 1 - s;
    let norm: i64 = (0..n).map(|i| if i % 2 == 1 { s } else { 1 }).sum();
    let h = |ker_of: i64, im_of: i64| -> Vec<i64> {
        match (ker_of, im_of) {
            (0, 0) => vec![0],
            (0, c) => {
                let c = c.abs();
                if c == 1 {
                    vec![]
                } else {
                    vec![c]
                }
            }
            _ => vec![],
        }
    };
    if deg == 0 {
        return h(minus, 0);
    }
    if deg % 2 == 1 {
        h(norm, minus)
    } else {
        h(minus, norm)
    }
}

fn scalar_module(ring: GroundRing, n: usize, s: i64) -> GroupRingModule {
    GroupRingModule::new(ring, FiniteGroup::cyclic(n), 1, &[Mat::scalar(1, ring.reduce(s))]).unwrap()
}

#[test]
fn group_validation() {
    assert!(FiniteGroup::from_table("bad", vec![vec![0, 1], vec![1, 1]], vec![1]).is_err());
    let klein = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2));
    let g = FiniteGroup::from_table("V4", klein.table.clone(), klein.generators.clone()).unwrap();
    assert_eq!(g.order(), 4);
    assert!((0..4).all(|x| g.mul(x, x) == 0));
    let c2 = FiniteGroup::cyclic(2);
    assert!(GroupRingModule::new(Z, c2, 1, &[Mat::scalar(1, 2)]).is_err());
}

#[test]
fn periodic_resolution_of_z_over_c2() {
    let k = GroupRingModule::trivial(Z, &FiniteGroup::cyclic(2));
    let r = periodic_resolution(&k, 4).unwrap();
    r.check().unwrap();
    assert_eq!(r.ranks(), vec![1; 5]);
    // d_1 = g - 1, d_2 = 1 + g as right multiplications on the basis (1, g)
    assert_eq!(r.differentials[0], Mat::from_rows(&[vec![-1, 1], vec![1, -1]], 2));
    assert_eq!(r.differentials[1], Mat::from_rows(&[vec![1, 1], vec![1, 1]], 2));
    let sign = GroupRingModule::sign(Z, &FiniteGroup::cyclic(2)).unwrap();
    let rs = periodic_resolution(&sign, 4).unwrap();
    rs.check().unwrap();
    assert_eq!(rs.differentials[0], Mat::from_rows(&[vec![1, 1], vec![1, 1]], 2));
    assert_eq!(rs.differentials[1], Mat::from_rows(&[vec![1, -1], vec![-1, 1]], 2));
}

#[test]
fn free_modules_resolve_themselves() {
    let g = FiniteGroup::cyclic(3);
    let free = GroupRingModule::free(Z, &g, 2);
    let r = projective_resolution(&free, 5).unwrap();
    assert_eq!(r.length(), 0);
    assert!(r.finite);
    r.check().unwrap();
    assert!(ext(&free, &GroupRingModule::trivial(Z, &g), 1).unwrap().is_zero_module());
    assert_eq!(ext(&free, &GroupRingModule::trivial(Z, &g), 0).unwrap().invariants(), vec![0, 0]);
}

#[test]
fn kernel_resolutions_are_exact() {
    let klein = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2));
    for ring in [Z, f(2), f(3)] {
        for g in [FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), klein.clone()] {
            let k = GroupRingModule::trivial(ring, &g);
            let r = kernel_resolution(&k, 3).unwrap();
            r.check().unwrap();
        }
    }
    // over F_3 the trivial module of Z/2 is projective but not free: the free
    // resolution goes on, and Ext vanishes in positive degrees
    let k = GroupRingModule::trivial(f(3), &FiniteGroup::cyclic(2));
    let r = kernel_resolution(&k, 4).unwrap();
    assert!(!r.finite);
    r.check().unwrap();
    assert!((1..4).all(|d| ext_group(&r, &k, d).unwrap().is_zero()));
}

#[test]
fn cyclic_ext_matches_the_periodic_oracle() {
    for n in [2usize, 3, 4, 6] {
        for s in [1i64, -1] {
            if s == -1 && n % 2 == 1 {
                continue;
            }
            let m = scalar_module(Z, n, s);
            let k = GroupRingModule::trivial(Z, &FiniteGroup::cyclic(n));
            let per = periodic_resolution(&k, 6).unwrap();
            let ker = kernel_resolution(&k, 6).unwrap();
            for deg in 0..5 {
                let a = ext_group(&per, &m, deg).unwrap();
                let b = ext_group(&ker, &m, deg).unwrap();
                assert_eq!(a.invariants(), cyclic_oracle(n as i64, s, deg), "n={n} s={s} deg={deg}");
                assert_eq!(a.invariants(), b.invariants());
            }
        }
    }
}

#[test]
fn small_ext_values() {
    let c2 = FiniteGroup::cyclic(2);
    let k = GroupRingModule::trivial(Z, &c2);
    let sign = GroupRingModule::sign(Z, &c2).unwrap();
    assert_eq!(ext(&k, &k, 0).unwrap().invariants(), vec![0]);
    assert_eq!(ext(&k, &k, 2).unwrap().invariants(), vec![2]);
    assert!(ext(&k, &k, 1).unwrap().is_zero_module());
    assert_eq!(ext(&k, &sign, 1).unwrap().invariants(), vec![2]);
    assert!(ext(&k, &sign, 0).unwrap().is_zero_module());
    // semisimple shortcut agrees with the resolution
    let k3 = GroupRingModule::trivial(f(3), &c2);
    let s3 = GroupRingModule::sign(f(3), &c2).unwrap();
    let r = periodic_resolution(&k3, 4).unwrap();
    for deg in 0..3 {
        for n in [&k3, &s3] {
            assert_eq!(ext(&k3, n, deg).unwrap().invariants(), ext_group(&r, n, deg).unwrap().invariants().to_vec());
        }
    }
    assert_eq!(ext(&k3, &k3, 0).unwrap().dimension(), 1);
}

#[test]
fn hom_is_fixed_points_of_the_internal_hom() {
    let c2 = FiniteGroup::cyclic(2);
    let k = GroupRingModule::trivial(Z, &c2);
    let sign = GroupRingModule::sign(Z, &c2).unwrap();
    let free = GroupRingModule::free(Z, &c2, 1);
    assert!(k.hom(&sign).unwrap().is_zero_module());
    assert_eq!(free.hom(&k).unwrap().invariants(), vec![0]);
    assert_eq!(free.hom(&free).unwrap().invariants(), vec![0, 0]);
    assert_eq!(k.hom(&free).unwrap().invariants(), vec![0]);
}

#[test]
fn relatively_injective_resolution_of_the_sign_module() {
    let c2 = FiniteGroup::cyclic(2);
    for ring in [Z, f(2)] {
        let sign = GroupRingModule::sign(ring, &c2).unwrap();
        let r = rel_injective_resolution(&sign, 4).unwrap();
        assert_eq!(r.kind, ResolutionKind::RelativelyInjective);
        r.check().unwrap();
        assert_eq!(r.ranks(), vec![1; 5]);
    }
}

#[test]
fn tensor_of_c2_resolutions() {
    for ring in [Z, f(2)] {
        let c2 = FiniteGroup::cyclic(2);
        let k = GroupRingModule::trivial(ring, &c2);
        let p = periodic_resolution(&k, 4).unwrap();
        let t = tensor_of_resolutions(&p, &p).unwrap();
        assert_eq!(t.ranks(), (1..=5).collect::<Vec<_>>());
        assert_eq!(t.resolved.group.order(), 4);
        t.check().unwrap();
        // Ext over the Klein group from the tensor and the kernel resolutions agree
        let klein = t.resolved.clone();
        let ker = kernel_resolution(&klein, 4).unwrap();
        for deg in 0..4 {
            assert_eq!(
                ext_group(&t, &klein, deg).unwrap().invariants(),
                ext_group(&ker, &klein, deg).unwrap().invariants(),
            );
        }
    }
}

/// Integral E_2 of BO(2): the figure, read off row by row.
fn expected_bo2(s: usize, t: usize) -> Vec<i64> {
    match (s, t % 4, t % 2) {
        (0, 0, _) => vec![0],
        (_, _, 1) => vec![],
        (s, 0, _) if s % 2 == 0 => vec![2],
        (s, 2, _) if s % 2 == 1 => vec![2],
        _ => vec![],
    }
}

#[test]
fn bo2_page_matches_the_figure() {
    let (page, _) = bo2_page(Z, 10, 10).unwrap();
    for s in 0..=10 {
        for t in 0..=10 {
            assert_eq!(page.get(s, t).invariants(), expected_bo2(s, t), "({s},{t})");
        }
    }
    let grid = page.grid();
    assert!(grid.lines().count() == 12);
}

fn bo2_generators() -> (CupProducts, LeibnizData) {
    let (_, cup) = bo2_page(Z, 8, 8).unwrap();
    let data = LeibnizData::bo2(&cup).unwrap();
    assert_eq!(data.names, vec!["p1", "alpha", "beta"]);
    (cup, data)
}

#[test]
fn bo2_relations_and_products() {
    let (cup, data) = bo2_generators();
    for (name, ok) in data.check_relations(&cup).unwrap() {
        assert_eq!(ok, Some(true), "{name}");
    }
    let [p1, a, b] = [0, 1, 2].map(|i| data.generators[i].clone());
    let a2 = cup.product(&a, &a).unwrap().unwrap();
    assert_eq!(a2, cup.generator(4, 0, 0).unwrap());
    // every monomial p1^i alpha^j beta^e with e <= 1 in range is the generator of its group
    for i in 0..=2 {
        for j in 0..=3 {
            for e in 0..=1 {
                let mut m = vec![0; i];
                m.extend(vec![1; j]);
                m.extend(vec![2; e]);
                let Some(x) = data.monomial(&cup, &m).unwrap() else { continue };
                assert!(!x.is_zero(), "{m:?}");
                let g = cup.group(x.s, x.t).unwrap();
                assert_eq!(x.coords.iter().map(|c| c.abs()).collect::<Vec<_>>(), vec![1], "{m:?}");
                assert_eq!(g.invariants().len(), 1);
            }
        }
    }
    assert_eq!(p1.degree(), 4);
    assert_eq!(b.degree(), 3);
    assert_eq!(cup.unit().unwrap().coords, vec![1]);
}

#[test]
fn cup_products_are_graded_commutative_and_associative() {
    let (cup, data) = bo2_generators();
    let mut classes = data.generators.clone();
    classes.push(cup.unit().unwrap());
    classes.push(cup.generator(4, 0, 0).unwrap());
    classes.push(cup.generator(3, 2, 0).unwrap());
    for x in &classes {
        for y in &classes {
            let (Some(xy), Some(yx)) = (cup.product(x, y).unwrap(), cup.product(y, x).unwrap()) else { continue };
            let sign = if (x.degree() * y.degree()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(xy, yx.scale(sign), "{x} {y}");
            for z in &classes {
                let (Some(l), Some(r)) = (
                    cup.product(&xy, z).unwrap(),
                    cup.product(y, z).unwrap().and_then(|yz| cup.product(x, &yz).unwrap()),
                ) else {
                    continue;
                };
                assert_eq!(l, r);
            }
        }
    }
}

#[test]
fn products_do_not_depend_on_the_diagonal() {
    let coeffs = GradedCoefficients::sign_polynomial(Z, 6);
    let a = CupProducts::new(coeffs.clone(), 6, false).unwrap();
    let b = CupProducts::new(coeffs, 6, true).unwrap();
    let gens: Vec<ExtClass> =
        [(0, 4), (2, 0), (1, 2), (3, 2), (0, 0)].iter().map(|&(s, t)| a.generator(s, t, 0).unwrap()).collect();
    for x in &gens {
        for y in &gens {
            assert_eq!(a.product(x, y).unwrap(), b.product(x, y).unwrap());
        }
    }
}

#[test]
fn collapse_over_the_integers() {
    let (page, cup) = bo2_page(Z, 8, 8).unwrap();
    let data = LeibnizData::bo2(&cup).unwrap();
    let plain = collapse_report(&page, &cup, &data, &[], 5).unwrap();
    assert!(plain.generated && plain.relations_hold);
    assert_eq!(plain.candidates, vec!["d3(p1): (0,4) -> (3,2)", "d3(beta): (1,2) -> (4,0)"]);
    assert_eq!(plain.excluded_by_leibniz, vec!["d3(p1): (0,4) -> (3,2)"]);
    assert_eq!(plain.residual, vec!["d3(beta): (1,2) -> (4,0)"]);
    assert!(!plain.collapses);
    let cert = Certificate::NonzeroCohomology { degree: 3, statement: "H^3(BO(2); Z) != 0".into() };
    let full = collapse_report(&page, &cup, &data, &[cert], 5).unwrap();
    assert!(full.residual.is_empty());
    assert_eq!(full.certified.len(), 1);
    assert!(full.collapses);
}

#[test]
fn collapse_away_from_two() {
    for q in [3, 5] {
        let (page, cup) = bo2_page(f(q), 20, 20).unwrap();
        let data = LeibnizData::bo2(&cup).unwrap();
        assert_eq!(data.names, vec!["p1"]);
        let rep = collapse_report(&page, &cup, &data, &[], 5).unwrap();
        assert!(rep.candidates.is_empty() && rep.collapses, "{rep:?}");
        for n in 0..=20 {
            assert_eq!(page.total_dimension(n).unwrap(), (n % 4 == 0) as usize, "q={q} n={n}");
        }
    }
}

#[test]
fn trigraded_page_needs_concentrated_homology() {
    let coeffs = GradedCoefficients::sign_polynomial(Z, 2);
    let k = GroupRingModule::trivial(Z, &coeffs.group);
    let page = eilenberg_e2(&[(0, k.clone()), (1, k)], &coeffs, 2).unwrap();
    assert_eq!(page.entries.len(), 2 * 3 * 3);
    assert!(page.bigraded().is_err());
}
