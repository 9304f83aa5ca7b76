use weilreg::exactalg::{int, read_polynomial, Ideal, Polynomial, Scalar};
use weilreg::fixtures::*;
use weilreg::groups::*;
use weilreg::varmaps::*;
use weilreg::Error;

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn ideal(names: &[String], gens: &[&str]) -> Ideal {
    Ideal::new(names.len(), gens.iter().map(|g| read_polynomial(g, names).unwrap()).collect())
}

fn pt(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&k| int(k)).collect()
}

#[test]
fn standard_groups_are_valid() {
    let ga = additive("s");
    assert_eq!(ga.arity(), 1);
    let a = ga.point(&pt(&[2])).unwrap();
    let b = ga.point(&pt(&[-5])).unwrap();
    assert_eq!(ga.multiply(&a, &b).unwrap(), GroupPoint::Coords(pt(&[-3])));
    assert_eq!(ga.invert(&a).unwrap(), GroupPoint::Coords(pt(&[-2])));

    let gm = multiplicative("z", "w");
    let g = gm.point(&pt(&[2])).unwrap();
    assert_eq!(g, GroupPoint::Coords(vec![int(2), weilreg::exactalg::ratio(1, 2)]));
    assert_eq!(gm.multiply(&g, &gm.invert(&g).unwrap()).unwrap(), gm.identity());
    assert!(matches!(gm.point(&pt(&[0])), Err(Error::PointNotOnGroup(_))));
    assert!(matches!(gm.point(&pt(&[1, 2])), Err(Error::PointNotOnGroup(_))));

    let z = z2();
    let s = GroupPoint::Element(z.element("s").unwrap());
    assert_eq!(z.multiply(&s, &s).unwrap(), z.identity());
    assert_eq!(z.invert(&s).unwrap(), s);
}

#[test]
fn products_of_groups() {
    let spec = GroupSpec::Product(
        Box::new(GroupSpec::Additive("s".into())),
        Box::new(GroupSpec::Multiplicative("z".into(), "w".into())),
    );
    let g = make_group(&spec).unwrap();
    assert_eq!(g.arity(), 3);
    let p = g.point(&pt(&[4, 3])).unwrap();
    let q = g.point(&pt(&[1, 5])).unwrap();
    let pq = g.multiply(&p, &q).unwrap();
    assert_eq!(pq, GroupPoint::Coords(vec![int(5), int(15), weilreg::exactalg::ratio(1, 15)]));

    let finite =
        GroupSpec::Finite { elements: names(&["e", "s"]), table: vec![names(&["e", "s"]), names(&["s", "e"])] };
    let klein = make_group(&GroupSpec::Product(Box::new(finite.clone()), Box::new(finite))).unwrap();
    assert_eq!(klein.elements().unwrap().len(), 4);
    let x = GroupPoint::Element(klein.element("s.s").unwrap());
    assert_eq!(klein.multiply(&x, &x).unwrap(), klein.identity());
}

#[test]
fn axiom_failures_are_named() {
    let v = AffineVariety::affine_space(&["s"]);
    let two = |s: &str| read_polynomial(s, &["s", "s'"]).unwrap();
    let bad_identity = GroupSpec::General {
        variety: v.clone(),
        mul: vec![two("s+s'+1")],
        inv: vec![read_polynomial("-s", &["s"]).unwrap()],
        identity: pt(&[0]),
    };
    match make_group(&bad_identity) {
        Err(Error::AxiomFailure { law, .. }) => assert_eq!(law, "m(e,g) = g"),
        other => panic!("{other:?}"),
    }
    // (a - b) is not associative, and 0 is not a two-sided identity
    let bad = GroupSpec::General {
        variety: v.clone(),
        mul: vec![two("s-s'")],
        inv: vec![read_polynomial("s", &["s"]).unwrap()],
        identity: pt(&[0]),
    };
    assert!(matches!(make_group(&bad), Err(Error::AxiomFailure { .. })));
    // s + s' + 1 with identity -1 and inverse -s - 2 is a valid group
    let shifted = GroupSpec::General {
        variety: v,
        mul: vec![two("s+s'+1")],
        inv: vec![read_polynomial("-s-2", &["s"]).unwrap()],
        identity: pt(&[-1]),
    };
    assert!(make_group(&shifted).is_ok());

    let no_inverse =
        GroupSpec::Finite { elements: names(&["e", "a"]), table: vec![names(&["e", "a"]), names(&["a", "a"])] };
    match make_group(&no_inverse) {
        Err(Error::AxiomFailure { law, .. }) => assert_eq!(law, "inverse"),
        other => panic!("{other:?}"),
    }
    let not_closed =
        GroupSpec::Finite { elements: names(&["e", "a"]), table: vec![names(&["e", "a"]), names(&["a", "b"])] };
    assert!(matches!(make_group(&not_closed), Err(Error::AxiomFailure { .. })));
}

#[test]
fn actions_from_the_examples_are_valid() {
    let _ = blowup_action();
    let _ = cremona_action();
    let _ = translation_action();
    let _ = swap_action();
    let _ = half_cremona_action();
    let _ = scaling_action();
}

#[test]
fn mutated_actions_are_rejected_with_a_residue() {
    match parametric_action(additive("s"), plane("u", "t"), &["u+s", "u*t/(u+2*s)"]) {
        Err(Error::NotAnAction { law, residue }) => {
            assert_eq!(law, "ρ(m(g,h),x) = ρ(g,ρ(h,x))");
            assert_ne!(residue, "0");
            assert!(!residue.is_empty());
        }
        other => panic!("{other:?}"),
    }
    match parametric_action(additive("s"), plane("x", "y"), &["x+s+1", "y"]) {
        Err(Error::NotAnAction { law, .. }) => assert_eq!(law, "ρ(e,x) = x"),
        other => panic!("{other:?}"),
    }
    match involution_action(plane("x", "y"), &["1/x", "y+1"]) {
        Err(Error::NotAnAction { law, residue }) => {
            assert_eq!(law, "ρ_s∘ρ_s = ρ_e");
            assert_eq!(residue, "2");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn lift_examples() {
    let a = blowup_action();
    let lift = a.lift_tilde().unwrap();
    assert_eq!(lift.tilde[0].format()[0], vec!["s", "s+u", "u*t/(s+u)"]);
    assert_eq!(lift.inverse[0].format()[0], vec!["s", "-s+u", "-u*t/(s-u)"]);

    let t = translation_action();
    let lift = t.lift_tilde().unwrap();
    assert!(lift.tilde[0].is_polynomial() && lift.inverse[0].is_polynomial());

    let c = cremona_action();
    let lift = c.lift_tilde().unwrap();
    assert!(maps_equal(&lift.tilde[1], &cremona()).unwrap());
    assert!(maps_equal(&lift.inverse[1], &cremona()).unwrap());
}

#[test]
fn g_regular_locus_examples() {
    let a = blowup_action();
    let reg = g_regular_locus(&a).unwrap();
    let n = a.space().names().to_vec();
    assert!(reg.open.complement_ideal().same_as(&ideal(&n, &["u"])).unwrap());
    assert_eq!(reg.open.complement_basis().unwrap().iter().map(|p| p.format(&n)).collect::<Vec<_>>(), vec!["u"]);
    // E = V(u·(u+s)); its coefficients in s are u² and u
    let pn = a.product_space().unwrap().names().to_vec();
    assert!(reg.tilde_breg[0].complement_ideal().same_as(&ideal(&pn, &["u^2+u*s"])).unwrap());
    assert!(reg.bad[0].same_as(&ideal(&n, &["u^2", "u"])).unwrap());

    let c = cremona_action();
    let reg = g_regular_locus(&c).unwrap();
    assert!(reg.open.complement_ideal().same_as(&ideal(&names(&["x", "y"]), &["x*y"])).unwrap());

    let t = translation_action();
    let reg = g_regular_locus(&t).unwrap();
    assert!(reg.open.complement_ideal().is_unit().unwrap());
    assert!(reg.all_regular().unwrap());

    let h = half_cremona_action();
    let reg = g_regular_locus(&h).unwrap();
    assert!(reg.open.complement_ideal().same_as(&ideal(&names(&["x", "y"]), &["x"])).unwrap());
}

#[test]
fn specialize_examples() {
    let a = blowup_action();
    let r1 = a.specialize(&a.group().point(&pt(&[1])).unwrap()).unwrap();
    assert_eq!(r1.format()[0], vec!["u+1", "u*t/(u+1)"]);
    assert!(maps_equal(&r1, &blowup_shift(1)).unwrap());
    let e = a.specialize(&a.group().identity()).unwrap();
    assert!(maps_equal(&e, &RationalMap::identity(a.space().clone())).unwrap());
    let t = translation_action();
    let t3 = t.specialize(&GroupPoint::Coords(pt(&[3]))).unwrap();
    assert_eq!(t3.format()[0], vec!["x+3", "y"]);
    assert!(matches!(t.specialize(&GroupPoint::Coords(pt(&[1, 2]))), Err(Error::PointNotOnGroup(_))));
    let s = scaling_action();
    assert!(matches!(s.specialize(&GroupPoint::Coords(pt(&[2, 2]))), Err(Error::PointNotOnGroup(_))));
    let c = cremona_action();
    assert!(maps_equal(&c.specialize(&GroupPoint::Element(1)).unwrap(), &cremona()).unwrap());
}

#[test]
fn restriction_examples() {
    let c = cremona_action();
    let torus = OpenSubset::principal(c.space().clone(), read_polynomial("x*y", &["x", "y"]).unwrap()).unwrap();
    let r = c.restrict_to_open(&torus).unwrap();
    let reg = g_regular_locus(&r).unwrap();
    assert!(reg.all_regular().unwrap());

    let a = blowup_action();
    let u = OpenSubset::principal(a.space().clone(), read_polynomial("u", &["u", "t"]).unwrap()).unwrap();
    let r = a.restrict_to_open(&u).unwrap();
    let reg = g_regular_locus(&r).unwrap();
    assert!(reg.all_regular().unwrap());
    assert!(reg.open.complement_ideal().same_as(&ideal(&names(&["u", "t"]), &["u"])).unwrap());

    let whole = OpenSubset::whole(a.space().clone());
    let same = a.restrict_to_open(&whole).unwrap();
    assert!(g_regular_locus(&same)
        .unwrap()
        .open
        .complement_ideal()
        .same_as(&g_regular_locus(&a).unwrap().open.complement_ideal())
        .unwrap());

    let empty = OpenSubset::principal(a.space().clone(), Polynomial::zero(2));
    assert!(matches!(empty.and_then(|e| a.restrict_to_open(&e)), Err(Error::EmptyOpen)));
}
