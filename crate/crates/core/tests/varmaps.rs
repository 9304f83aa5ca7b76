use std::sync::Arc;

use weilreg::exactalg::{int, read_polynomial, Ideal, Scalar};
use weilreg::fixtures::{blowup_shift, cremona, map_between, plane, self_map};
use weilreg::varmaps::*;
use weilreg::Error;

fn ideal(names: &[String], gens: &[&str]) -> Ideal {
    Ideal::new(names.len(), gens.iter().map(|g| read_polynomial(g, names).unwrap()).collect())
}

fn pt(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&k| int(k)).collect()
}

#[test]
fn make_rational_map_examples() {
    let s = cremona();
    assert_eq!(s.format(), vec![vec!["1/x".to_string(), "1/y".to_string()]]);
    let x = plane("x", "y");
    let id = self_map(&x, &["x", "y"]).unwrap();
    assert!(maps_equal(&id, &RationalMap::identity(x.clone())).unwrap());
    let r1 = blowup_shift(1);
    assert_eq!(r1.format()[0], vec!["u+1", "u*t/(u+1)"]);
}

#[test]
fn make_rational_map_errors() {
    let x = plane("x", "y");
    let circle = Arc::new(
        AffineVariety::new(
            vec!["a".into(), "b".into()],
            vec![read_polynomial("a^2+b^2-1", &["a", "b"]).unwrap()],
            true,
        )
        .unwrap(),
    );
    assert!(matches!(map_between(&x, &circle, &["x", "y"]), Err(Error::NotIntoTarget { .. })));
    // (1-t^2)/(1+t^2), 2t/(1+t^2) does land on the circle
    let line = Arc::new(AffineVariety::affine_space(&["t"]));
    assert!(map_between(&line, &circle, &["(1-t^2)/(1+t^2)", "2*t/(1+t^2)"]).is_ok());
    assert!(matches!(self_map(&x, &["1/(x-x)", "y"]), Err(Error::ZeroDenominator(_)) | Err(Error::Invalid(_))));
    let s = cremona();
    let bad = vec![
        weilreg::exactalg::read_fraction("x", &["x", "y"]).unwrap(),
        weilreg::exactalg::read_fraction("1/y", &["x", "y"]).unwrap(),
    ];
    assert!(matches!(s.with_representative(bad), Err(Error::RepresentativeMismatch { .. })));
    // x*y/(x^2*y) is the same first coordinate as 1/x
    let good = vec![
        weilreg::exactalg::read_fraction("y/(x*y)", &["x", "y"]).unwrap(),
        weilreg::exactalg::read_fraction("1/y", &["x", "y"]).unwrap(),
    ];
    assert!(s.with_representative(good).is_ok());
}

#[test]
fn graph_closure_examples() {
    let s = cremona();
    let g = graph_closure(&s).unwrap();
    let expected = ideal(g.names(), &["x*x'-1", "y*y'-1"]);
    assert!(g.ideal().same_as(&expected).unwrap());

    let line = Arc::new(AffineVariety::affine_space(&["x"]));
    let id = RationalMap::identity(line);
    let g = graph_closure(&id).unwrap();
    assert!(g.ideal().same_as(&ideal(g.names(), &["x'-x"])).unwrap());

    let r1 = blowup_shift(1);
    let g = graph_closure(&r1).unwrap();
    // names u, t, u', t' ; the limit line over u = -1
    for y2 in [-3, 0, 5] {
        let p = pt(&[-1, 0, 0, y2]);
        assert!(g.ideal().generators().iter().all(|f| f.eval(&p) == int(0)));
    }
    let sat =
        ideal(g.names(), &["u'-u-1", "t'*(u+1)-u*t"]).saturate(&read_polynomial("u+1", g.names()).unwrap()).unwrap();
    assert!(g.ideal().same_as(&sat).unwrap());
}

#[test]
fn closed_image_and_dominance() {
    let s = cremona();
    let img = closed_image(&s).unwrap();
    assert!(img.ideal().basis().unwrap().is_empty());
    assert!(is_dominant(&s).unwrap());

    let line = Arc::new(AffineVariety::affine_space(&["x"]));
    let c = map_between(&line, &line, &["0"]).unwrap();
    let img = closed_image(&c).unwrap();
    assert!(img.ideal().same_as(&ideal(img.names(), &["x"])).unwrap());
    assert!(!is_dominant(&c).unwrap());
    assert!(matches!(compose(&c, &c), Err(Error::NotDominant)));

    assert!(is_dominant(&blowup_shift(1)).unwrap());
}

#[test]
fn composition_examples() {
    let s = cremona();
    let ss = compose(&s, &s).unwrap();
    assert_eq!(ss.format()[0], vec!["x", "y"]);
    assert!(maps_equal(&ss, &RationalMap::identity(s.source().clone())).unwrap());
    assert!(!maps_equal(&s, &RationalMap::identity(s.source().clone())).unwrap());

    let r1 = blowup_shift(1);
    let id = RationalMap::identity(r1.source().clone());
    assert!(maps_equal(&compose(&id, &r1).unwrap(), &r1).unwrap());
    let r11 = compose(&r1, &r1).unwrap();
    assert_eq!(r11.format()[0], vec!["u+2", "u*t/(u+2)"]);
    assert!(maps_equal(&r11, &blowup_shift(2)).unwrap());
}

#[test]
fn composition_is_associative_on_fixtures() {
    let r1 = blowup_shift(1);
    let r2 = blowup_shift(-3);
    let r3 = blowup_shift(5);
    let left = compose(&compose(&r1, &r2).unwrap(), &r3).unwrap();
    let right = compose(&r1, &compose(&r2, &r3).unwrap()).unwrap();
    assert!(maps_equal(&left, &right).unwrap());
    assert!(maps_equal(&left, &blowup_shift(3)).unwrap());
}

#[test]
fn inverse_examples() {
    let s = cremona();
    let si = inverse(&s).unwrap();
    assert!(maps_equal(&si, &s).unwrap());
    let x = plane("x", "y");
    let id = RationalMap::identity(x);
    assert!(maps_equal(&inverse(&id).unwrap(), &id).unwrap());
    let r1 = blowup_shift(1);
    let ri = inverse(&r1).unwrap();
    assert_eq!(ri.format()[0], vec!["u-1", "u*t/(u-1)"]);
    // not birational: a projection onto a line
    let line = Arc::new(AffineVariety::affine_space(&["x"]));
    let proj = map_between(&plane("x", "y"), &line, &["x"]).unwrap();
    assert!(matches!(inverse(&proj), Err(Error::NotBirational(_))));
}

#[test]
fn definable_and_biregular_loci() {
    let s = cremona();
    let d = definable_locus(&s).unwrap();
    assert!(d.complement_ideal().same_as(&ideal(s.source().names(), &["x*y"])).unwrap());
    let b = biregular_locus(&s).unwrap();
    assert!(b.complement_ideal().same_as(&ideal(s.source().names(), &["x*y"])).unwrap());
    assert!(b.is_dense().unwrap());

    let id = RationalMap::identity(plane("x", "y"));
    assert!(definable_locus(&id).unwrap().complement_ideal().is_unit().unwrap());
    assert!(biregular_locus(&id).unwrap().complement_ideal().is_unit().unwrap());

    let r1 = blowup_shift(1);
    let names = r1.source().names().to_vec();
    assert!(definable_locus(&r1).unwrap().complement_ideal().same_as(&ideal(&names, &["u+1"])).unwrap());
    let b = biregular_locus(&r1).unwrap();
    assert!(b.complement_ideal().same_as(&ideal(&names, &["u*(u+1)"])).unwrap());
}

#[test]
fn cremona_on_torus_is_biregular_everywhere() {
    let torus = Arc::new(
        AffineVariety::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![read_polynomial("x*y*z-1", &["x", "y", "z"]).unwrap()],
            true,
        )
        .unwrap(),
    );
    let s = self_map(&torus, &["1/x", "1/y", "x^2*y^2*z"]).unwrap();
    let b = biregular_locus(&s).unwrap();
    assert!(b.complement_ideal().is_unit().unwrap());
}

#[test]
fn closed_graph_examples() {
    let s = cremona();
    let whole = OpenSubset::whole(s.source().clone());
    assert!(is_graph_closed(&s, &whole).unwrap().closed);

    let r1 = blowup_shift(1);
    let whole = OpenSubset::whole(r1.source().clone());
    let check = is_graph_closed(&r1, &whole).unwrap();
    assert!(!check.closed);
    let w = &check.witnesses[0];
    for g in ["u+1", "t", "u'"] {
        assert!(w.contains(&read_polynomial(g, &check.names).unwrap()).unwrap(), "{g}");
    }
    let host = OpenSubset::principal(r1.source().clone(), read_polynomial("u", r1.source().names()).unwrap()).unwrap();
    assert!(is_graph_closed(&r1, &host).unwrap().closed);
}

#[test]
fn point_status_examples() {
    let s = cremona();
    assert_eq!(point_status(&s, &pt(&[1, 1])).unwrap(), PointStatus::Defined(pt(&[1, 1])));
    assert_eq!(point_status(&s, &pt(&[0, 1])).unwrap(), PointStatus::Undefined);
    let r1 = blowup_shift(1);
    assert_eq!(point_status(&r1, &pt(&[-1, 0])).unwrap(), PointStatus::Undefined);
    // the cusp parametrization t -> (t^2, t^3) inverted: t = y/x is
    // undefined at the cusp but the graph fiber is the single point t = 0
    let cusp = Arc::new(
        AffineVariety::new(vec!["x".into(), "y".into()], vec![read_polynomial("y^2-x^3", &["x", "y"]).unwrap()], true)
            .unwrap(),
    );
    let line = Arc::new(AffineVariety::affine_space(&["t"]));
    let t = map_between(&cusp, &line, &["y/x"]).unwrap();
    assert_eq!(point_status(&t, &pt(&[0, 0])).unwrap(), PointStatus::Unknown);
    assert!(matches!(point_status(&t, &pt(&[1, 2])), Err(Error::PointNotOnVariety(_))));
}

/// Brute-force oracle: outside the definable locus, the graph-closure
/// fiber over a sampled point is nonempty exactly when the closed-graph
/// test failed.
#[test]
fn closed_graph_agrees_with_fiber_oracle() {
    for (phi, host_w) in [(blowup_shift(1), None), (blowup_shift(1), Some("u")), (cremona(), None)] {
        let host = match host_w {
            None => OpenSubset::whole(phi.source().clone()),
            Some(w) => {
                OpenSubset::principal(phi.source().clone(), read_polynomial(w, phi.source().names()).unwrap()).unwrap()
            }
        };
        let check = is_graph_closed(&phi, &host).unwrap();
        let dom = definable_locus(&phi).unwrap();
        let mut any_hit = false;
        for a in -3..=3 {
            for b in -3..=3 {
                let p = pt(&[a, b]);
                if dom.contains(&p) || !host.contains(&p) {
                    continue;
                }
                let status = point_status(&phi, &p).unwrap();
                // fiber nonempty within the host on the target factor
                let g = graph_closure(&phi).unwrap();
                let n = phi.source().arity();
                let assign: Vec<Option<Scalar>> =
                    (0..2 * n).map(|i| if i < n { Some(p[i].clone()) } else { None }).collect();
                let fiber = Ideal::new(2 * n, g.ideal().generators().iter().map(|f| f.eval_partial(&assign)).collect());
                let mut nonempty = false;
                for w in host.witnesses() {
                    if !fiber.is_empty_on(&w.shift(n, 2 * n)).unwrap() {
                        nonempty = true;
                    }
                }
                any_hit |= nonempty;
                assert_ne!(status, PointStatus::Unknown);
                if nonempty {
                    assert!(!check.closed);
                }
            }
        }
        assert_eq!(any_hit, !check.closed);
    }
}

#[test]
fn sampled_points_satisfy_invariants() {
    for phi in [cremona(), blowup_shift(1), blowup_shift(-2)] {
        let dom = definable_locus(&phi).unwrap();
        let breg = biregular_locus(&phi).unwrap();
        let inv = inverse(&phi).unwrap();
        let g = graph_closure(&phi).unwrap();
        for a in -4..=4 {
            for b in -4..=4 {
                let p = pt(&[a, b]);
                if !dom.contains(&p) {
                    continue;
                }
                let img = phi.eval(&p).unwrap();
                let mut both = p.clone();
                both.extend(img.iter().cloned());
                assert!(g.ideal().generators().iter().all(|f| f.eval(&both) == int(0)));
                if breg.contains(&p) {
                    assert_eq!(point_status(&phi, &p).unwrap(), PointStatus::Defined(img.clone()));
                    assert_eq!(point_status(&inv, &img).unwrap(), PointStatus::Defined(p.clone()));
                }
            }
        }
    }
}
