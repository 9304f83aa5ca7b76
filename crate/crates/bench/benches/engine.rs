use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use weilreg::exactalg::{read_polynomial, MonomialOrder};
use weilreg::fixtures::{blowup_action, cremona, cremona_action};
use weilreg::groups::g_regular_locus;
use weilreg::regularize::regularize_finite;
use weilreg::varmaps::biregular_locus;
use weilreg::Ideal;

// The basis cache lives on the ideal, so every iteration builds a fresh one.
fn groebner(c: &mut Criterion) {
    let names = ["x", "y", "z"];
    let gens = ["x^2+y*z-2", "y^2+x*z-3", "x*y*z-1"];
    let polys: Vec<_> = gens.iter().map(|g| read_polynomial(g, &names).unwrap()).collect();
    let mut g = c.benchmark_group("groebner");
    for (label, order) in [("grevlex", MonomialOrder::GrevLex), ("lex", MonomialOrder::Lex)] {
        g.bench_function(label, |b| b.iter(|| Ideal::new(3, black_box(polys.clone())).groebner(&order).unwrap().len()));
    }
    g.finish();
}

fn loci(c: &mut Criterion) {
    c.bench_function("breg_cremona", |b| b.iter(|| biregular_locus(black_box(&cremona())).unwrap()));
    c.bench_function("xreg_blowup", |b| {
        b.iter(|| g_regular_locus(&blowup_action()).unwrap().complement.generators().len())
    });
}

fn regularize(c: &mut Criterion) {
    c.bench_function("regularize_cremona", |b| b.iter(|| regularize_finite(&cremona_action()).unwrap().elements.len()));
}

criterion_group!(benches, groebner, loci, regularize);
criterion_main!(benches);
