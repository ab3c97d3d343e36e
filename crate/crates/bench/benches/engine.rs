use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fieldalg::conformal::fixtures::{free_boson, virasoro};
use fieldalg::envelope::verify_vertex;
use fieldalg::scalar::{int, rat};
use fieldalg::sfc::construct::algebras;
use fieldalg::sfc::trivial_sfc;
use fieldalg::tensor::{verify_tensor_theorems, TensorRanges};
use fieldalg::{
    build_envelope, build_tensor_algebra, check_sfc, classify, zhu_algebra, AxiomKind, AxiomRanges, EnvelopeOptions, Hypothesis,
    TensorBounds, ZhuContext,
};

fn envelopes(c: &mut Criterion) {
    let mut g = c.benchmark_group("envelope");
    g.sample_size(10);
    g.bench_function("build heisenberg W=4", |b| {
        b.iter(|| build_envelope(&free_boson(), EnvelopeOptions::new(black_box(4)).central("K", int(1))).unwrap())
    });
    g.bench_function("build virasoro W=6", |b| {
        b.iter(|| build_envelope(&virasoro(rat(1, 2)), EnvelopeOptions::new(black_box(6)).central("C", rat(1, 2))).unwrap())
    });
    let e = build_envelope(&free_boson(), EnvelopeOptions::new(3).central("K", int(1))).unwrap();
    g.bench_function("verify heisenberg W=3", |b| b.iter(|| verify_vertex(&e, &AxiomRanges::default())));
    g.finish();
}

fn axioms(c: &mut Criterion) {
    let mut g = c.benchmark_group("axioms");
    g.sample_size(10);
    let e = build_envelope(&free_boson(), EnvelopeOptions::new(3).central("K", int(1))).unwrap();
    let r = AxiomRanges::default();
    g.bench_function("borcherds heisenberg W=3", |b| {
        b.iter(|| fieldalg::sfc::axioms::check_field_axiom(&e.sfc, AxiomKind::Borcherds, &r))
    });
    let ut2 = trivial_sfc(&algebras::upper_triangular()).unwrap();
    g.bench_function("classify ut2", |b| b.iter(|| classify(&ut2, &r)));
    g.bench_function("sfc axioms ut2", |b| b.iter(|| check_sfc(&ut2)));
    g.finish();
}

fn tensor(c: &mut Criterion) {
    let mut g = c.benchmark_group("tensor");
    g.sample_size(10);
    let p = virasoro(rat(1, 2));
    let bounds = TensorBounds { degree: 3, tpow: 3, weight: 5 };
    g.bench_function("build T(R) D=M=3 K=5", |b| b.iter(|| build_tensor_algebra(&p, black_box(bounds)).unwrap()));
    let t = build_tensor_algebra(&p, bounds).unwrap();
    let tr = TensorRanges { max_weight: 4, locality_weight: 3, ..TensorRanges::default() };
    g.bench_function("theorems D=M=3 K=5", |b| b.iter(|| verify_tensor_theorems(&t, &tr)));
    g.finish();
}

fn zhu(c: &mut Criterion) {
    let mut g = c.benchmark_group("zhu");
    g.sample_size(10);
    let e = build_envelope(&free_boson(), EnvelopeOptions::new(4).central("K", int(1))).unwrap();
    g.bench_function("quotient heisenberg W=4", |b| {
        b.iter(|| {
            let ctx = ZhuContext::new(&e.sfc, 4).unwrap();
            zhu_algebra(&ctx, Hypothesis::Envelope).unwrap().dim()
        })
    });
    g.finish();
}

criterion_group!(benches, envelopes, axioms, tensor, zhu);
criterion_main!(benches);
