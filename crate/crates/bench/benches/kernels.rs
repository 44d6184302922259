use criterion::{black_box, criterion_group, criterion_main, Criterion};

use sectorfact_core::campaign::homotopy_campaign;
use sectorfact_core::configspace::{certify_homotopy, sample_causal_config};
use sectorfact_core::minkowski::{build_witness, DoubleCone, MPoint, WitnessOptions};
use sectorfact_core::operad::validate_operad;
use sectorfact_core::orthogonal::fixtures::interval_category;
use sectorfact_core::sectors::algebra::commutant;
use sectorfact_core::sectors::pfa::check_monoidality;
use sectorfact_core::sectors::{check_haag_duality, qubit_family, MatrixNet, SectorAlgebra};

fn cone(t0: i64, x0: &[i64], t1: i64, x1: &[i64]) -> DoubleCone {
    DoubleCone::new(MPoint::ints(t0, x0), MPoint::ints(t1, x1)).unwrap()
}

fn geometry(c: &mut Criterion) {
    let (u1, u2, ut) = (cone(-1, &[0], 1, &[0]), cone(-1, &[4], 1, &[4]), cone(-4, &[2], 4, &[2]));
    let opts = WitnessOptions::default();
    c.bench_function("witness_1d", |b| b.iter(|| build_witness(black_box(&u1), &u2, &ut, &opts).unwrap()));
    let (v1, v2, vt) = (cone(-1, &[0, 0], 1, &[0, 0]), cone(-1, &[4, 1], 1, &[4, 1]), cone(-6, &[2, 0], 6, &[2, 0]));
    c.bench_function("witness_2d", |b| b.iter(|| build_witness(black_box(&v1), &v2, &vt, &opts).unwrap()));
    let unit = cone(-1, &[0, 0, 0], 1, &[0, 0, 0]);
    let cfg = sample_causal_config(&unit, 5, 7).unwrap();
    c.bench_function("certify_homotopy_m5_4d", |b| b.iter(|| certify_homotopy(black_box(&cfg))));
    c.bench_function("homotopy_campaign_50", |b| b.iter(|| homotopy_campaign(50, black_box(3), false)));
}

fn operad(c: &mut Criterion) {
    let cat = interval_category(5, 5);
    c.bench_function("validate_operad_intcat5_arity3", |b| b.iter(|| validate_operad(black_box(&cat), 3)));
}

fn sectors(c: &mut Criterion) {
    let net = MatrixNet::qubit_chain(4);
    let o = net.region("[2,3]").unwrap();
    c.bench_function("commutant_qubit4_23", |b| b.iter(|| commutant(black_box(net.algebra(o)))));
    c.bench_function("haag_qubit4_23_cold", |b| {
        b.iter(|| {
            let fresh = MatrixNet::qubit_chain(4);
            check_haag_duality(&fresh, o)
        })
    });
    let fam = qubit_family(&net);
    let alg = SectorAlgebra::new(&net, &fam);
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("monoidality_qubit4_arity2", |b| b.iter(|| check_monoidality(black_box(&alg), 2)));
    g.finish();
}

criterion_group!(benches, geometry, operad, sectors);
criterion_main!(benches);
