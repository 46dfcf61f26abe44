use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use genericgb::field::seeded_generator;
use genericgb::groebner::ggv_extend;
use genericgb::polynomial::random_generic_form;
use genericgb::{buchberger, build_generic_ideal, build_mi, normal_form, InstanceSpec, PrimeField};

fn extension(c: &mut Criterion) {
    let inst = build_generic_ideal(&InstanceSpec::new(2, &[4, 4]).extra(4).seed(1)).unwrap();
    let ext = inst.extension().unwrap();
    let mut all: Vec<_> = inst.forms.clone();
    all.push(ext.g.clone());
    let mut group = c.benchmark_group("quartics_plus_quartic");
    group.bench_function("buchberger", |b| b.iter(|| buchberger(&inst.field, 3, black_box(&all))));
    group.bench_function("ggv_extend", |b| b.iter(|| ggv_extend(&inst.basis, black_box(&ext.g), ext.cap).unwrap()));
    group.finish();
}

fn reduction(c: &mut Criterion) {
    let inst = build_generic_ideal(&InstanceSpec::new(3, &[3, 3, 4]).with_z().seed(2)).unwrap();
    let field = PrimeField::default();
    let f = random_generic_form(&field, 4, 8, &mut seeded_generator(3));
    c.bench_function("normal_form_degree_8", |b| b.iter(|| normal_form(black_box(&f), &inst.basis)));
}

fn matrices(c: &mut Criterion) {
    let inst = build_generic_ideal(&InstanceSpec::new(3, &[4, 4, 4]).extra(4).seed(4)).unwrap();
    let (table, ext) = (inst.table().unwrap(), inst.extension().unwrap());
    c.bench_function("build_m4_444", |b| b.iter(|| build_mi(&inst.basis, table, black_box(&ext.g), 4).unwrap()));
}

criterion_group!(benches, extension, reduction, matrices);
criterion_main!(benches);
