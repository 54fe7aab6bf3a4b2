use bzcrystal_core::crystal_graph::bfs;
use bzcrystal_core::tableaux_psi::{m_component, m_component_naive, psi};
use bzcrystal_core::{AffineBz, Interval, Kind, LusztigDatum, MayaFin};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

// A fixed datum on the interval with m = 6, every entry small and nonzero.
fn datum() -> LusztigDatum {
    let iv = Interval::new(0, 6).unwrap();
    let mut entries = Vec::new();
    for i in 1..=7i64 {
        for j in i + 1..=7 {
            entries.push((i, j, (i * 3 + j * 5) % 3 + 1));
        }
    }
    LusztigDatum::from_entries(iv, &entries).unwrap()
}

fn components(c: &mut Criterion) {
    let a = datum();
    let k = MayaFin::new(a.interval(), &[1, 2, 4, 6]).unwrap();
    c.bench_function("m_component dp", |b| b.iter(|| m_component(black_box(&a), &k).unwrap()));
    c.bench_function("m_component naive", |b| b.iter(|| m_component_naive(black_box(&a), &k).unwrap()));
}

fn finite(c: &mut Criterion) {
    let a = datum();
    c.bench_function("psi m=6", |b| b.iter(|| psi(black_box(&a)).unwrap()));
    let m = psi(&a).unwrap();
    c.bench_function("verify m=6", |b| b.iter(|| black_box(&m).verify()));
}

fn affine(c: &mut Criterion) {
    let word: Vec<(Kind, usize)> = (0..8).map(|t| (if t % 2 == 0 { Kind::FStar } else { Kind::F }, t % 3)).collect();
    let o = AffineBz::o_star(3).unwrap();
    c.bench_function("affine apply word len 8", |b| b.iter(|| o.apply_word(black_box(&word)).unwrap()));
    let mut g = c.benchmark_group("bfs");
    g.sample_size(10);
    g.bench_function("affine l=3 depth 4", |b| b.iter(|| bfs(&o, true, 4, None, true).unwrap()));
    g.finish();
}

criterion_group!(benches, components, finite, affine);
criterion_main!(benches);
