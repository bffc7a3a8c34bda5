use ackit::search::{scramble, search, SearchLimits, Strategy};
use ackit::{ak, trivial, MoveFamily};
use criterion::{criterion_group, criterion_main, Criterion};

fn scrambles(c: &mut Criterion) {
    let t = trivial(2).unwrap();
    let (p, _) = scramble(&t, MoveFamily::Modified12, 8, 3);
    let limits = SearchLimits { max_relator_len: 12, max_states: 100_000, ..SearchLimits::default() };
    let mut group = c.benchmark_group("search");
    group.sample_size(20);
    for strategy in [Strategy::Greedy, Strategy::Bfs] {
        group.bench_function(format!("scramble8/{strategy}"), |b| {
            b.iter(|| search(&p, &t, MoveFamily::Modified12, strategy, &limits).unwrap())
        });
    }
    let ak2 = ak(2).unwrap();
    let limits = SearchLimits { max_relator_len: 14, max_states: 1_000_000, ..SearchLimits::default() };
    group.bench_function("ak2/greedy", |b| {
        b.iter(|| search(&ak2, &t, MoveFamily::Modified12, Strategy::Greedy, &limits).unwrap())
    });
    group.finish();
}

criterion_group!(benches, scrambles);
criterion_main!(benches);
