use ackit::{find_conjugator, free_reduce, parse_word, shehper_p, KeyMode, MoveFamily};
use ackit_bench::s2;
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn words(c: &mut Criterion) {
    let u = parse_word("AbbABAbaBBabABaaB", 2).unwrap();
    let v = parse_word("BAbbABabaBBabAAba", 2).unwrap();
    let raw: Vec<_> = u.letters().iter().chain(u.inverse().letters()).chain(v.letters()).copied().collect();
    c.bench_function("free_reduce/51", |b| b.iter(|| free_reduce(black_box(raw.iter().copied()))));
    c.bench_function("concat/17x17", |b| b.iter(|| black_box(&u).concat(black_box(&v))));
    let p = parse_word("aBabAAbbbAA", 2).unwrap();
    let q = parse_word("AbbbABabA", 2).unwrap();
    c.bench_function("find_conjugator/11", |b| b.iter(|| find_conjugator(black_box(&p), black_box(&q))));
}

fn presentations(c: &mut Criterion) {
    let p = shehper_p();
    c.bench_function("canonical_key/P", |b| b.iter(|| black_box(&p).canonical_key(KeyMode::Exact)));
    c.bench_function("neighbors/MODIFIED12/P", |b| {
        b.iter(|| ackit::neighbors(black_box(&p), MoveFamily::Modified12, 32))
    });
    let cert = s2();
    c.bench_function("replay/S2", |b| b.iter(|| black_box(&cert).replay().unwrap()));
}

criterion_group!(benches, words, presentations);
criterion_main!(benches);
