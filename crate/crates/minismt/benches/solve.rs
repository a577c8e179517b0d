//! Compares the sequential and the rayon-parallel search sweeps on the same
//! grounded problems.

use criterion::{criterion_group, criterion_main, Criterion};
use minismt::ground::{check, Mode, Problem, Verdict};
use minismt::sexp::Reader;
use minismt::theory::{Decls, FuncSig, SortDef, SortRef, TermCtx};

/// Build a problem from script text containing declare-* and assert forms.
fn problem(script: &str) -> Problem {
    let mut decls = Decls::default();
    let mut asserts = Vec::new();
    let mut reader = Reader::new();
    reader.feed(script);
    while let Some(form) = reader.next_form().unwrap() {
        let items = form.list().unwrap();
        match items[0].atom().unwrap() {
            "declare-sort" => {
                decls.add_sort(items[1].atom().unwrap(), SortDef::Free).unwrap();
            }
            "declare-const" => {
                let ret = SortRef::Named(items[2].atom().unwrap().to_string());
                decls
                    .add_func(items[1].atom().unwrap(), FuncSig { args: vec![], ret, ctor: false })
                    .unwrap();
            }
            "declare-fun" => {
                let args = items[2]
                    .list()
                    .unwrap()
                    .iter()
                    .map(|s| match s.atom().unwrap() {
                        "Bool" => SortRef::Bool,
                        n => SortRef::Named(n.to_string()),
                    })
                    .collect();
                let ret = match items[3].atom().unwrap() {
                    "Bool" => SortRef::Bool,
                    n => SortRef::Named(n.to_string()),
                };
                decls
                    .add_func(items[1].atom().unwrap(), FuncSig { args, ret, ctor: false })
                    .unwrap();
            }
            "assert" => {
                asserts.push(TermCtx::new(&decls).expr(&items[1]).unwrap());
            }
            other => panic!("unexpected {}", other),
        }
    }
    Problem { decls, asserts }
}

/// An unsat instance: n+1 pairwise distinct constants under a covering axiom
/// naming only n elements, with a function constraint on top. The sweep has
/// to refute every size vector, which is the parallel path's best case.
fn crowded(n: usize) -> Problem {
    let mut s = String::from("(declare-sort S 0)(declare-fun f (S) S)");
    for i in 0..=n {
        s.push_str(&format!("(declare-const c{} S)", i));
    }
    let cover: Vec<String> = (0..n).map(|i| format!("(= x c{})", i)).collect();
    s.push_str(&format!("(assert (forall ((x S)) (or {})))", cover.join(" ")));
    let pairs: Vec<String> = (0..=n)
        .flat_map(|a| ((a + 1)..=n).map(move |b| format!("(distinct c{} c{})", a, b)))
        .collect();
    s.push_str(&format!("(assert (and {}))", pairs.join(" ")));
    s.push_str("(assert (forall ((x S)) (not (= (f x) x))))");
    problem(&s)
}

/// A sat instance with a moderately constrained function.
fn functional(n: usize) -> Problem {
    let mut s = String::from("(declare-sort S 0)(declare-fun f (S) S)(declare-fun P (S) Bool)");
    for i in 0..n {
        s.push_str(&format!("(declare-const c{} S)", i));
    }
    let cover: Vec<String> = (0..n).map(|i| format!("(= x c{})", i)).collect();
    s.push_str(&format!("(assert (forall ((x S)) (or {})))", cover.join(" ")));
    s.push_str("(assert (forall ((x S)) (not (= (f x) x))))");
    s.push_str("(assert (exists ((x S)) (and (P x) (not (P (f x))))))");
    s.push_str(&format!("(assert (distinct {}))", (0..n).map(|i| format!("c{}", i)).collect::<Vec<_>>().join(" ")));
    problem(&s)
}

fn bench_sweep(c: &mut Criterion) {
    let unsat = crowded(5);
    let sat = functional(5);
    assert_eq!(check(&unsat, None, Mode::Sequential).0, Verdict::Unsat);
    assert_eq!(check(&sat, None, Mode::Sequential).0, Verdict::Sat);

    let mut group = c.benchmark_group("check_sat_unsat_sweep");
    group.bench_function("sequential", |b| {
        b.iter(|| check(&unsat, None, Mode::Sequential))
    });
    group.bench_function("parallel", |b| b.iter(|| check(&unsat, None, Mode::Parallel)));
    group.finish();

    let mut group = c.benchmark_group("check_sat_sat_search");
    group.bench_function("sequential", |b| b.iter(|| check(&sat, None, Mode::Sequential)));
    group.bench_function("parallel", |b| b.iter(|| check(&sat, None, Mode::Parallel)));
    group.finish();
}

criterion_group!(benches, bench_sweep);
criterion_main!(benches);
