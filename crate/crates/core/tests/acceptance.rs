//! One line per acceptance criterion. Exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use kgraph::cli::{parse, serialize, GraphDocument};
use kgraph::kp::{
    equivalent, kp_mul, mce, saturation, verify_corner, verify_diagonal, verify_grading,
    verify_kp_family, verify_swap_identity, KpElement, VerifyReport,
};
use kgraph::limar::{is_paired, SplitResult};
use kgraph::skeleton::{validate, Color, KGraph, Path, VertexId};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn passed(report: &VerifyReport, what: &str) -> Result<usize, String> {
    ensure(report.passed(), || format!("{what}:\n{report}"))?;
    Ok(report.sections.iter().map(|s| s.checked).sum())
}

fn golden_split(input: &str, golden: &str) -> Result<SplitResult, String> {
    let r = example_split(input);
    let want = parse(&read(golden)).map_err(|e| e.to_string())?;
    let got = GraphDocument::from_graph(r.gamma());
    ensure(got.skeleton == want.skeleton, || format!("{golden}: vertices or edges differ"))?;
    ensure(got.squares == want.squares, || format!("{golden}: squares differ"))?;
    ensure(serialize(&got) == read(golden), || format!("{golden}: text differs"))?;
    Ok(r)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = load("lambda1.kg");
    let (ls, lam_squares) = (g.skeleton(), g.squares().len());
    ensure((ls.vertex_count(), ls.edge_count(), lam_squares) == (4, 12, 8), || {
        format!("Λ₁ has {} vertices, {} edges, {lam_squares} squares", ls.vertex_count(), ls.edge_count())
    })?;
    let r = golden_split("lambda1.kg", "gamma1.kg")?;
    within(start.elapsed(), Duration::from_secs(1))?;
    let gs = r.gamma().skeleton();
    let names: Vec<&str> = gs.vertex_ids().map(|v| gs.vertex_name(v)).collect();
    ensure(names == ["v.1", "v.2", "v.3", "x.1", "x.2", "y.1", "z.1"], || format!("{names:?}"))?;
    ensure(gs.edge_count() == 18 && r.gamma().squares().len() == 11, || "counts".into())?;
    Ok(format!("7 vertices, 18 edges, 11 squares match the golden Γ₁ in {:?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let r = golden_split("lambda2.kg", "gamma2.kg")?;
    let gs = r.gamma().skeleton();
    let source = |e: &str| gs.vertex_name(gs.source(gs.edge(e).unwrap())).to_string();
    ensure(source("b.1") == "v.2" && source("b.2") == "v.3", || {
        format!("s(b.1) = {}, s(b.2) = {}", source("b.1"), source("b.2"))
    })?;
    let shown: BTreeSet<String> = r.gamma().squares().iter().map(|s| s.display(gs)).collect();
    for sq in ["f.1 h.2 = n.1 c.1", "m.1 i.1 = l.1 b.2"] {
        ensure(shown.contains(sq), || format!("missing square {sq}"))?;
    }
    Ok("golden Γ₂ matches, s(b.1) = v.2, s(b.2) = v.3".into())
}

fn criterion_3() -> Outcome {
    let l1 = is_paired(&load("lambda1.kg"), BLUE).map_err(|e| e.to_string())?;
    ensure(l1.paired, || "Λ₁ reported unpaired".into())?;
    let g2 = load("lambda2.kg");
    let l2 = is_paired(&g2, BLUE).map_err(|e| e.to_string())?;
    let sk = g2.skeleton();
    let witness = l2.witness.map(|(e, w)| {
        let names: Vec<&str> = w.iter().map(|x| sk.edge_name(*x)).collect();
        format!("{} : {{{}}}", sk.edge_name(e), names.join(", "))
    });
    ensure(!l2.paired && witness.as_deref() == Some("b : {h, i}"), || format!("Λ₂ witness {witness:?}"))?;
    Ok("Λ₁ paired in blue; Λ₂ unpaired with witness b : {h, i}".into())
}

fn criterion_4() -> Outcome {
    for name in ["lambda1.kg", "lambda2.kg", "gamma1.kg", "gamma2.kg"] {
        let doc = parse(&read(name)).map_err(|e| e.to_string())?;
        let report = validate(&doc.skeleton, &doc.squares);
        ensure(report.is_valid(), || format!("{name}:\n{report}"))?;
        let g = doc.build().map_err(|e| e.to_string())?;
        ensure(g.is_source_free().is_source_free(), || format!("{name} has sources"))?;
    }
    let g = load("lambda1.kg");
    let sk = g.skeleton();
    for (i, sq) in g.squares().iter().enumerate() {
        let report = validate(sk, &g.squares().without(i));
        let orphans: BTreeSet<_> = report
            .kg2
            .iter()
            .filter(|v| v.partners.is_empty())
            .map(|v| v.path)
            .collect();
        ensure(orphans == BTreeSet::from([sq.left, sq.right]), || {
            format!("deleting {} reported:\n{report}", sq.display(sk))
        })?;
    }
    Ok("four graphs valid and source-free; each of 8 deletions names its two orphaned paths".into())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let r = example_split("lambda1.kg");
    let report = verify_swap_identity(&r).map_err(|e| e.to_string())?;
    let n = passed(&report, "swap identity")?;
    within(start.elapsed(), Duration::from_secs(10))?;
    let ls = r.lambda().skeleton();
    let expected: usize = ls.edge_ids().map(|x| r.n(ls.range(x))).sum();
    ensure(n == 2 * expected, || format!("checked {n}, expected {}", 2 * expected))?;
    Ok(format!("{n} instances (forward and ghost) in {:?}", start.elapsed()))
}

fn criterion_6() -> Outcome {
    let r = example_split("lambda1.kg");
    let report = verify_kp_family(&r, 3).map_err(|e| e.to_string())?;
    let n = passed(&report, "KP family")?;
    Ok(format!("KP1-KP4 hold, {n} instances"))
}

fn criterion_7() -> Outcome {
    let r = example_split("lambda1.kg");
    let report = verify_diagonal(&r, 3).map_err(|e| e.to_string())?;
    let n = passed(&report, "diagonal")?;
    Ok(format!("{n} instances for |λ| ≤ 3"))
}

fn criterion_8() -> Outcome {
    let r = example_split("lambda1.kg");
    let corner = verify_corner(&r, 2).map_err(|e| e.to_string())?;
    let a = passed(&corner, "corner")?;
    let grading = verify_grading(&r, 3).map_err(|e| e.to_string())?;
    let b = passed(&grading, "grading")?;
    Ok(format!("corner {a} instances, grading {b} instances"))
}

fn saturates(r: &SplitResult) -> bool {
    let firsts: BTreeSet<VertexId> = r
        .lambda()
        .skeleton()
        .vertex_ids()
        .map(|v| r.vertex_copy(v, 1).unwrap())
        .collect();
    let all: BTreeSet<VertexId> = r.gamma().skeleton().vertex_ids().collect();
    saturation(r.gamma(), &firsts).map(|s| s == all).unwrap_or(false)
}

fn criterion_9() -> Outcome {
    for name in ["lambda1.kg", "lambda2.kg"] {
        ensure(saturates(&example_split(name)), || format!("split of {name}"))?;
    }
    for seed in 0..100u64 {
        let mut r = rng(9_000 + seed);
        let g = twisted_pullback(&mut r, 2);
        ensure(saturates(&random_split(&mut r, &g)), || format!("random split, seed {seed}"))?;
    }
    Ok("both golden splits and 100 random paired splits".into())
}

fn split_ok(g: &KGraph, split: &SplitResult, paired: bool) -> Result<(), String> {
    let (ls, gs) = (g.skeleton(), split.gamma().skeleton());
    let report = validate(gs, split.gamma().squares());
    ensure(report.is_valid(), || format!("split invalid:\n{report}"))?;
    for v in gs.vertex_ids() {
        let (p, _) = split.vertex_parent(v);
        for c in (0..ls.k()).map(Color) {
            ensure(gs.incoming(v, c).len() == ls.incoming(p, c).len(), || {
                format!("fan-in differs at {}", gs.vertex_name(v))
            })?;
        }
    }
    for e in ls.edge_ids() {
        let copies: Vec<_> = (1..=split.n(ls.range(e))).map(|i| split.edge_copy(e, i).unwrap()).collect();
        let ranges: BTreeSet<_> = copies.iter().map(|x| gs.range(*x)).collect();
        ensure(ranges.len() == copies.len(), || format!("copies of {} share a range", ls.edge_name(e)))?;
        let sources: BTreeSet<_> = copies.iter().map(|x| gs.source(*x)).collect();
        ensure(!paired || sources.len() == 1, || format!("copies of {} differ in source", ls.edge_name(e)))?;
    }
    Ok(())
}

fn random_term(r: &mut rand::rngs::StdRng, g: &KGraph) -> KpElement {
    loop {
        let a = random_path(r, g, 2);
        let b = random_path(r, g, 2);
        if let Ok(x) = KpElement::basis(g, &a, &b) {
            return x;
        }
    }
}

fn criterion_10() -> Outcome {
    let limit = Duration::from_secs(60);

    let start = Instant::now();
    for seed in 0..100u64 {
        let k = 2 + (seed % 2) as usize;
        let g = random_product(&mut rng(10_000 + seed), k, 6);
        let report = validate(g.skeleton(), g.squares());
        ensure(report.is_valid(), || format!("product seed {seed}:\n{report}"))?;
    }
    let a = start.elapsed();
    within(a, limit)?;

    let start = Instant::now();
    for seed in 0..100u64 {
        let mut r = rng(11_000 + seed);
        let g = twisted_pullback(&mut r, 2);
        let paired = is_paired(&g, BLUE).map_err(|e| e.to_string())?.paired;
        ensure(paired, || format!("generator seed {seed} not paired"))?;
        split_ok(&g, &random_split(&mut r, &g), true).map_err(|e| format!("2-graph seed {seed}: {e}"))?;
    }
    for seed in 0..100u64 {
        let mut r = rng(12_000 + seed);
        let g = twisted_pullback(&mut r, 3);
        split_ok(&g, &random_split(&mut r, &g), true).map_err(|e| format!("3-graph seed {seed}: {e}"))?;
    }
    let b = start.elapsed();
    within(b, limit)?;

    let start = Instant::now();
    let lambda1 = load("lambda1.kg");
    let graphs: Vec<KGraph> = std::iter::once(lambda1)
        .chain((0..9u64).map(|s| twisted_pullback(&mut rng(13_000 + s), 2)))
        .collect();
    let mut r = rng(14_000);
    for i in 0..1000 {
        let g = &graphs[i % graphs.len()];
        let (x, y, z) = (random_term(&mut r, g), random_term(&mut r, g), random_term(&mut r, g));
        let left = kp_mul(g, &kp_mul(g, &x, &y).map_err(|e| e.to_string())?, &z).map_err(|e| e.to_string())?;
        let right = kp_mul(g, &x, &kp_mul(g, &y, &z).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let same = equivalent(g, &left, &right).map_err(|e| e.to_string())?;
        ensure(same, || format!("associativity fails for triple {i}"))?;
    }
    for i in 0..200 {
        let g = &graphs[i % graphs.len()];
        let mu: Path = random_path(&mut r, g, 2);
        let nu = if i % 2 == 0 {
            random_path(&mut r, g, 2)
        } else {
            // same range, so the pair is not trivially empty
            let mut nu = random_path(&mut r, g, 2);
            while nu.range() != mu.range() {
                nu = random_path(&mut r, g, 2);
            }
            nu
        };
        let got: BTreeSet<_> = mce(g, &mu, &nu).into_iter().collect();
        ensure(got == mce_oracle(g, &mu, &nu), || format!("MCE disagrees on pair {i}"))?;
    }
    let c = start.elapsed();
    within(c, limit)?;
    Ok(format!("products {a:?}, splits {b:?}, algebra {c:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "golden split of the first example", criterion_1),
        (2, "golden split of the second example", criterion_2),
        (3, "pairing", criterion_3),
        (4, "axioms and square deletion", criterion_4),
        (5, "swap identities", criterion_5),
        (6, "Kumjian-Pask family", criterion_6),
        (7, "diagonal images", criterion_7),
        (8, "corner and grading", criterion_8),
        (9, "saturation", criterion_9),
        (10, "property suite", criterion_10),
    ];
    let mut failed = 0;
    for (n, title, check) in criteria {
        match check() {
            Ok(detail) => println!("criterion {n:>2} PASS  {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {title}: {why}");
            }
        }
    }
    println!("acceptance: {} of 10 criteria pass", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
