//! Acceptance criteria 1-9, one line each. Runs without the libtest harness
//! so the lines are always printed.

use std::process::Command;
use std::time::{Duration, Instant};

use steinberg_core::groups::relations::{verify_a2_relations, verify_c3_commutators, C3Relation};
use steinberg_core::groups::{automorphism_check, grading_check_group, no_collapsing_check};
use steinberg_core::jordan::checks;
use steinberg_core::spectral::{family_generators, spectral_gap, FiniteGroupTable, GeneratorSet, GroupFamily, ORACLE_TOL};
use steinberg_core::{
    builtin, left_mult_ring_span, A2Group, AlgebraElement, C3Group, CheckRecord, HermSpace, Pe3, RootGroup, ScalarMode, Status, Tkk,
    TrialRng, Weight,
};

const Q: ScalarMode = ScalarMode::Rational;
const JP_LIMIT: Duration = Duration::from_secs(60);
const SPECTRAL_LIMIT: Duration = Duration::from_secs(30);

/// Outcome of one criterion.
struct Outcome {
    pass: bool,
    detail: String,
    /// A failure that is a finding about the printed statement and is
    /// analysed in the documentation, as opposed to a regression.
    known: bool,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, detail: detail.into(), known: false }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, detail: detail.into(), known: false }
}

fn from_records(recs: &[CheckRecord], detail: impl Into<String>) -> Outcome {
    match recs.iter().find(|r| r.status != Status::Pass) {
        None => pass(detail),
        Some(r) => fail(format!("{} is {:?}: {}", r.id, r.status, r.witness.as_ref().map_or(String::new(), |w| w.to_string()))),
    }
}

fn octonions(mode: ScalarMode) -> steinberg_core::Herm {
    HermSpace::new(&builtin("octonions", mode).unwrap()).unwrap()
}

fn c3(name: &str, mode: ScalarMode) -> C3Group {
    C3Group::new(&Tkk::new(&HermSpace::new(&builtin(name, mode).unwrap()).unwrap()).unwrap())
}

fn criterion_1() -> Outcome {
    let t0 = Instant::now();
    let mut rng = TrialRng::new(1);
    let mut recs = checks::check_jp_axioms(&octonions(Q), 200, &mut rng, false).unwrap();
    // 200 draws on each side.
    assert_eq!(recs[0].trials, 400);
    let mut pairs = Vec::new();
    for p in [2, 3, 5, 7] {
        let h = octonions(ScalarMode::Modular(p));
        let r = checks::check_jp_axioms(&h, 0, &mut rng, true).unwrap();
        if r.iter().any(|x| x.passed() && x.trials != h.dim() * h.dim()) {
            return fail(format!("basis pairs mod {p} not exhausted"));
        }
        pairs.push(format!("{} mod {p}", h.dim() * h.dim()));
        recs.extend(r);
    }
    let elapsed = t0.elapsed();
    if elapsed >= JP_LIMIT {
        return fail(format!("took {elapsed:.1?}"));
    }
    // Mod 2 the involution is the identity, so H3 has dimension 48 there.
    from_records(&recs, format!("JP1-JP3 exact; 400 draws over Q; basis pairs {}; {elapsed:.1?}", pairs.join(", ")))
}

fn criterion_2() -> Outcome {
    let mut rng = TrialRng::new(2);
    let recs = checks::check_multiplication_table(&octonions(Q), 20, &mut rng).unwrap();
    let (half, integral): (Vec<_>, Vec<_>) = recs.into_iter().partition(|r| r.id == "table-t-half-row");
    let half = &half[0];
    let out = from_records(&integral, format!("{} integral rows exact", integral.len()));
    Outcome { detail: format!("{}; half-row reported as {:?}: {}", out.detail, half.status, half.note.as_deref().unwrap_or("")), ..out }
}

fn criterion_3() -> Outcome {
    let h = octonions(Q);
    let mut recs = checks::bergmann_inverse_claim_check(&h).unwrap();
    let pairs = recs[0].trials;
    let lemma = checks::bergmann_lemma_checks(&h, 100, &mut TrialRng::new(3)).unwrap();
    assert!(lemma.iter().all(|r| r.trials >= 100));
    recs.extend(lemma);
    from_records(&recs, format!("claim and corollary on {pairs} admissible basis pairs; six lemma identities, 100 draws each"))
}

fn criterion_4() -> Outcome {
    let g = A2Group::new(&Pe3::new(&builtin("octonions", Q).unwrap()).unwrap());
    let mut recs = vec![automorphism_check(&g, &g.roots()).unwrap(), no_collapsing_check(&g).unwrap()];
    let run = verify_a2_relations(&g, 100, &mut TrialRng::new(4)).unwrap();
    let b = run.checks.iter().find(|r| r.id == "a2-relation-b").unwrap().clone();
    let law = b.note.clone().unwrap_or_default();
    if !law.starts_with("true law") || b.witness.is_none() {
        return fail(format!("relation (b) undetermined: {law}"));
    }
    recs.extend(run.checks);
    from_records(&recs, format!("automorphisms, no collapsing, (a) and (c) on 100 draws; (b): {}", law.split(';').next().unwrap()))
}

fn criterion_5() -> Outcome {
    let mut lines = Vec::new();
    let mut regressions = Vec::new();
    for (name, mode) in [("octonions", Q), ("split-octonions", ScalarMode::Modular(5))] {
        let g = c3(name, mode);
        let run = verify_c3_commutators(&g, &C3Relation::ALL, 50, &mut TrialRng::new(5)).unwrap();
        let status = |id: &str| run.checks.iter().find(|r| r.id == id).unwrap().status;
        let mut printed_fail = Vec::new();
        for rel in C3Relation::ALL {
            let n = rel.number();
            let s = status(&rel.id());
            let computed = rel.computed_anchor().map(|_| status(&format!("{}-computed", rel.id())));
            match (s, computed) {
                (Status::Pass, _) if n != 4 && n != 5 && n != 6 => {}
                (Status::Fail, Some(Status::Pass)) => printed_fail.push(n),
                other => regressions.push(format!("{name}: relation ({n}) {other:?}")),
            }
        }
        if status("c3-relation-1-symmetric") != Status::Pass {
            regressions.push(format!("{name}: b*ab not symmetric"));
        }
        let failing = run.checks.iter().filter(|r| r.status == Status::Fail);
        if failing.clone().any(|r| r.witness.is_none()) {
            regressions.push(format!("{name}: failure without witness"));
        }
        assert_eq!(run.commutators.len(), 50 * 6 * 10);
        lines.push(format!("{name} over {mode}: printed ({:?}) fail with witnesses, computed laws hold", printed_fail));
    }
    let g = c3("octonions", ScalarMode::Modular(3));
    let grading = grading_check_group(&g, 1, &mut TrialRng::new(6)).unwrap();
    if !grading.passed() || grading.trials != 18 * 16 {
        regressions.push(format!("grading sweep {:?}", grading.status));
    }
    lines.push(format!("grading sweep over Z/3 passes on {} root pairs", grading.trials));
    if !regressions.is_empty() {
        return fail(regressions.join("; "));
    }
    Outcome {
        pass: false,
        known: true,
        detail: format!(
            "relations (1), (2), (3), (7) hold as printed for all 6 index orders; (4), (5), (6) do not hold as printed \
             and no single sign convention makes all seven hold; {}",
            lines.join("; ")
        ),
    }
}

fn criterion_6() -> Outcome {
    let k = Tkk::new(&octonions(Q)).unwrap();
    let mut rng = TrialRng::new(7);
    let recs =
        vec![k.lie().jacobi_check(150, &mut rng).unwrap(), k.check_double_bracket(150, &mut rng).unwrap(), k.check_ad_cubed().unwrap(), k.check_root_dimensions()];
    // The octonion dimensions, stated independently of the hermitian model.
    let dims = k.root_dimensions();
    let dim = |s: &str| dims.iter().find(|(g, _)| *g == s.parse::<Weight>().unwrap()).unwrap().1;
    for i in 1..=3 {
        for sign in ["", "-"] {
            if dim(&format!("{sign}2w{i}")) != 1 {
                return fail(format!("dim W_{sign}2w{i} != 1"));
            }
            for j in i + 1..=3 {
                let w = if sign.is_empty() { format!("w{i}+w{j}") } else { format!("-w{i}-w{j}") };
                if dim(&w) != 8 {
                    return fail(format!("dim W_{w} != 8"));
                }
            }
        }
    }
    if k.herm().dim() != 27 {
        return fail("dim V+ != 27");
    }
    from_records(&recs, "Jacobi 150, [x,[x,y]] = 2Q_x y 150, ad_x^3 = 0 on basis, dims 1/8/27")
}

fn criterion_7() -> Outcome {
    let o = builtin("octonions", Q).unwrap();
    let g: Vec<_> = [1, 2, 4].iter().map(|&i| AlgebraElement::basis(&o, i)).collect();
    let r = left_mult_ring_span(&g).unwrap();
    // The octonions are simple, so left multiplications span End(O).
    if r.equal && r.dim == 64 && r.oracle_dim == 64 {
        pass("r1-word span = left multiplication ring, dimension 64")
    } else {
        fail(format!("{r:?}"))
    }
}

/// 3x3 matrices over the two-element field with determinant 1.
fn sl3_f2_order() -> usize {
    (0u32..512)
        .filter(|bits| {
            let m = |r: u32, c: u32| (bits >> (3 * r + c)) & 1;
            let det = m(0, 0) * (m(1, 1) * m(2, 2) + m(1, 2) * m(2, 1)) + m(0, 1) * (m(1, 0) * m(2, 2) + m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) + m(1, 1) * m(2, 0));
            det % 2 == 1
        })
        .count()
}

fn criterion_8() -> Outcome {
    let t0 = Instant::now();
    let a = builtin("trivial", ScalarMode::Modular(2)).unwrap();
    let gens = family_generators(&a, GroupFamily::A2, GeneratorSet::Unit).unwrap();
    let table = FiniteGroupTable::enumerate(&gens, 10_000).unwrap();
    let r = spectral_gap(&table, 0);
    let elapsed = t0.elapsed();
    let oracle = sl3_f2_order();
    let Some(o) = &r.oracle else { return fail("no dense oracle") };
    let (lambda, gap) = (r.lambda.unwrap_or(f64::NAN), r.gap.unwrap_or(0.0));
    if table.order() != oracle {
        fail(format!("order {} but SL3(F2) has {oracle}", table.order()))
    } else if !(gap > 0.0) || (lambda - o.lambda).abs() > ORACLE_TOL || elapsed >= SPECTRAL_LIMIT {
        fail(format!("gap {gap}, lambda {lambda} vs {}, {elapsed:.1?}", o.lambda))
    } else {
        pass(format!("order {oracle}, lambda {lambda:.12} (oracle within {ORACLE_TOL:e}), gap {gap:.6}, {elapsed:.1?}"))
    }
}

fn run_cli(args: &[&str], out: &std::path::Path) -> (i32, Vec<u8>) {
    let status = Command::new(env!("CARGO_BIN_EXE_steinberg-lab"))
        .args(args)
        .arg("--output")
        .arg(out)
        .env_remove("STEINBERG_LAB_SEED")
        .stderr(std::process::Stdio::null())
        .status()
        .unwrap();
    (status.code().unwrap_or(-1), std::fs::read(out).unwrap())
}

fn criterion_9() -> Outcome {
    let dir = std::env::temp_dir().join(format!("steinberg-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let runs: [&[&str]; 2] = [
        &["verify", "--algebra", "quaternions", "--mod", "3", "--trials", "3", "--seed", "11", "--format", "json"],
        &["commutators", "--algebra", "octonions", "--trials", "5", "--seed", "0"],
    ];
    let mut detail = Vec::new();
    for (n, args) in runs.iter().enumerate() {
        let (c1, a) = run_cli(args, &dir.join(format!("{n}-a")));
        let (c2, b) = run_cli(args, &dir.join(format!("{n}-b")));
        if a != b || c1 != c2 || a.is_empty() {
            return fail(format!("`{}` differs between runs", args.join(" ")));
        }
        detail.push(format!("{} ({} bytes)", args[0], a.len()));
    }
    let _ = std::fs::remove_dir_all(&dir);
    pass(format!("byte-identical reports for {}", detail.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Jordan pair axioms", criterion_1),
        ("multiplication table", criterion_2),
        ("Bergmann suite", criterion_3),
        ("A2 suite", criterion_4),
        ("C3 commutator suite", criterion_5),
        ("TKK structure", criterion_6),
        ("r1 words", criterion_7),
        ("spectral regression", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut regressions = 0;
    let mut known = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let o = f();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {} [{verdict}] {name} ({:.1?}): {}", n + 1, t0.elapsed(), o.detail);
        if !o.pass {
            if o.known {
                known += 1;
            } else {
                regressions += 1;
            }
        }
    }
    println!("{} of 9 criteria pass; {known} known failure(s) in the printed statements; {regressions} regression(s)", 9 - known - regressions);
    if regressions > 0 {
        std::process::exit(1);
    }
}
