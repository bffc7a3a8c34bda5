//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report reads top to
//! bottom: `cargo test -p ackit-cli --test acceptance`.

use std::collections::HashMap;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ackit::certificate::Certificate;
use ackit::encode::group_axioms;
use ackit::proofex::{certificate_from_chain, extract_chain, parse_proof, proof_endpoints};
use ackit::search::{scramble, search, Outcome, Search, SearchLimits, Strategy};
use ackit::{
    ak, check, find_conjugator, free_reduce, parse_certificate, parse_word, shehper_p, trivial, Letter,
    Move, MoveFamily, Presentation, SignedPermutation, Word,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> String {
    fs::read_to_string(fixtures().join(name)).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

fn ackit(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ackit"))
        .args(args)
        .output()
        .expect("run ackit");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn relators_csv(p: &Presentation) -> String {
    p.relators().iter().map(Word::to_string).collect::<Vec<_>>().join(",")
}

/// Inverse of a word in letter syntax, computed on the string.
fn invert_text(s: &str) -> String {
    s.chars()
        .rev()
        .map(|c| if c.is_ascii_lowercase() { c.to_ascii_uppercase() } else { c.to_ascii_lowercase() })
        .collect()
}

/// The printed listing: relator pairs and the operation applied to each.
fn listing() -> Vec<(String, Option<String>)> {
    fixture("s2_listing.txt")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| match l.split_once("->") {
            Some((lhs, op)) => {
                let (_, pair) = lhs.split_once('.').expect("numbered line");
                (pair.trim().to_string(), Some(op.trim().to_string()))
            }
            None => (l.trim().to_string(), None),
        })
        .collect()
}

fn s2() -> Certificate {
    parse_certificate(&fixture("s2.cert")).expect("s2.cert parses")
}

fn criterion_1() -> Verdict {
    let started = Instant::now();
    let cert = s2();
    let trace = cert.replay().map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    let rows = listing();
    ensure(rows.len() == 161, || format!("listing has {} rows", rows.len()))?;
    ensure(cert.len() == 160, || format!("certificate has {} moves", cert.len()))?;
    ensure(cert.start == shehper_p(), || format!("start is {}", cert.start))?;
    ensure(relators_csv(trace.end()) == "aaaBBBB,abaBAB", || format!("ends at {}", trace.end()))?;
    for (k, ((pair, _), p)) in rows.iter().zip(&trace.presentations).enumerate() {
        ensure(*pair == relators_csv(p), || format!("row {}: listing {pair}, replay {}", k + 1, relators_csv(p)))?;
    }
    // The operation column agrees with the certificate's moves.
    let mut misprinted = Vec::new();
    for (k, ((_, op), m)) in rows.iter().zip(&cert.moves).enumerate() {
        let op = op.as_deref().expect("operation");
        let agrees = match (op, m) {
            ("INV", Move::Inv(0)) | ("MULT-L", Move::Mul(0, 1)) | ("MULT-R", Move::Mul(1, 0)) => true,
            (conj, Move::Conj(0, w)) if conj.starts_with("CONJ ") => {
                let (u, v) = conj[5..].trim().split_once(['X', 'x']).expect("CONJ uXv");
                if v == invert_text(u) {
                    w.to_string() == u
                } else {
                    misprinted.push(k + 1);
                    true
                }
            }
            _ => false,
        };
        ensure(agrees, || format!("step {}: listing {op}, certificate {m:?}", k + 1))?;
    }
    ensure(misprinted == [81], || format!("unexpected malformed conjugations at steps {misprinted:?}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("replay took {elapsed:?}"))?;
    Ok(format!(
        "160 moves, 161/161 presentations match the listing, ends at (aaaBBBB,abaBAB); step 81 pattern is malformed in print and replays as CONJ aBAbA; {elapsed:?}"
    ))
}

fn tail_check(name: &str, prefix: usize, tail: &[Move], expected_len: usize) -> Result<(Certificate, Duration), String> {
    let started = Instant::now();
    let cert = parse_certificate(&fixture(name)).map_err(|e| e.to_string())?;
    let report = check(&cert);
    let elapsed = started.elapsed();
    ensure(report.ok, || format!("{name}: {report}"))?;
    ensure(relators_csv(&report.last) == "aaaBBBB,abaBAB", || format!("{name} ends at {}", report.last))?;
    let base = s2();
    ensure(cert.moves[..prefix] == base.moves[..prefix], || format!("{name}: first {prefix} moves differ from S2"))?;
    ensure(cert.moves[prefix..] == *tail, || format!("{name}: tail is {:?}", &cert.moves[prefix..]))?;
    ensure(cert.len() == expected_len, || format!("{name}: {} moves", cert.len()))?;
    ensure(elapsed < Duration::from_secs(1), || format!("{name}: {elapsed:?}"))?;
    Ok((cert, elapsed))
}

fn word(s: &str) -> Word {
    parse_word(s, 2).unwrap()
}

fn criterion_2() -> Verdict {
    let tail = [Move::Conj(0, word("a")), Move::Conj(1, word("a")), Move::Inv(1)];
    let (cert, elapsed) = tail_check("s3.cert", 67, &tail, 70)?;
    Ok(format!("{} moves (S2 1-67 + CONJ L a, CONJ R a, INV R), ends at (aaaBBBB,abaBAB); {elapsed:?}", cert.len()))
}

fn criterion_3() -> Verdict {
    let swap = SignedPermutation::swap(2, 0, 1).unwrap();
    let tail = [Move::Aut(swap), Move::Conj(0, word("b")), Move::Inv(0), Move::Conj(1, word("b"))];
    let (cert, elapsed) = tail_check("s4.cert", 52, &tail, 56)?;
    Ok(format!(
        "{} moves (S2 1-52 + AUT a<->b, CONJ L b, INV L, CONJ R b), ends at (aaaBBBB,abaBAB); stated length 57 differs, endpoint is the pass condition; {elapsed:?}",
        cert.len()
    ))
}

fn normalize(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn criterion_4() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let task_path = dir.path().join("task.in");
    let task_arg = task_path.to_str().unwrap();
    let (code, _, err) = ackit(&[
        "encode",
        "--from",
        "2 | ABaBAbaBBabAb, BAbbABabaBBa",
        "--to",
        "2 | aaaBBBB, abaBAB",
        "--translation",
        "nonground",
        "--raw",
        "-o",
        task_arg,
    ]);
    ensure(code == 0, || format!("encode exited {code}: {err}"))?;
    let emitted = fs::read_to_string(&task_path).map_err(|e| e.to_string())?;
    let printed = fixture("task_p_ak3.txt");
    let placeholder = printed
        .lines()
        .find(|l| l.trim_start().starts_with("<Group axioms"))
        .ok_or("printed block lacks the group-axiom placeholder")?;
    let printed = printed.replace(placeholder, &group_axioms());
    ensure(normalize(&emitted) == normalize(&printed), || {
        format!("P -> AK(3) block differs:\n{}\nvs\n{}", normalize(&emitted), normalize(&printed))
    })?;

    // Goal for AK(4) -> trivial, against the printed formula.
    let (code, out, err) = ackit(&["encode", "--from", "AK(4)", "--to", "T(2)", "--translation", "ground", "--raw"]);
    ensure(code == 0, || format!("encode exited {code}: {err}"))?;
    let goal = out
        .lines()
        .skip_while(|l| *l != "Goal:")
        .nth(1)
        .ok_or("no goal line")?
        .to_string();
    let formula = fixture("ak4_goal.tex")
        .replace("\\cdot", "*")
        .replace("\\rightarrow", "->")
        .replace("r(a)", "a'")
        .replace("r(b)", "b'");
    let squeeze = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
    ensure(squeeze(&goal) == squeeze(&formula), || format!("AK(4) goal {goal} vs {formula}"))?;

    // The modified translation's axioms, as a set.
    let (code, out, err) = ackit(&["encode", "--from", "AK(2)", "--to", "T(2)", "--translation", "modified", "--raw"]);
    ensure(code == 0, || format!("encode exited {code}: {err}"))?;
    let mut emitted: Vec<String> = out.lines().filter(|l| l.starts_with("R(x,y) ->")).map(normalize).collect();
    let mut printed: Vec<String> = fixture("modified12_rules.txt")
        .lines()
        .flat_map(|l| l.split("  ").map(str::trim).filter(|c| !c.is_empty()).map(normalize).collect::<Vec<_>>())
        .collect();
    ensure(emitted.len() == 12 && printed.len() == 12, || format!("{} emitted, {} printed", emitted.len(), printed.len()))?;
    emitted.sort();
    printed.sort();
    ensure(emitted == printed, || format!("axiom sets differ: {emitted:?} vs {printed:?}"))?;
    Ok("P -> AK(3) nonground block, AK(4) goal and the 12 modified axioms all match after whitespace normalization".into())
}

fn random_word(rng: &mut ChaCha8Rng, min: usize, max: usize) -> Word {
    let len = rng.gen_range(min..=max);
    let mut text = String::new();
    let mut last: Option<char> = None;
    while text.len() < len {
        let c = ['a', 'A', 'b', 'B'][rng.gen_range(0..4)];
        if last.is_some_and(|l| l != c && l.eq_ignore_ascii_case(&c)) {
            continue;
        }
        text.push(c);
        last = Some(c);
    }
    if text.is_empty() {
        Word::identity()
    } else {
        parse_word(&text, 2).unwrap()
    }
}

/// |det| from letter counts of the printed relators.
fn det_oracle(p: &Presentation) -> i128 {
    let count = |w: &Word, lower: char| -> i128 {
        w.to_string()
            .chars()
            .map(|c| match c {
                c if c == lower => 1,
                c if c == lower.to_ascii_uppercase() => -1,
                _ => 0,
            })
            .sum()
    };
    let (r, s) = (&p.relators()[0], &p.relators()[1]);
    (count(r, 'a') * count(s, 'b') - count(r, 'b') * count(s, 'a')).abs()
}

/// Deletes cancelling pairs from the text until none remain.
fn reduce_text(s: &str) -> String {
    let mut s = s.to_string();
    loop {
        let before = s.len();
        for pair in ["aA", "Aa", "bB", "Bb"] {
            s = s.replace(pair, "");
        }
        if s.len() == before {
            return s;
        }
    }
}

fn random_move(rng: &mut ChaCha8Rng) -> Move {
    let i = rng.gen_range(0..2);
    match rng.gen_range(0..5) {
        0 => Move::Inv(i),
        1 => Move::Mul(i, 1 - i),
        2 => Move::MulInv(i, 1 - i),
        3 => Move::Conj(i, random_word(rng, 1, 6)),
        _ => {
            let swap = rng.gen_bool(0.5);
            let images = vec![
                Letter::new(usize::from(swap), rng.gen_bool(0.5)),
                Letter::new(usize::from(!swap), rng.gen_bool(0.5)),
            ];
            Move::Aut(SignedPermutation::new(images).unwrap())
        }
    }
}

fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let trials = 10_000;
    for t in 0..trials {
        let p = Presentation::new(2, vec![random_word(&mut rng, 0, 30), random_word(&mut rng, 0, 30)]).unwrap();
        let m = random_move(&mut rng);
        let q = p.apply(&m).map_err(|e| format!("trial {t}: {e}"))?;
        // (a) inverse move restores the presentation
        let back = m.inverse(&p).map_err(|e| e.to_string())?;
        ensure(q.apply(&back).as_ref() == Ok(&p), || format!("trial {t}: {m:?} on {p} not undone by {back:?}"))?;
        // (b) |det| invariance, and the library agrees with the oracle
        ensure(det_oracle(&p) == det_oracle(&q), || format!("trial {t}: |det| changed by {m:?} on {p}"))?;
        ensure(p.abs_det().map(|d| d as i128) == Some(det_oracle(&p)), || format!("trial {t}: abs_det of {p}"))?;
        // (c) free reduction is idempotent and matches pair deletion
        let raw: Vec<Letter> = (0..rng.gen_range(0..40)).map(|_| Letter::from_code(rng.gen_range(0..4))).collect();
        let reduced = free_reduce(raw.iter().copied());
        ensure(free_reduce(reduced.letters().iter().copied()) == reduced, || format!("trial {t}: not idempotent"))?;
        let text: String = raw.iter().map(|l| l.to_char().unwrap()).collect();
        let expected = reduce_text(&text);
        let got = if reduced.is_empty() { String::new() } else { reduced.to_string() };
        ensure(got == expected, || format!("trial {t}: free_reduce({text}) = {got}, expected {expected}"))?;
        // (d) two conjugations compose
        let (u, v) = (random_word(&mut rng, 0, 8), random_word(&mut rng, 0, 8));
        let i = rng.gen_range(0..2);
        let twice = p.apply(&Move::Conj(i, u.clone())).and_then(|x| x.apply(&Move::Conj(i, v.clone())));
        let once = p.apply(&Move::Conj(i, v.concat(&u)));
        ensure(twice == once, || format!("trial {t}: Conj({u}) then Conj({v}) on {p}"))?;
    }
    Ok(format!("{trials} seeded trials, 0 failures on (a) inverse, (b) |det|, (c) reduction, (d) composition"))
}

/// Reduced words over two generators up to `max` letters, in shortlex order.
fn words_up_to(max: usize) -> Vec<Word> {
    let mut layers: Vec<Vec<Vec<Letter>>> = vec![vec![Vec::new()]];
    for len in 1..=max {
        let mut next = Vec::new();
        for w in &layers[len - 1] {
            for code in 0..4 {
                let l = Letter::from_code(code);
                if w.last() != Some(&l.inverse()) {
                    let mut x = w.clone();
                    x.push(l);
                    next.push(x);
                }
            }
        }
        layers.push(next);
    }
    layers.into_iter().flatten().map(Word::from_letters).collect()
}

fn criterion_6() -> Verdict {
    let started = Instant::now();
    let words = words_up_to(4);
    let conjugators = words_up_to(8);
    let (mut pairs, mut conjugate_pairs) = (0usize, 0usize);
    for p in &words {
        // Shortlex-first witness for every conjugate reachable by short words.
        let mut witness: HashMap<Word, &Word> = HashMap::new();
        for c in &conjugators {
            witness.entry(p.conjugate(c)).or_insert(c);
        }
        for q in &words {
            pairs += 1;
            let brute = witness.get(q);
            let found = find_conjugator(p, q);
            ensure(brute.is_some() == found.is_some(), || format!("{p} ~ {q}: brute {brute:?}, found {found:?}"))?;
            if let Some(w) = found {
                conjugate_pairs += 1;
                ensure(p.conjugate(&w) == *q, || format!("{w} does not conjugate {p} to {q}"))?;
                ensure(Some(&&w) == brute, || format!("{p} ~ {q}: witness {w}, shortest is {}", brute.unwrap()))?;
            }
        }
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{pairs} pairs ({conjugate_pairs} conjugate) agree with brute force over {} conjugators; witnesses verified and shortlex-minimal; {elapsed:?}",
        conjugators.len()
    ))
}

fn collapse(presentations: &[Presentation]) -> Vec<Presentation> {
    let mut out: Vec<Presentation> = Vec::new();
    for p in presentations {
        if out.last() != Some(p) {
            out.push(p.clone());
        }
    }
    out
}

fn criterion_7() -> Verdict {
    let families = [MoveFamily::Ract2, MoveFamily::PaperS2, MoveFamily::Modified12];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for k in 0..1000u64 {
        let family = families[k as usize % 3];
        let start = if k % 2 == 0 {
            trivial(2).unwrap()
        } else {
            Presentation::new(2, vec![random_word(&mut rng, 1, 6), random_word(&mut rng, 1, 6)]).unwrap()
        };
        let len = rng.gen_range(1..=50);
        let (end, walk) = scramble(&start, family, len, k);
        let trace = walk.replay().map_err(|e| e.to_string())?;
        let chain = collapse(&trace.presentations);
        let cert = certificate_from_chain(&chain, family, 0).map_err(|e| format!("walk {k} ({family}): {e}"))?;
        ensure(cert.replay().map_err(|e| e.to_string())?.end() == &end, || format!("walk {k}: endpoint differs"))?;
        ensure(check(&cert).ok, || format!("walk {k}: certificate fails check"))?;
    }

    // Synthetic proof file through the library and the CLI.
    let proof = parse_proof(&fixture("synthetic_proof.txt")).map_err(|e| e.to_string())?;
    let ground = proof.lines.iter().filter(|l| l.has_ground_r()).count();
    ensure(proof.lines.len() == 10 && ground == 6, || format!("{} lines, {ground} ground R-atoms", proof.lines.len()))?;
    let (start, end) = proof_endpoints(&proof).map_err(|e| e.to_string())?;
    let chain = extract_chain(&proof, &start, &end).map_err(|e| e.to_string())?;
    ensure(chain.len() == 5, || format!("chain of {}", chain.len()))?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("synthetic.cert");
    let proof_path = fixtures().join("synthetic_proof.txt");
    let (code, _, err) = ackit(&["extract", proof_path.to_str().unwrap(), "--family", "RACT2", "-o", out.to_str().unwrap()]);
    ensure(code == 0, || format!("extract exited {code}: {err}"))?;
    let (code, report, _) = ackit(&["check", out.to_str().unwrap()]);
    ensure(code == 0, || format!("check exited {code}: {report}"))?;
    Ok("1000/1000 walks (RACT2, PAPER_S2, MODIFIED12) recovered; synthetic proof: 10 lines, 6 ground R-atoms, 4-move certificate passes check".into())
}

/// Fewest moves from `from` to `to` by plain depth-limited enumeration.
fn brute_depth(from: &Presentation, to: &Presentation, family: MoveFamily, max_len: usize, limit: usize) -> Option<usize> {
    fn reach(p: &Presentation, to: &Presentation, moves: &[Move], max_len: usize, depth: usize) -> bool {
        if p == to {
            return true;
        }
        depth > 0
            && moves.iter().any(|m| {
                p.apply(m)
                    .is_ok_and(|q| q.max_relator_length() <= max_len && reach(&q, to, moves, max_len, depth - 1))
            })
    }
    let moves = family.moves(from.generators());
    (0..=limit).find(|&d| reach(from, to, &moves, max_len, d))
}

fn criterion_8() -> Verdict {
    let t = trivial(2).unwrap();
    // (a) BFS optimality
    let families = [MoveFamily::Ract2, MoveFamily::Modified12, MoveFamily::FullAct2];
    let mut checked = 0;
    let mut seed = 0u64;
    while checked < 30 {
        seed += 1;
        let family = families[checked % 3];
        let depth = 1 + checked % 4;
        let (end, walk) = scramble(&t, family, depth, seed);
        let trace = walk.replay().map_err(|e| e.to_string())?;
        if trace.presentations.iter().any(|p| p.max_relator_length() > 6) {
            continue;
        }
        let limits = SearchLimits { max_relator_len: 6, max_states: u64::MAX, max_seconds: 60.0, beam_width: 1, max_depth: None };
        let r = search(&t, &end, family, Strategy::Bfs, &limits).map_err(|e| e.to_string())?;
        let cert = r.certificate.ok_or_else(|| format!("seed {seed}: BFS {}", r.outcome))?;
        let best = brute_depth(&t, &end, family, 6, depth).ok_or("brute force found nothing")?;
        ensure(cert.len() == best, || format!("seed {seed} ({family}): BFS {} moves, brute force {best}", cert.len()))?;
        ensure(check(&cert).ok, || format!("seed {seed}: BFS certificate fails check"))?;
        checked += 1;
    }

    // (b) greedy on depth-8 scrambles
    let started = Instant::now();
    let (mut solved, mut worst) = (0, 0);
    let runs = 20;
    for seed in 0..runs {
        let (p, walk) = scramble(&t, MoveFamily::Modified12, 8, 1000 + seed);
        let max_len = walk.replay().unwrap().presentations.iter().map(Presentation::max_relator_length).max().unwrap();
        let limits = SearchLimits { max_relator_len: max_len, max_states: 100_000, max_seconds: 10.0, beam_width: 1, max_depth: None };
        let r = search(&p, &t, MoveFamily::Modified12, Strategy::Greedy, &limits).map_err(|e| e.to_string())?;
        if r.outcome == Outcome::Found && check(r.certificate.as_ref().unwrap()).ok {
            solved += 1;
            worst = worst.max(r.states_expanded);
        }
    }
    let greedy_time = started.elapsed();
    ensure(solved == runs, || format!("greedy solved {solved}/{runs} depth-8 scrambles"))?;
    ensure(greedy_time < Duration::from_secs(10), || format!("greedy runs took {greedy_time:?}"))?;

    // (c) AK(2)
    let limits = SearchLimits { max_relator_len: 14, max_states: 10_000_000, max_seconds: 600.0, beam_width: 1, max_depth: None };
    let r = Search::new(&ak(2).unwrap(), &t, MoveFamily::Modified12).limits(limits).run().map_err(|e| e.to_string())?;
    let ak2 = match (&r.outcome, &r.certificate) {
        (Outcome::Found, Some(cert)) => {
            let report = check(cert);
            ensure(report.ok && report.last == t, || format!("AK(2) certificate fails check: {report}"))?;
            format!("AK(2) FOUND, {} moves after {} expansions in {:?}", cert.len(), r.states_expanded, r.elapsed)
        }
        (outcome, _) => return Err(format!("(c) AK(2) unmet: {outcome} after {} expansions", r.states_expanded)),
    };
    Ok(format!(
        "(a) {checked} BFS runs optimal; (b) {solved}/{runs} depth-8 scrambles, at most {worst} expansions, {greedy_time:?}; (c) {ak2}"
    ))
}

fn criterion_9() -> Verdict {
    Ok("informational: prover runtimes, the 421- and 158-step proofs and the external S1/S5 sequences are not regenerated; prover inputs are emitted (criterion 4) and proofs can be ingested (criterion 7)".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("S2 replay", criterion_1),
        ("S3 replay", criterion_2),
        ("S4 replay", criterion_3),
        ("encoder fidelity", criterion_4),
        ("move-engine properties", criterion_5),
        ("conjugacy oracle", criterion_6),
        ("extraction roundtrip", criterion_7),
        ("search at desk scale", criterion_8),
        ("out of scope", criterion_9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("criterion {} ({name}): PASS: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
