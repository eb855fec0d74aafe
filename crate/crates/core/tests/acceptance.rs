//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain program (`harness = false`). A criterion whose outcome is
//! known not to be attainable is listed in `EXPECTED_FAIL`; its line still
//! reads FAIL, and the run only fails when some outcome differs from what
//! is pinned here.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use clawperf::catalog::{self, validate_catalog};
use clawperf::classify::{classify_pair, PairCase};
use clawperf::enumerate::*;
use clawperf::families::{canonical_multiplicities, inflate_cycle, recognize_inflation};
use clawperf::holes::{claw, is_perfect, is_perfect_by_definition};
use clawperf::iso::{are_isomorphic, canonical_form, CanonicalForm};
use clawperf::Graph;

/// Only seven exception classes exist (E5 ≅ E6), which also leaves two
/// rather than three two-vertex extensions of H6 up to isomorphism.
const EXPECTED_FAIL: [&str; 3] = ["1", "5", "10"];

struct Line {
    id: &'static str,
    pass: bool,
    detail: String,
    pinned: bool,
}

fn within(t: Instant, limit_s: u64) -> bool {
    t.elapsed() <= Duration::from_secs(limit_s)
}

fn secs(t: Instant) -> String {
    format!("{:.1}s", t.elapsed().as_secs_f64())
}

fn g(name: &str) -> Graph {
    catalog::named(name).unwrap()
}

fn exception_derivation() -> Line {
    let t = Instant::now();
    let eight = derive_exceptions(8).unwrap();
    let eight_ok = eight.len() == 1 && are_isomorphic(&eight[0], &g("H6"));
    let eight_time = t.elapsed();
    let found = derive_exceptions(11).unwrap();
    let orders: Vec<usize> = found.iter().map(Graph::order).collect();
    let matches = match_exceptions(catalog::standard(), &found);
    let all_matched = matches.iter().all(Option::is_some);
    let pairwise = (0..found.len()).all(|i| (i + 1..found.len()).all(|j| !are_isomorphic(&found[i], &found[j])));
    let pass = eight_ok
        && eight_time <= Duration::from_secs(10)
        && found.len() == 8
        && orders == [8, 9, 9, 9, 10, 10, 10, 11]
        && all_matched
        && pairwise
        && within(t, 600);
    // The observed outcome, pinned.
    let pinned = eight_ok && found.len() == 7 && orders == [8, 9, 9, 9, 10, 10, 11] && all_matched && pairwise;
    Line {
        id: "1",
        pass,
        detail: format!(
            "n_max=8 -> {} graph(s) (H6: {eight_ok}); n_max=11 -> {} classes, orders {orders:?}, matched {:?}; {}",
            eight.len(),
            found.len(),
            matches.iter().map(|m| m.map(|i| format!("E{i}")).unwrap_or_default()).collect::<Vec<_>>(),
            secs(t)
        ),
        pinned,
    }
}

fn case1_sweep() -> Line {
    let t = Instant::now();
    let reports = verify_case1(10).unwrap();
    let pass = reports.iter().all(SweepReport::passed) && within(t, 600);
    let detail = reports
        .iter()
        .map(|r| format!("{}: {} members, {} imperfect", r.sweep, r.checked, r.stats["imperfect"]))
        .collect::<Vec<_>>()
        .join("; ");
    Line {
        id: "2",
        pass,
        detail: format!("{detail}; {}", secs(t)),
        pinned: pass,
    }
}

fn spgt_oracle() -> Line {
    let t = Instant::now();
    let q = EnumerationQuery::new(8);
    let (bad, report) = enumerate_map(&q, |h| {
        (h.order() == 8 && is_perfect(h).perfect != is_perfect_by_definition(h).unwrap()).then(|| h.clone())
    })
    .unwrap();
    let classes = report.per_order.last().map(|s| s.classes).unwrap_or(0);
    let pass = classes == 12346 && bad.is_empty() && within(t, 300);
    Line {
        id: "3",
        pass,
        detail: format!("{classes} classes on 8 vertices, {} disagreements; {}", bad.len(), secs(t)),
        pinned: pass,
    }
}

fn lemma_sweeps() -> Line {
    let t = Instant::now();
    let l5 = verify_lemma5(10).unwrap();
    let weakened = catalog::standard().without("H6");
    let m5 = verify_lemma5_in(&weakened, 10).unwrap();
    let m5_ok = m5
        .counterexample
        .as_ref()
        .is_some_and(|c| c.order == 8 && are_isomorphic(&c.graph, &g("H6")));
    let l6 = verify_lemma6(11).unwrap();
    let cat = catalog::standard();
    let seven: Vec<Graph> = cat.exceptions().into_iter().filter(|(i, _)| *i <= 7).map(|(_, e)| e).collect();
    let m6 = verify_lemma6_with(cat, &seven, 11).unwrap();
    let m6_ok = m6
        .counterexample
        .as_ref()
        .is_some_and(|c| are_isomorphic(&c.graph, &g("E8")));
    let pass = l5.passed() && m5_ok && l6.passed() && m6_ok;
    Line {
        id: "4",
        pass,
        detail: format!(
            "lemma5(10) {} ({} C7 hosts, {} C5 hosts); without H6 -> order-8 H6: {m5_ok}; lemma6(11) {}; E1-E7 only -> E8: {m6_ok}; {}",
            if l5.passed() { "pass" } else { "fail" },
            l5.stats["c7_hosts"],
            l5.stats["c5_hosts"],
            if l6.passed() { "pass" } else { "fail" },
            secs(t)
        ),
        pinned: pass,
    }
}

fn h6_analysis() -> Line {
    let t = Instant::now();
    let ext = h6_extension_orbits().unwrap();
    let fast = within(t, 1);
    let b_has_six = ext
        .orbits
        .iter()
        .any(|o| o.kind == Some(H6Type::B) && o.neighborhoods.iter().any(|n| n.len() == 6));
    let pass = ext.orbits.len() == 3 && ext.pair_classes.len() == 3 && b_has_six && fast;
    let pinned = ext.orbits.len() == 3 && ext.pair_options.len() == 3 && ext.pair_classes.len() == 2 && b_has_six && fast;
    Line {
        id: "5",
        pass,
        detail: format!(
            "{} single-vertex orbits; {} two-vertex options up to Aut(H6), {} up to isomorphism; {}",
            ext.orbits.len(),
            ext.pair_options.len(),
            ext.pair_classes.len(),
            secs(t)
        ),
        pinned,
    }
}

fn family_pipeline() -> Line {
    let t = Instant::now();
    let r = verify_family_pipeline(7, 5).unwrap();
    let pass = r.passed() && within(t, 900);
    Line {
        id: "6",
        pass,
        detail: format!(
            "{} graphs X, {} in the infinite case, {} failures; {}",
            r.checked,
            r.stats["infinite_case_graphs"],
            r.stats["counterexamples"],
            secs(t)
        ),
        pinned: pass,
    }
}

/// Canonical forms of every inflation of C_k (k ≥ 5) on at most `n` vertices.
fn inflation_oracle(n: usize) -> HashSet<CanonicalForm> {
    fn compositions(k: usize, total_max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let used: usize = prefix.iter().sum();
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        let room = total_max - used - (k - prefix.len() - 1);
        for m in 1..=room {
            prefix.push(m);
            compositions(k, total_max, prefix, out);
            prefix.pop();
        }
    }
    let mut set = HashSet::new();
    for k in 5..=n {
        let mut all = Vec::new();
        compositions(k, n, &mut Vec::new(), &mut all);
        for m in all {
            set.insert(canonical_form(&inflate_cycle(k, &m).unwrap()));
        }
    }
    set
}

fn inflation_round_trip() -> Line {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1f1a7e);
    let mut forward_failures = 0;
    for _ in 0..1000 {
        let k = *[5usize, 7, 9, 11].choose(&mut rng).unwrap();
        let mut m = vec![1usize; k];
        let extra = rng.gen_range(0..=24 - k);
        for _ in 0..extra {
            m[rng.gen_range(0..k)] += 1;
        }
        let h = inflate_cycle(k, &m).unwrap();
        let mut perm: Vec<usize> = (0..h.order()).collect();
        perm.shuffle(&mut rng);
        let shuffled = h.relabel(&perm);
        match recognize_inflation(&shuffled) {
            Some(inf) if inf.k == k && inf.multiplicities == canonical_multiplicities(&m) => {}
            _ => forward_failures += 1,
        }
    }

    let oracle = inflation_oracle(10);
    let q = EnumerationQuery::new(10).forbid(claw());
    let pool: Vec<Graph> = collect_graphs(&q).unwrap();
    let (inflations, others): (Vec<&Graph>, Vec<&Graph>) = pool.iter().partition(|h| oracle.contains(&canonical_form(h)));
    let sample: Vec<&&Graph> = others.choose_multiple(&mut rng, 1000).collect();
    let false_positives = sample.iter().filter(|h| recognize_inflation(h).is_some()).count();
    let missed = inflations.iter().filter(|h| recognize_inflation(h).is_none()).count();
    let pass = forward_failures == 0 && sample.len() == 1000 && false_positives == 0 && missed == 0;
    Line {
        id: "7",
        pass,
        detail: format!(
            "1000 random specs: {forward_failures} failures; {} sampled non-inflations: {false_positives} false positives; {} enumerated inflations: {missed} missed; {}",
            sample.len(),
            inflations.len(),
            secs(t)
        ),
        pinned: pass,
    }
}

fn bull_sweep() -> Line {
    let t = Instant::now();
    let r = verify_bull_theorem(11).unwrap();
    // Expected imperfect members: C9 inflations on at most 11 vertices, and C11.
    let mut expected: Vec<Graph> = vec![Graph::cycle(9).unwrap(), Graph::cycle(11).unwrap()];
    expected.push(inflate_cycle(9, &[2, 1, 1, 1, 1, 1, 1, 1, 1]).unwrap());
    expected.push(inflate_cycle(9, &[3, 1, 1, 1, 1, 1, 1, 1, 1]).unwrap());
    for d in 1..=4 {
        let mut m = vec![1; 9];
        m[0] = 2;
        m[d] = 2;
        expected.push(inflate_cycle(9, &m).unwrap());
    }
    let exact = r.findings.len() == expected.len()
        && expected.iter().all(|e| r.findings.iter().any(|f| are_isomorphic(&f.graph, e)));
    let pass = r.passed() && exact && within(t, 600);
    Line {
        id: "8",
        pass,
        detail: format!(
            "{} members, {} imperfect, all odd-cycle inflations with k >= 9: {}; matches the expected list: {exact}; {}",
            r.checked,
            r.findings.len(),
            r.passed(),
            secs(t)
        ),
        pinned: pass,
    }
}

fn cycle_claims() -> Line {
    let t = Instant::now();
    let r = verify_cycle_claims(10).unwrap();
    let s = &r.stats;
    let pass = r.passed() && s["edge_bound_violations"] == 0 && s["cd2_violations"] == 0 && s["attachment_violations"] == 0;
    Line {
        id: "9",
        pass,
        detail: format!(
            "{} hosts with C5/C7, {} cycle contexts, {} cd2 checks, {} attachments, violations {}/{}/{}; {}",
            s["cycle_hosts"],
            s["contexts"],
            s["cd2_checks"],
            s["attachments"],
            s["edge_bound_violations"],
            s["cd2_violations"],
            s["attachment_violations"],
            secs(t)
        ),
        pinned: pass,
    }
}

fn catalog_gate() -> Line {
    let t = Instant::now();
    let v = validate_catalog(catalog::standard());
    let u = verify_unavoidability(7).unwrap();
    let mutated = catalog::standard().with_override("B", g("B_1_2"));
    let mutation_caught = !verify_unavoidability_in(&mutated, 7).unwrap().passed();
    let c4 = matches!(classify_pair(&g("C4"), 4), Ok(PairCase::Infinite { witness: Some("C4"), .. }));
    let pass = v.passed() && u.passed() && mutation_caught && c4;
    let only_known = v.violations.len() == 1 && v.violations[0].entry == "E5/E6";
    let pinned = only_known && u.passed() && mutation_caught && c4;
    Line {
        id: "10",
        pass,
        detail: format!(
            "validate_catalog: {} checks, violations {:?}; unavoidability(7) {} over {} graphs; bull->B_1_2 mutation caught: {mutation_caught}; {}",
            v.checked,
            v.violations.iter().map(|x| format!("{}: {}", x.entry, x.assertion)).collect::<Vec<_>>(),
            if u.passed() { "pass" } else { "fail" },
            u.checked,
            secs(t)
        ),
        pinned,
    }
}

fn main() -> ExitCode {
    let criteria: [fn() -> Line; 10] = [
        exception_derivation,
        case1_sweep,
        spgt_oracle,
        lemma_sweeps,
        h6_analysis,
        family_pipeline,
        inflation_round_trip,
        bull_sweep,
        cycle_claims,
        catalog_gate,
    ];
    let mut unexpected = 0;
    for run in criteria {
        let line = run();
        let expected_pass = !EXPECTED_FAIL.contains(&line.id);
        println!("{} criterion {}: {}", if line.pass { "PASS" } else { "FAIL" }, line.id, line.detail);
        if line.pass != expected_pass || !line.pinned {
            println!("  ^ unexpected outcome");
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
