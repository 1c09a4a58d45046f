//! End-to-end acceptance checks. Prints one line per criterion and exits
//! non-zero if any fails. Every comparison is exact unless a tolerance is
//! printed with it.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lingroup::analysis::{
    ball_agreement, check_linrep_hypotheses, constructed_agreement, minimality_witness, parity_embedding_check,
    phi_report, repetitivity, separation_experiment, tau, theorem_hypothesis_check, verify_hn, HnOptions,
};
use lingroup::graph::WindowUniverse;
use lingroup::group::{commutator, enumerate_ball, equal, growth_in, order, GroupWord, Order, OrderOptions};
use lingroup::oracle::cross_check;
use lingroup::symbolic::builtin::{dihedral, galpha, ghat, grigorchuk};
use lingroup::symbolic::{AlphaSequence, Segment};
use lingroup::{Exec, Result};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn literal(text: &str) -> String {
    text.replace("\\{", "[").replace("\\}", "]").replace(", ", ",").replace('_', "")
}

fn segment_fidelity() -> Result<Outcome> {
    let g = ghat();
    let a = g.alphabet();
    let printed_i2 = literal(r"\{a_2\}\{b, c\}\{a_1\}\{d, b\}\{a_1\}\{b, c\}\{a_2\}");
    let printed_j2 = literal(r"\{a_2\}\{b, c\}\{a_1\}\{d, b\}\{a_0\}\{b, c\}\{a_2\}");
    let i2 = g.segment(2, "I")?;
    let j2 = g.segment(2, "J")?;
    let ok = i2 == Segment::parse(a, &printed_i2)?
        && j2 == Segment::parse(a, &printed_j2)?
        && i2.to_tokens(a) == "[a2][b,c][a1][b,d][a1][b,c][a2]"
        && j2.to_tokens(a) == "[a2][b,c][a1][b,d][a0][b,c][a2]";
    outcome(ok, format!("I2={} J2={}", i2.to_tokens(a), j2.to_tokens(a)))
}

fn oracle_equivalence() -> Result<Outcome> {
    let r = cross_check(10, 5, 8, Exec::default())?;
    outcome(
        r.pass,
        format!("{} words, {} equal pairs, {} disagreements (tolerance 0)", r.words, r.pairs_both, r.disagreements),
    )
}

/// The infinite dihedral group as maps `x ↦ εx + k` of the integers.
fn dihedral_brute_force(n: usize) -> Vec<u64> {
    let gens = [(-1i64, 0i64), (-1, 1)];
    let mut seen: HashSet<(i64, i64)> = HashSet::from([(1, 0)]);
    let mut frontier = vec![(1i64, 0i64)];
    let mut out = vec![1];
    for _ in 0..n {
        let mut next = Vec::new();
        for &(e, k) in &frontier {
            for &(ge, gk) in &gens {
                let m = (ge * e, ge * k + gk);
                if seen.insert(m) {
                    next.push(m);
                }
            }
        }
        frontier = next;
        out.push(seen.len() as u64);
    }
    out
}

fn dihedral_growth() -> Result<Outcome> {
    let d = dihedral();
    let u = WindowUniverse::build(&d, 10)?;
    let t = growth_in(&u, 10, Exec::default(), 1 << 20)?;
    let formula: Vec<u64> = (0..=10).map(|n| 2 * n + 1).collect();
    let ok = t.values == formula && t.values == dihedral_brute_force(10);
    outcome(ok, format!("γ(0..=10) = {:?}", t.values))
}

fn torsion() -> Result<Outcome> {
    let g = grigorchuk();
    let u = WindowUniverse::build(&g, 5)?;
    let ball = enumerate_ball(&u, 4, Exec::default(), 1 << 20)?;
    let opts = OrderOptions { cap: 1 << 16, ..OrderOptions::default() };
    let mut largest = 0;
    let mut bad = Vec::new();
    for w in &ball.reps {
        match order(&g, w, opts)?.order {
            Order::Finite { order } if order.is_power_of_two() => largest = largest.max(order),
            other => bad.push(format!("{}: {other}", w.to_text(g.alphabet()))),
        }
    }
    let a = order(&g, &GroupWord::parse(g.alphabet(), "a")?, opts)?.order;
    let ok = bad.is_empty() && a == Order::Finite { order: 2 };
    let mut detail = format!("{} elements, largest order {largest}, order(a) = {a}, cap 2^16", ball.len());
    if !bad.is_empty() {
        detail.push_str(&format!(", not certified: {}", bad.join("; ")));
    }
    outcome(ok, detail)
}

fn hn_structure() -> Result<Outcome> {
    let r = verify_hn(&ghat(), 2, &HnOptions::default())?;
    let ok = r.j_kernel == "symmetric"
        && r.j_kernel_order == "40320"
        && r.i_projection == "symmetric"
        && r.i_projection_order == "24";
    outcome(
        ok,
        format!(
            "J2 ({} points): {} {}, J1 ({} points): {} {}, |H2| = {}",
            r.j_degree, r.j_kernel, r.j_kernel_order, r.half_degree, r.i_projection, r.i_projection_order, r.order
        ),
    )
}

fn cocycle() -> Result<Outcome> {
    let g = ghat();
    let w = |t: &str| GroupWord::parse(g.alphabet(), t);
    let images: Vec<String> = ["b", "c", "d"].iter().map(|t| Ok(tau(&g, &w(t)?)?.phi)).collect::<Result<_>>()?;
    let k = tau(&g, &commutator(&w("a2")?, &w("b")?))?;
    let r = phi_report(&g, 200, 2024, &[])?;
    let ok = images == ["b", "c", "d"]
        && k.support.len() == 2
        && k.support.iter().all(|(_, h)| h == "b")
        && k.fringe_clean
        && r.homomorphism_failures.is_empty()
        && r.pairs_checked == 200;
    outcome(
        ok,
        format!(
            "φ(b,c,d) = {}, τ([a2,b]) on {:?}, {} of 200 pairs fail",
            images.join(","),
            k.support,
            r.homomorphism_failures.len()
        ),
    )
}

fn abelianization() -> Result<Outcome> {
    let g = galpha(&AlphaSequence::all_sigma())?;
    let r = phi_report(&g, 50, 7, &[])?;
    let u = WindowUniverse::build(&g, 4)?;
    let names = ["x", "y", "b", "c", "d"];
    let mut commuting = 0;
    for (i, x) in names.iter().enumerate() {
        for y in &names[i + 1..] {
            let xy = GroupWord::parse(g.alphabet(), &format!("{x} {y}"))?;
            let yx = GroupWord::parse(g.alphabet(), &format!("{y} {x}"))?;
            commuting += equal(&xy, &yx, &u)? as usize;
        }
    }
    outcome(r.image_order == 16 && commuting == 10, format!("image order {}, {commuting} of 10 pairs commute", r.image_order))
}

fn separation() -> Result<Outcome> {
    let s = separation_experiment(&[], 3, Exec::default())?;
    let row = &s.rows[2];
    let c = constructed_agreement(4, Exec::default())?;
    let ok = s.pass && row.elements == 8 && row.length == 3 * s.m && c.report.agree;
    outcome(
        ok,
        format!(
            "M = {}, γ({}) >= {} certified; radius-{} balls agree for recipe n = {} (smallest agreeing n = {:?})",
            s.m, row.length, row.elements, c.radius, c.recipe_n, c.empirical_n
        ),
    )
}

fn linear_repetitivity() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut ok = true;
    for (system, ambient) in [(grigorchuk(), 14), (ghat(), 12)] {
        let h = check_linrep_hypotheses(&system, 1, 8, 4, 6)?;
        let r = repetitivity(&system, 8, ambient, None, Exec::default())?;
        ok &= h.pass && r.pass;
        parts.push(format!(
            "{}: hypotheses {} (k = {:?}, parts <= {}), L = {:.3}",
            system.id(),
            if h.pass { "hold" } else { "fail" },
            h.recurrence_k,
            h.max_segment_parts,
            r.constant
        ));
    }
    outcome(ok, parts.join("; "))
}

fn property_suite() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut ok = true;
    for s in [grigorchuk(), ghat()] {
        let t = theorem_hypothesis_check(&s, 8)?;
        ok &= t.pass;
        notes.push(format!("{} symmetric flanks {}", s.id(), t.common_flanks.len()));
    }
    let sigma = galpha(&AlphaSequence::all_sigma())?;
    for s in [grigorchuk(), ghat(), sigma.clone()] {
        let m = minimality_witness(&s, 3, 16)?;
        ok &= m.is_some();
        notes.push(format!("{} minimality m(3) = {m:?}", s.id()));
    }
    let g = ghat();
    let words: Vec<GroupWord> =
        ["1", "a0", "a1", "a2", "a0 a1"].iter().map(|t| GroupWord::parse(g.alphabet(), t)).collect::<Result<_>>()?;
    let p = parity_embedding_check(&g, 2, &words)?;
    ok &= p.pass;
    notes.push(format!("parity embedding {}", if p.pass { "holds" } else { "fails" }));
    let h1 = verify_hn(&sigma, 1, &HnOptions::default())?;
    ok &= h1.pass;
    notes.push(format!("galpha H1 on J1: {}", h1.j_kernel));
    let stage = ball_agreement(&"x".parse()?, &AlphaSequence::all_sigma(), 6, Exec::default())?;
    ok &= stage.first_disagreement.is_some();
    notes.push(format!("x vs σ separate at radius {:?}", stage.first_disagreement));
    outcome(ok, notes.join("; "))
}

type Criterion = (&'static str, Duration, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("segment fidelity", Duration::from_secs(1), segment_fidelity),
        ("oracle equivalence", Duration::from_secs(600), oracle_equivalence),
        ("dihedral growth", Duration::from_secs(1), dihedral_growth),
        ("torsion certificates", Duration::from_secs(600), torsion),
        ("H2 structure", Duration::from_secs(60), hn_structure),
        ("cocycle certificates", Duration::from_secs(60), cocycle),
        ("abelianization", Duration::from_secs(300), abelianization),
        ("growth separation", Duration::from_secs(600), separation),
        ("repetitivity", Duration::from_secs(300), linear_repetitivity),
        ("property suite", Duration::from_secs(600), property_suite),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(o) => (o.pass && elapsed <= *budget, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += !pass as usize;
        println!(
            "criterion {:>2} {:<22} {} ({:.2}s of {}s): {detail}",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
