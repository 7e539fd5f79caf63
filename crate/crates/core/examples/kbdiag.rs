//! Diagnostic driver: completes F/(fk u k_ell) for a given prime and
//! prints progress so queue behavior can be observed.

use se2kit::cyclo::PrimeContext;
use se2kit::presentation;
use se2kit::rewrite::{CompletionParams, RewriteSystem};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let ell: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let max_eq: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(500_000);
    let tidy: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let max_rules: usize = args.get(5).and_then(|s| s.parse().ok()).unwrap_or(500_000);
    let ctx = PrimeContext::new(ell).unwrap();
    let p = presentation::generate(&ctx);
    let fam = presentation::derived_families(&p);
    let mut relators = fam.fk.clone();
    relators.extend(fam.k_pow_ell.iter().cloned());
    // optional 5th arg: comma-separated generator permutation, e.g. "7,3,4,5,6,2,0,1"
    let order = args.get(4).filter(|s| s.as_str() != "-").map(|s| {
        let perm: Vec<u32> = s.split(',').map(|t| t.parse().unwrap()).collect();
        se2kit::words::LetterOrder::from_generator_order(p.alphabet(), &perm).unwrap()
    });
    let mut rs = RewriteSystem::from_relator_list(p.alphabet(), &relators, order.as_ref());
    let max_stored_len: usize =
        args.get(6).and_then(|s| s.parse().ok()).unwrap_or(usize::MAX);
    if args.get(7).map(|s| s.as_str()) == Some("fifo") {
        rs.set_fifo(true);
    }
    let mut params = CompletionParams {
        max_equations: max_eq,
        tidy_interval: tidy,
        max_rules,
        max_stored_len,
    };
    let t0 = std::time::Instant::now();
    let targets = presentation::hopf_targets(&p);
    // chunked: after every 25k equations, check whether the Hopf target
    // already certifies and stop early if so
    let cap = max_eq;
    let mut status;
    loop {
        params.max_equations = (rs.stats().equations_processed + 25_000).min(cap);
        status = rs.complete(&params);
        let s = rs.stats();
        let red = rs.reduce(&targets[0].0);
        eprintln!(
            "[{:8.1?}] eq={} rules_added={} active={} todo={} discarded={} |target|={}",
            t0.elapsed(),
            s.equations_processed,
            s.rules_added,
            s.active,
            s.todo,
            s.discarded,
            red.len()
        );
        if red.is_empty() {
            break;
        }
        if rs.probe_trivial(&targets[0].0) {
            eprintln!("  probe certified the target; draining goal equations");
            params.max_equations = rs.stats().equations_processed + 2 * rs.pending_count() + 64;
            status = rs.complete(&params);
            if rs.reduce(&targets[0].0).is_empty() {
                break;
            }
        }
        if status != se2kit::rewrite::CompletionStatus::Bounded(se2kit::rewrite::BoundReason::EquationCap)
            || rs.stats().equations_processed >= cap
        {
            break;
        }
    }
    eprintln!(
        "status={status:?} active_rules={} pending={} eq={}",
        rs.rule_count(),
        rs.pending_count(),
        rs.stats().equations_processed
    );
    for (w, _) in &targets {
        eprintln!("reduce({}) = {}", w.render(), rs.letters().render(&rs.reduce(w)));
    }
    // deep joinability diagnostics: large-fuel search on every split
    // of the target word and of its reduced form
    let inv = |w: &[u16]| -> Vec<u16> {
        w.iter().rev().map(|&l| se2kit::rewrite::LetterSet::inverse(l)).collect()
    };
    let tids: Vec<u16> =
        targets[0].0.letters().iter().map(|l| l.signed_id() as u16).collect();
    let red = rs.reduce_letters(&tids);
    for (label, word) in [("input", &tids), ("reduced", &red)] {
        for i in 1..word.len() {
            let a = &word[..i];
            let binv = inv(&word[i..]);
            let j = rs.joinable(a, &binv, 300_000);
            eprintln!(
                "deep split {label} {i}: {} ~ {} joinable={j}",
                rs.letters().render(a),
                rs.letters().render(&binv)
            );
            if j {
                break;
            }
        }
    }
    let mut rules: Vec<_> = rs.active_rules().collect();
    rules.sort_by_key(|r| r.lhs.len());
    let mut hist = std::collections::BTreeMap::new();
    for r in &rules {
        *hist.entry(r.lhs.len()).or_insert(0usize) += 1;
    }
    eprintln!("lhs length histogram: {hist:?}");
    for r in rules.iter().filter(|r| r.lhs.len() == 10).step_by(500).take(40) {
        eprintln!("  {} -> {}", rs.letters().render(&r.lhs), rs.letters().render(&r.rhs));
    }
}
