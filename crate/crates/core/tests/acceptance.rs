//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line. The two long-running reproductions (the ell=3
//! completion and the ell=5 n-word certification) are `#[ignore]`d in
//! the default run; execute them with `cargo test --test acceptance --
//! --ignored`.

use std::process::Command;

use se2kit::abelian;
use se2kit::bar;
use se2kit::cyclo::{self, PrimeContext};
use se2kit::presentation;
use se2kit::rewrite::{CompletionParams, CompletionStatus, RewriteSystem};
use se2kit::verify::{self, Conclusion, VerifyParams};
use se2kit::words::{Alphabet, Word};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_se2kit"))
}

fn report(criterion: &str, ok: bool) {
    println!("{} criterion {criterion}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {criterion} failed");
}

fn normalize(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(""))
        .filter(|l| !l.is_empty())
        .collect()
}

/// Relator lines of a presentation file, whitespace-normalized.
fn relator_lines(text: &str) -> Vec<String> {
    normalize(text)
        .into_iter()
        .filter_map(|l| l.strip_prefix("relator").map(str::to_string))
        .collect()
}

#[test]
fn criterion_01_presentation_fidelity() {
    let mut ok = true;
    for (ell, golden, n_gens, n_rel) in [
        (3u64, include_str!("data/ell3_k.txt"), 8usize, 21usize),
        (5, include_str!("data/ell5_k.txt"), 11, 39),
    ] {
        let out = bin().args(["gen", "--ell", &ell.to_string()]).output().unwrap();
        ok &= out.status.success();
        let text = String::from_utf8(out.stdout).unwrap();
        let got = relator_lines(&text);
        let want = normalize(golden);
        ok &= got == want && got.len() == n_rel;
        ok &= normalize(&text)
            .iter()
            .find(|l| l.starts_with("generators"))
            .is_some_and(|l| l.trim_start_matches("generators").len() >= n_gens);
    }
    report("1 (presentation fidelity vs golden files)", ok);
}

#[test]
fn criterion_02_count_formula() {
    let mut ok = true;
    for ell in [3u64, 5, 7, 11, 13] {
        let ctx = PrimeContext::new(ell).unwrap();
        let p = presentation::generate(&ctx);
        let r = ctx.r;
        // 6 + 6.5r + 2.5r^2 + 2^r, integral for all r
        let expected = (12 + 13 * r + 5 * r * r) / 2 + (1u64 << r);
        ok &= (12 + 13 * r + 5 * r * r) % 2 == 0;
        ok &= p.main_relator_count() as u64 == expected;
    }
    report("2 (main-relator count formula)", ok);
}

#[test]
#[ignore = "long-running: full ell=3 Knuth-Bendix reproduction"]
fn criterion_03_ell3_reproduction() {
    let rep = verify::verify_ell3(&VerifyParams::default());
    let ok = matches!(rep.conclusion, Conclusion::CommutatorMembershipCertified(_));
    println!("{}", rep.render_human());
    report("3 (ell=3 commutator membership certificate)", ok);
}

#[test]
#[ignore = "long-running: full ell=5 n-word certification"]
fn criterion_04a_ell5_n_words_and_certificate() {
    let rep = verify::verify_ell5(&VerifyParams::default());
    let ok = rep.conclusion == Conclusion::H2TrivialCertified;
    println!("{}", rep.render_human());
    report("4a/4d (ell=5 n-words trivial, H2 certificate)", ok);
}

#[test]
fn criterion_04bc_ell5_abelian_steps() {
    let ctx = PrimeContext::new(5).unwrap();
    let p = presentation::generate(&ctx);
    let fam = presentation::derived_families(&p);
    let (e_words, _) = presentation::sublist_e(&p).unwrap();

    let mut ab_rel = fam.ff.clone();
    ab_rel.extend(fam.k_pow_ell.iter().cloned());
    let inv = abelian::abelian_invariants(p.alphabet(), &ab_rel);
    let five = num_bigint::BigInt::from(5);
    let b_ok = inv.free_rank == 0
        && inv.torsion.len() == 11
        && inv.torsion.iter().all(|t| *t == five);

    let mut full = ab_rel;
    full.extend(e_words);
    let c_ok = matches!(
        abelian::abelian_quotient_size(p.alphabet(), &full),
        Ok(abelian::QuotientSize::Finite(n)) if n == num_bigint::BigInt::from(1)
    );
    report("4b/4c (ell=5 abelian invariants [5 x 11]; trivial quotient)", b_ok && c_ok);
}

#[test]
fn criterion_05_perfectness() {
    let mut ok = true;
    for ell in [3u64, 5, 7, 11, 13] {
        let ctx = PrimeContext::new(ell).unwrap();
        let p = presentation::generate(&ctx);
        let words: Vec<Word> = p.relator_words().cloned().collect();
        let m = abelian::exponent_matrix(p.alphabet(), &words);
        let snf = abelian::smith_normal_form(&m, false);
        let one = num_bigint::BigInt::from(1);
        let ones = snf.diag.iter().take(p.alphabet().len()).all(|d| *d == one);
        ok &= ones && snf.diag.len() >= p.alphabet().len();
        ok &= abelian::perfectness_check(&p);
    }
    report("5 (perfectness: SNF of exponent matrix is all ones)", ok);
}

#[test]
fn criterion_06_lambda_check() {
    let mut ok = true;
    for ell in [3u64, 5, 7, 11, 13] {
        let ctx = PrimeContext::new(ell).unwrap();
        ok &= cyclo::lambda_check(&ctx);
    }
    report("6 (lambda factorization of ell)", ok);
}

#[test]
fn criterion_07_obstruction_census() {
    let mut ok = true;
    for (ell, expected) in [(3u64, Some(1usize)), (5, Some(4)), (7, Some(12)), (11, None), (13, None)] {
        let ctx = PrimeContext::new(ell).unwrap();
        let count = bar::obstruction_count(&ctx);
        ok &= bar::enumerate_obstructions(&ctx).len() == count;
        if let Some(e) = expected {
            ok &= count == e;
        }
    }
    report("7 (etale obstruction census 1/4/12)", ok);
}

#[test]
fn criterion_08_bar_identities() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(97);
    let groups = [
        bar::AbGroup::new(vec![3], 0),
        bar::AbGroup::new(vec![27], 0),
        bar::AbGroup::new(vec![5, 5], 0),
        bar::AbGroup::new(vec![2, 2], 1),
        bar::AbGroup::new(vec![3, 3, 3], 0),
    ];
    let mut ok = true;
    let rand_chain = |g: &bar::AbGroup, m: u64, deg: usize, rng: &mut rand_chacha::ChaCha8Rng| {
        let mut c = bar::BarChain::zero(g, m, deg);
        for _ in 0..3 {
            let tuple: Vec<Vec<i64>> = (0..deg)
                .map(|_| g.reduce(&(0..g.rank()).map(|_| rng.gen_range(-3i64..4)).collect()))
                .collect();
            c = c
                .add(&bar::BarChain::generator(g, m, &tuple, rng.gen_range(-2i64..3)))
                .unwrap();
        }
        c
    };
    // dd = 0 on 1000 random chains
    for trial in 0..1000 {
        let g = &groups[trial % groups.len()];
        let m = [0u64, 3, 5][trial % 3];
        let c = rand_chain(g, m, 1 + trial % 3, &mut rng);
        ok &= bar::boundary(&bar::boundary(&c)).is_zero();
    }
    // graded commutativity, associativity, Leibniz
    for trial in 0..100 {
        let g = &groups[trial % groups.len()];
        let m = [0u64, 3, 5][trial % 3];
        let (p, q) = (1 + trial % 2, 1 + (trial / 2) % 2);
        let a = rand_chain(g, m, p, &mut rng);
        let b = rand_chain(g, m, q, &mut rng);
        let c = rand_chain(g, m, 1, &mut rng);
        let ab = bar::shuffle(&a, &b).unwrap();
        let sign = if (p * q) % 2 == 0 { 1 } else { -1 };
        ok &= ab == bar::shuffle(&b, &a).unwrap().scale(sign);
        ok &= bar::shuffle(&ab, &c).unwrap()
            == bar::shuffle(&a, &bar::shuffle(&b, &c).unwrap()).unwrap();
        let dsign = if p % 2 == 0 { 1 } else { -1 };
        ok &= bar::boundary(&ab)
            == bar::shuffle(&bar::boundary(&a), &b)
                .unwrap()
                .add(&bar::shuffle(&a, &bar::boundary(&b)).unwrap().scale(dsign))
                .unwrap();
    }
    // binomial identity for s+i <= 6 and the integral boundary formula
    for ell in [3u64, 5] {
        let ctx = PrimeContext::new(ell).unwrap();
        let g = bar::se2_cycle_group(&ctx);
        let z = g.generator(0);
        for s in 0..=6usize {
            for i in 0..=(6 - s) {
                ok &= bar::divided_power_product_check(&g, &z, s, i, ell, ell).unwrap();
            }
        }
        for s in 1..=3usize {
            let lhs = bar::boundary(&bar::divided_power(&g, &z, s, ell, 0).unwrap());
            let zc = bar::BarChain::generator(&g, 0, &[z.clone()], 1);
            let rhs = bar::shuffle(&bar::divided_power(&g, &z, s - 1, ell, 0).unwrap(), &zc)
                .unwrap()
                .scale(ell as i64);
            ok &= lhs == rhs;
        }
        for cyc in bar::se2_obstruction_cycles(&ctx) {
            ok &= bar::boundary(&cyc.chain).is_zero();
        }
    }
    report("8 (bar-complex identities)", ok);
}

#[test]
fn criterion_09_rewriting_oracles() {
    let mut ok = true;
    // brute-force group orders from concrete models
    for n in 2..=12usize {
        ok &= brute_force_order(&[cyclic_perm(n)]) == n;
        let mut rs = complete_presentation(&["g"], &[&format!("g^{n}")]);
        ok &= rs.0 == CompletionStatus::Confluent && rs.1.count_irreducible(10_000) == Some(n);
        let _ = &mut rs;
    }
    let klein = brute_force_order(&[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]);
    let (st, rs) = complete_presentation(&["a", "b"], &["a^2", "b^2", "a*b*a^-1*b^-1"]);
    ok &= st == CompletionStatus::Confluent && rs.count_irreducible(100) == Some(klein) && klein == 4;

    let s3 = brute_force_order(&[vec![1, 0, 2], vec![0, 2, 1]]);
    let (st, rs) = complete_presentation(&["a", "b"], &["a^2", "b^2", "(a*b)^3"]);
    ok &= st == CompletionStatus::Confluent && rs.count_irreducible(100) == Some(s3) && s3 == 6;

    let d4 = brute_force_order(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]);
    let (st, rs) = complete_presentation(&["r", "s"], &["r^4", "s^2", "(r*s)^2"]);
    ok &= st == CompletionStatus::Confluent && rs.count_irreducible(100) == Some(d4) && d4 == 8;

    report("9 (rewriting oracles vs brute-force group orders)", ok);
}

#[test]
fn criterion_10_determinism_and_persistence() {
    // two verify-h2 runs, byte-identical machine sections
    let run = || {
        bin()
            .args(["verify-h2", "--ell", "3", "--max-rules", "50", "--max-equations", "2000"])
            .output()
            .unwrap()
    };
    let (o1, o2) = (run(), run());
    let machine = |out: &std::process::Output| {
        let text = String::from_utf8_lossy(&out.stdout).to_string();
        text.split("---\n").nth(1).map(str::to_string)
    };
    let m1 = machine(&o1);
    let mut ok = m1.is_some() && m1 == machine(&o2);
    ok &= o1.status.code() == Some(2); // inconclusive under tiny caps

    // checkpoint/resume mid-completion reproduces the uninterrupted rules
    let alpha = Alphabet::new(["a", "b"]).unwrap();
    let words: Vec<Word> = ["a^2", "b^2", "(a*b)^3"]
        .iter()
        .map(|r| se2kit::io::parse_word(&alpha, r).unwrap())
        .collect();
    let params = CompletionParams::default();
    let mut straight = RewriteSystem::from_relator_list(&alpha, &words, None);
    ok &= straight.complete(&params) == CompletionStatus::Confluent;

    let mut interrupted = RewriteSystem::from_relator_list(&alpha, &words, None);
    let st = interrupted.complete_with_stop(&params, |s| s.rules_added >= 8);
    ok &= matches!(st, CompletionStatus::Interrupted(_));
    let mut resumed = RewriteSystem::restore(&interrupted.checkpoint()).unwrap();
    ok &= resumed.complete(&params) == CompletionStatus::Confluent;
    let rule_set = |rs: &RewriteSystem| {
        let mut v: Vec<_> = rs.active_rules().map(|r| (r.lhs.clone(), r.rhs.clone())).collect();
        v.sort();
        v
    };
    ok &= rule_set(&straight) == rule_set(&resumed);

    report("10 (determinism and checkpoint persistence)", ok);
}

fn complete_presentation(
    gens: &[&str],
    relators: &[&str],
) -> (CompletionStatus, RewriteSystem) {
    let alpha = Alphabet::new(gens.iter().copied()).unwrap();
    let words: Vec<Word> = relators
        .iter()
        .map(|r| se2kit::io::parse_word(&alpha, r).unwrap())
        .collect();
    let mut rs = RewriteSystem::from_relator_list(&alpha, &words, None);
    let status = rs.complete(&CompletionParams::default());
    (status, rs)
}

fn cyclic_perm(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

/// Order of the permutation group generated by `gens`, by brute-force
/// closure under the multiplication table.
fn brute_force_order(gens: &[Vec<usize>]) -> usize {
    use std::collections::HashSet;
    let n = gens[0].len();
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut frontier = vec![id];
    seen.insert(frontier[0].clone());
    while let Some(g) = frontier.pop() {
        for h in gens {
            let prod: Vec<usize> = (0..n).map(|i| g[h[i]]).collect();
            if seen.insert(prod.clone()) {
                frontier.push(prod);
            }
        }
    }
    seen.len()
}
