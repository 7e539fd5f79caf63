//! Scratch: search for an 8-element sublist e of the ell=3 k-words
//! whose abelianized quotient F/(ff u k3 u e) is trivial.

use se2kit::abelian;
use se2kit::cyclo::PrimeContext;
use se2kit::presentation;
use num_traits::ToPrimitive;

fn main() {
    let ctx = PrimeContext::new(3).unwrap();
    let p = presentation::generate(&ctx);
    let fam = presentation::derived_families(&p);
    let mut ab = fam.ff.clone();
    ab.extend(fam.k_pow_ell.iter().cloned());
    let inv = abelian::abelian_invariants(p.alphabet(), &ab);
    println!(
        "F/(ff u k3): free_rank={} torsion={:?}",
        inv.free_rank,
        inv.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()
    );
    // candidate by analogy with the ell=5 sublist
    let cand: Vec<usize> = vec![3, 4, 10, 11, 17, 18, 19, 20];
    let mut rel = ab.clone();
    for &i in &cand {
        rel.push(fam.k[i - 1].clone());
    }
    let size = abelian::abelian_quotient_size(p.alphabet(), &rel);
    println!("candidate {cand:?}: size={size:?}");
    // exhaustive search over 8-element sublists if needed
    let n = fam.k.len();
    let dim = inv.torsion.len();
    let mut found = 0;
    let mut combo: Vec<usize> = (0..dim).collect();
    loop {
        let mut rel = ab.clone();
        for &i in &combo {
            rel.push(fam.k[i].clone());
        }
        if let Ok(abelian::QuotientSize::Finite(s)) =
            abelian::abelian_quotient_size(p.alphabet(), &rel)
        {
            if s.to_u64() == Some(1) {
                found += 1;
                if found <= 12 {
                    println!("spanning sublist (1-based): {:?}", combo.iter().map(|i| i + 1).collect::<Vec<_>>());
                }
            }
        }
        // next combination
        let mut i = dim;
        loop {
            if i == 0 { println!("total spanning sublists: {found}"); return; }
            i -= 1;
            if combo[i] != i + n - dim { break; }
        }
        combo[i] += 1;
        for j in i + 1..dim { combo[j] = combo[j - 1] + 1; }
    }
}
