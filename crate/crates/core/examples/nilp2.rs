//! Class-2 nilpotent sanity check for the ell=3 commutator-membership
//! claim, done with exact integer linear algebra.
//!
//! In the free class-2 group on the 8 generators, every word maps to a
//! pair (alpha, beta) with alpha in Z^8 (abelianization) and beta in
//! Lambda^2 Z^8 (28 coordinates). The image of the normal closure of
//! fk u k3 meets the commutator part in the lattice
//!     L0 + { 3 * B c : A c = 0 },
//! where A and B stack the alpha/beta columns of the k-words and L0 is
//! spanned by e_i ^ alpha_j (the fk relators and all conjugation
//! corrections). The commutator [z, u1] is trivial in the quotient iff
//! e_z ^ e_u1 lies in that lattice; if it does not, the triviality
//! claim would already fail in this nilpotent quotient.

use num_bigint::BigInt;
use se2kit::abelian::{smith_normal_form, IntMatrix};
use se2kit::cyclo::PrimeContext;
use se2kit::presentation;

const NGEN: usize = 8;
const NL2: usize = 28;

fn pair_index(i: usize, j: usize) -> (usize, i64) {
    // index of e_i ^ e_j in the Lambda^2 basis {e_a ^ e_b : a < b},
    // with the sign that rewrites it into that basis
    assert_ne!(i, j);
    let (a, b, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
    let mut idx = 0;
    for r in 0..a {
        idx += NGEN - 1 - r;
    }
    (idx + (b - a - 1), s)
}

/// (alpha, beta) image of a word in the free class-2 group.
fn class2(ids: &[u16]) -> ([i64; NGEN], [i64; NL2]) {
    let mut alpha = [0i64; NGEN];
    let mut beta = [0i64; NL2];
    for &l in ids {
        let g = (l / 2) as usize;
        let s: i64 = if l % 2 == 0 { 1 } else { -1 };
        for i in 0..NGEN {
            if i != g && alpha[i] != 0 {
                let (idx, sg) = pair_index(i, g);
                beta[idx] += sg * s * alpha[i];
            }
        }
        alpha[g] += s;
    }
    (alpha, beta)
}

fn main() {
    let ctx = PrimeContext::new(3).unwrap();
    let p = presentation::generate(&ctx);
    let fam = presentation::derived_families(&p);
    let nk = fam.k.len();
    let mut alphas = Vec::new();
    let mut betas = Vec::new();
    for w in &fam.k {
        let ids = presentation::word_signed_ids(w);
        let (a, b) = class2(&ids);
        alphas.push(a);
        betas.push(b);
    }

    // integer kernel of A (8 x nk) via SNF transforms: A*V columns past
    // the rank are zero
    let mut adata = Vec::new();
    for i in 0..NGEN {
        for j in 0..nk {
            adata.push(alphas[j][i]);
        }
    }
    let amat = IntMatrix::from_i64(NGEN, nk, &adata);
    let snf_a = smith_normal_form(&amat, true);
    let (_, v) = snf_a.transforms.as_ref().unwrap();
    let rank = snf_a.diag.iter().filter(|d| **d != BigInt::from(0)).count();
    println!("alpha matrix rank = {rank}, kernel dim = {}", nk - rank);

    // candidate lattice columns: L0 (e_i ^ alpha_j) then 3*B*(kernel)
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..nk {
        for i in 0..NGEN {
            let mut col = vec![BigInt::from(0); NL2];
            for t in 0..NGEN {
                if t != i && alphas[j][t] != 0 {
                    let (idx, sg) = pair_index(i, t);
                    // e_i ^ alpha_j = sum_t (alpha_j)_t e_i ^ e_t
                    col[idx] += BigInt::from(-sg * alphas[j][t]);
                }
            }
            if col.iter().any(|x| *x != BigInt::from(0)) {
                cols.push(col);
            }
        }
    }
    for kcol in rank..nk {
        let mut col = vec![BigInt::from(0); NL2];
        for j in 0..nk {
            let c = v.get(j, kcol).clone();
            for t in 0..NL2 {
                col[t] += BigInt::from(3 * betas[j][t]) * &c;
            }
        }
        cols.push(col);
    }
    let ncols = cols.len();
    let mut cdata = Vec::new();
    for t in 0..NL2 {
        for col in &cols {
            cdata.push(col[t].clone());
        }
    }
    let cmat = IntMatrix::new(NL2, ncols, cdata);
    let snf_c = smith_normal_form(&cmat, true);
    let (u, _) = snf_c.transforms.as_ref().unwrap();

    // target vector: e_z ^ e_u1 (generators 0 and 1)
    let (ti, ts) = pair_index(0, 1);
    let mut target = vec![BigInt::from(0); NL2];
    target[ti] = BigInt::from(ts);
    // solvable iff (U*target) is divisible entrywise by the diagonal
    let mut ok = true;
    for i in 0..NL2 {
        let mut uv = BigInt::from(0);
        for j in 0..NL2 {
            uv += u.get(i, j) * &target[j];
        }
        let d = snf_c.diag.get(i).cloned().unwrap_or_else(|| BigInt::from(0));
        if d == BigInt::from(0) {
            if uv != BigInt::from(0) {
                ok = false;
                println!("obstruction in free coordinate {i}: residue {uv}");
            }
        } else if &uv % &d != BigInt::from(0) {
            ok = false;
            println!("obstruction at diagonal {i}: {uv} not divisible by {d}");
        }
    }
    println!(
        "[z,u1] {} the class-2 image of the relator closure",
        if ok { "LIES IN" } else { "IS NOT IN" }
    );
}
