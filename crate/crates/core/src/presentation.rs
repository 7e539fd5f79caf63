//! Generator for the finite presentation of `SE2(l)` in its expanded
//! form (with the `b_t` and `w` as extra generators plus definitional
//! relators) and canonical relator order, together with the derived
//! relator families used by the verification pipelines.

use std::sync::Arc;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::cyclo::{self, PrimeContext};
use crate::words::{Alphabet, Letter, LetterOrder, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("the e/n sublist split is only defined for l = 5, got l = {0}")]
    SublistUnsupported(u64),
    #[error("reduced_form requires an expanded presentation")]
    NotExpanded,
}

/// Relator family tags in canonical emission order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `b_t^-1 z^{rt} b z^{rt} a` for `t = 0..=2r`
    DefB,
    /// `w^-1 z^c u_1...u_r`
    DefW,
    /// `z^l`, `[z,u_i]`, `[u_i,u_j]`
    Units,
    /// `a^4`, `[a^2,z]`, `[a^2,u_i]`
    Aa,
    /// `z a z a^-1`, `u_i a u_i a^-1`
    Absorb,
    /// `[b_s,b_t]` for `s < t`
    Bb,
    /// `b^3 a^-2`, `b_0 b_1...b_{2r} a^-2`
    Cyclo,
    /// `b_t^-l w^-1 b_t^{(-1)^r} w`
    Elf,
    /// `c(I)^3` for nonempty `I`
    Cui,
    /// `a^2 b^-1 u_i b z^{-ri} b^-1 b_0^-1 z^{ri} b z^{-i} u_i`
    Last,
}

/// One relator with its family tag. `display` carries a `(base, exp)`
/// pair when the relator is rendered as a parenthesized power, matching
/// the `(...)^3` form of the `Cui` family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    pub word: Word,
    pub family: Family,
    display: Option<(Word, i64)>,
}

impl Relator {
    fn plain(word: Word, family: Family) -> Self {
        Relator { word, family, display: None }
    }

    pub fn render(&self) -> String {
        match &self.display {
            Some((base, exp)) => format!("({})^{}", base.render(), exp),
            None => self.word.render(),
        }
    }
}

/// A parsed presentation file: alphabet, relators, optional ranking
/// override.
#[derive(Debug, Clone)]
pub struct PresentationFile {
    pub alphabet: Arc<Alphabet>,
    pub relators: Vec<Word>,
    pub order: Option<LetterOrder>,
}

/// Named generator list plus ordered, family-tagged relator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    ctx: PrimeContext,
    alphabet: Arc<Alphabet>,
    relators: Vec<Relator>,
    expanded: bool,
}

/// Relator families derived from the canonical list `k`: the `l`-th
/// powers, the generator-relator commutators, and the pairwise
/// generator commutators.
#[derive(Debug, Clone)]
pub struct DerivedFamilies {
    pub k: Vec<Word>,
    pub k_pow_ell: Vec<Word>,
    pub fk: Vec<Word>,
    pub ff: Vec<Word>,
}

impl Presentation {
    pub fn context(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn relator_words(&self) -> impl Iterator<Item = &Word> {
        self.relators.iter().map(|r| &r.word)
    }

    pub fn is_expanded(&self) -> bool {
        self.expanded
    }

    /// Relator count excluding the definitional `DefB`/`DefW` families.
    pub fn main_relator_count(&self) -> usize {
        self.relators
            .iter()
            .filter(|r| !matches!(r.family, Family::DefB | Family::DefW))
            .count()
    }

    pub fn serialize(&self) -> String {
        crate::io::serialize_presentation_file(
            &self.alphabet,
            self.relators.iter().map(|r| r.render()),
        )
    }
}

struct Builder {
    ctx: PrimeContext,
    alphabet: Arc<Alphabet>,
}

impl Builder {
    fn gen(&self, idx: u32) -> Word {
        Word::generator(&self.alphabet, idx).unwrap()
    }

    fn z(&self) -> Word {
        self.gen(0)
    }

    fn u(&self, i: u64) -> Word {
        debug_assert!(1 <= i && i <= self.ctx.r);
        self.gen(i as u32)
    }

    fn a(&self) -> Word {
        self.gen(self.ctx.r as u32 + 1)
    }

    fn b(&self) -> Word {
        self.gen(self.ctx.r as u32 + 2)
    }

    fn bt(&self, t: u64) -> Word {
        debug_assert!(t <= 2 * self.ctx.r);
        self.gen((self.ctx.r + 3 + t) as u32)
    }

    fn w(&self) -> Word {
        self.gen((3 * self.ctx.r + 4) as u32)
    }

    /// `z^e` with `e` already reduced to `0..l`.
    fn z_pow(&self, e: u64) -> Word {
        self.z().power(e as i64)
    }

    fn product(&self, parts: impl IntoIterator<Item = Word>) -> Word {
        let mut out = Word::identity(&self.alphabet);
        for p in parts {
            out = out.concat(&p).unwrap();
        }
        out
    }
}

/// Subsets of `{1..=r}` ordered by cardinality, then lexicographically.
pub fn cui_subsets(r: u64) -> Vec<Vec<u64>> {
    let mut subsets: Vec<Vec<u64>> = Vec::new();
    for mask in 1u64..(1 << r) {
        let set: Vec<u64> = (1..=r).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        subsets.push(set);
    }
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
}

/// The expanded `SE2(l)` presentation: `3r + 5` generators named
/// `z, u1..ur, a, b, b0..b{2r}, w`, relators in canonical family order.
pub fn generate(ctx: &PrimeContext) -> Presentation {
    let (ell, r) = (ctx.ell, ctx.r);
    let mut names: Vec<String> = vec!["z".to_string()];
    names.extend((1..=r).map(|i| format!("u{i}")));
    names.push("a".into());
    names.push("b".into());
    names.extend((0..=2 * r).map(|t| format!("b{t}")));
    names.push("w".into());
    let alphabet = Alphabet::new(names).unwrap();
    let b = Builder { ctx: *ctx, alphabet };

    let mut relators: Vec<Relator> = Vec::new();

    // definitional relators
    for t in 0..=2 * r {
        let zr = b.z_pow((r * t) % ell);
        let word = b.product([b.bt(t).invert(), zr.clone(), b.b(), zr, b.a()]);
        relators.push(Relator::plain(word, Family::DefB));
    }
    let c = cyclo::smallest_c(ctx);
    let word = b.product(
        [b.w().invert(), b.z_pow(c)]
            .into_iter()
            .chain((1..=r).map(|i| b.u(i))),
    );
    relators.push(Relator::plain(word, Family::DefW));

    // units
    relators.push(Relator::plain(b.z().power(ell as i64), Family::Units));
    for i in 1..=r {
        relators.push(Relator::plain(b.z().commutator(&b.u(i)).unwrap(), Family::Units));
    }
    for i in 1..=r {
        for j in i + 1..=r {
            relators.push(Relator::plain(b.u(i).commutator(&b.u(j)).unwrap(), Family::Units));
        }
    }

    // a^4 block
    relators.push(Relator::plain(b.a().power(4), Family::Aa));
    let a2 = b.a().power(2);
    relators.push(Relator::plain(a2.commutator(&b.z()).unwrap(), Family::Aa));
    for i in 1..=r {
        relators.push(Relator::plain(a2.commutator(&b.u(i)).unwrap(), Family::Aa));
    }

    // absorption
    relators.push(Relator::plain(
        b.product([b.z(), b.a(), b.z(), b.a().invert()]),
        Family::Absorb,
    ));
    for i in 1..=r {
        relators.push(Relator::plain(
            b.product([b.u(i), b.a(), b.u(i), b.a().invert()]),
            Family::Absorb,
        ));
    }

    // commuting b_t
    for s in 0..=2 * r {
        for t in s + 1..=2 * r {
            relators.push(Relator::plain(b.bt(s).commutator(&b.bt(t)).unwrap(), Family::Bb));
        }
    }

    // cyclotomic identities
    relators.push(Relator::plain(
        b.product([b.b().power(3), b.a().power(-2)]),
        Family::Cyclo,
    ));
    relators.push(Relator::plain(
        b.product((0..=2 * r).map(|t| b.bt(t)).chain([b.a().power(-2)])),
        Family::Cyclo,
    ));

    // l-th power twist: b_t^-l w^-1 b_t^{(-1)^r} w
    let bt_sign: i64 = if r % 2 == 0 { 1 } else { -1 };
    for t in 0..=2 * r {
        let word = b.product([
            b.bt(t).power(-(ell as i64)),
            b.w().invert(),
            b.bt(t).power(bt_sign),
            b.w(),
        ]);
        relators.push(Relator::plain(word, Family::Elf));
    }

    // cubes of the c(I) words
    for set in cui_subsets(r) {
        let coeffs = cyclo::c_coeffs(ctx, &set).unwrap();
        let mut parts: Vec<Word> = Vec::new();
        for (t, coeff) in coeffs.iter().enumerate() {
            let e = coeff.to_i64().expect("c_t(I) fits in i64");
            if e != 0 {
                parts.push(b.bt(t as u64).power(e));
            }
        }
        parts.push(b.a().invert());
        parts.extend(set.iter().map(|&i| b.u(i)));
        let base = b.product(parts);
        let word = base.power(3);
        relators.push(Relator { word, family: Family::Cui, display: Some((base, 3)) });
    }

    // last family, in the scripts' a^2 b^-1 u_i ... form
    for i in 1..=r {
        let m = |x: i64| x.rem_euclid(ell as i64) as u64;
        let word = b.product([
            b.a().power(2),
            b.b().invert(),
            b.u(i),
            b.b(),
            b.z_pow(m(-((r * i) as i64))),
            b.b().invert(),
            b.bt(0).invert(),
            b.z_pow(m((r * i) as i64)),
            b.b(),
            b.z_pow(m(-(i as i64))),
            b.u(i),
        ]);
        relators.push(Relator::plain(word, Family::Last));
    }

    Presentation { ctx: *ctx, alphabet: b.alphabet, relators, expanded: true }
}

/// Eliminates the `b_t` and `w` generators by substituting their
/// definitions into all main relators; `r + 3` generators.
pub fn reduced_form(p: &Presentation) -> Result<Presentation, PresentationError> {
    if !p.expanded {
        return Err(PresentationError::NotExpanded);
    }
    let ctx = p.ctx;
    let (ell, r) = (ctx.ell, ctx.r);
    let mut names: Vec<String> = vec!["z".to_string()];
    names.extend((1..=r).map(|i| format!("u{i}")));
    names.push("a".into());
    names.push("b".into());
    let alphabet = Alphabet::new(names).unwrap();
    let b = Builder { ctx, alphabet };

    // substitution images of the expanded generators
    let n_kept = (r + 3) as u32;
    let mut images: Vec<Word> = (0..n_kept).map(|i| b.gen(i)).collect();
    for t in 0..=2 * r {
        let zr = b.z_pow((r * t) % ell);
        images.push(b.product([zr.clone(), b.b(), zr, b.a()]));
    }
    let c = cyclo::smallest_c(&ctx);
    images.push(b.product([b.z_pow(c)].into_iter().chain((1..=r).map(|i| b.u(i)))));

    let mut relators = Vec::new();
    for rel in &p.relators {
        if matches!(rel.family, Family::DefB | Family::DefW) {
            continue;
        }
        let mut word = Word::identity(&b.alphabet);
        for l in rel.word.letters() {
            let img = &images[l.gen as usize];
            let img = if l.inverse { img.invert() } else { img.clone() };
            word = word.concat(&img).unwrap();
        }
        relators.push(Relator::plain(word, rel.family));
    }
    Ok(Presentation { ctx, alphabet: b.alphabet, relators, expanded: false })
}

/// The families `k`, `k^l`, `[f, k]` (generator-major), and `[f, f]`.
pub fn derived_families(p: &Presentation) -> DerivedFamilies {
    let k: Vec<Word> = p.relator_words().cloned().collect();
    let ell = p.ctx.ell as i64;
    let k_pow_ell = k.iter().map(|w| w.power(ell)).collect();
    let gens: Vec<Word> = (0..p.alphabet.len() as u32)
        .map(|i| Word::generator(&p.alphabet, i).unwrap())
        .collect();
    let mut fk = Vec::with_capacity(gens.len() * k.len());
    for g in &gens {
        for rel in &k {
            fk.push(g.commutator(rel).unwrap());
        }
    }
    let mut ff = Vec::new();
    for (i, gi) in gens.iter().enumerate() {
        for gj in &gens[i + 1..] {
            ff.push(gi.commutator(gj).unwrap());
        }
    }
    DerivedFamilies { k, k_pow_ell, fk, ff }
}

/// 1-based positions in the canonical `l = 5` list of the generating
/// sublist `e` and its complement `n`, in the order the complement is
/// consumed downstream.
pub const ELL5_E_INDICES: [usize; 11] = [5, 6, 15, 16, 17, 30, 31, 32, 33, 34, 37];
pub const ELL5_N_INDICES: [usize; 28] = [
    1, 2, 3, 4, 7, 8, 9, 10, 11, 12, 13, 14, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29,
    35, 36, 39, 38,
];

/// Splits the canonical `l = 5` relator list into the generating
/// sublist `e` and the complementary list `n`.
pub fn sublist_e(p: &Presentation) -> Result<(Vec<Word>, Vec<Word>), PresentationError> {
    if p.ctx.ell != 5 {
        return Err(PresentationError::SublistUnsupported(p.ctx.ell));
    }
    let k: Vec<&Word> = p.relator_words().collect();
    let e = ELL5_E_INDICES.iter().map(|&i| k[i - 1].clone()).collect();
    let n = ELL5_N_INDICES.iter().map(|&i| k[i - 1].clone()).collect();
    Ok((e, n))
}

/// All commutators `[e1, e2]` over unordered pairs of distinct elements
/// of `{z, u1..ur}`, each with its 0-based position in the canonical
/// relator list when it coincides with a relator.
pub fn hopf_targets(p: &Presentation) -> Vec<(Word, Option<usize>)> {
    let gens: Vec<Word> = (0..=p.ctx.r as u32)
        .map(|i| Word::generator(&p.alphabet, i).unwrap())
        .collect();
    let k: Vec<&Word> = p.relator_words().collect();
    let mut out = Vec::new();
    for (i, gi) in gens.iter().enumerate() {
        for gj in &gens[i + 1..] {
            let c = gi.commutator(gj).unwrap();
            let pos = k.iter().position(|w| **w == c);
            out.push((c, pos));
        }
    }
    out
}

/// Letters of a word over the doubled alphabet, for handoff to the
/// rewriting engine.
pub fn word_signed_ids(w: &Word) -> Vec<u16> {
    w.letters().iter().map(|l| l.signed_id() as u16).collect()
}

#[allow(dead_code)]
fn _letter_assert(l: Letter) -> usize {
    l.signed_id()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(ell: u64) -> PrimeContext {
        PrimeContext::new(ell).unwrap()
    }

    #[test]
    fn ell3_shape() {
        let p = generate(&ctx(3));
        assert_eq!(p.alphabet().len(), 8);
        assert_eq!(p.relators().len(), 21);
        assert_eq!(p.main_relator_count(), 17);
        assert_eq!(
            p.alphabet().names(),
            ["z", "u1", "a", "b", "b0", "b1", "b2", "w"].map(String::from)
        );
    }

    #[test]
    fn ell3_first_relators_render() {
        let p = generate(&ctx(3));
        let rendered: Vec<String> = p.relators().iter().map(|r| r.render()).collect();
        assert_eq!(rendered[0], "b0^-1*b*a");
        assert_eq!(rendered[1], "b1^-1*z*b*z*a");
        assert_eq!(rendered[2], "b2^-1*z^2*b*z^2*a");
        assert_eq!(rendered[3], "w^-1*z*u1");
        assert_eq!(rendered[4], "z^3");
        assert_eq!(rendered[19], "(b0*b1^-1*a^-1*u1)^3");
        assert_eq!(rendered[20], "a^2*b^-1*u1*b*z^2*b^-1*b0^-1*z*b*z^2*u1");
    }

    #[test]
    fn ell5_shape() {
        let p = generate(&ctx(5));
        assert_eq!(p.alphabet().len(), 11);
        assert_eq!(p.relators().len(), 39);
        assert_eq!(p.main_relator_count(), 33);
        let rendered: Vec<String> = p.relators().iter().map(|r| r.render()).collect();
        assert_eq!(rendered[36], "(b0*b1^-1*b2^-1*b3*a^-1*u1*u2)^3");
    }

    #[test]
    fn ell7_counts_match_formula() {
        let p = generate(&ctx(7));
        assert_eq!(p.alphabet().len(), 14);
        // 6 + 6.5r + 2.5r^2 + 2^r at r = 3
        assert_eq!(p.main_relator_count(), 56);
        assert_eq!(p.relators().len(), 64);
    }

    #[test]
    fn main_count_formula_is_integral() {
        for ell in [3u64, 5, 7, 11, 13] {
            let c = ctx(ell);
            let r = c.r;
            let expected = (12 + 13 * r + 5 * r * r) / 2 + (1 << r);
            assert_eq!((12 + 13 * r + 5 * r * r) % 2, 0);
            assert_eq!(generate(&c).main_relator_count() as u64, expected, "l = {ell}");
        }
    }

    #[test]
    fn elf_sign_depends_on_parity_of_r() {
        let p3 = generate(&ctx(3));
        let r17: Vec<String> = p3.relators().iter().map(|r| r.render()).collect();
        assert_eq!(r17[16], "b0^-3*w^-1*b0^-1*w");
        let p5 = generate(&ctx(5));
        let r5: Vec<String> = p5.relators().iter().map(|r| r.render()).collect();
        assert_eq!(r5[29], "b0^-5*w^-1*b0*w");
    }

    #[test]
    fn reduced_form_counts() {
        let p3 = reduced_form(&generate(&ctx(3))).unwrap();
        assert_eq!(p3.alphabet().len(), 4);
        assert_eq!(p3.relators().len(), 17);
        let p5 = reduced_form(&generate(&ctx(5))).unwrap();
        assert_eq!(p5.alphabet().len(), 5);
        assert_eq!(p5.relators().len(), 33);
    }

    #[test]
    fn reduced_form_same_abelianization() {
        // substitute-then-abelianize agrees with abelianize-then-eliminate
        for ell in [3u64, 5] {
            let p = generate(&ctx(ell));
            let red = reduced_form(&p).unwrap();
            let red_words: Vec<Word> = red.relator_words().cloned().collect();
            let inv_red = crate::abelian::abelian_invariants(red.alphabet(), &red_words);
            let exp_words: Vec<Word> = p.relator_words().cloned().collect();
            let inv_exp = crate::abelian::abelian_invariants(p.alphabet(), &exp_words);
            // both presentations present the same group, so the
            // abelianizations coincide
            assert_eq!(inv_red, inv_exp);
        }
    }

    #[test]
    fn derived_family_sizes() {
        let p3 = generate(&ctx(3));
        let d3 = derived_families(&p3);
        assert_eq!(d3.fk.len(), 8 * 21);
        assert_eq!(d3.ff.len(), 8 * 7 / 2);
        // k3[6] (1-based) is ([z,u1])^3
        let alpha = p3.alphabet();
        let z = Word::generator(alpha, 0).unwrap();
        let u1 = Word::generator(alpha, 1).unwrap();
        assert_eq!(d3.k_pow_ell[5], z.commutator(&u1).unwrap().power(3));

        let p5 = generate(&ctx(5));
        let d5 = derived_families(&p5);
        assert_eq!(d5.ff.len(), 11 * 10 / 2);
        assert_eq!(d5.fk.len(), 11 * 39);
    }

    #[test]
    fn ell5_sublists() {
        let p = generate(&ctx(5));
        let (e, n) = sublist_e(&p).unwrap();
        assert_eq!(e.len(), 11);
        assert_eq!(n.len(), 28);
        assert_eq!(e[0].render(), "b4^-1*z^3*b*z^3*a");
        assert_eq!(e[1].render(), "w^-1*z*u1*u2");
        assert!(sublist_e(&generate(&ctx(3))).is_err());
    }

    #[test]
    fn hopf_target_positions() {
        let p3 = generate(&ctx(3));
        let t3 = hopf_targets(&p3);
        assert_eq!(t3.len(), 1);
        assert_eq!(t3[0].1, Some(5)); // k[6] 1-based
        assert_eq!(t3[0].0.render(), "z*u1*z^-1*u1^-1");

        let p5 = generate(&ctx(5));
        let t5 = hopf_targets(&p5);
        assert_eq!(t5.len(), 3);
        let positions: Vec<Option<usize>> = t5.iter().map(|(_, p)| *p).collect();
        assert_eq!(positions, vec![Some(7), Some(8), Some(9)]); // k[8..10] 1-based

        let t7 = hopf_targets(&generate(&ctx(7)));
        assert_eq!(t7.len(), 6);
    }

    #[test]
    fn cui_subset_order_matches_scripts() {
        assert_eq!(cui_subsets(2), vec![vec![1], vec![2], vec![1, 2]]);
        assert_eq!(
            cui_subsets(3),
            vec![
                vec![1],
                vec![2],
                vec![3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
                vec![1, 2, 3]
            ]
        );
    }

    #[test]
    fn serialize_roundtrips_through_parser() {
        for ell in [3u64, 5, 7] {
            let p = generate(&ctx(ell));
            let text = p.serialize();
            let pf = crate::io::parse_presentation_file(&text).unwrap();
            assert_eq!(pf.alphabet.names(), p.alphabet().names());
            let words: Vec<Word> = p.relator_words().cloned().collect();
            assert_eq!(pf.relators, words);
        }
    }
}
