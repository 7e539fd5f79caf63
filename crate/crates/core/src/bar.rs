//! Normalized bar-complex calculus over finitely generated abelian
//! groups with Z/m coefficients (m = 0 means integer coefficients).
//!
//! Chains are sparse maps from tuples of non-identity group elements
//! to coefficients; tuples containing the identity and zero terms are
//! pruned eagerly, so every stored chain is normalized.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cyclo::PrimeContext;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BarError {
    #[error("chains live over different groups")]
    GroupMismatch,
    #[error("chains have different coefficient moduli")]
    ModulusMismatch,
    #[error("chains have different degrees")]
    DegreeMismatch,
    #[error("exterior cycle argument is the identity")]
    IdentityEntry,
    #[error("element does not have order dividing {0}")]
    NotOrderEll(u64),
    #[error("homomorphism shape does not match the groups")]
    BadHomomorphism,
}

/// Finitely generated abelian group: torsion generators first, then
/// free generators. Elements are integer tuples, reduced mod the
/// torsion orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbGroup {
    torsion: Vec<u64>,
    free_rank: usize,
    names: Vec<String>,
}

pub type Elem = Vec<i64>;

impl AbGroup {
    pub fn new(torsion: Vec<u64>, free_rank: usize) -> Self {
        assert!(torsion.iter().all(|&t| t >= 2), "torsion orders must be >= 2");
        let names = (0..torsion.len() + free_rank).map(|i| format!("g{i}")).collect();
        AbGroup { torsion, free_rank, names }
    }

    pub fn with_names(torsion: Vec<u64>, free_rank: usize, names: Vec<String>) -> Self {
        assert_eq!(names.len(), torsion.len() + free_rank);
        let mut g = AbGroup::new(torsion, free_rank);
        g.names = names;
        g
    }

    pub fn rank(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn identity(&self) -> Elem {
        vec![0; self.rank()]
    }

    pub fn generator(&self, i: usize) -> Elem {
        let mut e = self.identity();
        e[i] = 1;
        self.reduce(&e)
    }

    pub fn reduce(&self, e: &Elem) -> Elem {
        assert_eq!(e.len(), self.rank(), "element arity mismatch");
        let mut out = e.clone();
        for (i, &t) in self.torsion.iter().enumerate() {
            out[i] = out[i].rem_euclid(t as i64);
        }
        out
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        self.reduce(&a.iter().map(|x| -x).collect())
    }

    pub fn pow(&self, a: &Elem, k: i64) -> Elem {
        self.reduce(&a.iter().map(|x| x * k).collect())
    }

    pub fn is_identity(&self, a: &Elem) -> bool {
        self.reduce(a).iter().all(|&x| x == 0)
    }

    pub fn render_elem(&self, e: &Elem) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x != 0)
            .map(|(i, &x)| if x == 1 { self.names[i].clone() } else { format!("{}^{}", self.names[i], x) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Homomorphism given by the images of the source generators.
#[derive(Debug, Clone)]
pub struct Hom {
    pub source: AbGroup,
    pub target: AbGroup,
    pub images: Vec<Elem>,
}

impl Hom {
    pub fn new(source: AbGroup, target: AbGroup, images: Vec<Elem>) -> Result<Self, BarError> {
        if images.len() != source.rank() || images.iter().any(|e| e.len() != target.rank()) {
            return Err(BarError::BadHomomorphism);
        }
        // torsion generators must map to elements killed by their order
        for (i, &t) in source.torsion.iter().enumerate() {
            if !target.is_identity(&target.pow(&images[i], t as i64)) {
                return Err(BarError::BadHomomorphism);
            }
        }
        Ok(Hom { source, target, images })
    }

    pub fn identity(group: &AbGroup) -> Self {
        let images = (0..group.rank()).map(|i| group.generator(i)).collect();
        Hom { source: group.clone(), target: group.clone(), images }
    }

    pub fn inversion(group: &AbGroup) -> Self {
        let images = (0..group.rank()).map(|i| group.neg(&group.generator(i))).collect();
        Hom { source: group.clone(), target: group.clone(), images }
    }

    pub fn apply(&self, e: &Elem) -> Elem {
        let mut out = self.target.identity();
        for (i, &c) in e.iter().enumerate() {
            out = self.target.add(&out, &self.target.pow(&self.images[i], c));
        }
        out
    }
}

/// Homogeneous chain in the normalized bar complex of `group` with
/// Z/m coefficients (`modulus` 0 = integral).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarChain {
    group: AbGroup,
    modulus: u64,
    degree: usize,
    terms: BTreeMap<Vec<Elem>, i64>,
}

impl BarChain {
    pub fn zero(group: &AbGroup, modulus: u64, degree: usize) -> Self {
        BarChain { group: group.clone(), modulus, degree, terms: BTreeMap::new() }
    }

    /// The degree-0 generator `[ ]` with coefficient 1.
    pub fn unit(group: &AbGroup, modulus: u64) -> Self {
        let mut c = BarChain::zero(group, modulus, 0);
        c.add_term(Vec::new(), 1);
        c
    }

    /// A single tuple `[x1|...|xs]` with coefficient `k`.
    pub fn generator(group: &AbGroup, modulus: u64, tuple: &[Elem], k: i64) -> Self {
        let mut c = BarChain::zero(group, modulus, tuple.len());
        c.add_term(tuple.to_vec(), k);
        c
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Elem>, i64)> {
        self.terms.iter().map(|(t, &k)| (t, k))
    }

    fn canon_coeff(&self, k: i64) -> i64 {
        if self.modulus == 0 {
            k
        } else {
            k.rem_euclid(self.modulus as i64)
        }
    }

    /// Adds `k * tuple`, normalizing: identity entries kill the term,
    /// and zero coefficients are pruned.
    fn add_term(&mut self, tuple: Vec<Elem>, k: i64) {
        debug_assert_eq!(tuple.len(), self.degree);
        if tuple.iter().any(|e| self.group.is_identity(e)) {
            return;
        }
        let tuple: Vec<Elem> = tuple.iter().map(|e| self.group.reduce(e)).collect();
        let new = self.canon_coeff(self.terms.get(&tuple).copied().unwrap_or(0) + k);
        if new == 0 {
            self.terms.remove(&tuple);
        } else {
            self.terms.insert(tuple, new);
        }
    }

    fn check_compatible(&self, other: &BarChain) -> Result<(), BarError> {
        if self.group != other.group {
            return Err(BarError::GroupMismatch);
        }
        if self.modulus != other.modulus {
            return Err(BarError::ModulusMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &BarChain) -> Result<BarChain, BarError> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(BarError::DegreeMismatch);
        }
        let mut out = self.clone();
        for (t, k) in other.terms() {
            out.add_term(t.clone(), k);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> BarChain {
        let mut out = BarChain::zero(&self.group, self.modulus, self.degree);
        for (t, c) in self.terms() {
            out.add_term(t.clone(), c * k);
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(t, k)| {
                let tuple = t
                    .iter()
                    .map(|e| self.group.render_elem(e))
                    .collect::<Vec<_>>()
                    .join("|");
                format!("{k}*[{tuple}]")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Alternating-sum boundary; the merged term is dropped whenever the
/// product of adjacent entries is the identity (the normalization
/// convention).
pub fn boundary(c: &BarChain) -> BarChain {
    if c.degree == 0 {
        return BarChain::zero(&c.group, c.modulus, 0);
    }
    let mut out = BarChain::zero(&c.group, c.modulus, c.degree - 1);
    for (tuple, k) in c.terms() {
        let s = tuple.len();
        // drop the first entry
        out.add_term(tuple[1..].to_vec(), k);
        // merge adjacent entries
        for j in 0..s - 1 {
            let mut t = Vec::with_capacity(s - 1);
            t.extend_from_slice(&tuple[..j]);
            t.push(c.group.add(&tuple[j], &tuple[j + 1]));
            t.extend_from_slice(&tuple[j + 2..]);
            let sign = if (j + 1) % 2 == 0 { 1 } else { -1 };
            out.add_term(t, sign * k);
        }
        // drop the last entry
        let sign = if s % 2 == 0 { 1 } else { -1 };
        out.add_term(tuple[..s - 1].to_vec(), sign * k);
    }
    out
}

/// Signed sum over all (p,q)-shuffles, extended bilinearly.
pub fn shuffle(c1: &BarChain, c2: &BarChain) -> Result<BarChain, BarError> {
    c1.check_compatible(c2)?;
    let (p, q) = (c1.degree, c2.degree);
    let mut out = BarChain::zero(&c1.group, c1.modulus, p + q);
    for (t1, k1) in c1.terms() {
        for (t2, k2) in c2.terms() {
            for (positions, sign) in shuffles(p, q) {
                let mut tuple: Vec<Elem> = vec![Vec::new(); p + q];
                let mut i1 = 0;
                let mut i2 = 0;
                for (slot, t) in tuple.iter_mut().enumerate() {
                    if positions.contains(&slot) {
                        *t = t1[i1].clone();
                        i1 += 1;
                    } else {
                        *t = t2[i2].clone();
                        i2 += 1;
                    }
                }
                out.add_term(tuple, sign * k1 * k2);
            }
        }
    }
    Ok(out)
}

/// All choices of `p` slots among `p+q`, with the shuffle sign: parity
/// of the number of transpositions needed to unshuffle.
fn shuffles(p: usize, q: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    subsets(0, p + q, p, &mut current, &mut out);
    out
}

fn subsets(start: usize, n: usize, need: usize, current: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i64)>) {
    if need == 0 {
        // inversions: pairs (a-slot, b-slot) with a-slot > b-slot
        let mut inv = 0usize;
        for (i, &s) in current.iter().enumerate() {
            inv += s - i; // number of b-slots before this a-slot
        }
        let sign = if inv % 2 == 0 { 1 } else { -1 };
        out.push((current.clone(), sign));
        return;
    }
    for s in start..=n - need {
        current.push(s);
        subsets(s + 1, n, need - 1, current, out);
        current.pop();
    }
}

/// The divided power `[z]^(s)`: the degree-2s chain
/// `sum_{i_1..i_s in 1..ell-1} [z^{i_1}|z|...|z^{i_s}|z]`.
pub fn divided_power(
    group: &AbGroup,
    zeta: &Elem,
    s: usize,
    ell: u64,
    modulus: u64,
) -> Result<BarChain, BarError> {
    if !group.is_identity(&group.pow(zeta, ell as i64)) {
        return Err(BarError::NotOrderEll(ell));
    }
    if s == 0 {
        return Ok(BarChain::unit(group, modulus));
    }
    let mut out = BarChain::zero(group, modulus, 2 * s);
    let mut exps = vec![1i64; s];
    loop {
        let mut tuple = Vec::with_capacity(2 * s);
        for &i in &exps {
            tuple.push(group.pow(zeta, i));
            tuple.push(zeta.clone());
        }
        out.add_term(tuple, 1);
        // next exponent vector, odometer style
        let mut j = 0;
        loop {
            if j == s {
                return Ok(out);
            }
            exps[j] += 1;
            if exps[j] < ell as i64 {
                break;
            }
            exps[j] = 1;
            j += 1;
        }
    }
}

/// `<x1,...,xi> = [x1] ^ [x2] ^ ... ^ [xi]` (shuffle of degree-1
/// chains); multilinear and skew-symmetric by Eq. of Lemma 2.1.
pub fn exterior_cycle(group: &AbGroup, xs: &[Elem], modulus: u64) -> Result<BarChain, BarError> {
    if xs.iter().any(|x| group.is_identity(x)) {
        return Err(BarError::IdentityEntry);
    }
    let mut out = BarChain::unit(group, modulus);
    for x in xs {
        let next = BarChain::generator(group, modulus, std::slice::from_ref(x), 1);
        out = shuffle(&out, &next)?;
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> i64 {
    let mut b = 1i64;
    for i in 0..k.min(n - k) {
        b = b * (n - i) as i64 / (i + 1) as i64;
    }
    b
}

/// Checks `[z]^(s) ^ [z]^(i) = C(s+i, i) * [z]^(s+i)` by expansion.
pub fn divided_power_product_check(
    group: &AbGroup,
    zeta: &Elem,
    s: usize,
    i: usize,
    ell: u64,
    modulus: u64,
) -> Result<bool, BarError> {
    let a = divided_power(group, zeta, s, ell, modulus)?;
    let b = divided_power(group, zeta, i, ell, modulus)?;
    let prod = shuffle(&a, &b)?;
    let rhs = divided_power(group, zeta, s + i, ell, modulus)?.scale(binomial(s + i, i));
    Ok(prod == rhs)
}

/// Applies the homomorphism entrywise and renormalizes (tuples that
/// acquire an identity entry are dropped); commutes with `boundary`.
pub fn chain_map(hom: &Hom, c: &BarChain) -> BarChain {
    let mut out = BarChain::zero(&hom.target, c.modulus, c.degree);
    for (tuple, k) in c.terms() {
        let mapped: Vec<Elem> = tuple.iter().map(|e| hom.apply(e)).collect();
        out.add_term(mapped, k);
    }
    out
}

/// An etale obstruction class: a pair (s, subset of the r+1 unit
/// indices) with |subset| = s + 2j for an integer j > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionClass {
    pub s: usize,
    pub subset: Vec<usize>,
    pub degree: usize,
    pub weight: usize,
}

/// All obstruction classes, ordered by degree, then s, then subset.
pub fn enumerate_obstructions(ctx: &PrimeContext) -> Vec<ObstructionClass> {
    let n = ctx.r as usize + 1;
    let mut out = Vec::new();
    for mask in 1u64..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&b| mask >> b & 1 == 1).collect();
        let i = subset.len();
        if i < 2 {
            continue;
        }
        // s with s = i - 2j, j > 0
        let mut s = i % 2;
        while s + 2 <= i {
            let j = (i - s) / 2;
            out.push(ObstructionClass { s, subset: subset.clone(), degree: 3 * s + 2 * j, weight: s + i });
            s += 2;
        }
    }
    out.sort_by(|a, b| {
        a.degree
            .cmp(&b.degree)
            .then(a.s.cmp(&b.s))
            .then(a.subset.cmp(&b.subset))
    });
    out
}

/// Closed-form count: e = sum_{i=2}^{r+1} floor(i/2) * C(r+1, i).
pub fn obstruction_count(ctx: &PrimeContext) -> usize {
    let n = ctx.r as usize + 1;
    (2..=n).map(|i| (i / 2) * binomial(n, i) as usize).sum()
}

/// A cycle the paper requires to vanish in the homology of SE2,
/// tagged with its homological degree. Degree-2 cycles carry the
/// corresponding commutator word (the Hopf-formula image), rendered
/// in the word grammar over the presentation generators.
#[derive(Debug, Clone)]
pub struct Se2Cycle {
    pub degree: usize,
    pub chain: BarChain,
    pub hopf_word: Option<String>,
}

/// The ambient abelian group for the cycles: `<z> x <u_1> x ... x
/// <u_r>` inside SE2, i.e. Z/ell x Z^r.
pub fn se2_cycle_group(ctx: &PrimeContext) -> AbGroup {
    let r = ctx.r as usize;
    let mut names = vec!["z".to_string()];
    names.extend((1..=r).map(|i| format!("u{i}")));
    AbGroup::with_names(vec![ctx.ell], r, names)
}

pub fn se2_obstruction_cycles(ctx: &PrimeContext) -> Vec<Se2Cycle> {
    let group = se2_cycle_group(ctx);
    let z = group.generator(0);
    let mut out = Vec::new();
    for class in enumerate_obstructions(ctx) {
        let elems: Vec<Elem> = class.subset.iter().map(|&i| group.generator(i)).collect();
        let dp = divided_power(&group, &z, class.s, ctx.ell, ctx.ell).expect("z has order ell");
        let ext = exterior_cycle(&group, &elems, ctx.ell).expect("generators are not the identity");
        let chain = shuffle(&dp, &ext).expect("same group and modulus");
        let hopf_word = if class.degree == 2 {
            let names: Vec<&str> = class.subset.iter().map(|&i| group.names[i].as_str()).collect();
            Some(format!(
                "{a}*{b}*{a}^-1*{b}^-1",
                a = names[0],
                b = names[1]
            ))
        } else {
            None
        };
        out.push(Se2Cycle { degree: class.degree, chain, hopf_word });
    }
    out
}

/// The multiplicative group of the cyclotomic integers: Z/2ell x Z^r,
/// generated by -xi and the real cyclotomic units.
pub fn gl1_group(ctx: &PrimeContext) -> AbGroup {
    let r = ctx.r as usize;
    let mut names = vec!["-xi".to_string()];
    names.extend((1..=r).map(|i| format!("e{i}")));
    AbGroup::with_names(vec![2 * ctx.ell], r, names)
}

/// Basis cycles `[xi]^(s) ^ <v_1,...,v_i>` with `2s + i = d`, the v's
/// ranging over subsets of the r+1 units {-xi, e_1, ..., e_r}; listed
/// with s descending, subsets in lex order.
pub fn homology_basis_gl1(ctx: &PrimeContext, degree: usize) -> Vec<BarChain> {
    let group = gl1_group(ctx);
    // xi = (-xi)^(ell+1) in Z/2ell
    let xi = group.pow(&group.generator(0), ctx.ell as i64 + 1);
    let n = ctx.r as usize + 1;
    let mut out = Vec::new();
    let mut s = degree / 2;
    loop {
        let i = degree - 2 * s;
        if i <= n {
            let dp = divided_power(&group, &xi, s, ctx.ell, ctx.ell).expect("xi has order ell");
            let mut subsets: Vec<Vec<usize>> = Vec::new();
            let mut current = Vec::new();
            collect_subsets(0, n, i, &mut current, &mut subsets);
            for subset in subsets {
                let elems: Vec<Elem> = subset.iter().map(|&k| group.generator(k)).collect();
                let ext = exterior_cycle(&group, &elems, ctx.ell).expect("units are nontrivial");
                out.push(shuffle(&dp, &ext).expect("same group"));
            }
        }
        if s == 0 {
            break;
        }
        s -= 1;
    }
    out
}

fn collect_subsets(start: usize, n: usize, need: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if need == 0 {
        out.push(current.clone());
        return;
    }
    for k in start..=n - need {
        current.push(k);
        collect_subsets(k + 1, n, need - 1, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_elem(g: &AbGroup, rng: &mut ChaCha8Rng) -> Elem {
        g.reduce(&(0..g.rank()).map(|_| rng.gen_range(-4i64..5)).collect())
    }

    fn rand_chain(g: &AbGroup, m: u64, deg: usize, rng: &mut ChaCha8Rng) -> BarChain {
        let mut c = BarChain::zero(g, m, deg);
        for _ in 0..rng.gen_range(1..5) {
            let tuple: Vec<Elem> = (0..deg).map(|_| rand_elem(g, rng)).collect();
            c.add_term(tuple, rng.gen_range(-3i64..4));
        }
        c
    }

    fn small_groups() -> Vec<AbGroup> {
        vec![
            AbGroup::new(vec![3], 0),
            AbGroup::new(vec![5], 1),
            AbGroup::new(vec![2, 2], 0),
            AbGroup::new(vec![27], 0),
            AbGroup::new(vec![3, 3, 3], 0),
            AbGroup::new(vec![], 2),
        ]
    }

    #[test]
    fn boundary_of_degree_one_vanishes() {
        let g = AbGroup::new(vec![3], 0);
        let c = BarChain::generator(&g, 0, &[g.generator(0)], 1);
        assert!(boundary(&c).is_zero());
    }

    #[test]
    fn boundary_of_pair_matches_formula() {
        let g = AbGroup::new(vec![], 2);
        let (x, y) = (g.generator(0), g.generator(1));
        let c = BarChain::generator(&g, 0, &[x.clone(), y.clone()], 1);
        let d = boundary(&c);
        let expect = BarChain::generator(&g, 0, &[y.clone()], 1)
            .add(&BarChain::generator(&g, 0, &[g.add(&x, &y)], -1))
            .unwrap()
            .add(&BarChain::generator(&g, 0, &[x.clone()], 1))
            .unwrap();
        assert_eq!(d, expect);
        // x * x^-1 = 1: merged term dropped
        let c2 = BarChain::generator(&g, 0, &[x.clone(), g.neg(&x)], 1);
        let d2 = boundary(&c2);
        let expect2 = BarChain::generator(&g, 0, &[g.neg(&x)], 1)
            .add(&BarChain::generator(&g, 0, &[x], 1))
            .unwrap();
        assert_eq!(d2, expect2);
    }

    #[test]
    fn boundary_squares_to_zero_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let groups = small_groups();
        for trial in 0..1000 {
            let g = &groups[trial % groups.len()];
            let m = [0u64, 3, 5][trial % 3];
            let deg = 1 + trial % 4;
            let c = rand_chain(g, m, deg, &mut rng);
            assert!(boundary(&boundary(&c)).is_zero(), "ddc != 0 at trial {trial}");
        }
    }

    #[test]
    fn shuffle_of_singletons() {
        let g = AbGroup::new(vec![], 2);
        let (x, y) = (g.generator(0), g.generator(1));
        let a = BarChain::generator(&g, 0, &[x.clone()], 1);
        let b = BarChain::generator(&g, 0, &[y.clone()], 1);
        let ab = shuffle(&a, &b).unwrap();
        let expect = BarChain::generator(&g, 0, &[x.clone(), y.clone()], 1)
            .add(&BarChain::generator(&g, 0, &[y.clone(), x.clone()], -1))
            .unwrap();
        assert_eq!(ab, expect);
    }

    #[test]
    fn shuffle_one_two() {
        let g = AbGroup::new(vec![], 3);
        let (x, y, z) = (g.generator(0), g.generator(1), g.generator(2));
        let a = BarChain::generator(&g, 0, &[x.clone()], 1);
        let b = BarChain::generator(&g, 0, &[y.clone(), z.clone()], 1);
        let ab = shuffle(&a, &b).unwrap();
        let expect = BarChain::generator(&g, 0, &[x.clone(), y.clone(), z.clone()], 1)
            .add(&BarChain::generator(&g, 0, &[y.clone(), x.clone(), z.clone()], -1))
            .unwrap()
            .add(&BarChain::generator(&g, 0, &[y.clone(), z.clone(), x.clone()], 1))
            .unwrap();
        assert_eq!(ab, expect);
    }

    #[test]
    fn shuffle_graded_commutative_and_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let groups = small_groups();
        for trial in 0..200 {
            let g = &groups[trial % groups.len()];
            let m = [0u64, 3, 5][trial % 3];
            let (p, q, s) = (1 + trial % 2, 1 + (trial / 2) % 2, 1 + (trial / 4) % 2);
            let a = rand_chain(g, m, p, &mut rng);
            let b = rand_chain(g, m, q, &mut rng);
            let c = rand_chain(g, m, s, &mut rng);
            let ab = shuffle(&a, &b).unwrap();
            let ba = shuffle(&b, &a).unwrap();
            let sign = if (p * q) % 2 == 0 { 1 } else { -1 };
            assert_eq!(ab, ba.scale(sign), "graded commutativity, trial {trial}");
            let left = shuffle(&ab, &c).unwrap();
            let right = shuffle(&a, &shuffle(&b, &c).unwrap()).unwrap();
            assert_eq!(left, right, "associativity, trial {trial}");
        }
    }

    #[test]
    fn leibniz_rule_on_shuffles() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let groups = small_groups();
        for trial in 0..200 {
            let g = &groups[trial % groups.len()];
            let m = [0u64, 3, 5][trial % 3];
            let (p, q) = (1 + trial % 3, 1 + (trial / 3) % 3);
            let a = rand_chain(g, m, p, &mut rng);
            let b = rand_chain(g, m, q, &mut rng);
            let lhs = boundary(&shuffle(&a, &b).unwrap());
            let sign = if p % 2 == 0 { 1 } else { -1 };
            let rhs = shuffle(&boundary(&a), &b)
                .unwrap()
                .add(&shuffle(&a, &boundary(&b)).unwrap().scale(sign))
                .unwrap();
            assert_eq!(lhs, rhs, "Leibniz, trial {trial}");
        }
    }

    #[test]
    fn divided_power_small_cases() {
        let ctx3 = PrimeContext::new(3).unwrap();
        let g = se2_cycle_group(&ctx3);
        let z = g.generator(0);
        assert_eq!(divided_power(&g, &z, 0, 3, 3).unwrap(), BarChain::unit(&g, 3));
        // s=1, ell=3: [z|z] + [z^2|z]
        let dp = divided_power(&g, &z, 1, 3, 3).unwrap();
        let expect = BarChain::generator(&g, 3, &[z.clone(), z.clone()], 1)
            .add(&BarChain::generator(&g, 3, &[g.pow(&z, 2), z.clone()], 1))
            .unwrap();
        assert_eq!(dp, expect);
        // error on elements of the wrong order
        let u = g.generator(1);
        assert_eq!(divided_power(&g, &u, 1, 3, 3), Err(BarError::NotOrderEll(3)));
    }

    #[test]
    fn divided_power_binomial_identity() {
        for ell in [3u64, 5] {
            let ctx = PrimeContext::new(ell).unwrap();
            let g = se2_cycle_group(&ctx);
            let z = g.generator(0);
            for s in 0..=6usize {
                for i in 0..=(6 - s) {
                    assert!(
                        divided_power_product_check(&g, &z, s, i, ell, ell).unwrap(),
                        "ell={ell} s={s} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn divided_power_boundary_integral() {
        // d[z]^(s) = ell * [z]^(s-1) ^ [z] over the integers
        for ell in [3u64, 5] {
            let ctx = PrimeContext::new(ell).unwrap();
            let g = se2_cycle_group(&ctx);
            let z = g.generator(0);
            for s in 1..=3usize {
                let lhs = boundary(&divided_power(&g, &z, s, ell, 0).unwrap());
                let zc = BarChain::generator(&g, 0, &[z.clone()], 1);
                let rhs = shuffle(&divided_power(&g, &z, s - 1, ell, 0).unwrap(), &zc)
                    .unwrap()
                    .scale(ell as i64);
                assert_eq!(lhs, rhs, "ell={ell} s={s}");
            }
        }
    }

    #[test]
    fn exterior_cycle_basics() {
        let g = AbGroup::new(vec![], 2);
        let (x, y) = (g.generator(0), g.generator(1));
        assert_eq!(
            exterior_cycle(&g, &[x.clone()], 0).unwrap(),
            BarChain::generator(&g, 0, &[x.clone()], 1)
        );
        let xy = exterior_cycle(&g, &[x.clone(), y.clone()], 0).unwrap();
        assert_eq!(xy, shuffle(
            &BarChain::generator(&g, 0, &[x.clone()], 1),
            &BarChain::generator(&g, 0, &[y.clone()], 1)
        ).unwrap());
        assert!(boundary(&xy).is_zero());
        // skew-symmetry at chain level
        let yx = exterior_cycle(&g, &[y.clone(), x.clone()], 0).unwrap();
        assert_eq!(yx, xy.scale(-1));
        assert_eq!(
            exterior_cycle(&g, &[g.identity()], 0),
            Err(BarError::IdentityEntry)
        );
    }

    #[test]
    fn chain_map_functorial() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let g = AbGroup::new(vec![5], 1);
        let ident = Hom::identity(&g);
        let inv = Hom::inversion(&g);
        for trial in 0..100 {
            let c = rand_chain(&g, [0u64, 5][trial % 2], 1 + trial % 3, &mut rng);
            assert_eq!(chain_map(&ident, &c), c);
            assert_eq!(boundary(&chain_map(&inv, &c)), chain_map(&inv, &boundary(&c)));
        }
    }

    #[test]
    fn chain_map_t_into_product() {
        // t(u) = u^-1 x u into G x G
        let ctx = PrimeContext::new(3).unwrap();
        let g = gl1_group(&ctx);
        let g2 = AbGroup::new(
            vec![2 * ctx.ell, 2 * ctx.ell],
            2 * ctx.r as usize,
        );
        // interleave: source gen i maps to (-gen_left(i), gen_right(i))
        let mut images = Vec::new();
        for i in 0..g.rank() {
            let (li, ri) = if i == 0 { (0, 1) } else { (2 * i, 2 * i + 1) };
            let mut e = g2.identity();
            e[li] = -1;
            e[ri] = 1;
            images.push(g2.reduce(&e));
        }
        let t = Hom::new(g.clone(), g2.clone(), images).unwrap();
        let u = g.generator(0);
        let c = BarChain::generator(&g, 3, &[u.clone()], 1);
        let mapped = chain_map(&t, &c);
        let mut expect_elem = g2.identity();
        expect_elem[0] = -1;
        expect_elem[1] = 1;
        assert_eq!(mapped, BarChain::generator(&g2, 3, &[g2.reduce(&expect_elem)], 1));
    }

    #[test]
    fn sigma_involution_up_to_boundary_low_degrees() {
        let g = AbGroup::new(vec![5], 1);
        let inv = Hom::inversion(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..50 {
            let x = {
                let mut e = rand_elem(&g, &mut rng);
                while g.is_identity(&e) {
                    e = rand_elem(&g, &mut rng);
                }
                e
            };
            let y = {
                let mut e = rand_elem(&g, &mut rng);
                while g.is_identity(&e) {
                    e = rand_elem(&g, &mut rng);
                }
                e
            };
            // degree 1: sigma*[x] = -[x] + d[x|x^-1]
            let a = BarChain::generator(&g, 0, &[x.clone()], 1);
            let cx = BarChain::generator(&g, 0, &[x.clone(), g.neg(&x)], 1);
            assert_eq!(chain_map(&inv, &a), a.scale(-1).add(&boundary(&cx)).unwrap());
            // degree 2: sigma*<x,y> = <x,y> + d(a^c_y - c_x^b + c_x^(dc_y))
            let b = BarChain::generator(&g, 0, &[y.clone()], 1);
            let cy = BarChain::generator(&g, 0, &[y.clone(), g.neg(&y)], 1);
            let ext = shuffle(&a, &b).unwrap();
            let corr = shuffle(&a, &cy)
                .unwrap()
                .add(&shuffle(&cx, &b).unwrap().scale(-1))
                .unwrap()
                .add(&shuffle(&cx, &boundary(&cy)).unwrap())
                .unwrap();
            assert_eq!(chain_map(&inv, &ext), ext.add(&boundary(&corr)).unwrap());
        }
    }

    #[test]
    fn obstruction_counts_match_enumeration() {
        for ell in [3u64, 5, 7, 11, 13] {
            let ctx = PrimeContext::new(ell).unwrap();
            assert_eq!(enumerate_obstructions(&ctx).len(), obstruction_count(&ctx), "ell={ell}");
        }
        assert_eq!(obstruction_count(&PrimeContext::new(3).unwrap()), 1);
        assert_eq!(obstruction_count(&PrimeContext::new(5).unwrap()), 4);
        assert_eq!(obstruction_count(&PrimeContext::new(7).unwrap()), 12);
    }

    #[test]
    fn obstruction_classes_shape() {
        let ctx = PrimeContext::new(3).unwrap();
        let classes = enumerate_obstructions(&ctx);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].s, 0);
        assert_eq!(classes[0].subset, vec![0, 1]);
        assert_eq!(classes[0].degree, 2);
        let ctx5 = PrimeContext::new(5).unwrap();
        let classes5 = enumerate_obstructions(&ctx5);
        assert_eq!(classes5.len(), 4);
        assert_eq!(classes5.iter().filter(|c| c.degree == 2).count(), 3);
        assert_eq!(classes5.iter().filter(|c| c.s == 1 && c.subset.len() == 3).count(), 1);
        for ell in [3u64, 5, 7, 11] {
            for c in enumerate_obstructions(&PrimeContext::new(ell).unwrap()) {
                let j = (c.subset.len() - c.s) / 2;
                assert!(j > 0);
                assert_eq!(c.degree, 3 * c.s + 2 * j);
            }
        }
    }

    #[test]
    fn se2_cycles_are_cycles_with_hopf_words() {
        let ctx3 = PrimeContext::new(3).unwrap();
        let cycles = se2_obstruction_cycles(&ctx3);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].degree, 2);
        assert_eq!(cycles[0].hopf_word.as_deref(), Some("z*u1*z^-1*u1^-1"));
        let ctx5 = PrimeContext::new(5).unwrap();
        let cycles5 = se2_obstruction_cycles(&ctx5);
        assert_eq!(cycles5.len(), 4);
        let hopf: Vec<&str> = cycles5.iter().filter_map(|c| c.hopf_word.as_deref()).collect();
        assert_eq!(hopf, vec![
            "z*u1*z^-1*u1^-1",
            "z*u2*z^-1*u2^-1",
            "u1*u2*u1^-1*u2^-1",
        ]);
        for ell in [3u64, 5, 7] {
            let ctx = PrimeContext::new(ell).unwrap();
            for cyc in se2_obstruction_cycles(&ctx) {
                assert_eq!(cyc.chain.degree(), cyc.degree);
                assert!(boundary(&cyc.chain).is_zero(), "ell={ell} degree={}", cyc.degree);
            }
        }
    }

    #[test]
    fn gl1_basis_small_degrees() {
        let ctx = PrimeContext::new(3).unwrap();
        assert_eq!(homology_basis_gl1(&ctx, 0), vec![BarChain::unit(&gl1_group(&ctx), 3)]);
        assert_eq!(homology_basis_gl1(&ctx, 1).len(), 2);
        let d2 = homology_basis_gl1(&ctx, 2);
        assert_eq!(d2.len(), 2);
        for c in homology_basis_gl1(&ctx, 3).iter().chain(&d2) {
            assert!(boundary(c).is_zero());
        }
    }
}
