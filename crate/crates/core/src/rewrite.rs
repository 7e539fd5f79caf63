//! Knuth-Bendix completion for group presentations as string-rewriting
//! systems over the doubled alphabet (generators and formal inverses).
//!
//! Letters are signed ids `2*gen + inverse`. Every system contains the
//! free-reduction rules `g g^-1 -> 1` and `g^-1 g -> 1`. Completion is
//! fully deterministic given the input order, the parameters, and the
//! letter ranking: the pending set is processed smallest-equation-first
//! in shortlex order and rule matching picks the leftmost occurrence,
//! longest rule first.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::words::{Alphabet, LetterOrder, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CheckpointError {
    #[error("missing `kbchk` header")]
    MissingHeader,
    #[error("unsupported checkpoint version `{0}`")]
    VersionMismatch(String),
    #[error("malformed checkpoint line: {0}")]
    Malformed(String),
}

/// The doubled alphabet: `n` generator names and a total ranking on the
/// `2n` signed letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterSet {
    names: Vec<String>,
    rank: Vec<u32>,
}

impl LetterSet {
    pub fn new(alphabet: &Alphabet, order: &LetterOrder) -> Self {
        LetterSet { names: alphabet.names().to_vec(), rank: order.ranks().to_vec() }
    }

    pub fn n_generators(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn n_letters(&self) -> usize {
        2 * self.names.len()
    }

    pub fn inverse(l: u16) -> u16 {
        l ^ 1
    }

    fn letter_name(&self, l: u16) -> String {
        let base = &self.names[(l / 2) as usize];
        if l % 2 == 1 {
            format!("{base}^-1")
        } else {
            base.clone()
        }
    }

    /// Shortlex on raw letter strings.
    pub fn cmp_shortlex(&self, a: &[u16], b: &[u16]) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for (&x, &y) in a.iter().zip(b) {
                match self.rank[x as usize].cmp(&self.rank[y as usize]) {
                    Ordering::Equal => {}
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Renders a letter string in the word grammar, `1` for the empty
    /// string.
    pub fn render(&self, s: &[u16]) -> String {
        if s.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < s.len() {
            let l = s[i];
            let mut run = 1;
            while i + run < s.len() && s[i + run] == l {
                run += 1;
            }
            let base = &self.names[(l / 2) as usize];
            let exp: i64 = if l % 2 == 1 { -(run as i64) } else { run as i64 };
            if exp == 1 {
                parts.push(base.clone());
            } else {
                parts.push(format!("{base}^{exp}"));
            }
            i += run;
        }
        parts.join("*")
    }

    /// Letters in rank order, as written on the checkpoint ranking line.
    fn ranking_line(&self) -> String {
        let mut letters: Vec<u16> = (0..self.n_letters() as u16).collect();
        letters.sort_by_key(|&l| self.rank[l as usize]);
        letters
            .iter()
            .map(|&l| self.letter_name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Pending equation stored in rank space (each letter replaced by its
/// rank), so the derived lexicographic order on `(len, letters)` is
/// exactly shortlex. `big >= small` in shortlex always holds.
#[derive(Debug, Clone, PartialEq, Eq)]
struct PendingEq {
    big: Vec<u16>,
    small: Vec<u16>,
}

fn shortlex_ranked(a: &[u16], b: &[u16]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Ord for PendingEq {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex_ranked(&self.big, &other.big)
            .then_with(|| shortlex_ranked(&self.small, &other.small))
    }
}

impl PartialOrd for PendingEq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Oriented rule; `shortlex(rhs) < shortlex(lhs)` always holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Vec<u16>,
    pub rhs: Vec<u16>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionParams {
    pub max_rules: usize,
    pub tidy_interval: usize,
    pub max_equations: usize,
    /// Derived rules whose lhs is longer than this are discarded
    /// instead of stored. Discarding is sound (every kept rule is still
    /// a consequence of the input relators); it only sacrifices
    /// completeness, which bounded runs give up anyway. A finite cap
    /// keeps long junk consequences from crowding out the short
    /// structural rules that certificates are made of.
    pub max_stored_len: usize,
}

impl Default for CompletionParams {
    fn default() -> Self {
        CompletionParams {
            max_rules: 500_000,
            tidy_interval: 1000,
            max_equations: 500_000,
            max_stored_len: usize::MAX,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundReason {
    RuleCap,
    EquationCap,
    /// The queues drained, but equations were discarded by
    /// `max_stored_len`, so the system cannot be called confluent.
    StoredLenCap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompletionStatus {
    Confluent,
    Bounded(BoundReason),
    Interrupted(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    ProvedTrivial,
    Unknown,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub input_equations: usize,
    pub equations_processed: usize,
    pub rules_added: usize,
    /// Snapshot of the pending-set size, refreshed before each stop poll.
    pub pending: usize,
    /// Snapshot of the active (non-deleted) rule count.
    pub active: usize,
    /// Snapshot of the unscanned-rule count (overlap-scan backlog).
    pub todo: usize,
    /// Derived equations discarded by the stored-length cap.
    pub discarded: usize,
}

#[derive(Debug, Clone)]
struct TrieNode {
    children: Vec<(u16, u32)>,
    rule: Option<u32>,
}

#[derive(Debug, Clone)]
struct Trie {
    nodes: Vec<TrieNode>,
}

impl Trie {
    fn new() -> Self {
        Trie { nodes: vec![TrieNode { children: Vec::new(), rule: None }] }
    }

    fn child(&self, node: u32, letter: u16) -> Option<u32> {
        let c = &self.nodes[node as usize].children;
        c.binary_search_by_key(&letter, |&(l, _)| l).ok().map(|i| c[i].1)
    }

    fn insert(&mut self, lhs: &[u16], rule: u32) {
        let mut node = 0u32;
        for &l in lhs {
            node = match self.child(node, l) {
                Some(c) => c,
                None => {
                    let idx = self.nodes.len() as u32;
                    self.nodes.push(TrieNode { children: Vec::new(), rule: None });
                    let c = &mut self.nodes[node as usize].children;
                    let pos = c.binary_search_by_key(&l, |&(x, _)| x).unwrap_err();
                    c.insert(pos, (l, idx));
                    idx
                }
            };
        }
        self.nodes[node as usize].rule = Some(rule);
    }

    fn set_rule(&mut self, lhs: &[u16], rule: Option<u32>) {
        let mut node = 0u32;
        for &l in lhs {
            node = self.child(node, l).expect("lhs must be present in trie");
        }
        self.nodes[node as usize].rule = rule;
    }

    /// Longest rule lhs that is a prefix of `text`.
    fn longest_match(&self, text: &[u16]) -> Option<(usize, u32)> {
        let mut node = 0u32;
        let mut best = None;
        for (i, &l) in text.iter().enumerate() {
            node = match self.child(node, l) {
                Some(c) => c,
                None => break,
            };
            if let Some(r) = self.nodes[node as usize].rule {
                best = Some((i + 1, r));
            }
        }
        best
    }

    /// All rules whose lhs is a prefix of `text`, as (length, rule).
    fn all_matches(&self, text: &[u16], out: &mut Vec<(usize, u32)>) {
        let mut node = 0u32;
        for (i, &l) in text.iter().enumerate() {
            node = match self.child(node, l) {
                Some(c) => c,
                None => return,
            };
            if let Some(r) = self.nodes[node as usize].rule {
                out.push((i + 1, r));
            }
        }
    }

    /// Walks `prefix`; returns the reached node if the whole prefix is
    /// a path in the trie.
    fn walk(&self, prefix: &[u16]) -> Option<u32> {
        let mut node = 0u32;
        for &l in prefix {
            node = self.child(node, l)?;
        }
        Some(node)
    }

    /// All rules in the subtree below `node`, with their depth below it.
    fn rules_below(&self, node: u32, out: &mut Vec<(u32, usize)>) {
        let mut stack = vec![(node, 0usize)];
        while let Some((n, d)) = stack.pop() {
            if d > 0 {
                if let Some(r) = self.nodes[n as usize].rule {
                    out.push((r, d));
                }
            }
            for &(_, c) in &self.nodes[n as usize].children {
                stack.push((c, d + 1));
            }
        }
    }
}

/// Rewriting system with completion state.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    letters: LetterSet,
    rules: Vec<Option<RewriteRule>>,
    active_rules: usize,
    max_lhs_len: usize,
    pending: BTreeSet<PendingEq>,
    /// Discovery-order view of `pending`, maintained only in FIFO mode.
    pending_fifo: std::collections::VecDeque<PendingEq>,
    /// Process equations and scan rules in discovery order instead of
    /// smallest-first. Mirrors the classical completion strategy where
    /// consequences are explored breadth-first from the axioms.
    fifo: bool,
    /// rank position -> letter id; inverse of the letter ranking.
    unrank: Vec<u16>,
    /// Unscanned active rules, keyed by `(lhs len, ranked lhs, index)`
    /// so the smallest lhs is selected first. A rule is "scanned" once
    /// its overlaps with every rule scanned before it have been
    /// considered; pairs of two unscanned rules are covered when the
    /// later of the two is selected. Overlap generation is lazy and
    /// best-first: long rules that inter-reduction deletes before
    /// selection never have their overlaps computed.
    todo: BTreeSet<(usize, Vec<u16>, u32)>,
    /// The same unscanned rules keyed by insertion index; selection
    /// alternates between the two queues (see `complete_with_stop`).
    todo_idx: BTreeSet<u32>,
    /// Alternation phase for the next selection: true picks the
    /// shortest-lhs unscanned rule, false the oldest.
    scan_flip: bool,
    /// `scanned[i]` is true once rule `i` has been selected from `todo`.
    scanned: Vec<bool>,
    stats: Stats,
    trie: Trie,
}

fn unrank_table(letters: &LetterSet) -> Vec<u16> {
    let mut unrank = vec![0u16; letters.rank.len()];
    for (id, &r) in letters.rank.iter().enumerate() {
        unrank[r as usize] = id as u16;
    }
    unrank
}

impl RewriteSystem {
    /// Monoid system on the `2n` letters with the free-reduction rules
    /// installed; each relator `w` contributes the equation `(w, 1)`.
    pub fn from_words<'a>(
        alphabet: &Alphabet,
        relators: impl IntoIterator<Item = &'a Word>,
        order: &LetterOrder,
    ) -> Self {
        let letters = LetterSet::new(alphabet, order);
        let unrank = unrank_table(&letters);
        let mut rs = RewriteSystem {
            letters,
            rules: Vec::new(),
            active_rules: 0,
            max_lhs_len: 0,
            pending: BTreeSet::new(),
            pending_fifo: std::collections::VecDeque::new(),
            fifo: false,
            unrank,
            todo: BTreeSet::new(),
            todo_idx: BTreeSet::new(),
            scan_flip: false,
            scanned: Vec::new(),
            stats: Stats::default(),
            trie: Trie::new(),
        };
        for g in 0..alphabet.len() as u16 {
            rs.add_rule(vec![2 * g, 2 * g + 1], Vec::new());
            rs.add_rule(vec![2 * g + 1, 2 * g], Vec::new());
        }
        for w in relators {
            rs.stats.input_equations += 1;
            let ids: Vec<u16> = w.letters().iter().map(|l| l.signed_id() as u16).collect();
            rs.consider(ids, Vec::new());
        }
        rs
    }

    pub fn from_presentation(
        p: &crate::presentation::Presentation,
        extra_relators: &[Word],
        order: Option<&LetterOrder>,
    ) -> Self {
        let default_order = LetterOrder::default_for(p.alphabet());
        let order = order.unwrap_or(&default_order);
        let relators: Vec<&Word> = p.relator_words().chain(extra_relators).collect();
        Self::from_words(p.alphabet(), relators, order)
    }

    /// A system built from an explicit relator list only (no
    /// presentation relators), e.g. the derived `fk`/`k^l` families.
    pub fn from_relator_list(
        alphabet: &Alphabet,
        relators: &[Word],
        order: Option<&LetterOrder>,
    ) -> Self {
        let default_order;
        let order = match order {
            Some(o) => o,
            None => {
                default_order = LetterOrder::default_for(alphabet);
                &default_order
            }
        };
        Self::from_words(alphabet, relators.iter(), order)
    }

    pub fn letters(&self) -> &LetterSet {
        &self.letters
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    pub fn rule_count(&self) -> usize {
        self.active_rules
    }

    pub fn pending_count(&self) -> usize {
        self.pending.len()
    }

    /// Switches equation processing and rule scanning to discovery
    /// order (classical breadth-first completion) instead of the
    /// default smallest-first strategy. Equations already queued keep
    /// their set order until drained.
    pub fn set_fifo(&mut self, on: bool) {
        self.fifo = on;
    }

    /// Derived-but-unprocessed equations, in letter ids. Every entry is
    /// a proven consequence of the input relators (it came from a
    /// critical pair of sound rules), so callers may use them as facts.
    pub fn pending_equations(&self) -> impl Iterator<Item = (Vec<u16>, Vec<u16>)> + '_ {
        self.pending.iter().map(|e| (self.from_rank(&e.big), self.from_rank(&e.small)))
    }

    pub fn active_rules(&self) -> impl Iterator<Item = &RewriteRule> {
        self.rules.iter().filter_map(|r| r.as_ref())
    }

    /// Reduces a letter string to its irreducible form: repeatedly
    /// rewrite the leftmost occurrence, longest rule first.
    pub fn reduce_letters(&self, input: &[u16]) -> Vec<u16> {
        let mut text = input.to_vec();
        let mut i = 0;
        while i < text.len() {
            match self.trie.longest_match(&text[i..]) {
                Some((len, rule)) => {
                    let rhs = &self.rules[rule as usize].as_ref().expect("active rule").rhs;
                    text.splice(i..i + len, rhs.iter().copied());
                    i = i.saturating_sub(self.max_lhs_len.saturating_sub(1));
                }
                None => i += 1,
            }
        }
        text
    }

    pub fn reduce(&self, w: &Word) -> Vec<u16> {
        let ids: Vec<u16> = w.letters().iter().map(|l| l.signed_id() as u16).collect();
        self.reduce_letters(&ids)
    }

    /// `ProvedTrivial` iff the word reduces to the empty string. Each
    /// rewrite preserves the group element of the quotient, so reaching
    /// the empty word proves membership in the normal closure of the
    /// input relators regardless of confluence.
    pub fn certify_trivial(&self, w: &Word) -> Certificate {
        if self.reduce(w).is_empty() {
            Certificate::ProvedTrivial
        } else {
            Certificate::Unknown
        }
    }

    /// Goal-directed triviality probe. A word r is trivial in the
    /// quotient iff A equals B^-1 for some factorization A*B of some
    /// cyclic rotation of r (rotations are conjugates of r). Reducing
    /// two words to the same string proves their equality without
    /// confluence, so when a split satisfies
    /// reduce(A) == reduce(B^-1) the equation r = empty-word is a
    /// proven consequence of the input relators; it is queued for the
    /// completion loop, and once processed `reduce(r)` returns the
    /// empty word. Returns true if a split certified.
    pub fn probe_trivial_letters(&mut self, ids: &[u16]) -> bool {
        let base = self.reduce_letters(ids);
        if base.is_empty() {
            return true;
        }
        // candidate conjugates of the input: the word as given, its
        // reduced form, and conjugates of the latter by every single
        // letter (all trivial iff the input is)
        let mut found = self.rotation_splits_certify(&base)
            || (ids != base && self.rotation_splits_certify(ids));
        if !found {
            for x in 0..self.letters.n_letters() as u16 {
                let mut conj = vec![x];
                conj.extend_from_slice(&base);
                conj.push(LetterSet::inverse(x));
                let rconj = self.reduce_letters(&conj);
                if rconj.is_empty() || self.rotation_splits_certify(&rconj) {
                    found = true;
                    break;
                }
            }
        }
        if found {
            self.consider(base, Vec::new());
        }
        found
    }

    /// True if some factorization A*B of some cyclic rotation of
    /// `word` has provably joinable A and B^-1.
    fn rotation_splits_certify(&self, word: &[u16]) -> bool {
        let n = word.len();
        for rot in 0..n {
            let mut w = word[rot..].to_vec();
            w.extend_from_slice(&word[..rot]);
            for i in 1..n {
                let a = &w[..i];
                let binv: Vec<u16> = w[i..].iter().rev().map(|&l| LetterSet::inverse(l)).collect();
                if self.joinable(a, &binv, 4_000) {
                    return true;
                }
            }
        }
        false
    }

    /// All single-step rewrites of `word` (every redex, every rule).
    fn successors(&self, word: &[u16]) -> Vec<Vec<u16>> {
        let mut out = Vec::new();
        let mut matches = Vec::new();
        for i in 0..word.len() {
            matches.clear();
            self.trie.all_matches(&word[i..], &mut matches);
            for &(len, rule) in &matches {
                let rhs = &self.rules[rule as usize].as_ref().expect("active rule").rhs;
                let mut next = Vec::with_capacity(word.len() - len + rhs.len());
                next.extend_from_slice(&word[..i]);
                next.extend_from_slice(rhs);
                next.extend_from_slice(&word[i + len..]);
                out.push(next);
            }
        }
        out
    }

    /// Sound joinability test: explores all rewrite paths from both
    /// words (each application strictly decreases shortlex, so the
    /// reachable sets are finite) and reports true if they intersect,
    /// which proves the words equal in the quotient even without
    /// confluence. `fuel` bounds the number of words expanded.
    pub fn joinable(&self, a: &[u16], b: &[u16], fuel: usize) -> bool {
        use std::collections::VecDeque;
        if a == b {
            return true;
        }
        let mut seen_a: BTreeSet<Vec<u16>> = BTreeSet::new();
        let mut seen_b: BTreeSet<Vec<u16>> = BTreeSet::new();
        let mut qa: VecDeque<Vec<u16>> = VecDeque::new();
        let mut qb: VecDeque<Vec<u16>> = VecDeque::new();
        seen_a.insert(a.to_vec());
        seen_b.insert(b.to_vec());
        qa.push_back(a.to_vec());
        qb.push_back(b.to_vec());
        let mut budget = fuel;
        while budget > 0 && (!qa.is_empty() || !qb.is_empty()) {
            if self.join_expand(&mut qa, &mut seen_a, &seen_b, &mut budget)
                || self.join_expand(&mut qb, &mut seen_b, &seen_a, &mut budget)
            {
                return true;
            }
        }
        false
    }

    /// One expansion step of `joinable`; true on intersection.
    fn join_expand(
        &self,
        q: &mut std::collections::VecDeque<Vec<u16>>,
        seen: &mut BTreeSet<Vec<u16>>,
        other: &BTreeSet<Vec<u16>>,
        budget: &mut usize,
    ) -> bool {
        if let Some(w) = q.pop_front() {
            *budget = budget.saturating_sub(1);
            for next in self.successors(&w) {
                if other.contains(&next) {
                    return true;
                }
                if seen.insert(next.clone()) {
                    q.push_back(next);
                }
            }
        }
        false
    }

    /// Sound equation feeding for goal-directed completion: every
    /// factor must already reduce to the empty word (each is then a
    /// proven element of the normal closure of the input relators), so
    /// their concatenated product is proven trivial too and may be
    /// queued as the equation `product = 1`. Returns false (and feeds
    /// nothing) if any factor fails its check.
    /// Factors verify by reducing to the empty word, by
    /// `verify_trivial_abelian_exp3`, or by a joinability search with
    /// the given fuel (all three only ever prove true equations).
    pub fn feed_trivial_product(&mut self, factors: &[Vec<u16>], fuel: usize) -> bool {
        for f in factors {
            if !self.reduce_letters(f).is_empty()
                && !self.verify_trivial_abelian_exp3(f)
                && !self.joinable(f, &[], fuel)
            {
                return false;
            }
        }
        let product: Vec<u16> = factors.iter().flat_map(|f| f.iter().copied()).collect();
        self.assert_rule(product, Vec::new());
        true
    }

    /// Sound equational ladder: verifies a chain of words pairwise
    /// equal and, on success, feeds the equation between the first and
    /// last word. Each consecutive step `A = B` must be certified by
    /// one of the sound equality checks (identical reduced forms, a
    /// joinability search, or the trivial-difference checks on the word
    /// `A * B^-1`); equality in the quotient then follows for the chain
    /// endpoints by transitivity. Returns the index of the first step
    /// that fails to verify, feeding nothing in that case.
    pub fn feed_chain(&mut self, chain: &[Vec<u16>], fuel: usize) -> Result<(), usize> {
        for (i, win) in chain.windows(2).enumerate() {
            // strip the common prefix and suffix first: the step usually
            // changes one local window, and P X Q = P Y Q follows from
            // X = Y, so checking the stripped pair is sound and avoids
            // context effects (e.g. central letters migrating across the
            // pattern a rule needs)
            let (mut lo, mut ha, mut hb) = (0usize, win[0].len(), win[1].len());
            while lo < ha && lo < hb && win[0][lo] == win[1][lo] {
                lo += 1;
            }
            while ha > lo && hb > lo && win[0][ha - 1] == win[1][hb - 1] {
                ha -= 1;
                hb -= 1;
            }
            let (a, b) = (&win[0][lo..ha].to_vec(), &win[1][lo..hb].to_vec());
            if self.reduce_letters(a) == self.reduce_letters(b) {
                continue;
            }
            let mut diff = a.clone();
            diff.extend(b.iter().rev().map(|&l| LetterSet::inverse(l)));
            if self.reduce_letters(&diff).is_empty()
                || self.verify_trivial_abelian_exp3(&diff)
                || self.joinable(a, b, fuel)
                || self.joinable(&diff, &[], fuel)
            {
                continue;
            }
            return Err(i);
        }
        if let (Some(first), Some(last)) = (chain.first(), chain.last()) {
            self.assert_rule(first.clone(), last.clone());
        }
        Ok(())
    }

    /// Installs a verified equation as a rule immediately (with its
    /// inverse form queued), bypassing the smallest-first pending
    /// drain, which would starve a long goal-directed equation behind
    /// the backlog of short critical pairs.
    fn assert_rule(&mut self, a: Vec<u16>, b: Vec<u16>) {
        let ra = self.reduce_letters(&a);
        let rb = self.reduce_letters(&b);
        let (ra, rb) = Self::cancel_ends(ra, rb);
        if ra == rb {
            return;
        }
        let (lhs, rhs) = match self.letters.cmp_shortlex(&ra, &rb) {
            Ordering::Greater => (ra, rb),
            _ => (rb, ra),
        };
        let inv = |w: &[u16]| -> Vec<u16> {
            w.iter().rev().map(|&l| LetterSet::inverse(l)).collect()
        };
        let (ilhs, irhs) = (inv(&lhs), inv(&rhs));
        self.add_rule(lhs, rhs);
        self.consider(ilhs, irhs);
    }

    /// Sound triviality check for words over letters that provably
    /// commute pairwise and provably have order 3: such letters
    /// generate an elementary abelian 3-group, so the word is trivial
    /// iff its exponent vector vanishes mod 3. All premises are checked
    /// by rewriting against the current (possibly non-confluent) rules,
    /// which only ever proves true equations.
    pub fn verify_trivial_abelian_exp3(&self, w: &[u16]) -> bool {
        let mut gens: Vec<u16> = w.iter().map(|&l| l / 2).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut expo = vec![0i64; self.letters.rank.len() / 2];
        for &l in w {
            expo[(l / 2) as usize] += if l % 2 == 0 { 1 } else { -1 };
        }
        if gens.iter().any(|&g| expo[g as usize].rem_euclid(3) != 0) {
            return false;
        }
        for &g in &gens {
            if !self.reduce_letters(&[2 * g, 2 * g, 2 * g]).is_empty() {
                return false;
            }
        }
        for (i, &g) in gens.iter().enumerate() {
            for &h in &gens[i + 1..] {
                let comm = [2 * g, 2 * h, 2 * g + 1, 2 * h + 1];
                if !self.reduce_letters(&comm).is_empty() && !self.joinable(&comm, &[], 2_000)
                {
                    return false;
                }
            }
        }
        true
    }

    /// `probe_trivial_letters` for a word over the alphabet.
    pub fn probe_trivial(&mut self, w: &Word) -> bool {
        let ids: Vec<u16> = w.letters().iter().map(|l| l.signed_id() as u16).collect();
        self.probe_trivial_letters(&ids)
    }

    /// Key of the shortest-lhs scan queue; ties break by the lhs word
    /// and then the insertion index, so selection is deterministic.
    fn todo_key(lhs: &[u16], idx: u32) -> (usize, Vec<u16>, u32) {
        (lhs.len(), lhs.to_vec(), idx)
    }

    fn add_rule(&mut self, lhs: Vec<u16>, rhs: Vec<u16>) {
        let idx = self.rules.len() as u32;
        self.max_lhs_len = self.max_lhs_len.max(lhs.len());
        self.trie.insert(&lhs, idx);
        self.todo.insert(Self::todo_key(&lhs, idx));
        self.todo_idx.insert(idx);
        self.rules.push(Some(RewriteRule { lhs, rhs }));
        self.scanned.push(false);
        self.active_rules += 1;
        self.stats.rules_added += 1;
    }

    /// Reduces both sides and queues the equation unless it joins
    /// immediately. Immediately joinable candidates do not count
    /// against the equation cap; only queued equations that the
    /// completion loop later pops are counted. Pairs are oriented by
    /// shortlex; the ordered pending set deduplicates and yields the
    /// smallest outstanding equation first.
    fn consider(&mut self, a: Vec<u16>, b: Vec<u16>) {
        let ra = self.reduce_letters(&a);
        let rb = self.reduce_letters(&b);
        let (ra, rb) = Self::cancel_ends(ra, rb);
        match self.letters.cmp_shortlex(&ra, &rb) {
            Ordering::Equal => {}
            Ordering::Greater => self.push_pending(ra, rb),
            Ordering::Less => self.push_pending(rb, ra),
        }
    }

    /// Strips common prefixes and suffixes from an equation. Valid in a
    /// group quotient (letters are invertible), and the stripped
    /// equation still joins the originating critical pair: `sX = sY` rewrites to
    /// equality once a rule for `X = Y` exists. Stripped sides of
    /// irreducible words stay irreducible (they are interior factors).
    fn cancel_ends(mut a: Vec<u16>, mut b: Vec<u16>) -> (Vec<u16>, Vec<u16>) {
        let mut pre = 0;
        while pre < a.len() && pre < b.len() && a[pre] == b[pre] {
            pre += 1;
        }
        let mut suf = 0;
        while suf + pre < a.len() && suf + pre < b.len()
            && a[a.len() - 1 - suf] == b[b.len() - 1 - suf]
        {
            suf += 1;
        }
        a.truncate(a.len() - suf);
        b.truncate(b.len() - suf);
        a.drain(..pre);
        b.drain(..pre);
        (a, b)
    }

    fn to_rank(&self, w: &[u16]) -> Vec<u16> {
        w.iter().map(|&l| self.letters.rank[l as usize] as u16).collect()
    }

    fn from_rank(&self, w: &[u16]) -> Vec<u16> {
        w.iter().map(|&r| self.unrank[r as usize]).collect()
    }

    fn push_pending(&mut self, big: Vec<u16>, small: Vec<u16>) {
        let entry = PendingEq { big: self.to_rank(&big), small: self.to_rank(&small) };
        if self.pending.insert(entry.clone()) && self.fifo {
            self.pending_fifo.push_back(entry);
        }
    }

    /// Next pending equation per the configured strategy: discovery
    /// order when FIFO is on, otherwise smallest-first. Stale FIFO
    /// entries (already popped via the set) are skipped.
    fn pop_pending(&mut self) -> Option<PendingEq> {
        if self.fifo {
            while let Some(e) = self.pending_fifo.pop_front() {
                if self.pending.remove(&e) {
                    return Some(e);
                }
            }
        }
        self.pending.pop_first()
    }

    /// Overlaps where a proper suffix of `r1.lhs` equals a proper
    /// prefix of `r2.lhs`: the word `l1 * l2[o..]` reduces two ways.
    ///
    /// Prime-overlap criterion: if the overlap word contains a rule lhs
    /// other than the two defining occurrences, the critical pair is
    /// redundant (the peak decomposes into smaller peaks whose critical
    /// pairs the fair pair scan considers separately) and is skipped.
    fn overlap_pairs(&mut self, r1: &RewriteRule, r2: &RewriteRule) {
        let (l1, l2) = (r1.lhs.clone(), r2.lhs.clone());
        let max_o = l1.len().min(l2.len());
        for o in 1..max_o {
            if l1[l1.len() - o] != l2[0] || l1[l1.len() - o..] != l2[..o] {
                continue;
            }
            let mut overlap_word = l1.clone();
            overlap_word.extend_from_slice(&l2[o..]);
            if self.has_extra_redex(&overlap_word, l1.len(), l1.len() - o, l2.len()) {
                continue;
            }
            let mut left = r1.rhs.clone();
            left.extend_from_slice(&l2[o..]);
            let mut right = l1[..l1.len() - o].to_vec();
            right.extend_from_slice(&r2.rhs);
            self.consider(left, right);
        }
    }

    /// True if `w` contains an occurrence of some rule lhs other than
    /// the designated ones at `(0, len1)` and `(pos2, len2)`.
    fn has_extra_redex(&self, w: &[u16], len1: usize, pos2: usize, len2: usize) -> bool {
        for s in 0..w.len() {
            let mut node = 0u32;
            for (k, &l) in w[s..].iter().enumerate() {
                node = match self.trie.child(node, l) {
                    Some(c) => c,
                    None => break,
                };
                if self.trie.nodes[node as usize].rule.is_some() {
                    let m = k + 1;
                    if !((s == 0 && m == len1) || (s == pos2 && m == len2)) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Incremental inter-reduction at scan time: if the rule's lhs has
    /// become reducible by other rules, delete it and requeue its
    /// equation (returning false); otherwise refresh its rhs. This
    /// keeps stale rules from breeding critical pairs between tidies.
    fn validate_rule(&mut self, idx: u32) -> bool {
        let rule = match &self.rules[idx as usize] {
            Some(r) => r.clone(),
            None => return false,
        };
        self.trie.set_rule(&rule.lhs, None);
        let reduced_lhs = self.reduce_letters(&rule.lhs);
        if reduced_lhs != rule.lhs {
            self.rules[idx as usize] = None;
            self.active_rules -= 1;
            if !self.scanned[idx as usize] {
                self.todo.remove(&Self::todo_key(&rule.lhs, idx));
                self.todo_idx.remove(&idx);
            }
            self.push_pending(rule.lhs, rule.rhs);
            return false;
        }
        self.trie.set_rule(&rule.lhs, Some(idx));
        let reduced_rhs = self.reduce_letters(&rule.rhs);
        if reduced_rhs != rule.rhs {
            self.rules[idx as usize].as_mut().unwrap().rhs = reduced_rhs;
        }
        true
    }

    /// Inter-reduction: rules with a reducible lhs are removed and
    /// requeued as equations; every surviving rhs is re-reduced.
    fn tidy(&mut self) {
        for idx in 0..self.rules.len() as u32 {
            let rule = match &self.rules[idx as usize] {
                Some(r) => r.clone(),
                None => continue,
            };
            self.trie.set_rule(&rule.lhs, None);
            let reduced_lhs = self.reduce_letters(&rule.lhs);
            if reduced_lhs != rule.lhs {
                self.rules[idx as usize] = None;
                self.active_rules -= 1;
                if !self.scanned[idx as usize] {
                    self.todo.remove(&Self::todo_key(&rule.lhs, idx));
                    self.todo_idx.remove(&idx);
                }
                self.push_pending(rule.lhs, rule.rhs);
                continue;
            }
            self.trie.set_rule(&rule.lhs, Some(idx));
            let reduced_rhs = self.reduce_letters(&rule.rhs);
            if reduced_rhs != rule.rhs {
                self.rules[idx as usize].as_mut().unwrap().rhs = reduced_rhs;
                // A changed rhs changes the critical pairs this rule
                // resolves to; queue it for re-scanning.
                if self.scanned[idx as usize] {
                    self.scanned[idx as usize] = false;
                    self.todo.insert(Self::todo_key(&rule.lhs, idx));
                    self.todo_idx.insert(idx);
                }
            }
        }
        self.rebuild_trie();
    }

    fn rebuild_trie(&mut self) {
        let mut trie = Trie::new();
        let mut max_len = 0;
        for (i, rule) in self.rules.iter().enumerate() {
            if let Some(r) = rule {
                trie.insert(&r.lhs, i as u32);
                max_len = max_len.max(r.lhs.len());
            }
        }
        self.trie = trie;
        self.max_lhs_len = max_len;
    }

    /// The standard completion loop. Caps return `Bounded`; the rule
    /// set remains usable for sound reduction either way.
    pub fn complete(&mut self, params: &CompletionParams) -> CompletionStatus {
        self.complete_with_stop(params, |_| false)
    }

    /// Completion with an external stop condition, polled after each
    /// new rule; used for checkpoint-and-resume runs.
    pub fn complete_with_stop(
        &mut self,
        params: &CompletionParams,
        mut stop: impl FnMut(&Stats) -> bool,
    ) -> CompletionStatus {
        let mut since_tidy = 0usize;
        loop {
            // Drain discovered equations into rules (smallest first, or
            // discovery order in FIFO mode).
            while let Some(entry) = self.pop_pending() {
                if self.stats.equations_processed >= params.max_equations {
                    if self.fifo {
                        self.pending_fifo.push_front(entry.clone());
                    }
                    self.pending.insert(entry);
                    return CompletionStatus::Bounded(BoundReason::EquationCap);
                }
                let a = self.from_rank(&entry.big);
                let b = self.from_rank(&entry.small);
                self.stats.equations_processed += 1;
                let ra = self.reduce_letters(&a);
                let rb = self.reduce_letters(&b);
                let (ra, rb) = Self::cancel_ends(ra, rb);
                if ra == rb {
                    continue;
                }
                if self.active_rules >= params.max_rules {
                    match self.letters.cmp_shortlex(&ra, &rb) {
                        Ordering::Greater => self.push_pending(ra, rb),
                        _ => self.push_pending(rb, ra),
                    }
                    return CompletionStatus::Bounded(BoundReason::RuleCap);
                }
                let (lhs, rhs) = match self.letters.cmp_shortlex(&ra, &rb) {
                    Ordering::Greater => (ra, rb),
                    Ordering::Less => (rb, ra),
                    Ordering::Equal => unreachable!("shortlex is total on distinct strings"),
                };
                if lhs.len() > params.max_stored_len {
                    self.stats.discarded += 1;
                    continue;
                }
                // Group quotient: every equation implies its inverse
                // (reverse the word, invert each letter), which often
                // yields the mirror-image rule directly.
                let inv = |w: &[u16]| -> Vec<u16> {
                    w.iter().rev().map(|&l| LetterSet::inverse(l)).collect()
                };
                let (ilhs, irhs) = (inv(&lhs), inv(&rhs));
                self.add_rule(lhs, rhs);
                self.consider(ilhs, irhs);
                since_tidy += 1;
                self.stats.pending = self.pending.len();
                self.stats.active = self.active_rules;
                self.stats.todo = self.todo.len();
                if stop(&self.stats) {
                    return CompletionStatus::Interrupted(format!(
                        "rules={} eq={}",
                        self.stats.rules_added, self.stats.equations_processed
                    ));
                }
                if since_tidy >= params.tidy_interval {
                    self.tidy();
                    since_tidy = 0;
                }
            }
            // Select the next unscanned rule and consider its overlaps
            // with every previously scanned rule. Selection alternates
            // between the oldest unscanned rule (so consequences of
            // the input relators are explored breadth-first from the
            // axioms) and the one with the shortest lhs (so short
            // derived rules, which breed the most consequential
            // critical pairs, are not starved by the backlog).
            let picked = if self.fifo || !self.scan_flip {
                self.todo_idx.iter().next().copied()
            } else {
                self.todo.iter().next().map(|e| e.2)
            };
            match picked {
                None => {
                    self.tidy();
                    if self.pending.is_empty() && self.todo.is_empty() {
                        return if self.stats.discarded > 0 {
                            CompletionStatus::Bounded(BoundReason::StoredLenCap)
                        } else {
                            CompletionStatus::Confluent
                        };
                    }
                }
                Some(idx) => {
                    self.scan_flip = !self.scan_flip;
                    let lhs = self.rules[idx as usize].as_ref().expect("unscanned rule").lhs.clone();
                    self.todo.remove(&Self::todo_key(&lhs, idx));
                    self.todo_idx.remove(&idx);
                    self.scanned[idx as usize] = true;
                    if !self.validate_rule(idx) {
                        continue;
                    }
                    let r = match self.rules[idx as usize].clone() {
                        Some(r) => r,
                        None => continue,
                    };
                    self.overlap_pairs(&r, &r);
                    for other_idx in 0..self.rules.len() as u32 {
                        if other_idx == idx || !self.scanned[other_idx as usize] {
                            continue;
                        }
                        if !self.validate_rule(other_idx) {
                            continue;
                        }
                        let other = match self.rules[other_idx as usize].clone() {
                            Some(o) => o,
                            None => continue,
                        };
                        self.overlap_pairs(&r, &other);
                        self.overlap_pairs(&other, &r);
                    }
                }
            }
        }
    }

    /// Counts irreducible words, up to `limit`. On a confluent system
    /// this is the order of the presented monoid (group).
    pub fn count_irreducible(&self, limit: usize) -> Option<usize> {
        let n = self.letters.n_letters() as u16;
        let mut count = 1usize; // the empty word
        let mut stack: Vec<Vec<u16>> = vec![Vec::new()];
        while let Some(prefix) = stack.pop() {
            for l in 0..n {
                let mut next = prefix.clone();
                next.push(l);
                if self.has_reducible_suffix(&next) {
                    continue;
                }
                count += 1;
                if count > limit {
                    return None;
                }
                stack.push(next);
            }
        }
        Some(count)
    }

    /// True if some rule lhs is a suffix of `word` (ending at the last
    /// letter).
    fn has_reducible_suffix(&self, word: &[u16]) -> bool {
        let lo = word.len().saturating_sub(self.max_lhs_len);
        for start in lo..word.len() {
            if let Some((len, _)) = self.trie.longest_match(&word[start..]) {
                if start + len == word.len() {
                    return true;
                }
                // a shorter match ending exactly at the end may be
                // shadowed by a longer prefix match; check explicitly
                if self
                    .trie
                    .walk(&word[start..])
                    .is_some_and(|n| self.trie.nodes[n as usize].rule.is_some())
                {
                    return true;
                }
            }
        }
        false
    }

    /// Versioned text checkpoint; `restore` round-trips rules, pending
    /// queue, ranking, and stats exactly.
    pub fn checkpoint(&self) -> String {
        let mut out = String::new();
        out.push_str("kbchk 1\n");
        out.push_str(&self.letters.ranking_line());
        out.push('\n');
        for rule in self.active_rules() {
            out.push_str(&self.letters.render(&rule.lhs));
            out.push_str(" -> ");
            out.push_str(&self.letters.render(&rule.rhs));
            out.push('\n');
        }
        out.push_str("---\n");
        for entry in &self.pending {
            out.push_str(&self.letters.render(&self.from_rank(&entry.big)));
            out.push_str(" = ");
            out.push_str(&self.letters.render(&self.from_rank(&entry.small)));
            out.push('\n');
        }
        // Unscanned rules, as positions into the compacted rule list
        // written above (active rules only, in index order).
        let unscanned: Vec<String> = self
            .rules
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_some())
            .enumerate()
            .filter(|(_, (idx, _))| !self.scanned[*idx])
            .map(|(pos, _)| pos.to_string())
            .collect();
        out.push_str(&format!(
            "scan flip={} todo={}\n",
            if self.scan_flip { 1 } else { 0 },
            unscanned.join(",")
        ));
        out.push_str(&format!(
            "stats input={} processed={} rules={} discarded={}\n",
            self.stats.input_equations,
            self.stats.equations_processed,
            self.stats.rules_added,
            self.stats.discarded
        ));
        out
    }

    pub fn restore(blob: &str) -> Result<RewriteSystem, CheckpointError> {
        let mut lines = blob.lines();
        let header = lines.next().ok_or(CheckpointError::MissingHeader)?;
        match header.strip_prefix("kbchk ") {
            Some("1") => {}
            Some(v) => return Err(CheckpointError::VersionMismatch(v.to_string())),
            None => return Err(CheckpointError::MissingHeader),
        }
        let ranking = lines.next().ok_or_else(|| CheckpointError::Malformed("missing ranking".into()))?;
        let (letters, name_to_id) = parse_ranking_line(ranking)?;

        let parse_side = |s: &str| -> Result<Vec<u16>, CheckpointError> {
            parse_letter_string(s, &name_to_id)
        };

        let mut rules: Vec<Option<RewriteRule>> = Vec::new();
        let mut pending_words: Vec<(Vec<u16>, Vec<u16>)> = Vec::new();
        let mut stats = Stats::default();
        let mut todo_positions: Vec<usize> = Vec::new();
        let mut scan_flip = false;
        let mut section = 0; // 0 = rules, 1 = pending
        for line in lines {
            if line == "---" {
                section += 1;
                continue;
            }
            if let Some(rest) = line.strip_prefix("scan flip=") {
                let (flip, rest) = rest
                    .split_once(" todo=")
                    .ok_or_else(|| CheckpointError::Malformed(line.to_string()))?;
                scan_flip = flip == "1";
                for tok in rest.split(',').filter(|t| !t.is_empty()) {
                    let pos: usize = tok
                        .parse()
                        .map_err(|_| CheckpointError::Malformed(line.to_string()))?;
                    todo_positions.push(pos);
                }
                continue;
            }
            if let Some(rest) = line.strip_prefix("scan todo=") {
                for tok in rest.split(',').filter(|t| !t.is_empty()) {
                    let pos: usize = tok
                        .parse()
                        .map_err(|_| CheckpointError::Malformed(line.to_string()))?;
                    todo_positions.push(pos);
                }
                continue;
            }
            if let Some(rest) = line.strip_prefix("stats ") {
                for field in rest.split_whitespace() {
                    let (key, val) = field
                        .split_once('=')
                        .ok_or_else(|| CheckpointError::Malformed(line.to_string()))?;
                    let val: usize = val
                        .parse()
                        .map_err(|_| CheckpointError::Malformed(line.to_string()))?;
                    match key {
                        "input" => stats.input_equations = val,
                        "processed" => stats.equations_processed = val,
                        "rules" => stats.rules_added = val,
                        "discarded" => stats.discarded = val,
                        _ => return Err(CheckpointError::Malformed(line.to_string())),
                    }
                }
                continue;
            }
            match section {
                0 => {
                    let (lhs, rhs) = line
                        .split_once(" -> ")
                        .ok_or_else(|| CheckpointError::Malformed(line.to_string()))?;
                    rules.push(Some(RewriteRule { lhs: parse_side(lhs)?, rhs: parse_side(rhs)? }));
                }
                _ => {
                    let (a, b) = line
                        .split_once(" = ")
                        .ok_or_else(|| CheckpointError::Malformed(line.to_string()))?;
                    pending_words.push((parse_side(a)?, parse_side(b)?));
                }
            }
        }

        let active_rules = rules.len();
        let unrank = unrank_table(&letters);
        let scanned = vec![true; rules.len()];
        let mut rs = RewriteSystem {
            letters,
            rules,
            active_rules,
            max_lhs_len: 0,
            pending: BTreeSet::new(),
            pending_fifo: std::collections::VecDeque::new(),
            fifo: false,
            unrank,
            todo: BTreeSet::new(),
            todo_idx: BTreeSet::new(),
            scan_flip,
            scanned,
            stats,
            trie: Trie::new(),
        };
        for pos in todo_positions {
            if pos >= rs.rules.len() {
                return Err(CheckpointError::Malformed(format!("scan todo={pos}")));
            }
            rs.scanned[pos] = false;
            let lhs = rs.rules[pos].as_ref().expect("restored rules are active").lhs.clone();
            rs.todo.insert(Self::todo_key(&lhs, pos as u32));
            rs.todo_idx.insert(pos as u32);
        }
        for (a, b) in pending_words {
            rs.push_pending(a, b);
        }
        rs.rebuild_trie();
        Ok(rs)
    }

    /// The checkpoint stores the pair-scan cursor alongside the rules
    /// and pending equations, so a restored system picks up overlap
    /// generation exactly where the original run stopped.
    pub fn resume_ready(&self) -> bool {
        true
    }

    /// Overlap enumeration helper exposed for the prefix-index: all
    /// rules whose lhs starts with `prefix`, with residual depth.
    #[allow(dead_code)]
    fn rules_with_prefix(&self, prefix: &[u16]) -> Vec<(u32, usize)> {
        let mut out = Vec::new();
        if let Some(node) = self.trie.walk(prefix) {
            self.trie.rules_below(node, &mut out);
        }
        out
    }
}

fn parse_ranking_line(
    line: &str,
) -> Result<(LetterSet, std::collections::HashMap<String, u16>), CheckpointError> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.is_empty() || tokens.len() % 2 != 0 {
        return Err(CheckpointError::Malformed(line.to_string()));
    }
    // generator declaration order = order of first appearance
    let mut names: Vec<String> = Vec::new();
    for t in &tokens {
        let base = t.strip_suffix("^-1").unwrap_or(t);
        if !names.iter().any(|n| n == base) {
            names.push(base.to_string());
        }
    }
    let mut name_to_id = std::collections::HashMap::new();
    for (i, n) in names.iter().enumerate() {
        name_to_id.insert(n.clone(), 2 * i as u16);
        name_to_id.insert(format!("{n}^-1"), 2 * i as u16 + 1);
    }
    let mut rank = vec![u32::MAX; 2 * names.len()];
    for (pos, t) in tokens.iter().enumerate() {
        let id = *name_to_id
            .get(*t)
            .ok_or_else(|| CheckpointError::Malformed(line.to_string()))?;
        rank[id as usize] = pos as u32;
    }
    if rank.iter().any(|&r| r == u32::MAX) {
        return Err(CheckpointError::Malformed(line.to_string()));
    }
    Ok((LetterSet { names, rank }, name_to_id))
}

fn parse_letter_string(
    s: &str,
    name_to_id: &std::collections::HashMap<String, u16>,
) -> Result<Vec<u16>, CheckpointError> {
    let s = s.trim();
    if s == "1" || s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for factor in s.split('*') {
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (
                b,
                e.parse::<i64>()
                    .map_err(|_| CheckpointError::Malformed(factor.to_string()))?,
            ),
            None => (factor, 1),
        };
        let id = *name_to_id
            .get(base)
            .ok_or_else(|| CheckpointError::Malformed(factor.to_string()))?;
        let letter = if exp < 0 { LetterSet::inverse(id) } else { id };
        for _ in 0..exp.unsigned_abs() {
            out.push(letter);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_word;

    fn system(gens: &[&str], relators: &[&str]) -> RewriteSystem {
        let alpha = Alphabet::new(gens.iter().copied()).unwrap();
        let words: Vec<Word> = relators.iter().map(|r| parse_word(&alpha, r).unwrap()).collect();
        RewriteSystem::from_relator_list(&alpha, &words, None)
    }

    #[test]
    fn z2_completes_with_inverse_rule() {
        let mut rs = system(&["g"], &["g^2"]);
        let status = rs.complete(&CompletionParams::default());
        assert_eq!(status, CompletionStatus::Confluent);
        // g^-1 -> g must be derived
        let gi = rs.reduce_letters(&[1]);
        assert_eq!(gi, vec![0]);
        assert_eq!(rs.count_irreducible(100), Some(2));
    }

    #[test]
    fn empty_relator_list_leaves_free_rules() {
        let rs = system(&["a", "b"], &[]);
        assert_eq!(rs.rule_count(), 4);
        assert_eq!(rs.reduce_letters(&[0, 1, 0]), vec![0]);
    }

    #[test]
    fn cyclic_groups_have_ell_normal_forms() {
        for n in 2..=12usize {
            let mut rs = system(&["g"], &[&format!("g^{n}")]);
            assert_eq!(rs.complete(&CompletionParams::default()), CompletionStatus::Confluent);
            assert_eq!(rs.count_irreducible(1000), Some(n), "Z/{n}");
        }
    }

    #[test]
    fn s3_completes_to_six_normal_forms() {
        let mut rs = system(&["a", "b"], &["a^2", "b^2", "(a*b)^3"]);
        assert_eq!(rs.complete(&CompletionParams::default()), CompletionStatus::Confluent);
        assert_eq!(rs.count_irreducible(100), Some(6));
    }

    #[test]
    fn joinable_matches_group_equality_on_s3() {
        let mut rs = system(&["a", "b"], &["a^2", "b^2", "(a*b)^3"]);
        rs.complete(&CompletionParams::default());
        let alpha = Alphabet::new(["a", "b"]).unwrap();
        let ids = |s: &str| -> Vec<u16> {
            parse_word(&alpha, s)
                .unwrap()
                .letters()
                .iter()
                .map(|l| l.signed_id() as u16)
                .collect()
        };
        // aba = bab and ab != ba in S3
        assert!(rs.joinable(&ids("a*b*a"), &ids("b*a*b"), 1000));
        assert!(rs.joinable(&ids("a*b*a*b"), &ids("b*a"), 1000));
        assert!(!rs.joinable(&ids("a*b"), &ids("b*a"), 1000));
        assert!(!rs.joinable(&ids("a"), &ids("b"), 1000));
    }

    #[test]
    fn reduce_is_idempotent_and_sound() {
        let mut rs = system(&["a", "b"], &["a^2", "b^2", "(a*b)^3"]);
        rs.complete(&CompletionParams::default());
        let alpha = Alphabet::new(["a", "b"]).unwrap();
        let w = parse_word(&alpha, "a*b*a*b*a*b*a^-1").unwrap();
        let r1 = rs.reduce(&w);
        let r2 = rs.reduce_letters(&r1);
        assert_eq!(r1, r2);
        // the relator itself is trivial
        let rel = parse_word(&alpha, "(a*b)^3").unwrap();
        assert_eq!(rs.certify_trivial(&rel), Certificate::ProvedTrivial);
        assert_eq!(rs.certify_trivial(&Word::identity(&alpha)), Certificate::ProvedTrivial);
    }

    #[test]
    fn bounded_on_tiny_rule_cap() {
        let mut rs = system(&["a", "b"], &["a^2", "b^2", "(a*b)^3"]);
        let params = CompletionParams { max_rules: 5, ..CompletionParams::default() };
        assert_eq!(rs.complete(&params), CompletionStatus::Bounded(BoundReason::RuleCap));
        // the bounded system still reduces soundly
        let alpha = Alphabet::new(["a", "b"]).unwrap();
        let w = parse_word(&alpha, "a*a").unwrap();
        assert_eq!(rs.certify_trivial(&w), Certificate::ProvedTrivial);
    }

    #[test]
    fn checkpoint_roundtrip_empty_and_full() {
        let rs = system(&["a", "b"], &[]);
        let blob = rs.checkpoint();
        let back = RewriteSystem::restore(&blob).unwrap();
        assert_eq!(back.checkpoint(), blob);

        let mut rs = system(&["a", "b"], &["a^2", "b^2", "(a*b)^3"]);
        rs.complete(&CompletionParams::default());
        let blob = rs.checkpoint();
        let back = RewriteSystem::restore(&blob).unwrap();
        assert_eq!(back.checkpoint(), blob);
        assert_eq!(back.count_irreducible(100), Some(6));
    }

    #[test]
    fn checkpoint_version_mismatch() {
        let err = RewriteSystem::restore("kbchk 99\nz z^-1\n---\nstats input=0 processed=0 rules=0\n")
            .err()
            .unwrap();
        assert_eq!(err, CheckpointError::VersionMismatch("99".to_string()));
    }

    #[test]
    fn interrupted_resume_matches_uninterrupted() {
        let build = || system(&["a", "b"], &["a^2", "b^2", "(a*b)^3"]);
        let params = CompletionParams::default();

        let mut straight = build();
        assert_eq!(straight.complete(&params), CompletionStatus::Confluent);

        let mut interrupted = build();
        let status = interrupted.complete_with_stop(&params, |s| s.rules_added >= 8);
        assert!(matches!(status, CompletionStatus::Interrupted(_)));
        let blob = interrupted.checkpoint();
        let mut resumed = RewriteSystem::restore(&blob).unwrap();
        assert_eq!(resumed.complete(&params), CompletionStatus::Confluent);

        let final_rules = |rs: &RewriteSystem| -> Vec<(Vec<u16>, Vec<u16>)> {
            let mut v: Vec<_> = rs
                .active_rules()
                .map(|r| (r.lhs.clone(), r.rhs.clone()))
                .collect();
            v.sort();
            v
        };
        assert_eq!(final_rules(&straight), final_rules(&resumed));
    }

    #[test]
    fn trivial_products_of_conjugated_relators() {
        use rand::{Rng, SeedableRng};
        let alpha = Alphabet::new(["a", "b"]).unwrap();
        let rels = ["a^2", "b^2", "(a*b)^3"];
        let words: Vec<Word> = rels.iter().map(|r| parse_word(&alpha, r).unwrap()).collect();
        let mut rs = RewriteSystem::from_relator_list(&alpha, &words, None);
        rs.complete(&CompletionParams::default());

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let mut q = Word::identity(&alpha);
            for _ in 0..rng.gen_range(1..4) {
                let r = &words[rng.gen_range(0..words.len())];
                let mut x = Word::identity(&alpha);
                for _ in 0..rng.gen_range(0..4) {
                    let g = rng.gen_range(0..2u32);
                    let inv = rng.gen_bool(0.5);
                    x = x
                        .concat(&Word::from_letters(&alpha, [crate::words::Letter::new(g, inv)]).unwrap())
                        .unwrap();
                }
                let conj = x.concat(r).unwrap().concat(&x.invert()).unwrap();
                let piece = if rng.gen_bool(0.5) { conj } else { conj.invert() };
                q = q.concat(&piece).unwrap();
            }
            assert_eq!(rs.certify_trivial(&q), Certificate::ProvedTrivial);
        }
    }
}
