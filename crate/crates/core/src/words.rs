//! Free-group word arithmetic over a declared generator alphabet.
//!
//! Words are stored freely reduced at all times; unreduced letter
//! sequences exist only transiently inside the constructors.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("alphabet mismatch: {0:?} vs {1:?}")]
    AlphabetMismatch(Vec<String>, Vec<String>),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("letter index {0} out of range for alphabet of size {1}")]
    IndexOutOfRange(u32, usize),
}

/// Ordered list of generator identifiers, fixed at construction.
#[derive(Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>, WordError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if !is_valid_name(n) {
                return Err(WordError::InvalidName(n.clone()));
            }
            if index.insert(n.clone(), i as u32).is_some() {
                return Err(WordError::DuplicateGenerator(n.clone()));
            }
        }
        Ok(Arc::new(Alphabet { names, index }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty name lists
    }

    pub fn name(&self, i: u32) -> &str {
        &self.names[i as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }
}

fn is_valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric())
}

/// A signed generator letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u32, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    /// Identifier in `0..2n`: the generator immediately followed by its
    /// formal inverse.
    pub fn signed_id(self) -> usize {
        2 * self.gen as usize + self.inverse as usize
    }

    pub fn from_signed_id(id: usize) -> Self {
        Letter { gen: (id / 2) as u32, inverse: id % 2 == 1 }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// Freely reduced sequence of signed generator letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    letters: Vec<Letter>,
}

impl std::hash::Hash for Word {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl Word {
    pub fn identity(alphabet: &Arc<Alphabet>) -> Self {
        Word { alphabet: Arc::clone(alphabet), letters: Vec::new() }
    }

    pub fn generator(alphabet: &Arc<Alphabet>, gen: u32) -> Result<Self, WordError> {
        Self::from_letters(alphabet, [Letter::new(gen, false)])
    }

    /// Builds a word from raw letters, reducing freely.
    pub fn from_letters(
        alphabet: &Arc<Alphabet>,
        letters: impl IntoIterator<Item = Letter>,
    ) -> Result<Self, WordError> {
        let mut reduced: Vec<Letter> = Vec::new();
        for l in letters {
            if l.gen as usize >= alphabet.len() {
                return Err(WordError::IndexOutOfRange(l.gen, alphabet.len()));
            }
            push_reduced(&mut reduced, l);
        }
        Ok(Word { alphabet: Arc::clone(alphabet), letters: reduced })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_same_alphabet(&self, other: &Word) -> Result<(), WordError> {
        if Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(WordError::AlphabetMismatch(
                self.alphabet.names.clone(),
                other.alphabet.names.clone(),
            ))
        }
    }

    /// Group product with free reduction.
    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        self.check_same_alphabet(other)?;
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(Word { alphabet: Arc::clone(&self.alphabet), letters })
    }

    /// Reversed word with flipped signs; `w * w^-1 = 1`.
    pub fn invert(&self) -> Word {
        let letters = self.letters.iter().rev().map(|l| l.inverted()).collect();
        Word { alphabet: Arc::clone(&self.alphabet), letters }
    }

    /// `[x, y] = x y x^-1 y^-1`, freely reduced.
    pub fn commutator(&self, other: &Word) -> Result<Word, WordError> {
        self.concat(other)?.concat(&self.invert())?.concat(&other.invert())
    }

    /// `n`-fold product, inverse for negative `n`.
    pub fn power(&self, n: i64) -> Word {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity(&self.alphabet);
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base).expect("same alphabet");
        }
        out
    }

    /// Signed letter counts per generator; additive under `concat`.
    pub fn exponent_vector(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.alphabet.len()];
        for l in &self.letters {
            v[l.gen as usize] += if l.inverse { -1 } else { 1 };
        }
        v
    }

    /// Renders the word in the text grammar, merging runs of equal
    /// letters into exponents. The empty word renders as an empty string.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1usize;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let name = self.alphabet.name(l.gen);
            let exp = if l.inverse { -(run as i64) } else { run as i64 };
            if exp == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{exp}"));
            }
            i += run;
        }
        parts.join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "<identity>")
        } else {
            write!(f, "{}", self.render())
        }
    }
}

fn push_reduced(letters: &mut Vec<Letter>, l: Letter) {
    match letters.last() {
        Some(&top) if top.cancels(l) => {
            letters.pop();
        }
        _ => letters.push(l),
    }
}

/// Total order on the `2n` signed letters; `rank[signed_id]` is the
/// priority, smaller is earlier. The default ranking interleaves each
/// generator with its formal inverse: `g1 < g1^-1 < g2 < ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterOrder {
    rank: Vec<u32>,
}

impl LetterOrder {
    pub fn default_for(alphabet: &Alphabet) -> Self {
        LetterOrder { rank: (0..2 * alphabet.len() as u32).collect() }
    }

    /// Ranking induced by a permutation of the generators, keeping each
    /// generator immediately before its formal inverse.
    pub fn from_generator_order(alphabet: &Alphabet, order: &[u32]) -> Result<Self, WordError> {
        let n = alphabet.len();
        let mut rank = vec![u32::MAX; 2 * n];
        let mut next = 0u32;
        for &g in order {
            if g as usize >= n {
                return Err(WordError::IndexOutOfRange(g, n));
            }
            rank[Letter::new(g, false).signed_id()] = next;
            rank[Letter::new(g, true).signed_id()] = next + 1;
            next += 2;
        }
        if rank.iter().any(|&r| r == u32::MAX) {
            return Err(WordError::IndexOutOfRange(order.len() as u32, n));
        }
        Ok(LetterOrder { rank })
    }

    pub fn rank(&self, l: Letter) -> u32 {
        self.rank[l.signed_id()]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.rank
    }
}

/// Shortlex comparison: shorter word first, equal lengths letterwise by
/// rank.
pub fn shortlex_cmp(a: &Word, b: &Word, order: &LetterOrder) -> Ordering {
    shortlex_cmp_letters(a.letters(), b.letters(), order)
}

pub fn shortlex_cmp_letters(a: &[Letter], b: &[Letter], order: &LetterOrder) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (&x, &y) in a.iter().zip(b) {
            match order.rank(x).cmp(&order.rank(y)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Arc<Alphabet> {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    fn w(alpha: &Arc<Alphabet>, s: &str) -> Word {
        crate::io::parse_word(alpha, s).unwrap()
    }

    #[test]
    fn inverse_cancellation() {
        let alpha = abc();
        let g = Word::generator(&alpha, 0).unwrap();
        assert!(g.concat(&g.invert()).unwrap().is_empty());
    }

    #[test]
    fn identity_laws() {
        let alpha = abc();
        let e = Word::identity(&alpha);
        let x = w(&alpha, "a*b^-1*c");
        assert_eq!(e.concat(&x).unwrap(), x);
        assert_eq!(x.concat(&e).unwrap(), x);
    }

    #[test]
    fn concat_reduces_across_boundary() {
        let alpha = abc();
        let left = w(&alpha, "a*b");
        let right = w(&alpha, "b^-1*c");
        assert_eq!(left.concat(&right).unwrap(), w(&alpha, "a*c"));
    }

    #[test]
    fn invert_examples() {
        let alpha = abc();
        assert!(Word::identity(&alpha).invert().is_empty());
        assert_eq!(w(&alpha, "a*b").invert(), w(&alpha, "b^-1*a^-1"));
    }

    #[test]
    fn commutator_examples() {
        let alpha = abc();
        let a = w(&alpha, "a");
        let b = w(&alpha, "b");
        assert!(a.commutator(&a).unwrap().is_empty());
        let c = a.commutator(&b).unwrap();
        assert_eq!(c, w(&alpha, "a*b*a^-1*b^-1"));
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn power_examples() {
        let alpha = abc();
        let x = w(&alpha, "a*b^-1");
        assert!(x.power(0).is_empty());
        assert_eq!(w(&alpha, "a").power(3), w(&alpha, "a^3"));
        assert_eq!(x.power(-1), x.invert());
    }

    #[test]
    fn shortlex_examples() {
        let alpha = abc();
        let ord = LetterOrder::default_for(&alpha);
        let e = Word::identity(&alpha);
        assert_eq!(shortlex_cmp(&e, &w(&alpha, "a"), &ord), Ordering::Less);
        assert_eq!(shortlex_cmp(&w(&alpha, "a^2"), &w(&alpha, "b"), &ord), Ordering::Greater);
        assert_eq!(shortlex_cmp(&w(&alpha, "a*b"), &w(&alpha, "a*c"), &ord), Ordering::Less);
    }

    #[test]
    fn exponent_vector_examples() {
        let alpha = abc();
        assert_eq!(Word::identity(&alpha).exponent_vector(), vec![0, 0, 0]);
        let a = w(&alpha, "a");
        let b = w(&alpha, "b");
        assert_eq!(a.commutator(&b).unwrap().exponent_vector(), vec![0, 0, 0]);
        assert_eq!(w(&alpha, "a^2*b^-1").exponent_vector(), vec![2, -1, 0]);
    }

    #[test]
    fn alphabet_mismatch_rejected() {
        let alpha = abc();
        let other = Alphabet::new(["x", "y"]).unwrap();
        let a = w(&alpha, "a");
        let x = Word::generator(&other, 0).unwrap();
        assert!(matches!(a.concat(&x), Err(WordError::AlphabetMismatch(_, _))));
    }

    #[test]
    fn duplicate_generator_rejected() {
        assert!(matches!(
            Alphabet::new(["a", "a"]),
            Err(WordError::DuplicateGenerator(_))
        ));
    }

    #[test]
    fn render_merges_runs() {
        let alpha = abc();
        assert_eq!(w(&alpha, "a*a*a*b^-1*b^-1*c").render(), "a^3*b^-2*c");
    }
}
