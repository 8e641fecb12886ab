//! Free-group words, presentations, integral characters, Magnus rewriting
//! into the conjugate letters b_k = a^k b a^{-k}, and the subscript-shift
//! endomorphism induced by conjugation.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::CoreError;

/// One signed letter of a word over indexed generators.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Self {
        Letter { gen, inv }
    }
    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }
    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }
}

/// A freely reduced word over indexed generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

fn reduce_push<L: Copy>(out: &mut Vec<L>, l: L, cancels: impl Fn(L, L) -> bool) {
    match out.last() {
        Some(&top) if cancels(top, l) => {
            out.pop();
        }
        _ => out.push(l),
    }
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Build from raw letters, freely reducing.
    pub fn from_letters(raw: impl IntoIterator<Item = Letter>) -> Self {
        let mut out = Vec::new();
        for l in raw {
            reduce_push(&mut out, l, Letter::cancels);
        }
        Word { letters: out }
    }

    pub fn generator(gen: usize) -> Self {
        Word { letters: vec![Letter::new(gen, false)] }
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

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k >= 0 { self.clone() } else { self.inverse() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Idempotent; `from_letters` already reduces, so this re-canonicalizes
    /// only words built by direct manipulation.
    pub fn free_reduce(&self) -> Word {
        Word::from_letters(self.letters.iter().copied())
    }

    /// Strip matching inverse letters from the two ends.
    pub fn cyclic_reduce(&self) -> Word {
        let mut ls = self.free_reduce().letters;
        while ls.len() >= 2 && ls[0].cancels(*ls.last().unwrap()) {
            ls.pop();
            ls.remove(0);
        }
        Word { letters: ls }
    }

    /// Exponent sum of a single generator.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| if l.inv { -1 } else { 1 })
            .sum()
    }

    /// Substitute each generator by a word (signed), then reduce.
    pub fn substitute(&self, image: impl Fn(usize) -> Word) -> Word {
        let mut out = Word::empty();
        for l in &self.letters {
            let w = image(l.gen);
            out = out.concat(&if l.inv { w.inverse() } else { w });
        }
        out
    }
}

/// Two-generator alphabet: compact case-coded letters `a A b B`
/// (whitespace ignored). Generator indices: a = 0, b = 1.
pub fn parse_two_gen(text: &str) -> Result<Word, CoreError> {
    let mut letters = Vec::new();
    for (pos, ch) in text.char_indices() {
        let l = match ch {
            'a' => Letter::new(0, false),
            'A' => Letter::new(0, true),
            'b' => Letter::new(1, false),
            'B' => Letter::new(1, true),
            c if c.is_whitespace() => continue,
            _ => {
                return Err(CoreError::BadToken { input: text.to_string(), position: pos });
            }
        };
        letters.push(l);
    }
    Ok(Word::from_letters(letters))
}

pub fn format_two_gen(w: &Word) -> String {
    w.letters
        .iter()
        .map(|l| match (l.gen, l.inv) {
            (0, false) => 'a',
            (0, true) => 'A',
            (1, false) => 'b',
            (1, true) => 'B',
            _ => '?',
        })
        .collect()
}

/// Rank-6 alphabet for the ascent certificate: whitespace-separated tokens
/// `b0..b4` (inverses `B0..B4`) for the fiber basis and `u` (inverse `U`)
/// for the free-product letter mu. Indices: b_k = k, mu = 5.
pub const MU_INDEX: usize = 5;

pub fn parse_rank6(text: &str) -> Result<Word, CoreError> {
    let mut letters = Vec::new();
    let mut offset = 0usize;
    for tok in text.split_whitespace() {
        // byte position of this token, for error reporting
        let pos = text[offset..].find(tok).map(|p| p + offset).unwrap_or(offset);
        offset = pos + tok.len();
        let bad = || CoreError::BadToken { input: text.to_string(), position: pos };
        let l = match tok {
            "u" => Letter::new(MU_INDEX, false),
            "U" => Letter::new(MU_INDEX, true),
            _ => {
                let mut chars = tok.chars();
                let inv = match chars.next() {
                    Some('b') => false,
                    Some('B') => true,
                    _ => return Err(bad()),
                };
                let k: usize = chars.as_str().parse().map_err(|_| bad())?;
                if k > 4 {
                    return Err(bad());
                }
                Letter::new(k, inv)
            }
        };
        letters.push(l);
    }
    Ok(Word::from_letters(letters))
}

pub fn format_rank6(w: &Word) -> String {
    w.letters
        .iter()
        .map(|l| match (l.gen, l.inv) {
            (MU_INDEX, false) => "u".to_string(),
            (MU_INDEX, true) => "U".to_string(),
            (k, false) => format!("b{}", k),
            (k, true) => format!("B{}", k),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// A finite presentation; relators kept cyclically reduced.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        Presentation {
            generators,
            relators: relators.iter().map(|r| r.cyclic_reduce()).collect(),
        }
    }
}

/// An integral character: one integer per generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    pub values: Vec<i64>,
}

impl Character {
    pub fn new(values: Vec<i64>) -> Self {
        Character { values }
    }

    pub fn apply(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|l| {
                let v = self.values.get(l.gen).copied().unwrap_or(0);
                if l.inv {
                    -v
                } else {
                    v
                }
            })
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

/// One signed letter b_k^{+-1} of a subscripted (Magnus) word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SubLetter {
    pub sub: i64,
    pub inv: bool,
}

impl SubLetter {
    pub fn new(sub: i64, inv: bool) -> Self {
        SubLetter { sub, inv }
    }
    pub fn inverse(self) -> Self {
        SubLetter { sub: self.sub, inv: !self.inv }
    }
    fn cancels(self, other: SubLetter) -> bool {
        self.sub == other.sub && self.inv != other.inv
    }
}

/// A freely reduced word in the letters b_k, k ranging over the integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SubscriptedWord {
    letters: Vec<SubLetter>,
}

impl SubscriptedWord {
    pub fn empty() -> Self {
        SubscriptedWord { letters: Vec::new() }
    }

    pub fn from_letters(raw: impl IntoIterator<Item = SubLetter>) -> Self {
        let mut out = Vec::new();
        for l in raw {
            reduce_push(&mut out, l, SubLetter::cancels);
        }
        SubscriptedWord { letters: out }
    }

    pub fn letters(&self) -> &[SubLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> SubscriptedWord {
        SubscriptedWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &SubscriptedWord) -> SubscriptedWord {
        SubscriptedWord::from_letters(
            self.letters.iter().chain(other.letters.iter()).copied(),
        )
    }

    /// Add a constant to every subscript.
    pub fn shift_subscripts(&self, by: i64) -> SubscriptedWord {
        SubscriptedWord {
            letters: self
                .letters
                .iter()
                .map(|l| SubLetter::new(l.sub + by, l.inv))
                .collect(),
        }
    }

    pub fn min_max_subscripts(&self) -> Option<(i64, i64)> {
        let subs: Vec<i64> = self.letters.iter().map(|l| l.sub).collect();
        Some((*subs.iter().min()?, *subs.iter().max()?))
    }

    fn count_subscript(&self, k: i64) -> usize {
        self.letters.iter().filter(|l| l.sub == k).count()
    }

    /// Reinterpret as a `Word` over generators indexed by subscript, when all
    /// subscripts lie in 0..=max_gen (used to hand basis words to folding
    /// and matrix evaluation).
    pub fn to_basis_word(&self, max_gen: usize) -> Option<Word> {
        let mut letters = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            if l.sub < 0 || l.sub as usize > max_gen {
                return None;
            }
            letters.push(Letter::new(l.sub as usize, l.inv));
        }
        Some(Word::from_letters(letters))
    }

    pub fn from_basis_word(w: &Word) -> SubscriptedWord {
        SubscriptedWord::from_letters(
            w.letters().iter().map(|l| SubLetter::new(l.gen as i64, l.inv)),
        )
    }
}

impl fmt::Display for SubscriptedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|l| format!("{}{}", if l.inv { "B" } else { "b" }, l.sub))
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// Magnus rewriting for the standard character (a -> 1, b -> 0): each b-letter
/// at strict-prefix a-exponent-sum k becomes b_k; a-letters vanish.
///
/// Requires total a-exponent sum zero.
pub fn magnus_rewrite(relator: &Word) -> Result<SubscriptedWord, CoreError> {
    if relator.exponent_sum(0) != 0 {
        return Err(CoreError::NonzeroExponentSum);
    }
    let mut k = 0i64;
    let mut out = Vec::new();
    for l in relator.letters() {
        match l.gen {
            0 => k += if l.inv { -1 } else { 1 },
            _ => out.push(SubLetter::new(k, l.inv)),
        }
    }
    Ok(SubscriptedWord::from_letters(out))
}

/// Outcome of the extremal-subscript test on a subscripted relator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelRank {
    /// Both extremal subscripts occur exactly once: the kernel is free with
    /// basis b_basis_min .. b_basis_max (inclusive).
    FreeOfRank { rank: u32, basis_min: i64, basis_max: i64 },
    /// At least one extreme repeats; the criterion gives no free basis.
    ExtremesRepeat { min: i64, min_count: usize, max: i64, max_count: usize },
}

pub fn kernel_rank(sw: &SubscriptedWord) -> Result<KernelRank, CoreError> {
    let (min, max) = sw.min_max_subscripts().ok_or(CoreError::EmptyWord)?;
    let min_count = sw.count_subscript(min);
    let max_count = sw.count_subscript(max);
    if min_count == 1 && max_count == 1 {
        Ok(KernelRank::FreeOfRank {
            rank: (max - min) as u32,
            basis_min: min,
            basis_max: max - 1,
        })
    } else {
        Ok(KernelRank::ExtremesRepeat { min, min_count, max, max_count })
    }
}

/// Which end of the subscript range to solve for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremal {
    Max,
    Min,
}

/// Isolate the extremal letter of a relator: writing it as u . b_e^{eps} . v,
/// return the word equal to b_e (so that substituting it back free-reduces
/// the relator to the empty word). The extremal subscript must occur once.
pub fn solve_for_extremal(
    sw: &SubscriptedWord,
    end: Extremal,
) -> Result<SubscriptedWord, CoreError> {
    let (min, max) = sw.min_max_subscripts().ok_or(CoreError::EmptyWord)?;
    let target = match end {
        Extremal::Max => max,
        Extremal::Min => min,
    };
    if sw.count_subscript(target) != 1 {
        return Err(CoreError::ExtremeRepeats(target));
    }
    let pos = sw
        .letters
        .iter()
        .position(|l| l.sub == target)
        .expect("extremal letter present");
    let u = SubscriptedWord::from_letters(sw.letters[..pos].iter().copied());
    let v = SubscriptedWord::from_letters(sw.letters[pos + 1..].iter().copied());
    let expr = u.inverse().concat(&v.inverse());
    Ok(if sw.letters[pos].inv {
        // u b_e^{-1} v = 1  =>  b_e = v u
        expr.inverse()
    } else {
        expr
    })
}

/// Rewriting system induced by one relator whose extremal subscripts each
/// occur once: expresses any b_j in the free basis b_min .. b_{max-1} and
/// realizes the subscript-shift endomorphism (conjugation by powers of a).
#[derive(Clone, Debug)]
pub struct ShiftRewriter {
    basis_min: i64,
    basis_max: i64,
    /// b_{basis_max+1} over the basis.
    top: SubscriptedWord,
    /// b_{basis_min} over b_{basis_min+1} .. b_{basis_max+1}.
    bottom: SubscriptedWord,
}

impl ShiftRewriter {
    pub fn from_relation(rel: &SubscriptedWord) -> Result<Self, CoreError> {
        let (basis_min, basis_max) = match kernel_rank(rel)? {
            KernelRank::FreeOfRank { basis_min, basis_max, .. } => (basis_min, basis_max),
            KernelRank::ExtremesRepeat { max, .. } => {
                return Err(CoreError::ExtremeRepeats(max));
            }
        };
        Ok(ShiftRewriter {
            basis_min,
            basis_max,
            top: solve_for_extremal(rel, Extremal::Max)?,
            bottom: solve_for_extremal(rel, Extremal::Min)?,
        })
    }

    pub fn basis_range(&self) -> (i64, i64) {
        (self.basis_min, self.basis_max)
    }

    /// Express b_j as a basis word. Out-of-range subscripts are eliminated by
    /// substituting the (shifted) solved relation; each substitution strictly
    /// shrinks the out-of-range excess, so the recursion terminates.
    pub fn expand(&self, j: i64) -> SubscriptedWord {
        let mut memo = HashMap::new();
        self.expand_memo(j, &mut memo)
    }

    fn expand_memo(&self, j: i64, memo: &mut HashMap<i64, SubscriptedWord>) -> SubscriptedWord {
        if j >= self.basis_min && j <= self.basis_max {
            return SubscriptedWord::from_letters([SubLetter::new(j, false)]);
        }
        if let Some(w) = memo.get(&j) {
            return w.clone();
        }
        let template = if j > self.basis_max {
            self.top.shift_subscripts(j - (self.basis_max + 1))
        } else {
            self.bottom.shift_subscripts(j - self.basis_min)
        };
        let result = self.substitute(&template, memo);
        memo.insert(j, result.clone());
        result
    }

    fn substitute(
        &self,
        w: &SubscriptedWord,
        memo: &mut HashMap<i64, SubscriptedWord>,
    ) -> SubscriptedWord {
        let mut out = SubscriptedWord::empty();
        for l in w.letters() {
            let e = self.expand_memo(l.sub, memo);
            out = out.concat(&if l.inv { e.inverse() } else { e });
        }
        out
    }

    /// Apply the shift endomorphism (conjugation by a^shift) to a basis word,
    /// returning a basis word.
    pub fn shift(&self, w: &SubscriptedWord, shift: i64) -> SubscriptedWord {
        let mut memo = HashMap::new();
        self.substitute(&w.shift_subscripts(shift), &mut memo)
    }
}
