//! Colored Temperley-Lieb diagrams and their enumeration.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A word in the color alphabet; colors are single characters.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<char>);

impl Word {
    pub fn new(s: &str) -> Self {
        Word(s.chars().collect())
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.0
    }

    /// Reversed word; colors are self-dual.
    pub fn bar(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    /// All words of the given length over `alphabet`, lexicographic.
    pub fn all(alphabet: &[char], len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    alphabet.iter().map(move |&c| {
                        let mut v = w.0.clone();
                        v.push(c);
                        Word(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A noncrossing color-respecting perfect matching of the points of a word,
/// all attached to the top of the box. `partner[i]` is the point paired with
/// `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram {
    word: Word,
    partner: Vec<usize>,
}

impl Diagram {
    pub fn empty() -> Self {
        Diagram {
            word: Word::empty(),
            partner: Vec::new(),
        }
    }

    /// Single cup on the word `cc`.
    pub fn cup(c: char) -> Self {
        Diagram {
            word: Word(vec![c, c]),
            partner: vec![1, 0],
        }
    }

    pub fn from_pairs(word: Word, pairs: &[(usize, usize)]) -> Result<Self, Error> {
        let n = word.len();
        let mut partner = vec![usize::MAX; n];
        for &(i, j) in pairs {
            if i >= n || j >= n || i == j {
                return Err(Error::Invalid(format!("pair ({i} {j}) out of range")));
            }
            if partner[i] != usize::MAX || partner[j] != usize::MAX {
                return Err(Error::Invalid(format!("point in pair ({i} {j}) used twice")));
            }
            partner[i] = j;
            partner[j] = i;
        }
        Self::from_partner(word, partner)
    }

    /// Validates a partner array.
    pub fn from_partner(word: Word, partner: Vec<usize>) -> Result<Self, Error> {
        let n = word.len();
        if partner.len() != n || partner.iter().any(|&p| p >= n) {
            return Err(Error::Invalid("matching is not perfect".into()));
        }
        for i in 0..n {
            let j = partner[i];
            if partner[j] != i || i == j {
                return Err(Error::Invalid("matching is not an involution".into()));
            }
            if word.0[i] != word.0[j] {
                return Err(Error::Invalid(format!("pair ({i} {j}) joins different colors")));
            }
            let (lo, hi) = (i.min(j), i.max(j));
            if (lo + 1..hi).any(|k| partner[k] < lo || partner[k] > hi) {
                return Err(Error::Invalid(format!("pair ({lo} {hi}) is crossed")));
            }
        }
        Ok(Diagram { word, partner })
    }

    pub(crate) fn from_partner_unchecked(word: Word, partner: Vec<usize>) -> Self {
        debug_assert!(Self::from_partner(word.clone(), partner.clone()).is_ok());
        Diagram { word, partner }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn partner(&self) -> &[usize] {
        &self.partner
    }

    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    /// Sorted `(i, j)` pairs with `i < j`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&i| i < self.partner[i])
            .map(|i| (i, self.partner[i]))
            .collect()
    }

    /// Side-by-side juxtaposition.
    pub fn juxtapose(&self, other: &Diagram) -> Diagram {
        let n = self.len();
        let partner = self
            .partner
            .iter()
            .copied()
            .chain(other.partner.iter().map(|&p| p + n))
            .collect();
        Diagram {
            word: self.word.concat(&other.word),
            partner,
        }
    }

    /// Mirror image: boundary order reversed.
    pub fn reflect(&self) -> Diagram {
        let n = self.len();
        let partner = (0..n).rev().map(|i| n - 1 - self.partner[i]).collect();
        Diagram {
            word: self.word.bar(),
            partner,
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.word)?;
        for (i, j) in self.pairs() {
            write!(f, "({i} {j})")?;
        }
        Ok(())
    }
}

impl FromStr for Diagram {
    type Err = Error;

    /// Parses `cc:(0 1)`, `cddc:(0 3)(1 2)` or `:` for the empty diagram.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |msg: &str| Error::Parse(format!("diagram {s:?}: {msg}"));
        let (word, rest) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let word = Word::new(word.trim());
        let mut pairs = Vec::new();
        let mut rest = rest.trim();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = inner.find(')').ok_or_else(|| bad("unclosed '('"))?;
            let nums: Vec<usize> = inner[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| bad("bad index")))
                .collect::<Result<_, _>>()?;
            if nums.len() != 2 {
                return Err(bad("pairs need two indices"));
            }
            pairs.push((nums[0], nums[1]));
            rest = inner[close + 1..].trim_start();
        }
        Diagram::from_pairs(word, &pairs).map_err(|e| bad(&e.to_string()))
    }
}

/// All noncrossing color-respecting perfect matchings of `word`, each as a
/// list of pairs on positions `lo..hi`.
fn matchings(word: &[char], lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if lo == hi {
        return vec![Vec::new()];
    }
    if (hi - lo) % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for j in (lo + 1..hi).step_by(2) {
        if word[j] != word[lo] {
            continue;
        }
        let inside = matchings(word, lo + 1, j);
        if inside.is_empty() {
            continue;
        }
        let outside = matchings(word, j + 1, hi);
        for a in &inside {
            for b in &outside {
                let mut m = Vec::with_capacity(a.len() + b.len() + 1);
                m.push((lo, j));
                m.extend_from_slice(a);
                m.extend_from_slice(b);
                out.push(m);
            }
        }
    }
    out
}

fn partner_of(n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut partner = vec![0; n];
    for &(i, j) in pairs {
        partner[i] = j;
        partner[j] = i;
    }
    partner
}

/// Every CTL diagram on `word`, in a fixed order.
pub fn enumerate_ctl(word: &Word) -> Vec<Diagram> {
    let n = word.len();
    let mut out: Vec<Diagram> = matchings(&word.0, 0, n)
        .into_iter()
        .map(|pairs| Diagram::from_partner_unchecked(word.clone(), partner_of(n, &pairs)))
        .collect();
    out.sort();
    out
}

/// A box diagram with a bottom and a top word in which every top point is
/// joined to a bottom point.
///
/// Stored as a matching on the boundary circle `bottom ++ reverse(top)`:
/// circle position `bottom.len() + j` is top point `top.len() - 1 - j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EpiDiagram {
    pub bottom: Word,
    pub top: Word,
    pub partner: Vec<usize>,
}

impl EpiDiagram {
    /// Bottom positions that carry through strings, left to right.
    pub fn through(&self) -> Vec<usize> {
        let n = self.bottom.len();
        (0..n).filter(|&i| self.partner[i] >= n).collect()
    }

    /// Bottom-to-bottom cups.
    pub fn cups(&self) -> Vec<(usize, usize)> {
        let n = self.bottom.len();
        (0..n)
            .filter(|&i| self.partner[i] < n && i < self.partner[i])
            .map(|i| (i, self.partner[i]))
            .collect()
    }
}

impl fmt::Display for EpiDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:", self.bottom, self.top)?;
        let n = self.bottom.len();
        let k = self.top.len();
        for i in 0..n {
            let p = self.partner[i];
            if p >= n {
                write!(f, "({i} t{})", k - 1 - (p - n))?;
            } else if i < p {
                write!(f, "({i} {p})")?;
            }
        }
        Ok(())
    }
}

/// Cup pairs and the through points left unmatched.
pub(crate) type EpiPattern = (Vec<(usize, usize)>, Vec<usize>);

/// Partial noncrossing matchings of `word[lo..hi]` whose unmatched points are
/// not enclosed by any pair: `(pairs, unmatched)`.
pub(crate) fn epi_patterns(word: &[char], lo: usize, hi: usize) -> Vec<EpiPattern> {
    if lo == hi {
        return vec![(Vec::new(), Vec::new())];
    }
    let mut out = Vec::new();
    for (pairs, mut free) in epi_patterns(word, lo + 1, hi) {
        free.insert(0, lo);
        out.push((pairs, free));
    }
    for j in (lo + 1..hi).step_by(2) {
        if word[j] != word[lo] {
            continue;
        }
        let inside = matchings(word, lo + 1, j);
        if inside.is_empty() {
            continue;
        }
        let outside = epi_patterns(word, j + 1, hi);
        for a in &inside {
            for (b, free) in &outside {
                let mut m = vec![(lo, j)];
                m.extend_from_slice(a);
                m.extend_from_slice(b);
                out.push((m, free.clone()));
            }
        }
    }
    out
}

/// All epi box diagrams with the given bottom and top words.
pub fn epi_ctl(bottom: &Word, top: &Word) -> Vec<EpiDiagram> {
    let n = bottom.len();
    let k = top.len();
    if k > n {
        return Vec::new();
    }
    let mut out: Vec<EpiDiagram> = epi_patterns(&bottom.0, 0, n)
        .into_iter()
        .filter(|(_, free)| free.len() == k && free.iter().zip(&top.0).all(|(&i, &c)| bottom.0[i] == c))
        .map(|(pairs, free)| {
            let mut partner = partner_of(n + k, &pairs);
            for (t, &i) in free.iter().enumerate() {
                let circle = n + (k - 1 - t);
                partner[i] = circle;
                partner[circle] = i;
            }
            EpiDiagram {
                bottom: bottom.clone(),
                top: top.clone(),
                partner,
            }
        })
        .collect();
    out.sort();
    out
}

/// Catalan number `C_n`.
pub fn catalan(n: u64) -> u64 {
    (0..n).fold(1u64, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}
