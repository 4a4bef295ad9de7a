//! Letters of the type `D_n` alphabet and single-column tableaux.
//!
//! The alphabet `1 < 2 < ... < n-1 < {n, nbar} < (n-1)bar < ... < 1bar` is
//! partially ordered: `n` and `nbar` are incomparable. A column is a KR
//! column (an element of `B^{k,1}`) when consecutive letters increase
//! strictly, except that `n` and `nbar` may follow one another in either
//! orientation. It is a KN column (an element of `B(Lambda_l)`) when in
//! addition every pair `p ... pbar` with `p < n` satisfies
//! `dist(p, pbar) <= p`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::weight::Weight;

/// A letter `i` or `ibar` with `1 <= i`. The rank is carried by the column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter(i16);

impl Letter {
    pub fn unbarred(i: usize) -> Self {
        assert!(i >= 1, "letters are 1-based");
        Letter(i as i16)
    }

    pub fn barred(i: usize) -> Self {
        assert!(i >= 1, "letters are 1-based");
        Letter(-(i as i16))
    }

    pub(crate) const fn unbarred_const(i: i16) -> Self {
        Letter(i)
    }

    pub(crate) const fn barred_const(i: i16) -> Self {
        Letter(-i)
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_barred(self) -> bool {
        self.0 < 0
    }

    /// The letter with the bar toggled.
    pub fn conjugate(self) -> Self {
        Letter(-self.0)
    }

    /// Position in `1, ..., n, nbar, ..., 1bar` (1-based).
    pub fn position(self, n: usize) -> usize {
        if self.is_barred() {
            2 * n + 1 - self.index()
        } else {
            self.index()
        }
    }

    /// Strict precedence in the partial order of the rank-`n` alphabet.
    pub fn precedes(self, other: Letter, n: usize) -> bool {
        if self.index() == n && other.index() == n {
            return false;
        }
        self.position(n) < other.position(n)
    }

    /// `eps_i` for `i`, `-eps_i` for `ibar`.
    pub fn weight(self, n: usize) -> Weight {
        let w = Weight::eps(n, self.index());
        if self.is_barred() {
            -&w
        } else {
            w
        }
    }

    /// Index shifted by `delta`, keeping the bar.
    pub(crate) fn shifted(self, delta: i16) -> Self {
        let idx = self.index() as i16 + delta;
        assert!(idx >= 1, "shift left the alphabet");
        if self.is_barred() {
            Letter(-idx)
        } else {
            Letter(idx)
        }
    }

    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        let (digits, barred) = match s.strip_suffix('b') {
            Some(d) => (d, true),
            None => (s, false),
        };
        let i: usize = digits.parse().map_err(|_| Error::Parse(format!("bad letter {s:?}")))?;
        if i == 0 || i > n {
            return Err(Error::Parse(format!("letter {s:?} outside the alphabet of rank {n}")));
        }
        Ok(if barred { Letter::barred(i) } else { Letter::unbarred(i) })
    }
}

impl Ord for Letter {
    /// Canonical total order `1 < ... < n < nbar < ... < 1bar`, which does
    /// not depend on the rank.
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |l: &Letter| {
            if l.is_barred() {
                (1, -(l.index() as i32))
            } else {
                (0, l.index() as i32)
            }
        };
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_barred() {
            write!(f, "{}b", self.index())
        } else {
            write!(f, "{}", self.index())
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A column of letters, listed top to bottom, over the rank-`n` alphabet.
///
/// Any sequence of in-range letters is representable; use
/// [`Column::is_kr_column`] and [`Column::is_kn_column`] for the crystal
/// conditions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Column {
    rank: usize,
    letters: Vec<Letter>,
}

impl Column {
    pub fn new(rank: usize, letters: Vec<Letter>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|l| l.index() > rank) {
            return domain(format!("letter {bad} outside the alphabet of rank {rank}"));
        }
        Ok(Self { rank, letters })
    }

    pub(crate) fn from_parts(rank: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|l| l.index() <= rank));
        Self { rank, letters }
    }

    pub fn empty(rank: usize) -> Self {
        Self { rank, letters: Vec::new() }
    }

    /// Parses `"1,3,1b"` or `"1 3 1b"`; `"-"` or an empty string is the
    /// empty column.
    pub fn parse(rank: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Self::empty(rank));
        }
        let letters = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| Letter::parse(t, rank))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rank, letters)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn height(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn contains(&self, x: Letter) -> bool {
        self.letters.contains(&x)
    }

    /// 1-based position of the first occurrence of `x`.
    pub fn position_of(&self, x: Letter) -> Option<usize> {
        self.letters.iter().position(|&y| y == x).map(|p| p + 1)
    }

    pub fn weight(&self) -> Weight {
        let mut w = Weight::zero(self.rank);
        for l in &self.letters {
            w += &l.weight(self.rank);
        }
        w
    }

    /// `dist(p, pbar) = a + l + 1 - b` for the letters at 1-based positions
    /// `a < b`, which must hold some `p` and `pbar`.
    pub fn dist(&self, a: usize, b: usize) -> Result<usize> {
        let l = self.height();
        if !(1 <= a && a < b && b <= l) {
            return domain(format!("positions ({a},{b}) invalid for a column of height {l}"));
        }
        let (x, y) = (self.letters[a - 1], self.letters[b - 1]);
        if x.is_barred() || y != x.conjugate() {
            return domain(format!("positions ({a},{b}) hold {x} and {y}, not a pair p, pbar"));
        }
        Ok(a + l + 1 - b)
    }

    /// `dist(p, pbar)` when both `p` and `pbar` occur, for `p < n`.
    pub fn pair_dist(&self, p: usize) -> Option<usize> {
        debug_assert!(p < self.rank);
        let a = self.position_of(Letter::unbarred(p))?;
        let b = self.position_of(Letter::barred(p))?;
        (a < b).then(|| a + self.height() + 1 - b)
    }

    /// Condition for membership in `B^{k,1}`.
    pub fn is_kr_column(&self) -> bool {
        let n = self.rank;
        self.letters.windows(2).all(|w| w[0].precedes(w[1], n) || (w[0].index() == n && w[1] == w[0].conjugate()))
    }

    /// Condition for membership in `B(Lambda_l)`, `l` the height.
    pub fn is_kn_column(&self) -> bool {
        self.is_kr_column() && (1..self.rank).all(|p| self.pair_dist(p).is_none_or(|d| d <= p))
    }

    /// Inserts `x` at the position forced by the order; `x` must be
    /// comparable with every letter already present.
    pub(crate) fn insert_sorted(&mut self, x: Letter) {
        let n = self.rank;
        let pos = self.letters.iter().take_while(|y| y.precedes(x, n)).count();
        debug_assert!(self.letters[pos..].iter().all(|y| x.precedes(*y, n)));
        self.letters.insert(pos, x);
    }

    pub(crate) fn remove_letter(&mut self, x: Letter) {
        self.letters.retain(|&y| y != x);
    }

    pub(crate) fn push(&mut self, x: Letter) {
        self.letters.push(x);
    }

    pub(crate) fn prepend(&mut self, xs: &[Letter]) {
        self.letters.splice(0..0, xs.iter().copied());
    }

    /// Reindexes every letter by `delta` into the alphabet of rank
    /// `rank + delta`.
    pub(crate) fn shifted(&self, delta: i16) -> Self {
        Self {
            rank: (self.rank as i16 + delta) as usize,
            letters: self.letters.iter().map(|l| l.shifted(delta)).collect(),
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.letters.iter().map(Letter::to_string).collect()
    }
}

impl Ord for Column {
    /// Rank, then height, then letters lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rank, self.height(), &self.letters).cmp(&(other.rank, other.height(), &other.letters))
    }
}

impl PartialOrd for Column {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Column {
    /// `"1 2 3b"`; the empty column is `"-"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("-");
        }
        f.write_str(&self.to_strings().join(" "))
    }
}

impl Serialize for Column {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.letters.serialize(s)
    }
}

/// All KR columns (or only KN columns) of height `k` over the rank-`n`
/// alphabet, in canonical order.
pub fn enumerate_columns(n: usize, k: usize, kn_only: bool) -> Vec<Column> {
    let alphabet: Vec<Letter> = (1..=n).map(Letter::unbarred).chain((1..=n).rev().map(Letter::barred)).collect();
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(k);
    extend_columns(n, k, &alphabet, &mut stack, &mut out);
    if kn_only {
        out.retain(Column::is_kn_column);
    }
    out
}

fn extend_columns(n: usize, k: usize, alphabet: &[Letter], stack: &mut Vec<Letter>, out: &mut Vec<Column>) {
    if stack.len() == k {
        out.push(Column::from_parts(n, stack.clone()));
        return;
    }
    for &x in alphabet {
        let ok = match stack.last() {
            None => true,
            Some(&prev) => prev.precedes(x, n) || (prev.index() == n && x == prev.conjugate()),
        };
        if ok {
            stack.push(x);
            extend_columns(n, k, alphabet, stack, out);
            stack.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::fundamental;

    fn col(n: usize, s: &str) -> Column {
        Column::parse(n, s).unwrap()
    }

    #[test]
    fn letter_weights() {
        assert_eq!(Letter::unbarred(1).weight(4), Weight::eps(4, 1));
        assert_eq!(Letter::barred(1).weight(4), -&Weight::eps(4, 1));
        for n in 4..=7 {
            for k in 1..=n - 2 {
                let c = Column::new(n, (1..=k).map(Letter::unbarred).collect()).unwrap();
                assert_eq!(c.weight(), fundamental(n, k).unwrap());
            }
        }
    }

    #[test]
    fn dist_examples() {
        assert_eq!(col(4, "1,2,2b").dist(2, 3).unwrap(), 3);
        for p in 1..=3 {
            let c = Column::new(4, vec![Letter::unbarred(p), Letter::barred(p)]).unwrap();
            assert_eq!(c.dist(1, 2).unwrap(), 2);
        }
        assert_eq!(col(5, "2,3,3b,2b").dist(1, 4).unwrap(), 2);
        assert!(col(5, "2,3,3b,2b").dist(1, 3).is_err());
        assert!(col(5, "2,3,3b,2b").dist(3, 2).is_err());
    }

    #[test]
    fn kr_condition() {
        let n = 6;
        assert!(col(n, "1,2,3,4").is_kr_column());
        assert!(!col(n, "2,1").is_kr_column());
        assert!(col(n, "6,6b").is_kr_column());
        assert!(col(n, "6b,6").is_kr_column());
        assert!(col(n, "5,6,6b,6,5b").is_kr_column());
        // (n, n) is excluded although n does not strictly exceed itself.
        assert!(!col(n, "6,6").is_kr_column());
        assert!(!col(n, "6b,6b").is_kr_column());
        assert!(!col(n, "1,1").is_kr_column());
    }

    #[test]
    fn kn_condition() {
        assert!(!col(4, "2,3,3b,2b").is_kn_column());
        assert!(col(6, "1,2,3,4").is_kn_column());
        assert!(!col(4, "1,2,2b").is_kn_column());
        assert!(!col(4, "1,1b").is_kn_column());
        assert!(col(4, "2,2b").is_kn_column());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_columns(4, 1, false).len(), 8);
        assert_eq!(enumerate_columns(4, 1, true).len(), 8);
        assert_eq!(enumerate_columns(4, 2, false).len(), 29);
        assert_eq!(enumerate_columns(4, 2, true).len(), 28);
        assert_eq!(enumerate_columns(5, 3, false).len(), 130);
        assert_eq!(enumerate_columns(4, 0, false), vec![Column::empty(4)]);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 4..=5 {
            for k in 1..=3 {
                let mut brute = Vec::new();
                let alphabet: Vec<Letter> = (1..=n).map(Letter::unbarred).chain((1..=n).map(Letter::barred)).collect();
                let total = alphabet.len().pow(k as u32);
                for mut code in 0..total {
                    let mut ls = Vec::new();
                    for _ in 0..k {
                        ls.push(alphabet[code % alphabet.len()]);
                        code /= alphabet.len();
                    }
                    let c = Column::new(n, ls).unwrap();
                    if c.is_kr_column() {
                        brute.push(c);
                    }
                }
                brute.sort();
                let mut fast = enumerate_columns(n, k, false);
                let sorted = {
                    let mut s = fast.clone();
                    s.sort();
                    s
                };
                assert_eq!(fast, sorted, "enumeration is not in canonical order");
                fast.dedup();
                assert_eq!(fast, brute, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn kn_columns_are_kr_columns() {
        for n in 4..=6 {
            for k in 1..=n - 2 {
                let kr = enumerate_columns(n, k, false);
                for c in enumerate_columns(n, k, true) {
                    assert!(kr.contains(&c));
                }
            }
        }
    }

    #[test]
    fn dist_is_preserved_by_reflection() {
        // Reading a column upside down with bars toggled swaps the roles of
        // a and l+1-b, leaving a + l + 1 - b unchanged.
        for n in 4..=5 {
            for k in 2..=n - 2 {
                for c in enumerate_columns(n, k, false) {
                    let l = c.height();
                    let reflected: Vec<Letter> = c.letters().iter().rev().map(|x| x.conjugate()).collect();
                    let r = Column::new(n, reflected).unwrap();
                    for p in 1..n {
                        let (Some(a), Some(b)) = (c.position_of(Letter::unbarred(p)), c.position_of(Letter::barred(p)))
                        else {
                            continue;
                        };
                        let d = c.dist(a, b).unwrap();
                        let (ra, rb) = (l + 1 - b, l + 1 - a);
                        assert_eq!(r.dist(ra, rb).unwrap(), d);
                    }
                }
            }
        }
    }

    #[test]
    fn text_forms() {
        let c = col(4, "1, 3 ,1b");
        assert_eq!(c.to_string(), "1 3 1b");
        assert_eq!(Column::parse(4, &c.to_string()).unwrap(), c);
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"["1","3","1b"]"#);
        assert_eq!(Column::empty(4).to_string(), "-");
        assert!(Column::parse(4, "5").is_err());
        assert!(Column::parse(4, "0").is_err());
        assert!(Column::parse(4, "x").is_err());
    }
}
