//! Crystal operators on the KR crystal `B^{k,1}` of type `D_n^(1)`.
//!
//! Classical operators (`i = 1..n`) act on a column through the embedding
//! `m_1 m_2 ... m_k -> m_1 (x) m_2 (x) ... (x) m_k` into `(B^{1,1})^{(x)k}`.
//! The affine operators `e_0`, `f_0` are given by case tables keyed on which
//! of `1, 2, 2bar, 1bar` occur in the column, built from the filling map
//! `F_k`, the dropping map `D_k`, and their variants on the alphabet
//! shifted by two.

use crate::crystal::{acting_factor_e, acting_factor_f, Crystal, Stats};
use crate::error::{domain, Result};
use crate::tableau::{enumerate_columns, Column, Letter};
use crate::weight::{Weight, MIN_RANK};

/// `f_i` on a single letter (the crystal `B^{1,1}`).
pub fn letter_f(n: usize, i: usize, x: Letter) -> Option<Letter> {
    let (idx, barred) = (x.index(), x.is_barred());
    match i {
        0 if barred && idx == 1 => Some(Letter::unbarred(2)),
        0 if barred && idx == 2 => Some(Letter::unbarred(1)),
        _ if i == n => match (idx, barred) {
            (j, false) if j == n - 1 => Some(Letter::barred(n)),
            (j, false) if j == n => Some(Letter::barred(n - 1)),
            _ => None,
        },
        _ if (1..n).contains(&i) => match (idx, barred) {
            (j, false) if j == i => Some(Letter::unbarred(i + 1)),
            (j, true) if j == i + 1 => Some(Letter::barred(i)),
            _ => None,
        },
        _ => None,
    }
}

/// `e_i` on a single letter.
pub fn letter_e(n: usize, i: usize, x: Letter) -> Option<Letter> {
    let (idx, barred) = (x.index(), x.is_barred());
    match i {
        0 if !barred && idx == 2 => Some(Letter::barred(1)),
        0 if !barred && idx == 1 => Some(Letter::barred(2)),
        _ if i == n => match (idx, barred) {
            (j, true) if j == n => Some(Letter::unbarred(n - 1)),
            (j, true) if j == n - 1 => Some(Letter::unbarred(n)),
            _ => None,
        },
        _ if (1..n).contains(&i) => match (idx, barred) {
            (j, false) if j == i + 1 => Some(Letter::unbarred(i)),
            (j, true) if j == i => Some(Letter::barred(i + 1)),
            _ => None,
        },
        _ => None,
    }
}

fn letter_stats(n: usize, i: usize, x: Letter) -> Stats {
    (usize::from(letter_e(n, i, x).is_some()), usize::from(letter_f(n, i, x).is_some()))
}

fn classical_act(col: &Column, i: usize, raise: bool) -> Option<Column> {
    let n = col.rank();
    assert!((1..=n).contains(&i), "classical label {i} out of range 1..={n}");
    if col.height() == 0 {
        return None;
    }
    let stats: Vec<Stats> = col.letters().iter().map(|&x| letter_stats(n, i, x)).collect();
    let j = if raise { acting_factor_e(&stats) } else { acting_factor_f(&stats) };
    let x = col.letters()[j];
    let y = if raise { letter_e(n, i, x)? } else { letter_f(n, i, x)? };
    let mut letters = col.letters().to_vec();
    letters[j] = y;
    Some(Column::new(n, letters).expect("letter operators stay in the alphabet"))
}

/// Classical `f_i` (`1 <= i <= n`) on a column via the tensor rule on its
/// letters.
pub fn classical_f(i: usize, col: &Column) -> Option<Column> {
    classical_act(col, i, false)
}

/// Classical `e_i` (`1 <= i <= n`).
pub fn classical_e(i: usize, col: &Column) -> Option<Column> {
    classical_act(col, i, true)
}

/// Finds the filling pairs of `col`: successive minimal `i_j > i_{j-1}`
/// such that `i_j`, `i_j bar` occur with `dist >= i_j + j`.
fn drop_pairs(col: &Column) -> Vec<usize> {
    let mut found = Vec::new();
    let mut prev = 0;
    loop {
        let j = found.len() + 1;
        let next = (prev + 1..col.rank()).find(|&i| col.pair_dist(i).is_some_and(|d| d >= i + j));
        match next {
            Some(i) => {
                found.push(i);
                prev = i;
            }
            None => return found,
        }
    }
}

/// Dropping map `D_k`: removes the pairs the filling map would have added.
pub fn drop(col: &Column) -> Column {
    let mut out = col.clone();
    for i in drop_pairs(col) {
        out.remove_letter(Letter::unbarred(i));
        out.remove_letter(Letter::barred(i));
    }
    out
}

/// Filling map `F_k` from `B(Lambda_l)` (KN columns of height `l`) into
/// height-`k` KR columns, `l <= k`, `l = k mod 2`.
pub fn fill(col: &Column, k: usize) -> Result<Column> {
    let l = col.height();
    if l > k || !(k - l).is_multiple_of(2) {
        return domain(format!("cannot fill height {l} to height {k}"));
    }
    if !col.is_kn_column() {
        return domain(format!("{col} is not a KN column"));
    }
    Ok(fill_unchecked(col, k))
}

fn fill_unchecked(col: &Column, k: usize) -> Column {
    let n = col.rank();
    let mut cur = col.clone();
    let mut prev = 0;
    for j in 1..=(k - col.height()) / 2 {
        // A pair (n, nbar) has dist at most the height < n + j, so i < n.
        let step = (prev + 1..n).find_map(|i| {
            let (x, xb) = (Letter::unbarred(i), Letter::barred(i));
            if cur.contains(x) || cur.contains(xb) {
                return None;
            }
            let mut cand = cur.clone();
            cand.insert_sorted(x);
            cand.insert_sorted(xb);
            let d = cand.pair_dist(i).expect("pair was just inserted");
            if d < i + j {
                return None;
            }
            let others_ok = (i + 1..n).all(|a| cand.pair_dist(a).is_none_or(|da| da <= a + j));
            others_ok.then_some((i, cand))
        });
        let (i, cand) = step.unwrap_or_else(|| panic!("no admissible filling pair for {cur} at step {j}"));
        cur = cand;
        prev = i;
    }
    cur
}

fn check_tilde_domain(col: &Column) -> Result<()> {
    let forbidden = [Letter::unbarred(1), Letter::unbarred(2), Letter::barred(2), Letter::barred(1)];
    if let Some(x) = forbidden.iter().find(|x| col.contains(**x)) {
        return domain(format!("{col} contains {x}; shifted maps need letters >= 3"));
    }
    if col.rank() < 3 {
        return domain("shifted maps need rank at least 3");
    }
    Ok(())
}

/// `F~_k`: the filling map conjugated by the shift `i -> i-2`.
pub fn fill_tilde(col: &Column, k: usize) -> Result<Column> {
    check_tilde_domain(col)?;
    Ok(fill(&col.shifted(-2), k)?.shifted(2))
}

/// `D~`: the dropping map conjugated by the shift `i -> i-2`.
pub fn drop_tilde(col: &Column) -> Result<Column> {
    check_tilde_domain(col)?;
    Ok(drop(&col.shifted(-2)).shifted(2))
}

/// Which of `1, 2, 2bar, 1bar` occur, and the column with them removed.
fn split_corner_letters(b: &Column) -> ([bool; 4], Column) {
    let corner = [Letter::unbarred(1), Letter::unbarred(2), Letter::barred(2), Letter::barred(1)];
    let mask = corner.map(|x| b.contains(x));
    let mut x = b.clone();
    for c in corner {
        x.remove_letter(c);
    }
    (mask, x)
}

fn with_suffix(mut col: Column, suffix: &[Letter]) -> Column {
    for &s in suffix {
        col.push(s);
    }
    col
}

fn with_prefix(mut col: Column, prefix: &[Letter]) -> Column {
    col.prepend(prefix);
    col
}

const ONE: Letter = Letter::unbarred_const(1);
const TWO: Letter = Letter::unbarred_const(2);
const TWO_BAR: Letter = Letter::barred_const(2);
const ONE_BAR: Letter = Letter::barred_const(1);

fn must<T>(r: Result<T>, case: &str) -> T {
    r.unwrap_or_else(|e| panic!("affine operator case {case}: {e}"))
}

/// `e_0` on `B^{k,1}`.
pub fn affine_e(b: &Column) -> Option<Column> {
    let k = b.height();
    let (mask, x) = split_corner_letters(b);
    let out = match mask {
        [true, true, false, false] => must(fill(&must(drop_tilde(&x), "12x"), k), "12x"),
        [true, true, true, false] => with_suffix(must(fill_tilde(&x, k - 1), "12x2b"), &[TWO_BAR]),
        [true, true, false, true] => with_suffix(must(fill_tilde(&x, k - 1), "12x1b"), &[ONE_BAR]),
        [true, true, true, true] => with_suffix(must(fill_tilde(&x, k - 2), "12x2b1b"), &[TWO_BAR, ONE_BAR]),
        [true, false, false, false] => must(fill(&with_suffix(must(drop_tilde(&x), "1x"), &[TWO_BAR]), k), "1x"),
        [false, true, false, false] => must(fill(&with_suffix(must(drop_tilde(&x), "2x"), &[ONE_BAR]), k), "2x"),
        [true, false, false, true] if must(drop_tilde(&x), "1x1b") == x => with_suffix(x, &[TWO_BAR, ONE_BAR]),
        _ => return None,
    };
    assert!(out.is_kr_column(), "e_0({b}) produced invalid column {out}");
    Some(out)
}

/// `f_0` on `B^{k,1}`.
pub fn affine_f(b: &Column) -> Option<Column> {
    let k = b.height();
    let (mask, x) = split_corner_letters(b);
    let out = match mask {
        [false, false, true, true] => must(fill(&must(drop_tilde(&x), "x2b1b"), k), "x2b1b"),
        [false, true, true, true] => with_prefix(must(fill_tilde(&x, k - 1), "2x2b1b"), &[TWO]),
        [true, false, true, true] => with_prefix(must(fill_tilde(&x, k - 1), "1x2b1b"), &[ONE]),
        [true, true, true, true] => with_prefix(must(fill_tilde(&x, k - 2), "12x2b1b"), &[ONE, TWO]),
        [false, false, false, true] => must(fill(&with_prefix(must(drop_tilde(&x), "x1b"), &[TWO]), k), "x1b"),
        [false, false, true, false] => must(fill(&with_prefix(must(drop_tilde(&x), "x2b"), &[ONE]), k), "x2b"),
        [true, false, false, true] if must(drop_tilde(&x), "1x1b") == x => with_prefix(x, &[ONE, TWO]),
        _ => return None,
    };
    assert!(out.is_kr_column(), "f_0({b}) produced invalid column {out}");
    Some(out)
}

/// The crystal `B^{k,1}` of type `D_n^(1)` for `1 <= k <= n-2`, realized on
/// KR columns of height `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KrCrystal {
    n: usize,
    k: usize,
}

impl KrCrystal {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < MIN_RANK {
            return domain(format!("type D_n needs n >= {MIN_RANK}, got {n}"));
        }
        if k == 0 || k + 2 > n {
            return domain(format!(
                "B^{{k,1}} is modelled for 1 <= k <= n-2 (got n={n}, k={k}); spin nodes k = n-1, n are out of scope"
            ));
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> Vec<Column> {
        enumerate_columns(self.n, self.k, false)
    }

    /// Validates that `col` is an element of this crystal.
    pub fn element(&self, col: Column) -> Result<Column> {
        if col.rank() != self.n || col.height() != self.k || !col.is_kr_column() {
            return domain(format!("{col} is not an element of B^{{{},1}} for n={}", self.k, self.n));
        }
        Ok(col)
    }

    /// `b(Lambda_{k-2m}) = 1 2 ... (k-m) (k-m)bar ... (k-2m+1)bar`, the
    /// classical highest weight element of weight `Lambda_{k-2m}`.
    pub fn highest(&self, m: usize) -> Column {
        highest_column(self.n, self.k, m)
    }
}

/// `1 2 ... (k-m) (k-m)bar ... (k-2m+1)bar` over the rank-`n` alphabet.
pub fn highest_column(n: usize, k: usize, m: usize) -> Column {
    assert!(2 * m <= k, "m = {m} exceeds floor(k/2) for k = {k}");
    let letters = (1..=k - m).map(Letter::unbarred).chain((k - 2 * m + 1..=k - m).rev().map(Letter::barred)).collect();
    Column::new(n, letters).expect("indices within rank")
}

impl Crystal for KrCrystal {
    type Elt = Column;

    fn rank(&self) -> usize {
        self.n
    }

    fn labels(&self) -> Vec<usize> {
        (0..=self.n).collect()
    }

    fn e(&self, i: usize, b: &Column) -> Option<Column> {
        if i == 0 {
            affine_e(b)
        } else {
            classical_e(i, b)
        }
    }

    fn f(&self, i: usize, b: &Column) -> Option<Column> {
        if i == 0 {
            affine_f(b)
        } else {
            classical_f(i, b)
        }
    }

    fn weight(&self, b: &Column) -> Weight {
        b.weight()
    }

    fn string_bound(&self) -> usize {
        2 * self.k + 2
    }
}

/// The classical crystal `B(Lambda_l)` on KN columns of height `l`;
/// `l = 0` is the one-element crystal `B(0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KnCrystal {
    n: usize,
    l: usize,
}

impl KnCrystal {
    pub fn new(n: usize, l: usize) -> Result<Self> {
        if n < MIN_RANK {
            return domain(format!("type D_n needs n >= {MIN_RANK}, got {n}"));
        }
        if l + 2 > n {
            return domain(format!("KN columns are modelled for 0 <= l <= n-2, got l={l}"));
        }
        Ok(Self { n, l })
    }

    pub fn elements(&self) -> Vec<Column> {
        enumerate_columns(self.n, self.l, true)
    }

    /// `1 2 ... l`.
    pub fn highest(&self) -> Column {
        highest_column(self.n, self.l, 0)
    }
}

impl Crystal for KnCrystal {
    type Elt = Column;

    fn rank(&self) -> usize {
        self.n
    }

    fn labels(&self) -> Vec<usize> {
        (1..=self.n).collect()
    }

    fn e(&self, i: usize, b: &Column) -> Option<Column> {
        classical_e(i, b)
    }

    fn f(&self, i: usize, b: &Column) -> Option<Column> {
        classical_f(i, b)
    }

    fn weight(&self, b: &Column) -> Weight {
        b.weight()
    }

    fn string_bound(&self) -> usize {
        2 * self.l + 2
    }
}
