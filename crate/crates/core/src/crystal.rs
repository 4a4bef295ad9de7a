//! The abstract crystal interface and the Kashiwara tensor product rule.

use std::fmt::Debug;
use std::hash::Hash;

use crate::weight::Weight;

/// A finite crystal whose elements are values of type `Elt`.
pub trait Crystal {
    type Elt: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    /// Rank `n` of the underlying `D_n`.
    fn rank(&self) -> usize;

    /// Labels on which the Kashiwara operators are defined.
    fn labels(&self) -> Vec<usize>;

    fn e(&self, i: usize, b: &Self::Elt) -> Option<Self::Elt>;

    fn f(&self, i: usize, b: &Self::Elt) -> Option<Self::Elt>;

    /// Classical weight.
    fn weight(&self, b: &Self::Elt) -> Weight;

    /// Upper bound on the length of any `i`-string; exceeding it while
    /// iterating means the operators do not terminate.
    fn string_bound(&self) -> usize;

    /// `max { m : e_i^m b != 0 }`, by iteration.
    fn epsilon(&self, i: usize, b: &Self::Elt) -> usize {
        iterate_count(b, |x| self.e(i, x), self.string_bound())
    }

    /// `max { m : f_i^m b != 0 }`, by iteration.
    fn phi(&self, i: usize, b: &Self::Elt) -> usize {
        iterate_count(b, |x| self.f(i, x), self.string_bound())
    }
}

fn iterate_count<T: Clone>(start: &T, step: impl Fn(&T) -> Option<T>, bound: usize) -> usize {
    let mut cur = start.clone();
    let mut count = 0;
    while let Some(next) = step(&cur) {
        count += 1;
        assert!(count <= bound, "operator string longer than {bound}; operators do not terminate");
        cur = next;
    }
    count
}

/// `(epsilon_i, phi_i)` of a single factor.
pub type Stats = (usize, usize);

/// Statistics of `b1 (x) b2`:
/// `eps = max(eps1, eps1 + eps2 - phi1)`, `phi = max(phi2, phi1 + phi2 - eps2)`.
pub fn combine_stats((e1, p1): Stats, (e2, p2): Stats) -> Stats {
    let eps = e1.max(e1 + e2 - e2.min(p1));
    let phi = p2.max(p1 + p2 - p1.min(e2));
    (eps, phi)
}

/// Statistics of a left-nested tensor `((b1 (x) b2) (x) ...) (x) bN`.
pub fn fold_stats(stats: &[Stats]) -> Stats {
    let mut iter = stats.iter().copied();
    let first = iter.next().expect("empty tensor");
    iter.fold(first, combine_stats)
}

/// Index of the factor that `f_i` acts on in a left-nested tensor:
/// `f(b1 (x) b2) = f b1 (x) b2` if `phi(b1) > eps(b2)`, else `b1 (x) f b2`.
pub fn acting_factor_f(stats: &[Stats]) -> usize {
    acting_factor(stats, |phi_left, eps_right| phi_left > eps_right)
}

/// Index of the factor that `e_i` acts on:
/// `e(b1 (x) b2) = e b1 (x) b2` if `phi(b1) >= eps(b2)`, else `b1 (x) e b2`.
pub fn acting_factor_e(stats: &[Stats]) -> usize {
    acting_factor(stats, |phi_left, eps_right| phi_left >= eps_right)
}

fn acting_factor(stats: &[Stats], go_left: impl Fn(usize, usize) -> bool) -> usize {
    assert!(!stats.is_empty(), "empty tensor");
    let mut prefixes = Vec::with_capacity(stats.len());
    let mut acc = stats[0];
    prefixes.push(acc);
    for &s in &stats[1..] {
        acc = combine_stats(acc, s);
        prefixes.push(acc);
    }
    let mut j = stats.len() - 1;
    while j > 0 && go_left(prefixes[j - 1].1, stats[j].0) {
        j -= 1;
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combine_examples() {
        // eps1 = 1, phi1 = 0, eps2 = 1 gives eps = 2.
        assert_eq!(combine_stats((1, 0), (1, 0)).0, 2);
        // phi2 = 2, eps2 = 0, phi1 = 1 gives phi = 3.
        assert_eq!(combine_stats((0, 1), (0, 2)).1, 3);
    }

    #[test]
    fn two_factor_rule() {
        // phi(b1) = 1 >= eps(b2) = 1: e acts on b1, f acts on b2.
        assert_eq!(acting_factor_e(&[(0, 1), (1, 0)]), 0);
        assert_eq!(acting_factor_f(&[(0, 1), (1, 0)]), 1);
        // phi(b1) = 2 > eps(b2) = 1: f acts on b1.
        assert_eq!(acting_factor_f(&[(0, 2), (1, 0)]), 0);
        // phi(b1) = 0 < eps(b2) = 1: e acts on b2.
        assert_eq!(acting_factor_e(&[(0, 0), (1, 0)]), 1);
    }

    #[test]
    fn signature_rule_agrees_with_nested_rule() {
        // Cancel "+-" pairs in the word -^eps +^phi per factor: f acts on
        // the leftmost surviving +, e on the rightmost surviving -.
        let all: Vec<Stats> = (0..3).flat_map(|e| (0..3).map(move |p| (e, p))).collect();
        for a in &all {
            for b in &all {
                for c in &all {
                    let stats = [*a, *b, *c];
                    let mut word: Vec<(usize, bool)> = Vec::new();
                    for (idx, (e, p)) in stats.iter().enumerate() {
                        word.extend(std::iter::repeat_n((idx, false), *e));
                        word.extend(std::iter::repeat_n((idx, true), *p));
                    }
                    let mut stack: Vec<(usize, bool)> = Vec::new();
                    for sym in word {
                        if !sym.1 && stack.last().is_some_and(|s| s.1) {
                            stack.pop();
                        } else {
                            stack.push(sym);
                        }
                    }
                    let plus = stack.iter().find(|s| s.1).map(|s| s.0);
                    let minus = stack.iter().rev().find(|s| !s.1).map(|s| s.0);
                    let eps = stack.iter().filter(|s| !s.1).count();
                    let phi = stack.iter().filter(|s| s.1).count();
                    assert_eq!(fold_stats(&stats), (eps, phi));
                    if let Some(j) = plus {
                        assert_eq!(acting_factor_f(&stats), j, "{stats:?}");
                    }
                    if let Some(j) = minus {
                        assert_eq!(acting_factor_e(&stats), j, "{stats:?}");
                    }
                }
            }
        }
    }
}
