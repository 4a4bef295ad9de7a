//! Tensor products of crystals and the distinguished subsets of
//! `B^{k,1} (x) B^{k,1}`.
//!
//! Long tensors are bracketed to the left, `((b1 (x) b2) (x) b3) ...`.
//! `B1^h` holds the pairs `b(Lambda_{k-2m2}) (x) b(Lambda_{k-2m1})`,
//! `B2^h` the remaining crystal elements that occur in the highest weight
//! vectors of `V(Lambda_{k-2m1} + Lambda_{k-2m2})` inside the image of the
//! R-matrix, and `B_a` is the closure of `B_a^h` under classical `f_i`.

use std::collections::{BTreeMap, BTreeSet};

use crate::crystal::{acting_factor_e, acting_factor_f, fold_stats, Crystal, Stats};
use crate::error::{domain, Error, Result};
use crate::graph::forward_closure;
use crate::kr::{highest_column, KrCrystal};
use crate::tableau::{Column, Letter};
use crate::weight::Weight;

/// The tensor product of a list of crystals of the same rank.
#[derive(Clone, Debug)]
pub struct TensorCrystal<C> {
    factors: Vec<C>,
}

impl<C: Crystal> TensorCrystal<C> {
    pub fn new(factors: Vec<C>) -> Result<Self> {
        let Some(first) = factors.first() else {
            return domain("a tensor product needs at least one factor");
        };
        let n = first.rank();
        if factors.iter().any(|c| c.rank() != n) {
            return domain("all tensor factors must share the rank");
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[C] {
        &self.factors
    }

    fn factor_stats(&self, i: usize, t: &[C::Elt]) -> Vec<Stats> {
        assert_eq!(t.len(), self.factors.len(), "tensor length mismatch");
        self.factors.iter().zip(t).map(|(c, b)| (c.epsilon(i, b), c.phi(i, b))).collect()
    }

    /// `(epsilon_i, phi_i)` of a tensor from the closed-form rule on its
    /// factors, without iterating the tensor operators.
    pub fn tensor_stats(&self, i: usize, t: &[C::Elt]) -> Stats {
        fold_stats(&self.factor_stats(i, t))
    }

    fn act(&self, i: usize, t: &[C::Elt], raise: bool) -> Option<Vec<C::Elt>> {
        let stats = self.factor_stats(i, t);
        let j = if raise { acting_factor_e(&stats) } else { acting_factor_f(&stats) };
        let c = &self.factors[j];
        let image = if raise { c.e(i, &t[j])? } else { c.f(i, &t[j])? };
        let mut out = t.to_vec();
        out[j] = image;
        Some(out)
    }
}

impl<C: Crystal> Crystal for TensorCrystal<C> {
    type Elt = Vec<C::Elt>;

    fn rank(&self) -> usize {
        self.factors[0].rank()
    }

    fn labels(&self) -> Vec<usize> {
        let mut labels = self.factors[0].labels();
        for c in &self.factors[1..] {
            let other = c.labels();
            labels.retain(|i| other.contains(i));
        }
        labels
    }

    fn e(&self, i: usize, b: &Self::Elt) -> Option<Self::Elt> {
        self.act(i, b, true)
    }

    fn f(&self, i: usize, b: &Self::Elt) -> Option<Self::Elt> {
        self.act(i, b, false)
    }

    fn weight(&self, b: &Self::Elt) -> Weight {
        let mut w = Weight::zero(self.rank());
        for (c, x) in self.factors.iter().zip(b) {
            w += &c.weight(x);
        }
        w
    }

    fn string_bound(&self) -> usize {
        self.factors.iter().map(Crystal::string_bound).sum()
    }
}

/// A two-fold tensor element of `B^{k,1}`.
pub type Pair = Vec<Column>;

/// `B^{k,1} (x) B^{k,1}`.
pub fn square(n: usize, k: usize) -> Result<TensorCrystal<KrCrystal>> {
    let b = KrCrystal::new(n, k)?;
    TensorCrystal::new(vec![b, b])
}

fn check_range(n: usize, k: usize) -> Result<()> {
    KrCrystal::new(n, k)?;
    if k < 2 {
        return domain(format!("the sets B_1, B_2 need k >= 2, got k={k}"));
    }
    Ok(())
}

/// `B1^h = { b(Lambda_{k-2m2}) (x) b(Lambda_{k-2m1}) : 0 <= m1 <= m2 <= k' }`.
pub fn b1h(n: usize, k: usize) -> Result<BTreeSet<Pair>> {
    check_range(n, k)?;
    let kp = k / 2;
    let mut out = BTreeSet::new();
    for m2 in 0..=kp {
        for m1 in 0..=m2 {
            out.insert(vec![highest_column(n, k, m2), highest_column(n, k, m1)]);
        }
    }
    Ok(out)
}

fn run(from: usize, to: usize, barred: bool) -> Vec<Letter> {
    let make = if barred { Letter::barred } else { Letter::unbarred };
    if barred {
        // barred runs are listed with decreasing index
        if from < to {
            return Vec::new();
        }
        (to..=from).rev().map(make).collect()
    } else {
        if from > to {
            return Vec::new();
        }
        (from..=to).map(make).collect()
    }
}

/// The crystal elements summed in the highest weight vector of
/// `V(Lambda_{k-2m1} + Lambda_{k-2m2})` inside `W`, one entry per `p`, in
/// summation order.
pub fn hwv_terms(n: usize, k: usize, m1: usize, m2: usize) -> Result<Vec<Pair>> {
    check_range(n, k)?;
    if !(m1 <= m2 && m2 <= k / 2) {
        return domain(format!("need 0 <= m1 <= m2 <= k/2, got m1={m1}, m2={m2}"));
    }
    let m21 = m2 - m1;
    let ms = m1 + m2;
    let big_m = m1.max(m21);
    let mut terms = Vec::new();
    for p in m1..=m2 {
        let left = highest_column(n, k, p);
        let letters: Vec<Letter> = if p <= big_m {
            // 1..(k-m21-p), (k-2p+1)..(k-2m1), (k-m21-p)bar..(k-2m2+1)bar
            let top = k - m21 - p;
            let mut v = run(1, top, false);
            v.extend(run(k + 1 - 2 * p, k - 2 * m1, false));
            v.extend(run(top, k + 1 - 2 * m2, true));
            v
        } else {
            // 1..(k-ms+p), (k-ms+p)bar..(k-2m1+1)bar, (k-2p)bar..(k-2m2+1)bar
            let top = k + p - ms;
            let mut v = run(1, top, false);
            v.extend(run(top, k + 1 - 2 * m1, true));
            v.extend(run(k - 2 * p, k + 1 - 2 * m2, true));
            v
        };
        let right = Column::new(n, letters)?;
        if right.height() != k || !right.is_kr_column() {
            return Err(Error::Domain(format!("term p={p} for (m1,m2)=({m1},{m2}) is not a KR column: {right}")));
        }
        terms.push(vec![left, right]);
    }
    Ok(terms)
}

/// `B2^h`: every element occurring in some highest weight vector above,
/// minus `B1^h`.
pub fn b2h(n: usize, k: usize) -> Result<BTreeSet<Pair>> {
    let one = b1h(n, k)?;
    let mut out = BTreeSet::new();
    for m2 in 0..=k / 2 {
        for m1 in 0..=m2 {
            out.extend(hwv_terms(n, k, m1, m2)?);
        }
    }
    Ok(out.difference(&one).cloned().collect())
}

/// `B_a` for `a = 1, 2`: closure of `B_a^h` under the classical `f_i`.
pub fn generate_ba(n: usize, k: usize, a: u8, budget: usize) -> Result<BTreeSet<Pair>> {
    let seeds = match a {
        1 => b1h(n, k)?,
        2 => b2h(n, k)?,
        _ => return domain(format!("B_a is defined for a = 1, 2, got {a}")),
    };
    let crystal = square(n, k)?;
    let labels: Vec<usize> = (1..=n).collect();
    let seeds: Vec<Pair> = seeds.into_iter().collect();
    forward_closure(&crystal, &seeds, &labels, budget)
}

/// The partition `B (x) B = B_1 + B_2 + B_3`.
#[derive(Clone, Debug)]
pub struct Partition {
    pub b1: BTreeSet<Pair>,
    pub b2: BTreeSet<Pair>,
    pub b3: BTreeSet<Pair>,
    /// Elements of `B_1 ∩ B_2`; empty when the construction is consistent.
    pub overlap: BTreeSet<Pair>,
}

pub fn partition(n: usize, k: usize, budget: usize) -> Result<Partition> {
    let b1 = generate_ba(n, k, 1, budget)?;
    let b2 = generate_ba(n, k, 2, budget)?;
    let overlap: BTreeSet<Pair> = b1.intersection(&b2).cloned().collect();
    let kr = KrCrystal::new(n, k)?;
    let elems = kr.elements();
    let mut b3 = BTreeSet::new();
    for x in &elems {
        for y in &elems {
            let t = vec![x.clone(), y.clone()];
            if !b1.contains(&t) && !b2.contains(&t) {
                b3.insert(t);
            }
        }
    }
    Ok(Partition { b1, b2, b3, overlap })
}

/// `I -> { J : I (x) J in B_1 }`.
pub fn b1_adjacency(n: usize, k: usize, budget: usize) -> Result<BTreeMap<Column, Vec<Column>>> {
    let b1 = generate_ba(n, k, 1, budget)?;
    let mut adj: BTreeMap<Column, Vec<Column>> = BTreeMap::new();
    for t in b1 {
        let mut it = t.into_iter();
        let (a, b) = (it.next().expect("pair"), it.next().expect("pair"));
        adj.entry(a).or_default().push(b);
    }
    Ok(adj)
}

/// The `B_1` relation as a text edge list, one `I -> J` line per pair.
pub fn b1_edge_list(n: usize, k: usize, budget: usize) -> Result<String> {
    let mut out = String::new();
    for (a, targets) in b1_adjacency(n, k, budget)? {
        for b in targets {
            out.push_str(&format!("{a} -> {b}\n"));
        }
    }
    Ok(out)
}

/// All `I_1 (x) ... (x) I_l` in `(B^{k,1})^{(x)l}` with every adjacent pair
/// in `B_1`, in lexicographic order.
pub fn restricted_paths(n: usize, k: usize, l: usize, budget: usize) -> Result<Vec<Vec<Column>>> {
    if l == 0 {
        return domain("path length must be at least 1");
    }
    let kr = KrCrystal::new(n, k)?;
    if l == 1 {
        return Ok(kr.elements().into_iter().map(|b| vec![b]).collect());
    }
    let adj = b1_adjacency(n, k, budget)?;
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(l);
    for start in adj.keys() {
        path.push(start.clone());
        extend_path(&adj, l, &mut path, &mut out, budget)?;
        path.pop();
    }
    Ok(out)
}

fn extend_path(
    adj: &BTreeMap<Column, Vec<Column>>,
    l: usize,
    path: &mut Vec<Column>,
    out: &mut Vec<Vec<Column>>,
    budget: usize,
) -> Result<()> {
    if path.len() == l {
        if out.len() >= budget {
            return Err(Error::Budget { budget, what: "restricted paths".into() });
        }
        out.push(path.clone());
        return Ok(());
    }
    let last = path.last().expect("nonempty path");
    if let Some(nexts) = adj.get(last) {
        for b in nexts {
            path.push(b.clone());
            extend_path(adj, l, path, out, budget)?;
            path.pop();
        }
    }
    Ok(())
}

/// Neighbours of node `k` in the `D_n` Dynkin diagram (labels `1..=n`).
pub fn dynkin_neighbours(n: usize, k: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=n)
        .filter(|&j| {
            let (a, b) = (j.min(k), j.max(k));
            (b == a + 1 && b < n) || (b == n && a == n - 2)
        })
        .collect();
    out.sort_unstable();
    out
}

/// `|B^{j,1}|`: KR columns for `j <= n-2`, `2^{n-1}` for the spin nodes.
pub fn kr_cardinality(n: usize, j: usize) -> Result<usize> {
    if j + 2 <= n {
        Ok(KrCrystal::new(n, j)?.elements().len())
    } else if j <= n {
        Ok(1 << (n - 1))
    } else {
        domain(format!("node {j} out of range for D_{n}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DEFAULT_NODE_BUDGET;
    use crate::kr::KnCrystal;
    use crate::weight::fundamental_or_zero;

    fn col(n: usize, s: &str) -> Column {
        Column::parse(n, s).unwrap()
    }

    #[test]
    fn e_acts_left_when_phi_dominates() {
        let t = square(4, 2).unwrap();
        for a in t.factors()[0].elements() {
            for b in t.factors()[1].elements() {
                for i in 0..=4 {
                    let kr = &t.factors()[0];
                    let pair = vec![a.clone(), b.clone()];
                    let left = kr.phi(i, &a) >= kr.epsilon(i, &b);
                    let expect = if left {
                        kr.e(i, &a).map(|x| vec![x, b.clone()])
                    } else {
                        kr.e(i, &b).map(|y| vec![a.clone(), y])
                    };
                    assert_eq!(t.e(i, &pair), expect);
                }
            }
        }
    }

    #[test]
    fn f_of_extremal_pair_is_null() {
        let t = square(4, 2).unwrap();
        let b = col(4, "1,2");
        // phi_1(b) = eps_1(b) = 0
        assert_eq!(t.f(1, &vec![b.clone(), b]), None);
    }

    #[test]
    fn associativity_on_b11_cubed() {
        // Right-nested rule: f(b1 (x) (b2 (x) b3)) from stats of b1 and of
        // (b2 (x) b3), compared with the left-nested implementation.
        let n = 4;
        let b = KrCrystal::new(n, 1).unwrap();
        let t3 = TensorCrystal::new(vec![b, b, b]).unwrap();
        let t2 = TensorCrystal::new(vec![b, b]).unwrap();
        let elems = b.elements();
        for x in &elems {
            for y in &elems {
                for z in &elems {
                    let trip = vec![x.clone(), y.clone(), z.clone()];
                    let tail = vec![y.clone(), z.clone()];
                    for i in 0..=n {
                        let p1 = b.phi(i, x);
                        let (e23, _) = t2.tensor_stats(i, &tail);
                        let f_right = if p1 > e23 {
                            b.f(i, x).map(|fx| vec![fx, y.clone(), z.clone()])
                        } else {
                            t2.f(i, &tail).map(|ft| [vec![x.clone()], ft].concat())
                        };
                        let e_right = if p1 >= e23 {
                            b.e(i, x).map(|ex| vec![ex, y.clone(), z.clone()])
                        } else {
                            t2.e(i, &tail).map(|et| [vec![x.clone()], et].concat())
                        };
                        assert_eq!(t3.f(i, &trip), f_right);
                        assert_eq!(t3.e(i, &trip), e_right);
                    }
                }
            }
        }
    }

    #[test]
    fn stats_match_iteration() {
        for n in 4..=5 {
            for k in 1..=2 {
                let t = square(n, k).unwrap();
                let elems = t.factors()[0].elements();
                for a in &elems {
                    for b in &elems {
                        let pair = vec![a.clone(), b.clone()];
                        for i in 0..=n {
                            let closed = t.tensor_stats(i, &pair);
                            assert_eq!(closed, (t.epsilon(i, &pair), t.phi(i, &pair)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tensor_weight_is_additive() {
        let t = square(4, 2).unwrap();
        let elems = t.factors()[0].elements();
        for a in &elems {
            for b in &elems {
                assert_eq!(t.weight(&vec![a.clone(), b.clone()]), &a.weight() + &b.weight());
            }
        }
    }

    #[test]
    fn b1h_and_b2h_small() {
        let one = b1h(4, 2).unwrap();
        assert_eq!(one.len(), 3);
        assert!(one.contains(&vec![col(4, "1,2"), col(4, "1,2")]));
        assert!(one.contains(&vec![col(4, "1,1b"), col(4, "1,2")]));
        assert!(one.contains(&vec![col(4, "1,1b"), col(4, "1,1b")]));
        let two = b2h(4, 2).unwrap();
        assert_eq!(two.into_iter().collect::<Vec<_>>(), vec![vec![col(4, "1,2"), col(4, "1,1b")]]);
    }

    #[test]
    fn hwv_terms_degenerate_on_diagonal() {
        for n in 4..=7 {
            for k in 2..=n - 2 {
                for m in 0..=k / 2 {
                    let b = highest_column(n, k, m);
                    assert_eq!(hwv_terms(n, k, m, m).unwrap(), vec![vec![b.clone(), b]]);
                }
            }
        }
    }

    #[test]
    fn hwv_terms_have_the_right_weight_and_shape() {
        for n in 4..=6 {
            for k in 2..=n - 2 {
                for m2 in 0..=k / 2 {
                    for m1 in 0..=m2 {
                        let target =
                            &fundamental_or_zero(n, k - 2 * m1).unwrap() + &fundamental_or_zero(n, k - 2 * m2).unwrap();
                        let terms = hwv_terms(n, k, m1, m2).unwrap();
                        let expected_b1h = vec![highest_column(n, k, m2), highest_column(n, k, m1)];
                        assert!(terms.contains(&expected_b1h));
                        for t in &terms {
                            assert_eq!(&t[0].weight() + &t[1].weight(), target);
                            // the left factor is a highest column with matched pairs
                            let m = t[0].letters().iter().filter(|x| x.is_barred()).count();
                            assert_eq!(t[0], highest_column(n, k, m));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn b1_for_d4_k2() {
        let p = partition(4, 2, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(p.b1.len(), 329);
        assert_eq!(p.b2.len(), 28);
        assert!(p.overlap.is_empty());
        assert_eq!(p.b1.len() + p.b2.len() + p.b3.len(), 29 * 29);
        assert_eq!(29 * 29 - p.b1.len(), 8 * 8 * 8);
        for t in b1h(4, 2).unwrap() {
            assert!(p.b1.contains(&t));
        }
    }

    #[test]
    fn restricted_paths_small_lengths() {
        assert_eq!(restricted_paths(4, 2, 1, 1000).unwrap().len(), 29);
        let two = restricted_paths(4, 2, 2, DEFAULT_NODE_BUDGET).unwrap();
        let b1: Vec<Pair> = generate_ba(4, 2, 1, DEFAULT_NODE_BUDGET).unwrap().into_iter().collect();
        assert_eq!(two, b1);
        assert!(matches!(restricted_paths(4, 2, 3, 10), Err(Error::Budget { .. })));
        assert!(restricted_paths(4, 2, 0, 10).is_err());
    }

    #[test]
    fn dynkin_neighbours_of_d_n() {
        assert_eq!(dynkin_neighbours(4, 2), vec![1, 3, 4]);
        assert_eq!(dynkin_neighbours(5, 2), vec![1, 3]);
        assert_eq!(dynkin_neighbours(5, 3), vec![2, 4, 5]);
        assert_eq!(dynkin_neighbours(6, 1), vec![2]);
        assert_eq!(dynkin_neighbours(6, 5), vec![4]);
        assert_eq!(kr_cardinality(4, 3).unwrap(), 8);
        assert_eq!(kr_cardinality(5, 3).unwrap(), 130);
    }

    #[test]
    fn kn_tensor_labels_are_classical() {
        let kn = KnCrystal::new(4, 1).unwrap();
        let kr = KrCrystal::new(4, 1).unwrap();
        assert_eq!(TensorCrystal::new(vec![kn, kn]).unwrap().labels(), vec![1, 2, 3, 4]);
        assert_eq!(TensorCrystal::new(vec![kr]).unwrap().labels(), (0..=4).collect::<Vec<_>>());
        assert!(TensorCrystal::<KrCrystal>::new(vec![]).is_err());
    }
}
