//! Reproducible verification procedures.
//!
//! Each check runs exhaustively over a finite parameter instance and returns
//! a [`VerificationReport`]; a failing report always names at least one
//! concrete witness. The norm formulas for the prepolarization values of the
//! highest weight vectors `u(c)` are evaluated here as exact Laurent
//! polynomials.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::crystal::Crystal;
use crate::error::{domain, Error, Result};
use crate::graph::{character, classical_component, decompose, generate_all, Character, DEFAULT_NODE_BUDGET};
use crate::kr::{affine_e, drop, fill, highest_column, KnCrystal, KrCrystal};
use crate::laurent::{q_binomial, q_int, LaurentPoly};
use crate::tableau::{Column, Letter};
use crate::tensor::{dynkin_neighbours, hwv_terms, kr_cardinality, partition, restricted_paths, TensorCrystal};
use crate::weight::{fundamental_or_zero, lambda_of_c, simple_root, validate_c, Weight};

/// Outcome of one check on one parameter instance.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: String,
    pub params: BTreeMap<String, usize>,
    pub passed: bool,
    /// Summary statistics, or the first witnesses when the check failed.
    pub details: String,
    pub wall_time_ms: u64,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        // timings are left out so that the rendering is reproducible
        write!(
            f,
            "{} {} [{}]: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            params.join(" "),
            self.details
        )
    }
}

const MAX_WITNESSES: usize = 5;

/// Accumulates checked cases and failure witnesses for one report.
struct Tally {
    name: &'static str,
    params: BTreeMap<String, usize>,
    start: Instant,
    checked: usize,
    failures: usize,
    witnesses: Vec<String>,
}

impl Tally {
    fn new(name: &'static str, params: &[(&str, usize)]) -> Self {
        Self {
            name,
            params: params.iter().map(|(k, v)| ((*k).to_string(), *v)).collect(),
            start: Instant::now(),
            checked: 0,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    fn finish(self, summary: impl Into<String>) -> VerificationReport {
        let passed = self.failures == 0;
        let details = if passed {
            format!("{} cases checked; {}", self.checked, summary.into())
        } else {
            format!("{} of {} cases failed; e.g. {}", self.failures, self.checked, self.witnesses.join("; "))
        };
        self.report(passed, details)
    }

    fn error(self, err: &Error) -> VerificationReport {
        self.report(false, format!("error: {err}"))
    }

    fn report(self, passed: bool, details: String) -> VerificationReport {
        VerificationReport {
            name: self.name.to_string(),
            params: self.params,
            passed,
            details,
            wall_time_ms: u64::try_from(self.start.elapsed().as_millis()).unwrap_or(u64::MAX),
        }
    }
}

fn weights_text(ws: &[Weight]) -> String {
    let v: Vec<String> = ws.iter().map(Weight::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

/// `{Lambda_{k-2m} : 0 <= m <= k/2}` sorted, with `Lambda_0 = 0`.
pub fn expected_kr_highest_weights(n: usize, k: usize) -> Result<Vec<Weight>> {
    let mut out = (0..=k / 2).map(|m| fundamental_or_zero(n, k - 2 * m)).collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// `{Lambda_{k-2m1} + Lambda_{k-2m2} : 0 <= m1 <= m2 <= k/2}` sorted.
pub fn expected_w_highest_weights(n: usize, k: usize) -> Result<Vec<Weight>> {
    let mut out = Vec::new();
    for m2 in 0..=k / 2 {
        for m1 in 0..=m2 {
            out.push(&fundamental_or_zero(n, k - 2 * m1)? + &fundamental_or_zero(n, k - 2 * m2)?);
        }
    }
    out.sort();
    Ok(out)
}

/// The classical decomposition of `B^{k,1}` is `B(Lambda_k) + B(Lambda_{k-2}) + ...`.
pub fn check_fundamental_decomposition(n: usize, k: usize) -> VerificationReport {
    let mut t = Tally::new("fundamental_decomposition", &[("n", n), ("k", k)]);
    let run = || -> Result<(Vec<Weight>, Vec<Weight>, usize)> {
        let kr = KrCrystal::new(n, k)?;
        let elems = kr.elements();
        Ok((decompose(&kr, &elems)?, expected_kr_highest_weights(n, k)?, elems.len()))
    };
    match run() {
        Ok((got, want, size)) => {
            t.check(got == want, || format!("highest weights {} != {}", weights_text(&got), weights_text(&want)));
            t.finish(format!("|B| = {size}, highest weights {}", weights_text(&got)))
        }
        Err(e) => t.error(&e),
    }
}

/// Inverse axiom for every label, `phi_i - eps_i = <h_i, wt>`, and
/// `wt(f_i b) = wt b - alpha_i` (classical image of `alpha_0`), exhaustively.
pub fn check_crystal_axioms(n: usize, k: usize) -> VerificationReport {
    let mut t = Tally::new("crystal_axioms", &[("n", n), ("k", k)]);
    let kr = match KrCrystal::new(n, k) {
        Ok(kr) => kr,
        Err(e) => return t.error(&e),
    };
    let elems = kr.elements();
    let roots: Vec<Weight> = (0..=n).map(|i| simple_root(n, i).expect("valid label")).collect();
    for b in &elems {
        let wt = kr.weight(b);
        for (i, root) in roots.iter().enumerate() {
            if let Some(fb) = kr.f(i, b) {
                t.check(kr.e(i, &fb).as_ref() == Some(b), || format!("e_{i} f_{i} ({b}) != {b}"));
                t.check(kr.weight(&fb) == &wt - root, || format!("wt f_{i}({b}) != wt - alpha_{i}"));
            }
            if let Some(eb) = kr.e(i, b) {
                t.check(kr.f(i, &eb).as_ref() == Some(b), || format!("f_{i} e_{i} ({b}) != {b}"));
            }
            let (eps, phi) = (kr.epsilon(i, b), kr.phi(i, b));
            t.check(phi as i64 - eps as i64 == wt.pairing_h(i), || {
                format!("phi_{i} - eps_{i} = {} but <h_{i}, wt({b})> = {}", phi as i64 - eps as i64, wt.pairing_h(i))
            });
        }
    }
    t.finish(format!("{} elements, labels 0..={n}", elems.len()))
}

/// Inverse axiom for the `0`-arrows and `e_0^3 = f_0^3 = 0` on all of `B^{k,1}`.
pub fn check_zero_action(n: usize, k: usize) -> VerificationReport {
    let mut t = Tally::new("zero_action", &[("n", n), ("k", k)]);
    let kr = match KrCrystal::new(n, k) {
        Ok(kr) => kr,
        Err(e) => return t.error(&e),
    };
    let elems = kr.elements();
    let mut arrows = 0;
    for b in &elems {
        if let Some(fb) = kr.f(0, b) {
            arrows += 1;
            t.check(kr.e(0, &fb).as_ref() == Some(b), || format!("e_0 f_0 ({b}) != {b}"));
        }
        if let Some(eb) = kr.e(0, b) {
            t.check(kr.f(0, &eb).as_ref() == Some(b), || format!("f_0 e_0 ({b}) != {b}"));
        }
        let e3 = kr.e(0, b).and_then(|x| kr.e(0, &x)).and_then(|x| kr.e(0, &x));
        let f3 = kr.f(0, b).and_then(|x| kr.f(0, &x)).and_then(|x| kr.f(0, &x));
        t.check(e3.is_none(), || format!("e_0^3 ({b}) = {}", e3.as_ref().expect("some")));
        t.check(f3.is_none(), || format!("f_0^3 ({b}) = {}", f3.as_ref().expect("some")));
    }
    t.finish(format!("{} elements, {arrows} 0-arrows", elems.len()))
}

/// One chain case: source, expected first image, and whether a second
/// `e_0` must be non-null (or its exact expected value).
struct Chain {
    case: u8,
    source: Column,
    first: Column,
    second: Option<Column>,
}

fn letters_col(n: usize, parts: &[(usize, usize, bool)], tail: &[Letter]) -> Column {
    let mut v = Vec::new();
    for &(a, b, barred) in parts {
        if barred {
            if a >= b {
                v.extend((b..=a).rev().map(Letter::barred));
            }
        } else if a <= b {
            v.extend((a..=b).map(Letter::unbarred));
        }
    }
    v.extend_from_slice(tail);
    Column::new(n, v).expect("indices within rank")
}

/// The explicit `e_0`-chains starting from the highest weight elements that
/// occur in `B_1^h` and `B_2^h`.
fn e0_chains(n: usize, k: usize) -> Result<Vec<Chain>> {
    let kp = k / 2;
    let tail = [Letter::barred(2), Letter::barred(1)];
    let mut out = Vec::new();
    // (1): 1..k -> 1,3..k,1b -> 3..k,2b,1b
    out.push(Chain {
        case: 1,
        source: letters_col(n, &[(1, k, false)], &[]),
        first: letters_col(n, &[(1, 1, false), (3, k, false)], &[Letter::barred(1)]),
        second: Some(letters_col(n, &[(3, k, false)], &tail)),
    });
    // (2)
    for m in 1..kp {
        out.push(Chain {
            case: 2,
            source: highest_column(n, k, m),
            first: letters_col(n, &[(1, k - m - 1, false), (k - m - 1, k - 2 * m + 1, true)], &tail),
            second: None,
        });
    }
    for m2 in 0..kp {
        for m1 in 0..=m2 {
            let (m21, ms) = (m2 - m1, m1 + m2);
            // (3)
            if ms >= 1 {
                for p in m1..=m21.min(ms - 1) {
                    let top = k - m21 - p;
                    let source = hwv_terms(n, k, m1, m2)?[p - m1][1].clone();
                    let expect_source = letters_col(
                        n,
                        &[(1, top, false), (k - 2 * p + 1, k - 2 * m1, false), (top, k - 2 * m2 + 1, true)],
                        &[],
                    );
                    assert_eq!(source, expect_source, "hwv term layout");
                    out.push(Chain {
                        case: 3,
                        source,
                        first: letters_col(
                            n,
                            &[(1, top - 1, false), (k - 2 * p + 1, k - 2 * m1, false), (top - 1, k - 2 * m2 + 1, true)],
                            &tail,
                        ),
                        second: None,
                    });
                }
            }
            // (4)
            if m1 >= 1 {
                for p in m21 + 1..=m2 {
                    let top = k + p - ms;
                    let source = letters_col(
                        n,
                        &[(1, top, false), (top, k - 2 * m1 + 1, true), (k - 2 * p, k - 2 * m2 + 1, true)],
                        &[],
                    );
                    out.push(Chain {
                        case: 4,
                        source,
                        first: letters_col(
                            n,
                            &[(1, top - 1, false), (top - 1, k - 2 * m1 + 1, true), (k - 2 * p, k - 2 * m2 + 1, true)],
                            &tail,
                        ),
                        second: None,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The `e_0`-chains from the highest weight elements.
pub fn check_e0_chains(n: usize, k: usize) -> VerificationReport {
    let mut t = Tally::new("e0_chains", &[("n", n), ("k", k)]);
    if let Err(e) = KrCrystal::new(n, k) {
        return t.error(&e);
    }
    if k < 2 {
        return t.error(&Error::Domain("the e_0 chains need k >= 2".into()));
    }
    let chains = match e0_chains(n, k) {
        Ok(c) => c,
        Err(e) => return t.error(&e),
    };
    let mut per_case = [0usize; 4];
    for ch in &chains {
        per_case[usize::from(ch.case) - 1] += 1;
        let case = ch.case;
        t.check(ch.source.is_kr_column() && ch.first.is_kr_column(), || {
            format!("case ({case}): {} or {} is not a KR column", ch.source, ch.first)
        });
        let got = affine_e(&ch.source);
        t.check(got.as_ref() == Some(&ch.first), || {
            format!(
                "case ({case}): e_0({}) = {:?}, expected {}",
                ch.source,
                got.as_ref().map(Column::to_string),
                ch.first
            )
        });
        let second = affine_e(&ch.first);
        match &ch.second {
            Some(want) => t.check(second.as_ref() == Some(want), || {
                format!(
                    "case ({case}): e_0({}) = {:?}, expected {want}",
                    ch.first,
                    second.as_ref().map(Column::to_string)
                )
            }),
            None => t.check(second.is_some(), || format!("case ({case}): e_0({}) is null", ch.first)),
        }
    }
    t.finish(format!("chains per case (1)-(4): {per_case:?}"))
}

/// `F_k` commutes with the classical `f_i`, `D_k F_k = id`, the KN sets are
/// the classical components of `1..l`, and `B^{k,1}` is the disjoint union
/// of the images `F_k(B(Lambda_l))`.
pub fn check_filling_equivariance(n: usize, k: usize) -> VerificationReport {
    let mut t = Tally::new("filling_equivariance", &[("n", n), ("k", k)]);
    let kr = match KrCrystal::new(n, k) {
        Ok(kr) => kr,
        Err(e) => return t.error(&e),
    };
    let mut image: BTreeMap<Column, usize> = BTreeMap::new();
    for l in (k % 2..=k).step_by(2) {
        let kn = KnCrystal::new(n, l).expect("l <= k <= n-2");
        let elems = kn.elements();
        match classical_component(&kn, &kn.highest(), DEFAULT_NODE_BUDGET) {
            Ok(comp) => t.check(comp == elems, || {
                format!("KN columns of height {l}: {} but the component of 1..{l} has {}", elems.len(), comp.len())
            }),
            Err(e) => return t.error(&e),
        }
        for b in &elems {
            let fb = match fill(b, k) {
                Ok(x) => x,
                Err(e) => return t.error(&e),
            };
            t.check(kr.element(fb.clone()).is_ok(), || format!("F({b}) = {fb} is not in B^{{k,1}}"));
            t.check(drop(&fb) == *b, || format!("D(F({b})) = {} != {b}", drop(&fb)));
            *image.entry(fb.clone()).or_insert(0) += 1;
            for i in 1..=n {
                let lhs = kn.f(i, b).map(|x| fill(&x, k).expect("KN column"));
                let rhs = kr.f(i, &fb);
                t.check(lhs == rhs, || {
                    format!(
                        "F(f_{i} {b}) = {:?} but f_{i} F({b}) = {:?}",
                        lhs.as_ref().map(Column::to_string),
                        rhs.as_ref().map(Column::to_string)
                    )
                });
            }
        }
    }
    let all = kr.elements();
    let covered = image.len() == all.len() && all.iter().all(|b| image.get(b) == Some(&1));
    t.check(covered, || {
        let missing = all.iter().find(|b| image.get(*b) != Some(&1));
        format!("images of F do not partition B^{{k,1}}; first offending element {missing:?}")
    });
    t.finish(format!("{} elements of B^{{k,1}} covered once", all.len()))
}

/// `B_1` decomposes as `+ V(Lambda_{k-2m1} + Lambda_{k-2m2})`, `B_1 ∩ B_2 = ∅`,
/// and `|B (x) B| - |B_1| = prod_{j ~ k} |B^{j,1}|`.
pub fn check_w_decomposition(n: usize, k: usize, budget: usize) -> VerificationReport {
    let mut t = Tally::new("w_decomposition", &[("n", n), ("k", k)]);
    let run = |t: &mut Tally| -> Result<String> {
        let kr = KrCrystal::new(n, k)?;
        let tensor = TensorCrystal::new(vec![kr, kr])?;
        let p = partition(n, k, budget)?;
        let b1: Vec<Vec<Column>> = p.b1.iter().cloned().collect();
        let got = decompose(&tensor, &b1)?;
        let want = expected_w_highest_weights(n, k)?;
        t.check(got == want, || format!("B_1 highest weights {} != {}", weights_text(&got), weights_text(&want)));
        t.check(p.overlap.is_empty(), || format!("B_1 and B_2 share {} elements", p.overlap.len()));
        let size = kr.elements().len();
        let complement = size * size - p.b1.len();
        let neighbours = dynkin_neighbours(n, k);
        let product: usize = neighbours.iter().map(|&j| kr_cardinality(n, j)).product::<Result<usize>>()?;
        t.check(complement == product, || {
            format!("|B x B| - |B_1| = {complement} but prod over neighbours {neighbours:?} = {product}")
        });
        Ok(format!(
            "|B_1| = {}, |B_2| = {}, |B_3| = {}, complement {complement} = prod_{{j in {neighbours:?}}} |B^{{j,1}}|, highest weights {}",
            p.b1.len(),
            p.b2.len(),
            p.b3.len(),
            weights_text(&got)
        ))
    };
    match run(&mut t) {
        Ok(summary) => t.finish(summary),
        Err(e) => t.error(&e),
    }
}

/// All `c = (c_1 >= ... >= c_{k'})` with `l >= c_1` and `c_{k'} >= 0`, in
/// lexicographic order.
pub fn c_sequences(k: usize, l: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k / 2);
    fn rec(len: usize, bound: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 0..=bound {
            cur.push(v);
            rec(len, v, cur, out);
            cur.pop();
        }
    }
    rec(k / 2, l, &mut cur, &mut out);
    out
}

/// Character of the irreducible classical crystal `B(lambda(c))`, realized
/// as the component of the tensor of KN highest columns.
pub fn irreducible_character(n: usize, k: usize, l: u32, c: &[u32], budget: usize) -> Result<Character> {
    validate_c(n, k, l, c)?;
    let kp = k / 2;
    let at = |j: usize| -> u32 {
        match j {
            0 => l,
            _ if j > kp => 0,
            _ => c[j - 1],
        }
    };
    let mut factors = Vec::new();
    for j in 0..=kp {
        let height = k - 2 * j;
        if height == 0 {
            continue;
        }
        for _ in 0..at(j) - at(j + 1) {
            factors.push(KnCrystal::new(n, height)?);
        }
    }
    let mut ch = Character::default();
    if factors.is_empty() {
        ch.add_weight(Weight::zero(n), 1);
        return Ok(ch);
    }
    let seed: Vec<Column> = factors.iter().map(KnCrystal::highest).collect();
    let tensor = TensorCrystal::new(factors)?;
    let comp = classical_component(&tensor, &seed, budget)?;
    let ch = character(&tensor, &comp);
    let top = lambda_of_c(n, k, l, c)?;
    if ch.0.get(&top) != Some(&1) {
        return domain(format!("component generated for lambda = {top} has the wrong top weight"));
    }
    Ok(ch)
}

/// The restricted paths of length `l` have the character of
/// `sum_c V(lambda(c))`.
pub fn check_restricted_character(n: usize, k: usize, l: usize, budget: usize) -> VerificationReport {
    let mut t = Tally::new("restricted_character", &[("n", n), ("k", k), ("l", l)]);
    let run = |t: &mut Tally| -> Result<String> {
        let kr = KrCrystal::new(n, k)?;
        if l == 0 {
            return domain("path length must be at least 1");
        }
        let paths = restricted_paths(n, k, l, budget)?;
        let tensor = TensorCrystal::new(vec![kr; l])?;
        let lhs = character(&tensor, &paths);
        let lu = u32::try_from(l).map_err(|_| Error::Domain("l too large".into()))?;
        let cs = c_sequences(k, lu);
        let mut rhs = Character::default();
        for c in &cs {
            rhs.add(&irreducible_character(n, k, lu, c, budget)?);
        }
        t.check(lhs == rhs, || {
            let w = lhs.0.keys().chain(rhs.0.keys()).find(|w| lhs.0.get(*w) != rhs.0.get(*w)).expect("differs");
            format!(
                "multiplicity of {} is {} on paths but {} in the sum (masses {} vs {})",
                w.eps_string(),
                lhs.0.get(w).unwrap_or(&0),
                rhs.0.get(w).unwrap_or(&0),
                lhs.total(),
                rhs.total()
            )
        });
        Ok(format!("{} paths, {} components lambda(c), mass {}", paths.len(), cs.len(), rhs.total()))
    };
    match run(&mut t) {
        Ok(summary) => t.finish(summary),
        Err(e) => t.error(&e),
    }
}

fn c_at(l: u32, c: &[u32], j: usize) -> i64 {
    match j {
        0 => i64::from(l),
        _ if j > c.len() => 0,
        _ => i64::from(c[j - 1]),
    }
}

/// `q^{m(2l-m)} [2l, m]`.
fn u_factor(l: i64, m: i64) -> LaurentPoly {
    q_binomial(2 * l, m).expect("0 <= m <= l").shift(m * (2 * l - m))
}

/// `(u(c), u(c))_l = prod_j q^{c_j(2l-c_j)} [2l, c_j]`.
pub fn norm_u(n: usize, k: usize, l: u32, c: &[u32]) -> Result<LaurentPoly> {
    validate_c(n, k, l, c)?;
    let l = i64::from(l);
    Ok(c.iter().map(|&cj| u_factor(l, i64::from(cj))).product())
}

fn check_j(n: usize, j: usize) -> Result<()> {
    if j == 0 || j > n {
        return domain(format!("j must lie in 1..={n}, got {j}"));
    }
    Ok(())
}

/// The index `p = (k-j)/2 + 1` when `k - j` is a nonnegative even number.
fn p_index(k: usize, j: usize) -> Option<usize> {
    (j <= k && (k - j).is_multiple_of(2)).then(|| (k - j) / 2 + 1)
}

/// `(e_j u(c), e_j u(c))_l`, assembled as
/// `q^{2 beta} |f_j u|^2 + q^{beta-1} [beta] |u|^2` with
/// `beta = c_p - c_{p-1}`, `p = (k-j)/2 + 1` and `c_0 = l`.
///
/// It vanishes unless `k - j` is a nonnegative even number. For odd `k`
/// and `j = 1` (`p = k'+1`) it also vanishes: the weight `lambda(c) + alpha_1`
/// pairs to `l + 1` with `eps_1`, more than any weight of the tensor power
/// allows, so `e_1 u(c) = 0`.
pub fn norm_eu(n: usize, k: usize, l: u32, c: &[u32], j: usize) -> Result<LaurentPoly> {
    validate_c(n, k, l, c)?;
    check_j(n, j)?;
    let Some(p) = p_index(k, j) else {
        return Ok(LaurentPoly::zero());
    };
    if p > k / 2 {
        return Ok(LaurentPoly::zero());
    }
    let li = i64::from(l);
    let (cp, cp1) = (c_at(l, c, p), c_at(l, c, p - 1));
    let beta = cp - cp1;
    let others: LaurentPoly = (1..=c.len()).filter(|&m| m != p).map(|m| u_factor(li, c_at(l, c, m))).product();
    let f_norm = others * q_binomial(2 * li - 1, cp)?.shift(cp * (2 * li - 1 - cp)) * q_int(cp1).shift(cp1 - 1);
    let u_norm = norm_u(n, k, l, c)?;
    Ok(f_norm.shift(2 * beta) + (q_int(beta) * u_norm).shift(beta - 1))
}

/// `[a, b]`, taken to be `0` outside `0 <= b <= a`.
fn q_binomial_or_zero(a: i64, b: i64) -> LaurentPoly {
    q_binomial(a, b).unwrap_or_else(|_| LaurentPoly::zero())
}

/// The closed product form
/// `q^{2l-c_{p-1}-1} [2l-c_{p-1}] prod_i q^{(c_i-d_ip)(2l-c_i)} [2l-d_ip, c_i-d_ip]`
/// (`d` the Kronecker delta), zero unless `k - j` is a nonnegative even
/// number. For `p = k'+1` the product has no `d_ip` factor.
pub fn norm_eu_display(n: usize, k: usize, l: u32, c: &[u32], j: usize) -> Result<LaurentPoly> {
    validate_c(n, k, l, c)?;
    check_j(n, j)?;
    let Some(p) = p_index(k, j) else {
        return Ok(LaurentPoly::zero());
    };
    let li = i64::from(l);
    let cp1 = c_at(l, c, p - 1);
    let head = q_int(2 * li - cp1).shift(2 * li - cp1 - 1);
    let prod: LaurentPoly = (1..=c.len())
        .map(|i| {
            let d = i64::from(i == p);
            let ci = c_at(l, c, i);
            q_binomial_or_zero(2 * li - d, ci - d).shift((ci - d) * (2 * li - ci))
        })
        .product();
    Ok(head * prod)
}

fn int_binomial(a: u32, b: u32) -> BigInt {
    num_integer::binomial(BigInt::from(a), BigInt::from(b))
}

/// The `q`-adic conditions on the norms for all `c` with the given `l`:
/// `|u|^2 in 1 + qA`, `|e_j u|^2 in q^{-1-2<h_j, lambda(c)>} A`, the two
/// evaluations of `|e_j u|^2` agree where both apply, `|u|^2` at `q = 1`
/// is `prod binomial(2l, c_j)`, and distinct `c` give distinct `lambda(c)`.
pub fn check_norm_conditions(n: usize, k: usize, l: usize) -> VerificationReport {
    let mut t = Tally::new("norm_conditions", &[("n", n), ("k", k), ("l", l)]);
    let Ok(lu) = u32::try_from(l) else {
        return t.error(&Error::Domain("l too large".into()));
    };
    let run = |t: &mut Tally| -> Result<String> {
        let cs = c_sequences(k, lu);
        let mut lambdas = BTreeSet::new();
        let mut nonzero = 0;
        for c in &cs {
            let lam = lambda_of_c(n, k, lu, c)?;
            t.check(lambdas.insert(lam.clone()), || format!("lambda({c:?}) = {lam} repeats"));
            let u = norm_u(n, k, lu, c)?;
            t.check(u.in_c_plus_qa(1), || format!("|u({c:?})|^2 = {u} is not in 1 + qA"));
            let at_one: BigInt = c.iter().map(|&cj| int_binomial(2 * lu, cj)).product();
            t.check(u.eval_at_one() == at_one, || format!("|u({c:?})|^2 at q=1 is {} not {at_one}", u.eval_at_one()));
            for j in 1..=n {
                let eu = norm_eu(n, k, lu, c, j)?;
                let shift = -1 - 2 * lam.pairing_h(j);
                if !eu.is_zero() {
                    nonzero += 1;
                }
                t.check(eu.in_qn_a(shift), || format!("|e_{j} u({c:?})|^2 = {eu} is not in q^{shift} A"));
                if p_index(k, j).is_some_and(|p| p <= k / 2) {
                    let disp = norm_eu_display(n, k, lu, c, j)?;
                    t.check(disp == eu, || format!("j={j}, c={c:?}: assembled {eu} != product form {disp}"));
                }
            }
        }
        Ok(format!("{} sequences c, {nonzero} nonzero |e_j u|^2", cs.len()))
    };
    match run(&mut t) {
        Ok(summary) => t.finish(summary),
        Err(e) => t.error(&e),
    }
}

/// The crystal graph of `B^{1,1}` for `D_4`: eight nodes and the ten arrows
/// `1-1->2-2->3-3->4-3->bar3`, `3-4->bar4-3->bar3-2->bar2-1->bar1`,
/// `4-4->bar3`, `3-3->4`, and the `0`-arrows `bar1->2`, `bar2->1`.
pub fn check_b11_golden() -> VerificationReport {
    let n = 4;
    let mut t = Tally::new("b11_golden_graph", &[("n", n)]);
    let kr = KrCrystal::new(n, 1).expect("valid");
    let g = match generate_all(&kr, &[kr.highest(0)], 100) {
        Ok(g) => g,
        Err(e) => return t.error(&e),
    };
    let name = |c: &Column| c.to_string();
    let got: BTreeSet<(String, usize, String)> =
        g.edges.iter().map(|e| (name(&g.nodes[e.source]), e.label, name(&g.nodes[e.target]))).collect();
    let want: BTreeSet<(String, usize, String)> = [
        ("1", 1, "2"),
        ("2", 2, "3"),
        ("3", 3, "4"),
        ("3", 4, "4b"),
        ("4", 4, "3b"),
        ("4b", 3, "3b"),
        ("3b", 2, "2b"),
        ("2b", 1, "1b"),
        ("1b", 0, "2"),
        ("2b", 0, "1"),
    ]
    .into_iter()
    .map(|(a, i, b)| (a.to_string(), i, b.to_string()))
    .collect();
    t.check(g.nodes.len() == 8, || format!("{} nodes", g.nodes.len()));
    t.check(got == want, || {
        let extra: Vec<_> = got.difference(&want).collect();
        let missing: Vec<_> = want.difference(&got).collect();
        format!("extra edges {extra:?}, missing edges {missing:?}")
    });
    t.finish(format!("{} nodes, {} edges", g.nodes.len(), g.edges.len()))
}

/// Every check over `4 <= n <= n_max`, `1 <= k <= min(k_max, n-2)`,
/// `l <= l_max`, ordered by check name then parameters.
pub fn run_all(n_max: usize, k_max: usize, l_max: usize, budget: usize) -> Vec<VerificationReport> {
    type Job = Box<dyn Fn() -> VerificationReport + Send + Sync>;
    let mut jobs: Vec<Job> = Vec::new();
    if n_max >= 4 {
        jobs.push(Box::new(check_b11_golden));
    }
    for n in 4..=n_max {
        for k in 1..=k_max.min(n - 2) {
            jobs.push(Box::new(move || check_fundamental_decomposition(n, k)));
            jobs.push(Box::new(move || check_crystal_axioms(n, k)));
            jobs.push(Box::new(move || check_zero_action(n, k)));
            jobs.push(Box::new(move || check_filling_equivariance(n, k)));
            for l in 1..=l_max {
                jobs.push(Box::new(move || check_norm_conditions(n, k, l)));
            }
            if k >= 2 {
                jobs.push(Box::new(move || check_e0_chains(n, k)));
                jobs.push(Box::new(move || check_w_decomposition(n, k, budget)));
                for l in 2..=l_max {
                    jobs.push(Box::new(move || check_restricted_character(n, k, l, budget)));
                }
            }
        }
    }
    let mut reports: Vec<VerificationReport> = jobs.par_iter().map(|job| job()).collect();
    reports.sort_by(|a, b| (&a.name, &a.params).cmp(&(&b.name, &b.params)));
    reports
}
