//! Classical `D_n` weights in the orthonormal `eps` basis.
//!
//! Coordinates are stored doubled so that the spin weights
//! `(eps_1 + ... + eps_{n-1} +/- eps_n)/2` stay integral. The affine simple
//! root `alpha_0` is represented by its classical image `-eps_1 - eps_2`;
//! the null root direction is dropped throughout.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Smallest rank for which `D_n` is used here.
pub const MIN_RANK: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    coords2: Vec<i64>,
}

impl Weight {
    /// Builds a weight from doubled coordinates `2 (lambda, eps_i)`.
    pub fn from_coords2(coords2: Vec<i64>) -> Result<Self> {
        if coords2.len() < MIN_RANK {
            return domain(format!("rank {} is below {MIN_RANK}", coords2.len()));
        }
        let parity = coords2[0].rem_euclid(2);
        if coords2.iter().any(|c| c.rem_euclid(2) != parity) {
            return domain(format!("mixed parity in doubled coordinates {coords2:?}"));
        }
        Ok(Self { coords2 })
    }

    /// Builds an integral weight from ordinary `eps` coordinates.
    pub fn from_eps(coords: &[i64]) -> Result<Self> {
        Self::from_coords2(coords.iter().map(|c| 2 * c).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self { coords2: vec![0; n] }
    }

    /// `eps_i`, 1-based.
    pub fn eps(n: usize, i: usize) -> Self {
        let mut w = Self::zero(n);
        w.coords2[i - 1] = 2;
        w
    }

    pub fn rank(&self) -> usize {
        self.coords2.len()
    }

    pub fn coords2(&self) -> &[i64] {
        &self.coords2
    }

    /// Doubled inner product `2 (self, other)`.
    fn inner2(&self, other: &Self) -> i64 {
        debug_assert_eq!(self.rank(), other.rank());
        let s: i64 = self.coords2.iter().zip(&other.coords2).map(|(a, b)| a * b).sum();
        s / 2
    }

    /// `<h_i, self>`; with all roots of length 2 this is `(self, alpha_i)`.
    pub fn pairing_h(&self, i: usize) -> i64 {
        let alpha = simple_root(self.rank(), i).expect("label out of range");
        let twice = self.inner2(&alpha);
        debug_assert_eq!(twice % 2, 0);
        twice / 2
    }

    /// `(<h_1, self>, ..., <h_n, self>)`.
    pub fn dynkin_labels(&self) -> Vec<i64> {
        (1..=self.rank()).map(|i| self.pairing_h(i)).collect()
    }

    /// Dominant for the classical algebra: all `<h_i, .>` with `i != 0`
    /// nonnegative.
    pub fn is_dominant(&self) -> bool {
        self.dynkin_labels().iter().all(|&a| a >= 0)
    }

    /// `eps` coordinates as a string, halves written as `k/2`.
    pub fn eps_string(&self) -> String {
        let parts: Vec<String> =
            self.coords2.iter().map(|c| if c % 2 == 0 { (c / 2).to_string() } else { format!("{c}/2") }).collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for Weight {
    /// Fundamental-weight expansion, e.g. `2*L2 + L4`; the zero weight
    /// renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .dynkin_labels()
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(idx, &a)| match a {
                1 => format!("L{}", idx + 1),
                -1 => format!("-L{}", idx + 1),
                _ => format!("{a}*L{}", idx + 1),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        for (a, b) in self.coords2.iter_mut().zip(&rhs.coords2) {
            *a += b;
        }
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(mut self, rhs: Weight) -> Weight {
        self += &rhs;
        self
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { coords2: self.coords2.iter().map(|c| -c).collect() }
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self + &(-rhs)
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        Weight { coords2: rhs.coords2.iter().map(|c| self * c).collect() }
    }
}

fn check_rank(n: usize) -> Result<()> {
    if n < MIN_RANK {
        return domain(format!("type D_n needs n >= {MIN_RANK}, got n={n}"));
    }
    Ok(())
}

/// Simple root `alpha_i` for `i in 0..=n`; `alpha_0` is returned as its
/// classical image `-eps_1 - eps_2`.
pub fn simple_root(n: usize, i: usize) -> Result<Weight> {
    check_rank(n)?;
    let mut c = vec![0i64; n];
    match i {
        0 => {
            c[0] = -2;
            c[1] = -2;
        }
        _ if i < n => {
            c[i - 1] = 2;
            c[i] = -2;
        }
        _ if i == n => {
            c[n - 2] = 2;
            c[n - 1] = 2;
        }
        _ => return domain(format!("simple root index {i} out of range 0..={n}")),
    }
    Ok(Weight { coords2: c })
}

/// Fundamental weight `Lambda_i` of `D_n` for `i in 1..=n`.
pub fn fundamental(n: usize, i: usize) -> Result<Weight> {
    check_rank(n)?;
    if i == 0 || i > n {
        return domain(format!("fundamental weight index {i} out of range 1..={n}"));
    }
    let c = if i <= n - 2 {
        (0..n).map(|j| if j < i { 2 } else { 0 }).collect()
    } else {
        let last = if i == n { 1 } else { -1 };
        (0..n).map(|j| if j + 1 < n { 1 } else { last }).collect()
    };
    Ok(Weight { coords2: c })
}

/// `Lambda_i` with the convention `Lambda_0 = 0`.
pub fn fundamental_or_zero(n: usize, i: usize) -> Result<Weight> {
    if i == 0 {
        check_rank(n)?;
        Ok(Weight::zero(n))
    } else {
        fundamental(n, i)
    }
}

/// Checks `l >= c_1 >= ... >= c_{k'} >= 0` with `k' = floor(k/2)` and the
/// rank constraint `1 <= k <= n-2`.
pub fn validate_c(n: usize, k: usize, l: u32, c: &[u32]) -> Result<()> {
    check_rank(n)?;
    if k == 0 || k + 2 > n {
        return domain(format!("need 1 <= k <= n-2, got n={n}, k={k}"));
    }
    if c.len() != k / 2 {
        return domain(format!("c must have length floor(k/2) = {}, got {}", k / 2, c.len()));
    }
    let mut prev = l;
    for &cj in c {
        if cj > prev {
            return domain(format!("c = {c:?} is not nonincreasing and bounded by l = {l}"));
        }
        prev = cj;
    }
    Ok(())
}

/// `lambda(c) = sum_{j=0}^{k'} (c_j - c_{j+1}) Lambda_{k-2j}` with
/// `c_0 = l`, `c_{k'+1} = 0` and `Lambda_0 = 0`.
pub fn lambda_of_c(n: usize, k: usize, l: u32, c: &[u32]) -> Result<Weight> {
    validate_c(n, k, l, c)?;
    let kp = k / 2;
    let at = |j: usize| -> i64 {
        match j {
            0 => i64::from(l),
            _ if j > kp => 0,
            _ => i64::from(c[j - 1]),
        }
    };
    let mut out = Weight::zero(n);
    for j in 0..=kp {
        let coeff = at(j) - at(j + 1);
        out += &(coeff * &fundamental_or_zero(n, k - 2 * j)?);
    }
    Ok(out)
}
