//! Partitions, elementary Schur polynomials, Schur and Q-Schur functions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{determinant, pfaffian, RectMatrix, UpperTriMatrix};
use crate::ring::{rat_int, Bank, Poly, Rational, TimeArgument};
use crate::tau::chi_bar;

/// Integer partition with weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Trailing zeros are dropped; anything else out of order is an error.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(k, k-1, …, 1)`.
    pub fn staircase(k: u32) -> Self {
        Partition((1..=k).rev().collect())
    }

    /// `(k, k, …, k)` with `rows` rows.
    pub fn rectangle(k: u32, rows: u32) -> Self {
        if k == 0 {
            return Partition::empty();
        }
        Partition(vec![k; rows as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32).collect())
    }

    /// Every partition of `n`, in reverse lexicographic order.
    pub fn all_of(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=max.min(n)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    pub fn to_frobenius(&self) -> FrobeniusCoords {
        let conj = self.conjugate();
        let r = self.0.iter().enumerate().take_while(|&(i, &p)| p as usize > i).count();
        FrobeniusCoords {
            arms: (0..r).map(|i| self.0[i] - 1 - i as u32).collect(),
            legs: (0..r).map(|i| conj.0[i] - 1 - i as u32).collect(),
        }
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Frobenius coordinates `(α₁,…,α_r | β₁,…,β_r)` with `α_i = λ_i − i` and
/// `β_i = λ'_i − i` (rows and columns counted from 1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FrobeniusCoords {
    pub arms: Vec<u32>,
    pub legs: Vec<u32>,
}

impl FrobeniusCoords {
    pub fn new(arms: Vec<u32>, legs: Vec<u32>) -> Result<Self> {
        if arms.len() != legs.len() {
            return Err(Error::Frobenius(format!("{} arms but {} legs", arms.len(), legs.len())));
        }
        for (name, v) in [("arms", &arms), ("legs", &legs)] {
            if v.windows(2).any(|w| w[0] <= w[1]) {
                return Err(Error::Frobenius(format!("{name} {v:?} not strictly decreasing")));
            }
        }
        Ok(FrobeniusCoords { arms, legs })
    }

    pub fn to_partition(&self) -> Partition {
        let r = self.arms.len();
        let rows = self.legs.first().map_or(0, |&b| b as usize + 1);
        let parts = (0..rows)
            .map(|i| {
                if i < r {
                    self.arms[i] + i as u32 + 1
                } else {
                    // column j (< r) reaches row i iff λ'_j = β_j + j + 1 > i
                    self.legs.iter().enumerate().filter(|&(j, &b)| b as usize + j + 1 > i).count() as u32
                }
            })
            .collect();
        Partition(parts)
    }
}

impl fmt::Display for FrobeniusCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.arms.iter().map(u32::to_string).collect();
        let b: Vec<String> = self.legs.iter().map(u32::to_string).collect();
        write!(f, "({}|{})", a.join(","), b.join(","))
    }
}

/// `λ₁ > λ₂ > … > λ_{2n} ≥ 0`: strictly decreasing, even length, the last
/// part possibly zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct ExtendedStrictPartition(Vec<u32>);

impl ExtendedStrictPartition {
    /// Odd-length input ending in a positive part is padded with a zero.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::NotStrict(parts));
        }
        if parts.len() % 2 == 1 {
            if parts.last() == Some(&0) {
                return Err(Error::NotStrict(parts));
            }
            parts.push(0);
        }
        Ok(ExtendedStrictPartition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Half the (even) length.
    pub fn half_len(&self) -> usize {
        self.0.len() / 2
    }

    pub fn max_part(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The underlying strict partition (zero part removed).
    pub fn strict_parts(&self) -> Vec<u32> {
        self.0.iter().copied().filter(|&p| p > 0).collect()
    }

    /// Every extended strict partition with parts `≤ max_part` and the
    /// given even length.
    pub fn all_with(max_part: u32, len: usize) -> Vec<ExtendedStrictPartition> {
        fn rec(below: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for p in (0..below).rev() {
                if (p as usize) + 1 < left {
                    break;
                }
                cur.push(p);
                rec(p, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(max_part + 1, len, &mut Vec::new(), &mut out);
        out.into_iter().map(ExtendedStrictPartition).collect()
    }
}

impl TryFrom<Vec<u32>> for ExtendedStrictPartition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        ExtendedStrictPartition::new(v)
    }
}

impl From<ExtendedStrictPartition> for Vec<u32> {
    fn from(p: ExtendedStrictPartition) -> Self {
        p.0
    }
}

impl fmt::Display for ExtendedStrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `[s_0(u), …, s_max(u)]` for the sequence `u_k = components[k-1]`, by
/// `j·s_j = Σ_{k=1}^{j} k·u_k·s_{j-k}`. Missing components are zero.
pub fn elem_schur_table_from(components: &[Poly], max: usize) -> Vec<Poly> {
    let mut s = Vec::with_capacity(max + 1);
    s.push(Poly::one());
    for j in 1..=max {
        let mut acc = Poly::zero();
        for k in 1..=j.min(components.len()) {
            let u = &components[k - 1];
            if u.is_zero() {
                continue;
            }
            acc += &(&s[j - k] * u).scale_rat(&rat_int(k as i64));
        }
        s.push(acc.scale_rat(&Rational::new(BigInt::one(), BigInt::from(j))));
    }
    s
}

/// `[s_0(arg), …, s_max(arg)]`.
pub fn elem_schur_table(max: usize, arg: &TimeArgument) -> Vec<Poly> {
    let comps: Vec<Poly> = (1..=max as u32).map(|k| arg.component(k)).collect();
    elem_schur_table_from(&comps, max)
}

/// Elementary Schur polynomial `s_j` at an affine argument; zero for `j < 0`.
pub fn elem_schur(j: i64, arg: &TimeArgument) -> Poly {
    if j < 0 {
        return Poly::zero();
    }
    elem_schur_table(j as usize, arg).pop().unwrap()
}

/// Jacobi–Trudi `s_λ = det(s_{λ_i − i + j})` in the `t` bank.
pub fn schur_lambda(lambda: &Partition) -> Poly {
    let l = lambda.len();
    if l == 0 {
        return Poly::one();
    }
    let max = (lambda.parts()[0] as usize) + l;
    let s = elem_schur_table(max, &TimeArgument::times(Bank::T));
    let get = |idx: i64| -> Poly {
        if idx < 0 {
            Poly::zero()
        } else {
            s[idx as usize].clone()
        }
    };
    let m = RectMatrix::from_fn(l, l, |i, j| get(lambda.parts()[i] as i64 - i as i64 + j as i64));
    determinant(&m).expect("Jacobi-Trudi matrix is square")
}

/// Q-Schur function `Q_λ` as an odd-only polynomial in `t`:
/// `2ⁿ · Pf(χ̄_{λ_i,λ_j}(t̄, t̄))`. Substituting `t_k = 2 p_k(x) / k`
/// recovers Macdonald's `Q_λ(x)`.
pub fn q_schur(lambda: &[u32]) -> Result<Poly> {
    let esp = ExtendedStrictPartition::new(lambda.to_vec())?;
    let n = esp.half_len();
    let bar = TimeArgument::odd_times(Bank::T);
    let a = UpperTriMatrix::from_fn(esp.len(), |i, j| chi_bar(esp.parts()[i], esp.parts()[j], &bar, &bar));
    let pf = pfaffian(&a)?;
    Ok(pf.scale_rat(&rat_int(1i64 << n)))
}

/// The three truncated q-series of the character of the charged Fock space:
/// `2∏(1+q^k)²`, `Σ_{j∈ℤ} q^{j(j−1)/2} / ∏(1−q^k)` and `2∏(1−q^{2k−1})^{−2}`,
/// each through `q^order`.
pub fn character_series(order: usize) -> [Vec<BigInt>; 3] {
    let n = order + 1;
    let mul_binomial = |s: &mut Vec<BigInt>, k: usize, sign: i64| {
        // s *= (1 + sign·q^k)
        for i in (k..n).rev() {
            let add = &s[i - k] * sign;
            s[i] += add;
        }
    };
    let div_binomial = |s: &mut Vec<BigInt>, k: usize| {
        // s /= (1 − q^k)
        for i in k..n {
            let add = s[i - k].clone();
            s[i] += add;
        }
    };
    let mut unit = vec![BigInt::zero(); n];
    unit[0] = BigInt::from(2);

    let mut fermionic = unit.clone();
    for k in 1..n {
        mul_binomial(&mut fermionic, k, 1);
        mul_binomial(&mut fermionic, k, 1);
    }

    let mut theta = vec![BigInt::zero(); n];
    // j and 1 − j give the same exponent; j ≥ 1 covers each exponent once
    let mut j = 1usize;
    while j * (j - 1) / 2 < n {
        theta[j * (j - 1) / 2] += BigInt::from(2);
        j += 1;
    }
    for k in 1..n {
        div_binomial(&mut theta, k);
    }

    let mut odd = unit;
    let mut k = 1;
    while k < n {
        div_binomial(&mut odd, k);
        div_binomial(&mut odd, k);
        k += 2;
    }
    [fermionic, theta, odd]
}

/// True iff the three character series agree through `q^order`.
pub fn character_check(order: usize) -> bool {
    let [a, b, c] = character_series(order);
    a == b && b == c
}
