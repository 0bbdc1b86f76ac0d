//! Division-free Pfaffians and determinants over the polynomial ring, and
//! the Caianiello expansion of a block Pfaffian.
//!
//! Pfaffians here are the combinatorial sum over perfect matchings of the
//! strict upper triangle. Nothing below the diagonal is ever read, so the
//! matrices of two-point functions coming out of Wick's theorem (which are
//! not skew) can be fed in directly.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ring::Poly;

/// The strict upper triangle `a_{ij}`, `i < j`, of an `m × m` matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UpperTriMatrix {
    size: usize,
    entries: Vec<Poly>,
}

impl UpperTriMatrix {
    pub fn zeros(size: usize) -> Self {
        UpperTriMatrix { size, entries: vec![Poly::zero(); size * size.saturating_sub(1) / 2] }
    }

    /// `f(i, j)` is only called for `i < j`.
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(size * size.saturating_sub(1) / 2);
        for i in 0..size {
            for j in i + 1..size {
                entries.push(f(i, j));
            }
        }
        UpperTriMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        assert!(i < j && j < self.size, "({i}, {j}) is not in the strict upper triangle");
        // rows 0..i contribute (size-1) + (size-2) + … entries
        i * (2 * self.size - i - 1) / 2 + (j - i - 1)
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[self.slot(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        let s = self.slot(i, j);
        self.entries[s] = p;
    }

    /// Principal submatrix on the (increasing) index list.
    pub fn principal(&self, idx: &[usize]) -> UpperTriMatrix {
        UpperTriMatrix::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]).clone())
    }

    /// The skew-symmetric matrix with this upper triangle.
    pub fn skew_extension(&self) -> RectMatrix {
        RectMatrix::from_fn(self.size, self.size, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => self.get(i, j).clone(),
            std::cmp::Ordering::Greater => -self.get(j, i),
            std::cmp::Ordering::Equal => Poly::zero(),
        })
    }

    /// Upper triangle of `[[X, W], [·, Y]]`.
    pub fn block(x: &UpperTriMatrix, w: &RectMatrix, y: &UpperTriMatrix) -> UpperTriMatrix {
        let m = x.size;
        assert_eq!((w.rows(), w.cols()), (m, y.size), "block shapes disagree");
        UpperTriMatrix::from_fn(m + y.size, |i, j| {
            if j < m {
                x.get(i, j).clone()
            } else if i < m {
                w.get(i, j - m).clone()
            } else {
                y.get(i - m, j - m).clone()
            }
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RectMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl RectMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RectMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RectMatrix { rows, cols, entries: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        RectMatrix::from_fn(n, n, |i, j| if i == j { Poly::one() } else { Poly::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn transpose(&self) -> RectMatrix {
        RectMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }
}

/// Keeps the listed rows and columns, in the given order.
pub fn submatrix(w: &RectMatrix, keep_rows: &[usize], keep_cols: &[usize]) -> Result<RectMatrix> {
    if let Some(&r) = keep_rows.iter().find(|&&r| r >= w.rows) {
        return Err(Error::IndexOutOfRange { index: r, dim: w.rows });
    }
    if let Some(&c) = keep_cols.iter().find(|&&c| c >= w.cols) {
        return Err(Error::IndexOutOfRange { index: c, dim: w.cols });
    }
    Ok(RectMatrix::from_fn(keep_rows.len(), keep_cols.len(), |i, j| w.get(keep_rows[i], keep_cols[j]).clone()))
}

/// Combinatorial Pfaffian by first-index expansion, memoized over the set of
/// remaining indices. `Pf` of the empty matrix is 1.
pub fn pfaffian(a: &UpperTriMatrix) -> Result<Poly> {
    let m = a.size();
    if m % 2 == 1 {
        return Err(Error::OddPfaffian(m));
    }
    assert!(m <= 63, "Pfaffian size {m} too large for subset memoization");
    let full: u64 = if m == 0 { 0 } else { (1u64 << m) - 1 };
    let mut memo: HashMap<u64, Poly> = HashMap::new();
    Ok(pf_rec(a, full, &mut memo))
}

fn pf_rec(a: &UpperTriMatrix, mask: u64, memo: &mut HashMap<u64, Poly>) -> Poly {
    if mask == 0 {
        return Poly::one();
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & !(1u64 << i);
    let mut acc = Poly::zero();
    // the r-th remaining index after i (r = 0, 1, …) contributes with sign (−1)^r
    let mut bits = rest;
    let mut r = 0;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let aij = a.get(i, j);
        if !aij.is_zero() {
            let sub = pf_rec(a, rest & !(1u64 << j), memo);
            if !sub.is_zero() {
                let term = aij * &sub;
                if r % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
        }
        r += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Determinant by Laplace expansion along rows, memoized over the set of
/// unused columns. Division-free; `det` of the empty matrix is 1.
pub fn determinant(m: &RectMatrix) -> Result<Poly> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    assert!(n <= 63, "determinant size {n} too large for subset memoization");
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    Ok(det_rec(m, full, &mut memo))
}

fn det_rec(m: &RectMatrix, cols: u64, memo: &mut HashMap<u64, Poly>) -> Poly {
    if cols == 0 {
        return Poly::one();
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let row = m.rows - cols.count_ones() as usize;
    let mut acc = Poly::zero();
    let mut bits = cols;
    let mut r = 0;
    while bits != 0 {
        let c = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let e = m.get(row, c);
        if !e.is_zero() {
            let sub = det_rec(m, cols & !(1u64 << c), memo);
            if !sub.is_zero() {
                let term = e * &sub;
                if r % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
        }
        r += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn subsets_of_even_size(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..(1u64 << n)).filter(|m| m.count_ones() % 2 == 0).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

/// Sign `ε(I, J)` of the Caianiello expansion; `I`, `J` are 0-based but the
/// index sums use 1-based labels.
pub fn caianiello_sign(m: usize, k: usize, i_set: &[usize], j_set: &[usize]) -> bool {
    let sum_i: usize = i_set.iter().map(|x| x + 1).sum();
    let sum_j: usize = j_set.iter().map(|x| x + 1).sum();
    let e = sum_i + sum_j + binom2(m) + binom2(k) + binom2(m - i_set.len());
    e.is_multiple_of(2)
}

/// `Σ_{I,J} ε(I,J) Pf(X(I,I)) Pf(Y(J,J)) det(W([m]∖I; [k]∖J))` over
/// even-size `I ⊆ [m]`, `J ⊆ [k]` with `m − |I| = k − |J|`. Equals
/// `Pf [[X, W], [−Wᵀ, Y]]`.
pub fn caianiello_expand(x: &UpperTriMatrix, y: &UpperTriMatrix, w: &RectMatrix) -> Result<Poly> {
    let (m, k) = (x.size(), y.size());
    if (m + k) % 2 == 1 {
        return Err(Error::ParityMismatch { m, k });
    }
    if (w.rows(), w.cols()) != (m, k) {
        return Err(Error::NotSquare { rows: w.rows(), cols: w.cols() });
    }
    let j_subsets: Vec<Vec<usize>> = subsets_of_even_size(k).collect();
    let mut acc = Poly::zero();
    for i_set in subsets_of_even_size(m) {
        let pf_x = pfaffian(&x.principal(&i_set))?;
        if pf_x.is_zero() {
            continue;
        }
        let rows: Vec<usize> = (0..m).filter(|r| !i_set.contains(r)).collect();
        for j_set in j_subsets.iter().filter(|j| k - j.len() == rows.len()) {
            let cols: Vec<usize> = (0..k).filter(|c| !j_set.contains(c)).collect();
            let det = determinant(&submatrix(w, &rows, &cols)?)?;
            if det.is_zero() {
                continue;
            }
            let pf_y = pfaffian(&y.principal(j_set))?;
            let term = &(&pf_x * &pf_y) * &det;
            if caianiello_sign(m, k, &i_set, j_set) {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
    }
    Ok(acc)
}

/// Upper triangle of `[[X, W], [−Wᵀ, Y]]`, for comparison with
/// [`caianiello_expand`].
pub fn block_pfaffian(x: &UpperTriMatrix, y: &UpperTriMatrix, w: &RectMatrix) -> Result<Poly> {
    let m = x.size() + y.size();
    if m % 2 == 1 {
        return Err(Error::ParityMismatch { m: x.size(), k: y.size() });
    }
    pfaffian(&UpperTriMatrix::block(x, w, y))
}
