//! Partitions in the `k × (n−k)` box, 01-words and Grassmannian permutations.
//!
//! The canonical label is [`BoxPartition`]; [`BitWord`] and [`GrassPerm`] are
//! views.  A partition `λ` corresponds to the word with zeros exactly at the
//! positions `λ_i + k − i + 1`, and to the permutation with
//! `w(i) = λ_{k−i+1} + i` for `i ≤ k`.

use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("rank k = {k} exceeds n = {n}")]
    Rank { k: usize, n: usize },
    #[error("parts {parts:?} do not fit in the {k} x {width} box")]
    OutsideBox { parts: Vec<usize>, k: usize, width: usize },
    #[error("parts {0:?} are not weakly decreasing")]
    NotPartition(Vec<usize>),
    #[error("invalid 01-word: {0}")]
    Word(String),
    #[error("not a Grassmannian permutation with descent at {k}: {values:?}")]
    Perm { values: Vec<usize>, k: usize },
}

/// Which rows or columns [`BoxPartition::curve_op`] deletes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveMode {
    /// Delete the top `d` rows; the result lives in the `(k−d) × (n−k)` box.
    Row,
    /// Delete the leftmost `d` columns; the result lives in the `k × (n−k−d)` box.
    Col,
    /// Delete `d` rows and then `d` columns, staying in the `k × (n−k)` box.
    Both,
}

/// A partition inside the `k × (n−k)` rectangle.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoxPartition {
    k: usize,
    n: usize,
    parts: SmallVec<[u8; 8]>,
}

impl BoxPartition {
    pub fn new(k: usize, n: usize, parts: &[usize]) -> Result<Self, CombError> {
        if k > n {
            return Err(CombError::Rank { k, n });
        }
        let mut trimmed: Vec<usize> = parts.to_vec();
        while trimmed.last() == Some(&0) {
            trimmed.pop();
        }
        if trimmed.windows(2).any(|w| w[0] < w[1]) {
            return Err(CombError::NotPartition(parts.to_vec()));
        }
        if trimmed.len() > k || trimmed.first().is_some_and(|&p| p > n - k) {
            return Err(CombError::OutsideBox { parts: parts.to_vec(), k, width: n - k });
        }
        Ok(BoxPartition { k, n, parts: trimmed.iter().map(|&p| p as u8).collect() })
    }

    pub fn empty(k: usize, n: usize) -> Self {
        assert!(k <= n);
        BoxPartition { k, n, parts: SmallVec::new() }
    }

    /// The full rectangle `(n−k)^k`, the class of a point.
    pub fn full(k: usize, n: usize) -> Self {
        Self::new(k, n, &vec![n - k; k]).expect("rectangle fits its box")
    }

    /// All partitions in the box, ordered by size and then by parts.
    pub fn all(k: usize, n: usize) -> Vec<Self> {
        assert!(k <= n);
        let w = n - k;
        let mut out = Vec::new();
        let mut cur = vec![0usize; k];
        fn rec(i: usize, max: usize, cur: &mut Vec<usize>, k: usize, n: usize, out: &mut Vec<BoxPartition>) {
            if i == cur.len() {
                out.push(BoxPartition::new(k, n, cur).unwrap());
                return;
            }
            for p in 0..=max {
                cur[i] = p;
                rec(i + 1, p, cur, k, n, out);
            }
            cur[i] = 0;
        }
        rec(0, w, &mut cur, k, n, &mut out);
        out.sort();
        out
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Width `n − k` of the box.
    pub fn width(&self) -> usize {
        self.n - self.k
    }

    /// The nonzero parts.
    pub fn parts(&self) -> Vec<usize> {
        self.parts.iter().map(|&p| p as usize).collect()
    }

    /// All `k` parts, padded with zeros.
    pub fn padded(&self) -> Vec<usize> {
        (1..=self.k).map(|i| self.part(i)).collect()
    }

    /// `λ_i` for 1-based `i`, zero past the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1] as usize
        }
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Diagram containment `self ⊆ other`.
    pub fn contained_in(&self, other: &Self) -> bool {
        (1..=self.k).all(|i| self.part(i) <= other.part(i))
    }

    /// The same parts viewed in another box.
    pub fn reboxed(&self, k: usize, n: usize) -> Result<Self, CombError> {
        Self::new(k, n, &self.parts())
    }

    pub fn to_word(&self) -> BitWord {
        let mut bits = vec![1u8; self.n];
        for p in self.zero_positions() {
            bits[p - 1] = 0;
        }
        BitWord { bits }
    }

    pub fn from_word(w: &BitWord) -> Self {
        let n = w.len();
        let zeros: Vec<usize> = w.zero_positions();
        let k = zeros.len();
        // λ_i = p_{k−i+1} − (k − i + 1) with p ascending.
        let parts: Vec<usize> = (1..=k).map(|i| zeros[k - i] - (k - i + 1)).collect();
        Self::new(k, n, &parts).expect("word determines a box partition")
    }

    /// Positions `λ_i + k − i + 1` of the zeros, in increasing order.
    pub fn zero_positions(&self) -> Vec<usize> {
        (1..=self.k).rev().map(|i| self.part(i) + self.k - i + 1).collect()
    }

    /// Positions of the ones, in increasing order.
    pub fn one_positions(&self) -> Vec<usize> {
        let w = self.to_word();
        (1..=self.n).filter(|&m| w.bit(m) == 1).collect()
    }

    /// The index list `(λ_k+1, λ_{k−1}+2, …, λ_1+k)` of the fixed-point roots.
    pub fn epsilon_index(&self) -> Vec<usize> {
        self.zero_positions()
    }

    pub fn to_perm(&self) -> GrassPerm {
        let mut values = self.zero_positions();
        values.extend(self.one_positions());
        GrassPerm { values, k: self.k }
    }

    pub fn from_perm(p: &GrassPerm) -> Self {
        let k = p.k;
        let parts: Vec<usize> = (1..=k).map(|i| p.values[k - i] - (k - i + 1)).collect();
        Self::new(k, p.values.len(), &parts).expect("Grassmannian permutation determines a partition")
    }

    /// The transpose, living in the `(n−k) × k` box.
    pub fn transpose(&self) -> Self {
        let w = self.width();
        let parts: Vec<usize> = (1..=w).map(|j| (1..=self.k).filter(|&i| self.part(i) >= j).count()).collect();
        Self::new(w, self.n, &parts).expect("transpose fits the transposed box")
    }

    /// The 180°-rotated complement `λ^∨` in the same box.
    pub fn complement(&self) -> Self {
        let w = self.width();
        let parts: Vec<usize> = (1..=self.k).map(|i| w - self.part(self.k + 1 - i)).collect();
        Self::new(self.k, self.n, &parts).expect("complement fits the box")
    }

    /// The label of the word reversed and complemented, in the `(n−k)`-zero box.
    pub fn gamma_label(&self) -> Self {
        Self::from_word(&self.to_word().reverse_complement())
    }

    /// Deletion of rows and/or columns describing curve neighborhoods.
    pub fn curve_op(&self, d: usize, mode: CurveMode) -> Self {
        match mode {
            CurveMode::Row => {
                let dk = d.min(self.k);
                let parts: Vec<usize> = self.padded().into_iter().skip(dk).collect();
                Self::new(self.k - dk, self.n - dk, &parts).unwrap()
            }
            CurveMode::Col => {
                let dw = d.min(self.width());
                let parts: Vec<usize> = self.padded().into_iter().map(|p| p.saturating_sub(dw)).collect();
                Self::new(self.k, self.n - dw, &parts).unwrap()
            }
            CurveMode::Both => {
                let parts: Vec<usize> = self.padded().into_iter().skip(d).map(|p| p.saturating_sub(d)).collect();
                Self::new(self.k, self.n, &parts).unwrap()
            }
        }
    }

    /// `λ[−d]`: delete the top `d` rows and the leftmost `d` columns.
    pub fn curve_neighborhood(&self, d: usize) -> Self {
        self.curve_op(d, CurveMode::Both)
    }

    /// Simple transposition of letters `i, i+1` of the word, if they differ.
    pub fn swap_letters(&self, i: usize) -> Option<Self> {
        let w = self.to_word();
        if w.bit(i) == w.bit(i + 1) {
            None
        } else {
            Some(Self::from_word(&w.swap(i)))
        }
    }

    pub fn fmt_parts(&self) -> String {
        if self.parts.is_empty() {
            "∅".to_string()
        } else {
            let v: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
            format!("({})", v.join(","))
        }
    }
}

impl Ord for BoxPartition {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.k, self.n, self.size(), &self.parts).cmp(&(o.k, o.n, o.size(), &o.parts))
    }
}

impl PartialOrd for BoxPartition {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for BoxPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_parts())
    }
}

impl fmt::Display for BoxPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_parts())
    }
}

/// A word `j_1 … j_n` over `{0, 1}`; letter `j_m` is bound to `ε_m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    bits: Vec<u8>,
}

impl BitWord {
    pub fn new(bits: Vec<u8>) -> Result<Self, CombError> {
        if bits.iter().any(|&b| b > 1) {
            return Err(CombError::Word(format!("{bits:?}")));
        }
        Ok(BitWord { bits })
    }

    pub fn parse(s: &str) -> Result<Self, CombError> {
        let bits: Result<Vec<u8>, _> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(CombError::Word(s.to_string())),
            })
            .collect();
        Ok(BitWord { bits: bits? })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Letter `j_m` for 1-based `m`.
    pub fn bit(&self, m: usize) -> u8 {
        self.bits[m - 1]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Number of zero letters.
    pub fn zeros(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 0).count()
    }

    pub fn zero_positions(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&m| self.bit(m) == 0).collect()
    }

    pub fn reverse(&self) -> Self {
        BitWord { bits: self.bits.iter().rev().copied().collect() }
    }

    pub fn reverse_complement(&self) -> Self {
        BitWord { bits: self.bits.iter().rev().map(|b| 1 - b).collect() }
    }

    /// Exchanges letters `i` and `i+1` (1-based).
    pub fn swap(&self, i: usize) -> Self {
        let mut bits = self.bits.clone();
        bits.swap(i - 1, i);
        BitWord { bits }
    }

    /// `j_2 … j_n j_1`.
    pub fn rotate_left(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.rotate_left(1);
        BitWord { bits }
    }

    /// `j_n j_1 … j_{n−1}`.
    pub fn rotate_right(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.rotate_right(1);
        BitWord { bits }
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A permutation of `1…n` whose only descent is at position `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrassPerm {
    values: Vec<usize>,
    k: usize,
}

impl GrassPerm {
    pub fn new(values: Vec<usize>, k: usize) -> Result<Self, CombError> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(CombError::Perm { values, k });
            }
            seen[v] = true;
        }
        let ok = k <= n && (1..n).all(|i| i == k || values[i - 1] < values[i]);
        if !ok {
            return Err(CombError::Perm { values, k });
        }
        Ok(GrassPerm { values, k })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `w(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.values;
        (0..v.len()).map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count()).sum()
    }

    /// Bruhat order via the tableau criterion on the first `k` values.
    pub fn bruhat_le(&self, o: &Self) -> bool {
        let mut a: Vec<usize> = self.values[..self.k].to_vec();
        let mut b: Vec<usize> = o.values[..o.k].to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| x <= y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: usize, n: usize, parts: &[usize]) -> BoxPartition {
        BoxPartition::new(k, n, parts).unwrap()
    }

    #[test]
    fn words_of_examples() {
        assert_eq!(p(5, 10, &[5, 3, 3, 1, 1]).to_word().to_string(), "1001100110");
        assert_eq!(p(3, 7, &[3, 3]).to_word().to_string(), "0111001");
        assert_eq!(BoxPartition::empty(3, 5).to_word().to_string(), "00011");
    }

    #[test]
    fn perms_of_examples() {
        assert_eq!(p(3, 7, &[3, 3]).to_perm().values(), &[1, 5, 6, 2, 3, 4, 7]);
        assert_eq!(p(5, 10, &[5, 3, 3, 1, 1]).to_perm().values(), &[2, 3, 6, 7, 10, 1, 4, 5, 8, 9]);
        assert_eq!(BoxPartition::empty(2, 4).to_perm().values(), &[1, 2, 3, 4]);
    }

    #[test]
    fn curve_examples() {
        assert_eq!(p(2, 4, &[2, 2]).curve_op(1, CurveMode::Both), p(2, 4, &[1]));
        assert_eq!(BoxPartition::empty(2, 5).curve_op(3, CurveMode::Both), BoxPartition::empty(2, 5));
        assert_eq!(p(1, 2, &[1]).curve_op(1, CurveMode::Both), BoxPartition::empty(1, 2));
        assert_eq!(p(2, 5, &[3, 1]).curve_op(1, CurveMode::Row), p(1, 4, &[1]));
        assert_eq!(p(2, 5, &[3, 1]).curve_op(1, CurveMode::Col), p(2, 4, &[2]));
    }

    #[test]
    fn duals() {
        assert_eq!(p(2, 4, &[2, 1]).complement(), p(2, 4, &[1]));
        assert_eq!(p(2, 4, &[2, 1]).transpose(), p(2, 4, &[2, 1]));
        assert_eq!(BoxPartition::empty(2, 5).complement(), p(2, 5, &[3, 3]));
        assert_eq!(p(2, 5, &[3, 1]).transpose(), p(3, 5, &[2, 1, 1]));
    }

    #[test]
    fn epsilon_indices() {
        assert_eq!(BoxPartition::empty(1, 2).epsilon_index(), vec![1]);
        assert_eq!(p(1, 2, &[1]).epsilon_index(), vec![2]);
        assert_eq!(BoxPartition::full(2, 5).epsilon_index(), vec![4, 5]);
    }

    #[test]
    fn bad_inputs() {
        assert!(BoxPartition::new(2, 4, &[3]).is_err());
        assert!(BoxPartition::new(2, 4, &[1, 2]).is_err());
        assert!(BoxPartition::new(2, 4, &[1, 1, 1]).is_err());
        assert!(BoxPartition::new(5, 4, &[]).is_err());
        assert!(GrassPerm::new(vec![2, 1, 3], 2).is_err());
    }
}
