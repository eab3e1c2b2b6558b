//! Exact binomials, colexicographic ranking of k-subsets, and the tower function.
//!
//! The colex rank of `s_0 < s_1 < ... < s_{k-1}` is `sum_i C(s_i, i + 1)`. It
//! does not depend on the size of the ground set, so a subset keeps its rank
//! when the vertex set grows.

use crate::error::{Error, Result};

/// `C(n, k)` with checked arithmetic; `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        // acc = C(n, i - 1) fits in u64, so the product fits in u128.
        acc = acc * (n as u128 - i + 1) / i;
        if acc > u64::MAX as u128 {
            return Err(Error::Overflow(format!("C({n}, {k})")));
        }
    }
    Ok(acc as u64)
}

/// Colex rank of a strictly increasing k-subset.
pub fn subset_rank(subset: &[usize], k: usize) -> Result<u64> {
    if subset.len() != k {
        return Err(Error::invalid_subset(
            subset,
            format!("expected {k} elements, got {}", subset.len()),
        ));
    }
    if subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid_subset(subset, "not strictly increasing"));
    }
    let mut rank: u64 = 0;
    for (i, &s) in subset.iter().enumerate() {
        let term = binomial(s as u64, i as u64 + 1)?;
        rank = rank
            .checked_add(term)
            .ok_or_else(|| Error::Overflow(format!("colex rank of {subset:?}")))?;
    }
    Ok(rank)
}

/// Inverse of [`subset_rank`].
pub fn subset_unrank(rank: u64, k: usize) -> Result<Vec<usize>> {
    let mut out = vec![0usize; k];
    let mut rest = rank;
    for i in (1..=k as u64).rev() {
        // Largest c with C(c, i) <= rest; C(i - 1, i) = 0 so c >= i - 1.
        let fits = |c: u64| matches!(binomial(c, i), Ok(v) if v <= rest);
        let mut lo = i - 1;
        let mut hi = lo + 1;
        while fits(hi) {
            lo = hi;
            hi = hi.checked_mul(2).ok_or_else(|| Error::Overflow(format!("unrank {rank}")))?;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if fits(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out[i as usize - 1] = usize::try_from(lo)
            .map_err(|_| Error::Overflow(format!("unrank {rank} (k = {k})")))?;
        rest -= binomial(lo, i)?;
    }
    Ok(out)
}

/// Value of the tower function, or an explicit saturation marker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tower {
    Finite(u128),
    Overflow,
}

/// `twr_1(x) = x`, `twr_{i+1}(x) = 2^{twr_i(x)}`.
pub fn tower(i: u32, x: u128) -> Tower {
    assert!(i >= 1, "tower height starts at 1");
    let mut value = x;
    for _ in 1..i {
        if value >= 128 {
            return Tower::Overflow;
        }
        value = 1u128 << value;
    }
    Tower::Finite(value)
}

/// Dense table of `C(v, j)` for `v <= n`, `j <= k`, used on hot paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialTable {
    n: usize,
    k: usize,
    table: Vec<usize>,
}

impl BinomialTable {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let mut table = vec![0usize; (n + 1) * (k + 1)];
        for v in 0..=n {
            for j in 0..=k {
                let c = binomial(v as u64, j as u64)?;
                table[v * (k + 1) + j] = usize::try_from(c)
                    .map_err(|_| Error::Overflow(format!("C({v}, {j})")))?;
            }
        }
        Ok(BinomialTable { n, k, table })
    }

    #[inline]
    pub fn get(&self, v: usize, j: usize) -> usize {
        debug_assert!(v <= self.n && j <= self.k);
        self.table[v * (self.k + 1) + j]
    }

    /// Colex rank of a sorted subset whose size is at most `k` and entries at most `n`.
    #[inline]
    pub fn rank(&self, subset: &[usize]) -> usize {
        subset
            .iter()
            .enumerate()
            .map(|(i, &s)| self.get(s, i + 1))
            .sum()
    }

    pub fn max_vertex(&self) -> usize {
        self.n
    }
}

/// Advance `subset` to its colex successor among subsets of `0..n`.
/// Returns `false` (leaving `subset` unspecified) when it was the last one.
pub fn next_colex(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in 0..k {
        let bound = if i + 1 < k { subset[i + 1] } else { n };
        if subset[i] + 1 < bound {
            subset[i] += 1;
            for (j, s) in subset.iter_mut().enumerate().take(i) {
                *s = j;
            }
            return true;
        }
    }
    false
}

/// Advance `subset` to its lexicographic successor among subsets of `0..n`.
pub fn next_lex(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All `k`-subsets of `items`, in lexicographic order of positions.
pub fn lex_subsets<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let n = items.len();
    if k > n {
        return Vec::new();
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        if k == 0 || !next_lex(&mut idx, n) {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial_binomial(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let f = |m: u64| (1..=m).map(u128::from).product::<u128>();
        (f(n) / (f(k) * f(n - k))) as u64
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(4, 5).unwrap(), 0);
        assert_eq!(binomial(15, 3).unwrap(), factorial_binomial(15, 3));
        assert_eq!(binomial(15, 3).unwrap(), 455);
        assert_eq!(binomial(0, 0).unwrap(), 1);
    }

    #[test]
    fn binomial_overflow_is_reported() {
        assert!(matches!(binomial(200, 100), Err(Error::Overflow(_))));
        assert_eq!(binomial(67, 33).unwrap(), 14226520737620288370);
        assert!(binomial(68, 34).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(subset_rank(&[0, 1, 2], 3).unwrap(), 0);
        assert_eq!(subset_rank(&[0, 1, 3], 3).unwrap(), 1);
        assert_eq!(subset_rank(&[1, 2, 3], 3).unwrap(), 3);
        assert!(subset_rank(&[0, 2, 1], 3).is_err());
        assert!(subset_rank(&[0, 1, 1], 3).is_err());
        assert!(subset_rank(&[0, 1], 3).is_err());
    }

    #[test]
    fn unrank_examples() {
        assert_eq!(subset_unrank(0, 3).unwrap(), vec![0, 1, 2]);
        assert_eq!(subset_unrank(3, 3).unwrap(), vec![1, 2, 3]);
        assert_eq!(subset_unrank(4, 3).unwrap(), vec![0, 1, 4]);
    }

    #[test]
    fn rank_unrank_exhaustive() {
        for k in 1..=5 {
            for n in k..=12 {
                let total = binomial(n as u64, k as u64).unwrap();
                let mut s: Vec<usize> = (0..k).collect();
                let mut expected = 0u64;
                loop {
                    assert_eq!(subset_rank(&s, k).unwrap(), expected);
                    assert_eq!(subset_unrank(expected, k).unwrap(), s);
                    expected += 1;
                    if !next_colex(&mut s, n) {
                        break;
                    }
                }
                assert_eq!(expected, total);
            }
        }
    }

    #[test]
    fn tower_examples() {
        assert_eq!(tower(1, 5), Tower::Finite(5));
        assert_eq!(tower(2, 3), Tower::Finite(8));
        assert_eq!(tower(3, 2), Tower::Finite(16));
        assert_eq!(tower(4, 2), Tower::Finite(65536));
        assert_eq!(tower(5, 2), Tower::Overflow);
        assert_eq!(tower(2, 127), Tower::Finite(1 << 127));
        assert_eq!(tower(2, 128), Tower::Overflow);
    }

    #[test]
    fn lex_subsets_order() {
        let s = lex_subsets(&[10, 20, 30], 2);
        assert_eq!(s, vec![vec![10, 20], vec![10, 30], vec![20, 30]]);
        assert_eq!(lex_subsets(&[1, 2], 0), vec![Vec::<i32>::new()]);
        assert!(lex_subsets(&[1, 2], 3).is_empty());
    }

    #[test]
    fn table_rank_matches_checked_rank() {
        let t = BinomialTable::new(20, 4).unwrap();
        let mut s = vec![0, 1, 2, 3];
        loop {
            assert_eq!(t.rank(&s) as u64, subset_rank(&s, 4).unwrap());
            if !next_colex(&mut s, 20) {
                break;
            }
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn tower_strictly_increasing(i in 1u32..4, x in 0u128..6) {
                if let (Tower::Finite(a), Tower::Finite(b)) = (tower(i, x), tower(i, x + 1)) {
                    prop_assert!(a < b);
                }
                if let (Tower::Finite(a), Tower::Finite(b)) = (tower(i, x), tower(i + 1, x)) {
                    prop_assert!(a < b);
                }
            }

            #[test]
            fn unrank_inverts_rank(rank in 0u64..1_000_000, k in 1usize..6) {
                let s = subset_unrank(rank, k).unwrap();
                prop_assert_eq!(subset_rank(&s, k).unwrap(), rank);
            }
        }
    }
}
