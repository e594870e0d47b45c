//! Small combinatorial helpers: binomials, k-subset enumeration and ranking,
//! permutation iteration.

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).unwrap_or(u64::MAX)
}

/// Binomial with a signed lower index, as used by index formulas that may
/// step below zero.
pub fn binomial_i(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 {
        return 0;
    }
    binomial(n as u64, k as u64)
}

/// All `k`-subsets of `[1..=n]` in lexicographic order.
pub fn k_subsets(n: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(binomial(u64::from(n), k as u64) as usize);
    if k > n as usize {
        return out;
    }
    let mut cur: Vec<u32> = (1..=k as u32).collect();
    loop {
        out.push(cur.clone());
        // rightmost position that can still advance
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - (k - 1 - i) as u32) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Position of the sorted subset `set` of `[1..=n]` in the lexicographic
/// listing of all subsets of the same size.
pub fn lex_rank(n: u32, set: &[u32]) -> usize {
    let m = set.len();
    let mut rank = 0u64;
    let mut prev = 0u32;
    for (i, &c) in set.iter().enumerate() {
        for j in prev + 1..c {
            rank += binomial(u64::from(n - j), (m - i - 1) as u64);
        }
        prev = c;
    }
    rank as usize
}

/// Calls `visit` once for every permutation of `0..n` (Heap's algorithm).
/// Stops early when `visit` returns `false`.
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    if !visit(&perm) {
        return;
    }
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if !visit(&perm) {
                return;
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(24, 12), 2_704_156);
        assert_eq!(binomial_i(3, -1), 0);
    }

    #[test]
    fn subsets_are_lex_ordered_and_ranked() {
        let subs = k_subsets(5, 3);
        assert_eq!(subs.len(), 10);
        assert_eq!(subs[0], vec![1, 2, 3]);
        assert_eq!(subs[9], vec![3, 4, 5]);
        for (i, s) in subs.iter().enumerate() {
            assert_eq!(lex_rank(5, s), i);
        }
        assert_eq!(k_subsets(3, 0), vec![Vec::<u32>::new()]);
        assert!(k_subsets(2, 3).is_empty());
    }

    #[test]
    fn heap_visits_every_permutation_once() {
        let mut seen = std::collections::HashSet::new();
        for_each_permutation(5, |p| {
            assert!(seen.insert(p.to_vec()));
            true
        });
        assert_eq!(seen.len(), 120);
        let mut count = 0;
        for_each_permutation(0, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }
}
