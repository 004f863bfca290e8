//! Small combinatorial helpers: exact binomials and in-place lexicographic
//! combination stepping.

/// Exact binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// First combination of `k` elements: `[0, 1, .., k-1]`.
pub fn first_combination(k: usize) -> Vec<usize> {
    (0..k).collect()
}

/// Advance `comb` (strictly increasing indices below `n`) to the next
/// combination in lexicographic order. Returns `false` once exhausted,
/// leaving `comb` unspecified.
pub fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Visit every `k`-subset of `0..n` in lexicographic order. The visitor
/// returns `false` to stop early.
pub fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut comb = first_combination(k);
    loop {
        if !visit(&comb) {
            return;
        }
        if !next_combination(&mut comb, n) {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), Some(6));
        assert_eq!(binomial(0, 0), Some(1));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(12, 3), Some(220));
        assert_eq!(binomial(64, 32), Some(1_832_624_140_942_590_534));
    }

    #[test]
    fn lexicographic_pairs() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| {
            seen.push(c.to_vec());
            true
        });
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }

    #[test]
    fn empty_combination_visited_once() {
        let mut count = 0;
        for_each_combination(3, 0, |c| {
            assert!(c.is_empty());
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn counts_match_binomial() {
        for n in 0..9 {
            for k in 0..=n {
                let mut count = 0u128;
                for_each_combination(n, k, |_| {
                    count += 1;
                    true
                });
                assert_eq!(Some(count), binomial(n as u64, k as u64));
            }
        }
    }
}
