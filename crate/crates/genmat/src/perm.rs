//! Permutation enumeration with signs.
//!
//! The n-fold product structures are signed sums over all orderings of their
//! arguments, so every module downstream needs the full symmetric group with
//! parities. Sizes stay tiny (n <= 6), hence a plain precomputed list.

/// All permutations of `0..n` together with their signs, in a deterministic
/// order (lexicographic).
pub fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push((items.clone(), parity(&items)));
        if !next_lexicographic(&mut items) {
            break;
        }
    }
    out
}

/// Sign of a sequence of distinct values relative to ascending order:
/// +1 for even, -1 for odd. Counting inversions is fine at these sizes.
pub fn parity(seq: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in (i + 1)..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn next_lexicographic(items: &mut [usize]) -> bool {
    let n = items.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// Iterate over all index tuples (1-based, length `rank`, entries 1..=dim),
/// row-major: the last position runs fastest.
pub fn for_each_tuple(rank: usize, dim: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![1usize; rank];
    loop {
        f(&idx);
        let mut pos = rank;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if idx[pos] < dim {
                idx[pos] += 1;
                break;
            }
            idx[pos] = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_for_three_elements() {
        let perms = permutations_with_sign(3);
        assert_eq!(perms.len(), 6);
        let lookup: Vec<(Vec<usize>, i32)> = vec![
            (vec![0, 1, 2], 1),
            (vec![0, 2, 1], -1),
            (vec![1, 0, 2], -1),
            (vec![1, 2, 0], 1),
            (vec![2, 0, 1], 1),
            (vec![2, 1, 0], -1),
        ];
        assert_eq!(perms, lookup);
    }

    #[test]
    fn parity_counts_inversions() {
        assert_eq!(parity(&[0, 1, 2, 3]), 1);
        assert_eq!(parity(&[1, 0, 2, 3]), -1);
        assert_eq!(parity(&[3, 2, 1, 0]), 1);
        assert_eq!(parity(&[2, 0, 1]), 1);
    }

    #[test]
    fn tuple_enumeration_is_row_major() {
        let mut seen = Vec::new();
        for_each_tuple(2, 2, |t| seen.push(t.to_vec()));
        assert_eq!(
            seen,
            vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]
        );
    }

    #[test]
    fn permutation_count_is_factorial() {
        for n in 1..=5 {
            let expected: usize = (1..=n).product();
            assert_eq!(permutations_with_sign(n).len(), expected);
        }
    }
}
