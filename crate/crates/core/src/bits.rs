//! Subsets of a ground set of at most 64 elements, stored as bit masks.

pub type IndexSet = u64;

pub const MAX_GROUND: usize = 64;

pub fn singleton(i: usize) -> IndexSet {
    1u64 << i
}

pub fn full(n: usize) -> IndexSet {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn from_indices(idx: impl IntoIterator<Item = usize>) -> IndexSet {
    idx.into_iter().fold(0, |m, i| m | singleton(i))
}

pub fn len(s: IndexSet) -> usize {
    s.count_ones() as usize
}

pub fn contains(s: IndexSet, i: usize) -> bool {
    s >> i & 1 == 1
}

pub fn is_subset(a: IndexSet, b: IndexSet) -> bool {
    a & !b == 0
}

/// Smallest element; `None` for the empty set.
pub fn min(s: IndexSet) -> Option<usize> {
    (s != 0).then(|| s.trailing_zeros() as usize)
}

pub fn max(s: IndexSet) -> Option<usize> {
    (s != 0).then(|| 63 - s.leading_zeros() as usize)
}

/// Elements in increasing order.
pub fn iter(s: IndexSet) -> impl Iterator<Item = usize> {
    let mut rest = s;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(i)
    })
}

pub fn to_vec(s: IndexSet) -> Vec<usize> {
    iter(s).collect()
}

/// All `k`-subsets of `ground`, lexicographic in their sorted elements.
pub fn subsets_of_size(ground: IndexSet, k: usize) -> Vec<IndexSet> {
    let elems = to_vec(ground);
    let m = elems.len();
    if k > m {
        return Vec::new();
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    loop {
        out.push(from_indices(idx.iter().map(|&i| elems[i])));
        let mut j = k;
        while j > 0 && idx[j - 1] == m - k + j - 1 {
            j -= 1;
        }
        if j == 0 {
            return out;
        }
        idx[j - 1] += 1;
        for t in j..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// Render as `{1,2,5}` with 1-based indices.
pub fn display(s: IndexSet) -> String {
    let parts: Vec<String> = iter(s).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}
