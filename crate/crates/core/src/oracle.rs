//! Brute-force reference implementations used to cross-check the index.

use std::cmp::Ordering;

/// All starting positions of `pat` in `text`, ascending.
pub fn naive_search(text: &[u32], pat: &[u32]) -> Vec<usize> {
    if pat.is_empty() || pat.len() > text.len() {
        return Vec::new();
    }
    text.windows(pat.len()).enumerate().filter(|(_, w)| *w == pat).map(|(i, _)| i).collect()
}

/// Independent matcher (explicit symbol loop) used to validate `naive_search`.
pub fn naive_search_loop(text: &[u32], pat: &[u32]) -> Vec<usize> {
    let mut out = Vec::new();
    if pat.is_empty() {
        return out;
    }
    let mut i = 0;
    while i + pat.len() <= text.len() {
        let mut j = 0;
        while j < pat.len() && text[i + j] == pat[j] {
            j += 1;
        }
        if j == pat.len() {
            out.push(i);
        }
        i += 1;
    }
    out
}

pub fn naive_lcp(text: &[u32], a: usize, b: usize) -> usize {
    if a >= text.len() || b >= text.len() {
        return 0;
    }
    text[a..].iter().zip(&text[b..]).take_while(|(x, y)| x == y).count()
}

pub fn suffix_cmp(text: &[u32], a: usize, b: usize) -> Ordering {
    text[a.min(text.len())..].cmp(&text[b.min(text.len())..])
}

/// Sort text positions by their suffixes.
pub fn naive_suffix_sort(text: &[u32], positions: &[u32]) -> Vec<u32> {
    let mut v = positions.to_vec();
    v.sort_by(|&a, &b| suffix_cmp(text, a as usize, b as usize));
    v
}

/// Longest common prefix of `pat` with any suffix starting at `positions`.
pub fn naive_max_lcp(text: &[u32], positions: &[u32], pat: &[u32]) -> usize {
    positions
        .iter()
        .map(|&p| {
            let p = p as usize;
            text[p..].iter().zip(pat).take_while(|(x, y)| x == y).count()
        })
        .max()
        .unwrap_or(0)
}

/// Positions among `positions` whose suffix starts with `pat`, sorted.
pub fn naive_prefix_matches(text: &[u32], positions: &[u32], pat: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = positions.iter().copied().filter(|&p| text[p as usize..].starts_with(pat)).collect();
    v.sort_unstable();
    v
}
