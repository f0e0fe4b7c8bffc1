//! Constant-time LCP between an arbitrary suffix and a sampled suffix, via
//! the difference-cover shift to a pair of selected positions.

use std::cmp::Ordering;

use crate::sst::SampledSuffixTree;
use crate::text::TextModel;

/// LCP of `T[x..]` and `T[y..]` for arbitrary text positions.
#[inline]
pub fn lcp_shifted(tm: &TextModel, sst: &SampledSuffixTree, x: usize, y: usize) -> usize {
    let n = tm.len();
    if x >= n || y >= n {
        return 0;
    }
    if x == y {
        return n - x;
    }
    let s = tm.block();
    let delta = tm.cover().h((x % s) as u32, (y % s) as u32) as usize;
    let head = tm.word_lcp(x, y, delta);
    if head < delta {
        return head;
    }
    let (xs, ys) = (x + delta, y + delta);
    if xs >= n || ys >= n {
        return delta;
    }
    // both shifted positions are selected by construction of h
    let a = sst.rank_of(tm, xs).expect("shifted position is selected");
    let b = sst.rank_of(tm, ys).expect("shifted position is selected");
    delta + sst.leaf_lcp(tm, a, b)
}

/// Order of `T[x..]` against `T[y..]` given their LCP `l`.
#[inline]
pub fn order_from_lcp(tm: &TextModel, x: usize, y: usize, l: usize) -> Ordering {
    let n = tm.len();
    match (x + l >= n, y + l >= n) {
        (true, true) => y.cmp(&x),
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (false, false) => tm.sym(x + l).cmp(&tm.sym(y + l)),
    }
}
