//! Suffix jumps: from a known occurrence of `Q[t..q_t)`, find the locus of
//! `Q[i..q_t)` among the sampled suffixes without re-reading the pattern.
//! A binary search over sorted sampled suffixes handles long patterns; a
//! dictionary over sampled short prefixes shrinks the search for short ones.

use std::collections::HashMap;

use crate::counters::Counters;
use crate::lcp::{lcp_shifted, order_from_lcp};
use crate::packed::PackedSeq;
use crate::sst::{Locus, SampledSuffixTree};
use crate::text::TextModel;

const NONE: u32 = u32::MAX;

/// Binary search the ranks `range.0..=range.1` for the sampled suffix with
/// the longest common prefix with `T[x..]`. The returned locus spells
/// `T[x..x+len)` with `len <= target`; `len < target` means `T[x..x+target)`
/// prefixes no sampled suffix.
pub fn jump_binary(
    tm: &TextModel,
    sst: &SampledSuffixTree,
    x: usize,
    target: usize,
    range: (u32, u32),
    ctr: &mut Counters,
) -> Locus {
    ctr.jumps += 1;
    if target == 0 || sst.leaves() == 0 {
        return sst.root_locus();
    }
    let order = sst.leaf_order();
    let (lo, hi) = (range.0 as usize, range.1 as usize);
    let mut eval = |rank: usize| {
        ctr.shifted_lcp_evals += 1;
        lcp_shifted(tm, sst, x, order[rank] as usize)
    };
    let (mut a, mut b) = (lo, hi + 1);
    while a < b {
        let mid = a + (b - a) / 2;
        let y = order[mid] as usize;
        let l = eval(mid);
        if order_from_lcp(tm, y, x, l).is_lt() {
            a = mid + 1;
        } else {
            b = mid;
        }
    }
    let mut best = (0usize, NONE);
    if a > lo {
        best = (eval(a - 1), (a - 1) as u32);
    }
    if a <= hi {
        let l = eval(a);
        if best.1 == NONE || l > best.0 {
            best = (l, a as u32);
        }
    }
    let len = best.0.min(target);
    if len == 0 {
        return sst.root_locus();
    }
    let (s1, s2) = sst.prefix_range(tm, best.1, len, &mut ctr.boundary_lcp_evals);
    sst.locus_from_range(s1, s2, len)
}

/// Dictionaries over the set X of short strings: every prefix (up to
/// `max_len`) of every `period`-th sorted sampled suffix (the subset X0),
/// plus each of those with up to `4r+3` leading symbols trimmed.
/// Names are preorder ranks in the trie of X, so name order is string order.
#[derive(Clone, Debug)]
pub struct ShortJumpTables {
    period: usize,
    max_len: usize,
    trim_count: usize,
    width: u32,
    meta: usize,
    parent: Vec<u32>,
    sym: Vec<u32>,
    len: Vec<u32>,
    /// Longest prefix that belongs to X0.
    x0_prefix: Vec<u32>,
    /// `trims[x * trim_count + j - 1]` names `x[j..]`, or NONE.
    trims: Vec<u32>,
    /// Leaf range in the sampled tree for members of X0.
    x0_range: Vec<(u32, u32)>,
    /// (name, |alpha|, alpha) -> name of the extension.
    dp: HashMap<(u32, u8, u64), u32>,
}

/// Sampled-rank gaps and prefix length used when not configured.
pub fn default_period(selected: usize) -> usize {
    64.max(selected.div_ceil(64))
}

pub fn default_max_len(r: u32) -> usize {
    256.max(8 * (4 * r as usize + 4))
}

impl ShortJumpTables {
    pub fn build(tm: &TextModel, sst: &SampledSuffixTree, period: usize, max_len: usize) -> Self {
        assert!(period >= 1);
        let n = tm.len();
        let trim_count = tm.cover().max_gap() as usize;
        let order = sst.leaf_order();
        let samples: Vec<u32> = (0..order.len()).step_by(period).map(|k| k as u32).collect();

        // raw trie, insertion ids
        let mut children: HashMap<(u32, u32), u32> = HashMap::new();
        let mut raw_parent = vec![NONE];
        let mut raw_sym = vec![0u32];
        let mut raw_x0 = vec![true];
        for &k in &samples {
            let p = order[k as usize] as usize;
            let end = p + max_len.min(n - p);
            for j in 0..=trim_count {
                let mut x = 0u32;
                for pos in (p + j)..end {
                    let c = tm.sym(pos);
                    x = match children.get(&(x, c)) {
                        Some(&y) => y,
                        None => {
                            let y = raw_parent.len() as u32;
                            raw_parent.push(x);
                            raw_sym.push(c);
                            raw_x0.push(false);
                            children.insert((x, c), y);
                            y
                        }
                    };
                    if j == 0 {
                        raw_x0[x as usize] = true;
                    }
                }
            }
        }
        let total = raw_parent.len();

        // preorder renumbering with children in symbol order
        let mut edges: Vec<(u32, u32, u32)> = children.iter().map(|(&(x, c), &y)| (x, c, y)).collect();
        drop(children);
        edges.sort_unstable();
        let mut start = vec![0usize; total + 1];
        for &(x, _, _) in &edges {
            start[x as usize + 1] += 1;
        }
        for i in 0..total {
            start[i + 1] += start[i];
        }
        let mut new_id = vec![0u32; total];
        let mut next = 0u32;
        let mut dfs = vec![0u32];
        while let Some(x) = dfs.pop() {
            new_id[x as usize] = next;
            next += 1;
            for e in edges[start[x as usize]..start[x as usize + 1]].iter().rev() {
                dfs.push(e.2);
            }
        }
        let mut parent = vec![NONE; total];
        let mut sym = vec![0u32; total];
        let mut is_x0 = vec![false; total];
        for old in 0..total {
            let id = new_id[old] as usize;
            parent[id] = if old == 0 { NONE } else { new_id[raw_parent[old] as usize] };
            sym[id] = raw_sym[old];
            is_x0[id] = raw_x0[old];
        }
        drop((raw_parent, raw_sym, raw_x0, new_id, edges, start));

        let width = tm.seq().width();
        let meta = tm.meta_width();
        Self::assemble(period, max_len, trim_count, width, meta, parent, sym, &is_x0, |child_of| {
            // leaf ranges of X0 members, walking each sample's own path
            let mut x0_range = vec![(NONE, NONE); total];
            x0_range[0] = (0, order.len() as u32 - 1);
            let mut evals = 0u64;
            for &k in &samples {
                let p = order[k as usize] as usize;
                let end = p + max_len.min(n - p);
                let mut x = 0u32;
                for pos in p..end {
                    x = child_of[&(x, tm.sym(pos))];
                    if x0_range[x as usize].0 == NONE {
                        x0_range[x as usize] = sst.prefix_range(tm, k, pos + 1 - p, &mut evals);
                    }
                }
            }
            x0_range
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        period: usize,
        max_len: usize,
        trim_count: usize,
        width: u32,
        meta: usize,
        parent: Vec<u32>,
        sym: Vec<u32>,
        is_x0: &[bool],
        ranges: impl FnOnce(&HashMap<(u32, u32), u32>) -> Vec<(u32, u32)>,
    ) -> Self {
        let total = parent.len();
        // parents precede children in preorder
        let mut len = vec![0u32; total];
        let mut x0_prefix = vec![0u32; total];
        for id in 1..total {
            let p = parent[id] as usize;
            len[id] = len[p] + 1;
            x0_prefix[id] = if is_x0[id] { id as u32 } else { x0_prefix[p] };
        }
        let mut child_of: HashMap<(u32, u32), u32> = HashMap::with_capacity(total);
        for id in 1..total {
            child_of.insert((parent[id], sym[id]), id as u32);
        }
        let mut trims = vec![NONE; total * trim_count];
        for id in 1..total {
            let p = parent[id] as usize;
            for j in 1..=trim_count {
                let v = match (len[id] as usize).cmp(&j) {
                    std::cmp::Ordering::Less => NONE,
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Greater => {
                        let t = trims[p * trim_count + j - 1];
                        if t == NONE {
                            NONE
                        } else {
                            child_of.get(&(t, sym[id])).copied().unwrap_or(NONE)
                        }
                    }
                };
                trims[id * trim_count + j - 1] = v;
            }
        }

        let x0_range = ranges(&child_of);
        drop(child_of);

        let mut dp = HashMap::with_capacity(total * meta.min(8));
        for id in 1..total {
            let mut alpha = 0u64;
            let mut y = id as u32;
            for d in 1..=meta {
                alpha |= (sym[y as usize] as u64) << ((d - 1) as u32 * width);
                y = parent[y as usize];
                dp.insert((y, d as u8, alpha), id as u32);
                if y == 0 {
                    break;
                }
            }
        }

        Self { period, max_len, trim_count, width, meta, parent, sym, len, x0_prefix, trims, x0_range, dp }
    }

    /// Rebuild from the stored trie; derived maps are recomputed.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        period: usize,
        max_len: usize,
        trim_count: usize,
        width: u32,
        meta: usize,
        parent: Vec<u32>,
        sym: Vec<u32>,
        is_x0: &[bool],
        x0_range: Vec<(u32, u32)>,
    ) -> Self {
        Self::assemble(period, max_len, trim_count, width, meta, parent, sym, is_x0, |_| x0_range)
    }

    pub(crate) fn trie_parts(&self) -> (&[u32], &[u32], &[(u32, u32)]) {
        (&self.parent, &self.sym, &self.x0_range)
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn names(&self) -> usize {
        self.len.len()
    }

    pub fn name_len(&self, x: u32) -> usize {
        self.len[x as usize] as usize
    }

    pub fn is_x0(&self, x: u32) -> bool {
        self.x0_prefix[x as usize] == x
    }

    pub fn x0_prefix(&self, x: u32) -> u32 {
        self.x0_prefix[x as usize]
    }

    pub fn trim(&self, x: u32, j: usize) -> Option<u32> {
        if j == 0 {
            return Some(x);
        }
        let t = self.trims[x as usize * self.trim_count + j - 1];
        (t != NONE).then_some(t)
    }

    pub fn x0_range(&self, x: u32) -> Option<(u32, u32)> {
        let r = self.x0_range[x as usize];
        (r.0 != NONE).then_some(r)
    }

    /// Shifted symbols of the string named `x`.
    pub fn spell(&self, x: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.name_len(x));
        let mut y = x;
        while y != 0 {
            out.push(self.sym[y as usize]);
            y = self.parent[y as usize];
        }
        out.reverse();
        out
    }

    /// Name of `x` extended by the `d` symbols of `alpha` (right-aligned).
    pub fn extend_by(&self, x: u32, d: usize, alpha: u64) -> Option<u32> {
        if d == 0 {
            return Some(x);
        }
        self.dp.get(&(x, d as u8, alpha)).copied()
    }

    /// Longest extension of `x` (spelling `pat[at..at+|x|)`) along `pat`
    /// that stays in X.
    fn extend(&self, pat: &PackedSeq, at: usize, mut x: u32) -> u32 {
        let q = pat.len();
        loop {
            let cur = at + self.name_len(x);
            let rem = q - cur;
            if rem >= self.meta {
                if let Some(y) = self.extend_by(x, self.meta, pat.chunk(cur, self.meta)) {
                    x = y;
                    continue;
                }
            }
            // prefix-closed, so existence is monotone in the chunk length
            let (mut lo, mut hi) = (0usize, rem.min(self.meta - 1));
            while lo < hi {
                let mid = lo + (hi - lo).div_ceil(2);
                if self.extend_by(x, mid, pat.chunk(cur, mid)).is_some() {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            return self.extend_by(x, lo, pat.chunk(cur, lo)).unwrap();
        }
    }

    /// For every shift `i < 4r+3` (and `i < |pat|`), the name and length of
    /// the longest prefix of `pat[i..]` belonging to X0.
    pub fn find_x0_prefixes(&self, pat: &PackedSeq) -> Vec<(u32, usize)> {
        debug_assert_eq!(pat.width(), self.width);
        let shifts = self.trim_count.min(pat.len());
        let mut out: Vec<(u32, usize)> = Vec::with_capacity(shifts);
        for i in 0..shifts {
            let mut start = 0u32;
            if let Some((t, &(x, p))) = out.iter().enumerate().max_by_key(|(t, &(_, p))| (t + p, usize::MAX - t)) {
                if t + p >= i {
                    start = self.trim(x, i - t).unwrap_or(0);
                }
            }
            let g = self.extend(pat, i, start);
            let x = self.x0_prefix(g);
            out.push((x, self.name_len(x)));
        }
        out
    }

    pub fn size_bits(&self) -> u64 {
        let per_node = 32 * 4 + 64 + 32 * self.trim_count as u64;
        self.len.len() as u64 * per_node + self.dp.capacity() as u64 * 24 * 8
    }
}

/// Jump for `Q[i..i+target)` occurring at text position `x`, given the
/// longest X0 prefix `(name, p)` of `Q[i..]`.
#[allow(clippy::too_many_arguments)]
pub fn jump_short(
    tables: &ShortJumpTables,
    tm: &TextModel,
    sst: &SampledSuffixTree,
    pat: &PackedSeq,
    i: usize,
    x0: (u32, usize),
    x: usize,
    target: usize,
    ctr: &mut Counters,
) -> Locus {
    let (name, p) = x0;
    if target == 0 {
        return sst.root_locus();
    }
    let (lo, hi) = tables.x0_range(name).expect("X0 member has a leaf range");
    if p >= target {
        let (a, b) = sst.prefix_range(tm, lo, target, &mut ctr.boundary_lcp_evals);
        return sst.locus_from_range(a, b, target);
    }
    let loc = if p == 0 { sst.root_locus() } else { sst.locus_from_range(lo, hi, p) };
    match sst.narrow(tm, &loc, pat.get(i + p)) {
        None => loc,
        Some((a, b)) => {
            ctr.restricted_searches += 1;
            ctr.max_restricted_leaves = ctr.max_restricted_leaves.max((b - a + 1) as u64);
            jump_binary(tm, sst, x, target, (a, b), ctr)
        }
    }
}
