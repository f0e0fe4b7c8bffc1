//! Sampled suffix tree over the selected suffixes, compacted on meta-symbol
//! boundaries, with constant-time child lookup and LCA.

use std::collections::HashMap;

use crate::counters::Counters;
use crate::packed::PackedSeq;
use crate::par;
use crate::rmq::BlockRmq;
use crate::sais;
use crate::text::TextModel;

pub const NO_NODE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Node {
    pub parent: u32,
    /// String depth in symbols. Leaves count the end marker, so a leaf for
    /// position p has depth n - p + 1.
    pub depth: u32,
    pub lo: u32,
    pub hi: u32,
    pub child_start: u32,
    pub child_end: u32,
}

impl Node {
    pub fn is_leaf(&self) -> bool {
        self.child_start == self.child_end
    }
}

/// A position in the tree: the string of length `len` spelled on the way to
/// `node`, optionally continued into children `children.0..=children.1`
/// (absolute indices into the child arrays). `lo..=hi` are the leaf ranks
/// below the locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Locus {
    pub node: u32,
    pub children: Option<(u32, u32)>,
    pub len: usize,
    pub lo: u32,
    pub hi: u32,
}

impl Locus {
    pub fn count(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }
}

#[derive(Clone, Debug)]
pub struct SampledSuffixTree {
    leaf_order: Vec<u32>,
    rank_of: Vec<u32>,
    nodes: Vec<Node>,
    child_ids: Vec<u32>,
    child_keys: Vec<u64>,
    leaf_node: Vec<u32>,
    child_map: HashMap<(u32, u64), u32>,
    euler_first: Vec<u32>,
    euler_nodes: Vec<u32>,
    rmq: BlockRmq,
}

struct Tmp {
    depth: u32,
    leaf: Option<u32>,
    children: Vec<u32>,
}

impl SampledSuffixTree {
    pub fn build(tm: &TextModel) -> Self {
        let (leaf_order, lcp) = sort_selected(tm);
        Self::from_sorted(tm, leaf_order, &lcp)
    }

    /// Build from the sorted selected positions and the symbol LCPs of
    /// neighbours (`lcp[k]` between ranks k-1 and k; `lcp[0]` unused).
    pub(crate) fn from_sorted(tm: &TextModel, leaf_order: Vec<u32>, lcp: &[u32]) -> Self {
        let n = tm.len();
        let m = tm.meta_width() as u32;
        let count = leaf_order.len();

        let mut tmp: Vec<Tmp> = vec![Tmp { depth: 0, leaf: None, children: Vec::new() }];
        let mut stack: Vec<u32> = vec![0];
        for k in 0..count {
            if k > 0 {
                let d = lcp[k] / m * m;
                let mut last = NO_NODE;
                while tmp[*stack.last().unwrap() as usize].depth > d {
                    last = stack.pop().unwrap();
                }
                let top = *stack.last().unwrap() as usize;
                if tmp[top].depth < d {
                    let w = tmp.len() as u32;
                    let popped = tmp[top].children.pop();
                    debug_assert_eq!(popped, Some(last));
                    tmp[top].children.push(w);
                    tmp.push(Tmp { depth: d, leaf: None, children: vec![last] });
                    stack.push(w);
                }
            }
            let p = leaf_order[k] as usize;
            let leaf = tmp.len() as u32;
            let top = *stack.last().unwrap() as usize;
            tmp[top].children.push(leaf);
            tmp.push(Tmp { depth: (n - p + 1) as u32, leaf: Some(k as u32), children: Vec::new() });
            stack.push(leaf);
        }

        // preorder renumbering
        let mut nodes = vec![Node { parent: NO_NODE, depth: 0, lo: 0, hi: 0, child_start: 0, child_end: 0 }; tmp.len()];
        let mut child_ids = Vec::with_capacity(tmp.len().saturating_sub(1));
        let mut child_keys = Vec::with_capacity(tmp.len().saturating_sub(1));
        let mut leaf_node = vec![0u32; count];
        let mut new_id = vec![0u32; tmp.len()];
        let mut order = Vec::with_capacity(tmp.len());
        let mut dfs = vec![(0u32, NO_NODE)];
        while let Some((old, parent)) = dfs.pop() {
            let id = order.len() as u32;
            new_id[old as usize] = id;
            order.push(old);
            nodes[id as usize].parent = parent;
            nodes[id as usize].depth = tmp[old as usize].depth;
            for &c in tmp[old as usize].children.iter().rev() {
                dfs.push((c, id));
            }
        }
        // leaf ranges bottom-up (reverse preorder), children contiguous
        for id in (0..order.len()).rev() {
            let t = &tmp[order[id] as usize];
            if let Some(rank) = t.leaf {
                nodes[id].lo = rank;
                nodes[id].hi = rank;
                leaf_node[rank as usize] = id as u32;
            } else if !t.children.is_empty() {
                let first = new_id[t.children[0] as usize] as usize;
                let last = new_id[*t.children.last().unwrap() as usize] as usize;
                nodes[id].lo = nodes[first].lo;
                nodes[id].hi = nodes[last].hi;
            }
        }
        for id in 0..order.len() {
            let t = &tmp[order[id] as usize];
            let start = child_ids.len() as u32;
            let d = nodes[id].depth as usize;
            for &c in &t.children {
                let cid = new_id[c as usize];
                child_ids.push(cid);
                let p = leaf_order[nodes[cid as usize].lo as usize] as usize;
                child_keys.push(tm.meta_at(p + d));
            }
            nodes[id].child_start = start;
            nodes[id].child_end = child_ids.len() as u32;
            debug_assert!(child_keys[start as usize..].windows(2).all(|w| w[0] < w[1]));
        }
        drop(tmp);

        let mut child_map = HashMap::with_capacity(child_ids.len());
        for (id, node) in nodes.iter().enumerate() {
            for ci in node.child_start..node.child_end {
                child_map.insert((id as u32, child_keys[ci as usize]), ci);
            }
        }

        // Euler tour over string depths
        let mut euler_first = vec![0u32; nodes.len()];
        let mut euler_nodes = Vec::with_capacity(2 * nodes.len());
        let mut walk: Vec<(u32, u32)> = vec![(0, nodes[0].child_start)];
        euler_first[0] = 0;
        euler_nodes.push(0);
        while let Some(&mut (u, ref mut next)) = walk.last_mut() {
            let node = nodes[u as usize];
            if *next < node.child_end {
                let c = child_ids[*next as usize];
                *next += 1;
                euler_first[c as usize] = euler_nodes.len() as u32;
                euler_nodes.push(c);
                walk.push((c, nodes[c as usize].child_start));
            } else {
                walk.pop();
                if let Some(&(p, _)) = walk.last() {
                    euler_nodes.push(p);
                }
            }
        }
        let rmq = BlockRmq::new(euler_nodes.iter().map(|&u| nodes[u as usize].depth).collect());

        let mut rank_of = vec![0u32; count];
        for (rank, &p) in leaf_order.iter().enumerate() {
            rank_of[tm.selected_index(p as usize).unwrap()] = rank as u32;
        }

        Self { leaf_order, rank_of, nodes, child_ids, child_keys, leaf_node, child_map, euler_first, euler_nodes, rmq }
    }

    pub fn leaf_order(&self) -> &[u32] {
        &self.leaf_order
    }

    pub fn leaves(&self) -> usize {
        self.leaf_order.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, u: u32) -> &Node {
        &self.nodes[u as usize]
    }

    pub fn child_ids(&self) -> &[u32] {
        &self.child_ids
    }

    pub fn child_keys(&self) -> &[u64] {
        &self.child_keys
    }

    /// Rank of the selected position `pos` among the sorted selected suffixes.
    #[inline]
    pub fn rank_of(&self, tm: &TextModel, pos: usize) -> Option<u32> {
        tm.selected_index(pos).map(|k| self.rank_of[k])
    }

    pub fn leaf_node(&self, rank: u32) -> u32 {
        self.leaf_node[rank as usize]
    }

    pub fn child(&self, u: u32, key: u64) -> Option<u32> {
        self.child_map.get(&(u, key)).copied()
    }

    pub fn lca(&self, u: u32, v: u32) -> u32 {
        let (mut a, mut b) = (self.euler_first[u as usize], self.euler_first[v as usize]);
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        self.euler_nodes[self.rmq.argmin(a as usize, b as usize)]
    }

    /// LCP of the sampled suffixes with ranks `a` and `b`.
    pub fn leaf_lcp(&self, tm: &TextModel, a: u32, b: u32) -> usize {
        let (pa, pb) = (self.leaf_order[a as usize] as usize, self.leaf_order[b as usize] as usize);
        if a == b {
            return tm.len() - pa;
        }
        let w = self.lca(self.leaf_node[a as usize], self.leaf_node[b as usize]);
        let d = self.nodes[w as usize].depth as usize;
        d + tm.word_lcp(pa + d, pb + d, tm.meta_width())
    }

    /// Ranks sharing at least `len` symbols with the sampled suffix of rank `k`.
    /// `evals` is incremented once per LCP evaluation.
    pub fn prefix_range(&self, tm: &TextModel, k: u32, len: usize, evals: &mut u64) -> (u32, u32) {
        let mut ok = |other: u32| {
            *evals += 1;
            self.leaf_lcp(tm, k, other) >= len
        };
        // leftwards
        let mut good = k;
        let mut bad: i64 = -1;
        let mut step = 1u32;
        while let Some(p) = k.checked_sub(step) {
            if ok(p) {
                good = p;
                step = step.saturating_mul(2);
            } else {
                bad = p as i64;
                break;
            }
        }
        let (mut l, mut h) = ((bad + 1) as u32, good);
        while l < h {
            let mid = l + (h - l) / 2;
            if ok(mid) {
                h = mid;
            } else {
                l = mid + 1;
            }
        }
        let lo = l;
        // rightwards
        let last = self.leaves() as u32 - 1;
        let mut good = k;
        let mut bad = last as u64 + 1;
        let mut step = 1u32;
        while (k as u64 + step as u64) <= last as u64 {
            let p = k + step;
            if ok(p) {
                good = p;
                step = step.saturating_mul(2);
            } else {
                bad = p as u64;
                break;
            }
        }
        let (mut l, mut h) = (good, (bad - 1) as u32);
        while l < h {
            let mid = l + (h - l).div_ceil(2);
            if ok(mid) {
                l = mid;
            } else {
                h = mid - 1;
            }
        }
        (lo, l)
    }

    pub fn root_locus(&self) -> Locus {
        Locus { node: 0, children: None, len: 0, lo: 0, hi: self.nodes[0].hi }
    }

    /// Child index (absolute) of `u` whose leaf range contains `rank`.
    fn child_containing(&self, u: u32, rank: u32) -> u32 {
        let n = &self.nodes[u as usize];
        let ids = &self.child_ids[n.child_start as usize..n.child_end as usize];
        let i = ids.partition_point(|&c| self.nodes[c as usize].hi < rank);
        n.child_start + i as u32
    }

    /// Canonical locus of the string of length `len` shared by the leaves
    /// `a..=b` (and exactly those leaves).
    pub fn locus_from_range(&self, a: u32, b: u32, len: usize) -> Locus {
        if len == 0 {
            return self.root_locus();
        }
        let w = if a == b {
            self.leaf_node[a as usize]
        } else {
            self.lca(self.leaf_node[a as usize], self.leaf_node[b as usize])
        };
        let dw = self.nodes[w as usize].depth as usize;
        if dw == len {
            Locus { node: w, children: None, len, lo: a, hi: b }
        } else if dw > len {
            let u = self.nodes[w as usize].parent;
            let ci = self.child_containing(u, a);
            Locus { node: u, children: Some((ci, ci)), len, lo: a, hi: b }
        } else {
            let l = self.child_containing(w, a);
            let r = self.child_containing(w, b);
            Locus { node: w, children: Some((l, r)), len, lo: a, hi: b }
        }
    }

    fn locus(&self, u: u32, children: Option<(u32, u32)>, len: usize) -> Locus {
        let (lo, hi) = match children {
            None => (self.nodes[u as usize].lo, self.nodes[u as usize].hi),
            Some((l, r)) => {
                (self.nodes[self.child_ids[l as usize] as usize].lo, self.nodes[self.child_ids[r as usize] as usize].hi)
            }
        };
        Locus { node: u, children, len, lo, hi }
    }

    /// Children of `u` whose key starts with the `k` symbols of `prefix`
    /// (right-aligned), as absolute index bounds `[l, r)`.
    fn key_range(&self, tm: &TextModel, u: u32, prefix: u64, k: usize) -> (usize, usize) {
        let n = &self.nodes[u as usize];
        let keys = &self.child_keys[n.child_start as usize..n.child_end as usize];
        let w = tm.seq().width() as usize;
        let free = ((tm.meta_width() - k) * w) as u32;
        let lo_key = if free >= 64 { 0 } else { prefix << free };
        let hi_key = if free >= 64 { u64::MAX } else { lo_key | ((1u64 << free) - 1) };
        let l = keys.partition_point(|&x| x < lo_key);
        let r = keys.partition_point(|&x| x <= hi_key);
        (n.child_start as usize + l, n.child_start as usize + r)
    }

    /// Longest common prefix, in symbols, of a child key and a `k`-symbol
    /// right-aligned prefix.
    fn key_common(&self, tm: &TextModel, key: u64, prefix: u64, k: usize) -> usize {
        let w = tm.seq().width() as usize;
        let m = tm.meta_width();
        let top = key >> ((m - k) * w);
        let x = top ^ prefix;
        if x == 0 {
            return k;
        }
        let bits = (k * w) as u32;
        let lz = x.leading_zeros() - (64 - bits);
        (lz as usize / w).min(k)
    }

    /// Resolve a final (or failing) chunk of `k` symbols at node `u`.
    fn resolve_partial(&self, tm: &TextModel, u: u32, chunk: u64, k: usize, ctr: &mut Counters) -> Locus {
        ctr.pred_ops += 1;
        let d = self.nodes[u as usize].depth as usize;
        let (l, r) = self.key_range(tm, u, chunk, k);
        if l < r {
            return self.locus(u, Some((l as u32, r as u32 - 1)), d + k);
        }
        // predecessor / successor decide how much of the chunk matches
        let n = &self.nodes[u as usize];
        let mut best = 0;
        if l > n.child_start as usize {
            best = best.max(self.key_common(tm, self.child_keys[l - 1], chunk, k));
        }
        if l < n.child_end as usize {
            best = best.max(self.key_common(tm, self.child_keys[l], chunk, k));
        }
        if best == 0 {
            return self.locus(u, None, d);
        }
        let shorter = chunk >> ((k - best) * tm.seq().width() as usize);
        let (l, r) = self.key_range(tm, u, shorter, best);
        debug_assert!(l < r);
        self.locus(u, Some((l as u32, r as u32 - 1)), d + best)
    }

    /// Validate the edge into child index `ci` of `u` from `from` symbols on.
    /// Returns the node to continue from, or the final locus.
    fn follow_edge(
        &self,
        tm: &TextModel,
        pat: &PackedSeq,
        off: usize,
        u: u32,
        ci: u32,
        from: usize,
    ) -> Result<u32, Locus> {
        let c = self.child_ids[ci as usize];
        let node = &self.nodes[c as usize];
        let p = self.leaf_order[node.lo as usize] as usize;
        let end = if node.is_leaf() { tm.len() - p } else { node.depth as usize };
        let target = end.min(pat.len() - off);
        let matched = if target > from {
            from + PackedSeq::lcp(pat, off + from, tm.seq(), p + from, target - from)
        } else {
            target.min(from)
        };
        if matched == node.depth as usize {
            Ok(c)
        } else {
            Err(self.locus(u, Some((ci, ci)), matched))
        }
    }

    /// Search `pat[off..]` from the root, or resume from a locus whose string
    /// is known to be a prefix of it. The returned locus spells the longest
    /// prefix that prefixes some sampled suffix.
    pub fn descend(
        &self,
        tm: &TextModel,
        pat: &PackedSeq,
        off: usize,
        start: Option<&Locus>,
        ctr: &mut Counters,
    ) -> Locus {
        let q = pat.len() - off;
        let m = tm.meta_width();
        let mut u = 0u32;
        if let Some(s) = start {
            u = s.node;
            if let Some((l, r)) = s.children {
                let du = self.nodes[u as usize].depth as usize;
                if l == r && s.len >= du + m {
                    match self.follow_edge(tm, pat, off, u, l, s.len) {
                        Ok(c) => u = c,
                        Err(loc) => return loc,
                    }
                }
            }
        }
        loop {
            let d = self.nodes[u as usize].depth as usize;
            if d >= q {
                return self.locus(u, None, q);
            }
            let k = m.min(q - d);
            let chunk = pat.chunk(off + d, k);
            if k == m {
                if let Some(ci) = self.child(u, chunk) {
                    ctr.meta_steps += 1;
                    match self.follow_edge(tm, pat, off, u, ci, d + m) {
                        Ok(c) => {
                            u = c;
                            continue;
                        }
                        Err(loc) => return loc,
                    }
                }
            }
            return self.resolve_partial(tm, u, chunk, k, ctr);
        }
    }

    /// Leaves whose suffix continues the locus string with shifted symbol `sym`.
    pub fn narrow(&self, tm: &TextModel, loc: &Locus, sym: u32) -> Option<(u32, u32)> {
        let u = loc.node;
        let d = self.nodes[u as usize].depth as usize;
        let k0 = loc.len - d;
        let m = tm.meta_width();
        if k0 < m {
            let p = self.leaf_order[loc.lo as usize] as usize;
            let w = tm.seq().width() as usize;
            let prefix = (tm.seq().chunk(p + d, k0) << w) | sym as u64;
            let (l, r) = self.key_range(tm, u, prefix, k0 + 1);
            (l < r).then(|| (self.nodes[self.child_ids[l] as usize].lo, self.nodes[self.child_ids[r - 1] as usize].hi))
        } else {
            let p = self.leaf_order[loc.lo as usize] as usize;
            (p + loc.len < tm.len() && tm.sym(p + loc.len) == sym).then_some((loc.lo, loc.hi))
        }
    }

    pub fn size_bits(&self) -> u64 {
        let words32 = self.leaf_order.len()
            + self.rank_of.len()
            + self.nodes.len() * 6
            + self.child_ids.len()
            + self.leaf_node.len()
            + self.euler_first.len()
            + self.euler_nodes.len();
        // hash map entries: key (u32 + u64) and value, padded
        let map = self.child_map.capacity() as u64 * 24 * 8;
        words32 as u64 * 32 + self.child_keys.len() as u64 * 64 + map + self.rmq.size_bits()
    }
}

/// Sort the selected suffixes by naming their s-windows, building the
/// reduced string of names and suffix sorting it. Returns the sorted
/// positions and symbol LCPs between neighbours.
pub(crate) fn sort_selected(tm: &TextModel) -> (Vec<u32>, Vec<u32>) {
    let sel = tm.selected();
    let s = tm.block();
    let n = tm.len();
    let seq = tm.seq();
    let count = sel.len();

    let mut idx: Vec<u32> = (0..count as u32).collect();
    par::sort_unstable_by(&mut idx, |&a, &b| {
        PackedSeq::compare_range(seq, sel[a as usize] as usize, seq, sel[b as usize] as usize, s)
    });
    let mut name = vec![0u32; count];
    let mut next = 1u32;
    for (j, &k) in idx.iter().enumerate() {
        if j > 0 {
            let (a, b) = (sel[idx[j - 1] as usize] as usize, sel[k as usize] as usize);
            if PackedSeq::compare_range(seq, a, seq, b, s) != std::cmp::Ordering::Equal {
                next += 1;
            }
        }
        name[k as usize] = next + 1;
    }

    // reduced string: one run of names per residue, separated by 1, ended by 0
    let residues = tm.cover().residues();
    let blocks = n.div_ceil(s);
    let mut tbar = Vec::with_capacity(count + residues.len() + 1);
    let mut origin = Vec::with_capacity(count + residues.len() + 1);
    for (slot, &a) in residues.iter().enumerate() {
        if slot > 0 {
            tbar.push(1);
            origin.push(u32::MAX);
        }
        for b in 0..blocks {
            let p = b * s + a as usize;
            if p < n {
                tbar.push(name[b * residues.len() + slot]);
                origin.push(p as u32);
            }
        }
    }
    tbar.push(0);
    origin.push(u32::MAX);

    let sa = sais::suffix_array(&tbar, next + 2);
    let name_lcp = sais::lcp_array(&tbar, &sa, 1);
    let first = sa.len() - count;
    debug_assert!(sa[..first].iter().all(|&i| origin[i as usize] == u32::MAX));
    let leaf_order: Vec<u32> = sa[first..].iter().map(|&i| origin[i as usize]).collect();
    let lcp = par::map_range(count, |k| {
        if k == 0 {
            return 0;
        }
        let l = name_lcp[first + k] as usize * s;
        let (p1, p2) = (leaf_order[k - 1] as usize + l, leaf_order[k] as usize + l);
        (l + tm.word_lcp(p1, p2, s)) as u32
    });
    (leaf_order, lcp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn setup(codes: &[u32], sigma: u32, r: u32) -> (TextModel, SampledSuffixTree) {
        let tm = TextModel::build(codes, sigma, Some(r)).unwrap();
        let sst = SampledSuffixTree::build(&tm);
        (tm, sst)
    }

    fn check_all(codes: &[u32], sigma: u32, r: u32, pats: &[Vec<u32>]) {
        let (tm, sst) = setup(codes, sigma, r);
        let sel = tm.selected();
        assert_eq!(sst.leaf_order(), &oracle::naive_suffix_sort(codes, sel)[..]);
        let lo = sst.leaf_order();
        for k in 1..lo.len() {
            let a = (k as u32 - 1, k as u32);
            assert_eq!(sst.leaf_lcp(&tm, a.0, a.1), oracle::naive_lcp(codes, lo[k - 1] as usize, lo[k] as usize));
        }
        for (k, &p) in lo.iter().enumerate() {
            assert_eq!(sst.rank_of(&tm, p as usize), Some(k as u32));
        }
        for pat in pats {
            let packed = tm.pack_pattern(pat).unwrap();
            let mut ctr = Counters::default();
            let loc = sst.descend(&tm, &packed, 0, None, &mut ctr);
            let want = oracle::naive_max_lcp(codes, sel, pat);
            assert_eq!(loc.len, want, "pattern {pat:?}");
            let matches = oracle::naive_prefix_matches(codes, sel, &pat[..want]);
            let mut got: Vec<u32> = (loc.lo..=loc.hi).map(|k| lo[k as usize]).collect();
            got.sort_unstable();
            assert_eq!(got, matches);
            assert_eq!(sst.locus_from_range(loc.lo, loc.hi, loc.len), loc);
            // resume from a shorter prefix locus gives the same answer
            if want > 0 {
                let half = want / 2;
                let h = sst.descend(&tm, &packed, 0, None, &mut ctr);
                let short = sst.prefix_range(&tm, h.lo, half, &mut 0);
                let sl = sst.locus_from_range(short.0, short.1, half);
                assert_eq!(sst.descend(&tm, &packed, 0, Some(&sl), &mut ctr), loc);
            }
            // one-symbol extension
            if want < pat.len() || want == 0 {
                for c in 0..sigma {
                    let mut ext = pat[..want].to_vec();
                    ext.push(c);
                    let m = oracle::naive_prefix_matches(codes, sel, &ext);
                    let got = sst.narrow(&tm, &loc, c + 1);
                    match got {
                        None => assert!(m.is_empty()),
                        Some((a, b)) => {
                            let mut g: Vec<u32> = (a..=b).map(|k| lo[k as usize]).collect();
                            g.sort_unstable();
                            assert_eq!(g, m);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn banana_like() {
        let codes: Vec<u32> = b"abracadabraabracadabracadabra".iter().map(|&c| (c - b'a') as u32 % 4).collect();
        let pats: Vec<Vec<u32>> = (0..codes.len()).map(|i| codes[i..].to_vec()).collect();
        check_all(&codes, 4, 1, &pats);
    }

    #[test]
    fn periodic_text() {
        let codes: Vec<u32> = (0..500).map(|i| (i % 7 == 0) as u32).collect();
        let pats: Vec<Vec<u32>> = (0..40).map(|i| codes[i..i + 60].to_vec()).collect();
        check_all(&codes, 2, 2, &pats);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn random_texts(
            sigma in 2u32..6,
            r in 1u32..3,
            seed in proptest::collection::vec(0u32..1000, 50..400),
            cuts in proptest::collection::vec((0usize..1000, 1usize..80), 1..12),
        ) {
            let codes: Vec<u32> = seed.iter().map(|&x| x % sigma).collect();
            let pats: Vec<Vec<u32>> = cuts
                .iter()
                .map(|&(a, len)| {
                    let a = a % codes.len();
                    let mut p = codes[a..(a + len).min(codes.len())].to_vec();
                    if len % 3 == 0 { p.push((len as u32) % sigma); }
                    p
                })
                .collect();
            check_all(&codes, sigma, r, &pats);
        }
    }
}
