//! Range reporting on a bit-split range tree over y: every node keeps its
//! points in x order, grouped for three-sided queries, and each point can be
//! lifted back to its root position in a bounded number of hops through
//! chunked translation tables.

use std::collections::HashMap;

use crate::bitvec::BitVec;
use crate::rmq::BlockRmq;

const SAMPLE: usize = 32;

#[derive(Clone, Debug)]
struct Level {
    /// In-group rank of each element's key.
    rank: Vec<u8>,
    /// Per group: extreme key rank (for the RMQ) and offset of the extreme.
    group_key: Vec<u64>,
    group_off: Vec<u8>,
    rmq: BlockRmq,
    /// Translation to the target ancestor level.
    up: Vec<u16>,
    c: BitVec,
    target: usize,
    chunk_bits: u32,
    /// Root position of every SAMPLE-th element.
    samples: Vec<u32>,
}

#[derive(Clone, Copy, Debug)]
struct NodeInfo {
    start: u32,
    end: u32,
    zeros: u32,
}

#[derive(Clone, Debug)]
pub struct FastReport {
    height: u32,
    group: usize,
    base: u32,
    ys: Vec<u64>,
    /// `levels[d-1]` is depth d.
    levels: Vec<Level>,
    nodes: HashMap<(u8, u64), NodeInfo>,
}

/// Default group size for `n` text symbols over alphabet `sigma`.
pub fn default_group(n: usize, sigma: u32) -> usize {
    let v = ((n.max(2) as f64).log2() * (sigma.max(2) as f64).log2()).sqrt() / 2.0;
    (v.floor() as usize).clamp(4, 255)
}

impl FastReport {
    /// `ys` are the y-coordinates in x order, each below `2^height`.
    pub fn build(ys: &[u64], height: u32, group: usize, eps: f64) -> Self {
        assert!((1..=64).contains(&height));
        assert!((1..=255).contains(&group));
        assert!(eps > 0.0 && eps < 1.0);
        let t = ys.len();
        let h = height as usize;
        let base = ((height as f64).powf(eps).ceil() as u32).max(2);
        let prefix = |y: u64, d: usize| if d == 0 { 0 } else { y >> (h - d) };

        // order[d] = root indices at depth d, stable within nodes
        let mut order: Vec<Vec<u32>> = Vec::with_capacity(h + 1);
        order.push((0..t as u32).collect());
        for d in 1..=h {
            let prev = &order[d - 1];
            let bit = h - d;
            let mut cur = Vec::with_capacity(t);
            let mut s = 0;
            while s < t {
                let g = prefix(ys[prev[s] as usize], d - 1);
                let mut e = s;
                while e < t && prefix(ys[prev[e] as usize], d - 1) == g {
                    e += 1;
                }
                cur.extend(prev[s..e].iter().filter(|&&i| ys[i as usize] >> bit & 1 == 0));
                cur.extend(prev[s..e].iter().filter(|&&i| ys[i as usize] >> bit & 1 == 1));
                s = e;
            }
            order.push(cur);
        }

        // node extents
        let mut nodes: HashMap<(u8, u64), NodeInfo> = HashMap::new();
        let mut runs: Vec<Vec<(u64, usize, usize)>> = vec![vec![(0, 0, t)]];
        for (d, ord) in order.iter().enumerate().skip(1) {
            let mut level_runs = Vec::new();
            let mut s = 0;
            while s < t {
                let p = prefix(ys[ord[s] as usize], d);
                let mut e = s;
                while e < t && prefix(ys[ord[e] as usize], d) == p {
                    e += 1;
                }
                level_runs.push((p, s, e));
                s = e;
            }
            runs.push(level_runs);
        }

        let mut levels = Vec::with_capacity(h);
        let mut inv = vec![0u32; t];
        for d in 1..=h {
            let ord = &order[d];
            // keys: right children keep y (min structure), left children the
            // complement (so a max query is a min query too)
            let mask = if h == 64 { u64::MAX } else { (1u64 << h) - 1 };
            let key = |i: usize| {
                let y = ys[ord[i] as usize];
                if y >> (h - d) & 1 == 1 {
                    y
                } else {
                    mask - y
                }
            };
            let groups = t.div_ceil(group);
            let mut rank = vec![0u8; t];
            let mut group_key = vec![u64::MAX; groups];
            let mut group_off = vec![0u8; groups];
            for gi in 0..groups {
                let (s, e) = (gi * group, ((gi + 1) * group).min(t));
                let mut idx: Vec<usize> = (s..e).collect();
                idx.sort_by_key(|&i| (key(i), i));
                for (rk, &i) in idx.iter().enumerate() {
                    rank[i] = rk as u8;
                }
                let same_node = prefix(ys[ord[s] as usize], d) == prefix(ys[ord[e - 1] as usize], d);
                if same_node {
                    group_key[gi] = key(idx[0]);
                    group_off[gi] = (idx[0] - s) as u8;
                }
            }
            let mut distinct = group_key.clone();
            distinct.sort_unstable();
            distinct.dedup();
            let rmq = BlockRmq::new(group_key.iter().map(|k| distinct.binary_search(k).unwrap() as u32).collect());

            // translation target
            let hv = (h - d) as u32;
            let mut k = 0u32;
            while base.pow(k + 1) < height && hv.is_multiple_of(base.pow(k + 1)) {
                k += 1;
            }
            let step = base.pow(k + 1);
            let ht = ((hv / step + 1) * step).min(height);
            let target = h - ht as usize;
            let chunk_bits = ((d - target) as u32).min(15);
            for (pos, &i) in order[target].iter().enumerate() {
                inv[i as usize] = pos as u32;
            }
            let mut up = vec![0u16; t];
            let mut cbits: Vec<bool> = Vec::with_capacity(t * 2);
            for &(p, s, e) in &runs[d] {
                let pu = p >> (d - target);
                let u = if target == 0 {
                    (0, t)
                } else {
                    let n = nodes[&(target as u8, pu)];
                    (n.start as usize, n.end as usize)
                };
                let zeros = cbits.len() - s;
                nodes.insert((d as u8, p), NodeInfo { start: s as u32, end: e as u32, zeros: zeros as u32 });
                let chunks = (u.1 - u.0).div_ceil(1 << chunk_bits);
                let mut pos = s;
                for c in 0..chunks {
                    while pos < e {
                        let rel = inv[ord[pos] as usize] as usize - u.0;
                        if rel >> chunk_bits != c {
                            break;
                        }
                        up[pos] = (rel & ((1 << chunk_bits) - 1)) as u16;
                        cbits.push(true);
                        pos += 1;
                    }
                    cbits.push(false);
                }
                debug_assert_eq!(pos, e);
            }
            let samples = ord.iter().step_by(SAMPLE).copied().collect();
            levels.push(Level {
                rank,
                group_key,
                group_off,
                rmq,
                up,
                c: BitVec::from_bits(cbits),
                target,
                chunk_bits,
                samples,
            });
        }
        // nodes at a target level must exist before lower levels refer to
        // them; targets are always shallower, and levels are built top-down
        Self { height, group, base, ys: ys.to_vec(), levels, nodes }
    }

    pub fn len(&self) -> usize {
        self.ys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ys.is_empty()
    }

    /// Maximum number of translation hops from any depth to the root.
    pub fn max_hops(&self) -> usize {
        (1..=self.height as usize).map(|d| self.hops_from(d)).max().unwrap_or(0)
    }

    fn hops_from(&self, mut d: usize) -> usize {
        let mut hops = 0;
        while d > 0 {
            d = self.levels[d - 1].target;
            hops += 1;
        }
        hops
    }

    /// Root index of the element at level position `p` of node `prefix` at depth `d`.
    pub fn lift(&self, mut d: usize, mut prefix: u64, mut p: usize) -> usize {
        while d > 0 {
            let lv = &self.levels[d - 1];
            let node = self.nodes[&(d as u8, prefix)];
            let zeros = lv.c.select1(p) - p - node.zeros as usize;
            let rel = (zeros << lv.chunk_bits) | lv.up[p] as usize;
            let tp = prefix >> (d - lv.target);
            let start = if lv.target == 0 { 0 } else { self.nodes[&(lv.target as u8, tp)].start as usize };
            p = start + rel;
            d = lv.target;
            prefix = tp;
        }
        p
    }

    fn key(&self, d: usize, y: u64) -> u64 {
        let h = self.height as usize;
        let mask = if h == 64 { u64::MAX } else { (1u64 << h) - 1 };
        if y >> (h - d) & 1 == 1 {
            y
        } else {
            mask - y
        }
    }

    /// First position in the node whose root index is >= `x`.
    fn lower_bound(&self, d: usize, prefix: u64, node: NodeInfo, x: usize) -> usize {
        let lv = &self.levels[d - 1];
        let (s, e) = (node.start as usize, node.end as usize);
        // sampled positions inside the node
        let first = s.div_ceil(SAMPLE);
        let last = (e - 1) / SAMPLE;
        let (mut lo, mut hi) = (s, e);
        if first <= last {
            let k = lv.samples[first..=last].partition_point(|&r| (r as usize) < x);
            if k > 0 {
                lo = (first + k - 1) * SAMPLE + 1;
            }
            if first + k <= last {
                hi = (first + k) * SAMPLE;
            }
        }
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.lift(d, prefix, mid) < x {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Root indices in `[x1, x2)` with y in `[y1, y2]`, ascending.
    pub fn query(&self, x1: usize, x2: usize, y1: u64, y2: u64) -> Vec<usize> {
        let mut out = Vec::new();
        let h = self.height as usize;
        if x1 >= x2 || y1 > y2 || self.ys.is_empty() {
            return out;
        }
        let mask = if h == 64 { u64::MAX } else { (1u64 << h) - 1 };
        let (y1, y2) = (y1.min(mask), y2.min(mask));
        let common = if y1 == y2 { h } else { ((y1 ^ y2) << (64 - h)).leading_zeros() as usize };
        if common == h {
            // a single leaf: every point there has y = y1
            if let Some(&node) = self.nodes.get(&(h as u8, y1)) {
                let a = self.lower_bound(h, y1, node, x1);
                let b = self.lower_bound(h, y1, node, x2);
                out.extend((a..b).map(|p| self.lift(h, y1, p)));
            }
        } else {
            let d = common + 1;
            let vl = y1 >> (h - d);
            let vr = y2 >> (h - d);
            if let Some(&node) = self.nodes.get(&(d as u8, vr)) {
                self.three_sided(d, vr, node, x1, x2, self.key(d, y2), &mut out);
            }
            if let Some(&node) = self.nodes.get(&(d as u8, vl)) {
                self.three_sided(d, vl, node, x1, x2, self.key(d, y1), &mut out);
            }
        }
        out.sort_unstable();
        out
    }

    /// Report points of one node in root range `[x1, x2)` whose key is at
    /// most `bound`.
    #[allow(clippy::too_many_arguments)]
    fn three_sided(
        &self,
        d: usize,
        prefix: u64,
        node: NodeInfo,
        x1: usize,
        x2: usize,
        bound: u64,
        out: &mut Vec<usize>,
    ) {
        let a = self.lower_bound(d, prefix, node, x1);
        let b = self.lower_bound(d, prefix, node, x2);
        if a >= b {
            return;
        }
        let lv = &self.levels[d - 1];
        let g = self.group;
        let mut stack = vec![(a, b - 1)];
        while let Some((a, b)) = stack.pop() {
            let scan = |s: usize, e: usize| (s..=e).min_by_key(|&p| lv.rank[p]).unwrap();
            let mut cands: Vec<(u64, usize, Option<usize>)> = Vec::with_capacity(3);
            let mut push = |p: usize, known: Option<u64>| {
                let root = self.lift(d, prefix, p);
                let k = known.unwrap_or_else(|| self.key(d, self.ys[root]));
                cands.push((k, p, Some(root)));
            };
            let (ga, gb) = (a / g, b / g);
            if ga == gb {
                push(scan(a, b), None);
            } else {
                push(scan(a, (ga + 1) * g - 1), None);
                push(scan(gb * g, b), None);
                if ga + 1 < gb {
                    let gi = lv.rmq.argmin(ga + 1, gb - 1);
                    push(gi * g + lv.group_off[gi] as usize, Some(lv.group_key[gi]));
                }
            }
            let &(k, p, root) = cands.iter().min_by_key(|c| (c.0, c.1)).unwrap();
            if k > bound {
                continue;
            }
            out.push(root.unwrap());
            if p > a {
                stack.push((a, p - 1));
            }
            if p < b {
                stack.push((p + 1, b));
            }
        }
    }

    pub fn size_bits(&self) -> u64 {
        let mut bits = self.ys.len() as u64 * self.height as u64;
        for lv in &self.levels {
            bits += lv.rank.len() as u64 * 8
                + lv.group_key.len() as u64 * (64 + 8)
                + lv.rmq.size_bits()
                + lv.up.len() as u64 * 16
                + lv.c.size_bits()
                + lv.samples.len() as u64 * 32;
        }
        bits + self.nodes.capacity() as u64 * 24 * 8
    }

    pub fn params(&self) -> (usize, u32) {
        (self.group, self.base)
    }
}
