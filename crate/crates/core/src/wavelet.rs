//! Pointerless levelwise wavelet tree over fixed-width integers. Level `l`
//! stores bit `height-1-l` of every value, with values stably partitioned
//! inside each node, so a node is a contiguous interval at every level.

use crate::bitvec::BitVec;

#[derive(Clone, Debug)]
pub struct WaveletTree {
    pub(crate) height: u32,
    pub(crate) len: usize,
    pub(crate) levels: Vec<BitVec>,
}

impl WaveletTree {
    pub fn build(values: &[u64], height: u32) -> Self {
        debug_assert!(height <= 64);
        debug_assert!(height == 64 || values.iter().all(|&v| v >> height == 0));
        let mut cur = values.to_vec();
        let mut next = vec![0u64; cur.len()];
        let mut levels = Vec::with_capacity(height as usize);
        for l in 0..height {
            let bit = height - 1 - l;
            levels.push(BitVec::from_bits(cur.iter().map(|&v| v >> bit & 1 == 1)));
            // stable partition inside each node (values sharing the bits above)
            let group = |v: u64| if bit + 1 >= 64 { 0 } else { v >> (bit + 1) };
            let mut s = 0;
            while s < cur.len() {
                let g = group(cur[s]);
                let mut e = s;
                while e < cur.len() && group(cur[e]) == g {
                    e += 1;
                }
                let mut w = s;
                for &v in cur[s..e].iter().filter(|&&v| v >> bit & 1 == 0) {
                    next[w] = v;
                    w += 1;
                }
                for &v in cur[s..e].iter().filter(|&&v| v >> bit & 1 == 1) {
                    next[w] = v;
                    w += 1;
                }
                s = e;
            }
            std::mem::swap(&mut cur, &mut next);
        }
        Self { height, len: values.len(), levels }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn levels(&self) -> &[BitVec] {
        &self.levels
    }

    /// Split node `[ns, ne)` at `level`: returns (zeros in node, mapped l, mapped r)
    /// for the left child; right child positions follow.
    #[inline]
    fn split(&self, level: usize, ns: usize, ne: usize, l: usize, r: usize) -> Split {
        let bv = &self.levels[level];
        let z_ns = bv.rank0(ns);
        let zeros = bv.rank0(ne) - z_ns;
        let zl = bv.rank0(l) - z_ns;
        let zr = bv.rank0(r) - z_ns;
        Split {
            mid: ns + zeros,
            left: (ns + zl, ns + zr),
            right: (ns + zeros + (l - ns - zl), ns + zeros + (r - ns - zr)),
        }
    }

    pub fn access(&self, mut i: usize) -> u64 {
        let (mut ns, mut ne) = (0, self.len);
        let mut v = 0u64;
        for level in 0..self.height as usize {
            let sp = self.split(level, ns, ne, i, i + 1);
            if sp.left.1 > sp.left.0 {
                v <<= 1;
                i = sp.left.0;
                ne = sp.mid;
            } else {
                v = v << 1 | 1;
                i = sp.right.0;
                ns = sp.mid;
            }
        }
        v
    }

    fn span(&self, level: usize) -> u32 {
        self.height - level as u32
    }

    /// Values in positions `[l, r)` lying in `[a, b]`.
    pub fn count(&self, l: usize, r: usize, a: u64, b: u64) -> usize {
        if l >= r || a > b {
            return 0;
        }
        self.count_rec(0, 0, self.len, l, r, 0, a, b)
    }

    #[allow(clippy::too_many_arguments)]
    fn count_rec(&self, level: usize, ns: usize, ne: usize, l: usize, r: usize, prefix: u64, a: u64, b: u64) -> usize {
        if l >= r {
            return 0;
        }
        let span = self.span(level);
        let (vlo, vhi) = node_values(prefix, span);
        if vhi < a || vlo > b {
            return 0;
        }
        if a <= vlo && vhi <= b {
            return r - l;
        }
        let sp = self.split(level, ns, ne, l, r);
        self.count_rec(level + 1, ns, sp.mid, sp.left.0, sp.left.1, prefix << 1, a, b)
            + self.count_rec(level + 1, sp.mid, ne, sp.right.0, sp.right.1, prefix << 1 | 1, a, b)
    }

    /// Original positions in `[l, r)` whose value lies in `[a, b]`, ascending.
    pub fn report(&self, l: usize, r: usize, a: u64, b: u64) -> Vec<usize> {
        let mut out = Vec::new();
        if l < r && a <= b {
            let mut path = Vec::with_capacity(self.height as usize);
            self.report_rec(0, 0, self.len, l, r, 0, a, b, &mut path, &mut out);
        }
        out.sort_unstable();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn report_rec(
        &self,
        level: usize,
        ns: usize,
        ne: usize,
        l: usize,
        r: usize,
        prefix: u64,
        a: u64,
        b: u64,
        path: &mut Vec<(usize, bool)>,
        out: &mut Vec<usize>,
    ) {
        if l >= r {
            return;
        }
        let (vlo, vhi) = node_values(prefix, self.span(level));
        if vhi < a || vlo > b {
            return;
        }
        if a <= vlo && vhi <= b {
            for p in l..r {
                out.push(self.lift(path, ns, p));
            }
            return;
        }
        let sp = self.split(level, ns, ne, l, r);
        path.push((ns, false));
        self.report_rec(level + 1, ns, sp.mid, sp.left.0, sp.left.1, prefix << 1, a, b, path, out);
        path.pop();
        path.push((ns, true));
        self.report_rec(level + 1, sp.mid, ne, sp.right.0, sp.right.1, prefix << 1 | 1, a, b, path, out);
        path.pop();
    }

    /// Map position `p` inside the node starting at `ns` (at depth
    /// `path.len()`) back to the root sequence. `path` holds, for each
    /// ancestor, its start and whether the walk went right.
    fn lift(&self, path: &[(usize, bool)], mut ns: usize, mut p: usize) -> usize {
        for (level, &(pns, right)) in path.iter().enumerate().rev() {
            let bv = &self.levels[level];
            let off = p - ns;
            p = if right { bv.select1(bv.rank1(pns) + off) } else { bv.select0(bv.rank0(pns) + off) };
            ns = pns;
        }
        p
    }

    pub fn size_bits(&self) -> u64 {
        self.levels.iter().map(BitVec::size_bits).sum::<u64>() + 128
    }
}

struct Split {
    mid: usize,
    left: (usize, usize),
    right: (usize, usize),
}

#[inline]
fn node_values(prefix: u64, span: u32) -> (u64, u64) {
    if span >= 64 {
        return (0, u64::MAX);
    }
    let lo = prefix << span;
    (lo, lo | ((1u64 << span) - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn matches_scan(
            height in 1u32..12,
            raw in proptest::collection::vec(any::<u64>(), 0..300),
            rects in proptest::collection::vec((any::<usize>(), any::<usize>(), any::<u64>(), any::<u64>()), 1..20),
        ) {
            let mask = (1u64 << height) - 1;
            let vals: Vec<u64> = raw.iter().map(|v| v & mask).collect();
            let wt = WaveletTree::build(&vals, height);
            for (i, &v) in vals.iter().enumerate() {
                prop_assert_eq!(wt.access(i), v);
            }
            for &(x, y, a, b) in &rects {
                let n = vals.len() + 1;
                let (mut l, mut r) = (x % n, y % n);
                if l > r { std::mem::swap(&mut l, &mut r); }
                let (mut a, mut b) = (a & mask, b & mask);
                if a > b { std::mem::swap(&mut a, &mut b); }
                let want: Vec<usize> = (l..r).filter(|&i| vals[i] >= a && vals[i] <= b).collect();
                prop_assert_eq!(wt.count(l, r, a, b), want.len());
                prop_assert_eq!(wt.report(l, r, a, b), want);
            }
        }
    }
}
