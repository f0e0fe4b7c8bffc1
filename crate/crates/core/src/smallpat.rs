//! Index for patterns of length at most `p = 4r+3`. The text is cut into
//! blocks `A[i] = T[ip..ip+2p)`; every occurrence of a short pattern lies in
//! exactly one block at an offset below `p`.

use crate::par;
use crate::text::TextModel;

#[derive(Clone, Debug)]
pub struct SmallPatternIndex {
    pub(crate) p: usize,
    pub(crate) width: u32,
    pub(crate) n: usize,
    /// Distinct block contents, sorted, and the blocks holding each.
    pub(crate) alphas: Vec<u128>,
    pub(crate) tbl_start: Vec<u32>,
    pub(crate) tbl_pos: Vec<u32>,
    /// One entry per (distinct block, offset): the `p` symbols at that
    /// offset, sorted, so every short pattern owns a contiguous run.
    pub(crate) keys: Vec<u64>,
    pub(crate) pair_slot: Vec<u32>,
    pub(crate) pair_off: Vec<u8>,
    /// `prefix_count[k]` = occurrences covered by pairs `0..k`.
    pub(crate) prefix_count: Vec<u64>,
}

impl SmallPatternIndex {
    pub fn build(tm: &TextModel) -> Self {
        let p = tm.cover().max_gap() as usize;
        let width = tm.seq().width();
        let n = tm.len();
        let blocks = n.div_ceil(p);
        let seq = tm.seq();
        let mut items: Vec<(u128, u32)> = par::map_range(blocks, |i| {
            let hi = seq.chunk(i * p, p) as u128;
            let lo = seq.chunk(i * p + p, p) as u128;
            ((hi << (p as u32 * width)) | lo, i as u32)
        });
        par::sort_unstable_by(&mut items, |a, b| a.cmp(b));
        let mut alphas = Vec::new();
        let mut tbl_start = Vec::new();
        let mut tbl_pos = Vec::with_capacity(items.len());
        for (k, &(a, i)) in items.iter().enumerate() {
            if k == 0 || items[k - 1].0 != a {
                alphas.push(a);
                tbl_start.push(tbl_pos.len() as u32);
            }
            tbl_pos.push(i);
        }
        tbl_start.push(tbl_pos.len() as u32);
        drop(items);

        let key_bits = p as u32 * width;
        let key_mask = if key_bits == 64 { u64::MAX } else { (1u64 << key_bits) - 1 };
        let total_bits = 2 * p as u32 * width;
        let mut pairs: Vec<(u64, u32, u8)> = Vec::with_capacity(alphas.len() * p);
        for (slot, &a) in alphas.iter().enumerate() {
            for off in 0..p {
                let shift = total_bits - (off + p) as u32 * width;
                let key = (a >> shift) as u64 & key_mask;
                // offsets whose first symbol is the sentinel start no occurrence
                if key >> (key_bits - width) != 0 {
                    pairs.push((key, slot as u32, off as u8));
                }
            }
        }
        par::sort_unstable_by(&mut pairs, |a, b| a.cmp(b));
        let mut prefix_count = Vec::with_capacity(pairs.len() + 1);
        prefix_count.push(0u64);
        let mut acc = 0u64;
        for &(_, slot, _) in &pairs {
            acc += (tbl_start[slot as usize + 1] - tbl_start[slot as usize]) as u64;
            prefix_count.push(acc);
        }
        Self {
            p,
            width,
            n,
            alphas,
            tbl_start,
            tbl_pos,
            keys: pairs.iter().map(|x| x.0).collect(),
            pair_slot: pairs.iter().map(|x| x.1).collect(),
            pair_off: pairs.iter().map(|x| x.2).collect(),
            prefix_count,
        }
    }

    pub fn max_len(&self) -> usize {
        self.p
    }

    pub fn blocks(&self) -> usize {
        self.tbl_pos.len()
    }

    pub fn distinct_blocks(&self) -> usize {
        self.alphas.len()
    }

    /// Pair range for a pattern of shifted symbols.
    fn range(&self, shifted: &[u32]) -> (usize, usize) {
        let j = shifted.len();
        debug_assert!(j >= 1 && j <= self.p);
        let mut q = 0u64;
        for &c in shifted {
            q = (q << self.width) | c as u64;
        }
        let free = (self.p - j) as u32 * self.width;
        let lo = q << free;
        let hi = lo | if free == 0 { 0 } else { (1u64 << free) - 1 };
        (self.keys.partition_point(|&k| k < lo), self.keys.partition_point(|&k| k <= hi))
    }

    /// Pattern of original codes, `1 <= len <= max_len()`.
    pub fn count(&self, pattern: &[u32]) -> usize {
        let shifted: Vec<u32> = pattern.iter().map(|&c| c + 1).collect();
        let (a, b) = self.range(&shifted);
        (self.prefix_count[b] - self.prefix_count[a]) as usize
    }

    /// Occurrence positions, ascending.
    pub fn locate(&self, pattern: &[u32]) -> Vec<usize> {
        let shifted: Vec<u32> = pattern.iter().map(|&c| c + 1).collect();
        let (a, b) = self.range(&shifted);
        let mut out = Vec::with_capacity((self.prefix_count[b] - self.prefix_count[a]) as usize);
        for k in a..b {
            let slot = self.pair_slot[k] as usize;
            let off = self.pair_off[k] as usize;
            for &i in &self.tbl_pos[self.tbl_start[slot] as usize..self.tbl_start[slot + 1] as usize] {
                let f = i as usize * self.p + off;
                debug_assert!(f + pattern.len() <= self.n);
                out.push(f);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn size_bits(&self) -> u64 {
        self.alphas.len() as u64 * 128
            + (self.tbl_start.len() + self.tbl_pos.len() + self.pair_slot.len()) as u64 * 32
            + self.keys.len() as u64 * 64
            + self.pair_off.len() as u64 * 8
            + self.prefix_count.len() as u64 * 64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn all_patterns(sigma: u32, len: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..sigma).map(move |c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn all_a() {
        let tm = TextModel::build(&[0, 0, 0, 0], 2, Some(1)).unwrap();
        let sp = SmallPatternIndex::build(&tm);
        assert_eq!(sp.count(&[0]), 4);
        assert_eq!(sp.count(&[0, 0, 0, 0]), 1);
        assert_eq!(sp.count(&[0, 0, 0, 0, 0]), 0);
        assert_eq!(sp.count(&[1]), 0);
        assert_eq!(sp.locate(&[0, 0]), vec![0, 1, 2]);
    }

    #[test]
    fn exhaustive_binary() {
        let codes: Vec<u32> = (0..600u32).map(|i| (i * i / 5 + i / 3) % 2).collect();
        let tm = TextModel::build(&codes, 2, Some(1)).unwrap();
        let sp = SmallPatternIndex::build(&tm);
        assert_eq!(sp.blocks(), codes.len().div_ceil(7));
        for len in 1..=sp.max_len() {
            for pat in all_patterns(2, len) {
                let want = oracle::naive_search(&codes, &pat);
                assert_eq!(sp.count(&pat), want.len());
                assert_eq!(sp.locate(&pat), want);
            }
        }
    }
}
