//! Bit-packed symbol sequences with word-at-a-time comparison.
//!
//! Symbols occupy a fixed number of bits and are laid out most-significant
//! first, so a 64-bit window read at any position compares as an integer in
//! the same order as the symbols it covers. Positions at or beyond the end
//! read as code 0, the sentinel.

use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedSeq {
    words: Vec<u64>,
    len: usize,
    width: u32,
}

impl PackedSeq {
    pub fn from_codes<I: IntoIterator<Item = u32>>(codes: I, width: u32) -> Self {
        assert!((1..=32).contains(&width));
        let mut words = Vec::new();
        let mut len = 0usize;
        let mut acc: u128 = 0;
        let mut filled = 0u32;
        for c in codes {
            debug_assert!(width == 32 || c < (1 << width));
            acc = (acc << width) | c as u128;
            filled += width;
            if filled >= 64 {
                let extra = filled - 64;
                words.push((acc >> extra) as u64);
                acc &= (1u128 << extra) - 1;
                filled = extra;
            }
            len += 1;
        }
        if filled > 0 {
            words.push((acc << (64 - filled)) as u64);
        }
        words.extend([0, 0]);
        Self { words, len, width }
    }

    pub fn from_words(words: Vec<u64>, len: usize, width: u32) -> Self {
        Self { words, len, width }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }

    /// Number of whole symbols in one 64-bit window.
    #[inline]
    pub fn per_word(&self) -> usize {
        (64 / self.width) as usize
    }

    /// The 64 bits starting at symbol `pos`.
    #[inline]
    pub fn window(&self, pos: usize) -> u64 {
        if pos >= self.len {
            return 0;
        }
        let bit = pos * self.width as usize;
        let (wi, sh) = (bit / 64, bit % 64);
        let hi = self.words[wi] << sh;
        if sh == 0 {
            hi
        } else {
            hi | (self.words[wi + 1] >> (64 - sh))
        }
    }

    #[inline]
    pub fn get(&self, pos: usize) -> u32 {
        (self.window(pos) >> (64 - self.width)) as u32
    }

    /// `count` symbols starting at `pos` as a right-aligned integer.
    #[inline]
    pub fn chunk(&self, pos: usize, count: usize) -> u64 {
        debug_assert!(count * self.width as usize <= 64);
        if count == 0 {
            return 0;
        }
        let w = self.window(pos);
        let bits = count as u32 * self.width;
        // bits past the end are stored as zero, i.e. sentinel
        if bits == 64 {
            w
        } else {
            w >> (64 - bits)
        }
    }

    /// Length of the longest common prefix of `a[ia..]` and `b[ib..]`,
    /// truncated at `cap` and at the shorter of the two remaining lengths.
    pub fn lcp(a: &PackedSeq, ia: usize, b: &PackedSeq, ib: usize, cap: usize) -> usize {
        debug_assert_eq!(a.width, b.width);
        let cap = cap.min(a.len.saturating_sub(ia)).min(b.len.saturating_sub(ib));
        let step = a.per_word();
        let mask = !0u64 << (64 - step as u32 * a.width);
        let mut k = 0;
        while k < cap {
            let x = (a.window(ia + k) ^ b.window(ib + k)) & mask;
            if x == 0 {
                k += step;
            } else {
                k += (x.leading_zeros() / a.width) as usize;
                return k.min(cap);
            }
        }
        cap
    }

    /// Compare `a[ia..ia+len]` with `b[ib..ib+len]`, sentinel-padded.
    pub fn compare_range(a: &PackedSeq, ia: usize, b: &PackedSeq, ib: usize, len: usize) -> Ordering {
        let l = Self::lcp(a, ia, b, ib, len);
        if l == len {
            Ordering::Equal
        } else {
            a.get(ia + l).cmp(&b.get(ib + l))
        }
    }

    pub fn size_bits(&self) -> u64 {
        self.words.len() as u64 * 64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_lcp(a: &[u32], ia: usize, b: &[u32], ib: usize, cap: usize) -> usize {
        let mut k = 0;
        while k < cap && ia + k < a.len() && ib + k < b.len() && a[ia + k] == b[ib + k] {
            k += 1;
        }
        k
    }

    #[test]
    fn window_and_get() {
        let codes: Vec<u32> = (0..100).map(|i| (i * 7 % 5) as u32 + 1).collect();
        let p = PackedSeq::from_codes(codes.iter().copied(), 3);
        for (i, &c) in codes.iter().enumerate() {
            assert_eq!(p.get(i), c);
        }
        assert_eq!(p.get(100), 0);
        assert_eq!(p.get(10_000), 0);
    }

    #[test]
    fn chunk_pads_with_sentinel() {
        let p = PackedSeq::from_codes([1, 2, 3], 2);
        assert_eq!(p.chunk(0, 3), 0b01_10_11);
        assert_eq!(p.chunk(1, 3), 0b10_11_00);
        assert_eq!(p.chunk(3, 3), 0);
    }

    proptest! {
        #[test]
        fn lcp_matches_scan(a in prop::collection::vec(1u32..4, 0..200),
                            ia in 0usize..210, ib in 0usize..210, cap in 0usize..300) {
            let p = PackedSeq::from_codes(a.iter().copied(), 2);
            prop_assert_eq!(PackedSeq::lcp(&p, ia, &p, ib, cap), naive_lcp(&a, ia, &a, ib, cap));
        }

        #[test]
        fn chunk_order_is_lexicographic(a in prop::collection::vec(1u32..16, 1..80),
                                        i in 0usize..90, j in 0usize..90) {
            let p = PackedSeq::from_codes(a.iter().copied(), 5);
            let m = 12;
            let get = |k: usize| a.get(k).copied().unwrap_or(0);
            let si: Vec<u32> = (i..i + m).map(get).collect();
            let sj: Vec<u32> = (j..j + m).map(get).collect();
            prop_assert_eq!(p.chunk(i, m).cmp(&p.chunk(j, m)), si.cmp(&sj));
        }
    }
}
