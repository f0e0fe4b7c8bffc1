//! Text, alphabet, meta-symbol geometry and the selected-position set.

use crate::diffcover::DifferenceCover;
use crate::error::{Error, Result};
use crate::packed::PackedSeq;

/// Bits needed to store codes `0..count`.
pub(crate) fn bits_for(count: u64) -> u32 {
    (64 - (count.max(2) - 1).leading_zeros()).max(1)
}

/// Largest k with sigma^k <= n.
fn floor_log(n: u64, sigma: u64) -> u32 {
    let mut k = 0;
    let mut acc = 1u64;
    while let Some(next) = acc.checked_mul(sigma) {
        if next > n {
            break;
        }
        acc = next;
        k += 1;
    }
    k
}

/// Largest cover scale the packed encodings can hold for this alphabet.
pub fn max_cover_scale(sigma: u32) -> u32 {
    let rev_bits = bits_for(sigma as u64);
    let sym_bits = bits_for(sigma as u64 + 1);
    // (4r+2) reversed-run digits in one word, 2(4r+3) symbols in 128 bits
    let by_rev = (64 / rev_bits).saturating_sub(2) / 4;
    let by_small = (128 / (2 * sym_bits)).saturating_sub(3) / 4;
    by_rev.min(by_small)
}

/// Default cover scale `max(1, round(sqrt(log_sigma n)))`, before clamping.
pub fn default_cover_scale(n: usize, sigma: u32) -> u32 {
    let l = (n.max(2) as f64).ln() / (sigma as f64).ln();
    (l.sqrt().round() as u32).max(1)
}

#[derive(Clone, Debug)]
pub struct TextModel {
    seq: PackedSeq,
    sigma: u32,
    m: usize,
    dc: DifferenceCover,
    selected: Vec<u32>,
    run_len: Vec<u8>,
    residue_slot: Vec<u32>,
}

impl TextModel {
    /// Build from symbol codes in `0..sigma`. Codes are stored shifted by one
    /// so that code 0 is the end-of-text sentinel.
    pub fn build(codes: &[u32], sigma: u32, r_override: Option<u32>) -> Result<Self> {
        if sigma < 2 {
            return Err(Error::Config(format!("alphabet size must be at least 2, got {sigma}")));
        }
        if codes.is_empty() {
            return Err(Error::Config("text must contain at least one symbol".into()));
        }
        if codes.len() >= u32::MAX as usize / 2 {
            return Err(Error::Config("text too long for 32-bit positions".into()));
        }
        if let Some((offset, &code)) = codes.iter().enumerate().find(|(_, &c)| c >= sigma) {
            return Err(Error::InvalidSymbol { offset, code, sigma });
        }
        let r_max = max_cover_scale(sigma);
        if r_max == 0 {
            return Err(Error::Config(format!("alphabet size {sigma} is too large")));
        }
        let r = match r_override {
            Some(0) => return Err(Error::Config("cover scale r must be at least 1".into())),
            Some(r) if r > r_max => {
                return Err(Error::Config(format!(
                    "cover scale {r} exceeds the maximum {r_max} for alphabet size {sigma}"
                )))
            }
            Some(r) => r,
            None => default_cover_scale(codes.len(), sigma).min(r_max),
        };
        let width = bits_for(sigma as u64 + 1);
        let seq = PackedSeq::from_codes(codes.iter().map(|&c| c + 1), width);
        Self::from_parts(seq, sigma, r)
    }

    pub(crate) fn from_parts(seq: PackedSeq, sigma: u32, r: u32) -> Result<Self> {
        let dc = DifferenceCover::new(r)?;
        let n = seq.len();
        let m = (floor_log(n as u64, sigma as u64) as usize).clamp(1, seq.per_word());
        let s = dc.modulus() as usize;

        let mut residue_slot = vec![u32::MAX; s];
        for (k, &a) in dc.residues().iter().enumerate() {
            residue_slot[a as usize] = k as u32;
        }
        let mut selected = Vec::with_capacity(n.div_ceil(s) * dc.residues().len());
        for base in (0..n).step_by(s) {
            for &a in dc.residues() {
                let p = base + a as usize;
                if p < n {
                    selected.push(p as u32);
                }
            }
        }
        let mut run_len = Vec::with_capacity(selected.len());
        run_len.push(0);
        for w in selected.windows(2) {
            run_len.push((w[1] - w[0] - 1) as u8);
        }
        Ok(Self { seq, sigma, m, dc, selected, run_len, residue_slot })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    /// Meta-symbol width in symbols.
    pub fn meta_width(&self) -> usize {
        self.m
    }

    pub fn cover(&self) -> &DifferenceCover {
        &self.dc
    }

    pub fn r(&self) -> u32 {
        self.dc.r()
    }

    pub fn block(&self) -> usize {
        self.dc.modulus() as usize
    }

    pub fn seq(&self) -> &PackedSeq {
        &self.seq
    }

    pub fn selected(&self) -> &[u32] {
        &self.selected
    }

    /// Number of non-selected positions immediately before the k-th selected
    /// position.
    pub fn run_len(&self, k: usize) -> u32 {
        self.run_len[k] as u32
    }

    /// Index of `pos` within `selected`, if selected.
    #[inline]
    pub fn selected_index(&self, pos: usize) -> Option<usize> {
        if pos >= self.len() {
            return None;
        }
        let s = self.block();
        let slot = self.residue_slot[pos % s];
        (slot != u32::MAX).then(|| (pos / s) * self.dc.residues().len() + slot as usize)
    }

    #[inline]
    pub fn is_selected(&self, pos: usize) -> bool {
        pos < self.len() && self.dc.contains((pos % self.block()) as u32)
    }

    /// Shifted code at `pos` (0 = sentinel).
    #[inline]
    pub fn sym(&self, pos: usize) -> u32 {
        self.seq.get(pos)
    }

    /// Original alphabet code at `pos < n`.
    pub fn code(&self, pos: usize) -> u32 {
        self.sym(pos) - 1
    }

    /// The meta-symbol starting at `pos`: `m` symbols packed so that integer
    /// order equals lexicographic order, sentinel-padded past the end.
    #[inline]
    pub fn meta_at(&self, pos: usize) -> u64 {
        self.seq.chunk(pos, self.m)
    }

    /// LCP of `T[p1..]` and `T[p2..]` truncated at `cap`, by packed words.
    #[inline]
    pub fn word_lcp(&self, p1: usize, p2: usize, cap: usize) -> usize {
        if p1 == p2 {
            return cap.min(self.len().saturating_sub(p1));
        }
        PackedSeq::lcp(&self.seq, p1, &self.seq, p2, cap)
    }

    /// Pack a pattern of original codes in the text's layout. Returns `None`
    /// if a code falls outside the alphabet.
    pub fn pack_pattern(&self, pattern: &[u32]) -> Option<PackedSeq> {
        if pattern.iter().any(|&c| c >= self.sigma) {
            return None;
        }
        Some(PackedSeq::from_codes(pattern.iter().map(|&c| c + 1), self.seq.width()))
    }

    pub fn size_bits(&self) -> u64 {
        self.seq.size_bits()
    }

    pub fn codes(&self) -> Vec<u32> {
        (0..self.len()).map(|i| self.code(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selected_count_ten_blocks() {
        let codes = vec![1u32; 360];
        let tm = TextModel::build(&codes, 4, Some(1)).unwrap();
        assert_eq!(tm.selected().len(), 90);
        for &p in tm.selected() {
            assert!(tm.is_selected(p as usize));
        }
        for p in 0..360 {
            assert_eq!(tm.is_selected(p), tm.selected_index(p).is_some());
            if let Some(k) = tm.selected_index(p) {
                assert_eq!(tm.selected()[k] as usize, p);
            }
        }
    }

    #[test]
    fn single_symbol_text() {
        let tm = TextModel::build(&[1], 2, None).unwrap();
        assert_eq!(tm.selected(), &[0]);
    }

    #[test]
    fn meta_width_formula() {
        let codes = vec![0u32; 10_000];
        let tm = TextModel::build(&codes, 4, None).unwrap();
        assert_eq!(tm.meta_width(), 6);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            TextModel::build(&[0, 1, 5], 4, None),
            Err(Error::InvalidSymbol { offset: 2, code: 5, sigma: 4 })
        ));
        assert!(matches!(TextModel::build(&[0], 1, None), Err(Error::Config(_))));
        assert!(TextModel::build(&[0, 1], 2, Some(0)).is_err());
        assert!(TextModel::build(&[0, 1], 256, Some(5)).is_err());
    }

    #[test]
    fn run_lengths_and_gaps() {
        for r in 1..=4 {
            let n = 3000;
            let codes: Vec<u32> = (0..n).map(|i| (i % 3) as u32).collect();
            let tm = TextModel::build(&codes, 4, Some(r)).unwrap();
            let allowed = [0, r, 2 * r, 2 * r + 1, 4 * r + 2];
            let sel = tm.selected();
            for k in 1..sel.len() {
                assert!(sel[k] > sel[k - 1]);
                assert!(sel[k] - sel[k - 1] <= 4 * r + 3);
                assert_eq!(tm.run_len(k), sel[k] - sel[k - 1] - 1);
                assert!(allowed.contains(&tm.run_len(k)));
            }
            let bound = (n as usize).div_ceil(tm.block()) * (6 * r as usize + 4);
            assert!(sel.len() <= bound);
        }
    }

    #[test]
    fn meta_symbols_order() {
        // "abab" with a=0, b=1
        let tm = TextModel::build(&[0, 1, 0, 1], 2, Some(1)).unwrap();
        let m = tm.meta_width();
        assert_eq!(tm.meta_at(4), 0);
        let aa = TextModel::build(&[0, 0, 0, 0], 2, Some(1)).unwrap();
        assert_eq!(m, aa.meta_width());
        assert!(tm.meta_at(0) > aa.meta_at(0));
    }

    #[test]
    fn word_lcp_banana() {
        // b=1 a=0 n=2
        let tm = TextModel::build(&[1, 0, 2, 0, 2, 0], 3, Some(1)).unwrap();
        assert_eq!(tm.word_lcp(1, 3, 6), 3);
        assert_eq!(tm.word_lcp(2, 2, 10), 4);
        assert_eq!(tm.word_lcp(0, 0, 10), 6);
    }
}
