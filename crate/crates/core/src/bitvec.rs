//! Plain bitvector with rank and select.

const SUPER: usize = 8; // words per rank sample

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BitVec {
    pub(crate) words: Vec<u64>,
    len: usize,
    ranks: Vec<u64>,
}

impl BitVec {
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                *words.last_mut().unwrap() |= 1 << (len % 64);
            }
            len += 1;
        }
        Self::from_words(words, len)
    }

    pub fn from_words(words: Vec<u64>, len: usize) -> Self {
        debug_assert!(words.len() == len.div_ceil(64));
        let mut ranks = Vec::with_capacity(words.len() / SUPER + 2);
        let mut acc = 0u64;
        for (i, w) in words.iter().enumerate() {
            if i % SUPER == 0 {
                ranks.push(acc);
            }
            acc += w.count_ones() as u64;
        }
        ranks.push(acc);
        Self { words, len, ranks }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn ones(&self) -> usize {
        *self.ranks.last().unwrap() as usize
    }

    /// Ones in `[0, i)`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        let w = i / 64;
        let sb = w / SUPER;
        let mut r = self.ranks[sb];
        for k in sb * SUPER..w {
            r += self.words[k].count_ones() as u64;
        }
        if !i.is_multiple_of(64) {
            r += (self.words[w] & ((1u64 << (i % 64)) - 1)).count_ones() as u64;
        }
        r as usize
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    /// Position of the `k`-th one (0-based).
    pub fn select1(&self, k: usize) -> usize {
        self.select(k, true)
    }

    /// Position of the `k`-th zero (0-based).
    pub fn select0(&self, k: usize) -> usize {
        self.select(k, false)
    }

    fn select(&self, k: usize, one: bool) -> usize {
        let count = |sb: usize| {
            let r = self.ranks[sb] as usize;
            if one {
                r
            } else {
                (sb * SUPER * 64).min(self.len) - r
            }
        };
        // last superblock whose prefix count is <= k
        let (mut lo, mut hi) = (0usize, self.ranks.len() - 1);
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if count(mid) <= k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut left = k - count(lo);
        let mut w = lo * SUPER;
        loop {
            let word = if one { self.words[w] } else { !self.words[w] };
            let c = word.count_ones() as usize;
            if left < c {
                return w * 64 + select_in_word(word, left);
            }
            left -= c;
            w += 1;
        }
    }

    pub fn size_bits(&self) -> u64 {
        (self.words.len() + self.ranks.len()) as u64 * 64
    }
}

#[inline]
fn select_in_word(mut w: u64, k: usize) -> usize {
    for _ in 0..k {
        w &= w - 1;
    }
    w.trailing_zeros() as usize
}
