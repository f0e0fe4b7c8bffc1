//! Range-minimum queries: a sparse table over block minima with in-block
//! scans, so queries touch at most two partial blocks plus two table cells.

const BLOCK: usize = 32;

#[derive(Clone, Debug, Default)]
pub struct BlockRmq {
    values: Vec<u32>,
    // table[k][b] = position of the minimum over blocks b..b+2^k
    table: Vec<Vec<u32>>,
}

impl BlockRmq {
    pub fn new(values: Vec<u32>) -> Self {
        let nblocks = values.len().div_ceil(BLOCK);
        let mut level0 = Vec::with_capacity(nblocks);
        for b in 0..nblocks {
            let lo = b * BLOCK;
            let hi = (lo + BLOCK).min(values.len());
            level0.push(argmin(&values, lo, hi) as u32);
        }
        let mut table = vec![level0];
        let mut k = 1;
        while (1 << k) <= nblocks {
            let prev = &table[k - 1];
            let half = 1 << (k - 1);
            let next: Vec<u32> = (0..=nblocks - (1 << k))
                .map(|b| {
                    let (x, y) = (prev[b], prev[b + half]);
                    if values[y as usize] < values[x as usize] {
                        y
                    } else {
                        x
                    }
                })
                .collect();
            table.push(next);
            k += 1;
        }
        Self { values, table }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Position of the leftmost minimum in `values[lo..=hi]`.
    pub fn argmin(&self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi && hi < self.values.len());
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        if bh - bl <= 1 {
            return argmin(&self.values, lo, hi + 1);
        }
        let mut best = argmin(&self.values, lo, (bl + 1) * BLOCK);
        let (from, to) = (bl + 1, bh - 1);
        let k = (usize::BITS - 1 - (to - from + 1).leading_zeros()) as usize;
        for cand in [self.table[k][from], self.table[k][to + 1 - (1 << k)]] {
            if self.values[cand as usize] < self.values[best] {
                best = cand as usize;
            }
        }
        let tail = argmin(&self.values, bh * BLOCK, hi + 1);
        if self.values[tail] < self.values[best] {
            best = tail;
        }
        best
    }

    pub fn size_bits(&self) -> u64 {
        (self.values.len() + self.table.iter().map(Vec::len).sum::<usize>()) as u64 * 32
    }
}

fn argmin(v: &[u32], lo: usize, hi: usize) -> usize {
    let mut best = lo;
    for i in lo + 1..hi {
        if v[i] < v[best] {
            best = i;
        }
    }
    best
}
