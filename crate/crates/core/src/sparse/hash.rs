const EMPTY: usize = usize::MAX;

/// Open-addressing accumulator for one output row.
pub(crate) struct HashRow {
    keys: Vec<usize>,
    vals: Vec<f64>,
    used: Vec<usize>,
    shift: u32,
}

impl HashRow {
    pub(crate) fn new() -> Self {
        HashRow {
            keys: Vec::new(),
            vals: Vec::new(),
            used: Vec::new(),
            shift: 64,
        }
    }

    /// Clear and make room for up to `bound` distinct keys.
    pub(crate) fn reset(&mut self, bound: usize) {
        let want = (2 * bound).next_power_of_two().max(2);
        if want > self.keys.len() {
            self.keys = vec![EMPTY; want];
            self.vals = vec![0.0; want];
            self.shift = 64 - want.trailing_zeros();
        } else {
            for &s in &self.used {
                self.keys[s] = EMPTY;
            }
        }
        self.used.clear();
    }

    #[inline]
    pub(crate) fn slot(&mut self, key: usize) -> usize {
        let mask = self.keys.len() - 1;
        let mut s = ((key as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) >> self.shift) as usize;
        loop {
            let k = self.keys[s];
            if k == key {
                return s;
            }
            if k == EMPTY {
                self.keys[s] = key;
                self.vals[s] = 0.0;
                self.used.push(s);
                return s;
            }
            s = (s + 1) & mask;
        }
    }

    #[inline]
    pub(crate) fn touch(&mut self, key: usize) {
        self.slot(key);
    }

    #[inline]
    pub(crate) fn add(&mut self, key: usize, v: f64) {
        let s = self.slot(key);
        self.vals[s] += v;
    }

    pub(crate) fn len(&self) -> usize {
        self.used.len()
    }

    /// Write the accumulated entries in column order.
    pub(crate) fn drain_sorted(&mut self, cols: &mut [usize], vals: &mut [f64]) {
        let keys = &self.keys;
        self.used.sort_unstable_by_key(|&s| keys[s]);
        for (k, &s) in self.used.iter().enumerate() {
            cols[k] = self.keys[s];
            vals[k] = self.vals[s];
        }
    }

    /// Append the accumulated entries in column order.
    pub(crate) fn drain_sorted_append(&mut self, cols: &mut Vec<usize>, vals: &mut Vec<f64>) {
        let keys = &self.keys;
        self.used.sort_unstable_by_key(|&s| keys[s]);
        for &s in &self.used {
            cols.push(self.keys[s]);
            vals.push(self.vals[s]);
        }
    }
}
