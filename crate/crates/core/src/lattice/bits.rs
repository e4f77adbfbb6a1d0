/// Square boolean matrix with rows packed into `u64` words.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    pub fn row_count(&self, i: usize) -> u32 {
        self.row(i).iter().map(|w| w.count_ones()).sum()
    }

    pub fn row_and(&self, a: usize, b: usize) -> Vec<u64> {
        self.row(a).iter().zip(self.row(b)).map(|(x, y)| x & y).collect()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in iter_ones(self.row(i)) {
                t.set(j, i);
            }
        }
        t
    }

    /// Warshall closure, reflexive.
    pub fn transitive_closure(&mut self) {
        for i in 0..self.n {
            self.set(i, i);
        }
        for k in 0..self.n {
            let row_k = self.row(k).to_vec();
            for i in 0..self.n {
                if self.get(i, k) {
                    let start = i * self.words;
                    for (w, rk) in self.data[start..start + self.words].iter_mut().zip(&row_k) {
                        *w |= rk;
                    }
                }
            }
        }
    }
}

pub(crate) fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(wi * 64 + bit)
        })
    })
}
