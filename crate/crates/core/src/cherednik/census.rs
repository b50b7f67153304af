/// Index counts for G(l, m, n) with bound B = l(n-1) + 2l/m - 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JackCensus {
    pub bound: u64,
    /// Lattice points mu in [0, B]^n.
    pub lattice_points: u128,
    /// Strictly increasing Q in [0, B]^n with one common residue mod l and
    /// entries congruent to l/m - 1 mod l/m.
    pub determinant_sequences: Vec<Vec<u64>>,
    /// (l/m - 1, l + l/m - 1, ..., (n-1)l + l/m - 1).
    pub witness: Vec<u64>,
}

impl JackCensus {
    pub fn unique_q(&self) -> bool {
        self.determinant_sequences.len() == 1 && self.determinant_sequences[0] == self.witness
    }
}

/// Counts by enumeration; `l` must be a multiple of `m`.
pub fn jack_index_census(l: u32, m: u32, n: usize) -> JackCensus {
    assert!(m > 0 && l % m == 0 && n > 0, "m must divide l");
    let (l, q) = (l as u64, (l / m) as u64);
    let bound = l * (n as u64 - 1) + 2 * q - 2;

    // (a) odometer over [0, B]^n
    let mut lattice_points = 0u128;
    let mut mu = vec![0u64; n];
    'outer: loop {
        lattice_points += 1;
        for slot in mu.iter_mut() {
            if *slot < bound {
                *slot += 1;
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }

    // (b) strictly increasing sequences built entry by entry
    fn extend(cur: &mut Vec<u64>, n: usize, bound: u64, l: u64, q: u64, out: &mut Vec<Vec<u64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().map_or(0, |&x| x + 1);
        for v in start..=bound {
            if v % q != q - 1 || cur.first().is_some_and(|&f| f % l != v % l) {
                continue;
            }
            cur.push(v);
            extend(cur, n, bound, l, q, out);
            cur.pop();
        }
    }
    let mut determinant_sequences = Vec::new();
    extend(&mut Vec::new(), n, bound, l, q, &mut determinant_sequences);
    let witness = (0..n as u64).map(|i| i * l + q - 1).collect();
    JackCensus {
        bound,
        lattice_points,
        determinant_sequences,
        witness,
    }
}
