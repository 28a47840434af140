//! Rank of bit-packed rows over GF(2).

/// Rank of `rows`, each a little-endian packed bit vector of equal length.
pub fn rank(mut rows: Vec<Vec<u64>>) -> usize {
    let words = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..words * 64 {
        let (w, mask) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & mask != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut().filter(|r| r[w] & mask != 0) {
            for (a, b) in row[w..].iter_mut().zip(&pivot_row[w..]) {
                *a ^= b;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
