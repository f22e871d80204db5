//! Bit-packed rows over `F_2` for ambient dimension up to 64.

/// Packs a row of `0/1` codes; bit `j` holds column `j`.
pub fn pack(row: &[u64]) -> u64 {
    row.iter().enumerate().fold(0, |acc, (j, &b)| acc | ((b & 1) << j))
}

pub fn unpack(bits: u64, cols: usize) -> Vec<u64> {
    (0..cols).map(|j| (bits >> j) & 1).collect()
}

/// Rank of a set of packed rows; the slice is clobbered.
pub fn rank(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows[i + 1..].iter_mut() {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

/// `v M` where `M` is given by its packed rows.
#[inline]
pub fn mul_row(v: u64, matrix_rows: &[u64]) -> u64 {
    let mut acc = 0;
    let mut bits = v;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        acc ^= matrix_rows[j];
        bits &= bits - 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pack_roundtrip_and_rank() {
        let row = vec![1, 0, 1, 1, 0];
        assert_eq!(unpack(pack(&row), 5), row);
        let mut rows = [0b011, 0b110, 0b101];
        assert_eq!(rank(&mut rows), 2);
        let mut rows = [0b001, 0b010, 0b100, 0b111];
        assert_eq!(rank(&mut rows), 3);
        assert_eq!(rank(&mut []), 0);
    }

    #[test]
    fn agrees_with_generic_elimination() {
        let f2 = crate::field::build_field(2, 1).unwrap();
        for idx in (0u64..1 << 16).step_by(97) {
            let m = super::super::MatrixFq::from_index(&f2, 4, 4, idx);
            let mut packed: Vec<u64> = (0..4).map(|i| pack(m.row(i))).collect();
            assert_eq!(rank(&mut packed), m.rank());
            let v = idx & 0xf;
            let expect = m.mul_row(&unpack(v, 4));
            let packed_rows: Vec<u64> = (0..4).map(|i| pack(m.row(i))).collect();
            assert_eq!(unpack(mul_row(v, &packed_rows), 4), expect);
        }
    }
}
