//! Binary operations on a finite carrier and their `*` composition.
//!
//! A [`BinaryOp`] stores `f(t, x)` at row `t`, column `x`, so the partial map
//! `f_t = f(t, -)` is literally a row. Composition is
//! `(f * phi)(x, y) = f(x, phi(x, y))` with identity `e(x, y) = y`; it acts
//! row by row, and `f` is invertible exactly when every row is a bijection.

use crate::catalog::permutations;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BinopError {
    #[error("carrier sizes differ: {left} vs {right}")]
    CarrierMismatch { left: usize, right: usize },
    #[error("row {0} is not a bijection, so the operation has no inverse")]
    NotInvertible(usize),
    #[error("carrier size {size} exceeds the cap {cap} for enumerating invertible operations")]
    CapExceeded { size: usize, cap: usize },
    #[error("malformed operation table: {0}")]
    Malformed(String),
}

/// Default cap on the carrier size for [`invertible_group`].
pub const DEFAULT_INVERTIBLE_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryOp {
    size: usize,
    table: Vec<usize>,
}

impl BinaryOp {
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, BinopError> {
        let size = rows.len();
        if size == 0 {
            return Err(BinopError::Malformed("carrier must be non-empty".into()));
        }
        let mut table = Vec::with_capacity(size * size);
        for (t, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(BinopError::Malformed(format!("row {t} has length {}, expected {size}", row.len())));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= size) {
                return Err(BinopError::Malformed(format!("row {t} has entry {v} out of range")));
            }
            table.extend_from_slice(row);
        }
        Ok(BinaryOp { size, table })
    }

    /// Builds from a flat row-major table. Entries must already be in range.
    pub(crate) fn from_flat(size: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), size * size);
        debug_assert!(table.iter().all(|&v| v < size));
        BinaryOp { size, table }
    }

    /// Operation whose row `t` is `rows[t]`.
    pub fn from_row_maps(rows: &[&[usize]]) -> Self {
        let size = rows.len();
        let table = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::from_flat(size, table)
    }

    pub fn identity(size: usize) -> Self {
        assert!(size >= 1, "carrier must be non-empty");
        let table = (0..size).flat_map(|_| 0..size).collect();
        BinaryOp { size, table }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn apply(&self, t: usize, x: usize) -> usize {
        self.table[t * self.size + x]
    }

    pub fn row(&self, t: usize) -> &[usize] {
        &self.table[t * self.size..(t + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn as_flat(&self) -> &[usize] {
        &self.table
    }

    pub fn star(&self, phi: &BinaryOp) -> Result<BinaryOp, BinopError> {
        if self.size != phi.size {
            return Err(BinopError::CarrierMismatch { left: self.size, right: phi.size });
        }
        let n = self.size;
        let table = (0..n).flat_map(|x| (0..n).map(move |y| self.apply(x, phi.apply(x, y)))).collect();
        Ok(BinaryOp { size: n, table })
    }

    /// Smallest row that is not a bijection, if any.
    pub fn non_bijective_row(&self) -> Option<usize> {
        (0..self.size).find(|&t| !is_permutation(self.row(t)))
    }

    pub fn is_invertible(&self) -> bool {
        self.non_bijective_row().is_none()
    }

    /// The inverse `f^-1(t, x) = f_t^-1(x)`, or the smallest row that is not
    /// a bijection.
    pub fn try_invert(&self) -> Result<BinaryOp, BinopError> {
        if let Some(t) = self.non_bijective_row() {
            return Err(BinopError::NotInvertible(t));
        }
        let n = self.size;
        let mut table = vec![0; n * n];
        for t in 0..n {
            for x in 0..n {
                table[t * n + self.apply(t, x)] = x;
            }
        }
        Ok(BinaryOp { size: n, table })
    }
}

pub fn is_permutation(row: &[usize]) -> bool {
    let mut seen = vec![false; row.len()];
    row.iter().all(|&v| v < row.len() && !std::mem::replace(&mut seen[v], true))
}

/// All invertible operations on `0..size`, i.e. every choice of one
/// permutation per row, in lexicographic table order. There are `(size!)^size`.
pub fn invertible_group(size: usize, cap: usize) -> Result<Vec<BinaryOp>, BinopError> {
    if size > cap {
        return Err(BinopError::CapExceeded { size, cap });
    }
    if size == 0 {
        return Err(BinopError::Malformed("carrier must be non-empty".into()));
    }
    let perms = permutations(size);
    let mut out = Vec::new();
    let mut choice = vec![0usize; size];
    loop {
        let table = choice.iter().flat_map(|&c| perms[c].iter().copied()).collect();
        out.push(BinaryOp { size, table });
        // odometer, last row fastest
        let mut i = size;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < perms.len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Every operation on `0..size` (there are `size^(size^2)`), in lexicographic order.
pub fn all_operations(size: usize) -> impl Iterator<Item = BinaryOp> {
    let cells = size * size;
    let total = (size as u64).checked_pow(cells as u32).expect("too many operations");
    (0..total).map(move |mut code| {
        let mut table = vec![0; cells];
        for cell in (0..cells).rev() {
            table[cell] = (code % size as u64) as usize;
            code /= size as u64;
        }
        BinaryOp { size, table }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(rows: &[&[usize]]) -> BinaryOp {
        BinaryOp::from_row_maps(rows)
    }

    fn first_projection() -> BinaryOp {
        op(&[&[0, 0], &[1, 1]])
    }

    fn xor() -> BinaryOp {
        op(&[&[0, 1], &[1, 0]])
    }

    #[test]
    fn identity_tables() {
        assert_eq!(BinaryOp::identity(1).rows(), vec![vec![0]]);
        assert_eq!(BinaryOp::identity(2).rows(), vec![vec![0, 1], vec![0, 1]]);
    }

    #[test]
    fn star_examples() {
        let e = BinaryOp::identity(2);
        let f = first_projection();
        assert_eq!(e.star(&f).unwrap(), f);
        assert_eq!(f.star(&e).unwrap(), f);
        // f(x, f(x, y)) = f(x, x) = x
        assert_eq!(f.star(&f).unwrap(), f);
        // x ^ (x ^ y) = y
        assert_eq!(xor().star(&xor()).unwrap(), e);
    }

    #[test]
    fn identity_is_neutral_at_size_three() {
        let e = BinaryOp::identity(3);
        for f in all_operations(3) {
            assert_eq!(e.star(&f).unwrap(), f);
        }
    }

    #[test]
    fn star_rejects_mismatched_carriers() {
        assert_eq!(
            BinaryOp::identity(2).star(&BinaryOp::identity(3)),
            Err(BinopError::CarrierMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn inversion_examples() {
        let e3 = BinaryOp::identity(3);
        assert_eq!(e3.try_invert().unwrap(), e3);
        assert_eq!(xor().try_invert().unwrap(), xor());
        assert_eq!(first_projection().try_invert(), Err(BinopError::NotInvertible(0)));
        // Witness is the smallest bad row.
        assert_eq!(op(&[&[0, 1], &[1, 1]]).try_invert(), Err(BinopError::NotInvertible(1)));
    }

    #[test]
    fn invertible_group_sizes() {
        // Oracle: filter all size^(size^2) tables by bijective rows.
        for n in 1..=3 {
            let filtered: Vec<BinaryOp> =
                all_operations(n).filter(|f| f.rows().iter().all(|r| is_permutation(r))).collect();
            let group = invertible_group(n, DEFAULT_INVERTIBLE_CAP).unwrap();
            assert_eq!(group, filtered);
        }
        assert_eq!(invertible_group(1, 4).unwrap().len(), 1);
        assert_eq!(invertible_group(2, 4).unwrap().len(), 4);
        assert_eq!(invertible_group(3, 4).unwrap().len(), 216);
        assert_eq!(invertible_group(5, 4), Err(BinopError::CapExceeded { size: 5, cap: 4 }));
    }

    #[test]
    fn invertible_group_is_closed() {
        let group = invertible_group(2, 4).unwrap();
        for f in &group {
            assert!(group.contains(&f.try_invert().unwrap()));
            for g in &group {
                assert!(group.contains(&f.star(g).unwrap()));
            }
        }
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(BinaryOp::from_rows(&[]).is_err());
        assert!(BinaryOp::from_rows(&[vec![0, 1]]).is_err());
        assert!(BinaryOp::from_rows(&[vec![0, 2], vec![0, 1]]).is_err());
    }
}
