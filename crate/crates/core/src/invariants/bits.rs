//! Small helpers for `u64` vertex sets and `u128` edge sets.

pub(crate) fn low_bit(mask: u64) -> Option<usize> {
    (mask != 0).then(|| mask.trailing_zeros() as usize)
}

/// Indices of set bits, ascending.
pub(crate) fn ones(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        let v = low_bit(mask)?;
        mask &= mask - 1;
        Some(v)
    })
}

pub(crate) fn ones128(mut mask: u128) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let v = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(v)
    })
}
