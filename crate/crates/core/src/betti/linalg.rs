//! Ranks of sparse integer matrices over the rationals or a prime field.
//!
//! Rows are reduced one at a time against the pivots found so far (keyed by
//! leading column). Over the rationals the reduction is fraction-free:
//! `r ← p·r − c·s`, followed by division by the row content. Entries are kept
//! in `i64` with checked arithmetic; the first overflow restarts the whole
//! elimination on `BigInt`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Field;

/// Sparse row: strictly increasing column indices, nonzero coefficients.
pub type SparseRow = Vec<(usize, i64)>;

pub fn rank(rows: &[SparseRow], field: Field) -> usize {
    match field {
        Field::Prime(p) => rank_mod_p(rows, p as u64),
        Field::Rational => match eliminate::<i64>(rows) {
            Some(r) => r,
            None => eliminate::<BigInt>(rows).expect("BigInt elimination cannot overflow"),
        },
    }
}

trait Entry: Clone + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn is_zero_entry(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `a·x − b·y`, `None` on overflow.
    fn lin(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd_with(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
}

impl Entry for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero_entry(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn lin(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd_with(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

impl Entry for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn lin(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd_with(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

/// `r − (c/p)·s` scaled to stay integral; `r` and `s` share the leading column.
fn reduce<T: Entry>(r: &[(usize, T)], s: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let (c, p) = (&r[0].1, &s[0].1);
    let (a, b) = if p.is_unit() {
        // p = ±1: r·p − c·s has the same row space role without growth
        (p.clone(), c.clone())
    } else {
        let g = c.gcd_with(p);
        (p.div_exact(&g), c.div_exact(&g))
    };
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(r.len() + s.len());
    let (mut i, mut j) = (1, 1);
    while i < r.len() || j < s.len() {
        let (col, v) = match (r.get(i), s.get(j)) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                i += 1;
                j += 1;
                (x.0, T::lin(&a, &x.1, &b, &y.1)?)
            }
            (Some(x), Some(y)) if x.0 < y.0 => {
                i += 1;
                (x.0, T::lin(&a, &x.1, &b, &zero)?)
            }
            (Some(x), None) => {
                i += 1;
                (x.0, T::lin(&a, &x.1, &b, &zero)?)
            }
            (_, Some(y)) => {
                j += 1;
                (y.0, T::lin(&a, &zero, &b, &y.1)?)
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero_entry() {
            out.push((col, v));
        }
    }
    let mut content = zero.clone();
    for (_, v) in &out {
        content = content.gcd_with(v);
        if content.is_unit() {
            return Some(out);
        }
    }
    if !content.is_zero_entry() {
        for (_, v) in &mut out {
            *v = v.div_exact(&content);
        }
    }
    Some(out)
}

fn eliminate<T: Entry>(rows: &[SparseRow]) -> Option<usize> {
    let mut pivots: BTreeMap<usize, Vec<(usize, T)>> = BTreeMap::new();
    for row in rows {
        let mut r: Vec<(usize, T)> = row.iter().map(|&(c, v)| (c, T::from_i64(v))).collect();
        while let Some(&(lead, _)) = r.first() {
            match pivots.get(&lead) {
                Some(s) => r = reduce(&r, s)?,
                None => {
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn rank_mod_p(rows: &[SparseRow], p: u64) -> usize {
    let mut pivots: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
    for row in rows {
        let mut r: Vec<(usize, u64)> = row
            .iter()
            .map(|&(c, v)| (c, v.rem_euclid(p as i64) as u64))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&(lead, c)) = r.first() {
            let Some(s) = pivots.get(&lead) else {
                // normalise to a monic pivot
                let inv = pow_mod(c, p - 2, p);
                for (_, v) in &mut r {
                    *v = *v * inv % p;
                }
                pivots.insert(lead, r);
                break;
            };
            let mut out = Vec::with_capacity(r.len() + s.len());
            let (mut i, mut j) = (1, 1);
            while i < r.len() || j < s.len() {
                let (col, v) = match (r.get(i), s.get(j)) {
                    (Some(x), Some(y)) if x.0 == y.0 => {
                        i += 1;
                        j += 1;
                        (x.0, (x.1 + p - c * y.1 % p) % p)
                    }
                    (Some(x), Some(y)) if x.0 < y.0 => {
                        i += 1;
                        (x.0, x.1)
                    }
                    (Some(x), None) => {
                        i += 1;
                        (x.0, x.1)
                    }
                    (_, Some(y)) => {
                        j += 1;
                        (y.0, (p - c * y.1 % p) % p)
                    }
                    (None, None) => unreachable!(),
                };
                if v != 0 {
                    out.push((col, v));
                }
            }
            r = out;
        }
    }
    pivots.len()
}
