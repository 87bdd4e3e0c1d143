//! Exact linear systems over ℚ and F_p.
//!
//! Elimination picks pivots column by column from the left and sets free
//! variables to zero, so the returned solution is a deterministic function
//! of the system.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ring::{Coeff, Ring, RingKind};

/// Solves `a·x = b` over a field. `Ok(None)` means inconsistent.
pub fn solve(ring: &Ring, a: &[Vec<Coeff>], b: &[Coeff]) -> Result<Option<Vec<Coeff>>> {
    if !ring.is_field() {
        return Err(Error::unsupported(ring, "linear solve needs a field"));
    }
    if a.len() != b.len() {
        return Err(Error::Internal(
            "row count does not match right-hand side".into(),
        ));
    }
    let cols = a.first().map_or(0, Vec::len);
    if let RingKind::PrimeField(p) = ring.kind() {
        if let Some(p) = p.to_u64().filter(|&p| p < (1 << 31)) {
            return Ok(solve_small_prime(p, a, b, cols));
        }
    }
    let mut rows: Vec<Vec<Coeff>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = reduce(ring, &mut rows, cols);
    if rows.iter().skip(pivots.len()).any(|r| !r[cols].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![ring.zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][cols].clone();
    }
    Ok(Some(x))
}

/// Reduced row echelon form in place; returns pivot columns.
fn reduce(ring: &Ring, rows: &mut [Vec<Coeff>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = ring.inv(&rows[r][c]).expect("nonzero field element");
        for v in rows[r].iter_mut() {
            *v = ring.mul(v, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = ring.sub(v, &ring.mul(&factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

fn solve_small_prime(p: u64, a: &[Vec<Coeff>], b: &[Coeff], cols: usize) -> Option<Vec<Coeff>> {
    let residue = |c: &Coeff| match c {
        Coeff::Int(n) => n.to_u64().expect("canonical residue"),
        _ => unreachable!("prime field element"),
    };
    let mut rows: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            row.iter()
                .chain(std::iter::once(rhs))
                .map(residue)
                .collect()
        })
        .collect();
    let inv = |x: u64| pow_mod(x, p - 2, p);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let s = inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = *v * s % p;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if *pv != 0 {
                    *v = (*v + p - factor * pv % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows.iter().skip(pivots.len()).any(|row| row[cols] != 0) {
        return None;
    }
    let mut x = vec![Coeff::Int(BigInt::from(0)); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = Coeff::Int(BigInt::from(rows[i][cols]));
    }
    Some(x)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
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
