//! Howell normal form of row modules over `Z_n`.
//!
//! The form is unique for a given row span: rows are in echelon order, each
//! pivot is a divisor of `n`, entries above a pivot are reduced below it,
//! and every span element with `k` leading zeros is a combination of the
//! rows whose pivot lies at or after column `k`.

use num_integer::Integer;

use crate::residues::{unit_in_progression, Modulus};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Howell {
    modulus: Modulus,
    width: usize,
    rows: Vec<Vec<u64>>,
}

fn pivot_of(row: &[u64]) -> Option<usize> {
    row.iter().position(|&c| c != 0)
}

/// `row_a <- s row_a + t row_b`, `row_b <- p row_a + q row_b`.
fn combine(m: Modulus, ra: &mut [u64], rb: &mut [u64], s: u64, t: u64, p: u64, q: u64) {
    for (x, y) in ra.iter_mut().zip(rb.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = m.add(m.mul(s, a), m.mul(t, b));
        *y = m.add(m.mul(p, a), m.mul(q, b));
    }
}

fn axpy(m: Modulus, dst: &mut [u64], k: u64, src: &[u64]) {
    if k == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = m.add(*d, m.mul(k, s));
    }
}

impl Howell {
    /// Howell form of the span of `rows`, each of length `width`.
    pub fn new(modulus: Modulus, width: usize, rows: Vec<Vec<u64>>) -> Howell {
        let m = modulus;
        let n = m.get();
        let mut a: Vec<Vec<u64>> = rows
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), width, "row width");
                r.into_iter().map(|c| m.reduce_u(c)).collect()
            })
            .filter(|r: &Vec<u64>| pivot_of(r).is_some())
            .collect();
        let mut r = 0;
        for col in 0..width {
            if r >= a.len() {
                break;
            }
            for i in r + 1..a.len() {
                let bv = a[i][col];
                if bv == 0 {
                    continue;
                }
                let av = a[r][col];
                let eg = (av as i128).extended_gcd(&(bv as i128));
                let g = eg.gcd;
                let s = m.reduce((eg.x % n as i128) as i64);
                let t = m.reduce((eg.y % n as i128) as i64);
                let p = m.reduce(-((bv as i128 / g) as i64));
                let q = m.reduce((av as i128 / g) as i64);
                let (head, tail) = a.split_at_mut(i);
                combine(m, &mut head[r], &mut tail[0], s, t, p, q);
            }
            let pv = a[r][col];
            if pv == 0 {
                continue;
            }
            let g = pv.gcd(&n);
            let cofactor = n / g;
            let unit = if cofactor == 1 {
                1
            } else {
                let sub = Modulus::new(cofactor).expect("cofactor >= 2");
                let u0 = sub.inverse(pv / g).expect("coprime by construction");
                let k = unit_in_progression(u0, cofactor, m).expect("valid progression");
                m.reduce_u(u0 + k * cofactor)
            };
            for c in a[r].iter_mut() {
                *c = m.mul(unit, *c);
            }
            debug_assert_eq!(a[r][col], g);
            let pivot_row = a[r].clone();
            for row in a.iter_mut().take(r) {
                let qv = row[col] / g;
                axpy(m, row, m.neg(qv), &pivot_row);
            }
            let ann: Vec<u64> = pivot_row.iter().map(|&c| m.mul(cofactor, c)).collect();
            if pivot_of(&ann).is_some() {
                a.push(ann);
            }
            r += 1;
        }
        a.truncate(r);
        a.retain(|row| pivot_of(row).is_some());
        Howell {
            modulus,
            width,
            rows: a,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| pivot_of(r).expect("nonzero")).collect()
    }

    /// Remainder of `v` after reduction by the rows; zero iff `v` is in the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        let mut v: Vec<u64> = v.iter().map(|&c| m.reduce_u(c)).collect();
        for row in &self.rows {
            let p = pivot_of(row).expect("nonzero");
            let g = row[p];
            if !v[p].is_multiple_of(g) {
                return v;
            }
            let q = v[p] / g;
            axpy(m, &mut v, m.neg(q), row);
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.width, "vector width");
        pivot_of(&self.reduce(v)).is_none()
    }

    /// Submodule of vectors whose first `skip` entries vanish, with those
    /// entries dropped.
    pub fn tail(&self, skip: usize) -> Howell {
        Howell {
            modulus: self.modulus,
            width: self.width - skip,
            rows: self
                .rows
                .iter()
                .filter(|r| pivot_of(r).expect("nonzero") >= skip)
                .map(|r| r[skip..].to_vec())
                .collect(),
        }
    }

    /// Number of elements of the span, the product of `n / pivot`.
    pub fn cardinality(&self) -> u128 {
        let n = self.modulus.get() as u128;
        self.rows
            .iter()
            .map(|r| n / r[pivot_of(r).expect("nonzero")] as u128)
            .product()
    }
}

/// Howell basis of `{λ : λ M = 0}` for the matrix whose rows are `rows`.
pub fn left_kernel(modulus: Modulus, width: usize, rows: &[Vec<u64>]) -> Howell {
    let k = rows.len();
    let augmented: Vec<Vec<u64>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..k).map(|j| u64::from(i == j)));
            v
        })
        .collect();
    Howell::new(modulus, width + k, augmented).tail(width)
}
