//! Dense exact linear algebra over the rationals.
//!
//! Vectors are plain `Vec<Q>`; subspaces are stored as the rows of their
//! reduced row-echelon form, which is canonical and therefore usable as a
//! key.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn zero_vec(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

pub fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Reduce `rows` in place to reduced row-echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(rows: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        if !inv.is_one() {
            for x in rows[r][col..].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A subspace of `Q^n` held in reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowSpace {
    pub ncols: usize,
    pub rows: Vec<Vec<Q>>,
    pub pivots: Vec<usize>,
}

impl RowSpace {
    pub fn zero(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ncols: usize) -> Self {
        let rows = (0..ncols)
            .map(|i| {
                let mut v = zero_vec(ncols);
                v[i] = Q::one();
                v
            })
            .collect();
        Self { ncols, rows, pivots: (0..ncols).collect() }
    }

    pub fn span(ncols: usize, mut rows: Vec<Vec<Q>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        let pivots = rref(&mut rows);
        Self { ncols, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` lies
    /// outside the subspace.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        let coords: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = zero_vec(self.ncols);
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in rebuilt.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x += c * y;
                }
            }
        }
        (rebuilt.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        RowSpace::span(self.ncols, rows)
    }

    /// Orthogonal complement under the standard pairing: `{x : <x, row> = 0}`.
    pub fn annihilator(&self) -> RowSpace {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect();
        let rows = free
            .iter()
            .map(|&f| {
                let mut v = zero_vec(self.ncols);
                v[f] = Q::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect();
        RowSpace::span(self.ncols, rows)
    }
}

/// Square matrix-vector product.
pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Coefficients `c_0..c_n` of `det(1 - t A) = sum c_k t^k`, via
/// Faddeev–LeVerrier.
pub fn reversed_char_poly(a: &[Vec<Q>]) -> Vec<Q> {
    let n = a.len();
    // char poly det(tI - A) = t^n + p_1 t^{n-1} + ... + p_n
    let mut p = vec![Q::one()];
    let mut m = vec![zero_vec(n); n];
    for k in 1..=n {
        // M_k = A M_{k-1} + p_{k-1} I
        let mut next = vec![zero_vec(n); n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Q::zero();
                for l in 0..n {
                    if !a[i][l].is_zero() && !m[l][j].is_zero() {
                        s += &a[i][l] * &m[l][j];
                    }
                }
                next[i][j] = s;
            }
            next[i][i] += &p[k - 1];
        }
        m = next;
        // p_k = -tr(A M_k) / k
        let mut tr = Q::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &m[l][i];
            }
        }
        p.push(-tr / q(k as i64));
    }
    p
}

/// Power-series inverse of `c` (with `c[0] = 1`) up to and including `t^order`.
pub fn series_inverse(c: &[Q], order: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); order + 1];
    out[0] = c[0].recip();
    for k in 1..=order {
        let mut s = Q::zero();
        for j in 1..=k.min(c.len() - 1) {
            s += &c[j] * &out[k - j];
        }
        out[k] = -s * &out[0];
    }
    out
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

pub fn q_to_i64(x: &Q) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.to_integer()).ok()
}

/// Scale a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer(v: &[Q]) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}
