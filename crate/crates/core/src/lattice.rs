//! Cocharacter and weight lattices, their pairing, and rational subspaces
//! of the cocharacter space.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{primitive_integer, q, to_q, RowSpace, Q};

/// An element of the cocharacter lattice `Z^r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cocharacter(pub Vec<i64>);

/// A linear form on cocharacters (a character of the maximal torus).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Cocharacter {
    pub fn zero(rank: usize) -> Self {
        Cocharacter(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scaled_add(&self, scale: i64, other: &Cocharacter) -> Cocharacter {
        Cocharacter(self.0.iter().zip(&other.0).map(|(a, b)| scale * a + b).collect())
    }
}

impl Weight {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|x| -x).collect())
    }

    /// Representative of `{self, -self}` whose first nonzero entry is positive.
    pub fn up_to_sign(&self) -> (Weight, bool) {
        match self.0.iter().find(|&&x| x != 0) {
            Some(&x) if x < 0 => (self.neg(), true),
            _ => (self.clone(), false),
        }
    }

    pub fn to_q(&self) -> Vec<Q> {
        to_q(&self.0)
    }
}

impl fmt::Display for Cocharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coords(f, &self.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coords(f, &self.0)
    }
}

fn write_coords(f: &mut fmt::Formatter<'_>, v: &[i64]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// The pairing `<lambda, beta>` between cocharacters and weights.
pub fn pair(lambda: &Cocharacter, beta: &Weight) -> Result<i64> {
    if lambda.rank() != beta.rank() {
        return Err(Error::RankMismatch { expected: lambda.rank(), found: beta.rank() });
    }
    Ok(lambda.0.iter().zip(&beta.0).map(|(a, b)| a * b).sum())
}

pub fn pair_unchecked(lambda: &Cocharacter, beta: &Weight) -> i64 {
    lambda.0.iter().zip(&beta.0).map(|(a, b)| a * b).sum()
}

/// A rational subspace of the cocharacter space `Q^r`, canonical by its
/// reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalSubspace {
    space: RowSpace,
}

impl RationalSubspace {
    pub fn from_rows(ambient: usize, rows: Vec<Vec<Q>>) -> Self {
        Self { space: RowSpace::span(ambient, rows) }
    }

    pub fn from_int_rows(ambient: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(ambient, rows.iter().map(|r| to_q(r)).collect())
    }

    pub fn full(ambient: usize) -> Self {
        Self { space: RowSpace::full(ambient) }
    }

    pub fn zero(ambient: usize) -> Self {
        Self { space: RowSpace::zero(ambient) }
    }

    pub fn ambient(&self) -> usize {
        self.space.ncols
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Echelonized basis rows.
    pub fn basis(&self) -> &[Vec<Q>] {
        &self.space.rows
    }

    pub fn row_space(&self) -> &RowSpace {
        &self.space
    }

    /// Basis rows rescaled to primitive integer vectors.
    pub fn integer_basis(&self) -> Vec<Vec<i64>> {
        self.space
            .rows
            .iter()
            .map(|r| {
                primitive_integer(r)
                    .into_iter()
                    .map(|x| i64::try_from(x).expect("subspace basis entry exceeds i64"))
                    .collect()
            })
            .collect()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.space.contains(&to_q(v))
    }

    /// Whether `form` vanishes on every vector of the subspace.
    pub fn annihilated_by(&self, form: &Weight) -> bool {
        let f = form.to_q();
        self.space.rows.iter().all(|r| crate::linalg::dot(r, &f).is_zero())
    }

    pub fn is_subspace_of(&self, other: &RationalSubspace) -> bool {
        self.space.rows.iter().all(|r| other.space.contains(r))
    }

    pub fn intersect(&self, other: &RationalSubspace) -> RationalSubspace {
        let forms = self.space.annihilator().sum(&other.space.annihilator());
        RationalSubspace { space: forms.annihilator() }
    }
}

/// Canonical basis of `{v : <v, beta> = 0 for every beta in forms}`.
pub fn common_kernel(forms: &[Weight], ambient_rank: usize) -> Result<RationalSubspace> {
    for f in forms {
        if f.rank() != ambient_rank {
            return Err(Error::RankMismatch { expected: ambient_rank, found: f.rank() });
        }
    }
    let span = RowSpace::span(ambient_rank, forms.iter().map(Weight::to_q).collect());
    Ok(RationalSubspace { space: span.annihilator() })
}

/// Coefficient order used by the generic-point search: 0, 1, -1, 2, -2, ...
fn search_rank(c: i64) -> i64 {
    if c > 0 {
        2 * c - 1
    } else {
        -2 * c
    }
}

/// All coefficient tuples of length `k` with max-norm exactly `h`, in
/// lexicographic order under the search ranking `0 < 1 < -1 < 2 < -2 < ...`.
fn tuples_of_height(k: usize, h: i64) -> Vec<Vec<i64>> {
    let mut values: Vec<i64> = (-h..=h).collect();
    values.sort_by_key(|&c| search_rank(c));
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |&c| {
                    let mut t = prefix.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out.retain(|t| t.iter().map(|c| c.abs()).max().unwrap_or(0) == h);
    out
}

/// A deterministic integer point of `subspace` on which no form of `avoid`
/// vanishes.
///
/// Candidates are integer combinations of the primitive echelon basis,
/// searched by increasing max-norm `h` of the coefficient tuple; within a
/// height, tuples are ordered lexicographically with coefficients ranked
/// `0, 1, -1, 2, -2, ...`. The first candidate passing all constraints wins.
pub fn generic_point(subspace: &RationalSubspace, avoid: &[Weight]) -> Result<Cocharacter> {
    generic_point_nth(subspace, avoid, 0)
}

/// As [`generic_point`], but returns the `skip`-th valid candidate of the
/// same search order (0 gives the generic point itself).
pub fn generic_point_nth(subspace: &RationalSubspace, avoid: &[Weight], skip: usize) -> Result<Cocharacter> {
    let r = subspace.ambient();
    for f in avoid {
        if f.rank() != r {
            return Err(Error::RankMismatch { expected: r, found: f.rank() });
        }
        if subspace.annihilated_by(f) {
            return Err(Error::FormNotAvoidable(f.0.clone()));
        }
    }
    let basis = subspace.integer_basis();
    let k = basis.len();
    let mut remaining = skip;
    for h in 0.. {
        if k == 0 && h > 0 {
            break;
        }
        for coeffs in tuples_of_height(k, h) {
            let mut v = vec![0i64; r];
            for (c, b) in coeffs.iter().zip(&basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += c * y;
                }
            }
            let cand = Cocharacter(v);
            if avoid.iter().all(|f| pair_unchecked(&cand, f) != 0) {
                if remaining == 0 {
                    return Ok(cand);
                }
                remaining -= 1;
            }
        }
    }
    // Only reachable for the zero subspace with nonempty skip.
    Err(Error::InvalidInput("generic point search exhausted".into()))
}

/// Hermite-normal-form basis of the saturated lattice
/// `{x in Z^n : <row, x> = 0 for every row}`.
pub fn integer_kernel(rows: &[Vec<i64>], n: usize) -> Result<Vec<Vec<i64>>> {
    // Column operations on A (m x n), mirrored on U (n x n, columns).
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let mut next_free = 0usize;
    for row in 0..a.len() {
        // Combine columns next_free.. so that row has one nonzero among them.
        loop {
            let nz: Vec<usize> = (next_free..n).filter(|&c| a[row][c] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&c) = nz.first() {
                    swap_cols(&mut a, &mut u, c, next_free);
                    next_free += 1;
                }
                break;
            }
            // Pick the column with the smallest absolute entry and reduce the others.
            let &pc = nz.iter().min_by_key(|&&c| a[row][c].abs()).unwrap();
            for &c in &nz {
                if c == pc {
                    continue;
                }
                let f = a[row][c] / a[row][pc];
                col_axpy(&mut a, &mut u, c, pc, f)?;
            }
        }
    }
    let mut kernel: Vec<Vec<i128>> = (next_free..n).map(|c| (0..n).map(|i| u[i][c]).collect()).collect();
    hermite_rows(&mut kernel)?;
    kernel
        .into_iter()
        .map(|r| r.into_iter().map(|x| i64::try_from(x).map_err(|_| Error::Overflow)).collect())
        .collect()
}

fn swap_cols(a: &mut [Vec<i128>], u: &mut [Vec<i128>], i: usize, j: usize) {
    for r in a.iter_mut().chain(u.iter_mut()) {
        r.swap(i, j);
    }
}

/// column[dst] -= f * column[src]
fn col_axpy(a: &mut [Vec<i128>], u: &mut [Vec<i128>], dst: usize, src: usize, f: i128) -> Result<()> {
    for r in a.iter_mut().chain(u.iter_mut()) {
        let t = f.checked_mul(r[src]).ok_or(Error::Overflow)?;
        r[dst] = r[dst].checked_sub(t).ok_or(Error::Overflow)?;
    }
    Ok(())
}

/// Row Hermite normal form: positive pivots, entries above pivots reduced
/// into `[0, pivot)`.
fn hermite_rows(rows: &mut Vec<Vec<i128>>) -> Result<()> {
    let n = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..n {
        if r == rows.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let &p = nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            rows.swap(r, p);
            if nz.len() == 1 {
                break;
            }
            for i in r + 1..rows.len() {
                if rows[i][col] != 0 {
                    let f = rows[i][col] / rows[r][col];
                    let pivot = rows[r].clone();
                    sub_multiple(&mut rows[i], f, &pivot)?;
                }
            }
        }
        if rows[r][col] == 0 {
            continue;
        }
        if rows[r][col] < 0 {
            for x in rows[r].iter_mut() {
                *x = -*x;
            }
        }
        let piv = rows[r][col];
        for i in 0..r {
            let f = rows[i][col].div_euclid(piv);
            if f != 0 {
                let pivot = rows[r].clone();
                sub_multiple(&mut rows[i], f, &pivot)?;
            }
        }
        r += 1;
    }
    rows.retain(|row| row.iter().any(|&x| x != 0));
    Ok(())
}

fn sub_multiple(row: &mut [i128], f: i128, pivot: &[i128]) -> Result<()> {
    for (x, &p) in row.iter_mut().zip(pivot) {
        *x = x.checked_sub(f.checked_mul(p).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
    }
    Ok(())
}

/// Integer coordinates of `v` in the lattice basis `basis`, when they exist.
pub fn lattice_coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let k = basis.len();
    let n = v.len();
    // Solve sum c_i basis_i = v over Q via an augmented echelon system.
    let mut rows: Vec<Vec<Q>> = (0..n)
        .map(|j| {
            let mut row: Vec<Q> = basis.iter().map(|b| q(b[j])).collect();
            row.push(q(v[j]));
            row
        })
        .collect();
    let pivots = crate::linalg::rref(&mut rows);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![Q::zero(); k];
    for (row, &p) in rows.iter().zip(&pivots) {
        c[p] = row[k].clone();
    }
    c.iter()
        .map(|x| if x.is_integer() { i64::try_from(x.to_integer()).ok() } else { None })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pair(&Cocharacter(vec![1, 0]), &w(&[0, 1])).unwrap(), 0);
        assert_eq!(pair(&Cocharacter(vec![2, -1]), &w(&[1, 1])).unwrap(), 1);
        assert_eq!(pair(&Cocharacter(vec![1]), &w(&[-1])).unwrap(), -1);
        assert!(matches!(pair(&Cocharacter(vec![1]), &w(&[1, 0])), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn common_kernel_examples() {
        let k = common_kernel(&[w(&[1, -1])], 2).unwrap();
        assert_eq!(k, RationalSubspace::from_int_rows(2, &[vec![1, 1]]));
        assert_eq!(common_kernel(&[], 2).unwrap(), RationalSubspace::full(2));
        assert_eq!(common_kernel(&[w(&[1, 0]), w(&[0, 1])], 2).unwrap().dim(), 0);
    }

    #[test]
    fn generic_point_examples() {
        let line = RationalSubspace::full(1);
        assert_eq!(generic_point(&line, &[w(&[1])]).unwrap(), Cocharacter(vec![1]));

        let diag = RationalSubspace::from_int_rows(2, &[vec![1, 1]]);
        assert!(matches!(generic_point(&diag, &[w(&[1, -1])]), Err(Error::FormNotAvoidable(_))));

        let plane = RationalSubspace::full(2);
        let p = generic_point(&plane, &[w(&[1, 0]), w(&[0, 1]), w(&[1, -1])]).unwrap();
        assert_eq!(p, Cocharacter(vec![1, -1]));
    }

    #[test]
    fn generic_point_zero_when_nothing_to_avoid() {
        let plane = RationalSubspace::full(2);
        assert_eq!(generic_point(&plane, &[]).unwrap(), Cocharacter(vec![0, 0]));
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // x1 + x2 = 0 in Z^2
        assert_eq!(integer_kernel(&[vec![1, 1]], 2).unwrap(), vec![vec![1, -1]]);
        // 2x1 - 4x2 = 0 -> (2, 1)
        assert_eq!(integer_kernel(&[vec![2, -4]], 2).unwrap(), vec![vec![2, 1]]);
        // no constraint -> standard basis
        assert_eq!(integer_kernel(&[], 2).unwrap(), vec![vec![1, 0], vec![0, 1]]);
        // full rank -> empty
        assert!(integer_kernel(&[vec![1, 0], vec![0, 3]], 2).unwrap().is_empty());
    }

    #[test]
    fn lattice_coords() {
        let basis = vec![vec![1, -1, 0], vec![0, 1, -1]];
        assert_eq!(lattice_coordinates(&basis, &[1, 0, -1]), Some(vec![1, 1]));
        assert_eq!(lattice_coordinates(&basis, &[1, 0, 0]), None);
    }

    #[test]
    fn tuple_order() {
        let t = tuples_of_height(2, 1);
        assert_eq!(t[0], vec![0, 1]);
        assert_eq!(t[1], vec![0, -1]);
        assert_eq!(t[2], vec![1, 0]);
        assert_eq!(t.len(), 8);
    }
}
