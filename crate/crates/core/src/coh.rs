//! Invariant polynomial rings, graded traces and induction operators.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group_rep::PairVG;
use crate::lattice::{Cocharacter, RationalSubspace, Weight};
use crate::linalg::{reversed_char_poly, series_inverse, RowSpace, Q};
use crate::poly::{MonomialIndex, Poly};
use crate::poset::{PartitionClass, PosetData};
use crate::sign::k_for_cochar;
use crate::weyl::{coset_representatives, pointwise_stabilizer, FiniteGroup, GroupElement};

/// Traces of a finite set of group elements (identity first) on a graded
/// space, keyed by shifted degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCharacter {
    pub group_order: usize,
    pub entries: BTreeMap<i64, Vec<Q>>,
    pub cutoff: i64,
}

impl GradedCharacter {
    pub fn zero(group_order: usize, cutoff: i64) -> Self {
        Self { group_order, entries: BTreeMap::new(), cutoff }
    }

    /// Identity traces, omitting zero degrees.
    pub fn dims(&self) -> BTreeMap<i64, i64> {
        self.entries
            .iter()
            .filter_map(|(&n, t)| {
                let d = crate::linalg::q_to_i64(&t[0]).expect("dimension is not an integer");
                (d != 0).then_some((n, d))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|t| t.iter().all(Zero::is_zero))
    }
}

/// A subspace of the degree-`p` polynomials for each `p`, in monomial
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubspace {
    pub nvars: usize,
    pub parts: BTreeMap<usize, RowSpace>,
}

impl GradedSubspace {
    pub fn dim(&self, degree: usize) -> usize {
        self.parts.get(&degree).map_or(0, RowSpace::dim)
    }
}

/// Symmetrizes monomials; `reversed` walks them in the opposite order.
pub fn invariant_basis_ordered(group: &FiniteGroup, degree: usize, reversed: bool) -> RowSpace {
    let index = MonomialIndex::new(group.rank(), degree);
    let mut monomials = index.monomials.clone();
    if reversed {
        monomials.reverse();
    }
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut covered = vec![false; index.len()];
    for e in monomials {
        if covered[index.position(&e).unwrap()] {
            continue;
        }
        let m = Poly::monomial(e, Q::one());
        let mut sum = Poly::zero(group.rank());
        for g in group.elements() {
            sum.add_assign(&m.act(g));
        }
        if sum.is_zero() {
            continue;
        }
        let v = sum.to_coords(&index);
        // A monomial already inside an orbit sum gives the same sum again
        // whenever the group acts by signed permutations.
        if group.elements().iter().all(is_signed_permutation) {
            for (i, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    covered[i] = true;
                }
            }
        }
        rows.push(v);
    }
    RowSpace::span(index.len(), rows)
}

fn is_signed_permutation(g: &GroupElement) -> bool {
    g.matrix().iter().all(|row| row.iter().filter(|&&c| c != 0).count() == 1)
}

/// Degree-`degree` polynomials invariant under `group`.
pub fn invariant_basis(group: &FiniteGroup, degree: usize) -> RowSpace {
    invariant_basis_ordered(group, degree, false)
}

/// Traces of `g` on `Sym^b(S^*)` for `b = 0..=max_degree`.
pub fn molien_series(g: &GroupElement, s: &RationalSubspace, max_degree: usize) -> Result<Vec<Q>> {
    let a = g
        .inverse()
        .restrict_to(s)
        .ok_or_else(|| Error::InvalidInput(format!("{g:?} does not preserve the subspace")))?;
    Ok(series_inverse(&reversed_char_poly(&a), max_degree))
}

pub fn molien_trace(g: &GroupElement, s: &RationalSubspace, degree: usize) -> Result<Q> {
    Ok(molien_series(g, s, degree)?.swap_remove(degree))
}

/// `f -> sum over W/W^lambda of w (f e_lambda)`, with `e_lambda` the
/// positive `V`-weights over the positive roots.
#[derive(Debug, Clone)]
pub struct InductionKernel {
    pub lambda: Cocharacter,
    pub levi: FiniteGroup,
    /// Polynomial degree added by the operator.
    pub shift: i64,
    nvars: usize,
    cosets: Vec<GroupElement>,
    multipliers: Vec<Poly>,
    denominators: Vec<Weight>,
}

/// Builds the operator for `lambda`, with source invariants taken under
/// `levi` (which must fix `lambda`). `corrupt` drops one factor of the
/// kernel.
pub fn induction_kernel(
    pair: &PairVG,
    lambda: &Cocharacter,
    levi: &FiniteGroup,
    corrupt: bool,
) -> Result<InductionKernel> {
    let n = pair.rank();
    let mut k = k_for_cochar(lambda, pair);
    if corrupt {
        if !k.numerator.is_empty() {
            k.numerator.remove(0);
        } else if !k.denominator.is_empty() {
            k.denominator.remove(0);
        }
    }
    let cosets = coset_representatives(pair.weyl(), levi)?;

    let mut per_coset = Vec::with_capacity(cosets.len());
    let mut common: BTreeMap<Weight, usize> = BTreeMap::new();
    for w in &cosets {
        let num = Poly::product(n, k.numerator.iter().map(|b| Poly::linear(&w.act_weight(b))).collect::<Vec<_>>().iter());
        let mut sign_negative = false;
        let mut counts: BTreeMap<Weight, usize> = BTreeMap::new();
        for a in &k.denominator {
            let (canon, flipped) = w.act_weight(a).up_to_sign();
            sign_negative ^= flipped;
            *counts.entry(canon).or_default() += 1;
        }
        for (f, &m) in &counts {
            let e = common.entry(f.clone()).or_default();
            *e = (*e).max(m);
        }
        per_coset.push((num, sign_negative, counts));
    }
    let multipliers = per_coset
        .into_iter()
        .map(|(num, neg, counts)| {
            let mut p = if neg { num.scale(&-Q::one()) } else { num };
            for (f, &m) in &common {
                let used = counts.get(f).copied().unwrap_or(0);
                if m > used {
                    p = p.mul(&Poly::linear(f).pow((m - used) as u32));
                }
            }
            p
        })
        .collect();
    let denominators = common.iter().flat_map(|(f, &m)| std::iter::repeat_n(f.clone(), m)).collect();
    Ok(InductionKernel {
        lambda: lambda.clone(),
        levi: levi.clone(),
        shift: k.numerator.len() as i64 - k.denominator.len() as i64,
        nvars: n,
        cosets,
        multipliers,
        denominators,
    })
}

/// The operator for a class, using its representative and the pointwise
/// stabilizer of its torus.
pub fn class_kernel(c: &PartitionClass, pair: &PairVG, corrupt: bool) -> Result<InductionKernel> {
    let levi = pointwise_stabilizer(pair.weyl(), &c.torus);
    induction_kernel(pair, &c.rep_cochar, &levi, corrupt)
}

impl InductionKernel {
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        let mut s = Poly::zero(self.nvars);
        for (w, p) in self.cosets.iter().zip(&self.multipliers) {
            s.add_assign(&f.act(w).mul(p));
        }
        for d in &self.denominators {
            let (quot, rem) = s.div_linear(d);
            if !rem.is_zero() {
                return Err(Error::DenominatorDoesNotClear(self.lambda.0.clone()));
            }
            s = quot;
        }
        Ok(s)
    }

    /// Images of a basis of source invariants of polynomial degree
    /// `source_degree`, in monomial coordinates of the target degree.
    pub fn images(&self, source_degree: usize, reversed: bool) -> Result<Vec<Vec<Q>>> {
        let target = source_degree as i64 + self.shift;
        if target < 0 {
            return Ok(Vec::new());
        }
        let src_index = MonomialIndex::new(self.nvars, source_degree);
        let dst_index = MonomialIndex::new(self.nvars, target as usize);
        let basis = invariant_basis_ordered(&self.levi, source_degree, reversed);
        basis
            .rows
            .iter()
            .map(|row| Ok(self.apply(&Poly::from_coords(&src_index, row))?.to_coords(&dst_index)))
            .collect()
    }
}

/// Matrix of induction from a class in the bases of source and target
/// invariants: row `i` holds the target coordinates of the image of the
/// `i`-th source basis vector.
pub fn induction_matrix(c: &PartitionClass, pair: &PairVG, poly_degree: usize) -> Result<Vec<Vec<Q>>> {
    let kernel = class_kernel(c, pair, false)?;
    let target_degree = poly_degree as i64 + kernel.shift;
    if target_degree < 0 {
        return Ok(Vec::new());
    }
    let ambient = invariant_basis(pair.weyl(), target_degree as usize);
    kernel
        .images(poly_degree, false)?
        .iter()
        .map(|v| ambient.coordinates(v).ok_or(Error::DenominatorDoesNotClear(c.rep_cochar.0.clone())))
        .collect()
}

/// Span of the images of all kernels in polynomial degree `degree`.
pub fn image_at_degree(kernels: &[InductionKernel], nvars: usize, degree: usize, reversed: bool) -> Result<RowSpace> {
    let mut rows = Vec::new();
    for k in kernels {
        let src = degree as i64 - k.shift;
        if src < 0 {
            continue;
        }
        rows.extend(k.images(src as usize, reversed)?);
    }
    let len = MonomialIndex::new(nvars, degree).len();
    Ok(RowSpace::span(len, rows))
}

/// Trace of `g` acting on a `g`-stable subspace of degree-`degree`
/// polynomials.
pub fn trace_on(space: &RowSpace, nvars: usize, degree: usize, g: &GroupElement) -> Result<Q> {
    if g.is_identity() {
        return Ok(crate::linalg::q(space.dim() as i64));
    }
    let index = MonomialIndex::new(nvars, degree);
    let mut tr = Q::zero();
    for (i, row) in space.rows.iter().enumerate() {
        let image = Poly::from_coords(&index, row).act(g).to_coords(&index);
        let coords = space.coordinates(&image).ok_or(Error::LiftNotPreserving { degree })?;
        tr += &coords[i];
    }
    Ok(tr)
}

/// Image of the inductions from one representative class per nontrivial
/// orbit, with the traces of `lifts` on it, in shifted degrees `2p - d`.
pub fn image_graded_character(
    pair: &PairVG,
    poset: &PosetData,
    lifts: &[GroupElement],
    d: i64,
    cutoff: i64,
) -> Result<(GradedSubspace, GradedCharacter)> {
    let kernels = poset
        .orbits
        .iter()
        .map(|o| &poset.classes[o[0]])
        .filter(|c| !c.is_trivial(pair))
        .map(|c| class_kernel(c, pair, false))
        .collect::<Result<Vec<_>>>()?;
    let nvars = pair.rank();
    let mut sub = GradedSubspace { nvars, parts: BTreeMap::new() };
    let mut ch = GradedCharacter::zero(lifts.len(), cutoff);
    let mut p = 0usize;
    while 2 * p as i64 - d <= cutoff {
        let img = image_at_degree(&kernels, nvars, p, false)?;
        let traces = lifts.iter().map(|g| trace_on(&img, nvars, p, g)).collect::<Result<Vec<_>>>()?;
        if img.dim() > 0 {
            ch.entries.insert(2 * p as i64 - d, traces);
        }
        sub.parts.insert(p, img);
        p += 1;
    }
    Ok((sub, ch))
}
