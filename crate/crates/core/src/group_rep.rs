//! Reductive groups as presented data, symmetric representations, Levi
//! subgroups and central quotients.

use crate::error::{Error, Result};
use crate::lattice::{
    common_kernel, integer_kernel, lattice_coordinates, pair_unchecked, Cocharacter, RationalSubspace, Weight,
};
use crate::weyl::{generate, pointwise_stabilizer, FiniteGroup, GroupElement, DEFAULT_ELEMENT_CAP};

/// Sorted multiset of weights, stored with repetition.
pub type WeightMultiset = Vec<Weight>;

pub fn multiset(mut v: Vec<Weight>) -> WeightMultiset {
    v.sort();
    v
}

/// Expand `(weight, multiplicity)` pairs into a sorted multiset.
pub fn multiset_from_pairs(pairs: &[(Weight, usize)]) -> WeightMultiset {
    multiset(pairs.iter().flat_map(|(w, m)| std::iter::repeat_n(w.clone(), *m)).collect())
}

/// Whether `v` contains every weight with the same multiplicity as its negative.
pub fn is_negation_stable(v: &[Weight]) -> bool {
    let negated = multiset(v.iter().map(Weight::neg).collect());
    negated.as_slice() == v
}

/// Whether a sorted sub-multiset relation `a ⊆ b` holds.
pub fn multiset_includes(b: &[Weight], a: &[Weight]) -> bool {
    let mut j = 0;
    for x in a {
        while j < b.len() && &b[j] < x {
            j += 1;
        }
        if j == b.len() || &b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

fn acts_on_multiset(g: &GroupElement, v: &[Weight]) -> bool {
    multiset(v.iter().map(|b| g.act_weight(b)).collect()).as_slice() == v
}

/// A reductive group given by its maximal torus rank, root multiset and Weyl
/// group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub rank: usize,
    pub roots: WeightMultiset,
    pub weyl: FiniteGroup,
    pub dim: usize,
    pub label: String,
}

/// Named group families understood by [`build_standard`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupFamily {
    Torus(usize),
    Gl(usize),
    /// `SL(n)` on its rank `n - 1` coroot lattice.
    Sl(usize),
    Product(Vec<GroupFamily>),
}

impl GroupDescriptor {
    /// Validates raw data: roots nonzero and negation-stable, Weyl generators
    /// invertible and permuting the roots.
    pub fn from_raw(
        rank: usize,
        roots: Vec<Weight>,
        weyl_generators: Vec<Vec<Vec<i64>>>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let roots = multiset(roots);
        for r in &roots {
            if r.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: r.rank() });
            }
            if r.is_zero() {
                return Err(Error::InvalidGroup("zero root".into()));
            }
        }
        if !is_negation_stable(&roots) {
            return Err(Error::InvalidGroup("root multiset is not symmetric".into()));
        }
        let gens = weyl_generators.into_iter().map(GroupElement::from_matrix).collect::<Result<Vec<_>>>()?;
        for g in &gens {
            if g.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: g.rank() });
            }
            if !acts_on_multiset(g, &roots) {
                return Err(Error::InvalidGroup(format!("Weyl generator {g:?} does not permute the roots")));
            }
        }
        let weyl = generate(rank, &gens, DEFAULT_ELEMENT_CAP)?;
        let dim = rank + roots.len();
        Ok(Self { rank, roots, weyl, dim, label: label.into() })
    }

    /// Weyl group order.
    pub fn weyl_order(&self) -> usize {
        self.weyl.order()
    }
}

fn permutation_matrix(perm: &[usize]) -> Vec<Vec<i64>> {
    let n = perm.len();
    // column j has its 1 in row perm[j]: e_j -> e_perm[j]
    (0..n).map(|i| (0..n).map(|j| i64::from(perm[j] == i)).collect()).collect()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from(i == j)).collect()
}

fn gl(n: usize) -> Result<GroupDescriptor> {
    let mut roots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut v = vec![0; n];
                v[i] = 1;
                v[j] = -1;
                roots.push(Weight(v));
            }
        }
    }
    let gens = (0..n.saturating_sub(1))
        .map(|i| {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(i, i + 1);
            permutation_matrix(&p)
        })
        .collect();
    GroupDescriptor::from_raw(n, roots, gens, format!("gl({n})"))
}

/// Coordinates of the weight `e_i` restricted to the coroot lattice of
/// `SL(n)`, in the basis of simple coroots `e_j - e_{j+1}`.
fn sl_weight(n: usize, i: usize) -> Vec<i64> {
    (0..n - 1).map(|j| i64::from(i == j) - i64::from(i == j + 1)).collect()
}

fn sl(n: usize) -> Result<GroupDescriptor> {
    if n < 2 {
        return Err(Error::InvalidGroup("sl(n) needs n >= 2".into()));
    }
    let r = n - 1;
    let mut roots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let (a, b) = (sl_weight(n, i), sl_weight(n, j));
                roots.push(Weight(a.iter().zip(&b).map(|(x, y)| x - y).collect()));
            }
        }
    }
    // The transposition (i i+1) sends the coroot e_a - e_{a+1} to
    // e_s(a) - e_s(a+1), re-expanded in simple coroots.
    let coroot = |a: usize, b: usize| -> Vec<i64> {
        // e_a - e_b in simple coroots
        let mut v = vec![0i64; r];
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        for x in v.iter_mut().take(hi).skip(lo) {
            *x = sign;
        }
        v
    };
    let gens = (0..r)
        .map(|i| {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(i, i + 1);
            let cols: Vec<Vec<i64>> = (0..r).map(|a| coroot(p[a], p[a + 1])).collect();
            (0..r).map(|row| (0..r).map(|col| cols[col][row]).collect()).collect()
        })
        .collect();
    GroupDescriptor::from_raw(r, roots, gens, format!("sl({n})"))
}

/// Block-diagonal product of descriptors.
pub fn product(factors: &[GroupDescriptor]) -> Result<GroupDescriptor> {
    let rank: usize = factors.iter().map(|f| f.rank).sum();
    let mut roots = Vec::new();
    let mut gens = Vec::new();
    let mut offset = 0;
    for f in factors {
        for r in &f.roots {
            let mut v = vec![0; rank];
            v[offset..offset + f.rank].copy_from_slice(&r.0);
            roots.push(Weight(v));
        }
        for g in f.weyl.generators() {
            let mut m: Vec<Vec<i64>> = (0..rank).map(|i| unit(rank, i)).collect();
            for (i, row) in g.matrix().iter().enumerate() {
                m[offset + i][offset..offset + f.rank].copy_from_slice(row);
            }
            gens.push(m);
        }
        offset += f.rank;
    }
    let label = factors.iter().map(|f| f.label.as_str()).collect::<Vec<_>>().join("×");
    GroupDescriptor::from_raw(rank, roots, gens, label)
}

/// Builds a descriptor for one of the standard families.
pub fn build_standard(family: &GroupFamily) -> Result<GroupDescriptor> {
    match family {
        GroupFamily::Torus(r) => GroupDescriptor::from_raw(*r, Vec::new(), Vec::new(), format!("torus({r})")),
        GroupFamily::Gl(n) => gl(*n),
        GroupFamily::Sl(n) => sl(*n),
        GroupFamily::Product(fs) => {
            let built = fs.iter().map(build_standard).collect::<Result<Vec<_>>>()?;
            product(&built)
        }
    }
}

/// Builds a standard family from its name and integer parameter.
pub fn build_named(name: &str, param: usize) -> Result<GroupDescriptor> {
    let family = match name {
        "torus" => GroupFamily::Torus(param),
        "gl" => GroupFamily::Gl(param),
        "sl" => GroupFamily::Sl(param),
        other => return Err(Error::UnknownFamily(other.to_string())),
    };
    build_standard(&family)
}

/// A representation given by its weight multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetricRep {
    pub rank: usize,
    pub weights: WeightMultiset,
}

impl SymmetricRep {
    pub fn new(rank: usize, weights: Vec<Weight>) -> Result<Self> {
        for w in &weights {
            if w.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: w.rank() });
            }
        }
        Ok(Self { rank, weights: multiset(weights) })
    }

    pub fn from_pairs(rank: usize, pairs: &[(Weight, usize)]) -> Result<Self> {
        Self::new(rank, multiset_from_pairs(pairs))
    }

    /// Rank-1 representation with the given integer weights.
    pub fn rank_one(weights: &[i64]) -> Self {
        Self { rank: 1, weights: multiset(weights.iter().map(|&k| Weight(vec![k])).collect()) }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn zero(rank: usize) -> Self {
        Self { rank, weights: Vec::new() }
    }
}

/// `mult(beta) = mult(-beta)` for every weight.
pub fn is_symmetric(rep: &SymmetricRep) -> bool {
    is_negation_stable(&rep.weights)
}

/// A symmetric representation together with the group acting on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairVG {
    pub rep: SymmetricRep,
    pub group: GroupDescriptor,
}

/// Canonical data identifying a pair up to equality of presentations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairKey {
    weights: WeightMultiset,
    roots: WeightMultiset,
    weyl: Vec<Vec<Vec<i64>>>,
}

impl PairVG {
    /// Checks rank agreement, symmetry, and that the Weyl group permutes the
    /// weights.
    pub fn new(rep: SymmetricRep, group: GroupDescriptor) -> Result<Self> {
        if rep.rank != group.rank {
            return Err(Error::RankMismatch { expected: group.rank, found: rep.rank });
        }
        if !is_symmetric(&rep) {
            return Err(Error::NotSymmetric);
        }
        for g in group.weyl.generators() {
            if !acts_on_multiset(g, &rep.weights) {
                return Err(Error::InvalidGroup(format!("Weyl element {g:?} does not permute the weights")));
            }
        }
        Ok(Self { rep, group })
    }

    pub fn rank(&self) -> usize {
        self.group.rank
    }

    pub fn weyl(&self) -> &FiniteGroup {
        &self.group.weyl
    }

    /// `dim V - dim G`.
    pub fn d(&self) -> i64 {
        self.rep.dim() as i64 - self.group.dim as i64
    }

    pub fn key(&self) -> PairKey {
        let mut weyl: Vec<Vec<Vec<i64>>> = self.group.weyl.elements().iter().map(|g| g.matrix().to_vec()).collect();
        weyl.sort();
        PairKey { weights: self.rep.weights.clone(), roots: self.group.roots.clone(), weyl }
    }

    /// All weights of `V` together with all roots.
    pub fn forms(&self) -> Vec<Weight> {
        self.rep.weights.iter().chain(&self.group.roots).cloned().collect()
    }

    /// The pair `(V^T', G^T')` attached to a subspace `torus` of the
    /// cocharacter space: weights and roots vanishing on it, with the Weyl
    /// group fixing it pointwise.
    pub fn fixed_pair(&self, torus: &RationalSubspace) -> PairVG {
        let weights = self.rep.weights.iter().filter(|b| torus.annihilated_by(b)).cloned().collect();
        let roots: WeightMultiset = self.group.roots.iter().filter(|b| torus.annihilated_by(b)).cloned().collect();
        let weyl = pointwise_stabilizer(&self.group.weyl, torus);
        let group = GroupDescriptor {
            rank: self.rank(),
            dim: self.rank() + roots.len(),
            roots,
            weyl,
            label: format!("{}^λ", self.group.label),
        };
        PairVG { rep: SymmetricRep { rank: self.rank(), weights }, group }
    }
}

/// The Levi subgroup `G^lambda`: roots vanishing on `lambda` and the Weyl
/// elements fixing `lambda`.
pub fn levi(group: &GroupDescriptor, lambda: &Cocharacter) -> Result<GroupDescriptor> {
    if lambda.rank() != group.rank {
        return Err(Error::RankMismatch { expected: group.rank, found: lambda.rank() });
    }
    let roots: WeightMultiset = group.roots.iter().filter(|a| pair_unchecked(lambda, a) == 0).cloned().collect();
    let span = RationalSubspace::from_int_rows(group.rank, std::slice::from_ref(&lambda.0));
    let weyl = pointwise_stabilizer(&group.weyl, &span);
    Ok(GroupDescriptor {
        rank: group.rank,
        dim: group.rank + roots.len(),
        roots,
        weyl,
        label: format!("{}^{}", group.label, lambda),
    })
}

/// Fixed subrepresentation `V^lambda`, together with
/// `d = dim V^lambda - dim G^lambda` and
/// `r = #{V-weights positive on lambda} - #{roots positive on lambda}`.
pub fn fixed_and_attracting(
    rep: &SymmetricRep,
    group: &GroupDescriptor,
    lambda: &Cocharacter,
) -> Result<(SymmetricRep, i64, i64)> {
    if lambda.rank() != rep.rank || lambda.rank() != group.rank {
        return Err(Error::RankMismatch { expected: group.rank, found: lambda.rank() });
    }
    let fixed: WeightMultiset = rep.weights.iter().filter(|b| pair_unchecked(lambda, b) == 0).cloned().collect();
    let levi_roots = group.roots.iter().filter(|a| pair_unchecked(lambda, a) == 0).count();
    let pos_v = rep.weights.iter().filter(|b| pair_unchecked(lambda, b) > 0).count() as i64;
    let pos_g = group.roots.iter().filter(|a| pair_unchecked(lambda, a) > 0).count() as i64;
    let d = fixed.len() as i64 - (group.rank + levi_roots) as i64;
    Ok((SymmetricRep { rank: rep.rank, weights: fixed }, d, pos_v - pos_g))
}

/// The pair re-expressed on `T / G_0`, where `G_0` is the identity component
/// of the central kernel of the action.
#[derive(Debug, Clone)]
pub struct CentralQuotient {
    pub pair: PairVG,
    pub g0_dim: usize,
    /// Z-basis of the weights vanishing on `Lie(G_0)`; quotient cocharacter
    /// coordinates are the pairings with these.
    pub weight_basis: Vec<Vec<i64>>,
}

impl CentralQuotient {
    pub fn restrict_weight(&self, beta: &Weight) -> Weight {
        Weight(lattice_coordinates(&self.weight_basis, &beta.0).expect("weight does not vanish on the central torus"))
    }

    pub fn restrict_cochar(&self, lambda: &Cocharacter) -> Cocharacter {
        Cocharacter(self.weight_basis.iter().map(|u| pair_unchecked(lambda, &Weight(u.clone()))).collect())
    }

    /// Induced action on the quotient lattice of an element preserving
    /// `Lie(G_0)`.
    pub fn restrict_element(&self, g: &GroupElement) -> Result<GroupElement> {
        let n = g.rank();
        let m = g.matrix();
        // row i = coordinates of M^T u_i
        let rows = self
            .weight_basis
            .iter()
            .map(|u| {
                let mt_u: Vec<i64> = (0..n).map(|j| (0..n).map(|i| m[i][j] * u[i]).sum()).collect();
                lattice_coordinates(&self.weight_basis, &mt_u)
                    .ok_or_else(|| Error::InvalidGroup("element does not preserve the central torus".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        GroupElement::from_matrix(rows)
    }
}

/// Quotients a pair by the central torus acting trivially on `V`.
pub fn central_quotient(pair: &PairVG) -> Result<CentralQuotient> {
    let r = pair.rank();
    let forms = pair.forms();
    let g0 = common_kernel(&forms, r)?;
    let g0_dim = g0.dim();
    let weight_basis = integer_kernel(&g0.integer_basis(), r)?;
    let mut cq = CentralQuotient { pair: pair.clone(), g0_dim, weight_basis };
    if g0_dim == 0 && cq.weight_basis.iter().enumerate().all(|(i, u)| u == &unit(r, i)) {
        return Ok(cq);
    }
    let weights = pair.rep.weights.iter().map(|b| cq.restrict_weight(b)).collect();
    let roots = pair.group.roots.iter().map(|b| cq.restrict_weight(b)).collect();
    let mut elements = Vec::new();
    for g in pair.group.weyl.elements() {
        let h = cq.restrict_element(g)?;
        if !elements.contains(&h) {
            elements.push(h);
        }
    }
    let k = r - g0_dim;
    let gens: Vec<GroupElement> = elements.into_iter().filter(|g| !g.is_identity()).collect();
    let weyl = generate(k, &gens, DEFAULT_ELEMENT_CAP)?;
    let roots = multiset(roots);
    let group = GroupDescriptor {
        rank: k,
        dim: pair.group.dim - g0_dim,
        roots,
        weyl,
        label: format!("{}/G0", pair.group.label),
    };
    cq.pair = PairVG { rep: SymmetricRep { rank: k, weights: multiset(weights) }, group };
    Ok(cq)
}
