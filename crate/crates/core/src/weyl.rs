//! Finite matrix groups acting on the cocharacter lattice.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Cocharacter, RationalSubspace, Weight};
use crate::linalg::{q, q_to_i64, Q};

/// Default bound on the number of elements produced by [`generate`].
pub const DEFAULT_ELEMENT_CAP: usize = 10_080;

/// An invertible integer matrix acting on cocharacters by `lambda -> M lambda`
/// and on weights contragrediently, `beta -> (M^-1)^T beta`.
#[derive(Clone)]
pub struct GroupElement {
    matrix: Vec<Vec<i64>>,
    inverse: Vec<Vec<i64>>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.matrix.cmp(&other.matrix)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.matrix)
    }
}

impl GroupElement {
    pub fn identity(rank: usize) -> Self {
        let m: Vec<Vec<i64>> = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        Self { matrix: m.clone(), inverse: m }
    }

    /// Builds an element from a square integer matrix, rejecting matrices
    /// that are not invertible over the integers.
    pub fn from_matrix(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::NonInvertibleGenerator(format!("{matrix:?} is not square")));
        }
        let inverse = integer_inverse(&matrix)
            .ok_or_else(|| Error::NonInvertibleGenerator(format!("{matrix:?}")))?;
        Ok(Self { matrix, inverse })
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &[Vec<i64>] {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
    }

    /// `self * other`, i.e. first `other`, then `self`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement { matrix: mat_mul(&self.matrix, &other.matrix), inverse: mat_mul(&other.inverse, &self.inverse) }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    pub fn act_cochar(&self, lambda: &Cocharacter) -> Cocharacter {
        Cocharacter(self.matrix.iter().map(|row| row.iter().zip(&lambda.0).map(|(a, b)| a * b).sum()).collect())
    }

    /// Contragredient action, so that `<w lambda, w beta> = <lambda, beta>`.
    pub fn act_weight(&self, beta: &Weight) -> Weight {
        let n = self.rank();
        Weight((0..n).map(|j| (0..n).map(|i| self.inverse[i][j] * beta.0[i]).sum()).collect())
    }

    pub fn act_vector(&self, v: &[Q]) -> Vec<Q> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (&a, b)| if a == 0 { acc } else { acc + q(a) * b }))
            .collect()
    }

    pub fn act_subspace(&self, s: &RationalSubspace) -> RationalSubspace {
        RationalSubspace::from_rows(s.ambient(), s.basis().iter().map(|v| self.act_vector(v)).collect())
    }

    /// Whether the element fixes every vector of `s`.
    pub fn fixes_pointwise(&self, s: &RationalSubspace) -> bool {
        s.basis().iter().all(|v| &self.act_vector(v) == v)
    }

    /// Matrix of the restriction to an invariant subspace, in the echelon
    /// basis of that subspace (row convention: `w b_i = sum_j m[j][i] b_j`).
    pub fn restrict_to(&self, s: &RationalSubspace) -> Option<Vec<Vec<Q>>> {
        let k = s.dim();
        let mut m = vec![vec![Q::zero(); k]; k];
        for (i, b) in s.basis().iter().enumerate() {
            let coords = s.row_space().coordinates(&self.act_vector(b))?;
            for (j, c) in coords.into_iter().enumerate() {
                m[j][i] = c;
            }
        }
        Some(m)
    }

    /// Order of the element (assumed finite).
    pub fn order(&self) -> usize {
        let mut g = self.clone();
        let mut n = 1;
        while !g.is_identity() {
            g = g.compose(self);
            n += 1;
        }
        n
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn integer_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let mut rows: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Q> = r.iter().map(|&x| q(x)).collect();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    let pivots = crate::linalg::rref(&mut rows);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    rows.iter().map(|r| r[n..].iter().map(q_to_i64).collect::<Option<Vec<i64>>>()).collect()
}

/// A finite group of lattice automorphisms, stored as its full element list
/// with the identity first.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    rank: usize,
    elements: Vec<GroupElement>,
    generators: Vec<GroupElement>,
    index: HashMap<Vec<Vec<i64>>, usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.element_set() == other.element_set()
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    fn from_elements(rank: usize, elements: Vec<GroupElement>, generators: Vec<GroupElement>) -> Self {
        let index = elements.iter().enumerate().map(|(i, e)| (e.matrix.clone(), i)).collect();
        Self { rank, elements, generators, index }
    }

    pub fn trivial(rank: usize) -> Self {
        Self::from_elements(rank, vec![GroupElement::identity(rank)], Vec::new())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(&g.matrix)
    }

    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(&g.matrix).copied()
    }

    pub fn element_set(&self) -> HashSet<&GroupElement> {
        self.elements.iter().collect()
    }

    /// Subgroup made of the elements satisfying `keep`, in stored order.
    /// The predicate must cut out a subgroup.
    pub fn filter(&self, keep: impl Fn(&GroupElement) -> bool) -> FiniteGroup {
        let elements: Vec<GroupElement> = self.elements.iter().filter(|g| keep(g)).cloned().collect();
        let generators = elements.iter().filter(|g| !g.is_identity()).cloned().collect();
        FiniteGroup::from_elements(self.rank, elements, generators)
    }

    /// Whether `self` is a normal subgroup of `group`.
    pub fn is_normal_in(&self, group: &FiniteGroup) -> bool {
        self.elements.iter().all(|h| group.contains(h))
            && group.elements.iter().all(|g| {
                let gi = g.inverse();
                self.elements.iter().all(|h| self.contains(&g.compose(h).compose(&gi)))
            })
    }

    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| self.elements.iter().all(|b| self.contains(&a.compose(b))))
    }
}

/// Closure of `generators` under products, breadth first.
pub fn generate(rank: usize, generators: &[GroupElement], cap: usize) -> Result<FiniteGroup> {
    for g in generators {
        if g.rank() != rank {
            return Err(Error::RankMismatch { expected: rank, found: g.rank() });
        }
    }
    let id = GroupElement::identity(rank);
    let mut elements = vec![id.clone()];
    let mut seen: HashSet<GroupElement> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                if elements.len() == cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(FiniteGroup::from_elements(rank, elements, generators.to_vec()))
}

/// `{w : w v = v for all v in s}`.
pub fn pointwise_stabilizer(group: &FiniteGroup, s: &RationalSubspace) -> FiniteGroup {
    group.filter(|g| g.fixes_pointwise(s))
}

/// `{w : action(w, key) = key}`.
pub fn setwise_stabilizer<K: PartialEq>(
    group: &FiniteGroup,
    key: &K,
    action: impl Fn(&GroupElement, &K) -> K,
) -> FiniteGroup {
    group.filter(|g| &action(g, key) == key)
}

/// One representative per left coset `gH`, taking the first element of each
/// coset in the stored element order of `group`.
pub fn coset_representatives(group: &FiniteGroup, sub: &FiniteGroup) -> Result<Vec<GroupElement>> {
    if !sub.elements.iter().all(|h| group.contains(h)) {
        return Err(Error::NotASubgroup("elements outside the ambient group".into()));
    }
    if !sub.contains(&GroupElement::identity(group.rank)) || !sub.is_closed() {
        return Err(Error::NotASubgroup("not closed under products".into()));
    }
    if !group.order().is_multiple_of(sub.order()) {
        return Err(Error::NotASubgroup("order does not divide".into()));
    }
    let mut covered = vec![false; group.order()];
    let mut reps = Vec::new();
    for (i, g) in group.elements.iter().enumerate() {
        if covered[i] {
            continue;
        }
        reps.push(g.clone());
        for h in &sub.elements {
            let gh = g.compose(h);
            let j = group.position(&gh).expect("subgroup product left the group");
            covered[j] = true;
        }
    }
    debug_assert_eq!(reps.len() * sub.order(), group.order());
    Ok(reps)
}
