//! The poset of partition classes: flats of the arrangement cut out by the
//! weights and roots, with their Weyl symmetry.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::group_rep::{fixed_and_attracting, is_symmetric, multiset, multiset_includes, PairVG, WeightMultiset};
use crate::lattice::{common_kernel, generic_point, Cocharacter, RationalSubspace, Weight};
use crate::weyl::{coset_representatives, pointwise_stabilizer, setwise_stabilizer, FiniteGroup, GroupElement};

/// Canonical identifier of a class: the weights and roots vanishing on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    pub v_fixed: WeightMultiset,
    pub roots: WeightMultiset,
}

impl ClassKey {
    pub fn act(&self, g: &GroupElement) -> ClassKey {
        ClassKey {
            v_fixed: multiset(self.v_fixed.iter().map(|b| g.act_weight(b)).collect()),
            roots: multiset(self.roots.iter().map(|b| g.act_weight(b)).collect()),
        }
    }

    fn size(&self) -> usize {
        self.v_fixed.len() + self.roots.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionClass {
    pub v_fixed_key: WeightMultiset,
    pub root_key: WeightMultiset,
    pub rep_cochar: Cocharacter,
    pub torus: RationalSubspace,
    pub g_lambda_space: RationalSubspace,
    pub g_lambda_dim: usize,
    pub d: i64,
    pub r: i64,
}

impl PartitionClass {
    pub fn key(&self) -> ClassKey {
        ClassKey { v_fixed: self.v_fixed_key.clone(), roots: self.root_key.clone() }
    }

    /// The class of `lambda = 0`.
    pub fn is_trivial(&self, pair: &PairVG) -> bool {
        self.v_fixed_key == pair.rep.weights && self.root_key == pair.group.roots
    }
}

/// Builds the class of a cocharacter.
pub fn class_of(pair: &PairVG, lambda: &Cocharacter) -> Result<PartitionClass> {
    let (fixed, d, r) = fixed_and_attracting(&pair.rep, &pair.group, lambda)?;
    let roots: WeightMultiset =
        pair.group.roots.iter().filter(|a| crate::lattice::pair_unchecked(lambda, a) == 0).cloned().collect();
    let forms: Vec<Weight> = fixed.weights.iter().chain(&roots).cloned().collect();
    let torus = common_kernel(&forms, pair.rank())?;
    Ok(PartitionClass {
        v_fixed_key: fixed.weights,
        root_key: roots,
        rep_cochar: lambda.clone(),
        g_lambda_dim: torus.dim(),
        g_lambda_space: torus.clone(),
        torus,
        d,
        r,
    })
}

/// Distinct hyperplanes of the arrangement, as forms normalized up to sign.
fn hyperplanes(pair: &PairVG) -> Vec<Weight> {
    let mut hs: Vec<Weight> =
        pair.forms().iter().filter(|f| !f.is_zero()).map(|f| f.up_to_sign().0).collect();
    hs.sort();
    hs.dedup();
    hs
}

/// All partition classes, largest fixed sets first (the trivial class leads).
pub fn enumerate_classes(pair: &PairVG) -> Result<Vec<PartitionClass>> {
    if !is_symmetric(&pair.rep) {
        return Err(Error::NotSymmetric);
    }
    let r = pair.rank();
    let mut flats = vec![RationalSubspace::full(r)];
    let mut seen: HashSet<RationalSubspace> = flats.iter().cloned().collect();
    for h in hyperplanes(pair) {
        let hyper = common_kernel(std::slice::from_ref(&h), r)?;
        let mut fresh = Vec::new();
        for f in &flats {
            let meet = f.intersect(&hyper);
            if seen.insert(meet.clone()) {
                fresh.push(meet);
            }
        }
        flats.extend(fresh);
    }
    let forms = pair.forms();
    let mut classes = Vec::new();
    let mut keys = HashSet::new();
    for flat in &flats {
        let avoid: Vec<Weight> = forms.iter().filter(|f| !flat.annihilated_by(f)).cloned().collect();
        let lambda = generic_point(flat, &avoid)?;
        let class = class_of(pair, &lambda)?;
        if keys.insert(class.key()) {
            classes.push(class);
        }
    }
    classes.sort_by(|a, b| b.key().size().cmp(&a.key().size()).then_with(|| a.key().cmp(&b.key())));
    Ok(classes)
}

/// `c1 ⪯ c2`: fixed weights and roots of `c1` are sub-multisets of those of `c2`.
pub fn leq(c1: &PartitionClass, c2: &PartitionClass) -> bool {
    multiset_includes(&c2.v_fixed_key, &c1.v_fixed_key) && multiset_includes(&c2.root_key, &c1.root_key)
}

/// Classes of the fixed pair of `c`, which are exactly the classes below `c`.
pub fn subclasses_of(c: &PartitionClass, pair: &PairVG) -> Result<Vec<PartitionClass>> {
    enumerate_classes(&pair.fixed_pair(&c.torus))
}

/// Stabilizer data of one class.
#[derive(Debug, Clone)]
pub struct ClassSymmetry {
    /// Elements preserving the class.
    pub setwise: FiniteGroup,
    /// Elements fixing the preferred torus pointwise.
    pub pointwise: FiniteGroup,
    /// One lift per element of the relative Weyl group, identity first.
    pub cosets: Vec<GroupElement>,
}

#[derive(Debug, Clone)]
pub struct PosetData {
    pub classes: Vec<PartitionClass>,
    /// Class indices per Weyl orbit, orbits ordered by their least index.
    pub orbits: Vec<Vec<usize>>,
    pub symmetry: Vec<ClassSymmetry>,
    /// Covering pairs `(lower, upper)`.
    pub hasse: Vec<(usize, usize)>,
}

impl PosetData {
    pub fn orbit_of(&self, class: usize) -> usize {
        self.orbits.iter().position(|o| o.contains(&class)).expect("class outside every orbit")
    }
}

pub fn weyl_structure(classes: Vec<PartitionClass>, weyl: &FiniteGroup) -> Result<PosetData> {
    let index: HashMap<ClassKey, usize> = classes.iter().enumerate().map(|(i, c)| (c.key(), i)).collect();
    let mut orbit_id = vec![usize::MAX; classes.len()];
    let mut orbits = Vec::new();
    for i in 0..classes.len() {
        if orbit_id[i] != usize::MAX {
            continue;
        }
        let key = classes[i].key();
        let mut members = Vec::new();
        for g in weyl.elements() {
            let j = *index.get(&key.act(g)).ok_or(Error::ActionNotPermuting)?;
            if orbit_id[j] == usize::MAX {
                orbit_id[j] = orbits.len();
                members.push(j);
            } else if orbit_id[j] != orbits.len() {
                return Err(Error::ActionNotPermuting);
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }

    let mut symmetry = Vec::with_capacity(classes.len());
    for c in &classes {
        let setwise = setwise_stabilizer(weyl, &c.torus, |g, s| g.act_subspace(s));
        let pointwise = pointwise_stabilizer(weyl, &c.torus);
        if !pointwise.is_normal_in(&setwise) {
            return Err(Error::InvalidGroup("pointwise stabilizer is not normal in the class stabilizer".into()));
        }
        let cosets = coset_representatives(&setwise, &pointwise)?;
        symmetry.push(ClassSymmetry { setwise, pointwise, cosets });
    }

    let n = classes.len();
    let below = |a: usize, b: usize| a != b && leq(&classes[a], &classes[b]);
    let mut hasse = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if below(a, b) && !(0..n).any(|m| below(a, m) && below(m, b)) {
                hasse.push((a, b));
            }
        }
    }
    Ok(PosetData { classes, orbits, symmetry, hasse })
}

/// Enumerates the classes of `pair` and attaches their Weyl data.
pub fn build_poset(pair: &PairVG) -> Result<PosetData> {
    weyl_structure(enumerate_classes(pair)?, pair.weyl())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_rep::{build_standard, GroupFamily, SymmetricRep};

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn torus_pair(weights: &[i64]) -> PairVG {
        PairVG::new(SymmetricRep::rank_one(weights), build_standard(&GroupFamily::Torus(1)).unwrap()).unwrap()
    }

    fn gl2(weights: Vec<Weight>) -> PairVG {
        PairVG::new(SymmetricRep::new(2, weights).unwrap(), build_standard(&GroupFamily::Gl(2)).unwrap()).unwrap()
    }

    fn adjoint() -> PairVG {
        gl2(vec![w(&[1, -1]), w(&[-1, 1]), w(&[0, 0]), w(&[0, 0])])
    }

    fn std_dual() -> PairVG {
        gl2(vec![w(&[1, 0]), w(&[0, 1]), w(&[-1, 0]), w(&[0, -1])])
    }

    #[test]
    fn tcc_has_two_classes() {
        let p = torus_pair(&[1, -1]);
        let cs = enumerate_classes(&p).unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs[0].is_trivial(&p));
        assert_eq!(cs[0].rep_cochar, Cocharacter(vec![0]));
        assert!(cs[1].v_fixed_key.is_empty());
        assert_eq!(cs[1].rep_cochar, Cocharacter(vec![1]));
        assert_eq!((cs[1].d, cs[1].r), (-1, 1));
    }

    #[test]
    fn adjoint_classes() {
        let cs = enumerate_classes(&adjoint()).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[1].g_lambda_dim, 2);
        assert_eq!(cs[1].root_key, Vec::<Weight>::new());
        assert_eq!(cs[0].g_lambda_dim, 1);
    }

    #[test]
    fn zero_rep_has_one_class() {
        assert_eq!(enumerate_classes(&torus_pair(&[])).unwrap().len(), 1);
    }

    #[test]
    fn adjoint_symmetry() {
        let pd = build_poset(&adjoint()).unwrap();
        assert_eq!(pd.orbits, vec![vec![0], vec![1]]);
        let s = &pd.symmetry[1];
        assert_eq!((s.setwise.order(), s.pointwise.order(), s.cosets.len()), (2, 1, 2));
        assert_eq!(pd.symmetry[0].cosets.len(), 1);
        assert_eq!(pd.hasse, vec![(1, 0)]);
    }

    #[test]
    fn std_dual_line_classes_form_an_orbit() {
        let pd = build_poset(&std_dual()).unwrap();
        assert_eq!(pd.classes.len(), 5);
        let pairs: Vec<&Vec<usize>> = pd.orbits.iter().filter(|o| o.len() == 2).collect();
        assert_eq!(pairs.len(), 1);
        for &i in pairs[0] {
            assert_eq!(pd.classes[i].v_fixed_key.len(), 2);
            assert_eq!(pd.symmetry[i].cosets.len(), 1);
        }
    }

    #[test]
    fn order_relation() {
        let p = adjoint();
        let cs = enumerate_classes(&p).unwrap();
        assert!(leq(&cs[1], &cs[0]));
        assert!(!leq(&cs[0], &cs[1]));
        assert_eq!(subclasses_of(&cs[0], &p).unwrap().len(), 2);
        let sub = subclasses_of(&cs[1], &p).unwrap();
        assert_eq!(sub.len(), 1);
        assert_eq!(sub[0].key(), cs[1].key());
    }

    #[test]
    fn non_symmetric_rejected() {
        let p = PairVG {
            rep: SymmetricRep::rank_one(&[1]),
            group: build_standard(&GroupFamily::Torus(1)).unwrap(),
        };
        assert_eq!(enumerate_classes(&p).unwrap_err(), Error::NotSymmetric);
    }
}
