//! BPS characters, their isotypic assembly, and the integrality check.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use serde::Serialize;

use crate::coh::{class_kernel, image_at_degree, invariant_basis_ordered, molien_series, trace_on, GradedCharacter};
use crate::error::{Error, Result};
use crate::group_rep::{build_standard, central_quotient, is_symmetric, GroupFamily, PairKey, PairVG, SymmetricRep};
use crate::lattice::{RationalSubspace, Weight};
use crate::linalg::{q, q_to_i64, RowSpace, Q};
use crate::poset::{build_poset, ClassKey};
use crate::sign::epsilon;
use crate::weyl::GroupElement;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineOptions {
    /// Walk monomials and classes in reverse order.
    pub reversed: bool,
    /// Drop one factor of every induction kernel.
    pub corrupt_kernel: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpsRecord {
    pub class_key: ClassKey,
    /// Character of the relative Weyl group, in shifted degrees of the pair.
    pub p_char: GradedCharacter,
    pub g_lambda_dim: usize,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitContribution {
    pub classes: Vec<usize>,
    pub v_fixed_key: Vec<Weight>,
    pub root_key: Vec<Weight>,
    pub g_lambda_dim: usize,
    pub relative_weyl_order: usize,
    pub epsilon: Vec<i32>,
    pub bps_dims: BTreeMap<i64, i64>,
    pub dims: BTreeMap<i64, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralityReport {
    pub target_series: BTreeMap<i64, i64>,
    pub contributions: Vec<OrbitContribution>,
    /// Target minus the sum of contributions, for every degree in the window.
    pub residual: BTreeMap<i64, i64>,
    pub verified_to: i64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rank1Report {
    pub expected: BTreeMap<i64, i64>,
    pub computed: BTreeMap<i64, i64>,
    pub mismatches: Vec<i64>,
    pub matches: bool,
}

type Graded = Arc<(RowSpace, RowSpace)>;

/// Runs the recursion, caching ambient and image subspaces per quotient pair
/// and polynomial degree.
#[derive(Debug, Default)]
pub struct BpsEngine {
    pub options: EngineOptions,
    memo: Mutex<HashMap<(PairKey, usize), Graded>>,
}

fn to_int(x: &Q, degree: i64) -> Result<i64> {
    q_to_i64(x).ok_or(Error::NonIntegralDimension(degree))
}

impl BpsEngine {
    pub fn new(options: EngineOptions) -> Self {
        Self { options, memo: Mutex::default() }
    }

    /// The BPS character of the trivial class of `pair`, as traces of
    /// `lifts` (identity first), in shifted degrees `<= cutoff`.
    pub fn bps_character(&self, pair: &PairVG, lifts: &[GroupElement], cutoff: i64) -> Result<BpsRecord> {
        if !is_symmetric(&pair.rep) {
            return Err(Error::NotSymmetric);
        }
        let cq = central_quotient(pair)?;
        let qpair = &cq.pair;
        let qlifts = lifts.iter().map(|g| cq.restrict_element(g)).collect::<Result<Vec<_>>>()?;
        let poset = build_poset(qpair)?;
        let mut reps: Vec<usize> =
            poset.orbits.iter().map(|o| o[0]).filter(|&i| !poset.classes[i].is_trivial(qpair)).collect();
        if self.options.reversed {
            reps.reverse();
        }
        let kernels = reps
            .iter()
            .map(|&i| class_kernel(&poset.classes[i], qpair, self.options.corrupt_kernel))
            .collect::<Result<Vec<_>>>()?;

        let d = pair.d();
        let nvars = qpair.rank();
        let window = (pair.rep.dim() + pair.group.dim) as i64;
        let key = qpair.key();
        let mut p_char = GradedCharacter::zero(lifts.len(), cutoff);
        let mut p = 0usize;
        while 2 * p as i64 - d <= cutoff {
            let a = 2 * p as i64 - d;
            let cached = self.memo.lock().expect("memo poisoned").get(&(key.clone(), p)).cloned();
            let spaces = match cached {
                Some(s) => s,
                None => {
                    let ambient = invariant_basis_ordered(qpair.weyl(), p, self.options.reversed);
                    let image = image_at_degree(&kernels, nvars, p, self.options.reversed)?;
                    let s = Arc::new((ambient, image));
                    self.memo.lock().expect("memo poisoned").insert((key.clone(), p), s.clone());
                    s
                }
            };
            let (ambient, image) = &*spaces;
            let dim = ambient.dim() as i64 - image.dim() as i64;
            if dim < 0 {
                return Err(Error::ComplementIllDefined { degree: a, dim });
            }
            if dim > 0 {
                if a.abs() > window {
                    return Err(Error::UnboundedSupport(a));
                }
                let traces = qlifts
                    .iter()
                    .map(|g| Ok(trace_on(ambient, nvars, p, g)? - trace_on(image, nvars, p, g)?))
                    .collect::<Result<Vec<_>>>()?;
                p_char.entries.insert(a, traces);
            }
            p += 1;
        }
        let stable = !p_char.is_zero();
        Ok(BpsRecord {
            class_key: ClassKey { v_fixed: pair.rep.weights.clone(), roots: pair.group.roots.clone() },
            p_char,
            g_lambda_dim: cq.g0_dim,
            stable,
        })
    }

    pub fn verify_integrality(&self, pair: &PairVG, cutoff: i64) -> Result<IntegralityReport> {
        let poset = build_poset(pair)?;
        let d = pair.d();
        let full = RationalSubspace::full(pair.rank());
        let window = (pair.rep.dim() + pair.group.dim) as i64;

        let mut target = BTreeMap::new();
        let max_p = usize::try_from((cutoff + d).max(-1) / 2).unwrap_or(0);
        if -d <= cutoff {
            let mut sums = vec![Q::zero(); max_p + 1];
            for g in pair.weyl().elements() {
                for (s, t) in sums.iter_mut().zip(molien_series(g, &full, max_p)?) {
                    *s += t;
                }
            }
            let order = q(pair.weyl().order() as i64);
            for (p, s) in sums.iter().enumerate() {
                let n = 2 * p as i64 - d;
                let v = to_int(&(s / &order), n)?;
                if v != 0 {
                    target.insert(n, v);
                }
            }
        }

        let mut contributions = Vec::new();
        for orbit in &poset.orbits {
            let i = orbit[0];
            let c = &poset.classes[i];
            let lifts = &poset.symmetry[i].cosets;
            let eps = lifts.iter().map(|g| epsilon(c, g, pair)).collect::<Result<Vec<_>>>()?;
            let sub = pair.fixed_pair(&c.torus);
            let record = self.bps_character(&sub, lifts, cutoff)?;
            let dims = isotypic_dims(&record.p_char, &c.g_lambda_space, lifts, &eps, cutoff)?;
            contributions.push(OrbitContribution {
                classes: orbit.clone(),
                v_fixed_key: c.v_fixed_key.clone(),
                root_key: c.root_key.clone(),
                g_lambda_dim: c.g_lambda_dim,
                relative_weyl_order: lifts.len(),
                epsilon: eps,
                bps_dims: record.p_char.dims(),
                dims,
            });
        }

        let mut residual = BTreeMap::new();
        let low = target
            .keys()
            .chain(contributions.iter().flat_map(|c| c.dims.keys()))
            .copied()
            .min()
            .unwrap_or(-window)
            .min(-window);
        for n in low..=cutoff {
            let sum: i64 = contributions.iter().map(|c| c.dims.get(&n).copied().unwrap_or(0)).sum();
            residual.insert(n, target.get(&n).copied().unwrap_or(0) - sum);
        }
        let pass = residual.values().all(|&r| r == 0);
        Ok(IntegralityReport { target_series: target, contributions, residual, verified_to: cutoff, pass })
    }

    /// Compares the BPS space of a rank-1 torus representation against the
    /// closed form: one dimension in each shifted degree
    /// `-(dim V - 1 - 2j)`, `j < sum_{k>0} dim V_k`.
    pub fn rank1_conjecture_check(&self, rep: &SymmetricRep, cutoff: i64) -> Result<Rank1Report> {
        if rep.rank != 1 {
            return Err(Error::NotRankOne(format!("rank {}", rep.rank)));
        }
        if !is_symmetric(rep) {
            return Err(Error::NotSymmetric);
        }
        let g = rep.weights.iter().filter(|w| w.0[0] > 0).count() as i64;
        if g == 0 {
            return Err(Error::InvalidInput("the torus acts trivially".into()));
        }
        let dim_v = rep.dim() as i64;
        let expected: BTreeMap<i64, i64> =
            (0..g).map(|j| -(dim_v - 1 - 2 * j)).filter(|&n| n <= cutoff).map(|n| (n, 1)).collect();
        let pair = PairVG::new(rep.clone(), build_standard(&GroupFamily::Torus(1))?)?;
        let computed = self.bps_character(&pair, &[GroupElement::identity(1)], cutoff)?.p_char.dims();
        let mismatches: Vec<i64> = expected
            .keys()
            .chain(computed.keys())
            .copied()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .filter(|n| expected.get(n) != computed.get(n))
            .collect();
        Ok(Rank1Report { matches: mismatches.is_empty(), expected, computed, mismatches })
    }
}

/// Dimensions of the `eps`-isotypic part of `p ⊗ Sym(g_lambda^*)` in shifted
/// degrees `a + 2b <= cutoff`, averaging over `lifts`.
pub fn isotypic_dims(
    p: &GradedCharacter,
    g_lambda_space: &RationalSubspace,
    lifts: &[GroupElement],
    eps: &[i32],
    cutoff: i64,
) -> Result<BTreeMap<i64, i64>> {
    let Some(&low) = p.entries.keys().next() else {
        return Ok(BTreeMap::new());
    };
    let max_b = usize::try_from((cutoff - low).max(0) / 2).unwrap_or(0);
    let series = lifts.iter().map(|g| molien_series(g, g_lambda_space, max_b)).collect::<Result<Vec<_>>>()?;
    let mut acc: BTreeMap<i64, Q> = BTreeMap::new();
    for (&a, traces) in &p.entries {
        for b in 0..=max_b {
            let n = a + 2 * b as i64;
            if n > cutoff {
                break;
            }
            let mut s = Q::zero();
            for ((t, e), m) in traces.iter().zip(eps).zip(&series) {
                s += t * &m[b] * q(i64::from(*e));
            }
            *acc.entry(n).or_insert_with(Q::zero) += s;
        }
    }
    let order = q(lifts.len() as i64);
    let mut out = BTreeMap::new();
    for (n, s) in acc {
        let v = to_int(&(s / &order), n)?;
        if v != 0 {
            out.insert(n, v);
        }
    }
    Ok(out)
}

pub fn bps_character(pair: &PairVG, cutoff: i64) -> Result<BpsRecord> {
    BpsEngine::default().bps_character(pair, &[GroupElement::identity(pair.rank())], cutoff)
}

pub fn verify_integrality(pair: &PairVG, cutoff: i64) -> Result<IntegralityReport> {
    BpsEngine::default().verify_integrality(pair, cutoff)
}

pub fn rank1_conjecture_check(rep: &SymmetricRep, cutoff: i64) -> Result<Rank1Report> {
    BpsEngine::default().rank1_conjecture_check(rep, cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::generate;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn torus_pair(weights: &[i64]) -> PairVG {
        PairVG::new(SymmetricRep::rank_one(weights), build_standard(&GroupFamily::Torus(1)).unwrap()).unwrap()
    }

    fn adjoint() -> PairVG {
        PairVG::new(
            SymmetricRep::new(2, vec![w(&[1, -1]), w(&[-1, 1]), w(&[0, 0]), w(&[0, 0])]).unwrap(),
            build_standard(&GroupFamily::Gl(2)).unwrap(),
        )
        .unwrap()
    }

    fn dims(v: &[(i64, i64)]) -> BTreeMap<i64, i64> {
        v.iter().copied().collect()
    }

    #[test]
    fn tcc() {
        assert_eq!(bps_character(&torus_pair(&[1, -1]), 21).unwrap().p_char.dims(), dims(&[(-1, 1)]));
        let rep = verify_integrality(&torus_pair(&[1, -1]), 21).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.contributions[0].dims, dims(&[(-1, 1)]));
        assert_eq!(rep.contributions[1].dims, (0..11).map(|j| (1 + 2 * j, 1)).collect());
    }

    #[test]
    fn tcc2() {
        assert_eq!(bps_character(&torus_pair(&[1, 1, -1, -1]), 21).unwrap().p_char.dims(), dims(&[(-3, 1), (-1, 1)]));
        assert!(verify_integrality(&torus_pair(&[1, 1, -1, -1]), 21).unwrap().pass);
    }

    #[test]
    fn adjoint_gl2() {
        let rec = bps_character(&adjoint(), 20).unwrap();
        assert!(!rec.stable);
        let rep = verify_integrality(&adjoint(), 20).unwrap();
        assert!(rep.pass);
        let nonzero: Vec<_> = rep.contributions.iter().filter(|c| !c.dims.is_empty()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].dims, rep.target_series);
    }

    #[test]
    fn zero_rep() {
        let rep = verify_integrality(&torus_pair(&[]), 10).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.contributions.len(), 1);
    }

    #[test]
    fn isotypic_examples() {
        let mut p = GradedCharacter::zero(1, 9);
        p.entries.insert(1, vec![q(1)]);
        let got = isotypic_dims(&p, &RationalSubspace::full(1), &[GroupElement::identity(1)], &[1], 9).unwrap();
        assert_eq!(got, dims(&[(1, 1), (3, 1), (5, 1), (7, 1), (9, 1)]));

        let s2 = generate(2, &[GroupElement::from_matrix(vec![vec![0, 1], vec![1, 0]]).unwrap()], 10).unwrap();
        let lifts = s2.elements().to_vec();
        let mut p = GradedCharacter::zero(2, 12);
        p.entries.insert(0, vec![q(1), q(1)]);
        let full = RationalSubspace::full(2);
        // 1/((1-t^2)(1-t^4)) and t^2/((1-t^2)(1-t^4)) in t^2-steps
        let sym = isotypic_dims(&p, &full, &lifts, &[1, 1], 12).unwrap();
        assert_eq!(sym, dims(&[(0, 1), (2, 1), (4, 2), (6, 2), (8, 3), (10, 3), (12, 4)]));
        let alt = isotypic_dims(&p, &full, &lifts, &[1, -1], 12).unwrap();
        assert_eq!(alt, dims(&[(2, 1), (4, 1), (6, 2), (8, 2), (10, 3), (12, 3)]));
    }

    #[test]
    fn rank1_examples() {
        let r = rank1_conjecture_check(&SymmetricRep::rank_one(&[1, -1]), 20).unwrap();
        assert!(r.matches);
        assert_eq!(r.expected, dims(&[(-1, 1)]));
        let r = rank1_conjecture_check(&SymmetricRep::rank_one(&[1, 1, -1, -1]), 20).unwrap();
        assert_eq!(r.computed, dims(&[(-3, 1), (-1, 1)]));
        let r = rank1_conjecture_check(&SymmetricRep::rank_one(&[2, 1, -1, -2]), 20).unwrap();
        assert!(r.matches);
        assert_eq!(r.computed, dims(&[(-3, 1), (-1, 1)]));
        let rank2 = SymmetricRep::new(2, vec![]).unwrap();
        assert!(matches!(rank1_conjecture_check(&rank2, 5), Err(Error::NotRankOne(_))));
    }

    #[test]
    fn corrupt_kernel_breaks_tcc() {
        let eng = BpsEngine::new(EngineOptions { corrupt_kernel: true, ..Default::default() });
        let rep = eng.verify_integrality(&torus_pair(&[1, -1]), 21).unwrap();
        assert!(!rep.pass);
    }
}
