//! The positive-weight ratio attached to a cocharacter and its sign character.

use crate::error::{Error, Result};
use crate::group_rep::{multiset, PairVG, WeightMultiset};
use crate::lattice::{pair_unchecked, Cocharacter, Weight};
use crate::poset::PartitionClass;
use crate::weyl::GroupElement;

/// Forms positive on a cocharacter: `V`-weights over roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedFormMultiset {
    pub numerator: WeightMultiset,
    pub denominator: WeightMultiset,
}

pub fn k_for_cochar(lambda: &Cocharacter, pair: &PairVG) -> SignedFormMultiset {
    let positive = |v: &[Weight]| multiset(v.iter().filter(|b| pair_unchecked(lambda, b) > 0).cloned().collect());
    SignedFormMultiset { numerator: positive(&pair.rep.weights), denominator: positive(&pair.group.roots) }
}

pub fn k_multiset(c: &PartitionClass, pair: &PairVG) -> SignedFormMultiset {
    k_for_cochar(&c.rep_cochar, pair)
}

/// Matches `g(forms)` against `forms` up to sign and returns the number of
/// sign flips. No positive set holds both `b` and `-b`, so a greedy match is
/// exact.
fn flips(g: &GroupElement, forms: &[Weight]) -> Option<usize> {
    let mut pool: Vec<Option<&Weight>> = forms.iter().map(Some).collect();
    let mut take = |target: &Weight| -> bool {
        match pool.iter_mut().find(|s| s.is_some_and(|b| b == target)) {
            Some(slot) => {
                *slot = None;
                true
            }
            None => false,
        }
    };
    let mut n = 0;
    for b in forms {
        let image = g.act_weight(b);
        if take(&image) {
            continue;
        }
        if take(&image.neg()) {
            n += 1;
            continue;
        }
        return None;
    }
    Some(n)
}

/// `g k = eps(g) k` for the ratio of the given cocharacter.
pub fn epsilon_for_cochar(lambda: &Cocharacter, g: &GroupElement, pair: &PairVG) -> Result<i32> {
    let k = k_for_cochar(lambda, pair);
    let n = flips(g, &k.numerator).ok_or_else(|| Error::KNotQuasiInvariant(format!("{g:?}")))?;
    let d = flips(g, &k.denominator).ok_or_else(|| Error::KNotQuasiInvariant(format!("{g:?}")))?;
    Ok(if (n + d) % 2 == 0 { 1 } else { -1 })
}

pub fn epsilon(c: &PartitionClass, g: &GroupElement, pair: &PairVG) -> Result<i32> {
    epsilon_for_cochar(&c.rep_cochar, g, pair)
}
