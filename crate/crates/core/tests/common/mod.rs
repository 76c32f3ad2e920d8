#![allow(dead_code)]

use cohint::group_rep::{build_standard, GroupFamily, PairVG, SymmetricRep};
use cohint::Weight;

pub fn w(v: &[i64]) -> Weight {
    Weight(v.to_vec())
}

pub fn torus1(weights: &[i64]) -> PairVG {
    PairVG::new(SymmetricRep::rank_one(weights), build_standard(&GroupFamily::Torus(1)).unwrap()).unwrap()
}

pub fn tcc() -> PairVG {
    torus1(&[1, -1])
}

pub fn tcc2() -> PairVG {
    torus1(&[1, 1, -1, -1])
}

pub fn gl2(weights: Vec<Weight>) -> PairVG {
    PairVG::new(SymmetricRep::new(2, weights).unwrap(), build_standard(&GroupFamily::Gl(2)).unwrap()).unwrap()
}

pub fn gl2_adjoint() -> PairVG {
    gl2(vec![w(&[1, -1]), w(&[-1, 1]), w(&[0, 0]), w(&[0, 0])])
}

pub fn gl2_std_dual() -> PairVG {
    gl2(vec![w(&[1, 0]), w(&[0, 1]), w(&[-1, 0]), w(&[0, -1])])
}

/// `SL(2)` on its coroot lattice: the standard weights are `±1`.
pub fn sl2_std_dual() -> PairVG {
    PairVG::new(SymmetricRep::rank_one(&[1, 1, -1, -1]), build_standard(&GroupFamily::Sl(2)).unwrap()).unwrap()
}

pub fn torus2_example() -> PairVG {
    let weights = vec![w(&[1, 0]), w(&[-1, 0]), w(&[0, 1]), w(&[0, -1]), w(&[1, 1]), w(&[-1, -1])];
    PairVG::new(SymmetricRep::new(2, weights).unwrap(), build_standard(&GroupFamily::Torus(2)).unwrap()).unwrap()
}

pub fn zero_rep() -> PairVG {
    torus1(&[])
}

pub fn all_fixtures() -> Vec<(&'static str, PairVG)> {
    vec![
        ("T*C", tcc()),
        ("T*C^2", tcc2()),
        ("gl2 adjoint", gl2_adjoint()),
        ("sl2 std+dual", sl2_std_dual()),
        ("gl2 std+dual", gl2_std_dual()),
        ("rank-2 torus", torus2_example()),
        ("zero rep", zero_rep()),
    ]
}
pub mod props;
