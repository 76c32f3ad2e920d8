//! Structural checks shared by the property tests and the acceptance run.
//! Each returns a description of the first violation.

use std::collections::BTreeMap;

use cohint::bps::{BpsEngine, EngineOptions};
use cohint::coh::{induction_kernel, invariant_basis, molien_series};
use cohint::group_rep::PairVG;
use cohint::lattice::{common_kernel, generic_point_nth, pair_unchecked, Cocharacter, RationalSubspace, Weight};
use cohint::linalg::{q, Q};
use cohint::poly::{MonomialIndex, Poly};
use cohint::poset::{build_poset, class_of, leq, PosetData};
use cohint::sign::{epsilon, epsilon_for_cochar};
use cohint::weyl::{pointwise_stabilizer, FiniteGroup};

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poset(pair: &PairVG) -> Result<PosetData, String> {
    build_poset(pair).map_err(|e| e.to_string())
}

/// (a) `d_lambda + 2 r_lambda = d` on every class.
pub fn degree_balance(pair: &PairVG) -> Check {
    for c in &poset(pair)?.classes {
        ensure(c.d + 2 * c.r == pair.d(), || format!("class {:?}: d {} r {}", c.rep_cochar, c.d, c.r))?;
    }
    Ok(())
}

/// (b) The sign is a character of the class stabilizer, trivial on the
/// pointwise stabilizer, and independent of the chosen representative.
pub fn sign_character(pair: &PairVG) -> Check {
    let pd = poset(pair)?;
    for (c, sym) in pd.classes.iter().zip(&pd.symmetry) {
        let forms = pair.forms();
        let avoid: Vec<Weight> = forms.iter().filter(|f| !c.torus.annihilated_by(f)).cloned().collect();
        let other = generic_point_nth(&c.torus, &avoid, 1).ok();
        let eps = |g: &cohint::weyl::GroupElement| epsilon(c, g, pair).map_err(|e| e.to_string());
        for g in sym.setwise.elements() {
            let e = eps(g)?;
            if let Some(mu) = &other {
                let e2 = epsilon_for_cochar(mu, g, pair).map_err(|e| e.to_string())?;
                ensure(e == e2, || format!("sign depends on representative at {g:?}"))?;
            }
            for h in sym.setwise.elements() {
                let gh = g.compose(h);
                ensure(eps(&gh)? == e * eps(h)?, || format!("sign not multiplicative at {g:?}, {h:?}"))?;
            }
        }
        for h in sym.pointwise.elements() {
            ensure(eps(h)? == 1, || format!("sign nontrivial on pointwise stabilizer at {h:?}"))?;
        }
    }
    Ok(())
}

/// (c) Induction along a chain `c1 ⪯ c2 ⪯ c3` equals the composite of the
/// two steps, in every shifted degree up to `max_shifted`.
pub fn associativity(pair: &PairVG, max_shifted: i64) -> Check {
    let pd = poset(pair)?;
    let n = pd.classes.len();
    let levi = |i: usize| pointwise_stabilizer(pair.weyl(), &pd.classes[i].torus);
    for i1 in 0..n {
        for i2 in 0..n {
            for i3 in 0..n {
                let (c1, c2, c3) = (&pd.classes[i1], &pd.classes[i2], &pd.classes[i3]);
                if !(leq(c1, c2) && leq(c2, c3)) {
                    continue;
                }
                let p3 = pair.fixed_pair(&c3.torus);
                let p2 = pair.fixed_pair(&c2.torus);
                let mu = &c1.rep_cochar;
                let lambda = &c2.rep_cochar;
                let big = 1 + pair.forms().iter().map(|f| pair_unchecked(mu, f).abs()).max().unwrap_or(0);
                let nu: Cocharacter = lambda.scaled_add(big, mu);
                let err = |e: cohint::Error| e.to_string();
                let direct = induction_kernel(&p3, &nu, &levi(i1), false).map_err(err)?;
                let first = induction_kernel(&p2, mu, &levi(i1), false).map_err(err)?;
                let second = induction_kernel(&p3, lambda, &levi(i2), false).map_err(err)?;
                ensure(direct.shift == first.shift + second.shift, || "degree shifts disagree".into())?;
                for src in (0usize..).take_while(|&s| 2 * s as i64 - c1.d <= max_shifted) {
                    let index = MonomialIndex::new(pair.rank(), src);
                    for row in &invariant_basis(&levi(i1), src).rows {
                        let f = Poly::from_coords(&index, row);
                        let lhs = direct.apply(&f).map_err(err)?;
                        let rhs = second.apply(&first.apply(&f).map_err(err)?).map_err(err)?;
                        ensure(lhs == rhs, || format!("chain {i1} ⪯ {i2} ⪯ {i3} fails in source degree {src}"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// (d) The pointwise stabilizer is normal in the setwise stabilizer.
pub fn normality(pair: &PairVG) -> Check {
    let pd = poset(pair)?;
    for (i, sym) in pd.symmetry.iter().enumerate() {
        ensure(sym.pointwise.is_normal_in(&sym.setwise), || format!("class {i}: not normal"))?;
        ensure(sym.cosets.len() * sym.pointwise.order() == sym.setwise.order(), || format!("class {i}: coset count"))?;
    }
    Ok(())
}

/// (e) Every stored torus is the common kernel of its own fixed data, and
/// its representative reproduces the class.
pub fn preferred_representative(pair: &PairVG) -> Check {
    for c in &poset(pair)?.classes {
        let forms: Vec<Weight> = c.v_fixed_key.iter().chain(&c.root_key).cloned().collect();
        let again = common_kernel(&forms, pair.rank()).map_err(|e| e.to_string())?;
        ensure(again == c.torus, || format!("class {:?}: torus not a fixed point", c.rep_cochar))?;
        ensure(again == c.g_lambda_space && c.g_lambda_dim == again.dim(), || "g_lambda mismatch".into())?;
        let rebuilt = class_of(pair, &c.rep_cochar).map_err(|e| e.to_string())?;
        ensure(rebuilt.key() == c.key(), || "representative changes class".into())?;
    }
    Ok(())
}

/// Dimension of degree-`d` invariants by explicit Reynolds averaging of each
/// monomial and a rank count, independent of the library's basis routine.
fn brute_invariant_dim(group: &FiniteGroup, degree: usize) -> usize {
    let index = MonomialIndex::new(group.rank(), degree);
    let rows: Vec<Vec<Q>> = index
        .monomials
        .iter()
        .map(|e| {
            let m = Poly::monomial(e.clone(), q(1));
            let mut s = Poly::zero(group.rank());
            for g in group.elements() {
                s.add_assign(&m.act(g));
            }
            s.to_coords(&index)
        })
        .collect();
    let mut rows = rows;
    cohint::linalg::rref(&mut rows);
    rows.len()
}

/// (f) Averaged Molien traces equal invariant dimensions, for `W` and every
/// pointwise stabilizer.
pub fn molien_consistency(pair: &PairVG, max_degree: usize) -> Check {
    let pd = poset(pair)?;
    let mut groups = vec![pair.weyl().clone()];
    groups.extend(pd.symmetry.iter().map(|s| s.pointwise.clone()));
    let full = RationalSubspace::full(pair.rank());
    for g in &groups {
        let mut avg = vec![Q::from_integer(0.into()); max_degree + 1];
        for e in g.elements() {
            for (a, t) in avg.iter_mut().zip(molien_series(e, &full, max_degree).map_err(|e| e.to_string())?) {
                *a += t;
            }
        }
        for (d, a) in avg.iter().enumerate() {
            let m = a / q(g.order() as i64);
            let brute = brute_invariant_dim(g, d);
            ensure(m == q(brute as i64), || format!("degree {d}: Molien {m} vs {brute}"))?;
            ensure(invariant_basis(g, d).dim() == brute, || format!("degree {d}: basis dimension"))?;
        }
    }
    Ok(())
}

/// (g) Reversing basis and class order changes no character.
pub fn order_independence(pair: &PairVG, cutoff: i64) -> Check {
    let a = BpsEngine::default().verify_integrality(pair, cutoff).map_err(|e| e.to_string())?;
    let b = BpsEngine::new(EngineOptions { reversed: true, ..Default::default() })
        .verify_integrality(pair, cutoff)
        .map_err(|e| e.to_string())?;
    ensure(a == b, || "reports differ under reversed order".into())
}

/// (h) Every BPS character lives within `±(dim V + dim G)`.
pub fn finite_support(pair: &PairVG, cutoff: i64) -> Check {
    let window = (pair.rep.dim() + pair.group.dim) as i64;
    let rep = BpsEngine::default().verify_integrality(pair, cutoff).map_err(|e| e.to_string())?;
    for c in &rep.contributions {
        let bad: BTreeMap<_, _> = c.bps_dims.iter().filter(|(n, _)| n.abs() > window).collect();
        ensure(bad.is_empty(), || format!("support outside window: {bad:?}"))?;
    }
    Ok(())
}

pub fn all(pair: &PairVG) -> Vec<(&'static str, Check)> {
    vec![
        ("(a) d + 2r = d", degree_balance(pair)),
        ("(b) sign character", sign_character(pair)),
        ("(c) associativity", associativity(pair, 10)),
        ("(d) normality", normality(pair)),
        ("(e) preferred representative", preferred_representative(pair)),
        ("(f) Molien vs brute force", molien_consistency(pair, 10)),
        ("(g) order independence", order_independence(pair, 12)),
        ("(h) finite support", finite_support(pair, 16)),
    ]
}
