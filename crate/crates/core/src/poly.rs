//! Sparse polynomials over Q on the cocharacter space.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::lattice::Weight;
use crate::linalg::{q, Q};
use crate::weyl::GroupElement;

pub type Exponent = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], Q::one())
    }

    pub fn monomial(exp: Exponent, c: Q) -> Self {
        let mut p = Self::zero(exp.len());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn linear(form: &Weight) -> Self {
        let n = form.rank();
        let mut p = Self::zero(n);
        for (i, &c) in form.0.iter().enumerate() {
            if c != 0 {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, q(c));
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Q> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, e: Exponent, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn product<'a>(nvars: usize, factors: impl IntoIterator<Item = &'a Poly>) -> Poly {
        factors.into_iter().fold(Poly::one(nvars), |acc, f| acc.mul(f))
    }

    /// `(g f)(x) = f(g^-1 x)`.
    pub fn act(&self, g: &GroupElement) -> Poly {
        let inv = g.inverse_matrix();
        let n = self.nvars;
        // x_i -> sum_j inv[i][j] x_j
        let monomial_map: Option<Vec<(usize, i64)>> = inv
            .iter()
            .map(|row| {
                let mut nz = row.iter().enumerate().filter(|(_, &c)| c != 0);
                match (nz.next(), nz.next()) {
                    (Some((j, &c)), None) => Some((j, c)),
                    _ => None,
                }
            })
            .collect();
        if let Some(map) = monomial_map {
            let mut out = Poly::zero(n);
            for (e, c) in &self.terms {
                let mut ne = vec![0; n];
                let mut sign = 1i64;
                for (i, &k) in e.iter().enumerate() {
                    let (j, s) = map[i];
                    ne[j] += k;
                    if s < 0 && k % 2 == 1 {
                        sign = -sign;
                    }
                    debug_assert!(s == 1 || s == -1);
                }
                out.add_term(ne, c * q(sign));
            }
            return out;
        }
        let images: Vec<Poly> = inv.iter().map(|row| Poly::linear(&Weight(row.clone()))).collect();
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(n), p.clone()]).collect();
        let mut out = Poly::zero(n);
        for (e, c) in &self.terms {
            let mut t = Poly::monomial(vec![0; n], c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][k as usize]);
            }
            out.add_assign(&t);
        }
        out
    }

    /// Division by a nonzero linear form, returning `(quotient, remainder)`.
    /// The remainder is free of the variable used as pivot.
    pub fn div_linear(&self, form: &Weight) -> (Poly, Poly) {
        let j = form.0.iter().rposition(|&c| c != 0).expect("division by the zero form");
        let lead = q(form.0[j]);
        let divisor = Poly::linear(form);
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        loop {
            let best = rem.terms.iter().filter(|(e, _)| e[j] > 0).max_by(|(a, _), (b, _)| (a[j], *a).cmp(&(b[j], *b)));
            let Some((e, c)) = best else { break };
            let mut qe = e.clone();
            qe[j] -= 1;
            let qc = c / &lead;
            let step = Poly::monomial(qe.clone(), qc.clone());
            quot.add_term(qe, qc);
            rem.add_assign(&step.mul(&divisor).scale(&q(-1)));
        }
        (quot, rem)
    }

    /// Coordinates in the degree-`d` monomial list `index`.
    pub fn to_coords(&self, index: &MonomialIndex) -> Vec<Q> {
        let mut v = vec![Q::zero(); index.len()];
        for (e, c) in &self.terms {
            let i = index.position(e).expect("polynomial has a term outside the monomial basis");
            v[i] = c.clone();
        }
        v
    }

    pub fn from_coords(index: &MonomialIndex, v: &[Q]) -> Poly {
        let mut p = Poly::zero(index.nvars);
        for (e, c) in index.monomials.iter().zip(v) {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

/// The monomials of a fixed degree in a fixed number of variables, in
/// descending lexicographic order.
#[derive(Debug, Clone)]
pub struct MonomialIndex {
    pub nvars: usize,
    pub degree: usize,
    pub monomials: Vec<Exponent>,
    position: std::collections::HashMap<Exponent, usize>,
}

impl MonomialIndex {
    pub fn new(nvars: usize, degree: usize) -> Self {
        let mut monomials = Vec::new();
        fn rec(prefix: &mut Exponent, left: u32, slots: usize, out: &mut Vec<Exponent>) {
            if slots == 1 {
                prefix.push(left);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for k in (0..=left).rev() {
                prefix.push(k);
                rec(prefix, left - k, slots - 1, out);
                prefix.pop();
            }
        }
        if nvars == 0 {
            if degree == 0 {
                monomials.push(Vec::new());
            }
        } else {
            rec(&mut Vec::new(), degree as u32, nvars, &mut monomials);
        }
        let position = monomials.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Self { nvars, degree, monomials, position }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, e: &[u32]) -> Option<usize> {
        self.position.get(e).copied()
    }
}
