//! Elements of tensor powers of one or several quantized algebras.
//!
//! A tensor element is a rational combination of tuples of normal-ordered
//! monomials, one per leg. Legs may live in different algebras (the canonical
//! element pairs the dual algebra with the primal one), and a leg may carry
//! the opposite multiplication, which reverses every product taken on it.
//!
//! Truncation is by the cross-leg degree: the sum over legs of each
//! monomial's commutative-sector degree. The coproduct and antipode never
//! lower that degree, so dropping everything above the order is a quotient
//! construction and every identity below the bound is exact.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::pbw::{PbwElement, PbwMonomial, QuantizedAlgebra};
use crate::rat::{format_rat, rint, Rat};

/// One leg of a tensor context: the algebra it lives in and whether products
/// on it are reversed.
#[derive(Clone, Copy)]
pub struct Leg<'a> {
    pub alg: &'a QuantizedAlgebra,
    pub op: bool,
}

impl<'a> Leg<'a> {
    pub fn plain(alg: &'a QuantizedAlgebra) -> Self {
        Leg { alg, op: false }
    }

    pub fn opposite(alg: &'a QuantizedAlgebra) -> Self {
        Leg { alg, op: true }
    }

    fn mul(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        if self.op {
            self.alg.multiply(b, a)
        } else {
            self.alg.multiply(a, b)
        }
    }
}

fn key_cross_degree(key: &[PbwMonomial]) -> usize {
    key.iter().map(PbwMonomial::x_degree).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    pub arity: usize,
    pub order: usize,
    terms: BTreeMap<Vec<PbwMonomial>, Rat>,
}

impl TensorElement {
    pub fn zero(arity: usize, order: usize) -> Self {
        TensorElement { arity, order, terms: BTreeMap::new() }
    }

    pub fn one(legs: &[Leg], order: usize) -> Self {
        let key: Vec<PbwMonomial> =
            legs.iter().map(|l| PbwMonomial::unit(l.alg.dim_v())).collect();
        let mut t = Self::zero(legs.len(), order);
        t.add_term(&key, &rint(1));
        t
    }

    /// Outer product of one element per leg.
    pub fn from_factors(legs: &[Leg], factors: &[&PbwElement], order: usize) -> Self {
        assert_eq!(legs.len(), factors.len());
        let mut t = Self::zero(legs.len(), order);
        let mut stack: Vec<(Vec<PbwMonomial>, Rat)> = vec![(Vec::new(), rint(1))];
        for f in factors {
            let mut next = Vec::new();
            for (key, c) in &stack {
                for (m, cm) in f.terms() {
                    if key_cross_degree(key) + m.x_degree() > order {
                        continue;
                    }
                    let mut nk = key.clone();
                    nk.push(m.clone());
                    next.push((nk, c * cm));
                }
            }
            stack = next;
        }
        for (key, c) in stack {
            t.add_term(&key, &c);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<PbwMonomial>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &[PbwMonomial]) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, key: &[PbwMonomial], c: &Rat) {
        debug_assert_eq!(key.len(), self.arity);
        if c.is_zero() || key_cross_degree(key) > self.order {
            return;
        }
        let e = self.terms.entry(key.to_vec()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity);
        assert_eq!(self.order, other.order);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero(self.arity, self.order);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k;
        }
        out
    }

    /// Smallest cross-leg degree present, if any; used to localize residuals.
    pub fn min_cross_degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| key_cross_degree(k)).min()
    }

    /// Reorder legs by `perm`: output leg `l` takes input leg `perm[l]`.
    pub fn permute_legs(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.arity);
        let mut out = Self::zero(self.arity, self.order);
        for (k, c) in &self.terms {
            let nk: Vec<PbwMonomial> = perm.iter().map(|&p| k[p].clone()).collect();
            out.add_term(&nk, c);
        }
        out
    }

    /// Place this element's legs at `positions` inside a wider identity
    /// tensor over `legs`.
    pub fn embed(&self, legs: &[Leg], positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.arity);
        let unit_key: Vec<PbwMonomial> =
            legs.iter().map(|l| PbwMonomial::unit(l.alg.dim_v())).collect();
        let mut out = Self::zero(legs.len(), self.order);
        for (k, c) in &self.terms {
            let mut nk = unit_key.clone();
            for (slot, &pos) in positions.iter().enumerate() {
                nk[pos] = k[slot].clone();
            }
            out.add_term(&nk, c);
        }
        out
    }

    /// Replace one leg by the image of a monomial-wise linear map into the
    /// same leg.
    pub fn map_leg<F: Fn(&PbwMonomial) -> PbwElement>(&self, leg: usize, f: F) -> Self {
        let mut out = Self::zero(self.arity, self.order);
        for (k, c) in &self.terms {
            let img = f(&k[leg]);
            for (m, cm) in img.terms() {
                let mut nk = k.clone();
                nk[leg] = m.clone();
                out.add_term(&nk, &(c * cm));
            }
        }
        out
    }

    /// Replace one leg by an arity-2 expansion of its monomials, raising the
    /// arity by one. Used for coproducts applied inside a tensor power.
    pub fn expand_leg<F: Fn(&PbwMonomial) -> TensorElement>(&self, leg: usize, f: F) -> Self {
        let mut out = Self::zero(self.arity + 1, self.order);
        for (k, c) in &self.terms {
            let img = f(&k[leg]);
            debug_assert_eq!(img.arity, 2);
            for (pair, cp) in &img.terms {
                let mut nk = Vec::with_capacity(self.arity + 1);
                nk.extend_from_slice(&k[..leg]);
                nk.push(pair[0].clone());
                nk.push(pair[1].clone());
                nk.extend_from_slice(&k[leg + 1..]);
                out.add_term(&nk, &(c * cp));
            }
        }
        out
    }

    /// Apply a scalar-valued map to one leg, lowering the arity by one.
    pub fn contract_leg<F: Fn(&PbwMonomial) -> Rat>(&self, leg: usize, f: F) -> Self {
        let mut out = Self::zero(self.arity - 1, self.order);
        for (k, c) in &self.terms {
            let s = f(&k[leg]);
            if s.is_zero() {
                continue;
            }
            let mut nk = k.clone();
            nk.remove(leg);
            out.add_term(&nk, &(c * s));
        }
        out
    }

    pub fn display_with(&self, leg_letters: &[(&str, &str)]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut lines = Vec::new();
        for (k, c) in &self.terms {
            let legs: Vec<String> = k
                .iter()
                .zip(leg_letters)
                .map(|(m, (x, h))| m.display_with(x, h))
                .collect();
            lines.push(format!("{} * ({})", format_rat(c), legs.join(" ⊗ ")));
        }
        lines.join("\n")
    }
}

/// Legwise product of two tensor elements over a shared leg context.
pub fn tensor_multiply(legs: &[Leg], a: &TensorElement, b: &TensorElement) -> TensorElement {
    assert_eq!(a.arity, b.arity, "tensor arity mismatch");
    assert_eq!(a.arity, legs.len(), "leg context arity mismatch");
    assert_eq!(a.order, b.order, "tensor order mismatch");
    let mut out = TensorElement::zero(a.arity, a.order);
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            if key_cross_degree(ka) + key_cross_degree(kb) > a.order {
                // Leg products never lower the cross degree.
                continue;
            }
            let coef = ca * cb;
            // Per-leg products, then the cartesian expansion of their terms.
            let mut partial: Vec<(Vec<PbwMonomial>, Rat)> = vec![(Vec::new(), coef)];
            for (l, leg) in legs.iter().enumerate() {
                let ea = PbwElement::from_monomial(a.order, ka[l].clone(), rint(1));
                let eb = PbwElement::from_monomial(b.order, kb[l].clone(), rint(1));
                let prod = leg.mul(&ea, &eb);
                let mut next = Vec::new();
                for (key, c) in &partial {
                    let used = key_cross_degree(key);
                    for (m, cm) in prod.terms() {
                        if used + m.x_degree() > a.order {
                            continue;
                        }
                        let mut nk = key.clone();
                        nk.push(m.clone());
                        next.push((nk, c * cm));
                    }
                }
                partial = next;
                if partial.is_empty() {
                    break;
                }
            }
            for (key, c) in partial {
                out.add_term(&key, &c);
            }
        }
    }
    out
}

/// Legwise commutator.
pub fn tensor_commutator(legs: &[Leg], a: &TensorElement, b: &TensorElement) -> TensorElement {
    tensor_multiply(legs, a, b).sub(&tensor_multiply(legs, b, a))
}
