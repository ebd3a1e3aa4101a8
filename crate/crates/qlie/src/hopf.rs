//! Hopf structure on a quantized algebra: coproduct, counit and antipode on
//! generators, their extension to arbitrary elements, and the checker suite
//! that verifies every Hopf axiom on the truncated model.
//!
//! Checkers scan the finite basis of normal-ordered monomials with
//! commutative degree bounded by the algebra's order and H-degree bounded by
//! a caller-chosen cap. The identities are algebra identities, so generators
//! plus multiplicativity already generate everything; the scan is deliberate
//! redundancy that catches extension bugs as well as table bugs. Residuals
//! are reported as full tensor elements: with exact arithmetic only
//! zero/nonzero matters, and nonzero residuals print entirely.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::Zero;

use crate::bialg::{MorphismSpec, Residual, ValidationReport};
use crate::error::{Error, Result};
use crate::pbw::{pbw_basis, Gen, PbwElement, PbwMonomial, QuantizedAlgebra};
use crate::rat::{rint, Rat};
use crate::tensor::{tensor_commutator, tensor_multiply, Leg, TensorElement};

/// A quantized algebra together with its generator-level Hopf tables.
#[derive(Debug)]
pub struct HopfContext {
    pub alg: QuantizedAlgebra,
    /// Coproduct of each commutative generator: the Campbell-Hausdorff
    /// polynomial with the two variable blocks split across the legs.
    pub delta_x: Vec<TensorElement>,
    /// Coproduct of each H generator: matrix column of the exponential on the
    /// first leg against the H generators on the second, plus `H (x) 1`.
    pub delta_h: Vec<TensorElement>,
    /// Antipode of each H generator.
    pub antipode_h: Vec<PbwElement>,
    // Memo for monomial coproducts; checkers revisit the same monomials
    // constantly. Never observable from outside.
    coproduct_cache: Mutex<HashMap<PbwMonomial, TensorElement>>,
}

impl Clone for HopfContext {
    fn clone(&self) -> Self {
        HopfContext {
            alg: self.alg.clone(),
            delta_x: self.delta_x.clone(),
            delta_h: self.delta_h.clone(),
            antipode_h: self.antipode_h.clone(),
            coproduct_cache: Mutex::new(HashMap::new()),
        }
    }
}

impl HopfContext {
    pub fn new(alg: QuantizedAlgebra) -> Self {
        let (dh, dv, order) = (alg.dim_h(), alg.dim_v(), alg.order);
        let mut delta_x = Vec::with_capacity(dv);
        for mu in 0..dv {
            let mut t = TensorElement::zero(2, order);
            for (e, c) in alg.bch[mu].terms() {
                let left = PbwMonomial { x_exp: e[..dv].to_vec(), h_word: Vec::new() };
                let right = PbwMonomial { x_exp: e[dv..].to_vec(), h_word: Vec::new() };
                t.add_term(&[left, right], c);
            }
            delta_x.push(t);
        }
        let mut delta_h = Vec::with_capacity(dh);
        for i in 0..dh {
            let mut t = TensorElement::zero(2, order);
            for k in 0..dh {
                let entry = alg.exp_alpha_pos.entry(k, i);
                for (e, c) in entry.terms() {
                    let left = PbwMonomial { x_exp: e.clone(), h_word: Vec::new() };
                    let right = PbwMonomial::h_gen(dv, k);
                    t.add_term(&[left, right], c);
                }
            }
            t.add_term(
                &[PbwMonomial::h_gen(dv, i), PbwMonomial::unit(dv)],
                &rint(1),
            );
            delta_h.push(t);
        }
        let mut antipode_h = Vec::with_capacity(dh);
        for i in 0..dh {
            let mut e = PbwElement::zero(order);
            for k in 0..dh {
                let entry = alg.exp_alpha_neg.entry(k, i);
                for (xe, c) in entry.terms() {
                    let m = PbwMonomial { x_exp: xe.clone(), h_word: vec![k as u32] };
                    e.add_term(&m, &-c.clone());
                }
            }
            antipode_h.push(e);
        }
        HopfContext {
            alg,
            delta_x,
            delta_h,
            antipode_h,
            coproduct_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn order(&self) -> usize {
        self.alg.order
    }

    fn legs2(&self) -> [Leg<'_>; 2] {
        [Leg::plain(&self.alg), Leg::plain(&self.alg)]
    }

    /// Coproduct of a single normal-ordered monomial, by multiplicativity.
    pub fn coproduct_mono(&self, m: &PbwMonomial) -> TensorElement {
        if let Some(hit) = self.coproduct_cache.lock().unwrap().get(m) {
            return hit.clone();
        }
        let legs = self.legs2();
        let mut acc = TensorElement::one(&legs, self.order());
        for (mu, &k) in m.x_exp.iter().enumerate() {
            for _ in 0..k {
                acc = tensor_multiply(&legs, &acc, &self.delta_x[mu]);
            }
        }
        for &i in &m.h_word {
            acc = tensor_multiply(&legs, &acc, &self.delta_h[i as usize]);
        }
        self.coproduct_cache
            .lock()
            .unwrap()
            .insert(m.clone(), acc.clone());
        acc
    }

    /// Multiplicative extension of the generator coproduct table.
    pub fn coproduct(&self, e: &PbwElement) -> TensorElement {
        assert_eq!(e.order, self.order(), "element order differs from context");
        let mut out = TensorElement::zero(2, self.order());
        for (m, c) in e.terms() {
            out = out.add(&self.coproduct_mono(m).scale(c));
        }
        out
    }

    /// Coefficient of the empty monomial; kills every generator.
    pub fn counit(&self, e: &PbwElement) -> Rat {
        e.constant_term()
    }

    /// Anti-multiplicative extension of the generator antipode table.
    pub fn antipode(&self, e: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero(self.order());
        for (m, c) in e.terms() {
            // S(x^e w) = S(H_{w_k}) ... S(H_{w_1}) S(x^e), with
            // S(x^e) = (-1)^{|e|} x^e.
            let sign = if m.x_degree() % 2 == 0 { c.clone() } else { -c.clone() };
            let x_part = PbwElement::from_monomial(
                self.order(),
                PbwMonomial { x_exp: m.x_exp.clone(), h_word: Vec::new() },
                sign,
            );
            let mut acc = x_part;
            for &i in &m.h_word {
                acc = self.alg.multiply(&self.antipode_h[i as usize], &acc);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Opposite coproduct: leg swap of the coproduct.
    pub fn coproduct_op(&self, e: &PbwElement) -> TensorElement {
        self.coproduct(e).permute_legs(&[1, 0])
    }

    fn scan_basis(&self, h_cap: usize) -> Vec<PbwMonomial> {
        pbw_basis(self.alg.dim_h(), self.alg.dim_v(), self.order(), h_cap)
    }

    fn tensor_violation(
        rep: &mut ValidationReport,
        axiom: &str,
        location: String,
        diff: &TensorElement,
        letters: &[(&str, &str)],
    ) {
        if !diff.is_zero() {
            rep.push(axiom, location, Residual::Text(diff.display_with(letters)));
        }
    }

    /// `(Delta (x) id) Delta = (id (x) Delta) Delta` on every basis monomial
    /// within the caps.
    pub fn check_coassociativity(&self, h_cap: usize) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let letters = [("X", "H"); 3];
        for m in self.scan_basis(h_cap) {
            let d = self.coproduct_mono(&m);
            let left = d.expand_leg(0, |mm| self.coproduct_mono(mm));
            let right = d.expand_leg(1, |mm| self.coproduct_mono(mm));
            Self::tensor_violation(
                &mut rep,
                "coassociativity",
                m.to_string(),
                &left.sub(&right),
                &letters,
            );
        }
        rep
    }

    /// The defining relations are respected by the coproduct:
    /// `[Delta(H_i), Delta(X^mu)] = Delta([H_i, X^mu])` and
    /// `[Delta(H_i), Delta(H_j)] = Delta([H_i, H_j])`, plus a short
    /// multiplicativity scan over low-degree basis pairs.
    pub fn check_coproduct_homomorphism(&self, h_cap: usize) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let legs = self.legs2();
        let letters = [("X", "H"); 2];
        let (dh, dv) = (self.alg.dim_h(), self.alg.dim_v());

        for i in 0..dh {
            for mu in 0..dv {
                let lhs = tensor_commutator(&legs, &self.delta_h[i], &self.delta_x[mu]);
                let rhs = self.coproduct(&self.alg.from_xpoly(&self.alg.a_series[i][mu]));
                Self::tensor_violation(
                    &mut rep,
                    "coproduct-homomorphism-HX",
                    format!("(H{i}, X{mu})"),
                    &lhs.sub(&rhs),
                    &letters,
                );
            }
        }
        for i in 0..dh {
            for j in 0..dh {
                let lhs = tensor_commutator(&legs, &self.delta_h[i], &self.delta_h[j]);
                let mut bracket = PbwElement::zero(self.order());
                for m in 0..dh {
                    bracket.add_term(
                        &PbwMonomial::h_gen(dv, m),
                        self.alg.spec.c.get(i, j, m),
                    );
                }
                let rhs = self.coproduct(&bracket);
                Self::tensor_violation(
                    &mut rep,
                    "coproduct-homomorphism-HH",
                    format!("(H{i}, H{j})"),
                    &lhs.sub(&rhs),
                    &letters,
                );
            }
        }

        // Redundant extension check on low-degree pairs.
        let small: Vec<PbwMonomial> = self
            .scan_basis(h_cap.min(1))
            .into_iter()
            .filter(|m| m.x_degree() + m.h_degree() <= 2)
            .collect();
        for u in &small {
            for v in &small {
                let ue = PbwElement::from_monomial(self.order(), u.clone(), rint(1));
                let ve = PbwElement::from_monomial(self.order(), v.clone(), rint(1));
                let lhs = self.coproduct(&self.alg.multiply(&ue, &ve));
                let rhs = tensor_multiply(&legs, &self.coproduct(&ue), &self.coproduct(&ve));
                Self::tensor_violation(
                    &mut rep,
                    "coproduct-multiplicative",
                    format!("({u}, {v})"),
                    &lhs.sub(&rhs),
                    &letters,
                );
            }
        }
        rep
    }

    /// Both antipode compositions collapse to the counit, and the antipode
    /// intertwines the defining relations.
    pub fn check_antipode_axiom(&self, h_cap: usize) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let (dh, dv) = (self.alg.dim_h(), self.alg.dim_v());
        for m in self.scan_basis(h_cap) {
            let d = self.coproduct_mono(&m);
            let mut left = PbwElement::zero(self.order());
            let mut right = PbwElement::zero(self.order());
            for (key, c) in d.terms() {
                let m1 = PbwElement::from_monomial(self.order(), key[0].clone(), rint(1));
                let m2 = PbwElement::from_monomial(self.order(), key[1].clone(), rint(1));
                left = left.add(&self.alg.multiply(&self.antipode(&m1), &m2).scale(c));
                right = right.add(&self.alg.multiply(&m1, &self.antipode(&m2)).scale(c));
            }
            let me = PbwElement::from_monomial(self.order(), m.clone(), rint(1));
            let want = self.alg.unit_element().scale(&self.counit(&me));
            for (side, got) in [("S*id", &left), ("id*S", &right)] {
                let diff = got.sub(&want);
                if !diff.is_zero() {
                    rep.push(
                        "antipode-axiom",
                        format!("{side} at {m}"),
                        Residual::Text(diff.to_string()),
                    );
                }
            }
        }

        // [S(H_i), S(X^mu)] = S([X^mu, H_i]) and the matching H-H identity.
        for i in 0..dh {
            for mu in 0..dv {
                let sh = &self.antipode_h[i];
                let sx = self
                    .alg
                    .generator(Gen::X(mu))
                    .neg();
                let lhs = self.alg.commutator(sh, &sx);
                let rhs = self.antipode(
                    &self.alg.from_xpoly(&self.alg.a_series[i][mu]).neg(),
                );
                let diff = lhs.sub(&rhs);
                if !diff.is_zero() {
                    rep.push(
                        "antipode-relation-HX",
                        format!("(H{i}, X{mu})"),
                        Residual::Text(diff.to_string()),
                    );
                }
            }
        }
        for i in 0..dh {
            for j in 0..dh {
                let lhs = self.alg.commutator(&self.antipode_h[i], &self.antipode_h[j]);
                let mut rhs = PbwElement::zero(self.order());
                for m in 0..dh {
                    rhs = rhs.add(&self.antipode_h[m].scale(self.alg.spec.c.get(j, i, m)));
                }
                let diff = lhs.sub(&rhs);
                if !diff.is_zero() {
                    rep.push(
                        "antipode-relation-HH",
                        format!("(H{i}, H{j})"),
                        Residual::Text(diff.to_string()),
                    );
                }
            }
        }

        // Series identity behind the HX case: -A(-X) = e^{-alpha X} A(X).
        for i in 0..dh {
            for mu in 0..dv {
                let lhs = self.alg.a_series[i][mu].negate_vars().neg();
                let mut rhs = crate::poly::XPoly::zero(dv, self.order());
                for k in 0..dh {
                    let e = self.alg.exp_alpha_neg.entry(k, i);
                    if !e.is_zero() {
                        rhs = rhs.add(&e.mul(&self.alg.a_series[k][mu]));
                    }
                }
                let diff = lhs.sub(&rhs);
                if !diff.is_zero() {
                    rep.push(
                        "antipode-series-identity",
                        format!("(H{i}, X{mu})"),
                        Residual::Text(diff.display_with(|v| format!("X{v}"))),
                    );
                }
            }
        }
        rep
    }

    /// `(eps (x) id) Delta = id = (id (x) eps) Delta` on the basis.
    pub fn check_counit_axiom(&self, h_cap: usize) -> ValidationReport {
        let mut rep = ValidationReport::default();
        for m in self.scan_basis(h_cap) {
            let d = self.coproduct_mono(&m);
            let me = PbwElement::from_monomial(self.order(), m.clone(), rint(1));
            for (side, leg) in [("eps*id", 0usize), ("id*eps", 1usize)] {
                let mut got = PbwElement::zero(self.order());
                for (key, c) in d.terms() {
                    let eps = if key[leg].is_unit() { rint(1) } else { Rat::zero() };
                    if !eps.is_zero() {
                        got.add_term(&key[1 - leg], &(c * &eps));
                    }
                }
                let diff = got.sub(&me);
                if !diff.is_zero() {
                    rep.push(
                        "counit-axiom",
                        format!("{side} at {m}"),
                        Residual::Text(diff.to_string()),
                    );
                }
            }
        }
        rep
    }

    /// The degree-two antisymmetric part of the coproduct reproduces the
    /// cobracket tensors of the classical seed.
    pub fn check_semiclassical(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let (dh, dv) = (self.alg.dim_h(), self.alg.dim_v());
        let letters = [("X", "H"); 2];

        let degree2 = |t: &TensorElement| -> TensorElement {
            let mut out = TensorElement::zero(2, t.order);
            for (k, c) in t.terms() {
                let deg: usize =
                    k.iter().map(|m| m.x_degree() + m.h_degree()).sum();
                if deg == 2 {
                    out.add_term(k, c);
                }
            }
            out
        };

        for mu in 0..dv {
            let d = &self.delta_x[mu];
            let anti = degree2(&d.sub(&d.permute_legs(&[1, 0])));
            let mut want = TensorElement::zero(2, self.order());
            for r in 0..dv {
                for s in 0..dv {
                    let coef = self.alg.spec.gamma.get(mu, r, s);
                    if !coef.is_zero() {
                        want.add_term(
                            &[PbwMonomial::x_gen(dv, r), PbwMonomial::x_gen(dv, s)],
                            coef,
                        );
                    }
                }
            }
            Self::tensor_violation(
                &mut rep,
                "semiclassical-X",
                format!("X{mu}"),
                &anti.sub(&want),
                &letters,
            );
        }
        for i in 0..dh {
            let d = &self.delta_h[i];
            let anti = degree2(&d.sub(&d.permute_legs(&[1, 0])));
            let mut want = TensorElement::zero(2, self.order());
            for r in 0..dv {
                for k in 0..dh {
                    let coef = self.alg.spec.alpha.get(r, i, k);
                    if coef.is_zero() {
                        continue;
                    }
                    want.add_term(
                        &[PbwMonomial::x_gen(dv, r), PbwMonomial::h_gen(dv, k)],
                        coef,
                    );
                    want.add_term(
                        &[PbwMonomial::h_gen(dv, k), PbwMonomial::x_gen(dv, r)],
                        &-coef.clone(),
                    );
                }
            }
            Self::tensor_violation(
                &mut rep,
                "semiclassical-H",
                format!("H{i}"),
                &anti.sub(&want),
                &letters,
            );
        }
        rep
    }
}

/// Generator-level extension of a block morphism to the quantized algebras,
/// checked against multiplication, coproduct and antipode up to the caps.
/// Refuses morphisms that already fail at the classical layer.
pub fn check_hopf_morphism(
    src: &HopfContext,
    dst: &HopfContext,
    phi: &MorphismSpec,
    h_cap: usize,
) -> Result<ValidationReport> {
    let classical = crate::bialg::check_classical_morphism(&src.alg.spec, &dst.alg.spec, phi)?;
    if !classical.passed() {
        return Err(Error::InvalidSpec { report: classical });
    }
    let mut rep = ValidationReport::default();
    let order = src.order();
    let (sdh, sdv) = (src.alg.dim_h(), src.alg.dim_v());
    let (ddh, ddv) = (dst.alg.dim_h(), dst.alg.dim_v());

    let phi_x = |mu: usize| -> PbwElement {
        let mut e = PbwElement::zero(order);
        for nu in 0..ddv {
            e.add_term(&PbwMonomial::x_gen(ddv, nu), &phi.phi_v[nu][mu]);
        }
        e
    };
    let phi_h = |i: usize| -> PbwElement {
        let mut e = PbwElement::zero(order);
        for k in 0..ddh {
            e.add_term(&PbwMonomial::h_gen(ddv, k), &phi.phi_h[k][i]);
        }
        e
    };
    let phi_mono = |m: &PbwMonomial| -> PbwElement {
        let mut acc = dst.alg.unit_element();
        for (mu, &k) in m.x_exp.iter().enumerate() {
            for _ in 0..k {
                acc = dst.alg.multiply(&acc, &phi_x(mu));
            }
        }
        for &i in &m.h_word {
            acc = dst.alg.multiply(&acc, &phi_h(i as usize));
        }
        acc
    };
    let phi_elem = |e: &PbwElement| -> PbwElement {
        let mut out = PbwElement::zero(order);
        for (m, c) in e.terms() {
            out = out.add(&phi_mono(m).scale(c));
        }
        out
    };
    let phi_tensor = |t: &TensorElement| -> TensorElement {
        t.map_leg(0, &phi_mono).map_leg(1, &phi_mono)
    };

    let basis = pbw_basis(sdh, sdv, order, h_cap);
    let small: Vec<&PbwMonomial> = basis
        .iter()
        .filter(|m| m.x_degree() + m.h_degree() <= 2)
        .collect();
    for u in &small {
        for v in &small {
            let ue = PbwElement::from_monomial(order, (*u).clone(), rint(1));
            let ve = PbwElement::from_monomial(order, (*v).clone(), rint(1));
            let lhs = phi_elem(&src.alg.multiply(&ue, &ve));
            let rhs = dst.alg.multiply(&phi_elem(&ue), &phi_elem(&ve));
            let diff = lhs.sub(&rhs);
            if !diff.is_zero() {
                rep.push(
                    "morphism-multiplicative",
                    format!("({u}, {v})"),
                    Residual::Text(diff.to_string()),
                );
            }
        }
    }
    for m in &basis {
        let me = PbwElement::from_monomial(order, m.clone(), rint(1));
        let lhs = phi_tensor(&src.coproduct(&me));
        let rhs = dst.coproduct(&phi_elem(&me));
        let diff = lhs.sub(&rhs);
        if !diff.is_zero() {
            rep.push(
                "morphism-coproduct",
                m.to_string(),
                Residual::Text(diff.display_with(&[("X", "H"); 2])),
            );
        }
        let lhs = phi_elem(&src.antipode(&me));
        let rhs = dst.antipode(&phi_elem(&me));
        let diff = lhs.sub(&rhs);
        if !diff.is_zero() {
            rep.push("morphism-antipode", m.to_string(), Residual::Text(diff.to_string()));
        }
    }
    Ok(rep)
}


#[cfg(test)]
mod functoriality {
    use super::*;
    use crate::bialg::classical_double;
    use crate::pbw::build_algebra;
    use crate::samples;

    #[test]
    fn inclusion_into_the_double_is_a_hopf_morphism() {
        // H |-> H, X |-> X lands the base spec inside its double as a
        // sub-bialgebra; the generator-level extension must intertwine
        // multiplication, coproduct and antipode.
        for (name, spec) in [
            ("jordanian", samples::jordanian()),
            ("affine-dual", samples::affine_dual()),
        ] {
            let order = 3;
            let src = HopfContext::new(build_algebra(&spec, order).unwrap());
            let dspec = classical_double(&spec).unwrap();
            let dst = HopfContext::new(build_algebra(&dspec, order).unwrap());
            let mut phi = MorphismSpec {
                phi_h: vec![vec![rint(0); spec.dim_h]; dspec.dim_h],
                phi_v: vec![vec![rint(0); spec.dim_v]; dspec.dim_v],
            };
            for i in 0..spec.dim_h {
                phi.phi_h[i][i] = rint(1);
            }
            for mu in 0..spec.dim_v {
                phi.phi_v[mu][mu] = rint(1);
            }
            let rep = check_hopf_morphism(&src, &dst, &phi, 2).unwrap();
            assert!(rep.passed(), "{name} inclusion: {rep}");
        }
    }
}
