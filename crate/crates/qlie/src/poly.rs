//! Truncated multivariate polynomials, univariate series coefficients, and
//! matrices of polynomials.
//!
//! Everything here is exact: coefficients are [`Rat`], truncation drops whole
//! monomials of total degree above the order, and zero coefficients are pruned
//! eagerly so equality is plain structural equality. Term maps are `BTreeMap`s
//! keyed by dense exponent vectors, which fixes a canonical (lexicographic)
//! iteration order for every output.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{format_rat, inv_factorial, rint, Rat};

/// Dense exponent vector; dimensions stay small here.
pub type Expo = Vec<u32>;

fn expo_degree(e: &Expo) -> usize {
    e.iter().map(|&k| k as usize).sum()
}

/// Commutative polynomial in `nvars` variables, truncated at total degree `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XPoly {
    pub nvars: usize,
    pub order: usize,
    terms: BTreeMap<Expo, Rat>,
}

impl XPoly {
    pub fn zero(nvars: usize, order: usize) -> Self {
        XPoly { nvars, order, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, order: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars, order);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize, order: usize) -> Self {
        Self::constant(nvars, order, rint(1))
    }

    /// The variable `x_idx`.
    pub fn var(nvars: usize, order: usize, idx: usize) -> Result<Self> {
        if idx >= nvars {
            return Err(Error::VarIndex { index: idx, count: nvars });
        }
        let mut p = Self::zero(nvars, order);
        if order >= 1 {
            let mut e = vec![0u32; nvars];
            e[idx] = 1;
            p.terms.insert(e, rint(1));
        }
        Ok(p)
    }

    pub fn from_terms<I: IntoIterator<Item = (Expo, Rat)>>(
        nvars: usize,
        order: usize,
        it: I,
    ) -> Self {
        let mut p = Self::zero(nvars, order);
        for (e, c) in it {
            p.add_term(&e, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Expo) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&vec![0; self.nvars])
    }

    /// Add `c * x^e` in place, pruning and truncating.
    pub fn add_term(&mut self, e: &Expo, c: &Rat) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() || expo_degree(e) > self.order {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(e);
        }
    }

    fn check_compat(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Shape(format!(
                "variable counts differ: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compat(other).expect("poly add shape");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c);
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
            return Self::zero(self.nvars, self.order);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k;
        }
        out
    }

    /// Truncated product; fails on mismatched variable counts or orders.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut out = Self::zero(self.nvars, self.order);
        for (ea, ca) in &self.terms {
            let da = expo_degree(ea);
            for (eb, cb) in &other.terms {
                if da + expo_degree(eb) > self.order {
                    continue;
                }
                let e: Expo = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(&e, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("poly mul shape")
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn diff(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::VarIndex { index: var, count: self.nvars });
        }
        let mut out = Self::zero(self.nvars, self.order);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            out.add_term(&d, &(c * rint(e[var] as i64)));
        }
        Ok(out)
    }

    /// Substitute `args[v]` for variable `v`; every argument must share a
    /// variable count and the truncation order.
    pub fn compose(&self, args: &[XPoly]) -> Result<XPoly> {
        if args.len() != self.nvars {
            return Err(Error::Shape(format!(
                "compose expects {} arguments, got {}",
                self.nvars,
                args.len()
            )));
        }
        let (tv, ord) = match args.first() {
            Some(a) => (a.nvars, a.order),
            // A polynomial in zero variables is a constant.
            None => (0, self.order),
        };
        for a in args {
            if a.nvars != tv || a.order != ord {
                return Err(Error::Shape("compose arguments disagree in shape".into()));
            }
        }
        let mut out = XPoly::zero(tv, ord);
        for (e, c) in &self.terms {
            let mut term = XPoly::constant(tv, ord, c.clone());
            for (v, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.try_mul(&args[v])?;
                    if term.is_zero() {
                        break;
                    }
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// `x_v -> -x_v` for every variable.
    pub fn negate_vars(&self) -> Self {
        let mut out = Self::zero(self.nvars, self.order);
        for (e, c) in &self.terms {
            let s = if expo_degree(e) % 2 == 0 { c.clone() } else { -c.clone() };
            out.add_term(e, &s);
        }
        out
    }

    /// Keep only terms of total degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.order);
        for (e, c) in &self.terms {
            if expo_degree(e) == d {
                out.add_term(e, c);
            }
        }
        out
    }

    /// Re-truncate to a (lower) order.
    pub fn truncated(&self, order: usize) -> Self {
        let mut out = Self::zero(self.nvars, order);
        for (e, c) in &self.terms {
            out.add_term(e, c);
        }
        out
    }

    /// Render with a caller-chosen variable namer, terms in canonical order.
    pub fn display_with<F: Fn(usize) -> String>(&self, namer: F) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        namer(v)
                    } else {
                        format!("{}^{}", namer(v), k)
                    }
                })
                .collect();
            let mono = mono.join(" ");
            parts.push(if mono.is_empty() {
                format_rat(c)
            } else if *c == rint(1) {
                mono
            } else {
                format!("{} {}", format_rat(c), mono)
            });
        }
        parts.join(" + ")
    }
}

/// Coefficients of a univariate formal series truncated at degree `order`,
/// one rational per power of the formal variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesCoeffs {
    pub coeffs: Vec<Rat>,
}

impl SeriesCoeffs {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty());
        SeriesCoeffs { coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[0] = rint(1);
        SeriesCoeffs { coeffs }
    }

    /// exp(t) = sum t^k / k!
    pub fn exp(order: usize) -> Self {
        SeriesCoeffs { coeffs: (0..=order).map(inv_factorial).collect() }
    }

    /// (e^t - 1)/t = sum t^k / (k+1)!
    pub fn expm1_over_t(order: usize) -> Self {
        SeriesCoeffs { coeffs: (0..=order).map(|k| inv_factorial(k + 1)).collect() }
    }

    /// t/(e^t - 1), computed as the reciprocal of [`Self::expm1_over_t`].
    pub fn t_over_expm1(order: usize) -> Self {
        Self::expm1_over_t(order)
            .reciprocal()
            .expect("(e^t-1)/t has unit constant term")
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "series order mismatch");
        let n = self.order();
        let mut coeffs = vec![Rat::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                let p = &self.coeffs[i] * &other.coeffs[j];
                coeffs[i + j] += p;
            }
        }
        SeriesCoeffs { coeffs }
    }

    /// Series `r` with `self * r = 1` up to the order; requires a nonzero
    /// constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::SingularSeries);
        }
        let n = self.order();
        let c0 = self.coeffs[0].recip();
        let mut out = vec![Rat::zero(); n + 1];
        out[0] = c0.clone();
        for k in 1..=n {
            let mut acc = Rat::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -acc * &c0;
        }
        Ok(SeriesCoeffs { coeffs: out })
    }
}

/// Rectangular matrix of [`XPoly`] entries sharing one shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub nvars: usize,
    pub order: usize,
    entries: Vec<XPoly>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize, nvars: usize, order: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            order,
            entries: vec![XPoly::zero(nvars, order); rows * cols],
        }
    }

    pub fn identity(n: usize, nvars: usize, order: usize) -> Self {
        let mut m = Self::zero(n, n, nvars, order);
        for i in 0..n {
            *m.entry_mut(i, i) = XPoly::one(nvars, order);
        }
        m
    }

    pub fn entry(&self, r: usize, c: usize) -> &XPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut XPoly {
        &mut self.entries[r * self.cols + c]
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = a.add(b);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = a.sub(b);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zero(self.rows, other.cols, self.nvars, self.order);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.entry(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let p = a.mul(b);
                    *out.entry_mut(r, c) = out.entry(r, c).add(&p);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(XPoly::is_zero)
    }

    /// Substitute `args` into every entry.
    pub fn compose(&self, args: &[XPoly]) -> Result<Self> {
        let (tv, ord) = match args.first() {
            Some(a) => (a.nvars, a.order),
            None => (0, self.order),
        };
        let mut out = Self::zero(self.rows, self.cols, tv, ord);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.entry_mut(r, c) = self.entry(r, c).compose(args)?;
            }
        }
        Ok(out)
    }
}

/// Sum of `s[k] M^k`, truncated. `M` must be square and every entry must have
/// zero constant term, so M is nilpotent under truncation and the sum
/// terminates.
pub fn matrix_series_apply(s: &SeriesCoeffs, m: &PolyMatrix) -> Result<PolyMatrix> {
    if m.rows != m.cols {
        return Err(Error::NonSquareMatrix);
    }
    if s.order() != m.order {
        return Err(Error::OrderMismatch(s.order(), m.order));
    }
    for r in 0..m.rows {
        for c in 0..m.cols {
            if !m.entry(r, c).constant_term().is_zero() {
                return Err(Error::ConstantTermInMatrix { row: r, col: c });
            }
        }
    }
    let n = m.order;
    // Horner: s0 + M(s1 + M(s2 + ...)).
    let mut acc = PolyMatrix::zero(m.rows, m.rows, m.nvars, m.order);
    for i in 0..m.rows {
        *acc.entry_mut(i, i) = XPoly::constant(m.nvars, m.order, s.coeffs[n].clone());
    }
    for k in (0..n).rev() {
        acc = m.mul(&acc);
        for i in 0..m.rows {
            let e = acc.entry(i, i).add(&XPoly::constant(m.nvars, m.order, s.coeffs[k].clone()));
            *acc.entry_mut(i, i) = e;
        }
    }
    Ok(acc)
}
