//! Structure-constant data model for inhomogeneous Lie bialgebras and the
//! classical-layer operations: validation, dualization, the classical double,
//! classical r-matrices and their Yang-Baxter check, image subspaces, and
//! morphism checking.
//!
//! The committed index conventions, used everywhere downstream:
//!
//! * `c[i][k][m]`     — coefficient of `H_m` in `[H_i, H_k]`
//! * `a[i][mu][nu]`   — coefficient of `X^nu` in `[H_i, X^mu]`
//! * `gamma[mu][r][s]`— coefficient of `X^r (x) X^s` in the cobracket of `X^mu`
//! * `alpha[r][i][k]` — coefficient of `X^r (x) H_k - H_k (x) X^r` in the
//!   cobracket of `H_i`

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{format_rat, Rat};

/// Dense rank-3 tensor of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor3 {
    pub dims: [usize; 3],
    data: Vec<Rat>,
}

impl Tensor3 {
    pub fn zeros(d0: usize, d1: usize, d2: usize) -> Self {
        Tensor3 { dims: [d0, d1, d2], data: vec![Rat::zero(); d0 * d1 * d2] }
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < self.dims[0] && j < self.dims[1] && k < self.dims[2]);
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.data[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rat) {
        let n = self.idx(i, j, k);
        self.data[n] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    /// Nonzero entries in canonical index order.
    pub fn entries(&self) -> impl Iterator<Item = ([usize; 3], &Rat)> {
        let [_, d1, d2] = self.dims;
        self.data.iter().enumerate().filter_map(move |(n, v)| {
            if v.is_zero() {
                None
            } else {
                let k = n % d2;
                let j = (n / d2) % d1;
                let i = n / (d1 * d2);
                Some(([i, j, k], v))
            }
        })
    }
}

/// The four structure-constant tensors of an inhomogeneous Lie bialgebra,
/// plus the two dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieBialgebraSpec {
    pub dim_h: usize,
    pub dim_v: usize,
    pub c: Tensor3,
    pub a: Tensor3,
    pub gamma: Tensor3,
    pub alpha: Tensor3,
}

impl LieBialgebraSpec {
    /// All-zero spec: an abelian bialgebra at the given dimensions.
    pub fn zero(dim_h: usize, dim_v: usize) -> Self {
        LieBialgebraSpec {
            dim_h,
            dim_v,
            c: Tensor3::zeros(dim_h, dim_h, dim_h),
            a: Tensor3::zeros(dim_h, dim_v, dim_v),
            gamma: Tensor3::zeros(dim_v, dim_v, dim_v),
            alpha: Tensor3::zeros(dim_v, dim_h, dim_h),
        }
    }

    /// Tensor shapes against the declared dimensions; a mismatch is a
    /// structural error, never an axiom failure.
    pub fn shape_check(&self) -> Result<()> {
        let want = [
            ("C", &self.c, [self.dim_h, self.dim_h, self.dim_h]),
            ("A", &self.a, [self.dim_h, self.dim_v, self.dim_v]),
            ("gamma", &self.gamma, [self.dim_v, self.dim_v, self.dim_v]),
            ("alpha", &self.alpha, [self.dim_v, self.dim_h, self.dim_h]),
        ];
        for (name, t, dims) in want {
            if t.dims != dims {
                return Err(Error::Shape(format!(
                    "{name} has dims {:?}, expected {:?}",
                    t.dims, dims
                )));
            }
        }
        Ok(())
    }
}

/// Block morphism data between two specs.
///
/// `phi_h` is dim_h' x dim_h, `phi_v` is dim_v' x dim_v; the block form (no
/// mixing between the two sectors) is what compatibility with the involution
/// means at this level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismSpec {
    pub phi_h: Vec<Vec<Rat>>,
    pub phi_v: Vec<Vec<Rat>>,
}

impl MorphismSpec {
    pub fn identity(dim_h: usize, dim_v: usize) -> Self {
        let eye = |n: usize| -> Vec<Vec<Rat>> {
            (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| if r == c { crate::rat::rint(1) } else { Rat::zero() })
                        .collect()
                })
                .collect()
        };
        MorphismSpec { phi_h: eye(dim_h), phi_v: eye(dim_v) }
    }
}

/// Coefficient blocks of a classical r-matrix
/// `r = p[i][mu] H_i (x) X^mu + q[mu][i] X^mu (x) H_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalRMatrix {
    pub p: Vec<Vec<Rat>>,
    pub q: Vec<Vec<Rat>>,
}

impl ClassicalRMatrix {
    pub fn zero(dim_h: usize, dim_v: usize) -> Self {
        ClassicalRMatrix {
            p: vec![vec![Rat::zero(); dim_v]; dim_h],
            q: vec![vec![Rat::zero(); dim_h]; dim_v],
        }
    }

    pub fn shape_check(&self, spec: &LieBialgebraSpec) -> Result<()> {
        let ok_p = self.p.len() == spec.dim_h && self.p.iter().all(|r| r.len() == spec.dim_v);
        let ok_q = self.q.len() == spec.dim_v && self.q.iter().all(|r| r.len() == spec.dim_h);
        if ok_p && ok_q {
            Ok(())
        } else {
            Err(Error::Shape("r-matrix blocks do not match spec dimensions".into()))
        }
    }
}

/// Exact residual payload of a violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Residual {
    Scalar(Rat),
    /// Rendering of an element or tensor residual; exact, not a norm.
    Text(String),
}

impl std::fmt::Display for Residual {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Residual::Scalar(r) => write!(f, "{}", format_rat(r)),
            Residual::Text(s) => write!(f, "{s}"),
        }
    }
}

/// One violated axiom component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub location: String,
    pub residual: Residual,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} at {}: residual {}", self.axiom, self.location, self.residual)
    }
}

/// Exhaustive list of violated components; empty means pass.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: &str, location: String, residual: Residual) {
        self.violations.push(Violation { axiom: axiom.to_string(), location, residual });
    }

    pub fn push_scalar(&mut self, axiom: &str, indices: &[usize], residual: Rat) {
        if !residual.is_zero() {
            let loc = format!(
                "({})",
                indices.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
            );
            self.push(axiom, loc, Residual::Scalar(residual));
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn has_axiom(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed() {
            write!(f, "pass")
        } else {
            writeln!(f, "fail ({} violation(s))", self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  {v}")?;
            }
            Ok(())
        }
    }
}

pub const AXIOM_C_SKEW: &str = "C-skew";
pub const AXIOM_GAMMA_SKEW: &str = "gamma-skew";
pub const AXIOM_C_JACOBI: &str = "C-Jacobi";
pub const AXIOM_GAMMA_JACOBI: &str = "gamma-Jacobi";
pub const AXIOM_A_REP: &str = "A-representation";
pub const AXIOM_ALPHA_REP: &str = "alpha-representation";
pub const AXIOM_COCYCLE_HX: &str = "cocycle-HX";
pub const AXIOM_COCYCLE_HH: &str = "cocycle-HH";

/// Check every axiom of the category, component by component, and report each
/// violated component with its exact residual.
pub fn validate_bialgebra(spec: &LieBialgebraSpec) -> Result<ValidationReport> {
    spec.shape_check()?;
    let (dh, dv) = (spec.dim_h, spec.dim_v);
    let c = &spec.c;
    let a = &spec.a;
    let g = &spec.gamma;
    let al = &spec.alpha;
    let mut rep = ValidationReport::default();

    // Skew-symmetry.
    for i in 0..dh {
        for k in 0..=i {
            for m in 0..dh {
                let r = c.get(i, k, m) + c.get(k, i, m);
                rep.push_scalar(AXIOM_C_SKEW, &[i, k, m], r);
            }
        }
    }
    for mu in 0..dv {
        for r0 in 0..dv {
            for s in 0..=r0 {
                let r = g.get(mu, r0, s) + g.get(mu, s, r0);
                rep.push_scalar(AXIOM_GAMMA_SKEW, &[mu, r0, s], r);
            }
        }
    }

    // Jacobi identities.
    for i in 0..dh {
        for j in 0..dh {
            for k in 0..dh {
                for n in 0..dh {
                    let mut r = Rat::zero();
                    for m in 0..dh {
                        r += c.get(i, j, m) * c.get(m, k, n);
                        r += c.get(j, k, m) * c.get(m, i, n);
                        r += c.get(k, i, m) * c.get(m, j, n);
                    }
                    rep.push_scalar(AXIOM_C_JACOBI, &[i, j, k, n], r);
                }
            }
        }
    }
    for p in 0..dv {
        for q in 0..dv {
            for l in 0..dv {
                for w in 0..dv {
                    let mut r = Rat::zero();
                    for t in 0..dv {
                        r += g.get(t, p, q) * g.get(w, t, l);
                        r += g.get(t, q, l) * g.get(w, t, p);
                        r += g.get(t, l, p) * g.get(w, t, q);
                    }
                    rep.push_scalar(AXIOM_GAMMA_JACOBI, &[p, q, l, w], r);
                }
            }
        }
    }

    // Representation identity for the A-family, as forced by the Jacobi
    // identity of the semidirect sum on (H_i, H_j, X^mu).
    for i in 0..dh {
        for j in 0..dh {
            for mu in 0..dv {
                for nu in 0..dv {
                    let mut r = Rat::zero();
                    for rho in 0..dv {
                        r += a.get(j, mu, rho) * a.get(i, rho, nu);
                        r -= a.get(i, mu, rho) * a.get(j, rho, nu);
                    }
                    for m in 0..dh {
                        r -= c.get(i, j, m) * a.get(m, mu, nu);
                    }
                    rep.push_scalar(AXIOM_A_REP, &[i, j, mu, nu], r);
                }
            }
        }
    }

    // Representation identity for the alpha-family. The sign is the one
    // forced jointly by coassociativity of the quantized coproduct and by
    // the Jacobi identity of the dual bracket it encodes.
    for p in 0..dv {
        for q in 0..dv {
            for i in 0..dh {
                for k in 0..dh {
                    let mut r = Rat::zero();
                    for m in 0..dh {
                        r += al.get(p, i, m) * al.get(q, m, k);
                        r -= al.get(q, i, m) * al.get(p, m, k);
                    }
                    for t in 0..dv {
                        r -= g.get(t, p, q) * al.get(t, i, k);
                    }
                    rep.push_scalar(AXIOM_ALPHA_REP, &[p, q, i, k], r);
                }
            }
        }
    }

    // Mixed consistency on the [H,X] sector.
    for i in 0..dh {
        for mu in 0..dv {
            for p in 0..dv {
                for s in 0..dv {
                    let mut r = Rat::zero();
                    for nu in 0..dv {
                        r += a.get(i, mu, nu) * g.get(nu, p, s);
                        r -= g.get(mu, nu, s) * a.get(i, nu, p);
                        r -= g.get(mu, p, nu) * a.get(i, nu, s);
                    }
                    for k in 0..dh {
                        r -= a.get(k, mu, s) * al.get(p, i, k);
                        r += a.get(k, mu, p) * al.get(s, i, k);
                    }
                    rep.push_scalar(AXIOM_COCYCLE_HX, &[i, mu, p, s], r);
                }
            }
        }
    }

    // Mixed consistency on the [H,H] sector.
    for mu in 0..dv {
        for i in 0..dh {
            for j in 0..dh {
                for k in 0..dh {
                    let mut r = Rat::zero();
                    for m in 0..dh {
                        r += al.get(mu, m, k) * c.get(i, j, m);
                        r -= c.get(i, m, k) * al.get(mu, j, m);
                        r -= c.get(m, j, k) * al.get(mu, i, m);
                    }
                    for nu in 0..dv {
                        r -= al.get(nu, j, k) * a.get(i, nu, mu);
                        r += al.get(nu, i, k) * a.get(j, nu, mu);
                    }
                    rep.push_scalar(AXIOM_COCYCLE_HH, &[mu, i, j, k], r);
                }
            }
        }
    }

    Ok(rep)
}

/// The dual spec: dimensions swap, brackets and cobrackets trade places
/// through the committed index transpositions.
pub fn dualize(spec: &LieBialgebraSpec) -> Result<LieBialgebraSpec> {
    let rep = validate_bialgebra(spec)?;
    if !rep.passed() {
        return Err(Error::InvalidSpec { report: rep });
    }
    Ok(dualize_unchecked(spec))
}

pub(crate) fn dualize_unchecked(spec: &LieBialgebraSpec) -> LieBialgebraSpec {
    let (dh, dv) = (spec.dim_h, spec.dim_v);
    let mut out = LieBialgebraSpec::zero(dv, dh);
    for r in 0..dv {
        for s in 0..dv {
            for t in 0..dv {
                out.c.set(r, s, t, spec.gamma.get(t, r, s).clone());
            }
        }
    }
    for r in 0..dv {
        for k in 0..dh {
            for i in 0..dh {
                out.a.set(r, k, i, spec.alpha.get(r, i, k).clone());
            }
        }
    }
    for i in 0..dh {
        for j in 0..dh {
            for k in 0..dh {
                out.gamma.set(i, j, k, spec.c.get(j, k, i).clone());
            }
        }
    }
    for i in 0..dh {
        for mu in 0..dv {
            for nu in 0..dv {
                out.alpha.set(i, mu, nu, spec.a.get(i, nu, mu).clone());
            }
        }
    }
    out
}

/// Category spec of the classical double.
///
/// H-part basis order: the original H generators, then the duals of the X
/// generators (the zeta sector). V-part basis order: the original X
/// generators, then the duals of the H generators (the eta sector).
pub fn classical_double(spec: &LieBialgebraSpec) -> Result<LieBialgebraSpec> {
    let rep = validate_bialgebra(spec)?;
    if !rep.passed() {
        return Err(Error::InvalidSpec { report: rep });
    }
    let (dh, dv) = (spec.dim_h, spec.dim_v);
    let mut out = LieBialgebraSpec::zero(dh + dv, dv + dh);

    // [H_i, H_k] keeps C; [z_mu, z_nu] is the opposite bracket of the dual;
    // [H_i, z_mu] mixes both tensors.
    for i in 0..dh {
        for k in 0..dh {
            for m in 0..dh {
                out.c.set(i, k, m, spec.c.get(i, k, m).clone());
            }
        }
    }
    for mu in 0..dv {
        for nu in 0..dv {
            for s in 0..dv {
                out.c.set(dh + mu, dh + nu, dh + s, spec.gamma.get(s, nu, mu).clone());
            }
        }
    }
    for i in 0..dh {
        for mu in 0..dv {
            for k in 0..dh {
                let v = -spec.alpha.get(mu, i, k).clone();
                out.c.set(i, dh + mu, k, v.clone());
                out.c.set(dh + mu, i, k, -v);
            }
            for nu in 0..dv {
                let v = -spec.a.get(i, nu, mu).clone();
                out.c.set(i, dh + mu, dh + nu, v.clone());
                out.c.set(dh + mu, i, dh + nu, -v);
            }
        }
    }

    // Action of the H-part on the V-part.
    for i in 0..dh {
        for mu in 0..dv {
            for nu in 0..dv {
                out.a.set(i, mu, nu, spec.a.get(i, mu, nu).clone());
            }
        }
        for j in 0..dh {
            for k in 0..dh {
                out.a.set(i, dv + j, dv + k, spec.c.get(k, i, j).clone());
            }
            for mu in 0..dv {
                out.a.set(i, dv + j, mu, spec.alpha.get(mu, i, j).clone());
            }
        }
    }
    for mu in 0..dv {
        for nu in 0..dv {
            for s in 0..dv {
                out.a.set(dh + mu, nu, s, -spec.gamma.get(nu, s, mu).clone());
            }
            for i in 0..dh {
                out.a.set(dh + mu, nu, dv + i, -spec.a.get(i, nu, mu).clone());
            }
        }
        for i in 0..dh {
            for k in 0..dh {
                out.a.set(dh + mu, dv + i, dv + k, -spec.alpha.get(mu, i, k).clone());
            }
        }
    }

    // Cobracket of the V-part: original gamma on the X block, the dual of the
    // C bracket on the eta block.
    for mu in 0..dv {
        for r in 0..dv {
            for s in 0..dv {
                out.gamma.set(mu, r, s, spec.gamma.get(mu, r, s).clone());
            }
        }
    }
    for i in 0..dh {
        for j in 0..dh {
            for k in 0..dh {
                out.gamma.set(dv + i, dv + j, dv + k, spec.c.get(j, k, i).clone());
            }
        }
    }

    // Cobracket of the H-part: original alpha on the H block; on the zeta
    // block the A tensor reappears, with the orientation fixed by the mixed
    // consistency conditions of the double itself.
    for r in 0..dv {
        for i in 0..dh {
            for k in 0..dh {
                out.alpha.set(r, i, k, spec.alpha.get(r, i, k).clone());
            }
        }
    }
    for i in 0..dh {
        for mu in 0..dv {
            for nu in 0..dv {
                out.alpha.set(dv + i, dh + mu, dh + nu, spec.a.get(i, nu, mu).clone());
            }
        }
    }

    let check = validate_bialgebra(&out)?;
    if !check.passed() {
        return Err(Error::Internal(format!(
            "classical double failed re-validation: {check}"
        )));
    }
    Ok(out)
}

fn basis_name(spec: &LieBialgebraSpec, idx: usize) -> String {
    if idx < spec.dim_h {
        format!("H{idx}")
    } else {
        format!("X{}", idx - spec.dim_h)
    }
}

/// Full coefficient matrix of `r` over the (H, X) basis of L.
fn r_coeff_matrix(spec: &LieBialgebraSpec, r: &ClassicalRMatrix) -> Vec<Vec<Rat>> {
    let n = spec.dim_h + spec.dim_v;
    let mut rr = vec![vec![Rat::zero(); n]; n];
    for i in 0..spec.dim_h {
        for mu in 0..spec.dim_v {
            rr[i][spec.dim_h + mu] = r.p[i][mu].clone();
            rr[spec.dim_h + mu][i] = r.q[mu][i].clone();
        }
    }
    rr
}

/// Bracket of two basis vectors of L, as a coefficient vector.
fn basis_bracket(spec: &LieBialgebraSpec, x: usize, y: usize) -> Vec<Rat> {
    let (dh, dv) = (spec.dim_h, spec.dim_v);
    let mut out = vec![Rat::zero(); dh + dv];
    if x < dh && y < dh {
        for m in 0..dh {
            out[m] = spec.c.get(x, y, m).clone();
        }
    } else if x < dh {
        let mu = y - dh;
        for nu in 0..dv {
            out[dh + nu] = spec.a.get(x, mu, nu).clone();
        }
    } else if y < dh {
        let mu = x - dh;
        for nu in 0..dv {
            out[dh + nu] = -spec.a.get(y, mu, nu).clone();
        }
    }
    out
}

/// Residual of the classical Yang-Baxter equation in the triple tensor power,
/// every nonzero component reported.
pub fn check_cybe(spec: &LieBialgebraSpec, r: &ClassicalRMatrix) -> Result<ValidationReport> {
    spec.shape_check()?;
    r.shape_check(spec)?;
    let n = spec.dim_h + spec.dim_v;
    let rr = r_coeff_matrix(spec, r);
    let mut resid = vec![Rat::zero(); n * n * n];
    let at = |a: usize, b: usize, cc: usize| (a * n + b) * n + cc;

    for x in 0..n {
        for y in 0..n {
            if rr[x][y].is_zero() {
                continue;
            }
            for z in 0..n {
                for w in 0..n {
                    if rr[z][w].is_zero() {
                        continue;
                    }
                    let coef = &rr[x][y] * &rr[z][w];
                    // [r12, r13] -> [e_x, e_z] (x) e_y (x) e_w
                    let b = basis_bracket(spec, x, z);
                    for (m, v) in b.iter().enumerate() {
                        if !v.is_zero() {
                            resid[at(m, y, w)] += v * &coef;
                        }
                    }
                    // [r12, r23] -> e_x (x) [e_y, e_z] (x) e_w
                    let b = basis_bracket(spec, y, z);
                    for (m, v) in b.iter().enumerate() {
                        if !v.is_zero() {
                            resid[at(x, m, w)] += v * &coef;
                        }
                    }
                    // [r13, r23] -> e_x (x) e_z (x) [e_y, e_w]
                    let b = basis_bracket(spec, y, w);
                    for (m, v) in b.iter().enumerate() {
                        if !v.is_zero() {
                            resid[at(x, z, m)] += v * &coef;
                        }
                    }
                }
            }
        }
    }

    let mut rep = ValidationReport::default();
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                let v = &resid[at(a, b, cc)];
                if !v.is_zero() {
                    rep.push(
                        "cybe",
                        format!(
                            "({},{},{})",
                            basis_name(spec, a),
                            basis_name(spec, b),
                            basis_name(spec, cc)
                        ),
                        Residual::Scalar(v.clone()),
                    );
                }
            }
        }
    }
    Ok(rep)
}

/// Reduced row-echelon basis of the row space of `m`.
fn row_space_basis(mut m: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivot_rows = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for cc in 0..cols {
                    let t = &m[r][cc] * &f;
                    m[i][cc] -= t;
                }
            }
        }
        pivot_rows.push(r);
        r += 1;
    }
    pivot_rows.into_iter().map(|i| m[i].clone()).collect()
}

/// Images of `r` and its transpose as maps from the dual into L, returned as
/// echelon-reduced coordinate bases over the (H, X) basis. The first space is
/// spanned by the second tensor legs of `r`, the second by the first legs.
pub fn r_images(
    spec: &LieBialgebraSpec,
    r: &ClassicalRMatrix,
) -> Result<(Vec<Vec<Rat>>, Vec<Vec<Rat>>)> {
    spec.shape_check()?;
    r.shape_check(spec)?;
    let rr = r_coeff_matrix(spec, r);
    let n = rr.len();
    let plus = row_space_basis(rr.clone());
    let mut tr = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            tr[j][i] = rr[i][j].clone();
        }
    }
    let minus = row_space_basis(tr);
    Ok((plus, minus))
}

/// Componentwise intertwining of brackets and cobrackets by a block morphism.
pub fn check_classical_morphism(
    src: &LieBialgebraSpec,
    dst: &LieBialgebraSpec,
    phi: &MorphismSpec,
) -> Result<ValidationReport> {
    src.shape_check()?;
    dst.shape_check()?;
    let ok_h = phi.phi_h.len() == dst.dim_h && phi.phi_h.iter().all(|r| r.len() == src.dim_h);
    let ok_v = phi.phi_v.len() == dst.dim_v && phi.phi_v.iter().all(|r| r.len() == src.dim_v);
    if !ok_h || !ok_v {
        return Err(Error::Shape("morphism blocks do not match spec dimensions".into()));
    }
    let mut rep = ValidationReport::default();

    // phi([H_i, H_k]) = [phi H_i, phi H_k]
    for i in 0..src.dim_h {
        for k in 0..src.dim_h {
            for a in 0..dst.dim_h {
                let mut r = Rat::zero();
                for m in 0..src.dim_h {
                    r += src.c.get(i, k, m) * &phi.phi_h[a][m];
                }
                for b in 0..dst.dim_h {
                    for c in 0..dst.dim_h {
                        r -= &(&phi.phi_h[b][i] * &phi.phi_h[c][k]) * dst.c.get(b, c, a);
                    }
                }
                rep.push_scalar("morphism-bracket-C", &[i, k, a], r);
            }
        }
    }

    // phi([H_i, X^mu]) = [phi H_i, phi X^mu]
    for i in 0..src.dim_h {
        for mu in 0..src.dim_v {
            for b in 0..dst.dim_v {
                let mut r = Rat::zero();
                for nu in 0..src.dim_v {
                    r += src.a.get(i, mu, nu) * &phi.phi_v[b][nu];
                }
                for ai in 0..dst.dim_h {
                    for cv in 0..dst.dim_v {
                        r -= &(&phi.phi_h[ai][i] * &phi.phi_v[cv][mu]) * dst.a.get(ai, cv, b);
                    }
                }
                rep.push_scalar("morphism-bracket-A", &[i, mu, b], r);
            }
        }
    }

    // (phi (x) phi) of the X cobracket matches the target cobracket.
    for mu in 0..src.dim_v {
        for a in 0..dst.dim_v {
            for b in 0..dst.dim_v {
                let mut r = Rat::zero();
                for rho in 0..src.dim_v {
                    for s in 0..src.dim_v {
                        r += &(src.gamma.get(mu, rho, s) * &phi.phi_v[a][rho]) * &phi.phi_v[b][s];
                    }
                }
                for nu in 0..dst.dim_v {
                    r -= &phi.phi_v[nu][mu] * dst.gamma.get(nu, a, b);
                }
                rep.push_scalar("morphism-cobracket-gamma", &[mu, a, b], r);
            }
        }
    }

    // Same for the H cobracket.
    for i in 0..src.dim_h {
        for a in 0..dst.dim_v {
            for b in 0..dst.dim_h {
                let mut r = Rat::zero();
                for rho in 0..src.dim_v {
                    for k in 0..src.dim_h {
                        r += &(src.alpha.get(rho, i, k) * &phi.phi_v[a][rho]) * &phi.phi_h[b][k];
                    }
                }
                for j in 0..dst.dim_h {
                    r -= &phi.phi_h[j][i] * dst.alpha.get(a, j, b);
                }
                rep.push_scalar("morphism-cobracket-alpha", &[i, a, b], r);
            }
        }
    }

    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};
    use crate::samples;

    #[test]
    fn zero_specs_validate_any_dims() {
        for (dh, dv) in [(1, 1), (2, 3), (0, 2), (3, 0), (0, 0)] {
            let rep = validate_bialgebra(&LieBialgebraSpec::zero(dh, dv)).unwrap();
            assert!(rep.passed(), "zero({dh},{dv}) must pass");
        }
    }

    #[test]
    fn golden_library_validates() {
        for (name, spec) in samples::golden_library() {
            let rep = validate_bialgebra(&spec).unwrap();
            assert!(rep.passed(), "{name} failed: {rep}");
        }
    }

    #[test]
    fn skew_violation_is_pinpointed() {
        let mut s = LieBialgebraSpec::zero(1, 1);
        s.c.set(0, 0, 0, rint(1));
        let rep = validate_bialgebra(&s).unwrap();
        assert!(!rep.passed());
        let v = rep
            .violations
            .iter()
            .find(|v| v.axiom == AXIOM_C_SKEW)
            .expect("C-skew violation");
        assert_eq!(v.location, "(0,0,0)");
        assert_eq!(v.residual, Residual::Scalar(rint(2)));
    }

    #[test]
    fn shape_mismatch_is_structural() {
        let mut s = LieBialgebraSpec::zero(1, 1);
        s.c = Tensor3::zeros(2, 1, 1);
        assert!(matches!(validate_bialgebra(&s), Err(Error::Shape(_))));
    }

    #[test]
    fn dualize_swaps_dims_and_involutes() {
        let z = dualize(&LieBialgebraSpec::zero(2, 3)).unwrap();
        assert_eq!((z.dim_h, z.dim_v), (3, 2));
        assert!(z.c.is_zero() && z.a.is_zero() && z.gamma.is_zero() && z.alpha.is_zero());

        for (name, spec) in samples::golden_library() {
            let dd = dualize(&dualize(&spec).unwrap()).unwrap();
            assert_eq!(dd, spec, "dualize is not involutive on {name}");
            let rep = validate_bialgebra(&dualize(&spec).unwrap()).unwrap();
            assert!(rep.passed(), "dual of {name} failed validation");
        }
    }

    #[test]
    fn jordanian_is_self_dual() {
        let j = samples::jordanian();
        assert_eq!(dualize(&j).unwrap(), j);
    }

    #[test]
    fn double_of_zero_is_zero() {
        let d = classical_double(&LieBialgebraSpec::zero(2, 3)).unwrap();
        assert_eq!((d.dim_h, d.dim_v), (5, 5));
        assert!(d.c.is_zero() && d.a.is_zero() && d.gamma.is_zero() && d.alpha.is_zero());
    }

    #[test]
    fn double_of_jordanian_entries() {
        let d = classical_double(&samples::jordanian()).unwrap();
        assert_eq!((d.dim_h, d.dim_v), (2, 2));
        // [H, z] = -H - z
        assert_eq!(*d.c.get(0, 1, 0), rint(-1));
        assert_eq!(*d.c.get(0, 1, 1), rint(-1));
        // [H, X] = X, [H, e] = X, [z, X] = -e, [z, e] = -e
        assert_eq!(*d.a.get(0, 0, 0), rint(1));
        assert_eq!(*d.a.get(0, 1, 0), rint(1));
        assert_eq!(*d.a.get(1, 0, 1), rint(-1));
        assert_eq!(*d.a.get(1, 1, 1), rint(-1));
        assert!(d.gamma.is_zero());
        // Cobracket rows: the original alpha and the A-derived zeta row.
        assert_eq!(*d.alpha.get(0, 0, 0), rint(1));
        assert_eq!(*d.alpha.get(1, 1, 1), rint(1));
        let nonzero: usize = d.alpha.entries().count();
        assert_eq!(nonzero, 2);
        assert!(validate_bialgebra(&d).unwrap().passed());
    }

    #[test]
    fn double_rejects_invalid_input() {
        let mut s = LieBialgebraSpec::zero(1, 1);
        s.c.set(0, 0, 0, rint(1));
        assert!(matches!(classical_double(&s), Err(Error::InvalidSpec { .. })));
    }

    #[test]
    fn cybe_zero_r_passes() {
        let j = samples::jordanian();
        let r = ClassicalRMatrix::zero(1, 1);
        assert!(check_cybe(&j, &r).unwrap().passed());
    }

    #[test]
    fn cybe_skew_passes_symmetric_fails() {
        let j = samples::jordanian();
        let mut skew = ClassicalRMatrix::zero(1, 1);
        skew.p[0][0] = rint(1);
        skew.q[0][0] = rint(-1);
        assert!(check_cybe(&j, &skew).unwrap().passed());
        // Both orientations of the skew seed pass.
        skew.p[0][0] = rint(-1);
        skew.q[0][0] = rint(1);
        assert!(check_cybe(&j, &skew).unwrap().passed());

        let mut sym = ClassicalRMatrix::zero(1, 1);
        sym.p[0][0] = rint(1);
        sym.q[0][0] = rint(1);
        let rep = check_cybe(&j, &sym).unwrap();
        assert!(!rep.passed());
        // Residual 2 X (x) X (x) H - 2 H (x) X (x) X, computed by hand.
        assert_eq!(rep.violations.len(), 2);
        assert!(rep
            .violations
            .iter()
            .any(|v| v.location == "(X0,X0,H0)" && v.residual == Residual::Scalar(rint(2))));
        assert!(rep
            .violations
            .iter()
            .any(|v| v.location == "(H0,X0,X0)" && v.residual == Residual::Scalar(rint(-2))));
    }

    #[test]
    fn cybe_pass_fail_is_leg_order_independent() {
        let j = samples::jordanian();
        let flip = |r: &ClassicalRMatrix| ClassicalRMatrix {
            p: vec![vec![r.q[0][0].clone()]],
            q: vec![vec![r.p[0][0].clone()]],
        };
        for (p, q) in [(1, -1), (1, 1), (-1, 1), (2, 3)] {
            let mut r = ClassicalRMatrix::zero(1, 1);
            r.p[0][0] = rint(p);
            r.q[0][0] = rint(q);
            let a = check_cybe(&j, &r).unwrap().passed();
            let b = check_cybe(&j, &flip(&r)).unwrap().passed();
            assert_eq!(a, b, "leg order changed pass/fail for ({p},{q})");
        }
    }

    #[test]
    fn r_images_examples() {
        let j = samples::jordanian();
        let zero = ClassicalRMatrix::zero(1, 1);
        let (plus, minus) = r_images(&j, &zero).unwrap();
        assert!(plus.is_empty() && minus.is_empty());

        let mut skew = ClassicalRMatrix::zero(1, 1);
        skew.p[0][0] = rint(1);
        skew.q[0][0] = rint(-1);
        let (plus, minus) = r_images(&j, &skew).unwrap();
        assert_eq!(plus.len(), 2);
        assert_eq!(minus.len(), 2);

        // Rank-1 seed H (x) X: the image of r is spanned by the second legs,
        // the image of its transpose by the first legs.
        let mut rank1 = ClassicalRMatrix::zero(1, 1);
        rank1.p[0][0] = rint(1);
        let (plus, minus) = r_images(&j, &rank1).unwrap();
        assert_eq!(plus, vec![vec![rint(0), rint(1)]]); // span{X}
        assert_eq!(minus, vec![vec![rint(1), rint(0)]]); // span{H}
        assert_eq!(plus.len(), minus.len());
    }

    #[test]
    fn classical_morphism_examples() {
        let j = samples::jordanian();
        let id = MorphismSpec::identity(1, 1);
        assert!(check_classical_morphism(&j, &j, &id).unwrap().passed());

        let zero_m = MorphismSpec {
            phi_h: vec![vec![rint(0)]],
            phi_v: vec![vec![rint(0)]],
        };
        assert!(check_classical_morphism(&j, &j, &zero_m).unwrap().passed());

        // Scaling the translation sector: bracket block survives, the H
        // cobracket block scales once on one side and twice on the other.
        let scale = MorphismSpec {
            phi_h: vec![vec![rint(1)]],
            phi_v: vec![vec![rint(2)]],
        };
        let rep = check_classical_morphism(&j, &j, &scale).unwrap();
        assert!(!rep.passed());
        assert!(!rep.has_axiom("morphism-bracket-A"));
        assert!(rep.has_axiom("morphism-cobracket-alpha"));
        let v = rep
            .violations
            .iter()
            .find(|v| v.axiom == "morphism-cobracket-alpha")
            .unwrap();
        assert_eq!(v.residual, Residual::Scalar(rint(1)));
    }

    #[test]
    fn mutation_specs_fail_with_named_axioms() {
        // Ten mutations: two skew, two Jacobi, two representation, two of
        // each mixed consistency condition.
        let mut muts: Vec<(&str, LieBialgebraSpec, &str)> = Vec::new();

        let mut m1 = LieBialgebraSpec::zero(2, 1);
        m1.c.set(0, 0, 0, rint(1));
        muts.push(("c-skew-diag", m1, AXIOM_C_SKEW));

        let mut m2 = samples::affine_dual();
        m2.gamma.set(1, 1, 1, rat(1, 2));
        muts.push(("gamma-skew-diag", m2, AXIOM_GAMMA_SKEW));

        // sl2-like C with one sign broken: [h,e]=2e, [h,f]=-2f, [e,f]=h
        // flipped to [e,f]=-h on one component only.
        let mut m3 = LieBialgebraSpec::zero(3, 1);
        m3.c.set(0, 1, 1, rint(2));
        m3.c.set(1, 0, 1, rint(-2));
        m3.c.set(0, 2, 2, rint(-2));
        m3.c.set(2, 0, 2, rint(2));
        m3.c.set(1, 2, 0, rint(1));
        m3.c.set(2, 1, 0, rint(-1));
        // Break Jacobi by perturbing one bracket.
        m3.c.set(1, 2, 1, rint(1));
        m3.c.set(2, 1, 1, rint(-1));
        muts.push(("c-jacobi", m3, AXIOM_C_JACOBI));

        let mut m4 = LieBialgebraSpec::zero(1, 3);
        m4.gamma.set(1, 0, 1, rint(1));
        m4.gamma.set(1, 1, 0, rint(-1));
        m4.gamma.set(0, 1, 2, rint(1));
        m4.gamma.set(0, 2, 1, rint(-1));
        muts.push(("gamma-jacobi", m4, AXIOM_GAMMA_JACOBI));

        // Two commuting H's acting with noncommuting matrices.
        let mut m5 = LieBialgebraSpec::zero(2, 2);
        m5.a.set(0, 0, 1, rint(1));
        m5.a.set(1, 1, 0, rint(1));
        muts.push(("a-representation", m5, AXIOM_A_REP));

        let mut m6 = LieBialgebraSpec::zero(2, 2);
        m6.alpha.set(0, 0, 1, rint(1));
        m6.alpha.set(1, 1, 0, rint(1));
        muts.push(("alpha-representation", m6, AXIOM_ALPHA_REP));

        // Nonzero alpha against the affine-dual A breaks the HX consistency.
        let mut m7 = samples::affine_dual();
        m7.alpha.set(0, 0, 0, rint(1));
        muts.push(("cocycle-hx-1", m7, AXIOM_COCYCLE_HX));

        let mut m8 = samples::affine_dual();
        m8.a.set(0, 0, 0, rint(1));
        muts.push(("cocycle-hx-2", m8, AXIOM_COCYCLE_HX));

        // Jordanian direct sum with an extra central H that still shows up
        // in the cobracket: breaks the HH consistency.
        let mut m9 = LieBialgebraSpec::zero(2, 1);
        m9.a.set(0, 0, 0, rint(1));
        m9.alpha.set(0, 0, 0, rint(1));
        m9.alpha.set(0, 1, 1, rint(2));
        muts.push(("cocycle-hh-1", m9, AXIOM_COCYCLE_HH));

        let mut m10 = LieBialgebraSpec::zero(2, 1);
        m10.c.set(0, 1, 1, rint(1));
        m10.c.set(1, 0, 1, rint(-1));
        m10.alpha.set(0, 0, 0, rint(1));
        muts.push(("cocycle-hh-2", m10, AXIOM_COCYCLE_HH));

        assert_eq!(muts.len(), 10);
        for (name, spec, axiom) in muts {
            let rep = validate_bialgebra(&spec).unwrap();
            assert!(!rep.passed(), "{name} unexpectedly passed");
            assert!(
                rep.has_axiom(axiom),
                "{name}: expected {axiom}, got {:?}",
                rep.violations.iter().map(|v| v.axiom.clone()).collect::<Vec<_>>()
            );
        }
    }
}
