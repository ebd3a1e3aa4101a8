//! Small library of example bialgebra specs used across tests, docs and the
//! CLI fixtures.

use crate::bialg::LieBialgebraSpec;
use crate::rat::rint;

/// Abelian bialgebra: all four tensors zero.
pub fn abelian(dim_h: usize, dim_v: usize) -> LieBialgebraSpec {
    LieBialgebraSpec::zero(dim_h, dim_v)
}

/// One-dimensional Borel-type seed: `[H, X] = X` with the matching cobracket
/// on `H`. The smallest spec whose quantization is genuinely deformed.
pub fn jordanian() -> LieBialgebraSpec {
    let mut s = LieBialgebraSpec::zero(1, 1);
    s.a.set(0, 0, 0, rint(1));
    s.alpha.set(0, 0, 0, rint(1));
    s
}

/// Euclidean-motion seed: one rotation generator acting on two commuting
/// translations, trivial cobracket.
pub fn iso2() -> LieBialgebraSpec {
    let mut s = LieBialgebraSpec::zero(1, 2);
    s.a.set(0, 0, 1, rint(1));
    s.a.set(0, 1, 0, rint(-1));
    s
}

/// Affine-dual seed: `[H, X^1] = X^1` with a nonabelian dual bracket
/// `gamma^1_{01} = 1`; exercises the nonabelian Campbell-Hausdorff branch.
pub fn affine_dual() -> LieBialgebraSpec {
    let mut s = LieBialgebraSpec::zero(1, 2);
    s.a.set(0, 1, 1, rint(1));
    s.gamma.set(1, 0, 1, rint(1));
    s.gamma.set(1, 1, 0, rint(-1));
    s
}

/// The named golden specs, in a fixed order.
pub fn golden_library() -> Vec<(&'static str, LieBialgebraSpec)> {
    use crate::bialg::{classical_double, dualize};
    let j = jordanian();
    let k = affine_dual();
    vec![
        ("zero", abelian(1, 1)),
        ("iso2", iso2()),
        ("jordanian", j.clone()),
        ("jordanian-dual", dualize(&j).expect("jordanian validates")),
        ("affine-dual", k.clone()),
        ("double-jordanian", classical_double(&j).expect("double of jordanian")),
        ("double-affine-dual", classical_double(&k).expect("double of affine-dual")),
    ]
}
