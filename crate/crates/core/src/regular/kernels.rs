//! Closed-form actions of the regular operators on one regular path.
//!
//! Each kernel adds `coeff · op(p)` to an accumulator. Index ranges are
//! validated by the caller.

use crate::pathspace::{Accumulator, ElementaryPath, Weighting};
use crate::regular::epsilon::{eps, EpsilonTable};
use crate::scalar::Scalar;

/// Which closed form to use for the reduced-partial anticommutator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartialBracketForm {
    /// Symmetric δ-sums with a minus sign on the left pair; agrees with
    /// the composition `∂̃/∂v ∘ ∂̃/∂u + ∂̃/∂u ∘ ∂̃/∂v`.
    Symmetric,
    /// δ-differences on both pairs. Antisymmetric in `(v, u)`, so it cannot
    /// equal a symmetric bracket; kept for comparison only.
    Antisymmetric,
}

impl PartialBracketForm {
    pub fn as_str(self) -> &'static str {
        match self {
            PartialBracketForm::Symmetric => "symmetric",
            PartialBracketForm::Antisymmetric => "antisymmetric",
        }
    }
}

pub(crate) fn signed(i: usize, coeff: &Scalar) -> Scalar {
    if i.is_multiple_of(2) {
        coeff.clone()
    } else {
        -coeff
    }
}

/// `∂̃ᵢᶠ(p) = (−1)ⁱ ε(v_{i−1}, v_{i+1}) f(v_i) · p with v_i deleted`
pub(crate) fn face(p: &ElementaryPath, f: &Weighting, i: usize, coeff: &Scalar, acc: &mut Accumulator) {
    if p.degree() == 0 {
        return;
    }
    let t = EpsilonTable::new(p.vertices());
    let k = i as isize;
    if !t.eps(k - 1, k + 1) {
        return;
    }
    let w = f.value(p.vertices()[i]);
    if w.is_zero() {
        return;
    }
    acc.push(p.remove(i).expect("degree ≥ 1"), signed(i, &(w * coeff)));
}

/// `d̃ᵢᶠ(p) = Σ_{v ∉ {v_{i−1}, v_i}} (−1)ⁱ f(v) · p with v inserted at i`
pub(crate) fn coface(p: &ElementaryPath, f: &Weighting, i: usize, coeff: &Scalar, acc: &mut Accumulator) {
    let t = EpsilonTable::new(p.vertices());
    let k = i as isize;
    let c = signed(i, coeff);
    for (v, w) in f.support() {
        if t.eps_v(v, k - 1) && t.eps_v(v, k) {
            acc.push(p.insert(i, v), w * &c);
        }
    }
}

/// `∂̃/∂v(p) = Σᵢ (−1)ⁱ δ(v, v_i) ε(v_{i−1}, v_{i+1}) · p with v_i deleted`
pub(crate) fn reduced_partial(p: &ElementaryPath, v: u32, coeff: &Scalar, acc: &mut Accumulator) {
    let n = p.degree();
    if n == 0 {
        return;
    }
    let t = EpsilonTable::new(p.vertices());
    for i in 0..=n {
        let k = i as isize;
        if t.delta_v(v, k) && t.eps(k - 1, k + 1) {
            acc.push(p.remove(i).expect("degree ≥ 1"), signed(i, coeff));
        }
    }
}

/// `d̃v(p) = Σ_{i=0}^{n+1} (−1)ⁱ ε(v, v_{i−1}) ε(v, v_i) · p with v inserted at i`
pub(crate) fn reduced_diff(p: &ElementaryPath, v: u32, coeff: &Scalar, acc: &mut Accumulator) {
    let t = EpsilonTable::new(p.vertices());
    for i in 0..=p.degree() + 1 {
        let k = i as isize;
        if t.eps_v(v, k - 1) && t.eps_v(v, k) {
            acc.push(p.insert(i, v), signed(i, coeff));
        }
    }
}

fn ind(b: bool) -> i64 {
    i64::from(b)
}

/// Closed form of `(∂̃/∂v, ∂̃/∂u)(p)`: for each `i`, one term deleting
/// `v_{i−1} v_i` and one deleting `v_i v_{i+1}`.
pub(crate) fn partial_bracket(
    p: &ElementaryPath,
    v: u32,
    u: u32,
    form: PartialBracketForm,
    coeff: &Scalar,
    acc: &mut Accumulator,
) {
    let n = p.degree();
    if n < 2 {
        return;
    }
    let t = EpsilonTable::new(p.vertices());
    for i in 0..=n {
        let k = i as isize;
        // left pair: v_{i-1} v_i
        let a = ind(t.delta_v(v, k) && t.delta_v(u, k - 1));
        let b = ind(t.delta_v(u, k) && t.delta_v(v, k - 1));
        let left = match form {
            PartialBracketForm::Symmetric => -(a + b),
            PartialBracketForm::Antisymmetric => a - b,
        };
        if left != 0 && i >= 1 && t.eps(k - 1, k + 1) && t.eps(k - 2, k + 1) {
            let q = p.remove_pair(i - 1).expect("degree ≥ 2");
            acc.push(q, coeff * &Scalar::from(left));
        }
        // right pair: v_i v_{i+1}
        let a = ind(t.delta_v(u, k) && t.delta_v(v, k + 1));
        let b = ind(t.delta_v(v, k) && t.delta_v(u, k + 1));
        let right = match form {
            PartialBracketForm::Symmetric => a + b,
            PartialBracketForm::Antisymmetric => a - b,
        };
        if right != 0 && i < n && t.eps(k - 1, k + 1) && t.eps(k - 1, k + 2) {
            let q = p.remove_pair(i).expect("degree ≥ 2");
            acc.push(q, coeff * &Scalar::from(right));
        }
    }
}

/// Closed form of `(d̃v, d̃u)(p)`: for each slot `i`, the insertions of
/// `vu` and of `uv`, each carrying the common factor `ε(v, u)`.
pub(crate) fn diff_bracket(p: &ElementaryPath, v: u32, u: u32, coeff: &Scalar, acc: &mut Accumulator) {
    if !eps(v, u) {
        return;
    }
    let t = EpsilonTable::new(p.vertices());
    for i in 0..=p.degree() + 1 {
        let k = i as isize;
        let vu = ind(t.eps_v(u, k - 1)) - ind(t.eps_v(v, k));
        if vu != 0 && t.eps_v(u, k) && t.eps_v(v, k - 1) {
            acc.push(p.insert_pair(i, v, u), coeff * &Scalar::from(vu));
        }
        let uv = ind(t.eps_v(v, k - 1)) - ind(t.eps_v(u, k));
        if uv != 0 && t.eps_v(u, k - 1) && t.eps_v(v, k) {
            acc.push(p.insert_pair(i, u, v), coeff * &Scalar::from(uv));
        }
    }
}

/// Which weighted bracket to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BracketKind {
    Partial,
    Diff,
}

impl BracketKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BracketKind::Partial => "partial",
            BracketKind::Diff => "diff",
        }
    }
}

/// `Σ_{v,u} f(v) g(u) · (pair bracket)(p)`.
pub(crate) fn weighted_bracket(
    p: &ElementaryPath,
    f: &Weighting,
    g: &Weighting,
    which: BracketKind,
    form: PartialBracketForm,
    coeff: &Scalar,
    acc: &mut Accumulator,
) {
    for (v, fv) in f.support() {
        for (u, gu) in g.support() {
            let c = &(fv * gu) * coeff;
            match which {
                BracketKind::Partial => partial_bracket(p, v, u, form, &c, acc),
                BracketKind::Diff => diff_bracket(p, v, u, &c, acc),
            }
        }
    }
}
