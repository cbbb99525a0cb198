use crate::operators::{GradedOperator, Node};
use crate::pathspace::{Accumulator, Chain, ElementaryPath};
use crate::regular::kernels::{self, signed};
use crate::scalar::Scalar;

impl GradedOperator {
    /// Evaluation without input validation; callers go through `apply`
    /// or have checked the degree already.
    pub(crate) fn eval(&self, xi: &Chain) -> Chain {
        match self.node() {
            Node::Zero => Chain::zero(xi.vertices().clone()),
            Node::Identity => xi.clone(),
            Node::Compose(a, b) => a.eval(&b.eval(xi)),
            Node::Anticommutator(a, b) => {
                let ab = a.eval(&b.eval(xi));
                let ba = b.eval(&a.eval(xi));
                ab.try_add(&ba).expect("same vertex set")
            }
            Node::Sum(ops) => {
                let mut acc = Accumulator::new();
                for op in ops {
                    acc.extend_scaled(&op.eval(xi), &Scalar::one());
                }
                acc.finish(xi.vertices().clone())
            }
            Node::Scale(s, a) => a.eval(xi).scale(s),
            _ => {
                let mut acc = Accumulator::new();
                for (p, c) in xi.terms() {
                    self.eval_leaf(p, c, &mut acc);
                }
                acc.finish(xi.vertices().clone())
            }
        }
    }

    /// Adds `c · self(p)` for a leaf operator.
    pub(crate) fn eval_leaf(&self, p: &ElementaryPath, c: &Scalar, acc: &mut Accumulator) {
        let n = p.degree();
        let vs = p.vertices();
        match self.node() {
            Node::FacePartial { v, i } => {
                if vs[*i] == *v {
                    if let Some(q) = p.remove(*i) {
                        acc.push(q, signed(*i, c));
                    }
                }
            }
            Node::Coface { v, i } => acc.push(p.insert(*i, *v), signed(*i, c)),
            Node::WeightedFace { f, i } => {
                if let Some(q) = p.remove(*i) {
                    acc.push(q, signed(*i, &(f.value(vs[*i]) * c)));
                }
            }
            Node::WeightedCoface { f, i } => {
                let c = signed(*i, c);
                for (v, w) in f.support() {
                    acc.push(p.insert(*i, v), w * &c);
                }
            }
            Node::Boundary(f) => {
                if n == 0 {
                    return;
                }
                for (i, &v) in vs.iter().enumerate() {
                    acc.push(p.remove(i).expect("degree ≥ 1"), signed(i, &(f.value(v) * c)));
                }
            }
            Node::Coboundary(f) => {
                for i in 0..=n + 1 {
                    let ci = signed(i, c);
                    for (v, w) in f.support() {
                        acc.push(p.insert(i, v), w * &ci);
                    }
                }
            }
            Node::Degeneracy(i) => acc.push(p.insert(*i, vs[*i]), c.clone()),
            Node::Projection => {
                if p.is_regular() {
                    acc.push(p.clone(), c.clone());
                }
            }
            Node::Inclusion => acc.push(p.clone(), c.clone()),
            Node::RegularFace { f, i } => kernels::face(p, f, *i, c, acc),
            Node::RegularCoface { f, i } => kernels::coface(p, f, *i, c, acc),
            Node::RegularBoundary(f) => {
                for i in 0..=n {
                    kernels::face(p, f, i, c, acc);
                }
            }
            Node::RegularCoboundary(f) => {
                for i in 0..=n + 1 {
                    kernels::coface(p, f, i, c, acc);
                }
            }
            Node::ReducedPartial(v) => kernels::reduced_partial(p, *v, c, acc),
            Node::ReducedDiff(v) => kernels::reduced_diff(p, *v, c, acc),
            Node::PartialBracket { v, u, form } => kernels::partial_bracket(p, *v, *u, *form, c, acc),
            Node::DiffBracket { v, u } => kernels::diff_bracket(p, *v, *u, c, acc),
            Node::WeightedBracket { f, g, which, form } => kernels::weighted_bracket(p, f, g, *which, *form, c, acc),
            Node::Zero
            | Node::Identity
            | Node::Compose(..)
            | Node::Anticommutator(..)
            | Node::Sum(_)
            | Node::Scale(..) => unreachable!("composite operators are evaluated chain-wise"),
        }
    }
}
