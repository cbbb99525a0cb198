//! Regular paths: the span of elementary paths with no equal consecutive
//! vertices, modelled as the orthogonal complement of the irregular ones.

mod epsilon;
pub(crate) mod kernels;

use std::ops::Deref;
use std::sync::Arc;

pub use epsilon::{eps, EpsilonTable};
pub use kernels::{BracketKind, PartialBracketForm};

use crate::error::{Error, Result};
use crate::operators::GradedOperator;
use crate::pathspace::{Basis, Chain, ElementaryPath, Space, Vertex, VertexSet, Weighting};

pub fn is_regular(p: &ElementaryPath) -> bool {
    p.is_regular()
}

/// Number of regular `n`-paths, `#V·(#V−1)ⁿ`; `None` on overflow.
pub fn regular_dim(vertices: &VertexSet, n: usize) -> Option<usize> {
    Basis::dimension(vertices.len(), n, Space::Regular)
}

/// A chain supported on regular paths only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularChain(Chain);

impl RegularChain {
    /// Fails with the first irregular path in the support.
    pub fn new(chain: Chain) -> Result<Self> {
        if let Some((p, _)) = chain.terms().iter().find(|(p, _)| !p.is_regular()) {
            return Err(Error::IrregularInput(p.render(chain.vertices())));
        }
        Ok(RegularChain(chain))
    }

    pub fn into_chain(self) -> Chain {
        self.0
    }
}

impl Deref for RegularChain {
    type Target = Chain;

    fn deref(&self) -> &Chain {
        &self.0
    }
}

/// Orthogonal projection onto regular paths: irregular terms are dropped.
pub fn project_regular(xi: &Chain) -> RegularChain {
    let terms = xi.terms().iter().filter(|(p, _)| p.is_regular()).cloned();
    RegularChain(Chain::from_terms(xi.vertices().clone(), terms).expect("terms come from a valid chain"))
}

pub fn regular_face(f: &Weighting, i: usize) -> GradedOperator {
    GradedOperator::regular_face(f, i)
}

pub fn regular_coface(f: &Weighting, i: usize) -> GradedOperator {
    GradedOperator::regular_coface(f, i)
}

pub fn regular_boundary(f: &Weighting) -> GradedOperator {
    GradedOperator::regular_boundary(f)
}

pub fn regular_coboundary(f: &Weighting) -> GradedOperator {
    GradedOperator::regular_coboundary(f)
}

pub fn reduced_partial(vertices: Arc<VertexSet>, v: Vertex) -> Result<GradedOperator> {
    GradedOperator::reduced_partial(vertices, v)
}

pub fn reduced_diff(vertices: Arc<VertexSet>, v: Vertex) -> Result<GradedOperator> {
    GradedOperator::reduced_diff(vertices, v)
}

pub fn anticommutator_partial_closed(vertices: Arc<VertexSet>, v: Vertex, u: Vertex) -> Result<GradedOperator> {
    GradedOperator::partial_bracket(vertices, v, u, PartialBracketForm::Symmetric)
}

pub fn anticommutator_diff_closed(vertices: Arc<VertexSet>, v: Vertex, u: Vertex) -> Result<GradedOperator> {
    GradedOperator::diff_bracket(vertices, v, u)
}

pub fn anticommutator_weighted_closed(f: &Weighting, g: &Weighting, which: BracketKind) -> Result<GradedOperator> {
    GradedOperator::weighted_bracket(f, g, which, PartialBracketForm::Symmetric)
}
