//! Degree-homogeneous linear operators on path spaces.

mod descriptor;
mod eval;
mod matrix;

use std::fmt;
use std::sync::Arc;

pub use descriptor::Descriptor;
pub use matrix::{MatrixCache, OperatorMatrix};

use crate::error::{Error, Result};
use crate::pathspace::{Chain, Space, Vertex, VertexSet, Weighting};
use crate::regular::{BracketKind, PartialBracketForm};
use crate::scalar::Scalar;

#[derive(Debug)]
pub(crate) enum Node {
    Zero,
    Identity,
    FacePartial {
        v: u32,
        i: usize,
    },
    Coface {
        v: u32,
        i: usize,
    },
    WeightedFace {
        f: Weighting,
        i: usize,
    },
    WeightedCoface {
        f: Weighting,
        i: usize,
    },
    Boundary(Weighting),
    Coboundary(Weighting),
    Degeneracy(usize),
    Projection,
    Inclusion,
    RegularFace {
        f: Weighting,
        i: usize,
    },
    RegularCoface {
        f: Weighting,
        i: usize,
    },
    RegularBoundary(Weighting),
    RegularCoboundary(Weighting),
    ReducedPartial(u32),
    ReducedDiff(u32),
    PartialBracket {
        v: u32,
        u: u32,
        form: PartialBracketForm,
    },
    DiffBracket {
        v: u32,
        u: u32,
    },
    WeightedBracket {
        f: Weighting,
        g: Weighting,
        which: BracketKind,
        form: PartialBracketForm,
    },
    Compose(GradedOperator, GradedOperator),
    Anticommutator(GradedOperator, GradedOperator),
    Sum(Vec<GradedOperator>),
    Scale(Scalar, GradedOperator),
}

/// A linear map sending degree `n` to degree `n + shift`, defined at every
/// degree, between the full or regular path spaces over one vertex set.
///
/// Cloning is cheap; the operator tree is shared.
#[derive(Clone)]
pub struct GradedOperator {
    vertices: Arc<VertexSet>,
    node: Arc<Node>,
    shift: i64,
    domain: Space,
    codomain: Space,
}

impl GradedOperator {
    fn build(vertices: Arc<VertexSet>, node: Node, shift: i64, domain: Space, codomain: Space) -> Self {
        GradedOperator {
            vertices,
            node: Arc::new(node),
            shift,
            domain,
            codomain,
        }
    }

    fn full(vertices: Arc<VertexSet>, node: Node, shift: i64) -> Self {
        Self::build(vertices, node, shift, Space::Full, Space::Full)
    }

    fn regular(vertices: Arc<VertexSet>, node: Node, shift: i64) -> Self {
        Self::build(vertices, node, shift, Space::Regular, Space::Regular)
    }

    pub fn zero(vertices: Arc<VertexSet>, shift: i64, domain: Space, codomain: Space) -> Self {
        Self::build(vertices, Node::Zero, shift, domain, codomain)
    }

    pub fn identity(vertices: Arc<VertexSet>, space: Space) -> Self {
        Self::build(vertices, Node::Identity, 0, space, space)
    }

    /// `∂ᵢ/∂v`
    pub fn face_partial(vertices: Arc<VertexSet>, v: Vertex, i: usize) -> Result<Self> {
        vertices.check(v)?;
        Ok(Self::full(vertices, Node::FacePartial { v: v.0, i }, -1))
    }

    /// `dᵢv`
    pub fn coface(vertices: Arc<VertexSet>, v: Vertex, i: usize) -> Result<Self> {
        vertices.check(v)?;
        Ok(Self::full(vertices, Node::Coface { v: v.0, i }, 1))
    }

    /// `∂ᵢᶠ`
    pub fn weighted_face(f: &Weighting, i: usize) -> Self {
        Self::full(f.vertices().clone(), Node::WeightedFace { f: f.clone(), i }, -1)
    }

    /// `∂¹ᵢ`, the face map with constant weight 1.
    pub fn face_one(vertices: Arc<VertexSet>, i: usize) -> Self {
        Self::weighted_face(&Weighting::ones(vertices), i)
    }

    /// `dᵢᶠ`
    pub fn weighted_coface(f: &Weighting, i: usize) -> Self {
        Self::full(f.vertices().clone(), Node::WeightedCoface { f: f.clone(), i }, 1)
    }

    /// `∂ᶠ = Σᵢ ∂ᵢᶠ`
    pub fn boundary(f: &Weighting) -> Self {
        Self::full(f.vertices().clone(), Node::Boundary(f.clone()), -1)
    }

    /// `dᶠ = Σᵢ dᵢᶠ`
    pub fn coboundary(f: &Weighting) -> Self {
        Self::full(f.vertices().clone(), Node::Coboundary(f.clone()), 1)
    }

    /// `sᵢ`
    pub fn degeneracy(vertices: Arc<VertexSet>, i: usize) -> Self {
        Self::full(vertices, Node::Degeneracy(i), 1)
    }

    /// Orthogonal projection from the full space onto regular paths.
    pub fn projection(vertices: Arc<VertexSet>) -> Self {
        Self::build(vertices, Node::Projection, 0, Space::Full, Space::Regular)
    }

    /// Inclusion of regular paths into the full space.
    pub fn inclusion(vertices: Arc<VertexSet>) -> Self {
        Self::build(vertices, Node::Inclusion, 0, Space::Regular, Space::Full)
    }

    pub fn regular_face(f: &Weighting, i: usize) -> Self {
        Self::regular(f.vertices().clone(), Node::RegularFace { f: f.clone(), i }, -1)
    }

    pub fn regular_coface(f: &Weighting, i: usize) -> Self {
        Self::regular(f.vertices().clone(), Node::RegularCoface { f: f.clone(), i }, 1)
    }

    pub fn regular_boundary(f: &Weighting) -> Self {
        Self::regular(f.vertices().clone(), Node::RegularBoundary(f.clone()), -1)
    }

    pub fn regular_coboundary(f: &Weighting) -> Self {
        Self::regular(f.vertices().clone(), Node::RegularCoboundary(f.clone()), 1)
    }

    /// `∂̃/∂v`
    pub fn reduced_partial(vertices: Arc<VertexSet>, v: Vertex) -> Result<Self> {
        vertices.check(v)?;
        Ok(Self::regular(vertices, Node::ReducedPartial(v.0), -1))
    }

    /// `d̃v`
    pub fn reduced_diff(vertices: Arc<VertexSet>, v: Vertex) -> Result<Self> {
        vertices.check(v)?;
        Ok(Self::regular(vertices, Node::ReducedDiff(v.0), 1))
    }

    /// Closed form of `(∂̃/∂v, ∂̃/∂u)`.
    pub fn partial_bracket(vertices: Arc<VertexSet>, v: Vertex, u: Vertex, form: PartialBracketForm) -> Result<Self> {
        vertices.check(v)?;
        vertices.check(u)?;
        Ok(Self::regular(
            vertices,
            Node::PartialBracket { v: v.0, u: u.0, form },
            -2,
        ))
    }

    /// Closed form of `(d̃v, d̃u)`.
    pub fn diff_bracket(vertices: Arc<VertexSet>, v: Vertex, u: Vertex) -> Result<Self> {
        vertices.check(v)?;
        vertices.check(u)?;
        Ok(Self::regular(vertices, Node::DiffBracket { v: v.0, u: u.0 }, 2))
    }

    /// Closed form of `(∂̃ᶠ, ∂̃ᵍ)` or `(d̃ᶠ, d̃ᵍ)` as a weighted double sum of
    /// pair brackets.
    pub fn weighted_bracket(
        f: &Weighting,
        g: &Weighting,
        which: BracketKind,
        form: PartialBracketForm,
    ) -> Result<Self> {
        f.same_vertices(g.vertices())?;
        let shift = match which {
            BracketKind::Partial => -2,
            BracketKind::Diff => 2,
        };
        Ok(Self::regular(
            f.vertices().clone(),
            Node::WeightedBracket {
                f: f.clone(),
                g: g.clone(),
                which,
                form,
            },
            shift,
        ))
    }

    fn same_vertices(&self, other: &GradedOperator) -> Result<()> {
        if Arc::ptr_eq(&self.vertices, &other.vertices) || self.vertices == other.vertices {
            Ok(())
        } else {
            Err(Error::VertexSetMismatch)
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &GradedOperator) -> Result<Self> {
        self.same_vertices(other)?;
        if self.domain != other.codomain {
            return Err(Error::SpaceMismatch(format!(
                "outer operator acts on the {} space, inner one maps into the {} space",
                self.domain.as_str(),
                other.codomain.as_str()
            )));
        }
        Ok(Self::build(
            self.vertices.clone(),
            Node::Compose(self.clone(), other.clone()),
            self.shift + other.shift,
            other.domain,
            self.codomain,
        ))
    }

    /// `self ∘ other + other ∘ self`
    pub fn anticommutator(&self, other: &GradedOperator) -> Result<Self> {
        self.same_vertices(other)?;
        if self.shift != other.shift {
            return Err(Error::ShiftMismatch(self.shift, other.shift));
        }
        let spaces = [self.domain, self.codomain, other.domain, other.codomain];
        if spaces.iter().any(|&s| s != self.domain) {
            return Err(Error::SpaceMismatch(
                "anticommutator operands must act within one space".into(),
            ));
        }
        Ok(Self::build(
            self.vertices.clone(),
            Node::Anticommutator(self.clone(), other.clone()),
            self.shift * 2,
            self.domain,
            self.domain,
        ))
    }

    /// Sum of operators with identical shift and spaces.
    pub fn sum(ops: Vec<GradedOperator>) -> Result<Self> {
        let first = ops
            .first()
            .ok_or_else(|| Error::Parse("sum of no operators".into()))?
            .clone();
        for op in &ops[1..] {
            first.same_vertices(op)?;
            if op.shift != first.shift {
                return Err(Error::ShiftMismatch(first.shift, op.shift));
            }
            if op.domain != first.domain || op.codomain != first.codomain {
                return Err(Error::SpaceMismatch("summands act between different spaces".into()));
            }
        }
        Ok(Self::build(
            first.vertices.clone(),
            Node::Sum(ops),
            first.shift,
            first.domain,
            first.codomain,
        ))
    }

    pub fn try_sub(&self, other: &GradedOperator) -> Result<Self> {
        Self::sum(vec![self.clone(), other.negate()])
    }

    pub fn scale(&self, factor: Scalar) -> Self {
        Self::build(
            self.vertices.clone(),
            Node::Scale(factor, self.clone()),
            self.shift,
            self.domain,
            self.codomain,
        )
    }

    pub fn negate(&self) -> Self {
        self.scale(-Scalar::one())
    }

    /// `P ∘ self ∘ ι`: the map a full-space operator induces on regular paths.
    pub fn induced_regular(&self) -> Result<Self> {
        let p = Self::projection(self.vertices.clone());
        let i = Self::inclusion(self.vertices.clone());
        p.compose(self)?.compose(&i)
    }

    pub fn vertices(&self) -> &Arc<VertexSet> {
        &self.vertices
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn domain(&self) -> Space {
        self.domain
    }

    pub fn codomain(&self) -> Space {
        self.codomain
    }

    pub(crate) fn node(&self) -> &Node {
        &self.node
    }

    /// Checks that every index used anywhere in the operator tree is valid
    /// when the operator is fed degree `n`.
    pub fn check_degree(&self, n: i64) -> Result<()> {
        if n < 0 {
            return Ok(());
        }
        let limit = |name: &'static str, i: usize, max: i64| {
            if (i as i64) <= max {
                Ok(())
            } else {
                Err(Error::IndexOutOfRange {
                    operator: name,
                    index: i,
                    degree: n as usize,
                })
            }
        };
        match &*self.node {
            Node::FacePartial { i, .. } => limit("face_partial", *i, n),
            Node::WeightedFace { i, .. } => limit("weighted_face", *i, n),
            Node::RegularFace { i, .. } => limit("regular_face", *i, n),
            Node::Degeneracy(i) => limit("degeneracy", *i, n),
            Node::Coface { i, .. } => limit("coface", *i, n + 1),
            Node::WeightedCoface { i, .. } => limit("weighted_coface", *i, n + 1),
            Node::RegularCoface { i, .. } => limit("regular_coface", *i, n + 1),
            Node::Compose(a, b) => {
                b.check_degree(n)?;
                a.check_degree(n + b.shift)
            }
            Node::Anticommutator(a, b) => {
                a.check_degree(n)?;
                b.check_degree(n)?;
                a.check_degree(n + b.shift)?;
                b.check_degree(n + a.shift)
            }
            Node::Sum(ops) => ops.iter().try_for_each(|op| op.check_degree(n)),
            Node::Scale(_, op) => op.check_degree(n),
            _ => Ok(()),
        }
    }

    /// Whether feeding degree `n` keeps every index valid and never hands a
    /// leaf operator a negative degree. Degree −1 is the zero space, so a
    /// composite passing through it is defined but degenerate; identity
    /// checks only instantiate operators for which this returns true.
    pub fn fully_defined_at(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        match &*self.node {
            Node::Compose(a, b) => b.fully_defined_at(n) && a.fully_defined_at(n + b.shift),
            Node::Anticommutator(a, b) => {
                a.fully_defined_at(n)
                    && b.fully_defined_at(n)
                    && a.fully_defined_at(n + b.shift)
                    && b.fully_defined_at(n + a.shift)
            }
            Node::Sum(ops) => ops.iter().all(|op| op.fully_defined_at(n)),
            Node::Scale(_, op) => op.fully_defined_at(n),
            _ => self.check_degree(n).is_ok(),
        }
    }

    /// Applies the operator to a chain. Every degree present in the chain
    /// must be a valid input degree, and a regular-domain operator only
    /// accepts regular chains.
    pub fn apply(&self, xi: &Chain) -> Result<Chain> {
        if **xi.vertices() != *self.vertices {
            return Err(Error::VertexSetMismatch);
        }
        if self.domain == Space::Regular {
            if let Some((p, _)) = xi.terms().iter().find(|(p, _)| !p.is_regular()) {
                return Err(Error::IrregularInput(p.render(&self.vertices)));
            }
        }
        for n in xi.degrees() {
            self.check_degree(n as i64)?;
        }
        Ok(self.eval(xi))
    }

    /// `(∂₀ᶠ, …, ∂ₙᶠ)` at input degree `n`.
    pub fn boundary_vector(f: &Weighting, n: usize) -> Vec<GradedOperator> {
        (0..=n).map(|i| Self::weighted_face(f, i)).collect()
    }

    /// `(d₀ᶠ, …, dₙ₊₁ᶠ)` at input degree `n`.
    pub fn coboundary_vector(f: &Weighting, n: usize) -> Vec<GradedOperator> {
        (0..=n + 1).map(|i| Self::weighted_coface(f, i)).collect()
    }
}

impl fmt::Debug for GradedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GradedOperator {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs = &self.vertices;
        let label = |v: &u32| vs.label(Vertex(*v)).to_owned();
        match &*self.node {
            Node::Zero => write!(out, "0"),
            Node::Identity => write!(out, "id"),
            Node::FacePartial { v, i } => write!(out, "∂{i}/∂{}", label(v)),
            Node::Coface { v, i } => write!(out, "d{i}{}", label(v)),
            Node::WeightedFace { f, i } => write!(out, "∂{i}^{f:?}"),
            Node::WeightedCoface { f, i } => write!(out, "d{i}^{f:?}"),
            Node::Boundary(f) => write!(out, "∂^{f:?}"),
            Node::Coboundary(f) => write!(out, "d^{f:?}"),
            Node::Degeneracy(i) => write!(out, "s{i}"),
            Node::Projection => write!(out, "P"),
            Node::Inclusion => write!(out, "ι"),
            Node::RegularFace { f, i } => write!(out, "∂̃{i}^{f:?}"),
            Node::RegularCoface { f, i } => write!(out, "d̃{i}^{f:?}"),
            Node::RegularBoundary(f) => write!(out, "∂̃^{f:?}"),
            Node::RegularCoboundary(f) => write!(out, "d̃^{f:?}"),
            Node::ReducedPartial(v) => write!(out, "∂̃/∂{}", label(v)),
            Node::ReducedDiff(v) => write!(out, "d̃{}", label(v)),
            Node::PartialBracket { v, u, form } => {
                write!(out, "(∂̃/∂{}, ∂̃/∂{})[{}]", label(v), label(u), form.as_str())
            }
            Node::DiffBracket { v, u } => write!(out, "(d̃{}, d̃{})", label(v), label(u)),
            Node::WeightedBracket { f, g, which, form } => match which {
                BracketKind::Partial => write!(out, "(∂̃^{f:?}, ∂̃^{g:?})[{}]", form.as_str()),
                BracketKind::Diff => write!(out, "(d̃^{f:?}, d̃^{g:?})"),
            },
            Node::Compose(a, b) => write!(out, "{a}∘{b}"),
            Node::Anticommutator(a, b) => write!(out, "({a}, {b})"),
            Node::Sum(ops) => {
                let parts: Vec<String> = ops.iter().map(|o| o.to_string()).collect();
                write!(out, "[{}]", parts.join(" + "))
            }
            Node::Scale(s, a) => write!(out, "{s}·{a}"),
        }
    }
}

/// `∂ᵢ/∂v` for the vertex labelled `v`.
pub fn face_partial(vertices: Arc<VertexSet>, v: &str, i: usize) -> Result<GradedOperator> {
    let vx = vertices.vertex(v)?;
    GradedOperator::face_partial(vertices, vx, i)
}

/// `dᵢv` for the vertex labelled `v`.
pub fn coface(vertices: Arc<VertexSet>, v: &str, i: usize) -> Result<GradedOperator> {
    let vx = vertices.vertex(v)?;
    GradedOperator::coface(vertices, vx, i)
}

pub fn weighted_face(f: &Weighting, i: usize) -> GradedOperator {
    GradedOperator::weighted_face(f, i)
}

pub fn weighted_coface(f: &Weighting, j: usize) -> GradedOperator {
    GradedOperator::weighted_coface(f, j)
}

pub fn boundary(f: &Weighting) -> GradedOperator {
    GradedOperator::boundary(f)
}

pub fn coboundary(f: &Weighting) -> GradedOperator {
    GradedOperator::coboundary(f)
}

pub fn degeneracy(vertices: Arc<VertexSet>, i: usize) -> GradedOperator {
    GradedOperator::degeneracy(vertices, i)
}

pub fn compose(a: &GradedOperator, b: &GradedOperator) -> Result<GradedOperator> {
    a.compose(b)
}

pub fn anticommutator(a: &GradedOperator, b: &GradedOperator) -> Result<GradedOperator> {
    a.anticommutator(b)
}

pub fn materialize(a: &GradedOperator, n: usize, cap: usize) -> Result<OperatorMatrix> {
    OperatorMatrix::materialize(a, n, cap)
}
