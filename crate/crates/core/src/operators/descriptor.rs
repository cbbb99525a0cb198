use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{GradedOperator, Node};
use crate::pathspace::{Space, Vertex, VertexSet, Weighting};
use crate::regular::{BracketKind, PartialBracketForm};
use crate::scalar::Scalar;

/// Structured operator description, the JSON form accepted by the CLI.
///
/// ```json
/// {"kind": "compose", "args": [
///     {"kind": "weighted_face", "index": 0, "weighting": {"a": "1", "b": "2"}},
///     {"kind": "coface", "index": 1, "vertex": "a"}]}
/// ```
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Descriptor {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weighting: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weighting2: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub which: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub args: Option<Vec<Descriptor>>,
}

fn missing(kind: &str, field: &str) -> Error {
    Error::Parse(format!("operator `{kind}` requires field `{field}`"))
}

fn parse_space(s: Option<&str>) -> Result<Space> {
    match s {
        None | Some("full") => Ok(Space::Full),
        Some("regular") => Ok(Space::Regular),
        Some(other) => Err(Error::Parse(format!("unknown space `{other}`"))),
    }
}

impl Descriptor {
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(value.clone()).map_err(|e| Error::Parse(format!("invalid operator descriptor: {e}")))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("descriptor serializes")
    }

    fn index(&self) -> Result<usize> {
        self.index.ok_or_else(|| missing(&self.kind, "index"))
    }

    fn vertex(&self, vs: &VertexSet) -> Result<Vertex> {
        vs.vertex(self.vertex.as_deref().ok_or_else(|| missing(&self.kind, "vertex"))?)
    }

    fn pair(&self, vs: &VertexSet) -> Result<(Vertex, Vertex)> {
        let [v, u] = self.pair.as_ref().ok_or_else(|| missing(&self.kind, "pair"))?;
        Ok((vs.vertex(v)?, vs.vertex(u)?))
    }

    fn weighting(&self, vs: &Arc<VertexSet>) -> Result<Weighting> {
        let w = self
            .weighting
            .as_ref()
            .ok_or_else(|| missing(&self.kind, "weighting"))?;
        Weighting::from_json(vs.clone(), w)
    }

    fn weighting2(&self, vs: &Arc<VertexSet>) -> Result<Weighting> {
        let w = self
            .weighting2
            .as_ref()
            .ok_or_else(|| missing(&self.kind, "weighting2"))?;
        Weighting::from_json(vs.clone(), w)
    }

    fn form(&self) -> Result<PartialBracketForm> {
        match self.form.as_deref() {
            None | Some("symmetric") => Ok(PartialBracketForm::Symmetric),
            Some("antisymmetric") => Ok(PartialBracketForm::Antisymmetric),
            Some(other) => Err(Error::Parse(format!("unknown bracket form `{other}`"))),
        }
    }

    fn args(&self, vs: &Arc<VertexSet>, count: Option<usize>) -> Result<Vec<GradedOperator>> {
        let args = self.args.as_ref().ok_or_else(|| missing(&self.kind, "args"))?;
        if let Some(k) = count {
            if args.len() != k {
                return Err(Error::Parse(format!(
                    "operator `{}` takes {k} arguments, got {}",
                    self.kind,
                    args.len()
                )));
            }
        }
        args.iter().map(|d| d.build(vs.clone())).collect()
    }

    /// Builds the operator over `vs`.
    pub fn build(&self, vs: Arc<VertexSet>) -> Result<GradedOperator> {
        let op = match self.kind.as_str() {
            "zero" => GradedOperator::zero(
                vs.clone(),
                self.shift.unwrap_or(0),
                parse_space(self.space.as_deref())?,
                parse_space(self.space.as_deref())?,
            ),
            "identity" => GradedOperator::identity(vs.clone(), parse_space(self.space.as_deref())?),
            "face_partial" => GradedOperator::face_partial(vs.clone(), self.vertex(&vs)?, self.index()?)?,
            "coface" => GradedOperator::coface(vs.clone(), self.vertex(&vs)?, self.index()?)?,
            "weighted_face" => GradedOperator::weighted_face(&self.weighting(&vs)?, self.index()?),
            "weighted_coface" => GradedOperator::weighted_coface(&self.weighting(&vs)?, self.index()?),
            "boundary" => GradedOperator::boundary(&self.weighting(&vs)?),
            "coboundary" => GradedOperator::coboundary(&self.weighting(&vs)?),
            "degeneracy" => GradedOperator::degeneracy(vs.clone(), self.index()?),
            "project_regular" => GradedOperator::projection(vs.clone()),
            "inclusion" => GradedOperator::inclusion(vs.clone()),
            "regular_face" => GradedOperator::regular_face(&self.weighting(&vs)?, self.index()?),
            "regular_coface" => GradedOperator::regular_coface(&self.weighting(&vs)?, self.index()?),
            "regular_boundary" => GradedOperator::regular_boundary(&self.weighting(&vs)?),
            "regular_coboundary" => GradedOperator::regular_coboundary(&self.weighting(&vs)?),
            "reduced_partial" => GradedOperator::reduced_partial(vs.clone(), self.vertex(&vs)?)?,
            "reduced_diff" => GradedOperator::reduced_diff(vs.clone(), self.vertex(&vs)?)?,
            "partial_bracket" => {
                let (v, u) = self.pair(&vs)?;
                GradedOperator::partial_bracket(vs.clone(), v, u, self.form()?)?
            }
            "diff_bracket" => {
                let (v, u) = self.pair(&vs)?;
                GradedOperator::diff_bracket(vs.clone(), v, u)?
            }
            "weighted_bracket" => {
                let which = match self.which.as_deref() {
                    Some("partial") => BracketKind::Partial,
                    Some("diff") => BracketKind::Diff,
                    Some(other) => return Err(Error::Parse(format!("unknown bracket `{other}`"))),
                    None => return Err(missing(&self.kind, "which")),
                };
                GradedOperator::weighted_bracket(&self.weighting(&vs)?, &self.weighting2(&vs)?, which, self.form()?)?
            }
            "compose" => {
                let args = self.args(&vs, None)?;
                let mut it = args.into_iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::Parse("compose needs at least one argument".into()))?;
                it.try_fold(first, |acc, op| acc.compose(&op))?
            }
            "anticommutator" => {
                let args = self.args(&vs, Some(2))?;
                args[0].anticommutator(&args[1])?
            }
            "sum" => GradedOperator::sum(self.args(&vs, None)?)?,
            "scale" => {
                let factor: Scalar = self
                    .factor
                    .as_deref()
                    .ok_or_else(|| missing(&self.kind, "factor"))?
                    .parse()?;
                self.args(&vs, Some(1))?[0].scale(factor)
            }
            other => return Err(Error::Parse(format!("unknown operator kind `{other}`"))),
        };
        Ok(op)
    }
}

impl GradedOperator {
    /// Parses a descriptor document and builds the operator over `vs`.
    pub fn from_descriptor(value: &serde_json::Value, vs: Arc<VertexSet>) -> Result<Self> {
        Descriptor::from_json(value)?.build(vs)
    }

    /// The descriptor that rebuilds this operator.
    pub fn descriptor(&self) -> Descriptor {
        let vs = self.vertices();
        let label = |v: &u32| vs.label(Vertex(*v)).to_owned();
        let d = |kind: &str| Descriptor {
            kind: kind.into(),
            ..Descriptor::default()
        };
        let space = |s: Space| (s == Space::Regular).then(|| "regular".to_owned());
        match self.node() {
            Node::Zero => Descriptor {
                shift: Some(self.shift()),
                space: space(self.domain()),
                ..d("zero")
            },
            Node::Identity => Descriptor {
                space: space(self.domain()),
                ..d("identity")
            },
            Node::FacePartial { v, i } => Descriptor {
                vertex: Some(label(v)),
                index: Some(*i),
                ..d("face_partial")
            },
            Node::Coface { v, i } => Descriptor {
                vertex: Some(label(v)),
                index: Some(*i),
                ..d("coface")
            },
            Node::WeightedFace { f, i } => Descriptor {
                weighting: Some(f.to_json()),
                index: Some(*i),
                ..d("weighted_face")
            },
            Node::WeightedCoface { f, i } => Descriptor {
                weighting: Some(f.to_json()),
                index: Some(*i),
                ..d("weighted_coface")
            },
            Node::Boundary(f) => Descriptor {
                weighting: Some(f.to_json()),
                ..d("boundary")
            },
            Node::Coboundary(f) => Descriptor {
                weighting: Some(f.to_json()),
                ..d("coboundary")
            },
            Node::Degeneracy(i) => Descriptor {
                index: Some(*i),
                ..d("degeneracy")
            },
            Node::Projection => d("project_regular"),
            Node::Inclusion => d("inclusion"),
            Node::RegularFace { f, i } => Descriptor {
                weighting: Some(f.to_json()),
                index: Some(*i),
                ..d("regular_face")
            },
            Node::RegularCoface { f, i } => Descriptor {
                weighting: Some(f.to_json()),
                index: Some(*i),
                ..d("regular_coface")
            },
            Node::RegularBoundary(f) => Descriptor {
                weighting: Some(f.to_json()),
                ..d("regular_boundary")
            },
            Node::RegularCoboundary(f) => Descriptor {
                weighting: Some(f.to_json()),
                ..d("regular_coboundary")
            },
            Node::ReducedPartial(v) => Descriptor {
                vertex: Some(label(v)),
                ..d("reduced_partial")
            },
            Node::ReducedDiff(v) => Descriptor {
                vertex: Some(label(v)),
                ..d("reduced_diff")
            },
            Node::PartialBracket { v, u, form } => Descriptor {
                pair: Some([label(v), label(u)]),
                form: Some(form.as_str().into()),
                ..d("partial_bracket")
            },
            Node::DiffBracket { v, u } => Descriptor {
                pair: Some([label(v), label(u)]),
                ..d("diff_bracket")
            },
            Node::WeightedBracket { f, g, which, form } => Descriptor {
                weighting: Some(f.to_json()),
                weighting2: Some(g.to_json()),
                which: Some(which.as_str().into()),
                form: Some(form.as_str().into()),
                ..d("weighted_bracket")
            },
            Node::Compose(a, b) => Descriptor {
                args: Some(vec![a.descriptor(), b.descriptor()]),
                ..d("compose")
            },
            Node::Anticommutator(a, b) => Descriptor {
                args: Some(vec![a.descriptor(), b.descriptor()]),
                ..d("anticommutator")
            },
            Node::Sum(ops) => Descriptor {
                args: Some(ops.iter().map(GradedOperator::descriptor).collect()),
                ..d("sum")
            },
            Node::Scale(s, a) => Descriptor {
                factor: Some(s.to_string()),
                args: Some(vec![a.descriptor()]),
                ..d("scale")
            },
        }
    }
}
