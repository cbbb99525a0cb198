//! The graded path space over a finite vertex set.

mod basis;
mod chain;
mod path;
mod vertex;
mod weighting;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use basis::{Basis, Space};
pub(crate) use chain::Accumulator;
pub use chain::Chain;
pub use path::ElementaryPath;
pub use vertex::{Vertex, VertexSet};
pub use weighting::Weighting;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// All elementary `n`-paths in lexicographic order.
pub fn enumerate_basis(vertices: &VertexSet, n: usize, cap: usize) -> Result<Vec<ElementaryPath>> {
    let b = Basis::new(vertices.len(), n as i64, Space::Full, cap)?;
    Ok(b.iter().collect())
}

pub fn join(xi: &Chain, eta: &Chain) -> Result<Chain> {
    xi.join(eta)
}

pub fn inner_chain(xi: &Chain, eta: &Chain) -> Result<Scalar> {
    xi.inner(eta)
}

pub fn weighting_inner(f: &Weighting, g: &Weighting, subset: Option<&[Vertex]>) -> Result<Scalar> {
    f.inner(g, subset)
}

pub fn weighting_norm2(f: &Weighting) -> Scalar {
    f.norm2()
}

/// `χ_v` for the vertex labelled `label`.
pub fn characteristic(vertices: Arc<VertexSet>, label: &str) -> Result<Weighting> {
    let v = vertices.vertex(label)?;
    Weighting::characteristic(vertices, v)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    path: Vec<String>,
    coeff: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainDoc {
    #[serde(default)]
    vertices: Option<Vec<String>>,
    terms: Vec<TermDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    space: Option<String>,
}

/// Reads the chain JSON format.
///
/// `fallback` supplies the vertex set when the document has none; when both
/// are present they must agree. A document tagged `"space": "regular"` must
/// contain only regular paths.
pub fn chain_from_json(value: &serde_json::Value, fallback: Option<Arc<VertexSet>>) -> Result<(Chain, Space)> {
    let doc: ChainDoc =
        serde_json::from_value(value.clone()).map_err(|e| Error::Parse(format!("invalid chain document: {e}")))?;
    let vertices = match (doc.vertices, fallback) {
        (Some(labels), Some(given)) => {
            let own = VertexSet::new(labels)?;
            if own != *given {
                return Err(Error::Parse(format!(
                    "vertex set conflict: chain declares {:?}, command line gives {:?}",
                    own.labels(),
                    given.labels()
                )));
            }
            given
        }
        (Some(labels), None) => Arc::new(VertexSet::new(labels)?),
        (None, Some(given)) => given,
        (None, None) => return Err(Error::Parse("chain document has no vertex set".into())),
    };
    let space = match doc.space.as_deref() {
        None | Some("full") => Space::Full,
        Some("regular") => Space::Regular,
        Some(other) => return Err(Error::Parse(format!("unknown space `{other}`"))),
    };
    let mut terms = Vec::with_capacity(doc.terms.len());
    for t in doc.terms {
        let path = ElementaryPath::from_labels(&vertices, &t.path)?;
        let coeff = match &t.coeff {
            serde_json::Value::String(s) => s.parse::<Scalar>()?,
            serde_json::Value::Number(n) if n.is_i64() => Scalar::from(n.as_i64().unwrap()),
            other => return Err(Error::Parse(format!("invalid coefficient {other}"))),
        };
        if coeff.is_zero() {
            return Err(Error::Parse(format!(
                "zero coefficient on path `{}`",
                path.render(&vertices)
            )));
        }
        if space == Space::Regular && !path.is_regular() {
            return Err(Error::Parse(format!(
                "irregular path `{}` in a regular chain",
                path.render(&vertices)
            )));
        }
        terms.push((path, coeff));
    }
    Ok((Chain::from_terms(vertices, terms)?, space))
}

/// Canonical chain JSON with terms in basis order.
pub fn chain_to_json(chain: &Chain, space: Space) -> serde_json::Value {
    let vs = chain.vertices();
    let terms = chain
        .terms()
        .iter()
        .map(|(p, c)| {
            serde_json::json!({
                "path": p.labels(vs),
                "coeff": c.to_string(),
            })
        })
        .collect::<Vec<_>>();
    let mut doc = serde_json::json!({
        "vertices": vs.labels(),
        "terms": terms,
    });
    if space == Space::Regular {
        doc["space"] = "regular".into();
    }
    doc
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn basis_examples() {
        let ab = VertexSet::alphabet(2).unwrap();
        let render = |n| -> Vec<String> {
            enumerate_basis(&ab, n, 100)
                .unwrap()
                .iter()
                .map(|p| p.render(&ab))
                .collect()
        };
        assert_eq!(render(0), ["a", "b"]);
        assert_eq!(render(1), ["aa", "ab", "ba", "bb"]);
        let abc = VertexSet::alphabet(3).unwrap();
        assert_eq!(enumerate_basis(&abc, 2, 100).unwrap().len(), 27);
        assert!(matches!(
            enumerate_basis(&abc, 2, 26),
            Err(Error::BasisCapExceeded { .. })
        ));
    }

    #[test]
    fn characteristic_by_label() {
        let v = Arc::new(VertexSet::alphabet(2).unwrap());
        let a = characteristic(v.clone(), "a").unwrap();
        assert_eq!(a.values(), &[Scalar::one(), Scalar::zero()]);
        assert!(characteristic(v, "z").is_err());
    }

    #[test]
    fn chain_json_round_trip() {
        let doc = json!({
            "vertices": ["a", "b", "c"],
            "terms": [
                {"path": ["b", "a"], "coeff": "3"},
                {"path": ["a", "b"], "coeff": "2/3"}
            ]
        });
        let (c, space) = chain_from_json(&doc, None).unwrap();
        assert_eq!(space, Space::Full);
        let out = chain_to_json(&c, space);
        assert_eq!(out["terms"][0]["path"], json!(["a", "b"]));
        assert_eq!(out["terms"][0]["coeff"], "2/3");
        assert_eq!(chain_from_json(&out, None).unwrap().0, c);
    }

    #[test]
    fn chain_json_rejections() {
        let zero = json!({"vertices": ["a"], "terms": [{"path": ["a"], "coeff": "0"}]});
        assert!(chain_from_json(&zero, None).is_err());
        let irregular = json!({
            "vertices": ["a", "b"],
            "space": "regular",
            "terms": [{"path": ["a", "a", "b"], "coeff": "1"}]
        });
        let err = chain_from_json(&irregular, None).unwrap_err();
        assert!(err.to_string().contains("aab"), "{err}");
        let doc = json!({"vertices": ["a", "b"], "terms": []});
        let other = Arc::new(VertexSet::alphabet(3).unwrap());
        assert!(chain_from_json(&doc, Some(other)).is_err());
        let unknown = json!({"vertices": ["a"], "terms": [{"path": ["q"], "coeff": "1"}]});
        assert!(chain_from_json(&unknown, None).is_err());
    }
}
