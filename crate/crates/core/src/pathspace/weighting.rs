use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::pathspace::{Vertex, VertexSet};
use crate::scalar::Scalar;

/// A rational-valued function on the vertices.
#[derive(Clone)]
pub struct Weighting {
    vertices: Arc<VertexSet>,
    values: Vec<Scalar>,
}

impl Weighting {
    pub fn new(vertices: Arc<VertexSet>, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != vertices.len() {
            return Err(Error::WeightingLength {
                expected: vertices.len(),
                got: values.len(),
            });
        }
        Ok(Weighting { vertices, values })
    }

    /// Shorthand for integer-valued weightings.
    pub fn from_integers(vertices: Arc<VertexSet>, values: &[i64]) -> Result<Self> {
        Self::new(vertices, values.iter().map(|&v| Scalar::from(v)).collect())
    }

    pub fn zero(vertices: Arc<VertexSet>) -> Self {
        let values = vec![Scalar::zero(); vertices.len()];
        Weighting { vertices, values }
    }

    pub fn ones(vertices: Arc<VertexSet>) -> Self {
        let values = vec![Scalar::one(); vertices.len()];
        Weighting { vertices, values }
    }

    /// The characteristic function `χ_v`.
    pub fn characteristic(vertices: Arc<VertexSet>, v: Vertex) -> Result<Self> {
        vertices.check(v)?;
        let mut w = Self::zero(vertices);
        w.values[v.index()] = Scalar::one();
        Ok(w)
    }

    pub fn vertices(&self) -> &Arc<VertexSet> {
        &self.vertices
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn value(&self, v: u32) -> &Scalar {
        &self.values[v as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    /// Vertices with a nonzero value, paired with that value.
    pub fn support(&self) -> impl Iterator<Item = (u32, &Scalar)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(i, s)| (i as u32, s))
    }

    pub(crate) fn same_vertices(&self, other: &VertexSet) -> Result<()> {
        if *self.vertices == *other {
            Ok(())
        } else {
            Err(Error::VertexSetMismatch)
        }
    }

    /// `Σ_{v ∈ subset} f(v) g(v)`; `None` sums over every vertex.
    pub fn inner(&self, other: &Weighting, subset: Option<&[Vertex]>) -> Result<Scalar> {
        self.same_vertices(&other.vertices)?;
        match subset {
            None => Ok(self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum()),
            Some(vs) => {
                let mut seen = vec![false; self.values.len()];
                let mut sum = Scalar::zero();
                for &v in vs {
                    self.vertices.check(v)?;
                    if !std::mem::replace(&mut seen[v.index()], true) {
                        sum += &(&self.values[v.index()] * &other.values[v.index()]);
                    }
                }
                Ok(sum)
            }
        }
    }

    /// The squared norm `⟨f, f⟩`.
    pub fn norm2(&self) -> Scalar {
        self.values.iter().map(|a| a * a).sum()
    }

    /// `{"a": "1", "b": "-2/5"}` with every vertex present.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .vertices
            .labels()
            .iter()
            .zip(&self.values)
            .map(|(l, v)| (l.clone(), serde_json::Value::String(v.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(vertices: Arc<VertexSet>, value: &serde_json::Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("weighting must be a JSON object".into()))?;
        let mut values = vec![None; vertices.len()];
        for (label, raw) in obj {
            let v = vertices.vertex(label)?;
            let s = match raw {
                serde_json::Value::String(s) => s.parse::<Scalar>()?,
                serde_json::Value::Number(n) if n.is_i64() => Scalar::from(n.as_i64().unwrap()),
                _ => {
                    return Err(Error::Parse(format!(
                        "weighting value for `{label}` must be a rational string"
                    )))
                }
            };
            values[v.index()] = Some(s);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| Error::Parse(format!("weighting is missing vertex `{}`", vertices.labels()[i])))
            })
            .collect::<Result<Vec<_>>>()?;
        Weighting::new(vertices, values)
    }
}

impl PartialEq for Weighting {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && self.vertices == other.vertices
    }
}

impl Eq for Weighting {}

impl Hash for Weighting {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.values.hash(state);
    }
}

impl fmt::Debug for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(n: usize) -> Arc<VertexSet> {
        Arc::new(VertexSet::alphabet(n).unwrap())
    }

    #[test]
    fn inner_products() {
        let v = vs(3);
        let f = Weighting::from_integers(v.clone(), &[1, 2, 3]).unwrap();
        let g = Weighting::ones(v.clone());
        assert_eq!(f.inner(&g, None).unwrap(), Scalar::from(6));
        assert_eq!(f.inner(&f, Some(&[Vertex(2)])).unwrap(), Scalar::from(9));
        assert_eq!(f.inner(&f, Some(&[])).unwrap(), Scalar::zero());
        // repeated subset entries count once
        assert_eq!(f.inner(&f, Some(&[Vertex(2), Vertex(2)])).unwrap(), Scalar::from(9));
        let a = Weighting::characteristic(vs(2), Vertex(0)).unwrap();
        let b = Weighting::characteristic(vs(2), Vertex(1)).unwrap();
        assert_eq!(a.inner(&a, None).unwrap(), Scalar::one());
        assert_eq!(a.inner(&b, None).unwrap(), Scalar::zero());
    }

    #[test]
    fn norms() {
        assert_eq!(
            Weighting::from_integers(vs(2), &[1, 2]).unwrap().norm2(),
            Scalar::from(5)
        );
        assert_eq!(Weighting::zero(vs(2)).norm2(), Scalar::zero());
    }

    #[test]
    fn characteristic_values() {
        let w = Weighting::characteristic(vs(3), Vertex(2)).unwrap();
        assert_eq!(w.values(), &[Scalar::zero(), Scalar::zero(), Scalar::one()]);
        assert!(Weighting::characteristic(vs(2), Vertex(2)).is_err());
    }

    #[test]
    fn length_is_checked() {
        assert_eq!(
            Weighting::from_integers(vs(3), &[1, 2]).unwrap_err(),
            Error::WeightingLength { expected: 3, got: 2 }
        );
    }

    #[test]
    fn json_round_trip() {
        let v = vs(3);
        let doc = serde_json::json!({"a": "1", "b": "-2/5", "c": "0"});
        let w = Weighting::from_json(v.clone(), &doc).unwrap();
        assert_eq!(w.to_json(), doc);
        assert!(Weighting::from_json(v.clone(), &serde_json::json!({"a": "1"})).is_err());
        assert!(Weighting::from_json(v, &serde_json::json!({"a": "1", "b": "1", "c": "1", "d": "1"})).is_err());
    }
}
