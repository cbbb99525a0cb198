use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a vertex inside its [`VertexSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub u32);

impl Vertex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An ordered finite alphabet of distinct vertex labels.
///
/// Vertex indices follow label order and fix the lexicographic order of
/// every basis built over the set.
#[derive(Clone)]
pub struct VertexSet {
    labels: Vec<String>,
    lookup: HashMap<String, u32>,
}

impl VertexSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        if labels.len() > u32::MAX as usize {
            return Err(Error::Parse("too many vertices".into()));
        }
        let mut lookup = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if lookup.insert(label.clone(), i as u32).is_some() {
                return Err(Error::DuplicateVertex(label.clone()));
            }
        }
        Ok(VertexSet { labels, lookup })
    }

    /// The set `{a, b, c, ...}` with `n` single-letter labels (falls back to
    /// `v26, v27, ...` beyond the alphabet).
    pub fn alphabet(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("v{i}")
            }
        }))
    }

    /// Number of vertices, `#V`.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v.index()]
    }

    pub fn vertex(&self, label: &str) -> Result<Vertex> {
        self.lookup
            .get(label)
            .map(|&i| Vertex(i))
            .ok_or_else(|| Error::UnknownVertex(label.to_owned()))
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = Vertex> + '_ {
        (0..self.labels.len() as u32).map(Vertex)
    }

    pub(crate) fn check(&self, v: Vertex) -> Result<()> {
        if v.index() < self.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                index: v.0,
                size: self.len(),
            })
        }
    }

    /// Renders a sequence of vertex indices. Single-character labels are
    /// concatenated (`abc`); longer labels are separated by dots.
    pub fn render(&self, vertices: &[u32]) -> String {
        let compact = self.labels.iter().all(|l| l.chars().count() == 1);
        let parts = vertices.iter().map(|&v| self.labels[v as usize].as_str());
        if compact {
            parts.collect()
        } else {
            parts.collect::<Vec<_>>().join(".")
        }
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for VertexSet {}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.labels).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_label_lists() {
        assert_eq!(VertexSet::new(Vec::<String>::new()), Err(Error::EmptyVertexSet));
        assert_eq!(VertexSet::new(["a", ""]), Err(Error::EmptyLabel));
        assert_eq!(VertexSet::new(["a", "b", "a"]), Err(Error::DuplicateVertex("a".into())));
    }

    #[test]
    fn lookup_follows_label_order() {
        let vs = VertexSet::new(["x", "y", "z"]).unwrap();
        assert_eq!(vs.len(), 3);
        assert_eq!(vs.vertex("z").unwrap(), Vertex(2));
        assert_eq!(vs.label(Vertex(1)), "y");
        assert!(matches!(vs.vertex("w"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn render_uses_separator_for_long_labels() {
        let short = VertexSet::alphabet(3).unwrap();
        assert_eq!(short.render(&[0, 2, 1]), "acb");
        let long = VertexSet::new(["v1", "v2"]).unwrap();
        assert_eq!(long.render(&[1, 0]), "v2.v1");
    }
}
