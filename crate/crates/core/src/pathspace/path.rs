use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::pathspace::{Vertex, VertexSet};

/// An elementary `n`-path `v0 v1 ... vn`: a nonempty sequence of vertex
/// indices, repeats allowed.
///
/// Paths order first by length and then lexicographically, so within one
/// degree the order is exactly the basis order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementaryPath(SmallVec<[u32; 8]>);

impl ElementaryPath {
    /// Panics if `vertices` is empty.
    pub fn new(vertices: impl IntoIterator<Item = u32>) -> Self {
        let v: SmallVec<[u32; 8]> = vertices.into_iter().collect();
        assert!(!v.is_empty(), "an elementary path has at least one vertex");
        ElementaryPath(v)
    }

    pub(crate) fn from_smallvec(v: SmallVec<[u32; 8]>) -> Self {
        debug_assert!(!v.is_empty());
        ElementaryPath(v)
    }

    /// Parses a path from labels, e.g. `["a", "b"]`.
    pub fn from_labels<S: AsRef<str>>(vertices: &VertexSet, labels: &[S]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Parse("a path needs at least one vertex".into()));
        }
        labels
            .iter()
            .map(|l| vertices.vertex(l.as_ref()).map(|v| v.0))
            .collect::<Result<SmallVec<_>>>()
            .map(ElementaryPath)
    }

    /// Parses a path written as concatenated single-character labels, e.g. `"aba"`.
    pub fn parse(vertices: &VertexSet, word: &str) -> Result<Self> {
        let labels: Vec<String> = word.chars().map(String::from).collect();
        Self::from_labels(vertices, &labels)
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn vertex(&self, i: usize) -> Vertex {
        Vertex(self.0[i])
    }

    /// True iff no two consecutive vertices coincide.
    pub fn is_regular(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    /// `v0 ... v̂i ... vn`, or `None` when the path has a single vertex.
    pub fn remove(&self, i: usize) -> Option<Self> {
        if self.0.len() == 1 {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(i);
        Some(ElementaryPath(v))
    }

    /// Deletes the two adjacent vertices at `i` and `i + 1`.
    pub fn remove_pair(&self, i: usize) -> Option<Self> {
        if self.0.len() <= 2 {
            return None;
        }
        let mut v = SmallVec::with_capacity(self.0.len() - 2);
        v.extend_from_slice(&self.0[..i]);
        v.extend_from_slice(&self.0[i + 2..]);
        Some(ElementaryPath(v))
    }

    /// `v0 ... v(i-1) w v(i) ... vn`
    pub fn insert(&self, i: usize, w: u32) -> Self {
        let mut v = self.0.clone();
        v.insert(i, w);
        ElementaryPath(v)
    }

    /// Inserts the two vertices `first second` starting at slot `i`.
    pub fn insert_pair(&self, i: usize, first: u32, second: u32) -> Self {
        let mut v = SmallVec::with_capacity(self.0.len() + 2);
        v.extend_from_slice(&self.0[..i]);
        v.push(first);
        v.push(second);
        v.extend_from_slice(&self.0[i..]);
        ElementaryPath(v)
    }

    /// Concatenation `v0 ... vn u0 ... um`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ElementaryPath(v)
    }

    pub(crate) fn check(&self, vertices: &VertexSet) -> Result<()> {
        self.0.iter().try_for_each(|&v| vertices.check(Vertex(v)))
    }

    pub fn render(&self, vertices: &VertexSet) -> String {
        vertices.render(&self.0)
    }

    pub fn labels<'a>(&self, vertices: &'a VertexSet) -> Vec<&'a str> {
        self.0.iter().map(|&v| vertices.label(Vertex(v))).collect()
    }
}

impl Ord for ElementaryPath {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for ElementaryPath {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementaryPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> VertexSet {
        VertexSet::alphabet(3).unwrap()
    }

    #[test]
    fn parse_and_render() {
        let vs = abc();
        let p = ElementaryPath::parse(&vs, "abca").unwrap();
        assert_eq!(p.degree(), 3);
        assert_eq!(p.vertices(), &[0, 1, 2, 0]);
        assert_eq!(p.render(&vs), "abca");
        assert!(ElementaryPath::parse(&vs, "abd").is_err());
        assert!(ElementaryPath::parse(&vs, "").is_err());
    }

    #[test]
    fn regularity_checks_consecutive_pairs_only() {
        let vs = abc();
        assert!(ElementaryPath::parse(&vs, "aba").unwrap().is_regular());
        assert!(!ElementaryPath::parse(&vs, "aab").unwrap().is_regular());
        assert!(ElementaryPath::parse(&vs, "a").unwrap().is_regular());
    }

    #[test]
    fn edits() {
        let vs = abc();
        let p = ElementaryPath::parse(&vs, "abc").unwrap();
        assert_eq!(p.remove(1).unwrap().render(&vs), "ac");
        assert_eq!(p.remove_pair(1).unwrap().render(&vs), "a");
        assert_eq!(p.insert(3, 0).render(&vs), "abca");
        assert_eq!(p.insert_pair(0, 2, 1).render(&vs), "cbabc");
        assert!(ElementaryPath::new([0]).remove(0).is_none());
        assert!(ElementaryPath::new([0, 1]).remove_pair(0).is_none());
    }

    #[test]
    fn order_is_length_then_lexicographic() {
        let a = ElementaryPath::new([2]);
        let b = ElementaryPath::new([0, 0]);
        let c = ElementaryPath::new([0, 1]);
        assert!(a < b && b < c);
    }
}
