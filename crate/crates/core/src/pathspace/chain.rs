use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::pathspace::{ElementaryPath, VertexSet};
use crate::scalar::Scalar;

/// A finite linear combination of elementary paths with exact rational
/// coefficients, possibly mixing degrees.
///
/// Terms are kept sorted by (degree, lexicographic path) with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone)]
pub struct Chain {
    vertices: Arc<VertexSet>,
    terms: Vec<(ElementaryPath, Scalar)>,
}

/// Collects unsorted, possibly repeated terms and canonicalizes once.
#[derive(Default)]
pub(crate) struct Accumulator {
    terms: Vec<(ElementaryPath, Scalar)>,
}

impl Accumulator {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn push(&mut self, path: ElementaryPath, coeff: Scalar) {
        if !coeff.is_zero() {
            self.terms.push((path, coeff));
        }
    }

    pub(crate) fn extend_scaled(&mut self, chain: &Chain, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (p, c) in &chain.terms {
            self.terms.push((p.clone(), c * factor));
        }
    }

    pub(crate) fn finish(mut self, vertices: Arc<VertexSet>) -> Chain {
        self.terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(ElementaryPath, Scalar)> = Vec::with_capacity(self.terms.len());
        for (p, c) in self.terms {
            match out.last_mut() {
                Some((q, acc)) if *q == p => *acc += &c,
                _ => {
                    if out.last().is_some_and(|(_, acc)| acc.is_zero()) {
                        out.pop();
                    }
                    out.push((p, c));
                }
            }
        }
        if out.last().is_some_and(|(_, acc)| acc.is_zero()) {
            out.pop();
        }
        Chain { vertices, terms: out }
    }
}

impl Chain {
    pub fn zero(vertices: Arc<VertexSet>) -> Self {
        Chain {
            vertices,
            terms: Vec::new(),
        }
    }

    /// Builds a chain from arbitrary terms; repeated paths are summed and
    /// zero results dropped.
    pub fn from_terms<I>(vertices: Arc<VertexSet>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ElementaryPath, Scalar)>,
    {
        let mut acc = Accumulator::new();
        for (p, c) in terms {
            p.check(&vertices)?;
            acc.push(p, c);
        }
        Ok(acc.finish(vertices))
    }

    /// The chain `1·p`.
    pub fn basis(vertices: Arc<VertexSet>, path: ElementaryPath) -> Result<Self> {
        path.check(&vertices)?;
        Ok(Chain {
            vertices,
            terms: vec![(path, Scalar::one())],
        })
    }

    /// Parses a sum of words such as `"2*aba - abb + 1/2*c"`; intended for
    /// single-character labels.
    pub fn parse(vertices: Arc<VertexSet>, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(Chain::zero(vertices));
        }
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            let (coeff, word) = match term.split_once('*') {
                Some((c, w)) => (c.parse::<Scalar>()?, w),
                None => (Scalar::one(), term),
            };
            let coeff = if negative { -coeff } else { coeff };
            terms.push((ElementaryPath::parse(&vertices, word)?, coeff));
            rest = tail;
        }
        Chain::from_terms(vertices, terms)
    }

    pub fn vertices(&self) -> &Arc<VertexSet> {
        &self.vertices
    }

    pub fn terms(&self) -> &[(ElementaryPath, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(ElementaryPath, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, path: &ElementaryPath) -> Scalar {
        self.terms
            .binary_search_by(|(p, _)| p.cmp(path))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Degrees with a nonzero component, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.terms.iter().map(|(p, _)| p.degree()).collect();
        out.dedup();
        out
    }

    /// The degree of a nonzero homogeneous chain.
    pub fn degree(&self) -> Result<usize> {
        match self.degrees().as_slice() {
            [] => Err(Error::ZeroChainDegree),
            [n] => Ok(*n),
            _ => Err(Error::InhomogeneousChain),
        }
    }

    /// The degree-`n` component.
    pub fn component(&self, n: usize) -> Chain {
        Chain {
            vertices: self.vertices.clone(),
            terms: self.terms.iter().filter(|(p, _)| p.degree() == n).cloned().collect(),
        }
    }

    pub fn is_regular(&self) -> bool {
        self.terms.iter().all(|(p, _)| p.is_regular())
    }

    fn same_vertices(&self, other: &Chain) -> Result<()> {
        if Arc::ptr_eq(&self.vertices, &other.vertices) || self.vertices == other.vertices {
            Ok(())
        } else {
            Err(Error::VertexSetMismatch)
        }
    }

    pub fn try_add(&self, other: &Chain) -> Result<Chain> {
        self.same_vertices(other)?;
        let mut acc = Accumulator::new();
        acc.extend_scaled(self, &Scalar::one());
        acc.extend_scaled(other, &Scalar::one());
        Ok(acc.finish(self.vertices.clone()))
    }

    pub fn try_sub(&self, other: &Chain) -> Result<Chain> {
        self.same_vertices(other)?;
        let mut acc = Accumulator::new();
        acc.extend_scaled(self, &Scalar::one());
        acc.extend_scaled(other, &-Scalar::one());
        Ok(acc.finish(self.vertices.clone()))
    }

    pub fn scale(&self, factor: &Scalar) -> Chain {
        if factor.is_zero() {
            return Chain::zero(self.vertices.clone());
        }
        Chain {
            vertices: self.vertices.clone(),
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c * factor)).collect(),
        }
    }

    pub fn negate(&self) -> Chain {
        self.scale(&-Scalar::one())
    }

    /// The join `ξ ∗ η`: bilinear concatenation of paths.
    pub fn join(&self, other: &Chain) -> Result<Chain> {
        self.same_vertices(other)?;
        let mut acc = Accumulator::new();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                acc.push(p.concat(q), a * b);
            }
        }
        Ok(acc.finish(self.vertices.clone()))
    }

    /// Canonical inner product; components of different degree are orthogonal.
    pub fn inner(&self, other: &Chain) -> Result<Scalar> {
        self.same_vertices(other)?;
        let (mut i, mut j) = (0, 0);
        let mut sum = Scalar::zero();
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    sum += &(&self.terms[i].1 * &other.terms[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(sum)
    }

    /// Human-readable form, e.g. `2·aba - abb`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (p, c)) in self.terms.iter().enumerate() {
            let word = p.render(&self.vertices);
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}·"));
            }
            out.push_str(&word);
        }
        out
    }
}

impl PartialEq for Chain {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.vertices == other.vertices
    }
}

impl Eq for Chain {}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(n: usize) -> Arc<VertexSet> {
        Arc::new(VertexSet::alphabet(n).unwrap())
    }

    #[test]
    fn join_examples() {
        let v = vs(3);
        let c = |s: &str| Chain::parse(v.clone(), s).unwrap();
        assert_eq!(c("ab").join(&c("c")).unwrap(), c("abc"));
        assert_eq!(c("a + b").join(&c("a")).unwrap(), c("aa + ba"));
        assert_eq!(c("2*ab").join(&c("a - b")).unwrap(), c("2*aba - 2*abb"));
    }

    #[test]
    fn inner_examples() {
        let v = vs(2);
        let c = |s: &str| Chain::parse(v.clone(), s).unwrap();
        assert_eq!(c("ab").inner(&c("ab")).unwrap(), Scalar::one());
        assert_eq!(c("ab").inner(&c("ba")).unwrap(), Scalar::zero());
        assert_eq!(c("2*ab + 3*ba").inner(&c("ab - ba")).unwrap(), Scalar::from(-1));
        assert_eq!(c("a").inner(&c("a + aa")).unwrap(), Scalar::one());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let v = vs(2);
        let c = Chain::parse(v.clone(), "ab - ab + a").unwrap();
        assert_eq!(c.terms().len(), 1);
        let z = c.try_sub(&c).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), Err(Error::ZeroChainDegree));
    }

    #[test]
    fn degree_queries() {
        let v = vs(2);
        assert_eq!(Chain::parse(v.clone(), "ab - ba").unwrap().degree(), Ok(1));
        assert_eq!(
            Chain::parse(v.clone(), "a + ab").unwrap().degree(),
            Err(Error::InhomogeneousChain)
        );
        assert_eq!(Chain::parse(v.clone(), "a + ab").unwrap().degrees(), vec![0, 1]);
    }

    #[test]
    fn mismatched_vertex_sets_are_rejected() {
        let a = Chain::parse(vs(2), "a").unwrap();
        let b = Chain::parse(Arc::new(VertexSet::new(["a", "c"]).unwrap()), "a").unwrap();
        assert_eq!(a.try_add(&b), Err(Error::VertexSetMismatch));
        assert_eq!(a.join(&b), Err(Error::VertexSetMismatch));
        // equal labels in separate allocations are the same set
        assert!(a.try_add(&Chain::parse(vs(2), "b").unwrap()).is_ok());
    }

    #[test]
    fn out_of_range_paths_are_rejected() {
        let err = Chain::from_terms(vs(2), [(ElementaryPath::new([0, 5]), Scalar::one())]);
        assert!(matches!(err, Err(Error::VertexOutOfRange { index: 5, .. })));
    }

    #[test]
    fn render() {
        let v = vs(2);
        assert_eq!(Chain::parse(v.clone(), "-ab + 1/2*a").unwrap().render(), "1/2·a - ab");
        assert_eq!(Chain::zero(v).render(), "0");
    }
}
