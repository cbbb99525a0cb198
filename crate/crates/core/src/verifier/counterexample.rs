//! Search for basis paths on which a regular identity fails.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::operators::GradedOperator;
use crate::pathspace::{Basis, Chain, ElementaryPath, Space, VertexSet, Weighting};

/// Regular identities addressed by the search. The first three are the
/// index cases left out of the regular simplicial-like identities; the
/// others are in-range cases where no witness should exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// `∂̃ᵢᶠ∘∂̃ⱼᵍ = −∂̃ⱼ₋₁ᵍ∘∂̃ᵢᶠ` at `i = j − 1`
    RegFaceSwapAdjacent,
    /// `∂̃ᵢᶠ∘d̃ⱼᵍ` swapped as in the outer cases, at `i = j ± 1`
    RegMixedAdjacent,
    /// `d̃ᵢᶠ∘d̃ⱼᵍ = −d̃ⱼ₊₁ᵍ∘d̃ᵢᶠ` at `i = j`
    RegCofaceEqual,
    RegFaceSwap,
    RegMixedLower,
    RegMixedUpper,
    RegCoface,
}

impl IdentityId {
    pub const ALL: [IdentityId; 7] = [
        IdentityId::RegFaceSwapAdjacent,
        IdentityId::RegMixedAdjacent,
        IdentityId::RegCofaceEqual,
        IdentityId::RegFaceSwap,
        IdentityId::RegMixedLower,
        IdentityId::RegMixedUpper,
        IdentityId::RegCoface,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::RegFaceSwapAdjacent => "reg-face-swap-adjacent",
            IdentityId::RegMixedAdjacent => "reg-mixed-adjacent",
            IdentityId::RegCofaceEqual => "reg-coface-equal",
            IdentityId::RegFaceSwap => "reg-face-swap",
            IdentityId::RegMixedLower => "reg-mixed-lower",
            IdentityId::RegMixedUpper => "reg-mixed-upper",
            IdentityId::RegCoface => "reg-coface",
        }
    }

    /// Whether the identity is asserted for these indices.
    pub fn in_range(self) -> bool {
        matches!(
            self,
            IdentityId::RegFaceSwap | IdentityId::RegMixedLower | IdentityId::RegMixedUpper | IdentityId::RegCoface
        )
    }

    /// Index pairs `(i, j)` at input degree `n`, lexicographic.
    fn pairs(self, n: usize) -> Vec<(usize, usize)> {
        let top = n + 1;
        let all = (0..=top).flat_map(|i| (0..=top).map(move |j| (i, j)));
        let keep = |&(i, j): &(usize, usize)| match self {
            IdentityId::RegFaceSwapAdjacent => j <= n && i + 1 == j,
            IdentityId::RegMixedAdjacent => i + 1 == j || i == j + 1,
            IdentityId::RegCofaceEqual => i == j,
            IdentityId::RegFaceSwap => j <= n && i + 2 <= j,
            IdentityId::RegMixedLower => i + 2 <= j,
            IdentityId::RegMixedUpper => i >= j + 2,
            IdentityId::RegCoface => i < j,
        };
        all.filter(keep).collect()
    }

    fn sides(self, i: usize, j: usize, f: &Weighting, g: &Weighting) -> Result<(GradedOperator, GradedOperator)> {
        use GradedOperator as G;
        match self {
            IdentityId::RegFaceSwapAdjacent | IdentityId::RegFaceSwap => Ok((
                G::regular_face(f, i).compose(&G::regular_face(g, j))?,
                G::regular_face(g, j - 1).compose(&G::regular_face(f, i))?.negate(),
            )),
            IdentityId::RegMixedAdjacent | IdentityId::RegMixedLower | IdentityId::RegMixedUpper => {
                let lhs = G::regular_face(f, i).compose(&G::regular_coface(g, j))?;
                let rhs = if i < j {
                    G::regular_coface(g, j - 1).compose(&G::regular_face(f, i))?
                } else {
                    G::regular_coface(g, j).compose(&G::regular_face(f, i - 1))?
                };
                Ok((lhs, rhs.negate()))
            }
            IdentityId::RegCofaceEqual | IdentityId::RegCoface => Ok((
                G::regular_coface(f, i).compose(&G::regular_coface(g, j))?,
                G::regular_coface(g, j + 1).compose(&G::regular_coface(f, i))?.negate(),
            )),
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub identity: IdentityId,
    pub degree: usize,
    pub path: ElementaryPath,
    pub i: usize,
    pub j: usize,
    pub f: Weighting,
    pub g: Weighting,
    pub f_name: String,
    pub g_name: String,
    pub lhs: Chain,
    pub rhs: Chain,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome {
    Found(Box<Witness>),
    NotFound { identity: IdentityId, instances: usize },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            SearchOutcome::NotFound { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SearchOutcome::Found(w) => {
                let vs = w.path_vertices();
                json!({
                    "identity": w.identity.as_str(),
                    "found": true,
                    "degree": w.degree,
                    "path": w.path.render(vs),
                    "i": w.i,
                    "j": w.j,
                    "f": {"name": w.f_name, "values": w.f.to_json()},
                    "g": {"name": w.g_name, "values": w.g.to_json()},
                    "lhs": w.lhs.render(),
                    "rhs": w.rhs.render(),
                })
            }
            SearchOutcome::NotFound { identity, instances } => json!({
                "identity": identity.as_str(),
                "found": false,
                "instances": instances,
            }),
        }
    }
}

impl Witness {
    fn path_vertices(&self) -> &VertexSet {
        self.lhs.vertices()
    }
}

/// Scans degrees `0..=max_degree`, then regular basis paths in order, then
/// index pairs, then pairs of characteristic functions with `f` outer, and
/// returns the first instance where the two sides differ.
pub fn find_counterexample(
    identity: IdentityId,
    vertices: &Arc<VertexSet>,
    max_degree: usize,
    cap: usize,
) -> Result<SearchOutcome> {
    let chis: Vec<(String, Weighting)> = vertices
        .vertices()
        .map(|v| {
            let chi = Weighting::characteristic(vertices.clone(), v).expect("vertex in set");
            (format!("chi_{}", vertices.label(v)), chi)
        })
        .collect();
    let mut instances = 0;
    for n in 0..=max_degree {
        let basis = Basis::new(vertices.len(), n as i64, Space::Regular, cap)?;
        let pairs = identity.pairs(n);
        let mut sides = Vec::new();
        for &(i, j) in &pairs {
            for (fname, f) in &chis {
                for (gname, g) in &chis {
                    let (lhs, rhs) = identity.sides(i, j, f, g)?;
                    let degree = n as i64;
                    if lhs.fully_defined_at(degree) && rhs.fully_defined_at(degree) {
                        sides.push((i, j, fname, f, gname, g, lhs, rhs));
                    }
                }
            }
        }
        for p in basis.iter() {
            let chain = Chain::basis(vertices.clone(), p.clone())?;
            for (i, j, fname, f, gname, g, lhs, rhs) in &sides {
                instances += 1;
                let l = lhs.apply(&chain)?;
                let r = rhs.apply(&chain)?;
                if l != r {
                    return Ok(SearchOutcome::Found(Box::new(Witness {
                        identity,
                        degree: n,
                        path: p,
                        i: *i,
                        j: *j,
                        f: (*f).clone(),
                        g: (*g).clone(),
                        f_name: (*fname).clone(),
                        g_name: (*gname).clone(),
                        lhs: l,
                        rhs: r,
                    })));
                }
            }
        }
    }
    Ok(SearchOutcome::NotFound { identity, instances })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_swap_adjacent_witness() {
        let vs = Arc::new(VertexSet::alphabet(2).unwrap());
        let out = find_counterexample(IdentityId::RegFaceSwapAdjacent, &vs, 3, 1 << 20).unwrap();
        let w = out.witness().expect("witness");
        assert_eq!(w.path.render(&vs), "aba");
        assert_eq!((w.i, w.j), (0, 1));
        assert_eq!((w.f_name.as_str(), w.g_name.as_str()), ("chi_a", "chi_b"));
        assert!(w.lhs.is_zero());
        assert_eq!(w.rhs, Chain::parse(vs.clone(), "-a").unwrap());
    }

    #[test]
    fn in_range_cases_have_no_witness() {
        let vs = Arc::new(VertexSet::alphabet(2).unwrap());
        for id in IdentityId::ALL.into_iter().filter(|id| id.in_range()) {
            let out = find_counterexample(id, &vs, 3, 1 << 20).unwrap();
            assert!(out.witness().is_none(), "{id}");
        }
    }

    #[test]
    fn single_vertex_is_too_small() {
        let vs = Arc::new(VertexSet::alphabet(1).unwrap());
        let out = find_counterexample(IdentityId::RegFaceSwapAdjacent, &vs, 3, 1 << 20).unwrap();
        assert!(out.witness().is_none());
    }

    #[test]
    fn ids_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
        }
        assert!("reg-nope".parse::<IdentityId>().is_err());
    }
}
