//! δ and ε on path positions, including the virtual positions `-1`,
//! `n+1`, `n+2` just outside a path.
//!
//! A virtual position matches no vertex: δ against it is 0 and ε against
//! it is 1. Every closed form in this crate goes through these helpers.

/// Position lookups on the vertex sequence of one path.
#[derive(Clone, Copy)]
pub struct EpsilonTable<'a> {
    vertices: &'a [u32],
}

impl<'a> EpsilonTable<'a> {
    pub fn new(vertices: &'a [u32]) -> Self {
        EpsilonTable { vertices }
    }

    /// Vertex at position `k`, or `None` for a virtual position.
    pub fn at(&self, k: isize) -> Option<u32> {
        usize::try_from(k).ok().and_then(|k| self.vertices.get(k).copied())
    }

    /// `ε(v_a, v_b)`.
    pub fn eps(&self, a: isize, b: isize) -> bool {
        match (self.at(a), self.at(b)) {
            (Some(x), Some(y)) => x != y,
            _ => true,
        }
    }

    /// `δ(w, v_k)`.
    pub fn delta_v(&self, w: u32, k: isize) -> bool {
        self.at(k) == Some(w)
    }

    /// `ε(w, v_k)`.
    pub fn eps_v(&self, w: u32, k: isize) -> bool {
        !self.delta_v(w, k)
    }
}

/// `ε(u, v)` on two actual vertices.
pub fn eps(u: u32, v: u32) -> bool {
    u != v
}
