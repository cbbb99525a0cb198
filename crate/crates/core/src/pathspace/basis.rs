use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::pathspace::ElementaryPath;

/// Which path space a basis spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    /// All elementary paths, `Λ_n(V)`.
    Full,
    /// Paths without equal consecutive vertices, `R_n(V)`.
    Regular,
}

impl Space {
    pub fn as_str(self) -> &'static str {
        match self {
            Space::Full => "full",
            Space::Regular => "regular",
        }
    }
}

/// Lexicographically ordered basis of one degree of a path space.
///
/// Paths are never stored: index and path are converted arithmetically.
/// A negative degree denotes the zero space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Basis {
    nv: usize,
    degree: i64,
    space: Space,
    len: usize,
}

/// `base^exp` if it fits into `usize` and does not exceed `cap`.
fn capped_pow(base: usize, exp: u32, cap: usize) -> Option<usize> {
    base.checked_pow(exp).filter(|&d| d <= cap)
}

impl Basis {
    pub fn new(nv: usize, degree: i64, space: Space, cap: usize) -> Result<Self> {
        let len = if degree < 0 {
            0
        } else {
            Self::dimension(nv, degree as usize, space)
                .filter(|&d| d <= cap)
                .ok_or_else(|| Error::BasisCapExceeded {
                    requested: Self::describe(nv, degree as usize, space),
                    cap,
                })?
        };
        Ok(Basis { nv, degree, space, len })
    }

    /// Dimension of the degree-`n` space, or `None` on `usize` overflow.
    pub fn dimension(nv: usize, n: usize, space: Space) -> Option<usize> {
        let exp = u32::try_from(n).ok()?;
        match space {
            Space::Full => capped_pow(nv, exp.checked_add(1)?, usize::MAX),
            Space::Regular => capped_pow(nv.saturating_sub(1), exp, usize::MAX)?.checked_mul(nv),
        }
    }

    fn describe(nv: usize, n: usize, space: Space) -> String {
        match space {
            Space::Full => format!("{nv}^{}", n + 1),
            Space::Regular => format!("{nv}*{}^{n}", nv.saturating_sub(1)),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn vertex_count(&self) -> usize {
        self.nv
    }

    /// Position of `p` in the basis, or `None` if `p` is not a basis element.
    pub fn index_of(&self, p: &ElementaryPath) -> Option<usize> {
        if self.degree < 0 || p.degree() as i64 != self.degree {
            return None;
        }
        let v = p.vertices();
        if v.iter().any(|&x| x as usize >= self.nv) {
            return None;
        }
        match self.space {
            Space::Full => Some(v.iter().fold(0usize, |acc, &x| acc * self.nv + x as usize)),
            Space::Regular => {
                let mut idx = v[0] as usize;
                for w in v.windows(2) {
                    let (prev, cur) = (w[0], w[1]);
                    if prev == cur {
                        return None;
                    }
                    let digit = cur as usize - usize::from(cur > prev);
                    idx = idx * (self.nv - 1) + digit;
                }
                Some(idx)
            }
        }
    }

    /// Basis element at position `idx`; panics if out of range.
    pub fn path_at(&self, idx: usize) -> ElementaryPath {
        assert!(idx < self.len, "basis index {idx} out of range {}", self.len);
        let n = self.degree as usize;
        let mut digits: SmallVec<[u32; 8]> = SmallVec::from_elem(0, n + 1);
        let mut rest = idx;
        match self.space {
            Space::Full => {
                for k in (0..=n).rev() {
                    digits[k] = (rest % self.nv) as u32;
                    rest /= self.nv;
                }
            }
            Space::Regular => {
                let b = self.nv - 1;
                for k in (1..=n).rev() {
                    digits[k] = (rest % b) as u32;
                    rest /= b;
                }
                digits[0] = rest as u32;
                for k in 1..=n {
                    if digits[k] >= digits[k - 1] {
                        digits[k] += 1;
                    }
                }
            }
        }
        ElementaryPath::from_smallvec(digits)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = ElementaryPath> + '_ {
        (0..self.len).map(move |i| self.path_at(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(Basis::dimension(3, 2, Space::Full), Some(27));
        assert_eq!(Basis::dimension(3, 2, Space::Regular), Some(12));
        assert_eq!(Basis::dimension(1, 1, Space::Regular), Some(0));
        assert_eq!(Basis::dimension(1, 0, Space::Regular), Some(1));
        assert_eq!(Basis::dimension(2, 200, Space::Full), None);
    }

    #[test]
    fn negative_degree_is_empty() {
        let b = Basis::new(3, -1, Space::Full, 10).unwrap();
        assert!(b.is_empty());
        assert_eq!(b.index_of(&ElementaryPath::new([0])), None);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(Basis::new(3, 2, Space::Full, 27).is_ok());
        let err = Basis::new(3, 2, Space::Full, 26).unwrap_err();
        assert!(matches!(err, Error::BasisCapExceeded { cap: 26, .. }));
        assert!(Basis::new(10, 40, Space::Full, usize::MAX).is_err());
    }

    #[test]
    fn regular_order_is_filtered_full_order() {
        for nv in 1..=4 {
            for n in 0..=3 {
                let full = Basis::new(nv, n, Space::Full, usize::MAX).unwrap();
                let reg = Basis::new(nv, n, Space::Regular, usize::MAX).unwrap();
                let filtered: Vec<_> = full.iter().filter(|p| p.is_regular()).collect();
                let listed: Vec<_> = reg.iter().collect();
                assert_eq!(filtered, listed, "nv={nv} n={n}");
                for (i, p) in listed.iter().enumerate() {
                    assert_eq!(reg.index_of(p), Some(i));
                }
            }
        }
    }

    #[test]
    fn full_index_round_trip() {
        let b = Basis::new(3, 2, Space::Full, usize::MAX).unwrap();
        for i in 0..b.len() {
            assert_eq!(b.index_of(&b.path_at(i)), Some(i));
        }
        assert_eq!(b.path_at(5).vertices(), &[0, 1, 2]);
        assert_eq!(b.index_of(&ElementaryPath::new([0, 0])), None);
    }
}
