use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::operators::{GradedOperator, Node};
use crate::pathspace::{Basis, Chain, Vertex, VertexSet, Weighting};
use crate::scalar::Scalar;

type Column = Vec<(usize, Scalar)>;

/// Sum of two row-sorted columns.
fn merge(x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Column {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut a, mut b) = (x.iter().peekable(), y.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some((i, s)), Some((j, t))) => match i.cmp(j) {
                std::cmp::Ordering::Less => {
                    out.push((*i, s.clone()));
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    out.push((*j, t.clone()));
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    let sum = s + t;
                    if !sum.is_zero() {
                        out.push((*i, sum));
                    }
                    a.next();
                    b.next();
                }
            },
            (Some(e), None) => {
                out.push((*e).clone());
                a.next();
            }
            (None, Some(e)) => {
                out.push((*e).clone());
                b.next();
            }
            (None, None) => return out,
        }
    }
}

/// A graded operator at one source degree, as a sparse matrix in the
/// lexicographic bases. Stored by columns, each sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    rows: Basis,
    cols: Basis,
    columns: Vec<Column>,
}

impl OperatorMatrix {
    pub fn zeros(rows: Basis, cols: Basis) -> Self {
        let columns = vec![Vec::new(); cols.len()];
        OperatorMatrix { rows, cols, columns }
    }

    pub fn identity(basis: Basis) -> Self {
        let columns = (0..basis.len()).map(|c| vec![(c, Scalar::one())]).collect();
        OperatorMatrix {
            rows: basis.clone(),
            cols: basis,
            columns,
        }
    }

    /// Diagonal matrix with the given entries on a square basis.
    pub fn diagonal(basis: Basis, diag: Vec<Scalar>) -> Self {
        assert_eq!(basis.len(), diag.len());
        let columns = diag
            .into_iter()
            .enumerate()
            .map(|(c, s)| if s.is_zero() { Vec::new() } else { vec![(c, s)] })
            .collect();
        OperatorMatrix {
            rows: basis.clone(),
            cols: basis,
            columns,
        }
    }

    fn bases(op: &GradedOperator, n: i64, cap: usize) -> Result<(Basis, Basis)> {
        let nv = op.vertices().len();
        let cols = Basis::new(nv, n, op.domain(), cap)?;
        let rows = Basis::new(nv, n + op.shift(), op.codomain(), cap)?;
        Ok((rows, cols))
    }

    fn column(op: &GradedOperator, rows: &Basis, cols: &Basis, c: usize) -> Result<Column> {
        let p = cols.path_at(c);
        let image = op.eval(&Chain::basis(op.vertices().clone(), p)?);
        image
            .terms()
            .iter()
            .map(|(q, s)| {
                rows.index_of(q).map(|r| (r, s.clone())).ok_or_else(|| {
                    Error::SpaceMismatch(format!(
                        "image path `{}` lies outside the {} space",
                        q.render(op.vertices()),
                        rows.space().as_str()
                    ))
                })
            })
            .collect()
    }

    /// Column `c` is `op(basis[c])` in coordinates; columns are evaluated in
    /// parallel and assembled in order.
    pub fn materialize(op: &GradedOperator, n: usize, cap: usize) -> Result<Self> {
        let n = n as i64;
        op.check_degree(n)?;
        let (rows, cols) = Self::bases(op, n, cap)?;
        let columns = (0..cols.len())
            .into_par_iter()
            .map(|c| Self::column(op, &rows, &cols, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorMatrix { rows, cols, columns })
    }

    /// Single-threaded variant of [`OperatorMatrix::materialize`].
    pub fn materialize_sequential(op: &GradedOperator, n: usize, cap: usize) -> Result<Self> {
        let n = n as i64;
        op.check_degree(n)?;
        let (rows, cols) = Self::bases(op, n, cap)?;
        let columns = (0..cols.len())
            .map(|c| Self::column(op, &rows, &cols, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorMatrix { rows, cols, columns })
    }

    pub fn rows(&self) -> &Basis {
        &self.rows
    }

    pub fn cols(&self) -> &Basis {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn column_entries(&self, c: usize) -> &[(usize, Scalar)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        let col = &self.columns[c];
        col.binary_search_by_key(&r, |(i, _)| *i)
            .map(|k| col[k].1.clone())
            .unwrap_or_default()
    }

    /// Nonzero entries sorted by (row, column).
    pub fn entries(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out: Vec<_> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, s)| (*r, c, s.clone())))
            .collect();
        out.sort_by_key(|&(r, c, _)| (r, c));
        out
    }

    /// Matrix product `self · rhs`, the matrix of the composite operator.
    pub fn mul(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::SpaceMismatch("matrix dimensions do not chain".into()));
        }
        let columns = rhs
            .columns
            .par_iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, b) in col {
                    for (i, a) in &self.columns[*k] {
                        *acc.entry(*i).or_default() += &(a * b);
                    }
                }
                acc.into_iter().filter(|(_, s)| !s.is_zero()).collect()
            })
            .collect();
        Ok(OperatorMatrix {
            rows: self.rows.clone(),
            cols: rhs.cols.clone(),
            columns,
        })
    }

    pub fn add(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::SpaceMismatch("matrix shapes differ".into()));
        }
        let columns = self
            .columns
            .iter()
            .zip(&rhs.columns)
            .map(|(x, y)| merge(x, y))
            .collect();
        Ok(OperatorMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            columns,
        })
    }

    pub fn scale(&self, factor: &Scalar) -> OperatorMatrix {
        if factor.is_zero() {
            return Self::zeros(self.rows.clone(), self.cols.clone());
        }
        OperatorMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            columns: self
                .columns
                .iter()
                .map(|col| col.iter().map(|(i, s)| (*i, s * factor)).collect())
                .collect(),
        }
    }

    pub fn transpose(&self) -> OperatorMatrix {
        let mut columns: Vec<Column> = vec![Vec::new(); self.rows.len()];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, s) in col {
                columns[*r].push((c, s.clone()));
            }
        }
        OperatorMatrix {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            columns,
        }
    }

    /// Evaluates through the matrix: coordinates in, coordinates out.
    /// Terms of `xi` outside the column basis are an error.
    pub fn apply(&self, xi: &Chain) -> Result<Chain> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (p, s) in xi.terms() {
            let c = self.cols.index_of(p).ok_or_else(|| {
                Error::SpaceMismatch(format!(
                    "path `{}` is not in the matrix column basis",
                    p.render(xi.vertices())
                ))
            })?;
            for (r, a) in &self.columns[c] {
                *acc.entry(*r).or_default() += &(a * s);
            }
        }
        Chain::from_terms(
            xi.vertices().clone(),
            acc.into_iter().map(|(r, s)| (self.rows.path_at(r), s)),
        )
    }

    /// `{"rows", "cols", "entries": [[r, c, "p/q"], ...], "row_basis",
    /// "col_basis", "source_degree", "space"}` with entries sorted by (r, c).
    pub fn to_json(&self, vertices: &VertexSet) -> serde_json::Value {
        let legend = |b: &Basis| -> Vec<String> { b.iter().map(|p| p.render(vertices)).collect() };
        let entries: Vec<serde_json::Value> = self
            .entries()
            .into_iter()
            .map(|(r, c, s)| serde_json::json!([r, c, s.to_string()]))
            .collect();
        serde_json::json!({
            "rows": self.nrows(),
            "cols": self.ncols(),
            "entries": entries,
            "row_basis": legend(&self.rows),
            "col_basis": legend(&self.cols),
            "source_degree": self.cols.degree(),
            "space": self.cols.space().as_str(),
        })
    }

    /// CSV triplets with header `row,col,value`, sorted by (row, col).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,col,value\n");
        for (r, c, s) in self.entries() {
            let _ = writeln!(out, "{r},{c},{s}");
        }
        out
    }
}

/// Builds operator matrices structurally: composites become products and
/// sums of leaf matrices, and index sums are expanded into their terms.
/// Leaf matrices and weighted sums are memoized per cache.
pub struct MatrixCache {
    cap: usize,
    leaves: Arc<Memo>,
    memo: Memo,
}

type Memo = Mutex<HashMap<(String, i64), Arc<OperatorMatrix>>>;

impl MatrixCache {
    pub fn new(cap: usize) -> Self {
        MatrixCache {
            cap,
            leaves: Arc::default(),
            memo: Memo::default(),
        }
    }

    /// A cache that shares this one's leaf matrices but keeps its own
    /// memo of weighted sums.
    pub fn fork(&self) -> Self {
        MatrixCache {
            cap: self.cap,
            leaves: self.leaves.clone(),
            memo: Memo::default(),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn materialize(&self, op: &GradedOperator, n: usize) -> Result<OperatorMatrix> {
        op.check_degree(n as i64)?;
        self.build(op, n as i64).map(Arc::unwrap_or_clone)
    }

    fn leaf(&self, op: &GradedOperator, n: i64) -> Result<Arc<OperatorMatrix>> {
        let key = Self::key(op, n);
        if let Some(m) = self.leaves.lock().expect("cache lock").get(&key) {
            return Ok(m.clone());
        }
        let m = if n < 0 {
            let (rows, cols) = OperatorMatrix::bases(op, n, self.cap)?;
            OperatorMatrix::zeros(rows, cols)
        } else {
            OperatorMatrix::materialize_sequential(op, n as usize, self.cap)?
        };
        let m = Arc::new(m);
        self.leaves.lock().expect("cache lock").insert(key, m.clone());
        Ok(m)
    }

    fn build(&self, op: &GradedOperator, n: i64) -> Result<Arc<OperatorMatrix>> {
        let memoized = matches!(
            op.node(),
            Node::WeightedFace { .. }
                | Node::WeightedCoface { .. }
                | Node::Boundary(_)
                | Node::Coboundary(_)
                | Node::RegularFace { .. }
                | Node::RegularCoface { .. }
                | Node::RegularBoundary(_)
                | Node::RegularCoboundary(_)
                | Node::ReducedPartial(_)
                | Node::ReducedDiff(_)
                | Node::WeightedBracket { .. }
        );
        if !memoized {
            return self.expand(op, n);
        }
        let key = Self::key(op, n);
        if let Some(m) = self.memo.lock().expect("cache lock").get(&key) {
            return Ok(m.clone());
        }
        let m = self.expand(op, n)?;
        self.memo.lock().expect("cache lock").insert(key, m.clone());
        Ok(m)
    }

    fn key(op: &GradedOperator, n: i64) -> (String, i64) {
        (format!("{}|{op}", op.vertices().labels().join(",")), n)
    }

    fn expand(&self, op: &GradedOperator, n: i64) -> Result<Arc<OperatorMatrix>> {
        let vs = op.vertices().clone();
        let deg = n.max(0) as usize;
        let one = Scalar::one;
        let terms: Vec<(Scalar, GradedOperator)> = match op.node() {
            Node::Compose(a, b) => {
                let mb = self.build(b, n)?;
                let ma = self.build(a, n + b.shift())?;
                return ma.mul(&mb).map(Arc::new);
            }
            Node::Anticommutator(a, b) => {
                let ab = self.build(a, n + b.shift())?.mul(&*self.build(b, n)?)?;
                let ba = self.build(b, n + a.shift())?.mul(&*self.build(a, n)?)?;
                return ab.add(&ba).map(Arc::new);
            }
            Node::Sum(ops) => {
                let mut parts = ops.iter().map(|o| self.build(o, n));
                let mut acc = parts.next().expect("nonempty sum")?;
                for m in parts {
                    acc = Arc::new(acc.add(&*m?)?);
                }
                return Ok(acc);
            }
            Node::Scale(s, a) => return Ok(Arc::new(self.build(a, n)?.scale(s))),
            Node::Zero => {
                let (rows, cols) = OperatorMatrix::bases(op, n, self.cap)?;
                return Ok(Arc::new(OperatorMatrix::zeros(rows, cols)));
            }
            Node::Identity => {
                let (rows, _) = OperatorMatrix::bases(op, n, self.cap)?;
                return Ok(Arc::new(OperatorMatrix::identity(rows)));
            }
            _ if n < 0 => Vec::new(),
            // regular faces through the projection route rather than the ε-formulas
            Node::RegularFace { f, i } => {
                let full = GradedOperator::weighted_face(f, *i).induced_regular()?;
                return self.build(&full, n);
            }
            Node::RegularCoface { f, i } => {
                let full = GradedOperator::weighted_coface(f, *i).induced_regular()?;
                return self.build(&full, n);
            }
            Node::ReducedPartial(v) => {
                let chi = Weighting::characteristic(vs.clone(), Vertex(*v))?;
                return self.build(&GradedOperator::regular_boundary(&chi), n);
            }
            Node::ReducedDiff(v) => {
                let chi = Weighting::characteristic(vs.clone(), Vertex(*v))?;
                return self.build(&GradedOperator::regular_coboundary(&chi), n);
            }
            Node::WeightedFace { f, i } => f
                .support()
                .map(|(v, w)| (w.clone(), GradedOperator::face_partial(vs.clone(), Vertex(v), *i)))
                .map(|(w, op)| op.map(|op| (w, op)))
                .collect::<Result<_>>()?,
            Node::WeightedCoface { f, i } => f
                .support()
                .map(|(v, w)| (w.clone(), GradedOperator::coface(vs.clone(), Vertex(v), *i)))
                .map(|(w, op)| op.map(|op| (w, op)))
                .collect::<Result<_>>()?,
            Node::Boundary(f) => (0..=deg)
                .map(|i| (one(), GradedOperator::weighted_face(f, i)))
                .collect(),
            Node::Coboundary(f) => (0..=deg + 1)
                .map(|i| (one(), GradedOperator::weighted_coface(f, i)))
                .collect(),
            Node::RegularBoundary(f) => (0..=deg).map(|i| (one(), GradedOperator::regular_face(f, i))).collect(),
            Node::RegularCoboundary(f) => (0..=deg + 1)
                .map(|i| (one(), GradedOperator::regular_coface(f, i)))
                .collect(),
            Node::WeightedBracket { f, g, which, form } => {
                let mut out = Vec::new();
                for (v, fv) in f.support() {
                    for (u, gu) in g.support() {
                        let pair = match which {
                            crate::regular::BracketKind::Partial => {
                                GradedOperator::partial_bracket(vs.clone(), Vertex(v), Vertex(u), *form)?
                            }
                            crate::regular::BracketKind::Diff => {
                                GradedOperator::diff_bracket(vs.clone(), Vertex(v), Vertex(u))?
                            }
                        };
                        out.push((fv * gu, pair));
                    }
                }
                out
            }
            _ => return self.leaf(op, n),
        };
        // index sums may contain composite summands (weighted faces)
        let (rows, cols) = OperatorMatrix::bases(op, n, self.cap)?;
        let mut acc = OperatorMatrix::zeros(rows, cols);
        for (s, part) in terms {
            let m = match part.node() {
                Node::WeightedFace { .. }
                | Node::WeightedCoface { .. }
                | Node::RegularFace { .. }
                | Node::RegularCoface { .. } => self.build(&part, n)?,
                _ => self.leaf(&part, n)?,
            };
            acc = if s.is_one() {
                acc.add(&m)?
            } else {
                acc.add(&m.scale(&s))?
            };
        }
        Ok(Arc::new(acc))
    }
}
