//! Dual-path comparison of operator identities at one degree.
//!
//! Each side is materialized twice: column by column through direct
//! evaluation, and structurally as products and sums of cached leaf
//! matrices. An instance passes only if all four matrices agree.

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{ErrorKind, Result};
use crate::operators::{GradedOperator, MatrixCache, OperatorMatrix};
use crate::pathspace::{Basis, Chain, Space, VertexSet};
use crate::scalar::Scalar;
use crate::verifier::report::{CheckResult, IdentityCheck};

pub(crate) enum Expected {
    Op(GradedOperator),
    /// Per-basis-path scalars on the diagonal of a degree-preserving map.
    Diagonal(Vec<Scalar>),
    Zero,
    /// Transpose of the operator's matrix at the lhs target degree.
    Transpose(GradedOperator),
}

pub(crate) struct Instance {
    pub degree: usize,
    pub labels: Map<String, Value>,
    pub lhs: GradedOperator,
    pub rhs: Expected,
}

impl Instance {
    pub fn new(degree: usize, labels: Map<String, Value>, lhs: GradedOperator, rhs: Expected) -> Self {
        Instance {
            degree,
            labels,
            lhs,
            rhs,
        }
    }
}

/// Instances generated for one parameter, plus the number of index pairs
/// dropped because an operator would act on degree −1.
pub(crate) struct Batch {
    pub instances: Vec<Instance>,
    pub undefined: usize,
}

impl Batch {
    pub fn new() -> Self {
        Batch {
            instances: Vec::new(),
            undefined: 0,
        }
    }

    /// Adds the instance if both sides are fully defined at `degree`;
    /// index errors are never instantiated.
    pub fn push(&mut self, inst: Instance) {
        let n = inst.degree as i64;
        let rhs_defined = match &inst.rhs {
            Expected::Op(r) => r.check_degree(n).is_ok().then(|| r.fully_defined_at(n)),
            Expected::Transpose(r) => {
                let m = n + inst.lhs.shift();
                r.check_degree(m).is_ok().then(|| r.fully_defined_at(m))
            }
            _ => Some(true),
        };
        if inst.lhs.check_degree(n).is_err() || rhs_defined.is_none() {
            return;
        }
        if inst.lhs.fully_defined_at(n) && rhs_defined == Some(true) {
            self.instances.push(inst);
        } else {
            self.undefined += 1;
        }
    }

    /// Adds the instance whenever indices are valid, even if a composite
    /// passes through degree −1.
    pub fn push_lenient(&mut self, inst: Instance) {
        let n = inst.degree as i64;
        let ok = inst.lhs.check_degree(n).is_ok()
            && match &inst.rhs {
                Expected::Op(r) => r.check_degree(n).is_ok(),
                _ => true,
            };
        if ok {
            self.instances.push(inst);
        }
    }
}

pub(crate) enum Outcome {
    Equal,
    Differ(Value),
}

pub(crate) fn column_chain(m: &OperatorMatrix, c: usize, vs: &std::sync::Arc<VertexSet>) -> Chain {
    let terms = m
        .column_entries(c)
        .iter()
        .map(|(r, s)| (m.rows().path_at(*r), s.clone()));
    Chain::from_terms(vs.clone(), terms).expect("basis paths are valid")
}

fn first_difference(a: &OperatorMatrix, b: &OperatorMatrix) -> Option<usize> {
    (0..a.ncols()).find(|&c| a.column_entries(c) != b.column_entries(c))
}

fn witness(inst: &Instance, route: &str, a: &OperatorMatrix, b: &OperatorMatrix) -> Value {
    let vs = inst.lhs.vertices();
    let mut w = inst.labels.clone();
    w.insert("degree".into(), json!(inst.degree));
    w.insert("route".into(), json!(route));
    match first_difference(a, b) {
        Some(c) => {
            w.insert("path".into(), json!(a.cols().path_at(c).render(vs)));
            w.insert("lhs".into(), json!(column_chain(a, c, vs).render()));
            w.insert("rhs".into(), json!(column_chain(b, c, vs).render()));
        }
        None => {
            w.insert(
                "shape".into(),
                json!(format!("{}x{} vs {}x{}", a.nrows(), a.ncols(), b.nrows(), b.ncols())),
            );
        }
    }
    Value::Object(w)
}

fn both_routes(op: &GradedOperator, n: usize, cache: &MatrixCache) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let direct = OperatorMatrix::materialize(op, n, cache.cap())?;
    let structural = cache.materialize(op, n)?;
    Ok((direct, structural))
}

pub(crate) fn check_instance(inst: &Instance, cache: &MatrixCache) -> Result<Outcome> {
    let n = inst.degree;
    let (dl, sl) = both_routes(&inst.lhs, n, cache)?;
    if dl != sl {
        return Ok(Outcome::Differ(witness(inst, "lhs direct vs structural", &dl, &sl)));
    }
    let dr = match &inst.rhs {
        Expected::Op(r) => {
            let (dr, sr) = both_routes(r, n, cache)?;
            if dr != sr {
                return Ok(Outcome::Differ(witness(inst, "rhs direct vs structural", &dr, &sr)));
            }
            dr
        }
        Expected::Transpose(r) => {
            let m = (n as i64 + inst.lhs.shift()) as usize;
            let (dr, sr) = both_routes(r, m, cache)?;
            if dr != sr {
                return Ok(Outcome::Differ(witness(inst, "rhs direct vs structural", &dr, &sr)));
            }
            dr.transpose()
        }
        Expected::Diagonal(d) => OperatorMatrix::diagonal(dl.cols().clone(), d.clone()),
        Expected::Zero => OperatorMatrix::zeros(dl.rows().clone(), dl.cols().clone()),
    };
    if dl != dr {
        return Ok(Outcome::Differ(witness(inst, "lhs vs rhs", &dl, &dr)));
    }
    Ok(Outcome::Equal)
}

struct TaskResult {
    instances: usize,
    undefined: usize,
    failure: Option<std::result::Result<Value, crate::error::Error>>,
}

/// Runs one identity family. Parameters are processed in parallel, each
/// with its own memo of weighted sums over shared leaf matrices; the
/// reported witness is the first failure in parameter order, then
/// generation order.
pub(crate) fn run_family<T, G>(
    name: &str,
    mut scope: Map<String, Value>,
    params: &[T],
    cap: usize,
    generate: G,
) -> IdentityCheck
where
    T: Sync,
    G: Fn(&T) -> Result<Batch> + Sync,
{
    let shared = MatrixCache::new(cap);
    let results: Vec<TaskResult> = params
        .par_iter()
        .map(|p| {
            let batch = match generate(p) {
                Ok(b) => b,
                Err(e) => {
                    return TaskResult {
                        instances: 0,
                        undefined: 0,
                        failure: Some(Err(e)),
                    }
                }
            };
            let cache = shared.fork();
            let mut done = 0;
            for inst in &batch.instances {
                done += 1;
                match check_instance(inst, &cache) {
                    Ok(Outcome::Equal) => {}
                    Ok(Outcome::Differ(w)) => {
                        return TaskResult {
                            instances: done,
                            undefined: batch.undefined,
                            failure: Some(Ok(w)),
                        }
                    }
                    Err(e) => {
                        return TaskResult {
                            instances: done,
                            undefined: batch.undefined,
                            failure: Some(Err(e)),
                        }
                    }
                }
            }
            TaskResult {
                instances: done,
                undefined: batch.undefined,
                failure: None,
            }
        })
        .collect();

    let instances: usize = results.iter().map(|r| r.instances).sum();
    let undefined: usize = results.iter().map(|r| r.undefined).sum();
    scope.insert("parameters".into(), json!(params.len()));
    if undefined > 0 {
        scope.insert("through_degree_minus_one".into(), json!(undefined));
    }
    let failure = results.into_iter().find_map(|r| r.failure);
    match failure {
        None => {
            scope.insert("instances".into(), json!(instances));
            IdentityCheck::new(name, Value::Object(scope), CheckResult::Pass)
        }
        Some(Ok(w)) => IdentityCheck::new(name, Value::Object(scope), CheckResult::Fail).with_witness(w),
        Some(Err(e)) if e.kind() == ErrorKind::Resource => {
            IdentityCheck::new(name, Value::Object(scope), CheckResult::Skipped).with_reason(e.to_string())
        }
        Some(Err(e)) => IdentityCheck::new(name, Value::Object(scope), CheckResult::Fail).with_reason(e.to_string()),
    }
}

/// Regular or full basis at degree `n`, for building diagonal expectations.
pub(crate) fn basis(vs: &VertexSet, n: usize, space: Space, cap: usize) -> Result<Basis> {
    Basis::new(vs.len(), n as i64, space, cap)
}
