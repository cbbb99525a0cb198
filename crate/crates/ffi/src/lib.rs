//! C ABI over `pathcalc`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns a
//! [`PcStatus`]; on failure the message is available from
//! [`pc_last_error_message`] on the same thread. Strings returned through
//! `char **` out-parameters must be released with [`pc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use pathcalc::pathspace::{chain_from_json, chain_to_json};
use pathcalc::verifier::{self, find_counterexample, IdentityId, SearchOutcome, Suite, VerifyConfig};
use pathcalc::{Basis, Chain, Error, ErrorKind, GradedOperator, OperatorMatrix, Space, VertexSet};

/// Status codes. Values 1 to 4 match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcStatus {
    Ok = 0,
    /// A verification report contains a failed check.
    VerifyFailed = 1,
    Parse = 2,
    Domain = 3,
    Resource = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    Panic = 7,
    /// A counterexample search finished without a witness.
    NotFound = 8,
}

/// A finite ordered vertex set.
pub struct PcVertexSet(Arc<VertexSet>);

/// A chain together with the space it lives in.
pub struct PcChain {
    chain: Chain,
    space: Space,
}

/// A graded operator bound to a vertex set.
pub struct PcOperator(GradedOperator);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(PcStatus);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        set_error(e.to_string());
        Fail(match e.kind() {
            ErrorKind::Parse => PcStatus::Parse,
            ErrorKind::Domain => PcStatus::Domain,
            ErrorKind::Resource => PcStatus::Resource,
        })
    }
}

fn null(what: &str) -> Fail {
    set_error(format!("null pointer: {what}"));
    Fail(PcStatus::NullPointer)
}

/// Runs `body`, converting errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<PcStatus, Fail>) -> PcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status))) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            PcStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        Fail(PcStatus::InvalidUtf8)
    })
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<PcStatus, Fail> {
    *out = Box::into_raw(Box::new(value));
    Ok(PcStatus::Ok)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| {
        set_error("output contains a NUL byte");
        Fail(PcStatus::Panic)
    })?;
    *out = c.into_raw();
    Ok(())
}

fn json_value(text: &str) -> Result<serde_json::Value, Fail> {
    serde_json::from_str(text).map_err(|e| Fail::from(Error::Parse(e.to_string())))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes")
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn pc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a vertex set from comma-separated labels, e.g. `"a,b,c"`.
///
/// # Safety
/// `labels` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_vertex_set_new(labels: *const c_char, out: *mut *mut PcVertexSet) -> PcStatus {
    guard(|| {
        let labels = str_arg(labels, "labels")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let vs = VertexSet::new(labels.split(',').map(|l| l.trim().to_owned()))?;
        put(out, PcVertexSet(Arc::new(vs)))
    })
}

/// Number of vertices, or 0 for null.
///
/// # Safety
/// `vs` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pc_vertex_set_len(vs: *const PcVertexSet) -> usize {
    vs.as_ref().map_or(0, |v| v.0.len())
}

/// # Safety
/// `vs` must be null or a handle from [`pc_vertex_set_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_vertex_set_free(vs: *mut PcVertexSet) {
    if !vs.is_null() {
        drop(Box::from_raw(vs));
    }
}

/// Parses a chain document. `vs` may be null when the document names its
/// vertices; otherwise the two must agree.
///
/// # Safety
/// `json` must be a NUL-terminated string, `vs` null or a live handle, and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_chain_from_json(
    json: *const c_char,
    vs: *const PcVertexSet,
    out: *mut *mut PcChain,
) -> PcStatus {
    guard(|| {
        let doc = json_value(str_arg(json, "json")?)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let fallback = vs.as_ref().map(|v| v.0.clone());
        let (chain, space) = chain_from_json(&doc, fallback)?;
        put(out, PcChain { chain, space })
    })
}

/// Canonical JSON for a chain.
///
/// # Safety
/// `chain` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_chain_to_json(chain: *const PcChain, out: *mut *mut c_char) -> PcStatus {
    guard(|| {
        let c = ref_arg(chain, "chain")?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, pretty(&chain_to_json(&c.chain, c.space)))?;
        Ok(PcStatus::Ok)
    })
}

/// # Safety
/// `chain` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_chain_free(chain: *mut PcChain) {
    if !chain.is_null() {
        drop(Box::from_raw(chain));
    }
}

/// Builds an operator from a descriptor over `vs`.
///
/// # Safety
/// `json` must be a NUL-terminated string, `vs` a live handle and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_operator_from_json(
    json: *const c_char,
    vs: *const PcVertexSet,
    out: *mut *mut PcOperator,
) -> PcStatus {
    guard(|| {
        let doc = json_value(str_arg(json, "json")?)?;
        let vs = ref_arg(vs, "vs")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let op = GradedOperator::from_descriptor(&doc, vs.0.clone())?;
        put(out, PcOperator(op))
    })
}

/// Degree shift of the operator: +1 for co-boundaries, −1 for boundaries.
///
/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_operator_shift(op: *const PcOperator, out: *mut i64) -> PcStatus {
    guard(|| {
        let op = ref_arg(op, "op")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = op.0.shift();
        Ok(PcStatus::Ok)
    })
}

/// Applies `op` to `chain`, producing a new chain handle.
///
/// # Safety
/// `op` and `chain` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_operator_apply(
    op: *const PcOperator,
    chain: *const PcChain,
    out: *mut *mut PcChain,
) -> PcStatus {
    guard(|| {
        let op = ref_arg(op, "op")?;
        let c = ref_arg(chain, "chain")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let image = op.0.apply(&c.chain)?;
        put(
            out,
            PcChain {
                chain: image,
                space: op.0.codomain(),
            },
        )
    })
}

/// Matrix of `op` at source degree `degree` in the export format; `csv`
/// selects CSV over JSON.
///
/// # Safety
/// `op` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_operator_materialize(
    op: *const PcOperator,
    degree: usize,
    basis_cap: usize,
    csv: bool,
    out: *mut *mut c_char,
) -> PcStatus {
    guard(|| {
        let op = ref_arg(op, "op")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let m = OperatorMatrix::materialize(&op.0, degree, basis_cap)?;
        let text = if csv {
            m.to_csv()
        } else {
            pretty(&m.to_json(op.0.vertices()))
        };
        put_string(out, text)?;
        Ok(PcStatus::Ok)
    })
}

/// # Safety
/// `op` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_operator_free(op: *mut PcOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Dimension table `{vertices, max_degree, lambda, regular}` as JSON.
///
/// # Safety
/// `vs` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_dims(
    vs: *const PcVertexSet,
    max_degree: usize,
    basis_cap: usize,
    out: *mut *mut c_char,
) -> PcStatus {
    guard(|| {
        let vs = ref_arg(vs, "vs")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let k = vs.0.len();
        let mut lambda = Vec::new();
        let mut regular = Vec::new();
        for n in 0..=max_degree as i64 {
            lambda.push(Basis::new(k, n, Space::Full, basis_cap)?.len());
            regular.push(Basis::new(k, n, Space::Regular, basis_cap)?.len());
        }
        let doc = serde_json::json!({
            "vertices": vs.0.labels(),
            "max_degree": max_degree,
            "lambda": lambda,
            "regular": regular,
        });
        put_string(out, pretty(&doc))?;
        Ok(PcStatus::Ok)
    })
}

/// Runs a verification suite and writes the report JSON. Returns
/// `VerifyFailed` when the report contains a failure; the report is
/// written either way. `vs` may be null for the default vertex sets.
///
/// # Safety
/// `suite` must be a NUL-terminated string, `vs` null or a live handle,
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_verify(
    suite: *const c_char,
    vs: *const PcVertexSet,
    max_degree: usize,
    seed: u64,
    trials: usize,
    out: *mut *mut c_char,
) -> PcStatus {
    guard(|| {
        let suite: Suite = str_arg(suite, "suite")?.parse()?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cfg = VerifyConfig {
            seed,
            trials,
            max_degree,
            anticomm_max_degree: max_degree.min(3),
            vertices: vs.as_ref().map(|v| v.0.clone()),
            ..VerifyConfig::default()
        };
        let report = verifier::run(suite, &cfg)?;
        put_string(out, report.render())?;
        Ok(if report.ok() {
            PcStatus::Ok
        } else {
            PcStatus::VerifyFailed
        })
    })
}

/// Searches for a witness against a regular identity and writes the
/// outcome JSON. Returns `NotFound` when the search is exhausted.
///
/// # Safety
/// `identity` must be a NUL-terminated string, `vs` a live handle and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_counterexample(
    identity: *const c_char,
    vs: *const PcVertexSet,
    max_degree: usize,
    out: *mut *mut c_char,
) -> PcStatus {
    guard(|| {
        let id: IdentityId = str_arg(identity, "identity")?.parse()?;
        let vs = ref_arg(vs, "vs")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let outcome = find_counterexample(id, &vs.0, max_degree, pathcalc::DEFAULT_BASIS_CAP)?;
        put_string(out, pretty(&outcome.to_json()))?;
        Ok(match outcome {
            SearchOutcome::Found(_) => PcStatus::Ok,
            SearchOutcome::NotFound { .. } => PcStatus::NotFound,
        })
    })
}
