//! C ABI for graph1lap.
//!
//! Graphs live behind the opaque `G1lGraph` handle. Every fallible call
//! returns a `G1lStatus`; on failure the message is available from
//! `g1l_last_error` on the same thread. Strings returned by this library
//! are owned by the caller and released with `g1l_string_free`. Vertex ids
//! are 0-based, as in the library API.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use graph1lap::cli::{report_for_graph, CliError, Mode, OutputFormat, RunConfig};
use graph1lap::generators::family;
use graph1lap::ipm::{cluster2, cluster3, IpmConfig, IpmError};
use graph1lap::oracle::{cheeger_h, cheeger_rho, OracleError, PartitionReport};
use graph1lap::verify::{verify_eigenpair, VerifyError};
use graph1lap::{rayleigh, Graph, GraphError};

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum G1lStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Disconnected = 4,
    SizeGuard = 5,
    Solver = 6,
    Panic = 7,
}

/// Opaque graph handle.
pub struct G1lGraph(Graph);

/// Solver settings; obtain defaults from `g1l_ipm_config_default`.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct G1lIpmConfig {
    pub eps: f64,
    pub max_outer: usize,
    pub inner_tol: f64,
    pub inner_max: usize,
    pub n_inits: usize,
    pub seed: u64,
}

impl From<&G1lIpmConfig> for IpmConfig {
    fn from(c: &G1lIpmConfig) -> Self {
        IpmConfig {
            eps: c.eps,
            max_outer: c.max_outer,
            inner_tol: c.inner_tol,
            inner_max: c.inner_max,
            n_inits: c.n_inits,
            seed: c.seed,
            ..IpmConfig::default()
        }
    }
}

/// Exact cut value `num/den` with its decimal.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct G1lRatio {
    /// False when the sums are not integers; `num` and `den` are then 0.
    pub exact: bool,
    pub num: i64,
    pub den: i64,
    pub value: f64,
}

impl From<&graph1lap::CutRatio> for G1lRatio {
    fn from(r: &graph1lap::CutRatio) -> Self {
        let (exact, (num, den)) = match r.exact() {
            Some(p) => (true, p),
            None => (false, (0, 0)),
        };
        G1lRatio { exact, num, den, value: r.value() }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(G1lStatus, String);

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let status = match e {
            GraphError::Parse { .. } | GraphError::Empty | GraphError::BadFamily(_) => {
                G1lStatus::Parse
            }
            GraphError::Disconnected(_) => G1lStatus::Disconnected,
            _ => G1lStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::SizeGuard { .. } => Failure(G1lStatus::SizeGuard, e.to_string()),
            OracleError::Graph(g) => g.into(),
            _ => Failure(G1lStatus::InvalidArgument, e.to_string()),
        }
    }
}

impl From<IpmError> for Failure {
    fn from(e: IpmError) -> Self {
        match e {
            IpmError::Config(_) => Failure(G1lStatus::InvalidArgument, e.to_string()),
            IpmError::Graph(g) => g.into(),
            IpmError::Oracle(o) => o.into(),
            _ => Failure(G1lStatus::Solver, e.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Graph(g) => g.into(),
            VerifyError::Oracle(o) => o.into(),
            VerifyError::Ipm(i) => i.into(),
            VerifyError::Precondition(_) => Failure(G1lStatus::InvalidArgument, e.to_string()),
            VerifyError::NotConverged(_) => Failure(G1lStatus::Solver, e.to_string()),
        }
    }
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        match e {
            CliError::Graph(g) => g.into(),
            CliError::Oracle(o) => o.into(),
            CliError::Ipm(i) => i.into(),
            CliError::Verify(v) => v.into(),
            _ => Failure(G1lStatus::InvalidArgument, e.to_string()),
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(G1lStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> G1lStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            clear_error();
            G1lStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            G1lStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const G1lGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.0).ok_or_else(|| null("graph"))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(G1lStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

fn into_handle(g: Graph) -> *mut G1lGraph {
    Box::into_raw(Box::new(G1lGraph(g)))
}

/// Copy of the last error message on this thread, or NULL. Free with
/// `g1l_string_free`.
#[no_mangle]
pub extern "C" fn g1l_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(c) => c.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn g1l_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn g1l_ipm_config_default() -> G1lIpmConfig {
    let d = IpmConfig::default();
    G1lIpmConfig {
        eps: d.eps,
        max_outer: d.max_outer,
        inner_tol: d.inner_tol,
        inner_max: d.inner_max,
        n_inits: d.n_inits,
        seed: d.seed,
    }
}

/// Parse an edge list (`i j [w]` per line, 1-based ids).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn g1l_graph_parse(text: *const c_char, out: *mut *mut G1lGraph) -> G1lStatus {
    guard(|| {
        let g = Graph::parse_edge_list(str_arg(text, "text")?)?;
        put(out, into_handle(g), "out")
    })
}

/// Build a named family such as `path:10` or `grid:3,4`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn g1l_graph_family(spec: *const c_char, out: *mut *mut G1lGraph) -> G1lStatus {
    guard(|| {
        let g = family(str_arg(spec, "spec")?)?;
        put(out, into_handle(g), "out")
    })
}

/// Build from `m` edges `(u[k], v[k], w[k])` on `n` vertices, 0-based.
/// `w` may be NULL for unit weights.
///
/// # Safety
/// `u`, `v` and (when non-NULL) `w` must point to `m` elements.
#[no_mangle]
pub unsafe extern "C" fn g1l_graph_from_edges(
    n: usize,
    u: *const usize,
    v: *const usize,
    w: *const f64,
    m: usize,
    out: *mut *mut G1lGraph,
) -> G1lStatus {
    guard(|| {
        let us = slice_arg(u, m, "u")?;
        let vs = slice_arg(v, m, "v")?;
        let ws = if w.is_null() { None } else { Some(slice_arg(w, m, "w")?) };
        let edges: Vec<(usize, usize, f64)> = (0..m)
            .map(|k| (us[k], vs[k], ws.map_or(1.0, |ws| ws[k])))
            .collect();
        let g = Graph::from_edges(n, &edges)?;
        put(out, into_handle(g), "out")
    })
}

/// # Safety
/// `g` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn g1l_graph_free(g: *mut G1lGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn g1l_graph_n(g: *const G1lGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.n())
}

/// Total degree `Σ d_i`, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn g1l_graph_total_degree(g: *const G1lGraph) -> f64 {
    g.as_ref().map_or(0.0, |h| h.0.total_degree())
}

/// Write part indices `0..k` per vertex; vertices outside every part get
/// `usize::MAX`.
fn write_labels(rep: &PartitionReport, n: usize, labels: *mut usize) -> Result<(), Failure> {
    if labels.is_null() {
        return Ok(());
    }
    let mut lab = vec![usize::MAX; n];
    for (p, part) in rep.parts.iter().enumerate() {
        for &v in part {
            lab[v] = p;
        }
    }
    // SAFETY: caller guarantees `labels` has room for `n` entries.
    unsafe { ptr::copy_nonoverlapping(lab.as_ptr(), labels, n) };
    Ok(())
}

unsafe fn cheeger(
    g: *const G1lGraph,
    k: usize,
    rho: bool,
    out: *mut G1lRatio,
    labels: *mut usize,
) -> G1lStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let rep = if rho { cheeger_rho(g, k)? } else { cheeger_h(g, k)? };
        write_labels(&rep, g.n(), labels)?;
        put(out, G1lRatio::from(&rep.value), "out")
    })
}

/// Exact `h_k` for `k ∈ {2, 3}`; `labels` (length n) may be NULL.
///
/// # Safety
/// `out` must be writable; `labels`, when non-NULL, must hold n entries.
#[no_mangle]
pub unsafe extern "C" fn g1l_cheeger_h(
    g: *const G1lGraph,
    k: usize,
    out: *mut G1lRatio,
    labels: *mut usize,
) -> G1lStatus {
    cheeger(g, k, false, out, labels)
}

/// Exact `ρ_k` for `k ∈ {2, 3}`; uncovered vertices get label `SIZE_MAX`.
///
/// # Safety
/// As for `g1l_cheeger_h`.
#[no_mangle]
pub unsafe extern "C" fn g1l_cheeger_rho(
    g: *const G1lGraph,
    k: usize,
    out: *mut G1lRatio,
    labels: *mut usize,
) -> G1lStatus {
    cheeger(g, k, true, out, labels)
}

/// `Î(f) = I(f)/‖f‖_w`.
///
/// # Safety
/// `f` must point to `len` doubles and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn g1l_rayleigh(
    g: *const G1lGraph,
    f: *const f64,
    len: usize,
    out: *mut f64,
) -> G1lStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let r = rayleigh(g, slice_arg(f, len, "f")?)?;
        put(out, r, "out")
    })
}

/// Second eigenvector estimate and best 2-way threshold cut.
/// `vector` and `labels` (length n) may be NULL.
///
/// # Safety
/// Non-NULL outputs must be writable with the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn g1l_cluster2(
    g: *const G1lGraph,
    cfg: *const G1lIpmConfig,
    mu: *mut f64,
    cut: *mut G1lRatio,
    vector: *mut f64,
    labels: *mut usize,
) -> G1lStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let cfg = cfg.as_ref().ok_or_else(|| null("cfg"))?;
        let c = cluster2(g, &cfg.into())?;
        put(mu, c.estimate.value, "mu")?;
        put(cut, G1lRatio::from(&c.partition.value), "cut")?;
        if !vector.is_null() {
            ptr::copy_nonoverlapping(c.estimate.vector.as_ptr(), vector, g.n());
        }
        write_labels(&c.partition, g.n(), labels)
    })
}

/// Second and third eigenvalue estimates and best 3-way threshold cut.
///
/// # Safety
/// Non-NULL outputs must be writable; `labels` holds n entries.
#[no_mangle]
pub unsafe extern "C" fn g1l_cluster3(
    g: *const G1lGraph,
    cfg: *const G1lIpmConfig,
    mu2: *mut f64,
    mu3: *mut f64,
    cut: *mut G1lRatio,
    labels: *mut usize,
) -> G1lStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let cfg = cfg.as_ref().ok_or_else(|| null("cfg"))?;
        let c = cluster3(g, &cfg.into())?;
        put(mu2, c.second.value, "mu2")?;
        put(mu3, c.third.value, "mu3")?;
        put(cut, G1lRatio::from(&c.partition.value), "cut")?;
        write_labels(&c.partition, g.n(), labels)
    })
}

/// Floating-point eigenpair check; `residual` may be NULL.
///
/// # Safety
/// `f` must point to `len` doubles; `feasible` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g1l_verify_eigenpair(
    g: *const G1lGraph,
    f: *const f64,
    len: usize,
    mu: f64,
    tol: f64,
    feasible: *mut bool,
    residual: *mut f64,
) -> G1lStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let c = verify_eigenpair(g, slice_arg(f, len, "f")?, mu, tol)?;
        put(feasible, c.feasible, "feasible")?;
        if !residual.is_null() {
            residual.write(c.residual);
        }
        Ok(())
    })
}

/// JSON report for `mode` ∈ {cluster2, cluster3, oracle, chain}, in the
/// same schema as the command-line tool. Free with `g1l_string_free`.
///
/// # Safety
/// `mode` must be a NUL-terminated string; `cfg` may be NULL for
/// defaults; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g1l_report_json(
    g: *const G1lGraph,
    mode: *const c_char,
    cfg: *const G1lIpmConfig,
    out: *mut *mut c_char,
) -> G1lStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let mode = match str_arg(mode, "mode")? {
            "cluster2" => Mode::Cluster2,
            "cluster3" => Mode::Cluster3,
            "oracle" => Mode::Oracle,
            "chain" => Mode::Chain,
            other => {
                return Err(Failure(
                    G1lStatus::InvalidArgument,
                    format!("unsupported mode '{other}'"),
                ))
            }
        };
        let c = cfg.as_ref().copied().unwrap_or_else(|| g1l_ipm_config_default());
        let run = RunConfig {
            input: None,
            family: None,
            mode,
            k: None,
            eps: c.eps,
            max_iter: c.max_outer,
            inits: c.n_inits,
            seed: c.seed,
            inner_tol: c.inner_tol,
            inner_max: c.inner_max,
            format: OutputFormat::Json,
            verbose: false,
            vector: None,
            mu: None,
            tol: 1e-9,
        };
        let rep = report_for_graph(g, &run, &mut std::io::sink())?;
        let s = CString::new(rep.to_json()).expect("json has no nul bytes");
        put(out, s.into_raw(), "out")
    })
}
