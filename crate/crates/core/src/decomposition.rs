//! Decomposing a graph as `H = (A + B) ∪ C`, where `A` and `B` are induced on
//! the two sides of a vertex bipartition and `C` holds the crossing edges.
//!
//! If GM holds on `A`, `B` and `C`, then GM holds on `H` provided either
//!
//! * `d^T_i(C) <= min(d^T_i(A), d^T_i(B))` for all `i` and `d^T_1(B) <= d^T_m(A)`
//!   with `m` the maximum degree of `C` (the "theorem" conditions), or
//! * `d^T(H)` dominates `sort(d^T(A), d^T(B)) + d^T(C)` (the relaxed "dt" condition).
//!
//! Both conditions are checked in exact integer arithmetic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::enumeration::{all_graphs, parallel_map};
use crate::error::{Error, Result};
use crate::gm::{gm_check, shortcut_check};
use crate::graph::{bits, low_mask, Graph};
use crate::graph6::{parse_graph6, write_graph6};
use crate::partition::{dominance_prefix_int, majorizes_int, Partition};

/// Decomposable count reported for the 156 classes on six vertices.
pub const PUBLISHED_SIX_VERTEX_DECOMPOSABLE: usize = 146;

/// A vertex bipartition of `H` with roles: `mask` marks the `A` side.
#[derive(Clone, Debug, PartialEq)]
pub struct Cut {
    host: Graph,
    mask: u64,
    a: Graph,
    b: Graph,
    c: Graph,
}

impl Cut {
    pub fn new(host: &Graph, mask: u64) -> Result<Cut> {
        let all = low_mask(host.n());
        if mask & !all != 0 || mask == 0 || mask == all {
            return Err(Error::OutOfRange {
                what: "cut mask",
                value: mask as usize,
                range: "non-empty proper subset of the vertices",
            });
        }
        let mut c = Graph::empty(host.n())?;
        for (i, j) in host.edges() {
            if (mask >> i & 1) != (mask >> j & 1) {
                c.add_edge(i, j)?;
            }
        }
        Ok(Cut {
            host: host.clone(),
            mask,
            a: host.induced_by_mask(mask),
            b: host.induced_by_mask(all & !mask),
            c,
        })
    }

    /// Same bipartition with the roles of `A` and `B` exchanged.
    pub fn swapped(&self) -> Cut {
        Cut {
            host: self.host.clone(),
            mask: low_mask(self.host.n()) & !self.mask,
            a: self.b.clone(),
            b: self.a.clone(),
            c: self.c.clone(),
        }
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn side_a(&self) -> Vec<usize> {
        bits(self.mask).collect()
    }

    pub fn side_b(&self) -> Vec<usize> {
        bits(low_mask(self.host.n()) & !self.mask).collect()
    }

    pub fn a(&self) -> &Graph {
        &self.a
    }

    pub fn b(&self) -> &Graph {
        &self.b
    }

    /// The crossing edges, on all vertices of `H`.
    pub fn c(&self) -> &Graph {
        &self.c
    }

    /// `A + B` in the labels of `H`.
    pub fn disjoint_part(&self) -> Graph {
        let mut g = self.host.clone();
        for (i, j) in self.c.edges() {
            g.remove_edge(i, j);
        }
        g
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |v: Vec<usize>| v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",");
        write!(f, "A={{{}}} B={{{}}} |C|={}", side(self.side_a()), side(self.side_b()), self.c.edge_count())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conditions {
    pub cond_cle: bool,
    pub cond_order: bool,
    pub cond_dt: bool,
    /// Maximum degree of `C`.
    pub m: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub gm_a: bool,
    pub gm_b: bool,
    pub gm_c: bool,
    pub cond_cle: bool,
    pub cond_order: bool,
    pub cond_dt: bool,
    pub m: usize,
    pub theorem_applies: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecomposeMode {
    Theorem,
    Dt,
}

impl DecomposeMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DecomposeMode::Theorem => "theorem",
            DecomposeMode::Dt => "dt",
        }
    }
}

impl std::str::FromStr for DecomposeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem" => Ok(DecomposeMode::Theorem),
            "dt" => Ok(DecomposeMode::Dt),
            other => Err(Error::InvalidEdgeList(format!("unknown mode {other:?}"))),
        }
    }
}

fn conj(g: &Graph) -> Partition {
    g.degree_sequence().conjugate()
}

/// The integer conditions of a cut; no eigenvalues involved.
pub fn abc_conditions(cut: &Cut) -> Conditions {
    let (da, db, dc) = (conj(&cut.a), conj(&cut.b), conj(&cut.c));
    let m = dc.len();
    let cond_cle = (0..m).all(|i| dc.get(i) <= da.get(i) && dc.get(i) <= db.get(i));
    let cond_order = m == 0 || db.get(0) <= da.get(m - 1);
    let bound = da.union(&db).add(&dc);
    let cond_dt = dominance_prefix_int(&conj(&cut.host), &bound).holds;
    Conditions {
        cond_cle,
        cond_order,
        cond_dt,
        m,
    }
}

/// Evaluates every hypothesis; GM on the parts is decided by direct eigensolve.
pub fn check_abc(cut: &Cut, tol: f64) -> HypothesisReport {
    let cond = abc_conditions(cut);
    let gm_a = gm_check(&cut.a, tol).holds;
    let gm_b = gm_check(&cut.b, tol).holds;
    let gm_c = gm_check(&cut.c, tol).holds;
    let theorem_applies = gm_a && gm_b && gm_c && cond.cond_cle && cond.cond_order;
    debug_assert!(!theorem_applies || cond.cond_dt, "hypotheses imply the dt bound");
    HypothesisReport {
        gm_a,
        gm_b,
        gm_c,
        cond_cle: cond.cond_cle,
        cond_order: cond.cond_order,
        cond_dt: cond.cond_dt,
        m: cond.m,
        theorem_applies,
    }
}

/// `d^T(H) ⊵ sort(d^T(A + B), d^T(C))`, exactly.
pub fn claim_cgc_check(cut: &Cut) -> bool {
    let dg = conj(&cut.disjoint_part());
    let dc = conj(&cut.c);
    majorizes_int(&conj(&cut.host), &dg.union(&dc)).holds
}

/// All `2^(n-1) - 1` bipartitions with vertex 0 on the `A` side, in
/// increasing mask order.
pub fn enumerate_cuts(h: &Graph) -> impl Iterator<Item = Cut> + '_ {
    let n = h.n();
    let count: u64 = if n >= 2 { (1u64 << (n - 1)) - 1 } else { 0 };
    (0..count).map(move |bits| Cut::new(h, 1 | bits << 1).expect("proper subset"))
}

fn mode_conditions(cond: &Conditions, mode: DecomposeMode) -> bool {
    match mode {
        DecomposeMode::Theorem => cond.cond_cle && cond.cond_order,
        DecomposeMode::Dt => cond.cond_dt,
    }
}

fn mode_accepts(report: &HypothesisReport, mode: DecomposeMode) -> bool {
    let parts = report.gm_a && report.gm_b && report.gm_c;
    match mode {
        DecomposeMode::Theorem => report.theorem_applies,
        DecomposeMode::Dt => parts && report.cond_dt,
    }
}

/// First cut (both role assignments tried) that satisfies `mode`.
pub fn decompose_search(h: &Graph, mode: DecomposeMode, tol: f64) -> Option<(Cut, HypothesisReport)> {
    for cut in enumerate_cuts(h) {
        let swapped = cut.swapped();
        for oriented in [cut, swapped] {
            if !mode_conditions(&abc_conditions(&oriented), mode) {
                continue;
            }
            let report = check_abc(&oriented, tol);
            if mode_accepts(&report, mode) {
                return Some((oriented, report));
            }
        }
    }
    None
}

/// How a census entry was settled without computing its own spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// A qualifying cut of the graph itself.
    Direct,
    /// A qualifying cut of the complement.
    Complement,
    /// Regular, nearly regular, or maximum degree at most 3 (for G or its complement).
    Shortcut,
    None,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::Complement => "complement",
            Route::Shortcut => "shortcut",
            Route::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusRow {
    pub graph6: String,
    pub decomposable: bool,
    pub mode: DecomposeMode,
    /// Role-`A` mask of the qualifying cut (of the complement for that route).
    pub cut_mask: Option<u64>,
    pub route: Route,
}

/// Decides one class: a qualifying cut of `H`, else of its complement, else
/// an eigenvalue-free shortcut.
pub fn classify(h: &Graph, mode: DecomposeMode, tol: f64) -> CensusRow {
    let (route, cut_mask) = if let Some((cut, _)) = decompose_search(h, mode, tol) {
        (Route::Direct, Some(cut.mask()))
    } else if let Some((cut, _)) = decompose_search(&h.complement(), mode, tol) {
        (Route::Complement, Some(cut.mask()))
    } else if shortcut_check(h).is_some() {
        (Route::Shortcut, None)
    } else {
        (Route::None, None)
    };
    CensusRow {
        graph6: write_graph6(h),
        decomposable: route != Route::None,
        mode,
        cut_mask,
        route,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub mode: DecomposeMode,
    pub total_classes: usize,
    pub decomposable_count: usize,
    pub direct_count: usize,
    pub complement_count: usize,
    pub shortcut_count: usize,
    /// Classes not settled by any route; each is checked by eigensolve.
    pub residual: Vec<String>,
    pub residual_gm_holds: bool,
    /// GM verified by eigensolve on every class.
    pub all_gm_hold: bool,
    #[serde(skip)]
    pub rows: Vec<CensusRow>,
}

impl CensusReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("graph6,decomposable,mode,cut_mask,route\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.graph6,
                r.decomposable,
                r.mode.as_str(),
                r.cut_mask.map(|m| m.to_string()).unwrap_or_default(),
                r.route.as_str()
            ));
        }
        out
    }
}

/// Runs [`classify`] on every isomorphism class on `n` vertices.
pub fn census(n: usize, mode: DecomposeMode, tol: f64, workers: usize) -> Result<CensusReport> {
    let graphs = all_graphs(n)?;
    let rows: Vec<(CensusRow, bool)> = parallel_map(&graphs, workers, |g| (classify(g, mode, tol), gm_check(g, tol).holds));
    let count = |r: Route| rows.iter().filter(|(row, _)| row.route == r).count();
    let residual: Vec<&(CensusRow, bool)> = rows.iter().filter(|(r, _)| !r.decomposable).collect();
    Ok(CensusReport {
        n,
        mode,
        total_classes: rows.len(),
        decomposable_count: rows.iter().filter(|(r, _)| r.decomposable).count(),
        direct_count: count(Route::Direct),
        complement_count: count(Route::Complement),
        shortcut_count: count(Route::Shortcut),
        residual_gm_holds: residual.iter().all(|(_, ok)| *ok),
        residual: residual.iter().map(|(r, _)| r.graph6.clone()).collect(),
        all_gm_hold: rows.iter().all(|(_, ok)| *ok),
        rows: rows.into_iter().map(|(r, _)| r).collect(),
    })
}

/// The six-vertex census.
pub fn census_six(mode: DecomposeMode, tol: f64) -> CensusReport {
    census(6, mode, tol, 1).expect("n = 6 is in range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    ThresholdBase,
    AbcNode,
    DirectEigen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSpec {
    #[serde(rename = "VA")]
    pub va: u64,
}

/// A proof tree that a graph satisfies GM. `AbcNode` children are `[A, B, C]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertKind,
    pub graph6: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut: Option<CutSpec>,
    #[serde(default)]
    pub children: Vec<Certificate>,
}

impl Certificate {
    fn leaf(kind: CertKind, g: &Graph) -> Certificate {
        Certificate {
            kind,
            graph6: write_graph6(g),
            cut: None,
            children: Vec::new(),
        }
    }

    /// Leaf for a part: threshold graphs need only the equality check.
    pub fn for_part(g: &Graph) -> Certificate {
        if g.is_threshold() {
            Certificate::leaf(CertKind::ThresholdBase, g)
        } else {
            Certificate::leaf(CertKind::DirectEigen, g)
        }
    }

    pub fn leaves(&self) -> Vec<&Certificate> {
        if self.children.is_empty() {
            vec![self]
        } else {
            self.children.iter().flat_map(Certificate::leaves).collect()
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(Certificate::depth).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        serde_json::from_str(text).map_err(|e| Error::MalformedCertificate(e.to_string()))
    }
}

/// Certificate for a tree by induction on the diameter: diameter at most 2 is
/// a star (threshold); otherwise cut the first edge whose ends both have
/// degree at least 2 and recurse on the two components.
pub fn tree_certificate(t: &Graph) -> Result<Certificate> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    Ok(tree_rec(t))
}

fn tree_rec(t: &Graph) -> Certificate {
    if t.diameter().is_some_and(|d| d <= 2) {
        return Certificate::leaf(CertKind::ThresholdBase, t);
    }
    let (i, j) = t
        .edges()
        .find(|&(i, j)| t.degree(i) >= 2 && t.degree(j) >= 2)
        .expect("diameter >= 3 gives an internal edge");
    let mut rest = t.clone();
    rest.remove_edge(i, j);
    let side = rest
        .components()
        .into_iter()
        .find(|c| c >> i & 1 == 1)
        .expect("vertex lies in a component");
    let cut = Cut::new(t, side).expect("both sides non-empty");
    let cut = [cut.clone(), cut.swapped()]
        .into_iter()
        .find(|c| {
            let cond = abc_conditions(c);
            cond.cond_cle && cond.cond_order
        })
        .expect("the larger side works as A");
    Certificate {
        kind: CertKind::AbcNode,
        graph6: write_graph6(t),
        cut: Some(CutSpec { va: cut.mask() }),
        children: vec![tree_rec(cut.a()), tree_rec(cut.b()), Certificate::for_part(cut.c())],
    }
}

/// Re-derives every node: threshold leaves re-check `λ = d^T`, direct leaves
/// re-run the GM check, and cut nodes re-check the integer conditions with
/// the children standing in for GM on the parts.
pub fn verify_certificate(cert: &Certificate, tol: f64) -> Result<bool> {
    let g = parse_graph6(&cert.graph6).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
    match cert.kind {
        CertKind::ThresholdBase | CertKind::DirectEigen => {
            if !cert.children.is_empty() || cert.cut.is_some() {
                return Err(Error::MalformedCertificate("leaf with children or cut".into()));
            }
            let r = gm_check(&g, tol);
            Ok(if cert.kind == CertKind::ThresholdBase { r.holds && r.equality } else { r.holds })
        }
        CertKind::AbcNode => {
            let (Some(spec), [ca, cb, cc]) = (cert.cut, cert.children.as_slice()) else {
                return Err(Error::MalformedCertificate("cut node needs a cut and three children".into()));
            };
            let cut = Cut::new(&g, spec.va).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
            let parts_match = ca.graph6 == write_graph6(cut.a())
                && cb.graph6 == write_graph6(cut.b())
                && cc.graph6 == write_graph6(cut.c());
            if !parts_match {
                return Ok(false);
            }
            let cond = abc_conditions(&cut);
            if !(cond.cond_cle && cond.cond_order) {
                return Ok(false);
            }
            for child in [ca, cb, cc] {
                if !verify_certificate(child, tol)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointEdgeCheck {
    /// Both sides have at least `2k` non-isolated vertices.
    pub simplified: bool,
    /// The general integer conditions under the better role assignment.
    pub general: bool,
}

impl DisjointEdgeCheck {
    pub fn agrees(&self) -> bool {
        self.simplified == self.general
    }
}

/// `C` made of `k` disjoint crossing edges `(i, n_A + i)`, `i < k`.
pub fn disjoint_edge_case_check(a: &Graph, b: &Graph, k: usize) -> Result<DisjointEdgeCheck> {
    if k > a.n().min(b.n()) {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            range: "<= min(|V_A|, |V_B|)",
        });
    }
    let mut h = a.disjoint_sum(b)?;
    for i in 0..k {
        h.add_edge(i, a.n() + i)?;
    }
    let cut = Cut::new(&h, low_mask(a.n()))?;
    let ok = |c: &Cut| {
        let cond = abc_conditions(c);
        cond.cond_cle && cond.cond_order
    };
    let general = ok(&cut) || ok(&cut.swapped());
    let non_isolated = |g: &Graph| g.n() - g.isolated_vertices().len();
    let simplified = non_isolated(a) >= 2 * k && non_isolated(b) >= 2 * k;
    Ok(DisjointEdgeCheck { simplified, general })
}
