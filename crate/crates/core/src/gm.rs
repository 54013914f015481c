//! Grone-Merris verdicts: `λ(G) ⊴ d^T(G)`.

use serde::{Deserialize, Serialize, Serializer};

use crate::graph::Graph;
use crate::graph6::write_graph6;
use crate::partition::{Partition, DEFAULT_TOLERANCE};
use crate::spectra::{laplacian_spectrum, round_sig12};

/// Relative slack allowed between the floating eigenvalue sum and the exact trace.
const TRACE_TOLERANCE: f64 = 1e-9;

/// A sufficient condition for GM that needs no eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shortcut {
    Regular,
    NearlyRegular,
    #[serde(rename = "max_degree_le_3")]
    MaxDegreeLe3,
    ComplementReduced,
}

impl Shortcut {
    pub fn as_str(self) -> &'static str {
        match self {
            Shortcut::Regular => "regular",
            Shortcut::NearlyRegular => "nearly_regular",
            Shortcut::MaxDegreeLe3 => "max_degree_le_3",
            Shortcut::ComplementReduced => "complement_reduced",
        }
    }
}

pub fn shortcut_label(s: Option<Shortcut>) -> &'static str {
    s.map_or("none", Shortcut::as_str)
}

fn ser_shortcut<S: Serializer>(s: &Option<Shortcut>, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(shortcut_label(*s))
}

pub(crate) fn ser_rounded<S: Serializer>(v: &[f64], ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(v.iter().map(|&x| round_sig12(x)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GmReport {
    pub graph6: String,
    /// Deleted-vertex bitmask, present for (edge, vertex) pair reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deleted: Option<u64>,
    pub holds: bool,
    pub equality: bool,
    #[serde(rename = "lambda", serialize_with = "ser_rounded")]
    pub spectrum: Vec<f64>,
    pub conjugate_degrees: Partition,
    /// `sum(d^T[..k]) - sum(λ[..k])` for `k = 1..=n`.
    #[serde(serialize_with = "ser_rounded")]
    pub margins: Vec<f64>,
    /// Prefix lengths (1-based) whose margin is within tolerance of zero.
    pub tight: Vec<usize>,
    #[serde(serialize_with = "ser_shortcut")]
    pub shortcut: Option<Shortcut>,
}

impl GmReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Aligned rows of `λ`, `d^T` and the prefix margins.
    pub fn to_text(&self) -> String {
        let cell = |x: f64| format!("{:>10}", format!("{:.6}", round_sig12(x)));
        let row = |label: &str, xs: &mut dyn Iterator<Item = f64>| {
            let mut s = format!("{label:<8}");
            for x in xs {
                s.push_str(&cell(x));
            }
            s.push('\n');
            s
        };
        let n = self.margins.len();
        let mut out = format!(
            "graph6  {}\nverdict {}{}\nshortcut {}\n",
            self.graph6,
            if self.holds { "holds" } else { "COUNTEREXAMPLE" },
            if self.equality { " (equality)" } else { "" },
            shortcut_label(self.shortcut),
        );
        let mut idx = String::from("k       ");
        for k in 1..=n {
            idx.push_str(&format!("{k:>10}"));
        }
        out.push_str(&idx);
        out.push('\n');
        out.push_str(&row("lambda", &mut self.spectrum.iter().copied()));
        out.push_str(&row("d^T", &mut (0..n).map(|i| self.conjugate_degrees.get(i) as f64)));
        out.push_str(&row("margin", &mut self.margins.iter().copied()));
        out
    }
}

/// Builds a report from a spectrum and a conjugate degree sequence whose
/// exact total is `exact_total`. The total-sum condition is decided against
/// that integer, so only prefix comparisons use `tol`.
pub(crate) fn build_report(
    graph6: String,
    deleted: Option<u64>,
    spectrum: Vec<f64>,
    conjugate: Partition,
    exact_total: usize,
    tol: f64,
    shortcut: Option<Shortcut>,
) -> GmReport {
    let n = spectrum.len().max(conjugate.nonzero_len());
    let conjugate = conjugate.padded(n);
    let lam = |i: usize| spectrum.get(i).copied().unwrap_or(0.0);
    let mut margins = Vec::with_capacity(n);
    let (mut sd, mut sl) = (0usize, 0.0f64);
    for i in 0..n {
        sd += conjugate.get(i);
        sl += lam(i);
        margins.push(sd as f64 - sl);
    }
    let total = exact_total as f64;
    let trace_ok = (sl - total).abs() <= TRACE_TOLERANCE * total.max(1.0);
    if let Some(last) = margins.last_mut() {
        if trace_ok {
            *last = 0.0;
        }
    }
    let holds = trace_ok && sd == exact_total && margins.iter().all(|&m| m >= -tol);
    let equality = (0..n).all(|i| (lam(i) - conjugate.get(i) as f64).abs() <= tol);
    let tight = margins
        .iter()
        .enumerate()
        .filter(|(_, &m)| m <= tol)
        .map(|(k, _)| k + 1)
        .collect();
    GmReport {
        graph6,
        deleted,
        holds,
        equality,
        spectrum,
        conjugate_degrees: conjugate,
        margins,
        tight,
        shortcut,
    }
}

/// Checks `λ(G) ⊴ d^T(G)`. A failure is reported, never raised.
pub fn gm_check(g: &Graph, tol: f64) -> GmReport {
    let spectrum = laplacian_spectrum(g).values;
    build_report(
        write_graph6(g),
        None,
        spectrum,
        g.conjugate_degrees(),
        2 * g.edge_count(),
        tol,
        shortcut_check(g),
    )
}

/// `λ₁ ≤ d^T₁` and `λ₁ + λ₂ ≤ d^T₁ + d^T₂`, after removing isolated vertices.
pub fn first_two_inequalities(g: &Graph) -> (bool, bool) {
    let h = g.without_isolated();
    let s = laplacian_spectrum(&h).values;
    let d = h.degree_sequence().conjugate();
    let lam = |i: usize| s.get(i).copied().unwrap_or(0.0);
    let first = lam(0) <= d.get(0) as f64 + DEFAULT_TOLERANCE;
    let second = lam(0) + lam(1) <= (d.get(0) + d.get(1)) as f64 + DEFAULT_TOLERANCE;
    (first, second)
}

/// A sufficient condition for GM that applies without eigensolving, if any.
pub fn shortcut_check(g: &Graph) -> Option<Shortcut> {
    let degrees = g.degrees();
    let hi = degrees.iter().copied().max().unwrap_or(0);
    let lo = degrees.iter().copied().min().unwrap_or(0);
    if hi == lo {
        Some(Shortcut::Regular)
    } else if hi - lo == 1 {
        Some(Shortcut::NearlyRegular)
    } else if hi <= 3 {
        Some(Shortcut::MaxDegreeLe3)
    } else if g.complement().max_degree() <= 3 {
        Some(Shortcut::ComplementReduced)
    } else {
        None
    }
}

/// Whichever of `G` and its complement has fewer edges; ties keep `G`.
pub fn complement_reduce(g: &Graph) -> Graph {
    let c = g.complement();
    if c.edge_count() < g.edge_count() {
        c
    } else {
        g.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{random_graph, standard_family, threshold_graph, Family};

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn star_is_threshold_equality() {
        let g = threshold_graph(&[0, 0, 0, 1]).unwrap();
        let r = gm_check(&g, DEFAULT_TOLERANCE);
        assert!(r.holds && r.equality);
        assert!(close(&r.spectrum, &[4.0, 1.0, 1.0, 0.0]));
        assert_eq!(r.conjugate_degrees.parts(), &[4, 1, 1, 0]);
    }

    #[test]
    fn cycle_four_margins() {
        let g = standard_family(Family::Cycle, 4).unwrap();
        let r = gm_check(&g, DEFAULT_TOLERANCE);
        assert!(r.holds && !r.equality);
        assert_eq!(r.conjugate_degrees.parts(), &[4, 4, 0, 0]);
        assert!(close(&r.margins, &[0.0, 2.0, 0.0, 0.0]));
        assert_eq!(r.tight, vec![1, 3, 4]);
        assert_eq!(r.shortcut, Some(Shortcut::Regular));
    }

    #[test]
    fn path_four_margins() {
        let g = standard_family(Family::Path, 4).unwrap();
        let r = gm_check(&g, DEFAULT_TOLERANCE);
        assert!(r.holds && !r.equality);
        assert_eq!(r.conjugate_degrees.parts(), &[4, 2, 0, 0]);
        let m = 2.0 - 2f64.sqrt();
        assert!(close(&r.margins, &[m, m, 0.0, 0.0]));
    }

    #[test]
    fn forged_spectrum_is_a_counterexample() {
        let r = build_report("C~".into(), None, vec![5.0, 1.0, 0.0, 0.0], Partition::new(vec![4, 2]).unwrap(), 6, 1e-7, None);
        assert!(!r.holds);
        assert!((r.margins[0] + 1.0).abs() < 1e-12);
        let r = build_report("x".into(), None, vec![3.0, 2.0], Partition::new(vec![4, 2]).unwrap(), 6, 1e-7, None);
        assert!(!r.holds, "trace mismatch must fail");
    }

    #[test]
    fn first_two_on_examples() {
        assert_eq!(first_two_inequalities(&standard_family(Family::Complete, 5).unwrap()), (true, true));
        assert_eq!(first_two_inequalities(&standard_family(Family::Path, 2).unwrap()), (true, true));
        assert_eq!(first_two_inequalities(&Graph::empty(3).unwrap()), (true, true));
        for seed in 0..300 {
            let g = random_graph(1 + (seed % 12) as usize, 0.4, seed).unwrap();
            assert_eq!(first_two_inequalities(&g), (true, true));
        }
    }

    #[test]
    fn shortcut_examples() {
        assert_eq!(shortcut_check(&standard_family(Family::Cycle, 7).unwrap()), Some(Shortcut::Regular));
        let claw = standard_family(Family::Star, 4).unwrap();
        assert_eq!(shortcut_check(&claw), Some(Shortcut::MaxDegreeLe3));
        let mut cocktail = standard_family(Family::Complete, 6).unwrap();
        for v in 0..3 {
            cocktail.remove_edge(2 * v, 2 * v + 1);
        }
        assert_eq!(shortcut_check(&cocktail), Some(Shortcut::Regular));
        assert_eq!(shortcut_check(&standard_family(Family::Path, 3).unwrap()), Some(Shortcut::NearlyRegular));
        // Star K_{1,6} plus an edge: degrees 6,2,2,1,1,1,1; complement degrees 0,4,4,5,...
        let mut g = standard_family(Family::Star, 7).unwrap();
        g.add_edge(1, 2).unwrap();
        assert_eq!(shortcut_check(&g), None);
        assert_eq!(shortcut_check(&g.complement()), None);
        let k_minus = standard_family(Family::Star, 5).unwrap().complement();
        assert_eq!(shortcut_check(&k_minus), Some(Shortcut::MaxDegreeLe3));
    }

    #[test]
    fn complement_reduce_examples() {
        let k5 = standard_family(Family::Complete, 5).unwrap();
        assert_eq!(complement_reduce(&k5), Graph::empty(5).unwrap());
        let p4 = standard_family(Family::Path, 4).unwrap();
        assert_eq!(complement_reduce(&p4), p4);
        assert_eq!(complement_reduce(&Graph::empty(4).unwrap()), Graph::empty(4).unwrap());
    }

    #[test]
    fn trivial_tail_prefixes() {
        for seed in 0..200 {
            let g = random_graph(2 + (seed % 10) as usize, 0.3, seed).unwrap();
            let r = gm_check(&g, DEFAULT_TOLERANCE);
            for k in g.max_degree().max(1)..=g.n() {
                assert!(r.margins[k - 1] >= -1e-9, "seed {seed} k {k}");
            }
        }
    }

    #[test]
    fn json_shape() {
        let r = gm_check(&standard_family(Family::Complete, 2).unwrap(), DEFAULT_TOLERANCE);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["graph6"], "A_");
        assert_eq!(v["holds"], true);
        assert_eq!(v["equality"], true);
        assert_eq!(v["shortcut"], "regular");
        assert!(v.get("deleted").is_none());
        assert!(r.to_text().contains("lambda"));
    }
}
