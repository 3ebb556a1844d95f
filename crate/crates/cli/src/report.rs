use std::fmt::Write;

use serde::{Deserialize, Serialize};

/// Everything a run can print. Numbers are exact fractions as strings unless
/// the field sits in a `numeric` section.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "report", rename_all = "kebab-case")]
pub enum Report {
    Certify(CertifyReport),
    Traces(TracesReport),
    InitialHom(HomReport),
    Tree(TreeReport),
    Dot { dot: String },
    Lab(LabReport),
    Approx(ApproxReport),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Condition {
    pub label: String,
    pub holds: bool,
    pub exact: bool,
    pub holds_at: Vec<usize>,
    pub fails_at: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BifurcationReport {
    ProFd { contents: Vec<String>, reduced: String },
    DiscreteFiniteRank { from_index: usize, exact: bool },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Endpoints {
    pub zero_multipliers: Vec<String>,
    pub zero_dense: bool,
    pub infty_multipliers: Vec<String>,
    pub infty_dense: bool,
    pub exact: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CertifyReport {
    pub sequence: String,
    pub classification: String,
    pub prefix_relative: bool,
    pub conditions: Vec<Condition>,
    pub faithful: Option<bool>,
    pub bifurcation: BifurcationReport,
    pub endpoints: Endpoints,
    pub notes: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct VerdictReport {
    pub value: String,
    pub certificate: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TracesReport {
    pub element: String,
    pub stage: usize,
    pub tau_zero: String,
    pub tau_infty: String,
    pub points: Vec<(String, String)>,
    pub positive: VerdictReport,
    pub order_unit: VerdictReport,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TableEntry {
    pub stage: usize,
    pub vertex: String,
    pub value: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct HomReport {
    pub construction: String,
    pub sequence: Vec<String>,
    pub target: String,
    pub unit: Vec<String>,
    pub stages: usize,
    pub d: Option<String>,
    pub dense_range: Option<bool>,
    pub table: Vec<TableEntry>,
    pub verified: Option<bool>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TreeCheckReport {
    pub holds: bool,
    pub exact: bool,
    pub witness: Option<String>,
    pub good_levels: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TreeReport {
    pub rule: Vec<Vec<String>>,
    pub depth: usize,
    pub initial: TreeCheckReport,
    pub approx_div: TreeCheckReport,
    pub table: Vec<TableEntry>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Numeric {
    pub small_combination: Option<Vec<i64>>,
    pub norm: Option<f64>,
    pub search_bound: i64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct LabReport {
    pub scenario: String,
    pub generators: Vec<String>,
    pub z_rank: usize,
    pub span_dim: usize,
    pub discrete: bool,
    pub trace_generator: Option<String>,
    /// `(m, no counterexample found)` rows of the sampled rank check.
    pub antifd: Vec<(usize, bool)>,
    pub numeric: Numeric,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ApproxReport {
    pub target: String,
    pub interval: (String, String),
    pub coeffs: Vec<String>,
    pub poly: String,
    pub certified_error: String,
    pub eps: String,
}

fn yn(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn table(out: &mut String, rows: &[TableEntry]) {
    for r in rows {
        let _ = writeln!(out, "  u[{}][{}] = ({})", r.stage, r.vertex, r.value.join(", "));
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn human(&self) -> String {
        let mut o = String::new();
        match self {
            Report::Certify(r) => {
                let _ = writeln!(o, "sequence: {}", r.sequence);
                let _ = writeln!(o, "classification: {}", r.classification);
                for c in &r.conditions {
                    let exact = if c.exact { "" } else { " (prefix only)" };
                    let _ = writeln!(o, "  {}: {}{exact}; holds at [{}]", c.label, yn(c.holds), list(&c.holds_at));
                }
                if let Some(f) = r.faithful {
                    let _ = writeln!(o, "  projectively faithful: {}", yn(f));
                }
                match &r.bifurcation {
                    BifurcationReport::ProFd { contents, reduced } => {
                        let _ = writeln!(o, "bifurcation: pro-fd, contents [{}], reduced {reduced}", contents.join(", "));
                    }
                    BifurcationReport::DiscreteFiniteRank { from_index, exact } => {
                        let _ = writeln!(o, "bifurcation: finite-rank subgroups discrete from index {from_index} (exact: {})", yn(*exact));
                    }
                }
                let e = &r.endpoints;
                let _ = writeln!(o, "tau_0 multipliers: [{}] dense: {}", e.zero_multipliers.join(", "), yn(e.zero_dense));
                let _ = writeln!(o, "tau_inf multipliers: [{}] dense: {}", e.infty_multipliers.join(", "), yn(e.infty_dense));
                for n in &r.notes {
                    let _ = writeln!(o, "note: {n}");
                }
            }
            Report::Traces(r) => {
                let _ = writeln!(o, "element: ({}) / Q_{}", r.element, r.stage);
                let _ = writeln!(o, "tau_0 = {}", r.tau_zero);
                let _ = writeln!(o, "tau_inf = {}", r.tau_infty);
                for (t, v) in &r.points {
                    let _ = writeln!(o, "tau_{t} = {v}");
                }
                let _ = writeln!(o, "positive: {} ({})", r.positive.value, r.positive.certificate);
                let _ = writeln!(o, "order unit: {} ({})", r.order_unit.value, r.order_unit.certificate);
            }
            Report::InitialHom(r) => {
                let _ = writeln!(o, "construction: {}", r.construction);
                let _ = writeln!(o, "sequence: {}", r.sequence.join(", "));
                let _ = writeln!(o, "target: {} with unit ({})", r.target, r.unit.join(", "));
                if let Some(d) = &r.d {
                    let _ = writeln!(o, "d = {d}");
                }
                if let Some(dr) = r.dense_range {
                    let _ = writeln!(o, "dense range: {}", yn(dr));
                }
                let _ = writeln!(o, "table ({} stages):", r.stages);
                table(&mut o, &r.table);
                if let Some(v) = r.verified {
                    let _ = writeln!(o, "verified: {}", yn(v));
                }
            }
            Report::Tree(r) => {
                let rule: Vec<String> = r.rule.iter().map(|w| format!("({})", w.join(", "))).collect();
                let _ = writeln!(o, "rule: {} to depth {}", rule.join(" "), r.depth);
                for (name, c) in [("gcd one at every vertex", &r.initial), ("no multiplicity one", &r.approx_div)] {
                    let w = c.witness.as_deref().map(|w| format!(", first failure at {w}")).unwrap_or_default();
                    let _ = writeln!(o, "{name}: {} (exact: {}){w}; good levels [{}]", yn(c.holds), yn(c.exact), list(&c.good_levels));
                }
                if !r.table.is_empty() {
                    let _ = writeln!(o, "vertex table:");
                    table(&mut o, &r.table);
                }
            }
            Report::Dot { dot } => o.push_str(dot),
            Report::Lab(r) => {
                let _ = writeln!(o, "scenario: {}", r.scenario);
                for g in &r.generators {
                    let _ = writeln!(o, "  {g}");
                }
                let _ = writeln!(o, "Z-rank {}, real span {}, discrete: {}", r.z_rank, r.span_dim, yn(r.discrete));
                if let Some(c) = &r.trace_generator {
                    let _ = writeln!(o, "second-coordinate trace generator: {c}");
                }
                for (m, ok) in &r.antifd {
                    let _ = writeln!(o, "rank <= {m} subgroups discrete on samples: {}", yn(*ok));
                }
                let n = &r.numeric;
                if let (Some(c), Some(norm)) = (&n.small_combination, n.norm) {
                    let _ = writeln!(o, "numeric: smallest combination [{}] with norm {norm:.3e} (bound {})", list(c), n.search_bound);
                }
            }
            Report::Approx(r) => {
                let _ = writeln!(o, "target: {} on [{}, {}]", r.target, r.interval.0, r.interval.1);
                let _ = writeln!(o, "approximant: {}", r.poly);
                let _ = writeln!(o, "certified error: {} < {}", r.certified_error, r.eps);
            }
        }
        o
    }
}
