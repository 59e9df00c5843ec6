//! Crystal graphs of classical highest weight crystals.
//!
//! [`generate`] runs a breadth-first search from the highest weight wall,
//! applying the lowering operators `f_1, ..., f_n` and checking every new
//! wall against the membership conditions.  [`verify`] compares the result
//! with the Weyl dimension and Freudenthal multiplicity oracles and checks the
//! crystal axioms node by node.  Graphs can be written as JSON or DOT and read
//! back from JSON.
//!
//! Node order is the sorted order of the walls, so every output is the same
//! regardless of how many worker threads took part.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classical::{ClassicalError, Condition, ContextJson, LambdaContext};
use crate::crystal;
use crate::liealg::{freudenthal_multiplicities, weyl_dimension, LieError, RootDatum, Weight};
use crate::wall::{Wall, WallError, WallJson};

pub mod fixtures;

/// Default refusal threshold for the oracle dimension.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// Environment variable overriding the worker thread count.
pub const THREADS_ENV: &str = "YW_THREADS";

/// Errors raised while generating or reading a graph.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Wall(#[from] WallError),
    #[error("dimension {dimension} exceeds the cap of {cap}")]
    DimensionCap { dimension: BigUint, cap: u64 },
    #[error("f_{color} of {from} produced {to}, which fails {condition:?}")]
    Closure {
        from: String,
        color: usize,
        to: String,
        condition: Option<Condition>,
    },
    #[error("could not start worker threads: {0}")]
    Threads(String),
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

/// Knobs for [`generate_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerateOptions {
    /// Largest oracle dimension that will be generated.
    pub cap: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions {
            cap: DEFAULT_CAP,
            threads: None,
        }
    }
}

/// A coloured arrow `source --color--> target`, meaning
/// `f_color(source) = target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub color: usize,
    pub target: usize,
}

/// The crystal graph of one classical context.
#[derive(Debug, Clone)]
pub struct CrystalGraph {
    pub context: LambdaContext,
    /// Walls, sorted and distinct.
    pub nodes: Vec<Wall>,
    /// Arrows, sorted.
    pub edges: Vec<Edge>,
}

impl PartialEq for CrystalGraph {
    fn eq(&self, other: &Self) -> bool {
        self.context.to_json_value() == other.context.to_json_value()
            && self.nodes == other.nodes
            && self.edges == other.edges
    }
}

impl Eq for CrystalGraph {}

impl CrystalGraph {
    /// Position of `wall` among the nodes.
    pub fn index_of(&self, wall: &Wall) -> Option<usize> {
        self.nodes.binary_search(wall).ok()
    }

    /// Index of the highest weight wall, if present.
    pub fn source(&self) -> Option<usize> {
        self.index_of(self.context.highest())
    }

    /// Index of the lowest weight wall, if present.
    pub fn sink(&self) -> Option<usize> {
        self.index_of(self.context.lowest())
    }

    /// The graph with one node and its arrows removed.
    pub fn without_node(&self, index: usize) -> CrystalGraph {
        let shift = |v: usize| if v > index { v - 1 } else { v };
        let mut nodes = self.nodes.clone();
        nodes.remove(index);
        let edges = self
            .edges
            .iter()
            .filter(|e| e.source != index && e.target != index)
            .map(|e| Edge {
                source: shift(e.source),
                color: e.color,
                target: shift(e.target),
            })
            .collect();
        CrystalGraph {
            context: self.context.clone(),
            nodes,
            edges,
        }
    }
}

/// Thread count from [`THREADS_ENV`], if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&t: &usize| t > 0)
}

/// [`generate_with`] under the default options.
pub fn generate(ctx: &LambdaContext) -> Result<CrystalGraph, GraphError> {
    generate_with(ctx, GenerateOptions::default())
}

/// Breadth-first generation from the highest weight wall.
///
/// Refuses contexts whose oracle dimension exceeds `options.cap` before doing
/// any work, and aborts if a produced wall fails the membership conditions.
pub fn generate_with(
    ctx: &LambdaContext,
    options: GenerateOptions,
) -> Result<CrystalGraph, GraphError> {
    let datum = RootDatum::new(ctx.family, ctx.rank)?;
    let dimension = weyl_dimension(&datum, &ctx.lambda)?;
    if dimension > BigUint::from(options.cap) {
        return Err(GraphError::DimensionCap {
            dimension,
            cap: options.cap,
        });
    }
    match options.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| GraphError::Threads(e.to_string()))?
            .install(|| search(ctx)),
        None => search(ctx),
    }
}

fn search(ctx: &LambdaContext) -> Result<CrystalGraph, GraphError> {
    let highest = ctx.highest().clone();
    let mut seen: HashSet<Wall> = HashSet::from([highest.clone()]);
    let mut arrows: Vec<(Wall, usize, Wall)> = Vec::new();
    let mut frontier = vec![highest];
    while !frontier.is_empty() {
        let steps: Vec<(Wall, usize, Wall)> = frontier
            .par_iter()
            .flat_map_iter(|w| {
                ctx.colors()
                    .filter_map(move |i| crystal::f(w, i).map(|v| (w.clone(), i, v)))
            })
            .collect();
        let mut fresh: Vec<(&Wall, usize, &Wall)> = Vec::new();
        for (from, i, to) in &steps {
            if !seen.contains(to) {
                seen.insert(to.clone());
                fresh.push((from, *i, to));
            }
        }
        // Every new wall must satisfy the membership conditions.
        let verdicts = fresh
            .par_iter()
            .map(|(_, _, to)| ctx.member(to))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(((from, i, to), verdict)) =
            fresh.iter().zip(&verdicts).find(|(_, v)| !v.accepted)
        {
            return Err(GraphError::Closure {
                from: from.to_json(),
                color: *i,
                to: to.to_json(),
                condition: verdict.failed,
            });
        }
        let mut next: Vec<Wall> = fresh.iter().map(|(_, _, to)| (*to).clone()).collect();
        next.sort();
        frontier = next;
        arrows.extend(steps);
    }
    let mut nodes: Vec<Wall> = seen.into_iter().collect();
    nodes.par_sort();
    let index = |w: &Wall| nodes.binary_search(w).expect("every arrow end is a node");
    let mut edges: Vec<Edge> = arrows
        .iter()
        .map(|(from, color, to)| Edge {
            source: index(from),
            color: *color,
            target: index(to),
        })
        .collect();
    edges.sort();
    Ok(CrystalGraph {
        context: ctx.clone(),
        nodes,
        edges,
    })
}

/// A weight whose multiplicity differs from the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMismatch {
    pub weight: Weight,
    pub expected: u64,
    pub found: u64,
}

/// A node where an operator leaves the graph or disagrees with an arrow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureViolation {
    pub node: usize,
    pub color: usize,
    pub detail: String,
}

/// A node whose `i`-string in the graph has the wrong length on either side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringViolation {
    pub node: usize,
    pub color: usize,
    /// `(epsilon, phi)` from the signature rule.
    pub expected: (usize, usize),
    /// Arrows above and below the node in the graph.
    pub found: (usize, usize),
}

/// Outcome of [`verify`].  Failures are recorded, never raised.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub node_count: usize,
    /// Weyl dimension, in decimal.
    pub expected_dimension: String,
    pub weight_mismatches: Vec<WeightMismatch>,
    pub connected: bool,
    /// Nodes killed by every `e_i`.
    pub sources: Vec<usize>,
    /// Nodes killed by every `f_i`.
    pub sinks: Vec<usize>,
    /// Whether the sole source is `H` and the sole sink is `L`.
    pub extremal_walls_match: bool,
    /// Nodes rejected by the membership conditions.
    pub rejected_nodes: Vec<usize>,
    pub closure_violations: Vec<ClosureViolation>,
    pub string_violations: Vec<StringViolation>,
    /// Failures of `phi_i - epsilon_i = <h_i, wt>`, weight shifts along
    /// arrows, and the one-arrow-per-colour rule.
    pub axiom_violations: Vec<String>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn dimension_matches(&self) -> bool {
        self.expected_dimension == self.node_count.to_string()
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
        writeln!(
            f,
            "nodes: {} (Weyl dimension {}) {}",
            self.node_count,
            self.expected_dimension,
            mark(self.dimension_matches())
        )?;
        writeln!(
            f,
            "weight multiplicities: {} mismatches {}",
            self.weight_mismatches.len(),
            mark(self.weight_mismatches.is_empty())
        )?;
        writeln!(f, "connected: {}", mark(self.connected))?;
        writeln!(
            f,
            "sources {:?}, sinks {:?} {}",
            self.sources,
            self.sinks,
            mark(self.extremal_walls_match)
        )?;
        writeln!(
            f,
            "membership: {} rejected {}",
            self.rejected_nodes.len(),
            mark(self.rejected_nodes.is_empty())
        )?;
        writeln!(
            f,
            "closure: {} violations {}",
            self.closure_violations.len(),
            mark(self.closure_violations.is_empty())
        )?;
        writeln!(
            f,
            "string lengths: {} violations {}",
            self.string_violations.len(),
            mark(self.string_violations.is_empty())
        )?;
        writeln!(
            f,
            "crystal axioms: {} violations {}",
            self.axiom_violations.len(),
            mark(self.axiom_violations.is_empty())
        )?;
        write!(f, "result: {}", if self.passed { "pass" } else { "fail" })
    }
}

/// Runs every check against the oracles and the operators.
pub fn verify(g: &CrystalGraph) -> Result<VerificationReport, GraphError> {
    let ctx = &g.context;
    let datum = RootDatum::new(ctx.family, ctx.rank)?;
    let expected_dimension = weyl_dimension(&datum, &ctx.lambda)?;
    let oracle = freudenthal_multiplicities(&datum, &ctx.lambda)?;
    let n = g.nodes.len();

    let weights: Vec<Weight> = g.nodes.par_iter().map(Wall::classical_weight).collect();
    let mut found: BTreeMap<Weight, u64> = BTreeMap::new();
    for w in &weights {
        *found.entry(w.clone()).or_insert(0) += 1;
    }
    let mut weight_mismatches = Vec::new();
    for weight in oracle.keys().chain(found.keys()).collect::<std::collections::BTreeSet<_>>() {
        let expected = oracle.get(weight).copied().unwrap_or(0);
        let count = found.get(weight).copied().unwrap_or(0);
        if expected != count {
            weight_mismatches.push(WeightMismatch {
                weight: weight.clone(),
                expected,
                found: count,
            });
        }
    }

    // Arrow tables, with the one-arrow-per-colour rule checked on the way.
    let mut axiom_violations = Vec::new();
    let mut down: HashMap<(usize, usize), usize> = HashMap::new();
    let mut up: HashMap<(usize, usize), usize> = HashMap::new();
    for e in &g.edges {
        if e.source >= n || e.target >= n || !ctx.colors().contains(&e.color) {
            axiom_violations.push(format!("arrow {e:?} is out of range"));
            continue;
        }
        if down.insert((e.source, e.color), e.target).is_some() {
            axiom_violations.push(format!("node {} has two {}-arrows out", e.source, e.color));
        }
        if up.insert((e.target, e.color), e.source).is_some() {
            axiom_violations.push(format!("node {} has two {}-arrows in", e.target, e.color));
        }
    }

    // Directed reachability from the source.
    let connected = match g.source() {
        Some(s) => {
            let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
            for (&(u, _), &v) in &down {
                out[u].push(v);
            }
            let mut reached = vec![false; n];
            reached[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &out[u] {
                    if !reached[v] {
                        reached[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            reached.iter().all(|&r| r)
        }
        None => false,
    };

    let affine = ctx.walls.affine_datum();
    let roots: Vec<Weight> = (0..=ctx.rank).map(|i| affine.classical_root(i)).collect();

    struct NodeCheck {
        source: bool,
        sink: bool,
        accepted: bool,
        closure: Vec<ClosureViolation>,
        strings: Vec<StringViolation>,
        axioms: Vec<String>,
    }
    let checks: Vec<NodeCheck> = (0..n)
        .into_par_iter()
        .map(|v| {
            let wall = &g.nodes[v];
            let mut check = NodeCheck {
                source: true,
                sink: true,
                accepted: ctx.member(wall).map(|r| r.accepted).unwrap_or(false),
                closure: Vec::new(),
                strings: Vec::new(),
                axioms: Vec::new(),
            };
            for i in ctx.colors() {
                let violation = |detail: String| ClosureViolation {
                    node: v,
                    color: i,
                    detail,
                };
                let lowered = crystal::f(wall, i);
                let raised = crystal::e(wall, i);
                check.sink &= lowered.is_none();
                check.source &= raised.is_none();
                match (&lowered, down.get(&(v, i))) {
                    (None, None) => {}
                    (Some(w), Some(&t)) if g.nodes[t] == *w => {
                        if crystal::e(w, i).as_ref() != Some(wall) {
                            check.axioms.push(format!("e_{i} does not undo f_{i} at node {v}"));
                        }
                        let mut shifted = weights[v].clone();
                        shifted.add_scaled(&roots[i], -1);
                        if weights[t] != shifted {
                            check.axioms.push(format!("f_{i} at node {v} shifts the weight wrongly"));
                        }
                    }
                    (Some(w), _) => check.closure.push(violation(match g.index_of(w) {
                        Some(t) => format!("f_{i} gives node {t} but the arrow disagrees"),
                        None => format!("f_{i} leaves the graph: {}", w.to_json()),
                    })),
                    (None, Some(t)) => {
                        check.closure.push(violation(format!("arrow to node {t} but f_{i} is zero")))
                    }
                }
                match (&raised, up.get(&(v, i))) {
                    (None, None) => {}
                    (Some(w), Some(&s)) if g.nodes[s] == *w => {}
                    (Some(w), _) => check.closure.push(violation(match g.index_of(w) {
                        Some(s) => format!("e_{i} gives node {s} but the arrow disagrees"),
                        None => format!("e_{i} leaves the graph: {}", w.to_json()),
                    })),
                    (None, Some(s)) => {
                        check.closure.push(violation(format!("arrow from node {s} but e_{i} is zero")))
                    }
                }
                let eps = crystal::epsilon(wall, i);
                let phi = crystal::phi(wall, i);
                if phi as i64 - eps as i64 != weights[v].0[i - 1] {
                    check.axioms.push(format!(
                        "node {v}: phi_{i} - epsilon_{i} = {} but <h_{i}, wt> = {}",
                        phi as i64 - eps as i64,
                        weights[v].0[i - 1]
                    ));
                }
                let above = walk(&up, v, i, n);
                let below = walk(&down, v, i, n);
                if (above, below) != (eps, phi) {
                    check.strings.push(StringViolation {
                        node: v,
                        color: i,
                        expected: (eps, phi),
                        found: (above, below),
                    });
                }
            }
            check
        })
        .collect();

    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    let mut rejected_nodes = Vec::new();
    let mut closure_violations = Vec::new();
    let mut string_violations = Vec::new();
    for (v, check) in checks.into_iter().enumerate() {
        if check.source {
            sources.push(v);
        }
        if check.sink {
            sinks.push(v);
        }
        if !check.accepted {
            rejected_nodes.push(v);
        }
        closure_violations.extend(check.closure);
        string_violations.extend(check.strings);
        axiom_violations.extend(check.axioms);
    }
    let extremal_walls_match = sources.len() == 1
        && sinks.len() == 1
        && g.source() == Some(sources[0])
        && g.sink() == Some(sinks[0]);

    let mut report = VerificationReport {
        node_count: n,
        expected_dimension: expected_dimension.to_string(),
        weight_mismatches,
        connected,
        sources,
        sinks,
        extremal_walls_match,
        rejected_nodes,
        closure_violations,
        string_violations,
        axiom_violations,
        passed: false,
    };
    report.passed = report.dimension_matches()
        && report.weight_mismatches.is_empty()
        && report.connected
        && report.extremal_walls_match
        && report.rejected_nodes.is_empty()
        && report.closure_violations.is_empty()
        && report.string_violations.is_empty()
        && report.axiom_violations.is_empty();
    Ok(report)
}

/// Number of arrows followed from `v` in colour `i` through `table`.
fn walk(table: &HashMap<(usize, usize), usize>, v: usize, i: usize, bound: usize) -> usize {
    let mut steps = 0;
    let mut at = v;
    while let Some(&next) = table.get(&(at, i)) {
        steps += 1;
        at = next;
        if steps > bound {
            break;
        }
    }
    steps
}

/// JSON form of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub context: ContextJson,
    pub nodes: Vec<WallJson>,
    /// `[source, color, target]` triples.
    pub edges: Vec<[usize; 3]>,
}

/// Compact JSON, one line.
pub fn export_json(g: &CrystalGraph) -> String {
    let json = GraphJson {
        context: g.context.to_json_value(),
        nodes: g.nodes.iter().map(Wall::to_json_value).collect(),
        edges: g
            .edges
            .iter()
            .map(|e| [e.source, e.color, e.target])
            .collect(),
    };
    serde_json::to_string(&json).expect("graph encoding is serializable")
}

/// Reads a graph written by [`export_json`].  Nodes must be sorted and
/// distinct, and arrows must name existing nodes and classical colours.
pub fn import_json(text: &str) -> Result<CrystalGraph, GraphError> {
    let json: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    let context = LambdaContext::from_json_value(&json.context)?;
    let nodes = json
        .nodes
        .iter()
        .map(Wall::from_json_value)
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(w) = nodes.iter().find(|w| w.context() != context.walls) {
        return Err(GraphError::Json(format!(
            "node {} belongs to another wall space",
            w.to_json()
        )));
    }
    if nodes.windows(2).any(|p| p[0] >= p[1]) {
        return Err(GraphError::Json("nodes are not sorted and distinct".into()));
    }
    let mut edges = Vec::with_capacity(json.edges.len());
    for [source, color, target] in json.edges {
        if source >= nodes.len() || target >= nodes.len() || !context.colors().contains(&color) {
            return Err(GraphError::Json(format!(
                "arrow [{source}, {color}, {target}] is out of range"
            )));
        }
        edges.push(Edge {
            source,
            color,
            target,
        });
    }
    Ok(CrystalGraph {
        context,
        nodes,
        edges,
    })
}

/// Graphviz digraph: one line per node (labelled by its item counts and
/// weight) and one per arrow (labelled by its colour).
pub fn export_dot(g: &CrystalGraph) -> String {
    let mut out = String::new();
    writeln!(out, "digraph crystal {{").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for (v, wall) in g.nodes.iter().enumerate() {
        let json = wall.to_json_value();
        let fills: Vec<String> = json.fills.iter().map(u32::to_string).collect();
        let mut label = format!("[{}]", fills.join(","));
        if !json.front_only.is_empty() {
            let front: Vec<String> = json.front_only.iter().map(usize::to_string).collect();
            write!(label, " f[{}]", front.join(",")).unwrap();
        }
        writeln!(
            out,
            "  n{v} [label=\"{label}\\n{}\"];",
            wall.classical_weight()
        )
        .unwrap();
    }
    for e in &g.edges {
        writeln!(out, "  n{} -> n{} [label={}];", e.source, e.target, e.color).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The oracle dimension as a machine integer, if it fits.
pub fn oracle_dimension(ctx: &LambdaContext) -> Result<Option<u64>, GraphError> {
    let datum = RootDatum::new(ctx.family, ctx.rank)?;
    Ok(weyl_dimension(&datum, &ctx.lambda)?.to_u64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::Family;

    fn ctx(family: Family, rank: usize, lambda: &[i64]) -> LambdaContext {
        LambdaContext::from_coefficients(family, rank, lambda).unwrap()
    }

    #[test]
    fn fundamental_a2_has_three_nodes() {
        let g = generate(&ctx(Family::A, 2, &[1, 0])).unwrap();
        assert_eq!(g.nodes.len(), 3);
        assert_eq!(g.edges.len(), 2);
        assert!(verify(&g).unwrap().passed);
    }

    #[test]
    fn zero_weight_is_a_single_node() {
        for (family, rank) in [(Family::A, 2), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let g = generate(&ctx(family, rank, &vec![0; rank])).unwrap();
            assert_eq!(g.nodes.len(), 1);
            assert!(g.edges.is_empty());
            assert!(verify(&g).unwrap().passed);
        }
    }

    #[test]
    fn cap_is_checked_before_generation() {
        let err = generate(&ctx(Family::B, 3, &[9, 9, 9])).unwrap_err();
        assert!(matches!(err, GraphError::DimensionCap { .. }));
    }

    #[test]
    fn deleting_a_node_breaks_dimension_and_connectivity() {
        let g = generate(&ctx(Family::B, 3, &[1, 0, 0])).unwrap();
        let middle = (0..g.nodes.len())
            .find(|&v| Some(v) != g.source() && Some(v) != g.sink())
            .unwrap();
        let report = verify(&g.without_node(middle)).unwrap();
        assert!(!report.passed);
        assert!(!report.dimension_matches());
        assert!(!report.connected);
    }

    #[test]
    fn json_round_trip() {
        let g = generate(&ctx(Family::C, 3, &[0, 1, 0])).unwrap();
        let text = export_json(&g);
        let back = import_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(export_json(&back), text);
    }

    #[test]
    fn dot_has_one_line_per_node_and_arrow() {
        let g = generate(&ctx(Family::A, 2, &[1, 1])).unwrap();
        let dot = export_dot(&g);
        assert_eq!(dot.lines().count(), g.nodes.len() + g.edges.len() + 3);
    }

    #[test]
    fn import_rejects_bad_arrows() {
        let g = generate(&ctx(Family::A, 2, &[1, 0])).unwrap();
        let text = export_json(&g).replace("\"edges\":[[", "\"edges\":[[99,");
        assert!(import_json(&text).is_err());
        assert!(import_json("{").is_err());
    }
}
