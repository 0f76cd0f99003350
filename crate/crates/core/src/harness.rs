//! Verification campaigns over tree corpora and seeded random graphs.
//!
//! Every campaign is sharded (by tree order, or by fixed-size blocks of
//! instance indices), the shards run in parallel on rayon, and the results
//! are folded in shard order by the calling thread. Counts are sums and the
//! violation list is sorted, so reports do not depend on the thread count.
//!
//! Random instances are drawn from ChaCha8 seeded with `seed` and switched
//! to stream `index`, so instance `index` is the same graph whatever else is
//! generated. Erdős–Rényi densities cycle through [`ER_DENSITIES`]; random
//! trees are decoded from uniform Prüfer sequences.
//!
//! With `COSPEC_CACHE_DIR` set, each finished shard is appended to
//! `<dir>/<campaign>.jsonl` together with the campaign parameters. A rerun
//! with identical parameters reuses the recorded shards, and the final report
//! is written to `<dir>/<campaign>.json`.

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::alpha::{
    alpha, alpha_branch_properties, alpha_criterion, contraction_report, lambda,
    lambda_nonpositive_samples,
};
use crate::audit::key_lemma_audit;
use crate::charpoly::{charpoly, charpoly_within};
use crate::cospectral::{
    classes_from_decisions, derivative_identity_check, wronskian_identity_check, GraphPolys,
    PairDecision,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::graph6::to_graph6;
use crate::spectral::{
    abs_diff, eigendecompose_escalating, float_to_string, residue_projectors,
    strongly_cospectral_numeric, strongly_cospectral_with, NumericDecision, DEFAULT_PRECISION,
};
use crate::trees::{enumerate_trees, DEFAULT_TREE_LIMIT};

pub const CACHE_DIR_ENV: &str = "COSPEC_CACHE_DIR";
pub const ER_DENSITIES: [f64; 4] = [0.2, 0.35, 0.5, 0.7];
const BLOCK: usize = 50;
const FUZZ_SAMPLES: usize = 20;

/// One failed check, with enough data to rerun the instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub graph6: String,
    pub detail: Value,
}

/// Counters for one shard.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ShardResult {
    pub counts: BTreeMap<String, u64>,
    pub branch_counts: BTreeMap<String, u64>,
    pub violations: Vec<Violation>,
}

impl ShardResult {
    fn bump(&mut self, key: &str, by: u64) {
        *self.counts.entry(key.to_string()).or_insert(0) += by;
    }

    fn violation(&mut self, check: &str, g: &Graph, detail: Value) {
        self.violations.push(Violation {
            check: check.into(),
            graph6: to_graph6(g),
            detail,
        });
    }

    fn absorb(&mut self, other: ShardResult) {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.branch_counts {
            *self.branch_counts.entry(k).or_insert(0) += v;
        }
        self.violations.extend(other.violations);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignReport {
    pub campaign: String,
    pub parameters: Value,
    /// Counters keyed by graph order (trees) or by instance block.
    pub shards: BTreeMap<String, BTreeMap<String, u64>>,
    pub totals: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub branch_counts: BTreeMap<String, u64>,
    pub violations: Vec<Violation>,
    pub success: bool,
    /// Filled only on request, so that reports stay byte-identical.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
}

impl CampaignReport {
    fn assemble(campaign: &str, parameters: Value, shards: Vec<(String, ShardResult)>) -> Self {
        let mut all = ShardResult::default();
        let mut per = BTreeMap::new();
        for (key, s) in shards {
            per.insert(key, s.counts.clone());
            all.absorb(s);
        }
        all.violations.sort_by(|a, b| {
            (&a.check, &a.graph6, a.detail.to_string()).cmp(&(&b.check, &b.graph6, b.detail.to_string()))
        });
        CampaignReport {
            campaign: campaign.into(),
            parameters,
            shards: per,
            totals: all.counts,
            branch_counts: all.branch_counts,
            success: all.violations.is_empty(),
            violations: all.violations,
            wall_time_seconds: None,
        }
    }

    pub fn total(&self, key: &str) -> u64 {
        self.totals.get(key).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Append-only shard log under [`CACHE_DIR_ENV`].
struct Journal {
    dir: Option<PathBuf>,
    campaign: String,
    parameters: Value,
    done: HashMap<String, ShardResult>,
}

#[derive(Serialize, Deserialize)]
struct JournalLine {
    parameters: Value,
    shard: String,
    result: ShardResult,
}

impl Journal {
    fn open(campaign: &str, parameters: &Value) -> Result<Self> {
        let dir = std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from);
        let mut done = HashMap::new();
        if let Some(d) = &dir {
            fs::create_dir_all(d).map_err(|e| Error::Config(format!("cache directory: {e}")))?;
            if let Ok(f) = fs::File::open(d.join(format!("{campaign}.jsonl"))) {
                // Unparseable lines are the tail of an interrupted write.
                for line in BufReader::new(f).lines().map_while(|l| l.ok()) {
                    if let Ok(rec) = serde_json::from_str::<JournalLine>(&line) {
                        if rec.parameters == *parameters {
                            done.insert(rec.shard, rec.result);
                        }
                    }
                }
            }
        }
        Ok(Journal {
            dir,
            campaign: campaign.into(),
            parameters: parameters.clone(),
            done,
        })
    }

    fn record(&self, shard: &str, result: &ShardResult) -> Result<()> {
        let Some(d) = &self.dir else { return Ok(()) };
        let line = serde_json::to_string(&JournalLine {
            parameters: self.parameters.clone(),
            shard: shard.into(),
            result: result.clone(),
        })
        .expect("journal line serializes");
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(d.join(format!("{}.jsonl", self.campaign)))
            .map_err(|e| Error::Config(format!("journal: {e}")))?;
        writeln!(f, "{line}").map_err(|e| Error::Config(format!("journal: {e}")))
    }

    fn finalize(&self, report: &CampaignReport) -> Result<()> {
        let Some(d) = &self.dir else { return Ok(()) };
        fs::write(d.join(format!("{}.json", self.campaign)), report.to_json())
            .map_err(|e| Error::Config(format!("report file: {e}")))
    }
}

/// Run `work` over named shards in parallel, reusing journalled shards.
fn run_campaign<S, F>(
    campaign: &str,
    parameters: Value,
    shards: Vec<(String, S)>,
    work: F,
) -> Result<CampaignReport>
where
    S: Send + Sync,
    F: Fn(&S) -> ShardResult + Send + Sync,
{
    let journal = Journal::open(campaign, &parameters)?;
    let mut results = Vec::with_capacity(shards.len());
    for (key, input) in &shards {
        let r = match journal.done.get(key) {
            Some(r) => r.clone(),
            None => {
                let r = work(input);
                journal.record(key, &r)?;
                r
            }
        };
        results.push((key.clone(), r));
    }
    let report = CampaignReport::assemble(campaign, parameters, results);
    journal.finalize(&report)?;
    Ok(report)
}

/// Parallel map over the items of one shard, merged in item order.
fn per_item<T: Sync>(items: &[T], f: impl Fn(&T) -> ShardResult + Send + Sync) -> ShardResult {
    let parts: Vec<ShardResult> = items.par_iter().map(f).collect();
    let mut out = ShardResult::default();
    for p in parts {
        out.absorb(p);
    }
    out
}

fn trees_by_order(max_n: usize) -> Result<Vec<(String, Vec<Graph>)>> {
    if max_n > DEFAULT_TREE_LIMIT {
        return Err(Error::Config(format!(
            "tree order bound {max_n} outside 1..={DEFAULT_TREE_LIMIT}"
        )));
    }
    let mut by: BTreeMap<usize, Vec<Graph>> = BTreeMap::new();
    for t in enumerate_trees(max_n)? {
        by.entry(t.order()).or_default().push(t);
    }
    Ok(by
        .into_iter()
        .map(|(n, ts)| (format!("n={n:02}"), ts))
        .collect())
}

/// Random tree on `n` vertices from a uniform Prüfer sequence.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Graph {
    if n <= 2 {
        return Graph::path(n);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, &edges).expect("Prüfer decoding yields a tree")
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_er(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("vertex count within limit")
}

fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Instance `index` of the seeded Erdős–Rényi family, `1 ≤ n ≤ max_n`.
pub fn random_graph(seed: u64, index: usize, max_n: usize) -> Graph {
    let mut rng = instance_rng(seed, index);
    let n = rng.gen_range(1..=max_n);
    random_er(&mut rng, n, ER_DENSITIES[index % ER_DENSITIES.len()])
}

/// Instance `index` of the fuzz family: four Erdős–Rényi densities and
/// random trees, in rotation.
pub fn random_instance(seed: u64, index: usize, max_n: usize) -> Graph {
    let mut rng = instance_rng(seed, index);
    let n = rng.gen_range(1..=max_n);
    match index % (ER_DENSITIES.len() + 1) {
        k if k < ER_DENSITIES.len() => random_er(&mut rng, n, ER_DENSITIES[k]),
        _ => random_tree(&mut rng, n),
    }
}

fn blocks(count: usize) -> Vec<(String, std::ops::Range<usize>)> {
    (0..count)
        .step_by(BLOCK)
        .map(|s| (format!("block={:06}", s / BLOCK), s..(s + BLOCK).min(count)))
        .collect()
}

/// BFS distances from every vertex of a connected graph.
fn distances(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    (0..n)
        .map(|s| {
            let mut d = vec![usize::MAX; n];
            d[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in g.neighbours(u).iter() {
                    if d[w] == usize::MAX {
                        d[w] = d[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            d
        })
        .collect()
}

/// In a tree, three vertices share a path iff one lies between the others.
fn on_common_path(d: &[Vec<usize>], a: usize, b: usize, c: usize) -> bool {
    d[a][b] + d[b][c] == d[a][c] || d[b][a] + d[a][c] == d[b][c] || d[a][c] + d[c][b] == d[a][b]
}

fn pair_dump(g: &Graph, polys: &GraphPolys, pairs: &[(usize, usize)]) -> Value {
    let vs: Vec<usize> = {
        let mut v: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    json!({
        "vertices": vs,
        "charpoly": polys.phi().to_string(),
        "deleted": vs.iter().map(|&v| (v.to_string(), polys.deleted(v).to_string())).collect::<BTreeMap<_, _>>(),
        "edges": g.edges(),
    })
}

fn pair_matrix(n: usize, decisions: &[PairDecision]) -> (Vec<Vec<bool>>, Vec<Vec<bool>>) {
    let mut co = vec![vec![false; n]; n];
    let mut strong = vec![vec![false; n]; n];
    for d in decisions {
        let (i, j) = d.vertices;
        co[i][j] = d.cospectral;
        co[j][i] = d.cospectral;
        strong[i][j] = d.strongly_cospectral;
        strong[j][i] = d.strongly_cospectral;
    }
    (co, strong)
}

fn verify_tree(t: &Graph) -> ShardResult {
    let mut r = ShardResult::default();
    let n = t.order();
    let polys = GraphPolys::new(t);
    let decisions = polys.all_pairs();
    let (co, strong) = pair_matrix(n, &decisions);
    r.bump("trees", 1);
    r.bump("pairs", decisions.len() as u64);
    r.bump("cospectral_pairs", decisions.iter().filter(|d| d.cospectral).count() as u64);
    r.bump(
        "strongly_cospectral_pairs",
        decisions.iter().filter(|d| d.strongly_cospectral).count() as u64,
    );
    if let Err(e) = classes_from_decisions(t, &decisions) {
        r.violation("class_transitivity", t, json!(e.to_string()));
    }
    let d = distances(t);
    for a in 0..n {
        for b in a + 1..n {
            if !co[a][b] {
                continue;
            }
            for c in b + 1..n {
                if !(co[a][c] && co[b][c]) {
                    continue;
                }
                r.bump("cospectral_triples", 1);
                if on_common_path(&d, a, b, c) {
                    r.violation(
                        "cospectral_triple_on_path",
                        t,
                        pair_dump(t, &polys, &[(a, b), (a, c), (b, c)]),
                    );
                }
                if strong[a][b] && strong[a][c] && strong[b][c] {
                    r.bump("strongly_cospectral_triples", 1);
                    r.violation(
                        "strongly_cospectral_triple",
                        t,
                        pair_dump(t, &polys, &[(a, b), (a, c), (b, c)]),
                    );
                }
            }
        }
    }
    r
}

/// Every tree up to `max_n`: all pair decisions, no pairwise strongly
/// cospectral triple, and no pairwise cospectral triple on a common path.
pub fn verify_trees(max_n: usize) -> Result<CampaignReport> {
    let shards = trees_by_order(max_n)?;
    run_campaign("verify-trees", json!({ "max_n": max_n }), shards, |ts| {
        per_item(ts, verify_tree)
    })
}

fn audit_tree(t: &Graph) -> ShardResult {
    let mut r = ShardResult::default();
    let n = t.order();
    let polys = GraphPolys::new(t);
    let (co, _) = pair_matrix(n, &polys.all_pairs());
    r.bump("trees", 1);
    for v in 0..n {
        let rest = t.vertices().minus(VertexSet::singleton(v));
        let comp: Vec<usize> = {
            let mut label = vec![usize::MAX; n];
            for (c, set) in t.components_within(rest).into_iter().enumerate() {
                for x in set.iter() {
                    label[x] = c;
                }
            }
            label
        };
        for a in 0..n {
            for b in a + 1..n {
                if a == v || b == v || !co[a][b] || comp[a] == comp[b] {
                    continue;
                }
                for c in b + 1..n {
                    if c == v || !co[a][c] || !co[b][c] || comp[c] == comp[a] || comp[c] == comp[b] {
                        continue;
                    }
                    r.bump("separated_triples", 1);
                    match key_lemma_audit(t, v, a, b, c) {
                        Ok(rep) => {
                            r.bump("audited_points", rep.points.len() as u64);
                            if !rep.pairwise_strongly_cospectral() {
                                r.bump("confirmed", 1);
                            }
                            for (branch, k) in rep.branch_counts() {
                                let key = serde_json::to_value(branch)
                                    .expect("branch serializes")
                                    .as_str()
                                    .expect("unit variant")
                                    .to_string();
                                *r.branch_counts.entry(key).or_insert(0) += k as u64;
                            }
                            let bad = rep.violations();
                            if !bad.is_empty() {
                                r.violation(
                                    "key_lemma_audit",
                                    t,
                                    json!({ "v": v, "triple": [a, b, c], "failures": bad }),
                                );
                            }
                        }
                        Err(e) => r.violation(
                            "key_lemma_audit_error",
                            t,
                            json!({ "v": v, "triple": [a, b, c], "error": e.to_string() }),
                        ),
                    }
                }
            }
        }
    }
    r
}

/// Every `(v; i, j, k)` in the tree corpus with `v` separating a pairwise
/// cospectral triple, audited point by point.
pub fn audit_cut_triples(max_n: usize) -> Result<CampaignReport> {
    let shards = trees_by_order(max_n)?;
    run_campaign("audit-triples", json!({ "max_n": max_n }), shards, |ts| {
        per_item(ts, audit_tree)
    })
}

/// Exact identity checks for one pair; failures become violations.
fn pair_identities(g: &Graph, i: usize, j: usize, samples: usize, r: &mut ShardResult) {
    let tag = json!({ "pair": [i, j] });
    match wronskian_identity_check(g, i, j) {
        Ok(true) => {}
        Ok(false) => r.violation("wronskian", g, tag.clone()),
        Err(e) => r.violation("wronskian", g, json!({ "pair": [i, j], "error": e.to_string() })),
    }
    match contraction_report(g, i, j) {
        Ok(c) if c.holds() => {}
        Ok(c) => r.violation("contraction", g, json!({ "pair": [i, j], "report": c })),
        Err(e) => r.violation("contraction", g, json!({ "pair": [i, j], "error": e.to_string() })),
    }
    match lambda(g, i, j) {
        Ok(l) => {
            if l.square_roots().is_none() {
                r.violation("lambda_square", g, tag.clone());
            }
            if !lambda_nonpositive_samples(&l, samples) {
                r.violation("lambda_nonpositive", g, tag);
            }
        }
        Err(e) => r.violation("lambda", g, json!({ "pair": [i, j], "error": e.to_string() })),
    }
    r.bump("pairs_checked", 1);
}

fn vertex_branches(g: &Graph, i: usize, samples: usize, r: &mut ShardResult) {
    let outcome = alpha(g, i).and_then(|a| alpha_branch_properties(&a, samples));
    match outcome {
        Ok(b) if b.holds() => {}
        Ok(b) => r.violation("alpha_branches", g, json!({ "vertex": i, "report": b })),
        Err(e) => r.violation("alpha_branches", g, json!({ "vertex": i, "error": e.to_string() })),
    }
    r.bump("alphas_checked", 1);
}

fn derivative(g: &Graph, r: &mut ShardResult) {
    if !derivative_identity_check(g) {
        r.violation("derivative", g, json!({ "charpoly": charpoly(g).to_string() }));
    }
}

/// Identity checks on random instances: derivative identity on the whole
/// graph, and Wronskian, contraction, λ square structure and α branch
/// properties on one random pair.
pub fn fuzz_identities(count: usize, max_n: usize, seed: u64) -> Result<CampaignReport> {
    if count == 0 {
        return Err(Error::Config("fuzz count must be at least 1".into()));
    }
    if max_n == 0 || max_n > 64 {
        return Err(Error::Config(format!("fuzz order bound {max_n} outside 1..=64")));
    }
    let params = json!({ "count": count, "max_n": max_n, "seed": seed, "samples": FUZZ_SAMPLES });
    run_campaign("fuzz", params, blocks(count), |range| {
        let idx: Vec<usize> = range.clone().collect();
        per_item(&idx, |&k| {
            let g = random_instance(seed, k, max_n);
            let mut r = ShardResult::default();
            r.bump("instances", 1);
            derivative(&g, &mut r);
            let n = g.order();
            let mut rng = instance_rng(seed ^ 0x5eed, k);
            let i = rng.gen_range(0..n);
            vertex_branches(&g, i, FUZZ_SAMPLES, &mut r);
            if n >= 2 {
                let j = (i + rng.gen_range(1..n)) % n;
                pair_identities(&g, i, j, FUZZ_SAMPLES, &mut r);
            }
            for v in &mut r.violations {
                v.detail = json!({ "seed": seed, "index": k, "check": v.detail.clone() });
            }
            r
        })
    })
}

/// The identity suite on every tree up to `max_n`: every pair and every
/// vertex, with `samples` derivative samples per α.
pub fn tree_identity_suite(max_n: usize, samples: usize) -> Result<CampaignReport> {
    let shards = trees_by_order(max_n)?;
    let params = json!({ "max_n": max_n, "samples": samples });
    run_campaign("tree-identities", params, shards, |ts| {
        per_item(ts, |t| {
            let mut r = ShardResult::default();
            r.bump("trees", 1);
            derivative(t, &mut r);
            for i in 0..t.order() {
                vertex_branches(t, i, samples, &mut r);
                for j in i + 1..t.order() {
                    pair_identities(t, i, j, samples, &mut r);
                }
            }
            r
        })
    })
}

/// Exact against numeric decisions on every pair of `g`, plus projector
/// invariants and residue cross-checks.
fn oracle_graph(g: &Graph, precision_bits: usize) -> ShardResult {
    let mut r = ShardResult::default();
    r.bump("graphs", 1);
    let n = g.order();
    let polys = GraphPolys::new(g);
    let decisions = polys.all_pairs();
    let d = match eigendecompose_escalating(g, precision_bits) {
        Ok(d) => d,
        Err(e) => {
            r.bump("indeterminate", decisions.len() as u64);
            r.violation("decomposition", g, json!(e.to_string()));
            return r;
        }
    };
    if !d.check_invariants(g).within_tolerance {
        r.violation("projector_invariants", g, json!(d.check_invariants(g)));
    }
    match residue_projectors(g, d.precision_bits + 32) {
        Ok(res) => {
            for (k, (e, f)) in d.projectors.iter().zip(&res).enumerate() {
                for a in 0..n {
                    for b in a..n {
                        if abs_diff(&e[a][b], &f[a][b]) > d.tolerance {
                            r.violation(
                                "residue_entry",
                                g,
                                json!({ "eigenvalue": k, "entry": [a, b],
                                        "jacobi": float_to_string(&e[a][b]),
                                        "residue": float_to_string(&f[a][b]) }),
                            );
                        }
                    }
                }
            }
        }
        Err(e) => r.violation("residue", g, json!(e.to_string())),
    }
    for e in &decisions {
        let (i, j) = e.vertices;
        r.bump("pairs", 1);
        let numeric = match strongly_cospectral_with(&d, i, j) {
            Some(v) => Ok(v),
            None => strongly_cospectral_numeric(g, i, j, d.precision_bits * 2),
        };
        match numeric {
            Ok(v) if v.strongly_cospectral == e.strongly_cospectral => {
                if v.strongly_cospectral {
                    r.bump("strongly_cospectral_pairs", 1);
                }
            }
            Ok(v) => {
                r.bump("disagreements", 1);
                r.violation(
                    "exact_numeric_disagreement",
                    g,
                    json!({ "pair": [i, j], "exact": e.strongly_cospectral, "numeric": v }),
                );
            }
            Err(err) => {
                r.bump("indeterminate", 1);
                r.violation("numeric_indeterminate", g, json!({ "pair": [i, j], "error": err.to_string() }));
            }
        }
    }
    r
}

/// Exact and numeric strong cospectrality compared on every pair of every
/// tree up to `tree_max_n` and of `random_count` seeded random graphs.
pub fn oracle_agreement(
    tree_max_n: usize,
    random_count: usize,
    random_max_n: usize,
    seed: u64,
    precision_bits: usize,
) -> Result<CampaignReport> {
    let params = json!({
        "tree_max_n": tree_max_n,
        "random_count": random_count,
        "random_max_n": random_max_n,
        "seed": seed,
        "precision_bits": precision_bits,
    });
    let shards = mixed_shards(tree_max_n, random_count, random_max_n, seed)?;
    run_campaign("oracle-agreement", params, shards, |gs| {
        per_item(gs, |g| oracle_graph(g, precision_bits))
    })
}

fn mixed_shards(
    tree_max_n: usize,
    random_count: usize,
    random_max_n: usize,
    seed: u64,
) -> Result<Vec<(String, Vec<Graph>)>> {
    let mut shards = if tree_max_n > 0 {
        trees_by_order(tree_max_n)?
    } else {
        Vec::new()
    };
    if random_count > 0 {
        if random_max_n == 0 || random_max_n > 64 {
            return Err(Error::Config(format!(
                "random order bound {random_max_n} outside 1..=64"
            )));
        }
        for (key, range) in blocks(random_count) {
            shards.push((
                format!("random {key}"),
                range.map(|k| random_graph(seed, k, random_max_n)).collect(),
            ));
        }
    }
    Ok(shards)
}

/// The α-function criterion against the divisibility decision on every pair.
pub fn alpha_criterion_agreement(
    tree_max_n: usize,
    random_count: usize,
    random_max_n: usize,
    seed: u64,
) -> Result<CampaignReport> {
    let params = json!({
        "tree_max_n": tree_max_n,
        "random_count": random_count,
        "random_max_n": random_max_n,
        "seed": seed,
    });
    let shards = mixed_shards(tree_max_n, random_count, random_max_n, seed)?;
    run_campaign("alpha-criterion", params, shards, |gs| {
        per_item(gs, |g| {
            let mut r = ShardResult::default();
            r.bump("graphs", 1);
            for e in GraphPolys::new(g).all_pairs() {
                let (i, j) = e.vertices;
                r.bump("pairs", 1);
                match alpha_criterion(g, i, j) {
                    Ok(b) if b == e.strongly_cospectral => {}
                    other => r.violation(
                        "alpha_criterion",
                        g,
                        json!({ "pair": [i, j], "exact": e.strongly_cospectral, "alpha": format!("{other:?}") }),
                    ),
                }
            }
            r
        })
    })
}

/// A strongly cospectral class with the parity signature of each member
/// against the smallest one.
#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub vertices: Vec<usize>,
    pub signatures: Vec<NumericDecision>,
}

/// Strongly cospectral classes of `g`, largest first, with numeric parity
/// signatures.
pub fn find_sets(g: &Graph) -> Result<Vec<ClassReport>> {
    let polys = GraphPolys::new(g);
    let classes = classes_from_decisions(g, &polys.all_pairs())?;
    let mut out = Vec::with_capacity(classes.len());
    for c in classes {
        let signatures = c[1..]
            .iter()
            .map(|&j| strongly_cospectral_numeric(g, c[0], j, DEFAULT_PRECISION))
            .collect::<Result<Vec<_>>>()?;
        out.push(ClassReport {
            vertices: c,
            signatures,
        });
    }
    out.sort_by(|a, b| b.vertices.len().cmp(&a.vertices.len()).then(a.vertices.cmp(&b.vertices)));
    Ok(out)
}

/// Deleted polynomials of `g` for a counterexample dump.
pub fn instance_dump(g: &Graph) -> Value {
    let all = g.vertices();
    json!({
        "graph6": to_graph6(g),
        "edges": g.edges(),
        "charpoly": charpoly(g).to_string(),
        "deleted": (0..g.order())
            .map(|v| charpoly_within(g, all.minus(VertexSet::singleton(v))).to_string())
            .collect::<Vec<_>>(),
    })
}
