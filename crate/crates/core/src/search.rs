//! Classification of a graph against its complement, exhaustive generation of
//! small graphs, and predicate-driven search over graph streams.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form_graph, is_isomorphic, CanonKey};
use crate::chromatic::ChromaticEngine;
use crate::error::Error;
use crate::exec::Exec;
use crate::graph::Graph;
use crate::graph6::{self, StreamError};
use crate::subseq::subgraph_sequence;
use crate::tutte::{TutteEngine, DC_MAX_EDGES, SUBSET_EDGE_LIMIT};

/// Version of the JSON layout of [`WitnessReport`] and [`SearchResult`].
pub const REPORT_SCHEMA_VERSION: u32 = 1;
/// Largest order accepted by [`generate_all`].
pub const GENERATOR_MAX_ORDER: usize = 7;

/// Resource limits for [`classify`].
#[derive(Clone, Debug, PartialEq)]
pub struct Budget {
    /// Subgraph sequences are computed only up to this many edges.
    pub max_subset_edges: usize,
    /// Tutte polynomials are attempted only up to this many edges.
    pub max_tutte_edges: usize,
    pub tutte_time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_subset_edges: SUBSET_EDGE_LIMIT, max_tutte_edges: DC_MAX_EDGES, tutte_time_limit: None }
    }
}

/// Comparison of a graph with its complement.
///
/// `None` marks a field that was not computed; `skipped` then holds the reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub schema_version: u32,
    pub graph6: String,
    pub order: usize,
    pub size: usize,
    pub half_edge_condition: bool,
    pub self_complementary: Option<bool>,
    pub degree_seq_equal: Option<bool>,
    pub chromatic_equal: Option<bool>,
    pub subgraph_seq_equal: Option<bool>,
    pub tutte_equal: Option<bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub skipped: BTreeMap<String, String>,
    pub tags: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    HalfEdge,
    SelfComplementary,
    DegreeSeqEqual,
    ChromaticEqual,
    SubgraphSeqEqual,
    TutteEqual,
}

impl Field {
    pub const ALL: [Field; 6] = [
        Field::HalfEdge,
        Field::SelfComplementary,
        Field::DegreeSeqEqual,
        Field::ChromaticEqual,
        Field::SubgraphSeqEqual,
        Field::TutteEqual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Field::HalfEdge => "half_edge_condition",
            Field::SelfComplementary => "self_complementary",
            Field::DegreeSeqEqual => "degree_seq_equal",
            Field::ChromaticEqual => "chromatic_equal",
            Field::SubgraphSeqEqual => "subgraph_seq_equal",
            Field::TutteEqual => "tutte_equal",
        }
    }
}

impl WitnessReport {
    pub fn get(&self, f: Field) -> Option<bool> {
        match f {
            Field::HalfEdge => Some(self.half_edge_condition),
            Field::SelfComplementary => self.self_complementary,
            Field::DegreeSeqEqual => self.degree_seq_equal,
            Field::ChromaticEqual => self.chromatic_equal,
            Field::SubgraphSeqEqual => self.subgraph_seq_equal,
            Field::TutteEqual => self.tutte_equal,
        }
    }

    fn set(&mut self, f: Field, v: bool) {
        let slot = match f {
            Field::HalfEdge => {
                self.half_edge_condition = v;
                return;
            }
            Field::SelfComplementary => &mut self.self_complementary,
            Field::DegreeSeqEqual => &mut self.degree_seq_equal,
            Field::ChromaticEqual => &mut self.chromatic_equal,
            Field::SubgraphSeqEqual => &mut self.subgraph_seq_equal,
            Field::TutteEqual => &mut self.tutte_equal,
        };
        if slot.is_none() {
            *slot = Some(v);
        }
    }

    fn skip(&mut self, f: Field, reason: impl Into<String>) {
        if self.get(f).is_none() {
            self.skipped.entry(f.name().to_string()).or_insert_with(|| reason.into());
        }
    }

    /// Checks `self_complementary ⇒ every equality` and
    /// `subgraph_seq_equal ⇒ tutte_equal ⇒ chromatic_equal ⇒ half_edge_condition`
    /// on the fields that are known.
    pub fn check_implications(&self) -> Result<(), Error> {
        let chain = [Field::SubgraphSeqEqual, Field::TutteEqual, Field::ChromaticEqual, Field::HalfEdge];
        for pair in chain.windows(2) {
            if self.get(pair[0]) == Some(true) && self.get(pair[1]) == Some(false) {
                return Err(Error::Invariant(format!(
                    "{}: {} holds but {} does not",
                    self.graph6,
                    pair[0].name(),
                    pair[1].name()
                )));
            }
        }
        if self.self_complementary == Some(true) {
            if let Some(f) = Field::ALL.iter().find(|&&f| self.get(f) == Some(false)) {
                return Err(Error::Invariant(format!("{}: self-complementary but {} is false", self.graph6, f.name())));
            }
        }
        Ok(())
    }

    fn compute_tags(&mut self) {
        let yes = |f| self.get(f) == Some(true);
        let no = |f| self.get(f) == Some(false);
        let mut tags = Vec::new();
        if yes(Field::HalfEdge) {
            tags.push("half-edge");
        }
        if yes(Field::SelfComplementary) {
            tags.push("self-complementary");
        }
        let not_sc = no(Field::SelfComplementary);
        if yes(Field::ChromaticEqual) && not_sc {
            tags.push("chromatic-twin");
        }
        if yes(Field::ChromaticEqual) && no(Field::DegreeSeqEqual) {
            tags.push("chromatic-degree-split");
        }
        if yes(Field::TutteEqual) && not_sc {
            tags.push("tutte-twin");
        }
        if yes(Field::SubgraphSeqEqual) && not_sc {
            tags.push("subseq-twin");
        }
        if yes(Field::TutteEqual) && no(Field::DegreeSeqEqual) {
            tags.push("tutte-degree-split");
        }
        self.tags = tags.into_iter().map(String::from).collect();
    }
}

/// Conjunction of field literals such as `tutte_equal & !degree_seq_equal`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Predicate {
    literals: Vec<(Field, bool)>,
}

impl Predicate {
    /// The predicate that accepts everything.
    pub fn any() -> Self {
        Predicate::default()
    }

    pub fn new(literals: Vec<(Field, bool)>) -> Self {
        Predicate { literals }
    }

    pub fn literals(&self) -> &[(Field, bool)] {
        &self.literals
    }

    /// `Some(false)` once any literal is known false, `Some(true)` once all
    /// are known true, otherwise `None`.
    pub fn evaluate(&self, r: &WitnessReport) -> Option<bool> {
        let mut all_known = true;
        for &(f, want) in &self.literals {
            match r.get(f) {
                Some(v) if v != want => return Some(false),
                Some(_) => {}
                None => all_known = false,
            }
        }
        all_known.then_some(true)
    }
}

impl FromStr for Predicate {
    type Err = Error;

    /// Accepts `all`, a preset name, or literals joined by `&` or `,`, each
    /// optionally negated with `!`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let preset = |lits: &[(Field, bool)]| Ok(Predicate::new(lits.to_vec()));
        match s {
            "" | "all" => return Ok(Predicate::any()),
            "half-edge" => return preset(&[(Field::HalfEdge, true)]),
            "chromatic-twin" => return preset(&[(Field::ChromaticEqual, true), (Field::SelfComplementary, false)]),
            "chromatic-degree-split" => {
                return preset(&[(Field::ChromaticEqual, true), (Field::DegreeSeqEqual, false)])
            }
            "tutte-twin" => return preset(&[(Field::TutteEqual, true), (Field::SelfComplementary, false)]),
            "subseq-twin" => return preset(&[(Field::SubgraphSeqEqual, true), (Field::SelfComplementary, false)]),
            "tutte-degree-split" => return preset(&[(Field::TutteEqual, true), (Field::DegreeSeqEqual, false)]),
            _ => {}
        }
        let mut literals = Vec::new();
        for part in s.split(['&', ',']) {
            let part = part.trim();
            let (want, name) = match part.strip_prefix('!') {
                Some(rest) => (false, rest.trim()),
                None => (true, part),
            };
            let field = Field::ALL
                .iter()
                .copied()
                .find(|f| f.name() == name)
                .ok_or_else(|| Error::Predicate(format!("unknown field `{name}`")))?;
            literals.push((field, want));
        }
        Ok(Predicate { literals })
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return write!(f, "all");
        }
        for (i, &(field, want)) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, " & ")?;
            }
            write!(f, "{}{}", if want { "" } else { "!" }, field.name())?;
        }
        Ok(())
    }
}

/// Classifies `g` against its complement, computing every field the budget allows.
pub fn classify(g: &Graph, budget: &Budget) -> Result<WitnessReport, Error> {
    classify_for(g, budget, &Predicate::any())
}

/// Like [`classify`], but stops as soon as `predicate` is decided.
///
/// Fields are filled cheapest first: edge condition, degree sequences,
/// isomorphism, chromatic polynomials, subgraph sequences, Tutte polynomials.
/// Known implications fill later fields without computing them.
pub fn classify_for(g: &Graph, budget: &Budget, predicate: &Predicate) -> Result<WitnessReport, Error> {
    let n = g.order();
    let m = g.size();
    let mut r = WitnessReport {
        schema_version: REPORT_SCHEMA_VERSION,
        graph6: graph6::encode(g),
        order: n,
        size: m,
        half_edge_condition: 4 * m == n * n.saturating_sub(1),
        self_complementary: None,
        degree_seq_equal: None,
        chromatic_equal: None,
        subgraph_seq_equal: None,
        tutte_equal: None,
        skipped: BTreeMap::new(),
        tags: Vec::new(),
    };
    run_fields(g, &mut r, budget, predicate);
    for f in Field::ALL {
        r.skip(f, "predicate already decided");
    }
    r.compute_tags();
    r.check_implications()?;
    Ok(r)
}

fn run_fields(g: &Graph, r: &mut WitnessReport, budget: &Budget, predicate: &Predicate) {
    let decided = |r: &WitnessReport| !predicate.literals.is_empty() && predicate.evaluate(r).is_some();
    let gc = g.complement();

    if !r.half_edge_condition {
        // every invariant compared here determines the edge count
        for f in Field::ALL {
            r.set(f, false);
        }
        return;
    }
    if decided(r) {
        return;
    }

    let deg_eq = g.degree_sequence() == gc.degree_sequence();
    r.set(Field::DegreeSeqEqual, deg_eq);
    if !deg_eq {
        r.set(Field::SelfComplementary, false);
    }
    if decided(r) {
        return;
    }

    if r.self_complementary.is_none() {
        let sc = is_isomorphic(g, &gc);
        r.set(Field::SelfComplementary, sc);
        if sc {
            for f in Field::ALL {
                r.set(f, true);
            }
            return;
        }
    }
    if decided(r) {
        return;
    }

    let chrom_eq = ChromaticEngine::new().compute(g) == ChromaticEngine::new().compute(&gc);
    r.set(Field::ChromaticEqual, chrom_eq);
    if !chrom_eq {
        r.set(Field::TutteEqual, false);
        r.set(Field::SubgraphSeqEqual, false);
        return;
    }
    if decided(r) {
        return;
    }

    if r.size <= budget.max_subset_edges {
        match (subgraph_sequence(g), subgraph_sequence(&gc)) {
            (Ok(a), Ok(b)) => {
                let eq = a == b;
                r.set(Field::SubgraphSeqEqual, eq);
                if eq {
                    r.set(Field::TutteEqual, true);
                }
            }
            (Err(e), _) | (_, Err(e)) => r.skip(Field::SubgraphSeqEqual, e.to_string()),
        }
    } else {
        r.skip(
            Field::SubgraphSeqEqual,
            format!("{} edges exceed the subset budget of {}", r.size, budget.max_subset_edges),
        );
    }
    if decided(r) || r.tutte_equal.is_some() {
        return;
    }

    if r.size > budget.max_tutte_edges {
        r.skip(Field::TutteEqual, format!("{} edges exceed the Tutte budget of {}", r.size, budget.max_tutte_edges));
        return;
    }
    let deadline = budget.tutte_time_limit.map(|d| Instant::now() + d);
    let tutte = |h: &Graph| TutteEngine::new().with_deadline(deadline).compute_graph(h);
    match tutte(g).and_then(|a| tutte(&gc).map(|b| a == b)) {
        Ok(eq) => {
            r.set(Field::TutteEqual, eq);
            if !eq {
                r.set(Field::SubgraphSeqEqual, false);
            }
        }
        Err(e) => r.skip(Field::TutteEqual, e.to_string()),
    }
}

/// Graph with edge set given by the bits of `mask` over pairs in graph6 order.
fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut bit = 0;
    for v in 1..n {
        for u in 0..v {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v);
            }
            bit += 1;
        }
    }
    g
}

/// One graph per isomorphism class on `n <= 7` vertices, deduplicated by
/// canonical form over all labeled graphs. Representatives are the first
/// labeled graph of each class in edge-mask order.
pub fn generate_all(n: usize) -> Result<Vec<Graph>, Error> {
    generate_all_with(n, Exec::default())
}

pub fn generate_all_with(n: usize, exec: Exec) -> Result<Vec<Graph>, Error> {
    if n > GENERATOR_MAX_ORDER {
        return Err(Error::GeneratorOrder(n));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let total = 1u64 << pairs;
    let chunk_bits = pairs.min(12);
    let chunks = (total >> chunk_bits) as usize;
    let per_chunk: Vec<usize> = (0..chunks).collect();
    let firsts: Vec<Vec<(u64, CanonKey)>> = exec.map(&per_chunk, |&c| {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for lo in 0..1u64 << chunk_bits {
            let mask = (c as u64) << chunk_bits | lo;
            let key = canonical_form_graph(&graph_from_mask(n, mask));
            if seen.insert(key.clone()) {
                out.push((mask, key));
            }
        }
        out
    });
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for (mask, key) in firsts.into_iter().flatten() {
        if seen.insert(key) {
            reps.push(graph_from_mask(n, mask));
        }
    }
    Ok(reps)
}

/// Where [`search`] reads graphs from.
#[derive(Clone, Debug)]
pub enum Source {
    /// Newline-delimited graph6 file; `strict` aborts on the first bad line.
    File { path: PathBuf, strict: bool },
    /// [`generate_all`] for the given order.
    Generate(usize),
    /// Explicit graphs, positions numbered from 1.
    Graphs(Vec<Graph>),
}

impl Source {
    fn describe(&self) -> String {
        match self {
            Source::File { path, .. } => format!("file:{}", path.display()),
            Source::Generate(n) => format!("gen:{n}"),
            Source::Graphs(gs) => format!("graphs:{}", gs.len()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub budget: Budget,
    pub exec: Exec,
    /// Worker threads for the parallel path; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    /// Graphs classified per batch; the checkpoint is rewritten after each batch.
    pub batch: usize,
    /// Stop after this many graphs in this run (the checkpoint allows resuming).
    pub limit: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: Budget::default(),
            exec: Exec::default(),
            jobs: None,
            checkpoint: None,
            batch: 256,
            limit: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseFailure {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub processed: u64,
    pub matched: u64,
    /// Graphs for which the predicate stayed undecided within budget.
    pub undecided: u64,
    pub tag_counts: BTreeMap<String, u64>,
    pub errors: Vec<ParseFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub schema_version: u32,
    pub source: String,
    pub predicate: String,
    /// Position (line number, or 1-based index) of the last item consumed.
    pub position: usize,
    /// Whether the whole source was consumed.
    pub complete: bool,
    pub summary: SearchSummary,
    pub matches: Vec<WitnessReport>,
}

enum Item {
    Graph { position: usize, graph: Graph },
    Failure { position: usize, message: String },
}

fn items(source: &Source) -> Result<Box<dyn Iterator<Item = Result<Item, Error>>>, Error> {
    Ok(match source {
        Source::File { path, strict } => {
            let strict = *strict;
            Box::new(graph6::stream(path, strict)?.map(move |r| match r {
                Ok(it) => Ok(Item::Graph { position: it.line, graph: it.graph }),
                Err(StreamError::Parse { line, source }) if !strict => {
                    Ok(Item::Failure { position: line, message: source.to_string() })
                }
                Err(e) => Err(Error::from(e)),
            }))
        }
        Source::Generate(n) => Box::new(
            generate_all(*n)?.into_iter().enumerate().map(|(i, graph)| Ok(Item::Graph { position: i + 1, graph })),
        ),
        Source::Graphs(gs) => {
            Box::new(gs.clone().into_iter().enumerate().map(|(i, graph)| Ok(Item::Graph { position: i + 1, graph })))
        }
    })
}

fn load_checkpoint(path: &Path, source: &str, predicate: &str) -> Result<Option<SearchResult>, Error> {
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(path)?;
    let state: SearchResult =
        serde_json::from_str(&text).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
    if state.schema_version != REPORT_SCHEMA_VERSION || state.source != source || state.predicate != predicate {
        return Err(Error::Checkpoint(format!(
            "{} was written for source `{}` and predicate `{}`",
            path.display(),
            state.source,
            state.predicate
        )));
    }
    Ok(Some(state))
}

fn save_checkpoint(path: &Path, state: &SearchResult) -> Result<(), Error> {
    let tmp = path.with_extension("tmp");
    let text = serde_json::to_string_pretty(state).expect("search state serializes");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Classifies every graph of `source` and keeps the reports on which
/// `predicate` holds, in source order.
///
/// With a checkpoint path the state is written after every batch and a run
/// resumes from an existing checkpoint for the same source and predicate.
/// Results do not depend on the worker count or on interruptions.
pub fn search(source: &Source, predicate: &Predicate, opts: &SearchOptions) -> Result<SearchResult, Error> {
    #[cfg(feature = "parallel")]
    if let (Some(jobs), Exec::Parallel) = (opts.jobs, opts.exec) {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
        return pool.install(|| search_inner(source, predicate, opts));
    }
    search_inner(source, predicate, opts)
}

fn search_inner(source: &Source, predicate: &Predicate, opts: &SearchOptions) -> Result<SearchResult, Error> {
    let source_name = source.describe();
    let predicate_text = predicate.to_string();
    let resumed = match &opts.checkpoint {
        Some(p) => load_checkpoint(p, &source_name, &predicate_text)?,
        None => None,
    };
    let mut state = resumed.unwrap_or_else(|| SearchResult {
        schema_version: REPORT_SCHEMA_VERSION,
        source: source_name,
        predicate: predicate_text,
        position: 0,
        complete: false,
        summary: SearchSummary::default(),
        matches: Vec::new(),
    });
    if state.complete {
        return Ok(state);
    }

    let start = state.position;
    let mut iter = items(source)?.filter(|it| match it {
        Ok(Item::Graph { position, .. }) | Ok(Item::Failure { position, .. }) => *position > start,
        Err(_) => true,
    });
    let mut budget_left = opts.limit.unwrap_or(usize::MAX);
    let batch_size = opts.batch.max(1);
    loop {
        let mut batch: Vec<(usize, Graph)> = Vec::new();
        let mut failures: Vec<ParseFailure> = Vec::new();
        let mut last = state.position;
        let mut exhausted = false;
        while batch.len() < batch_size.min(budget_left) {
            match iter.next() {
                None => {
                    exhausted = true;
                    break;
                }
                Some(Err(e)) => return Err(e),
                Some(Ok(Item::Failure { position, message })) => {
                    failures.push(ParseFailure { line: position, message });
                    last = position;
                }
                Some(Ok(Item::Graph { position, graph })) => {
                    batch.push((position, graph));
                    last = position;
                }
            }
        }
        if batch.is_empty() && failures.is_empty() && !exhausted && budget_left > 0 {
            exhausted = iter.size_hint().1 == Some(0);
        }

        let reports = opts
            .exec
            .map(&batch, |(_, g)| classify_for(g, &opts.budget, predicate))
            .into_iter()
            .collect::<Result<Vec<_>, Error>>()?;
        budget_left -= batch.len();
        let summary = &mut state.summary;
        summary.errors.extend(failures);
        for r in reports {
            summary.processed += 1;
            for t in &r.tags {
                *summary.tag_counts.entry(t.clone()).or_insert(0) += 1;
            }
            match predicate.evaluate(&r) {
                Some(true) => {
                    summary.matched += 1;
                    state.matches.push(r);
                }
                Some(false) => {}
                None => summary.undecided += 1,
            }
        }
        state.position = last;
        state.complete = exhausted;
        if let Some(p) = &opts.checkpoint {
            save_checkpoint(p, &state)?;
        }
        if exhausted || budget_left == 0 {
            break;
        }
    }
    Ok(state)
}
