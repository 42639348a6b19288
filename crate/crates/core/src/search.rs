//! Exhaustive enumeration of small labeled graphs, sharded across workers
//! with a deterministic merge, plus the two consumers built on top of it:
//! certification of every bound over all connected graphs up to a size cap,
//! and the table of minimum Randic index per matching number.
//!
//! Enumeration walks upper-triangular edge bitmasks in Gray-code order so
//! the adjacency updates incrementally; bit `t` of a mask corresponds to the
//! `t`-th pair in graph6 column order, which makes witness encoding a
//! straight repack. Shards partition the index space, workers share
//! nothing, and partial results merge associatively with a
//! `(value, witness)` tie-break, so output is identical for any shard or
//! worker count.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Serialize, Serializer};

use crate::bounds::{BoundChecker, BoundId, BoundReport, VerdictRow};
use crate::graph::Graph;
use crate::graph6;
use crate::invariants::{max_induced_avg_on_bits, randic_on_adj};
use crate::matching::{oracle_masks, Blossom};
use crate::{Error, Result, DEFAULT_TOLERANCE};

/// Hard cap for full labeled scans: `C(8,2) = 28` mask bits. Nine vertices
/// would need 2^36 masks.
pub const ENUM_MAX_N: usize = 8;
/// Cap for canonical forms (isomorphism dedup).
pub const CANONICAL_MAX_N: usize = 12;
/// Cap for the labeled-tree enumerator (`9^7` trees at n = 9).
pub const TREE_ENUM_MAX_N: usize = 9;

/// Which graphs an enumeration visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Every labeled graph on exactly `n` vertices.
    All,
    /// Connected graphs on exactly `n` vertices.
    Connected,
    /// Graphs without isolated vertices (each counted once, at its support
    /// size).
    AllNoIsolated,
    /// Trees.
    Trees,
    /// Graphs of maximum degree at most 3 without isolated vertices.
    Subcubic,
    /// Graphs without isolated vertices whose matching number is
    /// `floor(n/2)`.
    NearlyPerfect,
    /// Connected graphs with excess at most the given value.
    ExcessLe(i64),
}

impl Scope {
    fn needs_alpha(self) -> bool {
        matches!(self, Scope::NearlyPerfect)
    }

    fn pre_admits(self, n: usize, m: u32, connected: bool, min_deg: u8, max_deg: u8) -> bool {
        match self {
            Scope::All => true,
            Scope::Connected => connected,
            Scope::AllNoIsolated => n == 0 || min_deg >= 1,
            Scope::Trees => connected && m as usize + 1 == n,
            Scope::Subcubic => (n == 0 || min_deg >= 1) && max_deg <= 3,
            Scope::NearlyPerfect => n == 0 || min_deg >= 1,
            Scope::ExcessLe(e) => {
                let excess = m as i64 - n as i64 + 1;
                connected && excess <= e
            }
        }
    }

    fn admits_alpha(self, n: usize, alpha: usize) -> bool {
        match self {
            Scope::NearlyPerfect => alpha == n / 2,
            _ => true,
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::All => write!(f, "all"),
            Scope::Connected => write!(f, "connected"),
            Scope::AllNoIsolated => write!(f, "no-isolated"),
            Scope::Trees => write!(f, "trees"),
            Scope::Subcubic => write!(f, "subcubic"),
            Scope::NearlyPerfect => write!(f, "nearly-perfect"),
            Scope::ExcessLe(e) => write!(f, "excess-le({e})"),
        }
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        Ok(match norm.as_str() {
            "all" => Scope::All,
            "connected" => Scope::Connected,
            "no-isolated" | "all-no-isolated" => Scope::AllNoIsolated,
            "trees" => Scope::Trees,
            "subcubic" => Scope::Subcubic,
            "nearly-perfect" => Scope::NearlyPerfect,
            _ => {
                if let Some(rest) = norm
                    .strip_prefix("excess-le(")
                    .and_then(|r| r.strip_suffix(')'))
                {
                    let e = rest.parse::<i64>().map_err(|_| {
                        Error::InvalidParameter(format!("bad excess bound {rest:?}"))
                    })?;
                    Scope::ExcessLe(e)
                } else {
                    return Err(Error::InvalidParameter(format!("unknown scope {s:?}")));
                }
            }
        })
    }
}

impl Serialize for Scope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Whether enumeration reports each labeled graph or one representative per
/// isomorphism class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dedup {
    Labeled,
    UpToIsomorphism,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    pub masks_scanned: u64,
    pub visited: u64,
}

/// The `t`-th pair is the `t`-th upper-triangle slot in graph6 column
/// order: (0,1), (0,2), (1,2), (0,3), ...
fn pairs_in_graph6_order(n: usize) -> Vec<(u32, u32)> {
    let mut pairs = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for j in 1..n as u32 {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    pairs
}

fn connected_bits(adj: &[u16], n: usize) -> bool {
    if n <= 1 {
        return true;
    }
    let full = (1u16 << n) - 1;
    let mut reach = 1u16;
    let mut frontier = 1u16;
    while frontier != 0 {
        let mut grow = 0u16;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            grow |= adj[v];
        }
        frontier = grow & !reach;
        reach |= grow;
        if reach == full {
            return true;
        }
    }
    false
}

/// graph6 of a mask, using the bit-for-bit correspondence between mask bits
/// and graph6 body bits.
fn mask_graph6(n: usize, mask: u32, nbits: usize) -> String {
    debug_assert!(n <= 62);
    let mut out = vec![n as u8 + 63];
    let mut acc = 0u8;
    let mut cnt = 0;
    for t in 0..nbits {
        acc = (acc << 1) | ((mask >> t) & 1) as u8;
        cnt += 1;
        if cnt == 6 {
            out.push(acc + 63);
            acc = 0;
            cnt = 0;
        }
    }
    if cnt > 0 {
        out.push((acc << (6 - cnt)) + 63);
    }
    String::from_utf8(out).expect("printable ASCII")
}

/// Walks masks `gray(lo) .. gray(hi-1)` keeping bitmask adjacency in sync;
/// one edge flips per step.
fn scan_range<F: FnMut(u32, &[u16])>(
    n: usize,
    lo: u64,
    hi: u64,
    pairs: &[(u32, u32)],
    mut f: F,
) {
    if lo >= hi {
        return;
    }
    let mut bits = [0u16; ENUM_MAX_N];
    let mut mask = (lo ^ (lo >> 1)) as u32;
    for (t, &(a, b)) in pairs.iter().enumerate() {
        if mask >> t & 1 == 1 {
            bits[a as usize] |= 1 << b;
            bits[b as usize] |= 1 << a;
        }
    }
    let mut i = lo;
    loop {
        f(mask, &bits[..n]);
        i += 1;
        if i >= hi {
            return;
        }
        let t = i.trailing_zeros() as usize;
        let (a, b) = pairs[t];
        bits[a as usize] ^= 1 << b;
        bits[b as usize] ^= 1 << a;
        mask ^= 1 << t;
    }
}

fn degree_stats(bits: &[u16]) -> (u8, u8) {
    let mut min = u8::MAX;
    let mut max = 0u8;
    for &b in bits {
        let d = b.count_ones() as u8;
        min = min.min(d);
        max = max.max(d);
    }
    if bits.is_empty() {
        (0, 0)
    } else {
        (min, max)
    }
}

/// Reusable per-worker state: a scratch graph rebuilt per mask, the blossom
/// buffers, and the subset-DP scratch for induced density.
struct Workbench {
    scratch: Graph,
    blossom: Blossom,
    mad_scratch: Vec<u16>,
}

impl Workbench {
    fn new() -> Self {
        Workbench {
            scratch: Graph::empty(0),
            blossom: Blossom::new(ENUM_MAX_N),
            mad_scratch: Vec::new(),
        }
    }
}

/// Visits every graph on exactly `n` labeled vertices that lies in `scope`,
/// optionally deduplicated up to isomorphism. The visitor borrows a scratch
/// value; clone it to keep it.
pub fn enumerate_graphs(
    n: usize,
    scope: Scope,
    dedup: Dedup,
    mut visitor: impl FnMut(&Graph),
) -> Result<EnumerationStats> {
    if n > ENUM_MAX_N {
        return Err(Error::SizeCap {
            op: "enumerate_graphs",
            max: ENUM_MAX_N,
            n,
        });
    }
    let pairs = pairs_in_graph6_order(n);
    let total = 1u64 << pairs.len();
    let mut wb = Workbench::new();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut stats = EnumerationStats::default();
    let mut result = Ok(());
    scan_range(n, 0, total, &pairs, |mask, bits| {
        if result.is_err() {
            return;
        }
        stats.masks_scanned += 1;
        let (min_deg, max_deg) = degree_stats(bits);
        let connected = connected_bits(bits, n);
        if !scope.pre_admits(n, mask.count_ones(), connected, min_deg, max_deg) {
            return;
        }
        wb.scratch.rebuild_from_bits(bits, n);
        if scope.needs_alpha() {
            let alpha = wb.blossom.matching_size(wb.scratch.adj());
            if !scope.admits_alpha(n, alpha) {
                return;
            }
        }
        if dedup == Dedup::UpToIsomorphism {
            match canonical_form(&wb.scratch) {
                Ok(form) => {
                    if !seen.insert(form) {
                        return;
                    }
                }
                Err(e) => {
                    result = Err(e);
                    return;
                }
            }
        }
        stats.visited += 1;
        visitor(&wb.scratch);
    });
    result.map(|()| stats)
}

/// Visits every labeled tree on `n` vertices exactly once, via Prufer
/// sequences (`n^(n-2)` trees).
pub fn enumerate_labeled_trees(n: usize, mut visitor: impl FnMut(&Graph)) -> Result<u64> {
    if n > TREE_ENUM_MAX_N {
        return Err(Error::SizeCap {
            op: "enumerate_labeled_trees",
            max: TREE_ENUM_MAX_N,
            n,
        });
    }
    if n == 0 {
        return Err(Error::InvalidParameter("trees need n >= 1".into()));
    }
    let mut scratch = Graph::empty(0);
    let mut bits = [0u16; TREE_ENUM_MAX_N];
    if n <= 2 {
        bits[..n].fill(0);
        if n == 2 {
            bits[0] = 0b10;
            bits[1] = 0b01;
        }
        scratch.rebuild_from_bits(&bits[..n], n);
        visitor(&scratch);
        return Ok(1);
    }
    let mut seq = vec![0u32; n - 2];
    let mut degree = [0u8; TREE_ENUM_MAX_N];
    let mut count = 0u64;
    loop {
        // decode the Prufer sequence
        bits[..n].fill(0);
        degree[..n].fill(1);
        for &s in &seq {
            degree[s as usize] += 1;
        }
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists") as u32;
            bits[leaf as usize] |= 1 << s;
            bits[s as usize] |= 1 << leaf;
            degree[leaf as usize] = 0;
            degree[s as usize] -= 1;
        }
        let mut ends = (0..n).filter(|&v| degree[v] == 1);
        let (u, v) = (ends.next().unwrap(), ends.next().unwrap());
        bits[u] |= 1 << v;
        bits[v] |= 1 << u;
        scratch.rebuild_from_bits(&bits[..n], n);
        visitor(&scratch);
        count += 1;
        // next sequence (odometer)
        let mut pos = 0;
        loop {
            if pos == seq.len() {
                return Ok(count);
            }
            seq[pos] += 1;
            if (seq[pos] as usize) < n {
                break;
            }
            seq[pos] = 0;
            pos += 1;
        }
    }
}

/// Isomorphism-invariant canonical encoding: the graph6 string of the
/// relabeling that lexicographically minimizes the adjacency bitstring.
/// Computed by a level-wise search over placement prefixes; prefixes that
/// agree on the placed set and on every unplaced vertex's adjacency pattern
/// into the placement are interchangeable and collapse into one state,
/// which keeps highly symmetric graphs (complete graphs, say) cheap.
///
/// Equal outputs are equivalent to isomorphism: the output determines the
/// graph, and isomorphic graphs range over the same relabelings.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>> {
    let n = g.n();
    if n > CANONICAL_MAX_N {
        return Err(Error::SizeCap {
            op: "canonical_form",
            max: CANONICAL_MAX_N,
            n,
        });
    }
    if n <= 1 {
        return Ok(graph6::to_graph6(g).into_bytes());
    }
    let mut bits = vec![0u16; n];
    for (u, v) in g.edges() {
        bits[u as usize] |= 1 << v;
        bits[v as usize] |= 1 << u;
    }

    let signature = |prefix: &[u8]| -> Vec<u16> {
        let mut placed = 0u16;
        for &p in prefix {
            placed |= 1 << p;
        }
        let mut sig = Vec::with_capacity(n + 1);
        sig.push(placed);
        for (v, &vbits) in bits.iter().enumerate() {
            if placed >> v & 1 == 1 {
                sig.push(u16::MAX);
            } else {
                let mut col = 0u16;
                for (pos, &p) in prefix.iter().enumerate() {
                    col |= ((vbits >> p) & 1) << pos;
                }
                sig.push(col);
            }
        }
        sig
    };

    let mut frontier: Vec<Vec<u8>> = Vec::new();
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    for v in 0..n as u8 {
        if seen.insert(signature(&[v])) {
            frontier.push(vec![v]);
        }
    }

    let mut body = Vec::with_capacity(n * (n - 1) / 2);
    for level in 1..n {
        let mut best: Option<u16> = None;
        let mut extensions: Vec<(usize, u8)> = Vec::new();
        for (idx, prefix) in frontier.iter().enumerate() {
            let mut placed = 0u16;
            for &p in prefix {
                placed |= 1 << p;
            }
            for v in 0..n as u8 {
                if placed >> v & 1 == 1 {
                    continue;
                }
                // column bits with adjacency to prefix[0] most significant,
                // so integer order is lexicographic order
                let mut col = 0u16;
                for (pos, &p) in prefix.iter().enumerate() {
                    col |= ((bits[v as usize] >> p) & 1) << (level - 1 - pos);
                }
                match best {
                    None => {
                        best = Some(col);
                        extensions.push((idx, v));
                    }
                    Some(b) if col < b => {
                        best = Some(col);
                        extensions.clear();
                        extensions.push((idx, v));
                    }
                    Some(b) if col == b => extensions.push((idx, v)),
                    _ => {}
                }
            }
        }
        let best = best.expect("frontier is never empty");
        for pos in 0..level {
            body.push((best >> (level - 1 - pos)) & 1 == 1);
        }
        seen.clear();
        let mut next = Vec::new();
        for (idx, v) in extensions {
            let mut prefix = frontier[idx].clone();
            prefix.push(v);
            if seen.insert(signature(&prefix)) {
                next.push(prefix);
            }
        }
        frontier = next;
    }

    let mut out = vec![n as u8 + 63];
    let mut acc = 0u8;
    let mut cnt = 0;
    for &b in &body {
        acc = (acc << 1) | u8::from(b);
        cnt += 1;
        if cnt == 6 {
            out.push(acc + 63);
            acc = 0;
            cnt = 0;
        }
    }
    if cnt > 0 {
        out.push((acc << (6 - cnt)) + 63);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
struct WorkItem {
    n: usize,
    lo: u64,
    hi: u64,
}

fn shard_ranges(total: u64, shards: usize) -> Vec<(u64, u64)> {
    let shards = shards.max(1) as u64;
    let base = total / shards;
    let rem = total % shards;
    let mut out = Vec::with_capacity(shards as usize);
    let mut start = 0;
    for s in 0..shards {
        let len = base + u64::from(s < rem);
        out.push((start, start + len));
        start += len;
    }
    out
}

fn work_items(n_max: usize, shards: usize) -> Vec<WorkItem> {
    let mut items = Vec::new();
    for n in 1..=n_max {
        let total = 1u64 << (n * (n - 1) / 2);
        for (lo, hi) in shard_ranges(total, shards) {
            if lo < hi {
                items.push(WorkItem { n, lo, hi });
            }
        }
    }
    items
}

/// Runs one closure per work item on a scoped thread pool; results come back
/// in item order, so the caller's merge is independent of scheduling.
fn run_parallel<P, F>(items: &[WorkItem], f: F, progress: bool) -> Vec<P>
where
    P: Send,
    F: Fn(&WorkItem) -> P + Sync,
{
    let threads = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(items.len().max(1));
    let next = AtomicUsize::new(0);
    let done = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<P>>> = items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= items.len() {
                    break;
                }
                let partial = f(&items[i]);
                *slots[i].lock().expect("no poisoned shard") = Some(partial);
                let finished = done.fetch_add(1, Ordering::SeqCst) + 1;
                if progress {
                    eprintln!(
                        "progress: {finished}/{} work items (n={}, masks {}..{})",
                        items.len(),
                        items[i].n,
                        items[i].lo,
                        items[i].hi
                    );
                }
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| {
            slot.into_inner()
                .expect("no poisoned shard")
                .expect("every work item produced a partial")
        })
        .collect()
}

/// One row of the minimum-Randic-per-matching table.
#[derive(Clone, Debug, Serialize)]
pub struct SearchRecord {
    pub k: usize,
    pub scope: Scope,
    pub n_max: usize,
    #[serde(rename = "best_R")]
    pub best_randic: f64,
    /// `best_R / k^(2/3)`, the candidate optimal constant at this `k`.
    pub ratio: f64,
    /// graph6 of the witness; ties break to the lexicographically smallest
    /// string.
    pub witness: String,
}

pub const SEARCH_CSV_HEADER: &str = "k,scope,n_max,best_R,ratio,witness";

impl SearchRecord {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{:.12},{:.12},{}",
            self.k, self.scope, self.n_max, self.best_randic, self.ratio, self.witness
        )
    }
}

pub fn search_records_csv(records: &[SearchRecord]) -> String {
    let mut out = String::from(SEARCH_CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub n_max: usize,
    pub scope: Scope,
    pub shards: usize,
    pub progress: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            n_max: ENUM_MAX_N,
            scope: Scope::Connected,
            shards: 4,
            progress: false,
        }
    }
}

/// For each matching number `k >= 1`, the minimum Randic index over all
/// scope graphs with at most `n_max` vertices, with a graph6 witness.
/// Edgeless graphs (`k = 0`) are omitted.
pub fn min_randic_by_matching(cfg: &SearchConfig) -> Result<Vec<SearchRecord>> {
    if cfg.n_max > ENUM_MAX_N {
        return Err(Error::SizeCap {
            op: "min_randic_by_matching",
            max: ENUM_MAX_N,
            n: cfg.n_max,
        });
    }
    if cfg.n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let items = work_items(cfg.n_max, cfg.shards.max(1));
    let scope = cfg.scope;
    let partials = run_parallel(
        &items,
        |item| search_shard(item, scope, &mut Workbench::new()),
        cfg.progress,
    );
    let mut best: Vec<Option<(f64, String)>> = vec![None; cfg.n_max / 2 + 1];
    for partial in partials {
        for (k, entry) in partial.into_iter().enumerate() {
            if let Some((r, w)) = entry {
                match &mut best[k] {
                    slot @ None => *slot = Some((r, w)),
                    Some((br, bw)) => {
                        if r < *br || (r == *br && w < *bw) {
                            *br = r;
                            *bw = w;
                        }
                    }
                }
            }
        }
    }
    Ok(best
        .into_iter()
        .enumerate()
        .skip(1)
        .filter_map(|(k, entry)| {
            entry.map(|(best_randic, witness)| SearchRecord {
                k,
                scope: cfg.scope,
                n_max: cfg.n_max,
                best_randic,
                ratio: best_randic / (k as f64).powf(2.0 / 3.0),
                witness,
            })
        })
        .collect())
}

fn search_shard(
    item: &WorkItem,
    scope: Scope,
    wb: &mut Workbench,
) -> Vec<Option<(f64, String)>> {
    let n = item.n;
    let pairs = pairs_in_graph6_order(n);
    let nbits = pairs.len();
    let mut best: Vec<Option<(f64, String)>> = vec![None; n / 2 + 1];
    scan_range(n, item.lo, item.hi, &pairs, |mask, bits| {
        let (min_deg, max_deg) = degree_stats(bits);
        let connected = connected_bits(bits, n);
        if !scope.pre_admits(n, mask.count_ones(), connected, min_deg, max_deg) {
            return;
        }
        wb.scratch.rebuild_from_bits(bits, n);
        let alpha = wb.blossom.matching_size(wb.scratch.adj());
        if alpha == 0 || !scope.admits_alpha(n, alpha) {
            return;
        }
        let r = randic_on_adj(wb.scratch.adj());
        match &mut best[alpha] {
            slot @ None => *slot = Some((r, mask_graph6(n, mask, nbits))),
            Some((br, bw)) => {
                if r < *br {
                    *br = r;
                    *bw = mask_graph6(n, mask, nbits);
                } else if r == *br {
                    let w = mask_graph6(n, mask, nbits);
                    if w < *bw {
                        *bw = w;
                    }
                }
            }
        }
    });
    best
}

/// The checks certification runs per graph, in report order.
fn battery_ids() -> Vec<BoundId> {
    let mut ids = vec![
        BoundId::TreeUnicyclic,
        BoundId::SmallExcess,
        BoundId::Subcubic,
        BoundId::OShi,
        BoundId::BollobasErdos,
    ];
    ids.extend((1..=6).map(BoundId::HighLow));
    ids.extend((1..=6).map(BoundId::Hereditary));
    ids.extend([
        BoundId::NearPerfect,
        BoundId::LeafAnchoredExcess,
        BoundId::StarMin,
        BoundId::HalfOrder,
    ]);
    ids
}

#[derive(Clone, Copy, Debug)]
pub struct CertifyConfig {
    pub n_max: usize,
    pub shards: usize,
    pub tolerance: f64,
    /// Deliberately perturbs the subcubic constant; used to verify that the
    /// harness actually reports violations.
    pub subcubic_constant_override: Option<f64>,
    pub progress: bool,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            n_max: ENUM_MAX_N,
            shards: 4,
            tolerance: DEFAULT_TOLERANCE,
            subcubic_constant_override: None,
            progress: false,
        }
    }
}

/// Result of running every bound check over every connected graph up to
/// `n_max` vertices, plus the blossom-versus-oracle cross-check.
#[derive(Clone, Debug)]
pub struct CertifyReport {
    pub n_max: usize,
    pub graphs_checked: u64,
    pub checks_run: u64,
    /// `(bound id, how many graphs satisfied its hypothesis)`.
    pub hypothesis_counts: Vec<(String, u64)>,
    /// Counterexample rows; empty unless a bound (or an injected fault) is
    /// refuted.
    pub certificates: Vec<VerdictRow>,
    /// Canonical graph6 of every subcubic-equality class encountered.
    pub subcubic_equality_classes: Vec<String>,
    /// Graphs where the numeric equality flag and the structural corona
    /// test disagreed.
    pub subcubic_equality_mismatches: u64,
    /// Graphs where star-minimum equality and the star structure disagreed.
    pub star_equality_mismatches: u64,
    pub matcher_mismatches: u64,
    pub matcher_mismatch_examples: Vec<String>,
}

impl CertifyReport {
    pub fn is_clean(&self) -> bool {
        self.certificates.is_empty()
            && self.matcher_mismatches == 0
            && self.subcubic_equality_mismatches == 0
            && self.star_equality_mismatches == 0
    }
}

impl fmt::Display for CertifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "certified {} connected graphs (n <= {}), {} checks run",
            self.graphs_checked, self.n_max, self.checks_run
        )?;
        writeln!(
            f,
            "counterexample certificates: {}",
            self.certificates.len()
        )?;
        writeln!(
            f,
            "matcher mismatches: {}; equality-classification mismatches: {} subcubic, {} star",
            self.matcher_mismatches,
            self.subcubic_equality_mismatches,
            self.star_equality_mismatches
        )?;
        for (id, count) in &self.hypothesis_counts {
            writeln!(f, "  hypothesis held {count:>12} times: {id}")?;
        }
        Ok(())
    }
}

struct CertifyPartial {
    graphs: u64,
    checks: u64,
    hyp_counts: Vec<u64>,
    certificates: Vec<VerdictRow>,
    equality_classes: BTreeSet<Vec<u8>>,
    equality_mismatches: u64,
    star_mismatches: u64,
    matcher_mismatches: u64,
    mismatch_examples: Vec<String>,
}

impl CertifyPartial {
    fn new(battery_len: usize) -> Self {
        CertifyPartial {
            graphs: 0,
            checks: 0,
            hyp_counts: vec![0; battery_len],
            certificates: Vec::new(),
            equality_classes: BTreeSet::new(),
            equality_mismatches: 0,
            star_mismatches: 0,
            matcher_mismatches: 0,
            mismatch_examples: Vec::new(),
        }
    }

    fn tally(&mut self, idx: usize, g: &Graph, report: &BoundReport) {
        if report.hypothesis_held {
            self.hyp_counts[idx] += 1;
        }
        if report.is_counterexample() {
            self.certificates.push(VerdictRow::from_report(g, report));
        }
        self.checks += 1;
    }
}

/// Runs the full battery of bound checks on every connected graph with at
/// most `n_max` vertices (labeled enumeration, connectivity filtered, no
/// isomorphism dedup), cross-checking the blossom matcher against the
/// brute-force oracle on every graph. A clean run has zero certificates and
/// zero mismatches.
pub fn certify_all_bounds(cfg: &CertifyConfig) -> Result<CertifyReport> {
    if cfg.n_max > ENUM_MAX_N {
        return Err(Error::SizeCap {
            op: "certify_all_bounds",
            max: ENUM_MAX_N,
            n: cfg.n_max,
        });
    }
    if cfg.n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let checker = BoundChecker {
        tolerance: cfg.tolerance,
        subcubic_constant: cfg
            .subcubic_constant_override
            .unwrap_or(BoundChecker::default().subcubic_constant),
    };
    let ids = battery_ids();
    let items = work_items(cfg.n_max, cfg.shards.max(1));
    let partials = run_parallel(
        &items,
        |item| certify_shard(item, &checker, ids.len()),
        cfg.progress,
    );

    let mut merged = CertifyPartial::new(ids.len());
    for partial in partials {
        merged.graphs += partial.graphs;
        merged.checks += partial.checks;
        for (into, from) in merged.hyp_counts.iter_mut().zip(&partial.hyp_counts) {
            *into += from;
        }
        merged.certificates.extend(partial.certificates);
        merged.equality_classes.extend(partial.equality_classes);
        merged.equality_mismatches += partial.equality_mismatches;
        merged.star_mismatches += partial.star_mismatches;
        merged.matcher_mismatches += partial.matcher_mismatches;
        for w in partial.mismatch_examples {
            if merged.mismatch_examples.len() < 5 {
                merged.mismatch_examples.push(w);
            }
        }
    }

    Ok(CertifyReport {
        n_max: cfg.n_max,
        graphs_checked: merged.graphs,
        checks_run: merged.checks,
        hypothesis_counts: ids
            .iter()
            .map(BoundId::to_string)
            .zip(merged.hyp_counts)
            .collect(),
        certificates: merged.certificates,
        subcubic_equality_classes: merged
            .equality_classes
            .into_iter()
            .map(|form| String::from_utf8(form).expect("canonical forms are ASCII"))
            .collect(),
        subcubic_equality_mismatches: merged.equality_mismatches,
        star_equality_mismatches: merged.star_mismatches,
        matcher_mismatches: merged.matcher_mismatches,
        matcher_mismatch_examples: merged.mismatch_examples,
    })
}

fn certify_shard(item: &WorkItem, checker: &BoundChecker, battery_len: usize) -> CertifyPartial {
    let n = item.n;
    let pairs = pairs_in_graph6_order(n);
    let nbits = pairs.len();
    let alive: u16 = if n == 0 { 0 } else { (1 << n) - 1 };
    let mut wb = Workbench::new();
    let mut partial = CertifyPartial::new(battery_len);
    let mut wide = [0u32; ENUM_MAX_N];
    scan_range(n, item.lo, item.hi, &pairs, |mask, bits| {
        if !connected_bits(bits, n) {
            return;
        }
        partial.graphs += 1;
        wb.scratch.rebuild_from_bits(bits, n);
        let g = &wb.scratch;
        let alpha = wb.blossom.matching_size(g.adj());
        let oracle = oracle_masks(bits, alive);
        if oracle != alpha {
            partial.matcher_mismatches += 1;
            if partial.mismatch_examples.len() < 5 {
                partial
                    .mismatch_examples
                    .push(mask_graph6(n, mask, nbits));
            }
        }
        let randic = randic_on_adj(g.adj());
        let (min_deg, max_deg) = degree_stats(bits);
        for (v, &b) in bits.iter().enumerate() {
            wide[v] = b as u32;
        }
        let mad = max_induced_avg_on_bits(&wide[..n], n, &mut wb.mad_scratch);

        let mut idx = 0;
        let mut step = |partial: &mut CertifyPartial, report: BoundReport| {
            partial.tally(idx, g, &report);
            idx += 1;
            report
        };
        step(&mut partial, checker.tree_bound_given(g, randic, alpha, true));
        step(
            &mut partial,
            checker.small_excess_given(g, randic, alpha, true),
        );
        let subcubic = step(
            &mut partial,
            checker.subcubic_given(g, randic, alpha, max_deg as usize),
        );
        if subcubic.hypothesis_held {
            if subcubic.note.is_some() {
                partial.equality_mismatches += 1;
            }
            if subcubic.equality {
                let form = canonical_form(g).expect("n <= 8 is within the canonical cap");
                partial.equality_classes.insert(form);
            }
        }
        step(
            &mut partial,
            checker.o_shi_given(g, randic, min_deg as usize, max_deg as usize),
        );
        step(
            &mut partial,
            checker.bollobas_erdos_given(g, randic, min_deg as usize),
        );
        for r in 1..=6 {
            step(&mut partial, checker.high_low_given(g, r, randic, alpha));
        }
        for r in 1..=6 {
            step(
                &mut partial,
                checker.hereditary_given(g, r, randic, alpha, mad),
            );
        }
        step(&mut partial, checker.near_perfect_given(g, randic, alpha));
        step(
            &mut partial,
            checker.leaf_anchored_excess_given(g, randic, true),
        );
        let star = step(&mut partial, checker.star_min_given(g, randic, true));
        if star.hypothesis_held {
            let is_star = n == 1 || (g.m() == n - 1 && max_deg as usize == n - 1);
            if star.equality != is_star {
                partial.star_mismatches += 1;
            }
        }
        step(
            &mut partial,
            checker.half_order_given(g, randic, min_deg as usize),
        );
    });
    partial
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, cycle, path, star};
    use crate::graph6::{from_graph6, to_graph6};
    use crate::invariants::randic_index;
    use crate::matching::max_matching;

    #[test]
    fn shard_ranges_partition() {
        for total in [0u64, 1, 7, 64, 100] {
            for shards in [1usize, 3, 4, 16] {
                let ranges = shard_ranges(total, shards);
                assert_eq!(ranges.len(), shards);
                let mut expect = 0;
                for &(lo, hi) in &ranges {
                    assert_eq!(lo, expect);
                    assert!(hi >= lo);
                    expect = hi;
                }
                assert_eq!(expect, total);
            }
        }
    }

    #[test]
    fn gray_scan_covers_every_mask_once() {
        let pairs = pairs_in_graph6_order(4);
        let mut seen = [false; 64];
        scan_range(4, 0, 64, &pairs, |mask, bits| {
            assert!(!seen[mask as usize]);
            seen[mask as usize] = true;
            // bits stay consistent with the mask
            for (t, &(a, b)) in pairs.iter().enumerate() {
                let on = mask >> t & 1 == 1;
                assert_eq!(bits[a as usize] >> b & 1 == 1, on);
                assert_eq!(bits[b as usize] >> a & 1 == 1, on);
            }
        });
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn mask_graph6_matches_encoder() {
        let pairs = pairs_in_graph6_order(5);
        let mut wb = Workbench::new();
        scan_range(5, 0, 1 << 10, &pairs, |mask, bits| {
            wb.scratch.rebuild_from_bits(bits, 5);
            assert_eq!(mask_graph6(5, mask, pairs.len()), to_graph6(&wb.scratch));
        });
    }

    #[test]
    fn enumeration_counts() {
        // all labeled graphs on 3 vertices
        let stats = enumerate_graphs(3, Scope::All, Dedup::Labeled, |_| {}).unwrap();
        assert_eq!(stats.visited, 8);
        // connected graphs on 4 vertices up to isomorphism
        let stats = enumerate_graphs(4, Scope::Connected, Dedup::UpToIsomorphism, |_| {}).unwrap();
        assert_eq!(stats.visited, 6);
        // all graphs on 4 vertices up to isomorphism
        let stats = enumerate_graphs(4, Scope::All, Dedup::UpToIsomorphism, |_| {}).unwrap();
        assert_eq!(stats.visited, 11);
        // labeled connected counts for small n
        for (n, want) in [(1, 1u64), (2, 1), (3, 4), (4, 38), (5, 728)] {
            let stats = enumerate_graphs(n, Scope::Connected, Dedup::Labeled, |_| {}).unwrap();
            assert_eq!(stats.visited, want, "n={n}");
        }
        // census up to isomorphism, cross-checking the canonical form
        for (n, all, connected) in [(5usize, 34u64, 21u64), (6, 156, 112)] {
            let stats = enumerate_graphs(n, Scope::All, Dedup::UpToIsomorphism, |_| {}).unwrap();
            assert_eq!(stats.visited, all, "all classes at n={n}");
            let stats =
                enumerate_graphs(n, Scope::Connected, Dedup::UpToIsomorphism, |_| {}).unwrap();
            assert_eq!(stats.visited, connected, "connected classes at n={n}");
        }
        assert!(enumerate_graphs(9, Scope::All, Dedup::Labeled, |_| {}).is_err());
    }

    #[test]
    fn tree_enumeration_counts() {
        for (n, want) in [(1, 1u64), (2, 1), (3, 3), (4, 16), (5, 125), (6, 1296), (7, 16807)] {
            let mut all_trees = 0;
            let count = enumerate_labeled_trees(n, |g| {
                assert_eq!(g.m(), n - 1);
                assert!(g.is_connected());
                all_trees += 1;
            })
            .unwrap();
            assert_eq!(count, want, "n={n}");
            assert_eq!(all_trees, want);
        }
        assert!(enumerate_labeled_trees(10, |_| {}).is_err());
    }

    #[test]
    fn canonical_form_examples() {
        let c4a = cycle(4).unwrap();
        let c4b = from_graph6("Cl").unwrap(); // same cycle, another labeling
        let c4c = Graph::from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_form(&c4a).unwrap(), canonical_form(&c4c).unwrap());
        assert_eq!(canonical_form(&c4a).unwrap(), canonical_form(&c4b).unwrap());
        assert_ne!(
            canonical_form(&path(4).unwrap()).unwrap(),
            canonical_form(&star(4).unwrap()).unwrap()
        );
        // the 11 isomorphism classes on 4 vertices have 11 distinct forms
        let mut forms = HashSet::new();
        enumerate_graphs(4, Scope::All, Dedup::Labeled, |g| {
            forms.insert(canonical_form(g).unwrap());
        })
        .unwrap();
        assert_eq!(forms.len(), 11);
        // complete graphs collapse to a single state per level
        let k7 = complete(7).unwrap();
        assert_eq!(
            canonical_form(&k7).unwrap(),
            to_graph6(&k7).into_bytes()
        );
        assert!(canonical_form(&Graph::empty(13)).is_err());
    }

    #[test]
    fn canonical_form_agrees_with_brute_force() {
        fn brute(g: &Graph) -> Vec<u8> {
            let n = g.n();
            let mut perm: Vec<u32> = (0..n as u32).collect();
            let mut best: Option<String> = None;
            permute(&mut perm, 0, &mut |p| {
                let edges: Vec<(u32, u32)> = g
                    .edges()
                    .map(|(u, v)| (p[u as usize], p[v as usize]))
                    .collect();
                let h = Graph::from_edges(n, edges).unwrap();
                let s = to_graph6(&h);
                if best.as_ref().is_none_or(|b| s < *b) {
                    best = Some(s);
                }
            });
            best.unwrap().into_bytes()
        }
        fn permute(perm: &mut Vec<u32>, k: usize, f: &mut impl FnMut(&[u32])) {
            if k == perm.len() {
                f(perm);
                return;
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                permute(perm, k + 1, f);
                perm.swap(k, i);
            }
        }
        enumerate_graphs(4, Scope::All, Dedup::Labeled, |g| {
            assert_eq!(canonical_form(g).unwrap(), brute(g), "{}", to_graph6(g));
        })
        .unwrap();
        // spot checks at n = 5
        let mut count = 0;
        enumerate_graphs(5, Scope::Connected, Dedup::Labeled, |g| {
            count += 1;
            if count % 37 == 0 {
                assert_eq!(canonical_form(g).unwrap(), brute(g), "{}", to_graph6(g));
            }
        })
        .unwrap();
    }

    #[test]
    fn canonical_form_is_isomorphism_invariant_under_relabeling() {
        // petersen under a scrambled labeling
        let petersen = Graph::from_edges(
            10,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
            ],
        )
        .unwrap();
        let perm = [3u32, 7, 1, 9, 0, 4, 8, 2, 6, 5];
        let relabeled = Graph::from_edges(
            10,
            petersen
                .edges()
                .map(|(u, v)| (perm[u as usize], perm[v as usize])),
        )
        .unwrap();
        assert_eq!(
            canonical_form(&petersen).unwrap(),
            canonical_form(&relabeled).unwrap()
        );
    }

    #[test]
    fn scope_parsing_roundtrip() {
        for scope in [
            Scope::All,
            Scope::Connected,
            Scope::AllNoIsolated,
            Scope::Trees,
            Scope::Subcubic,
            Scope::NearlyPerfect,
            Scope::ExcessLe(2),
        ] {
            let text = scope.to_string();
            assert_eq!(text.parse::<Scope>().unwrap(), scope, "{text}");
        }
        assert_eq!("nearly_perfect".parse::<Scope>().unwrap(), Scope::NearlyPerfect);
        assert!("bogus".parse::<Scope>().is_err());
    }

    #[test]
    fn min_search_small() {
        let cfg = SearchConfig {
            n_max: 4,
            scope: Scope::Connected,
            shards: 2,
            progress: false,
        };
        let records = min_randic_by_matching(&cfg).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].k, 1);
        assert_eq!(records[0].best_randic, 1.0);
        assert_eq!(records[0].witness, "A_"); // K2
        assert!((records[0].ratio - 1.0).abs() < 1e-12);
        // k = 2 minimum on <= 4 vertices: triangle plus a pendant
        let witness = from_graph6(&records[1].witness).unwrap();
        assert_eq!(max_matching(&witness).size(), 2);
        assert!((records[1].best_randic - randic_index(&witness)).abs() < 1e-12);
        let paw = 2.0 / 6f64.sqrt() + 0.5 + 1.0 / 3f64.sqrt();
        assert!((records[1].best_randic - paw).abs() < 1e-12);
    }

    #[test]
    fn search_is_shard_invariant() {
        let mut outputs = Vec::new();
        for shards in [1usize, 4, 16] {
            let cfg = SearchConfig {
                n_max: 5,
                scope: Scope::Connected,
                shards,
                progress: false,
            };
            outputs.push(search_records_csv(&min_randic_by_matching(&cfg).unwrap()));
        }
        assert_eq!(outputs[0], outputs[1]);
        assert_eq!(outputs[0], outputs[2]);
    }

    #[test]
    fn search_scopes_differ_sensibly() {
        let base = SearchConfig {
            n_max: 5,
            scope: Scope::Connected,
            shards: 2,
            progress: false,
        };
        let connected = min_randic_by_matching(&base).unwrap();
        let all = min_randic_by_matching(&SearchConfig {
            scope: Scope::AllNoIsolated,
            ..base
        })
        .unwrap();
        // 2K2 (R = 2) does not beat the paw (R < 2) even without
        // connectivity, but the unconstrained scope can only do better
        for (c, a) in connected.iter().zip(&all) {
            assert_eq!(c.k, a.k);
            assert!(a.best_randic <= c.best_randic + 1e-12);
        }
        let trees = min_randic_by_matching(&SearchConfig {
            scope: Scope::Trees,
            ..base
        })
        .unwrap();
        for record in &trees {
            assert!(record.best_randic > record.k as f64 / 2f64.sqrt());
        }
    }

    #[test]
    fn search_minima_monotone_in_nmax() {
        let mut prev: Vec<Option<f64>> = vec![None; 4];
        for n_max in [4usize, 5, 6] {
            let records = min_randic_by_matching(&SearchConfig {
                n_max,
                scope: Scope::Connected,
                shards: 2,
                progress: false,
            })
            .unwrap();
            for r in &records {
                if let Some(Some(p)) = prev.get(r.k) {
                    assert!(r.best_randic <= p + 1e-12, "k={} grew", r.k);
                }
                if r.k < prev.len() {
                    prev[r.k] = Some(r.best_randic);
                }
            }
        }
    }

    #[test]
    fn search_nearly_perfect_cross_check() {
        let records = min_randic_by_matching(&SearchConfig {
            n_max: 6,
            scope: Scope::NearlyPerfect,
            shards: 2,
            progress: false,
        })
        .unwrap();
        assert!(!records.is_empty());
        for r in &records {
            let k = r.k as f64;
            let bound = 1.5 * k.powf(2.0 / 3.0) - (k / 2.0).sqrt();
            assert!(r.best_randic >= bound - 1e-9, "k={}", r.k);
        }
    }

    #[test]
    fn certify_small_clean() {
        let report = certify_all_bounds(&CertifyConfig {
            n_max: 5,
            shards: 3,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(report.graphs_checked, 1 + 1 + 4 + 38 + 728);
        assert!(report.is_clean(), "{report}");
        assert!(report.certificates.is_empty());
        // every graph except K1 (isolated vertex) meets the half-order
        // hypothesis
        let half = report
            .hypothesis_counts
            .iter()
            .find(|(id, _)| id == "half-order")
            .unwrap();
        assert_eq!(half.1, report.graphs_checked - 1);
    }

    #[test]
    fn certify_equality_classes_at_n6() {
        let report = certify_all_bounds(&CertifyConfig {
            n_max: 6,
            shards: 4,
            ..Default::default()
        })
        .unwrap();
        assert!(report.is_clean(), "{report}");
        // numeric equality occurs for K1 (vacuously, 0 = 0) and for the net
        // graph C3 ∘ K1
        let net = crate::constructions::corona_k1(&cycle(3).unwrap());
        let net_form = String::from_utf8(canonical_form(&net).unwrap()).unwrap();
        let k1_form = String::from_utf8(canonical_form(&Graph::empty(1)).unwrap()).unwrap();
        assert_eq!(report.subcubic_equality_classes, {
            let mut v = vec![k1_form, net_form];
            v.sort();
            v
        });
    }

    #[test]
    fn certify_detects_injected_fault() {
        let report = certify_all_bounds(&CertifyConfig {
            n_max: 6,
            shards: 2,
            subcubic_constant_override: Some(0.92),
            ..Default::default()
        })
        .unwrap();
        assert!(!report.certificates.is_empty());
        assert!(report
            .certificates
            .iter()
            .all(|row| row.bound_id == "subcubic"));
        // the injected fault must flag the exact equality family
        assert!(report
            .certificates
            .iter()
            .any(|row| from_graph6(&row.graph6).unwrap().n() == 6));
    }

    #[test]
    fn certify_is_shard_invariant() {
        let a = certify_all_bounds(&CertifyConfig {
            n_max: 5,
            shards: 1,
            ..Default::default()
        })
        .unwrap();
        let b = certify_all_bounds(&CertifyConfig {
            n_max: 5,
            shards: 7,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(a.graphs_checked, b.graphs_checked);
        assert_eq!(a.checks_run, b.checks_run);
        assert_eq!(a.hypothesis_counts, b.hypothesis_counts);
        assert_eq!(a.subcubic_equality_classes, b.subcubic_equality_classes);
    }

    #[test]
    fn search_record_csv_shape() {
        let records = min_randic_by_matching(&SearchConfig {
            n_max: 3,
            scope: Scope::Connected,
            shards: 1,
            progress: false,
        })
        .unwrap();
        let csv = search_records_csv(&records);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), SEARCH_CSV_HEADER);
        let first = lines.next().unwrap();
        assert!(first.starts_with("1,connected,3,1.000000000000,1.000000000000,"));
    }
}

