//! Generators for the named graph families, each with a fixed, documented
//! vertex layout so traces and goldens are reproducible, plus closed-form
//! Randic values where one is known.

use std::fmt;
use std::str::FromStr;

use crate::graph::Graph;
use crate::{Error, Result};

/// Star `K_{1,n-1}`: center 0, leaves `1..n`.
pub fn star(n: u64) -> Result<Graph> {
    require(n >= 1, "star needs n >= 1")?;
    Graph::from_edges(n as usize, (1..n as u32).map(|v| (0, v)))
}

/// Path on vertices `0 - 1 - ... - n-1`.
pub fn path(n: u64) -> Result<Graph> {
    require(n >= 1, "path needs n >= 1")?;
    Graph::from_edges(n as usize, (1..n as u32).map(|v| (v - 1, v)))
}

/// Cycle `0 - 1 - ... - n-1 - 0`.
pub fn cycle(n: u64) -> Result<Graph> {
    require(n >= 3, "cycle needs n >= 3")?;
    Graph::from_edges(n as usize, (0..n as u32).map(|v| (v, (v + 1) % n as u32)))
}

/// Complete graph on `n` vertices.
pub fn complete(n: u64) -> Result<Graph> {
    require(n >= 1, "complete needs n >= 1")?;
    let n = n as u32;
    Graph::from_edges(
        n as usize,
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))),
    )
}

/// Complete bipartite graph with classes `0..p` and `p..p+q`.
pub fn complete_bipartite(p: u64, q: u64) -> Result<Graph> {
    require(p + q >= 1, "complete_bipartite needs p + q >= 1")?;
    let (p, q) = (p as u32, q as u32);
    Graph::from_edges(
        (p + q) as usize,
        (0..p).flat_map(|i| (p..p + q).map(move |j| (i, j))),
    )
}

/// Edgeless graph on `n` vertices (`n = 0` allowed).
pub fn empty(n: u64) -> Graph {
    Graph::empty(n as usize)
}

/// Broken windmill `BW(a, b)`: `a + b` independent edges plus a hub adjacent
/// to both ends of `a` of them and to one end of the other `b`.
///
/// Layout: hub is vertex 0; the `a` triangle pairs are `(1+2i, 2+2i)`; the
/// `b` pendant-edge pairs follow as `(2a+1+2j, 2a+2+2j)` with the
/// hub-adjacent end first.
pub fn broken_windmill(a: u64, b: u64) -> Result<Graph> {
    require(a + b >= 1, "broken_windmill needs a + b >= 1")?;
    let mut edges = Vec::new();
    for i in 0..a as u32 {
        let (x, y) = (1 + 2 * i, 2 + 2 * i);
        edges.extend([(x, y), (0, x), (0, y)]);
    }
    let base = 2 * a as u32;
    for j in 0..b as u32 {
        let (x, y) = (base + 1 + 2 * j, base + 2 + 2 * j);
        edges.extend([(x, y), (0, x)]);
    }
    Graph::from_edges((2 * a + 2 * b + 1) as usize, edges)
}

/// Closed-form Randic index of `BW(a, b)`:
/// `a/2 + b/sqrt(2) + sqrt(2a + b)/sqrt(2)`.
pub fn bw_randic_closed_form(a: u64, b: u64) -> f64 {
    let (a, b) = (a as f64, b as f64);
    a / 2.0 + b / 2f64.sqrt() + (2.0 * a + b).sqrt() / 2f64.sqrt()
}

/// The smallest `a` for which `BW(a, b)` with `b = (n-1)/2 - a` drops below
/// the tree bound at a given odd order `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BwViolation {
    pub a: u64,
    pub b: u64,
    /// The real threshold that `a` must strictly exceed.
    pub threshold: f64,
}

/// Solves `a > 3 + sqrt(8) + sqrt((3 + sqrt(8)) n + 14 + 5 sqrt(8))` for the
/// smallest integer `a`, pairing it with `b = (n-1)/2 - a`. For every odd
/// `n >= 49` the resulting `BW(a, b)` satisfies
/// `R(BW(a, b)) < (a + b)/sqrt(2)`; smaller odd orders leave `b < 0`, which
/// is reported as an error rather than clamped.
pub fn bw_violation_threshold(n: u64) -> Result<BwViolation> {
    require(n >= 3 && n % 2 == 1, "threshold needs odd n >= 3")?;
    let s8 = 8f64.sqrt();
    let threshold = 3.0 + s8 + ((3.0 + s8) * n as f64 + 14.0 + 5.0 * s8).sqrt();
    let a = threshold.floor() as u64 + 1;
    let half = (n - 1) / 2;
    if a > half {
        return Err(Error::NoValidB { n, a });
    }
    Ok(BwViolation {
        a,
        b: half - a,
        threshold,
    })
}

/// Generalized windmill `Wm(k, r)`: the complete bipartite graph
/// `K_{2(k-r), 2r+1}` plus a perfect matching on the even class; `Wm(k, 0)`
/// is the windmill of `k` triangles sharing a vertex. Order is `2k + 1`.
///
/// Layout: the even class comes first with matching pairs `(2i, 2i+1)`,
/// the `2r + 1` center vertices follow.
pub fn generalized_windmill(k: u64, r: u64) -> Result<Graph> {
    require(k > r, "generalized_windmill needs k > r >= 0")?;
    let even = 2 * (k - r) as u32;
    let centers = (2 * r + 1) as u32;
    let mut edges = Vec::new();
    for i in 0..k as u32 - r as u32 {
        edges.push((2 * i, 2 * i + 1));
    }
    for u in 0..even {
        for c in 0..centers {
            edges.push((u, even + c));
        }
    }
    Graph::from_edges((2 * k + 1) as usize, edges)
}

/// Windmill of `k` triangles sharing a vertex.
pub fn windmill(k: u64) -> Result<Graph> {
    generalized_windmill(k, 0)
}

/// Closed-form Randic index of `Wm(k, r)`:
/// `(k-r)/(2r+2) + (2r+1)(2k-2r)/sqrt((2r+2)(2k-2r))`.
pub fn gw_randic_closed_form(k: u64, r: u64) -> f64 {
    let (k, r) = (k as f64, r as f64);
    (k - r) / (2.0 * r + 2.0)
        + (2.0 * r + 1.0) * (2.0 * k - 2.0 * r) / ((2.0 * r + 2.0) * (2.0 * k - 2.0 * r)).sqrt()
}

/// Corona product `H ∘ K_1`: one new pendant vertex per vertex of `h`; the
/// pendant of vertex `i` is `h.n() + i`.
pub fn corona_k1(h: &Graph) -> Graph {
    let n = h.n() as u32;
    let edges: Vec<(u32, u32)> = h
        .edges()
        .chain((0..n).map(|v| (v, n + v)))
        .collect();
    Graph::from_edges(2 * n as usize, edges).expect("corona preserves validity")
}

/// The non-hereditary sparse family: `K_{a,b}` with one extra leaf on every
/// vertex of degree `a` and `2b` extra leaves on every vertex of degree `b`.
/// Has `(3a+1)b` edges and `a + 2ab + 2b` vertices.
///
/// Layout: the `a`-class is `0..a`, the `b`-class `a..a+b`, then the `b`
/// single leaves in class order, then the `2ab` leaves grouped by `a`-class
/// vertex.
pub fn sparse_counterexample(a: u64, b: u64) -> Result<Graph> {
    require(a >= 1 && b >= 1, "sparse_counterexample needs a, b >= 1")?;
    let (a, b) = (a as u32, b as u32);
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    let mut next = a + 2 * b; // first id past K_{a,b} and the b single leaves
    for j in 0..b {
        edges.push((a + j, a + b + j));
    }
    for i in 0..a {
        for _ in 0..2 * b {
            edges.push((i, next));
            next += 1;
        }
    }
    Graph::from_edges(next as usize, edges)
}

/// Closed-form Randic index of [`sparse_counterexample`]:
/// `b/sqrt(a+1) + ab/sqrt(3b(a+1)) + 2ab/sqrt(3b)`.
pub fn sparse_counterexample_randic_closed_form(a: u64, b: u64) -> f64 {
    let (a, b) = (a as f64, b as f64);
    b / (a + 1.0).sqrt() + a * b / (3.0 * b * (a + 1.0)).sqrt() + 2.0 * a * b / (3.0 * b).sqrt()
}

/// Join of `l` independent edges with the empty graph on `r - 1` vertices.
/// Every matched vertex ends with degree `r`, every empty-class vertex with
/// degree `2l`.
pub fn join_edges_empty(l: u64, r: u64) -> Result<Graph> {
    require(l >= 1 && r >= 2, "join_edges_empty needs l >= 1, r >= 2")?;
    let pairs = Graph::from_edges(
        2 * l as usize,
        (0..l as u32).map(|i| (2 * i, 2 * i + 1)),
    )?;
    Ok(pairs.join(&Graph::empty(r as usize - 1)))
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.to_string()))
    }
}

/// A parsed construction request, e.g. `bw(3,2)` or `corona_k1(cycle(5))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionSpec {
    Star(u64),
    Path(u64),
    Cycle(u64),
    Complete(u64),
    CompleteBipartite(u64, u64),
    Empty(u64),
    BrokenWindmill(u64, u64),
    Windmill(u64),
    GeneralizedWindmill(u64, u64),
    CoronaK1(Box<ConstructionSpec>),
    SparseCounterexample(u64, u64),
    JoinEdgesEmpty(u64, u64),
}

impl ConstructionSpec {
    /// Builds the graph this spec describes.
    pub fn build(&self) -> Result<Graph> {
        use ConstructionSpec::*;
        match *self {
            Star(n) => star(n),
            Path(n) => path(n),
            Cycle(n) => cycle(n),
            Complete(n) => complete(n),
            CompleteBipartite(p, q) => complete_bipartite(p, q),
            Empty(n) => Ok(empty(n)),
            BrokenWindmill(a, b) => broken_windmill(a, b),
            Windmill(k) => windmill(k),
            GeneralizedWindmill(k, r) => generalized_windmill(k, r),
            CoronaK1(ref inner) => Ok(corona_k1(&inner.build()?)),
            SparseCounterexample(a, b) => sparse_counterexample(a, b),
            JoinEdgesEmpty(l, r) => join_edges_empty(l, r),
        }
    }

    /// Known closed-form Randic value of the family, where one exists.
    pub fn closed_form_randic(&self) -> Option<f64> {
        use ConstructionSpec::*;
        match *self {
            Star(n) => Some(((n - 1) as f64).sqrt()),
            Path(1) => Some(0.0),
            Path(2) => Some(1.0),
            Path(n) => Some(n as f64 / 2.0 + 2f64.sqrt() - 1.5),
            Cycle(n) | Complete(n) => Some(n as f64 / 2.0),
            CompleteBipartite(p, q) => Some(((p * q) as f64).sqrt()),
            Empty(_) => Some(0.0),
            BrokenWindmill(a, b) => Some(bw_randic_closed_form(a, b)),
            Windmill(k) => Some(gw_randic_closed_form(k, 0)),
            GeneralizedWindmill(k, r) => Some(gw_randic_closed_form(k, r)),
            SparseCounterexample(a, b) => Some(sparse_counterexample_randic_closed_form(a, b)),
            CoronaK1(_) | JoinEdgesEmpty(..) => None,
        }
    }
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ConstructionSpec::*;
        match self {
            Star(n) => write!(f, "star({n})"),
            Path(n) => write!(f, "path({n})"),
            Cycle(n) => write!(f, "cycle({n})"),
            Complete(n) => write!(f, "complete({n})"),
            CompleteBipartite(p, q) => write!(f, "complete_bipartite({p},{q})"),
            Empty(n) => write!(f, "empty({n})"),
            BrokenWindmill(a, b) => write!(f, "bw({a},{b})"),
            Windmill(k) => write!(f, "windmill({k})"),
            GeneralizedWindmill(k, r) => write!(f, "gw({k},{r})"),
            CoronaK1(inner) => write!(f, "corona_k1({inner})"),
            SparseCounterexample(a, b) => write!(f, "sparse_counterexample({a},{b})"),
            JoinEdgesEmpty(l, r) => write!(f, "join_edges_empty({l},{r})"),
        }
    }
}

impl FromStr for ConstructionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (spec, rest) = parse_spec(s.trim())?;
        if !rest.trim().is_empty() {
            return Err(Error::Spec(format!("trailing input: {rest:?}")));
        }
        Ok(spec)
    }
}

fn parse_spec(s: &str) -> Result<(ConstructionSpec, &str)> {
    let s = s.trim_start();
    let name_len = s
        .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .unwrap_or(s.len());
    let name = &s[..name_len];
    if name.is_empty() {
        return Err(Error::Spec("expected a family name".into()));
    }
    let rest = s[name_len..].trim_start();
    let Some(rest) = rest.strip_prefix('(') else {
        return Err(Error::Spec(format!("expected '(' after {name:?}")));
    };
    use ConstructionSpec::*;
    if name == "corona_k1" {
        let (inner, rest) = parse_spec(rest)?;
        let rest = rest
            .trim_start()
            .strip_prefix(')')
            .ok_or_else(|| Error::Spec("missing ')'".into()))?;
        return Ok((CoronaK1(Box::new(inner)), rest));
    }
    let close = rest
        .find(')')
        .ok_or_else(|| Error::Spec("missing ')'".into()))?;
    let args: Vec<u64> = rest[..close]
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| Error::Spec(format!("bad integer {:?}", p.trim())))
        })
        .collect::<Result<_>>()?;
    let one = |f: fn(u64) -> ConstructionSpec| {
        if args.len() == 1 {
            Ok(f(args[0]))
        } else {
            Err(Error::Spec(format!("{name} takes 1 parameter")))
        }
    };
    let two = |f: fn(u64, u64) -> ConstructionSpec| {
        if args.len() == 2 {
            Ok(f(args[0], args[1]))
        } else {
            Err(Error::Spec(format!("{name} takes 2 parameters")))
        }
    };
    let spec = match name {
        "star" => one(Star)?,
        "path" => one(Path)?,
        "cycle" => one(Cycle)?,
        "complete" => one(Complete)?,
        "complete_bipartite" => two(CompleteBipartite)?,
        "empty" => one(Empty)?,
        "bw" | "broken_windmill" => two(BrokenWindmill)?,
        "windmill" => one(Windmill)?,
        "gw" | "wm" | "generalized_windmill" => two(GeneralizedWindmill)?,
        "sparse_counterexample" => two(SparseCounterexample)?,
        "join_edges_empty" => two(JoinEdgesEmpty)?,
        _ => return Err(Error::Spec(format!("unknown family {name:?}"))),
    };
    Ok((spec, &rest[close + 1..]))
}
