//! Elementary d-homotopies between vertex maps, zig-zag chains of them, and
//! the (rather) inessential endomaps they certify.
//!
//! A future witness `f -> g` assigns to every source vertex v a path
//! `w(v): f(v) -> g(v)` such that for each edge `e: a -> b`
//! `f(e) . w(b) ~ w(a) . g(e)`. A past witness `f -> g` is a future witness
//! `g -> f` with the same paths.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{is_psp_unchecked, require_admissible, AdmissibleMap, EnumOptions, MapFile};
use crate::complex::Vertex;
use crate::error::{Error, Result};
use crate::paths::{ClassId, EdgePath, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Future,
    Past,
}

/// Flavour of d-homotopy: future (`+`), past (`-`) or neutral zig-zag (`0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alpha {
    Future,
    Past,
    Neutral,
}

impl Alpha {
    pub const ALL: [Alpha; 3] = [Alpha::Future, Alpha::Past, Alpha::Neutral];
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alpha::Future => "+",
            Alpha::Past => "-",
            Alpha::Neutral => "0",
        })
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "future" => Ok(Alpha::Future),
            "-" | "past" => Ok(Alpha::Past),
            "0" | "neutral" => Ok(Alpha::Neutral),
            _ => Err(Error::Parameter(format!("alpha must be +, - or 0, got `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub direction: Direction,
    pub from: AdmissibleMap,
    pub to: AdmissibleMap,
    pub w: Vec<EdgePath>,
}

impl HomotopyWitness {
    /// The maps at the start and end of the paths `w(v)`.
    pub fn lo_hi(&self) -> (&AdmissibleMap, &AdmissibleMap) {
        match self.direction {
            Direction::Future => (&self.from, &self.to),
            Direction::Past => (&self.to, &self.from),
        }
    }

    /// The same homotopy read backwards.
    pub fn reversed(&self) -> HomotopyWitness {
        HomotopyWitness {
            direction: match self.direction {
                Direction::Future => Direction::Past,
                Direction::Past => Direction::Future,
            },
            from: self.to.clone(),
            to: self.from.clone(),
            w: self.w.clone(),
        }
    }

    /// Whiskering on the right: a witness between `from ∘ p` and `to ∘ p`.
    pub fn precompose(&self, p: &AdmissibleMap) -> HomotopyWitness {
        HomotopyWitness {
            direction: self.direction,
            from: self.from.after(p),
            to: self.to.after(p),
            w: p.vertices.iter().map(|v| self.w[v.0 as usize].clone()).collect(),
        }
    }

    /// Whiskering on the left: a witness between `q ∘ from` and `q ∘ to`,
    /// where `q: Y -> Z`.
    pub fn postcompose(&self, y: &Space, z: &Space, q: &AdmissibleMap) -> Option<HomotopyWitness> {
        let w = self
            .w
            .iter()
            .map(|p| {
                let edges = q.image_edges(&y.complex, &z.complex, &p.edges)?;
                Some(EdgePath { src: q.apply(p.src), tgt: q.apply(p.tgt), edges })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(HomotopyWitness { direction: self.direction, from: q.after(&self.from), to: q.after(&self.to), w })
    }

    /// Vertical composition of two future (or two past) witnesses
    /// `f -> g -> h` into one `f -> h`.
    pub fn then(&self, next: &HomotopyWitness) -> Option<HomotopyWitness> {
        if self.direction != next.direction || self.to != next.from {
            return None;
        }
        let w = self
            .w
            .iter()
            .zip(&next.w)
            .map(|(a, b)| match self.direction {
                Direction::Future => a.concat(b),
                Direction::Past => b.concat(a),
            })
            .collect::<Result<Vec<_>>>()
            .ok()?;
        Some(HomotopyWitness { direction: self.direction, from: self.from.clone(), to: next.to.clone(), w })
    }

    pub fn to_file(&self, y: &Space, x: &Space) -> WitnessFile {
        WitnessFile {
            direction: self.direction,
            w: x.complex
                .vertices()
                .map(|v| {
                    let p = &self.w[v.0 as usize];
                    (
                        x.complex.vertex_id(v).to_string(),
                        p.edges.iter().map(|&e| y.complex.edge_id(e).to_string()).collect(),
                    )
                })
                .collect(),
        }
    }

    pub fn from_file(x: &Space, y: &Space, from: AdmissibleMap, to: AdmissibleMap, file: &WitnessFile) -> Result<Self> {
        let lo = match file.direction {
            Direction::Future => &from,
            Direction::Past => &to,
        };
        let w = x
            .complex
            .vertices()
            .map(|v| {
                let id = x.complex.vertex_id(v);
                let edges = file
                    .w
                    .get(id)
                    .ok_or_else(|| Error::MalformedWitness { vertex: id.into(), reason: "no path given".into() })?
                    .iter()
                    .map(|e| y.complex.edge(e))
                    .collect::<Result<Vec<_>>>()?;
                EdgePath::from_edges(&y.complex, lo.apply(v), edges).ok_or_else(|| Error::MalformedWitness {
                    vertex: id.into(),
                    reason: "edges do not form a path from the image vertex".into(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(HomotopyWitness { direction: file.direction, from, to, w })
    }
}

/// On-disk witness: `{"direction": "future"|"past", "w": {v: [edge ids]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub direction: Direction,
    pub w: BTreeMap<String, Vec<String>>,
}

/// Endpoint and naturality conditions. Errors name the first vertex whose
/// path has the wrong endpoints.
pub fn check_witness(x: &Space, y: &Space, h: &HomotopyWitness) -> Result<bool> {
    require_admissible(x, y, &h.from)?;
    require_admissible(x, y, &h.to)?;
    let (lo, hi) = h.lo_hi();
    if h.w.len() != x.complex.num_vertices() {
        return Err(Error::MalformedWitness { vertex: "*".into(), reason: "wrong number of paths".into() });
    }
    for v in x.complex.vertices() {
        let p = &h.w[v.0 as usize];
        let valid = EdgePath::from_edges(&y.complex, p.src, p.edges.clone()).is_some_and(|q| q.tgt == p.tgt);
        if !valid || p.src != lo.apply(v) || p.tgt != hi.apply(v) {
            return Err(Error::MalformedWitness {
                vertex: x.complex.vertex_id(v).into(),
                reason: format!(
                    "path must run {} -> {}",
                    y.complex.vertex_id(lo.apply(v)),
                    y.complex.vertex_id(hi.apply(v))
                ),
            });
        }
    }
    let classes: Option<Vec<ClassId>> = h.w.iter().map(|p| y.table.class_of(p)).collect();
    let Some(classes) = classes else { return Ok(false) };
    Ok(natural(x, y, lo, hi, &classes))
}

struct EdgeData {
    a: usize,
    b: usize,
    lo: ClassId,
    hi: ClassId,
}

fn edge_data(x: &Space, y: &Space, lo: &AdmissibleMap, hi: &AdmissibleMap) -> Option<Vec<EdgeData>> {
    let (xc, yc) = (&x.complex, &y.complex);
    xc.edges()
        .map(|e| {
            let (a, b) = (xc.src(e), xc.tgt(e));
            let cls = |m: &AdmissibleMap| {
                let img = m.image_edges(xc, yc, &[e])?;
                y.table.class_of_edges(m.apply(a), &img)
            };
            Some(EdgeData { a: a.0 as usize, b: b.0 as usize, lo: cls(lo)?, hi: cls(hi)? })
        })
        .collect()
}

fn natural(x: &Space, y: &Space, lo: &AdmissibleMap, hi: &AdmissibleMap, w: &[ClassId]) -> bool {
    let Some(edges) = edge_data(x, y, lo, hi) else { return false };
    let t = &y.table;
    edges.iter().all(|d| {
        let left = t.compose(d.lo, w[d.b]);
        left.is_some() && left == t.compose(w[d.a], d.hi)
    })
}

/// Searches a future witness `lo -> hi`, returning the class chosen for each
/// vertex. The first solution in canonical order is returned.
pub fn find_witness(x: &Space, y: &Space, lo: &AdmissibleMap, hi: &AdmissibleMap) -> Option<Vec<ClassId>> {
    let xc = &x.complex;
    let n = xc.num_vertices();
    let domains: Vec<Vec<ClassId>> = xc.vertices().map(|v| y.table.pair(lo.apply(v), hi.apply(v)).collect()).collect();
    if domains.iter().any(Vec::is_empty) {
        return None;
    }
    let edges = edge_data(x, y, lo, hi)?;

    // Breadth-first vertex order so each new vertex meets assigned neighbours.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, d) in edges.iter().enumerate() {
        adj[d.a].push(k);
        adj[d.b].push(k);
    }
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &k in &adj[v] {
                let u = if edges[k].a == v { edges[k].b } else { edges[k].a };
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut pos = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    // Edges checked once both endpoints are assigned.
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, d) in edges.iter().enumerate() {
        due[pos[d.a].max(pos[d.b])].push(k);
    }

    let t = &y.table;
    let mut w: Vec<ClassId> = vec![ClassId(0); n];
    fn go(
        step: usize,
        order: &[usize],
        domains: &[Vec<ClassId>],
        due: &[Vec<usize>],
        edges: &[EdgeData],
        t: &crate::paths::ClassTable,
        w: &mut Vec<ClassId>,
    ) -> bool {
        if step == order.len() {
            return true;
        }
        let v = order[step];
        for &c in &domains[v] {
            w[v] = c;
            let ok = due[step].iter().all(|&k| {
                let d = &edges[k];
                let left = t.compose(d.lo, w[d.b]);
                left.is_some() && left == t.compose(w[d.a], d.hi)
            });
            if ok && go(step + 1, order, domains, due, edges, t, w) {
                return true;
            }
        }
        false
    }
    go(0, &order, &domains, &due, &edges, t, &mut w).then_some(w)
}

/// Builds a verified witness of the given direction from `from` to `to`.
pub fn witness(
    x: &Space,
    y: &Space,
    direction: Direction,
    from: &AdmissibleMap,
    to: &AdmissibleMap,
) -> Option<HomotopyWitness> {
    let (lo, hi) = match direction {
        Direction::Future => (from, to),
        Direction::Past => (to, from),
    };
    let classes = find_witness(x, y, lo, hi)?;
    Some(HomotopyWitness {
        direction,
        from: from.clone(),
        to: to.clone(),
        w: classes.iter().map(|&c| y.table.representative(c)).collect(),
    })
}

/// A zig-zag `maps[0] ~ maps[1] ~ ... ~ maps[k]`; `steps[i]` links
/// `maps[i]` to `maps[i + 1]`. `psp[i]` records whether `maps[i]` is psp.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessChain {
    pub maps: Vec<AdmissibleMap>,
    pub steps: Vec<HomotopyWitness>,
    pub psp: Vec<bool>,
}

impl WitnessChain {
    pub fn trivial(x: &Space, y: &Space, f: &AdmissibleMap) -> Self {
        WitnessChain { maps: vec![f.clone()], steps: Vec::new(), psp: vec![is_psp_unchecked(x, y, f)] }
    }

    fn from_steps(x: &Space, y: &Space, start: &AdmissibleMap, steps: Vec<HomotopyWitness>) -> Self {
        let mut maps = vec![start.clone()];
        maps.extend(steps.iter().map(|s| s.to.clone()));
        let psp = maps.iter().map(|m| is_psp_unchecked(x, y, m)).collect();
        WitnessChain { maps, steps, psp }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn start(&self) -> &AdmissibleMap {
        &self.maps[0]
    }

    pub fn end(&self) -> &AdmissibleMap {
        self.maps.last().unwrap()
    }

    pub fn all_psp(&self) -> bool {
        self.psp.iter().all(|&b| b)
    }

    /// Uniform chains of one direction only.
    pub fn direction(&self) -> Option<Direction> {
        let first = self.steps.first()?.direction;
        self.steps.iter().all(|s| s.direction == first).then_some(first)
    }

    /// Does this chain certify the flavour `alpha` (every step of that
    /// direction for `+`/`-`, anything for `0`)?
    pub fn has_flavour(&self, alpha: Alpha) -> bool {
        match alpha {
            Alpha::Neutral => true,
            Alpha::Future => self.steps.iter().all(|s| s.direction == Direction::Future),
            Alpha::Past => self.steps.iter().all(|s| s.direction == Direction::Past),
        }
    }

    pub fn reversed(&self) -> WitnessChain {
        WitnessChain {
            maps: self.maps.iter().rev().cloned().collect(),
            steps: self.steps.iter().rev().map(HomotopyWitness::reversed).collect(),
            psp: self.psp.iter().rev().copied().collect(),
        }
    }

    pub fn concat(&self, next: &WitnessChain) -> Option<WitnessChain> {
        if self.end() != next.start() {
            return None;
        }
        let mut out = self.clone();
        out.maps.extend(next.maps[1..].iter().cloned());
        out.steps.extend(next.steps.iter().cloned());
        out.psp.extend(next.psp[1..].iter().copied());
        Some(out)
    }

    pub fn precompose(&self, x: &Space, y: &Space, p: &AdmissibleMap) -> WitnessChain {
        let steps = self.steps.iter().map(|s| s.precompose(p)).collect();
        WitnessChain::from_steps(x, y, &self.start().after(p), steps)
    }

    /// `q ∘ chain` for `q: Y -> Z`; psp flags are recomputed in `Z`.
    pub fn postcompose(&self, x: &Space, y: &Space, z: &Space, q: &AdmissibleMap) -> Option<WitnessChain> {
        let steps = self.steps.iter().map(|s| s.postcompose(y, z, q)).collect::<Option<Vec<_>>>()?;
        Some(WitnessChain::from_steps(x, z, &q.after(self.start()), steps))
    }

    /// Validates every step and recomputes the psp flags.
    pub fn verify(&self, x: &Space, y: &Space) -> Result<bool> {
        if self.maps.len() != self.steps.len() + 1 || self.psp.len() != self.maps.len() {
            return Ok(false);
        }
        for (k, s) in self.steps.iter().enumerate() {
            if s.from != self.maps[k] || s.to != self.maps[k + 1] || !check_witness(x, y, s)? {
                return Ok(false);
            }
        }
        for m in &self.maps {
            require_admissible(x, y, m)?;
        }
        Ok(self.maps.iter().zip(&self.psp).all(|(m, &p)| is_psp_unchecked(x, y, m) == p))
    }

    pub fn to_file(&self, x: &Space, y: &Space) -> ChainFile {
        ChainFile {
            maps: self.maps.iter().map(|m| m.to_file(&x.complex, &y.complex)).collect(),
            steps: self.steps.iter().map(|s| s.to_file(y, x)).collect(),
            psp: self.psp.clone(),
        }
    }

    pub fn from_file(x: &Space, y: &Space, file: &ChainFile) -> Result<Self> {
        let maps = file
            .maps
            .iter()
            .map(|m| AdmissibleMap::from_file(&x.complex, &y.complex, m))
            .collect::<Result<Vec<_>>>()?;
        if maps.is_empty() || maps.len() != file.steps.len() + 1 {
            return Err(Error::Certificate("chain needs one more map than steps".into()));
        }
        let steps = file
            .steps
            .iter()
            .enumerate()
            .map(|(k, s)| HomotopyWitness::from_file(x, y, maps[k].clone(), maps[k + 1].clone(), s))
            .collect::<Result<Vec<_>>>()?;
        Ok(WitnessChain { maps, steps, psp: file.psp.clone() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainFile {
    pub maps: Vec<MapFile>,
    pub steps: Vec<WitnessFile>,
    pub psp: Vec<bool>,
}

/// Outcome of a search that may run out of room.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<C> {
    Proved(C),
    /// The whole finite search space was exhausted.
    Refuted,
    /// Not found within the given depth or budget.
    Undecided(String),
}

impl<C> Verdict<C> {
    pub fn holds(&self) -> Option<bool> {
        match self {
            Verdict::Proved(_) => Some(true),
            Verdict::Refuted => Some(false),
            Verdict::Undecided(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&C> {
        match self {
            Verdict::Proved(c) => Some(c),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Verdict::Proved(_) => "true".into(),
            Verdict::Refuted => "false (exhaustive)".into(),
            Verdict::Undecided(why) => format!("inconclusive ({why})"),
        }
    }
}

// Maps n with a single witness to or from m, in canonical order: first the
// future neighbours, then the past ones.
fn neighbours(
    x: &Space,
    y: &Space,
    m: &AdmissibleMap,
    psp_only: bool,
    budget: Option<u64>,
) -> Result<(Vec<(AdmissibleMap, Direction)>, u64)> {
    let t = &y.table;
    let ny = y.complex.num_vertices();
    let mut out = Vec::new();
    let mut explored = 0;
    for dir in [Direction::Future, Direction::Past] {
        let allowed = x
            .complex
            .vertices()
            .map(|v| {
                let fv = m.apply(v);
                (0..ny as u32)
                    .map(|w| match dir {
                        Direction::Future => t.reaches(fv, Vertex(w)),
                        Direction::Past => t.reaches(Vertex(w), fv),
                    })
                    .collect()
            })
            .collect();
        let opts = EnumOptions { budget: budget.map(|b| b.saturating_sub(explored)), psp_only, allowed: Some(allowed) };
        let e = super::enumerate_maps(x, y, &opts)?;
        explored += e.explored;
        for n in e.maps {
            if &n == m {
                continue;
            }
            let ok = match dir {
                Direction::Future => find_witness(x, y, m, &n).is_some(),
                Direction::Past => find_witness(x, y, &n, m).is_some(),
            };
            if ok {
                out.push((n, dir));
            }
        }
    }
    Ok((out, explored))
}

/// Breadth-first exploration of the zig-zag component of `start`.
struct Component {
    members: Vec<AdmissibleMap>,
    index: HashMap<AdmissibleMap, usize>,
    parent: Vec<Option<(usize, Direction)>>,
    depth: Vec<usize>,
    /// No unexplored frontier remains.
    closed: bool,
    explored: u64,
    stop_reason: Option<String>,
}

impl Component {
    fn explore(
        x: &Space,
        y: &Space,
        start: &AdmissibleMap,
        psp_only: bool,
        max_depth: Option<usize>,
        budget: Option<u64>,
        target: Option<&AdmissibleMap>,
    ) -> Component {
        let mut c = Component {
            members: vec![start.clone()],
            index: HashMap::from([(start.clone(), 0)]),
            parent: vec![None],
            depth: vec![0],
            closed: false,
            explored: 0,
            stop_reason: None,
        };
        let mut next = 0;
        while next < c.members.len() {
            if target.is_some_and(|t| c.index.contains_key(t)) {
                return c;
            }
            if max_depth.is_some_and(|d| c.depth[next] >= d) {
                c.stop_reason = Some(format!("depth {}", max_depth.unwrap()));
                return c;
            }
            let m = c.members[next].clone();
            match neighbours(x, y, &m, psp_only, budget.map(|b| b.saturating_sub(c.explored))) {
                Ok((ns, explored)) => {
                    c.explored += explored;
                    for (n, dir) in ns {
                        if !c.index.contains_key(&n) {
                            c.index.insert(n.clone(), c.members.len());
                            c.members.push(n);
                            c.parent.push(Some((next, dir)));
                            c.depth.push(c.depth[next] + 1);
                        }
                    }
                }
                Err(Error::Budget { explored, .. }) => {
                    c.explored += explored;
                    c.stop_reason = Some(format!("budget exhausted after {} nodes", c.explored));
                    return c;
                }
                Err(e) => panic!("unexpected error during neighbour search: {e}"),
            }
            next += 1;
        }
        c.closed = true;
        c
    }

    fn chain_to(&self, x: &Space, y: &Space, k: usize) -> WitnessChain {
        let mut steps = Vec::new();
        let mut at = k;
        while let Some((p, dir)) = self.parent[at] {
            steps.push(witness(x, y, dir, &self.members[p], &self.members[at]).expect("recorded edge has a witness"));
            at = p;
        }
        steps.reverse();
        WitnessChain::from_steps(x, y, &self.members[0], steps)
    }
}

/// Zig-zag (or single-step for `+`/`-`) chain from `f` to `g` through
/// admissible maps, within `depth` steps.
pub fn find_witness_chain(
    x: &Space,
    y: &Space,
    f: &AdmissibleMap,
    g: &AdmissibleMap,
    alpha: Alpha,
    depth: usize,
) -> Result<Option<WitnessChain>> {
    if depth == 0 {
        return Err(Error::Parameter("depth must be positive".into()));
    }
    require_admissible(x, y, f)?;
    require_admissible(x, y, g)?;
    if f == g {
        return Ok(Some(WitnessChain::trivial(x, y, f)));
    }
    let single = |dir| witness(x, y, dir, f, g).map(|s| WitnessChain::from_steps(x, y, f, vec![s]));
    Ok(match alpha {
        Alpha::Future => single(Direction::Future),
        Alpha::Past => single(Direction::Past),
        Alpha::Neutral => {
            let c = Component::explore(x, y, f, false, Some(depth), None, Some(g));
            c.index.get(g).map(|&k| c.chain_to(x, y, k))
        }
    })
}

/// Is the endomap `f` alpha-inessential: linked to the identity by a chain of
/// the given flavour whose maps are all psp?
pub fn check_inessential(x: &Space, f: &AdmissibleMap, alpha: Alpha, depth: usize) -> Result<Verdict<WitnessChain>> {
    if depth == 0 {
        return Err(Error::Parameter("depth must be positive".into()));
    }
    require_admissible(x, x, f)?;
    let id = AdmissibleMap::identity(x.complex.num_vertices());
    if *f == id {
        return Ok(Verdict::Proved(WitnessChain::trivial(x, x, f)));
    }
    if !is_psp_unchecked(x, x, f) {
        return Ok(Verdict::Refuted);
    }
    let single = |dir| witness(x, x, dir, &id, f).map(|s| WitnessChain::from_steps(x, x, &id, vec![s]));
    Ok(match alpha {
        Alpha::Future => single(Direction::Future).map_or(Verdict::Refuted, Verdict::Proved),
        Alpha::Past => single(Direction::Past).map_or(Verdict::Refuted, Verdict::Proved),
        Alpha::Neutral => {
            let c = Component::explore(x, x, &id, true, Some(depth), None, Some(f));
            match c.index.get(f) {
                Some(&k) => Verdict::Proved(c.chain_to(x, x, k)),
                None if c.closed => Verdict::Refuted,
                None => Verdict::Undecided(format!("not found within depth {depth}")),
            }
        }
    })
}

/// The alpha-inessential endomaps of a space, with certificates on demand.
pub struct InessentialSet<'a> {
    space: &'a Space,
    alpha: Alpha,
    comp: Component,
}

impl<'a> InessentialSet<'a> {
    /// Computes the set. For `+` (`-`) these are the psp maps h with a
    /// future witness `id -> h` (`h -> id`); for `0` the psp maps in the
    /// zig-zag component of the identity. `budget` bounds search nodes.
    pub fn compute(space: &'a Space, alpha: Alpha, budget: Option<u64>) -> Self {
        let id = AdmissibleMap::identity(space.complex.num_vertices());
        let comp = match alpha {
            Alpha::Neutral => Component::explore(space, space, &id, true, None, budget, None),
            Alpha::Future | Alpha::Past => {
                let mut comp = Component::explore(space, space, &id, true, Some(0), None, None);
                comp.stop_reason = None;
                match neighbours(space, space, &id, true, budget) {
                    Ok((ns, explored)) => {
                        comp.explored = explored;
                        comp.closed = true;
                        let want = if alpha == Alpha::Future { Direction::Future } else { Direction::Past };
                        for (n, dir) in ns.into_iter().filter(|(_, d)| *d == want) {
                            comp.index.insert(n.clone(), comp.members.len());
                            comp.members.push(n);
                            comp.parent.push(Some((0, dir)));
                            comp.depth.push(1);
                        }
                    }
                    Err(Error::Budget { explored, .. }) => {
                        comp.explored = explored;
                        comp.stop_reason = Some(format!("budget exhausted after {explored} nodes"));
                    }
                    Err(e) => panic!("unexpected error during neighbour search: {e}"),
                }
                comp
            }
        };
        InessentialSet { space, alpha, comp }
    }

    pub fn space(&self) -> &'a Space {
        self.space
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    /// All members were found (no budget cut).
    pub fn is_complete(&self) -> bool {
        self.comp.closed
    }

    pub fn explored(&self) -> u64 {
        self.comp.explored
    }

    pub fn incomplete_reason(&self) -> Option<&str> {
        self.comp.stop_reason.as_deref()
    }

    /// Members in discovery order; the identity comes first.
    pub fn members(&self) -> &[AdmissibleMap] {
        &self.comp.members
    }

    pub fn len(&self) -> usize {
        self.comp.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comp.members.is_empty()
    }

    pub fn contains(&self, f: &AdmissibleMap) -> bool {
        self.comp.index.contains_key(f)
    }

    /// Certificate chain from the identity to a member.
    pub fn chain(&self, f: &AdmissibleMap) -> Option<WitnessChain> {
        let &k = self.comp.index.get(f)?;
        Some(self.comp.chain_to(self.space, self.space, k))
    }
}

/// Certificate for `h` rather alpha-inessential: `k` and `h ∘ k` are
/// alpha-inessential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatherCertificate {
    pub h: AdmissibleMap,
    pub k: AdmissibleMap,
    pub chain_k: WitnessChain,
    pub chain_hk: WitnessChain,
}

impl RatherCertificate {
    pub fn verify(&self, x: &Space, alpha: Alpha) -> Result<bool> {
        let id = AdmissibleMap::identity(x.complex.num_vertices());
        let ok = |c: &WitnessChain, end: &AdmissibleMap| -> Result<bool> {
            Ok(c.start() == &id && c.end() == end && c.has_flavour(alpha) && c.all_psp() && c.verify(x, x)?)
        };
        Ok(ok(&self.chain_k, &self.k)? && ok(&self.chain_hk, &self.h.after(&self.k))?)
    }
}

/// Is `h` rather alpha-inessential: some alpha-inessential `k` in the pool
/// has `h ∘ k` alpha-inessential. Without a pool the members of the set are
/// used (identity first).
pub fn check_rather_inessential(
    set: &InessentialSet<'_>,
    h: &AdmissibleMap,
    pool: Option<&[AdmissibleMap]>,
) -> Result<Verdict<RatherCertificate>> {
    let pool = pool.unwrap_or(set.members());
    if pool.is_empty() {
        return Err(Error::Parameter("candidate pool is empty".into()));
    }
    let x = set.space();
    require_admissible(x, x, h)?;
    for k in pool {
        if set.contains(k) {
            let hk = h.after(k);
            if set.contains(&hk) {
                return Ok(Verdict::Proved(RatherCertificate {
                    h: h.clone(),
                    k: k.clone(),
                    chain_k: set.chain(k).unwrap(),
                    chain_hk: set.chain(&hk).unwrap(),
                }));
            }
        }
    }
    Ok(match set.incomplete_reason() {
        Some(why) => Verdict::Undecided(why.to_string()),
        None => Verdict::Refuted,
    })
}
