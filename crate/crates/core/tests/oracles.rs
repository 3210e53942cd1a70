//! Brute-force models built straight from the complex files, checked against
//! the library. Nothing here goes through the indexed representation.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use dirtop::complex::{build_named, ComplexFile};
use dirtop::components::pair_components;
use dirtop::maps::{all_maps, psp_maps, AdmissibleMap};
use dirtop::paths::Space;
use dirtop::tc::directed_tc;

type Path = Vec<String>;

struct Raw {
    vertices: Vec<String>,
    /// edge id -> (src, tgt)
    edges: BTreeMap<String, (String, String)>,
    /// square corners as (d2-, d1+) and (d1-, d2+)
    squares: Vec<[(String, String); 2]>,
}

impl Raw {
    fn new(spec: &str) -> Raw {
        let file: ComplexFile = build_named(spec).unwrap().to_file();
        let face = |c: &dirtop::complex::CellRecord, i: u32, plus: bool| {
            let f = &c.faces[&i];
            if plus {
                f.plus.clone()
            } else {
                f.minus.clone()
            }
        };
        let mut vertices: Vec<String> = file.cells.iter().filter(|c| c.dim == 0).map(|c| c.id.clone()).collect();
        vertices.sort();
        let edges = file
            .cells
            .iter()
            .filter(|c| c.dim == 1)
            .map(|c| (c.id.clone(), (face(c, 1, false), face(c, 1, true))))
            .collect();
        let squares = file
            .cells
            .iter()
            .filter(|c| c.dim == 2)
            .map(|c| [(face(c, 2, false), face(c, 1, true)), (face(c, 1, false), face(c, 2, true))])
            .collect();
        Raw { vertices, edges, squares }
    }

    fn reach(&self) -> BTreeSet<(String, String)> {
        let mut r: BTreeSet<(String, String)> = self.vertices.iter().map(|v| (v.clone(), v.clone())).collect();
        loop {
            let mut grew = false;
            for (a, b) in r.clone() {
                for (s, t) in self.edges.values() {
                    if *s == b && r.insert((a.clone(), t.clone())) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return r;
            }
        }
    }

    fn paths(&self, a: &str, b: &str) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![(a.to_string(), Vec::new())];
        while let Some((v, p)) = stack.pop() {
            if v == b {
                out.push(p.clone());
            }
            for (id, (s, t)) in &self.edges {
                if *s == v {
                    let mut q = p.clone();
                    q.push(id.clone());
                    stack.push((t.clone(), q));
                }
            }
        }
        out
    }

    fn swaps(&self, p: &Path) -> Vec<Path> {
        let mut out = Vec::new();
        for i in 0..p.len().saturating_sub(1) {
            for [lo, hi] in &self.squares {
                for (from, to) in [(lo, hi), (hi, lo)] {
                    if p[i] == from.0 && p[i + 1] == from.1 {
                        let mut q = p.clone();
                        q[i] = to.0.clone();
                        q[i + 1] = to.1.clone();
                        out.push(q);
                    }
                }
            }
        }
        out
    }

    /// Classes of the pair, each a sorted list of paths; classes sorted.
    fn classes(&self, a: &str, b: &str) -> Vec<Vec<Path>> {
        let mut left: BTreeSet<Path> = self.paths(a, b).into_iter().collect();
        let mut out = Vec::new();
        while let Some(start) = left.iter().next().cloned() {
            left.remove(&start);
            let mut class = vec![start.clone()];
            let mut queue = VecDeque::from([start]);
            while let Some(p) = queue.pop_front() {
                for q in self.swaps(&p) {
                    if left.remove(&q) {
                        class.push(q.clone());
                        queue.push_back(q);
                    }
                }
            }
            class.sort();
            out.push(class);
        }
        out.sort();
        out
    }

    fn class_index(&self, a: &str, b: &str, p: &Path) -> usize {
        self.classes(a, b).iter().position(|c| c.contains(p)).unwrap()
    }

    fn edge_between(&self, a: &str, b: &str) -> Option<String> {
        self.edges.iter().find(|(_, (s, t))| s == a && t == b).map(|(id, _)| id.clone())
    }

    fn image(&self, y: &Raw, f: &BTreeMap<String, String>, p: &Path) -> Option<Path> {
        let mut out = Vec::new();
        for e in p {
            let (s, t) = &self.edges[e];
            if f[s] != f[t] {
                out.push(y.edge_between(&f[s], &f[t])?);
            }
        }
        Some(out)
    }

    fn admissible(&self, y: &Raw, f: &BTreeMap<String, String>) -> bool {
        let edges_ok = self.edges.values().all(|(s, t)| f[s] == f[t] || y.edge_between(&f[s], &f[t]).is_some());
        edges_ok
            && self.squares.iter().all(|[lo, hi]| {
                let (a, b) = (&self.edges[&lo.0].0, &self.edges[&lo.1].1);
                let p = self.image(y, f, &vec![lo.0.clone(), lo.1.clone()]).unwrap();
                let q = self.image(y, f, &vec![hi.0.clone(), hi.1.clone()]).unwrap();
                y.class_index(&f[a], &f[b], &p) == y.class_index(&f[a], &f[b], &q)
            })
    }

    fn psp(&self, y: &Raw, f: &BTreeMap<String, String>) -> bool {
        self.reach().iter().all(|(a, b)| {
            let source = self.classes(a, b);
            let target = y.classes(&f[a], &f[b]);
            let images: BTreeSet<usize> =
                source.iter().map(|c| y.class_index(&f[a], &f[b], &self.image(y, f, &c[0]).unwrap())).collect();
            source.len() == target.len() && images.len() == target.len()
        })
    }

    fn all_functions(&self, y: &Raw) -> Vec<BTreeMap<String, String>> {
        let mut out = vec![BTreeMap::new()];
        for v in &self.vertices {
            out = out
                .into_iter()
                .flat_map(|m| {
                    y.vertices.iter().map(move |w| {
                        let mut m = m.clone();
                        m.insert(v.clone(), w.clone());
                        m
                    })
                })
                .collect();
        }
        out
    }
}

fn as_raw_map(x: &Space, y: &Space, f: &AdmissibleMap) -> BTreeMap<String, String> {
    x.complex
        .vertices()
        .map(|v| (x.complex.vertex_id(v).to_string(), y.complex.vertex_id(f.apply(v)).to_string()))
        .collect()
}

const SPACES: [&str; 10] = [
    "point",
    "branch",
    "letter-w",
    "cube 2",
    "cube 3",
    "boundary-cube 2",
    "boundary-cube 3",
    "boundary-cube 4",
    "dubut-d",
    "swiss-grid",
];

#[test]
fn reachable_pairs_match() {
    for spec in SPACES {
        let raw = Raw::new(spec);
        let space = Space::named(spec).unwrap();
        let lib: BTreeSet<(String, String)> = space
            .pairs()
            .map(|(a, b)| (space.complex.vertex_id(a).to_string(), space.complex.vertex_id(b).to_string()))
            .collect();
        assert_eq!(lib, raw.reach(), "{spec}");
    }
}

#[test]
fn class_partitions_match() {
    for spec in SPACES {
        let raw = Raw::new(spec);
        let space = Space::named(spec).unwrap();
        let x = &space.complex;
        for (a, b) in raw.reach() {
            let oracle = raw.classes(&a, &b);
            let (va, vb) = (x.vertex(&a).unwrap(), x.vertex(&b).unwrap());
            assert_eq!(space.table.count(va, vb), oracle.len(), "{spec} ({a},{b})");
            let mut lib: Vec<Vec<Path>> = vec![Vec::new(); oracle.len()];
            for p in oracle.iter().flatten() {
                let edges: Vec<_> = p.iter().map(|e| x.edge(e).unwrap()).collect();
                let c = space.table.class_of_edges(va, &edges).unwrap();
                lib[space.table.local(c) as usize].push(p.clone());
            }
            lib.iter_mut().for_each(|c| c.sort());
            lib.sort();
            assert_eq!(lib, oracle, "{spec} ({a},{b})");
        }
    }
}

#[test]
fn pair_counts_frozen() {
    // Values computed by the oracle above and pinned.
    let expect = [
        ("letter-w", 9, 1),
        ("boundary-cube 2", 9, 2),
        ("boundary-cube 3", 27, 1),
        ("dubut-d", 33, 2),
        ("swiss-grid", 100, 2),
    ];
    for (spec, pairs, max) in expect {
        let raw = Raw::new(spec);
        let reach = raw.reach();
        assert_eq!(reach.len(), pairs, "{spec}");
        assert_eq!(reach.iter().map(|(a, b)| raw.classes(a, b).len()).max().unwrap(), max, "{spec}");
    }
}

#[test]
fn admissible_and_psp_maps_match() {
    let cases = [
        ("branch", "branch"),
        ("letter-w", "letter-w"),
        ("boundary-cube 2", "boundary-cube 2"),
        ("cube 2", "cube 2"),
        ("cube 2", "boundary-cube 2"),
        ("point", "letter-w"),
        ("boundary-cube 2", "swiss-grid"),
        ("branch", "letter-w"),
    ];
    for (a, b) in cases {
        let (rx, ry) = (Raw::new(a), Raw::new(b));
        let (x, y) = (Space::named(a).unwrap(), Space::named(b).unwrap());
        let oracle: Vec<_> = rx.all_functions(&ry).into_iter().filter(|f| rx.admissible(&ry, f)).collect();
        let lib: BTreeSet<_> = all_maps(&x, &y).iter().map(|f| as_raw_map(&x, &y, f)).collect();
        assert_eq!(lib, oracle.iter().cloned().collect::<BTreeSet<_>>(), "{a} -> {b}");
        let oracle_psp: BTreeSet<_> = oracle.into_iter().filter(|f| rx.psp(&ry, f)).collect();
        let lib_psp: BTreeSet<_> = psp_maps(&x, &y).iter().map(|f| as_raw_map(&x, &y, f)).collect();
        assert_eq!(lib_psp, oracle_psp, "{a} -> {b}");
    }
}

#[test]
fn psp_counts_frozen() {
    let count = |a: &str| {
        let s = Space::named(a).unwrap();
        psp_maps(&s, &s).len()
    };
    assert_eq!(count("branch"), 11);
    assert_eq!(count("boundary-cube 2"), 2);
    assert_eq!(count("letter-w"), 99);
}

// Independent edge classification and union-find over string pairs.
fn oracle_objects(spec: &str) -> usize {
    let raw = Raw::new(spec);
    let reach = raw.reach();
    let mut parent: HashMap<(String, String), (String, String)> =
        reach.iter().map(|p| (p.clone(), p.clone())).collect();
    fn find(parent: &mut HashMap<(String, String), (String, String)>, p: &(String, String)) -> (String, String) {
        let q = parent[p].clone();
        if q == *p {
            return q;
        }
        let r = find(parent, &q);
        parent.insert(p.clone(), r.clone());
        r
    }
    let bijective = |from: &[Vec<Path>], to: (&str, &str), extend: &dyn Fn(&Path) -> Path| {
        let target = raw.classes(to.0, to.1);
        let images: BTreeSet<usize> =
            from.iter().map(|c| target.iter().position(|t| t.contains(&extend(&c[0]))).unwrap()).collect();
        from.len() == target.len() && images.len() == target.len()
    };
    for (e, (a, b)) in &raw.edges {
        let target_ok = reach.iter().filter(|(_, y)| y == a).all(|(w, _)| {
            bijective(&raw.classes(w, a), (w, b), &|p| {
                let mut q = p.clone();
                q.push(e.clone());
                q
            })
        });
        let source_ok = reach.iter().filter(|(s, _)| s == b).all(|(_, w)| {
            bijective(&raw.classes(b, w), (a, w), &|p| {
                let mut q = vec![e.clone()];
                q.extend(p.iter().cloned());
                q
            })
        });
        if target_ok && source_ok {
            for (w, _) in reach.iter().filter(|(_, y)| y == a) {
                let (r1, r2) = (find(&mut parent, &(w.clone(), a.clone())), find(&mut parent, &(w.clone(), b.clone())));
                parent.insert(r1, r2);
            }
            for (_, w) in reach.iter().filter(|(s, _)| s == b) {
                let (r1, r2) = (find(&mut parent, &(a.clone(), w.clone())), find(&mut parent, &(b.clone(), w.clone())));
                parent.insert(r1, r2);
            }
        }
    }
    reach.iter().map(|p| find(&mut parent, p)).collect::<BTreeSet<_>>().len()
}

#[test]
fn component_counts_match() {
    for spec in SPACES {
        let space = Space::named(spec).unwrap();
        assert_eq!(pair_components(&space, &[]).unwrap().num_objects(), oracle_objects(spec), "{spec}");
    }
}

#[test]
fn component_counts_frozen() {
    assert_eq!(oracle_objects("boundary-cube 2"), 9);
    assert_eq!(oracle_objects("swiss-grid"), 9);
    assert_eq!(oracle_objects("letter-w"), 1);
    assert_eq!(oracle_objects("dubut-d"), 33);
}

// Every labelling of pairs by patches and classes, smallest k first.
fn oracle_dtc(spec: &str, max_k: usize) -> Option<usize> {
    let raw = Raw::new(spec);
    let pairs: Vec<(String, String)> = raw.reach().into_iter().collect();
    let classes: Vec<Vec<Vec<Path>>> = pairs.iter().map(|(a, b)| raw.classes(a, b)).collect();
    let idx: HashMap<&(String, String), usize> = pairs.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let consistent = |label: &[usize], class: &[usize]| {
        for (i, (x, a)) in pairs.iter().enumerate() {
            for (e, (s, t)) in &raw.edges {
                if s == a {
                    let j = idx[&(x.clone(), t.clone())];
                    if label[i] == label[j] {
                        let mut p = classes[i][class[i]][0].clone();
                        p.push(e.clone());
                        if !classes[j][class[j]].contains(&p) {
                            return false;
                        }
                    }
                }
                if t == x {
                    let j = idx[&(s.clone(), a.clone())];
                    if label[i] == label[j] {
                        let mut p = vec![e.clone()];
                        p.extend(classes[i][class[i]][0].iter().cloned());
                        if !classes[j][class[j]].contains(&p) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    };
    for k in 1..=max_k {
        let n = pairs.len();
        let choices: Vec<usize> = classes.iter().map(|c| c.len() * k).collect();
        let mut digits = vec![0usize; n];
        loop {
            let label: Vec<usize> = (0..n).map(|i| digits[i] % k).collect();
            let class: Vec<usize> = (0..n).map(|i| digits[i] / k).collect();
            if consistent(&label, &class) {
                return Some(k);
            }
            let mut i = 0;
            while i < n {
                digits[i] += 1;
                if digits[i] < choices[i] {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    None
}

#[test]
fn dtc_matches_brute_force() {
    for spec in ["point", "branch", "letter-w", "cube 2", "boundary-cube 2"] {
        let oracle = oracle_dtc(spec, 3).unwrap();
        assert_eq!(directed_tc(&Space::named(spec).unwrap(), 3).unwrap().k(), oracle, "{spec}");
    }
    assert_eq!(oracle_dtc("boundary-cube 2", 3), Some(2));
    assert_eq!(oracle_dtc("cube 2", 3), Some(1));
}
