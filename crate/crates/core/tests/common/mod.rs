//! Exhaustive lemma checks over a small family of complexes, shared by the
//! property tests and the acceptance runner. Each check returns the number
//! of instances examined or a description of the first counterexample.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use dirtop::maps::{all_maps, check_psp, AdmissibleMap, Alpha, DheSearch, InessentialSet, Verdict};
use dirtop::paths::Space;

pub const FAMILY: [&str; 5] = ["point", "branch", "letter-w", "boundary-cube 2", "cube 2"];

pub type Check = Result<usize, String>;

pub struct Suite {
    pub names: Vec<&'static str>,
    pub spaces: Vec<Space>,
    homs: Vec<Vec<Vec<AdmissibleMap>>>,
    psp: Vec<Vec<HashSet<AdmissibleMap>>>,
}

fn show(s: &Space, t: &Space, f: &AdmissibleMap) -> String {
    f.display(&s.complex, &t.complex).to_string()
}

impl Suite {
    pub fn new(names: &[&'static str]) -> Suite {
        let spaces: Vec<Space> = names.iter().map(|n| Space::named(n).unwrap()).collect();
        let homs: Vec<Vec<Vec<AdmissibleMap>>> =
            spaces.iter().map(|x| spaces.iter().map(|y| all_maps(x, y)).collect()).collect();
        let psp = (0..spaces.len())
            .map(|i| {
                (0..spaces.len())
                    .map(|j| {
                        homs[i][j]
                            .iter()
                            .filter(|f| check_psp(&spaces[i], &spaces[j], f).unwrap().psp)
                            .cloned()
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Suite { names: names.to_vec(), spaces, homs, psp }
    }

    pub fn family() -> Suite {
        Suite::new(&FAMILY)
    }

    fn n(&self) -> usize {
        self.spaces.len()
    }

    fn is_psp(&self, i: usize, j: usize, f: &AdmissibleMap) -> bool {
        self.psp[i][j].contains(f)
    }

    fn inessential(&self, i: usize, alpha: Alpha) -> HashSet<AdmissibleMap> {
        let set = InessentialSet::compute(&self.spaces[i], alpha, None);
        assert!(set.is_complete());
        set.members().iter().cloned().collect()
    }

    fn rather(&self, i: usize, alpha: Alpha) -> HashSet<AdmissibleMap> {
        let c = self.inessential(i, alpha);
        self.homs[i][i].iter().filter(|h| c.iter().any(|k| c.contains(&h.after(k)))).cloned().collect()
    }

    /// Composites of admissible maps are admissible and psp maps compose;
    /// if `h` and `h ∘ g` are psp then so is `g`.
    pub fn psp_composition(&self) -> Check {
        let mut n = 0;
        for i in 0..self.n() {
            for j in 0..self.n() {
                for k in 0..self.n() {
                    let (x, z) = (&self.spaces[i], &self.spaces[k]);
                    for g in &self.homs[i][j] {
                        for h in &self.homs[j][k] {
                            let hg = h.after(g);
                            n += 1;
                            if !dirtop::maps::check_admissible(x, z, &hg).admissible() {
                                return Err(format!(
                                    "{} ∘ {} not admissible",
                                    show(&self.spaces[j], z, h),
                                    show(x, &self.spaces[j], g)
                                ));
                            }
                            let (pg, ph, phg) = (self.is_psp(i, j, g), self.is_psp(j, k, h), self.is_psp(i, k, &hg));
                            if pg && ph && !phg {
                                return Err(format!(
                                    "psp not closed: {} -> {} -> {}",
                                    self.names[i], self.names[j], self.names[k]
                                ));
                            }
                            if ph && phg && !pg {
                                return Err(format!(
                                    "h, h∘g psp but g = {} is not ({} -> {})",
                                    show(x, &self.spaces[j], g),
                                    self.names[i],
                                    self.names[j]
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(n)
    }

    /// `g ∘ f` and `f ∘ g` psp imply `f` and `g` psp.
    pub fn two_sided_psp(&self) -> Check {
        let mut n = 0;
        for i in 0..self.n() {
            for j in 0..self.n() {
                for f in &self.homs[i][j] {
                    for g in &self.homs[j][i] {
                        n += 1;
                        if self.is_psp(i, i, &g.after(f))
                            && self.is_psp(j, j, &f.after(g))
                            && !(self.is_psp(i, j, f) && self.is_psp(j, i, g))
                        {
                            return Err(format!("{} / {}", self.names[i], self.names[j]));
                        }
                    }
                }
            }
        }
        Ok(n)
    }

    /// Inessential maps compose, with the composite chain built from the
    /// two certificates.
    pub fn inessential_composition(&self) -> Check {
        let mut n = 0;
        for i in 0..self.n() {
            let x = &self.spaces[i];
            for alpha in Alpha::ALL {
                let set = InessentialSet::compute(x, alpha, None);
                for h in set.members() {
                    for k in set.members() {
                        n += 1;
                        let hk = h.after(k);
                        if !set.contains(&hk) {
                            return Err(format!(
                                "{}: C{alpha} not closed at {} ∘ {}",
                                self.names[i],
                                show(x, x, h),
                                show(x, x, k)
                            ));
                        }
                        let chain = set.chain(k).unwrap().concat(&set.chain(h).unwrap().precompose(x, x, k)).unwrap();
                        let ok = chain.end() == &hk
                            && chain.all_psp()
                            && chain.has_flavour(alpha)
                            && chain.verify(x, x).unwrap();
                        if !ok {
                            return Err(format!("{}: composite chain for {} invalid", self.names[i], show(x, x, &hk)));
                        }
                    }
                }
            }
        }
        Ok(n)
    }

    /// `h` and `h ∘ g` 0-inessential imply `g` 0-inessential.
    pub fn zero_factorization(&self) -> Check {
        let mut n = 0;
        for i in 0..self.n() {
            let c = self.inessential(i, Alpha::Neutral);
            for h in &c {
                for g in &self.homs[i][i] {
                    n += 1;
                    if c.contains(&h.after(g)) && !c.contains(g) {
                        let x = &self.spaces[i];
                        return Err(format!("{}: g = {} with h = {}", self.names[i], show(x, x, g), show(x, x, h)));
                    }
                }
            }
        }
        Ok(n)
    }

    /// `g ∘ f` and `h` inessential imply `g ∘ h ∘ f` inessential, for
    /// `f: X -> Y`, `h: Y -> Y`, `g: Y -> X`.
    pub fn insertion(&self) -> Check {
        let mut n = 0;
        for alpha in Alpha::ALL {
            let sets: Vec<_> = (0..self.n()).map(|i| self.inessential(i, alpha)).collect();
            for i in 0..self.n() {
                for j in 0..self.n() {
                    for f in &self.homs[i][j] {
                        for g in &self.homs[j][i] {
                            if !sets[i].contains(&g.after(f)) {
                                continue;
                            }
                            for h in &sets[j] {
                                n += 1;
                                if !sets[i].contains(&g.after(&h.after(f))) {
                                    return Err(format!("{alpha}: {} / {}", self.names[i], self.names[j]));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(n)
    }

    /// Two-sided insertion for rather inessential maps: `g ∘ f`, `f ∘ g`
    /// and `l` rather inessential imply `g ∘ l ∘ f` rather inessential.
    pub fn rather_insertion(&self) -> Check {
        let mut n = 0;
        for alpha in Alpha::ALL {
            let sets: Vec<_> = (0..self.n()).map(|i| self.rather(i, alpha)).collect();
            for i in 0..self.n() {
                for j in 0..self.n() {
                    for f in &self.homs[i][j] {
                        for g in &self.homs[j][i] {
                            if !(sets[i].contains(&g.after(f)) && sets[j].contains(&f.after(g))) {
                                continue;
                            }
                            for l in &sets[j] {
                                n += 1;
                                if !sets[i].contains(&g.after(&l.after(f))) {
                                    return Err(format!("{alpha}: {} / {}", self.names[i], self.names[j]));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(n)
    }

    /// Rather inessential maps compose.
    pub fn rather_composition(&self) -> Check {
        let mut n = 0;
        for i in 0..self.n() {
            for alpha in Alpha::ALL {
                let r = self.rather(i, alpha);
                for a in &r {
                    for b in &r {
                        n += 1;
                        if !r.contains(&a.after(b)) {
                            return Err(format!("{}: R{alpha} not closed", self.names[i]));
                        }
                    }
                }
            }
        }
        Ok(n)
    }

    /// For `g ∘ h` rather alpha-inessential: `g` rather alpha implies `h`
    /// rather 0, and `h` rather alpha implies `g` rather alpha.
    pub fn rather_factorization(&self) -> Check {
        let mut n = 0;
        for i in 0..self.n() {
            let r0 = self.rather(i, Alpha::Neutral);
            for alpha in Alpha::ALL {
                let r = self.rather(i, alpha);
                for g in &self.homs[i][i] {
                    for h in &self.homs[i][i] {
                        if !r.contains(&g.after(h)) {
                            continue;
                        }
                        n += 1;
                        let x = &self.spaces[i];
                        if r.contains(g) && !r0.contains(h) {
                            return Err(format!(
                                "{}: {alpha} g = {}, h = {} not rather 0",
                                self.names[i],
                                show(x, x, g),
                                show(x, x, h)
                            ));
                        }
                        if r.contains(h) && !r.contains(g) {
                            return Err(format!(
                                "{}: {alpha} h = {}, g = {} not rather {alpha}",
                                self.names[i],
                                show(x, x, h),
                                show(x, x, g)
                            ));
                        }
                    }
                }
            }
        }
        Ok(n)
    }

    /// 0-dhe verdict for every map of every hom-set.
    pub fn dhe_verdicts(&self, alpha: Alpha) -> Vec<Vec<HashMap<AdmissibleMap, bool>>> {
        (0..self.n())
            .map(|i| {
                (0..self.n())
                    .map(|j| {
                        let search = DheSearch::new(&self.spaces[i], &self.spaces[j], alpha, None);
                        self.homs[i][j]
                            .iter()
                            .map(|f| {
                                let v = search.check(f).unwrap();
                                assert!(!matches!(v, Verdict::Undecided(_)));
                                (f.clone(), v.holds() == Some(true))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// Every dhe `f` is psp on the image of some inessential `h`, and the
    /// `k` of the certificate for `g ∘ f` is such an `h`.
    pub fn psp_on_image(&self) -> Check {
        let mut n = 0;
        for alpha in Alpha::ALL {
            for i in 0..self.n() {
                for j in 0..self.n() {
                    let (x, y) = (&self.spaces[i], &self.spaces[j]);
                    let search = DheSearch::new(x, y, alpha, None);
                    for f in &self.homs[i][j] {
                        let Verdict::Proved(cert) = search.check(f).unwrap() else { continue };
                        n += 1;
                        let h = &cert.gf.k;
                        if !search.inessential_x().contains(h) {
                            return Err("certificate k is not inessential".into());
                        }
                        let images = f.class_images(x, y);
                        let ok = x.pairs().all(|(a, b)| {
                            let (ha, hb) = (h.apply(a), h.apply(b));
                            let (fa, fb) = (f.apply(ha), f.apply(hb));
                            let mut seen: Vec<u32> = x
                                .table
                                .pair(ha, hb)
                                .filter_map(|c| images[c.0 as usize].map(|d| y.table.local(d)))
                                .collect();
                            seen.sort();
                            seen.dedup();
                            seen.len() == x.table.count(ha, hb) && seen.len() == y.table.count(fa, fb)
                        });
                        if !ok {
                            return Err(format!(
                                "{alpha}: f = {} not psp on the image of k = {}",
                                show(x, y, f),
                                show(x, x, h)
                            ));
                        }
                    }
                }
            }
        }
        Ok(n)
    }

    /// 0-dhe satisfy 2-out-of-3 over all composable pairs.
    pub fn two_of_three(&self) -> Check {
        let v = self.dhe_verdicts(Alpha::Neutral);
        let mut n = 0;
        for i in 0..self.n() {
            for j in 0..self.n() {
                for k in 0..self.n() {
                    for f in &self.homs[i][j] {
                        for g in &self.homs[j][k] {
                            n += 1;
                            let t = [v[i][j][f], v[j][k][g], v[i][k][&g.after(f)]];
                            if t.iter().filter(|&&b| b).count() == 2 {
                                return Err(format!(
                                    "{} -> {} -> {}: verdicts {:?}",
                                    self.names[i], self.names[j], self.names[k], t
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(n)
    }

    /// Existence of an alpha-dhe is reflexive, symmetric and transitive.
    pub fn equivalence_relation(&self, alpha: Alpha) -> Check {
        let v = self.dhe_verdicts(alpha);
        let rel: Vec<Vec<bool>> =
            (0..self.n()).map(|i| (0..self.n()).map(|j| v[i][j].values().any(|&b| b)).collect()).collect();
        for i in 0..self.n() {
            if !rel[i][i] {
                return Err(format!("{} not equivalent to itself", self.names[i]));
            }
            for j in 0..self.n() {
                if rel[i][j] != rel[j][i] {
                    return Err(format!("{} / {} not symmetric", self.names[i], self.names[j]));
                }
                for k in 0..self.n() {
                    if rel[i][j] && rel[j][k] && !rel[i][k] {
                        return Err(format!(
                            "{} / {} / {} not transitive",
                            self.names[i], self.names[j], self.names[k]
                        ));
                    }
                }
            }
        }
        Ok(self.n() * self.n())
    }
}

/// Writes the input files the CLI suite refers to and returns one argument
/// vector per command, covering every subcommand in both output formats.
pub fn cli_commands(dir: &std::path::Path) -> Vec<Vec<String>> {
    let path = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let branch = Space::named("branch").unwrap();
    let id = AdmissibleMap::identity(branch.complex.num_vertices());
    let map = serde_json::to_string_pretty(&id.to_file(&branch.complex, &branch.complex)).unwrap();
    std::fs::write(path("branch-id.json"), map).unwrap();
    std::fs::write(path("cube2.json"), Space::named("cube 2").unwrap().complex.to_json()).unwrap();

    let mut cmds: Vec<Vec<String>> = Vec::new();
    let mut add = |args: &[&str]| cmds.push(args.iter().map(|s| s.to_string()).collect());
    let cube = path("cube2.json");
    let id_map = path("branch-id.json");
    add(&["validate", &cube]);
    for name in ["boundary-cube 2", "torus 2", "dubut-d"] {
        add(&["gen", name]);
    }
    for name in ["boundary-cube 2", "letter-w", "dubut-d", "swiss-grid"] {
        add(&["pi0", name, "--all-pairs"]);
        add(&["components", name]);
        add(&["dtc", name]);
    }
    add(&["pi0", "boundary-cube 2", "--from", "0", "--to", "1"]);
    add(&["pi0", "circle", "--from", "v", "--to", "v", "--max-len", "3"]);
    add(&["analyze", "psp", "branch", "--map", &id_map]);
    add(&["analyze", "inessential", "branch"]);
    add(&["analyze", "rather", "branch", "--map", &id_map, "--alpha", "-"]);
    add(&["analyze", "dhe", "point", "branch", "--alpha", "-"]);
    add(&["analyze", "dhe", "point", "branch", "--alpha", "+"]);
    add(&["analyze", "dhe", "boundary-cube 2", "swiss-grid"]);
    add(&["product", "branch", "cube 1"]);
    let text = cmds.clone();
    for mut c in text {
        c.extend(["--format".to_string(), "structured".to_string()]);
        cmds.push(c);
    }
    cmds
}
