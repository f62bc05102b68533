//! Combinatorial pages: compact oriented surfaces with non-empty boundary.
//!
//! A page is a disjoint collection of *panels* (elementary pieces of the
//! surface, each a compact surface with boundary circles) joined by *tubes*
//! (annuli glued along two interior discs). First homology is kept as a
//! presentation, never as a chosen basis:
//!
//! * one generator `d.<label>` per boundary circle,
//! * one generator pair `x.<k>`, `y.<k>` per unit of panel genus,
//! * one meridian generator `mu.<t>` per tube,
//! * one through-class generator `nu.<t>` per tube that did not merge two
//!   components (such a tube raises genus instead),
//! * one band generator `z.<k>` per boundary join (see [`Page::join_boundaries`]),
//!
//! with one relation per panel: the boundary circles of a panel, together
//! with the meridians of the tube ends opening on it, sum to zero (the total
//! boundary of a piece is null-homologous inside it).
//!
//! The intersection pairing is a skew form on the generators. Boundary and
//! meridian classes are central (they pair to zero with everything); the
//! through-class of a tube pairs with the meridians of the tubes its loop
//! passes through.
//!
//! Each boundary label except a per-component *base* label (its smallest
//! label) carries an arc from the base circle to that circle. Arcs are stored
//! as crossing functionals: `arcs[label][gen]` is the signed count of
//! crossings of the arc with a curve representing `gen`. Crossing numbers of
//! a registered curve are then derived from its homology class, which keeps
//! arc data and curve data consistent by construction. Every arc functional
//! vanishes on every relation row; all mutating operations preserve this.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::hash::{Hash, Hasher};

use crate::invariants;
use crate::{Error, Result};

/// Sparse integer vector over generator names.
pub type Class = BTreeMap<String, i64>;

/// Returns the class with a single entry `name -> 1`.
pub fn unit_class(name: &str) -> Class {
    let mut c = Class::new();
    c.insert(name.to_owned(), 1);
    c
}

/// Adds `k` times `src` into `dst`, dropping entries that become zero.
pub fn class_add_scaled(dst: &mut Class, src: &Class, k: i64) {
    if k == 0 {
        return;
    }
    for (g, v) in src {
        let e = dst.entry(g.clone()).or_insert(0);
        *e += k * v;
        if *e == 0 {
            dst.remove(g);
        }
    }
}

/// Returns `a + k*b` as a fresh class.
pub fn class_sum(a: &Class, b: &Class, k: i64) -> Class {
    let mut out = a.clone();
    class_add_scaled(&mut out, b, k);
    out
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '-')
}

fn check_name(name: &str) -> Result<()> {
    if valid_name(name) {
        Ok(())
    } else {
        Err(Error::InvalidName(name.to_owned()))
    }
}

/// A connected component of the page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub genus: u32,
    pub labels: BTreeSet<String>,
}

/// Per-label bookkeeping: homology class of the boundary circle, the
/// component and the panel carrying it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelInfo {
    pub class: Class,
    pub component: usize,
    pub panel: usize,
}

/// A tube joining two panels. Its meridian enters the relation row of
/// `plus_panel` with coefficient `+1` and of `minus_panel` with `-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tube {
    pub meridian: String,
    pub plus_panel: usize,
    pub minus_panel: usize,
}

/// A registered simple closed curve, known by its homology class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub class: Class,
    pub boundary_parallel_to: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Site {
    panel: usize,
}

/// Outcome of [`Page::attach_tube`].
#[derive(Debug, Clone)]
pub struct TubeJoin {
    /// Name of the new meridian generator.
    pub meridian: String,
    /// Through-class generator, present when both sites were on one component.
    pub through: Option<String>,
    /// True when the tube merged two components.
    pub merged_components: bool,
}

/// Combinatorial surface with boundary; see the module documentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Page {
    components: Vec<Component>,
    gens: Vec<String>,
    /// One relation row per panel, indexed like `panel_component`.
    relations: Vec<Class>,
    panel_component: Vec<usize>,
    /// Skew pairing, stored by rows: `pairing[g][h]` is the value on (g, h).
    pairing: BTreeMap<String, Class>,
    /// Crossing functional of the arc to each non-base label.
    arcs: BTreeMap<String, Class>,
    labels: BTreeMap<String, LabelInfo>,
    curves: BTreeMap<String, Curve>,
    tubes: Vec<Tube>,
    sites: BTreeMap<String, Site>,
    used_sites: BTreeSet<String>,
}

impl Page {
    /// One connected panel of the given genus with the given boundary labels.
    pub fn single(genus: u32, labels: &[&str]) -> Result<Page> {
        if labels.is_empty() {
            return Err(Error::InvalidDocument(
                "a page component needs at least one boundary label".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for l in labels {
            check_name(l)?;
            if !seen.insert(l.to_owned()) {
                return Err(Error::DuplicateName((*l).to_owned()));
            }
        }
        let mut page = Page {
            components: vec![Component {
                genus,
                labels: labels.iter().map(|l| (*l).to_owned()).collect(),
            }],
            gens: Vec::new(),
            relations: vec![Class::new()],
            panel_component: vec![0],
            pairing: BTreeMap::new(),
            arcs: BTreeMap::new(),
            labels: BTreeMap::new(),
            curves: BTreeMap::new(),
            tubes: Vec::new(),
            sites: BTreeMap::new(),
            used_sites: BTreeSet::new(),
        };
        for l in labels {
            let g = format!("d.{l}");
            page.push_gen(&g);
            *page.relations[0].entry(g.clone()).or_insert(0) += 1;
            page.labels.insert(
                (*l).to_owned(),
                LabelInfo {
                    class: unit_class(&g),
                    component: 0,
                    panel: 0,
                },
            );
        }
        for k in 0..genus {
            let x = format!("x.{k}");
            let y = format!("y.{k}");
            page.push_gen(&x);
            page.push_gen(&y);
            page.set_pairing(&x, &y, 1);
        }
        let base = page.base_label(0).to_owned();
        for l in labels {
            if **l != base {
                let mut f = Class::new();
                f.insert(format!("d.{base}"), 1);
                f.insert(format!("d.{l}"), -1);
                page.arcs.insert((*l).to_owned(), f);
            }
        }
        Ok(page)
    }

    /// Disc page: one boundary circle, trivial first homology.
    pub fn make_disc() -> Page {
        Page::single(0, &["b0"]).expect("disc construction is valid")
    }

    /// Annulus page with core curve `c`, parallel to the boundary circle `b0`.
    pub fn make_annulus() -> Page {
        let mut p = Page::single(0, &["b0", "b1"]).expect("annulus construction is valid");
        p.register_curve("c", unit_class("d.b0"), Some("b0"))
            .expect("annulus core is boundary parallel");
        p
    }

    /// Two discs joined by `n` parallel tubes: a genus `n-1` surface with two
    /// boundary circles. Registers the standard curve families:
    ///
    /// * `a<i>` (1-based), the meridian of tube `i-1`;
    /// * `g<i>`, a through curve over tubes `i-1` and `i`, chained so that
    ///   `|<a_i, g_i>| = |<g_i, a_{i+1}>| = 1` and all other pairs vanish;
    /// * `d<i>_<j>` and `dp<i>_<j>` for `i < j`, a curve pair around tubes
    ///   `i-1` and `j-1` whose classes are negatives of each other.
    pub fn make_chain_page(n: usize) -> Result<Page> {
        if n == 0 {
            return Err(Error::InvalidDocument(
                "a chain page needs at least one tube".into(),
            ));
        }
        let d0 = Page::single(0, &["b0"])?;
        let d1 = Page::single(0, &["b1"])?;
        let mut page = Page::disjoint_union(d0, d1)?;
        for _ in 0..n {
            let s0 = page.add_site("b0")?;
            let s1 = page.add_site("b1")?;
            page.attach_tube(&s0, &s1)?;
        }
        for i in 1..=n {
            page.register_curve(&format!("a{i}"), unit_class(&format!("mu.{}", i - 1)), None)?;
        }
        for i in 1..n {
            let mut c = Class::new();
            c.insert(format!("nu.{i}"), -1);
            if i >= 2 {
                c.insert(format!("nu.{}", i - 1), 1);
            }
            page.register_curve(&format!("g{i}"), c, None)?;
        }
        for i in 1..=n {
            for j in (i + 1)..=n {
                let mut c = Class::new();
                c.insert(format!("mu.{}", i - 1), 1);
                c.insert(format!("mu.{}", j - 1), 1);
                for k in i..j - 1 {
                    c.insert(format!("mu.{k}"), CHAIN_DELTA_MIDDLE);
                }
                c.retain(|_, v| *v != 0);
                let mut neg = c.clone();
                for v in neg.values_mut() {
                    *v = -*v;
                }
                page.register_curve(&format!("d{i}_{j}"), c, None)?;
                page.register_curve(&format!("dp{i}_{j}"), neg, None)?;
            }
        }
        Ok(page)
    }

    /// Euler characteristic, summed over components.
    pub fn euler_characteristic(&self) -> i64 {
        self.components
            .iter()
            .map(|c| 2 - 2 * i64::from(c.genus) - c.labels.len() as i64)
            .sum()
    }

    /// Rank of first homology: generators minus independent relations.
    pub fn h1_rank(&self) -> usize {
        self.gens.len() - invariants::integer_rank(&self.relation_rows_dense())
    }

    /// Number of boundary circles.
    pub fn boundary_count(&self) -> usize {
        self.labels.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn generators(&self) -> &[String] {
        &self.gens
    }

    pub fn relations(&self) -> &[Class] {
        &self.relations
    }

    pub fn panel_components(&self) -> &[usize] {
        &self.panel_component
    }

    pub fn tubes(&self) -> &[Tube] {
        &self.tubes
    }

    pub fn arcs(&self) -> &BTreeMap<String, Class> {
        &self.arcs
    }

    pub fn labels(&self) -> &BTreeMap<String, LabelInfo> {
        &self.labels
    }

    pub fn curves(&self) -> &BTreeMap<String, Curve> {
        &self.curves
    }

    pub fn label(&self, name: &str) -> Result<&LabelInfo> {
        self.labels
            .get(name)
            .ok_or_else(|| Error::UnknownLabel(name.to_owned()))
    }

    pub fn curve(&self, name: &str) -> Result<&Curve> {
        self.curves
            .get(name)
            .ok_or_else(|| Error::UnknownCurve(name.to_owned()))
    }

    /// Smallest boundary label of a component; its arc is the empty one.
    pub fn base_label(&self, component: usize) -> &str {
        self.components[component]
            .labels
            .iter()
            .next()
            .expect("every component has a boundary label")
    }

    /// True when `label` is the base label of its component.
    pub fn is_base_label(&self, label: &str) -> bool {
        match self.labels.get(label) {
            Some(info) => self.base_label(info.component) == label,
            None => false,
        }
    }

    /// Pairing value on two generators.
    pub fn pairing_gens(&self, g: &str, h: &str) -> i64 {
        self.pairing
            .get(g)
            .and_then(|row| row.get(h))
            .copied()
            .unwrap_or(0)
    }

    /// Bilinear extension of the pairing to classes.
    pub fn pairing_classes(&self, x: &Class, y: &Class) -> i64 {
        let mut acc = 0;
        for (g, a) in x {
            if let Some(row) = self.pairing.get(g) {
                for (h, b) in y {
                    acc += a * b * row.get(h).copied().unwrap_or(0);
                }
            }
        }
        acc
    }

    /// Signed crossings of the arc to `label` with a curve of class `x`.
    /// The base label of each component carries no arc and yields zero.
    pub fn crossing(&self, label: &str, x: &Class) -> i64 {
        match self.arcs.get(label) {
            Some(f) => f
                .iter()
                .map(|(g, a)| a * x.get(g).copied().unwrap_or(0))
                .sum(),
            None => 0,
        }
    }

    fn push_gen(&mut self, name: &str) {
        debug_assert!(
            !self.gens.iter().any(|g| g == name),
            "generator {name} exists"
        );
        self.gens.push(name.to_owned());
    }

    fn set_pairing(&mut self, g: &str, h: &str, v: i64) {
        if v == 0 {
            return;
        }
        *self
            .pairing
            .entry(g.to_owned())
            .or_default()
            .entry(h.to_owned())
            .or_insert(0) += v;
        *self
            .pairing
            .entry(h.to_owned())
            .or_default()
            .entry(g.to_owned())
            .or_insert(0) -= v;
        self.prune_pairing(g, h);
        self.prune_pairing(h, g);
    }

    fn prune_pairing(&mut self, g: &str, h: &str) {
        let mut empty = false;
        if let Some(row) = self.pairing.get_mut(g) {
            if row.get(h) == Some(&0) {
                row.remove(h);
            }
            empty = row.is_empty();
        }
        if empty {
            self.pairing.remove(g);
        }
    }

    /// Registers an interior site on the panel carrying `near_label`.
    pub fn add_site(&mut self, near_label: &str) -> Result<String> {
        let panel = self.label(near_label)?.panel;
        let mut k = 0;
        let id = loop {
            let cand = format!("site{k}");
            if !self.sites.contains_key(&cand) && !self.used_sites.contains(&cand) {
                break cand;
            }
            k += 1;
        };
        self.sites.insert(id.clone(), Site { panel });
        Ok(id)
    }

    fn take_site(&mut self, id: &str) -> Result<Site> {
        if let Some(site) = self.sites.remove(id) {
            self.used_sites.insert(id.to_owned());
            Ok(site)
        } else if self.used_sites.contains(id) {
            Err(Error::SiteReused(id.to_owned()))
        } else {
            Err(Error::UnknownSite(id.to_owned()))
        }
    }

    /// Removes a disc at each site and glues in a tube.
    ///
    /// Adds the meridian generator. A tube between two components merges them
    /// (homology rank grows by one); a tube within one component raises its
    /// genus and adds a through-class generator pairing with the meridians of
    /// the tubes its loop runs through (rank grows by two).
    pub fn attach_tube(&mut self, site0: &str, site1: &str) -> Result<TubeJoin> {
        let s0 = self.take_site(site0)?;
        let s1 = self.take_site(site1)?;
        let t = self.tubes.len();
        let mu = format!("mu.{t}");
        self.push_gen(&mu);
        *self.relations[s0.panel].entry(mu.clone()).or_insert(0) += 1;
        *self.relations[s1.panel].entry(mu.clone()).or_insert(0) -= 1;
        self.relations[s0.panel].retain(|_, v| *v != 0);
        self.relations[s1.panel].retain(|_, v| *v != 0);

        let comp0 = self.panel_component[s0.panel];
        let comp1 = self.panel_component[s1.panel];
        if comp0 != comp1 {
            // Re-anchor the arcs of the component losing its base label: the
            // new arcs run from the surviving base, through this tube, and on
            // along the old arcs. The connecting arc walks the panel graph
            // from the surviving base to the absorbed one; every tube it
            // passes through counts against that tube's meridian, -1 when
            // crossed plus-to-minus and +1 the other way.
            let base0 = self.base_label(comp0).to_owned();
            let base1 = self.base_label(comp1).to_owned();
            let (stay_comp, move_comp, base_stay, base_move) = if base0 <= base1 {
                (comp0, comp1, base0, base1)
            } else {
                (comp1, comp0, base1, base0)
            };
            self.tubes.push(Tube {
                meridian: mu.clone(),
                plus_panel: s0.panel,
                minus_panel: s1.panel,
            });
            let stay_panel = self.labels[&base_stay].panel;
            let move_panel = self.labels[&base_move].panel;
            let mut patch = Class::new();
            patch.insert(format!("d.{base_stay}"), 1);
            patch.insert(format!("d.{base_move}"), -1);
            for (tube_idx, dir) in self.tube_path(stay_panel, move_panel) {
                let m = self.tubes[tube_idx].meridian.clone();
                *patch.entry(m).or_insert(0) += dir;
            }
            patch.retain(|_, v| *v != 0);
            let moved_labels: Vec<String> =
                self.components[move_comp].labels.iter().cloned().collect();
            for l in &moved_labels {
                if let Some(f) = self.arcs.get_mut(l) {
                    class_add_scaled(f, &patch, 1);
                }
            }
            self.arcs.insert(base_move.clone(), patch);

            let absorbed = std::mem::replace(
                &mut self.components[move_comp],
                Component {
                    genus: 0,
                    labels: BTreeSet::new(),
                },
            );
            self.components[stay_comp].genus += absorbed.genus;
            for l in absorbed.labels {
                self.labels
                    .get_mut(&l)
                    .expect("component labels are registered")
                    .component = stay_comp;
                self.components[stay_comp].labels.insert(l);
            }
            self.components.remove(move_comp);
            for c in self.panel_component.iter_mut() {
                if *c == move_comp {
                    *c = stay_comp;
                }
                if *c > move_comp {
                    *c -= 1;
                }
            }
            for info in self.labels.values_mut() {
                if info.component > move_comp {
                    info.component -= 1;
                }
            }
            Ok(TubeJoin {
                meridian: mu,
                through: None,
                merged_components: true,
            })
        } else {
            // A loop through the new tube and back along existing tubes.
            // Passing a tube plus-to-minus contributes -1 against its
            // meridian, so the new tube itself contributes -1.
            let nu = format!("nu.{t}");
            self.push_gen(&nu);
            self.set_pairing(&nu, &mu, -1);
            for (tube_idx, dir) in self.tube_path(s1.panel, s0.panel) {
                let m = self.tubes[tube_idx].meridian.clone();
                self.set_pairing(&nu, &m, dir);
            }
            self.components[comp0].genus += 1;
            self.tubes.push(Tube {
                meridian: mu.clone(),
                plus_panel: s0.panel,
                minus_panel: s1.panel,
            });
            Ok(TubeJoin {
                meridian: mu,
                through: Some(nu),
                merged_components: false,
            })
        }
    }

    /// Breadth-first path from one panel to another over the existing tubes.
    /// Returns `(tube index, direction)` pairs, direction `+1` when the tube
    /// is passed minus-to-plus and `-1` when plus-to-minus.
    fn tube_path(&self, from: usize, to: usize) -> Vec<(usize, i64)> {
        if from == to {
            return Vec::new();
        }
        let mut prev: BTreeMap<usize, (usize, usize, i64)> = BTreeMap::new();
        let mut queue = VecDeque::new();
        queue.push_back(from);
        let mut seen = BTreeSet::new();
        seen.insert(from);
        'bfs: while let Some(p) = queue.pop_front() {
            for (idx, tube) in self.tubes.iter().enumerate() {
                for (a, b, dir) in [
                    (tube.minus_panel, tube.plus_panel, 1),
                    (tube.plus_panel, tube.minus_panel, -1),
                ] {
                    if a == p && seen.insert(b) {
                        prev.insert(b, (p, idx, dir));
                        if b == to {
                            break 'bfs;
                        }
                        queue.push_back(b);
                    }
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = to;
        while cur != from {
            let (p, idx, dir) = *prev
                .get(&cur)
                .expect("panels of one component are tube-connected");
            path.push((idx, dir));
            cur = p;
        }
        path.reverse();
        path
    }

    /// Registers a named simple closed curve by its homology class.
    ///
    /// A curve declared boundary parallel must have exactly the class of that
    /// boundary circle (or its negative) and must pair to zero with every
    /// generator.
    pub fn register_curve(
        &mut self,
        name: &str,
        class: Class,
        boundary_parallel_to: Option<&str>,
    ) -> Result<()> {
        check_name(name)?;
        if self.curves.contains_key(name) {
            return Err(Error::DuplicateName(name.to_owned()));
        }
        for g in class.keys() {
            if !self.gens.iter().any(|x| x == g) {
                return Err(Error::InvalidDocument(format!(
                    "curve `{name}` uses unknown generator `{g}`"
                )));
            }
        }
        if let Some(l) = boundary_parallel_to {
            let info = self.label(l)?;
            let neg: Class = info.class.iter().map(|(g, v)| (g.clone(), -v)).collect();
            if class != info.class && class != neg {
                return Err(Error::InvalidDocument(format!(
                    "curve `{name}` is declared parallel to `{l}` but has a different class"
                )));
            }
            for g in &self.gens {
                if self.pairing_classes(&class, &unit_class(g)) != 0 {
                    return Err(Error::InvalidDocument(format!(
                        "boundary-parallel curve `{name}` pairs non-trivially with `{g}`"
                    )));
                }
            }
        }
        self.curves.insert(
            name.to_owned(),
            Curve {
                class,
                boundary_parallel_to: boundary_parallel_to.map(str::to_owned),
            },
        );
        Ok(())
    }

    /// Fresh curve name `prefix<k>`.
    pub fn fresh_curve_name(&self, prefix: &str) -> String {
        let mut k = 0;
        loop {
            let cand = format!("{prefix}{k}");
            if !self.curves.contains_key(&cand) {
                return cand;
            }
            k += 1;
        }
    }

    /// Fresh boundary label `prefix<k>`.
    pub fn fresh_label(&self, prefix: &str) -> String {
        let mut k = 0;
        loop {
            let cand = format!("{prefix}{k}");
            if !self.labels.contains_key(&cand) && !self.gens.contains(&format!("d.{cand}")) {
                return cand;
            }
            k += 1;
        }
    }

    /// Splits an ear off the boundary circle `at`: attaches a handle whose
    /// feet cobound a disc with a sub-arc of `at`. The boundary gains one
    /// circle, the new curve runs once over the handle and is parallel to the
    /// new circle. Returns `(new label, curve name)`.
    ///
    /// Generators keep their meaning: the new generator is the class of the
    /// ear circle, the shrunken circle is the old class minus the ear, and
    /// the panel relation is unchanged. Classes stored for registered curves
    /// therefore stay valid, but a curve parallel to the old circle is not
    /// parallel to either new circle, so such flags are dropped.
    pub fn split_boundary(&mut self, at: &str) -> Result<(String, String)> {
        let info = self.label(at)?.clone();
        let mut k = 0;
        let new_label = loop {
            let cand = format!("{at}.s{k}");
            if !self.labels.contains_key(&cand) && !self.gens.contains(&format!("d.{cand}")) {
                break cand;
            }
            k += 1;
        };
        let d_new = format!("d.{new_label}");
        self.push_gen(&d_new);
        let shrunk = self.labels.get_mut(at).expect("label checked above");
        class_add_scaled(&mut shrunk.class, &unit_class(&d_new), -1);
        self.labels.insert(
            new_label.clone(),
            LabelInfo {
                class: unit_class(&d_new),
                component: info.component,
                panel: info.panel,
            },
        );
        self.components[info.component]
            .labels
            .insert(new_label.clone());
        // The new arc follows the arc to `at`, then slides along that circle
        // onto the ear. New labels sort after `at`, so the base never moves.
        let mut f = self.arcs.get(at).cloned().unwrap_or_default();
        class_add_scaled(&mut f, &unit_class(&d_new), -1);
        self.arcs.insert(new_label.clone(), f);
        for curve in self.curves.values_mut() {
            if curve.boundary_parallel_to.as_deref() == Some(at) {
                curve.boundary_parallel_to = None;
            }
        }
        let curve = self.fresh_curve_name("st");
        self.register_curve(&curve, unit_class(&d_new), Some(&new_label))?;
        Ok((new_label, curve))
    }

    /// Joins two boundary circles of one component with a handle, merging
    /// them into a single circle (kept under the smaller label) and raising
    /// genus by one. The new curve runs once over the handle and closes up
    /// along the old arcs; it pairs with a generator exactly as often as the
    /// arcs to `k` and `l` differ in crossings. Returns `(kept label, curve)`.
    pub fn join_boundaries(&mut self, k: &str, l: &str) -> Result<(String, String)> {
        if k == l {
            return Err(Error::LabelsCoincide(k.to_owned(), l.to_owned()));
        }
        let info_k = self.label(k)?.clone();
        let info_l = self.label(l)?.clone();
        if info_k.component != info_l.component {
            return Err(Error::DifferentComponents(k.to_owned(), l.to_owned()));
        }
        let comp = info_k.component;
        let z = {
            let mut n = 0;
            loop {
                let cand = format!("z.{n}");
                if !self.gens.contains(&cand) {
                    break cand;
                }
                n += 1;
            }
        };
        self.push_gen(&z);
        let f_k = self.arcs.get(k).cloned().unwrap_or_default();
        let f_l = self.arcs.get(l).cloned().unwrap_or_default();
        let diff = class_sum(&f_l, &f_k, -1);
        for (g, v) in &diff {
            self.set_pairing(&z, g, *v);
        }
        let (kept, dying) = if k < l { (k, l) } else { (l, k) };
        let merged_class = class_sum(&info_k.class, &info_l.class, 1);
        let kept_info = self.labels.get_mut(kept).expect("kept label exists");
        kept_info.class = merged_class;
        self.labels.remove(dying);
        self.arcs.remove(dying);
        self.components[comp].labels.remove(dying);
        self.components[comp].genus += 1;
        // Neither old circle is a boundary circle any more.
        for curve in self.curves.values_mut() {
            let flag = curve.boundary_parallel_to.as_deref();
            if flag == Some(k) || flag == Some(l) {
                curve.boundary_parallel_to = None;
            }
        }
        let curve = self.fresh_curve_name("st");
        self.register_curve(&curve, unit_class(&z), None)?;
        Ok((kept.to_owned(), curve))
    }

    /// Disjoint union. Boundary labels and curve names must be disjoint;
    /// numbered internal generators of `other` are renumbered behind ours.
    pub fn disjoint_union(self, other: Page) -> Result<Page> {
        let mut a = self;
        let mut b = other;
        for l in b.labels.keys() {
            if a.labels.contains_key(l) {
                return Err(Error::DuplicateName(l.clone()));
            }
        }
        for c in b.curves.keys() {
            if a.curves.contains_key(c) {
                return Err(Error::DuplicateName(c.clone()));
            }
        }
        let tube_off = a.tubes.len();
        let handle_off = a.gens.iter().filter(|g| g.starts_with("x.")).count();
        let band_off = a.gens.iter().filter(|g| g.starts_with("z.")).count();
        let mut rename: BTreeMap<String, String> = BTreeMap::new();
        for g in &b.gens {
            if let Some(num) = g.strip_prefix("mu.") {
                let t: usize = num.parse().expect("meridian generators are numbered");
                rename.insert(g.clone(), format!("mu.{}", t + tube_off));
            } else if let Some(num) = g.strip_prefix("nu.") {
                let t: usize = num.parse().expect("through generators are numbered");
                rename.insert(g.clone(), format!("nu.{}", t + tube_off));
            } else if let Some(num) = g.strip_prefix("x.") {
                let t: usize = num.parse().expect("handle generators are numbered");
                rename.insert(g.clone(), format!("x.{}", t + handle_off));
            } else if let Some(num) = g.strip_prefix("y.") {
                let t: usize = num.parse().expect("handle generators are numbered");
                rename.insert(g.clone(), format!("y.{}", t + handle_off));
            } else if let Some(num) = g.strip_prefix("z.") {
                let t: usize = num.parse().expect("band generators are numbered");
                rename.insert(g.clone(), format!("z.{}", t + band_off));
            }
        }
        b.rename_gens(&rename);
        for g in &b.gens {
            if a.gens.contains(g) {
                return Err(Error::DuplicateName(g.clone()));
            }
        }
        let comp_off = a.components.len();
        let panel_off = a.relations.len();
        a.gens.extend(b.gens);
        a.relations.extend(b.relations);
        a.panel_component
            .extend(b.panel_component.into_iter().map(|c| c + comp_off));
        a.components.extend(b.components);
        for (g, row) in b.pairing {
            a.pairing.insert(g, row);
        }
        for (l, f) in b.arcs {
            a.arcs.insert(l, f);
        }
        for (l, mut info) in b.labels {
            info.component += comp_off;
            info.panel += panel_off;
            a.labels.insert(l, info);
        }
        for (c, curve) in b.curves {
            a.curves.insert(c, curve);
        }
        for t in b.tubes {
            a.tubes.push(Tube {
                meridian: t.meridian,
                plus_panel: t.plus_panel + panel_off,
                minus_panel: t.minus_panel + panel_off,
            });
        }
        // Sites are ephemeral and never survive an operation.
        a.sites.clear();
        a.used_sites.clear();
        Ok(a)
    }

    fn rename_gens(&mut self, rename: &BTreeMap<String, String>) {
        if rename.is_empty() {
            return;
        }
        let fix = |c: &Class| -> Class {
            c.iter()
                .map(|(g, v)| (rename.get(g).unwrap_or(g).clone(), *v))
                .collect()
        };
        for g in self.gens.iter_mut() {
            if let Some(n) = rename.get(g) {
                *g = n.clone();
            }
        }
        for r in self.relations.iter_mut() {
            *r = fix(r);
        }
        self.pairing = self
            .pairing
            .iter()
            .map(|(g, row)| (rename.get(g).unwrap_or(g).clone(), fix(row)))
            .collect();
        for f in self.arcs.values_mut() {
            *f = fix(f);
        }
        for info in self.labels.values_mut() {
            info.class = fix(&info.class);
        }
        for c in self.curves.values_mut() {
            c.class = fix(&c.class);
        }
        for t in self.tubes.iter_mut() {
            if let Some(n) = rename.get(&t.meridian) {
                t.meridian = n.clone();
            }
        }
    }

    /// Prefixes every boundary label and curve name (and the generators
    /// derived from labels). Returns the curve rename map so that twist
    /// words can be rewritten alongside.
    pub fn prefix_names(&mut self, prefix: &str) -> Result<BTreeMap<String, String>> {
        check_name(&format!("{prefix}x"))?;
        let mut gen_rename = BTreeMap::new();
        let mut label_rename = BTreeMap::new();
        for l in self.labels.keys() {
            label_rename.insert(l.clone(), format!("{prefix}{l}"));
            gen_rename.insert(format!("d.{l}"), format!("d.{prefix}{l}"));
        }
        self.rename_gens(&gen_rename);
        self.labels = self
            .labels
            .iter()
            .map(|(l, info)| (label_rename[l].clone(), info.clone()))
            .collect();
        self.arcs = self
            .arcs
            .iter()
            .map(|(l, f)| (label_rename[l].clone(), f.clone()))
            .collect();
        for comp in self.components.iter_mut() {
            comp.labels = comp
                .labels
                .iter()
                .map(|l| label_rename[l].clone())
                .collect();
        }
        for curve in self.curves.values_mut() {
            if let Some(bp) = curve.boundary_parallel_to.as_mut() {
                *bp = label_rename[bp].clone();
            }
        }
        let mut curve_rename = BTreeMap::new();
        self.curves = self
            .curves
            .iter()
            .map(|(c, curve)| {
                let n = format!("{prefix}{c}");
                curve_rename.insert(c.clone(), n.clone());
                (n, curve.clone())
            })
            .collect();
        Ok(curve_rename)
    }

    /// Hash of the structural data, used to tie twist words to their page.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.gens.hash(&mut h);
        for (name, curve) in &self.curves {
            name.hash(&mut h);
            for (g, v) in &curve.class {
                g.hash(&mut h);
                v.hash(&mut h);
            }
        }
        for (l, info) in &self.labels {
            l.hash(&mut h);
            info.panel.hash(&mut h);
            info.component.hash(&mut h);
        }
        h.finish()
    }

    /// Relation rows as dense integer rows in generator order.
    pub fn relation_rows_dense(&self) -> Vec<Vec<i64>> {
        self.relations
            .iter()
            .map(|r| {
                self.gens
                    .iter()
                    .map(|g| r.get(g).copied().unwrap_or(0))
                    .collect()
            })
            .collect()
    }

    /// Checks every structural invariant; meant for tests and document loads.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidDocument(msg));
        if self.relations.len() != self.panel_component.len() {
            return fail("one relation row per panel required".into());
        }
        let mut seen_labels: BTreeSet<&String> = BTreeSet::new();
        for (ci, comp) in self.components.iter().enumerate() {
            if comp.labels.is_empty() {
                return fail(format!("component {ci} has no boundary"));
            }
            for l in &comp.labels {
                if !seen_labels.insert(l) {
                    return fail(format!("label `{l}` appears in two components"));
                }
                match self.labels.get(l) {
                    None => return fail(format!("label `{l}` missing from registry")),
                    Some(info) if info.component != ci => {
                        return fail(format!("label `{l}` registered on the wrong component"))
                    }
                    Some(info) => {
                        if self.panel_component[info.panel] != ci {
                            return fail(format!("label `{l}` sits on a foreign panel"));
                        }
                    }
                }
            }
        }
        if seen_labels.len() != self.labels.len() {
            return fail("label registry and components disagree".into());
        }
        for (g, row) in &self.pairing {
            if !self.gens.contains(g) {
                return fail(format!("pairing row for unknown generator `{g}`"));
            }
            for (h, v) in row {
                if g == h && *v != 0 {
                    return fail(format!("pairing has non-zero diagonal at `{g}`"));
                }
                if self.pairing_gens(h, g) != -*v {
                    return fail(format!("pairing not skew at (`{g}`, `{h}`)"));
                }
            }
        }
        for (l, f) in &self.arcs {
            if self.is_base_label(l) {
                return fail(format!("base label `{l}` carries an arc"));
            }
            if !self.labels.contains_key(l) {
                return fail(format!("arc to unknown label `{l}`"));
            }
            for r in &self.relations {
                let v: i64 = f
                    .iter()
                    .map(|(g, a)| a * r.get(g).copied().unwrap_or(0))
                    .sum();
                if v != 0 {
                    return fail(format!("arc to `{l}` does not vanish on a panel relation"));
                }
            }
        }
        for (l, info) in &self.labels {
            if !self.is_base_label(l) && !self.arcs.contains_key(l) {
                return fail(format!("non-base label `{l}` has no arc"));
            }
            for g in info.class.keys() {
                if !self.gens.contains(g) {
                    return fail(format!("label `{l}` class uses unknown generator `{g}`"));
                }
            }
        }
        for r in &self.relations {
            for g in &self.gens {
                if self.pairing_classes(r, &unit_class(g)) != 0 {
                    return fail(format!(
                        "a relation row pairs non-trivially with `{g}`; the pairing does not descend"
                    ));
                }
            }
        }
        for (name, curve) in &self.curves {
            for g in curve.class.keys() {
                if !self.gens.contains(g) {
                    return fail(format!("curve `{name}` uses unknown generator `{g}`"));
                }
            }
            if let Some(l) = &curve.boundary_parallel_to {
                let info = match self.labels.get(l) {
                    Some(i) => i,
                    None => return fail(format!("curve `{name}` parallel to unknown `{l}`")),
                };
                let neg: Class = info.class.iter().map(|(g, v)| (g.clone(), -v)).collect();
                if curve.class != info.class && curve.class != neg {
                    return fail(format!("curve `{name}` class disagrees with `{l}`"));
                }
            }
        }
        let expected: i64 = self
            .components
            .iter()
            .map(|c| 2 * i64::from(c.genus) + c.labels.len() as i64 - 1)
            .sum();
        if self.h1_rank() as i64 != expected {
            return fail(format!(
                "homology rank {} disagrees with the closed form {expected}",
                self.h1_rank()
            ));
        }
        Ok(())
    }

    /// Rebuilds a page from serialized parts, then validates it.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        components: Vec<Component>,
        gens: Vec<String>,
        relations: Vec<Class>,
        panel_component: Vec<usize>,
        pairing: BTreeMap<String, Class>,
        arcs: BTreeMap<String, Class>,
        labels: BTreeMap<String, LabelInfo>,
        curves: BTreeMap<String, Curve>,
        tubes: Vec<Tube>,
    ) -> Result<Page> {
        for idx in panel_component.iter() {
            if *idx >= components.len() {
                return Err(Error::InvalidDocument(format!(
                    "panel points at missing component {idx}"
                )));
            }
        }
        for t in &tubes {
            if t.plus_panel >= relations.len() || t.minus_panel >= relations.len() {
                return Err(Error::InvalidDocument(
                    "tube points at missing panel".into(),
                ));
            }
            if !gens.contains(&t.meridian) {
                return Err(Error::InvalidDocument(format!(
                    "tube meridian `{}` is not a generator",
                    t.meridian
                )));
            }
        }
        for info in labels.values() {
            if info.panel >= relations.len() || info.component >= components.len() {
                return Err(Error::InvalidDocument(
                    "label points at missing panel".into(),
                ));
            }
        }
        let page = Page {
            components,
            gens,
            relations,
            panel_component,
            pairing,
            arcs,
            labels,
            curves,
            tubes,
            sites: BTreeMap::new(),
            used_sites: BTreeSet::new(),
        };
        page.validate()?;
        Ok(page)
    }
}

/// Coefficient on the meridians strictly between `i` and `j` in the class of
/// the curve pair `d<i>_<j>`/`dp<i>_<j>` around non-adjacent tubes. Zero
/// means the curve encloses only the two tube feet it names, weaving past
/// the intermediate feet; the value is pinned by the cross-validation of the
/// assembled fibre-sum monodromies against the closed-form twist words on
/// three tubes.
pub(crate) const CHAIN_DELTA_MIDDLE: i64 = 0;
