//! Open books and the constructions on them: stabilization, navels, the
//! binding sum, multi-section fibre sums over braids, and the composite
//! constructions (torus bundles, Lutz twists, the two-annulus gadget, and
//! sums of convex surface bundles).
//!
//! The binding sum along two boundary circles keeps both circles as binding
//! components: a tube is attached at interior sites next to them, and each
//! side receives a navel whose twist curves are recorded on the enlarged
//! page. The two navels' central curves merge into the tube meridian, whose
//! twist exponent becomes `m - 2` for relative framing `m`.

use std::collections::BTreeMap;

use crate::braid::{self, Braid, PureBraidWord};
use crate::invariants::{self, AbelianGroup};
use crate::page::{class_sum, unit_class, Class, Page};
use crate::twist::TwistWord;
use crate::{Error, Result};

/// An abstract open book: a page, a monodromy twist word on it, and one
/// framing integer per binding label (informational; sums take the relative
/// framing explicitly).
#[derive(Debug, Clone)]
pub struct OpenBook {
    page: Page,
    monodromy: TwistWord,
    framings: BTreeMap<String, i64>,
}

impl OpenBook {
    /// Wraps a page and a twist word, zeroing all framings.
    pub fn new(page: Page, monodromy: TwistWord) -> Result<OpenBook> {
        let monodromy = TwistWord::new(&page, monodromy.letters().to_vec())?;
        let framings = page.labels().keys().map(|l| (l.clone(), 0)).collect();
        let ob = OpenBook {
            page,
            monodromy,
            framings,
        };
        ob.page.validate()?;
        Ok(ob)
    }

    /// The open book with identity monodromy on the given page.
    pub fn with_identity(page: Page) -> OpenBook {
        let monodromy = TwistWord::empty(&page);
        let framings = page.labels().keys().map(|l| (l.clone(), 0)).collect();
        OpenBook {
            page,
            monodromy,
            framings,
        }
    }

    /// Rebuilds after a page change, keeping framings of surviving labels.
    fn rebuilt(&self, page: Page, letters: Vec<(String, i64)>) -> Result<OpenBook> {
        let monodromy = TwistWord::new(&page, letters)?;
        let framings = page
            .labels()
            .keys()
            .map(|l| (l.clone(), self.framings.get(l).copied().unwrap_or(0)))
            .collect();
        let ob = OpenBook {
            page,
            monodromy,
            framings,
        };
        ob.page.validate()?;
        Ok(ob)
    }

    /// Named starting points: `s3_disc`, `s3_hopf_plus`, `s3_hopf_minus`,
    /// `s1s2`, and the disconnected `two_discs`.
    pub fn preset(name: &str) -> Result<OpenBook> {
        match name {
            "s3_disc" => Ok(OpenBook::with_identity(Page::make_disc())),
            "s3_hopf_plus" => {
                let page = Page::make_annulus();
                let word = TwistWord::parse(&page, "c")?;
                OpenBook::new(page, word)
            }
            "s3_hopf_minus" => {
                let page = Page::make_annulus();
                let word = TwistWord::parse(&page, "c^-1")?;
                OpenBook::new(page, word)
            }
            "s1s2" => Ok(OpenBook::with_identity(Page::make_annulus())),
            "two_discs" => {
                let page = Page::single(0, &["b0"])?.disjoint_union(Page::single(0, &["b1"])?)?;
                Ok(OpenBook::with_identity(page))
            }
            other => Err(Error::Parse(format!("unknown preset `{other}`"))),
        }
    }

    pub fn page(&self) -> &Page {
        &self.page
    }

    pub fn monodromy(&self) -> &TwistWord {
        &self.monodromy
    }

    pub fn framings(&self) -> &BTreeMap<String, i64> {
        &self.framings
    }

    pub fn set_framing(&mut self, label: &str, m: i64) -> Result<()> {
        self.page.label(label)?;
        self.framings.insert(label.to_owned(), m);
        Ok(())
    }

    /// First homology of the closed manifold this open book determines.
    pub fn h1(&self) -> Result<AbelianGroup> {
        invariants::h1_of_open_book(self)
    }

    /// Side-by-side union; labels and curve names must not clash, and the
    /// monodromies concatenate (their supports are disjoint).
    pub fn disjoint_union(self, other: OpenBook) -> Result<OpenBook> {
        let mut letters = self.monodromy.letters().to_vec();
        letters.extend(other.monodromy.letters().iter().cloned());
        let mut framings = self.framings;
        framings.extend(other.framings);
        let page = self.page.disjoint_union(other.page)?;
        let monodromy = TwistWord::new(&page, letters)?;
        let ob = OpenBook {
            page,
            monodromy,
            framings,
        };
        ob.page.validate()?;
        Ok(ob)
    }

    /// Adds a 1-handle to the page and composes the monodromy with one twist
    /// along the new curve. With `to` absent or equal to `at`, the handle
    /// splits an ear off `at`; with a second label on the same component it
    /// joins the two circles. `sign` must be `+1` or `-1`.
    pub fn stabilize(&self, at: &str, to: Option<&str>, sign: i64) -> Result<OpenBook> {
        if sign != 1 && sign != -1 {
            return Err(Error::Unsupported(format!(
                "stabilization sign must be +1 or -1, got {sign}"
            )));
        }
        let mut page = self.page.clone();
        let (_, curve) = match to {
            None => page.split_boundary(at)?,
            Some(l) if l == at => page.split_boundary(at)?,
            Some(l) => page.join_boundaries(at, l)?,
        };
        let mut letters = self.monodromy.letters().to_vec();
        letters.push((curve, sign));
        self.rebuilt(page, letters)
    }

    /// Fibre connected sum of the binding circles `k0` and `k1` with relative
    /// framing `m`. Installs a navel at each circle, attaches the tube, and
    /// appends the merged navel monodromy
    /// `t_a0 t_b0^-1 t_a1 t_b1^-1 t_gamma^(m-2)`.
    pub fn binding_sum(&self, k0: &str, k1: &str, m: i64) -> Result<OpenBook> {
        if k0 == k1 {
            return Err(Error::LabelsCoincide(k0.to_owned(), k1.to_owned()));
        }
        let mut page = self.page.clone();
        page.label(k0)?;
        page.label(k1)?;
        let site0 = page.add_site(k0)?;
        let site1 = page.add_site(k1)?;
        let join = page.attach_tube(&site0, &site1)?;
        let mu = unit_class(&join.meridian);
        let class0 = page.label(k0)?.class.clone();
        let class1 = page.label(k1)?.class.clone();
        let names = navel_names(&page, &["a0", "b0", "a1", "b1", "g"]);
        page.register_curve(&names[0], class0.clone(), Some(k0))?;
        page.register_curve(&names[1], class_sum(&class0, &mu, 1), None)?;
        page.register_curve(&names[2], class1.clone(), Some(k1))?;
        page.register_curve(&names[3], class_sum(&class1, &mu, -1), None)?;
        page.register_curve(&names[4], mu, None)?;
        let mut letters = self.monodromy.letters().to_vec();
        letters.push((names[0].clone(), 1));
        letters.push((names[1].clone(), -1));
        letters.push((names[2].clone(), 1));
        letters.push((names[3].clone(), -1));
        letters.push((names[4].clone(), m - 2));
        self.rebuilt(page, letters)
    }

    /// Two consecutive binding sums with trivial annulus open books at `k`;
    /// the manifold is unchanged while the page grows by two annuli on a
    /// chain of tubes.
    pub fn lutz_full(&self, k: &str) -> Result<OpenBook> {
        self.page.label(k)?;
        let names = fresh_labels(&self.page, "lz", 4);
        let first = OpenBook::with_identity(Page::single(0, &[&names[0], &names[1]])?);
        let ob = self.clone().disjoint_union(first)?;
        let ob = ob.binding_sum(k, &names[0], 0)?;
        let second = OpenBook::with_identity(Page::single(0, &[&names[2], &names[3]])?);
        let ob = ob.disjoint_union(second)?;
        ob.binding_sum(&names[1], &names[2], 0)
    }

    /// Binding-sums a two-annulus chain onto the circles `k0` and `k1` with
    /// framings `m` and `n`.
    pub fn giroux_gadget(&self, k0: &str, k1: &str, m: i64, n: i64) -> Result<OpenBook> {
        if k0 == k1 {
            return Err(Error::LabelsCoincide(k0.to_owned(), k1.to_owned()));
        }
        self.page.label(k0)?;
        self.page.label(k1)?;
        let names = fresh_labels(&self.page, "gx", 4);
        let ann_a = OpenBook::with_identity(Page::single(0, &[&names[0], &names[1]])?);
        let ann_b = OpenBook::with_identity(Page::single(0, &[&names[2], &names[3]])?);
        let gadget = ann_a
            .disjoint_union(ann_b)?
            .binding_sum(&names[0], &names[2], 0)?;
        let ob = self.clone().disjoint_union(gadget)?;
        let ob = ob.binding_sum(k0, &names[1], m)?;
        ob.binding_sum(&names[3], k1, n)
    }

    /// Renames every label and curve with a prefix, rewriting the monodromy
    /// and the framing table.
    fn prefixed(mut self, prefix: &str) -> Result<OpenBook> {
        let curve_map = self.page.prefix_names(prefix)?;
        let monodromy = self.monodromy.rename_curves(&self.page, &curve_map)?;
        let framings = self
            .framings
            .into_iter()
            .map(|(l, m)| (format!("{prefix}{l}"), m))
            .collect();
        Ok(OpenBook {
            page: self.page,
            monodromy,
            framings,
        })
    }
}

/// Replaces a pair of framings by their normalized form `(m1 + m2, 0)`; the
/// binding sum depends only on the total.
pub fn normalize_framings(m1: i64, m2: i64) -> (i64, i64) {
    (m1 + m2, 0)
}

/// Curves of a navel installed at one boundary circle, before any sum: two
/// parallel copies of the circle and a central curve bounding the disc the
/// future tube will replace.
#[derive(Debug, Clone)]
pub struct NavelTriple {
    pub label: String,
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
}

fn navel_names(page: &Page, suffixes: &[&str]) -> Vec<String> {
    let mut n = 0;
    loop {
        let names: Vec<String> = suffixes.iter().map(|s| format!("nv{n}.{s}")).collect();
        if names.iter().all(|name| page.curve(name).is_err()) {
            return names;
        }
        n += 1;
    }
}

/// Registers the three navel curves at a boundary label. The central curve
/// bounds a disc, so its class is zero.
pub fn register_navel_triple(page: &mut Page, label: &str) -> Result<NavelTriple> {
    let class = page.label(label)?.class.clone();
    let names = navel_names(page, &["a", "b", "g"]);
    page.register_curve(&names[0], class.clone(), Some(label))?;
    page.register_curve(&names[1], class, Some(label))?;
    page.register_curve(&names[2], Class::new(), None)?;
    Ok(NavelTriple {
        label: label.to_owned(),
        alpha: names[0].clone(),
        beta: names[1].clone(),
        gamma: names[2].clone(),
    })
}

/// The navel monodromy `t_alpha t_beta^-1 t_gamma^(m-1)`; isotopic to the
/// identity, and exactly the identity on homology.
pub fn navel_word(page: &Page, m: i64, triple: &NavelTriple) -> Result<TwistWord> {
    TwistWord::new(
        page,
        vec![
            (triple.alpha.clone(), 1),
            (triple.beta.clone(), -1),
            (triple.gamma.clone(), m - 1),
        ],
    )
}

/// Which end of the fibre sum a pure braid word twists: the front factor
/// uses the `d` curves, the back factor the `dp` curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Front,
    Back,
}

/// Translates a combed pure braid word into twist letters on the chain page:
/// each generator `A_{ij}^e` becomes a framed twist around the tubes `i` and
/// `j` corrected by the meridian twists of both.
pub fn pure_braid_to_twists(word: &PureBraidWord, side: Side) -> Vec<(String, i64)> {
    let mut letters = Vec::new();
    for &(i, j, e) in &word.letters {
        let delta = match side {
            Side::Front => format!("d{i}_{j}"),
            Side::Back => format!("dp{i}_{j}"),
        };
        letters.push((delta, e));
        letters.push((format!("a{i}"), -e));
        letters.push((format!("a{j}"), -e));
    }
    letters
}

/// The chain word `prod_i t_g<i> t_a<i> t_a<i+1> t_g<i>` on an `n`-tube
/// chain page; empty for `n = 1`.
pub fn chain_word(page: &Page, n: usize) -> Result<TwistWord> {
    let mut letters = Vec::new();
    for i in 1..n {
        letters.push((format!("g{i}"), 1));
        letters.push((format!("a{i}"), 1));
        letters.push((format!("a{}", i + 1), 1));
        letters.push((format!("g{i}"), 1));
    }
    TwistWord::new(page, letters)
}

/// Fibre sum of two trivial disc open books along closed multi-sections
/// presented as braids. Both braids must have the same strand count and the
/// standard cyclic permutation; the monodromy is the chain word followed by
/// the twist images of both combed pure parts.
pub fn multi_section_sum(k0: &Braid, k1: &Braid) -> Result<OpenBook> {
    if k0.strands() != k1.strands() {
        return Err(Error::SectionCountMismatch(k0.strands(), k1.strands()));
    }
    let n = k0.strands();
    let front = braid::comb(&braid::normal_form(k0)?.pure)?;
    let back = braid::comb(&braid::normal_form(k1)?.pure)?;
    let page = Page::make_chain_page(n)?;
    let mut letters = chain_word(&page, n)?.letters().to_vec();
    letters.extend(pure_braid_to_twists(&front, Side::Front));
    letters.extend(pure_braid_to_twists(&back, Side::Back));
    let word = TwistWord::new(&page, letters)?;
    OpenBook::new(page, word)
}

/// The three closed-form monodromies of sums of standard multi-sections.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardCase {
    /// Both sections positive.
    PP,
    /// Front negative, back positive.
    MP,
    /// Both sections negative.
    MM,
}

/// Closed-form monodromy words on the `n`-tube chain page:
/// `pp`: `prod t_g t_a t_a' t_g`; `mp`: `prod (t_g t_a t_a')^2 t_d^-1`;
/// `mm`: `prod t_a t_a' (t_g t_a t_a')^2 t_d^-1 t_dp^-1`.
pub fn standard_braid_word(page: &Page, case: StandardCase, n: usize) -> Result<TwistWord> {
    if n < 2 {
        return Err(Error::Unsupported(
            "closed-form section words need at least two strands".into(),
        ));
    }
    let mut letters: Vec<(String, i64)> = Vec::new();
    for i in 1..n {
        let g = format!("g{i}");
        let a = format!("a{i}");
        let a2 = format!("a{}", i + 1);
        let d = format!("d{i}_{}", i + 1);
        let dp = format!("dp{i}_{}", i + 1);
        match case {
            StandardCase::PP => {
                letters.extend([(g.clone(), 1), (a, 1), (a2, 1), (g, 1)]);
            }
            StandardCase::MP => {
                letters.extend([
                    (g.clone(), 1),
                    (a.clone(), 1),
                    (a2.clone(), 1),
                    (g, 1),
                    (a, 1),
                    (a2, 1),
                    (d, -1),
                ]);
            }
            StandardCase::MM => {
                letters.extend([
                    (a.clone(), 1),
                    (a2.clone(), 1),
                    (g.clone(), 1),
                    (a.clone(), 1),
                    (a2.clone(), 1),
                    (g, 1),
                    (a, 1),
                    (a2, 1),
                    (d, -1),
                    (dp, -1),
                ]);
            }
        }
    }
    TwistWord::new(page, letters)
}

/// The cycle of `2n` trivial annulus open books, binding-summed neighbor to
/// neighbor; every member of this family is a torus bundle with first
/// homology of rank three.
pub fn t3_open_book(n: usize) -> Result<OpenBook> {
    if n == 0 {
        return Err(Error::Unsupported(
            "the torus-bundle family needs n >= 1".into(),
        ));
    }
    let mut ob: Option<OpenBook> = None;
    for i in 0..2 * n {
        let l0 = format!("t{}", 2 * i);
        let l1 = format!("t{}", 2 * i + 1);
        let annulus = OpenBook::with_identity(Page::single(0, &[&l0, &l1])?);
        ob = Some(match ob {
            None => annulus,
            Some(prev) => prev.disjoint_union(annulus)?,
        });
    }
    let mut ob = ob.expect("n >= 1 gives at least two annuli");
    for i in 0..2 * n {
        let k0 = format!("t{}", 2 * i + 1);
        let k1 = format!("t{}", (2 * i + 2) % (4 * n));
        ob = ob.binding_sum(&k0, &k1, 0)?;
    }
    Ok(ob)
}

/// Binding-sums the positive and negative halves of a convex surface bundle
/// along a bijection between their binding labels (the dividing curves).
/// Negative-side names are prefixed with `n.` in the result.
pub fn convex_bundle_sum(
    positive: &OpenBook,
    negative: &OpenBook,
    pairs: &[(String, String)],
) -> Result<OpenBook> {
    if pairs.is_empty() {
        return Err(Error::Unsupported(
            "the dividing set must have at least one component".into(),
        ));
    }
    let lefts: std::collections::BTreeSet<&str> = pairs.iter().map(|(a, _)| a.as_str()).collect();
    let rights: std::collections::BTreeSet<&str> = pairs.iter().map(|(_, b)| b.as_str()).collect();
    if lefts.len() != pairs.len() || rights.len() != pairs.len() {
        return Err(Error::Unsupported(
            "the pairing repeats a binding label".into(),
        ));
    }
    let pos_labels: std::collections::BTreeSet<&str> = positive
        .page()
        .labels()
        .keys()
        .map(String::as_str)
        .collect();
    let neg_labels: std::collections::BTreeSet<&str> = negative
        .page()
        .labels()
        .keys()
        .map(String::as_str)
        .collect();
    if lefts != pos_labels || rights != neg_labels {
        return Err(Error::Unsupported(
            "the pairing must match the two bindings exactly".into(),
        ));
    }
    let negative = negative.clone().prefixed("n.")?;
    let mut ob = positive.clone().disjoint_union(negative)?;
    for (lp, ln) in pairs {
        ob = ob.binding_sum(lp, &format!("n.{ln}"), 0)?;
    }
    Ok(ob)
}

/// `count` label names starting with `prefix` that are unused on the page.
fn fresh_labels(page: &Page, prefix: &str, count: usize) -> Vec<String> {
    let mut out = Vec::new();
    let mut k = 0;
    while out.len() < count {
        let cand = format!("{prefix}{k}");
        if !page.labels().contains_key(&cand) && !page.generators().contains(&format!("d.{cand}")) {
            out.push(cand);
        }
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::h1_of_open_book;
    use num_bigint::BigInt;

    #[test]
    fn preset_shapes() {
        let disc = OpenBook::preset("s3_disc").unwrap();
        assert_eq!(disc.page().boundary_count(), 1);
        assert!(disc.monodromy().is_empty());

        let plus = OpenBook::preset("s3_hopf_plus").unwrap();
        assert_eq!(plus.monodromy().to_string(), "c");
        let minus = OpenBook::preset("s3_hopf_minus").unwrap();
        assert_eq!(minus.monodromy().to_string(), "c^-1");

        let round = OpenBook::preset("s1s2").unwrap();
        assert!(round.monodromy().is_empty());
        assert_eq!(round.page().boundary_count(), 2);

        let two = OpenBook::preset("two_discs").unwrap();
        assert_eq!(two.page().components().len(), 2);

        let err = OpenBook::preset("nosuch").unwrap_err();
        assert!(err.to_string().contains("unknown preset"));
    }

    #[test]
    fn framings_are_tracked_per_label() {
        let mut ob = OpenBook::preset("s1s2").unwrap();
        ob.set_framing("b0", 3).unwrap();
        assert_eq!(ob.framings()["b0"], 3);
        assert_eq!(ob.framings()["b1"], 0);
        assert!(ob.set_framing("zz", 1).is_err());
        assert_eq!(normalize_framings(2, 3), (5, 0));
        assert_eq!(normalize_framings(0, 0), (0, 0));
        assert_eq!(normalize_framings(-1, 1), (0, 0));
    }

    #[test]
    fn split_stabilization_of_the_disc_is_a_hopf_book() {
        for sign in [1, -1] {
            let ob = OpenBook::preset("s3_disc").unwrap();
            let st = ob.stabilize("b0", None, sign).unwrap();
            assert_eq!(st.page().boundary_count(), 2);
            assert_eq!(st.page().components()[0].genus, 0);
            assert_eq!(st.monodromy().len(), 1);
            let (curve, e) = &st.monodromy().letters()[0];
            assert_eq!(*e, sign);
            assert!(st
                .page()
                .curve(curve)
                .unwrap()
                .boundary_parallel_to
                .is_some());
            assert!(st.h1().unwrap().is_trivial());
        }
    }

    #[test]
    fn stabilization_preserves_homology_on_presets() {
        for name in ["s3_disc", "s3_hopf_plus", "s3_hopf_minus", "s1s2"] {
            let ob = OpenBook::preset(name).unwrap();
            let before = ob.h1().unwrap();
            for sign in [1, -1] {
                let split = ob.stabilize("b0", None, sign).unwrap();
                assert_eq!(split.h1().unwrap(), before, "{name} split {sign}");
            }
        }
        // Join stabilization along both circles of one annulus component.
        let ob = OpenBook::preset("s1s2").unwrap();
        for sign in [1, -1] {
            let joined = ob.stabilize("b0", Some("b1"), sign).unwrap();
            assert_eq!(joined.page().components()[0].genus, 1);
            assert_eq!(joined.page().boundary_count(), 1);
            assert_eq!(joined.h1().unwrap(), ob.h1().unwrap(), "join {sign}");
        }
    }

    #[test]
    fn stabilization_input_errors() {
        let ob = OpenBook::preset("s3_disc").unwrap();
        assert!(matches!(
            ob.stabilize("b0", None, 2),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            ob.stabilize("zz", None, 1),
            Err(Error::UnknownLabel(_))
        ));
        let two = OpenBook::preset("two_discs").unwrap();
        assert!(matches!(
            two.stabilize("b0", Some("b1"), 1),
            Err(Error::DifferentComponents(_, _))
        ));
    }

    #[test]
    fn two_disc_binding_sum_is_a_product() {
        let ob = OpenBook::preset("two_discs")
            .unwrap()
            .binding_sum("b0", "b1", 0)
            .unwrap();
        assert_eq!(ob.page().boundary_count(), 2);
        assert_eq!(ob.page().components().len(), 1);
        assert_eq!(ob.page().components()[0].genus, 0);
        assert_eq!(ob.h1().unwrap(), AbelianGroup::free(1));
    }

    #[test]
    fn two_disc_binding_sum_framing_family() {
        for m in -5i64..=5 {
            let ob = OpenBook::preset("two_discs")
                .unwrap()
                .binding_sum("b0", "b1", m)
                .unwrap();
            assert_eq!(
                ob.h1().unwrap(),
                AbelianGroup::cyclic(m.unsigned_abs()),
                "framing {m}"
            );
        }
    }

    #[test]
    fn binding_sum_is_order_symmetric_on_homology() {
        for name in ["s1s2", "s3_hopf_plus", "two_discs"] {
            for m in -3i64..=3 {
                let ob = OpenBook::preset(name).unwrap();
                let one = ob.binding_sum("b0", "b1", m).unwrap().h1().unwrap();
                let two = ob.binding_sum("b1", "b0", m).unwrap().h1().unwrap();
                assert_eq!(one, two, "{name} at framing {m}");
            }
        }
    }

    #[test]
    fn binding_sum_input_errors() {
        let ob = OpenBook::preset("s1s2").unwrap();
        assert!(matches!(
            ob.binding_sum("b0", "b0", 0),
            Err(Error::LabelsCoincide(_, _))
        ));
        assert!(matches!(
            ob.binding_sum("b0", "zz", 0),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn merged_navel_exponents() {
        for (m, expect) in [(0i64, Some(-2i64)), (2, None), (5, Some(3))] {
            let ob = OpenBook::preset("two_discs")
                .unwrap()
                .binding_sum("b0", "b1", m)
                .unwrap();
            let letters = ob.monodromy().letters();
            let gamma = letters.iter().find(|(c, _)| c.ends_with(".g"));
            match expect {
                Some(e) => assert_eq!(gamma.map(|(_, k)| *k), Some(e), "m={m}"),
                None => assert!(gamma.is_none(), "m={m}"),
            }
        }
    }

    #[test]
    fn navel_words_before_any_sum() {
        let ob = OpenBook::preset("s1s2").unwrap();
        let mut page = ob.page().clone();
        let triple = register_navel_triple(&mut page, "b1").unwrap();
        let w1 = navel_word(&page, 1, &triple).unwrap();
        assert_eq!(w1.len(), 2);
        let w0 = navel_word(&page, 0, &triple).unwrap();
        assert_eq!(w0.letters().last().unwrap(), &(triple.gamma.clone(), -1));
        for m in -3..=3 {
            let w = navel_word(&page, m, &triple).unwrap();
            assert!(w.affine_action(&page).unwrap().is_identity(), "m={m}");
        }
    }

    #[test]
    fn one_strand_sum_is_the_round_product() {
        let ob = multi_section_sum(&braid::s_plus(1), &braid::s_plus(1)).unwrap();
        assert!(ob.monodromy().is_empty());
        assert_eq!(ob.page().boundary_count(), 2);
        assert_eq!(ob.h1().unwrap(), AbelianGroup::free(1));
    }

    #[test]
    fn positive_positive_sums_match_the_closed_form() {
        for n in 2..=4 {
            let ob = multi_section_sum(&braid::s_plus(n), &braid::s_plus(n)).unwrap();
            let closed = standard_braid_word(ob.page(), StandardCase::PP, n).unwrap();
            assert_eq!(ob.monodromy().letters(), closed.letters(), "n={n}");
        }
    }

    #[test]
    fn section_sum_input_errors() {
        let err = multi_section_sum(&braid::s_plus(2), &braid::s_plus(3)).unwrap_err();
        assert!(matches!(err, Error::SectionCountMismatch(2, 3)));
        let not_section = Braid::parse(2, "s1 s1").unwrap();
        match multi_section_sum(&not_section, &braid::s_plus(2)) {
            Err(Error::NotSectionBraid { cycle_type }) => assert_eq!(cycle_type, "1+1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn closed_form_word_lengths() {
        let page = Page::make_chain_page(2).unwrap();
        assert_eq!(
            standard_braid_word(&page, StandardCase::PP, 2)
                .unwrap()
                .len(),
            4
        );
        assert_eq!(
            standard_braid_word(&page, StandardCase::MP, 2)
                .unwrap()
                .len(),
            7
        );
        assert_eq!(
            standard_braid_word(&page, StandardCase::MM, 2)
                .unwrap()
                .len(),
            10
        );
        assert!(standard_braid_word(&page, StandardCase::PP, 1).is_err());
    }

    #[test]
    fn torus_bundle_pages() {
        for n in 1..=2usize {
            let ob = t3_open_book(n).unwrap();
            assert_eq!(ob.page().components().len(), 1, "n={n}");
            assert_eq!(ob.page().euler_characteristic(), -4 * (n as i64), "n={n}");
            assert_eq!(ob.page().boundary_count(), 4 * n);
        }
        assert!(t3_open_book(0).is_err());
    }

    #[test]
    fn torus_bundle_homology() {
        assert_eq!(
            t3_open_book(1).unwrap().h1().unwrap(),
            AbelianGroup::free(3)
        );
    }

    #[test]
    fn lutz_twist_keeps_the_manifold() {
        let ob = OpenBook::preset("s3_disc").unwrap();
        let twisted = ob.lutz_full("b0").unwrap();
        assert!(twisted.h1().unwrap().is_trivial());
        assert_eq!(
            twisted.page().boundary_count(),
            ob.page().boundary_count() + 4
        );
        assert!(twisted.page().label("b0").is_ok());
    }

    #[test]
    fn gadget_bookkeeping() {
        let ob = OpenBook::preset("s1s2").unwrap();
        let out = ob.giroux_gadget("b0", "b1", 0, 0).unwrap();
        assert_eq!(
            ob.page().euler_characteristic() - out.page().euler_characteristic(),
            6
        );
        assert!(out.page().label("b0").is_ok());
        assert!(out.page().label("b1").is_ok());
        // One base annulus plus the two gadget annuli close up into a cycle
        // of three. An even cycle of annuli builds the 3-torus, but an odd
        // one picks up a half turn and closes as the torus bundle with
        // monodromy -I, whose first homology is Z + Z/2 + Z/2. Reversing
        // individual sums cannot change this: the binding sum is symmetric
        // in its two circles.
        let expected = AbelianGroup {
            free_rank: 1,
            torsion: vec![BigInt::from(2), BigInt::from(2)],
        };
        assert_eq!(out.h1().unwrap(), expected);
    }

    #[test]
    fn convex_sum_checks_the_pairing() {
        let pos = OpenBook::preset("s3_disc").unwrap();
        let neg = OpenBook::preset("s3_disc").unwrap();
        assert!(matches!(
            convex_bundle_sum(&pos, &neg, &[]),
            Err(Error::Unsupported(_))
        ));
        let bad = [("b0".to_owned(), "zz".to_owned())];
        assert!(convex_bundle_sum(&pos, &neg, &bad).is_err());
        let good = [("b0".to_owned(), "b0".to_owned())];
        let ob = convex_bundle_sum(&pos, &neg, &good).unwrap();
        assert!(ob.page().label("n.b0").is_ok());
        assert_eq!(ob.h1().unwrap(), AbelianGroup::free(1));
    }

    #[test]
    fn homology_helper_matches_the_module_function() {
        let ob = OpenBook::preset("s3_hopf_plus").unwrap();
        assert_eq!(ob.h1().unwrap(), h1_of_open_book(&ob).unwrap());
    }
}
