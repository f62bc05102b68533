//! Dehn twist words and their affine action on page homology.
//!
//! A twist word is an ordered list of letters `(curve, exponent)`; exponent
//! `+1` is a right-handed twist. Words act left to right: in `w1 w2`, the
//! letters of `w1` act first.
//!
//! The homology shadow of a word is an [`AffineAction`]: the linear part is
//! the product of transvections `x -> x + e <x,c> [c]`, and for every
//! non-base boundary label `j` a translation class records what the twists
//! sweep past the reference arc to `j`. A single letter `(c, e)` translates
//! `d_j` by `e <a_j, c> [c]`; letters compose by
//! `(L2, d2) (L1, d1) = (L2 L1, d2 + L2 d1)` with the later letter on the
//! left. This is exactly the data needed to present the first homology of
//! the filled mapping torus, so two words with different affine actions can
//! never be isotopic page maps.

use std::collections::BTreeMap;
use std::fmt;

use crate::invariants::SpanChecker;
use crate::page::{class_sum, unit_class, Class, Page};
use crate::{Error, Result};

/// An ordered, free-reduced word of Dehn twists along registered curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistWord {
    letters: Vec<(String, i64)>,
    page_fp: u64,
}

impl TwistWord {
    /// Builds a word, checking every curve is registered and free-reducing:
    /// adjacent letters along one curve merge and zero exponents vanish.
    pub fn new(page: &Page, letters: Vec<(String, i64)>) -> Result<TwistWord> {
        let mut reduced: Vec<(String, i64)> = Vec::with_capacity(letters.len());
        for (name, e) in letters {
            page.curve(&name)?;
            if e == 0 {
                continue;
            }
            match reduced.last_mut() {
                Some((top, k)) if *top == name => {
                    *k += e;
                    if *k == 0 {
                        reduced.pop();
                    }
                }
                _ => reduced.push((name, e)),
            }
        }
        Ok(TwistWord {
            letters: reduced,
            page_fp: page.fingerprint(),
        })
    }

    /// The empty word (identity monodromy).
    pub fn empty(page: &Page) -> TwistWord {
        TwistWord {
            letters: Vec::new(),
            page_fp: page.fingerprint(),
        }
    }

    /// Parses the `name^k` syntax, whitespace separated; `^k` defaults to 1.
    pub fn parse(page: &Page, text: &str) -> Result<TwistWord> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let k: i64 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad twist exponent in `{tok}`")))?;
                    (n, k)
                }
                None => (tok, 1),
            };
            if name.is_empty() {
                return Err(Error::Parse(format!("empty curve name in `{tok}`")));
            }
            letters.push((name.to_owned(), exp));
        }
        TwistWord::new(page, letters)
    }

    pub fn letters(&self) -> &[(String, i64)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_page(&self, page: &Page) -> Result<()> {
        if self.page_fp == page.fingerprint() {
            Ok(())
        } else {
            Err(Error::PageMismatch)
        }
    }

    /// Concatenation `self` then `other`, free-reduced.
    pub fn compose(&self, page: &Page, other: &TwistWord) -> Result<TwistWord> {
        self.check_page(page)?;
        other.check_page(page)?;
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        TwistWord::new(page, letters)
    }

    /// The inverse word: letters reversed with negated exponents.
    pub fn inverse(&self, page: &Page) -> Result<TwistWord> {
        self.check_page(page)?;
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|(c, e)| (c.clone(), -e))
            .collect();
        TwistWord::new(page, letters)
    }

    /// The `k`-fold concatenation (inverse word for negative `k`).
    pub fn powered(&self, page: &Page, k: i64) -> Result<TwistWord> {
        let base = if k < 0 {
            self.inverse(page)?
        } else {
            self.clone()
        };
        let mut letters = Vec::new();
        for _ in 0..k.unsigned_abs() {
            letters.extend(base.letters.iter().cloned());
        }
        TwistWord::new(page, letters)
    }

    /// Renames the curves of the word; used when the page renames curves.
    pub fn rename_curves(&self, page: &Page, map: &BTreeMap<String, String>) -> Result<TwistWord> {
        let letters = self
            .letters
            .iter()
            .map(|(c, e)| (map.get(c).unwrap_or(c).clone(), *e))
            .collect();
        TwistWord::new(page, letters)
    }

    /// The affine homology action of the word on its page.
    pub fn affine_action(&self, page: &Page) -> Result<AffineAction> {
        self.check_page(page)?;
        let mut act = AffineAction::identity();
        for (name, e) in &self.letters {
            let gamma = &page.curve(name)?.class;
            act = act.then_twist(page, gamma, *e);
        }
        Ok(act)
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, e) in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Linear transvection product plus one translation class per non-base
/// boundary label; see the module documentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineAction {
    /// Image of each generator; absent generators map to themselves.
    linear: BTreeMap<String, Class>,
    /// Translation class per boundary label; absent labels translate by zero.
    translations: BTreeMap<String, Class>,
}

impl AffineAction {
    pub fn identity() -> AffineAction {
        AffineAction {
            linear: BTreeMap::new(),
            translations: BTreeMap::new(),
        }
    }

    /// Image of a single generator under the linear part.
    pub fn image_of(&self, gen: &str) -> Class {
        self.linear
            .get(gen)
            .cloned()
            .unwrap_or_else(|| unit_class(gen))
    }

    /// Linear image of a class.
    pub fn apply(&self, x: &Class) -> Class {
        let mut out = Class::new();
        for (g, v) in x {
            match self.linear.get(g) {
                Some(img) => {
                    for (h, w) in img {
                        let e = out.entry(h.clone()).or_insert(0);
                        *e += v * w;
                    }
                }
                None => {
                    let e = out.entry(g.clone()).or_insert(0);
                    *e += v;
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Translation class swept past the arc to `label`.
    pub fn translation(&self, label: &str) -> Class {
        self.translations.get(label).cloned().unwrap_or_default()
    }

    /// Composes one twist letter after this action.
    fn then_twist(self, page: &Page, gamma: &Class, e: i64) -> AffineAction {
        let letter =
            |x: &Class| -> Class { class_sum(x, gamma, e * page.pairing_classes(x, gamma)) };
        let mut linear = BTreeMap::new();
        for g in page.generators() {
            let img = letter(&self.image_of(g));
            if img != unit_class(g) {
                linear.insert(g.clone(), img);
            }
        }
        let mut translations = BTreeMap::new();
        for label in page.labels().keys() {
            if page.is_base_label(label) {
                continue;
            }
            let carried = letter(&self.translation(label));
            let crossings = page.crossing(label, gamma);
            let d = class_sum(&carried, gamma, e * crossings);
            if !d.is_empty() {
                translations.insert(label.clone(), d);
            }
        }
        AffineAction {
            linear,
            translations,
        }
    }

    /// True when the action is exactly the identity (no reduction applied).
    pub fn is_identity(&self) -> bool {
        self.linear.is_empty() && self.translations.is_empty()
    }

    /// Dense matrix of the linear part in generator order: column `j` holds
    /// the image of the `j`-th generator.
    pub fn matrix(&self, page: &Page) -> Vec<Vec<i64>> {
        let gens = page.generators();
        let mut m = vec![vec![0i64; gens.len()]; gens.len()];
        for (j, g) in gens.iter().enumerate() {
            let img = self.image_of(g);
            for (i, h) in gens.iter().enumerate() {
                m[i][j] = img.get(h).copied().unwrap_or(0);
            }
        }
        m
    }
}

/// True when the two words act identically on homology, working modulo the
/// page's relation rows.
pub fn actions_equal(page: &Page, w1: &TwistWord, w2: &TwistWord) -> Result<bool> {
    Ok(action_differences(page, w1, w2)?.is_empty())
}

/// Names the places where the affine actions of two words differ modulo the
/// relation rows: generators with differing images and labels with differing
/// translations. Empty means the actions agree.
pub fn action_differences(page: &Page, w1: &TwistWord, w2: &TwistWord) -> Result<Vec<String>> {
    let a1 = w1.affine_action(page)?;
    let a2 = w2.affine_action(page)?;
    let checker = SpanChecker::from_classes(page.relations(), page.generators());
    let mut diffs = Vec::new();
    for g in page.generators() {
        let d = class_sum(&a1.image_of(g), &a2.image_of(g), -1);
        if !checker.contains_class(&d, page.generators()) {
            diffs.push(format!("image of `{g}`"));
        }
    }
    for label in page.labels().keys() {
        if page.is_base_label(label) {
            continue;
        }
        let d = class_sum(&a1.translation(label), &a2.translation(label), -1);
        if !checker.contains_class(&d, page.generators()) {
            diffs.push(format!("translation at `{label}`"));
        }
    }
    Ok(diffs)
}

/// Mapping class relations checkable at the affine homology level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    /// Twists along disjoint curves commute.
    Commute,
    /// `t_a t_b t_a = t_b t_a t_b` for curves meeting once.
    Braid,
    /// `(t_a t_b t_c)^4 = t_d t_d'` for a three-curve chain whose boundary
    /// is the pair `d`, `d'`.
    Chain3,
}

/// Result of a relation check; `details` names differing entries on failure.
#[derive(Debug, Clone)]
pub struct RelationCheck {
    pub pass: bool,
    pub details: Vec<String>,
}

/// Verifies a twist relation on registered curves after checking that their
/// pairing pattern matches the relation's hypothesis.
pub fn check_relation(page: &Page, kind: RelationKind, curves: &[&str]) -> Result<RelationCheck> {
    let class = |n: &str| -> Result<Class> { Ok(page.curve(n)?.class.clone()) };
    let word = |letters: &[(&str, i64)]| -> Result<TwistWord> {
        TwistWord::new(
            page,
            letters.iter().map(|(c, e)| ((*c).to_owned(), *e)).collect(),
        )
    };
    let (w1, w2) = match kind {
        RelationKind::Commute => {
            let [a, b]: [&str; 2] = curves
                .try_into()
                .map_err(|_| Error::Unsupported("commute check takes two curves".into()))?;
            if page.pairing_classes(&class(a)?, &class(b)?) != 0 {
                return Err(Error::Unsupported(format!(
                    "curves `{a}`, `{b}` pair non-trivially; the commute relation does not apply"
                )));
            }
            (word(&[(a, 1), (b, 1)])?, word(&[(b, 1), (a, 1)])?)
        }
        RelationKind::Braid => {
            let [a, b]: [&str; 2] = curves
                .try_into()
                .map_err(|_| Error::Unsupported("braid check takes two curves".into()))?;
            if page.pairing_classes(&class(a)?, &class(b)?).abs() != 1 {
                return Err(Error::Unsupported(format!(
                    "curves `{a}`, `{b}` do not meet exactly once; the braid relation does not apply"
                )));
            }
            (
                word(&[(a, 1), (b, 1), (a, 1)])?,
                word(&[(b, 1), (a, 1), (b, 1)])?,
            )
        }
        RelationKind::Chain3 => {
            let [a, b, c, d, dp]: [&str; 5] = curves.try_into().map_err(|_| {
                Error::Unsupported(
                    "chain check takes three chain curves and a boundary pair".into(),
                )
            })?;
            let (ca, cb, cc) = (class(a)?, class(b)?, class(c)?);
            let chain_ok = page.pairing_classes(&ca, &cb).abs() == 1
                && page.pairing_classes(&cb, &cc).abs() == 1
                && page.pairing_classes(&ca, &cc) == 0;
            if !chain_ok {
                return Err(Error::Unsupported(format!(
                    "curves `{a}`, `{b}`, `{c}` do not form a chain"
                )));
            }
            let cube = word(&[(a, 1), (b, 1), (c, 1)])?;
            (cube.powered(page, 4)?, word(&[(d, 1), (dp, 1)])?)
        }
    };
    let details = action_differences(page, &w1, &w2)?;
    Ok(RelationCheck {
        pass: details.is_empty(),
        details,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::page::Page;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn annulus_word(text: &str) -> (Page, TwistWord) {
        let page = Page::make_annulus();
        let w = TwistWord::parse(&page, text).unwrap();
        (page, w)
    }

    #[test]
    fn parse_print_round_trip() {
        let page = Page::make_chain_page(2).unwrap();
        for text in ["a1 g1^-1 a2^3", "d1_2^-1 a1 a1", "", "g1^2"] {
            let w = TwistWord::parse(&page, text).unwrap();
            let printed = w.to_string();
            let again = TwistWord::parse(&page, &printed).unwrap();
            assert_eq!(printed, again.to_string());
        }
        // Canonical form merges adjacent letters and drops zero powers.
        let w = TwistWord::parse(&page, "a1 a1 g1^0 a2^1").unwrap();
        assert_eq!(w.to_string(), "a1^2 a2");
    }

    #[test]
    fn parse_rejects_unknown_and_garbage() {
        let page = Page::make_annulus();
        assert!(matches!(
            TwistWord::parse(&page, "nosuch"),
            Err(Error::UnknownCurve(_))
        ));
        assert!(matches!(
            TwistWord::parse(&page, "c^x"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn word_and_inverse_cancel() {
        let (page, w) = annulus_word("c^3");
        let inv = w.inverse(&page).unwrap();
        let prod = w.compose(&page, &inv).unwrap();
        assert!(prod.is_empty());
        assert!(prod.affine_action(&page).unwrap().is_identity());
    }

    #[test]
    fn page_mismatch_is_rejected() {
        let (_page, w) = annulus_word("c");
        let other = Page::make_chain_page(2).unwrap();
        let v = TwistWord::parse(&other, "a1").unwrap();
        assert!(matches!(w.compose(&other, &v), Err(Error::PageMismatch)));
    }

    #[test]
    fn annulus_twist_translates_by_the_core() {
        let (page, w) = annulus_word("c^5");
        let act = w.affine_action(&page).unwrap();
        // The core is central, so the linear part is the identity.
        for g in page.generators() {
            assert_eq!(act.image_of(g), unit_class(g));
        }
        let d = act.translation("b1");
        assert_eq!(d.get("d.b0"), Some(&5));
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn boundary_parallel_twist_touches_only_its_arc() {
        let page = Page::make_chain_page(2).unwrap();
        let mut page = page;
        let label_class = page.label("b1").unwrap().class.clone();
        page.register_curve("par", label_class, Some("b1")).unwrap();
        let w = TwistWord::parse(&page, "par").unwrap();
        let act = w.affine_action(&page).unwrap();
        for g in page.generators() {
            assert_eq!(act.image_of(g), unit_class(g));
        }
        assert!(!act.translation("b1").is_empty());
    }

    #[test]
    fn transvections_preserve_the_pairing_exactly() {
        let page = Page::make_chain_page(3).unwrap();
        let names: Vec<String> = page.curves().keys().cloned().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0x0b5e55ed);
        for _ in 0..40 {
            let len = rng.gen_range(0..30);
            let letters: Vec<(String, i64)> = (0..len)
                .map(|_| {
                    let c = names[rng.gen_range(0..names.len())].clone();
                    let e = *[-2i64, -1, 1, 2].get(rng.gen_range(0..4)).unwrap();
                    (c, e)
                })
                .collect();
            let w = TwistWord::new(&page, letters).unwrap();
            let act = w.affine_action(&page).unwrap();
            for g in page.generators() {
                for h in page.generators() {
                    let lhs = page.pairing_classes(&act.image_of(g), &act.image_of(h));
                    assert_eq!(lhs, page.pairing_gens(g, h), "pairing broken at ({g}, {h})");
                }
            }
        }
    }

    #[test]
    fn affine_action_is_functorial() {
        let page = Page::make_chain_page(2).unwrap();
        let names: Vec<String> = page.curves().keys().cloned().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0xfeedbead);
        for _ in 0..60 {
            let mut pick = |len: usize| -> TwistWord {
                let letters: Vec<(String, i64)> = (0..len)
                    .map(|_| {
                        let c = names[rng.gen_range(0..names.len())].clone();
                        (c, if rng.gen_bool(0.5) { 1 } else { -1 })
                    })
                    .collect();
                TwistWord::new(&page, letters).unwrap()
            };
            let w1 = pick(5);
            let w2 = pick(5);
            let combined = w1
                .compose(&page, &w2)
                .unwrap()
                .affine_action(&page)
                .unwrap();
            let a1 = w1.affine_action(&page).unwrap();
            let a2 = w2.affine_action(&page).unwrap();
            // Letters of w2 act after w1.
            for g in page.generators() {
                assert_eq!(combined.image_of(g), a2.apply(&a1.image_of(g)));
            }
            for label in page.labels().keys() {
                if page.is_base_label(label) {
                    continue;
                }
                let expect =
                    class_sum(&a2.translation(label), &a2.apply(&a1.translation(label)), 1);
                assert_eq!(
                    combined.translation(label),
                    expect,
                    "translation at {label}"
                );
            }
        }
    }

    #[test]
    fn actions_equal_detects_translation_differences() {
        let (page, w) = annulus_word("c");
        let empty = TwistWord::empty(&page);
        assert!(!actions_equal(&page, &w, &empty).unwrap());
        let padded = TwistWord::parse(&page, "c c^-1").unwrap();
        assert!(actions_equal(&page, &padded, &empty).unwrap());
    }

    #[test]
    fn commute_and_braid_relations_hold_on_the_chain_page() {
        let page = Page::make_chain_page(2).unwrap();
        let commute = check_relation(&page, RelationKind::Commute, &["a1", "a2"]).unwrap();
        assert!(commute.pass, "{:?}", commute.details);
        let braid = check_relation(&page, RelationKind::Braid, &["a1", "g1"]).unwrap();
        assert!(braid.pass, "{:?}", braid.details);
        let braid2 = check_relation(&page, RelationKind::Braid, &["g1", "a2"]).unwrap();
        assert!(braid2.pass, "{:?}", braid2.details);
    }

    #[test]
    fn chain_relation_holds_on_the_genus_one_page() {
        let page = Page::make_chain_page(2).unwrap();
        let chain = check_relation(
            &page,
            RelationKind::Chain3,
            &["a1", "g1", "a2", "d1_2", "dp1_2"],
        )
        .unwrap();
        assert!(chain.pass, "{:?}", chain.details);
    }

    #[test]
    fn relation_checks_reject_malformed_input() {
        let page = Page::make_chain_page(2).unwrap();
        assert!(matches!(
            check_relation(&page, RelationKind::Commute, &["a1", "g1"]),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            check_relation(&page, RelationKind::Braid, &["a1", "a2"]),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            check_relation(&page, RelationKind::Chain3, &["a1", "g1"]),
            Err(Error::Unsupported(_))
        ));
    }
}
