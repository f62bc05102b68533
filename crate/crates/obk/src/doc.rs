//! The JSON interchange format for open books.
//!
//! A document records the full page (components, generators, relation rows,
//! pairing, arcs, labels, panels, tubes), the registered curves, the
//! monodromy as a twist word in text form, and one framing per binding
//! label. Serialization is canonical: struct fields are declared in
//! alphabetical order, maps are sorted, and [`Document::to_json`] always
//! ends with a newline, so equal documents print byte-identically.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::openbook::OpenBook;
use crate::page::{Class, Component, Curve, LabelInfo, Page, Tube};
use crate::twist::TwistWord;
use crate::{Error, Result};

/// One binding circle and its framing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BindingDoc {
    pub framing: i64,
    pub label: String,
}

/// A registered curve: its homology class and, when it is isotopic to a
/// boundary circle, that circle's label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_parallel_to: Option<String>,
    pub class: Class,
}

/// A connected component of the page.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub genus: u32,
    pub labels: Vec<String>,
}

/// Bookkeeping for one boundary label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelDoc {
    pub class: Class,
    pub component: usize,
    pub panel: usize,
}

/// A tube between two panels; the meridian enters the `plus_panel` relation
/// with `+1` and the `minus_panel` relation with `-1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TubeDoc {
    pub meridian: String,
    pub minus_panel: usize,
    pub plus_panel: usize,
}

/// The page of an open book, possibly disconnected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PageDoc {
    pub arcs: BTreeMap<String, Class>,
    pub components: Vec<ComponentDoc>,
    pub generators: Vec<String>,
    pub labels: BTreeMap<String, LabelDoc>,
    pub pairing: BTreeMap<String, Class>,
    pub panels: Vec<usize>,
    pub relations: Vec<Class>,
    pub tubes: Vec<TubeDoc>,
}

/// A complete open-book document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub bindings: Vec<BindingDoc>,
    pub curves: BTreeMap<String, CurveDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
    pub monodromy: String,
    pub pages: PageDoc,
}

impl Document {
    /// Serializes an open book; `meta` starts empty and can be attached
    /// afterwards.
    pub fn from_open_book(ob: &OpenBook) -> Document {
        let page = ob.page();
        let pairing = page
            .generators()
            .iter()
            .filter_map(|g| {
                let row: Class = page
                    .generators()
                    .iter()
                    .filter_map(|h| {
                        let v = page.pairing_gens(g, h);
                        (v != 0).then(|| (h.clone(), v))
                    })
                    .collect();
                (!row.is_empty()).then(|| (g.clone(), row))
            })
            .collect();
        Document {
            bindings: ob
                .framings()
                .iter()
                .map(|(label, m)| BindingDoc {
                    framing: *m,
                    label: label.clone(),
                })
                .collect(),
            curves: page
                .curves()
                .iter()
                .map(|(name, c)| {
                    (
                        name.clone(),
                        CurveDoc {
                            boundary_parallel_to: c.boundary_parallel_to.clone(),
                            class: c.class.clone(),
                        },
                    )
                })
                .collect(),
            meta: None,
            monodromy: ob.monodromy().to_string(),
            pages: PageDoc {
                arcs: page.arcs().clone(),
                components: page
                    .components()
                    .iter()
                    .map(|c| ComponentDoc {
                        genus: c.genus,
                        labels: c.labels.iter().cloned().collect(),
                    })
                    .collect(),
                generators: page.generators().to_vec(),
                labels: page
                    .labels()
                    .iter()
                    .map(|(name, info)| {
                        (
                            name.clone(),
                            LabelDoc {
                                class: info.class.clone(),
                                component: info.component,
                                panel: info.panel,
                            },
                        )
                    })
                    .collect(),
                pairing,
                panels: page.panel_components().to_vec(),
                relations: page.relations().to_vec(),
                tubes: page
                    .tubes()
                    .iter()
                    .map(|t| TubeDoc {
                        meridian: t.meridian.clone(),
                        minus_panel: t.minus_panel,
                        plus_panel: t.plus_panel,
                    })
                    .collect(),
            },
        }
    }

    /// Rebuilds the open book, validating the page, the monodromy word, and
    /// the binding list (which must cover the boundary labels exactly).
    pub fn to_open_book(&self) -> Result<OpenBook> {
        let components = self
            .pages
            .components
            .iter()
            .map(|c| Component {
                genus: c.genus,
                labels: c.labels.iter().cloned().collect(),
            })
            .collect();
        let labels = self
            .pages
            .labels
            .iter()
            .map(|(name, l)| {
                (
                    name.clone(),
                    LabelInfo {
                        class: l.class.clone(),
                        component: l.component,
                        panel: l.panel,
                    },
                )
            })
            .collect();
        let curves = self
            .curves
            .iter()
            .map(|(name, c)| {
                (
                    name.clone(),
                    Curve {
                        class: c.class.clone(),
                        boundary_parallel_to: c.boundary_parallel_to.clone(),
                    },
                )
            })
            .collect();
        let tubes = self
            .pages
            .tubes
            .iter()
            .map(|t| Tube {
                meridian: t.meridian.clone(),
                plus_panel: t.plus_panel,
                minus_panel: t.minus_panel,
            })
            .collect();
        let page = Page::from_parts(
            components,
            self.pages.generators.clone(),
            self.pages.relations.clone(),
            self.pages.panels.clone(),
            self.pages.pairing.clone(),
            self.pages.arcs.clone(),
            labels,
            curves,
            tubes,
        )?;
        let monodromy = TwistWord::parse(&page, &self.monodromy)?;
        let mut ob = OpenBook::new(page, monodromy)?;
        let mut seen = BTreeSet::new();
        for b in &self.bindings {
            if !seen.insert(b.label.as_str()) {
                return Err(Error::InvalidDocument(format!(
                    "binding `{}` listed twice",
                    b.label
                )));
            }
            ob.set_framing(&b.label, b.framing).map_err(|_| {
                Error::InvalidDocument(format!("binding `{}` is not a boundary label", b.label))
            })?;
        }
        if seen.len() != ob.page().labels().len() {
            return Err(Error::InvalidDocument(
                "bindings must list every boundary label".into(),
            ));
        }
        Ok(ob)
    }

    /// Parses a document, rejecting unknown fields.
    pub fn parse(text: &str) -> Result<Document> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical pretty-printed form, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid;
    use crate::openbook::multi_section_sum;

    fn sample_books() -> Vec<OpenBook> {
        let mut books: Vec<OpenBook> = [
            "s3_disc",
            "s3_hopf_plus",
            "s3_hopf_minus",
            "s1s2",
            "two_discs",
        ]
        .iter()
        .map(|name| OpenBook::preset(name).unwrap())
        .collect();
        books.push(
            OpenBook::preset("two_discs")
                .unwrap()
                .binding_sum("b0", "b1", 3)
                .unwrap(),
        );
        books.push(crate::openbook::t3_open_book(1).unwrap());
        books.push(multi_section_sum(&braid::s_minus(2), &braid::s_plus(2)).unwrap());
        books.push(
            OpenBook::preset("s3_hopf_plus")
                .unwrap()
                .stabilize("b0", None, -1)
                .unwrap(),
        );
        books
    }

    #[test]
    fn documents_round_trip_through_text() {
        for ob in sample_books() {
            let doc = Document::from_open_book(&ob);
            let text = doc.to_json();
            assert!(text.ends_with('\n'));
            let back = Document::parse(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn documents_round_trip_through_open_books() {
        for ob in sample_books() {
            let doc = Document::from_open_book(&ob);
            let rebuilt = doc.to_open_book().unwrap();
            assert_eq!(Document::from_open_book(&rebuilt), doc);
            assert_eq!(rebuilt.h1().unwrap(), ob.h1().unwrap());
        }
    }

    #[test]
    fn framings_survive_the_round_trip() {
        let mut ob = OpenBook::preset("s1s2").unwrap();
        ob.set_framing("b1", -4).unwrap();
        let doc = Document::from_open_book(&ob);
        let back = doc.to_open_book().unwrap();
        assert_eq!(back.framings()["b1"], -4);
        assert_eq!(back.framings()["b0"], 0);
    }

    #[test]
    fn meta_is_kept_verbatim() {
        let ob = OpenBook::preset("s3_disc").unwrap();
        let mut doc = Document::from_open_book(&ob);
        doc.meta = Some(serde_json::json!({"note": "hello", "n": 3}));
        let back = Document::parse(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        // Absent meta is omitted from the output entirely.
        let plain = Document::from_open_book(&ob).to_json();
        assert!(!plain.contains("\"meta\""));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let ob = OpenBook::preset("s3_disc").unwrap();
        let text = Document::from_open_book(&ob).to_json();
        let patched = text.replacen("\"bindings\"", "\"surprise\": 1, \"bindings\"", 1);
        match Document::parse(&patched) {
            Err(Error::Json(e)) => assert!(e.to_string().contains("surprise")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bindings_must_match_the_boundary() {
        let ob = OpenBook::preset("s1s2").unwrap();
        let doc = Document::from_open_book(&ob);

        let mut missing = doc.clone();
        missing.bindings.pop();
        assert!(matches!(
            missing.to_open_book(),
            Err(Error::InvalidDocument(_))
        ));

        let mut doubled = doc.clone();
        let extra = doubled.bindings[0].clone();
        doubled.bindings.push(extra);
        assert!(matches!(
            doubled.to_open_book(),
            Err(Error::InvalidDocument(_))
        ));

        let mut bogus = doc;
        bogus.bindings.push(BindingDoc {
            framing: 0,
            label: "zz".into(),
        });
        assert!(matches!(
            bogus.to_open_book(),
            Err(Error::InvalidDocument(_))
        ));
    }

    #[test]
    fn corrupted_pages_are_rejected() {
        let ob = OpenBook::preset("s3_hopf_plus").unwrap();
        let mut doc = Document::from_open_book(&ob);
        doc.pages.relations[0].insert("d.b0".into(), 7);
        assert!(doc.to_open_book().is_err());
    }

    #[test]
    fn monodromy_words_are_validated() {
        let ob = OpenBook::preset("s3_hopf_plus").unwrap();
        let mut doc = Document::from_open_book(&ob);
        doc.monodromy = "ghost^2".into();
        assert!(matches!(doc.to_open_book(), Err(Error::UnknownCurve(_))));
    }
}
