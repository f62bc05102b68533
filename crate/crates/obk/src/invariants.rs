//! Integer linear algebra and the invariants built on it: Smith normal form
//! with tracked unimodular transforms, row-span membership, first homology of
//! the closed manifold of an open book, and the named verification suites.
//!
//! The homology presentation follows the mapping-torus-with-fillings picture:
//! generators are the page generators plus one class `t.<c>` per page
//! component (the circle direction); relations are the page's own relations,
//! the columns of `linear(monodromy) - identity`, and, for every boundary
//! label `j`, the filling relation `t + d_j = 0` where `d_j` is the affine
//! translation class swept past the reference arc of `j`.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::openbook::{
    self, multi_section_sum, navel_word, register_navel_triple, standard_braid_word, t3_open_book,
    OpenBook, StandardCase,
};
use crate::page::{Class, Page};
use crate::twist::{actions_equal, check_relation, RelationKind, TwistWord};
use crate::{braid, Error, Result};

/// Smith normal form `D = U * M * V` of an integer matrix.
#[derive(Debug, Clone)]
pub struct Snf {
    /// The full diagonal of `D`: `min(rows, cols)` non-negative entries with
    /// each dividing the next; zeros trail after `rank` entries.
    pub diag: Vec<BigInt>,
    pub rank: usize,
    /// Unimodular row transform, `rows x rows`.
    pub u: Vec<Vec<BigInt>>,
    /// Unimodular column transform, `cols x cols`.
    pub v: Vec<Vec<BigInt>>,
}

/// Converts machine-integer rows to big-integer rows.
pub fn big_matrix(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn identity_matrix(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row i -= q * row t`.
fn row_sub(m: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    let base = m[t].clone();
    for (x, b) in m[i].iter_mut().zip(base) {
        *x -= q * b;
    }
}

/// `col j -= q * col t`.
fn col_sub(m: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let d = q * &row[t];
        row[j] -= d;
    }
}

/// `row t += row i`.
fn row_add(m: &mut [Vec<BigInt>], t: usize, i: usize) {
    let add = m[i].clone();
    for (x, b) in m[t].iter_mut().zip(add) {
        *x += b;
    }
}

fn negate_row(m: &mut [Vec<BigInt>], t: usize) {
    for x in m[t].iter_mut() {
        *x = -std::mem::take(x);
    }
}

/// Computes the Smith normal form with both transforms tracked. `cols` must
/// be given explicitly so that matrices with zero rows stay well-defined.
pub fn smith_normal_form(m: &[Vec<BigInt>], cols: usize) -> Snf {
    let rows = m.len();
    for r in m {
        assert_eq!(r.len(), cols, "ragged matrix");
    }
    let mut a = m.to_vec();
    let mut u = identity_matrix(rows);
    let mut v = identity_matrix(cols);
    let limit = rows.min(cols);
    let mut t = 0;
    'outer: while t < limit {
        // Bring the smallest nonzero entry of the trailing block to (t, t).
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                if pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            a.swap(t, pi);
            u.swap(t, pi);
        }
        if pj != t {
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);
        }
        // One reduction sweep; leftover remainders are strictly smaller than
        // the pivot, so re-picking the pivot makes progress.
        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = &a[i][t] / &a[t][t];
            if !q.is_zero() {
                row_sub(&mut a, i, t, &q);
                row_sub(&mut u, i, t, &q);
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = &a[t][j] / &a[t][t];
            if !q.is_zero() {
                col_sub(&mut a, j, t, &q);
                col_sub(&mut v, j, t, &q);
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue 'outer;
        }
        // Fold any entry the pivot does not divide into row t; the next
        // sweep then produces a strictly smaller remainder.
        for i in t + 1..rows {
            for j in t + 1..cols {
                if (&a[i][j] % &a[t][t]).is_zero() {
                    continue;
                }
                row_add(&mut a, t, i);
                row_add(&mut u, t, i);
                continue 'outer;
            }
        }
        if a[t][t].sign() == Sign::Minus {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }
    let diag: Vec<BigInt> = (0..limit).map(|i| a[i][i].clone()).collect();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    Snf { diag, rank, u, v }
}

impl Snf {
    /// Checks the defining postconditions against the original matrix:
    /// `D = U * M * V`, unimodular transforms, non-negative divisibility
    /// chain on the diagonal.
    pub fn verify(&self, m: &[Vec<BigInt>]) -> bool {
        let rows = self.u.len();
        let cols = self.v.len();
        if m.len() != rows {
            return false;
        }
        for i in 0..self.diag.len() {
            if self.diag[i].sign() == Sign::Minus {
                return false;
            }
            if i + 1 < self.diag.len()
                && !self.diag[i].is_zero()
                && !(&self.diag[i + 1] % &self.diag[i]).is_zero()
            {
                return false;
            }
            if self.diag[i].is_zero() && !self.diag[i + 1..].iter().all(BigInt::is_zero) {
                return false;
            }
        }
        if determinant(&self.u).abs() != BigInt::one()
            || determinant(&self.v).abs() != BigInt::one()
        {
            return false;
        }
        if m.iter().any(|r| r.len() != cols) {
            return false;
        }
        let product = mat_mul(&mat_mul(&self.u, m), &self.v);
        for (i, row) in product.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j && i < self.diag.len() {
                    self.diag[i].clone()
                } else {
                    BigInt::zero()
                };
                if *x != want {
                    return false;
                }
            }
        }
        true
    }
}

/// Plain matrix product.
pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Exact determinant of a square matrix by fraction-free elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Lays out a sparse class as a dense coefficient row over `gens`.
pub(crate) fn dense_class(class: &Class, gens: &[String]) -> Vec<i64> {
    let mut row = vec![0i64; gens.len()];
    for (g, v) in class {
        let idx = gens
            .iter()
            .position(|x| x == g)
            .unwrap_or_else(|| panic!("class mentions unknown generator `{g}`"));
        row[idx] = *v;
    }
    row
}

/// Rank of the integer row space.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    smith_normal_form(&big_matrix(rows), first.len()).rank
}

/// Decides membership in the integer row span of a fixed set of classes.
pub struct SpanChecker {
    diag: Vec<BigInt>,
    rank: usize,
    v: Vec<Vec<BigInt>>,
    dims: usize,
}

impl SpanChecker {
    pub fn from_classes(classes: &[Class], gens: &[String]) -> SpanChecker {
        let rows: Vec<Vec<i64>> = classes.iter().map(|c| dense_class(c, gens)).collect();
        let snf = smith_normal_form(&big_matrix(&rows), gens.len());
        SpanChecker {
            diag: snf.diag,
            rank: snf.rank,
            v: snf.v,
            dims: gens.len(),
        }
    }

    /// True when the class is an integer combination of the stored rows:
    /// after the column transform, each coordinate must be divisible by the
    /// matching diagonal entry and vanish beyond the rank.
    pub fn contains_class(&self, class: &Class, gens: &[String]) -> bool {
        debug_assert_eq!(gens.len(), self.dims);
        let x = dense_class(class, gens);
        for j in 0..self.dims {
            let y: BigInt = (0..self.dims)
                .map(|k| &self.v[k][j] * BigInt::from(x[k]))
                .sum();
            if j < self.rank {
                if !(&y % &self.diag[j]).is_zero() {
                    return false;
                }
            } else if !y.is_zero() {
                return false;
            }
        }
        true
    }
}

/// A finitely generated abelian group in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    /// Invariant factors, each at least 2, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> AbelianGroup {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> AbelianGroup {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// The cyclic group of order `n`; order 0 means the infinite cyclic group.
    pub fn cyclic(n: u64) -> AbelianGroup {
        match n {
            0 => AbelianGroup::free(1),
            1 => AbelianGroup::trivial(),
            _ => AbelianGroup {
                free_rank: 0,
                torsion: vec![BigInt::from(n)],
            },
        }
    }

    /// Cokernel of the relation rows acting on `generators` free generators.
    pub fn from_presentation(relations: &[Vec<BigInt>], generators: usize) -> AbelianGroup {
        let snf = smith_normal_form(relations, generators);
        let torsion = snf
            .diag
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect();
        AbelianGroup {
            free_rank: generators - snf.rank,
            torsion,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    /// `0`, `Z`, `Z^3`, `Z/5`, `Z^2 + Z/2 + Z/6`, in that style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_owned()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// First homology of the closed manifold determined by the open book.
pub fn h1_of_open_book(ob: &OpenBook) -> Result<AbelianGroup> {
    let page = ob.page();
    let gens = page.generators();
    let ncomp = page.components().len();
    let total = gens.len() + ncomp;
    let action = ob.monodromy().affine_action(page)?;

    let pad = |row: Vec<i64>| -> Vec<BigInt> {
        let mut out: Vec<BigInt> = row.into_iter().map(BigInt::from).collect();
        out.resize(total, BigInt::zero());
        out
    };

    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for rel in page.relations() {
        rows.push(pad(dense_class(rel, gens)));
    }
    for (idx, g) in gens.iter().enumerate() {
        let mut row = dense_class(&action.image_of(g), gens);
        row[idx] -= 1;
        if row.iter().any(|&x| x != 0) {
            rows.push(pad(row));
        }
    }
    for (label, info) in page.labels() {
        let mut row = pad(dense_class(&action.translation(label), gens));
        row[gens.len() + info.component] += BigInt::one();
        rows.push(row);
    }
    Ok(AbelianGroup::from_presentation(&rows, total))
}

/// Betti number and invariant factors of the manifold's first homology.
pub fn betti_and_torsion(ob: &OpenBook) -> Result<(usize, Vec<BigInt>)> {
    let h = h1_of_open_book(ob)?;
    Ok((h.free_rank, h.torsion))
}

/// Linear part of the monodromy action on the page generators.
pub fn monodromy_matrix(ob: &OpenBook) -> Result<Vec<Vec<i64>>> {
    Ok(ob.monodromy().affine_action(ob.page())?.matrix(ob.page()))
}

/// One named comparison inside a verification report.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// Structured pass/fail report; `pass` is the conjunction of all checks.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn from_checks(mut checks: Vec<Check>) -> Report {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let pass = checks.iter().all(|c| c.pass);
        Report { checks, pass }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn run_check(name: &str, expected: &str, body: impl FnOnce() -> Result<String>) -> Check {
    let (actual, pass) = match body() {
        Ok(actual) => {
            let ok = actual == expected;
            (actual, ok)
        }
        Err(e) => (format!("error: {e}"), false),
    };
    Check {
        name: name.to_owned(),
        expected: expected.to_owned(),
        actual,
        pass,
    }
}

/// Declarative expectations for `verify_suite`.
#[derive(Debug, Clone, Default)]
pub struct Expectations {
    pub h1: Option<AbelianGroup>,
    pub euler_characteristic: Option<i64>,
    pub boundary_count: Option<usize>,
    pub page_components: Option<usize>,
    pub total_genus: Option<u32>,
    /// Mapping-class relations to confirm on the page, with their curves.
    pub relations: Vec<(RelationKind, Vec<String>)>,
}

fn relation_kind_name(kind: RelationKind) -> &'static str {
    match kind {
        RelationKind::Commute => "commute",
        RelationKind::Braid => "braid",
        RelationKind::Chain3 => "chain",
    }
}

/// Runs the declared checks against one open book.
pub fn verify_suite(ob: &OpenBook, expect: &Expectations) -> Report {
    let mut checks = Vec::new();
    if let Some(h) = &expect.h1 {
        checks.push(run_check("h1", &h.to_string(), || {
            Ok(h1_of_open_book(ob)?.to_string())
        }));
    }
    if let Some(chi) = expect.euler_characteristic {
        checks.push(run_check(
            "page/euler_characteristic",
            &chi.to_string(),
            || Ok(ob.page().euler_characteristic().to_string()),
        ));
    }
    if let Some(b) = expect.boundary_count {
        checks.push(run_check("page/boundary_count", &b.to_string(), || {
            Ok(ob.page().boundary_count().to_string())
        }));
    }
    if let Some(c) = expect.page_components {
        checks.push(run_check("page/components", &c.to_string(), || {
            Ok(ob.page().components().len().to_string())
        }));
    }
    if let Some(g) = expect.total_genus {
        checks.push(run_check("page/total_genus", &g.to_string(), || {
            Ok(ob
                .page()
                .components()
                .iter()
                .map(|c| c.genus)
                .sum::<u32>()
                .to_string())
        }));
    }
    for (kind, curves) in &expect.relations {
        let name = format!(
            "relation/{}({})",
            relation_kind_name(*kind),
            curves.join(",")
        );
        checks.push(run_check(&name, "holds", || {
            let refs: Vec<&str> = curves.iter().map(String::as_str).collect();
            let r = check_relation(ob.page(), *kind, &refs)?;
            Ok(if r.pass {
                "holds".into()
            } else {
                r.details.join("; ")
            })
        }));
    }
    Report::from_checks(checks)
}

/// Dispatches the named sub-suites behind `obk verify --suite`.
pub fn named_suite(name: &str) -> Result<Report> {
    match name {
        "presets" => Ok(suite_presets()),
        "relations" => Ok(suite_relations()),
        "sums" => Ok(suite_sums()),
        other => Err(Error::Parse(format!(
            "unknown verify suite `{other}`; available: presets, relations, sums"
        ))),
    }
}

/// Preset manifolds, the two-disc sum, the torus-bundle family, the navel
/// identity, the annulus twist family, and Lutz-twist invariance.
pub fn suite_presets() -> Report {
    let mut checks = Vec::new();
    for name in ["s3_disc", "s3_hopf_plus", "s3_hopf_minus"] {
        checks.push(run_check(&format!("h1/{name}"), "0", || {
            Ok(OpenBook::preset(name)?.h1()?.to_string())
        }));
    }
    checks.push(run_check("binding_sum/two_discs/h1", "Z", || {
        let ob = OpenBook::preset("two_discs")?.binding_sum("b0", "b1", 0)?;
        Ok(ob.h1()?.to_string())
    }));
    checks.push(run_check(
        "binding_sum/two_discs/page",
        "genus 0, 2 boundary circles",
        || {
            let ob = OpenBook::preset("two_discs")?.binding_sum("b0", "b1", 0)?;
            let genus: u32 = ob.page().components().iter().map(|c| c.genus).sum();
            Ok(format!(
                "genus {genus}, {} boundary circles",
                ob.page().boundary_count()
            ))
        },
    ));
    for n in 1..=3 {
        checks.push(run_check(&format!("h1/t3_open_book({n})"), "Z^3", || {
            Ok(t3_open_book(n)?.h1()?.to_string())
        }));
    }
    for name in ["s3_disc", "s3_hopf_plus", "s3_hopf_minus", "s1s2"] {
        checks.push(run_check(
            &format!("navel_word/identity_action/{name}"),
            "identity",
            || {
                let ob = OpenBook::preset(name)?;
                let labels: Vec<String> = ob.page().labels().keys().cloned().collect();
                for label in labels {
                    let mut page = ob.page().clone();
                    let triple = register_navel_triple(&mut page, &label)?;
                    for m in -3..=3 {
                        let w = navel_word(&page, m, &triple)?;
                        if !w.affine_action(&page)?.is_identity() {
                            return Ok(format!("acts non-trivially at `{label}`, m={m}"));
                        }
                    }
                }
                Ok("identity".into())
            },
        ));
    }
    let lens_expect = "Z/|n| for n in [-5,5], Z at n=0";
    checks.push(run_check("h1/annulus_twist_family", lens_expect, || {
        for n in -5i64..=5 {
            let page = Page::make_annulus();
            let word = TwistWord::parse(&page, &format!("c^{n}"))?;
            let h = h1_of_open_book(&OpenBook::new(page, word)?)?;
            let want = AbelianGroup::cyclic(n.unsigned_abs());
            if h != want {
                return Ok(format!("n={n} gave {h}, wanted {want}"));
            }
        }
        Ok(lens_expect.into())
    }));
    for name in ["s3_disc", "s3_hopf_plus", "s3_hopf_minus", "s1s2"] {
        checks.push(run_check(
            &format!("lutz_full/h1_preserved/{name}"),
            "preserved",
            || {
                let ob = OpenBook::preset(name)?;
                let before = ob.h1()?;
                let k = ob
                    .page()
                    .labels()
                    .keys()
                    .next()
                    .cloned()
                    .expect("presets have boundary");
                let after = ob.lutz_full(&k)?.h1()?;
                Ok(if before == after {
                    "preserved".into()
                } else {
                    format!("{before} changed to {after}")
                })
            },
        ));
    }
    Report::from_checks(checks)
}

/// Mapping-class relations on chain pages, plus the two-tube lemma that
/// pins the negative-section monodromy.
pub fn suite_relations() -> Report {
    let mut checks = Vec::new();
    checks.push(run_check("relation/commute(a1,a3)", "holds", || {
        let page = Page::make_chain_page(3)?;
        let r = check_relation(&page, RelationKind::Commute, &["a1", "a3"])?;
        Ok(if r.pass {
            "holds".into()
        } else {
            r.details.join("; ")
        })
    }));
    checks.push(run_check("relation/braid(g1,a1)", "holds", || {
        let page = Page::make_chain_page(2)?;
        let r = check_relation(&page, RelationKind::Braid, &["g1", "a1"])?;
        Ok(if r.pass {
            "holds".into()
        } else {
            r.details.join("; ")
        })
    }));
    checks.push(run_check("relation/chain(a1,g1,a2)", "holds", || {
        let page = Page::make_chain_page(2)?;
        let r = check_relation(
            &page,
            RelationKind::Chain3,
            &["a1", "g1", "a2", "d1_2", "dp1_2"],
        )?;
        Ok(if r.pass {
            "holds".into()
        } else {
            r.details.join("; ")
        })
    }));
    checks.push(run_check(
        "relation/negative_section_lemma",
        "equal actions",
        || {
            let ob = multi_section_sum(&braid::s_minus(2), &braid::s_plus(2))?;
            let psi = TwistWord::parse(ob.page(), "g1 a1 a2 g1 a1 a2 d1_2^-1")?;
            Ok(if actions_equal(ob.page(), ob.monodromy(), &psi)? {
                "equal actions".into()
            } else {
                format!("`{}` differs from `{psi}`", ob.monodromy())
            })
        },
    ));
    Report::from_checks(checks)
}

/// Multi-section sums against their closed-form words, plus the composite
/// constructions built from binding sums.
pub fn suite_sums() -> Report {
    let mut checks = Vec::new();
    for n in 2..=4 {
        checks.push(run_check(
            &format!("multi_section/positive_positive/n={n}"),
            "words match",
            || {
                let ob = multi_section_sum(&braid::s_plus(n), &braid::s_plus(n))?;
                let closed = standard_braid_word(ob.page(), StandardCase::PP, n)?;
                Ok(if ob.monodromy().letters() == closed.letters() {
                    "words match".into()
                } else {
                    format!("`{}` vs `{closed}`", ob.monodromy())
                })
            },
        ));
    }
    for (case, tag) in [
        (StandardCase::MP, "negative_positive"),
        (StandardCase::MM, "negative_negative"),
    ] {
        for n in 2..=3 {
            checks.push(run_check(
                &format!("multi_section/{tag}/n={n}"),
                "equal actions",
                || {
                    let k1 = match case {
                        StandardCase::MM => braid::s_minus(n),
                        _ => braid::s_plus(n),
                    };
                    let ob = multi_section_sum(&braid::s_minus(n), &k1)?;
                    let closed = standard_braid_word(ob.page(), case, n)?;
                    Ok(if actions_equal(ob.page(), ob.monodromy(), &closed)? {
                        "equal actions".into()
                    } else {
                        format!("`{}` differs from `{closed}`", ob.monodromy())
                    })
                },
            ));
        }
    }
    // The base annulus and the two gadget annuli form a cycle of three, which
    // closes up as the torus bundle with monodromy -I rather than the
    // 3-torus an even cycle would give.
    checks.push(run_check("giroux_gadget/s1s2/h1", "Z + Z/2 + Z/2", || {
        let ob = OpenBook::preset("s1s2")?.giroux_gadget("b0", "b1", 0, 0)?;
        Ok(ob.h1()?.to_string())
    }));
    checks.push(run_check(
        "giroux_gadget/s1s2/page",
        "chi drops by 6, labels kept",
        || {
            let before = OpenBook::preset("s1s2")?;
            let chi0 = before.page().euler_characteristic();
            let ob = before.giroux_gadget("b0", "b1", 0, 0)?;
            let drop = chi0 - ob.page().euler_characteristic();
            let kept = ob.page().label("b0").is_ok() && ob.page().label("b1").is_ok();
            Ok(if drop == 6 && kept {
                "chi drops by 6, labels kept".into()
            } else {
                format!("chi drop {drop}, labels kept: {kept}")
            })
        },
    ));
    checks.push(run_check("convex_bundle_sum/discs/h1", "Z", || {
        let pos = OpenBook::preset("s3_disc")?;
        let neg = OpenBook::preset("s3_disc")?;
        let ob = openbook::convex_bundle_sum(&pos, &neg, &[("b0".into(), "b0".into())])?;
        Ok(ob.h1()?.to_string())
    }));
    checks.push(run_check("convex_bundle_sum/annuli/h1", "Z^3", || {
        let pos = OpenBook::preset("s1s2")?;
        let neg = OpenBook::preset("s1s2")?;
        let pairs = [("b0".into(), "b0".into()), ("b1".into(), "b1".into())];
        let ob = openbook::convex_bundle_sum(&pos, &neg, &pairs)?;
        Ok(ob.h1()?.to_string())
    }));
    Report::from_checks(checks)
}
