//! Braid words, the Artin action on a free group, and pure braid combing.
//!
//! Braids on `n` strands are words in the generators `s1 .. s<n-1>`; the
//! letter `s<i>` crosses the strands at positions `i` and `i+1`. Equality is
//! decided through the faithful Artin action on the free group generated by
//! `x1 .. xn`: the generator `s<i>` maps `x_i` to `x_i x_{i+1} x_i^{-1}` and
//! `x_{i+1}` to `x_i`. Words act left to right, matching twist words.
//!
//! A pure braid (trivial strand permutation) is *combed* into the standard
//! generators `A_{ij}`, peeling the highest strand first: write
//! `p = u * lift(p-bar)` with `p-bar` the braid with strand `n` deleted and
//! `u` in the free group generated by `A_{1n} .. A_{n-1,n}`, decode `u` from
//! the conjugator it applies to `x_n`, then recurse on `p-bar`.

use std::fmt;

use crate::{Error, Result};

/// A word in Artin generators, free-reduced, on a fixed number of strands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Braid {
    strands: usize,
    letters: Vec<(usize, i8)>,
}

/// A word in the standard pure braid generators `A_{ij}` (`i < j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureBraidWord {
    pub strands: usize,
    /// Letters `(i, j, exponent)` in application order.
    pub letters: Vec<(usize, usize, i64)>,
}

/// Result of the normal form `b = pure * standard`.
#[derive(Debug, Clone)]
pub struct NormalForm {
    pub pure: Braid,
    pub standard: Braid,
}

impl Braid {
    /// Builds a braid, checking generator indices and free-reducing.
    pub fn new(strands: usize, letters: Vec<(usize, i8)>) -> Result<Braid> {
        if strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        let mut reduced: Vec<(usize, i8)> = Vec::with_capacity(letters.len());
        for (i, s) in letters {
            if i == 0 || i >= strands {
                return Err(Error::BraidIndex { index: i, strands });
            }
            debug_assert!(s == 1 || s == -1);
            match reduced.last() {
                Some(&(j, t)) if j == i && t == -s => {
                    reduced.pop();
                }
                _ => reduced.push((i, s)),
            }
        }
        Ok(Braid {
            strands,
            letters: reduced,
        })
    }

    /// The trivial braid.
    pub fn identity(strands: usize) -> Braid {
        Braid {
            strands,
            letters: Vec::new(),
        }
    }

    /// Parses the `s<i>^k` syntax, whitespace separated; `^k` defaults to 1.
    pub fn parse(strands: usize, text: &str) -> Result<Braid> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let k: i64 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad braid exponent in `{tok}`")))?;
                    (n, k)
                }
                None => (tok, 1),
            };
            let idx: usize = name
                .strip_prefix('s')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad braid generator `{tok}`")))?;
            let sign = if exp >= 0 { 1 } else { -1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push((idx, sign));
            }
        }
        Braid::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&(_, s)| i64::from(s)).sum()
    }

    /// Concatenation, free-reduced.
    pub fn mul(&self, other: &Braid) -> Result<Braid> {
        if self.strands != other.strands {
            return Err(Error::SectionCountMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().copied());
        Braid::new(self.strands, letters)
    }

    /// Reversed word with flipped signs.
    pub fn inverse(&self) -> Braid {
        Braid {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect(),
        }
    }

    /// The `k`-fold power (inverse for negative `k`).
    pub fn pow(&self, k: i64) -> Braid {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::new();
        for _ in 0..k.unsigned_abs() {
            letters.extend(base.letters.iter().copied());
        }
        Braid::new(self.strands, letters).expect("powers keep indices in range")
    }

    /// Strand permutation as 1-based images: entry `i-1` is the end position
    /// of the strand starting at position `i`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut img: Vec<usize> = (1..=self.strands).collect();
        for &(i, _) in &self.letters {
            for v in img.iter_mut() {
                if *v == i {
                    *v = i + 1;
                } else if *v == i + 1 {
                    *v = i;
                }
            }
        }
        img
    }

    /// True when the strand permutation is trivial.
    pub fn is_pure(&self) -> bool {
        self.permutation()
            .iter()
            .enumerate()
            .all(|(i, &v)| v == i + 1)
    }

    /// Images of the free group generators `x1 .. xn` under the Artin action,
    /// as reduced words (`+j` for `x_j`, `-j` for its inverse).
    pub fn artin_images(&self) -> Vec<Vec<i32>> {
        let n = self.strands;
        let mut images: Vec<Vec<i32>> = (1..=n as i32).map(|j| vec![j]).collect();
        for &(i, s) in &self.letters {
            let letter = letter_images(n, i, s);
            for img in images.iter_mut() {
                *img = substitute(img, &letter);
            }
        }
        images
    }
}

impl fmt::Display for Braid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut runs: Vec<(usize, i64)> = Vec::new();
        for &(i, s) in &self.letters {
            match runs.last_mut() {
                Some((j, k)) if *j == i && k.signum() == i64::from(s) => *k += i64::from(s),
                _ => runs.push((i, i64::from(s))),
            }
        }
        let mut first = true;
        for (i, k) in runs {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if k == 1 {
                write!(f, "s{i}")?;
            } else {
                write!(f, "s{i}^{k}")?;
            }
        }
        Ok(())
    }
}

/// Free-group images of one Artin letter.
fn letter_images(n: usize, i: usize, s: i8) -> Vec<Vec<i32>> {
    let mut imgs: Vec<Vec<i32>> = (1..=n as i32).map(|j| vec![j]).collect();
    let a = i as i32;
    let b = (i + 1) as i32;
    if s > 0 {
        imgs[i - 1] = vec![a, b, -a];
        imgs[i] = vec![a];
    } else {
        imgs[i - 1] = vec![b];
        imgs[i] = vec![-b, a, b];
    }
    imgs
}

/// Replaces each symbol of `word` by the corresponding image, free-reducing.
fn substitute(word: &[i32], images: &[Vec<i32>]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(word.len() * 2);
    let mut push = |sym: i32| {
        if out.last() == Some(&-sym) {
            out.pop();
        } else {
            out.push(sym);
        }
    };
    for &sym in word {
        let img = &images[(sym.unsigned_abs() as usize) - 1];
        if sym > 0 {
            for &t in img {
                push(t);
            }
        } else {
            for &t in img.iter().rev() {
                push(-t);
            }
        }
    }
    out
}

/// Braid equality through the faithful free group action.
pub fn braids_equal(a: &Braid, b: &Braid) -> Result<bool> {
    if a.strands() != b.strands() {
        return Err(Error::SectionCountMismatch(a.strands(), b.strands()));
    }
    Ok(a.artin_images() == b.artin_images())
}

/// Cycle type of a permutation given as 1-based images, e.g. `3+1`.
pub fn cycle_type(images: &[usize]) -> String {
    let mut seen = vec![false; images.len()];
    let mut lengths = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            len += 1;
            cur = images[cur] - 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|x, y| y.cmp(x));
    lengths
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join("+")
}

/// The standard positive section braid `s<n-1> s<n-2> .. s1`; its closure is
/// a single cycle visiting every strand.
pub fn s_plus(n: usize) -> Braid {
    let letters = (1..n).rev().map(|i| (i, 1)).collect();
    Braid::new(n, letters).expect("standard braid is valid")
}

/// The standard negative section braid: same indices, negative crossings.
pub fn s_minus(n: usize) -> Braid {
    let letters = (1..n).rev().map(|i| (i, -1)).collect();
    Braid::new(n, letters).expect("standard braid is valid")
}

fn section_images(n: usize) -> Vec<usize> {
    (1..=n).map(|i| if i == n { 1 } else { i + 1 }).collect()
}

/// Splits a section braid as `pure * s_plus(n)`.
///
/// The braid must induce the same cyclic strand permutation as `s_plus(n)`;
/// otherwise the error reports the actual cycle type.
pub fn normal_form(b: &Braid) -> Result<NormalForm> {
    let n = b.strands();
    let perm = b.permutation();
    if perm != section_images(n) {
        return Err(Error::NotSectionBraid {
            cycle_type: cycle_type(&perm),
        });
    }
    let standard = s_plus(n);
    let pure = b.mul(&standard.inverse())?;
    debug_assert!(pure.is_pure());
    Ok(NormalForm { pure, standard })
}

/// The standard pure braid generator: the strands `i` and `j` wind around
/// each other once behind the intermediate strands.
pub fn a_ij(strands: usize, i: usize, j: usize) -> Result<Braid> {
    if i == 0 || i >= j || j > strands {
        return Err(Error::BraidIndex { index: j, strands });
    }
    let mut letters: Vec<(usize, i8)> = Vec::new();
    for t in ((i + 1)..j).rev() {
        letters.push((t, 1));
    }
    letters.push((i, 1));
    letters.push((i, 1));
    for t in (i + 1)..j {
        letters.push((t, -1));
    }
    Braid::new(strands, letters)
}

/// Removes the strand starting at position `k`, dropping every crossing it
/// takes part in and shifting higher indices down.
pub fn delete_strand(b: &Braid, k: usize) -> Braid {
    let mut cur = k;
    let mut letters = Vec::new();
    for &(i, s) in b.letters() {
        if i == cur {
            cur = i + 1;
        } else if i + 1 == cur {
            cur = i;
        } else if i > cur {
            letters.push((i - 1, s));
        } else {
            letters.push((i, s));
        }
    }
    Braid::new(b.strands() - 1, letters).expect("deletion keeps indices in range")
}

impl PureBraidWord {
    pub fn empty(strands: usize) -> PureBraidWord {
        PureBraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    /// Multiplies the letters back out as a braid word.
    pub fn recompose(&self) -> Result<Braid> {
        let mut out = Braid::identity(self.strands);
        for &(i, j, e) in &self.letters {
            out = out.mul(&a_ij(self.strands, i, j)?.pow(e))?;
        }
        Ok(out)
    }
}

/// Combs a pure braid into a word in the `A_{ij}`, highest strand first.
/// The result recomposes to a braid equal to the input.
pub fn comb(p: &Braid) -> Result<PureBraidWord> {
    if !p.is_pure() {
        return Err(Error::NotPureBraid {
            cycle_type: cycle_type(&p.permutation()),
        });
    }
    let n = p.strands();
    let mut letters = Vec::new();
    let mut cur = p.clone();
    for k in (2..=n).rev() {
        let bar = delete_strand(&cur, k);
        let lifted = Braid::new(k, bar.letters().to_vec())?;
        let u = cur.mul(&lifted.inverse())?;
        letters.extend(decode_free_factor(&u, k)?);
        cur = bar;
    }
    let word = PureBraidWord {
        strands: n,
        letters,
    };
    debug_assert!(
        braids_equal(&word.recompose()?, p)?,
        "combing must recompose to the input"
    );
    Ok(word)
}

/// Writes `u`, a pure braid whose sub-braid on the other `k-1` strands is
/// trivial, as a word in `A_{1k} .. A_{k-1,k}`.
///
/// The top strand traces a loop in the disc punctured by the other strands,
/// and the crossings can be read off one at a time. A crossing between two
/// punctures contributes nothing by itself but conjugates every later
/// contribution, so the scan keeps the conjugation action of the puncture
/// braid seen so far. A crossing where the top strand passes in front of the
/// puncture at slot `q` emits `y_q^{+1}` (rightwards) or `y_q^{-1}`
/// (leftwards) pushed through that action; passing behind is silent.
fn decode_free_factor(u: &Braid, k: usize) -> Result<Vec<(usize, usize, i64)>> {
    // Images of the loop generators y_1 .. y_{k-1} under conjugation by the
    // braid of the punctures scanned so far.
    let mut conj: Vec<Vec<i32>> = (1..k as i32).map(|j| vec![j]).collect();
    let mut pos = k;
    let mut out: Vec<i32> = Vec::new();
    for &(i, s) in u.letters() {
        if i == pos || i + 1 == pos {
            let moving_right = i == pos;
            // Emits only when the top strand is the front strand of the
            // crossing; the slot index survives deleting the top strand.
            let atom = match (moving_right, s > 0) {
                (true, true) => Some(i as i32),
                (false, false) => Some(-(i as i32)),
                _ => None,
            };
            if let Some(y) = atom {
                for t in substitute(&[y], &conj) {
                    if out.last() == Some(&-t) {
                        out.pop();
                    } else {
                        out.push(t);
                    }
                }
            }
            pos = if moving_right { i + 1 } else { i };
        } else {
            let slot = if i > pos { i - 1 } else { i };
            let letter = letter_images(k - 1, slot, -s);
            conj = letter.iter().map(|img| substitute(img, &conj)).collect();
        }
    }
    debug_assert_eq!(pos, k, "a pure braid returns the top strand");
    // Merge runs of the same generator into exponents.
    let mut merged: Vec<(usize, usize, i64)> = Vec::new();
    for t in out {
        let (j, e) = (t.unsigned_abs() as usize, i64::from(t.signum()));
        match merged.last_mut() {
            Some((a, _, c)) if *a == j && (*c > 0) == (e > 0) => *c += e,
            _ => merged.push((j, k, e)),
        }
    }
    Ok(merged)
}
