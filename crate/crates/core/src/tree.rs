//! Automorphisms of the `m`-adic tree as formal words over rooted,
//! directed and constant-portrait generators.
//!
//! The action is on the left and sections obey
//! `(fg)|_u = f|_{g(u)} g|_u` and `f⁻¹|_u = (f|_{f⁻¹(u)})⁻¹`. Nothing is
//! normalised beyond merging adjacent letters of the same kind.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::spinal::{ElemId, PolyspinalGroup};
use crate::symops::Perm;

/// Default bound on the number of labels a portrait may hold.
pub const DEFAULT_PORTRAIT_CAP: usize = 1_000_000;

/// A vertex of the tree: a word over `X`; the empty word is the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn root() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&x| x as usize)
    }

    pub fn check(&self, m: usize) -> Result<()> {
        match self.0.iter().find(|&&x| x as usize >= m) {
            Some(&x) => Err(Error::LetterOutOfRange { letter: x as usize, m }),
            None => Ok(()),
        }
    }

    /// Parses `"021"` (one digit per letter) or `"10.3.0"` (dot separated);
    /// `""`, `"-"` and `"ε"` denote the root.
    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "-" || s == "ε" {
            return Ok(Word::root());
        }
        let letters: Result<Vec<u8>> = if s.contains('.') {
            s.split('.')
                .map(|t| {
                    t.parse::<u8>()
                        .map_err(|_| Error::Parse(alloc::format!("bad letter {t:?}")))
                })
                .collect()
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(alloc::format!("bad letter {c:?}")))
                })
                .collect()
        };
        Ok(Word(letters?))
    }

    /// Rank of the word among words of the same length, first letter most
    /// significant.
    pub fn rank(&self, m: usize) -> usize {
        self.0.iter().fold(0, |acc, &x| acc * m + x as usize)
    }

    pub fn unrank(mut rank: usize, len: usize, m: usize) -> Word {
        let mut v = alloc::vec![0u8; len];
        for i in (0..len).rev() {
            v[i] = (rank % m) as u8;
            rank /= m;
        }
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&x| x < 10) {
            for &x in &self.0 {
                write!(f, "{x}")?;
            }
        } else {
            for (i, &x) in self.0.iter().enumerate() {
                if i > 0 {
                    f.write_str(".")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// Label `σ` at the root, trivial elsewhere.
    Rooted(Perm),
    /// `d_{σ^shift ω, x}` for the directed group `datum` of the element's
    /// defining data. Shifts are kept canonical modulo the period.
    Directed { datum: usize, elem: ElemId, shift: usize },
    /// `κ(σ)`: every label equals `σ`.
    ConstantPortrait(Perm),
}

impl Generator {
    fn is_trivial(&self) -> bool {
        match self {
            Generator::Rooted(p) | Generator::ConstantPortrait(p) => p.is_identity(),
            Generator::Directed { elem, .. } => *elem == 0,
        }
    }

    fn inverse(&self, group: Option<&PolyspinalGroup>) -> Generator {
        match self {
            Generator::Rooted(p) => Generator::Rooted(p.inverse()),
            Generator::ConstantPortrait(p) => Generator::ConstantPortrait(p.inverse()),
            Generator::Directed { datum, elem, shift } => Generator::Directed {
                datum: *datum,
                elem: group.expect("directed letters carry a group").datum(*datum).inv(*elem),
                shift: *shift,
            },
        }
    }

    fn root_label(&self, m: usize) -> Perm {
        match self {
            Generator::Rooted(p) | Generator::ConstantPortrait(p) => p.clone(),
            Generator::Directed { .. } => Perm::identity(m),
        }
    }

    #[inline]
    fn act_letter(&self, x: usize) -> usize {
        match self {
            Generator::Rooted(p) | Generator::ConstantPortrait(p) => p.apply(x),
            Generator::Directed { .. } => x,
        }
    }

    fn act_word(&self, group: Option<&PolyspinalGroup>, v: &mut [u8]) {
        match self {
            Generator::Rooted(p) => {
                if let Some(first) = v.first_mut() {
                    *first = p.apply(*first as usize) as u8;
                }
            }
            Generator::ConstantPortrait(p) => {
                for x in v.iter_mut() {
                    *x = p.apply(*x as usize) as u8;
                }
            }
            Generator::Directed { datum, elem, shift } => {
                let dg = group.expect("directed letters carry a group").datum(*datum);
                let path = dg.path();
                for pos in 0..v.len() {
                    let y = v[pos] as usize;
                    if y == path {
                        continue;
                    }
                    if pos + 1 < v.len() {
                        let z = v[pos + 1] as usize;
                        v[pos + 1] = dg.label_apply(*elem, shift + pos + 1, y, z) as u8;
                    }
                    break;
                }
            }
        }
    }

    fn section(&self, group: Option<&PolyspinalGroup>, y: usize) -> Option<Generator> {
        match self {
            Generator::Rooted(_) => None,
            Generator::ConstantPortrait(_) => Some(self.clone()),
            Generator::Directed { datum, elem, shift } => {
                let dg = group.expect("directed letters carry a group").datum(*datum);
                if y == dg.path() {
                    Some(Generator::Directed {
                        datum: *datum,
                        elem: *elem,
                        shift: dg.canonical_shift(shift + 1),
                    })
                } else {
                    Some(Generator::Rooted(dg.label(*elem, shift + 1, y)))
                }
            }
        }
    }
}

/// Appends `g` to a letter list, merging with the last letter when both are
/// of the same kind.
pub(crate) fn push_letter(letters: &mut Vec<Generator>, g: Generator, group: Option<&PolyspinalGroup>) {
    if g.is_trivial() {
        return;
    }
    let merged = match (letters.last(), &g) {
        (Some(Generator::Rooted(p)), Generator::Rooted(q)) => Some(Generator::Rooted(p.compose_unchecked(q))),
        (Some(Generator::ConstantPortrait(p)), Generator::ConstantPortrait(q)) => {
            Some(Generator::ConstantPortrait(p.compose_unchecked(q)))
        }
        (
            Some(Generator::Directed {
                datum: d1,
                elem: e1,
                shift: s1,
            }),
            Generator::Directed {
                datum: d2,
                elem: e2,
                shift: s2,
            },
        ) if d1 == d2 && s1 == s2 => {
            let dg = group.expect("directed letters carry a group").datum(*d1);
            Some(Generator::Directed {
                datum: *d1,
                elem: dg.mul(*e1, *e2),
                shift: *s1,
            })
        }
        _ => None,
    };
    match merged {
        Some(h) => {
            letters.pop();
            if !h.is_trivial() {
                letters.push(h);
            }
        }
        None => letters.push(g),
    }
}

fn join_groups(
    a: &Option<Arc<PolyspinalGroup>>,
    b: &Option<Arc<PolyspinalGroup>>,
) -> Result<Option<Arc<PolyspinalGroup>>> {
    match (a, b) {
        (None, g) | (g, None) => Ok(g.clone()),
        (Some(x), Some(y)) if Arc::ptr_eq(x, y) || x.data() == y.data() => Ok(Some(x.clone())),
        _ => Err(Error::MixedGroups),
    }
}

/// A tree automorphism given as a product of generator letters; the product
/// `g_1 ⋯ g_k` acts by applying `g_k` first.
#[derive(Clone)]
pub struct Element {
    m: usize,
    group: Option<Arc<PolyspinalGroup>>,
    letters: Vec<Generator>,
}

impl Element {
    pub fn identity(m: usize) -> Element {
        Element {
            m,
            group: None,
            letters: Vec::new(),
        }
    }

    pub fn rooted(sigma: Perm) -> Element {
        let m = sigma.degree();
        Element::from_letters_unchecked(m, None, alloc::vec![Generator::Rooted(sigma)])
    }

    /// `κ(σ)`, the automorphism with constant portrait `σ`.
    pub fn kappa(sigma: Perm) -> Element {
        let m = sigma.degree();
        Element::from_letters_unchecked(m, None, alloc::vec![Generator::ConstantPortrait(sigma)])
    }

    /// Element `elem` of directed group `datum`, unshifted.
    pub fn directed(group: &Arc<PolyspinalGroup>, datum: usize, elem: ElemId) -> Result<Element> {
        Element::from_letters(
            group.degree(),
            Some(group.clone()),
            alloc::vec![Generator::Directed { datum, elem, shift: 0 }],
        )
    }

    /// A rooted permutation in the context of `group`.
    pub fn rooted_in(group: &Arc<PolyspinalGroup>, sigma: Perm) -> Result<Element> {
        Element::from_letters(
            group.degree(),
            Some(group.clone()),
            alloc::vec![Generator::Rooted(sigma)],
        )
    }

    /// Named generator: a directed generator name, or `a` / `a1, a2, …`
    /// for the rooted generators.
    pub fn generator(group: &Arc<PolyspinalGroup>, name: &str) -> Result<Element> {
        if let Some((datum, elem)) = group.find_generator(name) {
            return Element::directed(group, datum, elem);
        }
        for (n, p) in rooted_generator_names(group) {
            if n == name {
                return Element::rooted_in(group, p);
            }
        }
        Err(Error::ForeignGenerator(name.into()))
    }

    /// Rooted and directed generators of `group`, with their names.
    pub fn generators(group: &Arc<PolyspinalGroup>) -> Vec<(String, Element)> {
        let mut out = Vec::new();
        for (n, p) in rooted_generator_names(group) {
            out.push((n, Element::rooted_in(group, p).expect("degree matches")));
        }
        for (i, dg) in group.directed().iter().enumerate() {
            for (name, &id) in dg.names().iter().zip(dg.generator_ids()) {
                out.push((name.clone(), Element::directed(group, i, id).expect("valid datum")));
            }
        }
        out
    }

    pub fn from_letters(m: usize, group: Option<Arc<PolyspinalGroup>>, letters: Vec<Generator>) -> Result<Element> {
        if let Some(g) = &group {
            if g.degree() != m {
                return Err(Error::DegreeMismatch {
                    expected: m,
                    found: g.degree(),
                });
            }
        }
        for l in &letters {
            match l {
                Generator::Rooted(p) | Generator::ConstantPortrait(p) if p.degree() != m => {
                    return Err(Error::DegreeMismatch {
                        expected: m,
                        found: p.degree(),
                    });
                }
                Generator::Directed { datum, elem, .. } => {
                    let ok = group
                        .as_ref()
                        .and_then(|g| g.directed().get(*datum))
                        .is_some_and(|dg| (*elem as usize) < dg.order());
                    if !ok {
                        return Err(Error::ForeignGenerator(alloc::format!("{l:?}")));
                    }
                }
                _ => {}
            }
        }
        Ok(Element::from_letters_unchecked(m, group, letters))
    }

    pub(crate) fn from_letters_unchecked(
        m: usize,
        group: Option<Arc<PolyspinalGroup>>,
        letters: Vec<Generator>,
    ) -> Element {
        let mut out = Vec::with_capacity(letters.len());
        for l in letters {
            let l = match l {
                Generator::Directed { datum, elem, shift } => {
                    let dg = group.as_ref().expect("directed letters carry a group").datum(datum);
                    Generator::Directed {
                        datum,
                        elem,
                        shift: dg.canonical_shift(shift),
                    }
                }
                other => other,
            };
            push_letter(&mut out, l, group.as_deref());
        }
        Element { m, group, letters: out }
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn group(&self) -> Option<&Arc<PolyspinalGroup>> {
        self.group.as_ref()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    /// The word is empty (the element is the identity by construction).
    pub fn is_empty_word(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self · other`.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        if self.m != other.m {
            return Err(Error::DegreeMismatch {
                expected: self.m,
                found: other.m,
            });
        }
        let group = join_groups(&self.group, &other.group)?;
        let mut letters = self.letters.clone();
        for l in &other.letters {
            push_letter(&mut letters, l.clone(), group.as_deref());
        }
        Ok(Element {
            m: self.m,
            group,
            letters,
        })
    }

    pub fn inverse(&self) -> Element {
        let mut letters = Vec::with_capacity(self.letters.len());
        for l in self.letters.iter().rev() {
            push_letter(&mut letters, l.inverse(self.group.as_deref()), self.group.as_deref());
        }
        Element {
            m: self.m,
            group: self.group.clone(),
            letters,
        }
    }

    pub fn pow(&self, k: i64) -> Element {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Element {
            m: self.m,
            group: self.group.clone(),
            letters: Vec::new(),
        };
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base).expect("same group");
        }
        acc
    }

    /// `f⁻¹ · self · f`.
    pub fn conjugate_by(&self, f: &Element) -> Result<Element> {
        f.inverse().mul(self)?.mul(f)
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Element) -> Result<Element> {
        self.inverse().mul(&other.inverse())?.mul(self)?.mul(other)
    }

    pub fn apply(&self, v: &Word) -> Result<Word> {
        v.check(self.m)?;
        let mut out = v.0.clone();
        for l in self.letters.iter().rev() {
            l.act_word(self.group.as_deref(), &mut out);
        }
        Ok(Word(out))
    }

    /// Image of a first-level vertex.
    pub fn apply_letter(&self, x: usize) -> usize {
        self.letters.iter().rev().fold(x, |y, l| l.act_letter(y))
    }

    pub fn root_label(&self) -> Perm {
        let mut p = Perm::identity(self.m);
        for l in &self.letters {
            p = p.compose_unchecked(&l.root_label(self.m));
        }
        p
    }

    pub fn label(&self, u: &Word) -> Result<Perm> {
        Ok(self.section(u)?.root_label())
    }

    /// Section at a first-level vertex `y`.
    pub fn section_at(&self, y: usize) -> Element {
        let group = self.group.as_deref();
        let mut parts = Vec::with_capacity(self.letters.len());
        let mut cur = y;
        for l in self.letters.iter().rev() {
            parts.push(l.section(group, cur));
            cur = l.act_letter(cur);
        }
        let mut letters = Vec::with_capacity(parts.len());
        for p in parts.into_iter().rev().flatten() {
            push_letter(&mut letters, p, group);
        }
        Element {
            m: self.m,
            group: self.group.clone(),
            letters,
        }
    }

    pub fn section(&self, u: &Word) -> Result<Element> {
        u.check(self.m)?;
        let mut g = self.clone();
        for y in u.letters() {
            g = g.section_at(y);
        }
        Ok(g)
    }

    pub fn portrait(&self, depth: usize) -> Result<Portrait> {
        self.portrait_capped(depth, DEFAULT_PORTRAIT_CAP)
    }

    /// Labels of every vertex of length `< depth`, failing instead of
    /// truncating when more than `cap` labels would be needed.
    pub fn portrait_capped(&self, depth: usize, cap: usize) -> Result<Portrait> {
        let m = self.m;
        let total = portrait_size(m, depth)
            .filter(|&t| t <= cap)
            .ok_or(Error::CapExceeded {
                what: "portrait size",
                cap,
            })?;
        let mut ids: BTreeMap<Vec<Generator>, usize> = BTreeMap::new();
        let mut states: Vec<(Element, Perm, Option<Vec<usize>>)> = Vec::new();
        let mut intern = |g: Element, states: &mut Vec<(Element, Perm, Option<Vec<usize>>)>| -> usize {
            *ids.entry(g.letters.clone()).or_insert_with(|| {
                let label = g.root_label();
                states.push((g, label, None));
                states.len() - 1
            })
        };
        let root = intern(self.clone(), &mut states);
        let mut labels = Vec::with_capacity(total);
        let mut level = alloc::vec![root];
        for k in 0..depth {
            for &s in &level {
                labels.push(states[s].1.clone());
            }
            if k + 1 == depth {
                break;
            }
            let mut next = Vec::with_capacity(level.len() * m);
            for &s in &level {
                if states[s].2.is_none() {
                    let children: Vec<usize> = (0..m)
                        .map(|y| {
                            let child = states[s].0.section_at(y);
                            intern(child, &mut states)
                        })
                        .collect();
                    states[s].2 = Some(children);
                }
                next.extend_from_slice(states[s].2.as_ref().unwrap());
            }
            level = next;
        }
        Ok(Portrait { m, depth, labels })
    }

    /// Writes the element as a word over generator names.
    pub fn to_word_string(&self) -> String {
        if self.letters.is_empty() {
            return String::from("1");
        }
        let group = self.group.as_deref();
        let mut parts: Vec<String> = Vec::new();
        for l in &self.letters {
            parts.push(match l {
                Generator::Rooted(p) => rooted_name(group, p),
                Generator::ConstantPortrait(p) => alloc::format!("kappa{}", p.to_cycle_string()),
                Generator::Directed { datum, elem, shift } => {
                    let dg = group.expect("directed letters carry a group").datum(*datum);
                    let w = dg.word(*elem);
                    let w = if w.contains(' ') { alloc::format!("({w})") } else { w };
                    if *shift == 0 {
                        w
                    } else {
                        alloc::format!("{w}[{shift}]")
                    }
                }
            });
        }
        parts.join(" ")
    }
}

fn rooted_generator_names(group: &PolyspinalGroup) -> Vec<(String, Perm)> {
    let rooted = &group.data().rooted;
    if rooted.len() == 1 {
        alloc::vec![(String::from("a"), rooted[0].clone())]
    } else {
        rooted
            .iter()
            .enumerate()
            .map(|(i, p)| (alloc::format!("a{}", i + 1), p.clone()))
            .collect()
    }
}

fn rooted_name(group: Option<&PolyspinalGroup>, p: &Perm) -> String {
    if let Some(g) = group {
        let rooted = &g.data().rooted;
        if rooted.len() == 1 {
            let a = &rooted[0];
            let mut q = a.clone();
            for k in 1..=p.degree().max(1) * 2 {
                if &q == p {
                    return if k == 1 {
                        String::from("a")
                    } else {
                        alloc::format!("a^{k}")
                    };
                }
                q = q.compose_unchecked(a);
                if &q == a {
                    break;
                }
            }
        }
    }
    p.to_cycle_string()
}

impl PartialEq for Element {
    fn eq(&self, other: &Element) -> bool {
        self.m == other.m && self.letters == other.letters && join_groups(&self.group, &other.group).is_ok()
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", self.to_word_string())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_word_string())
    }
}

/// `(m^depth − 1)/(m − 1)`, the number of vertices of length `< depth`.
pub fn portrait_size(m: usize, depth: usize) -> Option<usize> {
    let mut total: usize = 0;
    let mut level: usize = 1;
    for _ in 0..depth {
        total = total.checked_add(level)?;
        level = level.checked_mul(m)?;
    }
    Some(total)
}

/// Labels of all vertices of length `< depth`, in level order and, within a
/// level, in rank order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Portrait {
    m: usize,
    depth: usize,
    labels: Vec<Perm>,
}

impl Portrait {
    /// Portrait from labels in level order; their number must be
    /// `(m^depth − 1)/(m − 1)` for some depth.
    pub fn from_labels(m: usize, labels: Vec<Perm>) -> Result<Portrait> {
        if let Some(p) = labels.iter().find(|p| p.degree() != m) {
            return Err(Error::DegreeMismatch {
                expected: m,
                found: p.degree(),
            });
        }
        let depth = (0..)
            .map(|d| (d, portrait_size(m, d)))
            .take_while(|(_, s)| s.is_some_and(|s| s <= labels.len()))
            .find(|(_, s)| *s == Some(labels.len()))
            .map(|(d, _)| d)
            .ok_or_else(|| Error::Dimension(alloc::format!("{} labels do not fill whole levels", labels.len())))?;
        Ok(Portrait { m, depth, labels })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn labels(&self) -> &[Perm] {
        &self.labels
    }

    pub fn label(&self, u: &Word) -> Option<&Perm> {
        if u.len() >= self.depth || u.check(self.m).is_err() {
            return None;
        }
        let offset = portrait_size(self.m, u.len())?;
        self.labels.get(offset + u.rank(self.m))
    }

    /// `(vertex, label)` pairs in level order.
    pub fn iter(&self) -> impl Iterator<Item = (Word, &Perm)> + '_ {
        let m = self.m;
        let mut level = 0;
        let mut start = 0;
        let mut width = 1;
        self.labels.iter().enumerate().map(move |(i, p)| {
            while i >= start + width {
                start += width;
                width *= m;
                level += 1;
            }
            (Word::unrank(i - start, level, m), p)
        })
    }

    /// Labels of level `n`, in rank order.
    pub fn level(&self, n: usize) -> &[Perm] {
        let start = portrait_size(self.m, n).unwrap_or(usize::MAX).min(self.labels.len());
        let end = portrait_size(self.m, n + 1)
            .unwrap_or(usize::MAX)
            .min(self.labels.len());
        &self.labels[start..end]
    }

    pub fn is_trivial(&self) -> bool {
        self.labels.iter().all(Perm::is_identity)
    }
}

/// `g` and `h` have the same labels at every vertex of length `< depth`,
/// i.e. act identically on the first `depth` levels.
pub fn equal_to_depth(g: &Element, h: &Element, depth: usize) -> Result<bool> {
    Ok(first_difference(g, h, depth)?.is_none())
}

/// A shortest vertex of length `< depth` where `g` and `h` have different
/// labels. Explores pairs of sections level by level, visiting each
/// distinct pair once.
pub fn first_difference(g: &Element, h: &Element, depth: usize) -> Result<Option<Word>> {
    if g.degree() != h.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: h.degree(),
        });
    }
    let m = g.degree();
    let mut seen: BTreeSet<(Vec<Generator>, Vec<Generator>)> = BTreeSet::new();
    seen.insert((g.letters.clone(), h.letters.clone()));
    let mut level = alloc::vec![(Word::root(), g.clone(), h.clone())];
    for k in 0..depth {
        let mut next = Vec::new();
        for (v, a, b) in level {
            if a.root_label() != b.root_label() {
                return Ok(Some(v));
            }
            if k + 1 == depth {
                continue;
            }
            for y in 0..m {
                let (sa, sb) = (a.section_at(y), b.section_at(y));
                if seen.insert((sa.letters.clone(), sb.letters.clone())) {
                    let mut w = v.clone();
                    w.0.push(y as u8);
                    next.push((w, sa, sb));
                }
            }
        }
        level = next;
    }
    Ok(None)
}

/// Alias of [`Element::kappa`].
pub fn kappa(sigma: Perm) -> Element {
    Element::kappa(sigma)
}

#[cfg(test)]
mod tests;
