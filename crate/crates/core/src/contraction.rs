//! Syllable normal forms, an exact word-problem solver for reducing
//! polyspinal groups, nucleus closure and a randomised reduction check.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::spinal::{ElemId, PolyspinalGroup};
use crate::symops::{self, Perm};
use crate::tree::{Element, Generator, Portrait, Word};

/// One factor `ρ d ρ⁻¹` of a syllable form, `d` being element `elem` of
/// directed group `datum` at the given shift.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub datum: usize,
    pub shift: usize,
    pub elem: ElemId,
    pub conj: Perm,
}

/// `(∏ ρ_j d_j ρ_j⁻¹) · τ` with adjacent syllables of equal datum, shift and
/// conjugator merged.
#[derive(Clone)]
pub struct SyllableForm {
    m: usize,
    group: Option<Arc<PolyspinalGroup>>,
    syllables: Vec<Syllable>,
    tail: Perm,
}

impl SyllableForm {
    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn tail(&self) -> &Perm {
        &self.tail
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    fn key(&self) -> (Vec<Syllable>, Perm) {
        (self.syllables.clone(), self.tail.clone())
    }

    pub fn to_element(&self) -> Element {
        let mut letters = Vec::with_capacity(3 * self.syllables.len() + 1);
        for s in &self.syllables {
            letters.push(Generator::Rooted(s.conj.clone()));
            letters.push(Generator::Directed {
                datum: s.datum,
                elem: s.elem,
                shift: s.shift,
            });
            letters.push(Generator::Rooted(s.conj.inverse()));
        }
        letters.push(Generator::Rooted(self.tail.clone()));
        Element::from_letters_unchecked(self.m, self.group.clone(), letters)
    }

    /// Syllable form of the section at a first-level vertex.
    pub fn section_at(&self, y: usize) -> SyllableForm {
        to_syllable_form(&self.to_element().section_at(y)).expect("sections stay inside the group")
    }
}

impl PartialEq for SyllableForm {
    fn eq(&self, other: &SyllableForm) -> bool {
        self.m == other.m && self.syllables == other.syllables && self.tail == other.tail
    }
}

impl Eq for SyllableForm {}

impl fmt::Debug for SyllableForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SyllableForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group = self.group.as_deref();
        f.write_str("[")?;
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let dg = group.expect("syllables carry a group").datum(s.datum);
            write!(f, "({}", dg.word(s.elem))?;
            if s.shift > 0 {
                write!(f, "[{}]", s.shift)?;
            }
            write!(f, ", {})", s.conj)?;
        }
        write!(f, "] {}", self.tail)
    }
}

fn push_syllable(out: &mut Vec<Syllable>, s: Syllable, group: &PolyspinalGroup) {
    if s.elem == 0 {
        return;
    }
    if let Some(last) = out.last_mut() {
        if last.datum == s.datum && last.shift == s.shift && last.conj == s.conj {
            last.elem = group.datum(s.datum).mul(last.elem, s.elem);
            if last.elem == 0 {
                out.pop();
            }
            return;
        }
    }
    out.push(s);
}

/// Rewrites `g` by moving rooted letters to the right, conjugating the
/// directed letters they pass.
pub fn to_syllable_form(g: &Element) -> Result<SyllableForm> {
    let m = g.degree();
    let mut rho = Perm::identity(m);
    let mut syllables = Vec::new();
    for l in g.letters() {
        match l {
            Generator::Rooted(p) => rho = rho.compose_unchecked(p),
            Generator::Directed { datum, elem, shift } => {
                let group = g.group().expect("directed letters carry a group");
                push_syllable(
                    &mut syllables,
                    Syllable {
                        datum: *datum,
                        shift: *shift,
                        elem: *elem,
                        conj: rho.clone(),
                    },
                    group,
                );
            }
            Generator::ConstantPortrait(p) => {
                return Err(Error::NoSyllableForm(alloc::format!(
                    "constant-portrait letter kappa{p} is not a group element"
                )))
            }
        }
    }
    Ok(SyllableForm {
        m,
        group: g.group().cloned(),
        syllables,
        tail: rho,
    })
}

/// Number of syllables of `g`.
pub fn syllable_length(g: &Element) -> Result<usize> {
    Ok(to_syllable_form(g)?.len())
}

/// Syllable form of the section of `g` at a vertex of length two.
pub fn syllable_sections(g: &SyllableForm, xy: &Word) -> Result<SyllableForm> {
    if xy.len() != 2 {
        return Err(Error::InvalidData(alloc::format!(
            "expected a vertex of length 2, got {xy}"
        )));
    }
    xy.check(g.m)?;
    Ok(g.section_at(xy.0[0] as usize).section_at(xy.0[1] as usize))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer {
    Trivial,
    /// A vertex at which the element has a nontrivial label.
    Nontrivial(Word),
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub vertex: Word,
    pub syllables: usize,
    pub note: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordProblemReport {
    pub answer: Answer,
    /// Deepest level the recursion visited.
    pub depth_used: usize,
    /// Distinct syllable forms examined.
    pub states: usize,
    pub trace: Vec<TraceStep>,
}

/// Trace steps kept by [`solve_word_problem`] when tracing.
pub const TRACE_LIMIT: usize = 10_000;

struct Solver {
    budget: usize,
    trivial: BTreeSet<(Vec<Syllable>, Perm)>,
    open: BTreeSet<(Vec<Syllable>, Perm)>,
    depth_used: usize,
    trace: Option<Vec<TraceStep>>,
}

enum Visit {
    Trivial,
    Nontrivial(Vec<u8>),
    OutOfBudget,
}

impl Solver {
    fn note(&mut self, vertex: &[u8], syllables: usize, note: &'static str) {
        if let Some(t) = &mut self.trace {
            if t.len() < TRACE_LIMIT {
                t.push(TraceStep {
                    vertex: Word(vertex.to_vec()),
                    syllables,
                    note,
                });
            }
        }
    }

    fn visit(&mut self, form: SyllableForm, vertex: &mut Vec<u8>) -> Visit {
        self.depth_used = self.depth_used.max(vertex.len());
        let syl = form.len();
        if !form.tail.is_identity() {
            self.note(vertex, syl, "nontrivial root label");
            return Visit::Nontrivial(vertex.clone());
        }
        if syl == 0 {
            self.note(vertex, 0, "identity");
            return Visit::Trivial;
        }
        if syl == 1 {
            let s = &form.syllables[0];
            let dg = form.group.as_deref().expect("syllables carry a group").datum(s.datum);
            return match dg.first_nontrivial_label(s.elem, s.shift) {
                None => {
                    self.note(vertex, 1, "trivial directed element");
                    Visit::Trivial
                }
                Some((k, y)) => {
                    self.note(vertex, 1, "nontrivial directed element");
                    // ρ d ρ⁻¹ has the label of d at x^{k-1} y at the vertex
                    // obtained by applying ρ to the first letter
                    let mut w = alloc::vec![dg.path() as u8; k - 1];
                    w.push(y as u8);
                    w[0] = s.conj.apply(w[0] as usize) as u8;
                    let mut v = vertex.clone();
                    v.extend(w);
                    Visit::Nontrivial(v)
                }
            };
        }
        let key = form.key();
        if self.trivial.contains(&key) {
            self.note(vertex, syl, "known trivial");
            return Visit::Trivial;
        }
        if self.open.contains(&key) {
            self.note(vertex, syl, "repeated state");
            return Visit::Trivial;
        }
        if vertex.len() >= self.budget {
            self.note(vertex, syl, "recursion budget exhausted");
            return Visit::OutOfBudget;
        }
        self.note(vertex, syl, "expand");
        self.open.insert(key.clone());
        for y in 0..form.m {
            let child = form.section_at(y);
            vertex.push(y as u8);
            let r = self.visit(child, vertex);
            vertex.pop();
            match r {
                Visit::Trivial => {}
                other => return other,
            }
        }
        self.open.remove(&key);
        self.trivial.insert(key);
        Visit::Trivial
    }
}

/// Recursion budget used by [`is_identity`]: `2⌈log₂ syl⌉ + window + 4`.
pub fn recursion_budget(syl: usize, window: usize) -> usize {
    let log = usize::BITS as usize - syl.max(1).saturating_sub(1).leading_zeros() as usize;
    2 * log + window + 4
}

/// Decides whether `g` is trivial, recursing on first-level sections.
///
/// A syllable form that reappears on the current recursion path is assumed
/// trivial: the examined forms then make up a section-closed set in which
/// every root label is trivial, so all of them act trivially.
pub fn solve_word_problem(g: &Element, trace: bool) -> Result<WordProblemReport> {
    let form = to_syllable_form(g)?;
    let window = g.group().map_or(1, |gr| gr.window());
    let mut solver = Solver {
        budget: recursion_budget(form.len(), window),
        trivial: BTreeSet::new(),
        open: BTreeSet::new(),
        depth_used: 0,
        trace: trace.then(Vec::new),
    };
    let answer = match solver.visit(form, &mut Vec::new()) {
        Visit::Trivial => Answer::Trivial,
        Visit::Nontrivial(v) => Answer::Nontrivial(Word(v)),
        Visit::OutOfBudget => {
            Answer::Inconclusive(alloc::format!("recursion budget of {} levels exhausted", solver.budget))
        }
    };
    Ok(WordProblemReport {
        answer,
        depth_used: solver.depth_used,
        states: solver.trivial.len() + solver.open.len(),
        trace: solver.trace.unwrap_or_default(),
    })
}

pub fn is_identity(g: &Element) -> Result<Answer> {
    Ok(solve_word_problem(g, false)?.answer)
}

/// Decides `g = h` as `g h⁻¹ = 1`.
pub fn elements_equal(g: &Element, h: &Element) -> Result<Answer> {
    is_identity(&g.mul(&h.inverse())?)
}

#[derive(Clone, Debug)]
pub enum NucleusOutcome {
    Closed(Vec<Element>),
    ExceedsCap(Vec<Element>),
    /// The word problem could not separate two candidates.
    Inconclusive(String, Vec<Element>),
}

impl NucleusOutcome {
    pub fn elements(&self) -> &[Element] {
        match self {
            NucleusOutcome::Closed(v) | NucleusOutcome::ExceedsCap(v) | NucleusOutcome::Inconclusive(_, v) => v,
        }
    }
}

struct Closure {
    elements: Vec<Element>,
    keys: BTreeMap<(Vec<Syllable>, Perm), usize>,
}

enum Insert {
    Known,
    New,
    Inconclusive(String),
}

impl Closure {
    fn insert(&mut self, g: Element) -> Result<Insert> {
        let key = to_syllable_form(&g)?.key();
        if self.keys.contains_key(&key) {
            return Ok(Insert::Known);
        }
        for (i, h) in self.elements.iter().enumerate() {
            match elements_equal(&g, h)? {
                Answer::Trivial => {
                    self.keys.insert(key, i);
                    return Ok(Insert::Known);
                }
                Answer::Nontrivial(_) => {}
                Answer::Inconclusive(r) => return Ok(Insert::Inconclusive(r)),
            }
        }
        self.keys.insert(key, self.elements.len());
        self.elements.push(g);
        Ok(Insert::New)
    }
}

/// Smallest set containing `1`, the generators and their inverses that is
/// closed under first-level sections of pairwise products (and hence under
/// sections and inverses). Elements are compared with the exact word
/// problem solver.
pub fn nucleus(group: &Arc<PolyspinalGroup>, cap: usize) -> Result<NucleusOutcome> {
    let m = group.degree();
    let mut closure = Closure {
        elements: Vec::new(),
        keys: BTreeMap::new(),
    };
    let mut seeds = alloc::vec![Element::identity(m)];
    for (_, g) in Element::generators(group) {
        seeds.push(g.inverse());
        seeds.push(g);
    }
    // elements [done..] still have to be paired with everything
    let mut done = 0;
    let mut pending = seeds;
    loop {
        for g in pending.drain(..) {
            match closure.insert(g)? {
                Insert::Inconclusive(r) => return Ok(NucleusOutcome::Inconclusive(r, closure.elements)),
                Insert::New if closure.elements.len() > cap => {
                    return Ok(NucleusOutcome::ExceedsCap(closure.elements));
                }
                _ => {}
            }
        }
        let total = closure.elements.len();
        if done == total {
            return Ok(NucleusOutcome::Closed(closure.elements));
        }
        for i in 0..total {
            let g = &closure.elements[i];
            if i >= done {
                pending.extend((0..m).map(|y| g.section_at(y)));
                pending.push(g.inverse());
            }
            for j in 0..total {
                if i < done && j < done {
                    continue;
                }
                let prod = g.mul(&closure.elements[j])?;
                pending.extend((0..m).map(|y| prod.section_at(y)));
            }
        }
        done = total;
    }
}

/// Uniformly random word of the given length over the generators and
/// their inverses.
pub fn random_word<R: Rng + ?Sized>(group: &Arc<PolyspinalGroup>, len: usize, rng: &mut R) -> Element {
    let steps: Vec<Element> = Element::generators(group)
        .into_iter()
        .flat_map(|(_, g)| [g.inverse(), g])
        .collect();
    let mut g = Element::identity(group.degree());
    for _ in 0..len {
        g = g.mul(&steps[rng.gen_range(0..steps.len())]).expect("same group");
    }
    g
}

/// Portrait depth used to compare sections against the nuclear sequence.
pub const SELFTEST_PORTRAIT_DEPTH: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub samples: usize,
    pub passed: usize,
    /// Count of samples by the first level whose sections all lie in
    /// `σⁿR ∪ ⋃ σⁿD^{(i)}`.
    pub first_level: BTreeMap<usize, usize>,
    pub failures: Vec<String>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.samples
    }
}

fn nuclear_portraits(group: &Arc<PolyspinalGroup>, n: usize) -> Result<BTreeSet<Portrait>> {
    let m = group.degree();
    let mut out = BTreeSet::new();
    for p in symops::generated_group(&group.data().rooted_companion(n), m) {
        out.insert(Element::rooted(p).portrait(SELFTEST_PORTRAIT_DEPTH)?);
    }
    for (i, dg) in group.directed().iter().enumerate() {
        for d in dg.elements() {
            let g = Element::from_letters(
                m,
                Some(group.clone()),
                alloc::vec![Generator::Directed {
                    datum: i,
                    elem: d,
                    shift: n
                }],
            )?;
            out.insert(g.portrait(SELFTEST_PORTRAIT_DEPTH)?);
        }
    }
    Ok(out)
}

/// For each sample word, finds the first level `n ≤ depth` at which every
/// section of the word agrees (to portrait depth 3) with an element of
/// `⟨σⁿR⟩` or of some `σⁿD^{(i)}`.
pub fn reducing_selftest<R: Rng + ?Sized>(
    group: &Arc<PolyspinalGroup>,
    samples: usize,
    depth: usize,
    max_len: usize,
    rng: &mut R,
) -> Result<SelftestReport> {
    let m = group.degree();
    let nuclear: Vec<BTreeSet<Portrait>> = (0..=depth)
        .map(|n| nuclear_portraits(group, n))
        .collect::<Result<_>>()?;
    let mut report = SelftestReport {
        samples,
        passed: 0,
        first_level: BTreeMap::new(),
        failures: Vec::new(),
    };
    for _ in 0..samples {
        let len = rng.gen_range(1..=max_len.max(1));
        let g = random_word(group, len, rng);
        let mut states: BTreeMap<(Vec<Syllable>, Perm), SyllableForm> = BTreeMap::new();
        let form = to_syllable_form(&g)?;
        states.insert(form.key(), form);
        let mut found = None;
        for (n, members) in nuclear.iter().enumerate() {
            let mut ok = true;
            for s in states.values() {
                if !members.contains(&s.to_element().portrait(SELFTEST_PORTRAIT_DEPTH)?) {
                    ok = false;
                    break;
                }
            }
            if ok {
                found = Some(n);
                break;
            }
            let mut next = BTreeMap::new();
            for s in states.values() {
                for y in 0..m {
                    let c = s.section_at(y);
                    next.entry(c.key()).or_insert(c);
                }
            }
            states = next;
        }
        match found {
            Some(n) => {
                report.passed += 1;
                *report.first_level.entry(n).or_default() += 1;
            }
            None => report.failures.push(alloc::format!(
                "{g}: sections not in the nuclear sequence by level {depth}"
            )),
        }
    }
    Ok(report)
}
