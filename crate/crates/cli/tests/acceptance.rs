//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use madic_core::conjugacy::{self, Verdict, Witness};
use madic_core::contraction::{self, Answer, NucleusOutcome};
use madic_core::spinal::{self, MultiGgsData, DEFAULT_DIRECTED_CAP};
use madic_core::symops::unit_perm;
use madic_core::tree::equal_to_depth;
use madic_core::zmod::ZmodMatrix;
use madic_core::{quotient, Element, Perm, PolyspinalData, PolyspinalGroup, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type LevelProfile = Vec<(String, Vec<usize>)>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn group(data: PolyspinalData) -> Arc<PolyspinalGroup> {
    PolyspinalGroup::new(data, DEFAULT_DIRECTED_CAP).expect("fixture builds")
}

fn fixtures() -> Vec<(&'static str, Arc<PolyspinalGroup>)> {
    vec![
        ("pervova", group(spinal::pervova())),
        ("gupta_sidki", group(spinal::gupta_sidki())),
        ("grigorchuk", group(spinal::grigorchuk())),
    ]
}

fn gen(g: &Arc<PolyspinalGroup>, name: &str) -> Element {
    Element::generator(g, name).unwrap()
}

fn ggs3(v: [u32; 2]) -> MultiGgsData {
    MultiGgsData::from_rows(3, &[[v[0] as i64], [v[1] as i64]]).unwrap()
}

fn vector_of(d: &MultiGgsData) -> [u32; 2] {
    [d.matrix().get(0, 0), d.matrix().get(1, 0)]
}

/// Checks `κ⁻¹ g κ` against the image predicted by the generator map by
/// comparing full portraits, one generator at a time.
fn portraits_confirm(a: &MultiGgsData, b: &MultiGgsData, w: &Witness, depth: usize) -> Result<(), String> {
    let ga = group(a.to_polyspinal());
    let gb = group(b.to_polyspinal());
    let kappa = Element::kappa(unit_perm(w.unit));
    let a_names: Vec<String> = Element::generators(&ga)
        .into_iter()
        .map(|(n, _)| n)
        .filter(|n| n != "a")
        .collect();
    for (name, g) in Element::generators(&gb) {
        let lhs = kappa.inverse().mul(&g).unwrap().mul(&kappa).unwrap();
        let rhs = if name == "a" {
            gen(&ga, "a").pow(w.unit.inverse().value() as i64)
        } else {
            let j = Element::generators(&gb)
                .iter()
                .filter(|(n, _)| n != "a")
                .position(|(n, _)| *n == name)
                .unwrap();
            a_names
                .iter()
                .enumerate()
                .fold(Element::identity(ga.degree()), |acc, (i, n)| {
                    acc.mul(&gen(&ga, n).pow(w.generator_map.get(i, j) as i64)).unwrap()
                })
        };
        if lhs.portrait(depth).unwrap() != rhs.portrait(depth).unwrap() {
            return Err(format!(
                "generator {name} of {:?} disagrees at depth {depth}",
                b.matrix().row_vecs()
            ));
        }
    }
    Ok(())
}

/// All vectors in the column span of `cols`, each column a vector over `Z/m`.
fn span(m: u32, cols: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let dim = cols.first().map_or(0, Vec::len);
    let mut out = BTreeSet::new();
    let combos = (m as usize).pow(cols.len() as u32);
    for code in 0..combos {
        let mut c = code;
        let mut v = vec![0u32; dim];
        for col in cols {
            let k = (c % m as usize) as u32;
            c /= m as usize;
            for (x, y) in v.iter_mut().zip(col) {
                *x = (*x + k * y) % m;
            }
        }
        out.insert(v);
    }
    out
}

fn columns(e: &ZmodMatrix) -> Vec<Vec<u32>> {
    (0..e.ncols()).map(|j| e.column(j)).collect()
}

/// Columns of `E` with row `x` replaced by row `u·x mod m` (rows are
/// indexed by the letters `1, …, m − 1`).
fn relabelled_columns(e: &ZmodMatrix, u: u32) -> Vec<Vec<u32>> {
    let m = e.modulus();
    (0..e.ncols())
        .map(|j| (1..m).map(|x| e.get(((u * x) % m) as usize - 1, j)).collect())
        .collect()
}

fn units(m: u32) -> Vec<u32> {
    (1..m).filter(|&u| gcd(u, m) == 1).collect()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn random_mggs(rng: &mut ChaCha8Rng, m: u32, s: usize) -> MultiGgsData {
    loop {
        let rows: Vec<Vec<i64>> = (0..m - 1)
            .map(|_| (0..s).map(|_| rng.gen_range(0..m as i64)).collect())
            .collect();
        if let Ok(d) = MultiGgsData::from_rows(m, &rows) {
            return d;
        }
    }
}

/// A matrix with the same column span as `P_v · E · N` for a random unit
/// `v` and random invertible `N`.
fn random_conjugate(rng: &mut ChaCha8Rng, d: &MultiGgsData) -> Option<MultiGgsData> {
    let m = d.modulus();
    let s = d.rank();
    let us = units(m);
    let v = us[rng.gen_range(0..us.len())];
    let n = loop {
        let rows: Vec<Vec<i64>> = (0..s)
            .map(|_| (0..s).map(|_| rng.gen_range(0..m as i64)).collect())
            .collect();
        let n = ZmodMatrix::from_rows(m, &rows).unwrap();
        if n.is_invertible() {
            break n;
        }
    };
    let cols = relabelled_columns(d.matrix(), v);
    let pe = ZmodMatrix::from_columns(
        m,
        m as usize - 1,
        &cols
            .iter()
            .map(|c| c.iter().map(|&x| x as i64).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    )
    .unwrap();
    MultiGgsData::new(pe.mul(&n).unwrap()).ok()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let classes = conjugacy::census(3, 1, Some(8), 100_000).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    // Orbits of the nonzero vectors under scaling and the u = 2 swap.
    let mut oracle: BTreeSet<BTreeSet<[u32; 2]>> = BTreeSet::new();
    for v in [[0, 1], [0, 2], [1, 0], [1, 1], [1, 2], [2, 0], [2, 1], [2, 2]] {
        let mut orbit = BTreeSet::from([v]);
        let mut queue = VecDeque::from([v]);
        while let Some(w) = queue.pop_front() {
            for next in [[(2 * w[0]) % 3, (2 * w[1]) % 3], [w[1], w[0]]] {
                if orbit.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        oracle.insert(orbit);
    }
    let found: BTreeSet<BTreeSet<[u32; 2]>> = classes
        .iter()
        .map(|c| c.members.iter().map(|(d, _)| vector_of(d)).collect())
        .collect();
    ensure!(found == oracle, "classes {found:?} differ from orbit oracle {oracle:?}");

    let mut checked = 0;
    for class in &classes {
        let rep = &class.members[0].0;
        for (member, witness) in &class.members[1..] {
            let w = witness.as_ref().ok_or("member without witness")?;
            ensure!(
                w.verified_depth == Some(8),
                "witness for {:?} not verified",
                vector_of(member)
            );
            let gr = group(rep.to_polyspinal());
            let gm = group(member.to_polyspinal());
            let images = conjugacy::multi_ggs_generator_images(&gr, member, w.unit, &w.generator_map).unwrap();
            for depth in 1..=8 {
                ensure!(
                    conjugacy::verify_witness(&gm, &w.kappa, &images, depth).unwrap(),
                    "verify_witness fails at depth {depth} for {:?}",
                    vector_of(member)
                );
            }
            portraits_confirm(rep, member, w, 8)?;
            checked += 1;
        }
    }
    ensure!(elapsed < Duration::from_secs(5), "census took {elapsed:?}");
    Ok(format!(
        "3 classes over 8 vectors, {checked} witnesses verified at depths 1..8, census {elapsed:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut conj, mut non) = (0, 0);
    for i in 0..50 {
        let m = [3, 4, 5][rng.gen_range(0..3)];
        let s = rng.gen_range(1..=2usize.min(m as usize - 1));
        let a = random_mggs(&mut rng, m, s);
        let b = if i % 2 == 0 {
            random_conjugate(&mut rng, &a).unwrap_or_else(|| random_mggs(&mut rng, m, s))
        } else {
            random_mggs(&mut rng, m, s)
        };
        let span_a = span(m, &columns(a.matrix()));
        let equal_units: Vec<u32> = units(m)
            .into_iter()
            .filter(|&u| span(m, &relabelled_columns(b.matrix(), u)) == span_a)
            .collect();
        match conjugacy::decide_multi_ggs(&a, &b, Some(8)).map_err(|e| e.to_string())? {
            Verdict::Conjugate(w) => {
                ensure!(
                    equal_units.contains(&w.unit.value()),
                    "unit {} does not equate spans",
                    w.unit.value()
                );
                ensure!(w.verified_depth == Some(8), "conjugate verdict not verified at depth 8");
                portraits_confirm(&a, &b, &w, if m == 5 { 6 } else { 8 })?;
                conj += 1;
            }
            Verdict::NotConjugate(certs) => {
                ensure!(
                    equal_units.is_empty(),
                    "spans agree for u in {equal_units:?} but verdict is NotConjugate"
                );
                for u in units(m) {
                    let span_b = span(m, &relabelled_columns(b.matrix(), u));
                    let c = certs
                        .iter()
                        .find(|c| c.unit.value() == u)
                        .ok_or_else(|| format!("no certificate for u = {u}"))?;
                    let (inside, outside) = if c.in_first {
                        (&span_a, &span_b)
                    } else {
                        (&span_b, &span_a)
                    };
                    ensure!(
                        inside.contains(&c.vector) && !outside.contains(&c.vector),
                        "certificate {:?} for u = {u} does not separate the spans",
                        c.vector
                    );
                }
                non += 1;
            }
            other => return Err(format!("unexpected verdict {}", other.name())),
        }
    }
    Ok(format!(
        "{conj} conjugate pairs verified, {non} non-conjugate pairs certified"
    ))
}

fn ternary_vectors() -> Vec<[u32; 2]> {
    [[0, 1], [0, 2], [1, 0], [1, 1], [1, 2], [2, 0], [2, 1], [2, 2]].to_vec()
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut counts = (0, 0);
    for va in ternary_vectors() {
        for vb in ternary_vectors() {
            let (a, b) = (ggs3(va), ggs3(vb));
            let decided = conjugacy::decide_multi_ggs(&a, &b, None).map_err(|e| e.to_string())?;
            let refuted = conjugacy::refute_spinal_necessary(&a.to_polyspinal(), &b.to_polyspinal(), 1..=4)
                .map_err(|e| e.to_string())?;
            match (&decided, &refuted) {
                (Verdict::Conjugate(_), Verdict::Consistent(_)) => counts.0 += 1,
                (Verdict::NotConjugate(_), Verdict::Refuted { .. }) => counts.1 += 1,
                _ => {
                    return Err(format!(
                        "{va:?} vs {vb:?}: decider {} but refuter {}",
                        decided.name(),
                        refuted.name()
                    ))
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!(
        "64 pairs agree ({} consistent, {} refuted) in {elapsed:.2?}",
        counts.0, counts.1
    ))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    for (name, g) in fixtures() {
        let m = g.degree() as u8;
        let mut samples = 0;
        while samples < 1000 {
            let w = contraction::random_word(&g, rng.gen_range(2..=24), &mut rng);
            let form = contraction::to_syllable_form(&w).map_err(|e| e.to_string())?;
            let syl = form.len();
            if !(2..=8).contains(&syl) {
                continue;
            }
            for x in 0..m {
                for y in 0..m {
                    let s = contraction::syllable_sections(&form, &Word(vec![x, y])).map_err(|e| e.to_string())?;
                    ensure!(
                        s.len() < syl,
                        "{name}: section of {} at {x}{y} has {} ≥ {syl} syllables",
                        w,
                        s.len()
                    );
                }
            }
            samples += 1;
        }
        checked += samples;
    }
    Ok(format!("{checked} words, every depth-2 section strictly shorter"))
}

fn trivial(g: &Element) -> bool {
    contraction::is_identity(g).unwrap() == Answer::Trivial
}

fn criterion_5() -> Outcome {
    let gs = group(spinal::gupta_sidki());
    ensure!(trivial(&gen(&gs, "b").pow(3)), "b^3 not trivial in gupta_sidki");
    ensure!(!trivial(&gen(&gs, "b")), "b reported trivial in gupta_sidki");
    let gr = group(spinal::grigorchuk());
    let (b, c, d) = (gen(&gr, "b"), gen(&gr, "c"), gen(&gr, "d"));
    for (label, e) in [
        ("b^2", b.pow(2)),
        ("c^2", c.pow(2)),
        ("d^2", d.pow(2)),
        ("bcd", b.mul(&c).unwrap().mul(&d).unwrap()),
    ] {
        ensure!(trivial(&e), "{label} not trivial in grigorchuk");
    }
    let nucleus = contraction::nucleus(&gr, 100).map_err(|e| e.to_string())?;
    for e in nucleus.elements() {
        ensure!(trivial(&e.pow(2)), "nucleus element {e} does not square to 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let groups = fixtures();
    for i in 0..500 {
        let (_, g) = &groups[i % groups.len()];
        let x = contraction::random_word(g, rng.gen_range(1..=16), &mut rng);
        // Invert through the syllable form so the product does not cancel letter by letter.
        let inv = contraction::to_syllable_form(&x).unwrap().to_element().inverse();
        ensure!(trivial(&x.mul(&inv).unwrap()), "g·g⁻¹ not trivial for g = {x}");
    }
    Ok(format!(
        "torsion relations hold, {} nucleus squares trivial, 500 g·g⁻¹ trivial",
        nucleus.elements().len()
    ))
}

fn section_and_inverse_closed(elements: &[Element]) -> Result<(), String> {
    let find = |x: &Element| elements.iter().any(|e| equal_to_depth(e, x, 8).unwrap());
    for e in elements {
        for y in 0..e.degree() {
            ensure!(find(&e.section_at(y)), "section of {e} at {y} leaves the set");
        }
        ensure!(find(&e.inverse()), "inverse of {e} leaves the set");
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let gr = group(spinal::grigorchuk());
    let NucleusOutcome::Closed(elements) = contraction::nucleus(&gr, 100).map_err(|e| e.to_string())? else {
        return Err("grigorchuk nucleus did not close".into());
    };
    let expected: Vec<Element> = ["a", "b", "c", "d"]
        .iter()
        .map(|n| gen(&gr, n))
        .chain([Element::identity(2)])
        .collect();
    ensure!(
        elements.len() == 5,
        "grigorchuk nucleus has {} elements",
        elements.len()
    );
    for x in &expected {
        ensure!(
            elements.iter().any(|e| equal_to_depth(e, x, 8).unwrap()),
            "{x} missing from nucleus"
        );
    }
    section_and_inverse_closed(&elements)?;

    let gs = group(spinal::gupta_sidki());
    let NucleusOutcome::Closed(gs_elements) = contraction::nucleus(&gs, 50).map_err(|e| e.to_string())? else {
        return Err("gupta_sidki nucleus did not close below 50".into());
    };
    section_and_inverse_closed(&gs_elements)?;

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (name, g) in fixtures() {
        let report = contraction::reducing_selftest(&g, 200, 6, 12, &mut rng).map_err(|e| e.to_string())?;
        ensure!(
            report.all_passed(),
            "{name}: selftest {}/{}",
            report.passed,
            report.samples
        );
    }
    Ok(format!(
        "grigorchuk nucleus of 5, gupta_sidki nucleus of {}, selftest 200/200 x3",
        gs_elements.len()
    ))
}

fn level_images(g: &Element, n: usize) -> Vec<usize> {
    let m = g.degree();
    (0..m.pow(n as u32))
        .map(|i| g.apply(&Word::unrank(i, n, m)).unwrap().rank(m))
        .collect()
}

fn bfs_order(gens: &[Vec<usize>]) -> usize {
    let identity: Vec<usize> = (0..gens[0].len()).collect();
    let mut seen = BTreeSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for s in gens {
            let q: Vec<usize> = p.iter().map(|&x| s[x]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

fn bfs_transitive(gens: &[Vec<usize>]) -> bool {
    let mut seen = BTreeSet::from([0]);
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            if seen.insert(s[x]) {
                queue.push_back(s[x]);
            }
        }
    }
    seen.len() == gens[0].len()
}

fn criterion_7() -> Outcome {
    let mut report = Vec::new();
    for (name, g) in fixtures() {
        let top = if name == "grigorchuk" { 3 } else { 2 };
        let gens: Vec<Element> = Element::generators(&g).into_iter().map(|(_, e)| e).collect();
        for n in 1..=3 {
            let perms: Vec<Vec<usize>> = gens.iter().map(|e| level_images(e, n)).collect();
            ensure!(bfs_transitive(&perms), "{name} intransitive on level {n}");
            if n <= top {
                let oracle = bfs_order(&perms);
                let chain = quotient::group_order_level(&g, n).map_err(|e| e.to_string())?;
                ensure!(
                    chain.to_string() == oracle.to_string(),
                    "{name} level {n}: chain {chain}, BFS {oracle}"
                );
                report.push(format!("{name}@{n}={oracle}"));
            }
        }
        ensure!(
            quotient::spherically_transitive(&g, 3).unwrap(),
            "{name} not spherically transitive to 3"
        );
    }
    Ok(format!("orders agree ({}), transitive to level 3", report.join(" ")))
}

fn level_profile(d: &MultiGgsData) -> LevelProfile {
    let g = group(d.to_polyspinal());
    (1..=3)
        .map(|n| {
            (
                quotient::group_order_level(&g, n).unwrap().to_string(),
                quotient::orbits_level(&g, n).unwrap(),
            )
        })
        .collect()
}

fn criterion_8() -> Outcome {
    let pervova = spinal::pervova();
    let other = spinal::multi_ggs(3, &[[1, 0], [0, 1]]).unwrap();
    match conjugacy::refute_multi_egs_necessary(&pervova, &other).map_err(|e| e.to_string())? {
        Verdict::Refuted { detail, .. } if detail.contains("rank") => {}
        v => return Err(format!("pervova vs E = I: {}", v.name())),
    }
    let v = conjugacy::refute_multi_egs_necessary(&pervova, &pervova).map_err(|e| e.to_string())?;
    ensure!(matches!(v, Verdict::Consistent(_)), "pervova vs itself: {}", v.name());

    let mut pairs: Vec<(MultiGgsData, MultiGgsData)> = Vec::new();
    for va in ternary_vectors() {
        for vb in ternary_vectors() {
            pairs.push((ggs3(va), ggs3(vb)));
        }
    }
    // Every class member for m ≤ 4; the first four members of each class for m = 5.
    for (m, s, per_class) in [(3, 2, usize::MAX), (4, 1, usize::MAX), (5, 1, 4)] {
        for class in conjugacy::census(m, s, None, 100_000).unwrap() {
            for (member, _) in class.members.iter().take(per_class) {
                pairs.push((class.members[0].0.clone(), member.clone()));
            }
        }
    }
    let mut profiles: BTreeMap<Vec<Vec<u32>>, LevelProfile> = BTreeMap::new();
    let mut profile = |d: &MultiGgsData| {
        profiles
            .entry(d.matrix().row_vecs())
            .or_insert_with(|| level_profile(d))
            .clone()
    };
    let mut conjugate = 0;
    for (a, b) in &pairs {
        if !matches!(conjugacy::decide_multi_ggs(a, b, None).unwrap(), Verdict::Conjugate(_)) {
            continue;
        }
        let v =
            conjugacy::refute_multi_egs_necessary(&a.to_polyspinal(), &b.to_polyspinal()).map_err(|e| e.to_string())?;
        ensure!(
            matches!(v, Verdict::Consistent(_)),
            "{:?} vs {:?}: {}",
            a.matrix().row_vecs(),
            b.matrix().row_vecs(),
            v.name()
        );
        ensure!(
            profile(a) == profile(b),
            "level invariants differ for {:?} vs {:?}",
            a.matrix().row_vecs(),
            b.matrix().row_vecs()
        );
        conjugate += 1;
    }
    Ok(format!(
        "rank mismatch refuted, {conjugate} conjugate pairs consistent with equal level-≤3 invariants"
    ))
}

fn random_automorphism(g: &Arc<PolyspinalGroup>, rng: &mut ChaCha8Rng) -> Element {
    let w = contraction::random_word(g, rng.gen_range(0..=10), rng);
    if rng.gen_bool(0.3) {
        let k = Element::kappa(Perm::standard_cycle(g.degree()).pow(rng.gen_range(1..g.degree() as i64)));
        w.mul(&k).unwrap()
    } else {
        w
    }
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let groups = fixtures();
    for i in 0..10_000 {
        let (name, g) = &groups[rng.gen_range(0..groups.len())];
        let m = g.degree();
        let u = Word((0..rng.gen_range(0..=4)).map(|_| rng.gen_range(0..m) as u8).collect());
        let f = random_automorphism(g, &mut rng);
        match i % 3 {
            0 => {
                let h = random_automorphism(g, &mut rng);
                let lhs = f.mul(&h).unwrap().section(&u).unwrap();
                let rhs = f
                    .section(&h.apply(&u).unwrap())
                    .unwrap()
                    .mul(&h.section(&u).unwrap())
                    .unwrap();
                ensure!(
                    equal_to_depth(&lhs, &rhs, 4).unwrap(),
                    "{name}: (fh)|_u ≠ f|_(h(u)) h|_u for f={f}, h={h}, u={u}"
                );
            }
            1 => {
                let finv = f.inverse();
                let lhs = finv.section(&u).unwrap();
                let rhs = f.section(&finv.apply(&u).unwrap()).unwrap().inverse();
                ensure!(
                    equal_to_depth(&lhs, &rhs, 4).unwrap(),
                    "{name}: inverse section fails for f={f}, u={u}"
                );
            }
            _ => {
                let label = f.label(&u).unwrap();
                ensure!(
                    label == f.section(&u).unwrap().root_label(),
                    "{name}: label ≠ root of section at {u}"
                );
                for x in 0..m {
                    let mut ux = u.clone();
                    ux.0.push(x as u8);
                    let mut expected = f.apply(&u).unwrap();
                    expected.0.push(label.apply(x) as u8);
                    ensure!(
                        f.apply(&ux).unwrap() == expected,
                        "{name}: f(ux) ≠ f(u) f|^u(x) at {u}{x}"
                    );
                }
            }
        }
    }
    Ok("10000 cocycle, inverse-section and label instances".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("ternary GGS census", criterion_1),
        ("witness soundness stress", criterion_2),
        ("decider and spinal refuter agree", criterion_3),
        ("syllable length drops at depth 2", criterion_4),
        ("word problem and torsion", criterion_5),
        ("nucleus closure and selftest", criterion_6),
        ("level quotients against BFS", criterion_7),
        ("multi-EGS rank filter", criterion_8),
        ("section calculus identities", criterion_9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {} {name}: {reason} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
