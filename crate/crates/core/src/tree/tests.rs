use super::*;
use crate::spinal::{grigorchuk, gupta_sidki, pervova, PolyspinalGroup, DEFAULT_DIRECTED_CAP};
use alloc::collections::BTreeSet;
use alloc::string::ToString;
use proptest::prelude::*;

fn group(data: crate::spinal::PolyspinalData) -> Arc<PolyspinalGroup> {
    PolyspinalGroup::new(data, DEFAULT_DIRECTED_CAP).unwrap()
}

fn gen(g: &Arc<PolyspinalGroup>, name: &str) -> Element {
    Element::generator(g, name).unwrap()
}

fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

fn p(s: &str, m: usize) -> Perm {
    Perm::parse(s, m).unwrap()
}

#[test]
fn apply_examples() {
    let pv = group(pervova());
    assert_eq!(gen(&pv, "a").apply(&w("0")).unwrap(), w("1"));
    assert_eq!(gen(&pv, "b").apply(&w("10")).unwrap(), w("11"));
    assert_eq!(Element::identity(3).apply(&w("2101")).unwrap(), w("2101"));
    assert!(gen(&pv, "a").apply(&w("3")).is_err());
}

#[test]
fn label_examples() {
    let gr = group(grigorchuk());
    let b = gen(&gr, "b");
    let d = gen(&gr, "d");
    assert_eq!(b.label(&w("0")).unwrap(), p("(0 1)", 2));
    assert!(d.label(&w("0")).unwrap().is_identity());
    let sigma = p("(0 2)", 3);
    assert_eq!(Element::rooted(sigma.clone()).label(&Word::root()).unwrap(), sigma);
}

#[test]
fn section_examples() {
    let pv = group(pervova());
    let c = gen(&pv, "c");
    assert_eq!(c.section(&w("1")).unwrap(), c);
    let sigma = Element::rooted(p("(0 1 2)", 3));
    assert!(sigma.section(&w("2")).unwrap().is_empty_word());
    let gs = group(gupta_sidki());
    let b = gen(&gs, "b");
    let bb = b.mul(&b).unwrap();
    assert_eq!(bb.section(&w("0")).unwrap(), bb);
}

#[test]
fn portrait_examples() {
    let k = Element::kappa(p("(0 1 2)", 3));
    let port = k.portrait(2).unwrap();
    assert_eq!(port.labels().len(), 4);
    assert!(port.labels().iter().all(|l| *l == p("(0 1 2)", 3)));

    let gr = group(grigorchuk());
    let port = gen(&gr, "b").portrait(3).unwrap();
    let swap = p("(0 1)", 2);
    assert!(port.label(&Word::root()).unwrap().is_identity());
    assert_eq!(port.label(&w("0")).unwrap(), &swap);
    assert!(port.label(&w("1")).unwrap().is_identity());
    assert_eq!(port.label(&w("10")).unwrap(), &swap);
    for v in ["11", "00", "01"] {
        assert!(port.label(&w(v)).unwrap().is_identity(), "{v}");
    }
    assert!(port.label(&w("000")).is_none());

    assert!(Element::identity(4).portrait(4).unwrap().is_trivial());
}

#[test]
fn portrait_iteration_matches_labels() {
    let pv = group(pervova());
    let g = gen(&pv, "a").mul(&gen(&pv, "b")).unwrap().mul(&gen(&pv, "c")).unwrap();
    let port = g.portrait(4).unwrap();
    let mut count = 0;
    for (v, l) in port.iter() {
        assert_eq!(&g.label(&v).unwrap(), l);
        count += 1;
    }
    assert_eq!(count, 1 + 3 + 9 + 27);
    assert_eq!(port.level(2).len(), 9);
}

#[test]
fn portrait_cap_is_an_error() {
    let g = Element::kappa(p("(0 1)", 2));
    assert!(matches!(g.portrait_capped(11, 1000), Err(Error::CapExceeded { .. })));
    assert_eq!(g.portrait_capped(9, 1000).unwrap().labels().len(), 511);
}

#[test]
fn equal_to_depth_examples() {
    let gs = group(gupta_sidki());
    let b = gen(&gs, "b");
    assert!(equal_to_depth(&b, &b, 5).unwrap());
    assert!(equal_to_depth(&b.pow(3), &Element::identity(3), 4).unwrap());
    assert!(!equal_to_depth(&b.pow(2), &Element::identity(3), 4).unwrap());
    let swap = Element::rooted(p("(0 1)", 2));
    assert!(!equal_to_depth(&swap, &Element::identity(2), 1).unwrap());
    assert!(equal_to_depth(&swap, &Element::identity(2), 0).unwrap());
}

#[test]
fn kappa_examples() {
    assert!(Element::kappa(Perm::identity(3)).is_empty_word());
    let sigma = p("(1 2)", 3);
    let k = kappa(sigma.clone());
    for (_, l) in k.portrait(4).unwrap().iter() {
        assert_eq!(l, &sigma);
    }
    assert_eq!(k.section(&w("021")).unwrap(), k);
}

#[test]
fn kappa_centralises_a_only_when_it_commutes() {
    let a = Element::rooted(Perm::standard_cycle(3));
    let k = Element::kappa(p("(1 2)", 3));
    // κ((1 2)) inverts a: (1 2)(0 1 2)(1 2) = (0 2 1)
    let conj = a.conjugate_by(&k).unwrap();
    assert!(equal_to_depth(&conj, &a.inverse(), 4).unwrap());
}

#[test]
fn mixed_groups_are_rejected() {
    let gs = group(gupta_sidki());
    let pv = group(pervova());
    assert!(matches!(gen(&gs, "b").mul(&gen(&pv, "b")), Err(Error::MixedGroups)));
    let gs2 = group(gupta_sidki());
    assert!(gen(&gs, "b").mul(&gen(&gs2, "b")).is_ok());
    assert!(Element::identity(2).mul(&Element::identity(3)).is_err());
}

#[test]
fn words_print_by_generator_names() {
    let gr = group(grigorchuk());
    let g = gen(&gr, "a").mul(&gen(&gr, "b")).unwrap().mul(&gen(&gr, "c")).unwrap();
    assert_eq!(g.to_word_string(), "a d");
    assert_eq!(g.section_at(1).to_word_string(), "d[1]");
    assert_eq!(Element::identity(2).to_string(), "1");
    assert_eq!(Element::kappa(p("(1 2)", 3)).to_string(), "kappa(1 2)");
}

#[test]
fn word_parse_and_display() {
    assert_eq!(w("021").0, [0, 2, 1]);
    assert_eq!(w("10.3.0").0, [10, 3, 0]);
    assert!(w("").is_empty());
    assert_eq!(w("10.3.0").to_string(), "10.3.0");
    assert_eq!(w("021").to_string(), "021");
    assert!(Word::parse("0x").is_err());
    for r in 0..27 {
        assert_eq!(Word::unrank(r, 3, 3).rank(3), r);
    }
}

#[test]
fn action_is_a_bijection_on_levels() {
    for data in [grigorchuk(), gupta_sidki(), pervova()] {
        let g = group(data);
        let m = g.degree();
        let gens = Element::generators(&g);
        let mut x = Element::identity(m);
        for (_, h) in gens.iter().chain(gens.iter().rev()) {
            x = x.mul(h).unwrap();
        }
        for n in 0..=5 {
            let size = m.pow(n as u32);
            let images: BTreeSet<Word> = (0..size).map(|r| x.apply(&Word::unrank(r, n, m)).unwrap()).collect();
            assert_eq!(images.len(), size);
        }
    }
}

fn fixtures() -> Vec<Arc<PolyspinalGroup>> {
    alloc::vec![group(grigorchuk()), group(gupta_sidki()), group(pervova())]
}

fn random_element(g: &Arc<PolyspinalGroup>, picks: &[usize]) -> Element {
    let gens = Element::generators(g);
    let mut steps: Vec<Element> = gens.iter().flat_map(|(_, e)| [e.clone(), e.inverse()]).collect();
    steps.push(Element::kappa(Perm::standard_cycle(g.degree()).inverse()));
    picks.iter().fold(Element::identity(g.degree()), |acc, &i| {
        acc.mul(&steps[i % steps.len()]).unwrap()
    })
}

fn arb_case() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>, Vec<u8>)> {
    (
        0..3usize,
        proptest::collection::vec(0..64usize, 0..10),
        proptest::collection::vec(0..64usize, 0..10),
        proptest::collection::vec(0..3u8, 0..=5),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn section_cocycle((fx, a, b, u) in arb_case()) {
        let g = &fixtures()[fx];
        let m = g.degree() as u8;
        let u = Word(u.into_iter().map(|x| x % m).collect());
        let f = random_element(g, &a);
        let h = random_element(g, &b);
        let lhs = f.mul(&h).unwrap().section(&u).unwrap();
        let rhs = f.section(&h.apply(&u).unwrap()).unwrap().mul(&h.section(&u).unwrap()).unwrap();
        prop_assert!(equal_to_depth(&lhs, &rhs, 4).unwrap());
    }

    #[test]
    fn inverse_section((fx, a, _b, u) in arb_case()) {
        let g = &fixtures()[fx];
        let m = g.degree() as u8;
        let u = Word(u.into_iter().map(|x| x % m).collect());
        let f = random_element(g, &a);
        let finv = f.inverse();
        let lhs = finv.section(&u).unwrap();
        let rhs = f.section(&finv.apply(&u).unwrap()).unwrap().inverse();
        prop_assert!(equal_to_depth(&lhs, &rhs, 4).unwrap());
    }

    #[test]
    fn label_is_root_of_section((fx, a, _b, u) in arb_case()) {
        let g = &fixtures()[fx];
        let m = g.degree() as u8;
        let u = Word(u.into_iter().map(|x| x % m).collect());
        let f = random_element(g, &a);
        prop_assert_eq!(f.label(&u).unwrap(), f.section(&u).unwrap().root_label());
        // f(ux) = f(u) f|^u(x)
        for x in 0..m {
            let mut ux = u.clone();
            ux.0.push(x);
            let mut expected = f.apply(&u).unwrap();
            expected.0.push(f.label(&u).unwrap().apply(x as usize) as u8);
            prop_assert_eq!(f.apply(&ux).unwrap(), expected);
        }
    }

    #[test]
    fn sections_compose((fx, a, _b, u) in arb_case(), split in 0..6usize) {
        let g = &fixtures()[fx];
        let m = g.degree() as u8;
        let u: Vec<u8> = u.into_iter().map(|x| x % m).collect();
        let k = split.min(u.len());
        let f = random_element(g, &a);
        let direct = f.section(&Word(u.clone())).unwrap();
        let stepwise = f.section(&Word(u[..k].to_vec())).unwrap().section(&Word(u[k..].to_vec())).unwrap();
        prop_assert!(equal_to_depth(&direct, &stepwise, 4).unwrap());
    }
}
