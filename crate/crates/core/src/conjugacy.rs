//! Conjugacy in `Aut T`: a decision procedure for multi-GGS pairs that
//! returns a constant-portrait conjugator, and finite searches refuting
//! necessary conditions for spinal and multi-EGS pairs.
//!
//! Throughout, `f` conjugates `B` onto `A` when `f⁻¹ B f = A`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::spinal::{
    generator_names, relative_exponent_matrix, rooted_is_am, DirectedGroup, ElemId, MultiGgsData, PolyspinalData,
    PolyspinalGroup, DEFAULT_DIRECTED_CAP,
};
use crate::symops::{self, unit_perm, Perm, UnitResidue};
use crate::tree::{first_difference, Element, Portrait, Word};
use crate::zmod::{self, ZmodMatrix};

/// Largest modulus the multi-GGS decider accepts.
pub const MAX_DECIDER_DEGREE: u32 = 64;
/// Largest alphabet the spinal refuter searches over.
pub const MAX_REFUTER_DEGREE: usize = 6;
/// Largest directed group the spinal refuter enumerates.
pub const MAX_REFUTER_GROUP: usize = 81;
/// Bound on generator-image tuples tried when enumerating isomorphisms.
pub const MAX_ISOMORPHISM_CANDIDATES: usize = 1 << 20;

/// A verified-or-verifiable conjugator for a multi-GGS pair `(A, B)`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub unit: UnitResidue,
    /// `M` with `E_A = P_u · E_B · M`, where `P_u` relabels rows by `x ↦ u·x`.
    pub iota: ZmodMatrix,
    /// Column `j` gives the exponents of `A`'s directed generators in
    /// `κ⁻¹ b_j κ` for the `j`-th directed generator `b_j` of `B`; equals
    /// `u⁻¹ · M⁻¹`.
    pub generator_map: ZmodMatrix,
    /// `κ(unit_perm(u))`.
    pub kappa: Element,
    pub verified_depth: Option<usize>,
}

/// A vector in one of `colspan(E_A)` and `colspan(P_u · E_B)` but not the
/// other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanCertificate {
    pub unit: UnitResidue,
    pub vector: Vec<u32>,
    /// True when `vector` lies in `colspan(E_A)`.
    pub in_first: bool,
}

/// One row of a "solutions found" table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionRecord {
    /// Level `n` for the spinal refuter, directed-group index for the
    /// multi-EGS refuter.
    pub index: usize,
    pub solutions: usize,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Conjugate(Witness),
    NotConjugate(Vec<SpanCertificate>),
    Refuted { index: usize, detail: String },
    Consistent(Vec<SolutionRecord>),
    Inconclusive(String),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Conjugate(_) => "Conjugate",
            Verdict::NotConjugate(_) => "NotConjugate",
            Verdict::Refuted { .. } => "Refuted",
            Verdict::Consistent(_) => "Consistent",
            Verdict::Inconclusive(_) => "Inconclusive",
        }
    }
}

/// `κ(unit_perm(u))`.
pub fn build_kappa_witness(u: UnitResidue) -> Element {
    Element::kappa(unit_perm(u))
}

/// The first generator `g` of `source` (with the vertex) at which
/// `f⁻¹ g f` and its prescribed image differ on the first `depth` levels.
pub fn witness_mismatch(
    source: &Arc<PolyspinalGroup>,
    f: &Element,
    images: &[(String, Element)],
    depth: usize,
) -> Result<Option<(String, Word)>> {
    if f.degree() != source.degree() {
        return Err(Error::DegreeMismatch {
            expected: source.degree(),
            found: f.degree(),
        });
    }
    for (name, g) in Element::generators(source) {
        let image = images
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, e)| e)
            .ok_or_else(|| Error::ForeignGenerator(alloc::format!("no image given for {name}")))?;
        if let Some(v) = first_difference(&g.conjugate_by(f)?, image, depth)? {
            return Ok(Some((name, v)));
        }
    }
    Ok(None)
}

/// Checks `f⁻¹ g f = images[g]` to `depth` levels for every generator `g`
/// of `source`.
pub fn verify_witness(
    source: &Arc<PolyspinalGroup>,
    f: &Element,
    images: &[(String, Element)],
    depth: usize,
) -> Result<bool> {
    Ok(witness_mismatch(source, f, images, depth)?.is_none())
}

/// Images in `target` of the generators of the multi-GGS group `source`
/// under conjugation by `κ(unit_perm(u))`: `a ↦ a^{u⁻¹}` and
/// `b_j ↦ ∏_i b_i^{map[i][j]}`.
pub fn multi_ggs_generator_images(
    target: &Arc<PolyspinalGroup>,
    source: &MultiGgsData,
    u: UnitResidue,
    map: &ZmodMatrix,
) -> Result<Vec<(String, Element)>> {
    let target_names = generator_names(map.nrows());
    let a = Element::generator(target, "a")?;
    let mut out = alloc::vec![(String::from("a"), a.pow(u.inverse().value() as i64))];
    for (j, name) in generator_names(source.rank()).into_iter().enumerate() {
        let mut image = Element::identity(target.degree());
        for (i, t) in target_names.iter().enumerate() {
            image = image.mul(&Element::generator(target, t)?.pow(map.get(i, j) as i64))?;
        }
        out.push((name, image));
    }
    Ok(out)
}

fn same_modulus(a: &MultiGgsData, b: &MultiGgsData) -> Result<()> {
    if a.modulus() != b.modulus() {
        return Err(Error::DegreeMismatch {
            expected: a.modulus() as usize,
            found: b.modulus() as usize,
        });
    }
    Ok(())
}

fn relabelled(e: &ZmodMatrix, u: UnitResidue) -> Result<ZmodMatrix> {
    zmod::permute_coords(e, &unit_perm(u))
}

fn column_spans_equal(a: &ZmodMatrix, b: &ZmodMatrix) -> Result<bool> {
    Ok(a.ncols() == b.ncols() && zmod::span_equal(&a.transpose(), &b.transpose())?)
}

/// Units `u` with `colspan(E_A) = colspan(P_u · E_B)`, increasing.
pub fn valid_units(a: &MultiGgsData, b: &MultiGgsData) -> Result<Vec<UnitResidue>> {
    same_modulus(a, b)?;
    let mut out = Vec::new();
    for u in UnitResidue::all(a.modulus()) {
        if column_spans_equal(a.matrix(), &relabelled(b.matrix(), u)?)? {
            out.push(u);
        }
    }
    Ok(out)
}

fn span_certificate(u: UnitResidue, ea: &ZmodMatrix, pb: &ZmodMatrix) -> Result<SpanCertificate> {
    let m = ea.modulus();
    let (ra, rb) = (ea.transpose().row_vecs(), pb.transpose().row_vecs());
    let outside = |v: &Vec<u32>, rows: &[Vec<u32>]| zmod::express_in_row_span(m, rows, v).is_none();
    if let Some(v) = ra.iter().find(|v| outside(v, &rb)) {
        return Ok(SpanCertificate {
            unit: u,
            vector: v.clone(),
            in_first: true,
        });
    }
    if let Some(v) = rb.iter().find(|v| outside(v, &ra)) {
        return Ok(SpanCertificate {
            unit: u,
            vector: v.clone(),
            in_first: false,
        });
    }
    Err(Error::InvalidData(alloc::format!(
        "defining matrices with equal column spans but {} and {} columns",
        ea.ncols(),
        pb.ncols()
    )))
}

/// The witness for a unit `u` in [`valid_units`], verified to
/// `verify_depth` levels when given. The inner error names the generator
/// and vertex where verification failed.
pub fn build_witness(
    a: &MultiGgsData,
    b: &MultiGgsData,
    u: UnitResidue,
    verify_depth: Option<usize>,
) -> Result<core::result::Result<Witness, (String, Word)>> {
    let pb = relabelled(b.matrix(), u)?;
    let iota = zmod::solve_right(a.matrix(), &pb)?
        .ok_or_else(|| Error::InvalidData(alloc::format!("u = {} does not relate the spans", u.value())))?;
    let scaled = pb.scale(u.inverse().value());
    let generator_map = zmod::solve_right(&scaled, a.matrix())?
        .ok_or_else(|| Error::InvalidData(alloc::format!("u = {} does not relate the spans", u.value())))?;
    let kappa = build_kappa_witness(u);
    let mut witness = Witness {
        unit: u,
        iota,
        generator_map,
        kappa,
        verified_depth: None,
    };
    if let Some(depth) = verify_depth {
        let ga = PolyspinalGroup::new(a.to_polyspinal(), DEFAULT_DIRECTED_CAP)?;
        let gb = PolyspinalGroup::new(b.to_polyspinal(), DEFAULT_DIRECTED_CAP)?;
        let images = multi_ggs_generator_images(&ga, b, u, &witness.generator_map)?;
        if let Some(bad) = witness_mismatch(&gb, &witness.kappa, &images, depth)? {
            return Ok(Err(bad));
        }
        witness.verified_depth = Some(depth);
    }
    Ok(Ok(witness))
}

/// Decides whether two multi-GGS groups are conjugate in `Aut T`.
///
/// The reported witness uses the least unit `u` with `E_A = P_u · E_B`
/// when one exists (a pure relabelling, `M = 1`), and the least valid unit
/// otherwise.
pub fn decide_multi_ggs(a: &MultiGgsData, b: &MultiGgsData, verify_depth: Option<usize>) -> Result<Verdict> {
    same_modulus(a, b)?;
    let m = a.modulus();
    if m > MAX_DECIDER_DEGREE {
        return Ok(Verdict::Inconclusive(alloc::format!(
            "modulus {m} exceeds {MAX_DECIDER_DEGREE}"
        )));
    }
    let mut certificates = Vec::new();
    let mut valid = Vec::new();
    for u in UnitResidue::all(m) {
        let pb = relabelled(b.matrix(), u)?;
        if column_spans_equal(a.matrix(), &pb)? {
            valid.push((u, pb == *a.matrix()));
        } else {
            certificates.push(span_certificate(u, a.matrix(), &pb)?);
        }
    }
    let Some(&(u, _)) = valid.iter().find(|(_, exact)| *exact).or(valid.first()) else {
        return Ok(Verdict::NotConjugate(certificates));
    };
    Ok(match build_witness(a, b, u, verify_depth)? {
        Ok(w) => Verdict::Conjugate(w),
        Err((name, v)) => Verdict::Inconclusive(alloc::format!(
            "witness for u = {} fails on {name} at vertex {v}",
            u.value()
        )),
    })
}

/// Classes of the valid `(m − 1) × s` defining matrices under conjugacy.
#[derive(Clone, Debug)]
pub struct CensusClass {
    /// The first member is the class representative; every later member
    /// carries the witness from [`decide_multi_ggs`]`(representative, member)`.
    pub members: Vec<(MultiGgsData, Option<Witness>)>,
}

/// All valid multi-GGS defining matrices for `(m, s)`, grouped into
/// conjugacy classes. Matrices are enumerated with entries read row by row,
/// first entry most significant.
pub fn census(m: u32, s: usize, verify_depth: Option<usize>, cap: usize) -> Result<Vec<CensusClass>> {
    if m < 2 || s == 0 {
        return Err(Error::InvalidData(alloc::format!(
            "census needs m ≥ 2 and s ≥ 1, got m = {m}, s = {s}"
        )));
    }
    let cells = (m as usize - 1) * s;
    let total = (0..cells)
        .try_fold(1usize, |acc, _| acc.checked_mul(m as usize))
        .filter(|&t| t <= cap)
        .ok_or(Error::CapExceeded {
            what: "number of defining matrices",
            cap,
        })?;
    let mut classes: Vec<CensusClass> = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let mut entries = alloc::vec![0i64; cells];
        for e in entries.iter_mut().rev() {
            *e = (rest % m as usize) as i64;
            rest /= m as usize;
        }
        let rows: Vec<&[i64]> = entries.chunks(s).collect();
        let Ok(data) = MultiGgsData::from_rows(m, &rows) else {
            continue;
        };
        let mut placed = false;
        for class in &mut classes {
            match decide_multi_ggs(&class.members[0].0, &data, verify_depth)? {
                Verdict::Conjugate(w) => {
                    class.members.push((data.clone(), Some(w)));
                    placed = true;
                    break;
                }
                Verdict::NotConjugate(_) => {}
                other => {
                    return Err(Error::InvalidData(alloc::format!(
                        "census decision was {}",
                        other.name()
                    )));
                }
            }
        }
        if !placed {
            classes.push(CensusClass {
                members: alloc::vec![(data, None)],
            });
        }
    }
    Ok(classes)
}

/// An isomorphism of directed groups, given by the images of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedIsomorphism(pub Vec<ElemId>);

fn element_order(d: &DirectedGroup, x: ElemId) -> usize {
    let mut y = x;
    let mut k = 1;
    while y != 0 {
        y = d.mul(y, x);
        k += 1;
    }
    k
}

/// Every isomorphism `D → D̃`, enumerated by generator images.
pub fn directed_isomorphisms(d: &DirectedGroup, target: &DirectedGroup) -> Result<Vec<DirectedIsomorphism>> {
    if d.order() != target.order() {
        return Ok(Vec::new());
    }
    let gens = d.generator_ids();
    let candidates: Vec<Vec<ElemId>> = gens
        .iter()
        .map(|&g| {
            let k = element_order(d, g);
            target.elements().filter(|&e| element_order(target, e) == k).collect()
        })
        .collect();
    let count = candidates
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len()))
        .filter(|&c| c <= MAX_ISOMORPHISM_CANDIDATES)
        .ok_or(Error::CapExceeded {
            what: "isomorphism candidates",
            cap: MAX_ISOMORPHISM_CANDIDATES,
        })?;
    let mut out = Vec::new();
    for code in 0..count {
        let mut rest = code;
        let images: Vec<ElemId> = candidates
            .iter()
            .map(|c| {
                let e = c[rest % c.len()];
                rest /= c.len();
                e
            })
            .collect();
        if extends_to_isomorphism(d, target, &images) {
            out.push(DirectedIsomorphism(images));
        }
    }
    Ok(out)
}

fn extends_to_isomorphism(d: &DirectedGroup, target: &DirectedGroup, images: &[ElemId]) -> bool {
    let mut map: Vec<Option<ElemId>> = alloc::vec![None; d.order()];
    map[0] = Some(0);
    let mut queue = alloc::vec![0 as ElemId];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = map[x as usize].unwrap();
        for (&g, &e) in d.generator_ids().iter().zip(images) {
            let y = d.mul(x, g);
            let fy = target.mul(fx, e);
            match map[y as usize] {
                None => {
                    map[y as usize] = Some(fy);
                    queue.push(y);
                }
                Some(z) if z != fy => return false,
                Some(_) => {}
            }
        }
    }
    let image: BTreeSet<ElemId> = map.iter().flatten().copied().collect();
    image.len() == d.order()
}

fn point_stabiliser_of_zero(m: usize) -> Vec<Perm> {
    let mut gens = Vec::new();
    if m > 2 {
        let cycle: Vec<usize> = (1..m).collect();
        gens.push(Perm::from_cycles(m, &[&cycle]).expect("valid cycle"));
        gens.push(Perm::from_cycles(m, &[&[1, 2]]).expect("valid transposition"));
    }
    symops::generated_group(&gens, m)
}

fn spinal_directed(data: &PolyspinalData) -> Result<DirectedGroup> {
    data.check_syntax()?;
    if data.directed.len() != 1 {
        return Err(Error::Unsupported(alloc::format!(
            "spinal refuter needs one directed group, found {}",
            data.directed.len()
        )));
    }
    if data.directed[0].path != 0 {
        return Err(Error::Unsupported("spinal refuter needs the directed path 0̄".into()));
    }
    DirectedGroup::enumerate(data.m, &data.directed[0], MAX_REFUTER_GROUP)
}

/// Searches, for each level `n` in `window` and each isomorphism
/// `ι: D → D̃` from the directed group of `a` to that of `b`, for
/// `h, α' ∈ St(0)` and `r_x ∈ σⁿR̃` with `(σⁿR̃)^h = σⁿR` such that for every generator `d` and `x ≠ 0`
///
/// `π_x ω_n(d) = (π_{α'(x)} ω̃_n(ι(d)))^{r_x h}`.
///
/// A level past both preperiods with no solution for any `ι` recurs once
/// per period, so conjugacy is refuted. Otherwise the outcome is
/// `Consistent`, which never asserts conjugacy.
pub fn refute_spinal_necessary(
    a: &PolyspinalData,
    b: &PolyspinalData,
    window: RangeInclusive<usize>,
) -> Result<Verdict> {
    if a.m != b.m {
        return Err(Error::DegreeMismatch {
            expected: a.m,
            found: b.m,
        });
    }
    if *window.start() == 0 || window.is_empty() {
        return Err(Error::InvalidData(alloc::format!(
            "level window {}..{} must be nonempty and start at 1 or later",
            window.start(),
            window.end()
        )));
    }
    let m = a.m;
    if m > MAX_REFUTER_DEGREE {
        return Ok(Verdict::Inconclusive(alloc::format!(
            "alphabet size {m} exceeds {MAX_REFUTER_DEGREE}"
        )));
    }
    let (da, db) = match (spinal_directed(a), spinal_directed(b)) {
        (Ok(da), Ok(db)) => (da, db),
        (Err(Error::CapExceeded { .. }), _) | (_, Err(Error::CapExceeded { .. })) => {
            return Ok(Verdict::Inconclusive(alloc::format!(
                "directed group larger than {MAX_REFUTER_GROUP}"
            )));
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    let periodic_from = da.preperiod_len().max(db.preperiod_len()) + 1;
    if da.order() != db.order() {
        return Ok(Verdict::Refuted {
            index: (*window.start()).max(periodic_from),
            detail: alloc::format!(
                "directed groups of orders {} and {} are not isomorphic",
                da.order(),
                db.order()
            ),
        });
    }
    let isos = match directed_isomorphisms(&da, &db) {
        Ok(isos) => isos,
        Err(Error::CapExceeded { .. }) => {
            return Ok(Verdict::Inconclusive("too many candidate isomorphisms".into()));
        }
        Err(e) => return Err(e),
    };
    let stab = point_stabiliser_of_zero(m);
    let mut records = Vec::new();
    for n in window {
        let ra: BTreeSet<Perm> = symops::generated_group(&a.rooted_companion(n), m).into_iter().collect();
        let rb = symops::generated_group(&b.rooted_companion(n), m);
        let hs: Vec<&Perm> = stab
            .iter()
            .filter(|h| {
                let image: BTreeSet<Perm> = rb.iter().map(|r| r.conjugate_by(h).expect("same degree")).collect();
                image == ra
            })
            .collect();
        let mut solving = 0;
        let mut example = None;
        for iso in &isos {
            if let Some(alpha) = spinal_solution(&da, &db, iso, n, &hs, &stab, &rb) {
                solving += 1;
                example.get_or_insert(alpha);
            }
        }
        if solving == 0 && n >= periodic_from {
            return Ok(Verdict::Refuted {
                index: n,
                detail: alloc::format!("no factorisation at level {n} for any of {} isomorphisms", isos.len()),
            });
        }
        let detail = match example {
            Some(alpha) => alloc::format!("alpha' = {alpha}"),
            None => String::from("no solution inside the preperiod"),
        };
        records.push(SolutionRecord {
            index: n,
            solutions: solving,
            detail,
        });
    }
    Ok(Verdict::Consistent(records))
}

/// An `α'` admitting a solution at level `n` for `iso`, if any.
fn spinal_solution(
    da: &DirectedGroup,
    db: &DirectedGroup,
    iso: &DirectedIsomorphism,
    n: usize,
    hs: &[&Perm],
    stab: &[Perm],
    rb: &[Perm],
) -> Option<Perm> {
    let m = da.degree();
    let gens = da.generator_ids();
    for h in hs {
        for alpha in stab {
            let solved = (1..m).all(|x| {
                rb.iter().any(|r| {
                    let rh = r.compose_unchecked(h);
                    gens.iter().zip(&iso.0).all(|(&g, &e)| {
                        let target = db.label(e, n, alpha.apply(x));
                        da.label(g, n, x) == target.conjugate_by(&rh).expect("same degree")
                    })
                })
            });
            if solved {
                return Some(alpha.clone());
            }
        }
    }
    None
}

fn multi_egs_matrices(data: &PolyspinalData) -> Result<Vec<ZmodMatrix>> {
    data.check_syntax()?;
    if !rooted_is_am(data) {
        return Err(Error::NotMultiEgs("rooted group is not A_m".into()));
    }
    data.directed
        .iter()
        .enumerate()
        .map(|(i, d)| {
            relative_exponent_matrix(data.m, d).ok_or_else(|| {
                Error::NotMultiEgs(alloc::format!("directed group {i} is not constant with labels in A_m"))
            })
        })
        .collect()
}

fn column_span_size(e: &ZmodMatrix) -> BigUint {
    zmod::howell(&e.transpose()).size()
}

/// For every directed group `D^(i)` of `a`, searches a directed group
/// `D̃^(j)` of `b` of the same rank and a unit `u` with
/// `colspan(E^(i)) = colspan(P_u · Ẽ^(j))`, rows taken relative to the
/// respective path letters. Refuted if some `i` has no such `j`.
pub fn refute_multi_egs_necessary(a: &PolyspinalData, b: &PolyspinalData) -> Result<Verdict> {
    if a.m != b.m {
        return Err(Error::DegreeMismatch {
            expected: a.m,
            found: b.m,
        });
    }
    let (ea, eb) = (multi_egs_matrices(a)?, multi_egs_matrices(b)?);
    let mut records = Vec::new();
    for (i, e) in ea.iter().enumerate() {
        let size = column_span_size(e);
        let same_rank: Vec<usize> = (0..eb.len()).filter(|&j| column_span_size(&eb[j]) == size).collect();
        if same_rank.is_empty() {
            return Ok(Verdict::Refuted {
                index: i,
                detail: alloc::format!(
                    "rank of directed group {i} is {}; no directed group of the other data has that rank",
                    rank_of(e)
                ),
            });
        }
        let mut matches = Vec::new();
        for &j in &same_rank {
            for u in UnitResidue::all(a.m as u32) {
                let pb = relabelled(&eb[j], u)?;
                if zmod::span_equal(&e.transpose(), &pb.transpose())? {
                    matches.push((j, u.value()));
                }
            }
        }
        if matches.is_empty() {
            return Ok(Verdict::Refuted {
                index: i,
                detail: alloc::format!("directed group {i} matches no directed group of equal rank under any unit"),
            });
        }
        let detail = matches
            .iter()
            .map(|(j, u)| alloc::format!("theta({i}) = {j} with u = {u}"))
            .collect::<Vec<_>>()
            .join(", ");
        records.push(SolutionRecord {
            index: i,
            solutions: matches.len(),
            detail,
        });
    }
    Ok(Verdict::Consistent(records))
}

fn rank_of(e: &ZmodMatrix) -> usize {
    let m = BigUint::from(e.modulus());
    let size = column_span_size(e);
    let mut power = BigUint::from(1u32);
    let mut k = 0;
    while power < size {
        power *= &m;
        k += 1;
    }
    k
}

/// All labels of `f` at level `n` lie in one coset `σⁿR · p`, where `σⁿR`
/// is the rooted companion group of `data` at level `n`.
pub fn coset_congruence_check(f: &Portrait, data: &PolyspinalData, n: usize) -> Result<bool> {
    if f.depth() <= n {
        return Err(Error::Dimension(alloc::format!(
            "portrait of depth {} has no labels at level {n}",
            f.depth()
        )));
    }
    if f.degree() != data.m {
        return Err(Error::DegreeMismatch {
            expected: data.m,
            found: f.degree(),
        });
    }
    let companion: BTreeSet<Perm> = symops::generated_group(&data.rooted_companion(n), data.m)
        .into_iter()
        .collect();
    let labels = f.level(n);
    let first_inv = labels[0].inverse();
    Ok(labels
        .iter()
        .all(|l| companion.contains(&l.compose_unchecked(&first_inv))))
}
