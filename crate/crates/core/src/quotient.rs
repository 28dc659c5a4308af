//! Finite quotients `G/St_G(n)` as permutation groups on the `m^n` words of
//! length `n`, ordered by rank (first letter most significant).

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::spinal::PolyspinalGroup;
use crate::tree::{Element, Word};

/// Default bound on `m^n` for level computations.
pub const DEFAULT_POINT_CAP: usize = 4096;

/// The action of a tree automorphism on level `n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LevelPerm {
    m: usize,
    n: usize,
    images: Vec<u32>,
}

fn level_size(m: usize, n: usize, cap: usize) -> Result<usize> {
    (0..n)
        .try_fold(1usize, |acc, _| acc.checked_mul(m))
        .filter(|&s| s <= cap)
        .ok_or(Error::CapExceeded {
            what: "level size",
            cap,
        })
}

impl LevelPerm {
    pub fn identity(m: usize, n: usize) -> LevelPerm {
        let size = m.pow(n as u32);
        LevelPerm {
            m,
            n,
            images: (0..size as u32).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LevelPerm) -> LevelPerm {
        debug_assert_eq!((self.m, self.n), (other.m, other.n));
        LevelPerm {
            m: self.m,
            n: self.n,
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> LevelPerm {
        let mut images = alloc::vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u32;
        }
        LevelPerm {
            m: self.m,
            n: self.n,
            images,
        }
    }

    /// Induced action on level `k ≤ n`.
    pub fn restrict(&self, k: usize) -> LevelPerm {
        assert!(k <= self.n);
        let step = self.m.pow((self.n - k) as u32);
        let size = self.m.pow(k as u32);
        LevelPerm {
            m: self.m,
            n: k,
            images: (0..size).map(|p| self.images[p * step] / step as u32).collect(),
        }
    }

    /// Whether the induced maps on every level `k < n` are well defined.
    pub fn is_tree_compatible(&self) -> bool {
        let m = self.m;
        (1..=self.n).all(|k| {
            let step = m.pow((self.n - k) as u32);
            (0..self.images.len())
                .all(|p| self.images[p] as usize / step == self.images[(p / step) * step] as usize / step)
        })
    }
}

/// `images[rank(v)] = rank(g(v))` for every word `v` of length `n`.
pub fn level_permutation(g: &Element, n: usize) -> Result<LevelPerm> {
    level_permutation_capped(g, n, DEFAULT_POINT_CAP)
}

pub fn level_permutation_capped(g: &Element, n: usize, cap: usize) -> Result<LevelPerm> {
    let m = g.degree();
    let size = level_size(m, n, cap)?;
    let portrait = g.portrait(n)?;
    let labels = portrait.labels();
    let mut images = Vec::with_capacity(size);
    for p in 0..size {
        let u = Word::unrank(p, n, m);
        // walk down, reading the label at each prefix
        let (mut offset, mut width, mut rank, mut image) = (0usize, 1usize, 0usize, 0usize);
        for &x in &u.0 {
            let label = &labels[offset + rank];
            image = image * m + label.apply(x as usize);
            rank = rank * m + x as usize;
            offset += width;
            width *= m;
        }
        images.push(image as u32);
    }
    Ok(LevelPerm { m, n, images })
}

/// Level-`n` actions of the rooted and directed generators.
pub fn level_generators(group: &Arc<PolyspinalGroup>, n: usize, cap: usize) -> Result<Vec<LevelPerm>> {
    level_size(group.degree(), n, cap)?;
    Element::generators(group)
        .iter()
        .map(|(_, g)| level_permutation_capped(g, n, cap))
        .collect()
}

struct ChainLevel {
    point: usize,
    gens: Vec<usize>,
    orbit: Vec<usize>,
    // transversal[β] maps the base point to β
    transversal: Vec<Option<LevelPerm>>,
    // checked[k]: generators (a prefix of `gens`) whose Schreier generators
    // at orbit[k] are known to sift
    checked: Vec<usize>,
}

/// Stabiliser chain with base points chosen in rank order.
///
/// Orbits only ever grow and existing transversal entries never change, so
/// a Schreier generator that sifted once keeps sifting and each
/// (orbit point, generator) pair is examined once.
struct Chain {
    points: usize,
    strong: Vec<LevelPerm>,
    levels: Vec<ChainLevel>,
}

impl Chain {
    /// Extends the orbit of level `i` after generators were appended
    /// (those at positions `new_from..` of its list).
    fn extend_orbit(&mut self, i: usize, new_from: usize) {
        let level = &mut self.levels[i];
        if level.transversal.is_empty() {
            let (m, n) = (self.strong[0].m, self.strong[0].n);
            level.transversal = alloc::vec![None; self.points];
            level.transversal[level.point] = Some(LevelPerm::identity(m, n));
            level.orbit = alloc::vec![level.point];
            level.checked = alloc::vec![0];
        }
        let old_len = level.orbit.len();
        let mut head = 0;
        while head < level.orbit.len() {
            let x = level.orbit[head];
            let first = if head < old_len { new_from } else { 0 };
            head += 1;
            for &s in &level.gens[first..] {
                let g = &self.strong[s];
                let y = g.apply(x);
                if level.transversal[y].is_none() {
                    let u = g.compose(level.transversal[x].as_ref().unwrap());
                    level.transversal[y] = Some(u);
                    level.orbit.push(y);
                    level.checked.push(0);
                }
            }
        }
    }

    /// Sifts `h` from level `from`; returns the residue and the level at
    /// which sifting stopped (`levels.len()` if it went through).
    fn sift(&self, mut h: LevelPerm, from: usize) -> (LevelPerm, usize) {
        for i in from..self.levels.len() {
            let beta = h.apply(self.levels[i].point);
            match &self.levels[i].transversal[beta] {
                None => return (h, i),
                Some(u) => h = u.inverse().compose(&h),
            }
        }
        (h, self.levels.len())
    }

    fn push_level(&mut self, g: &LevelPerm) {
        let point = (0..self.points)
            .find(|&x| g.apply(x) != x)
            .expect("nontrivial permutation moves a point");
        self.levels.push(ChainLevel {
            point,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: Vec::new(),
            checked: Vec::new(),
        });
    }

    fn add_generator(&mut self, l: usize, idx: usize) {
        let from = self.levels[l].gens.len();
        self.levels[l].gens.push(idx);
        self.extend_orbit(l, from);
    }

    fn build(gens: &[LevelPerm], points: usize) -> Chain {
        let mut chain = Chain {
            points,
            strong: Vec::new(),
            levels: Vec::new(),
        };
        for g in gens.iter().filter(|g| !g.is_identity()) {
            if chain.levels.iter().all(|l| g.apply(l.point) == l.point) {
                chain.push_level(g);
            }
            chain.strong.push(g.clone());
        }
        if chain.levels.is_empty() {
            return chain;
        }
        for s in 0..chain.strong.len() {
            for l in 0..chain.levels.len() {
                chain.add_generator(l, s);
                if chain.strong[s].apply(chain.levels[l].point) != chain.levels[l].point {
                    break;
                }
            }
        }
        for l in 0..chain.levels.len() {
            chain.extend_orbit(l, 0);
        }

        let mut i = chain.levels.len() - 1;
        loop {
            let mut restart = None;
            'scan: for oi in 0..chain.levels[i].orbit.len() {
                while chain.levels[i].checked[oi] < chain.levels[i].gens.len() {
                    let level = &chain.levels[i];
                    let beta = level.orbit[oi];
                    let g = &chain.strong[level.gens[level.checked[oi]]];
                    let u_beta = level.transversal[beta].as_ref().unwrap();
                    let u_image = level.transversal[g.apply(beta)].as_ref().unwrap();
                    let g_u = g.compose(u_beta);
                    if &g_u != u_image {
                        let (h, j) = chain.sift(u_image.inverse().compose(&g_u), i + 1);
                        if j < chain.levels.len() || !h.is_identity() {
                            if j == chain.levels.len() {
                                chain.push_level(&h);
                            }
                            let idx = chain.strong.len();
                            chain.strong.push(h);
                            for l in i + 1..=j {
                                chain.add_generator(l, idx);
                            }
                            restart = Some(j);
                            break 'scan;
                        }
                    }
                    chain.levels[i].checked[oi] += 1;
                }
            }
            match restart {
                Some(j) => i = j,
                None if i == 0 => break,
                None => i -= 1,
            }
        }
        chain
    }

    fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    fn contains(&self, g: &LevelPerm) -> bool {
        let (h, j) = self.sift(g.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }
}

/// Order of the permutation group generated by `gens` (all on the same
/// level), via a stabiliser chain.
pub fn permutation_group_order(gens: &[LevelPerm]) -> BigUint {
    match gens.first() {
        None => BigUint::from(1u32),
        Some(g) => Chain::build(gens, g.images.len()).order(),
    }
}

/// Membership of `g` in `⟨gens⟩`.
pub fn permutation_group_contains(gens: &[LevelPerm], g: &LevelPerm) -> bool {
    if gens.iter().all(LevelPerm::is_identity) {
        return g.is_identity();
    }
    Chain::build(gens, g.images.len()).contains(g)
}

/// `|G / St_G(n)|`.
pub fn group_order_level(group: &Arc<PolyspinalGroup>, n: usize) -> Result<BigUint> {
    group_order_level_capped(group, n, DEFAULT_POINT_CAP)
}

pub fn group_order_level_capped(group: &Arc<PolyspinalGroup>, n: usize, cap: usize) -> Result<BigUint> {
    Ok(permutation_group_order(&level_generators(group, n, cap)?))
}

/// Orbit sizes of `⟨gens⟩` on `points` points, listed by least element.
pub fn orbit_sizes(gens: &[LevelPerm], points: usize) -> Vec<usize> {
    let mut seen = alloc::vec![false; points];
    let mut sizes = Vec::new();
    for start in 0..points {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = alloc::vec![start];
        let mut size = 0;
        while let Some(x) = stack.pop() {
            size += 1;
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        sizes.push(size);
    }
    sizes
}

/// Orbit sizes on level `n`, listed by least element of each orbit.
pub fn orbits_level(group: &Arc<PolyspinalGroup>, n: usize) -> Result<Vec<usize>> {
    let gens = level_generators(group, n, DEFAULT_POINT_CAP)?;
    Ok(orbit_sizes(&gens, group.degree().pow(n as u32)))
}

/// Transitivity on every level `k ≤ n`.
pub fn spherically_transitive(group: &Arc<PolyspinalGroup>, n: usize) -> Result<bool> {
    let m = group.degree();
    let gens = level_generators(group, n, DEFAULT_POINT_CAP)?;
    for k in 0..=n {
        let restricted: Vec<LevelPerm> = gens.iter().map(|g| g.restrict(k)).collect();
        if orbit_sizes(&restricted, m.pow(k as u32)).len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}
