//! Finite directed groups represented by their images under one
//! preperiod-plus-period window of the defining sequence.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::symops::Perm;

use super::DirectedDatum;

/// Index of an element inside its [`DirectedGroup`]; `0` is the identity.
pub type ElemId = u32;

/// A finite directed group `D` enumerated by closure of its generator
/// tuples. Each element is stored as the flattened tuple
/// `(ω_1(d), …, ω_L(d))` with `L = preperiod + period`, every `ω_k(d)` being
/// `m − 1` permutations indexed by `X∖{path}` in ascending order.
#[derive(Clone, Debug)]
pub struct DirectedGroup {
    m: usize,
    path: usize,
    names: Vec<String>,
    pre: usize,
    per: usize,
    elements: Vec<Vec<u8>>,
    index: BTreeMap<Vec<u8>, ElemId>,
    generators: Vec<ElemId>,
    // shortest word over generators and inverses, as (generator, ±1)
    words: Vec<Vec<(usize, i8)>>,
}

impl DirectedGroup {
    pub fn enumerate(m: usize, datum: &DirectedDatum, cap: usize) -> Result<DirectedGroup> {
        let pre = datum.preperiod.len();
        let per = datum.period.len();
        let len = pre + per;
        let slot = (m - 1) * m;
        let gen_tuples: Vec<Vec<u8>> = (0..datum.generators.len())
            .map(|g| {
                let mut t = Vec::with_capacity(len * slot);
                for map in datum.preperiod.iter().chain(&datum.period) {
                    for p in &map.0[g] {
                        t.extend(p.images().map(|y| y as u8));
                    }
                }
                t
            })
            .collect();
        let identity: Vec<u8> = (0..len * (m - 1)).flat_map(|_| (0..m).map(|x| x as u8)).collect();

        let mut group = DirectedGroup {
            m,
            path: datum.path,
            names: datum.generators.clone(),
            pre,
            per,
            elements: alloc::vec![identity.clone()],
            index: BTreeMap::new(),
            generators: Vec::new(),
            words: alloc::vec![Vec::new()],
        };
        group.index.insert(identity, 0);

        // steps: each generator and its inverse
        let mut steps: Vec<(Vec<u8>, usize, i8)> = Vec::new();
        for (g, t) in gen_tuples.iter().enumerate() {
            steps.push((t.clone(), g, 1));
            steps.push((group.invert_tuple(t), g, -1));
        }
        let mut queue = VecDeque::from([0 as ElemId]);
        while let Some(id) = queue.pop_front() {
            for (step, g, e) in &steps {
                let t = group.compose_tuples(&group.elements[id as usize], step);
                if !group.index.contains_key(&t) {
                    if group.elements.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "directed group order",
                            cap,
                        });
                    }
                    let new_id = group.elements.len() as ElemId;
                    let mut w = group.words[id as usize].clone();
                    w.push((*g, *e));
                    group.index.insert(t.clone(), new_id);
                    group.elements.push(t);
                    group.words.push(w);
                    queue.push_back(new_id);
                }
            }
        }
        group.generators = gen_tuples.iter().map(|t| group.index[t]).collect();
        Ok(group)
    }

    fn compose_tuples(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let m = self.m;
        let mut out = Vec::with_capacity(a.len());
        for (pa, pb) in a.chunks_exact(m).zip(b.chunks_exact(m)) {
            out.extend(pb.iter().map(|&y| pa[y as usize]));
        }
        out
    }

    fn invert_tuple(&self, a: &[u8]) -> Vec<u8> {
        let m = self.m;
        let mut out = alloc::vec![0u8; a.len()];
        for (src, dst) in a.chunks_exact(m).zip(out.chunks_exact_mut(m)) {
            for (x, &y) in src.iter().enumerate() {
                dst[y as usize] = x as u8;
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn path(&self) -> usize {
        self.path
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn preperiod_len(&self) -> usize {
        self.pre
    }

    pub fn period_len(&self) -> usize {
        self.per
    }

    /// `preperiod + period`, the number of stored coordinates.
    pub fn window(&self) -> usize {
        self.pre + self.per
    }

    pub fn generator_ids(&self) -> &[ElemId] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<ElemId> {
        self.names.iter().position(|n| n == name).map(|i| self.generators[i])
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let t = self.compose_tuples(&self.elements[a as usize], &self.elements[b as usize]);
        self.index[&t]
    }

    pub fn inv(&self, a: ElemId) -> ElemId {
        if a == 0 {
            return 0;
        }
        self.index[&self.invert_tuple(&self.elements[a as usize])]
    }

    pub fn pow(&self, a: ElemId, k: i64) -> ElemId {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        0..self.elements.len() as ElemId
    }

    /// Position in the stored window of `ω_k`, for `k ≥ 1`.
    pub fn coordinate(&self, k: usize) -> usize {
        debug_assert!(k >= 1);
        let j = k - 1;
        if j < self.pre {
            j
        } else {
            self.pre + (j - self.pre) % self.per
        }
    }

    /// Smallest shift defining the same sequence `σ^shift ω`.
    pub fn canonical_shift(&self, shift: usize) -> usize {
        if shift < self.pre {
            shift
        } else {
            self.pre + (shift - self.pre) % self.per
        }
    }

    fn slot(&self, y: usize) -> usize {
        debug_assert_ne!(y, self.path);
        if y < self.path {
            y
        } else {
            y - 1
        }
    }

    /// `π_y ω_k(d)` for `k ≥ 1`, `y ≠ path`.
    pub fn label(&self, d: ElemId, k: usize, y: usize) -> Perm {
        let images = self.label_images(d, k, y);
        Perm::from_images(&images.iter().map(|&b| b as usize).collect::<Vec<_>>())
            .expect("stored tuples are permutations")
    }

    pub(crate) fn label_images(&self, d: ElemId, k: usize, y: usize) -> &[u8] {
        let m = self.m;
        let off = (self.coordinate(k) * (m - 1) + self.slot(y)) * m;
        &self.elements[d as usize][off..off + m]
    }

    /// Image of letter `z` under `π_y ω_k(d)`.
    #[inline]
    pub fn label_apply(&self, d: ElemId, k: usize, y: usize, z: usize) -> usize {
        self.label_images(d, k, y)[z] as usize
    }

    /// True iff every label of `d_{σ^shift ω}` is trivial.
    pub fn is_trivial_from(&self, d: ElemId, shift: usize) -> bool {
        self.first_nontrivial_label(d, shift).is_none()
    }

    /// Least `k ≥ 1` and letter `y` with `π_y ω_{shift + k}(d)` nontrivial.
    pub fn first_nontrivial_label(&self, d: ElemId, shift: usize) -> Option<(usize, usize)> {
        if d == 0 {
            return None;
        }
        (1..=self.window() + shift).find_map(|k| {
            (0..self.m)
                .filter(|&y| y != self.path)
                .find(|&y| {
                    self.label_images(d, shift + k, y)
                        .iter()
                        .enumerate()
                        .any(|(x, &z)| x != z as usize)
                })
                .map(|y| (k, y))
        })
    }

    /// True iff projecting onto coordinates `[start, window)` is injective.
    pub fn tail_injective(&self, start: usize) -> bool {
        let m = self.m;
        let lo = start * (m - 1) * m;
        let id_tail = &self.elements[0][lo..];
        self.elements.iter().skip(1).all(|t| &t[lo..] != id_tail)
    }

    /// Shortest generator word, e.g. `b c^-1`; `1` for the identity.
    pub fn word(&self, d: ElemId) -> String {
        let w = &self.words[d as usize];
        if w.is_empty() {
            return String::from("1");
        }
        let mut s = String::new();
        // compress runs of the same generator
        let mut i = 0;
        while i < w.len() {
            let g = w[i].0;
            let mut count: i64 = 0;
            while i < w.len() && w[i].0 == g {
                count += w[i].1 as i64;
                i += 1;
            }
            if count == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push(' ');
            }
            s.push_str(&self.names[g]);
            if count != 1 {
                s.push_str(&alloc::format!("^{count}"));
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    /// Labels `π_y ω_k(d)` for every generator id.
    pub fn generator_labels(&self, k: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        for &g in &self.generators {
            for y in (0..self.m).filter(|&y| y != self.path) {
                out.push(self.label(g, k, y));
            }
        }
        out
    }
}
