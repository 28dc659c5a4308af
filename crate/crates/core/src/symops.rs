//! Permutations of the alphabet `X = [0, m)`, the cyclic group `A_m` and
//! the units of `Z/m`.
//!
//! Permutations are stored in one-line notation: `images[x]` is the image of
//! `x`. Composition follows the left action used throughout the crate,
//! `(p ∘ q)(x) = p(q(x))`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest alphabet size a [`Perm`] can carry.
pub const MAX_DEGREE: usize = 255;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(m: usize) -> Perm {
        assert!(m <= MAX_DEGREE, "alphabet too large");
        Perm {
            images: (0..m).map(|x| x as u8).collect(),
        }
    }

    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let m = images.len();
        if m > MAX_DEGREE {
            return Err(Error::NotAPermutation(alloc::format!(
                "degree {m} exceeds {MAX_DEGREE}"
            )));
        }
        let mut seen = alloc::vec![false; m];
        for &y in images {
            if y >= m || seen[y] {
                return Err(Error::NotAPermutation(alloc::format!("{images:?}")));
            }
            seen[y] = true;
        }
        Ok(Perm {
            images: images.iter().map(|&y| y as u8).collect(),
        })
    }

    /// Builds a permutation of degree `m` from disjoint cycles.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut touched = alloc::vec![false; m];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= m || touched[x] {
                    return Err(Error::NotAPermutation(alloc::format!(
                        "bad cycle {cycle:?} for degree {m}"
                    )));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Perm::from_images(&images)
    }

    /// The standard cycle `x ↦ x + 1 mod m` generating `A_m`.
    pub fn standard_cycle(m: usize) -> Perm {
        assert!(m <= MAX_DEGREE, "alphabet too large");
        Perm {
            images: (0..m).map(|x| ((x + 1) % m) as u8).collect(),
        }
    }

    /// `c^k` for the standard cycle `c`.
    pub fn cycle_power(m: usize, k: i64) -> Perm {
        let k = k.rem_euclid(m as i64) as usize;
        Perm {
            images: (0..m).map(|x| ((x + k) % m) as u8).collect(),
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&y| y as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&y| self.images[y as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = alloc::vec![0u8; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u8;
        }
        Perm { images }
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Perm::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose_unchecked(&base);
        }
        acc
    }

    /// `h⁻¹ ∘ self ∘ h`, the right conjugate `self^h`.
    pub fn conjugate_by(&self, h: &Perm) -> Result<Perm> {
        Ok(h.inverse().compose(self)?.compose_unchecked(h))
    }

    /// If `self` is a power of the standard cycle, its exponent in `[0, m)`.
    pub fn cycle_exponent(&self) -> Option<usize> {
        let m = self.degree();
        if m == 0 {
            return None;
        }
        let k = self.apply(0);
        (0..m).all(|x| self.apply(x) == (x + k) % m).then_some(k)
    }

    /// Disjoint cycles, each starting at its least point, ordered by that
    /// point; fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.degree();
        let mut seen = alloc::vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                s.push_str(&x.to_string());
            }
            s.push(')');
        }
        s
    }

    pub fn to_one_line_string(&self) -> String {
        let mut s = String::from("[");
        for (i, y) in self.images().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&y.to_string());
        }
        s.push(']');
        s
    }

    /// Parses either one-line notation `[1,2,0]` or cycle notation
    /// `(0 1 2)(3 4)`; `m` fixes the degree for cycle notation and is
    /// checked against one-line input.
    pub fn parse(s: &str, m: usize) -> Result<Perm> {
        let t = s.trim();
        if let Some(body) = t.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(alloc::format!("unterminated one-line perm {t:?}")))?;
            let images = parse_numbers(body, ',')?;
            let p = Perm::from_images(&images)?;
            if p.degree() != m {
                return Err(Error::DegreeMismatch {
                    expected: m,
                    found: p.degree(),
                });
            }
            return Ok(p);
        }
        if !t.starts_with('(') {
            return Err(Error::Parse(alloc::format!("not a permutation: {t:?}")));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(alloc::format!("expected '(' in {t:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(alloc::format!("unterminated cycle in {t:?}")))?;
            let body = open[..close].trim();
            if !body.is_empty() {
                let sep = if body.contains(',') { ',' } else { ' ' };
                cycles.push(parse_numbers(body, sep)?);
            }
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(m, &refs)
    }
}

fn parse_numbers(body: &str, sep: char) -> Result<Vec<usize>> {
    body.split(sep)
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(alloc::format!("bad integer {s:?}")))
        })
        .collect()
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

/// True iff the group generated by `gens` has a single orbit on `[0, m)`.
pub fn is_transitive(gens: &[Perm], m: usize) -> Result<bool> {
    for g in gens {
        if g.degree() != m {
            return Err(Error::DegreeMismatch {
                expected: m,
                found: g.degree(),
            });
        }
    }
    Ok(orbit(gens, m, 0).len() == m)
}

/// Orbit of `x` under the group generated by `gens`, in discovery order.
pub fn orbit(gens: &[Perm], m: usize, x: usize) -> Vec<usize> {
    if m == 0 {
        return Vec::new();
    }
    let mut seen = alloc::vec![false; m];
    let mut out = alloc::vec![x];
    seen[x] = true;
    let mut i = 0;
    while i < out.len() {
        let y = out[i];
        for g in gens {
            let z = g.apply(y);
            if !seen[z] {
                seen[z] = true;
                out.push(z);
            }
        }
        i += 1;
    }
    out
}

/// All elements of the group generated by `gens`, identity first.
pub fn generated_group(gens: &[Perm], m: usize) -> Vec<Perm> {
    let id = Perm::identity(m);
    let mut seen = alloc::collections::BTreeSet::new();
    seen.insert(id.clone());
    let mut out = alloc::vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let h = out[i].compose_unchecked(g);
            if seen.insert(h.clone()) {
                out.push(h);
            }
        }
        i += 1;
    }
    out
}

/// A residue `u` with `gcd(u, m) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitResidue {
    m: u32,
    u: u32,
}

impl UnitResidue {
    pub fn new(m: u32, u: u32) -> Result<UnitResidue> {
        if m < 2 {
            return Err(Error::InvalidData("modulus must be at least 2".into()));
        }
        if (u % m).gcd(&m) != 1 {
            return Err(Error::NotAUnit { value: u, modulus: m });
        }
        Ok(UnitResidue { m, u: u % m })
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn value(&self) -> u32 {
        self.u
    }

    pub fn inverse(&self) -> UnitResidue {
        let u = (1..self.m)
            .find(|&v| (v as u64 * self.u as u64) % self.m as u64 == 1)
            .unwrap_or(0);
        UnitResidue { m: self.m, u }
    }

    /// All units modulo `m` in increasing order.
    pub fn all(m: u32) -> Vec<UnitResidue> {
        (1..m)
            .filter(|u| u.gcd(&m) == 1)
            .map(|u| UnitResidue { m, u })
            .collect()
    }
}

/// The permutation `x ↦ u·x mod m`.
pub fn unit_perm(u: UnitResidue) -> Perm {
    affine_perm(u.modulus() as usize, u, 0, 0)
}

/// The affine permutation `z ↦ u·(z − from) + to mod m`; it normalises `A_m`
/// and sends `from` to `to`.
pub fn affine_perm(m: usize, u: UnitResidue, from: usize, to: usize) -> Perm {
    let u = u.value() as usize;
    Perm {
        images: (0..m).map(|z| ((u * ((z + m - from) % m) + to) % m) as u8).collect(),
    }
}

/// `Norm_Sym(X)(A_m) ∩ St(x)`, ordered by the unit it scales with.
pub fn normalizer_am_fixing(m: usize, x: usize) -> Vec<Perm> {
    UnitResidue::all(m as u32)
        .into_iter()
        .map(|u| affine_perm(m, u, x, x))
        .collect()
}

pub fn euler_phi(m: u32) -> u32 {
    (1..=m).filter(|u| u.gcd(&m) == 1).count() as u32
}
