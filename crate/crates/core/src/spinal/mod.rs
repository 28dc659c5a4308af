//! Defining data of polyspinal groups: rooted generators plus directed
//! groups along distinct constant paths, each given by an eventually
//! periodic sequence of homomorphisms `ω_n: D → Sym(X)^{X∖{x}}`.

mod directed;
mod fixtures;

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

pub use directed::{DirectedGroup, ElemId};
pub use fixtures::{ggs, grigorchuk, gupta_sidki, multi_ggs, pervova};

use crate::error::{Error, Result};
use crate::symops::{self, Perm};
use crate::zmod::{self, ZmodMatrix};

/// Default bound on the order of each directed group.
pub const DEFAULT_DIRECTED_CAP: usize = 10_000;

/// Value of one `ω_n` on every generator: `maps[g]` lists `m − 1`
/// permutations ordered by ascending position in `X∖{path}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMap(pub Vec<Vec<Perm>>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedDatum {
    pub path: usize,
    pub generators: Vec<String>,
    pub preperiod: Vec<GenMap>,
    pub period: Vec<GenMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyspinalData {
    pub m: usize,
    pub rooted: Vec<Perm>,
    pub directed: Vec<DirectedDatum>,
}

impl PolyspinalData {
    /// Structural checks: degrees, tuple shapes, distinct path letters.
    pub fn check_syntax(&self) -> Result<()> {
        let m = self.m;
        if !(2..=symops::MAX_DEGREE).contains(&m) {
            return Err(Error::InvalidData(alloc::format!("alphabet size {m} out of range")));
        }
        for p in &self.rooted {
            if p.degree() != m {
                return Err(Error::DegreeMismatch {
                    expected: m,
                    found: p.degree(),
                });
            }
        }
        if self.directed.len() > m {
            return Err(Error::InvalidData(alloc::format!(
                "{} directed groups but only {m} constant paths",
                self.directed.len()
            )));
        }
        let mut paths = alloc::collections::BTreeSet::new();
        let mut names = alloc::collections::BTreeSet::new();
        for (i, d) in self.directed.iter().enumerate() {
            if d.path >= m {
                return Err(Error::LetterOutOfRange { letter: d.path, m });
            }
            if !paths.insert(d.path) {
                return Err(Error::InvalidData(alloc::format!("path letter {} repeated", d.path)));
            }
            if d.period.is_empty() {
                return Err(Error::InvalidData(alloc::format!(
                    "directed datum {i} has an empty period"
                )));
            }
            for n in &d.generators {
                if n.is_empty() || !names.insert(n.clone()) {
                    return Err(Error::InvalidData(alloc::format!(
                        "generator name {n:?} empty or repeated"
                    )));
                }
            }
            for map in d.preperiod.iter().chain(&d.period) {
                if map.0.len() != d.generators.len() {
                    return Err(Error::InvalidData(alloc::format!(
                        "directed datum {i}: map has {} entries for {} generators",
                        map.0.len(),
                        d.generators.len()
                    )));
                }
                for tuple in &map.0 {
                    if tuple.len() != m - 1 {
                        return Err(Error::InvalidData(alloc::format!(
                            "directed datum {i}: tuple of length {} (expected {})",
                            tuple.len(),
                            m - 1
                        )));
                    }
                    for p in tuple {
                        if p.degree() != m {
                            return Err(Error::DegreeMismatch {
                                expected: m,
                                found: p.degree(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.directed.len()
    }

    /// Generators of `σ^n R`: for `n = 0` the rooted generators, otherwise
    /// all non-trivial label entries of `ω_n` on directed generators.
    pub fn rooted_companion(&self, n: usize) -> Vec<Perm> {
        if n == 0 {
            return self.rooted.clone();
        }
        let mut out: Vec<Perm> = Vec::new();
        for d in &self.directed {
            let map = d.map_at(n);
            for tuple in &map.0 {
                out.extend(tuple.iter().filter(|p| !p.is_identity()).cloned());
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl DirectedDatum {
    /// `ω_n` for `n ≥ 1`.
    pub fn map_at(&self, n: usize) -> &GenMap {
        let j = n - 1;
        if j < self.preperiod.len() {
            &self.preperiod[j]
        } else {
            &self.period[(j - self.preperiod.len()) % self.period.len()]
        }
    }

    /// Letters of `X∖{path}` in the order tuples are indexed.
    pub fn positions(&self, m: usize) -> impl Iterator<Item = usize> + '_ {
        (0..m).filter(move |&y| y != self.path)
    }

    pub fn is_constant(&self) -> bool {
        let first = &self.period[0];
        self.preperiod.iter().chain(&self.period).all(|g| g == first)
    }
}

/// Defining data together with its enumerated directed groups; the context
/// every tree element built from this data refers to.
#[derive(Debug)]
pub struct PolyspinalGroup {
    data: PolyspinalData,
    directed: Vec<DirectedGroup>,
}

impl PolyspinalGroup {
    /// Enumerates every directed group (bounded by `cap`). Does not check the
    /// validity conditions; see [`validate`].
    pub fn new(data: PolyspinalData, cap: usize) -> Result<Arc<PolyspinalGroup>> {
        data.check_syntax()?;
        let directed = data
            .directed
            .iter()
            .map(|d| DirectedGroup::enumerate(data.m, d, cap))
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(PolyspinalGroup { data, directed }))
    }

    pub fn data(&self) -> &PolyspinalData {
        &self.data
    }

    pub fn degree(&self) -> usize {
        self.data.m
    }

    pub fn directed(&self) -> &[DirectedGroup] {
        &self.directed
    }

    pub fn datum(&self, i: usize) -> &DirectedGroup {
        &self.directed[i]
    }

    /// Longest `preperiod + period` over all directed groups.
    pub fn window(&self) -> usize {
        self.directed.iter().map(|d| d.window()).max().unwrap_or(1)
    }

    /// Finds a named directed generator: `(datum index, element id)`.
    pub fn find_generator(&self, name: &str) -> Option<(usize, ElemId)> {
        self.directed
            .iter()
            .enumerate()
            .find_map(|(i, d)| d.generator(name).map(|e| (i, e)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid(Vec<String>),
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumReport {
    pub path: usize,
    pub order: Option<usize>,
    /// Whether every tail projection of `D` is injective.
    pub faithful_tails: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub validity: Validity,
    pub rank: usize,
    pub data: Vec<DatumReport>,
    /// Coordinates `n` (1-based, one preperiod plus period) at which the
    /// label companions fail to act transitively.
    pub intransitive_levels: Vec<usize>,
    pub rooted_transitive: bool,
    pub warnings: Vec<String>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.validity == Validity::Valid
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.validity {
            Validity::Valid => f.write_str("valid")?,
            Validity::Invalid(reasons) => write!(f, "invalid ({})", reasons.join("; "))?,
            Validity::Inconclusive(reason) => write!(f, "inconclusive ({reason})")?,
        }
        write!(f, ", r={}", self.rank)?;
        for (i, d) in self.data.iter().enumerate() {
            match d.order {
                Some(n) => write!(f, ", |D{i}|={n}")?,
                None => write!(f, ", |D{i}|=?")?,
            }
        }
        Ok(())
    }
}

/// Checks the two defining conditions: (1) at every level the label
/// companions act transitively on `X`; (2) every tail of every defining
/// sequence is faithful on its directed group.
pub fn validate(data: &PolyspinalData, cap: usize) -> Result<ValidityReport> {
    data.check_syntax()?;
    let m = data.m;
    let mut reasons = Vec::new();
    let mut warnings = Vec::new();
    let rooted_transitive = symops::is_transitive(&data.rooted, m)?;
    if !rooted_transitive {
        warnings.push("rooted generators alone are intransitive on X".to_string());
    }
    if data.directed.is_empty() {
        reasons.push("no directed group (r = 0)".to_string());
    }

    let mut reports = Vec::new();
    let mut inconclusive = None;
    for (i, d) in data.directed.iter().enumerate() {
        match DirectedGroup::enumerate(m, d, cap) {
            Ok(group) => {
                let faithful = (0..=group.preperiod_len()).all(|s| group.tail_injective(s));
                if !faithful {
                    reasons.push(alloc::format!(
                        "condition (2) fails for directed group {i}: some tail of ω has a kernel"
                    ));
                }
                reports.push(DatumReport {
                    path: d.path,
                    order: Some(group.order()),
                    faithful_tails: Some(faithful),
                });
            }
            Err(Error::CapExceeded { .. }) => {
                inconclusive = Some(alloc::format!("directed group {i} exceeds cap {cap}"));
                reports.push(DatumReport {
                    path: d.path,
                    order: None,
                    faithful_tails: None,
                });
            }
            Err(e) => return Err(e),
        }
    }

    let window = data.directed.iter().fold(1usize, |acc, d| acc.lcm(&d.period.len()));
    let max_pre = data.directed.iter().map(|d| d.preperiod.len()).max().unwrap_or(0);
    let mut intransitive = Vec::new();
    if !data.directed.is_empty() {
        for n in 1..=max_pre + window {
            let labels = data.rooted_companion(n);
            if !symops::is_transitive(&labels, m)? {
                intransitive.push(n);
            }
        }
    }
    if !intransitive.is_empty() {
        reasons.push(alloc::format!(
            "condition (1) fails: label companions intransitive at levels {intransitive:?}"
        ));
    }

    let validity = if !reasons.is_empty() {
        Validity::Invalid(reasons)
    } else if let Some(r) = inconclusive {
        Validity::Inconclusive(r)
    } else {
        Validity::Valid
    };
    Ok(ValidityReport {
        validity,
        rank: data.directed.len(),
        data: reports,
        intransitive_levels: intransitive,
        rooted_transitive,
        warnings,
    })
}

/// The `n`-th shifted companion: every `ω` advanced by `n` and the rooted
/// part replaced by `σ^n R`.
pub fn shift(data: &PolyspinalData, n: usize) -> PolyspinalData {
    if n == 0 {
        return data.clone();
    }
    let directed = data
        .directed
        .iter()
        .map(|d| {
            let pre = d.preperiod.len();
            let per = d.period.len();
            if n <= pre {
                DirectedDatum {
                    preperiod: d.preperiod[n..].to_vec(),
                    ..d.clone()
                }
            } else {
                let r = (n - pre) % per;
                let mut period = d.period[r..].to_vec();
                period.extend_from_slice(&d.period[..r]);
                DirectedDatum {
                    preperiod: Vec::new(),
                    period,
                    ..d.clone()
                }
            }
        })
        .collect();
    PolyspinalData {
        m: data.m,
        rooted: data.rooted_companion(n),
        directed,
    }
}

/// A multi-GGS group as an `(m − 1) × s` matrix over `Z/m`: column `j`
/// holds the exponents of the standard cycle labelling directed generator
/// `j` at positions `1, …, m − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGgsData {
    m: u32,
    e: ZmodMatrix,
}

impl MultiGgsData {
    pub fn new(e: ZmodMatrix) -> Result<MultiGgsData> {
        let m = e.modulus();
        if e.nrows() + 1 != m as usize {
            return Err(Error::InvalidData(alloc::format!(
                "defining matrix has {} rows, expected m - 1 = {}",
                e.nrows(),
                m - 1
            )));
        }
        if e.ncols() == 0 {
            return Err(Error::InvalidData("defining matrix has no columns".into()));
        }
        if m as usize > symops::MAX_DEGREE {
            return Err(Error::InvalidData(alloc::format!("modulus {m} too large")));
        }
        let g = e.row_vecs().iter().flatten().fold(m, |acc, &v| acc.gcd(&v));
        if g != 1 {
            return Err(Error::InvalidData(alloc::format!(
                "entries generate a proper subgroup of Z/{m} (gcd {g}); companions are intransitive"
            )));
        }
        if !has_trivial_kernel(&e) {
            return Err(Error::InvalidData(
                "columns are dependent; directed group would not be faithful".into(),
            ));
        }
        Ok(MultiGgsData { m, e })
    }

    pub fn from_rows<R: AsRef<[i64]>>(m: u32, rows: &[R]) -> Result<MultiGgsData> {
        MultiGgsData::new(ZmodMatrix::from_rows(m, rows)?)
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn matrix(&self) -> &ZmodMatrix {
        &self.e
    }

    /// Number of directed generators `s`.
    pub fn rank(&self) -> usize {
        self.e.ncols()
    }

    /// Polyspinal form: rooted `A_m`, one directed group along `0̄` with
    /// generators `b` (or `b1, …, bs`) and constant `ω`.
    pub fn to_polyspinal(&self) -> PolyspinalData {
        matrix_to_polyspinal(&self.e)
    }
}

pub(crate) fn generator_names(s: usize) -> Vec<String> {
    if s == 1 {
        alloc::vec!["b".to_string()]
    } else {
        (1..=s).map(|j| alloc::format!("b{j}")).collect()
    }
}

/// Builds multi-GGS style data from any `(m − 1) × s` exponent matrix,
/// without checking the defining invariants.
pub fn matrix_to_polyspinal(e: &ZmodMatrix) -> PolyspinalData {
    let m = e.modulus() as usize;
    let s = e.ncols();
    let map = GenMap(
        (0..s)
            .map(|j| (0..m - 1).map(|i| Perm::cycle_power(m, e.get(i, j) as i64)).collect())
            .collect(),
    );
    PolyspinalData {
        m,
        rooted: alloc::vec![Perm::standard_cycle(m)],
        directed: alloc::vec![DirectedDatum {
            path: 0,
            generators: generator_names(s),
            preperiod: Vec::new(),
            period: alloc::vec![map],
        }],
    }
}

/// The map `(Z/m)^s → (Z/m)^{rows}` given by the columns is injective.
pub(crate) fn has_trivial_kernel(e: &ZmodMatrix) -> bool {
    let m = num_bigint::BigUint::from(e.modulus());
    zmod::howell(&e.transpose()).size() == m.pow(e.ncols() as u32)
}

/// Per-path defining matrix of a directed group with constant `ω` whose
/// labels are all powers of the standard cycle. Rows follow `X∖{path}`.
pub(crate) fn constant_exponent_matrix(m: usize, d: &DirectedDatum) -> Option<ZmodMatrix> {
    if !d.is_constant() {
        return None;
    }
    let map = &d.period[0];
    let mut e = ZmodMatrix::zeros(m as u32, m - 1, map.0.len());
    for (j, tuple) in map.0.iter().enumerate() {
        for (i, p) in tuple.iter().enumerate() {
            e.set(i, j, p.cycle_exponent()? as u32);
        }
    }
    Some(e)
}

/// [`constant_exponent_matrix`] with rows moved from position `z` to
/// `z − path`, so that row `k − 1` belongs to the letter at distance `k`
/// after the path letter. Relabelling `z ↦ z − x` commutes with the
/// standard cycle.
pub(crate) fn relative_exponent_matrix(m: usize, d: &DirectedDatum) -> Option<ZmodMatrix> {
    let raw = constant_exponent_matrix(m, d)?;
    let x = d.path;
    let mut e = ZmodMatrix::zeros(m as u32, m - 1, raw.ncols());
    for (i, z) in d.positions(m).enumerate() {
        let target = (z + m - x) % m;
        for j in 0..raw.ncols() {
            e.set(target - 1, j, raw.get(i, j));
        }
    }
    Some(e)
}

/// The rooted generators generate exactly `A_m`.
pub(crate) fn rooted_is_am(data: &PolyspinalData) -> bool {
    let group = symops::generated_group(&data.rooted, data.m);
    group.len() == data.m && group.iter().all(|p| p.cycle_exponent().is_some())
}

/// Recognises multi-GGS data and returns its defining matrix. A constant
/// path other than `0̄` is moved to `0̄`.
pub fn as_multi_ggs(data: &PolyspinalData) -> Result<MultiGgsData> {
    data.check_syntax()?;
    if data.directed.len() != 1 {
        return Err(Error::NotMultiGgs(alloc::format!(
            "r = {} (a multi-GGS group has one directed group)",
            data.directed.len()
        )));
    }
    if !rooted_is_am(data) {
        return Err(Error::NotMultiGgs("rooted group is not A_m".into()));
    }
    let d = &data.directed[0];
    if !d.is_constant() {
        return Err(Error::NotMultiGgs("defining sequence is not constant".into()));
    }
    let e = relative_exponent_matrix(data.m, d)
        .ok_or_else(|| Error::NotMultiGgs("some label is not a power of the standard cycle".into()))?;
    MultiGgsData::new(e).map_err(|err| Error::NotMultiGgs(err.to_string()))
}
