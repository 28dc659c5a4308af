//! Built-in groups.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::Result;
use crate::symops::Perm;
use crate::zmod::ZmodMatrix;

use super::{DirectedDatum, GenMap, MultiGgsData, PolyspinalData};

/// The first Grigorchuk group on the binary tree: `a = (0 1)`,
/// `b = (a, c)`, `c = (a, d)`, `d = (1, b)`, directed along `1̄`.
pub fn grigorchuk() -> PolyspinalData {
    let a = Perm::standard_cycle(2);
    let e = Perm::identity(2);
    let map = |b: &Perm, c: &Perm, d: &Perm| {
        GenMap(alloc::vec![
            alloc::vec![b.clone()],
            alloc::vec![c.clone()],
            alloc::vec![d.clone()]
        ])
    };
    PolyspinalData {
        m: 2,
        rooted: alloc::vec![a.clone()],
        directed: alloc::vec![DirectedDatum {
            path: 1,
            generators: ["b", "c", "d"].iter().map(|s| s.to_string()).collect(),
            preperiod: Vec::new(),
            period: alloc::vec![map(&a, &a, &e), map(&a, &e, &a), map(&e, &a, &a)],
        }],
    }
}

/// The Gupta–Sidki 3-group `⟨a, b⟩` with `b = (b, a, a²)`.
pub fn gupta_sidki() -> PolyspinalData {
    ggs(&[1, 2]).expect("(1, 2) is a valid defining vector")
}

/// Pervova's extended Gupta–Sidki group `⟨a, b, c⟩` on the ternary tree with
/// `b = (b, a, a²)` along `0̄` and `c = (a², c, a)` along `1̄`.
pub fn pervova() -> PolyspinalData {
    let a = |k: i64| Perm::cycle_power(3, k);
    PolyspinalData {
        m: 3,
        rooted: alloc::vec![a(1)],
        directed: alloc::vec![
            DirectedDatum {
                path: 0,
                generators: alloc::vec!["b".to_string()],
                preperiod: Vec::new(),
                period: alloc::vec![GenMap(alloc::vec![alloc::vec![a(1), a(2)]])],
            },
            DirectedDatum {
                path: 1,
                generators: alloc::vec!["c".to_string()],
                preperiod: Vec::new(),
                period: alloc::vec![GenMap(alloc::vec![alloc::vec![a(2), a(1)]])],
            },
        ],
    }
}

/// GGS group on the `(len + 1)`-adic tree with defining vector `e`.
pub fn ggs(e: &[i64]) -> Result<PolyspinalData> {
    let rows: Vec<[i64; 1]> = e.iter().map(|&v| [v]).collect();
    multi_ggs((e.len() + 1) as u32, &rows)
}

/// Multi-GGS group from an `(m − 1) × s` defining matrix given by rows.
pub fn multi_ggs<R: AsRef<[i64]>>(m: u32, rows: &[R]) -> Result<PolyspinalData> {
    let data = MultiGgsData::new(ZmodMatrix::from_rows(m, rows)?)?;
    Ok(data.to_polyspinal())
}
