//! Brute-force checkers that share no code with the subspace route to
//! barcodes.

use crate::persmod::{Barcode, GridInterval, PersistenceBasis, PersistenceModule};

/// Barcode by inclusion-exclusion on ranks of composites.
pub fn naive_barcode(m: &PersistenceModule) -> Barcode {
    let n = m.n();
    let rk = |s: usize, t: usize| -> i64 {
        if s == 0 || t > n {
            0
        } else {
            m.composite(s, t).expect("in range").rank() as i64
        }
    };
    let mut b = Barcode::new();
    for a in 1..=n {
        for e in a..=n {
            let mult = rk(a, e) - rk(a - 1, e) - rk(a, e + 1) + rk(a - 1, e + 1);
            assert!(mult >= 0, "negative multiplicity at [{a},{e}]");
            b.add(GridInterval::new(a, e), mult as usize);
        }
    }
    b
}

/// The four generator families counted against `Im±` and `Ker±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorPredicate {
    /// Born at or before `c`.
    BornBy(usize),
    /// Born strictly before `c`.
    BornBefore(usize),
    /// Dies at or before `c`.
    DiesBy(usize),
    /// Dies strictly before `c`.
    DiesBefore(usize),
}

impl GeneratorPredicate {
    pub fn holds(&self, i: &GridInterval) -> bool {
        match *self {
            GeneratorPredicate::BornBy(c) => i.start <= c,
            GeneratorPredicate::BornBefore(c) => i.start < c,
            GeneratorPredicate::DiesBy(c) => i.end <= c,
            GeneratorPredicate::DiesBefore(c) => i.end < c,
        }
    }
}

/// Generators alive at `t` that satisfy `pred`.
pub fn count_generators(basis: &PersistenceBasis, pred: GeneratorPredicate, t: usize) -> usize {
    basis
        .generators
        .iter()
        .filter(|g| g.interval.contains(t) && pred.holds(&g.interval))
        .count()
}
