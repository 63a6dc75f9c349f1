//! The subspaces `Y±`, the modules `X_IJ`, and the matchings `𝒢_f` and
//! `ℳ_f` they induce between the barcodes of the source and target of a
//! morphism.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::FieldMatrix;
use crate::persmod::{Barcode, GridInterval, Morphism, PersistenceModule};
use crate::subspace::{self, Subspace};

/// `f(V+_It) ∩ U+_Jt`, zero off `I ∩ J`.
pub fn y_plus(f: &Morphism, i: &GridInterval, j: &GridInterval, t: usize) -> Result<Subspace> {
    let u = f.target();
    if !(i.contains(t) && j.contains(t)) {
        check_point(u, t)?;
        return Ok(Subspace::zero(f.field(), u.dim(t)));
    }
    let fv = subspace::apply(f.comp(t), &f.source().v_plus(i, t)?)?;
    subspace::intersect(&fv, &u.v_plus(j, t)?)
}

/// `f(V-_It) + U-_Jt`, zero off `I ∩ J`.
pub fn y_minus(f: &Morphism, i: &GridInterval, j: &GridInterval, t: usize) -> Result<Subspace> {
    let u = f.target();
    if !(i.contains(t) && j.contains(t)) {
        check_point(u, t)?;
        return Ok(Subspace::zero(f.field(), u.dim(t)));
    }
    let fv = subspace::apply(f.comp(t), &f.source().v_minus(i, t)?)?;
    subspace::sum(&fv, &u.v_minus(j, t)?)
}

fn check_point(m: &PersistenceModule, t: usize) -> Result<()> {
    if 1 <= t && t <= m.n() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: t, n: m.n() })
    }
}

/// Numerator and denominator of `X_IJ(t)`.
fn x_pair(f: &Morphism, i: &GridInterval, j: &GridInterval, t: usize) -> Result<(Subspace, Subspace)> {
    let plus = y_plus(f, i, j, t)?;
    let minus = subspace::intersect(&y_minus(f, i, j, t)?, &plus)?;
    Ok((plus, minus))
}

/// `X_IJ[f]` on the whole grid, zero off the support `I ∩ J`.
///
/// The structure maps across the support are usually injective, but not
/// always: see [`XModule::first_non_injective`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XModule {
    pub support: Option<GridInterval>,
    pub dims: Vec<usize>,
    /// `maps[k]` goes from grid point `k+1` to `k+2`.
    pub maps: Vec<FieldMatrix>,
    field: PrimeField,
}

impl XModule {
    pub fn dim(&self, t: usize) -> usize {
        self.dims[t - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// First `t` in the support whose map to `t+1` has a kernel.
    pub fn first_non_injective(&self) -> Option<usize> {
        let s = self.support?;
        (s.start..s.end).find(|&t| self.maps[t - 1].rank() < self.dim(t))
    }

    /// `dim X_IJ` at the right end of the support. Equals the number of bars
    /// exactly when [`Self::first_non_injective`] is `None`.
    pub fn dim_at_right_end(&self) -> usize {
        self.support.map_or(0, |s| self.dim(s.end))
    }

    pub fn to_module(&self) -> PersistenceModule {
        PersistenceModule::new(self.field, self.dims.clone(), self.maps.clone()).expect("maps compose")
    }

    pub fn barcode(&self) -> Barcode {
        if self.is_zero() {
            Barcode::new()
        } else {
            self.to_module().barcode()
        }
    }
}

pub fn x_module(f: &Morphism, i: &GridInterval, j: &GridInterval) -> Result<XModule> {
    let n = f.n();
    let field = f.field();
    let support = i.intersect(j);
    let mut pairs = Vec::with_capacity(n);
    for t in 1..=n {
        pairs.push(x_pair(f, i, j, t)?);
    }
    let dims: Vec<usize> = pairs.iter().map(|(p, m)| p.dim() - m.dim()).collect();
    let mut maps = Vec::with_capacity(n.saturating_sub(1));
    for t in 1..n {
        let inside = support.is_some_and(|s| s.contains(t) && s.contains(t + 1));
        if !inside {
            maps.push(FieldMatrix::zeros(field, dims[t], dims[t - 1]));
            continue;
        }
        let (sp, sm) = &pairs[t - 1];
        let (dp, dm) = &pairs[t];
        maps.push(subspace::induced_map_on_quotients(f.target().map(t), sp, sm, dp, dm)?);
    }
    Ok(XModule {
        support,
        dims,
        maps,
        field,
    })
}

/// `#ℬ(X_IJ)`.
pub fn m_value(f: &Morphism, i: &GridInterval, j: &GridInterval) -> Result<usize> {
    if i.intersect(j).is_none() {
        return Ok(0);
    }
    Ok(x_module(f, i, j)?.barcode().total())
}

/// Interval pair to barcode; empty barcodes are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GMatchingTable {
    entries: BTreeMap<(GridInterval, GridInterval), Barcode>,
}

impl GMatchingTable {
    pub fn get(&self, i: &GridInterval, j: &GridInterval) -> Barcode {
        self.entries.get(&(*i, *j)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(GridInterval, GridInterval), &Barcode)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_counts(&self) -> MMatchingTable {
        let mut m = MMatchingTable::default();
        for (&(i, j), b) in &self.entries {
            m.add(i, j, b.total());
        }
        m
    }
}

/// Interval pair to count; zero counts are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MMatchingTable {
    entries: BTreeMap<(GridInterval, GridInterval), usize>,
}

impl MMatchingTable {
    pub fn from_entries<T: IntoIterator<Item = ((GridInterval, GridInterval), usize)>>(it: T) -> Self {
        let mut m = MMatchingTable::default();
        for ((i, j), c) in it {
            m.add(i, j, c);
        }
        m
    }

    pub fn add(&mut self, i: GridInterval, j: GridInterval, count: usize) {
        if count > 0 {
            *self.entries.entry((i, j)).or_insert(0) += count;
        }
    }

    pub fn get(&self, i: &GridInterval, j: &GridInterval) -> usize {
        self.entries.get(&(*i, *j)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((GridInterval, GridInterval), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn row_sum(&self, i: &GridInterval) -> usize {
        self.iter().filter(|((a, _), _)| a == i).map(|(_, c)| c).sum()
    }

    pub fn col_sum(&self, j: &GridInterval) -> usize {
        self.iter().filter(|((_, b), _)| b == j).map(|(_, c)| c).sum()
    }

    /// Entrywise sum.
    pub fn merge(&self, other: &MMatchingTable) -> MMatchingTable {
        let mut m = self.clone();
        for ((i, j), c) in other.iter() {
            m.add(i, j, c);
        }
        m
    }

    /// Row sums bounded by multiplicities in `bv`, column sums by `bu`.
    pub fn check_inequalities(&self, bv: &Barcode, bu: &Barcode) -> Result<()> {
        let rows: std::collections::BTreeSet<GridInterval> = self.entries.keys().map(|k| k.0).collect();
        for i in rows {
            let total = self.row_sum(&i);
            if total > bv.multiplicity(&i) {
                return Err(Error::MatchingInequality {
                    interval: i,
                    total,
                    multiplicity: bv.multiplicity(&i),
                });
            }
        }
        let cols: std::collections::BTreeSet<GridInterval> = self.entries.keys().map(|k| k.1).collect();
        for j in cols {
            let total = self.col_sum(&j);
            if total > bu.multiplicity(&j) {
                return Err(Error::MatchingInequality {
                    interval: j,
                    total,
                    multiplicity: bu.multiplicity(&j),
                });
            }
        }
        Ok(())
    }
}

/// `ℬ(X_IJ)` for every bar `I` of the source and `J` of the target.
///
/// The row and column bounds are not enforced here: a column can be
/// overfull when source bars with different right ends land on the same
/// target bar (see [`MMatchingTable::check_inequalities`]). Bars of an
/// entry usually, but not always, end at the right end of `I ∩ J`.
pub fn g_matching(f: &Morphism) -> Result<GMatchingTable> {
    let bv = f.source().barcode();
    let bu = f.target().barcode();
    let mut table = GMatchingTable::default();
    for i in bv.intervals() {
        for j in bu.intervals() {
            if i.intersect(&j).is_none() {
                continue;
            }
            let x = x_module(f, &i, &j)?;
            let bars = x.barcode();
            if !bars.is_empty() {
                table.entries.insert((i, j), bars);
            }
        }
    }
    Ok(table)
}

/// `#ℬ(X_IJ)` for every bar `I` of the source and `J` of the target, with
/// the same caveat as [`g_matching`].
pub fn m_matching(f: &Morphism) -> Result<MMatchingTable> {
    let bv = f.source().barcode();
    let bu = f.target().barcode();
    let mut table = MMatchingTable::default();
    for i in bv.intervals() {
        for j in bu.intervals() {
            table.add(i, j, m_value(f, &i, &j)?);
        }
    }
    Ok(table)
}

/// A bar of a barcode together with its 1-based index among equal bars.
pub type IndexedBar = (GridInterval, usize);

/// An injective partial map between the indexed bars of two barcodes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RepMatching {
    pairs: BTreeMap<IndexedBar, IndexedBar>,
}

impl RepMatching {
    pub fn new() -> Self {
        RepMatching::default()
    }

    /// Fails if either bar is already used.
    pub fn insert(&mut self, from: IndexedBar, to: IndexedBar) -> Result<()> {
        if self.pairs.contains_key(&from) || self.pairs.values().any(|v| *v == to) {
            return Err(Error::BadRepresentation(format!(
                "{}_{} -> {}_{} reuses a bar",
                from.0, from.1, to.0, to.1
            )));
        }
        self.pairs.insert(from, to);
        Ok(())
    }

    pub fn get(&self, bar: &IndexedBar) -> Option<IndexedBar> {
        self.pairs.get(bar).copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (IndexedBar, IndexedBar)> + '_ {
        self.pairs.iter().map(|(&a, &b)| (a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_matched_target(&self, bar: &IndexedBar) -> bool {
        self.pairs.values().any(|v| v == bar)
    }

    /// Bars of `bv` with no image.
    pub fn unmatched_source(&self, bv: &Barcode) -> Vec<IndexedBar> {
        bv.indexed_bars()
            .into_iter()
            .filter(|b| !self.pairs.contains_key(b))
            .collect()
    }

    /// Bars of `bu` outside the image.
    pub fn unmatched_target(&self, bu: &Barcode) -> Vec<IndexedBar> {
        bu.indexed_bars()
            .into_iter()
            .filter(|b| !self.is_matched_target(b))
            .collect()
    }

    /// Number of matched pairs per interval pair.
    pub fn counts(&self) -> MMatchingTable {
        let mut m = MMatchingTable::default();
        for (a, b) in self.pairs() {
            m.add(a.0, b.0, 1);
        }
        m
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RepMatching) -> RepMatching {
        let pairs = self
            .pairs()
            .filter_map(|(a, b)| other.get(&b).map(|c| (a, c)))
            .collect();
        RepMatching { pairs }
    }

    /// Checks that every bar named exists in the given barcodes.
    pub fn check_bars(&self, bv: &Barcode, bu: &Barcode) -> Result<()> {
        let exists = |b: &Barcode, bar: &IndexedBar| bar.1 >= 1 && bar.1 <= b.multiplicity(&bar.0);
        for (a, b) in self.pairs() {
            if !exists(bv, &a) || !exists(bu, &b) {
                return Err(Error::BadRepresentation(format!(
                    "{}_{} -> {}_{} names a missing bar",
                    a.0, a.1, b.0, b.1
                )));
            }
        }
        Ok(())
    }
}

/// Realizes the counts of `mm` by an injective map of indexed bars, always
/// taking the lowest free index on each side and visiting interval pairs
/// in order.
pub fn representation(mm: &MMatchingTable, bv: &Barcode, bu: &Barcode) -> Result<RepMatching> {
    mm.check_inequalities(bv, bu)?;
    let mut next_src: BTreeMap<GridInterval, usize> = BTreeMap::new();
    let mut next_dst: BTreeMap<GridInterval, usize> = BTreeMap::new();
    let mut rep = RepMatching::new();
    for ((i, j), count) in mm.iter() {
        for _ in 0..count {
            let a = next_src.entry(i).or_insert(1);
            let b = next_dst.entry(j).or_insert(1);
            rep.insert((i, *a), (j, *b))?;
            *a += 1;
            *b += 1;
        }
    }
    Ok(rep)
}
