//! The endpoint-bucket matching `χ_f = ι ∘ λ` factored through `Im f`,
//! ε-matching checks, and a morphism `g` whose `ℳ_g` is represented by
//! `χ_f`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::induced::{m_matching, IndexedBar, MMatchingTable, RepMatching};
use crate::matrix::FieldMatrix;
use crate::persmod::{image_factorization, persistence_basis, Barcode, GridInterval, Morphism};

/// Matching for an injective morphism: bars dying together are paired in
/// order of decreasing length.
pub fn iota(g: &Morphism) -> Result<RepMatching> {
    if let Some(t) = g.first_non_injective() {
        return Err(Error::NotInjective { t });
    }
    let src = g.source().barcode();
    let dst = g.target().barcode();
    bucket_match(&src, &dst, |i| i.end, |i| i.start)
}

/// Matching for a surjective morphism: bars born together are paired in
/// order of decreasing length.
pub fn lambda(h: &Morphism) -> Result<RepMatching> {
    if let Some(t) = h.first_non_surjective() {
        return Err(Error::NotSurjective { t });
    }
    let src = h.source().barcode();
    let dst = h.target().barcode();
    bucket_match(&src, &dst, |i| i.start, |i| usize::MAX - i.end)
}

/// Groups bars by `bucket`, sorts each group by `(rank, index)` and pairs
/// the k-th source bar with the k-th target bar.
fn bucket_match(
    src: &Barcode,
    dst: &Barcode,
    bucket: impl Fn(&GridInterval) -> usize,
    rank: impl Fn(&GridInterval) -> usize,
) -> Result<RepMatching> {
    let group = |b: &Barcode| {
        let mut g: BTreeMap<usize, Vec<IndexedBar>> = BTreeMap::new();
        for bar in b.indexed_bars() {
            g.entry(bucket(&bar.0)).or_default().push(bar);
        }
        for v in g.values_mut() {
            v.sort_by_key(|(i, k)| (rank(i), *k));
        }
        g
    };
    let gs = group(src);
    let gd = group(dst);
    let mut rep = RepMatching::new();
    for (key, bars) in &gs {
        if let Some(targets) = gd.get(key) {
            for (a, b) in bars.iter().zip(targets) {
                rep.insert(*a, *b)?;
            }
        }
    }
    Ok(rep)
}

pub fn chi(f: &Morphism) -> Result<RepMatching> {
    let fact = image_factorization(f)?;
    let l = lambda(&fact.projection)?;
    let i = iota(&fact.embedding)?;
    Ok(l.then(&i))
}

/// First clause of the ε-matching definition that fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpsViolation {
    /// A long source bar has no partner.
    UnmatchedSource(IndexedBar),
    /// A long target bar has no partner.
    UnmatchedTarget(IndexedBar),
    /// A matched pair is more than ε apart at some end.
    NotClose { from: IndexedBar, to: IndexedBar },
}

/// Bars `[a,b]` with `a + delta <= b`.
pub fn is_long(i: &GridInterval, delta: usize) -> bool {
    i.start + delta <= i.end
}

/// `[a,b]` and `[c,d]` each sit inside the other thickened by `eps`.
pub fn eps_close(i: &GridInterval, j: &GridInterval, eps: usize) -> bool {
    let (a, b, c, d) = (i.start, i.end, j.start, j.end);
    c <= a + eps && b <= d + eps && a <= c + eps && d <= b + eps
}

/// `Ok(None)` when `sigma` is an ε-matching between `bv` and `bu`.
pub fn is_eps_matching(
    sigma: &RepMatching,
    bv: &Barcode,
    bu: &Barcode,
    eps: usize,
) -> Result<Option<EpsViolation>> {
    sigma.check_bars(bv, bu)?;
    for bar in sigma.unmatched_source(bv) {
        if is_long(&bar.0, 2 * eps) {
            return Ok(Some(EpsViolation::UnmatchedSource(bar)));
        }
    }
    for bar in sigma.unmatched_target(bu) {
        if is_long(&bar.0, 2 * eps) {
            return Ok(Some(EpsViolation::UnmatchedTarget(bar)));
        }
    }
    for (from, to) in sigma.pairs() {
        if !eps_close(&from.0, &to.0, eps) {
            return Ok(Some(EpsViolation::NotClose { from, to }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub g: Morphism,
    /// `ℳ_g` next to the pair counts of `χ_f`.
    pub m_of_g: MMatchingTable,
    pub chi_counts: MMatchingTable,
    pub chi_of_g: RepMatching,
    pub chi_of_f: RepMatching,
}

impl Realization {
    /// `χ_f` represents `ℳ_g`, and `χ_g = χ_f`.
    pub fn holds(&self) -> bool {
        self.m_of_g == self.chi_counts && self.chi_of_g == self.chi_of_f
    }
}

/// Builds `g: V -> U` with the same source and target as `f` that sends the
/// generator of each bar `I` matched by `χ_f` to `J` onto the generator of
/// `J` over `I ∩ J`, and kills every unmatched generator.
pub fn realize_as_m(f: &Morphism) -> Result<Realization> {
    let v = f.source();
    let u = f.target();
    let field = f.field();
    let chi_f = chi(f)?;
    let alpha = persistence_basis(v);
    let beta = persistence_basis(u);

    // generator position of each indexed bar; generators are sorted by
    // interval, so the k-th with a given interval is bar (interval, k)
    let index = |gens: &[crate::persmod::Generator]| {
        let mut seen: BTreeMap<GridInterval, usize> = BTreeMap::new();
        let mut out: BTreeMap<IndexedBar, usize> = BTreeMap::new();
        for (pos, g) in gens.iter().enumerate() {
            let k = seen.entry(g.interval).or_insert(0);
            *k += 1;
            out.insert((g.interval, *k), pos);
        }
        out
    };
    let a_pos = index(&alpha.generators);
    let b_pos = index(&beta.generators);

    let mut comps = Vec::with_capacity(f.n());
    for t in 1..=f.n() {
        let a_alive = alpha.alive_at(t);
        let b_alive = beta.alive_at(t);
        let mut mid = FieldMatrix::zeros(field, b_alive.len(), a_alive.len());
        for (from, to) in chi_f.pairs() {
            if !(from.0.contains(t) && to.0.contains(t)) {
                continue;
            }
            let col = a_alive.iter().position(|&p| p == a_pos[&from]).expect("alive");
            let row = b_alive.iter().position(|&p| p == b_pos[&to]).expect("alive");
            mid.set(row, col, 1);
        }
        let a_inv = alpha.matrix_at(v, t).inverse()?;
        let b = beta.matrix_at(u, t);
        comps.push(b.matmul(&mid)?.matmul(&a_inv)?);
    }
    let g = Morphism::new(v.clone(), u.clone(), comps)?;
    let m_of_g = m_matching(&g)?;
    let chi_of_g = chi(&g)?;
    Ok(Realization {
        chi_counts: chi_f.counts(),
        chi_of_f: chi_f,
        g,
        m_of_g,
        chi_of_g,
    })
}
