//! Persistence modules over the grid `1..=n`, morphisms between them, and
//! barcodes.
//!
//! Grid indices are 1-based in every public function, matching the way
//! intervals are written. A module on `n` points stores `n` dimensions and
//! `n - 1` structure maps `V(t) -> V(t+1)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::FieldMatrix;
use crate::subspace::{self, Subspace};

/// Closed interval `[start, end]` of grid indices.
///
/// Ordered by start ascending, then end descending, so longer bars come
/// first among bars born together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridInterval {
    pub start: usize,
    pub end: usize,
}

impl GridInterval {
    /// Panics unless `1 <= start <= end`.
    pub fn new(start: usize, end: usize) -> Self {
        assert!(1 <= start && start <= end, "bad interval [{start},{end}]");
        GridInterval { start, end }
    }

    pub fn checked(start: usize, end: usize, n: usize) -> Result<Self> {
        if 1 <= start && start <= end && end <= n {
            Ok(GridInterval { start, end })
        } else {
            Err(Error::InvalidInterval { start, end, n })
        }
    }

    pub fn contains(&self, t: usize) -> bool {
        self.start <= t && t <= self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn intersect(&self, other: &GridInterval) -> Option<GridInterval> {
        let s = self.start.max(other.start);
        let e = self.end.min(other.end);
        (s <= e).then_some(GridInterval { start: s, end: e })
    }

    /// `self` sits below `other` in the matching order: `other` starts no
    /// later, ends no later, and the two overlap.
    pub fn is_matchable_into(&self, other: &GridInterval) -> bool {
        other.start <= self.start && self.start <= other.end && other.end <= self.end
    }

    /// Every interval of the grid `1..=n` in interval order.
    pub fn all(n: usize) -> Vec<GridInterval> {
        let mut v = Vec::with_capacity(n * (n + 1) / 2);
        for a in 1..=n {
            for b in (a..=n).rev() {
                v.push(GridInterval { start: a, end: b });
            }
        }
        v
    }
}

impl Ord for GridInterval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.start
            .cmp(&other.start)
            .then(other.end.cmp(&self.end))
    }
}

impl PartialOrd for GridInterval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GridInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.start, self.end)
    }
}

/// A multiset of intervals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Barcode {
    entries: BTreeMap<GridInterval, usize>,
}

impl Barcode {
    pub fn new() -> Self {
        Barcode::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (GridInterval, usize)>>(pairs: I) -> Self {
        let mut b = Barcode::new();
        for (i, m) in pairs {
            b.add(i, m);
        }
        b
    }

    pub fn add(&mut self, interval: GridInterval, multiplicity: usize) {
        if multiplicity > 0 {
            *self.entries.entry(interval).or_insert(0) += multiplicity;
        }
    }

    pub fn multiplicity(&self, interval: &GridInterval) -> usize {
        self.entries.get(interval).copied().unwrap_or(0)
    }

    /// Distinct intervals with their multiplicities, in interval order.
    pub fn iter(&self) -> impl Iterator<Item = (GridInterval, usize)> + '_ {
        self.entries.iter().map(|(&i, &m)| (i, m))
    }

    pub fn intervals(&self) -> impl Iterator<Item = GridInterval> + '_ {
        self.entries.keys().copied()
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    /// Number of bars counted with multiplicity.
    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn union(&self, other: &Barcode) -> Barcode {
        let mut b = self.clone();
        for (i, m) in other.iter() {
            b.add(i, m);
        }
        b
    }

    /// Every bar with its 1-based index inside its interval class.
    pub fn indexed_bars(&self) -> Vec<(GridInterval, usize)> {
        self.iter()
            .flat_map(|(i, m)| (1..=m).map(move |k| (i, k)))
            .collect()
    }

    /// Number of bars alive at `t`.
    pub fn dim_at(&self, t: usize) -> usize {
        self.iter()
            .filter(|(i, _)| i.contains(t))
            .map(|(_, m)| m)
            .sum()
    }
}

impl fmt::Display for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, m)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({i},{m})")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PersistenceModule {
    field: PrimeField,
    dims: Vec<usize>,
    maps: Vec<FieldMatrix>,
}

impl PersistenceModule {
    /// `maps[i]` is the structure map from grid point `i+1` to `i+2`.
    pub fn new(field: PrimeField, dims: Vec<usize>, maps: Vec<FieldMatrix>) -> Result<Self> {
        let m = PersistenceModule { field, dims, maps };
        m.validate()?;
        Ok(m)
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        PersistenceModule {
            field,
            dims: vec![0; n],
            maps: (1..n).map(|_| FieldMatrix::zeros(field, 0, 0)).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dims.len();
        if self.maps.len() + 1 != n.max(1) {
            return Err(Error::Shape {
                t: n.min(self.maps.len() + 1),
                what: format!("{} structure maps for {} grid points", self.maps.len(), n),
            });
        }
        for (i, m) in self.maps.iter().enumerate() {
            let t = i + 1;
            if m.field() != self.field {
                return Err(Error::FieldMismatch {
                    left: self.field.prime(),
                    right: m.field().prime(),
                });
            }
            if m.shape() != (self.dims[t], self.dims[t - 1]) {
                return Err(Error::Shape {
                    t,
                    what: format!(
                        "structure map is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        self.dims[t],
                        self.dims[t - 1]
                    ),
                });
            }
        }
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, t: usize) -> usize {
        self.dims[t - 1]
    }

    pub fn maps(&self) -> &[FieldMatrix] {
        &self.maps
    }

    /// Structure map `V(t) -> V(t+1)`.
    pub fn map(&self, t: usize) -> &FieldMatrix {
        &self.maps[t - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    fn check_index(&self, t: usize) -> Result<()> {
        if 1 <= t && t <= self.n() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: t,
                n: self.n(),
            })
        }
    }

    /// The composite `rho_{s,t}`; the identity when `s == t`.
    pub fn composite(&self, s: usize, t: usize) -> Result<FieldMatrix> {
        self.check_index(s)?;
        self.check_index(t)?;
        if s > t {
            return Err(Error::InvalidInterval {
                start: s,
                end: t,
                n: self.n(),
            });
        }
        let mut acc = FieldMatrix::identity(self.field, self.dim(s));
        for u in s..t {
            acc = self.map(u).matmul(&acc)?;
        }
        Ok(acc)
    }

    /// The module on `1..=hi-lo+1` given by the points `lo..=hi`.
    pub fn restrict(&self, lo: usize, hi: usize) -> Result<PersistenceModule> {
        GridInterval::checked(lo, hi, self.n())?;
        Ok(PersistenceModule {
            field: self.field,
            dims: self.dims[lo - 1..hi].to_vec(),
            maps: self.maps[lo - 1..hi - 1].to_vec(),
        })
    }

    /// The shifted module `V_eps`, with `V_eps(t) = V(t+eps)` on
    /// `1..=n-eps`.
    pub fn shifted(&self, eps: usize) -> Result<PersistenceModule> {
        if eps >= self.n() {
            return Err(Error::ShiftOutOfRange { eps, n: self.n() });
        }
        self.restrict(1 + eps, self.n())
    }

    fn check_interval(&self, interval: &GridInterval) -> Result<()> {
        GridInterval::checked(interval.start, interval.end, self.n()).map(|_| ())
    }

    fn check_in(&self, interval: &GridInterval, t: usize) -> Result<()> {
        self.check_interval(interval)?;
        if interval.contains(t) {
            Ok(())
        } else {
            Err(Error::NotInInterval {
                t,
                interval: *interval,
            })
        }
    }

    /// Image of `rho_{a,t}`.
    pub fn im_plus(&self, interval: &GridInterval, t: usize) -> Result<Subspace> {
        self.check_in(interval, t)?;
        Ok(subspace::image(&self.composite(interval.start, t)?))
    }

    /// Image of `rho_{a-1,t}`, zero when the interval starts at 1.
    pub fn im_minus(&self, interval: &GridInterval, t: usize) -> Result<Subspace> {
        self.check_in(interval, t)?;
        if interval.start == 1 {
            return Ok(Subspace::zero(self.field, self.dim(t)));
        }
        Ok(subspace::image(&self.composite(interval.start - 1, t)?))
    }

    /// Kernel of `rho_{t,b+1}`, all of `V(t)` when the interval ends at `n`.
    pub fn ker_plus(&self, interval: &GridInterval, t: usize) -> Result<Subspace> {
        self.check_in(interval, t)?;
        if interval.end == self.n() {
            return Ok(Subspace::full(self.field, self.dim(t)));
        }
        Ok(subspace::kernel(&self.composite(t, interval.end + 1)?))
    }

    /// Kernel of `rho_{t,b}`.
    pub fn ker_minus(&self, interval: &GridInterval, t: usize) -> Result<Subspace> {
        self.check_in(interval, t)?;
        Ok(subspace::kernel(&self.composite(t, interval.end)?))
    }

    /// `Im+ ∩ Ker+`, zero off the interval.
    pub fn v_plus(&self, interval: &GridInterval, t: usize) -> Result<Subspace> {
        self.check_index(t)?;
        self.check_interval(interval)?;
        if !interval.contains(t) {
            return Ok(Subspace::zero(self.field, self.dim(t)));
        }
        subspace::intersect(&self.im_plus(interval, t)?, &self.ker_plus(interval, t)?)
    }

    /// `Im- ∩ Ker+ + Im+ ∩ Ker-`, zero off the interval.
    pub fn v_minus(&self, interval: &GridInterval, t: usize) -> Result<Subspace> {
        self.check_index(t)?;
        self.check_interval(interval)?;
        if !interval.contains(t) {
            return Ok(Subspace::zero(self.field, self.dim(t)));
        }
        let ker_plus = self.ker_plus(interval, t)?;
        let left = subspace::intersect(&self.im_minus(interval, t)?, &ker_plus)?;
        let right = subspace::intersect(&self.im_plus(interval, t)?, &self.ker_minus(interval, t)?)?;
        subspace::sum(&left, &right)
    }

    /// `dim V+ - dim V-` at `t`.
    pub fn multiplicity_at(&self, interval: &GridInterval, t: usize) -> Result<usize> {
        let plus = self.v_plus(interval, t)?;
        let minus = self.v_minus(interval, t)?;
        subspace::quotient_dim(&plus, &minus)
    }

    pub fn barcode(&self) -> Barcode {
        barcode(self)
    }
}

/// Multiplicity of every interval, read off at its left endpoint.
pub fn barcode(m: &PersistenceModule) -> Barcode {
    let mut b = Barcode::new();
    for interval in GridInterval::all(m.n()) {
        let mult = m
            .multiplicity_at(&interval, interval.start)
            .expect("interval lies on the grid");
        debug_assert!(
            (interval.start..=interval.end)
                .all(|t| m.multiplicity_at(&interval, t).unwrap() == mult),
            "multiplicity of {interval} is not constant"
        );
        b.add(interval, mult);
    }
    b
}

pub fn composite(m: &PersistenceModule, s: usize, t: usize) -> Result<FieldMatrix> {
    m.composite(s, t)
}

/// `k_I` on the grid `1..=n`.
pub fn interval_module(n: usize, field: PrimeField, interval: GridInterval) -> Result<PersistenceModule> {
    GridInterval::checked(interval.start, interval.end, n)?;
    let dims: Vec<usize> = (1..=n).map(|t| usize::from(interval.contains(t))).collect();
    let maps = (1..n)
        .map(|t| {
            if interval.contains(t) && interval.contains(t + 1) {
                FieldMatrix::identity(field, 1)
            } else {
                FieldMatrix::zeros(field, dims[t], dims[t - 1])
            }
        })
        .collect();
    PersistenceModule::new(field, dims, maps)
}

fn check_compatible(x: &PersistenceModule, y: &PersistenceModule) -> Result<()> {
    if x.field != y.field {
        return Err(Error::FieldMismatch {
            left: x.field.prime(),
            right: y.field.prime(),
        });
    }
    if x.n() != y.n() {
        return Err(Error::GridMismatch {
            left: x.n(),
            right: y.n(),
        });
    }
    Ok(())
}

/// Blockwise `x ⊕ y`, with the coordinates of `x` first.
pub fn direct_sum(x: &PersistenceModule, y: &PersistenceModule) -> Result<PersistenceModule> {
    check_compatible(x, y)?;
    let dims = x.dims.iter().zip(&y.dims).map(|(a, b)| a + b).collect();
    let maps = x
        .maps
        .iter()
        .zip(&y.maps)
        .map(|(a, b)| a.block_diag(b))
        .collect::<Result<Vec<_>>>()?;
    PersistenceModule::new(x.field, dims, maps)
}

/// A natural transformation `source -> target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    source: PersistenceModule,
    target: PersistenceModule,
    comps: Vec<FieldMatrix>,
}

impl Morphism {
    /// `comps[i]` is the component at grid point `i+1`.
    pub fn new(source: PersistenceModule, target: PersistenceModule, comps: Vec<FieldMatrix>) -> Result<Self> {
        let f = Morphism {
            source,
            target,
            comps,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        self.source.validate()?;
        self.target.validate()?;
        check_compatible(&self.source, &self.target)?;
        let n = self.source.n();
        if self.comps.len() != n {
            return Err(Error::Shape {
                t: self.comps.len().min(n) + 1,
                what: format!("{} components for {} grid points", self.comps.len(), n),
            });
        }
        for t in 1..=n {
            let c = &self.comps[t - 1];
            if c.field() != self.source.field {
                return Err(Error::FieldMismatch {
                    left: self.source.field.prime(),
                    right: c.field().prime(),
                });
            }
            if c.shape() != (self.target.dim(t), self.source.dim(t)) {
                return Err(Error::Shape {
                    t,
                    what: format!(
                        "component is {}x{}, expected {}x{}",
                        c.rows(),
                        c.cols(),
                        self.target.dim(t),
                        self.source.dim(t)
                    ),
                });
            }
        }
        for t in 1..n {
            let lhs = self.comps[t].matmul(self.source.map(t))?;
            let rhs = self.target.map(t).matmul(&self.comps[t - 1])?;
            if lhs != rhs {
                return Err(Error::Naturality { t });
            }
        }
        Ok(())
    }

    pub fn identity(m: &PersistenceModule) -> Morphism {
        Morphism {
            source: m.clone(),
            target: m.clone(),
            comps: m.dims.iter().map(|&d| FieldMatrix::identity(m.field, d)).collect(),
        }
    }

    pub fn zero(source: &PersistenceModule, target: &PersistenceModule) -> Result<Morphism> {
        check_compatible(source, target)?;
        let comps = (1..=source.n())
            .map(|t| FieldMatrix::zeros(source.field, target.dim(t), source.dim(t)))
            .collect();
        Morphism::new(source.clone(), target.clone(), comps)
    }

    pub fn source(&self) -> &PersistenceModule {
        &self.source
    }

    pub fn target(&self) -> &PersistenceModule {
        &self.target
    }

    pub fn field(&self) -> PrimeField {
        self.source.field
    }

    pub fn n(&self) -> usize {
        self.source.n()
    }

    pub fn comps(&self) -> &[FieldMatrix] {
        &self.comps
    }

    /// Component at grid point `t`.
    pub fn comp(&self, t: usize) -> &FieldMatrix {
        &self.comps[t - 1]
    }

    pub fn is_injective(&self) -> bool {
        self.first_non_injective().is_none()
    }

    pub fn is_surjective(&self) -> bool {
        self.first_non_surjective().is_none()
    }

    pub(crate) fn first_non_injective(&self) -> Option<usize> {
        (1..=self.n()).find(|&t| self.comp(t).rank() < self.source.dim(t))
    }

    pub(crate) fn first_non_surjective(&self) -> Option<usize> {
        (1..=self.n()).find(|&t| self.comp(t).rank() < self.target.dim(t))
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Morphism) -> Result<Morphism> {
        if g.source != self.target {
            return Err(Error::Malformed("composed morphisms do not meet".into()));
        }
        let comps = self
            .comps
            .iter()
            .zip(&g.comps)
            .map(|(a, b)| b.matmul(a))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(self.source.clone(), g.target.clone(), comps)
    }
}

pub fn direct_sum_morphism(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    let source = direct_sum(&f.source, &g.source)?;
    let target = direct_sum(&f.target, &g.target)?;
    let comps = f
        .comps
        .iter()
        .zip(&g.comps)
        .map(|(a, b)| a.block_diag(b))
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(source, target, comps)
}

/// The submodule spanned by the columns of `bases[t]` inside each `V(t)`,
/// which must be carried into each other by the structure maps. Returns
/// the submodule and its inclusion.
fn submodule_from_bases(m: &PersistenceModule, bases: &[Subspace]) -> Result<(PersistenceModule, Vec<FieldMatrix>)> {
    let n = m.n();
    let dims: Vec<usize> = bases.iter().map(Subspace::dim).collect();
    let mut maps = Vec::with_capacity(n.saturating_sub(1));
    for t in 1..n {
        let pushed = m.map(t).matmul(bases[t - 1].basis())?;
        maps.push(bases[t].coordinate_matrix(&pushed)?);
    }
    let sub = PersistenceModule::new(m.field, dims, maps)?;
    let incl = bases.iter().map(|b| b.basis().clone()).collect();
    Ok((sub, incl))
}

/// `Im f` together with the factorization `V ->> Im f >-> U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageFactorization {
    pub image: PersistenceModule,
    pub projection: Morphism,
    pub embedding: Morphism,
}

pub fn image_factorization(f: &Morphism) -> Result<ImageFactorization> {
    let bases: Vec<Subspace> = f.comps.iter().map(subspace::image).collect();
    let (image, incl) = submodule_from_bases(&f.target, &bases)?;
    let proj = f
        .comps
        .iter()
        .zip(&bases)
        .map(|(c, b)| b.coordinate_matrix(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(ImageFactorization {
        projection: Morphism::new(f.source.clone(), image.clone(), proj)?,
        embedding: Morphism::new(image.clone(), f.target.clone(), incl)?,
        image,
    })
}

/// `Im f` with its inclusion into the target.
pub fn image_module(f: &Morphism) -> Result<(PersistenceModule, Morphism)> {
    let fact = image_factorization(f)?;
    Ok((fact.image, fact.embedding))
}

fn check_eps(n: usize, eps: usize) -> Result<()> {
    if eps >= n {
        Err(Error::ShiftOutOfRange { eps, n })
    } else {
        Ok(())
    }
}

/// `Im rho_{t,t+eps}` inside `V(t+eps)` for `t` in `1..=n-eps`.
fn shift_bases(m: &PersistenceModule, eps: usize) -> Result<Vec<Subspace>> {
    check_eps(m.n(), eps)?;
    (1..=m.n() - eps)
        .map(|t| Ok(subspace::image(&m.composite(t, t + eps)?)))
        .collect()
}

/// The module `𝟏_eps(V)` on `1..=n-eps`: `Im rho_{t,t+eps}` with the maps
/// induced from `V_eps`.
pub fn shift_module(m: &PersistenceModule, eps: usize) -> Result<PersistenceModule> {
    let bases = shift_bases(m, eps)?;
    let shifted = m.shifted(eps)?;
    Ok(submodule_from_bases(&shifted, &bases)?.0)
}

/// `𝟏_eps(f)`: the restriction of `f_eps` to `𝟏_eps(V) -> 𝟏_eps(U)`.
pub fn shift_morphism(f: &Morphism, eps: usize) -> Result<Morphism> {
    let sb = shift_bases(&f.source, eps)?;
    let tb = shift_bases(&f.target, eps)?;
    let source = submodule_from_bases(&f.source.shifted(eps)?, &sb)?.0;
    let target = submodule_from_bases(&f.target.shifted(eps)?, &tb)?.0;
    let comps = (1..=f.n() - eps)
        .map(|t| {
            let pushed = f.comp(t + eps).matmul(sb[t - 1].basis())?;
            tb[t - 1].coordinate_matrix(&pushed)
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(source, target, comps)
}

/// The canonical `V|_{1..n-eps} -> V_eps` with components `rho_{t,t+eps}`.
pub fn one_eps_morphism(m: &PersistenceModule, eps: usize) -> Result<Morphism> {
    check_eps(m.n(), eps)?;
    let n = m.n() - eps;
    let comps = (1..=n)
        .map(|t| m.composite(t, t + eps))
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(m.restrict(1, n)?, m.shifted(eps)?, comps)
}

/// One generator of a persistence basis: a chain of vectors over its
/// interval, each mapped to the next by the structure map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub interval: GridInterval,
    /// `vectors[k]` lives in `V(interval.start + k)`.
    pub vectors: Vec<Vec<u32>>,
}

impl Generator {
    pub fn vector_at(&self, t: usize) -> Option<&[u32]> {
        self.interval
            .contains(t)
            .then(|| self.vectors[t - self.interval.start].as_slice())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceBasis {
    pub generators: Vec<Generator>,
}

impl PersistenceBasis {
    pub fn barcode(&self) -> Barcode {
        Barcode::from_pairs(self.generators.iter().map(|g| (g.interval, 1)))
    }

    /// Generators alive at `t`, in basis order.
    pub fn alive_at(&self, t: usize) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&i| self.generators[i].interval.contains(t))
            .collect()
    }

    /// Columns of the generators alive at `t`.
    pub fn matrix_at(&self, m: &PersistenceModule, t: usize) -> FieldMatrix {
        let cols: Vec<Vec<u32>> = self
            .alive_at(t)
            .into_iter()
            .map(|i| self.generators[i].vector_at(t).unwrap().to_vec())
            .collect();
        FieldMatrix::from_columns(m.field, m.dim(t), &cols)
    }

    /// Checks the chain condition, the death condition and the basis
    /// condition.
    pub fn verify(&self, m: &PersistenceModule) -> Result<()> {
        for g in &self.generators {
            let iv = g.interval;
            for t in iv.start..iv.end {
                let next = m.map(t).mul_vec(g.vector_at(t).unwrap())?;
                if next != g.vector_at(t + 1).unwrap() {
                    return Err(Error::Naturality { t });
                }
            }
            if iv.end < m.n() {
                let next = m.map(iv.end).mul_vec(g.vector_at(iv.end).unwrap())?;
                if next.iter().any(|&x| x != 0) {
                    return Err(Error::Naturality { t: iv.end });
                }
            }
        }
        for t in 1..=m.n() {
            let b = self.matrix_at(m, t);
            if b.cols() != m.dim(t) || b.rank() != m.dim(t) {
                return Err(Error::Shape {
                    t,
                    what: "generators alive here are not a basis".into(),
                });
            }
        }
        Ok(())
    }
}

struct Chain {
    birth: usize,
    vectors: Vec<Vec<u32>>,
}

/// A persistence basis by a left-to-right sweep. At each step the images of
/// the live chains are reduced oldest first; a chain whose image reduces to
/// zero dies, after absorbing the older chains it was combined with.
pub fn persistence_basis(m: &PersistenceModule) -> PersistenceBasis {
    let f = m.field;
    let n = m.n();
    let mut done: Vec<Generator> = Vec::new();
    let mut alive: Vec<Chain> = Vec::new();
    if n == 0 {
        return PersistenceBasis { generators: done };
    }
    for j in 0..m.dim(1) {
        let mut e = vec![0u32; m.dim(1)];
        e[j] = 1;
        alive.push(Chain {
            birth: 1,
            vectors: vec![e],
        });
    }
    for t in 1..n {
        let map = m.map(t);
        alive.sort_by_key(|c| c.birth);
        let mut survivors: Vec<Chain> = Vec::new();
        // (pivot row, reduced image) for each survivor, same order
        let mut echelon: Vec<(usize, Vec<u32>)> = Vec::new();
        for mut chain in alive.drain(..) {
            let mut w = map.mul_vec(chain.vectors.last().unwrap()).expect("shape");
            for (k, (p, r)) in echelon.iter().enumerate() {
                let c = w[*p];
                if c == 0 {
                    continue;
                }
                let coef = f.mul(c, f.inv(r[*p]));
                for (x, y) in w.iter_mut().zip(r) {
                    *x = f.sub(*x, f.mul(coef, *y));
                }
                let older = &survivors[k];
                let offset = chain.birth - older.birth;
                for (s, v) in chain.vectors.iter_mut().enumerate() {
                    for (x, y) in v.iter_mut().zip(&older.vectors[offset + s]) {
                        *x = f.sub(*x, f.mul(coef, *y));
                    }
                }
            }
            match w.iter().position(|&x| x != 0) {
                Some(p) => {
                    echelon.push((p, w));
                    survivors.push(chain);
                }
                None => done.push(Generator {
                    interval: GridInterval::new(chain.birth, t),
                    vectors: chain.vectors,
                }),
            }
        }
        for (chain, (_, w)) in survivors.iter_mut().zip(&echelon) {
            chain.vectors.push(w.clone());
        }
        // extend the survivors to a basis of V(t+1) with coordinate vectors
        let d = m.dim(t + 1);
        let mut span: Vec<(usize, Vec<u32>)> = echelon;
        for j in 0..d {
            let mut w = vec![0u32; d];
            w[j] = 1;
            for (p, r) in &span {
                let c = w[*p];
                if c == 0 {
                    continue;
                }
                let coef = f.mul(c, f.inv(r[*p]));
                for (x, y) in w.iter_mut().zip(r) {
                    *x = f.sub(*x, f.mul(coef, *y));
                }
            }
            if let Some(p) = w.iter().position(|&x| x != 0) {
                span.push((p, w));
                let mut e = vec![0u32; d];
                e[j] = 1;
                survivors.push(Chain {
                    birth: t + 1,
                    vectors: vec![e],
                });
            }
        }
        alive = survivors;
    }
    for chain in alive {
        done.push(Generator {
            interval: GridInterval::new(chain.birth, n),
            vectors: chain.vectors,
        });
    }
    done.sort_by_key(|g| g.interval);
    PersistenceBasis { generators: done }
}
