//! Ladder modules: morphisms `V -> U` over a short grid, written as the
//! dimension rows `upper/lower` with `U` on top. Includes the catalog of
//! indecomposables over three points and seeded random generators.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::FieldMatrix;
use crate::persmod::{GridInterval, Morphism, PersistenceModule};
use crate::subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LadderCode {
    /// Dimensions of the target.
    pub upper: [u8; 3],
    /// Dimensions of the source.
    pub lower: [u8; 3],
}

impl LadderCode {
    pub const fn new(upper: [u8; 3], lower: [u8; 3]) -> Self {
        LadderCode { upper, lower }
    }

    pub fn is_thin(&self) -> bool {
        self.upper.iter().chain(&self.lower).all(|&d| d <= 1)
    }
}

impl fmt::Display for LadderCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.upper;
        let [d, e, g] = self.lower;
        write!(f, "{a}{b}{c}/{d}{e}{g}")
    }
}

impl FromStr for LadderCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownLadderCode(s.to_string());
        let (up, low) = s.split_once('/').ok_or_else(bad)?;
        let digits = |x: &str| -> Result<[u8; 3]> {
            let v: Vec<u8> = x
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as u8))
                .collect::<Option<_>>()
                .ok_or_else(bad)?;
            v.try_into().map_err(|_| bad())
        };
        Ok(LadderCode::new(digits(up)?, digits(low)?))
    }
}

pub const THICK_CODES: [LadderCode; 2] = [
    LadderCode::new([1, 2, 1], [0, 1, 1]),
    LadderCode::new([1, 1, 0], [1, 2, 1]),
];

fn thin_row(field: PrimeField, dims: [u8; 3]) -> Result<PersistenceModule> {
    let maps = (0..2)
        .map(|k| {
            let (s, t) = (dims[k] as usize, dims[k + 1] as usize);
            if s == 1 && t == 1 {
                FieldMatrix::identity(field, 1)
            } else {
                FieldMatrix::zeros(field, t, s)
            }
        })
        .collect();
    PersistenceModule::new(field, dims.iter().map(|&d| d as usize).collect(), maps)
}

/// The thin ladder with identity maps wherever both ends are nonzero.
/// Fails with a naturality error when those maps do not commute.
fn thin_ladder(code: &LadderCode, field: PrimeField) -> Result<Morphism> {
    let u = thin_row(field, code.upper)?;
    let v = thin_row(field, code.lower)?;
    let comps = (0..3)
        .map(|k| {
            let (s, t) = (code.lower[k] as usize, code.upper[k] as usize);
            if s == 1 && t == 1 {
                FieldMatrix::identity(field, 1)
            } else {
                FieldMatrix::zeros(field, t, s)
            }
        })
        .collect();
    Morphism::new(v, u, comps)
}

/// Nodes `(row, t)` with nonzero dimension form one connected piece of the
/// ladder.
fn support_connected(code: &LadderCode) -> bool {
    let rows = [code.upper, code.lower];
    let nodes: Vec<(usize, usize)> = (0..2)
        .flat_map(|r| (0..3).map(move |t| (r, t)))
        .filter(|&(r, t)| rows[r][t] > 0)
        .collect();
    let Some(&first) = nodes.first() else {
        return false;
    };
    let mut seen = vec![first];
    let mut stack = vec![first];
    while let Some((r, t)) = stack.pop() {
        for &(r2, t2) in &nodes {
            let adjacent = (r == r2 && t.abs_diff(t2) == 1) || (t == t2 && r != r2);
            if adjacent && !seen.contains(&(r2, t2)) {
                seen.push((r2, t2));
                stack.push((r2, t2));
            }
        }
    }
    seen.len() == nodes.len()
}

/// All thin codes whose identity-where-possible ladder commutes and has
/// connected support.
pub fn thin_codes() -> Vec<LadderCode> {
    let mut out = Vec::new();
    for bits in 1u32..64 {
        let b = |i: u32| ((bits >> i) & 1) as u8;
        let code = LadderCode::new([b(5), b(4), b(3)], [b(2), b(1), b(0)]);
        if support_connected(&code) && thin_ladder(&code, PrimeField::GF2).is_ok() {
            out.push(code);
        }
    }
    out.sort();
    out
}

pub fn from_code(code: &LadderCode, field: PrimeField) -> Result<Morphism> {
    let m = |rows: &[&[i64]]| FieldMatrix::from_rows(field, rows);
    if *code == THICK_CODES[0] {
        let u = PersistenceModule::new(field, vec![1, 2, 1], vec![m(&[&[1], &[0]]), m(&[&[0, 1]])])?;
        let v = PersistenceModule::new(
            field,
            vec![0, 1, 1],
            vec![FieldMatrix::zeros(field, 1, 0), m(&[&[1]])],
        )?;
        let comps = vec![FieldMatrix::zeros(field, 1, 0), m(&[&[1], &[1]]), m(&[&[1]])];
        return Morphism::new(v, u, comps);
    }
    if *code == THICK_CODES[1] {
        let u = PersistenceModule::new(
            field,
            vec![1, 1, 0],
            vec![m(&[&[1]]), FieldMatrix::zeros(field, 0, 1)],
        )?;
        let v = PersistenceModule::new(field, vec![1, 2, 1], vec![m(&[&[1], &[0]]), m(&[&[0, 1]])])?;
        let comps = vec![m(&[&[1]]), m(&[&[1, 1]]), FieldMatrix::zeros(field, 0, 1)];
        return Morphism::new(v, u, comps);
    }
    let zero = LadderCode::new([0; 3], [0; 3]);
    if *code == zero || (code.is_thin() && thin_codes().contains(code)) {
        return thin_ladder(code, field);
    }
    Err(Error::UnknownLadderCode(code.to_string()))
}

/// The thin codes followed by the two thick ones.
pub fn catalog_codes() -> Vec<LadderCode> {
    let mut v = thin_codes();
    v.extend(THICK_CODES);
    v
}

pub fn enumerate_catalog(field: PrimeField) -> Vec<(LadderCode, Morphism)> {
    catalog_codes()
        .into_iter()
        .map(|c| (c, from_code(&c, field).expect("catalog code")))
        .collect()
}

/// Random direct sum of interval modules with pointwise dimension at most
/// `max_dim`, conjugated by random invertible matrices.
pub fn random_module<R: Rng + ?Sized>(n: usize, max_dim: usize, field: PrimeField, rng: &mut R) -> PersistenceModule {
    let mut dims = vec![0usize; n];
    let mut bars: Vec<GridInterval> = Vec::new();
    if n > 0 && max_dim > 0 {
        let attempts = rng.gen_range(0..=2 * max_dim + 2);
        for _ in 0..attempts {
            let a = rng.gen_range(1..=n);
            let b = rng.gen_range(a..=n);
            if (a..=b).all(|t| dims[t - 1] < max_dim) {
                for t in a..=b {
                    dims[t - 1] += 1;
                }
                bars.push(GridInterval::new(a, b));
            }
        }
    }
    // coordinate k of V(t) belongs to the k-th bar alive at t
    let alive = |t: usize| -> Vec<usize> { (0..bars.len()).filter(|&i| bars[i].contains(t)).collect() };
    let changes: Vec<FieldMatrix> = dims
        .iter()
        .map(|&d| FieldMatrix::random_invertible(field, d, rng))
        .collect();
    let mut maps = Vec::with_capacity(n.saturating_sub(1));
    for t in 1..n {
        let (src, dst) = (alive(t), alive(t + 1));
        let mut m = FieldMatrix::zeros(field, dst.len(), src.len());
        for (c, bar) in src.iter().enumerate() {
            if let Some(r) = dst.iter().position(|x| x == bar) {
                m.set(r, c, 1);
            }
        }
        let inv = changes[t - 1].inverse().expect("invertible");
        maps.push(changes[t].matmul(&m).unwrap().matmul(&inv).unwrap());
    }
    PersistenceModule::new(field, dims, maps).expect("well-formed")
}

/// Basis of `Hom(v, u)` as flat vectors of stacked row-major components.
fn hom_basis(v: &PersistenceModule, u: &PersistenceModule) -> (Vec<usize>, FieldMatrix) {
    let field = v.field();
    let n = v.n();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut total = 0;
    for t in 1..=n {
        offsets.push(total);
        total += u.dim(t) * v.dim(t);
    }
    offsets.push(total);
    let var = |t: usize, i: usize, j: usize| offsets[t - 1] + i * v.dim(t) + j;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for t in 1..n {
        let rho = v.map(t);
        let phi = u.map(t);
        // (f_{t+1} rho - phi f_t)[i][k] = 0
        for i in 0..u.dim(t + 1) {
            for k in 0..v.dim(t) {
                let mut row = vec![0u32; total];
                for j in 0..v.dim(t + 1) {
                    let x = var(t + 1, i, j);
                    row[x] = field.add(row[x], rho.get(j, k));
                }
                for l in 0..u.dim(t) {
                    let x = var(t, l, k);
                    row[x] = field.sub(row[x], phi.get(i, l));
                }
                rows.push(row);
            }
        }
    }
    let system = FieldMatrix::from_columns(field, total, &rows).transpose();
    (offsets, subspace::kernel(&system).basis().clone())
}

/// A random morphism `v -> u`: each vector of a basis of `Hom(v, u)` is
/// included with probability 1/2, with a random nonzero coefficient.
pub fn random_morphism<R: Rng + ?Sized>(
    v: &PersistenceModule,
    u: &PersistenceModule,
    rng: &mut R,
) -> Result<Morphism> {
    let field = v.field();
    let (offsets, basis) = hom_basis(v, u);
    let total = basis.rows();
    let mut flat = vec![0u32; total];
    for k in 0..basis.cols() {
        if rng.gen_bool(0.5) {
            let c = rng.gen_range(1..field.prime());
            for (x, r) in flat.iter_mut().enumerate() {
                *r = field.add(*r, field.mul(c, basis.get(x, k)));
            }
        }
    }
    let comps = (1..=v.n())
        .map(|t| {
            let data = flat[offsets[t - 1]..offsets[t]].to_vec();
            FieldMatrix::new(field, u.dim(t), v.dim(t), data)
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(v.clone(), u.clone(), comps)
}

/// Deterministic in `seed`.
pub fn random_ladder(n: usize, max_dim: usize, field: PrimeField, seed: u64) -> Morphism {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_ladder_with(n, max_dim, field, &mut rng)
}

pub fn random_ladder_with<R: Rng + ?Sized>(n: usize, max_dim: usize, field: PrimeField, rng: &mut R) -> Morphism {
    let v = random_module(n, max_dim, field, rng);
    let u = random_module(n, max_dim, field, rng);
    random_morphism(&v, &u, rng).expect("solutions of the naturality system are natural")
}
