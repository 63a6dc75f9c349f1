//! Subspaces of GF(p)^n and the calculus on them: image, kernel, sum,
//! intersection, preimage and quotients.
//!
//! Every [`Subspace`] is stored in column-reduced echelon form, so two
//! subspaces are equal exactly when their bases are equal entry by entry.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::FieldMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    /// `ambient x dim`, column-reduced echelon form.
    basis: FieldMatrix,
    /// Pivot row of each basis column, strictly increasing.
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            basis: FieldMatrix::zeros(field, ambient, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            basis: FieldMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the columns of `generators`.
    pub fn span(generators: &FieldMatrix) -> Self {
        let (red, pivots) = generators.transpose().rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        Subspace {
            basis: red.select_rows(&keep).transpose(),
            pivots,
        }
    }

    pub fn span_vectors(field: PrimeField, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        Subspace::span(&FieldMatrix::from_columns(field, ambient, vectors))
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.columns()
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in
    /// the subspace. With the echelon form these are the entries of `v` at
    /// the pivot rows.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.ambient_dim(), "vector length");
        let f = self.field();
        let coords: Vec<u32> = self.pivots.iter().map(|&r| v[r]).collect();
        let recon = self.basis.mul_vec(&coords).expect("shape");
        (0..v.len())
            .all(|i| f.sub(v[i], recon[i]) == 0)
            .then_some(coords)
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && other
                .basis_vectors()
                .iter()
                .all(|v| self.contains_vector(v))
    }

    /// Coordinates of every column of `m`, as a `dim x m.cols()` matrix.
    pub fn coordinate_matrix(&self, m: &FieldMatrix) -> Result<FieldMatrix> {
        if m.rows() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                op: "coordinate_matrix",
                left: self.ambient_dim(),
                right: m.rows(),
            });
        }
        let mut cols = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            cols.push(
                self.coordinates(&m.column(j))
                    .ok_or(Error::NotContained("coordinate_matrix"))?,
            );
        }
        Ok(FieldMatrix::from_columns(self.field(), self.dim(), &cols))
    }

    /// Greedy complement of `small` inside `self`, drawn from the canonical
    /// basis of `self`. Returns the complement vectors as columns.
    pub fn complement_of(&self, small: &Subspace) -> Result<FieldMatrix> {
        if !self.contains(small) {
            return Err(Error::NotContained("complement_of"));
        }
        let mut acc = small.basis.clone();
        let mut chosen = Vec::new();
        let mut rank = small.dim();
        for j in 0..self.dim() {
            let v = FieldMatrix::from_columns(self.field(), self.ambient_dim(), &[self.basis.column(j)]);
            let trial = acc.hstack(&v)?;
            let r = trial.rank();
            if r > rank {
                acc = trial;
                rank = r;
                chosen.push(j);
            }
        }
        Ok(self.basis.select_columns(&chosen))
    }
}

fn same_ambient(op: &'static str, a: &Subspace, b: &Subspace) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch {
            left: a.field().prime(),
            right: b.field().prime(),
        });
    }
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            op,
            left: a.ambient_dim(),
            right: b.ambient_dim(),
        });
    }
    Ok(())
}

pub fn rank(m: &FieldMatrix) -> usize {
    m.rank()
}

/// Column space of `m`, inside GF(p)^rows.
pub fn image(m: &FieldMatrix) -> Subspace {
    Subspace::span(m)
}

/// Null space of `m`, inside GF(p)^cols.
pub fn kernel(m: &FieldMatrix) -> Subspace {
    let f = m.field();
    let (red, pivots) = m.rref();
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; n];
        v[free] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = f.neg(red.get(r, free));
        }
        vectors.push(v);
    }
    Subspace::span_vectors(f, n, &vectors)
}

pub fn sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    same_ambient("sum", a, b)?;
    Ok(Subspace::span(&a.basis.hstack(&b.basis)?))
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    same_ambient("intersect", a, b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(Subspace::zero(a.field(), a.ambient_dim()));
    }
    // A x = B y  <=>  [A | -B] (x; y) = 0
    let f = a.field();
    let neg_b = b.basis.scale(f.neg(1));
    let ker = kernel(&a.basis.hstack(&neg_b)?);
    let ka = a.dim();
    let idx: Vec<usize> = (0..ka).collect();
    let xs = ker.basis.select_rows(&idx);
    Ok(Subspace::span(&a.basis.matmul(&xs)?))
}

/// `{ v : m v in s }`, inside GF(p)^cols(m).
pub fn preimage(m: &FieldMatrix, s: &Subspace) -> Result<Subspace> {
    if s.ambient_dim() != m.rows() {
        return Err(Error::DimensionMismatch {
            op: "preimage",
            left: m.rows(),
            right: s.ambient_dim(),
        });
    }
    let f = m.field();
    let neg_s = s.basis.scale(f.neg(1));
    let ker = kernel(&m.hstack(&neg_s)?);
    let idx: Vec<usize> = (0..m.cols()).collect();
    Ok(Subspace::span(&ker.basis.select_rows(&idx)))
}

/// Image of a subspace under `m`.
pub fn apply(m: &FieldMatrix, s: &Subspace) -> Result<Subspace> {
    Ok(Subspace::span(&m.matmul(&s.basis)?))
}

pub fn quotient_dim(big: &Subspace, small: &Subspace) -> Result<usize> {
    same_ambient("quotient_dim", big, small)?;
    if !big.contains(small) {
        return Err(Error::NotContained("quotient_dim"));
    }
    Ok(big.dim() - small.dim())
}

/// Matrix of the map `src_big / src_small -> dst_big / dst_small` induced by
/// `m`, written in the greedy complement bases of [`Subspace::complement_of`].
pub fn induced_map_on_quotients(
    m: &FieldMatrix,
    src_big: &Subspace,
    src_small: &Subspace,
    dst_big: &Subspace,
    dst_small: &Subspace,
) -> Result<FieldMatrix> {
    if m.cols() != src_big.ambient_dim() || m.rows() != dst_big.ambient_dim() {
        return Err(Error::DimensionMismatch {
            op: "induced_map_on_quotients",
            left: m.cols(),
            right: src_big.ambient_dim(),
        });
    }
    let src_comp = src_big.complement_of(src_small)?;
    let dst_comp = dst_big.complement_of(dst_small)?;
    if !dst_big.contains(&apply(m, src_big)?) {
        return Err(Error::NotContained("induced map: image of numerator"));
    }
    if !dst_small.contains(&apply(m, src_small)?) {
        return Err(Error::NotContained("induced map: image of denominator"));
    }
    let q = dst_comp.cols();
    let images = m.matmul(&src_comp)?;
    // [dst_comp | dst_small] x = image; the first q coordinates are the answer.
    let system = dst_comp.hstack(&dst_small.basis)?;
    let sol = system
        .solve(&images)?
        .ok_or(Error::NotContained("induced map: solve"))?;
    let idx: Vec<usize> = (0..q).collect();
    Ok(sol.select_rows(&idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn span(p: u32, ambient: usize, vs: &[&[u32]]) -> Subspace {
        let vs: Vec<Vec<u32>> = vs.iter().map(|v| v.to_vec()).collect();
        Subspace::span_vectors(gf(p), ambient, &vs)
    }

    /// All vectors of GF(2)^n.
    fn all_vectors(n: usize) -> Vec<Vec<u32>> {
        (0..1u32 << n)
            .map(|mask| (0..n).map(|i| (mask >> i) & 1).collect())
            .collect()
    }

    /// The set of vectors of a GF(2) subspace, found by enumeration.
    fn members(s: &Subspace) -> Vec<Vec<u32>> {
        all_vectors(s.ambient_dim())
            .into_iter()
            .filter(|v| s.contains_vector(v))
            .collect()
    }

    fn from_members(n: usize, vs: &[Vec<u32>]) -> Subspace {
        Subspace::span_vectors(gf(2), n, vs)
    }

    fn random_subspace(rng: &mut ChaCha8Rng, f: PrimeField, n: usize) -> Subspace {
        let k = rng.gen_range(0..=n + 1);
        Subspace::span(&FieldMatrix::random(f, n, k, rng))
    }

    #[test]
    fn image_examples() {
        let f = gf(2);
        assert!(image(&FieldMatrix::zeros(f, 3, 2)).is_zero());
        assert_eq!(image(&FieldMatrix::zeros(f, 3, 2)).ambient_dim(), 3);
        let inc = FieldMatrix::from_rows(f, &[&[1, 0], &[0, 1], &[0, 0]]);
        assert_eq!(image(&inc), span(2, 3, &[&[1, 0, 0], &[0, 1, 0]]));
        let diag = FieldMatrix::from_rows(f, &[&[1], &[1]]);
        assert_eq!(image(&diag), span(2, 2, &[&[1, 1]]));
    }

    #[test]
    fn kernel_examples() {
        let f = gf(2);
        for n in 0..4 {
            assert!(kernel(&FieldMatrix::identity(f, n)).is_zero());
        }
        let m = FieldMatrix::from_rows(f, &[&[0, 1, 0]]);
        assert_eq!(kernel(&m), span(2, 3, &[&[1, 0, 0], &[0, 0, 1]]));
        let empty = FieldMatrix::zeros(f, 0, 2);
        assert_eq!(kernel(&empty), Subspace::full(f, 2));
    }

    #[test]
    fn sum_examples() {
        let f = gf(2);
        let a = span(2, 2, &[&[1, 0]]);
        assert_eq!(sum(&a, &Subspace::zero(f, 2)).unwrap(), a);
        let b = span(2, 2, &[&[0, 1]]);
        assert_eq!(sum(&a, &b).unwrap(), Subspace::full(f, 2));
        // fV^- + U^- at t = 2 of the 121/011 ladder
        assert_eq!(sum(&Subspace::zero(f, 2), &a).unwrap(), a);
        assert!(matches!(
            sum(&a, &Subspace::zero(f, 3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn intersect_examples() {
        let f = gf(2);
        let diag = span(2, 2, &[&[1, 1]]);
        let e1 = span(2, 2, &[&[1, 0]]);
        assert!(intersect(&diag, &e1).unwrap().is_zero());
        assert_eq!(intersect(&diag, &Subspace::full(f, 2)).unwrap(), diag);
        assert_eq!(intersect(&e1, &e1).unwrap(), e1);
    }

    #[test]
    fn preimage_examples() {
        let f = gf(2);
        let m = FieldMatrix::from_rows(f, &[&[1, 0], &[0, 0]]);
        assert_eq!(
            preimage(&m, &Subspace::full(f, 2)).unwrap(),
            Subspace::full(f, 2)
        );
        assert_eq!(preimage(&m, &Subspace::zero(f, 2)).unwrap(), kernel(&m));
        // enumerate GF(2)^2: every v has m v in span{(1,0)}
        let target = span(2, 2, &[&[1, 0]]);
        let expected: Vec<Vec<u32>> = all_vectors(2)
            .into_iter()
            .filter(|v| target.contains_vector(&m.mul_vec(v).unwrap()))
            .collect();
        assert_eq!(expected.len(), 4);
        assert_eq!(preimage(&m, &target).unwrap(), Subspace::full(f, 2));
    }

    #[test]
    fn quotient_dim_examples() {
        let f = gf(2);
        let a = span(2, 2, &[&[1, 1]]);
        assert_eq!(quotient_dim(&a, &a).unwrap(), 0);
        assert_eq!(
            quotient_dim(&Subspace::full(f, 2), &Subspace::zero(f, 2)).unwrap(),
            2
        );
        assert_eq!(quotient_dim(&a, &Subspace::zero(f, 2)).unwrap(), 1);
        assert_eq!(
            quotient_dim(&a, &span(2, 2, &[&[1, 0]])),
            Err(Error::NotContained("quotient_dim"))
        );
    }

    #[test]
    fn induced_map_examples() {
        let f = gf(2);
        let full = Subspace::full(f, 3);
        let zero = Subspace::zero(f, 3);
        let id = induced_map_on_quotients(&FieldMatrix::identity(f, 3), &full, &zero, &full, &zero)
            .unwrap();
        assert_eq!(id, FieldMatrix::identity(f, 3));

        // <(1,1)>/0 -> <1>/0 under (0 1)
        let m = FieldMatrix::from_rows(f, &[&[0, 1]]);
        let src = span(2, 2, &[&[1, 1]]);
        let m1 = induced_map_on_quotients(
            &m,
            &src,
            &Subspace::zero(f, 2),
            &Subspace::full(f, 1),
            &Subspace::zero(f, 1),
        )
        .unwrap();
        assert_eq!(m1, FieldMatrix::from_rows(f, &[&[1]]));

        let z = induced_map_on_quotients(
            &FieldMatrix::identity(f, 2),
            &src,
            &src,
            &Subspace::full(f, 2),
            &src,
        )
        .unwrap();
        assert_eq!(z.shape(), (1, 0));

        // not well defined: small does not land in small
        let err = induced_map_on_quotients(
            &FieldMatrix::identity(f, 2),
            &Subspace::full(f, 2),
            &src,
            &Subspace::full(f, 2),
            &Subspace::zero(f, 2),
        );
        assert!(matches!(err, Err(Error::NotContained(_))));
    }

    #[test]
    fn canonical_form_is_unique() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [2, 3, 5] {
            let f = gf(p);
            for _ in 0..200 {
                let n = rng.gen_range(0..6);
                let s = random_subspace(&mut rng, f, n);
                // same span, different generators
                let k = s.dim();
                let mix = FieldMatrix::random_invertible(f, k, &mut rng);
                let extra = FieldMatrix::random(f, k, rng.gen_range(0..3), &mut rng);
                let gens = s.basis().matmul(&mix).unwrap().hstack(&s.basis().matmul(&extra).unwrap()).unwrap();
                assert_eq!(Subspace::span(&gens), s);
            }
        }
    }

    #[test]
    fn modular_law_and_adjunction() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for p in [2, 5] {
            let f = gf(p);
            for _ in 0..300 {
                let n = rng.gen_range(0..6);
                let a = random_subspace(&mut rng, f, n);
                let b = random_subspace(&mut rng, f, n);
                let s = sum(&a, &b).unwrap();
                let i = intersect(&a, &b).unwrap();
                assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
                assert!(a.contains(&i) && b.contains(&i) && s.contains(&a) && s.contains(&b));

                let m = FieldMatrix::random(f, n, rng.gen_range(0..5), &mut rng);
                let pre = preimage(&m, &a).unwrap();
                assert!(a.contains(&apply(&m, &pre).unwrap()));
                assert!(pre.contains(&kernel(&m)));
            }
        }
    }

    #[test]
    fn exhaustive_gf2_agreement() {
        // every pair of subspaces of GF(2)^n for n <= 3, compared against set
        // operations on explicit vector lists
        for n in 0..=3usize {
            let vectors = all_vectors(n);
            let mut subspaces: Vec<Subspace> = Vec::new();
            for mask in 0u32..(1 << vectors.len()) {
                let gens: Vec<Vec<u32>> = vectors
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, v)| v.clone())
                    .collect();
                let s = from_members(n, &gens);
                if !subspaces.contains(&s) {
                    subspaces.push(s);
                }
            }
            let expected_count = [1, 2, 5, 16][n];
            assert_eq!(subspaces.len(), expected_count);
            for a in &subspaces {
                let ma = members(a);
                for b in &subspaces {
                    let mb = members(b);
                    let inter: Vec<Vec<u32>> =
                        ma.iter().filter(|v| mb.contains(v)).cloned().collect();
                    assert_eq!(members(&intersect(a, b).unwrap()), inter);
                    let sums: Vec<Vec<u32>> = ma
                        .iter()
                        .flat_map(|x| mb.iter().map(move |y| (0..n).map(|i| (x[i] + y[i]) % 2).collect()))
                        .collect();
                    assert_eq!(sum(a, b).unwrap(), from_members(n, &sums));
                }
            }
            for rows in 0..=3usize {
                for bits in 0u32..(1 << (rows * n)) {
                    let data: Vec<u32> = (0..rows * n).map(|i| (bits >> i) & 1).collect();
                    let m = FieldMatrix::new(gf(2), rows, n, data).unwrap();
                    let img: Vec<Vec<u32>> = vectors.iter().map(|v| m.mul_vec(v).unwrap()).collect();
                    assert_eq!(image(&m), Subspace::span_vectors(gf(2), rows, &img));
                    let ker: Vec<Vec<u32>> = vectors
                        .iter()
                        .filter(|v| m.mul_vec(v).unwrap().iter().all(|&x| x == 0))
                        .cloned()
                        .collect();
                    assert_eq!(members(&kernel(&m)), ker);
                    if rows == 2 {
                        let target = from_members(2, &[vec![1, 1]]);
                        let pre: Vec<Vec<u32>> = vectors
                            .iter()
                            .filter(|v| target.contains_vector(&m.mul_vec(v).unwrap()))
                            .cloned()
                            .collect();
                        assert_eq!(members(&preimage(&m, &target).unwrap()), pre);
                    }
                }
            }
        }
    }
}
