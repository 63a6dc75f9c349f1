//! Small morphisms with known barcodes and matchings, shared by tests, the
//! acceptance suite and the CLI.

use crate::field::PrimeField;
use crate::ladders::{from_code, LadderCode};
use crate::matrix::FieldMatrix;
use crate::persmod::{direct_sum_morphism, Morphism, PersistenceModule};

/// `(000/011) ⊕ (110/010)`: `V` has bars `[2,3]` and `[2,2]`, `U` has the
/// single bar `[1,2]`, and `f` sends the `[2,2]` generator onto it.
pub fn two_summand_ladder(field: PrimeField) -> Morphism {
    let a = from_code(&LadderCode::new([0, 0, 0], [0, 1, 1]), field).expect("catalog code");
    let b = from_code(&LadderCode::new([1, 1, 0], [0, 1, 0]), field).expect("catalog code");
    direct_sum_morphism(&a, &b).expect("same grid")
}

/// The thick ladder `121/011`.
pub fn thick_ladder(field: PrimeField) -> Morphism {
    from_code(&LadderCode::new([1, 2, 1], [0, 1, 1]), field).expect("catalog code")
}

/// A morphism on four points with `ℬ(V) = {[1,3],[2,4]}` and
/// `ℬ(U) = {[1,3],[1,4],[2,3]}`.
pub fn four_point_morphism(field: PrimeField) -> Morphism {
    let m = |rows: &[&[i64]]| FieldMatrix::from_rows(field, rows);
    let v = PersistenceModule::new(
        field,
        vec![1, 2, 2, 1],
        vec![m(&[&[1], &[0]]), FieldMatrix::identity(field, 2), m(&[&[0, 1]])],
    )
    .expect("valid module");
    let u = PersistenceModule::new(
        field,
        vec![2, 3, 3, 1],
        vec![
            m(&[&[1, 0], &[0, 1], &[0, 0]]),
            FieldMatrix::identity(field, 3),
            m(&[&[0, 1, 0]]),
        ],
    )
    .expect("valid module");
    let mid = m(&[&[1, 0], &[0, 1], &[0, 1]]);
    let comps = vec![m(&[&[1], &[0]]), mid.clone(), mid, FieldMatrix::identity(field, 1)];
    Morphism::new(v, u, comps).expect("natural")
}
