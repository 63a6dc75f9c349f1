use indumatch::blmatch::{chi, is_eps_matching};
use indumatch::fixtures::two_summand_ladder;
use indumatch::induced::{m_matching, m_value, x_module, y_minus};
use indumatch::ladders::{from_code, random_ladder_with, random_module, random_morphism};
use indumatch::persmod::{
    direct_sum, direct_sum_morphism, image_factorization, interval_module, one_eps_morphism, persistence_basis,
    shift_module, shift_morphism,
};
use indumatch::subspace;
use indumatch::{Barcode, GridInterval, Morphism, PersistenceModule, PrimeField};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field(odd: bool) -> PrimeField {
    if odd {
        PrimeField::new(5).unwrap()
    } else {
        PrimeField::GF2
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn iv(a: usize, b: usize) -> GridInterval {
    GridInterval::new(a, b)
}

/// Random interval of `1..=n`.
fn interval<R: Rng>(n: usize, r: &mut R) -> GridInterval {
    let a = r.gen_range(1..=n);
    iv(a, r.gen_range(a..=n))
}

fn nonzero(f: &Morphism) -> bool {
    f.comps().iter().any(|c| c.rank() > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn barcode_counts_dimensions(seed: u64, odd: bool, n in 1usize..=6) {
        let m = random_module(n, 4, field(odd), &mut rng(seed));
        let b = m.barcode();
        for t in 1..=n {
            prop_assert_eq!(b.dim_at(t), m.dim(t));
        }
    }

    #[test]
    fn barcode_of_direct_sum_is_union(seed: u64, odd: bool, n in 1usize..=5) {
        let mut r = rng(seed);
        let x = random_module(n, 3, field(odd), &mut r);
        let y = random_module(n, 3, field(odd), &mut r);
        prop_assert_eq!(direct_sum(&x, &y).unwrap().barcode(), x.barcode().union(&y.barcode()));
    }

    #[test]
    fn interval_module_has_one_bar(n in 1usize..=7, a in 1usize..=7, len in 0usize..7) {
        prop_assume!(a <= n && a + len <= n);
        let i = iv(a, a + len);
        prop_assert_eq!(interval_module(n, PrimeField::GF2, i).unwrap().barcode(), Barcode::from_pairs([(i, 1)]));
    }

    #[test]
    fn persistence_basis_is_valid(seed: u64, odd: bool, n in 1usize..=6) {
        let m = random_module(n, 4, field(odd), &mut rng(seed));
        let b = persistence_basis(&m);
        prop_assert!(b.verify(&m).is_ok());
        prop_assert_eq!(b.barcode(), m.barcode());
    }

    /// Structure maps carry `V±_I(s)` onto `V±_I(t)`.
    #[test]
    fn v_spaces_are_carried_forward(seed: u64, odd: bool) {
        let mut r = rng(seed);
        let m = random_module(5, 3, field(odd), &mut r);
        let i = interval(5, &mut r);
        for s in i.start..=i.end {
            for t in s..=i.end {
                let rho = m.composite(s, t).unwrap();
                prop_assert_eq!(subspace::apply(&rho, &m.v_plus(&i, s).unwrap()).unwrap(), m.v_plus(&i, t).unwrap());
                prop_assert_eq!(subspace::apply(&rho, &m.v_minus(&i, s).unwrap()).unwrap(), m.v_minus(&i, t).unwrap());
            }
        }
    }

    /// Target structure maps carry `Y-_IJ(s)` onto `Y-_IJ(t)` across `I ∩ J`.
    #[test]
    fn y_minus_is_carried_forward(seed: u64, odd: bool) {
        let f = random_ladder_with(5, 3, field(odd), &mut rng(seed));
        for i in f.source().barcode().intervals() {
            for j in f.target().barcode().intervals() {
                let Some(s) = i.intersect(&j) else { continue };
                for a in s.start..=s.end {
                    let ya = y_minus(&f, &i, &j, a).unwrap();
                    for b in a..=s.end {
                        let phi = f.target().composite(a, b).unwrap();
                        prop_assert_eq!(subspace::apply(&phi, &ya).unwrap(), y_minus(&f, &i, &j, b).unwrap());
                    }
                }
            }
        }
    }

    /// `M_f(I, J)` vanishes unless `J` starts and ends no later than `I`
    /// and the two overlap.
    #[test]
    fn m_vanishes_off_the_matching_order(seed: u64, odd: bool) {
        let f = random_ladder_with(5, 3, field(odd), &mut rng(seed));
        for ((i, j), c) in m_matching(&f).unwrap().iter() {
            prop_assert!(c > 0);
            prop_assert!(i.is_matchable_into(&j), "M({}, {}) = {}", i, j, c);
        }
    }

    #[test]
    fn interval_to_interval(n in 1usize..=6, seed: u64, odd: bool) {
        let mut r = rng(seed);
        let (i, j) = (interval(n, &mut r), interval(n, &mut r));
        let p = field(odd);
        let f = random_morphism(&interval_module(n, p, i).unwrap(), &interval_module(n, p, j).unwrap(), &mut r).unwrap();
        let x = x_module(&f, &i, &j).unwrap();
        if nonzero(&f) {
            prop_assert!(i.is_matchable_into(&j));
            prop_assert_eq!(x.barcode(), Barcode::from_pairs([(i.intersect(&j).unwrap(), 1)]));
        } else {
            prop_assert!(x.is_zero());
        }
    }

    /// A nonzero `k_I -> U` gives one nonzero `X_IJ`, an interval
    /// submodule of `k_{I ∩ J}`.
    #[test]
    fn interval_domain(seed: u64, odd: bool) {
        let mut r = rng(seed);
        let p = field(odd);
        let i = interval(5, &mut r);
        let u = random_module(5, 3, p, &mut r);
        let f = random_morphism(&interval_module(5, p, i).unwrap(), &u, &mut r).unwrap();
        prop_assume!(nonzero(&f));
        let mut hits = Vec::new();
        for j in u.barcode().intervals() {
            let b = x_module(&f, &i, &j).unwrap().barcode();
            if !b.is_empty() {
                hits.push((j, b));
            }
        }
        prop_assert_eq!(hits.len(), 1, "{:?}", hits);
        let (j, b) = &hits[0];
        let s = i.intersect(j).unwrap();
        prop_assert_eq!(b.total(), 1);
        let bar = b.intervals().next().unwrap();
        prop_assert!(bar.end == s.end && s.start <= bar.start);
    }

    /// `X_IJ` of the shifted identity is `k_I` to the multiplicity of `I^eps`
    /// in `V`, and zero off the diagonal.
    #[test]
    fn shifted_identity(seed: u64, odd: bool, eps in 0usize..=2) {
        let v = random_module(5, 3, field(odd), &mut rng(seed));
        let s = shift_morphism(&Morphism::identity(&v), eps).unwrap();
        let bv = v.barcode();
        for i in GridInterval::all(5 - eps) {
            for j in GridInterval::all(5 - eps) {
                let want = if i == j { bv.multiplicity(&iv(i.start, i.end + eps)) } else { 0 };
                prop_assert_eq!(m_value(&s, &i, &j).unwrap(), want, "I {} J {}", i, j);
            }
        }
    }

    /// Bars of the shifted module are the bars of `V` trimmed by `eps` at
    /// the right.
    #[test]
    fn shift_trims_bars(seed: u64, odd: bool, eps in 0usize..=2) {
        let v = random_module(5, 3, field(odd), &mut rng(seed));
        let mut want = Barcode::new();
        for (i, c) in v.barcode().iter() {
            if i.start + eps <= i.end {
                want.add(iv(i.start, i.end - eps), c);
            }
        }
        prop_assert_eq!(shift_module(&v, eps).unwrap().barcode(), want);
    }

    /// Every pair of `χ_f` goes down in the matching order.
    #[test]
    fn chi_pairs_are_ordered(seed: u64, odd: bool) {
        let f = random_ladder_with(6, 4, field(odd), &mut rng(seed));
        for (from, to) in chi(&f).unwrap().pairs() {
            prop_assert!(from.0.is_matchable_into(&to.0), "{} -> {}", from.0, to.0);
        }
    }

    /// The bars of `Im f` are the overlaps of the pairs of `χ_f`.
    #[test]
    fn image_bars_are_chi_overlaps(seed: u64, odd: bool) {
        let f = random_ladder_with(6, 4, field(odd), &mut rng(seed));
        let mut overlaps = Barcode::new();
        for (from, to) in chi(&f).unwrap().pairs() {
            overlaps.add(from.0.intersect(&to.0).unwrap(), 1);
        }
        prop_assert_eq!(image_factorization(&f).unwrap().image.barcode(), overlaps);
    }

    /// `χ` of `V|_{1..n-eps} -> V_eps` is a `2 eps`-matching.
    #[test]
    fn chi_of_structure_map_is_close(seed: u64, odd: bool, eps in 0usize..=2) {
        let v = random_module(6, 4, field(odd), &mut rng(seed));
        let g = one_eps_morphism(&v, eps).unwrap();
        let sigma = chi(&g).unwrap();
        let (bv, bu) = (g.source().barcode(), g.target().barcode());
        prop_assert_eq!(is_eps_matching(&sigma, &bv, &bu, 2 * eps).unwrap(), None);
    }

    /// `M` adds over direct sums of random ladders.
    #[test]
    fn m_is_additive(seed: u64, odd: bool) {
        let mut r = rng(seed);
        let f = random_ladder_with(4, 3, field(odd), &mut r);
        let g = random_ladder_with(4, 3, field(odd), &mut r);
        let fg = direct_sum_morphism(&f, &g).unwrap();
        prop_assert_eq!(m_matching(&fg).unwrap(), m_matching(&f).unwrap().merge(&m_matching(&g).unwrap()));
    }
}

#[test]
fn chi_is_not_additive() {
    let p = PrimeField::GF2;
    let whole = two_summand_ladder(p);
    let a = from_code(&"000/011".parse().unwrap(), p).unwrap();
    let b = from_code(&"110/010".parse().unwrap(), p).unwrap();
    let parts = chi(&a).unwrap().counts().merge(&chi(&b).unwrap().counts());
    assert_ne!(chi(&whole).unwrap().counts(), parts);
    assert_eq!(m_matching(&whole).unwrap(), m_matching(&a).unwrap().merge(&m_matching(&b).unwrap()));
}

#[test]
fn zero_module_has_no_bars() {
    let z = PersistenceModule::zero(PrimeField::GF2, 4);
    assert!(z.barcode().is_empty());
    assert!(m_matching(&Morphism::identity(&z)).unwrap().is_empty());
}
