use dicirc_core::fourier::{
    check_orbit_transversal_lemma, convolve, coset_profile, dft, is_transversal, unit_orbits, IntegerFunction,
};
use dicirc_core::search::enumerate_specs;
use dicirc_core::{build_graph, canonicalize, AutomorphismParams, BitSet, ResidueSet};
use proptest::prelude::*;

fn phi(r: usize) -> usize {
    (1..=r).filter(|&u| num_gcd(u, r) == 1).count()
}

fn num_gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn function(max_m: usize) -> impl Strategy<Value = IntegerFunction> {
    (1..=max_m).prop_flat_map(|m| prop::collection::vec(-3i64..=3, m).prop_map(IntegerFunction::new))
}

fn pair(max_m: usize) -> impl Strategy<Value = (IntegerFunction, IntegerFunction)> {
    (1..=max_m).prop_flat_map(|m| {
        (
            prop::collection::vec(-3i64..=3, m).prop_map(IntegerFunction::new),
            prop::collection::vec(-3i64..=3, m).prop_map(IntegerFunction::new),
        )
    })
}

fn residue_set(max_m: u32) -> impl Strategy<Value = ResidueSet> {
    (1..=max_m).prop_flat_map(|m| {
        prop::collection::vec(any::<bool>(), m as usize)
            .prop_map(move |bits| ResidueSet::from_predicate(m, |i| bits[i as usize]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn convolution_commutes((f, g) in pair(64)) {
        prop_assert_eq!(convolve(&f, &g).unwrap(), convolve(&g, &f).unwrap());
    }

    #[test]
    fn convolution_sum_is_product_of_sums((f, g) in pair(64)) {
        prop_assert_eq!(convolve(&f, &g).unwrap().sum(), f.sum() * g.sum());
    }

    #[test]
    fn dft_at_zero_is_the_sum(f in function(128)) {
        let v = dft(&f).at(0);
        prop_assert!((v.re - f.sum() as f64).abs() < 1e-9);
        prop_assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn coset_profile_counts_the_set(a in residue_set(128)) {
        let m = a.modulus() as usize;
        for r in (1..=m).filter(|r| m.is_multiple_of(*r)) {
            let p = coset_profile(&a, r).unwrap();
            prop_assert_eq!(p.total(), a.len());
            let z = dft(&IntegerFunction::characteristic(&a)).at(m / r);
            prop_assert!((p.evaluate() - z).norm() < 1e-9);
            if is_transversal(&a, r).unwrap() && r > 1 {
                prop_assert!(z.norm() < 1e-9);
            }
        }
    }

    #[test]
    fn translate_and_scale_preserve_size(a in residue_set(64), s in -200i64..200) {
        prop_assert_eq!(a.translate(s).len(), a.len());
        prop_assert_eq!(a.translate(s).translate(-s), a.clone());
        prop_assert_eq!(a.negate().negate(), a.clone());
        let m = a.modulus() as i64;
        let unit = (2..m).find(|&u| num_gcd(u as usize, m as usize) == 1).unwrap_or(1);
        prop_assert_eq!(a.scale(unit).len(), a.len());
    }

    #[test]
    fn bitset_ops_match_vec_bool(xs in prop::collection::vec(any::<bool>(), 1..300), ys in prop::collection::vec(any::<bool>(), 1..300)) {
        let len = xs.len().min(ys.len());
        let a = BitSet::from_indices(len, (0..len).filter(|&i| xs[i]));
        let b = BitSet::from_indices(len, (0..len).filter(|&i| ys[i]));
        let both = (0..len).filter(|&i| xs[i] && ys[i]).count();
        prop_assert_eq!(a.intersection_count(&b), both);
        prop_assert_eq!(a.count(), (0..len).filter(|&i| xs[i]).count());
        let mut u = a.clone();
        u.union_with(&b);
        prop_assert_eq!(u.to_vec(), (0..len).filter(|&i| xs[i] || ys[i]).collect::<Vec<_>>());
        prop_assert_eq!(a.complement().count(), len - a.count());
        prop_assert_eq!(a.is_disjoint(&b), both == 0);
    }

    #[test]
    fn canonical_form_is_automorphism_invariant(n in 1u32..=7, seed in any::<u64>()) {
        let specs: Vec<_> = enumerate_specs(n, false).unwrap().collect();
        let spec = &specs[(seed as usize) % specs.len()];
        let params = AutomorphismParams::all(n);
        let p = &params[(seed >> 32) as usize % params.len()];
        let image = dicirc_core::group::apply_automorphism(p, spec).unwrap();
        prop_assert_eq!(canonicalize(&image), canonicalize(spec));
        prop_assert_eq!(build_graph(&image).edge_count(), build_graph(spec).edge_count());
    }
}

#[test]
fn convolution_theorem_on_1000_pairs() {
    let mut runner = proptest::test_runner::TestRunner::new(ProptestConfig::with_cases(1000));
    let worst = std::cell::Cell::new(0.0f64);
    runner
        .run(&pair(128), |(f, g)| {
            let lhs = dft(&convolve(&f, &g).unwrap());
            let rhs = dft(&f).pointwise_mul(&dft(&g));
            let d = lhs.max_distance(&rhs);
            worst.set(worst.get().max(d));
            prop_assert!(d <= 1e-9, "distance {d}");
            Ok(())
        })
        .unwrap();
    assert!(worst.get() <= 1e-9);
}

#[test]
fn coset_profile_matches_dft_exhaustively() {
    for m in 1..=16u32 {
        for mask in 0u32..(1 << m) {
            let a = ResidueSet::from_predicate(m, |i| mask >> i & 1 == 1);
            let f = dft(&IntegerFunction::characteristic(&a));
            for r in (1..=m as usize).filter(|r| (m as usize).is_multiple_of(*r)) {
                let p = coset_profile(&a, r).unwrap();
                assert!((p.evaluate() - f.at(m as usize / r)).norm() < 1e-9, "m={m}, A={a}, r={r}");
                assert_eq!(p.total(), a.len());
            }
        }
    }
}

#[test]
fn unit_orbit_sizes_are_totients() {
    for m in 1..=64 {
        let part = unit_orbits(m);
        let mut seen = vec![0; m];
        for o in &part.orbits {
            assert_eq!(m % o.order, 0);
            assert_eq!(o.members.len(), phi(o.order), "m={m}, r={}", o.order);
            for &x in &o.members {
                seen[x] += 1;
                assert_eq!(m / num_gcd(x, m), o.order);
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
        let divisors = (1..=m).filter(|d| m % d == 0).count();
        assert_eq!(part.orbits.len(), divisors);
    }
}

#[test]
fn orbit_unions_have_real_integer_transforms() {
    for m in 1..=40usize {
        let part = unit_orbits(m);
        let count = part.orbits.len();
        for mask in 0u64..(1 << count) {
            let a = ResidueSet::from_residues(
                m as u32,
                part.orbits
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .flat_map(|(_, o)| o.members.iter().map(|&x| x as i64)),
            );
            assert!(part.is_union_of_orbits(&a));
            let f = dft(&IntegerFunction::characteristic(&a));
            for z in 0..m {
                let v = f.at(z);
                assert!(v.im.abs() <= 1e-9, "m={m}, A={a}, z={z}");
                assert!((v.re - v.re.round()).abs() <= 1e-6, "m={m}, A={a}, z={z}");
            }
        }
    }
}

#[test]
fn orbit_closed_transversals_obey_the_lemma() {
    let mut exercised = 0;
    for m in 2..=24usize {
        let part = unit_orbits(m);
        let count = part.orbits.len();
        for p in (2..=m).filter(|&p| m % p == 0 && (2..p).all(|d| p % d != 0)) {
            for mask in 0u64..(1 << count) {
                let a = ResidueSet::from_residues(
                    m as u32,
                    part.orbits
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .flat_map(|(_, o)| o.members.iter().map(|&x| x as i64)),
                );
                if is_transversal(&a, m / p).unwrap() {
                    exercised += 1;
                    assert!(check_orbit_transversal_lemma(&a, p).unwrap(), "m={m}, p={p}, A={a}");
                } else {
                    assert!(check_orbit_transversal_lemma(&a, p).is_err());
                }
            }
        }
    }
    assert!(exercised > 0);
}
