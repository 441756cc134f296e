//! Bar constructions and homology compared against the brute-force oracle.

use segal_core::algebra::{enumerate_abelian_monoids, FinAbGroup, FinAbMonoid, GMonoid};
use segal_core::bar::{bar, delooping_report, g_action_on_bar, iterate_bar, DEFAULT_BUDGET};
use segal_core::gamma::{build_gamma_set, build_ggamma_set, TrivialAction};
use segal_core::homology::{
    homology, induced_map_on_homology, normalized_chain_complex, HomologyGroup,
};
use segal_core::simplicial::{suspension, TruncatedSimplicialSet};
use segal_oracle::{
    cyclic_table, eilenberg_maclane_low, matrix_nerve, monoid_nerve, product_table, Tables,
};

fn assert_same_tables(ours: &TruncatedSimplicialSet, oracle: &Tables) {
    assert_eq!(ours.sizes(), &oracle.sizes[..]);
    for p in 1..=ours.dim() {
        for i in 0..=p {
            assert_eq!(
                ours.face_table(p, i),
                &oracle.faces[p][i][..],
                "d_{i} at level {p}"
            );
        }
    }
    for p in 0..ours.dim() {
        for i in 0..=p {
            assert_eq!(
                ours.degeneracy_table(p, i),
                &oracle.degeneracies[p][i][..],
                "s_{i} at level {p}"
            );
        }
    }
}

fn oracle_group(torsion: &[u64], free: usize) -> HomologyGroup {
    HomologyGroup::from_cyclic(free, torsion).unwrap()
}

fn our_homology(x: &TruncatedSimplicialSet, p: usize) -> HomologyGroup {
    let c = normalized_chain_complex(x, p + 1).unwrap();
    homology(&c.complex, p).unwrap()
}

#[test]
fn bar_is_the_nerve_for_every_small_monoid() {
    for order in 1..=4 {
        for m in enumerate_abelian_monoids(order) {
            let x = TrivialAction::new(build_gamma_set(&m, 4).unwrap());
            let b = bar(&x, 1, 4, DEFAULT_BUDGET).unwrap();
            assert_same_tables(b.space(), &monoid_nerve(&m.rows(), m.unit(), 4));
        }
    }
}

#[test]
fn first_homology_of_cyclic_nerves() {
    for n in [2usize, 3, 4] {
        let x = TrivialAction::new(build_gamma_set(&FinAbMonoid::cyclic(n), 4).unwrap());
        let b = bar(&x, 1, 4, DEFAULT_BUDGET).unwrap();
        let nerve = monoid_nerve(&cyclic_table(n), 0, 4);
        for p in 0..=2 {
            let (free, torsion) = segal_oracle::homology(&nerve, p);
            assert_eq!(
                our_homology(b.space(), p),
                oracle_group(&torsion, free),
                "n = {n}, H_{p}"
            );
        }
        assert_eq!(our_homology(b.space(), 1), oracle_group(&[n as u64], 0));
    }
}

#[test]
fn klein_group_low_degrees() {
    let klein = FinAbMonoid::cyclic(2).product(&FinAbMonoid::cyclic(2));
    let table = product_table(&cyclic_table(2), &cyclic_table(2));
    assert_eq!(klein.rows(), table);
    let x = TrivialAction::new(build_gamma_set(&klein, 4).unwrap());
    let b = bar(&x, 1, 4, DEFAULT_BUDGET).unwrap();
    let nerve = monoid_nerve(&table, 0, 4);
    for p in 0..=2 {
        let (free, torsion) = segal_oracle::homology(&nerve, p);
        assert_eq!(our_homology(b.space(), p), oracle_group(&torsion, free));
        let expected = eilenberg_maclane_low(&[2, 2], 1, p).unwrap();
        let free = expected.iter().filter(|&&c| c == 0).count();
        let torsion: Vec<u64> = expected.into_iter().filter(|&c| c != 0).collect();
        assert_eq!(our_homology(b.space(), p), oracle_group(&torsion, free));
    }
    assert_eq!(our_homology(b.space(), 2), oracle_group(&[2], 0));
}

#[test]
fn circle_and_wedges() {
    assert_eq!(
        our_homology(&suspension(2, 0, 3), 1),
        HomologyGroup::free(1)
    );
    assert_eq!(
        our_homology(&suspension(3, 0, 3), 1),
        HomologyGroup::free(2)
    );
    assert_eq!(our_homology(&suspension(1, 0, 3), 1), HomologyGroup::zero());
}

#[test]
fn second_delooping_of_z2_is_the_matrix_nerve() {
    let x = TrivialAction::new(build_gamma_set(&FinAbMonoid::cyclic(2), 16).unwrap());
    let b2 = iterate_bar(&x, 2, 4, DEFAULT_BUDGET).unwrap();
    let oracle = matrix_nerve(&cyclic_table(2), 0, 4);
    assert_same_tables(b2.space(), &oracle);
    assert_eq!(b2.space().sizes(), &[1, 2, 16, 512, 65536]);
    let c = normalized_chain_complex(b2.space(), 3).unwrap();
    for p in 0..=2 {
        let (free, torsion) = segal_oracle::homology(&oracle, p);
        assert_eq!(
            homology(&c.complex, p).unwrap(),
            oracle_group(&torsion, free)
        );
    }
    assert_eq!(homology(&c.complex, 1).unwrap(), HomologyGroup::zero());
    assert_eq!(homology(&c.complex, 2).unwrap(), oracle_group(&[2], 0));
}

#[test]
fn inversion_acts_by_minus_one() {
    for n in [3usize, 4] {
        let a = GMonoid::inversion(&FinAbGroup::cyclic(n));
        let x = build_ggamma_set(&a, 4).unwrap();
        let b = bar(&x, 1, 4, DEFAULT_BUDGET).unwrap();
        let f = g_action_on_bar(&b, 1);
        let induced = induced_map_on_homology(f, b.space(), b.space(), 1).unwrap();
        assert_eq!(induced.source, oracle_group(&[n as u64], 0));
        assert!(induced.is_scalar(-1), "n = {n}");
        assert!(!induced.is_identity());
    }
}

#[test]
fn delooping_report_agrees_with_the_oracle() {
    for (table, factors) in [
        (cyclic_table(2), vec![2u64]),
        (cyclic_table(3), vec![3]),
        (cyclic_table(4), vec![4]),
        (
            product_table(&cyclic_table(2), &cyclic_table(2)),
            vec![2, 2],
        ),
    ] {
        let m = FinAbMonoid::new(table.clone(), 0).unwrap();
        let x = TrivialAction::new(build_gamma_set(&m, 4).unwrap());
        let report = delooping_report(&x, 1, 4, 2, DEFAULT_BUDGET).unwrap();
        let nerve = monoid_nerve(&table, 0, 4);
        assert_eq!(report.coefficients.as_deref(), Some(&factors[..]));
        for d in &report.degrees {
            let (free, torsion) = segal_oracle::homology(&nerve, d.degree);
            assert_eq!(d.group, oracle_group(&torsion, free));
            assert_eq!(d.matches_expected(), Some(true));
        }
    }
}
