//! Lattice layer checked against independent enumerations: a census of
//! all small lattices built from raw order relations, closed-form map
//! counts between chains, and splitting and biproduct identities.

use std::collections::BTreeSet;

use qf::catalog;
use qf::error::Error;
use qf::iso::lattice_iso;
use qf::lattice::{all_sup_maps, biproduct, is_sup_map, split_idempotent, Lattice, SupMap};

/// Upper-triangular strict-order masks on `n` points, filtered down to
/// lattices and canonicalized over all relabelings that keep the order
/// extendable. Every finite lattice order embeds in some listing order,
/// so this enumeration is complete up to isomorphism.
fn census(n: usize) -> BTreeSet<Vec<bool>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut seen = BTreeSet::new();
    'mask: for mask in 0u32..1 << pairs.len() {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                leq[i * n + j] = true;
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if leq[i * n + j] && leq[j * n + k] && !leq[i * n + k] {
                        continue 'mask;
                    }
                }
            }
        }
        let join = |leq: &[bool], x: usize, y: usize| -> Option<usize> {
            let uppers: Vec<usize> = (0..n)
                .filter(|&u| leq[x * n + u] && leq[y * n + u])
                .collect();
            uppers
                .iter()
                .copied()
                .find(|&u| uppers.iter().all(|&v| leq[u * n + v]))
        };
        let mut is_lattice = (0..n).any(|b| (0..n).all(|x| leq[b * n + x]));
        for x in 0..n {
            for y in 0..n {
                is_lattice &= join(&leq, x, y).is_some();
            }
        }
        if !is_lattice {
            continue;
        }
        let mut canon: Option<Vec<bool>> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let relabeled: Vec<bool> = (0..n * n)
                .map(|p| leq[perm[p / n] * n + perm[p % n]])
                .collect();
            if canon.as_ref().is_none_or(|c| relabeled < *c) {
                canon = Some(relabeled);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        seen.insert(canon.unwrap());
    }
    seen
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    let Some(i) = (0..n.saturating_sub(1))
        .rev()
        .find(|&i| perm[i] < perm[i + 1])
    else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

#[test]
fn small_lattice_census_matches_catalog() {
    let expected = [1usize, 1, 1, 2, 5];
    for (n, &count) in (1..=5).zip(&expected) {
        assert_eq!(census(n).len(), count, "census at {n} points");
    }
    let reps = catalog::all_lattices_up_to(5).unwrap();
    assert_eq!(reps.len(), expected.iter().sum::<usize>());
    for (i, (an, a)) in reps.iter().enumerate() {
        for (bn, b) in reps.iter().skip(i + 1) {
            assert!(
                lattice_iso(a, b).is_none(),
                "{an} and {bn} are distinct classes"
            );
        }
    }
}

#[test]
fn validate_rejects_non_lattices() {
    let names = |k: usize| (0..k).map(|i| i.to_string()).collect::<Vec<_>>();
    let t = true;
    let f = false;
    // Two incomparable points: no bottom, no joins.
    assert!(matches!(
        Lattice::validate(names(2), &[vec![t, f], vec![f, t]]),
        Err(Error::NoBottom | Error::NoJoin(_, _))
    ));
    // Bottom plus three pairwise-incomparable points: pairs of atoms
    // have two minimal upper bounds once a shared top is missing.
    let leq = vec![
        vec![t, t, t, t],
        vec![f, t, f, f],
        vec![f, f, t, f],
        vec![f, f, f, t],
    ];
    assert!(matches!(
        Lattice::validate(names(4), &leq),
        Err(Error::NoJoin(_, _))
    ));
    // Broken reflexivity.
    assert!(matches!(
        Lattice::validate(names(2), &[vec![t, t], vec![f, f]]),
        Err(Error::NotAPartialOrder { .. })
    ));
}

#[test]
fn chain_map_counts_follow_the_grid_formula() {
    let binomial =
        |n: usize, k: usize| -> usize { (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1)) };
    for m in 1..=5 {
        for n in 1..=5 {
            let maps = all_sup_maps(&catalog::chain(m), &catalog::chain(n));
            assert_eq!(
                maps.len(),
                binomial(m + n - 2, m - 1),
                "maps from chain {m} to chain {n}"
            );
            for f in &maps {
                assert!(is_sup_map(
                    &catalog::chain(m),
                    &catalog::chain(n),
                    f.table()
                ));
            }
        }
    }
}

#[test]
fn splittings_recover_images_of_idempotents() {
    for (name, l) in catalog::catalog_lattices() {
        for e in all_sup_maps(&l, &l) {
            if !e.is_idempotent_endo() {
                continue;
            }
            let s = split_idempotent(&e).unwrap();
            let image: Vec<usize> = {
                let mut v: Vec<usize> = (0..l.n()).map(|x| e.apply(x)).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            assert_eq!(s.members, image, "members of a splitting over {name}");
            let through = s.include.after(&s.project);
            assert_eq!(
                through.table(),
                e.table(),
                "include after project over {name}"
            );
            let around = s.project.after(&s.include);
            assert_eq!(
                around.table(),
                SupMap::identity(&s.object).table(),
                "project after include over {name}"
            );
        }
    }
}

#[test]
fn biproducts_satisfy_the_pairing_property() {
    let l = catalog::diamond();
    let m = catalog::pentagon();
    let parts = biproduct(&[l.clone(), m.clone()], 20000).unwrap();
    assert_eq!(parts.lattice.n(), l.n() * m.n());
    // Every pair of maps out of the factors pairs uniquely through joins
    // of the injections.
    let target = catalog::chain(3);
    for f in all_sup_maps(&l, &target) {
        for g in all_sup_maps(&m, &target) {
            let paired_table: Vec<usize> = (0..parts.lattice.n())
                .map(|x| {
                    target.join2(
                        f.apply(parts.projections[0].apply(x)),
                        g.apply(parts.projections[1].apply(x)),
                    )
                })
                .collect();
            let paired = SupMap::new(parts.lattice.clone(), target.clone(), paired_table).unwrap();
            assert_eq!(paired.after(&parts.injections[0]).table(), f.table());
            assert_eq!(paired.after(&parts.injections[1]).table(), g.table());
        }
    }
}
