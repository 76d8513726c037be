//! Quantale layer checked against naive recomputation: exhaustive
//! distributivity over every subset, relation composition by mask
//! arithmetic, subset products in the group powerset, and endomap
//! composition read off the hom tables.

use std::sync::Arc;

use qf::catalog;
use qf::error::Error;
use qf::iso::quantale_iso;
use qf::quantale::{endo_quantale, relation_quantale, Quantale};

const BUDGET: usize = 20000;

fn small_catalog() -> Vec<(String, Arc<Quantale>)> {
    catalog::catalog_quantales()
        .into_iter()
        .filter(|(_, q)| q.n() <= 16)
        .collect()
}

#[test]
fn axioms_hold_under_naive_recomputation() {
    for (name, q) in small_catalog() {
        let n = q.n();
        let l = q.lattice();
        let join_of = |mask: usize| -> usize {
            (0..n)
                .filter(|&x| mask >> x & 1 == 1)
                .fold(l.bottom(), |acc, x| l.join2(acc, x))
        };
        for a in 0..n {
            assert_eq!(q.mul(a, q.unit()), a, "right unit in {name}");
            assert_eq!(q.mul(q.unit(), a), a, "left unit in {name}");
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(
                        q.mul(q.mul(a, b), c),
                        q.mul(a, q.mul(b, c)),
                        "associativity in {name}"
                    );
                }
            }
            for mask in 0..1usize << n {
                let left = q.mul(a, join_of(mask));
                let right = (0..n)
                    .filter(|&x| mask >> x & 1 == 1)
                    .fold(l.bottom(), |acc, x| l.join2(acc, q.mul(a, x)));
                assert_eq!(left, right, "left distributivity in {name}");
                let left = q.mul(join_of(mask), a);
                let right = (0..n)
                    .filter(|&x| mask >> x & 1 == 1)
                    .fold(l.bottom(), |acc, x| l.join2(acc, q.mul(x, a)));
                assert_eq!(left, right, "right distributivity in {name}");
            }
        }
    }
}

#[test]
fn relation_composition_matches_mask_arithmetic() {
    // Elements of the relation quantale are pair masks with bit
    // `i * n + j` standing for the pair `(i, j)`.
    let n = 2;
    let q = relation_quantale(n, BUDGET).unwrap();
    assert_eq!(q.n(), 16);
    assert_eq!(q.unit(), 0b1001, "unit is the diagonal");
    for a in 0..q.n() {
        for b in 0..q.n() {
            let mut expected = 0usize;
            for i in 0..n {
                for k in 0..n {
                    if (0..n).any(|j| a >> (i * n + j) & 1 == 1 && b >> (j * n + k) & 1 == 1) {
                        expected |= 1 << (i * n + k);
                    }
                }
            }
            assert_eq!(q.mul(a, b), expected, "composition of {a} and {b}");
        }
    }
    for a in 0..q.n() {
        for b in 0..q.n() {
            assert_eq!(q.lattice().leq(a, b), a & !b == 0, "order is inclusion");
        }
    }
}

#[test]
fn group_powerset_multiplies_subsets_elementwise() {
    let q = catalog::powerset_z2();
    assert_eq!(q.n(), 4);
    assert_eq!(q.unit(), 1, "unit is the singleton of the group unit");
    // Masks over the two-element group, addition mod 2.
    for a in 0..4usize {
        for b in 0..4usize {
            let mut expected = 0usize;
            for x in 0..2 {
                for y in 0..2 {
                    if a >> x & 1 == 1 && b >> y & 1 == 1 {
                        expected |= 1 << ((x + y) % 2);
                    }
                }
            }
            assert_eq!(q.mul(a, b), expected);
        }
    }
    assert!(q.commutativity_witness().is_none());
    assert!(
        !q.is_locale(),
        "the group flips the singleton of the generator"
    );
}

#[test]
fn endomorphism_quantale_composes_with_the_right_factor_first() {
    let c3 = catalog::chain(3);
    let (q, hom) = endo_quantale(&c3, BUDGET).unwrap();
    assert_eq!(q.n(), 6);
    let identity: Vec<usize> = (0..c3.n()).collect();
    assert_eq!(hom.table_of(q.unit()), identity.as_slice());
    for f in 0..q.n() {
        for g in 0..q.n() {
            let composed: Vec<usize> = (0..c3.n())
                .map(|x| hom.table_of(f)[hom.table_of(g)[x]])
                .collect();
            assert_eq!(hom.table_of(q.mul(f, g)), composed.as_slice());
        }
    }
}

#[test]
fn locale_and_commutativity_classification() {
    for k in 2..=5 {
        let q = catalog::chain_locale(k);
        assert!(q.is_locale());
        assert!(q.commutativity_witness().is_none());
        assert!(q.idempotency_witness().is_none());
        for a in 0..q.n() {
            for b in 0..q.n() {
                assert_eq!(q.mul(a, b), a.min(b), "chain locales multiply by meet");
            }
        }
    }
    assert!(catalog::rel2().commutativity_witness().is_some());
    assert!(!catalog::rel2().is_locale());
    assert!(catalog::mat2_two()
        .quantale
        .commutativity_witness()
        .is_some());
    assert!(catalog::end_c3().commutativity_witness().is_some());
}

#[test]
fn opposite_is_an_involution_and_transposition_dualizes_relations() {
    for (name, q) in small_catalog() {
        let op = q.opposite().unwrap();
        for a in 0..q.n() {
            for b in 0..q.n() {
                assert_eq!(op.mul(a, b), q.mul(b, a), "opposite of {name}");
            }
        }
        let back = op.opposite().unwrap();
        assert_eq!(back.mult_table(), q.mult_table());
        assert_eq!(back.unit(), q.unit());
    }
    let rel = catalog::rel2();
    let witness = quantale_iso(&rel.opposite().unwrap(), &rel).unwrap();
    // Transposition realizes the duality concretely.
    let transpose = |mask: usize| -> usize {
        (0..4)
            .filter(|&p| mask >> p & 1 == 1)
            .fold(0, |acc, p| acc | 1 << ((p % 2) * 2 + p / 2))
    };
    for a in 0..rel.n() {
        for b in 0..rel.n() {
            let lhs = transpose(rel.mul(b, a));
            let rhs = rel.mul(transpose(a), transpose(b));
            assert_eq!(lhs, rhs);
        }
    }
    assert_eq!(witness.len(), rel.n());
}

#[test]
fn validate_rejects_broken_multiplication() {
    let q = catalog::chain_locale(4);
    let n = q.n();
    let mut mult = q.mult_table().to_vec();
    // Breaking one product of two incomparable-with-unit elements keeps
    // the unit laws but loses associativity or distributivity.
    mult[n + 2] = 3;
    let err = Quantale::validate(q.lattice().clone(), mult, q.unit()).unwrap_err();
    assert!(matches!(
        err,
        Error::NotAssociative(..) | Error::NotDistributive { .. } | Error::UnitFails(..)
    ));
    let err = Quantale::validate(q.lattice().clone(), q.mult_table().to_vec(), 0).unwrap_err();
    assert!(matches!(err, Error::UnitFails(..)));
}
