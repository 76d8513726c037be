//! Built-in lattices and quantales used by the property suites and the
//! command-line interface.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Elem, Lattice};
use crate::matrix::{matrix_quantale, MatrixQuantale};
use crate::quantale::{endo_quantale, powerset_monoid_quantale, relation_quantale, Quantale};

/// Builds a lattice from element names and a strict-order generating set,
/// closing under transitivity.
fn lattice_of(names: &[&str], below: &[(Elem, Elem)]) -> Arc<Lattice> {
    let n = names.len();
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(x, y) in below {
        leq[x][y] = true;
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                if !leq[x][y] {
                    continue;
                }
                for z in 0..n {
                    if leq[y][z] && !leq[x][z] {
                        leq[x][z] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let names = names.iter().map(|s| s.to_string()).collect();
    Lattice::validate(names, &leq).expect("catalog order is a lattice")
}

/// The one-element lattice.
pub fn point() -> Arc<Lattice> {
    chain(1)
}

/// The chain with `k` elements, named `0 < a < b < ... < 1`.
pub fn chain(k: usize) -> Arc<Lattice> {
    assert!(
        (1..=26).contains(&k),
        "chains are built with up to 26 elements"
    );
    let names: Vec<String> = (0..k)
        .map(|i| {
            if i == 0 {
                "0".to_string()
            } else if i == k - 1 {
                "1".to_string()
            } else {
                ((b'a' + (i - 1) as u8) as char).to_string()
            }
        })
        .collect();
    let leq: Vec<Vec<bool>> = (0..k).map(|i| (0..k).map(|j| i <= j).collect()).collect();
    Lattice::validate(names, &leq).expect("a chain is a lattice")
}

/// The four-element lattice with two incomparable atoms.
pub fn diamond() -> Arc<Lattice> {
    lattice_of(&["0", "x", "y", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)])
}

/// The five-element nonmodular lattice: `0 < a < 1` alongside `0 < b < c < 1`.
pub fn pentagon() -> Arc<Lattice> {
    lattice_of(
        &["0", "a", "b", "c", "1"],
        &[(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)],
    )
}

/// The five-element modular lattice with three incomparable atoms.
pub fn m3() -> Arc<Lattice> {
    lattice_of(
        &["0", "x", "y", "z", "1"],
        &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
    )
}

/// Two atoms whose join sits strictly below the top.
pub fn kite() -> Arc<Lattice> {
    lattice_of(
        &["0", "x", "y", "t", "1"],
        &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)],
    )
}

/// Two coatoms whose meet sits strictly above the bottom.
pub fn dual_kite() -> Arc<Lattice> {
    lattice_of(
        &["0", "b", "x", "y", "1"],
        &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)],
    )
}

/// Every lattice with at most `n` elements, up to isomorphism, in a fixed
/// order. Supported for `n <= 5`.
pub fn all_lattices_up_to(n: usize) -> Result<Vec<(String, Arc<Lattice>)>> {
    if n > 5 {
        return Err(Error::InvalidArgument(format!(
            "the built-in lattice census covers at most 5 elements, got {n}"
        )));
    }
    let full: Vec<(&str, Arc<Lattice>)> = vec![
        ("1", point()),
        ("2", chain(2)),
        ("C3", chain(3)),
        ("C4", chain(4)),
        ("M2", diamond()),
        ("C5", chain(5)),
        ("M3", m3()),
        ("N5", pentagon()),
        ("kite", kite()),
        ("dual-kite", dual_kite()),
    ];
    Ok(full
        .into_iter()
        .filter(|(_, l)| l.n() <= n)
        .map(|(s, l)| (s.to_string(), l))
        .collect())
}

/// The six lattices exercised by the property suites, in report order.
pub fn catalog_lattices() -> Vec<(String, Arc<Lattice>)> {
    [
        ("1", point()),
        ("2", chain(2)),
        ("C3", chain(3)),
        ("C4", chain(4)),
        ("M2", diamond()),
        ("N5", pentagon()),
    ]
    .into_iter()
    .map(|(s, l)| (s.to_string(), l))
    .collect()
}

/// The two-element locale.
pub fn two_quantale() -> Arc<Quantale> {
    chain_locale(2)
}

/// The locale on the `k`-element chain: meet as multiplication, top as unit.
pub fn chain_locale(k: usize) -> Arc<Quantale> {
    let l = chain(k);
    let mult: Vec<Elem> = (0..k * k).map(|p| (p / k).min(p % k)).collect();
    Quantale::validate(l, mult, k - 1).expect("meet on a chain is a quantale multiplication")
}

/// The powerset of the two-element group under elementwise addition.
pub fn powerset_z2() -> Arc<Quantale> {
    let op = vec![vec![0, 1], vec![1, 0]];
    powerset_monoid_quantale(vec!["0".into(), "1".into()], &op, 0, 16)
        .expect("the two-element group is a monoid")
}

/// The quantale of binary relations on a two-element set.
pub fn rel2() -> Arc<Quantale> {
    relation_quantale(2, 16).expect("relations on two points fit in the budget")
}

/// Two-by-two matrices over the two-element locale.
pub fn mat2_two() -> MatrixQuantale {
    matrix_quantale(&two_quantale(), 2, 16).expect("sixteen matrices fit in the budget")
}

/// Two-by-two matrices over the three-element chain locale.
pub fn mat2_c3() -> MatrixQuantale {
    matrix_quantale(&chain_locale(3), 2, 81).expect("eighty-one matrices fit in the budget")
}

/// The endomorphism quantale of the three-element chain.
pub fn end_c3() -> Arc<Quantale> {
    endo_quantale(&chain(3), 16)
        .expect("six endomorphisms fit in the budget")
        .0
}

/// Resolves a built-in lattice by its command-line name.
pub fn builtin_lattice(name: &str) -> Option<Arc<Lattice>> {
    let l = match name {
        "1" => point(),
        "2" => chain(2),
        "C3" => chain(3),
        "C4" => chain(4),
        "C5" => chain(5),
        "M2" => diamond(),
        "M3" => m3(),
        "N5" => pentagon(),
        "kite" => kite(),
        "dual-kite" => dual_kite(),
        _ => return None,
    };
    Some(l)
}

/// Resolves a built-in quantale by its command-line name. Bare chain
/// names resolve to their locales.
pub fn builtin_quantale(name: &str) -> Option<Arc<Quantale>> {
    let q = match name {
        "2" => two_quantale(),
        "C3" | "C3-locale" => chain_locale(3),
        "C4" | "C4-locale" => chain_locale(4),
        "C5" | "C5-locale" => chain_locale(5),
        "PZ2" => powerset_z2(),
        "Rel2" => rel2(),
        "Mat2(2)" => mat2_two().quantale,
        "Mat2(C3-locale)" => mat2_c3().quantale,
        "End(C3)" => end_c3(),
        _ => return None,
    };
    Some(q)
}

/// The names accepted by [`builtin_lattice`], in listing order.
pub const BUILTIN_LATTICES: [&str; 10] = [
    "1",
    "2",
    "C3",
    "C4",
    "C5",
    "M2",
    "M3",
    "N5",
    "kite",
    "dual-kite",
];

/// The names accepted by [`builtin_quantale`], in listing order.
pub const BUILTIN_QUANTALES: [&str; 8] = [
    "2",
    "C3-locale",
    "C4-locale",
    "PZ2",
    "Rel2",
    "Mat2(2)",
    "Mat2(C3-locale)",
    "End(C3)",
];

/// The eight quantales exercised by the property suites, in report order.
pub fn catalog_quantales() -> Vec<(String, Arc<Quantale>)> {
    BUILTIN_QUANTALES
        .iter()
        .map(|s| (s.to_string(), builtin_quantale(s).unwrap()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::lattice_iso;

    #[test]
    fn census_entries_are_pairwise_nonisomorphic() {
        let all = all_lattices_up_to(5).unwrap();
        assert_eq!(all.len(), 10);
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                assert!(
                    lattice_iso(&all[i].1, &all[j].1).is_none(),
                    "{} and {} should differ",
                    all[i].0,
                    all[j].0
                );
            }
        }
        assert!(all_lattices_up_to(6).is_err());
        let sizes: Vec<usize> = all.iter().map(|(_, l)| l.n()).collect();
        assert_eq!(sizes, [1, 2, 3, 4, 4, 5, 5, 5, 5, 5]);
    }

    #[test]
    fn chain_locales_are_locales() {
        for k in 1..=4 {
            let q = chain_locale(k);
            assert!(q.is_locale());
            assert_eq!(q.unit(), k - 1);
        }
    }

    #[test]
    fn powerset_z2_multiplication() {
        let q = powerset_z2();
        assert_eq!(q.n(), 4);
        // {1} * {1} = {0}: masks index the subsets, so 2 * 2 = 1.
        assert_eq!(q.mul(2, 2), 1);
        assert_eq!(q.unit(), 1);
        assert!(q.commutativity_witness().is_none());
        assert!(!q.is_locale());
    }

    #[test]
    fn builtin_names_resolve() {
        for name in BUILTIN_LATTICES {
            assert!(builtin_lattice(name).is_some(), "missing lattice {name}");
        }
        for name in BUILTIN_QUANTALES {
            assert!(builtin_quantale(name).is_some(), "missing quantale {name}");
        }
        assert!(builtin_lattice("Z").is_none());
        assert!(builtin_quantale("Z").is_none());
        assert_eq!(rel2().n(), 16);
        assert_eq!(mat2_two().quantale.n(), 16);
        assert_eq!(mat2_c3().quantale.n(), 81);
        assert_eq!(end_c3().n(), 6);
    }
}
