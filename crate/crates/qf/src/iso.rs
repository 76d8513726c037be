//! Isomorphism searches for lattices, quantales, and modules.
//!
//! All three run the same backtracking scheme: walk the source in a linear
//! extension, try target candidates in ascending index order (so the first
//! witness found is lexicographically least), prune with order-profile
//! invariants and partial structure checks, and verify the completed
//! assignment in full before accepting it.

use std::sync::Arc;

use crate::bits::Bits;
use crate::lattice::{Elem, Lattice};
use crate::module::Module;
use crate::quantale::Quantale;

const UNSET: usize = usize::MAX;

fn profiles(l: &Lattice) -> Vec<(usize, usize, bool)> {
    (0..l.n())
        .map(|e| (l.down_bits(e).count(), l.up_bits(e).count(), l.is_ji(e)))
        .collect()
}

fn search_iso(
    a: &Lattice,
    b: &Lattice,
    extra: &dyn Fn(Elem, Elem, &[Elem]) -> bool,
    finish: &dyn Fn(&[Elem]) -> bool,
) -> Option<Vec<Elem>> {
    if a.n() != b.n() {
        return None;
    }
    let pa = profiles(a);
    let pb = profiles(b);
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let n = a.n();
    let mut img = vec![UNSET; n];
    let mut used = Bits::new(n);

    fn rec(
        a: &Lattice,
        b: &Lattice,
        pa: &[(usize, usize, bool)],
        pb: &[(usize, usize, bool)],
        extra: &dyn Fn(Elem, Elem, &[Elem]) -> bool,
        finish: &dyn Fn(&[Elem]) -> bool,
        k: usize,
        img: &mut Vec<Elem>,
        used: &mut Bits,
    ) -> bool {
        if k == a.n() {
            return finish(img);
        }
        let x = a.topo()[k];
        for y in 0..b.n() {
            if used.get(y) || pa[x] != pb[y] {
                continue;
            }
            let consistent = (0..a.n()).all(|u| {
                img[u] == UNSET
                    || (a.leq(u, x) == b.leq(img[u], y) && a.leq(x, u) == b.leq(y, img[u]))
            });
            if !consistent || !extra(x, y, img) {
                continue;
            }
            img[x] = y;
            used.set(y);
            if rec(a, b, pa, pb, extra, finish, k + 1, img, used) {
                return true;
            }
            img[x] = UNSET;
            used.unset(y);
        }
        false
    }

    if rec(a, b, &pa, &pb, extra, finish, 0, &mut img, &mut used) {
        Some(img)
    } else {
        None
    }
}

/// Order isomorphism between lattices; joins are preserved automatically.
/// Returns the lexicographically least witness as a table, or `None`.
pub fn lattice_iso(a: &Arc<Lattice>, b: &Arc<Lattice>) -> Option<Vec<Elem>> {
    let finish =
        |img: &[Elem]| (0..a.n()).all(|u| (0..a.n()).all(|v| a.leq(u, v) == b.leq(img[u], img[v])));
    search_iso(a, b, &|_, _, _| true, &finish)
}

/// Quantale isomorphism: an order isomorphism of carriers preserving the
/// unit and the multiplication table.
pub fn quantale_iso(a: &Arc<Quantale>, b: &Arc<Quantale>) -> Option<Vec<Elem>> {
    let n = a.n();
    let extra = |x: Elem, y: Elem, img: &[Elem]| {
        if (x == a.unit()) != (y == b.unit()) {
            return false;
        }
        let val = |t: Elem| if t == x { y } else { img[t] };
        for u in (0..n).filter(|&u| u == x || img[u] != UNSET) {
            for v in (0..n).filter(|&v| v == x || img[v] != UNSET) {
                let p = val(a.mul(u, v));
                if p != UNSET && p != b.mul(val(u), val(v)) {
                    return false;
                }
            }
        }
        true
    };
    let finish = |img: &[Elem]| {
        img[a.unit()] == b.unit()
            && (0..n).all(|u| {
                (0..n).all(|v| {
                    img[a.mul(u, v)] == b.mul(img[u], img[v])
                        && a.lattice().leq(u, v) == b.lattice().leq(img[u], img[v])
                })
            })
    };
    search_iso(a.lattice(), b.lattice(), &extra, &finish)
}

/// Module isomorphism over a shared quantale: an order isomorphism of
/// carriers commuting with the action. Modules over different quantales
/// are never isomorphic here.
pub fn module_iso(a: &Module, b: &Module) -> Option<Vec<Elem>> {
    if a.quantale() != b.quantale() {
        return None;
    }
    let q = a.quantale();
    let extra = |x: Elem, y: Elem, img: &[Elem]| {
        let val = |t: Elem| if t == x { y } else { img[t] };
        for u in (0..a.carrier().n()).filter(|&u| u == x || img[u] != UNSET) {
            for r in 0..q.n() {
                let p = val(a.act(u, r));
                if p != UNSET && p != b.act(val(u), r) {
                    return false;
                }
            }
        }
        true
    };
    let finish = |img: &[Elem]| {
        (0..a.carrier().n()).all(|u| {
            (0..q.n()).all(|r| img[a.act(u, r)] == b.act(img[u], r))
                && (0..a.carrier().n())
                    .all(|v| a.carrier().leq(u, v) == b.carrier().leq(img[u], img[v]))
        })
    };
    search_iso(a.carrier(), b.carrier(), &extra, &finish)
}
