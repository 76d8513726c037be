//! Quantales: sup-lattices with a unital multiplication distributing over
//! joins on both sides.
//!
//! Validation checks distributivity against binary joins and bottom, which
//! extends to all finite joins, and then checks associativity on triples of
//! join-irreducibles, which extends to all triples once distributivity
//! holds because every element is the join of the irreducibles below it.

use std::sync::Arc;

use crate::error::{Error, Result, Side};
use crate::lattice::{Elem, Lattice, SupMap};
use crate::tensor::{internal_hom, HomLattice};

pub struct Quantale {
    lattice: Arc<Lattice>,
    mult: Vec<Elem>,
    unit: Elem,
}

impl PartialEq for Quantale {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.mult == other.mult && self.unit == other.unit
    }
}

impl Eq for Quantale {}

impl std::fmt::Debug for Quantale {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Quantale({} elements)", self.n())
    }
}

impl Quantale {
    pub fn validate(lattice: Arc<Lattice>, mult: Vec<Elem>, unit: Elem) -> Result<Arc<Quantale>> {
        let n = lattice.n();
        if mult.len() != n * n || mult.iter().any(|&v| v >= n) || unit >= n {
            return Err(Error::Parse(
                "multiplication table has the wrong shape".into(),
            ));
        }
        let mul = |a: Elem, b: Elem| mult[a * n + b];
        let bot = lattice.bottom();
        for a in 0..n {
            if mul(a, bot) != bot {
                return Err(Error::NotDistributive {
                    side: Side::Right,
                    elem: a,
                    subset: vec![],
                });
            }
            if mul(bot, a) != bot {
                return Err(Error::NotDistributive {
                    side: Side::Left,
                    elem: a,
                    subset: vec![],
                });
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                let j = lattice.join2(x, y);
                for a in 0..n {
                    if mul(a, j) != lattice.join2(mul(a, x), mul(a, y)) {
                        return Err(Error::NotDistributive {
                            side: Side::Right,
                            elem: a,
                            subset: vec![x, y],
                        });
                    }
                    if mul(j, a) != lattice.join2(mul(x, a), mul(y, a)) {
                        return Err(Error::NotDistributive {
                            side: Side::Left,
                            elem: a,
                            subset: vec![x, y],
                        });
                    }
                }
            }
        }
        for a in 0..n {
            if mul(unit, a) != a || mul(a, unit) != a {
                return Err(Error::UnitFails(a));
            }
        }
        for &x in lattice.ji() {
            for &y in lattice.ji() {
                for &z in lattice.ji() {
                    if mul(mul(x, y), z) != mul(x, mul(y, z)) {
                        return Err(Error::NotAssociative(x, y, z));
                    }
                }
            }
        }
        Ok(Arc::new(Quantale {
            lattice,
            mult,
            unit,
        }))
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn n(&self) -> usize {
        self.lattice.n()
    }

    pub fn name(&self, e: Elem) -> &str {
        self.lattice.name(e)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mult[a * self.n() + b]
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    pub fn mult_table(&self) -> &[Elem] {
        &self.mult
    }

    /// The same carrier with the multiplication arguments swapped.
    pub fn opposite(self: &Arc<Self>) -> Result<Arc<Quantale>> {
        let n = self.n();
        let mut mult = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = self.mul(b, a);
            }
        }
        Quantale::validate(self.lattice.clone(), mult, self.unit)
    }

    /// A pair whose products differ, if any.
    pub fn commutativity_witness(&self) -> Option<(Elem, Elem)> {
        let n = self.n();
        for a in 0..n {
            for b in a + 1..n {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// An element with `a * a != a`, if any.
    pub fn idempotency_witness(&self) -> Option<Elem> {
        (0..self.n()).find(|&a| self.mul(a, a) != a)
    }

    /// True when multiplication is meet and the unit is the top, the
    /// defining shape of a locale. Equivalent to being idempotent with
    /// unit equal to top.
    pub fn is_locale(&self) -> bool {
        self.unit == self.lattice.top()
            && (0..self.n())
                .all(|a| (0..self.n()).all(|b| self.mul(a, b) == self.lattice.meet2(a, b)))
    }
}

/// A unit-preserving, multiplicative, join-preserving map of quantales.
pub struct QuantaleMorphism {
    pub source: Arc<Quantale>,
    pub target: Arc<Quantale>,
    pub map: SupMap,
}

impl QuantaleMorphism {
    pub fn new(
        source: Arc<Quantale>,
        target: Arc<Quantale>,
        table: Vec<Elem>,
    ) -> Result<QuantaleMorphism> {
        let map = SupMap::new(source.lattice().clone(), target.lattice().clone(), table).map_err(
            |e| match e {
                Error::NotASupMap { subset } => Error::NotAQuantaleMorphism(format!(
                    "carrier map does not preserve joins (witness subset {subset:?})"
                )),
                other => other,
            },
        )?;
        if map.apply(source.unit()) != target.unit() {
            return Err(Error::NotAQuantaleMorphism("unit not preserved".into()));
        }
        for a in 0..source.n() {
            for b in 0..source.n() {
                if map.apply(source.mul(a, b)) != target.mul(map.apply(a), map.apply(b)) {
                    return Err(Error::NotAQuantaleMorphism(format!(
                        "multiplication not preserved at ({}, {})",
                        source.name(a),
                        source.name(b)
                    )));
                }
            }
        }
        Ok(QuantaleMorphism {
            source,
            target,
            map,
        })
    }
}

/// The quantale of all binary relations on an `n`-element set: the carrier
/// is the powerset of pairs ordered by inclusion, multiplication is
/// relation composition, and the unit is the identity relation.
pub fn relation_quantale(n: usize, budget: usize) -> Result<Arc<Quantale>> {
    if n == 0 || n > 4 {
        return Err(Error::InvalidArgument(
            "relation quantale size must be between 1 and 4".into(),
        ));
    }
    let pairs = n * n;
    let count = 1usize << pairs;
    if count > budget {
        return Err(Error::BudgetExceeded {
            needed: count,
            allowed: budget,
        });
    }
    let names: Vec<String> = (0..count)
        .map(|mask| {
            let elems: Vec<String> = (0..pairs)
                .filter(|&p| mask >> p & 1 == 1)
                .map(|p| format!("({},{})", p / n, p % n))
                .collect();
            format!("{{{}}}", elems.join(","))
        })
        .collect();
    let mut up = vec![crate::bits::Bits::new(count); count];
    for a in 0..count {
        for b in 0..count {
            if a & !b == 0 {
                up[a].set(b);
            }
        }
    }
    let lattice = Lattice::from_up_unchecked(names, up);

    let row = |mask: usize, i: usize| mask >> (i * n) & ((1 << n) - 1);
    let mut mult = vec![0usize; count * count];
    for a in 0..count {
        for b in 0..count {
            let mut c = 0usize;
            for i in 0..n {
                let mut out = 0usize;
                let mut mids = row(a, i);
                while mids != 0 {
                    let j = mids.trailing_zeros() as usize;
                    mids &= mids - 1;
                    out |= row(b, j);
                }
                c |= out << (i * n);
            }
            mult[a * count + b] = c;
        }
    }
    let unit = (0..n).fold(0usize, |acc, i| acc | 1 << (i * n + i));
    Quantale::validate(lattice, mult, unit)
}

/// The powerset of a finite monoid, with elementwise multiplication of
/// subsets and unit the singleton of the monoid unit.
pub fn powerset_monoid_quantale(
    names: Vec<String>,
    op: &[Vec<usize>],
    unit: usize,
    budget: usize,
) -> Result<Arc<Quantale>> {
    let k = names.len();
    if op.len() != k || op.iter().any(|r| r.len() != k || r.iter().any(|&v| v >= k)) {
        return Err(Error::NotAMonoid(
            "operation table has the wrong shape".into(),
        ));
    }
    if unit >= k {
        return Err(Error::NotAMonoid("unit is out of range".into()));
    }
    for x in 0..k {
        if op[unit][x] != x || op[x][unit] != x {
            return Err(Error::NotAMonoid(format!("unit law fails at {}", names[x])));
        }
        for y in 0..k {
            for z in 0..k {
                if op[op[x][y]][z] != op[x][op[y][z]] {
                    return Err(Error::NotAMonoid(format!(
                        "associativity fails at ({}, {}, {})",
                        names[x], names[y], names[z]
                    )));
                }
            }
        }
    }
    let count = 1usize << k;
    if count > budget {
        return Err(Error::BudgetExceeded {
            needed: count,
            allowed: budget,
        });
    }
    let set_names: Vec<String> = (0..count)
        .map(|mask| {
            let elems: Vec<&str> = (0..k)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| names[i].as_str())
                .collect();
            format!("{{{}}}", elems.join(","))
        })
        .collect();
    let mut up = vec![crate::bits::Bits::new(count); count];
    for a in 0..count {
        for b in 0..count {
            if a & !b == 0 {
                up[a].set(b);
            }
        }
    }
    let lattice = Lattice::from_up_unchecked(set_names, up);
    let mut mult = vec![0usize; count * count];
    for a in 0..count {
        for b in 0..count {
            let mut c = 0usize;
            for x in 0..k {
                if a >> x & 1 == 0 {
                    continue;
                }
                for y in 0..k {
                    if b >> y & 1 == 1 {
                        c |= 1 << op[x][y];
                    }
                }
            }
            mult[a * count + b] = c;
        }
    }
    Quantale::validate(lattice, mult, 1 << unit)
}

/// The endomorphism quantale of a sup-lattice: all join-preserving
/// endomaps under the pointwise order, multiplied by composition, where
/// `f * g` applies `g` first. Returns the quantale together with the hom
/// lattice used to translate elements back into maps.
pub fn endo_quantale(l: &Arc<Lattice>, budget: usize) -> Result<(Arc<Quantale>, HomLattice)> {
    let hom = internal_hom(l, l, budget)?;
    let k = hom.lattice.n();
    let mut mult = vec![0usize; k * k];
    for f in 0..k {
        for g in 0..k {
            let ft = hom.table_of(f);
            let gt = hom.table_of(g);
            let composite: Vec<Elem> = (0..l.n()).map(|x| ft[gt[x]]).collect();
            mult[f * k + g] = hom.elem_of_table(&composite);
        }
    }
    let unit = hom.elem_of_table(&(0..l.n()).collect::<Vec<_>>());
    let q = Quantale::validate(hom.lattice.clone(), mult, unit)?;
    Ok((q, hom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn chain_locale_validates() {
        let q = catalog::chain_locale(3);
        assert!(q.is_locale());
        assert!(q.commutativity_witness().is_none());
        assert!(q.idempotency_witness().is_none());
        assert_eq!(q.unit(), q.lattice().top());
    }

    #[test]
    fn validate_rejects_broken_tables() {
        let c3 = catalog::chain(3);
        // Meet table with the top cell overwritten to a: joins still
        // distribute, so the unit law is what fails.
        let mut mult: Vec<Elem> = (0..9).map(|i| c3.meet2(i / 3, i % 3)).collect();
        mult[2 * 3 + 2] = 1;
        assert_eq!(
            Quantale::validate(c3.clone(), mult, 2).unwrap_err(),
            Error::UnitFails(2)
        );

        // Everything multiplies to bottom except 1 * 1 = 1: the declared
        // unit fails on a.
        let bad = vec![0, 0, 0, 0, 0, 0, 0, 0, 2];
        assert_eq!(
            Quantale::validate(c3.clone(), bad, 2).unwrap_err(),
            Error::UnitFails(1)
        );

        // Join as multiplication does not annihilate bottom, which is the
        // empty-join case of distributivity.
        let join = vec![0, 1, 2, 1, 1, 2, 2, 2, 2];
        assert_eq!(
            Quantale::validate(c3.clone(), join, 0).unwrap_err(),
            Error::NotDistributive {
                side: Side::Right,
                elem: 1,
                subset: vec![],
            }
        );
    }

    #[test]
    fn relation_quantale_on_two_points() {
        let q = relation_quantale(2, 100).unwrap();
        assert_eq!(q.n(), 16);
        // r = {(0,1)} and s = {(1,0)} compose differently in each order.
        let r = 1usize << 1;
        let s = 1usize << 2;
        assert_eq!(q.commutativity_witness().is_some(), true);
        assert_ne!(q.mul(r, s), q.mul(s, r));
        assert!(!q.is_locale());
    }

    #[test]
    fn powerset_of_z2() {
        let q = catalog::powerset_z2();
        assert_eq!(q.n(), 4);
        assert!(q.commutativity_witness().is_none());
        // {1} * {1} = {0}, so the quantale is not idempotent.
        assert_eq!(q.mul(2, 2), 1);
        assert_eq!(q.idempotency_witness(), Some(2));
        assert!(!q.is_locale());
    }

    #[test]
    fn powerset_rejects_non_monoids() {
        let names = vec!["a".to_string(), "b".to_string()];
        let op = vec![vec![1, 0], vec![0, 0]];
        assert!(matches!(
            powerset_monoid_quantale(names, &op, 0, 100),
            Err(Error::NotAMonoid(_))
        ));
    }

    #[test]
    fn endo_quantale_of_three_chain() {
        let c3 = catalog::chain(3);
        let (q, hom) = endo_quantale(&c3, 1000).unwrap();
        assert_eq!(q.n(), 6);
        // f sends a to bottom and 1 to a; g collapses everything above
        // bottom to a. They do not commute.
        let f = hom.elem_of_table(&[0, 0, 1]);
        let g = hom.elem_of_table(&[0, 1, 1]);
        assert_ne!(q.mul(f, g), q.mul(g, f));
        assert!(q.commutativity_witness().is_some());
    }

    #[test]
    fn quantale_morphism_validation() {
        let two = catalog::two_quantale();
        let c3 = catalog::chain_locale(3);
        // 2 -> C3 sending 1 to 1 is a morphism of locales.
        assert!(QuantaleMorphism::new(two.clone(), c3.clone(), vec![0, 2]).is_ok());
        // Sending 1 to a misses the unit.
        assert!(matches!(
            QuantaleMorphism::new(two.clone(), c3.clone(), vec![0, 1]),
            Err(Error::NotAQuantaleMorphism(_))
        ));
    }
}
