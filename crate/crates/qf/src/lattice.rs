//! Finite lattices with all joins, and the join-preserving maps between them.
//!
//! Elements are dense indices `0..n`; display names are metadata. The order
//! is stored as bitset rows in both directions, so joins, meets, and bound
//! computations are word operations. In a finite lattice all joins exist as
//! soon as binary joins and a bottom do, and meets come for free as joins of
//! lower bounds, so validation only has to establish that much.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result};

pub type Elem = usize;

/// Largest carrier for which dense binary join/meet tables are cached.
const DENSE_TABLE_LIMIT: usize = 1024;

#[derive(Clone)]
pub struct Lattice {
    names: Vec<String>,
    up: Vec<Bits>,
    down: Vec<Bits>,
    bottom: Elem,
    top: Elem,
    topo: Vec<Elem>,
    ji: Vec<Elem>,
    ji_mask: Bits,
    lower_covers: Vec<Vec<Elem>>,
    join_tbl: Option<Vec<u32>>,
    meet_tbl: Option<Vec<u32>>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.up == other.up
    }
}

impl Eq for Lattice {}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice({} elements)", self.n())
    }
}

impl Lattice {
    /// Validates a reflexive/antisymmetric/transitive order with a bottom
    /// and all binary joins, and builds the lattice.
    pub fn validate(names: Vec<String>, leq: &[Vec<bool>]) -> Result<Arc<Lattice>> {
        let n = names.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::Parse(format!(
                "order relation must be a {n}x{n} matrix"
            )));
        }
        let mut up: Vec<Bits> = vec![Bits::new(n); n];
        for i in 0..n {
            for j in 0..n {
                if leq[i][j] {
                    up[i].set(j);
                }
            }
        }
        for i in 0..n {
            if !up[i].get(i) {
                return Err(Error::NotAPartialOrder {
                    reason: "reflexivity fails",
                    witness: vec![i],
                });
            }
        }
        for i in 0..n {
            for j in up[i].ones() {
                if j != i && up[j].get(i) {
                    return Err(Error::NotAPartialOrder {
                        reason: "antisymmetry fails",
                        witness: vec![i, j],
                    });
                }
                if !up[j].is_subset(&up[i]) {
                    let k = up[j].ones().find(|k| !up[i].get(*k)).unwrap();
                    return Err(Error::NotAPartialOrder {
                        reason: "transitivity fails",
                        witness: vec![i, j, k],
                    });
                }
            }
        }
        if n == 0 {
            return Err(Error::NoBottom);
        }
        if !(0..n).any(|i| up[i].count() == n) {
            return Err(Error::NoBottom);
        }
        for x in 0..n {
            for y in x + 1..n {
                let common = up[x].and(&up[y]);
                let lub = match least_of(&up, &common) {
                    Some(l) => l,
                    None => return Err(Error::NoJoin(x, y)),
                };
                if !common.is_subset(&up[lub]) {
                    return Err(Error::NoJoin(x, y));
                }
            }
        }
        Ok(Lattice::from_up_unchecked(names, up))
    }

    /// Builds a lattice from upset rows that are already known to satisfy
    /// the lattice axioms. Constructors for derived objects use this.
    pub(crate) fn from_up_unchecked(names: Vec<String>, up: Vec<Bits>) -> Arc<Lattice> {
        let n = names.len();
        debug_assert_eq!(up.len(), n);
        let mut down = vec![Bits::new(n); n];
        for i in 0..n {
            for j in up[i].ones() {
                down[j].set(i);
            }
        }
        let bottom = (0..n).find(|&i| up[i].count() == n).expect("bottom");
        let top = (0..n).find(|&i| down[i].count() == n).expect("top");
        let mut topo: Vec<Elem> = (0..n).collect();
        topo.sort_by_key(|&i| (down[i].count(), i));

        let mut lower_covers = vec![Vec::new(); n];
        for x in 0..n {
            let mut strict = down[x].clone();
            strict.unset(x);
            for c in strict.ones() {
                // c is a cover when nothing lies strictly between c and x.
                if up[c].and(&strict).count() == 1 {
                    lower_covers[x].push(c);
                }
            }
        }
        let mut ji = Vec::new();
        let mut ji_mask = Bits::new(n);
        for x in 0..n {
            if x != bottom && lower_covers[x].len() == 1 {
                ji.push(x);
                ji_mask.set(x);
            }
        }

        let (join_tbl, meet_tbl) = if n <= DENSE_TABLE_LIMIT {
            let mut jt = vec![0u32; n * n];
            let mut mt = vec![0u32; n * n];
            for x in 0..n {
                for y in 0..n {
                    let common = up[x].and(&up[y]);
                    jt[x * n + y] = least_of(&up, &common).expect("join") as u32;
                    let lower = down[x].and(&down[y]);
                    mt[x * n + y] = greatest_of(&down, &lower).expect("meet") as u32;
                }
            }
            (Some(jt), Some(mt))
        } else {
            (None, None)
        };

        Arc::new(Lattice {
            names,
            up,
            down,
            bottom,
            top,
            topo,
            ji,
            ji_mask,
            lower_covers,
            join_tbl,
            meet_tbl,
        })
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.up[x].get(y)
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    /// Elements in a linear extension of the order (bottom first).
    pub fn topo(&self) -> &[Elem] {
        &self.topo
    }

    /// Join-irreducible elements in ascending index order.
    pub fn ji(&self) -> &[Elem] {
        &self.ji
    }

    pub fn is_ji(&self, e: Elem) -> bool {
        self.ji_mask.get(e)
    }

    /// Join-irreducibles below `e`, as a bitset.
    pub fn ji_below(&self, e: Elem) -> Bits {
        self.down[e].and(&self.ji_mask)
    }

    pub fn lower_covers(&self, e: Elem) -> &[Elem] {
        &self.lower_covers[e]
    }

    pub fn up_bits(&self, e: Elem) -> &Bits {
        &self.up[e]
    }

    pub fn down_bits(&self, e: Elem) -> &Bits {
        &self.down[e]
    }

    pub fn join2(&self, x: Elem, y: Elem) -> Elem {
        match &self.join_tbl {
            Some(t) => t[x * self.n() + y] as Elem,
            None => {
                let common = self.up[x].and(&self.up[y]);
                least_of(&self.up, &common).expect("join")
            }
        }
    }

    pub fn meet2(&self, x: Elem, y: Elem) -> Elem {
        match &self.meet_tbl {
            Some(t) => t[x * self.n() + y] as Elem,
            None => {
                let lower = self.down[x].and(&self.down[y]);
                greatest_of(&self.down, &lower).expect("meet")
            }
        }
    }

    /// Join of an arbitrary family; the empty family gives bottom.
    pub fn join_iter<I: IntoIterator<Item = Elem>>(&self, elems: I) -> Elem {
        elems
            .into_iter()
            .fold(self.bottom, |acc, e| self.join2(acc, e))
    }

    /// Meet of an arbitrary family; the empty family gives top.
    pub fn meet_iter<I: IntoIterator<Item = Elem>>(&self, elems: I) -> Elem {
        elems
            .into_iter()
            .fold(self.top, |acc, e| self.meet2(acc, e))
    }

    pub fn join_bits(&self, set: &Bits) -> Elem {
        self.join_iter(set.ones())
    }
}

fn least_of(up: &[Bits], set: &Bits) -> Option<Elem> {
    let mut best = set.first()?;
    for c in set.ones().skip(1) {
        if up[c].get(best) {
            best = c;
        }
    }
    if set.is_subset(&up[best]) {
        Some(best)
    } else {
        None
    }
}

fn greatest_of(down: &[Bits], set: &Bits) -> Option<Elem> {
    let mut best = set.first()?;
    for c in set.ones().skip(1) {
        if down[c].get(best) {
            best = c;
        }
    }
    if set.is_subset(&down[best]) {
        Some(best)
    } else {
        None
    }
}

/// Returns a witness subset on which `table` fails to preserve joins:
/// `Some(vec![])` when the empty join (bottom) is not preserved,
/// `Some(vec![x, y])` for a failing pair, `None` when the map is valid.
pub fn sup_violation(source: &Lattice, target: &Lattice, table: &[Elem]) -> Option<Vec<Elem>> {
    if table[source.bottom()] != target.bottom() {
        return Some(vec![]);
    }
    let n = source.n();
    for x in 0..n {
        for y in x + 1..n {
            let lhs = table[source.join2(x, y)];
            let rhs = target.join2(table[x], table[y]);
            if lhs != rhs {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

pub fn is_sup_map(source: &Lattice, target: &Lattice, table: &[Elem]) -> bool {
    sup_violation(source, target, table).is_none()
}

/// A join-preserving map between finite lattices.
#[derive(Clone, PartialEq, Eq)]
pub struct SupMap {
    pub source: Arc<Lattice>,
    pub target: Arc<Lattice>,
    table: Vec<Elem>,
}

impl std::fmt::Debug for SupMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SupMap({:?})", self.table)
    }
}

impl SupMap {
    pub fn new(source: Arc<Lattice>, target: Arc<Lattice>, table: Vec<Elem>) -> Result<SupMap> {
        if table.len() != source.n() || table.iter().any(|&v| v >= target.n()) {
            return Err(Error::Parse("map table has the wrong shape".into()));
        }
        match sup_violation(&source, &target, &table) {
            Some(subset) => Err(Error::NotASupMap { subset }),
            None => Ok(SupMap {
                source,
                target,
                table,
            }),
        }
    }

    pub(crate) fn unchecked(
        source: Arc<Lattice>,
        target: Arc<Lattice>,
        table: Vec<Elem>,
    ) -> SupMap {
        debug_assert!(is_sup_map(&source, &target, &table));
        SupMap {
            source,
            target,
            table,
        }
    }

    pub fn identity(l: &Arc<Lattice>) -> SupMap {
        SupMap {
            source: l.clone(),
            target: l.clone(),
            table: (0..l.n()).collect(),
        }
    }

    pub fn constant_bottom(source: &Arc<Lattice>, target: &Arc<Lattice>) -> SupMap {
        SupMap {
            source: source.clone(),
            target: target.clone(),
            table: vec![target.bottom(); source.n()],
        }
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    /// `g.after(f)` is the composite x -> g(f(x)).
    pub fn after(&self, f: &SupMap) -> SupMap {
        assert!(
            f.target == self.source,
            "composition of maps with mismatched middle lattice"
        );
        SupMap {
            source: f.source.clone(),
            target: self.target.clone(),
            table: f.table.iter().map(|&x| self.table[x]).collect(),
        }
    }

    pub fn pointwise_join(&self, other: &SupMap) -> SupMap {
        assert!(self.source == other.source && self.target == other.target);
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(&a, &b)| self.target.join2(a, b))
            .collect();
        SupMap {
            source: self.source.clone(),
            target: self.target.clone(),
            table,
        }
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    pub fn is_idempotent_endo(&self) -> bool {
        self.is_endo()
            && self
                .table
                .iter()
                .enumerate()
                .all(|(_, &v)| self.table[v] == v)
    }

    pub fn image_bits(&self) -> Bits {
        let mut b = Bits::new(self.target.n());
        for &v in &self.table {
            b.set(v);
        }
        b
    }

    pub fn is_surjective(&self) -> bool {
        self.image_bits().count() == self.target.n()
    }

    pub fn is_injective(&self) -> bool {
        self.image_bits().count() == self.source.n()
    }
}

/// A monotone map; right adjoints land here since they need not preserve
/// joins.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonotoneMap {
    pub source: Arc<Lattice>,
    pub target: Arc<Lattice>,
    pub table: Vec<Elem>,
}

/// Right (Galois) adjoint of a join-preserving map:
/// `adj(y)` is the largest x with `f(x) <= y`.
pub fn right_adjoint(f: &SupMap) -> MonotoneMap {
    let table = (0..f.target.n())
        .map(|y| {
            f.source
                .join_iter((0..f.source.n()).filter(|&x| f.target.leq(f.apply(x), y)))
        })
        .collect();
    MonotoneMap {
        source: f.target.clone(),
        target: f.source.clone(),
        table,
    }
}

/// Finite biproduct: one carrier serving as both product and coproduct.
pub struct Biproduct {
    pub lattice: Arc<Lattice>,
    pub factors: Vec<Arc<Lattice>>,
    pub injections: Vec<SupMap>,
    pub projections: Vec<SupMap>,
}

/// Builds the biproduct of a finite family. The carrier is the cartesian
/// product ordered componentwise; injections pad with bottoms.
pub fn biproduct(factors: &[Arc<Lattice>], budget: usize) -> Result<Biproduct> {
    let sizes: Vec<usize> = factors.iter().map(|l| l.n()).collect();
    let mut total: usize = 1;
    for &s in &sizes {
        total = total.checked_mul(s).unwrap_or(usize::MAX);
        if total > budget {
            return Err(Error::BudgetExceeded {
                needed: total,
                allowed: budget,
            });
        }
    }

    let k = factors.len();
    let decode = |mut idx: usize| -> Vec<Elem> {
        let mut t = vec![0; k];
        for i in (0..k).rev() {
            t[i] = idx % sizes[i];
            idx /= sizes[i];
        }
        t
    };
    let encode = |t: &[Elem]| -> usize {
        let mut idx = 0;
        for i in 0..k {
            idx = idx * sizes[i] + t[i];
        }
        idx
    };

    let tuples: Vec<Vec<Elem>> = (0..total).map(decode).collect();
    let names: Vec<String> = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t
                .iter()
                .enumerate()
                .map(|(i, &e)| factors[i].name(e))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let mut up = vec![Bits::new(total); total];
    for a in 0..total {
        for b in 0..total {
            if (0..k).all(|i| factors[i].leq(tuples[a][i], tuples[b][i])) {
                up[a].set(b);
            }
        }
    }
    let lattice = Lattice::from_up_unchecked(names, up);

    let mut injections = Vec::with_capacity(k);
    let mut projections = Vec::with_capacity(k);
    for i in 0..k {
        let inj: Vec<Elem> = (0..sizes[i])
            .map(|e| {
                let mut t: Vec<Elem> = factors.iter().map(|f| f.bottom()).collect();
                t[i] = e;
                encode(&t)
            })
            .collect();
        injections.push(SupMap::unchecked(factors[i].clone(), lattice.clone(), inj));
        let proj: Vec<Elem> = tuples.iter().map(|t| t[i]).collect();
        projections.push(SupMap::unchecked(lattice.clone(), factors[i].clone(), proj));
    }

    Ok(Biproduct {
        lattice,
        factors: factors.to_vec(),
        injections,
        projections,
    })
}

/// Splitting of an idempotent endomap through its fixed points.
pub struct Splitting {
    pub object: Arc<Lattice>,
    /// Ambient indices of the fixed points, in ascending order.
    pub members: Vec<Elem>,
    pub include: SupMap,
    pub project: SupMap,
}

/// Splits an idempotent `e` as `include . project` with
/// `project . include = id`. The splitting object is the fixed-point set;
/// joins inside it are `e` applied to ambient joins.
pub fn split_idempotent(e: &SupMap) -> Result<Splitting> {
    if !e.is_endo() {
        return Err(Error::InvalidArgument(
            "idempotent must be an endomap".into(),
        ));
    }
    if let Some(x) = (0..e.source.n()).find(|&x| e.apply(e.apply(x)) != e.apply(x)) {
        return Err(Error::NotIdempotent(x));
    }
    let ambient = &e.source;
    let members: Vec<Elem> = (0..ambient.n()).filter(|&x| e.apply(x) == x).collect();
    let index_of: HashMap<Elem, Elem> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let names = members
        .iter()
        .map(|&m| ambient.name(m).to_string())
        .collect();
    let k = members.len();
    let mut up = vec![Bits::new(k); k];
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            if ambient.leq(a, b) {
                up[i].set(j);
            }
        }
    }
    let object = Lattice::from_up_unchecked(names, up);
    let include = SupMap::unchecked(object.clone(), ambient.clone(), members.clone());
    let project = SupMap::unchecked(
        ambient.clone(),
        object.clone(),
        (0..ambient.n()).map(|x| index_of[&e.apply(x)]).collect(),
    );
    Ok(Splitting {
        object,
        members,
        include,
        project,
    })
}

/// Enumerates every join-preserving map `source -> target`, in a
/// deterministic order.
///
/// Walks the source in a linear extension: bottom is forced, a
/// join-irreducible branches over targets above the image of its unique
/// lower cover, and a reducible element is forced to the join of its lower
/// covers' images, subject to every decomposition pair agreeing.
pub fn all_sup_maps(source: &Arc<Lattice>, target: &Arc<Lattice>) -> Vec<SupMap> {
    let n = source.n();
    // join_pairs[w] lists pairs (u, v) of strictly smaller elements whose
    // join is w; maps must send each such pair to values joining to f(w).
    let mut join_pairs: Vec<Vec<(Elem, Elem)>> = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            let w = source.join2(u, v);
            if w != u && w != v {
                join_pairs[w].push((u, v));
            }
        }
    }
    let mut out = Vec::new();
    let mut table = vec![0usize; n];
    rec_sup_maps(source, target, &join_pairs, 0, &mut table, &mut out);
    out.into_iter()
        .map(|t| SupMap::unchecked(source.clone(), target.clone(), t))
        .collect()
}

fn rec_sup_maps(
    source: &Arc<Lattice>,
    target: &Arc<Lattice>,
    join_pairs: &[Vec<(Elem, Elem)>],
    k: usize,
    table: &mut Vec<Elem>,
    out: &mut Vec<Vec<Elem>>,
) {
    if k == source.n() {
        out.push(table.clone());
        return;
    }
    let w = source.topo()[k];
    if w == source.bottom() {
        table[w] = target.bottom();
        rec_sup_maps(source, target, join_pairs, k + 1, table, out);
    } else if source.is_ji(w) {
        let cover = source.lower_covers(w)[0];
        for v in target.up_bits(table[cover]).ones() {
            table[w] = v;
            rec_sup_maps(source, target, join_pairs, k + 1, table, out);
        }
    } else {
        let forced = target.join_iter(source.lower_covers(w).iter().map(|&c| table[c]));
        if join_pairs[w]
            .iter()
            .all(|&(u, v)| target.join2(table[u], table[v]) == forced)
        {
            table[w] = forced;
            rec_sup_maps(source, target, join_pairs, k + 1, table, out);
        }
    }
}

/// Builds a lattice whose elements are the given map tables under the
/// pointwise order inherited from `target`.
pub(crate) fn lattice_from_tables(
    tables: &[Vec<Elem>],
    target: &Lattice,
    names: Vec<String>,
) -> Arc<Lattice> {
    let k = tables.len();
    let mut up = vec![Bits::new(k); k];
    for i in 0..k {
        for j in 0..k {
            if tables[i]
                .iter()
                .zip(&tables[j])
                .all(|(&a, &b)| target.leq(a, b))
            {
                up[i].set(j);
            }
        }
    }
    Lattice::from_up_unchecked(names, up)
}

/// Renders a map table compactly with target element names.
pub(crate) fn table_name(table: &[Elem], target: &Lattice) -> String {
    let parts: Vec<&str> = table.iter().map(|&v| target.name(v)).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn validate_rejects_bad_orders() {
        let names = |k: usize| (0..k).map(|i| format!("e{i}")).collect::<Vec<_>>();
        let not_reflexive = vec![vec![false, true], vec![false, true]];
        assert!(matches!(
            Lattice::validate(names(2), &not_reflexive),
            Err(Error::NotAPartialOrder {
                reason: "reflexivity fails",
                ..
            })
        ));
        let not_antisym = vec![vec![true, true], vec![true, true]];
        assert!(matches!(
            Lattice::validate(names(2), &not_antisym),
            Err(Error::NotAPartialOrder {
                reason: "antisymmetry fails",
                ..
            })
        ));
        let not_trans = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert!(matches!(
            Lattice::validate(names(3), &not_trans),
            Err(Error::NotAPartialOrder {
                reason: "transitivity fails",
                ..
            })
        ));
        // Two incomparable points: no bottom, and no join either.
        let no_bottom = vec![vec![true, false], vec![false, true]];
        assert!(matches!(
            Lattice::validate(names(2), &no_bottom),
            Err(Error::NoBottom)
        ));
        // Bottom plus two incomparable maximal points: pair has no join.
        let no_join = vec![
            vec![true, true, true],
            vec![false, true, false],
            vec![false, false, true],
        ];
        assert!(matches!(
            Lattice::validate(names(3), &no_join),
            Err(Error::NoJoin(1, 2))
        ));
    }

    #[test]
    fn diamond_structure() {
        let m2 = catalog::diamond();
        assert_eq!(m2.n(), 4);
        let x = 1;
        let y = 2;
        assert_eq!(m2.join2(x, y), m2.top());
        assert_eq!(m2.meet2(x, y), m2.bottom());
        assert_eq!(m2.ji(), &[1, 2]);
        assert_eq!(m2.join_iter([x, y]), m2.top());
        assert_eq!(m2.join_iter([]), m2.bottom());
        assert_eq!(m2.meet_iter([]), m2.top());
    }

    #[test]
    fn pentagon_is_not_distributive_but_is_a_lattice() {
        let n5 = catalog::pentagon();
        assert_eq!(n5.n(), 5);
        // Elements a and c are incomparable with join 1 and meet 0, while
        // b < c breaks distributivity.
        let (a, b, c) = (1, 2, 3);
        assert_eq!(n5.join2(a, b), n5.top());
        assert_eq!(n5.join2(a, c), n5.top());
        assert_eq!(n5.meet2(a, c), n5.bottom());
        assert_eq!(n5.ji(), &[1, 2, 3]);
    }

    #[test]
    fn sup_map_validation() {
        let c3 = catalog::chain(3);
        let two = catalog::chain(2);
        // Collapse a to bottom, keep top: join-preserving.
        assert!(SupMap::new(c3.clone(), two.clone(), vec![0, 0, 1]).is_ok());
        // Bottom must go to bottom.
        assert!(matches!(
            SupMap::new(c3.clone(), two.clone(), vec![1, 1, 1]),
            Err(Error::NotASupMap { subset }) if subset.is_empty()
        ));
        let m2 = catalog::diamond();
        // Sends x,y to bottom but top to top: fails on the pair {x, y}.
        assert!(matches!(
            SupMap::new(m2.clone(), two.clone(), vec![0, 0, 0, 1]),
            Err(Error::NotASupMap { subset }) if subset == vec![1, 2]
        ));
    }

    #[test]
    fn right_adjoint_is_galois() {
        let two = catalog::chain(2);
        let c3 = catalog::chain(3);
        // f: 2 -> C3 with f(1) = a.
        let f = SupMap::new(two.clone(), c3.clone(), vec![0, 1]).unwrap();
        let adj = right_adjoint(&f);
        assert_eq!(adj.table, vec![0, 1, 1]);
        for x in 0..two.n() {
            for y in 0..c3.n() {
                let lhs = c3.leq(f.apply(x), y);
                let rhs = two.leq(x, adj.table[y]);
                assert_eq!(lhs, rhs, "galois at ({x},{y})");
            }
        }
    }

    #[test]
    fn biproduct_of_two_chains_is_diamond() {
        let two = catalog::chain(2);
        let bp = biproduct(&[two.clone(), two.clone()], 100).unwrap();
        assert_eq!(bp.lattice.n(), 4);
        assert!(crate::iso::lattice_iso(&bp.lattice, &catalog::diamond()).is_some());
        for i in 0..2 {
            for j in 0..2 {
                let comp = bp.projections[j].after(&bp.injections[i]);
                if i == j {
                    assert_eq!(comp.table(), SupMap::identity(&two).table());
                } else {
                    assert_eq!(comp.table(), SupMap::constant_bottom(&two, &two).table());
                }
            }
        }
    }

    #[test]
    fn split_idempotent_on_diamond() {
        let m2 = catalog::diamond();
        // Fixes 0, x, 1 and sends y to 1.
        let e = SupMap::new(m2.clone(), m2.clone(), vec![0, 1, 3, 3]).unwrap();
        let s = split_idempotent(&e).unwrap();
        assert_eq!(s.members, vec![0, 1, 3]);
        assert!(crate::iso::lattice_iso(&s.object, &catalog::chain(3)).is_some());
        let roundtrip = s.include.after(&s.project);
        assert_eq!(roundtrip.table(), e.table());
        let id = s.project.after(&s.include);
        assert_eq!(id.table(), SupMap::identity(&s.object).table());
        let not_idem = SupMap::new(m2.clone(), m2.clone(), vec![0, 2, 1, 3]).unwrap();
        assert!(matches!(
            split_idempotent(&not_idem),
            Err(Error::NotIdempotent(_))
        ));
    }

    /// Oracle: every table, filtered by the join-preservation predicate.
    fn brute_sup_maps(source: &Arc<Lattice>, target: &Arc<Lattice>) -> Vec<Vec<Elem>> {
        let n = source.n();
        let m = target.n();
        let mut out = Vec::new();
        let total = m.checked_pow(n as u32).unwrap();
        for code in 0..total {
            let mut c = code;
            let table: Vec<Elem> = (0..n)
                .map(|_| {
                    let v = c % m;
                    c /= m;
                    v
                })
                .collect();
            if is_sup_map(source, target, &table) {
                out.push(table);
            }
        }
        out
    }

    #[test]
    fn sup_map_enumeration_matches_brute_force() {
        let small = [
            catalog::point(),
            catalog::chain(2),
            catalog::chain(3),
            catalog::diamond(),
        ];
        for src in &small {
            for tgt in &small {
                let mut fast: Vec<Vec<Elem>> = all_sup_maps(src, tgt)
                    .into_iter()
                    .map(|f| f.table().to_vec())
                    .collect();
                fast.sort();
                let mut brute = brute_sup_maps(src, tgt);
                brute.sort();
                assert_eq!(fast, brute, "{} -> {}", src.n(), tgt.n());
            }
        }
    }
}
