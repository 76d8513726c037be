//! Tensor products and internal homs of finite sup-lattices.
//!
//! An element of `L (x) M` is a bi-ideal: a subset of the product carrying
//! the axes, downward closed, and closed under joins in each coordinate
//! separately. Rows and columns of a bi-ideal are principal downsets, so
//! closure is a cheap fixpoint. The pure tensor of `(l, m)` is the smallest
//! bi-ideal containing that pair, joins are bi-closures of unions, and the
//! order is inclusion.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result, Side};
use crate::lattice::{all_sup_maps, lattice_from_tables, sup_violation, table_name};
use crate::lattice::{Elem, Lattice, SupMap};

/// A map of two variables preserving joins in each variable separately.
#[derive(Clone, Debug)]
pub struct Bimorphism {
    pub left: Arc<Lattice>,
    pub right: Arc<Lattice>,
    pub target: Arc<Lattice>,
    table: Vec<Elem>,
}

impl Bimorphism {
    /// Validates join preservation in each slot. A `Left` violation means
    /// some map `x -> h(x, m)` with the right slot fixed is not
    /// join-preserving; the witness starts with the fixed element.
    pub fn new(
        left: Arc<Lattice>,
        right: Arc<Lattice>,
        target: Arc<Lattice>,
        table: Vec<Elem>,
    ) -> Result<Bimorphism> {
        let (n, m) = (left.n(), right.n());
        if table.len() != n * m || table.iter().any(|&v| v >= target.n()) {
            return Err(Error::Parse("bimorphism table has the wrong shape".into()));
        }
        for l in 0..n {
            let row: Vec<Elem> = (0..m).map(|b| table[l * m + b]).collect();
            if let Some(subset) = sup_violation(&right, &target, &row) {
                let mut witness = vec![l];
                witness.extend(subset);
                return Err(Error::NotABimorphism {
                    side: Side::Right,
                    witness,
                });
            }
        }
        for r in 0..m {
            let col: Vec<Elem> = (0..n).map(|a| table[a * m + r]).collect();
            if let Some(subset) = sup_violation(&left, &target, &col) {
                let mut witness = vec![r];
                witness.extend(subset);
                return Err(Error::NotABimorphism {
                    side: Side::Left,
                    witness,
                });
            }
        }
        Ok(Bimorphism {
            left,
            right,
            target,
            table,
        })
    }

    pub fn apply(&self, l: Elem, m: Elem) -> Elem {
        self.table[l * self.right.n() + m]
    }
}

/// The tensor product of two sup-lattices together with its universal
/// bimorphism.
#[derive(Debug)]
pub struct Tensor {
    pub left: Arc<Lattice>,
    pub right: Arc<Lattice>,
    pub lattice: Arc<Lattice>,
    elems: Vec<Bits>,
    pure_table: Vec<Elem>,
}

impl Tensor {
    /// The universal bimorphism on a pair.
    pub fn pure(&self, l: Elem, m: Elem) -> Elem {
        self.pure_table[l * self.right.n() + m]
    }

    /// The bi-ideal carried by a tensor element.
    pub fn pairs(&self, e: Elem) -> &Bits {
        &self.elems[e]
    }

    /// Decodes a bit index of a bi-ideal into a `(left, right)` pair.
    pub fn decode(&self, bit: usize) -> (Elem, Elem) {
        (bit / self.right.n(), bit % self.right.n())
    }

    /// Factors a bimorphism through the universal one: the unique
    /// join-preserving map `g` with `g(pure(l, m)) = h(l, m)`.
    pub fn factor(&self, h: &Bimorphism) -> Result<SupMap> {
        if h.left != self.left || h.right != self.right {
            return Err(Error::ShapeMismatch);
        }
        let table: Vec<Elem> = self
            .elems
            .iter()
            .map(|s| {
                h.target.join_iter(s.ones().map(|bit| {
                    let (a, b) = self.decode(bit);
                    h.apply(a, b)
                }))
            })
            .collect();
        SupMap::new(self.lattice.clone(), h.target.clone(), table)
    }
}

/// Computes the tensor product, failing once more than `budget` elements
/// have been found.
pub fn tensor(left: &Arc<Lattice>, right: &Arc<Lattice>, budget: usize) -> Result<Tensor> {
    let (n, m) = (left.n(), right.n());
    let bits = n * m;
    let mut axes = Bits::new(bits);
    for a in 0..n {
        axes.set(a * m + right.bottom());
    }
    for b in 0..m {
        axes.set(left.bottom() * m + b);
    }

    let close = |mut s: Bits| -> Bits {
        s.union_with(&axes);
        loop {
            let mut changed = false;
            for a in 0..n {
                let row_join = right.join_iter((0..m).filter(|&b| s.get(a * m + b)));
                for b in right.down_bits(row_join).ones() {
                    changed |= s.insert(a * m + b);
                }
            }
            for b in 0..m {
                let col_join = left.join_iter((0..n).filter(|&a| s.get(a * m + b)));
                for a in left.down_bits(col_join).ones() {
                    changed |= s.insert(a * m + b);
                }
            }
            if !changed {
                return s;
            }
        }
    };

    let mut elems: Vec<Bits> = Vec::new();
    let mut index: HashMap<Bits, Elem> = HashMap::new();
    let push = |elems: &mut Vec<Bits>, index: &mut HashMap<Bits, Elem>, s: Bits| -> Result<Elem> {
        if let Some(&i) = index.get(&s) {
            return Ok(i);
        }
        if elems.len() + 1 > budget {
            return Err(Error::BudgetExceeded {
                needed: elems.len() + 1,
                allowed: budget,
            });
        }
        let i = elems.len();
        index.insert(s.clone(), i);
        elems.push(s);
        Ok(i)
    };

    let mut raw_pure = vec![0usize; bits];
    for a in 0..n {
        for b in 0..m {
            let mut s = Bits::new(bits);
            for x in left.down_bits(a).ones() {
                for y in right.down_bits(b).ones() {
                    s.set(x * m + y);
                }
            }
            raw_pure[a * m + b] = push(&mut elems, &mut index, close(s))?;
        }
    }

    // Close the pure tensors under binary joins; every bi-ideal is the
    // join of the pures it contains, so this reaches all of them.
    let mut i = 0;
    while i < elems.len() {
        for j in 0..=i {
            let mut u = elems[i].clone();
            u.union_with(&elems[j]);
            let s = close(u);
            push(&mut elems, &mut index, s)?;
        }
        i += 1;
    }

    let mut order: Vec<usize> = (0..elems.len()).collect();
    order.sort_by_key(|&i| (elems[i].count(), elems[i].clone()));
    let rank: HashMap<usize, Elem> = order.iter().enumerate().map(|(r, &i)| (i, r)).collect();
    let sorted: Vec<Bits> = order.iter().map(|&i| elems[i].clone()).collect();

    let names: Vec<String> = sorted
        .iter()
        .map(|s| {
            let maxima: Vec<(Elem, Elem)> = s
                .ones()
                .filter(|&bit| {
                    let (a, b) = (bit / m, bit % m);
                    !s.ones().any(|other| {
                        let (x, y) = (other / m, other % m);
                        other != bit && left.leq(a, x) && right.leq(b, y)
                    })
                })
                .map(|bit| (bit / m, bit % m))
                .collect();
            let parts: Vec<String> = maxima
                .iter()
                .map(|&(a, b)| format!("{}⊗{}", left.name(a), right.name(b)))
                .collect();
            parts.join("∨")
        })
        .collect();

    let mut up = vec![Bits::new(sorted.len()); sorted.len()];
    for (i, si) in sorted.iter().enumerate() {
        for (j, sj) in sorted.iter().enumerate() {
            if si.is_subset(sj) {
                up[i].set(j);
            }
        }
    }
    let lattice = Lattice::from_up_unchecked(names, up);
    let pure_table: Vec<Elem> = raw_pure.iter().map(|&i| rank[&i]).collect();

    Ok(Tensor {
        left: left.clone(),
        right: right.clone(),
        lattice,
        elems: sorted,
        pure_table,
    })
}

/// The lattice of all join-preserving maps `source -> target` under the
/// pointwise order, with conversions between elements and maps.
#[derive(Debug)]
pub struct HomLattice {
    pub source: Arc<Lattice>,
    pub target: Arc<Lattice>,
    pub lattice: Arc<Lattice>,
    tables: Vec<Vec<Elem>>,
    index: HashMap<Vec<Elem>, Elem>,
}

impl HomLattice {
    pub fn map_of(&self, e: Elem) -> SupMap {
        SupMap::unchecked(
            self.source.clone(),
            self.target.clone(),
            self.tables[e].clone(),
        )
    }

    pub fn table_of(&self, e: Elem) -> &[Elem] {
        &self.tables[e]
    }

    pub fn elem_of(&self, f: &SupMap) -> Elem {
        self.elem_of_table(f.table())
    }

    pub fn elem_of_table(&self, table: &[Elem]) -> Elem {
        self.index[table]
    }

    pub fn tables(&self) -> &[Vec<Elem>] {
        &self.tables
    }
}

/// Computes the internal hom, failing once more than `budget` maps exist.
pub fn internal_hom(
    source: &Arc<Lattice>,
    target: &Arc<Lattice>,
    budget: usize,
) -> Result<HomLattice> {
    let mut tables: Vec<Vec<Elem>> = all_sup_maps(source, target)
        .into_iter()
        .map(|f| f.table().to_vec())
        .collect();
    if tables.len() > budget {
        return Err(Error::BudgetExceeded {
            needed: tables.len(),
            allowed: budget,
        });
    }
    tables.sort();
    let names = tables.iter().map(|t| table_name(t, target)).collect();
    let lattice = lattice_from_tables(&tables, target, names);
    let index = tables
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    Ok(HomLattice {
        source: source.clone(),
        target: target.clone(),
        lattice,
        tables,
        index,
    })
}

/// Transposes `g: L (x) M -> N` across the adjunction into
/// `L -> hom(M, N)`.
pub fn curry(t: &Tensor, hom: &HomLattice, g: &SupMap) -> Result<SupMap> {
    if g.source != t.lattice || hom.source != t.right || hom.target != g.target {
        return Err(Error::ShapeMismatch);
    }
    let m = t.right.n();
    let table: Vec<Elem> = (0..t.left.n())
        .map(|l| {
            let slice: Vec<Elem> = (0..m).map(|b| g.apply(t.pure(l, b))).collect();
            hom.elem_of_table(&slice)
        })
        .collect();
    SupMap::new(t.left.clone(), hom.lattice.clone(), table)
}

/// Transposes `f: L -> hom(M, N)` back into `L (x) M -> N`.
pub fn uncurry(t: &Tensor, hom: &HomLattice, f: &SupMap) -> Result<SupMap> {
    if f.source != t.left || f.target != hom.lattice || hom.source != t.right {
        return Err(Error::ShapeMismatch);
    }
    let m = t.right.n();
    let mut table = vec![0usize; t.left.n() * m];
    for l in 0..t.left.n() {
        let row = hom.table_of(f.apply(l));
        for b in 0..m {
            table[l * m + b] = row[b];
        }
    }
    let h = Bimorphism::new(t.left.clone(), t.right.clone(), hom.target.clone(), table)?;
    t.factor(&h)
}
