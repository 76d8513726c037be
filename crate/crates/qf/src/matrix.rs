//! Matrices over a quantale and matrix quantales.
//!
//! A matrix multiplies by the usual sum-of-products formula with join as
//! sum. Square matrices over a fixed size form a quantale again; the
//! carrier is materialized entrywise up to a hard cap, with the order
//! taken componentwise. The materialized quantale is isomorphic to the
//! endomorphism quantale of the free module on that many generators, and
//! both directions of that isomorphism are constructed explicitly.

use std::sync::Arc;

use rayon::prelude::*;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::lattice::{Elem, Lattice};
use crate::module::{endo_module_quantale, free_module, FreeModule, ModuleHoms};
use crate::quantale::{Quantale, QuantaleMorphism};

/// Largest materialized matrix quantale; beyond this, work with `Matrix`
/// values instead.
pub const MATERIALIZE_LIMIT: usize = 1024;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    pub quantale: Arc<Quantale>,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Elem>,
}

impl Matrix {
    pub fn new(
        quantale: Arc<Quantale>,
        rows: usize,
        cols: usize,
        entries: Vec<Elem>,
    ) -> Result<Matrix> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::ShapeMismatch);
        }
        if entries.iter().any(|&v| v >= quantale.n()) {
            return Err(Error::Parse("matrix entry out of range".into()));
        }
        Ok(Matrix {
            quantale,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(quantale: &Arc<Quantale>, rows: usize, cols: usize) -> Matrix {
        Matrix {
            quantale: quantale.clone(),
            rows,
            cols,
            entries: vec![quantale.lattice().bottom(); rows * cols],
        }
    }

    pub fn top(quantale: &Arc<Quantale>, rows: usize, cols: usize) -> Matrix {
        Matrix {
            quantale: quantale.clone(),
            rows,
            cols,
            entries: vec![quantale.lattice().top(); rows * cols],
        }
    }

    pub fn identity(quantale: &Arc<Quantale>, k: usize) -> Matrix {
        let mut m = Matrix::zero(quantale, k, k);
        for i in 0..k {
            m.entries[i * k + i] = quantale.unit();
        }
        m
    }

    /// The matrix with the unit at one position and bottom elsewhere.
    pub fn unit_at(quantale: &Arc<Quantale>, k: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zero(quantale, k, k);
        m.entries[i * k + j] = quantale.unit();
        m
    }

    pub fn entry(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn compose(&self, other: &Matrix) -> Result<Matrix> {
        if self.quantale != other.quantale {
            return Err(Error::QuantaleMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch);
        }
        let l = self.quantale.lattice();
        let mut entries = vec![0usize; self.rows * other.cols];
        for x in 0..self.rows {
            for z in 0..other.cols {
                entries[x * other.cols + z] = l.join_iter(
                    (0..self.cols).map(|y| self.quantale.mul(self.entry(x, y), other.entry(y, z))),
                );
            }
        }
        Matrix::new(self.quantale.clone(), self.rows, other.cols, entries)
    }

    pub fn join(&self, other: &Matrix) -> Result<Matrix> {
        if self.quantale != other.quantale {
            return Err(Error::QuantaleMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch);
        }
        let l = self.quantale.lattice();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| l.join2(a, b))
            .collect();
        Matrix::new(self.quantale.clone(), self.rows, self.cols, entries)
    }

    pub fn leq(&self, other: &Matrix) -> Result<bool> {
        if self.quantale != other.quantale {
            return Err(Error::QuantaleMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch);
        }
        let l = self.quantale.lattice();
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .all(|(&a, &b)| l.leq(a, b)))
    }

    pub fn render(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<&str> = (0..self.cols)
                    .map(|j| self.quantale.name(self.entry(i, j)))
                    .collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// The quantale of square matrices of a fixed size, materialized
/// elementwise with conversions to and from `Matrix` values.
pub struct MatrixQuantale {
    pub base: Arc<Quantale>,
    pub size: usize,
    pub quantale: Arc<Quantale>,
}

impl MatrixQuantale {
    pub fn matrix_of(&self, e: Elem) -> Matrix {
        let b = self.base.n();
        let cells = self.size * self.size;
        let mut code = e;
        let entries: Vec<Elem> = (0..cells)
            .map(|_| {
                let v = code % b;
                code /= b;
                v
            })
            .collect();
        Matrix::new(self.base.clone(), self.size, self.size, entries)
            .expect("decoded matrix is well formed")
    }

    pub fn elem_of(&self, m: &Matrix) -> Result<Elem> {
        if m.quantale != self.base {
            return Err(Error::QuantaleMismatch);
        }
        if m.rows != self.size || m.cols != self.size {
            return Err(Error::ShapeMismatch);
        }
        let b = self.base.n();
        Ok(m.entries.iter().rev().fold(0usize, |acc, &v| acc * b + v))
    }
}

/// Materializes the quantale of `k x k` matrices over a base quantale.
pub fn matrix_quantale(base: &Arc<Quantale>, k: usize, budget: usize) -> Result<MatrixQuantale> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "matrix size must be positive".into(),
        ));
    }
    let cells = k * k;
    let mut count: usize = 1;
    for _ in 0..cells {
        count = count.checked_mul(base.n()).unwrap_or(usize::MAX);
    }
    let allowed = budget.min(MATERIALIZE_LIMIT);
    if count > allowed {
        return Err(Error::BudgetExceeded {
            needed: count,
            allowed,
        });
    }

    let b = base.n();
    let decode = |e: Elem| -> Vec<Elem> {
        let mut code = e;
        (0..cells)
            .map(|_| {
                let v = code % b;
                code /= b;
                v
            })
            .collect()
    };
    let tuples: Vec<Vec<Elem>> = (0..count).map(decode).collect();

    let names: Vec<String> = tuples
        .iter()
        .map(|t| {
            let rows: Vec<String> = (0..k)
                .map(|i| {
                    let cells: Vec<&str> = (0..k).map(|j| base.name(t[i * k + j])).collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        })
        .collect();

    let mut up = vec![Bits::new(count); count];
    for a in 0..count {
        for c in 0..count {
            if tuples[a]
                .iter()
                .zip(&tuples[c])
                .all(|(&x, &y)| base.lattice().leq(x, y))
            {
                up[a].set(c);
            }
        }
    }
    let lattice = Lattice::from_up_unchecked(names, up);

    let bl = base.lattice();
    let rows: Vec<Vec<Elem>> = (0..count)
        .into_par_iter()
        .map(|a| {
            let ta = &tuples[a];
            (0..count)
                .map(|c| {
                    let tc = &tuples[c];
                    let mut code = 0usize;
                    for p in (0..cells).rev() {
                        let (x, z) = (p / k, p % k);
                        let v =
                            bl.join_iter((0..k).map(|y| base.mul(ta[x * k + y], tc[y * k + z])));
                        code = code * b + v;
                    }
                    code
                })
                .collect()
        })
        .collect();
    let mult: Vec<Elem> = rows.into_iter().flatten().collect();

    let unit = (0..k).fold(0usize, |acc, i| {
        let mut pw = 1usize;
        for _ in 0..(i * k + i) {
            pw *= b;
        }
        acc + base.unit() * pw
    });
    let quantale = Quantale::validate(lattice, mult, unit)?;
    Ok(MatrixQuantale {
        base: base.clone(),
        size: k,
        quantale,
    })
}

/// The isomorphism between a matrix quantale and the endomorphism
/// quantale of the free module, with both directions validated and
/// checked to be mutually inverse.
pub struct MatrixEndoIso {
    pub matrices: MatrixQuantale,
    pub free: FreeModule,
    pub homs: ModuleHoms,
    pub endos: Arc<Quantale>,
    pub forward: QuantaleMorphism,
    pub backward: QuantaleMorphism,
}

/// Applies a matrix to a free-module element on the left:
/// component `x` of the result joins `m(x, y) * phi_y` over `y`.
pub fn matrix_action(free: &FreeModule, m: &Matrix) -> Result<Vec<Elem>> {
    let q = free.module.quantale();
    if m.quantale != *q {
        return Err(Error::QuantaleMismatch);
    }
    let k = free.basis.len();
    if m.rows != k || m.cols != k {
        return Err(Error::ShapeMismatch);
    }
    let carrier = free.module.carrier();
    Ok((0..carrier.n())
        .map(|phi| {
            carrier.join_iter((0..k).map(|x| {
                let component = q.lattice().join_iter(
                    (0..k).map(|y| q.mul(m.entry(x, y), free.parts.projections[y].apply(phi))),
                );
                free.parts.injections[x].apply(component)
            }))
        })
        .collect())
}

pub fn matrix_endo_iso(base: &Arc<Quantale>, k: usize, budget: usize) -> Result<MatrixEndoIso> {
    let matrices = matrix_quantale(base, k, budget)?;
    let free = free_module(base, k, budget)?;
    let (endos, homs) = endo_module_quantale(&free.module)?;
    let count = homs.lattice.n();

    let forward_table: Vec<Elem> = (0..matrices.quantale.n())
        .map(|e| {
            let action = matrix_action(&free, &matrices.matrix_of(e))
                .expect("materialized matrices have the right shape");
            homs.elem_of_table(&action)
        })
        .collect();
    let forward = QuantaleMorphism::new(matrices.quantale.clone(), endos.clone(), forward_table)?;

    let backward_table: Vec<Elem> = (0..count)
        .map(|h| {
            let t = homs.table_of(h);
            let entries: Vec<Elem> = (0..k * k)
                .map(|p| {
                    let (x, y) = (p / k, p % k);
                    free.parts.projections[x].apply(t[free.basis[y]])
                })
                .collect();
            let m = Matrix::new(base.clone(), k, k, entries).expect("entries are in range");
            matrices.elem_of(&m).expect("shapes agree")
        })
        .collect();
    let backward = QuantaleMorphism::new(endos.clone(), matrices.quantale.clone(), backward_table)?;

    for e in 0..matrices.quantale.n() {
        if backward.map.apply(forward.map.apply(e)) != e {
            return Err(Error::CheckFailed {
                check: "matrix-endo round trip".into(),
                witness: matrices.quantale.name(e).to_string(),
            });
        }
    }
    for h in 0..count {
        if forward.map.apply(backward.map.apply(h)) != h {
            return Err(Error::CheckFailed {
                check: "endo-matrix round trip".into(),
                witness: endos.name(h).to_string(),
            });
        }
    }

    Ok(MatrixEndoIso {
        matrices,
        free,
        homs,
        endos,
        forward,
        backward,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn matrix_value_arithmetic() {
        let q = catalog::chain_locale(3);
        let a = Matrix::new(q.clone(), 2, 2, vec![2, 1, 0, 0]).unwrap();
        let b = Matrix::new(q.clone(), 2, 2, vec![1, 0, 2, 2]).unwrap();
        let c = a.compose(&b).unwrap();
        // (a b)(0,0) = (1 * a) v (a * 1) = a, (a b)(0,1) = (1 * 0) v (a * 1) = a.
        assert_eq!(c.entries(), &[1, 1, 0, 0]);
        let id = Matrix::identity(&q, 2);
        assert_eq!(a.compose(&id).unwrap(), a);
        assert_eq!(id.compose(&a).unwrap(), a);
        assert!(Matrix::zero(&q, 2, 2).leq(&a).unwrap());
        let j = a.join(&b).unwrap();
        assert_eq!(j.entries(), &[2, 1, 2, 2]);
        let wide = Matrix::zero(&q, 2, 3);
        assert!(matches!(a.compose(&wide).unwrap().rows, 2));
        assert!(matches!(wide.compose(&a), Err(Error::ShapeMismatch)));
    }

    #[test]
    fn two_by_two_over_two() {
        let two = catalog::two_quantale();
        let mq = matrix_quantale(&two, 2, 100).unwrap();
        assert_eq!(mq.quantale.n(), 16);
        let e11 = mq.elem_of(&Matrix::unit_at(&two, 2, 0, 0)).unwrap();
        assert_eq!(mq.quantale.mul(e11, e11), e11);
        let e12 = mq.elem_of(&Matrix::unit_at(&two, 2, 0, 1)).unwrap();
        let e21 = mq.elem_of(&Matrix::unit_at(&two, 2, 1, 0)).unwrap();
        // e12 e21 = e11 but e21 e12 = e22.
        let e22 = mq.elem_of(&Matrix::unit_at(&two, 2, 1, 1)).unwrap();
        assert_eq!(mq.quantale.mul(e12, e21), e11);
        assert_eq!(mq.quantale.mul(e21, e12), e22);
        assert!(mq.quantale.commutativity_witness().is_some());
    }

    #[test]
    fn budget_rejects_large_materializations() {
        let q = catalog::chain_locale(3);
        assert!(matches!(
            matrix_quantale(&q, 3, 1_000_000),
            Err(Error::BudgetExceeded { needed: 19683, .. })
        ));
        assert!(matches!(
            matrix_quantale(&q, 2, 50),
            Err(Error::BudgetExceeded {
                needed: 81,
                allowed: 50
            })
        ));
    }

    #[test]
    fn matrix_endo_iso_over_two() {
        let two = catalog::two_quantale();
        let iso = matrix_endo_iso(&two, 2, 10_000).unwrap();
        assert_eq!(iso.matrices.quantale.n(), 16);
        assert_eq!(iso.endos.n(), 16);
        // The identity matrix maps to the identity endomap.
        let id = iso.matrices.elem_of(&Matrix::identity(&two, 2)).unwrap();
        assert_eq!(iso.forward.map.apply(id), iso.endos.unit());
    }
}
