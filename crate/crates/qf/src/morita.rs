//! Idempotent-driven constructions: corner quantales, one-sided ideals,
//! fixed parts of modules, evaluation isomorphisms, generator and
//! projectivity censuses, and end-to-end verification that a quantale and
//! the corner at a full idempotent matrix have equivalent module
//! categories at bounded carrier sizes.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::bits::Bits;
use crate::catalog;
use crate::error::{Error, Result};
use crate::iso::{module_iso, quantale_iso};
use crate::lattice::{biproduct, split_idempotent, Elem, Lattice, Splitting, SupMap};
use crate::matrix::{matrix_endo_iso, matrix_quantale, Matrix, MatrixEndoIso, MatrixQuantale};
use crate::module::{
    all_module_morphisms, endo_module_quantale, is_projective, module_classes, module_homs,
    module_power, projective_cover, regular_module, Module, ModuleHoms, ModuleMorphism,
};
use crate::quantale::{Quantale, QuantaleMorphism};
use crate::report::Verdict;

/// The join-closure of a generating set: an element belongs exactly when
/// it equals the join of the generators below it.
fn join_closure(l: &Arc<Lattice>, gens: &Bits) -> Bits {
    let mut out = Bits::new(l.n());
    for x in 0..l.n() {
        if l.join_iter(gens.ones().filter(|&g| l.leq(g, x))) == x {
            out.set(x);
        }
    }
    out
}

/// The elements squaring to themselves, in ascending order.
pub fn idempotent_elements(q: &Arc<Quantale>) -> Vec<Elem> {
    (0..q.n()).filter(|&e| q.mul(e, e) == e).collect()
}

/// The corner of a quantale at an idempotent: the fixed points of
/// two-sided multiplication by e, a quantale under the inherited
/// operations with unit e.
pub struct Corner {
    pub ambient: Arc<Quantale>,
    pub e: Elem,
    pub quantale: Arc<Quantale>,
    /// Ambient indices of the corner elements, in ascending order.
    pub members: Vec<Elem>,
    pub split: Splitting,
}

pub fn corner_quantale(a: &Arc<Quantale>, e: Elem) -> Result<Corner> {
    if a.mul(e, e) != e {
        return Err(Error::NotIdempotent(e));
    }
    let table: Vec<Elem> = (0..a.n()).map(|x| a.mul(a.mul(e, x), e)).collect();
    let conj = SupMap::new(a.lattice().clone(), a.lattice().clone(), table)?;
    let split = split_idempotent(&conj)?;
    let members = split.members.clone();
    let k = members.len();
    let mut mult = vec![0usize; k * k];
    for i in 0..k {
        for j in 0..k {
            mult[i * k + j] = split.project.apply(a.mul(members[i], members[j]));
        }
    }
    let unit = split.project.apply(e);
    let quantale = Quantale::validate(split.object.clone(), mult, unit)?;
    Ok(Corner {
        ambient: a.clone(),
        e,
        quantale,
        members,
        split,
    })
}

/// The right ideal of an idempotent inside the regular module: the span of
/// e, whose elements are exactly the products e*a.
pub struct RightIdeal {
    pub ambient: Arc<Module>,
    pub e: Elem,
    pub module: Arc<Module>,
    /// Ambient indices of the ideal elements, in ascending order.
    pub members: Vec<Elem>,
}

pub fn right_ideal(a: &Arc<Quantale>, e: Elem) -> Result<RightIdeal> {
    if a.mul(e, e) != e {
        return Err(Error::NotIdempotent(e));
    }
    let reg = regular_module(a);
    let bits = reg.span([e]);
    let (module, members) = reg.submodule(&bits)?;
    Ok(RightIdeal {
        ambient: reg,
        e,
        module,
        members,
    })
}

/// The fixed part of a module at an idempotent, as a module over the
/// corner: the elements with m.e = m, acted on by corner elements.
pub struct FixedPart {
    pub ambient: Arc<Module>,
    pub module: Arc<Module>,
    /// Ambient indices of the fixed elements, in ascending order.
    pub members: Vec<Elem>,
    pub split: Splitting,
}

pub fn fixed_part(corner: &Corner, m: &Arc<Module>) -> Result<FixedPart> {
    if *m.quantale() != corner.ambient {
        return Err(Error::QuantaleMismatch);
    }
    let table: Vec<Elem> = (0..m.carrier().n()).map(|x| m.act(x, corner.e)).collect();
    let fix = SupMap::new(m.carrier().clone(), m.carrier().clone(), table)?;
    let split = split_idempotent(&fix)?;
    let members = split.members.clone();
    let k = members.len();
    let bn = corner.quantale.n();
    let mut action = vec![0usize; k * bn];
    for (i, &mm) in members.iter().enumerate() {
        for (b, &bm) in corner.members.iter().enumerate() {
            action[i * bn + b] = split.project.apply(m.act(mm, bm));
        }
    }
    let module = Module::validate(corner.quantale.clone(), split.object.clone(), action)?;
    Ok(FixedPart {
        ambient: m.clone(),
        module,
        members,
        split,
    })
}

/// The evaluation isomorphism between morphisms out of the right ideal and
/// the fixed part of the target: f maps to f(e), with inverse sending a
/// fixed element m to the morphism x -> m.x. Both directions are verified
/// join-preserving and mutually inverse on construction.
pub struct EvaluationIso {
    pub ideal: RightIdeal,
    pub homs: ModuleHoms,
    pub fixed: FixedPart,
    /// From the hom lattice to the fixed-part carrier.
    pub forward: SupMap,
    pub backward: SupMap,
}

pub fn evaluation_iso(corner: &Corner, m: &Arc<Module>) -> Result<EvaluationIso> {
    let ideal = right_ideal(&corner.ambient, corner.e)?;
    let homs = module_homs(&ideal.module, m)?;
    let fixed = fixed_part(corner, m)?;
    let e_inside = ideal
        .members
        .binary_search(&corner.e)
        .expect("an idempotent generates its own ideal");
    let forward_table: Vec<Elem> = (0..homs.lattice.n())
        .map(|h| fixed.split.project.apply(homs.table_of(h)[e_inside]))
        .collect();
    let forward = SupMap::new(
        homs.lattice.clone(),
        fixed.module.carrier().clone(),
        forward_table,
    )?;
    let backward_table: Vec<Elem> = fixed
        .members
        .iter()
        .map(|&mm| {
            let t: Vec<Elem> = ideal.members.iter().map(|&x| m.act(mm, x)).collect();
            homs.elem_of_table(&t)
        })
        .collect();
    let backward = SupMap::new(
        fixed.module.carrier().clone(),
        homs.lattice.clone(),
        backward_table,
    )?;
    for h in 0..homs.lattice.n() {
        if backward.apply(forward.apply(h)) != h {
            return Err(Error::CheckFailed {
                check: "evaluation round trip".into(),
                witness: homs.lattice.name(h).to_string(),
            });
        }
    }
    for i in 0..fixed.module.carrier().n() {
        if forward.apply(backward.apply(i)) != i {
            return Err(Error::CheckFailed {
                check: "evaluation round trip".into(),
                witness: fixed.module.carrier().name(i).to_string(),
            });
        }
    }
    Ok(EvaluationIso {
        ideal,
        homs,
        fixed,
        forward,
        backward,
    })
}

/// Whether evaluation commutes with a module morphism g between the
/// targets: evaluating the postcomposition g . h equals applying g to the
/// evaluation of h. Both sides must come from the same corner.
pub fn evaluation_natural(at_m: &EvaluationIso, at_n: &EvaluationIso, g: &ModuleMorphism) -> bool {
    for h in 0..at_m.homs.lattice.n() {
        let composed: Vec<Elem> = at_m
            .homs
            .table_of(h)
            .iter()
            .map(|&v| g.map.apply(v))
            .collect();
        let lhs = at_n.forward.apply(at_n.homs.elem_of_table(&composed));
        let evaluated = at_m.fixed.members[at_m.forward.apply(h)];
        let rhs = at_n.fixed.split.project.apply(g.map.apply(evaluated));
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// The evaluation map corestricted to an isomorphism of quantales between
/// endomorphisms of the right ideal and the corner.
pub struct CornerEndIso {
    pub ideal: RightIdeal,
    pub end: Arc<Quantale>,
    pub homs: ModuleHoms,
    pub forward: QuantaleMorphism,
    pub backward: QuantaleMorphism,
}

pub fn corner_end_iso(corner: &Corner) -> Result<CornerEndIso> {
    let ideal = right_ideal(&corner.ambient, corner.e)?;
    let (end, homs) = endo_module_quantale(&ideal.module)?;
    let e_inside = ideal
        .members
        .binary_search(&corner.e)
        .expect("an idempotent generates its own ideal");
    let forward_table: Vec<Elem> = (0..end.n())
        .map(|h| {
            let value = ideal.members[homs.table_of(h)[e_inside]];
            corner.split.project.apply(value)
        })
        .collect();
    let forward = QuantaleMorphism::new(end.clone(), corner.quantale.clone(), forward_table)?;
    let backward_table: Vec<Elem> = corner
        .members
        .iter()
        .map(|&b| {
            let t: Vec<Elem> = ideal
                .members
                .iter()
                .map(|&x| {
                    let value = corner.ambient.mul(b, x);
                    ideal
                        .members
                        .binary_search(&value)
                        .expect("an ideal is closed under left multiplication by corner elements")
                })
                .collect();
            homs.elem_of_table(&t)
        })
        .collect();
    let backward = QuantaleMorphism::new(corner.quantale.clone(), end.clone(), backward_table)?;
    for h in 0..end.n() {
        if backward.map.apply(forward.map.apply(h)) != h {
            return Err(Error::CheckFailed {
                check: "corner round trip".into(),
                witness: end.name(h).to_string(),
            });
        }
    }
    for c in 0..corner.quantale.n() {
        if forward.map.apply(backward.map.apply(c)) != c {
            return Err(Error::CheckFailed {
                check: "corner round trip".into(),
                witness: corner.quantale.name(c).to_string(),
            });
        }
    }
    Ok(CornerEndIso {
        ideal,
        end,
        homs,
        forward,
        backward,
    })
}

/// The image of the multiplication map from the fixed part and the right
/// ideal into a module: the join-closure of the values m.(e*a). The map
/// is epi exactly when the closure is the whole module.
pub struct KappaMap {
    pub image: Bits,
    pub epi: bool,
}

pub fn kappa_map(corner: &Corner, m: &Arc<Module>) -> Result<KappaMap> {
    if *m.quantale() != corner.ambient {
        return Err(Error::QuantaleMismatch);
    }
    let l = m.carrier();
    let mut gens = Bits::new(l.n());
    for x in 0..l.n() {
        let fixed = m.act(x, corner.e);
        for a in 0..corner.ambient.n() {
            gens.set(m.act(fixed, a));
        }
    }
    let image = join_closure(l, &gens);
    let epi = image.count() == l.n();
    Ok(KappaMap { image, epi })
}

/// Whether the two-sided ideal generated by an idempotent is everything:
/// the join-closure of the products x*e*y covers the quantale.
pub fn is_full_idempotent(a: &Arc<Quantale>, e: Elem) -> Result<bool> {
    if a.mul(e, e) != e {
        return Err(Error::NotIdempotent(e));
    }
    let mut gens = Bits::new(a.n());
    for x in 0..a.n() {
        let left = a.mul(x, e);
        for y in 0..a.n() {
            gens.set(a.mul(left, y));
        }
    }
    Ok(join_closure(a.lattice(), &gens).count() == a.n())
}

/// Whether evaluation into the quantale is jointly surjective: the
/// join-closure of all values of all morphisms into the regular module
/// covers the quantale.
pub fn is_generator(m: &Arc<Module>) -> Result<bool> {
    let a = m.quantale().clone();
    let reg = regular_module(&a);
    let homs = all_module_morphisms(m, &reg)?;
    let mut gens = Bits::new(a.n());
    for h in &homs {
        for x in 0..m.carrier().n() {
            gens.set(h.map.apply(x));
        }
    }
    Ok(join_closure(a.lattice(), &gens).count() == a.n())
}

/// The matrices supported at a single entry holding a join-irreducible.
fn ji_singles(q: &Arc<Quantale>, k: usize) -> Vec<Matrix> {
    let l = q.lattice();
    let mut out = Vec::new();
    for x in 0..k {
        for y in 0..k {
            for v in 0..q.n() {
                if !l.is_ji(v) {
                    continue;
                }
                let mut entries = vec![l.bottom(); k * k];
                entries[x * k + y] = v;
                out.push(Matrix::new(q.clone(), k, k, entries).expect("entries are in range"));
            }
        }
    }
    out
}

/// Fullness of an idempotent matrix without materializing the matrix
/// quantale: every single-entry matrix holding a join-irreducible must
/// equal the join of the dominated products s*e*s' over single-entry
/// factors.
pub fn is_full_idempotent_matrix(e: &Matrix) -> Result<bool> {
    if e.rows != e.cols {
        return Err(Error::ShapeMismatch);
    }
    let square = e.compose(e)?;
    if let Some(p) = (0..e.entries().len()).find(|&p| square.entries()[p] != e.entries()[p]) {
        return Err(Error::NotIdempotent(p));
    }
    let singles = ji_singles(&e.quantale, e.rows);
    let mut products = Vec::new();
    for s in &singles {
        let left = s.compose(e)?;
        for s2 in &singles {
            products.push(left.compose(s2)?);
        }
    }
    for target in &singles {
        let mut acc = Matrix::zero(&e.quantale, e.rows, e.cols);
        for p in &products {
            if p.leq(target)? {
                acc = acc.join(p)?;
            }
        }
        if acc.entries() != target.entries() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The corner of a matrix quantale at an idempotent, built directly from
/// matrix values: the join-closure of the products e*s*e over single-entry
/// matrices, a quantale under composition with unit e.
pub fn matrix_corner(e: &Matrix, budget: usize) -> Result<(Arc<Quantale>, Vec<Matrix>)> {
    if e.rows != e.cols {
        return Err(Error::ShapeMismatch);
    }
    let square = e.compose(e)?;
    if let Some(p) = (0..e.entries().len()).find(|&p| square.entries()[p] != e.entries()[p]) {
        return Err(Error::NotIdempotent(p));
    }
    let q = &e.quantale;
    let k = e.rows;
    let l = q.lattice();
    let mut elems: BTreeSet<Vec<Elem>> = BTreeSet::new();
    elems.insert(vec![l.bottom(); k * k]);
    for s in ji_singles(q, k) {
        elems.insert(e.compose(&s)?.compose(e)?.entries().to_vec());
    }
    loop {
        let snapshot: Vec<Vec<Elem>> = elems.iter().cloned().collect();
        let before = elems.len();
        for a in &snapshot {
            for b in &snapshot {
                let join: Vec<Elem> = a.iter().zip(b).map(|(&x, &y)| l.join2(x, y)).collect();
                elems.insert(join);
            }
        }
        if elems.len() > budget {
            return Err(Error::BudgetExceeded {
                needed: elems.len(),
                allowed: budget,
            });
        }
        if elems.len() == before {
            break;
        }
    }
    let members: Vec<Matrix> = elems
        .iter()
        .map(|t| Matrix::new(q.clone(), k, k, t.clone()).expect("entries are in range"))
        .collect();
    let n = members.len();
    let mut leq = vec![vec![false; n]; n];
    for (i, a) in members.iter().enumerate() {
        for (j, b) in members.iter().enumerate() {
            leq[i][j] = a.leq(b)?;
        }
    }
    let names = members.iter().map(|m| m.render()).collect();
    let lattice = Lattice::validate(names, &leq)?;
    let index: std::collections::HashMap<&[Elem], usize> = members
        .iter()
        .enumerate()
        .map(|(i, m)| (m.entries(), i))
        .collect();
    let mut mult = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            let prod = members[i].compose(&members[j])?;
            mult[i * n + j] = *index
                .get(prod.entries())
                .expect("a corner is closed under composition");
        }
    }
    let unit = *index
        .get(e.entries())
        .expect("the idempotent is the join of its own diagonal products");
    let quantale = Quantale::validate(lattice, mult, unit)?;
    Ok((quantale, members))
}

/// Scans a materialized matrix quantale for full idempotents.
pub fn find_full_idempotents(
    base: &Arc<Quantale>,
    k: usize,
    budget: usize,
) -> Result<(MatrixQuantale, Vec<Elem>)> {
    let mats = matrix_quantale(base, k, budget)?;
    let q = mats.quantale.clone();
    let mut out = Vec::new();
    for e in idempotent_elements(&q) {
        if is_full_idempotent(&q, e)? {
            out.push(e);
        }
    }
    Ok((mats, out))
}

/// A projective generator found by the census, with its endomorphism
/// quantale.
pub struct CensusEntry {
    pub carrier_name: String,
    pub module: Arc<Module>,
    pub end: Arc<Quantale>,
    pub homs: ModuleHoms,
}

/// Enumerates the module classes over carriers up to the given size that
/// are both projective and generators, in a fixed order.
pub fn projective_generator_census(
    a: &Arc<Quantale>,
    carrier_budget: usize,
    budget: usize,
) -> Result<Vec<CensusEntry>> {
    let mut out = Vec::new();
    for (name, l) in catalog::all_lattices_up_to(carrier_budget)? {
        for m in module_classes(a, &l)? {
            if is_generator(&m)? && is_projective(&m, budget)? {
                let (end, homs) = endo_module_quantale(&m)?;
                out.push(CensusEntry {
                    carrier_name: name.clone(),
                    module: m,
                    end,
                    homs,
                });
            }
        }
    }
    Ok(out)
}

/// Matrix data recovered from a projective generator: an index set of the
/// full carrier size, the idempotent matrix splitting the canonical free
/// cover, and the corner it generates, isomorphic to the endomorphism
/// quantale of the generator.
pub struct RecoveredWitness {
    pub size: usize,
    pub idempotent: Matrix,
    pub full: bool,
    pub corner: Arc<Quantale>,
    pub corner_members: Vec<Matrix>,
    /// Carrier table of an isomorphism from the endomorphism quantale to
    /// the corner, when the search finds one.
    pub end_iso: Option<Vec<Elem>>,
}

pub fn recover_witness(m: &Arc<Module>, budget: usize) -> Result<RecoveredWitness> {
    let cover = projective_cover(m, budget)?;
    let section = cover.section.as_ref().ok_or(Error::CheckFailed {
        check: "projectivity".into(),
        witness: "the canonical cover admits no section".into(),
    })?;
    let a = m.quantale();
    let n = m.carrier().n();
    let mut entries = vec![0usize; n * n];
    for y in 0..n {
        let sy = section.map.apply(y);
        for x in 0..n {
            entries[x * n + y] = cover.free.parts.projections[x].apply(sy);
        }
    }
    let idempotent = Matrix::new(a.clone(), n, n, entries)?;
    let square = idempotent.compose(&idempotent)?;
    if square.entries() != idempotent.entries() {
        return Err(Error::CheckFailed {
            check: "splitting idempotent".into(),
            witness: "the recovered matrix does not square to itself".into(),
        });
    }
    let full = is_full_idempotent_matrix(&idempotent)?;
    let (corner, corner_members) = matrix_corner(&idempotent, budget)?;
    let (end, _) = endo_module_quantale(m)?;
    let end_iso = quantale_iso(&end, &corner);
    Ok(RecoveredWitness {
        size: n,
        idempotent,
        full,
        corner,
        corner_members,
        end_iso,
    })
}

/// Whether the canonical comparison from tuples of endomorphisms to
/// morphisms into the power module is an isomorphism at width k.
pub fn self_smallness(m: &Arc<Module>, k: usize, budget: usize) -> Result<bool> {
    let homs_qq = module_homs(m, m)?;
    let factors: Vec<Arc<Lattice>> = (0..k).map(|_| homs_qq.lattice.clone()).collect();
    let tuples = biproduct(&factors, budget)?;
    let power = module_power(m, k, budget)?;
    let homs_qp = module_homs(m, &power.module)?;
    let table: Vec<Elem> = (0..tuples.lattice.n())
        .map(|t| {
            let assembled: Vec<Elem> = (0..m.carrier().n())
                .map(|x| {
                    power.parts.lattice.join_iter((0..k).map(|i| {
                        let fi = tuples.projections[i].apply(t);
                        power.parts.injections[i].apply(homs_qq.table_of(fi)[x])
                    }))
                })
                .collect();
            homs_qp.elem_of_table(&assembled)
        })
        .collect();
    let gamma = SupMap::new(tuples.lattice.clone(), homs_qp.lattice.clone(), table)?;
    Ok(gamma.is_injective() && gamma.is_surjective())
}

/// Everything recovered and verified from one idempotent matrix: the
/// split generator module, the matrix corner, the transported
/// isomorphisms, and the bounded comparison-functor evidence.
pub struct MoritaWitness {
    pub iso: MatrixEndoIso,
    /// Index of the idempotent inside the materialized matrix quantale.
    pub e: Elem,
    pub full: bool,
    /// Splitting of the induced endomorphism on the free module carrier.
    pub split: Splitting,
    /// The split module, a submodule of the free module.
    pub generator: Arc<Module>,
    /// Free-carrier indices of the generator elements.
    pub members: Vec<Elem>,
    /// The corner of the matrix quantale at the idempotent.
    pub corner: Corner,
    pub checks: Vec<Verdict>,
}

impl MoritaWitness {
    /// The endomorphism of the generator induced by an ambient matrix
    /// element, restricted to generator indices.
    fn induced_endo(&self, ambient: Elem) -> Vec<Elem> {
        let t = self.iso.homs.table_of(self.iso.forward.map.apply(ambient));
        self.members
            .iter()
            .map(|&x| self.split.project.apply(t[x]))
            .collect()
    }

    /// The comparison module of m: morphisms from the generator into m,
    /// with corner elements acting by precomposition.
    pub fn comparison_module(&self, m: &Arc<Module>) -> Result<(Arc<Module>, ModuleHoms)> {
        let homs = module_homs(&self.generator, m)?;
        let bn = self.corner.quantale.n();
        let hn = homs.lattice.n();
        let mut action = vec![0usize; hn * bn];
        for (b, &bm) in self.corner.members.iter().enumerate() {
            let inner = self.induced_endo(bm);
            for f in 0..hn {
                let table: Vec<Elem> = inner.iter().map(|&x| homs.table_of(f)[x]).collect();
                action[f * bn + b] = homs.elem_of_table(&table);
            }
        }
        let module = Module::validate(self.corner.quantale.clone(), homs.lattice.clone(), action)?;
        Ok((module, homs))
    }
}

/// Runs the full verification pipeline for one idempotent matrix over a
/// materialized matrix quantale. The report continues past a fullness
/// failure so the generator criterion can be exercised negatively.
pub fn morita_witness_check(
    base: &Arc<Quantale>,
    k: usize,
    mat: &Matrix,
    carrier_budget: usize,
    budget: usize,
) -> Result<MoritaWitness> {
    let iso = matrix_endo_iso(base, k, budget)?;
    morita_witness_check_with(iso, mat, carrier_budget)
}

/// As [`morita_witness_check`], reusing an already materialized matrix
/// quantale and its endomorphism description.
pub fn morita_witness_check_with(
    iso: MatrixEndoIso,
    mat: &Matrix,
    carrier_budget: usize,
) -> Result<MoritaWitness> {
    let e = iso.matrices.elem_of(mat)?;
    let q = iso.matrices.quantale.clone();
    if q.mul(e, e) != e {
        return Err(Error::NotIdempotent(e));
    }
    let mut checks = vec![Verdict::pass_with("idempotent matrix", mat.render())];

    let full = is_full_idempotent(&q, e)?;
    checks.push(if full {
        Verdict::pass_with("full idempotent", "two-sided ideal covers the quantale")
    } else {
        Verdict::fail("full idempotent", "two-sided ideal is proper")
    });

    let je = iso.forward.map.apply(e);
    let endo_table = iso.homs.table_of(je).to_vec();
    let free_carrier = iso.free.module.carrier().clone();
    let split = split_idempotent(&SupMap::new(
        free_carrier.clone(),
        free_carrier.clone(),
        endo_table,
    )?)?;
    let mut bits = Bits::new(free_carrier.n());
    for &x in &split.members {
        bits.set(x);
    }
    let (generator, members) = iso.free.module.submodule(&bits)?;
    checks.push(Verdict::pass_with(
        "splitting of the induced endomorphism",
        format!("{} of {} free elements", members.len(), free_carrier.n()),
    ));

    let corner = corner_quantale(&q, e)?;
    checks.push(if corner.members[corner.quantale.unit()] == e {
        Verdict::pass_with(
            "corner quantale with the idempotent as unit",
            format!("{} elements", corner.quantale.n()),
        )
    } else {
        Verdict::fail(
            "corner quantale with the idempotent as unit",
            "the corner unit is not the idempotent",
        )
    });

    let gen = is_generator(&generator)?;
    checks.push(Verdict::check(
        "generator criterion agrees with fullness",
        gen == full,
        format!("generator {gen}, full {full}"),
    ));

    let w = MoritaWitness {
        iso,
        e,
        full,
        split,
        generator,
        members,
        corner,
        checks: Vec::new(),
    };

    checks.push(hom_transport_check(&w)?);
    checks.push(end_transport_check(&w)?);

    let base = w.generator.quantale().clone();
    let mut a_pool: Vec<(String, Arc<Module>)> = Vec::new();
    for (name, l) in catalog::all_lattices_up_to(carrier_budget)? {
        for (i, m) in module_classes(&base, &l)?.into_iter().enumerate() {
            a_pool.push((format!("{name}#{i}"), m));
        }
    }
    let mut k_pool: Vec<(Arc<Module>, ModuleHoms)> = Vec::new();
    for (_, m) in &a_pool {
        k_pool.push(w.comparison_module(m)?);
    }

    checks.push(functor_laws_check(&a_pool, &k_pool)?);
    checks.push(fully_faithful_check(&a_pool, &k_pool)?);
    checks.push(essential_surjectivity_check(&w, &k_pool, carrier_budget)?);

    let mut w = w;
    w.checks = checks;
    Ok(w)
}

/// Morphisms from the generator into the free module transport onto the
/// fixed points of right multiplication by the idempotent.
fn hom_transport_check(w: &MoritaWitness) -> Result<Verdict> {
    let name = "morphisms into the free module transport onto the right ideal";
    let q = &w.iso.matrices.quantale;
    let homs_qf = module_homs(&w.generator, &w.iso.free.module)?;
    let table: Vec<Elem> = (0..q.n()).map(|x| q.mul(x, w.e)).collect();
    let fix = split_idempotent(&SupMap::new(
        q.lattice().clone(),
        q.lattice().clone(),
        table,
    )?)?;
    if homs_qf.lattice.n() != fix.object.n() {
        return Ok(Verdict::fail(
            name,
            format!(
                "{} morphisms vs {} fixed matrices",
                homs_qf.lattice.n(),
                fix.object.n()
            ),
        ));
    }
    let free_n = w.iso.free.module.carrier().n();
    let fwd: Vec<Elem> = (0..homs_qf.lattice.n())
        .map(|h| {
            let ht = homs_qf.table_of(h);
            let composite: Vec<Elem> = (0..free_n).map(|f| ht[w.split.project.apply(f)]).collect();
            let m = w
                .iso
                .backward
                .map
                .apply(w.iso.homs.elem_of_table(&composite));
            fix.project.apply(m)
        })
        .collect();
    let bwd: Vec<Elem> = fix
        .members
        .iter()
        .map(|&m| {
            let t = w.iso.homs.table_of(w.iso.forward.map.apply(m));
            let restricted: Vec<Elem> = w.members.iter().map(|&x| t[x]).collect();
            homs_qf.elem_of_table(&restricted)
        })
        .collect();
    let f = SupMap::new(homs_qf.lattice.clone(), fix.object.clone(), fwd);
    let b = SupMap::new(fix.object.clone(), homs_qf.lattice.clone(), bwd);
    let (f, b) = match (f, b) {
        (Ok(f), Ok(b)) => (f, b),
        _ => return Ok(Verdict::fail(name, "transport is not join-preserving")),
    };
    let round = (0..homs_qf.lattice.n()).all(|h| b.apply(f.apply(h)) == h)
        && (0..fix.object.n()).all(|i| f.apply(b.apply(i)) == i);
    Ok(Verdict::check(name, round, "transport does not round-trip"))
}

/// Endomorphisms of the generator transport onto the corner as a quantale
/// isomorphism.
fn end_transport_check(w: &MoritaWitness) -> Result<Verdict> {
    let name = "endomorphisms transport onto the corner";
    let (end, homs_qq) = endo_module_quantale(&w.generator)?;
    if end.n() != w.corner.quantale.n() {
        return Ok(Verdict::fail(
            name,
            format!(
                "{} endomorphisms vs {} corner elements",
                end.n(),
                w.corner.quantale.n()
            ),
        ));
    }
    let free_n = w.iso.free.module.carrier().n();
    let fwd: Vec<Elem> = (0..end.n())
        .map(|h| {
            let ht = homs_qq.table_of(h);
            let composite: Vec<Elem> = (0..free_n)
                .map(|f| w.members[ht[w.split.project.apply(f)]])
                .collect();
            let m = w
                .iso
                .backward
                .map
                .apply(w.iso.homs.elem_of_table(&composite));
            w.corner.split.project.apply(m)
        })
        .collect();
    let bwd: Vec<Elem> = w
        .corner
        .members
        .iter()
        .map(|&b| homs_qq.elem_of_table(&w.induced_endo(b)))
        .collect();
    let f = QuantaleMorphism::new(end.clone(), w.corner.quantale.clone(), fwd);
    let b = QuantaleMorphism::new(w.corner.quantale.clone(), end.clone(), bwd);
    let (f, b) = match (f, b) {
        (Ok(f), Ok(b)) => (f, b),
        (Err(err), _) | (_, Err(err)) => return Ok(Verdict::fail(name, err.to_string())),
    };
    let round = (0..end.n()).all(|h| b.map.apply(f.map.apply(h)) == h)
        && (0..w.corner.quantale.n()).all(|c| f.map.apply(b.map.apply(c)) == c);
    Ok(Verdict::check(name, round, "transport does not round-trip"))
}

/// The table of the comparison of a morphism: postcomposition on
/// morphisms from the generator.
fn comparison_morphism(g: &ModuleMorphism, km: &ModuleHoms, kn: &ModuleHoms) -> Vec<Elem> {
    (0..km.lattice.n())
        .map(|f| {
            let composed: Vec<Elem> = km.table_of(f).iter().map(|&v| g.map.apply(v)).collect();
            kn.elem_of_table(&composed)
        })
        .collect()
}

/// The comparison functor preserves identities and composition across the
/// module pool.
fn functor_laws_check(
    a_pool: &[(String, Arc<Module>)],
    k_pool: &[(Arc<Module>, ModuleHoms)],
) -> Result<Verdict> {
    let name = "comparison functor preserves identities and composition";
    for (i, (mn, m)) in a_pool.iter().enumerate() {
        let identity: Vec<Elem> = (0..m.carrier().n()).collect();
        let g = ModuleMorphism::new(m.clone(), m.clone(), identity)?;
        let kg = comparison_morphism(&g, &k_pool[i].1, &k_pool[i].1);
        if kg.iter().enumerate().any(|(f, &v)| f != v) {
            return Ok(Verdict::fail(
                name,
                format!("identity on {mn} is not preserved"),
            ));
        }
    }
    for (i, (mn, m)) in a_pool.iter().enumerate() {
        for (j, (nn, n)) in a_pool.iter().enumerate() {
            let first = all_module_morphisms(m, n)?;
            for (o, (pn, p)) in a_pool.iter().enumerate() {
                let second = all_module_morphisms(n, p)?;
                for g1 in &first {
                    let kg1 = comparison_morphism(g1, &k_pool[i].1, &k_pool[j].1);
                    for g2 in &second {
                        let kg2 = comparison_morphism(g2, &k_pool[j].1, &k_pool[o].1);
                        let composed_table: Vec<Elem> =
                            g1.map.table().iter().map(|&v| g2.map.apply(v)).collect();
                        let composed = ModuleMorphism::new(m.clone(), p.clone(), composed_table)?;
                        let k_composed = comparison_morphism(&composed, &k_pool[i].1, &k_pool[o].1);
                        let chained: Vec<Elem> = kg1.iter().map(|&v| kg2[v]).collect();
                        if k_composed != chained {
                            return Ok(Verdict::fail(
                                name,
                                format!("composition {mn} -> {nn} -> {pn} is not preserved"),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::pass(name))
}

/// Postcomposition is a bijection from module morphisms onto corner-module
/// morphisms between the comparison images, for every pool pair.
fn fully_faithful_check(
    a_pool: &[(String, Arc<Module>)],
    k_pool: &[(Arc<Module>, ModuleHoms)],
) -> Result<Verdict> {
    let name = "comparison functor is fully faithful on the module pool";
    for (i, (mn, m)) in a_pool.iter().enumerate() {
        for (j, (nn, n)) in a_pool.iter().enumerate() {
            let source = all_module_morphisms(m, n)?;
            let (km, km_homs) = &k_pool[i];
            let (kn, kn_homs) = &k_pool[j];
            let target = all_module_morphisms(km, kn)?;
            let mut images: Vec<Vec<Elem>> = Vec::new();
            for g in &source {
                let table = comparison_morphism(g, km_homs, kn_homs);
                if ModuleMorphism::new(km.clone(), kn.clone(), table.clone()).is_err() {
                    return Ok(Verdict::fail(
                        name,
                        format!("{mn} -> {nn}: a comparison image is not equivariant"),
                    ));
                }
                images.push(table);
            }
            images.sort();
            images.dedup();
            if images.len() != source.len() || images.len() != target.len() {
                return Ok(Verdict::fail(
                    name,
                    format!(
                        "{mn} -> {nn}: {} morphisms, {} distinct images, {} corner morphisms",
                        source.len(),
                        images.len(),
                        target.len()
                    ),
                ));
            }
        }
    }
    Ok(Verdict::pass(name))
}

/// Every corner module class in the bounded pool is isomorphic to a
/// comparison image.
fn essential_surjectivity_check(
    w: &MoritaWitness,
    k_pool: &[(Arc<Module>, ModuleHoms)],
    carrier_budget: usize,
) -> Result<Verdict> {
    let name = format!("essential surjectivity at carrier budget {carrier_budget}");
    let mut count = 0usize;
    for (lname, l) in catalog::all_lattices_up_to(carrier_budget)? {
        for (i, v) in module_classes(&w.corner.quantale, &l)?
            .into_iter()
            .enumerate()
        {
            count += 1;
            if !k_pool.iter().any(|(km, _)| module_iso(&v, km).is_some()) {
                return Ok(Verdict::fail(
                    name,
                    format!("corner module {lname}#{i} is not a comparison image"),
                ));
            }
        }
    }
    Ok(Verdict::pass_with(
        name,
        format!("{count} corner module classes covered"),
    ))
}

/// Bounded evidence about whether two quantales have equivalent module
/// categories: a direct isomorphism search plus censuses of projective
/// generators on both sides. Every verdict reports as a pass; the
/// conclusion is carried in the witness text.
pub fn equivalence_evidence(
    a: &Arc<Quantale>,
    b: &Arc<Quantale>,
    carrier_budget: usize,
    budget: usize,
) -> Result<Vec<Verdict>> {
    let mut checks = Vec::new();
    let both_commutative =
        a.commutativity_witness().is_none() && b.commutativity_witness().is_none();
    checks.push(Verdict::pass_with(
        "commutativity",
        if both_commutative {
            "both multiplications commute"
        } else {
            "at least one multiplication does not commute"
        },
    ));
    let direct = quantale_iso(a, b);
    checks.push(Verdict::pass_with(
        "direct isomorphism search",
        match &direct {
            Some(t) => format!("isomorphism found: {t:?}"),
            None => "no isomorphism".into(),
        },
    ));
    let census_a = projective_generator_census(a, carrier_budget, budget)?;
    let hits_a: Vec<String> = census_a
        .iter()
        .filter(|entry| quantale_iso(&entry.end, b).is_some())
        .map(|entry| entry.carrier_name.clone())
        .collect();
    checks.push(Verdict::pass_with(
        "census of projective generators over the first quantale",
        format!(
            "{} entries, {} with endomorphism quantale matching the second",
            census_a.len(),
            hits_a.len()
        ),
    ));
    let census_b = projective_generator_census(b, carrier_budget, budget)?;
    let hits_b: Vec<String> = census_b
        .iter()
        .filter(|entry| quantale_iso(&entry.end, a).is_some())
        .map(|entry| entry.carrier_name.clone())
        .collect();
    checks.push(Verdict::pass_with(
        "census of projective generators over the second quantale",
        format!(
            "{} entries, {} with endomorphism quantale matching the first",
            census_b.len(),
            hits_b.len()
        ),
    ));
    let conclusion = if direct.is_some() {
        "Morita equivalent (isomorphic quantales)".to_string()
    } else if !hits_a.is_empty() || !hits_b.is_empty() {
        "Morita equivalent (witness generator found)".to_string()
    } else if both_commutative {
        format!(
            "not Morita equivalent at carrier budget {carrier_budget} \
             (commutative quantales are equivalent only when isomorphic)"
        )
    } else {
        format!("no equivalence witness found at carrier budget {carrier_budget}")
    };
    checks.push(Verdict::pass_with("conclusion", conclusion));
    Ok(checks)
}
