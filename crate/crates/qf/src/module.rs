//! Right modules over a quantale and their morphisms.
//!
//! The action is stored as a table `carrier x quantale -> carrier`. It must
//! preserve joins in each slot separately, act by the unit as identity, and
//! associate with the multiplication; as with quantales, associativity is
//! checked on join-irreducible triples, which suffices once the
//! distributivity laws hold.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::lattice::{biproduct, lattice_from_tables, sup_violation, table_name, Biproduct};
use crate::lattice::{Elem, Lattice, SupMap};
use crate::quantale::Quantale;
use crate::tensor::{internal_hom, Bimorphism};

const UNSET: usize = usize::MAX;

pub struct Module {
    quantale: Arc<Quantale>,
    carrier: Arc<Lattice>,
    action: Vec<Elem>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.quantale == other.quantale
            && self.carrier == other.carrier
            && self.action == other.action
    }
}

impl Eq for Module {}

impl std::fmt::Debug for Module {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Module({} elements over {} quantale elements)",
            self.carrier.n(),
            self.quantale.n()
        )
    }
}

impl Module {
    pub fn validate(
        quantale: Arc<Quantale>,
        carrier: Arc<Lattice>,
        action: Vec<Elem>,
    ) -> Result<Arc<Module>> {
        let (n, k) = (carrier.n(), quantale.n());
        if action.len() != n * k || action.iter().any(|&v| v >= n) {
            return Err(Error::Parse("action table has the wrong shape".into()));
        }
        Bimorphism::new(
            carrier.clone(),
            quantale.lattice().clone(),
            carrier.clone(),
            action.clone(),
        )?;
        let act = |m: Elem, a: Elem| action[m * k + a];
        for m in 0..n {
            if act(m, quantale.unit()) != m {
                return Err(Error::UnitActionFails(m));
            }
        }
        for &m in carrier.ji() {
            for &a in quantale.lattice().ji() {
                for &b in quantale.lattice().ji() {
                    if act(m, quantale.mul(a, b)) != act(act(m, a), b) {
                        return Err(Error::ActionAssociativityFails(m, a, b));
                    }
                }
            }
        }
        Ok(Arc::new(Module {
            quantale,
            carrier,
            action,
        }))
    }

    pub fn quantale(&self) -> &Arc<Quantale> {
        &self.quantale
    }

    pub fn carrier(&self) -> &Arc<Lattice> {
        &self.carrier
    }

    pub fn act(&self, m: Elem, a: Elem) -> Elem {
        self.action[m * self.quantale.n() + a]
    }

    pub fn action_table(&self) -> &[Elem] {
        &self.action
    }

    /// Smallest submodule containing the given elements: the closure of
    /// them and bottom under the action and binary joins.
    pub fn span<I: IntoIterator<Item = Elem>>(&self, gens: I) -> Bits {
        let n = self.carrier.n();
        let mut members = Bits::new(n);
        let mut stack: Vec<Elem> = vec![self.carrier.bottom()];
        stack.extend(gens);
        while let Some(w) = stack.pop() {
            if !members.insert(w) {
                continue;
            }
            for a in 0..self.quantale.n() {
                stack.push(self.act(w, a));
            }
            for u in members.ones() {
                stack.push(self.carrier.join2(w, u));
            }
        }
        members
    }

    pub fn is_generated_by<I: IntoIterator<Item = Elem>>(&self, gens: I) -> bool {
        self.span(gens).count() == self.carrier.n()
    }

    /// A generating sequence found greedily: each step adds the element
    /// whose addition spans the most, ties resolved by smallest index.
    pub fn generating_sequence(&self) -> Vec<Elem> {
        let n = self.carrier.n();
        let mut gens: Vec<Elem> = Vec::new();
        let mut current = self.span([]);
        while current.count() < n {
            let mut best: Option<(usize, Elem, Bits)> = None;
            for g in 0..n {
                if current.get(g) {
                    continue;
                }
                let s = self.span(gens.iter().copied().chain([g]));
                if best
                    .as_ref()
                    .map_or(true, |(score, _, _)| s.count() > *score)
                {
                    best = Some((s.count(), g, s));
                }
            }
            let (_, g, s) = best.unwrap();
            gens.push(g);
            current = s;
        }
        gens
    }

    /// Restricts the module to a join- and action-closed subset containing
    /// bottom. Returns the submodule and the ambient index of each element.
    pub fn submodule(self: &Arc<Self>, members: &Bits) -> Result<(Arc<Module>, Vec<Elem>)> {
        let elems: Vec<Elem> = members.ones().collect();
        if !members.get(self.carrier.bottom()) {
            return Err(Error::InvalidArgument(
                "submodule must contain bottom".into(),
            ));
        }
        for &u in &elems {
            for &v in &elems {
                if !members.get(self.carrier.join2(u, v)) {
                    return Err(Error::InvalidArgument(
                        "subset is not closed under joins".into(),
                    ));
                }
            }
            for a in 0..self.quantale.n() {
                if !members.get(self.act(u, a)) {
                    return Err(Error::InvalidArgument(
                        "subset is not closed under the action".into(),
                    ));
                }
            }
        }
        let index_of: HashMap<Elem, Elem> =
            elems.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let k = elems.len();
        let names = elems
            .iter()
            .map(|&m| self.carrier.name(m).to_string())
            .collect();
        let mut up = vec![Bits::new(k); k];
        for (i, &u) in elems.iter().enumerate() {
            for (j, &v) in elems.iter().enumerate() {
                if self.carrier.leq(u, v) {
                    up[i].set(j);
                }
            }
        }
        let carrier = Lattice::from_up_unchecked(names, up);
        let mut action = vec![0usize; k * self.quantale.n()];
        for (i, &u) in elems.iter().enumerate() {
            for a in 0..self.quantale.n() {
                action[i * self.quantale.n() + a] = index_of[&self.act(u, a)];
            }
        }
        let module = Module::validate(self.quantale.clone(), carrier, action)?;
        Ok((module, elems))
    }
}

/// The quantale acting on itself by multiplication.
pub fn regular_module(q: &Arc<Quantale>) -> Arc<Module> {
    Module::validate(q.clone(), q.lattice().clone(), q.mult_table().to_vec())
        .expect("a quantale is a module over itself")
}

/// A biproduct of copies of a module, acted on componentwise.
pub struct ModulePower {
    pub module: Arc<Module>,
    pub parts: Biproduct,
}

pub fn module_power(m: &Arc<Module>, k: usize, budget: usize) -> Result<ModulePower> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "a module power needs at least one factor".into(),
        ));
    }
    let q = m.quantale();
    let factors: Vec<Arc<Lattice>> = (0..k).map(|_| m.carrier().clone()).collect();
    let parts = biproduct(&factors, budget)?;
    let n = parts.lattice.n();
    let mut action = vec![0usize; n * q.n()];
    for t in 0..n {
        for a in 0..q.n() {
            let moved = (0..k).map(|x| {
                let component = parts.projections[x].apply(t);
                parts.injections[x].apply(m.act(component, a))
            });
            action[t * q.n() + a] = parts.lattice.join_iter(moved);
        }
    }
    let module = Module::validate(q.clone(), parts.lattice.clone(), action)?;
    Ok(ModulePower { module, parts })
}

/// A free module: a biproduct of copies of the quantale, acted on
/// componentwise. `basis[x]` is the unit placed in component `x`.
pub struct FreeModule {
    pub module: Arc<Module>,
    pub basis: Vec<Elem>,
    pub parts: Biproduct,
}

pub fn free_module(q: &Arc<Quantale>, k: usize, budget: usize) -> Result<FreeModule> {
    let power = module_power(&regular_module(q), k, budget)?;
    let basis = (0..k)
        .map(|x| power.parts.injections[x].apply(q.unit()))
        .collect();
    Ok(FreeModule {
        module: power.module,
        basis,
        parts: power.parts,
    })
}

/// A join-preserving map commuting with the action.
pub struct ModuleMorphism {
    pub source: Arc<Module>,
    pub target: Arc<Module>,
    pub map: SupMap,
}

impl ModuleMorphism {
    pub fn new(
        source: Arc<Module>,
        target: Arc<Module>,
        table: Vec<Elem>,
    ) -> Result<ModuleMorphism> {
        if source.quantale != target.quantale {
            return Err(Error::QuantaleMismatch);
        }
        let map = SupMap::new(source.carrier.clone(), target.carrier.clone(), table)?;
        for m in 0..source.carrier.n() {
            for a in 0..source.quantale.n() {
                if map.apply(source.act(m, a)) != target.act(map.apply(m), a) {
                    return Err(Error::NotAModuleMorphism(m, a));
                }
            }
        }
        Ok(ModuleMorphism {
            source,
            target,
            map,
        })
    }
}

/// Extends a partial table by `f(w) = val` and propagates all consequences:
/// action images and joins with already-assigned elements. Returns false on
/// a conflict.
fn propagate(source: &Module, target: &Module, f: &mut [Elem], w: Elem, val: Elem) -> bool {
    let mut stack = vec![(w, val)];
    while let Some((m, v)) = stack.pop() {
        if f[m] != UNSET {
            if f[m] != v {
                return false;
            }
            continue;
        }
        f[m] = v;
        for a in 0..source.quantale.n() {
            stack.push((source.act(m, a), target.act(v, a)));
        }
        for u in 0..source.carrier.n() {
            if f[u] != UNSET {
                stack.push((source.carrier.join2(m, u), target.carrier.join2(v, f[u])));
            }
        }
    }
    true
}

/// Enumerates every module morphism, sorted by table. Backtracks over the
/// images of a generating sequence; propagation fills in the rest, so a
/// completed table is already a morphism.
pub fn all_module_morphisms(
    source: &Arc<Module>,
    target: &Arc<Module>,
) -> Result<Vec<ModuleMorphism>> {
    if source.quantale != target.quantale {
        return Err(Error::QuantaleMismatch);
    }
    let gens = source.generating_sequence();
    let mut seed = vec![UNSET; source.carrier.n()];
    if !propagate(
        source,
        target,
        &mut seed,
        source.carrier.bottom(),
        target.carrier.bottom(),
    ) {
        return Ok(Vec::new());
    }
    let mut tables: Vec<Vec<Elem>> = Vec::new();
    rec_morphisms(source, target, &gens, 0, seed, &mut tables);
    tables.sort();
    Ok(tables
        .into_iter()
        .map(|t| {
            ModuleMorphism::new(source.clone(), target.clone(), t)
                .expect("propagation yields valid morphisms")
        })
        .collect())
}

fn rec_morphisms(
    source: &Arc<Module>,
    target: &Arc<Module>,
    gens: &[Elem],
    k: usize,
    f: Vec<Elem>,
    out: &mut Vec<Vec<Elem>>,
) {
    if k == gens.len() {
        debug_assert!(f.iter().all(|&v| v != UNSET));
        out.push(f);
        return;
    }
    if f[gens[k]] != UNSET {
        rec_morphisms(source, target, gens, k + 1, f, out);
        return;
    }
    for v in 0..target.carrier.n() {
        let mut next = f.clone();
        if propagate(source, target, &mut next, gens[k], v) {
            rec_morphisms(source, target, gens, k + 1, next, out);
        }
    }
}

/// The sup-lattice of module morphisms under the pointwise order, with
/// conversions between lattice elements and morphism tables.
pub struct ModuleHoms {
    pub source: Arc<Module>,
    pub target: Arc<Module>,
    pub lattice: Arc<Lattice>,
    tables: Vec<Vec<Elem>>,
    index: HashMap<Vec<Elem>, Elem>,
}

impl ModuleHoms {
    pub fn table_of(&self, e: Elem) -> &[Elem] {
        &self.tables[e]
    }

    pub fn elem_of_table(&self, table: &[Elem]) -> Elem {
        self.index[table]
    }

    pub fn tables(&self) -> &[Vec<Elem>] {
        &self.tables
    }

    pub fn morphism_of(&self, e: Elem) -> ModuleMorphism {
        ModuleMorphism::new(
            self.source.clone(),
            self.target.clone(),
            self.tables[e].clone(),
        )
        .expect("stored tables are morphisms")
    }
}

pub fn module_homs(source: &Arc<Module>, target: &Arc<Module>) -> Result<ModuleHoms> {
    let tables: Vec<Vec<Elem>> = all_module_morphisms(source, target)?
        .into_iter()
        .map(|m| m.map.table().to_vec())
        .collect();
    let names = tables
        .iter()
        .map(|t| table_name(t, target.carrier()))
        .collect();
    let lattice = lattice_from_tables(&tables, target.carrier(), names);
    let index = tables
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    Ok(ModuleHoms {
        source: source.clone(),
        target: target.clone(),
        lattice,
        tables,
        index,
    })
}

/// The quantale of module endomorphisms: the hom lattice with composition
/// as multiplication (the right factor applied first) and the identity as
/// unit.
pub fn endo_module_quantale(m: &Arc<Module>) -> Result<(Arc<Quantale>, ModuleHoms)> {
    let homs = module_homs(m, m)?;
    let count = homs.lattice.n();
    let mut mult = vec![0usize; count * count];
    for f in 0..count {
        for g in 0..count {
            let (tf, tg) = (homs.table_of(f), homs.table_of(g));
            let composite: Vec<Elem> = (0..m.carrier().n()).map(|x| tf[tg[x]]).collect();
            mult[f * count + g] = homs.elem_of_table(&composite);
        }
    }
    let unit = homs.elem_of_table(&(0..m.carrier().n()).collect::<Vec<_>>());
    let endos = Quantale::validate(homs.lattice.clone(), mult, unit)?;
    Ok((endos, homs))
}

/// Enumerates every right module structure on a carrier, sorted by action
/// table.
///
/// Searches over the curried form: an action is a join-preserving map from
/// the quantale into endomaps of the carrier, reversing multiplication.
/// Values on join-irreducibles determine the rest, so the search assigns
/// those in a linear extension, pruning by monotonicity and by domination
/// of the identity under the unit, then checks the extension in full.
pub fn all_module_structures(
    q: &Arc<Quantale>,
    carrier: &Arc<Lattice>,
) -> Result<Vec<Arc<Module>>> {
    let endos = internal_hom(carrier, carrier, usize::MAX)?;
    let identity = endos.elem_of_table(&(0..carrier.n()).collect::<Vec<_>>());
    let ql = q.lattice();
    let ji: Vec<Elem> = ql.topo().iter().copied().filter(|&x| ql.is_ji(x)).collect();

    let mut rho = vec![UNSET; ql.n()];
    let mut out: Vec<Vec<Elem>> = Vec::new();

    fn extend_and_check(
        q: &Arc<Quantale>,
        carrier: &Arc<Lattice>,
        endos: &crate::tensor::HomLattice,
        identity: Elem,
        rho: &[Elem],
        out: &mut Vec<Vec<Elem>>,
    ) {
        let ql = q.lattice();
        let full: Vec<Elem> = (0..ql.n())
            .map(|x| {
                endos
                    .lattice
                    .join_iter(ql.ji_below(x).ones().map(|j| rho[j]))
            })
            .collect();
        if sup_violation(ql, &endos.lattice, &full).is_some() {
            return;
        }
        if full[q.unit()] != identity {
            return;
        }
        for a in 0..ql.n() {
            for b in 0..ql.n() {
                let ta = endos.table_of(full[a]);
                let tb = endos.table_of(full[b]);
                let composite: Vec<Elem> = (0..carrier.n()).map(|m| tb[ta[m]]).collect();
                if endos.elem_of_table(&composite) != full[q.mul(a, b)] {
                    return;
                }
            }
        }
        let mut action = vec![0usize; carrier.n() * ql.n()];
        for a in 0..ql.n() {
            let t = endos.table_of(full[a]);
            for m in 0..carrier.n() {
                action[m * ql.n() + a] = t[m];
            }
        }
        out.push(action);
    }

    /// Rejects a partial assignment as soon as some product of assigned
    /// join-irreducibles has all its own join-irreducibles assigned: the
    /// forced value must match the reversed composite. Only pairs whose
    /// product check could change with the latest assignment are revisited.
    fn products_consistent(
        q: &Arc<Quantale>,
        carrier: &Arc<Lattice>,
        endos: &crate::tensor::HomLattice,
        ji: &[Elem],
        k: usize,
        rho: &[Elem],
    ) -> bool {
        let ql = q.lattice();
        let j = ji[k];
        for &x in &ji[..=k] {
            for &y in &ji[..=k] {
                let p = q.mul(x, y);
                if x != j && y != j && !ql.leq(j, p) {
                    continue;
                }
                if ql.ji_below(p).ones().any(|i| rho[i] == UNSET) {
                    continue;
                }
                let forced = endos
                    .lattice
                    .join_iter(ql.ji_below(p).ones().map(|i| rho[i]));
                let tx = endos.table_of(rho[x]);
                let ty = endos.table_of(rho[y]);
                let composite: Vec<Elem> = (0..carrier.n()).map(|m| ty[tx[m]]).collect();
                if endos.elem_of_table(&composite) != forced {
                    return false;
                }
            }
        }
        true
    }

    fn rec(
        q: &Arc<Quantale>,
        carrier: &Arc<Lattice>,
        endos: &crate::tensor::HomLattice,
        identity: Elem,
        ji: &[Elem],
        k: usize,
        rho: &mut Vec<Elem>,
        out: &mut Vec<Vec<Elem>>,
    ) {
        if k == ji.len() {
            extend_and_check(q, carrier, endos, identity, rho, out);
            return;
        }
        let j = ji[k];
        let ql = q.lattice();
        let lower = endos
            .lattice
            .join_iter(ql.ji_below(j).ones().filter(|&i| i != j).map(|i| rho[i]));
        let below_unit = ql.leq(j, q.unit());
        for v in 0..endos.lattice.n() {
            if !endos.lattice.leq(lower, v) {
                continue;
            }
            if below_unit && !endos.lattice.leq(v, identity) {
                continue;
            }
            rho[j] = v;
            if products_consistent(q, carrier, endos, ji, k, rho) {
                rec(q, carrier, endos, identity, ji, k + 1, rho, out);
            }
            rho[j] = UNSET;
        }
    }

    rec(q, carrier, &endos, identity, &ji, 0, &mut rho, &mut out);
    out.sort();
    out.into_iter()
        .map(|action| Module::validate(q.clone(), carrier.clone(), action))
        .collect()
}

/// Representatives of the isomorphism classes of module structures on a
/// carrier, keeping the least action table in each class.
pub fn module_classes(q: &Arc<Quantale>, carrier: &Arc<Lattice>) -> Result<Vec<Arc<Module>>> {
    let all = all_module_structures(q, carrier)?;
    let mut reps: Vec<Arc<Module>> = Vec::new();
    for m in all {
        if reps.iter().all(|r| crate::iso::module_iso(r, &m).is_none()) {
            reps.push(m);
        }
    }
    Ok(reps)
}

/// The canonical cover of a module from the free module on its full
/// underlying set (the x-th generator mapping to x), with a splitting
/// section when one exists.
pub struct ProjectiveCover {
    pub free: FreeModule,
    pub cover: ModuleMorphism,
    pub section: Option<ModuleMorphism>,
}

/// Builds the canonical free cover and searches for a section. The search
/// backtracks over a generating sequence, with candidate images restricted
/// to the correct fiber of the cover.
pub fn projective_cover(m: &Arc<Module>, budget: usize) -> Result<ProjectiveCover> {
    let n = m.carrier().n();
    let free = free_module(m.quantale(), n, budget)?;
    let fm = free.module.clone();
    let pi: Vec<Elem> = (0..fm.carrier().n())
        .map(|phi| {
            m.carrier()
                .join_iter((0..n).map(|x| m.act(x, free.parts.projections[x].apply(phi))))
        })
        .collect();
    let pi = ModuleMorphism::new(fm.clone(), m.clone(), pi)?;

    fn search(
        m: &Arc<Module>,
        fm: &Arc<Module>,
        pi: &ModuleMorphism,
        gens: &[Elem],
        k: usize,
        f: Vec<Elem>,
    ) -> Option<Vec<Elem>> {
        if k == gens.len() {
            if (0..m.carrier().n()).all(|x| pi.map.apply(f[x]) == x) {
                return Some(f);
            }
            return None;
        }
        if f[gens[k]] != UNSET {
            if pi.map.apply(f[gens[k]]) != gens[k] {
                return None;
            }
            return search(m, fm, pi, gens, k + 1, f);
        }
        for v in 0..fm.carrier().n() {
            if pi.map.apply(v) != gens[k] {
                continue;
            }
            let mut next = f.clone();
            if propagate(m, fm, &mut next, gens[k], v) {
                if let Some(hit) = search(m, fm, pi, gens, k + 1, next) {
                    return Some(hit);
                }
            }
        }
        None
    }

    let gens = m.generating_sequence();
    let mut seed = vec![UNSET; m.carrier().n()];
    let section = if propagate(
        m,
        &fm,
        &mut seed,
        m.carrier().bottom(),
        fm.carrier().bottom(),
    ) {
        search(m, &fm, &pi, &gens, 0, seed)
    } else {
        None
    };
    let section = section
        .map(|t| ModuleMorphism::new(m.clone(), fm.clone(), t))
        .transpose()?;
    Ok(ProjectiveCover {
        free,
        cover: pi,
        section,
    })
}

/// Whether the canonical cover from the free module on the full underlying
/// set admits a section.
pub fn is_projective(m: &Arc<Module>, budget: usize) -> Result<bool> {
    Ok(projective_cover(m, budget)?.section.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    /// Oracle: every action table on small instances, filtered by full
    /// validation.
    fn brute_structures(q: &Arc<Quantale>, carrier: &Arc<Lattice>) -> Vec<Vec<Elem>> {
        let cells = carrier.n() * q.n();
        let total = carrier.n().checked_pow(cells as u32).unwrap();
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let action: Vec<Elem> = (0..cells)
                .map(|_| {
                    let v = c % carrier.n();
                    c /= carrier.n();
                    v
                })
                .collect();
            if Module::validate(q.clone(), carrier.clone(), action.clone()).is_ok() {
                out.push(action);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn structure_enumeration_matches_brute_force() {
        let cases: Vec<(Arc<Quantale>, Arc<Lattice>)> = vec![
            (catalog::two_quantale(), catalog::chain(2)),
            (catalog::two_quantale(), catalog::chain(3)),
            (catalog::two_quantale(), catalog::diamond()),
            (catalog::chain_locale(3), catalog::chain(2)),
            (catalog::chain_locale(3), catalog::chain(3)),
            (catalog::powerset_z2(), catalog::chain(2)),
        ];
        for (q, l) in cases {
            let fast: Vec<Vec<Elem>> = all_module_structures(&q, &l)
                .unwrap()
                .iter()
                .map(|m| m.action_table().to_vec())
                .collect();
            let brute = brute_structures(&q, &l);
            assert_eq!(fast, brute, "over {} on {} elements", q.n(), l.n());
        }
    }

    #[test]
    fn modules_over_two_are_unique() {
        for l in [catalog::chain(3), catalog::diamond(), catalog::pentagon()] {
            let all = all_module_structures(&catalog::two_quantale(), &l).unwrap();
            assert_eq!(all.len(), 1);
        }
    }

    #[test]
    fn three_chain_locale_acts_twice_on_two() {
        let q = catalog::chain_locale(3);
        let all = all_module_structures(&q, &catalog::chain(2)).unwrap();
        assert_eq!(all.len(), 2);
        let classes = module_classes(&q, &catalog::chain(2)).unwrap();
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn regular_module_homs_are_elements() {
        let q = catalog::chain_locale(3);
        let a = regular_module(&q);
        let homs = all_module_morphisms(&a, &a).unwrap();
        // Evaluation at the unit identifies morphisms with elements.
        assert_eq!(homs.len(), q.n());
        let mut evals: Vec<Elem> = homs.iter().map(|f| f.map.apply(q.unit())).collect();
        evals.sort();
        assert_eq!(evals, vec![0, 1, 2]);
    }

    #[test]
    fn module_morphisms_over_two_are_sup_maps() {
        let two = catalog::two_quantale();
        let structures = |l: &Arc<Lattice>| all_module_structures(&two, l).unwrap().remove(0);
        let m = structures(&catalog::diamond());
        let p = structures(&catalog::chain(3));
        let homs = all_module_morphisms(&m, &p).unwrap();
        let plain = crate::lattice::all_sup_maps(&catalog::diamond(), &catalog::chain(3));
        assert_eq!(homs.len(), plain.len());
    }

    #[test]
    fn free_module_on_two_generators_over_two() {
        let two = catalog::two_quantale();
        let free = free_module(&two, 2, 100).unwrap();
        assert_eq!(free.module.carrier().n(), 4);
        assert!(crate::iso::lattice_iso(free.module.carrier(), &catalog::diamond()).is_some());
        assert!(free.module.is_generated_by(free.basis.iter().copied()));
    }

    #[test]
    fn submodule_span_and_restriction() {
        let q = catalog::chain_locale(3);
        let a = regular_module(&q);
        // The downset of the middle element is action- and join-closed.
        let members = a.span([1]);
        assert_eq!(members.ones().collect::<Vec<_>>(), vec![0, 1]);
        let (sub, elems) = a.submodule(&members).unwrap();
        assert_eq!(elems, vec![0, 1]);
        assert_eq!(sub.carrier().n(), 2);
        let mut not_closed = Bits::new(3);
        not_closed.set(0);
        not_closed.set(2);
        assert!(a.submodule(&not_closed).is_err());
    }

    #[test]
    fn projectivity_over_two_detects_distributivity() {
        let two = catalog::two_quantale();
        let only = |l: &Arc<Lattice>| all_module_structures(&two, l).unwrap().remove(0);
        assert!(is_projective(&only(&catalog::chain(3)), 10_000).unwrap());
        assert!(is_projective(&only(&catalog::diamond()), 10_000).unwrap());
        assert!(!is_projective(&only(&catalog::pentagon()), 10_000).unwrap());
        assert!(!is_projective(&only(&catalog::m3()), 10_000).unwrap());
    }
}
