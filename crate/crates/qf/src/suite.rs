//! Named property suites behind `qf suite NAME`: each one sweeps a family
//! of structures, re-deriving expected answers from independent
//! characterizations where one exists, and reports one verdict per family
//! member or sweep.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::catalog;
use crate::error::{Error, Result};
use crate::iso::{module_iso, quantale_iso};
use crate::lattice::{all_sup_maps, biproduct, Lattice, SupMap};
use crate::matrix::{matrix_endo_iso, matrix_quantale};
use crate::module::{all_module_structures, free_module, module_homs, regular_module, Module};
use crate::morita::{
    corner_end_iso, corner_quantale, evaluation_iso, evaluation_natural, find_full_idempotents,
    idempotent_elements, is_full_idempotent, is_generator, kappa_map, morita_witness_check,
    projective_generator_census, right_ideal, self_smallness,
};
use crate::quantale::relation_quantale;
use crate::report::{Report, Status, Verdict};
use crate::tensor::{curry, internal_hom, tensor, uncurry, Tensor};

/// Suite names and one-line descriptions, in run order of `all`.
pub const SUITES: &[(&str, &str)] = &[
    (
        "tensor-universal",
        "tensor oracle, factorization, unit, symmetry, and adjunction counts over catalog pairs and triples",
    ),
    (
        "biproducts",
        "injection and projection identities for families of up to three catalog lattices",
    ),
    (
        "distributivity",
        "binary-join validation shortcut against set-indexed distributivity on every catalog quantale",
    ),
    (
        "matrix-endomorphisms",
        "matrix quantales against endomorphism quantales of free modules",
    ),
    (
        "relations-as-matrices",
        "relations on two points against two-by-two matrices over the two-element locale",
    ),
    (
        "corner-evaluation",
        "evaluation isomorphism, its naturality, and endomorphism transport for every catalog idempotent",
    ),
    (
        "fullness-generator",
        "generator criterion against fullness for every catalog idempotent",
    ),
    (
        "morita-witness",
        "full witness check for every full idempotent matrix over the two-element locale",
    ),
    (
        "commutative-census",
        "census entries with commutative endomorphism quantales match the base quantale",
    ),
    (
        "modules-over-two",
        "unique module structures and hom lattices over the two-element locale",
    ),
    (
        "self-smallness",
        "finite copowers against hom lattices for small projectives",
    ),
    (
        "determinism",
        "byte-identical reports for repeated runs of every suite",
    ),
    ("all", "every suite above, one verdict per suite"),
];

const ALIASES: &[(&str, &str)] = &[
    ("prop-6-2", "corner-evaluation"),
    ("prop-6-4", "fullness-generator"),
    ("theorem-5-1", "commutative-census"),
    ("theorem-6-5", "morita-witness"),
    ("theorem-7-2", "morita-witness"),
    ("theorem-7-5", "morita-witness"),
    ("mod2-sl", "modules-over-two"),
];

/// Resolves a suite name or alias to its primary name.
pub fn resolve(name: &str) -> Option<&'static str> {
    SUITES
        .iter()
        .map(|(n, _)| *n)
        .find(|n| *n == name)
        .or_else(|| ALIASES.iter().find(|(a, _)| *a == name).map(|(_, n)| *n))
}

pub fn run_suite(name: &str, budget: usize) -> Result<Report> {
    let primary = resolve(name).ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    let mut report = Report::new(format!("suite {primary}"), budget);
    report.checks = match primary {
        "tensor-universal" => tensor_universal(budget)?,
        "biproducts" => biproducts(budget)?,
        "distributivity" => distributivity()?,
        "matrix-endomorphisms" => matrix_endomorphisms(budget)?,
        "relations-as-matrices" => relations_as_matrices(budget)?,
        "corner-evaluation" => corner_evaluation()?,
        "fullness-generator" => fullness_generator()?,
        "morita-witness" => morita_witness(budget)?,
        "commutative-census" => commutative_census(budget)?,
        "modules-over-two" => modules_over_two(budget)?,
        "self-smallness" => self_smallness_suite(budget)?,
        "determinism" => determinism(budget)?,
        "all" => all_suites(budget)?,
        _ => unreachable!("resolve returns registered names"),
    };
    Ok(report)
}

/// Pass with the given witness unless failures were collected.
fn verdict_over(name: impl Into<String>, failures: &[String], pass_witness: String) -> Verdict {
    match failures.first() {
        None => Verdict::pass_with(name, pass_witness),
        Some(first) if failures.len() == 1 => Verdict::fail(name, first.clone()),
        Some(first) => Verdict::fail(name, format!("{} failures, first: {first}", failures.len())),
    }
}

/// Turns non-budget errors into a failing verdict so a sweep can continue.
fn guarded(name: &str, f: impl FnOnce() -> Result<Verdict>) -> Result<Verdict> {
    match f() {
        Ok(v) => Ok(v),
        Err(e @ Error::BudgetExceeded { .. }) => Err(e),
        Err(e) => Ok(Verdict::fail(name, e.to_string())),
    }
}

/// Every row and column of a bi-closed subset is the principal downset of
/// its own join; this characterization is the enumeration oracle.
fn rows_and_cols_principal(l: &Lattice, r: &Lattice, get: &dyn Fn(usize, usize) -> bool) -> bool {
    let (n, m) = (l.n(), r.n());
    for a in 0..n {
        let rj = r.join_iter((0..m).filter(|&b| get(a, b)));
        if (0..m).any(|b| get(a, b) != r.leq(b, rj)) {
            return false;
        }
    }
    for b in 0..m {
        let cj = l.join_iter((0..n).filter(|&a| get(a, b)));
        if (0..n).any(|a| get(a, b) != l.leq(a, cj)) {
            return false;
        }
    }
    true
}

/// All bi-closed subsets of a product, as sorted bit positions. Products
/// up to sixteen positions are filtered from the full powerset; larger
/// ones from the downsets of the componentwise order, which contain every
/// bi-closed subset.
fn oracle_bi_ideals(l: &Arc<Lattice>, r: &Arc<Lattice>) -> BTreeSet<Vec<usize>> {
    let (n, m) = (l.n(), r.n());
    let bits = n * m;
    assert!(bits <= 25, "catalog carriers stay at five elements");
    let mut out = BTreeSet::new();
    let mut consider = |mask: u32| {
        let get = |a: usize, b: usize| mask >> (a * m + b) & 1 == 1;
        if rows_and_cols_principal(l, r, &get) {
            out.insert(
                (0..bits)
                    .filter(|&p| mask >> p & 1 == 1)
                    .collect::<Vec<_>>(),
            );
        }
    };
    if bits <= 16 {
        for mask in 0..(1u32 << bits) {
            consider(mask);
        }
        return out;
    }
    let rank_l: Vec<usize> = {
        let mut rank = vec![0; n];
        for (i, &x) in l.topo().iter().enumerate() {
            rank[x] = i;
        }
        rank
    };
    let rank_r: Vec<usize> = {
        let mut rank = vec![0; m];
        for (i, &x) in r.topo().iter().enumerate() {
            rank[x] = i;
        }
        rank
    };
    let mut order: Vec<usize> = (0..bits).collect();
    order.sort_by_key(|&p| rank_l[p / m] + rank_r[p % m]);
    let below: Vec<u32> = (0..bits)
        .map(|p| {
            (0..bits)
                .filter(|&q| q != p && l.leq(q / m, p / m) && r.leq(q % m, p % m))
                .fold(0u32, |acc, q| acc | 1 << q)
        })
        .collect();
    fn rec(i: usize, cur: u32, order: &[usize], below: &[u32], consider: &mut dyn FnMut(u32)) {
        if i == order.len() {
            consider(cur);
            return;
        }
        rec(i + 1, cur, order, below, consider);
        let p = order[i];
        if below[p] & cur == below[p] {
            rec(i + 1, cur | 1 << p, order, below, consider);
        }
    }
    rec(0, 0, &order, &below, &mut consider);
    out
}

fn tensor_universal(budget: usize) -> Result<Vec<Verdict>> {
    let lat = catalog::catalog_lattices();
    let k = lat.len();
    let mut verdicts = Vec::new();

    let mut tensors: Vec<Vec<Tensor>> = Vec::with_capacity(k);
    for (_, l) in &lat {
        let mut row = Vec::with_capacity(k);
        for (_, r) in &lat {
            row.push(tensor(l, r, budget)?);
        }
        tensors.push(row);
    }

    for (i, (lname, l)) in lat.iter().enumerate() {
        for (j, (rname, r)) in lat.iter().enumerate() {
            let t = &tensors[i][j];
            let mut failures = Vec::new();
            let built: BTreeSet<Vec<usize>> = (0..t.lattice.n())
                .map(|e| t.pairs(e).ones().collect())
                .collect();
            if built.len() != t.lattice.n() {
                failures.push("constructed elements are not distinct subsets".to_string());
            }
            if built != oracle_bi_ideals(l, r) {
                failures.push("constructed family differs from the enumerated family".to_string());
            }
            if let Some(e) = (0..t.lattice.n()).find(|&e| {
                t.lattice.join_iter(t.pairs(e).ones().map(|bit| {
                    let (a, b) = t.decode(bit);
                    t.pure(a, b)
                })) != e
            }) {
                failures.push(format!("element {e} is not a join of pure tensors"));
            }
            verdicts.push(verdict_over(
                format!("tensor {lname} (x) {rname} matches the enumeration oracle"),
                &failures,
                format!("{} bi-closed subsets", t.lattice.n()),
            ));
        }
    }

    let two = lat
        .iter()
        .position(|(n, _)| n == "2")
        .expect("catalog has 2");
    let mut failures = Vec::new();
    for (j, (rname, r)) in lat.iter().enumerate() {
        let t = &tensors[two][j];
        let top = lat[two].1.n() - 1;
        let table: Vec<usize> = (0..r.n()).map(|x| t.pure(top, x)).collect();
        match SupMap::new(r.clone(), t.lattice.clone(), table) {
            Ok(f) if f.is_injective() && f.is_surjective() => {}
            Ok(_) => failures.push(format!("unit comparison for {rname} is not bijective")),
            Err(e) => failures.push(format!("unit comparison for {rname}: {e}")),
        }
    }
    verdicts.push(verdict_over(
        "tensoring with the unit lattice is the identity up to isomorphism",
        &failures,
        format!("{k} right factors"),
    ));

    let mut failures = Vec::new();
    let mut swaps = 0;
    for i in 0..k {
        for j in i..k {
            let (t_ij, t_ji) = (&tensors[i][j], &tensors[j][i]);
            let swap = |from: &Tensor, to: &Tensor| -> Result<SupMap> {
                let table: Vec<usize> = (0..from.lattice.n())
                    .map(|e| {
                        to.lattice.join_iter(from.pairs(e).ones().map(|bit| {
                            let (a, b) = from.decode(bit);
                            to.pure(b, a)
                        }))
                    })
                    .collect();
                SupMap::new(from.lattice.clone(), to.lattice.clone(), table)
            };
            match (swap(t_ij, t_ji), swap(t_ji, t_ij)) {
                (Ok(f), Ok(g)) => {
                    let fg = f.after(&g);
                    let gf = g.after(&f);
                    if fg.table() != SupMap::identity(&t_ji.lattice).table()
                        || gf.table() != SupMap::identity(&t_ij.lattice).table()
                    {
                        failures.push(format!(
                            "swap maps between {} (x) {} and the reverse do not invert",
                            lat[i].0, lat[j].0
                        ));
                    }
                }
                _ => failures.push(format!(
                    "swap map between {} (x) {} and the reverse does not preserve joins",
                    lat[i].0, lat[j].0
                )),
            }
            swaps += 1;
        }
    }
    verdicts.push(verdict_over(
        "swapping tensor factors is an isomorphism",
        &failures,
        format!("{swaps} unordered pairs"),
    ));

    let mut homs: Vec<Vec<_>> = Vec::with_capacity(k);
    for (_, r) in &lat {
        let mut row = Vec::with_capacity(k);
        for (_, m) in &lat {
            row.push(internal_hom(r, m, budget)?);
        }
        homs.push(row);
    }
    for (i, (lname, l)) in lat.iter().enumerate() {
        for (j, (rname, _)) in lat.iter().enumerate() {
            let t = &tensors[i][j];
            let mut failures = Vec::new();
            let mut maps = 0usize;
            for (h, (mname, m)) in lat.iter().enumerate() {
                let hom = &homs[j][h];
                let from_tensor = all_sup_maps(&t.lattice, m).len();
                let curried = all_sup_maps(l, &hom.lattice);
                if from_tensor != curried.len() {
                    failures.push(format!(
                        "map counts into {mname} disagree: {from_tensor} from the tensor, {} curried",
                        curried.len()
                    ));
                    continue;
                }
                let mut images = BTreeSet::new();
                for f in &curried {
                    let g = uncurry(t, hom, f)?;
                    let pointwise = (0..l.n()).all(|x| {
                        let row = hom.table_of(f.apply(x));
                        (0..lat[j].1.n()).all(|y| g.apply(t.pure(x, y)) == row[y])
                    });
                    if !pointwise {
                        failures.push(format!(
                            "factorization into {mname} disagrees with its bimorphism"
                        ));
                    }
                    if curry(t, hom, &g)?.table() != f.table() {
                        failures.push(format!("transposing into {mname} does not round-trip"));
                    }
                    images.insert(g.table().to_vec());
                    maps += 1;
                }
                if images.len() != curried.len() {
                    failures.push(format!("factorization into {mname} is not injective"));
                }
            }
            verdicts.push(verdict_over(
                format!("factorization and transposition for {lname} (x) {rname}"),
                &failures,
                format!("{maps} maps over {k} targets"),
            ));
        }
    }
    Ok(verdicts)
}

fn biproducts(budget: usize) -> Result<Vec<Verdict>> {
    let lat = catalog::catalog_lattices();
    let k = lat.len();
    let mut families: Vec<Vec<usize>> = Vec::new();
    for i in 0..k {
        families.push(vec![i]);
        for j in i..k {
            families.push(vec![i, j]);
            for h in j..k {
                families.push(vec![i, j, h]);
            }
        }
    }
    let mut verdicts = Vec::new();
    for size in 1..=3 {
        let mut failures = Vec::new();
        let mut count = 0;
        for family in families.iter().filter(|f| f.len() == size) {
            let factors: Vec<Arc<Lattice>> = family.iter().map(|&i| lat[i].1.clone()).collect();
            let label = || {
                family
                    .iter()
                    .map(|&i| lat[i].0.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            let parts = biproduct(&factors, budget)?;
            for (i, inj) in parts.injections.iter().enumerate() {
                for (j, proj) in parts.projections.iter().enumerate() {
                    let composite = proj.after(inj);
                    let expected = if i == j {
                        SupMap::identity(&factors[i])
                    } else {
                        SupMap::constant_bottom(&factors[i], &factors[j])
                    };
                    if composite.table() != expected.table() {
                        failures.push(format!(
                            "projection {j} after injection {i} is wrong on [{}]",
                            label()
                        ));
                    }
                }
            }
            count += 1;
        }
        verdicts.push(verdict_over(
            format!("injection and projection identities for families of size {size}"),
            &failures,
            format!("{count} families"),
        ));
    }
    Ok(verdicts)
}

fn distributivity() -> Result<Vec<Verdict>> {
    let mut verdicts = Vec::new();
    for (name, q) in catalog::catalog_quantales() {
        let n = q.n();
        let l = q.lattice().clone();
        let mut failures = Vec::new();
        if n <= 16 {
            let total = 1usize << n;
            let mut join_of = vec![0usize; total];
            join_of[0] = l.bottom();
            for mask in 1..total {
                let low = mask.trailing_zeros() as usize;
                join_of[mask] = l.join2(join_of[mask & (mask - 1)], low);
            }
            let mut mapped = vec![0usize; total];
            for a in 0..n {
                for (side, mul) in [
                    ("left", &(|s: usize| q.mul(a, s)) as &dyn Fn(usize) -> usize),
                    ("right", &|s: usize| q.mul(s, a)),
                ] {
                    mapped[0] = l.bottom();
                    for mask in 1..total {
                        let low = mask.trailing_zeros() as usize;
                        mapped[mask] = l.join2(mapped[mask & (mask - 1)], mul(low));
                    }
                    if let Some(mask) = (0..total).find(|&mask| mul(join_of[mask]) != mapped[mask])
                    {
                        failures.push(format!(
                            "{side} multiplication by {} over subset mask {mask:#x}",
                            q.name(a)
                        ));
                    }
                }
            }
            verdicts.push(verdict_over(
                format!("set-indexed distributivity over {name}"),
                &failures,
                format!("all {total} subsets"),
            ));
        } else {
            let mut family: Vec<Vec<usize>> = vec![Vec::new()];
            for x in 0..n {
                for y in x..n {
                    family.push(if x == y { vec![x] } else { vec![x, y] });
                }
            }
            family.extend((0..n).map(|x| l.down_bits(x).ones().collect::<Vec<_>>()));
            family.push((0..n).collect());
            let joined: Vec<usize> = family
                .iter()
                .map(|s| l.join_iter(s.iter().copied()))
                .collect();
            for a in 0..n {
                for (s, &js) in family.iter().zip(&joined) {
                    let left = l.join_iter(s.iter().map(|&x| q.mul(a, x)));
                    let right = l.join_iter(s.iter().map(|&x| q.mul(x, a)));
                    if q.mul(a, js) != left || q.mul(js, a) != right {
                        failures.push(format!(
                            "multiplication by {} over a subset of size {}",
                            q.name(a),
                            s.len()
                        ));
                    }
                }
            }
            verdicts.push(verdict_over(
                format!("set-indexed distributivity over {name}"),
                &failures,
                format!(
                    "{} subsets: pairs, principal downsets, empty and full",
                    family.len()
                ),
            ));
        }
    }
    Ok(verdicts)
}

fn matrix_endomorphisms(budget: usize) -> Result<Vec<Verdict>> {
    let cases = [
        ("2", catalog::two_quantale(), 2usize),
        ("2", catalog::two_quantale(), 3),
        ("C3-locale", catalog::chain_locale(3), 2),
    ];
    let mut verdicts = Vec::new();
    for (base_name, base, k) in cases {
        let name = format!("matrices of size {k} over {base_name} are free-module endomorphisms");
        verdicts.push(guarded(&name, || {
            let iso = matrix_endo_iso(&base, k, budget)?;
            let mats = &iso.matrices.quantale;
            let endos = &iso.endos;
            let mut failures = Vec::new();
            if (0..mats.n()).any(|e| iso.backward.map.apply(iso.forward.map.apply(e)) != e)
                || (0..endos.n()).any(|f| iso.forward.map.apply(iso.backward.map.apply(f)) != f)
            {
                failures.push("the two directions do not invert".to_string());
            }
            if let Some((a, b)) = (0..mats.n())
                .flat_map(|a| (0..mats.n()).map(move |b| (a, b)))
                .find(|&(a, b)| {
                    iso.forward.map.apply(mats.mul(a, b))
                        != endos.mul(iso.forward.map.apply(a), iso.forward.map.apply(b))
                })
            {
                failures.push(format!("products disagree at ({a}, {b})"));
            }
            Ok(verdict_over(
                &name,
                &failures,
                format!("{} matrices against {} endomorphisms", mats.n(), endos.n()),
            ))
        })?);
    }
    Ok(verdicts)
}

fn relations_as_matrices(budget: usize) -> Result<Vec<Verdict>> {
    let name = "relations on two points form the two-by-two matrix quantale";
    let v = guarded(name, || {
        let rel = relation_quantale(2, budget)?;
        let mats = matrix_quantale(&catalog::two_quantale(), 2, budget)?;
        let Some(table) = quantale_iso(&rel, &mats.quantale) else {
            return Ok(Verdict::fail(name, "no isomorphism found"));
        };
        let mut failures = Vec::new();
        let mut seen = vec![false; mats.quantale.n()];
        for (a, &img) in table.iter().enumerate() {
            if std::mem::replace(&mut seen[img], true) {
                failures.push("witness is not injective".to_string());
            }
            for b in 0..rel.n() {
                if table[rel.mul(a, b)] != mats.quantale.mul(table[a], table[b]) {
                    failures.push(format!("products disagree at ({a}, {b})"));
                }
                if rel.lattice().leq(a, b) != mats.quantale.lattice().leq(table[a], table[b]) {
                    failures.push(format!("order disagrees at ({a}, {b})"));
                }
            }
        }
        if table[rel.unit()] != mats.quantale.unit() {
            failures.push("unit is not preserved".to_string());
        }
        let witness = table
            .iter()
            .enumerate()
            .map(|(a, &img)| format!("{} -> {}", rel.name(a), mats.matrix_of(img).render()))
            .collect::<Vec<_>>()
            .join("; ");
        Ok(verdict_over(name, &failures, witness))
    })?;
    Ok(vec![v])
}

fn small_carriers() -> Result<Vec<Arc<Lattice>>> {
    Ok(catalog::all_lattices_up_to(4)?
        .into_iter()
        .map(|(_, l)| l)
        .collect())
}

fn corner_evaluation() -> Result<Vec<Verdict>> {
    let carriers = small_carriers()?;
    let mut verdicts = Vec::new();
    for (qname, q) in catalog::catalog_quantales() {
        let name = format!("evaluation transport over {qname}");
        if q.n() > 16 {
            verdicts.push(Verdict::skipped(
                name,
                "carrier larger than sixteen elements",
            ));
            continue;
        }
        verdicts.push(guarded(&name, || {
            let mut modules: Vec<Arc<Module>> = Vec::new();
            for l in &carriers {
                modules.extend(all_module_structures(&q, l)?);
            }
            let mut homs = Vec::new();
            for m in &modules {
                let mut row = Vec::new();
                for n in &modules {
                    row.push(module_homs(m, n)?);
                }
                homs.push(row);
            }
            let idems = idempotent_elements(&q);
            let mut failures = Vec::new();
            let mut squares = 0usize;
            for &e in &idems {
                let corner = corner_quantale(&q, e)?;
                let mut isos = Vec::new();
                for m in &modules {
                    match evaluation_iso(&corner, m) {
                        Ok(iso) => isos.push(Some(iso)),
                        Err(err) => {
                            failures.push(format!("evaluation at {}: {err}", q.name(e)));
                            isos.push(None);
                        }
                    }
                }
                for (i, row) in homs.iter().enumerate() {
                    for (j, hom) in row.iter().enumerate() {
                        let (Some(at_m), Some(at_n)) = (&isos[i], &isos[j]) else {
                            continue;
                        };
                        for t in 0..hom.lattice.n() {
                            if !evaluation_natural(at_m, at_n, &hom.morphism_of(t)) {
                                failures.push(format!(
                                    "naturality fails at {} between modules {i} and {j}",
                                    q.name(e)
                                ));
                            }
                            squares += 1;
                        }
                    }
                }
                if let Err(err) = corner_end_iso(&corner) {
                    failures.push(format!("endomorphism transport at {}: {err}", q.name(e)));
                }
            }
            Ok(verdict_over(
                &name,
                &failures,
                format!(
                    "{} idempotents, {} modules, {} naturality squares",
                    idems.len(),
                    modules.len(),
                    squares
                ),
            ))
        })?);
    }
    Ok(verdicts)
}

fn fullness_generator() -> Result<Vec<Verdict>> {
    let carriers = small_carriers()?;
    let mut verdicts = Vec::new();
    for (qname, q) in catalog::catalog_quantales() {
        let name = format!("generator criterion against fullness over {qname}");
        verdicts.push(guarded(&name, || {
            let mut sweep: Vec<Arc<Module>> = vec![regular_module(&q)];
            for l in &carriers {
                sweep.extend(all_module_structures(&q, l)?);
            }
            let idems = idempotent_elements(&q);
            let mut failures = Vec::new();
            let mut full_count = 0usize;
            for &e in &idems {
                let full = is_full_idempotent(&q, e)?;
                full_count += usize::from(full);
                let ideal = right_ideal(&q, e)?;
                if is_generator(&ideal.module)? != full {
                    failures.push(format!(
                        "generator criterion disagrees with fullness at {}",
                        q.name(e)
                    ));
                }
                let corner = corner_quantale(&q, e)?;
                let mut all_epi = true;
                for m in &sweep {
                    all_epi &= kappa_map(&corner, m)?.epi;
                }
                if all_epi != full {
                    failures.push(format!(
                        "comparison maps onto the sweep disagree with fullness at {}",
                        q.name(e)
                    ));
                }
            }
            Ok(verdict_over(
                &name,
                &failures,
                format!(
                    "{} idempotents, {} full, sweep over {} modules",
                    idems.len(),
                    full_count,
                    sweep.len()
                ),
            ))
        })?);
    }
    Ok(verdicts)
}

fn morita_witness(budget: usize) -> Result<Vec<Verdict>> {
    let base = catalog::two_quantale();
    let (mats, fulls) = find_full_idempotents(&base, 2, budget)?;
    let idems = idempotent_elements(&mats.quantale);
    let mut verdicts = vec![Verdict::pass_with(
        "full idempotent matrices over the two-element locale",
        format!("{} full among {} idempotents", fulls.len(), idems.len()),
    )];
    for &e in &fulls {
        let mat = mats.matrix_of(e);
        let name = format!("witness checks for {}", mat.render());
        verdicts.push(guarded(&name, || {
            let w = morita_witness_check(&base, 2, &mat, 4, budget)?;
            let failures: Vec<String> = w
                .checks
                .iter()
                .filter(|v| v.status != Status::Pass)
                .map(|v| v.name.clone())
                .collect();
            Ok(verdict_over(
                &name,
                &failures,
                format!(
                    "{} checks, corner of {} elements",
                    w.checks.len(),
                    w.corner.quantale.n()
                ),
            ))
        })?);
    }
    Ok(verdicts)
}

fn commutative_census(budget: usize) -> Result<Vec<Verdict>> {
    let cases = [
        ("2", catalog::two_quantale()),
        ("C3-locale", catalog::chain_locale(3)),
        ("PZ2", catalog::powerset_z2()),
    ];
    let mut verdicts = Vec::new();
    for (qname, q) in cases {
        let name = format!("commutative endomorphism quantales over {qname}");
        verdicts.push(guarded(&name, || {
            let census = projective_generator_census(&q, 4, budget)?;
            let regular = regular_module(&q);
            let mut failures = Vec::new();
            if !census
                .iter()
                .any(|entry| module_iso(&entry.module, &regular).is_some())
            {
                failures.push("the regular module is missing from the census".to_string());
            }
            let mut commutative = 0usize;
            for entry in &census {
                if entry.end.commutativity_witness().is_none() {
                    commutative += 1;
                    if quantale_iso(&entry.end, &q).is_none() {
                        failures.push(format!(
                            "commutative endomorphisms of {} are not the base quantale",
                            entry.carrier_name
                        ));
                    }
                }
            }
            Ok(verdict_over(
                &name,
                &failures,
                format!("{} entries, {commutative} commutative", census.len()),
            ))
        })?);
    }
    Ok(verdicts)
}

fn modules_over_two(budget: usize) -> Result<Vec<Verdict>> {
    let two = catalog::two_quantale();
    let lat = catalog::catalog_lattices();
    let mut verdicts = Vec::new();
    let mut failures = Vec::new();
    let mut unique: Vec<(String, Arc<Module>)> = Vec::new();
    for (lname, l) in &lat {
        let structures = all_module_structures(&two, l)?;
        if structures.len() == 1 {
            unique.push((lname.clone(), structures[0].clone()));
        } else {
            failures.push(format!("{} structures on {lname}", structures.len()));
        }
    }
    verdicts.push(verdict_over(
        "every catalog lattice carries exactly one module structure over 2",
        &failures,
        format!("{} lattices", lat.len()),
    ));

    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for (lname, m) in &unique {
        for (rname, n) in &unique {
            let homs = module_homs(m, n)?;
            let plain = internal_hom(m.carrier(), n.carrier(), budget)?;
            let from_modules: BTreeSet<Vec<usize>> = homs.tables().iter().cloned().collect();
            let from_lattices: BTreeSet<Vec<usize>> = plain.tables().iter().cloned().collect();
            if from_modules != from_lattices {
                failures.push(format!("hom tables differ between {lname} and {rname}"));
            }
            pairs += 1;
        }
    }
    verdicts.push(verdict_over(
        "hom lattices over 2 coincide with lattices of join-preserving maps",
        &failures,
        format!("{pairs} pairs"),
    ));
    Ok(verdicts)
}

fn self_smallness_suite(budget: usize) -> Result<Vec<Verdict>> {
    let two = catalog::two_quantale();
    let cases = [
        ("the regular module over 2", regular_module(&two)),
        (
            "the free module of rank two over 2",
            free_module(&two, 2, budget)?.module,
        ),
    ];
    let mut verdicts = Vec::new();
    for (mname, m) in cases {
        let name = format!("copower comparison for {mname}");
        verdicts.push(guarded(&name, || {
            let mut failures = Vec::new();
            for k in 1..=3 {
                if !self_smallness(&m, k, budget)? {
                    failures.push(format!("comparison fails at power {k}"));
                }
            }
            Ok(verdict_over(
                &name,
                &failures,
                "powers one through three".to_string(),
            ))
        })?);
    }
    Ok(verdicts)
}

fn determinism(budget: usize) -> Result<Vec<Verdict>> {
    let mut verdicts = Vec::new();
    for &(name, _) in SUITES {
        if name == "determinism" || name == "all" {
            continue;
        }
        let first = run_suite(name, budget)?.render_json();
        let second = run_suite(name, budget)?.render_json();
        verdicts.push(Verdict::check(
            format!("suite {name} reports identically across runs"),
            first == second,
            "reports differ between runs",
        ));
    }
    Ok(verdicts)
}

fn all_suites(budget: usize) -> Result<Vec<Verdict>> {
    let mut verdicts = Vec::new();
    for &(name, _) in SUITES {
        if name == "all" {
            continue;
        }
        let report = run_suite(name, budget)?;
        let failed: Vec<&Verdict> = report
            .checks
            .iter()
            .filter(|v| v.status == Status::Fail)
            .collect();
        verdicts.push(match failed.first() {
            None => Verdict::pass_with(
                format!("suite {name}"),
                format!("{} checks", report.checks.len()),
            ),
            Some(first) => Verdict::fail(
                format!("suite {name}"),
                format!("{} failed, first: {}", failed.len(), first.name),
            ),
        });
    }
    Ok(verdicts)
}
