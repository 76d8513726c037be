//! Interchange format: one JSON document holding named lattices,
//! quantales, modules, and matrices as index-based tables with no derived
//! data, plus a workspace that ingests documents into validated
//! structures. References resolve against the document first and the
//! built-in catalog second.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::Matrix;
use crate::module::Module;
use crate::quantale::Quantale;
use crate::report::Verdict;

#[derive(Serialize, Deserialize, Debug, Clone, Default)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lattices: Vec<LatticeDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quantales: Vec<QuantaleDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<MatrixDef>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct LatticeDef {
    pub name: String,
    pub elements: Vec<String>,
    /// Row-major order matrix: leq[x][y] is 1 when x <= y.
    pub leq: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct QuantaleDef {
    pub name: String,
    /// Name of the carrier lattice.
    pub carrier: String,
    /// Row-major multiplication table of element indices.
    pub mult: Vec<Vec<usize>>,
    pub unit: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ModuleDef {
    pub name: String,
    pub quantale: String,
    /// Name of the carrier lattice.
    pub carrier: String,
    /// Action table: rows are module elements, columns quantale elements.
    pub action: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MatrixDef {
    pub name: String,
    pub quantale: String,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    /// Row-major entries as quantale element indices.
    pub entries: Vec<Vec<usize>>,
}

pub fn parse_document(text: &str) -> Result<Document> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

impl Document {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("documents serialize");
        out.push('\n');
        out
    }

    pub fn push_lattice(&mut self, name: &str, l: &Lattice) {
        let n = l.n();
        let leq = (0..n)
            .map(|x| (0..n).map(|y| u8::from(l.leq(x, y))).collect())
            .collect();
        self.lattices.push(LatticeDef {
            name: name.to_string(),
            elements: l.names().to_vec(),
            leq,
        });
    }

    /// Pushes the carrier lattice under the same name, then the quantale.
    pub fn push_quantale(&mut self, name: &str, q: &Quantale) {
        self.push_lattice(name, q.lattice());
        let n = q.n();
        let mult = q.mult_table().chunks(n).map(|row| row.to_vec()).collect();
        self.quantales.push(QuantaleDef {
            name: name.to_string(),
            carrier: name.to_string(),
            mult,
            unit: q.unit(),
        });
    }

    /// Pushes the carrier lattice under the module name; the quantale must
    /// be pushed (or resolvable) separately under `quantale_name`.
    pub fn push_module(&mut self, name: &str, quantale_name: &str, m: &Module) {
        self.push_lattice(name, m.carrier());
        let k = m.quantale().n();
        let action = m.action_table().chunks(k).map(|row| row.to_vec()).collect();
        self.modules.push(ModuleDef {
            name: name.to_string(),
            quantale: quantale_name.to_string(),
            carrier: name.to_string(),
            action,
        });
    }

    pub fn push_matrix(&mut self, name: &str, quantale_name: &str, m: &Matrix) {
        let entries = m.entries().chunks(m.cols).map(|row| row.to_vec()).collect();
        self.matrices.push(MatrixDef {
            name: name.to_string(),
            quantale: quantale_name.to_string(),
            rows: (0..m.rows).map(|i| i.to_string()).collect(),
            cols: (0..m.cols).map(|j| j.to_string()).collect(),
            entries,
        });
    }
}

/// Named structures loaded from definition documents, in declaration
/// order. Lookups fall back to the built-in catalog.
#[derive(Clone, Default)]
pub struct Workspace {
    lattices: Vec<(String, Arc<Lattice>)>,
    quantales: Vec<(String, Arc<Quantale>)>,
    modules: Vec<(String, Arc<Module>)>,
    matrices: Vec<(String, Matrix)>,
}

fn flatten_table(
    rows: &[Vec<usize>],
    height: usize,
    width: usize,
    what: &str,
) -> Result<Vec<usize>> {
    if rows.len() != height || rows.iter().any(|r| r.len() != width) {
        return Err(Error::Parse(format!(
            "{what} must be {height} rows of {width} entries"
        )));
    }
    Ok(rows.iter().flatten().copied().collect())
}

fn build_lattice(def: &LatticeDef) -> Result<Arc<Lattice>> {
    let n = def.elements.len();
    if def.leq.len() != n || def.leq.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!(
            "lattice {}: leq must be an {n} by {n} matrix",
            def.name
        )));
    }
    let leq: Vec<Vec<bool>> = def
        .leq
        .iter()
        .map(|row| row.iter().map(|&v| v != 0).collect())
        .collect();
    Lattice::validate(def.elements.clone(), &leq)
}

impl Workspace {
    pub fn new() -> Workspace {
        Workspace::default()
    }

    pub fn lattice(&self, name: &str) -> Option<Arc<Lattice>> {
        self.lattices
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, l)| l.clone())
            .or_else(|| catalog::builtin_lattice(name))
    }

    pub fn quantale(&self, name: &str) -> Option<Arc<Quantale>> {
        self.quantales
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, q)| q.clone())
            .or_else(|| catalog::builtin_quantale(name))
    }

    pub fn module(&self, name: &str) -> Option<Arc<Module>> {
        self.modules
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m.clone())
    }

    pub fn matrix(&self, name: &str) -> Option<Matrix> {
        self.matrices
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m.clone())
    }

    fn claim(&self, kind: &str, taken: bool, name: &str) -> Result<()> {
        if taken {
            return Err(Error::Parse(format!("duplicate {kind} name {name}")));
        }
        Ok(())
    }

    fn insert_lattice(&mut self, name: &str, l: Arc<Lattice>) -> Result<()> {
        self.claim(
            "lattice",
            self.lattices.iter().any(|(n, _)| n == name),
            name,
        )?;
        self.lattices.push((name.to_string(), l));
        Ok(())
    }

    fn insert_quantale(&mut self, name: &str, q: Arc<Quantale>) -> Result<()> {
        self.claim(
            "quantale",
            self.quantales.iter().any(|(n, _)| n == name),
            name,
        )?;
        self.quantales.push((name.to_string(), q));
        Ok(())
    }

    fn insert_module(&mut self, name: &str, m: Arc<Module>) -> Result<()> {
        self.claim("module", self.modules.iter().any(|(n, _)| n == name), name)?;
        self.modules.push((name.to_string(), m));
        Ok(())
    }

    fn insert_matrix(&mut self, name: &str, m: Matrix) -> Result<()> {
        self.claim("matrix", self.matrices.iter().any(|(n, _)| n == name), name)?;
        self.matrices.push((name.to_string(), m));
        Ok(())
    }

    fn build_quantale(&self, def: &QuantaleDef) -> Result<Arc<Quantale>> {
        let carrier = self
            .lattice(&def.carrier)
            .ok_or_else(|| Error::UnknownName(def.carrier.clone()))?;
        let n = carrier.n();
        let mult = flatten_table(&def.mult, n, n, &format!("quantale {}: mult", def.name))?;
        if mult.iter().any(|&v| v >= n) || def.unit >= n {
            return Err(Error::Parse(format!(
                "quantale {}: element index out of range",
                def.name
            )));
        }
        Quantale::validate(carrier, mult, def.unit)
    }

    fn build_module(&self, def: &ModuleDef) -> Result<Arc<Module>> {
        let quantale = self
            .quantale(&def.quantale)
            .ok_or_else(|| Error::UnknownName(def.quantale.clone()))?;
        let carrier = self
            .lattice(&def.carrier)
            .ok_or_else(|| Error::UnknownName(def.carrier.clone()))?;
        let action = flatten_table(
            &def.action,
            carrier.n(),
            quantale.n(),
            &format!("module {}: action", def.name),
        )?;
        if action.iter().any(|&v| v >= carrier.n()) {
            return Err(Error::Parse(format!(
                "module {}: element index out of range",
                def.name
            )));
        }
        Module::validate(quantale, carrier, action)
    }

    fn build_matrix(&self, def: &MatrixDef) -> Result<Matrix> {
        let quantale = self
            .quantale(&def.quantale)
            .ok_or_else(|| Error::UnknownName(def.quantale.clone()))?;
        let entries = flatten_table(
            &def.entries,
            def.rows.len(),
            def.cols.len(),
            &format!("matrix {}: entries", def.name),
        )?;
        if entries.iter().any(|&v| v >= quantale.n()) {
            return Err(Error::Parse(format!(
                "matrix {}: element index out of range",
                def.name
            )));
        }
        Matrix::new(quantale, def.rows.len(), def.cols.len(), entries)
    }

    /// Ingests a document, failing on the first invalid structure.
    pub fn add_document(&mut self, doc: &Document) -> Result<()> {
        for def in &doc.lattices {
            let l = build_lattice(def)?;
            self.insert_lattice(&def.name, l)?;
        }
        for def in &doc.quantales {
            let q = self.build_quantale(def)?;
            self.insert_quantale(&def.name, q)?;
        }
        for def in &doc.modules {
            let m = self.build_module(def)?;
            self.insert_module(&def.name, m)?;
        }
        for def in &doc.matrices {
            let m = self.build_matrix(def)?;
            self.insert_matrix(&def.name, m)?;
        }
        Ok(())
    }
}

/// Validates every structure in a document, one verdict each, continuing
/// past validation failures. Malformed tables, duplicate names, and
/// unresolvable references abort with an error instead.
pub fn check_document(doc: &Document) -> Result<(Workspace, Vec<Verdict>)> {
    let mut ws = Workspace::new();
    let mut verdicts = Vec::new();
    let mut bad_lattices: Vec<String> = Vec::new();
    let mut bad_quantales: Vec<String> = Vec::new();

    for (kind, names) in [
        (
            "lattice",
            doc.lattices.iter().map(|d| &d.name).collect::<Vec<_>>(),
        ),
        ("quantale", doc.quantales.iter().map(|d| &d.name).collect()),
        ("module", doc.modules.iter().map(|d| &d.name).collect()),
        ("matrix", doc.matrices.iter().map(|d| &d.name).collect()),
    ] {
        for (i, name) in names.iter().enumerate() {
            ws.claim(kind, names[..i].contains(name), name)?;
        }
    }

    for def in &doc.lattices {
        match build_lattice(def) {
            Ok(l) => {
                ws.insert_lattice(&def.name, l)?;
                verdicts.push(Verdict::pass(format!("lattice {} validates", def.name)));
            }
            Err(e @ Error::Parse(_)) => return Err(e),
            Err(e) => {
                bad_lattices.push(def.name.clone());
                verdicts.push(Verdict::fail(
                    format!("lattice {} validates", def.name),
                    e.to_string(),
                ));
            }
        }
    }
    for def in &doc.quantales {
        let name = format!("quantale {} validates", def.name);
        if bad_lattices.contains(&def.carrier) {
            bad_quantales.push(def.name.clone());
            verdicts.push(Verdict::fail(name, "carrier failed validation"));
            continue;
        }
        match ws.build_quantale(def) {
            Ok(q) => {
                ws.insert_quantale(&def.name, q)?;
                verdicts.push(Verdict::pass(name));
            }
            Err(e @ (Error::Parse(_) | Error::UnknownName(_))) => return Err(e),
            Err(e) => {
                bad_quantales.push(def.name.clone());
                verdicts.push(Verdict::fail(name, e.to_string()));
            }
        }
    }
    for def in &doc.modules {
        let name = format!("module {} validates", def.name);
        if bad_lattices.contains(&def.carrier) || bad_quantales.contains(&def.quantale) {
            verdicts.push(Verdict::fail(
                name,
                "a referenced structure failed validation",
            ));
            continue;
        }
        match ws.build_module(def) {
            Ok(m) => {
                ws.insert_module(&def.name, m)?;
                verdicts.push(Verdict::pass(name));
            }
            Err(e @ (Error::Parse(_) | Error::UnknownName(_))) => return Err(e),
            Err(e) => verdicts.push(Verdict::fail(name, e.to_string())),
        }
    }
    for def in &doc.matrices {
        let name = format!("matrix {} validates", def.name);
        if bad_quantales.contains(&def.quantale) {
            verdicts.push(Verdict::fail(
                name,
                "a referenced structure failed validation",
            ));
            continue;
        }
        match ws.build_matrix(def) {
            Ok(m) => {
                ws.insert_matrix(&def.name, m)?;
                verdicts.push(Verdict::pass(name));
            }
            Err(e @ (Error::Parse(_) | Error::UnknownName(_))) => return Err(e),
            Err(e) => verdicts.push(Verdict::fail(name, e.to_string())),
        }
    }
    Ok((ws, verdicts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::module::free_module;

    fn same_lattice(a: &Lattice, b: &Lattice) -> bool {
        a.n() == b.n()
            && a.names() == b.names()
            && (0..a.n()).all(|x| (0..a.n()).all(|y| a.leq(x, y) == b.leq(x, y)))
    }

    #[test]
    fn catalog_quantales_round_trip() {
        for (name, q) in catalog::catalog_quantales() {
            let mut doc = Document::default();
            doc.push_quantale(&name, &q);
            let parsed = parse_document(&doc.to_json()).unwrap();
            let mut ws = Workspace::new();
            ws.add_document(&parsed).unwrap();
            let back = ws.quantale(&name).unwrap();
            assert!(same_lattice(back.lattice(), q.lattice()), "{name}");
            assert_eq!(back.mult_table(), q.mult_table(), "{name}");
            assert_eq!(back.unit(), q.unit(), "{name}");
        }
    }

    #[test]
    fn modules_and_matrices_round_trip() {
        let two = catalog::two_quantale();
        let free = free_module(&two, 2, 16).unwrap();
        let mat = Matrix::unit_at(&two, 2, 0, 1);
        let mut doc = Document::default();
        doc.push_quantale("2", &two);
        doc.push_module("free", "2", &free.module);
        doc.push_matrix("E12", "2", &mat);
        let parsed = parse_document(&doc.to_json()).unwrap();
        let mut ws = Workspace::new();
        ws.add_document(&parsed).unwrap();
        let m = ws.module("free").unwrap();
        assert_eq!(m.action_table(), free.module.action_table());
        assert!(same_lattice(m.carrier(), free.module.carrier()));
        let back = ws.matrix("E12").unwrap();
        assert_eq!(back.entries(), mat.entries());
        assert_eq!((back.rows, back.cols), (2, 2));
    }

    #[test]
    fn references_resolve_against_builtins() {
        let text = r#"{
            "quantales": [
                {"name": "q", "carrier": "M2",
                 "mult": [[0,0,0,0],[0,1,0,1],[0,0,2,2],[0,1,2,3]],
                 "unit": 3}
            ]
        }"#;
        let doc = parse_document(text).unwrap();
        let mut ws = Workspace::new();
        ws.add_document(&doc).unwrap();
        assert_eq!(ws.quantale("q").unwrap().n(), 4);
        assert!(ws.quantale("Rel2").is_some());
        assert!(ws.lattice("N5").is_some());
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(matches!(parse_document("not json"), Err(Error::Parse(_))));
        let dup = r#"{"lattices": [
            {"name": "L", "elements": ["0"], "leq": [[1]]},
            {"name": "L", "elements": ["0"], "leq": [[1]]}
        ]}"#;
        let mut ws = Workspace::new();
        assert!(matches!(
            ws.add_document(&parse_document(dup).unwrap()),
            Err(Error::Parse(_))
        ));
        let missing = r#"{"quantales": [
            {"name": "q", "carrier": "nowhere", "mult": [[0]], "unit": 0}
        ]}"#;
        let mut ws = Workspace::new();
        assert!(matches!(
            ws.add_document(&parse_document(missing).unwrap()),
            Err(Error::UnknownName(_))
        ));
    }

    #[test]
    fn check_continues_past_invalid_structures() {
        let text = r#"{
            "lattices": [
                {"name": "good", "elements": ["0", "1"], "leq": [[1, 1], [0, 1]]},
                {"name": "bad", "elements": ["a", "b"], "leq": [[1, 0], [0, 1]]}
            ],
            "quantales": [
                {"name": "on-bad", "carrier": "bad", "mult": [[0,0],[0,1]], "unit": 1},
                {"name": "on-good", "carrier": "good", "mult": [[0,0],[0,1]], "unit": 1}
            ]
        }"#;
        let (ws, verdicts) = check_document(&parse_document(text).unwrap()).unwrap();
        let failed: Vec<&str> = verdicts
            .iter()
            .filter(|v| v.status == crate::report::Status::Fail)
            .map(|v| v.name.as_str())
            .collect();
        assert_eq!(
            failed,
            ["lattice bad validates", "quantale on-bad validates"]
        );
        assert!(ws.quantale("on-good").is_some());
        assert_eq!(verdicts.len(), 4);
    }
}
