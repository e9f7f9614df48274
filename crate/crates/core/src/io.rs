//! JSON files for algebras, modules and algebra extensions.
//!
//! Coefficients are arbitrary integers, reduced modulo the field prime on
//! load. A file that names another file (a module naming its algebra, an
//! extension naming its two algebras) may give a path, resolved relative to
//! the naming file, or the object inline.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, AlgebraPresentation, Quiver, RelationSpec};
use crate::frobext::{AlgebraEmbedding, FrobError};
use crate::linalg::{FieldError, Matrix, PrimeField, DEFAULT_PRIME};
use crate::modcat::{Module, ModuleError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {reason}")]
    Read { path: String, reason: String },
    #[error("{path}: malformed JSON: {reason}")]
    Parse { path: String, reason: String },
    #[error("{path}: {reason}")]
    Invalid { path: String, reason: String },
}

impl IoError {
    fn invalid(path: &str, reason: impl ToString) -> Self {
        IoError::Invalid { path: path.to_string(), reason: reason.to_string() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldSpec {
    pub prime: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermSpec {
    pub coef: i64,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RelationFile {
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraFile {
    #[serde(default = "default_field")]
    pub field: FieldSpec,
    pub quiver: QuiverSpec,
    #[serde(default)]
    pub relations: Vec<RelationFile>,
    pub nilpotency_bound: usize,
}

fn default_field() -> FieldSpec {
    FieldSpec { prime: DEFAULT_PRIME as u64 }
}

/// Either a path to another file or the object itself.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Ref<T> {
    Path(String),
    Inline(T),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModuleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<Ref<AlgebraFile>>,
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExtensionFile {
    pub sub: Ref<AlgebraFile>,
    pub big: Ref<AlgebraFile>,
    /// Image of each basis element of `sub`, by label, over the basis of
    /// `big`. Absent: match vertex and arrow names.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<BTreeMap<String, Vec<i64>>>,
    /// Automorphism of `sub` as a matrix on its basis. Absent: identity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Vec<i64>>>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &FsPath) -> Result<T, IoError> {
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| IoError::Read { path: display.clone(), reason: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| IoError::Parse { path: display, reason: e.to_string() })
}

fn relative_to(base: &FsPath, name: &str) -> PathBuf {
    match base.parent() {
        Some(dir) => dir.join(name),
        None => PathBuf::from(name),
    }
}

fn field_for(prime: u64, path: &str) -> Result<PrimeField, IoError> {
    PrimeField::new(prime).map_err(|e: FieldError| IoError::invalid(path, e))
}

impl AlgebraFile {
    /// The presentation over `F_p`, with `prime` overriding the file's own.
    pub fn presentation(&self, prime: Option<u64>, path: &str) -> Result<AlgebraPresentation, IoError> {
        let field = field_for(prime.unwrap_or(self.field.prime), path)?;
        let arrows: Vec<(String, String, String)> =
            self.quiver.arrows.iter().map(|a| (a.name.clone(), a.from.clone(), a.to.clone())).collect();
        let quiver = Quiver::new(self.quiver.vertices.iter().cloned(), arrows)
            .map_err(|e: AlgebraError| IoError::invalid(path, e))?;
        let relations: Vec<RelationSpec> = self
            .relations
            .iter()
            .map(|r| RelationSpec { terms: r.terms.iter().map(|t| (t.coef, t.path.clone())).collect() })
            .collect();
        AlgebraPresentation::new(field, quiver, &relations, self.nilpotency_bound)
            .map_err(|e| IoError::invalid(path, e))
    }

    pub fn from_presentation(p: &AlgebraPresentation) -> Self {
        let q = &p.quiver;
        AlgebraFile {
            field: FieldSpec { prime: p.field.p() as u64 },
            quiver: QuiverSpec {
                vertices: q.vertices().to_vec(),
                arrows: q
                    .arrows()
                    .iter()
                    .map(|a| ArrowSpec {
                        name: a.name.clone(),
                        from: q.vertices()[a.source].clone(),
                        to: q.vertices()[a.target].clone(),
                    })
                    .collect(),
            },
            relations: p
                .relations
                .iter()
                .map(|r| RelationFile {
                    terms: r
                        .terms
                        .iter()
                        .map(|(c, path)| TermSpec {
                            coef: p.field.signed(*c),
                            path: path.arrows.iter().map(|&a| q.arrows()[a].name.clone()).collect(),
                        })
                        .collect(),
                })
                .collect(),
            nilpotency_bound: p.nilpotency_bound,
        }
    }
}

/// Loads and compiles an algebra file.
pub fn load_algebra(path: &FsPath, prime: Option<u64>) -> Result<Arc<Algebra>, IoError> {
    let file: AlgebraFile = read_json(path)?;
    compile(&file, prime, &path.display().to_string())
}

fn compile(file: &AlgebraFile, prime: Option<u64>, path: &str) -> Result<Arc<Algebra>, IoError> {
    file.presentation(prime, path)?.compile().map_err(|e| IoError::invalid(path, e))
}

fn resolve_algebra(r: &Ref<AlgebraFile>, base: &FsPath, prime: Option<u64>) -> Result<Arc<Algebra>, IoError> {
    match r {
        Ref::Path(name) => load_algebra(&relative_to(base, name), prime),
        Ref::Inline(file) => compile(file, prime, &base.display().to_string()),
    }
}

fn matrix(
    f: PrimeField,
    rows: usize,
    cols: usize,
    data: &[Vec<i64>],
    what: &str,
    path: &str,
) -> Result<Matrix, IoError> {
    // a zero-row matrix may be written as [] and a zero-column one as [[], …] or []
    if rows == 0 && data.iter().all(Vec::is_empty) {
        return Ok(Matrix::zeros(f, 0, cols));
    }
    if cols == 0 && (data.is_empty() || data.iter().all(Vec::is_empty)) {
        return Ok(Matrix::zeros(f, rows, 0));
    }
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(IoError::invalid(path, format!("{what}: expected a {rows}x{cols} matrix")));
    }
    Ok(Matrix::from_rows(f, cols, data))
}

impl ModuleFile {
    pub fn module(&self, alg: &Arc<Algebra>, path: &str) -> Result<Module, IoError> {
        let q = alg.quiver();
        for v in self.dims.keys() {
            if q.vertex_index(v).is_none() {
                return Err(IoError::invalid(path, format!("unknown vertex `{v}`")));
            }
        }
        for a in self.action.keys() {
            if q.arrow_index(a).is_none() {
                return Err(IoError::invalid(path, format!("unknown arrow `{a}`")));
            }
        }
        let dims: Vec<usize> = q.vertices().iter().map(|v| self.dims.get(v).copied().unwrap_or(0)).collect();
        let f = alg.field();
        let action = q
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (dims[a.target], dims[a.source]);
                match self.action.get(&a.name) {
                    Some(data) => matrix(f, r, c, data, &format!("arrow `{}`", a.name), path),
                    None => Ok(Matrix::zeros(f, r, c)),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Module::new(alg.clone(), dims, action).map_err(|e: ModuleError| IoError::invalid(path, e))
    }

    pub fn from_module(m: &Module) -> Self {
        let alg = m.algebra();
        let q = alg.quiver();
        let f = m.field();
        let dims = q.vertices().iter().cloned().zip(m.dims().iter().copied()).collect();
        let action = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let mat = m.action(i);
                let rows = (0..mat.rows()).map(|r| mat.row(r).iter().map(|&x| f.signed(x)).collect()).collect();
                (a.name.clone(), rows)
            })
            .collect();
        ModuleFile { algebra: None, dims, action }
    }
}

/// Loads a module. With `alg` given, the file's own algebra entry (if any)
/// is ignored; otherwise it is required.
pub fn load_module(path: &FsPath, alg: Option<&Arc<Algebra>>, prime: Option<u64>) -> Result<Module, IoError> {
    let file: ModuleFile = read_json(path)?;
    let display = path.display().to_string();
    let alg = match (alg, &file.algebra) {
        (Some(a), _) => a.clone(),
        (None, Some(r)) => resolve_algebra(r, path, prime)?,
        (None, None) => return Err(IoError::invalid(&display, "no algebra given")),
    };
    file.module(&alg, &display)
}

/// Loads an extension file: the embedding and the automorphism `alpha`.
pub fn load_extension(path: &FsPath, prime: Option<u64>) -> Result<(AlgebraEmbedding, Matrix), IoError> {
    let file: ExtensionFile = read_json(path)?;
    let display = path.display().to_string();
    let sub = resolve_algebra(&file.sub, path, prime)?;
    let big = resolve_algebra(&file.big, path, prime)?;
    let emb_err = |e: FrobError| IoError::invalid(&display, e);
    let emb = match &file.embedding {
        None => AlgebraEmbedding::by_names(sub.clone(), big.clone()).map_err(emb_err)?,
        Some(map) => {
            let f = big.field();
            let mut cols = Vec::with_capacity(sub.dim());
            for b in 0..sub.dim() {
                let label = sub.basis_label(b);
                let v = map
                    .get(&label)
                    .ok_or_else(|| IoError::invalid(&display, format!("embedding misses basis element `{label}`")))?;
                if v.len() != big.dim() {
                    return Err(IoError::invalid(
                        &display,
                        format!("image of `{label}` must have {} entries", big.dim()),
                    ));
                }
                cols.push(v.iter().map(|&c| f.reduce(c)).collect());
            }
            for key in map.keys() {
                if sub.basis_index(key).is_none() {
                    return Err(IoError::invalid(&display, format!("unknown basis element `{key}`")));
                }
            }
            AlgebraEmbedding::new(sub.clone(), big.clone(), Matrix::from_columns(f, big.dim(), &cols))
                .map_err(emb_err)?
        }
    };
    let alpha = match &file.alpha {
        None => Matrix::identity(sub.field(), sub.dim()),
        Some(rows) => matrix(sub.field(), sub.dim(), sub.dim(), rows, "alpha", &display)?,
    };
    Ok((emb, alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;

    fn tmp(name: &str, text: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("gorkit-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        fs::write(&p, text).unwrap();
        p
    }

    #[test]
    fn algebra_roundtrip() {
        let p = builtin::e3_presentation(PrimeField::default());
        let file = AlgebraFile::from_presentation(&p);
        let text = serde_json::to_string(&file).unwrap();
        let back: AlgebraFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.presentation(None, "x").unwrap(), p);
    }

    #[test]
    fn module_with_relative_algebra() {
        let e1 = AlgebraFile::from_presentation(&builtin::e1_presentation(PrimeField::default()));
        tmp("e1.json", &serde_json::to_string(&e1).unwrap());
        let m = tmp("m.json", r#"{"algebra": "e1.json", "dims": {"1": 2}, "action": {"x": [[0, 0], [1, 0]]}}"#);
        let module = load_module(&m, None, None).unwrap();
        assert_eq!(module.dims(), &[2]);
        assert!(module.is_projective());
    }

    #[test]
    fn relation_violation_names_relation() {
        let m = tmp("bad.json", r#"{"algebra": "e1.json", "dims": {"1": 2}, "action": {"x": [[0, 1], [1, 0]]}}"#);
        let e1 = AlgebraFile::from_presentation(&builtin::e1_presentation(PrimeField::default()));
        tmp("e1.json", &serde_json::to_string(&e1).unwrap());
        let err = load_module(&m, None, None).unwrap_err();
        assert!(err.to_string().contains("x.x"), "{err}");
    }

    #[test]
    fn prime_override_and_reduction() {
        let text = r#"{"field": {"prime": 7}, "quiver": {"vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}]},
            "relations": [{"terms": [{"coef": 8, "path": ["x", "x"]}]}], "nilpotency_bound": 3}"#;
        let p = tmp("a7.json", text);
        assert_eq!(load_algebra(&p, None).unwrap().field().p(), 7);
        assert_eq!(load_algebra(&p, Some(11)).unwrap().field().p(), 11);
        assert!(matches!(load_algebra(&p, Some(12)), Err(IoError::Invalid { .. })));
        assert_eq!(load_algebra(&p, None).unwrap().dim(), 2);
    }

    #[test]
    fn malformed_files() {
        let p = tmp("junk.json", "{ not json");
        assert!(matches!(load_algebra(&p, None), Err(IoError::Parse { .. })));
        assert!(matches!(load_algebra(FsPath::new("/nonexistent/a.json"), None), Err(IoError::Read { .. })));
    }
}
