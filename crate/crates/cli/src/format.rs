//! Text file formats: structure-constant files (`.alg`), sparse map files
//! (`.map`) and chain manifests (`.chain`).
//!
//! Structure-constant files use sparse lines:
//!
//! ```text
//! field rational            # or prime:p
//! dim 4
//! mul i j k value           # e_i · e_j  contains  value · e_k
//! unit k value              # η(1)      contains  value · e_k
//! comul i j k value         # Δ(e_k)    contains  value · e_i ⊗ e_j
//! counit k value            # ε(e_k) = value
//! ```
//!
//! Values are exact: integers or `a/b`. Duplicate positions are rejected.
//! Map files carry `domain`/`codomain` shape lines and `entry row col value`
//! lines; manifests list `monad <ref>` lines and `law i j <ref>` lines where
//! a ref is a relative path, `flip`, or `builtin:<name>[.dual|.lambda|.lambdahat]`.

use crate::CliError;
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use weakwreath::algebra::{Algebra, Coalgebra, Demimonad};
use weakwreath::bialgebra::{
    canonical_lambda, canonical_lambda_hat, cyclic_group_table, dual, group_algebra,
    pair_groupoid_algebra, symmetric3_table, WeakBialgebra,
};
use weakwreath::field::{FieldDesc, Scalar};
use weakwreath::linmap::{LinMap, Space};
use weakwreath::matrix::Matrix;
use weakwreath::wdln::WdlNObject;

/// Parsed structure-constant file.
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub field: FieldDesc,
    pub dim: usize,
    pub shape: Option<Vec<usize>>,
    pub mul: Vec<(usize, usize, usize, Scalar)>,
    pub unit: Vec<(usize, Scalar)>,
    pub comul: Vec<(usize, usize, usize, Scalar)>,
    pub counit: Vec<(usize, Scalar)>,
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

struct LineParser<'a> {
    path: &'a str,
    line_no: usize,
}

impl<'a> LineParser<'a> {
    fn err(&self, msg: impl Into<String>) -> CliError {
        CliError::Parse {
            path: self.path.to_string(),
            line: self.line_no,
            msg: msg.into(),
        }
    }

    fn index(&self, tok: Option<&str>, what: &str) -> Result<usize, CliError> {
        tok.ok_or_else(|| self.err(format!("missing {what}")))?
            .parse()
            .map_err(|_| self.err(format!("bad {what}")))
    }

    fn scalar(&self, tok: Option<&str>, field: FieldDesc) -> Result<Scalar, CliError> {
        let tok = tok.ok_or_else(|| self.err("missing value"))?;
        Scalar::parse(field, tok).map_err(|e| self.err(e.to_string()))
    }
}

impl AlgebraFile {
    pub fn parse_file(
        path: &Path,
        field_override: Option<FieldDesc>,
    ) -> Result<AlgebraFile, CliError> {
        let text = read_file(path)?;
        AlgebraFile::parse(&text, &path.display().to_string(), field_override)
    }

    pub fn parse(
        text: &str,
        path: &str,
        field_override: Option<FieldDesc>,
    ) -> Result<AlgebraFile, CliError> {
        let mut field: Option<FieldDesc> = None;
        let mut dim: Option<usize> = None;
        let mut shape: Option<Vec<usize>> = None;
        let mut mul = Vec::new();
        let mut unit = Vec::new();
        let mut comul = Vec::new();
        let mut counit = Vec::new();
        let mut seen_mul = BTreeSet::new();
        let mut seen_unit = BTreeSet::new();
        let mut seen_comul = BTreeSet::new();
        let mut seen_counit = BTreeSet::new();

        for (line_no, raw) in text.lines().enumerate() {
            let p = LineParser {
                path,
                line_no: line_no + 1,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut toks = line.split_whitespace();
            let keyword = toks.next().unwrap();
            match keyword {
                "field" => {
                    let desc: FieldDesc = toks
                        .next()
                        .ok_or_else(|| p.err("missing field descriptor"))?
                        .parse()
                        .map_err(|e| p.err(format!("{e}")))?;
                    field = Some(desc);
                }
                "dim" => dim = Some(p.index(toks.next(), "dimension")?),
                "shape" => {
                    let mut s = Vec::new();
                    for tok in toks.by_ref() {
                        s.push(tok.parse().map_err(|_| p.err("bad shape factor"))?);
                    }
                    shape = Some(s);
                    continue;
                }
                "mul" | "comul" => {
                    let cur_field = field_override
                        .or(field)
                        .ok_or_else(|| p.err("field line must come first"))?;
                    let d = dim.ok_or_else(|| p.err("dim line must come first"))?;
                    let i = p.index(toks.next(), "index i")?;
                    let j = p.index(toks.next(), "index j")?;
                    let k = p.index(toks.next(), "index k")?;
                    if i >= d || j >= d || k >= d {
                        return Err(p.err(format!("index out of range (dim {d})")));
                    }
                    let v = p.scalar(toks.next(), cur_field)?;
                    let (list, seen) = if keyword == "mul" {
                        (&mut mul, &mut seen_mul)
                    } else {
                        (&mut comul, &mut seen_comul)
                    };
                    if !seen.insert((i, j, k)) {
                        return Err(p.err(format!("duplicate {keyword} triple ({i},{j},{k})")));
                    }
                    list.push((i, j, k, v));
                }
                "unit" | "counit" => {
                    let cur_field = field_override
                        .or(field)
                        .ok_or_else(|| p.err("field line must come first"))?;
                    let d = dim.ok_or_else(|| p.err("dim line must come first"))?;
                    let k = p.index(toks.next(), "index k")?;
                    if k >= d {
                        return Err(p.err(format!("index out of range (dim {d})")));
                    }
                    let v = p.scalar(toks.next(), cur_field)?;
                    let (list, seen) = if keyword == "unit" {
                        (&mut unit, &mut seen_unit)
                    } else {
                        (&mut counit, &mut seen_counit)
                    };
                    if !seen.insert(k) {
                        return Err(p.err(format!("duplicate {keyword} entry {k}")));
                    }
                    list.push((k, v));
                }
                other => return Err(p.err(format!("unknown keyword `{other}`"))),
            }
            if toks.next().is_some() {
                return Err(p.err("trailing tokens"));
            }
        }

        let top = LineParser { path, line_no: 0 };
        let field = field_override
            .or(field)
            .ok_or_else(|| top.err("missing `field` line"))?;
        let dim = dim.ok_or_else(|| top.err("missing `dim` line"))?;
        if dim == 0 {
            return Err(top.err("dim must be at least 1"));
        }
        if let Some(s) = &shape {
            if s.iter().product::<usize>() != dim {
                return Err(top.err("shape product does not equal dim"));
            }
        }
        Ok(AlgebraFile {
            field,
            dim,
            shape,
            mul,
            unit,
            comul,
            counit,
        })
    }

    pub fn space(&self) -> Space {
        match &self.shape {
            Some(s) => Space::new(s.clone()),
            None => Space::line(self.dim),
        }
    }

    pub fn to_algebra(&self) -> Result<Algebra, CliError> {
        let space = self.space();
        let d = self.dim;
        let mul_triplets = self
            .mul
            .iter()
            .map(|(i, j, k, v)| (*k, i * d + j, v.clone()));
        let mul = Matrix::from_triplets(d, d * d, self.field, mul_triplets)
            .map_err(|e| CliError::input(e.to_string()))?;
        let unit_triplets = self.unit.iter().map(|(k, v)| (*k, 0, v.clone()));
        let unit = Matrix::from_triplets(d, 1, self.field, unit_triplets)
            .map_err(|e| CliError::input(e.to_string()))?;
        let mul = LinMap::new(space.tensor(&space), space.clone(), mul)
            .map_err(|e| CliError::input(e.to_string()))?;
        let unit = LinMap::new(Space::scalar(), space.clone(), unit)
            .map_err(|e| CliError::input(e.to_string()))?;
        Algebra::new(space, mul, unit).map_err(|e| CliError::input(e.to_string()))
    }

    pub fn to_coalgebra(&self) -> Result<Coalgebra, CliError> {
        if self.comul.is_empty() || self.counit.is_empty() {
            return Err(CliError::input(
                "file has no comul/counit data but a coalgebra is required",
            ));
        }
        let space = self.space();
        let d = self.dim;
        let comul_triplets = self
            .comul
            .iter()
            .map(|(i, j, k, v)| (i * d + j, *k, v.clone()));
        let comul = Matrix::from_triplets(d * d, d, self.field, comul_triplets)
            .map_err(|e| CliError::input(e.to_string()))?;
        let counit_triplets = self.counit.iter().map(|(k, v)| (0, *k, v.clone()));
        let counit = Matrix::from_triplets(1, d, self.field, counit_triplets)
            .map_err(|e| CliError::input(e.to_string()))?;
        let comul = LinMap::new(space.clone(), space.tensor(&space), comul)
            .map_err(|e| CliError::input(e.to_string()))?;
        let counit = LinMap::new(space.clone(), Space::scalar(), counit)
            .map_err(|e| CliError::input(e.to_string()))?;
        Coalgebra::new(space, comul, counit).map_err(|e| CliError::input(e.to_string()))
    }

    pub fn to_weak_bialgebra(&self) -> Result<WeakBialgebra, CliError> {
        Ok(WeakBialgebra::new(self.to_algebra()?, self.to_coalgebra()?))
    }
}

/// Parsed sparse map file.
pub struct MapFile {
    pub field: FieldDesc,
    pub domain: Vec<usize>,
    pub codomain: Vec<usize>,
    pub entries: Vec<(usize, usize, Scalar)>,
}

impl MapFile {
    pub fn parse_file(path: &Path, field_override: Option<FieldDesc>) -> Result<MapFile, CliError> {
        let text = read_file(path)?;
        MapFile::parse(&text, &path.display().to_string(), field_override)
    }

    pub fn parse(
        text: &str,
        path: &str,
        field_override: Option<FieldDesc>,
    ) -> Result<MapFile, CliError> {
        let mut field: Option<FieldDesc> = None;
        let mut domain: Option<Vec<usize>> = None;
        let mut codomain: Option<Vec<usize>> = None;
        let mut entries = Vec::new();
        let mut seen = BTreeSet::new();
        for (line_no, raw) in text.lines().enumerate() {
            let p = LineParser {
                path,
                line_no: line_no + 1,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut toks = line.split_whitespace();
            match toks.next().unwrap() {
                "field" => {
                    field = Some(
                        toks.next()
                            .ok_or_else(|| p.err("missing field descriptor"))?
                            .parse()
                            .map_err(|e| p.err(format!("{e}")))?,
                    );
                }
                "domain" | "codomain" => {
                    let mut s = Vec::new();
                    for tok in toks.by_ref() {
                        s.push(tok.parse().map_err(|_| p.err("bad shape factor"))?);
                    }
                    if line.starts_with("domain") {
                        domain = Some(s);
                    } else {
                        codomain = Some(s);
                    }
                }
                "entry" => {
                    let cur_field = field_override
                        .or(field)
                        .ok_or_else(|| p.err("field line must come first"))?;
                    let r = p.index(toks.next(), "row")?;
                    let c = p.index(toks.next(), "col")?;
                    let v = p.scalar(toks.next(), cur_field)?;
                    if !seen.insert((r, c)) {
                        return Err(p.err(format!("duplicate entry ({r},{c})")));
                    }
                    if toks.next().is_some() {
                        return Err(p.err("trailing tokens"));
                    }
                    entries.push((r, c, v));
                }
                other => return Err(p.err(format!("unknown keyword `{other}`"))),
            }
        }
        let top = LineParser { path, line_no: 0 };
        Ok(MapFile {
            field: field_override
                .or(field)
                .ok_or_else(|| top.err("missing `field` line"))?,
            domain: domain.ok_or_else(|| top.err("missing `domain` line"))?,
            codomain: codomain.ok_or_else(|| top.err("missing `codomain` line"))?,
            entries,
        })
    }

    pub fn to_linmap(&self) -> Result<LinMap, CliError> {
        let domain = Space::new(self.domain.clone());
        let codomain = Space::new(self.codomain.clone());
        let m = Matrix::from_triplets(
            codomain.dim(),
            domain.dim(),
            self.field,
            self.entries.iter().map(|(r, c, v)| (*r, *c, v.clone())),
        )
        .map_err(|e| CliError::input(e.to_string()))?;
        LinMap::new(domain, codomain, m).map_err(|e| CliError::input(e.to_string()))
    }
}

/// The built-in example zoo.
pub const BUILTIN_NAMES: &[&str] = &["f", "z2", "z3", "s3", "m1", "m2", "m3"];

pub fn builtin_bialgebra(name: &str, field: FieldDesc) -> Result<WeakBialgebra, CliError> {
    match name {
        "f" | "trivial" => group_algebra(&cyclic_group_table(1), field),
        "z2" => group_algebra(&cyclic_group_table(2), field),
        "z3" => group_algebra(&cyclic_group_table(3), field),
        "s3" => group_algebra(&symmetric3_table(), field),
        "m1" => return Ok(pair_groupoid_algebra(1, field)),
        "m2" => return Ok(pair_groupoid_algebra(2, field)),
        "m3" => return Ok(pair_groupoid_algebra(3, field)),
        other => {
            return Err(CliError::input(format!(
                "unknown builtin `{other}` (available: {})",
                BUILTIN_NAMES.join(", ")
            )))
        }
    }
    .map_err(|e| CliError::input(e.to_string()))
}

enum MonadRef {
    Path(PathBuf),
    Builtin { name: String, dual: bool },
}

enum LawRef {
    Flip,
    Path(PathBuf),
    Builtin { name: String, hat: bool },
}

/// Parsed chain manifest: monads and laws by reference.
pub struct ChainManifest {
    field: FieldDesc,
    monads: Vec<MonadRef>,
    laws: BTreeMap<(usize, usize), LawRef>,
    base_dir: PathBuf,
}

impl ChainManifest {
    pub fn parse_file(
        path: &Path,
        field_override: Option<FieldDesc>,
    ) -> Result<ChainManifest, CliError> {
        let text = read_file(path)?;
        let base_dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
        ChainManifest::parse(&text, &path.display().to_string(), base_dir, field_override)
    }

    pub fn parse(
        text: &str,
        path: &str,
        base_dir: PathBuf,
        field_override: Option<FieldDesc>,
    ) -> Result<ChainManifest, CliError> {
        let mut field: Option<FieldDesc> = None;
        let mut monads = Vec::new();
        let mut laws = BTreeMap::new();
        for (line_no, raw) in text.lines().enumerate() {
            let p = LineParser {
                path,
                line_no: line_no + 1,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut toks = line.split_whitespace();
            match toks.next().unwrap() {
                "field" => {
                    field = Some(
                        toks.next()
                            .ok_or_else(|| p.err("missing field descriptor"))?
                            .parse()
                            .map_err(|e| p.err(format!("{e}")))?,
                    );
                }
                "monad" => {
                    let spec = toks.next().ok_or_else(|| p.err("missing monad ref"))?;
                    let mref = if let Some(b) = spec.strip_prefix("builtin:") {
                        let (name, dual) = match b.strip_suffix(".dual") {
                            Some(n) => (n, true),
                            None => (b, false),
                        };
                        MonadRef::Builtin {
                            name: name.to_string(),
                            dual,
                        }
                    } else {
                        MonadRef::Path(PathBuf::from(spec))
                    };
                    monads.push(mref);
                }
                "law" => {
                    let i = p.index(toks.next(), "index i")?;
                    let j = p.index(toks.next(), "index j")?;
                    if i >= j {
                        return Err(p.err("law indices must satisfy i < j"));
                    }
                    let spec = toks.next().ok_or_else(|| p.err("missing law ref"))?;
                    let lref = if spec == "flip" {
                        LawRef::Flip
                    } else if let Some(b) = spec.strip_prefix("builtin:") {
                        let (name, hat) = if let Some(n) = b.strip_suffix(".lambdahat") {
                            (n, true)
                        } else if let Some(n) = b.strip_suffix(".lambda") {
                            (n, false)
                        } else {
                            return Err(p.err("builtin law must end in .lambda or .lambdahat"));
                        };
                        LawRef::Builtin {
                            name: name.to_string(),
                            hat,
                        }
                    } else {
                        LawRef::Path(PathBuf::from(spec))
                    };
                    if laws.insert((i, j), lref).is_some() {
                        return Err(p.err(format!("duplicate law ({i},{j})")));
                    }
                }
                other => return Err(p.err(format!("unknown keyword `{other}`"))),
            }
        }
        let top = LineParser { path, line_no: 0 };
        Ok(ChainManifest {
            field: field_override
                .or(field)
                .ok_or_else(|| top.err("missing `field` line"))?,
            monads,
            laws,
            base_dir,
        })
    }

    /// Resolves monad and law references into a full object.
    pub fn to_object(&self) -> Result<WdlNObject, CliError> {
        let mut monads = Vec::new();
        for mref in &self.monads {
            let algebra = match mref {
                MonadRef::Path(p) => {
                    let full = self.base_dir.join(p);
                    AlgebraFile::parse_file(&full, Some(self.field))?.to_algebra()?
                }
                MonadRef::Builtin { name, dual: false } => {
                    builtin_bialgebra(name, self.field)?.algebra().clone()
                }
                MonadRef::Builtin { name, dual: true } => {
                    let h = builtin_bialgebra(name, self.field)?;
                    dual(&h)
                        .map_err(|e| CliError::input(e.to_string()))?
                        .hat
                        .algebra()
                        .clone()
                }
            };
            monads.push(Demimonad::from_algebra(&algebra));
        }
        if monads.is_empty() {
            return Err(CliError::input("manifest declares no monads"));
        }
        let mut laws = BTreeMap::new();
        for i in 0..monads.len() {
            for j in i + 1..monads.len() {
                let lref = self
                    .laws
                    .get(&(i, j))
                    .ok_or_else(|| CliError::input(format!("manifest misses law ({i},{j})")))?;
                let law = match lref {
                    LawRef::Flip => LinMap::flip(monads[j].space(), monads[i].space(), self.field),
                    LawRef::Path(p) => {
                        let full = self.base_dir.join(p);
                        MapFile::parse_file(&full, Some(self.field))?.to_linmap()?
                    }
                    LawRef::Builtin { name, hat } => {
                        let h = builtin_bialgebra(name, self.field)?;
                        let pair = dual(&h).map_err(|e| CliError::input(e.to_string()))?;
                        if *hat {
                            canonical_lambda_hat(&pair)
                        } else {
                            canonical_lambda(&pair)
                        }
                    }
                };
                laws.insert((i, j), law);
            }
        }
        WdlNObject::new(monads, laws).map_err(|e| CliError::input(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_minimal_algebra_file() {
        let text =
            "field rational\ndim 2\nmul 0 0 0 1\nmul 0 1 1 1\nmul 1 0 1 1\nmul 1 1 0 1\nunit 0 1\n";
        let file = AlgebraFile::parse(text, "test.alg", None).unwrap();
        let alg = file.to_algebra().unwrap();
        assert!(weakwreath::algebra::check_algebra(&alg).passed());
    }

    #[test]
    fn rejects_duplicate_triples() {
        let text = "field rational\ndim 2\nmul 0 0 0 1\nmul 0 0 0 1\n";
        let err = AlgebraFile::parse(text, "test.alg", None).unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 4, .. }));
    }

    #[test]
    fn rejects_out_of_range_indices() {
        let text = "field rational\ndim 2\nmul 0 2 0 1\n";
        assert!(AlgebraFile::parse(text, "test.alg", None).is_err());
    }

    #[test]
    fn rejects_unparsable_values() {
        let text = "field rational\ndim 2\nmul 0 0 0 0.5\n";
        assert!(AlgebraFile::parse(text, "test.alg", None).is_err());
    }

    #[test]
    fn field_override_reinterprets_values() {
        let text = "field rational\ndim 1\nmul 0 0 0 1/2\nunit 0 1\n";
        let file = AlgebraFile::parse(text, "t", Some(FieldDesc::Prime(7))).unwrap();
        assert_eq!(file.field, FieldDesc::Prime(7));
        assert_eq!(file.mul[0].3, Scalar::from_integer(FieldDesc::Prime(7), 4));
    }

    #[test]
    fn builtins_resolve() {
        for name in BUILTIN_NAMES {
            assert!(builtin_bialgebra(name, FieldDesc::Rational).is_ok());
        }
        assert!(builtin_bialgebra("nope", FieldDesc::Rational).is_err());
    }
}
