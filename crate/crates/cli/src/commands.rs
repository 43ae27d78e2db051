//! Implementations of the CLI subcommands. Each returns a [`Report`];
//! input-side problems surface as [`CliError`] instead.

use crate::format::{builtin_bialgebra, AlgebraFile, ChainManifest, MapFile, BUILTIN_NAMES};
use crate::report::Report;
use crate::CliError;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use weakwreath::algebra::{
    check_algebra, check_coalgebra, check_demimonad, split_demimonad, Demimonad,
};
use weakwreath::bialgebra::check_weak_bialgebra;
use weakwreath::field::FieldDesc;
use weakwreath::oracle::observable_dimension_oracle;
use weakwreath::spinchain::{
    build_spin_chain, explicit_chain_idempotent, observable_algebra, SiteParity, SpinChainSpec,
};
use weakwreath::wdl::{
    binary_factorize, check_wdl, lambda_bar, weak_wreath, WdlError, WeakDistributiveLaw,
};
use weakwreath::wdln::{
    build_cube, check_associativity, functor_ck, iterated_wreath, nary_factorization_check,
    validate_object, verify_cube, FactorizationData,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Algebra,
    Coalgebra,
    Demimonad,
    WeakBialgebra,
}

impl std::str::FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "algebra" => Ok(CheckKind::Algebra),
            "coalgebra" => Ok(CheckKind::Coalgebra),
            "demimonad" => Ok(CheckKind::Demimonad),
            "weak-bialgebra" => Ok(CheckKind::WeakBialgebra),
            other => Err(format!(
                "unknown kind `{other}` (algebra|coalgebra|demimonad|weak-bialgebra)"
            )),
        }
    }
}

impl std::fmt::Display for CheckKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            CheckKind::Algebra => "algebra",
            CheckKind::Coalgebra => "coalgebra",
            CheckKind::Demimonad => "demimonad",
            CheckKind::WeakBialgebra => "weak-bialgebra",
        };
        write!(f, "{name}")
    }
}

fn field_name(field: FieldDesc) -> String {
    field.to_string()
}

/// `check`: run the axiom checker matching `kind` on a structure file.
pub fn cmd_check(
    path: &Path,
    kind: CheckKind,
    field_override: Option<FieldDesc>,
) -> Result<Report, CliError> {
    let file = AlgebraFile::parse_file(path, field_override)?;
    let mut report = Report::new(
        format!("check --kind {kind} {}", path.display()),
        field_name(file.field),
    );
    report.set_value("dim", file.dim.to_string());
    match kind {
        CheckKind::Algebra => {
            let alg = file.to_algebra()?;
            report.absorb("algebra", &check_algebra(&alg));
        }
        CheckKind::Coalgebra => {
            let coalg = file.to_coalgebra()?;
            report.absorb("coalgebra", &check_coalgebra(&coalg));
        }
        CheckKind::Demimonad => {
            let alg = file.to_algebra()?;
            let demi = Demimonad::from_algebra(&alg);
            report.absorb("demimonad", &check_demimonad(&demi));
        }
        CheckKind::WeakBialgebra => {
            let h = file.to_weak_bialgebra()?;
            let result = check_weak_bialgebra(&h);
            report.absorb("weak_bialgebra", &result.report);
            report.set_value("strict_unit", result.strict_unit.to_string());
            report.set_value("strict_counit", result.strict_counit.to_string());
            report.set_value("strict", result.strict().to_string());
        }
    }
    Ok(report)
}

/// `wdl`: check a law file against two algebra files and report rank(λ̄).
pub fn cmd_wdl(
    t_path: &Path,
    s_path: &Path,
    lambda_path: &Path,
    field_override: Option<FieldDesc>,
) -> Result<Report, CliError> {
    let t_file = AlgebraFile::parse_file(t_path, field_override)?;
    let field = Some(t_file.field);
    let t = t_file.to_algebra()?;
    let s = AlgebraFile::parse_file(s_path, field)?.to_algebra()?;
    let lambda = MapFile::parse_file(lambda_path, field)?.to_linmap()?;
    let law = WeakDistributiveLaw::from_algebras(&t, &s, lambda)
        .map_err(|e| CliError::input(e.to_string()))?;

    let mut report = Report::new(
        format!(
            "wdl {} {} {}",
            t_path.display(),
            s_path.display(),
            lambda_path.display()
        ),
        field_name(t_file.field),
    );
    report.set_value("dim_t", t.dim().to_string());
    report.set_value("dim_s", s.dim().to_string());
    report.absorb("t", &check_algebra(&t));
    report.absorb("s", &check_algebra(&s));
    report.absorb("law", &check_wdl(&law));
    if let Ok(bar) = lambda_bar(&law) {
        report.set_value("lambda_bar_rank", bar.matrix().rank().to_string());
        let strict = bar.same_map(&weakwreath::linmap::LinMap::identity(
            bar.domain(),
            law.field(),
        ));
        report.set_value("strict", strict.to_string());
    }
    Ok(report)
}

/// `wreath`: iterated weak wreath product of a manifest object, optionally
/// verifying that one or every fusion order gives the same result.
pub fn cmd_wreath(
    manifest: &Path,
    order: Option<&[usize]>,
    all_orders: bool,
    field_override: Option<FieldDesc>,
) -> Result<Report, CliError> {
    let object = ChainManifest::parse_file(manifest, field_override)?.to_object()?;
    let mut report = Report::new(
        format!("wreath {}", manifest.display()),
        field_name(object.field()),
    );
    report.set_value("monads", object.monad_count().to_string());
    report.set_value("total_dim", object.total_space().dim().to_string());
    let validation = validate_object(&object);
    report.absorb_summary("object_valid", &validation);
    if !validation.passed() {
        return Ok(report);
    }

    let wreath = iterated_wreath(&object).map_err(|e| CliError::input(e.to_string()))?;
    report.set_value("idempotent_rank", wreath.idem().matrix().rank().to_string());
    let (alg, _, _) = split_demimonad(&wreath).map_err(|e| CliError::input(e.to_string()))?;
    report.set_value("wreath_split_dim", alg.dim().to_string());

    if let Some(order) = order {
        let mut cur = object.clone();
        for &k in order {
            cur = functor_ck(&cur, k).map_err(|e| CliError::input(e.to_string()))?;
        }
        if cur.monad_count() != 1 {
            return Err(CliError::input(format!(
                "order {:?} leaves {} monads unfused",
                order,
                cur.monad_count()
            )));
        }
        let result = &cur.monads()[0];
        report.push_check(
            "order_mul_matches",
            result.mul().same_map(wreath.mul()),
            None,
        );
        report.push_check(
            "order_unit_matches",
            result.unit().same_map(wreath.unit()),
            None,
        );
    }
    if all_orders {
        let assoc = check_associativity(&object).map_err(|e| CliError::input(e.to_string()))?;
        report.absorb("associativity", &assoc);
        let composites = assoc.items().len() / 3;
        report.push_check(
            format!("all {composites} composites identical"),
            assoc.passed(),
            None,
        );
        report.set_value("composites_checked", composites.to_string());
    }
    Ok(report)
}

/// Source of the chain bialgebra: a builtin name or a structure file.
pub fn resolve_bialgebra_source(
    source: &str,
    field: FieldDesc,
) -> Result<(weakwreath::bialgebra::WeakBialgebra, Option<String>), CliError> {
    if BUILTIN_NAMES.contains(&source) || source == "trivial" {
        Ok((builtin_bialgebra(source, field)?, Some(source.to_string())))
    } else {
        let file = AlgebraFile::parse_file(Path::new(source), Some(field))?;
        Ok((file.to_weak_bialgebra()?, None))
    }
}

pub struct SpinChainArgs {
    pub source: String,
    pub sites: usize,
    pub dual_even_sites: bool,
    pub cube: bool,
    pub factorization_check: bool,
    pub golden: PathBuf,
    pub regen_golden: bool,
    pub field: Option<FieldDesc>,
}

/// The builtin chains whose dimensions are pinned by the golden table.
const GOLDEN_CHAINS: &[(&str, usize)] = &[("m2", 1), ("m2", 2), ("m2", 3), ("m3", 1)];

pub fn load_golden(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut map = BTreeMap::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((k, v)) = line.split_once(' ') {
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
    }
    Ok(map)
}

fn write_golden(path: &Path, entries: &BTreeMap<String, String>) -> Result<(), CliError> {
    let mut text = String::from(
        "# golden observable-algebra dimensions, computed by the independent\n\
         # rank oracle; regenerate with: weakwreath spinchain m2 -n 1 --regen-golden\n",
    );
    for (k, v) in entries {
        text.push_str(&format!("{k} {v}\n"));
    }
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// `spinchain`: build and validate the alternating chain, compute the
/// observable algebra, compare the explicit idempotent against the general
/// one, and optionally verify the cube and factorization conditions.
pub fn cmd_spinchain(args: &SpinChainArgs) -> Result<Report, CliError> {
    let field = args.field.unwrap_or(FieldDesc::Rational);
    if args.regen_golden {
        let mut entries = BTreeMap::new();
        for &(name, n) in GOLDEN_CHAINS {
            let (h, _) = resolve_bialgebra_source(name, field)?;
            let dim = observable_dimension_oracle(&h, n, SiteParity::default())
                .map_err(|e| CliError::input(e.to_string()))?;
            entries.insert(format!("{name}_n{n}_observable_dim"), dim.to_string());
        }
        write_golden(&args.golden, &entries)?;
        let mut report = Report::new(
            format!("spinchain --regen-golden {}", args.golden.display()),
            field_name(field),
        );
        for (k, v) in entries {
            report.set_value(k, v);
        }
        return Ok(report);
    }

    let (h, builtin_name) = resolve_bialgebra_source(&args.source, field)?;
    let parity = if args.dual_even_sites {
        SiteParity::EvenCarriesDual
    } else {
        SiteParity::EvenCarriesAlgebra
    };
    let spec = SpinChainSpec::new(h.clone(), args.sites).with_parity(parity);
    let mut report = Report::new(
        format!("spinchain {} -n {}", args.source, args.sites),
        field_name(field),
    );
    report.set_value("convention", parity.describe().to_string());
    report.set_value("site_dim", h.dim().to_string());

    let chain = build_spin_chain(&spec).map_err(|e| CliError::input(e.to_string()))?;
    report.set_value("total_dim", chain.total_space().dim().to_string());
    let validation = validate_object(&chain);
    report.absorb_summary("chain_valid", &validation);
    if !validation.passed() {
        report.absorb("chain", &validation);
        return Ok(report);
    }

    let (_, dim) = observable_algebra(&spec).map_err(|e| CliError::input(e.to_string()))?;
    report.set_value("observable_dim", dim.to_string());
    match explicit_chain_idempotent(&spec) {
        Ok(_) => report.push_check("explicit_idempotent_matches_general", true, None),
        Err(e) => report.push_check(
            "explicit_idempotent_matches_general",
            false,
            Some(e.to_string()),
        ),
    }

    if let Some(name) = &builtin_name {
        let key = format!("{name}_n{}_observable_dim", args.sites);
        match load_golden(&args.golden) {
            Ok(golden) => match golden.get(&key) {
                Some(expected) => {
                    report.push_check(
                        "matches_golden",
                        expected == &dim.to_string(),
                        Some(format!("golden={expected} computed={dim}")),
                    );
                }
                None => report.set_value("golden", format!("no entry for {key}")),
            },
            Err(_) => report.set_value("golden", "table not found".to_string()),
        }
    }

    if args.cube || args.factorization_check {
        let cube = build_cube(&chain).map_err(|e| CliError::input(e.to_string()))?;
        if args.cube {
            let verification = verify_cube(&cube);
            report.absorb("cube", &verification);
            let faces: Vec<_> = verification
                .items()
                .iter()
                .filter(|i| i.name.starts_with("face["))
                .collect();
            let face_pass = faces.iter().filter(|i| i.pass).count();
            report.set_value("cube_faces", format!("{face_pass}/{} commute", faces.len()));
            let mut edge_tags: BTreeMap<String, bool> = BTreeMap::new();
            for item in verification.items() {
                if let Some(rest) = item.name.strip_prefix("edge[") {
                    if let Some(tag) = rest.split(']').next() {
                        let entry = edge_tags.entry(tag.to_string()).or_insert(true);
                        *entry &= item.pass;
                    }
                }
            }
            let edge_pass = edge_tags.values().filter(|&&p| p).count();
            report.set_value(
                "cube_edges",
                format!("{edge_pass}/{} monad morphisms", edge_tags.len()),
            );
        }
        if args.factorization_check {
            let data = FactorizationData::canonical(cube);
            let fact = nary_factorization_check(&data);
            report.absorb("factorization", &fact);
        }
    }
    Ok(report)
}

/// `factorize`: binary factorization round trip on a law given by files:
/// wreath the law, take the canonical projections and section, rebuild the
/// law and compare.
pub fn cmd_factorize(
    t_path: &Path,
    s_path: &Path,
    lambda_path: &Path,
    field_override: Option<FieldDesc>,
) -> Result<Report, CliError> {
    let t_file = AlgebraFile::parse_file(t_path, field_override)?;
    let field = Some(t_file.field);
    let t = t_file.to_algebra()?;
    let s = AlgebraFile::parse_file(s_path, field)?.to_algebra()?;
    let lambda = MapFile::parse_file(lambda_path, field)?.to_linmap()?;
    let law = WeakDistributiveLaw::from_algebras(&t, &s, lambda)
        .map_err(|e| CliError::input(e.to_string()))?;

    let mut report = Report::new(
        format!(
            "factorize {} {} {}",
            t_path.display(),
            s_path.display(),
            lambda_path.display()
        ),
        field_name(t_file.field),
    );
    let validation = check_wdl(&law);
    report.absorb_summary("law_valid", &validation);
    if !validation.passed() {
        return Ok(report);
    }
    let (wreath, proj_t, proj_s) = weak_wreath(&law).map_err(|e| CliError::input(e.to_string()))?;
    let iota = lambda_bar(&law).map_err(|e| CliError::input(e.to_string()))?;
    report.set_value("wreath_idempotent_rank", iota.matrix().rank().to_string());
    match binary_factorize(law.t(), law.s(), &wreath, proj_t.xi(), proj_s.xi(), &iota) {
        Ok(rebuilt) => {
            report.push_check(
                "recovered_law_equals_input",
                rebuilt.lambda().same_map(law.lambda()),
                None,
            );
        }
        Err(WdlError::PreconditionFailure {
            condition,
            report: inner,
        }) => {
            report.absorb(&format!("precondition_{condition}"), &inner);
        }
        Err(WdlError::InvalidLaw(inner)) => {
            report.absorb("postcondition", &inner);
        }
        Err(e) => return Err(CliError::input(e.to_string())),
    }
    Ok(report)
}
