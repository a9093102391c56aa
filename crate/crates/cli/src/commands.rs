use std::io::Read;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use s1deg_core::abelian::{canonicalize_group, smith_normal_form, solve_scalar, FgAbelianGroup, ScalarSolutionSet};
use s1deg_core::bundles::presets;
use s1deg_core::bundles::{
    degree_bound, fiber_preserving_degree_set, finiteness_verdict, promote_to_full_degree_set,
    same_base_pair_degree_set, vertical_degree_set, Bound, FinitenessExtra, MapCatalogue, MapModel, Verdict,
    VerticalCase,
};
use s1deg_core::degsets::{decompose, subsequence_sums, SearchLimits, SequenceB, DEFAULT_LENGTH_CAP};
use s1deg_core::realize::{build_construction, stabilize, verify_certificate, RealizationCertificate};

use crate::error::{exit, CliError, CliResult, FieldError};
use crate::json::{self as j, field, opt_field};
use crate::registry::Registry;
use crate::{render, selftest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Mapping degree sets of circle bundles and realization certificates.
#[derive(Debug, Parser)]
#[command(name = "s1deg", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Indent JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Preset registry file; defaults to the S1DEG_PRESETS environment variable.
    #[arg(long, global = true)]
    pub registry: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Payload {
    /// JSON payload file, `-` for standard input.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Inline JSON payload.
    #[arg(long)]
    pub payload: Option<String>,
}

#[derive(Debug, Args)]
pub struct Caps {
    /// Longest sequence the decomposition search may use.
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Largest entry magnitude the decomposition search may use.
    #[arg(long)]
    pub max_entry: Option<u64>,
    /// Candidate budget shared by the whole decomposition search.
    #[arg(long, default_value_t = SearchLimits::default().budget)]
    pub budget: u64,
}

impl Caps {
    fn limits(&self) -> SearchLimits {
        SearchLimits { max_len: self.max_len, max_entry: self.max_entry, budget: self.budget }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smith normal form of {"matrix": rows}.
    Snf(Payload),
    /// Canonical group presented by {"relations": rows}.
    Group(Payload),
    /// Solve k·a = c for {"group", "a", "c"}.
    SolveK(Payload),
    /// Subsequence sums of a sequence.
    Sums {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        seq: Option<Vec<i64>>,
        #[command(flatten)]
        payload: Payload,
    },
    /// Write a finite set containing 0 as an intersection of subsequence-sum sets.
    Decompose {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        set: Vec<i64>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Vertical-map degrees for {"group", "a", "b"}.
    Dv(Payload),
    /// Fiber-preserving degrees for a declared map catalogue.
    Dfp(Payload),
    /// Degree set of a same-base bundle pair.
    Pair {
        #[arg(long, allow_hyphen_values = true)]
        m: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        k: BigInt,
        #[arg(long, default_value = presets::KNOT_GLUING_3)]
        preset: String,
        #[arg(long, default_value = presets::CLASS)]
        class: String,
    },
    /// Degree bound from simplicial volumes.
    Bound {
        /// Domain volume: integer, decimal or p/q.
        #[arg(long)]
        domain_volume: Option<String>,
        #[arg(long)]
        target_volume: Option<String>,
        /// Take the domain volume from this preset.
        #[arg(long)]
        domain: Option<String>,
        #[arg(long)]
        target: Option<String>,
    },
    /// Finiteness verdict for {"domain", "target", "dBaseFinite", "pullbackClassSetFinite"}.
    Finite(Payload),
    /// Build a realization certificate.
    Realize {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        set: Vec<i64>,
        #[arg(long, default_value_t = 4)]
        dim: u32,
        /// Base preset; defaults by dimension.
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, default_value = presets::CLASS)]
        class: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// Verify a realization certificate.
    Verify(Payload),
    /// Move a certificate to a higher dimension.
    Stabilize {
        #[arg(long)]
        dim: u32,
        #[command(flatten)]
        payload: Payload,
    },
    /// Run the brute-force oracle suites.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// A command result: JSON, its text rendering and the exit status.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: Value,
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(json: Value, text: impl Into<String>) -> Self {
        Self { json, text: text.into(), code: exit::OK }
    }

    pub fn render(&self, format: Format, pretty: bool) -> String {
        match format {
            Format::Text => {
                let mut t = self.text.clone();
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                t
            }
            Format::Json if pretty => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("serializable")),
            Format::Json => format!("{}\n", self.json),
        }
    }
}

fn read_payload(p: &Payload) -> CliResult<Value> {
    let text = match (&p.input, &p.payload) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give either --in or --payload, not both".into())),
        (None, Some(s)) => s.clone(),
        (Some(path), None) if path.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io { path: "<stdin>".into(), message: e.to_string() })?;
            s
        }
        (Some(path), None) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?,
        (None, None) => return Err(CliError::Usage("this command needs --in <file> or --payload <json>".into())),
    };
    Ok(j::parse(&text)?)
}

/// `{"key": x}` or a bare `x`.
fn unwrap_key<'a>(v: &'a Value, key: &str) -> (&'a Value, String) {
    match v.get(key) {
        Some(inner) if v.is_object() => (inner, format!("/{key}")),
        _ => (v, String::new()),
    }
}

pub fn execute(cli: &Cli) -> CliResult<Output> {
    let registry = Registry::load(cli.registry.as_deref())?;
    match &cli.command {
        Command::Snf(p) => snf(&read_payload(p)?),
        Command::Group(p) => group(&read_payload(p)?),
        Command::SolveK(p) => solve_k(&read_payload(p)?),
        Command::Sums { seq, payload } => sums(seq.as_deref(), payload),
        Command::Decompose { set, caps } => {
            let c = decompose(set, &caps.limits())?;
            Ok(Output::ok(j::decomposition(&c), render::decomposition(&c)))
        }
        Command::Dv(p) => dv(&read_payload(p)?),
        Command::Dfp(p) => dfp(&read_payload(p)?, &registry),
        Command::Pair { m, k, preset, class } => {
            let base = registry.require(preset)?;
            let r = same_base_pair_degree_set(m, k, &base, class)?;
            let mut v = j::degree_set(&r.set);
            if r.bound == Bound::UpperBound {
                v["upperBoundOnly"] = Value::Bool(true);
            }
            let tag = if r.bound == Bound::UpperBound { " (upper bound)" } else { "" };
            Ok(Output::ok(v, format!("D = {}{tag} [{}]", render::degree_set(&r.set), r.rule.tag())))
        }
        Command::Bound { domain_volume, target_volume, domain, target } => {
            let vol = |explicit: &Option<String>, preset: &Option<String>, flag: &str| -> CliResult<Option<_>> {
                match (explicit, preset) {
                    (Some(_), Some(_)) => Err(CliError::Usage(format!("give either --{flag}-volume or --{flag}"))),
                    (Some(q), None) => {
                        Ok(Some(j::decode_volume(&Value::String(q.clone()), &format!("--{flag}-volume"))?))
                    }
                    (None, Some(name)) => Ok(registry.require(name)?.simplicial_volume().cloned()),
                    (None, None) => Ok(None),
                }
            };
            let d = vol(domain_volume, domain, "domain")?;
            let t = vol(target_volume, target, "target")?;
            let b = degree_bound(d.as_ref(), t.as_ref())?;
            Ok(Output::ok(json!({ "bound": j::big(&b) }), format!("|deg| <= {b}")))
        }
        Command::Finite(p) => finite(&read_payload(p)?, &registry),
        Command::Realize { set, dim, preset, class, caps } => {
            let base = match preset {
                Some(name) => registry.require(name)?,
                None => {
                    let name = presets::default_for_dimension(*dim)
                        .ok_or_else(|| CliError::Usage(format!("no realization in dimension {dim}; need at least 3")))?
                        .name()
                        .to_string();
                    registry.require(&name)?
                }
            };
            let cert = build_construction(set, *dim, base, class, &caps.limits())?;
            Ok(Output::ok(j::certificate(&cert), render::certificate(&cert)))
        }
        Command::Verify(p) => {
            let cert = j::decode_certificate(&read_payload(p)?)?;
            Ok(verify(&cert))
        }
        Command::Stabilize { dim, payload } => {
            let cert = j::decode_certificate(&read_payload(payload)?)?;
            let out = stabilize(&cert, *dim)?;
            Ok(Output::ok(j::certificate(&out), render::certificate(&out)))
        }
        Command::Selftest { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let suites = selftest::quick(&mut rng);
            let passed = suites.iter().all(selftest::SuiteResult::passed);
            let text = suites
                .iter()
                .map(|s| format!("{} {} ({} cases)", if s.passed() { "PASS" } else { "FAIL" }, s.name, s.cases))
                .collect::<Vec<_>>()
                .join("\n");
            let v = json!({ "passed": passed, "seed": seed, "suites": suites.iter().map(|s| s.to_json()).collect::<Vec<_>>() });
            Ok(Output { json: v, text, code: if passed { exit::OK } else { exit::VERIFICATION } })
        }
    }
}

pub fn verify(cert: &RealizationCertificate) -> Output {
    let report = verify_certificate(cert);
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|f| json!({ "check": f.kind.as_str(), "locator": f.locator, "detail": f.detail }))
        .collect();
    let v = json!({ "valid": report.passed(), "failures": failures });
    let code = if report.passed() { exit::OK } else { exit::VERIFICATION };
    Output { json: v, text: render::report(&report), code }
}

fn snf(v: &Value) -> CliResult<Output> {
    let (m, ptr) = unwrap_key(v, "matrix");
    let m = j::decode_matrix(m, &ptr)?;
    let s = smith_normal_form(&m);
    let inv: Vec<BigInt> = s.invariants();
    let text = format!("invariants: {}", inv.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    let out = json!({
        "left": j::matrix(&s.left),
        "diagonal": j::matrix(&s.diagonal),
        "right": j::matrix(&s.right),
        "invariants": inv.iter().map(j::big).collect::<Vec<_>>(),
    });
    Ok(Output::ok(out, text))
}

fn group(v: &Value) -> CliResult<Output> {
    let (m, ptr) = unwrap_key(v, "relations");
    let g = canonicalize_group(&j::decode_matrix(m, &ptr)?);
    Ok(Output::ok(j::group(&g), g.to_string()))
}

fn group_and_elements(
    v: &Value,
    names: [&str; 2],
) -> CliResult<(FgAbelianGroup, [s1deg_core::abelian::GroupElement; 2])> {
    let g = j::decode_group(field(v, "", "group")?, "/group")?;
    let a = j::decode_element(field(v, "", names[0])?, &format!("/{}", names[0]), &g)?;
    let b = j::decode_element(field(v, "", names[1])?, &format!("/{}", names[1]), &g)?;
    Ok((g, [a, b]))
}

fn solutions_json(s: &ScalarSolutionSet) -> Value {
    match s {
        ScalarSolutionSet::Empty => Value::Null,
        ScalarSolutionSet::Progression { base, modulus } => json!({ "base": j::big(base), "mod": j::big(modulus) }),
    }
}

fn solutions_text(s: &ScalarSolutionSet) -> String {
    match s {
        ScalarSolutionSet::Empty => "no k".into(),
        ScalarSolutionSet::Progression { base, modulus } if modulus == &BigInt::from(0) => format!("k = {base}"),
        ScalarSolutionSet::Progression { base, modulus } => format!("k = {base} mod {modulus}"),
    }
}

fn solve_k(v: &Value) -> CliResult<Output> {
    let (_, [a, c]) = group_and_elements(v, ["a", "c"])?;
    let s = solve_scalar(&a, &c)?;
    Ok(Output::ok(json!({ "solutions": solutions_json(&s) }), solutions_text(&s)))
}

fn sums(seq: Option<&[i64]>, payload: &Payload) -> CliResult<Output> {
    let entries = match seq {
        Some(s) => {
            if payload.input.is_some() || payload.payload.is_some() {
                return Err(CliError::Usage("give either --seq or a payload".into()));
            }
            s.to_vec()
        }
        None => {
            let v = read_payload(payload)?;
            let (s, ptr) = unwrap_key(&v, "sequence");
            j::array(s, &ptr)?
                .iter()
                .enumerate()
                .map(|(i, x)| j::decode_i64(x, &format!("{ptr}/{i}")))
                .collect::<Result<_, _>>()?
        }
    };
    let b = SequenceB::new(entries)?;
    let d = subsequence_sums(&b, DEFAULT_LENGTH_CAP)?;
    Ok(Output::ok(j::degree_set(&d), render::degree_set(&d)))
}

fn case_name(c: VerticalCase) -> &'static str {
    match c {
        VerticalCase::NotInSubgroup => "not-in-subgroup",
        VerticalCase::TorsionProgression => "torsion-progression",
        VerticalCase::Single => "single",
        VerticalCase::ZeroMultiplierOnly => "zero-multiplier-only",
    }
}

fn dv(v: &Value) -> CliResult<Output> {
    let (_, [a, b]) = group_and_elements(v, ["a", "b"])?;
    let r = vertical_degree_set(&a, &b)?;
    let out = json!({
        "set": j::degree_set(&r.set),
        "case": case_name(r.case),
        "infinite": !r.set.is_finite(),
        "zeroUndetermined": r.zero_undetermined,
    });
    let text = format!("D_V = {} ({}; whether 0 occurs is not decided)", render::degree_set(&r.set), case_name(r.case));
    Ok(Output::ok(out, text))
}

fn dfp(v: &Value, registry: &Registry) -> CliResult<Output> {
    let domain_base = opt_field(v, "", "domainBase")?.map(|x| j::string(x, "/domainBase")).transpose()?;
    let target_base = opt_field(v, "", "targetBase")?.map(|x| j::string(x, "/targetBase")).transpose()?;
    let lookup = |name: Option<&str>, ptr: &str| -> CliResult<Option<Arc<_>>> {
        name.map(|n| registry.get(n).ok_or_else(|| FieldError::new(ptr, format!("unknown preset `{n}`")).into()))
            .transpose()
    };
    let domain_base = lookup(domain_base, "/domainBase")?;
    let target_base = lookup(target_base, "/targetBase")?;
    let g_m = match &domain_base {
        Some(b) => b.h2().clone(),
        None => j::decode_group(field(v, "", "domainGroup")?, "/domainGroup")?,
    };
    let g_n = match &target_base {
        Some(b) => b.h2().clone(),
        None => j::decode_group(field(v, "", "targetGroup")?, "/targetGroup")?,
    };
    let a = j::decode_element(field(v, "", "a")?, "/a", &g_m)?;
    let b = j::decode_element(field(v, "", "b")?, "/b", &g_n)?;
    let cv = field(v, "", "catalogue")?;
    let mut maps = Vec::new();
    for (i, m) in j::array(field(cv, "/catalogue", "maps")?, "/catalogue/maps")?.iter().enumerate() {
        let ptr = format!("/catalogue/maps/{i}");
        maps.push(MapModel {
            degree: j::decode_big(field(m, &ptr, "degree")?, &format!("{ptr}/degree"))?,
            action: j::decode_matrix(field(m, &ptr, "action")?, &format!("{ptr}/action"))?,
        });
    }
    let complete = match opt_field(cv, "/catalogue", "complete")? {
        Some(c) => j::boolean(c, "/catalogue/complete")?,
        None => false,
    };
    let r = fiber_preserving_degree_set(&MapCatalogue { maps, complete }, &a, &b)?;
    let contributions: Vec<Value> = r
        .contributions
        .iter()
        .map(|c| {
            json!({
                "map": c.map,
                "pullback": j::element(&c.pullback),
                "multipliers": solutions_json(&c.multipliers),
                "degrees": j::degree_set(&c.degrees),
            })
        })
        .collect();
    let mut out = json!({
        "set": j::degree_set(&r.set),
        "exact": r.exact,
        "shortCircuited": r.short_circuited,
        "contributions": contributions,
    });
    let exactness = if r.exact { "exact" } else { "lower bound" };
    let mut text = format!("D_FP = {} ({exactness})", render::degree_set(&r.set));
    if r.short_circuited {
        text.push_str("\nexactly one Euler class is torsion: only degree 0");
    }
    for c in &r.contributions {
        text.push_str(&format!(
            "\n  map {}: k in {} -> degrees {}",
            c.map,
            solutions_text(&c.multipliers),
            render::degree_set(&c.degrees)
        ));
    }
    if let (Some(m), Some(n)) = (&domain_base, &target_base) {
        let p = promote_to_full_degree_set(m, n, &r.set);
        out["promotion"] = json!({ "justified": p.justified, "set": j::degree_set(&p.set) });
        let verdict = if p.justified { "equals D" } else { "subset of D (promotion not justified)" };
        text.push_str(&format!("\nD_FP {verdict}"));
    }
    Ok(Output::ok(out, text))
}

fn finite(v: &Value, registry: &Registry) -> CliResult<Output> {
    let bases = registry.bases();
    let domain = j::decode_manifold(field(v, "", "domain")?, "/domain", &bases)?;
    let target = j::decode_manifold(field(v, "", "target")?, "/target", &bases)?;
    let flag = |key: &str| -> CliResult<bool> {
        Ok(match opt_field(v, "", key)? {
            Some(b) => j::boolean(b, &format!("/{key}"))?,
            None => false,
        })
    };
    let extra = FinitenessExtra {
        d_base_finite: flag("dBaseFinite")?,
        pullback_class_set_finite: flag("pullbackClassSetFinite")?,
    };
    let r = finiteness_verdict(&domain, &target, extra);
    let verdict = match r.verdict {
        Verdict::Finite => "finite",
        Verdict::Unknown => "unknown",
    };
    let mut text = format!("verdict: {verdict}");
    if !r.missing.is_empty() {
        text.push_str(&format!(" (missing: {})", r.missing.join(", ")));
    }
    Ok(Output::ok(json!({ "verdict": verdict, "missing": r.missing }), text))
}
