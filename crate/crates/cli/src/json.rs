//! JSON encodings of the core types.
//!
//! Integers are written as JSON numbers of any size. Decoders report the
//! offending field as a JSON pointer.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::{json, Map, Number, Value};

use s1deg_core::abelian::{FgAbelianGroup, GroupElement, IntegerMatrix};
use s1deg_core::bundles::{BaseManifold, Flag, ManifoldExpr};
use s1deg_core::degsets::{DecompositionCertificate, DegreeSet, Progression, SequenceB, TranscriptStep};
use s1deg_core::realize::{Combination, CrossCheck, PairClaim, RealizationCertificate, Stabilization, SummandClaim};

use crate::error::FieldError;

pub const SCHEMA_VERSION: u64 = 1;
pub const CERTIFICATE_KIND: &str = "realization-certificate";
pub const DECOMPOSITION_KIND: &str = "decomposition-certificate";

pub type DecodeResult<T> = Result<T, FieldError>;

/// Bases that `{"bundle": {"base": name}}` may refer to.
pub type Bases = BTreeMap<String, Arc<BaseManifold>>;

fn child(ptr: &str, key: impl std::fmt::Display) -> String {
    let key = key.to_string().replace('~', "~0").replace('/', "~1");
    format!("{ptr}/{key}")
}

pub fn field<'a>(v: &'a Value, ptr: &str, key: &str) -> DecodeResult<&'a Value> {
    let obj = v.as_object().ok_or_else(|| FieldError::new(ptr, "expected an object"))?;
    obj.get(key).ok_or_else(|| FieldError::new(child(ptr, key), "missing field"))
}

pub fn opt_field<'a>(v: &'a Value, ptr: &str, key: &str) -> DecodeResult<Option<&'a Value>> {
    let obj = v.as_object().ok_or_else(|| FieldError::new(ptr, "expected an object"))?;
    Ok(obj.get(key).filter(|x| !x.is_null()))
}

pub fn array<'a>(v: &'a Value, ptr: &str) -> DecodeResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| FieldError::new(ptr, "expected an array"))
}

pub fn string<'a>(v: &'a Value, ptr: &str) -> DecodeResult<&'a str> {
    v.as_str().ok_or_else(|| FieldError::new(ptr, "expected a string"))
}

pub fn boolean(v: &Value, ptr: &str) -> DecodeResult<bool> {
    v.as_bool().ok_or_else(|| FieldError::new(ptr, "expected a boolean"))
}

pub fn big(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

pub fn decode_big(v: &Value, ptr: &str) -> DecodeResult<BigInt> {
    let Value::Number(n) = v else {
        return Err(FieldError::new(ptr, "expected an integer"));
    };
    BigInt::from_str(&n.to_string()).map_err(|_| FieldError::new(ptr, format!("`{n}` is not an integer")))
}

pub fn decode_i64(v: &Value, ptr: &str) -> DecodeResult<i64> {
    i64::try_from(decode_big(v, ptr)?).map_err(|_| FieldError::new(ptr, "integer out of 64-bit range"))
}

pub fn decode_u32(v: &Value, ptr: &str) -> DecodeResult<u32> {
    u32::try_from(decode_big(v, ptr)?).map_err(|_| FieldError::new(ptr, "expected a small nonnegative integer"))
}

pub fn decode_usize(v: &Value, ptr: &str) -> DecodeResult<usize> {
    usize::try_from(decode_big(v, ptr)?).map_err(|_| FieldError::new(ptr, "expected a nonnegative integer"))
}

fn decode_u64(v: &Value, ptr: &str) -> DecodeResult<u64> {
    u64::try_from(decode_big(v, ptr)?).map_err(|_| FieldError::new(ptr, "expected a nonnegative integer"))
}

fn bigs(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(big).collect())
}

fn decode_bigs(v: &Value, ptr: &str) -> DecodeResult<Vec<BigInt>> {
    array(v, ptr)?.iter().enumerate().map(|(i, x)| decode_big(x, &child(ptr, i))).collect()
}

fn decode_i64s(v: &Value, ptr: &str) -> DecodeResult<Vec<i64>> {
    array(v, ptr)?.iter().enumerate().map(|(i, x)| decode_i64(x, &child(ptr, i))).collect()
}

fn core_err(ptr: &str, e: s1deg_core::Error) -> FieldError {
    FieldError::new(ptr, e.to_string())
}

/// `p/q` as a string, or an integer.
pub fn rational(q: &BigRational) -> Value {
    if q.denom().is_one() {
        big(q.numer())
    } else {
        Value::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

/// Accepts an integer, a string `"p/q"` or `"p"`, or an exact decimal number.
pub fn decode_rational(v: &Value, ptr: &str) -> DecodeResult<BigRational> {
    let bad = || FieldError::new(ptr, "expected a rational: integer, decimal or \"p/q\"");
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return Err(bad()),
    };
    if let Some((p, q)) = text.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.sign() == num_bigint::Sign::NoSign {
            return Err(FieldError::new(ptr, "zero denominator"));
        }
        return Ok(BigRational::new(p, q));
    }
    if text.contains(['e', 'E']) {
        return Err(bad());
    }
    match text.split_once('.') {
        None => Ok(BigRational::from_integer(BigInt::from_str(&text).map_err(|_| bad())?)),
        Some((int, frac)) => {
            let digits = format!("{int}{frac}");
            let numer = BigInt::from_str(&digits).map_err(|_| bad())?;
            let denom = num_traits::pow(BigInt::from(10), frac.len());
            Ok(BigRational::new(numer, denom))
        }
    }
}

pub fn group(g: &FgAbelianGroup) -> Value {
    json!({ "rank": g.rank(), "torsion": bigs(g.torsion()) })
}

pub fn decode_group(v: &Value, ptr: &str) -> DecodeResult<FgAbelianGroup> {
    let rank = decode_usize(field(v, ptr, "rank")?, &child(ptr, "rank"))?;
    let torsion = match opt_field(v, ptr, "torsion")? {
        Some(t) => decode_bigs(t, &child(ptr, "torsion"))?,
        None => Vec::new(),
    };
    FgAbelianGroup::new(rank, torsion).map_err(|e| core_err(&child(ptr, "torsion"), e))
}

pub fn element(e: &GroupElement) -> Value {
    json!({ "free": bigs(e.free_part()), "torsion": bigs(e.torsion_part()) })
}

pub fn decode_element(v: &Value, ptr: &str, g: &FgAbelianGroup) -> DecodeResult<GroupElement> {
    let free = match opt_field(v, ptr, "free")? {
        Some(f) => decode_bigs(f, &child(ptr, "free"))?,
        None => Vec::new(),
    };
    let torsion = match opt_field(v, ptr, "torsion")? {
        Some(t) => decode_bigs(t, &child(ptr, "torsion"))?,
        None => Vec::new(),
    };
    GroupElement::new(g.clone(), free, torsion).map_err(|e| core_err(ptr, e))
}

pub fn matrix(m: &IntegerMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| bigs(r)).collect())
}

/// A list of rows; `[]` is the 0×0 matrix.
pub fn decode_matrix(v: &Value, ptr: &str) -> DecodeResult<IntegerMatrix> {
    let rows = array(v, ptr)?;
    let decoded: Vec<Vec<BigInt>> =
        rows.iter().enumerate().map(|(i, r)| decode_bigs(r, &child(ptr, i))).collect::<DecodeResult<_>>()?;
    let cols = decoded.first().map_or(0, Vec::len);
    if let Some(bad) = decoded.iter().position(|r| r.len() != cols) {
        return Err(FieldError::new(
            child(ptr, bad),
            format!("row has {} entries, expected {cols}", decoded[bad].len()),
        ));
    }
    IntegerMatrix::from_rows(cols, &decoded).map_err(|e| core_err(ptr, e))
}

/// `finite` always; `progressions` and `excludesZero` only when nonempty/true.
pub fn degree_set(d: &DegreeSet) -> Value {
    let mut m = Map::new();
    m.insert("finite".into(), bigs(d.finite()));
    if !d.progressions().is_empty() {
        let ps = d.progressions().iter().map(|p| json!({ "base": big(p.base()), "mod": big(p.modulus()) })).collect();
        m.insert("progressions".into(), Value::Array(ps));
    }
    if d.excludes_zero() {
        m.insert("excludesZero".into(), Value::Bool(true));
    }
    Value::Object(m)
}

pub fn decode_degree_set(v: &Value, ptr: &str) -> DecodeResult<DegreeSet> {
    let finite = match opt_field(v, ptr, "finite")? {
        Some(f) => decode_bigs(f, &child(ptr, "finite"))?,
        None => Vec::new(),
    };
    let mut progressions = Vec::new();
    if let Some(ps) = opt_field(v, ptr, "progressions")? {
        let pp = child(ptr, "progressions");
        for (i, p) in array(ps, &pp)?.iter().enumerate() {
            let ip = child(&pp, i);
            let base = decode_big(field(p, &ip, "base")?, &child(&ip, "base"))?;
            let modulus = decode_big(field(p, &ip, "mod")?, &child(&ip, "mod"))?;
            progressions.push(Progression::new(&base, modulus).map_err(|e| core_err(&child(&ip, "mod"), e))?);
        }
    }
    let excludes_zero = match opt_field(v, ptr, "excludesZero")? {
        Some(b) => boolean(b, &child(ptr, "excludesZero"))?,
        None => false,
    };
    Ok(DegreeSet::new(finite, progressions, excludes_zero))
}

pub fn base_manifold(b: &BaseManifold) -> Value {
    let classes: Map<String, Value> = b.classes().iter().map(|(k, e)| (k.clone(), element(e))).collect();
    json!({
        "name": b.name(),
        "dim": b.dim(),
        "h2": group(b.h2()),
        "classes": classes,
        "flags": b.flags().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "simplicialVolume": b.simplicial_volume().map_or(Value::Null, rational),
    })
}

pub fn decode_base_manifold(v: &Value, ptr: &str) -> DecodeResult<BaseManifold> {
    let name = string(field(v, ptr, "name")?, &child(ptr, "name"))?;
    let dim = decode_u32(field(v, ptr, "dim")?, &child(ptr, "dim"))?;
    let h2 = decode_group(field(v, ptr, "h2")?, &child(ptr, "h2"))?;
    let mut classes = BTreeMap::new();
    if let Some(cs) = opt_field(v, ptr, "classes")? {
        let cp = child(ptr, "classes");
        let obj = cs.as_object().ok_or_else(|| FieldError::new(&cp, "expected an object"))?;
        for (label, e) in obj {
            classes.insert(label.clone(), decode_element(e, &child(&cp, label), &h2)?);
        }
    }
    let mut flags = Vec::new();
    if let Some(fs) = opt_field(v, ptr, "flags")? {
        let fp = child(ptr, "flags");
        for (i, f) in array(fs, &fp)?.iter().enumerate() {
            let ip = child(&fp, i);
            flags.push(Flag::from_str(string(f, &ip)?).map_err(|e| core_err(&ip, e))?);
        }
    }
    let volume = match opt_field(v, ptr, "simplicialVolume")? {
        Some(q) => Some(decode_rational(q, &child(ptr, "simplicialVolume"))?),
        None => None,
    };
    BaseManifold::new(name, dim, h2, classes, flags, volume).map_err(|e| core_err(ptr, e))
}

pub fn manifold(e: &ManifoldExpr) -> Value {
    match e {
        ManifoldExpr::CircleBundle { base, euler } => {
            json!({ "bundle": { "base": base.name(), "euler": element(euler) } })
        }
        ManifoldExpr::SphereProduct { dim } => json!({ "sphereProduct": dim }),
        ManifoldExpr::ConnectedSum(parts) => json!({ "sum": parts.iter().map(manifold).collect::<Vec<_>>() }),
        ManifoldExpr::Repeated { summand, count } => {
            json!({ "repeated": { "summand": manifold(summand), "count": count } })
        }
        ManifoldExpr::Stabilized { inner, shift } => {
            json!({ "stabilized": { "inner": manifold(inner), "shift": shift } })
        }
    }
}

pub fn decode_manifold(v: &Value, ptr: &str, bases: &Bases) -> DecodeResult<ManifoldExpr> {
    let obj = v.as_object().ok_or_else(|| FieldError::new(ptr, "expected a manifold expression object"))?;
    if obj.len() != 1 {
        return Err(FieldError::new(ptr, "expected exactly one of bundle, sphereProduct, sum, repeated, stabilized"));
    }
    let (key, body) = obj.iter().next().expect("one entry");
    let bp = child(ptr, key);
    match key.as_str() {
        "bundle" => {
            let name = string(field(body, &bp, "base")?, &child(&bp, "base"))?;
            let base = bases
                .get(name)
                .ok_or_else(|| FieldError::new(child(&bp, "base"), format!("unknown base manifold `{name}`")))?;
            let euler = decode_element(field(body, &bp, "euler")?, &child(&bp, "euler"), base.h2())?;
            ManifoldExpr::circle_bundle(base.clone(), euler).map_err(|e| core_err(&bp, e))
        }
        "sphereProduct" => ManifoldExpr::sphere_product(decode_u32(body, &bp)?).map_err(|e| core_err(&bp, e)),
        "sum" => {
            let parts = array(body, &bp)?
                .iter()
                .enumerate()
                .map(|(i, p)| decode_manifold(p, &child(&bp, i), bases))
                .collect::<DecodeResult<Vec<_>>>()?;
            if parts.len() < 2 {
                return Err(FieldError::new(&bp, "a connected sum needs at least two summands"));
            }
            ManifoldExpr::connected_sum(parts).map_err(|e| core_err(&bp, e))
        }
        "repeated" => {
            let summand = decode_manifold(field(body, &bp, "summand")?, &child(&bp, "summand"), bases)?;
            let count = string(field(body, &bp, "count")?, &child(&bp, "count"))?;
            Ok(ManifoldExpr::repeated(summand, count))
        }
        "stabilized" => {
            let inner = decode_manifold(field(body, &bp, "inner")?, &child(&bp, "inner"), bases)?;
            let shift = decode_u32(field(body, &bp, "shift")?, &child(&bp, "shift"))?;
            Ok(ManifoldExpr::stabilized(inner, shift))
        }
        other => Err(FieldError::new(ptr, format!("unknown manifold expression `{other}`"))),
    }
}

fn decomposition_body(c: &DecompositionCertificate) -> Map<String, Value> {
    let transcript: Vec<Value> =
        c.transcript.iter().map(|s| json!({ "excludes": s.excludes, "sums": s.sums, "running": s.running })).collect();
    let mut m = Map::new();
    m.insert("target".into(), json!(c.target));
    m.insert("sequences".into(), json!(c.sequences.iter().map(|s| s.entries().to_vec()).collect::<Vec<_>>()));
    m.insert("hullBound".into(), json!(c.hull_bound));
    m.insert("caps".into(), json!({ "maxLen": c.max_len, "maxEntry": c.max_entry, "budget": c.budget }));
    m.insert("transcript".into(), Value::Array(transcript));
    m
}

pub fn decomposition(c: &DecompositionCertificate) -> Value {
    let mut m = Map::new();
    m.insert("schemaVersion".into(), json!(SCHEMA_VERSION));
    m.insert("kind".into(), json!(DECOMPOSITION_KIND));
    m.extend(decomposition_body(c));
    Value::Object(m)
}

pub fn decode_decomposition(v: &Value, ptr: &str) -> DecodeResult<DecompositionCertificate> {
    let target = decode_i64s(field(v, ptr, "target")?, &child(ptr, "target"))?;
    let sp = child(ptr, "sequences");
    let mut sequences = Vec::new();
    for (i, s) in array(field(v, ptr, "sequences")?, &sp)?.iter().enumerate() {
        let ip = child(&sp, i);
        sequences.push(SequenceB::new(decode_i64s(s, &ip)?).map_err(|e| core_err(&ip, e))?);
    }
    let hull_bound = decode_u64(field(v, ptr, "hullBound")?, &child(ptr, "hullBound"))?;
    let cp = child(ptr, "caps");
    let caps = field(v, ptr, "caps")?;
    let max_len = decode_usize(field(caps, &cp, "maxLen")?, &child(&cp, "maxLen"))?;
    let max_entry = decode_u64(field(caps, &cp, "maxEntry")?, &child(&cp, "maxEntry"))?;
    let budget = decode_u64(field(caps, &cp, "budget")?, &child(&cp, "budget"))?;
    let tp = child(ptr, "transcript");
    let mut transcript = Vec::new();
    for (i, s) in array(field(v, ptr, "transcript")?, &tp)?.iter().enumerate() {
        let ip = child(&tp, i);
        let excludes = match opt_field(s, &ip, "excludes")? {
            Some(x) => Some(decode_i64(x, &child(&ip, "excludes"))?),
            None => None,
        };
        let sums = decode_i64s(field(s, &ip, "sums")?, &child(&ip, "sums"))?;
        let running = decode_i64s(field(s, &ip, "running")?, &child(&ip, "running"))?;
        transcript.push(TranscriptStep { excludes, sums, running });
    }
    Ok(DecompositionCertificate { target, sequences, hull_bound, max_len, max_entry, budget, transcript })
}

pub fn certificate(c: &RealizationCertificate) -> Value {
    let pairs: Vec<Value> = c
        .pairs
        .iter()
        .map(|p| {
            let summands: Vec<Value> = p
                .summands
                .iter()
                .map(|s| json!({ "beta": s.beta, "multiplier": big(&s.multiplier), "contribution": degree_set(&s.contribution) }))
                .collect();
            json!({
                "domain": manifold(&p.domain),
                "target": manifold(&p.target),
                "summands": summands,
                "claimed": degree_set(&p.claimed),
                "rule": p.rule,
                "summandRule": p.summand_rule,
            })
        })
        .collect();
    let cross: Vec<Value> = c
        .cross_checks
        .iter()
        .map(|x| json!({ "i": x.i, "j": x.j, "betaIndex": x.beta_index, "multiplier": big(&x.multiplier), "divides": x.divides }))
        .collect();
    let stabilization = c
        .stabilization
        .as_ref()
        .map_or(Value::Null, |s| json!({ "fromDimension": s.from_dimension, "shift": s.shift, "rule": s.rule }));
    json!({
        "schemaVersion": SCHEMA_VERSION,
        "kind": CERTIFICATE_KIND,
        "targetSet": c.target_set,
        "dimension": c.dimension,
        "base": base_manifold(&c.base),
        "class": c.class,
        "decomposition": Value::Object(decomposition_body(&c.decomposition)),
        "primes": bigs(&c.primes),
        "multipliers": bigs(&c.multipliers),
        "pairs": pairs,
        "crossChecks": cross,
        "combination": {
            "symbol": c.combination.symbol,
            "resultDomain": manifold(&c.combination.result_domain),
            "resultTarget": manifold(&c.combination.result_target),
            "rule": c.combination.rule,
        },
        "stabilization": stabilization,
        "finalSet": degree_set(&c.final_set),
    })
}

fn check_header(v: &Value, kind: &str) -> DecodeResult<()> {
    let version = decode_u64(field(v, "", "schemaVersion")?, "/schemaVersion")?;
    if version != SCHEMA_VERSION {
        return Err(FieldError::new("/schemaVersion", format!("unsupported schema version {version}")));
    }
    let found = string(field(v, "", "kind")?, "/kind")?;
    if found != kind {
        return Err(FieldError::new("/kind", format!("expected `{kind}`, found `{found}`")));
    }
    Ok(())
}

pub fn decode_standalone_decomposition(v: &Value) -> DecodeResult<DecompositionCertificate> {
    check_header(v, DECOMPOSITION_KIND)?;
    decode_decomposition(v, "")
}

/// Decodes a certificate. Bundles resolve against the embedded base only.
pub fn decode_certificate(v: &Value) -> DecodeResult<RealizationCertificate> {
    check_header(v, CERTIFICATE_KIND)?;
    let target_set = decode_i64s(field(v, "", "targetSet")?, "/targetSet")?;
    let dimension = decode_u32(field(v, "", "dimension")?, "/dimension")?;
    let base = Arc::new(decode_base_manifold(field(v, "", "base")?, "/base")?);
    let bases: Bases = [(base.name().to_string(), base.clone())].into();
    let class = string(field(v, "", "class")?, "/class")?.to_string();
    let decomposition = decode_decomposition(field(v, "", "decomposition")?, "/decomposition")?;
    let primes = decode_bigs(field(v, "", "primes")?, "/primes")?;
    let multipliers = decode_bigs(field(v, "", "multipliers")?, "/multipliers")?;

    let mut pairs = Vec::new();
    for (i, p) in array(field(v, "", "pairs")?, "/pairs")?.iter().enumerate() {
        let ip = child("/pairs", i);
        let sp = child(&ip, "summands");
        let mut summands = Vec::new();
        for (t, s) in array(field(p, &ip, "summands")?, &sp)?.iter().enumerate() {
            let tp = child(&sp, t);
            summands.push(SummandClaim {
                beta: decode_i64(field(s, &tp, "beta")?, &child(&tp, "beta"))?,
                multiplier: decode_big(field(s, &tp, "multiplier")?, &child(&tp, "multiplier"))?,
                contribution: decode_degree_set(field(s, &tp, "contribution")?, &child(&tp, "contribution"))?,
            });
        }
        pairs.push(PairClaim {
            domain: decode_manifold(field(p, &ip, "domain")?, &child(&ip, "domain"), &bases)?,
            target: decode_manifold(field(p, &ip, "target")?, &child(&ip, "target"), &bases)?,
            summands,
            claimed: decode_degree_set(field(p, &ip, "claimed")?, &child(&ip, "claimed"))?,
            rule: string(field(p, &ip, "rule")?, &child(&ip, "rule"))?.to_string(),
            summand_rule: string(field(p, &ip, "summandRule")?, &child(&ip, "summandRule"))?.to_string(),
        });
    }

    let mut cross_checks = Vec::new();
    for (t, x) in array(field(v, "", "crossChecks")?, "/crossChecks")?.iter().enumerate() {
        let tp = child("/crossChecks", t);
        cross_checks.push(CrossCheck {
            i: decode_usize(field(x, &tp, "i")?, &child(&tp, "i"))?,
            j: decode_usize(field(x, &tp, "j")?, &child(&tp, "j"))?,
            beta_index: decode_usize(field(x, &tp, "betaIndex")?, &child(&tp, "betaIndex"))?,
            multiplier: decode_big(field(x, &tp, "multiplier")?, &child(&tp, "multiplier"))?,
            divides: boolean(field(x, &tp, "divides")?, &child(&tp, "divides"))?,
        });
    }

    let cv = field(v, "", "combination")?;
    let combination = Combination {
        symbol: match opt_field(cv, "/combination", "symbol")? {
            Some(s) => Some(string(s, "/combination/symbol")?.to_string()),
            None => None,
        },
        result_domain: decode_manifold(
            field(cv, "/combination", "resultDomain")?,
            "/combination/resultDomain",
            &bases,
        )?,
        result_target: decode_manifold(
            field(cv, "/combination", "resultTarget")?,
            "/combination/resultTarget",
            &bases,
        )?,
        rule: string(field(cv, "/combination", "rule")?, "/combination/rule")?.to_string(),
    };
    let stabilization = match opt_field(v, "", "stabilization")? {
        Some(s) => Some(Stabilization {
            from_dimension: decode_u32(field(s, "/stabilization", "fromDimension")?, "/stabilization/fromDimension")?,
            shift: decode_u32(field(s, "/stabilization", "shift")?, "/stabilization/shift")?,
            rule: string(field(s, "/stabilization", "rule")?, "/stabilization/rule")?.to_string(),
        }),
        None => None,
    };
    let final_set = decode_degree_set(field(v, "", "finalSet")?, "/finalSet")?;
    Ok(RealizationCertificate {
        target_set,
        dimension,
        base,
        class,
        decomposition,
        primes,
        multipliers,
        pairs,
        cross_checks,
        combination,
        stabilization,
        final_set,
    })
}

/// Parses text as JSON, locating syntax errors by line and column.
pub fn parse(text: &str) -> DecodeResult<Value> {
    serde_json::from_str(text)
        .map_err(|e| FieldError::new("", format!("invalid JSON at line {}, column {}: {e}", e.line(), e.column())))
}

/// Non-negative rational check used by volume inputs.
pub fn decode_volume(v: &Value, ptr: &str) -> DecodeResult<BigRational> {
    let q = decode_rational(v, ptr)?;
    if q.is_negative() {
        return Err(FieldError::new(ptr, "simplicial volume must be nonnegative"));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_round_trip() {
        let n = BigInt::from_str("123456789012345678901234567890").unwrap();
        let v = big(&n);
        assert_eq!(v.to_string(), "123456789012345678901234567890");
        assert_eq!(decode_big(&v, "").unwrap(), n);
        assert!(decode_big(&json!(1.5), "/x").is_err());
        assert!(decode_big(&json!("3"), "/x").is_err());
    }

    #[test]
    fn degree_set_shape() {
        assert_eq!(degree_set(&DegreeSet::zero()).to_string(), r#"{"finite":[0]}"#);
        let p = Progression::new(&BigInt::from(0), BigInt::from(3)).unwrap();
        let d = DegreeSet::from_progression(p).without_zero_in_progressions();
        let v = degree_set(&d);
        assert_eq!(v.to_string(), r#"{"finite":[],"progressions":[{"base":0,"mod":3}],"excludesZero":true}"#);
        assert_eq!(decode_degree_set(&v, "").unwrap(), d);
        let vacuous = DegreeSet::from_progression(Progression::new(&BigInt::from(2), BigInt::from(3)).unwrap());
        assert_eq!(degree_set(&vacuous.clone().without_zero_in_progressions()), degree_set(&vacuous));
    }

    #[test]
    fn rationals() {
        assert_eq!(decode_rational(&json!("7/3"), "").unwrap(), BigRational::new(7.into(), 3.into()));
        assert_eq!(decode_rational(&json!(2.5), "").unwrap(), BigRational::new(5.into(), 2.into()));
        assert_eq!(decode_rational(&json!(4), "").unwrap(), BigRational::from_integer(4.into()));
        assert!(decode_rational(&json!("1/0"), "").is_err());
        assert_eq!(rational(&BigRational::new(6.into(), 4.into())), json!("3/2"));
    }

    #[test]
    fn pointers_name_the_field() {
        let v = json!({ "rank": 1, "torsion": [2, 3] });
        assert_eq!(decode_group(&v, "/g").unwrap_err().pointer, "/g/torsion");
        let v = json!({ "rank": -1 });
        assert_eq!(decode_group(&v, "").unwrap_err().pointer, "/rank");
        let v = json!([[1, 2], [3]]);
        assert_eq!(decode_matrix(&v, "/m").unwrap_err().pointer, "/m/1");
    }
}
