//! Plain-text renderings: one claim per line, rule tags in brackets.

use std::fmt::Write;

use num_bigint::BigInt;

use s1deg_core::abelian::GroupElement;
use s1deg_core::bundles::ManifoldExpr;
use s1deg_core::degsets::{DecompositionCertificate, DegreeSet};
use s1deg_core::realize::{RealizationCertificate, VerificationReport};

fn join<T: ToString>(xs: impl IntoIterator<Item = T>, sep: &str) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

pub fn degree_set(d: &DegreeSet) -> String {
    let mut parts = Vec::new();
    if !d.finite().is_empty() || d.progressions().is_empty() {
        parts.push(format!("{{{}}}", join(d.finite(), ", ")));
    }
    for p in d.progressions() {
        parts.push(format!("{{{} mod {}}}", p.base(), p.modulus()));
    }
    let mut out = parts.join(" ∪ ");
    if d.excludes_zero() {
        out.push_str(" without 0");
    }
    out
}

fn euler(e: &GroupElement) -> String {
    if e.torsion_part().is_empty() && e.free_part().len() == 1 {
        e.free_part()[0].to_string()
    } else {
        format!("({}|{})", join(e.free_part(), ","), join(e.torsion_part(), ","))
    }
}

pub fn manifold(e: &ManifoldExpr) -> String {
    match e {
        ManifoldExpr::CircleBundle { base, euler: x } => format!("S1[{}; e={}]", base.name(), euler(x)),
        ManifoldExpr::SphereProduct { dim } => format!("S^{}xS^1", dim - 1),
        ManifoldExpr::ConnectedSum(parts) => join(parts.iter().map(manifold), " # "),
        ManifoldExpr::Repeated { summand, count } => format!("#^{count} {}", manifold(summand)),
        ManifoldExpr::Stabilized { inner, shift } => format!("stab^{shift}({})", manifold(inner)),
    }
}

fn sequence(xs: &[i64]) -> String {
    format!("({})", join(xs, ", "))
}

pub fn decomposition(c: &DecompositionCertificate) -> String {
    let mut out = String::new();
    let target = format!("{{{}}}", join(&c.target, ", "));
    let terms = join(c.sequences.iter().map(|s| format!("S{}", sequence(s.entries()))), " ∩ ");
    let _ = writeln!(out, "decomposition: {target} = {terms}");
    for (i, (s, step)) in c.sequences.iter().zip(&c.transcript).enumerate() {
        let why = step.excludes.map_or("seed".to_string(), |x| format!("excludes {x}"));
        let _ = writeln!(
            out,
            "  B{} = {} ({why}): S = {{{}}}, running {{{}}}",
            i + 1,
            sequence(s.entries()),
            join(&step.sums, ", "),
            join(&step.running, ", ")
        );
    }
    let _ = writeln!(out, "  caps: length {}, entry {}, budget {}", c.max_len, c.max_entry, c.budget);
    out
}

pub fn certificate(c: &RealizationCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "realize {{{}}} in dimension {} over {} with class {}",
        join(&c.target_set, ", "),
        c.dimension,
        c.base.name(),
        c.class
    );
    out.push_str(&decomposition(&c.decomposition));
    for (i, p) in c.primes.iter().enumerate() {
        let _ = writeln!(out, "prime p{} = {p}", i + 1);
    }
    for (i, (a, s)) in c.multipliers.iter().zip(&c.decomposition.sequences).enumerate() {
        let factors: Vec<BigInt> =
            c.primes.get(i).into_iter().cloned().chain(s.entries().iter().map(|&x| BigInt::from(x))).collect();
        let _ = writeln!(out, "alpha{} = {} = {a}", i + 1, join(factors, "·"));
    }
    for (i, p) in c.pairs.iter().enumerate() {
        let _ = writeln!(
            out,
            "pair {}: D({}, {}) = {} [{}]",
            i + 1,
            manifold(&p.domain),
            manifold(&p.target),
            degree_set(&p.claimed),
            p.rule
        );
        for s in &p.summands {
            let _ = writeln!(
                out,
                "  beta {}: {} · {} = {}, contribution {} [{}]",
                s.beta,
                s.multiplier,
                s.beta,
                &s.multiplier * s.beta,
                degree_set(&s.contribution),
                p.summand_rule
            );
        }
    }
    for x in &c.cross_checks {
        let verdict = if x.divides { "divides" } else { "does not divide" };
        let _ = writeln!(
            out,
            "cross M{} summand {} -> N{}: {} {verdict} {}, D = {{0}} [prime-firewall]",
            x.i + 1,
            x.beta_index + 1,
            x.j + 1,
            x.multiplier,
            c.multipliers.get(x.j).map_or("?".to_string(), BigInt::to_string)
        );
    }
    let symbol = c.combination.symbol.as_deref().map_or(String::new(), |l| format!(" for some {l} >= 0"));
    let _ = writeln!(
        out,
        "combination: D({}, {}) = {}{symbol} [{}]",
        manifold(&c.combination.result_domain),
        manifold(&c.combination.result_target),
        degree_set(&c.final_set),
        c.combination.rule
    );
    if let Some(s) = &c.stabilization {
        let _ =
            writeln!(out, "stabilization: dimension {} + {} = {} [{}]", s.from_dimension, s.shift, c.dimension, s.rule);
    }
    let _ = writeln!(out, "final: {}", degree_set(&c.final_set));
    out
}

pub fn report(r: &VerificationReport) -> String {
    if r.passed() {
        return "certificate verified\n".to_string();
    }
    let mut out = String::from("certificate rejected\n");
    for f in &r.failures {
        let _ = writeln!(out, "  {f}");
    }
    out
}
