//! Plain-text rendering of reports.

use std::fmt::Write as _;

use heegaard_core::diagram::StabilizationReport;
use heegaard_core::factor::{BindingReason, BindingStatus, FactorBindingReport, MhaOverall, MhaReport};
use heegaard_core::freegroup::{Basis, HomologyResult, Letter};
use heegaard_core::whitehead::{GraphAnalysis, SeparabilityVerdict, SeparabilityWitness, Verdict, WhiteheadMove};

/// Vertex names separated by spaces, in braces.
pub fn letters(b: &Basis, ls: &[Letter]) -> String {
    let names: Vec<String> = ls.iter().map(|&l| b.vertex_name(l)).collect();
    format!("{{{}}}", names.join(" "))
}

/// `(a; A)`.
pub fn whitehead_move(b: &Basis, m: &WhiteheadMove) -> String {
    format!("({}; {})", b.vertex_name(m.multiplier), letters(b, &m.set))
}

/// `DISKBUSTING` or `SEPARABLE`.
pub fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Diskbusting => "DISKBUSTING",
        Verdict::Separable => "SEPARABLE",
    }
}

/// `Z^r + Z/t₁ + …`, or `0`.
pub fn homology(h: &HomologyResult) -> String {
    let mut parts = Vec::new();
    match h.free_rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(h.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Components, cut vertices, valence-one vertices and bridges.
pub fn analysis(b: &Basis, a: &GraphAnalysis, edges: usize) -> String {
    let mut out = String::new();
    let vertices = 2 * b.rank();
    let _ = writeln!(out, "vertices {vertices}, edges {edges}");
    let _ = writeln!(out, "components {}", a.components.len());
    for c in &a.components {
        let _ = writeln!(out, "  {}", letters(b, c));
    }
    let list = |ls: &[Letter]| if ls.is_empty() { "-".to_string() } else { letters(b, ls) };
    let _ = writeln!(out, "cut vertices: {}", list(&a.cut_vertices));
    let _ = writeln!(out, "valence one: {}", list(&a.valence_one));
    if a.bridges.is_empty() {
        let _ = writeln!(out, "bridges: -");
    }
    for p in &a.bridges {
        let sides: Vec<String> = p.sides.iter().map(|s| letters(b, s)).collect();
        let cert = match &p.certificate {
            Some(m) => format!("certified by {}", whitehead_move(b, m)),
            None => "uncertified".to_string(),
        };
        let _ = writeln!(out, "bridge at {}: {} {cert}", b.name(p.generator), sides.join(" | "));
    }
    out
}

/// Witness in words.
pub fn witness(b: &Basis, v: &SeparabilityVerdict) -> String {
    match &v.witness {
        SeparabilityWitness::Disconnected { components, .. } => {
            let cs: Vec<String> = components.iter().map(|c| letters(b, c)).collect();
            format!("disconnected graph {}", cs.join(" "))
        }
        SeparabilityWitness::ValenceOne { vertex } => format!("valence-one vertex {}", b.vertex_name(*vertex)),
        SeparabilityWitness::Bridge { pattern } => match &pattern.certificate {
            Some(m) => format!("bridge at {} cut by {}", b.name(pattern.generator), whitehead_move(b, m)),
            None => format!("bridge at {}", b.name(pattern.generator)),
        },
        SeparabilityWitness::Biconnected => "connected, no cut vertex".to_string(),
    }
}

/// Verdict line followed by witness and trace.
pub fn separability(b: &Basis, v: &SeparabilityVerdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", verdict(v.verdict));
    let _ = writeln!(out, "witness: {}", witness(b, v));
    let _ = writeln!(out, "length {}, moves {}", v.initial_complexity, v.trace.len());
    for s in &v.trace {
        let _ = writeln!(out, "  {} -> {}", whitehead_move(b, &s.whitehead_move), s.complexity);
    }
    out
}

fn status(s: BindingStatus) -> &'static str {
    match s {
        BindingStatus::DoesNotBind => "DOES NOT BIND",
        BindingStatus::Binds => "BINDS",
        BindingStatus::Unknown => "UNKNOWN",
    }
}

/// One line for a binding report.
pub fn binding(b: &Basis, r: &FactorBindingReport) -> String {
    let reason = match &r.reason {
        BindingReason::SupportDeficient { support } => format!("support {support} < {}", r.target_rank),
        BindingReason::DiskbustingOnSupport { support } => format!("diskbusting on support {support}"),
        BindingReason::Split { part_supports, .. } => format!("splits with supports {part_supports:?}"),
    };
    let mut notes = Vec::new();
    if !r.initial.connected {
        notes.push("graph disconnected".to_string());
    }
    for p in &r.initial.bridges {
        notes.push(format!("bridge at {}", b.name(p.generator)));
    }
    if !r.initial.valence_one.is_empty() {
        notes.push(format!("valence one {}", letters(b, &r.initial.valence_one)));
    }
    let missing: Vec<&str> = (0..b.rank()).filter(|g| !r.initial.support.contains(g)).map(|g| b.name(g)).collect();
    if !missing.is_empty() {
        notes.push(format!("misses {}", missing.join(" ")));
    }
    let notes = if notes.is_empty() { String::new() } else { format!("; {}", notes.join(", ")) };
    format!("{} ({reason}{notes})", status(r.status))
}

/// `PASS`, `FAIL …` or `INCONCLUSIVE …`.
pub fn mha_overall(o: &MhaOverall) -> String {
    match o {
        MhaOverall::Pass => "PASS".to_string(),
        MhaOverall::Fail { condition, subset } => format!("FAIL (condition {condition}: {{{}}})", subset.join(" ")),
        MhaOverall::Inconclusive { subset } => format!("INCONCLUSIVE ({{{}}})", subset.join(" ")),
    }
}

/// Overall line, condition 0 and one line per subset.
pub fn mha(b: &Basis, r: &MhaReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", mha_overall(&r.overall));
    let _ = writeln!(out, "curves {{{}}} over F_{}", r.curves.join(" "), r.k);
    let _ = writeln!(out, "condition 0: {} ({})", verdict(r.condition_0.verdict), witness(b, &r.condition_0));
    for s in &r.subsets {
        let _ = writeln!(
            out,
            "condition {} {{{}}} vs F_{}: {}",
            s.condition,
            s.curves.join(" "),
            s.report.target_rank,
            binding(b, &s.report)
        );
    }
    out
}

/// One line per pair, flagged pairs marked, then the caveat.
pub fn stabilization(r: &StabilizationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "flagged {}, bigons removed {}", r.flagged().count(), r.bigons_removed);
    for p in &r.pairs {
        let mark = if p.flagged { " *" } else { "" };
        let _ = writeln!(out, "  {} {} {}{mark}", p.curve, p.disk, p.count);
    }
    let _ = writeln!(out, "caveat: {}", r.caveat);
    out
}
