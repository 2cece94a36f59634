//! Text and JSON renderers. Every renderer is a pure function of already
//! computed data, all orderings are canonical, and repeated runs produce
//! byte-identical output.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use regmat_core::{
    enumerate_subsets, AxiomReport, BinaryRelation, CampaignReport, DerivationResult,
    FiniteLattice, InstanceReport, LatticeMatroid, PropositionReport, SetFamily, Subset, Universe,
};

fn set_json(s: &Subset) -> Value {
    json!(s.label_vec())
}

pub fn family_json(f: &SetFamily) -> Value {
    Value::Array(f.iter().map(set_json).collect())
}

fn family_lines(out: &mut String, title: &str, f: &SetFamily) {
    let _ = writeln!(out, "{title} ({}):", f.len());
    for member in f.iter() {
        let _ = writeln!(out, "  {member}");
    }
}

/// Assembles the top-level JSON document: a `universe` key (label array, or
/// null when no single universe applies) plus one subcommand key.
pub fn json_document(universe: Option<&Universe>, key: &str, value: Value) -> String {
    let mut map = Map::new();
    let universe_value = match universe {
        Some(u) => json!(u.labels()),
        None => Value::Null,
    };
    map.insert("universe".to_string(), universe_value);
    map.insert(key.to_string(), value);
    let mut out = serde_json::to_string_pretty(&Value::Object(map)).expect("valid json");
    out.push('\n');
    out
}

pub fn check_text(r: &BinaryRelation) -> String {
    format!(
        "universe: {} elements\nserial: {}\ntransitive: {}\nreflexive: {}\nsymmetric: {}\n",
        r.universe().size(),
        r.is_serial(),
        r.is_transitive(),
        r.is_reflexive(),
        r.is_symmetric()
    )
}

pub fn regular_text(f: &SetFamily) -> String {
    let mut out = String::new();
    family_lines(&mut out, "regular sets", f);
    out
}

pub fn lattice_text(l: &FiniteLattice) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "elements ({}):", l.len());
    for i in 0..l.len() {
        let _ = writeln!(out, "  {}  height {}", l.element(i), l.height_by_index(i));
    }
    let edges = l.hasse_edge_indices();
    let _ = writeln!(out, "hasse edges ({}):", edges.len());
    for &(a, b) in edges {
        let _ = writeln!(out, "  {} < {}", l.element(a), l.element(b));
    }
    family_lines(&mut out, "atoms", &l.atoms());
    let _ = writeln!(out, "modular: {}", l.is_modular());
    let _ = writeln!(out, "distributive: {}", l.is_distributive());
    let _ = writeln!(out, "semimodular: {}", l.is_semimodular());
    out
}

pub fn lattice_json(l: &FiniteLattice) -> Value {
    let elements: Vec<Value> = (0..l.len())
        .map(|i| {
            json!({
                "set": set_json(l.element(i)),
                "height": l.height_by_index(i),
            })
        })
        .collect();
    let hasse: Vec<Value> = l
        .hasse_edge_indices()
        .iter()
        .map(|&(a, b)| json!([set_json(l.element(a)), set_json(l.element(b))]))
        .collect();
    json!({
        "elements": elements,
        "hasse": hasse,
        "atoms": family_json(&l.atoms()),
        "modular": l.is_modular(),
        "distributive": l.is_distributive(),
        "semimodular": l.is_semimodular(),
    })
}

/// Everything the `matroid` subcommand prints, computed once.
pub struct MatroidView {
    pub independent: SetFamily,
    pub bases: SetFamily,
    pub ranks: Vec<(Subset, usize, bool)>,
    pub axioms: AxiomReport,
}

pub fn matroid_view(m: &LatticeMatroid) -> regmat_core::Result<MatroidView> {
    let ranks = enumerate_subsets(m.ground())?
        .map(|s| {
            let rank = m.rank(&s)?;
            let independent = m.is_independent(&s)?;
            Ok((s, rank, independent))
        })
        .collect::<regmat_core::Result<Vec<_>>>()?;
    Ok(MatroidView {
        independent: m.enumerate_independent_sets()?,
        bases: m.bases()?,
        ranks,
        axioms: m.verify_axioms()?,
    })
}

pub fn matroid_text(view: &MatroidView) -> String {
    let mut out = String::new();
    family_lines(&mut out, "independent sets", &view.independent);
    family_lines(&mut out, "bases", &view.bases);
    let _ = writeln!(out, "rank table ({}):", view.ranks.len());
    for (set, rank, independent) in &view.ranks {
        let status = if *independent {
            "independent"
        } else {
            "dependent"
        };
        let _ = writeln!(out, "  {set}  rank {rank}  {status}");
    }
    let _ = writeln!(out, "axioms: {}", view.axioms);
    out
}

pub fn matroid_json(view: &MatroidView) -> Value {
    let ranks: Vec<Value> = view
        .ranks
        .iter()
        .map(|(set, rank, independent)| {
            json!({
                "set": set_json(set),
                "rank": rank,
                "independent": independent,
            })
        })
        .collect();
    json!({
        "independent": family_json(&view.independent),
        "bases": family_json(&view.bases),
        "ranks": ranks,
        "axioms": {
            "pass": view.axioms.all_pass(),
            "violations": view.axioms.violations(),
        },
    })
}

pub fn closed_text(d: &DerivationResult) -> String {
    let mut out = String::new();
    family_lines(&mut out, "closed sets, brute force", &d.oracle);
    family_lines(&mut out, "derivation step 1, isolated singletons", &d.step1);
    family_lines(&mut out, "derivation step 2, lattice elements", &d.step2);
    family_lines(&mut out, "derivation candidate", &d.candidate);
    family_lines(&mut out, "sandwiched non-closed sets", &d.excluded);
    family_lines(&mut out, "discrepancy", &d.discrepancy);
    let _ = writeln!(
        out,
        "candidate within oracle: {}",
        d.candidate_within_oracle()
    );
    out
}

pub fn closed_json(d: &DerivationResult) -> Value {
    json!({
        "bruteforce": family_json(&d.oracle),
        "step1": family_json(&d.step1),
        "step2": family_json(&d.step2),
        "candidate": family_json(&d.candidate),
        "excluded": family_json(&d.excluded),
        "discrepancy": family_json(&d.discrepancy),
        "candidate_within_oracle": d.candidate_within_oracle(),
    })
}

fn proposition_lines(out: &mut String, reports: &[PropositionReport]) {
    for report in reports {
        let _ = writeln!(
            out,
            "{}  {}  {}",
            report.id,
            report.verdict,
            report.id.description()
        );
        for counterexample in &report.counterexamples {
            let _ = writeln!(out, "    {counterexample}");
        }
    }
}

pub fn verify_text(relation: &BinaryRelation, reports: &[PropositionReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "relation: {}", relation.fingerprint());
    proposition_lines(&mut out, reports);
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(
        out,
        "summary: {} passed, {} failed",
        reports.len() - failed,
        failed
    );
    out
}

fn proposition_json(report: &PropositionReport) -> Value {
    json!({
        "id": report.id.code(),
        "verdict": report.verdict.to_string(),
        "counterexamples": report.counterexamples,
    })
}

pub fn verify_json(relation: &BinaryRelation, reports: &[PropositionReport]) -> Value {
    json!({
        "relation": relation.fingerprint(),
        "propositions": reports.iter().map(proposition_json).collect::<Vec<_>>(),
    })
}

fn instance_line(instance: &InstanceReport) -> String {
    let failed = instance.propositions.iter().filter(|r| !r.passed()).count();
    let verdict = if failed == 0 { "pass" } else { "FAIL" };
    let mut line = format!(
        "instance {}: n={} {} candidate {} / oracle {}",
        instance.index,
        instance.size,
        verdict,
        instance.derivation.candidate_count,
        instance.derivation.oracle_count
    );
    if !instance.derivation.discrepancy.is_empty() {
        line.push_str(&format!(
            ", discrepancy {}",
            instance.derivation.discrepancy.join(" ")
        ));
    }
    line
}

pub fn campaign_text(report: &CampaignReport) -> String {
    let mut out = String::new();
    let config = &report.config;
    let _ = writeln!(
        out,
        "campaign: count={} sizes={}..{} densities={}..{} seed={}",
        config.count,
        config.sizes.start(),
        config.sizes.end(),
        config.densities.0,
        config.densities.1,
        config.seed
    );
    for instance in &report.instances {
        let _ = writeln!(out, "{}", instance_line(instance));
        let needs_detail = !instance.all_pass() || !instance.derivation.discrepancy.is_empty();
        if needs_detail {
            let _ = writeln!(out, "  relation: {}", instance.relation);
            for prop in instance.propositions.iter().filter(|r| !r.passed()) {
                let _ = writeln!(out, "  {}  fail  {}", prop.id, prop.id.description());
                for counterexample in &prop.counterexamples {
                    let _ = writeln!(out, "      {counterexample}");
                }
            }
        }
    }
    let _ = writeln!(
        out,
        "summary: {} instances, {} failed checks, {} instances with discrepancy",
        report.instances.len(),
        report.failed_propositions(),
        report.discrepancy_count()
    );
    out
}

fn instance_json(instance: &InstanceReport) -> Value {
    json!({
        "index": instance.index,
        "size": instance.size,
        "density": instance.density,
        "relation": instance.relation,
        "distributive": instance.distributive,
        "modular": instance.modular,
        "semimodular": instance.semimodular,
        "propositions": instance
            .propositions
            .iter()
            .map(proposition_json)
            .collect::<Vec<_>>(),
        "derivation": {
            "candidate_count": instance.derivation.candidate_count,
            "oracle_count": instance.derivation.oracle_count,
            "candidate_within_oracle": instance.derivation.candidate_within_oracle,
            "discrepancy": instance.derivation.discrepancy,
        },
    })
}

/// Data behind the built-in `example` subcommand.
pub struct ExampleView {
    pub relation_text: String,
    pub neighborhoods: Vec<(String, Subset)>,
    pub regular: SetFamily,
    pub independent: SetFamily,
    pub derivation: DerivationResult,
}

pub fn example_text(view: &ExampleView, show_35: bool, show_48: bool) -> String {
    let mut out = String::new();
    out.push_str("relation:\n");
    for line in view.relation_text.lines() {
        let _ = writeln!(out, "  {line}");
    }
    if show_35 {
        out.push_str("example 3.5:\n");
        out.push_str("successor neighborhoods:\n");
        for (label, neighborhood) in &view.neighborhoods {
            let _ = writeln!(out, "  N({label}) = {neighborhood}");
        }
        family_lines(&mut out, "regular sets", &view.regular);
        family_lines(&mut out, "independent sets", &view.independent);
    }
    if show_48 {
        out.push_str("example 4.8:\n");
        family_lines(
            &mut out,
            "closed sets, brute force",
            &view.derivation.oracle,
        );
        family_lines(&mut out, "derivation candidate", &view.derivation.candidate);
        family_lines(&mut out, "discrepancy", &view.derivation.discrepancy);
    }
    out
}

pub fn campaign_json(report: &CampaignReport) -> Value {
    let config = &report.config;
    json!({
        "count": config.count,
        "sizes": [config.sizes.start(), config.sizes.end()],
        "densities": [config.densities.0, config.densities.1],
        "seed": config.seed,
        "instances": report
            .instances
            .iter()
            .map(instance_json)
            .collect::<Vec<_>>(),
        "summary": {
            "failed_propositions": report.failed_propositions(),
            "discrepancy_instances": report.discrepancy_count(),
        },
    })
}
