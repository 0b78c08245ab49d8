//! Report envelope, JSON payload builders and the human table renderer.

use std::fmt::Write as _;

use orbifill_core::chen_ruan::{Convention, CrRing, GradedRanks, PairingReport, TwistedSector};
use orbifill_core::constraints::{Admissibility, ConstraintSet, Divisor, RpReport};
use orbifill_core::cyclotomic::Rational;
use orbifill_core::floer::{
    DifferentialEntry, FloerGenerator, GeneratorKind, GeneratorLedger, LedgerReport, RankBookkeeping,
};
use orbifill_core::group::FiniteUnitaryGroup;
use orbifill_core::reeb::{LoopComponent, OrbitFamily, Verdict};
use orbifill_core::span::{CompositionCheck, OrbitDecomposition};
use serde_json::{json, Map, Value};

pub const TOOL: &str = "orbifill";
pub const PERIOD_UNITS: &str = "2pi";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub input_digest: Option<String>,
    pub convention: Convention,
    pub seed: Option<u64>,
    pub payload: Value,
}

impl Report {
    pub fn new(command: &str, payload: Value) -> Self {
        Report { command: command.into(), input_digest: None, convention: Convention::DEFAULT, seed: None, payload }
    }

    pub fn envelope(&self) -> Value {
        json!({
            "tool": TOOL,
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "input_digest": self.input_digest,
            "conventions": {
                "cup_product": self.convention.as_str(),
                "period_units": PERIOD_UNITS,
            },
            "seed": self.seed,
            "payload": self.payload,
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.envelope()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Table => {
                let mut out = String::new();
                let _ = writeln!(out, "{} ({} {})", self.command, TOOL, env!("CARGO_PKG_VERSION"));
                let _ =
                    writeln!(out, "cup product: {}, periods in units of {}", self.convention.as_str(), PERIOD_UNITS);
                if let Some(d) = &self.input_digest {
                    let _ = writeln!(out, "input digest: {d}");
                }
                if let Some(s) = self.seed {
                    let _ = writeln!(out, "seed: {s}");
                }
                table(&mut out, "", &self.payload);
                out
            }
        }
    }
}

pub fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

/// Scalars as `key: value`, arrays of flat objects as aligned columns,
/// everything else recursively.
fn table(out: &mut String, key: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            if !key.is_empty() {
                let _ = writeln!(out, "\n[{key}]");
            }
            for (k, x) in map.iter().filter(|(_, x)| is_scalar(x)) {
                let _ = writeln!(out, "{k}: {}", scalar(x));
            }
            for (k, x) in map.iter().filter(|(_, x)| !is_scalar(x)) {
                let name = if key.is_empty() { k.clone() } else { format!("{key}.{k}") };
                table(out, &name, x);
            }
        }
        Value::Array(items) if items.iter().all(|i| i.as_object().is_some_and(|o| o.values().all(is_scalar))) => {
            let _ = writeln!(out, "\n[{key}] {} rows", items.len());
            let Some(first) = items.first().and_then(Value::as_object) else { return };
            let cols: Vec<&String> = first.keys().collect();
            let cells: Vec<Vec<String>> = items
                .iter()
                .map(|i| cols.iter().map(|c| i.get(c.as_str()).map_or("-".into(), scalar)).collect())
                .collect();
            let widths: Vec<usize> = cols
                .iter()
                .enumerate()
                .map(|(j, c)| cells.iter().map(|r| r[j].len()).chain([c.len()]).max().unwrap_or(0))
                .collect();
            let line = |row: Vec<&str>| {
                row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect::<Vec<_>>().join("  ")
            };
            let _ = writeln!(out, "{}", line(cols.iter().map(|c| c.as_str()).collect()).trim_end());
            for r in &cells {
                let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()).trim_end());
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let _ = writeln!(out, "{key}: [{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", "));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                table(out, &format!("{key}[{i}]"), x);
            }
        }
        other => {
            let _ = writeln!(out, "{key}: {}", scalar(other));
        }
    }
}

pub fn group_payload(g: &FiniteUnitaryGroup) -> Value {
    let classes: Vec<Value> = g
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "index": i,
                "label": c.label,
                "size": c.size(),
                "order": c.order,
                "age": rational(&c.age),
                "centralizer_order": c.centralizer_order(),
                "inverse_class": g.inverse_class(i),
            })
        })
        .collect();
    let isolated = g.is_isolated_singularity();
    json!({
        "name": g.name(),
        "dimension": g.dimension(),
        "conductor": g.conductor(),
        "order": g.order(),
        "isolated": isolated.is_isolated(),
        "non_isolated_witness": match isolated {
            orbifill_core::group::IsolatedCheck::Isolated => Value::Null,
            orbifill_core::group::IsolatedCheck::NotIsolated { witness } => json!(witness),
        },
        "classes": classes,
    })
}

pub fn sector(s: &TwistedSector) -> Value {
    json!({
        "class": s.class,
        "label": s.label,
        "age": rational(&s.age),
        "degree": rational(&s.degree),
        "parity": s.parity().as_str(),
        "centralizer_order": s.centralizer_order,
    })
}

fn combination(ring: &CrRing, terms: &[(usize, Rational)]) -> Value {
    Value::Array(
        terms.iter().map(|(k, c)| json!({"sector": ring.sectors()[*k].label, "coefficient": rational(c)})).collect(),
    )
}

/// Sectors, nonzero products, pairing and the associativity verdict for
/// `ring` and for the other convention.
pub fn ring_payload(ring: &CrRing, other: &CrRing, pairing: &PairingReport) -> Value {
    let s = ring.sectors();
    let mut products = Vec::new();
    for i in 0..s.len() {
        for j in i..s.len() {
            let terms = ring.cup(i, j);
            if terms.is_empty() {
                continue;
            }
            products.push(json!({
                "left": s[i].label,
                "right": s[j].label,
                "result": combination(ring, &terms),
            }));
        }
    }
    let sweep = |r: &CrRing| {
        let fails = r.associativity_failures();
        json!({
            "convention": r.convention().as_str(),
            "associative": fails.is_empty(),
            "failing_triples": fails.len(),
        })
    };
    let pairs: Vec<Value> = pairing
        .entries
        .iter()
        .map(|e| {
            json!({
                "sector": s[e.sector].label,
                "inverse": s[e.inverse_sector].label,
                "age_sum": rational(&e.age_sum),
                "degree": rational(&e.degree),
                "complementary_degree": rational(&e.complementary_degree),
                "ok": e.ok,
            })
        })
        .collect();
    json!({
        "dimension": ring.dimension(),
        "rank": ring.rank(),
        "convention": ring.convention().as_str(),
        "sectors": s.iter().map(sector).collect::<Vec<_>>(),
        "products": products,
        "commutative": ring.commutativity_failures().is_empty(),
        "associativity_sweep": [sweep(ring), sweep(other)],
        "pairing": {"all_pass": pairing.all_pass(), "entries": pairs},
    })
}

pub fn graded_ranks(r: &GradedRanks) -> Value {
    json!({
        "coefficient": r.coefficient.to_string(),
        "torsion_note": r.torsion_note,
        "total": r.total(),
        "ranks": r.ranks.iter().map(|(d, k)| json!({"degree": rational(d), "rank": k})).collect::<Vec<_>>(),
    })
}

pub fn family(g: &FiniteUnitaryGroup, f: &OrbitFamily) -> Value {
    json!({
        "class": g.classes()[f.class].label,
        "homotopy_class": f.homotopy_class,
        "period": rational(f.period.value()),
        "fixed_dim": f.fixed_dim,
        "prior_dim": f.prior_dim,
        "age": rational(&f.age),
        "cz": rational(&f.cz_index),
    })
}

pub fn reeb_payload(
    g: &FiniteUnitaryGroup,
    slope: &Rational,
    families: &[OrbitFamily],
    discrepancy: &(Rational, Verdict),
    loops: &[LoopComponent],
) -> Value {
    json!({
        "slope": rational(slope),
        "families": families.iter().map(|f| family(g, f)).collect::<Vec<_>>(),
        "discrepancy": {"value": rational(&discrepancy.0), "verdict": discrepancy.1.as_str()},
        "loop_components": loops
            .iter()
            .map(|l| json!({"class": l.label, "contractible": l.contractible}))
            .collect::<Vec<_>>(),
    })
}

fn generator(g: &FiniteUnitaryGroup, i: usize, x: &FloerGenerator) -> Value {
    let mut m = Map::new();
    m.insert("index".into(), json!(i));
    m.insert("kind".into(), json!(x.kind.tag()));
    m.insert("class".into(), json!(g.classes()[x.class].label));
    m.insert("homotopy_class".into(), json!(x.homotopy_class));
    m.insert("degree".into(), rational(&x.degree));
    m.insert("action".into(), rational(&x.action));
    m.insert("isotropy".into(), json!(x.isotropy_order));
    let (period, morse, cz) = match &x.kind {
        GeneratorKind::NonconstantCell { period, morse_index, cz_index, .. } => {
            (rational(period.value()), json!(morse_index), rational(cz_index))
        }
        _ => (Value::Null, Value::Null, Value::Null),
    };
    m.insert("period".into(), period);
    m.insert("morse_index".into(), morse);
    m.insert("cz".into(), cz);
    Value::Object(m)
}

fn ranks(r: &std::collections::BTreeMap<Rational, u64>) -> Value {
    Value::Array(r.iter().map(|(d, k)| json!({"degree": rational(d), "rank": k})).collect())
}

pub fn ledger_payload(
    g: &FiniteUnitaryGroup,
    ledger: &GeneratorLedger,
    entries: &[DifferentialEntry],
    report: &LedgerReport,
    book: &RankBookkeeping,
) -> Value {
    json!({
        "dimension": ledger.dimension,
        "group_order": ledger.group_order,
        "slope": rational(ledger.slope.value()),
        "unit": ledger.unit(),
        "gamma0": ledger.gamma0(),
        "generators": ledger.generators.iter().enumerate().map(|(i, x)| generator(g, i, x)).collect::<Vec<_>>(),
        "entries": entries
            .iter()
            .map(|e| json!({
                "source": e.source,
                "target": e.target,
                "coefficient": e.coefficient,
                "provenance": e.provenance.as_str(),
            }))
            .collect::<Vec<_>>(),
        "entries_checked": report.entries_checked,
        "ranks_by_class": report
            .ranks
            .iter()
            .map(|(c, r)| json!({"homotopy_class": c, "ranks": ranks(r)}))
            .collect::<Vec<_>>(),
        "rank_bookkeeping": {
            "chen_ruan": ranks(&book.cr_ranks),
            "constants": ranks(&book.constant_ranks),
            "matches": book.matches,
        },
    })
}

fn divisor(d: &Divisor) -> Value {
    json!({"value": d.value.to_string(), "rule": d.rule})
}

pub fn constraint_payload(c: &ConstraintSet) -> Value {
    json!({
        "boundary": c.boundary.to_string(),
        "applicable": c.applicable,
        "reason": c.reason,
        "divisors": c.divisors.iter().map(divisor).collect::<Vec<_>>(),
        "effective_bound": c.effective_bound().map(|b| b.to_string()),
        "uniqueness": c.uniqueness.as_ref().map(|u| json!({"count": u.count, "model": u.model})),
    })
}

pub fn admissibility_payload(c: &ConstraintSet, a: Option<&Admissibility>) -> Value {
    let mut v = constraint_payload(c);
    let m = v.as_object_mut().expect("object payload");
    m.insert("group_order".into(), a.map_or(Value::Null, |a| json!(a.group_order.to_string())));
    m.insert("admissible".into(), a.map_or(Value::Null, |a| json!(a.admissible)));
    m.insert("violated".into(), Value::Array(a.map_or(Vec::new(), |a| a.violated.iter().map(divisor).collect())));
    m.insert("explanation".into(), a.map_or(Value::Null, |a| json!(a.explanation)));
    v
}

pub fn rp_payload(r: &RpReport) -> Value {
    json!({"n": r.n, "uniqueness": r.uniqueness, "statement": r.statement})
}

pub fn decomposition(d: &OrbitDecomposition) -> Value {
    json!({
        "acting_order": d.acting_order,
        "set_size": d.set_size,
        "orbit_stabilizer": d.orbit_stabilizer_holds(),
        "orbits": d
            .orbits
            .iter()
            .map(|o| json!({"representative": o.representative, "size": o.size, "stabilizer_order": o.stabilizer_order}))
            .collect::<Vec<_>>(),
    })
}

pub fn composition(index: usize, c: &CompositionCheck) -> Value {
    json!({
        "first": index,
        "second": index + 1,
        "lhs": rational(&c.lhs),
        "rhs": rational(&c.rhs),
        "equal": c.equal,
        "fiber_product": decomposition(&c.decomposition),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_are_sorted_and_stable() {
        let r = Report::new("x", json!({"zeta": 1, "alpha": [1, 2]}));
        let a = r.to_json();
        assert_eq!(a, r.to_json());
        assert!(a.find("\"alpha\"").unwrap() < a.find("\"zeta\"").unwrap());
        assert!(a.find("\"command\"").unwrap() < a.find("\"payload\"").unwrap());
        assert!(a.contains("\"period_units\": \"2pi\""));
    }

    #[test]
    fn table_lists_rows() {
        let r = Report::new("x", json!({"rows": [{"a": 1, "b": "xy"}, {"a": 22, "b": null}], "k": true}));
        let t = r.render(Format::Table);
        assert!(t.contains("k: true"));
        assert!(t.contains("[rows] 2 rows"));
        assert!(t.contains("22  -"));
    }
}
