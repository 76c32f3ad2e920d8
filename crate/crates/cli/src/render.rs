//! Plain-text, DOT and JSON renderings. All output is deterministic.

use std::collections::BTreeMap;
use std::fmt::Write;

use cohint::bps::{IntegralityReport, Rank1Report};
use cohint::group_rep::{is_symmetric, PairVG};
use cohint::poset::PosetData;

pub fn describe(pair: &PairVG) -> String {
    format!(
        "rank {}, dim G {}, |W| {}, dim V {}, d {}, symmetric: {}\n",
        pair.rank(),
        pair.group.dim,
        pair.group.weyl_order(),
        pair.rep.dim(),
        pair.d(),
        if is_symmetric(&pair.rep) { "yes" } else { "no" },
    )
}

fn series(m: &BTreeMap<i64, i64>) -> String {
    let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn poset_table(pd: &PosetData) -> String {
    let mut out = String::new();
    writeln!(out, "{:>5}  {:<16} {:>7} {:>7} {:>6} {:>4} {:>4} {:>6} {:>5}", "class", "cocharacter", "dim V^λ", "roots^λ", "dim g_λ", "d", "r", "orbit", "|W̄|")
        .unwrap();
    for (i, c) in pd.classes.iter().enumerate() {
        writeln!(
            out,
            "{:>5}  {:<16} {:>7} {:>7} {:>6} {:>4} {:>4} {:>6} {:>5}",
            i,
            c.rep_cochar.to_string(),
            c.v_fixed_key.len(),
            c.root_key.len(),
            c.g_lambda_dim,
            c.d,
            c.r,
            pd.orbit_of(i),
            pd.symmetry[i].cosets.len(),
        )
        .unwrap();
    }
    writeln!(out, "{} classes, {} orbits, {} covering edges", pd.classes.len(), pd.orbits.len(), pd.hasse.len()).unwrap();
    out
}

/// Hasse diagram with edges pointing from a class to the classes covering it.
pub fn dot(pd: &PosetData) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for (i, c) in pd.classes.iter().enumerate() {
        writeln!(
            out,
            "  c{i} [label=\"{i}: {} dim g {} orbit {}\"];",
            c.rep_cochar,
            c.g_lambda_dim,
            pd.orbit_of(i)
        )
        .unwrap();
    }
    for (a, b) in &pd.hasse {
        writeln!(out, "  c{a} -> c{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn verify_table(r: &IntegralityReport) -> String {
    let mut out = String::new();
    for (k, c) in r.contributions.iter().enumerate() {
        writeln!(
            out,
            "orbit {k}: classes {:?}, |W̄| {}, dim g_λ {}, ε {:?}, BPS dims {}",
            c.classes,
            c.relative_weyl_order,
            c.g_lambda_dim,
            c.epsilon,
            series(&c.bps_dims)
        )
        .unwrap();
    }
    write!(out, "{:>6} {:>8}", "degree", "target").unwrap();
    for k in 0..r.contributions.len() {
        write!(out, " {:>6}", format!("o{k}")).unwrap();
    }
    writeln!(out, " {:>8}", "residual").unwrap();
    for (&n, &res) in &r.residual {
        let target = r.target_series.get(&n).copied().unwrap_or(0);
        let parts: Vec<i64> = r.contributions.iter().map(|c| c.dims.get(&n).copied().unwrap_or(0)).collect();
        if target == 0 && res == 0 && parts.iter().all(|&x| x == 0) {
            continue;
        }
        write!(out, "{n:>6} {target:>8}").unwrap();
        for x in parts {
            write!(out, " {x:>6}").unwrap();
        }
        writeln!(out, " {res:>8}").unwrap();
    }
    if r.pass {
        writeln!(out, "PASS: identity holds up to shifted degree {}", r.verified_to).unwrap();
    } else {
        let bad: Vec<String> = r.residual.iter().filter(|(_, &v)| v != 0).map(|(n, v)| format!("{n}: {v}")).collect();
        writeln!(out, "FAIL: nonzero residual {{{}}} (checked up to {})", bad.join(", "), r.verified_to).unwrap();
    }
    out
}

pub fn report_json(r: &IntegralityReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

pub fn rank1_table(r: &Rank1Report) -> String {
    let mut out = String::new();
    writeln!(out, "{:>6} {:>8} {:>8}", "degree", "expected", "computed").unwrap();
    let degrees: std::collections::BTreeSet<i64> = r.expected.keys().chain(r.computed.keys()).copied().collect();
    for n in degrees {
        let e = r.expected.get(&n).copied().unwrap_or(0);
        let c = r.computed.get(&n).copied().unwrap_or(0);
        writeln!(out, "{n:>6} {e:>8} {c:>8}").unwrap();
    }
    writeln!(out, "total {} vs {}", r.expected.values().sum::<i64>(), r.computed.values().sum::<i64>()).unwrap();
    writeln!(out, "match: {}", if r.matches { "yes" } else { "no" }).unwrap();
    out
}
