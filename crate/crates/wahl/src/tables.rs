//! The two tables of class-T invariants: the parametric families and the eight
//! singularities used by the worked constructions.

use std::fmt::Write as _;

use serde_json::{Value, json};

use crate::classt::{ClassTInvariants, ClassTTriple, invariants};
use crate::error::{Result, pre};
use crate::hjcore::Int;
use crate::json::{int_value, ints_value};

/// The eight triples of the second table, in order.
pub const TABLE2: [(i64, i64, i64); 8] =
    [(1, 11, 3), (1, 19, 5), (1, 19, 13), (3, 23, 4), (1, 25, 17), (1, 35, 6), (1, 63, 34), (1, 252, 145)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    /// Family label such as `(k,2,1)`.
    pub family: String,
    pub inv: ClassTInvariants,
}

/// Rows of the first table at the given `k ≥ 2`, `m ≥ 3`.
pub fn table1(k: i64, m: i64) -> Result<Vec<TableRow>> {
    if k < 2 || m < 3 {
        return Err(pre(format!("table 1 needs k >= 2 and m >= 3, got k={k}, m={m}")));
    }
    let rows = [
        ("(1,2,1)", (1, 2, 1)),
        ("(k,2,1)", (k, 2, 1)),
        ("(1,m,1)", (1, m, 1)),
        ("(1,2m-1,m)", (1, 2 * m - 1, m)),
        ("(k,m,1)", (k, m, 1)),
        ("(1,3m-1,m)", (1, 3 * m - 1, m)),
    ];
    rows.iter()
        .map(|(f, (d, n, a))| {
            Ok(TableRow { family: f.to_string(), inv: invariants(&ClassTTriple::from_i64(*d, *n, *a)?) })
        })
        .collect()
}

pub fn table2() -> Vec<TableRow> {
    TABLE2
        .iter()
        .map(|&(d, n, a)| {
            let t = ClassTTriple::from_i64(d, n, a).expect("table entries are class T");
            TableRow { family: format!("({d},{n},{a})"), inv: invariants(&t) }
        })
        .collect()
}

fn join(v: &[Int]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Fixed-width text; identical bytes on every run.
pub fn render_text(rows: &[TableRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<12} {:<14} {:>5} {:>3}  B / R", "family", "(d,n,a)", "delta", "l");
    for row in rows {
        let t = &row.inv.triple;
        let triple = format!("({},{},{})", t.d(), t.n(), t.a());
        let _ = writeln!(
            out,
            "{:<12} {:<14} {:>5} {:>3}  B=({})",
            row.family,
            triple,
            row.inv.delta,
            row.inv.l,
            join(row.inv.b.as_slice())
        );
        let _ = writeln!(out, "{:<12} {:<14} {:>5} {:>3}  R=({})", "", "", "", "", join(&row.inv.r));
    }
    out
}

pub fn render_json(rows: &[TableRow]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|row| {
            let t = &row.inv.triple;
            json!({
                "family": row.family,
                "triple": ints_value(&[t.d().clone(), t.n().clone(), t.a().clone()]),
                "delta": int_value(&row.inv.delta),
                "l": row.inv.l,
                "b": ints_value(row.inv.b.as_slice()),
                "r": ints_value(&row.inv.r),
            })
        })
        .collect();
    json!({ "schema_version": crate::json::SCHEMA_VERSION, "rows": rows })
}
