//! The on-disk code format and report serialization helpers.
//!
//! A code file is plain UTF-8 with LF line endings: a header line `q k n`
//! followed by k lines of n integers in [0, q), each integer the canonical
//! encoding of a field element. Lines starting with `#` are comments and may
//! appear anywhere; blank lines are ignored. Writing is deterministic so
//! files can be compared byte for byte.

use std::sync::Arc;

use crate::algebra::Field;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::search::SearchReport;

pub fn parse_code_file(text: &str) -> Result<LinearCode> {
    let mut rows: Vec<(usize, Vec<u64>)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut nums = Vec::new();
        for tok in line.split_whitespace() {
            let v: u64 = tok.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                msg: format!("`{tok}` is not a nonnegative integer"),
            })?;
            nums.push(v);
        }
        rows.push((lineno + 1, nums));
    }
    let Some((header_line, header)) = rows.first() else {
        return Err(Error::Parse {
            line: 1,
            msg: "empty file".into(),
        });
    };
    if header.len() != 3 {
        return Err(Error::Parse {
            line: *header_line,
            msg: "header must be `q k n`".into(),
        });
    }
    let (q, k, n) = (header[0], header[1] as usize, header[2] as usize);
    if q > crate::algebra::MAX_FIELD_ORDER as u64 {
        return Err(Error::Parse {
            line: *header_line,
            msg: format!("field order {q} beyond the supported limit"),
        });
    }
    let field = Field::from_order(q as u32).map_err(|e| Error::Parse {
        line: *header_line,
        msg: e.to_string(),
    })?;
    if rows.len() != k + 1 {
        return Err(Error::Parse {
            line: *header_line,
            msg: format!("expected {k} generator rows, found {}", rows.len() - 1),
        });
    }
    let mut gen_rows: Vec<Vec<u32>> = Vec::with_capacity(k);
    for (lineno, nums) in &rows[1..] {
        if nums.len() != n {
            return Err(Error::Parse {
                line: *lineno,
                msg: format!("expected {n} entries, found {}", nums.len()),
            });
        }
        if let Some(&bad) = nums.iter().find(|&&v| v >= q) {
            return Err(Error::Parse {
                line: *lineno,
                msg: format!("entry {bad} is not below q = {q}"),
            });
        }
        gen_rows.push(nums.iter().map(|&v| v as u32).collect());
    }
    let code = LinearCode::from_u32_rows(field, &gen_rows).map_err(|e| match e {
        Error::RankDeficient { rank, rows } => Error::Parse {
            line: *header_line,
            msg: format!("generator rows are dependent (rank {rank} of {rows})"),
        },
        Error::ZeroCode => Error::Parse {
            line: *header_line,
            msg: "generator spans only the zero code".into(),
        },
        other => other,
    })?;
    Ok(code)
}

pub fn write_code_file(code: &LinearCode) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# [{}, {}] code over GF({})\n",
        code.n(),
        code.k(),
        code.field().order()
    ));
    out.push_str(&format!(
        "{} {} {}\n",
        code.field().order(),
        code.k(),
        code.n()
    ));
    for i in 0..code.k() {
        let row: Vec<String> = code
            .generator()
            .row(i)
            .iter()
            .map(|e| e.value().to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn report_json(report: &SearchReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn verdicts_csv(report: &SearchReport) -> String {
    let mut out = String::from("id,q,k,n,gamma,d_perp,kung_slack,class,open_regime\n");
    for v in &report.verdicts {
        let d_perp = v.d_perp.map_or(String::from(""), |d| d.to_string());
        let slack = v.kung_slack.map_or(String::from(""), |s| s.to_string());
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            v.id, v.q, v.k, v.n, v.gamma, d_perp, slack, v.class, v.open_regime
        ));
    }
    out
}

/// Write a point listing, one point per line: `encoding: (c1, ..., ck)`.
pub fn point_listing(points: &crate::construct::PointSet) -> String {
    let mut out = String::new();
    let field: &Arc<Field> = points.field();
    for p in points.points() {
        let coords: Vec<String> = p.iter().map(|e| e.value().to_string()).collect();
        out.push_str(&format!(
            "{}: ({})\n",
            crate::construct::encoding(field, p),
            coords.join(", ")
        ));
    }
    out
}
