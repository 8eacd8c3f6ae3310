use anyhow::{bail, Result};
use serde_json::{json, Value};

use crate::cache::ResultRecord;

/// `{job, rows, verdicts, engine, timestamp}`; everything but `timestamp`
/// is a function of the job.
pub fn json(record: &ResultRecord) -> Result<String> {
    let doc = json!({
        "job": record.job,
        "rows": record.payload.rows,
        "verdicts": record.payload.verdicts,
        "engine": { "version": record.engine_version },
        "timestamp": record.timestamp,
    });
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

fn cell(v: &Value) -> Result<String> {
    Ok(match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) if !s.contains([',', '\n', '"']) => s.clone(),
        other => bail!("value {other} does not fit a bare CSV cell"),
    })
}

/// Header `d,dim[,extra..]` then one line per row, LF-terminated.
pub fn csv(record: &ResultRecord) -> Result<String> {
    let rows = &record.payload.rows;
    let header: Vec<&String> = match rows.first() {
        Some(r) => r.keys().collect(),
        None => return Ok("d,dim\n".into()),
    };
    let mut out = header.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(",");
    out.push('\n');
    for r in rows {
        if r.len() != header.len() || !header.iter().all(|k| r.contains_key(*k)) {
            bail!("rows do not share one set of columns");
        }
        let cells = header.iter().map(|k| cell(&r[*k])).collect::<Result<Vec<_>>>()?;
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}
