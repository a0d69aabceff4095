//! Trace serialization: one JSON object per line, or a wide CSV for plotting.
//! Agent ids are 1-based; record `t = 0` is the initial state.

use std::fmt::Write as _;
use std::io::Write;

use serde_json::{json, Map, Value};

use super::simulate::Trace;
use crate::scalar::Scalar;

fn record<S: Scalar>(trace: &Trace<S>, t: usize) -> Value {
    let z = &trace.states[t];
    let (active, delta) = if t == 0 {
        (Vec::new(), Map::new())
    } else {
        let active: Vec<usize> = trace.active[t - 1].iter().map(|i| i + 1).collect();
        let delta = trace.deltas[t - 1].iter().map(|&(i, d)| ((i + 1).to_string(), json!(d.as_f64()))).collect();
        (active, delta)
    };
    json!({
        "t": t,
        "active": active,
        "x": z.actions().iter().map(|a| a.sign()).collect::<Vec<_>>(),
        "y": z.opinions().iter().map(|y| y.as_f64()).collect::<Vec<_>>(),
        "delta": Value::Object(delta),
    })
}

pub fn write_trace_jsonl<S: Scalar, W: Write>(trace: &Trace<S>, mut out: W) -> std::io::Result<()> {
    for t in 0..trace.states.len() {
        serde_json::to_writer(&mut out, &record(trace, t))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn trace_jsonl<S: Scalar>(trace: &Trace<S>) -> String {
    let mut buf = Vec::new();
    write_trace_jsonl(trace, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("json is utf-8")
}

pub fn write_trace_csv<S: Scalar, W: Write>(trace: &Trace<S>, mut out: W) -> std::io::Result<()> {
    out.write_all(trace_csv(trace).as_bytes())
}

pub fn trace_csv<S: Scalar>(trace: &Trace<S>) -> String {
    let n = trace.meta.n;
    let mut s = String::from("t");
    for i in 1..=n {
        write!(s, ",x_{i}").unwrap();
    }
    for i in 1..=n {
        write!(s, ",y_{i}").unwrap();
    }
    s.push('\n');
    for (t, z) in trace.states.iter().enumerate() {
        write!(s, "{t}").unwrap();
        for a in z.actions() {
            write!(s, ",{}", a.sign()).unwrap();
        }
        for y in z.opinions() {
            write!(s, ",{:e}", y.as_f64()).unwrap();
        }
        s.push('\n');
    }
    s
}
