//! `qwalk/1` JSON documents for graphs, states, partitions, twin structures
//! and sign vectors.
//!
//! Graph document:
//!
//! ```json
//! {"format": "qwalk/1", "n": 3, "edges": [[0, 1], [1, 2, -1.0]],
//!  "tails": [{"attach": 2, "prefix": [2.0]}], "labels": ["a", "b", "c"]}
//! ```
//!
//! An omitted edge weight means 1.0. When `labels` is present, edge endpoints
//! may be given as label strings.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{TailSpec, WeightedGraph};
use crate::partition::Partition;
use crate::signed::SignVector;
use crate::state::PureState;

pub const FORMAT: &str = "qwalk/1";

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn check_format(v: &Value, required: bool) -> Result<()> {
    match v.get("format") {
        Some(Value::String(s)) if s == FORMAT => Ok(()),
        Some(other) => Err(perr(format!("unsupported format {other}"))),
        None if required => Err(perr("missing \"format\": \"qwalk/1\"")),
        None => Ok(()),
    }
}

fn vertex_ref(v: &Value, n: usize, labels: Option<&[String]>) -> Result<usize> {
    let idx = match v {
        Value::Number(x) => x
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| perr(format!("bad vertex {x}")))?,
        Value::String(s) => match labels.and_then(|l| l.iter().position(|x| x == s)) {
            Some(i) => i,
            None => s.parse().map_err(|_| perr(format!("unknown vertex label `{s}`")))?,
        },
        other => return Err(perr(format!("bad vertex {other}"))),
    };
    if idx >= n {
        return Err(Error::VertexOutOfRange { vertex: idx, n });
    }
    Ok(idx)
}

fn number(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| perr(format!("{what} must be a number")))
}

/// Parses a graph document.
pub fn graph_from_json(text: &str) -> Result<WeightedGraph> {
    let v: Value = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
    graph_from_value(&v)
}

pub fn graph_from_value(v: &Value) -> Result<WeightedGraph> {
    check_format(v, true)?;
    let labels: Option<Vec<String>> = match v.get("labels") {
        None | Some(Value::Null) => None,
        Some(l) => Some(serde_json::from_value(l.clone()).map_err(|e| perr(e.to_string()))?),
    };
    let n = match v.get("n") {
        Some(x) => x.as_u64().ok_or_else(|| perr("\"n\" must be a non-negative integer"))? as usize,
        None => labels
            .as_ref()
            .map(Vec::len)
            .ok_or_else(|| perr("missing \"n\""))?,
    };
    let mut edges = Vec::new();
    if let Some(list) = v.get("edges") {
        let list = list.as_array().ok_or_else(|| perr("\"edges\" must be an array"))?;
        for e in list {
            let e = e.as_array().ok_or_else(|| perr("edge must be [a, b] or [a, b, w]"))?;
            if !(2..=3).contains(&e.len()) {
                return Err(perr("edge must be [a, b] or [a, b, w]"));
            }
            let a = vertex_ref(&e[0], n, labels.as_deref())?;
            let b = vertex_ref(&e[1], n, labels.as_deref())?;
            let w = match e.get(2) {
                Some(w) => number(w, "edge weight")?,
                None => 1.0,
            };
            edges.push((a, b, w));
        }
    }
    let mut g = WeightedGraph::new(n, edges)?;
    if let Some(tails) = v.get("tails") {
        let tails = tails.as_array().ok_or_else(|| perr("\"tails\" must be an array"))?;
        let mut specs = Vec::new();
        for t in tails {
            let attach = vertex_ref(
                t.get("attach").ok_or_else(|| perr("tail needs \"attach\""))?,
                n,
                labels.as_deref(),
            )?;
            let prefix = match t.get("prefix") {
                Some(p) => p
                    .as_array()
                    .ok_or_else(|| perr("tail prefix must be an array"))?
                    .iter()
                    .map(|w| number(w, "tail weight"))
                    .collect::<Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            let bulk = match t.get("bulk") {
                Some(b) => number(b, "tail bulk weight")?,
                None => 1.0,
            };
            specs.push(TailSpec { attach, prefix, bulk });
        }
        g = g.with_tails(specs)?;
    }
    if let Some(l) = labels {
        g = g.with_labels(l)?;
    }
    Ok(g)
}

/// Canonical JSON value for a graph: edges sorted with explicit weights.
pub fn graph_to_value(g: &WeightedGraph) -> Value {
    let edges: Vec<Value> = g.edges().map(|(a, b, w)| json!([a, b, w])).collect();
    let mut doc = json!({ "format": FORMAT, "n": g.n(), "edges": edges });
    if g.has_tails() {
        let tails: Vec<Value> = g
            .tails()
            .iter()
            .map(|t| {
                let mut o = json!({ "attach": t.attach, "prefix": t.prefix });
                if t.bulk != 1.0 {
                    o["bulk"] = json!(t.bulk);
                }
                o
            })
            .collect();
        doc["tails"] = Value::Array(tails);
    }
    if let Some(l) = g.labels() {
        doc["labels"] = json!(l);
    }
    doc
}

pub fn graph_to_json(g: &WeightedGraph) -> String {
    serde_json::to_string_pretty(&graph_to_value(g)).expect("graph serializes")
}

/// Parses a state document, resolving vertex labels against `g`.
pub fn state_from_json(text: &str, g: &WeightedGraph) -> Result<PureState> {
    let v: Value = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
    check_format(&v, true)?;
    let list = v
        .get("amplitudes")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("missing \"amplitudes\" array"))?;
    let mut amps = Vec::new();
    for a in list {
        let a = a.as_array().ok_or_else(|| perr("amplitude must be [vertex, re, im]"))?;
        if a.len() != 3 {
            return Err(perr("amplitude must be [vertex, re, im]"));
        }
        let vtx = vertex_ref(&a[0], g.n(), g.labels())?;
        amps.push((vtx, Complex64::new(number(&a[1], "re")?, number(&a[2], "im")?)));
    }
    let s = PureState::new(amps)?;
    s.check_within(g.n())?;
    Ok(s)
}

pub fn state_to_json(s: &PureState) -> String {
    let amps: Vec<Value> = s
        .support()
        .iter()
        .map(|(v, z)| json!([v, z.re, z.im]))
        .collect();
    serde_json::to_string_pretty(&json!({ "format": FORMAT, "amplitudes": amps }))
        .expect("state serializes")
}

#[derive(Debug, Serialize, Deserialize)]
struct PartitionDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    format: Option<String>,
    cells: Vec<Vec<usize>>,
}

pub fn partition_from_json(text: &str, n: usize) -> Result<Partition> {
    let d: PartitionDoc = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
    if let Some(f) = &d.format {
        if f != FORMAT {
            return Err(perr(format!("unsupported format {f}")));
        }
    }
    Partition::new(n, d.cells)
}

pub fn partition_to_json(p: &Partition) -> String {
    serde_json::to_string_pretty(&PartitionDoc {
        format: Some(FORMAT.into()),
        cells: p.cells().to_vec(),
    })
    .expect("partition serializes")
}

/// Twin structure document: `x1` and `x2` with the bijection given by position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwinDoc {
    pub x1: Vec<usize>,
    pub x2: Vec<usize>,
}

pub fn twin_doc_from_json(text: &str) -> Result<TwinDoc> {
    serde_json::from_str(text).map_err(|e| perr(e.to_string()))
}

#[derive(Debug, Serialize, Deserialize)]
struct SignDoc {
    d: Vec<i64>,
    delta: i64,
}

pub fn sign_vector_from_json(text: &str) -> Result<SignVector> {
    let d: SignDoc = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
    let to_sign = |x: i64| match x {
        1 => Ok(1i8),
        -1 => Ok(-1i8),
        _ => Err(perr(format!("sign entries must be ±1, got {x}"))),
    };
    let signs = d.d.into_iter().map(to_sign).collect::<Result<Vec<_>>>()?;
    SignVector::new(signs, to_sign(d.delta)?)
}

pub fn sign_vector_to_json(s: &SignVector) -> String {
    serde_json::to_string(&json!({ "d": s.signs(), "delta": s.delta() })).expect("serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omitted_weight_is_one() {
        let g = graph_from_json(r#"{"format":"qwalk/1","n":2,"edges":[[0,1]]}"#).unwrap();
        assert_eq!(g.weight(0, 1), 1.0);
    }

    #[test]
    fn zero_weight_rejected() {
        let e = graph_from_json(r#"{"format":"qwalk/1","n":2,"edges":[[0,1,0]]}"#);
        assert_eq!(e, Err(Error::ZeroWeight(0, 1)));
    }

    #[test]
    fn format_required() {
        assert!(matches!(
            graph_from_json(r#"{"n":2,"edges":[[0,1]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(graph_from_json("not json").is_err());
    }

    #[test]
    fn labels_resolve() {
        let g = graph_from_json(
            r#"{"format":"qwalk/1","labels":["x","y","z"],"edges":[["x","z",2.0]],
                "tails":[{"attach":"y"}]}"#,
        )
        .unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.weight(0, 2), 2.0);
        assert_eq!(g.tails()[0].attach, 1);
        assert_eq!(g.resolve("z").unwrap(), 2);
    }

    #[test]
    fn state_document() {
        let g = WeightedGraph::unweighted(3, [(0, 1), (1, 2)]).unwrap();
        let s = state_from_json(
            r#"{"format":"qwalk/1","amplitudes":[[0,0.6,0],[2,0,0.8]]}"#,
            &g,
        )
        .unwrap();
        assert_eq!(s.amplitude(2), Complex64::new(0.0, 0.8));
        let back = state_from_json(&state_to_json(&s), &g).unwrap();
        assert_eq!(back, s);
        assert!(state_from_json(r#"{"format":"qwalk/1","amplitudes":[[5,1,0]]}"#, &g).is_err());
    }

    #[test]
    fn sign_vector_document() {
        let s = sign_vector_from_json(r#"{"d":[1,-1,1],"delta":-1}"#).unwrap();
        assert_eq!(s.signs(), &[1, -1, 1]);
        assert_eq!(s.delta(), -1);
        assert!(sign_vector_from_json(r#"{"d":[2],"delta":1}"#).is_err());
        let again = sign_vector_from_json(&sign_vector_to_json(&s)).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn partition_document() {
        let p = partition_from_json(r#"{"cells":[[2,0],[1]]}"#, 3).unwrap();
        assert_eq!(p.cells(), &[vec![0, 2], vec![1]]);
        assert!(partition_from_json(r#"{"cells":[[0],[0,1,2]]}"#, 3).is_err());
    }
}
