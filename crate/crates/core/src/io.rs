//! JSON and DOT encodings of (coloured) graphs.
//!
//! JSON layout: `{"n":<int>,"edges":[[u,v],...],"colors":[...]}` with `u < v`,
//! edges sorted, and `colors` present only for coloured graphs.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Alpha, ColoredGraph, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

/// Wire form shared by graph files and embedded graph blocks of certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<u64>>,
}

impl GraphDoc {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDoc {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            colors: None,
        }
    }

    pub fn from_colored(g: &ColoredGraph) -> Self {
        GraphDoc {
            colors: Some(g.colors().to_vec()),
            ..GraphDoc::from_graph(&g.graph)
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let mut g = Graph::new(self.n);
        for &[u, v] in &self.edges {
            if u >= self.n || v >= self.n {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} out of range for n = {}", self.n)));
            }
            if !g.add_edge(u, v)? {
                return Err(Error::InvalidGraph(format!("duplicate edge {u}-{v}")));
            }
        }
        Ok(g)
    }

    /// Decodes to a coloured graph when `colors` is present. The colour bound is
    /// 2 when every colour is 0 or 1, otherwise unbounded.
    pub fn to_colored(&self) -> Result<Option<ColoredGraph>> {
        let g = self.to_graph()?;
        match &self.colors {
            None => Ok(None),
            Some(c) => {
                let alpha = if c.iter().all(|&x| x <= 1) { Alpha::Two } else { Alpha::Omega };
                ColoredGraph::new(g, alpha, c.clone()).map(Some)
            }
        }
    }
}

/// A decoded graph file: the graph and its colouring, if one was given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub graph: Graph,
    pub colored: Option<ColoredGraph>,
}

pub fn encode_json(g: &Graph) -> String {
    serde_json::to_string(&GraphDoc::from_graph(g)).expect("graph serializes")
}

pub fn encode_colored_json(g: &ColoredGraph) -> String {
    serde_json::to_string(&GraphDoc::from_colored(g)).expect("graph serializes")
}

pub fn encode_dot(g: &Graph, colors: Option<&[u64]>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        match colors {
            Some(c) => writeln!(out, "  {v} [label=\"{v}\", c={}];", c[v]).unwrap(),
            None => writeln!(out, "  {v} [label=\"{v}\"];").unwrap(),
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn encode(g: &Graph, colors: Option<&[u64]>, format: Format) -> String {
    match format {
        Format::Dot => encode_dot(g, colors),
        Format::Json => {
            let mut doc = GraphDoc::from_graph(g);
            doc.colors = colors.map(<[u64]>::to_vec);
            serde_json::to_string(&doc).expect("graph serializes")
        }
    }
}

/// Byte offset of a serde_json error inside `input`.
pub fn error_offset(input: &[u8], err: &serde_json::Error) -> usize {
    let (line, col) = (err.line(), err.column());
    if line == 0 {
        return 0;
    }
    let mut offset = 0;
    for (i, l) in input.split(|&b| b == b'\n').enumerate() {
        if i + 1 == line {
            return (offset + col.saturating_sub(1)).min(input.len());
        }
        offset += l.len() + 1;
    }
    input.len()
}

pub fn parse_json<T: serde::de::DeserializeOwned>(bytes: &[u8]) -> Result<T> {
    serde_json::from_slice(bytes).map_err(|e| Error::Parse {
        offset: error_offset(bytes, &e),
        message: e.to_string(),
    })
}

pub fn decode(bytes: &[u8]) -> Result<Decoded> {
    let doc: GraphDoc = parse_json(bytes)?;
    let colored = doc.to_colored()?;
    let graph = match &colored {
        Some(c) => c.graph.clone(),
        None => doc.to_graph()?,
    };
    Ok(Decoded { graph, colored })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fixed_encodings() {
        assert_eq!(encode_json(&Graph::clique(2)), r#"{"n":2,"edges":[[0,1]]}"#);
        assert_eq!(encode_json(&Graph::new(0)), r#"{"n":0,"edges":[]}"#);
        let p1 = ColoredGraph::new(Graph::path(1), Alpha::Two, vec![0, 1]).unwrap();
        let s = encode_colored_json(&p1);
        assert_eq!(s, r#"{"n":2,"edges":[[0,1]],"colors":[0,1]}"#);
        assert_eq!(decode(s.as_bytes()).unwrap().colored, Some(p1));
    }

    #[test]
    fn dot_output() {
        let d = encode_dot(&Graph::path(1), Some(&[3, 4]));
        assert!(d.starts_with("graph G {"));
        assert!(d.contains("1 [label=\"1\", c=4];"));
        assert!(d.contains("0 -- 1;"));
    }

    #[test]
    fn malformed_reports_offset() {
        let bad = br#"{"n":2,"edges":[[0,1]"#;
        match decode(bad) {
            Err(Error::Parse { offset, .. }) => assert!(offset + 1 >= bad.len()),
            other => panic!("unexpected {other:?}"),
        }
        let bad2 = b"{\"n\":2,\n \"edges\":[[0,x]]}";
        match decode(bad2) {
            Err(Error::Parse { offset, .. }) => assert_eq!(bad2[offset], b'x'),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(decode(br#"{"n":1,"edges":[[0,1]]}"#), Err(Error::InvalidGraph(_))));
        assert!(matches!(decode(br#"{"n":2,"edges":[[0,0]]}"#), Err(Error::InvalidGraph(_))));
    }

    fn arb_graph() -> impl Strategy<Value = (Graph, Option<Vec<u64>>)> {
        (0usize..=50).prop_flat_map(|n| {
            let pairs = if n < 2 { 0 } else { n * (n - 1) / 2 };
            (
                Just(n),
                proptest::collection::vec(any::<bool>(), pairs),
                proptest::option::of(proptest::collection::vec(0u64..1000, n)),
            )
                .prop_map(|(n, bits, colors)| {
                    let mut g = Graph::new(n);
                    let mut i = 0;
                    for u in 0..n {
                        for v in u + 1..n {
                            if bits[i] {
                                g.add_edge(u, v).unwrap();
                            }
                            i += 1;
                        }
                    }
                    (g, colors)
                })
        })
    }

    proptest! {
        #[test]
        fn json_round_trip((g, colors) in arb_graph()) {
            let s = encode(&g, colors.as_deref(), Format::Json);
            let d = decode(s.as_bytes()).unwrap();
            prop_assert_eq!(&d.graph, &g);
            prop_assert_eq!(d.colored.map(|c| c.colors().to_vec()), colors);
        }
    }
}
