//! Canonical line-oriented graph text.
//!
//! ```text
//! shockgraph v1 <width> <height> <lambda> <bbox_scale|none>
//! # node labels: Source=0 Sink=1 Junction=2; link labels: Degenerate=0 SemiDegenerate=1 Regular=2
//! n <id> <label> <x> <y> <r> <f0> .. <f57>
//! e <id> <from> <to> <label> <s> <kappa> <area> <sB+> <kB+> <sB-> <kB->
//! g <x> <y>
//! ```
//!
//! Each `e` line is followed by its geometry samples. Reals use the shortest
//! representation that parses back to the same value.

use std::fmt::Write as _;

use super::{ExportedGraph, ExportedLink, ExportedNode, GEOMETRY_SAMPLES};
use crate::error::{Error, Result};
use crate::features::NODE_FEATURE_LEN;
use crate::geom::Point2;
use crate::graph::{LinkLabel, NodeLabel};

const MAGIC: &str = "shockgraph";
const VERSION: &str = "v1";
const LABEL_LINE: &str =
    "# node labels: Source=0 Sink=1 Junction=2; link labels: Degenerate=0 SemiDegenerate=1 Regular=2";

pub fn to_sgtext(g: &ExportedGraph) -> String {
    let mut s = String::new();
    let scale = g.bbox_scale.map_or("none".to_string(), |v| v.to_string());
    let _ = writeln!(s, "{MAGIC} {VERSION} {} {} {} {scale}", g.width, g.height, g.lambda);
    s.push_str(LABEL_LINE);
    s.push('\n');
    for n in &g.nodes {
        let _ = write!(
            s,
            "n {} {} {} {} {}",
            n.id,
            n.label.code(),
            n.location.x,
            n.location.y,
            n.radius
        );
        for f in n.features {
            let _ = write!(s, " {f}");
        }
        s.push('\n');
    }
    for l in &g.links {
        let _ = write!(s, "e {} {} {} {}", l.id, l.from, l.to, l.label.code());
        for m in l.metrics {
            let _ = write!(s, " {m}");
        }
        s.push('\n');
        for p in &l.geometry {
            let _ = writeln!(s, "g {} {}", p.x, p.y);
        }
    }
    s
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let t = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    t.parse().map_err(|_| Error::parse(line, format!("bad {what} {t:?}")))
}

pub fn parse_sgtext(text: &str) -> Result<ExportedGraph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let mut tok = header.split_whitespace();
    if tok.next() != Some(MAGIC) || tok.next() != Some(VERSION) {
        return Err(Error::parse(1, "expected header 'shockgraph v1'"));
    }
    let width = num(tok.next(), 1, "width")?;
    let height = num(tok.next(), 1, "height")?;
    let lambda = num(tok.next(), 1, "lambda")?;
    let bbox_scale = match tok.next() {
        Some("none") => None,
        t => Some(num(t, 1, "bbox scale")?),
    };
    let mut g = ExportedGraph {
        width,
        height,
        lambda,
        bbox_scale,
        nodes: Vec::new(),
        links: Vec::new(),
    };
    for (ln, line) in lines {
        let mut tok = line.split_whitespace();
        match tok.next() {
            None => {}
            Some(t) if t.starts_with('#') => {}
            Some("n") => {
                let id = num(tok.next(), ln, "node id")?;
                let code: u8 = num(tok.next(), ln, "node label")?;
                let label = NodeLabel::from_code(code).ok_or_else(|| Error::parse(ln, "bad node label"))?;
                let x = num(tok.next(), ln, "x")?;
                let y = num(tok.next(), ln, "y")?;
                let radius = num(tok.next(), ln, "radius")?;
                let mut features = [0.0; NODE_FEATURE_LEN];
                for f in features.iter_mut() {
                    *f = num(tok.next(), ln, "feature")?;
                }
                if tok.next().is_some() {
                    return Err(Error::parse(ln, "trailing node fields"));
                }
                g.nodes.push(ExportedNode {
                    id,
                    label,
                    location: Point2::new(x, y),
                    radius,
                    features,
                });
            }
            Some("e") => {
                let id = num(tok.next(), ln, "link id")?;
                let from = num(tok.next(), ln, "from")?;
                let to = num(tok.next(), ln, "to")?;
                let code: u8 = num(tok.next(), ln, "link label")?;
                let label = LinkLabel::from_code(code).ok_or_else(|| Error::parse(ln, "bad link label"))?;
                let mut metrics = [0.0; 7];
                for m in metrics.iter_mut() {
                    *m = num(tok.next(), ln, "link metric")?;
                }
                g.links.push(ExportedLink {
                    id,
                    from,
                    to,
                    label,
                    metrics,
                    geometry: Vec::with_capacity(GEOMETRY_SAMPLES),
                });
            }
            Some("g") => {
                let link = g
                    .links
                    .last_mut()
                    .ok_or_else(|| Error::parse(ln, "geometry before any link"))?;
                let x = num(tok.next(), ln, "x")?;
                let y = num(tok.next(), ln, "y")?;
                link.geometry.push(Point2::new(x, y));
            }
            Some(t) => return Err(Error::parse(ln, format!("unknown record {t:?}"))),
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_round_trips() {
        let g = ExportedGraph {
            width: 10.0,
            height: 20.0,
            lambda: 1.0,
            bbox_scale: None,
            nodes: vec![],
            links: vec![],
        };
        let text = to_sgtext(&g);
        assert!(text.starts_with("shockgraph v1 10 20 1 none\n"));
        assert_eq!(parse_sgtext(&text).unwrap(), g);
    }

    #[test]
    fn awkward_reals_round_trip_exactly() {
        let mut features = [0.0; NODE_FEATURE_LEN];
        features[0] = 0.1 + 0.2;
        features[1] = 1e-300;
        features[2] = -std::f64::consts::PI;
        let g = ExportedGraph {
            width: 3.5,
            height: 1e9,
            lambda: 0.25,
            bbox_scale: Some(2.0),
            nodes: vec![ExportedNode {
                id: 0,
                label: NodeLabel::Junction,
                location: Point2::new(1.0 / 3.0, 2.0 / 3.0),
                radius: 7.0,
                features,
            }],
            links: vec![ExportedLink {
                id: 0,
                from: 0,
                to: 0,
                label: LinkLabel::SemiDegenerate,
                metrics: [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0e-17],
                geometry: vec![Point2::new(0.1, 0.7); 3],
            }],
        };
        assert_eq!(parse_sgtext(&to_sgtext(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_bad_header() {
        assert!(parse_sgtext("graph v1 1 1 1 none\n").is_err());
    }
}
