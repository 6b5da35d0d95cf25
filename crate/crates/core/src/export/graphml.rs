use std::fmt::Write as _;

use super::ExportedGraph;

const HEADER: &str = r#"<?xml version="1.0" encoding="UTF-8"?>
<graphml xmlns="http://graphml.graphdrawing.org/xmlns" xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance" xsi:schemaLocation="http://graphml.graphdrawing.org/xmlns http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd">
  <key id="x" for="node" attr.name="x" attr.type="double"/>
  <key id="y" for="node" attr.name="y" attr.type="double"/>
  <key id="r" for="node" attr.name="radius" attr.type="double"/>
  <key id="nl" for="node" attr.name="label" attr.type="int"/>
  <key id="nf" for="node" attr.name="features" attr.type="string"/>
  <key id="el" for="edge" attr.name="label" attr.type="int"/>
  <key id="ef" for="edge" attr.name="features" attr.type="string"/>
  <key id="eg" for="edge" attr.name="geometry" attr.type="string"/>
"#;

fn join(values: impl IntoIterator<Item = f64>) -> String {
    let mut s = String::new();
    for (i, v) in values.into_iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{v}");
    }
    s
}

/// Directed GraphML; vector attributes are space-separated reals.
pub fn to_graphml(g: &ExportedGraph) -> String {
    let mut s = String::from(HEADER);
    s.push_str("  <graph id=\"G\" edgedefault=\"directed\">\n");
    for n in &g.nodes {
        let _ = writeln!(s, "    <node id=\"n{}\">", n.id);
        let _ = writeln!(s, "      <data key=\"x\">{}</data>", n.location.x);
        let _ = writeln!(s, "      <data key=\"y\">{}</data>", n.location.y);
        let _ = writeln!(s, "      <data key=\"r\">{}</data>", n.radius);
        let _ = writeln!(s, "      <data key=\"nl\">{}</data>", n.label.code());
        let _ = writeln!(s, "      <data key=\"nf\">{}</data>", join(n.features));
        s.push_str("    </node>\n");
    }
    for l in &g.links {
        let m = l.metrics;
        let features = [m[0], m[1], m[2], l.label.code() as f64, m[3], m[4], m[5], m[6]];
        let _ = writeln!(
            s,
            "    <edge id=\"e{}\" source=\"n{}\" target=\"n{}\">",
            l.id, l.from, l.to
        );
        let _ = writeln!(s, "      <data key=\"el\">{}</data>", l.label.code());
        let _ = writeln!(s, "      <data key=\"ef\">{}</data>", join(features));
        let _ = writeln!(
            s,
            "      <data key=\"eg\">{}</data>",
            join(l.geometry.iter().flat_map(|p| [p.x, p.y]))
        );
        s.push_str("    </edge>\n");
    }
    s.push_str("  </graph>\n</graphml>\n");
    s
}
