use super::RfMatrix;

/// Graphviz rendering. Symmetric matrices become an undirected `graph`,
/// otherwise a `digraph`. Every nonzero entry is an edge labeled with its
/// canonical weight; diagonal entries appear as self-loops.
pub fn to_dot(m: &RfMatrix, name: &str) -> String {
    let undirected = m.is_symmetric();
    let (kind, arrow) = if undirected {
        ("graph", "--")
    } else {
        ("digraph", "->")
    };
    let mut out = format!("{kind} {} {{\n", quote(name));
    for l in m.labels() {
        out.push_str(&format!("    {};\n", quote(l)));
    }
    let n = m.dim();
    for i in 0..n {
        let start = if undirected { i } else { 0 };
        for j in start..n {
            let w = m.get(i, j);
            if w.is_zero() {
                continue;
            }
            out.push_str(&format!(
                "    {} {arrow} {} [label={}];\n",
                quote(&m.labels()[i]),
                quote(&m.labels()[j]),
                quote(&w.to_string())
            ));
        }
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
