//! Line format: `v <label>`, `e <a> <b>`, `l <a>`, `#` comments.

use super::LoopedGraph;
use crate::error::{Error, Result};

pub(super) fn emit(g: &LoopedGraph) -> String {
    let mut out = String::new();
    for l in g.labels() {
        out.push_str("v ");
        out.push_str(l);
        out.push('\n');
    }
    for (i, j) in g.edges() {
        out.push_str(&format!("e {} {}\n", g.label(i), g.label(j)));
    }
    for i in 0..g.n() {
        if g.has_loop(i) {
            out.push_str(&format!("l {}\n", g.label(i)));
        }
    }
    out
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_graphic() && b != b'#')
}

pub(super) fn parse(s: &str) -> Result<LoopedGraph> {
    let mut labels: Vec<String> = Vec::new();
    let mut pending: Vec<(usize, char, Vec<String>)> = Vec::new();
    for (lineno, raw) in s.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: lineno + 1, msg };
        let mut parts = line.split_whitespace();
        let tag = parts.next().expect("nonempty line");
        let args: Vec<String> = parts.map(str::to_string).collect();
        if let Some(bad) = args.iter().find(|a| !valid_label(a)) {
            return Err(err(format!("invalid label `{bad}`")));
        }
        match (tag, args.len()) {
            ("v", 1) => labels.push(args[0].clone()),
            ("e", 2) => pending.push((lineno + 1, 'e', args)),
            ("l", 1) => pending.push((lineno + 1, 'l', args)),
            ("v" | "e" | "l", k) => return Err(err(format!("`{tag}` takes {} argument(s), got {k}", if tag == "e" { 2 } else { 1 }))),
            _ => return Err(err(format!("unknown record `{tag}`"))),
        }
    }
    let mut g = LoopedGraph::new(&labels).map_err(|e| match e {
        Error::DuplicateLabel(l) => Error::Parse { line: 0, msg: format!("duplicate vertex `{l}`") },
        other => other,
    })?;
    for (line, kind, args) in pending {
        let wrap = |e: Error| Error::Parse { line, msg: e.to_string() };
        match kind {
            'e' => {
                if args[0] == args[1] {
                    return Err(Error::Parse { line, msg: "use `l` for loops".into() });
                }
                g.add_edge(&args[0], &args[1]).map_err(wrap)?
            }
            _ => g.add_loop(&args[0]).map_err(wrap)?,
        }
    }
    Ok(g)
}
