//! Line-oriented text formats.
//!
//! Every file may end with a `# sha256 <hex>` line covering all bytes before
//! it. A missing checksum is accepted; a wrong one is a parse error. Other
//! `#` lines are comments.
//!
//! Matroid (`.bm`):
//!
//! ```text
//! bm <rank> <size>
//! labels <e1> <e2> ...
//! <rank rows of `size` 0/1 characters>
//! ```
//!
//! Matroids with no binary representation use the `bases` tag, with one
//! basis per line as space-separated labels (`-` for the empty basis).
//!
//! Graft (`.graft`):
//!
//! ```text
//! graft
//! vertices <v1> <v2> ...
//! terminals <t1> ...
//! edge <label> <u> <v>
//! ```
//!
//! Cyclic decomposition (`.cyc`): `cyclic`, then `bag <host vertex> <graft
//! vertices..>` lines (host vertices in order) and `hostedge <label> <x> <y>`.

use deltagraphic::graft::CyclicDecomposition;
use deltagraphic::{Error, Graft, Matroid, MultiGraph, Result};
use sha2::{Digest, Sha256};

const CHECKSUM: &str = "# sha256 ";

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Append the checksum line.
pub fn seal(body: &str) -> String {
    let digest = Sha256::digest(body.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("{body}{CHECKSUM}{hex}\n")
}

/// Check and strip the trailing checksum line; return the non-comment lines.
fn unseal(text: &str) -> Result<Vec<String>> {
    let trimmed = text.trim_end();
    let start = trimmed.rfind('\n').map_or(0, |i| i + 1);
    let body = match trimmed[start..].strip_prefix(CHECKSUM) {
        Some(hex) => {
            let body = &text[..start];
            if seal(body) != format!("{body}{CHECKSUM}{}\n", hex.trim()) {
                return Err(parse_err("checksum mismatch"));
            }
            body
        }
        None => text,
    };
    Ok(body
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect())
}

fn keyword<'a>(line: Option<&'a String>, key: &str) -> Result<Vec<&'a str>> {
    let line = line.ok_or_else(|| parse_err(format!("missing `{key}` line")))?;
    let mut it = line.split_whitespace();
    if it.next() != Some(key) {
        return Err(parse_err(format!("expected `{key}`, found `{line}`")));
    }
    Ok(it.collect())
}

fn number(s: Option<&&str>, what: &str) -> Result<usize> {
    s.and_then(|x| x.parse().ok()).ok_or_else(|| parse_err(format!("bad {what} in header")))
}

pub fn print_matroid(m: &Matroid) -> String {
    let mut s = String::new();
    match m.representation() {
        Some(a) => {
            s.push_str(&format!("bm {} {}\nlabels {}\n", m.rank(), m.len(), m.labels().join(" ")));
            for r in a.row_strings() {
                s.push_str(&r);
                s.push('\n');
            }
        }
        None => {
            s.push_str(&format!("bases {} {}\nlabels {}\n", m.rank(), m.len(), m.labels().join(" ")));
            for b in m.bases().unwrap_or_default() {
                let l = m.labels_of(b);
                s.push_str(&if l.is_empty() { "-".to_string() } else { l.join(" ") });
                s.push('\n');
            }
        }
    }
    seal(&s)
}

pub fn parse_matroid(text: &str) -> Result<Matroid> {
    let lines = unseal(text)?;
    let header: Vec<&str> = lines.first().map(|l| l.split_whitespace().collect()).unwrap_or_default();
    let (rank, size) = (number(header.get(1), "rank")?, number(header.get(2), "size")?);
    let labels: Vec<String> = keyword(lines.get(1), "labels")?.iter().map(|s| s.to_string()).collect();
    if labels.len() != size {
        return Err(parse_err(format!("header says {size} elements, label row has {}", labels.len())));
    }
    let body = &lines[2.min(lines.len())..];
    let m = match header.first().copied() {
        Some("bm") => {
            if body.iter().any(|r| r.len() != size || r.chars().any(|c| c != '0' && c != '1')) {
                return Err(parse_err(format!("matrix rows must be {size} characters of 0/1")));
            }
            let refs: Vec<&str> = body.iter().map(|s| s.as_str()).collect();
            let a = deltagraphic::Gf2Matrix::from_strings(deltagraphic::matroid::numbered("r", refs.len()), labels, &refs)
                .map_err(|e| parse_err(e.to_string()))?;
            Matroid::from_matrix(&a).map_err(|e| parse_err(e.to_string()))?
        }
        Some("bases") => {
            let mut sets = Vec::new();
            for row in body {
                let names: Vec<&str> = if row == "-" { Vec::new() } else { row.split_whitespace().collect() };
                let mut s = 0u64;
                for n in names {
                    let i = labels.iter().position(|l| l == n).ok_or_else(|| parse_err(format!("unknown element `{n}`")))?;
                    s |= 1u64 << i;
                }
                sets.push(s);
            }
            Matroid::from_bases(labels, sets).map_err(|e| parse_err(e.to_string()))?
        }
        _ => return Err(parse_err("expected a `bm` or `bases` header")),
    };
    if m.rank() != rank {
        return Err(parse_err(format!("header says rank {rank}, matrix has rank {}", m.rank())));
    }
    Ok(m)
}

pub fn print_graft(g: &Graft) -> String {
    let h = g.graph();
    let mut s = format!("graft\nvertices {}\nterminals {}\n", h.vertices().join(" "), g.terminal_labels().join(" "));
    for e in h.edges() {
        s.push_str(&format!("edge {} {} {}\n", e.label, h.vertices()[e.u], h.vertices()[e.v]));
    }
    seal(&s)
}

pub fn parse_graft(text: &str) -> Result<Graft> {
    let lines = unseal(text)?;
    keyword(lines.first(), "graft")?;
    let vertices = keyword(lines.get(1), "vertices")?;
    let terminals = keyword(lines.get(2), "terminals")?;
    let mut edges = Vec::new();
    for l in &lines[3.min(lines.len())..] {
        match l.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["edge", e, u, v] => edges.push((*e, *u, *v)),
            _ => return Err(parse_err(format!("bad edge line `{l}`"))),
        }
    }
    Graft::from_parts(&vertices, &edges, &terminals).map_err(|e| parse_err(e.to_string()))
}

pub fn print_cyclic(d: &CyclicDecomposition) -> String {
    let h = &d.host;
    let mut s = String::from("cyclic\n");
    for (x, bag) in h.vertices().iter().zip(&d.bags) {
        s.push_str(&format!("bag {x} {}\n", bag.join(" ")));
    }
    for e in h.edges() {
        s.push_str(&format!("hostedge {} {} {}\n", e.label, h.vertices()[e.u], h.vertices()[e.v]));
    }
    seal(&s)
}

pub fn parse_cyclic(text: &str) -> Result<CyclicDecomposition> {
    let lines = unseal(text)?;
    keyword(lines.first(), "cyclic")?;
    let mut host = MultiGraph::new();
    let mut bags = Vec::new();
    for l in &lines[1..] {
        let w: Vec<&str> = l.split_whitespace().collect();
        match w.as_slice() {
            ["bag", x, rest @ ..] => {
                host.add_vertex(x).map_err(|e| parse_err(e.to_string()))?;
                bags.push(rest.iter().map(|s| s.to_string()).collect());
            }
            ["hostedge", e, x, y] => {
                host.add_edge(e, x, y).map_err(|e| parse_err(e.to_string()))?;
            }
            _ => return Err(parse_err(format!("bad decomposition line `{l}`"))),
        }
    }
    CyclicDecomposition::new(host, bags).map_err(|e| parse_err(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use deltagraphic::catalog;

    #[test]
    fn matroid_round_trip() {
        for m in [catalog::r10(), catalog::fano().dual(), catalog::uniform(2, 4).unwrap(), Matroid::empty()] {
            let text = print_matroid(&m);
            let back = parse_matroid(&text).unwrap();
            assert!(back.same_as(&m));
            assert_eq!(print_matroid(&back), text);
        }
    }

    #[test]
    fn checksum_is_checked() {
        let text = print_matroid(&catalog::fano());
        assert!(parse_matroid(&text.replacen("labels", "# note\nlabels", 1)).is_err());
        let unsealed = text.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
        assert!(parse_matroid(&unsealed).is_ok());
    }

    #[test]
    fn graft_and_cyclic_round_trip() {
        let g = deltagraphic::graft::DeltaGraft::Delta3.graft();
        let text = print_graft(&g);
        assert_eq!(print_graft(&parse_graft(&text).unwrap()), text);
        let d = CyclicDecomposition::single(&g);
        let t = print_cyclic(&d);
        assert_eq!(parse_cyclic(&t).unwrap(), d);
    }
}
