//! Named matroids.
//!
//! | name | labels |
//! |------|--------|
//! | `U(r,n)` | `1..n` |
//! | `F7`, `F7*` | `1..7`, columns of `A7` |
//! | `R10`, `R12` | `1..n`, columns of `[I | A]` |
//! | `M(K4)`, `M(K5)` | end pairs `12`, `13`, .. |
//! | `M(K33)`, `M(K33')` | `a{i}b{j}` (plus `a1a2`) |
//! | `M(W_k)` | `e1..e{2k}`, odd rim, even spoke |
//! | `Pi_k` | `e1..ek` |
//!
//! Any graph name may be written `M*(..)` for the bond matroid, and any name
//! may carry a trailing `*` for the dual.

use crate::bits;
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::graph::{self, MultiGraph};
use crate::matroid::{numbered, Matroid};

const A7: [&str; 3] = ["1001011", "0101101", "0010111"];

const A10: [&str; 5] = ["1000011001", "0100011100", "0010001110", "0001000111", "0000110011"];

const A12: [&str; 6] = [
    "100000111000",
    "010000110100",
    "001000100010",
    "000100010001",
    "000010001011",
    "000001000111",
];

fn from_rows(n: usize, rows: &[&str]) -> Matroid {
    let a = Gf2Matrix::from_strings(numbered("r", rows.len()), numbered("", n), rows).expect("static matrix");
    Matroid::from_matrix(&a).expect("static matrix")
}

pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
    if r > n {
        return Err(Error::Argument(format!("U({r},{n}) needs r <= n")));
    }
    let labels = numbered("", n);
    if r == 0 {
        return Matroid::from_columns(labels, &vec![0; n]);
    }
    if r == 1 {
        return Matroid::from_columns(labels, &vec![1; n]);
    }
    if r == n {
        let cols: Vec<u64> = (0..n).map(bits::singleton).collect();
        return Matroid::from_columns(labels, &cols);
    }
    if r + 1 == n {
        let mut cols: Vec<u64> = (0..r).map(bits::singleton).collect();
        cols.push(bits::full(r));
        return Matroid::from_columns(labels, &cols);
    }
    Matroid::from_bases(labels, bits::subsets_of_size(bits::full(n), r))
}

pub fn fano() -> Matroid {
    from_rows(7, &A7)
}

pub fn r10() -> Matroid {
    from_rows(10, &A10)
}

pub fn r12() -> Matroid {
    from_rows(12, &A12)
}

pub fn k4() -> Matroid {
    graph::complete(4).cycle_matroid().expect("K4")
}

pub fn k5() -> Matroid {
    graph::complete(5).cycle_matroid().expect("K5")
}

pub fn k33() -> Matroid {
    graph::complete_bipartite(3, 3).cycle_matroid().expect("K33")
}

pub fn k33_prime() -> Matroid {
    graph::k33_prime().cycle_matroid().expect("K33'")
}

pub fn wheel(k: usize) -> Result<Matroid> {
    graph::wheel(k)?.cycle_matroid()
}

pub fn pi(k: usize) -> Result<Matroid> {
    graph::pi(k)?.cycle_matroid()
}

/// The graph behind a graph-based catalog name (`K4`, `K5`, `K33`, `K33'`, `W_k`, `Pi_k`).
pub fn graph_named(name: &str) -> Result<MultiGraph> {
    let n = name.trim();
    match n {
        "K4" => return Ok(graph::complete(4)),
        "K5" => return Ok(graph::complete(5)),
        "K33" | "K3,3" => return Ok(graph::complete_bipartite(3, 3)),
        "K33'" | "K3,3'" => return Ok(graph::k33_prime()),
        _ => {}
    }
    if let Some(k) = n.strip_prefix("W_").or_else(|| n.strip_prefix('W')) {
        return graph::wheel(parse_num(k, name)?);
    }
    if let Some(k) = n.strip_prefix("Pi_").or_else(|| n.strip_prefix("Π_")) {
        return graph::pi(parse_num(k, name)?);
    }
    Err(Error::Argument(format!("unknown graph `{name}`")))
}

fn parse_num(s: &str, name: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Argument(format!("unknown catalog name `{name}`")))
}

/// Look a matroid up by name (see the module table).
pub fn catalog(name: &str) -> Result<Matroid> {
    let name = name.trim();
    if let Some(rest) = name.strip_prefix("M*(").and_then(|r| r.strip_suffix(')')) {
        return Ok(graph_named(rest)?.cycle_matroid()?.dual());
    }
    if let Some(rest) = name.strip_prefix("M(").and_then(|r| r.strip_suffix(')')) {
        return graph_named(rest)?.cycle_matroid();
    }
    match name {
        "F7" => return Ok(fano()),
        "F7*" => return Ok(fano().dual()),
        "R10" => return Ok(r10()),
        "R12" => return Ok(r12()),
        _ => {}
    }
    if let Some(body) = name.strip_prefix("U(").and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = body.split(',').collect();
        if parts.len() == 2 {
            return uniform(parse_num(parts[0], name)?, parse_num(parts[1], name)?);
        }
    }
    if name.starts_with("Pi_") || name.starts_with("Π_") || name.starts_with("W_") {
        return graph_named(name)?.cycle_matroid();
    }
    if let Some(base) = name.strip_suffix('*') {
        return Ok(catalog(base)?.dual());
    }
    Err(Error::Argument(format!("unknown catalog name `{name}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::is_isomorphic;

    #[test]
    fn sizes() {
        let r = r10();
        assert_eq!((r.len(), r.rank()), (10, 5));
        let r = r12();
        assert_eq!((r.len(), r.rank()), (12, 6));
        assert_eq!(catalog("U(2,4)").unwrap().bases().unwrap().len(), 6);
        assert!(catalog("U(2,4)").unwrap().dual().same_as(&catalog("U(2,4)").unwrap()));
    }

    #[test]
    fn wheel_is_k4() {
        assert!(is_isomorphic(&catalog("M(W_3)").unwrap(), &catalog("M(K4)").unwrap()).unwrap());
        assert_eq!(catalog("M(W_4)").unwrap().labels(), numbered("e", 8).as_slice());
    }

    #[test]
    fn unknown_names() {
        assert!(catalog("Q9").is_err());
        assert!(catalog("M(W_2)").is_err());
        assert!(catalog("Pi_1").is_err());
    }
}
