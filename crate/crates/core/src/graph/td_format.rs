//! The `.td` text format used by treewidth solver competitions:
//!
//! ```text
//! c optional comment
//! s td <num_bags> <width+1> <n>
//! b <bag_id> <vertex>...
//! <bag_id> <bag_id>
//! ```
//!
//! Bag ids and vertices are 1-based; vertex `i` is item index `i - 1`.

use std::fmt::Write as _;

use thiserror::Error;

use super::TreeDecomposition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TdParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `s td` header")]
    MissingHeader,
    #[error("header declares {declared} bags, found {found}")]
    BagCount { declared: usize, found: usize },
    #[error("decomposition is for {declared} vertices, instance has {expected}")]
    VertexCount { declared: usize, expected: usize },
}

fn num(tok: Option<&str>, line: usize, what: &str) -> Result<usize, TdParseError> {
    let tok = tok.ok_or_else(|| TdParseError::Syntax { line, msg: format!("missing {what}") })?;
    tok.parse().map_err(|_| TdParseError::Syntax { line, msg: format!("bad {what} `{tok}`") })
}

/// Parses a decomposition for a graph with `n` vertices.
pub fn parse_td(text: &str, n: usize) -> Result<TreeDecomposition, TdParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        let Some(first) = toks.next() else { continue };
        match first {
            "c" => continue,
            "s" => {
                if toks.next() != Some("td") {
                    return Err(TdParseError::Syntax { line, msg: "expected `s td`".into() });
                }
                let num_bags = num(toks.next(), line, "bag count")?;
                let _width_plus_one = num(toks.next(), line, "bag size")?;
                let vertices = num(toks.next(), line, "vertex count")?;
                if vertices != n {
                    return Err(TdParseError::VertexCount { declared: vertices, expected: n });
                }
                header = Some((num_bags, vertices));
                bags = vec![None; num_bags];
            }
            "b" => {
                let (num_bags, _) = header.ok_or(TdParseError::MissingHeader)?;
                let id = num(toks.next(), line, "bag id")?;
                if id == 0 || id > num_bags {
                    return Err(TdParseError::Syntax { line, msg: format!("bag id {id} out of range") });
                }
                let mut bag = Vec::new();
                for tok in toks {
                    let v = num(Some(tok), line, "vertex")?;
                    if v == 0 || v > n {
                        return Err(TdParseError::Syntax { line, msg: format!("vertex {v} out of range") });
                    }
                    bag.push(v - 1);
                }
                if bags[id - 1].replace(bag).is_some() {
                    return Err(TdParseError::Syntax { line, msg: format!("bag {id} defined twice") });
                }
            }
            _ => {
                let (num_bags, _) = header.ok_or(TdParseError::MissingHeader)?;
                let a = num(Some(first), line, "bag id")?;
                let b = num(toks.next(), line, "bag id")?;
                if toks.next().is_some() {
                    return Err(TdParseError::Syntax { line, msg: "trailing tokens".into() });
                }
                if a == 0 || b == 0 || a > num_bags || b > num_bags {
                    return Err(TdParseError::Syntax { line, msg: format!("edge {a} {b} out of range") });
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let (declared, _) = header.ok_or(TdParseError::MissingHeader)?;
    let found = bags.iter().filter(|b| b.is_some()).count();
    if found != declared {
        return Err(TdParseError::BagCount { declared, found });
    }
    Ok(TreeDecomposition::new(bags.into_iter().map(Option::unwrap).collect(), edges))
}

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = String::new();
    let max_bag = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    writeln!(out, "s td {} {} {}", td.num_nodes(), max_bag, n).unwrap();
    for (i, bag) in td.bags().iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in td.edges() {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}
