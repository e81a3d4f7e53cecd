//! DIMACS shortest-path `.gr` format: `c` comment lines, one
//! `p sp <n> <m>` problem line, then `a <u> <v> <w>` arc lines with 1-based
//! vertex ids.

use std::fmt::Write as _;

use thiserror::Error;

use super::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("no `p sp <n> <m>` line")]
    MissingProblemLine,
    #[error("second problem line")]
    DuplicateProblemLine,
    #[error("arc before the problem line")]
    ArcBeforeProblemLine,
    #[error("malformed {0} line")]
    Malformed(&'static str),
    #[error("problem type `{0}` is not `sp`")]
    WrongProblem(String),
    #[error("graph with zero vertices")]
    NoVertices,
    #[error("vertex {vertex} outside [1, {n}]")]
    VertexOutOfRange { vertex: i64, n: usize },
    #[error("negative weight {0}")]
    NegativeWeight(i64),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("problem line declares {expected} arcs but {found} were given")]
    ArcCountMismatch { expected: usize, found: usize },
    #[error("unknown line type `{0}`")]
    UnknownLine(String),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn field<T: std::str::FromStr>(
    s: Option<&str>,
    line: usize,
    what: &'static str,
) -> Result<T, ParseError> {
    s.and_then(|s| s.parse().ok())
        .ok_or_else(|| err(line, ParseErrorKind::Malformed(what)))
}

pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut arcs = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let mut parts = raw.split_whitespace();
        match parts.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateProblemLine));
                }
                let kind: String = field(parts.next(), line, "problem")?;
                if kind != "sp" {
                    return Err(err(line, ParseErrorKind::WrongProblem(kind)));
                }
                let n: usize = field(parts.next(), line, "problem")?;
                let m: usize = field(parts.next(), line, "problem")?;
                if parts.next().is_some() {
                    return Err(err(line, ParseErrorKind::Malformed("problem")));
                }
                if n == 0 {
                    return Err(err(line, ParseErrorKind::NoVertices));
                }
                arcs.reserve(m.min(1 << 24));
                header = Some((n, m, line));
            }
            Some("a") => {
                let Some((n, m, _)) = header else {
                    return Err(err(line, ParseErrorKind::ArcBeforeProblemLine));
                };
                let u: i64 = field(parts.next(), line, "arc")?;
                let v: i64 = field(parts.next(), line, "arc")?;
                let w: i64 = field(parts.next(), line, "arc")?;
                if parts.next().is_some() {
                    return Err(err(line, ParseErrorKind::Malformed("arc")));
                }
                for vertex in [u, v] {
                    if vertex < 1 || vertex as u64 > n as u64 {
                        return Err(err(line, ParseErrorKind::VertexOutOfRange { vertex, n }));
                    }
                }
                if w < 0 {
                    return Err(err(line, ParseErrorKind::NegativeWeight(w)));
                }
                if u == v {
                    return Err(err(line, ParseErrorKind::SelfLoop(u as usize)));
                }
                if arcs.len() == m {
                    return Err(err(
                        line,
                        ParseErrorKind::ArcCountMismatch {
                            expected: m,
                            found: m + 1,
                        },
                    ));
                }
                arcs.push((u as usize - 1, v as usize - 1, w as u64));
            }
            Some(other) => return Err(err(line, ParseErrorKind::UnknownLine(other.to_string()))),
        }
    }
    let Some((n, m, _)) = header else {
        return Err(err(last_line.max(1), ParseErrorKind::MissingProblemLine));
    };
    if arcs.len() != m {
        return Err(err(
            last_line,
            ParseErrorKind::ArcCountMismatch {
                expected: m,
                found: arcs.len(),
            },
        ));
    }
    Ok(Graph::from_arcs(n, &arcs).expect("arcs validated while parsing"))
}

/// Writes `g` with arcs grouped by tail, in stored order.
pub fn write_dimacs(g: &Graph, comment: Option<&str>) -> String {
    let mut out = String::with_capacity(16 * (g.m() + 2));
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "c {line}");
        }
    }
    let _ = writeln!(out, "p sp {} {}", g.n(), g.m());
    for (u, v, w) in g.arcs() {
        let _ = writeln!(out, "a {} {} {w}", u + 1, v + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(text: &str) -> ParseErrorKind {
        parse_dimacs(text).unwrap_err().kind
    }

    #[test]
    fn minimal_file() {
        let g = parse_dimacs("p sp 2 1\na 1 2 5\n").unwrap();
        assert_eq!((g.n(), g.m(), g.max_weight()), (2, 1, 5));
        assert_eq!(g.arcs().collect::<Vec<_>>(), vec![(0, 1, 5)]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_dimacs("c hello\n\np sp 3 2\nc mid\na 1 2 0\na 3 1 9\n").unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.min_weight(), Some(0));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_dimacs("a 1 2 5\np sp 2 1\n").unwrap_err(),
            ParseError {
                line: 1,
                kind: ParseErrorKind::ArcBeforeProblemLine
            }
        );
        assert_eq!(
            parse_dimacs("p sp 2 1\na 1 1 3\n").unwrap_err(),
            ParseError {
                line: 2,
                kind: ParseErrorKind::SelfLoop(1)
            }
        );
        assert_eq!(kind("c only\n"), ParseErrorKind::MissingProblemLine);
        assert_eq!(
            kind("p sp 2 1\np sp 2 1\n"),
            ParseErrorKind::DuplicateProblemLine
        );
        assert_eq!(
            kind("p sp 2 1\na 1 3 1\n"),
            ParseErrorKind::VertexOutOfRange { vertex: 3, n: 2 }
        );
        assert_eq!(
            kind("p sp 2 1\na 0 1 1\n"),
            ParseErrorKind::VertexOutOfRange { vertex: 0, n: 2 }
        );
        assert_eq!(
            kind("p sp 2 1\na 1 2 -4\n"),
            ParseErrorKind::NegativeWeight(-4)
        );
        assert_eq!(
            kind("p sp 2 2\na 1 2 1\n"),
            ParseErrorKind::ArcCountMismatch {
                expected: 2,
                found: 1
            }
        );
        assert_eq!(
            kind("p sp 2 1\na 1 2 1\na 2 1 1\n"),
            ParseErrorKind::ArcCountMismatch {
                expected: 1,
                found: 2
            }
        );
        assert_eq!(
            kind("p sp 2 1\na 1 x 1\n"),
            ParseErrorKind::Malformed("arc")
        );
        assert_eq!(
            kind("p max 2 1\n"),
            ParseErrorKind::WrongProblem("max".into())
        );
        assert_eq!(
            kind("p sp 2 0\nq\n"),
            ParseErrorKind::UnknownLine("q".into())
        );
    }

    #[test]
    fn round_trip() {
        let g = Graph::from_arcs(4, &[(0, 1, 3), (3, 0, 1), (0, 2, 8)]).unwrap();
        let text = write_dimacs(&g, Some("test"));
        assert!(text.starts_with("c test\np sp 4 3\na 1 2 3\n"));
        assert_eq!(parse_dimacs(&text).unwrap(), g);
    }
}
