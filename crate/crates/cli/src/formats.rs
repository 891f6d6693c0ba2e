//! Text formats: PACE-style `.gr` and `.td`, q-expressions, and solution
//! files.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use bisectkit::decomp::TreeDecomposition;
use bisectkit::qexpr::{QExpression, QNode};
use bisectkit::{Graph, GraphBuilder, Vertex, VertexSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens of one line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn number<T: std::str::FromStr>(
    line: usize,
    tok: (usize, &str),
    what: &str,
) -> Result<T, FormatError> {
    tok.1
        .parse()
        .map_err(|_| err(line, tok.0, format!("expected {what}, found `{}`", tok.1)))
}

fn arity(line: usize, toks: &[(usize, &str)], want: usize) -> Result<(), FormatError> {
    if toks.len() != want {
        let col = toks.get(want).or(toks.last()).map_or(1, |t| t.0);
        return Err(err(
            line,
            col,
            format!("expected {want} fields, found {}", toks.len()),
        ));
    }
    Ok(())
}

/// Parses a `.gr` file: header `p tw <n> <m>`, edge lines `<u> <v>`,
/// weighted edges `e <u> <v> <w>`, vertex weights `w <v> <w>`, comments
/// `c ...`. Returns the graph and the comment bodies.
pub fn parse_graph(text: &str) -> Result<(Graph, Vec<String>), FormatError> {
    let mut builder: Option<(GraphBuilder, usize)> = None;
    let mut comments = Vec::new();
    let mut edges = 0;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        last_line = ln;
        let toks = tokens(raw);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        if head == "c" {
            comments.push(raw.trim_start()[1..].trim().to_string());
            continue;
        }
        if head == "p" {
            if builder.is_some() {
                return Err(err(ln, col, "duplicate header"));
            }
            arity(ln, &toks, 4)?;
            if toks[1].1 != "tw" {
                return Err(err(
                    ln,
                    toks[1].0,
                    format!("expected `tw`, found `{}`", toks[1].1),
                ));
            }
            let n: usize = number(ln, toks[2], "vertex count")?;
            let m: usize = number(ln, toks[3], "edge count")?;
            builder = Some((GraphBuilder::new(n), m));
            continue;
        }
        let Some((b, _)) = builder.as_mut() else {
            return Err(err(ln, col, "missing `p tw <n> <m>` header"));
        };
        let mut add = |u: (usize, &str), v: (usize, &str), w: u64| -> Result<(), FormatError> {
            let (x, y): (Vertex, Vertex) = (number(ln, u, "vertex")?, number(ln, v, "vertex")?);
            let n = b.n();
            for (z, t) in [(x, u), (y, v)] {
                if z == 0 || z > n {
                    return Err(err(ln, t.0, format!("vertex {z} outside 1..={n}")));
                }
            }
            b.add_weighted_edge(x, y, w)
                .map_err(|e| err(ln, u.0, e.to_string()))?;
            Ok(())
        };
        match head {
            "e" => {
                arity(ln, &toks, 4)?;
                let w = number(ln, toks[3], "edge weight")?;
                add(toks[1], toks[2], w)?;
                edges += 1;
            }
            "w" => {
                arity(ln, &toks, 3)?;
                let v: Vertex = number(ln, toks[1], "vertex")?;
                let w = number(ln, toks[2], "vertex weight")?;
                b.set_vertex_weight(v, w)
                    .map_err(|e| err(ln, toks[1].0, e.to_string()))?;
            }
            _ => {
                arity(ln, &toks, 2)?;
                add(toks[0], toks[1], 1)?;
                edges += 1;
            }
        }
    }
    let Some((b, m)) = builder else {
        return Err(err(last_line.max(1), 1, "missing `p tw <n> <m>` header"));
    };
    if edges != m {
        return Err(err(
            last_line.max(1),
            1,
            format!("header declares {m} edges, found {edges}"),
        ));
    }
    Ok((b.build(), comments))
}

/// Emits a `.gr` file; unit-weight edges use the plain form.
pub fn emit_graph(g: &Graph, comments: &[String]) -> String {
    let mut s = String::new();
    for c in comments {
        let _ = writeln!(s, "c {c}");
    }
    let _ = writeln!(s, "p tw {} {}", g.n(), g.m());
    for v in g.vertices() {
        if g.vertex_weight(v) != 1 {
            let _ = writeln!(s, "w {v} {}", g.vertex_weight(v));
        }
    }
    for (u, v, w) in g.edges() {
        if w == 1 {
            let _ = writeln!(s, "{u} {v}");
        } else {
            let _ = writeln!(s, "e {u} {v} {w}");
        }
    }
    s
}

/// Parses a `.td` file: `s td <bags> <width+1> <n>`, bag lines
/// `b <id> <v...>` with ids `1..=bags`, and tree edges `<id> <id>`.
pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize), FormatError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<VertexSet>> = Vec::new();
    let mut edges = Vec::new();
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        last_line = ln;
        let toks = tokens(raw);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        match head {
            "c" => continue,
            "s" => {
                if header.is_some() {
                    return Err(err(ln, col, "duplicate header"));
                }
                arity(ln, &toks, 5)?;
                if toks[1].1 != "td" {
                    return Err(err(
                        ln,
                        toks[1].0,
                        format!("expected `td`, found `{}`", toks[1].1),
                    ));
                }
                let nb = number(ln, toks[2], "bag count")?;
                header = Some((
                    nb,
                    number(ln, toks[3], "bag size")?,
                    number(ln, toks[4], "vertex count")?,
                ));
                bags = vec![None; nb];
            }
            _ if header.is_none() => return Err(err(ln, col, "missing `s td` header")),
            "b" => {
                let (nb, width1, n) = header.expect("checked");
                if toks.len() < 2 {
                    return Err(err(ln, col, "bag line needs an id"));
                }
                let id: usize = number(ln, toks[1], "bag id")?;
                if id == 0 || id > nb {
                    return Err(err(ln, toks[1].0, format!("bag id {id} outside 1..={nb}")));
                }
                if bags[id - 1].is_some() {
                    return Err(err(ln, toks[1].0, format!("bag {id} defined twice")));
                }
                let mut bag = VertexSet::new();
                for &t in &toks[2..] {
                    let v: Vertex = number(ln, t, "vertex")?;
                    if v == 0 || v > n {
                        return Err(err(ln, t.0, format!("vertex {v} outside 1..={n}")));
                    }
                    if !bag.insert(v) {
                        return Err(err(ln, t.0, format!("vertex {v} repeated in bag")));
                    }
                }
                if bag.len() > width1 {
                    return Err(err(
                        ln,
                        col,
                        format!("bag has {} vertices, header allows {width1}", bag.len()),
                    ));
                }
                bags[id - 1] = Some(bag);
            }
            _ => {
                let nb = header.expect("checked").0;
                arity(ln, &toks, 2)?;
                let (x, y): (usize, usize) = (
                    number(ln, toks[0], "bag id")?,
                    number(ln, toks[1], "bag id")?,
                );
                for (v, t) in [(x, toks[0]), (y, toks[1])] {
                    if v == 0 || v > nb {
                        return Err(err(ln, t.0, format!("bag id {v} outside 1..={nb}")));
                    }
                }
                edges.push((x - 1, y - 1));
            }
        }
    }
    let Some((nb, width1, n)) = header else {
        return Err(err(last_line, 1, "missing `s td` header"));
    };
    if let Some(i) = bags.iter().position(Option::is_none) {
        return Err(err(last_line, 1, format!("bag {} is never defined", i + 1)));
    }
    let bags: Vec<VertexSet> = bags.into_iter().map(|b| b.expect("checked")).collect();
    let widest = bags.iter().map(BTreeSet::len).max().unwrap_or(0);
    if nb > 0 && widest != width1 {
        return Err(err(
            1,
            1,
            format!("header bag size {width1} but largest bag has {widest}"),
        ));
    }
    if nb > 0 && edges.len() != nb - 1 {
        return Err(err(
            last_line,
            1,
            format!(
                "{nb} bags need {} tree edges, found {}",
                nb - 1,
                edges.len()
            ),
        ));
    }
    Ok((TreeDecomposition::new(bags, edges), n))
}

pub fn emit_td(td: &TreeDecomposition, n: usize) -> String {
    let width1 = td.bags.iter().map(BTreeSet::len).max().unwrap_or(0);
    let mut s = format!("s td {} {} {n}\n", td.bags.len(), width1);
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(s, "b {}", i + 1);
        for v in bag {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    for &(x, y) in &td.edges {
        let _ = writeln!(s, "{} {}", x + 1, y + 1);
    }
    s
}

/// Recursive-descent parser for `v(i)`, `join(i,j,e)`, `ren(i->j,e)`,
/// `union(e,e)`; whitespace is ignored.
pub fn parse_qexpr(text: &str) -> Result<QExpression, FormatError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let root = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(QExpression::new(root))
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> FormatError {
        let before: String = self.chars[..self.pos.min(self.chars.len())]
            .iter()
            .collect();
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        err(line, column, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), FormatError> {
        self.skip_ws();
        for ch in s.chars() {
            if self.chars.get(self.pos) != Some(&ch) {
                return Err(self.error(format!("expected `{s}`")));
            }
            self.pos += 1;
        }
        Ok(())
    }

    fn label(&mut self) -> Result<usize, FormatError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a label"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let at = self.pos;
        self.pos = start;
        let l: usize = digits
            .parse()
            .map_err(|_| self.error("label out of range"))?;
        if l == 0 {
            return Err(self.error("labels must be positive"));
        }
        self.pos = at;
        Ok(l)
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn expr(&mut self) -> Result<QNode, FormatError> {
        let start = self.pos;
        let w = self.word();
        match w.as_str() {
            "v" => {
                self.expect("(")?;
                let i = self.label()?;
                self.expect(")")?;
                Ok(QNode::create(i))
            }
            "join" => {
                self.expect("(")?;
                let at = self.pos;
                let i = self.label()?;
                self.expect(",")?;
                let j = self.label()?;
                if i == j {
                    self.pos = at;
                    self.skip_ws();
                    return Err(self.error("labels must differ"));
                }
                self.expect(",")?;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(QNode::join(i, j, e))
            }
            "ren" => {
                self.expect("(")?;
                let at = self.pos;
                let i = self.label()?;
                self.expect("->")?;
                let j = self.label()?;
                if i == j {
                    self.pos = at;
                    self.skip_ws();
                    return Err(self.error("labels must differ"));
                }
                self.expect(",")?;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(QNode::rename(i, j, e))
            }
            "union" => {
                self.expect("(")?;
                let l = self.expr()?;
                self.expect(",")?;
                let r = self.expr()?;
                self.expect(")")?;
                Ok(QNode::union(l, r))
            }
            "" => Err(self.error("expected an expression")),
            other => {
                self.pos = start;
                self.skip_ws();
                Err(self.error(format!("unknown operator `{other}`")))
            }
        }
    }
}

/// A solver answer: `cut <k>` with 1-based part numbers, or `sep <k>` with
/// 0 marking separator vertices and 1/2 the sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Cut { value: u64, part: Vec<usize> },
    Sep { value: u64, part: Vec<usize> },
}

impl Solution {
    pub fn part(&self) -> &[usize] {
        match self {
            Solution::Cut { part, .. } | Solution::Sep { part, .. } => part,
        }
    }
}

pub fn emit_solution(sol: &Solution) -> String {
    let (head, value) = match sol {
        Solution::Cut { value, .. } => ("cut", value),
        Solution::Sep { value, .. } => ("sep", value),
    };
    let mut s = format!("{head} {value}\n");
    for (i, p) in sol.part().iter().enumerate() {
        let _ = writeln!(s, "{} {p}", i + 1);
    }
    s
}

/// Parses a solution for a graph on `n` vertices; every vertex must appear
/// exactly once.
pub fn parse_solution(text: &str, n: usize) -> Result<Solution, FormatError> {
    let mut head: Option<(bool, u64)> = None;
    let mut part = vec![usize::MAX; n];
    let mut last = 1;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        last = ln;
        let toks = tokens(raw);
        let Some(&(col, first)) = toks.first() else {
            continue;
        };
        if first == "c" {
            continue;
        }
        if first == "cut" || first == "sep" {
            if head.is_some() {
                return Err(err(ln, col, "duplicate value line"));
            }
            arity(ln, &toks, 2)?;
            head = Some((first == "cut", number(ln, toks[1], "value")?));
            continue;
        }
        if head.is_none() {
            return Err(err(ln, col, "expected `cut <k>` or `sep <k>` first"));
        }
        arity(ln, &toks, 2)?;
        let v: usize = number(ln, toks[0], "vertex")?;
        let p: usize = number(ln, toks[1], "part")?;
        if v == 0 || v > n {
            return Err(err(ln, toks[0].0, format!("vertex {v} outside 1..={n}")));
        }
        if part[v - 1] != usize::MAX {
            return Err(err(ln, toks[0].0, format!("vertex {v} listed twice")));
        }
        part[v - 1] = p;
    }
    let Some((is_cut, value)) = head else {
        return Err(err(last, 1, "missing `cut <k>` or `sep <k>` line"));
    };
    if let Some(v) = part.iter().position(|&p| p == usize::MAX) {
        return Err(err(last, 1, format!("vertex {} has no part", v + 1)));
    }
    if is_cut && part.contains(&0) {
        return Err(err(last, 1, "part numbers of a cut start at 1"));
    }
    if !is_cut && part.iter().any(|&p| p > 2) {
        return Err(err(last, 1, "separator parts must be 0, 1 or 2"));
    }
    Ok(if is_cut {
        Solution::Cut { value, part }
    } else {
        Solution::Sep { value, part }
    })
}

/// Graphviz rendering; vertices with non-unit weight show it in the label.
pub fn emit_dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n");
    for v in g.vertices() {
        if g.vertex_weight(v) == 1 {
            let _ = writeln!(s, "  {v};");
        } else {
            let _ = writeln!(s, "  {v} [label=\"{v}:{}\"];", g.vertex_weight(v));
        }
    }
    for (u, v, w) in g.edges() {
        if w == 1 {
            let _ = writeln!(s, "  {u} -- {v};");
        } else {
            let _ = writeln!(s, "  {u} -- {v} [label=\"{w}\"];");
        }
    }
    s.push_str("}\n");
    s
}

/// Comma-separated vertex list such as `1,4,7`.
pub fn parse_vertex_list(text: &str) -> Result<Vec<Vertex>, FormatError> {
    let mut out = Vec::new();
    let mut col = 1;
    for piece in text.split(',') {
        let t = piece.trim();
        if !t.is_empty() {
            out.push(
                t.parse()
                    .map_err(|_| err(1, col, format!("expected a number, found `{t}`")))?,
            );
        }
        col += piece.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bisectkit::graph::find_isomorphism;
    use bisectkit::qexpr::eval_qexpr;

    #[test]
    fn graph_round_trip() {
        let mut b = GraphBuilder::new(4);
        b.add_edge(1, 2).unwrap();
        b.add_weighted_edge(2, 3, 5).unwrap();
        b.set_vertex_weight(4, 3).unwrap();
        let g = b.build();
        let text = emit_graph(&g, &["hello".into()]);
        assert_eq!(parse_graph(&text).unwrap(), (g, vec!["hello".to_string()]));
    }

    #[test]
    fn graph_errors_have_positions() {
        let e = parse_graph("p tw 3 1\n1 4\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_graph("1 2\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_graph("p tw 3 2\n1 2\n").unwrap_err();
        assert!(e.message.contains("declares 2"));
        let e = parse_graph("p tw 3 1\n1 x\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }

    #[test]
    fn td_round_trip() {
        let td = TreeDecomposition::new(
            vec![VertexSet::from([1, 2]), VertexSet::from([2, 3])],
            vec![(0, 1)],
        );
        let (back, n) = parse_td(&emit_td(&td, 3)).unwrap();
        assert_eq!((back.bags, back.edges, n), (td.bags, td.edges, 3));
        assert!(parse_td("s td 2 2 3\nb 1 1 2\n").is_err());
    }

    #[test]
    fn qexpr_examples() {
        let e = parse_qexpr("join(1,2,union(v(1),v(2)))").unwrap();
        assert_eq!(eval_qexpr(&e).unwrap().graph, Graph::path(2));
        let k3 = parse_qexpr("join(1,2,union(ren(2->1,join(1,2,union(v(1),v(2)))),v(2)))").unwrap();
        assert!(
            find_isomorphism(&eval_qexpr(&k3).unwrap().graph, &Graph::complete(3), None).is_some()
        );
        let e = parse_qexpr("join(1,1,v(1))").unwrap_err();
        assert_eq!((e.column, e.message.as_str()), (6, "labels must differ"));
        assert!(parse_qexpr("union(v(1),v(2)").is_err());
        assert!(parse_qexpr("v(0)")
            .unwrap_err()
            .message
            .contains("positive"));
        assert_eq!(parse_qexpr(&k3.to_string()).unwrap(), k3);
        assert_eq!(
            parse_qexpr(" join ( 1 , 2 ,\n union( v(1) , v(2) ) ) ").unwrap(),
            e_edge()
        );
    }

    fn e_edge() -> QExpression {
        QExpression::new(QNode::join(
            1,
            2,
            QNode::union(QNode::create(1), QNode::create(2)),
        ))
    }

    #[test]
    fn solution_round_trip() {
        let s = Solution::Sep {
            value: 1,
            part: vec![1, 0, 2],
        };
        assert_eq!(parse_solution(&emit_solution(&s), 3).unwrap(), s);
        assert!(parse_solution("cut 0\n1 1\n", 2).is_err());
    }
}
