//! The presentation file format.
//!
//! Line-oriented UTF-8, `#` starts a comment.  A stationary file:
//!
//! ```text
//! solenoid v1
//! graph:
//! vertex v1
//! vertex v2
//! edge e1 v1 v2
//! edge e2 v2 v1
//! map:
//! vertex v1 -> v1
//! vertex v2 -> v1
//! edge e1 -> e1 e2
//! edge e2 -> e1 e2
//! ```
//!
//! A trailing `'` on a letter means the edge is traversed against its
//! direction.  `vertex` lines in a map block may be omitted as a whole, in
//! which case the vertex map is inferred from word endpoints.  Tower files
//! use `level K:` graph blocks (K = 0..L) and `map K -> K-1:` blocks
//! instead.  An optional `inferred` line right after the header marks
//! presentations whose incidence was reconstructed by the incidence solver.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Letter, Sign, VertexId, Word};
use crate::presentation::{Presentation, PresentationError, WrappingRule};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        message: message.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Debug, Clone)]
struct Token {
    text: String,
    pos: Pos,
}

/// One logical line as whitespace-separated tokens.
fn tokenize(text: &str) -> Vec<Vec<Token>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(idx) => &raw[..idx],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut col = 0;
        for chunk in line.split_inclusive(char::is_whitespace) {
            let trimmed = chunk.trim_end_matches(char::is_whitespace);
            if !trimmed.is_empty() {
                tokens.push(Token {
                    text: trimmed.to_string(),
                    pos: Pos {
                        line: i + 1,
                        col: col + 1,
                    },
                });
            }
            col += chunk.chars().count();
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

fn check_identifier(tok: &Token) -> Result<(), ParseError> {
    if is_identifier(&tok.text) {
        Ok(())
    } else {
        err(
            tok.pos.line,
            tok.pos.col,
            format!("invalid identifier `{}`", tok.text),
        )
    }
}

#[derive(Debug, PartialEq, Eq)]
enum SectionKind {
    Graph,
    Level(usize),
    Map,
    TowerMap { from: usize, to: usize },
}

struct Section {
    kind: SectionKind,
    pos: Pos,
    lines: Vec<Vec<Token>>,
}

fn parse_usize(tok: &Token) -> Result<usize, ParseError> {
    tok.text.parse().map_err(|_| ParseError {
        line: tok.pos.line,
        col: tok.pos.col,
        message: format!("expected a level number, found `{}`", tok.text),
    })
}

/// Split token lines into header data and sections.
fn split_sections(lines: Vec<Vec<Token>>) -> Result<(bool, Vec<Section>), ParseError> {
    let mut iter = lines.into_iter().peekable();
    let header = match iter.next() {
        Some(l) => l,
        None => return err(1, 1, "empty input; expected header `solenoid v1`"),
    };
    if header.len() != 2 || header[0].text != "solenoid" || header[1].text != "v1" {
        return err(
            header[0].pos.line,
            header[0].pos.col,
            "expected header `solenoid v1`",
        );
    }
    let mut inferred = false;
    if let Some(l) = iter.peek() {
        if l.len() == 1 && l[0].text == "inferred" {
            inferred = true;
            iter.next();
        }
    }
    let mut sections: Vec<Section> = Vec::new();
    for line in iter {
        let first = &line[0];
        let is_header = line.last().map_or(false, |t| t.text.ends_with(':'));
        if is_header {
            let mut texts: Vec<String> = line.iter().map(|t| t.text.clone()).collect();
            let last = texts.last_mut().unwrap();
            last.truncate(last.len() - 1);
            let kind = match (texts.len(), texts[0].as_str()) {
                (1, "graph") => SectionKind::Graph,
                (1, "map") => SectionKind::Map,
                (2, "level") => SectionKind::Level(parse_usize(&Token {
                    text: texts[1].clone(),
                    pos: line[1].pos,
                })?),
                (4, "map") if texts[2] == "->" => {
                    let from = parse_usize(&Token {
                        text: texts[1].clone(),
                        pos: line[1].pos,
                    })?;
                    let to = parse_usize(&Token {
                        text: texts[3].clone(),
                        pos: line[3].pos,
                    })?;
                    if from != to + 1 {
                        return err(
                            first.pos.line,
                            first.pos.col,
                            format!(
                                "map must connect consecutive levels, got `map {from} -> {to}:`"
                            ),
                        );
                    }
                    SectionKind::TowerMap { from, to }
                }
                _ => return err(first.pos.line, first.pos.col, "unrecognized block header"),
            };
            sections.push(Section {
                kind,
                pos: first.pos,
                lines: Vec::new(),
            });
        } else {
            match sections.last_mut() {
                Some(s) => s.lines.push(line),
                None => {
                    return err(
                        first.pos.line,
                        first.pos.col,
                        "expected a block header such as `graph:`",
                    )
                }
            }
        }
    }
    Ok((inferred, sections))
}

fn build_graph(section: &Section) -> Result<Graph, ParseError> {
    let mut g = Graph::new(&[], &[]).unwrap();
    for line in &section.lines {
        let head = &line[0];
        match head.text.as_str() {
            "vertex" => {
                if line.len() != 2 {
                    return err(head.pos.line, head.pos.col, "expected `vertex NAME`");
                }
                check_identifier(&line[1])?;
                g.add_vertex(&line[1].text).map_err(|e| ParseError {
                    line: line[1].pos.line,
                    col: line[1].pos.col,
                    message: e.to_string(),
                })?;
            }
            "edge" => {
                if line.len() != 4 {
                    return err(
                        head.pos.line,
                        head.pos.col,
                        "expected `edge NAME INIT TERM`",
                    );
                }
                for t in &line[1..4] {
                    check_identifier(t)?;
                }
                g.add_edge(&line[1].text, &line[2].text, &line[3].text)
                    .map_err(|e| {
                        let tok = match &e {
                            GraphError::UnknownVertex { vertex, .. } => {
                                if *vertex == line[2].text {
                                    &line[2]
                                } else {
                                    &line[3]
                                }
                            }
                            _ => &line[1],
                        };
                        ParseError {
                            line: tok.pos.line,
                            col: tok.pos.col,
                            message: e.to_string(),
                        }
                    })?;
            }
            _ => {
                return err(
                    head.pos.line,
                    head.pos.col,
                    format!("expected `vertex` or `edge`, found `{}`", head.text),
                )
            }
        }
    }
    Ok(g)
}

fn build_rule(
    section: &Section,
    domain: &Graph,
    codomain: &Graph,
) -> Result<WrappingRule, ParseError> {
    let mut words: Vec<Option<(Word, Pos)>> = vec![None; domain.edge_count()];
    let mut vmap_lines: HashMap<usize, (VertexId, Pos)> = HashMap::new();
    for line in &section.lines {
        let head = &line[0];
        match head.text.as_str() {
            "vertex" => {
                if line.len() != 4 || line[2].text != "->" {
                    return err(
                        head.pos.line,
                        head.pos.col,
                        "expected `vertex NAME -> NAME`",
                    );
                }
                let from = domain.vertex_id(&line[1].text).ok_or(ParseError {
                    line: line[1].pos.line,
                    col: line[1].pos.col,
                    message: format!("unknown vertex `{}`", line[1].text),
                })?;
                let to = codomain.vertex_id(&line[3].text).ok_or(ParseError {
                    line: line[3].pos.line,
                    col: line[3].pos.col,
                    message: format!("unknown vertex `{}`", line[3].text),
                })?;
                if vmap_lines.insert(from.0, (to, line[1].pos)).is_some() {
                    return err(
                        line[1].pos.line,
                        line[1].pos.col,
                        format!("vertex `{}` mapped twice", line[1].text),
                    );
                }
            }
            "edge" => {
                if line.len() < 3 || line[2].text != "->" {
                    return err(
                        head.pos.line,
                        head.pos.col,
                        "expected `edge NAME -> LETTER ...`",
                    );
                }
                let e = domain.edge_id(&line[1].text).ok_or(ParseError {
                    line: line[1].pos.line,
                    col: line[1].pos.col,
                    message: format!("unknown edge `{}`", line[1].text),
                })?;
                if line.len() == 3 {
                    return err(
                        head.pos.line,
                        head.pos.col,
                        format!("empty image word for edge `{}`", line[1].text),
                    );
                }
                let mut letters = Vec::new();
                for tok in &line[3..] {
                    let (name, sign) = match tok.text.strip_suffix('\'') {
                        Some(base) => (base, Sign::Minus),
                        None => (tok.text.as_str(), Sign::Plus),
                    };
                    if !is_identifier(name) {
                        return err(
                            tok.pos.line,
                            tok.pos.col,
                            format!("invalid letter `{}`", tok.text),
                        );
                    }
                    let edge = codomain.edge_id(name).ok_or(ParseError {
                        line: tok.pos.line,
                        col: tok.pos.col,
                        message: format!("unknown edge `{name}` in image word"),
                    })?;
                    letters.push(Letter::new(edge, sign));
                }
                let word = Word::new(letters, codomain).map_err(|e| ParseError {
                    line: head.pos.line,
                    col: head.pos.col,
                    message: format!("image word of `{}` {}", line[1].text, chain_msg(&e)),
                })?;
                if words[e.0].replace((word, head.pos)).is_some() {
                    return err(
                        line[1].pos.line,
                        line[1].pos.col,
                        format!("edge `{}` mapped twice", line[1].text),
                    );
                }
            }
            _ => {
                return err(
                    head.pos.line,
                    head.pos.col,
                    format!("expected `vertex` or `edge`, found `{}`", head.text),
                )
            }
        }
    }
    let mut built = Vec::with_capacity(domain.edge_count());
    let mut word_pos = Vec::with_capacity(domain.edge_count());
    for e in domain.edge_ids() {
        match &words[e.0] {
            Some((w, pos)) => {
                built.push(w.clone());
                word_pos.push(*pos);
            }
            None => {
                return err(
                    section.pos.line,
                    section.pos.col,
                    format!("no image word for edge `{}`", domain.edge_name(e)),
                )
            }
        }
    }
    let vertex_map = if vmap_lines.is_empty() {
        WrappingRule::infer_vertex_map(domain, codomain, &built).map_err(|e| ParseError {
            line: section.pos.line,
            col: section.pos.col,
            message: e.to_string(),
        })?
    } else {
        let mut vm = Vec::with_capacity(domain.vertex_count());
        for v in domain.vertices() {
            match vmap_lines.get(&v.0) {
                Some(&(to, _)) => vm.push(to),
                None => {
                    return err(
                        section.pos.line,
                        section.pos.col,
                        format!("vertex `{}` has no image", domain.vertex_name(v)),
                    )
                }
            }
        }
        vm
    };
    WrappingRule::new(domain, codomain, built, vertex_map).map_err(|e| match &e {
        PresentationError::MarkovViolation { edge }
        | PresentationError::WordDoesNotChain { edge } => {
            let idx = domain.edge_id(edge).unwrap();
            ParseError {
                line: word_pos[idx.0].line,
                col: word_pos[idx.0].col,
                message: e.to_string(),
            }
        }
        _ => ParseError {
            line: section.pos.line,
            col: section.pos.col,
            message: e.to_string(),
        },
    })
}

fn chain_msg(e: &GraphError) -> String {
    match e {
        GraphError::BrokenChain { at } => {
            format!("does not chain at position {}", at + 1)
        }
        other => other.to_string(),
    }
}

/// Parse a presentation file.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let (inferred, sections) = split_sections(tokenize(text))?;
    if sections.is_empty() {
        return err(1, 1, "no blocks found; expected `graph:` or `level 0:`");
    }
    let stationary = matches!(sections[0].kind, SectionKind::Graph | SectionKind::Map);
    let p = if stationary {
        let mut graph: Option<Graph> = None;
        let mut rule_section: Option<&Section> = None;
        for s in &sections {
            match s.kind {
                SectionKind::Graph if graph.is_none() => graph = Some(build_graph(s)?),
                SectionKind::Map if rule_section.is_none() => rule_section = Some(s),
                SectionKind::Graph | SectionKind::Map => {
                    return err(s.pos.line, s.pos.col, "duplicate block")
                }
                _ => {
                    return err(
                        s.pos.line,
                        s.pos.col,
                        "cannot mix stationary and tower blocks",
                    )
                }
            }
        }
        let graph = match graph {
            Some(g) => g,
            None => return err(1, 1, "missing `graph:` block"),
        };
        let rs = match rule_section {
            Some(s) => s,
            None => return err(1, 1, "missing `map:` block"),
        };
        let rule = build_rule(rs, &graph, &graph)?;
        Presentation::stationary(graph, rule).map_err(|e| ParseError {
            line: rs.pos.line,
            col: rs.pos.col,
            message: e.to_string(),
        })?
    } else {
        let mut level_sections: Vec<(usize, &Section)> = Vec::new();
        let mut map_sections: Vec<(usize, &Section)> = Vec::new();
        for s in &sections {
            match s.kind {
                SectionKind::Level(k) => level_sections.push((k, s)),
                SectionKind::TowerMap { from, .. } => map_sections.push((from, s)),
                _ => {
                    return err(
                        s.pos.line,
                        s.pos.col,
                        "cannot mix stationary and tower blocks",
                    )
                }
            }
        }
        level_sections.sort_by_key(|&(k, _)| k);
        map_sections.sort_by_key(|&(k, _)| k);
        let count = level_sections.len();
        for (want, &(k, s)) in level_sections.iter().enumerate() {
            if k != want {
                return err(s.pos.line, s.pos.col, format!("expected `level {want}:`"));
            }
        }
        let mut levels = Vec::with_capacity(count);
        for &(_, s) in &level_sections {
            levels.push(build_graph(s)?);
        }
        if map_sections.len() + 1 != count {
            let s = &sections[0];
            return err(
                s.pos.line,
                s.pos.col,
                format!("tower with {count} levels needs {} map blocks", count - 1),
            );
        }
        let mut rules = Vec::with_capacity(map_sections.len());
        for (want, &(k, s)) in map_sections.iter().enumerate() {
            if k != want + 1 {
                return err(
                    s.pos.line,
                    s.pos.col,
                    format!("expected `map {} -> {}:`", want + 1, want),
                );
            }
            rules.push(build_rule(s, &levels[k], &levels[k - 1])?);
        }
        Presentation::tower(levels, rules).map_err(|e| ParseError {
            line: sections[0].pos.line,
            col: sections[0].pos.col,
            message: e.to_string(),
        })?
    };
    Ok(if inferred { p.mark_inferred() } else { p })
}

fn write_graph(out: &mut String, g: &Graph) {
    for v in g.vertices() {
        out.push_str(&format!("vertex {}\n", g.vertex_name(v)));
    }
    for e in g.edge_ids() {
        out.push_str(&format!(
            "edge {} {} {}\n",
            g.edge_name(e),
            g.vertex_name(g.init(e)),
            g.vertex_name(g.term(e))
        ));
    }
}

fn write_rule(out: &mut String, rule: &WrappingRule, domain: &Graph, codomain: &Graph) {
    for v in domain.vertices() {
        out.push_str(&format!(
            "vertex {} -> {}\n",
            domain.vertex_name(v),
            codomain.vertex_name(rule.vertex_image(v))
        ));
    }
    for e in domain.edge_ids() {
        out.push_str(&format!("edge {} ->", domain.edge_name(e)));
        for l in rule.word(e).letters() {
            out.push(' ');
            out.push_str(codomain.edge_name(l.edge));
            if l.sign == Sign::Minus {
                out.push('\'');
            }
        }
        out.push('\n');
    }
}

/// Serialize to the file format; `parse_presentation` inverts this exactly.
pub fn serialize_presentation(p: &Presentation) -> String {
    let mut out = String::from("solenoid v1\n");
    if p.is_inferred() {
        out.push_str("inferred\n");
    }
    if p.is_stationary() {
        out.push_str("graph:\n");
        write_graph(&mut out, p.level(0));
        out.push_str("map:\n");
        write_rule(&mut out, p.rule(0), p.level(0), p.level(0));
    } else {
        for (k, g) in p.levels().iter().enumerate() {
            out.push_str(&format!("level {k}:\n"));
            write_graph(&mut out, g);
        }
        for k in 0..p.rule_count() {
            out.push_str(&format!("map {} -> {}:\n", k + 1, k));
            let (domain, codomain) = p.rule_graphs(k);
            write_rule(&mut out, p.rule(k), domain, codomain);
        }
    }
    out
}
