//! Presentations, labeled oriented graphs and Adian presentations.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::syntax::{tokenize, Parser, Tok};
use crate::word::{ExponentVector, Letter, Word};

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic())
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn check_names(names: &[String]) -> Result<()> {
    for (i, name) in names.iter().enumerate() {
        if !is_identifier(name) {
            return Err(Error::Syntax {
                line: 1,
                column: 1,
                message: format!("`{name}` is not a valid identifier"),
            });
        }
        if names[..i].contains(name) {
            return Err(Error::DuplicateName(name.clone()));
        }
    }
    Ok(())
}

/// A finite presentation: declared generators and (unreduced) relator words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        check_names(&generators)?;
        for (j, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::EmptyRelator {
                    line: 1,
                    column: j + 1,
                });
            }
            if let Some(g) = r.max_generator() {
                if g >= generators.len() {
                    return Err(Error::GeneratorOutOfRange {
                        index: g,
                        size: generators.len(),
                    });
                }
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Builds a presentation with generators named `x1, x2, ...`.
    pub fn with_default_names(n: usize, relators: Vec<Word>) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("x{i}")).collect(), relators)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn abelianizations(&self) -> Vec<ExponentVector> {
        let n = self.num_generators();
        self.relators.iter().map(|r| r.abelianize(n)).collect()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        crate::syntax::parse_word(text, &self.generators)
    }

    /// The subpresentation keeping the relators at the given 0-based indices.
    pub fn select_relators(&self, keep: &[usize]) -> Presentation {
        Presentation {
            generators: self.generators.clone(),
            relators: keep.iter().map(|&j| self.relators[j].clone()).collect(),
        }
    }

    /// All `2^m` subpresentations on the same generators, lazily, starting
    /// with the full presentation.
    pub fn subpresentations(&self) -> Subpresentations<'_> {
        Subpresentations {
            source: self,
            dropped: Some(vec![false; self.relators.len()]),
        }
    }

    /// Reorders generators and relators; `gen_order[i]` is the old index of
    /// the new `i`-th generator, likewise for relators.
    pub fn reordered(&self, gen_order: &[usize], rel_order: &[usize]) -> Result<Presentation> {
        let n = self.num_generators();
        if !is_permutation(gen_order, n) || !is_permutation(rel_order, self.num_relators()) {
            return Err(Error::Precondition("orders must be permutations".into()));
        }
        let mut relabel = vec![0; n];
        for (new, &old) in gen_order.iter().enumerate() {
            relabel[old] = new;
        }
        Ok(Presentation {
            generators: gen_order
                .iter()
                .map(|&i| self.generators[i].clone())
                .collect(),
            relators: rel_order
                .iter()
                .map(|&j| self.relators[j].relabel(&relabel))
                .collect(),
        })
    }
}

pub(crate) fn is_permutation(order: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    order.len() == n
        && order.iter().all(|&i| {
            if i >= n || seen[i] {
                false
            } else {
                seen[i] = true;
                true
            }
        })
}

pub struct Subpresentations<'a> {
    source: &'a Presentation,
    dropped: Option<Vec<bool>>,
}

impl Iterator for Subpresentations<'_> {
    type Item = Presentation;

    fn next(&mut self) -> Option<Presentation> {
        let dropped = self.dropped.as_mut()?;
        let keep: Vec<usize> = (0..dropped.len()).filter(|&j| !dropped[j]).collect();
        let out = self.source.select_relators(&keep);
        // binary odometer over the drop mask
        let mut carry = true;
        for bit in dropped.iter_mut() {
            if !carry {
                break;
            }
            carry = *bit;
            *bit = !*bit;
        }
        if carry {
            self.dropped = None;
        }
        Some(out)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |", self.generators.join(", "))?;
        for (j, r) in self.relators.iter().enumerate() {
            let sep = if j == 0 { " " } else { "; " };
            write!(f, "{sep}{}", r.display(&self.generators))?;
        }
        Ok(())
    }
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_presentation(s)
    }
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let relators: Vec<String> = self
            .relators
            .iter()
            .map(|r| r.display(&self.generators).to_string())
            .collect();
        let mut st = s.serialize_struct("Presentation", 2)?;
        st.serialize_field("generators", &self.generators)?;
        st.serialize_field("relators", &relators)?;
        st.end()
    }
}

/// Parses `gens | relators`, e.g. `x, y | x^3 y x y`.
///
/// Relators are separated by `;`. A relation `U = V` is stored as `U V^-1`.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let tokens = tokenize(text)?;
    let no_generators: Vec<String> = Vec::new();

    let mut header = Parser::new(&tokens, &no_generators);
    let mut generators = Vec::new();
    if header.peek() != Some(&Tok::Pipe) {
        loop {
            let loc = header.location();
            match header.bump().map(|t| t.tok.clone()) {
                Some(Tok::Ident(name)) => generators.push(name),
                _ => {
                    return Err(Error::Syntax {
                        line: loc.0,
                        column: loc.1,
                        message: "expected a generator name".into(),
                    })
                }
            }
            if header.peek() == Some(&Tok::Comma) {
                header.bump();
            } else {
                break;
            }
        }
    }
    header.expect(Tok::Pipe, "`|` after the generator list")?;
    for (i, name) in generators.iter().enumerate() {
        if generators[..i].contains(name) {
            return Err(Error::DuplicateName(name.clone()));
        }
    }

    let body = &tokens[header.cursor()..];
    let mut p = Parser::new(body, &generators);
    let mut relators = Vec::new();
    if !p.at_end() {
        loop {
            let (line, column) = p.location();
            let lhs = p.word()?;
            if lhs.is_empty() {
                return Err(Error::EmptyRelator { line, column });
            }
            let relator = if p.peek() == Some(&Tok::Equals) {
                p.bump();
                let (line, column) = p.location();
                let rhs = p.word()?;
                if rhs.is_empty() {
                    return Err(Error::EmptyRelator { line, column });
                }
                lhs.concat(&rhs.inverse())
            } else {
                lhs
            };
            relators.push(relator);
            match p.peek() {
                None => break,
                Some(Tok::Semi) => {
                    p.bump();
                }
                Some(_) => return Err(p.error("expected `;` between relators")),
            }
        }
    }
    Presentation::new(generators, relators)
}

/// One edge of a labeled oriented graph, as vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LogEdge {
    pub init: usize,
    pub label: usize,
    pub terminal: usize,
}

/// A labeled oriented graph: every edge has an initial vertex, a terminal
/// vertex and a label, all drawn from the same vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Log {
    vertices: Vec<String>,
    edges: Vec<LogEdge>,
}

impl Log {
    pub fn new(vertices: Vec<String>, edges: Vec<LogEdge>) -> Result<Self> {
        check_names(&vertices)?;
        let n = vertices.len();
        for e in &edges {
            for v in [e.init, e.label, e.terminal] {
                if v >= n {
                    return Err(Error::UndeclaredVertex(format!("#{v}")));
                }
            }
        }
        Ok(Log { vertices, edges })
    }

    /// Builds a LOG with vertices named `x1, x2, ...`.
    pub fn with_default_names(n: usize, edges: Vec<LogEdge>) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("x{i}")).collect(), edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[LogEdge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// The same graph with every edge reversed.
    pub fn opposite(&self) -> Log {
        Log {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| LogEdge {
                    init: e.terminal,
                    label: e.label,
                    terminal: e.init,
                })
                .collect(),
        }
    }

    /// True when the underlying oriented graph (labels ignored) is a tree.
    pub fn is_tree(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 || self.edges.len() + 1 != n {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.init), find(&mut parent, e.terminal));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    /// Whether the vertex/edge subsets form a sub-LOG, i.e. every endpoint
    /// and label of a kept edge is a kept vertex.
    pub fn is_closed(&self, vertices: &[bool], edges: &[bool]) -> bool {
        self.edges.iter().zip(edges).all(|(e, &keep)| {
            !keep || (vertices[e.init] && vertices[e.terminal] && vertices[e.label])
        })
    }

    /// Extracts the sub-LOG on the given masks, renumbering vertices.
    pub fn sub_log(&self, vertices: &[bool], edges: &[bool]) -> Result<Log> {
        if !self.is_closed(vertices, edges) {
            return Err(Error::Precondition(
                "sub-LOG must contain the endpoints and label of every kept edge".into(),
            ));
        }
        let mut index = vec![usize::MAX; self.num_vertices()];
        let mut names = Vec::new();
        for (v, &keep) in vertices.iter().enumerate() {
            if keep {
                index[v] = names.len();
                names.push(self.vertices[v].clone());
            }
        }
        let kept = self
            .edges
            .iter()
            .zip(edges)
            .filter(|(_, &k)| k)
            .map(|(e, _)| LogEdge {
                init: index[e.init],
                label: index[e.label],
                terminal: index[e.terminal],
            })
            .collect();
        Log::new(names, kept)
    }

    /// One generator per vertex and the relator `x z y^-1 z^-1` for each
    /// edge from `x` to `y` labeled `z`.
    pub fn to_presentation(&self) -> Presentation {
        let relators = self
            .edges
            .iter()
            .map(|e| {
                Word::new(vec![
                    Letter::pos(e.init),
                    Letter::pos(e.label),
                    Letter::neg(e.terminal),
                    Letter::neg(e.label),
                ])
            })
            .collect();
        Presentation {
            generators: self.vertices.clone(),
            relators,
        }
    }
}

pub fn log_to_presentation(g: &Log) -> Presentation {
    g.to_presentation()
}

impl fmt::Display for Log {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.vertices.join(" "))?;
        for e in &self.edges {
            writeln!(
                f,
                "{} {} {}",
                self.vertices[e.init], self.vertices[e.label], self.vertices[e.terminal]
            )?;
        }
        Ok(())
    }
}

impl FromStr for Log {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_log(s)
    }
}

impl Serialize for Log {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let edges: Vec<[&str; 3]> = self
            .edges
            .iter()
            .map(|e| {
                [
                    self.vertices[e.init].as_str(),
                    self.vertices[e.label].as_str(),
                    self.vertices[e.terminal].as_str(),
                ]
            })
            .collect();
        let mut st = s.serialize_struct("Log", 2)?;
        st.serialize_field("vertices", &self.vertices)?;
        st.serialize_field("edges", &edges)?;
        st.end()
    }
}

/// Parses a `vertices: a b c` header followed by `init label terminal` lines.
pub fn parse_log(text: &str) -> Result<Log> {
    let mut vertices: Option<Vec<String>> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: String| Error::Syntax {
            line: line_no,
            column: 1,
            message,
        };
        match &vertices {
            None => {
                let rest = line
                    .strip_prefix("vertices:")
                    .ok_or_else(|| syntax("expected `vertices:` header".into()))?;
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                check_names(&names).map_err(|e| match e {
                    Error::Syntax { message, .. } => syntax(message),
                    other => other,
                })?;
                vertices = Some(names);
            }
            Some(names) => {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(syntax(format!(
                        "edge line needs `init label terminal`, found {} fields",
                        parts.len()
                    )));
                }
                let lookup = |name: &str| {
                    names
                        .iter()
                        .position(|n| n == name)
                        .ok_or_else(|| Error::UndeclaredVertex(name.to_string()))
                };
                edges.push(LogEdge {
                    init: lookup(parts[0])?,
                    label: lookup(parts[1])?,
                    terminal: lookup(parts[2])?,
                });
            }
        }
    }
    let vertices = vertices.ok_or_else(|| Error::Syntax {
        line: 1,
        column: 1,
        message: "missing `vertices:` header".into(),
    })?;
    Log::new(vertices, edges)
}

/// A presentation whose relations are `U_j = V_j` with `U_j`, `V_j`
/// nontrivial positive words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdianPresentation {
    generators: Vec<String>,
    relations: Vec<(Word, Word)>,
}

impl AdianPresentation {
    pub fn new(generators: Vec<String>, relations: Vec<(Word, Word)>) -> Result<Self> {
        check_names(&generators)?;
        for (j, (u, v)) in relations.iter().enumerate() {
            for w in [u, v] {
                if w.is_empty() || !w.is_positive() {
                    return Err(Error::Precondition(format!(
                        "relation {} must have nontrivial positive sides",
                        j + 1
                    )));
                }
                if !w.uses_only(generators.len()) {
                    return Err(Error::GeneratorOutOfRange {
                        index: w.max_generator().unwrap_or(0),
                        size: generators.len(),
                    });
                }
            }
        }
        Ok(AdianPresentation {
            generators,
            relations,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn to_presentation(&self) -> Presentation {
        Presentation {
            generators: self.generators.clone(),
            relators: self
                .relations
                .iter()
                .map(|(u, v)| u.concat(&v.inverse()))
                .collect(),
        }
    }

    /// Whether every relation has `len(U) = len(V)`.
    pub fn is_equal_length(&self) -> bool {
        self.relations.iter().all(|(u, v)| u.len() == v.len())
    }
}

impl fmt::Display for AdianPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |", self.generators.join(", "))?;
        for (j, (u, v)) in self.relations.iter().enumerate() {
            let sep = if j == 0 { " " } else { "; " };
            write!(
                f,
                "{sep}{} = {}",
                u.display(&self.generators),
                v.display(&self.generators)
            )?;
        }
        Ok(())
    }
}

/// Splits every relator as a positive word followed by the inverse of a
/// positive word, reading the literal letter signs. Absent if any relator
/// does not split.
pub fn detect_adian(p: &Presentation) -> Option<AdianPresentation> {
    let mut relations = Vec::with_capacity(p.num_relators());
    for r in p.relators() {
        let letters = r.letters();
        let cut = letters.iter().position(|l| !l.positive)?;
        if cut == 0 || letters[cut..].iter().any(|l| l.positive) {
            return None;
        }
        let u = Word::new(letters[..cut].to_vec());
        let v = Word::new(letters[cut..].to_vec()).inverse();
        relations.push((u, v));
    }
    AdianPresentation::new(p.generators().to_vec(), relations).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example_presentations() {
        let p = parse_presentation("x, y | x^3 y x y").unwrap();
        assert_eq!(p.num_generators(), 2);
        assert_eq!(p.relators()[0].len(), 6);

        let p =
            parse_presentation("x, y, z, w | x^2 y^2 z^2 ; x y x^-1 z y z^-1 ; w^2 x^-1 w^-1 z")
                .unwrap();
        assert_eq!((p.num_generators(), p.num_relators()), (4, 3));
        assert_eq!(p.abelianizations()[0].0, vec![2, 2, 2, 0]);
    }

    #[test]
    fn empty_relator_list_versus_empty_relator() {
        let p = parse_presentation("x | ").unwrap();
        assert_eq!(p.num_relators(), 0);
        assert!(matches!(
            parse_presentation("x | ;"),
            Err(Error::EmptyRelator { line: 1, column: 5 })
        ));
        assert!(matches!(
            parse_presentation("x, x | x"),
            Err(Error::DuplicateName(_))
        ));
        assert!(matches!(
            parse_presentation("x | x y"),
            Err(Error::UndeclaredGenerator { column: 7, .. })
        ));
    }

    #[test]
    fn comments_and_multiline_input() {
        let text = "# a comment\nx, y |\n  x y x^-1 y^-1;  # first\n  x^2 = y^3\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.num_relators(), 2);
        assert_eq!(p.to_string(), "x, y | x y x^-1 y^-1; x^2 y^-3");
    }

    #[test]
    fn relations_keep_the_adian_split() {
        let p = parse_presentation("x, y, z, t, u, v | x u z^2 = y u t v").unwrap();
        let a = detect_adian(&p).unwrap();
        let names = p.generators();
        assert_eq!(a.relations()[0].0.display(names).to_string(), "x u z^2");
        assert_eq!(a.relations()[0].1.display(names).to_string(), "y u t v");
    }

    #[test]
    fn detect_adian_examples() {
        let p = parse_presentation("x, y | x y x^-1 y^-1").unwrap();
        let a = detect_adian(&p).unwrap();
        assert_eq!(a.relations()[0].0, p.parse_word("x y").unwrap());
        assert_eq!(a.relations()[0].1, p.parse_word("y x").unwrap());
        let q = parse_presentation("x, y | x y^-1 x").unwrap();
        assert!(detect_adian(&q).is_none());
        let r = parse_presentation("x, y | x y").unwrap();
        assert!(detect_adian(&r).is_none());
    }

    #[test]
    fn log_parsing_and_conversion() {
        let g = parse_log("vertices: a b\na a b\n").unwrap();
        assert_eq!(g.num_edges(), 1);
        assert!(g.is_tree());
        let p = g.to_presentation();
        assert_eq!(p.to_string(), "a, b | a^2 b^-1 a^-1");
        assert_eq!(p.relators()[0].len(), 4);

        let loop_edge = parse_log("vertices: x\nx x x").unwrap().to_presentation();
        assert_eq!(loop_edge.relators()[0].len(), 4);
        assert!(loop_edge.relators()[0].abelianize(1).is_zero());

        assert!(matches!(
            parse_log("vertices: a b\na c b"),
            Err(Error::UndeclaredVertex(v)) if v == "c"
        ));
        assert!(matches!(
            parse_log("vertices: a a"),
            Err(Error::DuplicateName(_))
        ));
    }

    #[test]
    fn tree_predicate() {
        let path = parse_log("vertices: a b c\na c b\nb a c").unwrap();
        assert!(path.is_tree());
        let cycle = parse_log("vertices: a b\na a b\nb a a").unwrap();
        assert!(!cycle.is_tree());
        let forest = parse_log("vertices: a b c").unwrap();
        assert!(!forest.is_tree());
    }

    #[test]
    fn subpresentation_count() {
        let p = parse_presentation("x | x^2; x^3; x^5").unwrap();
        let subs: Vec<_> = p.subpresentations().collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], p);
        assert!(subs.iter().any(|s| s.num_relators() == 0));
        let empty = parse_presentation("x |").unwrap();
        assert_eq!(
            empty.subpresentations().collect::<Vec<_>>(),
            vec![empty.clone()]
        );
    }

    #[test]
    fn reordering_relabels_letters() {
        let p = parse_presentation("x, y | x y^2; y").unwrap();
        let q = p.reordered(&[1, 0], &[1, 0]).unwrap();
        assert_eq!(q.to_string(), "y, x | y; x y^2");
        assert_eq!(q.relators()[1].letters()[0].generator, 1);
    }
}
