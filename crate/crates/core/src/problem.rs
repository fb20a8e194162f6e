//! Line-oriented problem files.
//!
//! ```text
//! # comments run to end of line
//! universe: a b c d
//! order: a<b c<d        # strict pairs; `a<b<c` is shorthand for a<b b<c
//! partition: {a d} {b c}
//! force: b<a
//! ```
//!
//! `universe` is required and appears once; `order` may repeat; `partition`
//! and `force` are optional. Order pairs are closed reflexively and
//! transitively on load and rejected if that closure is not antisymmetric.

use std::fmt;

use thiserror::Error;

use crate::extension::shortest_cycle;
use crate::relation::{valid_label, PartialOrder, Partition, Relation, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: Option<usize>,
    pub field: &'static str,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line} ({}): {}", self.field, self.message),
            None => write!(f, "{}: {}", self.field, self.message),
        }
    }
}

fn err(line: Option<usize>, field: &'static str, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        field,
        message: message.into(),
    }
}

/// The file contents, by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub universe: Vec<String>,
    pub order_pairs: Vec<(String, String)>,
    pub partition_blocks: Option<Vec<Vec<String>>>,
    pub forced_pair: Option<(String, String)>,
}

/// A validated problem, by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub universe: Universe,
    pub order: PartialOrder,
    pub partition: Option<Partition>,
    pub forced: Option<(usize, usize)>,
}

fn parse_chain(
    text: &str,
    line: usize,
    field: &'static str,
) -> Result<Vec<(String, String)>, ParseError> {
    let labels: Vec<&str> = text.split('<').collect();
    if labels.len() < 2 {
        return Err(err(
            Some(line),
            field,
            format!("expected `x<y`, found `{text}`"),
        ));
    }
    for label in &labels {
        if !valid_label(label) {
            return Err(err(
                Some(line),
                field,
                format!("invalid label `{label}` in `{text}`"),
            ));
        }
    }
    Ok(labels
        .windows(2)
        .map(|w| (w[0].to_string(), w[1].to_string()))
        .collect())
}

fn parse_blocks(text: &str, line: usize) -> Result<Vec<Vec<String>>, ParseError> {
    let mut blocks = Vec::new();
    let mut current: Option<Vec<String>> = None;
    let mut token = String::new();
    for c in text.chars() {
        match c {
            '{' => {
                if current.is_some() {
                    return Err(err(Some(line), "partition", "nested `{`"));
                }
                if !token.is_empty() {
                    return Err(err(
                        Some(line),
                        "partition",
                        format!("label `{token}` outside a block"),
                    ));
                }
                current = Some(Vec::new());
            }
            '}' | ' ' | '\t' => {
                if !token.is_empty() {
                    match current.as_mut() {
                        Some(block) => block.push(std::mem::take(&mut token)),
                        None => {
                            return Err(err(
                                Some(line),
                                "partition",
                                format!("label `{token}` outside a block"),
                            ))
                        }
                    }
                }
                if c == '}' {
                    let block = current
                        .take()
                        .ok_or_else(|| err(Some(line), "partition", "unmatched `}`"))?;
                    if block.is_empty() {
                        return Err(err(Some(line), "partition", "empty block"));
                    }
                    blocks.push(block);
                }
            }
            _ => token.push(c),
        }
    }
    if current.is_some() {
        return Err(err(Some(line), "partition", "unterminated block"));
    }
    if !token.is_empty() {
        return Err(err(
            Some(line),
            "partition",
            format!("label `{token}` outside a block"),
        ));
    }
    for label in blocks.iter().flatten() {
        if !valid_label(label) {
            return Err(err(
                Some(line),
                "partition",
                format!("invalid label `{label}`"),
            ));
        }
    }
    Ok(blocks)
}

struct Located<T> {
    line: usize,
    value: T,
}

impl ProblemFile {
    /// Parses and validates a problem file.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut universe: Option<Located<Vec<String>>> = None;
        let mut orders: Vec<Located<(String, String)>> = Vec::new();
        let mut partition: Option<Located<Vec<Vec<String>>>> = None;
        let mut forced: Option<Located<(String, String)>> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once(':').ok_or_else(|| {
                err(
                    Some(line),
                    "syntax",
                    format!("expected `key: value`, found `{content}`"),
                )
            })?;
            let value = value.trim();
            match key.trim() {
                "universe" => {
                    if universe.is_some() {
                        return Err(err(Some(line), "universe", "universe given twice"));
                    }
                    let labels: Vec<String> = value.split_whitespace().map(String::from).collect();
                    universe = Some(Located {
                        line,
                        value: labels,
                    });
                }
                "order" => {
                    for token in value.split_whitespace() {
                        for pair in parse_chain(token, line, "order")? {
                            orders.push(Located { line, value: pair });
                        }
                    }
                }
                "partition" => {
                    if partition.is_some() {
                        return Err(err(Some(line), "partition", "partition given twice"));
                    }
                    partition = Some(Located {
                        line,
                        value: parse_blocks(value, line)?,
                    });
                }
                "force" => {
                    if forced.is_some() {
                        return Err(err(Some(line), "force", "forced pair given twice"));
                    }
                    let mut pairs = parse_chain(value, line, "force")?;
                    if pairs.len() != 1 || value.split_whitespace().count() != 1 {
                        return Err(err(Some(line), "force", "expected exactly one pair `x<y`"));
                    }
                    forced = Some(Located {
                        line,
                        value: pairs.remove(0),
                    });
                }
                other => {
                    return Err(err(Some(line), "syntax", format!("unknown key `{other}`")));
                }
            }
        }

        let universe = universe.ok_or_else(|| err(None, "universe", "missing `universe:` line"))?;
        let u = Universe::new(universe.value.iter().cloned())
            .map_err(|e| err(Some(universe.line), "universe", e.to_string()))?;
        let lookup = |label: &str, line: usize, field: &'static str| {
            u.index_of(label).map_err(|_| {
                err(
                    Some(line),
                    field,
                    format!("label `{label}` is not in the universe"),
                )
            })
        };

        let mut strict = Relation::empty(u.len()).expect("universe is nonempty");
        for o in &orders {
            let a = lookup(&o.value.0, o.line, "order")?;
            let b = lookup(&o.value.1, o.line, "order")?;
            strict = strict.with_pair(a, b).expect("indices resolved");
        }
        if let Some(cycle) = shortest_cycle(&strict) {
            let mut names: Vec<&str> = cycle.iter().map(|&i| u.label(i)).collect();
            names.push(u.label(cycle[0]));
            let line = orders
                .iter()
                .find(|o| o.value.0 == u.label(cycle[0]))
                .map(|o| o.line);
            return Err(err(
                line,
                "order",
                format!("order pairs form a cycle: {}", names.join(" < ")),
            ));
        }

        if let Some(p) = &partition {
            let mut seen = vec![false; u.len()];
            for label in p.value.iter().flatten() {
                let i = lookup(label, p.line, "partition")?;
                if std::mem::replace(&mut seen[i], true) {
                    return Err(err(
                        Some(p.line),
                        "partition",
                        format!("label `{label}` appears twice"),
                    ));
                }
            }
            if let Some(i) = seen.iter().position(|s| !s) {
                return Err(err(
                    Some(p.line),
                    "partition",
                    format!("label `{}` is not in any block", u.label(i)),
                ));
            }
        }
        if let Some(f) = &forced {
            lookup(&f.value.0, f.line, "force")?;
            lookup(&f.value.1, f.line, "force")?;
        }

        Ok(ProblemFile {
            universe: universe.value,
            order_pairs: orders.into_iter().map(|o| o.value).collect(),
            partition_blocks: partition.map(|p| p.value),
            forced_pair: forced.map(|f| f.value),
        })
    }

    /// Canonical text: one line per key, in the order universe, order,
    /// partition, force.
    pub fn to_text(&self) -> String {
        let mut out = format!("universe: {}\n", self.universe.join(" "));
        if !self.order_pairs.is_empty() {
            let pairs: Vec<String> = self
                .order_pairs
                .iter()
                .map(|(a, b)| format!("{a}<{b}"))
                .collect();
            out.push_str(&format!("order: {}\n", pairs.join(" ")));
        }
        if let Some(blocks) = &self.partition_blocks {
            let blocks: Vec<String> = blocks
                .iter()
                .map(|b| format!("{{{}}}", b.join(" ")))
                .collect();
            out.push_str(&format!("partition: {}\n", blocks.join(" ")));
        }
        if let Some((a, b)) = &self.forced_pair {
            out.push_str(&format!("force: {a}<{b}\n"));
        }
        out
    }

    /// Resolves labels to indices.
    pub fn to_problem(&self) -> Result<Problem, ParseError> {
        let universe = Universe::new(self.universe.iter().cloned())
            .map_err(|e| err(None, "universe", e.to_string()))?;
        let index = |label: &str, field: &'static str| {
            universe
                .index_of(label)
                .map_err(|e| err(None, field, e.to_string()))
        };
        let mut pairs = Vec::with_capacity(self.order_pairs.len());
        for (a, b) in &self.order_pairs {
            pairs.push((index(a, "order")?, index(b, "order")?));
        }
        let order = PartialOrder::from_strict_pairs(universe.len(), pairs)
            .map_err(|e| err(None, "order", e.to_string()))?;
        let partition = match &self.partition_blocks {
            Some(blocks) => {
                let mut resolved = Vec::with_capacity(blocks.len());
                for block in blocks {
                    let mut ids = Vec::with_capacity(block.len());
                    for label in block {
                        ids.push(index(label, "partition")?);
                    }
                    resolved.push(ids);
                }
                Some(
                    Partition::from_blocks(universe.len(), resolved)
                        .map_err(|e| err(None, "partition", e.to_string()))?,
                )
            }
            None => None,
        };
        let forced = match &self.forced_pair {
            Some((a, b)) => Some((index(a, "force")?, index(b, "force")?)),
            None => None,
        };
        Ok(Problem {
            universe,
            order,
            partition,
            forced,
        })
    }
}

impl Problem {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        ProblemFile::parse(text)?.to_problem()
    }

    /// Writes the order as its covering pairs (the transitive reduction),
    /// the partition in canonical block order.
    pub fn to_file(&self) -> ProblemFile {
        let u = &self.universe;
        let strict = self.order.strict_part();
        let implied = strict.compose(&strict).expect("same universe");
        let order_pairs = strict
            .difference(&implied)
            .expect("same universe")
            .pairs()
            .map(|(a, b)| (u.label(a).to_string(), u.label(b).to_string()))
            .collect();
        ProblemFile {
            universe: u.labels().to_vec(),
            order_pairs,
            partition_blocks: self.partition.as_ref().map(|s| {
                s.blocks()
                    .iter()
                    .map(|b| b.iter().map(|&i| u.label(i).to_string()).collect())
                    .collect()
            }),
            forced_pair: self
                .forced
                .map(|(a, b)| (u.label(a).to_string(), u.label(b).to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# separation witness
universe: a b c d
order: a<b c<d   # two chains
partition: {b c} {d a}
";

    #[test]
    fn parses_sample() {
        let f = ProblemFile::parse(SAMPLE).unwrap();
        assert_eq!(f.universe, ["a", "b", "c", "d"]);
        assert_eq!(
            f.order_pairs,
            vec![("a".into(), "b".into()), ("c".into(), "d".into())]
        );
        assert_eq!(
            f.partition_blocks,
            Some(vec![
                vec!["b".into(), "c".into()],
                vec!["d".into(), "a".into()]
            ])
        );
        let p = f.to_problem().unwrap();
        assert_eq!(p.partition.unwrap().blocks(), vec![vec![0, 3], vec![1, 2]]);
        assert!(p.order.le(0, 1) && p.order.le(2, 3) && !p.order.le(0, 3));
    }

    #[test]
    fn chains_and_force() {
        let p = Problem::parse("universe: a b c\norder: a<b<c\nforce: c<a\n").unwrap();
        assert!(p.order.le(0, 2));
        assert_eq!(p.forced, Some((2, 0)));
        assert_eq!(p.partition, None);
    }

    #[test]
    fn canonical_text() {
        let f = ProblemFile::parse(SAMPLE).unwrap();
        let text = f.to_text();
        assert_eq!(
            text,
            "universe: a b c d\norder: a<b c<d\npartition: {b c} {d a}\n"
        );
        assert_eq!(ProblemFile::parse(&text).unwrap(), f);
    }

    #[test]
    fn problem_to_file_uses_cover_pairs() {
        let p = Problem::parse("universe: a b c\norder: a<b b<c a<c\npartition: {c} {a} {b}\n")
            .unwrap();
        let f = p.to_file();
        assert_eq!(
            f.order_pairs,
            vec![("a".into(), "b".into()), ("b".into(), "c".into())]
        );
        assert_eq!(
            f.partition_blocks,
            Some(vec![vec!["a".into()], vec!["b".into()], vec!["c".into()]])
        );
        assert_eq!(f.to_problem().unwrap(), p);
    }

    fn error_of(text: &str) -> ParseError {
        ProblemFile::parse(text).unwrap_err()
    }

    #[test]
    fn diagnostics() {
        let e = error_of("universe: a b\norder: a<z\n");
        assert_eq!((e.line, e.field), (Some(2), "order"));
        assert!(e.to_string().contains("`z`"), "{e}");

        let e = error_of("order: a<b\n");
        assert_eq!((e.line, e.field), (None, "universe"));

        let e = error_of("universe: a b\nuniverse: a\n");
        assert_eq!(e.line, Some(2));

        let e = error_of("universe: a a\n");
        assert_eq!((e.line, e.field), (Some(1), "universe"));

        let e = error_of("universe:\n");
        assert_eq!(e.field, "universe");

        let e = error_of("universe: a b\nfoo: bar\n");
        assert_eq!((e.line, e.field), (Some(2), "syntax"));

        let e = error_of("universe: a b\nno colon here\n");
        assert_eq!(e.field, "syntax");

        let e = error_of("universe: a b\norder: ab\n");
        assert_eq!(e.field, "order");

        let e = error_of("universe: a b\norder: a<\n");
        assert_eq!(e.field, "order");
    }

    #[test]
    fn rejects_cycles() {
        let e = error_of("universe: a b c\norder: a<b\norder: b<c c<a\n");
        assert_eq!(e.field, "order");
        assert!(e.message.contains("a < b < c < a"), "{}", e.message);
        let e = error_of("universe: a b\norder: a<a\n");
        assert!(e.message.contains("a < a"), "{}", e.message);
    }

    #[test]
    fn partition_diagnostics() {
        let e = error_of("universe: a b c\npartition: {a b}\n");
        assert!(
            e.message.contains("`c` is not in any block"),
            "{}",
            e.message
        );
        let e = error_of("universe: a b c\npartition: {a b} {b c}\n");
        assert!(e.message.contains("twice"));
        let e = error_of("universe: a b\npartition: {a {b}}\n");
        assert!(e.message.contains("nested"));
        let e = error_of("universe: a b\npartition: {a} b\n");
        assert!(e.message.contains("outside"));
        let e = error_of("universe: a b\npartition: {a} {b\n");
        assert!(e.message.contains("unterminated"));
        let e = error_of("universe: a b\npartition: {a} {} {b}\n");
        assert!(e.message.contains("empty"));
        let e = error_of("universe: a b\npartition: {a} {x}\n");
        assert_eq!(e.line, Some(2));
    }

    #[test]
    fn force_diagnostics() {
        let e = error_of("universe: a b c\nforce: a<b<c\n");
        assert_eq!(e.field, "force");
        let e = error_of("universe: a b\nforce: a<q\n");
        assert_eq!(e.field, "force");
        let e = error_of("universe: a b\nforce: a<b\nforce: b<a\n");
        assert!(e.message.contains("twice"));
    }
}
