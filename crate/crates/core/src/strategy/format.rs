//! Line-oriented text format for strategies.

use super::{CliqueLeaf, JoinNode, P3Leaf, PadNode, ScaleNode, Slot, Strategy, StrategyError};

fn slot_token(s: Slot) -> String {
    match s {
        Slot::Vertex(v) => v.to_string(),
        Slot::Pivot => "*".to_string(),
    }
}

fn join_slots(slots: &[Slot]) -> String {
    slots
        .iter()
        .map(|&s| slot_token(s))
        .collect::<Vec<_>>()
        .join(" ")
}

fn join_nums(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn keyed(key: &str, rest: &str) -> String {
    if rest.is_empty() {
        key.to_string()
    } else {
        format!("{key} {rest}")
    }
}

fn write_block(s: &Strategy, out: &mut String) {
    let mut line = |l: String| {
        out.push_str(&l);
        out.push('\n');
    };
    match s {
        Strategy::Clique(c) => {
            line(format!("CLIQUE {}", c.vertices().len()));
            line(keyed("V", &join_slots(c.vertices())));
            line(keyed("H", &join_nums(c.hatness())));
            line(keyed("G", &join_nums(c.guesses())));
        }
        Strategy::P3(p) => {
            line("P3".into());
            line(format!("V {}", join_slots(&[p.end_u, p.center, p.end_w])));
            line(format!("H {}", p.hatness));
            line(format!("G {}", p.guesses));
        }
        Strategy::Scale(sc) => {
            line(format!("SCALE {}", sc.factor));
            write_block(&sc.inner, out);
        }
        Strategy::Pad(p) => {
            line("PAD".into());
            line(keyed("G", &join_nums(&p.guesses)));
            write_block(&p.inner, out);
        }
        Strategy::Join(j) => {
            line("JOIN".into());
            line(keyed("SEP", &join_slots(&j.separator)));
            line(format!("PIVOT {} {}", j.pivot_hatness, j.pivot_guesses));
            line("LEFT".into());
            write_block(&j.left, out);
            out.push_str("RIGHT\n");
            write_block(&j.right, out);
        }
    }
    out.push_str("END\n");
}

/// Canonical text form; `deserialize` inverts it exactly.
pub fn serialize(s: &Strategy) -> String {
    let mut out = String::new();
    write_block(s, &mut out);
    out
}

struct Parser<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, line: usize, message: impl Into<String>) -> StrategyError {
        StrategyError::Parse {
            line,
            message: message.into(),
        }
    }

    /// Next line split into fields, with its 1-based line number.
    fn next(&mut self) -> Result<(usize, Vec<&'a str>), StrategyError> {
        match self.lines.get(self.pos) {
            Some(l) => {
                self.pos += 1;
                Ok((self.pos, l.split(' ').collect()))
            }
            None => Err(self.err(self.pos + 1, "unexpected end of input")),
        }
    }

    fn expect(&mut self, key: &str) -> Result<(usize, Vec<&'a str>), StrategyError> {
        let (n, fields) = self.next()?;
        if fields[0] != key {
            return Err(self.err(n, format!("expected {key}, found {:?}", fields[0])));
        }
        Ok((n, fields[1..].to_vec()))
    }

    fn expect_bare(&mut self, key: &str) -> Result<(), StrategyError> {
        let (n, rest) = self.expect(key)?;
        if !rest.is_empty() {
            return Err(self.err(n, format!("{key} takes no fields")));
        }
        Ok(())
    }

    fn num(&self, line: usize, tok: &str) -> Result<u64, StrategyError> {
        if tok.is_empty()
            || !tok.bytes().all(|b| b.is_ascii_digit())
            || (tok.len() > 1 && tok.starts_with('0'))
        {
            return Err(self.err(line, format!("bad integer {tok:?}")));
        }
        tok.parse()
            .map_err(|_| self.err(line, format!("integer {tok:?} out of range")))
    }

    fn slot(&self, line: usize, tok: &str) -> Result<Slot, StrategyError> {
        if tok == "*" {
            Ok(Slot::Pivot)
        } else {
            let v = self.num(line, tok)?;
            usize::try_from(v)
                .map(Slot::Vertex)
                .map_err(|_| self.err(line, "vertex id out of range"))
        }
    }

    fn nums(
        &self,
        line: usize,
        toks: &[&str],
        len: Option<usize>,
    ) -> Result<Vec<u64>, StrategyError> {
        if let Some(k) = len {
            if toks.len() != k {
                return Err(self.err(line, format!("expected {k} values, found {}", toks.len())));
            }
        }
        toks.iter().map(|t| self.num(line, t)).collect()
    }

    fn slots(
        &self,
        line: usize,
        toks: &[&str],
        len: Option<usize>,
    ) -> Result<Vec<Slot>, StrategyError> {
        if let Some(k) = len {
            if toks.len() != k {
                return Err(self.err(line, format!("expected {k} vertices, found {}", toks.len())));
            }
        }
        toks.iter().map(|t| self.slot(line, t)).collect()
    }

    fn block(&mut self) -> Result<Strategy, StrategyError> {
        let (n, fields) = self.next()?;
        let wrap = |e: StrategyError| match e {
            StrategyError::Parse { .. } => e,
            other => StrategyError::Parse {
                line: n,
                message: other.to_string(),
            },
        };
        let s = match (fields[0], fields.len()) {
            ("CLIQUE", 2) => {
                let k = self.num(n, fields[1])? as usize;
                let (l, v) = self.expect("V")?;
                let vertices = self.slots(l, &v, Some(k))?;
                let (l, h) = self.expect("H")?;
                let hatness = self.nums(l, &h, Some(k))?;
                let (l, g) = self.expect("G")?;
                let guesses = self.nums(l, &g, Some(k))?;
                Strategy::Clique(CliqueLeaf::new(vertices, hatness, guesses).map_err(wrap)?)
            }
            ("P3", 1) => {
                let (l, v) = self.expect("V")?;
                let v = self.slots(l, &v, Some(3))?;
                let (l, h) = self.expect("H")?;
                let h = self.nums(l, &h, Some(1))?[0];
                let (l, g) = self.expect("G")?;
                let g = self.nums(l, &g, Some(1))?[0];
                Strategy::P3(P3Leaf {
                    end_u: v[0],
                    center: v[1],
                    end_w: v[2],
                    hatness: h,
                    guesses: g,
                })
            }
            ("SCALE", 2) => {
                let factor = self.num(n, fields[1])?;
                Strategy::Scale(ScaleNode {
                    factor,
                    inner: Box::new(self.block()?),
                })
            }
            ("PAD", 1) => {
                let (l, g) = self.expect("G")?;
                let guesses = self.nums(l, &g, None)?;
                Strategy::Pad(PadNode {
                    guesses,
                    inner: Box::new(self.block()?),
                })
            }
            ("JOIN", 1) => {
                let (l, sep) = self.expect("SEP")?;
                let separator = self.slots(l, &sep, None)?;
                let (l, p) = self.expect("PIVOT")?;
                let p = self.nums(l, &p, Some(2))?;
                self.expect_bare("LEFT")?;
                let left = self.block()?;
                self.expect_bare("RIGHT")?;
                let right = self.block()?;
                Strategy::Join(JoinNode {
                    separator,
                    pivot_hatness: p[0],
                    pivot_guesses: p[1],
                    left: Box::new(left),
                    right: Box::new(right),
                })
            }
            _ => return Err(self.err(n, format!("unexpected line {:?}", fields.join(" ")))),
        };
        self.expect_bare("END")?;
        Ok(s)
    }
}

/// Parses the canonical text form. Composition rules (pivot placement,
/// separator hatness, pad counts) are checked as well.
pub fn deserialize(text: &str) -> Result<Strategy, StrategyError> {
    let body = text.strip_suffix('\n').ok_or(StrategyError::Parse {
        line: text.lines().count().max(1),
        message: "missing final newline".into(),
    })?;
    let mut p = Parser {
        lines: body.split('\n').collect(),
        pos: 0,
    };
    if body.is_empty() {
        return Err(p.err(1, "empty input"));
    }
    let s = p.block()?;
    if p.pos < p.lines.len() {
        return Err(p.err(p.pos + 1, "trailing content after strategy"));
    }
    s.cover().map_err(|e| StrategyError::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    if s.cover()?.contains_key(&Slot::Pivot) {
        return Err(p.err(1, "pivot token outside a join"));
    }
    Ok(s)
}
