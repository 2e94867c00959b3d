//! Recursive-descent reader for the term grammar
//!
//! ```text
//! FOREST := TREE ("+" TREE)*
//! TREE   := LABEL | LABEL "(" FOREST ")" | "[]"
//! ```

use super::{Context, Forest, Label, Spine, TermError, Tree};

#[derive(Debug, Clone)]
pub(crate) enum Raw {
    Node(Label, Vec<Raw>),
    Hole,
}

impl Raw {
    fn holes(&self) -> usize {
        match self {
            Raw::Hole => 1,
            Raw::Node(_, children) => children.iter().map(Raw::holes).sum(),
        }
    }
}

pub(crate) struct Reader<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Reader {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, msg: impl Into<String>) -> TermError {
        TermError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), TermError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    pub(crate) fn label(&mut self) -> Result<Label, TermError> {
        self.skip_ws();
        let start = self.pos;
        match self.text.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return Err(self.error("expected a label")),
        }
        while self
            .text
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        Ok(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned())
    }

    pub(crate) fn forest(&mut self) -> Result<Vec<Raw>, TermError> {
        let mut trees = vec![self.tree()?];
        while self.eat(b'+') {
            trees.push(self.tree()?);
        }
        Ok(trees)
    }

    fn tree(&mut self) -> Result<Raw, TermError> {
        if self.eat(b'[') {
            self.expect(b']')?;
            return Ok(Raw::Hole);
        }
        let label = self.label()?;
        if self.eat(b'(') {
            let children = self.forest()?;
            self.expect(b')')?;
            Ok(Raw::Node(label, children))
        } else {
            Ok(Raw::Node(label, Vec::new()))
        }
    }

    pub(crate) fn finish(&mut self) -> Result<(), TermError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
        }
    }
}

pub(crate) fn parse_raw(text: &str) -> Result<Vec<Raw>, TermError> {
    let mut reader = Reader::new(text);
    let raw = reader.forest()?;
    reader.finish()?;
    Ok(raw)
}

fn to_tree(raw: Raw) -> Tree {
    match raw {
        Raw::Node(l, children) if children.is_empty() => Tree::Leaf(l),
        Raw::Node(l, children) => {
            Tree::Inner(l, Forest(children.into_iter().map(to_tree).collect()))
        }
        Raw::Hole => unreachable!("holes are rejected before conversion"),
    }
}

pub(crate) fn parse_forest(text: &str) -> Result<Forest, TermError> {
    let raw = parse_raw(text)?;
    if raw.iter().any(|r| r.holes() > 0) {
        return Err(TermError::HoleInForest);
    }
    Ok(Forest(raw.into_iter().map(to_tree).collect()))
}

fn to_context(raw: Vec<Raw>) -> Context {
    let split = raw
        .iter()
        .position(|r| r.holes() == 1)
        .expect("caller checked hole count");
    let mut left = raw;
    let mut right = left.split_off(split);
    let spine_raw = right.remove(0);
    let spine = match spine_raw {
        Raw::Hole => Spine::Hole,
        Raw::Node(l, children) => Spine::Node(l, Box::new(to_context(children))),
    };
    Context {
        left: left.into_iter().map(to_tree).collect(),
        spine,
        right: right.into_iter().map(to_tree).collect(),
    }
}

pub(crate) fn parse_context(text: &str) -> Result<Context, TermError> {
    let raw = parse_raw(text)?;
    let holes: usize = raw.iter().map(Raw::holes).sum();
    if holes != 1 {
        return Err(TermError::HoleCount(holes));
    }
    Ok(to_context(raw))
}
