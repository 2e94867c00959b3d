use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::terms::{is_valid_label, Label};

/// A node formula. `Ef` holds if some proper descendant satisfies the
/// argument, `Fp` if some proper ancestor does.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(Label),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Ef(Box<Formula>),
    Fp(Box<Formula>),
}

/// Boolean combination of `Exists(φ)`: "some tree of the forest satisfies φ
/// at its root".
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ForestFormula {
    True,
    False,
    Exists(Formula),
    Not(Box<ForestFormula>),
    And(Box<ForestFormula>, Box<ForestFormula>),
    Or(Box<ForestFormula>, Box<ForestFormula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("formula syntax error at byte {pos}: {msg}")]
pub struct FormulaError {
    pub pos: usize,
    pub msg: String,
}

impl Formula {
    pub fn atom(label: impl Into<Label>) -> Self {
        Formula::Atom(label.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn ef(self) -> Self {
        Formula::Ef(Box::new(self))
    }

    pub fn fp(self) -> Self {
        Formula::Fp(Box::new(self))
    }

    pub fn parse(text: &str) -> Result<Self, FormulaError> {
        let mut p = Parser::new(text)?;
        let f = p.node_or()?;
        p.finish()?;
        Ok(f)
    }

    /// Maximal nesting of `EF` and `FP`.
    pub fn nesting_depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 0,
            Formula::Not(f) => f.nesting_depth(),
            Formula::And(a, b) | Formula::Or(a, b) => a.nesting_depth().max(b.nesting_depth()),
            Formula::Ef(f) | Formula::Fp(f) => 1 + f.nesting_depth(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 1,
            Formula::Not(f) | Formula::Ef(f) | Formula::Fp(f) => 1 + f.size(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn labels(&self, out: &mut std::collections::BTreeSet<Label>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(l) => {
                out.insert(l.clone());
            }
            Formula::Not(f) | Formula::Ef(f) | Formula::Fp(f) => f.labels(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.labels(out);
                b.labels(out);
            }
        }
    }

    /// Conjoin `guard` to every subformula.
    pub fn relativize(&self, guard: &Formula) -> Formula {
        let inner = match self {
            Formula::True | Formula::False | Formula::Atom(_) => self.clone(),
            Formula::Not(f) => f.relativize(guard).not(),
            Formula::And(a, b) => a.relativize(guard).and(b.relativize(guard)),
            Formula::Or(a, b) => a.relativize(guard).or(b.relativize(guard)),
            Formula::Ef(f) => f.relativize(guard).ef(),
            Formula::Fp(f) => f.relativize(guard).fp(),
        };
        inner.and(guard.clone())
    }

    fn is_binary(&self) -> bool {
        matches!(self, Formula::And(..) | Formula::Or(..))
    }
}

impl ForestFormula {
    pub fn exists(phi: Formula) -> Self {
        ForestFormula::Exists(phi)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        ForestFormula::Not(Box::new(self))
    }

    pub fn and(self, other: ForestFormula) -> Self {
        ForestFormula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: ForestFormula) -> Self {
        ForestFormula::Or(Box::new(self), Box::new(other))
    }

    pub fn parse(text: &str) -> Result<Self, FormulaError> {
        let mut p = Parser::new(text)?;
        let f = p.forest_or()?;
        p.finish()?;
        Ok(f)
    }

    pub fn nesting_depth(&self) -> usize {
        match self {
            ForestFormula::True | ForestFormula::False => 0,
            ForestFormula::Exists(phi) => phi.nesting_depth(),
            ForestFormula::Not(f) => f.nesting_depth(),
            ForestFormula::And(a, b) | ForestFormula::Or(a, b) => {
                a.nesting_depth().max(b.nesting_depth())
            }
        }
    }

    /// Node formulas under `Exists`, left to right.
    pub fn atoms(&self) -> Vec<&Formula> {
        fn go<'a>(f: &'a ForestFormula, out: &mut Vec<&'a Formula>) {
            match f {
                ForestFormula::True | ForestFormula::False => {}
                ForestFormula::Exists(phi) => out.push(phi),
                ForestFormula::Not(g) => go(g, out),
                ForestFormula::And(a, b) | ForestFormula::Or(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Evaluate the boolean skeleton given the truth of each `Exists` atom.
    pub fn eval_skeleton(&self, atom: &mut impl FnMut(&Formula) -> bool) -> bool {
        match self {
            ForestFormula::True => true,
            ForestFormula::False => false,
            ForestFormula::Exists(phi) => atom(phi),
            ForestFormula::Not(f) => !f.eval_skeleton(atom),
            ForestFormula::And(a, b) => a.eval_skeleton(atom) && b.eval_skeleton(atom),
            ForestFormula::Or(a, b) => a.eval_skeleton(atom) || b.eval_skeleton(atom),
        }
    }

    /// Rewrite every `Exists` atom.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Formula) -> Formula) -> ForestFormula {
        match self {
            ForestFormula::True => ForestFormula::True,
            ForestFormula::False => ForestFormula::False,
            ForestFormula::Exists(phi) => ForestFormula::Exists(f(phi)),
            ForestFormula::Not(g) => g.map_atoms(f).not(),
            ForestFormula::And(a, b) => a.map_atoms(f).and(b.map_atoms(f)),
            ForestFormula::Or(a, b) => a.map_atoms(f).or(b.map_atoms(f)),
        }
    }
}

pub fn nesting_depth(phi: &Formula) -> usize {
    phi.nesting_depth()
}

// Rendering is fully parenthesised: binary connectives always carry their
// own parentheses, modal operators wrap non-binary arguments.

fn write_modal(f: &mut fmt::Formatter<'_>, op: &str, arg: &Formula) -> fmt::Result {
    if arg.is_binary() {
        write!(f, "{op}{arg}")
    } else {
        write!(f, "{op}({arg})")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Atom(l) => f.write_str(l),
            Formula::Not(g) => write!(f, "!{g}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Ef(g) => write_modal(f, "EF", g),
            Formula::Fp(g) => write_modal(f, "FP", g),
        }
    }
}

impl fmt::Display for ForestFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForestFormula::True => f.write_str("true"),
            ForestFormula::False => f.write_str("false"),
            ForestFormula::Exists(phi) => write_modal(f, "E", phi),
            ForestFormula::Not(g) => write!(f, "!{g}"),
            ForestFormula::And(a, b) => write!(f, "({a} & {b})"),
            ForestFormula::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Formula::parse(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl Serialize for ForestFormula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ForestFormula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        ForestFormula::parse(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Bang,
    Amp,
    Pipe,
    End,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, FormulaError> {
        let bytes = text.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let tok = match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    i += 1;
                    continue;
                }
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'!' => Tok::Bang,
                b'&' => Tok::Amp,
                b'|' => Tok::Pipe,
                c if c.is_ascii_alphabetic() => {
                    let start = i;
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    toks.push((Tok::Ident(text[start..i].to_string()), start));
                    continue;
                }
                other => {
                    return Err(FormulaError {
                        pos: i,
                        msg: format!("unexpected character `{}`", other as char),
                    })
                }
            };
            toks.push((tok, i));
            i += 1;
        }
        toks.push((Tok::End, text.len()));
        Ok(Parser { toks, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, FormulaError> {
        Err(FormulaError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), FormulaError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn finish(&self) -> Result<(), FormulaError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.error("trailing input")
        }
    }

    fn node_or(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.node_and()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            lhs = lhs.or(self.node_and()?);
        }
        Ok(lhs)
    }

    fn node_and(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.node_unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs = lhs.and(self.node_unary()?);
        }
        Ok(lhs)
    }

    fn node_unary(&mut self) -> Result<Formula, FormulaError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(self.node_unary()?.not())
            }
            Tok::LParen => {
                self.bump();
                let f = self.node_or()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(id) => {
                self.bump();
                Ok(match id.as_str() {
                    "EF" => self.node_unary()?.ef(),
                    "FP" => self.node_unary()?.fp(),
                    "true" => Formula::True,
                    "false" => Formula::False,
                    _ if is_valid_label(&id) => Formula::Atom(id),
                    _ => return self.error(format!("invalid label `{id}`")),
                })
            }
            _ => self.error("expected a formula"),
        }
    }

    fn forest_or(&mut self) -> Result<ForestFormula, FormulaError> {
        let mut lhs = self.forest_and()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            lhs = lhs.or(self.forest_and()?);
        }
        Ok(lhs)
    }

    fn forest_and(&mut self) -> Result<ForestFormula, FormulaError> {
        let mut lhs = self.forest_unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs = lhs.and(self.forest_unary()?);
        }
        Ok(lhs)
    }

    fn forest_unary(&mut self) -> Result<ForestFormula, FormulaError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(self.forest_unary()?.not())
            }
            Tok::LParen => {
                self.bump();
                let f = self.forest_or()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(id) if id == "E" => {
                self.bump();
                self.expect(Tok::LParen, "`(` after E")?;
                let phi = self.node_or()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(ForestFormula::Exists(phi))
            }
            Tok::Ident(id) if id == "true" => {
                self.bump();
                Ok(ForestFormula::True)
            }
            Tok::Ident(id) if id == "false" => {
                self.bump();
                Ok(ForestFormula::False)
            }
            _ => self.error("expected E(...), !, ( or a constant"),
        }
    }
}
