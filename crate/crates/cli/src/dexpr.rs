//! Parser for diagram expressions: `cell(i)`, `eps(word)`, `inv(e)`,
//! products `*` (composition), sums `+`, and parentheses. `*` binds
//! tighter than `+`.

use cgf_core::diagram::{Diagram, DiagramError, Presentation};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Cell(usize),
    Eps(String),
    Inv,
    Open,
    Close,
    Star,
    Plus,
}

fn tokenize(src: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '(' => {
                out.push(Token::Open);
                i += 1;
            }
            ')' => {
                out.push(Token::Close);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            _ => {
                let rest: String = chars[i..].iter().collect();
                if let Some(tail) = rest.strip_prefix("cell(") {
                    let end = tail.find(')').ok_or("unclosed cell(")?;
                    let idx: usize = tail[..end]
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad cell index {:?}", &tail[..end]))?;
                    out.push(Token::Cell(idx));
                    i += 5 + end + 1;
                } else if let Some(tail) = rest.strip_prefix("eps(") {
                    let end = tail.find(')').ok_or("unclosed eps(")?;
                    out.push(Token::Eps(tail[..end].trim().to_string()));
                    i += 4 + end + 1;
                } else if rest.starts_with("inv(") {
                    out.push(Token::Inv);
                    out.push(Token::Open);
                    i += 4;
                } else {
                    return Err(format!("unexpected character {c:?} in expression"));
                }
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    pres: &'a Arc<Presentation>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<Diagram, String> {
        let mut acc = self.product()?;
        while self.peek() == Some(&Token::Plus) {
            self.pos += 1;
            let rhs = self.product()?;
            acc = acc.sum(&rhs).map_err(|e| e.to_string())?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Diagram, String> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            let rhs = self.atom()?;
            acc = acc.compose(&rhs).map_err(|e: DiagramError| e.to_string())?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Diagram, String> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Cell(i)) => {
                self.pos += 1;
                Diagram::cell(self.pres, i).map_err(|e| e.to_string())
            }
            Some(Token::Eps(w)) => {
                self.pos += 1;
                let word = self.pres.word(&w).map_err(|e| e.to_string())?;
                Diagram::trivial(self.pres, &word).map_err(|e| e.to_string())
            }
            Some(Token::Inv) => {
                self.pos += 1; // consume Inv; next token is Open
                let inner = self.group()?;
                Ok(inner.inverse())
            }
            Some(Token::Open) => self.group(),
            other => Err(format!("unexpected token {other:?}")),
        }
    }

    fn group(&mut self) -> Result<Diagram, String> {
        if self.peek() != Some(&Token::Open) {
            return Err("expected (".into());
        }
        self.pos += 1;
        let inner = self.expr()?;
        if self.peek() != Some(&Token::Close) {
            return Err("expected )".into());
        }
        self.pos += 1;
        Ok(inner)
    }
}

pub fn eval(pres: &Arc<Presentation>, src: &str) -> Result<Diagram, String> {
    let tokens = tokenize(src)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        pres,
    };
    let d = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err("trailing tokens in expression".into());
    }
    Ok(d)
}
