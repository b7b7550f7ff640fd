use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom { text: String, line: usize, col: usize },
    List { items: Vec<Sexp>, line: usize, col: usize },
}

impl Sexp {
    pub fn pos(&self) -> (usize, usize) {
        match self {
            Sexp::Atom { line, col, .. } | Sexp::List { line, col, .. } => (*line, *col),
        }
    }

    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom { text, .. } => Some(text),
            Sexp::List { .. } => None,
        }
    }

    pub fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.pos();
        Error::Parse { line, col, msg: msg.into() }
    }

    /// Head symbol and arguments of a list.
    pub fn head(&self) -> Result<(&str, &[Sexp])> {
        match self {
            Sexp::List { items, .. } => match items.first() {
                Some(Sexp::Atom { text, .. }) => Ok((text, &items[1..])),
                _ => Err(self.err("expected a keyword after '('")),
            },
            Sexp::Atom { text, .. } => Err(self.err(format!("expected a list, found '{text}'"))),
        }
    }
}

/// Reads all top-level expressions. `;` starts a comment running to end of line.
pub fn read_all(text: &str) -> Result<Vec<Sexp>> {
    let mut stack: Vec<(Vec<Sexp>, usize, usize)> = Vec::new();
    let mut top = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&ch) = chars.peek() {
        match ch {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '(' => {
                chars.next();
                stack.push((Vec::new(), line, col));
                col += 1;
            }
            ')' => {
                chars.next();
                let Some((items, l, c)) = stack.pop() else {
                    return Err(Error::Parse { line, col, msg: "unbalanced ')'".into() });
                };
                col += 1;
                let node = Sexp::List { items, line: l, col: c };
                match stack.last_mut() {
                    Some(parent) => parent.0.push(node),
                    None => top.push(node),
                }
            }
            _ => {
                let (l, c) = (line, col);
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    s.push(c);
                    chars.next();
                    col += 1;
                }
                let node = Sexp::Atom { text: s, line: l, col: c };
                match stack.last_mut() {
                    Some(parent) => parent.0.push(node),
                    None => top.push(node),
                }
            }
        }
    }
    if let Some((_, l, c)) = stack.pop() {
        return Err(Error::Parse { line: l, col: c, msg: "unclosed '('".into() });
    }
    Ok(top)
}
