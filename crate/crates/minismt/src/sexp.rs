//! Minimal S-expression reader for the SMT-LIB 2 concrete syntax.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    /// A symbol, keyword, numeral or string literal. Pipe-quoted symbols are
    /// stored without the bars.
    Atom(String),
    List(Vec<Sexp>),
}

impl Sexp {
    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(s) => Some(s),
            Sexp::List(_) => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::Atom(_) => None,
            Sexp::List(items) => Some(items),
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(s) => write!(f, "{}", s),
            Sexp::List(items) => {
                write!(f, "(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", it)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Incremental reader: feed it text, pull complete top-level forms.
pub struct Reader {
    buf: Vec<char>,
    pos: usize,
}

impl Reader {
    pub fn new() -> Self {
        Reader { buf: Vec::new(), pos: 0 }
    }

    pub fn feed(&mut self, text: &str) {
        self.buf.extend(text.chars());
    }

    fn skip_trivia(&mut self) {
        while self.pos < self.buf.len() {
            let c = self.buf[self.pos];
            if c.is_whitespace() {
                self.pos += 1;
            } else if c == ';' {
                while self.pos < self.buf.len() && self.buf[self.pos] != '\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    /// Try to read one complete form. Returns `None` if the buffered input is
    /// incomplete; consumed input is dropped from the buffer on success.
    pub fn next_form(&mut self) -> Result<Option<Sexp>, String> {
        let start = self.pos;
        match self.parse() {
            Ok(Some(form)) => {
                self.buf.drain(..self.pos);
                self.pos = 0;
                Ok(Some(form))
            }
            Ok(None) => {
                self.pos = start;
                Ok(None)
            }
            Err(e) => {
                // Drop the malformed prefix so the session can keep going.
                self.buf.drain(..self.pos.max(start + 1).min(self.buf.len()));
                self.pos = 0;
                Err(e)
            }
        }
    }

    fn parse(&mut self) -> Result<Option<Sexp>, String> {
        self.skip_trivia();
        if self.pos >= self.buf.len() {
            return Ok(None);
        }
        match self.buf[self.pos] {
            '(' => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    if self.pos >= self.buf.len() {
                        return Ok(None);
                    }
                    if self.buf[self.pos] == ')' {
                        self.pos += 1;
                        return Ok(Some(Sexp::List(items)));
                    }
                    match self.parse()? {
                        Some(item) => items.push(item),
                        None => return Ok(None),
                    }
                }
            }
            ')' => Err("unbalanced ')'".to_string()),
            '|' => {
                let mut s = String::new();
                let mut i = self.pos + 1;
                loop {
                    if i >= self.buf.len() {
                        return Ok(None);
                    }
                    if self.buf[i] == '|' {
                        break;
                    }
                    s.push(self.buf[i]);
                    i += 1;
                }
                self.pos = i + 1;
                Ok(Some(Sexp::Atom(s)))
            }
            '"' => {
                let mut s = String::from("\"");
                let mut i = self.pos + 1;
                loop {
                    if i >= self.buf.len() {
                        return Ok(None);
                    }
                    if self.buf[i] == '"' {
                        // "" escapes a quote inside a string literal
                        if i + 1 < self.buf.len() && self.buf[i + 1] == '"' {
                            s.push('"');
                            i += 2;
                            continue;
                        }
                        s.push('"');
                        break;
                    }
                    s.push(self.buf[i]);
                    i += 1;
                }
                self.pos = i + 1;
                Ok(Some(Sexp::Atom(s)))
            }
            _ => {
                let mut s = String::new();
                while self.pos < self.buf.len() {
                    let c = self.buf[self.pos];
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' || c == '|' || c == '"' {
                        break;
                    }
                    s.push(c);
                    self.pos += 1;
                }
                if s.is_empty() {
                    return Err(format!("unexpected character '{}'", self.buf[self.pos]));
                }
                Ok(Some(Sexp::Atom(s)))
            }
        }
    }
}

impl Default for Reader {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_incrementally() {
        let mut r = Reader::new();
        r.feed("(assert (and ");
        assert_eq!(r.next_form().unwrap(), None);
        r.feed("p q))");
        let form = r.next_form().unwrap().unwrap();
        assert_eq!(form.to_string(), "(assert (and p q))");
    }

    #[test]
    fn skips_comments_and_reads_quoted() {
        let mut r = Reader::new();
        r.feed("; header\n(declare-fun |odd name| () S)\n");
        let form = r.next_form().unwrap().unwrap();
        match form {
            Sexp::List(items) => assert_eq!(items[1].atom(), Some("odd name")),
            _ => panic!("expected list"),
        }
    }
}
