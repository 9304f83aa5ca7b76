use std::fmt;

/// Position of a token: 1-based line and column plus byte offsets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// Decimal digits, kept as text so any size parses.
    Int(String),
    Sym(&'static str),
    Comment(String),
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(s) => write!(f, "integer `{s}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Comment(_) => write!(f, "comment"),
            Tok::Newline => write!(f, "end of line"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

const SYMBOLS: [&str; 16] = ["->", "(", ")", "[", "]", "{", "}", ",", ":", "=", "+", "-", "*", "/", "^", "|"];

/// Splits the input into tokens. Unknown characters become an error with
/// their position.
pub fn tokenize(text: &str) -> Result<Vec<Token>, (Span, String)> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut line_start = 0;
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = text[i..].chars().next().expect("in bounds");
        let span = |end: usize| Span { line, col: text[line_start..i].chars().count() + 1, start: i, end };
        if c == '\n' {
            out.push(Token { tok: Tok::Newline, span: span(i + 1) });
            i += 1;
            line += 1;
            line_start = i;
            continue;
        }
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if c == '#' {
            let end = text[i..].find('\n').map_or(text.len(), |k| i + k);
            let body = text[i + 1..end].trim_end().to_string();
            out.push(Token { tok: Tok::Comment(body), span: span(end) });
            i = end;
            continue;
        }
        if c.is_ascii_digit() {
            let end = text[i..].find(|ch: char| !ch.is_ascii_digit()).map_or(text.len(), |k| i + k);
            out.push(Token { tok: Tok::Int(text[i..end].to_string()), span: span(end) });
            i = end;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let end = text[i..]
                .find(|ch: char| !(ch.is_alphanumeric() || ch == '_' || ch == '\''))
                .map_or(text.len(), |k| i + k);
            out.push(Token { tok: Tok::Ident(text[i..end].to_string()), span: span(end) });
            i = end;
            continue;
        }
        if let Some(sym) = SYMBOLS.iter().find(|s| text[i..].starts_with(**s)) {
            out.push(Token { tok: Tok::Sym(sym), span: span(i + sym.len()) });
            i += sym.len();
            continue;
        }
        return Err((span(i + c.len_utf8()), format!("unexpected character `{c}`")));
    }
    let col = text[line_start..].chars().count() + 1;
    out.push(Token { tok: Tok::Eof, span: Span { line, col, start: text.len(), end: text.len() } });
    Ok(out)
}
