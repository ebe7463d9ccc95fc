use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    False,
    LParen,
    RParen,
    Lt,
    Gt,
    Comma,
    Dot,
    Colon,
    Eq,
    Neq,
    Pipe,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
    /// No whitespace between this token and the previous one.
    pub glued: bool,
}

const FORMULA_WORDS: [&str; 4] = ["forall", "exists", "fof", "thf"];

fn clausal_only(line: usize, col: usize, what: &str) -> Error {
    Error::Parse {
        line,
        col,
        msg: format!("`{what}`: clausal input only (quantifiers and connectives are not supported)"),
    }
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '#'
}

pub fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let mut glued = false;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            glued = false;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            glued = false;
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            glued = false;
            continue;
        }
        let (l0, c0) = (line, col);
        let next = chars.get(i + 1).copied();
        let (tok, len) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '<' if next == Some('=') => return Err(clausal_only(l0, c0, "<=>")),
            '<' => (Tok::Lt, 1),
            '>' => (Tok::Gt, 1),
            ',' => (Tok::Comma, 1),
            '.' => (Tok::Dot, 1),
            ':' => (Tok::Colon, 1),
            '|' => (Tok::Pipe, 1),
            '=' if next == Some('>') => return Err(clausal_only(l0, c0, "=>")),
            '=' => (Tok::Eq, 1),
            '!' if next == Some('=') => (Tok::Neq, 2),
            '!' | '?' | '&' | '~' => return Err(clausal_only(l0, c0, &c.to_string())),
            '$' => {
                let w: String = chars[i + 1..].iter().take_while(|&&ch| ident_char(ch)).collect();
                if w != "false" {
                    return Err(Error::Parse { line: l0, col: c0, msg: format!("unknown constant `${w}`") });
                }
                (Tok::False, 1 + w.chars().count())
            }
            c if c.is_alphanumeric() || c == '_' => {
                let w: String = chars[i..].iter().take_while(|&&ch| ident_char(ch)).collect();
                if FORMULA_WORDS.contains(&w.as_str()) {
                    return Err(clausal_only(l0, c0, &w));
                }
                let n = w.chars().count();
                (Tok::Ident(w), n)
            }
            other => return Err(Error::Parse { line: l0, col: c0, msg: format!("unexpected character `{other}`") }),
        };
        out.push(Token { tok, line: l0, col: c0, glued });
        i += len;
        col += len;
        glued = true;
    }
    Ok(out)
}
