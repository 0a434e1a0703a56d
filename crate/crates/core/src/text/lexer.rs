use crate::diag::{DiagCode, Diagnostic, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(u64),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Comma,
    Dot,
    /// `->`
    Arrow,
    /// `~>`
    Squiggle,
    /// `=>`
    Implies,
    Eq,
    At,
    Bar,
    Amp,
    Bang,
    Colon,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Squiggle => "`~>`".into(),
            Tok::Implies => "`=>`".into(),
            Tok::Eq => "`=`".into(),
            Tok::At => "`@`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

/// Splits `src` into tokens. Bad characters are reported and skipped; the
/// token list always ends with `Eof`.
pub(crate) fn lex(src: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let mut out = Vec::new();
    let mut diags = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1u32, 1u32);

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let pos = Pos::new(line, col);
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '/' {
            bump!();
            if chars.peek() == Some(&'/') {
                while let Some(&d) = chars.peek() {
                    if d == '\n' {
                        break;
                    }
                    bump!();
                }
            } else {
                diags.push(Diagnostic::new(DiagCode::Syntax, "unexpected `/` (comments start with `//`)").at(pos));
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    s.push(d);
                    bump!();
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Ident(s), pos });
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    bump!();
                } else {
                    break;
                }
            }
            match s.parse() {
                Ok(n) => out.push(Token { tok: Tok::Int(n), pos }),
                Err(_) => diags.push(Diagnostic::new(DiagCode::Syntax, format!("integer `{s}` is too large")).at(pos)),
            }
            continue;
        }
        bump!();
        let two = |next: char, tok: Tok, chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            if chars.peek() == Some(&next) {
                Some(tok)
            } else {
                None
            }
        };
        let tok = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ';' => Some(Tok::Semi),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '@' => Some(Tok::At),
            '|' => Some(Tok::Bar),
            '&' => Some(Tok::Amp),
            '!' => Some(Tok::Bang),
            ':' => Some(Tok::Colon),
            '-' => two('>', Tok::Arrow, &mut chars),
            '~' => two('>', Tok::Squiggle, &mut chars),
            '=' => Some(two('>', Tok::Implies, &mut chars).unwrap_or(Tok::Eq)),
            _ => None,
        };
        match tok {
            Some(t) => {
                if matches!(t, Tok::Arrow | Tok::Squiggle | Tok::Implies) {
                    bump!();
                }
                out.push(Token { tok: t, pos });
            }
            None => diags.push(Diagnostic::new(DiagCode::Syntax, format!("unexpected character `{c}`")).at(pos)),
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos::new(line, col),
    });
    (out, diags)
}
