use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(u64),
    V,
    Two,
    Alpha,
    Gen(usize),
    U,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(k) => format!("integer {k}"),
            Tok::V => "'v'".into(),
            Tok::Two => "'[2]'".into(),
            Tok::Alpha => "'alpha'".into(),
            Tok::Gen(i) => format!("'E{i}'"),
            Tok::U => "'u'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

/// A token with its 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

pub fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = col;
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        let (tok, len) = if let Some(t) = single {
            (t, 1)
        } else if c == '[' {
            if chars.get(i + 1) == Some(&'2') && chars.get(i + 2) == Some(&']') {
                (Tok::Two, 3)
            } else {
                return Err(syntax(line, start, "expected '[2]'"));
            }
        } else if c.is_ascii_digit() {
            let len = chars[i..].iter().take_while(|c| c.is_ascii_digit()).count();
            let s: String = chars[i..i + len].iter().collect();
            let k = s
                .parse::<u64>()
                .map_err(|_| syntax(line, start, format!("integer {s} is too large")))?;
            (Tok::Int(k), len)
        } else if c.is_ascii_alphabetic() {
            let len = chars[i..]
                .iter()
                .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                .count();
            let word: String = chars[i..i + len].iter().collect();
            let tok = match word.as_str() {
                "v" => Tok::V,
                "u" => Tok::U,
                "alpha" => Tok::Alpha,
                w if w.len() > 1
                    && w.starts_with('E')
                    && w[1..].chars().all(|c| c.is_ascii_digit()) =>
                {
                    let k = w[1..].parse::<usize>().map_err(|_| {
                        syntax(line, start, format!("generator index in {w} is too large"))
                    })?;
                    Tok::Gen(k)
                }
                _ => return Err(syntax(line, start, format!("unknown token '{word}'"))),
            };
            (tok, len)
        } else {
            return Err(syntax(line, start, format!("unexpected character '{c}'")));
        };
        out.push(Spanned {
            tok,
            line,
            column: start,
        });
        i += len;
        col += len;
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}
