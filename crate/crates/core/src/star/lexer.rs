use super::StarError;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    /// Identifier; symbolic variables keep their trailing `$`.
    Ident(String),
    /// Quoted string with surrounding whitespace trimmed.
    Str(String),
    Num(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Lt,
    Gt,
    Slash,
    Eq,
    Comma,
    Semi,
    Colon,
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub fn lex(text: &str) -> Result<Vec<Token>, StarError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let advance = |n: usize, i: &mut usize, line: &mut usize, col: &mut usize| {
            for _ in 0..n {
                if chars[*i] == '\n' {
                    *line += 1;
                    *col = 1;
                } else {
                    *col += 1;
                }
                *i += 1;
            }
        };

        if c.is_whitespace() {
            advance(1, &mut i, &mut line, &mut col);
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                advance(1, &mut i, &mut line, &mut col);
            }
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '<' => Some(Tok::Lt),
            '>' => Some(Tok::Gt),
            '/' => Some(Tok::Slash),
            '=' => Some(Tok::Eq),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            ':' => Some(Tok::Colon),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line: tl, col: tc });
            advance(1, &mut i, &mut line, &mut col);
            continue;
        }
        if c == '"' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j] != '"' {
                if chars[j] == '\n' {
                    return Err(StarError::UnboundSyntax { message: "unterminated string".into(), line: tl, col: tc });
                }
                j += 1;
            }
            if j >= chars.len() {
                return Err(StarError::UnboundSyntax { message: "unterminated string".into(), line: tl, col: tc });
            }
            let s: String = chars[start..j].iter().collect();
            out.push(Token { tok: Tok::Str(s.trim().to_string()), line: tl, col: tc });
            advance(j + 1 - i, &mut i, &mut line, &mut col);
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.') {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            out.push(Token { tok: Tok::Num(s), line: tl, col: tc });
            advance(j - i, &mut i, &mut line, &mut col);
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            if j < chars.len() && chars[j] == '$' {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            out.push(Token { tok: Tok::Ident(s), line: tl, col: tc });
            advance(j - i, &mut i, &mut line, &mut col);
            continue;
        }
        return Err(StarError::UnboundSyntax { message: format!("unexpected character {c:?}"), line: tl, col: tc });
    }
    Ok(out)
}
