use std::collections::HashSet;

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    /// `#k`
    Lit(u32),
    /// Bare decimal number, only meaningful in value literals.
    Num(u32),
    // declaration keywords
    System,
    Vars,
    Func,
    Define,
    Axiom,
    // formula keywords
    Forall,
    Exists,
    ExistsUnique,
    True,
    False,
    // punctuation
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Colon,
    Dot,
    Assign,
    And,
    Or,
    Not,
    Implies,
    Iff,
    Eq,
    Neq,
    Member,
    NotMember,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Lit(k) => format!("literal `#{k}`"),
            Tok::Num(k) => format!("number `{k}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::System => "system",
            Tok::Vars => "vars",
            Tok::Func => "func",
            Tok::Define => "define",
            Tok::Axiom => "axiom",
            Tok::Forall => "forall",
            Tok::Exists => "exists",
            Tok::ExistsUnique => "exists!",
            Tok::True => "true",
            Tok::False => "false",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Dot => ".",
            Tok::Assign => ":=",
            Tok::And => "&",
            Tok::Or => "|",
            Tok::Not => "~",
            Tok::Implies => "->",
            Tok::Iff => "<->",
            Tok::Eq => "=",
            Tok::Neq => "!=",
            Tok::Member => "∈",
            Tok::NotMember => "∉",
            Tok::Ident(_) | Tok::Lit(_) | Tok::Num(_) | Tok::Eof => "",
        }
    }

    pub(crate) fn is_declaration(&self) -> bool {
        matches!(self, Tok::System | Tok::Vars | Tok::Func | Tok::Define | Tok::Axiom)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug)]
pub(crate) struct Lexed {
    pub tokens: Vec<Token>,
    /// Every identifier in the input, for fresh-name generation.
    pub identifiers: HashSet<String>,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub(crate) fn lex(src: &str) -> Result<Lexed, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut tokens = Vec::new();
    let mut identifiers = HashSet::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    let err = |line, column, expected: &str| ParseError { line, column, expected: expected.to_string() };

    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let peek = |k: usize| chars.get(i + k).copied();

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
        if c == '/' && peek(1) == Some('/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }

        let mut width = 1;
        let tok = if is_ident_start(c) {
            let mut j = i + 1;
            while j < chars.len() {
                let d = chars[j];
                if is_ident_continue(d) || (d == '-' && chars.get(j + 1).is_some_and(|e| e.is_ascii_alphabetic())) {
                    j += 1;
                } else {
                    break;
                }
            }
            let word: String = chars[i..j].iter().collect();
            width = j - i;
            match word.as_str() {
                "system" => Tok::System,
                "vars" => Tok::Vars,
                "func" => Tok::Func,
                "define" => Tok::Define,
                "axiom" => Tok::Axiom,
                "forall" => Tok::Forall,
                "exists" if chars.get(j) == Some(&'!') => {
                    width += 1;
                    Tok::ExistsUnique
                }
                "exists" => Tok::Exists,
                "exists-unique" => Tok::ExistsUnique,
                "true" => Tok::True,
                "false" => Tok::False,
                _ => {
                    identifiers.insert(word.clone());
                    Tok::Ident(word)
                }
            }
        } else if c == '#' || c.is_ascii_digit() {
            let digits_from = if c == '#' { i + 1 } else { i };
            let mut j = digits_from;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j == digits_from {
                return Err(err(line, col + 1, "digits after `#`"));
            }
            let digits: String = chars[digits_from..j].iter().collect();
            let k: u32 = digits.parse().map_err(|_| err(start_line, start_col, "a number that fits in 32 bits"))?;
            width = j - i;
            if c == '#' {
                Tok::Lit(k)
            } else {
                Tok::Num(k)
            }
        } else {
            match (c, peek(1), peek(2)) {
                ('<', Some('-'), Some('>')) => {
                    width = 3;
                    Tok::Iff
                }
                ('-', Some('>'), _) => {
                    width = 2;
                    Tok::Implies
                }
                (':', Some('='), _) => {
                    width = 2;
                    Tok::Assign
                }
                ('!', Some('='), _) => {
                    width = 2;
                    Tok::Neq
                }
                ('∃', Some('!'), _) => {
                    width = 2;
                    Tok::ExistsUnique
                }
                ('(', ..) => Tok::LParen,
                (')', ..) => Tok::RParen,
                ('{', ..) => Tok::LBrace,
                ('}', ..) => Tok::RBrace,
                (',', ..) => Tok::Comma,
                (';', ..) => Tok::Semi,
                (':', ..) => Tok::Colon,
                ('.', ..) => Tok::Dot,
                ('&' | '∧', ..) => Tok::And,
                ('|' | '∨', ..) => Tok::Or,
                ('~' | '¬', ..) => Tok::Not,
                ('→', ..) => Tok::Implies,
                ('↔', ..) => Tok::Iff,
                ('=', ..) => Tok::Eq,
                ('≠', ..) => Tok::Neq,
                ('∈', ..) => Tok::Member,
                ('∉', ..) => Tok::NotMember,
                ('∀', ..) => Tok::Forall,
                ('∃', ..) => Tok::Exists,
                _ => return Err(err(line, col, "a token")),
            }
        };
        tokens.push(Token { tok, line: start_line, column: start_col });
        i += width;
        col += width;
    }
    tokens.push(Token { tok: Tok::Eof, line, column: col });
    Ok(Lexed { tokens, identifiers })
}
