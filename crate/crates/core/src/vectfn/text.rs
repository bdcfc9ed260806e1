//! S-box text format.
//!
//! Lines whose first non-blank character is `#` are comments. All remaining
//! tokens, separated by whitespace and/or commas, are table entries in index
//! order, written in decimal or as `0x`-prefixed hexadecimal. A file holding
//! a single unbroken 16-character hex string is read as a 4-bit S-box with
//! one digit per entry.

use std::fmt::Write as _;

use super::{check_dim, VectFn};
use crate::error::{Error, Result};

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokenize(input: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (ln, line) in input.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        let mut start = None;
        for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            let sep = c.is_whitespace() || c == ',';
            match (sep, start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push(Token {
                        text: &line[s..i],
                        line: ln + 1,
                        column: s + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
    }
    out
}

fn parse_error(tok: &Token<'_>, message: String) -> Error {
    Error::Parse {
        line: tok.line,
        column: tok.column,
        message,
    }
}

impl VectFn {
    pub fn parse_text(input: &str) -> Result<VectFn> {
        let tokens = tokenize(input);

        if let [tok] = tokens.as_slice() {
            if tok.text.len() == 16 && !tok.text.starts_with("0x") && tok.text.chars().all(|c| c.is_ascii_hexdigit()) {
                let table = tok.text.chars().map(|c| c.to_digit(16).unwrap()).collect();
                return VectFn::new(table);
            }
        }

        let mut table = Vec::with_capacity(tokens.len());
        for tok in &tokens {
            let t = tok.text;
            let value = if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
                u32::from_str_radix(hex, 16)
            } else {
                t.parse::<u32>()
            }
            .map_err(|e| parse_error(tok, format!("invalid entry {t:?}: {e}")))?;
            table.push(value);
        }

        let end = || Error::Parse {
            line: tokens.last().map_or(1, |t| t.line),
            column: tokens.last().map_or(1, |t| t.column + t.text.len()),
            message: format!("table length {} is not a power of two in 4..=256", tokens.len()),
        };
        let m = crate::boolfn::log2_exact(table.len()).ok_or_else(end)?;
        check_dim(m).map_err(|_| end())?;
        let n = table.len() as u32;
        if let Some(i) = table.iter().position(|&y| y >= n) {
            return Err(parse_error(
                &tokens[i],
                format!("entry {} does not fit in {m} bits", table[i]),
            ));
        }
        VectFn::new(table)
    }

    /// Serializes in the S-box text format, preceded by `# `-prefixed comments.
    pub fn to_text(&self, comments: &[&str]) -> String {
        let mut s = String::new();
        for c in comments {
            let _ = writeln!(s, "# {c}");
        }
        for row in self.raw().chunks(16) {
            let line: Vec<String> = row.iter().map(|y| y.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }
}
