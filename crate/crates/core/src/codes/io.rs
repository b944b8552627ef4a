//! Code files: one codeword per line, either 0/1 strings of a common length
//! or `0x` hex values under an `n=<int>` header. `#` starts a comment.
//!
//! A 0/1 string is read as the binary numeral of the point, so the leftmost
//! character is bit `n - 1`.

use super::Code;
use crate::error::{Error, Result};

pub fn parse_code(text: &str) -> Result<Code> {
    let mut header_n: Option<usize> = None;
    let mut binary_len: Option<usize> = None;
    let mut hex_seen = false;
    let mut points = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |msg: String| Error::Parse { line, msg };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("n=") {
            if header_n.is_some() {
                return Err(err("repeated n= header".into()));
            }
            let n = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| err(format!("bad header `{content}`")))?;
            header_n = Some(n);
            continue;
        }
        if let Some(hex) = content
            .strip_prefix("0x")
            .or_else(|| content.strip_prefix("0X"))
        {
            if binary_len.is_some() {
                return Err(err("hex and 0/1 codewords mixed".into()));
            }
            let Some(n) = header_n else {
                return Err(err("hex codeword before the n= header".into()));
            };
            let value = usize::from_str_radix(hex, 16)
                .map_err(|_| err(format!("bad hex codeword `{content}`")))?;
            if n < usize::BITS as usize && value >> n != 0 {
                return Err(err(format!("codeword {content} does not fit in {n} bits")));
            }
            hex_seen = true;
            points.push(value);
            continue;
        }
        if hex_seen {
            return Err(err("hex and 0/1 codewords mixed".into()));
        }
        if !content.chars().all(|c| c == '0' || c == '1') {
            return Err(err(format!("`{content}` is neither a 0/1 string nor hex")));
        }
        let len = content.len();
        match binary_len {
            None => binary_len = Some(len),
            Some(l) if l != len => {
                return Err(err(format!("codeword length {len}, expected {l}")));
            }
            _ => {}
        }
        if let Some(n) = header_n {
            if n != len {
                return Err(err(format!("codeword length {len}, header says n={n}")));
            }
        }
        let value = usize::from_str_radix(content, 2)
            .map_err(|_| err(format!("codeword `{content}` too long")))?;
        points.push(value);
    }

    let n = binary_len.or(header_n).ok_or(Error::EmptyCode)?;
    if points.is_empty() {
        return Err(Error::EmptyCode);
    }
    Code::new(n, points)
}

/// Emits the 0/1 form, one codeword per line in sorted order.
pub fn write_code(c: &Code) -> String {
    let mut out = String::new();
    for &p in c.points() {
        out.push_str(&format!("{:0width$b}\n", p, width = c.n()));
    }
    out
}
