//! Tweet-text tokenization for the token rank tables and distributions.
//!
//! Rules: URLs are stripped whole; '#'/'@' entities are excluded (they live
//! in their own tables); the rest is lowercased Unicode split on
//! non-alphanumeric characters (apostrophes split); tokens shorter than two
//! chars, pure digits, and stoplist members are dropped.

use super::stoplist::Stoplist;

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Remove http(s)://... spans (to the next whitespace).
fn strip_urls(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    loop {
        let hit = rest.find("http://").or_else(|| match rest.find("https://") {
            Some(j) => match rest.find("http://") {
                Some(i) => Some(i.min(j)),
                None => Some(j),
            },
            None => None,
        });
        match hit {
            Some(start) => {
                out.push_str(&rest[..start]);
                let tail = &rest[start..];
                let end = tail
                    .char_indices()
                    .find(|(_, c)| c.is_whitespace())
                    .map(|(i, _)| i)
                    .unwrap_or(tail.len());
                rest = &tail[end..];
            }
            None => {
                out.push_str(rest);
                return out;
            }
        }
    }
}

/// Tokenize one text. Deterministic, order-preserving, per-occurrence.
pub fn tokenize(text: &str, stoplist: &Stoplist) -> Vec<String> {
    let cleaned = strip_urls(text);
    let mut tokens = Vec::new();
    let mut chars = cleaned.char_indices().peekable();
    let mut prev: Option<char> = None;
    while let Some((start, c)) = chars.next() {
        if c == '#' || c == '@' {
            // Entity: consume the word-char run and discard it.
            while let Some(&(_, nc)) = chars.peek() {
                if is_word_char(nc) {
                    chars.next();
                } else {
                    break;
                }
            }
            prev = Some(c);
            continue;
        }
        if !c.is_alphanumeric() {
            prev = Some(c);
            continue;
        }
        // Word run (alphanumeric only; '_' splits tokens).
        let mut end = start + c.len_utf8();
        while let Some(&(i, nc)) = chars.peek() {
            if nc.is_alphanumeric() {
                end = i + nc.len_utf8();
                chars.next();
            } else {
                break;
            }
        }
        let _ = prev;
        prev = None;
        let token = cleaned[start..end].to_lowercase();
        if token.chars().count() < 2 {
            continue;
        }
        if token.chars().all(|ch| ch.is_numeric()) {
            continue;
        }
        if stoplist.contains(&token) {
            continue;
        }
        tokens.push(token);
    }
    tokens
}
