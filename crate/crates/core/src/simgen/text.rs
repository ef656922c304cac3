use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    Character,
    Token,
}

impl std::str::FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "character" | "char" | "c" => Ok(Unit::Character),
            "token" | "t" => Ok(Unit::Token),
            _ => Err(Error::InvalidArgument(format!("unknown n-gram unit `{s}`"))),
        }
    }
}

/// NFC, lower case, whitespace runs collapsed to one space, trimmed.
pub fn normalize(text: &str) -> String {
    collapse_whitespace(&text.nfc().collect::<String>().to_lowercase())
}

fn collapse_whitespace(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for word in text.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

/// Sliding-window n-grams. Character grams keep case and mark spaces with
/// `_`; token grams are lower-cased words joined by a single space.
pub fn extract_ngrams(text: &str, unit: Unit, n: usize) -> Result<Vec<String>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "n-gram order must be at least 1".into(),
        ));
    }
    Ok(ngrams(text, unit, n))
}

pub(crate) fn ngrams(text: &str, unit: Unit, n: usize) -> Vec<String> {
    match unit {
        Unit::Character => {
            let cleaned = collapse_whitespace(&text.nfc().collect::<String>());
            let chars: Vec<char> = cleaned
                .chars()
                .map(|c| if c == ' ' { '_' } else { c })
                .collect();
            chars.windows(n).map(|w| w.iter().collect()).collect()
        }
        Unit::Token => {
            let lowered = text.to_lowercase();
            let tokens: Vec<&str> = lowered.split_whitespace().collect();
            tokens.windows(n).map(|w| w.join(" ")).collect()
        }
    }
}
