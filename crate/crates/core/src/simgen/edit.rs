//! Character-level string similarities, all mapped into `[0, 1]`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EditMeasure {
    Levenshtein,
    DamerauLevenshtein,
    Jaro,
    NeedlemanWunsch,
    QGrams,
    LongestCommonSubstring,
    LongestCommonSubsequence,
}

impl EditMeasure {
    pub const ALL: [EditMeasure; 7] = [
        EditMeasure::Levenshtein,
        EditMeasure::DamerauLevenshtein,
        EditMeasure::Jaro,
        EditMeasure::NeedlemanWunsch,
        EditMeasure::QGrams,
        EditMeasure::LongestCommonSubstring,
        EditMeasure::LongestCommonSubsequence,
    ];
}

pub fn edit_similarity(measure: EditMeasure, s1: &str, s2: &str) -> f64 {
    let a: Vec<char> = s1.chars().collect();
    let b: Vec<char> = s2.chars().collect();
    let longest = a.len().max(b.len());
    if longest == 0 {
        return 1.0;
    }
    let sim = match measure {
        EditMeasure::Levenshtein => 1.0 - strsim::levenshtein(s1, s2) as f64 / longest as f64,
        EditMeasure::DamerauLevenshtein => {
            1.0 - strsim::damerau_levenshtein(s1, s2) as f64 / longest as f64
        }
        EditMeasure::Jaro => strsim::jaro(s1, s2),
        EditMeasure::NeedlemanWunsch => {
            let floor = -2.0 * longest as f64;
            (needleman_wunsch(&a, &b) - floor) / -floor
        }
        EditMeasure::QGrams => qgram_similarity(&a, &b),
        EditMeasure::LongestCommonSubstring => {
            longest_common_substring(&a, &b) as f64 / longest as f64
        }
        EditMeasure::LongestCommonSubsequence => {
            longest_common_subsequence(&a, &b) as f64 / longest as f64
        }
    };
    sim.clamp(0.0, 1.0)
}

/// Global alignment score with match 0, mismatch -1, gap -2.
fn needleman_wunsch(a: &[char], b: &[char]) -> f64 {
    const MISMATCH: f64 = -1.0;
    const GAP: f64 = -2.0;
    let mut prev: Vec<f64> = (0..=b.len()).map(|j| GAP * j as f64).collect();
    let mut cur = vec![0.0; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        cur[0] = GAP * (i + 1) as f64;
        for (j, &cb) in b.iter().enumerate() {
            let diag = prev[j] + if ca == cb { 0.0 } else { MISMATCH };
            cur[j + 1] = diag.max(prev[j + 1] + GAP).max(cur[j] + GAP);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

fn padded_trigrams(s: &[char]) -> HashMap<[char; 3], i64> {
    let mut padded = vec!['#', '#'];
    padded.extend_from_slice(s);
    padded.extend(['#', '#']);
    let mut counts = HashMap::new();
    for w in padded.windows(3) {
        *counts.entry([w[0], w[1], w[2]]).or_insert(0) += 1;
    }
    counts
}

/// 1 - (L1 distance of trigram profiles) / (total trigram count).
fn qgram_similarity(a: &[char], b: &[char]) -> f64 {
    let pa = padded_trigrams(a);
    let pb = padded_trigrams(b);
    let total: i64 = pa.values().sum::<i64>() + pb.values().sum::<i64>();
    let mut distance = 0;
    for (g, &ca) in &pa {
        distance += (ca - pb.get(g).copied().unwrap_or(0)).abs();
    }
    for (g, &cb) in &pb {
        if !pa.contains_key(g) {
            distance += cb;
        }
    }
    1.0 - distance as f64 / total as f64
}

fn longest_common_substring(a: &[char], b: &[char]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    let mut best = 0;
    for &ca in a {
        for (j, &cb) in b.iter().enumerate() {
            cur[j + 1] = if ca == cb { prev[j] + 1 } else { 0 };
            best = best.max(cur[j + 1]);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    best
}

fn longest_common_subsequence(a: &[char], b: &[char]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for &ca in a {
        for (j, &cb) in b.iter().enumerate() {
            cur[j + 1] = if ca == cb {
                prev[j] + 1
            } else {
                prev[j + 1].max(cur[j])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Local alignment (match +1, mismatch -1, gap -0.5) normalized by the
/// shorter length.
pub(crate) fn smith_waterman(a: &[char], b: &[char]) -> f64 {
    let shorter = a.len().min(b.len());
    if shorter == 0 {
        return if a.len() == b.len() { 1.0 } else { 0.0 };
    }
    let mut prev = vec![0.0f64; b.len() + 1];
    let mut cur = vec![0.0f64; b.len() + 1];
    let mut best = 0.0f64;
    for &ca in a {
        for (j, &cb) in b.iter().enumerate() {
            let diag = prev[j] + if ca == cb { 1.0 } else { -1.0 };
            cur[j + 1] = diag.max(prev[j + 1] - 0.5).max(cur[j] - 0.5).max(0.0);
            best = best.max(cur[j + 1]);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    (best / shorter as f64).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn levenshtein_kitten_sitting() {
        let s = edit_similarity(EditMeasure::Levenshtein, "kitten", "sitting");
        assert!(close(s, 1.0 - 3.0 / 7.0));
    }

    #[test]
    fn damerau_counts_transposition_once() {
        let s = edit_similarity(EditMeasure::DamerauLevenshtein, "abcd", "acbd");
        assert!(close(s, 0.75));
    }

    #[test]
    fn identity_is_one() {
        for m in EditMeasure::ALL {
            assert_eq!(edit_similarity(m, "entity", "entity"), 1.0, "{m:?}");
        }
    }

    #[test]
    fn both_empty_is_one() {
        for m in EditMeasure::ALL {
            assert_eq!(edit_similarity(m, "", ""), 1.0);
        }
    }

    #[test]
    fn longest_common_substring_example() {
        let s = edit_similarity(EditMeasure::LongestCommonSubstring, "abcdef", "zabcy");
        assert!(close(s, 0.5));
    }

    #[test]
    fn longest_common_subsequence_example() {
        // "abde" is common to both
        let s = edit_similarity(EditMeasure::LongestCommonSubsequence, "abcde", "xabdye");
        assert!(close(s, 4.0 / 6.0));
    }

    #[test]
    fn needleman_wunsch_scores() {
        let a: Vec<char> = "abc".chars().collect();
        let b: Vec<char> = "abd".chars().collect();
        assert_eq!(needleman_wunsch(&a, &b), -1.0);
        let c: Vec<char> = "ab".chars().collect();
        assert_eq!(needleman_wunsch(&a, &c), -2.0);
        // -1 against a floor of -6
        let s = edit_similarity(EditMeasure::NeedlemanWunsch, "abc", "abd");
        assert!(close(s, 5.0 / 6.0));
    }

    #[test]
    fn qgram_disjoint_strings() {
        // ##a #a# a## vs ##b #b# b##: no trigram in common
        assert!(close(edit_similarity(EditMeasure::QGrams, "a", "b"), 0.0));
        // ##a #ab ab# b## vs ##a #ac ac# c##: one shared, L1 distance 6 of 8
        assert!(close(
            edit_similarity(EditMeasure::QGrams, "ab", "ac"),
            1.0 - 6.0 / 8.0
        ));
    }

    #[test]
    fn jaro_reference_value() {
        let s = edit_similarity(EditMeasure::Jaro, "martha", "marhta");
        assert!(close(s, 0.944444444444), "{s}");
    }

    #[test]
    fn smith_waterman_partial() {
        let a: Vec<char> = "hello".chars().collect();
        let b: Vec<char> = "yellow".chars().collect();
        assert!(close(smith_waterman(&a, &b), 4.0 / 5.0));
        assert_eq!(smith_waterman(&a, &a), 1.0);
    }
}
