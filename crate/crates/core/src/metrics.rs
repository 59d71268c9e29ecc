//! Text metrics (exact match, normalized Levenshtein similarity) and
//! exit-trace reductions.

use serde::{Deserialize, Serialize};

/// Lowercase and trim surrounding whitespace before comparison.
pub fn normalize(s: &str) -> String {
    s.trim().to_lowercase()
}

/// Levenshtein edit distance over characters, two-row iterative form.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0usize; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Normalized Levenshtein similarity: `1 - NL` when the normalized distance
/// is below 0.5, else 0. Both strings are case-folded and trimmed first.
pub fn anls(prediction: &str, gold: &str) -> f64 {
    let p = normalize(prediction);
    let g = normalize(gold);
    let max_len = p.chars().count().max(g.chars().count());
    if max_len == 0 {
        return 1.0;
    }
    let nl = levenshtein(&p, &g) as f64 / max_len as f64;
    if nl < 0.5 {
        1.0 - nl
    } else {
        0.0
    }
}

/// 1 iff the normalized strings are identical.
pub fn exact_match(prediction: &str, gold: &str) -> u32 {
    u32::from(normalize(prediction) == normalize(gold))
}

/// Count emitted tokens per exit layer. `counts[n-1]` is the number of
/// tokens that exited at layer `n`.
pub fn exit_histogram(exits: impl IntoIterator<Item = usize>, n_layers: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n_layers];
    for m in exits {
        assert!(m >= 1 && m <= n_layers, "exit layer {m} out of 1..={n_layers}");
        counts[m - 1] += 1;
    }
    counts
}

/// Aggregate evaluation record for one (strategy, threshold) run.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EvalReport {
    /// Exact-match rate over sequences.
    pub em: f64,
    /// Mean normalized Levenshtein similarity over sequences.
    pub anls: f64,
    /// Mean decoder compute units (layer × token applications) per sequence.
    pub mean_units: f64,
    /// Mean decoder wall-clock per sequence, nanoseconds.
    pub mean_decoder_wall_ns: f64,
    /// Mean encoder wall-clock per sequence, nanoseconds.
    pub mean_encoder_wall_ns: f64,
    /// Tokens per exit layer; sums to `tokens`.
    pub exit_histogram: Vec<u64>,
    pub sequences: u64,
    pub tokens: u64,
}

impl EvalReport {
    /// The deterministic fields: everything except wall-clock times.
    pub fn deterministic_eq(&self, other: &EvalReport) -> bool {
        self.em == other.em
            && self.anls == other.anls
            && self.mean_units == other.mean_units
            && self.exit_histogram == other.exit_histogram
            && self.sequences == other.sequences
            && self.tokens == other.tokens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Textbook full-matrix edit distance, kept independent of the two-row
    /// implementation above.
    fn levenshtein_oracle(a: &str, b: &str) -> usize {
        let a: Vec<char> = a.chars().collect();
        let b: Vec<char> = b.chars().collect();
        let mut m = vec![vec![0usize; b.len() + 1]; a.len() + 1];
        for (i, row) in m.iter_mut().enumerate() {
            row[0] = i;
        }
        for j in 0..=b.len() {
            m[0][j] = j;
        }
        for i in 1..=a.len() {
            for j in 1..=b.len() {
                let sub = m[i - 1][j - 1] + usize::from(a[i - 1] != b[j - 1]);
                m[i][j] = sub.min(m[i - 1][j] + 1).min(m[i][j - 1] + 1);
            }
        }
        m[a.len()][b.len()]
    }

    #[test]
    fn anls_identical() {
        assert_eq!(anls("abc", "abc"), 1.0);
    }

    #[test]
    fn anls_one_edit() {
        assert!((anls("hello", "hallo") - 0.8).abs() < 1e-12);
    }

    #[test]
    fn anls_below_threshold_is_zero() {
        assert_eq!(anls("abc", "xyz"), 0.0);
    }

    #[test]
    fn anls_normalizes_case_and_whitespace() {
        assert_eq!(anls("  AbC ", "abc"), 1.0);
    }

    #[test]
    fn anls_empty_vs_empty() {
        assert_eq!(anls("", ""), 1.0);
        assert_eq!(anls("  ", ""), 1.0);
    }

    #[test]
    fn anls_symmetric_and_bounded() {
        let pairs = [
            ("kitten", "sitting"),
            ("a", ""),
            ("flaw", "lawn"),
            ("1234", "12345"),
        ];
        for (a, b) in pairs {
            let x = anls(a, b);
            assert_eq!(x, anls(b, a));
            assert!((0.0..=1.0).contains(&x));
        }
    }

    #[test]
    fn levenshtein_matches_full_matrix_oracle() {
        let words = [
            "", "a", "ab", "abc", "abcd", "kitten", "sitting", "12345", "54321", "aabbcc",
        ];
        for a in words {
            for b in words {
                assert_eq!(levenshtein(a, b), levenshtein_oracle(a, b), "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn exact_match_rules() {
        assert_eq!(exact_match("42", "42"), 1);
        assert_eq!(exact_match("42", "43"), 0);
        assert_eq!(exact_match(" 42 ", "42"), 1);
    }

    #[test]
    fn histogram_counts() {
        let h = exit_histogram([1usize, 1, 12], 12);
        assert_eq!(h[0], 2);
        assert_eq!(h[11], 1);
        assert_eq!(h.iter().sum::<u64>(), 3);
    }

    #[test]
    fn histogram_empty() {
        let h = exit_histogram(std::iter::empty(), 6);
        assert!(h.iter().all(|&c| c == 0));
    }
}
