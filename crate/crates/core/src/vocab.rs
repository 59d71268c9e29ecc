//! Character-level vocabulary with reserved control ids.

use std::collections::HashMap;

use crate::error::{Error, Result};

pub const PAD: u32 = 0;
pub const BOS: u32 = 1;
pub const EOS: u32 = 2;
pub const UNK: u32 = 3;

/// Number of reserved control ids before the first character id.
pub const RESERVED: usize = 4;

/// Maps characters to token ids. Ids 0..4 are PAD/BOS/EOS/UNK.
#[derive(Debug, Clone)]
pub struct Vocab {
    chars: Vec<char>,
    index: HashMap<char, u32>,
}

impl Vocab {
    pub fn new(charset: &str) -> Self {
        let chars: Vec<char> = charset.chars().collect();
        let index = chars
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, (RESERVED + i) as u32))
            .collect();
        Vocab { chars, index }
    }

    /// Lowercase letters, digits, '+' and space: covers every synthetic task.
    pub fn default_charset() -> Self {
        Vocab::new("abcdefghijklmnopqrstuvwxyz0123456789+ ")
    }

    pub fn size(&self) -> usize {
        RESERVED + self.chars.len()
    }

    /// Character ids for `text`; unknown characters map to UNK.
    pub fn encode(&self, text: &str) -> Vec<u32> {
        text.chars()
            .map(|c| self.index.get(&c).copied().unwrap_or(UNK))
            .collect()
    }

    /// Text for `ids`, skipping control tokens.
    pub fn decode(&self, ids: &[u32]) -> String {
        ids.iter()
            .filter_map(|&id| {
                let i = id as usize;
                if i < RESERVED {
                    None
                } else {
                    self.chars.get(i - RESERVED).copied()
                }
            })
            .collect()
    }

    /// Fail unless `vocab_size` matches this vocabulary exactly.
    pub fn check_model_size(&self, vocab_size: usize) -> Result<()> {
        if vocab_size != self.size() {
            return Err(Error::Validation(format!(
                "model vocab_size {} does not match vocabulary size {}",
                vocab_size,
                self.size()
            )));
        }
        Ok(())
    }
}

impl Default for Vocab {
    fn default() -> Self {
        Vocab::default_charset()
    }
}
