//! Bundled English and French stopword lists, user-extendable. Function
//! words only; content-bearing terms stay in the token stream.

use std::collections::HashSet;

const ENGLISH: &[&str] = &[
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any", "are",
    "as", "at", "be", "because", "been", "before", "being", "below", "between", "both", "but",
    "by", "can", "cannot", "could", "did", "do", "does", "doing", "down", "during", "each",
    "few", "for", "from", "further", "had", "has", "have", "having", "he", "her", "here",
    "hers", "herself", "him", "himself", "his", "how", "if", "in", "into", "is", "it", "its",
    "itself", "just", "may", "me", "might", "more", "most", "must", "my", "myself", "no",
    "nor", "not", "now", "of", "off", "on", "once", "only", "or", "other", "our", "ours",
    "ourselves", "out", "over", "own", "same", "she", "should", "so", "some", "such", "than",
    "that", "the", "their", "theirs", "them", "themselves", "then", "there", "these", "they",
    "this", "those", "through", "to", "too", "under", "until", "up", "very", "was", "we",
    "were", "what", "when", "where", "which", "while", "who", "whom", "whose", "why", "will",
    "with", "would", "you", "your", "yours", "yourself", "yourselves",
];

const FRENCH: &[&str] = &[
    "ai", "aie", "as", "au", "aussi", "aux", "avaient", "avait", "avec", "avez", "avoir",
    "avons", "ça", "ce", "ceci", "cela", "ces", "cet", "cette", "ceux", "chez", "comme",
    "dans", "de", "des", "donc", "dont", "du", "elle", "elles", "en", "encore", "entre",
    "es", "est", "et", "étaient", "était", "été", "êtes", "être", "eu", "il", "ils", "je",
    "la", "là", "le", "les", "leur", "leurs", "lui", "ma", "mais", "me", "mes", "moi", "mon",
    "ne", "ni", "nos", "notre", "nous", "on", "ont", "ou", "où", "par", "pas", "pour",
    "qu", "quand", "que", "quel", "quelle", "quelles", "quels", "qui", "quoi", "sa", "sans",
    "se", "serait", "seront", "ses", "si", "soit", "sommes", "son", "sont", "suis", "sur",
    "ta", "te", "tes", "toi", "ton", "tu", "un", "une", "vos", "votre", "vous",
];

// Platform noise that dominates raw tweet text.
const WEB_NOISE: &[&str] = &["rt", "via", "amp"];

/// A lowercase stopword set.
#[derive(Debug, Clone, Default)]
pub struct Stoplist {
    words: HashSet<String>,
}

impl Stoplist {
    /// The bundled French + English lists plus web noise ("rt", "via").
    pub fn bundled() -> Self {
        let mut list = Stoplist::empty();
        list.extend(ENGLISH.iter().copied());
        list.extend(FRENCH.iter().copied());
        list.extend(WEB_NOISE.iter().copied());
        list
    }

    pub fn empty() -> Self {
        Stoplist::default()
    }

    pub fn extend<'a, I: IntoIterator<Item = &'a str>>(&mut self, words: I) {
        for w in words {
            let w = w.trim().to_lowercase();
            if !w.is_empty() {
                self.words.insert(w);
            }
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_covers_both_languages_and_noise() {
        let list = Stoplist::bundled();
        for w in ["the", "and", "était", "là", "rt", "où"] {
            assert!(list.contains(w), "missing {w}");
        }
        // Content words must not be stoplisted.
        for w in ["macron", "vote", "campaign", "fait", "tout", "plus", "faire"] {
            assert!(!list.contains(w), "over-eager stoplisting of {w}");
        }
    }

    #[test]
    fn user_extension_lowercases() {
        let mut list = Stoplist::empty();
        list.extend(["Bonjour", "  WORLD "]);
        assert!(list.contains("bonjour"));
        assert!(list.contains("world"));
        assert_eq!(list.len(), 2);
    }
}
