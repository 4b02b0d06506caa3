//! Deterministic synthetic corpus for desk-scale runs and tests.
//!
//! The real news corpus is not distributable, so end-to-end runs use a
//! generated stand-in: each class draws from its own pool of 20 pseudo-Bangla
//! keywords plus shared filler words, which makes the classes separable by
//! keyword presence alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::data::{Corpus, Document, Label};

/// Keywords that only ever appear in fake documents.
pub const FAKE_KEYWORDS: [&str; 20] = [
    "ঝুমকাল", "পটকল", "ভ্রমিল", "ছলঘট", "মিথলুন", "গুজরিন", "ধোঁকল", "ভুয়ানট",
    "ফাঁকিল", "বানোটক", "ছদ্মিল", "জালটুন", "ঠগমল", "ভেলকুন", "ধাপ্পল", "ছলনিক",
    "ভড়ংকল", "ফেরেবিন", "কপটিল", "মেকিনল",
];

/// Keywords that only ever appear in real documents.
pub const REAL_KEYWORDS: [&str; 20] = [
    "সত্যলন", "তথ্যিন", "প্রমাণুল", "নথিকর", "সূত্রিল", "যাচিতল", "বাস্তবিন", "সঠিকুল",
    "নির্ভুলক", "বিশ্বাসিল", "প্রামাণিল", "সাক্ষিন", "দলিলক", "উৎসলন", "তদন্তিল", "পরীক্ষিন",
    "যথার্থল", "খাঁটিনল", "আসলকর", "প্রকৃতিল",
];

/// Filler words shared by both classes.
pub const FILLER_WORDS: [&str; 20] = [
    "এবং", "করে", "হয়ে", "থেকে", "নিয়ে", "জন্য", "সাথে", "পরে", "আগে", "মধ্যে",
    "একটি", "অনেক", "কিছু", "আরও", "তবে", "যখন", "তখন", "সেখানে", "এখানে", "আবার",
];

/// Generate `n` documents (n ≥ 20, even), alternating fake and real, each
/// 5–40 tokens long with roughly half own-pool keywords and half filler.
/// Every document contains at least one own-pool keyword and no keyword of
/// the other class, so a keyword-presence rule classifies the corpus
/// perfectly. Deterministic per seed.
pub fn make_synthetic_corpus(n: usize, seed: u64) -> Corpus {
    assert!(n >= 20 && n.is_multiple_of(2), "n must be even and at least 20, got {n}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut documents = Vec::with_capacity(n);

    for i in 0..n {
        let label = if i % 2 == 0 { Label::Fake } else { Label::Real };
        let pool: &[&str] = match label {
            Label::Fake => &FAKE_KEYWORDS,
            Label::Real => &REAL_KEYWORDS,
        };

        let length = rng.random_range(5..=40);
        let mut tokens: Vec<&str> = (0..length)
            .map(|_| {
                if rng.random_range(0..2) == 0 {
                    pool[rng.random_range(0..pool.len())]
                } else {
                    FILLER_WORDS[rng.random_range(0..FILLER_WORDS.len())]
                }
            })
            .collect();
        if !tokens.iter().any(|t| pool.contains(t)) {
            let at = rng.random_range(0..tokens.len());
            tokens[at] = pool[rng.random_range(0..pool.len())];
        }

        // Headline takes 3–6 leading tokens, content keeps at least 2.
        let headline_len = rng.random_range(3..=6).min(length - 2);
        documents.push(Document {
            headline: tokens[..headline_len].join(" "),
            content: tokens[headline_len..].join(" "),
            label,
        });
    }

    Corpus::new(documents, format!("synthetic(n={n}, seed={seed})"))
}
