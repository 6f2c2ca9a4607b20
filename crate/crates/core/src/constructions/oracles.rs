use serde::{Deserialize, Serialize};

/// Membership in `{ u v u^R v^R u^R | u, v ∈ {a,b}+, |u| = |v| }`.
///
/// `|u| = |v| = m` forces `|w| = 5m`, and then `u`, `v` are the first two blocks of length `m`.
pub fn oracle_otto<S: AsRef<str>>(word: &[S]) -> bool {
    let w: Vec<&str> = word.iter().map(AsRef::as_ref).collect();
    if w.is_empty() || w.len() % 5 != 0 || w.iter().any(|s| *s != "a" && *s != "b") {
        return false;
    }
    let m = w.len() / 5;
    let u = &w[..m];
    let v = &w[m..2 * m];
    let ur: Vec<&str> = u.iter().rev().copied().collect();
    let vr: Vec<&str> = v.iter().rev().copied().collect();
    let expected: Vec<&str> = [u, v, &ur, &vr, &ur].concat();
    expected == w
}

/// Membership in `{ a^(2^n) | n ≥ 1 }`.
pub fn oracle_power_of_two<S: AsRef<str>>(word: &[S]) -> bool {
    let n = word.len();
    n >= 2 && n.is_power_of_two() && word.iter().all(|s| s.as_ref() == "a")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Oracle {
    Otto,
    PowerOfTwo,
}

impl Oracle {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "otto" => Some(Oracle::Otto),
            "power-of-two" => Some(Oracle::PowerOfTwo),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Oracle::Otto => "otto",
            Oracle::PowerOfTwo => "power-of-two",
        }
    }

    pub fn accepts<S: AsRef<str>>(self, word: &[S]) -> bool {
        match self {
            Oracle::Otto => oracle_otto(word),
            Oracle::PowerOfTwo => oracle_power_of_two(word),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::split_word;

    fn w(s: &str) -> Vec<String> {
        split_word(s)
    }

    #[test]
    fn otto_examples() {
        assert!(oracle_otto(&w("aabbaabbaa")));
        assert!(oracle_otto(&w("ababa")));
        assert!(oracle_otto(&w("aaaaa")));
        // Forced split u = a, v = a would need "aaaaa".
        assert!(!oracle_otto(&w("aabba")));
        assert!(!oracle_otto(&w("")));
        assert!(!oracle_otto(&w("ab")));
    }

    #[test]
    fn power_of_two_examples() {
        assert!(oracle_power_of_two(&w("aaaa")));
        assert!(!oracle_power_of_two(&w("aaaaaa")));
        assert!(!oracle_power_of_two(&w("a")));
        assert!(!oracle_power_of_two(&w("")));
        assert!(!oracle_power_of_two(&w("ab")));
    }
}
