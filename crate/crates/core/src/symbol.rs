//! Symbol names and their interned form.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Interned symbol. Only meaningful together with the [`SymbolTable`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(pub u32);

/// A symbol name as it appears in machine files: a non-empty identifier without whitespace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Symbol(pub String);

impl Symbol {
    pub fn new(name: impl Into<String>) -> Self {
        Symbol(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_well_formed(&self) -> bool {
        !self.0.is_empty() && !self.0.chars().any(char::is_whitespace)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol(s.to_string())
    }
}

/// Bidirectional map between symbol names and [`Sym`] ids.
#[derive(Debug, Clone, Default)]
pub struct SymbolTable {
    names: Vec<String>,
    ids: HashMap<String, Sym>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> Sym {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = Sym(self.names.len() as u32);
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), id);
        id
    }

    pub fn get(&self, name: &str) -> Option<Sym> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, sym: Sym) -> &str {
        &self.names[sym.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Splits textual input into symbol names.
///
/// Text containing commas or whitespace is split on them; otherwise every character is one
/// symbol. The empty string and `ε` both denote the empty word.
pub fn split_word(text: &str) -> Vec<String> {
    let text = text.trim();
    if text.is_empty() || text == "ε" {
        return Vec::new();
    }
    if text.contains(',') || text.contains(char::is_whitespace) {
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect()
    } else {
        text.chars().map(|c| c.to_string()).collect()
    }
}

/// Interns `names` against `table`, requiring each to be a member of `alphabet`.
pub fn encode_word<S: AsRef<str>>(
    table: &SymbolTable,
    alphabet: &[Sym],
    names: &[S],
) -> Result<Vec<Sym>> {
    names
        .iter()
        .map(|n| {
            let n = n.as_ref();
            table
                .get(n)
                .filter(|s| alphabet.contains(s))
                .ok_or_else(|| Error::InputSymbol { symbol: n.to_string() })
        })
        .collect()
}

/// Renders a symbol string by plain concatenation, `ε` when empty.
pub fn render_string<I>(table: &SymbolTable, syms: I) -> String
where
    I: IntoIterator<Item = Sym>,
{
    let out: String = syms.into_iter().map(|s| table.name(s)).collect();
    if out.is_empty() {
        "ε".to_string()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_variants() {
        assert_eq!(split_word("aab"), vec!["a", "a", "b"]);
        assert_eq!(split_word("x1, x2 x3"), vec!["x1", "x2", "x3"]);
        assert!(split_word("").is_empty());
        assert!(split_word("ε").is_empty());
    }

    #[test]
    fn interning_is_stable() {
        let mut t = SymbolTable::new();
        let a = t.intern("a");
        let b = t.intern("b");
        assert_eq!(t.intern("a"), a);
        assert_ne!(a, b);
        assert_eq!(t.name(b), "b");
        assert_eq!(render_string(&t, [a, b, a]), "aba");
        assert_eq!(render_string(&t, []), "ε");
    }

    #[test]
    fn encode_rejects_foreign_symbols() {
        let mut t = SymbolTable::new();
        let a = t.intern("a");
        t.intern("Z");
        assert_eq!(encode_word(&t, &[a], &["a", "a"]).unwrap(), vec![a, a]);
        assert!(matches!(
            encode_word(&t, &[a], &["Z"]),
            Err(Error::InputSymbol { .. })
        ));
        assert!(encode_word(&t, &[a], &["q"]).is_err());
    }
}
