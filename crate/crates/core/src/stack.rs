//! Run-length encoded pushdown store.
//!
//! Counter-style machines keep hundreds of identical symbols on their stores, so runs are
//! stored as `(symbol, count)` pairs with the top run last. Adjacent runs never share a
//! symbol, which keeps equality and hashing canonical.

use crate::symbol::Sym;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Stack {
    runs: Vec<(Sym, u32)>,
}

impl Stack {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_bottom(bottom: Sym) -> Self {
        Stack { runs: vec![(bottom, 1)] }
    }

    /// Builds a stack from a top-first symbol string.
    pub fn from_top_first(syms: &[Sym]) -> Self {
        let mut s = Stack::new();
        s.push_top_first(syms);
        s
    }

    pub fn top(&self) -> Option<Sym> {
        self.runs.last().map(|&(s, _)| s)
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.runs.iter().map(|&(_, n)| n as usize).sum()
    }

    pub fn push(&mut self, sym: Sym) {
        match self.runs.last_mut() {
            Some((s, n)) if *s == sym => *n += 1,
            _ => self.runs.push((sym, 1)),
        }
    }

    pub fn pop(&mut self) -> Option<Sym> {
        let (s, n) = self.runs.last_mut()?;
        let sym = *s;
        if *n > 1 {
            *n -= 1;
        } else {
            self.runs.pop();
        }
        Some(sym)
    }

    /// Pushes a string given top-first, so that `syms[0]` ends up on top.
    pub fn push_top_first(&mut self, syms: &[Sym]) {
        for &s in syms.iter().rev() {
            self.push(s);
        }
    }

    /// Places all of `other` on top of this stack.
    pub fn push_stack(&mut self, other: &Stack) {
        for &(s, n) in &other.runs {
            match self.runs.last_mut() {
                Some((t, m)) if *t == s => *m += n,
                _ => self.runs.push((s, n)),
            }
        }
    }

    /// Number of occurrences of `sym` anywhere in the store.
    pub fn count(&self, sym: Sym) -> usize {
        self.runs
            .iter()
            .filter(|&&(s, _)| s == sym)
            .map(|&(_, n)| n as usize)
            .sum()
    }

    /// Symbols listed top-first.
    pub fn top_first(&self) -> impl Iterator<Item = Sym> + '_ {
        self.runs
            .iter()
            .rev()
            .flat_map(|&(s, n)| std::iter::repeat(s).take(n as usize))
    }

    pub fn to_top_first(&self) -> Vec<Sym> {
        self.top_first().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn push_pop_order() {
        let (a, b, z) = (Sym(0), Sym(1), Sym(2));
        let mut s = Stack::with_bottom(z);
        s.push_top_first(&[a, a, b]);
        assert_eq!(s.to_top_first(), vec![a, a, b, z]);
        assert_eq!(s.top(), Some(a));
        assert_eq!(s.count(a), 2);
        assert_eq!(s.pop(), Some(a));
        assert_eq!(s.pop(), Some(a));
        assert_eq!(s.pop(), Some(b));
        assert_eq!(s.len(), 1);
        assert_eq!(s.pop(), Some(z));
        assert!(s.is_empty());
        assert_eq!(s.pop(), None);
    }

    proptest! {
        // Run-length encoding is canonical: the same symbol sequence always yields an equal stack.
        #[test]
        fn canonical_encoding(xs in proptest::collection::vec(0u32..3, 0..40),
                              ys in proptest::collection::vec(0u32..3, 0..40)) {
            let xs: Vec<Sym> = xs.into_iter().map(Sym).collect();
            let ys: Vec<Sym> = ys.into_iter().map(Sym).collect();
            let mut joined = Stack::from_top_first(&ys);
            joined.push_stack(&Stack::from_top_first(&xs));
            let mut flat = xs.clone();
            flat.extend(ys.iter().copied());
            prop_assert_eq!(&joined, &Stack::from_top_first(&flat));
            prop_assert_eq!(joined.to_top_first(), flat);
        }
    }
}
