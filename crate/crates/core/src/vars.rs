//! Ordered variable sets. Index 0 is always the distinguished variable
//! (`t` in the deformation plane, `xi` in the Borel plane).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VariableSet {
    names: Arc<[String]>,
    dof: usize,
}

impl VariableSet {
    /// Generic set: the first name is distinguished, no phase-space structure.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return Err(Error::Invalid("a variable set needs a distinguished variable".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(Error::Invalid(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::NameCollision(n.clone()));
            }
        }
        Ok(Self { names: names.into(), dof: 0 })
    }

    /// `distinguished, p_1..p_N, q_1..q_N`; with `N = 1` the names are plain `p`, `q`.
    pub fn phase_space(distinguished: &str, dof: usize) -> Self {
        let mut names = vec![distinguished.to_string()];
        names.extend((1..=dof).map(|j| momentum_name(j, dof)));
        names.extend((1..=dof).map(|j| position_name(j, dof)));
        Self { names: names.into(), dof }
    }

    pub fn dof(&self) -> usize {
        self.dof
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn distinguished(&self) -> &str {
        &self.names[0]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.try_index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn try_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.try_index(name).is_some()
    }

    /// `(q_j, p_j)` index pairs; errors unless this is a phase-space set with `dof >= 1`.
    pub fn conjugate_pairs(&self) -> Result<Vec<(usize, usize)>> {
        if self.dof == 0 {
            return Err(Error::Invalid(format!(
                "variable set {self} has no phase-space structure"
            )));
        }
        Ok((0..self.dof).map(|j| (1 + self.dof + j, 1 + j)).collect())
    }

    /// Same set with the distinguished variable renamed.
    pub fn with_distinguished(&self, name: &str) -> Result<Self> {
        self.rename(self.distinguished(), name)
    }

    pub fn rename(&self, from: &str, to: &str) -> Result<Self> {
        let idx = self.index(from)?;
        if from != to && self.contains(to) {
            return Err(Error::NameCollision(to.to_string()));
        }
        let mut names = self.names.to_vec();
        names[idx] = to.to_string();
        Ok(Self { names: names.into(), dof: self.dof })
    }

    /// Appends fresh variables; the result is a generic set.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Self> {
        let mut names = self.names.to_vec();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Self::new(&names)
    }

    /// Removes the given (non-distinguished) variables; the result is a generic set.
    pub fn without(&self, drop: &[usize]) -> Result<Self> {
        if drop.contains(&0) {
            return Err(Error::DistinguishedBinding(self.distinguished().to_string()));
        }
        let names: Vec<&String> =
            self.names.iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, n)| n).collect();
        Self::new(&names)
    }

    /// Like [`without`](Self::without) but may drop index 0; the first
    /// surviving name becomes distinguished.
    pub fn remove(&self, drop: &[usize]) -> Result<Self> {
        let names: Vec<&String> =
            self.names.iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, n)| n).collect();
        Self::new(&names)
    }

    /// Builds a generic set from names, putting `first` at index 0 and the
    /// rest in natural order (`z2` before `z10`).
    pub fn infer<S: AsRef<str>>(first: &str, others: &[S]) -> Result<Self> {
        let mut rest: Vec<String> = others
            .iter()
            .map(|s| s.as_ref().to_string())
            .filter(|s| s != first)
            .collect();
        rest.sort_by_key(|a| natural_key(a));
        rest.dedup();
        let mut names = vec![first.to_string()];
        names.extend(rest);
        Self::new(&names)
    }
}

fn momentum_name(j: usize, dof: usize) -> String {
    if dof == 1 { "p".into() } else { format!("p{j}") }
}

fn position_name(j: usize, dof: usize) -> String {
    if dof == 1 { "q".into() } else { format!("q{j}") }
}

fn valid_name(n: &str) -> bool {
    let mut chars = n.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn natural_key(s: &str) -> (String, u64, String) {
    let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
    let (head, tail) = s.split_at(split);
    let digits: String = tail.chars().take_while(|c| c.is_ascii_digit()).collect();
    let num = digits.parse().unwrap_or(0);
    (head.to_string(), num, tail[digits.len()..].to_string())
}

impl fmt::Display for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

impl fmt::Debug for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VariableSet{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_space_layout() {
        let v = VariableSet::phase_space("t", 2);
        assert_eq!(v.names(), ["t", "p1", "p2", "q1", "q2"]);
        assert_eq!(v.conjugate_pairs().unwrap(), vec![(3, 1), (4, 2)]);
        let one = VariableSet::phase_space("xi", 1);
        assert_eq!(one.names(), ["xi", "p", "q"]);
    }

    #[test]
    fn duplicates_rejected() {
        assert!(matches!(VariableSet::new(&["t", "q", "q"]), Err(Error::NameCollision(_))));
    }

    #[test]
    fn natural_inference() {
        let v = VariableSet::infer("z1", &["z10", "z2", "z1", "a"]).unwrap();
        assert_eq!(v.names(), ["z1", "a", "z2", "z10"]);
    }

    #[test]
    fn cannot_drop_distinguished() {
        let v = VariableSet::phase_space("t", 1);
        assert!(v.without(&[0]).is_err());
        assert_eq!(v.without(&[1]).unwrap().names(), ["t", "q"]);
    }
}
