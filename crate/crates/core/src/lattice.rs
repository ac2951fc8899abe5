//! Finite complete lattices.
//!
//! A [`FiniteLattice`] is built from a list of element names and a cover
//! (Hasse) relation. The order is closed eagerly and the join/meet tables are
//! computed at construction, so every downstream structure can assume a valid
//! lattice.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element `{0}`")]
    UnknownName(String),
    #[error("order is cyclic: `{0}` and `{1}` lie below each other")]
    CyclicOrder(String, String),
    #[error("not a lattice: `{0}` and `{1}` have no {2}")]
    NotALattice(String, String, &'static str),
    #[error("a lattice needs at least one element")]
    Empty,
}

/// A finite lattice over named elements. Elements are addressed by their
/// declaration index; names are the stable external identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    top: usize,
    bottom: usize,
    lower_covers: Vec<Vec<usize>>,
}

impl FiniteLattice {
    /// Builds a lattice whose order is the reflexive-transitive closure of
    /// `covers` (pairs `(lower, upper)`).
    pub fn build<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
    ) -> Result<Self, LatticeError> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = index_names(&names)?;
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let lo = lookup(&index, lo.as_ref())?;
            let hi = lookup(&index, hi.as_ref())?;
            leq[lo * n + hi] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_closed(names, index, leq)
    }

    /// Builds a lattice from an explicit order predicate over `names`. The
    /// predicate must already be reflexive and transitive; it is checked.
    pub fn from_order<F>(names: Vec<String>, leq: F) -> Result<Self, LatticeError>
    where
        F: Fn(usize, usize) -> bool,
    {
        let index = index_names(&names)?;
        let n = names.len();
        let mut table = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = i == j || leq(i, j);
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if table[i * n + j] && table[j * n + k] && !table[i * n + k] {
                        return Err(LatticeError::NotALattice(
                            names[i].clone(),
                            names[k].clone(),
                            "transitive order",
                        ));
                    }
                }
            }
        }
        Self::from_closed(names, index, table)
    }

    fn from_closed(
        names: Vec<String>,
        index: HashMap<String, usize>,
        leq: Vec<bool>,
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(LatticeError::CyclicOrder(names[i].clone(), names[j].clone()));
                }
            }
        }
        let le = |i: usize, j: usize| leq[i * n + j];
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let lub = (0..n)
                    .filter(|&u| le(a, u) && le(b, u))
                    .find(|&u| (0..n).all(|v| !(le(a, v) && le(b, v)) || le(u, v)));
                let glb = (0..n)
                    .filter(|&l| le(l, a) && le(l, b))
                    .find(|&l| (0..n).all(|v| !(le(v, a) && le(v, b)) || le(v, l)));
                match (lub, glb) {
                    (Some(u), Some(l)) => {
                        join[a * n + b] = u;
                        meet[a * n + b] = l;
                    }
                    (None, _) => {
                        return Err(LatticeError::NotALattice(
                            names[a].clone(),
                            names[b].clone(),
                            "join",
                        ))
                    }
                    (_, None) => {
                        return Err(LatticeError::NotALattice(
                            names[a].clone(),
                            names[b].clone(),
                            "meet",
                        ))
                    }
                }
            }
        }
        let top = (0..n).fold(0, |acc, x| join[acc * n + x]);
        let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x]);
        let lower_covers = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| b != a && le(b, a))
                    .filter(|&b| (0..n).all(|c| c == a || c == b || !(le(b, c) && le(c, a))))
                    .collect()
            })
            .collect();
        Ok(FiniteLattice {
            names,
            index,
            leq,
            join,
            meet,
            top,
            bottom,
            lower_covers,
        })
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

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, LatticeError> {
        lookup(&self.index, name)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Join of an arbitrary subset; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of an arbitrary subset; the empty meet is the top.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn leq_named(&self, a: &str, b: &str) -> Result<bool, LatticeError> {
        Ok(self.leq(self.index_of(a)?, self.index_of(b)?))
    }

    pub fn join_named(&self, subset: &[&str]) -> Result<&str, LatticeError> {
        let idx = subset
            .iter()
            .map(|s| self.index_of(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.name(self.join_all(idx)))
    }

    pub fn meet_named(&self, subset: &[&str]) -> Result<&str, LatticeError> {
        let idx = subset
            .iter()
            .map(|s| self.index_of(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.name(self.meet_all(idx)))
    }

    /// Elements immediately below `a`.
    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    /// The cover relation as `(lower, upper)` index pairs, in declaration order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (hi, lows) in self.lower_covers.iter().enumerate() {
            for &lo in lows {
                out.push((lo, hi));
            }
        }
        out.sort_unstable();
        out
    }

    /// The same elements under the reversed order.
    pub fn opposite(&self) -> FiniteLattice {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq(j, i);
            }
        }
        Self::from_closed(self.names.clone(), self.index.clone(), leq)
            .expect("the opposite of a lattice is a lattice")
    }
}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>, LatticeError> {
    if names.is_empty() {
        return Err(LatticeError::Empty);
    }
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(LatticeError::DuplicateName(name.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<String, usize>, name: &str) -> Result<usize, LatticeError> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| LatticeError::UnknownName(name.to_string()))
}

/// Common small lattices.
pub mod shapes {
    use super::FiniteLattice;

    /// A chain `names[0] < names[1] < ...`.
    pub fn chain(names: &[&str]) -> FiniteLattice {
        let covers: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        FiniteLattice::build(names, &covers).expect("a chain is a lattice")
    }

    /// The four-element lattice `0 < x, y < 1` with `x`, `y` incomparable.
    pub fn diamond() -> FiniteLattice {
        FiniteLattice::build(
            &["0", "x", "y", "1"],
            &[("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")],
        )
        .expect("the diamond is a lattice")
    }
}

#[cfg(test)]
mod tests {
    use super::shapes::*;
    use super::*;

    /// Least upper bound by scanning every upper bound; independent of the tables.
    fn brute_join(l: &FiniteLattice, a: usize, b: usize) -> usize {
        let n = l.len();
        let ups: Vec<usize> = (0..n).filter(|&u| l.leq(a, u) && l.leq(b, u)).collect();
        *ups.iter().find(|&&u| ups.iter().all(|&v| l.leq(u, v))).unwrap()
    }

    fn brute_meet(l: &FiniteLattice, a: usize, b: usize) -> usize {
        let n = l.len();
        let downs: Vec<usize> = (0..n).filter(|&u| l.leq(u, a) && l.leq(u, b)).collect();
        *downs.iter().find(|&&u| downs.iter().all(|&v| l.leq(v, u))).unwrap()
    }

    #[test]
    fn one_point() {
        let l = FiniteLattice::build::<&str>(&["a"], &[]).unwrap();
        assert_eq!(l.top(), 0);
        assert_eq!(l.bottom(), 0);
        assert!(l.leq_named("a", "a").unwrap());
    }

    #[test]
    fn two_chain() {
        let l = chain(&["0", "1"]);
        assert_eq!(l.name(l.top()), "1");
        assert_eq!(l.name(l.bottom()), "0");
        assert!(l.leq_named("0", "1").unwrap());
        assert_eq!(l.meet_named(&["0", "1"]).unwrap(), "0");
    }

    #[test]
    fn diamond_join_meet() {
        let l = diamond();
        let (x, y) = (l.index_of("x").unwrap(), l.index_of("y").unwrap());
        assert_eq!(l.name(brute_join(&l, x, y)), "1");
        assert_eq!(l.name(brute_meet(&l, x, y)), "0");
        assert_eq!(l.join_named(&["x", "y"]).unwrap(), "1");
        assert_eq!(l.meet_named(&["x", "y"]).unwrap(), "0");
        assert!(!l.leq_named("x", "y").unwrap());
    }

    #[test]
    fn empty_subsets() {
        let l = diamond();
        assert_eq!(l.join_named(&[]).unwrap(), "0");
        assert_eq!(l.meet_named(&[]).unwrap(), "1");
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            FiniteLattice::build::<&str>(&["a", "a"], &[]),
            Err(LatticeError::DuplicateName("a".into()))
        );
        assert_eq!(
            FiniteLattice::build(&["a"], &[("a", "b")]),
            Err(LatticeError::UnknownName("b".into()))
        );
        assert!(matches!(
            FiniteLattice::build(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(LatticeError::CyclicOrder(..))
        ));
        // Two incomparable elements with nothing above them.
        assert!(matches!(
            FiniteLattice::build::<&str>(&["a", "b"], &[]),
            Err(LatticeError::NotALattice(..))
        ));
        // Two minimal elements below a common top: no meet.
        assert!(matches!(
            FiniteLattice::build(&["a", "b", "t"], &[("a", "t"), ("b", "t")]),
            Err(LatticeError::NotALattice(_, _, "meet"))
        ));
        assert_eq!(FiniteLattice::build::<&str>(&[], &[]), Err(LatticeError::Empty));
        assert!(matches!(diamond().index_of("z"), Err(LatticeError::UnknownName(_))));
    }

    #[test]
    fn tables_match_brute_force_and_laws_hold() {
        let pentagon = FiniteLattice::build(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .unwrap();
        for l in [chain(&["0", "m", "1"]), diamond(), pentagon] {
            let n = l.len();
            for a in 0..n {
                assert_eq!(l.join_all([a]), a);
                assert_eq!(l.meet_all([a]), a);
                for b in 0..n {
                    assert_eq!(l.join(a, b), brute_join(&l, a, b));
                    assert_eq!(l.meet(a, b), brute_meet(&l, a, b));
                    assert!(l.leq(a, l.join(a, b)));
                    assert!(l.leq(l.meet(a, b), a));
                    assert_eq!(l.join(a, b), l.join(b, a));
                    assert_eq!(l.meet(a, b), l.meet(b, a));
                    assert_eq!(l.join(a, a), a);
                    for c in 0..n {
                        assert_eq!(l.join(l.join(a, b), c), l.join(a, l.join(b, c)));
                        assert_eq!(l.meet(l.meet(a, b), c), l.meet(a, l.meet(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn opposite_reverses_and_covers_roundtrip() {
        let l = diamond();
        let op = l.opposite();
        assert_eq!(op.name(op.top()), "0");
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(op.leq(a, b), l.leq(b, a));
            }
        }
        let covers: Vec<(String, String)> = l
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| (l.name(a).to_string(), l.name(b).to_string()))
            .collect();
        let rebuilt = FiniteLattice::build(l.names(), &covers).unwrap();
        assert_eq!(rebuilt, l);
        let x = l.index_of("x").unwrap();
        assert_eq!(l.lower_covers(x), &[l.bottom()]);
    }
}
