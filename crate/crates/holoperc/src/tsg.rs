//! Generic finite transformation machinery: composition, action on state
//! sets, breadth-first orbit closure with witness words, and a brute-force
//! semigroup enumerator used as a test oracle at small sizes.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::netmodel::{Label, StateId, Transformation};

/// A word over generator indices. The empty word acts as the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn push(&self, gen: usize) -> Word {
        let mut v = self.0.clone();
        v.push(gen);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Render against generator labels, collapsing runs: `t.t` becomes `t^2`.
    /// The empty word renders as the identity symbol.
    pub fn display(&self, labels: &[Label]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == g {
                run += 1;
            }
            if !out.is_empty() {
                out.push('.');
            }
            out.push_str(&labels[g].to_string());
            if run > 1 {
                out.push_str(&format!("^{run}"));
            }
            i += run;
        }
        out
    }
}

/// A set of states, canonicalized as a sorted deduplicated member list so
/// that equality is syntactic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StateSet {
    members: Vec<StateId>,
}

impl StateSet {
    pub fn new(iter: impl IntoIterator<Item = StateId>) -> StateSet {
        let mut members: Vec<StateId> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        StateSet { members }
    }

    pub fn singleton(s: StateId) -> StateSet {
        StateSet { members: vec![s] }
    }

    /// The full state set `1..=m`.
    pub fn full(m: usize) -> StateSet {
        StateSet {
            members: (1..=m as StateId).collect(),
        }
    }

    pub fn members(&self) -> &[StateId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: StateId) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        if self.members.len() > other.members.len() {
            return false;
        }
        self.members.iter().all(|&s| other.contains(s))
    }
}

impl fmt::Display for StateSet {
    fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// Left-to-right composition: `compose(f, g)` applies `f` first, matching
/// the right-action notation `x . f . g`.
pub fn compose(f: &Transformation, g: &Transformation) -> Result<Transformation> {
    if f.size() != g.size() {
        return Err(Error::InvalidInput(format!(
            "domain mismatch: {} vs {}",
            f.size(),
            g.size()
        )));
    }
    let table = (1..=f.size() as StateId)
        .map(|x| g.apply(f.apply(x)))
        .collect();
    Transformation::from_table(table, Label::Anon)
}

/// Elementwise image of a state set.
pub fn act_on_set(p: &StateSet, f: &Transformation) -> StateSet {
    StateSet::new(p.members().iter().map(|&s| f.apply(s)))
}

/// All sets reachable from a seed under generator words, each with one
/// shortest witness word (lexicographically least among shortest, by
/// generator index). Item 0 is the seed with the empty word.
#[derive(Debug, Clone)]
pub struct Orbit {
    items: Vec<(StateSet, Word)>,
    index: HashMap<StateSet, usize>,
}

impl Orbit {
    pub fn items(&self) -> &[(StateSet, Word)] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, set: &StateSet) -> bool {
        self.index.contains_key(set)
    }

    pub fn witness(&self, set: &StateSet) -> Option<&Word> {
        self.index.get(set).map(|&i| &self.items[i].1)
    }

    pub fn sets(&self) -> impl Iterator<Item = &StateSet> {
        self.items.iter().map(|(s, _)| s)
    }
}

/// Breadth-first closure of `seed` under the generator actions. Expanding
/// queue entries in discovery order and generators in index order makes the
/// kept witness the lexicographically least among the shortest.
pub fn orbit_closure(seed: &StateSet, gens: &[Transformation]) -> Orbit {
    let mut items = vec![(seed.clone(), Word::empty())];
    let mut index = HashMap::new();
    index.insert(seed.clone(), 0);
    let mut head = 0;
    while head < items.len() {
        let (set, word) = items[head].clone();
        for (gi, g) in gens.iter().enumerate() {
            let img = act_on_set(&set, g);
            if !index.contains_key(&img) {
                index.insert(img.clone(), items.len());
                items.push((img, word.push(gi)));
            }
        }
        head += 1;
    }
    Orbit { items, index }
}

/// Every distinct product of the generators, by closure under right
/// multiplication. Intended as a small-scale oracle; errors out once more
/// than `cap` elements appear.
pub fn enumerate_semigroup(gens: &[Transformation], cap: usize) -> Result<Vec<Transformation>> {
    let mut elems: Vec<Transformation> = Vec::new();
    let mut seen: HashMap<Vec<StateId>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for g in gens {
        if !seen.contains_key(g.table()) {
            seen.insert(g.table().to_vec(), elems.len());
            elems.push(g.clone());
            queue.push_back(elems.len() - 1);
        }
    }
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let prod = compose(&elems[i], g)?;
            if !seen.contains_key(prod.table()) {
                if elems.len() + 1 > cap {
                    return Err(Error::Capacity {
                        what: "semigroup elements",
                        value: elems.len() + 1,
                        cap,
                    });
                }
                seen.insert(prod.table().to_vec(), elems.len());
                elems.push(prod);
                queue.push_back(elems.len() - 1);
            }
        }
    }
    Ok(elems)
}
