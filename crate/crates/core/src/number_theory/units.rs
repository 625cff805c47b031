use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mul_mod(a: usize, b: usize, m: usize) -> usize {
    ((a as u128 * b as u128) % m as u128) as usize
}

/// Units of `Z_l` in ascending order.
pub fn units(l: usize) -> Vec<usize> {
    (1..l.max(2)).filter(|&j| gcd(j, l) == 1).collect()
}

/// Multiplicative order of the unit `g` modulo `l`.
pub fn order(g: usize, l: usize) -> usize {
    let mut x = g % l;
    let mut k = 1;
    while x != 1 % l {
        x = mul_mod(x, g, l);
        k += 1;
    }
    k
}

/// A subgroup of the unit group of `Z_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    modulus: usize,
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validates closure, coprimality and membership of 1.
    pub fn new(modulus: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidSubgroup(format!("modulus {modulus} < 2")));
        }
        let set: BTreeSet<usize> = elements.into_iter().map(|e| e % modulus).collect();
        if !set.contains(&1) {
            return Err(Error::InvalidSubgroup("must contain 1".into()));
        }
        if let Some(&e) = set.iter().find(|&&e| gcd(e, modulus) != 1) {
            return Err(Error::InvalidSubgroup(format!(
                "{e} is not coprime to {modulus}"
            )));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&mul_mod(a, b, modulus)) {
                    return Err(Error::InvalidSubgroup(format!(
                        "not closed: {a}*{b} = {} mod {modulus}",
                        mul_mod(a, b, modulus)
                    )));
                }
            }
        }
        Ok(Self {
            modulus,
            elements: set.into_iter().collect(),
        })
    }

    pub fn trivial(modulus: usize) -> Self {
        Self {
            modulus,
            elements: vec![1],
        }
    }

    /// Closure of `generators` under multiplication.
    pub fn generated_by(modulus: usize, generators: &[usize]) -> Result<Self> {
        let mut set: BTreeSet<usize> = BTreeSet::from([1]);
        let mut frontier = vec![1usize];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                if gcd(g, modulus) != 1 {
                    return Err(Error::NotUnit { t: g, modulus });
                }
                let y = mul_mod(x, g, modulus);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Ok(Self {
            modulus,
            elements: set.into_iter().collect(),
        })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&(x % self.modulus)).is_ok()
    }

    pub fn all_one_mod3(&self) -> bool {
        self.elements.iter().all(|&h| h % 3 == 1)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Comma-separated subgroup elements, as accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSpec(pub Vec<usize>);

impl FromStr for SubgroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidSubgroup(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(SubgroupSpec)
    }
}

impl SubgroupSpec {
    pub fn build(&self, l: usize) -> Result<Subgroup> {
        Subgroup::new(l, self.0.iter().copied())
    }
}

/// All subgroups of order `k` of the unit group of `Z_l`, sorted by their
/// smallest non-identity element (then lexicographically).
///
/// Every such subgroup is generated by elements whose order divides `k`, so
/// joining cyclic subgroups of those elements until no new subgroup of order
/// dividing `k` appears finds them all, cyclic or not.
pub fn subgroups_of_order(l: usize, k: usize) -> Vec<Subgroup> {
    if l < 2 || k == 0 {
        return Vec::new();
    }
    let small: Vec<usize> = units(l)
        .into_iter()
        .filter(|&g| k % order(g, l) == 0)
        .collect();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    for &g in &small {
        let h = Subgroup::generated_by(l, &[g])
            .expect("units only")
            .elements;
        if found.insert(h.clone()) {
            frontier.push(h);
        }
    }
    while let Some(h) = frontier.pop() {
        for &g in &small {
            if h.binary_search(&g).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(g);
            let joined = Subgroup::generated_by(l, &gens)
                .expect("units only")
                .elements;
            if k % joined.len() == 0 && found.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .filter(|h| h.len() == k)
        .map(|elements| Subgroup {
            modulus: l,
            elements,
        })
        .collect();
    out.sort_by(|a, b| {
        let key = |h: &Subgroup| h.elements.iter().copied().find(|&e| e != 1);
        key(a)
            .cmp(&key(b))
            .then_with(|| a.elements.cmp(&b.elements))
    });
    out
}
