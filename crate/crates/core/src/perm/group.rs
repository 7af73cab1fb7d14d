use std::collections::{HashMap, VecDeque};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{PermError, Permutation};
use crate::arith::FactoredInt;

/// Hard cap on the number of elements an enumeration may produce.
pub const MAX_ORDER: usize = 1_000_000;

/// A permutation group given by generators.
#[derive(Clone, Debug)]
pub struct PermGroup {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub expected_order: Option<u64>,
    pub provenance: String,
}

#[derive(Deserialize, Serialize)]
struct GroupFile {
    name: String,
    degree: usize,
    generators: Vec<String>,
    expected_order: Option<u64>,
    #[serde(default)]
    provenance: String,
}

impl PermGroup {
    pub fn new(name: impl Into<String>, degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        let name = name.into();
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch { expected: degree, got: g.degree() });
            }
        }
        if generators.iter().any(Permutation::is_identity) && generators.len() > 1 {
            return Err(PermError::IdentityGenerator(name));
        }
        Ok(Self { name, degree, generators, expected_order: None, provenance: String::new() })
    }

    /// Parses the TOML generator file format.
    pub fn from_toml(src: &str) -> Result<Self, PermError> {
        let file: GroupFile = toml::from_str(src).map_err(|e| PermError::Parse(e.to_string()))?;
        let generators =
            file.generators.iter().map(|s| Permutation::parse_cycles(s, file.degree)).collect::<Result<Vec<_>, _>>()?;
        let mut g = Self::new(file.name, file.degree, generators)?;
        g.expected_order = file.expected_order;
        g.provenance = file.provenance;
        Ok(g)
    }

    pub fn load(path: &Path) -> Result<Self, PermError> {
        let src = std::fs::read_to_string(path).map_err(|e| PermError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&src)
    }

    pub fn to_toml(&self) -> String {
        let file = GroupFile {
            name: self.name.clone(),
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
            expected_order: self.expected_order,
            provenance: self.provenance.clone(),
        };
        toml::to_string(&file).expect("group files always serialize")
    }

    /// Breadth-first closure over the generators. Element 0 is the identity;
    /// ids follow discovery order.
    pub fn enumerate(&self) -> Result<EnumeratedGroup, PermError> {
        let id = Permutation::identity(self.degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for g in &self.generators {
                let next = elements[cur].then(g);
                if !index.contains_key(&next) {
                    if elements.len() == MAX_ORDER {
                        return Err(PermError::OrderCap(MAX_ORDER));
                    }
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        if let Some(expected) = self.expected_order {
            if expected != elements.len() as u64 {
                return Err(PermError::OrderMismatch { expected, got: elements.len() as u64 });
            }
        }
        let inverse = elements.iter().map(|e| index[&e.inverse()]).collect();
        let generators = self.generators.iter().map(|g| index[g]).collect();
        Ok(EnumeratedGroup { name: self.name.clone(), degree: self.degree, elements, index, inverse, generators })
    }
}

/// Every element of a group, with lookup from permutation to id.
#[derive(Clone, Debug)]
pub struct EnumeratedGroup {
    pub name: String,
    pub degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

impl EnumeratedGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn order_factored(&self) -> FactoredInt {
        FactoredInt::factorize(self.order() as u64).expect("a group is never empty")
    }

    pub fn element(&self, id: usize) -> &Permutation {
        &self.elements[id]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn id_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn inverse(&self, id: usize) -> usize {
        self.inverse[id]
    }

    pub fn generator_ids(&self) -> &[usize] {
        &self.generators
    }

    /// Id of `a` followed by `b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].then(&self.elements[b])]
    }

    /// Subgroup generated by the given elements, as element ids in
    /// discovery order.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut head = 0;
        while head < out.len() {
            let cur = out[head];
            head += 1;
            for &g in gens {
                let next = self.mul(cur, g);
                if !seen[next] {
                    seen[next] = true;
                    out.push(next);
                }
            }
        }
        out
    }

    /// A permutation group on the same points whose elements are exactly the
    /// ids in `members`, which must form a subgroup. Generators are chosen
    /// greedily in id order.
    pub fn subgroup(&self, name: &str, members: &[usize]) -> Result<PermGroup, PermError> {
        let mut inside = vec![false; self.order()];
        for &m in members {
            inside[m] = true;
        }
        let mut gens = Vec::new();
        let mut span = vec![false; self.order()];
        span[0] = true;
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        for &m in &sorted {
            if span[m] {
                continue;
            }
            gens.push(m);
            for e in self.generated_subgroup(&gens) {
                if !inside[e] {
                    return Err(PermError::NotSubgroup(name.to_string()));
                }
                span[e] = true;
            }
        }
        if span.iter().filter(|&&b| b).count() != members.len() {
            return Err(PermError::NotSubgroup(name.to_string()));
        }
        let generators = if gens.is_empty() {
            vec![Permutation::identity(self.degree)]
        } else {
            gens.iter().map(|&g| self.elements[g].clone()).collect()
        };
        let mut g = PermGroup::new(name, self.degree, generators)?;
        g.expected_order = Some(members.len() as u64);
        Ok(g)
    }
}
