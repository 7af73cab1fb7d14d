use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::permutation::lcm;
use super::{EnumeratedGroup, PermError, PermGroup, Permutation};
use crate::arith::FactoredInt;

/// Class-count cap for [`normal_subgroups_small`].
pub const NORMAL_SEARCH_CLASS_CAP: usize = 20;
/// Order cap for [`normal_subgroups_small`].
pub const NORMAL_SEARCH_ORDER_CAP: usize = 10_000;

/// Conjugacy classes of an enumerated group.
///
/// Classes are numbered by the smallest element id they contain, so class 0
/// is the identity class.
#[derive(Clone, Debug, Serialize)]
pub struct ClassData {
    /// Element id of each class representative (the smallest id in the class).
    pub reps: Vec<usize>,
    pub sizes: Vec<u64>,
    /// Element orders of the representatives.
    pub orders: Vec<u64>,
    /// Class index of every element id.
    #[serde(skip)]
    pub class_of: Vec<u32>,
    /// Class of the inverses.
    pub inverse: Vec<usize>,
    /// For each prime p dividing the exponent, the class of `rep^p`.
    pub power_maps: BTreeMap<u64, Vec<usize>>,
    pub exponent: u64,
}

impl ClassData {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element] as usize
    }

    /// Sum of the class sizes of `classes`.
    pub fn union_size(&self, classes: &[usize]) -> u64 {
        classes.iter().map(|&c| self.sizes[c]).sum()
    }

    /// Class containing `rep_c^k`.
    pub fn power_class(&self, g: &EnumeratedGroup, c: usize, k: u64) -> usize {
        let p = g.element(self.reps[c]).pow(k);
        self.class_of(g.id_of(&p).expect("powers stay in the group"))
    }
}

/// Orbits of the group acting on itself by conjugation.
pub fn conjugacy_classes(g: &EnumeratedGroup) -> ClassData {
    let n = g.order();
    let gens: Vec<(Permutation, Permutation)> =
        g.generator_ids().iter().map(|&s| (g.element(s).clone(), g.element(s).inverse())).collect();
    let mut class_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for start in 0..n {
        if class_of[start] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(start);
        class_of[start] = c;
        let mut stack = vec![start];
        let mut size = 1u64;
        while let Some(x) = stack.pop() {
            for (s, s_inv) in &gens {
                let y = s_inv.then(g.element(x)).then(s);
                let id = g.id_of(&y).expect("conjugates stay in the group");
                if class_of[id] == u32::MAX {
                    class_of[id] = c;
                    size += 1;
                    stack.push(id);
                }
            }
        }
        sizes.push(size);
    }
    let orders: Vec<u64> = reps.iter().map(|&r| g.element(r).order()).collect();
    let exponent = orders.iter().fold(1, |a, &b| lcm(a, b));
    let inverse = reps.iter().map(|&r| class_of[g.inverse(r)] as usize).collect();
    let mut power_maps = BTreeMap::new();
    let primes: Vec<u64> = FactoredInt::factorize(exponent).expect("exponent is positive").primes().collect();
    for p in primes {
        let map = reps.iter().map(|&r| class_of[g.id_of(&g.element(r).pow(p)).expect("closed")] as usize).collect();
        power_maps.insert(p, map);
    }
    ClassData { reps, sizes, orders, class_of, inverse, power_maps, exponent }
}

/// `a[i][j]` for fixed `k`: pairs `(x, y)` with `x ∈ K_i`, `y ∈ K_j`, `xy = z`,
/// where `z` is the chosen element of `K_k`.
pub fn class_mult_column_at(g: &EnumeratedGroup, cd: &ClassData, z: usize) -> Vec<Vec<u64>> {
    let r = cd.count();
    let mut out = vec![vec![0u64; r]; r];
    let zp = g.element(z);
    for x in 0..g.order() {
        // y = x⁻¹ z
        let y = g.element(g.inverse(x)).then(zp);
        let y = g.id_of(&y).expect("closed");
        out[cd.class_of(x)][cd.class_of(y)] += 1;
    }
    out
}

pub fn class_mult_column(g: &EnumeratedGroup, cd: &ClassData, k: usize) -> Vec<Vec<u64>> {
    class_mult_column_at(g, cd, cd.reps[k])
}

/// Class multiplication coefficient `a_{ijk}`.
pub fn class_mult_coeff(g: &EnumeratedGroup, cd: &ClassData, i: usize, j: usize, k: usize) -> u64 {
    class_mult_column(g, cd, k)[i][j]
}

/// All coefficients, indexed `[k][i][j]`. Columns are computed in parallel.
pub fn class_mult_tensor(g: &EnumeratedGroup, cd: &ClassData) -> Vec<Vec<Vec<u64>>> {
    (0..cd.count()).into_par_iter().map(|k| class_mult_column(g, cd, k)).collect()
}

/// True when the union of `classes` is closed under multiplication, using
/// a precomputed tensor.
pub fn union_is_closed(tensor: &[Vec<Vec<u64>>], classes: &[usize]) -> bool {
    let r = tensor.len();
    let mut member = vec![false; r];
    for &c in classes {
        member[c] = true;
    }
    (0..r).filter(|&k| !member[k]).all(|k| classes.iter().all(|&i| classes.iter().all(|&j| tensor[k][i][j] == 0)))
}

/// Action of `g` on the right cosets of the normal subgroup formed by the
/// union of `normal_classes`.
pub fn quotient_group(g: &EnumeratedGroup, cd: &ClassData, normal_classes: &[usize]) -> Result<PermGroup, PermError> {
    let mut member = vec![false; cd.count()];
    for &c in normal_classes {
        if c >= cd.count() {
            return Err(PermError::NotSubgroup(format!("class {c} out of range")));
        }
        member[c] = true;
    }
    if !member[0] {
        return Err(PermError::NotSubgroup("union misses the identity".into()));
    }
    let n_elems: Vec<usize> = (0..g.order()).filter(|&e| member[cd.class_of(e)]).collect();
    for &a in &n_elems {
        for &b in &n_elems {
            if !member[cd.class_of(g.mul(a, b))] {
                return Err(PermError::NotSubgroup(format!("classes {normal_classes:?}")));
            }
        }
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut coset_reps = Vec::new();
    for x in 0..g.order() {
        if coset[x] != usize::MAX {
            continue;
        }
        let c = coset_reps.len();
        coset_reps.push(x);
        for &n in &n_elems {
            coset[g.mul(n, x)] = c;
        }
    }
    let degree = coset_reps.len();
    let gens = g
        .generator_ids()
        .iter()
        .map(|&s| {
            let images = coset_reps.iter().map(|&x| coset[g.mul(x, s)]).collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let gens: Vec<Permutation> = {
        let mut v: Vec<Permutation> = gens.into_iter().filter(|p| !p.is_identity()).collect();
        if v.is_empty() {
            v.push(Permutation::identity(degree));
        }
        v
    };
    let mut q = PermGroup::new(format!("{}/N", g.name), degree, gens)?;
    q.expected_order = Some(degree as u64);
    Ok(q)
}

/// Every normal subgroup, as a sorted list of class indices, found by
/// testing each union of classes that contains the identity.
pub fn normal_subgroups_small(g: &EnumeratedGroup, cd: &ClassData) -> Result<Vec<Vec<usize>>, PermError> {
    let r = cd.count();
    if r > NORMAL_SEARCH_CLASS_CAP {
        return Err(PermError::ClassCap { count: r, cap: NORMAL_SEARCH_CLASS_CAP });
    }
    if g.order() > NORMAL_SEARCH_ORDER_CAP {
        return Err(PermError::OrderCap(NORMAL_SEARCH_ORDER_CAP));
    }
    let tensor = class_mult_tensor(g, cd);
    let order = g.order() as u64;
    let mut out = Vec::new();
    for mask in 0u32..(1 << (r - 1)) {
        let classes: Vec<usize> = std::iter::once(0).chain((1..r).filter(|&c| mask & (1 << (c - 1)) != 0)).collect();
        let size = cd.union_size(&classes);
        if !order.is_multiple_of(size) {
            continue;
        }
        if union_is_closed(&tensor, &classes) {
            out.push(classes);
        }
    }
    out.sort_by_key(|c| (cd.union_size(c), c.clone()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enumerate(degree: usize, gens: &[&str]) -> EnumeratedGroup {
        let gens = gens.iter().map(|s| Permutation::parse_cycles(s, degree).unwrap()).collect();
        PermGroup::new("G", degree, gens).unwrap().enumerate().unwrap()
    }

    #[test]
    fn a5_classes() {
        let g = enumerate(5, &["(0,1,2,3,4)", "(0,1,2)"]);
        let cd = conjugacy_classes(&g);
        let mut sizes = cd.sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        assert_eq!(cd.sizes[0], 1);
        assert_eq!(cd.exponent, 30);
        let inv = cd.reps.iter().position(|&r| g.element(r).order() == 2).unwrap();
        assert_eq!(class_mult_coeff(&g, &cd, inv, inv, 0), 15);
        assert_eq!(class_mult_coeff(&g, &cd, 0, 0, 0), 1);
        assert_eq!(normal_subgroups_small(&g, &cd).unwrap().len(), 2);
    }

    #[test]
    fn cyclic_groups() {
        let c2 = enumerate(2, &["(0,1)"]);
        let cd = conjugacy_classes(&c2);
        assert_eq!(cd.count(), 2);
        assert_eq!(class_mult_coeff(&c2, &cd, 1, 1, 0), 1);
        let c3 = enumerate(3, &["(0,1,2)"]);
        assert_eq!(conjugacy_classes(&c3).sizes, vec![1, 1, 1]);
        let c6 = enumerate(6, &["(0,1,2,3,4,5)"]);
        let cd6 = conjugacy_classes(&c6);
        assert_eq!(normal_subgroups_small(&c6, &cd6).unwrap().len(), 4);
    }

    #[test]
    fn s4_normal_series_and_quotient() {
        let g = enumerate(4, &["(0,1,2,3)", "(0,1)"]);
        let cd = conjugacy_classes(&g);
        let normals = normal_subgroups_small(&g, &cd).unwrap();
        let sizes: Vec<u64> = normals.iter().map(|n| cd.union_size(n)).collect();
        assert_eq!(sizes, vec![1, 4, 12, 24]);
        let q = quotient_group(&g, &cd, &normals[1]).unwrap();
        assert_eq!(q.enumerate().unwrap().order(), 6);
        let q = quotient_group(&g, &cd, &normals[3]).unwrap();
        assert_eq!(q.enumerate().unwrap().order(), 1);
        // the transposition class alone with the identity is not a subgroup
        let t = cd.class_of(g.id_of(&Permutation::parse_cycles("(0,1)", 4).unwrap()).unwrap());
        assert!(matches!(quotient_group(&g, &cd, &[0, t]), Err(PermError::NotSubgroup(_))));
    }

    #[test]
    fn coefficient_totals_and_independence_of_z() {
        let g = enumerate(4, &["(0,1,2,3)", "(0,1)"]);
        let cd = conjugacy_classes(&g);
        let tensor = class_mult_tensor(&g, &cd);
        for i in 0..cd.count() {
            for j in 0..cd.count() {
                let total: u64 = (0..cd.count()).map(|k| tensor[k][i][j] * cd.sizes[k]).sum();
                assert_eq!(total, cd.sizes[i] * cd.sizes[j]);
            }
        }
        for z in 0..g.order() {
            assert_eq!(class_mult_column_at(&g, &cd, z), tensor[cd.class_of(z)]);
        }
    }
}
