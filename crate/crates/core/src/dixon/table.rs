use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cyclo::CyclotomicValue;
use super::field::{dixon_prime, Fp, Matrix};
use super::verify::verify_table;
use super::DixonError;
use crate::arith::FactoredInt;
use crate::perm::{class_mult_tensor, conjugacy_classes, ClassData, EnumeratedGroup, PermGroup};

/// Default class-count cap.
pub const CLASS_CAP: usize = 30;
/// Random recombination attempts before giving up on splitting.
pub const MAX_SPLIT_ATTEMPTS: usize = 100;

#[derive(Clone, Copy, Debug)]
pub struct DixonOptions {
    pub seed: u64,
    pub class_cap: usize,
}

impl Default for DixonOptions {
    fn default() -> Self {
        Self { seed: 0, class_cap: CLASS_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharRow {
    pub degree: u64,
    pub values: Vec<CyclotomicValue>,
    pub kernel_classes: Vec<usize>,
}

/// Exact character table. Values are root-of-unity multiplicity vectors
/// read with `ζ_e = exp(2πi/e)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTable {
    pub group: String,
    pub order: FactoredInt,
    pub class_sizes: Vec<u64>,
    pub class_orders: Vec<u64>,
    pub inverse_classes: Vec<usize>,
    pub class_reps: Vec<String>,
    pub exponent: u64,
    pub prime: u64,
    pub rows: Vec<CharRow>,
}

impl CharTable {
    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn degrees(&self) -> Vec<u64> {
        let mut d: Vec<u64> = self.rows.iter().map(|r| r.degree).collect();
        d.sort_unstable();
        d
    }

    /// Order of `ker χ` for the given row.
    pub fn kernel_order(&self, row: usize) -> FactoredInt {
        let size: u64 = self.rows[row].kernel_classes.iter().map(|&c| self.class_sizes[c]).sum();
        FactoredInt::factorize(size).expect("kernel contains the identity")
    }

    pub fn order_value(&self) -> u64 {
        self.order.value().expect("oracle groups are small")
    }
}

/// Runs the oracle on a permutation group.
pub fn dixon_table(g: &PermGroup, opts: DixonOptions) -> Result<CharTable, DixonError> {
    let eg = g.enumerate()?;
    let cd = conjugacy_classes(&eg);
    dixon_from_classes(&eg, &cd, opts)
}

struct Space {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Space {
    fn from_vectors(f: Fp, mut vs: Matrix) -> Self {
        let pivots = f.rref(&mut vs);
        Self { basis: vs, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Splits `space` into eigenspaces of `a` restricted to it.
fn split(f: Fp, space: Space, a: &Matrix) -> Result<Vec<Space>, DixonError> {
    let d = space.dim();
    if d == 1 {
        return Ok(vec![space]);
    }
    let images: Vec<Vec<u64>> = space.basis.iter().map(|b| f.mat_vec(a, b)).collect();
    let restricted: Matrix = (0..d).map(|s| (0..d).map(|t| images[t][space.pivots[s]]).collect()).collect();
    let roots = f.roots(&f.charpoly(&restricted));
    if roots.len() <= 1 {
        return Ok(vec![space]);
    }
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in roots {
        let shifted: Matrix = restricted
            .iter()
            .enumerate()
            .map(|(s, row)| row.iter().enumerate().map(|(t, &x)| if s == t { f.sub(x, lambda) } else { x }).collect())
            .collect();
        let coords = f.nullspace(&shifted);
        total += coords.len();
        let vectors: Matrix = coords
            .iter()
            .map(|c| {
                let mut v = vec![0u64; space.basis[0].len()];
                for (s, &cs) in c.iter().enumerate() {
                    for (vi, &bi) in v.iter_mut().zip(&space.basis[s]) {
                        *vi = f.add(*vi, f.mul(cs, bi));
                    }
                }
                v
            })
            .collect();
        out.push(Space::from_vectors(f, vectors));
    }
    if total != d {
        return Err(DixonError::Lift(format!("class matrix not diagonalizable on a {d}-dimensional subspace")));
    }
    Ok(out)
}

fn split_all(f: Fp, spaces: Vec<Space>, a: &Matrix) -> Result<Vec<Space>, DixonError> {
    let mut out = Vec::with_capacity(spaces.len());
    for s in spaces {
        out.extend(split(f, s, a)?);
    }
    Ok(out)
}

fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// The oracle proper, on precomputed classes.
pub fn dixon_from_classes(g: &EnumeratedGroup, cd: &ClassData, opts: DixonOptions) -> Result<CharTable, DixonError> {
    let r = cd.count();
    if r > opts.class_cap {
        return Err(DixonError::ClassCap { count: r, cap: opts.class_cap });
    }
    let order = g.order() as u64;
    let e = cd.exponent;
    let p = dixon_prime(e, isqrt(4 * order)).ok_or(DixonError::NoPrime { exponent: e })?;
    let f = Fp::new(p);
    let z = f.pow(f.primitive_root(), (p - 1) / e);

    let tensor = class_mult_tensor(g, cd);
    // A_j[i][k] = a_{ijk}, so that A_j ω = ω(C_j) ω
    let class_matrix = |j: usize| -> Matrix { (0..r).map(|i| (0..r).map(|k| tensor[k][i][j] % p).collect()).collect() };

    let identity: Matrix = (0..r).map(|i| (0..r).map(|k| u64::from(i == k)).collect()).collect();
    let mut spaces = vec![Space::from_vectors(f, identity)];
    for j in 1..r {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        spaces = split_all(f, spaces, &class_matrix(j))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut attempts = 0;
    while spaces.iter().any(|s| s.dim() > 1) {
        if attempts == MAX_SPLIT_ATTEMPTS {
            return Err(DixonError::SplitFailed { attempts });
        }
        attempts += 1;
        let mut combo = vec![vec![0u64; r]; r];
        for j in 1..r {
            let c = rng.gen_range(0..p);
            let a = class_matrix(j);
            for (row, arow) in combo.iter_mut().zip(&a) {
                for (x, &y) in row.iter_mut().zip(arow) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
        }
        spaces = split_all(f, spaces, &combo)?;
    }
    if spaces.len() != r {
        return Err(DixonError::Lift(format!("found {} characters for {r} classes", spaces.len())));
    }

    // powers of each class representative, by class
    let power_classes: Vec<Vec<usize>> =
        (0..r).map(|c| (0..cd.orders[c]).map(|l| cd.power_class(g, c, l)).collect()).collect();
    let size_inv: Vec<u64> = cd.sizes.iter().map(|&s| f.inv(s % p)).collect();
    let max_degree = isqrt(order);

    let mut rows = Vec::with_capacity(r);
    for space in spaces {
        let w0 = &space.basis[0];
        let scale = f.inv(w0[0]);
        let w: Vec<u64> = w0.iter().map(|&x| f.mul(x, scale)).collect();
        let norm = (0..r).fold(0, |acc, i| f.add(acc, f.mul(f.mul(w[i], w[cd.inverse[i]]), size_inv[i])));
        if norm == 0 {
            return Err(DixonError::Lift("zero norm for a central character".into()));
        }
        let target = f.mul(order % p, f.inv(norm));
        let degree = (1..=max_degree)
            .find(|&d| d * d % p == target)
            .ok_or_else(|| DixonError::Lift(format!("no degree with square {target} mod {p}")))?;
        let chi: Vec<u64> = (0..r).map(|i| f.mul(f.mul(degree % p, w[i]), size_inv[i])).collect();
        let mut values = Vec::with_capacity(r);
        for c in 0..r {
            let ec = cd.orders[c];
            let zeta = f.pow(z, e / ec);
            let zeta_inv = f.inv(zeta);
            let e_inv = f.inv(ec % p);
            let mut mult = Vec::with_capacity(ec as usize);
            for s in 0..ec {
                let step = f.pow(zeta_inv, s);
                let mut acc = 0u64;
                let mut tw = 1u64;
                for l in 0..ec as usize {
                    acc = f.add(acc, f.mul(chi[power_classes[c][l]], tw));
                    tw = f.mul(tw, step);
                }
                let m = f.mul(acc, e_inv);
                if m > degree {
                    return Err(DixonError::Lift(format!("multiplicity {m} exceeds degree {degree} on class {c}")));
                }
                mult.push(m);
            }
            let value = CyclotomicValue { order: ec, mult };
            if value.total() != degree {
                return Err(DixonError::Lift(format!("multiplicities on class {c} do not sum to {degree}")));
            }
            values.push(value);
        }
        let kernel_classes = (0..r).filter(|&c| values[c].is_degree(degree)).collect();
        rows.push(CharRow { degree, values, kernel_classes });
    }
    rows.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| b.values.cmp(&a.values)));

    let table = CharTable {
        group: g.name.clone(),
        order: g.order_factored(),
        class_sizes: cd.sizes.clone(),
        class_orders: cd.orders.clone(),
        inverse_classes: cd.inverse.clone(),
        class_reps: cd.reps.iter().map(|&id| g.element(id).to_string()).collect(),
        exponent: e,
        prime: p,
        rows,
    };
    let report = verify_table(&table);
    if let Some(failure) = report.failure {
        return Err(DixonError::Verification(failure));
    }
    Ok(table)
}
