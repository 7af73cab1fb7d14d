use serde::Serialize;

use super::cyclo::CycloAcc;
use super::table::CharTable;

/// Outcome of [`verify_table`]: the number of relations checked and the
/// first one that failed, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub checks: usize,
    pub failure: Option<String>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks a table exactly: shape, trivial first row, `Σ d² = |G|`,
/// multiplicity sums, kernels, and both orthogonality relations in `Z[ζ_E]`.
pub fn verify_table(t: &CharTable) -> TableReport {
    let mut checks = 0;
    match run(t, &mut checks) {
        Ok(()) => TableReport { checks, failure: None },
        Err(msg) => TableReport { checks, failure: Some(msg) },
    }
}

fn run(t: &CharTable, checks: &mut usize) -> Result<(), String> {
    let r = t.class_count();
    let order = t.order.value().ok_or("group order exceeds 64 bits")? as i128;
    let mut check = |ok: bool, msg: String| -> Result<(), String> {
        *checks += 1;
        if ok {
            Ok(())
        } else {
            Err(msg)
        }
    };

    check(t.class_orders.len() == r && t.inverse_classes.len() == r, "class data lengths disagree".into())?;
    check(t.rows.len() == r, format!("{} rows for {r} classes", t.rows.len()))?;
    let size_sum: u64 = t.class_sizes.iter().sum();
    check(size_sum as i128 == order, format!("class sizes sum to {size_sum}, not {order}"))?;
    let sq: u128 = t.rows.iter().map(|row| (row.degree as u128).pow(2)).sum();
    check(sq as i128 == order, format!("sum of squared degrees is {sq}, not {order}"))?;
    for (i, row) in t.rows.iter().enumerate() {
        check(row.values.len() == r, format!("row {i} has {} values", row.values.len()))?;
        for (c, v) in row.values.iter().enumerate() {
            check(
                v.order == t.class_orders[c] && v.mult.len() as u64 == v.order,
                format!("row {i}, class {c}: multiplicity vector has wrong length"),
            )?;
            check(
                v.total() == row.degree,
                format!("row {i}, class {c}: multiplicities sum to {} not {}", v.total(), row.degree),
            )?;
        }
        let kernel: Vec<usize> = (0..r).filter(|&c| row.values[c].is_degree(row.degree)).collect();
        check(kernel == row.kernel_classes, format!("row {i}: kernel classes inconsistent"))?;
    }
    let first = t.rows.first().ok_or("empty table")?;
    check(
        first.degree == 1 && first.values.iter().all(|v| v.is_degree(1)),
        "first row is not the trivial character".into(),
    )?;

    let base = CycloAcc::new(t.exponent);
    for a in 0..r {
        for b in a..r {
            let mut acc = base.fresh();
            for c in 0..r {
                acc.add_product_conj(t.class_sizes[c] as i128, &t.rows[a].values[c], &t.rows[b].values[c]);
            }
            let expected = if a == b { order } else { 0 };
            check(acc.as_integer() == Some(expected), format!("row orthogonality fails for rows {a} and {b}"))?;
        }
    }
    for c in 0..r {
        for d in c..r {
            let mut acc = base.fresh();
            for row in &t.rows {
                acc.add_product_conj(1, &row.values[c], &row.values[d]);
            }
            let expected = if c == d { order / t.class_sizes[c] as i128 } else { 0 };
            check(acc.as_integer() == Some(expected), format!("column orthogonality fails for classes {c} and {d}"))?;
        }
    }
    Ok(())
}
