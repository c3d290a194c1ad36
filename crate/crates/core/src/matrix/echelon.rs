//! Row-echelon reduction by left row operations, deg det and inversion.

use super::{DegDet, DegDetValue, OreMatrix};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::ore::{left_divmod, OrePoly, PolyDegree};

/// An invertible left row operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowOp {
    Swap { i: usize, j: usize },
    /// row_target ← row_target + q·row_source.
    AddLeftMultiple { target: usize, source: usize, q: OrePoly },
    /// row ← u·row for a nonzero constant u.
    ScaleUnit { row: usize, unit: FieldElement },
}

impl RowOp {
    pub fn apply(&self, m: &mut OreMatrix) {
        match self {
            RowOp::Swap { i, j } => m.swap_rows(*i, *j),
            RowOp::AddLeftMultiple { target, source, q } => m.add_left_multiple(*target, *source, q),
            RowOp::ScaleUnit { row, unit } => m.scale_row(*row, unit),
        }
    }

    /// The operation undoing this one.
    pub fn inverse(&self) -> RowOp {
        match self {
            RowOp::Swap { .. } => self.clone(),
            RowOp::AddLeftMultiple { target, source, q } => RowOp::AddLeftMultiple {
                target: *target,
                source: *source,
                q: -q,
            },
            RowOp::ScaleUnit { row, unit } => RowOp::ScaleUnit {
                row: *row,
                unit: unit.inv().expect("units are nonzero"),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pivot {
    pub row: usize,
    pub column: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonResult {
    pub echelon: OreMatrix,
    pub pivots: Vec<Pivot>,
    pub ops_log: Vec<RowOp>,
}

impl EchelonResult {
    /// Replays the logged operations on `a`.
    pub fn replay(&self, a: &OreMatrix) -> OreMatrix {
        let mut m = a.clone();
        for op in &self.ops_log {
            op.apply(&mut m);
        }
        m
    }

    pub fn deg_det(&self) -> DegDetValue {
        let n = self.echelon.n();
        if self.pivots.len() == n {
            DegDetValue {
                value: DegDet::Finite(self.pivots.iter().map(|p| p.degree as u64).sum()),
                free_rank_s: 0,
            }
        } else {
            DegDetValue {
                value: DegDet::Infinite,
                free_rank_s: n - self.pivots.len(),
            }
        }
    }
}

/// Column by column, repeatedly divides every candidate entry by the
/// minimum-degree one (smallest row index on ties) until a single nonzero
/// candidate remains, then swaps it into pivot position.
pub fn row_echelon(a: &OreMatrix) -> EchelonResult {
    let n = a.n();
    let mut m = a.clone();
    let mut ops = Vec::new();
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..n {
        if next_row == n {
            break;
        }
        loop {
            let candidates: Vec<usize> = (next_row..n).filter(|&r| !m.get(r, col).is_zero()).collect();
            let Some(&best) = candidates
                .iter()
                .min_by_key(|&&r| (m.get(r, col).degree(), r))
            else {
                break;
            };
            if candidates.len() == 1 {
                if best != next_row {
                    let op = RowOp::Swap { i: next_row, j: best };
                    op.apply(&mut m);
                    ops.push(op);
                }
                let degree = match m.get(next_row, col).degree() {
                    PolyDegree::Finite(d) => d,
                    PolyDegree::Bottom => unreachable!("pivot is nonzero"),
                };
                pivots.push(Pivot {
                    row: next_row,
                    column: col,
                    degree,
                });
                next_row += 1;
                break;
            }
            let divisor = m.get(best, col).clone();
            for &r in candidates.iter().filter(|&&r| r != best) {
                let (q, rem) = left_divmod(m.get(r, col), &divisor).expect("divisor is nonzero");
                if q.is_zero() {
                    continue;
                }
                let q = -&q;
                // columns left of `col` are zero in both rows; column `col` becomes the remainder
                m.add_left_multiple_from(r, best, &q, col + 1);
                m.set(r, col, rem);
                ops.push(RowOp::AddLeftMultiple {
                    target: r,
                    source: best,
                    q,
                });
            }
        }
    }
    EchelonResult {
        echelon: m,
        pivots,
        ops_log: ops,
    }
}

pub fn deg_det(a: &OreMatrix) -> DegDetValue {
    row_echelon(a).deg_det()
}

/// Two-sided inverse of a matrix with deg det 0.
pub fn invert(a: &OreMatrix) -> Result<OreMatrix> {
    let ech = row_echelon(a);
    let value = ech.deg_det().value;
    if value != DegDet::Finite(0) {
        return Err(Error::NotAUnit(value.to_string()));
    }
    let n = a.n();
    let mut m = ech.echelon.clone();
    let mut ops = ech.ops_log.clone();
    for i in 0..n {
        let pivot = m.get(i, i).as_constant().expect("degree-0 pivot");
        if !pivot.is_one() {
            let op = RowOp::ScaleUnit {
                row: i,
                unit: pivot.inv()?,
            };
            op.apply(&mut m);
            ops.push(op);
        }
    }
    for j in (1..n).rev() {
        for i in 0..j {
            if m.get(i, j).is_zero() {
                continue;
            }
            let op = RowOp::AddLeftMultiple {
                target: i,
                source: j,
                q: -m.get(i, j),
            };
            op.apply(&mut m);
            ops.push(op);
        }
    }
    debug_assert!(m.is_identity());
    let mut inv = OreMatrix::identity(a.ring(), n);
    for op in &ops {
        op.apply(&mut inv);
    }
    Ok(inv)
}
