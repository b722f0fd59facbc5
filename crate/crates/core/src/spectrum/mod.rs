//! Construction matrices, spectra and minimum orders.
//!
//! For a pot `P = {t_1, ..., t_p}` over symbols `a_1, ..., a_s` the
//! construction matrix has one row per symbol, holding the net count
//! `z_ij = #a_i(t_j) - #^a_i(t_j)`, followed by an all-ones totals row. Its
//! solutions with totals equal to 1 are the tile proportions of complete
//! assemblies; solutions with totals `k` and integer entries are tile counts.

mod matrix;
mod solve;

pub use matrix::{is_nonnegative_integral, rank, ratio, rational, rref, Rational, RationalMatrix};
pub use solve::SolveError;
pub(crate) use solve::BoundedSolver;

use num::{Integer, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::budget::{Budget, BudgetExhausted};
use crate::pot::{BondSymbol, Pot};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionMatrix {
    pub symbols: Vec<BondSymbol>,
    /// Symbol rows followed by the totals row.
    pub rows: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
}

impl ConstructionMatrix {
    pub fn augmented(&self) -> RationalMatrix {
        let rows: Vec<Vec<i64>> = self
            .rows
            .iter()
            .zip(&self.rhs)
            .map(|(r, &b)| r.iter().copied().chain([b]).collect())
            .collect();
        RationalMatrix::from_integers(&rows)
    }

    pub fn columns(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }
}

/// Balance rows only, one per symbol in canonical order.
pub fn balance_rows(pot: &Pot) -> Vec<Vec<i64>> {
    let profiles = pot.profiles();
    (0..pot.symbol_count())
        .map(|i| profiles.iter().map(|p| p.net(i)).collect())
        .collect()
}

/// `M(P)`: proportions, totals row equal to 1.
pub fn construction_matrix(pot: &Pot) -> ConstructionMatrix {
    construction_matrix_k(pot, 1)
}

/// `M_k(P)`: tile counts summing to `k`.
pub fn construction_matrix_k(pot: &Pot, k: u64) -> ConstructionMatrix {
    let mut rows = balance_rows(pot);
    rows.push(vec![1; pot.len()]);
    let mut rhs = vec![0; pot.symbol_count()];
    rhs.push(k as i64);
    ConstructionMatrix {
        symbols: pot.symbols().to_vec(),
        rows,
        rhs,
    }
}

/// Whether the counts conserve every cohesive end.
pub fn balance_holds(pot: &Pot, counts: &[u64]) -> bool {
    counts.len() == pot.len()
        && balance_rows(pot)
            .iter()
            .all(|row| row.iter().zip(counts).map(|(z, &r)| z * r as i64).sum::<i64>() == 0)
}

/// Solution set of `M(P)` as `c + sum_j t_j basis_j`, where `t_j` is the
/// value of free coordinate `free_columns[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumSolution {
    pub consistent: bool,
    pub constants: Vec<Rational>,
    pub basis: Vec<Vec<Rational>>,
    pub free_columns: Vec<usize>,
}

impl SpectrumSolution {
    pub fn free_count(&self) -> usize {
        self.basis.len()
    }

    /// The point with the given free-coordinate values.
    pub fn point(&self, free_values: &[Rational]) -> Vec<Rational> {
        assert_eq!(free_values.len(), self.basis.len());
        let mut r = self.constants.clone();
        for (t, dir) in free_values.iter().zip(&self.basis) {
            for (x, d) in r.iter_mut().zip(dir) {
                *x += t * d;
            }
        }
        r
    }

    /// The unique point when there are no free coordinates.
    pub fn unique(&self) -> Option<&[Rational]> {
        (self.consistent && self.basis.is_empty()).then_some(&self.constants[..])
    }

    /// Human-readable form, e.g. `<3/4, 1/4>` or `<1/6 + t0, ...>`.
    pub fn render(&self) -> String {
        if !self.consistent {
            return "empty".to_string();
        }
        let coords: Vec<String> = (0..self.constants.len())
            .map(|i| {
                let mut parts = Vec::new();
                if !self.constants[i].is_zero() {
                    parts.push(self.constants[i].to_string());
                }
                for (j, dir) in self.basis.iter().enumerate() {
                    let d = &dir[i];
                    if d.is_zero() {
                        continue;
                    }
                    let var = format!("t{j}");
                    let term = if d.is_one() {
                        var
                    } else if *d == -Rational::one() {
                        format!("-{var}")
                    } else {
                        format!("{d}*{var}")
                    };
                    parts.push(term);
                }
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join(" + ").replace("+ -", "- ")
                }
            })
            .collect();
        format!("<{}>", coords.join(", "))
    }
}

pub fn spectrum(pot: &Pot) -> SpectrumSolution {
    let m = construction_matrix(pot);
    let p = m.columns();
    let (reduced, pivot_cols) = rref(&m.augmented());
    let consistent = !pivot_cols.contains(&p);
    let pivots: Vec<usize> = pivot_cols.iter().copied().filter(|&c| c < p).collect();
    let free_columns: Vec<usize> = (0..p).filter(|c| !pivots.contains(c)).collect();
    let mut constants = vec![Rational::zero(); p];
    for (row, &c) in pivots.iter().enumerate() {
        constants[c] = reduced[(row, p)].clone();
    }
    let basis = free_columns
        .iter()
        .map(|&f| {
            let mut dir = vec![Rational::zero(); p];
            dir[f] = Rational::one();
            for (row, &c) in pivots.iter().enumerate() {
                dir[c] = -reduced[(row, f)].clone();
            }
            dir
        })
        .collect();
    SpectrumSolution {
        consistent,
        constants,
        basis,
        free_columns,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct OrderWitness {
    pub order: u64,
    pub counts: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinOrder {
    pub free_count: usize,
    /// Sorted by order, then lexicographically by counts. Empty when no
    /// admissible integer point exists up to the requested order.
    pub witnesses: Vec<OrderWitness>,
}

impl MinOrder {
    pub fn minimum(&self) -> Option<u64> {
        self.witnesses.first().map(|w| w.order)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectrumError {
    #[error("spectrum has {free_count} degrees of freedom; at most 2 are supported without the fallback search")]
    TooManyFreeVariables { free_count: usize },
    #[error("order bound must be at least 1")]
    ZeroOrder,
    #[error(transparent)]
    Budget(#[from] BudgetExhausted),
    #[error("coefficients exceed the 128-bit working range")]
    Overflow,
}

impl From<SolveError> for SpectrumError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Budget(b) => SpectrumError::Budget(b),
            SolveError::Overflow => SpectrumError::Overflow,
        }
    }
}

/// Minimum order search with the default budget.
pub fn min_order(pot: &Pot, max_order: u64, fallback: bool) -> Result<MinOrder, SpectrumError> {
    min_order_budgeted(pot, max_order, fallback, &mut Budget::default())
}

/// Orders `n <= max_order` at which `n r` is a nonnegative integer point of
/// the spectrum.
///
/// With no free coordinates the single point `r` fixes the answer: the least
/// common denominator `L` of its entries, and only that witness is reported.
/// With one or two free coordinates every admissible integer point is
/// reported. More free coordinates need `fallback`, which enumerates
/// compositions of each `n` directly.
pub fn min_order_budgeted(
    pot: &Pot,
    max_order: u64,
    fallback: bool,
    budget: &mut Budget,
) -> Result<MinOrder, SpectrumError> {
    if max_order == 0 {
        return Err(SpectrumError::ZeroOrder);
    }
    let s = spectrum(pot);
    let free_count = s.free_count();
    let empty = MinOrder {
        free_count,
        witnesses: Vec::new(),
    };
    if !s.consistent {
        return Ok(empty);
    }
    if let Some(r) = s.unique() {
        if r.iter().any(Signed::is_negative) {
            return Ok(empty);
        }
        let lcd = r.iter().fold(num::BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let Some(order) = lcd.to_u64().filter(|&n| n <= max_order) else {
            return Ok(empty);
        };
        let counts = r
            .iter()
            .map(|x| (x * Rational::from_integer(lcd.clone())).to_integer().to_u64())
            .collect::<Option<Vec<u64>>>()
            .ok_or(SpectrumError::Overflow)?;
        return Ok(MinOrder {
            free_count,
            witnesses: vec![OrderWitness { order, counts }],
        });
    }
    let witnesses = if free_count <= 2 {
        parametric_witnesses(pot, max_order, budget)?
    } else if fallback {
        composition_witnesses(pot, max_order, budget)?
    } else {
        return Err(SpectrumError::TooManyFreeVariables { free_count });
    };
    Ok(MinOrder {
        free_count,
        witnesses,
    })
}

/// Walks the free coordinates over `0..=n` for each order.
fn parametric_witnesses(
    pot: &Pot,
    max_order: u64,
    budget: &mut Budget,
) -> Result<Vec<OrderWitness>, SpectrumError> {
    let m = construction_matrix(pot);
    let solver = BoundedSolver::new(&m.rows, &m.rhs)?;
    let mut out = Vec::new();
    for n in 1..=max_order {
        let upper = vec![n as i64; pot.len()];
        let mut found: Vec<Vec<u64>> = Vec::new();
        solver.for_each(n as i64, &upper, budget, |x| {
            found.push(x.iter().map(|&v| v as u64).collect());
            true
        })?;
        found.sort();
        out.extend(found.into_iter().map(|counts| OrderWitness { order: n, counts }));
    }
    Ok(out)
}

/// Every composition of each `n` into `#P` parts, filtered by the balance rows.
fn composition_witnesses(
    pot: &Pot,
    max_order: u64,
    budget: &mut Budget,
) -> Result<Vec<OrderWitness>, SpectrumError> {
    let rows = balance_rows(pot);
    let p = pot.len();
    let mut out = Vec::new();
    let mut counts = vec![0u64; p];
    for n in 1..=max_order {
        compositions(&mut counts, 0, n, budget, &mut |c| {
            if rows
                .iter()
                .all(|row| row.iter().zip(c).map(|(z, &r)| z * r as i64).sum::<i64>() == 0)
            {
                out.push(OrderWitness {
                    order: n,
                    counts: c.to_vec(),
                });
            }
        })?;
    }
    // Compositions are produced in lexicographic order within each n.
    Ok(out)
}

fn compositions(
    counts: &mut [u64],
    index: usize,
    remaining: u64,
    budget: &mut Budget,
    visit: &mut dyn FnMut(&[u64]),
) -> Result<(), BudgetExhausted> {
    budget.tick()?;
    if index + 1 == counts.len() {
        counts[index] = remaining;
        visit(counts);
        counts[index] = 0;
        return Ok(());
    }
    for v in 0..=remaining {
        counts[index] = v;
        compositions(counts, index + 1, remaining - v, budget, visit)?;
    }
    counts[index] = 0;
    Ok(())
}

/// Some tile-count vector with total `k` that conserves every end: the
/// lexicographically smallest one, or `None`.
pub fn integer_feasible_at(pot: &Pot, k: u64) -> Option<OrderWitness> {
    integer_feasible_at_budgeted(pot, k, &mut Budget::unlimited())
        .expect("unlimited budget and small coefficients")
}

pub fn integer_feasible_at_budgeted(
    pot: &Pot,
    k: u64,
    budget: &mut Budget,
) -> Result<Option<OrderWitness>, SpectrumError> {
    if k == 0 {
        return Err(SpectrumError::ZeroOrder);
    }
    let all = count_vectors(pot, k, budget)?;
    Ok(all.into_iter().next().map(|counts| OrderWitness { order: k, counts }))
}

/// All nonnegative integer solutions of `M_k(P)`, sorted lexicographically.
pub fn count_vectors(pot: &Pot, k: u64, budget: &mut Budget) -> Result<Vec<Vec<u64>>, SpectrumError> {
    let m = construction_matrix_k(pot, k);
    let solver = BoundedSolver::new(&m.rows, &m.rhs)?;
    let upper = vec![k as i64; pot.len()];
    let mut found: Vec<Vec<u64>> = Vec::new();
    solver.for_each(1, &upper, budget, |x| {
        found.push(x.iter().map(|&v| v as u64).collect());
        true
    })?;
    found.sort();
    Ok(found)
}
