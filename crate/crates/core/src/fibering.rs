//! Decide which integral characters of the two-generator one-relator group
//! have finitely generated kernel: Nielsen-reduce the character to (1, 0),
//! transform the relator by the inverse automorphism, Magnus-rewrite, and
//! apply the extremal-subscript criterion (kernel free iff both extremal
//! subscripts occur exactly once).

use serde::{Deserialize, Serialize};

use crate::words::{kernel_rank, magnus_rewrite, KernelRank, Word};
use crate::CoreError;

/// Elementary Nielsen automorphism of the free group on two generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NielsenMove {
    /// x0 <-> x1.
    Swap,
    /// x_g -> x_g^{-1}.
    Invert { gen: usize },
    /// x_target -> x_target * x_by^{+-1} (inverse exponent iff `inverse`).
    Multiply { target: usize, by: usize, inverse: bool },
}

impl NielsenMove {
    /// Induced action chi -> chi . alpha on characters.
    pub fn apply_to_character(&self, (p, q): (i64, i64)) -> (i64, i64) {
        match *self {
            NielsenMove::Swap => (q, p),
            NielsenMove::Invert { gen } => {
                if gen == 0 {
                    (-p, q)
                } else {
                    (p, -q)
                }
            }
            NielsenMove::Multiply { target, by, inverse } => {
                let eps: i64 = if inverse { -1 } else { 1 };
                let other = if by == 0 { p } else { q };
                if target == 0 {
                    (p + eps * other, q)
                } else {
                    (p, q + eps * other)
                }
            }
        }
    }

    /// Substitute by the inverse automorphism alpha^{-1} (used to transport
    /// the relator into the new generating set).
    pub fn inverse_substitution(&self, w: &Word) -> Word {
        match *self {
            NielsenMove::Swap => w.substitute(|g| Word::generator(1 - g)),
            NielsenMove::Invert { gen } => w.substitute(|g| {
                if g == gen {
                    Word::generator(g).inverse()
                } else {
                    Word::generator(g)
                }
            }),
            NielsenMove::Multiply { target, by, inverse } => w.substitute(|g| {
                if g == target {
                    let tail = Word::generator(by);
                    let tail = if inverse { tail } else { tail.inverse() };
                    Word::generator(g).concat(&tail)
                } else {
                    Word::generator(g)
                }
            }),
        }
    }
}

/// Verdict of the fibering decider.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FiberVerdict {
    Fibered { kernel_rank: u32 },
    NotFibered { min: i64, min_count: usize, max: i64, max_count: usize },
}

/// A Euclidean sequence of moves whose induced character action carries chi
/// to (1, 0). Requires chi primitive and nonzero.
pub fn primitive_reduce(chi: (i64, i64)) -> Result<Vec<NielsenMove>, CoreError> {
    let (mut p, mut q) = chi;
    if p == 0 && q == 0 {
        return Err(CoreError::ZeroCharacter);
    }
    debug_assert_eq!(gcd(p.unsigned_abs(), q.unsigned_abs()), 1, "chi must be primitive");
    let mut moves = Vec::new();
    let mut push = |mv: NielsenMove, p: &mut i64, q: &mut i64| {
        let next = mv.apply_to_character((*p, *q));
        *p = next.0;
        *q = next.1;
        moves.push(mv);
    };
    while q != 0 {
        if p == 0 {
            push(NielsenMove::Swap, &mut p, &mut q);
        } else if p.abs() >= q.abs() {
            // ties reduce the first coordinate
            let inverse = (p > 0) == (q > 0);
            push(NielsenMove::Multiply { target: 0, by: 1, inverse }, &mut p, &mut q);
        } else {
            let inverse = (p > 0) == (q > 0);
            push(NielsenMove::Multiply { target: 1, by: 0, inverse }, &mut p, &mut q);
        }
    }
    if p < 0 {
        push(NielsenMove::Invert { gen: 0 }, &mut p, &mut q);
    }
    debug_assert_eq!((p, q), (1, 0));
    Ok(moves)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Transport the relator along the move sequence: apply each move's inverse
/// substitution in order, then reduce freely and cyclically.
pub fn transform_relator(relator: &Word, moves: &[NielsenMove]) -> Word {
    let mut w = relator.clone();
    for mv in moves {
        w = mv.inverse_substitution(&w);
    }
    w.cyclic_reduce()
}

/// The decider: divide chi by its content, Nielsen-reduce to (1, 0),
/// transform the relator, Magnus-rewrite, then apply the extremal-subscript
/// criterion.
pub fn decide_fibering(relator: &Word, chi: (i64, i64)) -> Result<FiberVerdict, CoreError> {
    let (p, q) = chi;
    if p == 0 && q == 0 {
        return Err(CoreError::ZeroCharacter);
    }
    let g = gcd(p.unsigned_abs(), q.unsigned_abs()) as i64;
    let chi = (p / g, q / g);
    let moves = primitive_reduce(chi)?;
    let transformed = transform_relator(relator, &moves);
    // a genuine character kills the relator, making the Magnus form
    // well-defined; anything else is outside the criterion's hypotheses
    if transformed.exponent_sum(0) != 0 {
        return Err(CoreError::DegenerateRewrite);
    }
    let sw = magnus_rewrite(&transformed)?;
    if sw.is_empty() {
        return Err(CoreError::DegenerateRewrite);
    }
    Ok(match kernel_rank(&sw)? {
        KernelRank::FreeOfRank { rank, .. } => FiberVerdict::Fibered { kernel_rank: rank },
        KernelRank::ExtremesRepeat { min, min_count, max, max_count } => {
            FiberVerdict::NotFibered { min, min_count, max, max_count }
        }
    })
}

/// One row of a character scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub p: i64,
    pub q: i64,
    pub outcome: ScanOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanOutcome {
    Fibered { kernel_rank: u32 },
    NotFibered { min_count: usize, max_count: usize },
    Degenerate,
}

/// Verdicts for all primitive (p, q) with |p|, |q| <= bound, one
/// representative per sign class (p > 0, or p = 0 and q = 1), sorted
/// lexicographically.
pub fn scan_characters(relator: &Word, bound: i64) -> Vec<ScanRow> {
    let mut rows = Vec::new();
    for p in 0..=bound {
        for q in -bound..=bound {
            if p == 0 {
                if q != 1 {
                    continue;
                }
            } else if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
                continue;
            }
            let outcome = match decide_fibering(relator, (p, q)) {
                Ok(FiberVerdict::Fibered { kernel_rank }) => {
                    ScanOutcome::Fibered { kernel_rank }
                }
                Ok(FiberVerdict::NotFibered { min_count, max_count, .. }) => {
                    ScanOutcome::NotFibered { min_count, max_count }
                }
                Err(_) => ScanOutcome::Degenerate,
            };
            rows.push(ScanRow { p, q, outcome });
        }
    }
    rows
}
