//! Slow reference computations kept independent of the fast paths: products
//! are multiplied out factor by factor and series summed term by term, with
//! no shared helpers beyond field arithmetic. Used by tests and `selftest`.

use crate::error::{Error, Result};
use crate::exactnum::GaussianRational;

type Gr = GaussianRational;

/// `γ(γ+1)…(γ+k−1)` as a plain loop.
pub fn rising(gamma: &Gr, k: usize) -> Gr {
    let mut acc = Gr::one();
    let mut factor = gamma.clone();
    for _ in 0..k {
        acc = &acc * &factor;
        factor = &factor + &Gr::one();
    }
    acc
}

pub fn fact(n: usize) -> Gr {
    (1..=n).fold(Gr::one(), |acc, m| acc * Gr::from(m as i64))
}

/// `n!/(k!(n−k)!)`, zero for `k > n`.
pub fn choose(n: usize, k: usize) -> Gr {
    if k > n {
        return Gr::zero();
    }
    fact(n) / (fact(k) * fact(n - k))
}

/// `Σ_{k=0}^{terms−1} Π(a)_k / Π(b)_k · z^k / k!`, each term computed from
/// scratch. The caller chooses `terms`, so terminating behaviour is not
/// inferred from the parameters.
pub fn pfq(num: &[Gr], den: &[Gr], z: &Gr, terms: usize) -> Result<Gr> {
    let mut sum = Gr::zero();
    for k in 0..terms {
        let top: Gr = num.iter().map(|a| rising(a, k)).product::<Gr>() * z.pow(k as u32);
        if top.is_zero() {
            continue;
        }
        let bottom: Gr = den.iter().map(|b| rising(b, k)).product::<Gr>() * fact(k);
        if bottom.is_zero() {
            return Err(Error::DenominatorPole(format!("term {k} has a zero denominator")));
        }
        sum += top / bottom;
    }
    Ok(sum)
}

/// Terminating `pFq` summed over `0..=m`, with `m` the least `|a|` among
/// nonpositive-integer numerator parameters.
pub fn pfq_terminating(num: &[Gr], den: &[Gr], z: &Gr) -> Result<Gr> {
    let m = num
        .iter()
        .filter_map(Gr::as_nonpositive_integer)
        .min()
        .ok_or(Error::NonTerminating)?;
    pfq(num, den, z, m as usize + 1)
}

/// Inverse of a lower-triangular matrix by forward substitution, column by
/// column. Fails on a zero diagonal entry.
pub fn lower_triangular_inverse(m: &[Vec<Gr>]) -> Result<Vec<Vec<Gr>>> {
    let size = m.len();
    let mut inv = vec![vec![Gr::zero(); size]; size];
    for col in 0..size {
        for row in col..size {
            let mut rhs = if row == col { Gr::one() } else { Gr::zero() };
            for j in col..row {
                rhs -= &m[row][j] * &inv[j][col];
            }
            if m[row][row].is_zero() {
                return Err(Error::DivisionByZero);
            }
            inv[row][col] = rhs / m[row][row].clone();
        }
    }
    Ok(inv)
}

pub fn mat_vec(m: &[Vec<Gr>], x: &[Gr]) -> Vec<Gr> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(c, v)| c * v).sum())
        .collect()
}
