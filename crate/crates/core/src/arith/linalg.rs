//! Right nullspaces over a field of fractions by fraction-free elimination.

use super::gcd::{gcd, lcm};
use super::mpoly::MPoly;
use super::ratfun::RatFun;

/// Row echelon form computed by Bareiss elimination. Every division is exact.
struct Echelon {
    rows: Vec<Vec<MPoly>>,
    pivots: Vec<usize>,
}

fn bareiss(mut m: Vec<Vec<MPoly>>, ncols: usize) -> Echelon {
    let nrows = m.len();
    let mut prev = MPoly::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let pick = (r..nrows).filter(|&i| !m[i][col].is_zero()).min_by_key(|&i| m[i][col].len());
        let Some(i) = pick else { continue };
        m.swap(r, i);
        let (head, tail) = m.split_at_mut(r + 1);
        let prow = &head[r];
        let piv = &prow[col];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                for j in col + 1..ncols {
                    if !row[j].is_zero() {
                        row[j] = (piv * &row[j]).div_exact(&prev).expect("Bareiss division is exact");
                    }
                }
                continue;
            }
            let a = row[col].clone();
            for j in col + 1..ncols {
                let v = &(piv * &row[j]) - &(&a * &prow[j]);
                row[j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            row[col] = MPoly::zero();
        }
        prev = m[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    Echelon { rows: m, pivots }
}

/// Clears the denominators of one row.
fn integral_row(row: &[RatFun]) -> Vec<MPoly> {
    let mut l = MPoly::one();
    for e in row {
        if !e.is_zero() && !e.den().is_one() {
            l = lcm(&l, e.den());
        }
    }
    row.iter()
        .map(|e| if e.is_zero() { MPoly::zero() } else { e.num() * &l.div_exact(e.den()).expect("lcm") })
        .collect()
}

/// Basis of `{v : M v = 0}`; each basis vector is polynomial with coprime
/// entries and positive leading coefficient in its last nonzero entry.
pub fn nullspace(m: &[Vec<RatFun>], ncols: usize) -> Vec<Vec<MPoly>> {
    let rows: Vec<Vec<MPoly>> =
        m.iter().map(|r| integral_row(r)).filter(|r| r.iter().any(|e| !e.is_zero())).collect();
    let ech = bareiss(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !ech.pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut x = vec![RatFun::zero(); ncols];
        x[f] = RatFun::one();
        for t in (0..ech.rows.len()).rev() {
            let p = ech.pivots[t];
            let mut acc = RatFun::zero();
            for j in p + 1..ncols {
                if !ech.rows[t][j].is_zero() && !x[j].is_zero() {
                    acc = &acc + &(&RatFun::from_poly(ech.rows[t][j].clone()) * &x[j]);
                }
            }
            x[p] = -&(&acc / &RatFun::from_poly(ech.rows[t][p].clone()));
        }
        basis.push(primitive_vector(&x));
    }
    basis
}

/// Rank of a matrix over the fraction field.
pub fn rank(m: &[Vec<RatFun>], ncols: usize) -> usize {
    let rows: Vec<Vec<MPoly>> = m.iter().map(|r| integral_row(r)).collect();
    bareiss(rows, ncols).pivots.len()
}

/// Scales a vector to coprime polynomial entries, last nonzero entry with
/// positive leading coefficient.
pub fn primitive_vector(v: &[RatFun]) -> Vec<MPoly> {
    let ints = integral_row(v);
    let mut g = MPoly::zero();
    for e in &ints {
        g = gcd(&g, e);
    }
    if g.is_zero() {
        return ints;
    }
    let mut out: Vec<MPoly> = ints.iter().map(|e| e.div_exact(&g).expect("gcd")).collect();
    let (s, _) = out.iter().rev().find(|e| !e.is_zero()).unwrap().integer_normalize();
    let inv = s.recip();
    for e in out.iter_mut() {
        *e = e.scale(&inv);
    }
    out
}
