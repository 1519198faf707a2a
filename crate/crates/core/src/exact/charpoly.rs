use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactMatrix;
use crate::error::{invalid, Result};

/// Coefficients `c_0, …, c_n` of `det(xI − m)`, lowest degree first.
///
/// Faddeev–LeVerrier on the integer matrix `L·m` (`L` clears every
/// denominator), so every division in the recurrence is exact over `Z`.
pub fn characteristic_polynomial(m: &ExactMatrix) -> Result<Vec<BigRational>> {
    if !m.is_square() {
        return Err(invalid("characteristic polynomial of a non-square matrix"));
    }
    let n = m.rows();
    let scale = m.entries().iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| m.row(i).iter().map(|q| q.numer() * (&scale / q.denom())).collect())
        .collect();
    let b = faddeev_leverrier(&a);
    // p_m(x) = L^{-n} p_{Lm}(Lx), so c_k = b_k L^{k-n}
    let mut out = Vec::with_capacity(n + 1);
    let mut denom = BigInt::one();
    for _ in 0..n {
        denom *= &scale;
    }
    for bk in b {
        out.push(BigRational::new(bk, denom.clone()));
        denom /= &scale;
    }
    Ok(out)
}

fn faddeev_leverrier(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    // m holds M_k; start from M_0 = 0 so that M_1 = I
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let mut am = multiply(a, &m);
        for (i, row) in am.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        m = am;
        let prod = multiply(a, &m);
        let tr: BigInt = (0..n).map(|i| &prod[i][i]).sum();
        debug_assert!((&tr % BigInt::from(k)).is_zero());
        c[n - k] = -tr / BigInt::from(k);
    }
    c
}

fn multiply(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i][k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let y = &b[k][j];
                if !y.is_zero() {
                    out[i][j] += x * y;
                }
            }
        }
    }
    out
}

/// Exact positive-semidefiniteness of a symmetric rational matrix.
///
/// All roots of the characteristic polynomial are real, so `m ⪰ 0` iff the
/// coefficients alternate weakly: `(−1)^{n−k} c_k ≥ 0` for every `k`.
pub fn is_psd_exact(m: &ExactMatrix) -> Result<bool> {
    if !m.is_symmetric() {
        return Err(invalid("PSD test needs a symmetric matrix"));
    }
    let c = characteristic_polynomial(m)?;
    let n = m.rows();
    Ok(c.iter().enumerate().all(|(k, ck)| {
        if (n - k).is_multiple_of(2) {
            !ck.is_negative()
        } else {
            !ck.is_positive()
        }
    }))
}

/// Exact PSD test by symmetric diagonal pivoting, cubic in the order.
///
/// Works on the integer matrix with fraction-free updates; after pivots `P`
/// each remaining entry is `det m[P∪i, P∪j]`, a positive multiple of the
/// Schur complement entry, so signs are preserved.
pub fn is_psd_pivoted(m: &ExactMatrix) -> Result<bool> {
    if !m.is_symmetric() {
        return Err(invalid("PSD test needs a symmetric matrix"));
    }
    let n = m.rows();
    let scale = m.entries().iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| m.row(i).iter().map(|q| q.numer() * (&scale / q.denom())).collect())
        .collect();
    let mut live: Vec<usize> = (0..n).collect();
    let mut prev = BigInt::one();
    loop {
        if live.iter().any(|&i| a[i][i].is_negative()) {
            return Ok(false);
        }
        // a zero diagonal entry forces its whole row to vanish
        let (zero, pos): (Vec<usize>, Vec<usize>) = live.iter().partition(|&&i| a[i][i].is_zero());
        if zero.iter().any(|&i| live.iter().any(|&j| !a[i][j].is_zero())) {
            return Ok(false);
        }
        live = pos;
        let Some((k_pos, &k)) = live.iter().enumerate().min_by_key(|(_, &i)| a[i][i].bits()) else {
            return Ok(true);
        };
        live.remove(k_pos);
        let piv = a[k][k].clone();
        for &i in &live {
            for &j in &live {
                if j < i {
                    continue;
                }
                let v = (&piv * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[j][i] = v.clone();
                a[i][j] = v;
            }
        }
        prev = piv;
    }
}
