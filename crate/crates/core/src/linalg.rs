//! Exact ranks of small integer matrices.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::field::Characteristic;

/// Rank of a dense integer matrix over `Q` (characteristic 0) or `GF(p)`.
pub fn rank(matrix: &[Vec<i64>], char: Characteristic) -> usize {
    if matrix.is_empty() || matrix[0].is_empty() {
        return 0;
    }
    if char.is_rational() {
        let wide: Vec<Vec<i128>> = matrix
            .iter()
            .map(|r| r.iter().map(|&x| i128::from(x)).collect())
            .collect();
        bareiss_i128(wide).unwrap_or_else(|| {
            let big: Vec<Vec<BigInt>> = matrix
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            bareiss_big(big)
        })
    } else {
        rank_mod_p(matrix, char.value())
    }
}

/// Fraction-free elimination; `None` on i128 overflow.
fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let rows = a.len();
    let cols = a[0].len();
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c];
        for i in r + 1..rows {
            let factor = a[i][c];
            for j in c + 1..cols {
                let lhs = a[i][j].checked_mul(pivot)?;
                let rhs = a[r][j].checked_mul(factor)?;
                a[i][j] = lhs.checked_sub(rhs)? / prev;
            }
            a[i][c] = 0;
        }
        prev = pivot;
        r += 1;
    }
    Some(r)
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a[0].len();
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in r + 1..rows {
            let factor = a[i][c].clone();
            for j in c + 1..cols {
                let v = (&a[i][j] * &pivot - &a[r][j] * &factor) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

fn rank_mod_p(matrix: &[Vec<i64>], p: u64) -> usize {
    let pp = p as i128;
    let mut a: Vec<Vec<u64>> = matrix
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| (i128::from(x).rem_euclid(pp)) as u64)
                .collect()
        })
        .collect();
    let mulmod = |x: u64, y: u64| ((u128::from(x) * u128::from(y)) % u128::from(p)) as u64;
    let inv = |x: u64| {
        let (mut base, mut e, mut acc) = (x, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        acc
    };
    let rows = a.len();
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let pinv = inv(a[r][c]);
        for i in r + 1..rows {
            if a[i][c] == 0 {
                continue;
            }
            let factor = mulmod(a[i][c], pinv);
            for j in c..cols {
                let sub = mulmod(factor, a[r][j]);
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Characteristic {
        Characteristic::RATIONAL
    }

    #[test]
    fn ranks_over_q_and_gf2() {
        let m = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert_eq!(rank(&m, q()), 3);
        // the determinant is 2, so the rank drops in characteristic 2
        assert_eq!(rank(&m, Characteristic::new(2).unwrap()), 2);
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]], q()), 0);
        assert_eq!(rank(&[], q()), 0);
        assert_eq!(rank(&[vec![2, 4], vec![1, 2]], q()), 1);
        assert_eq!(rank(&[vec![3, 5, 7]], Characteristic::new(3).unwrap()), 1);
    }

    #[test]
    fn big_fallback_agrees_with_i128() {
        let m: Vec<Vec<i64>> = (0..6)
            .map(|i| (0..6).map(|j| ((i * 7 + j * 3) % 5) as i64 - 2).collect())
            .collect();
        let small = bareiss_i128(
            m.iter()
                .map(|r| r.iter().map(|&x| x as i128).collect())
                .collect(),
        );
        let big = bareiss_big(
            m.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        );
        assert_eq!(small, Some(big));
    }

    #[test]
    fn i128_overflow_falls_back() {
        let huge = i64::MAX / 2;
        let m = vec![
            vec![huge, huge - 1, 3],
            vec![huge - 5, huge, 7],
            vec![1, huge - 3, huge],
        ];
        assert_eq!(
            bareiss_i128(
                m.iter()
                    .map(|r| r.iter().map(|&x| x as i128).collect())
                    .collect()
            ),
            None
        );
        assert_eq!(rank(&m, q()), 3);
    }
}
