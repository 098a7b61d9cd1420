use num_bigint::BigInt;
use num_integer::Integer;

use lefschetz::chains;
use lefschetz::palf;

/// Size of `Z^cols / <rows>` when finite, by integer row reduction.
fn oracle_cokernel_order(rows: &[Vec<i64>], cols: usize) -> Option<i64> {
    let mut m: Vec<Vec<i64>> = rows.to_vec();
    let mut det = 1i64;
    let mut r = 0;
    for c in 0..cols {
        loop {
            let piv = (r..m.len()).filter(|&i| m[i][c] != 0).min_by_key(|&i| m[i][c].abs());
            let Some(p) = piv else { return None };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                let f = m[i][c] / m[r][c];
                if f != 0 {
                    for k in 0..cols {
                        m[i][k] -= f * m[r][k];
                    }
                }
                if m[i][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        det *= m[r][c].abs();
        r += 1;
    }
    Some(det)
}

/// `H_1` order of the filling of a lens space given by a tuple: the chain of
/// unknots framed by the tuple (a copy of `S^1 x S^2`), capped by
/// `S^1 x D^3`, with `bound_i - n_i` meridians of the `i`-th unknot as
/// 2-handles. The group is `Z^e` modulo the linking rows and the meridians.
fn oracle_filling_h1_order(bound: &[i64], tuple: &[i64]) -> Option<i64> {
    let e = tuple.len();
    let mut rows = Vec::new();
    for i in 0..e {
        let mut r = vec![0; e];
        r[i] = tuple[i];
        if i > 0 {
            r[i - 1] = 1;
        }
        if i + 1 < e {
            r[i + 1] = 1;
        }
        rows.push(r);
    }
    for i in 0..e {
        if bound[i] > tuple[i] {
            let mut r = vec![0; e];
            r[i] = 1;
            rows.push(r);
        }
    }
    oracle_cokernel_order(&rows, e)
}


#[test]
fn cyclic_fillings_match_linking_oracle() {
    let mut checked = 0;
    for n in 2..=60i64 {
        for q in (1..n).filter(|q| q.gcd(&n) == 1) {
            let (bound, set) = chains::enumerate_z_bounded(n, q).unwrap();
            for (t, tr) in set {
                let pd = palf::bo_palf(n, q, &t, &tr).unwrap();
                let chi: i64 = bound.iter().zip(&t).map(|(b, x)| b - x).sum();
                assert_eq!(pd.euler_char(), chi, "{n}/{q} {t:?}");
                let h1 = pd.first_homology().unwrap();
                let want = oracle_filling_h1_order(&bound, &t).map(BigInt::from);
                assert_eq!(h1.order(), want, "{n}/{q} {t:?}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 1972, "filling count");
}

#[test]
fn nine_over_two() {
    let (bound, set) = chains::enumerate_z_bounded(9, 2).unwrap();
    assert_eq!(bound, [2, 2, 2, 3]);
    let t = vec![2, 2, 1, 3];
    let pd = palf::bo_palf(9, 2, &t, &set[&t]).unwrap();
    assert_eq!(pd.euler_char(), 1);
    assert_eq!(pd.first_homology().unwrap().order(), Some(BigInt::from(3)));
    assert_eq!(oracle_filling_h1_order(&bound, &t), Some(3));
}
