use std::collections::BTreeSet;

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Unordered positive odd triples `x <= y <= z` with `x^2 + y^2 + z^2 = n`.
pub fn three_squares_all_odd(n: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    let mut x = 1u64;
    while 3 * x * x <= n {
        let mut y = x;
        while x * x + 2 * y * y <= n {
            let rest = n - x * x - y * y;
            let z = isqrt(rest);
            if z * z == rest && z % 2 == 1 && z >= y {
                out.push([x, y, z]);
            }
            y += 2;
        }
        x += 2;
    }
    out
}

/// Signed orderings `(e1 x_p1, e2 x_p2, e3 x_p3)` of `triple` summing to
/// `target`, deduplicated and sorted.
pub fn signed_assignments(triple: [u64; 3], target: i64) -> Vec<[i64; 3]> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut out = BTreeSet::new();
    for perm in PERMS {
        for signs in 0..8u8 {
            let v: [i64; 3] = std::array::from_fn(|i| {
                let x = triple[perm[i]] as i64;
                if signs >> i & 1 == 1 {
                    -x
                } else {
                    x
                }
            });
            if v.iter().sum::<i64>() == target {
                out.insert(v);
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        assert_eq!(three_squares_all_odd(3), vec![[1, 1, 1]]);
        assert_eq!(three_squares_all_odd(155), vec![[3, 5, 11], [5, 7, 9]]);
        assert_eq!(three_squares_all_odd(75), vec![[1, 5, 7], [5, 5, 5]]);
        assert_eq!(three_squares_all_odd(139), vec![[3, 3, 11], [3, 7, 9]]);
        assert_eq!(three_squares_all_odd(83), vec![[1, 1, 9], [3, 5, 7]]);
        assert!(three_squares_all_odd(5).is_empty());
    }

    #[test]
    fn all_odd_only_when_3_mod_8() {
        for n in 1..400u64 {
            if n % 8 != 3 {
                assert!(three_squares_all_odd(n).is_empty(), "{n}");
            }
        }
    }

    #[test]
    fn assignments() {
        assert!(signed_assignments([1, 3, 3], 1).contains(&[1, -3, 3]));
        assert!(signed_assignments([3, 5, 11], 1).is_empty());
        assert_eq!(
            signed_assignments([1, 1, 1], 1),
            vec![[-1, 1, 1], [1, -1, 1], [1, 1, -1]]
        );
        assert!(signed_assignments([3, 7, 9], 1).contains(&[3, 7, -9]));
        assert!(signed_assignments([3, 5, 9], 1).contains(&[-3, -5, 9]));
    }
}
