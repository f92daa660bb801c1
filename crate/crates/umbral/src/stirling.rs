//! Stirling number triangles, first kind (signed and unsigned) and second
//! kind, built by the standard recurrences.

use serde::{Deserialize, Serialize};

use crate::rat::{factorial, Rat};
use crate::series::Series;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StirlingKind {
    /// s(n, m): coefficients of falling factorials in powers of x.
    FirstSigned,
    /// c(n, m) = |s(n, m)|: permutations of n with m cycles.
    FirstUnsigned,
    /// S2(n, m): set partitions of n into m nonempty blocks.
    Second,
}

/// Triangular table of Stirling numbers for 0 <= m <= n <= max_n. Values
/// outside the triangle are zero.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    kind: StirlingKind,
    rows: Vec<Vec<Rat>>,
}

impl StirlingTable {
    pub fn new(kind: StirlingKind, max_n: usize) -> Self {
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![Rat::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = vec![Rat::zero(); n + 1];
            for (m, cell) in row.iter_mut().enumerate() {
                let carry = if m >= 1 {
                    prev.get(m - 1).cloned().unwrap_or_else(Rat::zero)
                } else {
                    Rat::zero()
                };
                let same = prev.get(m).cloned().unwrap_or_else(Rat::zero);
                let weight = match kind {
                    StirlingKind::Second => Rat::from_int(m as i64),
                    StirlingKind::FirstUnsigned => Rat::from_int(n as i64 - 1),
                    StirlingKind::FirstSigned => -Rat::from_int(n as i64 - 1),
                };
                *cell = carry + weight * same;
            }
            rows.push(row);
        }
        StirlingTable { kind, rows }
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Entry (n, m); zero outside the stored triangle.
    pub fn value(&self, n: usize, m: usize) -> Rat {
        self.rows
            .get(n)
            .and_then(|row| row.get(m))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }
}

/// S2(n, m) without keeping a table around.
pub fn stirling2(n: usize, m: usize) -> Rat {
    StirlingTable::new(StirlingKind::Second, n).value(n, m)
}

/// Unsigned first kind [n; m].
pub fn stirling1_unsigned(n: usize, m: usize) -> Rat {
    StirlingTable::new(StirlingKind::FirstUnsigned, n).value(n, m)
}

/// EGF route to S2(n, m): n! [t^n] (e^t - 1)^m / m!. Used to cross-check
/// the recurrence table.
pub fn stirling2_via_egf(n: usize, m: usize) -> Rat {
    let prec = n + 2;
    let pw = Series::expm1(prec)
        .int_pow(m as i64)
        .expect("nonnegative power");
    pw.egf(n) / factorial(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_kind_known_entries() {
        assert_eq!(stirling2(4, 2), Rat::from_int(7));
        assert_eq!(stirling2(5, 3), Rat::from_int(25));
        assert_eq!(stirling2(6, 1), Rat::one());
        for n in 0..=6 {
            assert_eq!(stirling2(n, n), Rat::one());
        }
        assert_eq!(stirling2(3, 5), Rat::zero());
        assert_eq!(stirling2(4, 0), Rat::zero());
        assert_eq!(stirling2(0, 0), Rat::one());
    }

    #[test]
    fn first_kind_known_entries() {
        assert_eq!(stirling1_unsigned(3, 2), Rat::from_int(3));
        assert_eq!(stirling1_unsigned(4, 2), Rat::from_int(11));
        assert_eq!(stirling1_unsigned(4, 1), Rat::from_int(6));
        let signed = StirlingTable::new(StirlingKind::FirstSigned, 6);
        let unsigned = StirlingTable::new(StirlingKind::FirstUnsigned, 6);
        for n in 0..=6 {
            for m in 0..=n {
                let sign = if (n - m) % 2 == 0 { 1 } else { -1 };
                assert_eq!(
                    signed.value(n, m),
                    unsigned.value(n, m) * Rat::from_int(sign)
                );
            }
        }
    }

    #[test]
    fn second_kind_matches_egf() {
        for n in 0..=8 {
            for m in 0..=n {
                assert_eq!(stirling2(n, m), stirling2_via_egf(n, m), "n={n} m={m}");
            }
        }
    }

    /// Brute-force oracle: count set partitions of {0..n} into m blocks by
    /// enumerating assignments in restricted-growth form.
    fn count_partitions(n: usize, m: usize) -> u64 {
        fn go(labels: &mut Vec<usize>, n: usize, used: usize, m: usize) -> u64 {
            if labels.len() == n {
                return u64::from(used == m);
            }
            let mut total = 0;
            for b in 0..=used.min(m - 1) {
                labels.push(b);
                total += go(labels, n, used.max(b + 1), m);
                labels.pop();
            }
            total
        }
        if n == 0 {
            return u64::from(m == 0);
        }
        if m == 0 {
            return 0;
        }
        go(&mut Vec::new(), n, 0, m)
    }

    /// Brute-force oracle: count permutations of n elements with exactly m
    /// cycles, enumerating all n! permutations.
    fn count_cycle_permutations(n: usize, m: usize) -> u64 {
        fn cycles(perm: &[usize]) -> usize {
            let mut seen = vec![false; perm.len()];
            let mut count = 0;
            for start in 0..perm.len() {
                if seen[start] {
                    continue;
                }
                count += 1;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    i = perm[i];
                }
            }
            count
        }
        fn go(perm: &mut Vec<usize>, free: &mut Vec<usize>, m: usize, acc: &mut u64) {
            if free.is_empty() {
                if cycles(perm) == m {
                    *acc += 1;
                }
                return;
            }
            for i in 0..free.len() {
                let v = free.remove(i);
                perm.push(v);
                go(perm, free, m, acc);
                perm.pop();
                free.insert(i, v);
            }
        }
        if n == 0 {
            return u64::from(m == 0);
        }
        let mut acc = 0;
        go(&mut Vec::new(), &mut (0..n).collect(), m, &mut acc);
        acc
    }

    #[test]
    fn second_kind_matches_enumeration() {
        for n in 0..=8 {
            for m in 0..=n {
                assert_eq!(
                    stirling2(n, m),
                    Rat::from_int(count_partitions(n, m) as i64),
                    "n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn first_kind_matches_enumeration() {
        for n in 0..=8 {
            for m in 0..=n {
                assert_eq!(
                    stirling1_unsigned(n, m),
                    Rat::from_int(count_cycle_permutations(n, m) as i64),
                    "n={n} m={m}"
                );
            }
        }
    }
}
